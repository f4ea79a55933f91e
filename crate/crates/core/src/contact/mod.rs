//! Contact process dynamics: a next-event engine, the graphical
//! representation, and queries built on them.

mod queries;
mod stream;

pub use queries::{duality_gap, trace_realization_probability, trace_realized, DualityEstimate, TraceEstimate};
pub use stream::{build_event_stream, run_on_stream, run_on_stream_traced, EventStream, Trajectory};

use crate::error::{invalid, Error, Result};
use crate::graph::{GraphSample, LazyGraph};
use crate::rng::SimRng;
use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, Exp1};
use std::io::Write;

/// Adjacency access for the engines. Lazy graphs draw a neighbourhood the
/// first time a vertex is prepared.
pub trait NeighborSource {
    fn vertex_count(&self) -> usize;
    /// Called before a vertex becomes infected.
    fn prepare(&mut self, v: usize);
    fn neighbors(&self, v: usize) -> &[u32];
}

impl NeighborSource for &GraphSample {
    fn vertex_count(&self) -> usize {
        GraphSample::vertex_count(self)
    }
    fn prepare(&mut self, _v: usize) {}
    fn neighbors(&self, v: usize) -> &[u32] {
        GraphSample::neighbors(self, v)
    }
}

impl NeighborSource for LazyGraph {
    fn vertex_count(&self) -> usize {
        LazyGraph::vertex_count(self)
    }
    fn prepare(&mut self, v: usize) {
        self.explore(v)
    }
    fn neighbors(&self, v: usize) -> &[u32] {
        LazyGraph::neighbors(self, v)
    }
}

/// Run parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimParams {
    pub lambda: f64,
    pub horizon: f64,
    /// Stop as surviving once this many distinct vertices were infected.
    pub ever_infected_cap: Option<usize>,
    /// Stop (flagged) after this many processed events.
    pub event_budget: Option<u64>,
    pub seed: u64,
}

impl SimParams {
    pub fn new(lambda: f64, horizon: f64, seed: u64) -> Self {
        SimParams {
            lambda,
            horizon,
            ever_infected_cap: None,
            event_budget: None,
            seed,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.ever_infected_cap = Some(cap);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.event_budget = Some(budget);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            return invalid(format!("lambda must be finite and nonnegative, got {}", self.lambda));
        }
        if !(self.horizon >= 0.0) {
            return invalid(format!("horizon must be nonnegative, got {}", self.horizon));
        }
        Ok(())
    }
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Extinct,
    Horizon,
    InfectedCap,
    EventBudget,
}

/// Result of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimOutcome {
    /// Extinction time, or the horizon when the run did not go extinct.
    pub extinction_time: f64,
    pub stop: StopReason,
    /// Time at which the run stopped.
    pub stop_time: f64,
    pub ever_infected: usize,
    pub peak_infected: usize,
    pub events_processed: u64,
}

impl SimOutcome {
    pub fn extinct(&self) -> bool {
        self.stop == StopReason::Extinct
    }

    /// Alive at the horizon or reached the ever-infected cap.
    pub fn survived_proxy(&self) -> bool {
        matches!(self.stop, StopReason::Horizon | StopReason::InfectedCap)
    }

    /// The extinction time is censored (not an observed extinction).
    pub fn capped(&self) -> bool {
        !self.extinct()
    }
}

/// One state change.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContactEvent {
    Recovery(usize),
    Transmission { from: usize, to: usize },
}

/// Writes events as `time kind vertex [target]` with 9 significant digits.
pub struct EventLog<W: Write> {
    out: W,
    error: Option<std::io::Error>,
}

impl<W: Write> EventLog<W> {
    pub fn new(out: W) -> Self {
        EventLog { out, error: None }
    }

    pub fn record(&mut self, time: f64, event: ContactEvent) {
        if self.error.is_some() {
            return;
        }
        let r = match event {
            ContactEvent::Recovery(v) => writeln!(self.out, "{time:.8e} REC {v}"),
            ContactEvent::Transmission { from, to } => writeln!(self.out, "{time:.8e} TRN {from} {to}"),
        };
        if let Err(e) = r {
            self.error = Some(e);
        }
    }

    pub fn finish(mut self) -> std::io::Result<W> {
        if let Some(e) = self.error {
            return Err(e);
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

/// Fenwick tree over integer weights with prefix search.
struct Fenwick {
    tree: Vec<u64>,
    total: u64,
    top: usize,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        let top = if n == 0 { 0 } else { 1usize << (usize::BITS - 1 - n.leading_zeros()) };
        Fenwick {
            tree: vec![0; n + 1],
            total: 0,
            top,
        }
    }

    fn add(&mut self, i: usize, delta: i64) {
        self.total = (self.total as i64 + delta) as u64;
        let mut k = i + 1;
        while k < self.tree.len() {
            self.tree[k] = (self.tree[k] as i64 + delta) as u64;
            k += k & k.wrapping_neg();
        }
    }

    /// Index `i` and offset `r` with `prefix(i) + r = target`, `r < w_i`.
    fn find(&self, mut target: u64) -> (usize, u64) {
        let mut pos = 0;
        let mut step = self.top;
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] <= target {
                pos = next;
                target -= self.tree[next];
            }
            step >>= 1;
        }
        (pos, target)
    }
}

/// Mutable state of a next-event run.
struct NextEventState {
    infected: Vec<bool>,
    slot: Vec<u32>,
    list: Vec<u32>,
    ever: Vec<bool>,
    ever_count: usize,
    weights: Fenwick,
}

impl NextEventState {
    fn new(n: usize) -> Self {
        NextEventState {
            infected: vec![false; n],
            slot: vec![0; n],
            list: Vec::new(),
            ever: vec![false; n],
            ever_count: 0,
            weights: Fenwick::new(n),
        }
    }

    fn infect<G: NeighborSource>(&mut self, g: &mut G, v: usize) {
        g.prepare(v);
        self.infected[v] = true;
        self.slot[v] = self.list.len() as u32;
        self.list.push(v as u32);
        self.weights.add(v, g.neighbors(v).len() as i64);
        if !self.ever[v] {
            self.ever[v] = true;
            self.ever_count += 1;
        }
    }

    fn recover<G: NeighborSource>(&mut self, g: &G, v: usize) {
        self.infected[v] = false;
        let s = self.slot[v] as usize;
        let last = self.list.pop().expect("nonempty");
        if last as usize != v {
            self.list[s] = last;
            self.slot[last as usize] = s as u32;
        }
        self.weights.add(v, -(g.neighbors(v).len() as i64));
    }
}

/// Simulates the contact process by exact next-event sampling.
pub fn run_next_event(graph: &GraphSample, params: &SimParams, initial: &[usize]) -> Result<SimOutcome> {
    run_next_event_on(&mut &*graph, params, initial, None).map(|(o, _)| o)
}

/// Like [`run_next_event`], also returning the infected set at the stop
/// time, sorted.
pub fn run_next_event_state(
    graph: &GraphSample,
    params: &SimParams,
    initial: &[usize],
) -> Result<(SimOutcome, Vec<usize>)> {
    run_next_event_on(&mut &*graph, params, initial, None)
}

/// Generic next-event engine with an optional event observer.
pub fn run_next_event_on<G: NeighborSource>(
    graph: &mut G,
    params: &SimParams,
    initial: &[usize],
    mut observer: Option<&mut dyn FnMut(f64, ContactEvent)>,
) -> Result<(SimOutcome, Vec<usize>)> {
    params.validate()?;
    let n = graph.vertex_count();
    let mut st = NextEventState::new(n);
    for &v in initial {
        if v >= n {
            return Err(Error::VertexOutOfRange(v));
        }
        if !st.infected[v] {
            st.infect(graph, v);
        }
    }
    let mut rng = SimRng::seed_from_u64(params.seed);
    let lambda = params.lambda;
    let mut time = 0.0;
    let mut events = 0u64;
    let mut peak = st.list.len();
    let stop = loop {
        if st.list.is_empty() {
            break StopReason::Extinct;
        }
        if let Some(cap) = params.ever_infected_cap {
            if st.ever_count >= cap {
                break StopReason::InfectedCap;
            }
        }
        if let Some(b) = params.event_budget {
            if events >= b {
                break StopReason::EventBudget;
            }
        }
        let recovery_rate = st.list.len() as f64;
        let infection_rate = lambda * st.weights.total as f64;
        let total = recovery_rate + infection_rate;
        let e: f64 = Exp1.sample(&mut rng);
        let next = time + e / total;
        if next > params.horizon {
            time = params.horizon;
            break StopReason::Horizon;
        }
        time = next;
        events += 1;
        if rng.random::<f64>() * total < recovery_rate {
            let v = st.list[rng.random_range(0..st.list.len())] as usize;
            st.recover(graph, v);
            if let Some(obs) = observer.as_mut() {
                obs(time, ContactEvent::Recovery(v));
            }
        } else {
            let k = rng.random_range(0..st.weights.total);
            let (v, r) = st.weights.find(k);
            let w = graph.neighbors(v)[r as usize] as usize;
            if !st.infected[w] {
                st.infect(graph, w);
                peak = peak.max(st.list.len());
                if let Some(obs) = observer.as_mut() {
                    obs(time, ContactEvent::Transmission { from: v, to: w });
                }
            }
        }
    };
    let mut state: Vec<usize> = st.list.iter().map(|v| *v as usize).collect();
    state.sort_unstable();
    let extinction_time = if stop == StopReason::Extinct { time } else { params.horizon };
    Ok((
        SimOutcome {
            extinction_time,
            stop,
            stop_time: time,
            ever_infected: st.ever_count,
            peak_infected: peak,
            events_processed: events,
        },
        state,
    ))
}
