//! Graphical representation: pre-drawn recovery marks and transmission
//! arrows, materialized per vertex and per directed edge on first use.

use super::{ContactEvent, SimOutcome, StopReason};
use crate::error::{invalid, Error, Result};
use crate::graph::GraphSample;
use crate::rng::{derive_stream_seed, stream_rng};
use rand::Rng;
use rand_distr::{Distribution, Exp1};
use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::sync::{Arc, OnceLock};

/// Poisson streams of recovery marks (rate 1 per vertex) and transmission
/// arrows (rate λ per directed edge) on `[0, horizon]`.
///
/// Arrows are drawn at a base rate and each carries a uniform tag; the
/// stream at a lower rate `λ'` keeps the arrows with tag below `λ'/λ_base`.
/// Streams derived by [`EventStream::with_lambda`] share the same draws, so
/// runs at different rates are coupled by thinning.
#[derive(Clone)]
pub struct EventStream {
    base_lambda: f64,
    lambda: f64,
    horizon: f64,
    seed: u64,
    vertex_count: usize,
    recoveries: Arc<Vec<OnceLock<Vec<f64>>>>,
    arrows: Arc<Vec<OnceLock<Vec<(f64, f64)>>>>,
}

fn poisson_times<R: Rng>(rng: &mut R, rate: f64, horizon: f64) -> Vec<f64> {
    let mut out = Vec::new();
    if rate <= 0.0 || horizon <= 0.0 {
        return out;
    }
    let mut t = 0.0;
    loop {
        let e: f64 = Exp1.sample(rng);
        t += e / rate;
        if t > horizon {
            return out;
        }
        out.push(t);
    }
}

/// Prepares the streams for `graph`; nothing is drawn until queried.
pub fn build_event_stream(graph: &GraphSample, lambda: f64, horizon: f64, seed: u64) -> Result<EventStream> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return invalid(format!("lambda must be finite and nonnegative, got {lambda}"));
    }
    if !(horizon >= 0.0) || !horizon.is_finite() {
        return invalid(format!("horizon must be finite and nonnegative, got {horizon}"));
    }
    Ok(EventStream {
        base_lambda: lambda,
        lambda,
        horizon,
        seed,
        vertex_count: graph.vertex_count(),
        recoveries: Arc::new((0..graph.vertex_count()).map(|_| OnceLock::new()).collect()),
        arrows: Arc::new((0..graph.slot_count()).map(|_| OnceLock::new()).collect()),
    })
}

impl EventStream {
    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// The stream at a lower infection rate, thinned from this one.
    pub fn with_lambda(&self, lambda: f64) -> Result<EventStream> {
        if !(lambda >= 0.0 && lambda <= self.base_lambda) {
            return invalid(format!("thinned rate {lambda} must lie in [0, {}]", self.base_lambda));
        }
        let mut s = self.clone();
        s.lambda = lambda;
        Ok(s)
    }

    /// Recovery marks at `v`, sorted.
    pub fn recoveries(&self, v: usize) -> &[f64] {
        self.recoveries[v].get_or_init(|| {
            let mut rng = stream_rng(derive_stream_seed(self.seed, 1), v as u64);
            poisson_times(&mut rng, 1.0, self.horizon)
        })
    }

    fn slot_arrows(&self, slot: usize) -> &[(f64, f64)] {
        self.arrows[slot].get_or_init(|| {
            let mut rng = stream_rng(derive_stream_seed(self.seed, 2), slot as u64);
            let times = poisson_times(&mut rng, self.base_lambda, self.horizon);
            times.into_iter().map(|t| (t, rng.random::<f64>())).collect()
        })
    }

    /// Transmission arrows `x -> y`, sorted. Empty if there is no edge.
    pub fn transmissions(&self, graph: &GraphSample, x: usize, y: usize) -> Vec<f64> {
        match graph.edge_slot(x, y) {
            Some(slot) => self.arrows_at(slot).collect(),
            None => Vec::new(),
        }
    }

    pub(crate) fn arrows_at(&self, slot: usize) -> impl Iterator<Item = f64> + '_ {
        let keep = if self.base_lambda > 0.0 {
            self.lambda / self.base_lambda
        } else {
            0.0
        };
        self.slot_arrows(slot)
            .iter()
            .filter(move |(_, tag)| *tag < keep)
            .map(|(t, _)| *t)
    }

    /// First recovery mark at `v` strictly after `t`.
    pub fn next_recovery(&self, v: usize, t: f64) -> f64 {
        let r = self.recoveries(v);
        let k = r.partition_point(|x| *x <= t);
        r.get(k).copied().unwrap_or(f64::INFINITY)
    }

    /// Last recovery mark at `v` at or before `t`, or `-inf`.
    pub fn last_recovery(&self, v: usize, t: f64) -> f64 {
        let r = self.recoveries(v);
        let k = r.partition_point(|x| *x <= t);
        if k == 0 {
            f64::NEG_INFINITY
        } else {
            r[k - 1]
        }
    }
}

/// State changes of a graphical run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub initial: Vec<usize>,
    /// `(time, vertex, infected_after)` in time order.
    pub changes: Vec<(f64, usize, bool)>,
}

impl Trajectory {
    /// Infected set just after all changes at times `<= t`, sorted.
    pub fn state_at(&self, t: f64) -> Vec<usize> {
        let mut set: std::collections::BTreeSet<usize> = self.initial.iter().copied().collect();
        for &(s, v, inf) in &self.changes {
            if s > t {
                break;
            }
            if inf {
                set.insert(v);
            } else {
                set.remove(&v);
            }
        }
        set.into_iter().collect()
    }

    pub fn times(&self) -> Vec<f64> {
        self.changes.iter().map(|c| c.0).collect()
    }
}

#[derive(Clone, Copy)]
struct Pending {
    time: f64,
    vertex: usize,
    from: usize,
    recovery: bool,
}

impl PartialEq for Pending {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Pending {}
impl PartialOrd for Pending {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Pending {
    fn cmp(&self, o: &Self) -> Ordering {
        self.time
            .total_cmp(&o.time)
            .then(self.vertex.cmp(&o.vertex))
            .then(self.recovery.cmp(&o.recovery))
            .then(self.from.cmp(&o.from))
    }
}

/// Runs the process started from `initial` through the stream up to its
/// horizon.
pub fn run_on_stream(stream: &EventStream, graph: &GraphSample, initial: &[usize]) -> Result<SimOutcome> {
    run_on_stream_traced(stream, graph, initial, None).map(|(o, _)| o)
}

/// Like [`run_on_stream`], also returning the trajectory; the observer, if
/// any, sees every state change.
pub fn run_on_stream_traced(
    stream: &EventStream,
    graph: &GraphSample,
    initial: &[usize],
    mut observer: Option<&mut dyn FnMut(f64, ContactEvent)>,
) -> Result<(SimOutcome, Trajectory)> {
    let n = graph.vertex_count();
    if n != stream.vertex_count {
        return invalid("stream was built for a different graph");
    }
    let horizon = stream.horizon;
    let mut infected = vec![false; n];
    let mut ever = vec![false; n];
    let mut heap: BinaryHeap<Reverse<Pending>> = BinaryHeap::new();
    let mut count = 0usize;
    let mut ever_count = 0usize;
    let mut init = Vec::new();

    let infect = |v: usize,
                  at: f64,
                  heap: &mut BinaryHeap<Reverse<Pending>>,
                  infected: &mut Vec<bool>,
                  ever: &mut Vec<bool>,
                  ever_count: &mut usize| {
        infected[v] = true;
        if !ever[v] {
            ever[v] = true;
            *ever_count += 1;
        }
        let until = stream.next_recovery(v, at);
        if until <= horizon {
            heap.push(Reverse(Pending {
                time: until,
                vertex: v,
                from: v,
                recovery: true,
            }));
        }
        let base = graph.slot_start(v);
        for (k, w) in graph.neighbors(v).iter().enumerate() {
            for a in stream.arrows_at(base + k) {
                if a > at && a < until {
                    heap.push(Reverse(Pending {
                        time: a,
                        vertex: *w as usize,
                        from: v,
                        recovery: false,
                    }));
                }
            }
        }
    };

    for &v in initial {
        if v >= n {
            return Err(Error::VertexOutOfRange(v));
        }
        if !infected[v] {
            infect(v, 0.0, &mut heap, &mut infected, &mut ever, &mut ever_count);
            count += 1;
            init.push(v);
        }
    }
    init.sort_unstable();
    let mut peak = count;
    let mut events = 0u64;
    let mut changes = Vec::new();
    let mut time = 0.0;
    while count > 0 {
        let Some(Reverse(ev)) = heap.pop() else { break };
        events += 1;
        if ev.recovery {
            infected[ev.vertex] = false;
            count -= 1;
            time = ev.time;
            changes.push((ev.time, ev.vertex, false));
            if let Some(obs) = observer.as_mut() {
                obs(ev.time, ContactEvent::Recovery(ev.vertex));
            }
        } else if !infected[ev.vertex] {
            infect(ev.vertex, ev.time, &mut heap, &mut infected, &mut ever, &mut ever_count);
            count += 1;
            peak = peak.max(count);
            changes.push((ev.time, ev.vertex, true));
            if let Some(obs) = observer.as_mut() {
                obs(
                    ev.time,
                    ContactEvent::Transmission {
                        from: ev.from,
                        to: ev.vertex,
                    },
                );
            }
        }
    }
    let (stop, extinction_time, stop_time) = if count == 0 {
        (StopReason::Extinct, time, time)
    } else {
        (StopReason::Horizon, horizon, horizon)
    };
    Ok((
        SimOutcome {
            extinction_time,
            stop,
            stop_time,
            ever_infected: ever_count,
            peak_infected: peak,
            events_processed: events,
        },
        Trajectory { initial: init, changes },
    ))
}
