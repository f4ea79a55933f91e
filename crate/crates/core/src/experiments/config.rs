use crate::error::{Error, Result};
use std::fmt::Display;
use std::str::FromStr;

/// Every key the pipelines understand.
pub const KNOWN_KEYS: &[&str] = &[
    "run.pipeline",
    "run.seed",
    "run.replicas",
    "run.workers",
    "kernel.variant",
    "kernel.dim",
    "kernel.gamma",
    "kernel.delta",
    "kernel.alpha",
    "kernel.kappa1",
    "kernel.kappa2",
    "kernel.beta",
    "kernel.p",
    "kernel.calibrated",
    "graph.volume",
    "graph.boundary",
    "graph.sampler",
    "graph.k_min",
    "sim.lambda",
    "sim.lambdas",
    "sim.horizon",
    "sim.cap",
    "sim.event_budget",
    "sim.volumes",
    "sim.volume_cap",
    "sim.volume_exponent",
    "chain.beta",
    "chain.theta",
    "chain.stars",
    "chain.r",
    "chain.volume",
    "boxes.n",
    "boxes.a",
    "boxes.theta",
    "boxes.eps1",
    "boxes.eps3",
    "boxes.star_size",
    "bounds.kappa",
    "bounds.gamma",
    "bounds.ell",
    "bounds.t0",
    "bounds.c",
    "bounds.n_max",
    "bounds.nu_n_max",
];

#[derive(Debug, Clone, PartialEq)]
struct Entry {
    key: String,
    value: String,
    /// 1-based source line; 0 for programmatic overrides.
    line: usize,
}

/// Flat `key = value` configuration with `#` comments. Later assignments to
/// the same key replace earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    entries: Vec<Entry>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some((k, v)) = body.split_once('=') else {
                return Err(Error::ConfigParse {
                    line,
                    msg: format!("expected key = value, got {body:?}"),
                });
            };
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() {
                return Err(Error::ConfigParse {
                    line,
                    msg: "empty key".into(),
                });
            }
            if !KNOWN_KEYS.contains(&k) {
                return Err(Error::UnknownKey(format!("{k} (line {line})")));
            }
            cfg.insert(k, v, line);
        }
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    fn insert(&mut self, key: &str, value: &str, line: usize) {
        self.entries.retain(|e| e.key != key);
        self.entries.push(Entry {
            key: key.to_string(),
            value: value.to_string(),
            line,
        });
    }

    /// Sets a key, rejecting unknown ones.
    pub fn set(&mut self, key: &str, value: impl Display) -> Result<()> {
        if !KNOWN_KEYS.contains(&key) {
            return Err(Error::UnknownKey(key.to_string()));
        }
        self.insert(key, &value.to_string(), 0);
        Ok(())
    }

    /// Applies a `key=value` override.
    pub fn set_assignment(&mut self, assignment: &str) -> Result<()> {
        let Some((k, v)) = assignment.split_once('=') else {
            return Err(Error::ConfigParse {
                line: 0,
                msg: format!("expected key=value, got {assignment:?}"),
            });
        };
        self.set(k.trim(), v.trim())
    }

    fn entry(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entry(key).is_some()
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entry(key).map(|e| e.value.as_str())
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: Display,
    {
        match self.entry(key) {
            None => Ok(None),
            Some(e) => e.value.parse().map(Some).map_err(|err| Error::ConfigParse {
                line: e.line,
                msg: format!("{key}: cannot parse {:?}: {err}", e.value),
            }),
        }
    }

    pub fn get_or<T: FromStr>(&self, key: &str, default: T) -> Result<T>
    where
        T::Err: Display,
    {
        Ok(self.get(key)?.unwrap_or(default))
    }

    /// Comma-separated list.
    pub fn get_list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>>
    where
        T::Err: Display,
    {
        let Some(e) = self.entry(key) else { return Ok(None) };
        e.value
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse().map_err(|err| Error::ConfigParse {
                    line: e.line,
                    msg: format!("{key}: cannot parse {s:?}: {err}"),
                })
            })
            .collect::<Result<Vec<T>>>()
            .map(Some)
    }

    /// Canonical `key = value` listing, sorted by key.
    pub fn echo(&self) -> String {
        let mut e: Vec<&Entry> = self.entries.iter().collect();
        e.sort_by(|a, b| a.key.cmp(&b.key));
        e.iter().map(|e| format!("{} = {}\n", e.key, e.value)).collect()
    }
}
