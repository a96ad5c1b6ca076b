//! Search guardrails: an optional wall-clock deadline and node limit.

use std::time::{Duration, Instant};

/// Environment variable holding the global default timeout in seconds.
pub const BUDGET_ENV: &str = "TEACHLAB_BUDGET_SECS";

#[derive(Debug, Clone)]
pub struct Budget {
    deadline: Option<Instant>,
    node_limit: Option<u64>,
    nodes: u64,
    exhausted: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Self::unlimited()
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            deadline: None,
            node_limit: None,
            nodes: 0,
            exhausted: false,
        }
    }

    pub fn with_timeout(timeout: Duration) -> Self {
        Budget {
            deadline: Some(Instant::now() + timeout),
            ..Self::unlimited()
        }
    }

    pub fn with_nodes(limit: u64) -> Self {
        Budget {
            node_limit: Some(limit),
            ..Self::unlimited()
        }
    }

    /// Timeout from an explicit value, else from `TEACHLAB_BUDGET_SECS`, else none.
    pub fn from_secs_or_env(secs: Option<f64>) -> Self {
        let secs = secs.or_else(|| {
            std::env::var(BUDGET_ENV)
                .ok()
                .and_then(|v| v.trim().parse::<f64>().ok())
        });
        match secs {
            Some(s) if s > 0.0 => Self::with_timeout(Duration::from_secs_f64(s)),
            _ => Self::unlimited(),
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    /// Counts one search node; returns `true` once the budget is spent.
    #[inline]
    pub fn tick(&mut self) -> bool {
        if self.exhausted {
            return true;
        }
        self.nodes += 1;
        if let Some(limit) = self.node_limit {
            if self.nodes > limit {
                self.exhausted = true;
            }
        }
        if self.nodes & 0x3ff == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.exhausted = true;
                }
            }
        }
        self.exhausted
    }
}
