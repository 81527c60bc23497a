use std::time::{Duration, Instant};

/// Resource limit for the exponential searches. Running out never changes a
/// verified answer; it only turns the answer into "unknown".
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    deadline: Option<Instant>,
    max_nodes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            deadline: None,
            max_nodes: None,
        }
    }

    pub fn seconds(secs: f64) -> Self {
        Budget {
            deadline: Some(Instant::now() + Duration::from_secs_f64(secs)),
            max_nodes: None,
        }
    }

    pub fn nodes(max: u64) -> Self {
        Budget {
            deadline: None,
            max_nodes: Some(max),
        }
    }

    pub fn with_nodes(mut self, max: u64) -> Self {
        self.max_nodes = Some(max);
        self
    }

    /// True once `nodes` expansions exceed the limit or the clock has run out.
    /// The clock is only consulted every 1024 nodes.
    pub fn exceeded(&self, nodes: u64) -> bool {
        if self.max_nodes.is_some_and(|m| nodes > m) {
            return true;
        }
        nodes.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}
