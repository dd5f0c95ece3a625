use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default cap on enumeration work (nodes visited or points produced).
pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

/// Cooperative cancellation flag shared between a caller and long-running searches.
#[derive(Debug, Clone, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

/// Work limit for enumerations and searches.
#[derive(Debug, Clone)]
pub struct Budget {
    pub max_nodes: u64,
    pub cancel: Option<CancelToken>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: DEFAULT_NODE_CAP,
            cancel: None,
        }
    }
}

impl Budget {
    pub fn with_nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes,
            cancel: None,
        }
    }

    pub fn meter(&self) -> Meter<'_> {
        Meter {
            budget: self,
            used: 0,
        }
    }
}

/// Running counter against a [`Budget`].
pub struct Meter<'a> {
    budget: &'a Budget,
    used: u64,
}

impl Meter<'_> {
    #[inline]
    pub fn tick(&mut self, what: &str) -> Result<()> {
        self.used += 1;
        if self.used > self.budget.max_nodes {
            return Err(Error::budget(format!(
                "{what}: more than {} nodes",
                self.budget.max_nodes
            )));
        }
        if self.used & 0xfff == 0 {
            if let Some(c) = &self.budget.cancel {
                if c.is_cancelled() {
                    return Err(Error::Cancelled);
                }
            }
        }
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}
