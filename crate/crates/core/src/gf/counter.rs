use std::ops::Sub;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

/// Operation counts in `K`: arithmetic operations and Frobenius applications
/// are tracked separately.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounts {
    pub arith_ops: u64,
    pub frobenius_apps: u64,
}

impl OpCounts {
    pub fn total(&self) -> u64 {
        self.arith_ops + self.frobenius_apps
    }
}

impl Sub for OpCounts {
    type Output = OpCounts;

    fn sub(self, rhs: OpCounts) -> OpCounts {
        OpCounts {
            arith_ops: self.arith_ops - rhs.arith_ops,
            frobenius_apps: self.frobenius_apps - rhs.frobenius_apps,
        }
    }
}

/// Shared, monotone counters. Relaxed atomics: only the totals matter, so
/// counts are identical whether or not the work ran in parallel.
#[derive(Debug, Default)]
pub struct OpCounter {
    arith: AtomicU64,
    frob: AtomicU64,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub(crate) fn arith(&self, n: u64) {
        self.arith.fetch_add(n, Ordering::Relaxed);
    }

    #[inline]
    pub(crate) fn frob(&self, n: u64) {
        self.frob.fetch_add(n, Ordering::Relaxed);
    }

    pub fn snapshot(&self) -> OpCounts {
        OpCounts {
            arith_ops: self.arith.load(Ordering::Relaxed),
            frobenius_apps: self.frob.load(Ordering::Relaxed),
        }
    }

    pub fn reset(&self) {
        self.arith.store(0, Ordering::Relaxed);
        self.frob.store(0, Ordering::Relaxed);
    }
}
