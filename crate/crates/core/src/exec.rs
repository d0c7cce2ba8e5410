//! Pluggable fan-out for embarrassingly parallel work.
//!
//! The core never spawns threads. Operations that can fan out take an
//! [`Executor`]; results always come back in index order, so any
//! deterministic reduction over them is independent of the worker count.

use alloc::vec::Vec;

pub trait Executor {
    /// Returns `[f(0), f(1), ..., f(count - 1)]`.
    fn map_indexed<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Runs everything on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map_indexed<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..count).map(f).collect()
    }
}
