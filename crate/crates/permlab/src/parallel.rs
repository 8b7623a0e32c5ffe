//! Order-preserving replica maps on a fixed-size worker pool.

use permlab_core::rng::{domain, stream, StreamRng};
use rayon::prelude::*;

use crate::Result;

pub struct Workers {
    pool: rayon::ThreadPool,
}

impl Workers {
    /// `None` uses one worker per available core.
    pub fn new(threads: Option<usize>) -> Result<Self> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(k) = threads {
            b = b.num_threads(k.max(1));
        }
        Ok(Self { pool: b.build()? })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    /// `[f(0), …, f(count − 1)]`, computed in parallel. The result does not
    /// depend on the number of workers as long as `f` is a pure function of
    /// its index.
    pub fn map<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        self.pool.install(|| (0..count).into_par_iter().with_min_len(64).map(f).collect())
    }

    /// Like [`map`](Self::map), handing each replica its own random stream
    /// derived from `(seed, label, replica)`.
    pub fn replicas<T, F>(&self, seed: u64, label: &str, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&mut StreamRng) -> T + Sync + Send,
    {
        let d = domain(label);
        self.map(count, |r| f(&mut stream(seed, d, r as u64)))
    }
}
