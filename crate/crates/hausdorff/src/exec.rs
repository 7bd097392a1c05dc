//! Rayon-backed [`Executor`].

use hausdorff_core::Executor;
use rayon::prelude::*;
use rayon::ThreadPool;

/// Environment variable read for the default worker count.
pub const THREADS_ENV: &str = "HAUSDORFF_THREADS";

/// Runs Monte-Carlo blocks on a rayon pool. Results come back in block
/// order, so estimates do not depend on the worker count.
pub struct Rayon {
    pool: Option<ThreadPool>,
}

impl Rayon {
    /// Uses rayon's global pool.
    pub fn global() -> Self {
        Self { pool: None }
    }

    /// A dedicated pool with `threads` workers; 0 means rayon's default.
    pub fn with_threads(threads: usize) -> Result<Self, rayon::ThreadPoolBuildError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()?;
        Ok(Self { pool: Some(pool) })
    }

    pub fn threads(&self) -> usize {
        self.pool
            .as_ref()
            .map_or_else(rayon::current_num_threads, |p| p.current_num_threads())
    }
}

impl Default for Rayon {
    fn default() -> Self {
        Self::global()
    }
}

impl Executor for Rayon {
    fn map_blocks<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        let run = || (0..n).into_par_iter().map(&f).collect();
        match &self.pool {
            Some(pool) => pool.install(run),
            None => run(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hausdorff_core::mc::estimate_mean;
    use hausdorff_core::Sequential;
    use rand::Rng;

    #[test]
    fn matches_sequential_bit_for_bit() {
        let f = |r: &mut rand_chacha::ChaCha8Rng| Some(r.random::<f64>().powi(3));
        let seq = estimate_mean(&Sequential, 100_000, 17, f);
        for threads in [1, 3, 8] {
            let par = estimate_mean(&Rayon::with_threads(threads).unwrap(), 100_000, 17, f);
            assert_eq!(seq, par);
        }
    }
}
