//! Seeded, block-structured Monte-Carlo.
//!
//! Draws are grouped into fixed-size blocks and every block owns a ChaCha
//! stream derived from `(seed, block index)`. Block results are merged in
//! index order, so an estimate depends only on the seed and the sample
//! count, never on how many workers ran the blocks.

use alloc::vec::Vec;
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Draws per RNG block.
pub const BLOCK_SIZE: u64 = 4096;

/// Runs independent jobs `0..n` and returns their results in index order.
pub trait Executor: Sync {
    fn map_blocks<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Runs every job on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map_blocks<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).map(f).collect()
    }
}

/// RNG for one block of one experiment.
pub fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Splits `samples` into `(block index, draws in block)` pairs.
pub fn blocks(samples: u64, block_size: u64) -> impl Iterator<Item = (u64, u64)> {
    let n = samples.div_ceil(block_size);
    (0..n).map(move |b| (b, block_size.min(samples - b * block_size)))
}

/// Streaming mean/variance (Welford) with an exact pairwise merge.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunningStats {
    pub count: u64,
    pub mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let d = x - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn merge(&mut self, other: &Self) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let d = other.mean - self.mean;
        self.mean += d * other.count as f64 / n;
        self.m2 += other.m2 + d * d * self.count as f64 * other.count as f64 / n;
        self.count += other.count;
    }

    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn stderr(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

/// Result of a seeded Monte-Carlo (or deterministic) estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentReport {
    /// Draws that contributed to the estimate.
    pub samples: u64,
    pub estimate: f64,
    /// Zero for deterministic (quadrature) estimates.
    pub stderr: f64,
    /// Draws dropped because a per-draw solve failed.
    pub failures: u64,
}

impl ExperimentReport {
    pub fn exact(estimate: f64) -> Self {
        Self {
            samples: 0,
            estimate,
            stderr: 0.0,
            failures: 0,
        }
    }

    /// |estimate − expected| in units of the standard error.
    pub fn z_score(&self, expected: f64) -> f64 {
        let d = (self.estimate - expected).abs();
        if self.stderr == 0.0 {
            if d == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            d / self.stderr
        }
    }

    pub fn within_sigma(&self, expected: f64, k: f64) -> bool {
        self.z_score(expected) <= k
    }
}

/// Mean of `f` over `samples` draws. `f` returns `None` for a failed draw,
/// which is counted and excluded.
pub fn estimate_mean<E, F>(exec: &E, samples: u64, seed: u64, f: F) -> ExperimentReport
where
    E: Executor + ?Sized,
    F: Fn(&mut ChaCha8Rng) -> Option<f64> + Sync + Send,
{
    let plan: Vec<(u64, u64)> = blocks(samples, BLOCK_SIZE).collect();
    let parts = exec.map_blocks(plan.len(), |i| {
        let (b, len) = plan[i];
        let mut rng = block_rng(seed, b);
        let mut stats = RunningStats::default();
        let mut failures = 0u64;
        for _ in 0..len {
            match f(&mut rng) {
                Some(x) => stats.push(x),
                None => failures += 1,
            }
        }
        (stats, failures)
    });
    let mut total = RunningStats::default();
    let mut failures = 0;
    for (s, fl) in &parts {
        total.merge(s);
        failures += fl;
    }
    ExperimentReport {
        samples: total.count,
        estimate: total.mean,
        stderr: total.stderr(),
        failures,
    }
}

/// Mean of `f` with the standard error taken from `batches` batch means.
/// Each batch is one RNG stream.
pub fn estimate_batch_means<E, F>(
    exec: &E,
    samples: u64,
    seed: u64,
    batches: usize,
    f: F,
) -> ExperimentReport
where
    E: Executor + ?Sized,
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync + Send,
{
    assert!(batches >= 2);
    let per = samples.div_ceil(batches as u64).max(1);
    let means = exec.map_blocks(batches, |b| {
        let mut rng = block_rng(seed, b as u64);
        // Kahan-compensated sum within the batch.
        let (mut s, mut c) = (0.0f64, 0.0f64);
        for _ in 0..per {
            let y = f(&mut rng) - c;
            let t = s + y;
            c = (t - s) - y;
            s = t;
        }
        s / per as f64
    });
    let mut stats = RunningStats::default();
    means.iter().for_each(|&m| stats.push(m));
    ExperimentReport {
        samples: per * batches as u64,
        estimate: stats.mean,
        stderr: stats.stderr(),
        failures: 0,
    }
}
