//! Deterministic execution helpers shared by the numeric kernels.
//!
//! Every average in this crate reduces through [`det_sum`] or
//! [`map_indexed`]. Both produce bit-identical results whether the
//! `parallel` feature is enabled or not: sums are accumulated per
//! fixed-size chunk and the chunk partials are folded sequentially, so
//! the floating-point reduction order never depends on thread count.

/// Chunk size for deterministic summation. Fixed so that parallel and
/// sequential builds perform the same arithmetic in the same order.
pub const SUM_CHUNK: usize = 4096;

#[cfg(feature = "parallel")]
mod imp {
    use super::SUM_CHUNK;
    use rayon::prelude::*;

    pub fn det_sum<F>(n: usize, f: F) -> f64
    where
        F: Fn(usize) -> f64 + Sync,
    {
        let chunks = n.div_ceil(SUM_CHUNK);
        let partials: Vec<f64> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let lo = c * SUM_CHUNK;
                let hi = (lo + SUM_CHUNK).min(n);
                let mut acc = 0.0;
                for i in lo..hi {
                    acc += f(i);
                }
                acc
            })
            .collect();
        partials.iter().sum()
    }

    pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).into_par_iter().map(f).collect()
    }

    pub fn fill_indexed<F>(out: &mut [f64], f: F)
    where
        F: Fn(usize) -> f64 + Sync,
    {
        out.par_iter_mut().enumerate().for_each(|(i, v)| *v = f(i));
    }

    /// Caps the global worker pool. Returns an error message if the pool
    /// was already initialized.
    pub fn set_threads(n: usize) -> Result<(), String> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())
    }

    pub fn threads() -> usize {
        rayon::current_num_threads()
    }
}

#[cfg(not(feature = "parallel"))]
mod imp {
    use super::SUM_CHUNK;

    pub fn det_sum<F>(n: usize, f: F) -> f64
    where
        F: Fn(usize) -> f64 + Sync,
    {
        let chunks = n.div_ceil(SUM_CHUNK);
        let mut partials = Vec::with_capacity(chunks);
        for c in 0..chunks {
            let lo = c * SUM_CHUNK;
            let hi = (lo + SUM_CHUNK).min(n);
            let mut acc = 0.0;
            for i in lo..hi {
                acc += f(i);
            }
            partials.push(acc);
        }
        partials.iter().sum()
    }

    pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).map(f).collect()
    }

    pub fn fill_indexed<F>(out: &mut [f64], f: F)
    where
        F: Fn(usize) -> f64 + Sync,
    {
        for (i, v) in out.iter_mut().enumerate() {
            *v = f(i);
        }
    }

    pub fn set_threads(_n: usize) -> Result<(), String> {
        Ok(())
    }

    pub fn threads() -> usize {
        1
    }
}

pub use imp::{det_sum, fill_indexed, map_indexed, set_threads, threads};

/// Mean of `f(i)` over `0..n`, deterministic reduction.
pub fn det_mean<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    if n == 0 {
        return 0.0;
    }
    det_sum(n, f) / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_sum_matches_sequential_order() {
        let n = 3 * SUM_CHUNK + 17;
        let f = |i: usize| ((i as f64) * 0.7371).sin() / (i as f64 + 1.0);
        let par = det_sum(n, f);
        // Reference: same chunking, plain loop.
        let mut partials = Vec::new();
        let mut i = 0;
        while i < n {
            let hi = (i + SUM_CHUNK).min(n);
            let mut acc = 0.0;
            for j in i..hi {
                acc += f(j);
            }
            partials.push(acc);
            i = hi;
        }
        let seq: f64 = partials.iter().sum();
        assert_eq!(par.to_bits(), seq.to_bits());
    }

    #[test]
    fn map_indexed_preserves_order() {
        let v = map_indexed(1000, |i| i * i);
        assert_eq!(v[37], 37 * 37);
        assert_eq!(v.len(), 1000);
    }
}
