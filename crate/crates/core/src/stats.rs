//! Small statistics helpers for Monte Carlo aggregation.

use alloc::vec::Vec;

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-trial seed: `mix64(mix64(mix64(master) ^ n) ^ trial)`.
///
/// Fixed forever so that experiments can be extended with more trials or
/// more sizes without changing the seeds of trials already run.
pub fn trial_seed(master: u64, n: u32, trial: u64) -> u64 {
    mix64(mix64(mix64(master) ^ u64::from(n)) ^ trial)
}

/// Nearest-rank quantile: the `ceil(q·N)`-th smallest value (at least the
/// first). `None` for an empty sample.
pub fn nearest_rank<T: Copy + PartialOrd>(values: &[T], q: f64) -> Option<T> {
    if values.is_empty() {
        return None;
    }
    let mut sorted: Vec<T> = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("no NaN in samples"));
    let rank = libm::ceil(q * sorted.len() as f64) as usize;
    Some(sorted[rank.clamp(1, sorted.len()) - 1])
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Quartiles<T> {
    pub q25: T,
    pub median: T,
    pub q75: T,
}

pub fn quartiles<T: Copy + PartialOrd>(values: &[T]) -> Option<Quartiles<T>> {
    Some(Quartiles {
        q25: nearest_rank(values, 0.25)?,
        median: nearest_rank(values, 0.5)?,
        q75: nearest_rank(values, 0.75)?,
    })
}

/// Sample mean and standard error of the mean.
pub fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = values.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, libm::sqrt(var / n))
}

/// Centered threshold statistic `6 m / n² − ln n − ½ ln ln n` (natural logs).
pub fn threshold_statistic(n: u32, m: u64) -> f64 {
    let nf = f64::from(n);
    let ln = libm::log(nf);
    6.0 * m as f64 / (nf * nf) - ln - 0.5 * libm::log(ln)
}
