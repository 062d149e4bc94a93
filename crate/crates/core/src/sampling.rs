//! Weight ranges across several weight sets, and the seeded random weight matrix.
//!
//! Sampling is counter based: iteration `i` reads ChaCha20 stream `i` under a
//! key derived from the seed, drawing one 64-bit word per criterion in column
//! order. The key is the seed's eight little-endian bytes followed by 24 zero
//! bytes. A word `x` becomes `u = (x >> 11) / (2^53 - 1)`, a closed draw in
//! [0, 1], and the weight is `lower + u * (upper - lower)` clamped into the
//! interval. Row `i` therefore depends only on the seed, `i` and the bounds.

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use thiserror::Error;

use crate::model::{NamedWeightSet, RandomWeightMatrix, WeightBounds};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SamplingError {
    #[error("at least one weight set is needed to build bounds")]
    NoWeightSets,
    #[error("weight set {index} has {got} entries, expected {expected}")]
    LengthMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("iterations must be at least 1")]
    ZeroIterations,
}

/// Element-wise minimum and maximum over the given weight sets.
pub fn compute_bounds(sets: &[NamedWeightSet]) -> Result<WeightBounds, SamplingError> {
    let first = sets.first().ok_or(SamplingError::NoWeightSets)?;
    let n = first.len();
    let mut lower = first.weights().to_vec();
    let mut upper = lower.clone();
    for (index, set) in sets.iter().enumerate().skip(1) {
        if set.len() != n {
            return Err(SamplingError::LengthMismatch {
                index,
                expected: n,
                got: set.len(),
            });
        }
        for (j, &w) in set.weights().iter().enumerate() {
            lower[j] = lower[j].min(w);
            upper[j] = upper[j].max(w);
        }
    }
    Ok(WeightBounds::new(lower, upper).expect("min/max of unit-sum weight sets lie in [0, 1]"))
}

const UNIT_SCALE: f64 = 1.0 / ((1u64 << 53) - 1) as f64;

/// Stateless row generator for a fixed seed and set of bounds.
#[derive(Clone, Debug)]
pub struct WeightSampler<'a> {
    key: [u8; 32],
    bounds: &'a WeightBounds,
}

impl<'a> WeightSampler<'a> {
    pub fn new(seed: u64, bounds: &'a WeightBounds) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        Self { key, bounds }
    }

    /// The weight vector for iteration `i` (zero-based).
    pub fn row(&self, i: usize) -> Vec<f64> {
        let mut rng = ChaCha20Rng::from_seed(self.key);
        rng.set_stream(i as u64);
        self.bounds
            .lower()
            .iter()
            .zip(self.bounds.upper())
            .map(|(&lo, &hi)| {
                let u = (rng.next_u64() >> 11) as f64 * UNIT_SCALE;
                (lo + u * (hi - lo)).clamp(lo, hi)
            })
            .collect()
    }
}

/// Draws `iterations` weight vectors uniformly from `bounds`. Rows are not renormalized.
pub fn sample_weight_matrix(
    bounds: &WeightBounds,
    iterations: usize,
    seed: u64,
) -> Result<RandomWeightMatrix, SamplingError> {
    if iterations == 0 {
        return Err(SamplingError::ZeroIterations);
    }
    let sampler = WeightSampler::new(seed, bounds);
    let rows = (0..iterations)
        .into_par_iter()
        .map(|i| sampler.row(i))
        .collect();
    Ok(RandomWeightMatrix {
        seed,
        bounds: bounds.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::WeightSource;

    fn set(w: &[f64]) -> NamedWeightSet {
        NamedWeightSet::new(WeightSource::Custom(0), w.to_vec()).unwrap()
    }

    #[test]
    fn bounds_of_three_sets() {
        let b = compute_bounds(&[
            set(&[0.34, 0.45, 0.21]),
            set(&[0.23, 0.40, 0.37]),
            set(&[0.41, 0.37, 0.22]),
        ])
        .unwrap();
        assert_eq!(b.lower(), &[0.23, 0.37, 0.21]);
        assert_eq!(b.upper(), &[0.41, 0.45, 0.37]);
    }

    #[test]
    fn single_set_is_its_own_bounds() {
        let s = set(&[0.2, 0.3, 0.5]);
        let b = compute_bounds(std::slice::from_ref(&s)).unwrap();
        assert_eq!(b.lower(), s.weights());
        assert_eq!(b.upper(), s.weights());
    }

    #[test]
    fn bounds_errors() {
        assert_eq!(compute_bounds(&[]), Err(SamplingError::NoWeightSets));
        assert_eq!(
            compute_bounds(&[set(&[0.5, 0.5]), set(&[1.0])]),
            Err(SamplingError::LengthMismatch {
                index: 1,
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn zero_width_bounds_repeat_exactly() {
        let b = WeightBounds::new(vec![0.2, 0.3, 0.5], vec![0.2, 0.3, 0.5]).unwrap();
        let rwm = sample_weight_matrix(&b, 50, 7).unwrap();
        assert!(rwm.rows().iter().all(|r| r == &[0.2, 0.3, 0.5]));
    }

    #[test]
    fn zero_iterations_rejected() {
        let b = WeightBounds::new(vec![0.5], vec![0.5]).unwrap();
        assert_eq!(
            sample_weight_matrix(&b, 0, 1),
            Err(SamplingError::ZeroIterations)
        );
    }

    #[test]
    fn reverse_order_matches_sequential() {
        let b = WeightBounds::new(vec![0.0, 0.1, 0.2], vec![0.5, 0.1, 0.9]).unwrap();
        let rwm = sample_weight_matrix(&b, 200, 99).unwrap();
        let sampler = WeightSampler::new(99, &b);
        let mut reversed: Vec<Vec<f64>> = (0..200).rev().map(|i| sampler.row(i)).collect();
        reversed.reverse();
        assert_eq!(rwm.rows(), reversed.as_slice());
        assert_eq!(rwm.seed(), 99);
        assert_eq!(rwm.iterations(), 200);
    }

    #[test]
    fn different_seeds_differ() {
        let b = WeightBounds::new(vec![0.0, 0.2], vec![0.5, 0.6]).unwrap();
        let a = sample_weight_matrix(&b, 10, 1).unwrap();
        let c = sample_weight_matrix(&b, 10, 2).unwrap();
        assert_ne!(a.rows(), c.rows());
    }

    #[test]
    fn unit_scale_reaches_both_endpoints() {
        assert_eq!(0.0 * UNIT_SCALE, 0.0);
        assert_eq!((u64::MAX >> 11) as f64 * UNIT_SCALE, 1.0);
    }
}
