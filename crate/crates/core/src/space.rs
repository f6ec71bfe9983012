//! Points and box-bounded search spaces.

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::rng::RandomStream;

/// A finite point in d-dimensional space. Length is fixed at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct RealVector(Vec<f64>);

impl RealVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Dimension("vector must have at least one component".into()));
        }
        if let Some(k) = components.iter().position(|c| !c.is_finite()) {
            return Err(Error::Config(format!("component {k} is not finite")));
        }
        Ok(Self(components))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Mutable view; the length cannot change through it.
    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for RealVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Per-dimension box bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace {
    lower: RealVector,
    upper: RealVector,
}

impl SearchSpace {
    pub fn new(lower: RealVector, upper: RealVector) -> Result<Self> {
        if lower.dim() != upper.dim() {
            return Err(Error::Dimension(format!(
                "lower bound has {} components, upper has {}",
                lower.dim(),
                upper.dim()
            )));
        }
        for (k, (lo, hi)) in lower.iter().zip(upper.iter()).enumerate() {
            if lo >= hi {
                return Err(Error::Config(format!(
                    "dimension {k}: lower bound {lo} is not below upper bound {hi}"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval in every dimension.
    pub fn cube(dim: usize, low: f64, high: f64) -> Result<Self> {
        Self::new(
            RealVector::new(vec![low; dim])?,
            RealVector::new(vec![high; dim])?,
        )
    }

    pub fn dim(&self) -> usize {
        self.lower.dim()
    }

    pub fn lower(&self) -> &RealVector {
        &self.lower
    }

    pub fn upper(&self) -> &RealVector {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lower.iter().zip(self.upper.iter()))
                .all(|(v, (lo, hi))| lo <= v && v <= hi)
    }

    pub fn sample(&self, rng: &mut RandomStream) -> RealVector {
        RealVector(
            self.lower
                .iter()
                .zip(self.upper.iter())
                .map(|(&lo, &hi)| rng.uniform(lo, hi))
                .collect(),
        )
    }

    pub(crate) fn confine_in_place(&self, x: &mut [f64], rng: &mut RandomStream) {
        for (k, v) in x.iter_mut().enumerate() {
            let (lo, hi) = (self.lower[k], self.upper[k]);
            if !(lo <= *v && *v <= hi) {
                *v = rng.uniform(lo, hi);
            }
        }
    }
}

/// Resample every out-of-bounds component uniformly inside its own interval.
/// In-bounds components pass through untouched.
pub fn confine(position: &RealVector, space: &SearchSpace, rng: &mut RandomStream) -> Result<RealVector> {
    if position.dim() != space.dim() {
        return Err(Error::Dimension(format!(
            "position has {} components, space has {}",
            position.dim(),
            space.dim()
        )));
    }
    let mut out = position.clone();
    space.confine_in_place(out.as_mut_slice(), rng);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn square() -> SearchSpace {
        SearchSpace::cube(2, -1.0, 1.0).unwrap()
    }

    #[test]
    fn rejects_non_finite_components() {
        assert!(RealVector::new(vec![0.0, f64::NAN]).is_err());
        assert!(RealVector::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn rejects_inverted_bounds() {
        assert!(SearchSpace::cube(3, 1.0, 1.0).is_err());
        let lo = RealVector::new(vec![0.0]).unwrap();
        let hi = RealVector::new(vec![1.0, 2.0]).unwrap();
        assert!(SearchSpace::new(lo, hi).is_err());
    }

    #[test]
    fn confine_identity_inside() {
        let mut rng = RandomStream::new(0);
        let x = RealVector::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(confine(&x, &square(), &mut rng).unwrap(), x);
    }

    #[test]
    fn confine_resamples_only_violating_components() {
        let mut rng = RandomStream::new(0);
        let x = RealVector::new(vec![2.0, 0.0]).unwrap();
        let y = confine(&x, &square(), &mut rng).unwrap();
        assert!((-1.0..=1.0).contains(&y[0]));
        assert_eq!(y[1], 0.0);
    }

    #[test]
    fn confine_all_out_of_bounds() {
        let mut rng = RandomStream::new(5);
        let x = RealVector::new(vec![-7.0, 9.0]).unwrap();
        let y = confine(&x, &square(), &mut rng).unwrap();
        assert!(square().contains(&y));
    }

    #[test]
    fn confine_rejects_dimension_mismatch() {
        let mut rng = RandomStream::new(0);
        let x = RealVector::new(vec![0.0; 3]).unwrap();
        assert!(confine(&x, &square(), &mut rng).is_err());
    }

    proptest! {
        #[test]
        fn confined_points_are_inside(xs in prop::collection::vec(-1e6f64..1e6, 1..8), seed in any::<u64>()) {
            let space = SearchSpace::cube(xs.len(), -5.12, 5.12).unwrap();
            let mut rng = RandomStream::new(seed);
            let x = RealVector::new(xs).unwrap();
            let y = confine(&x, &space, &mut rng).unwrap();
            prop_assert!(space.contains(&y));
        }
    }
}
