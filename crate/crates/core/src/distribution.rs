//! Finite probability distributions with exact rational weights.

use std::fmt;

use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistributionError {
    #[error("distribution needs at least one outcome")]
    Empty,
    #[error("negative weight {weight} at outcome {index}")]
    NegativeWeight { index: usize, weight: Rational },
    #[error("weights total {total}, expected 1/1")]
    BadTotal { total: Rational },
}

/// Weights indexed by outcome id; nonnegative and summing to exactly one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Distribution {
    weights: Vec<Rational>,
}

/// Checks that `weights` form a probability distribution.
pub fn dist_validate(weights: &[Rational]) -> Result<(), DistributionError> {
    if let Some((index, weight)) = weights.iter().enumerate().find(|(_, w)| w.is_negative()) {
        return Err(DistributionError::NegativeWeight {
            index,
            weight: weight.clone(),
        });
    }
    let total: Rational = weights.iter().sum();
    if total != Rational::one() {
        return Err(DistributionError::BadTotal { total });
    }
    Ok(())
}

/// The uniform distribution on `n` outcomes.
pub fn dist_uniform(n: usize) -> Result<Distribution, DistributionError> {
    if n == 0 {
        return Err(DistributionError::Empty);
    }
    Ok(Distribution {
        weights: vec![Rational::recip_of(n); n],
    })
}

impl Distribution {
    pub fn new(weights: Vec<Rational>) -> Result<Self, DistributionError> {
        if weights.is_empty() {
            return Err(DistributionError::Empty);
        }
        dist_validate(&weights)?;
        Ok(Distribution { weights })
    }

    pub fn uniform(n: usize) -> Result<Self, DistributionError> {
        dist_uniform(n)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, i: usize) -> &Rational {
        &self.weights[i]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn is_uniform(&self) -> bool {
        self.weights.windows(2).all(|w| w[0] == w[1])
    }
}

impl fmt::Debug for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.weights.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn uniform_weights() {
        let d = dist_uniform(7).unwrap();
        assert_eq!(d.len(), 7);
        assert!(d.weights().iter().all(|w| *w == rat(1, 7).unwrap()));
        assert_eq!(dist_uniform(1).unwrap().weights(), &[Rational::one()]);
        let d3 = dist_uniform(3).unwrap();
        assert!(d3.weights().iter().all(|w| w.to_string() == "1/3"));
        assert_eq!(dist_uniform(0), Err(DistributionError::Empty));
    }

    #[test]
    fn validation() {
        let half = rat(1, 2).unwrap();
        assert!(dist_validate(&[half.clone(), half.clone()]).is_ok());
        assert_eq!(
            dist_validate(&[half.clone(), rat(1, 3).unwrap()]),
            Err(DistributionError::BadTotal {
                total: rat(5, 6).unwrap()
            })
        );
        assert_eq!(
            dist_validate(&[rat(-1, 2).unwrap(), rat(3, 2).unwrap()]),
            Err(DistributionError::NegativeWeight {
                index: 0,
                weight: rat(-1, 2).unwrap()
            })
        );
    }

    #[test]
    fn zero_weights_are_allowed() {
        let d = Distribution::new(vec![Rational::zero(), Rational::one()]).unwrap();
        assert!(!d.is_uniform());
    }
}
