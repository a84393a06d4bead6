use super::{Cell, DesignError};

/// `k` disjoint `c`-subsets of `Z_n` claimed to form an external difference
/// family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdfSpec {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
}

impl EdfSpec {
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Self {
        EdfSpec { n, sets }
    }

    /// The sets as one ordered base row (set order kept).
    pub fn base_row(&self) -> Vec<Cell> {
        self.sets
            .iter()
            .map(|s| {
                let mut c = s.clone();
                c.sort_unstable();
                c
            })
            .collect()
    }

    /// `-D_1, ..., -D_k`.
    pub fn negated(&self) -> EdfSpec {
        let sets = self
            .sets
            .iter()
            .map(|s| {
                let mut c: Vec<usize> = s.iter().map(|&x| (self.n - x % self.n) % self.n).collect();
                c.sort_unstable();
                c
            })
            .collect();
        EdfSpec { n: self.n, sets }
    }
}

/// Tallies every external difference `x - y (mod n)` with `x` and `y` drawn
/// from different sets and returns the common multiplicity λ of the nonzero
/// values.
pub fn validate_edf(spec: &EdfSpec) -> Result<usize, DesignError> {
    let n = spec.n;
    if n < 2 || spec.sets.len() < 2 {
        return Err(DesignError::DegenerateEdf);
    }
    let c = spec.sets[0].len();
    for (set, elems) in spec.sets.iter().enumerate() {
        if elems.len() != c || c == 0 {
            return Err(DesignError::EdfSetSize {
                set,
                found: elems.len(),
                expected: c.max(1),
            });
        }
        let mut seen = vec![false; n];
        for &e in elems {
            if e >= n {
                return Err(DesignError::EdfElementRange { set, element: e, n });
            }
            if std::mem::replace(&mut seen[e], true) {
                return Err(DesignError::EdfRepeatedElement { set, element: e });
            }
        }
    }

    let mut tally = vec![0usize; n];
    for (i, di) in spec.sets.iter().enumerate() {
        for (j, dj) in spec.sets.iter().enumerate() {
            if i == j {
                continue;
            }
            for &x in di {
                for &y in dj {
                    let d = (x + n - y) % n;
                    if d == 0 {
                        return Err(DesignError::EdfZeroDifference {
                            x,
                            y,
                            set_x: i,
                            set_y: j,
                        });
                    }
                    tally[d] += 1;
                }
            }
        }
    }

    let lambda = tally[1];
    if let Some((value, &count)) = tally.iter().enumerate().skip(2).find(|(_, &t)| t != lambda) {
        return Err(DesignError::EdfNonUniform {
            value,
            count,
            reference: 1,
            expected: lambda,
        });
    }
    Ok(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::develop;

    fn edf19() -> EdfSpec {
        EdfSpec::new(19, vec![vec![1, 7, 11], vec![4, 6, 9], vec![5, 16, 17]])
    }

    /// Independent route: in the developed matrix, every ordered pair of
    /// distinct points lies in different cells of exactly λ rows.
    fn split_pair_counts(spec: &EdfSpec) -> Vec<usize> {
        let d = develop(&spec.base_row(), spec.n).unwrap();
        let mut counts = Vec::new();
        for x in 0..spec.n {
            for y in 0..spec.n {
                if x == y {
                    continue;
                }
                let rows = d
                    .rows()
                    .iter()
                    .filter(|row| {
                        let cx = row.iter().position(|c| c.contains(&x));
                        let cy = row.iter().position(|c| c.contains(&y));
                        matches!((cx, cy), (Some(a), Some(b)) if a != b)
                    })
                    .count();
                counts.push(rows);
            }
        }
        counts
    }

    #[test]
    fn edf_19_3_3_3() {
        let spec = edf19();
        assert_eq!(validate_edf(&spec), Ok(3));
        assert!(split_pair_counts(&spec).iter().all(|&c| c == 3));
        // λ(n-1) = c²k(k-1)
        assert_eq!(3 * 18, 3 * 3 * 3 * 2);
    }

    #[test]
    fn two_singletons_in_z2() {
        assert_eq!(
            validate_edf(&EdfSpec::new(2, vec![vec![0], vec![1]])),
            Ok(2)
        );
    }

    #[test]
    fn overlapping_sets_give_zero_difference() {
        let spec = EdfSpec::new(19, vec![vec![1, 7, 11], vec![4, 7, 9], vec![5, 16, 17]]);
        assert_eq!(
            validate_edf(&spec),
            Err(DesignError::EdfZeroDifference {
                x: 7,
                y: 7,
                set_x: 0,
                set_y: 1
            })
        );
    }

    #[test]
    fn non_uniform_tally() {
        let spec = EdfSpec::new(7, vec![vec![0], vec![1]]);
        assert!(matches!(
            validate_edf(&spec),
            Err(DesignError::EdfNonUniform { .. })
        ));
    }

    #[test]
    fn negation_is_a_family_too() {
        let neg = edf19().negated();
        assert_eq!(
            neg.sets,
            vec![vec![8, 12, 18], vec![10, 13, 15], vec![2, 3, 14]]
        );
        assert_eq!(validate_edf(&neg), Ok(3));
    }
}
