//! The worked example codes.

use crate::authcode::AuthCode;
use crate::designs::{develop, equitable_order, BaseBlocks, EdfSpec, OrderedDesign};

/// Youden square of the Fano plane: row `K` is `(K, K+1, K+3) mod 7`.
pub fn fano_design() -> OrderedDesign {
    develop(&[vec![0], vec![1], vec![3]], 7).expect("valid base row")
}

pub fn fano() -> AuthCode {
    AuthCode::uniform(fano_design()).expect("nonempty matrix")
}

/// Base blocks of the cyclic Steiner triple system on 13 points.
pub fn sts13_base() -> BaseBlocks {
    BaseBlocks::new(
        13,
        3,
        1,
        vec![
            vec![vec![0], vec![1], vec![4]],
            vec![vec![0], vec![2], vec![8]],
        ],
    )
    .expect("valid base blocks")
}

/// The Steiner triple system on 13 points, equitably ordered.
pub fn sts13_design() -> OrderedDesign {
    let blocks = sts13_base().develop().expect("valid base blocks").merged();
    equitable_order(&blocks).expect("a Steiner triple system with k | r")
}

pub fn sts13() -> AuthCode {
    AuthCode::uniform(sts13_design()).expect("nonempty matrix")
}

pub fn edf19_spec() -> EdfSpec {
    EdfSpec::new(19, vec![vec![1, 7, 11], vec![4, 6, 9], vec![5, 16, 17]])
}

pub fn edf19() -> AuthCode {
    let matrix = develop(&edf19_spec().base_row(), 19).expect("disjoint sets");
    AuthCode::uniform(matrix).expect("nonempty matrix")
}

pub fn splitting25_base() -> BaseBlocks {
    BaseBlocks::new(25, 3, 2, vec![vec![vec![0, 1], vec![2, 4], vec![12, 20]]])
        .expect("valid base block")
}

pub fn splitting25() -> AuthCode {
    AuthCode::uniform(splitting25_base().develop().expect("valid base block"))
        .expect("nonempty matrix")
}

/// All example codes with short names.
pub fn all() -> Vec<(&'static str, AuthCode)> {
    vec![
        ("fano", fano()),
        ("sts13", sts13()),
        ("edf19", edf19()),
        ("splitting25", splitting25()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{check_equitable, validate_bibd, validate_edf, validate_splitting_bibd};

    #[test]
    fn examples_are_valid() {
        assert!(validate_bibd(&fano_design().merged())
            .unwrap()
            .is_symmetric());
        assert_eq!(check_equitable(&sts13_design()), Ok(2));
        assert_eq!(validate_edf(&edf19_spec()), Ok(3));
        let d = splitting25().matrix().clone();
        assert!(validate_splitting_bibd(&d, 3, 2).is_ok());
        assert_eq!(all().len(), 4);
    }
}
