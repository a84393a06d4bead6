//! Conversions between authentication codes and (2,2)-threshold schemes,
//! dual codes, and checks of the value correspondences between them.
//!
//! A code becomes a scheme by handing out the key as share 1 and the
//! encoded message as share 2. The dual code swaps keys and messages:
//! `F(m, s) = κ(m, s)`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::authcode::{AuthCode, CodeError, ColumnViolation};
use crate::designs::{DesignError, OrderedDesign};
use crate::rational::Rational;
use crate::threshold::{Rule, ThresholdError, ThresholdScheme};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("no share 2 value reconstructs secret {secret} with share 1 = {share}")]
    EmptyCell { share: usize, secret: usize },
    #[error("Prob[v1={share} | s={secret}] = {found}, expected {expected}")]
    NonUniformKey {
        share: usize,
        secret: usize,
        found: Rational,
        expected: Rational,
    },
    #[error("rule ({share}, {other}) for secret {secret} has weight {found}, expected {expected}")]
    NonUniformEncoding {
        share: usize,
        other: usize,
        secret: usize,
        found: Rational,
        expected: Rational,
    },
    #[error("message {message} is never used for source {source_id}, so the dual cell is empty")]
    EmptyDualCell { message: usize, source_id: usize },
    #[error("dual keys would not be uniform: {0}")]
    NotColumnRegular(ColumnViolation),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Threshold(#[from] ThresholdError),
    #[error(transparent)]
    Design(#[from] DesignError),
}

/// Scheme whose rules are `(K, m, s)` for `m ∈ e_K(s)`, with
/// `Prob[(K, m) | s] = (1/b) · 1/|e_K(s)|`.
pub fn authcode_to_threshold(code: &AuthCode) -> Result<ThresholdScheme, TransformError> {
    let b = code.b();
    let mut rules = Vec::new();
    for key in 0..b {
        for source in 0..code.u() {
            let cell = code.cell(key, source);
            let weight = Rational::recip_of(b * cell.len());
            rules.extend(cell.iter().map(|&m| Rule {
                v1: key,
                v2: m,
                secret: source,
                weight: weight.clone(),
            }));
        }
    }
    Ok(ThresholdScheme::new(
        code.sources().clone(),
        b,
        code.v(),
        rules,
    )?)
}

/// Code with `e_{v1}(s) = {v2 : rec(v1, v2) = s}`. The scheme must hand out
/// share 1 uniformly for every secret and share 2 uniformly over each cell.
pub fn threshold_to_authcode(scheme: &ThresholdScheme) -> Result<AuthCode, TransformError> {
    let a1 = scheme.share1_alphabet();
    let secrets = scheme.secret_count();
    let mut cells: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); secrets]; a1];
    let mut mass: HashMap<(usize, usize), Rational> = HashMap::new();
    for rule in scheme.rules() {
        cells[rule.v1][rule.secret].push(rule.v2);
        *mass.entry((rule.v1, rule.secret)).or_default() += &rule.weight;
    }
    let expected = Rational::recip_of(a1);
    for (share, row) in cells.iter().enumerate() {
        for (secret, cell) in row.iter().enumerate() {
            if cell.is_empty() {
                return Err(TransformError::EmptyCell { share, secret });
            }
        }
    }
    for share in 0..a1 {
        for secret in 0..secrets {
            let found = mass.remove(&(share, secret)).unwrap_or_default();
            if found != expected {
                return Err(TransformError::NonUniformKey {
                    share,
                    secret,
                    found,
                    expected: expected.clone(),
                });
            }
        }
    }
    let each = |share: usize, secret: usize| Rational::recip_of(a1 * cells[share][secret].len());
    for rule in scheme.rules() {
        let want = each(rule.v1, rule.secret);
        if rule.weight != want {
            return Err(TransformError::NonUniformEncoding {
                share: rule.v1,
                other: rule.v2,
                secret: rule.secret,
                found: rule.weight.clone(),
                expected: want,
            });
        }
    }
    let matrix = OrderedDesign::new(scheme.share2_alphabet(), secrets, cells)?;
    Ok(AuthCode::new(matrix, scheme.secrets().clone())?)
}

/// The dual code: keys are the original messages, messages the original
/// keys, and `F(m, s) = κ(m, s)`. Rejects codes that are not
/// column-regular, since the dual's keys would then not be equiprobable.
pub fn dual(code: &AuthCode) -> Result<AuthCode, TransformError> {
    let (u, v) = (code.u(), code.v());
    let mut rows: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); u]; v];
    for (key, row) in code.matrix().rows().iter().enumerate() {
        for (source, cell) in row.iter().enumerate() {
            for &m in cell {
                rows[m][source].push(key);
            }
        }
    }
    for (message, row) in rows.iter().enumerate() {
        if let Some(source_id) = row.iter().position(Vec::is_empty) {
            return Err(TransformError::EmptyDualCell { message, source_id });
        }
    }
    code.column_regular()
        .map_err(TransformError::NotColumnRegular)?;
    let matrix = OrderedDesign::new(code.b(), u, rows)?;
    Ok(AuthCode::new(matrix, code.sources().clone())?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assertion {
    pub name: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub passed: bool,
}

impl Assertion {
    fn equal<T: PartialEq + fmt::Display>(name: &'static str, lhs: T, rhs: T) -> Self {
        Assertion {
            name,
            passed: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "pass" } else { "fail" };
        write!(
            f,
            "{} = {} ({}, {})",
            self.name, verdict, self.lhs, self.rhs
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub assertions: Vec<Assertion>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.assertions {
            writeln!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Compares the converted scheme's deception values with the code's
/// substitution values: player 1 against `p_ks`, player 2 against `p_d1`.
pub fn verify_equivalence(code: &AuthCode) -> Result<VerificationReport, TransformError> {
    let scheme = authcode_to_threshold(code)?;
    let rob = scheme.robustness();
    let p_d1 = code.p_d1();
    let p_ks = code.p_ks()?;
    let back = threshold_to_authcode(&scheme)?;
    Ok(VerificationReport {
        assertions: vec![
            Assertion::equal("epsilon", rob.epsilon, p_d1.clone().max(p_ks.clone())),
            Assertion::equal("player1_p_ks", rob.player1, p_ks),
            Assertion::equal("player2_p_d1", rob.player2, p_d1),
            Assertion {
                name: "round_trip",
                passed: back == *code,
                lhs: format!("b={} v={} u={}", back.b(), back.v(), back.u()),
                rhs: format!("b={} v={} u={}", code.b(), code.v(), code.u()),
            },
        ],
    })
}

/// Checks the substitution exchange between a code and its dual, the
/// dual's splitting number `bc/v`, its secrecy and impersonation value, and
/// that dualising twice gives the code back.
pub fn verify_duality(code: &AuthCode) -> Result<VerificationReport, TransformError> {
    let d = dual(code)?;
    let expected_split = code
        .splitting_number()
        .filter(|c| (code.b() * c).is_multiple_of(code.v()))
        .map(|c| (code.b() * c / code.v()).to_string())
        .unwrap_or_else(|| "none".into());
    let found_split = d
        .splitting_number()
        .map(|c| c.to_string())
        .unwrap_or_else(|| "none".into());
    let secrecy = match d.perfect_secrecy() {
        Ok(()) => "ok".to_string(),
        Err(e) => e.to_string(),
    };
    let double = dual(&d).ok();
    let mut assertions = vec![
        Assertion::equal("p_d1_vs_dual_p_ks", code.p_d1(), d.p_ks()?),
        Assertion::equal("p_ks_vs_dual_p_d1", code.p_ks()?, d.p_d1()),
        Assertion::equal("dual_splitting", found_split, expected_split),
        Assertion::equal("dual_secrecy", secrecy, "ok".to_string()),
        Assertion::equal("p_d0_vs_dual_p_d0", code.p_d0(), d.p_d0()),
    ];
    assertions.push(Assertion {
        name: "dual_dual",
        passed: double.as_ref() == Some(code),
        lhs: match &double {
            Some(dd) => format!("b={} v={} u={}", dd.b(), dd.v(), dd.u()),
            None => "undefined".into(),
        },
        rhs: format!("b={} v={} u={}", code.b(), code.v(), code.u()),
    });
    Ok(VerificationReport { assertions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{develop, equitable_order, BaseBlocks, EdfSpec};
    use crate::distribution::Distribution;
    use crate::rational::rat;

    fn r(n: i64, d: i64) -> Rational {
        rat(n, d).unwrap()
    }

    fn fano() -> AuthCode {
        AuthCode::uniform(develop(&[vec![0], vec![1], vec![3]], 7).unwrap()).unwrap()
    }

    fn sts13() -> AuthCode {
        let blocks = BaseBlocks::new(
            13,
            3,
            1,
            vec![
                vec![vec![0], vec![1], vec![4]],
                vec![vec![0], vec![2], vec![8]],
            ],
        )
        .unwrap()
        .develop()
        .unwrap();
        AuthCode::uniform(equitable_order(&blocks.merged()).unwrap()).unwrap()
    }

    fn edf19() -> (EdfSpec, AuthCode) {
        let spec = EdfSpec::new(19, vec![vec![1, 7, 11], vec![4, 6, 9], vec![5, 16, 17]]);
        let code = AuthCode::uniform(develop(&spec.base_row(), 19).unwrap()).unwrap();
        (spec, code)
    }

    fn splitting25() -> AuthCode {
        AuthCode::uniform(develop(&[vec![0, 1], vec![2, 4], vec![12, 20]], 25).unwrap()).unwrap()
    }

    #[test]
    fn fano_to_threshold() {
        let scheme = authcode_to_threshold(&fano()).unwrap();
        assert_eq!(scheme.rules().len(), 21);
        assert!(scheme.rules().iter().all(|rule| rule.weight == r(1, 7)));
        assert_eq!(scheme.rec(0, 1), Some(1));
        assert_eq!(scheme.rec(0, 2), None);
        assert_eq!(threshold_to_authcode(&scheme).unwrap(), fano());
    }

    #[test]
    fn sts13_rule_count() {
        assert_eq!(authcode_to_threshold(&sts13()).unwrap().rules().len(), 78);
    }

    #[test]
    fn single_rule() {
        let code =
            AuthCode::uniform(OrderedDesign::new(1, 1, vec![vec![vec![0]]]).unwrap()).unwrap();
        let scheme = authcode_to_threshold(&code).unwrap();
        assert_eq!(
            scheme.rules(),
            &[Rule {
                v1: 0,
                v2: 0,
                secret: 0,
                weight: r(1, 1)
            }]
        );
        assert_eq!(threshold_to_authcode(&scheme).unwrap(), code);
    }

    #[test]
    fn missing_cell() {
        let rules = vec![
            Rule {
                v1: 0,
                v2: 0,
                secret: 0,
                weight: r(1, 2),
            },
            Rule {
                v1: 1,
                v2: 1,
                secret: 0,
                weight: r(1, 2),
            },
            Rule {
                v1: 0,
                v2: 1,
                secret: 1,
                weight: r(1, 1),
            },
        ];
        let scheme = ThresholdScheme::new(Distribution::uniform(2).unwrap(), 2, 2, rules).unwrap();
        assert_eq!(
            threshold_to_authcode(&scheme),
            Err(TransformError::EmptyCell {
                share: 1,
                secret: 1
            })
        );
    }

    #[test]
    fn skewed_encoding() {
        let rules = vec![
            Rule {
                v1: 0,
                v2: 0,
                secret: 0,
                weight: r(1, 4),
            },
            Rule {
                v1: 0,
                v2: 1,
                secret: 0,
                weight: r(1, 4),
            },
            Rule {
                v1: 1,
                v2: 2,
                secret: 0,
                weight: r(1, 2),
            },
        ];
        let scheme = ThresholdScheme::new(Distribution::uniform(1).unwrap(), 2, 3, rules).unwrap();
        assert!(threshold_to_authcode(&scheme).is_ok());

        let rules = vec![
            Rule {
                v1: 0,
                v2: 0,
                secret: 0,
                weight: r(1, 6),
            },
            Rule {
                v1: 0,
                v2: 1,
                secret: 0,
                weight: r(1, 3),
            },
            Rule {
                v1: 1,
                v2: 2,
                secret: 0,
                weight: r(1, 2),
            },
        ];
        let scheme = ThresholdScheme::new(Distribution::uniform(1).unwrap(), 2, 3, rules).unwrap();
        assert!(matches!(
            threshold_to_authcode(&scheme),
            Err(TransformError::NonUniformEncoding {
                share: 0,
                other: 0,
                ..
            })
        ));

        let rules = vec![
            Rule {
                v1: 0,
                v2: 0,
                secret: 0,
                weight: r(2, 3),
            },
            Rule {
                v1: 1,
                v2: 1,
                secret: 0,
                weight: r(1, 3),
            },
        ];
        let scheme = ThresholdScheme::new(Distribution::uniform(1).unwrap(), 2, 2, rules).unwrap();
        assert!(matches!(
            threshold_to_authcode(&scheme),
            Err(TransformError::NonUniformKey {
                share: 0,
                secret: 0,
                ..
            })
        ));
    }

    #[test]
    fn fano_dual_is_a_fano_code() {
        let d = dual(&fano()).unwrap();
        assert_eq!((d.b(), d.v(), d.u()), (7, 7, 3));
        assert!(crate::designs::validate_bibd(&d.matrix().merged()).is_ok());
        // F(m, s) = {m - d_s}
        assert_eq!(d.cell(0, 1), &[6]);
        assert_eq!(d.cell(0, 2), &[4]);
        let report = verify_duality(&fano()).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn sts13_dual() {
        let code = sts13();
        let d = dual(&code).unwrap();
        assert_eq!((d.b(), d.v()), (13, 26));
        assert_eq!(d.splitting_number(), Some(2));
        assert_eq!(d.p_d0(), r(3, 13));
        assert_eq!(d.p_d1(), code.p_ks().unwrap());
        assert_eq!(d.p_ks().unwrap(), code.p_d1());
        let report = verify_duality(&code).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn edf_dual_is_the_negated_family() {
        let (spec, code) = edf19();
        let d = dual(&code).unwrap();
        let negated = develop(&spec.negated().base_row(), 19).unwrap();
        assert_eq!(d.matrix(), &negated);
        assert!(verify_duality(&code).unwrap().passed());
    }

    #[test]
    fn non_regular_dual_rejected() {
        let m = OrderedDesign::new(
            4,
            2,
            vec![
                vec![vec![0], vec![1]],
                vec![vec![0], vec![2]],
                vec![vec![3], vec![1]],
            ],
        )
        .unwrap();
        let code = AuthCode::uniform(m).unwrap();
        assert!(matches!(
            dual(&code),
            Err(TransformError::EmptyDualCell {
                message: 0,
                source_id: 1
            })
        ));

        let m = OrderedDesign::new(
            2,
            2,
            vec![
                vec![vec![0], vec![1]],
                vec![vec![1], vec![0]],
                vec![vec![0], vec![1]],
            ],
        )
        .unwrap();
        let code = AuthCode::uniform(m).unwrap();
        assert!(matches!(
            dual(&code),
            Err(TransformError::NotColumnRegular(_))
        ));
    }

    #[test]
    fn equivalence_reports() {
        for (code, eps) in [
            (fano(), r(1, 3)),
            (sts13(), r(1, 3)),
            (splitting25(), r(1, 6)),
        ] {
            let report = verify_equivalence(&code).unwrap();
            assert!(report.passed(), "{report}");
            assert_eq!(
                authcode_to_threshold(&code).unwrap().robustness().epsilon,
                eps
            );
        }
        let scheme = authcode_to_threshold(&sts13()).unwrap().robustness();
        assert_eq!((scheme.player1, scheme.player2), (r(1, 3), r(1, 6)));
    }

    #[test]
    fn report_lines() {
        let text = verify_equivalence(&fano()).unwrap().to_string();
        assert!(text.starts_with("epsilon = pass (1/3, 1/3)\n"));
        let failing = Assertion::equal("x", r(1, 2), r(1, 3));
        assert_eq!(failing.to_string(), "x = fail (1/2, 1/3)");
    }
}
