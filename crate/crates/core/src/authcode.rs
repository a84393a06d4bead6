//! Authentication codes given by an encoding matrix and a source
//! distribution, with exact values of the impersonation, message-substitution
//! and key-substitution games.
//!
//! Keys are uniform (`1/b`) and the message for `(K, s)` is uniform over the
//! cell `e_K(s)`. The joint weight of `(K, s, m)` is therefore
//! `(1/b) · Prob[s] · 1/|e_K(s)|` for `m ∈ e_K(s)`.
//!
//! Substitution values are per-observation optimal: the adversary answers
//! each observed message (or key) with its own best substitute, and the
//! value averages over observations. The best conditional success over a
//! single observation is reported alongside.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::designs::{DesignError, OrderedDesign};
use crate::distribution::{Distribution, DistributionError};
use crate::rational::Rational;

const NO_SOURCE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("code needs at least one key")]
    NoKeys,
    #[error("source distribution has {found} outcomes but the matrix has {expected} columns")]
    SourceCount { expected: usize, found: usize },
    #[error("key {key} out of range (b = {b})")]
    KeyOutOfRange { key: usize, b: usize },
    #[error("message {message} out of range (v = {v})")]
    MessageOutOfRange { message: usize, v: usize },
    #[error("source {id} out of range (u = {u})")]
    SourceOutOfRange { id: usize, u: usize },
    #[error("key substitution needs at least two keys")]
    SingleKey,
    #[error("bounds need at least two messages, got {v}")]
    TooFewMessages { v: usize },
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecrecyViolation {
    pub message: usize,
    pub source: usize,
    /// `Prob[m | s]`
    pub conditional: Rational,
    /// `Prob[m]`
    pub marginal: Rational,
}

impl fmt::Display for SecrecyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Prob[m={} | s={}] = {} but Prob[m={}] = {}",
            self.message, self.source, self.conditional, self.message, self.marginal
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnViolation {
    pub column: usize,
    pub message: usize,
    pub count: usize,
    pub expected: Rational,
}

impl fmt::Display for ColumnViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "column {} holds message {} {} times, expected {}",
            self.column, self.message, self.count, self.expected
        )
    }
}

/// Value of a substitution game under per-observation optimal play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionValue {
    /// Success probability averaged over observations.
    pub value: Rational,
    /// Largest success probability conditioned on a single observation.
    pub conditional_max: Rational,
    /// Best substitute for each observation (smallest id on ties); `None`
    /// only when no alternative exists.
    pub best_reply: Vec<Option<usize>>,
}

/// Lower bounds `(cu/v, c(u-1)/(v-1))` on impersonation and substitution
/// for a `c`-splitting code with `u` sources and `v` messages.
pub fn bounds(u: usize, v: usize, c: usize) -> Result<(Rational, Rational), CodeError> {
    if v < 2 {
        return Err(CodeError::TooFewMessages { v });
    }
    Ok((
        Rational::ratio(c * u, v),
        Rational::ratio(c * (u - 1), v - 1),
    ))
}

/// An encoding matrix (rows are keys, columns are sources, cells are
/// message sets) together with a source distribution.
#[derive(Clone, PartialEq, Eq)]
pub struct AuthCode {
    matrix: OrderedDesign,
    sources: Distribution,
    /// `decoder[K * v + m]` is the source `m` decodes to under `K`.
    decoder: Vec<usize>,
}

impl fmt::Debug for AuthCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AuthCode")
            .field("v", &self.v())
            .field("rows", &self.matrix.rows())
            .field("sources", &self.sources)
            .finish()
    }
}

impl AuthCode {
    pub fn new(matrix: OrderedDesign, sources: Distribution) -> Result<Self, CodeError> {
        if matrix.b() == 0 {
            return Err(CodeError::NoKeys);
        }
        if sources.len() != matrix.u() {
            return Err(CodeError::SourceCount {
                expected: matrix.u(),
                found: sources.len(),
            });
        }
        let v = matrix.v();
        let mut decoder = vec![NO_SOURCE; matrix.b() * v];
        for (k, row) in matrix.rows().iter().enumerate() {
            for (s, cell) in row.iter().enumerate() {
                for &m in cell {
                    decoder[k * v + m] = s;
                }
            }
        }
        Ok(AuthCode {
            matrix,
            sources,
            decoder,
        })
    }

    /// Equiprobable sources.
    pub fn uniform(matrix: OrderedDesign) -> Result<Self, CodeError> {
        let sources = Distribution::uniform(matrix.u())?;
        Self::new(matrix, sources)
    }

    pub fn with_sources(&self, sources: Distribution) -> Result<Self, CodeError> {
        Self::new(self.matrix.clone(), sources)
    }

    pub fn matrix(&self) -> &OrderedDesign {
        &self.matrix
    }

    pub fn sources(&self) -> &Distribution {
        &self.sources
    }

    /// Number of keys.
    pub fn b(&self) -> usize {
        self.matrix.b()
    }

    /// Number of messages.
    pub fn v(&self) -> usize {
        self.matrix.v()
    }

    /// Number of sources.
    pub fn u(&self) -> usize {
        self.matrix.u()
    }

    pub fn cell(&self, key: usize, source: usize) -> &[usize] {
        self.matrix.cell(key, source)
    }

    fn check_key(&self, key: usize) -> Result<(), CodeError> {
        if key >= self.b() {
            return Err(CodeError::KeyOutOfRange { key, b: self.b() });
        }
        Ok(())
    }

    fn check_message(&self, message: usize) -> Result<(), CodeError> {
        if message >= self.v() {
            return Err(CodeError::MessageOutOfRange {
                message,
                v: self.v(),
            });
        }
        Ok(())
    }

    fn lookup(&self, key: usize, message: usize) -> Option<usize> {
        let s = self.decoder[key * self.v() + message];
        (s != NO_SOURCE).then_some(s)
    }

    /// The source `message` encodes under `key`, if any.
    pub fn decode(&self, key: usize, message: usize) -> Result<Option<usize>, CodeError> {
        self.check_key(key)?;
        self.check_message(message)?;
        Ok(self.lookup(key, message))
    }

    /// `μ(K)`: all messages valid under `key`, sorted.
    pub fn mu(&self, key: usize) -> Result<Vec<usize>, CodeError> {
        self.check_key(key)?;
        Ok(self.matrix.block(key))
    }

    /// `κ(m)`: keys under which `message` is valid.
    pub fn kappa(&self, message: usize) -> Result<Vec<usize>, CodeError> {
        self.check_message(message)?;
        Ok((0..self.b())
            .filter(|&k| self.lookup(k, message).is_some())
            .collect())
    }

    /// `κ(m, s)`: keys under which `message` encodes `source`.
    pub fn kappa_s(&self, message: usize, source: usize) -> Result<Vec<usize>, CodeError> {
        self.check_message(message)?;
        if source >= self.u() {
            return Err(CodeError::SourceOutOfRange {
                id: source,
                u: self.u(),
            });
        }
        Ok((0..self.b())
            .filter(|&k| self.lookup(k, message) == Some(source))
            .collect())
    }

    /// `(key, source)` occurrences of every message.
    fn occurrences(&self) -> Vec<Vec<(usize, usize)>> {
        let mut occ = vec![Vec::new(); self.v()];
        for (k, row) in self.matrix.rows().iter().enumerate() {
            for (s, cell) in row.iter().enumerate() {
                for &m in cell {
                    occ[m].push((k, s));
                }
            }
        }
        occ
    }

    /// `Prob[m | K]` restricted to the given cell: `Prob[s] / |e_K(s)|`.
    fn encoding_weight(&self, key: usize, source: usize) -> Rational {
        self.sources.weight(source) / &Rational::from_integer(self.cell(key, source).len())
    }

    /// Joint weight of `(K, s, m)` for any `m ∈ e_K(s)`.
    fn joint_weight(&self, key: usize, source: usize) -> Rational {
        self.encoding_weight(key, source) / &Rational::from_integer(self.b())
    }

    /// `Prob[m | s]` for every message.
    pub fn message_given_source(&self, source: usize) -> Vec<Rational> {
        let mut probs = vec![Rational::zero(); self.v()];
        let b = Rational::from_integer(self.b());
        for key in 0..self.b() {
            let cell = self.cell(key, source);
            let w = Rational::recip_of(cell.len()) / &b;
            for &m in cell {
                probs[m] += &w;
            }
        }
        probs
    }

    /// `Prob[m]` for every message.
    pub fn message_marginal(&self) -> Vec<Rational> {
        let mut probs = vec![Rational::zero(); self.v()];
        for s in 0..self.u() {
            let given = self.message_given_source(s);
            for (p, g) in probs.iter_mut().zip(given) {
                *p += self.sources.weight(s) * &g;
            }
        }
        probs
    }

    /// Impersonation: `max_m |κ(m)| / b`.
    pub fn p_d0(&self) -> Rational {
        let mut counts = vec![0usize; self.v()];
        for k in 0..self.b() {
            for m in self.matrix.block(k) {
                counts[m] += 1;
            }
        }
        Rational::ratio(counts.into_iter().max().unwrap_or(0), self.b())
    }

    pub fn p_d1(&self) -> Rational {
        self.message_substitution().value
    }

    /// Message substitution: the adversary sees `m` and sends `m' ≠ m`,
    /// winning when `m'` decodes under the unknown key to a different
    /// source.
    pub fn message_substitution(&self) -> SubstitutionValue {
        let v = self.v();
        let occ = self.occurrences();
        let mut value = Rational::zero();
        let mut conditional_max = Rational::zero();
        let mut best_reply = Vec::with_capacity(v);
        for (m, seen) in occ.iter().enumerate() {
            let mut wins: BTreeMap<usize, Rational> = BTreeMap::new();
            let mut prob_m = Rational::zero();
            for &(key, s) in seen {
                let w = self.joint_weight(key, s);
                prob_m += &w;
                for (s2, cell) in self.matrix.row(key).iter().enumerate() {
                    if s2 == s {
                        continue;
                    }
                    for &m2 in cell {
                        *wins.entry(m2).or_default() += &w;
                    }
                }
            }
            let (reply, best) = best_alternative(m, v, &wins);
            if let Some(cond) = best.checked_div(&prob_m) {
                conditional_max = conditional_max.max(cond);
            }
            value += best;
            best_reply.push(reply);
        }
        SubstitutionValue {
            value,
            conditional_max,
            best_reply,
        }
    }

    pub fn p_ks(&self) -> Result<Rational, CodeError> {
        Ok(self.key_substitution()?.value)
    }

    /// Key substitution: the adversary sees `K` and swaps in `K' ≠ K`,
    /// winning when the unseen message decodes under `K'` to a different
    /// source.
    pub fn key_substitution(&self) -> Result<SubstitutionValue, CodeError> {
        let b = self.b();
        if b < 2 {
            return Err(CodeError::SingleKey);
        }
        let occ = self.occurrences();
        let inv_b = Rational::recip_of(b);
        let mut value = Rational::zero();
        let mut conditional_max = Rational::zero();
        let mut best_reply = Vec::with_capacity(b);
        for key in 0..b {
            let mut wins: BTreeMap<usize, Rational> = BTreeMap::new();
            for (s, cell) in self.matrix.row(key).iter().enumerate() {
                let p = self.encoding_weight(key, s);
                for &m in cell {
                    for &(k2, s2) in &occ[m] {
                        if k2 != key && s2 != s {
                            *wins.entry(k2).or_default() += &p;
                        }
                    }
                }
            }
            let (reply, best) = best_alternative(key, b, &wins);
            value += &best * &inv_b;
            conditional_max = conditional_max.max(best);
            best_reply.push(reply);
        }
        Ok(SubstitutionValue {
            value,
            conditional_max,
            best_reply,
        })
    }

    /// Perfect secrecy: `Prob[m | s] = Prob[m]` for every message and every
    /// source (sources of probability zero included). The first violation
    /// in message-major order is returned.
    pub fn perfect_secrecy(&self) -> Result<(), SecrecyViolation> {
        let marginal = self.message_marginal();
        let given: Vec<Vec<Rational>> = (0..self.u())
            .map(|s| self.message_given_source(s))
            .collect();
        for (m, pm) in marginal.iter().enumerate() {
            for (s, g) in given.iter().enumerate() {
                if g[m] != *pm {
                    return Err(SecrecyViolation {
                        message: m,
                        source: s,
                        conditional: g[m].clone(),
                        marginal: pm.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Common number of times each message appears in each column.
    pub fn column_regular(&self) -> Result<usize, ColumnViolation> {
        let (u, v) = (self.u(), self.v());
        let mut counts = vec![0usize; u * v];
        let mut total = 0;
        for row in self.matrix.rows() {
            for (s, cell) in row.iter().enumerate() {
                for &m in cell {
                    counts[s * v + m] += 1;
                    total += 1;
                }
            }
        }
        let expected = Rational::ratio(total, u * v);
        for s in 0..u {
            for m in 0..v {
                let count = counts[s * v + m];
                if Rational::ratio(count, 1) != expected {
                    return Err(ColumnViolation {
                        column: s,
                        message: m,
                        count,
                        expected,
                    });
                }
            }
        }
        Ok(expected.to_usize().unwrap_or(0))
    }

    /// Common cell size `c`, or `None` when cells differ in size.
    pub fn splitting_number(&self) -> Option<usize> {
        self.matrix.cell_size()
    }

    pub fn analyze(&self) -> Result<AnalysisReport, CodeError> {
        let substitution = self.message_substitution();
        let key = self.key_substitution()?;
        let p_d0 = self.p_d0();
        let splitting = self.splitting_number();
        let bounds = match splitting {
            Some(c) if self.v() >= 2 => {
                let (b0, b1) = bounds(self.u(), self.v(), c)?;
                Some(BoundCheck {
                    p_d0_met: p_d0 == b0,
                    p_d1_met: substitution.value == b1,
                    p_d0: b0,
                    p_d1: b1,
                })
            }
            _ => None,
        };
        Ok(AnalysisReport {
            p_d0,
            p_d1: substitution.value,
            p_ks: key.value,
            p_d1_conditional_max: substitution.conditional_max,
            p_ks_conditional_max: key.conditional_max,
            secrecy: self.perfect_secrecy(),
            column_regular: self.column_regular(),
            splitting,
            bounds,
            uniform_sources: self.sources.is_uniform(),
        })
    }
}

/// Largest win over ids `!= observed` in `0..alphabet`, ties to the
/// smallest id. Ids missing from `wins` win with probability zero.
pub(crate) fn best_alternative(
    observed: usize,
    alphabet: usize,
    wins: &BTreeMap<usize, Rational>,
) -> (Option<usize>, Rational) {
    let mut best: Option<(usize, Rational)> = (0..alphabet)
        .find(|&id| id != observed)
        .map(|id| (id, Rational::zero()));
    for (&id, w) in wins {
        if id == observed {
            continue;
        }
        match &best {
            Some((bid, bw)) if w < bw || (w == bw && id > *bid) => {}
            _ => best = Some((id, w.clone())),
        }
    }
    match best {
        Some((id, w)) => (Some(id), w),
        None => (None, Rational::zero()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub p_d0: Rational,
    pub p_d1: Rational,
    pub p_d0_met: bool,
    pub p_d1_met: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub p_d0: Rational,
    pub p_d1: Rational,
    pub p_ks: Rational,
    pub p_d1_conditional_max: Rational,
    pub p_ks_conditional_max: Rational,
    pub secrecy: Result<(), SecrecyViolation>,
    pub column_regular: Result<usize, ColumnViolation>,
    pub splitting: Option<usize>,
    pub bounds: Option<BoundCheck>,
    pub uniform_sources: bool,
}

impl fmt::Display for AnalysisReport {
    /// `key = value` lines in a fixed order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p_d0 = {}", self.p_d0)?;
        writeln!(f, "p_d1 = {}", self.p_d1)?;
        writeln!(f, "p_ks = {}", self.p_ks)?;
        writeln!(f, "p_d1_conditional_max = {}", self.p_d1_conditional_max)?;
        writeln!(f, "p_ks_conditional_max = {}", self.p_ks_conditional_max)?;
        match &self.secrecy {
            Ok(()) => writeln!(f, "secrecy = ok")?,
            Err(w) => writeln!(
                f,
                "secrecy = fail m={} s={} ({}, {})",
                w.message, w.source, w.conditional, w.marginal
            )?,
        }
        match &self.column_regular {
            Ok(mult) => writeln!(f, "column_regular = {mult}")?,
            Err(w) => writeln!(
                f,
                "column_regular = fail column={} message={} count={} expected={}",
                w.column, w.message, w.count, w.expected
            )?,
        }
        match self.splitting {
            Some(c) => writeln!(f, "splitting = {c}")?,
            None => writeln!(f, "splitting = nonuniform")?,
        }
        let flag = |met: bool| if met { "met" } else { "not-met" };
        match &self.bounds {
            Some(bc) => {
                writeln!(f, "bound_p_d0 = {} {}", bc.p_d0, flag(bc.p_d0_met))?;
                writeln!(f, "bound_p_d1 = {} {}", bc.p_d1, flag(bc.p_d1_met))?;
            }
            None => {
                writeln!(f, "bound_p_d0 = n/a")?;
                writeln!(f, "bound_p_d1 = n/a")?;
            }
        }
        if !self.uniform_sources {
            writeln!(
                f,
                "# sources are not equiprobable; substitution values average per-observation optimal replies"
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{develop, equitable_order, BaseBlocks};
    use crate::rational::rat;

    fn r(n: i64, d: i64) -> Rational {
        rat(n, d).unwrap()
    }

    fn fano() -> AuthCode {
        AuthCode::uniform(develop(&[vec![0], vec![1], vec![3]], 7).unwrap()).unwrap()
    }

    fn edf19() -> AuthCode {
        AuthCode::uniform(develop(&[vec![1, 7, 11], vec![4, 6, 9], vec![5, 16, 17]], 19).unwrap())
            .unwrap()
    }

    fn sts13() -> AuthCode {
        let blocks = BaseBlocks::new(13, 1, 3, vec![vec![vec![0, 1, 4]], vec![vec![0, 2, 8]]])
            .unwrap()
            .develop()
            .unwrap();
        AuthCode::uniform(equitable_order(&blocks).unwrap()).unwrap()
    }

    fn splitting25() -> AuthCode {
        AuthCode::uniform(develop(&[vec![0, 1], vec![2, 4], vec![12, 20]], 25).unwrap()).unwrap()
    }

    fn two_by_two() -> AuthCode {
        let m =
            OrderedDesign::new(3, 2, vec![vec![vec![0], vec![1]], vec![vec![0], vec![2]]]).unwrap();
        AuthCode::uniform(m).unwrap()
    }

    fn single_source() -> AuthCode {
        let m =
            OrderedDesign::new(3, 1, vec![vec![vec![0]], vec![vec![1]], vec![vec![2]]]).unwrap();
        AuthCode::uniform(m).unwrap()
    }

    #[test]
    fn decode_and_maps() {
        let code = fano();
        assert_eq!(code.decode(0, 3), Ok(Some(2)));
        assert_eq!(code.decode(0, 2), Ok(None));
        assert!(matches!(
            code.decode(7, 0),
            Err(CodeError::KeyOutOfRange { .. })
        ));
        assert!(matches!(
            code.decode(0, 7),
            Err(CodeError::MessageOutOfRange { .. })
        ));
        assert_eq!(code.mu(0).unwrap(), vec![0, 1, 3]);
        assert_eq!(code.kappa(0).unwrap(), vec![0, 4, 6]);
        assert_eq!(code.kappa_s(0, 0).unwrap(), vec![0]);
        assert_eq!(edf19().mu(0).unwrap(), vec![1, 4, 5, 6, 7, 9, 11, 16, 17]);
        assert_eq!(single_source().mu(1).unwrap(), vec![1]);
    }

    #[test]
    fn kappa_is_disjoint_union_of_kappa_s() {
        for code in [fano(), edf19(), sts13()] {
            for m in 0..code.v() {
                let mut joined: Vec<usize> = (0..code.u())
                    .flat_map(|s| code.kappa_s(m, s).unwrap())
                    .collect();
                let n = joined.len();
                joined.sort_unstable();
                joined.dedup();
                assert_eq!(joined.len(), n);
                assert_eq!(joined, code.kappa(m).unwrap());
            }
        }
    }

    #[test]
    fn impersonation_values() {
        assert_eq!(fano().p_d0(), r(3, 7));
        assert_eq!(edf19().p_d0(), r(9, 19));
        assert_eq!(splitting25().p_d0(), r(6, 25));
        assert_eq!(sts13().p_d0(), r(3, 13));
    }

    #[test]
    fn substitution_values() {
        assert_eq!(fano().p_d1(), r(1, 3));
        assert_eq!(sts13().p_d1(), r(1, 6));
        assert_eq!(single_source().p_d1(), Rational::zero());
        assert_eq!(edf19().p_d1(), r(1, 3));
        assert_eq!(splitting25().p_d1(), r(1, 6));
    }

    #[test]
    fn key_substitution_values() {
        assert_eq!(fano().p_ks().unwrap(), r(1, 3));
        assert_eq!(sts13().p_ks().unwrap(), r(1, 3));
        assert_eq!(splitting25().p_ks().unwrap(), r(1, 6));
        assert_eq!(single_source().p_ks().unwrap(), Rational::zero());
        let one_key =
            AuthCode::uniform(OrderedDesign::new(2, 1, vec![vec![vec![0]]]).unwrap()).unwrap();
        assert_eq!(one_key.p_ks(), Err(CodeError::SingleKey));
    }

    #[test]
    fn fano_key_swap_example() {
        // swapping row 0 for row 1 wins exactly when m = 1
        let code = fano();
        let wins: Vec<usize> = code
            .mu(0)
            .unwrap()
            .into_iter()
            .filter(|&m| matches!((code.decode(0, m).unwrap(), code.decode(1, m).unwrap()), (Some(a), Some(b)) if a != b))
            .collect();
        assert_eq!(wins, vec![1]);
        let ks = fano().key_substitution().unwrap();
        assert_eq!(ks.conditional_max, r(1, 3));
        assert_eq!(ks.best_reply[0], Some(1));
    }

    #[test]
    fn secrecy() {
        assert_eq!(fano().perfect_secrecy(), Ok(()));
        assert_eq!(edf19().perfect_secrecy(), Ok(()));
        let err = two_by_two().perfect_secrecy().unwrap_err();
        // first violation in message-major order
        assert_eq!((err.message, err.source), (0, 0));
        assert_eq!(
            (err.conditional.clone(), err.marginal.clone()),
            (r(1, 1), r(1, 2))
        );
        // (m = 1, second source) also violates: 1/2 vs 1/4
        let code = two_by_two();
        assert_eq!(code.message_given_source(1)[1], r(1, 2));
        assert_eq!(code.message_marginal()[1], r(1, 4));
    }

    #[test]
    fn column_regularity() {
        assert_eq!(fano().column_regular(), Ok(1));
        assert_eq!(sts13().column_regular(), Ok(2));
        let err = two_by_two().column_regular().unwrap_err();
        assert_eq!((err.column, err.message, err.count), (0, 0, 2));
    }

    #[test]
    fn splitting() {
        assert_eq!(fano().splitting_number(), Some(1));
        assert_eq!(edf19().splitting_number(), Some(3));
        let mixed = OrderedDesign::new(4, 2, vec![vec![vec![0, 1], vec![2]]]).unwrap();
        assert_eq!(AuthCode::uniform(mixed).unwrap().splitting_number(), None);
    }

    #[test]
    fn bound_values() {
        assert_eq!(bounds(3, 7, 1).unwrap(), (r(3, 7), r(1, 3)));
        assert_eq!(bounds(3, 19, 3).unwrap(), (r(9, 19), r(1, 3)));
        assert_eq!(bounds(1, 5, 2).unwrap(), (r(2, 5), Rational::zero()));
        assert_eq!(bounds(3, 1, 1), Err(CodeError::TooFewMessages { v: 1 }));
    }

    #[test]
    fn analysis_report() {
        let report = fano().analyze().unwrap();
        assert_eq!(report.p_d0, r(3, 7));
        assert_eq!(report.p_d1, r(1, 3));
        assert_eq!(report.p_ks, r(1, 3));
        assert_eq!(report.secrecy, Ok(()));
        assert_eq!(report.column_regular, Ok(1));
        let text = report.to_string();
        let keys: Vec<&str> = text
            .lines()
            .map(|l| l.split(" = ").next().unwrap())
            .collect();
        assert_eq!(
            keys,
            [
                "p_d0",
                "p_d1",
                "p_ks",
                "p_d1_conditional_max",
                "p_ks_conditional_max",
                "secrecy",
                "column_regular",
                "splitting",
                "bound_p_d0",
                "bound_p_d1"
            ]
        );
        assert!(text.contains("bound_p_d0 = 3/7 met"));

        let report = sts13().analyze().unwrap();
        assert_eq!(
            (report.p_d0, report.p_d1, report.p_ks),
            (r(3, 13), r(1, 6), r(1, 3))
        );

        let report = single_source().analyze().unwrap();
        assert_eq!(
            (report.p_d1, report.p_ks),
            (Rational::zero(), Rational::zero())
        );
    }

    #[test]
    fn counting_identity() {
        for code in [fano(), edf19(), sts13(), splitting25(), two_by_two()] {
            let by_message: usize = (0..code.v()).map(|m| code.kappa(m).unwrap().len()).sum();
            let by_key: usize = (0..code.b()).map(|k| code.mu(k).unwrap().len()).sum();
            assert_eq!(by_message, by_key);
        }
    }

    #[test]
    fn non_uniform_sources() {
        let skewed = Distribution::new(vec![r(1, 2), r(1, 4), r(1, 4)]).unwrap();
        let code = fano().with_sources(skewed).unwrap();
        // column regularity still gives secrecy for any source distribution
        assert_eq!(code.perfect_secrecy(), Ok(()));
        let report = code.analyze().unwrap();
        assert!(report.to_string().contains("not equiprobable"));
        assert!(report.p_d1 >= r(1, 4));
    }

    #[test]
    fn source_count_mismatch() {
        let m = develop(&[vec![0], vec![1], vec![3]], 7).unwrap();
        assert!(matches!(
            AuthCode::new(m, Distribution::uniform(2).unwrap()),
            Err(CodeError::SourceCount {
                expected: 3,
                found: 2
            })
        ));
    }
}
