//! The reproduction suite: nine groups of exact checks over the example
//! codes, randomised property checks and a Monte-Carlo cross-check.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::authcode::AuthCode;
use crate::catalog;
use crate::designs::{check_equitable, validate_edf, validate_splitting_bibd};
use crate::format;
use crate::oracle::{exhaustive_value, monte_carlo, Attack, GameSpec, Target, DEFAULT_BUDGET};
use crate::rational::Rational;
use crate::sample::{self, Shape};
use crate::transform::{authcode_to_threshold, dual, threshold_to_authcode};

/// Seed of the generator behind the randomised criteria.
pub const SUITE_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub checks: Vec<Check>,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "pass" } else { "fail" };
        write!(
            f,
            "criterion {} {}: {} ({} checks)",
            self.id,
            self.name,
            verdict,
            self.checks.len()
        )
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn eq<T: PartialEq + fmt::Debug>(&mut self, label: impl Into<String>, found: T, expected: T) {
        self.0.push(Check {
            label: label.into(),
            passed: found == expected,
            detail: format!("{found:?} vs {expected:?}"),
        });
    }

    fn truth(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            label: label.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn done(self, id: u8, name: &'static str) -> CriterionResult {
        CriterionResult {
            id,
            name,
            checks: self.0,
        }
    }
}

fn q(n: usize, d: usize) -> Rational {
    Rational::ratio(n, d)
}

fn oracle(code: &AuthCode, attack: Attack) -> Option<Rational> {
    let spec = GameSpec {
        target: Target::Code(code.clone()),
        attack,
    };
    exhaustive_value(&spec, DEFAULT_BUDGET)
        .ok()
        .map(|g| g.value)
}

fn scheme_oracle(code: &AuthCode, attack: Attack) -> Option<Rational> {
    let scheme = authcode_to_threshold(code).ok()?;
    let spec = GameSpec {
        target: Target::Scheme(scheme),
        attack,
    };
    exhaustive_value(&spec, DEFAULT_BUDGET)
        .ok()
        .map(|g| g.value)
}

pub fn fano_suite() -> CriterionResult {
    let mut c = Checks::default();
    let code = catalog::fano();
    c.eq("p_d0", code.p_d0(), q(3, 7));
    c.eq("p_d1", code.p_d1(), q(1, 3));
    c.eq("p_ks", code.p_ks().ok(), Some(q(1, 3)));
    c.eq("secrecy", code.perfect_secrecy().is_ok(), true);
    c.eq("column_regular", code.column_regular().ok(), Some(1));
    c.done(1, "fano code")
}

pub fn fano_threshold_suite() -> CriterionResult {
    let mut c = Checks::default();
    match authcode_to_threshold(&catalog::fano()) {
        Ok(scheme) => {
            let rob = scheme.robustness();
            c.eq("rules", scheme.rules().len(), 21);
            c.eq("epsilon", rob.epsilon, q(1, 3));
            c.eq("player1", rob.player1, q(1, 3));
            c.eq("player2", rob.player2, q(1, 3));
            c.eq("share_secrecy", scheme.share_secrecy().is_ok(), true);
        }
        Err(e) => c.truth("convert", false, e.to_string()),
    }
    c.done(2, "fano threshold scheme")
}

pub fn sts13_suite() -> CriterionResult {
    let mut c = Checks::default();
    let code = catalog::sts13();
    c.eq("p_d0", code.p_d0(), q(3, 13));
    c.eq("p_d1", code.p_d1(), q(1, 6));
    c.eq("p_ks", code.p_ks().ok(), Some(q(1, 3)));
    match dual(&code) {
        Ok(d) => {
            c.eq("dual_splitting", d.splitting_number(), Some(2));
            c.eq("dual_secrecy", d.perfect_secrecy().is_ok(), true);
            c.eq("dual_p_d0", d.p_d0(), q(3, 13));
            c.eq("dual_p_d1_vs_p_ks", Some(d.p_d1()), code.p_ks().ok());
            c.eq("dual_p_ks_vs_p_d1", d.p_ks().ok(), Some(code.p_d1()));
        }
        Err(e) => c.truth("dual", false, e.to_string()),
    }
    c.done(3, "13-point triple system code and dual")
}

pub fn edf19_suite() -> CriterionResult {
    let mut c = Checks::default();
    c.eq("lambda", validate_edf(&catalog::edf19_spec()).ok(), Some(3));
    let code = catalog::edf19();
    c.eq("p_d0", code.p_d0(), q(9, 19));
    c.eq("secrecy", code.perfect_secrecy().is_ok(), true);
    let p_d1 = code.p_d1();
    let p_ks = code.p_ks().ok();
    let ms = oracle(&code, Attack::MessageSubstitution);
    let ks = oracle(&code, Attack::KeySubstitution);
    c.eq("p_d1_eq_p_ks", Some(p_d1.clone()), p_ks.clone());
    c.eq("p_d1_vs_oracle", Some(p_d1), ms);
    c.eq("p_ks_vs_oracle", p_ks, ks.clone());
    // c(k-1)/(n-1) with c = 3, k = 3, n = 19
    let formula = q(3 * 2, 18);
    let verdict = match &ks {
        Some(v) if *v == formula => {
            "oracle value equals c(k-1)/(n-1) = 1/3; 1/6 rejected".to_string()
        }
        Some(v) if *v == q(1, 6) => "oracle value is 1/6; c(k-1)/(n-1) = 1/3 rejected".to_string(),
        Some(v) => format!("oracle value {v} matches neither 1/3 nor 1/6"),
        None => "oracle unavailable".to_string(),
    };
    c.truth("adjudication", ks.is_some(), verdict);
    c.done(4, "19-point external difference family code")
}

pub fn splitting25_suite() -> CriterionResult {
    let mut c = Checks::default();
    let code = catalog::splitting25();
    c.eq(
        "splitting_bibd",
        validate_splitting_bibd(code.matrix(), 3, 2)
            .map(|p| (p.v, p.b, p.r, p.k))
            .ok(),
        Some((25, 25, 6, 6)),
    );
    c.eq("equitable", check_equitable(code.matrix()).ok(), Some(2));
    c.eq("p_d0", code.p_d0(), q(6, 25));
    c.eq("p_d1", code.p_d1(), q(1, 6));
    c.eq("p_ks", code.p_ks().ok(), Some(q(1, 6)));
    c.eq(
        "epsilon",
        authcode_to_threshold(&code)
            .ok()
            .map(|s| s.robustness().epsilon),
        Some(q(1, 6)),
    );
    c.done(5, "25-point splitting code")
}

/// Counting identity, the impersonation bound, and
/// `(p_d0 = cu/v and secrecy) <=> column-regular` over random small codes.
pub fn property_suite(count: usize) -> CriterionResult {
    let mut c = Checks::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    let shape = Shape::default();
    let (mut counting_bad, mut bound_bad, mut flat_bad, mut biconditional_bad) = (0, 0, 0, 0);
    let (mut regular, mut irregular, mut splitting) = (0, 0, 0);
    for _ in 0..count {
        let code = sample::mixed_code(&mut rng, shape);
        let by_message: usize = (0..code.v())
            .map(|m| code.kappa(m).map_or(0, |k| k.len()))
            .sum();
        let by_key: usize = (0..code.b())
            .map(|k| code.mu(k).map_or(0, |m| m.len()))
            .sum();
        if by_message != by_key {
            counting_bad += 1;
        }
        let Some(cs) = code.splitting_number() else {
            continue;
        };
        splitting += 1;
        let (b, u, v) = (code.b(), code.u(), code.v());
        let floor = q(cs * u, v);
        let p_d0 = code.p_d0();
        if p_d0 < floor {
            bound_bad += 1;
        }
        let flat = (0..v).all(|m| code.kappa(m).map_or(0, |k| k.len()) * v == b * cs * u);
        if (p_d0 == floor) != flat {
            flat_bad += 1;
        }
        let lhs = p_d0 == floor && code.perfect_secrecy().is_ok();
        let rhs = code.column_regular().is_ok();
        if rhs {
            regular += 1;
        } else {
            irregular += 1;
        }
        if lhs != rhs {
            biconditional_bad += 1;
        }
    }
    c.eq("instances", count >= 500, true);
    c.eq("counting_identity_failures", counting_bad, 0);
    c.eq("impersonation_bound_failures", bound_bad, 0);
    c.eq("flat_incidence_failures", flat_bad, 0);
    c.eq("regularity_biconditional_failures", biconditional_bad, 0);
    c.truth(
        "both_directions_exercised",
        regular > 0 && irregular > 0,
        format!("{splitting} splitting codes: {regular} column-regular, {irregular} not"),
    );
    c.done(6, "counting and secrecy properties")
}

fn column_regular_examples() -> Vec<(String, AuthCode)> {
    let mut out = Vec::new();
    for (name, code) in catalog::all() {
        if let Ok(d) = dual(&code) {
            out.push((format!("{name}_dual"), d));
        }
        out.push((name.to_string(), code));
    }
    out
}

fn compare_with_oracle(c: &mut Checks, name: &str, code: &AuthCode) {
    c.eq(
        format!("{name} p_d0"),
        Some(code.p_d0()),
        oracle(code, Attack::Impersonation),
    );
    c.eq(
        format!("{name} p_d1"),
        Some(code.p_d1()),
        oracle(code, Attack::MessageSubstitution),
    );
    c.eq(
        format!("{name} p_ks"),
        code.p_ks().ok(),
        oracle(code, Attack::KeySubstitution),
    );
    let epsilon = authcode_to_threshold(code)
        .ok()
        .map(|s| s.robustness().epsilon);
    let exhaustive = scheme_oracle(code, Attack::DeceptionP1)
        .zip(scheme_oracle(code, Attack::DeceptionP2))
        .map(|(a, b)| a.max(b));
    c.eq(format!("{name} epsilon"), epsilon, exhaustive);
}

pub fn oracle_suite(random: usize) -> CriterionResult {
    let mut c = Checks::default();
    for (name, code) in column_regular_examples() {
        compare_with_oracle(&mut c, &name, &code);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED + 1);
    let shape = Shape {
        max_b: 20,
        max_v: 12,
        max_u: 4,
        max_c: 3,
    };
    let mut done = 0;
    while done < random {
        let code = sample::mixed_code(&mut rng, shape);
        if code.b() < 2 || code.v() < 2 || code.b() * code.v() > 200 {
            continue;
        }
        compare_with_oracle(&mut c, &format!("random#{done}"), &code);
        done += 1;
    }
    c.done(7, "analytic values equal exhaustive enumeration")
}

fn text_round_trip<T: PartialEq>(
    c: &mut Checks,
    label: String,
    value: &T,
    emit: impl Fn(&T) -> Option<String>,
    parse: impl Fn(&str) -> Option<T>,
) {
    let first = emit(value);
    let back = first.as_deref().and_then(&parse);
    let second = back.as_ref().and_then(&emit);
    let same = back.as_ref() == Some(value);
    c.truth(
        label,
        first.is_some() && first == second && same,
        if same { "identical" } else { "differs" },
    );
}

pub fn round_trip_suite(random: usize) -> CriterionResult {
    let mut c = Checks::default();
    for (name, code) in column_regular_examples() {
        let scheme = authcode_to_threshold(&code).ok();
        let back = scheme.as_ref().and_then(|s| threshold_to_authcode(s).ok());
        c.eq(
            format!("{name} code->threshold->code"),
            back.as_ref(),
            Some(&code),
        );
        let twice = dual(&code).and_then(|d| dual(&d)).ok();
        c.eq(format!("{name} dual∘dual"), twice.as_ref(), Some(&code));

        text_round_trip(
            &mut c,
            format!("{name} authcode text"),
            &code,
            |x| Some(format::emit_authcode(x)),
            |t| format::parse_authcode(t).ok(),
        );
        text_round_trip(
            &mut c,
            format!("{name} design text"),
            code.matrix(),
            |x| format::emit_design(x).ok(),
            |t| format::parse_design(t).ok(),
        );
        if let Some(s) = scheme {
            text_round_trip(
                &mut c,
                format!("{name} threshold text"),
                &s,
                |x| Some(format::emit_threshold(x)),
                |t| format::parse_threshold(t).ok(),
            );
        }
    }
    for (name, base) in [
        ("sts13", catalog::sts13_base()),
        ("splitting25", catalog::splitting25_base()),
    ] {
        text_round_trip(
            &mut c,
            format!("{name} base text"),
            &base,
            |x| Some(format::emit_base_blocks(x)),
            |t| format::parse_base_blocks(t).ok(),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED + 2);
    for i in 0..random {
        let code = sample::mixed_code(&mut rng, Shape::default());
        text_round_trip(
            &mut c,
            format!("random#{i} authcode text"),
            &code,
            |x| Some(format::emit_authcode(x)),
            |t| format::parse_authcode(t).ok(),
        );
        let scheme = authcode_to_threshold(&code).ok();
        let back = scheme.as_ref().and_then(|s| threshold_to_authcode(s).ok());
        c.eq(
            format!("random#{i} code->threshold->code"),
            back.as_ref(),
            Some(&code),
        );
        if let Some(s) = scheme {
            text_round_trip(
                &mut c,
                format!("random#{i} threshold text"),
                &s,
                |x| Some(format::emit_threshold(x)),
                |t| format::parse_threshold(t).ok(),
            );
        }
    }
    c.done(8, "round trips")
}

pub const MONTE_CARLO_TRIALS: u64 = 100_000;
pub const MONTE_CARLO_SEEDS: u64 = 20;

pub fn monte_carlo_suite() -> CriterionResult {
    let mut c = Checks::default();
    let spec = GameSpec {
        target: Target::Code(catalog::fano()),
        attack: Attack::KeySubstitution,
    };
    let strategy = match exhaustive_value(&spec, DEFAULT_BUDGET) {
        Ok(g) => g.strategy,
        Err(e) => {
            c.truth("strategy", false, e.to_string());
            return c.done(9, "monte carlo");
        }
    };
    let exact = q(1, 3);
    let mut within = 0;
    for seed in 1..=MONTE_CARLO_SEEDS {
        if let Ok(res) = monte_carlo(&spec, &strategy, MONTE_CARLO_TRIALS, seed) {
            let gap = (res.estimate.clone() - exact.clone()).abs();
            if gap <= Rational::from_integer(3) * &res.stderr_bound {
                within += 1;
            }
        }
    }
    c.truth(
        "runs_within_three_stderr",
        within >= 19,
        format!("{within} of {MONTE_CARLO_SEEDS}"),
    );
    c.done(9, "monte carlo key substitution")
}

/// Runs one criterion by number (1 to 9).
pub fn run(id: u8) -> Option<CriterionResult> {
    Some(match id {
        1 => fano_suite(),
        2 => fano_threshold_suite(),
        3 => sts13_suite(),
        4 => edf19_suite(),
        5 => splitting25_suite(),
        6 => property_suite(600),
        7 => oracle_suite(100),
        8 => round_trip_suite(100),
        9 => monte_carlo_suite(),
        _ => return None,
    })
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=9).filter_map(run).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_suites_pass() {
        for r in [
            fano_suite(),
            fano_threshold_suite(),
            sts13_suite(),
            edf19_suite(),
            splitting25_suite(),
        ] {
            assert!(r.passed(), "{r}: {:?}", r.checks);
        }
    }

    #[test]
    fn small_property_runs() {
        let r = oracle_suite(5);
        assert!(
            r.passed(),
            "{:?}",
            r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()
        );
        let r = round_trip_suite(5);
        assert!(
            r.passed(),
            "{:?}",
            r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()
        );
    }

    #[test]
    fn display_line() {
        let r = fano_suite();
        assert_eq!(r.to_string(), "criterion 1 fano code: pass (5 checks)");
        assert!(run(10).is_none());
    }
}
