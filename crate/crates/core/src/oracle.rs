//! Independent game evaluation.
//!
//! [`exhaustive_value`] lists every outcome of the dealer's randomness
//! together with its exact probability, and scores every substitute the
//! adversary could send for each observation. It reads encoding matrices
//! and rule tables directly and shares no code with the analytic values in
//! [`crate::authcode`] and [`crate::threshold`].
//!
//! A deterministic strategy assigns one substitute per observation, and its
//! success probability is a sum of per-observation terms. The best strategy
//! therefore picks the best substitute for each observation independently;
//! ties go to the smaller id.
//!
//! [`monte_carlo`] plays a fixed strategy against sampled outcomes. The
//! generator is ChaCha8 seeded with `seed_from_u64`. Trials are split into
//! shards of [`SHARD_SIZE`]; shard `i` is seeded with `seed + i` (wrapping),
//! so results do not depend on the number of worker threads.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::authcode::AuthCode;
use crate::rational::{common_denominator, Rational};
use crate::threshold::ThresholdScheme;

pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const SHARD_SIZE: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Attack {
    Impersonation,
    MessageSubstitution,
    KeySubstitution,
    /// Player 1 replaces its share.
    DeceptionP1,
    /// Player 2 replaces its share.
    DeceptionP2,
}

impl Attack {
    pub const ALL: [Attack; 5] = [
        Attack::Impersonation,
        Attack::MessageSubstitution,
        Attack::KeySubstitution,
        Attack::DeceptionP1,
        Attack::DeceptionP2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Attack::Impersonation => "impersonation",
            Attack::MessageSubstitution => "message_substitution",
            Attack::KeySubstitution => "key_substitution",
            Attack::DeceptionP1 => "deception_p1",
            Attack::DeceptionP2 => "deception_p2",
        }
    }
}

impl fmt::Display for Attack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Attack {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.replace('-', "_");
        Attack::ALL
            .into_iter()
            .find(|a| a.name() == norm)
            .ok_or_else(|| OracleError::UnknownAttack(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Code(AuthCode),
    Scheme(ThresholdScheme),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSpec {
    pub target: Target,
    pub attack: Attack,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("unknown attack {0:?}")]
    UnknownAttack(String),
    #[error("attack {attack} does not apply to a {target}")]
    Unsupported {
        attack: Attack,
        target: &'static str,
    },
    #[error("enumeration needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("observation alphabet has a single value, so no substitute exists")]
    NoAlternative,
    #[error("strategy has {found} entries, expected {expected}")]
    StrategyLength { expected: usize, found: usize },
    #[error("strategy maps observation {observation} to {target}")]
    InvalidStrategy { observation: usize, target: usize },
    #[error("at least one trial is required")]
    NoTrials,
    #[error("probability denominators exceed 64 bits")]
    DenominatorTooLarge,
}

/// Optimal value and a strategy attaining it. `strategy[o]` is the
/// substitute sent after observing `o`; for impersonation the single entry
/// is the injected message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameValue {
    pub value: Rational,
    pub strategy: Vec<usize>,
    pub evaluations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimResult {
    pub trials: u64,
    pub wins: u64,
    pub estimate: Rational,
    /// `1 / (2 ⌊√trials⌋)`, an upper bound on the standard error of a
    /// Bernoulli mean.
    pub stderr_bound: Rational,
    pub seed: u64,
}

impl fmt::Display for SimResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "trials={} wins={} estimate={} stderr<={} seed={}",
            self.trials, self.wins, self.estimate, self.stderr_bound, self.seed
        )
    }
}

/// One outcome of the dealer: the observation available to the adversary,
/// the hidden context it needs to score a substitute, and its probability.
struct Outcome {
    observed: usize,
    hidden: usize,
    secret: usize,
    prob: Rational,
}

/// The game as raw tables: an outcome list and a judge telling whether a
/// substitute wins against an outcome.
struct Game<'a> {
    outcomes: Vec<Outcome>,
    /// Number of possible observations.
    observations: usize,
    /// Number of possible substitutes.
    candidates: usize,
    target: &'a Target,
    attack: Attack,
}

fn scan(row: &[Vec<usize>], message: usize) -> Option<usize> {
    row.iter().position(|cell| cell.contains(&message))
}

impl<'a> Game<'a> {
    fn new(spec: &'a GameSpec) -> Result<Self, OracleError> {
        let attack = spec.attack;
        match &spec.target {
            Target::Code(code) => {
                let rows = code.matrix().rows();
                let b = rows.len();
                let key_prob = Rational::recip_of(b);
                let mut outcomes = Vec::new();
                for (key, row) in rows.iter().enumerate() {
                    for (source, cell) in row.iter().enumerate() {
                        let prob = &key_prob * code.sources().weight(source)
                            / Rational::from_integer(cell.len());
                        for &m in cell {
                            let (observed, hidden) = match attack {
                                Attack::Impersonation => (0, key),
                                Attack::MessageSubstitution => (m, key),
                                Attack::KeySubstitution => (key, m),
                                _ => {
                                    return Err(OracleError::Unsupported {
                                        attack,
                                        target: "code",
                                    })
                                }
                            };
                            outcomes.push(Outcome {
                                observed,
                                hidden,
                                secret: source,
                                prob: prob.clone(),
                            });
                        }
                    }
                }
                let (observations, candidates) = match attack {
                    Attack::Impersonation => (1, code.matrix().v()),
                    Attack::MessageSubstitution => (code.matrix().v(), code.matrix().v()),
                    _ => (b, b),
                };
                Ok(Game {
                    outcomes,
                    observations,
                    candidates,
                    target: &spec.target,
                    attack,
                })
            }
            Target::Scheme(scheme) => {
                let alphabet = match attack {
                    Attack::DeceptionP1 => scheme.share1_alphabet(),
                    Attack::DeceptionP2 => scheme.share2_alphabet(),
                    _ => {
                        return Err(OracleError::Unsupported {
                            attack,
                            target: "threshold scheme",
                        })
                    }
                };
                let outcomes = scheme
                    .rules()
                    .iter()
                    .map(|r| {
                        let (observed, hidden) = if attack == Attack::DeceptionP1 {
                            (r.v1, r.v2)
                        } else {
                            (r.v2, r.v1)
                        };
                        Outcome {
                            observed,
                            hidden,
                            secret: r.secret,
                            prob: scheme.secrets().weight(r.secret) * &r.weight,
                        }
                    })
                    .collect();
                Ok(Game {
                    outcomes,
                    observations: alphabet,
                    candidates: alphabet,
                    target: &spec.target,
                    attack,
                })
            }
        }
    }

    fn substitutes(&self) -> bool {
        self.attack != Attack::Impersonation
    }

    /// Whether sending `sent` against `outcome` is accepted as a different
    /// source or secret (or, for impersonation, accepted at all).
    fn wins(&self, outcome: &Outcome, sent: usize) -> bool {
        match self.target {
            Target::Code(code) => {
                let rows = code.matrix().rows();
                match self.attack {
                    Attack::Impersonation => scan(&rows[outcome.hidden], sent).is_some(),
                    Attack::MessageSubstitution => {
                        matches!(scan(&rows[outcome.hidden], sent), Some(s) if s != outcome.secret)
                    }
                    _ => {
                        matches!(scan(&rows[sent], outcome.hidden), Some(s) if s != outcome.secret)
                    }
                }
            }
            Target::Scheme(scheme) => scheme.rules().iter().any(|r| {
                let pair = if self.attack == Attack::DeceptionP1 {
                    (r.v1, r.v2)
                } else {
                    (r.v2, r.v1)
                };
                pair == (sent, outcome.hidden) && r.secret != outcome.secret
            }),
        }
    }
}

/// Exact optimal success probability by full enumeration.
/// `budget` bounds the number of (outcome, substitute) evaluations.
pub fn exhaustive_value(spec: &GameSpec, budget: u64) -> Result<GameValue, OracleError> {
    let game = Game::new(spec)?;
    if game.substitutes() && game.candidates < 2 {
        return Err(OracleError::NoAlternative);
    }
    let needed = (game.outcomes.len() as u64).saturating_mul(game.candidates as u64);
    if needed > budget {
        return Err(OracleError::BudgetExceeded { needed, budget });
    }

    let mut by_observation: Vec<Vec<&Outcome>> =
        (0..game.observations).map(|_| Vec::new()).collect();
    for o in &game.outcomes {
        by_observation[o.observed].push(o);
    }
    let mut value = Rational::zero();
    let mut strategy = Vec::with_capacity(game.observations);
    for (observed, outcomes) in by_observation.iter().enumerate() {
        let mut best: Option<(usize, Rational)> = None;
        for sent in 0..game.candidates {
            if game.substitutes() && sent == observed {
                continue;
            }
            let mut total = Rational::zero();
            for o in outcomes {
                if game.wins(o, sent) {
                    total += &o.prob;
                }
            }
            if best.as_ref().is_none_or(|(_, w)| total > *w) {
                best = Some((sent, total));
            }
        }
        let (sent, total) = best.ok_or(OracleError::NoAlternative)?;
        value += total;
        strategy.push(sent);
    }
    Ok(GameValue {
        value,
        strategy,
        evaluations: needed,
    })
}

/// Draws indices with exact rational probabilities by scaling to a common
/// integer denominator.
struct IndexSampler {
    cumulative: Vec<u64>,
    total: u64,
}

impl IndexSampler {
    fn new<'a>(
        weights: impl IntoIterator<Item = &'a Rational> + Clone,
    ) -> Result<Self, OracleError> {
        let denom = common_denominator(weights.clone());
        let mut cumulative = Vec::new();
        let mut acc: u64 = 0;
        for w in weights {
            let scaled =
                (w.as_big() * num_rational::BigRational::from_integer(denom.clone())).to_integer();
            let step: u64 = scaled
                .try_into()
                .map_err(|_| OracleError::DenominatorTooLarge)?;
            acc = acc
                .checked_add(step)
                .ok_or(OracleError::DenominatorTooLarge)?;
            cumulative.push(acc);
        }
        Ok(IndexSampler {
            cumulative,
            total: acc,
        })
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> usize {
        let x = rng.gen_range(0..self.total);
        self.cumulative.partition_point(|&c| c <= x)
    }
}

enum Sampler<'a> {
    Code {
        code: &'a AuthCode,
        sources: IndexSampler,
    },
    Scheme {
        scheme: &'a ThresholdScheme,
        secrets: IndexSampler,
        /// Rule indices and a sampler over their weights, per secret.
        rules: Vec<(Vec<usize>, IndexSampler)>,
    },
}

impl Sampler<'_> {
    /// `(observed, hidden, secret)` for one play.
    fn draw(&self, attack: Attack, rng: &mut ChaCha8Rng) -> (usize, usize, usize) {
        match self {
            Sampler::Code { code, sources } => {
                let key = rng.gen_range(0..code.b());
                let s = sources.draw(rng);
                let cell = code.cell(key, s);
                let m = cell[rng.gen_range(0..cell.len())];
                match attack {
                    Attack::Impersonation => (0, key, s),
                    Attack::MessageSubstitution => (m, key, s),
                    _ => (key, m, s),
                }
            }
            Sampler::Scheme {
                scheme,
                secrets,
                rules,
            } => {
                let s = secrets.draw(rng);
                let (ids, sampler) = &rules[s];
                let rule = &scheme.rules()[ids[sampler.draw(rng)]];
                if attack == Attack::DeceptionP1 {
                    (rule.v1, rule.v2, s)
                } else {
                    (rule.v2, rule.v1, s)
                }
            }
        }
    }
}

fn observation_count(spec: &GameSpec) -> Result<usize, OracleError> {
    let unsupported = |target| OracleError::Unsupported {
        attack: spec.attack,
        target,
    };
    match (&spec.target, spec.attack) {
        (Target::Code(_), Attack::Impersonation) => Ok(1),
        (Target::Code(c), Attack::MessageSubstitution) => Ok(c.v()),
        (Target::Code(c), Attack::KeySubstitution) => Ok(c.b()),
        (Target::Code(_), _) => Err(unsupported("code")),
        (Target::Scheme(s), Attack::DeceptionP1) => Ok(s.share1_alphabet()),
        (Target::Scheme(s), Attack::DeceptionP2) => Ok(s.share2_alphabet()),
        (Target::Scheme(_), _) => Err(unsupported("threshold scheme")),
    }
}

/// Plays `strategy` for `trials` sampled outcomes.
pub fn monte_carlo(
    spec: &GameSpec,
    strategy: &[usize],
    trials: u64,
    seed: u64,
) -> Result<SimResult, OracleError> {
    if trials == 0 {
        return Err(OracleError::NoTrials);
    }
    let observations = observation_count(spec)?;
    if strategy.len() != observations {
        return Err(OracleError::StrategyLength {
            expected: observations,
            found: strategy.len(),
        });
    }
    let candidates = match (&spec.target, spec.attack) {
        (Target::Code(c), Attack::Impersonation) => c.v(),
        _ => observations,
    };
    for (observation, &target) in strategy.iter().enumerate() {
        let identity = spec.attack != Attack::Impersonation && target == observation;
        if identity || target >= candidates {
            return Err(OracleError::InvalidStrategy {
                observation,
                target,
            });
        }
    }
    let sampler = match &spec.target {
        Target::Code(code) => Sampler::Code {
            code,
            sources: IndexSampler::new(code.sources().weights())?,
        },
        Target::Scheme(scheme) => {
            let mut per_secret: Vec<Vec<usize>> = vec![Vec::new(); scheme.secret_count()];
            for (i, r) in scheme.rules().iter().enumerate() {
                per_secret[r.secret].push(i);
            }
            let rules = per_secret
                .into_iter()
                .map(|ids| {
                    let weights: Vec<&Rational> =
                        ids.iter().map(|&i| &scheme.rules()[i].weight).collect();
                    IndexSampler::new(weights.iter().copied()).map(|s| (ids, s))
                })
                .collect::<Result<_, _>>()?;
            Sampler::Scheme {
                scheme,
                secrets: IndexSampler::new(scheme.secrets().weights())?,
                rules,
            }
        }
    };
    let attack = spec.attack;
    let wins_against = |observed: usize, hidden: usize, secret: usize| -> bool {
        let sent = strategy[observed];
        let got = match &spec.target {
            Target::Code(code) => match attack {
                Attack::Impersonation => return matches!(code.decode(hidden, sent), Ok(Some(_))),
                Attack::MessageSubstitution => code.decode(hidden, sent).ok().flatten(),
                _ => code.decode(sent, hidden).ok().flatten(),
            },
            Target::Scheme(scheme) => {
                if attack == Attack::DeceptionP1 {
                    scheme.rec(sent, hidden)
                } else {
                    scheme.rec(hidden, sent)
                }
            }
        };
        matches!(got, Some(s) if s != secret)
    };

    let shards = trials.div_ceil(SHARD_SIZE);
    let wins: u64 = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(shard));
            let n = SHARD_SIZE.min(trials - shard * SHARD_SIZE);
            (0..n)
                .filter(|_| {
                    let (observed, hidden, secret) = sampler.draw(attack, &mut rng);
                    wins_against(observed, hidden, secret)
                })
                .count() as u64
        })
        .sum();
    Ok(SimResult {
        trials,
        wins,
        estimate: Rational::new(wins, trials).expect("trials is positive"),
        stderr_bound: Rational::new(1u64, 2 * trials.isqrt()).expect("trials is positive"),
        seed,
    })
}
