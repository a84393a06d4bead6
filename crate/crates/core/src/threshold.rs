//! Robust (2,2)-threshold schemes as weighted distribution rules.
//!
//! A rule `(v1, v2, s, w)` says the dealer hands out shares `v1` and `v2`
//! with probability `w = Prob[(v1, v2) | s]` when the secret is `s`. The
//! joint probability of a rule is `Prob[s] · w`.
//!
//! In the deception game one player replaces their own share, knowing only
//! that share. Only deterministic replacements are considered: the success
//! probability is linear in a randomised strategy, so a deterministic best
//! reply per observed share attains the optimum.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::authcode::best_alternative;
use crate::distribution::{Distribution, DistributionError};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThresholdError {
    #[error("rule {rule}: share {share} of player {player} outside 0..{alphabet}")]
    ShareOutOfRange {
        rule: usize,
        player: u8,
        share: usize,
        alphabet: usize,
    },
    #[error("rule {rule}: secret {secret} outside 0..{secrets}")]
    SecretOutOfRange {
        rule: usize,
        secret: usize,
        secrets: usize,
    },
    #[error("rule {rule}: weight {weight} is not positive")]
    NonPositiveWeight { rule: usize, weight: Rational },
    #[error("shares ({v1}, {v2}) appear in more than one rule")]
    DuplicatePair { v1: usize, v2: usize },
    #[error("rules for secret {secret} carry total weight {total}, expected 1/1")]
    SecretWeight { secret: usize, total: Rational },
    #[error("secret distribution has {found} outcomes, expected {expected}")]
    SecretCount { expected: usize, found: usize },
    #[error(transparent)]
    Distribution(#[from] DistributionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub v1: usize,
    pub v2: usize,
    pub secret: usize,
    pub weight: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareSecrecyViolation {
    /// 1 or 2.
    pub player: u8,
    pub share: usize,
    pub secret: usize,
    /// `Prob[s | share]`
    pub posterior: Rational,
    /// `Prob[s]`
    pub prior: Rational,
}

impl fmt::Display for ShareSecrecyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Prob[s={} | v{}={}] = {} but Prob[s={}] = {}",
            self.secret, self.player, self.share, self.posterior, self.secret, self.prior
        )
    }
}

/// Deception values for both players.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Robustness {
    /// Headline value: the larger of the two players' averaged values.
    pub epsilon: Rational,
    pub player1: Rational,
    pub player2: Rational,
    pub player1_conditional_max: Rational,
    pub player2_conditional_max: Rational,
    /// Best replacement share for each observed share of player 1.
    pub player1_reply: Vec<Option<usize>>,
    pub player2_reply: Vec<Option<usize>>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct ThresholdScheme {
    secrets: Distribution,
    share1: usize,
    share2: usize,
    /// Sorted by `(v1, v2)`.
    rules: Vec<Rule>,
    index: HashMap<(usize, usize), usize>,
}

impl fmt::Debug for ThresholdScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ThresholdScheme")
            .field("secrets", &self.secrets)
            .field("share1", &self.share1)
            .field("share2", &self.share2)
            .field("rules", &self.rules)
            .finish()
    }
}

impl ThresholdScheme {
    pub fn new(
        secrets: Distribution,
        share1: usize,
        share2: usize,
        rules: Vec<Rule>,
    ) -> Result<Self, ThresholdError> {
        let s = secrets.len();
        let mut totals = vec![Rational::zero(); s];
        for (i, rule) in rules.iter().enumerate() {
            for (player, share, alphabet) in [(1, rule.v1, share1), (2, rule.v2, share2)] {
                if share >= alphabet {
                    return Err(ThresholdError::ShareOutOfRange {
                        rule: i,
                        player,
                        share,
                        alphabet,
                    });
                }
            }
            if rule.secret >= s {
                return Err(ThresholdError::SecretOutOfRange {
                    rule: i,
                    secret: rule.secret,
                    secrets: s,
                });
            }
            if rule.weight <= Rational::zero() {
                return Err(ThresholdError::NonPositiveWeight {
                    rule: i,
                    weight: rule.weight.clone(),
                });
            }
            totals[rule.secret] += &rule.weight;
        }
        if let Some((secret, total)) = totals
            .into_iter()
            .enumerate()
            .find(|(_, t)| *t != Rational::one())
        {
            return Err(ThresholdError::SecretWeight { secret, total });
        }
        let mut rules = rules;
        rules.sort_by_key(|r| (r.v1, r.v2));
        if let Some(w) = rules
            .windows(2)
            .find(|w| (w[0].v1, w[0].v2) == (w[1].v1, w[1].v2))
        {
            return Err(ThresholdError::DuplicatePair {
                v1: w[0].v1,
                v2: w[0].v2,
            });
        }
        let index = rules
            .iter()
            .enumerate()
            .map(|(i, r)| ((r.v1, r.v2), i))
            .collect();
        Ok(ThresholdScheme {
            secrets,
            share1,
            share2,
            rules,
            index,
        })
    }

    pub fn secrets(&self) -> &Distribution {
        &self.secrets
    }

    pub fn secret_count(&self) -> usize {
        self.secrets.len()
    }

    pub fn share1_alphabet(&self) -> usize {
        self.share1
    }

    pub fn share2_alphabet(&self) -> usize {
        self.share2
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn with_secrets(&self, secrets: Distribution) -> Result<Self, ThresholdError> {
        if secrets.len() != self.secrets.len() {
            return Err(ThresholdError::SecretCount {
                expected: self.secrets.len(),
                found: secrets.len(),
            });
        }
        Self::new(secrets, self.share1, self.share2, self.rules.clone())
    }

    /// Reconstruction: the secret of the rule issuing `(v1, v2)`, or `None`
    /// for ⊥.
    pub fn rec(&self, v1: usize, v2: usize) -> Option<usize> {
        self.index.get(&(v1, v2)).map(|&i| self.rules[i].secret)
    }

    fn joint(&self, rule: &Rule) -> Rational {
        self.secrets.weight(rule.secret) * &rule.weight
    }

    /// Rule indices grouped by the share of `player`.
    fn by_share(&self, player: u8) -> Vec<Vec<usize>> {
        let alphabet = if player == 1 {
            self.share1
        } else {
            self.share2
        };
        let mut groups = vec![Vec::new(); alphabet];
        for (i, r) in self.rules.iter().enumerate() {
            groups[if player == 1 { r.v1 } else { r.v2 }].push(i);
        }
        groups
    }

    /// One-share secrecy: `Prob[s | v1] = Prob[s | v2] = Prob[s]` for every
    /// share value that occurs.
    pub fn share_secrecy(&self) -> Result<(), ShareSecrecyViolation> {
        for player in [1u8, 2] {
            for (share, group) in self.by_share(player).into_iter().enumerate() {
                let mut per_secret = vec![Rational::zero(); self.secret_count()];
                let mut total = Rational::zero();
                for i in group {
                    let j = self.joint(&self.rules[i]);
                    per_secret[self.rules[i].secret] += &j;
                    total += j;
                }
                if total.is_zero() {
                    continue;
                }
                for (secret, mass) in per_secret.into_iter().enumerate() {
                    let posterior = mass / &total;
                    let prior = self.secrets.weight(secret);
                    if posterior != *prior {
                        return Err(ShareSecrecyViolation {
                            player,
                            share,
                            secret,
                            posterior,
                            prior: prior.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Exact deception values. Player `p` observes its share, picks a
    /// different share, and wins when the pair reconstructs a different
    /// secret.
    pub fn robustness(&self) -> Robustness {
        let (player1, player1_conditional_max, player1_reply) = self.deception(1);
        let (player2, player2_conditional_max, player2_reply) = self.deception(2);
        Robustness {
            epsilon: player1.clone().max(player2.clone()),
            player1,
            player2,
            player1_conditional_max,
            player2_conditional_max,
            player1_reply,
            player2_reply,
        }
    }

    fn deception(&self, player: u8) -> (Rational, Rational, Vec<Option<usize>>) {
        let own = self.by_share(player);
        let other = self.by_share(if player == 1 { 2 } else { 1 });
        let alphabet = own.len();
        let mut value = Rational::zero();
        let mut conditional_max = Rational::zero();
        let mut replies = Vec::with_capacity(alphabet);
        for (share, group) in own.iter().enumerate() {
            let mut wins: BTreeMap<usize, Rational> = BTreeMap::new();
            let mut prob_share = Rational::zero();
            for &i in group {
                let rule = &self.rules[i];
                let j = self.joint(rule);
                prob_share += &j;
                let partner = if player == 1 { rule.v2 } else { rule.v1 };
                for &k in &other[partner] {
                    let alt = &self.rules[k];
                    let replaced = if player == 1 { alt.v1 } else { alt.v2 };
                    if replaced != share && alt.secret != rule.secret {
                        *wins.entry(replaced).or_default() += &j;
                    }
                }
            }
            let (reply, best) = best_alternative(share, alphabet, &wins);
            if let Some(cond) = best.checked_div(&prob_share) {
                conditional_max = conditional_max.max(cond);
            }
            value += best;
            replies.push(reply);
        }
        (value, conditional_max, replies)
    }
}

impl fmt::Display for Robustness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "epsilon = {}", self.epsilon)?;
        writeln!(f, "player1 = {}", self.player1)?;
        writeln!(f, "player2 = {}", self.player2)?;
        writeln!(
            f,
            "player1_conditional_max = {}",
            self.player1_conditional_max
        )?;
        writeln!(
            f,
            "player2_conditional_max = {}",
            self.player2_conditional_max
        )
    }
}
