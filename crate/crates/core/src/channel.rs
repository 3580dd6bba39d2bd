//! Memoryless broadcast erasure channel with public feedback.
//!
//! Each slot draws an erasure pattern `z` in `{0,1}^N` (bit `i` set means
//! receiver `i` got the symbol). Patterns are stored as `u64` masks and
//! rendered as strings whose first character is receiver 0, so `"10"` means
//! receiver 0 received and receiver 1 erased.
//!
//! Sampling uses ChaCha8 with the stream id set to the trial index, so trial
//! `t` under seed `s` always sees the same patterns regardless of how trials
//! are scheduled across threads.

use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::Gf;

/// Largest receiver count for an explicit pattern table.
pub const MAX_EXPLICIT_RECEIVERS: usize = 16;
/// Largest receiver count overall (patterns are `u64` masks).
pub const MAX_RECEIVERS: usize = 64;

const SUM_TOLERANCE: f64 = 1e-12;

/// One erasure vector `z`.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct ErasurePattern {
    bits: u64,
    n: usize,
}

impl ErasurePattern {
    pub fn new(bits: u64, n: usize) -> Result<Self> {
        if n > MAX_RECEIVERS {
            return Err(Error::Size {
                what: "receivers",
                got: n,
                limit: MAX_RECEIVERS,
            });
        }
        if n < 64 && bits >> n != 0 {
            return Err(Error::Domain(format!(
                "pattern {bits:#b} has bits beyond {n} receivers"
            )));
        }
        Ok(ErasurePattern { bits, n })
    }

    pub fn all_received(n: usize) -> Self {
        let bits = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
        ErasurePattern { bits, n }
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.n
    }

    pub fn is_empty(self) -> bool {
        self.n == 0
    }

    pub fn received(self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }
}

impl fmt::Display for ErasurePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            f.write_str(if self.received(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for ErasurePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ErasurePattern({self})")
    }
}

impl FromStr for ErasurePattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '1' if i < 64 => bits |= 1 << i,
                '0' => {}
                _ => {
                    return Err(Error::schema(format!(
                        "invalid erasure pattern {s:?}: expected a string of 0/1"
                    )))
                }
            }
        }
        ErasurePattern::new(bits, s.chars().count())
    }
}

/// Joint law of the erasure vector.
#[derive(Clone, Debug, PartialEq)]
pub enum ErasureModel {
    /// Receivers erase independently with the given probabilities.
    Independent(Vec<f64>),
    /// `probs[mask]` is the probability of pattern `mask`.
    Explicit(Vec<f64>),
}

/// Channel description: receiver count plus the erasure law.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelConfig {
    n: usize,
    model: ErasureModel,
}

fn check_probability(p: f64, what: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("{what} = {p} is not a probability")));
    }
    Ok(())
}

impl ChannelConfig {
    pub fn independent(eps: Vec<f64>) -> Result<Self> {
        if eps.len() > MAX_RECEIVERS {
            return Err(Error::Size {
                what: "receivers",
                got: eps.len(),
                limit: MAX_RECEIVERS,
            });
        }
        for (i, &e) in eps.iter().enumerate() {
            check_probability(e, &format!("erasure probability of receiver {i}"))?;
        }
        Ok(ChannelConfig {
            n: eps.len(),
            model: ErasureModel::Independent(eps),
        })
    }

    /// Erasure-free channel.
    pub fn perfect(n: usize) -> Self {
        ChannelConfig::independent(vec![0.0; n]).expect("zero is a probability")
    }

    /// Explicit distribution; `probs` has length `2^n`, indexed by pattern mask.
    pub fn explicit(n: usize, probs: Vec<f64>) -> Result<Self> {
        if n > MAX_EXPLICIT_RECEIVERS {
            return Err(Error::Size {
                what: "receivers in an explicit pattern table",
                got: n,
                limit: MAX_EXPLICIT_RECEIVERS,
            });
        }
        if probs.len() != 1 << n {
            return Err(Error::Dimension {
                expected: 1 << n,
                found: probs.len(),
            });
        }
        for (m, &p) in probs.iter().enumerate() {
            check_probability(p, &format!("probability of pattern {m:#b}"))?;
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::Domain(format!(
                "pattern probabilities sum to {total}, expected 1"
            )));
        }
        Ok(ChannelConfig {
            n,
            model: ErasureModel::Explicit(probs),
        })
    }

    /// Explicit distribution from `(pattern, probability)` pairs; unlisted
    /// patterns get probability zero.
    pub fn from_patterns<'a>(
        n: usize,
        entries: impl IntoIterator<Item = (&'a str, f64)>,
    ) -> Result<Self> {
        if n > MAX_EXPLICIT_RECEIVERS {
            return Err(Error::Size {
                what: "receivers in an explicit pattern table",
                got: n,
                limit: MAX_EXPLICIT_RECEIVERS,
            });
        }
        let mut probs = vec![0.0; 1 << n];
        let mut seen = vec![false; 1 << n];
        for (s, p) in entries {
            let pat: ErasurePattern = s.parse()?;
            if pat.len() != n {
                return Err(Error::schema(format!(
                    "pattern {s:?} has length {}, expected {n}",
                    pat.len()
                )));
            }
            let m = pat.bits() as usize;
            if seen[m] {
                return Err(Error::schema(format!("pattern {s:?} listed twice")));
            }
            seen[m] = true;
            probs[m] = p;
        }
        ChannelConfig::explicit(n, probs)
    }

    pub fn n_receivers(&self) -> usize {
        self.n
    }

    pub fn model(&self) -> &ErasureModel {
        &self.model
    }

    /// Rejects channels where some receiver never gets anything.
    pub fn check_nondegenerate(&self) -> Result<()> {
        for i in 0..self.n {
            if self.eps_mask(1 << i) >= 1.0 {
                return Err(Error::Domain(format!(
                    "receiver {i} erases every symbol (erasure probability 1)"
                )));
            }
        }
        Ok(())
    }

    /// `eps_B` for the receivers in `subset`.
    pub fn eps_of(&self, subset: &[usize]) -> Result<f64> {
        if subset.is_empty() {
            return Err(Error::Domain("erasure probability of an empty receiver set".into()));
        }
        let mut mask = 0u64;
        for &i in subset {
            if i >= self.n {
                return Err(Error::Domain(format!(
                    "receiver {i} out of range for {} receivers",
                    self.n
                )));
            }
            mask |= 1 << i;
        }
        Ok(self.eps_mask(mask))
    }

    /// `eps_B` for the receiver set given as a bitmask. The empty set yields 1.
    pub fn eps_mask(&self, mask: u64) -> f64 {
        match &self.model {
            ErasureModel::Independent(eps) => eps
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .product(),
            ErasureModel::Explicit(probs) => probs
                .iter()
                .enumerate()
                .filter(|(z, _)| *z as u64 & mask == 0)
                .map(|(_, &p)| p)
                .sum(),
        }
    }

    /// `eps_B` for every mask `B` of `0..n` (entry 0 is 1).
    pub fn eps_table(&self) -> Result<Vec<f64>> {
        const LIMIT: usize = 24;
        if self.n > LIMIT {
            return Err(Error::Size {
                what: "receivers for a full subset table",
                got: self.n,
                limit: LIMIT,
            });
        }
        let size = 1usize << self.n;
        match &self.model {
            ErasureModel::Independent(eps) => {
                let mut t = vec![1.0; size];
                for m in 1..size {
                    let low = m.trailing_zeros() as usize;
                    t[m] = t[m & (m - 1)] * eps[low];
                }
                Ok(t)
            }
            ErasureModel::Explicit(probs) => {
                // Subset sums: s[c] = sum of probs over patterns inside c.
                let mut s = probs.clone();
                for b in 0..self.n {
                    for m in 0..size {
                        if m >> b & 1 == 1 {
                            s[m] += s[m ^ (1 << b)];
                        }
                    }
                }
                Ok((0..size).map(|m| s[(size - 1) ^ m]).collect())
            }
        }
    }

    /// Pattern sampler for one Monte Carlo trial.
    pub fn sampler(&self, seed: u64, trial: u64) -> ChannelSampler<'_> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let weighted = match &self.model {
            ErasureModel::Explicit(p) => {
                Some(WeightedIndex::new(p).expect("validated probabilities sum to one"))
            }
            ErasureModel::Independent(_) => None,
        };
        ChannelSampler {
            cfg: self,
            rng,
            weighted,
        }
    }
}

/// Per-receiver result of one channel use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transmission {
    pub outputs: Vec<Option<Gf>>,
    pub pattern: ErasurePattern,
}

/// Stateful pattern source for one trial. Not shared between trials.
pub struct ChannelSampler<'a> {
    cfg: &'a ChannelConfig,
    rng: ChaCha8Rng,
    weighted: Option<WeightedIndex<f64>>,
}

impl ChannelSampler<'_> {
    pub fn sample(&mut self) -> ErasurePattern {
        let n = self.cfg.n;
        let bits = match (&self.cfg.model, &self.weighted) {
            (_, Some(w)) => w.sample(&mut self.rng) as u64,
            (ErasureModel::Independent(eps), None) => {
                let mut bits = 0u64;
                for (i, &e) in eps.iter().enumerate() {
                    if self.rng.gen::<f64>() >= e {
                        bits |= 1 << i;
                    }
                }
                bits
            }
            (ErasureModel::Explicit(_), None) => unreachable!("explicit model has a sampler"),
        };
        ErasurePattern { bits, n }
    }

    /// Sends `x` through the channel and returns what each receiver observes.
    pub fn transmit(&mut self, x: Gf) -> Transmission {
        let pattern = self.sample();
        let outputs = (0..self.cfg.n)
            .map(|i| pattern.received(i).then_some(x))
            .collect();
        Transmission { outputs, pattern }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule() {
        let c = ChannelConfig::independent(vec![0.2, 0.3]).unwrap();
        assert!((c.eps_of(&[0, 1]).unwrap() - 0.06).abs() < 1e-15);
        assert_eq!(c.eps_of(&[1]).unwrap(), 0.3);
        assert!(matches!(c.eps_of(&[]), Err(Error::Domain(_))));
        assert!(matches!(c.eps_of(&[2]), Err(Error::Domain(_))));
    }

    #[test]
    fn explicit_uniform() {
        let c = ChannelConfig::explicit(2, vec![0.25; 4]).unwrap();
        assert_eq!(c.eps_of(&[0, 1]).unwrap(), 0.25);
        assert_eq!(c.eps_of(&[0]).unwrap(), 0.5);
    }

    #[test]
    fn explicit_validation() {
        assert!(ChannelConfig::explicit(2, vec![0.5, 0.5, 0.5, 0.0]).is_err());
        assert!(ChannelConfig::explicit(2, vec![1.0; 3]).is_err());
        assert!(ChannelConfig::explicit(1, vec![-0.5, 1.5]).is_err());
        assert!(ChannelConfig::from_patterns(2, [("10", 0.5), ("10", 0.5)]).is_err());
        assert!(ChannelConfig::from_patterns(2, [("1", 1.0)]).is_err());
        assert!(ChannelConfig::from_patterns(2, [("1x", 1.0)]).is_err());
    }

    #[test]
    fn pattern_strings() {
        let p: ErasurePattern = "10".parse().unwrap();
        assert!(p.received(0));
        assert!(!p.received(1));
        assert_eq!(p.bits(), 0b01);
        assert_eq!(p.to_string(), "10");
        assert_eq!(ErasurePattern::all_received(3).to_string(), "111");
    }

    #[test]
    fn table_matches_direct() {
        let c = ChannelConfig::from_patterns(3, [("000", 0.1), ("100", 0.2), ("011", 0.3), ("111", 0.4)])
            .unwrap();
        let t = c.eps_table().unwrap();
        for m in 0..8u64 {
            assert!((t[m as usize] - if m == 0 { 1.0 } else { c.eps_mask(m) }).abs() < 1e-15);
        }
        let c = ChannelConfig::independent(vec![0.1, 0.5, 0.9]).unwrap();
        let t = c.eps_table().unwrap();
        for m in 1..8u64 {
            assert!((t[m as usize] - c.eps_mask(m)).abs() < 1e-15);
        }
    }

    #[test]
    fn degenerate_receivers() {
        assert!(ChannelConfig::independent(vec![0.0, 1.0]).unwrap().check_nondegenerate().is_err());
        assert!(ChannelConfig::from_patterns(2, [("01", 1.0)]).unwrap().check_nondegenerate().is_err());
        assert!(ChannelConfig::independent(vec![0.9, 0.0]).unwrap().check_nondegenerate().is_ok());
    }

    #[test]
    fn deterministic_extremes() {
        let c = ChannelConfig::perfect(3);
        let mut s = c.sampler(1, 0);
        for _ in 0..100 {
            let t = s.transmit(Gf(9));
            assert_eq!(t.outputs, vec![Some(Gf(9)); 3]);
        }
        let c = ChannelConfig::from_patterns(2, [("01", 1.0)]).unwrap();
        let mut s = c.sampler(1, 0);
        for _ in 0..100 {
            assert_eq!(s.sample().to_string(), "01");
        }
        let c = ChannelConfig::independent(vec![1.0]).unwrap();
        assert_eq!(c.sampler(3, 3).transmit(Gf(1)).outputs, vec![None]);
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let c = ChannelConfig::independent(vec![0.5; 8]).unwrap();
        let draw = |seed, trial| {
            let mut s = c.sampler(seed, trial);
            (0..32).map(|_| s.sample().bits()).collect::<Vec<_>>()
        };
        assert_eq!(draw(7, 3), draw(7, 3));
        assert_ne!(draw(7, 3), draw(7, 4));
        assert_ne!(draw(7, 3), draw(8, 3));
    }
}
