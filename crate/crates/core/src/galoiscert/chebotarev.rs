//! Frobenius cycle-type sampling against a target group.
//!
//! Refutation is unconditional (Dedekind): an observed type that no element of
//! the target induces proves the Galois group is not contained in it. Agreement
//! is only statistical evidence.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::intpoly::{discriminant, reduce_and_factor_degrees, CycleType, IntPoly, Reduction};
use crate::primes::Primes;
use crate::signedperm::{hyperoctahedral_admits, wdm_admits, Census, GroupDescriptor, DEFAULT_ENUMERATION_BUDGET};

/// Fewest primes a verdict is ever based on.
pub const MIN_SAMPLES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingOptions {
    pub samples: usize,
    pub seed: u64,
    /// Keep a seeded random subset of this many of the sampled primes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subsample: Option<usize>,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        SamplingOptions {
            samples: 2000,
            seed: 0,
            subsample: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassStat {
    pub cycle_type: CycleType,
    pub observed: usize,
    pub observed_frequency: f64,
    /// `|class| / |G|`
    pub expected_frequency: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ChebotarevOutcome {
    /// Every observed type occurs in the target. Not a proof.
    ConsistentWith {
        target: GroupDescriptor,
        primes_used: usize,
        largest_prime: u64,
        /// Per-class statistics; empty when the target is too large to enumerate.
        classes: Vec<ClassStat>,
        #[serde(skip_serializing_if = "Option::is_none")]
        chi_square: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        degrees_of_freedom: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        p_value: Option<f64>,
        note: String,
    },
    /// The Frobenius at `witness_prime` has a type absent from the target.
    Refuted {
        target: GroupDescriptor,
        witness_prime: u64,
        witness_type: CycleType,
        /// One-based position of the witness among the sampled primes.
        sample_index: usize,
    },
}

impl ChebotarevOutcome {
    pub fn is_refuted(&self) -> bool {
        matches!(self, ChebotarevOutcome::Refuted { .. })
    }
}

/// Which cycle types on `2m` points the target admits.
enum Support {
    Census(Census),
    WDm(usize),
    Hyperoctahedral(usize),
}

impl Support {
    fn of(target: &GroupDescriptor) -> Result<Support> {
        match target.census(DEFAULT_ENUMERATION_BUDGET) {
            Ok(c) => Ok(Support::Census(c)),
            Err(Error::BudgetExceeded { order, budget }) => match target {
                GroupDescriptor::WDm { m } => Ok(Support::WDm(*m)),
                GroupDescriptor::TwoMG { m, generators } if generates_sm(*m, generators) => {
                    Ok(Support::Hyperoctahedral(*m))
                }
                _ => Err(Error::BudgetExceeded { order, budget }),
            },
            Err(e) => Err(e),
        }
    }

    fn admits(&self, t: &CycleType) -> bool {
        match self {
            Support::Census(c) => c.counts.contains_key(t),
            Support::WDm(m) => wdm_admits(t, *m),
            Support::Hyperoctahedral(m) => hyperoctahedral_admits(t, *m),
        }
    }
}

/// Recognizes `G = S_m` from a generating set containing the long cycle
/// `(1 2 … m)` and a transposition of cyclically adjacent points.
fn generates_sm(m: usize, generators: &[Vec<usize>]) -> bool {
    let long: Vec<usize> = (1..=m).map(|i| i % m + 1).collect();
    let adjacent = |g: &Vec<usize>| {
        let moved: Vec<usize> = (0..m).filter(|&i| g[i] != i + 1).collect();
        moved.len() == 2 && {
            let (a, b) = (moved[0], moved[1]);
            g[a] == b + 1 && g[b] == a + 1 && (b - a == 1 || (a == 0 && b == m - 1))
        }
    };
    generators.contains(&long) && generators.iter().any(adjacent)
}

/// The first `count` primes not dividing `disc(h)·lc(h)`, in increasing order.
pub fn sample_primes(h: &IntPoly, count: usize) -> Result<Vec<u64>> {
    let disc = discriminant(h)?;
    if disc.is_zero() {
        return Err(Error::InvalidParameter(format!("{h} is not squarefree")));
    }
    let bad = disc * h.leading_coeff().expect("nonzero");
    Ok(Primes::new()
        .filter(|&q| !(&bad % BigInt::from(q)).is_zero())
        .take(count)
        .collect())
}

/// Factor-degree types of `h` modulo each prime, computed in parallel and
/// returned in input order.
pub fn frobenius_types(h: &IntPoly, primes: &[u64]) -> Result<Vec<(u64, CycleType)>> {
    primes
        .par_iter()
        .map(|&q| match reduce_and_factor_degrees(h, q)? {
            Reduction::Unramified(t) => Ok((q, t)),
            Reduction::Ramified => Err(Error::InvalidParameter(format!("{q} is ramified in {h}"))),
        })
        .collect()
}

/// Judges an observed stream of `(prime, type)` pairs against `target`.
pub fn verdict_from_types(observed: &[(u64, CycleType)], target: &GroupDescriptor) -> Result<ChebotarevOutcome> {
    if observed.len() < MIN_SAMPLES {
        return Err(Error::TooFewPrimes {
            found: observed.len(),
            needed: MIN_SAMPLES,
        });
    }
    let m = target.m();
    if let Some((_, t)) = observed.iter().find(|(_, t)| t.total() != 2 * m) {
        return Err(Error::DegreeMismatch {
            left: t.total(),
            right: 2 * m,
        });
    }
    let support = Support::of(target)?;
    if let Some((i, (q, t))) = observed.iter().enumerate().find(|(_, (_, t))| !support.admits(t)) {
        return Ok(ChebotarevOutcome::Refuted {
            target: target.clone(),
            witness_prime: *q,
            witness_type: t.clone(),
            sample_index: i + 1,
        });
    }
    let n = observed.len();
    let mut counts: BTreeMap<&CycleType, usize> = BTreeMap::new();
    for (_, t) in observed {
        *counts.entry(t).or_default() += 1;
    }
    let (classes, chi_square, dof, p_value) = match &support {
        Support::Census(census) => {
            let classes: Vec<ClassStat> = census
                .counts
                .keys()
                .map(|t| ClassStat {
                    cycle_type: t.clone(),
                    observed: counts.get(t).copied().unwrap_or(0),
                    observed_frequency: counts.get(t).copied().unwrap_or(0) as f64 / n as f64,
                    expected_frequency: census.frequency(t),
                })
                .collect();
            let chi: f64 = classes
                .iter()
                .map(|c| {
                    let e = c.expected_frequency * n as f64;
                    (c.observed as f64 - e).powi(2) / e
                })
                .sum();
            let dof = classes.len() - 1;
            let pv = (dof > 0)
                .then(|| ChiSquared::new(dof as f64).ok())
                .flatten()
                .map(|d| 1.0 - d.cdf(chi));
            (classes, Some(chi), Some(dof), pv)
        }
        _ => (Vec::new(), None, None, None),
    };
    Ok(ChebotarevOutcome::ConsistentWith {
        target: target.clone(),
        primes_used: n,
        largest_prime: observed.iter().map(|(q, _)| *q).max().unwrap_or(0),
        classes,
        chi_square,
        degrees_of_freedom: dof,
        p_value,
        note: "statistical evidence only, not a proof".into(),
    })
}

/// Samples Frobenius types of `h` at the first `options.samples` unramified primes
/// and compares them with `target`.
pub fn chebotarev_verdict(h: &IntPoly, target: &GroupDescriptor, options: &SamplingOptions) -> Result<ChebotarevOutcome> {
    if options.samples < MIN_SAMPLES {
        return Err(Error::TooFewPrimes {
            found: options.samples,
            needed: MIN_SAMPLES,
        });
    }
    let mut primes = sample_primes(h, options.samples)?;
    if let Some(k) = options.subsample {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        primes.shuffle(&mut rng);
        primes.truncate(k);
        primes.sort_unstable();
    }
    let observed = frobenius_types(h, &primes)?;
    verdict_from_types(&observed, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signedperm::SignedPerm;
    use rand::Rng;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn sextic_consistent_with_wd3() {
        let h = p("x^6 - x^2 - 1");
        let target = GroupDescriptor::WDm { m: 3 };
        let out = chebotarev_verdict(&h, &target, &SamplingOptions::default()).unwrap();
        let ChebotarevOutcome::ConsistentWith { primes_used, classes, chi_square, p_value, .. } = out else {
            panic!("{out:?}");
        };
        assert_eq!(primes_used, 2000);
        assert_eq!(classes.iter().map(|c| c.observed).sum::<usize>(), 2000);
        assert!(chi_square.unwrap().is_finite());
        assert!(p_value.unwrap() > 1e-6);
    }

    #[test]
    fn generic_sextic_refuted() {
        let h = p("x^6 - x - 1");
        let out = chebotarev_verdict(
            &h,
            &GroupDescriptor::WDm { m: 3 },
            &SamplingOptions {
                samples: 50,
                ..Default::default()
            },
        )
        .unwrap();
        let ChebotarevOutcome::Refuted { witness_type, sample_index, .. } = out else {
            panic!("{out:?}");
        };
        assert!(sample_index <= 50);
        assert!(!wdm_admits(&witness_type, 3));
    }

    #[test]
    fn too_few_samples() {
        let h = p("x^6 - x^2 - 1");
        for samples in [0, 9] {
            let opts = SamplingOptions { samples, ..Default::default() };
            assert!(matches!(
                chebotarev_verdict(&h, &GroupDescriptor::WDm { m: 3 }, &opts),
                Err(Error::TooFewPrimes { .. })
            ));
        }
    }

    #[test]
    fn subsampling_is_seeded() {
        let h = p("x^6 - x^2 - 1");
        let opts = SamplingOptions {
            samples: 200,
            seed: 7,
            subsample: Some(50),
        };
        let a = chebotarev_verdict(&h, &GroupDescriptor::WDm { m: 3 }, &opts).unwrap();
        let b = chebotarev_verdict(&h, &GroupDescriptor::WDm { m: 3 }, &opts).unwrap();
        assert_eq!(a, b);
        let ChebotarevOutcome::ConsistentWith { primes_used, .. } = a else {
            panic!()
        };
        assert_eq!(primes_used, 50);
    }

    #[test]
    fn injected_impossible_types_are_refuted() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for m in [3usize, 4, 5] {
            let h = IntPoly::trinomial(m, 1).compose_x2();
            let base = frobenius_types(&h, &sample_primes(&h, 40).unwrap()).unwrap();
            let target = GroupDescriptor::WDm { m };
            for _ in 0..50 {
                // An element with an odd number of sign changes lies outside W(D_m).
                let mut s: Vec<usize> = (0..m).collect();
                s.shuffle(&mut rng);
                let mut eps: Vec<i8> = (0..m).map(|_| if rng.gen_bool(0.5) { -1 } else { 1 }).collect();
                if eps.iter().filter(|&&e| e == -1).count() % 2 == 0 {
                    eps[0] = -eps[0];
                }
                let g = SignedPerm::new(s, eps).unwrap();
                assert!(!g.in_wdm());
                let mut stream = base.clone();
                let at = rng.gen_range(0..=stream.len());
                stream.insert(at, (0, g.induced_cycle_type()));
                let out = verdict_from_types(&stream, &target).unwrap();
                assert!(out.is_refuted(), "m={m} {g}");
            }
        }
    }

    #[test]
    fn analytic_support_beyond_budget() {
        let h = IntPoly::trinomial(9, 1).compose_x2();
        let out = chebotarev_verdict(
            &h,
            &GroupDescriptor::WDm { m: 9 },
            &SamplingOptions { samples: 100, ..Default::default() },
        )
        .unwrap();
        assert!(!out.is_refuted());
        let full = GroupDescriptor::TwoMG {
            m: 9,
            generators: vec![(1..=9).map(|i| i % 9 + 1).collect(), vec![2, 1, 3, 4, 5, 6, 7, 8, 9]],
        };
        let h_odd = IntPoly::trinomial(9, 3).compose_x2();
        let out = chebotarev_verdict(&h_odd, &full, &SamplingOptions { samples: 100, ..Default::default() }).unwrap();
        assert!(!out.is_refuted());
        let out = chebotarev_verdict(&h_odd, &GroupDescriptor::WDm { m: 9 }, &SamplingOptions { samples: 200, ..Default::default() }).unwrap();
        assert!(out.is_refuted());
    }
}
