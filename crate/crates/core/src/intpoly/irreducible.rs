//! Irreducibility verdicts over `Q` that never guess, the composite rule for
//! `u(x²)`, and the divisibility condition on `1 + 2^(r-2)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{discriminant, reduce_and_factor_degrees, IntPoly, Reduction};
use crate::error::{Error, Result};
use crate::primes::{is_prime, pow_mod, Primes};

pub const DEFAULT_PRIME_BUDGET: u64 = 500;

/// Largest absolute constant term / leading coefficient for which rational roots
/// are enumerated by divisor trial.
const DIVISOR_TRIAL_LIMIT: u64 = 1_000_000_000_000;

/// Coefficient bound for the small-height quadratic factor search.
const QUADRATIC_HEIGHT: i64 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IrreducibilityVerdict {
    /// `f mod witness` is irreducible of full degree.
    Irreducible { witness: u64 },
    /// A proper factor over `Z`.
    Reducible { factor: IntPoly },
    /// Neither found within the budget. `allowed_degrees` are the proper factor
    /// degrees not excluded by the reductions seen.
    Inconclusive {
        primes_tried: usize,
        allowed_degrees: Vec<usize>,
    },
}

impl IrreducibilityVerdict {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, IrreducibilityVerdict::Irreducible { .. })
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Looks for a rational root `a/b` and returns the primitive linear factor `b·x - a`.
fn rational_root_factor(f: &IntPoly) -> Option<IntPoly> {
    let a0 = f.coeff(0);
    if a0.is_zero() {
        return Some(IntPoly::monomial(1, 1));
    }
    let lc = f.leading_coeff()?.abs().to_u64()?;
    let c0 = a0.abs().to_u64()?;
    if lc > DIVISOR_TRIAL_LIMIT || c0 > DIVISOR_TRIAL_LIMIT {
        return None;
    }
    let d = f.degree()?;
    for den in divisors(lc) {
        for num in divisors(c0) {
            if num.gcd(&den) != 1 {
                continue;
            }
            for num in [BigInt::from(num), -BigInt::from(num)] {
                let den = BigInt::from(den);
                // Σ a_i num^i den^(d-i) = den^d · f(num/den)
                let value = f
                    .coeffs()
                    .iter()
                    .enumerate()
                    .fold(BigInt::zero(), |acc, (i, c)| {
                        acc + c * num_traits::pow(num.clone(), i) * num_traits::pow(den.clone(), d - i)
                    });
                if value.is_zero() {
                    return Some(IntPoly::new(vec![-num, den]));
                }
            }
        }
    }
    None
}

/// Exhaustive search for monic quadratic factors `x² + a·x + b` of a monic `f`,
/// with `b | f(0)` and `|a| ≤ QUADRATIC_HEIGHT`.
fn small_quadratic_factor(f: &IntPoly) -> Option<IntPoly> {
    if !f.is_monic() {
        return None;
    }
    let c0 = f.coeff(0).abs().to_u64()?;
    if c0 == 0 || c0 > DIVISOR_TRIAL_LIMIT {
        return None;
    }
    for b in divisors(c0) {
        for b in [b as i64, -(b as i64)] {
            for a in -QUADRATIC_HEIGHT..=QUADRATIC_HEIGHT {
                let cand = IntPoly::from_i64(&[b, a, 1]);
                if f.div_exact(&cand).is_some() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn subset_sums(parts: &[usize], total: usize) -> BTreeSet<usize> {
    let mut reach = vec![false; total + 1];
    reach[0] = true;
    for &p in parts {
        for s in (p..=total).rev() {
            if reach[s - p] {
                reach[s] = true;
            }
        }
    }
    (0..=total).filter(|&s| reach[s]).collect()
}

/// Three-valued irreducibility test over `Q`.
///
/// Searches increasing primes `q ≤ prime_budget` (skipping divisors of the leading
/// coefficient and of the discriminant) for an irreducible reduction. A rational
/// root, a repeated factor, or a small-height quadratic factor admitted by the
/// factor-degree sieve yields `Reducible`; otherwise the answer is `Inconclusive`.
pub fn irreducible_over_q(f: &IntPoly, prime_budget: u64) -> Result<IrreducibilityVerdict> {
    let d = match f.degree() {
        None => return Err(Error::ZeroPolynomial("irreducible_over_q")),
        Some(0) => return Err(Error::ConstantPolynomial("irreducible_over_q")),
        Some(d) => d,
    };
    if !f.content().is_one() {
        return Err(Error::InvalidParameter(format!("{f} is not primitive")));
    }

    if d > 1 {
        if let Some(factor) = rational_root_factor(f) {
            return Ok(IrreducibilityVerdict::Reducible { factor });
        }
    }
    let disc = discriminant(f)?;
    if disc.is_zero() {
        let g = f.gcd(&f.derivative());
        return Ok(IrreducibilityVerdict::Reducible { factor: g });
    }

    let lc = f.leading_coeff().unwrap().clone();
    let mut allowed: BTreeSet<usize> = (0..=d).collect();
    let mut tried = 0usize;
    for q in Primes::new().take_while(|&q| q <= prime_budget) {
        let qb = BigInt::from(q);
        if (&lc % &qb).is_zero() || (&disc % &qb).is_zero() {
            continue;
        }
        tried += 1;
        let Reduction::Unramified(t) = reduce_and_factor_degrees(f, q)? else {
            unreachable!("q does not divide the discriminant");
        };
        if t.parts() == [d] {
            return Ok(IrreducibilityVerdict::Irreducible { witness: q });
        }
        let sums = subset_sums(t.parts(), d);
        allowed.retain(|s| sums.contains(s));
    }

    let proper: Vec<usize> = allowed.iter().copied().filter(|&s| s > 0 && s < d).collect();
    if proper.contains(&2) {
        if let Some(factor) = small_quadratic_factor(f) {
            return Ok(IrreducibilityVerdict::Reducible { factor });
        }
    }
    Ok(IrreducibilityVerdict::Inconclusive {
        primes_tried: tried,
        allowed_degrees: proper,
    })
}

/// Result of the irreducibility rule for `u(x²)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CompositeRuleVerdict {
    /// All premises hold, so `u(x²)` is irreducible over `Q`.
    Certified {
        m: usize,
        #[serde(with = "crate::bigint_serde")]
        c: BigInt,
        witness: u64,
    },
    NotApplicable { failed_premise: String },
}

impl CompositeRuleVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, CompositeRuleVerdict::Certified { .. })
    }
}

/// `u(x²)` is irreducible over `Q` when `u` is monic of odd degree `m ≥ 3`,
/// irreducible over `Q`, and `u + (x + c) ∈ x³·Z[x]` for a nonzero integer `c`.
pub fn irreducible_composite_rule(u: &IntPoly) -> CompositeRuleVerdict {
    irreducible_composite_rule_with_budget(u, DEFAULT_PRIME_BUDGET)
}

pub fn irreducible_composite_rule_with_budget(u: &IntPoly, prime_budget: u64) -> CompositeRuleVerdict {
    let fail = |why: &str| CompositeRuleVerdict::NotApplicable {
        failed_premise: why.to_string(),
    };
    let Some(m) = u.degree() else {
        return fail("u is the zero polynomial");
    };
    if m < 3 || m % 2 == 0 {
        return fail("deg u must be odd and at least 3");
    }
    if !u.is_monic() {
        return fail("u must be monic");
    }
    if !u.coeff(2).is_zero() {
        return fail("coefficient of x^2 must be 0");
    }
    if u.coeff(1) != BigInt::from(-1) {
        return fail("coefficient of x must be -1");
    }
    let c = -u.coeff(0);
    if c.is_zero() {
        return fail("constant term must be nonzero");
    }
    match irreducible_over_q(u, prime_budget) {
        Ok(IrreducibilityVerdict::Irreducible { witness }) => {
            CompositeRuleVerdict::Certified { m, c, witness }
        }
        Ok(_) => fail("u not certified irreducible over Q"),
        Err(e) => fail(&e.to_string()),
    }
}

/// Outcome of the check `p ∤ 1 + 2^(r-2)` together with the two shortcuts that
/// imply it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub p: u64,
    pub r: u64,
    /// `(1 + 2^(r-2)) mod p`
    pub residue: u64,
    /// `r ≡ 2 (mod p-1)`
    pub shortcut_congruence: bool,
    /// `2^(r-2) < p - 1`
    pub shortcut_small_r: bool,
    pub pass: bool,
}

pub fn condition_p_r(p: u64, r: u64) -> Result<ConditionReport> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidParameter(format!("p must be an odd prime, got {p}")));
    }
    if r < 2 {
        return Err(Error::InvalidParameter(format!("r must be >= 2, got {r}")));
    }
    let residue = (1 + pow_mod(2, r - 2, p)) % p;
    let shortcut_congruence = (r - 2) % (p - 1) == 0;
    let shortcut_small_r = r - 2 < 63 && (1u64 << (r - 2)) < p - 1;
    let pass = residue != 0;
    assert!(
        pass || !(shortcut_congruence || shortcut_small_r),
        "shortcut claimed for failing (p={p}, r={r})"
    );
    Ok(ConditionReport {
        p,
        r,
        residue,
        shortcut_congruence,
        shortcut_small_r,
        pass,
    })
}
