//! Closed-form invariants of `C_{f,p}: y^p = f(x)` with `deg f = n = 2pr - 1`, its
//! jacobian and its Prym variety, plus the eigenvalue calculus on the basis
//! `x^i dx / y^j` of holomorphic differentials.
//!
//! Everything here is integer or exact rational arithmetic on small numbers.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::is_prime;

/// Parameters of one family member: `m = pr - 1`, `n = 2m + 1`, and the constant
/// term `-c` of `u(x) = x^m - x - c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    pub p: u64,
    pub r: u64,
    pub m: u64,
    pub n: u64,
    pub c: i64,
}

impl FamilyParams {
    pub fn new(p: u64, r: u64, c: i64) -> Result<Self> {
        check_pr(p, r)?;
        if c % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "c must be an odd integer, got {c}"
            )));
        }
        let m = p * r - 1;
        Ok(FamilyParams {
            p,
            r,
            m,
            n: 2 * m + 1,
            c,
        })
    }

    /// `m` is odd exactly when `r` is even.
    pub fn m_is_odd(&self) -> bool {
        self.m % 2 == 1
    }
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidParameter(format!(
            "p must be an odd prime, got {p}"
        )));
    }
    Ok(())
}

fn check_pr(p: u64, r: u64) -> Result<()> {
    check_odd_prime(p)?;
    if r < 2 {
        return Err(Error::InvalidParameter(format!("r must be >= 2, got {r}")));
    }
    Ok(())
}

/// Genus `(n-1)(p-1)/2` of the smooth projective model of `y^p = f(x)`, `deg f = n`.
pub fn genus_curve(n: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("p must be prime, got {p}")));
    }
    if n < 4 {
        return Err(Error::InvalidParameter(format!("n must be >= 4, got {n}")));
    }
    if n % p == 0 {
        return Err(Error::InvalidParameter(format!("p = {p} divides n = {n}")));
    }
    Ok((n - 1) * (p - 1) / 2)
}

/// `dim Prym(C_{f,p}) = m(p-1)/2`.
pub fn dim_prym(p: u64, m: u64) -> u64 {
    m * (p - 1) / 2
}

/// One element `x^i dx / y^j` of the standard basis of holomorphic differentials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisForm {
    pub i: u64,
    pub j: u64,
    /// `δ_p^*` acts by `ζ_p^(-j)`.
    pub delta_p_exponent: i64,
    /// `δ_2^*` acts by `(-1)^(i+1-j)`.
    pub delta_2_sign: i8,
}

/// Basis `x^i dx / y^j` with `1 ≤ j ≤ p-1`, `0 ≤ i ≤ ⌊nj/p⌋ - 1`.
pub fn omega_basis(n: u64, p: u64) -> Result<Vec<BasisForm>> {
    genus_curve(n, p)?;
    let mut forms = Vec::new();
    for j in 1..p {
        for i in 0..(n * j / p) {
            let sign = if (i + 1 + j) % 2 == 0 { 1 } else { -1 };
            forms.push(BasisForm {
                i,
                j,
                delta_p_exponent: -(j as i64),
                delta_2_sign: sign,
            });
        }
    }
    Ok(forms)
}

/// Anti-invariant forms (`δ_2^* = -1`, i.e. `i ≡ j mod 2`) grouped by `j`, for
/// `n = 2pr - 1`. Obtained by enumerating [`omega_basis`].
pub fn anti_invariant_partition(p: u64, r: u64) -> Result<BTreeMap<u64, Vec<u64>>> {
    check_pr(p, r)?;
    let n = 2 * p * r - 1;
    let mut parts: BTreeMap<u64, Vec<u64>> = (1..p).map(|j| (j, Vec::new())).collect();
    for form in omega_basis(n, p)? {
        if form.delta_2_sign == -1 {
            parts.get_mut(&form.j).unwrap().push(form.i);
        }
    }
    Ok(parts)
}

/// Multiplicity of `ζ_p^(-j)` on the anti-invariant differentials, `1 ≤ j ≤ p-1`.
/// Serialized as a JSON map with string keys `"1"`..`"p-1"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiplicityTable(pub BTreeMap<u64, u64>);

impl MultiplicityTable {
    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn gcd(&self) -> u64 {
        self.0.values().fold(0, |g, &v| g.gcd(&v))
    }

    pub fn get(&self, j: u64) -> Option<u64> {
        self.0.get(&j).copied()
    }
}

/// Closed form: `rj` for even `j`, `rj - 1` for odd `j`.
pub fn multiplicity_table(p: u64, r: u64) -> Result<MultiplicityTable> {
    check_pr(p, r)?;
    Ok(MultiplicityTable(
        (1..p)
            .map(|j| (j, if j % 2 == 0 { r * j } else { r * j - 1 }))
            .collect(),
    ))
}

pub fn multiplicities_coprime(p: u64, r: u64) -> Result<bool> {
    Ok(multiplicity_table(p, r)?.gcd() == 1)
}

pub fn multiplicities_distinct(p: u64, r: u64) -> Result<bool> {
    let table = multiplicity_table(p, r)?;
    let mut seen = std::collections::BTreeSet::new();
    Ok(table.0.values().all(|v| seen.insert(*v)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    /// `mult(ζ_p^(-1)) = r - 1`
    pub lhs: String,
    /// `(1/p)·(2·dim Prym/(p-1)) - (p-2)/p`
    pub rhs: String,
    pub holds: bool,
}

/// Exact check of `r - 1 < (1/p)·(2·dim Prym/(p-1)) - (p-2)/p`.
pub fn non_jacobian_inequality(p: u64, r: u64) -> Result<InequalityReport> {
    let table = multiplicity_table(p, r)?;
    let (pi, ri) = (p as i128, r as i128);
    let dim = dim_prym(p, p * r - 1) as i128;
    let lhs = Ratio::from_integer(table.get(1).unwrap() as i128);
    let rhs = Ratio::new(1, pi) * Ratio::new(2 * dim, pi - 1) - Ratio::new(pi - 2, pi);
    debug_assert_eq!(lhs, Ratio::from_integer(ri - 1));
    Ok(InequalityReport {
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        holds: lhs < rhs,
    })
}

/// Rank of the `λ`-torsion of the Prym as a free `F_p`-module,
/// `2·dim Prym / (p-1)`, compared against `dim V_f^- = m`.
pub fn lambda_rank(p: u64, m: u64) -> Option<u64> {
    let twice_dim = 2 * dim_prym(p, m);
    (twice_dim % (p - 1) == 0).then(|| twice_dim / (p - 1))
}
