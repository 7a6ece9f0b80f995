//! Polynomials over `F_q` for word-sized primes `q`, and distinct-degree
//! factorization. Only factor degrees are ever needed (Frobenius cycle types), so
//! there is no equal-degree splitting.

use serde::{Deserialize, Serialize};

use super::{bigint_mod_u64, CycleType, IntPoly};
use crate::error::{Error, Result};
use crate::primes::{inv_mod, mul_mod};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    q: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(q: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= q;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { q, coeffs }
    }

    pub fn from_intpoly(f: &IntPoly, q: u64) -> Self {
        Self::new(q, f.coeffs().iter().map(|c| bigint_mod_u64(c, q)).collect())
    }

    pub fn x(q: u64) -> Self {
        Self::new(q, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lc(&self) -> u64 {
        *self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lc(), self.q);
        Self::new(
            self.q,
            self.coeffs.iter().map(|&c| mul_mod(c, inv, self.q)).collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.q,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % self.q, self.q))
                .collect(),
        )
    }

    pub fn sub(&self, other: &FpPoly) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let q = self.q;
        Self::new(
            q,
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or(0);
                    let b = other.coeffs.get(i).copied().unwrap_or(0);
                    (a + q - b) % q
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &FpPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(self.q, Vec::new());
        }
        let q = self.q;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, q)) % q;
            }
        }
        Self::new(q, out)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        let q = self.q;
        let db = divisor.degree().expect("division by zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return (Self::new(q, Vec::new()), self.clone());
        }
        let inv = inv_mod(divisor.lc(), q);
        let mut quot = vec![0u64; rem.len() - db];
        for shift in (0..quot.len()).rev() {
            let top = rem[shift + db];
            if top == 0 {
                continue;
            }
            let factor = mul_mod(top, inv, q);
            quot[shift] = factor;
            for (i, &b) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = (rem[shift + i] + q - mul_mod(factor, b, q)) % q;
            }
        }
        rem.truncate(db);
        (Self::new(q, quot), Self::new(q, rem))
    }

    pub fn rem(&self, divisor: &FpPoly) -> FpPoly {
        self.div_rem(divisor).1
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `base^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, modulus: &FpPoly) -> FpPoly {
        let mut acc = Self::new(self.q, vec![1]).rem(modulus);
        let mut base = self.rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Degrees of the irreducible factors of a squarefree polynomial, with multiplicity.
    pub fn distinct_degree_degrees(&self) -> Vec<usize> {
        let q = self.q;
        let mut f = self.monic();
        let mut degrees = Vec::new();
        let x = FpPoly::x(q);
        let mut xq = x.clone();
        let mut d = 0usize;
        while let Some(df) = f.degree() {
            if df < 2 * (d + 1) {
                if df > 0 {
                    degrees.push(df);
                }
                break;
            }
            d += 1;
            xq = xq.pow_mod(q, &f);
            let g = f.gcd(&xq.sub(&x));
            let dg = g.degree().unwrap_or(0);
            if dg > 0 {
                debug_assert_eq!(dg % d, 0);
                degrees.extend(std::iter::repeat_n(d, dg / d));
                f = f.div_rem(&g).0;
                xq = xq.rem(&f);
            }
        }
        degrees
    }
}

/// Outcome of reducing an integer polynomial modulo a prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reduction {
    /// Degrees of the irreducible factors mod `q`; by Dedekind this is the cycle
    /// type of a Frobenius element.
    Unramified(CycleType),
    /// `f mod q` has a repeated factor (equivalently `q | disc f`).
    Ramified,
}

impl Reduction {
    pub fn cycle_type(&self) -> Option<&CycleType> {
        match self {
            Reduction::Unramified(t) => Some(t),
            Reduction::Ramified => None,
        }
    }
}

/// Factor-degree multiset of `f mod q`, or [`Reduction::Ramified`] if the reduction
/// is not squarefree.
pub fn reduce_and_factor_degrees(f: &IntPoly, q: u64) -> Result<Reduction> {
    let lc = f.leading_coeff().ok_or(Error::ZeroPolynomial("reduce_and_factor_degrees"))?;
    if bigint_mod_u64(lc, q) == 0 {
        return Err(Error::LeadingCoefficientVanishes { q });
    }
    let fq = FpPoly::from_intpoly(f, q);
    if fq.degree() == Some(0) {
        return Ok(Reduction::Unramified(CycleType::new(Vec::new())));
    }
    if !fq.is_squarefree() {
        return Ok(Reduction::Ramified);
    }
    Ok(Reduction::Unramified(CycleType::new(fq.distinct_degree_degrees())))
}
