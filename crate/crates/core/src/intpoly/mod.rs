//! Dense univariate polynomials over `Z`, with exact resultants and discriminants,
//! reduction modulo primes and the closed forms for the trinomials `x^m - x - c`.

mod cycle;
mod irreducible;
pub mod modq;
mod parse;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::prymcalc::FamilyParams;

pub use cycle::CycleType;
pub use irreducible::{
    condition_p_r, irreducible_composite_rule, irreducible_composite_rule_with_budget, irreducible_over_q, CompositeRuleVerdict,
    ConditionReport, IrreducibilityVerdict, DEFAULT_PRIME_BUDGET,
};
pub use modq::{reduce_and_factor_degrees, FpPoly, Reduction};

/// Integer polynomial stored as `coeffs[i]` = coefficient of `x^i`, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c·x^d`
    pub fn monomial(c: impl Into<BigInt>, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c.into();
        Self::new(coeffs)
    }

    /// `x^m - x - c`
    pub fn trinomial(m: usize, c: impl Into<BigInt>) -> Self {
        assert!(m >= 2, "trinomial needs degree at least 2");
        let mut coeffs = vec![BigInt::zero(); m + 1];
        coeffs[m] = BigInt::one();
        coeffs[1] = BigInt::from(-1);
        coeffs[0] = -c.into();
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut cont = self.content();
        if self.leading_coeff().unwrap().is_negative() {
            cont = -cont;
        }
        self.div_exact_scalar(&cont)
    }

    fn div_exact_scalar(&self, d: &BigInt) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| {
                    debug_assert!((c % d).is_zero());
                    c / d
                })
                .collect(),
        )
    }

    fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Pseudo-remainder of `self` by `divisor`: the remainder of
    /// `lc(divisor)^(deg self - deg divisor + 1) · self` on division by `divisor`.
    pub fn pseudo_rem(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let db = divisor.degree().ok_or(Error::ZeroPolynomial("pseudo_rem"))?;
        let Some(da) = self.degree() else {
            return Ok(Self::zero());
        };
        if da < db {
            return Ok(self.clone());
        }
        let lb = divisor.leading_coeff().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut steps = da - db + 1;
        while rem.len() > db && !rem.is_empty() {
            let shift = rem.len() - 1 - db;
            let lr = rem.last().unwrap().clone();
            for c in rem.iter_mut() {
                *c *= &lb;
            }
            for (i, bc) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &lr * bc;
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            steps -= 1;
        }
        let rem = IntPoly::new(rem);
        if steps > 0 {
            Ok(rem.scale(&num_traits::pow(lb, steps)))
        } else {
            Ok(rem)
        }
    }

    /// Exact quotient `self / divisor` over `Z`, or `None` when `divisor` does not
    /// divide `self` in `Z[x]`.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let db = divisor.degree()?;
        let Some(da) = self.degree() else {
            return Some(Self::zero());
        };
        if da < db {
            return None;
        }
        let lb = divisor.leading_coeff().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for shift in (0..=da - db).rev() {
            let top = &rem[shift + db];
            let (q, r) = top.div_rem(lb);
            if !r.is_zero() {
                return None;
            }
            for (i, bc) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &q * bc;
            }
            quot[shift] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPoly::new(quot))
    }

    /// Primitive gcd over `Z[x]` (positive leading coefficient), via the primitive PRS.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        loop {
            let r = a.pseudo_rem(&b).expect("divisor is nonzero");
            if r.is_zero() {
                return b;
            }
            if r.degree() == Some(0) {
                return IntPoly::constant(1);
            }
            a = b;
            b = r.primitive_part();
        }
    }

    /// `h(x) = self(x²)`.
    pub fn compose_x2(&self) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); (2 * self.coeffs.len()).saturating_sub(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c.clone();
        }
        IntPoly::new(coeffs)
    }

    /// If `self` is even (only even powers), returns `u` with `self = u(x²)`.
    pub fn even_part_root(&self) -> Option<IntPoly> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(self.coeffs.iter().step_by(2).cloned().collect()))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// `h(x) = u(x²)`; `deg h = 2·deg u` and `h(0) = u(0)`.
pub fn compose_x2(u: &IntPoly) -> IntPoly {
    u.compose_x2()
}

/// The polynomials `u = x^m - x - c`, `h = u(x²)` and `f = x·h` of one family member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub params: FamilyParams,
    pub u: IntPoly,
    pub h: IntPoly,
    pub f: IntPoly,
}

pub fn build_family(p: u64, r: u64, c: i64) -> Result<Family> {
    let params = FamilyParams::new(p, r, c)?;
    let u = IntPoly::trinomial(params.m as usize, params.c);
    let h = u.compose_x2();
    let f = &IntPoly::monomial(1, 1) * &h;
    Ok(Family { params, u, h, f })
}

fn sign_pow(e: u64) -> BigInt {
    if e % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Resultant of two nonzero integer polynomials, by the subresultant PRS
/// (no fraction-field arithmetic; every division is exact).
pub fn resultant(a: &IntPoly, b: &IntPoly) -> Result<BigInt> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial("resultant"));
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign = BigInt::one();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            sign = -sign;
        }
    }
    let (ca, cb) = (a.content(), b.content());
    let t = num_traits::pow(ca.clone(), b.degree().unwrap())
        * num_traits::pow(cb.clone(), a.degree().unwrap());
    a = a.div_exact_scalar(&ca);
    b = b.div_exact_scalar(&cb);

    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        if db == 0 {
            let lb = b.leading_coeff().unwrap().clone();
            let tail = if da == 0 {
                h
            } else {
                num_traits::pow(lb, da) / num_traits::pow(h, da - 1)
            };
            return Ok(sign * t * tail);
        }
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b)?;
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        a = b;
        b = r.div_exact_scalar(&(&g * num_traits::pow(h.clone(), delta)));
        g = a.leading_coeff().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1),
        };
    }
}

/// `(-1)^(d(d-1)/2) · res(f, f') / lc(f)` with `d = deg f`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    let d = match f.degree() {
        None => return Err(Error::ZeroPolynomial("discriminant")),
        Some(0) => return Err(Error::ConstantPolynomial("discriminant")),
        Some(d) => d as u64,
    };
    let res = resultant(f, &f.derivative())?;
    let lc = f.leading_coeff().unwrap();
    debug_assert!((&res % lc).is_zero());
    Ok(sign_pow(d * (d - 1) / 2) * (res / lc))
}

fn check_trinomial_params(m: u64, c: i64) -> Result<()> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "m must be an odd integer >= 3, got {m}"
        )));
    }
    if c % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "c must be an odd integer, got {c}"
        )));
    }
    Ok(())
}

/// Discriminant of `x^m - x - c` for odd `m` and odd `c`:
/// `(-1)^(m(m-1)/2) · (m^m · c^(m-1) - (m-1)^(m-1))`.
///
/// The shorter form `±(c^(m-1) + (m-1)^(m-1))` that sometimes circulates for this
/// family drops the `m^m` factor and is wrong (it gives ±5 for `m = 3, c = 1`,
/// while the discriminant of `x³ - x - 1` is -23).
pub fn trinomial_disc(m: u64, c: i64) -> Result<BigInt> {
    check_trinomial_params(m, c)?;
    let mb = BigInt::from(m);
    let e = (m - 1) as usize;
    let val = num_traits::pow(mb.clone(), m as usize) * num_traits::pow(BigInt::from(c), e)
        - num_traits::pow(mb - 1, e);
    Ok(sign_pow(m * (m - 1) / 2) * val)
}

/// Discriminant of `u(x²) = x^(2m) - x² - c`: `4^m · c · Δ_c²` with
/// `Δ_c = trinomial_disc(m, c)`. For `c = 1` this is the square `(2^m·Δ_1)²`.
pub fn disc_of_even_composite(m: u64, c: i64) -> Result<BigInt> {
    let delta = trinomial_disc(m, c)?;
    Ok(num_traits::pow(BigInt::from(4), m as usize) * BigInt::from(c) * &delta * &delta)
}

/// Exact square test for integers (negative numbers are never squares).
pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let root = n.sqrt();
    &root * &root == *n
}

/// Reduction of `n` modulo `q` into `[0, q)`.
pub fn bigint_mod_u64(n: &BigInt, q: u64) -> u64 {
    n.mod_floor(&BigInt::from(q)).to_u64().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    /// Determinant of the Sylvester matrix by fraction-free (Bareiss) elimination;
    /// independent of the PRS route.
    fn sylvester_resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
        let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
        let size = m + n;
        if size == 0 {
            return BigInt::one();
        }
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for row in 0..n {
            for (i, c) in a.coeffs().iter().rev().enumerate() {
                mat[row][row + i] = c.clone();
            }
        }
        for row in 0..m {
            for (i, c) in b.coeffs().iter().rev().enumerate() {
                mat[n + row][row + i] = c.clone();
            }
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..size - 1 {
            if mat[k][k].is_zero() {
                let Some(swap) = (k + 1..size).find(|&r| !mat[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                mat.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                    mat[i][j] = v / &prev;
                }
            }
            prev = mat[k][k].clone();
        }
        sign * mat[size - 1][size - 1].clone()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose_x2(&p("x - 1")), p("x^2 - 1"));
        assert_eq!(compose_x2(&p("x^5 - x - 1")), p("x^10 - x^2 - 1"));
        assert_eq!(compose_x2(&IntPoly::zero()), IntPoly::zero());
        assert_eq!(p("x^10 - x^2 - 1").even_part_root(), Some(p("x^5 - x - 1")));
        assert_eq!(p("x^3 + 1").even_part_root(), None);
    }

    #[test]
    fn family_construction() {
        let fam = build_family(3, 2, 1).unwrap();
        assert_eq!(fam.params.m, 5);
        assert_eq!(fam.params.n, 11);
        assert_eq!(fam.f, p("x^11 - x^3 - x"));
        assert_eq!(fam.h, p("x^10 - x^2 - 1"));
        let fam = build_family(3, 4, 1).unwrap();
        assert_eq!(fam.params.m, 11);
        assert_eq!(fam.f, p("x^23 - x^3 - x"));
        assert!(build_family(3, 2, 2).is_err());
        assert!(build_family(2, 2, 1).is_err());
        assert!(build_family(3, 1, 1).is_err());
        assert!(build_family(9, 2, 1).is_err());
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p("x^2 + 1"), &p("x - 1")).unwrap(), BigInt::from(2));
        assert_eq!(resultant(&p("x - 3"), &p("x - 5")).unwrap(), BigInt::from(-2));
        assert_eq!(resultant(&p("x^3 - x - 1"), &p("3x^2 - 1")).unwrap(), BigInt::from(23));
        assert_eq!(resultant(&p("6"), &p("x^2 + 1")).unwrap(), BigInt::from(36));
        assert_eq!(resultant(&p("x^2 - 1"), &p("x^2 - 3x + 2")).unwrap(), BigInt::zero());
        assert!(resultant(&IntPoly::zero(), &p("x")).is_err());
    }

    #[test]
    fn resultant_matches_sylvester_determinant() {
        let cases = [
            ("3x^4 - 2x + 7", "5x^3 + x^2 - 4"),
            ("2x^5 + 4x^3 - 6", "4x^2 + 2x"),
            ("x^6 - x^2 - 1", "6x^5 - 2x"),
            ("-x^3 + 9", "x^3 - 9x + 2"),
            ("12x^2 + 18", "8x^3 + 4x - 2"),
        ];
        for (a, b) in cases {
            let (a, b) = (p(a), p(b));
            assert_eq!(resultant(&a, &b).unwrap(), sylvester_resultant(&a, &b), "{a} / {b}");
        }
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p("x^3 - x - 1")).unwrap(), BigInt::from(-23));
        assert_eq!(discriminant(&p("x^2 - 1")).unwrap(), BigInt::from(4));
        assert_eq!(discriminant(&p("x^5 - x - 1")).unwrap(), BigInt::from(2869));
        assert_eq!(discriminant(&p("3x + 1")).unwrap(), BigInt::one());
        assert!(discriminant(&p("7")).is_err());
        assert!(discriminant(&IntPoly::zero()).is_err());
    }

    #[test]
    fn cubic_formula_oracle() {
        // x³ + a x + b has discriminant -4a³ - 27b².
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                let f = IntPoly::from_i64(&[b, a, 0, 1]);
                let expected = -4 * a * a * a - 27 * b * b;
                assert_eq!(discriminant(&f).unwrap(), BigInt::from(expected));
            }
        }
    }

    #[test]
    fn trinomial_closed_form_examples() {
        assert_eq!(trinomial_disc(3, 1).unwrap(), BigInt::from(-23));
        assert_eq!(trinomial_disc(5, 1).unwrap(), BigInt::from(2869));
        assert_eq!(trinomial_disc(3, 3).unwrap(), BigInt::from(-239));
        assert!(trinomial_disc(4, 1).is_err());
        assert!(trinomial_disc(5, 2).is_err());
        // The simplified form without m^m gives ±5 for m = 3, c = 1.
        let simplified = 1 + 2i64.pow(2);
        assert_eq!(simplified, 5);
        assert_ne!(trinomial_disc(3, 1).unwrap().abs(), BigInt::from(simplified));
    }

    #[test]
    fn even_composite_examples() {
        let d = disc_of_even_composite(3, 1).unwrap();
        assert_eq!(d, BigInt::from(33856));
        assert_eq!(d, discriminant(&p("x^6 - x^2 - 1")).unwrap());
        assert_eq!(d.sqrt(), BigInt::from(184));
        assert!(is_perfect_square(&d));
        let d5 = disc_of_even_composite(5, 1).unwrap();
        assert_eq!(d5, BigInt::from(1024) * BigInt::from(2869) * BigInt::from(2869));
        assert_eq!(d5, discriminant(&p("x^10 - x^2 - 1")).unwrap());
        // The printed -2^m Δ² is negative, hence cannot be the square forced by W(D_m) ⊆ Alt.
        assert!(disc_of_even_composite(3, 1).unwrap() > BigInt::zero());
    }

    #[test]
    fn gcd_and_exact_division() {
        let a = p("x^2 - 1");
        let b = p("x^2 + 2x + 1");
        assert_eq!(a.gcd(&b), p("x + 1"));
        assert_eq!(p("2x^2 - 2").gcd(&p("4x - 4")), p("x - 1"));
        assert_eq!(a.div_exact(&p("x - 1")), Some(p("x + 1")));
        assert_eq!(a.div_exact(&p("x - 2")), None);
        assert_eq!(p("x^2 + 1").gcd(&p("x - 3")), IntPoly::constant(1));
    }

    #[test]
    fn display_round_trip() {
        for s in ["x^10 - x^2 - 1", "-3*x^4 + x - 7", "x", "-1", "0", "2*x^2"] {
            assert_eq!(p(s).to_string(), s);
        }
    }
}
