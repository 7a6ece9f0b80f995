//! Containment of `Gal(u(x²))` in `W(D_m)`.
//!
//! With `h(x) = u(x²)`, `deg u = m` odd, the roots of `h` are `±β_i` and
//! `∏ β_i² = -u(0)/lc(u)`. An element of `2^m·S_m` with `k` sign changes sends
//! `∏ β_i` to `(-1)^k ∏ β_i`, so the group sits in `W(D_m)` exactly when that
//! product lies in the base field, i.e. when `-u(0)·lc(u)` is a square there.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::intpoly::{discriminant, is_perfect_square, IntPoly};
use crate::primes::is_prime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "field", rename_all = "snake_case")]
pub enum BaseField {
    Rationals,
    /// `Q(ζ_p)`
    Cyclotomic { p: u64 },
}

impl std::fmt::Display for BaseField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Cyclotomic { p } => write!(f, "Q(zeta_{p})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Containment {
    Contained,
    NotContained,
    /// `-u(0)·lc(u)` is not a rational square, but it might become one in the
    /// cyclotomic field; that direction is not modeled.
    NotConcluded,
    Inapplicable { reason: String },
}

pub fn even_containment(u: &IntPoly, base: BaseField) -> Containment {
    let inapplicable = |reason: &str| Containment::Inapplicable {
        reason: reason.to_string(),
    };
    let Some(m) = u.degree() else {
        return inapplicable("u is zero");
    };
    if m % 2 == 0 {
        return inapplicable("deg u is even");
    }
    if let BaseField::Cyclotomic { p } = base {
        if p == 2 || !is_prime(p) {
            return inapplicable("cyclotomic base needs an odd prime");
        }
    }
    let u0 = u.coeff(0);
    if u0.is_zero() {
        return inapplicable("u(0) = 0");
    }
    if discriminant(u).map_or(true, |d| d.is_zero()) {
        return inapplicable("u is not squarefree");
    }
    let lc: &BigInt = u.leading_coeff().expect("nonzero");
    let target = -u0 * lc;
    if is_perfect_square(&target) {
        return Containment::Contained;
    }
    match base {
        BaseField::Rationals => Containment::NotContained,
        BaseField::Cyclotomic { .. } => Containment::NotConcluded,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(even_containment(&p("x^5-x-1"), BaseField::Rationals), Containment::Contained);
        assert_eq!(even_containment(&p("x^5-x-2"), BaseField::Rationals), Containment::NotContained);
        assert!(matches!(
            even_containment(&p("x^4-x-1"), BaseField::Rationals),
            Containment::Inapplicable { .. }
        ));
        assert_eq!(
            even_containment(&p("x^5-x-9"), BaseField::Cyclotomic { p: 3 }),
            Containment::Contained
        );
        assert_eq!(
            even_containment(&p("x^5-x-3"), BaseField::Cyclotomic { p: 3 }),
            Containment::NotConcluded
        );
        assert!(matches!(
            even_containment(&p("x^5-x"), BaseField::Rationals),
            Containment::Inapplicable { .. }
        ));
    }

    #[test]
    fn leading_coefficient_enters_the_square_test() {
        // -u(0)·lc = 2·2 = 4
        assert_eq!(even_containment(&p("2x^3-x-2"), BaseField::Rationals), Containment::Contained);
        assert_eq!(even_containment(&p("2x^3-x-1"), BaseField::Rationals), Containment::NotContained);
    }
}
