//! Primitive computations at the bottom of a certificate. Each leaf records its
//! inputs; [`Leaf::evaluate`] recomputes the value from scratch.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::chebotarev::{chebotarev_verdict, SamplingOptions};
use super::containment::{even_containment, BaseField, Containment};
use crate::error::Result;
use crate::fpmodule::{commutant_dim, heart_f2_irreducible, lambda_rank_check, FpSpace, HeartGroup, SpaceKind};
use crate::intpoly::{
    condition_p_r, discriminant, irreducible_composite_rule_with_budget, irreducible_over_q, is_perfect_square,
    reduce_and_factor_degrees, IntPoly, Reduction,
};
use crate::primes::Primes;
use crate::prymcalc::{multiplicities_coprime, multiplicities_distinct, multiplicity_table, non_jacobian_inequality};
use crate::signedperm::{
    sm_certificate, sm_normal_index_condition, transitivity_degree, GroupDescriptor, RootSet, SmVerdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Leaf {
    /// `n` is odd.
    Odd { n: i64 },
    /// `n` is even.
    Even { n: i64 },
    /// `value ≥ bound`.
    AtLeast { value: u64, bound: u64 },
    Equal { left: i64, right: i64 },
    /// Whether `n` is a perfect square, compared with `expect_square`.
    Square {
        #[serde(with = "crate::bigint_serde")]
        n: BigInt,
        expect_square: bool,
    },
    /// Some prime `q ≤ prime_budget` gives an irreducible reduction of `poly`.
    Irreducible { poly: IntPoly, prime_budget: u64 },
    /// The first unramified prime `q ≤ prime_budget` whose Frobenius type has a
    /// power that is a single prime cycle of length `q'`, `m/2 < q' < m-2`.
    JordanSearch { poly: IntPoly, prime_budget: u64 },
    /// The irreducibility rule for `u(x²)`.
    CompositeRule { u: IntPoly, prime_budget: u64 },
    /// `Gal(u(x²))` lies in `W(D_m)` over `base`.
    EvenContainment { u: IntPoly, base: BaseField },
    /// `disc(poly) ≡ expected (mod modulus)`.
    DiscriminantResidue { poly: IntPoly, modulus: u64, expected: u64 },
    /// `gcd(disc(poly), p) = 1`.
    DiscriminantCoprime { poly: IntPoly, p: u64 },
    /// `A_m` has no subgroup of index `2m`, via `2m < m(m-1)/2`.
    IndexBound { m: u64 },
    /// The sum-zero part of `F_2^m` is an irreducible `A_m`-module.
    HeartIrreducible { m: usize },
    /// A fact taken from the literature without local verification.
    Cited { statement: String },
    /// `p ∤ 1 + 2^(r-2)`.
    ConditionPR { p: u64, r: u64 },
    /// `S_m` is at least `k`-transitive on `m` points.
    Transitivity { m: usize, k: usize },
    /// No proper normal subgroup of `S_m` has index dividing `m`.
    NormalIndex { m: usize },
    MultiplicitiesDistinct { p: u64, r: u64 },
    MultiplicitiesCoprime { p: u64, r: u64 },
    NonJacobianInequality { p: u64, r: u64 },
    /// `dim End_{W(D_m)}(V_f^-) = expected` over `F_p`.
    Commutant { m: usize, p: u64, expected: usize },
    /// `2·dim Prym/(p-1) = m = dim V_f^-`.
    LambdaRank { p: u64, m: u64 },
    /// Frobenius sampling finds no type outside `target`.
    Chebotarev {
        poly: IntPoly,
        target: GroupDescriptor,
        options: SamplingOptions,
    },
}

/// Recomputed value of a leaf and whether the required fact holds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeafOutcome {
    pub value: Value,
    pub holds: bool,
}

impl Leaf {
    pub fn evaluate(&self) -> Result<LeafOutcome> {
        let out = |value: Value, holds: bool| Ok(LeafOutcome { value, holds });
        match self {
            Leaf::Odd { n } => out(json!(n.rem_euclid(2)), n % 2 != 0),
            Leaf::Even { n } => out(json!(n.rem_euclid(2)), n % 2 == 0),
            Leaf::AtLeast { value, bound } => out(json!(value), value >= bound),
            Leaf::Square { n, expect_square } => {
                let sq = is_perfect_square(n);
                out(json!({ "is_square": sq }), sq == *expect_square)
            }
            Leaf::Equal { left, right } => out(json!([left, right]), left == right),
            Leaf::Irreducible { poly, prime_budget } => {
                let v = irreducible_over_q(poly, *prime_budget)?;
                let holds = v.is_irreducible();
                out(serde_json::to_value(v)?, holds)
            }
            Leaf::JordanSearch { poly, prime_budget } => {
                let m = poly.degree().unwrap_or(0);
                for q in Primes::new().take_while(|q| q <= prime_budget) {
                    if let Ok(Reduction::Unramified(t)) = reduce_and_factor_degrees(poly, q) {
                        if let SmVerdict::IsSm { jordan_prime, .. } = sm_certificate([&t], false, true, m) {
                            return out(json!({ "q": q, "cycle_type": t, "jordan_prime": jordan_prime }), true);
                        }
                    }
                }
                out(Value::Null, false)
            }
            Leaf::CompositeRule { u, prime_budget } => {
                let v = irreducible_composite_rule_with_budget(u, *prime_budget);
                let holds = v.is_certified();
                out(serde_json::to_value(v)?, holds)
            }
            Leaf::EvenContainment { u, base } => {
                let c = even_containment(u, *base);
                let holds = c == Containment::Contained;
                out(serde_json::to_value(c)?, holds)
            }
            Leaf::DiscriminantResidue { poly, modulus, expected } => {
                let d = discriminant(poly)?;
                let res = d.mod_floor(&BigInt::from(*modulus));
                out(json!(res.to_string()), res == BigInt::from(*expected))
            }
            Leaf::DiscriminantCoprime { poly, p } => {
                let d = discriminant(poly)?;
                let g = d.gcd(&BigInt::from(*p));
                out(json!(g.to_string()), !d.is_zero() && g.abs() == BigInt::from(1))
            }
            Leaf::IndexBound { m } => {
                let half = m * (m.saturating_sub(1)) / 2;
                out(json!({ "two_m": 2 * m, "binomial": half }), 2 * m < half)
            }
            Leaf::HeartIrreducible { m } => {
                let irr = heart_f2_irreducible(*m, HeartGroup::Am)?;
                out(json!(irr), irr)
            }
            Leaf::Cited { .. } => out(json!("cited"), true),
            Leaf::ConditionPR { p, r } => {
                let rep = condition_p_r(*p, *r)?;
                out(serde_json::to_value(rep)?, rep.pass)
            }
            Leaf::Transitivity { m, k } => {
                let gens = GroupDescriptor::Sm { m: *m }.generators();
                let deg = transitivity_degree(&gens, RootSet::Ru, *m, *k);
                out(json!(deg), deg >= *k)
            }
            Leaf::NormalIndex { m } => {
                let ok = sm_normal_index_condition(*m)?;
                out(json!(ok), ok)
            }
            Leaf::MultiplicitiesDistinct { p, r } => {
                let ok = multiplicities_distinct(*p, *r)?;
                out(serde_json::to_value(multiplicity_table(*p, *r)?)?, ok)
            }
            Leaf::MultiplicitiesCoprime { p, r } => {
                let ok = multiplicities_coprime(*p, *r)?;
                out(json!({ "gcd": multiplicity_table(*p, *r)?.gcd() }), ok)
            }
            Leaf::NonJacobianInequality { p, r } => {
                let rep = non_jacobian_inequality(*p, *r)?;
                let holds = rep.holds;
                out(serde_json::to_value(rep)?, holds)
            }
            Leaf::Commutant { m, p, expected } => {
                let space = FpSpace::new(SpaceKind::VfMinus, *m, *p)?;
                let dim = commutant_dim(&GroupDescriptor::WDm { m: *m }.generators(), &space)?;
                out(json!(dim), dim == *expected)
            }
            Leaf::LambdaRank { p, m } => {
                let ok = lambda_rank_check(*p, *m);
                out(json!(ok), ok)
            }
            Leaf::Chebotarev { poly, target, options } => {
                let v = chebotarev_verdict(poly, target, options)?;
                let holds = !v.is_refuted();
                out(serde_json::to_value(v)?, holds)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leaves_evaluate() {
        let u = IntPoly::trinomial(5, 1);
        let irr = Leaf::Irreducible { poly: u.clone(), prime_budget: 500 }.evaluate().unwrap();
        assert!(irr.holds);
        assert_eq!(irr.value["witness"], 3);
        assert!(!Leaf::Irreducible { poly: "x^4-1".parse().unwrap(), prime_budget: 500 }.evaluate().unwrap().holds);
        assert!(Leaf::Square { n: BigInt::from(9), expect_square: true }.evaluate().unwrap().holds);
        assert!(Leaf::Square { n: BigInt::from(2869), expect_square: false }.evaluate().unwrap().holds);
        assert!(Leaf::IndexBound { m: 9 }.evaluate().unwrap().holds);
        assert!(!Leaf::IndexBound { m: 5 }.evaluate().unwrap().holds);
        assert!(Leaf::DiscriminantCoprime { poly: IntPoly::trinomial(11, 1).compose_x2(), p: 3 }
            .evaluate()
            .unwrap()
            .holds);
        assert!(Leaf::Commutant { m: 5, p: 3, expected: 1 }.evaluate().unwrap().holds);
        assert!(Leaf::ConditionPR { p: 5, r: 4 }.evaluate().is_ok_and(|o| !o.holds));
        assert!(Leaf::NormalIndex { m: 4 }.evaluate().is_err());
        assert!(!Leaf::Equal { left: 11, right: 12 }.evaluate().unwrap().holds);
        assert!(Leaf::EvenContainment { u: u.clone(), base: BaseField::Rationals }.evaluate().unwrap().holds);
    }

    #[test]
    fn jordan_search() {
        let found = Leaf::JordanSearch { poly: IntPoly::trinomial(11, 1), prime_budget: 500 }.evaluate().unwrap();
        assert!(found.holds);
        assert_eq!(found.value["jordan_prime"], 7);
        // No prime lies strictly between 5/2 and 3.
        let none = Leaf::JordanSearch { poly: IntPoly::trinomial(5, 1), prime_budget: 500 }.evaluate().unwrap();
        assert!(!none.holds);
        assert_eq!(none.value, Value::Null);
    }

    #[test]
    fn leaf_json_round_trip() {
        let leaf = Leaf::JordanSearch {
            poly: IntPoly::trinomial(11, 1),
            prime_budget: 500,
        };
        let json = serde_json::to_string(&leaf).unwrap();
        assert!(json.starts_with(r#"{"kind":"jordan_search""#));
        assert_eq!(serde_json::from_str::<Leaf>(&json).unwrap(), leaf);
    }
}
