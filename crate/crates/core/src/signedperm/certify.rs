use serde::{Deserialize, Serialize};

use super::CycleType;
use crate::error::{Error, Result};
use crate::primes::is_prime;

/// For `G = S_m`, `m ≥ 5`: no proper normal subgroup has index dividing `m`.
/// The proper normal subgroups are `1` and `A_m`, with indices `m!` and `2`, so
/// this holds iff `m` is odd.
pub fn sm_normal_index_condition(m: usize) -> Result<bool> {
    if m < 5 {
        return Err(Error::InvalidParameter(format!(
            "normal subgroups of S_m are classified here only for m >= 5, got {m}"
        )));
    }
    Ok(m % 2 == 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SmVerdict {
    /// Transitive, contains a `q`-cycle with `m/2 < q < m-2` (hence primitive and
    /// containing `A_m` by Jordan), and not inside `A_m`.
    IsSm { jordan_prime: usize, witness: CycleType },
    Inconclusive { reason: String },
}

impl SmVerdict {
    pub fn is_sm(&self) -> bool {
        matches!(self, SmVerdict::IsSm { .. })
    }
}

/// A cycle type whose element has a power that is a single `q`-cycle: `q` occurs
/// exactly once and no other part is divisible by `q`.
fn jordan_prime(t: &CycleType, m: usize) -> Option<usize> {
    t.parts().iter().copied().find(|&q| {
        2 * q > m
            && q + 2 < m
            && is_prime(q as u64)
            && t.multiplicity(q) == 1
            && t.parts().iter().all(|&p| p == q || p % q != 0)
    })
}

/// One-sided check that a degree-`m` polynomial has Galois group `S_m`, from
/// Frobenius cycle types at unramified primes.
pub fn sm_certificate<'a>(
    types: impl IntoIterator<Item = &'a CycleType>,
    disc_is_square: bool,
    irreducible: bool,
    m: usize,
) -> SmVerdict {
    let inconclusive = |reason: &str| SmVerdict::Inconclusive {
        reason: reason.to_string(),
    };
    if !irreducible {
        return inconclusive("irreducibility not established");
    }
    if disc_is_square {
        return inconclusive("square discriminant");
    }
    for t in types {
        if let Some(q) = jordan_prime(t, m) {
            return SmVerdict::IsSm {
                jordan_prime: q,
                witness: t.clone(),
            };
        }
    }
    inconclusive("no prime cycle q with m/2 < q < m-2 observed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::{reduce_and_factor_degrees, IntPoly, Reduction};
    use crate::primes::Primes;

    #[test]
    fn normal_index_examples() {
        assert!(sm_normal_index_condition(11).unwrap());
        assert!(!sm_normal_index_condition(10).unwrap());
        assert!(sm_normal_index_condition(5).unwrap());
        assert!(sm_normal_index_condition(4).is_err());
    }

    #[test]
    fn x11_certified_by_a_seven_cycle() {
        let f = IntPoly::trinomial(11, 1);
        let types: Vec<CycleType> = Primes::new()
            .take(200)
            .filter_map(|q| match reduce_and_factor_degrees(&f, q).unwrap() {
                Reduction::Unramified(t) => Some(t),
                Reduction::Ramified => None,
            })
            .collect();
        let v = sm_certificate(&types, false, true, 11);
        let SmVerdict::IsSm { jordan_prime, ref witness } = v else {
            panic!("{v:?}");
        };
        assert_eq!(jordan_prime, 7);
        assert!(witness.contains(7));
        assert!(sm_certificate(&types, true, true, 11) != v);
        assert!(!sm_certificate(&types, false, false, 11).is_sm());
    }

    #[test]
    fn no_qualifying_prime_for_small_m() {
        let all = [CycleType::new(vec![5]), CycleType::new(vec![2, 3]), CycleType::new(vec![1, 4])];
        assert!(!sm_certificate(&all, false, true, 5).is_sm());
        assert!(!sm_certificate(&[CycleType::new(vec![2, 5])], false, true, 7).is_sm());
        assert!(!sm_certificate(&[CycleType::new(vec![7, 7])], false, true, 14).is_sm());
    }
}
