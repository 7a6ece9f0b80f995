//! Signed permutations `(ε, s)` of `{1, …, m}` acting on the labeled root sets
//! `R_u = {α_i}`, `R_h = {±β_i}` and `R_f = {0} ∪ R_h`, where `α_i = β_i²`.
//!
//! The action is `β_i ↦ ε(i)·β_{s(i)}`, `-β_i ↦ -ε(i)·β_{s(i)}`, `0 ↦ 0`, and on
//! `R_u` simply `α_i ↦ α_{s(i)}`. Indices are zero-based internally and one-based
//! in text and JSON.

mod action;
mod certify;
mod group;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use crate::intpoly::CycleType;

pub use action::{orbits, stabilizer_generators, stabilizer_orbit_count, transitivity_degree};
pub use certify::{sm_certificate, sm_normal_index_condition, SmVerdict};
pub use group::{
    hyperoctahedral_admits, wdm_admits, Census, GroupDescriptor, DEFAULT_ENUMERATION_BUDGET,
};

/// Element `(ε, s)` of the hyperoctahedral group `2^m·S_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SignedPermRepr", into = "SignedPermRepr")]
pub struct SignedPerm {
    s: Vec<usize>,
    neg: Vec<bool>,
}

/// JSON form: one-based images and `±1` signs.
#[derive(Serialize, Deserialize)]
struct SignedPermRepr {
    s: Vec<usize>,
    eps: Vec<i8>,
}

impl TryFrom<SignedPermRepr> for SignedPerm {
    type Error = Error;
    fn try_from(r: SignedPermRepr) -> Result<Self> {
        if r.s.iter().any(|&x| x == 0) {
            return Err(Error::InvalidParameter("images are one-based".into()));
        }
        SignedPerm::new(r.s.iter().map(|x| x - 1).collect(), r.eps)
    }
}

impl From<SignedPerm> for SignedPermRepr {
    fn from(g: SignedPerm) -> Self {
        SignedPermRepr {
            s: g.s.iter().map(|x| x + 1).collect(),
            eps: g.eps(),
        }
    }
}

pub(crate) fn is_bijection(s: &[usize]) -> bool {
    let mut seen = vec![false; s.len()];
    s.iter().all(|&x| x < s.len() && !std::mem::replace(&mut seen[x], true))
}

impl SignedPerm {
    /// `s` as zero-based images, `eps` entries in `{+1, -1}`.
    pub fn new(s: Vec<usize>, eps: Vec<i8>) -> Result<Self> {
        if s.len() != eps.len() {
            return Err(Error::DimensionMismatch {
                expected: s.len(),
                found: eps.len(),
            });
        }
        if !is_bijection(&s) {
            return Err(Error::InvalidParameter(format!("{s:?} is not a bijection")));
        }
        let neg = eps
            .iter()
            .map(|&e| match e {
                1 => Ok(false),
                -1 => Ok(true),
                _ => Err(Error::InvalidParameter(format!("sign {e} is not ±1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SignedPerm { s, neg })
    }

    pub(crate) fn from_parts(s: Vec<usize>, neg: Vec<bool>) -> Self {
        debug_assert!(is_bijection(&s) && s.len() == neg.len());
        SignedPerm { s, neg }
    }

    pub fn identity(m: usize) -> Self {
        SignedPerm {
            s: (0..m).collect(),
            neg: vec![false; m],
        }
    }

    /// `(1, s)`
    pub fn unsigned(s: Vec<usize>) -> Result<Self> {
        let m = s.len();
        Self::new(s, vec![1; m])
    }

    /// `(ε, id)` flipping exactly the listed (zero-based) indices.
    pub fn flips(m: usize, indices: &[usize]) -> Self {
        let mut neg = vec![false; m];
        for &i in indices {
            neg[i] = !neg[i];
        }
        SignedPerm {
            s: (0..m).collect(),
            neg,
        }
    }

    pub fn m(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self) -> &[usize] {
        &self.s
    }

    pub fn eps(&self) -> Vec<i8> {
        self.neg.iter().map(|&n| if n { -1 } else { 1 }).collect()
    }

    pub fn is_negative_at(&self, i: usize) -> bool {
        self.neg[i]
    }

    pub fn is_identity(&self) -> bool {
        self.s.iter().enumerate().all(|(i, &x)| i == x) && !self.neg.iter().any(|&n| n)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &SignedPerm) -> Result<SignedPerm> {
        if self.m() != other.m() {
            return Err(Error::DegreeMismatch {
                left: self.m(),
                right: other.m(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &SignedPerm) -> SignedPerm {
        let s = other.s.iter().map(|&j| self.s[j]).collect();
        let neg = other
            .s
            .iter()
            .zip(&other.neg)
            .map(|(&j, &n)| n ^ self.neg[j])
            .collect();
        SignedPerm { s, neg }
    }

    pub fn inverse(&self) -> SignedPerm {
        let m = self.m();
        let mut s = vec![0; m];
        let mut neg = vec![false; m];
        for i in 0..m {
            s[self.s[i]] = i;
            neg[self.s[i]] = self.neg[i];
        }
        SignedPerm { s, neg }
    }

    /// `∏ ε(i)`
    pub fn sign_product(&self) -> i8 {
        if self.neg.iter().filter(|&&n| n).count() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Membership in `W(D_m)`: an even number of sign changes.
    pub fn in_wdm(&self) -> bool {
        self.sign_product() == 1
    }

    /// `κ_u((ε, s)) = s`, the induced permutation of the roots of `u`.
    pub fn kappa_u(&self) -> Vec<usize> {
        self.s.clone()
    }

    /// Cycles of `s`, each paired with the parity of sign flips along it
    /// (`true` = sign product `-1`).
    pub fn signed_cycles(&self) -> Vec<(Vec<usize>, bool)> {
        let m = self.m();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut odd = false;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                odd ^= self.neg[i];
                i = self.s[i];
            }
            out.push((cycle, odd));
        }
        out
    }

    /// Cycle type of the induced permutation of the `2m` points of `R_h`: a cycle
    /// of `s` of length `ℓ` gives `{ℓ, ℓ}` when its signs multiply to `+1` and
    /// `{2ℓ}` otherwise.
    pub fn induced_cycle_type(&self) -> CycleType {
        let mut parts = Vec::with_capacity(self.m() * 2);
        for (cycle, negative) in self.signed_cycles() {
            let l = cycle.len();
            if negative {
                parts.push(2 * l);
            } else {
                parts.push(l);
                parts.push(l);
            }
        }
        CycleType::new(parts)
    }

    /// Image of a label.
    pub fn apply(&self, label: Label) -> Label {
        match label {
            Label::Zero => Label::Zero,
            Label::Alpha(i) => Label::Alpha(self.s[i]),
            Label::Beta { index, negative } => Label::Beta {
                index: self.s[index],
                negative: negative ^ self.neg[index],
            },
        }
    }

    /// The permutation induced on the points of `set`, as images of point indices.
    pub fn label_permutation(&self, set: RootSet) -> Vec<usize> {
        (0..set.len(self.m()))
            .map(|i| set.index_of(self.apply(set.label(i, self.m())), self.m()))
            .collect()
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.m() {
            if i > 0 {
                write!(f, " ")?;
            }
            let sign = if self.neg[i] { "-" } else { "" };
            write!(f, "{}->{}{}", i + 1, sign, self.s[i] + 1)?;
        }
        write!(f, ")")
    }
}

/// The three labeled root sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootSet {
    /// `{α_1, …, α_m}`, the roots of `u`.
    Ru,
    /// `{±β_1, …, ±β_m}`, the roots of `h = u(x²)`.
    Rh,
    /// `{0} ∪ R_h`, the roots of `f = x·h`.
    Rf,
}

impl RootSet {
    pub fn len(self, m: usize) -> usize {
        match self {
            RootSet::Ru => m,
            RootSet::Rh => 2 * m,
            RootSet::Rf => 2 * m + 1,
        }
    }

    pub fn is_empty(self, m: usize) -> bool {
        self.len(m) == 0
    }

    /// Point index → label. On `R_h`/`R_f`, `β_i` sits at `2i` and `-β_i` at `2i+1`;
    /// `0` is the last point of `R_f`.
    pub fn label(self, idx: usize, m: usize) -> Label {
        match self {
            RootSet::Ru => Label::Alpha(idx),
            RootSet::Rf if idx == 2 * m => Label::Zero,
            RootSet::Rh | RootSet::Rf => Label::Beta {
                index: idx / 2,
                negative: idx % 2 == 1,
            },
        }
    }

    pub fn labels(self, m: usize) -> Vec<Label> {
        (0..self.len(m)).map(|i| self.label(i, m)).collect()
    }

    pub fn index_of(self, label: Label, m: usize) -> usize {
        match (self, label) {
            (RootSet::Ru, Label::Alpha(i)) => i,
            (RootSet::Rh | RootSet::Rf, Label::Beta { index, negative }) => {
                2 * index + negative as usize
            }
            (RootSet::Rf, Label::Zero) => 2 * m,
            _ => panic!("label {label} does not belong to {self:?}"),
        }
    }
}

/// A symbolic root: `0`, `±β_i`, or `α_i = β_i²` (zero-based `i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Zero,
    Beta { index: usize, negative: bool },
    Alpha(usize),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Zero => write!(f, "0"),
            Label::Beta { index, negative } => {
                write!(f, "{}b{}", if *negative { "-" } else { "" }, index + 1)
            }
            Label::Alpha(i) => write!(f, "a{}", i + 1),
        }
    }
}

/// Cycle type of an arbitrary permutation given by its images.
pub fn permutation_cycle_type(images: &[usize]) -> CycleType {
    let mut seen = vec![false; images.len()];
    let mut parts = Vec::new();
    for start in 0..images.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = images[i];
            len += 1;
        }
        if len > 0 {
            parts.push(len);
        }
    }
    CycleType::new(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_signed(m: usize, rng: &mut impl Rng) -> SignedPerm {
        let mut s: Vec<usize> = (0..m).collect();
        s.shuffle(rng);
        let eps = (0..m).map(|_| if rng.gen_bool(0.5) { -1 } else { 1 }).collect();
        SignedPerm::new(s, eps).unwrap()
    }

    #[test]
    fn compose_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = random_signed(5, &mut rng);
        assert_eq!(SignedPerm::identity(5).compose(&g).unwrap(), g);
        assert_eq!(g.compose(&SignedPerm::identity(5)).unwrap(), g);
        assert!(g.compose(&SignedPerm::identity(4)).is_err());
        for _ in 0..100 {
            let g = random_signed(7, &mut rng);
            assert!(g.compose(&g.inverse()).unwrap().is_identity());
        }
    }

    #[test]
    fn conjugating_sign_changes_by_permutations() {
        // (1, s)·(ε, id)·(1, s)⁻¹ = (ε ∘ s⁻¹, id)
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let m = 5;
            let mut s: Vec<usize> = (0..m).collect();
            s.shuffle(&mut rng);
            let eps: Vec<i8> = (0..m).map(|_| if rng.gen_bool(0.5) { -1 } else { 1 }).collect();
            let perm = SignedPerm::unsigned(s.clone()).unwrap();
            let flips = SignedPerm::new((0..m).collect(), eps.clone()).unwrap();
            let conj = perm.compose(&flips).unwrap().compose(&perm.inverse()).unwrap();
            let mut s_inv = vec![0; m];
            for (i, &x) in s.iter().enumerate() {
                s_inv[x] = i;
            }
            let expected_eps: Vec<i8> = (0..m).map(|i| eps[s_inv[i]]).collect();
            assert_eq!(conj, SignedPerm::new((0..m).collect(), expected_eps).unwrap());
        }
    }

    #[test]
    fn composition_matches_label_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = random_signed(6, &mut rng);
            let b = random_signed(6, &mut rng);
            let ab = a.compose(&b).unwrap();
            for set in [RootSet::Ru, RootSet::Rh, RootSet::Rf] {
                let pa = a.label_permutation(set);
                let pb = b.label_permutation(set);
                let composed: Vec<usize> = pb.iter().map(|&x| pa[x]).collect();
                assert_eq!(ab.label_permutation(set), composed);
            }
        }
    }

    #[test]
    fn wdm_membership_examples() {
        assert!(SignedPerm::identity(4).in_wdm());
        assert!(!SignedPerm::flips(4, &[0]).in_wdm());
        assert!(SignedPerm::flips(4, &[0, 2]).in_wdm());
    }

    #[test]
    fn kappa_examples() {
        let g = SignedPerm::flips(5, &[1, 3, 4]);
        assert_eq!(g.kappa_u(), vec![0, 1, 2, 3, 4]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let a = random_signed(6, &mut rng);
            let b = random_signed(6, &mut rng);
            let ka = a.kappa_u();
            let kb = b.kappa_u();
            let kab: Vec<usize> = kb.iter().map(|&x| ka[x]).collect();
            assert_eq!(a.compose(&b).unwrap().kappa_u(), kab);
        }
    }

    #[test]
    fn induced_cycle_type_examples() {
        assert_eq!(SignedPerm::identity(3).induced_cycle_type(), CycleType::new(vec![1; 6]));
        let three_cycle = SignedPerm::unsigned(vec![1, 2, 0]).unwrap();
        assert_eq!(three_cycle.induced_cycle_type(), CycleType::new(vec![3, 3]));
        // s = (1 2), ε = (-1, +1, -1): sign product +1, lies in W(D_3).
        let g = SignedPerm::new(vec![1, 0, 2], vec![-1, 1, -1]).unwrap();
        assert!(g.in_wdm());
        assert_eq!(g.induced_cycle_type(), CycleType::new(vec![2, 4]));
        assert_eq!(
            permutation_cycle_type(&g.label_permutation(RootSet::Rh)),
            CycleType::new(vec![2, 4])
        );
    }

    #[test]
    fn serde_uses_one_based_images() {
        let g = SignedPerm::new(vec![1, 0, 2], vec![-1, 1, -1]).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"s":[2,1,3],"eps":[-1,1,-1]}"#);
        assert_eq!(serde_json::from_str::<SignedPerm>(&json).unwrap(), g);
        assert!(serde_json::from_str::<SignedPerm>(r#"{"s":[1,1],"eps":[1,1]}"#).is_err());
        assert!(serde_json::from_str::<SignedPerm>(r#"{"s":[1,2],"eps":[1,2]}"#).is_err());
    }

    #[test]
    fn labels_round_trip() {
        for set in [RootSet::Ru, RootSet::Rh, RootSet::Rf] {
            let labels = set.labels(4);
            assert_eq!(labels.len(), set.len(4));
            for (i, l) in labels.iter().enumerate() {
                assert_eq!(set.index_of(*l, 4), i);
            }
        }
    }

    proptest! {
        #[test]
        fn induced_type_matches_brute_force(m in 1usize..=8, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_signed(m, &mut rng);
            prop_assert_eq!(
                g.induced_cycle_type(),
                permutation_cycle_type(&g.label_permutation(RootSet::Rh))
            );
        }

        #[test]
        fn sign_product_is_a_homomorphism(m in 1usize..=8, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_signed(m, &mut rng);
            let b = random_signed(m, &mut rng);
            prop_assert_eq!(a.compose(&b).unwrap().in_wdm(), a.in_wdm() == b.in_wdm());
        }
    }
}
