use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{is_bijection, SignedPerm};
use crate::error::{Error, Result};
use crate::intpoly::CycleType;

/// `|W(D_8)|`; the largest group enumerated without an explicit override.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 5_160_960;

/// A signed-permutation group by name and degree, or by generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum GroupDescriptor {
    #[serde(rename = "S_m")]
    Sm { m: usize },
    #[serde(rename = "A_m")]
    Am { m: usize },
    /// All sign changes.
    #[serde(rename = "E_m")]
    Em { m: usize },
    /// Sign changes with an even number of flips.
    #[serde(rename = "E_m0")]
    Em0 { m: usize },
    WDm { m: usize },
    /// `2^m·G` for the permutation group `G ⊆ S_m` generated by `generators`
    /// (one-based images).
    #[serde(rename = "TwoM_G")]
    TwoMG { m: usize, generators: Vec<Vec<usize>> },
    Generated { m: usize, generators: Vec<SignedPerm> },
}

fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

/// Lexicographic successor; false after the last permutation.
fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn is_even(s: &[usize]) -> bool {
    let mut seen = vec![false; s.len()];
    let mut cycles = 0;
    for start in 0..s.len() {
        if !seen[start] {
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = s[i];
            }
        }
    }
    (s.len() - cycles) % 2 == 0
}

/// Closure of a set of permutations of `{0..m-1}` under composition.
fn perm_closure(m: usize, gens: &[Vec<usize>], budget: u128) -> Result<Vec<Vec<usize>>> {
    let id: Vec<usize> = (0..m).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
            if seen.insert(q.clone()) {
                if seen.len() as u128 > budget {
                    return Err(Error::BudgetExceeded {
                        order: seen.len() as u128,
                        budget,
                    });
                }
                queue.push_back(q);
            }
        }
        out.push(p);
    }
    Ok(out)
}

fn signed_closure(m: usize, gens: &[SignedPerm], budget: u128) -> Result<Vec<SignedPerm>> {
    let id = SignedPerm::identity(m);
    let mut seen: HashSet<SignedPerm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.compose_unchecked(&p);
            if !seen.contains(&q) {
                seen.insert(q.clone());
                if seen.len() as u128 > budget {
                    return Err(Error::BudgetExceeded {
                        order: seen.len() as u128,
                        budget,
                    });
                }
                queue.push_back(q);
            }
        }
        out.push(p);
    }
    Ok(out)
}

fn transposition(m: usize, a: usize, b: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (0..m).collect();
    s.swap(a, b);
    s
}

fn long_cycle(m: usize) -> Vec<usize> {
    (0..m).map(|i| (i + 1) % m).collect()
}

fn sm_generators(m: usize) -> Vec<Vec<usize>> {
    if m < 2 {
        return Vec::new();
    }
    vec![transposition(m, 0, 1), long_cycle(m)]
}

fn am_generators(m: usize) -> Vec<Vec<usize>> {
    // 3-cycles (1 2 k)
    (2..m)
        .map(|k| {
            let mut s: Vec<usize> = (0..m).collect();
            s[0] = 1;
            s[1] = k;
            s[k] = 0;
            s
        })
        .collect()
}

impl GroupDescriptor {
    pub fn m(&self) -> usize {
        match self {
            GroupDescriptor::Sm { m }
            | GroupDescriptor::Am { m }
            | GroupDescriptor::Em { m }
            | GroupDescriptor::Em0 { m }
            | GroupDescriptor::WDm { m }
            | GroupDescriptor::TwoMG { m, .. }
            | GroupDescriptor::Generated { m, .. } => *m,
        }
    }

    /// Checks generator shapes.
    pub fn validate(&self) -> Result<()> {
        let m = self.m();
        match self {
            GroupDescriptor::TwoMG { generators, .. } => {
                for g in generators {
                    let zero_based: Vec<usize> = g.iter().map(|x| x.wrapping_sub(1)).collect();
                    if g.len() != m || !is_bijection(&zero_based) {
                        return Err(Error::InvalidParameter(format!(
                            "{g:?} is not a permutation of 1..{m}"
                        )));
                    }
                }
            }
            GroupDescriptor::Generated { generators, .. } => {
                if let Some(g) = generators.iter().find(|g| g.m() != m) {
                    return Err(Error::DegreeMismatch { left: m, right: g.m() });
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn base_permutations(&self) -> Vec<Vec<usize>> {
        let m = self.m();
        match self {
            GroupDescriptor::TwoMG { generators, .. } => generators
                .iter()
                .map(|g| g.iter().map(|x| x - 1).collect())
                .collect(),
            _ => sm_generators(m),
        }
    }

    /// A generating set.
    pub fn generators(&self) -> Vec<SignedPerm> {
        let m = self.m();
        let unsigned = |s: Vec<usize>| SignedPerm::from_parts(s, vec![false; m]);
        match self {
            GroupDescriptor::Sm { .. } => sm_generators(m).into_iter().map(unsigned).collect(),
            GroupDescriptor::Am { .. } => am_generators(m).into_iter().map(unsigned).collect(),
            GroupDescriptor::Em { .. } => (0..m).map(|i| SignedPerm::flips(m, &[i])).collect(),
            GroupDescriptor::Em0 { .. } => (1..m).map(|i| SignedPerm::flips(m, &[0, i])).collect(),
            GroupDescriptor::WDm { .. } => {
                let mut g: Vec<SignedPerm> = sm_generators(m).into_iter().map(unsigned).collect();
                if m >= 2 {
                    g.push(SignedPerm::flips(m, &[0, 1]));
                }
                g
            }
            GroupDescriptor::TwoMG { .. } => {
                let mut g: Vec<SignedPerm> =
                    self.base_permutations().into_iter().map(unsigned).collect();
                g.extend((0..m).map(|i| SignedPerm::flips(m, &[i])));
                g
            }
            GroupDescriptor::Generated { generators, .. } => generators.clone(),
        }
    }

    /// Group order. `Generated` and `TwoMG` are closed under the budget.
    pub fn order(&self, budget: u128) -> Result<u128> {
        let m = self.m();
        Ok(match self {
            GroupDescriptor::Sm { .. } => factorial(m),
            GroupDescriptor::Am { .. } => (factorial(m) / 2).max(1),
            GroupDescriptor::Em { .. } => 1u128 << m,
            GroupDescriptor::Em0 { .. } => (1u128 << m) / 2,
            GroupDescriptor::WDm { .. } => ((1u128 << m) / 2).max(1) * factorial(m),
            GroupDescriptor::TwoMG { .. } => {
                (1u128 << m) * perm_closure(m, &self.base_permutations(), budget)?.len() as u128
            }
            GroupDescriptor::Generated { generators, .. } => {
                signed_closure(m, generators, budget)?.len() as u128
            }
        })
    }

    /// Calls `visit(s, neg)` once for every element.
    pub fn for_each_element(
        &self,
        budget: u128,
        mut visit: impl FnMut(&[usize], &[bool]),
    ) -> Result<()> {
        self.validate()?;
        let m = self.m();
        let order = self.order(budget)?;
        if order > budget {
            return Err(Error::BudgetExceeded { order, budget });
        }
        if let GroupDescriptor::Generated { generators, .. } = self {
            for g in signed_closure(m, generators, budget)? {
                visit(g.s(), &g.neg);
            }
            return Ok(());
        }
        let perms: Vec<Vec<usize>> = match self {
            GroupDescriptor::Em { .. } | GroupDescriptor::Em0 { .. } => vec![(0..m).collect()],
            GroupDescriptor::TwoMG { .. } => perm_closure(m, &self.base_permutations(), budget)?,
            _ => {
                let mut all = Vec::new();
                let mut s: Vec<usize> = (0..m).collect();
                loop {
                    if !matches!(self, GroupDescriptor::Am { .. }) || is_even(&s) {
                        all.push(s.clone());
                    }
                    if !next_permutation(&mut s) {
                        break;
                    }
                }
                all
            }
        };
        let masks: Vec<Vec<bool>> = {
            let all_masks = || (0u64..(1u64 << m)).map(|mask| (0..m).map(|i| mask >> i & 1 == 1).collect::<Vec<bool>>());
            match self {
                GroupDescriptor::Sm { .. } | GroupDescriptor::Am { .. } => vec![vec![false; m]],
                GroupDescriptor::Em { .. } | GroupDescriptor::TwoMG { .. } => all_masks().collect(),
                _ => all_masks()
                    .filter(|v| v.iter().filter(|&&b| b).count() % 2 == 0)
                    .collect(),
            }
        };
        for s in &perms {
            for neg in &masks {
                visit(s, neg);
            }
        }
        Ok(())
    }

    /// All elements, under the budget.
    pub fn elements(&self, budget: u128) -> Result<Vec<SignedPerm>> {
        let mut out = Vec::new();
        self.for_each_element(budget, |s, neg| {
            out.push(SignedPerm::from_parts(s.to_vec(), neg.to_vec()))
        })?;
        Ok(out)
    }

    /// Exact census of induced cycle types on the `2m` points of `R_h`.
    pub fn census(&self, budget: u128) -> Result<Census> {
        let m = self.m();
        let mut counts: BTreeMap<CycleType, u128> = BTreeMap::new();
        let mut order = 0u128;
        let mut seen = vec![false; m];
        let mut parts = Vec::with_capacity(2 * m);
        self.for_each_element(budget, |s, neg| {
            order += 1;
            seen.iter_mut().for_each(|x| *x = false);
            parts.clear();
            for start in 0..m {
                if seen[start] {
                    continue;
                }
                let (mut len, mut odd, mut i) = (0, false, start);
                while !seen[i] {
                    seen[i] = true;
                    odd ^= neg[i];
                    i = s[i];
                    len += 1;
                }
                if odd {
                    parts.push(2 * len);
                } else {
                    parts.push(len);
                    parts.push(len);
                }
            }
            *counts.entry(CycleType::new(parts.clone())).or_default() += 1;
        })?;
        Ok(Census { order, counts })
    }
}

/// Exact class sizes of induced cycle types.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub order: u128,
    #[serde(with = "census_counts")]
    pub counts: BTreeMap<CycleType, u128>,
}

impl Census {
    pub fn frequency(&self, t: &CycleType) -> f64 {
        self.counts.get(t).copied().unwrap_or(0) as f64 / self.order as f64
    }
}

mod census_counts {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        cycle_type: CycleType,
        count: u128,
    }

    pub fn serialize<S: Serializer>(map: &BTreeMap<CycleType, u128>, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_seq(map.iter().map(|(t, &count)| Entry {
            cycle_type: t.clone(),
            count,
        }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<BTreeMap<CycleType, u128>, D::Error> {
        let entries = Vec::<Entry>::deserialize(de)?;
        Ok(entries.into_iter().map(|e| (e.cycle_type, e.count)).collect())
    }
}

/// Whether `t` (on `2m` points) is the induced type of some element of `W(D_m)`:
/// parts split into pairs `{ℓ, ℓ}` (positive cycles of length `ℓ`) and single even
/// parts `2ℓ` (negative cycles), with an even number of negative cycles.
pub fn wdm_admits(t: &CycleType, m: usize) -> bool {
    admits(t, m, true)
}

/// As [`wdm_admits`] for the full hyperoctahedral group `2^m·S_m`.
pub fn hyperoctahedral_admits(t: &CycleType, m: usize) -> bool {
    admits(t, m, false)
}

fn admits(t: &CycleType, m: usize, even_negatives: bool) -> bool {
    if t.total() != 2 * m {
        return false;
    }
    let max = t.parts().last().copied().unwrap_or(0);
    let mut mult = vec![0usize; max + 1];
    for &p in t.parts() {
        mult[p] += 1;
    }
    // Odd parts come only from positive cycles and must pair up. A part of even
    // length is a negative cycle of half that length or half of a positive pair.
    // Track the reachable parities of the number of negative cycles.
    let mut parities = [true, false];
    for (len, &count) in mult.iter().enumerate() {
        if count == 0 {
            continue;
        }
        if len % 2 == 1 {
            if count % 2 == 1 {
                return false;
            }
            continue;
        }
        // k negatives of length len/2, with count - k even.
        let mut next = [false, false];
        for k in (count % 2..=count).step_by(2) {
            for (par, &ok) in parities.iter().enumerate() {
                if ok {
                    next[(par + k) % 2] = true;
                }
            }
        }
        parities = next;
    }
    !even_negatives || parities[0]
}
