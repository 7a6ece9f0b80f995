//! Orbits, point stabilizers and transitivity by generator closure.

use std::collections::{HashMap, HashSet, VecDeque};

use super::{Label, RootSet, SignedPerm};

/// Orbits of the group generated by `gens` on `set`, each sorted by point index,
/// listed by smallest point.
pub fn orbits(gens: &[SignedPerm], set: RootSet, m: usize) -> Vec<Vec<Label>> {
    let maps: Vec<Vec<usize>> = gens.iter().map(|g| g.label_permutation(set)).collect();
    let n = set.len(m);
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[start] = id;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for map in &maps {
                let y = map[x];
                if comp[y] == usize::MAX {
                    comp[y] = id;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members.into_iter().map(|i| set.label(i, m)).collect());
    }
    out
}

/// Schreier generators of the stabilizer of `point`.
pub fn stabilizer_generators(gens: &[SignedPerm], set: RootSet, m: usize, point: Label) -> Vec<SignedPerm> {
    let start = set.index_of(point, m);
    let maps: Vec<Vec<usize>> = gens.iter().map(|g| g.label_permutation(set)).collect();
    // transversal[y] maps `point` to y
    let mut transversal: HashMap<usize, SignedPerm> = HashMap::from([(start, SignedPerm::identity(m))]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for (g, map) in gens.iter().zip(&maps) {
            let y = map[x];
            if !transversal.contains_key(&y) {
                let u = g.compose_unchecked(&transversal[&x]);
                transversal.insert(y, u);
                queue.push_back(y);
            }
        }
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut orbit: Vec<usize> = transversal.keys().copied().collect();
    orbit.sort_unstable();
    for y in orbit {
        for (g, map) in gens.iter().zip(&maps) {
            let gy = map[y];
            let schreier = transversal[&gy]
                .inverse()
                .compose_unchecked(&g.compose_unchecked(&transversal[&y]));
            if !schreier.is_identity() && seen.insert(schreier.clone()) {
                out.push(schreier);
            }
        }
    }
    out
}

/// Number of orbits of the stabilizer of `point` on `set`.
pub fn stabilizer_orbit_count(gens: &[SignedPerm], set: RootSet, m: usize, point: Label) -> usize {
    orbits(&stabilizer_generators(gens, set, m, point), set, m).len()
}

/// Largest `k ≤ cap` such that the action on ordered `k`-tuples of distinct
/// points is transitive (`0` when the action itself is intransitive).
pub fn transitivity_degree(gens: &[SignedPerm], set: RootSet, m: usize, cap: usize) -> usize {
    let n = set.len(m);
    let maps: Vec<Vec<usize>> = gens.iter().map(|g| g.label_permutation(set)).collect();
    let mut degree = 0;
    for k in 1..=cap.min(n) {
        let expected: u128 = (0..k).map(|i| (n - i) as u128).product();
        let start: Vec<usize> = (0..k).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for map in &maps {
                let img: Vec<usize> = t.iter().map(|&x| map[x]).collect();
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        if seen.len() as u128 != expected {
            break;
        }
        degree = k;
    }
    degree
}
