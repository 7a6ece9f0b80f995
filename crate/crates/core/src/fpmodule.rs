//! `F_p`-valued functions on the root sets as modules over signed-permutation
//! groups: action matrices, commutant dimensions, and the heart check over `F_2`.
//!
//! A group element acts on functions by `(g·φ)(α) = φ(g⁻¹α)`, so the matrix of
//! `g` on the ambient space sends the basis function `e_α` to `e_{gα}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::{inv_mod, is_prime};
use crate::prymcalc::lambda_rank;
use crate::signedperm::{stabilizer_orbit_count, GroupDescriptor, Label, RootSet, SignedPerm};

/// Dense matrix over `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    p: u64,
    rows: Vec<Vec<u64>>,
}

impl TryFrom<MatrixRepr> for FpMatrix {
    type Error = Error;
    fn try_from(r: MatrixRepr) -> Result<Self> {
        FpMatrix::from_rows(r.p, r.rows)
    }
}

impl From<FpMatrix> for MatrixRepr {
    fn from(m: FpMatrix) -> Self {
        MatrixRepr {
            p: m.p,
            rows: m.to_rows(),
        }
    }
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, rows: Vec<Vec<u64>>) -> Result<Self> {
        if p < 2 || !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        let n = rows.len();
        Ok(FpMatrix {
            p,
            rows: n,
            cols,
            data: rows.into_iter().flatten().map(|x| x % p).collect(),
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[u64]>::to_vec).collect()
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows || self.p != other.p {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let p = self.p;
        let mut out = FpMatrix::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(k, j)) % p;
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<u64>> = self.to_rows();
        Echelon::from_rows(self.p, self.cols, rows).rank()
    }

    /// Basis of `{v : self·v = 0}`.
    pub fn null_space(&self) -> Vec<Vec<u64>> {
        Echelon::from_rows(self.p, self.cols, self.to_rows()).null_space()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.p, self.rows)
    }
}

/// Reduced row echelon form built one row at a time.
struct Echelon {
    p: u64,
    cols: usize,
    /// (pivot column, row with a 1 at the pivot and 0 at every other pivot)
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    fn new(p: u64, cols: usize) -> Self {
        Echelon {
            p,
            cols,
            rows: Vec::new(),
        }
    }

    fn from_rows(p: u64, cols: usize, rows: Vec<Vec<u64>>) -> Self {
        let mut e = Self::new(p, cols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns whether the rank grew.
    fn insert(&mut self, mut row: Vec<u64>) -> bool {
        let p = self.p;
        for (pc, prow) in &self.rows {
            let f = row[*pc];
            if f != 0 {
                for (x, &y) in row.iter_mut().zip(prow) {
                    if y != 0 {
                        *x = (*x + (p - f) * y) % p;
                    }
                }
            }
        }
        let Some(pc) = row.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(row[pc], p);
        for x in row.iter_mut() {
            *x = *x * inv % p;
        }
        for (_, prow) in self.rows.iter_mut() {
            let f = prow[pc];
            if f != 0 {
                for (x, &y) in prow.iter_mut().zip(&row) {
                    if y != 0 {
                        *x = (*x + (p - f) * y) % p;
                    }
                }
            }
        }
        self.rows.push((pc, row));
        true
    }

    fn null_space(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for (pc, _) in &self.rows {
            is_pivot[*pc] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![0u64; self.cols];
                v[free] = 1;
                for (pc, row) in &self.rows {
                    v[*pc] = (p - row[free]) % p;
                }
                v
            })
            .collect()
    }
}

/// The named function spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    /// All functions on `R_h`.
    FullRh,
    /// Functions on `R_f` with sum zero.
    Vf,
    /// Odd functions on `R_f`.
    VfMinus,
    /// Even functions on `R_f` with sum zero.
    VfPlus,
    /// Even functions on `R_h`.
    WhPlus,
    /// Even functions on `R_h` with sum zero.
    WhPlus0,
    /// Odd functions on `R_h`.
    WhMinus,
    /// Constant functions on `R_h`.
    Constants,
}

impl SpaceKind {
    pub fn ambient(self) -> RootSet {
        match self {
            SpaceKind::Vf | SpaceKind::VfMinus | SpaceKind::VfPlus => RootSet::Rf,
            _ => RootSet::Rh,
        }
    }
}

/// A subspace of `F_p^{R}` for `R = R_h` or `R_f`, given by basis columns.
#[derive(Debug, Clone)]
pub struct FpSpace {
    p: u64,
    m: usize,
    kind: SpaceKind,
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    /// Inverse of the basis restricted to the pivot coordinates.
    coord: FpMatrix,
}

fn beta_idx(i: usize, negative: bool) -> usize {
    2 * i + negative as usize
}

impl FpSpace {
    pub fn new(kind: SpaceKind, m: usize, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("m must be positive".into()));
        }
        let n = kind.ambient().len(m);
        let zero = 2 * m;
        let neg1 = p - 1;
        let vec_with = |entries: &[(usize, u64)]| {
            let mut v = vec![0u64; n];
            for &(i, x) in entries {
                v[i] = (v[i] + x) % p;
            }
            v
        };
        let basis: Vec<Vec<u64>> = match kind {
            SpaceKind::FullRh => (0..n).map(|i| vec_with(&[(i, 1)])).collect(),
            SpaceKind::Vf => (0..2 * m).map(|i| vec_with(&[(i, 1), (zero, neg1)])).collect(),
            SpaceKind::VfMinus | SpaceKind::WhMinus => (0..m)
                .map(|i| vec_with(&[(beta_idx(i, false), 1), (beta_idx(i, true), neg1)]))
                .collect(),
            SpaceKind::VfPlus => (0..m)
                .map(|i| {
                    vec_with(&[
                        (beta_idx(i, false), 1),
                        (beta_idx(i, true), 1),
                        (zero, (2 * neg1) % p),
                    ])
                })
                .collect(),
            SpaceKind::WhPlus => (0..m)
                .map(|i| vec_with(&[(beta_idx(i, false), 1), (beta_idx(i, true), 1)]))
                .collect(),
            SpaceKind::WhPlus0 => (0..m - 1)
                .map(|i| {
                    vec_with(&[
                        (beta_idx(i, false), 1),
                        (beta_idx(i, true), 1),
                        (beta_idx(m - 1, false), neg1),
                        (beta_idx(m - 1, true), neg1),
                    ])
                })
                .collect(),
            SpaceKind::Constants => vec![vec![1; n]],
        };
        Self::from_basis(kind, m, p, basis)
    }

    fn from_basis(kind: SpaceKind, m: usize, p: u64, basis: Vec<Vec<u64>>) -> Result<Self> {
        let d = basis.len();
        // Pivot coordinates: columns of the echelon form of the basis rows.
        let n = kind.ambient().len(m);
        let ech = Echelon::from_rows(p, n, basis.clone());
        if ech.rank() != d {
            return Err(Error::InvalidParameter(format!(
                "{kind:?} basis is degenerate over F_{p} for m = {m}"
            )));
        }
        let mut pivots: Vec<usize> = ech.rows.iter().map(|(pc, _)| *pc).collect();
        pivots.sort_unstable();
        // Square matrix B_S (rows = pivots, cols = basis vectors), inverted by
        // Gauss–Jordan on [B_S | I].
        let mut aug: Vec<Vec<u64>> = pivots
            .iter()
            .enumerate()
            .map(|(r, &pi)| {
                let mut row: Vec<u64> = basis.iter().map(|b| b[pi]).collect();
                row.extend((0..d).map(|c| (c == r) as u64));
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d)
                .find(|&r| aug[r][col] != 0)
                .expect("pivot rows give an invertible minor");
            aug.swap(col, piv);
            let inv = inv_mod(aug[col][col], p);
            for x in aug[col].iter_mut() {
                *x = *x * inv % p;
            }
            for r in 0..d {
                if r != col && aug[r][col] != 0 {
                    let f = aug[r][col];
                    let pivot_row = aug[col].clone();
                    for (x, y) in aug[r].iter_mut().zip(pivot_row) {
                        *x = (*x + (p - f) * y) % p;
                    }
                }
            }
        }
        let coord = FpMatrix::from_rows(p, aug.into_iter().map(|r| r[d..].to_vec()).collect())?;
        Ok(FpSpace {
            p,
            m,
            kind,
            basis,
            pivots,
            coord,
        })
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    /// Coordinates of an ambient vector that lies in the space.
    pub fn coordinates(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let d = self.dim();
        (0..d)
            .map(|i| {
                self.pivots
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (k, &pi)| (acc + self.coord.get(i, k) * v[pi]) % p)
            })
            .collect()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let c = self.coordinates(v);
        let p = self.p;
        (0..v.len()).all(|k| {
            self.basis
                .iter()
                .zip(&c)
                .fold(0, |acc, (b, &x)| (acc + b[k] * x) % p)
                == v[k] % p
        })
    }
}

/// Matrix of `g` on `space` in its basis.
pub fn action_matrix(g: &SignedPerm, space: &FpSpace) -> Result<FpMatrix> {
    if g.m() != space.m {
        return Err(Error::DimensionMismatch {
            expected: space.m,
            found: g.m(),
        });
    }
    let set = space.kind.ambient();
    let images = g.label_permutation(set);
    let d = space.dim();
    let mut out = FpMatrix::zeros(space.p, d, d);
    for (j, b) in space.basis.iter().enumerate() {
        let mut w = vec![0u64; b.len()];
        for (a, &x) in b.iter().enumerate() {
            w[images[a]] = x;
        }
        debug_assert!(space.contains(&w), "{:?} is not invariant", space.kind);
        for (i, c) in space.coordinates(&w).into_iter().enumerate() {
            out.set(i, j, c);
        }
    }
    Ok(out)
}

/// `D_2`: `φ(α) ↦ φ(-α)`, the action of the element flipping every sign.
pub fn d2_operator(space: &FpSpace) -> FpMatrix {
    let all: Vec<usize> = (0..space.m).collect();
    action_matrix(&SignedPerm::flips(space.m, &all), space).expect("same m")
}

/// Dimension of `{X : X·A_g = A_g·X for every generator g}`. Monomial actions
/// (every space here except `V_f`) go through [`monomial_commutant_dim`]; the rest
/// through [`dense_commutant_dim`].
pub fn commutant_dim(generators: &[SignedPerm], space: &FpSpace) -> Result<usize> {
    let mats = generators
        .iter()
        .map(|g| action_matrix(g, space))
        .collect::<Result<Vec<_>>>()?;
    let monomial: Option<Vec<Monomial>> = mats.iter().map(Monomial::from_matrix).collect();
    Ok(match monomial {
        Some(ms) => monomial_commutant_dim(space.dim(), space.p, &ms),
        None => dense_commutant_dim(space.dim(), space.p, &mats),
    })
}

/// Commutant dimension by exact elimination on the `d² × d²` commutation system.
pub fn dense_commutant_dim(d: usize, p: u64, mats: &[FpMatrix]) -> usize {
    let mut ech = Echelon::new(p, d * d);
    for a in mats {
        // (XA - AX)_{ij} = Σ_k X_{ik} A_{kj} - Σ_k A_{ik} X_{kj}; unknown X_{ab} at a·d + b.
        for i in 0..d {
            for j in 0..d {
                let mut row = vec![0u64; d * d];
                for k in 0..d {
                    let x = a.get(k, j);
                    if x != 0 {
                        row[i * d + k] = (row[i * d + k] + x) % p;
                    }
                    let y = a.get(i, k);
                    if y != 0 {
                        row[k * d + j] = (row[k * d + j] + p - y) % p;
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    ech.insert(row);
                }
                if ech.rank() == d * d {
                    return 0;
                }
            }
        }
    }
    d * d - ech.rank()
}

/// `A e_j = scale[j]·e_{target[j]}`.
#[derive(Debug, Clone)]
pub struct Monomial {
    target: Vec<usize>,
    scale: Vec<u64>,
}

impl Monomial {
    pub fn from_matrix(a: &FpMatrix) -> Option<Monomial> {
        let d = a.cols();
        let mut target = Vec::with_capacity(d);
        let mut scale = Vec::with_capacity(d);
        for j in 0..d {
            let mut nz = (0..a.rows()).filter(|&i| a.get(i, j) != 0);
            let i = nz.next()?;
            if nz.next().is_some() {
                return None;
            }
            target.push(i);
            scale.push(a.get(i, j));
        }
        Some(Monomial { target, scale })
    }
}

/// Commutant of monomial matrices. Commuting with `A` means
/// `X_{σi,σj} = a_i·a_j⁻¹·X_{ij}`, so entries are tied along orbits of index
/// pairs; an orbit whose relations force a nontrivial scalar on some entry
/// contributes nothing, every other orbit one dimension.
pub fn monomial_commutant_dim(d: usize, p: u64, mats: &[Monomial]) -> usize {
    // Weighted union-find: value(x) = weight[x]·value(parent[x]).
    let n = d * d;
    let mut parent: Vec<usize> = (0..n).collect();
    let mut weight = vec![1u64; n];
    let mut dead = vec![false; n];
    fn find(x: usize, parent: &mut [usize], weight: &mut [u64], p: u64) -> (usize, u64) {
        let mut path = Vec::new();
        let mut r = x;
        while parent[r] != r {
            path.push(r);
            r = parent[r];
        }
        // Compress from the top down so each weight becomes relative to the root.
        for &y in path.iter().rev() {
            let par = parent[y];
            if par != r {
                weight[y] = weight[y] * weight[par] % p;
            }
            parent[y] = r;
        }
        (r, weight[x] % p)
    }
    for a in mats {
        for i in 0..d {
            for j in 0..d {
                // value(σi, σj) = k·value(i, j)
                let k = a.scale[i] * inv_mod(a.scale[j], p) % p;
                let x = i * d + j;
                let y = a.target[i] * d + a.target[j];
                let (rx, wx) = find(x, &mut parent, &mut weight, p);
                let (ry, wy) = find(y, &mut parent, &mut weight, p);
                if rx == ry {
                    // value(y) = wy·v(r) must equal k·wx·v(r)
                    if wy != k * wx % p {
                        dead[rx] = true;
                    }
                } else {
                    // v(ry) = (k·wx / wy)·v(rx)
                    parent[ry] = rx;
                    weight[ry] = k * wx % p * inv_mod(wy, p) % p;
                    if dead[ry] {
                        dead[rx] = true;
                    }
                }
            }
        }
    }
    (0..n)
        .filter(|&x| find(x, &mut parent, &mut weight, p).0 == x && !dead[x])
        .count()
}

/// Number of orbits on `R_h` of the stabilizer of `point`.
pub fn orbit_count_formula(generators: &[SignedPerm], m: usize, point: Label) -> usize {
    stabilizer_orbit_count(generators, RootSet::Rh, m, point)
}

/// Acting group for [`heart_f2_irreducible`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HeartGroup {
    #[serde(rename = "A_m")]
    Am,
    #[serde(rename = "S_m")]
    Sm,
}

/// Whether the sum-zero subspace of `F_2^m` (the heart of the permutation module
/// for odd `m`) is irreducible under `A_m` or `S_m`. Decided by spinning every
/// nonzero vector.
pub fn heart_f2_irreducible(m: usize, group: HeartGroup) -> Result<bool> {
    if m % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "m = {m} is even: the all-ones vector lies in the sum-zero space"
        )));
    }
    if !(3..=13).contains(&m) {
        return Err(Error::InvalidParameter(format!("m = {m} outside 3..=13")));
    }
    let desc = match group {
        HeartGroup::Am => GroupDescriptor::Am { m },
        HeartGroup::Sm => GroupDescriptor::Sm { m },
    };
    let perms: Vec<Vec<usize>> = desc.generators().iter().map(SignedPerm::kappa_u).collect();
    let act = |v: u32, s: &[usize]| -> u32 {
        (0..m).filter(|&i| v >> i & 1 == 1).fold(0, |acc, i| acc | 1 << s[i])
    };
    let full_dim = m - 1;
    for v in 1u32..(1 << m) {
        if v.count_ones() % 2 == 1 {
            continue;
        }
        // Span kept as an XOR basis indexed by leading bit.
        let mut basis = [0u32; 32];
        let mut dim = 0;
        let insert = |mut x: u32, basis: &mut [u32; 32]| -> bool {
            while x != 0 {
                let top = 31 - x.leading_zeros() as usize;
                if basis[top] == 0 {
                    basis[top] = x;
                    return true;
                }
                x ^= basis[top];
            }
            false
        };
        let mut queue = vec![v];
        insert(v, &mut basis);
        dim += 1;
        while let Some(x) = queue.pop() {
            for s in &perms {
                let y = act(x, s);
                if insert(y, &mut basis) {
                    dim += 1;
                    queue.push(y);
                }
            }
        }
        if dim < full_dim {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `2·dim Prym/(p-1)` equals `m = dim V_f^-`.
pub fn lambda_rank_check(p: u64, m: u64) -> bool {
    if p < 3 || m == 0 {
        return false;
    }
    let Ok(space) = FpSpace::new(SpaceKind::VfMinus, m as usize, p) else {
        return false;
    };
    lambda_rank(p, m) == Some(m) && space.dim() as u64 == m
}
