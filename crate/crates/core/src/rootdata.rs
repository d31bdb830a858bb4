//! Finite root data in fundamental-weight coordinates.
//!
//! Simple roots follow Bourbaki numbering. The Cartan matrix is stored with
//! `C[i][j] = ⟨α_j, α_i∨⟩`, so the simple root `α_j` written in ω-coordinates
//! is the `j`-th column of `C`, and a positive coroot is stored by its
//! coefficients on the simple coroots (so pairing with a weight is a dot
//! product).
//!
//! A [`RootDatum`] can also describe the root subsystem of a Levi factor
//! (see [`RootDatum::levi`]): the ambient lattice stays the same, but roots,
//! Weyl group, dominance and the order `≤` only see the simple roots in `J`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::weight::{Weight, MAX_RANK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    G,
}

impl CartanType {
    pub fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::G => 'G',
        }
    }
}

/// Type label plus rank, e.g. `"G2"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TypeLabel {
    pub kind: CartanType,
    pub rank: usize,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.rank)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => CartanType::A,
            Some('B') => CartanType::B,
            Some('C') => CartanType::C,
            Some('D') => CartanType::D,
            Some('G') => CartanType::G,
            _ => return Err(Error::UnsupportedType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnsupportedType(s.to_string()))?;
        Ok(TypeLabel { kind, rank })
    }
}

/// A positive root with its coordinates in the three bases used here.
#[derive(Clone, Debug)]
pub struct Root {
    /// Coefficients on the simple roots (ambient numbering).
    pub simple: Vec<i64>,
    /// The root as a weight.
    pub weight: Weight,
    /// The coroot as coefficients on the simple coroots.
    pub coroot: Vec<i64>,
    /// `(β, β) / 2` in the normalization where short roots have value 1.
    pub half_norm: i64,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple.iter().sum()
    }
}

/// A Weyl group element as an integer matrix acting on ω-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rank: usize,
    m: Vec<i64>,
    length: u32,
}

impl WeylElement {
    fn identity(rank: usize) -> Self {
        let mut m = vec![0; rank * rank];
        for i in 0..rank {
            m[i * rank + i] = 1;
        }
        WeylElement { rank, m, length: 0 }
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    /// `(-1)^ℓ(w)`.
    pub fn sign(&self) -> i64 {
        if self.length % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn matrix(&self) -> &[i64] {
        &self.m
    }

    #[inline]
    pub fn apply(&self, w: &Weight) -> Weight {
        let n = self.rank;
        let mut out = Weight::zero(n);
        for i in 0..n {
            let row = &self.m[i * n..(i + 1) * n];
            out.set(i, row.iter().zip(w.coords()).map(|(a, b)| a * b).sum());
        }
        out
    }

    fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.rank;
        let mut m = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = (0..n).map(|k| self.m[i * n + k] * other.m[k * n + j]).sum();
            }
        }
        WeylElement { rank: n, m, length: 0 }
    }

    /// Determinant by cofactor expansion (rank ≤ 4).
    pub fn determinant(&self) -> i64 {
        let rows: Vec<Vec<i64>> = self.m.chunks(self.rank).map(|r| r.to_vec()).collect();
        det(&rows)
    }
}

fn det(a: &[Vec<i64>]) -> i64 {
    let n = a.len();
    match n {
        0 => 1,
        1 => a[0][0],
        _ => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * a[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn adjugate(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| a[r][c]).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            // adj = transpose of cofactor matrix
            adj[j][i] = s * det(&minor);
        }
    }
    adj
}

/// Immutable root-system data. Cheap to share behind an `Arc`.
pub struct RootDatum {
    label: TypeLabel,
    levi: Option<Vec<usize>>,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    simple: Vec<usize>,
    positive: Vec<Root>,
    root_index: HashMap<Vec<i64>, usize>,
    weyl: Vec<WeylElement>,
    w0: usize,
    adj: Vec<Vec<i64>>,
    det: i64,
    height_row: Vec<i64>,
    highest_short: Option<usize>,
    coxeter: Option<i64>,
}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootDatum({})", self.name())
    }
}

fn cartan_matrix(kind: CartanType, n: usize) -> Result<(Vec<Vec<i64>>, Vec<i64>)> {
    let bad = || Error::UnsupportedType(format!("{}{}", kind.letter(), n));
    if n == 0 || n > MAX_RANK {
        return Err(bad());
    }
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 2;
    }
    let chain = |c: &mut Vec<Vec<i64>>, upto: usize| {
        for i in 0..upto.saturating_sub(1) {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    };
    let mut d = vec![1i64; n];
    match kind {
        CartanType::A => chain(&mut c, n),
        CartanType::B => {
            if n < 2 {
                return Err(bad());
            }
            chain(&mut c, n);
            // α_n short
            c[n - 1][n - 2] = -2;
            for x in d.iter_mut().take(n - 1) {
                *x = 2;
            }
        }
        CartanType::C => {
            if n < 2 {
                return Err(bad());
            }
            chain(&mut c, n);
            // α_n long
            c[n - 2][n - 1] = -2;
            d[n - 1] = 2;
        }
        CartanType::D => {
            if n != 4 {
                return Err(bad());
            }
            chain(&mut c, n - 1);
            c[n - 3][n - 1] = -1;
            c[n - 1][n - 3] = -1;
        }
        CartanType::G => {
            if n != 2 {
                return Err(bad());
            }
            c[0][1] = -3;
            c[1][0] = -1;
            d = vec![1, 3];
        }
    }
    Ok((c, d))
}

impl RootDatum {
    /// Build the root datum of a finite irreducible type.
    pub fn build(kind: CartanType, rank: usize) -> Result<Arc<RootDatum>> {
        let (cartan, symmetrizer) = cartan_matrix(kind, rank)?;
        let simple: Vec<usize> = (0..rank).collect();
        let label = TypeLabel { kind, rank };
        let mut rd = Self::assemble(label, None, cartan, symmetrizer, simple);
        let hs = rd.find_highest_short();
        rd.highest_short = Some(hs);
        let rho = Weight::constant(rank, 1);
        rd.coxeter = Some(rd.pair(&rho, &rd.positive[hs]) + 1);
        Ok(Arc::new(rd))
    }

    pub fn from_label(label: &str) -> Result<Arc<RootDatum>> {
        let t: TypeLabel = label.parse()?;
        Self::build(t.kind, t.rank)
    }

    /// Root subsystem of the Levi factor attached to the simple roots `J`
    /// (0-based ambient indices).
    pub fn levi(&self, j: &[usize]) -> Result<Arc<RootDatum>> {
        let mut j: Vec<usize> = j.to_vec();
        j.sort_unstable();
        j.dedup();
        if j.iter().any(|&x| x >= self.rank) || !self.is_full() {
            return Err(Error::Config(format!("invalid Levi subset {j:?}")));
        }
        let rd = Self::assemble(self.label, Some(j.clone()), self.cartan.clone(), self.symmetrizer.clone(), j);
        Ok(Arc::new(rd))
    }

    fn assemble(
        label: TypeLabel,
        levi: Option<Vec<usize>>,
        cartan: Vec<Vec<i64>>,
        symmetrizer: Vec<i64>,
        simple: Vec<usize>,
    ) -> RootDatum {
        let n = cartan.len();
        let adj = adjugate(&cartan);
        let det = det(&cartan);
        let height_row: Vec<i64> = (0..n).map(|j| (0..n).map(|i| adj[i][j]).sum()).collect();
        let mut rd = RootDatum {
            label,
            levi,
            rank: n,
            cartan,
            symmetrizer,
            simple,
            positive: Vec::new(),
            root_index: HashMap::new(),
            weyl: Vec::new(),
            w0: 0,
            adj,
            det,
            height_row,
            highest_short: None,
            coxeter: None,
        };
        rd.positive = rd.generate_positive_roots();
        rd.root_index = rd.positive.iter().enumerate().map(|(i, r)| (r.simple.clone(), i)).collect();
        rd.weyl = rd.generate_weyl();
        rd.w0 = (0..rd.weyl.len()).max_by_key(|&i| rd.weyl[i].length).unwrap_or(0);
        rd
    }

    fn make_root(&self, simple: Vec<i64>) -> Root {
        let n = self.rank;
        let mut weight = Weight::zero(n);
        for i in 0..n {
            weight.set(i, (0..n).map(|j| self.cartan[i][j] * simple[j]).sum());
        }
        // (β,β) = Σ n_i n_j C_ij d_i; half_norm = (β,β)/2
        let mut norm = 0;
        for i in 0..n {
            for j in 0..n {
                norm += simple[i] * simple[j] * self.cartan[i][j] * self.symmetrizer[i];
            }
        }
        let half_norm = norm / 2;
        let coroot = (0..n).map(|j| simple[j] * self.symmetrizer[j] / half_norm).collect();
        Root { simple, weight, coroot, half_norm }
    }

    fn generate_positive_roots(&self) -> Vec<Root> {
        let n = self.rank;
        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        for &i in &self.simple {
            let mut v = vec![0; n];
            v[i] = 1;
            seen.insert(v.clone(), ());
            queue.push_back(v);
        }
        while let Some(beta) = queue.pop_front() {
            roots.push(beta.clone());
            for &i in &self.simple {
                let pairing: i64 = (0..n).map(|j| self.cartan[i][j] * beta[j]).sum();
                // r = largest k with β - kα_i a positive root
                let mut r = 0;
                loop {
                    let mut down = beta.clone();
                    down[i] -= r + 1;
                    if down.iter().all(|&x| x >= 0) && down.iter().any(|&x| x > 0) && seen.contains_key(&down) {
                        r += 1;
                    } else {
                        break;
                    }
                }
                let q = r - pairing;
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !seen.contains_key(&up) {
                        seen.insert(up.clone(), ());
                        queue.push_back(up);
                    }
                }
            }
        }
        roots.sort_by_key(|v| (v.iter().sum::<i64>(), std::cmp::Reverse(v.clone())));
        roots.into_iter().map(|v| self.make_root(v)).collect()
    }

    fn simple_reflection_matrix(&self, i: usize) -> WeylElement {
        let n = self.rank;
        let mut e = WeylElement::identity(n);
        // s_i(λ) = λ - λ_i α_i ; column i gets -α_i
        for k in 0..n {
            e.m[k * n + i] -= self.cartan[k][i];
        }
        e.length = 1;
        e
    }

    fn generate_weyl(&self) -> Vec<WeylElement> {
        let n = self.rank;
        let gens: Vec<WeylElement> = self.simple.iter().map(|&i| self.simple_reflection_matrix(i)).collect();
        let id = WeylElement::identity(n);
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        seen.insert(id.m.clone(), ());
        let mut out = vec![id.clone()];
        let mut frontier = vec![id];
        let mut len = 0;
        while !frontier.is_empty() {
            len += 1;
            let mut next = Vec::new();
            for w in &frontier {
                for g in &gens {
                    let mut x = g.compose(w);
                    if seen.contains_key(&x.m) {
                        continue;
                    }
                    x.length = len;
                    seen.insert(x.m.clone(), ());
                    next.push(x.clone());
                    out.push(x);
                }
            }
            frontier = next;
        }
        out
    }

    fn find_highest_short(&self) -> usize {
        let min_norm = self.positive.iter().map(|r| r.half_norm).min().unwrap();
        (0..self.positive.len())
            .filter(|&i| self.positive[i].half_norm == min_norm)
            .max_by_key(|&i| self.positive[i].height())
            .unwrap()
    }

    // ----- accessors -----

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    /// `"B2"`, or `"B2[J=2]"` for a Levi subsystem (1-based indices).
    pub fn name(&self) -> String {
        match &self.levi {
            None => self.label.to_string(),
            Some(j) => {
                let idx: Vec<String> = j.iter().map(|x| (x + 1).to_string()).collect();
                format!("{}[J={}]", self.label, idx.join(","))
            }
        }
    }

    pub fn is_full(&self) -> bool {
        self.levi.is_none()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Indices of the simple roots of this (sub)system.
    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    /// Simple root `α_i` (ambient index) as a weight.
    pub fn simple_root(&self, i: usize) -> Weight {
        let mut w = Weight::zero(self.rank);
        for k in 0..self.rank {
            w.set(k, self.cartan[k][i]);
        }
        w
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn root_by_simple_coords(&self, simple: &[i64]) -> Option<&Root> {
        self.root_index.get(simple).map(|&i| &self.positive[i])
    }

    pub fn weyl_group(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn w0(&self) -> &WeylElement {
        &self.weyl[self.w0]
    }

    pub fn rho(&self) -> Weight {
        Weight::constant(self.rank, 1)
    }

    pub fn zero(&self) -> Weight {
        Weight::zero(self.rank)
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        Weight::fundamental(self.rank, i)
    }

    /// |α|²/2 for simple roots, short roots normalized to 1.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn has_two_root_lengths(&self) -> bool {
        let lens: std::collections::BTreeSet<i64> = self.positive.iter().map(|r| r.half_norm).collect();
        lens.len() > 1
    }

    /// Highest short root `α₀` (full root systems only).
    pub fn highest_short_root(&self) -> Option<&Root> {
        self.highest_short.map(|i| &self.positive[i])
    }

    /// Coxeter number `h = ⟨ρ, α₀∨⟩ + 1` (full root systems only).
    pub fn coxeter_number(&self) -> Option<i64> {
        self.coxeter
    }

    // ----- pairings and actions -----

    /// `⟨λ, β∨⟩`.
    #[inline]
    pub fn pair(&self, w: &Weight, beta: &Root) -> i64 {
        w.coords().iter().zip(&beta.coroot).map(|(a, b)| a * b).sum()
    }

    /// `⟨λ, α₀∨⟩`; panics for Levi subsystems.
    pub fn pair_highest_coroot(&self, w: &Weight) -> i64 {
        let a0 = self.highest_short_root().expect("α₀ only defined for full root systems");
        self.pair(w, a0)
    }

    /// Dominant with respect to the simple roots of this (sub)system.
    pub fn is_dominant(&self, w: &Weight) -> bool {
        self.simple.iter().all(|&i| w.get(i) >= 0)
    }

    /// All coordinates of this system's simple roots lie in `[0, bound)`.
    pub fn is_restricted_on(&self, w: &Weight, bound: i64) -> bool {
        self.simple.iter().all(|&i| (0..bound).contains(&w.get(i)))
    }

    pub fn reflect_simple(&self, w: &Weight, i: usize) -> Weight {
        *w - self.simple_root(i).scale(w.get(i))
    }

    /// `s_β(λ) = λ - ⟨λ, β∨⟩ β`.
    pub fn reflect(&self, w: &Weight, beta: &Root) -> Weight {
        *w - beta.weight.scale(self.pair(w, beta))
    }

    /// Dot action `w·λ = w(λ+ρ) − ρ`.
    pub fn dot(&self, w: &WeylElement, lambda: &Weight) -> Weight {
        let rho = self.rho();
        w.apply(&(*lambda + rho)) - rho
    }

    /// Move `λ` into the dominant chamber by simple reflections. Returns the
    /// dominant representative and the parity of the number of reflections.
    pub fn to_dominant(&self, w: &Weight) -> (Weight, i64) {
        let mut x = *w;
        let mut sign = 1;
        loop {
            match self.simple.iter().find(|&&i| x.get(i) < 0) {
                Some(&i) => {
                    x = self.reflect_simple(&x, i);
                    sign = -sign;
                }
                None => return (x, sign),
            }
        }
    }

    /// W-orbit of `λ`, sorted in the fixed total order (highest first).
    pub fn weyl_orbit(&self, w: &Weight) -> Vec<Weight> {
        let mut seen = rustc_hash::FxHashSet::default();
        seen.insert(*w);
        let mut stack = vec![*w];
        while let Some(x) = stack.pop() {
            for &i in &self.simple {
                if x.get(i) != 0 {
                    let y = self.reflect_simple(&x, i);
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        let mut v: Vec<Weight> = seen.into_iter().collect();
        v.sort_by(|a, b| self.cmp_weights(b, a));
        v
    }

    /// `-w₀ μ`.
    pub fn minus_w0(&self, w: &Weight) -> Weight {
        -self.w0().apply(w)
    }

    // ----- root lattice and orders -----

    /// Coefficients of `λ` on the simple roots if `λ` lies in the root lattice.
    pub fn to_simple_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        let n = self.rank;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let s: i64 = (0..n).map(|j| self.adj[i][j] * w.get(j)).sum();
            if s % self.det != 0 {
                return None;
            }
            out.push(s / self.det);
        }
        Some(out)
    }

    /// `λ − μ ∈ ℕJ` for this system's simple roots `J`.
    pub fn in_positive_span(&self, diff: &Weight) -> bool {
        match self.to_simple_coords(diff) {
            None => false,
            Some(c) => (0..self.rank).all(|i| {
                if self.simple.contains(&i) {
                    c[i] >= 0
                } else {
                    c[i] == 0
                }
            }),
        }
    }

    /// The partial order `μ ≤ λ`.
    pub fn le(&self, mu: &Weight, lambda: &Weight) -> bool {
        self.in_positive_span(&(*lambda - *mu))
    }

    /// `det(C) · ⟨λ, ρ∨⟩`: an integral positive multiple of the height.
    #[inline]
    pub fn height_scaled(&self, w: &Weight) -> i64 {
        w.coords().iter().zip(&self.height_row).map(|(a, b)| a * b).sum()
    }

    /// The fixed total order: height first, then lexicographic on
    /// ω-coordinates. It refines `≤` and is compatible with addition.
    #[inline]
    pub fn cmp_weights(&self, a: &Weight, b: &Weight) -> std::cmp::Ordering {
        self.height_scaled(a)
            .cmp(&self.height_scaled(b))
            .then_with(|| a.coords().cmp(b.coords()))
    }

    /// Unique minimal dominant weight in `λ + ℤΦ`.
    pub fn minimal_dominant_in_class(&self, w: &Weight) -> Weight {
        let (mut x, _) = self.to_dominant(w);
        'outer: loop {
            for beta in &self.positive {
                let y = x - beta.weight;
                if self.is_dominant(&y) {
                    x = y;
                    continue 'outer;
                }
            }
            return x;
        }
    }

    /// Dominant weights `μ` with `μ ≤ λ` (λ dominant), in descending order.
    pub fn dominant_weights_below(&self, lambda: &Weight) -> Vec<Weight> {
        let mut seen = rustc_hash::FxHashSet::default();
        seen.insert(*lambda);
        let mut stack = vec![*lambda];
        while let Some(x) = stack.pop() {
            for beta in &self.positive {
                let y = x - beta.weight;
                if self.is_dominant(&y) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        let mut v: Vec<Weight> = seen.into_iter().collect();
        v.sort_by(|a, b| self.cmp_weights(b, a));
        v
    }

    /// All weights in `X₁` (coordinates in `[0, p-1]`) in ascending total order.
    pub fn restricted_weights(&self, p: i64) -> Vec<Weight> {
        let n = self.rank;
        let total = (p as usize).pow(n as u32);
        let mut v: Vec<Weight> = (0..total)
            .map(|mut k| {
                let mut w = Weight::zero(n);
                for i in 0..n {
                    w.set(i, (k % p as usize) as i64);
                    k /= p as usize;
                }
                w
            })
            .collect();
        v.sort_by(|a, b| self.cmp_weights(a, b));
        v
    }

    /// Weyl dimension formula `∏ ⟨λ+ρ, α∨⟩ / ⟨ρ, α∨⟩`, computed exactly.
    pub fn weyl_dimension(&self, lambda: &Weight) -> i128 {
        let rho = self.rho();
        let lr = *lambda + rho;
        let mut num: i128 = 1;
        let mut den: i128 = 1;
        for beta in &self.positive {
            num *= self.pair(&lr, beta) as i128;
            den *= self.pair(&rho, beta) as i128;
            let g = gcd(num.abs(), den);
            num /= g;
            den /= g;
        }
        assert_eq!(den, 1, "Weyl dimension must be integral");
        num
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(s: &str) -> Arc<RootDatum> {
        RootDatum::from_label(s).unwrap()
    }

    #[test]
    fn sizes_of_small_types() {
        for (s, np, nw, h) in [("A1", 1, 2, 2), ("A2", 3, 6, 3), ("B2", 4, 8, 4), ("C2", 4, 8, 4), ("G2", 6, 12, 6)] {
            let d = rd(s);
            assert_eq!(d.positive_roots().len(), np, "{s}");
            assert_eq!(d.weyl_group().len(), nw, "{s}");
            assert_eq!(d.coxeter_number(), Some(h), "{s}");
        }
        for (s, np, nw, h) in [("A3", 6, 24, 4), ("A4", 10, 120, 5), ("B3", 9, 48, 6), ("C3", 9, 48, 6), ("B4", 16, 384, 8), ("D4", 12, 192, 6)] {
            let d = rd(s);
            assert_eq!(d.positive_roots().len(), np, "{s}");
            assert_eq!(d.weyl_group().len(), nw, "{s}");
            assert_eq!(d.coxeter_number(), Some(h), "{s}");
        }
    }

    #[test]
    fn g2_highest_short_root_is_omega1() {
        let d = rd("G2");
        let a0 = d.highest_short_root().unwrap();
        assert_eq!(a0.simple, vec![2, 1]);
        assert_eq!(a0.weight, Weight::new(&[1, 0]));
        assert_eq!(d.pair(&Weight::new(&[2, 0]), a0), 4);
    }

    #[test]
    fn b2_highest_short_coroot() {
        let d = rd("B2");
        let a0 = d.highest_short_root().unwrap();
        assert_eq!(a0.coroot, vec![2, 1]);
        assert_eq!(d.pair(&d.fundamental(0), a0), 2);
        assert_eq!(d.pair(&d.fundamental(1), a0), 1);
    }

    #[test]
    fn a1_basics() {
        let d = rd("A1");
        assert_eq!(d.rho(), Weight::new(&[1]));
        assert_eq!(d.highest_short_root().unwrap().weight, Weight::new(&[2]));
        let s = &d.weyl_group()[1];
        assert_eq!(d.dot(s, &Weight::new(&[0])), Weight::new(&[-2]));
    }

    #[test]
    fn unsupported_types_rejected() {
        assert!(matches!(RootDatum::from_label("E6"), Err(Error::UnsupportedType(_))));
        assert!(matches!(RootDatum::from_label("G3"), Err(Error::UnsupportedType(_))));
        assert!(matches!(RootDatum::from_label("A5"), Err(Error::UnsupportedType(_))));
        assert!(matches!(RootDatum::from_label("B1"), Err(Error::UnsupportedType(_))));
        assert!(matches!(RootDatum::from_label("D3"), Err(Error::UnsupportedType(_))));
    }

    #[test]
    fn w0_involution_and_negates_positive_roots() {
        for s in ["A1", "A2", "B2", "C2", "G2", "A3", "B3", "D4"] {
            let d = rd(s);
            let w0 = d.w0();
            for i in 0..d.rank() {
                let w = d.fundamental(i);
                assert_eq!(w0.apply(&w0.apply(&w)), w);
            }
            for beta in d.positive_roots() {
                let img = w0.apply(&beta.weight);
                assert!(d.positive_roots().iter().any(|g| g.weight == -img), "{s}");
            }
        }
    }

    #[test]
    fn signs_match_determinants() {
        for s in ["A2", "B2", "G2", "A3", "C3"] {
            let d = rd(s);
            for w in d.weyl_group() {
                assert_eq!(w.sign(), w.determinant());
            }
        }
    }

    #[test]
    fn orbits() {
        let d = rd("A2");
        let o = d.weyl_orbit(&d.rho());
        let mut expect: Vec<Weight> = [[1, 1], [-1, 2], [2, -1], [1, -2], [-2, 1], [-1, -1]]
            .iter()
            .map(|c| Weight::new(c))
            .collect();
        expect.sort();
        let mut got = o.clone();
        got.sort();
        assert_eq!(got, expect);
        assert_eq!(d.weyl_orbit(&d.zero()), vec![d.zero()]);
        let mut o1 = d.weyl_orbit(&d.fundamental(0));
        o1.sort();
        let mut e1 = vec![Weight::new(&[1, 0]), Weight::new(&[-1, 1]), Weight::new(&[0, -1])];
        e1.sort();
        assert_eq!(o1, e1);
    }

    #[test]
    fn a2_w0_dot_zero() {
        let d = rd("A2");
        assert_eq!(d.dot(d.w0(), &d.zero()), Weight::new(&[-2, -2]));
    }

    #[test]
    fn levi_subsystem() {
        let d = rd("B2");
        let l = d.levi(&[1]).unwrap();
        assert_eq!(l.positive_roots().len(), 1);
        assert_eq!(l.weyl_group().len(), 2);
        assert_eq!(l.name(), "B2[J=2]");
        assert!(l.is_dominant(&Weight::new(&[-3, 1])));
        assert!(l.le(&Weight::new(&[1, -2]), &Weight::new(&[0, 0])));
        assert!(!l.le(&Weight::new(&[-2, 2]), &Weight::new(&[0, 0])));
        assert!(l.coxeter_number().is_none());
    }

    #[test]
    fn minimal_dominant() {
        let d = rd("G2");
        assert_eq!(d.minimal_dominant_in_class(&Weight::new(&[3, 4])), d.zero());
        let b = rd("B2");
        assert_eq!(b.minimal_dominant_in_class(&Weight::new(&[2, 3])), Weight::new(&[0, 1]));
        let a = rd("A2");
        assert_eq!(a.minimal_dominant_in_class(&Weight::new(&[3, 1])), Weight::new(&[0, 1]));
    }

    #[test]
    fn weyl_dimensions() {
        let g = rd("G2");
        assert_eq!(g.weyl_dimension(&Weight::new(&[1, 0])), 7);
        assert_eq!(g.weyl_dimension(&Weight::new(&[0, 1])), 14);
        assert_eq!(g.weyl_dimension(&Weight::new(&[2, 0])), 27);
        assert_eq!(g.weyl_dimension(&Weight::new(&[6, 6])), 7i128.pow(6));
        let b = rd("B2");
        assert_eq!(b.weyl_dimension(&Weight::new(&[1, 0])), 5);
        assert_eq!(b.weyl_dimension(&Weight::new(&[0, 1])), 4);
    }
}
