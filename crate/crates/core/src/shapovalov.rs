//! Weight multiplicities of simple modules from the contravariant form.
//!
//! `dim L(λ)_{λ−ν}` is the rank over `F_p` of the contravariant form on the
//! `ν`-weight space of the integral Verma module. The radical is a
//! submodule, so a basis of `L(λ)_{λ−ν}` can be chosen among the vectors
//! `F_i^{(a)} b` with `b` running over bases of higher weight spaces. Each
//! level keeps its Gram matrix and the matrices of `E_i^{(a)}` into higher
//! levels; `F_j^{(c)}` is recovered from adjointness, and products `E F` are
//! rewritten through
//! `E_i^{(a)} F_i^{(c)} = Σ_t F_i^{(c−t)} binom(H_i − a − c + 2t, t) E_i^{(a−t)}`.

use rustc_hash::FxHashMap;

use crate::rootdata::RootDatum;
use crate::weight::Weight;

type Level = Vec<i64>;
type Vector = Vec<i64>;

struct LevelData {
    /// `(i, a, k)`: the vector `F_i^{(a)} b_k` with `b_k` from level `ν − aα_i`.
    basis: Vec<(usize, i64, usize)>,
    gram: Vec<Vector>,
    gram_inv: Vec<Vector>,
    /// `(i, a)` ↦ coordinates of `E_i^{(a)} b` at level `ν − aα_i`, one per basis vector.
    e_img: FxHashMap<(usize, i64), Vec<Vector>>,
}

/// The simple module `L(λ)` over `F_p`, built weight space by weight space.
pub struct FormRank<'a> {
    datum: &'a RootDatum,
    lambda: Weight,
    p: i64,
    levels: FxHashMap<Level, LevelData>,
    f_mat: FxHashMap<(Level, usize, i64), Vec<Vector>>,
}

fn binom_mod(n: i64, k: i64, p: i64) -> i64 {
    // generalized binomial n(n−1)⋯(n−k+1)/k!, reduced mod p
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for j in 0..k {
        num *= (n - j) as i128;
        den *= (j + 1) as i128;
    }
    ((num / den).rem_euclid(p as i128)) as i64
}

fn inv_mod(a: i64, p: i64) -> i64 {
    let (mut r, mut e, mut b) = (1i64, p - 2, a.rem_euclid(p));
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn mat_vec(m: &[Vector], v: &[i64], p: i64) -> Vector {
    m.iter().map(|row| row.iter().zip(v).fold(0, |s, (a, b)| (s + a * b) % p)).collect()
}

/// Columns `cols` applied to coordinates `v`.
fn cols_apply(cols: &[Vector], v: &[i64], dim: usize, p: i64) -> Vector {
    let mut out = vec![0; dim];
    for (c, &x) in cols.iter().zip(v) {
        if x != 0 {
            for (o, y) in out.iter_mut().zip(c) {
                *o = (*o + x * y) % p;
            }
        }
    }
    out
}

fn invert(m: &[Vector], p: i64) -> Vec<Vector> {
    let n = m.len();
    let mut a: Vec<Vector> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| (i == j) as i64));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0).expect("Gram matrix is invertible");
        a.swap(col, piv);
        let f = inv_mod(a[col][col], p);
        for x in a[col].iter_mut() {
            *x = *x * f % p;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let g = a[r][col];
                let pr = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pr) {
                    *x = (*x - g * y).rem_euclid(p);
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

impl<'a> FormRank<'a> {
    pub fn new(datum: &'a RootDatum, lambda: Weight, p: i64) -> Self {
        let mut levels = FxHashMap::default();
        let top = vec![0; datum.rank()];
        levels.insert(
            top,
            LevelData { basis: vec![(0, 0, 0)], gram: vec![vec![1]], gram_inv: vec![vec![1]], e_img: FxHashMap::default() },
        );
        FormRank { datum, lambda, p, levels, f_mat: FxHashMap::default() }
    }

    fn dim(&self, nu: &[i64]) -> usize {
        if nu.iter().any(|&x| x < 0) {
            return 0;
        }
        self.levels[nu].basis.len()
    }

    fn shifted(nu: &[i64], i: usize, a: i64) -> Level {
        let mut out = nu.to_vec();
        out[i] -= a;
        out
    }

    /// `⟨μ, α_i∨⟩` for the weight at level `κ`.
    fn h(&self, kappa: &[i64], i: usize) -> i64 {
        let mut w = self.lambda;
        for (k, &n) in kappa.iter().enumerate() {
            w = w - self.datum.simple_root(k).scale(n);
        }
        w.get(i)
    }

    /// `E_i^{(a)}` on coordinates at level `κ`.
    fn apply_e(&self, kappa: &[i64], i: usize, a: i64, v: &[i64]) -> Vector {
        if a == 0 {
            return v.to_vec();
        }
        let low = Self::shifted(kappa, i, a);
        let dl = self.dim(&low);
        if dl == 0 {
            return vec![0; 0];
        }
        let cols = &self.levels[kappa].e_img[&(i, a)];
        cols_apply(cols, v, dl, self.p)
    }

    /// `F_j^{(c)}` from level `μ` to level `μ + cα_j`; that level must exist.
    fn apply_f(&mut self, mu: &[i64], j: usize, c: i64, v: &[i64]) -> Vector {
        if c == 0 {
            return v.to_vec();
        }
        let t = Self::shifted(mu, j, -c);
        let dt = self.dim(&t);
        if dt == 0 || v.is_empty() {
            return vec![0; dt];
        }
        let key = (mu.to_vec(), j, c);
        if !self.f_mat.contains_key(&key) {
            let p = self.p;
            let tl = &self.levels[&t];
            let gm = &self.levels[mu].gram;
            let e = &tl.e_img[&(j, c)];
            // ⟨b_m^t, F b_k^μ⟩ = ⟨E b_m^t, b_k^μ⟩
            let dm = gm.len();
            let mut cols = Vec::with_capacity(dm);
            for k in 0..dm {
                let pairing: Vector = e.iter().map(|em| em.iter().zip(gm).fold(0, |s, (x, row)| (s + x * row[k]) % p)).collect();
                cols.push(mat_vec(&tl.gram_inv, &pairing, p));
            }
            self.f_mat.insert(key.clone(), cols);
        }
        cols_apply(&self.f_mat[&key], v, dt, self.p)
    }

    /// Coordinates at level `ν − aα_i` of `E_i^{(a)} F_j^{(c)} b_k`, where
    /// `b_k` is a basis vector at level `ν − cα_j`.
    fn e_of_f(&mut self, nu: &[i64], i: usize, a: i64, j: usize, c: i64, k: usize) -> Vector {
        let p = self.p;
        let below = Self::shifted(nu, j, c);
        let mut unit = vec![0; self.dim(&below)];
        unit[k] = 1;
        let target = Self::shifted(nu, i, a);
        let dt = self.dim(&target);
        if dt == 0 {
            return vec![0; 0];
        }
        if i != j {
            let mid = Self::shifted(&below, i, a);
            if self.dim(&mid) == 0 {
                return vec![0; dt];
            }
            let e = self.apply_e(&below, i, a, &unit);
            return self.apply_f(&mid, j, c, &e);
        }
        let mut out = vec![0; dt];
        for t in 0..=a.min(c) {
            let mid = Self::shifted(&below, i, a - t);
            if self.dim(&mid) == 0 {
                continue;
            }
            let coef = binom_mod(self.h(&mid, i) - a - c + 2 * t, t, p);
            if coef == 0 {
                continue;
            }
            let e = self.apply_e(&below, i, a - t, &unit);
            let f = self.apply_f(&mid, i, c - t, &e);
            for (o, x) in out.iter_mut().zip(f) {
                *o = (*o + coef * x) % p;
            }
        }
        out
    }

    fn build(&mut self, nu: &[i64]) {
        let p = self.p;
        let r = nu.len();
        let mut cands: Vec<(usize, i64, usize)> = Vec::new();
        for i in 0..r {
            for a in 1..=nu[i] {
                let low = Self::shifted(nu, i, a);
                for k in 0..self.dim(&low) {
                    cands.push((i, a, k));
                }
            }
        }
        let n = cands.len();
        // images[(i, a)][s] = E_i^{(a)} applied to candidate s
        let mut images: FxHashMap<(usize, i64), Vec<Vector>> = FxHashMap::default();
        let mut gram = vec![vec![0i64; n]; n];
        for i in 0..r {
            for a in 1..=nu[i] {
                let low = Self::shifted(nu, i, a);
                if self.dim(&low) == 0 {
                    continue;
                }
                let mut imgs = Vec::with_capacity(n);
                for &(j, c, k) in &cands {
                    imgs.push(self.e_of_f(nu, i, a, j, c, k));
                }
                let g_low = &self.levels[&low].gram;
                for (s, z) in imgs.iter().enumerate() {
                    let y = mat_vec(g_low, z, p);
                    for (row, &(ci, ca, ck)) in cands.iter().enumerate() {
                        if ci == i && ca == a {
                            gram[row][s] = y[ck];
                        }
                    }
                }
                images.insert((i, a), imgs);
            }
        }
        // rows independent modulo the radical
        let mut pivots: Vec<(usize, Vector)> = Vec::new();
        let mut keep = Vec::new();
        for (row_idx, row0) in gram.iter().enumerate() {
            let mut row = row0.clone();
            for (col, prow) in &pivots {
                let g = row[*col];
                if g != 0 {
                    for (x, y) in row.iter_mut().zip(prow) {
                        *x = (*x - g * y).rem_euclid(p);
                    }
                }
            }
            if let Some(col) = row.iter().position(|&x| x != 0) {
                let f = inv_mod(row[col], p);
                for x in row.iter_mut() {
                    *x = *x * f % p;
                }
                pivots.push((col, row));
                keep.push(row_idx);
            }
        }
        let g: Vec<Vector> = keep.iter().map(|&r| keep.iter().map(|&c| gram[r][c]).collect()).collect();
        let gram_inv = invert(&g, p);
        let e_img = images.into_iter().map(|(key, imgs)| (key, keep.iter().map(|&s| imgs[s].clone()).collect())).collect();
        let basis = keep.iter().map(|&s| cands[s]).collect();
        self.levels.insert(nu.to_vec(), LevelData { basis, gram: g, gram_inv, e_img });
    }

    /// `dim L(λ)_μ` over `F_p`, or `None` if `λ − μ` is not in the positive
    /// span of the simple roots.
    pub fn simple_multiplicity(&mut self, mu: &Weight) -> Option<usize> {
        let nu = self.datum.to_simple_coords(&(self.lambda - *mu))?;
        if nu.iter().any(|&x| x < 0) {
            return None;
        }
        let simple = self.datum.simple_indices().to_vec();
        if nu.iter().enumerate().any(|(k, &x)| x != 0 && !simple.contains(&k)) {
            return None;
        }
        // every level in the box below ν, by increasing height
        let mut box_levels: Vec<Level> = vec![vec![]];
        for &n in &nu {
            box_levels = box_levels
                .into_iter()
                .flat_map(|l| {
                    (0..=n).map(move |x| {
                        let mut l = l.clone();
                        l.push(x);
                        l
                    })
                })
                .collect();
        }
        box_levels.sort_by_key(|l| l.iter().sum::<i64>());
        for l in box_levels {
            if !self.levels.contains_key(&l) {
                self.build(&l);
            }
        }
        Some(self.dim(&nu))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> Weight {
        Weight::new(c)
    }

    #[test]
    fn sl2() {
        let d = RootDatum::from_label("A1").unwrap();
        // L(3) at p = 2 has weights ±3, ±1
        let mut f = FormRank::new(&d, w(&[3]), 2);
        assert_eq!(f.simple_multiplicity(&w(&[1])), Some(1));
        assert_eq!(f.simple_multiplicity(&w(&[3])), Some(1));
        assert_eq!(f.simple_multiplicity(&w(&[-3])), Some(1));
        // L(2) at p = 2 is e(2) + e(−2)
        let mut f = FormRank::new(&d, w(&[2]), 2);
        assert_eq!(f.simple_multiplicity(&w(&[0])), Some(0));
        assert_eq!(f.simple_multiplicity(&w(&[-2])), Some(1));
        let mut f = FormRank::new(&d, w(&[2]), 3);
        assert_eq!(f.simple_multiplicity(&w(&[0])), Some(1));
        assert_eq!(f.simple_multiplicity(&w(&[-4])), Some(0));
    }

    #[test]
    fn a2_adjoint() {
        let d = RootDatum::from_label("A2").unwrap();
        // zero weight of L(ρ): 2 in general, 1 at p = 3
        assert_eq!(FormRank::new(&d, w(&[1, 1]), 5).simple_multiplicity(&w(&[0, 0])), Some(2));
        assert_eq!(FormRank::new(&d, w(&[1, 1]), 3).simple_multiplicity(&w(&[0, 0])), Some(1));
    }
}
