//! The character ring `ℤ[X]`: finitely supported integer combinations of
//! formal exponentials `e(λ)`.
//!
//! All leading-term arguments use the total order of
//! [`RootDatum::cmp_weights`] (height, then lexicographic), which refines the
//! dominance order and is compatible with addition, so it is a monomial order
//! on the Laurent ring.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::rootdata::RootDatum;
use crate::weight::Weight;

/// Expansion in a basis indexed by dominant weights (orbit sums, Weyl
/// characters, simple characters, ...).
pub type Expansion = BTreeMap<Weight, i64>;

/// A virtual character. Zero coefficients are never stored.
#[derive(Clone)]
pub struct Character {
    datum: Arc<RootDatum>,
    terms: FxHashMap<Weight, i64>,
}

impl std::fmt::Debug for Character {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Character[{}]{{", self.datum.name())?;
        for (i, (w, c)) in self.sorted_terms().iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}e({w})")?;
        }
        f.write_str("}")
    }
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}
impl Eq for Character {}

type OrdKey = (i64, Weight);

impl Character {
    pub fn zero(datum: &Arc<RootDatum>) -> Self {
        Character { datum: datum.clone(), terms: FxHashMap::default() }
    }

    /// `c·e(λ)`.
    pub fn monomial(datum: &Arc<RootDatum>, w: Weight, c: i64) -> Self {
        let mut ch = Self::zero(datum);
        ch.add_term(w, c);
        ch
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, i64)>>(datum: &Arc<RootDatum>, it: I) -> Self {
        let mut ch = Self::zero(datum);
        for (w, c) in it {
            ch.add_term(w, c);
        }
        ch
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    /// Same datum, or the same type label (different Levi views of one
    /// lattice are compatible).
    fn same_lattice(&self, other: &Character) -> bool {
        Arc::ptr_eq(&self.datum, &other.datum)
            || (self.datum.label() == other.datum.label() && self.datum.rank() == other.datum.rank())
    }

    /// Reinterpret the same formal sum over another view of the lattice
    /// (e.g. a Levi subsystem).
    pub fn with_datum(&self, datum: &Arc<RootDatum>) -> Character {
        Character { datum: datum.clone(), terms: self.terms.clone() }
    }

    #[inline]
    pub fn add_term(&mut self, w: Weight, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(w).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn coeff(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients.
    pub fn dimension(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    /// Terms sorted from highest to lowest in the fixed total order.
    pub fn sorted_terms(&self) -> Vec<(Weight, i64)> {
        let mut v: Vec<(Weight, i64)> = self.terms.iter().map(|(w, c)| (*w, *c)).collect();
        v.sort_by(|a, b| self.datum.cmp_weights(&b.0, &a.0));
        v
    }

    pub fn leading(&self) -> Option<(Weight, i64)> {
        self.terms
            .iter()
            .max_by(|a, b| self.datum.cmp_weights(a.0, b.0))
            .map(|(w, c)| (*w, *c))
    }

    pub fn trailing(&self) -> Option<(Weight, i64)> {
        self.terms
            .iter()
            .min_by(|a, b| self.datum.cmp_weights(a.0, b.0))
            .map(|(w, c)| (*w, *c))
    }

    pub fn add_scaled(&mut self, other: &Character, k: i64) {
        if k == 0 {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(*w, c * k);
        }
    }

    pub fn scaled(&self, k: i64) -> Character {
        let mut out = Character::zero(&self.datum);
        out.add_scaled(self, k);
        out
    }

    pub fn plus(&self, other: &Character) -> Character {
        let mut out = self.clone();
        out.add_scaled(other, 1);
        out
    }

    pub fn minus(&self, other: &Character) -> Character {
        let mut out = self.clone();
        out.add_scaled(other, -1);
        out
    }

    /// `e(λ) · c`.
    pub fn translate(&self, by: &Weight) -> Character {
        Character {
            datum: self.datum.clone(),
            terms: self.terms.iter().map(|(w, c)| (*w + *by, *c)).collect(),
        }
    }

    /// Frobenius twist: `e(λ) ↦ e(qλ)`.
    pub fn frobenius(&self, q: i64) -> Character {
        Character {
            datum: self.datum.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.scale(q), *c)).collect(),
        }
    }

    /// Convolution product.
    pub fn multiply(&self, other: &Character) -> Result<Character> {
        if !self.same_lattice(other) {
            return Err(Error::DatumMismatch);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut terms: FxHashMap<Weight, i64> = FxHashMap::default();
        terms.reserve(big.len() * 2);
        for (wa, ca) in &small.terms {
            for (wb, cb) in &big.terms {
                *terms.entry(*wa + *wb).or_insert(0) += ca * cb;
            }
        }
        terms.retain(|_, c| *c != 0);
        Ok(Character { datum: self.datum.clone(), terms })
    }

    /// Invariant under every simple reflection of the datum.
    pub fn is_invariant(&self) -> bool {
        let d = &self.datum;
        self.terms.iter().all(|(w, c)| {
            d.simple_indices().iter().all(|&i| self.coeff(&d.reflect_simple(w, i)) == *c)
        })
    }

    /// Coefficient at `μ` of the output equals the coefficient at `−w₀μ` of
    /// the input.
    pub fn dual_involution(&self) -> Character {
        let d = &self.datum;
        Character {
            datum: d.clone(),
            terms: self.terms.iter().map(|(w, c)| (d.minus_w0(w), *c)).collect(),
        }
    }

    /// Terms at dominant weights.
    pub fn dominant_part(&self) -> Expansion {
        self.terms
            .iter()
            .filter(|(w, _)| self.datum.is_dominant(w))
            .map(|(w, c)| (*w, *c))
            .collect()
    }

    /// Exact quotient `num / den` by leading-term elimination.
    pub fn exact_divide(&self, den: &Character) -> Result<Character> {
        if !self.same_lattice(den) {
            return Err(Error::DatumMismatch);
        }
        let d = self.datum.clone();
        let (lead_w, lead_c) = den.leading().ok_or(Error::DivisionByZero)?;
        let (trail_den, _) = den.trailing().unwrap();
        let mut quot = Character::zero(&d);
        let Some((trail_num, _)) = self.trailing() else {
            return Ok(quot);
        };
        let floor = trail_num - trail_den;
        let key = |w: &Weight| -> OrdKey { (d.height_scaled(w), *w) };
        let floor_key = key(&floor);
        let mut rem: BTreeMap<OrdKey, i64> = self.terms.iter().map(|(w, c)| (key(w), *c)).collect();
        let den_terms: Vec<(Weight, i64)> = den.terms.iter().map(|(w, c)| (*w, *c)).collect();
        while let Some((&(_, top), &c)) = rem.iter().next_back() {
            let qw = top - lead_w;
            if key(&qw) < floor_key || c % lead_c != 0 {
                return Err(Error::NotDivisible);
            }
            let qc = c / lead_c;
            quot.add_term(qw, qc);
            for (w, dc) in &den_terms {
                let k = key(&(*w + qw));
                let e = rem.entry(k).or_insert(0);
                *e -= qc * dc;
                if *e == 0 {
                    rem.remove(&k);
                }
            }
        }
        Ok(quot)
    }

    /// Expansion `c = Σ a_μ s(μ)` in orbit sums. For an invariant character
    /// the coefficient of `s(μ)` is just the coefficient at the dominant
    /// weight `μ`.
    pub fn expand_orbit_basis(&self) -> Result<Expansion> {
        if !self.is_invariant() {
            return Err(Error::NotInvariant);
        }
        Ok(self.dominant_part())
    }

    /// Canonical text form: one `c: w1,...,wr` line per term, highest first.
    pub fn to_canonical_text(&self) -> String {
        let mut s = String::new();
        for (w, c) in self.sorted_terms() {
            let _ = writeln!(s, "{c}: {w}");
        }
        s
    }

    pub fn from_canonical_text(datum: &Arc<RootDatum>, text: &str) -> Result<Character> {
        let mut ch = Character::zero(datum);
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (c, w) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("line {}: expected `c: w`", n + 1)))?;
            let c: i64 = c.trim().parse().map_err(|_| Error::Parse(format!("line {}: bad coefficient", n + 1)))?;
            let w = Weight::parse_coords(w)?;
            if w.rank() != datum.rank() {
                return Err(Error::Parse(format!("line {}: wrong rank", n + 1)));
            }
            ch.add_term(w, c);
        }
        Ok(ch)
    }
}

/// Sum of expansions `Σ k·e`.
pub fn expansion_add(acc: &mut Expansion, other: &Expansion, k: i64) {
    for (w, c) in other {
        let e = acc.entry(*w).or_insert(0);
        *e += k * c;
        if *e == 0 {
            acc.remove(w);
        }
    }
}

/// Weyl characters and derived bases for one root datum, with a memo table.
pub struct CharRing {
    datum: Arc<RootDatum>,
    weyl: Mutex<HashMap<Weight, Arc<Character>>>,
    weyl_dominant: Mutex<HashMap<Weight, Arc<Expansion>>>,
}

impl CharRing {
    pub fn new(datum: Arc<RootDatum>) -> Self {
        CharRing { datum, weyl: Mutex::new(HashMap::new()), weyl_dominant: Mutex::new(HashMap::new()) }
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn orbit_sum(&self, mu: &Weight) -> Result<Character> {
        if !self.datum.is_dominant(mu) {
            return Err(Error::NotDominant(*mu));
        }
        Ok(Character::from_terms(&self.datum, self.datum.weyl_orbit(mu).into_iter().map(|w| (w, 1))))
    }

    /// `Σ_w sign(w) e(wμ)`.
    pub fn alternant(&self, mu: &Weight) -> Character {
        Character::from_terms(&self.datum, self.datum.weyl_group().iter().map(|w| (w.apply(mu), w.sign())))
    }

    /// Dot-normalize: `χ(λ) = sign · χ(dom)`, or `None` when `λ+ρ` is singular.
    pub fn normalize(&self, lambda: &Weight) -> Option<(Weight, i64)> {
        let rho = self.datum.rho();
        let (dom, sign) = self.datum.to_dominant(&(*lambda + rho));
        if self.datum.simple_indices().iter().any(|&i| dom.get(i) == 0) {
            None
        } else {
            Some((dom - rho, sign))
        }
    }

    /// Weyl character of a dominant weight, as a shared value.
    pub fn weyl_dominant(&self, lambda: &Weight) -> Arc<Character> {
        debug_assert!(self.datum.is_dominant(lambda));
        if let Some(c) = self.weyl.lock().unwrap().get(lambda) {
            return c.clone();
        }
        let rho = self.datum.rho();
        let num = self.alternant(&(*lambda + rho));
        let den = self.alternant(&rho);
        let ch = Arc::new(num.exact_divide(&den).expect("Weyl alternants always divide"));
        self.weyl.lock().unwrap().insert(*lambda, ch.clone());
        ch
    }

    /// Dominant part of `χ(λ)` for dominant `λ`.
    pub fn weyl_dominant_part(&self, lambda: &Weight) -> Arc<Expansion> {
        if let Some(c) = self.weyl_dominant.lock().unwrap().get(lambda) {
            return c.clone();
        }
        let e = Arc::new(self.weyl_dominant(lambda).dominant_part());
        self.weyl_dominant.lock().unwrap().insert(*lambda, e.clone());
        e
    }

    /// `χ(λ)` for arbitrary `λ`, via `χ(w·λ) = sign(w) χ(λ)`.
    pub fn weyl_character(&self, lambda: &Weight) -> Character {
        match self.normalize(lambda) {
            None => Character::zero(&self.datum),
            Some((dom, sign)) => self.weyl_dominant(&dom).scaled(sign),
        }
    }

    /// Expansion `c = Σ n_μ χ(μ)` by descending elimination on dominant
    /// weights.
    pub fn expand_weyl_basis(&self, c: &Character) -> Result<Expansion> {
        if !c.is_invariant() {
            return Err(Error::NotInvariant);
        }
        Ok(self.expand_weyl_dominant(c.dominant_part()))
    }

    /// Same as [`Self::expand_weyl_basis`] on a dominant part already known
    /// to come from an invariant character.
    pub fn expand_weyl_dominant(&self, mut rest: Expansion) -> Expansion {
        let d = &self.datum;
        let mut out = Expansion::new();
        while let Some(top) = rest.keys().copied().max_by(|a, b| d.cmp_weights(a, b)) {
            let n = rest[&top];
            out.insert(top, n);
            expansion_add(&mut rest, &self.weyl_dominant_part(&top), -n);
        }
        out
    }

    /// Character of `Σ n_μ χ(μ)` (the inverse of [`Self::expand_weyl_basis`]).
    pub fn from_weyl_expansion(&self, e: &Expansion) -> Character {
        let mut ch = Character::zero(&self.datum);
        for (w, n) in e {
            ch.add_scaled(&self.weyl_character(w), *n);
        }
        ch
    }

    pub fn from_orbit_expansion(&self, e: &Expansion) -> Result<Character> {
        let mut ch = Character::zero(&self.datum);
        for (w, n) in e {
            ch.add_scaled(&self.orbit_sum(w)?, *n);
        }
        Ok(ch)
    }

    /// Brauer–Klimyk: `χ(λ)·c = Σ_ν c_ν χ(λ+ν)` for invariant `c`, returned
    /// directly in the Weyl basis.
    pub fn weyl_times(&self, lambda: &Weight, c: &Character) -> Expansion {
        let mut out = Expansion::new();
        for (nu, k) in c.iter() {
            if let Some((dom, sign)) = self.normalize(&(*lambda + *nu)) {
                let e = out.entry(dom).or_insert(0);
                *e += sign * k;
                if *e == 0 {
                    out.remove(&dom);
                }
            }
        }
        out
    }
}
