//! `G₁T`-characters: baby Verma modules `Ẑ'(μ)`, the simples
//! `L̂(λ₀ + pλ₁) = L(λ₀) ⊗ pλ₁`, and injective hulls `Q̂₁(λ)`.
//!
//! `ch Q̂₁(λ)` is assembled from reciprocity `[Q̂₁(λ) : Ẑ'(τ)] = [Ẑ'(τ) : L̂(λ)]`.
//! Translating by `pX` permutes both sides, so only the `p^n` baby Vermas
//! with top weight in `X₁` are ever decomposed.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::charring::{CharRing, Character, Expansion};
use crate::error::{Error, Result};
use crate::linkage::AlcoveContext;
use crate::rootdata::RootDatum;
use crate::simples::SimpleChars;
use crate::weight::Weight;

/// `[Ẑ'(top) : L̂(λ₀ + pλ₁)]`, keyed by `(λ₀, λ₁)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BabyVermaDecomp {
    pub top: Weight,
    pub factors: BTreeMap<(Weight, Weight), i64>,
}

/// Characters at the first Frobenius kernel for one `(datum, p)`.
pub struct G1T {
    simples: Arc<SimpleChars>,
    base: Character,
    decomp: Mutex<HashMap<Weight, Arc<BabyVermaDecomp>>>,
    qhat: Mutex<HashMap<Weight, Arc<Character>>>,
}

impl G1T {
    pub fn new(simples: Arc<SimpleChars>) -> Result<Self> {
        let ctx = simples.ctx();
        if ctx.r != 1 {
            return Err(Error::Config("G1T computations require r = 1".into()));
        }
        let d = ctx.datum.clone();
        let base = baby_verma_char(&d.zero(), ctx);
        Ok(G1T { simples, base, decomp: Mutex::new(HashMap::new()), qhat: Mutex::new(HashMap::new()) })
    }

    pub fn simples(&self) -> &Arc<SimpleChars> {
        &self.simples
    }

    pub fn ctx(&self) -> &AlcoveContext {
        self.simples.ctx()
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.simples.ctx().datum
    }

    pub fn ring(&self) -> &Arc<CharRing> {
        self.simples.ring()
    }

    pub fn baby_verma(&self, mu: &Weight) -> Character {
        self.base.translate(mu)
    }

    pub fn g1t_simple_char(&self, lambda0: &Weight, lambda1: &Weight) -> Result<Character> {
        let p = self.ctx().p;
        if !lambda0.is_restricted(p) {
            return Err(Error::NotRestricted(*lambda0));
        }
        Ok(self.simples.restricted_simple(lambda0)?.character.translate(&lambda1.scale(p)))
    }

    /// Unitriangular elimination against `G₁T`-simples, highest weight first.
    pub fn decompose_g1t(&self, c: &Character) -> Result<BTreeMap<(Weight, Weight), i64>> {
        let d = self.datum().clone();
        let p = self.ctx().p;
        let key = |w: &Weight| (d.height_scaled(w), *w);
        let mut rest: BTreeMap<(i64, Weight), i64> = c.iter().map(|(w, k)| (key(w), *k)).collect();
        let mut out = BTreeMap::new();
        while let Some((&(_, top), &n)) = rest.iter().next_back() {
            let (l0, l1) = top.p_adic_split(p);
            if n < 0 {
                return Err(Error::NegativeMultiplicity { weight: top, mult: n });
            }
            out.insert((l0, l1), n);
            let shift = l1.scale(p);
            let simple = self.simples.restricted_simple(&l0)?;
            for (w, k) in simple.character.iter() {
                let kk = key(&(*w + shift));
                let e = rest.entry(kk).or_insert(0);
                *e -= n * k;
                if *e == 0 {
                    rest.remove(&kk);
                }
            }
        }
        Ok(out)
    }

    /// Composition factors of `Ẑ'(μ)` for any `μ`.
    pub fn baby_verma_decomposition(&self, mu: &Weight) -> Result<BabyVermaDecomp> {
        let p = self.ctx().p;
        let (m0, m1) = mu.p_adic_split(p);
        let rep = self.representative_decomp(&m0)?;
        let factors = rep.factors.iter().map(|((a, b), n)| ((*a, *b + m1), *n)).collect();
        Ok(BabyVermaDecomp { top: *mu, factors })
    }

    fn representative_decomp(&self, tau0: &Weight) -> Result<Arc<BabyVermaDecomp>> {
        if let Some(x) = self.decomp.lock().unwrap().get(tau0) {
            return Ok(x.clone());
        }
        let factors = self.decompose_g1t(&self.baby_verma(tau0))?;
        let r = Arc::new(BabyVermaDecomp { top: *tau0, factors });
        self.decomp.lock().unwrap().insert(*tau0, r.clone());
        Ok(r)
    }

    /// All `τ` with `[Ẑ'(τ) : L̂(λ)] ≠ 0`, with multiplicities.
    pub fn qhat_baby_vermas(&self, lambda: &Weight) -> Result<BTreeMap<Weight, i64>> {
        let d = self.datum().clone();
        let p = self.ctx().p;
        if !lambda.is_restricted(p) {
            return Err(Error::NotRestricted(*lambda));
        }
        let mut out = BTreeMap::new();
        for tau0 in d.restricted_weights(p) {
            let rep = self.representative_decomp(&tau0)?;
            for ((s0, s1), n) in &rep.factors {
                if s0 == lambda {
                    *out.entry(tau0 - s1.scale(p)).or_insert(0) += n;
                }
            }
        }
        Ok(out)
    }

    /// `ch Q̂₁(λ)`; `Q̂₁(λ₀ + pλ₁) = Q̂₁(λ₀) ⊗ pλ₁`.
    pub fn qhat_char(&self, lambda: &Weight) -> Result<Arc<Character>> {
        if let Some(x) = self.qhat.lock().unwrap().get(lambda) {
            return Ok(x.clone());
        }
        let (l0, l1) = lambda.p_adic_split(self.ctx().p);
        let shift = l1.scale(self.ctx().p);
        let mut ch = Character::zero(self.datum());
        for (tau, n) in self.qhat_baby_vermas(&l0)? {
            let tau = tau + shift;
            for (w, k) in self.base.iter() {
                ch.add_term(*w + tau, n * k);
            }
        }
        let ch = Arc::new(ch);
        self.qhat.lock().unwrap().insert(*lambda, ch.clone());
        Ok(ch)
    }

    /// Steinberg character `χ((p−1)ρ)`.
    pub fn steinberg(&self) -> Arc<Character> {
        let d = self.datum();
        self.ring().weyl_dominant(&d.rho().scale(self.ctx().p - 1))
    }

    /// `(p−1)ρ + w₀λ`.
    pub fn qhat_index(&self, lambda: &Weight) -> Weight {
        let d = self.datum();
        d.rho().scale(self.ctx().p - 1) + d.w0().apply(lambda)
    }

    /// `q(λ) = ch Q̂₁((p−1)ρ + w₀λ) / χ((p−1)ρ)`.
    pub fn q_char(&self, lambda: &Weight) -> Result<Character> {
        let top = self.qhat_index(lambda);
        self.qhat_char(&top)?.exact_divide(&self.steinberg())
    }

    /// `a^λ_μ` with `q(λ) = Σ_μ a^λ_μ s(μ)`.
    pub fn a_coefficients(&self, lambda: &Weight) -> Result<Expansion> {
        self.q_char(lambda)?.expand_orbit_basis()
    }
}

/// `e(μ) · ∏_{α>0} Σ_{0≤i<p^r} e(−iα)`.
pub fn baby_verma_char(mu: &Weight, ctx: &AlcoveContext) -> Character {
    let d = &ctx.datum;
    let q = ctx.pr();
    let mut ch = Character::monomial(d, *mu, 1);
    for beta in d.positive_roots() {
        let factor = Character::from_terms(d, (0..q).map(|i| (-beta.weight.scale(i), 1)));
        ch = ch.multiply(&factor).expect("same datum");
    }
    ch
}

/// Keep the weight spaces `top − ν` with `ν ∈ ℕJ`.
pub fn levi_truncate(c: &Character, levi: &RootDatum, top: &Weight) -> Character {
    Character::from_terms(c.datum(), c.iter().filter(|(w, _)| levi.le(w, top)).map(|(w, k)| (*w, *k)))
}
