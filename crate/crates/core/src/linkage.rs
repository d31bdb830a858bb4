//! Affine reflections `s_{β,mp}`, the strong linkage order `↑` and lowest
//! alcove tests at a prime `p`.

use std::sync::Arc;

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::rootdata::{Root, RootDatum};
use crate::weight::Weight;

/// A root datum together with the prime and the Frobenius level.
#[derive(Clone, Debug)]
pub struct AlcoveContext {
    pub datum: Arc<RootDatum>,
    pub p: i64,
    pub r: u32,
}

pub fn is_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// ν_p(n) for n ≠ 0.
pub fn p_valuation(mut n: i64, p: i64) -> i64 {
    debug_assert!(n != 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

impl AlcoveContext {
    pub fn new(datum: Arc<RootDatum>, p: i64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Config(format!("p = {p} is not a prime")));
        }
        if r < 1 {
            return Err(Error::Config("Frobenius level r must be at least 1".into()));
        }
        Ok(AlcoveContext { datum, p, r })
    }

    /// `p^r`.
    pub fn pr(&self) -> i64 {
        self.p.pow(self.r)
    }

    /// Same prime and level over another view of the lattice.
    pub fn with_datum(&self, datum: Arc<RootDatum>) -> Self {
        AlcoveContext { datum, p: self.p, r: self.r }
    }

    /// `s_{β,mp}·λ = λ − (⟨λ+ρ, β∨⟩ − mp) β`.
    pub fn affine_reflect(&self, lambda: &Weight, beta: &Root, m: i64) -> Weight {
        let d = &self.datum;
        let n = d.pair(&(*lambda + d.rho()), beta);
        *lambda - beta.weight.scale(n - m * self.p)
    }

    /// Every weight reachable from `λ` by downward affine reflections while
    /// staying `≥ floor`.
    pub fn linkage_closure(&self, lambda: &Weight, floor: &Weight) -> Vec<Weight> {
        let d = &self.datum;
        let p = self.p;
        let rho = d.rho();
        let mut seen = FxHashSet::default();
        if !d.le(floor, lambda) {
            return Vec::new();
        }
        seen.insert(*lambda);
        let mut stack = vec![*lambda];
        while let Some(nu) = stack.pop() {
            for beta in d.positive_roots() {
                let n = d.pair(&(nu + rho), beta);
                let mut k = n.rem_euclid(p);
                if k == 0 {
                    k = p;
                }
                loop {
                    let target = nu - beta.weight.scale(k);
                    if !d.le(floor, &target) {
                        break;
                    }
                    if seen.insert(target) {
                        stack.push(target);
                    }
                    k += p;
                }
            }
        }
        let mut v: Vec<Weight> = seen.into_iter().collect();
        v.sort_by(|a, b| d.cmp_weights(b, a));
        v
    }

    /// All dominant `μ` with `μ ↑ λ`, highest first.
    pub fn strong_linkage_down(&self, lambda: &Weight) -> Vec<Weight> {
        let d = &self.datum;
        let floor = d.minimal_dominant_in_class(lambda);
        self.linkage_closure(lambda, &floor).into_iter().filter(|w| d.is_dominant(w)).collect()
    }

    /// `μ ↑ λ`.
    pub fn is_linked_below(&self, mu: &Weight, lambda: &Weight) -> bool {
        let d = &self.datum;
        if !d.le(mu, lambda) {
            return false;
        }
        self.linkage_closure(lambda, mu).contains(mu)
    }

    /// Dominant `μ` with `μ − ρ ↑ λ − ρ`, highest first.
    pub fn shifted_linkage_index(&self, lambda: &Weight) -> Vec<Weight> {
        let d = &self.datum;
        let rho = d.rho();
        let floor = d.minimal_dominant_in_class(lambda) - rho;
        self.linkage_closure(&(*lambda - rho), &floor)
            .into_iter()
            .map(|w| w + rho)
            .filter(|w| d.is_dominant(w))
            .collect()
    }

    /// Dominant with `⟨λ+ρ, α₀∨⟩ ≤ p`.
    pub fn in_lowest_alcove_closure(&self, lambda: &Weight) -> bool {
        let d = &self.datum;
        d.is_dominant(lambda) && d.pair_highest_coroot(&(*lambda + d.rho())) <= self.p
    }

    /// Dominant with `⟨λ+ρ, α₀∨⟩ < p`.
    pub fn in_lowest_alcove_interior(&self, lambda: &Weight) -> bool {
        let d = &self.datum;
        d.is_dominant(lambda) && d.pair_highest_coroot(&(*lambda + d.rho())) < self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(s: &str, p: i64) -> AlcoveContext {
        AlcoveContext::new(RootDatum::from_label(s).unwrap(), p, 1).unwrap()
    }
    fn w(c: &[i64]) -> Weight {
        Weight::new(c)
    }

    #[test]
    fn reflections() {
        let c = ctx("A1", 3);
        let a = &c.datum.positive_roots()[0];
        assert_eq!(c.affine_reflect(&w(&[3]), a, 1), w(&[1]));
        // fixed point on the wall ⟨λ+ρ,α∨⟩ = 3
        assert_eq!(c.affine_reflect(&w(&[2]), a, 1), w(&[2]));
        // ⟨2ρ, α₀∨⟩ = 4
        let c2 = ctx("A2", 2);
        let a0 = c2.datum.highest_short_root().unwrap().clone();
        assert_eq!(c2.affine_reflect(&w(&[1, 1]), &a0, 1), w(&[-1, -1]));
        assert_eq!(ctx("A2", 3).affine_reflect(&w(&[1, 1]), &a0, 1), w(&[0, 0]));
    }

    #[test]
    fn linkage_sets() {
        let c = ctx("A1", 3);
        assert_eq!(c.strong_linkage_down(&w(&[3])), vec![w(&[3]), w(&[1])]);
        // the Steinberg weight is alone at p = 2
        assert_eq!(ctx("A2", 2).strong_linkage_down(&w(&[1, 1])), vec![w(&[1, 1])]);
        assert_eq!(ctx("A2", 3).strong_linkage_down(&w(&[1, 1])), vec![w(&[1, 1]), w(&[0, 0])]);
        let c3 = ctx("G2", 7);
        assert_eq!(c3.strong_linkage_down(&w(&[1, 0])), vec![w(&[1, 0])]);
        assert_eq!(c3.strong_linkage_down(&w(&[2, 0])), vec![w(&[2, 0]), w(&[0, 0])]);
    }

    #[test]
    fn alcoves() {
        let g = ctx("G2", 7);
        assert!(!g.in_lowest_alcove_closure(&w(&[2, 0])));
        assert!(g.in_lowest_alcove_closure(&w(&[1, 0])));
        let b = ctx("B2", 3);
        for x in [[0, 2], [0, 1], [1, 0]] {
            assert!(!b.in_lowest_alcove_closure(&w(&x)));
        }
        // ⟨ρ, α₀∨⟩ = h − 1 = 3 ≤ p
        assert!(b.in_lowest_alcove_closure(&w(&[0, 0])));
        assert!(!ctx("B2", 2).in_lowest_alcove_closure(&w(&[0, 0])));
    }

    #[test]
    fn rejects_non_prime() {
        assert!(AlcoveContext::new(RootDatum::from_label("A1").unwrap(), 4, 1).is_err());
        assert!(AlcoveContext::new(RootDatum::from_label("A1").unwrap(), 3, 0).is_err());
    }

    #[test]
    fn linked_below() {
        let c = ctx("A1", 3);
        assert!(c.is_linked_below(&w(&[1]), &w(&[3])));
        assert!(!c.is_linked_below(&w(&[3]), &w(&[1])));
        assert!(c.is_linked_below(&w(&[3]), &w(&[3])));
    }
}
