//! Indecomposable tilting characters, the coefficients
//! `t(λ) = ch T((p−1)ρ+λ) / χ((p−1)ρ) = Σ b^λ_μ s(μ)`, and character-level
//! necessary conditions for `T((p−1)ρ+λ)|_{G₁T} ≅ Q̂₁((p−1)ρ+w₀λ)`.
//!
//! Tilting characters are looked up in this order: an ingested table, the
//! rank-one closed form, the Steinberg module and the closed lowest alcove,
//! and finally the sandwich `ch Q̂₁ ≤ ch T ≤ ch(St ⊗ L(λ))`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::charring::{expansion_add, Character, Expansion};
use crate::error::{Error, Result};
use crate::g1t::G1T;
use crate::linkage::AlcoveContext;
use crate::simples::parse_table_lines;
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TiltProvenance {
    /// Steinberg module or a weight in the closed lowest alcove.
    BaseCase,
    /// Rank-one formula `χ(ν) + χ(2p−2−ν)`.
    ClosedForm,
    /// Read from a tilting table; the string names the source.
    Ingested(String),
    /// Squeezed between `ch Q̂₁` and `ch(St ⊗ L(λ))`.
    Pinched,
}

impl TiltProvenance {
    /// Data that does not come from `Q̂₁`.
    pub fn is_independent(&self) -> bool {
        matches!(self, TiltProvenance::ClosedForm | TiltProvenance::Ingested(_))
    }
}

/// Rows `[T(ν):∇(μ)]` for one `(type, p)`.
#[derive(Clone, Debug, Default)]
pub struct TiltingTable {
    entries: BTreeMap<Weight, (Expansion, String)>,
}

impl TiltingTable {
    pub fn empty() -> Self {
        TiltingTable::default()
    }

    /// Parse `type p : T=<w> : chi=<w> mult=<n>` lines; rows for another
    /// `(type, p)` are ignored.
    pub fn parse(text: &str, ctx: &AlcoveContext, source: &str) -> Result<Self> {
        let d = &ctx.datum;
        let mut rows: BTreeMap<Weight, Expansion> = BTreeMap::new();
        let mut first_line = HashMap::new();
        for tl in parse_table_lines(text, "T", "chi")? {
            if tl.label != d.label() || tl.p != ctx.p {
                continue;
            }
            let bad = |reason: &str| Error::MalformedOverride { line: tl.line, reason: reason.to_string() };
            if !d.is_dominant(&tl.top) || !d.is_dominant(&tl.sub) {
                return Err(bad("weights must be dominant"));
            }
            if tl.mult <= 0 {
                return Err(bad("multiplicity must be positive"));
            }
            if tl.top == tl.sub && tl.mult != 1 {
                return Err(bad("[T(ν):∇(ν)] must be 1"));
            }
            first_line.entry(tl.top).or_insert(tl.line);
            if rows.entry(tl.top).or_default().insert(tl.sub, tl.mult).is_some() {
                return Err(bad("duplicate chi entry"));
            }
        }
        let mut entries = BTreeMap::new();
        for (top, row) in rows {
            if !row.contains_key(&top) {
                return Err(Error::MalformedOverride {
                    line: first_line[&top],
                    reason: format!("row for T={top} lacks chi={top}"),
                });
            }
            for mu in row.keys() {
                if !ctx.is_linked_below(mu, &top) {
                    return Err(Error::LinkageViolation { top, factor: *mu });
                }
            }
            entries.insert(top, (row, source.to_string()));
        }
        // ch T(ν)* = ch T(−w₀ν)
        for (top, (row, _)) in &entries {
            let dual_top = d.minus_w0(top);
            if let Some((other, _)) = entries.get(&dual_top) {
                let mapped: Expansion = row.iter().map(|(w, n)| (d.minus_w0(w), *n)).collect();
                if &mapped != other {
                    return Err(Error::OverrideConflict {
                        weight: *top,
                        reason: format!("not dual to the row for T={dual_top}"),
                    });
                }
            }
        }
        Ok(TiltingTable { entries })
    }

    pub fn load(path: &std::path::Path, ctx: &AlcoveContext) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, ctx, &path.display().to_string())
    }

    pub fn merge(&mut self, other: TiltingTable) {
        self.entries.extend(other.entries);
    }

    pub fn get(&self, w: &Weight) -> Option<&(Expansion, String)> {
        self.entries.get(w)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Serialize in the table format, highest weights first.
    pub fn to_text(rows: &BTreeMap<Weight, Expansion>, ctx: &AlcoveContext) -> String {
        let d = &ctx.datum;
        let mut out = String::new();
        for (top, row) in rows {
            let mut terms: Vec<_> = row.iter().collect();
            terms.sort_by(|a, b| d.cmp_weights(b.0, a.0));
            for (mu, n) in terms {
                out.push_str(&format!("{} {} : T={} : chi={} mult={}\n", d.label(), ctx.p, top, mu, n));
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct TiltingResult {
    pub weight: Weight,
    /// `[T(ν):∇(μ)]`.
    pub nabla: Expansion,
    pub provenance: TiltProvenance,
    /// For pinched results: `ch(St ⊗ L(λ)) − ch Q̂₁` in the Weyl basis.
    pub residual: Option<Expansion>,
}

/// Tilting characters for one `(datum, p)`, memoized.
pub struct Tilting {
    g1t: Arc<G1T>,
    table: TiltingTable,
    cache: Mutex<HashMap<Weight, Arc<TiltingResult>>>,
}

impl Tilting {
    pub fn new(g1t: Arc<G1T>, table: TiltingTable) -> Self {
        Tilting { g1t, table, cache: Mutex::new(HashMap::new()) }
    }

    pub fn g1t(&self) -> &Arc<G1T> {
        &self.g1t
    }

    pub fn table(&self) -> &TiltingTable {
        &self.table
    }

    fn ctx(&self) -> &AlcoveContext {
        self.g1t.ctx()
    }

    /// `λ` with `ν = (p−1)ρ + λ`, if restricted.
    fn restricted_offset(&self, nu: &Weight) -> Option<Weight> {
        let d = &self.ctx().datum;
        let lambda = *nu - d.rho().scale(self.ctx().p - 1);
        lambda.is_restricted(self.ctx().p).then_some(lambda)
    }

    /// `[T(ν):∇(μ)]` for a system with at most one simple root, when
    /// `⟨ν, α∨⟩ ≤ 2p − 2`.
    pub fn rank_one_closed_form(&self, nu: &Weight) -> Option<Expansion> {
        let d = &self.ctx().datum;
        let p = self.ctx().p;
        let j = match d.simple_indices() {
            [] => return Some(Expansion::from([(*nu, 1)])),
            [j] => j,
            _ => return None,
        };
        let n = nu.get(*j);
        if n < 0 || n > 2 * p - 2 {
            return None;
        }
        let mut e = Expansion::from([(*nu, 1)]);
        if n > p - 1 {
            e.insert(*nu - d.simple_root(*j).scale(n - p + 1), 1);
        }
        Some(e)
    }

    pub fn tilting(&self, nu: &Weight) -> Result<Arc<TiltingResult>> {
        let d = self.ctx().datum.clone();
        if !d.is_dominant(nu) {
            return Err(Error::NotDominant(*nu));
        }
        if let Some(r) = self.cache.lock().unwrap().get(nu) {
            return Ok(r.clone());
        }
        let res = if let Some((row, source)) = self.table.get(nu) {
            if let Some(lambda) = self.restricted_offset(nu) {
                self.check_sandwich(&lambda, row)?;
            }
            TiltingResult { weight: *nu, nabla: row.clone(), provenance: TiltProvenance::Ingested(source.clone()), residual: None }
        } else if let Some(e) = self.rank_one_closed_form(nu) {
            TiltingResult { weight: *nu, nabla: e, provenance: TiltProvenance::ClosedForm, residual: None }
        } else if *nu == d.rho().scale(self.ctx().p - 1) || (d.is_full() && self.ctx().in_lowest_alcove_closure(nu)) {
            TiltingResult { weight: *nu, nabla: Expansion::from([(*nu, 1)]), provenance: TiltProvenance::BaseCase, residual: None }
        } else if let Some(lambda) = self.restricted_offset(nu) {
            match self.sandwich_pinch(&lambda)? {
                Some(r) => r,
                None => {
                    return Err(Error::TiltingDataMissing {
                        weight: *nu,
                        hint: format!("sandwich did not pinch; supply a T={nu} row"),
                    })
                }
            }
        } else {
            return Err(Error::TiltingDataMissing { weight: *nu, hint: format!("supply a T={nu} row") });
        };
        let res = Arc::new(res);
        self.cache.lock().unwrap().insert(*nu, res.clone());
        Ok(res)
    }

    pub fn tilting_char(&self, nu: &Weight) -> Result<Character> {
        Ok(self.g1t.ring().from_weyl_expansion(&self.tilting(nu)?.nabla))
    }

    /// `ch(St ⊗ L(λ))` in the Weyl basis.
    pub fn upper_bound(&self, lambda: &Weight) -> Result<Expansion> {
        let d = &self.ctx().datum;
        let st = d.rho().scale(self.ctx().p - 1);
        let l = self.g1t.simples().simple_char(lambda)?;
        Ok(self.g1t.ring().weyl_times(&st, &*l))
    }

    /// `ch Q̂₁((p−1)ρ + w₀λ)` in the Weyl basis.
    pub fn lower_bound(&self, lambda: &Weight) -> Result<Expansion> {
        let q = self.g1t.qhat_char(&self.g1t.qhat_index(lambda))?;
        if !q.is_invariant() {
            return Err(Error::Inconsistent { weight: *lambda, reason: "ch Q̂₁ is not W-invariant".into() });
        }
        Ok(self.g1t.ring().expand_weyl_dominant(q.dominant_part()))
    }

    fn check_sandwich(&self, lambda: &Weight, row: &Expansion) -> Result<()> {
        let ring = self.g1t.ring();
        let dom = |e: &Expansion| {
            let mut out = Expansion::new();
            for (mu, n) in e {
                expansion_add(&mut out, &ring.weyl_dominant_part(mu), *n);
            }
            out
        };
        let t = dom(row);
        let lo = dom(&self.lower_bound(lambda)?);
        let hi = dom(&self.upper_bound(lambda)?);
        let le = |a: &Expansion, b: &Expansion| {
            a.iter().all(|(w, n)| *n <= b.get(w).copied().unwrap_or(0)) && b.iter().all(|(w, n)| a.contains_key(w) || *n >= 0)
        };
        let nu = *lambda + self.ctx().datum.rho().scale(self.ctx().p - 1);
        if !le(&lo, &t) || !le(&t, &hi) {
            return Err(Error::OverrideConflict {
                weight: nu,
                reason: "tilting row violates ch Q̂₁ ≤ ch T ≤ ch(St ⊗ L(λ))".into(),
            });
        }
        if ring.from_weyl_expansion(row).exact_divide(&self.g1t.steinberg()).is_err() {
            return Err(Error::OverrideConflict { weight: nu, reason: "tilting row is not divisible by χ((p−1)ρ)".into() });
        }
        Ok(())
    }

    /// `Some` when `ch(St ⊗ L(λ)) − ch Q̂₁` is a nonnegative sum of known
    /// tilting characters of lower highest weight; then `ch T = ch Q̂₁`.
    pub fn sandwich_pinch(&self, lambda: &Weight) -> Result<Option<TiltingResult>> {
        let d = self.ctx().datum.clone();
        let upper = self.upper_bound(lambda)?;
        let lower = self.lower_bound(lambda)?;
        let mut residual = upper.clone();
        expansion_add(&mut residual, &lower, -1);
        let mut rest = residual.clone();
        while let Some(top) = rest.keys().copied().max_by(|a, b| d.cmp_weights(a, b)) {
            let c = rest[&top];
            if c < 0 {
                return Ok(None);
            }
            let t = match self.tilting(&top) {
                Ok(t) => t,
                Err(Error::TiltingDataMissing { .. }) => return Ok(None),
                Err(e) => return Err(e),
            };
            expansion_add(&mut rest, &t.nabla, -c);
        }
        let nu = *lambda + d.rho().scale(self.ctx().p - 1);
        Ok(Some(TiltingResult { weight: nu, nabla: lower, provenance: TiltProvenance::Pinched, residual: Some(residual) }))
    }

    /// `b^λ_μ` and where `ch T((p−1)ρ+λ)` came from.
    pub fn b_coefficients(&self, lambda: &Weight) -> Result<(Expansion, TiltProvenance)> {
        let d = &self.ctx().datum;
        let nu = *lambda + d.rho().scale(self.ctx().p - 1);
        let t = self.tilting(&nu)?;
        let ch = self.g1t.ring().from_weyl_expansion(&t.nabla);
        let b = ch.exact_divide(&self.g1t.steinberg())?.expand_orbit_basis()?;
        Ok((b, t.provenance.clone()))
    }
}

/// Outcome of the character-level necessary conditions at one `λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub lambda: Weight,
    pub qhat_top: Weight,
    /// `(name, passed)` in a fixed order.
    pub checks: Vec<(String, bool)>,
    pub a: Option<Expansion>,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Run the necessary conditions on `ch Q̂₁((p−1)ρ + w₀λ)`.
pub fn tmc_necessary_checks(g: &G1T, lambda: &Weight) -> Result<CheckOutcome> {
    let top = g.qhat_index(lambda);
    let q = g.qhat_char(&top)?;
    let dual_top = g.qhat_index(&g.datum().minus_w0(lambda));
    let partner = g.qhat_char(&dual_top)?;
    Ok(necessary_checks_on(g, lambda, &q, Some(&partner)))
}

/// The same conditions on an arbitrary candidate for `ch Q̂₁((p−1)ρ + w₀λ)`.
/// `dual_partner` is the candidate at `(p−1)ρ − λ`.
pub fn necessary_checks_on(g: &G1T, lambda: &Weight, q: &Character, dual_partner: Option<&Character>) -> CheckOutcome {
    let d = g.datum();
    let ring = g.ring();
    let mut checks = Vec::new();
    let mut failures = Vec::new();
    let mut record = |name: &str, ok: bool, why: String| {
        checks.push((name.to_string(), ok));
        if !ok {
            failures.push(format!("{name}: {why}"));
        }
    };
    let invariant = q.is_invariant();
    record("w-invariant", invariant, "ch Q̂₁ is not W-invariant".into());
    if invariant {
        let chi = ring.expand_weyl_dominant(q.dominant_part());
        let neg: Vec<_> = chi.iter().filter(|(_, n)| **n < 0).map(|(w, n)| format!("{n}·χ({w})")).collect();
        record("weyl-nonnegative", neg.is_empty(), neg.join(", "));
    }
    if let Some(partner) = dual_partner {
        record("dual", q.dual_involution() == *partner, "dual of ch Q̂₁ differs from the partner".into());
    }
    let mut a = None;
    match q.exact_divide(&g.steinberg()) {
        Ok(quot) => {
            record("steinberg-divisible", true, String::new());
            match quot.expand_orbit_basis() {
                Ok(e) => {
                    let neg: Vec<_> = e.iter().filter(|(_, n)| **n < 0).map(|(w, n)| format!("a_{w} = {n}")).collect();
                    record("a-nonnegative", neg.is_empty(), neg.join(", "));
                    let index = g.ctx().shifted_linkage_index(lambda);
                    let outside: Vec<_> = e.keys().filter(|mu| !index.contains(mu)).map(|mu| mu.to_string()).collect();
                    record("a-support-linked", outside.is_empty(), format!("outside index set: {}", outside.join(" ")));
                    let top = e.get(lambda).copied().unwrap_or(0);
                    record("a-top", top == 1, format!("a_λ^λ = {top}"));
                    a = Some(e);
                }
                Err(_) => record("quotient-invariant", false, "q(λ) is not W-invariant".into()),
            }
        }
        Err(_) => record("steinberg-divisible", false, "ch Q̂₁ is not divisible by χ((p−1)ρ)".into()),
    }
    let _ = d;
    CheckOutcome { lambda: *lambda, qhat_top: g.qhat_index(lambda), checks, a, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::CharRing;
    use crate::rootdata::RootDatum;
    use crate::simples::{DecompTable, SimpleChars};

    fn tilt(s: &str, p: i64, table: &str) -> Tilting {
        let d = RootDatum::from_label(s).unwrap();
        let ctx = AlcoveContext::new(d.clone(), p, 1).unwrap();
        let sc = Arc::new(SimpleChars::new(ctx.clone(), Arc::new(CharRing::new(d)), DecompTable::builtin(&ctx)));
        let g = Arc::new(G1T::new(sc).unwrap());
        Tilting::new(g, TiltingTable::parse(table, &ctx, "test").unwrap())
    }
    fn w(c: &[i64]) -> Weight {
        Weight::new(c)
    }

    #[test]
    fn chain_examples() {
        let t = tilt("A1", 3, "");
        let r = t.tilting(&w(&[3])).unwrap();
        assert_eq!(r.nabla, Expansion::from([(w(&[3]), 1), (w(&[1]), 1)]));
        assert_eq!(r.provenance, TiltProvenance::ClosedForm);
        assert_eq!(t.tilting(&w(&[1])).unwrap().nabla, Expansion::from([(w(&[1]), 1)]));
        let b = tilt("B2", 3, "");
        assert_eq!(b.tilting(&w(&[0, 0])).unwrap().provenance, TiltProvenance::BaseCase);
        let st = b.tilting(&w(&[2, 2])).unwrap();
        assert_eq!(st.nabla, Expansion::from([(w(&[2, 2]), 1)]));
        assert!(matches!(b.tilting(&w(&[1, 3])), Err(Error::TiltingDataMissing { .. }) | Ok(_)));
    }

    #[test]
    fn pinch_examples() {
        let t = tilt("A1", 2, "");
        let r = t.sandwich_pinch(&w(&[1])).unwrap().unwrap();
        assert_eq!(r.nabla, Expansion::from([(w(&[2]), 1), (w(&[0]), 1)]));
        assert_eq!(r.residual, Some(Expansion::new()));
        let t3 = tilt("A1", 3, "");
        let r = t3.sandwich_pinch(&w(&[1])).unwrap().unwrap();
        assert_eq!(r.nabla, Expansion::from([(w(&[3]), 1), (w(&[1]), 1)]));
    }

    #[test]
    fn closed_form_agrees_with_pinch() {
        for p in [2, 3, 5, 7, 11, 13] {
            let t = tilt("A1", p, "");
            for l in 0..p {
                let nu = w(&[p - 1 + l]);
                let pinched = t.sandwich_pinch(&w(&[l])).unwrap().unwrap();
                assert_eq!(pinched.nabla, t.tilting(&nu).unwrap().nabla, "p={p} λ={l}");
            }
        }
    }

    #[test]
    fn b_examples() {
        let t = tilt("A1", 3, "");
        assert_eq!(t.b_coefficients(&w(&[0])).unwrap().0, Expansion::from([(w(&[0]), 1)]));
        assert_eq!(t.b_coefficients(&w(&[1])).unwrap().0, Expansion::from([(w(&[1]), 1)]));
        let t5 = tilt("A1", 5, "");
        for l in 0..5 {
            let (b, prov) = t5.b_coefficients(&w(&[l])).unwrap();
            assert_eq!(b, Expansion::from([(w(&[l]), 1)]));
            assert!(prov.is_independent());
        }
    }

    #[test]
    fn necessary_checks() {
        for p in [2, 3, 5, 7, 11, 13] {
            let t = tilt("A1", p, "");
            for l in 0..p {
                assert!(tmc_necessary_checks(t.g1t(), &w(&[l])).unwrap().passed());
            }
        }
        let t = tilt("A1", 3, "");
        let g = t.g1t();
        // χ(2) − χ(0), not a multiple of χ(2)
        let fake = Character::from_terms(g.datum(), [(w(&[2]), 1), (w(&[-2]), 1)]);
        let out = necessary_checks_on(g, &w(&[1]), &fake, None);
        assert!(!out.passed());
        assert!(out.failures.iter().any(|f| f.starts_with("weyl-nonnegative")));
        assert!(out.failures.iter().any(|f| f.starts_with("steinberg-divisible")));
    }

    #[test]
    fn table_parsing() {
        let d = RootDatum::from_label("A1").unwrap();
        let ctx = AlcoveContext::new(d, 3, 1).unwrap();
        let ok = "A1 3 : T=3 : chi=3 mult=1\nA1 3 : T=3 : chi=1 mult=1\n";
        assert_eq!(TiltingTable::parse(ok, &ctx, "t").unwrap().len(), 1);
        let unlinked = "A1 3 : T=3 : chi=3 mult=1\nA1 3 : T=3 : chi=2 mult=1\n";
        assert!(matches!(TiltingTable::parse(unlinked, &ctx, "t"), Err(Error::LinkageViolation { .. })));
        let no_top = "A1 3 : T=3 : chi=1 mult=1\n";
        assert!(matches!(TiltingTable::parse(no_top, &ctx, "t"), Err(Error::MalformedOverride { .. })));
        let garbage = "A1 3 : T=3 chi=1 mult=1\n";
        assert!(matches!(TiltingTable::parse(garbage, &ctx, "t"), Err(Error::MalformedOverride { line: 1, .. })));
    }

    #[test]
    fn ingested_rows_are_sandwich_checked() {
        // T(3) = χ(3) alone is below ch Q̂₁(1) = χ(3) + χ(1)
        let t = tilt("A1", 3, "A1 3 : T=3 : chi=3 mult=1\n");
        assert!(matches!(t.tilting(&w(&[3])), Err(Error::OverrideConflict { .. })));
        let good = tilt("A1", 3, "A1 3 : T=3 : chi=3 mult=1\nA1 3 : T=3 : chi=1 mult=1\n");
        assert!(matches!(good.tilting(&w(&[3])).unwrap().provenance, TiltProvenance::Ingested(_)));
    }
}
