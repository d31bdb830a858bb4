//! Characters of simple modules.
//!
//! Restricted simple characters come from the Jantzen sum formula: the sum
//! `Σ_{β>0} Σ_{0<mp<⟨λ+ρ,β∨⟩} ν_p(mp) χ(s_{β,mp}·λ)` is re-expressed in simple
//! characters of lower weights, which bounds every multiplicity
//! `[∇(λ):L(μ)]` from above and decides whether it is zero. When all bounds
//! are 0 or 1 the decomposition is forced; otherwise the candidate
//! resolutions are filtered by nonnegativity and the computation fails with
//! [`Error::Underdetermined`] unless exactly one survives or an override
//! table supplies the row. General dominant weights use Steinberg's tensor
//! product theorem.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::charring::{expansion_add, CharRing, Character, Expansion};
use crate::error::{Error, Result};
use crate::linkage::{p_valuation, AlcoveContext};
use crate::rootdata::TypeLabel;
use crate::shapovalov::FormRank;
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Provenance {
    /// Forced by the sum formula.
    JsfDerived,
    /// Taken from an override table; the string names the source.
    Override(String),
    /// The sum formula left a choice, settled by weight multiplicities from
    /// the contravariant form mod `p`.
    FormRank,
}

/// Rows `[∇(λ):L(μ)]` for one `(type, p)`.
#[derive(Clone, Debug, Default)]
pub struct DecompTable {
    entries: BTreeMap<Weight, (Expansion, String)>,
}

/// Override rows shipped with the crate, grouped by source. Every row is
/// cross-checked against the sum formula when loaded into [`SimpleChars`].
pub const BUILTIN_OVERRIDES: &[(&str, &str)] = &[
    ("builtin:simple-nabla", SIMPLE_NABLA_ROWS),
    ("builtin:contravariant-form", FORM_RANK_ROWS),
];

/// Decompositions used by the rank-2 Ext¹ analysis.
const SIMPLE_NABLA_ROWS: &str = "\
# B2, p = 3: L(γ) = ∇(γ) for γ in {0, ω1, ω2, 2ω2}
B2 3 : nabla=0,0 : factor=0,0 mult=1
B2 3 : nabla=1,0 : factor=1,0 mult=1
B2 3 : nabla=0,1 : factor=0,1 mult=1
B2 3 : nabla=0,2 : factor=0,2 mult=1
# B2, p = 2: L(ω2) = ∇(ω2)
B2 2 : nabla=0,1 : factor=0,1 mult=1
# G2, p = 2: the Steinberg module is simple
G2 2 : nabla=1,1 : factor=1,1 mult=1
# G2, p = 3: L(2ω1) = ∇(2ω1)
G2 3 : nabla=2,0 : factor=2,0 mult=1
# G2, p = 5: L(γ) = ∇(γ) for γ in {0, ω1, ω2, 2ω1}
G2 5 : nabla=0,0 : factor=0,0 mult=1
G2 5 : nabla=1,0 : factor=1,0 mult=1
G2 5 : nabla=0,1 : factor=0,1 mult=1
G2 5 : nabla=2,0 : factor=2,0 mult=1
# G2, p = 7: ∇(2ω1) is not simple; its socle is the trivial module
G2 7 : nabla=2,0 : factor=2,0 mult=1
G2 7 : nabla=2,0 : factor=0,0 mult=1
";

/// The restricted rank-2 rows the sum formula leaves open, settled by
/// weight multiplicities from the contravariant form mod `p`
/// (see [`SimpleChars::with_form_resolution`]).
const FORM_RANK_ROWS: &str = "\
G2 3 : nabla=1,1 : factor=1,1 mult=1
G2 3 : nabla=1,1 : factor=0,1 mult=1
G2 3 : nabla=1,1 : factor=1,0 mult=1
G2 3 : nabla=1,1 : factor=0,0 mult=1
G2 3 : nabla=0,2 : factor=0,2 mult=1
G2 3 : nabla=0,2 : factor=1,1 mult=1
G2 3 : nabla=0,2 : factor=0,0 mult=1
G2 3 : nabla=1,2 : factor=1,2 mult=1
G2 3 : nabla=1,2 : factor=0,2 mult=1
G2 3 : nabla=1,2 : factor=3,0 mult=1
G2 3 : nabla=1,2 : factor=1,1 mult=1
G2 3 : nabla=1,2 : factor=0,1 mult=2
G2 5 : nabla=4,2 : factor=4,2 mult=1
G2 5 : nabla=4,2 : factor=4,1 mult=1
G2 5 : nabla=4,2 : factor=0,2 mult=1
G2 5 : nabla=4,3 : factor=4,3 mult=1
G2 5 : nabla=4,3 : factor=6,1 mult=1
G2 5 : nabla=4,3 : factor=2,3 mult=1
G2 5 : nabla=4,3 : factor=1,0 mult=1
G2 7 : nabla=3,3 : factor=3,3 mult=1
G2 7 : nabla=3,3 : factor=5,1 mult=1
G2 7 : nabla=3,3 : factor=0,4 mult=1
G2 7 : nabla=3,3 : factor=2,2 mult=1
G2 7 : nabla=3,3 : factor=1,2 mult=1
G2 7 : nabla=4,3 : factor=4,3 mult=1
G2 7 : nabla=4,3 : factor=3,3 mult=1
G2 7 : nabla=4,3 : factor=7,0 mult=1
G2 7 : nabla=4,3 : factor=5,1 mult=1
G2 7 : nabla=4,3 : factor=2,2 mult=1
G2 7 : nabla=4,3 : factor=1,2 mult=1
G2 7 : nabla=4,3 : factor=1,1 mult=1
G2 7 : nabla=6,2 : factor=6,2 mult=1
G2 7 : nabla=6,2 : factor=8,0 mult=1
G2 7 : nabla=6,2 : factor=4,2 mult=1
G2 7 : nabla=6,2 : factor=1,3 mult=1
G2 7 : nabla=4,4 : factor=4,4 mult=1
G2 7 : nabla=4,4 : factor=4,3 mult=1
G2 7 : nabla=4,4 : factor=2,2 mult=1
G2 7 : nabla=4,4 : factor=1,2 mult=1
G2 7 : nabla=4,4 : factor=1,1 mult=1
G2 7 : nabla=4,4 : factor=2,0 mult=1
G2 7 : nabla=6,3 : factor=6,3 mult=1
G2 7 : nabla=6,3 : factor=6,2 mult=1
G2 7 : nabla=6,3 : factor=1,3 mult=1
G2 7 : nabla=3,5 : factor=3,5 mult=1
G2 7 : nabla=3,5 : factor=4,4 mult=1
G2 7 : nabla=3,5 : factor=1,2 mult=1
G2 7 : nabla=3,5 : factor=1,1 mult=1
G2 7 : nabla=3,5 : factor=2,0 mult=1
G2 7 : nabla=3,5 : factor=0,0 mult=1
G2 7 : nabla=5,5 : factor=5,5 mult=1
G2 7 : nabla=5,5 : factor=8,2 mult=1
G2 7 : nabla=5,5 : factor=3,5 mult=1
G2 7 : nabla=5,5 : factor=4,4 mult=1
G2 7 : nabla=5,5 : factor=2,0 mult=1
G2 7 : nabla=5,5 : factor=0,0 mult=1
G2 7 : nabla=6,5 : factor=6,5 mult=1
G2 7 : nabla=6,5 : factor=10,1 mult=1
G2 7 : nabla=6,5 : factor=2,5 mult=1
G2 7 : nabla=6,5 : factor=3,0 mult=1
";

/// One parsed line of a `type p : key=<w> : key=<w> mult=<n>` table.
pub(crate) struct TableLine {
    pub line: usize,
    pub label: TypeLabel,
    pub p: i64,
    pub top: Weight,
    pub sub: Weight,
    pub mult: i64,
}

/// Strict parser shared by the decomposition and tilting table formats.
pub(crate) fn parse_table_lines(text: &str, top_key: &str, sub_key: &str) -> Result<Vec<TableLine>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let bad = |reason: &str| Error::MalformedOverride { line, reason: reason.to_string() };
        let parts: Vec<&str> = s.split(" : ").collect();
        if parts.len() != 3 {
            return Err(bad("expected three ` : `-separated fields"));
        }
        let head: Vec<&str> = parts[0].split_whitespace().collect();
        if head.len() != 2 {
            return Err(bad("expected `type p`"));
        }
        let label: TypeLabel = head[0].parse().map_err(|_| bad("unknown type label"))?;
        let p: i64 = head[1].parse().map_err(|_| bad("bad prime"))?;
        let top = parts[1]
            .strip_prefix(top_key)
            .and_then(|x| x.strip_prefix('='))
            .ok_or_else(|| bad(&format!("expected `{top_key}=`")))?;
        let top = Weight::parse_coords(top).map_err(|_| bad("bad weight"))?;
        let rest: Vec<&str> = parts[2].split(' ').collect();
        if rest.len() != 2 {
            return Err(bad(&format!("expected `{sub_key}=<w> mult=<n>`")));
        }
        let sub = rest[0]
            .strip_prefix(sub_key)
            .and_then(|x| x.strip_prefix('='))
            .ok_or_else(|| bad(&format!("expected `{sub_key}=`")))?;
        let sub = Weight::parse_coords(sub).map_err(|_| bad("bad weight"))?;
        let mult = rest[1]
            .strip_prefix("mult=")
            .and_then(|x| x.parse::<i64>().ok())
            .ok_or_else(|| bad("expected `mult=<n>`"))?;
        if top.rank() != label.rank || sub.rank() != label.rank {
            return Err(bad("weight rank does not match type"));
        }
        out.push(TableLine { line, label, p, top, sub, mult });
    }
    Ok(out)
}

impl DecompTable {
    pub fn empty() -> Self {
        DecompTable::default()
    }

    /// Parse and validate the rows of `text` that belong to `ctx`'s type and
    /// prime; rows for other `(type, p)` pairs are ignored.
    pub fn parse(text: &str, ctx: &AlcoveContext, source: &str) -> Result<Self> {
        let d = &ctx.datum;
        let mut rows: BTreeMap<Weight, Expansion> = BTreeMap::new();
        let mut first_line: HashMap<Weight, usize> = HashMap::new();
        for tl in parse_table_lines(text, "nabla", "factor")? {
            if tl.label != d.label() || tl.p != ctx.p {
                continue;
            }
            let bad = |reason: &str| Error::MalformedOverride { line: tl.line, reason: reason.to_string() };
            if !tl.top.is_restricted(ctx.p) {
                return Err(bad("nabla weight must be restricted"));
            }
            if !d.is_dominant(&tl.sub) {
                return Err(bad("factor weight must be dominant"));
            }
            if tl.mult <= 0 {
                return Err(bad("multiplicity must be positive"));
            }
            if tl.top == tl.sub && tl.mult != 1 {
                return Err(bad("[∇(λ):L(λ)] must be 1"));
            }
            first_line.entry(tl.top).or_insert(tl.line);
            let row = rows.entry(tl.top).or_default();
            if row.insert(tl.sub, tl.mult).is_some() {
                return Err(bad("duplicate factor"));
            }
        }
        let mut entries = BTreeMap::new();
        for (top, row) in rows {
            if !row.contains_key(&top) {
                return Err(Error::MalformedOverride {
                    line: first_line[&top],
                    reason: format!("row for nabla={top} lacks its top factor"),
                });
            }
            for mu in row.keys() {
                if !ctx.is_linked_below(mu, &top) {
                    return Err(Error::LinkageViolation { top, factor: *mu });
                }
            }
            entries.insert(top, (row, source.to_string()));
        }
        Ok(DecompTable { entries })
    }

    /// The rows of [`BUILTIN_OVERRIDES`] that apply to `ctx`.
    pub fn builtin(ctx: &AlcoveContext) -> Self {
        let mut table = DecompTable::empty();
        for (source, rows) in BUILTIN_OVERRIDES {
            table.merge(Self::parse(rows, ctx, source).expect("builtin override table is well formed"));
        }
        table
    }

    pub fn load(path: &std::path::Path, ctx: &AlcoveContext) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, ctx, &path.display().to_string())
    }

    /// Rows of `other` replace rows of `self` for the same weight.
    pub fn merge(&mut self, other: DecompTable) {
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

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.entries.keys()
    }
}

/// Result of the restricted computation for one weight.
#[derive(Clone, Debug)]
pub struct RestrictedSimple {
    pub weight: Weight,
    pub character: Arc<Character>,
    /// `[∇(λ):L(μ)]`, including `λ` itself.
    pub decomposition: Expansion,
    /// The sum formula expressed in simple characters.
    pub jsf_bounds: Expansion,
    pub provenance: Provenance,
}

/// Simple characters for one `(datum, p)`, memoized.
pub struct SimpleChars {
    ctx: AlcoveContext,
    ring: Arc<CharRing>,
    overrides: DecompTable,
    restricted: Mutex<HashMap<Weight, Arc<RestrictedSimple>>>,
    simple: Mutex<HashMap<Weight, Arc<Character>>>,
    simple_dom: Mutex<HashMap<Weight, Arc<Expansion>>>,
    form_resolution: bool,
}

/// Cap on the number of candidate resolutions tried for one weight.
const MAX_RESOLUTIONS: usize = 4096;

impl SimpleChars {
    pub fn new(ctx: AlcoveContext, ring: Arc<CharRing>, overrides: DecompTable) -> Self {
        SimpleChars {
            ctx,
            ring,
            overrides,
            restricted: Mutex::new(HashMap::new()),
            simple: Mutex::new(HashMap::new()),
            simple_dom: Mutex::new(HashMap::new()),
            form_resolution: true,
        }
    }

    /// Whether choices left open by the sum formula are settled through the
    /// contravariant form. When off they raise [`Error::Underdetermined`].
    pub fn with_form_resolution(mut self, on: bool) -> Self {
        self.form_resolution = on;
        self
    }

    pub fn ctx(&self) -> &AlcoveContext {
        &self.ctx
    }

    pub fn ring(&self) -> &Arc<CharRing> {
        &self.ring
    }

    pub fn overrides(&self) -> &DecompTable {
        &self.overrides
    }

    /// The sum formula in the Weyl basis.
    pub fn jantzen_sum_expansion(&self, lambda: &Weight) -> Result<Expansion> {
        let d = &self.ctx.datum;
        if !d.is_dominant(lambda) {
            return Err(Error::NotDominant(*lambda));
        }
        let p = self.ctx.p;
        let lr = *lambda + d.rho();
        let mut out = Expansion::new();
        for beta in d.positive_roots() {
            let n = d.pair(&lr, beta);
            let mut m = 1;
            while m * p < n {
                let target = self.ctx.affine_reflect(lambda, beta, m);
                if let Some((dom, sign)) = self.ring.normalize(&target) {
                    let e = out.entry(dom).or_insert(0);
                    *e += sign * p_valuation(m * p, p);
                    if *e == 0 {
                        out.remove(&dom);
                    }
                }
                m += 1;
            }
        }
        Ok(out)
    }

    /// `Σ_{i>0} ch ∇(λ)^i` as a virtual character.
    pub fn jantzen_sum(&self, lambda: &Weight) -> Result<Character> {
        Ok(self.ring.from_weyl_expansion(&self.jantzen_sum_expansion(lambda)?))
    }

    /// Express the dominant part of an invariant character in simple
    /// characters by descending elimination.
    pub fn decompose_dominant(&self, mut rest: Expansion) -> Result<Expansion> {
        let d = self.ctx.datum.clone();
        let mut out = Expansion::new();
        while let Some(top) = rest.keys().copied().max_by(|a, b| d.cmp_weights(a, b)) {
            let n = rest[&top];
            out.insert(top, n);
            let s = self.simple_dominant(&top)?;
            expansion_add(&mut rest, &s, -n);
        }
        Ok(out)
    }

    /// `[∇(λ):L(μ)]` for any dominant `λ`.
    pub fn nabla_decomposition(&self, lambda: &Weight) -> Result<Expansion> {
        let d = &self.ctx.datum;
        if !d.is_dominant(lambda) {
            return Err(Error::NotDominant(*lambda));
        }
        if lambda.is_restricted(self.ctx.p) {
            return Ok(self.restricted_simple(lambda)?.decomposition.clone());
        }
        self.decompose_dominant((*self.ring.weyl_dominant_part(lambda)).clone())
    }

    pub fn restricted_simple(&self, lambda: &Weight) -> Result<Arc<RestrictedSimple>> {
        if let Some(r) = self.restricted.lock().unwrap().get(lambda) {
            return Ok(r.clone());
        }
        let r = Arc::new(self.compute_restricted(lambda)?);
        self.restricted.lock().unwrap().insert(*lambda, r.clone());
        Ok(r)
    }

    pub fn restricted_simple_char(&self, lambda: &Weight) -> Result<Character> {
        Ok((*self.restricted_simple(lambda)?.character).clone())
    }

    fn compute_restricted(&self, lambda: &Weight) -> Result<RestrictedSimple> {
        let d = self.ctx.datum.clone();
        if !lambda.is_restricted(self.ctx.p) {
            return Err(Error::NotRestricted(*lambda));
        }
        let jsf = self.jantzen_sum_expansion(lambda)?;
        let mut jsf_dom = Expansion::new();
        for (nu, k) in &jsf {
            expansion_add(&mut jsf_dom, &self.ring.weyl_dominant_part(nu), *k);
        }
        let bounds = self.decompose_dominant(jsf_dom)?;
        if let Some((mu, c)) = bounds.iter().find(|(_, c)| **c < 0) {
            return Err(Error::Inconsistent {
                weight: *lambda,
                reason: format!("sum formula has negative coefficient {c} at L({mu})"),
            });
        }
        let chi_dom = (*self.ring.weyl_dominant_part(lambda)).clone();
        let candidate = |mults: &Expansion| -> Result<Expansion> {
            let mut ch = chi_dom.clone();
            for (mu, m) in mults {
                expansion_add(&mut ch, &*self.simple_dominant(mu)?, -m);
            }
            Ok(ch)
        };
        let (mults, provenance) = if let Some((row, source)) = self.overrides.get(lambda) {
            let mut mults = row.clone();
            mults.remove(lambda);
            for (mu, c) in &bounds {
                let m = mults.get(mu).copied().unwrap_or(0);
                if m > *c || (m == 0 && *c > 0) {
                    return Err(Error::OverrideConflict {
                        weight: *lambda,
                        reason: format!("[∇:L({mu})] = {m} incompatible with sum-formula bound {c}"),
                    });
                }
            }
            if let Some(mu) = mults.keys().find(|mu| !bounds.contains_key(mu)) {
                return Err(Error::OverrideConflict {
                    weight: *lambda,
                    reason: format!("L({mu}) listed but absent from the sum formula"),
                });
            }
            if candidate(&mults)?.values().any(|&c| c < 0) {
                return Err(Error::OverrideConflict {
                    weight: *lambda,
                    reason: "resulting character has negative multiplicities".into(),
                });
            }
            (mults, Provenance::Override(source.clone()))
        } else {
            let fixed: Expansion = bounds.iter().filter(|(_, c)| **c == 1).map(|(w, c)| (*w, *c)).collect();
            let ambiguous: Vec<(Weight, i64)> = bounds.iter().filter(|(_, c)| **c > 1).map(|(w, c)| (*w, *c)).collect();
            let combos: usize = ambiguous.iter().map(|(_, c)| *c as usize).product();
            if combos > MAX_RESOLUTIONS {
                return Err(Error::Underdetermined {
                    weight: *lambda,
                    ambiguous: ambiguous.iter().map(|(w, _)| *w).collect(),
                });
            }
            let mut survivors = Vec::new();
            for k in 0..combos.max(1) {
                let mut mults = fixed.clone();
                let mut idx = k;
                for (mu, c) in &ambiguous {
                    mults.insert(*mu, 1 + (idx % *c as usize) as i64);
                    idx /= *c as usize;
                }
                if candidate(&mults)?.values().all(|&c| c >= 0) {
                    survivors.push(mults);
                }
            }
            let mut provenance = Provenance::JsfDerived;
            if survivors.len() > 1 && self.form_resolution {
                let mut form = FormRank::new(&d, *lambda, self.ctx.p);
                let mut order: Vec<Weight> = ambiguous.iter().map(|(mu, _)| *mu).collect();
                order.sort_by(|a, b| d.cmp_weights(b, a));
                for mu in order {
                    if survivors.len() <= 1 {
                        break;
                    }
                    let r = form.simple_multiplicity(&mu).unwrap_or(0) as i64;
                    let mut kept = Vec::new();
                    for m in survivors {
                        if candidate(&m)?.get(&mu).copied().unwrap_or(0) == r {
                            kept.push(m);
                        }
                    }
                    survivors = kept;
                }
                provenance = Provenance::FormRank;
            }
            match survivors.len() {
                1 => (survivors.pop().unwrap(), provenance),
                0 => {
                    return Err(Error::Inconsistent {
                        weight: *lambda,
                        reason: "no nonnegative resolution of the sum formula".into(),
                    })
                }
                _ => {
                    return Err(Error::Underdetermined {
                        weight: *lambda,
                        ambiguous: ambiguous.iter().map(|(w, _)| *w).collect(),
                    })
                }
            }
        };
        // full character
        let mut ch = (*self.ring.weyl_dominant(lambda)).clone();
        for (mu, m) in &mults {
            ch.add_scaled(&*self.simple_char(mu)?, -m);
        }
        debug_assert!(ch.is_nonnegative());
        let mut decomposition = mults;
        decomposition.insert(*lambda, 1);
        Ok(RestrictedSimple { weight: *lambda, character: Arc::new(ch), decomposition, jsf_bounds: bounds, provenance })
    }

    /// `ch L(λ)` for dominant `λ` via `L(λ₀) ⊗ L(λ₁)^{[1]}`.
    pub fn simple_char(&self, lambda: &Weight) -> Result<Arc<Character>> {
        let d = self.ctx.datum.clone();
        if !d.is_dominant(lambda) {
            return Err(Error::NotDominant(*lambda));
        }
        if let Some(c) = self.simple.lock().unwrap().get(lambda) {
            return Ok(c.clone());
        }
        let ch = if d.simple_indices().iter().all(|&i| lambda.get(i) == 0) {
            Arc::new(Character::monomial(&d, *lambda, 1))
        } else if lambda.is_restricted(self.ctx.p) {
            self.restricted_simple(lambda)?.character.clone()
        } else {
            let (lo, hi) = lambda.p_adic_split(self.ctx.p);
            let low = self.restricted_simple(&lo)?.character.clone();
            let high = self.simple_char(&hi)?.frobenius(self.ctx.p);
            Arc::new(low.multiply(&high)?)
        };
        self.simple.lock().unwrap().insert(*lambda, ch.clone());
        Ok(ch)
    }

    pub fn simple_dominant(&self, lambda: &Weight) -> Result<Arc<Expansion>> {
        if let Some(c) = self.simple_dom.lock().unwrap().get(lambda) {
            return Ok(c.clone());
        }
        let e = Arc::new(self.simple_char(lambda)?.dominant_part());
        self.simple_dom.lock().unwrap().insert(*lambda, e.clone());
        Ok(e)
    }

    /// Is `∇(λ)` simple?
    pub fn nabla_is_simple(&self, lambda: &Weight) -> Result<bool> {
        Ok(self.nabla_decomposition(lambda)?.len() == 1)
    }
}
