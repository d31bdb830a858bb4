//! Weights `γ` that can occur in `Ext¹_{G₁}(L(λ), L(μ))^{(−1)}`.
//!
//! A candidate is a dominant `γ` with
//! `pγ ≤ −w₀λ + μ + α` for some simple `α` and `pγ ≤ 2(p−1)ρ + w₀μ − λ`.
//! Such `γ` are expected to satisfy `⟨γ, α₀∨⟩ ≤ h − 2` (`h − 1` in type A₁)
//! when `p > 2` for two root lengths and `p > 3` in type G₂.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linkage::AlcoveContext;
use crate::rootdata::{CartanType, RootDatum};
use crate::simples::SimpleChars;
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtCandidate {
    pub gamma: Weight,
    /// Simple roots `α` (0-based) with `pγ ≤ −w₀λ + μ + α`.
    pub witnesses: Vec<usize>,
    pub pairing_a0: i64,
    pub in_lowest_alcove_closure: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtCandidateReport {
    pub lambda: Weight,
    pub mu: Weight,
    pub candidates: Vec<ExtCandidate>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Simplicity {
    ForcedSimpleTilting,
    NeedsData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaConclusion {
    pub gamma: Weight,
    pub pairing_a0: i64,
    pub conclusion: Simplicity,
    /// `∇(γ)` simple according to the sum formula and decomposition tables.
    pub nabla_simple: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank2ExtReport {
    pub label: String,
    pub p: i64,
    pub coxeter_number: i64,
    pub threshold: i64,
    /// `p ≥ 2h − 4`.
    pub covered_by_threshold: bool,
    pub bound_hypotheses_hold: bool,
    pub bound_unsupported: bool,
    pub pairs: Vec<ExtCandidateReport>,
    /// Union of all candidates, ascending.
    pub candidate_union: Vec<Weight>,
    /// Candidates that also satisfy the `⟨γ, α₀∨⟩` bound.
    pub candidate_union_bounded: Vec<Weight>,
    /// Every dominant `γ` satisfying the bound.
    pub bound_region: Vec<Weight>,
    /// Candidates violating the bound although its hypotheses hold.
    pub bound_exceptions: Vec<Weight>,
    pub conclusions: Vec<GammaConclusion>,
    /// Summed inequalities paired with `α₀∨` hold on every candidate.
    pub pairing_identity_ok: bool,
    /// Every `γ` in the bound region has simple `∇(γ)`.
    pub completely_reducible: bool,
    pub notes: Vec<String>,
}

/// `p > 2` with two root lengths and `p > 3` in type G₂.
pub fn bound_hypotheses_hold(d: &RootDatum, p: i64) -> bool {
    !(d.has_two_root_lengths() && p <= 2) && !(d.label().kind == CartanType::G && p <= 3)
}

/// `h − 2`, or `h − 1` in type A₁.
pub fn prop_bound(d: &RootDatum) -> i64 {
    let h = d.coxeter_number().expect("full root system");
    if d.label().kind == CartanType::A && d.rank() == 1 {
        h - 1
    } else {
        h - 2
    }
}

pub fn prop_bound_check(gamma: &Weight, d: &RootDatum) -> bool {
    d.pair_highest_coroot(gamma) <= prop_bound(d)
}

pub fn simplicity_conclusion(gamma: &Weight, ctx: &AlcoveContext) -> Simplicity {
    if ctx.in_lowest_alcove_closure(gamma) {
        Simplicity::ForcedSimpleTilting
    } else {
        Simplicity::NeedsData
    }
}

/// Dominant `γ` with `pγ ≤ top`, ascending.
fn dominant_below_scaled(d: &RootDatum, p: i64, top: &Weight) -> Vec<Weight> {
    let h_top = d.height_scaled(top);
    if h_top < 0 {
        return Vec::new();
    }
    let n = d.rank();
    let min_h = (0..n).map(|i| d.height_scaled(&d.fundamental(i))).min().unwrap_or(1).max(1);
    let bound = h_top / (p * min_h) + 1;
    let mut out = Vec::new();
    let mut coords = vec![0i64; n];
    loop {
        let g = Weight::new(&coords);
        if d.le(&g.scale(p), top) {
            out.push(g);
        }
        let mut i = 0;
        while i < n {
            coords[i] += 1;
            if coords[i] <= bound {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    out.sort_by(|a, b| d.cmp_weights(a, b));
    out
}

pub fn ext_candidates(lambda: &Weight, mu: &Weight, ctx: &AlcoveContext) -> Vec<ExtCandidate> {
    let d = &ctx.datum;
    let p = ctx.p;
    let bnp = d.rho().scale(2 * (p - 1)) + d.w0().apply(mu) - *lambda;
    let and_base = d.minus_w0(lambda) + *mu;
    dominant_below_scaled(d, p, &bnp)
        .into_iter()
        .filter_map(|g| {
            let pg = g.scale(p);
            let witnesses: Vec<usize> =
                d.simple_indices().iter().copied().filter(|&i| d.le(&pg, &(and_base + d.simple_root(i)))).collect();
            (!witnesses.is_empty()).then(|| ExtCandidate {
                gamma: g,
                witnesses,
                pairing_a0: d.pair_highest_coroot(&g),
                in_lowest_alcove_closure: ctx.in_lowest_alcove_closure(&g),
            })
        })
        .collect()
}

/// `2p⟨γ,α₀∨⟩ ≤ 2p⟨ρ,α₀∨⟩ − ⟨2ρ−α, α₀∨⟩` for a candidate with witness `α`.
pub fn pairing_identity(gamma: &Weight, alpha: usize, ctx: &AlcoveContext) -> bool {
    let d = &ctx.datum;
    let p = ctx.p;
    let lhs = 2 * p * d.pair_highest_coroot(gamma);
    let rhs = 2 * p * d.pair_highest_coroot(&d.rho()) - d.pair_highest_coroot(&(d.rho().scale(2) - d.simple_root(alpha)));
    lhs <= rhs
}

/// Every dominant `γ` with `⟨γ, α₀∨⟩ ≤ bound`, ascending.
pub fn bound_region(d: &RootDatum) -> Vec<Weight> {
    let b = prop_bound(d);
    let n = d.rank();
    let mut out = Vec::new();
    let mut coords = vec![0i64; n];
    loop {
        let g = Weight::new(&coords);
        if d.pair_highest_coroot(&g) <= b {
            out.push(g);
        }
        let mut i = 0;
        while i < n {
            coords[i] += 1;
            if coords[i] <= b {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    out.sort_by(|a, b| d.cmp_weights(a, b));
    out
}

pub fn rank2_ext_report(simples: &SimpleChars) -> Result<Rank2ExtReport> {
    let ctx = simples.ctx();
    let d = &ctx.datum;
    let p = ctx.p;
    let h = d.coxeter_number().expect("full root system");
    let hyp = bound_hypotheses_hold(d, p);
    let mut pairs = Vec::new();
    let mut union = BTreeSet::new();
    let mut identity_ok = true;
    let xs = d.restricted_weights(p);
    for lambda in &xs {
        for mu in &xs {
            let candidates = ext_candidates(lambda, mu, ctx);
            for c in &candidates {
                union.insert(c.gamma);
                identity_ok &= c.witnesses.iter().all(|&a| pairing_identity(&c.gamma, a, ctx));
            }
            if !candidates.is_empty() {
                pairs.push(ExtCandidateReport { lambda: *lambda, mu: *mu, candidates });
            }
        }
    }
    let sort = |v: &mut Vec<Weight>| v.sort_by(|a, b| d.cmp_weights(a, b));
    let mut candidate_union: Vec<Weight> = union.into_iter().collect();
    sort(&mut candidate_union);
    let candidate_union_bounded: Vec<Weight> = candidate_union.iter().copied().filter(|g| prop_bound_check(g, d)).collect();
    let bound_exceptions: Vec<Weight> =
        if hyp { candidate_union.iter().copied().filter(|g| !prop_bound_check(g, d)).collect() } else { Vec::new() };
    let region = bound_region(d);
    let mut conclusions = Vec::new();
    for g in &region {
        let conclusion = simplicity_conclusion(g, ctx);
        let nabla_simple = match conclusion {
            Simplicity::ForcedSimpleTilting => Some(true),
            Simplicity::NeedsData => simples.nabla_is_simple(g).ok(),
        };
        conclusions.push(GammaConclusion { gamma: *g, pairing_a0: d.pair_highest_coroot(g), conclusion, nabla_simple });
    }
    let completely_reducible = hyp && conclusions.iter().all(|c| c.nabla_simple == Some(true));
    let mut notes = Vec::new();
    let threshold = 2 * h - 4;
    if p >= threshold {
        notes.push(format!("p ≥ 2h−4 = {threshold}: covered by the general bound, nothing to check"));
    }
    if !hyp {
        notes.push("bound-unsupported: the ⟨γ,α₀∨⟩ bound is not established at this prime".into());
    }
    if d.label().kind == CartanType::G && p == 2 {
        notes.push("excluded: the statement is false for G2 at p = 2".into());
    }
    for c in &conclusions {
        if c.nabla_simple == Some(false) {
            notes.push(format!("∇({}) is not simple; requires module-level Ext data", c.gamma));
        }
    }
    Ok(Rank2ExtReport {
        label: d.name(),
        p,
        coxeter_number: h,
        threshold,
        covered_by_threshold: p >= threshold,
        bound_hypotheses_hold: hyp,
        bound_unsupported: !hyp,
        pairs,
        candidate_union,
        candidate_union_bounded,
        bound_region: region,
        bound_exceptions,
        conclusions,
        pairing_identity_ok: identity_ok,
        completely_reducible,
        notes,
    })
}
