//! Case sweeps and verdict reports.
//!
//! Verdicts per `λ ∈ X₁`:
//! `VERIFIED` when `a^λ = b^λ` against tilting data that does not come from
//! `Q̂₁` (an ingested table or the rank-one closed form), `CONSISTENT` when
//! every necessary condition holds but no such data exists,
//! `REFUTED-NECESSARY` when a necessary condition fails, and `UNKNOWN` when a
//! computation could not be completed.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::charring::{CharRing, Expansion};
use crate::error::{Error, Result};
use crate::extbounds::Rank2ExtReport;
use crate::g1t::{levi_truncate, G1T};
use crate::linkage::AlcoveContext;
use crate::rootdata::{CartanType, RootDatum};
use crate::simples::{DecompTable, SimpleChars};
use crate::tilting::{tmc_necessary_checks, TiltProvenance, Tilting, TiltingTable};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(Error::Config(format!("unknown format {s}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseConfig {
    pub label: String,
    pub p: i64,
    pub r: u32,
    /// Defaults to all of `X₁`.
    pub lambdas: Option<Vec<Weight>>,
    pub tilting_tables: Vec<PathBuf>,
    pub decomp_tables: Vec<PathBuf>,
    pub format: Format,
    /// Resolve sum-formula ambiguities with the contravariant form.
    pub form_resolution: bool,
}

impl CaseConfig {
    pub fn new(label: &str, p: i64) -> Self {
        CaseConfig {
            label: label.to_string(),
            p,
            r: 1,
            lambdas: None,
            tilting_tables: Vec::new(),
            decomp_tables: Vec::new(),
            format: Format::Text,
            form_resolution: true,
        }
    }
}

/// Everything computed for one `(datum, p)`.
pub struct Case {
    pub cfg: CaseConfig,
    pub ctx: AlcoveContext,
    pub simples: Arc<SimpleChars>,
    pub g1t: Arc<G1T>,
    pub tilting: Arc<Tilting>,
}

impl Case {
    pub fn build(cfg: &CaseConfig) -> Result<Case> {
        if cfg.r != 1 {
            return Err(Error::Config("only r = 1 is supported".into()));
        }
        let d = RootDatum::from_label(&cfg.label)?;
        let ctx = AlcoveContext::new(d.clone(), cfg.p, cfg.r)?;
        let mut decomp = DecompTable::builtin(&ctx);
        for path in &cfg.decomp_tables {
            decomp.merge(DecompTable::load(path, &ctx)?);
        }
        let mut tilt = TiltingTable::empty();
        for path in &cfg.tilting_tables {
            tilt.merge(TiltingTable::load(path, &ctx)?);
        }
        Self::from_tables(cfg, decomp, tilt)
    }

    pub fn from_tables(cfg: &CaseConfig, decomp: DecompTable, tilt: TiltingTable) -> Result<Case> {
        let d = RootDatum::from_label(&cfg.label)?;
        let ctx = AlcoveContext::new(d.clone(), cfg.p, cfg.r)?;
        let ring = Arc::new(CharRing::new(d));
        let simples = Arc::new(SimpleChars::new(ctx.clone(), ring, decomp).with_form_resolution(cfg.form_resolution));
        let g1t = Arc::new(G1T::new(simples.clone())?);
        let tilting = Arc::new(Tilting::new(g1t.clone(), tilt));
        Ok(Case { cfg: cfg.clone(), ctx, simples, g1t, tilting })
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.ctx.datum
    }

    fn lambdas(&self) -> Result<Vec<Weight>> {
        let d = self.datum();
        let mut v = match &self.cfg.lambdas {
            Some(ls) => {
                for l in ls {
                    if l.rank() != d.rank() || !l.is_restricted(self.ctx.p) {
                        return Err(Error::NotRestricted(*l));
                    }
                }
                ls.clone()
            }
            None => d.restricted_weights(self.ctx.p),
        };
        v.sort_by(|a, b| d.cmp_weights(a, b));
        v.dedup();
        Ok(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "VERIFIED")]
    Verified,
    #[serde(rename = "CONSISTENT")]
    Consistent,
    #[serde(rename = "REFUTED-NECESSARY")]
    RefutedNecessary,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Verified => "VERIFIED",
            Verdict::Consistent => "CONSISTENT",
            Verdict::RefutedNecessary => "REFUTED-NECESSARY",
            Verdict::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuComparison {
    pub mu: Weight,
    pub a: i64,
    pub b: Option<i64>,
    pub equal: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaEntry {
    pub lambda: Weight,
    pub a: Option<Expansion>,
    pub b: Option<Expansion>,
    pub b_provenance: Option<TiltProvenance>,
    pub comparisons: Vec<MuComparison>,
    pub checks: Vec<(String, bool)>,
    pub verdict: Verdict,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub verified: usize,
    pub consistent: usize,
    pub refuted_necessary: usize,
    pub unknown: usize,
    pub coxeter_number: i64,
    pub threshold: i64,
    /// `p ≥ 2h − 4`.
    pub covered_by_threshold: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub label: String,
    pub p: i64,
    pub r: u32,
    pub tilting_tables: Vec<String>,
    pub decomp_tables: Vec<String>,
}

impl ConfigEcho {
    fn of(cfg: &CaseConfig) -> Self {
        let names = |v: &[PathBuf]| v.iter().map(|p| p.display().to_string()).collect();
        ConfigEcho {
            label: cfg.label.clone(),
            p: cfg.p,
            r: cfg.r,
            tilting_tables: names(&cfg.tilting_tables),
            decomp_tables: names(&cfg.decomp_tables),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub config: ConfigEcho,
    pub entries: Vec<LambdaEntry>,
    pub summary: Summary,
}

impl VerdictReport {
    pub fn has_refutation(&self) -> bool {
        self.summary.refuted_necessary > 0
    }

    pub fn discrepancies(&self) -> Vec<(Weight, Weight)> {
        self.entries
            .iter()
            .flat_map(|e| e.comparisons.iter().filter(|c| c.equal == Some(false)).map(move |c| (e.lambda, c.mu)))
            .collect()
    }
}

fn is_g2_p2(d: &RootDatum, p: i64) -> bool {
    d.label().kind == CartanType::G && p == 2
}

fn threshold(d: &RootDatum) -> (i64, i64) {
    let h = d.coxeter_number().unwrap_or(0);
    (h, 2 * h - 4)
}

pub fn tmc_check(case: &Case) -> VerdictReport {
    let d = case.datum().clone();
    let p = case.ctx.p;
    let (h, t) = threshold(&d);
    let mut entries = Vec::new();
    let mut notes = Vec::new();
    match case.lambdas() {
        Ok(ls) => {
            for lambda in ls {
                entries.push(tmc_entry(case, &lambda));
            }
        }
        Err(e) => notes.push(format!("invalid λ range: {e}")),
    }
    if is_g2_p2(&d, p) {
        notes.push("G2 at p = 2 is a known exception; VERIFIED is never issued here".into());
    }
    if p >= t {
        notes.push(format!("p ≥ 2h−4 = {t}: covered by the general theorem"));
    }
    let count = |v: Verdict| entries.iter().filter(|e| e.verdict == v).count();
    let summary = Summary {
        total: entries.len(),
        verified: count(Verdict::Verified),
        consistent: count(Verdict::Consistent),
        refuted_necessary: count(Verdict::RefutedNecessary),
        unknown: count(Verdict::Unknown),
        coxeter_number: h,
        threshold: t,
        covered_by_threshold: p >= t,
        notes,
    };
    VerdictReport { config: ConfigEcho::of(&case.cfg), entries, summary }
}

fn tmc_entry(case: &Case, lambda: &Weight) -> LambdaEntry {
    let d = case.datum();
    let mut entry = LambdaEntry {
        lambda: *lambda,
        a: None,
        b: None,
        b_provenance: None,
        comparisons: Vec::new(),
        checks: Vec::new(),
        verdict: Verdict::Unknown,
        diagnostics: Vec::new(),
    };
    let checks = match tmc_necessary_checks(&case.g1t, lambda) {
        Ok(c) => c,
        Err(e) => {
            entry.diagnostics.push(format!("ch Q̂₁ unavailable: {e}"));
            return entry;
        }
    };
    entry.checks = checks.checks.clone();
    entry.a = checks.a.clone();
    if !checks.passed() {
        entry.diagnostics.extend(checks.failures.iter().cloned());
        entry.verdict = Verdict::RefutedNecessary;
        return entry;
    }
    let a = checks.a.expect("checks passed");
    match case.tilting.b_coefficients(lambda) {
        Ok((b, prov)) => {
            let mut index: BTreeSet<Weight> = case.ctx.shifted_linkage_index(lambda).into_iter().collect();
            index.extend(a.keys().copied());
            index.extend(b.keys().copied());
            let mut index: Vec<Weight> = index.into_iter().collect();
            index.sort_by(|x, y| d.cmp_weights(y, x));
            let mut all_equal = true;
            for mu in index {
                let av = a.get(&mu).copied().unwrap_or(0);
                let bv = b.get(&mu).copied().unwrap_or(0);
                all_equal &= av == bv;
                entry.comparisons.push(MuComparison { mu, a: av, b: Some(bv), equal: Some(av == bv) });
            }
            if b.get(lambda) != Some(&1) {
                entry.diagnostics.push(format!("b_λ^λ = {}", b.get(lambda).copied().unwrap_or(0)));
            }
            entry.verdict = if !all_equal {
                entry.diagnostics.push(format!("a ≠ b against tilting data ({})", provenance_name(&prov)));
                Verdict::RefutedNecessary
            } else if prov.is_independent() && !is_g2_p2(d, case.ctx.p) {
                Verdict::Verified
            } else {
                if prov.is_independent() {
                    entry.diagnostics.push("a = b, but VERIFIED is withheld for G2 at p = 2".into());
                }
                Verdict::Consistent
            };
            entry.b = Some(b);
            entry.b_provenance = Some(prov);
        }
        Err(Error::TiltingDataMissing { hint, .. }) => {
            entry.diagnostics.push(format!("b unavailable: {hint}"));
            for (mu, av) in &a {
                entry.comparisons.push(MuComparison { mu: *mu, a: *av, b: None, equal: None });
            }
            entry.comparisons.sort_by(|x, y| d.cmp_weights(&y.mu, &x.mu));
            entry.verdict = Verdict::Consistent;
        }
        Err(e) => {
            entry.diagnostics.push(format!("b unavailable: {e}"));
            entry.verdict = Verdict::Unknown;
        }
    }
    entry
}

fn provenance_name(p: &TiltProvenance) -> String {
    match p {
        TiltProvenance::BaseCase => "base case".into(),
        TiltProvenance::ClosedForm => "closed form".into(),
        TiltProvenance::Ingested(s) => format!("ingested from {s}"),
        TiltProvenance::Pinched => "sandwich pinch".into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviComparison {
    pub lambda: Weight,
    pub mu: Weight,
    pub a: i64,
    /// From truncating `ch Q̂₁` to `(p−1)ρ + λ − ℕJ`.
    pub a_truncated: i64,
    /// From `Q̂_{J,1}` computed inside the Levi root datum.
    pub a_levi: i64,
    pub b_levi: Option<i64>,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviReport {
    pub label: String,
    pub p: i64,
    /// 0-based simple root indices.
    pub j: Vec<usize>,
    /// `b_J` is available from independent data for every `λ`.
    pub levi_tmc_verified: bool,
    pub comparisons: Vec<LeviComparison>,
    pub violations: usize,
    pub notes: Vec<String>,
}

impl LeviReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

pub fn levi_consistency(case: &Case, j: &[usize]) -> Result<LeviReport> {
    let d = case.datum().clone();
    let p = case.ctx.p;
    let mut j: Vec<usize> = j.to_vec();
    j.sort_unstable();
    j.dedup();
    if j.len() >= d.rank() {
        return Err(Error::Config("J must be a proper subset of the simple roots".into()));
    }
    let dj = d.levi(&j)?;
    let cj = case.ctx.with_datum(dj.clone());
    let ring_j = Arc::new(CharRing::new(dj.clone()));
    let simples_j = Arc::new(SimpleChars::new(cj, ring_j, DecompTable::empty()).with_form_resolution(case.cfg.form_resolution));
    let g_j = Arc::new(G1T::new(simples_j)?);
    let t_j = Tilting::new(g_j.clone(), TiltingTable::empty());
    let st_j = g_j.steinberg();
    let mut comparisons = Vec::new();
    let mut verified = true;
    let mut notes = Vec::new();
    for lambda in case.lambdas()? {
        let a = case.g1t.a_coefficients(&lambda)?;
        let q = case.g1t.qhat_char(&case.g1t.qhat_index(&lambda))?;
        let top = d.rho().scale(p - 1) + lambda;
        let trunc = levi_truncate(&q, &dj, &top).with_datum(&dj);
        let a_trunc = trunc.exact_divide(&st_j)?.expand_orbit_basis()?;
        let a_levi = g_j.a_coefficients(&lambda)?;
        let b_levi = match t_j.b_coefficients(&lambda) {
            Ok((b, prov)) if prov.is_independent() => Some(b),
            _ => {
                verified = false;
                None
            }
        };
        let mut mus: BTreeSet<Weight> = BTreeSet::new();
        mus.extend(a.keys().filter(|mu| dj.le(mu, &lambda)).copied());
        mus.extend(a_trunc.keys().copied());
        mus.extend(a_levi.keys().copied());
        let mut mus: Vec<Weight> = mus.into_iter().collect();
        mus.sort_by(|x, y| d.cmp_weights(y, x));
        for mu in mus {
            let get = |e: &Expansion| e.get(&mu).copied().unwrap_or(0);
            let (av, tv, lv) = (get(&a), get(&a_trunc), get(&a_levi));
            let bv = b_levi.as_ref().map(get);
            let equal = av == tv && tv == lv && bv.is_none_or(|b| b == lv);
            if !d.is_dominant(&mu) {
                notes.push(format!("λ={lambda}: Levi coefficient at non-dominant {mu}"));
            }
            comparisons.push(LeviComparison { lambda, mu, a: av, a_truncated: tv, a_levi: lv, b_levi: bv, equal });
        }
    }
    let violations = comparisons.iter().filter(|c| !c.equal).count();
    Ok(LeviReport { label: d.name(), p, j, levi_tmc_verified: verified, comparisons, violations, notes })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub lambda: Weight,
    pub mu: Weight,
    pub message: String,
}

/// Each discrepancy `(λ, μ)` must have `λ − μ ∉ ℕJ` for every Levi `J`
/// that passed, and `⟨λ − μ, α₀∨⟩ > 0`.
pub fn minimal_cx_analysis(report: &VerdictReport, d: &RootDatum, passing_levis: &[Vec<usize>]) -> Result<Vec<Finding>> {
    let mut findings = Vec::new();
    for (lambda, mu) in report.discrepancies() {
        for j in passing_levis {
            if d.levi(j)?.le(&mu, &lambda) {
                findings.push(Finding {
                    lambda,
                    mu,
                    message: format!("λ − μ lies in ℕJ for J = {j:?}, whose Levi comparison passed"),
                });
            }
        }
        let pairing = d.pair_highest_coroot(&(lambda - mu));
        if pairing <= 0 {
            findings.push(Finding { lambda, mu, message: format!("⟨λ − μ, α₀∨⟩ = {pairing} is not positive") });
        }
    }
    Ok(findings)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ph2Report {
    pub label: String,
    pub p: i64,
    pub coxeter_number: i64,
    /// `p = 2h − 3`.
    pub applicable: bool,
    pub bound: i64,
    pub region: Vec<Weight>,
    pub with_b: usize,
    pub violations: Vec<Weight>,
    pub notes: Vec<String>,
}

pub fn ph2_region_check(case: &Case) -> Result<Ph2Report> {
    let d = case.datum().clone();
    let p = case.ctx.p;
    let h = d.coxeter_number().unwrap_or(0);
    let bound = p * (h - 2);
    let mut notes = Vec::new();
    let applicable = p == 2 * h - 3;
    if !applicable {
        notes.push(format!("p ≠ 2h−3 = {}; run as a property sweep", 2 * h - 3));
    }
    let region: Vec<Weight> = case.lambdas()?.into_iter().filter(|l| d.pair_highest_coroot(l) <= bound).collect();
    let mut with_b = 0;
    let mut violations = Vec::new();
    for lambda in &region {
        let a = match case.g1t.a_coefficients(lambda) {
            Ok(a) => a,
            Err(e) => {
                notes.push(format!("λ={lambda}: a unavailable: {e}"));
                continue;
            }
        };
        if let Ok((b, _)) = case.tilting.b_coefficients(lambda) {
            with_b += 1;
            if a != b {
                violations.push(*lambda);
            }
        }
    }
    Ok(Ph2Report { label: d.name(), p, coxeter_number: h, applicable, bound, region, with_b, violations, notes })
}

/// Human-readable rendering.
pub trait Render {
    fn render_text(&self) -> String;
}

pub fn emit_report<T: Serialize + Render>(report: &T, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => report.render_text(),
    }
}

fn fmt_expansion(e: &Expansion, d: &RootDatum) -> String {
    let mut terms: Vec<_> = e.iter().collect();
    terms.sort_by(|x, y| d.cmp_weights(y.0, x.0));
    if terms.is_empty() {
        return "0".into();
    }
    terms.iter().map(|(w, n)| format!("{n}·[{w}]")).collect::<Vec<_>>().join(" + ")
}

impl Render for VerdictReport {
    fn render_text(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let d = RootDatum::from_label(&c.label).ok();
        let _ = writeln!(out, "tmc {} p={} r={}", c.label, c.p, c.r);
        for t in &c.tilting_tables {
            let _ = writeln!(out, "tilting table: {t}");
        }
        for t in &c.decomp_tables {
            let _ = writeln!(out, "decomposition table: {t}");
        }
        for e in &self.entries {
            let _ = write!(out, "λ={:<8} {}", e.lambda.to_string(), e.verdict.as_str());
            if let Some(p) = &e.b_provenance {
                let _ = write!(out, " (b: {})", provenance_name(p));
            }
            out.push('\n');
            if let (Some(a), Some(d)) = (&e.a, &d) {
                let _ = writeln!(out, "  a = {}", fmt_expansion(a, d));
            }
            if let (Some(b), Some(d)) = (&e.b, &d) {
                let _ = writeln!(out, "  b = {}", fmt_expansion(b, d));
            }
            for msg in &e.diagnostics {
                let _ = writeln!(out, "  note: {msg}");
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "summary: {} λ, {} VERIFIED, {} CONSISTENT, {} REFUTED-NECESSARY, {} UNKNOWN",
            s.total, s.verified, s.consistent, s.refuted_necessary, s.unknown
        );
        let _ = writeln!(out, "h={} 2h−4={} covered={}", s.coxeter_number, s.threshold, s.covered_by_threshold);
        for n in &s.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

impl Render for Rank2ExtReport {
    fn render_text(&self) -> String {
        let mut out = String::new();
        let list = |v: &[Weight]| v.iter().map(|w| format!("[{w}]")).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "ext {} p={} h={} 2h−4={}", self.label, self.p, self.coxeter_number, self.threshold);
        let _ = writeln!(out, "bound hypotheses hold: {}", self.bound_hypotheses_hold);
        let _ = writeln!(out, "candidate union: {}", list(&self.candidate_union));
        let _ = writeln!(out, "candidates within bound: {}", list(&self.candidate_union_bounded));
        let _ = writeln!(out, "bound region: {}", list(&self.bound_region));
        if !self.bound_exceptions.is_empty() {
            let _ = writeln!(out, "bound exceptions: {}", list(&self.bound_exceptions));
        }
        for c in &self.conclusions {
            let simple = match c.nabla_simple {
                Some(true) => "simple",
                Some(false) => "not simple",
                None => "undetermined",
            };
            let _ = writeln!(out, "  γ=[{}] ⟨γ,α₀∨⟩={} {:?} ∇(γ) {}", c.gamma, c.pairing_a0, c.conclusion, simple);
        }
        let _ = writeln!(out, "pairing identity: {}", if self.pairing_identity_ok { "ok" } else { "violated" });
        let _ = writeln!(out, "completely reducible: {}", self.completely_reducible);
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

impl Render for LeviReport {
    fn render_text(&self) -> String {
        let mut out = String::new();
        let j: Vec<String> = self.j.iter().map(|i| (i + 1).to_string()).collect();
        let _ = writeln!(out, "levi {} p={} J={{{}}}", self.label, self.p, j.join(","));
        let _ = writeln!(out, "Levi b-data independent: {}", self.levi_tmc_verified);
        for c in self.comparisons.iter().filter(|c| !c.equal) {
            let _ = writeln!(
                out,
                "  mismatch λ=[{}] μ=[{}]: a={} truncated={} levi={} b_J={:?}",
                c.lambda, c.mu, c.a, c.a_truncated, c.a_levi, c.b_levi
            );
        }
        let _ = writeln!(out, "{} comparisons, {} violations", self.comparisons.len(), self.violations);
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

impl Render for Ph2Report {
    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ph2 {} p={} bound p(h−2)={}", self.label, self.p, self.bound);
        let _ = writeln!(out, "region: {} λ, {} with b-data, {} violations", self.region.len(), self.with_b, self.violations.len());
        for v in &self.violations {
            let _ = writeln!(out, "  violation at λ=[{v}]");
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharKind {
    Weyl,
    Simple,
    Babyverma,
    Qhat,
    Tilting,
}

impl std::str::FromStr for CharKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weyl" => Ok(CharKind::Weyl),
            "simple" => Ok(CharKind::Simple),
            "babyverma" => Ok(CharKind::Babyverma),
            "qhat" => Ok(CharKind::Qhat),
            "tilting" => Ok(CharKind::Tilting),
            _ => Err(Error::Config(format!("unknown character kind {s}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharReport {
    pub label: String,
    pub p: i64,
    pub weight: Weight,
    pub kind: CharKind,
    pub dimension: i64,
    /// `[T:∇(μ)]` for tilting characters.
    pub nabla: Option<Expansion>,
    pub provenance: Option<TiltProvenance>,
    pub terms: Expansion,
}

pub fn character_report(case: &Case, kind: CharKind, w: &Weight) -> Result<CharReport> {
    let d = case.datum();
    if w.rank() != d.rank() {
        return Err(Error::Config(format!("weight {w} has the wrong rank")));
    }
    let mut nabla = None;
    let mut provenance = None;
    let ch = match kind {
        CharKind::Weyl => {
            if !d.is_dominant(w) {
                return Err(Error::NotDominant(*w));
            }
            case.g1t.ring().weyl_character(w)
        }
        CharKind::Simple => (*case.simples.simple_char(w)?).clone(),
        CharKind::Babyverma => case.g1t.baby_verma(w),
        CharKind::Qhat => (*case.g1t.qhat_char(w)?).clone(),
        CharKind::Tilting => {
            let t = case.tilting.tilting(w)?;
            nabla = Some(t.nabla.clone());
            provenance = Some(t.provenance.clone());
            case.tilting.tilting_char(w)?
        }
    };
    Ok(CharReport {
        label: d.name(),
        p: case.ctx.p,
        weight: *w,
        kind,
        dimension: ch.dimension(),
        nabla,
        provenance,
        terms: ch.iter().map(|(w, c)| (*w, *c)).collect(),
    })
}

impl Render for CharReport {
    fn render_text(&self) -> String {
        let mut out = String::new();
        let kind = serde_json::to_value(self.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        let _ = writeln!(out, "{kind} {} p={} [{}] dim={}", self.label, self.p, self.weight, self.dimension);
        if let Some(p) = &self.provenance {
            let _ = writeln!(out, "provenance: {}", provenance_name(p));
        }
        if let (Some(n), Ok(d)) = (&self.nabla, RootDatum::from_label(&self.label)) {
            let _ = writeln!(out, "∇-multiplicities: {}", fmt_expansion(n, &d));
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        if let Ok(d) = RootDatum::from_label(&self.label) {
            terms.sort_by(|x, y| d.cmp_weights(y.0, x.0));
        }
        for (w, c) in terms {
            let _ = writeln!(out, "{c}: {w}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(t: &str, p: i64) -> Case {
        Case::build(&CaseConfig::new(t, p)).unwrap()
    }
    fn w(c: &[i64]) -> Weight {
        Weight::new(c)
    }

    #[test]
    fn sl2_all_verified() {
        for p in [2, 3, 5, 7] {
            let r = tmc_check(&case("A1", p));
            assert_eq!(r.summary.verified, p as usize, "p={p}");
        }
    }

    #[test]
    fn rank2_without_tables_is_consistent() {
        let r = tmc_check(&case("A2", 2));
        assert_eq!(r.summary.consistent, 4);
        assert!(!r.has_refutation());
        let g = tmc_check(&case("G2", 2));
        assert_eq!(g.summary.verified, 0);
        assert!(g.summary.notes.iter().any(|n| n.contains("exception")));
    }

    #[test]
    fn threshold_flag() {
        for (t, p, covered) in [("A2", 2, true), ("B2", 3, false), ("B2", 5, true), ("G2", 7, false), ("G2", 11, true)] {
            let c = Case::build(&CaseConfig { lambdas: Some(Vec::new()), ..CaseConfig::new(t, p) }).unwrap();
            assert_eq!(tmc_check(&c).summary.covered_by_threshold, covered, "{t} {p}");
        }
    }

    #[test]
    fn levi_examples() {
        let c = case("A2", 3);
        let empty = levi_consistency(&c, &[]).unwrap();
        assert!(empty.passed());
        assert!(empty.comparisons.iter().all(|x| x.mu == x.lambda && x.a == 1));
        assert!(levi_consistency(&c, &[0]).unwrap().passed());
        let b = levi_consistency(&case("B2", 3), &[1]).unwrap();
        assert!(b.passed() && b.levi_tmc_verified);
        assert!(levi_consistency(&c, &[0, 1]).is_err());
    }

    #[test]
    fn minimal_counterexample_findings() {
        let c = case("A2", 3);
        let mut r = tmc_check(&c);
        assert!(minimal_cx_analysis(&r, c.datum(), &[vec![0], vec![1]]).unwrap().is_empty());
        // (2,0) − (0,1) = α₁ lies in ℕ{α₁}
        r.entries.push(LambdaEntry {
            lambda: w(&[2, 0]),
            a: None,
            b: None,
            b_provenance: None,
            comparisons: vec![MuComparison { mu: w(&[0, 1]), a: 1, b: Some(0), equal: Some(false) }],
            checks: Vec::new(),
            verdict: Verdict::RefutedNecessary,
            diagnostics: Vec::new(),
        });
        let f = minimal_cx_analysis(&r, c.datum(), &[vec![0], vec![1]]).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f[0].message.contains("ℕJ"));
    }

    #[test]
    fn ph2_examples() {
        let r = ph2_region_check(&case("A2", 3)).unwrap();
        assert!(r.applicable);
        assert_eq!(r.bound, 3);
        assert!(!r.region.contains(&w(&[2, 2])));
        assert!(r.region.contains(&w(&[0, 0])));
        assert!(r.violations.is_empty());
        // (p−1)(h−1) > p(h−2) at p = 2h−3
        let d = RootDatum::from_label("A2").unwrap();
        assert!(d.pair_highest_coroot(&d.rho().scale(2)) > r.bound);
    }

    #[test]
    fn json_round_trip_and_determinism() {
        let c = case("B2", 3);
        let r = tmc_check(&c);
        let s = emit_report(&r, Format::Json);
        let back: VerdictReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(emit_report(&tmc_check(&case("B2", 3)), Format::Json), s);
        let empty = Case::build(&CaseConfig { lambdas: Some(Vec::new()), ..CaseConfig::new("A2", 2) }).unwrap();
        let e = emit_report(&tmc_check(&empty), Format::Json);
        let v: serde_json::Value = serde_json::from_str(&e).unwrap();
        assert_eq!(v["config"]["label"], "A2");
        assert_eq!(v["entries"].as_array().unwrap().len(), 0);
    }
}
