//! Claim-by-claim verification.
//!
//! Each claim id maps to a recipe that enumerates the quantified instances,
//! calls the embedding, synthesis and solver layers, and aggregates a
//! status. A claim is `verified` or `refuted` only with checked evidence:
//! certificates and embeddings are written to disk and can be re-checked
//! with [`recheck_evidence`].

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::budget::Budget;
use crate::cwexpr::{check_certificate, parse_expr, CwExpr, ExprError};
use crate::embed::{
    check_embedding, find_embedding, phi_s, phi_s_any, phi_s_range, phi_z, phi_z_any, phi_z_range, EmbedError,
    EmbedSearch, Embedding, PhiOutcome,
};
use crate::families::{
    make_j, make_j_minus_hole, make_m, make_m2, make_s, make_s_plus, make_z, s_core, two_gem_variants, z_order,
    FamilyError, SPlusCase, Sign,
};
use crate::graph::{is_isomorphic, read_graph, write_graph, Graph, GraphError, MASK_LIMIT};
use crate::solver::{cwd_decide, lcwd_decide, lcwd_exact, Decision, SearchStats, SolverError, CWD_LIMIT};
use crate::synth::{eager_expression, search_certificate, SynthError, SynthOutcome};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),
    #[error("claim {claim} does not take k = {k}")]
    BadParameter { claim: &'static str, k: i64 },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("{0}")]
    Evidence(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Verified,
    Refuted,
    Unknown,
    OutOfDeskScale,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::Unknown => "unknown",
            Status::OutOfDeskScale => "out-of-desk-scale",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Smoke,
    Desk,
    Stretch,
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "smoke" => Ok(Level::Smoke),
            "desk" => Ok(Level::Desk),
            "stretch" => Ok(Level::Stretch),
            _ => Err(format!("unknown level {s:?} (smoke, desk, stretch)")),
        }
    }
}

impl Level {
    /// Wall-clock allowance for one claim.
    pub fn claim_seconds(self) -> f64 {
        match self {
            Level::Smoke => 60.0,
            Level::Desk => 1800.0,
            Level::Stretch => 7200.0,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub k: Option<i64>,
    pub l: Option<i64>,
}

impl Params {
    pub fn k(k: i64) -> Self {
        Params { k: Some(k), l: None }
    }

    pub fn kl(k: i64, l: i64) -> Self {
        Params { k: Some(k), l: Some(l) }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.l) {
            (None, None) => f.write_str("-"),
            (Some(k), None) => write!(f, "k={k}"),
            (None, Some(l)) => write!(f, "l={l}"),
            (Some(k), Some(l)) => write!(f, "k={k},l={l}"),
        }
    }
}

/// One piece of evidence; certificates and embeddings become files.
#[derive(Clone, Debug)]
pub enum Evidence {
    Certificate {
        label: String,
        graph: Graph,
        expr: CwExpr,
        width: usize,
        linear: bool,
    },
    Embedding {
        label: String,
        embedding: Embedding,
    },
    /// An exhaustive negative answer from a search procedure.
    Refutation {
        label: String,
        procedure: String,
        stats: SearchStats,
    },
}

#[derive(Clone, Debug)]
pub struct ClaimCheck {
    pub claim: String,
    pub params: Params,
    pub status: Status,
    pub seconds: f64,
    pub evidence: Vec<Evidence>,
    pub notes: Vec<String>,
    /// Directory the evidence was written to, if any.
    pub evidence_dir: Option<PathBuf>,
}

/// The claim ids understood by [`run_check`].
pub const CLAIMS: &[&str] = &[
    "lemma1",
    "lemma2",
    "thm1",
    "prop3",
    "thm2.1",
    "thm2.2",
    "thm2.3",
    "lemma4",
    "prop5.1",
    "prop5.2",
    "prop5.3",
    "prop5.neg-remark",
    "thm3.1",
    "thm3.2",
    "prop6.1",
    "prop6.2",
    "m2plus-variants",
];

#[derive(Default)]
struct Tally {
    refuted: bool,
    unknown: bool,
    evidence: Vec<Evidence>,
    notes: Vec<String>,
}

impl Tally {
    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn unknown(&mut self, s: impl Into<String>) {
        self.unknown = true;
        self.note(s);
    }

    fn refuted(&mut self, s: impl Into<String>) {
        self.refuted = true;
        self.note(s);
    }

    fn status(&self) -> Status {
        if self.refuted {
            Status::Refuted
        } else if self.unknown {
            Status::Unknown
        } else {
            Status::Verified
        }
    }

    fn certificate(&mut self, label: &str, graph: &Graph, expr: CwExpr, linear: bool) {
        let width = expr.width();
        self.evidence.push(Evidence::Certificate {
            label: label.to_owned(),
            graph: graph.clone(),
            expr,
            width,
            linear,
        });
    }

    fn refutation(&mut self, label: &str, procedure: &str, stats: SearchStats) {
        self.evidence.push(Evidence::Refutation {
            label: label.to_owned(),
            procedure: procedure.to_owned(),
            stats,
        });
    }

    fn fits(&mut self, label: &str, g: &Graph, limit: usize) -> bool {
        let fits = g.n() <= limit;
        if !fits {
            self.unknown(format!("{label}: {} vertices, beyond the solver limit of {limit}", g.n()));
        }
        fits
    }

    /// `lcwd(g) <= w` via the exact solver.
    fn lcwd_at_most(&mut self, label: &str, g: &Graph, w: usize, budget: Budget) -> Result<(), VerifyError> {
        if !self.fits(label, g, MASK_LIMIT) {
            return Ok(());
        }
        let d = lcwd_decide(g, w, budget)?;
        match d.decision {
            Decision::Yes(e) => self.certificate(label, g, e, true),
            Decision::No => {
                self.refutation(label, &format!("lcwd <= {w}"), d.stats);
                self.refuted(format!("{label}: lcwd > {w}"));
            }
            Decision::Unknown => self.unknown(format!("{label}: lcwd <= {w} undecided within budget")),
        }
        Ok(())
    }

    /// `lcwd(g) > w` via the exact solver.
    fn lcwd_above(&mut self, label: &str, g: &Graph, w: usize, budget: Budget) -> Result<(), VerifyError> {
        if !self.fits(label, g, MASK_LIMIT) {
            return Ok(());
        }
        let d = lcwd_decide(g, w, budget)?;
        match d.decision {
            Decision::No => self.refutation(label, &format!("lcwd <= {w}"), d.stats),
            Decision::Yes(e) => {
                self.certificate(label, g, e, true);
                self.refuted(format!("{label}: found a linear {w}-expression"));
            }
            Decision::Unknown => self.unknown(format!("{label}: lcwd <= {w} undecided within budget")),
        }
        Ok(())
    }

    /// `cwd(g) <= w` via the exact solver.
    fn cwd_at_most(&mut self, label: &str, g: &Graph, w: usize, budget: Budget) -> Result<(), VerifyError> {
        if !self.fits(label, g, CWD_LIMIT) {
            return Ok(());
        }
        let d = cwd_decide(g, w, budget)?;
        match d.decision {
            Decision::Yes(e) => self.certificate(label, g, e, false),
            Decision::No => {
                self.refutation(label, &format!("cwd <= {w}"), d.stats);
                self.refuted(format!("{label}: cwd > {w}"));
            }
            Decision::Unknown => self.unknown(format!("{label}: cwd <= {w} undecided within budget")),
        }
        Ok(())
    }

    /// `cwd(g) > w` via the exact solver.
    fn cwd_above(&mut self, label: &str, g: &Graph, w: usize, budget: Budget) -> Result<(), VerifyError> {
        if !self.fits(label, g, CWD_LIMIT) {
            return Ok(());
        }
        let d = cwd_decide(g, w, budget)?;
        match d.decision {
            Decision::No => self.refutation(label, &format!("cwd <= {w}"), d.stats),
            Decision::Yes(e) => {
                self.certificate(label, g, e, false);
                self.refuted(format!("{label}: found a {w}-expression"));
            }
            Decision::Unknown => self.unknown(format!("{label}: cwd <= {w} undecided within budget")),
        }
        Ok(())
    }

    /// Exact linear clique-width, required to be at most `w`.
    fn lcwd_exact_at_most(&mut self, label: &str, g: &Graph, w: usize, budget: Budget) -> Result<(), VerifyError> {
        if !self.fits(label, g, MASK_LIMIT) {
            return Ok(());
        }
        let r = lcwd_exact(g, budget)?;
        match r.exact() {
            Some(value) => {
                self.note(format!("{label}: lcwd = {value}"));
                if let Some(e) = r.certificate {
                    self.certificate(label, g, e, true);
                }
                if value > w {
                    self.refuted(format!("{label}: lcwd = {value} > {w}"));
                }
            }
            None if r.upper <= w => {
                if let Some(e) = r.certificate {
                    self.certificate(label, g, e, true);
                }
                self.note(format!("{label}: lcwd in {}..={}", r.lower, r.upper));
            }
            None => self.unknown(format!("{label}: lcwd in {}..={}", r.lower, r.upper)),
        }
        Ok(())
    }

    /// A checked linear certificate of width `w` from ordering search, with
    /// the exact solver as fallback.
    fn searched(&mut self, label: &str, g: &Graph, w: usize, budget: Budget) -> Result<Option<CwExpr>, VerifyError> {
        if !self.fits(label, g, MASK_LIMIT) {
            return Ok(None);
        }
        if let SynthOutcome::Found { expr, .. } = search_certificate(g, w, budget)? {
            self.certificate(label, g, expr.clone(), true);
            return Ok(Some(expr));
        }
        let d = lcwd_decide(g, w, budget)?;
        match d.decision {
            Decision::Yes(e) => {
                self.certificate(label, g, e.clone(), true);
                Ok(Some(e))
            }
            Decision::No => {
                self.refutation(label, &format!("lcwd <= {w}"), d.stats);
                self.refuted(format!("{label}: lcwd > {w}"));
                Ok(None)
            }
            Decision::Unknown => {
                self.unknown(format!("{label}: no certificate of width {w} within budget"));
                Ok(None)
            }
        }
    }

    fn embedding(&mut self, label: &str, e: Embedding) -> bool {
        let ok = check_embedding(&e);
        if ok {
            self.evidence.push(Evidence::Embedding {
                label: label.to_owned(),
                embedding: e,
            });
        }
        ok
    }
}

fn k_param(claim: &'static str, p: &Params, default: i64, min: i64) -> Result<i64, VerifyError> {
    let k = p.k.unwrap_or(default);
    if k < min {
        return Err(VerifyError::BadParameter { claim, k });
    }
    Ok(k)
}

fn name_of(g: &Graph, v: usize) -> String {
    g.display_name(v)
}

/// Restrict a certificate for the host of `e` to the image of the guest and
/// rename it into guest names.
pub fn pull_back_certificate(host_cert: &CwExpr, e: &Embedding) -> Option<CwExpr> {
    let back: HashMap<String, String> = e
        .guest
        .ids()
        .map(|v| (e.host.display_name(e.image(v)), e.guest.display_name(v)))
        .collect();
    let restricted = host_cert.restrict(&|name| back.contains_key(name))?;
    Some(restricted.rename(&|name| back[name].clone()))
}

fn j_certificate(t: &mut Tally, k: usize, budget: Budget) -> Result<Option<CwExpr>, VerifyError> {
    let host = make_j_minus_hole(k as i64)?;
    t.searched(&format!("J{k}-zg"), &host, k + 1, budget)
}

fn lemma1(t: &mut Tally, k: i64, budget: Budget) -> Result<(), VerifyError> {
    let host = make_j_minus_hole(k)?;
    if k == 2 {
        t.lcwd_exact_at_most("J2-zg", &host, 3, budget)
    } else {
        j_certificate(t, k as usize, budget).map(|_| ())
    }
}

fn lemma2(t: &mut Tally, k: usize) -> Result<(), VerifyError> {
    for tt in 1..=z_order(k) {
        let direct = tt <= phi_z_range(k);
        let e = if direct { phi_z(k, tt)? } else { phi_z_any(k, tt)? };
        let label = format!("Z{k}-v{tt}{}", if direct { "" } else { ".reversed" });
        if !t.embedding(&label, e.clone()) {
            match find_embedding(&e.guest, &e.host, Budget::seconds(60.0)) {
                EmbedSearch::Found(found) => {
                    t.note(format!("{label}: index map failed the check, search found another"));
                    t.embedding(&label, found);
                }
                EmbedSearch::NotFound { exhausted: true } => t.refuted(format!("{label}: no embedding exists")),
                EmbedSearch::NotFound { exhausted: false } => t.unknown(format!("{label}: index map failed")),
            }
        }
    }
    t.note(format!(
        "t in 1..={} mapped directly, larger t through the layout reversal",
        phi_z_range(k)
    ));
    Ok(())
}

fn thm1(t: &mut Tally, k: i64, budget: Budget) -> Result<(), VerifyError> {
    if k == 0 {
        t.unknown("Z_0 is two isolated vertices (width 1); the bound k+2 = 2 depends on a convention for k = 0");
        return Ok(());
    }
    let z = make_z(k)?;
    t.cwd_above(&format!("Z{k}"), &z, (k + 1) as usize, budget)
}

fn prop3(t: &mut Tally, k: i64, budget: Budget) -> Result<(), VerifyError> {
    let z = make_z(k)?;
    let w = (k + 1) as usize;
    if k == 2 {
        let h = z.delete_named("v_4")?.graph;
        let order: Vec<usize> = ["v_8", "v_7", "v_6", "v_5", "v_3", "v_2", "v_1"]
            .iter()
            .map(|s| h.vertex(s))
            .collect();
        let e = eager_expression(&h, &order)?;
        let check = check_certificate(&e, &h, 3, true);
        if check.accepted {
            t.certificate("Z2-v4.ordering", &h, e, true);
        } else {
            t.refuted(format!("ordering for Z2-v4 gives width {}", check.width));
        }
    }
    for v in z.ids() {
        let h = z.delete_vertex(v)?.graph;
        let label = format!("Z{k}-{}", name_of(&z, v).replace('_', ""));
        if k <= 2 {
            t.lcwd_exact_at_most(&label, &h, w, budget)?;
        } else {
            t.lcwd_at_most(&label, &h, w, budget)?;
        }
    }
    Ok(())
}

fn thm2_1(t: &mut Tally, k: i64, budget: Budget) -> Result<(), VerifyError> {
    for case in SPlusCase::ALL {
        let g = make_s_plus(k, case)?;
        t.cwd_above(&format!("S+{k}{case}"), &g, (k + 1) as usize, budget)?;
    }
    Ok(())
}

fn thm2_2(t: &mut Tally, k: i64, budget: Budget) -> Result<(), VerifyError> {
    let s = make_s(k)?;
    let w = (k + 1) as usize;
    t.cwd_at_most(&format!("S{k}.cwd"), &s, w, budget)?;
    t.lcwd_above(&format!("S{k}.lcwd"), &s, w, budget)
}

fn lemma4(t: &mut Tally, k: usize, budget: Budget) -> Result<(), VerifyError> {
    let host_cert = j_certificate(t, k, budget)?;
    let n = s_core(k);
    for case in SPlusCase::ALL {
        for tt in 1..=n {
            let direct = tt <= phi_s_range(k);
            let outcome = if direct { phi_s(k, tt, case)? } else { phi_s_any(k, tt, case)? };
            let label = format!("S+{k}{case}-v{tt}{}", if direct { "" } else { ".reversed" });
            match outcome {
                PhiOutcome::Embedded(e) => {
                    if !t.embedding(&label, e.clone()) {
                        t.refuted(format!("{label}: index map is not an induced embedding"));
                        continue;
                    }
                    let Some(cert) = host_cert.as_ref() else {
                        t.unknown(format!("{label}: no host certificate to restrict"));
                        continue;
                    };
                    let pulled = pull_back_certificate(cert, &e).expect("guest is nonempty");
                    let check = check_certificate(&pulled, &e.guest, k + 1, true);
                    if check.accepted {
                        t.certificate(&label, &e.guest, pulled, true);
                    } else {
                        t.refuted(format!("{label}: restricted certificate rejected: {:?}", check.reason));
                    }
                }
                PhiOutcome::Unavailable => {
                    t.note(format!("{label}: index map unavailable, certificate searched directly"));
                    let guest = make_s_plus(k as i64, case)?.delete_named(&format!("v_{tt}"))?.graph;
                    t.searched(&label, &guest, k + 1, budget)?;
                }
            }
        }
    }
    t.note(format!(
        "t in 1..={} mapped directly, larger t through the reversal (cases a<->b, c<->d)",
        phi_s_range(k)
    ));
    Ok(())
}

fn prop5_1(t: &mut Tally, k: i64, budget: Budget) -> Result<(), VerifyError> {
    let g = make_s_plus(k, SPlusCase::C)?;
    let w = (k + 1) as usize;
    for v in g.ids() {
        let name = name_of(&g, v);
        let h = g.delete_vertex(v)?.graph;
        if name == "w+" {
            t.cwd_at_most(&format!("S+{k}c-w+"), &h, w, budget)?;
        } else {
            t.lcwd_at_most(&format!("S+{k}c-{}", name.replace('_', "")), &h, w, budget)?;
        }
    }
    Ok(())
}

fn prop5_2(t: &mut Tally, k: i64, budget: Budget) -> Result<(), VerifyError> {
    let g = make_s(k)?;
    for v in g.ids() {
        let h = g.delete_vertex(v)?.graph;
        let label = format!("S{k}-{}", name_of(&g, v).replace('_', ""));
        if k == 2 {
            t.lcwd_exact_at_most(&label, &h, 3, budget)?;
        } else {
            t.lcwd_at_most(&label, &h, (k + 1) as usize, budget)?;
        }
    }
    Ok(())
}

fn neg_remark(t: &mut Tally, k: i64, budget: Budget) -> Result<(), VerifyError> {
    let guest = make_s_plus(k, SPlusCase::A)?.delete_named("w_4")?.graph;
    let (j, g) = make_j(k)?;
    let host = j.delete_vertex(g)?.graph;
    let start = Instant::now();
    match find_embedding(&guest, &host, budget) {
        EmbedSearch::NotFound { exhausted: true } => t.refutation(
            &format!("S+{k}a-w4.into.J{k}-zg"),
            "induced embedding search",
            SearchStats {
                seconds: start.elapsed().as_secs_f64(),
                ..SearchStats::default()
            },
        ),
        EmbedSearch::NotFound { exhausted: false } => t.unknown("embedding search ran out of budget"),
        EmbedSearch::Found(e) => {
            t.embedding(&format!("S+{k}a-w4"), e);
            t.refuted("an embedding exists");
        }
    }
    Ok(())
}

fn m2_label(sign: Sign) -> &'static str {
    match sign {
        Sign::Plus => "M2+",
        Sign::Minus => "M2-",
    }
}

fn thm3_1(t: &mut Tally, budget: Budget) -> Result<(), VerifyError> {
    for sign in [Sign::Plus, Sign::Minus] {
        t.lcwd_above(m2_label(sign), &make_m2(sign), 3, budget)?;
    }
    Ok(())
}

fn prop6_1(t: &mut Tally, budget: Budget) -> Result<(), VerifyError> {
    for sign in [Sign::Plus, Sign::Minus] {
        let g = make_m2(sign);
        for v in g.ids() {
            let h = g.delete_vertex(v)?.graph;
            t.lcwd_exact_at_most(&format!("{}-{}", m2_label(sign), name_of(&g, v)), &h, 3, budget)?;
        }
    }
    Ok(())
}

fn prop6_2(t: &mut Tally, k: i64, l: i64, budget: Budget) -> Result<(), VerifyError> {
    let g = make_m(k, l)?;
    for v in g.ids() {
        let h = g.delete_vertex(v)?.graph;
        let label = format!("M{k}1{l}-{}", name_of(&g, v).replace('_', "").replace('\'', "p"));
        t.searched(&label, &h, (k + 1) as usize, budget)?;
    }
    Ok(())
}

fn m2plus_variants(t: &mut Tally, budget: Budget) -> Result<(), VerifyError> {
    let chosen = make_m2(Sign::Plus);
    let mut chosen_ok = None;
    for ((x, y), g) in two_gem_variants() {
        let lower = lcwd_decide(&g, 3, budget)?.decision;
        let mut upper = Some(true);
        for v in g.ids() {
            let h = g.delete_vertex(v)?.graph;
            match lcwd_decide(&h, 3, budget)?.decision.answer() {
                Some(true) => {}
                Some(false) => upper = Some(false),
                None => upper = upper.and(None),
            }
        }
        let both = match (lower.answer(), upper) {
            (Some(false), Some(true)) => Some(true),
            (None, _) | (_, None) => None,
            _ => Some(false),
        };
        let verdict = match both {
            Some(true) => "lcwd >= 4 and every vertex deletion has lcwd <= 3",
            Some(false) => "fails",
            None => "undecided",
        };
        t.note(format!("join {x}-{y}': {verdict}"));
        if is_isomorphic(&g, &chosen).unwrap_or(false) {
            chosen_ok = both;
            t.note(format!("the M2+ used elsewhere is the join {x}-{y}'"));
        }
    }
    match chosen_ok {
        Some(true) => {}
        Some(false) => t.refuted("the chosen M2+ fails the consistency check"),
        None => t.unknown("the chosen M2+ is undecided"),
    }
    Ok(())
}

/// Run one claim. Parameters not given fall back to the smallest instance.
pub fn run_check(claim: &str, params: Params, budget: Budget) -> Result<ClaimCheck, VerifyError> {
    let start = Instant::now();
    let mut t = Tally::default();
    let id: &'static str = CLAIMS
        .iter()
        .find(|&&c| c == claim)
        .ok_or_else(|| VerifyError::UnknownClaim(claim.to_owned()))?;
    let used;
    match id {
        "lemma1" => {
            let k = k_param(id, &params, 2, 2)?;
            used = Params::k(k);
            lemma1(&mut t, k, budget)?;
        }
        "lemma2" => {
            let k = k_param(id, &params, 3, 3)?;
            used = Params::k(k);
            lemma2(&mut t, k as usize)?;
        }
        "thm1" => {
            let k = k_param(id, &params, 1, 0)?;
            used = Params::k(k);
            thm1(&mut t, k, budget)?;
        }
        "prop3" => {
            let k = k_param(id, &params, 2, 0)?;
            used = Params::k(k);
            prop3(&mut t, k, budget)?;
        }
        "thm2.1" => {
            let k = k_param(id, &params, 3, 3)?;
            used = Params::k(k);
            thm2_1(&mut t, k, budget)?;
        }
        "thm2.2" => {
            let k = k_param(id, &params, 3, 3)?;
            used = Params::k(k);
            thm2_2(&mut t, k, budget)?;
        }
        "thm2.3" => {
            used = Params::default();
            t.cwd_above("S2", &make_s(2)?, 3, budget)?;
        }
        "lemma4" => {
            let k = k_param(id, &params, 3, 3)?;
            used = Params::k(k);
            lemma4(&mut t, k as usize, budget)?;
        }
        "prop5.1" => {
            let k = k_param(id, &params, 3, 3)?;
            used = Params::k(k);
            prop5_1(&mut t, k, budget)?;
        }
        "prop5.2" => {
            let k = k_param(id, &params, 3, 2)?;
            used = Params::k(k);
            prop5_2(&mut t, k, budget)?;
        }
        "prop5.3" => {
            used = Params::default();
            prop5_2(&mut t, 2, budget)?;
        }
        "prop5.neg-remark" => {
            let k = k_param(id, &params, 3, 3)?;
            used = Params::k(k);
            neg_remark(&mut t, k, budget)?;
        }
        "thm3.1" => {
            used = Params::default();
            thm3_1(&mut t, budget)?;
        }
        "thm3.2" => {
            let k = k_param(id, &params, 3, 3)?;
            let l = params.l.unwrap_or(0).max(0);
            used = Params::kl(k, l);
            let g = make_m(k, l)?;
            t.lcwd_above(&format!("M{k}1{l}"), &g, (k + 1) as usize, budget)?;
        }
        "prop6.1" => {
            used = Params::default();
            prop6_1(&mut t, budget)?;
        }
        "prop6.2" => {
            let k = k_param(id, &params, 3, 3)?;
            let l = params.l.unwrap_or(0).max(0);
            used = Params::kl(k, l);
            prop6_2(&mut t, k, l, budget)?;
        }
        "m2plus-variants" => {
            used = Params::default();
            m2plus_variants(&mut t, budget)?;
        }
        _ => unreachable!("listed in CLAIMS"),
    }
    Ok(ClaimCheck {
        claim: id.to_owned(),
        params: used,
        status: t.status(),
        seconds: start.elapsed().as_secs_f64(),
        evidence: t.evidence,
        notes: t.notes,
        evidence_dir: None,
    })
}

/// What a level runs: `(claim, params, run?)`. Entries with `run == false`
/// are reported as out of desk scale.
pub fn plan(level: Level) -> Vec<(&'static str, Params, bool)> {
    let mut out: Vec<(&'static str, Params, bool)> = Vec::new();
    let mut add = |c, p, run| out.push((c, p, run));
    let stretch = level == Level::Stretch;
    match level {
        Level::Smoke => {
            add("lemma1", Params::k(2), true);
            add("lemma2", Params::k(3), true);
            add("thm1", Params::k(1), true);
            add("thm1", Params::k(2), true);
            add("prop3", Params::k(2), true);
            add("thm2.3", Params::default(), true);
            add("prop5.3", Params::default(), true);
            add("prop5.neg-remark", Params::k(3), true);
            add("thm3.1", Params::default(), true);
            add("prop6.1", Params::default(), true);
        }
        Level::Desk | Level::Stretch => {
            for k in 2..=6 {
                add("lemma1", Params::k(k), k <= 5);
            }
            for k in 3..=8 {
                add("lemma2", Params::k(k), k <= 6 || stretch);
            }
            for k in 0..=5 {
                add("thm1", Params::k(k), k <= 4);
            }
            for k in 0..=5 {
                add("prop3", Params::k(k), k <= 4 || stretch);
            }
            add("thm2.1", Params::k(3), true);
            add("thm2.1", Params::k(4), stretch);
            for k in 3..=4 {
                add("thm2.2", Params::k(k), true);
            }
            add("thm2.3", Params::default(), true);
            for k in 3..=5 {
                add("lemma4", Params::k(k), true);
            }
            for k in 3..=4 {
                add("prop5.1", Params::k(k), true);
                add("prop5.2", Params::k(k), true);
            }
            add("prop5.3", Params::default(), true);
            for k in 3..=4 {
                add("prop5.neg-remark", Params::k(k), true);
            }
            add("thm3.1", Params::default(), true);
            add("prop6.1", Params::default(), true);
            for (k, l) in [(3, 0), (3, 1), (3, 2), (4, 0), (5, 0)] {
                add("thm3.2", Params::kl(k, l), k <= 4 || stretch);
                add("prop6.2", Params::kl(k, l), k <= 4 || stretch);
            }
            add("m2plus-variants", Params::default(), true);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Report {
    pub level: Level,
    pub checks: Vec<ClaimCheck>,
}

impl Report {
    /// `claim<TAB>params<TAB>status<TAB>seconds<TAB>evidence-path` per check.
    pub fn summary_tsv(&self) -> String {
        let mut out = String::from("claim\tparams\tstatus\tseconds\tevidence-path\n");
        for c in &self.checks {
            let path = c
                .evidence_dir
                .as_ref()
                .map_or_else(|| "-".to_owned(), |p| p.display().to_string());
            out.push_str(&format!("{}\t{}\t{}\t{:.2}\t{}\n", c.claim, c.params, c.status, c.seconds, path));
        }
        out
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{} [{}]: {} ({:.2}s)\n", c.claim, c.params, c.status, c.seconds));
            for n in &c.notes {
                out.push_str(&format!("    {n}\n"));
            }
        }
        let count = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        out.push_str(&format!(
            "{} verified, {} refuted, {} unknown, {} out of desk scale\n",
            count(Status::Verified),
            count(Status::Refuted),
            count(Status::Unknown),
            count(Status::OutOfDeskScale)
        ));
        out
    }
}

/// Run every planned claim of `level`, concurrently. With `out`, evidence,
/// `summary.tsv` and `report.txt` are written there.
pub fn run_all(level: Level, out: Option<&Path>) -> Result<Report, VerifyError> {
    let planned = plan(level);
    let results: Vec<Result<ClaimCheck, VerifyError>> = planned
        .par_iter()
        .map(|&(claim, params, run)| {
            if run {
                run_check(claim, params, Budget::seconds(level.claim_seconds()))
            } else {
                Ok(ClaimCheck {
                    claim: claim.to_owned(),
                    params,
                    status: Status::OutOfDeskScale,
                    seconds: 0.0,
                    evidence: Vec::new(),
                    notes: vec!["not attempted at this level; the bound is trusted, not checked".into()],
                    evidence_dir: None,
                })
            }
        })
        .collect();
    let mut checks = Vec::with_capacity(results.len());
    for r in results {
        checks.push(r?);
    }
    let mut report = Report { level, checks };
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
        for c in &mut report.checks {
            if c.status != Status::OutOfDeskScale {
                c.evidence_dir = Some(write_evidence(c, dir)?);
            }
        }
        fs::write(dir.join("summary.tsv"), report.summary_tsv())?;
        fs::write(dir.join("report.txt"), report.text())?;
    }
    Ok(report)
}

fn slug(c: &ClaimCheck) -> String {
    let p = c.params.to_string().replace(['=', ','], "");
    if p == "-" {
        c.claim.clone()
    } else {
        format!("{}_{p}", c.claim)
    }
}

fn file_stem(label: &str) -> String {
    label
        .chars()
        .map(|ch| if ch.is_ascii_alphanumeric() || "+-.".contains(ch) { ch } else { '_' })
        .collect()
}

/// Write a check's evidence under `root/<claim>_<params>/` and return that directory.
pub fn write_evidence(c: &ClaimCheck, root: &Path) -> Result<PathBuf, VerifyError> {
    let dir = root.join(slug(c));
    fs::create_dir_all(&dir)?;
    let mut log = format!("{} [{}]: {}\n", c.claim, c.params, c.status);
    for n in &c.notes {
        log.push_str(&format!("note: {n}\n"));
    }
    let mut stems = HashSet::new();
    for ev in &c.evidence {
        match ev {
            Evidence::Certificate {
                label,
                graph,
                expr,
                width,
                linear,
            } => {
                let stem = unique(&mut stems, &file_stem(label));
                fs::write(dir.join(format!("{stem}.graph")), write_graph(graph))?;
                let kind = if *linear { "linear" } else { "general" };
                fs::write(
                    dir.join(format!("{stem}.cw")),
                    format!("# width {width} {kind}\n{expr}\n"),
                )?;
                log.push_str(&format!("certificate {stem}: width {width}, {kind}\n"));
            }
            Evidence::Embedding { label, embedding } => {
                let stem = unique(&mut stems, &file_stem(label));
                fs::write(dir.join(format!("{stem}.guest.graph")), write_graph(&embedding.guest))?;
                fs::write(dir.join(format!("{stem}.host.graph")), write_graph(&embedding.host))?;
                fs::write(dir.join(format!("{stem}.map")), embedding.to_text())?;
                log.push_str(&format!("embedding {stem}\n"));
            }
            Evidence::Refutation {
                label,
                procedure,
                stats,
            } => {
                log.push_str(&format!(
                    "exhaustive no: {label}: {procedure} ({} nodes, {} states, {:.3}s)\n",
                    stats.nodes, stats.states, stats.seconds
                ));
            }
        }
    }
    fs::write(dir.join("evidence.txt"), log)?;
    Ok(dir)
}

fn unique(taken: &mut HashSet<String>, stem: &str) -> String {
    let mut s = stem.to_owned();
    let mut i = 2;
    while !taken.insert(s.clone()) {
        s = format!("{stem}.{i}");
        i += 1;
    }
    s
}

/// Counts of files re-checked by [`recheck_evidence`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rechecked {
    pub certificates: usize,
    pub embeddings: usize,
}

fn read_expr_file(path: &Path) -> Result<(CwExpr, usize, bool), VerifyError> {
    let text = fs::read_to_string(path)?;
    let header = text.lines().next().unwrap_or("");
    let fields: Vec<&str> = header.trim_start_matches('#').split_whitespace().collect();
    let (width, linear) = match fields.as_slice() {
        ["width", w, kind] => (
            w.parse::<usize>()
                .map_err(|_| VerifyError::Evidence(format!("{}: bad width", path.display())))?,
            *kind == "linear",
        ),
        _ => return Err(VerifyError::Evidence(format!("{}: missing header", path.display()))),
    };
    let expr = parse_expr(&text).map_err(|e: ExprError| VerifyError::Evidence(format!("{}: {e}", path.display())))?;
    Ok((expr, width, linear))
}

fn read_graph_file(path: &Path) -> Result<Graph, VerifyError> {
    read_graph(&fs::read_to_string(path)?).map_err(|e| VerifyError::Evidence(format!("{}: {e}", path.display())))
}

/// Re-check every certificate (`*.cw` against `*.graph`) and embedding
/// (`*.map` between `*.guest.graph` and `*.host.graph`) below `dir`.
pub fn recheck_evidence(dir: &Path) -> Result<Rechecked, VerifyError> {
    let mut counts = Rechecked::default();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        let mut entries: Vec<PathBuf> = fs::read_dir(&d)?.map(|e| e.map(|e| e.path())).collect::<Result<_, _>>()?;
        entries.sort();
        for path in entries {
            if path.is_dir() {
                stack.push(path);
                continue;
            }
            let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
            if let Some(stem) = name.strip_suffix(".cw") {
                let (expr, width, linear) = read_expr_file(&path)?;
                let graph = read_graph_file(&d.join(format!("{stem}.graph")))?;
                let check = check_certificate(&expr, &graph, width, linear);
                if !check.accepted {
                    return Err(VerifyError::Evidence(format!(
                        "{}: rejected: {}",
                        path.display(),
                        check.reason.unwrap_or_default()
                    )));
                }
                counts.certificates += 1;
            } else if let Some(stem) = name.strip_suffix(".map") {
                let guest = read_graph_file(&d.join(format!("{stem}.guest.graph")))?;
                let host = read_graph_file(&d.join(format!("{stem}.host.graph")))?;
                let mut map = vec![0; guest.n()];
                for line in fs::read_to_string(&path)?.lines().filter(|l| !l.trim().is_empty()) {
                    let (g, h) = line
                        .split_once("->")
                        .ok_or_else(|| VerifyError::Evidence(format!("{}: bad line {line:?}", path.display())))?;
                    let (g, h) = (g.trim(), h.trim());
                    let gv = guest.id_of(g).ok_or_else(|| VerifyError::Evidence(format!("unknown guest vertex {g}")))?;
                    let hv = host.id_of(h).ok_or_else(|| VerifyError::Evidence(format!("unknown host vertex {h}")))?;
                    map[gv - 1] = hv;
                }
                let e = Embedding { guest, host, map };
                if !check_embedding(&e) {
                    return Err(VerifyError::Evidence(format!("{}: not an induced embedding", path.display())));
                }
                counts.embeddings += 1;
            }
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_claims_and_parameters() {
        assert!(matches!(
            run_check("lemma9", Params::default(), Budget::unlimited()),
            Err(VerifyError::UnknownClaim(_))
        ));
        assert!(matches!(
            run_check("lemma2", Params::k(2), Budget::unlimited()),
            Err(VerifyError::BadParameter { .. })
        ));
    }

    #[test]
    fn z0_is_unresolved() {
        let c = run_check("thm1", Params::k(0), Budget::unlimited()).unwrap();
        assert_eq!(c.status, Status::Unknown);
    }

    #[test]
    fn small_claims() {
        for (claim, p) in [
            ("thm1", Params::k(1)),
            ("thm1", Params::k(2)),
            ("thm2.3", Params::default()),
            ("lemma1", Params::k(2)),
            ("prop3", Params::k(1)),
        ] {
            let c = run_check(claim, p, Budget::unlimited()).unwrap();
            assert_eq!(c.status, Status::Verified, "{claim} {p}: {:?}", c.notes);
        }
    }

    #[test]
    fn params_display() {
        assert_eq!(Params::default().to_string(), "-");
        assert_eq!(Params::kl(3, 1).to_string(), "k=3,l=1");
        assert_eq!("desk".parse::<Level>().unwrap(), Level::Desk);
        assert!("fast".parse::<Level>().is_err());
    }
}
