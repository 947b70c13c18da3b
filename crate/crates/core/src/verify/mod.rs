//! Verification suites: symbolic identities, the two directions of the
//! Chevalley/Green isomorphism, the classical limit, and numeric checks in
//! matrix representations.

mod identities;
mod report;
mod rep;
pub mod targets;

use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use crate::coeff::{Qr2, Scalar, Var};
use crate::error::Result;
use crate::green::{apply, chevalley_images, green_images};
use crate::presentation::{chevalley_presentation, classical_presentation, green_triple_indices, green_presentation, RankParams};
use crate::rewrite::{RewriteSystem, Status, DEFAULT_DEGREE_BOUND, DEFAULT_MAX_RULES};
use crate::superalg::{Element, Kind};

pub use identities::{check_identities, check_identity, Bindings, Identity};
pub use rep::{
    build_fock_rep, build_trivial_rep, check_rep, classical_residual, default_tolerance, eval_element, q_number,
    FockConvention, MatrixRep,
};
pub use report::{Method, Record, VStatus, VerificationReport};

/// Completion parameters shared by the reduction-based suites.
#[derive(Copy, Clone, Debug)]
pub struct SymbolicConfig {
    pub degree_bound: usize,
    pub max_rules: usize,
}

impl Default for SymbolicConfig {
    fn default() -> Self {
        SymbolicConfig { degree_bound: DEFAULT_DEGREE_BOUND, max_rules: DEFAULT_MAX_RULES }
    }
}

pub(crate) fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// The completed rewrite system of the Chevalley presentation.
pub fn chevalley_system(rank: RankParams, cfg: SymbolicConfig) -> Result<RewriteSystem> {
    Ok(RewriteSystem::orient(&chevalley_presentation(rank))?.complete(cfg.degree_bound, cfg.max_rules))
}

/// The completed rewrite system of the Green presentation.
pub fn green_system(rank: RankParams, cfg: SymbolicConfig) -> Result<RewriteSystem> {
    Ok(RewriteSystem::orient(&green_presentation(rank))?.complete(cfg.degree_bound, cfg.max_rules))
}

/// Reduces one target and classifies the outcome.
pub fn reduce_record(rs: &RewriteSystem, tag: &str, x: &Element, degree_bound: usize) -> Record {
    let t = Instant::now();
    let out = rs.reduce(x, degree_bound, false);
    let (status, note) = match out.status {
        Status::Zero => (VStatus::Verified, None),
        Status::NormalForm if rs.meta.truncated => (VStatus::Inconclusive, Some("completion truncated".to_string())),
        Status::NormalForm => (VStatus::Failed, None),
        Status::Inconclusive => (VStatus::Inconclusive, Some(format!("weight above {degree_bound}"))),
    };
    Record {
        tag: tag.to_string(),
        method: Method::Reduction,
        status,
        residual: out.result.to_string(),
        residual_value: None,
        elapsed_ms: ms(t),
        note,
    }
}

fn reduce_all(rs: &RewriteSystem, targets: &[(String, Element)], bound: usize) -> Vec<Record> {
    targets.par_iter().map(|(tag, x)| reduce_record(rs, tag, x, bound)).collect()
}

fn completion_meta(rs: &RewriteSystem) -> serde_json::Value {
    json!({ "rules": rs.len(), "completion": rs.meta })
}

/// Green-side relations with `a^±, L` replaced by their Chevalley images,
/// reduced modulo the Chevalley presentation.
pub fn check_green_from_chevalley(rank: RankParams, cfg: SymbolicConfig) -> Result<VerificationReport> {
    let rs = chevalley_system(rank, cfg)?;
    let map = green_images(rank);
    let mut targets = targets::mixed_relations(rank);
    targets.extend(targets::bilinear_relations(rank));
    targets.extend(green_presentation(rank).relations.into_iter().map(|r| (r.tag, r.body)));
    let targets: Vec<_> = targets.into_iter().map(|(t, x)| (t, apply(&map, &x))).collect();
    let mut rep = VerificationReport::new("green-from-chevalley", Some((rank.m, rank.n)));
    rep.records = reduce_all(&rs, &targets, cfg.degree_bound);
    rep.meta = completion_meta(&rs);
    Ok(rep)
}

/// Chevalley relations, mixed relations and derived lemmas with `e, f, k`
/// replaced by their Green images, reduced modulo the Green presentation.
pub fn check_chevalley_from_green(rank: RankParams, cfg: SymbolicConfig) -> Result<VerificationReport> {
    let rs = green_system(rank, cfg)?;
    let map = chevalley_images(rank);
    let mut targets: Vec<_> = chevalley_presentation(rank).relations.into_iter().map(|r| (r.tag, r.body)).collect();
    targets.extend(targets::extra_serre_alternatives(rank));
    targets.extend(targets::mixed_relations(rank));
    let mut targets: Vec<_> = targets.into_iter().map(|(t, x)| (t, apply(&map, &x))).collect();
    targets.extend(targets::green_side_lemmas(rank));
    let mut rep = VerificationReport::new("chevalley-from-green", Some((rank.m, rank.n)));
    rep.records = reduce_all(&rs, &targets, cfg.degree_bound);
    rep.meta = completion_meta(&rs);
    Ok(rep)
}

/// Both composites of the generator maps, each reduced modulo its own presentation.
pub fn check_round_trip(rank: RankParams, cfg: SymbolicConfig) -> Result<VerificationReport> {
    let cs = chevalley_system(rank, cfg)?;
    let gs = green_system(rank, cfg)?;
    let gmap = green_images(rank);
    let cmap = chevalley_images(rank);
    let there: Vec<_> = targets::chevalley_generators(rank)
        .into_iter()
        .map(|(t, g)| (format!("{t}->green->{t}"), apply(&gmap, &apply(&cmap, &g)).sub(&g)))
        .collect();
    let back: Vec<_> = targets::green_generators(rank)
        .into_iter()
        .map(|(t, g)| (format!("{t}->chevalley->{t}"), apply(&cmap, &apply(&gmap, &g)).sub(&g)))
        .collect();
    let mut rep = VerificationReport::new("round-trip", Some((rank.m, rank.n)));
    rep.records = reduce_all(&cs, &there, cfg.degree_bound);
    rep.records.extend(reduce_all(&gs, &back, cfg.degree_bound));
    rep.meta = json!({ "chevalley": completion_meta(&cs), "green": completion_meta(&gs) });
    Ok(rep)
}

/// `v ↦ 1`, `L_i, L̄_i ↦ 1`.
pub fn classical_specialization(x: &Element) -> Result<Element> {
    let one = Qr2::one();
    let y = x.map_scalars(&|s: &Scalar| s.specialize(Var::V, &one))?;
    Ok(y.substitute(&|g| matches!(g.kind(), Kind::L | Kind::Lbar).then(Element::one)))
}

/// Specializes the trilinear Green relations and compares them with the
/// classical triple relations.
pub fn check_classical_limit(rank: RankParams) -> Result<VerificationReport> {
    let green = green_presentation(rank);
    let classical = classical_presentation(rank);
    let sign = |e: i8| if e > 0 { "+" } else { "-" };
    let mut pairs: Vec<(String, String)> = [1i8, -1]
        .iter()
        .map(|&x| (format!("30d[xi={}]", sign(x)), format!("2a[eta={}]", sign(x))))
        .collect();
    for (i, xi, j, eta) in green_triple_indices(rank) {
        let ip = (i as i64 + xi as i64) as usize;
        pairs.push((
            format!("30e[i={i},xi={xi:+},j={j},eta={}]", sign(eta)),
            format!("2b[i={i},j={ip},k={j},eta={}]", sign(eta)),
        ));
    }
    let mut rep = VerificationReport::new("classical-limit", Some((rank.m, rank.n)));
    for (gt, ct) in pairs {
        let t = Instant::now();
        let g = green.relation(&gt).expect("generated tag");
        let c = classical.relation(&ct).expect("generated tag");
        let diff = classical_specialization(&g.body)?.sub(&c.body);
        rep.records.push(Record {
            tag: gt,
            method: Method::Expansion,
            status: if diff.is_zero() { VStatus::Verified } else { VStatus::Failed },
            residual: diff.to_string(),
            residual_value: None,
            elapsed_ms: ms(t),
            note: Some(format!("vs {ct}")),
        });
    }
    Ok(rep)
}
