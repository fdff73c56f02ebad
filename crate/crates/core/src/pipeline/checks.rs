//! Named cross-checks feeding the report ledger.

use std::sync::Arc;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{AnalysisRequest, Dimensions, PairingSummary, PipelineError};
use crate::cohomology::{
    bracket_d_pairing, coboundary_defect, cross_pairing_value, cup_pairing, estimate_cn, fundamental_cycle,
    goldman_obstruction, h1_basis, h_dims, pairing_matrix, weil_check, z1_basis, CnEstimate, Cocycle,
    CohomologyReport, WeilVerdict,
};
use crate::linalg::{Matrix, RankPolicy};
use crate::modules::{ModuleLabel, SlBasis, SlDecomposition};
use crate::presentation::{GroupPresentation, SignatureKind};
use crate::reps::{GroupTag, Representation, DET_TOL, RELATOR_BOUND};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub name: String,
    pub passed: bool,
    /// Distance from the bound, positive when passing.
    pub margin: Option<f64>,
    pub detail: String,
}

impl LedgerEntry {
    pub fn bool_check(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        LedgerEntry {
            name: name.into(),
            passed,
            margin: None,
            detail: detail.into(),
        }
    }

    /// Passes when `value ≤ bound`.
    pub fn bounded(name: &str, value: f64, bound: f64, detail: impl Into<String>) -> Self {
        LedgerEntry {
            name: name.into(),
            passed: value <= bound,
            margin: Some(bound - value),
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyLedger {
    pub entries: Vec<LedgerEntry>,
    pub all_passed: bool,
    pub error: Option<String>,
}

impl VerifyLedger {
    pub fn new(entries: Vec<LedgerEntry>, error: Option<String>) -> Self {
        let all_passed = error.is_none() && entries.iter().all(|e| e.passed);
        VerifyLedger {
            entries,
            all_passed,
            error,
        }
    }
}

pub(super) fn representation_checks(rho: &Representation<f64>, ledger: &mut Vec<LedgerEntry>) {
    ledger.push(LedgerEntry::bounded(
        "relator_residual",
        rho.relator_residual,
        RELATOR_BOUND,
        format!("max over {} relators", rho.relator_residuals.len()),
    ));
    let dets = rho.determinants();
    let det_err = dets
        .iter()
        .map(|d| match rho.group {
            GroupTag::Sl => (d - 1.0).abs(),
            GroupTag::SlPm => (d.abs() - 1.0).abs(),
        })
        .fold(0.0, f64::max);
    ledger.push(LedgerEntry::bounded(
        "determinants",
        det_err,
        DET_TOL,
        format!("group {}", rho.group),
    ));
    let torsion = rho.check_torsion();
    ledger.push(LedgerEntry::bool_check(
        "torsion_orders",
        torsion.is_ok(),
        torsion.err().map(|e| e.to_string()).unwrap_or_else(|| "exact orders".into()),
    ));
}

fn tagged(name: &str, dec: &SlDecomposition<f64>, module: &str) -> String {
    format!("{name}[{}:{module}]", dec.embedding)
}

pub(super) fn structural_checks(dec: &SlDecomposition<f64>, report: &CohomologyReport, ledger: &mut Vec<LedgerEntry>) {
    ledger.push(LedgerEntry::bounded(
        &tagged("embedded_relator_residual", dec, "full_g"),
        dec.embedded.relator_residual,
        RELATOR_BOUND,
        "block embedding keeps relators",
    ));
    ledger.push(LedgerEntry::bounded(
        &tagged("block_invariance", dec, "full_g"),
        dec.block_leakage(),
        1e-9,
        "off-block part of the adjoint action",
    ));
    ledger.push(LedgerEntry::bounded(
        &tagged("cross_pairing_invariance", dec, "m_r x m_c"),
        dec.cross_pairing_defect(),
        1e-9,
        "B(g w, g v) = B(w, v)",
    ));
    for m in [&dec.g0, &dec.m_c, &dec.m_r, &dec.d] {
        let label = m.label.to_string();
        let scale = m.action.iter().map(|a| a.amax()).fold(1.0, f64::max);
        ledger.push(LedgerEntry::bounded(
            &tagged("coboundary_soundness", dec, &label),
            coboundary_defect(m) / scale,
            1e-9,
            "Fox matrix annihilates coboundaries",
        ));
        if let Some(row) = report.get(&label) {
            if let (Some(te), Some(ok)) = (row.twisted_euler, row.euler_consistent) {
                ledger.push(LedgerEntry::bool_check(
                    &tagged("euler_consistency", dec, &label),
                    ok,
                    format!("h0 - h1 + h2 = {}, twisted Euler = {te}", row.dims.euler()),
                ));
            }
            ledger.push(LedgerEntry {
                name: tagged("rank_gap", dec, &label),
                passed: row.dims.min_gap() >= crate::linalg::AMBIGUOUS_GAP,
                margin: Some(row.dims.min_gap()),
                detail: "smallest kept / largest dropped singular value".into(),
            });
        }
    }
}

pub(super) fn dimension_checks(pres: &GroupPresentation, n: usize, dims: &Dimensions, ledger: &mut Vec<LedgerEntry>) {
    if pres.is_orientable() {
        if let Some(t) = dims.t {
            ledger.push(LedgerEntry::bool_check(
                "teichmuller_so21",
                t == dims.d,
                format!("h1(so(2,1)) = {t}, d = {}", dims.d),
            ));
        }
        if let (true, Some(sig)) = (pres.closed, &pres.signature) {
            if let (SignatureKind::OrientableSurface { genus }, 3) = (sig.kind, n) {
                let chi = 2 - 2 * genus as i64;
                let want = -3 * chi + 2 * sig.cone_orders.len() as i64;
                ledger.push(LedgerEntry::bool_check(
                    "dim_teich_formula",
                    dims.d as i64 == want,
                    format!("d = {}, -3 chi(|O|) + 2c = {want}", dims.d),
                ));
            }
        }
        return;
    }
    let t = dims.t.or(dims.d_oe);
    if let (Some(t), Some(oe)) = (dims.t, dims.d_oe) {
        ledger.push(LedgerEntry::bool_check(
            "teichmuller_so21",
            t == oe,
            format!("h1(so(2,1)) = {t}, d_oe = {oe}"),
        ));
    }
    if let (Some(t), Some(tp), Some(f)) = (t, dims.d_tp, dims.f) {
        ledger.push(LedgerEntry::bool_check(
            "d_tp_equals_t_minus_f",
            tp as i64 == t as i64 - f as i64,
            format!("d_tp = {tp}, t = {t}, f = {f}"),
        ));
    }
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    DVector::from_iterator(n, (0..n).map(|_| rng.random_range(-1.0..1.0)))
}

fn random_combination(rng: &mut ChaCha8Rng, basis: &[Cocycle]) -> Cocycle {
    let coeffs: Vec<f64> = basis.iter().map(|_| rng.random_range(-1.0..1.0)).collect();
    let terms: Vec<(f64, &Cocycle)> = coeffs.iter().copied().zip(basis).collect();
    Cocycle::scaled_sum(&terms)
}

type ClosedChecks = (Option<PairingSummary>, Option<CnEstimate>);

pub(super) fn closed_orientable_checks(
    dec: &SlDecomposition<f64>,
    dims: &Dimensions,
    req: &AnalysisRequest,
    ledger: &mut Vec<LedgerEntry>,
) -> Result<ClosedChecks, PipelineError> {
    let pres = &dec.m_c.presentation;
    if !pres.closed || !pres.is_orientable() || pres.long_relator.is_none() {
        return Ok((None, None));
    }
    let policy = &req.policy;
    ledger.push(LedgerEntry::bool_check(
        "duality_h1",
        dims.d == dims.h1_m_r,
        format!("h1(m_c) = {}, h1(m_r) = {}", dims.d, dims.h1_m_r),
    ));
    let cycle = fundamental_cycle(pres)?;
    let hr = h1_basis(&dec.m_r, policy)?;
    let hc = h1_basis(&dec.m_c, policy)?;
    let mut rng = ChaCha8Rng::seed_from_u64(req.seed ^ 0x5eed);

    let pairing = if hr.is_empty() || hc.is_empty() {
        None
    } else {
        let pm = pairing_matrix(&cycle, &dec.m_r, &hr, &dec.m_c, &hc, &dec.cross_pairing)?;
        let mut sv: Vec<f64> = pm.singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        let max = sv[0];
        let min = *sv.last().expect("nonempty");
        let rank = sv.iter().filter(|&&s| s > 1e-6 * max).count();
        ledger.push(LedgerEntry::bool_check(
            "pairing_nondegenerate",
            min > 1e-6 * max && hr.len() == hc.len(),
            format!("{}x{} pairing, singular values {sv:?}", hr.len(), hc.len()),
        ));

        // Coboundaries in either slot pair to zero.
        let br = Cocycle::coboundary(&dec.m_r, &random_vector(&mut rng, dec.n));
        let bc = Cocycle::coboundary(&dec.m_c, &random_vector(&mut rng, dec.n));
        let zr = random_combination(&mut rng, &hr);
        let zc = random_combination(&mut rng, &hc);
        let left = cross_pairing_value(dec, &cycle, &br, &zc)?;
        let right = cross_pairing_value(dec, &cycle, &zr, &bc)?;
        let worst = (left.value.abs() / left.scale.max(f64::MIN_POSITIVE))
            .max(right.value.abs() / right.scale.max(f64::MIN_POSITIVE));
        ledger.push(LedgerEntry::bounded(
            "coboundary_vanishing",
            worst,
            1e-8,
            "relative size of pairings with a coboundary argument",
        ));
        Some(PairingSummary {
            singular_values: sv,
            rank,
        })
    };

    let obstruction = if req.checks.obstruction_samples > 0 && !hr.is_empty() {
        let full = h1_basis(&dec.full, policy)?;
        let est = estimate_cn(dec, &cycle, &full, req.checks.obstruction_samples, req.seed)?;
        let ok = est.relative_std.is_some_and(|s| s <= 1e-6)
            && est.samples.iter().filter(|s| s.ratio.is_some()).count() >= 10;
        ledger.push(LedgerEntry {
            name: "obstruction_ratio_constant".into(),
            passed: ok,
            margin: est.relative_std.map(|s| 1e-6 - s),
            detail: format!("c_n ≈ {:?} over {} samples", est.mean, est.samples.len()),
        });
        // g0-only and d-only directions carry no obstruction.
        let mut worst: f64 = 0.0;
        for (m, inc) in [(&dec.g0, &dec.inc_g0), (&dec.d, &dec.inc_d)] {
            let basis = h1_basis(m, policy)?;
            if basis.is_empty() {
                continue;
            }
            let z = random_combination(&mut rng, &basis).map(ModuleLabel::FullG, inc);
            let s = goldman_obstruction(dec, &cycle, &z)?;
            worst = worst.max(s.obstruction.value.abs() / s.obstruction.scale.max(f64::MIN_POSITIVE));
        }
        ledger.push(LedgerEntry::bounded(
            "obstruction_block_vanishing",
            worst,
            1e-8,
            "g0-only and d-only cocycles",
        ));
        Some(est)
    } else {
        None
    };
    Ok((pairing, obstruction))
}

pub(super) fn weil_checks(
    dec: &SlDecomposition<f64>,
    policy: &RankPolicy,
    ledger: &mut Vec<LedgerEntry>,
) -> Result<(), PipelineError> {
    let big = SlBasis::new(dec.n + 1);
    let blocks = [
        (&dec.g0, &dec.inc_g0),
        (&dec.m_c, &dec.inc_c),
        (&dec.m_r, &dec.inc_r),
        (&dec.d, &dec.inc_d),
    ];
    for (m, inc) in blocks {
        let basis = h1_basis(m, policy)?;
        let (mut quad, mut integ, mut failed) = (0, 0, 0);
        let mut worst: f64 = 0.0;
        for z in &basis {
            let mats: Vec<Matrix<f64>> = z.values.iter().map(|v| big.from_coords((inc * v).as_slice())).collect();
            let w = weil_check(&dec.embedded, &mats);
            match w.verdict {
                WeilVerdict::Quadratic => quad += 1,
                WeilVerdict::Integrable => integ += 1,
                WeilVerdict::Failed => failed += 1,
            }
            if let Some(s) = w.slope {
                worst = worst.max((s - 2.0).abs());
            }
        }
        ledger.push(LedgerEntry {
            name: tagged("weil_first_order", dec, &m.label.to_string()),
            passed: failed == 0,
            margin: Some(0.1 - worst),
            detail: format!("{} cocycles: {quad} quadratic, {integ} integrable, {failed} failed", basis.len()),
        });
    }
    Ok(())
}

pub(super) fn cup_symmetry_checks(
    dec: &SlDecomposition<f64>,
    req: &AnalysisRequest,
    ledger: &mut Vec<LedgerEntry>,
) -> Result<(), PipelineError> {
    let pres = &dec.full.presentation;
    if !pres.closed || !pres.is_orientable() || pres.long_relator.is_none() {
        return Ok(());
    }
    let cycle = fundamental_cycle(pres)?;
    let basis = z1_basis(&dec.full, &req.policy)?;
    if basis.is_empty() {
        return Ok(());
    }
    let gram = dec.full.pairing.as_ref().expect("adjoint module carries the Killing form").matrix.clone();
    let killing = |x: &DVector<f64>, y: &DVector<f64>| (x.transpose() * &gram * y)[(0, 0)];
    let mut rng = ChaCha8Rng::seed_from_u64(req.seed ^ 0xc0c1);
    let (mut worst_sym, mut worst_br): (f64, f64) = (0.0, 0.0);
    for _ in 0..req.checks.cup_pairs {
        let z1 = random_combination(&mut rng, &basis);
        let z2 = random_combination(&mut rng, &basis);
        let a = cup_pairing(&cycle, &dec.full, &z1, &dec.full, &z2, killing)?;
        let b = cup_pairing(&cycle, &dec.full, &z2, &dec.full, &z1, killing)?;
        worst_sym = worst_sym.max((a.value + b.value).abs() / (a.scale + b.scale).max(f64::MIN_POSITIVE));
        let c = bracket_d_pairing(dec, &cycle, &z1, &z2)?;
        let d = bracket_d_pairing(dec, &cycle, &z2, &z1)?;
        worst_br = worst_br.max((c.value - d.value).abs() / (c.scale + d.scale).max(f64::MIN_POSITIVE));
    }
    ledger.push(LedgerEntry::bounded(
        "cup_skew_symmetric_form",
        worst_sym,
        1e-8,
        format!("Killing form, {} random pairs", req.checks.cup_pairs),
    ));
    ledger.push(LedgerEntry::bounded(
        "cup_bracket_symmetric",
        worst_br,
        1e-8,
        format!("d-part of the bracket, {} random pairs", req.checks.cup_pairs),
    ));
    Ok(())
}

/// Float and exact elimination agree on rational modules: the trivial module
/// and the orientation character.
pub(super) fn exact_agreement(
    pres: &Arc<GroupPresentation>,
    _dec: &SlDecomposition<f64>,
    policy: &RankPolicy,
    ledger: &mut Vec<LedgerEntry>,
) -> Result<(), PipelineError> {
    let exact_triv = super::rational_trivial(pres);
    let float_triv = crate::modules::trivial_module::<f64>(pres.clone(), 2);
    let alpha_f = float_triv.twist_by_orientation();
    let alpha_e = exact_triv.twist_by_orientation();
    let mut agree = true;
    let mut detail = Vec::new();
    for (f, e) in [(&float_triv, &exact_triv), (&alpha_f, &alpha_e)] {
        let a = h_dims(f, policy)?;
        let b = h_dims(e, policy)?;
        let same = (a.h0, a.h1, a.h2) == (b.h0, b.h1, b.h2);
        agree &= same;
        detail.push(format!("{}: float {:?} exact {:?}", f.label, (a.h0, a.h1, a.h2), (b.h0, b.h1, b.h2)));
    }
    ledger.push(LedgerEntry::bool_check("exact_agreement", agree, detail.join("; ")));
    Ok(())
}
