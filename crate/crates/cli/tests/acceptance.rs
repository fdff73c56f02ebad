//! Acceptance suite: one line per criterion, non-zero exit if any fails.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use charvar_core::pipeline::{
    analyze, o4_fixture, AnalysisReport, AnalysisRequest, CheckSet, Input, LedgerEntry, RepSource,
};
use charvar_core::presentation::{parse_signature, SignatureKind};
use charvar_core::reps::hyperbolic::triangle_group;
use charvar_core::reps::{burnside_irreducible, Embedding};
use nalgebra::DMatrix;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn full(req: AnalysisRequest) -> Result<AnalysisReport, String> {
    let mut req = req;
    req.checks = CheckSet::full();
    let label = req.input.describe();
    analyze(&req).map_err(|e| format!("{label}: {e}"))
}

struct Fixtures {
    closed: Vec<(String, AnalysisReport)>,
    other: Vec<(String, AnalysisReport)>,
}

const CLOSED: [&str; 8] = [
    "S2(3,3,3,3)",
    "S2(2,2,2,3)",
    "S2(2,3,3,3,3)",
    "S2(3,3,4)",
    "O(g=1;b=0;cone=[2])",
    "O(g=1;b=0;cone=[3,3])",
    "O(g=2;b=0;cone=[])",
    "O(g=2;b=0;cone=[3])",
];

fn load() -> Result<Fixtures, String> {
    let mut closed = Vec::new();
    for sig in CLOSED {
        closed.push((sig.to_string(), full(AnalysisRequest::signature(sig))?));
    }
    let mut other = Vec::new();
    for e in [Embedding::Orientable, Embedding::TypePreserving] {
        other.push((format!("D(3,3;mirror) {e}"), full(AnalysisRequest::signature("D(3,3;mirror)").with_embedding(e))?));
        let o4 = AnalysisRequest::new(Input::Presentation(Box::new(o4_fixture()))).with_embedding(e);
        other.push((format!("O4 {e}"), full(o4)?));
    }
    other.push(("D(3,3)".into(), full(AnalysisRequest::signature("D(3,3)"))?));
    Ok(Fixtures { closed, other })
}

fn entries<'a>(fx: &'a Fixtures, prefix: &'a str) -> impl Iterator<Item = (&'a str, &'a LedgerEntry)> + 'a {
    fx.closed
        .iter()
        .chain(&fx.other)
        .flat_map(move |(l, r)| r.ledger.iter().filter(move |e| e.name.starts_with(prefix)).map(move |e| (l.as_str(), e)))
}

fn all_entries_pass(fx: &Fixtures, prefix: &str, at_least: usize) -> Outcome {
    let mut n = 0;
    for (label, e) in entries(fx, prefix) {
        ensure!(e.passed, "{label}: {} failed ({})", e.name, e.detail);
        n += 1;
    }
    ensure!(n >= at_least, "only {n} {prefix} entries, expected at least {at_least}");
    Ok(format!("{n} checks"))
}

fn c1_four_point() -> Outcome {
    for (orders, k) in [("3,3,3,3", 0usize), ("2,3,3,3", 1), ("2,2,3,3", 2), ("2,2,2,3", 3)] {
        let sig = format!("S2({orders})");
        let r = full(AnalysisRequest::signature(&sig).with_rep(RepSource::Polygon))?;
        ensure!((r.dims.p, r.dims.d, r.dims.b) == (8 - 2 * k, 2, 0), "{sig}: {:?}", r.dims);
        ensure!(r.model.display.ends_with("Cone(UT(S^1))"), "{sig}: {}", r.model.display);
        let gap = r.cohomology.min_gap();
        ensure!(gap >= 1e3, "{sig}: rank gap {gap:.2e}");
    }
    Ok("p = 8 - 2k for k = 0..3".into())
}

fn c2_dim_teich(fx: &Fixtures) -> Outcome {
    let mut n = 0;
    for (sig, r) in &fx.closed {
        let s = parse_signature(sig).map_err(|e| e.to_string())?;
        let SignatureKind::OrientableSurface { genus } = s.kind else { continue };
        let want = -3 * (2 - 2 * genus as i64) + 2 * s.cone_orders.len() as i64;
        ensure!(r.dims.d as i64 == want, "{sig}: d = {}, formula {want}", r.dims.d);
        n += 1;
    }
    ensure!(n >= 6, "only {n} signatures");
    Ok(format!("{n} signatures"))
}

fn c3_turnovers() -> Outcome {
    for (p, q, r) in [(3, 3, 4), (2, 3, 7), (3, 4, 5)] {
        let sig = format!("S2({p},{q},{r})");
        let rep = full(AnalysisRequest::signature(&sig).with_rep(RepSource::Triangle))?;
        let d = &rep.dims;
        ensure!((d.d, d.h1_m_r, d.b) == (0, 0, 0), "{sig}: {d:?}");
        let want_p = if p == 2 { 0 } else { 2 };
        ensure!(d.p == want_p, "{sig}: p = {}", d.p);
        ensure!(
            rep.model.smooth && rep.model.sentence.contains("all deformations conjugate into SL3"),
            "{sig}: {}",
            rep.model.sentence
        );
    }
    Ok("rigid in the m-directions".into())
}

fn c4_non_orientable(fx: &Fixtures) -> Outcome {
    for (orders, k) in [("3,3", 0usize), ("2,3", 1)] {
        let sig = format!("D({orders};mirror)");
        for e in [Embedding::Orientable, Embedding::TypePreserving] {
            let r = full(AnalysisRequest::signature(&sig).with_embedding(e))?;
            ensure!(r.dims.p == 4 - 2 * k && r.dims.d_oe == Some(1), "{sig} {e}: {:?}", r.dims);
            if e == Embedding::TypePreserving {
                ensure!(
                    r.model.sentence.starts_with("topologically non-singular"),
                    "{sig}: {}",
                    r.model.sentence
                );
            }
        }
        let sig = format!("D({orders})");
        let r = full(AnalysisRequest::signature(&sig))?;
        ensure!((r.dims.p, r.dims.d, r.dims.b) == (4 - 2 * k, 1, 0), "{sig}: {:?}", r.dims);
    }
    for (label, r) in fx.other.iter().filter(|(l, _)| l.starts_with("O4")) {
        let d = &r.dims;
        ensure!(
            (d.d_oe, d.d_tp, d.f) == (Some(1), Some(0), Some(1)),
            "{label}: d_oe {:?} d_tp {:?} f {:?}",
            d.d_oe,
            d.d_tp,
            d.f
        );
        let t = d.t.ok_or("no so(2,1) dimension")?;
        ensure!(d.d_tp == Some(t - 1), "{label}: d_tp {:?} vs t - f = {}", d.d_tp, t - 1);
    }
    Ok("D(n1,n2;mirror), D(n1,n2), O4".into())
}

fn c5_duality(fx: &Fixtures) -> Outcome {
    let mut pairings = 0;
    for (sig, r) in &fx.closed {
        ensure!(r.dims.d == r.dims.h1_m_r, "{sig}: h1(m_c) {} h1(m_r) {}", r.dims.d, r.dims.h1_m_r);
        if let Some(p) = &r.pairing {
            let max = p.singular_values.first().copied().unwrap_or(0.0);
            let min = p.singular_values.last().copied().unwrap_or(0.0);
            ensure!(min > 1e-6 * max && p.rank == r.dims.d, "{sig}: singular values {:?}", p.singular_values);
            pairings += 1;
        }
    }
    ensure!(pairings >= 6, "only {pairings} pairing matrices");
    Ok(format!("{pairings} nondegenerate pairings"))
}

fn c9_obstruction(fx: &Fixtures) -> Outcome {
    let (_, r) = fx.closed.iter().find(|(s, _)| s == "S2(3,3,3,3)").ok_or("fixture missing")?;
    let est = r.obstruction.as_ref().ok_or("no obstruction estimate")?;
    let with_ratio = est.samples.iter().filter(|s| s.ratio.is_some()).count();
    ensure!(with_ratio >= 10, "{with_ratio} samples with a ratio");
    let rsd = est.relative_std.ok_or("no spread")?;
    ensure!(rsd <= 1e-6, "relative std {rsd:.2e}");
    let block = r
        .ledger
        .iter()
        .find(|e| e.name == "obstruction_block_vanishing")
        .ok_or("no block entry")?;
    ensure!(block.passed, "{}", block.detail);
    Ok(format!("c_n = {:.6}, rel std {rsd:.1e}", est.mean.unwrap_or(f64::NAN)))
}

fn c10_burnside() -> Outcome {
    let rho = triangle_group(3, 3, 4).map_err(|e| e.to_string())?.rep;
    let v = burnside_irreducible(&rho.matrices);
    ensure!(v.irreducible_over_c && v.algebra_dim == 9, "triangle: {v:?}");
    let emb = rho.embed(Embedding::Standard).map_err(|e| e.to_string())?;
    let w = burnside_irreducible(&emb.matrices);
    ensure!(!w.irreducible_over_c && w.commutant_dim == 2, "embedded: {w:?}");
    let t = std::f64::consts::SQRT_2;
    let rot = DMatrix::from_row_slice(2, 2, &[t.cos(), -t.sin(), t.sin(), t.cos()]);
    let s = burnside_irreducible(&[rot]);
    ensure!(!s.irreducible_over_c, "SO(2): {s:?}");
    Ok("irreducible / commutant 2 / reducible over C".into())
}

fn c12_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_charvar"))
            .args(["examples", "--json"])
            .env_remove("CHARVAR_SEED")
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run()?;
    let b = run()?;
    ensure!(a.status.success(), "exit {:?}: {}", a.status.code(), String::from_utf8_lossy(&a.stderr));
    ensure!(a.stdout == b.stdout, "outputs differ");
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn guarded(f: impl FnOnce() -> Outcome) -> Outcome {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(o) => o,
        Err(p) => Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into())),
    }
}

fn main() {
    let fx = load();
    let names = [
        "four-point spheres: p = 8 - 2k, d = 2, b = 0",
        "d = -3 chi(|O|) + 2c on closed orientable signatures",
        "turnover rigidity",
        "non-orientable examples and d_tp = t - f",
        "duality and nondegenerate pairing",
        "cup-product symmetry over 100 random pairs",
        "coboundaries pair to zero",
        "Euler consistency on every module block",
        "obstruction ratio constant",
        "Burnside irreducibility verdicts",
        "Weil first-order check",
        "examples --json is byte-identical across runs",
    ];
    let results: Vec<Outcome> = match &fx {
        Ok(fx) => vec![
            guarded(c1_four_point),
            guarded(|| c2_dim_teich(fx)),
            guarded(c3_turnovers),
            guarded(|| c4_non_orientable(fx)),
            guarded(|| c5_duality(fx)),
            guarded(|| {
                all_entries_pass(fx, "cup_skew_symmetric_form", 6)?;
                all_entries_pass(fx, "cup_bracket_symmetric", 6)
            }),
            guarded(|| all_entries_pass(fx, "coboundary_vanishing", 6)),
            guarded(|| all_entries_pass(fx, "euler_consistency", 40)),
            guarded(|| c9_obstruction(fx)),
            guarded(c10_burnside),
            guarded(|| all_entries_pass(fx, "weil_first_order", 40)),
            guarded(c12_determinism),
        ],
        Err(e) => {
            let mut v: Vec<Outcome> = (0..names.len()).map(|_| Err(format!("fixtures failed: {e}"))).collect();
            v[0] = guarded(c1_four_point);
            v[2] = guarded(c3_turnovers);
            v[9] = guarded(c10_burnside);
            v[11] = guarded(c12_determinism);
            v
        }
    };
    let mut failed = 0;
    for (i, (name, r)) in names.iter().zip(&results).enumerate() {
        match r {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", names.len() - failed, names.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
