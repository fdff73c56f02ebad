//! Holonomy-style representations into SO(2,1) ⊂ SL₃(R) (and, for surfaces
//! without cone points, into SL₂(R)).
//!
//! The hyperboloid model uses the form J = diag(1, 1, −1); the origin is
//! (0, 0, 1). A point at distance r and polar angle φ is reached by
//! Rot(φ)·Boost_x(r), and rotations about it are conjugates of rotations
//! about the origin.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::optim::{levenberg_marquardt, LmOptions};
use super::{burnside_irreducible, GroupTag, RepError, Representation};
use crate::linalg::Matrix;
use crate::presentation::{
    parse_signature, presentation_of, GroupPresentation, OrbifoldSignature, SignatureKind, Word,
};

/// Seed used when none is supplied.
pub const DEFAULT_SEED: u64 = 1;
/// Converged solutions must have max relator residual at most this.
pub const SOLVE_TARGET: f64 = 1e-12;
const MAX_ATTEMPTS: usize = 12;
/// Solutions with larger entries sit far out in the hyperbolic plane; the
/// adjoint action squares their round-off, so prefer another attempt.
const WELL_CONDITIONED: f64 = 12.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuildInfo {
    pub method: String,
    pub seed: Option<u64>,
    pub attempts: usize,
    pub evaluations: usize,
    pub iterations: usize,
    pub residual: f64,
    pub parameters: Vec<f64>,
}

impl BuildInfo {
    fn closed_form(method: &str, residual: f64) -> Self {
        BuildInfo {
            method: method.into(),
            seed: None,
            attempts: 1,
            evaluations: 0,
            iterations: 0,
            residual,
            parameters: vec![],
        }
    }
}

#[derive(Clone, Debug)]
pub struct BuiltRep {
    pub rep: Representation<f64>,
    pub info: BuildInfo,
}

fn m3(v: [f64; 9]) -> Matrix<f64> {
    Matrix::from_row_slice(3, 3, &v)
}

pub fn lorentz_form() -> Matrix<f64> {
    m3([1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -1.0])
}

/// Rotation by θ about the origin (counter-clockwise).
pub fn rot0(theta: f64) -> Matrix<f64> {
    let (s, c) = theta.sin_cos();
    m3([c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0])
}

pub fn boost_x(r: f64) -> Matrix<f64> {
    let (ch, sh) = (r.cosh(), r.sinh());
    m3([ch, 0.0, sh, 0.0, 1.0, 0.0, sh, 0.0, ch])
}

/// Reflection y ↦ −y, in the geodesic through the origin along the x-axis.
pub fn reflection_x_axis() -> Matrix<f64> {
    m3([1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 1.0])
}

/// Inverse of a matrix preserving J: J Aᵀ J.
pub fn lorentz_inverse(a: &Matrix<f64>) -> Matrix<f64> {
    let j = lorentz_form();
    &j * a.transpose() * &j
}

/// Frame moving the origin to the point at distance r, polar angle φ.
pub fn point_frame(r: f64, phi: f64) -> Matrix<f64> {
    rot0(phi) * boost_x(r)
}

/// Rotation by θ about the point at distance r, polar angle φ.
pub fn rotation_about(r: f64, phi: f64, theta: f64) -> Matrix<f64> {
    let t = point_frame(r, phi);
    &t * rot0(theta) * lorentz_inverse(&t)
}

/// max |AᵀJA − J|.
pub fn lorentz_defect(a: &Matrix<f64>) -> f64 {
    let j = lorentz_form();
    (a.transpose() * &j * a - &j).abs().max()
}

/// so(2,1) generators: boosts along x and y, rotation about the origin.
fn so21_basis() -> [Matrix<f64>; 3] {
    [
        m3([0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]),
        m3([0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0]),
        m3([0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ]
}

/// sl₂ generators: two hyperbolic directions and the rotation generator.
fn sl2_basis() -> [Matrix<f64>; 3] {
    [
        Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]),
        Matrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]),
        Matrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]),
    ]
}

fn sphere_presentation(orders: &[u32]) -> Result<Arc<GroupPresentation>, RepError> {
    let sig = OrbifoldSignature::sphere(orders).map_err(|e| RepError::Invalid(e.to_string()))?;
    Ok(Arc::new(presentation_of(&sig).map_err(|e| RepError::Invalid(e.to_string()))?))
}

/// Rotations by 2π/p, 2π/q, 2π/r about the vertices of the hyperbolic
/// triangle with angles π/p, π/q, π/r, so that x₁x₂x₃ = I.
pub fn triangle_matrices(p: u32, q: u32, r: u32) -> Result<[Matrix<f64>; 3], RepError> {
    let (p, q, r) = (p as f64, q as f64, r as f64);
    if 1.0 / p + 1.0 / q + 1.0 / r >= 1.0 {
        return Err(RepError::Invalid(format!(
            "({p}, {q}, {r}) is not a hyperbolic triple: 1/p + 1/q + 1/r must be < 1"
        )));
    }
    let (a, b, c) = (PI / p, PI / q, PI / r);
    // Side lengths from the hyperbolic law of cosines for angles.
    let ab = ((c.cos() + a.cos() * b.cos()) / (a.sin() * b.sin())).acosh();
    let ac = ((b.cos() + a.cos() * c.cos()) / (a.sin() * c.sin())).acosh();
    Ok([rot0(2.0 * a), rotation_about(ab, 0.0, 2.0 * b), rotation_about(ac, a, 2.0 * c)])
}

/// Fuchsian turnover representation of S²(p, q, r). Orders are sorted to
/// match the canonical presentation.
pub fn triangle_group(p: u32, q: u32, r: u32) -> Result<BuiltRep, RepError> {
    let mut o = [p, q, r];
    o.sort_unstable();
    let pres = sphere_presentation(&o)?;
    let mats = triangle_matrices(o[0], o[1], o[2])?;
    let rep = Representation::new(pres, mats.to_vec(), GroupTag::Sl, vec![format!("triangle group {o:?}")])?;
    let residual = rep.relator_residual;
    Ok(BuiltRep {
        rep,
        info: BuildInfo::closed_form("triangle", residual),
    })
}

/// Polygon-group matrices for parameters (ϱ, gap₁..gap_{c−1}).
pub fn polygon_matrices(orders: &[u32], params: &[f64]) -> Vec<Matrix<f64>> {
    let rho = params[0];
    let mut phi = 0.0;
    let mut out = Vec::with_capacity(orders.len());
    for (j, &n) in orders.iter().enumerate() {
        if j > 0 {
            phi += params[j];
        }
        out.push(rotation_about(rho, phi, TAU / n as f64));
    }
    out
}

fn product_residual(mats: &[Matrix<f64>]) -> Vec<f64> {
    let n = mats[0].nrows();
    let mut p = Matrix::<f64>::identity(n, n);
    for m in mats {
        p = &p * m;
    }
    (p - Matrix::<f64>::identity(n, n)).iter().copied().collect()
}

/// Deterministic start: regular polygon whose angle is the mean of π/n_j.
pub fn polygon_initial_guess(orders: &[u32]) -> Vec<f64> {
    let c = orders.len() as f64;
    let beta = orders.iter().map(|&n| PI / n as f64).sum::<f64>() / c;
    let rho = (1.0 / ((PI / c).tan() * (beta / 2.0).tan())).acosh();
    let mut x = vec![rho];
    x.extend(std::iter::repeat_n(TAU / c, orders.len() - 1));
    x
}

/// Representation of S²(n₁..n_c), c ≥ 4, with rotation centers on a circle,
/// solved by damped least squares.
pub fn polygon_group(orders: &[u32], seed: u64) -> Result<BuiltRep, RepError> {
    if orders.len() < 4 {
        return Err(RepError::Invalid("polygon groups need at least four cone points".into()));
    }
    let mut sorted = orders.to_vec();
    sorted.sort_unstable();
    let excess: f64 = sorted.iter().map(|&n| 1.0 - 1.0 / n as f64).sum();
    if excess <= 2.0 {
        return Err(RepError::Invalid(format!("S2{sorted:?} is not hyperbolic")));
    }
    let pres = sphere_presentation(&sorted)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = LmOptions {
        target: SOLVE_TARGET * 0.1,
        ..Default::default()
    };
    let base = polygon_initial_guess(&sorted);
    let mut best = (f64::INFINITY, 0usize);
    let mut total_evals = 0;
    for attempt in 0..MAX_ATTEMPTS {
        let x0: Vec<f64> = if attempt == 0 {
            base.clone()
        } else {
            base.iter().map(|v| v * (1.0 + 0.3 * (rng.random::<f64>() - 0.5))).collect()
        };
        let f = |x: &[f64]| product_residual(&polygon_matrices(&sorted, x));
        let rep = levenberg_marquardt(f, x0, &opts);
        total_evals += rep.evaluations;
        if rep.residual < best.0 {
            best = (rep.residual, rep.evaluations);
        }
        if rep.residual > SOLVE_TARGET || rep.x[0] <= 0.0 {
            continue;
        }
        let mats = polygon_matrices(&sorted, &rep.x);
        let Ok(r) = Representation::new(pres.clone(), mats, GroupTag::Sl, vec![format!("polygon group {sorted:?}")])
        else {
            continue;
        };
        if !burnside_irreducible(&r.matrices).irreducible_over_c {
            continue;
        }
        return Ok(BuiltRep {
            info: BuildInfo {
                method: "polygon".into(),
                seed: Some(seed),
                attempts: attempt + 1,
                evaluations: rep.evaluations,
                iterations: rep.iterations,
                residual: r.relator_residual,
                parameters: rep.x.clone(),
            },
            rep: r,
        });
    }
    Err(RepError::Optimizer {
        best_residual: best.0,
        evaluations: total_evals,
    })
}

/// Parameterized generator images for the general solvers.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Slot {
    /// exp of a Lie algebra element (3 parameters).
    Free,
    /// Rotation by 2π/n about a movable center (2 parameters).
    Elliptic(u32),
    /// exp(X)·σ with σ the reflection in the x-axis (3 parameters).
    Glide,
    /// Conjugate of σ by a movable frame (2 parameters).
    Reflection,
}

impl Slot {
    fn params(self) -> usize {
        match self {
            Slot::Free | Slot::Glide => 3,
            Slot::Elliptic(_) | Slot::Reflection => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Model {
    So21,
    Sl2,
}

impl Model {
    fn basis(self) -> [Matrix<f64>; 3] {
        match self {
            Model::So21 => so21_basis(),
            Model::Sl2 => sl2_basis(),
        }
    }

    fn matrix(self, slot: Slot, p: &[f64]) -> Matrix<f64> {
        let b = self.basis();
        let lie = |x: &[f64]| (&b[0] * x[0] + &b[1] * x[1] + &b[2] * x[2]).exp();
        match slot {
            Slot::Free => lie(p),
            Slot::Glide => lie(p) * reflection_x_axis(),
            Slot::Elliptic(n) => {
                let t = (&b[0] * p[0] + &b[1] * p[1]).exp();
                &t * rot0(TAU / n as f64) * lorentz_inverse(&t)
            }
            Slot::Reflection => {
                let t = (&b[0] * p[0] + &b[2] * p[1]).exp();
                &t * reflection_x_axis() * lorentz_inverse(&t)
            }
        }
    }

    fn degree(self) -> usize {
        match self {
            Model::So21 => 3,
            Model::Sl2 => 2,
        }
    }
}

fn slots_for(pres: &GroupPresentation, model: Model) -> Result<Vec<Slot>, RepError> {
    let mut slots = Vec::with_capacity(pres.ngens());
    for g in 0..pres.ngens() {
        let torsion = pres.torsion.iter().find(|t| t.generator == g).map(|t| t.order);
        let reversing = pres.orientation[g] == -1;
        let slot = match (torsion, reversing) {
            (None, false) => Slot::Free,
            (None, true) => Slot::Glide,
            (Some(n), false) => Slot::Elliptic(n),
            (Some(2), true) => Slot::Reflection,
            (Some(n), true) => {
                return Err(RepError::Unsupported(format!(
                    "orientation-reversing generator of order {n}"
                )))
            }
        };
        if model == Model::Sl2 && slot != Slot::Free {
            return Err(RepError::Unsupported(
                "SL2 builders handle orientable surfaces without cone points only".into(),
            ));
        }
        slots.push(slot);
    }
    Ok(slots)
}

fn assemble(model: Model, slots: &[Slot], x: &[f64]) -> Vec<Matrix<f64>> {
    let mut k = 0;
    slots
        .iter()
        .map(|&s| {
            let m = model.matrix(s, &x[k..k + s.params()]);
            k += s.params();
            m
        })
        .collect()
}

fn group_tag(pres: &GroupPresentation) -> GroupTag {
    if pres.is_orientable() {
        GroupTag::Sl
    } else {
        GroupTag::SlPm
    }
}

/// Solve the long relator of a closed surface-type presentation by damped
/// least squares from seeded random starts.
fn solve_closed(pres: &Arc<GroupPresentation>, model: Model, seed: u64) -> Result<BuiltRep, RepError> {
    let long = pres
        .long_relator
        .ok_or_else(|| RepError::Unsupported("closed solver needs a long relator".into()))?;
    let slots = slots_for(pres, model)?;
    let nparams: usize = slots.iter().map(|s| s.params()).sum();
    let word = pres.relators[long].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = LmOptions {
        target: SOLVE_TARGET * 0.1,
        ..Default::default()
    };
    let mut best = f64::INFINITY;
    let mut total = 0;
    let mut fallback: Option<(f64, BuiltRep)> = None;
    for attempt in 0..MAX_ATTEMPTS {
        let x0: Vec<f64> = (0..nparams).map(|_| standard_normal(&mut rng)).collect();
        let f = |x: &[f64]| {
            let mats = assemble(model, &slots, x);
            let inv: Vec<Matrix<f64>> = mats.iter().map(|m| m.clone().try_inverse().unwrap_or_else(|| m * f64::NAN)).collect();
            let d = model.degree();
            let p = word.evaluate(Matrix::<f64>::identity(d, d), |a, b| a * b, &mats, &inv);
            (p - Matrix::<f64>::identity(d, d)).iter().copied().collect::<Vec<_>>()
        };
        let rep = levenberg_marquardt(f, x0, &opts);
        total += rep.evaluations;
        best = best.min(rep.residual);
        if rep.residual > SOLVE_TARGET {
            continue;
        }
        let mats = assemble(model, &slots, &rep.x);
        let Ok(r) = Representation::new(pres.clone(), mats, group_tag(pres), vec![format!("surface solver ({})", pres.name)])
        else {
            continue;
        };
        if !irreducible_enough(&r) {
            continue;
        }
        let size = r.matrices.iter().map(|m| m.amax()).fold(0.0, f64::max);
        let built = BuiltRep {
            info: BuildInfo {
                method: "surface-lm".into(),
                seed: Some(seed),
                attempts: attempt + 1,
                evaluations: rep.evaluations,
                iterations: rep.iterations,
                residual: r.relator_residual,
                parameters: rep.x,
            },
            rep: r,
        };
        if size <= WELL_CONDITIONED {
            return Ok(built);
        }
        if fallback.as_ref().is_none_or(|(s, _)| size < *s) {
            fallback = Some((size, built));
        }
    }
    fallback.map(|(_, b)| b).ok_or(RepError::Optimizer {
        best_residual: best,
        evaluations: total,
    })
}

/// C-irreducible, on the orientation cover when the group is non-orientable.
fn irreducible_enough(r: &Representation<f64>) -> bool {
    if r.presentation.is_orientable() {
        return burnside_irreducible(&r.matrices).irreducible_over_c;
    }
    match crate::presentation::orientation_cover(&r.presentation) {
        Ok(cover) => match r.restrict(&cover) {
            Ok(res) => burnside_irreducible(&res.matrices).irreducible_over_c,
            Err(_) => false,
        },
        Err(_) => false,
    }
}

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    // Box–Muller; rand's distributions crate is not needed for one draw.
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
}

/// Presentations with boundary: every generator but the last boundary one is
/// free, so pick them at random and solve the long relator for the last.
fn solve_bounded(pres: &Arc<GroupPresentation>, model: Model, seed: u64) -> Result<BuiltRep, RepError> {
    let long = pres
        .long_relator
        .ok_or_else(|| RepError::Unsupported("bounded builder needs a long relator".into()))?;
    let word = &pres.relators[long];
    let last = word
        .letters()
        .last()
        .ok_or_else(|| RepError::Invalid("empty long relator".into()))?;
    if last.inverse || word.letters().filter(|l| l.generator == last.generator).count() != 1 {
        return Err(RepError::Unsupported("long relator must end with a boundary generator".into()));
    }
    let slots = slots_for(pres, model)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..MAX_ATTEMPTS {
        let params: Vec<f64> = slots.iter().flat_map(|s| vec![0.0; s.params()]).map(|_| 0.8 * standard_normal(&mut rng)).collect();
        let mut mats = assemble(model, &slots, &params);
        let d = model.degree();
        let prefix = word.prefix(word.len() - 1);
        let inv: Vec<Matrix<f64>> = mats.iter().map(|m| m.clone().try_inverse().expect("invertible")).collect();
        let p = prefix.evaluate(Matrix::<f64>::identity(d, d), |a, b| a * b, &mats, &inv);
        mats[last.generator] = p.try_inverse().expect("invertible prefix");
        let Ok(r) = Representation::new(pres.clone(), mats, group_tag(pres), vec![format!("free builder ({})", pres.name)])
        else {
            continue;
        };
        if !irreducible_enough(&r) {
            continue;
        }
        let residual = r.relator_residual;
        return Ok(BuiltRep {
            rep: r,
            info: BuildInfo {
                method: "free".into(),
                seed: Some(seed),
                attempts: attempt + 1,
                evaluations: 0,
                iterations: 0,
                residual,
                parameters: params,
            },
        });
    }
    Err(RepError::Optimizer {
        best_residual: f64::NAN,
        evaluations: 0,
    })
}

/// Disc with mirrored boundary: rotations about points on the x-axis, spaced
/// so that their product X is hyperbolic, and the reflection in the axis of X.
pub fn mirrored_disc(orders: &[u32]) -> Result<BuiltRep, RepError> {
    let sig = OrbifoldSignature::new(SignatureKind::MirroredDisc, 1, orders.to_vec())
        .map_err(|e| RepError::Invalid(e.to_string()))?;
    let pres = Arc::new(presentation_of(&sig).map_err(|e| RepError::Invalid(e.to_string()))?);
    let orders = sig.cone_orders.clone();
    // Separation at which two consecutive rotations compose to a parabolic.
    let mut spacing: f64 = 0.0;
    for w in orders.windows(2) {
        let (a, b) = (PI / w[0] as f64, PI / w[1] as f64);
        let l0 = ((1.0 + a.cos() * b.cos()) / (a.sin() * b.sin())).acosh();
        spacing = spacing.max(l0);
    }
    spacing += 1.0;
    for bump in 0..20 {
        let step = spacing + 0.5 * bump as f64;
        let mut mats: Vec<Matrix<f64>> = orders
            .iter()
            .enumerate()
            .map(|(j, &n)| {
                let x = step * (j as f64 - (orders.len() as f64 - 1.0) / 2.0);
                let t = boost_x(x);
                &t * rot0(TAU / n as f64) * lorentz_inverse(&t)
            })
            .collect();
        let mut prod = Matrix::<f64>::identity(3, 3);
        for m in &mats {
            prod = &prod * m;
        }
        let tr = prod.trace();
        if tr <= 3.0 + 1e-6 {
            continue;
        }
        let Some(axis_normal) = spacelike_fixed_vector(&prod) else {
            continue;
        };
        mats.push(reflection_along(&axis_normal));
        let rep = Representation::new(pres.clone(), mats, GroupTag::SlPm, vec![format!("mirrored disc {orders:?}")])?;
        if !irreducible_enough(&rep) {
            continue;
        }
        let residual = rep.relator_residual;
        let mut info = BuildInfo::closed_form("mirrored-disc", residual);
        info.parameters = vec![step];
        return Ok(BuiltRep { rep, info });
    }
    Err(RepError::Invalid(format!("could not place centers for D{orders:?} with mirror")))
}

/// For a hyperbolic element of SO(2,1): the J-orthogonal complement of its
/// two light-like eigenvectors, i.e. the normal to its axis.
fn spacelike_fixed_vector(a: &Matrix<f64>) -> Option<nalgebra::DVector<f64>> {
    // The fixed vector spans ker(A − I); it is spacelike for hyperbolic A.
    let m = a - Matrix::<f64>::identity(3, 3);
    let k = crate::linalg::kernel_basis(&m, &crate::linalg::RankPolicy::with_relative(1e-8)).ok()?;
    if k.ncols() != 1 {
        return None;
    }
    let v = k.column(0).into_owned();
    let j = lorentz_form();
    let q = (v.transpose() * &j * &v)[(0, 0)];
    if q <= 0.0 {
        return None;
    }
    Some(v / q.sqrt())
}

/// Reflection v ↦ v − 2⟨v,n⟩ n for a unit spacelike normal n.
fn reflection_along(n: &nalgebra::DVector<f64>) -> Matrix<f64> {
    let j = lorentz_form();
    let jn = &j * n;
    Matrix::<f64>::identity(3, 3) - n * jn.transpose() * 2.0
}

/// Free product of cyclic groups (every relator a generator power): rotations
/// about seeded random points for orientation-preserving torsion, reflections
/// in random geodesics for orientation-reversing involutions.
fn solve_cyclic_free_product(pres: &Arc<GroupPresentation>, seed: u64) -> Result<BuiltRep, RepError> {
    let slots = slots_for(pres, Model::So21)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..MAX_ATTEMPTS {
        let params: Vec<f64> = slots.iter().flat_map(|s| vec![0.0; s.params()]).map(|_| 0.8 * standard_normal(&mut rng)).collect();
        let mats = assemble(Model::So21, &slots, &params);
        let Ok(r) = Representation::new(pres.clone(), mats, group_tag(pres), vec![format!("free product ({})", pres.name)])
        else {
            continue;
        };
        if !irreducible_enough(&r) {
            continue;
        }
        let residual = r.relator_residual;
        return Ok(BuiltRep {
            rep: r,
            info: BuildInfo {
                method: "free-product".into(),
                seed: Some(seed),
                attempts: attempt + 1,
                evaluations: 0,
                iterations: 0,
                residual,
                parameters: params,
            },
        });
    }
    Err(RepError::Optimizer {
        best_residual: f64::NAN,
        evaluations: 0,
    })
}

fn is_cyclic_free_product(pres: &GroupPresentation) -> bool {
    pres.relators.iter().all(|r| {
        let first = r.letters().next();
        first.is_some_and(|f| r.letters().all(|l| l == f))
    })
}

/// Pick a builder for the presentation: turnovers and polygon groups for
/// spheres, the surface solver for other closed signatures, the free builder
/// with boundary, mirrored discs in closed form, and free products of cyclic
/// groups for raw presentations of that shape.
pub fn build_hyperbolic(pres: &Arc<GroupPresentation>, n: usize, seed: u64) -> Result<BuiltRep, RepError> {
    let model = match n {
        3 => Model::So21,
        2 => Model::Sl2,
        _ => {
            return Err(RepError::Unsupported(format!(
                "builtin representations exist for n = 2, 3 only (got n = {n}); supply a representation file"
            )))
        }
    };
    if let Some(sig) = &pres.signature {
        let orientable_sphere = sig.kind == (SignatureKind::OrientableSurface { genus: 0 }) && sig.boundary_circles == 0;
        if model == Model::So21 && orientable_sphere && sig.cone_orders.len() == 3 {
            let o = &sig.cone_orders;
            return triangle_group(o[0], o[1], o[2]);
        }
        if model == Model::So21 && orientable_sphere && sig.cone_orders.len() >= 4 {
            return polygon_group(&sig.cone_orders, seed);
        }
        if sig.kind == SignatureKind::MirroredDisc {
            if model != Model::So21 {
                return Err(RepError::Unsupported("mirrored discs need n = 3".into()));
            }
            return mirrored_disc(&sig.cone_orders);
        }
        if sig.is_closed() {
            return solve_closed(pres, model, seed);
        }
        return solve_bounded(pres, model, seed);
    }
    if is_cyclic_free_product(pres) && model == Model::So21 {
        return solve_cyclic_free_product(pres, seed);
    }
    if pres.long_relator.is_some() {
        if pres.closed {
            return solve_closed(pres, model, seed);
        }
        return solve_bounded(pres, model, seed);
    }
    Err(RepError::Unsupported(format!(
        "no builtin representation for presentation {}; supply a representation file",
        pres.name
    )))
}

/// Convenience: build from signature text.
pub fn build_from_signature(text: &str, n: usize, seed: u64) -> Result<BuiltRep, RepError> {
    let sig = parse_signature(text).map_err(|e| RepError::Invalid(e.to_string()))?;
    let pres = Arc::new(presentation_of(&sig).map_err(|e| RepError::Invalid(e.to_string()))?);
    build_hyperbolic(&pres, n, seed)
}

/// Matrices of a word for a given representation, used by tests and checks.
pub fn eval_word(rep: &Representation<f64>, w: &Word) -> Matrix<f64> {
    rep.eval(w)
}
