//! Lattice-face polytopes: the defining subset condition, the coefficient
//! identity g_i = vol_i of the i-dimensional projection, projection minima,
//! and the symmetric / zero-vertex coefficient bounds.

use itertools::Itertools;
use num::{One, Signed, Zero};
use serde_json::Value;

use crate::conjecture::sigma;
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, IntVector};
use crate::minima;
use crate::polytopes::{self, rat_to_json, SymmetricGauge, VPolytope};
use crate::ratio::{Int, Rat};

pub const VERTEX_CAP: usize = 12;
pub const DIM_CAP: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    NoIntegerPoint,
    ProjectionNotOnto,
    BasePointNonintegral,
}

impl FailureKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FailureKind::NoIntegerPoint => "no-integer-point",
            FailureKind::ProjectionNotOnto => "projection-not-onto",
            FailureKind::BasePointNonintegral => "base-point-nonintegral",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeFaceReport {
    pub is_lattice_face: bool,
    pub failing_subset: Option<Vec<Vec<Rat>>>,
    pub failure_kind: Option<FailureKind>,
}

/// Does aff(U) ∩ Z^n project onto Z^k under dropping the last n−k coordinates?
/// `points` must be affinely independent, spanning k dimensions.
fn subset_condition(points: &[Vec<Rat>], n: usize) -> Option<FailureKind> {
    let k = points.len() - 1;
    if k == 0 {
        let ok = points[0].iter().all(|c| c.is_integer());
        return (!ok).then_some(FailureKind::BasePointNonintegral);
    }
    // integer direction vectors; per-vector scaling preserves the span
    let dirs: Vec<IntVector> = points[1..]
        .iter()
        .map(|p| {
            let mut lcm = Int::one();
            for (a, b) in p.iter().zip(&points[0]) {
                lcm = num::integer::lcm(lcm, (a - b).denom().clone());
            }
            IntVector::new(
                p.iter()
                    .zip(&points[0])
                    .map(|(a, b)| {
                        let d = (a - b) * Rat::from_integer(lcm.clone());
                        d.to_integer()
                    })
                    .collect(),
            )
        })
        .collect();
    let d = IntMatrix::from_columns(&dirs);
    // aff(U) = {x : w·x = w·v0 for each left-kernel vector w}
    let normals = linalg::integer_kernel(&d.transpose());
    debug_assert_eq!(normals.len(), n - k);
    let mut rows = Vec::with_capacity(n - k);
    let mut rhs = Vec::with_capacity(n - k);
    for w in &normals {
        let mut c = Rat::zero();
        for (we, ve) in w.entries().iter().zip(&points[0]) {
            c += Rat::from_integer(we.clone()) * ve;
        }
        let q = c.denom().clone();
        rows.push(IntVector::new(
            w.entries()
                .iter()
                .map(|e| e * &q)
                .collect(),
        ));
        rhs.push((c * Rat::from_integer(q)).to_integer());
    }
    let mut a = IntMatrix::zero(n - k, n);
    for (r, row) in rows.iter().enumerate() {
        for c in 0..n {
            *a.at_mut(r, c) = row.entries()[c].clone();
        }
    }
    let (_, lat) = match linalg::solve_affine_lattice(&a, &IntVector::new(rhs)) {
        Some(sol) => sol,
        None => return Some(FailureKind::NoIntegerPoint),
    };
    debug_assert_eq!(lat.vectors().len(), k);
    // projection of the direction lattice onto the first k coordinates
    let mut m = IntMatrix::zero(k, k);
    for (j, v) in lat.vectors().iter().enumerate() {
        for i in 0..k {
            *m.at_mut(i, j) = v.entries()[i].clone();
        }
    }
    if linalg::determinant(&m).abs().is_one() {
        None
    } else {
        Some(FailureKind::ProjectionNotOnto)
    }
}

/// Checks the defining property over every affinely independent subset of the
/// hull vertices spanning k dimensions, 0 ≤ k ≤ n−1, in lexicographic order;
/// reports the first failure. Independent subsets suffice: a spanning set has
/// the same affine hull as any maximal independent subset of it (cross-checked
/// exhaustively in dimension 2 in the tests).
pub fn check_lattice_face(p: &VPolytope) -> Result<LatticeFaceReport> {
    let n = p.ambient_dim();
    if n > DIM_CAP {
        return Err(Error::Precondition(format!(
            "ambient dimension {n} above cap {DIM_CAP}"
        )));
    }
    let hull = polytopes::pruned(p);
    let verts = hull.vertices();
    if verts.len() > VERTEX_CAP {
        return Err(Error::VertexCap);
    }
    for k in 0..n {
        for subset in (0..verts.len()).combinations(k + 1) {
            let pts: Vec<Vec<Rat>> = subset.iter().map(|&i| verts[i].clone()).collect();
            if affine_rank(&pts) != k {
                continue;
            }
            if let Some(kind) = subset_condition(&pts, n) {
                return Ok(LatticeFaceReport {
                    is_lattice_face: false,
                    failing_subset: Some(pts),
                    failure_kind: Some(kind),
                });
            }
        }
    }
    Ok(LatticeFaceReport {
        is_lattice_face: true,
        failing_subset: None,
        failure_kind: None,
    })
}

fn affine_rank(points: &[Vec<Rat>]) -> usize {
    let p = VPolytope::new(points[0].len(), points.to_vec());
    polytopes::affine_dim(&p)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiuReport {
    /// (i, g_i, vol_i of the projection onto the first i coordinates)
    pub rows: Vec<(usize, Rat, Rat)>,
    pub all_equal: bool,
}

/// Compares each Ehrhart coefficient g_i with the i-dimensional volume of the
/// projection onto the first i coordinates, computed independently as the
/// leading Ehrhart coefficient of the projection; vol_0 is 1 by convention.
pub fn verify_liu(p: &VPolytope) -> Result<LiuReport> {
    let n = p.ambient_dim();
    if polytopes::affine_dim(p) != n {
        return Err(Error::LowerDimensional);
    }
    if !check_lattice_face(p)?.is_lattice_face {
        return Err(Error::Precondition("polytope is not lattice-face".into()));
    }
    let g = polytopes::ehrhart(p)?;
    let mut rows = Vec::with_capacity(n + 1);
    let mut all_equal = true;
    for i in 0..=n {
        let vol = if i == 0 {
            Rat::one()
        } else {
            let proj = polytopes::project(p, i);
            polytopes::ehrhart(&proj)?.coeffs[i].clone()
        };
        all_equal &= g.coeffs[i] == vol;
        rows.push((i, g.coeffs[i].clone(), vol));
    }
    Ok(LiuReport { rows, all_equal })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionMinimaReport {
    pub is_lattice_face: bool,
    /// (i, j, λ_j of the projection onto R^i, λ_j of P, holds)
    pub rows: Vec<(usize, usize, Rat, Rat, bool)>,
    pub all_hold: bool,
}

/// Checks λ_j(π(P), Z^i) ≥ λ_j(P) for all 1 ≤ j ≤ i ≤ n. The inequality
/// is guaranteed only for lattice-face P; for other symmetric inputs the
/// report records the violations.
pub fn check_projection_minima(p: &VPolytope) -> Result<ProjectionMinimaReport> {
    let n = p.ambient_dim();
    if polytopes::affine_dim(p) != n {
        return Err(Error::LowerDimensional);
    }
    if !polytopes::is_symmetric(p) {
        return Err(Error::NotSymmetric);
    }
    let is_lattice_face = check_lattice_face(p)?.is_lattice_face;
    let full = minima::successive_minima(&SymmetricGauge::new(p)?)?;
    let mut rows = Vec::new();
    let mut all_hold = true;
    for i in 1..=n {
        let proj_minima = if i == n {
            full.clone()
        } else {
            let q = polytopes::project(p, i);
            minima::successive_minima(&SymmetricGauge::new(&q)?)?
        };
        for j in 1..=i {
            let lp = proj_minima.lambdas[j - 1].clone();
            let lf = full.lambdas[j - 1].clone();
            let holds = lp >= lf;
            all_hold &= holds;
            rows.push((i, j, lp, lf, holds));
        }
    }
    Ok(ProjectionMinimaReport {
        is_lattice_face,
        rows,
        all_hold,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremReport {
    /// "symmetric" or "zero-vertex"
    pub part: &'static str,
    /// the bounds are guaranteed only under this flag
    pub is_lattice_face: bool,
    /// (i, g_i, σ_i bound, holds)
    pub rows: Vec<(usize, Rat, Rat, bool)>,
    pub all_hold: bool,
}

fn zero_is_vertex(p: &VPolytope) -> bool {
    let hull = polytopes::pruned(p);
    hull.vertices()
        .iter()
        .any(|v| v.iter().all(|c| c.is_zero()))
}

/// Coefficient bounds for a lattice-face polytope: for symmetric P,
/// g_i ≤ σ_i(2/λ_1(P), …, 2/λ_n(P)) — the difference body of a symmetric P
/// is 2P, so these are the reciprocal minima of DP; for P with 0 among its
/// vertices, the same with the minima of conv(P, −P). The comparison is
/// computed for any symmetric or zero-vertex input; the report flags whether
/// the lattice-face hypothesis (which guarantees the bounds) holds.
pub fn check_latface_theorem(p: &VPolytope) -> Result<TheoremReport> {
    let n = p.ambient_dim();
    if polytopes::affine_dim(p) != n {
        return Err(Error::LowerDimensional);
    }
    let is_lattice_face = check_lattice_face(p)?.is_lattice_face;
    let (part, body) = if polytopes::is_symmetric(p) {
        ("symmetric", p.clone())
    } else if zero_is_vertex(p) {
        ("zero-vertex", polytopes::symmetrize(p))
    } else {
        return Err(Error::Precondition(
            "polytope is neither symmetric nor has 0 as a vertex".into(),
        ));
    };
    let m = minima::successive_minima(&SymmetricGauge::new(&body)?)?;
    let two = Rat::from_integer(Int::from(2));
    let recips: Vec<Rat> = m.lambdas.iter().map(|l| &two / l).collect();
    let g = polytopes::ehrhart(p)?;
    let mut rows = Vec::with_capacity(n + 1);
    let mut all_hold = true;
    for i in 0..=n {
        let bound = sigma(&recips, i)?;
        let holds = g.coeffs[i] <= bound;
        all_hold &= holds;
        rows.push((i, g.coeffs[i].clone(), bound, holds));
    }
    Ok(TheoremReport {
        part,
        is_lattice_face,
        rows,
        all_hold,
    })
}

pub fn report_to_json(r: &LatticeFaceReport) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("is_lattice_face".into(), Value::from(r.is_lattice_face));
    if let Some(s) = &r.failing_subset {
        obj.insert(
            "failing_subset".into(),
            Value::from(
                s.iter()
                    .map(|v| Value::from(v.iter().map(rat_to_json).collect::<Vec<_>>()))
                    .collect::<Vec<_>>(),
            ),
        );
    }
    if let Some(k) = r.failure_kind {
        obj.insert("failure_kind".into(), Value::from(k.as_str()));
    }
    Value::Object(obj)
}

/// conv{±(t−1, 1), ±(t, 1)}: symmetric but not lattice-face for t ≥ 2.
pub fn remark_family(t: i64) -> VPolytope {
    VPolytope::from_i64(
        2,
        &[
            &[t - 1, 1],
            &[t, 1],
            &[-(t - 1), -1],
            &[-t, -1],
        ],
    )
}

/// conv{(t, t^2, …, t^n) : t ∈ ts}: integral cyclic polytopes are lattice-face.
pub fn cyclic_polytope(n: usize, ts: &[i64]) -> VPolytope {
    let verts: Vec<Vec<Rat>> = ts
        .iter()
        .map(|&t| {
            (1..=n)
                .map(|e| Rat::from_integer(Int::from(t).pow(e as u32)))
                .collect()
        })
        .collect();
    VPolytope::new(n, verts)
}
