//! Polytopes as rational vertex sets: lattice point counting, Ehrhart
//! interpolation, projections, symmetrization and gauge oracles.

use num::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, IntVector};
use crate::lp::{lp_solve, LpProblem, LpStatus, Sense};
use crate::ratio::{format_rat, parse_rat, rat_ceil, rat_floor, Int, Rat};

/// Enumeration budget for lattice point counting, measured in bounding-box
/// volume.
pub const DEFAULT_BOX_CAP: u64 = 10_000_000;

/// A polytope given by a finite set of rational points; the body is their
/// convex hull and redundant points are tolerated.
#[derive(Clone, Debug, PartialEq)]
pub struct VPolytope {
    ambient_dim: usize,
    vertices: Vec<Vec<Rat>>,
}

impl VPolytope {
    pub fn new(ambient_dim: usize, vertices: Vec<Vec<Rat>>) -> Self {
        assert!(!vertices.is_empty(), "empty vertex set");
        for v in &vertices {
            assert_eq!(v.len(), ambient_dim, "vertex dimension mismatch");
        }
        VPolytope {
            ambient_dim,
            vertices,
        }
    }

    pub fn from_i64(ambient_dim: usize, vertices: &[&[i64]]) -> Self {
        Self::new(
            ambient_dim,
            vertices
                .iter()
                .map(|v| v.iter().map(|&e| Rat::from_integer(Int::from(e))).collect())
                .collect(),
        )
    }

    /// Unit cube [0,1]^n.
    pub fn unit_cube(n: usize) -> Self {
        let mut verts = Vec::new();
        for mask in 0..1u32 << n {
            verts.push(
                (0..n)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            Rat::one()
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect(),
            );
        }
        Self::new(n, verts)
    }

    /// Cube conv{±c}^n.
    pub fn centered_cube(n: usize, c: i64) -> Self {
        let mut verts = Vec::new();
        for mask in 0..1u32 << n {
            verts.push(
                (0..n)
                    .map(|i| {
                        Rat::from_integer(Int::from(if mask >> i & 1 == 1 { c } else { -c }))
                    })
                    .collect(),
            );
        }
        Self::new(n, verts)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| v.iter().all(|c| c.is_integer()))
    }
}

/// Ehrhart polynomial coefficients; `coeffs[i]` multiplies k^i.
#[derive(Clone, Debug, PartialEq)]
pub struct EhrhartPoly {
    pub coeffs: Vec<Rat>,
}

impl EhrhartPoly {
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    pub fn leading(&self) -> &Rat {
        &self.coeffs[self.degree()]
    }

    pub fn eval(&self, k: &Int) -> Rat {
        linalg::eval_polynomial(&self.coeffs, &Rat::from_integer(k.clone()))
    }
}

/// Dimension of the affine hull of the stored points.
pub fn affine_dim(p: &VPolytope) -> usize {
    if p.vertices.len() == 1 {
        return 0;
    }
    let base = &p.vertices[0];
    let diffs: Vec<IntVector> = p.vertices[1..]
        .iter()
        .map(|v| {
            // clear denominators per difference vector; scaling keeps the span
            let diff: Vec<Rat> = v.iter().zip(base).map(|(a, b)| a - b).collect();
            let lcm = diff
                .iter()
                .fold(Int::one(), |acc, r| num::Integer::lcm(&acc, r.denom()));
            IntVector::new(
                diff.iter()
                    .map(|r| r.numer() * (&lcm / r.denom()))
                    .collect(),
            )
        })
        .collect();
    linalg::rank(&IntMatrix::from_columns(&diffs))
}

/// Exact maximum of ⟨v, direction⟩ over the stored points.
pub fn support_bound(p: &VPolytope, direction: &IntVector) -> Rat {
    assert_eq!(direction.dim(), p.ambient_dim);
    p.vertices
        .iter()
        .map(|v| {
            v.iter()
                .zip(direction.entries())
                .map(|(c, d)| c * Rat::from_integer(d.clone()))
                .fold(Rat::zero(), |a, b| a + b)
        })
        .max()
        .expect("nonempty vertex set")
}

/// True iff `x` is a convex combination of the stored points (LP feasibility).
pub fn membership(p: &VPolytope, x: &[Rat]) -> bool {
    assert_eq!(x.len(), p.ambient_dim);
    let nv = p.vertices.len();
    let mut lp = LpProblem::new(vec![Rat::zero(); nv]);
    for i in 0..p.ambient_dim {
        let row: Vec<Rat> = p.vertices.iter().map(|v| v[i].clone()).collect();
        lp.add_row(row, Sense::Eq, x[i].clone());
    }
    lp.add_row(vec![Rat::one(); nv], Sense::Eq, Rat::one());
    lp_solve(&lp).status == LpStatus::Optimal
}

/// Indices of stored points that are true vertices of the hull (duplicates
/// keep only their first occurrence).
pub fn hull_vertex_indices(p: &VPolytope) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    // drop exact duplicates first
    let mut seen: Vec<&Vec<Rat>> = Vec::new();
    for (i, v) in p.vertices.iter().enumerate() {
        if !seen.contains(&v) {
            seen.push(v);
            kept.push(i);
        }
    }
    let mut result = Vec::new();
    for (pos, &i) in kept.iter().enumerate() {
        let others: Vec<Vec<Rat>> = kept
            .iter()
            .enumerate()
            .filter(|&(q, _)| q != pos)
            .map(|(_, &j)| p.vertices[j].clone())
            .collect();
        if others.is_empty() {
            result.push(i);
            continue;
        }
        let hull_others = VPolytope::new(p.ambient_dim, others);
        if !membership(&hull_others, &p.vertices[i]) {
            result.push(i);
        }
    }
    result
}

/// The polytope restricted to its true hull vertices.
pub fn pruned(p: &VPolytope) -> VPolytope {
    let idx = hull_vertex_indices(p);
    VPolytope::new(
        p.ambient_dim,
        idx.into_iter().map(|i| p.vertices[i].clone()).collect(),
    )
}

pub fn dilate(p: &VPolytope, k: u64) -> VPolytope {
    let kk = Rat::from_integer(Int::from(k));
    VPolytope::new(
        p.ambient_dim,
        p.vertices
            .iter()
            .map(|v| v.iter().map(|c| c * &kk).collect())
            .collect(),
    )
}

/// Forgets the last n−keep coordinates.
pub fn project(p: &VPolytope, keep: usize) -> VPolytope {
    assert!(keep >= 1 && keep <= p.ambient_dim);
    VPolytope::new(
        keep,
        p.vertices.iter().map(|v| v[..keep].to_vec()).collect(),
    )
}

/// conv(P, −P): the vertex list plus its negatives.
pub fn symmetrize(p: &VPolytope) -> VPolytope {
    let mut verts = p.vertices.clone();
    verts.extend(
        p.vertices
            .iter()
            .map(|v| v.iter().map(|c| -c).collect::<Vec<Rat>>()),
    );
    VPolytope::new(p.ambient_dim, verts)
}

/// True iff the hull is 0-symmetric (every stored point's negative lies in
/// the hull).
pub fn is_symmetric(p: &VPolytope) -> bool {
    p.vertices.iter().all(|v| {
        let neg: Vec<Rat> = v.iter().map(|c| -c).collect();
        p.vertices.contains(&neg) || membership(p, &neg)
    })
}

fn integer_range(lo: &Rat, hi: &Rat) -> Option<(Int, Int)> {
    let l = rat_ceil(lo);
    let h = rat_floor(hi);
    if l > h {
        None
    } else {
        Some((l, h))
    }
}

/// Min and max of coordinate `coord` over the hull, with the listed
/// coordinates fixed; None when the slice is empty.
fn column_range(p: &VPolytope, fixed: &[(usize, Rat)], coord: usize) -> Option<(Rat, Rat)> {
    let nv = p.vertices.len();
    let obj: Vec<Rat> = p.vertices.iter().map(|v| v[coord].clone()).collect();
    let mut lp = LpProblem::new(obj.clone());
    for (i, val) in fixed {
        let row: Vec<Rat> = p.vertices.iter().map(|v| v[*i].clone()).collect();
        lp.add_row(row, Sense::Eq, val.clone());
    }
    lp.add_row(vec![Rat::one(); nv], Sense::Eq, Rat::one());
    let hi = lp_solve(&lp);
    if hi.status != LpStatus::Optimal {
        return None;
    }
    let mut lp_min = lp.clone();
    lp_min.objective = obj.iter().map(|c| -c).collect();
    let lo = lp_solve(&lp_min);
    debug_assert_eq!(lo.status, LpStatus::Optimal);
    Some((-lo.value.unwrap(), hi.value.unwrap()))
}

/// Exact number of lattice points in the hull.
///
/// The integer bounding box is scanned one column at a time: all coordinates
/// but the widest are fixed and two LPs give the exact extent of the slice.
/// Cost is O(box volume / widest extent · LP); `cap` bounds the box volume.
pub fn count_lattice_points_capped(p: &VPolytope, cap: u64) -> Result<Int> {
    let n = p.ambient_dim;
    let body = if p.vertices.len() > n + 4 {
        pruned(p)
    } else {
        p.clone()
    };
    let mut ranges = Vec::with_capacity(n);
    for i in 0..n {
        let hi = support_bound(&body, &IntVector::unit(n, i));
        let lo = -support_bound(&body, &IntVector::unit(n, i).neg());
        match integer_range(&lo, &hi) {
            Some(r) => ranges.push(r),
            None => return Ok(Int::zero()),
        }
    }
    let mut volume = Int::one();
    for (l, h) in &ranges {
        volume *= h - l + 1;
    }
    if volume > Int::from(cap) {
        return Err(Error::CapExceeded(cap));
    }
    // widest coordinate is resolved by LP pairs
    let widest = (0..n)
        .max_by_key(|&i| (&ranges[i].1 - &ranges[i].0).clone())
        .unwrap();
    let others: Vec<usize> = (0..n).filter(|&i| i != widest).collect();
    let mut cursor: Vec<Int> = others.iter().map(|&i| ranges[i].0.clone()).collect();
    let mut count = Int::zero();
    loop {
        let fixed: Vec<(usize, Rat)> = others
            .iter()
            .zip(&cursor)
            .map(|(&i, v)| (i, Rat::from_integer(v.clone())))
            .collect();
        if let Some((lo, hi)) = column_range(&body, &fixed, widest) {
            if let Some((l, h)) = integer_range(&lo, &hi) {
                count += h - l + 1;
            }
        }
        // advance odometer
        let mut pos = others.len();
        loop {
            if pos == 0 {
                return Ok(count);
            }
            pos -= 1;
            if cursor[pos] < ranges[others[pos]].1 {
                cursor[pos] += 1;
                for later in pos + 1..others.len() {
                    cursor[later] = ranges[others[later]].0.clone();
                }
                break;
            }
        }
        if others.is_empty() {
            return Ok(count);
        }
    }
}

pub fn count_lattice_points(p: &VPolytope) -> Result<Int> {
    count_lattice_points_capped(p, DEFAULT_BOX_CAP)
}

/// Ehrhart polynomial of a full-dimensional lattice polytope, by counting at
/// k = 0..n and exact interpolation.
pub fn ehrhart_capped(p: &VPolytope, cap: u64) -> Result<EhrhartPoly> {
    let n = p.ambient_dim;
    if !p.is_lattice() {
        return Err(Error::NotLatticePolytope);
    }
    if affine_dim(p) != n {
        return Err(Error::LowerDimensional);
    }
    let mut pts = vec![(Int::zero(), Rat::one())];
    for k in 1..=n as u64 {
        let c = count_lattice_points_capped(&dilate(p, k), cap)?;
        pts.push((Int::from(k), Rat::from_integer(c)));
    }
    let coeffs = linalg::interpolate_polynomial(&pts)?;
    debug_assert!(coeffs[0].is_one(), "g_0 must be 1 for a lattice polytope");
    Ok(EhrhartPoly { coeffs })
}

pub fn ehrhart(p: &VPolytope) -> Result<EhrhartPoly> {
    ehrhart_capped(p, DEFAULT_BOX_CAP)
}

/// Leading Ehrhart coefficient, i.e. the volume of a full-dimensional lattice
/// polytope.
pub fn volume(p: &VPolytope) -> Result<Rat> {
    let e = ehrhart(p)?;
    Ok(e.coeffs[p.ambient_dim].clone())
}

// ---------------------------------------------------------------------------
// gauge oracles

/// Gauge (Minkowski functional) oracle for a 0-symmetric body.
pub trait GaugeBody: Sync {
    fn ambient_dim(&self) -> usize;
    /// min{λ > 0 : z ∈ λK}, exact.
    fn gauge(&self, z: &IntVector) -> Result<Rat>;
    /// Support function max{⟨x, dir⟩ : x ∈ K}, exact.
    fn support(&self, dir: &IntVector) -> Rat;
    /// Extent of coordinate `coord` over scale·K with the listed coordinates
    /// fixed; None when the slice is empty.
    fn column_range(&self, scale: &Rat, fixed: &[(usize, Rat)], coord: usize)
        -> Option<(Rat, Rat)>;
}

/// Gauge of a polytope that is itself 0-symmetric and full-dimensional.
pub struct SymmetricGauge {
    poly: VPolytope,
}

impl SymmetricGauge {
    pub fn new(p: &VPolytope) -> Result<Self> {
        if affine_dim(p) != p.ambient_dim() {
            return Err(Error::LowerDimensional);
        }
        if !is_symmetric(p) {
            return Err(Error::NotSymmetric);
        }
        Ok(SymmetricGauge { poly: pruned(p) })
    }
}

impl GaugeBody for SymmetricGauge {
    fn ambient_dim(&self) -> usize {
        self.poly.ambient_dim()
    }

    fn gauge(&self, z: &IntVector) -> Result<Rat> {
        if z.is_zero() {
            return Err(Error::ZeroVector);
        }
        // maximize μ with μz a convex combination of the vertices; gauge = 1/μ*
        let nv = self.poly.vertices().len();
        let mut obj = vec![Rat::zero(); nv];
        obj.push(Rat::one()); // μ is the last variable
        let mut lp = LpProblem::new(obj);
        for i in 0..self.ambient_dim() {
            let mut row: Vec<Rat> = self.poly.vertices().iter().map(|v| v[i].clone()).collect();
            row.push(-Rat::from_integer(z[i].clone()));
            lp.add_row(row, Sense::Eq, Rat::zero());
        }
        let mut ones = vec![Rat::one(); nv];
        ones.push(Rat::zero());
        lp.add_row(ones, Sense::Eq, Rat::one());
        let out = lp_solve(&lp);
        let mu = out
            .value
            .filter(|v| v.is_positive())
            .ok_or_else(|| Error::Precondition("gauge LP degenerate".into()))?;
        Ok(mu.recip())
    }

    fn support(&self, dir: &IntVector) -> Rat {
        support_bound(&self.poly, dir)
    }

    fn column_range(
        &self,
        scale: &Rat,
        fixed: &[(usize, Rat)],
        coord: usize,
    ) -> Option<(Rat, Rat)> {
        let scaled = VPolytope::new(
            self.poly.ambient_dim(),
            self.poly
                .vertices()
                .iter()
                .map(|v| v.iter().map(|c| c * scale).collect())
                .collect(),
        );
        column_range(&scaled, fixed, coord)
    }
}

/// Gauge of the difference body P − P, held implicitly: the LP uses two
/// convex-combination blocks over the vertex list of P and never materializes
/// the hull of DP.
pub struct DifferenceGauge {
    poly: VPolytope,
}

impl DifferenceGauge {
    pub fn new(p: &VPolytope) -> Result<Self> {
        if affine_dim(p) != p.ambient_dim() {
            return Err(Error::LowerDimensional);
        }
        Ok(DifferenceGauge { poly: pruned(p) })
    }
}

impl GaugeBody for DifferenceGauge {
    fn ambient_dim(&self) -> usize {
        self.poly.ambient_dim()
    }

    fn gauge(&self, z: &IntVector) -> Result<Rat> {
        if z.is_zero() {
            return Err(Error::ZeroVector);
        }
        // maximize μ with Σβ_i v_i − Σα_i v_i = μz, α, β convex; gauge = 1/μ*
        let nv = self.poly.vertices().len();
        let mut obj = vec![Rat::zero(); 2 * nv];
        obj.push(Rat::one());
        let mut lp = LpProblem::new(obj);
        for i in 0..self.ambient_dim() {
            let mut row = Vec::with_capacity(2 * nv + 1);
            for v in self.poly.vertices() {
                row.push(-v[i].clone());
            }
            for v in self.poly.vertices() {
                row.push(v[i].clone());
            }
            row.push(-Rat::from_integer(z[i].clone()));
            lp.add_row(row, Sense::Eq, Rat::zero());
        }
        let mut alpha_sum = vec![Rat::one(); nv];
        alpha_sum.extend(vec![Rat::zero(); nv + 1]);
        lp.add_row(alpha_sum, Sense::Eq, Rat::one());
        let mut beta_sum = vec![Rat::zero(); nv];
        beta_sum.extend(vec![Rat::one(); nv]);
        beta_sum.push(Rat::zero());
        lp.add_row(beta_sum, Sense::Eq, Rat::one());
        let out = lp_solve(&lp);
        let mu = out
            .value
            .filter(|v| v.is_positive())
            .ok_or_else(|| Error::Precondition("gauge LP degenerate".into()))?;
        Ok(mu.recip())
    }

    fn support(&self, dir: &IntVector) -> Rat {
        // support of P − P: max⟨v,d⟩ − min⟨v,d⟩ over the vertex list
        support_bound(&self.poly, dir) + support_bound(&self.poly, &dir.neg())
    }

    fn column_range(
        &self,
        scale: &Rat,
        fixed: &[(usize, Rat)],
        coord: usize,
    ) -> Option<(Rat, Rat)> {
        let nv = self.poly.vertices().len();
        let build = |obj: Vec<Rat>| {
            let mut lp = LpProblem::new(obj);
            for (i, val) in fixed {
                let mut row = Vec::with_capacity(2 * nv);
                for v in self.poly.vertices() {
                    row.push(-v[*i].clone() * scale);
                }
                for v in self.poly.vertices() {
                    row.push(v[*i].clone() * scale);
                }
                lp.add_row(row, Sense::Eq, val.clone());
            }
            let mut alpha_sum = vec![Rat::one(); nv];
            alpha_sum.extend(vec![Rat::zero(); nv]);
            lp.add_row(alpha_sum, Sense::Eq, Rat::one());
            let mut beta_sum = vec![Rat::zero(); nv];
            beta_sum.extend(vec![Rat::one(); nv]);
            lp.add_row(beta_sum, Sense::Eq, Rat::one());
            lp
        };
        let mut obj = Vec::with_capacity(2 * nv);
        for v in self.poly.vertices() {
            obj.push(-v[coord].clone() * scale);
        }
        for v in self.poly.vertices() {
            obj.push(v[coord].clone() * scale);
        }
        let hi = lp_solve(&build(obj.clone()));
        if hi.status != LpStatus::Optimal {
            return None;
        }
        let lo = lp_solve(&build(obj.iter().map(|c| -c).collect()));
        debug_assert_eq!(lo.status, LpStatus::Optimal);
        Some((-lo.value.unwrap(), hi.value.unwrap()))
    }
}

/// Gauge oracle for DP = P − P of a full-dimensional polytope.
pub fn difference_gauge_view(p: &VPolytope) -> Result<DifferenceGauge> {
    DifferenceGauge::new(p)
}

// ---------------------------------------------------------------------------
// JSON interface

/// Parses {"ambient_dim": n, "vertices": [[num or "p/q", ...], ...]}.
pub fn polytope_from_json(v: &Value) -> Result<VPolytope> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("expected object".into()))?;
    let n = obj
        .get("ambient_dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing ambient_dim".into()))? as usize;
    let verts = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing vertices".into()))?;
    if verts.is_empty() {
        return Err(Error::Parse("empty vertex list".into()));
    }
    let mut out = Vec::with_capacity(verts.len());
    for row in verts {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse("vertex must be an array".into()))?;
        if row.len() != n {
            return Err(Error::Parse("vertex length != ambient_dim".into()));
        }
        out.push(row.iter().map(json_rat).collect::<Result<Vec<Rat>>>()?);
    }
    Ok(VPolytope::new(n, out))
}

pub fn json_rat(v: &Value) -> Result<Rat> {
    match v {
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("non-integer number {n}")))?;
            Ok(Rat::from_integer(Int::from(i)))
        }
        Value::String(s) => parse_rat(s),
        _ => Err(Error::Parse("expected number or \"p/q\" string".into())),
    }
}

pub fn rat_to_json(r: &Rat) -> Value {
    if r.is_integer() {
        if let Ok(i) = i64::try_from(r.numer().clone()) {
            return Value::from(i);
        }
    }
    Value::from(format_rat(r))
}

pub fn polytope_to_json(p: &VPolytope) -> Value {
    serde_json::json!({
        "ambient_dim": p.ambient_dim(),
        "vertices": p.vertices().iter()
            .map(|v| v.iter().map(rat_to_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{int, rat, rat_frac};

    #[test]
    fn affine_dims() {
        let point = VPolytope::from_i64(2, &[&[1, 1]]);
        assert_eq!(affine_dim(&point), 0);
        let seg = VPolytope::from_i64(2, &[&[0, 0], &[2, 2]]);
        assert_eq!(affine_dim(&seg), 1);
        let square = VPolytope::from_i64(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(affine_dim(&square), 2);
    }

    #[test]
    fn membership_simplex() {
        let simplex = VPolytope::from_i64(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(membership(&simplex, &[rat_frac(1, 3), rat_frac(1, 3)]));
        assert!(membership(&simplex, &[rat(1), rat(0)]));
        assert!(!membership(&simplex, &[rat(2), rat(2)]));
        assert!(!membership(&simplex, &[rat_frac(2, 3), rat_frac(2, 3)]));
    }

    #[test]
    fn support_bounds() {
        let cube = VPolytope::centered_cube(2, 1);
        assert_eq!(support_bound(&cube, &IntVector::from_i64(&[1, 0])), rat(1));
        let seg = VPolytope::from_i64(2, &[&[0, 0], &[3, 1]]);
        assert_eq!(support_bound(&seg, &IntVector::from_i64(&[0, 1])), rat(1));
    }

    #[test]
    fn counting_basics() {
        assert_eq!(
            count_lattice_points(&VPolytope::unit_cube(2)).unwrap(),
            int(4)
        );
        assert_eq!(
            count_lattice_points(&VPolytope::centered_cube(2, 1)).unwrap(),
            int(9)
        );
        // segment along a coordinate axis, 1-dimensional ambient
        let seg = VPolytope::from_i64(1, &[&[0], &[3]]);
        assert_eq!(count_lattice_points(&seg).unwrap(), int(4));
        // lower-dimensional body inside the plane
        let diag = VPolytope::from_i64(2, &[&[0, 0], &[2, 2]]);
        assert_eq!(count_lattice_points(&diag).unwrap(), int(3));
    }

    #[test]
    fn counting_cap() {
        let big = VPolytope::from_i64(2, &[&[0, 0], &[10000, 0], &[0, 10000]]);
        assert!(matches!(
            count_lattice_points_capped(&big, 1000),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn ehrhart_examples() {
        let e = ehrhart(&VPolytope::unit_cube(2)).unwrap();
        assert_eq!(e.coeffs, vec![rat(1), rat(2), rat(1)]);
        let e = ehrhart(&VPolytope::centered_cube(2, 1)).unwrap();
        assert_eq!(e.coeffs, vec![rat(1), rat(4), rat(4)]);
        assert_eq!(volume(&VPolytope::unit_cube(3)).unwrap(), rat(1));
        let tri = VPolytope::from_i64(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(volume(&tri).unwrap(), rat_frac(1, 2));
    }

    #[test]
    fn ehrhart_preconditions() {
        let half = VPolytope::new(
            1,
            vec![vec![rat(0)], vec![rat_frac(1, 2)]],
        );
        assert_eq!(ehrhart(&half), Err(Error::NotLatticePolytope));
        let seg = VPolytope::from_i64(2, &[&[0, 0], &[1, 0]]);
        assert_eq!(ehrhart(&seg), Err(Error::LowerDimensional));
    }

    #[test]
    fn projections_and_symmetrize() {
        let cube = VPolytope::unit_cube(3);
        let sq = project(&cube, 2);
        assert_eq!(count_lattice_points(&sq).unwrap(), int(4));

        let seg = VPolytope::from_i64(1, &[&[0], &[1]]);
        let sym = symmetrize(&seg);
        assert_eq!(count_lattice_points(&sym).unwrap(), int(3));

        let tri = VPolytope::from_i64(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        let s = symmetrize(&tri);
        assert!(is_symmetric(&s));
        // 0 is absorbed: hull vertices are ±e_1, ±e_2
        assert_eq!(hull_vertex_indices(&s).len(), 4);
    }

    #[test]
    fn hull_vertex_pruning() {
        let with_center = VPolytope::from_i64(2, &[&[0, 0], &[2, 0], &[0, 2], &[1, 1], &[2, 0]]);
        let idx = hull_vertex_indices(&with_center);
        assert_eq!(idx, vec![0, 1, 2]);
    }

    #[test]
    fn symmetric_gauge_cube() {
        let g = SymmetricGauge::new(&VPolytope::centered_cube(3, 1)).unwrap();
        assert_eq!(g.gauge(&IntVector::from_i64(&[1, 0, 0])).unwrap(), rat(1));
        assert_eq!(g.gauge(&IntVector::from_i64(&[2, 0, 0])).unwrap(), rat(2));
        assert_eq!(g.gauge(&IntVector::from_i64(&[1, 1, 1])).unwrap(), rat(1));
        assert_eq!(
            g.gauge(&IntVector::zero(3)),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn symmetric_gauge_rejects() {
        let tri = VPolytope::from_i64(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(matches!(
            SymmetricGauge::new(&tri),
            Err(Error::NotSymmetric)
        ));
        let seg = VPolytope::from_i64(2, &[&[1, 0], &[-1, 0]]);
        assert!(matches!(
            SymmetricGauge::new(&seg),
            Err(Error::LowerDimensional)
        ));
    }

    #[test]
    fn difference_gauge_examples() {
        // DP of [0,1]^n is [-1,1]^n
        let g = difference_gauge_view(&VPolytope::unit_cube(2)).unwrap();
        assert_eq!(g.gauge(&IntVector::from_i64(&[1, 0])).unwrap(), rat(1));
        // symmetric P: gauge_DP(z) = gauge_P(z)/2
        let cube = VPolytope::centered_cube(2, 1);
        let gd = difference_gauge_view(&cube).unwrap();
        let gs = SymmetricGauge::new(&cube).unwrap();
        let z = IntVector::from_i64(&[1, 1]);
        assert_eq!(gd.gauge(&z).unwrap() * rat(2), gs.gauge(&z).unwrap());
        // DP of the standard triangle: e_1 - e_2 is a vertex of DP
        let tri = VPolytope::from_i64(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        let g = difference_gauge_view(&tri).unwrap();
        assert_eq!(g.gauge(&IntVector::from_i64(&[1, -1])).unwrap(), rat(1));
        assert_eq!(g.gauge(&IntVector::from_i64(&[1, 0])).unwrap(), rat(1));
    }

    #[test]
    fn json_roundtrip() {
        let text = r#"{"ambient_dim": 2, "vertices": [[0, 0], ["1/2", 3], [-1, "2/4"]]}"#;
        let v: Value = serde_json::from_str(text).unwrap();
        let p = polytope_from_json(&v).unwrap();
        assert_eq!(p.vertices()[1][0], rat_frac(1, 2));
        assert_eq!(p.vertices()[2][1], rat_frac(1, 2));
        let back = polytope_to_json(&p);
        let p2 = polytope_from_json(&back).unwrap();
        assert_eq!(p, p2);
    }

    #[test]
    fn json_errors() {
        for text in [
            r#"{"vertices": [[0]]}"#,
            r#"{"ambient_dim": 2, "vertices": [[0]]}"#,
            r#"{"ambient_dim": 1, "vertices": [[0.5]]}"#,
            r#"{"ambient_dim": 1, "vertices": []}"#,
        ] {
            let v: Value = serde_json::from_str(text).unwrap();
            assert!(polytope_from_json(&v).is_err());
        }
    }
}
