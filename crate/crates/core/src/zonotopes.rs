//! Lattice zonotopes: volume, Ehrhart coefficients by independent formulas,
//! structural predicates, and the basis-exchange bijection.

use itertools::Itertools;
use num::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, IntVector};
use crate::polytopes::{self, EhrhartPoly, VPolytope};
use crate::ratio::{Int, Rat};

/// Largest generator count for vertex-candidate expansion (2^m points).
pub const GENERATOR_CAP: usize = 16;

/// A lattice zonotope Σ [0, v_i] given by its ordered integer generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zonotope {
    ambient_dim: usize,
    generators: Vec<IntVector>,
}

impl Zonotope {
    pub fn new(ambient_dim: usize, generators: Vec<IntVector>) -> Self {
        for g in &generators {
            assert_eq!(g.dim(), ambient_dim, "generator dimension mismatch");
        }
        Zonotope {
            ambient_dim,
            generators,
        }
    }

    pub fn from_i64(ambient_dim: usize, generators: &[&[i64]]) -> Self {
        Self::new(
            ambient_dim,
            generators.iter().map(|g| IntVector::from_i64(g)).collect(),
        )
    }

    pub fn cube(n: usize) -> Self {
        Self::new(n, (0..n).map(|i| IntVector::unit(n, i)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    /// Zero generators contribute nothing to any g_i with i ≥ 1; formulas
    /// skip them and callers can surface this flag.
    pub fn has_zero_generators(&self) -> bool {
        self.generators.iter().any(|g| g.is_zero())
    }

    fn nonzero_generators(&self) -> Vec<&IntVector> {
        self.generators.iter().filter(|g| !g.is_zero()).collect()
    }

    /// Dimension of the zonotope as a body.
    pub fn dim(&self) -> usize {
        let nz = self.nonzero_generators();
        if nz.is_empty() {
            return 0;
        }
        linalg::rank(&IntMatrix::from_columns(
            &nz.iter().map(|g| (*g).clone()).collect::<Vec<_>>(),
        ))
    }
}

/// Vertex candidate set {Σ_{i∈S} v_i : S ⊆ [m]}; redundancy tolerated.
pub fn as_vpolytope(z: &Zonotope) -> Result<VPolytope> {
    let m = z.generators.len();
    if m > GENERATOR_CAP {
        return Err(Error::GeneratorCap);
    }
    let n = z.ambient_dim;
    let mut verts = Vec::with_capacity(1 << m);
    for mask in 0..1u32 << m {
        let mut p = vec![Int::zero(); n];
        for (i, g) in z.generators.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (c, e) in p.iter_mut().zip(g.entries()) {
                    *c += e;
                }
            }
        }
        verts.push(p.into_iter().map(Rat::from_integer).collect());
    }
    Ok(VPolytope::new(n, verts))
}

/// Σ over n-subsets of |det| of the chosen generators.
pub fn zonotope_volume(z: &Zonotope) -> Int {
    let n = z.ambient_dim;
    let mut vol = Int::zero();
    for subset in (0..z.generators.len()).combinations(n) {
        let cols: Vec<IntVector> = subset.iter().map(|&i| z.generators[i].clone()).collect();
        vol += linalg::determinant(&IntMatrix::from_columns(&cols)).abs();
    }
    vol
}

fn coefficient_sum(
    z: &Zonotope,
    summand: &dyn Fn(&IntMatrix) -> Result<Int>,
) -> Result<EhrhartPoly> {
    let nz: Vec<IntVector> = z.nonzero_generators().into_iter().cloned().collect();
    let deg = z.dim();
    let mut coeffs = vec![Rat::zero(); deg + 1];
    coeffs[0] = Rat::one();
    for i in 1..=deg {
        let mut gi = Int::zero();
        for subset in (0..nz.len()).combinations(i) {
            let cols: Vec<IntVector> = subset.iter().map(|&j| nz[j].clone()).collect();
            let mat = IntMatrix::from_columns(&cols);
            if linalg::rank(&mat) < i {
                continue; // dependent subsets contribute nothing
            }
            gi += summand(&mat)?;
        }
        coeffs[i] = Rat::from_integer(gi);
    }
    Ok(EhrhartPoly { coeffs })
}

/// Ehrhart coefficients by Stanley's formula:
/// g_i = Σ over independent i-subsets of gcd(i-minors).
pub fn ehrhart_stanley(z: &Zonotope) -> Result<EhrhartPoly> {
    coefficient_sum(z, &linalg::gcd_of_minors)
}

/// Ehrhart coefficients by the geometric formula: each independent subset J
/// contributes vol_i(P_J)/det(lin P_J ∩ Z^n), which equals the sublattice
/// index of its generator matrix and is computed through Smith invariants.
pub fn ehrhart_geometric(z: &Zonotope) -> Result<EhrhartPoly> {
    coefficient_sum(z, &linalg::sublattice_index)
}

/// True iff every n of the generators are linearly independent.
pub fn is_general_position(z: &Zonotope) -> Result<bool> {
    let n = z.ambient_dim;
    let m = z.generators.len();
    if m < n {
        return Err(Error::Precondition(
            "fewer generators than the dimension".into(),
        ));
    }
    for subset in (0..m).combinations(n) {
        let cols: Vec<IntVector> = subset.iter().map(|&i| z.generators[i].clone()).collect();
        if linalg::determinant(&IntMatrix::from_columns(&cols)).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff the gcd of the entries is one.
pub fn is_primitive(v: &IntVector) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.content().is_one())
}

/// Bijection φ from i-subsets of [n] to (n−i)-subsets of [n] such that
/// {b_k : k∈I} ∪ {a_j : j∈φ(I)} is always a basis. Found as a perfect
/// matching on the nonzero pattern of the determinant matrix det[b_I | a_J];
/// the matrix has nonzero determinant, so a matching exists.
pub fn basis_exchange_bijection(
    b: &[IntVector],
    a: &[IntVector],
    i: usize,
) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    let n = b.len();
    assert_eq!(a.len(), n);
    assert!(i >= 1 && i < n, "i must lie in 1..n");
    for fam in [b, a] {
        if linalg::rank(&IntMatrix::from_columns(fam)) < n {
            return Err(Error::DependentColumns);
        }
    }
    let row_sets: Vec<Vec<usize>> = (0..n).combinations(i).collect();
    let col_sets: Vec<Vec<usize>> = (0..n).combinations(n - i).collect();
    let size = row_sets.len();
    assert_eq!(col_sets.len(), size);
    let mut adj = vec![Vec::new(); size];
    for (r, ri) in row_sets.iter().enumerate() {
        for (c, cj) in col_sets.iter().enumerate() {
            let mut cols: Vec<IntVector> = ri.iter().map(|&k| b[k].clone()).collect();
            cols.extend(cj.iter().map(|&j| a[j].clone()));
            if !linalg::determinant(&IntMatrix::from_columns(&cols)).is_zero() {
                adj[r].push(c);
            }
        }
    }
    // Kuhn's augmenting-path matching, deterministic order
    let mut match_col: Vec<Option<usize>> = vec![None; size];
    fn augment(
        r: usize,
        adj: &[Vec<usize>],
        match_col: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &c in &adj[r] {
            if visited[c] {
                continue;
            }
            visited[c] = true;
            if match_col[c].is_none()
                || augment(match_col[c].unwrap(), adj, match_col, visited)
            {
                match_col[c] = Some(r);
                return true;
            }
        }
        false
    }
    for r in 0..size {
        let mut visited = vec![false; size];
        if !augment(r, &adj, &mut match_col, &mut visited) {
            return Err(Error::Precondition(
                "no perfect matching in exchange pattern".into(),
            ));
        }
    }
    let mut phi = vec![(Vec::new(), Vec::new()); size];
    for c in 0..size {
        let r = match_col[c].unwrap();
        phi[r] = (row_sets[r].clone(), col_sets[c].clone());
    }
    Ok(phi)
}

// ---------------------------------------------------------------------------
// Ehrhart method registry: the interchangeable coefficient formulas, selected
// by name at runtime.

pub trait EhrhartMethod: Sync {
    fn name(&self) -> &'static str;
    fn compute(&self, z: &Zonotope) -> Result<EhrhartPoly>;
}

struct StanleyMethod;
impl EhrhartMethod for StanleyMethod {
    fn name(&self) -> &'static str {
        "stanley"
    }
    fn compute(&self, z: &Zonotope) -> Result<EhrhartPoly> {
        ehrhart_stanley(z)
    }
}

struct GeometricMethod;
impl EhrhartMethod for GeometricMethod {
    fn name(&self) -> &'static str {
        "geometric"
    }
    fn compute(&self, z: &Zonotope) -> Result<EhrhartPoly> {
        ehrhart_geometric(z)
    }
}

struct CountingMethod;
impl EhrhartMethod for CountingMethod {
    fn name(&self) -> &'static str {
        "counting"
    }
    fn compute(&self, z: &Zonotope) -> Result<EhrhartPoly> {
        polytopes::ehrhart(&as_vpolytope(z)?)
    }
}

static METHODS: [&dyn EhrhartMethod; 3] = [&StanleyMethod, &GeometricMethod, &CountingMethod];

pub fn ehrhart_methods() -> &'static [&'static dyn EhrhartMethod] {
    &METHODS
}

pub fn ehrhart_method(name: &str) -> Option<&'static dyn EhrhartMethod> {
    METHODS.iter().copied().find(|m| m.name() == name)
}

// ---------------------------------------------------------------------------
// JSON interface

/// Parses {"ambient_dim": n, "generators": [[...], ...]}.
pub fn zonotope_from_json(v: &Value) -> Result<Zonotope> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("expected object".into()))?;
    let n = obj
        .get("ambient_dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing ambient_dim".into()))? as usize;
    let gens = obj
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing generators".into()))?;
    let mut out = Vec::with_capacity(gens.len());
    for row in gens {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse("generator must be an array".into()))?;
        if row.len() != n {
            return Err(Error::Parse("generator length != ambient_dim".into()));
        }
        let entries = row
            .iter()
            .map(|e| {
                e.as_i64()
                    .map(Int::from)
                    .ok_or_else(|| Error::Parse("generator entries must be integers".into()))
            })
            .collect::<Result<Vec<Int>>>()?;
        out.push(IntVector::new(entries));
    }
    Ok(Zonotope::new(n, out))
}

pub fn zonotope_to_json(z: &Zonotope) -> Value {
    serde_json::json!({
        "ambient_dim": z.ambient_dim(),
        "generators": z.generators().iter()
            .map(|g| g.entries().iter().map(|e| e.to_string().parse::<i64>().map(Value::from)
                .unwrap_or_else(|_| Value::from(e.to_string())))
                .collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytopes::count_lattice_points;
    use crate::ratio::{int, rat};

    #[test]
    fn vpolytope_conversion() {
        let sq = as_vpolytope(&Zonotope::cube(2)).unwrap();
        assert_eq!(count_lattice_points(&sq).unwrap(), int(4));

        let seg = as_vpolytope(&Zonotope::from_i64(2, &[&[1, 1]])).unwrap();
        assert_eq!(seg.vertices().len(), 2);

        let hex = as_vpolytope(&Zonotope::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(polytopes::hull_vertex_indices(&hex).len(), 6);

        let too_many = Zonotope::new(1, vec![IntVector::from_i64(&[1]); 17]);
        assert_eq!(as_vpolytope(&too_many), Err(Error::GeneratorCap));
    }

    #[test]
    fn volume_examples() {
        assert_eq!(zonotope_volume(&Zonotope::cube(3)), int(1));
        assert_eq!(
            zonotope_volume(&Zonotope::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]])),
            int(3)
        );
    }

    #[test]
    fn stanley_cube() {
        for n in 1..=4usize {
            let e = ehrhart_stanley(&Zonotope::cube(n)).unwrap();
            for i in 0..=n {
                assert_eq!(e.coeffs[i], Rat::from_integer(crate::ratio::binomial(n, i)));
            }
        }
    }

    #[test]
    fn stanley_examples() {
        let e = ehrhart_stanley(&Zonotope::from_i64(2, &[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(e.coeffs, vec![rat(1), rat(4), rat(4)]);

        // single generator (2,4): 2k+1 lattice points in the k-th dilate
        let e = ehrhart_stanley(&Zonotope::from_i64(2, &[&[2, 4]])).unwrap();
        assert_eq!(e.coeffs, vec![rat(1), rat(2)]);
    }

    #[test]
    fn geometric_matches_stanley() {
        let cases = vec![
            Zonotope::cube(3),
            Zonotope::from_i64(2, &[&[2, 0], &[0, 2]]),
            Zonotope::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]),
            Zonotope::from_i64(2, &[&[2, 2], &[3, 0], &[0, 1]]),
            Zonotope::from_i64(3, &[&[1, 0, 2], &[0, 3, 1], &[1, 1, 1], &[2, 0, 0]]),
        ];
        for z in cases {
            assert_eq!(
                ehrhart_stanley(&z).unwrap(),
                ehrhart_geometric(&z).unwrap()
            );
        }
    }

    #[test]
    fn formulas_match_counting() {
        let z = Zonotope::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        let s = ehrhart_stanley(&z).unwrap();
        let c = polytopes::ehrhart(&as_vpolytope(&z).unwrap()).unwrap();
        assert_eq!(s, c);
    }

    #[test]
    fn zero_generators_skipped() {
        let z = Zonotope::from_i64(2, &[&[1, 0], &[0, 0], &[0, 1]]);
        assert!(z.has_zero_generators());
        let e = ehrhart_stanley(&z).unwrap();
        assert_eq!(e.coeffs, vec![rat(1), rat(2), rat(1)]);
    }

    #[test]
    fn general_position_examples() {
        assert!(is_general_position(&Zonotope::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]])).unwrap());
        assert!(!is_general_position(&Zonotope::from_i64(2, &[&[1, 0], &[0, 1], &[2, 0]])).unwrap());
        // moment curve directions (1, t, t^2)
        let m = Zonotope::from_i64(3, &[&[1, 1, 1], &[1, 2, 4], &[1, 3, 9], &[1, 4, 16]]);
        assert!(is_general_position(&m).unwrap());
        assert!(is_general_position(&Zonotope::from_i64(2, &[&[1, 0]])).is_err());
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&IntVector::from_i64(&[1, 0, 0])).unwrap());
        assert!(!is_primitive(&IntVector::from_i64(&[2, 4])).unwrap());
        assert!(is_primitive(&IntVector::from_i64(&[6, 10, 15])).unwrap());
        assert_eq!(
            is_primitive(&IntVector::zero(2)),
            Err(Error::ZeroVector)
        );
    }

    fn units(n: usize) -> Vec<IntVector> {
        (0..n).map(|i| IntVector::unit(n, i)).collect()
    }

    #[test]
    fn bijection_standard_bases() {
        let b = units(3);
        let phi = basis_exchange_bijection(&b, &b, 1).unwrap();
        assert_eq!(phi.len(), 3);
        for (i_set, j_set) in &phi {
            let mut cols: Vec<IntVector> = i_set.iter().map(|&k| b[k].clone()).collect();
            cols.extend(j_set.iter().map(|&j| b[j].clone()));
            assert_eq!(linalg::rank(&IntMatrix::from_columns(&cols)), 3);
        }
    }

    #[test]
    fn bijection_mixed_bases() {
        let b = units(2);
        let a = vec![IntVector::from_i64(&[1, 1]), IntVector::from_i64(&[1, -1])];
        let phi = basis_exchange_bijection(&b, &a, 1).unwrap();
        for (i_set, j_set) in &phi {
            let mut cols: Vec<IntVector> = i_set.iter().map(|&k| b[k].clone()).collect();
            cols.extend(j_set.iter().map(|&j| a[j].clone()));
            assert_eq!(linalg::rank(&IntMatrix::from_columns(&cols)), 2);
        }
        // bijectivity: images are pairwise distinct
        assert_ne!(phi[0].1, phi[1].1);
    }

    #[test]
    fn bijection_rejects_dependent_family() {
        let b = vec![IntVector::from_i64(&[1, 0]), IntVector::from_i64(&[2, 0])];
        let a = units(2);
        assert_eq!(
            basis_exchange_bijection(&b, &a, 1),
            Err(Error::DependentColumns)
        );
    }

    #[test]
    fn registry_lookup() {
        assert!(ehrhart_method("stanley").is_some());
        assert!(ehrhart_method("geometric").is_some());
        assert!(ehrhart_method("counting").is_some());
        assert!(ehrhart_method("nope").is_none());
        let z = Zonotope::cube(2);
        for m in ehrhart_methods() {
            assert_eq!(
                m.compute(&z).unwrap().coeffs,
                vec![rat(1), rat(2), rat(1)]
            );
        }
    }

    #[test]
    fn zonotope_json_roundtrip() {
        let z = Zonotope::from_i64(2, &[&[1, 0], &[-3, 2]]);
        let j = zonotope_to_json(&z);
        assert_eq!(zonotope_from_json(&j).unwrap(), z);
        let bad: Value = serde_json::from_str(r#"{"ambient_dim": 2, "generators": [[1]]}"#).unwrap();
        assert!(zonotope_from_json(&bad).is_err());
    }
}
