//! Elementary symmetric bounds on Ehrhart coefficients, the floor-product
//! conjecture check, Davenport-constant estimates, and the Q^n_l family with
//! its closed-form coefficients.

use itertools::Itertools;
use num::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

use crate::minima::{self, MinimaResult};
use crate::polytopes::{self, EhrhartPoly, VPolytope};
use crate::ratio::{binomial, factorial, format_rat, pow_rat, rat_floor, Int, Rat};
use crate::zonotopes::{self, Zonotope};

/// i-th elementary symmetric polynomial of the values; σ_0 = 1.
pub fn sigma(values: &[Rat], i: usize) -> Result<Rat> {
    if i > values.len() {
        return Err(Error::Precondition(format!(
            "sigma index {i} exceeds {} arguments",
            values.len()
        )));
    }
    let mut total = Rat::zero();
    for subset in (0..values.len()).combinations(i) {
        let mut prod = Rat::one();
        for j in subset {
            prod *= &values[j];
        }
        total += prod;
    }
    Ok(total)
}

/// Reciprocal successive minima of the difference body, 1/λ_1 ≥ … ≥ 1/λ_n.
pub fn dp_reciprocals(p: &VPolytope) -> Result<Vec<Rat>> {
    let dp = polytopes::difference_gauge_view(p)?;
    let m = minima::successive_minima(&dp)?;
    Ok(m.lambdas.iter().map(|l| l.recip()).collect())
}

/// σ_i evaluated on the reciprocal minima of the difference body. The
/// convention uses DP itself, not ½DP: λ(½DK) = 2λ(DK), so the two choices
/// differ by a factor 2^i and this one is the one all bounds below assume.
pub fn sigma_of_polytope(p: &VPolytope, i: usize) -> Result<Rat> {
    sigma(&dp_reciprocals(p)?, i)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FloorBound {
    pub bound: Int,
    pub count: Int,
    pub holds: bool,
}

/// G(P) ≤ ∏ ⌊1/λ_i(DP) + 1⌋, both sides exact.
pub fn conjecture_floor_bound(p: &VPolytope) -> Result<FloorBound> {
    let recips = dp_reciprocals(p)?;
    let mut bound = Int::one();
    for r in &recips {
        bound *= rat_floor(&(r + Rat::one()));
    }
    let count = polytopes::count_lattice_points(p)?;
    let holds = count <= bound;
    Ok(FloorBound {
        bound,
        count,
        holds,
    })
}

/// L(P) = ∏ (1/λ_i(DP) + 1); equals Σ_i σ_i(P).
pub fn l_bound(p: &VPolytope) -> Result<Rat> {
    let mut prod = Rat::one();
    for r in dp_reciprocals(p)? {
        prod *= r + Rat::one();
    }
    Ok(prod)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundRow {
    pub i: usize,
    pub name: &'static str,
    pub g: Rat,
    pub bound: Rat,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub ehrhart: EhrhartPoly,
    pub minima: Vec<Rat>,
    pub rows: Vec<BoundRow>,
    pub floor: FloorBound,
    pub l_value: Rat,
}

/// Compares each g_i with σ_i(P). When the polytope is known as a zonotope
/// with m generators, three further bounds per index are reported:
/// (n!/i!)σ_i; the variant C(n,i)(n−i)^{(n−i)/2}σ_i, compared with both sides
/// squared so the irrational factor stays out of the arithmetic; and, in
/// general position, (C(m,i)/C(n,i))σ_i.
pub fn coefficient_report(p: &VPolytope, z: Option<&Zonotope>) -> Result<BoundReport> {
    let n = p.ambient_dim();
    if polytopes::affine_dim(p) != n {
        return Err(Error::LowerDimensional);
    }
    if !p.is_lattice() {
        return Err(Error::NotLatticePolytope);
    }
    let g = polytopes::ehrhart(p)?;
    let recips = dp_reciprocals(p)?;
    let lambdas: Vec<Rat> = recips.iter().map(|r| r.recip()).collect();
    let general = match z {
        Some(z) if z.generators().len() >= n => zonotopes::is_general_position(z)?,
        _ => false,
    };
    let mut rows = Vec::new();
    for i in 0..=n {
        let s = sigma(&recips, i)?;
        let gi = g.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
        rows.push(BoundRow {
            i,
            name: "sigma",
            g: gi.clone(),
            bound: s.clone(),
            holds: gi <= s,
        });
        if let Some(z) = z {
            let m = z.generators().len();
            let fact = Rat::from_integer(&factorial(n) / factorial(i));
            let b = &fact * &s;
            rows.push(BoundRow {
                i,
                name: "factorial",
                g: gi.clone(),
                bound: b.clone(),
                holds: gi <= b,
            });
            // g_i ≤ C(n,i)(n−i)^{(n−i)/2} σ_i, squared: g_i² ≤ C(n,i)²(n−i)^{n−i}σ_i²
            let c = Rat::from_integer(binomial(n, i));
            let sq_bound =
                &c * &c * Rat::from_integer(Int::from(n - i).pow((n - i) as u32)) * &s * &s;
            let g_sq = &gi * &gi;
            rows.push(BoundRow {
                i,
                name: "sqrt-variant-squared",
                g: g_sq.clone(),
                bound: sq_bound.clone(),
                holds: g_sq <= sq_bound,
            });
            if general && i <= m {
                let b = Rat::new(binomial(m, i), binomial(n, i)) * &s;
                rows.push(BoundRow {
                    i,
                    name: "general-position",
                    g: gi.clone(),
                    bound: b.clone(),
                    holds: gi <= b,
                });
            }
        }
    }
    Ok(BoundReport {
        ehrhart: g,
        minima: lambdas,
        rows,
        floor: conjecture_floor_bound(p)?,
        l_value: l_bound(p)?,
    })
}

/// For a zonotope with primitive generators in general position,
/// g_1(Z) = m and m ≤ σ_1(Z).
pub fn check_corollary_primitive(z: &Zonotope) -> Result<(usize, Rat, bool)> {
    for g in z.generators() {
        if !zonotopes::is_primitive(g)? {
            return Err(Error::Precondition(
                "generators must be primitive".into(),
            ));
        }
    }
    if !zonotopes::is_general_position(z)? {
        return Err(Error::Precondition(
            "generators must be in general position".into(),
        ));
    }
    let m = z.generators().len();
    let p = zonotopes::as_vpolytope(z)?;
    let s1 = sigma_of_polytope(&p, 1)?;
    let holds = Rat::from_integer(Int::from(m)) <= s1;
    Ok((m, s1, holds))
}

fn is_prime_power(k: u64) -> bool {
    if k < 2 {
        return false;
    }
    let mut k = k;
    let mut p = 0;
    for d in 2..=k {
        if d * d > k {
            break;
        }
        if k % d == 0 {
            p = d;
            break;
        }
    }
    if p == 0 {
        return true; // k itself prime
    }
    while k % p == 0 {
        k /= p;
    }
    k == 1
}

/// s(Z^n_k) = n(k−1)+1; the formula is proven only for prime powers k.
pub fn davenport_prime_power(n: u64, k: u64) -> Result<u64> {
    if !is_prime_power(k) {
        return Err(Error::NotPrimePower);
    }
    Ok(n * (k - 1) + 1)
}

/// Smallest d such that every length-d sequence over Z^n_k has a nonempty
/// zero-sum subsequence; exhaustive search, desk scale only.
pub fn davenport_brute_force(n: u32, k: u64) -> u64 {
    let group: Vec<Vec<u64>> = (0..k.pow(n))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let e = code % k;
                    code /= k;
                    e
                })
                .collect()
        })
        .collect();
    let has_zero_sum = |seq: &[usize]| -> bool {
        for mask in 1u32..1 << seq.len() {
            let mut sum = vec![0u64; n as usize];
            for (i, &gidx) in seq.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for (s, e) in sum.iter_mut().zip(&group[gidx]) {
                        *s = (*s + e) % k;
                    }
                }
            }
            if sum.iter().all(|&s| s == 0) {
                return true;
            }
        }
        false
    };
    let mut d = 1u64;
    loop {
        // multisets suffice: zero-sum subsequences ignore order
        let all_covered = (0..group.len())
            .combinations_with_replacement(d as usize)
            .all(|seq| has_zero_sum(&seq));
        if all_covered {
            return d;
        }
        d += 1;
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DavenportReport {
    pub m: usize,
    pub lambda_1: Rat,
    pub bound: Rat,
    pub holds: bool,
}

/// For a zonotope with m primitive generators and a prime power k with
/// n(k−1)+1 ≤ m ≤ kn: verifies m ≤ n/λ_1(DZ).
pub fn check_davenport_prop(z: &Zonotope, k: u64) -> Result<DavenportReport> {
    let n = z.ambient_dim() as u64;
    let m = z.generators().len() as u64;
    if !is_prime_power(k) {
        return Err(Error::NotPrimePower);
    }
    for g in z.generators() {
        if !zonotopes::is_primitive(g)? {
            return Err(Error::Precondition(
                "generators must be primitive".into(),
            ));
        }
    }
    if m < n * (k - 1) + 1 || m > k * n {
        return Err(Error::Precondition(format!(
            "generator count {m} outside [n(k-1)+1, kn] = [{}, {}]",
            n * (k - 1) + 1,
            k * n
        )));
    }
    let p = zonotopes::as_vpolytope(z)?;
    let dz = polytopes::difference_gauge_view(&p)?;
    let minima = minima::successive_minima(&dz)?;
    let lambda_1 = minima.lambdas[0].clone();
    let bound = Rat::from_integer(Int::from(n)) / &lambda_1;
    let holds = Rat::from_integer(Int::from(m)) <= bound;
    Ok(DavenportReport {
        m: m as usize,
        lambda_1,
        bound,
        holds,
    })
}

// ---------------------------------------------------------------------------
// The Q^n_l family

#[derive(Clone, Debug, PartialEq)]
pub struct QFamilyInstance {
    pub n: usize,
    pub l: u64,
    pub polytope: VPolytope,
}

/// conv of {±l}^{n−1} × {0} together with ±e_n; 2^{n−1} + 2 vertices.
pub fn q_family(n: usize, l: u64) -> Result<QFamilyInstance> {
    if n < 2 || l < 1 {
        return Err(Error::Precondition("need n >= 2 and l >= 1".into()));
    }
    let li = Int::from(l);
    let mut verts = Vec::with_capacity((1 << (n - 1)) + 2);
    for mask in 0..1u32 << (n - 1) {
        let mut v: Vec<Rat> = (0..n - 1)
            .map(|i| {
                let s = if mask >> i & 1 == 1 { -&li } else { li.clone() };
                Rat::from_integer(s)
            })
            .collect();
        v.push(Rat::zero());
        verts.push(v);
    }
    for s in [1i64, -1] {
        let mut v = vec![Rat::zero(); n];
        v[n - 1] = Rat::from_integer(Int::from(s));
        verts.push(v);
    }
    Ok(QFamilyInstance {
        n,
        l,
        polytope: VPolytope::new(n, verts),
    })
}

/// σ_i(Q^n_l) = C(n−1,i)(2l)^i + 2C(n−1,i−1)(2l)^{i−1}.
pub fn sigma_q_closed(n: usize, l: u64, i: usize) -> Rat {
    let two_l = Rat::from_integer(Int::from(2 * l));
    let first = Rat::from_integer(binomial(n - 1, i)) * pow_rat(&two_l, i as usize);
    let second = if i == 0 {
        Rat::zero()
    } else {
        Rat::from_integer(Int::from(2) * binomial(n - 1, i - 1)) * pow_rat(&two_l, (i - 1) as usize)
    };
    first + second
}

// ---------------------------------------------------------------------------
// Bernoulli numbers and Faulhaber's formula

/// Bernoulli number B_m under the B_1 = +1/2 convention. Computed by the
/// standard recurrence (which yields B_1 = −1/2) and sign-flipped at m = 1;
/// all other values agree between the conventions.
pub fn bernoulli(m: usize) -> Rat {
    let mut b: Vec<Rat> = Vec::with_capacity(m + 1);
    for i in 0..=m {
        if i == 0 {
            b.push(Rat::one());
            continue;
        }
        let mut acc = Rat::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rat::from_integer(binomial(i + 1, j)) * bj;
        }
        b.push(-acc / Rat::from_integer(Int::from(i as i64 + 1)));
    }
    if m == 1 {
        -b[1].clone()
    } else {
        b[m].clone()
    }
}

/// P(i,j) = Σ_{t=i}^{j+1} ((−1)^{t−i} C(j+1,t) C(t,i) / (j+1)) B_{j+1−t},
/// with the B_1 = +1/2 convention.
pub fn p_coeff(i: usize, j: usize) -> Result<Rat> {
    if i > j + 1 {
        return Err(Error::Precondition(format!(
            "p_coeff requires i <= j+1, got ({i}, {j})"
        )));
    }
    let mut total = Rat::zero();
    for t in i..=j + 1 {
        let sign = if (t - i) % 2 == 0 { 1 } else { -1 };
        let term = Rat::new(
            Int::from(sign) * binomial(j + 1, t) * binomial(t, i),
            Int::from(j as i64 + 1),
        ) * bernoulli(j + 1 - t);
        total += term;
    }
    Ok(total)
}

/// Coefficients c_0..c_{i+1} with Σ_{j=0}^{k−1} j^i = Σ_d c_d k^d.
pub fn faulhaber_sum(i: usize) -> Vec<Rat> {
    let mut coeffs = vec![Rat::zero(); i + 2];
    for t in 0..=i {
        // B_t under the standard (B_1 = −1/2) convention
        let bt = if t == 1 { -bernoulli(1) } else { bernoulli(t) };
        coeffs[i + 1 - t] +=
            Rat::from_integer(binomial(i + 1, t)) * bt / Rat::from_integer(Int::from(i as i64 + 1));
    }
    coeffs
}

/// Closed-form Ehrhart coefficients of Q^n_l:
/// g_i = 2(2l)^{i−1}(C(n−1,i)l + Σ_{j=i−1}^{n−1} P(i,j)C(n−1,j)(2l)^{j−i+1}).
pub fn q_family_ehrhart_closed(n: usize, l: u64) -> Result<EhrhartPoly> {
    if n < 2 || l < 1 {
        return Err(Error::Precondition("need n >= 2 and l >= 1".into()));
    }
    let two_l = Rat::from_integer(Int::from(2 * l));
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[0] = Rat::one();
    for i in 1..=n {
        let mut inner = Rat::from_integer(binomial(n - 1, i) * Int::from(l));
        for j in i - 1..=n - 1 {
            inner += p_coeff(i, j)?
                * Rat::from_integer(binomial(n - 1, j))
                * pow_rat(&two_l, j + 1 - i);
        }
        coeffs[i] = Rat::from_integer(Int::from(2)) * pow_rat(&two_l, i - 1) * inner;
    }
    Ok(EhrhartPoly { coeffs })
}

/// Smallest l ≤ l_max with g_i(Q^n_l) > c·σ_i(Q^n_l), via the closed forms.
/// Only the indices i = n−2 and i = n−3 are supported.
pub fn find_violation(n: usize, i: usize, c: &Rat, l_max: u64) -> Result<Option<u64>> {
    let supported = (n >= 3 && i == n - 2) || (n >= 4 && i == n - 3);
    if !supported {
        return Err(Error::Precondition(format!(
            "index {i} not in {{n-2, n-3}} for n = {n}"
        )));
    }
    if c <= &Rat::zero() {
        return Err(Error::Precondition("factor must be positive".into()));
    }
    for l in 1..=l_max {
        let g = q_family_ehrhart_closed(n, l)?.coeffs[i].clone();
        if g > c * sigma_q_closed(n, l, i) {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Report serialization

pub fn minima_to_json(m: &MinimaResult) -> Value {
    serde_json::json!({
        "lambdas": m.lambdas.iter().map(format_rat).collect::<Vec<_>>(),
        "witnesses": m.witnesses.iter()
            .map(|w| w.entries().iter().map(|e| e.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn bound_report_to_json(p: &VPolytope, r: &BoundReport) -> Value {
    serde_json::json!({
        "polytope": polytopes::polytope_to_json(p),
        "ehrhart": r.ehrhart.coeffs.iter().map(format_rat).collect::<Vec<_>>(),
        "minima": r.minima.iter().map(format_rat).collect::<Vec<_>>(),
        "bounds": r.rows.iter().map(|row| serde_json::json!({
            "i": row.i,
            "name": row.name,
            "g": format_rat(&row.g),
            "bound": format_rat(&row.bound),
            "holds": row.holds,
        })).collect::<Vec<_>>(),
        "floor_bound": r.floor.bound.to_string(),
        "count": r.floor.count.to_string(),
        "floor_holds": r.floor.holds,
        "l_value": format_rat(&r.l_value),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{int, rat, rat_frac};

    #[test]
    fn sigma_basics() {
        assert_eq!(sigma(&[rat(7), rat(9)], 0).unwrap(), rat(1));
        assert_eq!(sigma(&[rat(1), rat(1), rat(1)], 2).unwrap(), rat(3));
        assert_eq!(
            sigma(&[rat(4), rat(4), rat(2)], 1).unwrap(),
            rat(10)
        );
        assert!(sigma(&[rat(1)], 2).is_err());
    }

    #[test]
    fn sigma_of_cube_is_binomial() {
        let cube = VPolytope::unit_cube(3);
        for i in 0..=3 {
            assert_eq!(
                sigma_of_polytope(&cube, i).unwrap(),
                Rat::from_integer(binomial(3, i))
            );
        }
    }

    #[test]
    fn sigma_q_closed_matches_minima_route() {
        for (n, l) in [(2usize, 1u64), (2, 2), (3, 1), (3, 2)] {
            let q = q_family(n, l).unwrap();
            for i in 0..=n {
                assert_eq!(
                    sigma_of_polytope(&q.polytope, i).unwrap(),
                    sigma_q_closed(n, l, i),
                    "n={n} l={l} i={i}"
                );
            }
        }
    }

    #[test]
    fn sigma_n_dominates_volume() {
        for p in [
            VPolytope::unit_cube(2),
            q_family(2, 2).unwrap().polytope,
            VPolytope::from_i64(2, &[&[0, 0], &[2, 1], &[1, 3]]),
        ] {
            let vol = polytopes::volume(&p).unwrap();
            assert!(sigma_of_polytope(&p, 2).unwrap() >= vol);
        }
    }

    #[test]
    fn floor_bound_examples() {
        let r = conjecture_floor_bound(&VPolytope::unit_cube(3)).unwrap();
        assert_eq!((r.bound, r.count, r.holds), (int(8), int(8), true));

        let r = conjecture_floor_bound(&VPolytope::centered_cube(2, 1)).unwrap();
        assert_eq!((r.bound, r.count, r.holds), (int(9), int(9), true));

        let q = q_family(3, 2).unwrap();
        let r = conjecture_floor_bound(&q.polytope).unwrap();
        assert_eq!(r.bound, int(75));
        // 25 points on the square slice at height 0 plus the two apexes
        assert_eq!(r.count, int(27));
        assert!(r.holds);
    }

    #[test]
    fn l_bound_examples() {
        assert_eq!(l_bound(&VPolytope::unit_cube(3)).unwrap(), rat(8));
        // L(P) = Σ σ_i(P)
        for p in [VPolytope::unit_cube(2), q_family(3, 1).unwrap().polytope] {
            let n = p.ambient_dim();
            let mut s = Rat::zero();
            for i in 0..=n {
                s += sigma_of_polytope(&p, i).unwrap();
            }
            assert_eq!(l_bound(&p).unwrap(), s);
        }
        // L(kQ^3_l) = 8l²k³ + (4l²+8l)k² + (4l+2)k + 1 at l=1, k=1: 8+12+6+1
        let q = q_family(3, 1).unwrap();
        assert_eq!(l_bound(&q.polytope).unwrap(), rat(27));
    }

    #[test]
    fn coefficient_report_cube_equalities() {
        let z = Zonotope::cube(2);
        let p = zonotopes::as_vpolytope(&z).unwrap();
        let r = coefficient_report(&p, Some(&z)).unwrap();
        for row in r.rows.iter().filter(|r| r.name == "sigma") {
            assert_eq!(row.g, row.bound);
            assert!(row.holds);
        }
        assert!(r.floor.holds);
    }

    #[test]
    fn coefficient_report_parallelepiped() {
        let z = Zonotope::from_i64(2, &[&[1, 0], &[1, 2]]);
        let p = zonotopes::as_vpolytope(&z).unwrap();
        let r = coefficient_report(&p, Some(&z)).unwrap();
        assert!(r.rows.iter().filter(|r| r.name == "sigma").all(|r| r.holds));
    }

    #[test]
    fn corollary_primitive_examples() {
        let z = Zonotope::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        let (m, s1, holds) = check_corollary_primitive(&z).unwrap();
        assert_eq!(m, 3);
        assert!(holds, "3 <= {s1}");

        let cube = Zonotope::cube(3);
        let (m, s1, _) = check_corollary_primitive(&cube).unwrap();
        assert_eq!(Rat::from_integer(Int::from(m)), s1);

        let z = Zonotope::from_i64(2, &[&[1, 0], &[0, 1], &[1, 2], &[2, 1]]);
        assert!(check_corollary_primitive(&z).unwrap().2);

        let imprimitive = Zonotope::from_i64(2, &[&[2, 0], &[0, 1], &[1, 1]]);
        assert!(check_corollary_primitive(&imprimitive).is_err());
    }

    #[test]
    fn prime_powers() {
        for k in [2u64, 3, 4, 5, 8, 9, 27, 32] {
            assert!(is_prime_power(k), "{k}");
        }
        for k in [1u64, 6, 10, 12, 15] {
            assert!(!is_prime_power(k), "{k}");
        }
    }

    #[test]
    fn davenport_formula_and_oracle() {
        assert_eq!(davenport_prime_power(1, 2).unwrap(), 2);
        assert_eq!(davenport_prime_power(2, 3).unwrap(), 5);
        assert_eq!(davenport_prime_power(2, 6), Err(Error::NotPrimePower));

        assert_eq!(davenport_brute_force(1, 2), 2);
        assert_eq!(davenport_brute_force(1, 3), 3);
        assert_eq!(davenport_brute_force(2, 2), 3);
    }

    #[test]
    fn davenport_prop_examples() {
        let z = Zonotope::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        let r = check_davenport_prop(&z, 2).unwrap();
        assert!(r.holds, "{} <= {}", r.m, r.bound);

        let z4 = Zonotope::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]);
        let r = check_davenport_prop(&z4, 2).unwrap();
        // (3,0) = (1,0) + (1,1) + (1,-1) lies in DZ
        assert_eq!(r.lambda_1, rat_frac(1, 3));
        assert!(r.holds);

        assert!(check_davenport_prop(&Zonotope::cube(2), 2).is_err()); // m = 2 < 3
    }

    #[test]
    fn q_family_shape() {
        let q = q_family(2, 1).unwrap();
        assert_eq!(q.polytope.vertices().len(), 4);
        let q = q_family(3, 2).unwrap();
        // 2^{n-1} box corners plus the two apexes
        assert_eq!(q.polytope.vertices().len(), 6);
        assert!(q_family(1, 1).is_err());
        assert!(q_family(2, 0).is_err());
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), rat(1));
        assert_eq!(bernoulli(1), rat_frac(1, 2));
        assert_eq!(bernoulli(2), rat_frac(1, 6));
        assert_eq!(bernoulli(3), rat(0));
        assert_eq!(bernoulli(4), rat_frac(-1, 30));
        assert_eq!(bernoulli(6), rat_frac(1, 42));
    }

    #[test]
    fn p_coeff_anchors() {
        for n in 3..=6usize {
            assert_eq!(p_coeff(n, n - 1).unwrap(), rat_frac(1, n as i64), "P(n,n-1)");
            assert_eq!(p_coeff(n, n).unwrap(), rat_frac(-1, 2), "P(n,n)");
            assert_eq!(
                p_coeff(n - 1, n).unwrap(),
                rat_frac(n as i64, 12),
                "P(n-1,n)"
            );
            assert_eq!(p_coeff(n - 2, n).unwrap(), rat(0), "P(n-2,n)");
        }
        assert!(p_coeff(4, 2).is_err());
    }

    #[test]
    fn faulhaber_matches_brute_force() {
        for i in 0..=6usize {
            let coeffs = faulhaber_sum(i);
            for k in 0..=20i64 {
                let brute: Rat = (0..k)
                    .map(|j| pow_rat(&rat(j), i as usize))
                    .fold(Rat::zero(), |a, b| a + b);
                let eval = crate::linalg::eval_polynomial(&coeffs, &rat(k));
                assert_eq!(eval, brute, "i={i} k={k}");
            }
        }
    }

    #[test]
    fn q_closed_form_n3() {
        for l in 1..=3u64 {
            let e = q_family_ehrhart_closed(3, l).unwrap();
            let l2 = rat((l * l) as i64);
            assert_eq!(e.coeffs[0], rat(1));
            assert_eq!(e.coeffs[1], rat_frac(4, 3) * &l2 + rat(2));
            assert_eq!(e.coeffs[2], rat(4 * l as i64));
            assert_eq!(e.coeffs[3], rat_frac(8, 3) * &l2);
        }
    }

    #[test]
    fn q_closed_form_displayed_coefficients() {
        for n in 3..=5usize {
            for l in 1..=2u64 {
                let e = q_family_ehrhart_closed(n, l).unwrap();
                let two_l = rat(2 * l as i64);
                let expect_n2 = rat((n as i64) - 1)
                    * pow_rat(&two_l, (n - 3) as usize)
                    * (rat_frac(2, 3) * rat((l * l) as i64) + rat(1));
                assert_eq!(e.coeffs[n - 2], expect_n2, "g_(n-2), n={n} l={l}");
                if n >= 4 {
                    let expect_n3 = rat_frac(2, 3)
                        * Rat::from_integer(binomial(n - 1, 2))
                        * pow_rat(&two_l, (n - 4) as usize)
                        * (rat(2 * (l * l) as i64) + rat(1));
                    assert_eq!(e.coeffs[n - 3], expect_n3, "g_(n-3), n={n} l={l}");
                }
            }
        }
    }

    #[test]
    fn q_closed_form_matches_interpolation_small() {
        for (n, l) in [(2usize, 1u64), (2, 2), (3, 1)] {
            let closed = q_family_ehrhart_closed(n, l).unwrap();
            let counted = polytopes::ehrhart(&q_family(n, l).unwrap().polytope).unwrap();
            assert_eq!(closed, counted, "n={n} l={l}");
        }
    }

    #[test]
    fn violation_search() {
        assert_eq!(find_violation(3, 1, &rat(1), 10).unwrap(), Some(4));
        // l = 3 is exact equality: g_1 = 14 = σ_1
        let g = q_family_ehrhart_closed(3, 3).unwrap().coeffs[1].clone();
        assert_eq!(g, sigma_q_closed(3, 3, 1));
        assert_eq!(find_violation(3, 1, &rat(10), 40).unwrap(), Some(31));
        assert_eq!(find_violation(3, 1, &rat(10), 20).unwrap(), None);
        assert!(find_violation(4, 1, &rat(1), 20).unwrap().is_some());
        assert!(find_violation(3, 0, &rat(1), 5).is_err());
        assert!(find_violation(2, 0, &rat(1), 5).is_err());
    }

    #[test]
    fn degree_in_l_comparison() {
        // g_{n-2} grows faster in l than σ_{n-2}: compare ratios at two large l
        for n in 3..=5usize {
            let i = n - 2;
            let at = |l: u64| {
                let g = q_family_ehrhart_closed(n, l).unwrap().coeffs[i].clone();
                g / sigma_q_closed(n, l, i)
            };
            assert!(at(1000) > at(100));
        }
    }

    #[test]
    fn report_json_shape() {
        let p = VPolytope::unit_cube(2);
        let r = coefficient_report(&p, None).unwrap();
        let j = bound_report_to_json(&p, &r);
        assert_eq!(j["ehrhart"][0], Value::from("1"));
        assert_eq!(j["floor_holds"], Value::from(true));
        assert!(j["bounds"].as_array().unwrap().len() >= 3);
    }
}
