//! Minkowski successive minima with witness vectors, section minima and the
//! two-sided Minkowski volume bounds.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, IntVector, LatticeBasis};
use crate::polytopes::{GaugeBody, DEFAULT_BOX_CAP};
use crate::ratio::{factorial, pow_int, rat_ceil, rat_floor, Int, Rat};

/// Successive minima λ_1 ≤ … ≤ λ_n together with linearly independent
/// witness vectors of exactly those gauges.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimaResult {
    pub lambdas: Vec<Rat>,
    pub witnesses: Vec<IntVector>,
}

fn sign_canonical(v: &[Int]) -> bool {
    v.iter()
        .find(|e| !e.is_zero())
        .map(|e| e.is_positive())
        .unwrap_or(false)
}

/// All nonzero sign-canonical primitive lattice vectors z with gauge(z) ≤ bound,
/// paired with their exact gauges. The scan fixes every coordinate but the
/// widest and resolves each column by two LPs.
pub fn enumerate_candidates(
    body: &dyn GaugeBody,
    bound: &Rat,
    cap: u64,
) -> Result<Vec<(Rat, IntVector)>> {
    let n = body.ambient_dim();
    let mut ranges = Vec::with_capacity(n);
    for i in 0..n {
        let hi = rat_floor(&(bound * body.support(&IntVector::unit(n, i))));
        let lo = -&hi; // 0-symmetric body
        ranges.push((lo, hi));
    }
    let mut volume = Int::one();
    for (l, h) in &ranges {
        volume *= h - l + 1;
    }
    if volume > Int::from(cap) {
        return Err(Error::CapExceeded(cap));
    }
    let widest = (0..n)
        .max_by_key(|&i| ranges[i].1.clone())
        .unwrap();
    let others: Vec<usize> = (0..n).filter(|&i| i != widest).collect();
    let mut cursor: Vec<Int> = others.iter().map(|&i| ranges[i].0.clone()).collect();
    let mut out = Vec::new();
    loop {
        let fixed: Vec<(usize, Rat)> = others
            .iter()
            .zip(&cursor)
            .map(|(&i, v)| (i, Rat::from_integer(v.clone())))
            .collect();
        if let Some((lo, hi)) = body.column_range(bound, &fixed, widest) {
            let l = rat_ceil(&lo);
            let h = rat_floor(&hi);
            let mut t = l;
            while t <= h {
                let mut entries: Vec<Int> = vec![Int::zero(); n];
                for (&i, v) in others.iter().zip(&cursor) {
                    entries[i] = v.clone();
                }
                entries[widest] = t.clone();
                t += 1;
                if !sign_canonical(&entries) {
                    continue;
                }
                let z = IntVector::new(entries);
                if !z.content().is_one() {
                    continue; // multiples of primitive vectors never improve
                }
                let g = body.gauge(&z)?;
                debug_assert!(g <= *bound);
                out.push((g, z));
            }
        }
        // advance odometer over the fixed coordinates
        let mut pos = others.len();
        loop {
            if pos == 0 {
                return Ok(out);
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
            return Ok(out);
        }
    }
}

fn sort_candidates(cands: &mut [(Rat, IntVector)]) {
    cands.sort_by(|(ga, va), (gb, vb)| ga.cmp(gb).then_with(|| va.entries().cmp(vb.entries())));
}

fn greedy_select(cands: &[(Rat, IntVector)], target: usize) -> (Vec<Rat>, Vec<IntVector>) {
    let mut lambdas = Vec::with_capacity(target);
    let mut witnesses: Vec<IntVector> = Vec::with_capacity(target);
    for (g, z) in cands {
        if witnesses.len() == target {
            break;
        }
        let mut trial = witnesses.clone();
        trial.push(z.clone());
        if linalg::rank(&IntMatrix::from_columns(&trial)) == trial.len() {
            witnesses.push(z.clone());
            lambdas.push(g.clone());
        }
    }
    (lambdas, witnesses)
}

/// Successive minima of a 0-symmetric full-dimensional gauge body with
/// respect to Z^n.
///
/// The enumeration bound B = max_i gauge(e_i) is valid because e_1..e_n are n
/// independent lattice vectors, so λ_n ≤ B. Candidates are scanned inside
/// B·K, sorted by (gauge, lexicographic), and selected greedily by linear
/// independence.
pub fn successive_minima(body: &dyn GaugeBody) -> Result<MinimaResult> {
    successive_minima_capped(body, DEFAULT_BOX_CAP)
}

pub fn successive_minima_capped(body: &dyn GaugeBody, cap: u64) -> Result<MinimaResult> {
    let n = body.ambient_dim();
    let bound = (0..n)
        .map(|i| body.gauge(&IntVector::unit(n, i)))
        .collect::<Result<Vec<Rat>>>()?
        .into_iter()
        .max()
        .expect("positive dimension");
    let mut cands = enumerate_candidates(body, &bound, cap)?;
    sort_candidates(&mut cands);
    let (lambdas, witnesses) = greedy_select(&cands, n);
    debug_assert_eq!(witnesses.len(), n);
    Ok(MinimaResult { lambdas, witnesses })
}

/// Successive minima of the section K ∩ span(L) with respect to the section
/// lattice, in coordinates of the (saturated) basis L. Witnesses are
/// coordinate vectors with respect to L.
pub fn successive_minima_section(
    body: &dyn GaugeBody,
    basis: &LatticeBasis,
) -> Result<MinimaResult> {
    if basis.dim() == 0 {
        return Ok(MinimaResult {
            lambdas: vec![],
            witnesses: vec![],
        });
    }
    if !basis.is_saturated() {
        return Err(Error::NotSaturated);
    }
    let k = basis.dim();
    let bound = basis
        .vectors()
        .iter()
        .map(|v| body.gauge(v))
        .collect::<Result<Vec<Rat>>>()?
        .into_iter()
        .max()
        .unwrap();
    let ambient = enumerate_candidates(body, &bound, DEFAULT_BOX_CAP)?;
    let mat = basis.matrix();
    let mut cands = Vec::new();
    for (g, z) in ambient {
        // z lies in the section lattice iff L c = z has an integer solution
        if let Some((c, _)) = linalg::solve_affine_lattice(&mat, &z) {
            cands.push((g, c));
        }
    }
    sort_candidates(&mut cands);
    let (lambdas, witnesses) = greedy_select(&cands, k);
    debug_assert_eq!(witnesses.len(), k);
    Ok(MinimaResult { lambdas, witnesses })
}

/// Two-sided Minkowski bound report: 2^n/n! ≤ λ_1⋯λ_n·vol(K) ≤ 2^n for
/// det Λ = det Z^n = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SandwichReport {
    pub lambdas: Vec<Rat>,
    pub product: Rat,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

pub fn minkowski_sandwich(body: &dyn GaugeBody, vol: &Rat) -> Result<SandwichReport> {
    let n = body.ambient_dim();
    let minima = successive_minima(body)?;
    let product = minima
        .lambdas
        .iter()
        .fold(vol.clone(), |acc, l| acc * l);
    let two_n = Rat::from_integer(pow_int(&Int::from(2), n));
    let lower = &two_n / Rat::from_integer(factorial(n));
    Ok(SandwichReport {
        lambdas: minima.lambdas,
        lower_ok: product >= lower,
        upper_ok: product <= two_n,
        product,
    })
}

/// Verification report for the section-minima inequality
/// ∏_{j≤i} λ_j(K∩L̄, Z^n∩L̄) ≥ ∏_{k ∉ excluded} λ_k(K).
#[derive(Clone, Debug, PartialEq)]
pub struct SectionLemmaReport {
    pub section_product: Rat,
    pub excluded_complement_product: Rat,
    pub holds: bool,
}

/// `excluded` holds 0-based indices into `minima.witnesses`; those witnesses
/// must span a complement meeting span(L) only at 0.
pub fn check_section_lemma(
    body: &dyn GaugeBody,
    minima: &MinimaResult,
    basis: &LatticeBasis,
    excluded: &[usize],
) -> Result<SectionLemmaReport> {
    let n = body.ambient_dim();
    let k = basis.dim();
    if excluded.len() != n - k {
        return Err(Error::Precondition(
            "excluded index count must be n - dim(L)".into(),
        ));
    }
    // transversality: excluded witnesses together with L must span R^n
    let mut cols: Vec<IntVector> = excluded
        .iter()
        .map(|&j| minima.witnesses[j].clone())
        .collect();
    cols.extend(basis.vectors().iter().cloned());
    if linalg::rank(&IntMatrix::from_columns(&cols)) < n {
        return Err(Error::SubspacesIntersect);
    }
    let section = successive_minima_section(body, basis)?;
    let section_product = section
        .lambdas
        .iter()
        .fold(Rat::one(), |acc, l| acc * l);
    let complement_product = (0..n)
        .filter(|j| !excluded.contains(j))
        .fold(Rat::one(), |acc, j| acc * &minima.lambdas[j]);
    Ok(SectionLemmaReport {
        holds: section_product >= complement_product,
        section_product,
        excluded_complement_product: complement_product,
    })
}
