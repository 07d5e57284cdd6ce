//! Exact integer and rational linear algebra: ranks, minors, normal forms,
//! sublattice indices, Diophantine solving and polynomial interpolation.

use itertools::Itertools;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratio::{Int, Rat};

/// A fixed-length vector of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntVector(Vec<Int>);

impl IntVector {
    pub fn new(entries: Vec<Int>) -> Self {
        assert!(!entries.is_empty(), "empty vector");
        IntVector(entries)
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Self::new(entries.iter().map(|&e| Int::from(e)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![Int::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![Int::zero(); dim];
        v[i] = Int::one();
        Self::new(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Int] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    pub fn dot(&self, other: &IntVector) -> Int {
        assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|e| -e).collect())
    }

    pub fn scaled(&self, c: &Int) -> IntVector {
        IntVector(self.0.iter().map(|e| e * c).collect())
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        assert_eq!(self.dim(), other.dim());
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// gcd of the entries (0 for the zero vector).
    pub fn content(&self) -> Int {
        self.0
            .iter()
            .fold(Int::zero(), |acc, e| acc.gcd(&e.clone()))
    }

    pub fn to_rat(&self) -> Vec<Rat> {
        self.0.iter().map(|e| Rat::from_integer(e.clone())).collect()
    }
}

impl std::ops::Index<usize> for IntVector {
    type Output = Int;
    fn index(&self, i: usize) -> &Int {
        &self.0[i]
    }
}

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Int>) -> Self {
        assert_eq!(rows * cols, data.len());
        IntMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Int::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Int::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        Self::new(rows, cols, data.iter().map(|&e| Int::from(e)).collect())
    }

    pub fn from_columns(cols: &[IntVector]) -> Self {
        assert!(!cols.is_empty());
        let rows = cols[0].dim();
        let mut m = Self::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.dim(), rows);
            for i in 0..rows {
                *m.at_mut(i, j) = c[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector::new((0..self.rows).map(|i| self.at(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<IntVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut m = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = Int::zero();
                for k in 0..self.cols {
                    s += self.at(i, k) * other.at(k, j);
                }
                *m.at_mut(i, j) = s;
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &IntVector) -> IntVector {
        assert_eq!(self.cols, v.dim());
        IntVector::new(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
                .collect(),
        )
    }

    fn submatrix_rows(&self, row_idx: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zero(row_idx.len(), self.cols);
        for (i, &r) in row_idx.iter().enumerate() {
            for j in 0..self.cols {
                *m.at_mut(i, j) = self.at(r, j).clone();
            }
        }
        m
    }

    fn swap_columns(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// col_a += q * col_b
    fn add_col_multiple(&mut self, a: usize, b: usize, q: &Int) {
        for i in 0..self.rows {
            let add = self.at(i, b) * q;
            *self.at_mut(i, a) += add;
        }
    }

    fn negate_column(&mut self, a: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, a).clone();
            *self.at_mut(i, a) = v;
        }
    }
}

/// Rank over the rationals, by fraction-free (Bareiss) elimination.
pub fn rank(m: &IntMatrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut prev = Int::one();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        // pivot search
        let Some(pr) = (pivot_row..rows).find(|&r| !a.at(r, col).is_zero()) else {
            continue;
        };
        if pr != pivot_row {
            for j in 0..cols {
                a.data.swap(pr * cols + j, pivot_row * cols + j);
            }
        }
        let piv = a.at(pivot_row, col).clone();
        for r in pivot_row + 1..rows {
            for j in col + 1..cols {
                let v = (&piv * a.at(r, j) - a.at(r, col) * a.at(pivot_row, j)) / &prev;
                *a.at_mut(r, j) = v;
            }
            *a.at_mut(r, col) = Int::zero();
        }
        prev = piv;
        pivot_row += 1;
    }
    pivot_row
}

/// Determinant of a square matrix (Bareiss).
pub fn determinant(m: &IntMatrix) -> Int {
    assert_eq!(m.rows, m.cols, "determinant of non-square matrix");
    let n = m.rows;
    if n == 0 {
        return Int::one();
    }
    let mut a = m.clone();
    let mut prev = Int::one();
    let mut sign = Int::one();
    for k in 0..n - 1 {
        if a.at(k, k).is_zero() {
            let Some(pr) = (k + 1..n).find(|&r| !a.at(r, k).is_zero()) else {
                return Int::zero();
            };
            for j in 0..n {
                a.data.swap(pr * n + j, k * n + j);
            }
            sign = -sign;
        }
        let piv = a.at(k, k).clone();
        for r in k + 1..n {
            for j in k + 1..n {
                let v = (&piv * a.at(r, j) - a.at(r, k) * a.at(k, j)) / &prev;
                *a.at_mut(r, j) = v;
            }
            *a.at_mut(r, k) = Int::zero();
        }
        prev = piv;
    }
    sign * a.at(n - 1, n - 1).clone()
}

/// gcd over all i×i minors of an n×i matrix with independent columns.
///
/// Row subsets are scanned in lexicographic order with early exit once the
/// running gcd reaches 1.
pub fn gcd_of_minors(m: &IntMatrix) -> Result<Int> {
    let i = m.cols;
    if rank(m) < i {
        return Err(Error::DependentColumns);
    }
    let mut g = Int::zero();
    for rows in (0..m.rows).combinations(i) {
        let d = determinant(&m.submatrix_rows(&rows));
        g = g.gcd(&d);
        if g.is_one() {
            return Ok(g);
        }
    }
    Ok(g)
}

/// Column Hermite normal form: returns (H, U) with H = M·U and U unimodular.
///
/// Pivots are positive; in a pivot row, entries in columns left of the pivot
/// lie in [0, pivot) and entries right of it are zero.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.cols);
    let cols = m.cols;
    let mut pc = 0usize; // next pivot column
    for r in 0..m.rows {
        if pc >= cols {
            break;
        }
        // gcd-combine columns pc.. so only column pc has a nonzero entry in row r
        loop {
            let mut idx: Option<usize> = None;
            for j in pc..cols {
                if !h.at(r, j).is_zero()
                    && (idx.is_none() || h.at(r, j).abs() < h.at(r, idx.unwrap()).abs())
                {
                    idx = Some(j);
                }
            }
            let Some(jmin) = idx else {
                break;
            };
            if jmin != pc {
                h.swap_columns(pc, jmin);
                u.swap_columns(pc, jmin);
            }
            let piv = h.at(r, pc).clone();
            let mut done = true;
            for j in pc + 1..cols {
                if !h.at(r, j).is_zero() {
                    let q = -h.at(r, j).div_floor(&piv);
                    h.add_col_multiple(j, pc, &q);
                    u.add_col_multiple(j, pc, &q);
                    if !h.at(r, j).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h.at(r, pc).is_zero() {
            continue; // row has no pivot
        }
        if h.at(r, pc).is_negative() {
            h.negate_column(pc);
            u.negate_column(pc);
        }
        let piv = h.at(r, pc).clone();
        for j in 0..pc {
            let q = -h.at(r, j).div_floor(&piv);
            if !q.is_zero() {
                h.add_col_multiple(j, pc, &q);
                u.add_col_multiple(j, pc, &q);
            }
        }
        pc += 1;
    }
    (h, u)
}

/// Basis of the integer kernel {x in Z^k : M x = 0}; the result is saturated.
pub fn integer_kernel(m: &IntMatrix) -> Vec<IntVector> {
    let (h, u) = hermite_normal_form(m);
    let mut ker = Vec::new();
    for j in 0..h.cols {
        if (0..h.rows).all(|i| h.at(i, j).is_zero()) {
            ker.push(u.column(j));
        }
    }
    ker
}

/// Invariant factors d_1 | d_2 | ... of the Smith normal form (nonzero only).
pub fn smith_invariants(m: &IntMatrix) -> Vec<Int> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut t = 0usize;
    let mut inv = Vec::new();
    'outer: while t < rows.min(cols) {
        // find nonzero entry of minimal absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a.at(i, j).is_zero()
                    && (best.is_none()
                        || a.at(i, j).abs() < a.at(best.unwrap().0, best.unwrap().1).abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else {
            break;
        };
        // move pivot to (t, t)
        if bi != t {
            for j in 0..cols {
                a.data.swap(bi * cols + j, t * cols + j);
            }
        }
        if bj != t {
            a.swap_columns(bj, t);
        }
        // clear row and column t
        loop {
            let piv = a.at(t, t).clone();
            let mut reduced = false;
            for i in t + 1..rows {
                if !a.at(i, t).is_zero() {
                    let q = a.at(i, t).div_floor(&piv);
                    for j in t..cols {
                        let sub = &q * a.at(t, j);
                        *a.at_mut(i, j) -= sub;
                    }
                    if !a.at(i, t).is_zero() {
                        // remainder smaller than pivot: swap rows and restart
                        for j in 0..cols {
                            a.data.swap(i * cols + j, t * cols + j);
                        }
                        reduced = true;
                        break;
                    }
                }
            }
            if reduced {
                continue;
            }
            for j in t + 1..cols {
                if !a.at(t, j).is_zero() {
                    let q = a.at(t, j).div_floor(&piv);
                    for i in t..rows {
                        let sub = &q * a.at(i, t);
                        *a.at_mut(i, j) -= sub;
                    }
                    if !a.at(t, j).is_zero() {
                        a.swap_columns(j, t);
                        reduced = true;
                        break;
                    }
                }
            }
            if !reduced {
                break;
            }
        }
        // divisibility: pivot must divide every entry of the trailing block
        let piv = a.at(t, t).clone();
        for i in t + 1..rows {
            for j in t + 1..cols {
                if !(a.at(i, j) % &piv).is_zero() {
                    // add row i to row t and redo this pivot
                    for jj in 0..cols {
                        let add = a.at(i, jj).clone();
                        *a.at_mut(t, jj) += add;
                    }
                    continue 'outer;
                }
            }
        }
        inv.push(piv.abs());
        t += 1;
    }
    inv
}

/// A basis of k independent integer vectors in an n-dimensional ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    ambient_dim: usize,
    vectors: Vec<IntVector>,
}

impl LatticeBasis {
    pub fn new(ambient_dim: usize, vectors: Vec<IntVector>) -> Result<Self> {
        if vectors.is_empty() {
            return Ok(LatticeBasis {
                ambient_dim,
                vectors,
            });
        }
        for v in &vectors {
            if v.dim() != ambient_dim {
                return Err(Error::DimensionMismatch(
                    "basis vector dimension".to_string(),
                ));
            }
        }
        let m = IntMatrix::from_columns(&vectors);
        if rank(&m) < vectors.len() {
            return Err(Error::DependentColumns);
        }
        Ok(LatticeBasis {
            ambient_dim,
            vectors,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[IntVector] {
        &self.vectors
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(&self.vectors)
    }

    /// True iff the vectors form a basis of span ∩ Z^n.
    pub fn is_saturated(&self) -> bool {
        if self.vectors.is_empty() {
            return true;
        }
        smith_invariants(&self.matrix()).iter().all(|d| d.is_one())
    }
}

/// Basis of span(L) ∩ Z^n. Dependent or zero inputs are allowed; the empty
/// input yields a zero-dimensional basis.
pub fn saturate(ambient_dim: usize, vectors: &[IntVector]) -> Result<LatticeBasis> {
    let nonzero: Vec<IntVector> = vectors.iter().filter(|v| !v.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return LatticeBasis::new(ambient_dim, vec![]);
    }
    let m = IntMatrix::from_columns(&nonzero);
    // orthogonal-complement lattice W = {w : w^T v = 0 for all v}
    let w = integer_kernel(&m.transpose());
    if w.is_empty() {
        // spans everything: the saturation is Z^n
        return LatticeBasis::new(
            ambient_dim,
            (0..ambient_dim)
                .map(|i| IntVector::unit(ambient_dim, i))
                .collect(),
        );
    }
    let wt = IntMatrix::from_columns(&w).transpose();
    LatticeBasis::new(ambient_dim, integer_kernel(&wt))
}

/// Index of the lattice generated by the columns of `v` inside its saturation;
/// the product of the Smith invariant factors.
pub fn sublattice_index(v: &IntMatrix) -> Result<Int> {
    if rank(v) < v.cols() {
        return Err(Error::DependentColumns);
    }
    Ok(smith_invariants(v).into_iter().product())
}

/// Gram determinant of a basis, with the exact square root when integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramDet {
    pub gram: Int,
    pub sqrt: Option<Int>,
}

/// det(BᵀB) as an exact integer; `sqrt` is set when the lattice determinant
/// itself is an integer.
pub fn lattice_determinant(basis: &LatticeBasis) -> GramDet {
    assert!(basis.dim() > 0, "empty basis");
    let b = basis.matrix();
    let gram = determinant(&b.transpose().mul(&b));
    let sqrt = crate::ratio::exact_sqrt(&gram);
    GramDet { gram, sqrt }
}

/// Integer solutions of A x = b as p0 + integer span of `directions`, or None
/// when no integer solution exists.
pub fn solve_affine_lattice(a: &IntMatrix, b: &IntVector) -> Option<(IntVector, LatticeBasis)> {
    assert_eq!(a.rows(), b.dim());
    let (h, u) = hermite_normal_form(a);
    // pivot structure of h: pivot j sits in column j at row pivot_rows[j]
    let mut pivot_rows = Vec::new();
    let mut col = 0usize;
    for r in 0..h.rows() {
        if col < h.cols() && !h.at(r, col).is_zero() {
            pivot_rows.push(r);
            col += 1;
        }
    }
    let rank = pivot_rows.len();
    // forward-substitute H y = b on pivot columns
    let mut y = vec![Int::zero(); h.cols()];
    let mut next_pivot = 0usize;
    for r in 0..h.rows() {
        let mut acc = Int::zero();
        for j in 0..rank {
            acc += h.at(r, j) * &y[j];
        }
        let resid = &b[r] - acc;
        if next_pivot < rank && pivot_rows[next_pivot] == r {
            let piv = h.at(r, next_pivot);
            let (q, rem) = resid.div_rem(piv);
            if !rem.is_zero() {
                return None; // rational solution exists but not integral
            }
            y[next_pivot] = q;
            next_pivot += 1;
        } else if !resid.is_zero() {
            return None; // inconsistent row
        }
    }
    let p0 = u.mul_vec(&IntVector::new(y));
    let dirs: Vec<IntVector> = (rank..h.cols()).map(|j| u.column(j)).collect();
    let basis = LatticeBasis::new(a.cols(), dirs).expect("kernel columns independent");
    Some((p0, basis))
}

/// Exact coefficients c_0..c_d of the polynomial through the given points
/// (Newton divided differences).
pub fn interpolate_polynomial(points: &[(Int, Rat)]) -> Result<Vec<Rat>> {
    let n = points.len();
    assert!(n > 0, "no interpolation points");
    for i in 0..n {
        for j in i + 1..n {
            if points[i].0 == points[j].0 {
                return Err(Error::RepeatedAbscissa);
            }
        }
    }
    let xs: Vec<Rat> = points
        .iter()
        .map(|(k, _)| Rat::from_integer(k.clone()))
        .collect();
    // divided difference table
    let mut dd: Vec<Rat> = points.iter().map(|(_, v)| v.clone()).collect();
    let mut coeffs_newton = vec![dd[0].clone()];
    for level in 1..n {
        for i in 0..n - level {
            dd[i] = (&dd[i + 1] - &dd[i]) / (&xs[i + level] - &xs[i]);
        }
        coeffs_newton.push(dd[0].clone());
    }
    // expand Newton form into monomial coefficients
    let mut coeffs = vec![Rat::zero(); n];
    let mut basis = vec![Rat::zero(); n]; // running product (x - x_0)...(x - x_{j-1})
    basis[0] = Rat::one();
    let mut basis_len = 1usize;
    for (j, c) in coeffs_newton.iter().enumerate() {
        for (t, b) in basis.iter().take(basis_len).enumerate() {
            coeffs[t] += c * b;
        }
        if j + 1 < n {
            // basis *= (x - x_j)
            let xj = xs[j].clone();
            let mut nb = vec![Rat::zero(); n];
            for t in 0..basis_len {
                nb[t + 1] += &basis[t];
                nb[t] -= &basis[t] * &xj;
            }
            basis = nb;
            basis_len += 1;
        }
    }
    Ok(coeffs)
}

/// Evaluates a coefficient vector at a rational argument (Horner).
pub fn eval_polynomial(coeffs: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}
