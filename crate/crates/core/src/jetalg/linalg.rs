//! Exact linear algebra over the rationals.
//!
//! Dense matrices are small here (Jacobians, Hessian blocks), so they use
//! plain Gauss-Jordan over `Scalar`. The large sparse systems of the tangent
//! module go through [`SparseEchelon`], which eliminates fraction-free over
//! the integers.

use super::scalar::{self, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| scalar::int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = &m[(r, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = scalar::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = scalar::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let idx: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(r.select(&idx, &cols))
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = scalar::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..m.cols {
                    let v = &m[(c, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

/// Inertia of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Congruence diagonalization of a symmetric matrix: returns the diagonal
/// entries `d` and an invertible `p` with `p^T a p = diag(d)`.
pub fn congruence_diagonalize(a: &Matrix) -> (Vec<Scalar>, Matrix) {
    assert!(a.is_symmetric(), "congruence_diagonalize needs a symmetric matrix");
    let n = a.rows();
    let mut m = a.clone();
    let mut p = Matrix::identity(n);
    for k in 0..n {
        if m[(k, k)].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !m[(i, i)].is_zero()) {
                swap_sym(&mut m, &mut p, k, i);
            } else if let Some(j) = (k + 1..n).find(|&j| !m[(k, j)].is_zero()) {
                // e_k <- e_k + e_j makes the pivot 2 m[k][j] != 0
                add_sym(&mut m, &mut p, k, j, &scalar::one());
            } else if let Some((i, j)) = (k + 1..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[(i, j)].is_zero())
            {
                add_sym(&mut m, &mut p, i, j, &scalar::one());
                swap_sym(&mut m, &mut p, k, i);
            }
        }
        if m[(k, k)].is_zero() {
            continue;
        }
        let piv = m[(k, k)].clone();
        for i in k + 1..n {
            if m[(k, i)].is_zero() {
                continue;
            }
            let f = -(&m[(k, i)] / &piv);
            add_sym(&mut m, &mut p, i, k, &f);
        }
    }
    let d = (0..n).map(|i| m[(i, i)].clone()).collect();
    (d, p)
}

/// e_i <- e_i + f e_j applied as a congruence.
fn add_sym(m: &mut Matrix, p: &mut Matrix, i: usize, j: usize, f: &Scalar) {
    let n = m.rows();
    for c in 0..n {
        let v = &m[(j, c)] * f;
        m[(i, c)] += v;
    }
    for r in 0..n {
        let v = &m[(r, j)] * f;
        m[(r, i)] += v;
    }
    for r in 0..n {
        let v = &p[(r, j)] * f;
        p[(r, i)] += v;
    }
}

fn swap_sym(m: &mut Matrix, p: &mut Matrix, i: usize, j: usize) {
    let n = m.rows();
    m.swap_rows(i, j);
    for r in 0..n {
        m.data.swap(r * n + i, r * n + j);
        p.data.swap(r * n + i, r * n + j);
    }
}

pub fn inertia(a: &Matrix) -> Inertia {
    let (d, _) = congruence_diagonalize(a);
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    for v in &d {
        match scalar::sign(v) {
            1 => out.positive += 1,
            -1 => out.negative += 1,
            _ => out.zero += 1,
        }
    }
    out
}

/// Incremental row echelon basis of sparse integer vectors, maintained by
/// fraction-free elimination: each reduction step is `r <- p*r - c*pivot`
/// followed by removal of the row content.
#[derive(Debug, Clone, Default)]
pub struct SparseEchelon {
    pivots: BTreeMap<usize, BTreeMap<usize, BigInt>>,
}

pub type SparseVec = BTreeMap<usize, BigInt>;

impl SparseEchelon {
    pub fn new() -> Self {
        SparseEchelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `v` against the current basis; the result is zero iff `v` lies
    /// in the span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        v.retain(|_, c| !c.is_zero());
        loop {
            // pivots are leading entries, so scan v from its smallest index
            let hit = v
                .iter()
                .find(|(col, _)| self.pivots.contains_key(col))
                .map(|(col, c)| (*col, c.clone()));
            let Some((col, c)) = hit else {
                return v;
            };
            let row = &self.pivots[&col];
            let p = row[&col].clone();
            let g = p.gcd(&c);
            let (sp, sc) = (&p / &g, &c / &g);
            for val in v.values_mut() {
                *val *= &sp;
            }
            for (j, rv) in row {
                let e = v.entry(*j).or_insert_with(BigInt::zero);
                *e -= &sc * rv;
            }
            v.retain(|_, c| !c.is_zero());
            normalize_content(&mut v);
        }
    }

    /// Insert `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        normalize_content(&mut r);
        let lead = *r.keys().next().expect("nonzero row");
        self.pivots.insert(lead, r);
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

fn normalize_content(v: &mut SparseVec) {
    let mut g = BigInt::zero();
    for c in v.values() {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for c in v.values_mut() {
        *c /= &g;
    }
    if let Some((_, lead)) = v.iter().next() {
        if lead.is_negative() {
            for c in v.values_mut() {
                *c = -c.clone();
            }
        }
    }
}

/// Clear denominators of a rational sparse vector.
pub fn integerize(v: &BTreeMap<usize, Scalar>) -> SparseVec {
    let mut l = BigInt::one();
    for c in v.values() {
        l = l.lcm(c.denom());
    }
    v.iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (*k, c.numer() * (&l / c.denom())))
        .collect()
}

/// Fraction-free (Bareiss) rank of a dense rational matrix.
pub fn bareiss_rank(a: &Matrix) -> usize {
    let mut rows: Vec<Vec<BigInt>> = (0..a.rows())
        .map(|i| {
            let mut l = BigInt::one();
            for c in a.row(i) {
                l = l.lcm(c.denom());
            }
            a.row(i).iter().map(|c| c.numer() * (&l / c.denom())).collect()
        })
        .collect();
    let (nr, nc) = (a.rows(), a.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..nr {
            for j in c + 1..nc {
                let v = (&rows[r][c] * &rows[i][j] - &rows[i][c] * &rows[r][j]) / &prev;
                rows[i][j] = v;
            }
            rows[i][c] = BigInt::zero();
        }
        prev = rows[r][c].clone();
        r += 1;
    }
    r
}
