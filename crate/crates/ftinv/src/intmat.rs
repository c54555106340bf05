//! Dense exact integer matrices and the lattice routines built on them:
//! Bareiss determinants, Hermite normal form, integer kernels, saturation,
//! unimodular completion, and incremental rational span membership.
//!
//! Everything here works over `BigInt`; there is no floating point and no
//! overflow. Sizes are desk scale (a few dozen rows and columns), so dense
//! storage is used throughout.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Integer vector in fixed coordinates.
pub type IntVec = Vec<Int>;

/// Builds an integer vector from machine integers.
pub fn ivec(entries: &[i64]) -> IntVec {
    entries.iter().map(|&x| Int::from(x)).collect()
}

pub fn dot(u: &[Int], v: &[Int]) -> Int {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Gcd of all entries (zero for the zero vector).
pub fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(rows: &[IntVec], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<IntVec> = rows.iter().map(|r| ivec(r)).collect();
        Self::from_rows(&rows, cols)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> IntVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<IntVec> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn mul_vec(&self, v: &[Int]) -> IntVec {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: &Int) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    /// Copies the `h x w` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> IntMatrix {
        let mut b = IntMatrix::zeros(h, w);
        for i in 0..h {
            for j in 0..w {
                b[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        b
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &IntMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn max_abs(&self) -> Int {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Option<Int> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Int::one());
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Some(Int::zero());
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
                a[(i, k)] = Int::zero();
            }
            prev = a[(k, k)].clone();
        }
        Some(sign * &a[(n - 1, n - 1)])
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Inverse of a unimodular matrix, or `None` if the matrix is not
    /// invertible over the integers.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rat> = self.row(i).iter().map(|x| Rat::from_integer(x.clone())).collect();
                row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            let inv = a[c][c].recip();
            for x in a[c].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for k in 0..2 * n {
                        let v = &a[c][k] * &f;
                        a[r][k] -= v;
                    }
                }
            }
        }
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let x = &a[i][n + j];
                if !x.is_integer() {
                    return None;
                }
                out[(i, j)] = x.to_integer();
            }
        }
        Some(out)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Row echelon reduction by unimodular row operations.
///
/// Returns `(h, u)` with `u * m == h`, `u` unimodular and `h` in Hermite
/// normal form: pivots positive, entries above each pivot reduced into
/// `[0, pivot)`, zero rows at the bottom.
pub fn hermite_with_transform(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if pivot_row == rows {
            break;
        }
        // fold every lower row into the pivot row with 2x2 unimodular steps
        for r in pivot_row + 1..rows {
            if h[(r, c)].is_zero() {
                continue;
            }
            let a = h[(pivot_row, c)].clone();
            let b = h[(r, c)].clone();
            let eg = a.extended_gcd(&b);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let (p, q) = (&a / &g, &b / &g);
            combine_rows(&mut h, pivot_row, r, &s, &t, &q, &p);
            combine_rows(&mut u, pivot_row, r, &s, &t, &q, &p);
        }
        if h[(pivot_row, c)].is_zero() {
            continue;
        }
        if h[(pivot_row, c)].is_negative() {
            negate_row(&mut h, pivot_row);
            negate_row(&mut u, pivot_row);
        }
        let piv = h[(pivot_row, c)].clone();
        for r in 0..pivot_row {
            let q = h[(r, c)].div_floor(&piv);
            if !q.is_zero() {
                sub_row_multiple(&mut h, r, pivot_row, &q);
                sub_row_multiple(&mut u, r, pivot_row, &q);
            }
        }
        pivots.push(c);
        pivot_row += 1;
    }
    (h, u)
}

// rows (i, j) <- (s*ri + t*rj, -q*ri + p*rj); determinant s*p + t*q = 1
fn combine_rows(m: &mut IntMatrix, i: usize, j: usize, s: &Int, t: &Int, q: &Int, p: &Int) {
    for c in 0..m.ncols() {
        let a = m[(i, c)].clone();
        let b = m[(j, c)].clone();
        m[(i, c)] = s * &a + t * &b;
        m[(j, c)] = p * &b - q * &a;
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for c in 0..m.ncols() {
        m[(i, c)] = -&m[(i, c)];
    }
}

fn sub_row_multiple(m: &mut IntMatrix, target: usize, source: usize, k: &Int) {
    for c in 0..m.ncols() {
        let v = k * &m[(source, c)];
        m[(target, c)] -= v;
    }
}

/// Canonical Hermite basis of the lattice spanned by `rows` (zero rows dropped).
pub fn hermite_rows(rows: &[IntVec], cols: usize) -> Vec<IntVec> {
    let (h, _) = hermite_with_transform(&IntMatrix::from_rows(rows, cols));
    h.to_rows().into_iter().filter(|r| !is_zero_vec(r)).collect()
}

/// Z-basis of `{x : m x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<IntVec> {
    let (h, u) = hermite_with_transform(&m.transpose());
    (0..h.nrows())
        .filter(|&i| is_zero_vec(h.row(i)))
        .map(|i| u.row(i).to_vec())
        .collect()
}

/// Canonical basis of the saturation of the lattice spanned by `rows`, i.e.
/// of `span_Q(rows) ∩ Z^cols`.
pub fn saturate(rows: &[IntVec], cols: usize) -> Vec<IntVec> {
    let nonzero: Vec<IntVec> = rows.iter().filter(|r| !is_zero_vec(r)).cloned().collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let kernel = integer_kernel(&IntMatrix::from_rows(&nonzero, cols));
    let sat = if kernel.is_empty() {
        IntMatrix::identity(cols).to_rows()
    } else {
        integer_kernel(&IntMatrix::from_rows(&kernel, cols))
    };
    hermite_rows(&sat, cols)
}

/// Rows completing a saturated basis to a basis of `Z^cols`.
///
/// `basis` must be linearly independent and span a direct summand.
pub fn unimodular_complement(basis: &[IntVec], cols: usize) -> Vec<IntVec> {
    let k = basis.len();
    if k == 0 {
        return IntMatrix::identity(cols).to_rows();
    }
    let s = IntMatrix::from_rows(basis, cols);
    let (_, u) = hermite_with_transform(&s.transpose());
    let uinv = u.inverse_unimodular().expect("transform is unimodular");
    let mut comp: Vec<IntVec> = (k..cols).map(|j| uinv.col(j)).collect();
    // size-reduce against the summand so the output is small and deterministic
    let h = hermite_rows(basis, cols);
    for v in comp.iter_mut() {
        for row in &h {
            let p = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            let q = v[p].div_floor(&row[p]);
            if !q.is_zero() {
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= &q * b;
                }
            }
        }
    }
    comp
}

/// Lattice generated by `rows` equals its saturation.
pub fn is_saturated(rows: &[IntVec], cols: usize) -> bool {
    hermite_rows(rows, cols) == saturate(rows, cols)
}

/// Incrementally built echelon basis of a rational subspace, stored as
/// primitive integer rows sorted by pivot column.
#[derive(Clone, Debug, Default)]
pub struct SpanBasis {
    dim: usize,
    rows: Vec<(usize, IntVec)>,
}

impl SpanBasis {
    pub fn new(dim: usize) -> Self {
        SpanBasis { dim, rows: Vec::new() }
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a IntVec>>(dim: usize, vs: I) -> Self {
        let mut b = Self::new(dim);
        for v in vs {
            b.insert(v.clone());
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, mut v: IntVec) -> IntVec {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let a = row[*p].clone();
            let b = v[*p].clone();
            let g = a.gcd(&b);
            let (a, b) = (a / &g, b / &g);
            for (x, y) in v.iter_mut().zip(row) {
                *x = &*x * &a - &b * y;
            }
            let c = content(&v);
            if !c.is_zero() && !c.is_one() {
                for x in v.iter_mut() {
                    *x = &*x / &c;
                }
            }
        }
        v
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: IntVec) -> bool {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        is_zero_vec(&self.reduce(v.to_vec()))
    }
}

/// Rank over the rationals.
pub fn rank(rows: &[IntVec], cols: usize) -> usize {
    SpanBasis::from_vectors(cols, rows).rank()
}
