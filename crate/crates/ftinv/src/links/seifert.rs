//! Seifert matrices, the Alexander polynomial, `φ = Δ''(1)`, the Casson
//! surgery sum, and a bounded search for block-respecting congruence.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::intmat::{Int, IntMatrix, Rat};
use crate::{Error, Result};

/// Square integer matrix split into diagonal blocks of the given sizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    sizes: Vec<usize>,
    a: IntMatrix,
}

impl SeifertMatrix {
    pub fn new(sizes: Vec<usize>, a: IntMatrix) -> Result<Self> {
        let n: usize = sizes.iter().sum();
        if a.nrows() != n || a.ncols() != n {
            return Err(Error::Invalid(format!("block sizes sum to {n} but matrix is {}x{}", a.nrows(), a.ncols())));
        }
        Ok(SeifertMatrix { sizes, a })
    }

    /// A single knot block.
    pub fn knot(a: IntMatrix) -> Result<Self> {
        SeifertMatrix::new(vec![a.nrows()], a)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    fn offsets(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .scan(0, |acc, &s| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect()
    }

    /// The block `σ_ij`.
    pub fn block(&self, i: usize, j: usize) -> IntMatrix {
        let off = self.offsets();
        self.a.block(off[i], off[j], self.sizes[i], self.sizes[j])
    }

    fn knot_block(&self) -> Result<&IntMatrix> {
        if self.sizes.len() != 1 {
            return Err(Error::pre("expected a single knot block"));
        }
        Ok(&self.a)
    }
}

/// Integer Laurent polynomial in `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Int>,
}

impl LaurentPoly {
    pub fn constant(c: i64) -> Self {
        Self::from_terms(&[(0, c)])
    }

    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut p = LaurentPoly::default();
        for &(e, c) in terms {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    fn add_term(&mut self, e: i64, c: Int) {
        let v = self.coeffs.entry(e).or_default();
        *v += c;
        if v.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn coefficient(&self, e: i64) -> Int {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Int)> {
        self.coeffs.iter()
    }

    pub fn eval_one(&self) -> Int {
        self.coeffs.values().sum()
    }

    /// `p(t⁻¹)`.
    pub fn mirror(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.mirror()
    }

    pub fn negate(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    /// `d/dt` then `d/dt` again, evaluated at `t = 1`: `Σ a_k k(k-1)`.
    pub fn second_derivative_at_one(&self) -> Int {
        self.coeffs.iter().map(|(&e, c)| c * BigInt::from(e) * BigInt::from(e - 1)).sum()
    }
}

impl fmt::Display for LaurentPoly {
    /// Compact descending form, e.g. `-t+3-t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            if e == 0 {
                out.push_str(&mag.to_string());
                continue;
            }
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push('t');
            if e != 1 {
                out.push_str(&format!("^{e}"));
            }
        }
        write!(f, "{out}")
    }
}

fn check_knot_block(a: &IntMatrix) -> Result<()> {
    if !a.is_square() || a.nrows() % 2 != 0 {
        return Err(Error::pre("a knot Seifert block must be square of even size"));
    }
    let skew = a.sub(&a.transpose());
    if !skew.determinant().expect("square").abs().is_one() {
        return Err(Error::pre("A - Aᵀ is not unimodular"));
    }
    Ok(())
}

// Coefficients of det(tA - Aᵀ) by exact evaluation at t = 0..=n and
// Lagrange interpolation.
fn det_polynomial(a: &IntMatrix) -> Vec<Int> {
    let n = a.nrows();
    let at = a.transpose();
    let values: Vec<Rat> = (0..=n)
        .map(|t| {
            let m = a.scale(&BigInt::from(t)).sub(&at);
            Rat::from_integer(m.determinant().expect("square"))
        })
        .collect();
    let mut coeffs = vec![Rat::zero(); n + 1];
    for (i, yi) in values.iter().enumerate() {
        // basis polynomial Π_{j≠i} (t - j)/(i - j)
        let mut basis = vec![Rat::one()];
        let mut denom = Rat::one();
        for j in 0..=n {
            if j == i {
                continue;
            }
            let mut next = vec![Rat::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * Rat::from_integer(BigInt::from(j));
            }
            basis = next;
            denom *= Rat::from_integer(BigInt::from(i as i64 - j as i64));
        }
        let scale = yi / denom;
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * &scale;
        }
    }
    coeffs
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "determinant polynomial has integer coefficients");
            c.to_integer()
        })
        .collect()
}

/// `Δ(t) = det(t^{1/2}A - t^{-1/2}Aᵀ)`, normalized so that `Δ(1) = 1`.
pub fn alexander(s: &SeifertMatrix) -> Result<LaurentPoly> {
    alexander_block(s.knot_block()?)
}

pub fn alexander_block(a: &IntMatrix) -> Result<LaurentPoly> {
    check_knot_block(a)?;
    let h = (a.nrows() / 2) as i64;
    let mut p = LaurentPoly::default();
    for (k, c) in det_polynomial(a).into_iter().enumerate() {
        p.add_term(k as i64 - h, c);
    }
    if p.eval_one().is_negative() {
        p = p.negate();
    }
    Ok(p)
}

/// `φ = Δ''(1)` of the normalized Alexander polynomial.
pub fn phi(s: &SeifertMatrix) -> Result<Rat> {
    Ok(Rat::from_integer(alexander(s)?.second_derivative_at_one()))
}

/// `Σ f_i φ(L_i)`.
pub fn casson(framings: &[i32], blocks: &[SeifertMatrix]) -> Result<Rat> {
    if framings.len() != blocks.len() {
        return Err(Error::Invalid(format!(
            "{} framings but {} Seifert blocks",
            framings.len(),
            blocks.len()
        )));
    }
    framings.iter().zip(blocks).try_fold(Rat::zero(), |acc, (&f, b)| {
        Ok(acc + phi(b)? * Rat::from_integer(BigInt::from(f)))
    })
}

/// Searches for a block-diagonal unimodular `P` with entries in
/// `[-bound, bound]` such that `PᵀAP = B`.
///
/// `true` is a certificate; `false` only means nothing was found within the
/// bound.
pub fn seifert_congruent(a: &SeifertMatrix, b: &SeifertMatrix, bound: u32) -> Result<bool> {
    Ok(find_congruence(a, b, bound)?.is_some())
}

pub fn find_congruence(a: &SeifertMatrix, b: &SeifertMatrix, bound: u32) -> Result<Option<IntMatrix>> {
    if a.sizes != b.sizes {
        return Err(Error::Invalid("Seifert matrices have different block shapes".into()));
    }
    if a.a.determinant() != b.a.determinant() {
        return Ok(None);
    }
    let n = a.a.nrows();
    let bound = i64::from(bound);
    let offsets = a.offsets();
    let mut cols: Vec<Vec<i64>> = Vec::with_capacity(n);
    let am: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| small(&a.a[(i, j)])).collect::<Option<_>>())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Invalid("entries too large for the congruence search".into()))?;
    let bm: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| small(&b.a[(i, j)])).collect::<Option<_>>())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Invalid("entries too large for the congruence search".into()))?;
    let block_of: Vec<usize> = (0..a.sizes.len())
        .flat_map(|i| std::iter::repeat_n(i, a.sizes[i]))
        .collect();
    let ctx = Search {
        a: &am,
        b: &bm,
        sizes: &a.sizes,
        offsets: &offsets,
        block_of: &block_of,
        bound,
    };
    if !ctx.extend(&mut cols) {
        return Ok(None);
    }
    let mut p = IntMatrix::zeros(n, n);
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c.iter().enumerate() {
            p[(i, j)] = BigInt::from(*v);
        }
    }
    Ok(Some(p))
}

fn small(x: &Int) -> Option<i64> {
    x.to_i64().filter(|v| v.abs() < 1 << 20)
}

struct Search<'a> {
    a: &'a [Vec<i64>],
    b: &'a [Vec<i64>],
    sizes: &'a [usize],
    offsets: &'a [usize],
    block_of: &'a [usize],
    bound: i64,
}

impl Search<'_> {
    fn form(&self, u: &[i64], v: &[i64]) -> i64 {
        let n = u.len();
        let mut s = 0;
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += u[i] * self.a[i][j] * v[j];
            }
        }
        s
    }

    fn extend(&self, cols: &mut Vec<Vec<i64>>) -> bool {
        let c = cols.len();
        let n = self.a.len();
        if c == n {
            return (0..self.sizes.len()).all(|blk| self.block_unimodular(cols, blk));
        }
        let blk = self.block_of[c];
        // finish each block before moving on
        if c > 0 && self.block_of[c - 1] != blk && !self.block_unimodular(cols, self.block_of[c - 1]) {
            return false;
        }
        let (off, size) = (self.offsets[blk], self.sizes[blk]);
        let span = (2 * self.bound + 1) as usize;
        let total = span.pow(size as u32);
        let mut v = vec![0i64; n];
        for code in 0..total {
            let mut k = code;
            let mut nonzero = false;
            for i in 0..size {
                v[off + i] = (k % span) as i64 - self.bound;
                nonzero |= v[off + i] != 0;
                k /= span;
            }
            if !nonzero || self.form(&v, &v) != self.b[c][c] {
                continue;
            }
            let ok = cols
                .iter()
                .enumerate()
                .all(|(d, u)| self.form(u, &v) == self.b[d][c] && self.form(&v, u) == self.b[c][d]);
            if !ok {
                continue;
            }
            cols.push(v.clone());
            if self.extend(cols) {
                return true;
            }
            cols.pop();
        }
        false
    }

    fn block_unimodular(&self, cols: &[Vec<i64>], blk: usize) -> bool {
        let (off, size) = (self.offsets[blk], self.sizes[blk]);
        let mut m = IntMatrix::zeros(size, size);
        for j in 0..size {
            for i in 0..size {
                m[(i, j)] = BigInt::from(cols[off + j][off + i]);
            }
        }
        m.determinant().expect("square").abs().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn knot(rows: &[&[i64]]) -> SeifertMatrix {
        SeifertMatrix::knot(IntMatrix::from_i64(rows)).unwrap()
    }

    fn trefoil() -> SeifertMatrix {
        knot(&[&[-1, 1], &[0, -1]])
    }

    fn figure_eight() -> SeifertMatrix {
        knot(&[&[1, 1], &[0, -1]])
    }

    #[test]
    fn alexander_examples() {
        let unknot = SeifertMatrix::knot(IntMatrix::zeros(0, 0)).unwrap();
        assert_eq!(alexander(&unknot).unwrap(), LaurentPoly::constant(1));
        let t = alexander(&trefoil()).unwrap();
        assert_eq!(t, LaurentPoly::from_terms(&[(1, 1), (0, -1), (-1, 1)]));
        assert_eq!(t.to_string(), "t-1+t^-1");
        let f = alexander(&figure_eight()).unwrap();
        assert_eq!(f.to_string(), "-t+3-t^-1");
        // det(tA - Aᵀ) for [[1,1],[0,1]] is t² - t + 1
        let u = alexander(&knot(&[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(u, LaurentPoly::from_terms(&[(1, 1), (0, -1), (-1, 1)]));
        assert!(alexander(&knot(&[&[1, 0], &[0, 1]])).is_err());
        assert!(alexander(&knot(&[&[1]])).is_err());
    }

    #[test]
    fn phi_and_casson() {
        let unknot = SeifertMatrix::knot(IntMatrix::zeros(0, 0)).unwrap();
        assert!(phi(&unknot).unwrap().is_zero());
        assert_eq!(phi(&trefoil()).unwrap(), Rat::from_integer(2.into()));
        assert_eq!(phi(&figure_eight()).unwrap(), Rat::from_integer((-2).into()));
        assert!(casson(&[], &[]).unwrap().is_zero());
        assert_eq!(casson(&[1], &[trefoil()]).unwrap(), Rat::from_integer(2.into()));
        assert!(casson(&[1, 1], &[trefoil(), figure_eight()]).unwrap().is_zero());
        assert!(casson(&[1], &[]).is_err());
    }

    #[test]
    fn congruence_examples() {
        assert!(seifert_congruent(&trefoil(), &trefoil(), 1).unwrap());
        let p = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let b = &(&p.transpose() * trefoil().matrix()) * &p;
        assert!(seifert_congruent(&trefoil(), &SeifertMatrix::knot(b).unwrap(), 1).unwrap());
        assert!(!seifert_congruent(&trefoil(), &figure_eight(), 2).unwrap());
        let two = SeifertMatrix::new(vec![2, 2], IntMatrix::zeros(4, 4)).unwrap();
        assert!(seifert_congruent(&trefoil(), &two, 1).is_err());
    }

    #[test]
    fn two_block_congruence() {
        let mut a = IntMatrix::zeros(4, 4);
        a.set_block(0, 0, trefoil().matrix());
        a.set_block(2, 2, figure_eight().matrix());
        a[(0, 2)] = 1.into();
        a[(3, 1)] = (-1).into();
        let sa = SeifertMatrix::new(vec![2, 2], a.clone()).unwrap();
        let mut p = IntMatrix::identity(4);
        p[(0, 1)] = 1.into();
        p[(3, 2)] = (-1).into();
        let b = &(&p.transpose() * &a) * &p;
        let sb = SeifertMatrix::new(vec![2, 2], b.clone()).unwrap();
        let found = find_congruence(&sa, &sb, 1).unwrap().unwrap();
        assert_eq!(&(&found.transpose() * &a) * &found, b);
    }
}
