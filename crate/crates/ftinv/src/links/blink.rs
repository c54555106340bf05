use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::intmat::{Int, IntMatrix};
use crate::{Error, Result};

/// Framed link given by its linking matrix; framings sit on the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FramedLink {
    lk: IntMatrix,
}

impl FramedLink {
    pub fn new(lk: IntMatrix) -> Result<Self> {
        if !lk.is_symmetric() {
            return Err(Error::Invalid("linking matrix must be square and symmetric".into()));
        }
        Ok(FramedLink { lk })
    }

    pub fn empty() -> Self {
        FramedLink { lk: IntMatrix::zeros(0, 0) }
    }

    pub fn components(&self) -> usize {
        self.lk.nrows()
    }

    pub fn linking_matrix(&self) -> &IntMatrix {
        &self.lk
    }

    pub fn framing(&self, i: usize) -> &Int {
        &self.lk[(i, i)]
    }

    pub fn is_algebraically_split(&self) -> bool {
        let n = self.components();
        (0..n).all(|i| (0..n).all(|j| i == j || self.lk[(i, j)].is_zero()))
    }

    pub fn is_unit_framed(&self) -> bool {
        (0..self.components()).all(|i| self.framing(i).abs().is_one())
    }

    /// Algebraically split and unit framed.
    pub fn is_as_admissible(&self) -> bool {
        self.is_algebraically_split() && self.is_unit_framed()
    }
}

/// A blink: `2r` components partitioned into `r` ordered pairs, linking
/// numbers between components, and a unit Seifert-framing sign per pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlinkPresentation {
    pairs: Vec<(usize, usize)>,
    lk: IntMatrix,
    epsilon: Vec<Option<i32>>,
}

impl BlinkPresentation {
    /// `lk` is `2r × 2r` and symmetric; its diagonal is ignored.
    pub fn new(pairs: Vec<(usize, usize)>, lk: IntMatrix, epsilon: Vec<Option<i32>>) -> Result<Self> {
        let n = 2 * pairs.len();
        if lk.nrows() != n || lk.ncols() != n {
            return Err(Error::Invalid(format!("linking matrix must be {n}x{n}")));
        }
        if epsilon.len() != pairs.len() {
            return Err(Error::Invalid("one epsilon per pair required".into()));
        }
        if let Some(e) = epsilon.iter().flatten().find(|e| e.abs() != 1) {
            return Err(Error::Invalid(format!("epsilon must be ±1, got {e}")));
        }
        let mut seen = vec![false; n];
        for &(a, b) in &pairs {
            if a >= n || b >= n || a == b || seen[a] || seen[b] {
                return Err(Error::Invalid("pairs must partition the components".into()));
            }
            seen[a] = true;
            seen[b] = true;
        }
        for i in 0..n {
            for j in 0..i {
                if lk[(i, j)] != lk[(j, i)] {
                    return Err(Error::Invalid("linking matrix must be symmetric".into()));
                }
            }
        }
        let mut lk = lk;
        for i in 0..n {
            lk[(i, i)] = Int::zero();
        }
        Ok(BlinkPresentation { pairs, lk, epsilon })
    }

    /// Pairs `(2p, 2p+1)` with the given internal linking numbers, cross
    /// linking `k[p][q]` between pairs `p ≠ q`, and signs.
    pub fn standard(internal: &[i64], cross: &[Vec<i64>], epsilon: &[i32]) -> Result<Self> {
        let r = internal.len();
        let mut lk = IntMatrix::zeros(2 * r, 2 * r);
        for p in 0..r {
            lk[(2 * p, 2 * p + 1)] = internal[p].into();
            lk[(2 * p + 1, 2 * p)] = internal[p].into();
            for q in 0..r {
                if p == q {
                    continue;
                }
                let v = BigInt::from(cross[p][q]);
                for a in 0..2 {
                    for b in 0..2 {
                        lk[(2 * p + a, 2 * q + b)] = v.clone();
                    }
                }
            }
        }
        let pairs = (0..r).map(|p| (2 * p, 2 * p + 1)).collect();
        BlinkPresentation::new(pairs, lk, epsilon.iter().map(|&e| Some(e)).collect())
    }

    pub fn empty() -> Self {
        BlinkPresentation {
            pairs: Vec::new(),
            lk: IntMatrix::zeros(0, 0),
            epsilon: Vec::new(),
        }
    }

    pub fn num_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn epsilon(&self) -> &[Option<i32>] {
        &self.epsilon
    }

    pub fn lk(&self, i: usize, j: usize) -> &Int {
        &self.lk[(i, j)]
    }

    /// Every pair carries a unit Seifert-framing.
    pub fn is_bl_admissible(&self) -> bool {
        self.epsilon.iter().all(Option::is_some)
    }
}

/// Linking matrix of a unit Seifert-framed blink, in component order: each
/// pair `(a, b)` with internal linking `l` and sign `ε` contributes
/// `[[l+ε, l], [l, l-ε]]`; other entries are copied.
///
/// Both components of a pair link every outside component equally (they
/// cobound a surface disjoint from it); data violating that is rejected.
pub fn blink_linking_matrix(b: &BlinkPresentation) -> Result<IntMatrix> {
    let n = 2 * b.num_pairs();
    for (p, &(a1, a2)) in b.pairs.iter().enumerate() {
        for k in 0..n {
            if k != a1 && k != a2 && b.lk[(a1, k)] != b.lk[(a2, k)] {
                return Err(Error::pre(format!(
                    "pair {} links component {} unequally ({} vs {})",
                    p + 1,
                    k + 1,
                    b.lk[(a1, k)],
                    b.lk[(a2, k)]
                )));
            }
        }
    }
    let mut m = b.lk.clone();
    for (p, &(a1, a2)) in b.pairs.iter().enumerate() {
        let eps = b.epsilon[p].ok_or_else(|| Error::pre(format!("pair {} has no epsilon", p + 1)))?;
        let l = b.lk[(a1, a2)].clone();
        m[(a1, a1)] = &l + eps;
        m[(a2, a2)] = &l - eps;
    }
    Ok(m)
}

pub fn is_unimodular(m: &IntMatrix) -> Result<bool> {
    let d = m
        .determinant()
        .ok_or_else(|| Error::Invalid("matrix is not square".into()))?;
    Ok(d.abs().is_one())
}

/// An `(n, m)` Seifert-framing of a 1-pair blink as an ordinary framing.
pub fn seifert_framing_to_framing(n: i64, m: i64, l12: i64) -> (i64, i64) {
    (n + l12, m + l12)
}

/// Punches a hole in each Seifert surface: component `K_i` becomes pair
/// `(K_i, hole_i)` with internal linking 0 and `ε = f_i`.
pub fn boundary_to_blink(link: &FramedLink) -> Result<BlinkPresentation> {
    if !link.is_unit_framed() {
        return Err(Error::pre("boundary link must be unit framed"));
    }
    if !link.is_algebraically_split() {
        return Err(Error::pre("a boundary link has vanishing linking numbers"));
    }
    let r = link.components();
    let eps: Vec<i32> = (0..r)
        .map(|i| if link.framing(i).is_positive() { 1 } else { -1 })
        .collect();
    BlinkPresentation::standard(&vec![0; r], &vec![vec![0; r]; r], &eps)
}
