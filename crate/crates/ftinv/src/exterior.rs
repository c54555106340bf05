//! `Λ²H`, `Λ³H` and `H ⊗ Λ²H` over the rationals, as sparse maps from
//! sorted index tuples to nonzero coefficients.
//!
//! Keys: a wedge term `e_a ∧ e_b (∧ e_c)` is stored under `[a, b(, c)]` with
//! strictly increasing indices; a tensor term `e_a ⊗ (e_b ∧ e_c)` under
//! `[a, b, c]` with `b < c`. Indices are zero-based coordinates of the
//! ambient lattice.
//!
//! Text form (indices one-based):
//!
//! ```text
//! wedge3 dim=6: 1 * 1^2^3 + -2 * 1^2^6
//! tensor12 dim=6: 1 * 1|2^3 + 1/2 * 4|5^6
//! wedge2 dim=4: 0
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::intmat::{unimodular_complement, Int, IntMatrix, IntVec, Rat, SpanBasis};
use crate::symplectic::{is_lagrangian, SpMatrix, Sublattice};
use crate::{check_dim, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Grade {
    Wedge2,
    Wedge3,
    Tensor12,
}

impl Grade {
    fn name(self) -> &'static str {
        match self {
            Grade::Wedge2 => "wedge2",
            Grade::Wedge3 => "wedge3",
            Grade::Tensor12 => "tensor12",
        }
    }

    fn arity(self) -> usize {
        match self {
            Grade::Wedge2 => 2,
            _ => 3,
        }
    }
}

pub type Key = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiVector {
    dim: usize,
    grade: Grade,
    terms: BTreeMap<Key, Rat>,
}

// Sorts a wedge factor list in place; returns the permutation sign, or None
// if an index repeats.
fn sort_wedge(idx: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    idx.windows(2).all(|w| w[0] < w[1]).then_some(odd)
}

impl MultiVector {
    pub fn zero(dim: usize, grade: Grade) -> Self {
        MultiVector {
            dim,
            grade,
            terms: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> Grade {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &[usize]) -> Rat {
        self.terms.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    /// Adds `c` times the basis element with (possibly unsorted) indices.
    pub fn add_basis(&mut self, idx: &[usize], c: &Rat) {
        assert_eq!(idx.len(), self.grade.arity(), "wrong number of indices");
        assert!(idx.iter().all(|&i| i < self.dim), "index out of range");
        if c.is_zero() {
            return;
        }
        let mut key = idx.to_vec();
        let wedge_part = match self.grade {
            Grade::Tensor12 => &mut key[1..],
            _ => &mut key[..],
        };
        let Some(odd) = sort_wedge(wedge_part) else {
            return;
        };
        let c = if odd { -c } else { c.clone() };
        self.add_key(key, c);
    }

    fn add_key(&mut self, key: Key, c: Rat) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn basis(dim: usize, grade: Grade, idx: &[usize]) -> Self {
        let mut m = Self::zero(dim, grade);
        m.add_basis(idx, &Rat::one());
        m
    }

    fn check_same(&self, other: &MultiVector) -> Result<()> {
        check_dim(self.dim, other.dim)?;
        if self.grade != other.grade {
            return Err(Error::Invalid(format!(
                "grade mismatch: {} vs {}",
                self.grade.name(),
                other.grade.name()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiVector) -> Result<MultiVector> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_key(k.clone(), c.clone());
        }
        Ok(out)
    }

    /// `self += k * other`.
    pub fn add_scaled(&mut self, other: &MultiVector, k: &Rat) -> Result<()> {
        self.check_same(other)?;
        for (key, c) in &other.terms {
            self.add_key(key.clone(), c * k);
        }
        Ok(())
    }

    pub fn sub(&self, other: &MultiVector) -> Result<MultiVector> {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, k: &Rat) -> MultiVector {
        if k.is_zero() {
            return Self::zero(self.dim, self.grade);
        }
        MultiVector {
            dim: self.dim,
            grade: self.grade,
            terms: self.terms.iter().map(|(key, c)| (key.clone(), c * k)).collect(),
        }
    }

    pub fn require_grade(&self, grade: Grade) -> Result<()> {
        if self.grade == grade {
            Ok(())
        } else {
            Err(Error::Invalid(format!(
                "expected grade {}, found {}",
                grade.name(),
                self.grade.name()
            )))
        }
    }

    /// `x ⊗ w` for a vector `x` and `w ∈ Λ²`.
    pub fn tensor(x: &[Int], w: &MultiVector) -> Result<MultiVector> {
        w.require_grade(Grade::Wedge2)?;
        check_dim(w.dim, x.len())?;
        let mut out = Self::zero(w.dim, Grade::Tensor12);
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            let xa = Rat::from_integer(xa.clone());
            for (k, c) in &w.terms {
                out.add_key(vec![a, k[0], k[1]], &xa * c);
            }
        }
        Ok(out)
    }
}

/// Alternating product of 2 or 3 integer vectors in normal form.
pub fn wedge(factors: &[IntVec]) -> Result<MultiVector> {
    let grade = match factors.len() {
        2 => Grade::Wedge2,
        3 => Grade::Wedge3,
        n => return Err(Error::Invalid(format!("wedge takes 2 or 3 factors, got {n}"))),
    };
    let dim = factors[0].len();
    for f in factors {
        check_dim(dim, f.len())?;
    }
    Ok(multilinear(dim, grade, factors))
}

// Expands Π slot_i (each a coordinate vector) into basis terms.
pub(crate) fn multilinear(dim: usize, grade: Grade, slots: &[IntVec]) -> MultiVector {
    let mut out = MultiVector::zero(dim, grade);
    let supports: Vec<Vec<(usize, &Int)>> = slots
        .iter()
        .map(|v| v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
        .collect();
    for combo in supports.iter().multi_cartesian_product() {
        let idx: Vec<usize> = combo.iter().map(|(i, _)| *i).collect();
        let c: Int = combo.iter().map(|(_, x)| (*x).clone()).product();
        out.add_basis(&idx, &Rat::from_integer(c));
    }
    out
}

/// `Λ³H → H ⊗ Λ²H`, `x∧y∧z ↦ x⊗(y∧z) + y⊗(z∧x) + z⊗(x∧y)`.
pub fn embed_wedge3(w: &MultiVector) -> Result<MultiVector> {
    w.require_grade(Grade::Wedge3)?;
    let mut out = MultiVector::zero(w.dim, Grade::Tensor12);
    for (k, c) in &w.terms {
        let (x, y, z) = (k[0], k[1], k[2]);
        out.add_basis(&[x, y, z], c);
        out.add_basis(&[y, z, x], c);
        out.add_basis(&[z, x, y], c);
    }
    Ok(out)
}

/// Applies a linear map `Z^{cols} → Z^{rows}` slot-wise. The result lives
/// in dimension `rows`.
pub fn act_linear(m: &IntMatrix, x: &MultiVector) -> Result<MultiVector> {
    check_dim(x.dim, m.ncols())?;
    let cols: Vec<IntVec> = (0..m.ncols()).map(|j| m.col(j)).collect();
    let mut out = MultiVector::zero(m.nrows(), x.grade);
    for (k, c) in &x.terms {
        let slots: Vec<IntVec> = k.iter().map(|&i| cols[i].clone()).collect();
        let image = multilinear(m.nrows(), x.grade, &slots);
        for (ik, ic) in image.terms {
            out.add_key(ik, ic * c);
        }
    }
    Ok(out)
}

pub fn act(m: &SpMatrix, x: &MultiVector) -> Result<MultiVector> {
    act_linear(m.matrix(), x)
}

/// Projection `H → H/L ≅ Z^g` in the basis of `H/L` induced by a unimodular
/// complement of `L` (for `L = span(e)` this is the basis `ē'_i`).
pub fn quotient_map(l: &Sublattice) -> Result<IntMatrix> {
    if !is_lagrangian(l) {
        return Err(Error::pre("quotient requires a Lagrangian"));
    }
    let n = l.lattice().rank();
    let g = l.rank();
    let mut rows = l.basis().to_vec();
    rows.extend(unimodular_complement(l.basis(), n));
    let binv = IntMatrix::from_rows(&rows, n)
        .inverse_unimodular()
        .expect("basis of H");
    // v = c^T B  =>  c = B^{-T} v; keep the complement coordinates
    let mut p = IntMatrix::zeros(g, n);
    for i in 0..g {
        for k in 0..n {
            p[(i, k)] = binv[(k, g + i)].clone();
        }
    }
    Ok(p)
}

pub fn quotient_mod_l(x: &MultiVector, l: &Sublattice) -> Result<MultiVector> {
    check_dim(l.lattice().rank(), x.dim)?;
    act_linear(&quotient_map(l)?, x)
}

fn to_integer_row(x: &MultiVector, index: &BTreeMap<Key, usize>) -> Option<IntVec> {
    let den = x.terms.values().fold(Int::one(), |acc, c| acc.lcm(c.denom()));
    let mut row = vec![Int::zero(); index.len()];
    for (k, c) in &x.terms {
        let i = *index.get(k)?;
        row[i] = (c * Rat::from_integer(den.clone())).to_integer();
    }
    Some(row)
}

/// A rational subspace spanned by multivectors of one grade, ready for
/// repeated membership queries.
#[derive(Clone, Debug)]
pub struct MvSpan {
    dim: usize,
    grade: Grade,
    index: BTreeMap<Key, usize>,
    basis: SpanBasis,
}

impl MvSpan {
    pub fn new(dim: usize, grade: Grade, generators: &[MultiVector]) -> Result<Self> {
        let probe = MultiVector::zero(dim, grade);
        for g in generators {
            probe.check_same(g)?;
        }
        let keys: BTreeSet<&Key> = generators.iter().flat_map(|g| g.terms.keys()).collect();
        let index: BTreeMap<Key, usize> = keys.into_iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let mut basis = SpanBasis::new(index.len());
        for g in generators {
            basis.insert(to_integer_row(g, &index).expect("indexed"));
        }
        Ok(MvSpan {
            dim,
            grade,
            index,
            basis,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn contains(&self, x: &MultiVector) -> Result<bool> {
        MultiVector::zero(self.dim, self.grade).check_same(x)?;
        Ok(match to_integer_row(x, &self.index) {
            Some(row) => self.basis.contains(&row),
            None => false,
        })
    }
}

/// Whether `x` is a rational combination of `generators`.
pub fn in_span(x: &MultiVector, generators: &[MultiVector]) -> Result<bool> {
    MvSpan::new(x.dim, x.grade, generators)?.contains(x)
}

/// Rank of a family of multivectors over the rationals.
pub fn span_rank(dim: usize, grade: Grade, vs: &[MultiVector]) -> Result<usize> {
    Ok(MvSpan::new(dim, grade, vs)?.rank())
}

/// Generators `a ∧ b` for `a ∈ A`, `b ∈ B`.
pub fn wedge2_generators(a: &[IntVec], b: &[IntVec]) -> Vec<MultiVector> {
    a.iter()
        .cartesian_product(b)
        .map(|(x, y)| wedge(&[x.clone(), y.clone()]).expect("arity 2"))
        .filter(|w| !w.is_zero())
        .collect()
}

/// Generators `x ⊗ w` for `x ∈ X`, `w ∈ W`.
pub fn tensor_generators(xs: &[IntVec], ws: &[MultiVector]) -> Vec<MultiVector> {
    xs.iter()
        .cartesian_product(ws)
        .map(|(x, w)| MultiVector::tensor(x, w).expect("wedge2 generators"))
        .filter(|t| !t.is_zero())
        .collect()
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} dim={}: ", self.grade.name(), self.dim)?;
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let idx: Vec<String> = k.iter().map(|i| (i + 1).to_string()).collect();
                let body = match self.grade {
                    Grade::Tensor12 => format!("{}|{}", idx[0], idx[1..].join("^")),
                    _ => idx.join("^"),
                };
                format!("{c} * {body}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for MultiVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::parse(1, m.to_string());
        let (head, body) = s.trim().split_once(':').ok_or_else(|| bad("missing `:`"))?;
        let mut hw = head.split_whitespace();
        let grade = match hw.next() {
            Some("wedge2") => Grade::Wedge2,
            Some("wedge3") => Grade::Wedge3,
            Some("tensor12") => Grade::Tensor12,
            _ => return Err(bad("unknown grade")),
        };
        let dim: usize = hw
            .next()
            .and_then(|d| d.strip_prefix("dim="))
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| bad("expected `dim=<n>`"))?;
        let mut out = MultiVector::zero(dim, grade);
        let body = body.trim();
        if body == "0" {
            return Ok(out);
        }
        for term in body.split('+') {
            let (c, idx) = term.split_once('*').ok_or_else(|| bad("term must be `coeff * indices`"))?;
            let c: Rat = c.trim().parse().map_err(|_| bad("bad coefficient"))?;
            let idx: Vec<usize> = idx
                .trim()
                .split(['^', '|'])
                .map(|t| match t.trim().parse::<usize>() {
                    Ok(i) if (1..=dim).contains(&i) => Ok(i - 1),
                    _ => Err(bad("index out of range")),
                })
                .collect::<Result<_>>()?;
            if idx.len() != grade.arity() || (grade == Grade::Tensor12) != idx_has_bar(term) {
                return Err(bad("index pattern does not match grade"));
            }
            out.add_basis(&idx, &c);
        }
        Ok(out)
    }
}

fn idx_has_bar(term: &str) -> bool {
    term.contains('|')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_combinations_leave_no_terms() {
        let x = MultiVector::basis(4, Grade::Wedge2, &[0, 1]);
        let mut y = MultiVector::zero(4, Grade::Wedge2);
        y.add_scaled(&x, &Rat::zero()).unwrap();
        assert!(y.is_zero());
        let t = MultiVector::tensor(&ivec(&[0, 1, 0, 0]), &x.sub(&x).unwrap()).unwrap();
        assert!(t.is_zero() && t.is_empty());
    }
    use crate::intmat::ivec;
    use crate::symplectic::{transvection, SymplecticLattice};

    fn r(n: i64) -> Rat {
        Rat::from_integer(Int::from(n))
    }

    #[test]
    fn wedge_normal_form() {
        let h = SymplecticLattice::new(3).unwrap();
        assert!(wedge(&[h.e(0), h.e(0)]).unwrap().is_zero());
        let w = wedge(&[h.e(1), h.e(0)]).unwrap();
        assert_eq!(w, MultiVector::basis(6, Grade::Wedge2, &[0, 1]).scale(&r(-1)));
        let w3 = wedge(&[h.e(0), h.e(1), h.e(2)]).unwrap();
        assert_eq!(w3.coefficient(&[0, 1, 2]), r(1));
        assert_eq!(w3.len(), 1);
        assert!(wedge(&[h.e(0)]).is_err());
        let dep = wedge(&[ivec(&[1, 1, 0, 0, 0, 0]), h.e(0), h.e(1)]).unwrap();
        assert!(dep.is_zero());
    }

    #[test]
    fn embedding_examples() {
        let w = MultiVector::basis(6, Grade::Wedge3, &[0, 1, 2]);
        let t = embed_wedge3(&w).unwrap();
        let mut expect = MultiVector::zero(6, Grade::Tensor12);
        expect.add_basis(&[0, 1, 2], &r(1));
        expect.add_basis(&[1, 2, 0], &r(1));
        expect.add_basis(&[2, 0, 1], &r(1));
        assert_eq!(t, expect);
        assert!(embed_wedge3(&MultiVector::zero(6, Grade::Wedge3)).unwrap().is_zero());

        let w2 = MultiVector::basis(6, Grade::Wedge3, &[0, 1, 5]);
        let combo = w.scale(&r(2)).sub(&w2).unwrap();
        let lhs = embed_wedge3(&combo).unwrap();
        let rhs = t.scale(&r(2)).sub(&embed_wedge3(&w2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(embed_wedge3(&MultiVector::zero(6, Grade::Wedge2)).is_err());
    }

    #[test]
    fn action_examples() {
        let h = SymplecticLattice::new(2).unwrap();
        let x = wedge(&[h.ep(0), h.e(1)]).unwrap();
        assert_eq!(act(&SpMatrix::identity(h), &x).unwrap(), x);
        let t = transvection(&h, &h.e(0), 1).unwrap();
        let moved = act(&t, &x).unwrap();
        let expect = wedge(&[ivec(&[1, 0, 1, 0]), h.e(1)]).unwrap();
        assert_eq!(moved, expect);
    }

    #[test]
    fn quotient_examples() {
        let h = SymplecticLattice::new(2).unwrap();
        let l = h.standard_plus();
        let x = wedge(&[h.e(0), h.ep(0)]).unwrap();
        assert!(quotient_mod_l(&x, &l).unwrap().is_zero());
        let y = wedge(&[h.ep(0), h.ep(1)]).unwrap();
        assert_eq!(quotient_mod_l(&y, &l).unwrap(), MultiVector::basis(2, Grade::Wedge2, &[0, 1]));
        let z = wedge(&[h.e(0), h.e(1)]).unwrap().add(&y).unwrap();
        assert_eq!(quotient_mod_l(&z, &l).unwrap(), MultiVector::basis(2, Grade::Wedge2, &[0, 1]));
        let bad = Sublattice::new(h, vec![h.e(0)]).unwrap();
        assert!(quotient_mod_l(&x, &bad).is_err());
    }

    #[test]
    fn span_examples() {
        let h = SymplecticLattice::new(3).unwrap();
        let l: Vec<IntVec> = (0..3).map(|i| h.e(i)).collect();
        let all: Vec<IntVec> = (0..6).map(|i| h.unit(i)).collect();
        let l_wedge_h = tensor_generators(&l, &wedge2_generators(&all, &all));
        let k = wedge2_generators(&l, &all);
        let x = MultiVector::tensor(&h.e(0), &wedge(&[h.e(1), h.e(2)]).unwrap()).unwrap();
        assert!(in_span(&x, &l_wedge_h).unwrap());
        assert!(in_span(&l_wedge_h[3], &l_wedge_h).unwrap());
        let mut gens = l_wedge_h.clone();
        gens.extend(tensor_generators(&all, &k));
        let y = MultiVector::tensor(&h.ep(0), &wedge(&[h.ep(1), h.ep(2)]).unwrap()).unwrap();
        assert!(!in_span(&y, &gens).unwrap());
        assert!(in_span(&y, &[MultiVector::zero(6, Grade::Wedge2)]).is_err());
    }

    #[test]
    fn embedding_injective_small() {
        for g in 1..=4 {
            let n = 2 * g;
            let images: Vec<MultiVector> = (0..n)
                .combinations(3)
                .map(|c| embed_wedge3(&MultiVector::basis(n, Grade::Wedge3, &c)).unwrap())
                .collect();
            assert_eq!(span_rank(n, Grade::Tensor12, &images).unwrap(), images.len());
        }
    }

    #[test]
    fn text_round_trip() {
        let mut x = MultiVector::zero(6, Grade::Tensor12);
        x.add_basis(&[0, 1, 2], &r(1));
        x.add_basis(&[3, 5, 4], &Rat::new(Int::from(1), Int::from(2)));
        let s = x.to_string();
        assert_eq!(s.parse::<MultiVector>().unwrap(), x);
        let w = wedge(&[ivec(&[1, 2, 0, 0]), ivec(&[0, -1, 3, 0])]).unwrap();
        assert_eq!(w.to_string().parse::<MultiVector>().unwrap(), w);
        let z = MultiVector::zero(4, Grade::Wedge2);
        assert_eq!(z.to_string(), "wedge2 dim=4: 0");
        assert_eq!(z.to_string().parse::<MultiVector>().unwrap(), z);
        assert!("wedge2 dim=4: 1 * 1|2^3".parse::<MultiVector>().is_err());
        assert!("wedge2 dim=4: 1 * 1^9".parse::<MultiVector>().is_err());
    }
}
