//! The symplectic lattice `H = Z^{2g}` with basis `e_1..e_g, e'_1..e'_g`,
//! its Lagrangians, transvections and the upper-unitriangular block calculus.
//!
//! Coordinates are fixed: index `i < g` is `e_{i+1}`, index `g + i` is
//! `e'_{i+1}`. Matrices act on column vectors.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::intmat::{
    content, hermite_rows, integer_kernel, is_zero_vec, saturate, unimodular_complement, Int, IntMatrix,
    IntVec, SpanBasis,
};
use crate::{check_dim, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticLattice {
    genus: usize,
}

impl SymplecticLattice {
    pub fn new(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::Invalid("genus must be positive".into()));
        }
        Ok(SymplecticLattice { genus })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    /// `e_{i+1}` (zero-based index).
    pub fn e(&self, i: usize) -> IntVec {
        self.unit(i)
    }

    /// `e'_{i+1}` (zero-based index).
    pub fn ep(&self, i: usize) -> IntVec {
        self.unit(self.genus + i)
    }

    pub fn unit(&self, k: usize) -> IntVec {
        assert!(k < self.rank(), "basis index out of range");
        let mut v = vec![Int::zero(); self.rank()];
        v[k] = Int::one();
        v
    }

    pub fn zero(&self) -> IntVec {
        vec![Int::zero(); self.rank()]
    }

    /// The Gram matrix `J`: `J[i][g+i] = 1`, `J[g+i][i] = -1`.
    pub fn pairing_matrix(&self) -> IntMatrix {
        let g = self.genus;
        let mut j = IntMatrix::zeros(2 * g, 2 * g);
        for i in 0..g {
            j[(i, g + i)] = Int::one();
            j[(g + i, i)] = -Int::one();
        }
        j
    }

    pub fn pairing(&self, u: &[Int], v: &[Int]) -> Result<Int> {
        check_dim(self.rank(), u.len())?;
        check_dim(self.rank(), v.len())?;
        Ok(self.pair(u, v))
    }

    // unchecked <u, v> = Σ u_i v'_i - u'_i v_i
    pub(crate) fn pair(&self, u: &[Int], v: &[Int]) -> Int {
        let g = self.genus;
        (0..g).map(|i| &u[i] * &v[g + i] - &u[g + i] * &v[i]).sum()
    }

    /// `span(e_1..e_g)`.
    pub fn standard_plus(&self) -> Sublattice {
        Sublattice::new(*self, (0..self.genus).map(|i| self.e(i)).collect()).expect("valid")
    }

    /// `span(e'_1..e'_g)`.
    pub fn standard_minus(&self) -> Sublattice {
        Sublattice::new(*self, (0..self.genus).map(|i| self.ep(i)).collect()).expect("valid")
    }

    pub(crate) fn check_vec(&self, v: &[Int]) -> Result<()> {
        check_dim(self.rank(), v.len())
    }
}

/// A saturated sublattice, stored by the canonical Hermite basis of its
/// saturation. `direct_summand` records whether the original generators
/// already spanned that saturation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sublattice {
    lattice: SymplecticLattice,
    basis: Vec<IntVec>,
    direct_summand: bool,
}

impl Sublattice {
    pub fn new(lattice: SymplecticLattice, generators: Vec<IntVec>) -> Result<Self> {
        for v in &generators {
            lattice.check_vec(v)?;
        }
        let n = lattice.rank();
        let basis = saturate(&generators, n);
        let direct_summand = hermite_rows(&generators, n) == basis;
        Ok(Sublattice {
            lattice,
            basis,
            direct_summand,
        })
    }

    pub fn lattice(&self) -> SymplecticLattice {
        self.lattice
    }

    pub fn basis(&self) -> &[IntVec] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_direct_summand(&self) -> bool {
        self.direct_summand
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        v.len() == self.lattice.rank() && SpanBasis::from_vectors(v.len(), &self.basis).contains(v)
    }

    pub fn is_isotropic(&self) -> bool {
        pairing_vanishes(&self.lattice, &self.basis)
    }

    /// Integer coordinates of `v` in the stored basis, if `v` lies in it.
    pub fn coords(&self, v: &[Int]) -> Option<IntVec> {
        coords_in_echelon(&self.basis, v)
    }

    pub fn intersect(&self, other: &Sublattice) -> Result<Sublattice> {
        check_dim(self.lattice.rank(), other.lattice.rank())?;
        let n = self.lattice.rank();
        let (a, b) = (&self.basis, &other.basis);
        if a.is_empty() || b.is_empty() {
            return Sublattice::new(self.lattice, Vec::new());
        }
        // x^T A = y^T B  <=>  [A^T | -B^T] (x, y) = 0
        let mut m = IntMatrix::zeros(n, a.len() + b.len());
        for (i, r) in a.iter().enumerate() {
            for c in 0..n {
                m[(c, i)] = r[c].clone();
            }
        }
        for (j, r) in b.iter().enumerate() {
            for c in 0..n {
                m[(c, a.len() + j)] = -&r[c];
            }
        }
        let gens = integer_kernel(&m)
            .into_iter()
            .map(|xy| combine(&xy[..a.len()], a, n))
            .collect();
        Sublattice::new(self.lattice, gens)
    }

    /// Lattice sum; the result's `direct_summand` flag tells whether the sum
    /// was already saturated.
    pub fn sum(&self, other: &Sublattice) -> Result<Sublattice> {
        check_dim(self.lattice.rank(), other.lattice.rank())?;
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Sublattice::new(self.lattice, gens)
    }

    pub fn to_text(&self) -> String {
        rows_to_text(self.lattice.genus, &self.basis)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (g, rows) = rows_from_text(text)?;
        Sublattice::new(SymplecticLattice::new(g)?, rows)
    }
}

fn combine(coeffs: &[Int], rows: &[IntVec], n: usize) -> IntVec {
    let mut v = vec![Int::zero(); n];
    for (c, r) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (x, y) in v.iter_mut().zip(r) {
            *x += c * y;
        }
    }
    v
}

// Solve Σ x_i rows_i = v for rows in row-echelon form.
fn coords_in_echelon(rows: &[IntVec], v: &[Int]) -> Option<IntVec> {
    let mut rest = v.to_vec();
    let mut x = Vec::with_capacity(rows.len());
    for r in rows {
        let p = r.iter().position(|a| !a.is_zero())?;
        if !(&rest[p] % &r[p]).is_zero() {
            return None;
        }
        let q = &rest[p] / &r[p];
        for (a, b) in rest.iter_mut().zip(r) {
            *a -= &q * b;
        }
        x.push(q);
    }
    is_zero_vec(&rest).then_some(x)
}

pub fn is_lagrangian(s: &Sublattice) -> bool {
    s.rank() == s.lattice.genus && s.direct_summand && s.is_isotropic()
}

fn are_complementary(a: &Sublattice, b: &Sublattice) -> bool {
    let n = a.lattice.rank();
    if a.rank() + b.rank() != n {
        return false;
    }
    let mut rows = a.basis.clone();
    rows.extend(b.basis.iter().cloned());
    IntMatrix::from_rows(&rows, n)
        .determinant()
        .is_some_and(|d| d.abs().is_one())
}

fn check_triple(l: &Sublattice, lplus: &Sublattice, lminus: &Sublattice) -> Result<()> {
    check_dim(l.lattice.rank(), lplus.lattice.rank())?;
    check_dim(l.lattice.rank(), lminus.lattice.rank())?;
    for (name, s) in [("L", l), ("L+", lplus), ("L-", lminus)] {
        if !is_lagrangian(s) {
            return Err(Error::pre(format!("{name} is not a Lagrangian")));
        }
    }
    if !are_complementary(lplus, lminus) {
        return Err(Error::pre("L+ and L- are not complementary"));
    }
    Ok(())
}

/// Whether `L = (L ∩ L+) + (L ∩ L-)` as lattices.
pub fn is_compatible(l: &Sublattice, lplus: &Sublattice, lminus: &Sublattice) -> Result<bool> {
    check_triple(l, lplus, lminus)?;
    let a = l.intersect(lplus)?;
    let b = l.intersect(lminus)?;
    let mut gens = a.basis.clone();
    gens.extend(b.basis.iter().cloned());
    Ok(hermite_rows(&gens, l.lattice.rank()) == l.basis)
}

/// A Lagrangian `L'` with `H = L ⊕ L'` that is itself compatible with
/// `(L+, L-)`: a complement `L'_+` of `L ∩ L+` inside `L+`, plus the part of
/// `L-` annihilated by `L'_+`.
pub fn complementary_lagrangian(l: &Sublattice, lplus: &Sublattice, lminus: &Sublattice) -> Result<Sublattice> {
    if !is_compatible(l, lplus, lminus)? {
        return Err(Error::Incompatible("L is not the sum of its intersections with L+ and L-".into()));
    }
    let lat = l.lattice;
    let n = lat.rank();
    let a = l.intersect(lplus)?;
    let a_coords: Vec<IntVec> = a
        .basis
        .iter()
        .map(|v| lplus.coords(v).expect("intersection lies in L+"))
        .collect();
    let comp_coords = unimodular_complement(&a_coords, lplus.rank());
    let comp_plus: Vec<IntVec> = comp_coords.iter().map(|x| combine(x, &lplus.basis, n)).collect();

    let minus_part: Vec<IntVec> = if comp_plus.is_empty() {
        lminus.basis.clone()
    } else {
        let mut m = IntMatrix::zeros(comp_plus.len(), lminus.rank());
        for (i, p) in comp_plus.iter().enumerate() {
            for (j, q) in lminus.basis.iter().enumerate() {
                m[(i, j)] = lat.pair(q, p);
            }
        }
        integer_kernel(&m)
            .iter()
            .map(|z| combine(z, &lminus.basis, n))
            .collect()
    };
    let mut gens = comp_plus;
    gens.extend(minus_part);
    Sublattice::new(lat, gens)
}

/// Matrix of pairings `⟨λ_i^-, λ_j^+⟩` for classes `(λ^+, λ^-)` with
/// `λ^+ ∈ span(e)`, `λ^- ∈ span(e')`, all lying in one Lagrangian.
pub fn lagrangian_split_linking(lattice: &SymplecticLattice, classes: &[(IntVec, IntVec)]) -> Result<IntMatrix> {
    let g = lattice.genus;
    let mut all = Vec::new();
    for (p, m) in classes {
        lattice.check_vec(p)?;
        lattice.check_vec(m)?;
        if p[g..].iter().any(|x| !x.is_zero()) {
            return Err(Error::pre("lambda+ must lie in L+ = span(e)"));
        }
        if m[..g].iter().any(|x| !x.is_zero()) {
            return Err(Error::pre("lambda- must lie in L- = span(e')"));
        }
        all.push(p.clone());
        all.push(m.clone());
    }
    let span = Sublattice::new(*lattice, all)?;
    if !span.is_isotropic() {
        return Err(Error::pre("classes do not lie in a common Lagrangian"));
    }
    let k = classes.len();
    let mut out = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            out[(i, j)] = lattice.pair(&classes[i].1, &classes[j].0);
        }
    }
    Ok(out)
}

/// An element of `Sp(2g, Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpMatrix {
    lattice: SymplecticLattice,
    m: IntMatrix,
}

impl SpMatrix {
    pub fn new(lattice: SymplecticLattice, m: IntMatrix) -> Result<Self> {
        check_dim(lattice.rank(), m.nrows())?;
        check_dim(lattice.rank(), m.ncols())?;
        let j = lattice.pairing_matrix();
        if &(&m.transpose() * &j) * &m != j {
            return Err(Error::Invalid("matrix is not symplectic".into()));
        }
        Ok(SpMatrix { lattice, m })
    }

    pub fn identity(lattice: SymplecticLattice) -> Self {
        SpMatrix {
            lattice,
            m: IntMatrix::identity(lattice.rank()),
        }
    }

    /// `[[I, C], [0, I]]` for symmetric `C`.
    pub fn upper(lattice: SymplecticLattice, c: &IntMatrix) -> Result<Self> {
        let g = lattice.genus;
        check_dim(g, c.nrows())?;
        if !c.is_symmetric() {
            return Err(Error::Invalid("block C must be symmetric".into()));
        }
        let mut m = IntMatrix::identity(2 * g);
        m.set_block(0, g, c);
        Ok(SpMatrix { lattice, m })
    }

    pub fn lattice(&self) -> SymplecticLattice {
        self.lattice
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    /// The block `C` if the matrix has the form `[[I, C], [0, I]]`.
    pub fn upper_block(&self) -> Option<IntMatrix> {
        let g = self.lattice.genus;
        let id = IntMatrix::identity(g);
        let ok = self.m.block(0, 0, g, g) == id
            && self.m.block(g, g, g, g) == id
            && self.m.block(g, 0, g, g).is_zero();
        ok.then(|| self.m.block(0, g, g, g))
    }

    pub fn apply(&self, v: &[Int]) -> Result<IntVec> {
        self.lattice.check_vec(v)?;
        Ok(self.m.mul_vec(v))
    }

    /// `-J M^T J`.
    pub fn inverse(&self) -> SpMatrix {
        let j = self.lattice.pairing_matrix();
        let inv = (&(&j * &self.m.transpose()) * &j).scale(&-Int::one());
        SpMatrix {
            lattice: self.lattice,
            m: inv,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.m == IntMatrix::identity(self.lattice.rank())
    }

    pub fn to_text(&self) -> String {
        rows_to_text(self.lattice.genus, &self.m.to_rows())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (g, rows) = rows_from_text(text)?;
        let lat = SymplecticLattice::new(g)?;
        check_dim(2 * g, rows.len())?;
        SpMatrix::new(lat, IntMatrix::from_rows(&rows, 2 * g))
    }
}

pub fn compose(a: &SpMatrix, b: &SpMatrix) -> Result<SpMatrix> {
    check_dim(a.lattice.rank(), b.lattice.rank())?;
    Ok(SpMatrix {
        lattice: a.lattice,
        m: &a.m * &b.m,
    })
}

/// `x ↦ x + sign·⟨v, x⟩·v`. For `v = Σ λ_i e_i` this is `[[I, C], [0, I]]`
/// with `C = sign·λλᵀ`.
pub fn transvection(lattice: &SymplecticLattice, v: &[Int], sign: i32) -> Result<SpMatrix> {
    lattice.check_vec(v)?;
    if is_zero_vec(v) {
        return Err(Error::Invalid("transvection vector is zero".into()));
    }
    if !content(v).is_one() {
        return Err(Error::Invalid("transvection vector is not primitive".into()));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::Invalid("sign must be +1 or -1".into()));
    }
    let n = lattice.rank();
    let j = lattice.pairing_matrix();
    // row vector vᵀJ gives x ↦ ⟨v, x⟩
    let vj: IntVec = (0..n).map(|c| (0..n).map(|k| &v[k] * &j[(k, c)]).sum()).collect();
    let s = Int::from(sign);
    let mut m = IntMatrix::identity(n);
    for r in 0..n {
        for c in 0..n {
            m[(r, c)] += &s * &v[r] * &vj[c];
        }
    }
    Ok(SpMatrix { lattice: *lattice, m })
}

/// Transvection data `(v, sign)` on vectors `e_i` and `e_i + e_j` whose
/// product is `[[I, C], [0, I]]`. Each pair is one factor; repeated factors
/// are listed repeatedly.
pub fn realize_symmetric(c: &IntMatrix) -> Result<Vec<(IntVec, i32)>> {
    if !c.is_symmetric() {
        return Err(Error::Invalid("C must be square and symmetric".into()));
    }
    let g = c.nrows();
    let basis = |idx: &[usize]| {
        let mut v = vec![Int::zero(); 2 * g];
        for &i in idx {
            v[i] = Int::one();
        }
        v
    };
    let mut out = Vec::new();
    let mut push = |v: IntVec, k: &Int| {
        let sign = if k.is_negative() { -1 } else { 1 };
        let mut n = k.abs();
        while n.is_positive() {
            out.push((v.clone(), sign));
            n -= 1;
        }
    };
    for i in 0..g {
        for j in i + 1..g {
            push(basis(&[i, j]), &c[(i, j)]);
        }
    }
    for i in 0..g {
        let off: Int = (0..g).filter(|&j| j != i).map(|j| c[(i, j)].clone()).sum();
        push(basis(&[i]), &(&c[(i, i)] - off));
    }
    Ok(out)
}

/// Product, in order, of the transvections described by `data`.
pub fn product_of_transvections(lattice: &SymplecticLattice, data: &[(IntVec, i32)]) -> Result<SpMatrix> {
    let mut acc = SpMatrix::identity(*lattice);
    for (v, s) in data {
        acc = compose(&acc, &transvection(lattice, v, *s)?)?;
    }
    Ok(acc)
}

fn rows_to_text(g: usize, rows: &[IntVec]) -> String {
    let mut s = format!("g={g}\n");
    for r in rows {
        let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}

/// Parses a `g=<int>` header followed by rows of `2g` integers.
pub fn rows_from_text(text: &str) -> Result<(usize, Vec<IntVec>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header `g=<int>`"))?;
    let g: usize = header
        .strip_prefix("g=")
        .and_then(|x| x.trim().parse().ok())
        .ok_or_else(|| Error::parse(hl, "expected header `g=<int>`"))?;
    if g == 0 {
        return Err(Error::parse(hl, "genus must be positive"));
    }
    let mut rows = Vec::new();
    for (ln, l) in lines {
        let row: IntVec = l
            .split_whitespace()
            .map(|t| t.parse::<Int>().map_err(|_| Error::parse(ln, format!("bad integer `{t}`"))))
            .collect::<Result<_>>()?;
        if row.len() != 2 * g {
            return Err(Error::parse(ln, format!("expected {} entries, found {}", 2 * g, row.len())));
        }
        rows.push(row);
    }
    Ok((g, rows))
}

pub(crate) fn pairing_vanishes(lattice: &SymplecticLattice, vs: &[IntVec]) -> bool {
    vs.iter()
        .enumerate()
        .all(|(i, u)| vs[i + 1..].iter().all(|v| lattice.pair(u, v).is_zero()))
}
