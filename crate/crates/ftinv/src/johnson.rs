//! Difference-action calculus for symplectic maps that fix a Lagrangian `L`
//! pointwise and move everything into `L`: the three-term expansions of
//! `(λ-1)` on `H ⊗ Λ²H` and `Λ³H`, the iterated value on `Λ³H`, and the
//! target subspaces of the lower-central-series containments.

use num_traits::Zero;

use crate::exterior::{multilinear, tensor_generators, wedge2_generators, Grade, MultiVector, MvSpan};
use crate::intmat::{IntMatrix, IntVec};
use crate::symplectic::{compose, is_lagrangian, SpMatrix, Sublattice, SymplecticLattice};
use crate::{check_dim, Error, Result};

/// A pair `(L, λ)` with `λ|L = id` and `(λ - 1)H ⊆ L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LbarElement {
    l: Sublattice,
    m: SpMatrix,
    delta: IntMatrix,
}

impl LbarElement {
    pub fn new(l: Sublattice, m: SpMatrix) -> Result<Self> {
        check_dim(l.lattice().rank(), m.lattice().rank())?;
        if !is_lagrangian(&l) {
            return Err(Error::pre("L must be a Lagrangian"));
        }
        let n = l.lattice().rank();
        let delta = m.matrix().sub(&IntMatrix::identity(n));
        for v in l.basis() {
            if !delta.mul_vec(v).iter().all(Zero::is_zero) {
                return Err(Error::pre("matrix does not restrict to the identity on L"));
            }
        }
        for j in 0..n {
            if !l.contains(&delta.col(j)) {
                return Err(Error::pre("(matrix - I) does not map H into L"));
            }
        }
        Ok(LbarElement { l, m, delta })
    }

    /// `L = span(e)` with `λ = [[I, C], [0, I]]`.
    pub fn standard(lattice: SymplecticLattice, c: &IntMatrix) -> Result<Self> {
        LbarElement::new(lattice.standard_plus(), SpMatrix::upper(lattice, c)?)
    }

    /// Transport by `p`: `(p L, p λ p⁻¹)`.
    pub fn conjugate(&self, p: &SpMatrix) -> Result<Self> {
        let lat = self.l.lattice();
        let l = Sublattice::new(lat, self.l.basis().iter().map(|v| p.apply(v)).collect::<Result<_>>()?)?;
        let m = compose(&compose(p, &self.m)?, &p.inverse())?;
        LbarElement::new(l, m)
    }

    pub fn lagrangian(&self) -> &Sublattice {
        &self.l
    }

    pub fn matrix(&self) -> &SpMatrix {
        &self.m
    }

    /// `λ - 1` as a matrix.
    pub fn delta(&self) -> &IntMatrix {
        &self.delta
    }

    fn dim(&self) -> usize {
        self.delta.nrows()
    }
}

fn images(el: &LbarElement) -> (Vec<IntVec>, Vec<IntVec>) {
    let n = el.dim();
    let lam = (0..n).map(|j| el.m.matrix().col(j)).collect();
    let del = (0..n).map(|j| el.delta.col(j)).collect();
    (lam, del)
}

fn unit(n: usize, i: usize) -> IntVec {
    let mut v = vec![num_bigint::BigInt::zero(); n];
    v[i] = 1.into();
    v
}

// Σ over terms of Σ_patterns Π slot images, where each pattern picks, per
// slot, identity / λ / (λ-1).
#[derive(Clone, Copy)]
enum Slot {
    Id,
    Lam,
    Del,
}

fn expand(el: &LbarElement, x: &MultiVector, patterns: &[[Slot; 3]]) -> MultiVector {
    let n = el.dim();
    let (lam, del) = images(el);
    let mut out = MultiVector::zero(n, x.grade());
    for (key, c) in x.terms() {
        for pat in patterns {
            let slots: Vec<IntVec> = key
                .iter()
                .zip(pat)
                .map(|(&i, s)| match s {
                    Slot::Id => unit(n, i),
                    Slot::Lam => lam[i].clone(),
                    Slot::Del => del[i].clone(),
                })
                .collect();
            out.add_scaled(&multilinear(n, x.grade(), &slots), c).expect("same grade");
        }
    }
    out
}

/// `(λ-1)(a ⊗ a₁∧a₂) = (λ-1)a ⊗ λa₁∧λa₂ + a ⊗ (λ-1)a₁∧λa₂ + a ⊗ a₁∧(λ-1)a₂`.
pub fn lmo_delta(el: &LbarElement, x: &MultiVector) -> Result<MultiVector> {
    x.require_grade(Grade::Tensor12)?;
    check_dim(el.dim(), x.dim())?;
    use Slot::*;
    Ok(expand(el, x, &[[Del, Lam, Lam], [Id, Del, Lam], [Id, Id, Del]]))
}

/// `(λ-1)(a₁∧a₂∧a₃) = (λ-1)a₁∧λa₂∧λa₃ + a₁∧(λ-1)a₂∧λa₃ + a₁∧a₂∧(λ-1)a₃`.
pub fn lmo1_delta(el: &LbarElement, w: &MultiVector) -> Result<MultiVector> {
    w.require_grade(Grade::Wedge3)?;
    check_dim(el.dim(), w.dim())?;
    use Slot::*;
    Ok(expand(el, w, &[[Del, Lam, Lam], [Id, Del, Lam], [Id, Id, Del]]))
}

/// `(λ-1)³` on `Λ³H`; on `a₁∧a₂∧a₃` this is `6·(λ-1)a₁∧(λ-1)a₂∧(λ-1)a₃`.
pub fn triple_commutator_tau(el: &LbarElement, w: &MultiVector) -> Result<MultiVector> {
    let once = lmo1_delta(el, w)?;
    let twice = lmo1_delta(el, &once)?;
    lmo1_delta(el, &twice)
}

/// Target subspaces of `H ⊗ Λ²H` for a Lagrangian `L`, with `K = L ∧ H`:
///
/// * level 2: `L⊗Λ²H + H⊗K`
/// * level 3: `L⊗K + H⊗Λ²L`
/// * level 4: `L⊗Λ²L`
/// * level 5: `0`
#[derive(Clone, Debug)]
pub struct FiltrationTargets {
    dim: usize,
    levels: [MvSpan; 3],
}

impl FiltrationTargets {
    pub fn new(l: &Sublattice) -> Result<Self> {
        if !is_lagrangian(l) {
            return Err(Error::pre("L must be a Lagrangian"));
        }
        let n = l.lattice().rank();
        let lb = l.basis().to_vec();
        let hb: Vec<IntVec> = (0..n).map(|i| unit(n, i)).collect();
        let wedge_h = wedge2_generators(&hb, &hb);
        let k = wedge2_generators(&lb, &hb);
        let wedge_l = wedge2_generators(&lb, &lb);
        let span = |parts: Vec<Vec<MultiVector>>| MvSpan::new(n, Grade::Tensor12, &parts.concat());
        let levels = [
            span(vec![tensor_generators(&lb, &wedge_h), tensor_generators(&hb, &k)])?,
            span(vec![tensor_generators(&lb, &k), tensor_generators(&hb, &wedge_l)])?,
            span(vec![tensor_generators(&lb, &wedge_l)])?,
        ];
        Ok(FiltrationTargets { dim: n, levels })
    }

    pub fn contains(&self, level: usize, x: &MultiVector) -> Result<bool> {
        x.require_grade(Grade::Tensor12)?;
        check_dim(self.dim, x.dim())?;
        match level {
            2..=4 => self.levels[level - 2].contains(x),
            5 => Ok(x.is_zero()),
            _ => Err(Error::Invalid(format!("filtration level must be in 2..=5, got {level}"))),
        }
    }

    pub fn rank(&self, level: usize) -> Option<usize> {
        match level {
            2..=4 => Some(self.levels[level - 2].rank()),
            5 => Some(0),
            _ => None,
        }
    }
}

pub fn filtration_containment(level: usize, x: &MultiVector, l: &Sublattice) -> Result<bool> {
    if !(2..=5).contains(&level) {
        return Err(Error::Invalid(format!("filtration level must be in 2..=5, got {level}")));
    }
    FiltrationTargets::new(l)?.contains(level, x)
}
