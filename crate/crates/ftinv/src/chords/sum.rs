use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{canonicalize, ChordDiagram};
use crate::intmat::Rat;
use crate::par::Exec;

/// Rational linear combination of chord diagrams, keyed by canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagramSum {
    terms: BTreeMap<ChordDiagram, Rat>,
}

impl DiagramSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(d: &ChordDiagram) -> Self {
        let mut s = Self::new();
        s.add_term(d, Rat::one());
        s
    }

    pub fn add_term(&mut self, d: &ChordDiagram, c: Rat) {
        self.add_canonical(canonicalize(d), c);
    }

    fn add_canonical(&mut self, d: ChordDiagram, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(d) {
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

    /// Canonicalizes in parallel, then merges in input order, so the result
    /// does not depend on the execution mode.
    pub fn from_terms(exec: Exec, terms: &[(ChordDiagram, Rat)]) -> Self {
        let canon = exec.map(terms, |(d, c)| (canonicalize(d), c.clone()));
        let mut s = Self::new();
        for (d, c) in canon {
            s.add_canonical(d, c);
        }
        s
    }

    pub fn add(&self, other: &DiagramSum) -> DiagramSum {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_canonical(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &DiagramSum) -> DiagramSum {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, k: &Rat) -> DiagramSum {
        let mut out = Self::new();
        for (d, c) in &self.terms {
            out.add_canonical(d.clone(), c * k);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ChordDiagram, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &ChordDiagram) -> Rat {
        self.terms.get(&canonicalize(d)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coefficient_sum(&self) -> Rat {
        self.terms.values().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotations_merge() {
        let a = ChordDiagram::from_word(&[0, 1, 0, 1]).unwrap();
        let b = ChordDiagram::from_word(&[1, 0, 1, 0]).unwrap();
        let p = ChordDiagram::from_word(&[0, 0, 1, 1]).unwrap();
        let mut s = DiagramSum::single(&a);
        s.add_term(&b, Rat::from_integer(2.into()));
        s.add_term(&p, -Rat::one());
        assert_eq!(s.len(), 2);
        assert_eq!(s.coefficient(&b), Rat::from_integer(3.into()));
        assert_eq!(s.coefficient_sum(), Rat::from_integer(2.into()));
        assert!(s.sub(&s).is_empty());
        let terms = vec![(a.clone(), Rat::one()), (p.clone(), Rat::one()), (b, -Rat::one())];
        assert_eq!(
            DiagramSum::from_terms(Exec::Parallel, &terms),
            DiagramSum::from_terms(Exec::Sequential, &terms)
        );
        assert_eq!(DiagramSum::from_terms(Exec::Parallel, &terms), DiagramSum::single(&p));
    }
}
