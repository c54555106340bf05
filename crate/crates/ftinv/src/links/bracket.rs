//! Surgery brackets as formal sums of opaque descriptors. A descriptor is a
//! manifold label together with the set of handles surged on it; the
//! engine never decides diffeomorphism type, so identities here are
//! identities of descriptors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use super::blink::{blink_linking_matrix, BlinkPresentation, FramedLink};
use crate::intmat::Rat;
use crate::par::Exec;
use crate::{Error, Result};

/// A link component or a blink pair (zero-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Handle {
    Link(usize),
    Pair(usize),
}

impl fmt::Display for Handle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Handle::Link(i) => write!(f, "{}", i + 1),
            Handle::Pair(p) => write!(f, "p{}", p + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Descriptor {
    pub manifold: String,
    pub surged: BTreeSet<Handle>,
}

impl Descriptor {
    pub fn new(manifold: &str) -> Self {
        Descriptor {
            manifold: manifold.to_string(),
            surged: BTreeSet::new(),
        }
    }

    /// The manifold obtained by additionally surging `h`.
    pub fn surge(&self, h: Handle) -> Self {
        let mut d = self.clone();
        d.surged.insert(h);
        d
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hs: Vec<String> = self.surged.iter().map(|h| h.to_string()).collect();
        write!(f, "({},{{{}}})", self.manifold, hs.join(","))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<Descriptor, Rat>,
}

impl FormalSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(d: Descriptor, c: Rat) -> Self {
        let mut s = Self::new();
        s.add_term(d, c);
        s
    }

    pub fn add_term(&mut self, d: Descriptor, c: Rat) {
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

    pub fn add(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), -c);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Descriptor, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &Descriptor) -> Rat {
        self.terms.get(d).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coefficient_sum(&self) -> Rat {
        self.terms.values().sum()
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(d, c)| format!("{c}*{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Largest number of handles a bracket is expanded over.
pub const MAX_HANDLES: usize = 24;

/// `Σ_{S ⊆ handles} (-1)^{|S|} (base ∪ S)`; every handle (component or
/// pair) contributes one sign flip.
pub fn bracket_handles(exec: Exec, base: &Descriptor, handles: &[Handle]) -> Result<FormalSum> {
    if handles.len() > MAX_HANDLES {
        return Err(Error::Invalid(format!("too many handles ({}) to expand", handles.len())));
    }
    let terms = exec.map_range(1usize << handles.len(), |mask| {
        let mut d = base.clone();
        for (i, h) in handles.iter().enumerate() {
            if mask >> i & 1 == 1 {
                d.surged.insert(*h);
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { Rat::one() } else { -Rat::one() };
        (d, sign)
    });
    let mut out = FormalSum::new();
    for (d, c) in terms {
        out.add_term(d, c);
    }
    Ok(out)
}

fn link_handles(link: &FramedLink) -> Result<Vec<Handle>> {
    if !link.is_as_admissible() {
        return Err(Error::pre("link must be algebraically split and unit framed"));
    }
    Ok((0..link.components()).map(Handle::Link).collect())
}

fn blink_handles(b: &BlinkPresentation) -> Result<Vec<Handle>> {
    blink_linking_matrix(b)?;
    Ok((0..b.num_pairs()).map(Handle::Pair).collect())
}

/// `[M, L]` for an AS-admissible link.
pub fn bracket_expand_link(exec: Exec, base: &str, link: &FramedLink) -> Result<FormalSum> {
    bracket_handles(exec, &Descriptor::new(base), &link_handles(link)?)
}

/// `[M, L_bl]` for a BL-admissible blink; signs count pairs.
pub fn bracket_expand_blink(exec: Exec, base: &str, b: &BlinkPresentation) -> Result<FormalSum> {
    bracket_handles(exec, &Descriptor::new(base), &blink_handles(b)?)
}

/// Both sides of `[M, L_bl ∪ L] = [M, L'_bl ∪ L'] - [M_l, L'_bl ∪ L']`,
/// where `l` is removed from whichever of `L`, `L_bl` contains it.
pub fn fundamental_relation(
    exec: Exec,
    base: &str,
    blink: &BlinkPresentation,
    link: &FramedLink,
    l: Handle,
) -> Result<(FormalSum, FormalSum)> {
    let mut handles = blink_handles(blink)?;
    handles.extend(link_handles(link)?);
    if !handles.contains(&l) {
        return Err(Error::pre(format!("handle {l} is not part of the link or blink")));
    }
    let m = Descriptor::new(base);
    let left = bracket_handles(exec, &m, &handles)?;
    let rest: Vec<Handle> = handles.into_iter().filter(|&h| h != l).collect();
    let right = bracket_handles(exec, &m, &rest)?.sub(&bracket_handles(exec, &m.surge(l), &rest)?);
    Ok((left, right))
}
