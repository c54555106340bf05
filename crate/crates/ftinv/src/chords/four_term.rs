//! The three 4-term relations as rewriting moves.
//!
//! A moving endpoint `a` sits next to endpoint `b` of a fixed chord whose
//! other endpoint `c` lies on the same circle. Writing `A_x` (`B_x`) for the
//! diagram with `a` just before (after) `x`,
//! `A_b - B_b + A_c - B_c = 0`,
//! which is `s - n = e - w` with `s = A_b, e = B_b, n = B_c, w = A_c`.
//! When the fixed and moving chords together touch two or three circles
//! (versions 2 and 3), the relation picks up `+ E1' - E2'`: `E1'` drops the
//! moving chord, `E2'` drops both, and each carries one extra blink mark.

use super::{ChordDiagram, DiagramSum, Endpoint};
use crate::intmat::Rat;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermKind {
    /// The moving endpoint on the other side of the same fixed endpoint.
    Swapped,
    /// The moving endpoint carried to the other fixed endpoint.
    Carried,
    /// A blink error term.
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourTermTerm {
    pub diagram: ChordDiagram,
    pub sign: i32,
    pub kind: TermKind,
}

/// `d` rewritten as a signed list of terms `[n, e, w]` (signs `+, +, -`)
/// followed, for versions 2 and 3, by `[E1', E2']`.
///
/// The moving endpoint must be adjacent to an endpoint of `fixed`; when both
/// neighbours qualify, the following one is used.
pub fn four_term_expansion(d: &ChordDiagram, fixed: usize, moving: Endpoint, version: u8) -> Result<Vec<FourTermTerm>> {
    if !(1..=3).contains(&version) {
        return Err(Error::Invalid(format!("4T version must be 1, 2 or 3, got {version}")));
    }
    if fixed >= d.num_chords() {
        return Err(Error::Invalid(format!("unknown chord {}", fixed + 1)));
    }
    let mc = d
        .chord_at(moving)
        .ok_or_else(|| Error::Invalid(format!("no endpoint at {}:{}", moving.circle + 1, moving.slot + 1)))?;
    if mc == fixed {
        return Err(Error::pre("moving endpoint belongs to the fixed chord"));
    }
    let circle = &d.circles()[moving.circle];
    let fixed_slots: Vec<usize> = (0..circle.len()).filter(|&i| circle[i] == fixed).collect();
    if fixed_slots.len() != 2 {
        return Err(Error::pre("the fixed chord needs both endpoints on the moving endpoint's circle"));
    }
    let len = circle.len();
    let (next, prev) = ((moving.slot + 1) % len, (moving.slot + len - 1) % len);
    let (b, before) = if circle[next] == fixed {
        (next, true)
    } else if circle[prev] == fixed {
        (prev, false)
    } else {
        return Err(Error::pre("moving endpoint is not adjacent to the fixed chord"));
    };
    let c = if fixed_slots[0] == b { fixed_slots[1] } else { fixed_slots[0] };
    let mut touched = d.circles_of(fixed);
    touched.extend(d.circles_of(mc));
    touched.sort_unstable();
    touched.dedup();
    if touched.len() != version as usize {
        return Err(Error::Incompatible(format!(
            "configuration touches {} circles, so it is version {}",
            touched.len(),
            touched.len()
        )));
    }
    Ok(expand(d, fixed, moving, b, c, before))
}

/// The rewrite of `d`, where the moving endpoint sits just before
/// (`before`) or just after fixed endpoint `b`, and `c` is the other one.
pub(crate) fn expand(d: &ChordDiagram, fixed: usize, moving: Endpoint, b: usize, c: usize, before: bool) -> Vec<FourTermTerm> {
    let (ci, a) = (moving.circle, moving.slot);
    let term = |diagram, sign, kind| FourTermTerm { diagram, sign, kind };
    let mut out = vec![
        term(d.moved(ci, a, c, before), 1, TermKind::Carried),
        term(d.moved(ci, a, b, before), 1, TermKind::Swapped),
        term(d.moved(ci, a, c, !before), -1, TermKind::Carried),
    ];
    let mc = d.circles()[ci][a];
    let mut touched = d.circles_of(fixed);
    touched.extend(d.circles_of(mc));
    touched.sort_unstable();
    touched.dedup();
    if touched.len() > 1 {
        let sigma = if before { 1 } else { -1 };
        let marks = d.marks() + 1;
        out.push(term(d.without(&[mc]).with_marks(marks), sigma, TermKind::Error));
        out.push(term(d.without(&[mc, fixed]).with_marks(marks), -sigma, TermKind::Error));
    }
    out
}

/// The expansion of `d` as a diagram sum.
pub fn four_term(d: &ChordDiagram, fixed: usize, moving: Endpoint, version: u8) -> Result<DiagramSum> {
    let mut s = DiagramSum::new();
    for t in four_term_expansion(d, fixed, moving, version)? {
        s.add_term(&t.diagram, Rat::from_integer(t.sign.into()));
    }
    Ok(s)
}
