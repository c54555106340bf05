//! Chord diagrams on one or more external circles, their intersection
//! structure, the 4-term moves and tower reduction.
//!
//! A diagram stores each circle as the cyclic sequence of chord ids met
//! along it. Type I chords have two endpoints (on one circle or on two);
//! type II chords have four, two on each of two distinct circles.

mod canon;
mod format;
mod four_term;
mod mis;
mod sum;
mod tower;

pub use canon::canonicalize;
pub use format::{diagram_to_text, parse_diagram};
pub use four_term::{four_term, four_term_expansion, FourTermTerm, TermKind};
pub use mis::{boundary_degree, independent_set_at_least, max_independent_set, max_noncrossing_on_circle};
pub use sum::DiagramSum;
pub use tower::{multi_tower_reduce, pigeonhole_ok, tower_reduce, MultiTowerConfig, DEFAULT_C};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChordKind {
    I,
    II,
}

/// A slot on a circle (both zero-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub circle: usize,
    pub slot: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordDiagram {
    circles: Vec<Vec<usize>>,
    kinds: Vec<ChordKind>,
    marks: u32,
}

impl ChordDiagram {
    pub fn new(circles: Vec<Vec<usize>>, kinds: Vec<ChordKind>, marks: u32) -> Result<Self> {
        let n = kinds.len();
        let mut per_circle: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (ci, c) in circles.iter().enumerate() {
            for &id in c {
                if id >= n {
                    return Err(Error::Invalid(format!("chord id {} out of range", id + 1)));
                }
                per_circle[id].push(ci);
            }
        }
        for (id, occ) in per_circle.iter().enumerate() {
            let mut counts: Vec<(usize, usize)> = Vec::new();
            for &c in occ {
                match counts.iter_mut().find(|(ci, _)| *ci == c) {
                    Some(e) => e.1 += 1,
                    None => counts.push((c, 1)),
                }
            }
            let ok = match kinds[id] {
                ChordKind::I => occ.len() == 2,
                ChordKind::II => counts.len() == 2 && counts.iter().all(|&(_, k)| k == 2),
            };
            if !ok {
                return Err(Error::Invalid(format!(
                    "chord {} of type {:?} has endpoints on circles {:?}",
                    id + 1,
                    kinds[id],
                    occ.iter().map(|c| c + 1).collect::<Vec<_>>()
                )));
            }
        }
        Ok(ChordDiagram { circles, kinds, marks })
    }

    /// One circle carrying type I chords, read off a Gauss word such as
    /// `[0, 1, 0, 1]`.
    pub fn from_word(word: &[usize]) -> Result<Self> {
        let n = word.iter().map(|&c| c + 1).max().unwrap_or(0);
        ChordDiagram::new(vec![word.to_vec()], vec![ChordKind::I; n], 0)
    }

    pub fn empty(circles: usize) -> Self {
        ChordDiagram {
            circles: vec![Vec::new(); circles],
            kinds: Vec::new(),
            marks: 0,
        }
    }

    pub fn circles(&self) -> &[Vec<usize>] {
        &self.circles
    }

    pub fn kinds(&self) -> &[ChordKind] {
        &self.kinds
    }

    pub fn num_chords(&self) -> usize {
        self.kinds.len()
    }

    pub fn num_circles(&self) -> usize {
        self.circles.len()
    }

    /// Accumulated 1-pair-blink error markers.
    pub fn marks(&self) -> u32 {
        self.marks
    }

    pub fn with_marks(mut self, marks: u32) -> Self {
        self.marks = marks;
        self
    }

    pub fn chord_at(&self, e: Endpoint) -> Option<usize> {
        self.circles.get(e.circle)?.get(e.slot).copied()
    }

    pub fn endpoints(&self, chord: usize) -> Vec<Endpoint> {
        let mut out = Vec::new();
        for (circle, c) in self.circles.iter().enumerate() {
            for (slot, &id) in c.iter().enumerate() {
                if id == chord {
                    out.push(Endpoint { circle, slot });
                }
            }
        }
        out
    }

    /// Distinct circles touched by `chord`, ascending.
    pub fn circles_of(&self, chord: usize) -> Vec<usize> {
        let mut cs: Vec<usize> = self.endpoints(chord).iter().map(|e| e.circle).collect();
        cs.dedup();
        cs
    }

    /// For every chord, its endpoints as `(circle, slot)` in ascending order.
    pub(crate) fn positions(&self) -> Vec<Vec<(usize, usize)>> {
        let mut pos = vec![Vec::new(); self.num_chords()];
        for (ci, c) in self.circles.iter().enumerate() {
            for (slot, &id) in c.iter().enumerate() {
                pos[id].push((ci, slot));
            }
        }
        pos
    }

    fn check_chord(&self, c: usize) -> Result<()> {
        if c >= self.num_chords() {
            return Err(Error::Invalid(format!("unknown chord {}", c + 1)));
        }
        Ok(())
    }

    /// The diagram with the given chords deleted; remaining ids keep their
    /// relative order.
    pub fn without(&self, chords: &[usize]) -> ChordDiagram {
        let mut new_id = vec![usize::MAX; self.num_chords()];
        let mut kinds = Vec::new();
        for (id, &k) in self.kinds.iter().enumerate() {
            if !chords.contains(&id) {
                new_id[id] = kinds.len();
                kinds.push(k);
            }
        }
        let circles = self
            .circles
            .iter()
            .map(|c| c.iter().filter(|&&id| new_id[id] != usize::MAX).map(|&id| new_id[id]).collect())
            .collect();
        ChordDiagram {
            circles,
            kinds,
            marks: self.marks,
        }
    }

    /// Moves the endpoint in slot `from` of `circle` to sit just before
    /// (or just after) the endpoint currently in slot `target`.
    pub(crate) fn moved(&self, circle: usize, from: usize, target: usize, after: bool) -> ChordDiagram {
        let mut out = self.clone();
        let c = &mut out.circles[circle];
        let v = c.remove(from);
        let t = if target < from { target } else { target - 1 };
        c.insert(if after { t + 1 } else { t }, v);
        out
    }
}

fn interleaved(a: (usize, usize), b: (usize, usize)) -> bool {
    let inside = |x: usize| a.0 < x && x < a.1;
    inside(b.0) != inside(b.1)
}

/// Endpoints of one chord on one circle, if it has exactly two there.
fn pair_on(pos: &[(usize, usize)], circle: usize) -> Option<(usize, usize)> {
    let mut it = pos.iter().filter(|p| p.0 == circle).map(|p| p.1);
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Some((a.min(b), a.max(b))),
        _ => None,
    }
}

pub(crate) fn crossing(pa: &[(usize, usize)], pb: &[(usize, usize)]) -> bool {
    let mut circles: Vec<usize> = pa.iter().map(|p| p.0).collect();
    circles.dedup();
    circles.into_iter().any(|c| match (pair_on(pa, c), pair_on(pb, c)) {
        (Some(a), Some(b)) => interleaved(a, b),
        _ => false,
    })
}

/// Whether two chords meet some common circle in the cyclic order `1212`.
pub fn chords_intersect(d: &ChordDiagram, c1: usize, c2: usize) -> Result<bool> {
    d.check_chord(c1)?;
    d.check_chord(c2)?;
    if c1 == c2 {
        return Err(Error::pre("chords must be distinct"));
    }
    let pos = d.positions();
    Ok(crossing(&pos[c1], &pos[c2]))
}

/// Adjacency lists of the intersection graph.
pub(crate) fn intersection_graph(d: &ChordDiagram) -> Vec<Vec<usize>> {
    let pos = d.positions();
    let n = d.num_chords();
    let mut adj = vec![Vec::new(); n];
    for a in 0..n {
        for b in a + 1..n {
            if crossing(&pos[a], &pos[b]) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
    }
    adj
}
