//! Tower reduction: rewriting a diagram with many chords, via 4-term moves,
//! into a combination of `m`-boundary diagrams (or diagrams carrying at
//! least `m` blink marks).
//!
//! On a circle, let `T` be a largest non-crossing set of chords. Its
//! endpoints cut the circle into arcs, and every other chord joins two
//! different arcs. Pigeonhole gives two arcs `α`, `β` joined by at least
//! `t` chords; `t` of them are declared special. Specials are untangled one
//! adjacent crossing at a time: endpoints of other chords lying between two
//! crossing specials in `α` are pushed out by a 4-term move around the
//! special chord, and adjacent crossing specials are swapped by a 4-term
//! move around one of them. Side terms either leave `α` with one endpoint
//! fewer or put a chord inside a single arc, which enlarges `T`; this
//! ordering makes the rewriting terminate.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::four_term::{expand, TermKind};
use super::{independent_set_at_least, max_noncrossing_on_circle, ChordDiagram, DiagramSum, Endpoint};
use crate::intmat::Rat;
use crate::par::Exec;
use crate::{Error, Result};

/// Default constant `c` in the chord bound `c·m³`; the least value for
/// which the pigeonhole inequality holds for every `m`.
pub const DEFAULT_C: u64 = 2;

/// Upper bound on work items processed by one reduction.
const MAX_ITEMS: usize = 2_000_000;

/// `c·m³ - (m-1) > C(2(m-1), 2)·(m-1) + 1`.
pub fn pigeonhole_ok(m: u64, c: u64) -> bool {
    let (m, c) = (BigInt::from(m), BigInt::from(c));
    let k = &m - 1;
    let pairs = &k * (2 * &k - 1);
    c * &m * &m * &m - &k > pairs * &k + 1
}

/// Constants of the multi-circle reduction: `h(m) = c·m¹³` chords overall,
/// `g0(m) = c0·m¹²` chords on the circle that is untangled first, and
/// `g1(m) = c1·m⁴`, `g2(m) = c2·m³` for the two tower stages.
///
/// The defaults satisfy every inequality the argument needs; smaller values
/// may be used for experiments, in which case the reduction reports a
/// precondition failure whenever a pigeonhole step is not available.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiTowerConfig {
    pub c: u64,
    pub c0: u64,
    pub c1: u64,
    pub c2: u64,
}

impl Default for MultiTowerConfig {
    fn default() -> Self {
        MultiTowerConfig { c: 32, c0: 16, c1: 2, c2: 2 }
    }
}

fn scaled_power(c: u64, m: usize, e: u32) -> u128 {
    (m as u128)
        .checked_pow(e)
        .and_then(|p| p.checked_mul(c as u128))
        .unwrap_or(u128::MAX)
}

impl MultiTowerConfig {
    pub fn h(&self, m: usize) -> u128 {
        scaled_power(self.c, m, 13)
    }
    pub fn g0(&self, m: usize) -> u128 {
        scaled_power(self.c0, m, 12)
    }
    pub fn g1(&self, m: usize) -> u128 {
        scaled_power(self.c1, m, 4)
    }
    pub fn g2(&self, m: usize) -> u128 {
        scaled_power(self.c2, m, 3)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Stage {
    /// Plain single-circle reduction.
    Single,
    /// Untangling the busiest circle.
    First,
    /// Untangling preferred chords on their second circle.
    Second,
}

/// Arcs are named by the tower endpoint that opens them: the chord and
/// which of its two endpoints on the circle (in slot order).
type Arc = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Frame {
    k: usize,
    tower: Vec<usize>,
    alpha: Arc,
    beta: Arc,
    special: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct TowerJob {
    stage: Stage,
    circle: usize,
    members: Option<Vec<usize>>,
    target: usize,
    frame: Option<Frame>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Job {
    Fresh,
    Tower(TowerJob),
}

enum Step {
    Emit(ChordDiagram, Rat),
    Next(Vec<(ChordDiagram, Rat, Job)>),
}

struct Ctx {
    m: usize,
    cfg: MultiTowerConfig,
}

impl Ctx {
    fn done(&self, d: &ChordDiagram) -> bool {
        d.marks() as usize >= self.m || independent_set_at_least(d, self.m)
    }
}

/// Chords with both endpoints on `circle` (restricted to `members`).
fn local_chords(d: &ChordDiagram, circle: usize, members: Option<&[usize]>) -> Vec<usize> {
    let mut count = vec![0usize; d.num_chords()];
    for &id in &d.circles()[circle] {
        count[id] += 1;
    }
    (0..d.num_chords())
        .filter(|&id| count[id] == 2 && members.map_or(true, |m| m.contains(&id)))
        .collect()
}

/// Slots of the tower endpoints in order, each with the arc it opens.
fn tower_marks(seq: &[usize], tower: &[usize]) -> Vec<(usize, Arc)> {
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    let mut out = Vec::new();
    for (i, &id) in seq.iter().enumerate() {
        if tower.contains(&id) {
            let occ = seen.entry(id).or_insert(0);
            out.push((i, (id, *occ)));
            *occ += 1;
        }
    }
    out
}

/// Slots strictly inside the arc opened by `arc`, in circle order.
fn arc_slots(seq: &[usize], marks: &[(usize, Arc)], arc: Arc) -> Option<Vec<usize>> {
    let j = marks.iter().position(|&(_, a)| a == arc)?;
    let start = marks[j].0;
    let end = marks[(j + 1) % marks.len()].0;
    let len = seq.len();
    let mut out = Vec::new();
    let mut i = (start + 1) % len;
    while i != end {
        out.push(i);
        i = (i + 1) % len;
    }
    Some(out)
}

fn arc_of(marks: &[(usize, Arc)], slot: usize) -> Arc {
    marks
        .iter()
        .rev()
        .find(|&&(s, _)| s < slot)
        .unwrap_or_else(|| marks.last().expect("nonempty tower"))
        .1
}

fn build_frame(d: &ChordDiagram, job: &TowerJob, tower: Vec<usize>) -> Result<Frame> {
    let seq = &d.circles()[job.circle];
    let marks = tower_marks(seq, &tower);
    let mut pairs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let index = |a: Arc| marks.iter().position(|&(_, b)| b == a).expect("arc exists");
    for id in local_chords(d, job.circle, job.members.as_deref()) {
        if tower.contains(&id) {
            continue;
        }
        let slots: Vec<usize> = (0..seq.len()).filter(|&i| seq[i] == id).collect();
        let (a, b) = (index(arc_of(&marks, slots[0])), index(arc_of(&marks, slots[1])));
        pairs.entry((a.min(b), a.max(b))).or_default().push(id);
    }
    let ((a, b), chords) = pairs
        .into_iter()
        .find(|(_, v)| v.len() >= job.target)
        .ok_or_else(|| Error::pre(format!("no two arcs are joined by {} chords; too few chords", job.target)))?;
    if a == b {
        return Err(Error::Invalid("tower is not maximal".into()));
    }
    Ok(Frame {
        k: tower.len(),
        tower,
        alpha: marks[a].1,
        beta: marks[b].1,
        special: chords[..job.target].to_vec(),
    })
}

/// One 4-term move bringing the specials closer to being non-crossing.
fn untangle(d: &ChordDiagram, job: &TowerJob, f: &Frame) -> Result<Vec<(ChordDiagram, i32, TermKind)>> {
    let ci = job.circle;
    let seq = &d.circles()[ci];
    let marks = tower_marks(seq, &f.tower);
    let lost = || Error::Invalid("tower frame lost track of its arcs".into());
    let alpha = arc_slots(seq, &marks, f.alpha).ok_or_else(lost)?;
    let beta = arc_slots(seq, &marks, f.beta).ok_or_else(lost)?;
    let in_alpha: Vec<(usize, usize)> = alpha
        .iter()
        .enumerate()
        .filter(|(_, &s)| f.special.contains(&seq[s]))
        .map(|(i, &s)| (i, seq[s]))
        .collect();
    let beta_pos = |id: usize| beta.iter().position(|&s| seq[s] == id);
    if in_alpha.len() != f.special.len() {
        return Err(lost());
    }
    let other = |id: usize, slot: usize| (0..seq.len()).find(|&i| seq[i] == id && i != slot).expect("two endpoints");
    for w in in_alpha.windows(2) {
        let ((ix, x), (iy, y)) = (w[0], w[1]);
        let (px, py) = (beta_pos(x).ok_or_else(lost)?, beta_pos(y).ok_or_else(lost)?);
        if px > py {
            continue;
        }
        // x and y cross
        let terms = if iy > ix + 1 {
            let (xs, zs) = (alpha[ix], alpha[ix + 1]);
            expand(d, x, Endpoint { circle: ci, slot: zs }, xs, other(x, xs), false)
        } else {
            let (xs, ys) = (alpha[ix], alpha[iy]);
            expand(d, y, Endpoint { circle: ci, slot: xs }, ys, other(y, ys), true)
        };
        return Ok(terms.into_iter().map(|t| (t.diagram, t.sign, t.kind)).collect());
    }
    Err(Error::Invalid("specials already untangled below the target".into()))
}

fn step(ctx: &Ctx, d: &ChordDiagram, coef: &Rat, job: &Job) -> Result<Step> {
    if ctx.done(d) {
        return Ok(Step::Emit(d.clone(), coef.clone()));
    }
    let m = ctx.m;
    let job = match job {
        Job::Fresh => {
            let (c1, n1) = (0..d.num_circles())
                .map(|c| (c, local_chords(d, c, None).len()))
                .max_by_key(|&(c, n)| (n, std::cmp::Reverse(c)))
                .ok_or_else(|| Error::pre("diagram has no circles"))?;
            if (n1 as u128) < ctx.cfg.g0(m) {
                return Err(Error::pre(format!(
                    "not {m}-boundary and no circle carries g0({m}) = {} chords",
                    ctx.cfg.g0(m)
                )));
            }
            let target = usize::try_from(ctx.cfg.g1(m)).unwrap_or(usize::MAX).max(m);
            let job = TowerJob {
                stage: Stage::First,
                circle: c1,
                members: None,
                target,
                frame: None,
            };
            return Ok(Step::Next(vec![(d.clone(), coef.clone(), Job::Tower(job))]));
        }
        Job::Tower(j) => j,
    };
    let best = max_noncrossing_on_circle(d, job.circle, job.members.as_deref());
    if best.len() >= job.target {
        return match job.stage {
            // the target makes the diagram m-boundary, caught above
            Stage::Single | Stage::Second => Err(Error::Invalid("tower reached without a boundary set".into())),
            Stage::First => {
                // fewer than m distinct second circles, or we would be done
                let mut by_circle: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
                for &p in &best {
                    for c in d.circles_of(p) {
                        if c != job.circle {
                            by_circle.entry(c).or_default().push(p);
                        }
                    }
                }
                let (c2, q) = by_circle
                    .into_iter()
                    .max_by_key(|(c, q)| (q.len(), std::cmp::Reverse(*c)))
                    .ok_or_else(|| Error::Invalid("untangled chords touch no second circle".into()))?;
                if (q.len() as u128) < ctx.cfg.g2(m) {
                    return Err(Error::pre(format!(
                        "only {} preferred chords share a second circle; g2({m}) = {}",
                        q.len(),
                        ctx.cfg.g2(m)
                    )));
                }
                let next = TowerJob {
                    stage: Stage::Second,
                    circle: c2,
                    members: Some(q),
                    target: m,
                    frame: None,
                };
                Ok(Step::Next(vec![(d.clone(), coef.clone(), Job::Tower(next))]))
            }
        };
    }
    let frame = match &job.frame {
        Some(f) if f.k == best.len() => f.clone(),
        _ => build_frame(d, job, best)?,
    };
    let mut next = Vec::new();
    for (t, sign, kind) in untangle(d, job, &frame)? {
        let c = coef * Rat::from_integer(sign.into());
        let j = match kind {
            TermKind::Error => Job::Fresh,
            _ => Job::Tower(TowerJob {
                frame: Some(frame.clone()),
                ..job.clone()
            }),
        };
        next.push((t, c, j));
    }
    Ok(Step::Next(next))
}

fn run(exec: Exec, ctx: &Ctx, d: &ChordDiagram, job: Job) -> Result<DiagramSum> {
    let mut items = vec![(d.clone(), Rat::one(), job)];
    let mut emitted = Vec::new();
    let mut processed = 0usize;
    while !items.is_empty() {
        processed += items.len();
        if processed > MAX_ITEMS {
            return Err(Error::Invalid(format!("reduction exceeded {MAX_ITEMS} steps")));
        }
        let results = exec.map(&items, |(d, c, j)| step(ctx, d, c, j));
        let mut merged: BTreeMap<(ChordDiagram, Job), Rat> = BTreeMap::new();
        for r in results {
            match r? {
                Step::Emit(d, c) => emitted.push((d, c)),
                Step::Next(v) => {
                    for (d, c, j) in v {
                        *merged.entry((d, j)).or_default() += c;
                    }
                }
            }
        }
        items = merged
            .into_iter()
            .filter(|(_, c)| *c != Rat::default())
            .map(|((d, j), c)| (d, c, j))
            .collect();
    }
    Ok(DiagramSum::from_terms(exec, &emitted))
}

/// Rewrites a single-circle diagram with at least `c·m³` chords into a sum
/// of `m`-boundary diagrams. Diagrams that are already `m`-boundary come
/// back unchanged.
pub fn tower_reduce(exec: Exec, d: &ChordDiagram, m: usize, c: u64) -> Result<DiagramSum> {
    if m == 0 || c == 0 {
        return Err(Error::Invalid("m and c must be positive".into()));
    }
    if d.num_circles() != 1 {
        return Err(Error::pre("tower reduction needs a single circle"));
    }
    let ctx = Ctx {
        m,
        cfg: MultiTowerConfig::default(),
    };
    if ctx.done(d) {
        return Ok(DiagramSum::single(d));
    }
    if !pigeonhole_ok(m as u64, c) {
        return Err(Error::pre(format!("pigeonhole bound fails for m={m}, c={c}")));
    }
    let need = scaled_power(c, m, 3);
    if (d.num_chords() as u128) < need {
        return Err(Error::pre(format!("need at least {need} chords, found {}", d.num_chords())));
    }
    let job = TowerJob {
        stage: Stage::Single,
        circle: 0,
        members: None,
        target: m,
        frame: None,
    };
    run(exec, &ctx, d, Job::Tower(job))
}

/// The multi-circle reduction: every output term is `m`-boundary or carries
/// at least `m` blink marks.
pub fn multi_tower_reduce(exec: Exec, d: &ChordDiagram, m: usize, cfg: &MultiTowerConfig) -> Result<DiagramSum> {
    if m == 0 {
        return Err(Error::Invalid("m must be positive".into()));
    }
    let ctx = Ctx { m, cfg: *cfg };
    if ctx.done(d) {
        return Ok(DiagramSum::single(d));
    }
    if (d.num_chords() as u128) < cfg.h(m) {
        return Err(Error::pre(format!("need at least h({m}) = {} chords, found {}", cfg.h(m), d.num_chords())));
    }
    run(exec, &ctx, d, Job::Fresh)
}
