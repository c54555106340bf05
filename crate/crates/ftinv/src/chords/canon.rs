use super::{ChordDiagram, ChordKind};

#[derive(Clone)]
struct State {
    placed: Vec<(usize, usize)>,
    label: Vec<Option<usize>>,
    next: usize,
}

impl State {
    fn segment(&self, circle: &[usize], rot: usize) -> (Vec<usize>, Vec<Option<usize>>, usize) {
        let mut label = self.label.clone();
        let mut next = self.next;
        let n = circle.len();
        let seg = (0..n)
            .map(|i| {
                let id = circle[(rot + i) % n];
                *label[id].get_or_insert_with(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        (seg, label, next)
    }
}

/// Canonical representative: circles are placed longest first, and among
/// all placements and rotations the one whose relabelled sequence (chords
/// numbered by first appearance) is lexicographically least wins. Circles
/// keep their orientation; no reflections are applied.
///
/// The search keeps every tied partial placement, so its cost grows with
/// the symmetry of the diagram.
pub fn canonicalize(d: &ChordDiagram) -> ChordDiagram {
    let circles = d.circles();
    let mut lengths: Vec<usize> = circles.iter().map(Vec::len).filter(|&l| l > 0).collect();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    let mut states = vec![State {
        placed: Vec::new(),
        label: vec![None; d.num_chords()],
        next: 0,
    }];
    for &len in &lengths {
        let mut best: Option<Vec<usize>> = None;
        let mut survivors: Vec<State> = Vec::new();
        for s in &states {
            for (ci, c) in circles.iter().enumerate() {
                if c.len() != len || s.placed.iter().any(|&(p, _)| p == ci) {
                    continue;
                }
                for rot in 0..len {
                    let (seg, label, next) = s.segment(c, rot);
                    let cmp = best.as_ref().map(|b| seg.cmp(b));
                    if matches!(cmp, Some(std::cmp::Ordering::Greater)) {
                        continue;
                    }
                    if !matches!(cmp, Some(std::cmp::Ordering::Equal)) {
                        best = Some(seg);
                        survivors.clear();
                    }
                    let mut placed = s.placed.clone();
                    placed.push((ci, rot));
                    let cand = State { placed, label, next };
                    if !survivors.iter().any(|t| t.label == cand.label && same_set(&t.placed, &cand.placed)) {
                        survivors.push(cand);
                    }
                }
            }
        }
        states = survivors;
    }
    let s = &states[0];
    let mut kinds = vec![ChordKind::I; d.num_chords()];
    for (old, l) in s.label.iter().enumerate() {
        kinds[l.expect("every chord lies on a circle")] = d.kinds()[old];
    }
    let mut out: Vec<Vec<usize>> = s
        .placed
        .iter()
        .map(|&(ci, rot)| {
            let c = &circles[ci];
            (0..c.len()).map(|i| s.label[c[(rot + i) % c.len()]].unwrap()).collect()
        })
        .collect();
    out.resize(circles.len(), Vec::new());
    ChordDiagram::new(out, kinds, d.marks()).expect("relabelling preserves validity")
}

fn same_set(a: &[(usize, usize)], b: &[(usize, usize)]) -> bool {
    let mut x: Vec<usize> = a.iter().map(|p| p.0).collect();
    let mut y: Vec<usize> = b.iter().map(|p| p.0).collect();
    x.sort_unstable();
    y.sort_unstable();
    x == y
}
