//! Maximum sets of pairwise nonintersecting chords.
//!
//! Chords living on one circle form a circle graph, where the maximum
//! independent set is an interval dynamic program. Type II chords couple
//! circles, and those diagrams fall back to an exact branch and bound.

use super::{intersection_graph, ChordDiagram, ChordKind};

/// The largest set of `members` chords (all chords with two endpoints on
/// `circle` when `None`) that are pairwise non-crossing on that circle.
pub fn max_noncrossing_on_circle(d: &ChordDiagram, circle: usize, members: Option<&[usize]>) -> Vec<usize> {
    let Some(c) = d.circles().get(circle) else {
        return Vec::new();
    };
    let mut count = vec![0usize; d.num_chords()];
    for &id in c {
        count[id] += 1;
    }
    let keep = |id: usize| count[id] == 2 && members.map_or(true, |m| m.contains(&id));
    let seq: Vec<usize> = c.iter().copied().filter(|&id| keep(id)).collect();
    noncrossing_dp(&seq)
}

fn noncrossing_dp(seq: &[usize]) -> Vec<usize> {
    let l = seq.len();
    let mut partner = vec![usize::MAX; l];
    let mut first: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for (i, &id) in seq.iter().enumerate() {
        if let Some(&j) = first.get(&id) {
            partner[i] = j;
            partner[j] = i;
        } else {
            first.insert(id, i);
        }
    }
    let w = l + 1;
    // f[i * w + j]: best count inside the half-open range [i, j)
    let mut f = vec![0u32; w * w];
    for i in (0..l).rev() {
        for j in i + 1..=l {
            let mut best = f[(i + 1) * w + j];
            let p = partner[i];
            if p > i && p < j {
                best = best.max(1 + f[(i + 1) * w + p] + f[(p + 1) * w + j]);
            }
            f[i * w + j] = best;
        }
    }
    let mut out = Vec::new();
    let mut stack = vec![(0usize, l)];
    while let Some((i, j)) = stack.pop() {
        if i >= j {
            continue;
        }
        let p = partner[i];
        if p > i && p < j && 1 + f[(i + 1) * w + p] + f[(p + 1) * w + j] == f[i * w + j] {
            out.push(seq[i]);
            stack.push((i + 1, p));
            stack.push((p + 1, j));
        } else {
            stack.push((i + 1, j));
        }
    }
    out.sort_unstable();
    out
}

struct Bits {
    words: usize,
    adj: Vec<Vec<u64>>,
}

impl Bits {
    fn new(adj: &[Vec<usize>]) -> Self {
        let words = adj.len().div_ceil(64).max(1);
        let rows = adj
            .iter()
            .enumerate()
            .map(|(v, ns)| {
                let mut r = vec![0u64; words];
                r[v / 64] |= 1 << (v % 64);
                for &u in ns {
                    r[u / 64] |= 1 << (u % 64);
                }
                r
            })
            .collect();
        Bits { words, adj: rows }
    }

    /// Closed-neighbourhood degree within `cand` (includes the vertex).
    fn degree(&self, v: usize, cand: &[u64]) -> u32 {
        self.adj[v].iter().zip(cand).map(|(a, b)| (a & b).count_ones()).sum()
    }
}

fn members(cand: &[u64]) -> impl Iterator<Item = usize> + '_ {
    cand.iter()
        .enumerate()
        .flat_map(|(w, &bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b))
}

fn popcount(cand: &[u64]) -> usize {
    cand.iter().map(|w| w.count_ones() as usize).sum()
}

fn search(g: &Bits, cand: Vec<u64>, cur: &mut Vec<usize>, best: &mut Vec<usize>, goal: usize) {
    if best.len() >= goal || cur.len() + popcount(&cand) <= best.len() {
        return;
    }
    let Some((v, dv)) = members(&cand).map(|v| (v, g.degree(v, &cand))).min_by_key(|&(v, d)| (d, v)) else {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        return;
    };
    let without = |u: usize| -> Vec<u64> { cand.iter().zip(&g.adj[u]).map(|(c, a)| c & !a).collect() };
    if dv <= 2 {
        // a vertex with at most one neighbour can always be taken
        cur.push(v);
        search(g, without(v), cur, best, goal);
        cur.pop();
        return;
    }
    let u = members(&cand)
        .max_by_key(|&u| (g.degree(u, &cand), std::cmp::Reverse(u)))
        .expect("nonempty");
    cur.push(u);
    search(g, without(u), cur, best, goal);
    cur.pop();
    let mut rest = cand.clone();
    rest[u / 64] &= !(1 << (u % 64));
    search(g, rest, cur, best, goal);
}

fn branch_and_bound(d: &ChordDiagram, goal: usize) -> Vec<usize> {
    let adj = intersection_graph(d);
    let g = Bits::new(&adj);
    let mut cand = vec![0u64; g.words];
    for v in 0..adj.len() {
        cand[v / 64] |= 1 << (v % 64);
    }
    let mut best = Vec::new();
    search(&g, cand, &mut Vec::new(), &mut best, goal);
    best.sort_unstable();
    best
}

/// A maximum set of pairwise nonintersecting chords, ascending.
pub fn max_independent_set(d: &ChordDiagram) -> Vec<usize> {
    if d.kinds().contains(&ChordKind::II) {
        return branch_and_bound(d, usize::MAX);
    }
    // type I chords only: circles decouple, and chords split across two
    // circles meet nothing
    let mut out: Vec<usize> = (0..d.num_circles())
        .flat_map(|c| max_noncrossing_on_circle(d, c, None))
        .collect();
    out.extend(d.positions().iter().enumerate().filter(|(_, p)| p[0].0 != p[1].0).map(|(id, _)| id));
    out.sort_unstable();
    out
}

/// Size of a largest set of pairwise nonintersecting chords.
pub fn boundary_degree(d: &ChordDiagram) -> usize {
    max_independent_set(d).len()
}

/// Whether `d` is `k`-boundary; stops searching once `k` chords are found.
pub fn independent_set_at_least(d: &ChordDiagram, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if greedy(d) >= k {
        return true;
    }
    if d.kinds().contains(&ChordKind::II) {
        branch_and_bound(d, k).len() >= k
    } else {
        boundary_degree(d) >= k
    }
}

fn greedy(d: &ChordDiagram) -> usize {
    let adj = intersection_graph(d);
    let mut order: Vec<usize> = (0..adj.len()).collect();
    order.sort_by_key(|&v| (adj[v].len(), v));
    let mut blocked = vec![false; adj.len()];
    let mut n = 0;
    for v in order {
        if !blocked[v] {
            n += 1;
            for &u in &adj[v] {
                blocked[u] = true;
            }
        }
    }
    n
}
