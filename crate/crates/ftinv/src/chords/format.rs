//! Diagram files:
//!
//! ```text
//! circles 1
//! I 1:1 1:3
//! I 1:2 1:5
//! I 1:4 1:6
//! marks 0
//! ```
//!
//! `I c:p c:p` is a type I chord, `II c:p,p c:p,p` a type II chord; circles
//! and slots count from 1, chords are numbered in file order, and every slot
//! of every circle must be used exactly once. `#` starts a comment.

use std::collections::BTreeMap;

use super::{ChordDiagram, ChordKind};
use crate::{Error, Result};

const MAX_CIRCLES: usize = 1000;
const MAX_SLOTS: usize = 1_000_000;

fn number(ln: usize, t: &str, max: usize, what: &str) -> Result<usize> {
    match t.parse::<usize>() {
        Ok(v) if (1..=max).contains(&v) => Ok(v - 1),
        _ => Err(Error::parse(ln, format!("{what} `{t}` out of range 1..={max}"))),
    }
}

/// `c:p` or `c:p,q`.
fn group(ln: usize, t: &str, circles: usize) -> Result<(usize, Vec<usize>)> {
    let (c, ps) = t
        .split_once(':')
        .ok_or_else(|| Error::parse(ln, format!("expected `circle:slot`, got `{t}`")))?;
    let c = number(ln, c, circles, "circle")?;
    let ps = ps
        .split(',')
        .map(|p| number(ln, p, MAX_SLOTS, "slot"))
        .collect::<Result<Vec<_>>>()?;
    Ok((c, ps))
}

pub fn parse_diagram(text: &str) -> Result<ChordDiagram> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, head) = lines.next().ok_or_else(|| Error::parse(1, "missing `circles <k>` header"))?;
    let k = match head.split_whitespace().collect::<Vec<_>>()[..] {
        ["circles", k] => k
            .parse::<usize>()
            .ok()
            .filter(|&k| k <= MAX_CIRCLES)
            .ok_or_else(|| Error::parse(ln, format!("bad circle count `{k}`")))?,
        _ => return Err(Error::parse(ln, "expected `circles <k>`")),
    };
    let mut slots: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); k];
    let mut kinds = Vec::new();
    let mut marks = None;
    for (ln, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        let id = kinds.len();
        let mut place = |c: usize, p: usize| -> Result<()> {
            if slots[c].insert(p, id).is_some() {
                return Err(Error::parse(ln, format!("slot {}:{} used twice", c + 1, p + 1)));
            }
            Ok(())
        };
        match parts[..] {
            ["marks", n] => {
                if marks.is_some() {
                    return Err(Error::parse(ln, "duplicate `marks` line"));
                }
                marks = Some(n.parse::<u32>().map_err(|_| Error::parse(ln, format!("bad mark count `{n}`")))?);
            }
            ["I", a, b] => {
                for t in [a, b] {
                    match group(ln, t, k)? {
                        (c, ps) if ps.len() == 1 => place(c, ps[0])?,
                        _ => return Err(Error::parse(ln, "type I endpoints are `circle:slot`")),
                    }
                }
                kinds.push(ChordKind::I);
            }
            ["II", a, b] => {
                let (ga, gb) = (group(ln, a, k)?, group(ln, b, k)?);
                if ga.1.len() != 2 || gb.1.len() != 2 || ga.0 == gb.0 {
                    return Err(Error::parse(ln, "type II chords are `c:p,q d:r,s` with c != d"));
                }
                for (c, ps) in [ga, gb] {
                    for p in ps {
                        place(c, p)?;
                    }
                }
                kinds.push(ChordKind::II);
            }
            _ => return Err(Error::parse(ln, format!("unrecognised line `{l}`"))),
        }
    }
    let mut circles = Vec::with_capacity(k);
    for (c, s) in slots.into_iter().enumerate() {
        if let Some((i, _)) = s.keys().enumerate().find(|&(i, &p)| i != p) {
            return Err(Error::parse(1, format!("circle {} has no chord at slot {}", c + 1, i + 1)));
        }
        circles.push(s.into_values().collect());
    }
    ChordDiagram::new(circles, kinds, marks.unwrap_or(0)).map_err(|e| Error::parse(1, e.to_string()))
}

pub fn diagram_to_text(d: &ChordDiagram) -> String {
    let mut out = format!("circles {}\n", d.num_circles());
    for (id, pos) in d.positions().iter().enumerate() {
        match d.kinds()[id] {
            ChordKind::I => {
                let e: Vec<String> = pos.iter().map(|(c, p)| format!("{}:{}", c + 1, p + 1)).collect();
                out.push_str(&format!("I {}\n", e.join(" ")));
            }
            ChordKind::II => {
                let g = |c: usize| {
                    let ps: Vec<String> = pos.iter().filter(|x| x.0 == c).map(|x| (x.1 + 1).to_string()).collect();
                    format!("{}:{}", c + 1, ps.join(","))
                };
                out.push_str(&format!("II {} {}\n", g(pos[0].0), g(pos[3].0)));
            }
        }
    }
    if d.marks() > 0 {
        out.push_str(&format!("marks {}\n", d.marks()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_cd_file() {
        let text = "circles 1\nI 1:1 1:3\nI 1:2 1:5\nI 1:4 1:6\n";
        let d = parse_diagram(text).unwrap();
        assert_eq!(d.circles()[0], vec![0, 1, 0, 2, 1, 2]);
        assert_eq!(diagram_to_text(&d), text);
    }

    #[test]
    fn mixed_round_trip() {
        let text = "# two circles\ncircles 2\nII 1:1,3 2:2,3\nI 1:2 2:1\nI 1:4 1:5\nmarks 2\n";
        let d = parse_diagram(text).unwrap();
        assert_eq!(d.marks(), 2);
        assert_eq!(parse_diagram(&diagram_to_text(&d)).unwrap(), d);
    }

    #[test]
    fn rejects_bad_files() {
        for bad in [
            "",
            "circles x",
            "circles 1\nI 1:1 1:1",
            "circles 1\nI 1:1 1:3",
            "circles 1\nI 1:1 2:2",
            "circles 2\nII 1:1,2 1:3,4",
            "circles 1\nIII 1:1 1:2",
            "circles 1\nI 1:1 1:2\nmarks -1",
            "circles 1\nI 1:1 1:2\nmarks 1\nmarks 1",
        ] {
            let e = parse_diagram(bad).unwrap_err();
            assert!(e.is_parse(), "{bad:?}");
        }
        assert!(parse_diagram("circles 0\n").unwrap().num_chords() == 0);
    }
}
