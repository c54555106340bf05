//! Line-oriented text formats. Blank lines and `#` comments are ignored;
//! keyword lines may appear in any order; components and pairs are
//! one-based.
//!
//! Blink:
//!
//! ```text
//! pairs=2
//! pair 1 1 2        # optional, default pair p = (2p-1, 2p)
//! lk 1 2 3          # symmetric, unspecified entries are 0
//! eps 1 +1
//! ```
//!
//! Framed link, optionally with a Seifert block per component:
//!
//! ```text
//! components=2
//! frame 1 1
//! frame 2 -1
//! lk 1 2 0
//! knot 1 2          # next 2 lines are the block of component 1
//! -1 1
//! 0 -1
//! ```
//!
//! Seifert matrix: `seifert sizes=2,2` followed by the full rows.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::blink::{BlinkPresentation, FramedLink};
use super::seifert::SeifertMatrix;
use crate::intmat::{Int, IntMatrix, IntVec};
use crate::{Error, Result};

const MAX_COUNT: usize = 1000;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn header(line: Option<(usize, &str)>, key: &str) -> Result<usize> {
    let (ln, l) = line.ok_or_else(|| Error::parse(1, format!("missing header `{key}=<n>`")))?;
    l.strip_prefix(key)
        .and_then(|r| r.trim_start().strip_prefix('='))
        .and_then(|r| r.trim().parse().ok())
        .filter(|&n: &usize| n <= MAX_COUNT)
        .ok_or_else(|| Error::parse(ln, format!("expected header `{key}=<n>` with n <= {MAX_COUNT}")))
}

fn int(ln: usize, t: &str) -> Result<Int> {
    t.trim_start_matches('+')
        .parse::<Int>()
        .map_err(|_| Error::parse(ln, format!("bad integer `{t}`")))
}

fn index(ln: usize, t: &str, max: usize, what: &str) -> Result<usize> {
    match t.parse::<usize>() {
        Ok(i) if (1..=max).contains(&i) => Ok(i - 1),
        _ => Err(Error::parse(ln, format!("{what} index `{t}` out of range 1..={max}"))),
    }
}

fn args<'a>(ln: usize, parts: &'a [&'a str], n: usize) -> Result<&'a [&'a str]> {
    if parts.len() != n + 1 {
        return Err(Error::parse(ln, format!("`{}` takes {n} arguments", parts[0])));
    }
    Ok(&parts[1..])
}

fn set_symmetric(m: &mut IntMatrix, set: &mut BTreeMap<(usize, usize), Int>, ln: usize, i: usize, j: usize, v: Int) -> Result<()> {
    if i == j {
        return Err(Error::parse(ln, "`lk i i` is not allowed; use a framing"));
    }
    let key = (i.min(j), i.max(j));
    if let Some(old) = set.get(&key) {
        if *old != v {
            return Err(Error::parse(ln, "conflicting linking number"));
        }
    }
    set.insert(key, v.clone());
    m[(i, j)] = v.clone();
    m[(j, i)] = v;
    Ok(())
}

pub fn parse_blink(text: &str) -> Result<BlinkPresentation> {
    let mut lines = content_lines(text);
    let r = header(lines.next(), "pairs")?;
    let n = 2 * r;
    let mut lk = IntMatrix::zeros(n, n);
    let mut set = BTreeMap::new();
    let mut eps: Vec<Option<i32>> = vec![None; r];
    let mut pairs: Vec<Option<(usize, usize)>> = vec![None; r];
    for (ln, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        match parts[0] {
            "lk" => {
                let a = args(ln, &parts, 3)?;
                let (i, j) = (index(ln, a[0], n, "component")?, index(ln, a[1], n, "component")?);
                set_symmetric(&mut lk, &mut set, ln, i, j, int(ln, a[2])?)?;
            }
            "eps" => {
                let a = args(ln, &parts, 2)?;
                let p = index(ln, a[0], r, "pair")?;
                let s = match a[1] {
                    "1" | "+1" | "+" => 1,
                    "-1" | "-" => -1,
                    other => return Err(Error::parse(ln, format!("epsilon must be ±1, got `{other}`"))),
                };
                if eps[p].replace(s).is_some_and(|old| old != s) {
                    return Err(Error::parse(ln, "conflicting epsilon"));
                }
            }
            "pair" => {
                let a = args(ln, &parts, 3)?;
                let p = index(ln, a[0], r, "pair")?;
                pairs[p] = Some((index(ln, a[1], n, "component")?, index(ln, a[2], n, "component")?));
            }
            other => return Err(Error::parse(ln, format!("unknown keyword `{other}`"))),
        }
    }
    let pairs = pairs
        .into_iter()
        .enumerate()
        .map(|(p, q)| q.unwrap_or((2 * p, 2 * p + 1)))
        .collect();
    BlinkPresentation::new(pairs, lk, eps).map_err(|e| Error::parse(1, e.to_string()))
}

pub fn blink_to_text(b: &BlinkPresentation) -> String {
    let r = b.num_pairs();
    let mut s = format!("pairs={r}\n");
    for (p, &(a, c)) in b.pairs().iter().enumerate() {
        let _ = writeln!(s, "pair {} {} {}", p + 1, a + 1, c + 1);
    }
    for i in 0..2 * r {
        for j in i + 1..2 * r {
            if !num_traits::Zero::is_zero(b.lk(i, j)) {
                let _ = writeln!(s, "lk {} {} {}", i + 1, j + 1, b.lk(i, j));
            }
        }
    }
    for (p, e) in b.epsilon().iter().enumerate() {
        if let Some(e) = e {
            let _ = writeln!(s, "eps {} {}", p + 1, if *e > 0 { "+1" } else { "-1" });
        }
    }
    s
}

/// A framed link plus optional Seifert blocks, one per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkData {
    pub link: FramedLink,
    pub knots: Vec<Option<SeifertMatrix>>,
}

pub fn parse_link(text: &str) -> Result<LinkData> {
    let mut lines = content_lines(text).peekable();
    let n = header(lines.next(), "components")?;
    let mut lk = IntMatrix::zeros(n, n);
    let mut set = BTreeMap::new();
    let mut framed = vec![false; n];
    let mut knots: Vec<Option<SeifertMatrix>> = vec![None; n];
    while let Some((ln, l)) = lines.next() {
        let parts: Vec<&str> = l.split_whitespace().collect();
        match parts[0] {
            "lk" => {
                let a = args(ln, &parts, 3)?;
                let (i, j) = (index(ln, a[0], n, "component")?, index(ln, a[1], n, "component")?);
                set_symmetric(&mut lk, &mut set, ln, i, j, int(ln, a[2])?)?;
            }
            "frame" => {
                let a = args(ln, &parts, 2)?;
                let i = index(ln, a[0], n, "component")?;
                let v = int(ln, a[1])?;
                if framed[i] && lk[(i, i)] != v {
                    return Err(Error::parse(ln, "conflicting framing"));
                }
                lk[(i, i)] = v;
                framed[i] = true;
            }
            "knot" => {
                let a = args(ln, &parts, 2)?;
                let i = index(ln, a[0], n, "component")?;
                let size: usize = a[1]
                    .parse()
                    .ok()
                    .filter(|&s| s <= MAX_COUNT)
                    .ok_or_else(|| Error::parse(ln, "bad block size"))?;
                let rows = read_rows(&mut lines, ln, size, size)?;
                knots[i] = Some(
                    SeifertMatrix::knot(IntMatrix::from_rows(&rows, size)).map_err(|e| Error::parse(ln, e.to_string()))?,
                );
            }
            other => return Err(Error::parse(ln, format!("unknown keyword `{other}`"))),
        }
    }
    if let Some(i) = framed.iter().position(|f| !f) {
        return Err(Error::parse(1, format!("component {} has no framing", i + 1)));
    }
    Ok(LinkData {
        link: FramedLink::new(lk).expect("symmetric by construction"),
        knots,
    })
}

pub fn link_to_text(d: &LinkData) -> String {
    let m = d.link.linking_matrix();
    let n = d.link.components();
    let mut s = format!("components={n}\n");
    for i in 0..n {
        let _ = writeln!(s, "frame {} {}", i + 1, m[(i, i)]);
    }
    for i in 0..n {
        for j in i + 1..n {
            if !num_traits::Zero::is_zero(&m[(i, j)]) {
                let _ = writeln!(s, "lk {} {} {}", i + 1, j + 1, m[(i, j)]);
            }
        }
    }
    for (i, k) in d.knots.iter().enumerate() {
        if let Some(k) = k {
            let a = k.matrix();
            let _ = writeln!(s, "knot {} {}", i + 1, a.nrows());
            s.push_str(&rows_text(a));
        }
    }
    s
}

fn rows_text(a: &IntMatrix) -> String {
    let mut s = String::new();
    for r in a.to_rows() {
        let row: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

fn read_rows<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    at: usize,
    count: usize,
    width: usize,
) -> Result<Vec<IntVec>> {
    (0..count)
        .map(|_| {
            let (ln, l) = lines
                .next()
                .ok_or_else(|| Error::parse(at, format!("expected {count} matrix rows")))?;
            let row: IntVec = l.split_whitespace().map(|t| int(ln, t)).collect::<Result<_>>()?;
            if row.len() != width {
                return Err(Error::parse(ln, format!("expected {width} entries, found {}", row.len())));
            }
            Ok(row)
        })
        .collect()
}

pub fn parse_seifert(text: &str) -> Result<SeifertMatrix> {
    let mut lines = content_lines(text);
    let (ln, head) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing header `seifert sizes=...`"))?;
    let sizes_text = head
        .strip_prefix("seifert")
        .map(str::trim)
        .and_then(|r| r.strip_prefix("sizes="))
        .ok_or_else(|| Error::parse(ln, "expected header `seifert sizes=a,b,...`"))?;
    let sizes: Vec<usize> = if sizes_text.trim().is_empty() {
        Vec::new()
    } else {
        sizes_text
            .split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(s) if s <= MAX_COUNT => Ok(s),
                _ => Err(Error::parse(ln, format!("bad block size `{t}`"))),
            })
            .collect::<Result<_>>()?
    };
    let n: usize = sizes.iter().sum();
    let rows = read_rows(&mut lines, ln, n, n)?;
    if let Some((extra, _)) = lines.next() {
        return Err(Error::parse(extra, "unexpected trailing rows"));
    }
    SeifertMatrix::new(sizes, IntMatrix::from_rows(&rows, n)).map_err(|e| Error::parse(ln, e.to_string()))
}

pub fn seifert_to_text(s: &SeifertMatrix) -> String {
    let sizes: Vec<String> = s.sizes().iter().map(|x| x.to_string()).collect();
    format!("seifert sizes={}\n{}", sizes.join(","), rows_text(s.matrix()))
}
