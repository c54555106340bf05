//! Free-group words, the truncated Magnus expansion `x_i ↦ 1 + X_i`, and
//! I-adic degree. For free groups the Magnus degree of `w - 1` detects the
//! lower-central-series depth of `w`; nothing here claims that for other
//! groups.
//!
//! Word syntax:
//!
//! ```text
//! word   := factor*            (juxtaposition is multiplication)
//! factor := atom ('^' int)?
//! atom   := 'x' k | '[' word ',' word ']' | '(' word ')' | '1'
//! ```
//!
//! with `[a, b] = a⁻¹ b⁻¹ a b` and generators `x1, x2, …` (one-based).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::intmat::Rat;
use crate::{Error, Result};

/// Largest supported truncation degree.
pub const MAX_DEGREE: usize = 8;
/// Largest number of series variables.
pub const MAX_VARS: usize = 64;
const MAX_POWER: u64 = 10_000;

/// A freely reduced word; letters are `(generator, ±1)` with zero-based
/// generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    rank: usize,
    letters: Vec<(usize, i8)>,
}

impl GroupWord {
    pub fn identity(rank: usize) -> Self {
        GroupWord { rank, letters: Vec::new() }
    }

    pub fn generator(rank: usize, i: usize) -> Self {
        assert!(i < rank, "generator out of range");
        GroupWord {
            rank,
            letters: vec![(i, 1)],
        }
    }

    /// Builds and freely reduces a word.
    pub fn new(rank: usize, letters: impl IntoIterator<Item = (usize, i8)>) -> Result<Self> {
        let mut w = GroupWord::identity(rank);
        for (g, e) in letters {
            if g >= rank {
                return Err(Error::Invalid(format!("generator x{} exceeds rank {rank}", g + 1)));
            }
            if e != 1 && e != -1 {
                return Err(Error::Invalid("letter exponents must be ±1".into()));
            }
            w.push(g, e);
        }
        Ok(w)
    }

    fn push(&mut self, g: usize, e: i8) {
        if self.letters.last() == Some(&(g, -e)) {
            self.letters.pop();
        } else {
            self.letters.push((g, e));
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut w = GroupWord {
            rank: self.rank.max(other.rank),
            letters: self.letters.clone(),
        };
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> GroupWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(GroupWord::identity(self.rank), |acc, _| acc.mul(&base))
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &GroupWord, b: &GroupWord) -> GroupWord {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Parses a word; `rank` is raised to the largest generator mentioned.
    pub fn parse(text: &str, rank: usize) -> Result<GroupWord> {
        let mut p = WordParser {
            s: text.as_bytes(),
            pos: 0,
            max_gen: 0,
        };
        let w = p.word()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(GroupWord {
            rank: rank.max(p.max_gen).max(w.rank),
            letters: w.letters,
        })
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let (g, e) = self.letters[i];
            let run = self.letters[i..].iter().take_while(|&&l| l == (g, e)).count();
            let exp = run as i64 * i64::from(e);
            parts.push(if exp == 1 {
                format!("x{}", g + 1)
            } else {
                format!("x{}^{}", g + 1, exp)
            });
            i += run;
        }
        write!(f, "{}", parts.join(" "))
    }
}

struct WordParser<'a> {
    s: &'a [u8],
    pos: usize,
    max_gen: usize,
}

impl WordParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::parse(1, format!("{msg} at column {}", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn word(&mut self) -> Result<GroupWord> {
        let mut w = GroupWord::identity(0);
        while let Some(c) = self.peek() {
            if matches!(c, b',' | b']' | b')') {
                break;
            }
            w = w.mul(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<GroupWord> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.int()?;
            if k.unsigned_abs() > MAX_POWER {
                return Err(self.err("exponent too large"));
            }
            return Ok(atom.pow(k));
        }
        Ok(atom)
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        if matches!(self.s.get(self.pos), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.err("expected integer"))
    }

    fn atom(&mut self) -> Result<GroupWord> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let k = self.int()?;
                if k < 1 {
                    return Err(self.err("generator index must be positive"));
                }
                let k = k as usize;
                self.max_gen = self.max_gen.max(k);
                Ok(GroupWord::generator(k, k - 1))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(GroupWord::identity(0))
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(b',')?;
                let b = self.word()?;
                self.expect(b']')?;
                Ok(GroupWord::commutator(&a, &b))
            }
            Some(b'(') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(b')')?;
                Ok(a)
            }
            _ => Err(self.err("expected `x<k>`, `[`, `(` or `1`")),
        }
    }
}

/// Left-normed commutator `[[[x_{a1}, x_{a2}], x_{a3}], …]` of the given
/// depth using the first `depth` letters; it lies in the `depth`-th term of
/// the lower central series.
pub fn lcs_commutator(rank: usize, depth: usize, letters: &[usize]) -> Result<GroupWord> {
    if depth < 1 {
        return Err(Error::Invalid("depth must be at least 1".into()));
    }
    if letters.len() < depth {
        return Err(Error::Invalid(format!("need {depth} letters, got {}", letters.len())));
    }
    if let Some(&g) = letters.iter().find(|&&g| g >= rank) {
        return Err(Error::Invalid(format!("generator x{} exceeds rank {rank}", g + 1)));
    }
    let mut w = GroupWord::generator(rank, letters[0]);
    for &g in &letters[1..depth] {
        w = GroupWord::commutator(&w, &GroupWord::generator(rank, g));
    }
    Ok(w)
}

/// A monomial in noncommuting variables, ordered by degree then lexically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u8>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Noncommutative power series in `vars` variables truncated above degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    vars: usize,
    n: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl TruncatedSeries {
    pub fn zero(vars: usize, n: usize) -> Self {
        TruncatedSeries {
            vars,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize, n: usize) -> Self {
        let mut s = Self::zero(vars, n);
        s.terms.insert(Monomial(Vec::new()), Rat::one());
        s
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &[u8]) -> Rat {
        self.terms
            .get(&Monomial(mono.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn constant(&self) -> Rat {
        self.coefficient(&[])
    }

    fn add_term(&mut self, m: Vec<u8>, c: Rat) {
        if c.is_zero() || m.len() > self.n {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(Monomial(m)) {
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

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars || self.n != other.n {
            return Err(Error::Invalid("series live in different truncated rings".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        let mut out = Self::zero(self.vars, self.n);
        for (m, c) in &self.terms {
            out.add_term(m.0.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.vars, self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.0.len() + b.0.len() > self.n {
                    // terms are degree-ordered; later b are no shorter
                    break;
                }
                let mut m = a.0.clone();
                m.extend_from_slice(&b.0);
                out.add_term(m, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(self.vars, self.n);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    // self · (1 + X_i)^{±1}, in O(terms · n)
    fn mul_letter(&self, i: usize, e: i8) -> Self {
        let mut out = Self::zero(self.vars, self.n);
        for (m, c) in &self.terms {
            out.add_term(m.0.clone(), c.clone());
            let mut mono = m.0.clone();
            let mut coeff = c.clone();
            loop {
                if mono.len() >= self.n {
                    break;
                }
                mono.push(i as u8);
                if e < 0 {
                    coeff = -coeff;
                }
                out.add_term(mono.clone(), coeff.clone());
                if e > 0 {
                    break;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.0.is_empty() {
                    return c.to_string();
                }
                let mono: Vec<String> = m.0.iter().map(|&v| format!("X{}", v + 1)).collect();
                format!("{c}*{}", mono.join(""))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn check_truncation(n: usize) -> Result<()> {
    if !(1..=MAX_DEGREE).contains(&n) {
        return Err(Error::Invalid(format!("truncation degree must be in 1..={MAX_DEGREE}, got {n}")));
    }
    Ok(())
}

/// Magnus image of `w` truncated above degree `n`.
pub fn magnus(w: &GroupWord, n: usize) -> Result<TruncatedSeries> {
    check_truncation(n)?;
    if w.rank > MAX_VARS {
        return Err(Error::Invalid(format!("at most {MAX_VARS} generators supported")));
    }
    let mut s = TruncatedSeries::one(w.rank, n);
    for &(g, e) in &w.letters {
        s = s.mul_letter(g, e);
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IadicDegree {
    Exact(usize),
    /// No nonzero term within the truncation; the degree is at least this.
    AtLeast(usize),
}

impl fmt::Display for IadicDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IadicDegree::Exact(d) => write!(f, "{d}"),
            IadicDegree::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

impl IadicDegree {
    pub fn at_least(self, d: usize) -> bool {
        match self {
            IadicDegree::Exact(k) | IadicDegree::AtLeast(k) => k >= d,
        }
    }
}

/// Lowest degree of `s - 1` (group-like `s`) or of `s` (augmentation ideal).
pub fn iadic_degree(s: &TruncatedSeries) -> Result<IadicDegree> {
    let c = s.constant();
    if !c.is_zero() && !c.is_one() {
        return Err(Error::pre("constant term must be 0 or 1"));
    }
    Ok(s.terms
        .keys()
        .map(|m| m.0.len())
        .find(|&d| d >= 1)
        .map_or(IadicDegree::AtLeast(s.n + 1), IadicDegree::Exact))
}

/// Checks `magnus(w^m) - 1 = Σ_{i=1}^m C(m,i) (magnus(w) - 1)^i` exactly.
pub fn binomial_identity_check(w: &GroupWord, m: u32, n: usize) -> Result<bool> {
    if m == 0 {
        return Err(Error::Invalid("exponent must be positive".into()));
    }
    let one = TruncatedSeries::one(w.rank, n);
    let lhs = magnus(&w.pow(i64::from(m)), n)?.sub(&one)?;
    let y = magnus(w, n)?.sub(&one)?;
    let mut rhs = TruncatedSeries::zero(w.rank, n);
    let mut power = one;
    for i in 1..=m {
        power = power.mul(&y)?;
        let c = Rat::from_integer(binomial(BigInt::from(m), BigInt::from(i)));
        rhs = rhs.add(&power.scale(&c))?;
    }
    Ok(lhs == rhs)
}
