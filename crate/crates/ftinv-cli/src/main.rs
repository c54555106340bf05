//! `ftinv` command-line front end. Results are printed as `key=value`
//! text; exit status is 0 on success, 1 on domain errors and 2 on parse or
//! usage errors.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ftinv::chords::{
    boundary_degree, four_term_expansion, multi_tower_reduce, parse_diagram, tower_reduce,
    ChordDiagram, DiagramSum, Endpoint, MultiTowerConfig, TermKind, DEFAULT_C,
};
use ftinv::exterior::{wedge, MultiVector};
use ftinv::groupring::{iadic_degree, magnus, GroupWord, MAX_DEGREE};
use ftinv::intmat::{Int, IntMatrix, IntVec};
use ftinv::johnson::{triple_commutator_tau, LbarElement};
use ftinv::links::format::{parse_blink, parse_link, parse_seifert};
use ftinv::links::{
    alexander_block, blink_linking_matrix, bracket_expand_blink, casson, is_unimodular, phi, seifert_congruent,
    SeifertMatrix,
};
use ftinv::par::Exec;
use ftinv::symplectic::{product_of_transvections, realize_symmetric, SpMatrix, SymplecticLattice};
use num_traits::ToPrimitive;

#[derive(Parser)]
#[command(name = "ftinv", about = "Exact computations around finite-type invariants of homology spheres")]
#[command(disable_version_flag = true)]
struct Cli {
    /// Worker threads for the parallel stages (1 = sequential).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

/// An input file, or `-` for stdin.
#[derive(Args)]
struct Input {
    file: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Blink linking matrices and brackets.
    #[command(subcommand)]
    Blink(BlinkCmd),
    /// Framed links with Seifert blocks.
    #[command(subcommand)]
    Link(LinkCmd),
    /// Seifert matrices.
    #[command(subcommand)]
    Seifert(SeifertCmd),
    /// Chord diagrams.
    #[command(subcommand)]
    Cd(CdCmd),
    /// Johnson-homomorphism differences.
    #[command(subcommand)]
    Johnson(JohnsonCmd),
    /// Magnus expansion.
    #[command(subcommand)]
    Magnus(MagnusCmd),
    /// Symplectic matrices.
    #[command(subcommand)]
    Sp(SpCmd),
}

#[derive(Subcommand)]
enum BlinkCmd {
    /// Determinant of the blink linking matrix.
    Det(Input),
    /// The surgery bracket over all pairs.
    Bracket {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "M")]
        base: String,
    },
}

#[derive(Subcommand)]
enum LinkCmd {
    /// Σ f_i φ(L_i) over the components.
    Casson(Input),
}

#[derive(Subcommand)]
enum SeifertCmd {
    /// Alexander polynomial and φ = Δ''(1) of each diagonal block.
    Alexander(Input),
    /// Searches for a congruence PᵀAP = B with entries bounded by `--bound`.
    Congruent {
        a: String,
        b: String,
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
}

#[derive(Subcommand)]
enum CdCmd {
    /// Largest number of pairwise nonintersecting chords.
    Degree(Input),
    /// Rewrites the diagram into m-boundary (or m-marked) terms.
    Reduce {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        m: usize,
        /// Constant in the chord-count bound (tower: c·m³; multi: h(m)).
        #[arg(long)]
        c: Option<u64>,
        /// Use the multi-circle reduction even on one circle.
        #[arg(long)]
        multi: bool,
        #[arg(long)]
        c0: Option<u64>,
        #[arg(long)]
        c1: Option<u64>,
        #[arg(long)]
        c2: Option<u64>,
    },
    /// One 4-term rewrite.
    Fourterm {
        #[command(flatten)]
        input: Input,
        /// Fixed chord (1-based).
        #[arg(long)]
        fixed: usize,
        /// Moving endpoint as `circle:slot` (1-based).
        #[arg(long)]
        at: String,
        #[arg(long)]
        version: u8,
    },
}

#[derive(Subcommand)]
enum JohnsonCmd {
    /// `(λ-1)³` on `a₁∧a₂∧a₃` for λ = [[I, C], [0, I]].
    Triple {
        /// File with the g×g symmetric matrix C, one row per line.
        #[command(flatten)]
        input: Input,
        /// Basis indices of a₁, a₂, a₃ (1-based, e_1..e_g then e'_1..e'_g);
        /// defaults to e'_1, e'_2, e'_3.
        #[arg(long, value_delimiter = ',')]
        wedge: Option<Vec<usize>>,
    },
}

#[derive(Subcommand)]
enum MagnusCmd {
    /// I-adic degree of magnus(w) - 1, truncated at degree N.
    Degree {
        word: String,
        #[arg(long = "N", default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        rank: usize,
    },
}

#[derive(Subcommand)]
enum SpCmd {
    /// Transvections whose product is [[I, C], [0, I]].
    Realize(Input),
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<ftinv::Error> for Failure {
    fn from(e: ftinv::Error) -> Self {
        if e.is_parse() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type Out = Result<Vec<String>, Failure>;

fn read(path: &str) -> Result<String, Failure> {
    let mut s = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    Ok(s)
}

/// Whitespace-separated integer rows; `#` starts a comment.
fn parse_matrix(text: &str) -> Result<IntMatrix, Failure> {
    let mut rows: Vec<IntVec> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<Int>().map_err(|_| Failure::Usage(format!("line {}: bad integer `{t}`", i + 1))))
            .collect::<Result<IntVec, _>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if let Some(r) = rows.iter().find(|r| r.len() != n) {
        return Err(Failure::Usage(format!("matrix is not square: {n} rows but a row of length {}", r.len())));
    }
    Ok(IntMatrix::from_rows(&rows, n))
}

fn words(d: &ChordDiagram) -> String {
    d.circles()
        .iter()
        .map(|c| c.iter().map(|id| (id + 1).to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("|")
}

fn sum_lines(s: &DiagramSum) -> Vec<String> {
    let mut out = vec![format!("terms={}", s.len())];
    for (d, c) in s.terms() {
        out.push(format!(
            "coefficient={c} marks={} boundary_degree={} circles={}",
            d.marks(),
            boundary_degree(d),
            words(d)
        ));
    }
    out
}

fn vec_text(v: &[Int]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn run(cmd: Cmd, exec: Exec) -> Out {
    match cmd {
        Cmd::Blink(BlinkCmd::Det(i)) => {
            let m = blink_linking_matrix(&parse_blink(&read(&i.file)?)?)?;
            let det = m.determinant().expect("square");
            Ok(vec![format!("det={det} unimodular={}", is_unimodular(&m)?)])
        }
        Cmd::Blink(BlinkCmd::Bracket { input, base }) => {
            let s = bracket_expand_blink(exec, &base, &parse_blink(&read(&input.file)?)?)?;
            Ok(vec![
                format!("terms={} coefficient_sum={}", s.len(), s.coefficient_sum()),
                format!("bracket={s}"),
            ])
        }
        Cmd::Link(LinkCmd::Casson(i)) => {
            let data = parse_link(&read(&i.file)?)?;
            if !data.link.is_as_admissible() {
                return Err(Failure::Domain("link must be algebraically split with framings ±1".into()));
            }
            let mut framings = Vec::new();
            let mut blocks = Vec::new();
            for (k, block) in data.knots.iter().enumerate() {
                let b = block
                    .clone()
                    .ok_or_else(|| Failure::Domain(format!("component {} has no Seifert block", k + 1)))?;
                framings.push(data.link.framing(k).to_i32().expect("unit framing"));
                blocks.push(b);
            }
            Ok(vec![format!("casson={}", casson(&framings, &blocks)?)])
        }
        Cmd::Seifert(SeifertCmd::Alexander(i)) => {
            let s = parse_seifert(&read(&i.file)?)?;
            if s.sizes().len() == 1 {
                let d = alexander_block(s.matrix())?;
                return Ok(vec![format!("alexander={d} phi={}", phi(&s)?)]);
            }
            (0..s.sizes().len())
                .map(|k| {
                    let b = s.block(k, k);
                    let d = alexander_block(&b)?;
                    let p = phi(&SeifertMatrix::knot(b)?)?;
                    Ok(format!("block={} alexander={d} phi={p}", k + 1))
                })
                .collect()
        }
        Cmd::Seifert(SeifertCmd::Congruent { a, b, bound }) => {
            let (a, b) = (parse_seifert(&read(&a)?)?, parse_seifert(&read(&b)?)?);
            Ok(vec![format!("congruent={}", seifert_congruent(&a, &b, bound)?)])
        }
        Cmd::Cd(CdCmd::Degree(i)) => {
            let d = parse_diagram(&read(&i.file)?)?;
            Ok(vec![format!("boundary_degree={}", boundary_degree(&d))])
        }
        Cmd::Cd(CdCmd::Reduce { input, m, c, multi, c0, c1, c2 }) => {
            let d = parse_diagram(&read(&input.file)?)?;
            let s = if multi || d.num_circles() != 1 {
                let def = MultiTowerConfig::default();
                let cfg = MultiTowerConfig {
                    c: c.unwrap_or(def.c),
                    c0: c0.unwrap_or(def.c0),
                    c1: c1.unwrap_or(def.c1),
                    c2: c2.unwrap_or(def.c2),
                };
                multi_tower_reduce(exec, &d, m, &cfg)?
            } else {
                tower_reduce(exec, &d, m, c.unwrap_or(DEFAULT_C))?
            };
            Ok(sum_lines(&s))
        }
        Cmd::Cd(CdCmd::Fourterm { input, fixed, at, version }) => {
            let d = parse_diagram(&read(&input.file)?)?;
            let bad = || Failure::Usage(format!("expected `--at circle:slot`, got `{at}`"));
            let (c, p) = at.split_once(':').ok_or_else(bad)?;
            let (c, p): (usize, usize) = (c.parse().map_err(|_| bad())?, p.parse().map_err(|_| bad())?);
            if fixed == 0 || c == 0 || p == 0 {
                return Err(Failure::Usage("chords, circles and slots count from 1".into()));
            }
            let moving = Endpoint { circle: c - 1, slot: p - 1 };
            let terms = four_term_expansion(&d, fixed - 1, moving, version)?;
            let mut out = vec![format!("terms={}", terms.len())];
            for t in terms {
                let kind = match t.kind {
                    TermKind::Swapped => "swapped",
                    TermKind::Carried => "carried",
                    TermKind::Error => "error",
                };
                out.push(format!("sign={:+} kind={kind} marks={} circles={}", t.sign, t.diagram.marks(), words(&t.diagram)));
            }
            Ok(out)
        }
        Cmd::Johnson(JohnsonCmd::Triple { input, wedge: idx }) => {
            let c = parse_matrix(&read(&input.file)?)?;
            let g = c.nrows();
            let lattice = SymplecticLattice::new(g)?;
            let idx = idx.unwrap_or_else(|| vec![g + 1, g + 2, g + 3]);
            if idx.len() != 3 || idx.iter().any(|&i| i == 0 || i > 2 * g) {
                return Err(Failure::Usage(format!("--wedge needs three indices in 1..={}", 2 * g)));
            }
            let el = LbarElement::standard(lattice, &c)?;
            let w = wedge(&idx.iter().map(|&i| lattice.unit(i - 1)).collect::<Vec<_>>())?;
            let tau: MultiVector = triple_commutator_tau(&el, &w)?;
            Ok(vec![format!("tau={tau}")])
        }
        Cmd::Magnus(MagnusCmd::Degree { word, n, rank }) => {
            if n == 0 || n > MAX_DEGREE {
                return Err(Failure::Usage(format!("--N must be in 1..={MAX_DEGREE}")));
            }
            let w = GroupWord::parse(&word, rank)?;
            Ok(vec![format!("degree={}", iadic_degree(&magnus(&w, n)?)?)])
        }
        Cmd::Sp(SpCmd::Realize(i)) => {
            let c = parse_matrix(&read(&i.file)?)?;
            let lattice = SymplecticLattice::new(c.nrows())?;
            let data = realize_symmetric(&c)?;
            let ok = product_of_transvections(&lattice, &data)? == SpMatrix::upper(lattice, &c)?;
            let mut out = vec![format!("factors={} verified={ok}", data.len())];
            out.extend(data.iter().map(|(v, s)| format!("v={} sign={s:+}", vec_text(v))));
            Ok(out)
        }
    }
}

fn executor(jobs: Option<usize>) -> Result<Exec, Failure> {
    match jobs {
        None => Ok(Exec::Parallel),
        Some(0) => Err(Failure::Usage("--jobs must be positive".into())),
        Some(1) => Ok(Exec::Sequential),
        Some(_n) => {
            #[cfg(feature = "parallel")]
            rayon::ThreadPoolBuilder::new()
                .num_threads(_n)
                .build_global()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(Exec::Parallel)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = executor(cli.jobs).and_then(|exec| run(cli.cmd, exec));
    match res {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
