//! Command line front end for the q-deformed Fock space library.
//!
//! Subcommands: `dmat` prints canonical transition matrices in the layout of
//! the golden tables (rows split into sub-blocks by the size of the big
//! partition), `amat` prints bar-involution blocks, `bar` expands the bar
//! image of one basis monomial, `act` applies a Chevalley or Heisenberg
//! generator, `straighten` normalises a wedge monomial, `klcheck` compares
//! the canonical recursion against the Kazhdan–Lusztig route, and
//! `fixtures` loads or verifies the shipped golden tables.
//!
//! Output formats: json (stable, round-trips through serde), tsv, latex
//! (zero entries print as \cdot).  Exit codes: 0 success, 1 usage error,
//! 2 verification mismatch, 3 internal error.  Setting QFOCK_CACHE_DIR
//! enables an on-disk cache of involution blocks; the cache never changes
//! results, only speed.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use qfock::canonical::canonical_from_bar;
use qfock::combinatorics::{
    component_blocks, multipartitions_of, ChargedMultipartition, Partition,
};
use qfock::fock::{AlgebraSide, FockSpace, FockVector, Generator};
use qfock::hecke::KlOracle;
use qfock::involution::{bar_matrix_block, bar_monomial, BarMatrix};
use qfock::laurent::{LaurentPoly, SplitSign};
use qfock::Error;

type Result<T> = std::result::Result<T, Error>;

#[derive(Parser)]
#[command(name = "qfock", version, about = "Canonical bases of higher-level q-deformed Fock spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical transition matrices, split into sub-blocks by big-partition size
    Dmat(DmatArgs),
    /// Bar involution matrices on one degree block, split by charge component
    Amat(AmatArgs),
    /// Bar image of a single basis monomial
    Bar(BarArgs),
    /// Apply a Chevalley generator (e:r, f:r, t:r) or Heisenberg operator (b:m)
    Act(ActArgs),
    /// Straighten a wedge monomial into the ordered basis
    Straighten(StraightenArgs),
    /// Compare canonical blocks against the Kazhdan-Lusztig route
    Klcheck(KlcheckArgs),
    /// Load or verify the shipped golden tables
    Fixtures(FixturesArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for SplitSign {
    fn from(s: SignArg) -> SplitSign {
        match s {
            SignArg::Plus => SplitSign::Plus,
            SignArg::Minus => SplitSign::Minus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    N,
    L,
}

impl From<SideArg> for AlgebraSide {
    fn from(s: SideArg) -> AlgebraSide {
        match s {
            SideArg::N => AlgebraSide::RankN,
            SideArg::L => AlgebraSide::RankL,
        }
    }
}

#[derive(clap::Args)]
struct DmatArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    l: usize,
    /// Component charges, comma separated, length l (e.g. 0,0)
    #[arg(long)]
    s: String,
    /// Total size of the multipartition labels
    #[arg(long)]
    size: usize,
    #[arg(long, value_enum, default_value = "plus")]
    sign: SignArg,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(clap::Args)]
struct AmatArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    l: usize,
    /// Charge of the Fock space (a single integer)
    #[arg(long)]
    s: i64,
    /// Degree of the block (size of the big partitions)
    #[arg(long)]
    size: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(clap::Args)]
struct BarArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    l: usize,
    #[arg(long)]
    s: i64,
    /// Big partition, comma separated ("-" or "" for empty)
    #[arg(long)]
    lambda: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(clap::Args)]
struct ActArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    l: usize,
    #[arg(long)]
    s: i64,
    /// Big partition the generator acts on
    #[arg(long)]
    lambda: String,
    /// Generator: e:r / f:r / t:r (Chevalley) or b:m (Heisenberg, m nonzero)
    #[arg(long)]
    gen: String,
    /// Which quantum affine algebra acts (ignored for b:m)
    #[arg(long, value_enum, default_value = "n")]
    side: SideArg,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(clap::Args)]
struct StraightenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    l: usize,
    /// Wedge indices, comma separated, in the written order
    #[arg(long)]
    indices: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(clap::Args)]
struct KlcheckArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    l: usize,
    /// Either a single charge (all components) or a length-l component vector
    #[arg(long)]
    s: String,
    /// Check every degree block up to this size
    #[arg(long)]
    size: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(clap::Args)]
struct FixturesArgs {
    #[command(subcommand)]
    action: FixturesAction,
}

#[derive(Subcommand)]
enum FixturesAction {
    /// Parse the golden tables and print a summary
    Load {
        /// Directory holding golden_tables.json (default: the built-in copy)
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Recompute every golden table and diff entrywise
    Verify {
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::Internal(_) => 3,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Dmat(args) => run_dmat(args),
        Command::Amat(args) => run_amat(args),
        Command::Bar(args) => run_bar(args),
        Command::Act(args) => run_act(args),
        Command::Straighten(args) => run_straighten(args),
        Command::Klcheck(args) => run_klcheck(args),
        Command::Fixtures(args) => match args.action {
            FixturesAction::Load { dir } => run_fixtures_load(dir.as_deref()),
            FixturesAction::Verify { dir, format } => run_fixtures_verify(dir.as_deref(), format),
        },
    }
}

fn check_ranks(n: usize, l: usize) -> Result<()> {
    if n < 2 || l < 2 {
        return Err(Error::Parse(format!("ranks must be at least 2, got n={n}, l={l}")));
    }
    Ok(())
}

fn parse_charges(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad charge entry {part:?}")))
        })
        .collect()
}

/// Involution block, consulting the on-disk cache when QFOCK_CACHE_DIR is
/// set.  A stale or unreadable cache entry is recomputed and overwritten;
/// results never depend on the cache.
fn bar_block_cached(
    space: &mut FockSpace,
    s: i64,
    d: usize,
    component: &[i64],
) -> Result<BarMatrix> {
    let Some(dir) = std::env::var_os("QFOCK_CACHE_DIR") else {
        return bar_matrix_block(space, s, d, component);
    };
    let dir = PathBuf::from(dir);
    let tag: Vec<String> = component.iter().map(|c| c.to_string()).collect();
    let path = dir.join(format!(
        "bar-v1-n{}-l{}-s{}-d{}-c{}.json",
        space.n(),
        space.l(),
        s,
        d,
        tag.join("_")
    ));
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(cached) = serde_json::from_str::<BarMatrix>(&text) {
            if cached.n() == space.n()
                && cached.l() == space.l()
                && cached.charge() == s
                && cached.degree() == d
                && cached.component() == component
            {
                return Ok(cached);
            }
        }
        eprintln!("warning: ignoring stale cache entry {}", path.display());
    }
    let computed = bar_matrix_block(space, s, d, component)?;
    if let Err(err) = std::fs::create_dir_all(&dir) {
        eprintln!("warning: cannot create cache directory: {err}");
        return Ok(computed);
    }
    match serde_json::to_string(&computed) {
        Ok(text) => {
            if let Err(err) = std::fs::write(&path, text) {
                eprintln!("warning: cache write failed: {err}");
            }
        }
        Err(err) => eprintln!("warning: cache encode failed: {err}"),
    }
    Ok(computed)
}

// ---------------------------------------------------------------------------
// Rendering helpers

/// One displayed matrix block with its labels.
struct RenderBlock {
    heading: String,
    meta: serde_json::Value,
    labels: Vec<Partition>,
    mps: Vec<ChargedMultipartition>,
    entries: Vec<Vec<LaurentPoly>>,
}

fn poly_latex(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "\\cdot".to_string();
    }
    let mut out = String::new();
    for (e, c) in p.iter() {
        let coeff = c.to_string();
        let (negative, magnitude) = match coeff.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, coeff),
        };
        if negative {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let q_part = match e {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{{{e}}}"),
        };
        if q_part.is_empty() {
            out.push_str(&magnitude);
        } else if magnitude == "1" {
            out.push_str(&q_part);
        } else {
            out.push_str(&magnitude);
            out.push_str("\\,");
            out.push_str(&q_part);
        }
    }
    out
}

fn partition_latex(p: &Partition) -> String {
    if p.is_empty() {
        return "\\emptyset".to_string();
    }
    let mut pieces = Vec::new();
    let parts = p.parts();
    let mut idx = 0;
    while idx < parts.len() {
        let mut run = idx;
        while run + 1 < parts.len() && parts[run + 1] == parts[idx] {
            run += 1;
        }
        let count = run - idx + 1;
        if count == 1 {
            pieces.push(parts[idx].to_string());
        } else {
            pieces.push(format!("{}^{{{}}}", parts[idx], count));
        }
        idx = run + 1;
    }
    format!("({})", pieces.join(","))
}

fn multipartition_latex(cmp: &ChargedMultipartition) -> String {
    let inner: Vec<String> = cmp.components().iter().map(partition_latex).collect();
    format!("({})", inner.join(","))
}

fn render_blocks(
    format: Format,
    meta: serde_json::Value,
    blocks: &[RenderBlock],
) -> String {
    match format {
        Format::Json => {
            let mut top = meta;
            let rendered: Vec<serde_json::Value> = blocks
                .iter()
                .map(|b| {
                    let mut obj = b.meta.clone();
                    obj["rows"] = json!(b.mps.iter().map(|m| m.label()).collect::<Vec<_>>());
                    obj["big_rows"] = json!(b
                        .labels
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>());
                    obj["entries"] = serde_json::to_value(&b.entries)
                        .expect("laurent polynomials encode to json");
                    obj
                })
                .collect();
            top["blocks"] = serde_json::Value::Array(rendered);
            let mut text = serde_json::to_string_pretty(&top).expect("json output");
            text.push('\n');
            text
        }
        Format::Tsv => {
            let mut out = String::new();
            for block in blocks {
                out.push_str(&format!("# {}\n", block.heading));
                for (i, row) in block.entries.iter().enumerate() {
                    let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
                    out.push_str(&format!(
                        "{}\t{}\t{}\n",
                        block.labels[i],
                        block.mps[i].label(),
                        cells.join("\t")
                    ));
                }
                out.push('\n');
            }
            out
        }
        Format::Latex => {
            let mut out = String::new();
            for block in blocks {
                out.push_str(&format!("% {}\n", block.heading));
                let cols = "c".repeat(block.entries.len().max(1));
                out.push_str(&format!("\\begin{{array}}{{l|l|{cols}}}\n"));
                for (i, row) in block.entries.iter().enumerate() {
                    let cells: Vec<String> = row.iter().map(poly_latex).collect();
                    out.push_str(&format!(
                        "{} & {} & {} \\\\\n",
                        partition_latex(&block.labels[i]),
                        multipartition_latex(&block.mps[i]),
                        cells.join(" & ")
                    ));
                }
                out.push_str("\\end{array}\n");
            }
            out
        }
    }
}

fn vector_output(
    format: Format,
    space: &FockSpace,
    meta: serde_json::Value,
    v: &FockVector,
) -> String {
    let annotated: Vec<(Partition, ChargedMultipartition, LaurentPoly)> = v
        .terms()
        .map(|(p, c)| {
            let mp = space.labels(AlgebraSide::RankN, p, v.charge());
            (p.clone(), mp, c.clone())
        })
        .collect();
    match format {
        Format::Json => {
            let mut top = meta;
            top["charge"] = json!(v.charge());
            top["terms"] = json!(annotated
                .iter()
                .map(|(p, mp, c)| {
                    json!({
                        "partition": p.to_string(),
                        "mp": mp.label(),
                        "coeff": serde_json::to_value(c).expect("laurent json"),
                    })
                })
                .collect::<Vec<_>>());
            let mut text = serde_json::to_string_pretty(&top).expect("json output");
            text.push('\n');
            text
        }
        Format::Tsv => {
            let mut out = String::new();
            for (p, mp, c) in &annotated {
                out.push_str(&format!("{}\t{}\t{}\n", p, mp.label(), c));
            }
            out
        }
        Format::Latex => {
            if annotated.is_empty() {
                return "0\n".to_string();
            }
            let rendered: Vec<String> = annotated
                .iter()
                .map(|(p, _, c)| {
                    let ket = format!("|{};{}\\rangle", partition_latex(p), v.charge());
                    if c.is_one() {
                        ket
                    } else if c.num_terms() == 1 {
                        format!("{}\\,{}", poly_latex(c), ket)
                    } else {
                        format!("({})\\,{}", poly_latex(c), ket)
                    }
                })
                .collect();
            let mut line = rendered.join(" + ");
            line.push('\n');
            line
        }
    }
}

// ---------------------------------------------------------------------------
// dmat and the fixture machinery

/// Canonical sub-blocks for multipartition labels of the given total size:
/// one block per occupied big-partition degree, rows restricted to the
/// labels of that size, in the natural (descending lexicographic) order.
fn dmat_sub_blocks(
    n: usize,
    l: usize,
    charges: &[i64],
    size: usize,
    sign: SplitSign,
) -> Result<Vec<RenderBlock>> {
    let s: i64 = charges.iter().sum();
    let mut space = FockSpace::new(n, l);
    let mut degrees: BTreeSet<usize> = BTreeSet::new();
    for comps in multipartitions_of(size, l) {
        let cmp = ChargedMultipartition::new(comps, charges.to_vec())?;
        let (lambda, _) = space.labels_inverse(AlgebraSide::RankN, &cmp)?;
        degrees.insert(lambda.size() as usize);
    }
    let mut out = Vec::new();
    for d in degrees {
        let bar = bar_block_cached(&mut space, s, d, charges)?;
        let order: Vec<usize> = (0..bar.dim()).collect();
        let tm = canonical_from_bar(&space, &bar, sign, &order)?;
        let keep: Vec<usize> = tm
            .mp_labels()
            .iter()
            .enumerate()
            .filter(|(_, mp)| mp.total_size() == size as i64)
            .map(|(i, _)| i)
            .collect();
        let labels: Vec<Partition> = keep.iter().map(|&i| tm.labels()[i].clone()).collect();
        let mps: Vec<ChargedMultipartition> =
            keep.iter().map(|&i| tm.mp_labels()[i].clone()).collect();
        let entries: Vec<Vec<LaurentPoly>> = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| tm.entry(i, j).clone()).collect())
            .collect();
        out.push(RenderBlock {
            heading: format!("degree {d}"),
            meta: json!({ "degree": d }),
            labels,
            mps,
            entries,
        });
    }
    Ok(out)
}

fn run_dmat(args: DmatArgs) -> Result<ExitCode> {
    check_ranks(args.n, args.l)?;
    let charges = parse_charges(&args.s)?;
    if charges.len() != args.l {
        return Err(Error::Parse(format!(
            "expected {} component charges, got {}",
            args.l,
            charges.len()
        )));
    }
    let sign: SplitSign = args.sign.into();
    let blocks = dmat_sub_blocks(args.n, args.l, &charges, args.size, sign)?;
    let meta = json!({
        "n": args.n,
        "l": args.l,
        "charges": charges,
        "size": args.size,
        "sign": match sign { SplitSign::Plus => "plus", SplitSign::Minus => "minus" },
    });
    print!("{}", render_blocks(args.format, meta, &blocks));
    Ok(ExitCode::SUCCESS)
}

fn run_amat(args: AmatArgs) -> Result<ExitCode> {
    check_ranks(args.n, args.l)?;
    let mut space = FockSpace::new(args.n, args.l);
    let mut blocks = Vec::new();
    for (component, _) in component_blocks(args.size, args.s, args.n, args.l) {
        let bar = bar_block_cached(&mut space, args.s, args.size, &component)?;
        let labels = bar.labels().to_vec();
        let mps: Vec<ChargedMultipartition> = labels
            .iter()
            .map(|p| space.labels(AlgebraSide::RankN, p, args.s))
            .collect();
        let tag: Vec<String> = component.iter().map(|c| c.to_string()).collect();
        blocks.push(RenderBlock {
            heading: format!("component {}", tag.join(",")),
            meta: json!({ "component": component }),
            labels,
            mps,
            entries: bar.rows().to_vec(),
        });
    }
    let meta = json!({
        "n": args.n,
        "l": args.l,
        "charge": args.s,
        "degree": args.size,
    });
    print!("{}", render_blocks(args.format, meta, &blocks));
    Ok(ExitCode::SUCCESS)
}

fn run_bar(args: BarArgs) -> Result<ExitCode> {
    check_ranks(args.n, args.l)?;
    let lambda = Partition::from_str(&args.lambda)?;
    let mut space = FockSpace::new(args.n, args.l);
    let image = bar_monomial(&mut space, &lambda, args.s)?;
    let meta = json!({
        "n": args.n,
        "l": args.l,
        "lambda": lambda.to_string(),
    });
    print!("{}", vector_output(args.format, &space, meta, &image));
    Ok(ExitCode::SUCCESS)
}

fn run_act(args: ActArgs) -> Result<ExitCode> {
    check_ranks(args.n, args.l)?;
    let lambda = Partition::from_str(&args.lambda)?;
    let mut space = FockSpace::new(args.n, args.l);
    let start = FockVector::basis(lambda.clone(), args.s);
    let image = if let Some(rest) = args.gen.strip_prefix("b:") {
        let m: i64 = rest
            .parse()
            .map_err(|_| Error::Parse(format!("bad Heisenberg index {rest:?}")))?;
        if m == 0 {
            return Err(Error::Parse("Heisenberg index must be nonzero".into()));
        }
        space.heisenberg_b(m, &start)?
    } else {
        let gen = Generator::from_str(&args.gen)?;
        space.chevalley_action(args.side.into(), gen, &start)?
    };
    let meta = json!({
        "n": args.n,
        "l": args.l,
        "lambda": lambda.to_string(),
        "gen": args.gen,
    });
    print!("{}", vector_output(args.format, &space, meta, &image));
    Ok(ExitCode::SUCCESS)
}

fn run_straighten(args: StraightenArgs) -> Result<ExitCode> {
    check_ranks(args.n, args.l)?;
    let indices = parse_charges(&args.indices)?;
    let mut space = FockSpace::new(args.n, args.l);
    let nf = space.normal_form(&indices)?;
    match args.format {
        Format::Json => {
            let top = json!({
                "n": args.n,
                "l": args.l,
                "indices": indices,
                "terms": nf
                    .terms()
                    .map(|(idx, c)| {
                        json!({
                            "indices": idx,
                            "coeff": serde_json::to_value(c).expect("laurent json"),
                        })
                    })
                    .collect::<Vec<_>>(),
            });
            let mut text = serde_json::to_string_pretty(&top).expect("json output");
            text.push('\n');
            print!("{text}");
        }
        Format::Tsv => {
            for (idx, c) in nf.terms() {
                let cells: Vec<String> = idx.iter().map(|k| k.to_string()).collect();
                println!("{}\t{}", cells.join(","), c);
            }
        }
        Format::Latex => {
            let rendered: Vec<String> = nf
                .terms()
                .map(|(idx, c)| {
                    let wedge: Vec<String> =
                        idx.iter().map(|k| format!("u_{{{k}}}")).collect();
                    let monomial = wedge.join("\\wedge ");
                    if c.is_one() {
                        monomial
                    } else if c.num_terms() == 1 {
                        format!("{}\\,{}", poly_latex(c), monomial)
                    } else {
                        format!("({})\\,{}", poly_latex(c), monomial)
                    }
                })
                .collect();
            if rendered.is_empty() {
                println!("0");
            } else {
                println!("{}", rendered.join(" + "));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// klcheck

fn run_klcheck(args: KlcheckArgs) -> Result<ExitCode> {
    check_ranks(args.n, args.l)?;
    let charges = parse_charges(&args.s)?;
    let (s, fixed_component) = match charges.len() {
        1 => (charges[0], None),
        len if len == args.l => (charges.iter().sum(), Some(charges.clone())),
        len => {
            return Err(Error::Parse(format!(
                "expected 1 or {} charges, got {len}",
                args.l
            )))
        }
    };
    if args.format == Format::Latex {
        return Err(Error::Parse("latex output is not defined for klcheck".into()));
    }
    let mut space = FockSpace::new(args.n, args.l);
    let mut oracle = KlOracle::new();
    let mut lines = Vec::new();
    let mut checks = Vec::new();
    let mut total_mismatches = 0usize;
    for d in 1..=args.size {
        let components: Vec<Vec<i64>> = match &fixed_component {
            Some(c) => vec![c.clone()],
            None => component_blocks(d, s, args.n, args.l)
                .into_iter()
                .map(|(c, _)| c)
                .collect(),
        };
        for component in components {
            for sign in [SplitSign::Plus, SplitSign::Minus] {
                let bar = bar_block_cached(&mut space, s, d, &component)?;
                let order: Vec<usize> = (0..bar.dim()).collect();
                let tm = canonical_from_bar(&space, &bar, sign, &order)?;
                let mut mismatches = Vec::new();
                for (j, col) in tm.labels().iter().enumerate() {
                    for (i, row) in tm.labels().iter().enumerate() {
                        let via_kl = oracle.d_entry(col, row, s, args.n, args.l, sign)?;
                        if &via_kl != tm.entry(i, j) {
                            mismatches.push(format!(
                                "({row}, {col}): recursion={}, kl={via_kl}",
                                tm.entry(i, j)
                            ));
                        }
                    }
                }
                let tag: Vec<String> = component.iter().map(|c| c.to_string()).collect();
                let sign_name = match sign {
                    SplitSign::Plus => "plus",
                    SplitSign::Minus => "minus",
                };
                let status = if mismatches.is_empty() {
                    "ok".to_string()
                } else {
                    format!("MISMATCH {}", mismatches.join("; "))
                };
                lines.push(format!(
                    "degree {d} component {} sign {sign_name}: {}x{} {status}",
                    tag.join(","),
                    tm.dim(),
                    tm.dim()
                ));
                total_mismatches += mismatches.len();
                checks.push(json!({
                    "degree": d,
                    "component": component,
                    "sign": sign_name,
                    "dim": tm.dim(),
                    "mismatches": mismatches,
                }));
            }
        }
    }
    match args.format {
        Format::Json => {
            let top = json!({
                "n": args.n,
                "l": args.l,
                "charge": s,
                "max_degree": args.size,
                "ok": total_mismatches == 0,
                "checks": checks,
            });
            let mut text = serde_json::to_string_pretty(&top).expect("json output");
            text.push('\n');
            print!("{text}");
        }
        _ => {
            for line in &lines {
                println!("{line}");
            }
        }
    }
    if total_mismatches == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(2))
    }
}

// ---------------------------------------------------------------------------
// fixtures

const EMBEDDED_FIXTURE: &str = include_str!("../fixtures/golden_tables.json");
const FIXTURE_NAME: &str = "golden_tables.json";

#[derive(Serialize, Deserialize)]
struct FixtureFile {
    n: usize,
    l: usize,
    charges: Vec<i64>,
    sign: String,
    tables: Vec<FixtureTable>,
}

#[derive(Serialize, Deserialize)]
struct FixtureTable {
    size: usize,
    blocks: Vec<FixtureBlock>,
}

#[derive(Serialize, Deserialize)]
struct FixtureBlock {
    degree: usize,
    rows: Vec<String>,
    big_rows: Vec<String>,
    entries: Vec<Vec<LaurentPoly>>,
}

fn load_fixture(dir: Option<&Path>) -> Result<FixtureFile> {
    let text = match dir {
        Some(d) => {
            let path = d.join(FIXTURE_NAME);
            std::fs::read_to_string(&path)
                .map_err(|err| Error::Parse(format!("cannot read {}: {err}", path.display())))?
        }
        None => EMBEDDED_FIXTURE.to_string(),
    };
    let fixture: FixtureFile = serde_json::from_str(&text)
        .map_err(|err| Error::Parse(format!("bad fixture file: {err}")))?;
    if fixture.charges.len() != fixture.l {
        return Err(Error::Parse(format!(
            "fixture charge vector has length {}, expected {}",
            fixture.charges.len(),
            fixture.l
        )));
    }
    Ok(fixture)
}

fn fixture_sign(fix: &FixtureFile) -> Result<SplitSign> {
    match fix.sign.as_str() {
        "plus" => Ok(SplitSign::Plus),
        "minus" => Ok(SplitSign::Minus),
        other => Err(Error::Parse(format!("bad fixture sign {other:?}"))),
    }
}

fn run_fixtures_load(dir: Option<&Path>) -> Result<ExitCode> {
    let fixture = load_fixture(dir)?;
    fixture_sign(&fixture)?;
    println!(
        "golden tables: n={} l={} charges {:?} sign {}",
        fixture.n, fixture.l, fixture.charges, fixture.sign
    );
    for table in &fixture.tables {
        let dims: Vec<String> = table
            .blocks
            .iter()
            .map(|b| format!("degree {}: {}x{}", b.degree, b.big_rows.len(), b.big_rows.len()))
            .collect();
        println!("size {}: {}", table.size, dims.join(", "));
        for block in &table.blocks {
            if block.rows.len() != block.big_rows.len()
                || block.entries.len() != block.big_rows.len()
                || block.entries.iter().any(|r| r.len() != block.big_rows.len())
            {
                return Err(Error::Parse(format!(
                    "inconsistent dimensions in size {} degree {}",
                    table.size, block.degree
                )));
            }
        }
    }
    println!("fixtures parse ok");
    Ok(ExitCode::SUCCESS)
}

fn verify_fixture(fixture: &FixtureFile) -> Result<(Vec<String>, usize)> {
    let sign = fixture_sign(fixture)?;
    let mut lines = Vec::new();
    let mut mismatches = 0usize;
    for table in &fixture.tables {
        let computed = dmat_sub_blocks(fixture.n, fixture.l, &fixture.charges, table.size, sign)?;
        let computed_degrees: BTreeSet<usize> = computed
            .iter()
            .filter(|b| !b.labels.is_empty())
            .map(|b| b.heading.trim_start_matches("degree ").parse().unwrap_or(0))
            .collect();
        let fixture_degrees: BTreeSet<usize> = table.blocks.iter().map(|b| b.degree).collect();
        if computed_degrees != fixture_degrees {
            lines.push(format!(
                "size {}: DEGREE SETS DIFFER computed {:?} vs table {:?}",
                table.size, computed_degrees, fixture_degrees
            ));
            mismatches += 1;
            continue;
        }
        for block in &table.blocks {
            let found = computed
                .iter()
                .find(|b| b.heading == format!("degree {}", block.degree))
                .expect("degree sets already compared");
            let mut errors = Vec::new();
            let big: Vec<String> = found.labels.iter().map(|p| p.to_string()).collect();
            let rows: Vec<String> = found.mps.iter().map(|m| m.label()).collect();
            if big != block.big_rows {
                errors.push(format!(
                    "row partitions differ: computed {:?} vs table {:?}",
                    big, block.big_rows
                ));
            }
            if rows != block.rows {
                errors.push(format!(
                    "row labels differ: computed {:?} vs table {:?}",
                    rows, block.rows
                ));
            }
            if errors.is_empty() {
                for i in 0..block.entries.len() {
                    for j in 0..block.entries.len() {
                        if found.entries[i][j] != block.entries[i][j] {
                            errors.push(format!(
                                "entry ({}, {}): computed {}, table {}",
                                block.big_rows[i],
                                block.big_rows[j],
                                found.entries[i][j],
                                block.entries[i][j]
                            ));
                        }
                    }
                }
            }
            let dim = block.big_rows.len();
            if errors.is_empty() {
                lines.push(format!(
                    "size {} degree {}: {dim}x{dim} ok",
                    table.size, block.degree
                ));
            } else {
                mismatches += errors.len();
                lines.push(format!(
                    "size {} degree {}: {dim}x{dim} MISMATCH {}",
                    table.size,
                    block.degree,
                    errors.join("; ")
                ));
            }
        }
    }
    Ok((lines, mismatches))
}

fn run_fixtures_verify(dir: Option<&Path>, format: Format) -> Result<ExitCode> {
    let fixture = load_fixture(dir)?;
    let (lines, mismatches) = verify_fixture(&fixture)?;
    match format {
        Format::Json => {
            let top = json!({
                "n": fixture.n,
                "l": fixture.l,
                "charges": fixture.charges,
                "sign": fixture.sign,
                "ok": mismatches == 0,
                "results": lines,
            });
            let mut text = serde_json::to_string_pretty(&top).expect("json output");
            text.push('\n');
            print!("{text}");
        }
        _ => {
            for line in &lines {
                println!("{line}");
            }
            if mismatches == 0 {
                println!("all tables match");
            } else {
                println!("{mismatches} mismatches");
            }
        }
    }
    if mismatches == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(2))
    }
}
