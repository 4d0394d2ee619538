//! Command-line surface: file formats, reports and the random-complex explorer.
//!
//! Complex files hold one facet per line, vertices separated by whitespace or
//! commas. An optional `#labels a b c` header fixes the vertex order; other
//! `#` text is a comment. A line reading `{}` is the empty facet, so `{}`
//! alone describes the complex `{∅}` and a file without facets is void.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::complex::{maximal_sets, natural_cmp, SimplicialComplex, VertexSet};
use crate::error::{Error, Result};
use crate::facet_graph::{self, SpanningTree};
use crate::ordering::{self, FacetOrdering, Limits};
use crate::{homology, leray, par, stanley_reisner as sr, structure};

pub const SCHEMA_VERSION: &str = "leray-lab/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

const MAX_RETRIES: usize = 64;

/// Parses the complex file format.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut header: Option<Vec<String>> = None;
    let mut facets: Vec<Vec<(String, usize, usize)>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        if let Some(rest) = raw.trim_start().strip_prefix("#labels") {
            if !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
                return Err(Error::parse(line_no, 1, "unknown directive; expected `#labels`"));
            }
            if header.is_some() {
                return Err(Error::parse(line_no, 1, "second `#labels` header"));
            }
            if !facets.is_empty() {
                return Err(Error::parse(line_no, 1, "`#labels` must precede the facets"));
            }
            let offset = raw.len() - rest.len();
            let mut labels = Vec::new();
            for (col, tok) in tokens(rest, offset) {
                if labels.contains(&tok) {
                    return Err(Error::parse(line_no, col, format!("duplicate label {tok:?}")));
                }
                labels.push(tok);
            }
            header = Some(labels);
            continue;
        }
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<(usize, String)> = tokens(body, 0).collect();
        if toks.is_empty() {
            continue;
        }
        if toks.iter().any(|(_, t)| t == "{}") {
            if toks.len() > 1 {
                return Err(Error::parse(line_no, toks[0].0, "`{}` must stand alone on its line"));
            }
            facets.push(Vec::new());
            continue;
        }
        facets.push(toks.into_iter().map(|(col, t)| (t, line_no, col)).collect());
    }

    let labels = match header {
        Some(h) => h,
        None => {
            let mut seen: Vec<String> = Vec::new();
            for (t, _, _) in facets.iter().flatten() {
                if !seen.contains(t) {
                    seen.push(t.clone());
                }
            }
            seen.sort_by(|a, b| natural_cmp(a, b));
            seen
        }
    };
    if labels.len() > 64 {
        return Err(Error::TooManyVertices(labels.len()));
    }
    let mut raw_facets = Vec::with_capacity(facets.len());
    for facet in &facets {
        let mut set = VertexSet::EMPTY;
        for (t, line, col) in facet {
            let v = labels
                .iter()
                .position(|l| l == t)
                .ok_or_else(|| Error::parse(*line, *col, format!("label {t:?} missing from the #labels header")))?;
            set = set.with(v);
        }
        raw_facets.push(set);
    }
    SimplicialComplex::from_facets(raw_facets, labels).map_err(|e| match e {
        Error::UnusedLabel(l) => Error::parse(1, 1, format!("header label {l:?} is not used by any facet")),
        other => other,
    })
}

/// Tokens split on whitespace and commas, with 1-based character columns.
fn tokens(s: &str, byte_offset: usize) -> impl Iterator<Item = (usize, String)> + '_ {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    for (i, &(_, c)) in chars.iter().enumerate() {
        let sep = c.is_whitespace() || c == ',';
        match (sep, start) {
            (false, None) => start = Some(i),
            (true, Some(st)) => {
                out.push((st, i));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((st, chars.len()));
    }
    out.into_iter().map(move |(a, b)| {
        let text: String = chars[a..b].iter().map(|&(_, c)| c).collect();
        (byte_offset + a + 1, text)
    })
}

/// Prints a complex in the file format; `parse_complex` inverts it.
pub fn format_complex(x: &SimplicialComplex) -> String {
    let mut out = String::from("#labels");
    for l in x.labels() {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
    for f in x.facets() {
        if f.is_empty() {
            out.push_str("{}");
        } else {
            out.push_str(&x.labels_of(*f).join(" "));
        }
        out.push('\n');
    }
    out
}

/// A complex plus a one-line reason, readable back by `parse_complex`.
pub fn reproducer(x: &SimplicialComplex, reason: &str) -> String {
    format!("#reason {reason}\n{}", format_complex(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Args)]
pub struct ExploreConfig {
    #[arg(long = "vertices")]
    pub n_vertices: usize,
    #[arg(long = "facets")]
    pub n_facets: usize,
    #[arg(long, default_value_t = 0)]
    pub dim_min: usize,
    /// Defaults to `vertices - 2`.
    #[arg(long)]
    pub dim_max: Option<usize>,
    #[arg(long)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
}

impl ExploreConfig {
    pub fn new(n_vertices: usize, n_facets: usize, samples: usize, seed: u64) -> Self {
        ExploreConfig { n_vertices, n_facets, dim_min: 0, dim_max: None, samples, seed }
    }

    pub fn dim_max(&self) -> usize {
        self.dim_max.unwrap_or(self.n_vertices.saturating_sub(2))
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_vertices == 0 || self.n_vertices > 64 {
            return Err(Error::Config(format!("vertices must lie in 1..=64, got {}", self.n_vertices)));
        }
        if self.n_facets == 0 {
            return Err(Error::Config("facets must be positive".into()));
        }
        if self.dim_min > self.dim_max() {
            return Err(Error::Config(format!("dim-min {} exceeds dim-max {}", self.dim_min, self.dim_max())));
        }
        if self.dim_max() + 1 > self.n_vertices {
            return Err(Error::Config(format!("dim-max {} needs more than {} vertices", self.dim_max(), self.n_vertices)));
        }
        Ok(())
    }
}

fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn sample_complex(cfg: &ExploreConfig, rng: &mut ChaCha8Rng) -> Result<SimplicialComplex> {
    cfg.validate()?;
    let (lo, hi) = (cfg.dim_min + 1, cfg.dim_max() + 1);
    for _ in 0..MAX_RETRIES {
        let drawn: Vec<VertexSet> = (0..cfg.n_facets)
            .map(|_| {
                let size = rng.random_range(lo..=hi);
                rand::seq::index::sample(rng, cfg.n_vertices, size).into_iter().collect()
            })
            .collect();
        let facets = maximal_sets(drawn);
        if facets.is_empty() {
            continue;
        }
        // relabel the used vertices onto 1..=k, closing gaps
        let used = facets.iter().fold(VertexSet::EMPTY, |a, &f| a | f);
        let rank = |v: usize| (used & VertexSet::full(v)).len();
        let relabelled = facets.iter().map(|f| f.iter().map(rank).collect()).collect();
        let labels = (1..=used.len()).map(|v| v.to_string()).collect();
        return SimplicialComplex::from_facets(relabelled, labels);
    }
    Err(Error::RetriesExhausted(MAX_RETRIES))
}

/// The `index`-th sample of the explorer stream; depends only on
/// `(cfg, index)`.
pub fn random_complex(cfg: &ExploreConfig, index: u64) -> Result<SimplicialComplex> {
    sample_complex(cfg, &mut stream_rng(cfg.seed, index))
}

/// A facet order drawn from the same stream, after the complex.
pub fn random_sample(cfg: &ExploreConfig, index: u64) -> Result<(SimplicialComplex, FacetOrdering)> {
    let mut rng = stream_rng(cfg.seed, index);
    let x = sample_complex(cfg, &mut rng)?;
    let mut perm: Vec<usize> = (0..x.num_facets()).collect();
    perm.shuffle(&mut rng);
    Ok((x, FacetOrdering::new(perm)?))
}

#[derive(Parser, Debug)]
#[command(name = "leray-lab", version, about = "Leray numbers, facet-order bounds and Stanley-Reisner invariants")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker thread cap; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Largest facet count accepted by the permutation oracle.
    #[arg(long, global = true, default_value_t = Limits::default().brute_max_facets)]
    max_brute: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// f-vector and reduced Betti numbers.
    Homology { file: String },
    /// Leray number with a witness window.
    Leray { file: String },
    /// M(X) by subset DP, or M_≺ for a given order.
    M {
        file: String,
        /// 1-based facet indices, comma separated.
        #[arg(long)]
        order: Option<String>,
        /// Cross-check against the permutation oracle.
        #[arg(long)]
        brute: bool,
    },
    /// Weak-shelling test for an order, or the best weak shelling.
    Shelling {
        file: String,
        #[arg(long)]
        order: Option<String>,
    },
    /// Graded Betti table of the Stanley-Reisner ideal.
    Betti { file: String },
    /// Complex of a squarefree monomial ideal.
    Ideal2complex { file: String },
    /// Stanley-Reisner ideal of a complex.
    Complex2ideal { file: String },
    /// Regularity against the weak and classic Eisenbud-Goto bounds.
    Eg { file: String },
    /// Facet-graph spanning trees.
    Tree {
        file: String,
        #[arg(long)]
        order: Option<String>,
        /// Print the weighted graph and tree as an edge list.
        #[arg(long)]
        export: bool,
    },
    /// Structure report for the case L(X) = M(X).
    Structure { file: String },
    /// Sample random complexes and check the sandwich inequalities.
    Explore {
        #[command(flatten)]
        cfg: ExploreConfig,
        /// Directory to write reproducer files into.
        #[arg(long)]
        dump: Option<std::path::PathBuf>,
    },
}

/// Output of one invocation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Lib(Error),
    Io(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = std::result::Result<(), Failure>;

struct Ctx {
    json: bool,
    limits: Limits,
    out: String,
    err: String,
}

impl Ctx {
    fn emit(&mut self, command: &str, mut body: Value, text: impl FnOnce(&mut String)) {
        if self.json {
            let obj = body.as_object_mut().expect("reports are objects");
            obj.insert("version".into(), json!(SCHEMA_VERSION));
            obj.insert("command".into(), json!(command));
            self.out.push_str(&serde_json::to_string_pretty(&body).expect("json"));
            self.out.push('\n');
        } else {
            text(&mut self.out);
        }
    }
}

/// Runs the CLI on `args` (including the program name) and captures output.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { code, stdout: rendered, stderr: String::new() }
            };
        }
    };
    let limits = Limits { brute_max_facets: cli.max_brute, ..Limits::default() };
    crate::with_threads(cli.threads, move || {
        let mut ctx = Ctx { json: cli.json, limits, out: String::new(), err: String::new() };
        let code = match dispatch(&mut ctx, cli.command) {
            Ok(()) => EXIT_OK,
            Err(Failure::Violation(reason)) => {
                let _ = writeln!(ctx.err, "invariant violation: {reason}");
                EXIT_VIOLATION
            }
            Err(Failure::Io(msg)) => {
                let _ = writeln!(ctx.err, "error: {msg}");
                EXIT_INPUT
            }
            Err(Failure::Lib(e)) => {
                let _ = writeln!(ctx.err, "error: {e}");
                if e.is_resource_cap() {
                    EXIT_RESOURCE
                } else {
                    EXIT_INPUT
                }
            }
        };
        Outcome { code, stdout: ctx.out, stderr: ctx.err }
    })
}

/// Runs the CLI against the real stdout and stderr; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let o = execute(args);
    print!("{}", o.stdout);
    eprint!("{}", o.stderr);
    o.code
}

fn read(path: &str) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))
}

fn load(path: &str) -> std::result::Result<SimplicialComplex, Failure> {
    Ok(parse_complex(&read(path)?)?)
}

/// Parses `--order` (1-based, comma separated) into a facet ordering.
pub fn parse_order(spec: &str, m: usize) -> Result<FacetOrdering> {
    let mut perm = Vec::new();
    for (i, part) in spec.split(',').enumerate() {
        let col = spec.split(',').take(i).map(|p| p.len() + 1).sum::<usize>() + 1;
        let v: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::parse(1, col, format!("expected a facet index, got {:?}", part.trim())))?;
        if v == 0 || v > m {
            return Err(Error::parse(1, col, format!("facet index {v} outside 1..={m}")));
        }
        perm.push(v - 1);
    }
    if perm.len() != m {
        return Err(Error::OrderLength { expected: m, got: perm.len() });
    }
    FacetOrdering::new(perm)
}

fn order_indices(o: &FacetOrdering) -> Vec<usize> {
    o.as_slice().iter().map(|i| i + 1).collect()
}

fn order_text(o: &FacetOrdering) -> String {
    order_indices(o).iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn set_json(x: &SimplicialComplex, s: VertexSet) -> Value {
    json!(x.labels_of(s))
}

fn set_text(x: &SimplicialComplex, s: VertexSet) -> String {
    format!("{{{}}}", x.labels_of(s).join(" "))
}

fn facets_json(x: &SimplicialComplex) -> Value {
    Value::Array(x.facets().iter().map(|f| set_json(x, *f)).collect())
}

fn facet_list(x: &SimplicialComplex) -> String {
    x.facets().iter().enumerate().map(|(i, f)| format!("{}:{}", i + 1, set_text(x, *f))).collect::<Vec<_>>().join(" ")
}

fn dispatch(ctx: &mut Ctx, command: Command) -> CmdResult {
    match command {
        Command::Homology { file } => homology_cmd(ctx, &load(&file)?),
        Command::Leray { file } => leray_cmd(ctx, &load(&file)?),
        Command::M { file, order, brute } => m_cmd(ctx, &load(&file)?, order.as_deref(), brute),
        Command::Shelling { file, order } => shelling_cmd(ctx, &load(&file)?, order.as_deref()),
        Command::Betti { file } => betti_cmd(ctx, &load(&file)?),
        Command::Ideal2complex { file } => ideal2complex_cmd(ctx, &read(&file)?),
        Command::Complex2ideal { file } => complex2ideal_cmd(ctx, &load(&file)?),
        Command::Eg { file } => eg_cmd(ctx, &load(&file)?),
        Command::Tree { file, order, export } => tree_cmd(ctx, &load(&file)?, order.as_deref(), export),
        Command::Structure { file } => structure_cmd(ctx, &load(&file)?),
        Command::Explore { cfg, dump } => explore_cmd(ctx, &cfg, dump.as_deref()),
    }
}

fn homology_cmd(ctx: &mut Ctx, x: &SimplicialComplex) -> CmdResult {
    let f = x.f_vector()?;
    let betti = homology::all_betti(x)?.values;
    let dim = x.dimension()?;
    ctx.emit(
        "homology",
        json!({ "dimension": dim, "f_vector": f.counts, "reduced_betti": betti, "facets": facets_json(x) }),
        |out| {
            let join = |v: &[String]| v.join(" ");
            let _ = writeln!(out, "facets {}", facet_list(x));
            let _ = writeln!(out, "dimension {dim}");
            let _ = writeln!(out, "f-vector {}", join(&f.counts.iter().map(u64::to_string).collect::<Vec<_>>()));
            let _ = writeln!(out, "reduced betti {}", join(&betti.iter().map(usize::to_string).collect::<Vec<_>>()));
        },
    );
    Ok(())
}

fn leray_cmd(ctx: &mut Ctx, x: &SimplicialComplex) -> CmdResult {
    let w = leray::leray_number(x)?;
    let reg = if x.is_simplex()? { None } else { Some(w.leray + 1) };
    ctx.emit(
        "leray",
        json!({
            "leray": w.leray,
            "regularity": reg,
            "witness_set": w.witness_set.map(|s| set_json(x, s)),
            "witness_dim": w.witness_dim,
        }),
        |out| {
            let _ = writeln!(out, "L = {}", w.leray);
            if let (Some(s), Some(d)) = (w.witness_set, w.witness_dim) {
                let _ = writeln!(out, "witness {} with reduced H_{d} != 0", set_text(x, s));
            }
            match reg {
                Some(r) => {
                    let _ = writeln!(out, "reg = {r}");
                }
                None => {
                    let _ = writeln!(out, "simplex: the Stanley-Reisner ideal is zero");
                }
            }
        },
    );
    Ok(())
}

fn order_report_json(r: &ordering::OrderingReport) -> Value {
    json!({
        "m_value": r.m_value,
        "n_value": r.n_value,
        "gamma": r.gamma,
        "conn": r.conn,
        "is_weak_shelling": r.is_weak_shelling,
        "step_increments": r.step_increments,
    })
}

fn m_cmd(ctx: &mut Ctx, x: &SimplicialComplex, order: Option<&str>, brute: bool) -> CmdResult {
    if let Some(spec) = order {
        let ord = parse_order(spec, x.num_facets())?;
        let r = ordering::m_of_order(x, &ord)?;
        ctx.emit("m", json!({ "order": order_indices(&ord), "report": order_report_json(&r) }), |out| {
            let _ = writeln!(out, "facets {}", facet_list(x));
            let _ = writeln!(out, "order {}", order_text(&ord));
            let _ = writeln!(out, "M_order = {}", r.m_value);
            let _ = writeln!(out, "N_order = {}", r.n_value);
            let _ = writeln!(out, "gamma_order = {}", r.gamma);
            let conn: Vec<String> = r.conn.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "conn {}", conn.join(" "));
            let _ = writeln!(out, "weak shelling {}", r.is_weak_shelling);
        });
        return Ok(());
    }
    let dp = ordering::m_number(x, ctx.limits)?;
    let oracle = if brute { Some(ordering::m_number_bruteforce(x, ctx.limits)?) } else { None };
    ctx.emit(
        "m",
        json!({
            "m": dp.m,
            "optimal_order": order_indices(&dp.optimal_order),
            "dp_states_explored": dp.dp_states_explored,
            "m_bruteforce": oracle,
        }),
        |out| {
            let _ = writeln!(out, "facets {}", facet_list(x));
            let _ = writeln!(out, "M = {} (subset DP, {} states)", dp.m, dp.dp_states_explored);
            let _ = writeln!(out, "optimal order {}", order_text(&dp.optimal_order));
            if let Some(o) = oracle {
                let _ = writeln!(out, "M = {o} (permutation oracle)");
            }
        },
    );
    match oracle {
        Some(o) if o != dp.m => Err(Failure::Violation(format!("subset DP gives M = {} but the oracle gives {o}", dp.m))),
        _ => Ok(()),
    }
}

fn shelling_cmd(ctx: &mut Ctx, x: &SimplicialComplex, order: Option<&str>) -> CmdResult {
    if let Some(spec) = order {
        let ord = parse_order(spec, x.num_facets())?;
        let r = ordering::m_of_order(x, &ord)?;
        ctx.emit(
            "shelling",
            json!({ "order": order_indices(&ord), "is_weak_shelling": r.is_weak_shelling, "m_value": r.m_value }),
            |out| {
                let _ = writeln!(out, "order {}", order_text(&ord));
                let _ = writeln!(out, "weak shelling {}", r.is_weak_shelling);
                let _ = writeln!(out, "M_order = {}", r.m_value);
            },
        );
        return Ok(());
    }
    let best = ordering::weak_shelling_min_m(x, ctx.limits)?;
    let m = ordering::m_number(x, ctx.limits)?.m;
    ctx.emit(
        "shelling",
        json!({
            "weak_shelling_exists": best.is_some(),
            "weak_shelling_min_m": best.as_ref().map(|b| b.0),
            "optimal_order": best.as_ref().map(|b| order_indices(&b.1)),
            "m": m,
        }),
        |out| {
            let _ = writeln!(out, "facets {}", facet_list(x));
            match &best {
                Some((v, o)) => {
                    let _ = writeln!(out, "min M over weak shellings = {v}");
                    let _ = writeln!(out, "order {}", order_text(o));
                }
                None => {
                    let _ = writeln!(out, "no weak shelling");
                }
            }
            let _ = writeln!(out, "M = {m}");
        },
    );
    Ok(())
}

fn betti_cmd(ctx: &mut Ctx, x: &SimplicialComplex) -> CmdResult {
    let t = leray::hochster_table(x)?;
    let entries: Vec<Value> = t.entries.iter().map(|(&(i, j), &b)| json!({ "i": i, "j": j, "value": b })).collect();
    ctx.emit("betti", json!({ "num_vars": t.num_vars, "entries": entries, "regularity": t.max_j() }), |out| {
        let Some(max_j) = t.max_j() else {
            let _ = writeln!(out, "zero ideal");
            return;
        };
        let max_i = t.entries.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let _ = write!(out, "{:>4}", "");
        for i in 0..=max_i {
            let _ = write!(out, " {i:>5}");
        }
        out.push('\n');
        let min_j = t.entries.keys().map(|&(_, j)| j).min().unwrap_or(max_j);
        for j in min_j..=max_j {
            let _ = write!(out, "{:>3}:", j);
            for i in 0..=max_i {
                match t.get(i, j) {
                    0 => {
                        let _ = write!(out, " {:>5}", ".");
                    }
                    b => {
                        let _ = write!(out, " {b:>5}");
                    }
                }
            }
            out.push('\n');
        }
        let _ = writeln!(out, "reg = {max_j}");
    });
    Ok(())
}

fn ideal2complex_cmd(ctx: &mut Ctx, text: &str) -> CmdResult {
    let parsed = sr::parse_ideal(text)?;
    let mut notes = parsed.warnings.clone();
    let dropped = sr::degree_one_variables(&parsed.ideal);
    if !dropped.is_empty() {
        notes.push(format!("degree-1 generators remove {} from the vertex set", dropped.join(" ")));
    }
    let x = sr::ideal_to_complex(&parsed.ideal)?;
    let printed = format_complex(&x);
    ctx.emit("ideal2complex", json!({ "labels": x.labels(), "facets": facets_json(&x), "notes": notes }), |out| {
        for n in &notes {
            let _ = writeln!(out, "# note: {n}");
        }
        out.push_str(&printed);
    });
    Ok(())
}

fn complex2ideal_cmd(ctx: &mut Ctx, x: &SimplicialComplex) -> CmdResult {
    let ideal = sr::complex_to_ideal(x)?;
    let gens: Vec<Value> = ideal.sorted_gens().iter().map(|g| set_json(x, *g)).collect();
    ctx.emit("complex2ideal", json!({ "vars": ideal.vars(), "generators": gens, "ideal": ideal.to_string() }), |out| {
        out.push_str(&ideal.to_file_string());
    });
    Ok(())
}

fn eg_cmd(ctx: &mut Ctx, x: &SimplicialComplex) -> CmdResult {
    let r = sr::eg_report(x, ctx.limits)?;
    ctx.emit(
        "eg",
        json!({
            "reg": r.reg,
            "deg": r.deg,
            "codim": r.codim,
            "alpha": r.alpha,
            "gamma": r.gamma,
            "weak_eg_bound": r.weak_eg_bound,
            "classic_eg_bound": r.classic_eg_bound,
            "weak_holds": r.weak_holds,
            "classic_holds": r.classic_holds,
            "witness_order": order_indices(&r.witness_order),
        }),
        |out| {
            let _ = writeln!(out, "facets {}", facet_list(x));
            let _ = writeln!(out, "reg = {}", r.reg);
            let _ = writeln!(out, "deg = {}", r.deg);
            let _ = writeln!(out, "codim = {}", r.codim);
            let _ = writeln!(out, "alpha = {}", r.alpha);
            let _ = writeln!(out, "gamma = {} (order {})", r.gamma, order_text(&r.witness_order));
            let _ = writeln!(out, "weak bound = {}", r.weak_eg_bound);
            let _ = writeln!(out, "classic bound = {}", r.classic_eg_bound);
            let _ = writeln!(out, "weak_holds = {}", r.weak_holds);
            let _ = writeln!(out, "classic_holds = {}", r.classic_holds);
        },
    );
    if r.weak_holds {
        Ok(())
    } else {
        Err(Failure::Violation(format!("reg = {} exceeds the weak bound {}", r.reg, r.weak_eg_bound)))
    }
}

fn tree_json(t: &SpanningTree) -> Value {
    json!(t.edges.iter().map(|&(i, j)| [i + 1, j + 1]).collect::<Vec<_>>())
}

fn tree_text(t: &SpanningTree) -> String {
    t.edges.iter().map(|&(i, j)| format!("{}-{}", i + 1, j + 1)).collect::<Vec<_>>().join(" ")
}

fn tree_cmd(ctx: &mut Ctx, x: &SimplicialComplex, order: Option<&str>, export: bool) -> CmdResult {
    let g = facet_graph::weighted_graph(x)?;
    let n = x.num_vertices() as i64;
    if let Some(spec) = order {
        let ord = parse_order(spec, x.num_facets())?;
        let tree = facet_graph::construction_tree(x, &ord)?;
        let chi = facet_graph::chi_w(&g, &tree);
        let n_value = ordering::m_of_order(x, &ord)?.n_value;
        ctx.emit(
            "tree",
            json!({ "order": order_indices(&ord), "tree": tree_json(&tree), "chi_w": chi, "n_value": n_value }),
            |out| {
                if export {
                    out.push_str(&facet_graph::export_edge_list(x, &g, &tree));
                } else {
                    let _ = writeln!(out, "order {}", order_text(&ord));
                    let _ = writeln!(out, "tree {}", tree_text(&tree));
                    let _ = writeln!(out, "chi_w = {chi}");
                    let _ = writeln!(out, "N_order = {n_value}");
                }
            },
        );
        if n_value != chi - n + 1 {
            return Err(Failure::Violation(format!("N_order = {n_value} but chi_w - |V| + 1 = {}", chi - n + 1)));
        }
        return Ok(());
    }
    let t = facet_graph::two_regular_tree_test(x)?;
    ctx.emit(
        "tree",
        json!({
            "tree": tree_json(&t.tree),
            "min_chi_w": t.min_chi_w,
            "num_vertices": t.num_vertices,
            "two_regular": t.two_regular,
            "zero_ideal": t.zero_ideal,
        }),
        |out| {
            if export {
                out.push_str(&facet_graph::export_edge_list(x, &g, &t.tree));
            } else {
                let _ = writeln!(out, "maximum spanning tree {}", tree_text(&t.tree));
                let _ = writeln!(out, "min chi_w = {} with |V| = {}", t.min_chi_w, t.num_vertices);
                if t.zero_ideal {
                    let _ = writeln!(out, "single facet: zero ideal");
                } else {
                    let _ = writeln!(out, "2-regular {}", t.two_regular);
                }
            }
        },
    );
    Ok(())
}

fn structure_cmd(ctx: &mut Ctx, x: &SimplicialComplex) -> CmdResult {
    let r = structure::verify_equality_theorem(x, ctx.limits)?;
    let witnesses: Vec<Value> = r
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "kind": w.kind,
                "vertices": set_json(x, w.vertices),
                "window": set_json(x, w.window),
                "hom_dim": w.hom_dim,
                "is_generator": w.is_generator,
            })
        })
        .collect();
    ctx.emit(
        "structure",
        json!({
            "leray": r.leray,
            "m": r.m,
            "equality": r.equality,
            "weak_shelling_min_m": r.weak_shelling_min,
            "weak_shelling_optimal": r.weak_shelling_optimal,
            "hypothesis_holds": r.hypothesis_holds(),
            "case": r.case,
            "witnesses": witnesses,
            "windows_with_homology": r.windows_with_homology,
            "windows_certified": r.windows_certified,
            "betti_cap_ok": r.betti_cap_ok,
            "conclusion_holds": r.conclusion_holds,
            "contradicts_theorem": r.contradicts_theorem(),
        }),
        |out| {
            let _ = writeln!(out, "L = {}, M = {}, equality {}", r.leray, r.m, r.equality);
            match r.weak_shelling_min {
                Some(v) => {
                    let _ = writeln!(out, "min M over weak shellings = {v}, optimal {}", r.weak_shelling_optimal);
                }
                None => {
                    let _ = writeln!(out, "no weak shelling");
                }
            }
            let _ = writeln!(out, "hypothesis {}", r.hypothesis_holds());
            if let Some(c) = r.case {
                let _ = writeln!(out, "case {c}");
            }
            for w in &r.witnesses {
                let kind = match w.kind {
                    structure::WitnessKind::InducedCycle => "induced cycle",
                    structure::WitnessKind::BoundaryOfSimplex => "induced simplex boundary",
                };
                let _ = writeln!(
                    out,
                    "witness {} {} in window {} generates H_{}: {}",
                    kind,
                    set_text(x, w.vertices),
                    set_text(x, w.window),
                    w.hom_dim,
                    w.is_generator
                );
            }
            if r.equality && r.leray >= 2 {
                let _ = writeln!(out, "windows certified {}/{}", r.windows_certified, r.windows_with_homology);
                let _ = writeln!(out, "betti cap {}", r.betti_cap_ok);
            }
            if let Some(c) = r.conclusion_holds {
                let _ = writeln!(out, "conclusion {c}");
            }
        },
    );
    if r.contradicts_theorem() {
        return Err(Failure::Violation(format!("equality structure fails:\n{}", reproducer(x, "equality-structure"))));
    }
    Ok(())
}

/// Per-sample statistics gathered by the explorer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleReport {
    pub index: u64,
    pub leray: usize,
    pub m: usize,
    pub n_value: i64,
    pub simplex: bool,
    pub violations: Vec<String>,
}

/// Checks one sample against the proven relations: `L <= M <= M_≺ <=
/// N_≺` for the sampled order, `N_≺ = χ_w(F) - |V| + 1` for its construction
/// tree, the weak Eisenbud-Goto bound, and the equality-case structure.
pub fn check_sample(x: &SimplicialComplex, order: &FacetOrdering, limits: Limits) -> Result<(usize, usize, i64, Vec<String>)> {
    let mut bad = Vec::new();
    let l = leray::leray_number(x)?.leray;
    let m = ordering::m_number(x, limits)?.m;
    let r = ordering::m_of_order(x, order)?;
    if l > m {
        bad.push(format!("leray-exceeds-m L={l} M={m}"));
    }
    if m > r.m_value {
        bad.push(format!("m-exceeds-order M={m} M_order={}", r.m_value));
    }
    if r.m_value as i64 > r.n_value {
        bad.push(format!("order-exceeds-n M_order={} N_order={}", r.m_value, r.n_value));
    }
    let g = facet_graph::weighted_graph(x)?;
    let chi = facet_graph::chi_w(&g, &facet_graph::construction_tree(x, order)?);
    if r.n_value != chi - x.num_vertices() as i64 + 1 {
        bad.push(format!("tree-identity N_order={} chi_w={chi}", r.n_value));
    }
    if !x.is_simplex()? {
        let eg = sr::eg_report(x, limits)?;
        if !eg.weak_holds {
            bad.push(format!("weak-eg reg={} bound={}", eg.reg, eg.weak_eg_bound));
        }
        if structure::verify_equality_theorem(x, limits)?.contradicts_theorem() {
            bad.push("equality-structure".into());
        }
    }
    Ok((l, m, r.n_value, bad))
}

/// Runs the explorer over `cfg.samples` indices.
pub fn explore(cfg: &ExploreConfig, limits: Limits) -> Result<Vec<SampleReport>> {
    cfg.validate()?;
    let indices: Vec<u64> = (0..cfg.samples as u64).collect();
    par::map(&indices, |&index| {
        let (x, order) = random_sample(cfg, index)?;
        let (leray, m, n_value, violations) = check_sample(&x, &order, limits)?;
        Ok(SampleReport { index, leray, m, n_value, simplex: x.is_simplex()?, violations })
    })
    .into_iter()
    .collect()
}

fn explore_cmd(ctx: &mut Ctx, cfg: &ExploreConfig, dump: Option<&std::path::Path>) -> CmdResult {
    let reports = explore(cfg, ctx.limits)?;
    let hist = |f: &dyn Fn(&SampleReport) -> usize| {
        let mut h = BTreeMap::new();
        for r in &reports {
            *h.entry(f(r)).or_insert(0usize) += 1;
        }
        h
    };
    let leray_hist = hist(&|r| r.leray);
    let m_hist = hist(&|r| r.m);
    let gap_hist = hist(&|r| r.m - r.leray.min(r.m));
    let equal = reports.iter().filter(|r| r.leray == r.m && !r.simplex).count();
    let simplices = reports.iter().filter(|r| r.simplex).count();
    let mut violations = Vec::new();
    for r in reports.iter().filter(|r| !r.violations.is_empty()) {
        let x = random_complex(cfg, r.index)?;
        let reason = r.violations.join("; ");
        let text = reproducer(&x, &reason);
        if let Some(dir) = dump {
            let path = dir.join(format!("reproducer-{}-{}.cplx", cfg.seed, r.index));
            std::fs::write(&path, &text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        }
        violations.push((r.index, reason, text));
    }
    let to_json = |h: &BTreeMap<usize, usize>| -> Value {
        Value::Object(h.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
    };
    ctx.emit(
        "explore",
        json!({
            "config": {
                "vertices": cfg.n_vertices,
                "facets": cfg.n_facets,
                "dim_min": cfg.dim_min,
                "dim_max": cfg.dim_max(),
                "samples": cfg.samples,
                "seed": cfg.seed,
            },
            "leray_histogram": to_json(&leray_hist),
            "m_histogram": to_json(&m_hist),
            "gap_histogram": to_json(&gap_hist),
            "equality_count": equal,
            "simplex_count": simplices,
            "violations": violations
                .iter()
                .map(|(i, reason, text)| json!({ "index": i, "reason": reason, "reproducer": text }))
                .collect::<Vec<_>>(),
        }),
        |out| {
            let line = |h: &BTreeMap<usize, usize>| h.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(" ");
            let _ = writeln!(
                out,
                "samples {} seed {} vertices {} facets {} dims {}..={}",
                cfg.samples,
                cfg.seed,
                cfg.n_vertices,
                cfg.n_facets,
                cfg.dim_min,
                cfg.dim_max()
            );
            let _ = writeln!(out, "L histogram {}", line(&leray_hist));
            let _ = writeln!(out, "M histogram {}", line(&m_hist));
            let _ = writeln!(out, "M - L histogram {}", line(&gap_hist));
            let _ = writeln!(out, "L = M on non-simplices {equal}");
            let _ = writeln!(out, "simplices {simplices}");
            let _ = writeln!(out, "violations {}", violations.len());
            for (i, _, text) in &violations {
                let _ = writeln!(out, "sample {i}:\n{text}");
            }
        },
    );
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(format!("{} sample(s) violate a checked relation", violations.len())))
    }
}
