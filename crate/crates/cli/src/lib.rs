//! The `cotopo` command line.
//!
//! Exit codes: 0 when the command succeeds or the property holds, 1 when a
//! property fails or a counterexample is found, 2 for usage and input errors.

pub mod lemmas;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use cotopo::atlas;
use cotopo::complementarity::is_complementary;
use cotopo::enumerate::{enumerate_complexes, enumerate_weak_pseudomanifolds, BranchOrder};
use cotopo::homotopy::{homology, is_collapsible, parse_steps, CollapseTrace};
use cotopo::io::{facet_lines, format_facet_list, parse_any, parse_simplex, persisted_header};
use cotopo::report::EnumerationReport;
use cotopo::search::{search_complementary, SearchOptions};
use cotopo::{Classification, Complex};

use lemmas::{Check, LemmaCheck, Tier, REGISTRY};

pub const DATA_DIR_ENV: &str = "COTOPO_DATA_DIR";

#[derive(Parser, Debug)]
#[command(name = "cotopo", version, about = "Exact combinatorial topology of small simplicial complexes")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Fallback directory for input files and persisted atlas complexes.
    #[arg(long, global = true, env = DATA_DIR_ENV)]
    data_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// f-vector, euler characteristic, classification and neighbourliness.
    Inspect { file: PathBuf },
    /// Test a property: complementary, weak-pm, pseudomanifold, collapsible
    /// or k-neighbourly:K.
    Check { property: String, file: PathBuf },
    /// Reduced integral homology.
    Homology { file: PathBuf },
    /// Link of a face, given as space separated labels.
    Link {
        file: PathBuf,
        #[arg(long)]
        simplex: String,
    },
    /// Build a named complex.
    Construct {
        name: String,
        params: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// All complexes on exactly N vertices up to isomorphism.
    Enumerate {
        #[arg(long)]
        vertices: usize,
        /// Keep only complexes of this dimension (required with --weak-pm).
        #[arg(long)]
        dim: Option<usize>,
        /// Closed weak pseudomanifolds only.
        #[arg(long)]
        weak_pm: bool,
        /// Write the report directory here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Complementary weak pseudomanifolds of dimension D on N vertices.
    SearchComplementary {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Continue from a checkpoint file (also used for new checkpoints).
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Write checkpoints to this file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 10_000_000)]
        checkpoint_every: u64,
        /// Write the report directory here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Persist the single class found as a checksummed atlas file.
        #[arg(long)]
        emit_atlas: Option<PathBuf>,
    },
    /// Recompute a registered claim; `list` shows ids, `all` runs the tier.
    VerifyLemma {
        id: String,
        #[arg(long, value_enum, default_value_t = Tier::Fast)]
        tier: Tier,
    },
    /// Find a collapse to a point, or replay a recorded one.
    Collapse {
        file: PathBuf,
        #[arg(long)]
        replay: Option<PathBuf>,
    },
}

/// A failure that maps to exit code 2.
#[derive(Debug)]
struct InputError(String);

impl From<cotopo::Error> for InputError {
    fn from(e: cotopo::Error) -> Self {
        InputError(e.to_string())
    }
}

impl From<std::io::Error> for InputError {
    fn from(e: std::io::Error) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<i32, InputError>;

struct Ctx<'a> {
    json: bool,
    data_dir: Option<PathBuf>,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn resolve(&self, path: &Path) -> PathBuf {
        match &self.data_dir {
            Some(dir) if !path.exists() && dir.join(path).exists() => dir.join(path),
            _ => path.to_path_buf(),
        }
    }

    fn read_text(&self, path: &Path) -> Result<String, InputError> {
        std::fs::read_to_string(self.resolve(path)).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }

    fn load(&self, path: &Path) -> Result<Complex, InputError> {
        parse_any(&self.read_text(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }

    fn emit(&mut self, value: Value, text: impl FnOnce() -> String) -> std::io::Result<()> {
        if self.json {
            writeln!(self.out, "{}", serde_json::to_string_pretty(&value).expect("json values serialize"))
        } else {
            write!(self.out, "{}", text())
        }
    }
}

/// Runs the command line with `args` (including the program name) and
/// returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut ctx = Ctx { json: cli.json, data_dir: cli.data_dir, out, err };
    match dispatch(&mut ctx, cli.command) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            2
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn dispatch(ctx: &mut Ctx<'_>, command: Command) -> Outcome {
    match command {
        Command::Inspect { file } => inspect(ctx, &file),
        Command::Check { property, file } => check(ctx, &property, &file),
        Command::Homology { file } => homology_cmd(ctx, &file),
        Command::Link { file, simplex } => link(ctx, &file, &simplex),
        Command::Construct { name, params, output } => construct(ctx, &name, &params, output.as_deref()),
        Command::Enumerate { vertices, dim, weak_pm, out } => enumerate(ctx, vertices, dim, weak_pm, out.as_deref()),
        Command::SearchComplementary { n, d, jobs, resume, checkpoint, budget, checkpoint_every, out, emit_atlas } => {
            let opts = SearchOptions { budget, jobs, checkpoint, checkpoint_every, resume, ..Default::default() };
            search(ctx, n, d, &opts, out.as_deref(), emit_atlas.as_deref())
        }
        Command::VerifyLemma { id, tier } => verify_lemma(ctx, &id, tier),
        Command::Collapse { file, replay } => collapse(ctx, &file, replay.as_deref()),
    }
}

fn facets_json(k: &Complex) -> Value {
    json!(k.facets().iter().map(|f| f.vertices().collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// Largest `k` for which the complex is `k`-neighbourly.
fn neighbourliness(k: &Complex) -> usize {
    (1..=k.n_vertices()).take_while(|&i| k.is_k_neighbourly(i)).last().unwrap_or(0)
}

fn inspect(ctx: &mut Ctx<'_>, file: &Path) -> Outcome {
    let k = ctx.load(file)?;
    let p = k.face_profile();
    let class = k.classify();
    let nb = neighbourliness(&k);
    let comp = is_complementary(&k);
    let value = json!({
        "vertices": k.n_vertices(),
        "facets": k.facets().len(),
        "dim": k.dim(),
        "f_vector": p.counts,
        "euler": p.euler,
        "pure": k.is_pure(),
        "classification": class.to_string(),
        "neighbourliness": nb,
        "complementary": comp,
    });
    ctx.emit(value, || {
        format!(
            "vertices: {}\nfacets: {}\ndim: {}\nf-vector: {}\neuler: {}\npure: {}\nclassification: {class}\nneighbourly: {nb}\ncomplementary: {comp}\n",
            k.n_vertices(),
            k.facets().len(),
            k.dim(),
            p,
            p.euler,
            k.is_pure()
        )
    })?;
    Ok(0)
}

fn check(ctx: &mut Ctx<'_>, property: &str, file: &Path) -> Outcome {
    // Validate the property before touching the file.
    let neighbourly = match property.strip_prefix("k-neighbourly:") {
        Some(k) => Some(k.parse::<usize>().map_err(|_| InputError(format!("bad neighbourliness {k:?}")))?),
        None if matches!(property, "complementary" | "weak-pm" | "pseudomanifold" | "collapsible") => None,
        None => {
            return Err(InputError(format!(
                "unknown property {property:?}; expected complementary, weak-pm, pseudomanifold, collapsible or k-neighbourly:K"
            )))
        }
    };
    let k = ctx.load(file)?;
    let holds = match (property, neighbourly) {
        (_, Some(n)) => k.is_k_neighbourly(n),
        ("complementary", _) => is_complementary(&k),
        ("weak-pm", _) => matches!(k.classify(), Classification::WeakPm | Classification::Pseudomanifold),
        ("pseudomanifold", _) => k.classify() == Classification::Pseudomanifold,
        _ => is_collapsible(&k)?.is_some(),
    };
    ctx.emit(json!({ "property": property, "holds": holds }), || {
        format!("{property}: {}\n", if holds { "yes" } else { "no" })
    })?;
    Ok(if holds { 0 } else { 1 })
}

fn homology_cmd(ctx: &mut Ctx<'_>, file: &Path) -> Outcome {
    let k = ctx.load(file)?;
    let h = homology(&k);
    let groups: Vec<Value> =
        h.groups.iter().enumerate().map(|(i, g)| json!({ "dim": i, "rank": g.rank, "torsion": g.torsion })).collect();
    ctx.emit(json!({ "reduced": true, "groups": groups }), || {
        h.groups.iter().enumerate().map(|(i, g)| format!("H{i} = {g}\n")).collect()
    })?;
    Ok(0)
}

fn link(ctx: &mut Ctx<'_>, file: &Path, simplex: &str) -> Outcome {
    let k = ctx.load(file)?;
    let s = parse_simplex(simplex, 1).map_err(|e| InputError(format!("--simplex: {e}")))?;
    let l = k.link(s)?;
    ctx.emit(json!({ "simplex": s.vertices().collect::<Vec<_>>(), "facets": facets_json(&l) }), || facet_lines(&l))?;
    Ok(0)
}

fn construct(ctx: &mut Ctx<'_>, name: &str, params: &[usize], output: Option<&Path>) -> Outcome {
    let k = match (name, &ctx.data_dir) {
        ("rp2-6", Some(dir)) if dir.join("rp2_6.cplx").exists() => {
            atlas::rp2_6_from(&std::fs::read_to_string(dir.join("rp2_6.cplx"))?)?
        }
        _ => atlas::construct(name, params).map_err(|e| {
            let names: Vec<String> = atlas::NAMES.iter().map(|(n, p)| format!("{n} {p}").trim().to_string()).collect();
            InputError(format!("{e} (known: {})", names.join(", ")))
        })?,
    };
    let mut invocation = vec!["cotopo construct".to_string(), name.to_string()];
    invocation.extend(params.iter().map(usize::to_string));
    let text = format_facet_list(&k, &[format!("generated-by: {}", invocation.join(" "))]);
    match output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            ctx.emit(json!({ "written": path, "facets": k.facets().len() }), || {
                format!("wrote {} facets to {}\n", k.facets().len(), path.display())
            })?;
        }
        None => ctx.emit(json!({ "name": name, "facets": facets_json(&k) }), || text)?,
    }
    Ok(0)
}

fn report_json(r: &EnumerationReport) -> Value {
    // Timing is left out so output depends only on the inputs.
    json!({
        "kind": r.kind,
        "parameters": r.parameters,
        "class_count": r.class_count(),
        "labeled_count": r.labeled_count,
        "complete": r.complete,
        "nodes": r.nodes,
        "classes": r.classes.iter().map(|c| facets_json(&c.to_complex())).collect::<Vec<_>>(),
    })
}

fn report_text(r: &EnumerationReport) -> String {
    let mut s =
        format!("kind: {}\nclasses: {}\ncomplete: {}\nnodes: {}\n", r.kind, r.class_count(), r.complete, r.nodes);
    for (i, c) in r.classes.iter().enumerate() {
        let k = c.to_complex();
        s.push_str(&format!("class {i}: f-vector {}\n", k.face_profile()));
        for f in k.facets() {
            s.push_str(&format!("  {f}\n"));
        }
    }
    s
}

fn finish_report(ctx: &mut Ctx<'_>, r: &EnumerationReport, out: Option<&Path>) -> Outcome {
    if let Some(dir) = out {
        r.write_dir(dir)?;
    }
    ctx.emit(report_json(r), || report_text(r))?;
    let _ = writeln!(ctx.err, "elapsed: {} ms", r.elapsed_ms);
    Ok(0)
}

fn enumerate(ctx: &mut Ctx<'_>, n: usize, dim: Option<usize>, weak_pm: bool, out: Option<&Path>) -> Outcome {
    let r = if weak_pm {
        let d = dim.ok_or_else(|| InputError("--weak-pm needs --dim".into()))?;
        enumerate_weak_pseudomanifolds(n, d)?
    } else {
        match dim {
            Some(d) => {
                let filter = move |k: &Complex| k.dim() == d;
                enumerate_complexes(n, Some(&filter), BranchOrder::default())?
            }
            None => enumerate_complexes(n, None, BranchOrder::default())?,
        }
    };
    finish_report(ctx, &r, out)
}

fn search(
    ctx: &mut Ctx<'_>,
    n: usize,
    d: usize,
    opts: &SearchOptions,
    out: Option<&Path>,
    emit_atlas: Option<&Path>,
) -> Outcome {
    if (n, d) == (12, 6) {
        return Err(InputError(
            "refusing the (12,6) search: no 12-vertex complementary 6-dimensional pseudomanifold exists, and the raw \
             search space is far beyond reach. The non-existence argument is replayed exactly by \
             `cotopo verify-lemma L4.1`, `L4.10` through `L4.13` and `L4.5-count`."
                .into(),
        ));
    }
    let r = search_complementary(n, d, opts)?;
    if !r.complete {
        let _ = writeln!(ctx.err, "warning: node budget exhausted; the class list may be incomplete");
    }
    if let Some(path) = emit_atlas {
        if !r.complete || r.class_count() != 1 {
            return Err(InputError(format!(
                "--emit-atlas needs a complete search with exactly one class, found {} (complete: {})",
                r.class_count(),
                r.complete
            )));
        }
        let k = r.classes[0].to_complex();
        let command = format!("cotopo search-complementary --n {n} --d {d} --emit-atlas");
        std::fs::write(path, format_facet_list(&k, &persisted_header(&k, &command)))?;
    }
    finish_report(ctx, &r, out)
}

fn print_checks(ctx: &mut Ctx<'_>, lemma: &LemmaCheck, checks: &[Check]) -> std::io::Result<bool> {
    let pass = checks.iter().all(|c| c.pass);
    if ctx.json {
        let value = json!({
            "id": lemma.id,
            "statement": lemma.statement,
            "pass": pass,
            "checks": checks.iter().map(|c| json!({
                "label": c.label, "expected": c.expected, "found": c.found, "pass": c.pass,
            })).collect::<Vec<_>>(),
        });
        writeln!(ctx.out, "{}", serde_json::to_string(&value).expect("json values serialize"))?;
    } else {
        writeln!(ctx.out, "{}: {}", lemma.id, lemma.statement)?;
        for c in checks {
            match (c.expected.as_str(), c.pass) {
                ("-", _) => writeln!(ctx.out, "  [info] {} = {}", c.label, c.found)?,
                (_, true) => writeln!(ctx.out, "  [ok] {} = {}", c.label, c.found)?,
                (e, false) => writeln!(ctx.out, "  [FAIL] {} = {} (expected {e})", c.label, c.found)?,
            }
        }
        writeln!(ctx.out, "{}: {}", lemma.id, if pass { "PASS" } else { "FAIL" })?;
    }
    Ok(pass)
}

fn verify_lemma(ctx: &mut Ctx<'_>, id: &str, tier: Tier) -> Outcome {
    if id == "list" {
        for l in REGISTRY {
            writeln!(ctx.out, "{:<11} {:<5} {}", l.id, format!("{:?}", l.tier).to_lowercase(), l.statement)?;
        }
        return Ok(0);
    }
    let selected: Vec<&LemmaCheck> = if id == "all" {
        REGISTRY.iter().filter(|l| l.tier <= tier).collect()
    } else {
        let l =
            lemmas::find(id).ok_or_else(|| InputError(format!("unknown lemma id {id:?}; try `verify-lemma list`")))?;
        if l.tier > tier {
            return Err(InputError(format!("{} is in the long tier; rerun with --tier long", l.id)));
        }
        vec![l]
    };
    let mut all = true;
    for l in selected {
        let checks = (l.run)()?;
        all &= print_checks(ctx, l, &checks)?;
    }
    Ok(if all { 0 } else { 1 })
}

fn collapse(ctx: &mut Ctx<'_>, file: &Path, replay: Option<&Path>) -> Outcome {
    let k = ctx.load(file)?;
    let trace = match replay {
        Some(path) => {
            let text = ctx.read_text(path)?;
            // Syntax errors are input errors; illegal steps are a failed check.
            parse_steps(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            match CollapseTrace::parse(&text, &k) {
                Ok(trace) => Some(trace),
                Err(e) => {
                    ctx.emit(json!({ "valid": false, "error": e.to_string() }), || format!("invalid trace: {e}\n"))?;
                    return Ok(1);
                }
            }
        }
        None => is_collapsible(&k)?,
    };
    match trace {
        Some(t) => {
            let to_point = t.is_collapse_to_point();
            let steps: Vec<Value> = t
                .steps
                .iter()
                .map(|(tau, sigma)| json!([tau.vertices().collect::<Vec<_>>(), sigma.vertices().collect::<Vec<_>>()]))
                .collect();
            ctx.emit(json!({ "collapsible": to_point, "steps": steps }), || {
                format!("{t}{}\n", if to_point { "collapses to a point" } else { "does not end at a point" })
            })?;
            Ok(if to_point { 0 } else { 1 })
        }
        None => {
            ctx.emit(json!({ "collapsible": false }), || "not collapsible\n".into())?;
            Ok(1)
        }
    }
}
