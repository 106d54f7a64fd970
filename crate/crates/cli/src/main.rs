use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use semilab_core::engine::{
    eggbox, enumerate, green_scc, parse_table, witnessed_green, witnessed_partition, Budget, FiniteSemigroup, Green,
    DEFAULT_MARGIN,
};
use semilab_core::identities::{catalogue, check_identity_exhaustive, check_identity_window, Identity, PStructure};
use semilab_core::munn::{fis_a_triple, is_fis_idempotent, munn_tree};
use semilab_core::report::{any_failed, render_json, render_markdown, run_all, run_criterion, Fixtures};
use semilab_core::stephen::{dot_export, stephen_run, tau_equal, Presentation, StephenBudget};
use semilab_core::vmaps::{generate_ball, phi, phi_pow, psi, psi_pow, VMap};
use semilab_core::words::{parse_word, Alphabet};
use semilab_core::zoo::{parse_spec, BicyclicOracle, POracle, ZooObject};

// a closed pipe (`semilab table b2 | head`) is not an error worth a panic
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "semilab", version, about = "Green's relations, Munn trees, Stephen's procedure and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Green counts and eggbox of a finite table (zoo spec or table file).
    Table { spec: String },
    /// Green classes; witnessed growth tables for `bicyclic:r` and `pz:w`.
    Green {
        spec: String,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: usize,
    },
    /// Munn tree of a word.
    Munn {
        word: String,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Stephen's procedure for a word over a presentation file.
    Stephen {
        presentation: PathBuf,
        word: String,
        #[arg(long)]
        equal: Option<String>,
        #[arg(long, default_value_t = 25)]
        stages: usize,
        #[arg(long)]
        dot_dir: Option<PathBuf>,
    },
    /// Check an identity (or a catalogue entry) on a zoo object.
    Identity {
        spec: String,
        identity: String,
        #[arg(long)]
        window: Option<i64>,
    },
    /// Evaluate a product of `phi^n` / `psi^n` factors, or list a ball.
    Vmaps {
        expr: Option<String>,
        #[arg(long)]
        ball: Option<usize>,
    },
    /// Run the reproduction suite and write the report.
    PaperReport {
        #[arg(long, default_value = "report")]
        out: PathBuf,
        /// Directory of fixture overrides (`b2.table`).
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Table { spec } => table(&spec),
        Command::Green { spec, margin } => green(&spec, margin),
        Command::Munn { word, dot } => munn(&word, dot.as_deref()),
        Command::Stephen { presentation, word, equal, stages, dot_dir } => {
            stephen(&presentation, &word, equal.as_deref(), stages, dot_dir.as_deref())
        }
        Command::Identity { spec, identity: id, window } => identity(&spec, &id, window),
        Command::Vmaps { expr, ball } => vmaps(expr.as_deref(), ball),
        Command::PaperReport { out, fixtures, only } => paper_report(&out, fixtures.as_deref(), &only),
    }
    .map(|()| ExitCode::SUCCESS)
    .or_else(|e| match e.downcast::<ReportFailed>() {
        Ok(_) => Ok(ExitCode::from(1)),
        Err(e) => Err(e),
    })
}

#[derive(Debug)]
struct ReportFailed;

impl std::fmt::Display for ReportFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("report has failed entries")
    }
}

impl std::error::Error for ReportFailed {}

fn load(spec: &str) -> Result<ZooObject> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        return Ok(ZooObject::Finite(parse_table(&text)?));
    }
    Ok(parse_spec(spec)?)
}

fn load_finite(spec: &str) -> Result<FiniteSemigroup> {
    match load(spec)? {
        ZooObject::Finite(fs) => Ok(fs),
        _ => bail!("{spec} is infinite; use `semilab green {spec}` for witnessed counts"),
    }
}

fn table(spec: &str) -> Result<()> {
    let fs = load_finite(spec)?;
    let g = green_scc(&fs);
    out!("elements: {}", fs.len());
    out!("{g}");
    out!("{}", eggbox(&fs, &g).to_string().trim_end());
    Ok(())
}

fn green(spec: &str, margin: usize) -> Result<()> {
    match load(spec)? {
        ZooObject::Finite(fs) => {
            let g = green_scc(&fs);
            for rel in Green::ALL {
                let classes: Vec<String> = g
                    .classes(rel)
                    .iter()
                    .map(|c| format!("{{{}}}", c.iter().map(|&x| fs.label(x)).collect::<Vec<_>>().join(",")))
                    .collect();
                out!("{rel} ({}): {}", classes.len(), classes.join(" "));
            }
        }
        ZooObject::Bicyclic { radius } => {
            let ball = enumerate(&BicyclicOracle, &BicyclicOracle::generators(), Budget::radius(radius))?;
            for rel in Green::ALL {
                let wg = witnessed_green(&BicyclicOracle, ball.ball(), rel, margin)?;
                let rows: Vec<String> = wg.rows.iter().map(|r| format!("{}:{}", r.radius, r.classes)).collect();
                let tag = if wg.apparently_infinite { "apparently infinite" } else { "no growth seen" };
                out!("{rel} witnessed (radius:classes) {} [{tag}]", rows.join(" "));
            }
        }
        ZooObject::PWindow { window } => {
            let elements: Vec<i64> = (-window..=window).collect();
            let m = margin as i64;
            let witnesses: Vec<i64> = (-m * window..=m * window).collect();
            for rel in Green::ALL {
                let part = witnessed_partition(&POracle, &elements, &witnesses, rel);
                let classes = part.iter().max().map_or(0, |c| c + 1);
                out!("{rel} witnessed on [{}, {window}]: {classes}", -window);
            }
        }
    }
    Ok(())
}

fn munn(text: &str, dot: Option<&Path>) -> Result<()> {
    let mut alphabet = Alphabet::new();
    let w = parse_word(text, &mut alphabet).map_err(|e| anyhow!("{e}"))?;
    let t = munn_tree(&w)?;
    out!("vertices: {}", t.vertex_count());
    out!("final: {}", t.final_vertex());
    out!("idempotent: {}", is_fis_idempotent(&w)?);
    if alphabet.len() == 1 {
        let tr = fis_a_triple(&w)?;
        out!("triple: ({},{},{})", tr.r, tr.s, tr.t);
        out!("span: {}", tr.span());
    }
    if let Some(path) = dot {
        fs::write(path, t.to_dot(&alphabet)).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn stephen(path: &Path, word: &str, equal: Option<&str>, stages: usize, dot_dir: Option<&Path>) -> Result<()> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let pres = Presentation::parse(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let u = pres.parse_word(word).map_err(|e| anyhow!("{e}"))?;
    let budget = StephenBudget { max_stages: stages, ..StephenBudget::default() };
    let trace = stephen_run(&u, &pres, budget);
    out!("{}", if trace.closed { "closed" } else { "unknown (not closed within budget)" });
    let counts: Vec<String> = trace.vertex_counts().iter().map(usize::to_string).collect();
    out!("stage vertices: {}", counts.join(" "));
    if let Some(v) = equal {
        let v = pres.parse_word(v).map_err(|e| anyhow!("{e}"))?;
        out!("{}", tau_equal(&u, &v, &pres, budget));
    }
    if let Some(dir) = dot_dir {
        fs::create_dir_all(dir)?;
        for (i, aut) in trace.stages.iter().enumerate() {
            let name = format!("stage{}", i + 1);
            fs::write(dir.join(format!("{name}.dot")), dot_export(aut, &pres.alphabet, &name))?;
        }
    }
    Ok(())
}

fn lookup_identities(key: &str) -> Result<Vec<Identity>> {
    if key.contains('=') {
        return Ok(vec![Identity::parse(key)?]);
    }
    let cat = catalogue();
    let wanted = key.replace("STAR", "*").replace("star", "*");
    cat.iter()
        .find(|(name, _)| name.eq_ignore_ascii_case(&wanted))
        .map(|(_, ids)| ids.clone())
        .ok_or_else(|| anyhow!("{key:?} is neither an identity nor a catalogue key ({})", cat.keys().cloned().collect::<Vec<_>>().join(", ")))
}

fn identity(spec: &str, key: &str, window: Option<i64>) -> Result<()> {
    let ids = lookup_identities(key)?;
    let obj = load(spec)?;
    for id in &ids {
        match &obj {
            ZooObject::Finite(fs) => {
                let v = check_identity_exhaustive(fs, id)?;
                match v {
                    semilab_core::identities::Verdict::Holds => out!("{id}: holds"),
                    semilab_core::identities::Verdict::Fails(c) => out!("{id}: counterexample {c}"),
                }
            }
            ZooObject::PWindow { window: w } => {
                let w = window.unwrap_or(*w);
                out!("{id}: {}", check_identity_window(&PStructure, id, (-w, w))?);
            }
            ZooObject::Bicyclic { .. } => bail!("identity checks need a finite table or a P window"),
        }
    }
    Ok(())
}

/// `phi^2 psi^-1 phi`: factors left to right.
fn parse_vexpr(text: &str) -> Result<VMap> {
    let mut acc: Option<VMap> = None;
    for tok in text.split_whitespace() {
        let (name, exp) = tok.split_once('^').unwrap_or((tok, "1"));
        let n: i64 = exp.parse().with_context(|| format!("bad exponent in {tok:?}"))?;
        let m = match name {
            "phi" => phi_pow(n),
            "psi" => psi_pow(n),
            _ => bail!("unknown factor {name:?}; use phi or psi"),
        };
        acc = Some(acc.map_or(m, |a| a.compose(&m)));
    }
    acc.ok_or_else(|| anyhow!("empty expression"))
}

fn vmaps(expr: Option<&str>, ball: Option<usize>) -> Result<()> {
    if let Some(e) = expr {
        let m = parse_vexpr(e)?;
        out!("{m}");
        out!("image: {}", m.image());
    }
    if let Some(radius) = ball {
        let names = ["phi", "phi^-1", "psi", "psi^-1"];
        let b = generate_ball(&[phi(), psi()], radius)?;
        out!("element\tword\tdomain\tshift");
        for (i, (m, w)) in b.elements.iter().zip(&b.words).enumerate() {
            let word: Vec<&str> = w.iter().map(|&g| names[g]).collect();
            out!("{i}\t{}\t{}\t({},{})", word.join(" "), m.domain, m.shift.0, m.shift.1);
        }
    }
    if expr.is_none() && ball.is_none() {
        bail!("give an expression or --ball N");
    }
    Ok(())
}

fn paper_report(out: &Path, fixtures_dir: Option<&Path>, only: &[u8]) -> Result<()> {
    let mut fixtures = Fixtures::default();
    if let Some(dir) = fixtures_dir {
        let b2 = dir.join("b2.table");
        if b2.is_file() {
            fixtures.b2_table = Some(fs::read_to_string(&b2)?);
        }
    }
    if let Some(bad) = only.iter().find(|&&id| !(1..=semilab_core::report::CRITERIA).contains(&id)) {
        bail!("no criterion {bad}");
    }
    let entries = if only.is_empty() {
        run_all(&fixtures)
    } else {
        only.iter().map(|&id| run_criterion(id, &fixtures)).collect()
    };
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    fs::write(out.join("report.md"), render_markdown(&entries))?;
    fs::write(out.join("report.json"), render_json(&entries))?;
    for e in &entries {
        fs::write(out.join(format!("criterion-{:02}.json", e.id)), serde_json::to_string_pretty(e)?)?;
        out!("{:>2} {:<14} {:>7} ms  {}", e.id, e.status.to_string(), e.elapsed_ms, e.claim);
    }
    if any_failed(&entries) {
        return Err(ReportFailed.into());
    }
    Ok(())
}
