//! `ncgb`: normal forms, completeness checks, completion, Anick prefixes
//! and Betti tables from the command line.

mod presentation;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use ncgb::anick::ResolutionPrefix;
use ncgb::kostant::{conjecture_scan, frobenius_shift_check, ConjectureVariant, Flavor};
use ncgb::resolution::{
    betti_table, exactness_defects, generator_counts, minimalize, minimalize_generic, BettiTable,
};
use ncgb::rewriting::{complete, count_irreducible_by_degree, interreduce, is_complete, normal_form, CompletionError};
use ncgb::suite::{self, SuiteConfig};
use ncgb::{Error, Polynomial};
use serde_json::json;

use presentation::{PresentationArgs, PresentationDocument};
use report::Report;

#[derive(Debug, Parser)]
#[command(name = "ncgb", version, about = "Noncommutative Groebner bases and Anick resolutions over F_p")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal form of a polynomial expression.
    Nf {
        #[command(flatten)]
        pres: PresentationArgs,
        /// E.g. `b0 a0 b0 a0 + a0 b0 a0 b0`; `1` is the empty word.
        expr: String,
    },
    /// Resolve every critical pair; fails when one does not reduce to 0.
    Check {
        #[command(flatten)]
        pres: PresentationArgs,
        /// Only pairs with tip degree at most this.
        #[arg(long)]
        degree_bound: Option<u32>,
        /// Delete the rule with this left-hand side before checking.
        #[arg(long = "drop")]
        drop: Vec<String>,
    },
    /// Critical-pair completion up to a degree, then interreduction.
    Complete {
        #[command(flatten)]
        pres: PresentationArgs,
        #[arg(long = "D", default_value_t = 16)]
        degree: u32,
        /// Largest number of rules before giving up.
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
    },
    /// Irreducible words per degree.
    Irreducible {
        #[command(flatten)]
        pres: PresentationArgs,
        #[arg(long = "D", default_value_t = 16)]
        degree: u32,
    },
    /// Chains, differentials and exactness of the resolution prefix.
    Anick {
        #[command(flatten)]
        pres: PresentationArgs,
        /// Index bound of the small and conjectural families.
        #[arg(long = "K")]
        k: Option<u32>,
        #[arg(long = "D", default_value_t = 16)]
        degree: u32,
        /// Cancel unit constant entries first.
        #[arg(long)]
        minimal: bool,
    },
    /// Graded Betti table of the first levels.
    Betti {
        #[command(flatten)]
        pres: PresentationArgs,
        #[arg(long = "K")]
        k: Option<u32>,
        #[arg(long = "D", default_value_t = 16)]
        degree: u32,
        /// Minimalize before counting (the default).
        #[arg(long, overrides_with = "no_minimal")]
        minimal: bool,
        /// Count the generators of the unmodified prefix.
        #[arg(long, overrides_with = "minimal")]
        no_minimal: bool,
    },
    /// Run the whole verification suite.
    VerifyPaper {
        #[arg(long = "K", default_value_t = 4)]
        k: u32,
        #[arg(long = "D", default_value_t = 16)]
        degree: u32,
        /// Randomized cases per property.
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Bounded scans of the conjectural presentations; always exits 0.
    Conjectures {
        /// shift, odd, general or all.
        #[arg(long, default_value = "all")]
        which: String,
        /// Largest `l` for the shift check.
        #[arg(long, default_value_t = 3)]
        l_max: u32,
        /// Largest shift.
        #[arg(long, default_value_t = 2)]
        j_max: u32,
        /// Degree bound for the odd-prime scan.
        #[arg(long, default_value_t = 9)]
        degree_odd: u32,
        /// Degree bound for the general-n scan.
        #[arg(long, default_value_t = 8)]
        degree_general: u32,
    },
    /// Print a presentation as a JSON document.
    Show {
        #[command(flatten)]
        pres: PresentationArgs,
    },
}

/// Why a command did not succeed; decides the exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments, unreadable input, out-of-range degrees: exit 2.
    Usage(String),
    /// A check that ran and failed: exit 1.
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotComplete(_)
            | Error::NotReduced(_)
            | Error::NotAComplex(_)
            | Error::NotACycle { .. }
            | Error::LiftFailed { .. }
            | Error::PresentationMismatch(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli.command);
    match outcome {
        Ok(mut report) => {
            report.timing_seconds = start.elapsed().as_secs_f64();
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("failed: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::Nf { pres, expr } => cmd_nf(pres, expr),
        Command::Check {
            pres,
            degree_bound,
            drop,
        } => cmd_check(pres, *degree_bound, drop),
        Command::Complete { pres, degree, cap } => cmd_complete(pres, *degree, *cap),
        Command::Irreducible { pres, degree } => cmd_irreducible(pres, *degree),
        Command::Anick {
            pres,
            k,
            degree,
            minimal,
        } => cmd_anick(pres, *k, *degree, *minimal),
        Command::Betti {
            pres,
            k,
            degree,
            no_minimal,
            ..
        } => cmd_betti(pres, *k, *degree, !no_minimal),
        Command::VerifyPaper {
            k,
            degree,
            cases,
            seed,
        } => Ok(cmd_verify(SuiteConfig {
            k: *k,
            max_degree: *degree,
            seed: *seed,
            cases: *cases,
        })),
        Command::Conjectures {
            which,
            l_max,
            j_max,
            degree_odd,
            degree_general,
        } => cmd_conjectures(which, *l_max, *j_max, *degree_odd, *degree_general),
        Command::Show { pres } => {
            let loaded = pres.load(None)?;
            let doc = PresentationDocument::from_system(&loaded.system, None);
            let mut r = Report::new("show");
            r.set_table("presentation", serde_json::to_value(&doc).expect("serializable"));
            r.line(serde_json::to_string_pretty(&doc).expect("serializable"));
            Ok(r)
        }
    }
}

fn presentation_params(r: &mut Report, pres: &PresentationArgs, description: &str) {
    r.param("presentation", json!(description));
    if let Some(path) = &pres.file {
        r.param("file", json!(path.display().to_string()));
    }
}

fn cmd_nf(pres: &PresentationArgs, expr: &str) -> Result<Report, Failure> {
    let loaded = pres.load(None)?;
    let s = &loaded.system;
    let mut r = Report::new("nf");
    presentation_params(&mut r, pres, &loaded.description);
    r.param("expression", json!(expr));
    let g = Polynomial::parse(s.alphabet(), s.field(), expr)?;
    let nf = normal_form(&g, s);
    r.set_table("normal_form", json!(nf.value.to_string()));
    r.set_table("steps", json!(nf.steps));
    r.line(nf.value.to_string());
    r.line(format!("({} rewrite steps)", nf.steps));
    Ok(r)
}

fn cmd_check(pres: &PresentationArgs, degree_bound: Option<u32>, drop: &[String]) -> Result<Report, Failure> {
    let loaded = pres.load(None)?;
    let mut s = loaded.system;
    let mut r = Report::new("check");
    presentation_params(&mut r, pres, &loaded.description);
    r.param("degree_bound", json!(degree_bound));
    if !drop.is_empty() {
        let mut doc = PresentationDocument::from_system(&s, None);
        for lhs in drop {
            let w = s.word(lhs)?;
            let idx = s
                .rules()
                .iter()
                .position(|rule| *rule.lhs() == w)
                .ok_or_else(|| Failure::Usage(format!("no rule with left-hand side `{lhs}`")))?;
            doc.relations.remove(idx);
            s = doc.load(None)?.system;
        }
        r.param("dropped", json!(drop));
    }
    let report = is_complete(&s, degree_bound);
    r.verdict("complete", report.passed(), report.to_string());
    let witnesses: Vec<String> = report
        .witnesses
        .iter()
        .map(|w| format!("{} -> {}", w.pair.describe(&s), w.residue))
        .collect();
    for w in &witnesses {
        r.line(format!("witness {w}"));
    }
    r.set_table("witnesses", json!(witnesses));
    r.set_table("pairs_checked", json!(report.pairs_checked));
    Ok(r)
}

fn cmd_complete(pres: &PresentationArgs, degree: u32, cap: usize) -> Result<Report, Failure> {
    let loaded = pres.load(None)?;
    let mut r = Report::new("complete");
    presentation_params(&mut r, pres, &loaded.description);
    r.param("degree_bound", json!(degree));
    r.param("cap", json!(cap));
    let done = match complete(&loaded.system, degree, cap) {
        Ok(s) => s,
        Err(CompletionError::CapExceeded { cap, partial }) => {
            r.verdict("completed", false, format!("more than {cap} rules ({} reached)", partial.len()));
            return Ok(r);
        }
        Err(CompletionError::BoundTooSmall { bound, needed }) => {
            return Err(Failure::Usage(format!("degree bound {bound} is below {needed}")));
        }
        Err(CompletionError::Algebra(e)) => return Err(e.into()),
    };
    let reduced = interreduce(&done)?;
    let rules: Vec<String> = reduced.rules().iter().map(|x| x.to_string()).collect();
    r.verdict(
        "completed",
        true,
        format!("{} rules in, {} after completion, {} after interreduction", loaded.system.len(), done.len(), rules.len()),
    );
    for x in &rules {
        r.line(x.clone());
    }
    r.set_table("rules", json!(rules));
    Ok(r)
}

fn cmd_irreducible(pres: &PresentationArgs, degree: u32) -> Result<Report, Failure> {
    let loaded = pres.load(None)?;
    let mut r = Report::new("irreducible");
    presentation_params(&mut r, pres, &loaded.description);
    r.param("max_degree", json!(degree));
    let counts = count_irreducible_by_degree(&loaded.system, degree);
    r.line("degree count".to_string());
    for (d, c) in counts.iter().enumerate() {
        r.line(format!("{d:>6} {c:>5}"));
    }
    r.set_table("irreducible_counts", json!(counts));
    Ok(r)
}

fn index_bound(loaded: &presentation::Loaded) -> Option<u32> {
    match loaded.kostant.as_ref().map(|k| k.flavor()) {
        Some(Flavor::Small { index_bound }) | Some(Flavor::Conjectural { index_bound, .. }) => Some(*index_bound),
        _ => None,
    }
}

fn prefix_for(pres: &PresentationArgs, k: Option<u32>, degree: u32, r: &mut Report) -> Result<(ResolutionPrefix, presentation::Loaded), Failure> {
    let k = k.or((pres.builtin.is_some() && pres.file.is_none()).then_some(4));
    let loaded = pres.load(k)?;
    presentation_params(r, pres, &loaded.description);
    if let Some(k) = index_bound(&loaded) {
        r.param("K", json!(k));
    }
    r.param("D", json!(degree));
    if let Some(bound) = loaded.safe_degree() {
        r.param("safe_degree", json!(bound));
        if degree > bound {
            return Err(Error::DegreeBeyondSafe { degree, bound }.into());
        }
    }
    let prefix = ResolutionPrefix::build(&loaded.system, degree, loaded.safe_degree())?;
    Ok((prefix, loaded))
}

fn minimalized(prefix: &ResolutionPrefix, loaded: &presentation::Loaded) -> Result<ResolutionPrefix, Failure> {
    Ok(match loaded.kostant.as_ref().map(|k| k.flavor()) {
        Some(Flavor::Small { .. }) => minimalize(prefix)?,
        _ => minimalize_generic(prefix)?,
    })
}

fn cmd_anick(pres: &PresentationArgs, k: Option<u32>, degree: u32, minimal: bool) -> Result<Report, Failure> {
    let mut r = Report::new("anick");
    let (mut prefix, loaded) = prefix_for(pres, k, degree, &mut r)?;
    r.param("minimal", json!(minimal));
    if minimal {
        prefix = minimalized(&prefix, &loaded)?;
        for c in prefix.cancellations() {
            r.line(format!("cancelled .{} against .{}", c.generator, c.partner));
        }
    }
    let s = prefix.system();
    let mut chains = serde_json::Map::new();
    for level in 0..=2 {
        let set = prefix.chains(level)?;
        let names: Vec<String> = prefix
            .active_chains(level)?
            .into_iter()
            .map(|i| set.get(i))
            .filter(|w| w.degree() <= degree)
            .map(|w| s.display_word(w))
            .collect();
        r.line(format!("T_{level}: {} chains of degree <= {degree}", names.len()));
        if level == 2 {
            r.line(format!("  {}", names.join(", ")));
        }
        chains.insert(format!("T{level}"), json!(names));
    }
    r.set_table("chains", serde_json::Value::Object(chains));
    let mut d_tables = serde_json::Map::new();
    for level in 0..=2 {
        let set = prefix.chains(level)?;
        let mut rows = serde_json::Map::new();
        for i in prefix.active_chains(level)? {
            let t = set.get(i);
            if t.degree() > degree {
                continue;
            }
            let value = prefix.display(prefix.differential(level, i)?);
            r.line(format!("d_{level}(.{}) = {value}", s.display_word(t)));
            rows.insert(s.display_word(t), json!(value));
        }
        d_tables.insert(format!("d{level}"), serde_json::Value::Object(rows));
    }
    r.set_table("differentials", serde_json::Value::Object(d_tables));
    let complex = prefix.verify_complex();
    r.verdict("complex", complex.passed(), format!("{:?} generators checked {}", complex.checked, complex.failures.join("; ")).trim().to_string());
    let mut defects = serde_json::Map::new();
    for level in -1..=1 {
        let v = exactness_defects(&prefix, level, degree)?;
        let ok = v.iter().all(|&x| x == 0);
        r.verdict(&format!("exact at level {level}"), ok, format!("defects {v:?}"));
        defects.insert(level.to_string(), json!(v));
    }
    r.set_table("exactness_defects", serde_json::Value::Object(defects));
    Ok(r)
}

fn betti_lines(r: &mut Report, t: &BettiTable) {
    for line in t.to_string().lines() {
        r.line(line.to_string());
    }
}

fn cmd_betti(pres: &PresentationArgs, k: Option<u32>, degree: u32, minimal: bool) -> Result<Report, Failure> {
    let mut r = Report::new("betti");
    let (mut prefix, loaded) = prefix_for(pres, k, degree, &mut r)?;
    r.param("minimal", json!(minimal));
    let table = if minimal {
        prefix = minimalized(&prefix, &loaded)?;
        let t = betti_table(&prefix, degree)?;
        r.verdict("minimal", true, format!("{} pairs cancelled; differential images lie in the radical", prefix.cancellations().len()));
        t
    } else {
        r.line("generator counts of the unmodified prefix (not necessarily minimal)".to_string());
        generator_counts(&prefix, degree)?.levels(0..=2)
    };
    betti_lines(&mut r, &table);
    let next = generator_counts(&prefix, degree)?.row(3);
    r.line(format!("level 3 generator counts (not certified minimal): {next:?}"));
    if minimal && matches!(loaded.kostant.as_ref().map(|k| k.flavor()), Some(Flavor::Small { .. })) {
        let expected = suite::expected_minimal_table(degree);
        r.verdict(
            "matches A <- A[2^k]^2 <- A[2^(k+1)]^2 + A[2^l+2^k]^4",
            table == expected,
            "homological indexing: A at level 0".to_string(),
        );
    }
    r.set_table("betti", serde_json::to_value(table.entries()).expect("serializable"));
    r.set_table("level3_counts", json!(next));
    Ok(r)
}

fn cmd_verify(cfg: SuiteConfig) -> Report {
    let mut r = Report::new("verify-paper");
    r.param("K", json!(cfg.k));
    r.param("D", json!(cfg.max_degree));
    r.param("cases", json!(cfg.cases));
    r.param("seed", json!(cfg.seed));
    let results = suite::run_all(&cfg);
    for c in &results {
        r.line(c.line());
        for d in &c.details {
            r.line(format!("    {d}"));
        }
        if c.gating {
            r.passed &= c.passed;
        }
    }
    let stripped: Vec<serde_json::Value> = results
        .iter()
        .map(|c| json!({"id": c.id, "title": c.title, "gating": c.gating, "passed": c.passed, "details": c.details}))
        .collect();
    r.set_table("criteria", json!(stripped));
    r
}

fn cmd_conjectures(which: &str, l_max: u32, j_max: u32, degree_odd: u32, degree_general: u32) -> Result<Report, Failure> {
    let all = which == "all";
    if !all && !["shift", "odd", "general"].contains(&which) {
        return Err(Failure::Usage(format!("--which must be shift, odd, general or all, not `{which}`")));
    }
    let mut r = Report::new("conjectures");
    r.param("which", json!(which));
    let mut out = serde_json::Map::new();
    if all || which == "shift" {
        let mut failures = Vec::new();
        for l in 0..=l_max {
            for j in 1..=j_max {
                let s = frobenius_shift_check(l, j, None)?;
                failures.extend(s.failures.iter().map(|f| format!("l={l} j={j}: {f}")));
            }
        }
        let verdict = if failures.is_empty() { "consistent up to bound" } else { "witness found" };
        r.line(format!("index shift (l <= {l_max}, j <= {j_max}): {verdict}"));
        out.insert("shift".into(), json!({"verdict": verdict, "failures": failures}));
    }
    let scans = [
        ("odd", ConjectureVariant::OddPN3, 3, 3, 2, degree_odd),
        ("general", ConjectureVariant::P2GeneralN, 4, 2, 3, degree_general),
    ];
    for (id, variant, n, p, index_bound, degree) in scans {
        if !(all || which == id) {
            continue;
        }
        let s = conjecture_scan(variant, n, p, index_bound, degree)?;
        let verdict = if s.consistent() { "consistent up to bound" } else { "witness found" };
        r.line(format!("{id} ({variant}, n = {n}, p = {p}, degree <= {degree}): {verdict}"));
        for w in &s.witnesses {
            r.line(format!("  witness {w}"));
        }
        for (d, words, dim) in &s.dimension_mismatches {
            r.line(format!("  degree {d}: {words} irreducible words, expected dimension {dim}"));
        }
        out.insert(id.into(), serde_json::to_value(&s).expect("serializable"));
    }
    r.line("experimental: verdicts are informational".to_string());
    r.set_table("scans", serde_json::Value::Object(out));
    Ok(r)
}
