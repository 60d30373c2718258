//! `totsym` — verify, search for, and classify totally symmetric sets.
//!
//! Exit codes partition outcomes: 0 pass, 1 negative result (a set that is
//! not totally symmetric), 2 input error, 3 wall-clock budget exhausted,
//! 4 refutation (a theorem check failed, with a counterexample payload).
//!
//! With `--format json` every run emits one self-describing document that
//! is byte-identical across worker counts; wall time goes to stderr only.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgAction, Args, Parser, Subcommand};

use totsym::catalog;
use totsym::group::FiniteGroup;
use totsym::report::{
    BoundRowDoc, BoundSectionDoc, CertificateDoc, ClassifySectionDoc, ConfigEcho, Document,
    HoelderSectionDoc, SearchDoc, TheoremsDoc, VerifyDoc,
};
use totsym::search::{enumerate_tss, SearchBudget};
use totsym::theorems::{classify_max_tss, verify_bound, verify_hoelder, TheoremsError};
use totsym::tss::CandidateSet;

const EXIT_PASS: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_REFUTED: u8 = 4;

const DEFAULT_BUDGET_SECS: u64 = 1800;

#[derive(Parser)]
#[command(
    name = "totsym",
    version,
    about = "Totally symmetric sets in finite permutation groups",
    after_help = "Group shorthand: S<n>, A<n>, C<n>, D<n>, Q8; anything else via --group-file.\n\
                  The default budget (seconds) can be set with TOTSYM_BUDGET."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a set of permutations is totally symmetric.
    Verify(VerifyArgs),
    /// Enumerate totally symmetric sets of a given size.
    Search(SearchArgs),
    /// Run the theorem suites (bound, classify, hoelder, all).
    Theorems(TheoremsArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Builtin group shorthand (S5, A6, C12, D7, Q8).
    #[arg(long, conflicts_with = "group_file")]
    group: Option<String>,
    /// Generator file: degree on line 1, one generator per line.
    #[arg(long)]
    group_file: Option<PathBuf>,
    /// Wall-clock budget in seconds (default: TOTSYM_BUDGET or 1800).
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads (0 = all cores). Output does not depend on this.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Output format: human or json.
    #[arg(long, default_value = "human")]
    format: String,
    /// Write the document to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Elements in cycle notation, e.g. "(1 2)(3 4)".
    #[arg(required = true)]
    set: Vec<String>,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Target set size k.
    #[arg(long)]
    size: usize,
    /// Group results into conjugation orbits (pass `false` for the raw list).
    #[arg(long, default_value_t = true, action = ArgAction::Set, num_args = 0..=1,
          default_missing_value = "true")]
    up_to_conjugacy: bool,
}

#[derive(Args)]
struct TheoremsArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Which suite: bound, classify, hoelder, or all.
    selector: String,
    /// Symmetric group degree for classify/hoelder.
    #[arg(long)]
    n: Option<usize>,
    /// Target degree for hoelder.
    #[arg(long)]
    m: Option<usize>,
    /// Catalog order limit for the bound scan.
    #[arg(long)]
    max_order: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let code = match cli.command {
        Command::Verify(args) => run_in_pool(args.common.jobs, || cmd_verify(&args)),
        Command::Search(args) => run_in_pool(args.common.jobs, || cmd_search(&args)),
        Command::Theorems(args) => run_in_pool(args.common.jobs, || cmd_theorems(&args)),
    };
    eprintln!("wall time: {:.3}s", started.elapsed().as_secs_f64());
    ExitCode::from(code)
}

fn run_in_pool(jobs: usize, body: impl FnOnce() -> u8 + Send) -> u8 {
    if jobs == 0 {
        return body();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(body),
        Err(e) => {
            eprintln!("error: cannot build worker pool: {e}");
            EXIT_INPUT
        }
    }
}

fn budget_secs(common: &CommonArgs) -> Result<u64, String> {
    let secs = common
        .budget
        .or_else(|| {
            std::env::var("TOTSYM_BUDGET")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_BUDGET_SECS);
    if secs == 0 {
        return Err("budget must be positive".into());
    }
    Ok(secs)
}

fn resolve_group(common: &CommonArgs) -> Result<FiniteGroup, String> {
    match (&common.group, &common.group_file) {
        (Some(shorthand), None) => builtin_group(shorthand),
        (None, Some(path)) => FiniteGroup::from_file(path).map_err(|e| e.to_string()),
        (None, None) => Err("a group is required: pass --group or --group-file".into()),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    }
}

fn builtin_group(shorthand: &str) -> Result<FiniteGroup, String> {
    let (family, digits) = shorthand.split_at(1);
    let m: usize = digits
        .parse()
        .map_err(|_| format!("bad group shorthand {shorthand:?}"))?;
    match (family, m) {
        ("S" | "s", m) if (1..=8).contains(&m) => Ok(catalog::symmetric(m)),
        ("A" | "a", m) if (3..=8).contains(&m) => Ok(catalog::alternating(m)),
        ("C" | "c", m) if (1..=100_000).contains(&m) => Ok(catalog::cyclic(m)),
        ("D" | "d", m) if (3..=50_000).contains(&m) => Ok(catalog::dihedral(m)),
        ("Q" | "q", 8) => Ok(catalog::quaternion8()),
        _ => Err(format!(
            "unsupported group shorthand {shorthand:?} (use S<n>, A<n>, C<n>, D<n>, Q8)"
        )),
    }
}

fn group_source_echo(common: &CommonArgs) -> (Option<String>, Option<String>) {
    (
        common.group.clone(),
        common
            .group_file
            .as_ref()
            .map(|p| p.display().to_string()),
    )
}

fn emit(common: &CommonArgs, human: String, json: String) -> Result<(), String> {
    let text = if common.format == "json" { json } else { human };
    match &common.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write output: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn input_error(message: &str) -> u8 {
    eprintln!("error: {message}");
    EXIT_INPUT
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(args: &VerifyArgs) -> u8 {
    if args.common.format != "human" && args.common.format != "json" {
        return input_error("--format must be human or json");
    }
    let secs = match budget_secs(&args.common) {
        Ok(secs) => secs,
        Err(e) => return input_error(&e),
    };
    let group = match resolve_group(&args.common) {
        Ok(g) => g,
        Err(e) => return input_error(&e),
    };
    let texts: Vec<&str> = args.set.iter().map(String::as_str).collect();
    let candidate = match CandidateSet::parse(&group, &texts) {
        Ok(c) => c,
        Err(e) => return input_error(&e),
    };

    let certificate = candidate.is_totally_symmetric();
    let unrealized = if certificate.is_none() {
        candidate.first_unrealized_permutation().map(|p| p.to_string())
    } else {
        None
    };
    let totally_symmetric = certificate.is_some();

    let (group_echo, file_echo) = group_source_echo(&args.common);
    let config = ConfigEcho {
        command: "verify".into(),
        group: group_echo,
        group_file: file_echo,
        set: args.set.clone(),
        budget_secs: secs,
        format: args.common.format.clone(),
        out: args.common.out.as_ref().map(|p| p.display().to_string()),
        ..Default::default()
    };
    let result = VerifyDoc {
        group: group.label().to_string(),
        members: texts.iter().map(|t| t.to_string()).collect(),
        totally_symmetric,
        certificate: certificate
            .as_ref()
            .map(|c| CertificateDoc::render(&group, c)),
        unrealized_permutation: unrealized.clone(),
    };

    let mut human = String::new();
    if totally_symmetric {
        human.push_str(&format!(
            "{}: totally symmetric in {}\n",
            render_members(&result.members),
            group.label()
        ));
        if let Some(cert) = &result.certificate {
            for w in &cert.witnesses {
                human.push_str(&format!(
                    "  swap positions {} and {} by {}\n",
                    w.swap[0], w.swap[1], w.by
                ));
            }
            human.push_str(&format!(
                "  realized permutation group order: {}\n",
                cert.realized_group_order
            ));
        }
    } else {
        human.push_str(&format!(
            "{}: NOT totally symmetric in {}\n",
            render_members(&result.members),
            group.label()
        ));
        if let Some(missing) = &unrealized {
            human.push_str(&format!(
                "  no group element realizes the position permutation {missing}\n"
            ));
        }
    }

    let doc = Document::new(config, result);
    if let Err(e) = emit(&args.common, human, doc.to_json()) {
        return input_error(&e);
    }
    if totally_symmetric {
        EXIT_PASS
    } else {
        EXIT_NEGATIVE
    }
}

fn render_members(members: &[String]) -> String {
    format!("{{{}}}", members.join(", "))
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

fn cmd_search(args: &SearchArgs) -> u8 {
    if args.common.format != "human" && args.common.format != "json" {
        return input_error("--format must be human or json");
    }
    if args.size == 0 {
        return input_error("--size must be at least 1");
    }
    let group = match resolve_group(&args.common) {
        Ok(g) => g,
        Err(e) => return input_error(&e),
    };
    let secs = match budget_secs(&args.common) {
        Ok(secs) => secs,
        Err(e) => return input_error(&e),
    };
    let budget = SearchBudget::from_seconds(secs);
    let report = match enumerate_tss(&group, args.size, args.up_to_conjugacy, &budget) {
        Ok(r) => r,
        Err(e) => return input_error(&e.to_string()),
    };

    let (group_echo, file_echo) = group_source_echo(&args.common);
    let config = ConfigEcho {
        command: "search".into(),
        group: group_echo,
        group_file: file_echo,
        size: Some(args.size),
        up_to_conjugacy: Some(args.up_to_conjugacy),
        budget_secs: secs,
        format: args.common.format.clone(),
        out: args.common.out.as_ref().map(|p| p.display().to_string()),
        ..Default::default()
    };
    let result = SearchDoc::render(&group, &report);

    let mut human = format!(
        "{}: {} class(es) of totally symmetric sets of size {} ({} set(s) total{})\n",
        group.label(),
        result.class_count,
        result.k,
        result.total_count,
        if result.complete {
            ""
        } else {
            "; INCOMPLETE, budget exhausted"
        }
    );
    for (i, class) in result.classes.iter().enumerate() {
        human.push_str(&format!(
            "  class {}: {}  (orbit size {})\n",
            i + 1,
            render_members(&class.representative),
            class.orbit_size
        ));
    }

    let complete = result.complete;
    let doc = Document::new(config, result);
    if let Err(e) = emit(&args.common, human, doc.to_json()) {
        return input_error(&e);
    }
    if complete {
        EXIT_PASS
    } else {
        EXIT_BUDGET
    }
}

// ---------------------------------------------------------------------------
// theorems
// ---------------------------------------------------------------------------

fn cmd_theorems(args: &TheoremsArgs) -> u8 {
    if args.common.format != "human" && args.common.format != "json" {
        return input_error("--format must be human or json");
    }
    let secs = match budget_secs(&args.common) {
        Ok(secs) => secs,
        Err(e) => return input_error(&e),
    };
    let budget = SearchBudget::from_seconds(secs);

    let mut doc = TheoremsDoc {
        pass: true,
        ..Default::default()
    };
    let mut budget_hit = false;
    let mut human = String::new();

    let selector = args.selector.as_str();
    if !matches!(selector, "bound" | "classify" | "hoelder" | "all") {
        return input_error("selector must be one of: bound, classify, hoelder, all");
    }

    if matches!(selector, "bound" | "all") {
        let max_order = args.max_order.unwrap_or(119);
        let mut groups = catalog::catalog_groups(max_order);
        // The scan doubles as a falsification harness: a user-supplied
        // group is appended to the catalog.
        if args.common.group.is_some() || args.common.group_file.is_some() {
            match resolve_group(&args.common) {
                Ok(g) => groups.push(g),
                Err(e) => return input_error(&e),
            }
        }
        let results = match verify_bound(&groups, &budget) {
            Ok(r) => r,
            Err(e) => return theorems_error(&e),
        };
        let pass = results.iter().all(|r| r.ok() && r.complete);
        budget_hit |= results.iter().any(|r| !r.complete);
        doc.pass &= pass;
        human.push_str(&format!(
            "bound: {} over {} catalog groups of order <= {}\n",
            pass_str(pass),
            results.len(),
            max_order
        ));
        for r in results.iter().filter(|r| !r.ok() || !r.complete) {
            human.push_str(&format!(
                "  {}: order {}, max_tss {}, bound_ok {}, counterexample {:?}\n",
                r.label, r.order, r.max_tss, r.bound_ok, r.counterexample
            ));
        }
        if let Some(s5) = results.iter().find(|r| r.label == "S5") {
            human.push_str(&format!(
                "  S5: max_tss {}, equality case {}, isomorphic to S_5: {}\n",
                s5.max_tss,
                s5.equality_case,
                s5.iso_sym_confirmed.unwrap_or(false)
            ));
        }
        doc.bound = Some(BoundSectionDoc {
            max_order,
            pass,
            group_count: results.len(),
            rows: results.iter().map(BoundRowDoc::from).collect(),
        });
    }

    if matches!(selector, "classify" | "all") {
        let degrees: Vec<usize> = match (selector, args.n) {
            ("classify", Some(n)) => vec![n],
            ("classify", None) => {
                return input_error("classify needs --n <3..=7>");
            }
            _ => vec![3, 4, 5, 6],
        };
        for n in degrees {
            let outcome = match classify_max_tss(n, &budget) {
                Ok(o) => o,
                Err(e) => return theorems_error(&e),
            };
            budget_hit |= !outcome.report.complete;
            doc.pass &= outcome.pass;
            human.push_str(&format!(
                "classify n={}: {} ({})\n",
                n,
                pass_str(outcome.pass),
                outcome.detail
            ));
            let group = catalog::symmetric(n);
            doc.classify.push(ClassifySectionDoc::render(&group, &outcome));
        }
    }

    if matches!(selector, "hoelder" | "all") {
        let pairs: Vec<(usize, usize)> = match (selector, args.n, args.m) {
            ("hoelder", Some(n), Some(m)) => vec![(n, m)],
            ("hoelder", _, _) => {
                return input_error("hoelder needs --n and --m");
            }
            _ => vec![(4, 3), (4, 4), (5, 4), (5, 5), (6, 5), (6, 6)],
        };
        for (n, m) in pairs {
            let outcome = match verify_hoelder(n, m, &budget) {
                Ok(o) => o,
                Err(e @ TheoremsError::BudgetExceeded { .. }) => {
                    eprintln!("error: {e}");
                    return EXIT_BUDGET;
                }
                Err(e) => return theorems_error(&e),
            };
            doc.pass &= outcome.pass;
            human.push_str(&format!(
                "hoelder (n={}, m={}) part {}: {} ({})\n",
                n,
                m,
                outcome.part,
                pass_str(outcome.pass),
                outcome.detail
            ));
            doc.hoelder.push(HoelderSectionDoc::from(&outcome));
        }
    }

    let (group_echo, file_echo) = group_source_echo(&args.common);
    let config = ConfigEcho {
        command: "theorems".into(),
        group: group_echo,
        group_file: file_echo,
        selector: Some(args.selector.clone()),
        n: args.n,
        m: args.m,
        max_order: args.max_order,
        budget_secs: secs,
        format: args.common.format.clone(),
        out: args.common.out.as_ref().map(|p| p.display().to_string()),
        ..Default::default()
    };
    let pass = doc.pass;
    human.push_str(&format!("theorems: {}\n", pass_str(pass)));
    let document = Document::new(config, doc);
    if let Err(e) = emit(&args.common, human, document.to_json()) {
        return input_error(&e);
    }
    if budget_hit {
        EXIT_BUDGET
    } else if pass {
        EXIT_PASS
    } else {
        EXIT_REFUTED
    }
}

fn theorems_error(e: &TheoremsError) -> u8 {
    match e {
        TheoremsError::BudgetExceeded { .. } => {
            eprintln!("error: {e}");
            EXIT_BUDGET
        }
        TheoremsError::UnclassifiableHom { .. } => {
            eprintln!("refuted: {e}");
            EXIT_REFUTED
        }
        _ => input_error(&e.to_string()),
    }
}

fn pass_str(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}
