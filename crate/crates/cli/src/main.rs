mod report;

use clap::{ArgGroup, Args, Parser, Subcommand};
use report::{fmt_real, Report};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use teachlab_core::bounds::{bound_report, fmt_ratio as rational, rational_to_f64, HKind};
use teachlab_core::classical::{rtd, rtd_bruteforce, rtd_layers, teaching_report, RTD_BRUTEFORCE_CAP};
use teachlab_core::concept::{parse_class, serialize_class};
use teachlab_core::experiments::{
    claim_scan, max_class_search, run_tdmin_experiment, tau_estimate, tdmin_csv, verify_dim1,
    ExperimentConfig,
};
use teachlab_core::johnson::{h_max, serialize_family, EXACT_VERTEX_LIMIT};
use teachlab_core::nc::{find_clash, find_teacher, nctd, parse_teacher, serialize_teacher, NctdOutcome, Search};
use teachlab_core::tournament::{
    class1, class2, parse_tournament, recover_tournament, serialize_tournament, Tournament,
};
use teachlab_core::{Budget, ConceptClass, Error, InstanceSet};

#[derive(Parser)]
#[command(name = "teachlab", version, about = "Exact teaching-dimension computations")]
struct Cli {
    /// Print every report as a single JSON object.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel loops (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Teaching dimension of every concept (or one) in a class.
    Td {
        #[arg(long)]
        class: PathBuf,
        /// 1-based concept index.
        #[arg(long)]
        concept: Option<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Recursive teaching dimension.
    Rtd {
        #[arg(long)]
        class: PathBuf,
        /// Also compute the maximum TD_min over all subclasses and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Exact no-clash teaching dimension.
    Nctd {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        max_d: Option<usize>,
        #[arg(long)]
        timeout: Option<f64>,
        #[arg(long)]
        emit_teacher: Option<PathBuf>,
    },
    /// Check that a teacher file is a clash-free teacher of a class.
    VerifyTeacher {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        teacher: PathBuf,
    },
    /// Generate tournaments, build their classes, recover them
    #[command(subcommand)]
    Tournament(TournamentCmd),
    /// Extremal families in Johnson graphs
    #[command(subcommand)]
    Johnson(JohnsonCmd),
    /// Size bounds for classes of a given NCTD.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Seeded experiments
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    /// Exhaustive checks on small domains
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Exhaustive searches on small domains
    #[command(subcommand)]
    Search(SearchCmd),
}

#[derive(Subcommand)]
enum TournamentCmd {
    /// Generate a tournament file.
    #[command(group(ArgGroup::new("kind").required(true).args(["linear", "seed"])))]
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        linear: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Induced class of a tournament (mode 1: complements only; mode 2: all 2n concepts).
    Class {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        mode: u8,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild a tournament from a class of 2n concepts and an order-1 teacher.
    #[command(group(ArgGroup::new("source").args(["teacher", "find_teacher"])))]
    Recover {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        teacher: Option<PathBuf>,
        /// Search for an order-1 teacher (the default without --teacher).
        #[arg(long)]
        find_teacher: bool,
        #[arg(long)]
        timeout: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum JohnsonCmd {
    /// Largest k-set family spanning no narrow (t+1)-clique.
    Hmax {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long)]
        timeout: Option<f64>,
    },
}

#[derive(Args)]
struct SeededRun {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: u64,
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// TD_min and NCTD of the first induced class of random tournaments.
    Tdmin {
        #[command(flatten)]
        run: SeededRun,
        #[arg(long)]
        out: PathBuf,
        /// Per-trial timeout for the NCTD search.
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Scan the gap-theorem inequalities up to a maximum n.
    Claim {
        #[arg(long)]
        scan_max: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Fraction of random tournaments whose first class has TD_min at most k.
    Tau {
        #[command(flatten)]
        run: SeededRun,
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Exhaustively confirm that the NCTD-1 classes of size 2n are the tournament classes.
    Dim1 {
        #[arg(long)]
        n: usize,
        /// Skip classes not closed under complement before the NCTD check.
        #[arg(long)]
        prefilter: bool,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Largest class over [n] with NCTD at most d.
    Maxclass {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        timeout: Option<f64>,
    },
}

/// Exit codes.
const VERIFY_FAILED: u8 = 1;
const BAD_INPUT: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Debug)]
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        Failure {
            code: BAD_INPUT,
            msg: msg.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) => BUDGET,
            _ => BAD_INPUT,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

type Outcome = Result<(Report, u8), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_class(path: &Path) -> Result<ConceptClass, Failure> {
    parse_class(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn set_text(s: &InstanceSet) -> String {
    s.to_string()
}

fn set_json(s: &InstanceSet) -> Value {
    json!(s.members())
}

/// Writes `content` to `out`, or makes it the report body.
fn deliver(rep: &mut Report, out: Option<&Path>, content: String) -> Result<(), Failure> {
    match out {
        Some(p) => {
            write(p, &content)?;
            rep.text("written", p.display());
        }
        None => {
            rep.raw(content);
        }
    }
    Ok(())
}

fn cmd_td(class: &Path, concept: Option<usize>, csv: Option<&Path>) -> Outcome {
    let k = load_class(class)?;
    if k.is_empty() {
        return Err(Error::EmptyClass.into());
    }
    let tr = teaching_report(&k);
    let mut rep = Report::new("td");
    rep.int("n", k.n()).int("concepts", k.len());
    match concept {
        Some(i) => {
            if i == 0 || i > k.len() {
                return Err(Failure::input(format!("concept index {i} outside 1..={}", k.len())));
            }
            rep.int("concept", i)
                .text("labels", k.get(i - 1).to_bitstring())
                .int("td", tr.sizes[i - 1])
                .field("witness", set_text(&tr.witnesses[i - 1]), set_json(&tr.witnesses[i - 1]));
        }
        None => {
            rep.int("td_min", tr.td_min().unwrap()).int("td_max", tr.td_max().unwrap());
            for (i, (c, (s, w))) in k.iter().zip(tr.sizes.iter().zip(&tr.witnesses)).enumerate() {
                rep.line(format!("{:>4}  {}  td={s}  witness={w}", i + 1, c.to_bitstring()));
            }
            rep.data("sizes", json!(tr.sizes))
                .data("witnesses", tr.witnesses.iter().map(set_json).collect::<Vec<_>>());
        }
    }
    if let Some(p) = csv {
        let mut out = String::from("concept,labels,td,witness\n");
        for (i, c) in k.iter().enumerate() {
            let w: Vec<String> = tr.witnesses[i].members().iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{},{},{},{}", i + 1, c.to_bitstring(), tr.sizes[i], w.join(" "));
        }
        write(p, &out)?;
    }
    Ok((rep, 0))
}

fn cmd_rtd(class: &Path, oracle: bool) -> Outcome {
    let k = load_class(class)?;
    let value = rtd(&k);
    let mut rep = Report::new("rtd");
    rep.int("n", k.n()).int("concepts", k.len()).int("rtd", value);
    let layers = rtd_layers(&k);
    for (r, (t, idx)) in layers.iter().enumerate() {
        let one_based: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
        rep.line(format!("layer {}: td_min={t} concepts={}", r + 1, one_based.join(" ")));
    }
    rep.data(
        "layers",
        layers
            .iter()
            .map(|(t, idx)| json!({"td_min": t, "concepts": idx.iter().map(|i| i + 1).collect::<Vec<_>>()}))
            .collect::<Vec<_>>(),
    );
    let mut code = 0;
    if oracle {
        let brute = rtd_bruteforce(&k, RTD_BRUTEFORCE_CAP)?;
        rep.int("rtd_oracle", brute).flag("agree", brute == value);
        if brute != value {
            code = VERIFY_FAILED;
        }
    }
    Ok((rep, code))
}

fn cmd_nctd(class: &Path, max_d: Option<usize>, timeout: Option<f64>, emit: Option<&Path>) -> Outcome {
    let k = load_class(class)?;
    let mut budget = Budget::from_secs_or_env(timeout);
    let d_max = max_d.unwrap_or(k.n());
    let mut rep = Report::new("nctd");
    rep.int("n", k.n()).int("concepts", k.len());
    let code = match nctd(&k, d_max, &mut budget)? {
        NctdOutcome::Exact { d, teacher } => {
            rep.int("nctd", d);
            if let Some(p) = emit {
                write(p, &serialize_teacher(&teacher))?;
                rep.text("teacher", p.display());
            }
            0
        }
        NctdOutcome::ExceedsMax { d_max } => {
            rep.field("nctd", format!("> {d_max}"), Value::Null).int("max_d", d_max);
            0
        }
        NctdOutcome::Inconclusive { lower, upper, .. } => {
            rep.field("nctd", "inconclusive", Value::Null)
                .int("lower", lower)
                .int("upper", upper);
            BUDGET
        }
    };
    rep.int("nodes", budget.nodes());
    Ok((rep, code))
}

fn cmd_verify_teacher(class: &Path, teacher: &Path) -> Outcome {
    let k = load_class(class)?;
    let t = parse_teacher(&read(teacher)?).map_err(|e| Failure::input(format!("{}: {e}", teacher.display())))?;
    if !t.class().same_set(&k) {
        return Err(Failure::input("teacher covers a different class"));
    }
    let t = t.align_to(&k)?;
    let mut rep = Report::new("verify-teacher");
    rep.int("concepts", k.len())
        .int("order", t.order())
        .flag("normalized", t.is_normalized());
    match find_clash(&t) {
        None => {
            rep.flag("admissible", true);
            Ok((rep, 0))
        }
        Some((i, j)) => {
            rep.flag("admissible", false)
                .field("clash", format!("{} {}", i + 1, j + 1), json!([i + 1, j + 1]));
            Ok((rep, VERIFY_FAILED))
        }
    }
}

fn cmd_tournament(cmd: TournamentCmd) -> Outcome {
    match cmd {
        TournamentCmd::Gen { n, linear, seed, out } => {
            if n == 0 {
                return Err(Error::EmptyDomain.into());
            }
            let g = match (linear, seed) {
                (true, _) => Tournament::linear(n),
                (false, Some(s)) => Tournament::random(n, s),
                (false, None) => unreachable!("clap requires --linear or --seed"),
            };
            let mut rep = Report::new("tournament gen");
            deliver(&mut rep, out.as_deref(), serialize_tournament(&g))?;
            Ok((rep, 0))
        }
        TournamentCmd::Class { mode, input, out } => {
            let g = parse_tournament(&read(&input)?)
                .map_err(|e| Failure::input(format!("{}: {e}", input.display())))?;
            let k = if mode == 1 { class1(&g) } else { class2(&g) };
            let mut rep = Report::new("tournament class");
            deliver(&mut rep, out.as_deref(), serialize_class(&k))?;
            Ok((rep, 0))
        }
        TournamentCmd::Recover {
            class,
            teacher,
            timeout,
            out,
            ..
        } => {
            let k = load_class(&class)?;
            let mut rep = Report::new("tournament recover");
            let t = match teacher {
                Some(p) => parse_teacher(&read(&p)?)
                    .map_err(|e| Failure::input(format!("{}: {e}", p.display())))?,
                None => {
                    let mut budget = Budget::from_secs_or_env(timeout);
                    match find_teacher(&k, 1, &mut budget) {
                        Search::Found(t) => t,
                        Search::Refuted => {
                            rep.flag("order_one_teacher", false);
                            return Ok((rep, VERIFY_FAILED));
                        }
                        Search::Exhausted => {
                            return Err(Error::BudgetExceeded("order-1 teacher search".into()).into())
                        }
                    }
                }
            };
            match recover_tournament(&k, &t) {
                Ok(g) => {
                    deliver(&mut rep, out.as_deref(), serialize_tournament(&g))?;
                    Ok((rep, 0))
                }
                Err(Error::Recovery(e)) => {
                    rep.text("error", e);
                    Ok((rep, VERIFY_FAILED))
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn cmd_hmax(n: usize, k: usize, t: usize, witness: Option<&Path>, timeout: Option<f64>) -> Outcome {
    let mut budget = Budget::from_secs_or_env(timeout);
    let out = h_max(n, k, t, EXACT_VERTEX_LIMIT, &mut budget)?;
    let mut rep = Report::new("johnson hmax");
    rep.int("n", n).int("k", k).int("t", t);
    let code = match out.exact() {
        Some(h) => {
            let total = teachlab_core::johnson::binomial(n, k);
            rep.int("h_max", h)
                .text("ratio", reduced(h as u128, total))
                .flag("exact", true);
            0
        }
        None => {
            rep.field("h_max", "inconclusive", Value::Null)
                .int("lower", out.lower)
                .int("upper", out.upper)
                .flag("exact", false);
            BUDGET
        }
    };
    rep.int("nodes", out.nodes);
    if let Some(p) = witness {
        write(p, &serialize_family(&out.witness))?;
        rep.text("witness", p.display());
    }
    Ok((rep, code))
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn reduced(p: u128, q: u128) -> String {
    let g = gcd(p, q).max(1);
    format!("{}/{}", p / g, q / g)
}

fn h_kind(k: HKind) -> &'static str {
    match k {
        HKind::Exact => "exact",
        HKind::UpperBound => "upper-bound",
    }
}

fn cmd_bounds(n: usize, d: usize, t: Option<usize>, csv: Option<&Path>) -> Outcome {
    let b = bound_report(n, d, t)?;
    let mut rep = Report::new("bounds");
    rep.int("n", n).int("d", d);
    let t_txt = b.t.map(|t| t.to_string()).unwrap_or_default();
    let gub = b.gub.as_ref().map(rational).unwrap_or_default();
    let h = b.h_used.as_ref().map(rational).unwrap_or_default();
    let kind = b.h_kind.map(h_kind).unwrap_or_default();
    if let Some(t) = b.t {
        rep.int("t", t);
    }
    rep.int("ksz", &b.ksz);
    if let Some(g) = &b.gub {
        rep.text("gub", rational(g))
            .real("gub_real", rational_to_f64(g));
    }
    rep.real("factor", b.factor);
    if let (Some(h), Some(k)) = (&b.h_used, b.h_kind) {
        rep.text("h_used", rational(h)).text("h_kind", h_kind(k));
    }
    if let Some(p) = csv {
        let row = format!(
            "n,d,t,ksz,gub,factor,h_used,h_kind\n{n},{d},{t_txt},{},{gub},{},{h},{kind}\n",
            b.ksz,
            fmt_real(b.factor)
        );
        write(p, &row)?;
    }
    Ok((rep, 0))
}

fn cmd_experiment(cmd: ExperimentCmd) -> Outcome {
    match cmd {
        ExperimentCmd::Tdmin { run, out, timeout } => {
            let mut cfg = ExperimentConfig::new(run.n, run.trials, run.seed);
            cfg.budget_secs = timeout;
            let res = run_tdmin_experiment(&cfg)?;
            write(&out, &tdmin_csv(&res.records))?;
            let s = &res.summary;
            let mut rep = Report::new("experiment tdmin");
            rep.int("n", s.n)
                .int("trials", s.trials)
                .int("seed", s.seed)
                .int("td_min_min", s.min)
                .int("td_min_max", s.max)
                .real("td_min_mean", s.mean)
                .flag("all_nctd_one", s.all_nctd_one)
                .text("csv", out.display());
            for (v, c) in &s.distribution {
                rep.line(format!("td_min={v}: {c}"));
            }
            rep.data(
                "distribution",
                s.distribution
                    .iter()
                    .map(|(v, c)| (v.to_string(), json!(c)))
                    .collect::<serde_json::Map<_, _>>(),
            );
            let code = if s.all_nctd_one { 0 } else { VERIFY_FAILED };
            Ok((rep, code))
        }
        ExperimentCmd::Claim { scan_max, csv } => {
            let scan = claim_scan(scan_max)?;
            let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_else(|| "none".into());
            let mut rep = Report::new("experiment claim");
            rep.int("scan_max", scan_max)
                .int("points", scan.points.len())
                .field("first_applicable", opt(scan.first_applicable), json!(scan.first_applicable))
                .field("n0", opt(scan.n0), json!(scan.n0))
                .field("corollary_n0", opt(scan.corollary_n0), json!(scan.corollary_n0))
                .flag("sufficient_implies_ineq2", scan.sufficient_implies_ineq2)
                .flag(
                    "corollary_sufficient_implies_ineq2",
                    scan.corollary_sufficient_implies_ineq2,
                );
            if let Some(p) = csv {
                let mut out = String::from(
                    "n,k_prime,k,applicable,ineq1,ineq2,sufficient,corollary_k,corollary_ineq2,corollary_sufficient\n",
                );
                for q in &scan.points {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{},{},{},{}",
                        q.n,
                        fmt_real(q.k_prime),
                        q.k,
                        q.applicable as u8,
                        q.ineq1 as u8,
                        q.ineq2 as u8,
                        q.sufficient as u8,
                        q.corollary_k,
                        q.corollary_ineq2 as u8,
                        q.corollary_sufficient as u8
                    );
                }
                write(&p, &out)?;
            }
            let ok = scan.sufficient_implies_ineq2 && scan.corollary_sufficient_implies_ineq2;
            Ok((rep, if ok { 0 } else { VERIFY_FAILED }))
        }
        ExperimentCmd::Tau { run, k } => {
            let r = tau_estimate(run.n, run.trials, run.seed, k)?;
            let mut rep = Report::new("experiment tau");
            rep.int("n", r.n)
                .int("trials", r.trials)
                .int("seed", r.seed)
                .field("threshold", r.threshold, r.threshold)
                .field("k", r.k_used, r.k_used)
                .flag("vacuous", r.vacuous)
                .int("hits", r.hits)
                .real("fraction", r.fraction)
                .real("ci95_low", r.ci_low)
                .real("ci95_high", r.ci_high);
            if r.vacuous {
                rep.line("threshold < 1, vacuous");
            }
            Ok((rep, 0))
        }
    }
}

fn words_text(n: usize, words: &[u64]) -> String {
    words
        .iter()
        .map(|w| (0..n).map(|i| if w >> i & 1 == 1 { '1' } else { '0' }).collect::<String>())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_dim1(n: usize, prefilter: bool) -> Outcome {
    let r = verify_dim1(n, prefilter)?;
    let mut rep = Report::new("verify dim1");
    rep.int("n", n)
        .int("candidates", r.candidates)
        .int("examined", r.examined)
        .int("nctd_one_classes", r.passing.len())
        .int("tournaments", r.tournaments)
        .int("tournament_classes", r.tournament_classes)
        .flag("matches", r.matches)
        .flag("complement_closed", r.complement_closed);
    for w in &r.passing {
        rep.line(words_text(n, w));
    }
    Ok((rep, if r.passed() { 0 } else { VERIFY_FAILED }))
}

fn cmd_maxclass(n: usize, d: usize, timeout: Option<f64>) -> Outcome {
    let mut budget = Budget::from_secs_or_env(timeout);
    let out = max_class_search(n, d, &mut budget)?;
    let mut rep = Report::new("search maxclass");
    rep.int("n", n).int("d", d).int("greedy", out.greedy);
    let code = match out.exact() {
        Some(m) => {
            rep.int("m_nc", m).int("witnesses", out.witnesses.len());
            for w in &out.witnesses {
                rep.line(words_text(n, w));
            }
            rep.data(
                "witness_classes",
                out.witnesses
                    .iter()
                    .map(|w| json!(words_text(n, w).split(' ').collect::<Vec<_>>()))
                    .collect::<Vec<_>>(),
            );
            0
        }
        None => {
            rep.field("m_nc", "inconclusive", Value::Null)
                .int("lower", out.lower)
                .int("upper", out.upper);
            BUDGET
        }
    };
    rep.int("nodes", out.nodes);
    Ok((rep, code))
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Td { class, concept, csv } => cmd_td(&class, concept, csv.as_deref()),
        Command::Rtd { class, oracle } => cmd_rtd(&class, oracle),
        Command::Nctd {
            class,
            max_d,
            timeout,
            emit_teacher,
        } => cmd_nctd(&class, max_d, timeout, emit_teacher.as_deref()),
        Command::VerifyTeacher { class, teacher } => cmd_verify_teacher(&class, &teacher),
        Command::Tournament(c) => cmd_tournament(c),
        Command::Johnson(JohnsonCmd::Hmax {
            n,
            k,
            t,
            witness,
            timeout,
        }) => cmd_hmax(n, k, t, witness.as_deref(), timeout),
        Command::Bounds { n, d, t, csv } => cmd_bounds(n, d, t, csv.as_deref()),
        Command::Experiment(c) => cmd_experiment(c),
        Command::Verify(VerifyCmd::Dim1 { n, prefilter }) => cmd_dim1(n, prefilter),
        Command::Search(SearchCmd::Maxclass { n, d, timeout }) => cmd_maxclass(n, d, timeout),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(BAD_INPUT);
        }
    }
    match dispatch(cli) {
        Ok((rep, code)) => {
            print!("{}", rep.render(json));
            ExitCode::from(code)
        }
        Err(f) => {
            if json {
                println!("{}", json!({"error": f.msg, "exit_code": f.code}));
            }
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
