//! Command-line front end for the distance toolkit.
//!
//! Every subcommand reads flat text files in the library formats,
//! prints a short human-readable report, and ends with a single
//! machine-parseable line `RESULT <key>=<value> ...`. With
//! `--decision`, the exit code encodes the answer: 0 for YES, 1 for
//! NO, 2 for malformed input, and 3 when the question cannot be
//! answered within the feasibility guard or weight cap.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use qdist_core::atomsets::{self, MinimalSetForm, VectorSet};
use qdist_core::codes::LinearCode;
use qdist_core::cws::{self, CwsCode, SymplecticMatrix, WitnessOutcome};
use qdist_core::gf2::BitMatrix;
use qdist_core::graphs::{self, SimpleGraph};
use qdist_core::kloracle;
use qdist_core::pauli;
use qdist_core::reduction::{
    self, Decision, GapParams, GapVerdict, Ratio, ReductionError, ReductionInstance, ReductionMode,
};
use qdist_core::sample;

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qdist",
    about = "Distances of CWS quantum codes built from graphs and classical codes",
    version
)]
struct Cli {
    /// Worker threads for the search partitions (0 = automatic). The
    /// output never depends on this.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum ModeArg {
    /// m from the smallest prime p with p²+p+1 ≥ 25n².
    #[default]
    Paper,
    /// m from the smallest prime p with p²+p+1 ≥ n (no guarantee).
    Scaled,
    /// m given by --custom-m, which must be p²+p+1 for a prime p.
    Custom,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum distance of the code with parity-check matrix H.
    ClassicalDist { h: PathBuf },
    /// Quantum distance of the CWS code built from a graph and a
    /// parity-check matrix, searched up to a weight cap.
    QuantumDist {
        graph: PathBuf,
        code: PathBuf,
        #[arg(long)]
        max_weight: usize,
    },
    /// Minimum weight of a nontrivial stabilizer element of the graph
    /// state (exact when no cap is given).
    Gdist {
        graph: PathBuf,
        #[arg(long)]
        max_weight: Option<usize>,
    },
    /// Distance of the stabilizer code given by a generator file.
    StabDist {
        stabilizer: PathBuf,
        #[arg(long)]
        max_weight: usize,
    },
    /// Stabilizer generators of the CWS code built from a graph and a
    /// parity-check matrix.
    ToStabilizer {
        graph: PathBuf,
        code: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The polarity graph on p²+p+1 vertices for a prime p.
    Polarity {
        p: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Smallest m = p²+p+1 with p prime and m ≥ n, for n > 7.
    FindM { n: u64 },
    /// Map a classical instance (H, t) to a quantum instance file.
    Reduce {
        h: PathBuf,
        #[arg(short, long)]
        t: usize,
        #[arg(long, value_enum, default_value_t)]
        mode: ModeArg,
        /// Target length for --mode custom.
        #[arg(long)]
        custom_m: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sweep an instance for undetected operators up to a weight cap,
    /// probe its minimum-weight codewords, and audit the reduction
    /// inequalities.
    Verify {
        instance: PathBuf,
        #[arg(long)]
        max_weight: usize,
        /// Run even when the sweep exceeds the operator-count guard.
        #[arg(long)]
        force: bool,
        /// Exit 0 if an undetected operator was found, 1 if the sweep
        /// excluded all weights up to the cap.
        #[arg(long)]
        decision: bool,
    },
    /// Decide whether the instance's quantum distance is at most its
    /// threshold t.
    Decide {
        instance: PathBuf,
        #[arg(long)]
        force: bool,
        #[arg(long)]
        decision: bool,
    },
    /// Classify the instance against a promise gap: YES when qdist ≤ t,
    /// NO beyond both γ·t and t + τ·√m, PROMISE_VIOLATED between.
    Gap {
        instance: PathBuf,
        /// Multiplicative gap factor γ ≥ 1 (integer or a/b).
        #[arg(long, default_value = "1")]
        gamma: String,
        /// Additive gap factor τ ≥ 0 (integer or a/b).
        #[arg(long, default_value = "0")]
        tau: String,
        #[arg(long)]
        force: bool,
        #[arg(long)]
        decision: bool,
    },
    /// Check gdist ∈ {δ, δ+1} over every labeled 4-cycle-free graph on
    /// up to --nmax vertices.
    GdistSweep {
        #[arg(long)]
        nmax: usize,
    },
    /// Check a vector-set file, or with --nmax sweep every zero-sum
    /// subset of graph columns on up to that many vertices.
    AtomCheck {
        set: Option<PathBuf>,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Cross-check the detection conditions against the statevector
    /// oracle, either exhaustively on one instance or over seeded
    /// random instances.
    KlCheck {
        #[arg(long, requires = "code")]
        graph: Option<PathBuf>,
        #[arg(long, requires = "graph")]
        code: Option<PathBuf>,
        /// Weight cap for the exhaustive comparison.
        #[arg(long, default_value_t = 3)]
        max_weight: usize,
        /// Seed for sampled mode (required when no files are given).
        #[arg(long)]
        seed: Option<u64>,
        /// Number of sampled instances.
        #[arg(long, default_value_t = 25)]
        samples: usize,
        /// Qubit count of sampled instances.
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// Whether the CWS code is degenerate (gdist below qdist).
    Degeneracy {
        #[arg(long, requires = "code", conflicts_with = "instance")]
        graph: Option<PathBuf>,
        #[arg(long, requires = "graph")]
        code: Option<PathBuf>,
        #[arg(long)]
        instance: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads(cli.threads);
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = if e
                .downcast_ref::<ReductionError>()
                .is_some_and(|r| matches!(r, ReductionError::InfeasibleSweep { .. }))
            {
                EXIT_INFEASIBLE
            } else {
                EXIT_INPUT
            };
            ExitCode::from(code)
        }
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: usize) {
    if threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(_threads: usize) {}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::ClassicalDist { h } => classical_dist(&h),
        Command::QuantumDist {
            graph,
            code,
            max_weight,
        } => quantum_dist(&graph, &code, max_weight),
        Command::Gdist { graph, max_weight } => gdist(&graph, max_weight),
        Command::StabDist {
            stabilizer,
            max_weight,
        } => stab_dist(&stabilizer, max_weight),
        Command::ToStabilizer {
            graph,
            code,
            output,
        } => to_stabilizer(&graph, &code, output.as_deref()),
        Command::Polarity { p, output } => polarity(p, output.as_deref()),
        Command::FindM { n } => find_m(n),
        Command::Reduce {
            h,
            t,
            mode,
            custom_m,
            output,
        } => reduce(&h, t, mode, custom_m, output.as_deref()),
        Command::Verify {
            instance,
            max_weight,
            force,
            decision,
        } => verify(&instance, max_weight, force, decision),
        Command::Decide {
            instance,
            force,
            decision,
        } => decide(&instance, force, decision),
        Command::Gap {
            instance,
            gamma,
            tau,
            force,
            decision,
        } => gap(&instance, &gamma, &tau, force, decision),
        Command::GdistSweep { nmax } => gdist_sweep(nmax),
        Command::AtomCheck { set, nmax } => atom_check(set.as_deref(), nmax),
        Command::KlCheck {
            graph,
            code,
            max_weight,
            seed,
            samples,
            n,
        } => kl_check(
            graph.as_deref(),
            code.as_deref(),
            max_weight,
            seed,
            samples,
            n,
        ),
        Command::Degeneracy {
            graph,
            code,
            instance,
        } => degeneracy(graph.as_deref(), code.as_deref(), instance.as_deref()),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_or_print(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn load_matrix(path: &Path) -> Result<BitMatrix> {
    BitMatrix::parse(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<SimpleGraph> {
    SimpleGraph::parse(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn load_instance(path: &Path) -> Result<ReductionInstance> {
    ReductionInstance::parse(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn load_cws(graph: &Path, code: &Path) -> Result<CwsCode> {
    let g = load_graph(graph)?;
    let c = LinearCode::from_parity_check(load_matrix(code)?);
    CwsCode::new(g, c).map_err(|e| anyhow!("{e}"))
}

fn ratio(text: &str, what: &str) -> Result<Ratio> {
    Ratio::from_str(text).with_context(|| format!("parsing --{what}"))
}

fn decision_exit(decision: bool, yes: bool) -> u8 {
    if !decision || yes {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

fn classical_dist(h: &Path) -> Result<u8> {
    let code = LinearCode::from_parity_check(load_matrix(h)?);
    let dist = code.min_distance().map_err(|e| anyhow!("{e}"))?;
    println!("n = {}, k = {}", code.n(), code.k());
    println!("dist = {dist}");
    println!("RESULT n={} k={} dist={}", code.n(), code.k(), dist);
    Ok(EXIT_YES)
}

fn quantum_dist(graph: &Path, code: &Path, max_weight: usize) -> Result<u8> {
    let q = load_cws(graph, code)?;
    println!("n = {}, k = {}", q.n(), q.k());
    match q.qdist_with_witness(max_weight) {
        WitnessOutcome::Found { weight, witness } => {
            println!("qdist = {weight} (witness {witness})");
            println!("RESULT qdist={weight} witness={witness}");
        }
        WitnessOutcome::AboveCap => {
            println!("no undetected operator of weight <= {max_weight}");
            println!("RESULT qdist=above_cap max_weight={max_weight}");
        }
    }
    Ok(EXIT_YES)
}

fn gdist(graph: &Path, max_weight: Option<usize>) -> Result<u8> {
    let g = load_graph(graph)?;
    match cws::gdist_with_witness(&g, max_weight) {
        WitnessOutcome::Found { weight, witness } => {
            println!("Gdist = {weight} (witness {witness})");
            println!("RESULT gdist={weight} witness={witness}");
        }
        WitnessOutcome::AboveCap => {
            let cap = max_weight.expect("uncapped searches always find an element");
            println!("no nontrivial stabilizer element of weight <= {cap}");
            println!("RESULT gdist=above_cap max_weight={cap}");
        }
    }
    Ok(EXIT_YES)
}

fn stab_dist(stabilizer: &Path, max_weight: usize) -> Result<u8> {
    let s = SymplecticMatrix::parse(&read(stabilizer)?)
        .map_err(|e| anyhow!("{}: {e}", stabilizer.display()))?;
    println!(
        "rows = {}, n = {}, k = {}",
        s.num_rows(),
        s.n(),
        s.logical_k()
    );
    match cws::stab_distance_with_witness(&s, max_weight) {
        WitnessOutcome::Found { weight, witness } => {
            println!("dist = {weight} (witness {witness})");
            println!("RESULT dist={weight} witness={witness}");
        }
        WitnessOutcome::AboveCap => {
            println!("no qualifying operator of weight <= {max_weight}");
            println!("RESULT dist=above_cap max_weight={max_weight}");
        }
    }
    Ok(EXIT_YES)
}

fn to_stabilizer(graph: &Path, code: &Path, output: Option<&Path>) -> Result<u8> {
    let q = load_cws(graph, code)?;
    let s = q.to_stabilizer();
    write_or_print(output, &s.render())?;
    println!(
        "RESULT rows={} n={} k={}",
        s.num_rows(),
        s.n(),
        s.logical_k()
    );
    Ok(EXIT_YES)
}

fn polarity(p: u64, output: Option<&Path>) -> Result<u8> {
    let g = graphs::polarity_graph(p).map_err(|e| anyhow!("{e}"))?;
    write_or_print(output, &g.render())?;
    println!("RESULT p={p} vertices={} edges={}", g.n(), g.num_edges());
    Ok(EXIT_YES)
}

fn find_m(n: u64) -> Result<u8> {
    let (m, p) = graphs::find_m(n).map_err(|e| anyhow!("{e}"))?;
    println!("m = {m} (p = {p})");
    println!("RESULT n={n} m={m} p={p}");
    Ok(EXIT_YES)
}

fn reduce(
    h: &Path,
    t: usize,
    mode: ModeArg,
    custom_m: Option<usize>,
    output: Option<&Path>,
) -> Result<u8> {
    let matrix = load_matrix(h)?;
    let mode = match (mode, custom_m) {
        (ModeArg::Paper, None) => ReductionMode::Paper,
        (ModeArg::Scaled, None) => ReductionMode::Scaled,
        (ModeArg::Custom, Some(m)) => ReductionMode::CustomM(m),
        (ModeArg::Custom, None) => bail!("--mode custom requires --custom-m"),
        (_, Some(_)) => bail!("--custom-m requires --mode custom"),
    };
    let inst = reduction::reduce(&matrix, t, mode)?;
    write_or_print(output, &inst.render())?;
    println!(
        "RESULT mode={} p={} m={} t={}",
        mode_name(inst.mode()),
        inst.p(),
        inst.m(),
        inst.t()
    );
    Ok(EXIT_YES)
}

fn mode_name(mode: ReductionMode) -> &'static str {
    match mode {
        ReductionMode::Paper => "Paper",
        ReductionMode::Scaled => "Scaled",
        ReductionMode::CustomM(_) => "CustomM",
    }
}

fn verify(instance: &Path, max_weight: usize, force: bool, decision: bool) -> Result<u8> {
    let inst = load_instance(instance)?;
    let report = reduction::verify_reduction(&inst, max_weight, force)?;
    println!(
        "mode = {}, m = {}, p = {}, dist = {}",
        mode_name(report.mode),
        inst.m(),
        inst.p(),
        report.code_distance
    );
    let found = match &report.sweep {
        WitnessOutcome::Found { weight, witness } => {
            println!("undetected operator of weight {weight}: {witness}");
            true
        }
        WitnessOutcome::AboveCap => {
            println!(
                "all {} operators of weight <= {max_weight} are detected",
                report.operators_swept
            );
            false
        }
    };
    for probe in &report.probes {
        println!(
            "probe Z({}) at weight {}: {}",
            probe.codeword,
            probe.weight,
            if probe.undetected {
                "undetected"
            } else {
                "DETECTED"
            }
        );
    }
    for check in &report.checks {
        println!(
            "check {}: {} vs {}: {}",
            check.name,
            check.lhs,
            check.rhs,
            if check.holds { "holds" } else { "FAILS" }
        );
    }
    println!(
        "RESULT sweep={} probes_ok={} checks_ok={} swept={}",
        match report.sweep.outcome().found() {
            Some(w) => format!("found_{w}"),
            None => "above_cap".into(),
        },
        report.all_probes_undetected(),
        report.all_checks_hold(),
        report.operators_swept
    );
    Ok(decision_exit(decision, found))
}

fn decide(instance: &Path, force: bool, decision: bool) -> Result<u8> {
    let inst = load_instance(instance)?;
    let answer = reduction::decide_qmindist(&inst, force)?;
    println!("qdist <= {}: {answer}", inst.t());
    println!("RESULT answer={answer} t={}", inst.t());
    Ok(decision_exit(decision, answer == Decision::Yes))
}

fn gap(instance: &Path, gamma: &str, tau: &str, force: bool, decision: bool) -> Result<u8> {
    let params =
        GapParams::new(ratio(gamma, "gamma")?, ratio(tau, "tau")?).map_err(|e| anyhow!("{e}"))?;
    let inst = load_instance(instance)?;
    let bound = (inst.t()..=inst.m())
        .take_while(|&w| reduction::gap_verdict(&inst, &params, w) != GapVerdict::No)
        .last()
        .unwrap_or(inst.t());
    reduction::guard_sweep(inst.m(), bound, force)?;
    let q = inst.cws_code()?;
    let (verdict, measured) = match q.qdist(bound).found() {
        Some(w) => (reduction::gap_verdict(&inst, &params, w), w.to_string()),
        None => (GapVerdict::No, format!("above_{bound}")),
    };
    println!(
        "t = {}, gamma = {}, tau = {}, widened bound = {bound}",
        inst.t(),
        params.gamma(),
        params.tau()
    );
    println!("verdict: {verdict}");
    println!("RESULT verdict={verdict} measured={measured}");
    Ok(if !decision {
        EXIT_YES
    } else {
        match verdict {
            GapVerdict::Yes => EXIT_YES,
            GapVerdict::No => EXIT_NO,
            GapVerdict::PromiseViolated => EXIT_INFEASIBLE,
        }
    })
}

fn gdist_sweep(nmax: usize) -> Result<u8> {
    if !(1..=11).contains(&nmax) {
        bail!("--nmax must be between 1 and 11");
    }
    let report = cws::gdist_bound_sweep(nmax);
    println!(
        "graphs = {}, 4-cycle-free = {}, violations = {}",
        report.graphs, report.four_cycle_free, report.violations
    );
    if let Some(v) = report.first_violation {
        println!(
            "first violation: n = {}, edge mask = {}, min degree = {}, gdist = {}",
            v.n, v.edge_mask, v.min_degree, v.gdist
        );
    }
    println!(
        "RESULT graphs={} four_cycle_free={} violations={}",
        report.graphs, report.four_cycle_free, report.violations
    );
    Ok(EXIT_YES)
}

fn atom_check(set: Option<&Path>, nmax: Option<usize>) -> Result<u8> {
    match (set, nmax) {
        (Some(path), None) => {
            let set =
                VectorSet::parse(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))?;
            println!("members = {}, universe = {}", set.len(), set.n());
            let atom = set.is_atom();
            let zero_sum = set.sums_to_zero();
            println!("atom = {atom}, zero_sum = {zero_sum}");
            let mut tail = String::new();
            if let Ok(gap) = set.degree_gap() {
                println!(
                    "delta = {}, |S1| = {}, |Sdelta| = {}",
                    gap.delta,
                    gap.light.len(),
                    gap.heavy.len()
                );
                tail.push_str(&format!(
                    " delta={} s1={} sdelta={}",
                    gap.delta,
                    gap.light.len(),
                    gap.heavy.len()
                ));
                if let Ok(holds) = set.partition_bound_holds() {
                    let form = form_name(
                        set.classify_minimal()
                            .expect("classification shares the partition-bound preconditions"),
                    );
                    println!("partition bound holds = {holds}, form = {form}");
                    tail.push_str(&format!(" bound={holds} form={form}"));
                }
            }
            println!("RESULT atom={atom} zero_sum={zero_sum}{tail}");
            Ok(EXIT_YES)
        }
        (None, Some(nmax)) => {
            if !(1..=8).contains(&nmax) {
                bail!("--nmax must be between 1 and 8");
            }
            let report = atomsets::atom_property_sweep(nmax);
            println!(
                "graphs = {}, 4-cycle-free = {}, sets checked = {}, violations = {}",
                report.graphs,
                report.four_cycle_free,
                report.sets_checked,
                report.violations.len()
            );
            if let Some(v) = report.violations.first() {
                println!(
                    "first violation: n = {}, edge mask = {}, subset {:?}, check {}",
                    v.n, v.edge_mask, v.subset, v.check
                );
            }
            println!(
                "RESULT graphs={} four_cycle_free={} sets={} violations={}",
                report.graphs,
                report.four_cycle_free,
                report.sets_checked,
                report.violations.len()
            );
            Ok(EXIT_YES)
        }
        _ => bail!("pass exactly one of a vector-set file or --nmax"),
    }
}

fn form_name(form: MinimalSetForm) -> &'static str {
    match form {
        MinimalSetForm::HeavyPlusUnits => "heavy_plus_units",
        MinimalSetForm::UniformHeavy => "uniform_heavy",
        MinimalSetForm::AboveMinimumSize => "above_minimum_size",
        MinimalSetForm::BoundViolation => "bound_violation",
    }
}

fn kl_check(
    graph: Option<&Path>,
    code: Option<&Path>,
    max_weight: usize,
    seed: Option<u64>,
    samples: usize,
    n: usize,
) -> Result<u8> {
    if let (Some(graph), Some(code)) = (graph, code) {
        let q = load_cws(graph, code)?;
        let (compared, mismatches) = compare_predicates(&q, max_weight)?;
        println!("compared {compared} operators of weight <= {max_weight}");
        println!("mismatches = {mismatches}");
        println!("RESULT compared={compared} mismatches={mismatches}");
        return Ok(EXIT_YES);
    }
    let seed = seed.ok_or_else(|| anyhow!("sampled mode requires --seed"))?;
    if n > 10 {
        bail!("sampled mode is sized for n <= 10");
    }
    let mut rng = sample::seeded_rng(seed);
    let mut compared = 0u64;
    let mut mismatches = 0u64;
    for _ in 0..samples {
        let q = sample::random_instance(n, 1..=2, &mut rng);
        let (c, m) = compare_predicates(&q, max_weight.min(3))?;
        compared += c;
        mismatches += m;
    }
    println!("instances = {samples}, n = {n}, compared = {compared}, mismatches = {mismatches}");
    println!("RESULT instances={samples} compared={compared} mismatches={mismatches}");
    Ok(EXIT_YES)
}

fn compare_predicates(q: &CwsCode, max_weight: usize) -> Result<(u64, u64)> {
    let mut compared = 0u64;
    let mut mismatches = 0u64;
    for e in pauli::enumerate_paulis(q.n(), max_weight.min(q.n())) {
        let via_kl = kloracle::detects_kl(q, &e).map_err(|e| anyhow!("{e}"))?;
        compared += 1;
        if via_kl != q.detects(&e) {
            mismatches += 1;
        }
    }
    Ok((compared, mismatches))
}

fn degeneracy(graph: Option<&Path>, code: Option<&Path>, instance: Option<&Path>) -> Result<u8> {
    let q = match (graph, code, instance) {
        (Some(g), Some(c), None) => load_cws(g, c)?,
        (None, None, Some(path)) => load_instance(path)?.cws_code()?,
        _ => bail!("pass either --graph with --code, or --instance"),
    };
    let qd = match q.qdist_with_witness(q.n()) {
        WitnessOutcome::Found { weight, witness } => {
            println!("qdist = {weight} (witness {witness})");
            weight
        }
        WitnessOutcome::AboveCap => unreachable!("k >= 1 admits an undetected operator"),
    };
    let degenerate = q.is_degenerate().map_err(|e| anyhow!("{e}"))?;
    let gd = match cws::gdist_with_witness(q.graph(), Some(qd)) {
        WitnessOutcome::Found { weight, witness } => {
            println!("gdist = {weight} (witness {witness})");
            weight.to_string()
        }
        WitnessOutcome::AboveCap => {
            println!("gdist > {qd}");
            format!("above_{qd}")
        }
    };
    println!("degenerate = {degenerate}");
    println!("RESULT qdist={qd} gdist={gd} degenerate={degenerate}");
    Ok(EXIT_YES)
}
