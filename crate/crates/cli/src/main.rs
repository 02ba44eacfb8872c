//! Command-line frontend: duality checks on posets and distributive
//! lattices, minimal-closed-set mining, brute-force oracles, and a
//! call-bound benchmark.
//!
//! Exit codes: 0 when the pair is dual (or an enumeration ran to
//! completion), 2 when a witness or a new set was found, 1 on error.

mod parse;

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use dualize_core::chi::chi;
use dualize_core::engine::{check_dual, CheckOptions, DualResult};
use dualize_core::gen::{gen_instance, GenMode, GeneratorSpec};
use dualize_core::instance::DualInstance;
use dualize_core::lattice::{lattice_dual, LatticeVerdict};
use dualize_core::mining::{
    enum_inc, property_infrequent, property_linear, property_row_cover, IncOutcome,
    MonotoneProperty, PiOracle,
};
use dualize_core::oracle::brute_force_dual;
use dualize_core::set::ElementSet;

const EXIT_DUAL: u8 = 0;
const EXIT_WITNESS: u8 = 2;

#[derive(Parser)]
#[command(name = "dualize", about = "Dualization over posets and distributive lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an ideal/filter instance for duality.
    Dual {
        /// Instance file.
        file: String,
        /// Cross-check the verdict against the brute-force oracle.
        #[arg(long)]
        oracle: bool,
        /// Print the per-call volume trace.
        #[arg(long)]
        trace: bool,
        /// Force sequential evaluation (deterministic call counts).
        #[arg(long)]
        seq: bool,
    },
    /// Brute-force duality check (oracle scale only).
    Oracle {
        /// Instance file.
        file: String,
    },
    /// Check a lattice antichain pair for duality.
    LatticeDual {
        /// Lattice file.
        file: String,
        /// Force sequential evaluation.
        #[arg(long)]
        seq: bool,
    },
    /// Enumerate minimal closed sets satisfying a monotone property.
    Mine {
        /// Transaction file (one row per line).
        transactions: String,
        /// Implication file (`a -> b` lines).
        implications: String,
        /// Property threshold.
        #[arg(long, default_value_t = 0)]
        t: usize,
        /// Property family.
        #[arg(long, value_enum, default_value_t = PropertyKind::Infrequent)]
        property: PropertyKind,
        /// Stop after this many sets.
        #[arg(long)]
        max_count: Option<usize>,
        /// Verify the full answer against brute force.
        #[arg(long)]
        oracle: bool,
    },
    /// Generate random instances and check the call-count bound.
    Bench {
        /// Number of instances.
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Poset size.
        #[arg(long, default_value_t = 50)]
        n: usize,
        /// Ideal family size.
        #[arg(long, default_value_t = 20)]
        m: usize,
        /// Filter family size.
        #[arg(long, default_value_t = 20)]
        k: usize,
        /// Edge density in [0, 1].
        #[arg(long, default_value_t = 0.15)]
        density: f64,
        /// Base seed; instance i uses seed + i.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = BenchMode::Random)]
        mode: BenchMode,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        csv: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyKind {
    /// Support at most t.
    Infrequent,
    /// At least t rows met.
    RowCover,
    /// Unit-weight linear form with threshold t.
    Linear,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchMode {
    Random,
    ExactlyDual,
    NearDual,
}

impl From<BenchMode> for GenMode {
    fn from(m: BenchMode) -> Self {
        match m {
            BenchMode::Random => GenMode::Random,
            BenchMode::ExactlyDual => GenMode::ExactlyDual,
            BenchMode::NearDual => GenMode::NearDual,
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run() -> Result<u8> {
    match Cli::parse().command {
        Command::Dual {
            file,
            oracle,
            trace,
            seq,
        } => run_dual(&file, oracle, trace, seq),
        Command::Oracle { file } => run_oracle(&file),
        Command::LatticeDual { file, seq } => run_lattice_dual(&file, seq),
        Command::Mine {
            transactions,
            implications,
            t,
            property,
            max_count,
            oracle,
        } => run_mine(&transactions, &implications, t, property, max_count, oracle),
        Command::Bench {
            count,
            n,
            m,
            k,
            density,
            seed,
            mode,
            csv,
        } => run_bench(count, n, m, k, density, seed, mode, csv.as_deref()),
    }
}

fn names_of(inst: &DualInstance, set: &ElementSet) -> String {
    let mut names: Vec<String> = set.iter().map(|p| inst.poset.name(p)).collect();
    names.sort();
    if names.is_empty() {
        "∅".into()
    } else {
        names.join(" ")
    }
}

fn print_stats(res: &DualResult, micros: u128) {
    let v = res.stats.root_volume;
    println!("calls: {}", res.stats.calls);
    println!("depth: {}", res.stats.max_depth);
    println!("volume: {v}");
    if v >= 1 {
        if let Ok(c) = chi(v as f64) {
            println!("chi: {c:.6}");
        }
    }
    println!("micros: {micros}");
}

fn run_dual(file: &str, oracle: bool, trace: bool, seq: bool) -> Result<u8> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {file}"))?;
    let inst = parse_instance_report(&text)?;
    let opts = CheckOptions {
        parallel: !seq,
        trace,
    };
    let start = Instant::now();
    let res = check_dual(&inst, &opts);
    let micros = start.elapsed().as_micros();
    let code = match res.verdict.witness() {
        None => {
            println!("DUAL");
            EXIT_DUAL
        }
        Some(w) => {
            println!("NOT DUAL");
            println!("witness: {}", names_of(&inst, w));
            if !inst.verify_witness(w) {
                bail!("internal error: emitted witness fails verification");
            }
            EXIT_WITNESS
        }
    };
    print_stats(&res, micros);
    for entry in &res.trace {
        let children: Vec<String> =
            entry.child_volumes.iter().map(|v| v.to_string()).collect();
        println!(
            "trace: depth={} v={} branch={:?} children=[{}]",
            entry.depth,
            entry.volume,
            entry.branch,
            children.join(",")
        );
    }
    if oracle {
        let slow = brute_force_dual(&inst).context("brute-force oracle refused the instance")?;
        if slow.is_dual() == res.is_dual() {
            println!("oracle: agreed");
        } else {
            bail!(
                "oracle mismatch: engine says {}, brute force says {}",
                if res.is_dual() { "DUAL" } else { "NOT DUAL" },
                if slow.is_dual() { "DUAL" } else { "NOT DUAL" }
            );
        }
    }
    Ok(code)
}

fn parse_instance_report(text: &str) -> Result<DualInstance> {
    parse::parse_instance(text)
}

fn run_oracle(file: &str) -> Result<u8> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {file}"))?;
    let inst = parse_instance_report(&text)?;
    let start = Instant::now();
    let verdict = brute_force_dual(&inst)?;
    let micros = start.elapsed().as_micros();
    let code = match verdict.witness() {
        None => {
            println!("DUAL");
            EXIT_DUAL
        }
        Some(w) => {
            println!("NOT DUAL");
            println!("witness: {}", names_of(&inst, w));
            EXIT_WITNESS
        }
    };
    println!("micros: {micros}");
    Ok(code)
}

fn run_lattice_dual(file: &str, seq: bool) -> Result<u8> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {file}"))?;
    let input = parse::parse_lattice(&text)?;
    let opts = CheckOptions {
        parallel: !seq,
        trace: false,
    };
    let start = Instant::now();
    let verdict = lattice_dual(&input.map, &input.a_family, &input.b_family, &opts)?;
    let micros = start.elapsed().as_micros();
    let code = match verdict {
        LatticeVerdict::Dual => {
            println!("DUAL");
            EXIT_DUAL
        }
        LatticeVerdict::NotDual { witness } => {
            println!("NOT DUAL");
            let ids: Vec<String> = witness.iter().map(|x| x.to_string()).collect();
            println!("witness: {}", ids.join(" "));
            EXIT_WITNESS
        }
    };
    println!("micros: {micros}");
    Ok(code)
}

fn run_mine(
    transactions: &str,
    implications: &str,
    t: usize,
    property: PropertyKind,
    max_count: Option<usize>,
    oracle: bool,
) -> Result<u8> {
    let tr_text =
        fs::read_to_string(transactions).with_context(|| format!("reading {transactions}"))?;
    let im_text =
        fs::read_to_string(implications).with_context(|| format!("reading {implications}"))?;
    let input = parse::parse_mining(&tr_text, &im_text)?;
    let n = input.attributes.len();
    let pi: MonotoneProperty = match property {
        PropertyKind::Infrequent => {
            if t > input.db.rows.len() {
                bail!("threshold {t} exceeds the {} rows", input.db.rows.len());
            }
            property_infrequent(&input.db, t)
        }
        PropertyKind::RowCover => property_row_cover(&input.db, t),
        PropertyKind::Linear => property_linear(n, &[vec![1.0; n]], &[t as f64]),
    };
    let ap = &input.attribute_poset;
    let print_set = |s: &ElementSet| {
        let mut names: Vec<&str> = s.iter().map(|a| input.attributes[a].as_str()).collect();
        names.sort();
        if names.is_empty() {
            println!("∅");
        } else {
            println!("{}", names.join(" "));
        }
    };
    let mut found: Vec<ElementSet> = Vec::new();
    let stopped_early = loop {
        if max_count.is_some_and(|k| found.len() >= k) {
            break true;
        }
        match enum_inc(ap, &pi, &found)? {
            IncOutcome::Complete => break false,
            IncOutcome::NewMinimal(s) => {
                print_set(&s);
                found.push(s);
            }
        }
    };
    if oracle {
        let ideals = dualize_core::oracle::enumerate_ideals(&ap.poset)?;
        let sat: Vec<ElementSet> = ideals
            .iter()
            .filter(|i| pi.eval(&ap.expand(i)))
            .cloned()
            .collect();
        let mut want: Vec<ElementSet> = sat
            .iter()
            .filter(|i| !sat.iter().any(|j| j != *i && j.is_subset(i)))
            .map(|i| ap.expand(i))
            .collect();
        want.sort_by(|a, b| a.cmp_graded_lex(b));
        let mut got = found.clone();
        got.sort_by(|a, b| a.cmp_graded_lex(b));
        if stopped_early {
            let all_present = got.iter().all(|g| want.contains(g));
            if !all_present {
                bail!("oracle mismatch: an emitted set is not a minimal satisfying closed set");
            }
            println!("oracle: agreed (prefix)");
        } else if got == want {
            println!("oracle: agreed");
        } else {
            bail!(
                "oracle mismatch: emitted {} sets, brute force finds {}",
                got.len(),
                want.len()
            );
        }
    }
    Ok(if stopped_early { EXIT_WITNESS } else { EXIT_DUAL })
}

#[allow(clippy::too_many_arguments)]
fn run_bench(
    count: u64,
    n: usize,
    m: usize,
    k: usize,
    density: f64,
    seed: u64,
    mode: BenchMode,
    csv: Option<&str>,
) -> Result<u8> {
    let mut out = String::from("instance_id,n,m,k,v,chi_v,calls,bound,margin,verdict,micros\n");
    let mut violations = 0u64;
    for i in 0..count {
        let spec = GeneratorSpec {
            seed: seed + i,
            n,
            edge_density: density,
            num_ideals: m,
            num_filters: k,
            mode: mode.into(),
        };
        let inst = gen_instance(&spec)?;
        let start = Instant::now();
        let res = check_dual(
            &inst,
            &CheckOptions {
                parallel: true,
                trace: false,
            },
        );
        let micros = start.elapsed().as_micros();
        let v = res.stats.root_volume;
        let (chi_v, bound) = if v >= 1 {
            let c = chi(v as f64)?;
            (c, (v as f64).powf(c))
        } else {
            (f64::NAN, 1.0)
        };
        let margin = bound - res.stats.calls as f64;
        if (res.stats.calls as f64) > bound {
            violations += 1;
        }
        let verdict = if res.is_dual() { "dual" } else { "witness" };
        out.push_str(&format!(
            "{i},{n},{},{},{v},{chi_v:.6},{},{bound:.3},{margin:.3},{verdict},{micros}\n",
            inst.num_ideals(),
            inst.num_filters(),
            res.stats.calls
        ));
    }
    match csv {
        Some(path) => fs::write(path, &out).with_context(|| format!("writing {path}"))?,
        None => print!("{out}"),
    }
    if violations > 0 {
        bail!("{violations} instances exceeded the call-count bound");
    }
    eprintln!("bench: {count} instances, 0 bound violations");
    Ok(EXIT_DUAL)
}
