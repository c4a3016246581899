use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use log::info;
use vat_core::exact::{BranchAndBound, DEFAULT_NODE_CAP};
use vat_core::experiments::{self, Table1Spec, Table2Spec};
use vat_core::generators::{self, DegreeSequence, Family, GenSpec, WheelTopology};
use vat_core::heuristic::{optimize_vat, Branch, GaConfig};
use vat_core::measures::{self, BruteForce, MeasureKind, MeasureResult};
use vat_core::record::ResultRecord;
use vat_core::{Graph, VertexSet};

use crate::{
    AttackArgs, Cli, Command, ExactArgs, GenerateArgs, HeuristicArgs, MeasureArgs, Table1Args,
    Table2Args,
};

pub const EXIT_INPUT: u8 = 1;
pub const EXIT_TOO_LARGE: u8 = 2;
pub const EXIT_CHECK: u8 = 3;

/// Raised when `--check` finds a mismatch.
#[derive(Debug)]
pub struct CheckFailed(pub String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "check failed: {}", self.0)
    }
}

impl std::error::Error for CheckFailed {}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<CheckFailed>().is_some() {
        return EXIT_CHECK;
    }
    for cause in e.chain() {
        if let Some(vat_core::Error::TooLarge { .. }) = cause.downcast_ref::<vat_core::Error>() {
            return EXIT_TOO_LARGE;
        }
    }
    EXIT_INPUT
}

pub fn run(cli: Cli) -> Result<()> {
    if cli.threads == 0 {
        bail!("--threads must be at least 1");
    }
    // Ignore the error when a pool already exists (only possible in tests).
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global();
    match cli.command {
        Command::Generate(a) => generate(a),
        Command::Measure(a) => measure(a),
        Command::Exact(a) => exact(a, cli.threads),
        Command::Heuristic(a) => heuristic(a),
        Command::Table1(a) => table1(a),
        Command::Table2(a) => table2(a),
        Command::AttackReport(a) => attack_report(a),
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn graph_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "graph".into())
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn write_records(path: &Path, records: &[ResultRecord]) -> Result<()> {
    let mut text = String::new();
    for r in records {
        text.push_str(&serde_json::to_string(r)?);
        text.push('\n');
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn print_result(res: &MeasureResult) {
    println!(
        "{} = {} ({:.6}) witness {{{}}} solver {}{}",
        res.kind,
        res.value,
        res.value_f64(),
        join(&res.witness.labels()),
        res.solver,
        if res.exact { "" } else { " (upper bound)" }
    );
}

fn join(labels: &[usize]) -> String {
    labels.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn generate(a: GenerateArgs) -> Result<()> {
    let family: Family = a.family.parse()?;
    let need = |v: Option<usize>, flag: &str| v.with_context(|| format!("--{flag} is required for {family}"));
    let spec = match family {
        Family::Star => GenSpec::Star { n: need(a.n, "n")? },
        Family::Barbell10 => GenSpec::Barbell10,
        Family::BigBarbell => GenSpec::BigBarbell { k: need(a.k, "k")? },
        Family::Wheel10 => GenSpec::Wheel10(a.wheel.parse::<WheelTopology>()?),
        Family::Ba => GenSpec::Ba {
            n: need(a.n, "n")?,
            m: a.m,
            seed: a.seed,
        },
        Family::Plod => {
            let degrees = match (&a.degrees_from, a.degrees.is_empty()) {
                (Some(p), true) => DegreeSequence::of(&read_graph(p)?)?,
                (None, false) => DegreeSequence::new(a.degrees.clone())?,
                _ => bail!("plod needs exactly one of --degrees-from or --degrees"),
            };
            let out = generators::gen_plod_from_degrees(&degrees, a.seed, a.retries)?;
            if !out.connected {
                log::warn!("no connected realisation in {} attempts; writing the last one", out.attempts);
            }
            return write_out(a.out.as_deref(), &out.graph.to_edge_list());
        }
    };
    let g = spec.generate()?;
    write_out(a.out.as_deref(), &g.to_edge_list())
}

fn measure(a: MeasureArgs) -> Result<()> {
    let g = read_graph(&a.input)?;
    let kind: MeasureKind = a.measure.parse()?;
    let s = VertexSet::from_labels(g.node_count(), a.set.iter().copied())?;
    let value = measures::evaluate(&g, kind, &s)?;
    println!("{kind}({{{}}}) = {value} ({:.6})", join(&s.labels()), value_f64(value));
    if let Some(out) = a.out {
        let res = MeasureResult {
            kind,
            value,
            witness: s,
            exact: true,
            solver: measures::Solver::SetEvaluation,
        };
        fs::write(&out, ResultRecord::new(graph_id(&a.input), &res, 0).to_json())?;
    }
    Ok(())
}

fn value_f64(v: measures::Value) -> f64 {
    *v.numer() as f64 / *v.denom() as f64
}

fn exact(a: ExactArgs, threads: usize) -> Result<()> {
    let g = read_graph(&a.input)?;
    let kind: MeasureKind = a.measure.parse()?;
    let start = Instant::now();
    let res = if kind == MeasureKind::Vat && !a.brute_force {
        let bnb = BranchAndBound {
            cap: a.cap.unwrap_or(DEFAULT_NODE_CAP),
            threads,
            ..BranchAndBound::default()
        };
        let report = bnb.solve(&g)?;
        info!("branch-and-bound scored {} sets", report.evaluated);
        report.result
    } else {
        let bf = a.cap.map(BruteForce::with_cap).unwrap_or_default();
        bf.optimize(&g, kind)?
    };
    let ms = start.elapsed().as_millis() as u64;
    print_result(&res);
    if let Some(out) = a.out {
        fs::write(&out, ResultRecord::new(graph_id(&a.input), &res, ms).to_json())?;
    }
    Ok(())
}

fn heuristic(a: HeuristicArgs) -> Result<()> {
    let kind: MeasureKind = a.measure.parse()?;
    if kind != MeasureKind::Vat {
        bail!("the heuristic solver only optimises vat, not {kind}");
    }
    let g = read_graph(&a.input)?;
    let cfg = GaConfig {
        population: a.pop,
        generations: a.gens,
        crossover_prob: a.crossover,
        mutation_prob: a.mutation,
        tournament_size: a.tournament,
        seed: a.seed,
        log_every: a.log_every,
        ..GaConfig::default()
    };
    let start = Instant::now();
    let out = optimize_vat(&g, &cfg, a.cuts, a.max_j)?;
    let ms = start.elapsed().as_millis() as u64;
    print_result(&out.result);
    let branch = match out.branch {
        Branch::Genetic => "genetic".to_string(),
        Branch::Karger(i) => format!("contraction seed {i}"),
    };
    println!(
        "best from {branch}; genetic {}, contraction {}, failed seeds {}",
        out.genetic_value,
        out.karger_value.map_or("-".into(), |v| v.to_string()),
        out.seed_failures
    );
    if let Some(path) = a.out {
        let rec = ResultRecord::new(graph_id(&a.input), &out.result, ms)
            .with_seed(a.seed)
            .with_params(serde_json::json!({
                "population": a.pop,
                "generations": a.gens,
                "cuts": a.cuts,
                "max_j": a.max_j,
                "branch": branch,
            }));
        fs::write(&path, rec.to_json())?;
    }
    Ok(())
}

fn table1(a: Table1Args) -> Result<()> {
    let spec = Table1Spec {
        wheel: a.wheel.parse()?,
        include_fixtures: !a.no_fixtures,
        ..Table1Spec::default()
    };
    let table = experiments::run_table1(&spec)?;
    print!("{}", table.render());
    if let Some(path) = a.records {
        let recs: Vec<ResultRecord> = table.rows.iter().flat_map(|r| r.records.clone()).collect();
        write_records(&path, &recs)?;
    }
    if a.check {
        let misses = table.check_strict();
        for m in &misses {
            eprintln!(
                "{} {}: expected {} ± {}, got {}",
                m.graph,
                m.column,
                experiments::round_half_up(m.expected, 4),
                m.tolerance,
                m.actual.map_or("n/a".into(), |v| experiments::round_half_up(v, 4))
            );
        }
        if !misses.is_empty() {
            return Err(CheckFailed(format!("{} cells differ from the printed table", misses.len())).into());
        }
    }
    Ok(())
}

fn table2(a: Table2Args) -> Result<()> {
    let mut spec = if a.full { Table2Spec::full() } else { Table2Spec::default() };
    if !a.sizes.is_empty() {
        spec.sizes = a.sizes.clone();
    }
    if let Some(g) = a.gens {
        spec.generations = g;
    }
    spec.seeds = (0..a.seeds).collect();
    spec.cuts = a.cuts;
    spec.max_j = a.max_j;
    spec.m = a.m;
    let table = experiments::run_table2(&spec)?;
    print!("{}", table.render());
    if let Some(path) = a.records {
        let recs: Vec<ResultRecord> = table.rows.iter().flat_map(|r| r.records.clone()).collect();
        write_records(&path, &recs)?;
    }
    if a.check {
        let bad: Vec<usize> = table
            .rows
            .iter()
            .filter(|r| match (r.ba_median(), r.plod_median()) {
                (Some(b), Some(p)) => p < b,
                _ => true,
            })
            .map(|r| r.n)
            .collect();
        if !bad.is_empty() {
            return Err(CheckFailed(format!("random median below BA median for n = {bad:?}")).into());
        }
    }
    Ok(())
}

fn attack_report(a: AttackArgs) -> Result<()> {
    let g = read_graph(&a.input)?;
    let witness = if a.set.is_empty() {
        if g.node_count() <= DEFAULT_NODE_CAP {
            BranchAndBound::default().solve(&g)?.result.witness
        } else {
            let cfg = GaConfig {
                generations: a.gens,
                seed: a.seed,
                ..GaConfig::default()
            };
            optimize_vat(&g, &cfg, a.cuts, 2)?.result.witness
        }
    } else {
        VertexSet::from_labels(g.node_count(), a.set.iter().copied())?
    };
    let report = experiments::attack_report(&g, &graph_id(&a.input), &witness)?;
    report
        .write(&a.dot, &a.csv)
        .with_context(|| format!("writing {} / {}", a.dot.display(), a.csv.display()))?;
    println!(
        "attack {{{}}}: tau = {}, components {:?}",
        join(&report.witness.labels()),
        report.tau,
        report.component_sizes
    );
    Ok(())
}
