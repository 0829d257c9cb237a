use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use super::format::{result_record, write_jsonl, InstanceFile, Loaded};
use super::gen::{generate, Distribution, GenParams, QueryKind};
use super::{BenchArgs, GenArgs, SolveArgs, VerifyArgs};
use crate::error::{Error, Result};
use crate::oracle::{oracle_box, oracle_colored_box};
use crate::solver::{solve as run_solver, default_tau, Problem, SolverConfig, Techniques};
use crate::{rng, TieMode};

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn gen(a: &GenArgs) -> Result<()> {
    let file = generate(&GenParams {
        n: a.n,
        m: a.m,
        kind: a.query_kind,
        colors: a.colors,
        distribution: a.distribution,
        seed: a.seed,
    })?;
    let mut out = output(a.out.as_deref())?;
    serde_json::to_writer(&mut out, &file).map_err(|e| Error::Io(e.into()))?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

fn load(path: &Path, ties: TieMode) -> Result<Loaded> {
    InstanceFile::read(path)?.into_loaded(ties)
}

pub fn solve(a: &SolveArgs) -> Result<()> {
    let problem = a.solver.problem()?;
    let config = a.solver.config()?;
    let loaded = load(&a.instance, a.solver.ties())?;
    let report = run_solver(&loaded.instance, &loaded.queries, problem, &config)?;
    // amortized over the batch
    let per_query = report.query.as_secs_f64() * 1e6 / loaded.queries.len().max(1) as f64;
    let out = output(a.out.as_deref())?;
    write_jsonl(
        out,
        report
            .results
            .iter()
            .enumerate()
            .map(|(i, s)| result_record(&loaded, i, s, per_query)),
    )
}

/// Mismatch counts from `verify`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifySummary {
    pub checked: usize,
    /// Wrong length on a query the configuration must answer exactly.
    pub hard_mismatches: usize,
    /// Wrong length on a query only covered with high probability.
    pub probabilistic_mismatches: usize,
    /// Answers that are not a valid increasing subsequence inside the query.
    pub unsound: usize,
}

impl VerifySummary {
    pub fn hard(&self) -> usize {
        self.hard_mismatches + self.unsound
    }
}

/// Run the solver for `trials` derived seeds and compare against the oracle.
pub fn verify_loaded(
    loaded: &Loaded,
    problem: Problem,
    base: &SolverConfig,
    trials: usize,
    mut log: impl Write,
) -> Result<VerifySummary> {
    let inst = &loaded.instance;
    let boxes = loaded
        .queries
        .iter()
        .map(|q| inst.rank_box(q))
        .collect::<Result<Vec<_>>>()?;
    let truth: Vec<usize> = boxes
        .iter()
        .map(|b| {
            if problem.is_colored() {
                oracle_colored_box(inst, b.as_ref()).answer.length
            } else {
                oracle_box(inst, b.as_ref()).length
            }
        })
        .collect();
    let mut s = VerifySummary::default();
    for t in 0..trials {
        let config = SolverConfig {
            seed: rng::derive(base.seed, &format!("verify/trial/{t}")),
            ..base.clone()
        };
        let report = run_solver(inst, &loaded.queries, problem, &config)?;
        let limit = report.params.exact_up_to;
        for (i, solved) in report.results.iter().enumerate() {
            s.checked += 1;
            let id = &loaded.ids[i];
            if let Err(why) = solved.answer.check(inst, boxes[i].as_ref()) {
                s.unsound += 1;
                writeln!(log, "trial {t} query {id}: unsound answer: {why}")?;
                continue;
            }
            let (got, want) = (solved.answer.length, truth[i]);
            if got != want {
                let kind = if want <= limit {
                    s.hard_mismatches += 1;
                    "hard"
                } else {
                    s.probabilistic_mismatches += 1;
                    "probabilistic"
                };
                writeln!(log, "trial {t} query {id}: {kind} mismatch, got {got}, oracle {want}")?;
            }
        }
    }
    Ok(s)
}

pub fn verify(a: &VerifyArgs) -> Result<VerifySummary> {
    let problem = a.solver.problem()?;
    let config = a.solver.config()?;
    let loaded = load(&a.instance, a.solver.ties())?;
    let stdout = io::stdout();
    let s = verify_loaded(&loaded, problem, &config, a.trials, stdout.lock())?;
    println!(
        "checked {} answers over {} trials: {} hard mismatches, {} probabilistic mismatches, {} unsound",
        s.checked, a.trials, s.hard_mismatches, s.probabilistic_mismatches, s.unsound
    );
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub build_ms: f64,
    pub query_ms: f64,
    /// Total reported output size.
    pub k: usize,
}

impl BenchRow {
    pub fn total_ms(&self) -> f64 {
        self.build_ms + self.query_ms
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

pub fn bench_rows(a: &BenchArgs) -> Result<Vec<BenchRow>> {
    let problem: Problem = a.problem.parse()?;
    if a.sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parse("--sizes must be strictly ascending".into()));
    }
    if a.repetitions == 0 {
        return Err(Error::Parse("--repetitions must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for &n in &a.sizes {
        let m = a.m.unwrap_or(n);
        let colors = problem
            .is_colored()
            .then(|| a.colors.unwrap_or_else(|| default_tau(Problem::Range2d, n)));
        let file = generate(&GenParams {
            n,
            m,
            kind: if problem == Problem::Colored1d { QueryKind::OneD } else { QueryKind::TwoD },
            colors,
            distribution: Distribution::Uniform,
            seed: rng::derive(a.seed, &format!("bench/{n}")),
        })?;
        let loaded = file.into_loaded(TieMode::Reject)?;
        let config = SolverConfig {
            c: a.c,
            seed: a.seed,
            techniques: Techniques::default(),
            workers: a.workers,
            ..SolverConfig::default()
        };
        let (mut build, mut query) = (Vec::new(), Vec::new());
        let mut k = 0;
        for _ in 0..a.repetitions {
            let r = run_solver(&loaded.instance, &loaded.queries, problem, &config)?;
            build.push(r.build.as_secs_f64() * 1e3);
            query.push(r.query.as_secs_f64() * 1e3);
            k = r.results.iter().map(|s| s.answer.length).sum();
        }
        rows.push(BenchRow {
            n,
            m,
            build_ms: median(build),
            query_ms: median(query),
            k,
        });
    }
    Ok(rows)
}

pub fn bench(a: &BenchArgs) -> Result<()> {
    let rows = bench_rows(a)?;
    let mut out = io::stdout().lock();
    writeln!(out, "n,m,build_ms,query_ms,k")?;
    for r in rows {
        writeln!(out, "{},{},{:.3},{:.3},{}", r.n, r.m, r.build_ms, r.query_ms, r.k)?;
    }
    Ok(())
}
