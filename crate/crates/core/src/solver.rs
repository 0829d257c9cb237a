//! End-to-end solvers combining the techniques.
//!
//! * 2D ranges: small-LIS tables of depth `tau` plus stitching with rate
//!   `c ln n / tau`. Every query is exact when its answer is at most `tau` and
//!   exact with high probability otherwise.
//! * Colored, 1D ranges: colors of at most `delta` points go to the light
//!   index; every heavy color gets its own small/large pair with
//!   `tau_c = ceil(sqrt(|P_c|))`.
//! * Colored, 2D ranges: light index for the light colors; one small/large
//!   pair over the heavy colors with a shared `tau`.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::instance::{ColorId, Instance, LisAnswer, PointClass, Query, RankBox};
use crate::large_lis::{answer_streaming, sample_stitching_set, DEFAULT_C};
use crate::light_colors::{LightColorIndex, LightMode};
use crate::oracle::{oracle_box, oracle_colored_box};
use crate::small_lis::{ColoredSmallLis, SmallLisIndex};
use crate::{par, rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Problem {
    Range2d,
    Colored1d,
    Colored2d,
}

impl Problem {
    pub fn is_colored(self) -> bool {
        self != Problem::Range2d
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2d" => Ok(Problem::Range2d),
            "colored1d" => Ok(Problem::Colored1d),
            "colored2d" => Ok(Problem::Colored2d),
            _ => Err(Error::Parse(format!("unknown problem {s:?} (expected 2d, colored1d or colored2d)"))),
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Range2d => "2d",
            Problem::Colored1d => "colored1d",
            Problem::Colored2d => "colored2d",
        })
    }
}

/// Which techniques may contribute answers. `oracle` overrides the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Techniques {
    pub small: bool,
    pub large: bool,
    pub light: bool,
    pub oracle: bool,
}

impl Default for Techniques {
    fn default() -> Self {
        Techniques {
            small: true,
            large: true,
            light: true,
            oracle: false,
        }
    }
}

impl FromStr for Techniques {
    type Err = Error;

    /// Comma-separated names, e.g. `small,large`; `all` is the default set.
    fn from_str(s: &str) -> Result<Self> {
        let mut t = Techniques {
            small: false,
            large: false,
            light: false,
            oracle: false,
        };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "small" => t.small = true,
                "large" => t.large = true,
                "light" => t.light = true,
                "oracle" => t.oracle = true,
                "all" => t = Techniques { oracle: t.oracle, ..Techniques::default() },
                _ => return Err(Error::Parse(format!("unknown technique {part:?}"))),
            }
        }
        if !(t.small || t.large || t.light || t.oracle) {
            return Err(Error::Parse("empty technique list".into()));
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub tau: Option<usize>,
    pub delta: Option<usize>,
    pub c: f64,
    pub seed: u64,
    pub techniques: Techniques,
    /// Worker threads for build and query; `None` uses every core.
    pub workers: Option<usize>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tau: None,
            delta: None,
            c: DEFAULT_C,
            seed: 0,
            techniques: Techniques::default(),
            workers: None,
        }
    }
}

/// Technique that produced an answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Technique {
    Small,
    Light,
    Large,
    Oracle,
    /// No technique found anything.
    None,
}

impl Technique {
    pub fn as_str(self) -> &'static str {
        match self {
            Technique::Small => "small",
            Technique::Light => "light",
            Technique::Large => "large",
            Technique::Oracle => "oracle",
            Technique::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solved {
    pub answer: LisAnswer,
    pub technique: Technique,
}

/// Parameters after defaults are applied.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolvedParams {
    pub tau: usize,
    pub delta: Option<usize>,
    pub light: Vec<ColorId>,
    pub heavy: Vec<ColorId>,
    /// Every query whose optimum is at most this long is answered exactly
    /// regardless of the random sample.
    pub exact_up_to: usize,
    pub sample_size: usize,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub results: Vec<Solved>,
    pub params: ResolvedParams,
    pub build: Duration,
    pub query: Duration,
}

pub fn default_tau(problem: Problem, n: usize) -> usize {
    match problem {
        Problem::Range2d | Problem::Colored1d => ceil_root(n, 2),
        Problem::Colored2d => ceil_root(n, 3),
    }
}

pub fn default_delta(problem: Problem, n: usize) -> usize {
    match problem {
        Problem::Range2d | Problem::Colored1d => ceil_root(n, 2),
        // ceil(n^(2/3)) = ceil(cbrt(n^2)), computed exactly
        Problem::Colored2d => ceil_root(n * n, 3),
    }
}

/// Smallest `r` with `r^k >= n`.
fn ceil_root(n: usize, k: u32) -> usize {
    let mut r = (n as f64).powf(1.0 / k as f64).round() as usize;
    while r > 0 && (r - 1).pow(k) >= n {
        r -= 1;
    }
    while r.pow(k) < n {
        r += 1;
    }
    r
}

/// Colors with at most `delta` points are light, the rest heavy.
pub fn partition_light_heavy(instance: &Instance, delta: usize) -> (Vec<ColorId>, Vec<ColorId>) {
    let (light, heavy): (Vec<ColorId>, Vec<ColorId>) = (0..instance.color_count() as ColorId)
        .partition(|&c| instance.color_class(c).len() <= delta);
    debug_assert!(delta == 0 || heavy.len() <= instance.len() / delta);
    (light, heavy)
}

/// Pick the longer candidate; on a tie the earlier technique stays.
fn offer(best: &mut Solved, cand: LisAnswer, technique: Technique) {
    if cand.length > best.answer.length {
        *best = Solved {
            answer: cand,
            technique,
        };
    }
}

/// Boxes the stitching pass still has to see. A small-LIS answer shorter than
/// its table depth is already optimal: any longer optimum would have made it
/// reach the depth.
fn unsettled(boxes: &[Option<RankBox>], small: Option<&[LisAnswer]>, tau: usize) -> Vec<Option<RankBox>> {
    match small {
        None => boxes.to_vec(),
        Some(ans) => boxes
            .iter()
            .zip(ans)
            .map(|(b, a)| b.filter(|_| a.length >= tau))
            .collect(),
    }
}

fn empty_results(m: usize) -> Vec<Solved> {
    vec![
        Solved {
            answer: LisAnswer::empty(),
            technique: Technique::None,
        };
        m
    ]
}

fn require_positive(name: &str, v: Option<usize>) -> Result<()> {
    if v == Some(0) {
        return Err(Error::ContractViolation(format!("{name} must be positive")));
    }
    Ok(())
}

/// Solve a batch of queries. Results are in query order.
pub fn solve(instance: &Instance, queries: &[Query], problem: Problem, config: &SolverConfig) -> Result<SolveReport> {
    require_positive("tau", config.tau)?;
    require_positive("delta", config.delta)?;
    if !(config.c >= 0.0 && config.c.is_finite()) {
        return Err(Error::ContractViolation(format!("sampling constant c = {} must be non-negative", config.c)));
    }
    if problem.is_colored() && !instance.is_colored() {
        return Err(Error::ContractViolation(format!("problem {problem} needs a colored instance")));
    }
    if problem == Problem::Colored1d {
        if let Some(q) = queries.iter().find(|q| !q.is_1d()) {
            return Err(Error::ContractViolation(format!(
                "query {} has value bounds; colored1d takes index ranges only",
                q.id
            )));
        }
    }
    let boxes = queries
        .iter()
        .map(|q| instance.rank_box(q))
        .collect::<Result<Vec<Option<RankBox>>>>()?;
    par::with_workers(config.workers, || match problem {
        Problem::Range2d => solve_2d(instance, &boxes, config),
        Problem::Colored1d => solve_c1d(instance, &boxes, config),
        Problem::Colored2d => solve_c2d(instance, &boxes, config),
    })
}

pub fn solve_2d_range_lis(instance: &Instance, queries: &[Query], config: &SolverConfig) -> Result<SolveReport> {
    solve(instance, queries, Problem::Range2d, config)
}

pub fn solve_colored_1d(instance: &Instance, queries: &[Query], config: &SolverConfig) -> Result<SolveReport> {
    solve(instance, queries, Problem::Colored1d, config)
}

pub fn solve_colored_2d(instance: &Instance, queries: &[Query], config: &SolverConfig) -> Result<SolveReport> {
    solve(instance, queries, Problem::Colored2d, config)
}

fn solve_oracle(instance: &Instance, boxes: &[Option<RankBox>], colored: bool) -> Vec<Solved> {
    par::map(boxes, |b| {
        let answer = if colored {
            oracle_colored_box(instance, b.as_ref()).answer
        } else {
            oracle_box(instance, b.as_ref())
        };
        Solved {
            answer,
            technique: Technique::Oracle,
        }
    })
}

fn solve_2d(instance: &Instance, boxes: &[Option<RankBox>], config: &SolverConfig) -> Result<SolveReport> {
    let n = instance.len();
    let t = config.techniques;
    let tau = config.tau.unwrap_or_else(|| default_tau(Problem::Range2d, n));
    let mut params = ResolvedParams {
        tau,
        delta: None,
        light: Vec::new(),
        heavy: Vec::new(),
        exact_up_to: if t.small { tau } else { 0 },
        sample_size: 0,
    };
    if t.oracle {
        params.exact_up_to = usize::MAX;
        let start = Instant::now();
        let results = solve_oracle(instance, boxes, false);
        return Ok(SolveReport {
            results,
            params,
            build: Duration::ZERO,
            query: start.elapsed(),
        });
    }

    let classes = [instance.all_points()];
    let start = Instant::now();
    let small = t.small.then(|| SmallLisIndex::build(classes[0], tau));
    let sample = t.large.then(|| sample_stitching_set(&classes, n, tau, config.c, config.seed));
    params.sample_size = sample.as_ref().map_or(0, |s| s.len());
    let build = start.elapsed();

    let start = Instant::now();
    let mut results = empty_results(boxes.len());
    let small_ans = small.as_ref().map(|idx| idx.query_batch(boxes));
    if let Some(ans) = &small_ans {
        for (r, a) in results.iter_mut().zip(ans) {
            offer(r, a.clone(), Technique::Small);
        }
    }
    if let Some(s) = &sample {
        let open = unsettled(boxes, small_ans.as_deref(), tau);
        for (r, a) in results.iter_mut().zip(answer_streaming(&classes, s, &open)) {
            offer(r, a, Technique::Large);
        }
    }
    Ok(SolveReport {
        results,
        params,
        build,
        query: start.elapsed(),
    })
}

fn solve_c1d(instance: &Instance, boxes: &[Option<RankBox>], config: &SolverConfig) -> Result<SolveReport> {
    let n = instance.len();
    let t = config.techniques;
    let delta = config.delta.unwrap_or_else(|| default_delta(Problem::Colored1d, n));
    let (light, heavy) = if t.light {
        partition_light_heavy(instance, delta)
    } else {
        (Vec::new(), (0..instance.color_count() as ColorId).collect())
    };
    let taus: Vec<usize> = heavy
        .iter()
        .map(|&c| config.tau.unwrap_or_else(|| ceil_root(instance.color_class(c).len(), 2)))
        .collect();
    let min_tau = taus.iter().copied().min();
    let mut params = ResolvedParams {
        tau: min_tau.unwrap_or(0),
        delta: Some(delta),
        light: light.clone(),
        heavy: heavy.clone(),
        exact_up_to: match (t.small, min_tau) {
            (_, None) => usize::MAX,
            (true, Some(m)) => m,
            (false, Some(_)) => 0,
        },
        sample_size: 0,
    };
    if t.oracle {
        params.exact_up_to = usize::MAX;
        let start = Instant::now();
        let results = solve_oracle(instance, boxes, true);
        return Ok(SolveReport {
            results,
            params,
            build: Duration::ZERO,
            query: start.elapsed(),
        });
    }

    let start = Instant::now();
    let heavy_classes: Vec<PointClass<'_>> = heavy.iter().map(|&c| instance.class(c)).collect();
    let light_idx = if t.light && !light.is_empty() {
        Some(LightColorIndex::build(instance, &light, delta, LightMode::Interval)?)
    } else {
        None
    };
    let small = t.small.then(|| ColoredSmallLis::build(&heavy_classes, &taus));
    let samples: Vec<_> = if t.large {
        heavy_classes
            .iter()
            .zip(&taus)
            .map(|(cls, &tau)| {
                let seed = rng::derive(config.seed, &format!("stitching/color/{}", cls.color.unwrap()));
                sample_stitching_set(std::slice::from_ref(cls), cls.points.len(), tau, config.c, seed)
            })
            .collect()
    } else {
        Vec::new()
    };
    params.sample_size = samples.iter().map(|s| s.len()).sum();
    let build = start.elapsed();

    let start = Instant::now();
    let mut results = empty_results(boxes.len());
    // per heavy color, so each color's own depth decides what is settled
    let per_color_small: Vec<Vec<LisAnswer>> = small
        .as_ref()
        .map_or_else(Vec::new, |idx| idx.indexes().iter().map(|i| i.query_batch(boxes)).collect());
    for ans in &per_color_small {
        for (r, a) in results.iter_mut().zip(ans) {
            offer(r, a.clone(), Technique::Small);
        }
    }
    if let Some(idx) = &light_idx {
        for (r, a) in results.iter_mut().zip(idx.query_batch(boxes)?) {
            offer(r, a, Technique::Light);
        }
    }
    for (k, (cls, s)) in heavy_classes.iter().zip(&samples).enumerate() {
        let open = unsettled(boxes, per_color_small.get(k).map(Vec::as_slice), taus[k]);
        for (r, a) in results.iter_mut().zip(answer_streaming(std::slice::from_ref(cls), s, &open)) {
            offer(r, a, Technique::Large);
        }
    }
    Ok(SolveReport {
        results,
        params,
        build,
        query: start.elapsed(),
    })
}

fn solve_c2d(instance: &Instance, boxes: &[Option<RankBox>], config: &SolverConfig) -> Result<SolveReport> {
    let n = instance.len();
    let t = config.techniques;
    let tau = config.tau.unwrap_or_else(|| default_tau(Problem::Colored2d, n));
    let delta = config.delta.unwrap_or_else(|| default_delta(Problem::Colored2d, n));
    let (light, heavy) = if t.light {
        partition_light_heavy(instance, delta)
    } else {
        (Vec::new(), (0..instance.color_count() as ColorId).collect())
    };
    let mut params = ResolvedParams {
        tau,
        delta: Some(delta),
        light: light.clone(),
        heavy: heavy.clone(),
        exact_up_to: if heavy.is_empty() {
            usize::MAX
        } else if t.small {
            tau
        } else {
            0
        },
        sample_size: 0,
    };
    if t.oracle {
        params.exact_up_to = usize::MAX;
        let start = Instant::now();
        let results = solve_oracle(instance, boxes, true);
        return Ok(SolveReport {
            results,
            params,
            build: Duration::ZERO,
            query: start.elapsed(),
        });
    }

    let start = Instant::now();
    let heavy_classes: Vec<PointClass<'_>> = heavy.iter().map(|&c| instance.class(c)).collect();
    let light_idx = if t.light && !light.is_empty() {
        Some(LightColorIndex::build(instance, &light, delta, LightMode::Rectangle)?)
    } else {
        None
    };
    let small = t
        .small
        .then(|| ColoredSmallLis::build(&heavy_classes, &vec![tau; heavy_classes.len()]));
    let sample = t
        .large
        .then(|| sample_stitching_set(&heavy_classes, n, tau, config.c, config.seed));
    params.sample_size = sample.as_ref().map_or(0, |s| s.len());
    let build = start.elapsed();

    let start = Instant::now();
    let mut results = empty_results(boxes.len());
    let small_ans = small.as_ref().map(|idx| idx.query_batch(boxes));
    if let Some(ans) = &small_ans {
        for (r, a) in results.iter_mut().zip(ans) {
            offer(r, a.clone(), Technique::Small);
        }
    }
    if let Some(idx) = &light_idx {
        for (r, a) in results.iter_mut().zip(idx.query_batch(boxes)?) {
            offer(r, a, Technique::Light);
        }
    }
    if let Some(s) = &sample {
        // the small answer is the best heavy color; below tau every heavy color is settled
        let open = unsettled(boxes, small_ans.as_deref(), tau);
        for (r, a) in results.iter_mut().zip(answer_streaming(&heavy_classes, s, &open)) {
            offer(r, a, Technique::Large);
        }
    }
    Ok(SolveReport {
        results,
        params,
        build,
        query: start.elapsed(),
    })
}
