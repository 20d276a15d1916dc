//! Monte Carlo sweeps across one coordinate of `α`.

use rayon::prelude::*;
use serde::Serialize;

use crate::alpha::{AlphaEntry, AlphaVector};
use crate::collapse::{max_component_vertices, peel_complex};
use crate::complex::{sample_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::geometry::{build_embedding, random_configuration, with_degeneracy_retry, EmbedOptions};
use crate::radon_match::{has_radon_match, sample_radon_matches};
use crate::seed::derive_seed;
use crate::threshold::{classify, Classification};
use crate::Rational;

/// Which per-trial measurements to run. The 2-core peel always runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Measurements {
    pub core: bool,
    pub embed: bool,
    pub matches: bool,
    pub components: bool,
}

impl Measurements {
    pub fn all() -> Self {
        Self {
            core: true,
            embed: true,
            matches: true,
            components: true,
        }
    }

    /// Parses a comma list of `core-rate`, `embed-rate`, `match-rate`,
    /// `component-size` (or `all`).
    pub fn parse(list: &str) -> Result<Self> {
        let mut m = Self::default();
        for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok {
                "core-rate" | "core" => m.core = true,
                "embed-rate" | "embed" => m.embed = true,
                "match-rate" | "match" => m.matches = true,
                "component-size" | "components" => m.components = true,
                "all" => m = Self::all(),
                other => return Err(Error::Parse(format!("unknown measurement {other:?}"))),
            }
        }
        Ok(m)
    }
}

/// `steps` evenly spaced values from `start` to `stop` inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Grid {
    /// Parses `a:b:k`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Parse(format!("grid {s:?} is not of the form start:stop:steps"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let start = parts[0].trim().parse().map_err(|_| bad())?;
        let stop = parts[1].trim().parse().map_err(|_| bad())?;
        let steps = parts[2].trim().parse().map_err(|_| bad())?;
        Ok(Self { start, stop, steps })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let k = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                let v = (self.start * (k - i as f64) + self.stop * i as f64) / k;
                // snap to 12 decimals so 0.6:1.4:9 yields 0.8, not 0.7999999999999999
                (v * 1e12).round() / 1e12
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSpec {
    pub d: usize,
    pub n: usize,
    /// Template; coordinate `vary` is overwritten at each grid point.
    pub alpha: AlphaVector<f64>,
    /// 1-based index of the varying coordinate.
    pub vary: usize,
    pub grid: Grid,
    pub trials: usize,
    pub seed: u64,
    pub measurements: Measurements,
    pub dim_cap: usize,
    /// Random configurations tested per trial for `match-rate`.
    pub configs_per_trial: usize,
    /// Sampled subsets per trial for the match-count estimate; 0 disables it.
    pub match_samples: u64,
    pub coord_bound: u64,
}

impl SweepSpec {
    /// Defaults: `dim_cap = d + 1`, one configuration per trial, no sampled
    /// estimate, coordinates below `2^31`.
    pub fn new(d: usize, n: usize, alpha: AlphaVector<f64>, vary: usize, grid: Grid, trials: usize, seed: u64) -> Self {
        Self {
            d,
            n,
            alpha,
            vary,
            grid,
            trials,
            seed,
            measurements: Measurements {
                core: true,
                ..Measurements::default()
            },
            dim_cap: d + 1,
            configs_per_trial: 1,
            match_samples: 0,
            coord_bound: 1 << 31,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 || self.n == 0 {
            return Err(Error::pre("sweep needs d >= 1 and n >= 1"));
        }
        if self.grid.steps == 0 || self.trials == 0 {
            return Err(Error::pre("sweep needs steps >= 1 and trials >= 1"));
        }
        if self.vary == 0 || self.vary > self.dim_cap {
            return Err(Error::pre(format!(
                "varying coordinate {} is outside 1..={}",
                self.vary, self.dim_cap
            )));
        }
        if self.dim_cap < self.d {
            return Err(Error::pre("dim_cap must be at least d"));
        }
        if self.grid.values().iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::pre("grid values must be finite and nonnegative"));
        }
        if self.measurements.matches && self.configs_per_trial == 0 {
            return Err(Error::pre("match-rate needs at least one configuration per trial"));
        }
        Ok(())
    }

    pub fn alpha_at(&self, value: f64) -> Result<AlphaVector<f64>> {
        self.alpha.with_entry(self.vary, AlphaEntry::Finite(value))
    }
}

/// Outcome of one trial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub grid_index: usize,
    pub trial: usize,
    pub seed: u64,
    pub no_core: bool,
    /// `Some` when an embedding was attempted.
    pub embedded: Option<bool>,
    pub match_pairs: usize,
    pub match_hits: usize,
    pub match_estimate: Option<f64>,
    pub max_component_vertices: usize,
    pub errors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub trials: usize,
    pub no_core_rate: f64,
    /// Trials whose complex was certified embeddable (empty core, built and
    /// verified), over all trials.
    pub embed_success_rate: f64,
    /// Match-positive (trial, configuration) pairs over all pairs.
    pub match_rate: f64,
    pub mean_match_estimate: f64,
    pub max_component_vertices: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepOutput {
    pub spec: SweepSpec,
    pub classes: Vec<Classification>,
    pub rows: Vec<SweepRow>,
    pub trials: Vec<TrialRecord>,
}

/// Seed of trial `trial` at grid point `grid_index`.
pub fn trial_seed(master: u64, grid_index: usize, trial: usize) -> u64 {
    derive_seed(master, grid_index as u64, trial as u64)
}

fn run_trial(spec: &SweepSpec, alpha: &AlphaVector<f64>, grid_index: usize, trial: usize) -> TrialRecord {
    let seed = trial_seed(spec.seed, grid_index, trial);
    let mut rec = TrialRecord {
        grid_index,
        trial,
        seed,
        no_core: false,
        embedded: None,
        match_pairs: 0,
        match_hits: 0,
        match_estimate: None,
        max_component_vertices: 0,
        errors: Vec::new(),
    };
    let x: SimplicialComplex = match sample_complex(spec.n, alpha, spec.dim_cap, seed) {
        Ok(x) => x,
        Err(e) => {
            rec.errors.push(e.to_string());
            return rec;
        }
    };
    let d = spec.d;
    let peel = peel_complex(&x, d);
    rec.no_core = peel.core_is_empty();

    if spec.measurements.embed && rec.no_core {
        let opts = EmbedOptions::default();
        let pure = x.pure_part(d);
        let built = with_degeneracy_retry(derive_seed(seed, 1, 0), |s| {
            build_embedding::<Rational>(&pure, d, &peel, s, opts)
        });
        match built {
            Ok(_) => rec.embedded = Some(true),
            Err(e) => {
                rec.embedded = Some(false);
                rec.errors.push(e.to_string());
            }
        }
    }

    if spec.measurements.matches {
        for c in 0..spec.configs_per_trial {
            rec.match_pairs += 1;
            let outcome = with_degeneracy_retry(derive_seed(seed, 2, c as u64), |s| {
                let config = random_configuration::<Rational>(spec.n, 2 * d, spec.coord_bound, s)?;
                let hit = has_radon_match(&x, &config, d)?;
                let estimate = if c == 0 && spec.match_samples > 0 {
                    Some(sample_radon_matches(&x, &config, d, spec.match_samples, derive_seed(s, 3, 0))?.estimate)
                } else {
                    None
                };
                Ok((hit, estimate))
            });
            match outcome {
                Ok((hit, estimate)) => {
                    rec.match_hits += hit as usize;
                    if estimate.is_some() {
                        rec.match_estimate = estimate;
                    }
                }
                Err(e) => rec.errors.push(e.to_string()),
            }
        }
    }

    if spec.measurements.components {
        rec.max_component_vertices = max_component_vertices(&x, d);
    }
    rec
}

fn aggregate(alpha: f64, records: &[TrialRecord]) -> SweepRow {
    let trials = records.len();
    let frac = |k: usize, of: usize| if of == 0 { 0.0 } else { k as f64 / of as f64 };
    let no_core = records.iter().filter(|r| r.no_core).count();
    let embedded = records.iter().filter(|r| r.embedded == Some(true)).count();
    let pairs: usize = records.iter().map(|r| r.match_pairs).sum();
    let hits: usize = records.iter().map(|r| r.match_hits).sum();
    let estimates: Vec<f64> = records.iter().filter_map(|r| r.match_estimate).collect();
    let mean_estimate = if estimates.is_empty() {
        0.0
    } else {
        estimates.iter().sum::<f64>() / estimates.len() as f64
    };
    SweepRow {
        alpha,
        trials,
        no_core_rate: frac(no_core, trials),
        embed_success_rate: frac(embedded, trials),
        match_rate: frac(hits, pairs),
        mean_match_estimate: mean_estimate,
        max_component_vertices: records.iter().map(|r| r.max_component_vertices).max().unwrap_or(0),
    }
}

/// Runs every trial of every grid point on the current rayon pool. Output
/// order is grid index, then trial index, whatever the completion order.
/// Per-trial failures are recorded in the trial log, never propagated.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutput> {
    spec.validate()?;
    let values = spec.grid.values();
    let alphas = values.iter().map(|&v| spec.alpha_at(v)).collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(usize, usize)> = (0..values.len())
        .flat_map(|g| (0..spec.trials).map(move |t| (g, t)))
        .collect();
    let trials: Vec<TrialRecord> = jobs
        .par_iter()
        .map(|&(g, t)| run_trial(spec, &alphas[g], g, t))
        .collect();
    let rows = values
        .iter()
        .enumerate()
        .map(|(g, &v)| aggregate(v, &trials[g * spec.trials..(g + 1) * spec.trials]))
        .collect();
    let classes = alphas.iter().map(|a| classify(spec.d, a)).collect();
    Ok(SweepOutput {
        spec: spec.clone(),
        classes,
        rows,
        trials,
    })
}

/// Column order of the CSV output.
pub const CSV_HEADER: &str =
    "alpha,trials,no_core_rate,embed_success_rate,match_rate,mean_match_estimate,max_component_vertices";

/// Rows as CSV with [`CSV_HEADER`]. Floats use Rust's shortest round-trip
/// formatting, so output is byte-stable.
pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.alpha,
            r.trials,
            r.no_core_rate,
            r.embed_success_rate,
            r.match_rate,
            r.mean_match_estimate,
            r.max_component_vertices
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_values() {
        let g = Grid::parse("0.6:1.4:9").unwrap();
        let v = g.values();
        assert_eq!(v.len(), 9);
        assert!((v[4] - 1.0).abs() < 1e-12);
        assert_eq!(v[8], 1.4);
        assert_eq!(Grid::parse("2:3:1").unwrap().values(), vec![2.0]);
        assert!(Grid::parse("1:2").is_err());
    }

    #[test]
    fn measurement_parsing() {
        let m = Measurements::parse("core-rate,match-rate").unwrap();
        assert!(m.core && m.matches && !m.embed && !m.components);
        assert_eq!(Measurements::parse("all").unwrap(), Measurements::all());
        assert!(Measurements::parse("bogus").is_err());
    }

    #[test]
    fn invalid_specs() {
        let a: AlphaVector = "1".parse().unwrap();
        let g = Grid::parse("1:1:1").unwrap();
        let mut s = SweepSpec::new(1, 10, a.clone(), 1, g, 1, 0);
        s.trials = 0;
        assert!(run_sweep(&s).is_err());
        let s = SweepSpec::new(1, 10, a.clone(), 3, g, 1, 0);
        assert!(run_sweep(&s).is_err());
        let s = SweepSpec::new(
            1,
            10,
            a,
            1,
            Grid {
                start: -1.0,
                stop: 0.0,
                steps: 2,
            },
            1,
            0,
        );
        assert!(run_sweep(&s).is_err());
    }

    #[test]
    fn single_trial_is_reproducible() {
        let a: AlphaVector = "1".parse().unwrap();
        let mut s = SweepSpec::new(1, 40, a, 1, Grid::parse("0.9:0.9:1").unwrap(), 1, 7);
        s.measurements = Measurements::all();
        let x = run_sweep(&s).unwrap();
        let y = run_sweep(&s).unwrap();
        assert_eq!(x, y);
        assert_eq!(rows_to_csv(&x.rows), rows_to_csv(&y.rows));
    }

    #[test]
    fn sparse_rows_skip_matching_unless_requested() {
        let a: AlphaVector = "1.5".parse().unwrap();
        let s = SweepSpec::new(1, 50, a, 1, Grid::parse("1.5:1.5:1").unwrap(), 3, 1);
        let out = run_sweep(&s).unwrap();
        assert!(out.trials.iter().all(|t| t.match_pairs == 0 && t.embedded.is_none()));
        assert_eq!(out.classes, vec![Classification::Sparse]);
    }
}
