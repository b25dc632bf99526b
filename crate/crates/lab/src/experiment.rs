//! Monte Carlo experiments over many seeded process runs.
//!
//! Trial `i` at size `n` uses the seed `trial_seed(master_seed, n, i)`.
//! Trials run independently on a worker pool; results are sorted by
//! `(n, trial)` before aggregation so every output is a deterministic
//! function of the configuration.

use std::fs;
use std::path::{Path, PathBuf};

use homconn_core::process::{
    default_m_cap, hitting_times, lm_threshold, run_process_with_table, BirthTimeTable,
};
use homconn_core::stats::{
    mean_and_stderr, nearest_rank, quartiles, threshold_statistic, trial_seed, Quartiles,
};
use homconn_core::HittingTimes;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::format::{fmt_real, sig6, trials_csv};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n_list: Vec<u32>,
    pub trials: u64,
    #[serde(default)]
    pub master_seed: u64,
    /// Overrides the default cap for every `n` (clipped to `C(n,3)`).
    #[serde(default)]
    pub m_cap: Option<u64>,
    #[serde(default = "default_out_dir")]
    pub out_dir: PathBuf,
    /// Worker threads; all available cores when absent.
    #[serde(default)]
    pub workers: Option<usize>,
    /// Also measure the Linial–Meshulam threshold on each trial's table.
    #[serde(default)]
    pub lm_compare: bool,
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("out")
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(LabError::Usage("trials must be at least 1".into()));
        }
        if self.n_list.is_empty() {
            return Err(LabError::Usage("at least one n is required".into()));
        }
        if let Some(&n) = self.n_list.iter().find(|&&n| n < 3) {
            return Err(LabError::Usage(format!(
                "process experiments need n >= 3, got {n}"
            )));
        }
        Ok(())
    }

    pub fn cap_for(&self, n: u32) -> u64 {
        let total = homconn_core::choose(u64::from(n), 3);
        self.m_cap
            .map_or_else(|| default_m_cap(n), |m| m.min(total))
    }
}

/// Outcome of one seeded process run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub n: u32,
    pub trial: u64,
    pub seed: u64,
    pub times: HittingTimes,
    pub coincide_iso_t: bool,
    pub coincide_m_h: bool,
    /// `6 m_M / n² − ln n − ½ ln ln n`, defined when `m_M` is.
    pub t_stat: Option<f64>,
    /// Linial–Meshulam threshold step and birth time on the same table.
    pub lm: Option<(u64, f64)>,
}

impl TrialSummary {
    pub fn from_times(n: u32, trial: u64, times: HittingTimes) -> Self {
        let both = |a: Option<u64>, b: Option<u64>| a.is_some() && a == b;
        Self {
            n,
            trial,
            seed: times.seed,
            coincide_iso_t: both(times.m_iso, times.m_t),
            coincide_m_h: both(times.m_m, times.m_h),
            t_stat: times.m_m.map(|m| threshold_statistic(n, m)),
            times,
            lm: None,
        }
    }

    /// Linial–Meshulam threshold over the downward-closure stable point,
    /// both as birth times on the shared table.
    pub fn lm_ratio(&self) -> Option<f64> {
        let (_, p_lm) = self.lm?;
        Some(p_lm / self.times.p_h?)
    }
}

pub fn run_trial(
    n: u32,
    trial: u64,
    master_seed: u64,
    m_cap: u64,
    lm_compare: bool,
) -> Result<TrialSummary> {
    let seed = trial_seed(master_seed, n, trial);
    let table = BirthTimeTable::new(n, seed);
    let trace = run_process_with_table(&table, m_cap)?;
    let mut summary = TrialSummary::from_times(n, trial, hitting_times(&trace));
    if lm_compare {
        summary.lm = lm_threshold(&table);
    }
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub n: u32,
    pub trial: u64,
    pub error: String,
}

/// Statistics for one `n`. Rates are over all successful trials, with an
/// undefined time counting as non-coincident.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeAggregate {
    pub n: u32,
    pub m_cap: u64,
    pub trials: usize,
    pub m_iso: Option<Quartiles<u64>>,
    #[serde(rename = "m_T")]
    pub m_t: Option<Quartiles<u64>>,
    #[serde(rename = "m_M")]
    pub m_m: Option<Quartiles<u64>>,
    #[serde(rename = "m_H")]
    pub m_h: Option<Quartiles<u64>>,
    #[serde(rename = "p_M")]
    pub p_m: Option<Quartiles<f64>>,
    pub rate_iso_t: f64,
    pub rate_m_h: f64,
    /// Runs where `m_iso <= m_T` (always all of them).
    pub iso_before_t: usize,
    #[serde(rename = "T_mean")]
    pub t_mean: Option<f64>,
    #[serde(rename = "T_median")]
    pub t_median: Option<f64>,
    /// Trials excluded from the `T` statistic because `m_M` is undefined.
    pub m_m_undefined: usize,
    pub m_at_cap: usize,
    pub not_stabilized: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lm_ratio: Option<Quartiles<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub master_seed: u64,
    pub per_n: Vec<SizeAggregate>,
    pub failures: Vec<TrialFailure>,
}

fn rounded(q: Option<Quartiles<f64>>) -> Option<Quartiles<f64>> {
    q.map(|q| Quartiles {
        q25: sig6(q.q25),
        median: sig6(q.median),
        q75: sig6(q.q75),
    })
}

pub fn aggregate_size(n: u32, m_cap: u64, trials: &[TrialSummary]) -> SizeAggregate {
    let collect = |f: fn(&HittingTimes) -> Option<u64>| -> Vec<u64> {
        trials.iter().filter_map(|s| f(&s.times)).collect()
    };
    let p_m: Vec<f64> = trials.iter().filter_map(|s| s.times.p_m).collect();
    let t: Vec<f64> = trials.iter().filter_map(|s| s.t_stat).collect();
    let lm: Vec<f64> = trials.iter().filter_map(TrialSummary::lm_ratio).collect();
    let count = trials.len();
    let rate = |pred: fn(&TrialSummary) -> bool| {
        if count == 0 {
            0.0
        } else {
            sig6(trials.iter().filter(|s| pred(s)).count() as f64 / count as f64)
        }
    };
    SizeAggregate {
        n,
        m_cap,
        trials: count,
        m_iso: quartiles(&collect(|h| h.m_iso)),
        m_t: quartiles(&collect(|h| h.m_t)),
        m_m: quartiles(&collect(|h| h.m_m)),
        m_h: quartiles(&collect(|h| h.m_h)),
        p_m: rounded(quartiles(&p_m)),
        rate_iso_t: rate(|s| s.coincide_iso_t),
        rate_m_h: rate(|s| s.coincide_m_h),
        iso_before_t: trials
            .iter()
            .filter(|s| matches!((s.times.m_iso, s.times.m_t), (Some(a), Some(b)) if a <= b))
            .count(),
        t_mean: (!t.is_empty()).then(|| sig6(mean_and_stderr(&t).0)),
        t_median: nearest_rank(&t, 0.5).map(sig6),
        m_m_undefined: count - t.len(),
        m_at_cap: trials.iter().filter(|s| s.times.m_at_cap).count(),
        not_stabilized: trials.iter().filter(|s| !s.times.stabilized).count(),
        lm_ratio: rounded(quartiles(&lm)),
    }
}

pub struct ExperimentOutcome {
    pub trials: Vec<TrialSummary>,
    pub report: AggregateReport,
}

fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        builder = builder.num_threads(w);
    }
    builder
        .build()
        .map_err(|e| LabError::Usage(format!("cannot start worker pool: {e}")))
}

/// Runs every trial and aggregates, without touching the filesystem.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome> {
    config.validate()?;
    let jobs: Vec<(u32, u64)> = config
        .n_list
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |i| (n, i)))
        .collect();
    let results: Vec<(u32, u64, Result<TrialSummary>)> = pool(config.workers)?.install(|| {
        jobs.par_iter()
            .map(|&(n, i)| {
                (
                    n,
                    i,
                    run_trial(
                        n,
                        i,
                        config.master_seed,
                        config.cap_for(n),
                        config.lm_compare,
                    ),
                )
            })
            .collect()
    });
    let mut trials = Vec::new();
    let mut failures = Vec::new();
    for (n, trial, r) in results {
        match r {
            Ok(s) => trials.push(s),
            Err(e) => failures.push(TrialFailure {
                n,
                trial,
                error: e.to_string(),
            }),
        }
    }
    trials.sort_by_key(|s| (s.n, s.trial));
    let mut sizes: Vec<u32> = config.n_list.clone();
    sizes.sort_unstable();
    sizes.dedup();
    let per_n = sizes
        .iter()
        .map(|&n| {
            let of_n: Vec<TrialSummary> = trials.iter().filter(|s| s.n == n).cloned().collect();
            aggregate_size(n, config.cap_for(n), &of_n)
        })
        .collect();
    Ok(ExperimentOutcome {
        trials,
        report: AggregateReport {
            master_seed: config.master_seed,
            per_n,
            failures,
        },
    })
}

pub const LM_HEADER: &str = "n,trial,seed,m_LM,p_LM,m_H,p_H,ratio";

pub fn lm_csv(trials: &[TrialSummary]) -> String {
    let mut out = String::from(LM_HEADER);
    out.push('\n');
    for s in trials {
        let (m_lm, p_lm) = match s.lm {
            Some((m, p)) => (m.to_string(), fmt_real(p)),
            None => (String::new(), String::new()),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            s.n,
            s.trial,
            s.seed,
            m_lm,
            p_lm,
            s.times.m_h.map(|m| m.to_string()).unwrap_or_default(),
            s.times.p_h.map(fmt_real).unwrap_or_default(),
            s.lm_ratio().map(fmt_real).unwrap_or_default(),
        ));
    }
    out
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| LabError::io(path, e))
}

/// Writes `trials.csv`, `aggregate.json` and, with LM comparison,
/// `lm_trials.csv` into the configured output directory.
pub fn write_outputs(config: &ExperimentConfig, outcome: &ExperimentOutcome) -> Result<()> {
    fs::create_dir_all(&config.out_dir).map_err(|e| LabError::io(&config.out_dir, e))?;
    write(
        &config.out_dir.join("trials.csv"),
        &trials_csv(&outcome.trials),
    )?;
    let mut json = serde_json::to_string_pretty(&outcome.report)?;
    json.push('\n');
    write(&config.out_dir.join("aggregate.json"), &json)?;
    if config.lm_compare {
        write(
            &config.out_dir.join("lm_trials.csv"),
            &lm_csv(&outcome.trials),
        )?;
    }
    Ok(())
}

/// Linial–Meshulam versus downward-closure thresholds at one `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LmCompareReport {
    pub n: u32,
    pub trials: u64,
    pub master_seed: u64,
    /// Trials where both thresholds were found.
    pub compared: usize,
    pub ratio: Option<Quartiles<f64>>,
    pub p_lm: Option<Quartiles<f64>>,
    pub p_h: Option<Quartiles<f64>>,
    /// `2 ln n / (ln n + ½ ln ln n)`, the ratio of the two threshold formulas.
    pub asymptotic_ratio: f64,
}

pub fn lm_compare(
    n: u32,
    trials: u64,
    master_seed: u64,
    workers: Option<usize>,
) -> Result<(Vec<TrialSummary>, LmCompareReport)> {
    let config = ExperimentConfig {
        n_list: vec![n],
        trials,
        master_seed,
        m_cap: None,
        out_dir: default_out_dir(),
        workers,
        lm_compare: true,
    };
    let outcome = run_experiment(&config)?;
    let ratios: Vec<f64> = outcome
        .trials
        .iter()
        .filter_map(TrialSummary::lm_ratio)
        .collect();
    let p_lm: Vec<f64> = outcome
        .trials
        .iter()
        .filter_map(|s| s.lm.map(|x| x.1))
        .collect();
    let p_h: Vec<f64> = outcome.trials.iter().filter_map(|s| s.times.p_h).collect();
    let ln = f64::from(n).ln();
    let report = LmCompareReport {
        n,
        trials,
        master_seed,
        compared: ratios.len(),
        ratio: rounded(quartiles(&ratios)),
        p_lm: rounded(quartiles(&p_lm)),
        p_h: rounded(quartiles(&p_h)),
        asymptotic_ratio: sig6(2.0 * ln / (ln + 0.5 * ln.ln())),
    };
    Ok((outcome.trials, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(n_list: Vec<u32>, trials: u64) -> ExperimentConfig {
        ExperimentConfig {
            n_list,
            trials,
            master_seed: 7,
            m_cap: None,
            out_dir: default_out_dir(),
            workers: Some(2),
            lm_compare: false,
        }
    }

    #[test]
    fn validation() {
        assert!(config(vec![10], 0).validate().is_err());
        assert!(config(vec![], 3).validate().is_err());
        assert!(config(vec![2], 3).validate().is_err());
        assert!(config(vec![10], 3).validate().is_ok());
    }

    #[test]
    fn single_trial_aggregate_is_that_trial() {
        let out = run_experiment(&config(vec![15], 1)).unwrap();
        let s = &out.trials[0];
        let agg = &out.report.per_n[0];
        let h = &s.times;
        assert_eq!(agg.trials, 1);
        let m_m = agg.m_m.map(|q| (q.q25, q.median, q.q75));
        assert_eq!(m_m, h.m_m.map(|m| (m, m, m)));
        assert_eq!(agg.m_iso.unwrap().median, h.m_iso.unwrap());
        assert_eq!(agg.rate_m_h, if s.coincide_m_h { 1.0 } else { 0.0 });
        assert_eq!(agg.t_median, s.t_stat.map(sig6));
    }

    #[test]
    fn cap_override_is_clipped() {
        let mut c = config(vec![5], 1);
        c.m_cap = Some(1000);
        assert_eq!(c.cap_for(5), 10);
        c.m_cap = None;
        assert_eq!(c.cap_for(5), default_m_cap(5));
    }

    #[test]
    fn config_json_defaults() {
        let c: ExperimentConfig =
            serde_json::from_str(r#"{"n_list": [20, 40], "trials": 5}"#).unwrap();
        assert_eq!(c.master_seed, 0);
        assert_eq!(c.out_dir, PathBuf::from("out"));
        assert!(serde_json::from_str::<ExperimentConfig>(
            r#"{"n_list": [20], "trials": 5, "bogus": 1}"#
        )
        .is_err());
    }
}
