//! Posterior summarization and cross-model comparison.
//!
//! Quantiles use type-7 interpolation (the linear-interpolation default of
//! most statistical environments) so golden files reproduce across
//! languages. Monte-Carlo effective sample size uses Geyer's initial
//! positive sequence truncation of the autocorrelation sum, computed per
//! chain and summed.

use crate::approx;
use crate::samplers::{effective_prior_events_draws, ChainOutput};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Summary of one scalar parameter's retained draws.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosteriorSummary {
    pub name: String,
    pub mean: f64,
    pub sd: f64,
    pub q025: f64,
    pub q25: f64,
    pub q50: f64,
    pub q75: f64,
    pub q975: f64,
    pub ess: f64,
    pub chains: usize,
}

/// Type-7 empirical quantile: linear interpolation at h = (n-1)p.
/// `sorted` must be ascending and non-empty.
pub fn quantile_type7(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    debug_assert!((0.0..=1.0).contains(&p));
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    let w = h - lo as f64;
    sorted[lo] + w * (sorted[hi] - sorted[lo])
}

/// Effective sample size of one sequence by initial-positive-sequence
/// truncation: ESS = N / (1 + 2 * sum of autocorrelations), with the sum
/// cut at the first nonpositive pair (rho_{2k} + rho_{2k+1}). Clamped to
/// (0, N]. A zero-variance sequence reports N.
pub fn ess_initial_positive(x: &[f64]) -> f64 {
    let n = x.len();
    if n < 4 {
        return n as f64;
    }
    let nf = n as f64;
    let mean = x.iter().sum::<f64>() / nf;
    let gamma0 = x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / nf;
    if gamma0 <= 0.0 {
        return nf;
    }
    let rho = |t: usize| -> f64 {
        let mut acc = 0.0;
        for k in 0..n - t {
            acc += (x[k] - mean) * (x[k + t] - mean);
        }
        acc / nf / gamma0
    };

    let mut sum = 0.0;
    let mut t = 1;
    while t + 1 < n {
        let pair = rho(t) + rho(t + 1);
        if pair <= 0.0 {
            break;
        }
        sum += pair;
        t += 2;
    }
    let tau = (1.0 + 2.0 * sum).max(1.0);
    (nf / tau).clamp(f64::MIN_POSITIVE, nf)
}

/// Summarizes one named parameter of a chain output. Quantiles and moments
/// pool all chains; ESS is computed per chain and summed.
pub fn summarize(chain: &ChainOutput, parameter: &str) -> Result<PosteriorSummary> {
    let per_chain = chain.column_per_chain(parameter)?;
    if per_chain.iter().all(|c| c.is_empty()) {
        return Err(Error::Contract(format!(
            "no retained draws for parameter {parameter:?}"
        )));
    }
    let mut pooled: Vec<f64> = per_chain.iter().flatten().copied().collect();
    let n = pooled.len() as f64;
    let mean = pooled.iter().sum::<f64>() / n;
    let sd = if pooled.len() > 1 {
        (pooled.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    let ess = per_chain.iter().map(|c| ess_initial_positive(c)).sum();
    pooled.sort_by(|a, b| a.partial_cmp(b).expect("draws must not be NaN"));
    Ok(PosteriorSummary {
        name: parameter.to_string(),
        mean,
        sd,
        q025: quantile_type7(&pooled, 0.025),
        q25: quantile_type7(&pooled, 0.25),
        q50: quantile_type7(&pooled, 0.5),
        q75: quantile_type7(&pooled, 0.75),
        q975: quantile_type7(&pooled, 0.975),
        ess,
        chains: per_chain.len(),
    })
}

/// Summaries for every parameter column in the output.
pub fn summarize_all(chain: &ChainOutput) -> Result<Vec<PosteriorSummary>> {
    chain
        .param_names()
        .iter()
        .map(|name| summarize(chain, name))
        .collect()
}

/// Informativeness summary of one model in a comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InformativenessSummary {
    pub model: String,
    pub median: f64,
    pub q025: f64,
    pub q975: f64,
}

/// One region's rate medians across the compared chains, with the percent
/// change between the first two. The percent change is computed against the
/// pairwise mean so that swapping the chains flips only its sign.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegionComparison {
    pub region_id: String,
    pub rate_medians: Vec<f64>,
    pub pct_change: Option<f64>,
}

/// Side-by-side informativeness and per-region rate comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub m0: u32,
    pub informativeness: Vec<InformativenessSummary>,
    pub regions: Vec<RegionComparison>,
}

/// Compares fitted models: per-model informativeness posteriors (median and
/// 95% interval) plus per-region rate medians. With exactly two chains the
/// table carries a percent-change column, positive where the first chain's
/// rates exceed the second's.
pub fn compare_models(chains: &[&ChainOutput], m0: u32) -> Result<ComparisonTable> {
    if chains.is_empty() {
        return Err(Error::Contract("compare_models needs at least one chain".into()));
    }
    let region_ids = chains[0].region_ids().to_vec();
    for c in chains.iter().skip(1) {
        if c.region_ids() != region_ids.as_slice() {
            return Err(Error::Contract(
                "compared chains cover incompatible region sets".into(),
            ));
        }
    }

    let mut informativeness = Vec::with_capacity(chains.len());
    for c in chains {
        let mut draws: Vec<f64> = effective_prior_events_draws(c, m0)?
            .iter()
            .map(|e| e.a_hat())
            .collect();
        draws.sort_by(|a, b| a.partial_cmp(b).expect("a_hat draws must not be NaN"));
        informativeness.push(InformativenessSummary {
            model: c.model().label().to_string(),
            median: quantile_type7(&draws, 0.5),
            q025: quantile_type7(&draws, 0.025),
            q975: quantile_type7(&draws, 0.975),
        });
    }

    let mut regions = Vec::with_capacity(region_ids.len());
    for (i, id) in region_ids.iter().enumerate() {
        let medians: Vec<f64> = chains
            .iter()
            .map(|c| summarize(c, &format!("lambda_{id}")).map(|s| s.q50))
            .collect::<Result<_>>()?;
        let pct_change = if chains.len() == 2 {
            let (a, b) = (medians[0], medians[1]);
            Some(100.0 * (a - b) / (0.5 * (a + b)))
        } else {
            None
        };
        regions.push(RegionComparison {
            region_id: id.clone(),
            rate_medians: medians,
            pct_change,
        });
        let _ = i;
    }

    Ok(ComparisonTable {
        m0,
        informativeness,
        regions,
    })
}

/// Reference informativeness value for constant hyperparameter draws;
/// used by comparison tests and table footers.
pub fn informativeness_at(sigma2: f64, tau2: f64, m0: u32) -> Result<f64> {
    Ok(approx::informativeness(&approx::InformativenessQuery::new(sigma2, tau2, m0)?)?.a_hat())
}
