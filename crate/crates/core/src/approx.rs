//! Gamma/lognormal moment matching and the model-informativeness measure.
//!
//! A `Gamma(a, b)` rate prior reads directly as "a prior events over b
//! person-time". Matching the first two moments gives the lognormal with the
//! same information content:
//!
//! ```text
//! sigma2 = ln(1/a + 1),    mu = ln(a/b) - sigma2/2
//! ```
//!
//! and inverting the map translates any log-scale variance back into
//! effective prior events. For the BYM model the relevant variance is the
//! conditional log-rate variance, bounded by `sigma2 + (sigma2 + tau2)/m0`
//! for a region with `m0` neighbors, which yields the informativeness
//!
//! ```text
//! a_hat = 1 / (exp[sigma2 + (sigma2 + tau2)/m0] - 1)
//! ```
//!
//! reported throughout in units of prior events contributed per region.

use crate::numerics::{GammaParams, LognormalParams};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Inputs of the informativeness measure: the two BYM variance components
/// and the baseline neighbor count the measure is quoted at.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InformativenessQuery {
    sigma2: f64,
    tau2: f64,
    m0: u32,
}

/// Default baseline neighbor count for reporting informativeness.
pub const DEFAULT_M0: u32 = 3;

impl InformativenessQuery {
    pub fn new(sigma2: f64, tau2: f64, m0: u32) -> Result<Self> {
        if !(sigma2 > 0.0 && sigma2.is_finite()) {
            return Err(Error::Domain(format!(
                "sigma2 must be positive and finite, got {sigma2}"
            )));
        }
        if !(tau2 > 0.0 && tau2.is_finite()) {
            return Err(Error::Domain(format!(
                "tau2 must be positive and finite, got {tau2}"
            )));
        }
        if m0 < 1 {
            return Err(Error::Domain("m0 must be at least 1".into()));
        }
        Ok(Self { sigma2, tau2, m0 })
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn tau2(&self) -> f64 {
        self.tau2
    }

    pub fn m0(&self) -> u32 {
        self.m0
    }
}

/// Effective prior event count contributed by a model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectivePriorEvents {
    a_hat: f64,
}

impl EffectivePriorEvents {
    pub fn a_hat(&self) -> f64 {
        self.a_hat
    }
}

/// Lognormal parameters whose mean and variance equal those of `g` exactly.
pub fn gamma_to_lognormal(g: &GammaParams) -> LognormalParams {
    let sigma2 = (1.0 / g.shape()).ln_1p();
    let mu = g.mean().ln() - 0.5 * sigma2;
    LognormalParams::new(mu, sigma2).expect("matched parameters are always valid")
}

/// Gamma parameters whose mean and variance equal those of `ln`:
/// `a = 1/(exp(sigma2) - 1)`, `b = a / exp(mu + sigma2/2)`.
///
/// Errors when `sigma2` is so small that the shape overflows.
pub fn lognormal_to_gamma(ln: &LognormalParams) -> Result<GammaParams> {
    let shape = 1.0 / ln.sigma2().exp_m1();
    if !shape.is_finite() {
        return Err(Error::Overflow(format!(
            "matched gamma shape overflows for sigma2 = {:e}",
            ln.sigma2()
        )));
    }
    let rate = shape / ln.mean();
    if !(rate.is_finite() && rate > 0.0) {
        return Err(Error::Overflow(format!(
            "matched gamma rate is not representable for mu = {}, sigma2 = {}",
            ln.mu(),
            ln.sigma2()
        )));
    }
    GammaParams::new(shape, rate)
}

/// Lower bound on the conditional log-rate precision of the BYM model for a
/// region with `m0` neighbors: `1 / (sigma2 + (sigma2 + tau2)/m0)`. Strictly
/// increasing in `m0`, approaching `1/sigma2` in the limit.
pub fn conditional_precision_bound(q: &InformativenessQuery) -> f64 {
    let m0 = f64::from(q.m0());
    1.0 / (q.sigma2() + (q.sigma2() + q.tau2()) / m0)
}

/// Effective prior events injected by the BYM model at baseline neighbor
/// count `m0`. Strictly decreasing in each variance, increasing in `m0`.
///
/// Errors when the exponent is so small that the measure blows up (a
/// modeling pathology the caller must see) or so large that it underflows.
pub fn informativeness(q: &InformativenessQuery) -> Result<EffectivePriorEvents> {
    let m0 = f64::from(q.m0());
    let exponent = q.sigma2() + (q.sigma2() + q.tau2()) / m0;
    if exponent < 1e-12 {
        return Err(Error::Overflow(format!(
            "informativeness diverges: conditional variance {exponent} is below 1e-12"
        )));
    }
    let a_hat = 1.0 / exponent.exp_m1();
    if !(a_hat > 0.0 && a_hat.is_finite()) {
        return Err(Error::Overflow(format!(
            "informativeness underflows for conditional variance {exponent}"
        )));
    }
    Ok(EffectivePriorEvents { a_hat })
}

/// Informativeness of an independent lognormal rate prior with log-scale
/// precision `gamma`: the matched gamma shape `1/(exp(1/gamma) - 1)`.
pub fn lognormal_precision_informativeness(gamma: f64) -> Result<EffectivePriorEvents> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::Domain(format!(
            "lognormal precision must be positive and finite, got {gamma}"
        )));
    }
    let a_hat = 1.0 / (1.0 / gamma).exp_m1();
    if !(a_hat > 0.0 && a_hat.is_finite()) {
        return Err(Error::Overflow(format!(
            "informativeness not representable for precision {gamma}"
        )));
    }
    Ok(EffectivePriorEvents { a_hat })
}
