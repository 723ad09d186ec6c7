//! Random-variate generation for the samplers.
//!
//! Gamma draws use the squeeze/rejection method of Marsaglia and Tsang (via
//! `rand_distr`), which covers all shapes > 0 by boosting when shape < 1.
//! Truncated draws combine rejection with an inverse-CDF fallback so that
//! constrained Gibbs updates stay exact even when the feasible region holds
//! little prior mass.

use super::special;
use super::{GammaParams, InverseGammaParams, RngStream};
use crate::{Error, Result};
use rand::Rng;
use rand_distr::{Distribution, Gamma, Poisson, StandardNormal};

/// One gamma variate. Infallible: `GammaParams` is validated on construction.
pub fn draw_gamma(params: &GammaParams, rng: &mut RngStream) -> f64 {
    let dist = Gamma::new(params.shape(), 1.0 / params.rate()).expect("validated gamma params");
    loop {
        let x: f64 = dist.sample(rng);
        // Guard against underflow to zero at tiny shapes.
        if x > 0.0 {
            return x;
        }
    }
}

/// One normal variate with the given mean and standard deviation.
pub fn draw_normal(mean: f64, sd: f64, rng: &mut RngStream) -> Result<f64> {
    if !(sd > 0.0 && sd.is_finite() && mean.is_finite()) {
        return Err(Error::Domain(format!(
            "normal draw requires finite mean and positive sd, got ({mean}, {sd})"
        )));
    }
    let z: f64 = StandardNormal.sample(rng);
    Ok(mean + sd * z)
}

/// One inverse-gamma variate: the reciprocal of a Gamma(shape, rate = scale) draw.
pub fn draw_inverse_gamma(params: &InverseGammaParams, rng: &mut RngStream) -> f64 {
    let dist = Gamma::new(params.shape(), 1.0 / params.scale()).expect("validated ig params");
    loop {
        let g: f64 = dist.sample(rng);
        if g > 0.0 && g.is_finite() {
            return 1.0 / g;
        }
    }
}

/// One Poisson count with the given mean (zero mean gives a zero count).
pub fn draw_poisson(mean: f64, rng: &mut RngStream) -> Result<u64> {
    if !(mean >= 0.0 && mean.is_finite()) {
        return Err(Error::Domain(format!(
            "poisson mean must be finite and nonnegative, got {mean}"
        )));
    }
    if mean == 0.0 {
        return Ok(0);
    }
    let dist = Poisson::new(mean)
        .map_err(|e| Error::Domain(format!("poisson mean {mean} rejected: {e}")))?;
    let x: f64 = dist.sample(rng);
    Ok(x as u64)
}

/// One uniform variate on [lo, hi); degenerate bounds return `lo`.
pub fn draw_uniform(lo: f64, hi: f64, rng: &mut RngStream) -> Result<f64> {
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::Domain(format!(
            "uniform bounds must be finite with lo <= hi, got ({lo}, {hi})"
        )));
    }
    if lo == hi {
        return Ok(lo);
    }
    Ok(rng.random_range(lo..hi))
}

/// Normal draw truncated to [lo, hi] by CDF inversion. When the interval
/// carries no representable mass the nearer bound is returned.
pub fn draw_truncated_normal(
    mean: f64,
    sd: f64,
    lo: f64,
    hi: f64,
    rng: &mut RngStream,
) -> Result<f64> {
    if !(sd > 0.0 && sd.is_finite() && mean.is_finite()) {
        return Err(Error::Domain(format!(
            "truncated normal requires finite mean and positive sd, got ({mean}, {sd})"
        )));
    }
    if !(lo < hi) {
        return Err(Error::Domain(format!(
            "truncated normal requires lo < hi, got ({lo}, {hi})"
        )));
    }
    let a = special::normal_cdf((lo - mean) / sd);
    let b = special::normal_cdf((hi - mean) / sd);
    if b - a < 1e-300 {
        // Entire mass is outside [lo, hi]; the conditional collapses onto
        // the boundary nearest the mean.
        return Ok(if mean > hi { hi } else { lo });
    }
    let u: f64 = rng.random_range(0.0..1.0);
    let p = (a + u * (b - a)).clamp(1e-300, 1.0 - 1e-16);
    Ok((mean + sd * special::normal_quantile(p)).clamp(lo, hi))
}

/// Gamma draw truncated to (0, hi] by CDF inversion.
pub fn draw_truncated_gamma_upper(
    params: &GammaParams,
    hi: f64,
    rng: &mut RngStream,
) -> Result<f64> {
    if !(hi > 0.0 && hi.is_finite()) {
        return Err(Error::Domain(format!(
            "gamma truncation bound must be positive and finite, got {hi}"
        )));
    }
    let a = params.shape();
    let t_hi = params.rate() * hi;
    let mass_below = special::reg_lower_gamma(a, t_hi);
    let u: f64 = rng.random_range(0.0..1.0);
    if mass_below <= 1e-300 {
        // Essentially all mass lies above the bound; the conditional density
        // on (0, hi] is proportional to t^{a-1} e^{-t} ~ t^{a-1} near the
        // bound only when t_hi is small, otherwise it concentrates at hi.
        if t_hi <= 1.0 {
            return Ok(hi * u.powf(1.0 / a));
        }
        return Ok(hi);
    }
    let target = u * mass_below;
    let t = special::inverse_reg_lower_gamma_bisect(a, target, t_hi);
    Ok((t / params.rate()).min(hi))
}

/// Inverse-gamma draw truncated to (lo, infinity): rejection first (bounded
/// attempts), then CDF inversion on the tail. Errors only when the tail mass
/// underflows double precision entirely, reporting the offending boundary.
pub fn draw_truncated_inv_gamma_lower(
    params: &InverseGammaParams,
    lo: f64,
    max_rejects: usize,
    rng: &mut RngStream,
) -> Result<f64> {
    if lo <= 0.0 {
        return Ok(draw_inverse_gamma(params, rng));
    }
    for _ in 0..max_rejects {
        let y = draw_inverse_gamma(params, rng);
        if y > lo {
            return Ok(y);
        }
    }
    // Inverse-CDF fallback. P(Y > y) = P_gamma(shape, scale / y).
    let shape = params.shape();
    let t_lo = params.scale() / lo;
    let tail_mass = special::reg_lower_gamma(shape, t_lo);
    if tail_mass <= 1e-300 {
        return Err(Error::Sampler(format!(
            "truncated inverse-gamma draw failed: no representable mass above \
             boundary {lo} for shape {shape}, scale {}",
            params.scale()
        )));
    }
    let u: f64 = rng.random_range(0.0..1.0);
    let target = (u * tail_mass).max(f64::MIN_POSITIVE);
    let t = special::inverse_reg_lower_gamma_bisect(shape, target, t_lo);
    if t <= 0.0 {
        return Err(Error::Sampler(format!(
            "truncated inverse-gamma inversion underflowed at boundary {lo}"
        )));
    }
    Ok((params.scale() / t).max(lo))
}
