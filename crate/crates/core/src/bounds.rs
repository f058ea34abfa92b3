//! The ladder of rigorous deviation-from-Benford bounds and exact deviation
//! measurement.
//!
//! For a unimodal log-density the Gauvrit–Delahaye argument gives
//! `|Ḡ(z) − z| ≤ 2·max g`; total variation sharpens this to the
//! Dümbgen–Leuenberger interval bound `δ(1−δ)·TV(g)/2`, its uniform form
//! `TV(g)/8`, and Pinkham's `TV(g)/6`.

use serde::{Deserialize, Serialize};

use crate::density::{DensityModel, MantissaProfile};
use crate::digitcore::benford_vector;
use crate::{Error, Result};

/// Exact deviation measurements of a mantissa profile.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Deviation {
    /// max over the grid of |Ḡ(z) − z|
    pub sup_dev: f64,
    /// max over digits of |p[k] − log((k+1)/k)|
    pub digit_dev: f64,
    /// largest spread of ḡ over the grid, sup |ḡ(z₂) − ḡ(z₁)|
    pub oscillation: f64,
}

/// The Gauvrit–Delahaye bound `2·max g`, valid only for unimodal `g`.
pub fn gd_bound(g: &DensityModel) -> Result<f64> {
    if !g.is_unimodal() {
        return Err(Error::InapplicableBound);
    }
    Ok(2.0 * g.max_density())
}

/// Dümbgen–Leuenberger interval bound `δ(1−δ)·TV(g)/2` with `δ = z₂ − z₁`.
pub fn dl_interval_bound(tv_g: f64, z1: f64, z2: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&z1) || !(0.0..=1.0).contains(&z2) || z1 >= z2 {
        return Err(Error::InvalidBound(format!(
            "need 0 ≤ z1 < z2 ≤ 1, got z1 = {z1}, z2 = {z2}"
        )));
    }
    let delta = z2 - z1;
    Ok(delta * (1.0 - delta) * tv_g / 2.0)
}

/// Uniform Dümbgen–Leuenberger bound `TV(g)/8`.
pub fn dl_uniform_bound(tv_g: f64) -> f64 {
    tv_g / 8.0
}

/// Pinkham's Fourier-analytic bound `TV(g)/6`.
pub fn pinkham_bound(tv_g: f64) -> f64 {
    tv_g / 6.0
}

/// Measure the deviation of a profile from exact Benford on a dense grid.
///
/// The grid joins `grid_size + 1` uniform points, the digit-interval
/// endpoints `log k`, and every projected knot of the profile, so the
/// extrema of `Ḡ(z) − z` (which sit where ḡ crosses 1) are captured.
pub fn measure_deviation(profile: &MantissaProfile, grid_size: usize) -> Result<Deviation> {
    if grid_size < 100 {
        return Err(Error::InvalidBound(format!(
            "grid size must be at least 100, got {grid_size}"
        )));
    }
    let mut grid: Vec<f64> = (0..=grid_size).map(|i| i as f64 / grid_size as f64).collect();
    for k in 2..=9u8 {
        grid.push((k as f64).log10());
    }
    grid.extend(profile.breakpoints());
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();

    let mut sup_dev: f64 = 0.0;
    let mut g_min = f64::INFINITY;
    let mut g_max = f64::NEG_INFINITY;
    for &z in &grid {
        sup_dev = sup_dev.max((profile.gbar_cdf(z) - z).abs());
        let g = profile.gbar(z);
        g_min = g_min.min(g);
        g_max = g_max.max(g);
    }
    let digits = profile.digit_distribution()?;
    let digit_dev = digits.max_abs_dev(&benford_vector());
    Ok(Deviation { sup_dev, digit_dev, oscillation: g_max - g_min })
}

/// The full ladder for one law: the bound inputs (`max g`, `TV(g)`), every
/// applicable bound, and the measured deviations they must dominate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub max_g: f64,
    /// absent when the shape admits no monotone decomposition
    pub tv_g: Option<f64>,
    /// absent when g is not unimodal
    pub gd_bound: Option<f64>,
    pub dl_uniform_bound: Option<f64>,
    pub pinkham_bound: Option<f64>,
    /// `δ(1−δ)·TV(g)/2` sampled at δ ∈ {0.1, 0.5, 0.9}
    pub dl_interval_bounds: Option<Vec<(f64, f64)>>,
    pub measured_sup_dev: f64,
    pub measured_digit_dev: f64,
    pub oscillation: f64,
    pub grid_size: usize,
}

impl BoundReport {
    pub fn build(
        g: &DensityModel,
        profile: &MantissaProfile,
        grid_size: usize,
    ) -> Result<BoundReport> {
        let deviation = measure_deviation(profile, grid_size)?;
        let tv_g = g.total_variation().ok();
        let dl_interval_bounds = tv_g.map(|tv| {
            [0.1, 0.5, 0.9]
                .iter()
                .map(|&delta| (delta, delta * (1.0 - delta) * tv / 2.0))
                .collect()
        });
        Ok(BoundReport {
            max_g: g.max_density(),
            tv_g,
            gd_bound: gd_bound(g).ok(),
            dl_uniform_bound: tv_g.map(dl_uniform_bound),
            pinkham_bound: tv_g.map(pinkham_bound),
            dl_interval_bounds,
            measured_sup_dev: deviation.sup_dev,
            measured_digit_dev: deviation.digit_dev,
            oscillation: deviation.oscillation,
            grid_size,
        })
    }

    /// Smallest available bound on sup |Ḡ(z) − z|.
    pub fn best_bound(&self) -> Option<f64> {
        [self.gd_bound, self.dl_uniform_bound, self.pinkham_bound]
            .into_iter()
            .flatten()
            .fold(None, |acc, b| Some(acc.map_or(b, |a: f64| a.min(b))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dl_interval_shape() {
        // δ(1−δ)/2 peaks at δ = 1/2 with value 1/8
        let tv = 3.0;
        let peak = dl_interval_bound(tv, 0.25, 0.75).unwrap();
        assert!((peak - tv / 8.0).abs() < 1e-15);
        for (z1, z2) in [(0.0, 0.1), (0.3, 0.7), (0.05, 0.95), (0.0, 1.0)] {
            let b = dl_interval_bound(tv, z1, z2).unwrap();
            assert!(b <= tv / 8.0 + 1e-15);
        }
        // δ → 0 and δ → 1 collapse the bound
        assert!(dl_interval_bound(tv, 0.0, 1e-12).unwrap() < 1e-11);
        assert!(dl_interval_bound(tv, 1e-12, 1.0).unwrap() < 1e-11);
        assert_eq!(dl_interval_bound(0.0, 0.2, 0.4).unwrap(), 0.0);
        assert!(dl_interval_bound(tv, 0.5, 0.5).is_err());
        assert!(dl_interval_bound(tv, -0.1, 0.5).is_err());
    }

    #[test]
    fn trivial_ladder_values() {
        assert_eq!(dl_uniform_bound(8.0), 1.0);
        assert!((pinkham_bound(8.0) - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn dl_sharper_than_gd_for_unimodal() {
        // tv = 2M for unimodal g, so dl_uniform = M/4 < 2M = gd
        let m = 0.7;
        assert!(dl_uniform_bound(2.0 * m) < 2.0 * m);
        assert!((dl_uniform_bound(2.0 * m) - m / 4.0).abs() < 1e-15);
    }
}
