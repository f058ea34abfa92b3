//! Density representations on ℝ and (0, ∞), the f↔g log-pushforward, the
//! stacking operator, and total-variation computation.
//!
//! A [`DensityModel`] is a sorted list of closed-form segments with exact
//! antiderivatives. Both coordinate systems use the same machinery: models of
//! `X` live on `(0, ∞)`, models of `Y = log₁₀ X` live on ℝ, and
//! [`pushforward_log10`] maps the former to the latter segment by segment via
//! `g(y) = ln(10)·10ʸ·f(10ʸ)`.

pub mod quad;
pub mod segment;
mod stack;
mod variation;

use serde::Deserialize;

use crate::digitcore::DigitDistribution;
use crate::{Error, Result};

pub use segment::{CustomFn, ExpTerm, Kind, PowerTerm, PushTerm, Segment};
pub use stack::MantissaProfile;
pub(crate) use stack::choose_window as window_for;

use variation::{nodes_on, sup_value, unimodal_mode, variation};

/// Which lateral limit to take at a breakpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Side {
    Left,
    Right,
}

/// Shape information carried by a model, driving which bounds apply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShapeTag {
    /// Non-decreasing up to `mode`, non-increasing after.
    Unimodal { mode: f64 },
    PiecewiseLinear,
    PiecewiseAnalytic,
    /// No monotone decomposition available (black-box pieces).
    Generic,
}

/// A probability density as a sorted list of closed-form segments.
///
/// Invariants enforced at construction: segments are disjoint and ordered
/// with `lo < hi` (no atoms, no zero-length pieces), values are nonnegative
/// at every node, and the total mass is 1 within `1e-9`.
#[derive(Debug, Clone)]
pub struct DensityModel {
    segments: Vec<Segment>,
    cum_before: Vec<f64>,
    total_mass: f64,
    shape: ShapeTag,
}

impl DensityModel {
    pub fn from_segments(segments: Vec<Segment>) -> Result<DensityModel> {
        if segments.is_empty() {
            return Err(Error::InvalidDensity("a density needs at least one segment".into()));
        }
        for seg in &segments {
            if !(seg.lo < seg.hi) {
                return Err(Error::InvalidDensity(format!(
                    "degenerate segment [{}, {}]",
                    seg.lo, seg.hi
                )));
            }
        }
        for w in segments.windows(2) {
            if w[0].hi > w[1].lo {
                return Err(Error::InvalidDensity(format!(
                    "segments overlap at [{}, {}]",
                    w[1].lo, w[0].hi
                )));
            }
        }
        let mut cum_before = Vec::with_capacity(segments.len());
        let mut total_mass = 0.0;
        for seg in &segments {
            cum_before.push(total_mass);
            let m = seg.mass();
            if !m.is_finite() || m < -1e-12 {
                return Err(Error::InvalidDensity(format!(
                    "segment [{}, {}] has mass {m}",
                    seg.lo, seg.hi
                )));
            }
            total_mass += m;
        }
        if (total_mass - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidDensity(format!(
                "density integrates to {total_mass}, expected 1 within 1e-9"
            )));
        }
        let shape = classify(&segments);
        let model = DensityModel { segments, cum_before, total_mass, shape };
        // nonnegativity at every node value
        let nodes = nodes_on(model.segments(), f64::NEG_INFINITY, f64::INFINITY);
        if nodes.iter().any(|n| n.value < -1e-12) {
            return Err(Error::InvalidDensity("density takes negative values".into()));
        }
        Ok(model)
    }

    /// Normalize raw segments to unit mass; returns the model and the factor
    /// the input was divided by.
    pub fn from_segments_normalized(segments: Vec<Segment>) -> Result<(DensityModel, f64)> {
        let mass: f64 = segments.iter().map(Segment::mass).sum();
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidDensity(format!(
                "cannot normalize mass {mass}"
            )));
        }
        let scaled = segments.iter().map(|s| s.scale(1.0 / mass)).collect();
        Ok((DensityModel::from_segments(scaled)?, mass))
    }

    /// Piecewise-linear density through `(knots[i], values[i])`, normalized
    /// to unit mass; the second value returned is the normalization factor.
    pub fn piecewise_linear(knots: &[f64], values: &[f64]) -> Result<(DensityModel, f64)> {
        if knots.len() != values.len() {
            return Err(Error::InvalidDensity(format!(
                "{} knots but {} values",
                knots.len(),
                values.len()
            )));
        }
        if knots.len() < 2 {
            return Err(Error::InvalidDensity("need at least two knots".into()));
        }
        if knots.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidDensity("knots must be strictly increasing".into()));
        }
        if knots.iter().chain(values).any(|v| !v.is_finite()) {
            return Err(Error::InvalidDensity("knots and values must be finite".into()));
        }
        if values.iter().any(|v| *v < 0.0) {
            return Err(Error::InvalidDensity("values must be nonnegative".into()));
        }
        let mut segments = Vec::with_capacity(knots.len() - 1);
        for i in 0..knots.len() - 1 {
            let (x0, x1) = (knots[i], knots[i + 1]);
            let (v0, v1) = (values[i], values[i + 1]);
            let slope = (v1 - v0) / (x1 - x0);
            segments.push(Segment::new(
                x0,
                x1,
                Kind::PowerSum(vec![
                    PowerTerm { coef: v0 - slope * x0, exp: 0.0 },
                    PowerTerm { coef: slope, exp: 1.0 },
                ]),
            ));
        }
        DensityModel::from_segments_normalized(segments)
    }

    /// Load a piecewise-linear density from `{"knots": [...], "values": [...]}`.
    pub fn piecewise_linear_from_json(doc: &str) -> Result<(DensityModel, f64)> {
        #[derive(Deserialize)]
        struct Doc {
            knots: Vec<f64>,
            values: Vec<f64>,
        }
        let doc: Doc = serde_json::from_str(doc)
            .map_err(|e| Error::InvalidDensity(format!("piecewise-linear JSON: {e}")))?;
        DensityModel::piecewise_linear(&doc.knots, &doc.values)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn shape(&self) -> ShapeTag {
        self.shape
    }

    pub fn is_generic(&self) -> bool {
        matches!(self.shape, ShapeTag::Generic)
    }

    pub fn is_unimodal(&self) -> bool {
        matches!(self.shape, ShapeTag::Unimodal { .. })
    }

    pub(crate) fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// Support endpoints (first lo, last hi).
    pub fn support(&self) -> (f64, f64) {
        (
            self.segments.first().map(|s| s.lo).unwrap_or(f64::NEG_INFINITY),
            self.segments.last().map(|s| s.hi).unwrap_or(f64::INFINITY),
        )
    }

    /// Pointwise density; right-continuous at interior breakpoints, 0 outside.
    pub fn eval(&self, x: f64) -> f64 {
        let i = self.segments.partition_point(|s| s.hi < x);
        match self.segments.get(i) {
            Some(s) if s.lo <= x && x < s.hi => s.eval(x),
            Some(s) if x == s.hi => s.eval(x),
            _ => 0.0,
        }
    }

    pub(crate) fn eval_side(&self, x: f64, side: Side) -> f64 {
        for s in &self.segments {
            let inside = match side {
                Side::Left => s.lo < x && x <= s.hi,
                Side::Right => s.lo <= x && x < s.hi,
            };
            if inside {
                return s.eval(x);
            }
            if s.lo > x {
                break;
            }
        }
        0.0
    }

    pub(crate) fn deriv(&self, x: f64) -> f64 {
        let i = self.segments.partition_point(|s| s.hi < x);
        match self.segments.get(i) {
            Some(s) if s.lo <= x && x <= s.hi => s.kind.deriv(x),
            _ => 0.0,
        }
    }

    /// Cumulative probability up to `x`.
    pub fn cdf(&self, x: f64) -> f64 {
        let i = self.segments.partition_point(|s| s.hi <= x);
        let mut acc = if i < self.segments.len() { self.cum_before[i] } else { self.total_mass };
        if let Some(s) = self.segments.get(i) {
            if x > s.lo {
                acc += s.mass_between(s.lo, x);
            }
        }
        acc
    }

    /// Exact mass of `[a, b]`.
    pub fn mass_between(&self, a: f64, b: f64) -> f64 {
        if a >= b {
            return 0.0;
        }
        let i0 = self.segments.partition_point(|s| s.hi <= a);
        let mut total = 0.0;
        for seg in &self.segments[i0..] {
            if seg.lo >= b {
                break;
            }
            total += seg.mass_between(a, b);
        }
        total
    }

    /// Upper bound on the mass outside `[-a, a]`.
    pub fn tail_mass(&self, a: f64) -> f64 {
        (self.total_mass - self.mass_between(-a, a)).max(0.0)
    }

    /// Quantile by bisection on the cdf (used to seed window searches).
    pub fn quantile(&self, q: f64) -> f64 {
        let target = q.clamp(0.0, 1.0) * self.total_mass;
        let (sup_lo, sup_hi) = self.support();
        let mut lo = if sup_lo.is_finite() {
            sup_lo
        } else {
            let mut l = -1.0;
            while self.cdf(l) > target && l > -1e300 {
                l = l * 2.0 - 1.0;
            }
            l
        };
        let mut hi = if sup_hi.is_finite() {
            sup_hi
        } else {
            let mut h = 1.0;
            while self.cdf(h) < target && h < 1e300 {
                h = h * 2.0 + 1.0;
            }
            h
        };
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.cdf(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Largest density value (attained at a node of the monotone decomposition).
    pub fn max_density(&self) -> f64 {
        sup_value(&nodes_on(&self.segments, f64::NEG_INFINITY, f64::INFINITY))
    }

    /// Mode when the model is unimodal.
    pub fn unimodal_mode(&self) -> Option<f64> {
        match self.shape {
            ShapeTag::Unimodal { mode } => Some(mode),
            _ => None,
        }
    }

    /// Total variation on ℝ: the exact sum of monotone-run variations, with
    /// canonical one-sided values at discontinuities and zero limits at ±∞.
    /// For a unimodal density this equals `2·max g`.
    pub fn total_variation(&self) -> Result<f64> {
        if self.is_generic() {
            return Err(Error::UnsupportedShape);
        }
        Ok(variation(&nodes_on(&self.segments, f64::NEG_INFINITY, f64::INFINITY)))
    }

    /// The dilated density `g_λ(y) = (1/λ)·g(y/λ)` — the density of `λY`.
    pub fn dilate(&self, lambda: f64) -> Result<DensityModel> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidDensity(format!(
                "dilation scale must be positive, got {lambda}"
            )));
        }
        let segments: Option<Vec<Segment>> =
            self.segments.iter().map(|s| s.dilate(lambda)).collect();
        let segments = segments.ok_or_else(|| {
            Error::InvalidDensity("a segment kind does not support dilation".into())
        })?;
        DensityModel::from_segments(segments)
    }
}

fn classify(segments: &[Segment]) -> ShapeTag {
    if segments.iter().any(|s| matches!(s.kind, Kind::Custom(_))) {
        return ShapeTag::Generic;
    }
    let nodes = nodes_on(segments, f64::NEG_INFINITY, f64::INFINITY);
    if let Some(mode) = unimodal_mode(&nodes) {
        return ShapeTag::Unimodal { mode };
    }
    if segments.iter().all(|s| s.kind.is_affine()) {
        ShapeTag::PiecewiseLinear
    } else {
        ShapeTag::PiecewiseAnalytic
    }
}

/// The multiplier transform `x ↦ x·f(x)` of an x-side density, exposed for
/// maxima and variation analysis. `max g = ln(10)·max x·f(x)` and
/// `TV(g) = ln(10)·TV(x·f(x))`.
#[derive(Debug, Clone)]
pub struct Multiplier {
    segments: Vec<Segment>,
}

impl Multiplier {
    pub fn eval(&self, x: f64) -> f64 {
        let i = self.segments.partition_point(|s| s.hi < x);
        match self.segments.get(i) {
            Some(s) if s.lo <= x && x <= s.hi => s.eval(x),
            _ => 0.0,
        }
    }

    pub fn max(&self) -> f64 {
        sup_value(&nodes_on(&self.segments, f64::NEG_INFINITY, f64::INFINITY))
    }

    pub fn total_variation(&self) -> f64 {
        self.variation_on(f64::NEG_INFINITY, f64::INFINITY)
    }

    /// Variation restricted to `[a, b]`, boundary values included.
    pub fn variation_on(&self, a: f64, b: f64) -> f64 {
        variation(&nodes_on(&self.segments, a, b))
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }
}

/// `g(y) = ln(10)·10ʸ·f(10ʸ)` — the density of `Y = log₁₀ X` from the
/// density of `X`, segment by segment in closed form.
pub fn pushforward_log10(f: &DensityModel) -> Result<DensityModel> {
    let (sup_lo, _) = f.support();
    if sup_lo < 0.0 {
        return Err(Error::InvalidDensity(format!(
            "pushforward needs support in (0, ∞); support starts at {sup_lo}"
        )));
    }
    let segments: Option<Vec<Segment>> =
        f.segments.iter().map(|s| s.pushforward_log10()).collect();
    let segments = segments.ok_or_else(|| {
        Error::InvalidDensity("a segment kind does not support the log pushforward".into())
    })?;
    DensityModel::from_segments(segments)
}

/// The multiplier transform of an x-side density.
pub fn tilde_f(f: &DensityModel) -> Result<Multiplier> {
    let (sup_lo, _) = f.support();
    if sup_lo < 0.0 {
        return Err(Error::InvalidDensity(format!(
            "the multiplier transform needs support in (0, ∞); support starts at {sup_lo}"
        )));
    }
    let segments: Option<Vec<Segment>> = f.segments.iter().map(|s| s.multiplier()).collect();
    let segments = segments.ok_or_else(|| {
        Error::InvalidDensity("a segment kind does not support the multiplier transform".into())
    })?;
    Ok(Multiplier { segments })
}

/// Stack a density on ℝ into its mantissa profile on [0, 1].
pub fn stack(g: &DensityModel, tol: f64) -> Result<MantissaProfile> {
    MantissaProfile::new(g.clone(), tol)
}

/// Digit probabilities of a stacked profile.
pub fn digit_distribution(profile: &MantissaProfile) -> Result<DigitDistribution> {
    profile.digit_distribution()
}

/// Total variation of a density on ℝ.
pub fn total_variation(g: &DensityModel) -> Result<f64> {
    g.total_variation()
}

/// Total variation of ḡ on the torus, seam jump included.
pub fn total_variation_torus(profile: &MantissaProfile) -> Result<f64> {
    profile.total_variation_torus()
}
