//! Catalog of parametric laws, counterexamples, and exactly-Benford
//! constructions.
//!
//! Every family exposes its density on `(0, ∞)` through [`LawSpec::f_model`];
//! the log-side density is always obtained through
//! [`density::pushforward_log10`], so the whole pipeline exercises the same
//! transform the analysis uses. Families with closed-form digit laws
//! (exponential series, uniform interval measure) expose those directly as
//! independent routes.

use serde::{Deserialize, Serialize};

use crate::density::{
    pushforward_log10, DensityModel, ExpTerm, Kind, PowerTerm, Segment,
};
use crate::digitcore::DigitDistribution;
use crate::{Error, Result, LN_10};

/// A parametric law from the catalog, parseable from CLI arguments and from
/// a JSON document `{"family": "...", "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum LawSpec {
    Exponential { lambda: f64 },
    Uniform { a: f64, b: f64 },
    Lognormal { mu: f64, sigma: f64 },
    Pareto1 { alpha: f64, x0: f64 },
    Reciprocal { p: i32, q: i32 },
    StepBenford { weights: Vec<(i64, f64)> },
    AffineBenford { start: i64, values: Vec<f64> },
    PeriodicNines { p: i32, q: i32 },
    AnnoyingF0,
    TriangularBumps { n: u32 },
}

impl LawSpec {
    /// Parse from a JSON document.
    pub fn from_json(doc: &str) -> Result<LawSpec> {
        serde_json::from_str(doc).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    /// The density of `X` on `(0, ∞)`.
    pub fn f_model(&self) -> Result<DensityModel> {
        match self {
            LawSpec::Exponential { lambda } => exponential_density(*lambda),
            LawSpec::Uniform { a, b } => uniform_density(*a, *b),
            LawSpec::Lognormal { mu, sigma } => lognormal_density(*mu, *sigma),
            LawSpec::Pareto1 { alpha, x0 } => pareto_density(*alpha, *x0),
            LawSpec::Reciprocal { p, q } => reciprocal_density(*p, *q),
            LawSpec::StepBenford { weights } => step_benford_f(weights),
            LawSpec::AffineBenford { start, values } => affine_benford_f(*start, values),
            LawSpec::PeriodicNines { p, q } => periodic_nines_density(*p, *q),
            LawSpec::AnnoyingF0 => annoying_f0(),
            LawSpec::TriangularBumps { n } => triangular_bumps(*n),
        }
    }

    /// The density of `Y = log₁₀ X`, via the log pushforward.
    pub fn g_model(&self) -> Result<DensityModel> {
        pushforward_log10(&self.f_model()?)
    }
}

/// `f(x) = λe^{−λx}` on `(0, ∞)`.
pub fn exponential_density(lambda: f64) -> Result<DensityModel> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidLaw(format!("exponential needs λ > 0, got {lambda}")));
    }
    DensityModel::from_segments(vec![Segment::new(
        0.0,
        f64::INFINITY,
        Kind::ExpSum(vec![ExpTerm { coef: lambda, rate: -lambda, linear: false }]),
    )])
}

/// Uniform density on `[a, b]`, `0 ≤ a < b`.
pub fn uniform_density(a: f64, b: f64) -> Result<DensityModel> {
    if !(a >= 0.0 && b > a && b.is_finite()) {
        return Err(Error::InvalidLaw(format!("uniform needs 0 ≤ a < b, got [{a}, {b}]")));
    }
    DensityModel::from_segments(vec![Segment::new(
        a,
        b,
        Kind::PowerSum(vec![PowerTerm { coef: 1.0 / (b - a), exp: 0.0 }]),
    )])
}

/// Log-normal density: `X = exp(Y₀)` with `Y₀ ~ N(mu, sigma²)` (natural log).
pub fn lognormal_density(mu: f64, sigma: f64) -> Result<DensityModel> {
    if !(sigma > 0.0 && sigma.is_finite() && mu.is_finite()) {
        return Err(Error::InvalidLaw(format!(
            "lognormal needs σ > 0 and finite μ, got μ = {mu}, σ = {sigma}"
        )));
    }
    let seg = Segment::new(
        0.0,
        f64::INFINITY,
        Kind::LogNormal { mu, sigma, weight: 1.0 },
    )
    .with_stationary(vec![(mu - sigma * sigma).exp()]);
    DensityModel::from_segments(vec![seg])
}

/// Pareto type-1 density `f(x) = α·x₀^α / x^{α+1}` on `[x₀, ∞)`.
pub fn pareto_density(alpha: f64, x0: f64) -> Result<DensityModel> {
    if !(alpha > 0.0 && x0 > 0.0 && alpha.is_finite() && x0.is_finite()) {
        return Err(Error::InvalidLaw(format!(
            "pareto1 needs α > 0 and x₀ > 0, got α = {alpha}, x₀ = {x0}"
        )));
    }
    DensityModel::from_segments(vec![Segment::new(
        x0,
        f64::INFINITY,
        Kind::PowerSum(vec![PowerTerm {
            coef: alpha * x0.powf(alpha),
            exp: -(alpha + 1.0),
        }]),
    )])
}

/// The Gaussian log-side density of the log-normal law, in closed form
/// (mean `μ/ln 10`, standard deviation `σ/ln 10`).
pub fn lognormal_g(mu: f64, sigma: f64) -> Result<DensityModel> {
    pushforward_log10(&lognormal_density(mu, sigma)?)
}

/// The log-side density of the Pareto law: `ln(10)·α·x₀^α·10^{−αy}` above
/// `log₁₀ x₀`, with exact maximum `ln(10)·α` at the left edge.
pub fn pareto_g(alpha: f64, x0: f64) -> Result<DensityModel> {
    pushforward_log10(&pareto_density(alpha, x0)?)
}

/// `f(x) = 1/((q−p)·ln(10)·x)` on `[10ᵖ, 10^q]` — exactly Benford.
pub fn reciprocal_density(p: i32, q: i32) -> Result<DensityModel> {
    if p >= q {
        return Err(Error::InvalidLaw(format!("reciprocal needs p < q, got p = {p}, q = {q}")));
    }
    DensityModel::from_segments(vec![Segment::new(
        10f64.powi(p),
        10f64.powi(q),
        Kind::PowerSum(vec![PowerTerm {
            coef: 1.0 / ((q - p) as f64 * LN_10),
            exp: -1.0,
        }]),
    )])
}

fn validate_step_weights(weights: &[(i64, f64)]) -> Result<Vec<(i64, f64)>> {
    if weights.is_empty() {
        return Err(Error::InvalidLaw("step law needs at least one weight".into()));
    }
    let mut sorted = weights.to_vec();
    sorted.sort_by_key(|(n, _)| *n);
    for w in sorted.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::InvalidLaw(format!("duplicate step index {}", w[0].0)));
        }
    }
    if sorted.iter().any(|(_, g)| !(*g >= 0.0) || !g.is_finite()) {
        return Err(Error::InvalidLaw("step weights must be nonnegative".into()));
    }
    let sum: f64 = sorted.iter().map(|(_, g)| g).sum();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized { sum, tol: 1e-12 });
    }
    sorted.retain(|(_, g)| *g > 0.0);
    Ok(sorted)
}

/// The step log-density `g = Σ γₙ·1_{[n, n+1]}` of Theorem-1 case 1.
pub fn step_benford_density(weights: &[(i64, f64)]) -> Result<DensityModel> {
    let weights = validate_step_weights(weights)?;
    let segments = weights
        .iter()
        .map(|&(n, g)| {
            Segment::new(
                n as f64,
                (n + 1) as f64,
                Kind::PowerSum(vec![PowerTerm { coef: g, exp: 0.0 }]),
            )
        })
        .collect();
    DensityModel::from_segments(segments)
}

fn step_benford_f(weights: &[(i64, f64)]) -> Result<DensityModel> {
    let weights = validate_step_weights(weights)?;
    let segments = weights
        .iter()
        .map(|&(n, g)| {
            Segment::new(
                10f64.powi(n as i32),
                10f64.powi(n as i32 + 1),
                Kind::PowerSum(vec![PowerTerm { coef: g / LN_10, exp: -1.0 }]),
            )
        })
        .collect();
    DensityModel::from_segments(segments)
}

fn validate_affine_values(start: i64, values: &[f64]) -> Result<()> {
    if values.len() < 2 {
        return Err(Error::InvalidLaw("affine law needs at least two knot values".into()));
    }
    if values.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
        return Err(Error::InvalidLaw("affine knot values must be nonnegative".into()));
    }
    if values[0] != 0.0 || values[values.len() - 1] != 0.0 {
        // Remark 2: without continuity on ℝ the construction is not Benford.
        return Err(Error::InvalidLaw(
            "affine law must start and end at 0 so g is continuous on ℝ".into(),
        ));
    }
    let mass: f64 = values.windows(2).map(|w| 0.5 * (w[0] + w[1])).sum();
    if (mass - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized { sum: mass, tol: 1e-12 });
    }
    let _ = start;
    Ok(())
}

/// The continuous integer-knot piecewise-affine log-density of Theorem-1
/// case 2. `values[i]` is `g(start + i)`; the trapezoid masses must sum to 1.
pub fn affine_benford_density(start: i64, values: &[f64]) -> Result<DensityModel> {
    validate_affine_values(start, values)?;
    let mut segments = Vec::new();
    for (i, w) in values.windows(2).enumerate() {
        let (v0, v1) = (w[0], w[1]);
        if v0 == 0.0 && v1 == 0.0 {
            continue;
        }
        let n = (start + i as i64) as f64;
        let slope = v1 - v0;
        segments.push(Segment::new(
            n,
            n + 1.0,
            Kind::PowerSum(vec![
                PowerTerm { coef: v0 - slope * n, exp: 0.0 },
                PowerTerm { coef: slope, exp: 1.0 },
            ]),
        ));
    }
    DensityModel::from_segments(segments)
}

fn affine_benford_f(start: i64, values: &[f64]) -> Result<DensityModel> {
    validate_affine_values(start, values)?;
    let mut segments = Vec::new();
    for (i, w) in values.windows(2).enumerate() {
        let (v0, v1) = (w[0], w[1]);
        if v0 == 0.0 && v1 == 0.0 {
            continue;
        }
        let n = (start + i as i64) as f64;
        // g(y) = c0 + c1·y on [n, n+1] maps to f(x) = (c0 + c1·log₁₀ x)/(ln(10)·x)
        let c1 = v1 - v0;
        let c0 = v0 - c1 * n;
        let kind = Kind::LogOverX {
            c0: c0 / LN_10,
            c1: c1 / (LN_10 * LN_10),
        };
        let mut seg = Segment::new(10f64.powi(n as i32), 10f64.powi(n as i32 + 1), kind);
        seg.stationary = crate::density::segment::stationary_points(&seg);
        segments.push(seg);
    }
    DensityModel::from_segments(segments)
}

/// Triangular-bump density carried by `∪ [0.9·10ⁿ, 10ⁿ)` for `n ∈ [p, q]`,
/// forcing first digit 9 almost surely. The bumps are C⁰ triangles, strictly
/// positive on each open interval, with equal weight per decade.
pub fn periodic_nines_density(p: i32, q: i32) -> Result<DensityModel> {
    if p >= q {
        return Err(Error::InvalidLaw(format!(
            "periodic nines needs p < q, got p = {p}, q = {q}"
        )));
    }
    let w = 1.0 / (q - p + 1) as f64;
    let mut segments = Vec::new();
    for n in p..=q {
        let scale = 10f64.powi(n);
        let (l, r) = (0.9 * scale, scale);
        let m = 0.5 * (l + r);
        let h = 2.0 * w / (r - l);
        let up = h / (m - l);
        segments.push(Segment::new(
            l,
            m,
            Kind::PowerSum(vec![
                PowerTerm { coef: -up * l, exp: 0.0 },
                PowerTerm { coef: up, exp: 1.0 },
            ]),
        ));
        let down = h / (r - m);
        segments.push(Segment::new(
            m,
            r,
            Kind::PowerSum(vec![
                PowerTerm { coef: down * r, exp: 0.0 },
                PowerTerm { coef: -down, exp: 1.0 },
            ]),
        ));
    }
    DensityModel::from_segments(segments)
}

/// The unimodal density whose multiplier `x·f₀(x)` has two equal maxima, at
/// `x = 1` and `x = 2`. Normalized by its computed mass; the two-maxima
/// statement is exact for the unnormalized pieces.
pub fn annoying_f0() -> Result<DensityModel> {
    let segments = vec![
        Segment::new(0.0, 1.0, Kind::PowerSum(vec![PowerTerm { coef: 1.0, exp: 1.0 }])),
        Segment::new(
            1.0,
            2.0,
            // x⁻¹·[1 + (x−1)(x−2)/2] = x/2 − 3/2 + 2/x
            Kind::PowerSum(vec![
                PowerTerm { coef: 0.5, exp: 1.0 },
                PowerTerm { coef: -1.5, exp: 0.0 },
                PowerTerm { coef: 2.0, exp: -1.0 },
            ]),
        ),
        Segment::new(2.0, f64::INFINITY, Kind::PowerSum(vec![PowerTerm { coef: 4.0, exp: -3.0 }])),
    ];
    Ok(DensityModel::from_segments_normalized(segments)?.0)
}

/// Isosceles-triangle bumps with peak `1/n²` at each integer `n ≤ N`, zero at
/// the half-integers, normalized. The multiplier `x·f(x)` peaks at `1/n`, so
/// its variation over `[0, N + 1/2]` grows like the harmonic series.
pub fn triangular_bumps(n: u32) -> Result<DensityModel> {
    if n == 0 {
        return Err(Error::InvalidLaw("triangular bumps need N ≥ 1".into()));
    }
    let mut segments = Vec::with_capacity(2 * n as usize);
    for k in 1..=n as i64 {
        let kf = k as f64;
        let peak = 1.0 / (kf * kf);
        let slope = 2.0 * peak;
        segments.push(Segment::new(
            kf - 0.5,
            kf,
            Kind::PowerSum(vec![
                PowerTerm { coef: -slope * (kf - 0.5), exp: 0.0 },
                PowerTerm { coef: slope, exp: 1.0 },
            ]),
        ));
        segments.push(Segment::new(
            kf,
            kf + 0.5,
            Kind::PowerSum(vec![
                PowerTerm { coef: slope * (kf + 0.5), exp: 0.0 },
                PowerTerm { coef: -slope, exp: 1.0 },
            ]),
        ));
    }
    Ok(DensityModel::from_segments_normalized(segments)?.0)
}

/// Engel–Leuenberger exact series for the exponential law:
/// `P(D = k) = Σₙ e^{−λk·10ⁿ}·(1 − e^{−λ·10ⁿ})`.
///
/// The window is chosen so both tails are certified below `tol`: the lower
/// tail is dominated by the geometric series `Σ λ·10ⁿ` and the upper tail by
/// `Σ e^{−λ·10ⁿ}`. Terms are summed in fixed ascending order.
pub fn exp_digit_distribution(lambda: f64, tol: f64) -> Result<DigitDistribution> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidLaw(format!("exponential needs λ > 0, got {lambda}")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidLaw(format!("tolerance must be positive, got {tol}")));
    }
    let n0 = (-lambda.log10()).round() as i32;
    let mut n_min = n0;
    while lambda * 10f64.powi(n_min) * (10.0 / 9.0) > 0.05 * tol && n_min > n0 - 400 {
        n_min -= 1;
    }
    let mut n_max = n0;
    while 2.0 * (-lambda * 10f64.powi(n_max)).exp() > 0.05 * tol && n_max < n0 + 12 {
        n_max += 1;
    }
    let mut p = [0.0; 9];
    for (i, slot) in p.iter_mut().enumerate() {
        let k = (i + 1) as f64;
        let mut sum = 0.0;
        for n in n_min..=n_max {
            let t = lambda * 10f64.powi(n);
            sum += (-k * t).exp() * (-(-t).exp_m1());
        }
        *slot = sum;
    }
    DigitDistribution::with_tolerance(p, tol + 1e-12)
}

/// Exact first-digit law of the uniform distribution on `[a, b]`:
/// interval measure summed in closed form over the decades meeting `[a, b]`,
/// with the sub-`a` geometric tail in closed form when `a = 0`.
pub fn uniform_digit_distribution(a: f64, b: f64) -> Result<DigitDistribution> {
    if !(a >= 0.0 && b > a && b.is_finite()) {
        return Err(Error::InvalidLaw(format!("uniform needs 0 ≤ a < b, got [{a}, {b}]")));
    }
    let width = b - a;
    let n_hi = b.log10().floor() as i32;
    let mut p = [0.0; 9];
    if a == 0.0 {
        // Largest decade fully inside [0, b]: every digit interval at scale
        // 10ⁿ with n ≤ n_full lies in [0, b], contributing Σ 10ⁿ = 10^{n_full+1}/9.
        let mut n_full = n_hi;
        while 10f64.powi(n_full + 1) > b {
            n_full -= 1;
        }
        while 10f64.powi(n_full + 2) <= b {
            n_full += 1;
        }
        let geometric = 10f64.powi(n_full + 1) / 9.0;
        for (i, slot) in p.iter_mut().enumerate() {
            let k = (i + 1) as f64;
            let mut total = geometric;
            for n in (n_full + 1)..=(n_hi + 1) {
                let scale = 10f64.powi(n);
                total += (b.min((k + 1.0) * scale) - k * scale).max(0.0);
            }
            *slot = total / width;
        }
    } else {
        let n_lo = a.log10().floor() as i32;
        for (i, slot) in p.iter_mut().enumerate() {
            let k = (i + 1) as f64;
            let mut total = 0.0;
            for n in (n_lo - 1)..=(n_hi + 1) {
                let scale = 10f64.powi(n);
                total += (b.min((k + 1.0) * scale) - a.max(k * scale)).max(0.0);
            }
            *slot = total / width;
        }
    }
    DigitDistribution::with_tolerance(p, 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{digit_distribution, stack, tilde_f};
    use crate::digitcore::benford_vector;

    #[test]
    fn law_spec_json_round_trip() {
        let spec = LawSpec::from_json(r#"{"family": "exponential", "params": {"lambda": 1.0}}"#)
            .unwrap();
        assert_eq!(spec, LawSpec::Exponential { lambda: 1.0 });
        let spec = LawSpec::from_json(
            r#"{"family": "step_benford", "params": {"weights": [[-1, 0.3], [2, 0.7]]}}"#,
        )
        .unwrap();
        assert_eq!(spec, LawSpec::StepBenford { weights: vec![(-1, 0.3), (2, 0.7)] });
        let spec = LawSpec::from_json(r#"{"family": "annoying_f0"}"#).unwrap();
        assert_eq!(spec, LawSpec::AnnoyingF0);
        assert!(LawSpec::from_json(r#"{"family": "gamma", "params": {}}"#).is_err());
    }

    #[test]
    fn exponential_series_reference_values() {
        let d = exp_digit_distribution(1.0, 1e-12).unwrap();
        // brute-force oracle over n ∈ [-30, 5]
        assert!((d.p(1) - 0.3296569783306346).abs() < 1e-13);
        for k in 1..9u8 {
            assert!(d.p(k) > d.p(k + 1), "Block–Savits ordering at k = {k}");
        }
    }

    #[test]
    fn exponential_series_decade_invariance() {
        for lambda in [1e-3, 0.02, 1.0, 7.5, 1e3] {
            let d1 = exp_digit_distribution(lambda, 1e-12).unwrap();
            let d2 = exp_digit_distribution(10.0 * lambda, 1e-12).unwrap();
            assert!(d1.max_abs_dev(&d2) < 1e-12, "λ = {lambda}");
        }
    }

    #[test]
    fn uniform_digit_law_closed_forms() {
        let d = uniform_digit_distribution(1.0, 2.0).unwrap();
        assert!((d.p(1) - 1.0).abs() < 1e-15);
        let d = uniform_digit_distribution(0.0, 1.0).unwrap();
        for k in 1..=9u8 {
            assert!((d.p(k) - 1.0 / 9.0).abs() < 1e-15);
        }
        let d = uniform_digit_distribution(0.0, 10.0).unwrap();
        for k in 1..=9u8 {
            assert!((d.p(k) - 1.0 / 9.0).abs() < 1e-12);
        }
    }

    #[test]
    fn uniform_digit_law_decade_invariance() {
        for (a, b) in [(0.0, 3.7), (1.0, 2.0), (2.5, 95.0), (0.013, 0.9)] {
            let d1 = uniform_digit_distribution(a, b).unwrap();
            let d2 = uniform_digit_distribution(10.0 * a, 10.0 * b).unwrap();
            assert!(d1.max_abs_dev(&d2) < 1e-12, "({a}, {b})");
        }
    }

    #[test]
    fn reciprocal_is_exactly_benford() {
        for (p, q) in [(0, 1), (-3, 4), (2, 5)] {
            let g = LawSpec::Reciprocal { p, q }.g_model().unwrap();
            let profile = stack(&g, 1e-12).unwrap();
            let d = digit_distribution(&profile).unwrap();
            assert!(d.max_abs_dev(&benford_vector()) < 1e-12, "({p}, {q})");
            // ḡ ≡ 1
            for z in [0.0, 0.25, 0.5, 0.99] {
                assert!((profile.gbar(z) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn step_benford_rejects_bad_weights() {
        assert!(step_benford_density(&[(0, 0.5), (1, 0.6)]).is_err());
        assert!(step_benford_density(&[(0, -0.5), (1, 1.5)]).is_err());
        assert!(step_benford_density(&[(0, 0.5), (0, 0.5)]).is_err());
        assert!(step_benford_density(&[]).is_err());
    }

    #[test]
    fn affine_benford_rejects_discontinuous() {
        // g = 2y on [0,1] alone is discontinuous at 1 (Remark 2)
        assert!(affine_benford_density(0, &[0.0, 2.0]).is_err());
        // and tent profiles must carry unit trapezoid mass
        assert!(affine_benford_density(-1, &[0.0, 2.0, 0.0]).is_err());
        assert!(affine_benford_density(-1, &[0.0, 1.0, 0.0]).is_ok());
    }

    #[test]
    fn annoying_f0_has_two_equal_multiplier_maxima() {
        let f = annoying_f0().unwrap();
        let h = tilde_f(&f).unwrap();
        // mass oracle: ∫ x dx + ∫ (x/2 − 3/2 + 2/x) dx + ∫ 4x⁻³ dx = 2 ln 2 + 1/4
        let mass = 2.0 * 2f64.ln() + 0.25;
        assert!((h.eval(1.0) * mass - 1.0).abs() < 1e-12);
        assert!((h.eval(2.0) * mass - 1.0).abs() < 1e-12);
        assert!((h.eval(1.0) - h.eval(2.0)).abs() < 1e-14);
        // f itself is unimodal, its multiplier is not
        assert!(f.is_unimodal());
        // interior dip between the two maxima
        assert!(h.eval(1.5) < h.eval(1.0) - 0.05 / mass);
    }

    #[test]
    fn triangular_bumps_multiplier_variation_is_harmonic() {
        let n = 100u32;
        let f = triangular_bumps(n).unwrap();
        let h = tilde_f(&f).unwrap();
        // normalization factor: Σ 1/(2k²)
        let mass: f64 = (1..=n).map(|k| 0.5 / (k as f64 * k as f64)).sum();
        let harmonic: f64 = (1..=n).map(|k| 1.0 / k as f64).sum();
        let tv = h.variation_on(0.0, n as f64 + 0.5) * mass;
        assert!((tv - 2.0 * harmonic).abs() < 1e-9, "tv = {tv}");
    }

    #[test]
    fn periodic_nines_is_digit_nine() {
        let f = periodic_nines_density(0, 3).unwrap();
        // all mass sits in [0.9·10ⁿ, 10ⁿ)
        for n in 0..=3 {
            let lo = 0.9 * 10f64.powi(n);
            let hi = 10f64.powi(n);
            assert!((f.mass_between(lo, hi) - 0.25).abs() < 1e-12);
        }
        assert!((f.cdf(0.9) - 0.0).abs() < 1e-15);
    }
}
