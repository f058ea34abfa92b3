//! Closed-form density segments.
//!
//! A model is a sorted list of [`Segment`]s, each carrying one analytic form
//! with an exact antiderivative. Exactness of every downstream quantity
//! (stacked cdf, digit probabilities, total variation) rests on the
//! `mass_between` implementations here, so each kind gets a numerically
//! stable form (`expm1`, `erfc` for tails) rather than naive F(b) − F(a).

use std::fmt;
use std::sync::Arc;

use statrs::function::erf::{erf, erfc};

use crate::density::quad::adaptive_simpson;
use crate::LN_10;

const SQRT_2: f64 = std::f64::consts::SQRT_2;
const SQRT_2PI: f64 = 2.5066282746310002;

/// `coef · x^exp`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerTerm {
    pub coef: f64,
    pub exp: f64,
}

/// `coef · x^p · e^{rate·x}` with `p ∈ {0, 1}`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpTerm {
    pub coef: f64,
    pub rate: f64,
    pub linear: bool,
}

/// `coef · γ · e^{γy} · exp(rate · e^{γy})` — the log₁₀ pushforward of
/// `coef · e^{rate·x}`, with `γ` the log rate (ln 10 before any dilation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PushTerm {
    pub coef: f64,
    pub rate: f64,
}

#[derive(Clone)]
pub struct CustomFn(pub Arc<dyn Fn(f64) -> f64 + Send + Sync>);

impl fmt::Debug for CustomFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CustomFn")
    }
}

/// The analytic form of a density restricted to one interval.
#[derive(Debug, Clone)]
pub enum Kind {
    /// `Σ coef·x^exp`; negative or fractional exponents require `lo ≥ 0`.
    PowerSum(Vec<PowerTerm>),
    /// `Σ coef·x^p·e^{rate·x}`.
    ExpSum(Vec<ExpTerm>),
    /// `weight · N(mean, sd)` density.
    Gaussian { mean: f64, sd: f64, weight: f64 },
    /// `weight · LogNormal(mu, sigma)` density on x > 0 (natural-log parameters).
    LogNormal { mu: f64, sigma: f64, weight: f64 },
    /// `(c0 + c1·ln x)/x` on x > 0 — the x-side twin of an affine log-density.
    LogOverX { c0: f64, c1: f64 },
    /// `c0 + c1·ln x` on x > 0.
    LogAffine { c0: f64, c1: f64 },
    /// `Σ coef·γ·exp(γy + rate·e^{γy})`.
    PushExp { log_rate: f64, terms: Vec<PushTerm> },
    /// Black-box density; cdf falls back to adaptive quadrature.
    Custom(CustomFn),
}

/// One piece of a piecewise model: a kind restricted to `[lo, hi]`
/// (bounds may be infinite) plus its interior stationary points.
#[derive(Debug, Clone)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
    pub kind: Kind,
    /// Interior zeros of the derivative, strictly inside `(lo, hi)`, sorted.
    pub stationary: Vec<f64>,
}

fn powx(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else if e == 1.0 {
        x
    } else if e == 2.0 {
        x * x
    } else if e == -1.0 {
        1.0 / x
    } else {
        x.powf(e)
    }
}

impl Kind {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Kind::PowerSum(terms) => terms.iter().map(|t| t.coef * powx(x, t.exp)).sum(),
            Kind::ExpSum(terms) => terms
                .iter()
                .map(|t| t.coef * if t.linear { x } else { 1.0 } * (t.rate * x).exp())
                .sum(),
            Kind::Gaussian { mean, sd, weight } => {
                let t = (x - mean) / sd;
                weight * (-0.5 * t * t).exp() / (sd * SQRT_2PI)
            }
            Kind::LogNormal { mu, sigma, weight } => {
                if x <= 0.0 {
                    return 0.0;
                }
                let t = (x.ln() - mu) / sigma;
                weight * (-0.5 * t * t).exp() / (x * sigma * SQRT_2PI)
            }
            Kind::LogOverX { c0, c1 } => (c0 + c1 * x.ln()) / x,
            Kind::LogAffine { c0, c1 } => c0 + c1 * x.ln(),
            Kind::PushExp { log_rate, terms } => {
                let u = (log_rate * x).exp();
                terms
                    .iter()
                    .map(|t| {
                        let arg = log_rate * x + t.rate * u;
                        if arg == f64::NEG_INFINITY || arg.is_nan() && u.is_infinite() {
                            0.0
                        } else {
                            t.coef * log_rate * arg.exp()
                        }
                    })
                    .sum()
            }
            Kind::Custom(f) => (f.0)(x),
        }
    }

    pub fn deriv(&self, x: f64) -> f64 {
        match self {
            Kind::PowerSum(terms) => terms
                .iter()
                .map(|t| t.coef * t.exp * powx(x, t.exp - 1.0))
                .sum(),
            Kind::ExpSum(terms) => terms
                .iter()
                .map(|t| {
                    let e = (t.rate * x).exp();
                    if t.linear {
                        t.coef * e * (1.0 + t.rate * x)
                    } else {
                        t.coef * t.rate * e
                    }
                })
                .sum(),
            Kind::Gaussian { mean, sd, .. } => -((x - mean) / (sd * sd)) * self.eval(x),
            Kind::LogNormal { mu, sigma, .. } => {
                -(1.0 / x) * (1.0 + (x.ln() - mu) / (sigma * sigma)) * self.eval(x)
            }
            Kind::LogOverX { c0, c1 } => (c1 - c0 - c1 * x.ln()) / (x * x),
            Kind::LogAffine { c1, .. } => c1 / x,
            Kind::PushExp { log_rate, terms } => {
                let u = (log_rate * x).exp();
                terms
                    .iter()
                    .map(|t| {
                        let arg = log_rate * x + t.rate * u;
                        if arg == f64::NEG_INFINITY || (u.is_infinite() && t.rate < 0.0) {
                            0.0
                        } else {
                            t.coef * log_rate * log_rate * arg.exp() * (1.0 + t.rate * u)
                        }
                    })
                    .sum()
            }
            Kind::Custom(f) => {
                let h = 1e-6 * x.abs().max(1.0);
                ((f.0)(x + h) - (f.0)(x - h)) / (2.0 * h)
            }
        }
    }

    /// Exact integral over `[a, b]` (bounds may be infinite where the form decays).
    pub fn mass_between(&self, a: f64, b: f64) -> f64 {
        match self {
            Kind::PowerSum(terms) => terms
                .iter()
                .map(|t| {
                    if t.exp == -1.0 {
                        t.coef * (b.ln() - a.ln())
                    } else {
                        let e1 = t.exp + 1.0;
                        let pb = if b.is_infinite() && e1 < 0.0 { 0.0 } else { powx(b, e1) };
                        let pa = if a == 0.0 && e1 > 0.0 { 0.0 } else { powx(a, e1) };
                        t.coef * (pb - pa) / e1
                    }
                })
                .sum(),
            Kind::ExpSum(terms) => terms.iter().map(|t| exp_term_mass(t, a, b)).sum(),
            Kind::Gaussian { mean, sd, weight } => {
                normal_mass(a, b, *mean, *sd) * weight
            }
            Kind::LogNormal { mu, sigma, weight } => {
                let la = if a <= 0.0 { f64::NEG_INFINITY } else { a.ln() };
                let lb = if b.is_infinite() { f64::INFINITY } else { b.ln() };
                normal_mass(la, lb, *mu, *sigma) * weight
            }
            Kind::LogOverX { c0, c1 } => {
                let f = |x: f64| {
                    let l = x.ln();
                    c0 * l + 0.5 * c1 * l * l
                };
                f(b) - f(a)
            }
            Kind::LogAffine { c0, c1 } => {
                let f = |x: f64| c0 * x + c1 * (x * x.ln() - x);
                f(b) - f(a)
            }
            Kind::PushExp { log_rate, terms } => {
                let ua = (log_rate * a).exp(); // 0 at -inf for positive log_rate
                let ub = (log_rate * b).exp();
                terms
                    .iter()
                    .map(|t| {
                        if t.rate == 0.0 {
                            if ua.is_finite() && ub.is_finite() {
                                t.coef * ua * (log_rate * (b - a)).exp_m1()
                            } else {
                                t.coef * (ub - ua)
                            }
                        } else if ub.is_infinite() {
                            // e^{rate·u} -> 0 for rate < 0
                            -(t.coef / t.rate) * (t.rate * ua).exp()
                        } else {
                            (t.coef / t.rate) * (t.rate * ua).exp() * (t.rate * (ub - ua)).exp_m1()
                        }
                    })
                    .sum()
            }
            Kind::Custom(f) => {
                let g = |x: f64| (f.0)(x);
                adaptive_simpson(&g, a, b, 1e-12, 48)
            }
        }
    }

    /// Multiply the form by a constant.
    pub fn scale(&self, factor: f64) -> Kind {
        match self {
            Kind::PowerSum(t) => Kind::PowerSum(
                t.iter().map(|t| PowerTerm { coef: t.coef * factor, ..*t }).collect(),
            ),
            Kind::ExpSum(t) => Kind::ExpSum(
                t.iter().map(|t| ExpTerm { coef: t.coef * factor, ..*t }).collect(),
            ),
            Kind::Gaussian { mean, sd, weight } => Kind::Gaussian {
                mean: *mean,
                sd: *sd,
                weight: weight * factor,
            },
            Kind::LogNormal { mu, sigma, weight } => Kind::LogNormal {
                mu: *mu,
                sigma: *sigma,
                weight: weight * factor,
            },
            Kind::LogOverX { c0, c1 } => Kind::LogOverX {
                c0: c0 * factor,
                c1: c1 * factor,
            },
            Kind::LogAffine { c0, c1 } => Kind::LogAffine {
                c0: c0 * factor,
                c1: c1 * factor,
            },
            Kind::PushExp { log_rate, terms } => Kind::PushExp {
                log_rate: *log_rate,
                terms: terms
                    .iter()
                    .map(|t| PushTerm { coef: t.coef * factor, ..*t })
                    .collect(),
            },
            Kind::Custom(f) => {
                let inner = f.0.clone();
                Kind::Custom(CustomFn(Arc::new(move |x| factor * inner(x))))
            }
        }
    }

    /// Affine in the coordinate (degree ≤ 1 power sum)?
    pub fn is_affine(&self) -> bool {
        match self {
            Kind::PowerSum(t) => t.iter().all(|t| t.exp == 0.0 || t.exp == 1.0),
            _ => false,
        }
    }
}

fn exp_term_mass(t: &ExpTerm, a: f64, b: f64) -> f64 {
    if t.rate == 0.0 {
        return if t.linear {
            0.5 * t.coef * (b * b - a * a)
        } else {
            t.coef * (b - a)
        };
    }
    if t.linear {
        // F(x) = coef·e^{rx}(x/r − 1/r²)
        let f = |x: f64| {
            if x.is_infinite() {
                if t.rate * x.signum() < 0.0 { 0.0 } else { f64::INFINITY }
            } else {
                t.coef * (t.rate * x).exp() * (x / t.rate - 1.0 / (t.rate * t.rate))
            }
        };
        return f(b) - f(a);
    }
    let c_over_r = t.coef / t.rate;
    match (a.is_infinite(), b.is_infinite()) {
        (true, true) => 0.0,
        (true, false) => c_over_r * (t.rate * b).exp(),
        (false, true) => -c_over_r * (t.rate * a).exp(),
        (false, false) => c_over_r * (t.rate * a).exp() * (t.rate * (b - a)).exp_m1(),
    }
}

fn normal_mass(a: f64, b: f64, mean: f64, sd: f64) -> f64 {
    let za = (a - mean) / (sd * SQRT_2);
    let zb = (b - mean) / (sd * SQRT_2);
    match (a.is_infinite(), b.is_infinite()) {
        (true, true) => 1.0,
        (true, false) => 0.5 * erfc(-zb),
        (false, true) => 0.5 * erfc(za),
        (false, false) => 0.5 * (erf(zb) - erf(za)),
    }
}

impl Segment {
    pub fn new(lo: f64, hi: f64, kind: Kind) -> Segment {
        Segment { lo, hi, kind, stationary: Vec::new() }
    }

    pub fn with_stationary(mut self, pts: Vec<f64>) -> Segment {
        self.stationary = pts
            .into_iter()
            .filter(|p| p.is_finite() && *p > self.lo && *p < self.hi)
            .collect();
        self.stationary.sort_by(|a, b| a.partial_cmp(b).unwrap());
        self
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.kind.eval(x)
    }

    /// Value approached at `lo` from the right; 0 is the outside limit at −∞.
    pub fn value_at_lo(&self) -> f64 {
        if self.lo.is_infinite() { 0.0 } else { self.kind.eval(self.lo) }
    }

    /// Value approached at `hi` from the left; 0 is the outside limit at +∞.
    pub fn value_at_hi(&self) -> f64 {
        if self.hi.is_infinite() { 0.0 } else { self.kind.eval(self.hi) }
    }

    /// Integral over `[a, b] ∩ [lo, hi]`.
    pub fn mass_between(&self, a: f64, b: f64) -> f64 {
        let a = a.max(self.lo);
        let b = b.min(self.hi);
        if a >= b {
            return 0.0;
        }
        self.kind.mass_between(a, b)
    }

    pub fn mass(&self) -> f64 {
        self.kind.mass_between(self.lo, self.hi)
    }

    pub fn scale(&self, factor: f64) -> Segment {
        Segment {
            lo: self.lo,
            hi: self.hi,
            kind: self.kind.scale(factor),
            stationary: self.stationary.clone(),
        }
    }

    /// Points worth pinning when quadrature or scanning crosses this piece.
    pub fn feature_points(&self) -> Vec<f64> {
        let mut pts = Vec::new();
        if self.lo.is_finite() {
            pts.push(self.lo);
        }
        if self.hi.is_finite() {
            pts.push(self.hi);
        }
        pts.extend_from_slice(&self.stationary);
        if let Kind::Gaussian { mean, sd, .. } = self.kind {
            for k in [-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0] {
                pts.push(mean + k * sd);
            }
        }
        pts
    }

    /// The multiplier transform `x ↦ x·f(x)` of an x-side piece.
    ///
    /// Unimodality of the log pushforward is equivalent to unimodality of
    /// this transform, so its stationary points double as those of the
    /// pushforward (after mapping through log₁₀).
    pub fn multiplier(&self) -> Option<Segment> {
        let kind = match &self.kind {
            Kind::PowerSum(terms) => Kind::PowerSum(
                terms
                    .iter()
                    .map(|t| PowerTerm { coef: t.coef, exp: t.exp + 1.0 })
                    .collect(),
            ),
            Kind::ExpSum(terms) => {
                if terms.iter().any(|t| t.linear) {
                    return None;
                }
                Kind::ExpSum(
                    terms
                        .iter()
                        .map(|t| ExpTerm { coef: t.coef, rate: t.rate, linear: true })
                        .collect(),
                )
            }
            // x·LogNormal(mu, sigma) = e^{mu+sigma²/2}·LogNormal(mu+sigma², sigma)
            Kind::LogNormal { mu, sigma, weight } => Kind::LogNormal {
                mu: mu + sigma * sigma,
                sigma: *sigma,
                weight: weight * (mu + 0.5 * sigma * sigma).exp(),
            },
            Kind::LogOverX { c0, c1 } => Kind::LogAffine { c0: *c0, c1: *c1 },
            Kind::Custom(f) => {
                let inner = f.0.clone();
                Kind::Custom(CustomFn(Arc::new(move |x| x * inner(x))))
            }
            _ => return None,
        };
        let mut seg = Segment::new(self.lo, self.hi, kind);
        seg.stationary = stationary_points(&seg);
        Some(seg)
    }

    /// Log₁₀ pushforward of an x-side piece: `g(y) = ln(10)·10ʸ·f(10ʸ)`.
    pub fn pushforward_log10(&self) -> Option<Segment> {
        let lo = if self.lo <= 0.0 { f64::NEG_INFINITY } else { self.lo.log10() };
        let hi = if self.hi.is_infinite() { f64::INFINITY } else { self.hi.log10() };
        let kind = match &self.kind {
            Kind::PowerSum(terms) => Kind::ExpSum(
                terms
                    .iter()
                    .map(|t| ExpTerm {
                        coef: LN_10 * t.coef,
                        rate: (t.exp + 1.0) * LN_10,
                        linear: false,
                    })
                    .collect(),
            ),
            Kind::ExpSum(terms) => {
                if terms.iter().any(|t| t.linear) {
                    return None;
                }
                Kind::PushExp {
                    log_rate: LN_10,
                    terms: terms
                        .iter()
                        .map(|t| PushTerm { coef: t.coef, rate: t.rate })
                        .collect(),
                }
            }
            Kind::LogNormal { mu, sigma, weight } => Kind::Gaussian {
                mean: mu / LN_10,
                sd: sigma / LN_10,
                weight: *weight,
            },
            Kind::LogOverX { c0, c1 } => Kind::PowerSum(vec![
                PowerTerm { coef: LN_10 * c0, exp: 0.0 },
                PowerTerm { coef: LN_10 * LN_10 * c1, exp: 1.0 },
            ]),
            Kind::Custom(f) => {
                let inner = f.0.clone();
                Kind::Custom(CustomFn(Arc::new(move |y| {
                    let x = 10f64.powf(y);
                    LN_10 * x * inner(x)
                })))
            }
            _ => return None,
        };
        // Stationary points of g are the multiplier's, mapped through log10.
        let stationary: Vec<f64> = self
            .multiplier()
            .map(|m| m.stationary.iter().map(|x| x.log10()).collect())
            .unwrap_or_default();
        Some(Segment { lo, hi, kind, stationary: Vec::new() }.with_stationary(stationary))
    }

    /// Dilation `(1/λ)·f(x/λ)`, exact for every closed form.
    pub fn dilate(&self, lambda: f64) -> Option<Segment> {
        let kind = match &self.kind {
            Kind::PowerSum(terms) => Kind::PowerSum(
                terms
                    .iter()
                    .map(|t| PowerTerm {
                        coef: t.coef * lambda.powf(-1.0 - t.exp),
                        exp: t.exp,
                    })
                    .collect(),
            ),
            Kind::ExpSum(terms) => Kind::ExpSum(
                terms
                    .iter()
                    .map(|t| ExpTerm {
                        coef: t.coef / if t.linear { lambda * lambda } else { lambda },
                        rate: t.rate / lambda,
                        linear: t.linear,
                    })
                    .collect(),
            ),
            Kind::Gaussian { mean, sd, weight } => Kind::Gaussian {
                mean: mean * lambda,
                sd: sd * lambda,
                weight: *weight,
            },
            Kind::LogNormal { mu, sigma, weight } => Kind::LogNormal {
                mu: mu + lambda.ln(),
                sigma: *sigma,
                weight: *weight,
            },
            Kind::LogOverX { c0, c1 } => Kind::LogOverX {
                c0: c0 - c1 * lambda.ln(),
                c1: *c1,
            },
            Kind::LogAffine { .. } => return None,
            Kind::PushExp { log_rate, terms } => Kind::PushExp {
                log_rate: log_rate / lambda,
                terms: terms.clone(),
            },
            Kind::Custom(f) => {
                let inner = f.0.clone();
                Kind::Custom(CustomFn(Arc::new(move |x| inner(x / lambda) / lambda)))
            }
        };
        Some(Segment {
            lo: self.lo * lambda,
            hi: self.hi * lambda,
            kind,
            stationary: self.stationary.iter().map(|p| p * lambda).collect(),
        })
    }
}

/// Interior derivative zeros, found in closed form where the derivative has
/// at most two nonzero terms and by a sign scan otherwise.
pub fn stationary_points(seg: &Segment) -> Vec<f64> {
    let mut pts: Vec<f64> = match &seg.kind {
        Kind::PowerSum(terms) => {
            let d: Vec<PowerTerm> = terms
                .iter()
                .filter(|t| t.exp != 0.0 && t.coef != 0.0)
                .map(|t| PowerTerm { coef: t.coef * t.exp, exp: t.exp - 1.0 })
                .collect();
            match d.len() {
                0 | 1 => Vec::new(),
                2 => power_pair_root(&d[0], &d[1]).into_iter().collect(),
                _ => scan_roots(seg),
            }
        }
        Kind::ExpSum(terms) => {
            let active: Vec<&ExpTerm> = terms.iter().filter(|t| t.coef != 0.0).collect();
            match active.len() {
                1 => {
                    let t = active[0];
                    if t.linear && t.rate != 0.0 {
                        vec![-1.0 / t.rate]
                    } else {
                        Vec::new()
                    }
                }
                2 if !active[0].linear && !active[1].linear => {
                    // c1·r1·e^{r1 x} + c2·r2·e^{r2 x} = 0
                    let (a, b) = (active[0], active[1]);
                    let ratio = -(b.coef * b.rate) / (a.coef * a.rate);
                    if ratio > 0.0 && a.rate != b.rate {
                        vec![ratio.ln() / (a.rate - b.rate)]
                    } else {
                        Vec::new()
                    }
                }
                0 => Vec::new(),
                _ => scan_roots(seg),
            }
        }
        Kind::Gaussian { mean, .. } => vec![*mean],
        Kind::LogNormal { mu, sigma, .. } => vec![(mu - sigma * sigma).exp()],
        Kind::LogOverX { c0, c1 } => {
            if *c1 == 0.0 {
                Vec::new()
            } else {
                vec![((c1 - c0) / c1).exp()]
            }
        }
        Kind::LogAffine { .. } => Vec::new(),
        Kind::PushExp { log_rate, terms } => {
            let active: Vec<&PushTerm> = terms.iter().filter(|t| t.coef != 0.0).collect();
            match active.len() {
                1 => {
                    let t = active[0];
                    if t.rate < 0.0 {
                        // 1 + rate·e^{γy} = 0
                        vec![(-1.0 / t.rate).ln() / log_rate]
                    } else {
                        Vec::new()
                    }
                }
                0 => Vec::new(),
                _ => scan_roots(seg),
            }
        }
        Kind::Custom(_) => Vec::new(),
    };
    pts.retain(|p| p.is_finite() && *p > seg.lo && *p < seg.hi);
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts
}

fn power_pair_root(a: &PowerTerm, b: &PowerTerm) -> Option<f64> {
    // c_a x^{e_a} = −c_b x^{e_b}  ⇒  x = (−c_b/c_a)^{1/(e_a − e_b)}
    if a.exp == b.exp {
        return None;
    }
    let ratio = -b.coef / a.coef;
    if ratio <= 0.0 {
        return None;
    }
    Some(ratio.powf(1.0 / (a.exp - b.exp)))
}

/// Sign-scan fallback on a finite interval.
fn scan_roots(seg: &Segment) -> Vec<f64> {
    if !seg.lo.is_finite() || !seg.hi.is_finite() {
        return Vec::new();
    }
    sign_change_roots(|x| seg.kind.deriv(x), seg.lo, seg.hi, 512)
}

/// Zeros of `f` located by sign changes over `samples` panels plus bisection.
pub fn sign_change_roots(f: impl Fn(f64) -> f64, a: f64, b: f64, samples: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    let step = (b - a) / samples as f64;
    let mut x_prev = a;
    let mut f_prev = f(a);
    for i in 1..=samples {
        let x = if i == samples { b } else { a + step * i as f64 };
        let fx = f(x);
        if f_prev == 0.0 {
            roots.push(x_prev);
        } else if fx != 0.0 && f_prev.signum() != fx.signum() {
            let (mut lo, mut hi) = (x_prev, x);
            let mut flo = f_prev;
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if flo.signum() == fm.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        x_prev = x;
        f_prev = fx;
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-13 * (1.0 + a.abs()));
    roots
}
