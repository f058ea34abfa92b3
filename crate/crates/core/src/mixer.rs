//! Scale mixing, the dilation experiment, and the roulette limit.
//!
//! Scale mixing: `X = 10^U·X₀` with `U` uniform on `[0, 1]` independent of
//! `X₀` has exactly Benford digits, whatever the law of `X₀`. The exact route
//! here needs a density for `Y₀ = log₁₀ X₀`; the Monte Carlo route covers
//! atomic `X₀` as well, which is the full strength of the statement.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::density::quad::adaptive_simpson_with_knots;
use crate::density::{DensityModel, MantissaProfile};
use crate::digitcore::{digit_interval, first_digit, DigitDistribution};
use crate::{Error, Result};

/// The dilation family `g_λ(y) = (1/λ)·g(y/λ)` — the density of `λY`.
#[derive(Debug, Clone)]
pub struct DilationFamily {
    base: DensityModel,
    lambda: f64,
}

impl DilationFamily {
    pub fn new(base: DensityModel, lambda: f64) -> Result<DilationFamily> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidMix(format!(
                "dilation scale must be positive, got {lambda}"
            )));
        }
        Ok(DilationFamily { base, lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn base(&self) -> &DensityModel {
        &self.base
    }

    /// The dilated density, normalization re-validated.
    pub fn density(&self) -> Result<DensityModel> {
        self.base.dilate(self.lambda)
    }
}

/// How a mixed digit distribution was produced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MixMethod {
    ExactIntegration,
    MonteCarlo { n: u64, seed: u64 },
}

/// Digit distribution of a scale mixture, with sampling metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MixResult {
    pub digit_dist: DigitDistribution,
    pub method: MixMethod,
    /// Per-digit standard error √(p(1−p)/N) when Monte Carlo.
    pub std_err: Option<[f64; 9]>,
    /// Draws discarded because the sampler produced a non-positive value.
    pub n_rejected: u64,
}

/// Exact digit law of `X = 10^U·X₀` by the theorem's Fubini route.
///
/// With `a = log k`, `b = log(k+1)` the digit-k probability is the sum over
/// `n` of `P(u + Y₀ ∈ [n+a, n+b))`; each term is the u-integral of an exact
/// cdf difference of `Y₀`. Windows are certified by the tail mass of `Y₀` and
/// the inner integrals are pinned at the projections of the density's feature
/// points, then refined adaptively. The result equals the Benford vector up
/// to `tol` regardless of the input law.
pub fn scale_mix_exact(y0_law: &DensityModel, tol: f64) -> Result<MixResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidMix(format!("tolerance must be positive, got {tol}")));
    }
    // Window on Y₀ holding all but tol/2 of the mass.
    let (w_min, w_max, _) = crate::density::window_for(y0_law, 0.5 * tol)?;
    let features: Vec<f64> = y0_law
        .segments()
        .iter()
        .flat_map(|s| s.feature_points())
        .filter(|p| p.is_finite())
        .collect();

    let window = (w_max - w_min + 5) as f64;
    let cell_tol = tol / (4.0 * window);
    let mut p = [0.0; 9];
    for k in 1..=9u8 {
        let (a, b) = digit_interval(k)?;
        let mut total = 0.0;
        for n in (w_min - 2)..=(w_max + 2) {
            let shift = n as f64;
            let integrand =
                |u: f64| y0_law.cdf(shift + b - u) - y0_law.cdf(shift + a - u);
            // transitions in u sit at n + {a, b} − (feature of Y₀)
            let mut knots: Vec<f64> = features
                .iter()
                .flat_map(|y| [shift + a - y, shift + b - y])
                .collect();
            total += adaptive_simpson_with_knots(&integrand, 0.0, 1.0, &mut knots, cell_tol);
        }
        p[(k - 1) as usize] = total;
    }
    let digit_dist = DigitDistribution::with_tolerance(p, tol + 1e-9)?;
    Ok(MixResult {
        digit_dist,
        method: MixMethod::ExactIntegration,
        std_err: None,
        n_rejected: 0,
    })
}

/// Monte Carlo digit law of `X = 10^U·X₀` from a sampler of positive reals.
///
/// Draws `n` pairs `(u, x₀)` from a seeded ChaCha stream (u first, then x₀,
/// in a fixed order), so frequencies are bit-identical across runs for a
/// fixed seed. Non-positive sampler output is rejected per draw and counted.
pub fn scale_mix_mc<F>(mut x0_sampler: F, n: u64, seed: u64) -> Result<MixResult>
where
    F: FnMut(&mut ChaCha8Rng) -> f64,
{
    if n < 10_000 {
        return Err(Error::InvalidMix(format!("need at least 10⁴ samples, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [0u64; 9];
    let mut rejected = 0u64;
    for _ in 0..n {
        let u: f64 = rng.random();
        let x0 = x0_sampler(&mut rng);
        if !(x0 > 0.0) || !x0.is_finite() {
            rejected += 1;
            continue;
        }
        match first_digit(10f64.powf(u) * x0) {
            Ok(d) => counts[(d - 1) as usize] += 1,
            Err(_) => rejected += 1,
        }
    }
    let accepted = n - rejected;
    if accepted == 0 {
        return Err(Error::InvalidMix("sampler produced no positive values".into()));
    }
    let mut p = [0.0; 9];
    let mut std_err = [0.0; 9];
    for i in 0..9 {
        p[i] = counts[i] as f64 / accepted as f64;
        std_err[i] = (p[i] * (1.0 - p[i]) / accepted as f64).sqrt();
    }
    Ok(MixResult {
        digit_dist: DigitDistribution::with_tolerance(p, 1e-12)?,
        method: MixMethod::MonteCarlo { n, seed },
        std_err: Some(std_err),
        n_rejected: rejected,
    })
}

/// The pairing `⟨φ, g_λ⟩ = ∫ (Σₙ 1_{[n,n+z]})(y)·(1/λ)·g(y/λ) dy`, computed
/// as `Σₙ [G((n+z)/λ) − G(n/λ)]` over a tol-certified window. By the change
/// of variable this equals `⟨ψ_λ, g⟩`; as `λ → ∞` it converges to `z`.
pub fn dilation_pairing(g: &DensityModel, z: f64, lambda: f64, tol: f64) -> Result<f64> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::InvalidMix(format!("need 0 < z < 1, got {z}")));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidMix(format!("need λ > 0, got {lambda}")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidMix(format!("tolerance must be positive, got {tol}")));
    }
    // [-A, A] carries 1 − tol of g's mass; windows live at scale λ.
    let a_lo = g.quantile(0.5 * tol).abs();
    let a_hi = g.quantile(1.0 - 0.5 * tol).abs();
    let reach = (lambda * a_lo.max(a_hi)).ceil() as i64 + 1;
    let mut sum = 0.0;
    for n in -reach..=reach {
        sum += g.mass_between(n as f64 / lambda, (n as f64 + z) / lambda);
    }
    Ok(sum)
}

/// Probability that a roulette ball lands on black when the circle density is
/// ḡ and the circle is cut into `2n` equal arcs, black first:
/// `Σ_{k even} [Ḡ((k+1)/(2n)) − Ḡ(k/(2n))]`. Tends to 1/2 as `n → ∞` for any
/// profile of finite variation.
pub fn roulette_black_probability(profile: &MantissaProfile, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidMix("need at least one arc pair".into()));
    }
    let arcs = 2 * n as u64;
    let mut black = 0.0;
    for k in (0..arcs).step_by(2) {
        let lo = k as f64 / arcs as f64;
        let hi = (k + 1) as f64 / arcs as f64;
        black += profile.gbar_cdf(hi) - profile.gbar_cdf(lo);
    }
    Ok(black)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::stack;
    use crate::laws::{uniform_density, LawSpec};

    #[test]
    fn uniform_y0_mixes_exactly() {
        // mant(u + Y₀) is uniform when Y₀ is uniform on [0, 1]
        let y0 = uniform_density(0.0, 1.0).unwrap();
        // shift into log space: Y₀ uniform on [0,1] is already a valid g
        let mix = scale_mix_exact(&y0, 1e-10).unwrap();
        let benford = crate::digitcore::benford_vector();
        assert!(mix.digit_dist.max_abs_dev(&benford) < 1e-10);
    }

    #[test]
    fn mc_is_reproducible_and_counts_rejections() {
        let sampler = |rng: &mut ChaCha8Rng| {
            // every third draw is non-positive
            let v: f64 = rng.random();
            if v < 0.33 {
                -1.0
            } else {
                v
            }
        };
        let a = scale_mix_mc(sampler, 20_000, 7).unwrap();
        let b = scale_mix_mc(sampler, 20_000, 7).unwrap();
        assert_eq!(a.digit_dist.as_array(), b.digit_dist.as_array());
        assert_eq!(a.n_rejected, b.n_rejected);
        assert!(a.n_rejected > 5_000);
        assert!(scale_mix_mc(|_| 1.0, 100, 0).is_err());
    }

    #[test]
    fn pairing_identities() {
        // λ = 1, g uniform on [0, 1]: a single window term of length z
        let g = uniform_density(0.0, 1.0).unwrap();
        let v = dilation_pairing(&g, 0.3, 1.0, 1e-12).unwrap();
        assert!((v - 0.3).abs() < 1e-12);
        assert!(dilation_pairing(&g, 0.0, 1.0, 1e-9).is_err());
        assert!(dilation_pairing(&g, 0.3, -1.0, 1e-9).is_err());
    }

    #[test]
    fn roulette_closed_forms() {
        // ḡ ≡ 1 gives exactly 1/2 for every n
        let g = LawSpec::Reciprocal { p: 0, q: 1 }.g_model().unwrap();
        let profile = stack(&g, 1e-12).unwrap();
        for n in [1, 3, 10, 47] {
            let black = roulette_black_probability(&profile, n).unwrap();
            assert!((black - 0.5).abs() < 1e-12, "n = {n}");
        }
        // ḡ(z) = 2z: Ḡ(z) = z², so n = 1 gives Ḡ(1/2) = 1/4
        let (g2, _) =
            crate::density::DensityModel::piecewise_linear(&[0.0, 1.0], &[0.0, 2.0]).unwrap();
        let profile2 = stack(&g2, 1e-12).unwrap();
        assert!((roulette_black_probability(&profile2, 1).unwrap() - 0.25).abs() < 1e-12);
        // n = 50: the exact closed-form sum Σ ((2k+1)² − (2k)²)/100² is 0.495
        let b50 = roulette_black_probability(&profile2, 50).unwrap();
        assert!((b50 - 0.495).abs() < 1e-12);
        assert!((b50 - 0.5).abs() < 0.01);
    }
}
