//! Semi-empirical far-field plume model.
//!
//! The ion current density at distance `r` and angle `phi` off thruster
//! centerline is the sum of three populations: main beam ions and
//! inelastically scattered ions, each Gaussian in angle, plus slow
//! charge-exchange (CEX) ions spread uniformly over the hemisphere. All
//! three decay with the inverse square of distance.
//!
//! Charge exchange against facility neutrals attenuates the beam: a
//! fraction `exp(-n_n sigma_cex r)` of the ion current survives at radius
//! `r`, and the remainder feeds the CEX population. The surviving current
//! is split between the main (fraction `c0`) and scattered populations.
//! Each Gaussian population is normalized over the hemisphere so that the
//! integrated current recovers the beam current exactly.
//!
//! The divergence half-angle follows from the ratio of axial to total
//! beam current, `cos(phi_d) = I_Bz / I_B`, and corrects thrust by
//! `T_c = T cos(phi_d)`.

use crate::error::{Error, Result};
use crate::math::adaptive_simpson;
use crate::params::PlumeGroup;

/// Default CEX cross section for xenon-class propellants (m^2). Fixed
/// model constant, not a calibration parameter; its effect trades off
/// against the calibrated plume density parameters.
pub const DEFAULT_CEX_CROSS_SECTION: f64 = 5.5e-19;

/// Smallest usable divergence angle (rad).
const THETA_MIN: f64 = 1e-6;

/// Slack allowed outside (0, pi/2) before a divergence angle is an error
/// rather than a clamp (rad).
const THETA_CLAMP_TOL: f64 = 0.15;

/// Plume model parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlumeParams {
    /// Main-to-scattered current ratio, in [0, 1].
    pub c0: f64,
    /// Main-to-scattered divergence angle ratio.
    pub c1: f64,
    /// Slope of divergence angle vs. pressure (rad/Pa).
    pub c2: f64,
    /// Divergence angle intercept (rad).
    pub c3: f64,
    /// Slope of plume neutral density vs. pressure (m^-3/Pa).
    pub c4: f64,
    /// Plume neutral density intercept (m^-3).
    pub c5: f64,
    /// CEX cross section (m^2).
    pub cex_cross_section: f64,
}

impl PlumeParams {
    pub fn from_group(g: &PlumeGroup, cex_cross_section: f64) -> Self {
        PlumeParams {
            c0: g.c0,
            c1: g.c1,
            c2: g.c2,
            c3: g.c3,
            c4: g.c4,
            c5: g.c5,
            cex_cross_section,
        }
    }
}

/// Plume neutral density (m^-3) as a linear function of background pressure.
pub fn background_neutral_density(params: &PlumeParams, p_b: f64) -> f64 {
    params.c4 * p_b + params.c5
}

/// Divergence half-angle of the scattered population, `c2 * P_B + c3`,
/// clamped into (0, pi/2). Values farther outside than the clamp
/// tolerance are a parameter-range error.
pub fn divergence_half_angle(params: &PlumeParams, p_b: f64) -> Result<f64> {
    let raw = params.c2 * p_b + params.c3;
    let clamped = raw.clamp(THETA_MIN, std::f64::consts::FRAC_PI_2 - THETA_MIN);
    if (raw - clamped).abs() > THETA_CLAMP_TOL {
        return Err(Error::ParameterRange(format!(
            "divergence angle {raw:.4} rad is outside (0, pi/2) by more than {THETA_CLAMP_TOL} rad"
        )));
    }
    Ok(clamped)
}

/// Hemispherical normalizer `2 pi * int_0^{pi/2} exp(-(phi/theta)^2) sin(phi) dphi`.
///
/// Computed with the substitution `x = phi / theta` so narrow Gaussians
/// are resolved to full precision.
fn gaussian_normalizer(theta: f64) -> f64 {
    let upper = (std::f64::consts::FRAC_PI_2 / theta).min(9.0);
    let integral = adaptive_simpson(
        &|x: f64| (-x * x).exp() * (theta * x).sin(),
        0.0,
        upper,
        1e-15,
        60,
    );
    2.0 * std::f64::consts::PI * theta * integral
}

/// Axial-projection integral `2 pi * int exp(-(phi/theta)^2) cos(phi) sin(phi) dphi`.
fn gaussian_axial_integral(theta: f64) -> f64 {
    let upper = (std::f64::consts::FRAC_PI_2 / theta).min(9.0);
    let integral = adaptive_simpson(
        &|x: f64| (-x * x).exp() * (theta * x).cos() * (theta * x).sin(),
        0.0,
        upper,
        1e-15,
        60,
    );
    2.0 * std::f64::consts::PI * theta * integral
}

/// Angular plume shape for fixed parameters and background pressure.
///
/// Precomputes the population angles, hemispherical normalizers, and the
/// plume neutral density so repeated evaluations over sweeps are cheap.
#[derive(Debug, Clone)]
pub struct PlumeSolution {
    params: PlumeParams,
    theta_main: f64,
    theta_scatter: f64,
    norm_main: f64,
    norm_scatter: f64,
    neutral_density: f64,
}

impl PlumeSolution {
    pub fn new(params: &PlumeParams, p_b: f64) -> Result<Self> {
        if p_b < 0.0 {
            return Err(Error::Domain(format!("background pressure must be >= 0, got {p_b}")));
        }
        let theta_d = divergence_half_angle(params, p_b)?;
        let theta_main = (params.c1 * theta_d).max(THETA_MIN);
        Ok(PlumeSolution {
            params: *params,
            theta_main,
            theta_scatter: theta_d,
            norm_main: gaussian_normalizer(theta_main),
            norm_scatter: gaussian_normalizer(theta_d),
            neutral_density: background_neutral_density(params, p_b),
        })
    }

    /// Scattered-population divergence half-angle (rad).
    pub fn theta_scatter(&self) -> f64 {
        self.theta_scatter
    }

    /// Fraction of beam current surviving charge exchange at radius `r`.
    fn cex_survival(&self, r: f64) -> f64 {
        (-self.neutral_density * self.params.cex_cross_section * r).exp()
    }

    /// Ion current density (A/m^2) at distance `r` (m) and angle `phi`
    /// (rad, 0 = centerline) for beam current `i_b` (A).
    pub fn current_density(&self, r: f64, phi: f64, i_b: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("plume radius must be positive, got {r}")));
        }
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&phi) {
            return Err(Error::Domain(format!("plume angle must be in [0, pi/2], got {phi}")));
        }
        let survive = self.cex_survival(r);
        let i_main = i_b * survive * self.params.c0;
        let i_scatter = i_b * survive * (1.0 - self.params.c0);
        let i_cex = i_b * (1.0 - survive);
        let r2 = r * r;
        let g_main = (-(phi / self.theta_main) * (phi / self.theta_main)).exp();
        let g_scatter = (-(phi / self.theta_scatter) * (phi / self.theta_scatter)).exp();
        Ok(i_main / (r2 * self.norm_main) * g_main
            + i_scatter / (r2 * self.norm_scatter) * g_scatter
            + i_cex / (2.0 * std::f64::consts::PI * r2))
    }

    /// Divergence half-angle (rad) of the full three-population
    /// distribution evaluated at radius `r`, from the axial-to-total
    /// current ratio. Independent of beam current.
    pub fn divergence_angle(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("plume radius must be positive, got {r}")));
        }
        let survive = self.cex_survival(r);
        let f_main = survive * self.params.c0;
        let f_scatter = survive * (1.0 - self.params.c0);
        let f_cex = 1.0 - survive;
        // uniform hemisphere projects with int cos sin / int sin = 1/2
        let cos_phi_d = f_main * gaussian_axial_integral(self.theta_main) / self.norm_main
            + f_scatter * gaussian_axial_integral(self.theta_scatter) / self.norm_scatter
            + f_cex * 0.5;
        Ok(cos_phi_d.clamp(-1.0, 1.0).acos())
    }
}

/// One-shot ion current density evaluation; see [`PlumeSolution`] for sweeps.
pub fn current_density(r: f64, phi: f64, i_b: f64, p_b: f64, params: &PlumeParams) -> Result<f64> {
    PlumeSolution::new(params, p_b)?.current_density(r, phi, i_b)
}

/// Divergence half-angle (rad) of a sampled angular current profile
/// `j(angles)` via `cos(phi_d) = I_Bz / I_B`, with both currents computed
/// by trapezoidal quadrature over the hemisphere. Invariant to overall
/// scaling of `j` and to the sweep radius.
pub fn effective_divergence(angles: &[f64], j: &[f64]) -> Result<f64> {
    if angles.len() != j.len() || angles.len() < 2 {
        return Err(Error::Domain(format!(
            "angular profile needs matching angle/value arrays of length >= 2, got {}/{}",
            angles.len(),
            j.len()
        )));
    }
    let mut total = 0.0;
    let mut axial = 0.0;
    for w in 0..angles.len() - 1 {
        let (a0, a1) = (angles[w], angles[w + 1]);
        let da = a1 - a0;
        if !(da > 0.0) {
            return Err(Error::Domain("angles must be strictly increasing".to_string()));
        }
        let f0 = j[w] * a0.sin();
        let f1 = j[w + 1] * a1.sin();
        total += 0.5 * (f0 + f1) * da;
        axial += 0.5 * (f0 * a0.cos() + f1 * a1.cos()) * da;
    }
    if total <= 0.0 {
        return Err(Error::UndefinedDivergence(
            "integrated beam current is zero".to_string(),
        ));
    }
    Ok((axial / total).clamp(-1.0, 1.0).acos())
}

/// Thrust corrected for beam divergence: `T cos(phi_d)`.
pub fn corrected_thrust(thrust: f64, phi_d: f64) -> f64 {
    debug_assert!((0.0..std::f64::consts::FRAC_PI_2).contains(&phi_d));
    thrust * phi_d.cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn base_params() -> PlumeParams {
        PlumeParams {
            c0: 0.76,
            c1: 0.32,
            c2: -12.36,
            c3: 0.21,
            c4: 10f64.powf(20.33),
            c5: 10f64.powf(14.33),
            cex_cross_section: DEFAULT_CEX_CROSS_SECTION,
        }
    }

    #[test]
    fn neutral_density_intercept_and_linearity() {
        let p = base_params();
        assert_eq!(background_neutral_density(&p, 0.0), p.c5);
        let pb = crate::constants::torr_to_pa(1e-5);
        let expected = p.c5 + 10f64.powf(20.33) * pb;
        let got = background_neutral_density(&p, pb);
        assert!((got - expected).abs() / expected < 1e-14);
        // n(2P) - n(P) = c4 * P
        let d = background_neutral_density(&p, 2.0 * pb) - got;
        assert!((d - p.c4 * pb).abs() / (p.c4 * pb) < 1e-12);
    }

    #[test]
    fn single_population_on_axis() {
        // sigma_cex = 0 and c0 = 1 collapse to the main Gaussian alone
        let mut p = base_params();
        p.cex_cross_section = 0.0;
        p.c0 = 1.0;
        let sol = PlumeSolution::new(&p, 0.0).unwrap();
        let i_b = 3.0;
        let r = 1.0;
        let j0 = sol.current_density(r, 0.0, i_b).unwrap();
        let expected = i_b / (r * r * gaussian_normalizer(p.c1 * p.c3));
        assert!((j0 - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn inverse_square_decay_without_cex() {
        let mut p = base_params();
        p.cex_cross_section = 0.0;
        let sol = PlumeSolution::new(&p, 1e-3).unwrap();
        for phi in [0.0, 0.3, 1.0] {
            let j1 = sol.current_density(1.0, phi, 2.5).unwrap();
            let j2 = sol.current_density(2.0, phi, 2.5).unwrap();
            assert!((j2 - j1 / 4.0).abs() / j1 < 1e-12);
        }
    }

    /// Independent oracle: composite Simpson at high resolution over the
    /// hemisphere, no shared code with the model's normalizers.
    fn hemispherical_current_oracle(sol: &PlumeSolution, r: f64, i_b: f64) -> f64 {
        let n = 40_000usize; // even
        let h = std::f64::consts::FRAC_PI_2 / n as f64;
        let f = |phi: f64| sol.current_density(r, phi, i_b).unwrap() * phi.sin();
        let mut acc = f(0.0) + f(std::f64::consts::FRAC_PI_2);
        for k in 1..n {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(k as f64 * h);
        }
        2.0 * std::f64::consts::PI * r * r * acc * h / 3.0
    }

    #[test]
    fn hemispherical_integral_recovers_beam_current() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let p = PlumeParams {
                c0: rng.gen_range(0.0..1.0),
                c1: rng.gen_range(0.1..0.9),
                c2: rng.gen_range(-15.0..15.0),
                c3: rng.gen_range(0.2..std::f64::consts::FRAC_PI_2),
                c4: 10f64.powf(rng.gen_range(18.0..22.0)),
                c5: 10f64.powf(rng.gen_range(14.0..18.0)),
                cex_cross_section: DEFAULT_CEX_CROSS_SECTION,
            };
            let p_b = rng.gen_range(0.0..7e-3);
            let sol = match PlumeSolution::new(&p, p_b) {
                Ok(s) => s,
                Err(_) => continue, // divergence angle out of range for this draw
            };
            let i_b = rng.gen_range(0.5..20.0);
            let r = rng.gen_range(0.5..2.0);
            let total = hemispherical_current_oracle(&sol, r, i_b);
            assert!(
                (total - i_b).abs() / i_b < 1e-6,
                "recovered {total}, want {i_b} (c1={}, c3={})",
                p.c1,
                p.c3
            );
        }
    }

    #[test]
    fn monotone_angular_decay() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..50 {
            let p = PlumeParams {
                c0: rng.gen_range(0.0..1.0),
                c1: rng.gen_range(0.1..0.9),
                c2: rng.gen_range(-15.0..15.0),
                c3: rng.gen_range(0.2..std::f64::consts::FRAC_PI_2),
                c4: 10f64.powf(rng.gen_range(18.0..22.0)),
                c5: 10f64.powf(rng.gen_range(14.0..18.0)),
                cex_cross_section: DEFAULT_CEX_CROSS_SECTION,
            };
            let sol = match PlumeSolution::new(&p, 2e-3) {
                Ok(s) => s,
                Err(_) => continue,
            };
            let mut prev = f64::INFINITY;
            for k in 0..=90 {
                let phi = k as f64 / 90.0 * std::f64::consts::FRAC_PI_2;
                let j = sol.current_density(1.0, phi, 4.0).unwrap();
                assert!(j <= prev * (1.0 + 1e-12), "profile not monotone at {phi}");
                prev = j;
            }
        }
    }

    #[test]
    fn pressure_trend_sign_follows_c2() {
        let mut p = base_params();
        p.c2 = -12.0;
        let lo = divergence_half_angle(&p, 1e-3).unwrap();
        let hi = divergence_half_angle(&p, 3e-3).unwrap();
        assert!(hi < lo);
        p.c2 = 12.0;
        let lo = divergence_half_angle(&p, 1e-3).unwrap();
        let hi = divergence_half_angle(&p, 3e-3).unwrap();
        assert!(hi > lo);
    }

    #[test]
    fn divergence_angle_clamps_and_errors() {
        let mut p = base_params();
        p.c3 = std::f64::consts::FRAC_PI_2;
        p.c2 = 15.0;
        // slightly above pi/2: clamped
        assert!(divergence_half_angle(&p, 5e-3).is_ok());
        // far above pi/2: error
        assert!(divergence_half_angle(&p, 2e-2).is_err());
    }

    #[test]
    fn uniform_profile_divergence_is_sixty_degrees() {
        // analytic: int cos sin = 1/2, int sin = 1 -> cos(phi_d) = 1/2
        let n = 2000;
        let angles: Vec<f64> =
            (0..=n).map(|k| k as f64 / n as f64 * std::f64::consts::FRAC_PI_2).collect();
        let j = vec![7.5; n + 1];
        let phi_d = effective_divergence(&angles, &j).unwrap();
        assert!((phi_d.cos() - 0.5).abs() < 1e-6, "cos = {}", phi_d.cos());
    }

    #[test]
    fn narrow_profile_divergence_vanishes() {
        let n = 4000;
        let theta = 1e-3;
        let angles: Vec<f64> =
            (0..=n).map(|k| k as f64 / n as f64 * std::f64::consts::FRAC_PI_2).collect();
        let j: Vec<f64> = angles.iter().map(|&a| (-(a / theta) * (a / theta)).exp()).collect();
        let phi_d = effective_divergence(&angles, &j).unwrap();
        assert!(phi_d < 0.05, "phi_d = {phi_d}");
    }

    #[test]
    fn effective_divergence_scale_invariant() {
        let sol = PlumeSolution::new(&base_params(), 2e-3).unwrap();
        let angles: Vec<f64> =
            (0..=360).map(|k| k as f64 / 360.0 * std::f64::consts::FRAC_PI_2).collect();
        let j: Vec<f64> =
            angles.iter().map(|&a| sol.current_density(1.0, a, 4.0).unwrap()).collect();
        let j10: Vec<f64> = j.iter().map(|v| v * 10.0).collect();
        let d1 = effective_divergence(&angles, &j).unwrap();
        let d2 = effective_divergence(&angles, &j10).unwrap();
        assert!((d1 - d2).abs() < 1e-14);
        assert!(d1 > 0.0 && d1 < std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn divergence_of_zero_profile_is_error() {
        let angles = [0.0, 0.5, 1.0];
        let j = [0.0, 0.0, 0.0];
        assert!(matches!(
            effective_divergence(&angles, &j),
            Err(Error::UndefinedDivergence(_))
        ));
    }

    #[test]
    fn corrected_thrust_fixtures() {
        assert_eq!(corrected_thrust(0.08, 0.0), 0.08);
        let t60 = corrected_thrust(0.08, std::f64::consts::FRAC_PI_3);
        assert!((t60 - 0.04).abs() < 1e-15);
        let t = corrected_thrust(0.080, 0.4);
        assert!((t - 0.080 * 0.4f64.cos()).abs() < 1e-15);
    }

    #[test]
    fn analytic_divergence_matches_profile_divergence() {
        // the population-integral form and the sampled-profile form agree
        let sol = PlumeSolution::new(&base_params(), 2e-3).unwrap();
        let analytic = sol.divergence_angle(1.0).unwrap();
        let n = 20_000;
        let angles: Vec<f64> =
            (0..=n).map(|k| k as f64 / n as f64 * std::f64::consts::FRAC_PI_2).collect();
        let j: Vec<f64> =
            angles.iter().map(|&a| sol.current_density(1.0, a, 4.0).unwrap()).collect();
        let sampled = effective_divergence(&angles, &j).unwrap();
        assert!((analytic - sampled).abs() < 1e-5, "{analytic} vs {sampled}");
    }
}
