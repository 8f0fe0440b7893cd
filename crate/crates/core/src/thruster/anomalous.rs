//! Anomalous cross-field electron transport profile.
//!
//! The anomalous collision frequency obeys Bohm-like scaling,
//! `nu_anom = omega_ce * inv_hall(z)`, with the inverse Hall parameter
//! following a plateau-minus-Gaussian shape: a localized reduction in
//! transport (the "barrier") at a specified axial station. Increasing
//! background pressure slides the barrier upstream through a logistic
//! shift that saturates at both pressure extremes, so the profile cannot
//! wander arbitrarily far in either direction.

use crate::error::{Error, Result};
use crate::params::ThrusterGroup;

/// Pressure at the center of the logistic shift (Pa). Fixed model
/// constant: 25 microTorr.
pub const SHIFT_CENTER_PRESSURE: f64 = 25.0 * 1.333_22e-4;

/// Anomalous transport parameters. Axial quantities are normalized by
/// the discharge channel length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnomParams {
    /// Plateau inverse Hall parameter.
    pub alpha_anom: f64,
    /// Barrier depth, in [0, 1].
    pub beta_anom: f64,
    /// Barrier center (channel lengths).
    pub z_anom: f64,
    /// Barrier width (channel lengths).
    pub l_anom: f64,
    /// Pressure-shift magnitude (channel lengths).
    pub dz_anom: f64,
    /// Logistic shift center pressure (Pa).
    pub p0: f64,
}

impl AnomParams {
    pub fn from_group(g: &ThrusterGroup) -> Self {
        AnomParams {
            alpha_anom: g.alpha_anom,
            beta_anom: g.beta_anom,
            z_anom: g.z_anom,
            l_anom: g.l_anom,
            dz_anom: g.dz_anom,
            p0: SHIFT_CENTER_PRESSURE,
        }
    }
}

/// Upstream displacement of the transport barrier in channel lengths.
///
/// Logistic in pressure, exactly zero at `P_B = 0`, saturating at
/// `dz_anom * (1 - 1/(1+e^2))` as pressure grows.
pub fn pressure_shift_normalized(p: &AnomParams, p_b: f64) -> f64 {
    let logistic = 1.0 / (1.0 + (-2.0 * (p_b / p.p0 - 1.0)).exp());
    let offset = 1.0 / (1.0 + 2f64.exp());
    p.dz_anom * (logistic - offset)
}

/// Upstream displacement in meters for a channel of length `channel_length`.
pub fn pressure_shift(p: &AnomParams, p_b: f64, channel_length: f64) -> f64 {
    pressure_shift_normalized(p, p_b) * channel_length
}

/// Inverse Hall parameter at normalized axial position `z_hat`
/// (channel lengths) and background pressure `p_b` (Pa).
pub fn anomalous_inverse_hall(p: &AnomParams, z_hat: f64, p_b: f64) -> Result<f64> {
    if !(p.l_anom > 0.0) {
        return Err(Error::Domain(format!(
            "anomalous barrier width must be positive at evaluation time, got {}",
            p.l_anom
        )));
    }
    let center = p.z_anom - pressure_shift_normalized(p, p_b);
    let x = (z_hat - center) / p.l_anom;
    Ok(p.alpha_anom * (1.0 - p.beta_anom * (-x * x).exp()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::microtorr_to_pa;

    fn params() -> AnomParams {
        AnomParams {
            alpha_anom: 0.06,
            beta_anom: 0.99,
            z_anom: 1.14,
            l_anom: 0.43,
            dz_anom: 0.33,
            p0: microtorr_to_pa(25.0),
        }
    }

    #[test]
    fn trough_value_at_center_zero_pressure() {
        let p = params();
        let v = anomalous_inverse_hall(&p, p.z_anom, 0.0).unwrap();
        assert_eq!(v, p.alpha_anom * (1.0 - p.beta_anom));
    }

    #[test]
    fn plateau_far_from_barrier() {
        let p = params();
        for z in [-50.0, 60.0] {
            let v = anomalous_inverse_hall(&p, z, 0.0).unwrap();
            assert!((v - p.alpha_anom).abs() < 1e-15 * p.alpha_anom.max(1.0));
        }
    }

    #[test]
    fn shift_vanishes_at_zero_pressure() {
        let p = params();
        assert_eq!(pressure_shift_normalized(&p, 0.0), 0.0);
    }

    #[test]
    fn shift_at_center_pressure_matches_logistic_value() {
        // high-precision oracle: dz_anom * L_ch * (1/2 - 1/(1 + e^2))
        let p = params();
        let l_ch = 0.025;
        let expected = p.dz_anom * l_ch * (0.5 - 1.0 / (1.0 + 2f64.exp()));
        let got = pressure_shift(&p, p.p0, l_ch);
        assert!((got - expected).abs() < 1e-12 * expected.abs().max(1.0));
        // ~0.3808 * dz_anom * L_ch
        assert!((expected / (p.dz_anom * l_ch) - 0.3808).abs() < 1e-3);
    }

    #[test]
    fn shift_monotone_in_pressure() {
        let p = params();
        let mut prev = -1.0;
        for k in 0..200 {
            let p_b = k as f64 * microtorr_to_pa(1.0);
            let s = pressure_shift_normalized(&p, p_b);
            assert!(s >= prev, "shift decreased at {p_b}");
            prev = s;
        }
    }

    #[test]
    fn barrier_minimum_moves_upstream_with_pressure() {
        // grid argmin across a pressure sweep must be nonincreasing
        let p = params();
        let grid: Vec<f64> = (0..3000).map(|i| i as f64 / 1000.0).collect();
        let mut prev_argmin = f64::INFINITY;
        for utorr in [0.0, 5.0, 15.0, 25.0, 40.0, 60.0] {
            let p_b = microtorr_to_pa(utorr);
            let argmin = grid
                .iter()
                .copied()
                .min_by(|a, b| {
                    anomalous_inverse_hall(&p, *a, p_b)
                        .unwrap()
                        .partial_cmp(&anomalous_inverse_hall(&p, *b, p_b).unwrap())
                        .unwrap()
                })
                .unwrap();
            assert!(argmin <= prev_argmin + 1e-12);
            prev_argmin = argmin;
        }
    }

    #[test]
    fn degenerate_width_is_error() {
        let mut p = params();
        p.l_anom = 0.0;
        assert!(anomalous_inverse_hall(&p, 1.0, 0.0).is_err());
    }
}
