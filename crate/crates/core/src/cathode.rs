//! Analytic cathode coupling model.
//!
//! Maps facility background pressure to the coupling voltage needed to
//! extract cathode electrons into the discharge:
//!
//! ```text
//! V_cc(P_B) = V_vac + T_ec ln(1 + P_B/P_T) - T_ec P_B / (P_T + P*)
//! ```
//!
//! The natural logarithm is used; the model derives from a physical log
//! relation. `V_cc` rises from `V_vac`, peaks at `P_B = P*`, and declines
//! at higher pressures.

use crate::error::{Error, Result};
use crate::params::CathodeGroup;

/// Cathode model parameters (pressures in Pa).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CathodeParams {
    /// Coupling voltage at vacuum (V).
    pub v_vac: f64,
    /// Effective cathode electron temperature (eV).
    pub t_ec: f64,
    /// Base pressure (Pa).
    pub p_t: f64,
    /// Turning-point pressure (Pa).
    pub p_star: f64,
}

impl CathodeParams {
    pub fn new(v_vac: f64, t_ec: f64, p_t: f64, p_star: f64) -> Result<Self> {
        if !(p_t > 0.0) {
            return Err(Error::Domain(format!("cathode base pressure must be positive, got {p_t}")));
        }
        if !(p_star > 0.0) {
            return Err(Error::Domain(format!(
                "cathode turning-point pressure must be positive, got {p_star}"
            )));
        }
        Ok(CathodeParams { v_vac, t_ec, p_t, p_star })
    }
}

impl From<&CathodeGroup> for CathodeParams {
    fn from(g: &CathodeGroup) -> Self {
        CathodeParams {
            v_vac: g.v_vac,
            t_ec: g.t_ec,
            p_t: g.p_t,
            p_star: g.p_star,
        }
    }
}

/// Coupling voltage (V) at background pressure `p_b` (Pa).
pub fn coupling_voltage(p: &CathodeParams, p_b: f64) -> Result<f64> {
    if !(p.p_t > 0.0) || !(p.p_t + p.p_star > 0.0) {
        return Err(Error::Domain(
            "cathode model requires P_T > 0 and P_T + P* > 0".to_string(),
        ));
    }
    if p_b < 0.0 {
        return Err(Error::Domain(format!("background pressure must be >= 0, got {p_b}")));
    }
    Ok(p.v_vac + p.t_ec * (1.0 + p_b / p.p_t).ln() - p.t_ec * p_b / (p.p_t + p.p_star))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::microtorr_to_pa;

    #[test]
    fn vacuum_limit_is_v_vac() {
        let p = CathodeParams::new(31.75, 2.92, 1e-3, 2e-3).unwrap();
        let v = coupling_voltage(&p, 0.0).unwrap();
        assert!((v - 31.75).abs() / 31.75 < 1e-15);
    }

    #[test]
    fn median_parameter_fixture() {
        // high-precision arithmetic oracle evaluated at P_B = P_T:
        // V_vac + T_ec ln 2 - T_ec * 48.72/(48.72 + 64.85)
        let p_t = microtorr_to_pa(48.72);
        let p_star = microtorr_to_pa(64.85);
        let p = CathodeParams::new(31.75, 2.92, p_t, p_star).unwrap();
        let v = coupling_voltage(&p, p_t).unwrap();
        let expected = 31.75 + 2.92 * std::f64::consts::LN_2 - 2.92 * 48.72 / (48.72 + 64.85);
        assert!((v - expected).abs() / expected < 1e-12, "v = {v}, expected {expected}");
    }

    #[test]
    fn slope_at_zero_pressure() {
        // symbolic differentiation: dV/dP|0 = T_ec (1/P_T - 1/(P_T + P*)) > 0
        let p = CathodeParams::new(30.0, 3.0, 4e-3, 6e-3).unwrap();
        let analytic = p.t_ec * (1.0 / p.p_t - 1.0 / (p.p_t + p.p_star));
        assert!(analytic > 0.0);
        let h = 1e-9;
        let fd = (coupling_voltage(&p, h).unwrap() - coupling_voltage(&p, 0.0).unwrap()) / h;
        assert!((fd - analytic).abs() / analytic < 1e-5, "fd {fd} vs {analytic}");
    }

    #[test]
    fn monotone_up_then_down_around_p_star() {
        // finite-difference sign test on a log grid of 1e3 points
        let p = CathodeParams::new(30.0, 3.0, 5e-3, 8e-3).unwrap();
        let n = 1000;
        let lo = (p.p_star * 1e-4f64).ln();
        let hi = (p.p_star * 1e4f64).ln();
        let mut prev = coupling_voltage(&p, lo.exp()).unwrap();
        for i in 1..n {
            let x = (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp();
            let v = coupling_voltage(&p, x).unwrap();
            let mid = (lo + (hi - lo) * (i as f64 - 0.5) / (n - 1) as f64).exp();
            if mid < p.p_star {
                assert!(v > prev, "not increasing below P* at P_B = {x}");
            } else {
                assert!(v < prev, "not decreasing above P* at P_B = {x}");
            }
            prev = v;
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(CathodeParams::new(30.0, 3.0, 0.0, 1e-3).is_err());
        assert!(CathodeParams::new(30.0, 3.0, 1e-3, -1.0).is_err());
        let p = CathodeParams { v_vac: 30.0, t_ec: 3.0, p_t: -1.0, p_star: 0.5 };
        assert!(coupling_voltage(&p, 0.0).is_err());
    }
}
