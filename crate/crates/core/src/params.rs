//! Operating conditions, the epistemic parameter vector, prior
//! distributions, and aleatoric noise on operating conditions.
//!
//! Pressures are stored internally in pascals; loaders accept Torr-family
//! units with an explicit tag and convert on input. The two log-uniform
//! plume parameters (`c4`, `c5`) are stored and evaluated in linear space
//! but sampled and proposed in exponent space.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::constants::microtorr_to_pa;
use crate::error::{Error, Result};

/// The aleatoric inputs at which an experiment ran.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatingCondition {
    /// Discharge voltage (V).
    pub discharge_voltage: f64,
    /// Facility background pressure (Pa).
    pub background_pressure: f64,
    /// Anode mass flow rate (kg/s).
    pub anode_mass_flow: f64,
}

impl OperatingCondition {
    /// Build a condition, checking positivity and the vacuum-facility
    /// sanity bound of 1 Pa on background pressure.
    pub fn new(discharge_voltage: f64, background_pressure: f64, anode_mass_flow: f64) -> Result<Self> {
        if !(discharge_voltage > 0.0) {
            return Err(Error::Domain(format!(
                "discharge voltage must be positive, got {discharge_voltage}"
            )));
        }
        if !(background_pressure > 0.0) {
            return Err(Error::Domain(format!(
                "background pressure must be positive, got {background_pressure}"
            )));
        }
        if background_pressure >= 1.0 {
            return Err(Error::Domain(format!(
                "background pressure {background_pressure} Pa is outside the vacuum-facility regime (< 1 Pa)"
            )));
        }
        if !(anode_mass_flow > 0.0) {
            return Err(Error::Domain(format!(
                "anode mass flow must be positive, got {anode_mass_flow}"
            )));
        }
        Ok(Self {
            discharge_voltage,
            background_pressure,
            anode_mass_flow,
        })
    }
}

/// Cathode component parameters (pressures in Pa).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CathodeGroup {
    /// Effective cathode electron temperature (eV).
    pub t_ec: f64,
    /// Coupling voltage at vacuum (V).
    pub v_vac: f64,
    /// Base pressure (Pa).
    pub p_t: f64,
    /// Turning-point pressure (Pa).
    pub p_star: f64,
}

/// Discharge (thruster) component parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThrusterGroup {
    /// Plateau inverse Hall parameter.
    pub alpha_anom: f64,
    /// Depth of the transport barrier, in [0, 1].
    pub beta_anom: f64,
    /// Barrier center (channel lengths).
    pub z_anom: f64,
    /// Barrier width (channel lengths).
    pub l_anom: f64,
    /// Pressure-shift magnitude (channel lengths).
    pub dz_anom: f64,
    /// Neutral axial speed (m/s).
    pub u_n: f64,
    /// Electron wall loss scale.
    pub c_w: f64,
    /// Neutral ingestion scale.
    pub f_n: f64,
}

/// Plume component parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlumeGroup {
    /// Main-to-scattered beam current ratio, in [0, 1].
    pub c0: f64,
    /// Main-to-scattered divergence angle ratio.
    pub c1: f64,
    /// Slope of divergence angle vs. pressure (rad/Pa).
    pub c2: f64,
    /// Divergence angle intercept (rad).
    pub c3: f64,
    /// Slope of plume neutral density vs. pressure (m^-3/Pa), linear space.
    pub c4: f64,
    /// Plume neutral density intercept (m^-3), linear space.
    pub c5: f64,
}

/// The 18 epistemic calibration parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParameterSet {
    pub cathode: CathodeGroup,
    pub thruster: ThrusterGroup,
    pub plume: PlumeGroup,
}

/// Identifies a single calibration parameter. The enum order is the
/// canonical column order used in chain files and summary tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamId {
    TEc,
    VVac,
    PT,
    PStar,
    AlphaAnom,
    BetaAnom,
    ZAnom,
    LAnom,
    DzAnom,
    UN,
    CW,
    FN,
    C0,
    C1,
    C2,
    C3,
    C4,
    C5,
}

impl ParamId {
    /// All parameters in canonical order.
    pub const ALL: [ParamId; 18] = [
        ParamId::TEc,
        ParamId::VVac,
        ParamId::PT,
        ParamId::PStar,
        ParamId::AlphaAnom,
        ParamId::BetaAnom,
        ParamId::ZAnom,
        ParamId::LAnom,
        ParamId::DzAnom,
        ParamId::UN,
        ParamId::CW,
        ParamId::FN,
        ParamId::C0,
        ParamId::C1,
        ParamId::C2,
        ParamId::C3,
        ParamId::C4,
        ParamId::C5,
    ];

    /// Stable snake_case name, used in config files and chain headers.
    pub fn name(self) -> &'static str {
        match self {
            ParamId::TEc => "t_ec",
            ParamId::VVac => "v_vac",
            ParamId::PT => "p_t",
            ParamId::PStar => "p_star",
            ParamId::AlphaAnom => "alpha_anom",
            ParamId::BetaAnom => "beta_anom",
            ParamId::ZAnom => "z_anom",
            ParamId::LAnom => "l_anom",
            ParamId::DzAnom => "dz_anom",
            ParamId::UN => "u_n",
            ParamId::CW => "c_w",
            ParamId::FN => "f_n",
            ParamId::C0 => "c0",
            ParamId::C1 => "c1",
            ParamId::C2 => "c2",
            ParamId::C3 => "c3",
            ParamId::C4 => "c4",
            ParamId::C5 => "c5",
        }
    }

    /// Parse a parameter name as written by [`ParamId::name`].
    pub fn from_name(name: &str) -> Option<ParamId> {
        ParamId::ALL.iter().copied().find(|p| p.name() == name)
    }
}

impl ParameterSet {
    pub fn get(&self, id: ParamId) -> f64 {
        match id {
            ParamId::TEc => self.cathode.t_ec,
            ParamId::VVac => self.cathode.v_vac,
            ParamId::PT => self.cathode.p_t,
            ParamId::PStar => self.cathode.p_star,
            ParamId::AlphaAnom => self.thruster.alpha_anom,
            ParamId::BetaAnom => self.thruster.beta_anom,
            ParamId::ZAnom => self.thruster.z_anom,
            ParamId::LAnom => self.thruster.l_anom,
            ParamId::DzAnom => self.thruster.dz_anom,
            ParamId::UN => self.thruster.u_n,
            ParamId::CW => self.thruster.c_w,
            ParamId::FN => self.thruster.f_n,
            ParamId::C0 => self.plume.c0,
            ParamId::C1 => self.plume.c1,
            ParamId::C2 => self.plume.c2,
            ParamId::C3 => self.plume.c3,
            ParamId::C4 => self.plume.c4,
            ParamId::C5 => self.plume.c5,
        }
    }

    pub fn set(&mut self, id: ParamId, value: f64) {
        match id {
            ParamId::TEc => self.cathode.t_ec = value,
            ParamId::VVac => self.cathode.v_vac = value,
            ParamId::PT => self.cathode.p_t = value,
            ParamId::PStar => self.cathode.p_star = value,
            ParamId::AlphaAnom => self.thruster.alpha_anom = value,
            ParamId::BetaAnom => self.thruster.beta_anom = value,
            ParamId::ZAnom => self.thruster.z_anom = value,
            ParamId::LAnom => self.thruster.l_anom = value,
            ParamId::DzAnom => self.thruster.dz_anom = value,
            ParamId::UN => self.thruster.u_n = value,
            ParamId::CW => self.thruster.c_w = value,
            ParamId::FN => self.thruster.f_n = value,
            ParamId::C0 => self.plume.c0 = value,
            ParamId::C1 => self.plume.c1 = value,
            ParamId::C2 => self.plume.c2 = value,
            ParamId::C3 => self.plume.c3 = value,
            ParamId::C4 => self.plume.c4 = value,
            ParamId::C5 => self.plume.c5 = value,
        }
    }

    /// Linear-space values in canonical order.
    pub fn to_vec(&self) -> Vec<f64> {
        ParamId::ALL.iter().map(|&id| self.get(id)).collect()
    }

    /// Rebuild from linear-space values in canonical order.
    pub fn from_vec(values: &[f64]) -> Result<Self> {
        if values.len() != ParamId::ALL.len() {
            return Err(Error::Config(format!(
                "expected {} parameter values, got {}",
                ParamId::ALL.len(),
                values.len()
            )));
        }
        let mut p = ParameterSet::zeroed();
        for (id, &v) in ParamId::ALL.iter().zip(values) {
            p.set(*id, v);
        }
        Ok(p)
    }

    fn zeroed() -> Self {
        ParameterSet {
            cathode: CathodeGroup {
                t_ec: 0.0,
                v_vac: 0.0,
                p_t: 0.0,
                p_star: 0.0,
            },
            thruster: ThrusterGroup {
                alpha_anom: 0.0,
                beta_anom: 0.0,
                z_anom: 0.0,
                l_anom: 0.0,
                dz_anom: 0.0,
                u_n: 0.0,
                c_w: 0.0,
                f_n: 0.0,
            },
            plume: PlumeGroup {
                c0: 0.0,
                c1: 0.0,
                c2: 0.0,
                c3: 0.0,
                c4: 0.0,
                c5: 0.0,
            },
        }
    }
}

/// Marginal prior for a single parameter.
///
/// Log-uniform priors are parameterized by base-10 exponents; draws are
/// `10^u` with `u ~ U(low_exp, high_exp)` and densities are reported in
/// linear space. Relative-normal priors model aleatoric noise about a
/// nominal value; negative draws are rejected and resampled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PriorSpec {
    Uniform { low: f64, high: f64 },
    LogUniform { low_exp: f64, high_exp: f64 },
    RelativeNormal { nominal: f64, relative_sigma: f64 },
}

impl PriorSpec {
    /// Validate internal consistency (low < high, sigma > 0).
    pub fn validate(&self) -> Result<()> {
        match *self {
            PriorSpec::Uniform { low, high } => {
                if !(low < high) {
                    return Err(Error::Config(format!(
                        "uniform prior requires low < high, got [{low}, {high}]"
                    )));
                }
            }
            PriorSpec::LogUniform { low_exp, high_exp } => {
                if !(low_exp < high_exp) {
                    return Err(Error::Config(format!(
                        "log-uniform prior requires low < high exponent, got [{low_exp}, {high_exp}]"
                    )));
                }
            }
            PriorSpec::RelativeNormal { nominal, relative_sigma } => {
                if !(relative_sigma > 0.0) {
                    return Err(Error::Config(format!(
                        "relative-normal prior requires sigma > 0, got {relative_sigma}"
                    )));
                }
                if !(nominal > 0.0) {
                    return Err(Error::Config(format!(
                        "relative-normal prior requires a positive nominal, got {nominal}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Draw one value in linear space.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        self.validate()?;
        Ok(match *self {
            PriorSpec::Uniform { low, high } => rng.gen_range(low..high),
            PriorSpec::LogUniform { low_exp, high_exp } => {
                let u = rng.gen_range(low_exp..high_exp);
                10f64.powf(u)
            }
            PriorSpec::RelativeNormal { nominal, relative_sigma } => {
                let normal = Normal::new(nominal, relative_sigma * nominal)
                    .map_err(|e| Error::Config(format!("bad normal: {e}")))?;
                // reject nonpositive draws; physical quantities stay positive
                loop {
                    let v = normal.sample(rng);
                    if v > 0.0 {
                        break v;
                    }
                }
            }
        })
    }

    /// Natural log of the marginal density at `x`, in linear space.
    /// Returns `-inf` outside the support.
    pub fn log_density(&self, x: f64) -> f64 {
        match *self {
            PriorSpec::Uniform { low, high } => {
                if x >= low && x <= high {
                    -(high - low).ln()
                } else {
                    f64::NEG_INFINITY
                }
            }
            PriorSpec::LogUniform { low_exp, high_exp } => {
                if x > 0.0 && x.log10() >= low_exp && x.log10() <= high_exp {
                    // change of variables: p(x) = 1 / (x ln10 (hi - lo))
                    -(x * std::f64::consts::LN_10 * (high_exp - low_exp)).ln()
                } else {
                    f64::NEG_INFINITY
                }
            }
            PriorSpec::RelativeNormal { nominal, relative_sigma } => {
                let sigma = relative_sigma * nominal;
                let z = (x - nominal) / sigma;
                // truncation at zero ignored: negligible for the small
                // relative sigmas used here
                -0.5 * z * z - sigma.ln() - 0.5 * (2.0 * std::f64::consts::PI).ln()
            }
        }
    }

    /// True when `x` (linear space) lies inside the support.
    pub fn contains(&self, x: f64) -> bool {
        self.log_density(x) > f64::NEG_INFINITY
    }

    /// Map a linear-space value to the sampling (proposal) space:
    /// base-10 exponent for log-uniform, identity otherwise.
    pub fn to_sampling(&self, x: f64) -> f64 {
        match self {
            PriorSpec::LogUniform { .. } => x.log10(),
            _ => x,
        }
    }

    /// Inverse of [`PriorSpec::to_sampling`].
    pub fn from_sampling(&self, u: f64) -> f64 {
        match self {
            PriorSpec::LogUniform { .. } => 10f64.powf(u),
            _ => u,
        }
    }

    /// Support bounds in the sampling space.
    pub fn sampling_bounds(&self) -> (f64, f64) {
        match *self {
            PriorSpec::Uniform { low, high } => (low, high),
            PriorSpec::LogUniform { low_exp, high_exp } => (low_exp, high_exp),
            PriorSpec::RelativeNormal { nominal, relative_sigma } => {
                // effectively unbounded; report +/- 6 sigma for scale purposes
                let s = relative_sigma * nominal;
                (nominal - 6.0 * s, nominal + 6.0 * s)
            }
        }
    }

    /// Midpoint of the support, mapped back to linear space.
    pub fn midpoint(&self) -> f64 {
        let (lo, hi) = self.sampling_bounds();
        self.from_sampling(0.5 * (lo + hi))
    }
}

/// Ordered collection of priors for all 18 calibration parameters.
#[derive(Debug, Clone)]
pub struct PriorSet {
    specs: Vec<(ParamId, PriorSpec)>,
}

impl PriorSet {
    /// Defaults for an SPT-100-class unshielded thruster.
    ///
    /// Cathode pressures are in pascals (entered as microTorr); the two
    /// plume density parameters are log-uniform over base-10 exponents.
    pub fn default_spt100() -> Self {
        use ParamId::*;
        let u = |low, high| PriorSpec::Uniform { low, high };
        let specs = vec![
            (TEc, u(1.0, 6.0)),
            (VVac, u(0.0, 60.0)),
            (PT, u(microtorr_to_pa(10.0), microtorr_to_pa(100.0))),
            (PStar, u(microtorr_to_pa(10.0), microtorr_to_pa(200.0))),
            (AlphaAnom, u(0.0, 1.0)),
            (BetaAnom, u(0.0, 1.0)),
            (ZAnom, u(0.75, 1.5)),
            (LAnom, u(0.0, 0.5)),
            (DzAnom, u(0.0, 0.5)),
            (UN, u(100.0, 500.0)),
            (CW, u(0.5, 1.5)),
            (FN, u(1.0, 10.0)),
            (C0, u(0.0, 1.0)),
            (C1, u(0.1, 0.9)),
            (C2, u(-15.0, 15.0)),
            (C3, u(0.2, std::f64::consts::FRAC_PI_2)),
            (C4, PriorSpec::LogUniform { low_exp: 18.0, high_exp: 22.0 }),
            (C5, PriorSpec::LogUniform { low_exp: 14.0, high_exp: 18.0 }),
        ];
        PriorSet { specs }
    }

    /// Build from explicit per-parameter specs; must cover all 18 exactly once.
    pub fn new(specs: Vec<(ParamId, PriorSpec)>) -> Result<Self> {
        if specs.len() != ParamId::ALL.len() {
            return Err(Error::Config(format!(
                "prior set must cover all {} parameters, got {}",
                ParamId::ALL.len(),
                specs.len()
            )));
        }
        for id in ParamId::ALL {
            let n = specs.iter().filter(|(p, _)| *p == id).count();
            if n != 1 {
                return Err(Error::Config(format!(
                    "prior for {} specified {} times",
                    id.name(),
                    n
                )));
            }
        }
        for (_, s) in &specs {
            s.validate()?;
        }
        // keep canonical order regardless of input order
        let mut ordered = Vec::with_capacity(specs.len());
        for id in ParamId::ALL {
            let spec = specs.iter().find(|(p, _)| *p == id).unwrap().1;
            ordered.push((id, spec));
        }
        Ok(PriorSet { specs: ordered })
    }

    pub fn spec(&self, id: ParamId) -> &PriorSpec {
        &self.specs.iter().find(|(p, _)| *p == id).unwrap().1
    }

    /// Replace the prior for one parameter.
    pub fn set_spec(&mut self, id: ParamId, spec: PriorSpec) -> Result<()> {
        spec.validate()?;
        for entry in &mut self.specs {
            if entry.0 == id {
                entry.1 = spec;
                return Ok(());
            }
        }
        unreachable!("all ids present by construction")
    }

    pub fn iter(&self) -> impl Iterator<Item = &(ParamId, PriorSpec)> {
        self.specs.iter()
    }

    /// Draw a full parameter set from the joint (independent) prior.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<ParameterSet> {
        let mut p = ParameterSet::zeroed();
        for (id, spec) in &self.specs {
            p.set(*id, spec.sample(rng)?);
        }
        Ok(p)
    }

    /// Joint log prior density in linear space: sum of independent
    /// marginals, `-inf` if any parameter is outside its support.
    pub fn log_density(&self, theta: &ParameterSet) -> f64 {
        let mut total = 0.0;
        for (id, spec) in &self.specs {
            let ld = spec.log_density(theta.get(*id));
            if ld == f64::NEG_INFINITY {
                return f64::NEG_INFINITY;
            }
            total += ld;
        }
        total
    }

    /// Parameter set at the per-parameter support midpoints.
    pub fn midpoint(&self) -> ParameterSet {
        let mut p = ParameterSet::zeroed();
        for (id, spec) in &self.specs {
            p.set(*id, spec.midpoint());
        }
        p
    }
}

/// Relative standard deviations of the aleatoric noise on each
/// operating-condition component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AleatoricSpec {
    pub discharge_voltage_rel: f64,
    pub background_pressure_rel: f64,
    pub anode_mass_flow_rel: f64,
}

impl Default for AleatoricSpec {
    fn default() -> Self {
        AleatoricSpec {
            discharge_voltage_rel: 0.02,
            background_pressure_rel: 0.05,
            anode_mass_flow_rel: 0.02,
        }
    }
}

impl AleatoricSpec {
    pub fn zero() -> Self {
        AleatoricSpec {
            discharge_voltage_rel: 0.0,
            background_pressure_rel: 0.0,
            anode_mass_flow_rel: 0.0,
        }
    }
}

fn perturb_one<R: Rng + ?Sized>(nominal: f64, rel_sigma: f64, rng: &mut R) -> f64 {
    if rel_sigma == 0.0 {
        return nominal;
    }
    let normal = Normal::new(nominal, rel_sigma * nominal).expect("positive sigma");
    loop {
        let v = normal.sample(rng);
        if v > 0.0 {
            return v;
        }
    }
}

/// Independently perturb each component of a nominal condition by its
/// relative-normal law, resampling nonpositive draws. Zero sigmas leave
/// the component untouched (exact identity).
pub fn perturb_condition<R: Rng + ?Sized>(
    nominal: &OperatingCondition,
    spec: &AleatoricSpec,
    rng: &mut R,
) -> OperatingCondition {
    OperatingCondition {
        discharge_voltage: perturb_one(nominal.discharge_voltage, spec.discharge_voltage_rel, rng),
        background_pressure: perturb_one(
            nominal.background_pressure,
            spec.background_pressure_rel,
            rng,
        ),
        anode_mass_flow: perturb_one(nominal.anode_mass_flow, spec.anode_mass_flow_rel, rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn uniform_sample_stays_in_support() {
        let spec = PriorSpec::Uniform { low: 0.0, high: 1.0 };
        let mut r = rng(1);
        for _ in 0..1000 {
            let v = spec.sample(&mut r).unwrap();
            assert!((0.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn log_uniform_sample_stays_in_support() {
        let spec = PriorSpec::LogUniform { low_exp: 18.0, high_exp: 22.0 };
        let mut r = rng(2);
        for _ in 0..1000 {
            let v = spec.sample(&mut r).unwrap();
            assert!((1e18..=1e22).contains(&v), "draw {v} outside support");
        }
    }

    #[test]
    fn relative_normal_mean_recovers_nominal() {
        // Monte Carlo estimate of the N(300, 6^2) mean over 1e5 draws
        let spec = PriorSpec::RelativeNormal { nominal: 300.0, relative_sigma: 0.02 };
        let mut r = rng(3);
        let n = 100_000;
        let mean = (0..n).map(|_| spec.sample(&mut r).unwrap()).sum::<f64>() / n as f64;
        assert!((mean - 300.0).abs() < 0.1, "mean {mean}");
    }

    #[test]
    fn invalid_uniform_bounds_rejected() {
        let spec = PriorSpec::Uniform { low: 2.0, high: 1.0 };
        assert!(spec.validate().is_err());
        assert!(spec.sample(&mut rng(0)).is_err());
    }

    #[test]
    fn joint_log_density_at_midpoints_is_sum_of_widths() {
        let priors = PriorSet::default_spt100();
        let mid = priors.midpoint();
        let ld = priors.log_density(&mid);
        assert!(ld.is_finite());
        // uniform marginals contribute -ln(width); log-uniform contribute
        // the linear-space change-of-variables density
        let mut expected = 0.0;
        for (id, spec) in priors.iter() {
            expected += spec.log_density(mid.get(*id));
        }
        assert!((ld - expected).abs() < 1e-12);
    }

    #[test]
    fn out_of_support_density_is_neg_inf() {
        let priors = PriorSet::default_spt100();
        let mut theta = priors.midpoint();
        theta.thruster.alpha_anom = 1.5; // outside U(0,1)
        assert_eq!(priors.log_density(&theta), f64::NEG_INFINITY);
    }

    #[test]
    fn log_uniform_linear_density_change_of_variables() {
        // marginal contribution at x = 10^20 for exponents U(18,22):
        // -ln(4 * ln(10) * 10^20)
        let spec = PriorSpec::LogUniform { low_exp: 18.0, high_exp: 22.0 };
        let x = 1e20;
        let expected = -(4.0 * std::f64::consts::LN_10 * x).ln();
        assert!((spec.log_density(x) - expected).abs() < 1e-12);
    }

    #[test]
    fn perturb_zero_sigma_is_identity() {
        let nominal = OperatingCondition::new(300.0, 1.333e-3, 5e-6).unwrap();
        let out = perturb_condition(&nominal, &AleatoricSpec::zero(), &mut rng(4));
        assert_eq!(out, nominal);
    }

    #[test]
    fn perturb_voltage_std_matches_two_percent() {
        let nominal = OperatingCondition::new(300.0, 1.333e-3, 5e-6).unwrap();
        let spec = AleatoricSpec::default();
        let mut r = rng(5);
        let n = 100_000;
        let draws: Vec<f64> = (0..n)
            .map(|_| perturb_condition(&nominal, &spec, &mut r).discharge_voltage)
            .collect();
        let std = crate::math::std_pop(&draws);
        assert!((std - 6.0).abs() / 6.0 < 0.02, "std {std}");
    }

    #[test]
    fn perturb_pressure_always_positive() {
        let nominal = OperatingCondition::new(300.0, crate::constants::torr_to_pa(1e-5), 5e-6).unwrap();
        let spec = AleatoricSpec::default();
        let mut r = rng(6);
        for _ in 0..1_000_000 {
            assert!(perturb_condition(&nominal, &spec, &mut r).background_pressure > 0.0);
        }
    }

    #[test]
    fn prior_histogram_matches_density_chi_square() {
        // consistency of sampling with the analytic density: chi-square
        // goodness of fit on 50 bins must not reject at p > 0.001
        // (critical value for 49 dof at alpha = 0.001 is 85.35)
        let spec = PriorSpec::Uniform { low: 2.0, high: 7.0 };
        let mut r = rng(7);
        let n = 1_000_000usize;
        let bins = 50usize;
        let mut counts = vec![0usize; bins];
        for _ in 0..n {
            let v = spec.sample(&mut r).unwrap();
            let b = (((v - 2.0) / 5.0) * bins as f64) as usize;
            counts[b.min(bins - 1)] += 1;
        }
        let expected = n as f64 / bins as f64;
        let chi2: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        assert!(chi2 < 85.35, "chi2 {chi2} rejects uniformity");

        // same check for the log-uniform in exponent space
        let spec = PriorSpec::LogUniform { low_exp: 18.0, high_exp: 22.0 };
        let mut counts = vec![0usize; bins];
        for _ in 0..n {
            let v = spec.sample(&mut r).unwrap().log10();
            let b = (((v - 18.0) / 4.0) * bins as f64) as usize;
            counts[b.min(bins - 1)] += 1;
        }
        let chi2: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        assert!(chi2 < 85.35, "chi2 {chi2} rejects log-uniformity");
    }

    #[test]
    fn vec_roundtrip_preserves_values() {
        let priors = PriorSet::default_spt100();
        let theta = priors.sample(&mut rng(8)).unwrap();
        let v = theta.to_vec();
        let back = ParameterSet::from_vec(&v).unwrap();
        assert_eq!(theta, back);
    }

    #[test]
    fn condition_sanity_bounds() {
        assert!(OperatingCondition::new(300.0, 2.0, 5e-6).is_err());
        assert!(OperatingCondition::new(0.0, 1e-3, 5e-6).is_err());
        assert!(OperatingCondition::new(300.0, 1e-3, 0.0).is_err());
    }
}
