//! Finite-volume core of the 1-D discharge solver.
//!
//! Discretization summary:
//! - uniform cell-centered grid over the domain;
//! - neutrals: first-order upwind advection at the constant neutral speed,
//!   with an injection flux boundary at the anode;
//! - ions: continuity + momentum with isothermal pressure, local
//!   Lax-Friedrichs (Rusanov) interface fluxes, explicit stepping at a
//!   CFL-limited adaptive dt, a Bohm sheath condition at the anode, and
//!   zero-gradient outflow at the cathode side;
//! - electrons: inertialess generalized Ohm's law; the scalar total
//!   current density is fixed each step by the integral constraint that
//!   the electric field integrate to the applied potential drop, which
//!   makes charge conservation structural;
//! - electron energy: backward-Euler linear solve each step (upwinded
//!   convection, conduction, implicit wall sink), with Ohmic heating and
//!   ionization losses as explicit sources.
//!
//! Ions reaching the anode recombine and re-enter as neutrals, and wall
//! losses recycle ions to neutrals in place, so heavy-species mass is
//! conserved up to the density floors.

use std::time::Instant;

use crate::constants::{M_E, Q_E};
use crate::error::{Error, Result};
use crate::math::solve_tridiagonal;
use crate::params::{OperatingCondition, ThrusterGroup};

use super::anomalous::{anomalous_inverse_hall, AnomParams};
use super::{ingestion_flow, ThrusterConfig, ThrusterOutput};

/// Hard floor on the adaptive timestep (s).
const DT_MIN: f64 = 1e-13;
/// Safety factor on rate-based (ionization, energy) timestep limits.
const RATE_SAFETY: f64 = 0.3;
/// Electron thermal conductivity prefactor (Braginskii perpendicular
/// coefficient in the magnetized limit): kappa = 4.66 mu n T_e.
const KAPPA_COEFF: f64 = 4.66;
/// Floor on the total electron collision frequency (1/s).
const NU_FLOOR: f64 = 1.0;
/// Steps between wall-clock checks.
const CLOCK_CHECK_INTERVAL: u64 = 512;

pub(super) struct Solver<'a> {
    cfg: &'a ThrusterConfig,
    theta: &'a ThrusterGroup,

    n: usize,
    dz: f64,
    z: Vec<f64>,
    in_channel: Vec<bool>,

    // per-run constants
    v_anode: f64,
    delta_v: f64,
    ion_mass: f64,
    area: f64,
    channel_width: f64,
    ionization_cost: f64,
    k_en: f64,
    sheath_energy_coeff: f64,
    c_ion2: f64, // isothermal ion pressure term, q T_i / m_i
    injection_flux: f64,
    ingestion_mass_flow: f64,
    nu_anom: Vec<f64>,
    omega_ce: Vec<f64>,
    u_clip: f64,
    t_cathode: f64,

    // primary state
    n_n: Vec<f64>,
    n_i: Vec<f64>,
    u_i: Vec<f64>,
    te: Vec<f64>,

    // fields derived by the Ohm's-law closure each step
    j_total: f64,
    j_ion: Vec<f64>,
    e_z: Vec<f64>,
    phi: Vec<f64>,
    u_e: Vec<f64>,
    mobility: Vec<f64>,

    // per-step rates and energy sources
    rate_iz: Vec<f64>,
    sink_wall_coeff: Vec<f64>,
    source_ohmic: Vec<f64>,
    source_ionization_loss: Vec<f64>,

    time: f64,
    steps: u64,
}

impl<'a> Solver<'a> {
    pub(super) fn new(
        cfg: &'a ThrusterConfig,
        theta: &'a ThrusterGroup,
        cond: &OperatingCondition,
        v_cc: f64,
        t_cathode_ev: f64,
    ) -> Result<Self> {
        let n = cfg.settings.cells;
        let geom = &cfg.geometry;
        let dz = geom.domain_length / n as f64;
        let z: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * dz).collect();
        let in_channel: Vec<bool> = z.iter().map(|&zi| zi < geom.channel_length).collect();

        let ion_mass = cfg.propellant.ion_mass;
        let anom = AnomParams::from_group(theta);
        let p_b = cond.background_pressure;
        let mut nu_anom = Vec::with_capacity(n);
        let mut omega_ce = Vec::with_capacity(n);
        for &zi in &z {
            let b = cfg.field.field(zi);
            let w_ce = Q_E * b / M_E;
            let inv_hall = anomalous_inverse_hall(&anom, zi / geom.channel_length, p_b)?;
            omega_ce.push(w_ce);
            nu_anom.push(w_ce * inv_hall);
        }

        let ingestion_mass_flow =
            ingestion_flow(p_b, cfg.settings.background_temp_k, geom, theta.f_n, ion_mass)?;
        let area = geom.channel_area();
        let injection_flux = (cond.anode_mass_flow + ingestion_mass_flow) / (ion_mass * area);

        let delta_v = cond.discharge_voltage - v_cc;
        if !(delta_v > 0.0) {
            return Err(Error::Domain(format!(
                "applied potential drop must be positive, got {delta_v} V"
            )));
        }
        if !(theta.u_n > 0.0) {
            return Err(Error::Domain(format!(
                "neutral axial speed must be positive, got {}",
                theta.u_n
            )));
        }

        // energy carried to the wall per electron-ion pair, in units of
        // T_e: thermal flux plus the floating sheath potential
        let sheath_energy_coeff = 2.0 + (ion_mass / (2.0 * std::f64::consts::PI * M_E)).sqrt().ln();

        // generous physical bound on ion speed; guards floored vacuum
        // cells against momentum/density roundoff blowups
        let u_clip = (2.0 * Q_E * (delta_v + 50.0) / ion_mass).sqrt();

        let settings = &cfg.settings;
        let floor = settings.density_floor;

        // initial state resembling a developed discharge, so the solve
        // relaxes to the breathing quasi-steady state instead of having
        // to ignite from a cold seed: neutrals at the steady advection
        // value, an ion bump spanning the channel exit, ion velocity
        // ramping from anode backflow to most of the beam speed, and a
        // hot electron pocket at the field peak
        let n_n = vec![(injection_flux / theta.u_n).max(floor); n];
        let l_ch = geom.channel_length;
        let n_i: Vec<f64> = z
            .iter()
            .map(|&zi| {
                let x = (zi - l_ch) / (0.55 * l_ch);
                (0.02 * settings.initial_plasma_density
                    + settings.initial_plasma_density * (-x * x).exp())
                .max(floor)
            })
            .collect();
        let te_init_peak = (0.08 * delta_v).max(5.0);
        let te: Vec<f64> = z
            .iter()
            .map(|&zi| {
                let x = (zi - cfg.field.z_peak) / (0.6 * l_ch);
                (2.0 + te_init_peak * (-x * x).exp()).max(settings.te_floor)
            })
            .collect();
        let u_beam = 0.9 * (2.0 * Q_E * delta_v / ion_mass).sqrt();
        let u_bohm_init = (Q_E * te[0] / ion_mass).sqrt();
        let u_i: Vec<f64> = z
            .iter()
            .map(|&zi| {
                let s = (zi / geom.domain_length).clamp(0.0, 1.0);
                -u_bohm_init * (1.0 - s) + u_beam * s * s
            })
            .collect();

        Ok(Solver {
            cfg,
            theta,
            n,
            dz,
            z,
            in_channel,
            v_anode: cond.discharge_voltage,
            delta_v,
            ion_mass,
            area,
            channel_width: geom.channel_width(),
            ionization_cost: cfg.propellant.ionization_cost_ev,
            k_en: cfg.propellant.electron_neutral_rate,
            sheath_energy_coeff,
            c_ion2: Q_E * settings.ion_temperature_ev / ion_mass,
            injection_flux,
            ingestion_mass_flow,
            nu_anom,
            omega_ce,
            u_clip,
            t_cathode: t_cathode_ev.max(settings.te_floor),
            n_n,
            n_i,
            u_i,
            te,
            j_total: 0.0,
            j_ion: vec![0.0; n],
            e_z: vec![0.0; n],
            phi: vec![0.0; n],
            u_e: vec![0.0; n],
            mobility: vec![0.0; n],
            rate_iz: vec![0.0; n],
            sink_wall_coeff: vec![0.0; n],
            source_ohmic: vec![0.0; n],
            source_ionization_loss: vec![0.0; n],
            time: 0.0,
            steps: 0,
        })
    }

    fn bohm_speed(&self, te: f64) -> f64 {
        (Q_E * te / self.ion_mass).sqrt()
    }

    /// Generalized Ohm's law closure: cross-field mobility, the scalar
    /// total current density from the potential-drop constraint, then the
    /// electric field, potential, and electron velocity.
    fn ohm_closure(&mut self) {
        let n = self.n;
        let dz = self.dz;
        let pe: Vec<f64> = (0..n).map(|i| self.n_i[i] * self.te[i]).collect();
        let mut pressure_grad = vec![0.0; n]; // (1/n_e) d(n_e T_e)/dz, V/m
        for i in 0..n {
            let grad = if i == 0 {
                (pe[1] - pe[0]) / dz
            } else if i == n - 1 {
                (pe[n - 1] - pe[n - 2]) / dz
            } else {
                (pe[i + 1] - pe[i - 1]) / (2.0 * dz)
            };
            pressure_grad[i] = grad / self.n_i[i];
        }

        let mut num = self.delta_v;
        let mut den = 0.0;
        let mut resistivity = vec![0.0; n];
        for i in 0..n {
            let k_en = self.k_en * (self.te[i].max(0.01) / 4.0).sqrt();
            let nu_e = (k_en * self.n_n[i] + self.nu_anom[i]).max(NU_FLOOR);
            let omega = self.omega_ce[i];
            // mu_perp = (e/(m_e nu)) / (1 + (w_ce/nu)^2), written in a
            // form that stays finite as nu -> 0
            let mu = (Q_E / M_E) * nu_e / (nu_e * nu_e + omega * omega);
            self.mobility[i] = mu;
            self.j_ion[i] = Q_E * self.n_i[i] * self.u_i[i];
            let r = 1.0 / (Q_E * self.n_i[i] * mu);
            resistivity[i] = r;
            num += (self.j_ion[i] * r + pressure_grad[i]) * dz;
            den += r * dz;
        }
        self.j_total = num / den;

        let mut cumulative = 0.0;
        for i in 0..n {
            let e = resistivity[i] * (self.j_total - self.j_ion[i]) - pressure_grad[i];
            self.e_z[i] = e;
            self.phi[i] = self.v_anode - (cumulative + 0.5 * e * dz);
            cumulative += e * dz;
            self.u_e[i] = -(self.j_total - self.j_ion[i]) / (Q_E * self.n_i[i]);
        }
    }

    /// Rates and energy sources for the current state; also feeds the
    /// timestep limiter.
    fn compute_sources(&mut self) {
        let shielded = self.cfg.geometry.wall_shielded;
        let t_anode = self.te[0];
        for i in 0..self.n {
            self.rate_iz[i] = self.cfg.propellant.ionization_rate.value(self.te[i]);
            self.source_ohmic[i] = -self.n_i[i] * self.u_e[i] * self.e_z[i];
            self.source_ionization_loss[i] =
                self.n_n[i] * self.n_i[i] * self.rate_iz[i] * self.ionization_cost;
            self.sink_wall_coeff[i] = if self.in_channel[i] {
                let t_wall = if shielded { t_anode } else { self.te[i] };
                let nu_ew = self.theta.c_w * self.bohm_speed(t_wall) / self.channel_width;
                self.n_i[i] * nu_ew * self.sheath_energy_coeff
            } else {
                0.0
            };
        }
    }

    fn timestep(&self) -> f64 {
        let settings = &self.cfg.settings;
        let mut max_speed: f64 = self.theta.u_n;
        let mut max_e: f64 = 0.0;
        let mut max_nu_iz: f64 = 0.0;
        let mut min_energy_time = f64::INFINITY;
        for i in 0..self.n {
            let cs = (Q_E * (self.te[i] + settings.ion_temperature_ev) / self.ion_mass).sqrt();
            max_speed = max_speed.max(self.u_i[i].abs() + cs);
            max_e = max_e.max(self.e_z[i].abs());
            max_nu_iz = max_nu_iz.max(self.rate_iz[i] * self.n_i[i]);
            let t_wall = if self.cfg.geometry.wall_shielded { self.te[0] } else { self.te[i] };
            let s_net = self.source_ohmic[i]
                - self.source_ionization_loss[i]
                - self.sink_wall_coeff[i] * t_wall;
            if s_net != 0.0 {
                min_energy_time = min_energy_time.min(1.5 * self.n_i[i] * self.te[i] / s_net.abs());
            }
        }
        let mut dt = settings.cfl * self.dz / max_speed;
        if max_e > 0.0 {
            dt = dt.min(settings.cfl * (self.dz * self.ion_mass / (Q_E * max_e)).sqrt());
        }
        if max_nu_iz > 0.0 {
            dt = dt.min(RATE_SAFETY / max_nu_iz);
        }
        dt = dt.min(RATE_SAFETY * min_energy_time);
        // keep enough samples inside the averaging window
        dt = dt.min((settings.duration - settings.averaging_start) / 200.0);
        dt.min(settings.duration - self.time)
    }

    /// Explicit update of neutrals and ions.
    fn heavy_species_step(&mut self, dt: f64) {
        let n = self.n;
        let dz = self.dz;
        let floor = self.cfg.settings.density_floor;
        let t_ion = self.cfg.settings.ion_temperature_ev;
        let u_n = self.theta.u_n;
        let shielded = self.cfg.geometry.wall_shielded;

        // anode sheath ghost state for the ion system
        let u_bohm0 = self.bohm_speed(self.te[0]);
        let u_ghost = self.u_i[0].min(-u_bohm0);
        let n_ghost = self.n_i[0];
        let anode_flux_n = n_ghost * u_ghost; // <= 0: ions into the anode
        let anode_flux_m = n_ghost * u_ghost * u_ghost + n_ghost * self.c_ion2;
        let recombined = (-anode_flux_n).max(0.0);

        // neutral face fluxes: injection (plus anode-recombined ions) at
        // the anode, upwind in the interior, outflow at the exit
        let mut flux_n = vec![0.0; n + 1];
        flux_n[0] = self.injection_flux + recombined;
        for i in 0..n {
            flux_n[i + 1] = u_n * self.n_n[i];
        }

        // ion interface fluxes (Rusanov)
        let mut flux_i1 = vec![0.0; n + 1];
        let mut flux_i2 = vec![0.0; n + 1];
        flux_i1[0] = anode_flux_n;
        flux_i2[0] = anode_flux_m;
        for f in 1..n {
            let (l, r) = (f - 1, f);
            let (nl, ul) = (self.n_i[l], self.u_i[l]);
            let (nr, ur) = (self.n_i[r], self.u_i[r]);
            let cs_l = (Q_E * (self.te[l] + t_ion) / self.ion_mass).sqrt();
            let cs_r = (Q_E * (self.te[r] + t_ion) / self.ion_mass).sqrt();
            let a = (ul.abs() + cs_l).max(ur.abs() + cs_r);
            flux_i1[f] = 0.5 * (nl * ul + nr * ur) - 0.5 * a * (nr - nl);
            flux_i2[f] = 0.5 * (nl * ul * ul + nl * self.c_ion2 + nr * ur * ur + nr * self.c_ion2)
                - 0.5 * a * (nr * ur - nl * ul);
        }
        let last = n - 1;
        flux_i1[n] = self.n_i[last] * self.u_i[last];
        flux_i2[n] =
            self.n_i[last] * self.u_i[last] * self.u_i[last] + self.n_i[last] * self.c_ion2;

        let accel = Q_E / self.ion_mass;
        for i in 0..n {
            let ionization = self.n_n[i] * self.n_i[i] * self.rate_iz[i];
            // unshielded walls recombine ions back to neutrals in place
            let wall_loss = if !shielded && self.in_channel[i] {
                let nu_iw = self.bohm_speed(self.te[i]) / self.channel_width;
                nu_iw * self.n_i[i]
            } else {
                0.0
            };

            let dn_n = -(flux_n[i + 1] - flux_n[i]) / dz - ionization + wall_loss;
            let dn_i = -(flux_i1[i + 1] - flux_i1[i]) / dz + ionization - wall_loss;
            let dm_i = -(flux_i2[i + 1] - flux_i2[i]) / dz
                + accel * self.n_i[i] * self.e_z[i]
                + ionization * u_n
                - wall_loss * self.u_i[i];

            let momentum = self.n_i[i] * self.u_i[i] + dt * dm_i;
            self.n_n[i] = (self.n_n[i] + dt * dn_n).max(floor);
            self.n_i[i] = (self.n_i[i] + dt * dn_i).max(floor);
            self.u_i[i] = (momentum / self.n_i[i]).clamp(-self.u_clip, self.u_clip);
        }
    }

    /// Backward-Euler electron energy update: upwinded convection,
    /// conduction, and the implicit wall sink assembled into a
    /// tridiagonal system for the new temperature.
    fn energy_step(&mut self, dt: f64) {
        let n = self.n;
        let dz = self.dz;
        let shielded = self.cfg.geometry.wall_shielded;

        let flux_mass: Vec<f64> = (0..n).map(|i| self.n_i[i] * self.u_e[i]).collect();
        let kappa: Vec<f64> =
            (0..n).map(|i| KAPPA_COEFF * self.mobility[i] * self.n_i[i] * self.te[i]).collect();

        let mut sub = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut sup = vec![0.0; n];
        let mut rhs = vec![0.0; n];

        for i in 0..n {
            let inertia = 1.5 * self.n_i[i] / dt;
            diag[i] += inertia;
            rhs[i] += inertia * self.te[i] + self.source_ohmic[i] - self.source_ionization_loss[i];
            if self.sink_wall_coeff[i] > 0.0 {
                if shielded {
                    // wall temperature tied to the anode region: explicit
                    rhs[i] -= self.sink_wall_coeff[i] * self.te[0];
                } else {
                    diag[i] += self.sink_wall_coeff[i];
                }
            }
        }

        // interior faces between cells i and i+1
        for i in 0..n - 1 {
            let g = 2.5 * 0.5 * (flux_mass[i] + flux_mass[i + 1]);
            let k = 0.5 * (kappa[i] + kappa[i + 1]) / dz;
            if g >= 0.0 {
                diag[i] += g / dz;
                sub[i + 1] -= g / dz;
            } else {
                sup[i] += g / dz;
                diag[i + 1] -= g / dz;
            }
            diag[i] += k / dz;
            sup[i] -= k / dz;
            diag[i + 1] += k / dz;
            sub[i + 1] -= k / dz;
        }

        // anode face: zero conductive flux, convection upwinded from the
        // interior cell (electron outflow into the anode)
        let g_left = 2.5 * flux_mass[0];
        diag[0] -= g_left / dz;

        // cathode face: Dirichlet temperature at the boundary
        let g_right = 2.5 * flux_mass[n - 1];
        if g_right >= 0.0 {
            diag[n - 1] += g_right / dz;
        } else {
            rhs[n - 1] -= g_right * self.t_cathode / dz;
        }
        let k_right = 2.0 * kappa[n - 1] / dz;
        diag[n - 1] += k_right / dz;
        rhs[n - 1] += k_right * self.t_cathode / dz;

        solve_tridiagonal(&sub, &diag, &sup, &mut rhs);
        let te_floor = self.cfg.settings.te_floor;
        for i in 0..n {
            self.te[i] = rhs[i].max(te_floor);
        }
    }

    fn check_finite(&self) -> Result<()> {
        if !self.j_total.is_finite() {
            return Err(Error::SolverDiverged {
                step: self.steps,
                time: self.time,
                field: "total current density",
            });
        }
        for (name, arr) in [
            ("neutral density", &self.n_n),
            ("ion density", &self.n_i),
            ("ion velocity", &self.u_i),
            ("electron temperature", &self.te),
        ] {
            if arr.iter().any(|v| !v.is_finite()) {
                return Err(Error::SolverDiverged {
                    step: self.steps,
                    time: self.time,
                    field: name,
                });
            }
        }
        Ok(())
    }

    /// One full time step; returns the dt taken.
    fn step(&mut self) -> Result<f64> {
        self.ohm_closure();
        self.compute_sources();
        let dt = self.timestep();
        if dt < DT_MIN {
            return Err(Error::TimestepCollapse { step: self.steps, dt });
        }
        self.heavy_species_step(dt);
        self.energy_step(dt);
        self.time += dt;
        self.steps += 1;
        self.check_finite()?;
        Ok(dt)
    }

    /// Max relative deviation of the per-cell reconstructed total current
    /// density (ion + electron) from the scalar closure value.
    fn current_uniformity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            let j_e = -Q_E * self.n_i[i] * self.u_e[i];
            let total = self.j_ion[i] + j_e;
            worst = worst
                .max((total - self.j_total).abs() / self.j_total.abs().max(f64::MIN_POSITIVE));
        }
        worst
    }
}

pub(super) fn run(
    cfg: &ThrusterConfig,
    theta: &ThrusterGroup,
    cond: &OperatingCondition,
    v_cc: f64,
    t_cathode_ev: f64,
) -> Result<ThrusterOutput> {
    let mut solver = Solver::new(cfg, theta, cond, v_cc, t_cathode_ev)?;
    let settings = &cfg.settings;
    let n = settings.cells;

    let started = Instant::now();
    let mut avg_time = 0.0;
    let mut avg_j = 0.0;
    let mut avg_thrust = 0.0;
    let mut avg_beam = 0.0;
    let mut avg_exit_mass = 0.0;
    let mut uniformity = 0.0f64;
    let mut prof_nn = vec![0.0; n];
    let mut prof_ni = vec![0.0; n];
    let mut prof_ui = vec![0.0; n];
    let mut prof_te = vec![0.0; n];
    let mut prof_phi = vec![0.0; n];
    let mut prof_ez = vec![0.0; n];

    while solver.time < settings.duration {
        let t_before = solver.time;
        let dt = solver.step()?;

        if solver.steps % CLOCK_CHECK_INTERVAL == 0 {
            let elapsed = started.elapsed().as_secs_f64();
            if elapsed > settings.wall_clock_limit {
                return Err(Error::SolverTimeout { elapsed, step: solver.steps });
            }
        }

        if t_before >= settings.averaging_start {
            avg_time += dt;
            avg_j += dt * solver.j_total;
            let last = n - 1;
            let exit_u = solver.u_i[last];
            let exit_ni = solver.n_i[last];
            avg_thrust += dt * solver.area * solver.ion_mass * exit_ni * exit_u * exit_u;
            avg_beam += dt * Q_E * exit_ni * exit_u * solver.area;
            avg_exit_mass += dt
                * solver.area
                * solver.ion_mass
                * (solver.n_n[last] * theta.u_n + exit_ni * exit_u);
            uniformity = uniformity.max(solver.current_uniformity_residual());
            for i in 0..n {
                prof_nn[i] += dt * solver.n_n[i];
                prof_ni[i] += dt * solver.n_i[i];
                prof_ui[i] += dt * solver.u_i[i];
                prof_te[i] += dt * solver.te[i];
                prof_phi[i] += dt * solver.phi[i];
                prof_ez[i] += dt * solver.e_z[i];
            }
        }
    }

    if avg_time <= 0.0 {
        return Err(Error::Config("averaging window collected no samples".into()));
    }
    let inv = 1.0 / avg_time;
    for arr in [&mut prof_nn, &mut prof_ni, &mut prof_ui, &mut prof_te, &mut prof_phi, &mut prof_ez]
    {
        for v in arr.iter_mut() {
            *v *= inv;
        }
    }

    Ok(ThrusterOutput {
        thrust: avg_thrust * inv,
        discharge_current: solver.area * (avg_j * inv),
        ion_beam_current: avg_beam * inv,
        exit_mass_flux: avg_exit_mass * inv,
        ingestion_mass_flow: solver.ingestion_mass_flow,
        current_uniformity_residual: uniformity,
        z: solver.z.clone(),
        neutral_density: prof_nn,
        ion_density: prof_ni,
        ion_velocity: prof_ui,
        electron_temperature: prof_te,
        potential: prof_phi,
        electric_field: prof_ez,
        averaging_window: (settings.averaging_start, settings.duration),
        steps: solver.steps,
    })
}
