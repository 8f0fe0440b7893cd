// Scratch harness for solver bring-up; prints reference-fixture outputs.
use hallcal::constants::torr_to_pa;
use hallcal::params::{OperatingCondition, ThrusterGroup};
use hallcal::thruster::{
    solve_discharge, MagneticProfile, PropellantSpec, SolverSettings, ThrusterConfig,
    ThrusterGeometry,
};

fn env_f64(key: &str, default: f64) -> f64 {
    std::env::var(key).ok().and_then(|v| v.parse().ok()).unwrap_or(default)
}

fn main() {
    let mut propellant = if env_f64("SMOKE_KR", 0.0) > 0.5 { PropellantSpec::krypton() } else { PropellantSpec::xenon() };
    propellant.ionization_cost_ev = env_f64("SMOKE_ECOST", propellant.ionization_cost_ev);
    let shielded = env_f64("SMOKE_SHIELDED", 0.0) > 0.5;
    let config = ThrusterConfig {
        geometry: ThrusterGeometry::new(0.025, 0.035, 0.05, None, shielded).unwrap(),
        field: MagneticProfile::new(0.015, 0.025, 0.011, 0.018).unwrap(),
        propellant,
        settings: {
            let mut s = SolverSettings::default();
            s.duration = env_f64("SMOKE_DUR", s.duration);
            s.averaging_start = env_f64("SMOKE_AVG", s.averaging_start);
            s.initial_plasma_density = env_f64("SMOKE_SEED", s.initial_plasma_density);
            s.cells = env_f64("SMOKE_CELLS", s.cells as f64) as usize;
            s
        },
    };
    let theta = ThrusterGroup {
        alpha_anom: env_f64("SMOKE_ALPHA", 0.06),
        beta_anom: env_f64("SMOKE_BETA", 0.99),
        z_anom: env_f64("SMOKE_ZANOM", 1.14),
        l_anom: 0.43,
        dz_anom: 0.33,
        u_n: env_f64("SMOKE_UN", 278.0),
        c_w: env_f64("SMOKE_CW", 0.67),
        f_n: 5.23,
    };
    let cond = OperatingCondition::new(300.0, env_f64("SMOKE_PB", torr_to_pa(1e-5)), 5e-6).unwrap();
    let start = std::time::Instant::now();
    match solve_discharge(&config, &theta, &cond, 32.0, 2.92) {
        Ok(out) => {
            let wall = start.elapsed().as_secs_f64();
            println!("steps            : {}", out.steps);
            println!("wall time        : {wall:.2} s");
            println!("thrust           : {:.2} mN", out.thrust * 1e3);
            println!("I_D              : {:.3} A", out.discharge_current);
            println!("I_B              : {:.3} A", out.ion_beam_current);
            println!("exit u_ion       : {:.0} m/s", out.ion_velocity.last().unwrap());
            println!("exit n_i         : {:.3e}", out.ion_density.last().unwrap());
            println!("peak T_e         : {:.2} eV", out.electron_temperature.iter().cloned().fold(0.0, f64::max));
            println!("peak E_z         : {:.3e} V/m", out.electric_field.iter().cloned().fold(f64::MIN, f64::max));
            let mdot_in = 5e-6 + out.ingestion_mass_flow;
            println!("mass in          : {:.4e} kg/s", mdot_in);
            println!("mass out (exit)  : {:.4e} kg/s", out.exit_mass_flux);
            println!("balance error    : {:.2} %", 100.0 * (out.exit_mass_flux - mdot_in) / mdot_in);
            println!("uniformity resid : {:.3e}", out.current_uniformity_residual);
            let half = 0.5 * out.ion_velocity.last().unwrap();
            let zh = out
                .z
                .iter()
                .zip(&out.ion_velocity)
                .find(|(_, &u)| u >= half)
                .map(|(z, _)| *z)
                .unwrap_or(f64::NAN);
            println!("half-rise z      : {:.4} m", zh);
            println!("\n   z[m]     n_n        n_i        u_i       T_e     phi      E_z");
            for i in (0..out.z.len()).step_by(5) {
                println!(
                    "{:8.4} {:10.3e} {:10.3e} {:9.1} {:7.2} {:8.2} {:9.2e}",
                    out.z[i],
                    out.neutral_density[i],
                    out.ion_density[i],
                    out.ion_velocity[i],
                    out.electron_temperature[i],
                    out.potential[i],
                    out.electric_field[i]
                );
            }
        }
        Err(e) => println!("SOLVE FAILED: {e}"),
    }
}
