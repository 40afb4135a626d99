// Path-ordered Uhlmann holonomy of the three-level Gibbs loop against the
// closed form, with the error quartering under step doubling.

use mixphase::family::HamiltonianFamily;
use mixphase::linalg::max_abs;
use mixphase::loops::meridian_loop;
use mixphase::models::{uhlmann_holonomy_three_level, ThreeLevel};
use mixphase::state::gibbs_state;
use mixphase::uhlmann::{holonomy_along, uhlmann_phase};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let family = ThreeLevel::new(1.0);
    let (beta, omega, phi0) = (2.0, 1, 0.7);
    let closed = uhlmann_holonomy_three_level(beta, 1.0, omega, phi0);

    let mut previous = None;
    for n in [250, 500, 1000, 2000] {
        let lp = meridian_loop(phi0, omega, n)?;
        let numeric = holonomy_along(&family, &lp, beta)?;
        let err = max_abs(&(numeric.as_matrix() - closed.as_matrix()));
        let ratio = previous.map(|p: f64| p / err).unwrap_or(f64::NAN);
        println!("n = {n:>5}: max entry error {err:.3e}, ratio {ratio:.3}");
        previous = Some(err);
    }

    let lp = meridian_loop(phi0, omega, 2000)?;
    let rho0 = gibbs_state(&family.hamiltonian(lp.points()[0]), beta)?;
    let u = holonomy_along(&family, &lp, beta)?;
    let phase = uhlmann_phase(&rho0, &u)?;
    println!("G_U = {:.8}, theta_U = {:.8}", phase.amplitude.re, phase.phase_or_nan());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("uhlmann_holonomy example failed");
}
