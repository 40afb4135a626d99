// Closed-form amplitudes, phases and critical temperatures of the two- and
// three-level models.

use mixphase::loops::equator_loop;
use mixphase::models::{
    chi_three_level, tc_interferometric_three_level, tc_uhlmann_spin_half, theta_i_three_level,
    theta_i_two_level, theta_u_spin_half, theta_u_three_level,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let r = 1.0;
    println!("interferometric three-level Tc = {:.9}", tc_interferometric_three_level(r));
    println!("Uhlmann spin-1/2 Tc (Omega 1, n 0) = {:.9}", tc_uhlmann_spin_half(r, 1, 0)?);

    for t in [0.5, 2.0, 4.0] {
        let beta = 1.0 / t;
        let i2 = theta_i_three_level(beta, r, 2)?;
        let u1 = theta_u_three_level(beta, r, 1)?;
        let s1 = theta_u_spin_half(beta, r, 1)?;
        println!(
            "T = {t}: theta_I(3, Omega 2) = {:.6}, theta_U(3, Omega 1) = {:.6}, theta_U(1/2, Omega 1) = {:.6}, chi = {:.6}",
            i2.phase_or_nan(),
            u1.phase_or_nan(),
            s1.phase_or_nan(),
            chi_three_level(beta, r)
        );
    }

    let equator = equator_loop(1, 8)?;
    let ground = theta_i_two_level(10.0, r, &equator)?;
    println!("two-level equator at beta R = 10: G = {:.12}, theta_I = {:.12}", ground.amplitude.re, ground.phase_or_nan());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("closed_forms example failed");
}
