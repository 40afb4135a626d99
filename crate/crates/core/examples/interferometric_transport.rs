// Parallel-transport unitary `U(t)` for a Gibbs state and the resulting
// interferometric amplitude `G = Tr[rho(0) U(tau)]`.

use mixphase::family::HamiltonianFamily;
use mixphase::interferometric::{interferometric_phase, total_phase, transport_unitary};
use mixphase::loops::{equator_loop, meridian_loop};
use mixphase::models::{g_interferometric_three_level_transport, ThreeLevel, TwoLevel};
use mixphase::state::gibbs_state;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spin = TwoLevel::new(1.0);
    let equator = equator_loop(1, 400)?;
    let rho0 = gibbs_state(&spin.hamiltonian(equator.points()[0]), 1.0)?;
    let transport = transport_unitary(&spin, &equator, &rho0)?;
    let g = total_phase(&rho0, transport.last())?;
    let from_levels = interferometric_phase(rho0.eigenvalues(), transport.level_phases())?;
    println!("two-level equator, beta R = 1: G = {:.10}, phase {:.10}", g.amplitude, g.phase_or_nan());
    println!("  from level phases: {:.10}, residual {:.3e}", from_levels.amplitude, transport.residual());

    let three = ThreeLevel::new(1.0);
    for omega in [1, 2] {
        let meridian = meridian_loop(0.0, omega, 400)?;
        let rho0 = gibbs_state(&three.hamiltonian(meridian.points()[0]), 2.0)?;
        let transport = transport_unitary(&three, &meridian, &rho0)?;
        let g = total_phase(&rho0, transport.last())?;
        let expected = g_interferometric_three_level_transport(2.0, 1.0, omega)?;
        println!(
            "three-level meridian, Omega = {omega}: G = {:.10} (transport closed form {:.10})",
            g.amplitude.re, expected.re
        );
        assert!((g.amplitude - expected).norm() < 1e-9);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("interferometric_transport example failed");
}
