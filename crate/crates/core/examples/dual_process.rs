// One system-ancilla process that satisfies both parallel conditions and
// yields both phases from the same run.

use mixphase::family::HamiltonianFamily;
use mixphase::loops::meridian_loop;
use mixphase::models::{g_interferometric_three_level_transport, g_uhlmann_three_level, ThreeLevel};
use mixphase::state::gibbs_state;
use mixphase::uhlmann::build_dual_process;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let family = ThreeLevel::new(1.0);
    let beta = 2.0;
    let lp = meridian_loop(0.0, 1, 2000)?;
    let rho0 = gibbs_state(&family.hamiltonian(lp.points()[0]), beta)?;
    let process = build_dual_process(&family, &lp, &rho0)?;

    for (name, value) in process.residuals().named() {
        println!("{name:<26} {value:.3e}");
    }
    let uhlmann = process.uhlmann()?;
    let interferometric = process.interferometric()?;
    println!(
        "Uhlmann G = {:.8} (closed {:.8})",
        uhlmann.amplitude.re,
        g_uhlmann_three_level(beta, 1.0, 1)?.re
    );
    println!(
        "interferometric G = {:.8} (transport closed form {:.8})",
        interferometric.amplitude.re,
        g_interferometric_three_level_transport(beta, 1.0, 1)?.re
    );
    println!("non-transitivity witness {:.4}", process.non_transitivity());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("dual_process example failed");
}
