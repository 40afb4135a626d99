// Temperature sweeps of both phases, with jump counting and CSV output.

use mixphase::analysis::{count_jumps, sweep, temperature_grid, Method, PhaseKind, Spacing};
use mixphase::cli::rows_to_csv;
use mixphase::models::ModelConfig;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let grid = temperature_grid(0.2, 6.0, 400, Spacing::Linear)?;
    for (kind, omega) in [
        (PhaseKind::Interferometric, 1),
        (PhaseKind::Interferometric, 2),
        (PhaseKind::Uhlmann, 1),
        (PhaseKind::Uhlmann, 2),
    ] {
        let config = ModelConfig::three_level_meridian(1.0, omega);
        let rows = sweep(&config, kind, Method::Closed, &grid, 0)?;
        println!("{kind:?}, Omega = {omega}: {} jumps over {} rows", count_jumps(&rows), rows.len());
    }

    let config = ModelConfig::three_level_meridian(1.0, 2);
    let coarse = temperature_grid(1.0, 5.0, 5, Spacing::Linear)?;
    let rows = sweep(&config, PhaseKind::Interferometric, Method::Closed, &coarse, 0)?;
    print!("{}", rows_to_csv(&rows));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("temperature_sweep example failed");
}
