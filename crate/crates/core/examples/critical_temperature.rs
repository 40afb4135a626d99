// Critical temperatures by bracketing and bisection on `Re G(T)`.

use mixphase::analysis::{find_tc, scan_bracket, Method, PhaseKind};
use mixphase::models::{tc_uhlmann_spin_half, LoopKind, ModelConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let three_2 = ModelConfig::three_level_meridian(1.0, 2);
    let tc = find_tc(&three_2, PhaseKind::Interferometric, Method::Closed, (2.0, 4.0), 1e-12, 0)?;
    println!("three-level interferometric, Omega = 2: Tc = {:.9} after {} steps", tc.tc, tc.iterations);

    let three_1 = ModelConfig::three_level_meridian(1.0, 1);
    let bracket = scan_bracket(&three_1, PhaseKind::Uhlmann, Method::Closed, 0.05, 10.0, 400, 0)?;
    let tc = find_tc(&three_1, PhaseKind::Uhlmann, Method::Closed, bracket, 1e-10, 0)?;
    println!("three-level Uhlmann, Omega = 1: Tc = {:.6}", tc.tc);

    let spin = ModelConfig::two_level(1.0, 1, LoopKind::Meridian);
    let tc = find_tc(&spin, PhaseKind::Uhlmann, Method::Numeric, (0.3, 0.5), 1e-8, 400)?;
    println!("spin-1/2 Uhlmann, numeric: Tc = {:.8} (closed {:.8})", tc.tc, tc_uhlmann_spin_half(1.0, 1, 0)?);

    match find_tc(&three_1, PhaseKind::Interferometric, Method::Closed, (0.05, 10.0), 1e-10, 0) {
        Err(e) => println!("three-level interferometric, Omega = 1: {}", e.code()),
        Ok(tc) => println!("unexpected root at {}", tc.tc),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("critical_temperature example failed");
}
