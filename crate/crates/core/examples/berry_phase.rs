// Discrete Berry phases `-sum arg <n_k|n_{k+1}>` of every level, for the
// spin-1/2 equator and the three-level meridian.

use mixphase::interferometric::berry_phase_level;
use mixphase::linalg::wrap_angle;
use mixphase::loops::{equator_loop, meridian_loop};
use mixphase::models::{ThreeLevel, TwoLevel};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spin = TwoLevel::new(1.0);
    let equator = equator_loop(1, 400)?;
    for level in 0..2 {
        let beta = berry_phase_level(&spin, &equator, level)?;
        println!("two-level equator, level {level}: {beta:+.10} (mod 2 pi: {:+.10})", wrap_angle(beta));
    }

    let three = ThreeLevel::new(1.0);
    for omega in [1, 2] {
        let meridian = meridian_loop(0.4, omega, 400)?;
        let phases: Vec<f64> = (0..3)
            .map(|level| berry_phase_level(&three, &meridian, level).map(wrap_angle))
            .collect::<Result<_, _>>()?;
        println!("three-level meridian, Omega = {omega}: {phases:+.10?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("berry_phase example failed");
}
