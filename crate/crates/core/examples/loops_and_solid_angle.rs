// Parameter loops: the extended meridian, the equator, a latitude circle,
// and the trapezoidal solid-angle phase, exact on circles of latitude.

use std::f64::consts::PI;

use mixphase::loops::{equator_loop, meridian_loop, solid_angle_phase, Convention, ParameterLoop, SpherePoint};

fn latitude(theta: f64, n: usize) -> Result<ParameterLoop, mixphase::Error> {
    let points = (0..=n).map(|k| SpherePoint::new(theta, 2.0 * PI * k as f64 / n as f64)).collect();
    ParameterLoop::new(Convention::Standard, points, 1)
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let meridian = meridian_loop(0.0, 2, 100)?;
    println!(
        "meridian, Omega = 2: {} segments, duration {:.6}, theta variation {:.6}",
        meridian.n_segments(),
        meridian.duration(),
        meridian.theta_variation()
    );
    println!("meridian solid angle: {:?}", solid_angle_phase(&meridian));

    let equator = equator_loop(1, 64)?;
    println!("equator solid angle: {:.12} (exact pi)", solid_angle_phase(&equator).value);

    let theta = 1.0;
    let exact = PI * (1.0 - f64::cos(theta));
    let coarse = solid_angle_phase(&latitude(theta, 16)?).value;
    let fine = solid_angle_phase(&latitude(theta, 32)?).value;
    println!("latitude theta = 1: 16 steps {coarse:.12}, 32 steps {fine:.12}, exact {exact:.12}");

    let reversed = solid_angle_phase(&latitude(theta, 32)?.reversed()).value;
    println!("reversed loop: {reversed:.12}");
    assert!((reversed + fine).abs() < 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("loops_and_solid_angle example failed");
}
