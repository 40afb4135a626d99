// Gibbs states, purification `W = sqrt(rho) V`, reconstruction and overlaps.

use mixphase::family::HamiltonianFamily;
use mixphase::linalg::{max_abs, UnitaryMatrix};
use mixphase::loops::SpherePoint;
use mixphase::models::{u_three_level, ThreeLevel};
use mixphase::state::{gibbs_state, purified_overlap, purify, reconstruct};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let family = ThreeLevel::new(1.0);
    let p = SpherePoint::new(0.9, 0.3);
    let h = family.hamiltonian(p);

    for beta in [0.1, 1.0, 10.0] {
        let rho = gibbs_state(&h, beta)?;
        println!("beta = {beta:>5}: eigenvalues {:?}", rho.eigenvalues());
    }

    let rho = gibbs_state(&h, 2.0)?;
    let w = purify(&rho, &UnitaryMatrix::identity(3))?;
    let back = reconstruct(&w)?;
    let defect = max_abs(&(back.as_matrix() - rho.as_matrix()));
    println!("reconstruction defect |W W^dagger - rho| = {defect:.3e}");
    assert!(defect < 1e-12);

    let v = u_three_level(p);
    let w_rotated = purify(&rho, &v)?;
    let overlap = purified_overlap(&w, &w_rotated)?;
    println!("<W|W V> = {:.6} {:+.6}i", overlap.re, overlap.im);
    let self_overlap = purified_overlap(&w, &w)?;
    assert!((self_overlap.re - 1.0).abs() < 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("gibbs_purification example failed");
}
