// Runs a few named checks of the verification suite and prints the table.

use mixphase::verify::{check_names, run_checks};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("available checks: {}", check_names().join(", "));
    let selected: Vec<String> = ["chi-limits", "gibbs-covariance", "non-transitivity", "berry-gauge-invariance"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let outcomes = run_checks(1000, &selected).ok_or("unknown check name")?;
    for o in &outcomes {
        println!("{:<26} {} {:.3e} {}", o.name, if o.passed { "PASS" } else { "FAIL" }, o.value, o.detail);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("verification_suite example failed");
}
