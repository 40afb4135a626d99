// Drives the command-line entry point in-process, as the `mixphase` binary does.

use mixphase::cli::run;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let invocations: [&[&str]; 3] = [
        &["mixphase", "phase", "--model", "three-level", "--phase", "uhlmann", "--omega", "1", "--T", "0.5"],
        &["mixphase", "find-tc", "--omega", "2", "--t-lo", "2", "--t-hi", "4"],
        &["mixphase", "sweep", "--omega", "2", "--t-min", "1", "--t-max", "5", "--n-points", "3"],
    ];
    for args in invocations {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().copied(), &mut out, &mut err);
        println!("$ {}\nexit {code}\n{}", args[1..].join(" "), String::from_utf8(out)?);
        if code != 0 {
            return Err(String::from_utf8(err)?.into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("command_line example failed");
}
