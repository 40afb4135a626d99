macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(gibbs_purification, "gibbs_purification.rs");
example!(loops_and_solid_angle, "loops_and_solid_angle.rs");
example!(berry_phase, "berry_phase.rs");
example!(interferometric_transport, "interferometric_transport.rs");
example!(uhlmann_holonomy, "uhlmann_holonomy.rs");
example!(dual_process, "dual_process.rs");
example!(closed_forms, "closed_forms.rs");
example!(temperature_sweep, "temperature_sweep.rs");
example!(critical_temperature, "critical_temperature.rs");
example!(verification_suite, "verification_suite.rs");
example!(command_line, "command_line.rs");

#[test]
fn gibbs_purification_example_runs() {
    gibbs_purification::run_example().expect("gibbs_purification example should run");
}

#[test]
fn loops_and_solid_angle_example_runs() {
    loops_and_solid_angle::run_example().expect("loops_and_solid_angle example should run");
}

#[test]
fn berry_phase_example_runs() {
    berry_phase::run_example().expect("berry_phase example should run");
}

#[test]
fn interferometric_transport_example_runs() {
    interferometric_transport::run_example().expect("interferometric_transport example should run");
}

#[test]
fn uhlmann_holonomy_example_runs() {
    uhlmann_holonomy::run_example().expect("uhlmann_holonomy example should run");
}

#[test]
fn dual_process_example_runs() {
    dual_process::run_example().expect("dual_process example should run");
}

#[test]
fn closed_forms_example_runs() {
    closed_forms::run_example().expect("closed_forms example should run");
}

#[test]
fn temperature_sweep_example_runs() {
    temperature_sweep::run_example().expect("temperature_sweep example should run");
}

#[test]
fn critical_temperature_example_runs() {
    critical_temperature::run_example().expect("critical_temperature example should run");
}

#[test]
fn verification_suite_example_runs() {
    verification_suite::run_example().expect("verification_suite example should run");
}

#[test]
fn command_line_example_runs() {
    command_line::run_example().expect("command_line example should run");
}
