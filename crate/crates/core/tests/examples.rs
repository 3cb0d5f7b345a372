//! Runs every example's `run_example` so the examples stay working.

macro_rules! example {
    ($name:ident, $path:literal) => {
        #[path = $path]
        mod $name;

        #[test]
        fn $name() {
            $name::run_example().unwrap();
        }
    };
}

example!(distance, "../examples/distance.rs");
example!(directional_distance, "../examples/directional_distance.rs");
example!(baselines, "../examples/baselines.rs");
example!(reference_points, "../examples/reference_points.rs");
example!(registration, "../examples/registration.rs");
example!(scene_flow, "../examples/scene_flow.rs");
example!(synth_io, "../examples/synth_io.rs");
example!(gradient_check, "../examples/gradient_check.rs");

#[path = "../examples/cli_pipeline.rs"]
mod cli_pipeline;

#[test]
fn cli_pipeline_runs_the_binary() {
    std::env::set_var("CLGD_BIN", env!("CARGO_BIN_EXE_clgd"));
    cli_pipeline::run_example().unwrap();
}
