//! Experiment orchestration: instance files, multi-trial runs with
//! guarantee checks, CSV emission, and the command-line front end.

pub mod cli;
pub mod experiment;
pub mod io;

pub use cli::cli_main;
pub use experiment::{
    run_experiment, run_one, CheckLabel, CheckSpec, ExperimentResult, ExperimentSpec,
    GuaranteeCheckResult, InstanceSource, SolverParams, TrialRow,
};
pub use io::{
    load_description, load_instance, save_instance, write_curves_csv, write_trials_csv,
    InstanceDescription,
};
