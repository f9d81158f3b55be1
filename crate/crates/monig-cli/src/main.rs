//! `monig`: train, evaluate, and probe multimodal evidential regressors
//! from the command line.
//!
//! Exit codes: 0 on success, 1 on runtime failures (I/O, bad data,
//! numerical trouble), 2 on configuration and usage errors.

mod commands;
mod common;

use clap::{Parser, Subcommand};
use monig_core::error::MonigError;

#[derive(Parser)]
#[command(name = "monig", version, about = "Multimodal evidential regression with NIG fusion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthetic cubic experiment: train and dump uncertainty curves
    Synth(commands::SynthArgs),
    /// Train a model on tabular data and evaluate the test split
    Train(commands::TrainArgs),
    /// Evaluate a saved checkpoint
    Eval(commands::EvalArgs),
    /// OOD detection sweep over noise targets and levels
    Ood(commands::OodArgs),
    /// Multi-seed ablations: robustness, fusion rules, UEIR
    Ablate(commands::AblateArgs),
    /// Fuse NIG parameters from a CSV in closed form
    Fuse(commands::FuseArgs),
}

fn exit_code(e: &MonigError) -> i32 {
    match e {
        MonigError::Config(_) | MonigError::Schema(_) => 2,
        _ => 1,
    }
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Synth(args) => commands::synth(args),
        Command::Train(args) => commands::train_cmd(args),
        Command::Eval(args) => commands::eval_cmd(args),
        Command::Ood(args) => commands::ood_cmd(args),
        Command::Ablate(args) => commands::ablate_cmd(args),
        Command::Fuse(args) => commands::fuse_cmd(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(exit_code(&e));
    }
}
