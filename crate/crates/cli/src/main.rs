use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use workbench_cli::{runner, scenario, CliError};

#[derive(Parser)]
#[command(
    name = "workbench",
    about = "Scenario-driven workbench for completions of modules and complexes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a scenario file and emit a report.
    Run {
        scenario: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json", value_parser = ["json", "text"])]
        format: String,
        /// Override the default depth setting.
        #[arg(long)]
        depth: Option<usize>,
        /// Override the default horizon setting.
        #[arg(long)]
        horizon: Option<usize>,
        /// Omit wall-clock timings so reruns are byte-identical.
        #[arg(long)]
        no_timings: bool,
        /// Run independent pipeline steps in parallel.
        #[arg(long)]
        parallel: bool,
    },
    /// Parse and validate a scenario file without running it.
    Validate { scenario: PathBuf },
    /// List the shipped example scenarios.
    Examples,
}

/// Shipped example scenarios, compiled in: `(name, source)`.
pub const EXAMPLES: &[(&str, &str)] = &[
    ("ring_tour", include_str!("../scenarios/ring_tour.json")),
    (
        "modules_over_z8",
        include_str!("../scenarios/modules_over_z8.json"),
    ),
    (
        "complex_basics",
        include_str!("../scenarios/complex_basics.json"),
    ),
    (
        "koszul_towers",
        include_str!("../scenarios/koszul_towers.json"),
    ),
    ("matlis_z8", include_str!("../scenarios/matlis_z8.json")),
    (
        "matlis_table_algebra",
        include_str!("../scenarios/matlis_table_algebra.json"),
    ),
    (
        "prufer_completion",
        include_str!("../scenarios/prufer_completion.json"),
    ),
    (
        "yoneda_truncations",
        include_str!("../scenarios/yoneda_truncations.json"),
    ),
    ("fd_lattice", include_str!("../scenarios/fd_lattice.json")),
    (
        "phantoms_and_telescopes",
        include_str!("../scenarios/phantoms_and_telescopes.json"),
    ),
];

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run {
            scenario: path,
            out,
            format,
            depth,
            horizon,
            no_timings,
            parallel,
        } => {
            let text = std::fs::read_to_string(&path)?;
            let mut sc = scenario::parse_scenario(&text)?;
            if let Some(d) = depth {
                sc.settings.depth = Some(d.min(scenario::MAX_DEPTH));
            }
            if let Some(h) = horizon {
                sc.settings.horizon = Some(h.min(scenario::MAX_DEPTH));
            }
            let report = runner::run(&sc, &text, parallel)?;
            let rendered = match format.as_str() {
                "json" => report.emit_json(!no_timings),
                _ => report.emit_text(!no_timings),
            };
            match out {
                Some(path) => std::fs::write(path, rendered)?,
                None => print!("{rendered}"),
            }
            Ok(())
        }
        Command::Validate { scenario: path } => {
            let text = std::fs::read_to_string(&path)?;
            let sc = scenario::parse_scenario(&text)?;
            // object construction is part of validation: matrices must parse
            // and morphisms must be well defined
            workbench_cli::value::build_env(&sc)?;
            println!(
                "ok: {} objects, {} pipeline steps",
                sc.objects.len(),
                sc.pipeline.len()
            );
            Ok(())
        }
        Command::Examples => {
            for (name, source) in EXAMPLES {
                let parsed = scenario::parse_scenario(source)
                    .map_err(|e| CliError::Scenario(format!("shipped scenario {name}: {e}")))?;
                println!(
                    "{name}: {} objects, {} steps",
                    parsed.objects.len(),
                    parsed.pipeline.len()
                );
            }
            Ok(())
        }
    }
}
