use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use confidex::commands::{self, DataSource};
use confidex::nb::{FitOptions, ModelDocument, ModelKind, DEFAULT_ALPHA};
use confidex::{Error, ErrorKind};

#[derive(Parser)]
#[command(
    name = "confidex",
    version,
    about = "Confidence metrics and Naive Bayes sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep described by a TOML config
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Evaluate a saved model on a corpus
    Eval {
        #[arg(long)]
        model: PathBuf,
        /// Corpus directory or CSV file
        #[arg(long)]
        data: PathBuf,
        /// Print the probabilistic confusion matrix
        #[arg(long)]
        confusion: bool,
        #[arg(long, default_value = "label")]
        label_column: String,
        #[arg(long, default_value = "text")]
        text_column: String,
    },
    /// Apply the complement map to a comma-separated distribution
    Map {
        #[arg(allow_hyphen_values = true)]
        distribution: String,
    },
    /// Fit a model on a corpus and save it as JSON
    Fit {
        #[arg(long)]
        model_kind: ModelKind,
        #[arg(long, default_value_t = DEFAULT_ALPHA)]
        alpha: f64,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        min_df: usize,
        #[arg(long)]
        complement_norm: bool,
        #[arg(long, default_value = "label")]
        label_column: String,
        #[arg(long, default_value = "text")]
        text_column: String,
    },
}

fn run(command: Command) -> Result<(), (ErrorKind, Error)> {
    let tag = |e: Error| (e.kind(), e);
    match command {
        Command::Map { distribution } => {
            let out =
                commands::map_distribution(&distribution).map_err(|e| (ErrorKind::Usage, e))?;
            println!("{out}");
        }
        Command::Sweep { config } => {
            let config = commands::load_config(&config).map_err(tag)?;
            let outcome = commands::sweep(&config).map_err(tag)?;
            for flag in &outcome.flags {
                eprintln!("note: {flag}");
            }
            match &outcome.csv {
                Some(p) => eprintln!("wrote {} rows to {}", outcome.rows.len(), p.display()),
                None => print!("{}", confidex::experiment::csv_string(&outcome.rows)),
            }
            for p in &outcome.plot_files {
                eprintln!("wrote {}", p.display());
            }
        }
        Command::Eval {
            model,
            data,
            confusion,
            label_column,
            text_column,
        } => {
            let doc = ModelDocument::load(&model).map_err(tag)?;
            let corpus = DataSource::detect(data, &label_column, &text_column)
                .load()
                .map_err(tag)?;
            let report = commands::eval_model(&doc, &corpus, confusion).map_err(tag)?;
            print!("{}", report.render());
        }
        Command::Fit {
            model_kind,
            alpha,
            data,
            out,
            min_df,
            complement_norm,
            label_column,
            text_column,
        } => {
            let corpus = DataSource::detect(data, &label_column, &text_column)
                .load()
                .map_err(tag)?;
            let doc = commands::fit_model(
                model_kind,
                alpha,
                &corpus,
                min_df,
                FitOptions { complement_norm },
            )
            .map_err(tag)?;
            doc.save(&out).map_err(tag)?;
            eprintln!(
                "saved {} model ({} classes, {} features) to {}",
                model_kind,
                doc.n_classes,
                doc.vocab_size,
                out.display()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err((kind, e)) => {
            eprintln!("error: {e}");
            ExitCode::from(kind.exit_code() as u8)
        }
    }
}
