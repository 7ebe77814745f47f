use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dwork_cli::{count, table, verify, CliError, Format, Method, Outcome, Request, DEFAULT_TOLERANCE};

#[derive(Parser, Debug)]
#[command(name = "dwork")]
#[command(about = "Point counts of Dwork hypersurfaces over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Characteristic of the field
    #[arg(long)]
    p: u32,

    /// Extension degree, q = p^e
    #[arg(long, default_value_t = 1)]
    e: u32,

    /// Use the second-smallest primitive element as generator
    #[arg(long)]
    generator_alt: bool,

    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[command(flatten)]
    field: FieldArgs,

    /// Degree of the hypersurface
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..=6))]
    degree: u32,

    /// Methods to run (comma-separated)
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    methods: Vec<Method>,

    /// Largest accepted distance of a character-sum count from an integer
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
}

impl CountArgs {
    fn request(&self) -> Request {
        Request {
            p: self.field.p,
            e: self.field.e,
            generator_alt: self.field.generator_alt,
            degree: self.degree,
            methods: self.methods.clone(),
            tolerance: self.tolerance,
            format: self.field.format,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count one member of the family by each method
    Count {
        #[command(flatten)]
        args: CountArgs,

        /// λ as an integer, or comma-separated coefficients when e > 1
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// One row per λ
    Table {
        #[command(flatten)]
        args: CountArgs,

        /// λ values; repeat the flag for several
        #[arg(long, allow_hyphen_values = true, required_unless_present = "all_lambda")]
        lambda: Vec<String>,

        /// Every nonzero λ with λ^degree ≠ 1
        #[arg(long, conflicts_with = "lambda")]
        all_lambda: bool,
    },
    /// Run the character-sum and hypergeometric identity suite
    Verify {
        #[command(flatten)]
        field: FieldArgs,
    },
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Count { args, lambda } => count(&args.request(), &lambda),
        Command::Table { args, lambda, all_lambda } => {
            let list = (!all_lambda).then_some(lambda.as_slice());
            table(&args.request(), list)
        }
        Command::Verify { field } => verify(&Request {
            p: field.p,
            e: field.e,
            generator_alt: field.generator_alt,
            degree: 6,
            methods: Vec::new(),
            tolerance: DEFAULT_TOLERANCE,
            format: field.format,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|outcome| {
        print!("{}", outcome.output);
        if !outcome.output.ends_with('\n') {
            println!();
        }
        outcome.failure.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
