use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use f1_cli::env::Env;
use f1_cli::run::{parse_range, parse_ring, run, Command, Format, Verb};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerbArg {
    Spec,
    Sections,
    Hom,
    Points,
    Zeta,
    Pic,
    Glnorder,
    Adjunction,
    Pushout,
    Coherent,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutArg {
    Json,
    Dot,
    Text,
}

/// Computations with monoid schemes over F1.
///
/// Targets are names from the document given with --file, or inline
/// expressions such as `dk(3)`, `nat(2)`, `p1` or `gl(2)`.
#[derive(Debug, Parser)]
#[command(name = "f1", version)]
struct Cli {
    verb: VerbArg,
    targets: Vec<String>,
    /// A `.f1m` document with monoid, scheme and morphism definitions.
    #[arg(short, long)]
    file: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    out: OutArg,
    /// Shorthand for `--out dot`.
    #[arg(long)]
    dot: bool,
    /// Range of k for counts over D_k, e.g. `2..10`.
    #[arg(long, value_parser = parse_range)]
    k: Option<std::ops::RangeInclusive<usize>>,
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long, default_value_t = 10)]
    trunc: usize,
    /// Test ring for `adjunction`: `6` or `2x3`.
    #[arg(long)]
    ring: Option<String>,
}

fn verb(v: VerbArg) -> Verb {
    match v {
        VerbArg::Spec => Verb::Spec,
        VerbArg::Sections => Verb::Sections,
        VerbArg::Hom => Verb::Hom,
        VerbArg::Points => Verb::Points,
        VerbArg::Zeta => Verb::Zeta,
        VerbArg::Pic => Verb::Pic,
        VerbArg::Glnorder => Verb::Glnorder,
        VerbArg::Adjunction => Verb::Adjunction,
        VerbArg::Pushout => Verb::Pushout,
        VerbArg::Coherent => Verb::Coherent,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env = match &cli.file {
        None => Env::default(),
        Some(path) => {
            let src = match std::fs::read_to_string(path) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("f1: cannot read {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            };
            match Env::from_source(&src) {
                Ok(env) => env,
                Err(e) => {
                    eprintln!("{}:{e}", path.display());
                    return ExitCode::from(2);
                }
            }
        }
    };
    let format = match (cli.dot, cli.out) {
        (true, _) | (_, OutArg::Dot) => Format::Dot,
        (_, OutArg::Json) => Format::Json,
        (_, OutArg::Text) => Format::Text,
    };
    let ring = match cli.ring.as_deref().map(parse_ring).transpose() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("f1: --ring: {e}");
            return ExitCode::from(2);
        }
    };
    let cmd = Command {
        verb: verb(cli.verb),
        targets: cli.targets,
        format,
        k: cli.k,
        prime: cli.prime,
        trunc: cli.trunc,
        ring,
    };
    match run(&cmd, &env).and_then(|r| r.render(cmd.format)) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("f1: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
