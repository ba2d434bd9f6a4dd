//! `tropkex` command line: `gen`, `exchange`, `attack`, `bench`.
//!
//! Exit codes: 0 success, 2 usage, 3 I/O, 4 malformed JSON, 5 invalid input,
//! 6 protocol failure, 7 attack failure. Errors are printed to stderr as
//! `error[<category>]: <message>`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::attack::{recover_key_with, ProbeStrategy, Target};
use crate::bench::{run_experiment_with, write_csv, RunConfig};
use crate::error::{Error, Result};
use crate::protocol::{run_exchange, ProtocolParams, Transcript};
use crate::semidirect::SemigroupOpKind;
use crate::tropical::TropicalMatrix;

#[derive(Parser, Debug)]
#[command(name = "tropkex", version, about = "Tropical matrix key exchange and its binary-search attack")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw public parameters and write them as JSON.
    Gen {
        #[command(flatten)]
        setup: SetupArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the exchange; write the transcript and, optionally, both keys.
    Exchange {
        /// Reuse parameters written by `gen` instead of drawing new ones.
        #[arg(long)]
        params: Option<PathBuf>,
        #[command(flatten)]
        setup: SetupArgs,
        #[arg(long)]
        out: PathBuf,
        /// Where to write `{"alice_key", "bob_key"}`; printed to stdout if omitted.
        #[arg(long)]
        keys: Option<PathBuf>,
    },
    /// Recover the shared key from a transcript.
    Attack {
        #[arg(long)]
        transcript: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Invert Bob's message instead of Alice's.
        #[arg(long)]
        bob: bool,
        /// Recompute every probe from scratch instead of using stored squares.
        #[arg(long)]
        uncached: bool,
    },
    /// Time the attack over several dimensions and write a CSV table.
    Bench {
        /// Comma-separated matrix dimensions.
        #[arg(long = "k", value_delimiter = ',', default_values_t = RunConfig::default().k_list)]
        k_list: Vec<usize>,
        #[arg(long = "N", default_value_t = 1000)]
        entry_bound: u64,
        #[arg(long = "K", default_value_t = 200)]
        key_bits: u32,
        #[arg(long, default_value_t = 40)]
        trials: usize,
        #[arg(long, default_value = "circ")]
        op: SemigroupOpKind,
        #[arg(long, env = "TROPKEX_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Print one line per finished trial to stderr.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Args, Debug)]
struct SetupArgs {
    #[arg(long = "k", default_value_t = 5)]
    k: usize,
    #[arg(long = "N", default_value_t = 1000)]
    entry_bound: u64,
    #[arg(long = "K", default_value_t = 200)]
    key_bits: u32,
    #[arg(long, default_value = "circ")]
    op: SemigroupOpKind,
    #[arg(long, env = "TROPKEX_SEED", default_value_t = 0)]
    seed: u64,
}

impl SetupArgs {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn params(&self, rng: &mut ChaCha8Rng) -> Result<ProtocolParams> {
        ProtocolParams::setup(self.k, self.entry_bound, self.key_bits, self.op, rng)
    }
}

#[derive(Serialize)]
struct Keys<'a> {
    alice_key: &'a TropicalMatrix,
    bob_key: &'a TropicalMatrix,
}

fn exit_code(err: &Error) -> i32 {
    match err.category() {
        "io" => 3,
        "format" => 4,
        "input" => 5,
        "protocol" => 6,
        _ => 7,
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen { setup, out } => {
            let params = setup.params(&mut setup.rng())?;
            write_json(&out, &params)
        }
        Command::Exchange { params, setup, out, keys } => {
            let mut rng = setup.rng();
            let params = match params {
                Some(path) => read_json(&path)?,
                None => setup.params(&mut rng)?,
            };
            let ex = run_exchange(params, &mut rng)?;
            write_json(&out, &ex.transcript)?;
            let keys_doc = Keys { alice_key: &ex.alice_key, bob_key: &ex.bob_key };
            match keys {
                Some(path) => write_json(&path, &keys_doc),
                None => {
                    println!("{}", serde_json::to_string_pretty(&keys_doc)?);
                    Ok(())
                }
            }
        }
        Command::Attack { transcript, out, bob, uncached } => {
            let transcript: Transcript = read_json(&transcript)?;
            let target = if bob { Target::Bob } else { Target::Alice };
            let strategy = if uncached { ProbeStrategy::FromScratch } else { ProbeStrategy::Cached };
            let result = recover_key_with(&transcript, target, strategy)?;
            write_json(&out, &result)
        }
        Command::Bench { k_list, entry_bound, key_bits, trials, op, seed, out, verbose } => {
            let config = RunConfig { k_list, entry_bound, key_bits, op, trials, seed };
            let rows = run_experiment_with(&config, |k, o| {
                if verbose {
                    eprintln!(
                        "k={k} alpha={} t={:.4}s ops={} plateau={}",
                        o.alpha_bits,
                        o.time_mprime.as_secs_f64(),
                        o.op_count,
                        o.plateau
                    );
                }
            })?;
            write_csv(&rows, BufWriter::new(File::create(&out)?))
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            exit_code(&e)
        }
    }
}
