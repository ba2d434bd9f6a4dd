// Attack timings per dimension as CSV on stdout.
//
//     cargo run --release --example timing_table -- 5,10,15,20 40

use tropkex::bench::{run_experiment, write_csv, RunConfig};
use tropkex::{Error, Result};

pub fn print_table(k_list: Vec<usize>, trials: usize) -> Result<()> {
    let config = RunConfig { k_list, trials, ..RunConfig::default() };
    let rows = run_experiment(&config)?;
    write_csv(&rows, std::io::stdout().lock())?;
    let ratios: Vec<f64> = rows.iter().map(|r| r.t_over_k3).collect();
    let spread = ratios.iter().cloned().fold(f64::MIN, f64::max) / ratios.iter().cloned().fold(f64::MAX, f64::min);
    eprintln!("t/k³ varies by a factor of {spread:.2}");
    Ok(())
}

pub fn run_example() -> Result<()> {
    print_table(vec![4, 6], 2)
}

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let k_list = match args.next() {
        Some(list) => list
            .split(',')
            .map(|k| k.trim().parse().map_err(|_| Error::InvalidInput(format!("bad dimension {k:?}"))))
            .collect::<Result<Vec<usize>>>()?,
        None => vec![5, 10, 15, 20],
    };
    let trials = match args.next() {
        Some(t) => t.parse().map_err(|_| Error::InvalidInput(format!("bad trial count {t:?}")))?,
        None => 10,
    };
    print_table(k_list, trials)
}
