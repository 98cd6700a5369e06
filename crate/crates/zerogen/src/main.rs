//! Generates tables of Riemann zero ordinates as plain text, one ordinate
//! per line, by Gram-block bracketing of `Z(t)` sign changes.
//!
//! Data-preparation tool for testing the certification pipeline when the
//! published tables cannot be downloaded. Accuracy is ~3e-10 absolute
//! (Riemann-Siegel truncation plus bracket width), comfortably inside the
//! 1e-9 budget the pipeline assumes; validate independently with
//! scripts/check_zeros.py.

mod dd;
mod locate;
mod rs;
mod tables;
mod theta;
mod zeta_em;

use std::io::Write;

use clap::Parser;
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "zerogen", about = "Riemann zero ordinate table generator")]
struct Args {
    /// Number of leading zeros to produce.
    #[arg(long, default_value_t = 100_000)]
    count: u64,
    /// Output path (text, one ordinate per line, 11 decimals).
    #[arg(long)]
    out: std::path::PathBuf,
    /// Gram intervals per work unit.
    #[arg(long, default_value_t = 4096)]
    chunk: i64,
    /// Worker threads (defaults to all cores).
    #[arg(long)]
    threads: Option<usize>,
}

fn main() {
    let args = Args::parse();
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool");
    }
    assert!(args.count >= 1, "count must be >= 1");
    let started = std::time::Instant::now();

    // Zero #1 sits below g_0; zeros #2.. lie in (g_0, .]: the range (g_0, g_n]
    // holds exactly n zeros when both ends are good, so aim at n = count - 1
    // and trim after the final good index.
    let n_target = args.count as i64 - 1;
    let mut bounds = vec![0i64];
    if n_target > 0 {
        let n_end = locate::next_good_index(n_target);
        let mut at = 0i64;
        while at < n_end {
            let next = if at + args.chunk >= n_end {
                n_end
            } else {
                locate::next_good_index(at + args.chunk).min(n_end)
            };
            bounds.push(next);
            at = next;
        }
    }

    eprintln!(
        "locating {} zeros across {} gram-range chunks",
        args.count,
        bounds.len() - 1
    );
    let done = std::sync::atomic::AtomicUsize::new(0);
    let mut zeros: Vec<f64> = vec![locate::first_zero()];
    let chunk_results: Vec<Vec<f64>> = bounds
        .par_windows(2)
        .map(|w| {
            let out = locate::zeros_in_gram_range(w[0], w[1]);
            let k = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
            if k % 32 == 0 {
                eprintln!(
                    "  {k}/{} chunks ({:.0?})",
                    bounds.len() - 1,
                    started.elapsed()
                );
            }
            out
        })
        .collect();
    for c in chunk_results {
        zeros.extend(c);
    }
    zeros.truncate(args.count as usize);

    // internal consistency before anything is written
    assert_eq!(zeros.len(), args.count as usize, "zero count mismatch");
    for w in zeros.windows(2) {
        assert!(w[0] < w[1], "ordinates not strictly increasing: {w:?}");
    }
    assert!(
        (zeros[0] - 14.134725141734694).abs() < 1e-8,
        "first zero off: {}",
        zeros[0]
    );
    let recip: f64 = zeros.iter().map(|g| 1.0 / g).sum();

    let mut out = std::io::BufWriter::new(std::fs::File::create(&args.out).expect("create output"));
    for g in &zeros {
        writeln!(out, "{g:.11}").expect("write");
    }
    out.flush().expect("flush");
    eprintln!(
        "wrote {} zeros to {} (gamma_max {:.6}, sum 1/gamma {:.6}) in {:.0?}",
        zeros.len(),
        args.out.display(),
        zeros.last().unwrap(),
        recip,
        started.elapsed()
    );
}
