//! Throughput of the sign map as the tower grows. Each product walks the
//! bits of the indices once, so cost per product is at most linear in `t`.
//!
//! ```text
//! cargo run --release --example bench_scaling -- 1000000
//! ```

use cdtwist::cli::bench;

pub fn run_example_with(n: u64) -> cdtwist::Result<()> {
    let base = bench(5, n, 0)?;
    for t in [5, 10, 20, 40, 62] {
        let r = bench(t, n, 0)?;
        println!(
            "t={t:>2}: {:>10.3e} products/s, {:.2}x the cost at t=5",
            r.rate(),
            base.rate() / r.rate()
        );
    }
    Ok(())
}

pub fn run_example() -> cdtwist::Result<()> {
    run_example_with(100_000)
}

#[allow(dead_code)]
fn main() {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1_000_000);
    run_example_with(n).expect("bench");
}
