//! D(x) = Σ d(n) by the hyperbola method, against x log x + (2γ − 1)x.

use gon::counting::{divisor, divisor_error_scan, divisor_summatory};

fn main() -> gon::Result<()> {
    let naive: u128 = (1..=1000).map(|n| u128::from(divisor(n).unwrap())).sum();
    assert_eq!(divisor_summatory(1000)?, naive);
    let grid = [1_000, 100_000, 10_000_000, 100_000_000];
    for (x, row) in grid.iter().zip(&divisor_error_scan(&grid)?.rows) {
        println!(
            "x = {x:>9}  D(x) = {:>10}  normalized error ∈ {}",
            row.exact,
            row.normalized.coarsen(6).to_pair_string()
        );
    }
    Ok(())
}
