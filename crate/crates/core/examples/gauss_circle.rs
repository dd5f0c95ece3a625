//! Lattice points in a disc against the area πx.

use gon::counting::{circle_count, circle_error_scan, gauss_circle_bounds_check};
use gon::exact::rat_int;

fn main() -> gon::Result<()> {
    let grid = [10, 100, 1_000, 10_000, 1_000_000];
    let scan = circle_error_scan(&grid)?;
    for (x, row) in grid.iter().zip(&scan.rows) {
        let gauss = gauss_circle_bounds_check(&rat_int(*x as i64))?;
        println!(
            "x = {x:>8}  R(x) = {:>8}  (R - πx)/√x ∈ {}  bounds hold: {}",
            row.exact,
            row.normalized.coarsen(6).to_pair_string(),
            gauss.holds()
        );
    }
    assert_eq!(circle_count(&rat_int(25))?, 81);
    Ok(())
}
