//! Rational approximation: |yα − x| < 1/q with 1 ≤ y ≤ q, and the simultaneous version.

use gon::exact::Real;
use gon::theorems::{dirichlet_1d, simultaneous_approx};

fn main() -> gon::Result<()> {
    for q in [10, 100, 1000] {
        let d = dirichlet_1d(&Real::pi(), q)?;
        println!(
            "q = {q:>4}: π ≈ {}/{}  error ∈ {}",
            d.x,
            d.y,
            d.error.coarsen(10).to_pair_string()
        );
    }
    let alphas = [Real::int(2).sqrt(), Real::int(3).sqrt()];
    let s = simultaneous_approx(&alphas, 50)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&s).expect("serializable")
    );
    Ok(())
}
