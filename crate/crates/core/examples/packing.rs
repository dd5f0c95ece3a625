//! Packing density, kissing number and Hermite invariant of classical lattices.

use gon::body::QuadraticForm;
use gon::cli::input::d4;
use gon::packing::{hermite_bounds, packing_report};

fn main() -> gon::Result<()> {
    let lattices = [
        ("z2", QuadraticForm::identity(2)),
        ("hexagonal", gon::packing::hexagonal()),
        ("fcc", gon::packing::fcc()),
        ("d4", d4()),
    ];
    for (id, q) in &lattices {
        let r = packing_report(id, q)?;
        println!(
            "{id:>9}: density {}  kissing {:>2}  γⁿ = {}",
            r.density.coarsen(8).to_pair_string(),
            r.kissing,
            r.hermite_power
        );
    }
    for n in 2..=8 {
        let b = hermite_bounds(n)?;
        println!(
            "n = {n}: γ ≤ {} (Hermite), ≤ {} (Blichfeldt)",
            b.hermite.coarsen(4).hi,
            b.blichfeldt.coarsen(4).hi
        );
    }
    Ok(())
}
