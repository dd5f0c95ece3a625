//! Visible lattice points and the orchard problem.

use gon::budget::Budget;
use gon::counting::{orchard_visibility, visible, visible_density, Orchard};
use gon::exact::rat;

fn main() -> gon::Result<()> {
    println!(
        "(6, 9) visible: {}  (5, 9) visible: {}",
        visible([6, 9])?,
        visible([5, 9])?
    );
    let d = visible_density(200)?;
    println!(
        "visible fraction in [-200, 200]²: {:.6}  (6/π² ≈ 0.607927)",
        gon::exact::rat_to_f64(&d)
    );
    for r in [rat(1, 5), rat(1, 12)] {
        let o = orchard_visibility(&rat(5, 1), &r, &Budget::default())?;
        match o.verdict {
            Orchard::Blocked => println!("R = 5, r = {r}: blocked, {} trees", o.trees.len()),
            Orchard::Escape { direction } => println!("R = 5, r = {r}: escape along {direction:?}"),
        }
    }
    Ok(())
}
