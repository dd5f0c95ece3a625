//! A region of volume above m·det Λ holds m + 1 points with lattice differences.

use gon::exact::{rat, rat_int};
use gon::lattice::Lattice;
use gon::theorems::{blichfeldt_points, HalfOpenBox, Region};

fn main() -> gon::Result<()> {
    let l = Lattice::integer(2)?;
    let region = Region::Boxes(vec![
        HalfOpenBox::new(vec![rat(1, 3), rat_int(0)], vec![rat(7, 3), rat(3, 2)])?,
        HalfOpenBox::new(vec![rat_int(-2), rat_int(2)], vec![rat(-1, 2), rat(7, 2)])?,
    ]);
    let r = blichfeldt_points(&l, &region, 4)?;
    println!(
        "{} points (k = {}), certified {}",
        r.points.len(),
        r.k,
        r.certificate.is_valid()
    );
    for p in &r.points {
        println!("  ({}, {})", p[0], p[1]);
    }
    Ok(())
}
