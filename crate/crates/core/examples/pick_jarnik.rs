//! Pick's identity and Jarník's perimeter bound on a lattice polygon.

use gon::body::LatticePolygon;
use gon::counting::{jarnik_check, pick_count};

fn main() -> gon::Result<()> {
    let p = LatticePolygon::new(vec![[0, 0], [7, 1], [9, 5], [4, 8], [-2, 4]])?;
    let r = pick_count(&p)?;
    println!(
        "interior {}  boundary {}  area {}  identity {}",
        r.interior, r.boundary, r.area, r.identity_holds
    );
    let j = jarnik_check(&p)?;
    println!(
        "enclosed {}  perimeter ∈ {}  |area − count| < length: {}",
        j.enclosed,
        j.length.coarsen(8).to_pair_string(),
        j.holds
    );
    Ok(())
}
