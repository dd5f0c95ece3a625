//! Planar Voronoi cells and critical determinants.

use gon::body::ConvexBody;
use gon::exact::rat_int;
use gon::lattice::Lattice;
use gon::packing::{critical_determinant_2d, voronoi_cell_2d};

fn main() -> gon::Result<()> {
    let l = Lattice::from_int_vectors(&[&[2, 0], &[1, 2]])?;
    let cell = voronoi_cell_2d(&l)?;
    println!("relevant vectors {:?}", cell.relevant);
    println!(
        "{}",
        serde_json::to_string_pretty(&cell).expect("serializable")
    );
    let square = ConvexBody::cube(2, rat_int(1))?;
    let disc = ConvexBody::ball(2, rat_int(1))?;
    let w = gon::exact::ten_pow_neg(10);
    println!(
        "Δ(square) = {}",
        critical_determinant_2d(&square)?
            .enclose(&w)?
            .to_pair_string()
    );
    println!(
        "Δ(disc) ∈ {}",
        critical_determinant_2d(&disc)?
            .enclose(&w)?
            .to_pair_string()
    );
    Ok(())
}
