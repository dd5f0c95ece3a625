//! Minkowski sums of polygons and the Brunn–Minkowski inequality in the plane.

use gon::body::{brunn_minkowski_check_2d, minkowski_sum_2d, Polygon};
use gon::exact::{rat, rat_int};

fn pts(v: &[(i64, i64)]) -> Vec<[gon::exact::Rat; 2]> {
    v.iter().map(|&(x, y)| [rat_int(x), rat_int(y)]).collect()
}

fn main() -> gon::Result<()> {
    let p = Polygon::new(pts(&[(0, 0), (4, 0), (4, 1), (0, 1)]))?;
    let q = Polygon::new(pts(&[(0, 0), (1, 0), (0, 3)]))?;
    let s = minkowski_sum_2d(&p, &q)?;
    println!("P + Q has {} vertices", s.vertices.len());
    for l in [rat(1, 4), rat(1, 2), rat(3, 4)] {
        let b = brunn_minkowski_check_2d(&p, &q, &l)?;
        println!(
            "λ = {l}: √area ∈ {}  ≥ {}  holds {}",
            b.lhs.coarsen(6).to_pair_string(),
            b.rhs.coarsen(6).to_pair_string(),
            b.holds
        );
    }
    Ok(())
}
