//! A nonzero lattice point in a symmetric body of volume above 2ⁿ det Λ,
//! found by enumeration and by the rational grid search.

use gon::body::ConvexBody;
use gon::exact::rat;
use gon::lattice::Lattice;
use gon::theorems::{minkowski_point, mordell_grid_search, Mode};

fn main() -> gon::Result<()> {
    let l = Lattice::from_int_vectors(&[&[3, 1], &[1, 2]])?;
    // |x| ≤ 3, |y| ≤ 7/4: area 21 > 4 · 5
    let body = ConvexBody::axis_box(vec![rat(3, 1), rat(7, 4)])?;
    let (p, cert) = minkowski_point(&l, &body, Mode::Strict)?;
    let at: Vec<String> = p.ambient.iter().map(|v| v.to_string()).collect();
    println!(
        "enumeration: coeffs {:?} at ({}), certified {}",
        p.coeffs,
        at.join(", "),
        cert.is_valid()
    );
    let m = mordell_grid_search(&l, &body)?;
    println!(
        "grid search: coeffs {:?} after {} steps, certified {}",
        m.point.coeffs,
        m.trace.len(),
        m.certificate.is_valid()
    );
    Ok(())
}
