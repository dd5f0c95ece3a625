//! Successive minima of a body against a lattice and the bounds on their product.

use gon::body::{ConvexBody, QuadraticForm};
use gon::exact::{rat, rat_int};
use gon::lattice::{successive_minima, Lattice};
use gon::theorems::second_theorem_check;

fn main() -> gon::Result<()> {
    let l = Lattice::from_int_vectors(&[&[2, 1, 0], &[0, 3, 1], &[1, 0, 2]])?;
    let q = QuadraticForm::new(vec![
        vec![rat_int(2), rat(1, 2), rat_int(0)],
        vec![rat(1, 2), rat_int(1), rat_int(0)],
        vec![rat_int(0), rat_int(0), rat_int(3)],
    ])?;
    let body = ConvexBody::ellipsoid(q, rat_int(4))?;
    let m = successive_minima(&l, &body)?;
    for (j, w) in m.witnesses.iter().enumerate() {
        println!("λ{}² = {}  witness {:?}", j + 1, m.lambda_sq[j], w.coeffs);
    }
    let s = second_theorem_check(&l, &body)?;
    println!(
        "∏λ·vol/det ∈ {}  lower {}  upper {}",
        s.product.coarsen(8).to_pair_string(),
        s.lower.holds,
        s.upper.holds
    );
    let cube = second_theorem_check(&Lattice::integer(3)?, &ConvexBody::cube(3, rat_int(1))?)?;
    println!("cube and Z³: product {}", cube.product.to_pair_string());
    Ok(())
}
