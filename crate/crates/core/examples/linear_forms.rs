//! Integer x ≠ 0 with |Yⱼ(x)| ≤ λⱼ whenever ∏λⱼ ≥ |det|, and the complex variant.

use gon::exact::{rat, rat_int};
use gon::theorems::{complex_linear_forms_solve, linear_forms_solve, ComplexForms};

fn main() -> gon::Result<()> {
    let a = vec![
        vec![rat_int(1), rat(7, 5), rat_int(0)],
        vec![rat_int(0), rat_int(1), rat(-3, 2)],
        vec![rat(1, 3), rat_int(0), rat_int(2)],
    ];
    let lambda = vec![rat(1, 2), rat_int(1), rat(7, 2)];
    let (x, cert) = linear_forms_solve(&a, &lambda)?;
    println!("real forms: x = {x:?}, certified {}", cert.is_valid());

    let f = ComplexForms {
        pair_re: vec![vec![rat_int(1), rat_int(1), rat_int(0)]],
        pair_im: vec![vec![rat_int(0), rat(3, 2), rat_int(1)]],
        reals: vec![vec![rat_int(1), rat_int(-1), rat(1, 2)]],
    };
    let sol = complex_linear_forms_solve(&f)?;
    println!(
        "complex forms: x = {:?}, bound {}, certified {}",
        sol.x,
        sol.bound.coarsen(8).to_pair_string(),
        sol.certificate.is_valid()
    );
    Ok(())
}
