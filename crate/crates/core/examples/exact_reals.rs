//! Certified enclosures and comparisons of real constants.

use gon::exact::{certified_compare, rat, ten_pow_neg, Real};

fn main() -> gon::Result<()> {
    let w = ten_pow_neg(30);
    println!("π ∈ {}", Real::pi().enclose(&w)?.to_pair_string());
    println!("γ ∈ {}", Real::euler_gamma().enclose(&w)?.to_pair_string());
    println!(
        "vol B⁴ ∈ {}",
        Real::unit_ball_volume(4)
            .enclose(&ten_pow_neg(12))?
            .to_pair_string()
    );
    let e = Real::pi().sqrt();
    println!(
        "√π vs 16/9: {:?}",
        certified_compare(&e, &Real::rat(rat(16, 9)))
    );
    Ok(())
}
