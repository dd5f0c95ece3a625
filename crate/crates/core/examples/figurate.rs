//! Sums of triangular and polygonal numbers.

use gon::exact::Int;
use gon::figurate::{eureka_decompose, odd_sum, polygonal_decompose, triangular};

fn main() -> gon::Result<()> {
    for m in [0, 20, 1000, 99_999] {
        println!("{m} = {:?}", eureka_decompose(m)?.values());
    }
    for k in 4..=8 {
        let w = polygonal_decompose(k, 2025)?;
        println!("2025 as {k}-gonal numbers: {:?}", w.values());
    }
    let n = Int::from(40);
    println!(
        "T(39) + T(40) = {}",
        triangular(&(&n - 1u32))? + triangular(&n)?
    );
    println!("1 + 3 + ... + 79 = {}", odd_sum(40));
    Ok(())
}
