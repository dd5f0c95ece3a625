//! Primes p ≡ 1 (mod 4) as a sum of two squares, with the lattice certificate.

use gon::theorems::{is_prime, two_square};

fn main() -> gon::Result<()> {
    for p in [5, 13, 29, 30449] {
        let t = two_square(p)?;
        println!(
            "{p} = {}² + {}²  (q = {}, certified: {})",
            t.a,
            t.b,
            t.q,
            t.certificate.is_valid()
        );
    }
    let count = (5..10_000).step_by(4).filter(|&p| is_prime(p)).count();
    println!("{count} primes p ≡ 1 (mod 4) below 10⁴");
    Ok(())
}
