//! Arithmetic of `Ell_1(Z)`: `a ∘ b = a + b − 3ab`, ∘-primes, unique
//! factorization and a Euclid-style construction of new ∘-primes.

use ellgrp::rings::{circ_divides, circ_factor, euclid_witness, is_circ_prime, sigma};

fn main() -> ellgrp::Result<()> {
    let primes: Vec<i64> = (-10..=14).filter(|&a| a != 0 && is_circ_prime(a).unwrap_or(false)).collect();
    println!("∘-primes in [-10, 14]: {primes:?}");
    for a in [12, -8, 100, 1_000_000] {
        println!("{a} = ∘{:?}  (Σ = {})", circ_factor(a)?.factors, sigma(a)?);
    }
    println!("2 ∘-divides 12 with quotient {:?}", circ_divides(2, 12)?);

    let mut known = vec![2];
    for _ in 0..4 {
        let next = euclid_witness(&known)?;
        println!("new ∘-prime outside {known:?}: {next}");
        known.push(next);
    }
    Ok(())
}
