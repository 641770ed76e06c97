//! Elliptic rings: `Ell_1(Z/n)`, endomorphism rings, and elliptic matrices.

use ellgrp::rings::{ell0, ell1, endo_ring, is_ring_isomorphism, verify_ring_axioms, EllipticMatrix};

fn main() -> ellgrp::Result<()> {
    for ops in [ell1(Some(9)), ell0(Some(5))] {
        let r = ops.to_finite()?;
        println!("{:?} mod {:?}: ring {}", ops.kind, ops.modulus, verify_ring_axioms(&r).is_ring());
    }

    let endo = endo_ring(&"9:1".parse()?)?;
    let map: Vec<usize> = endo.morphisms.iter().map(|f| f.constant().coords()[0] as usize).collect();
    let iso = is_ring_isomorphism(&endo.ring, &ell1(Some(9)).to_finite()?, &map);
    println!("End(_1Z/9) ≅ Ell_1(Z/9) via f_a ↦ a: {iso}");

    let noncomm = verify_ring_axioms(&endo_ring(&"2,2:0,0".parse()?)?.ring);
    println!("End(_0(Z/2)²): ring {}, commutative {}", noncomm.is_ring(), noncomm.commutative);

    let m = EllipticMatrix::from_free_columns(vec![1, 2], vec![vec![3], vec![-1]])?;
    let n = EllipticMatrix::from_free_columns(vec![0, -1], vec![vec![5], vec![2]])?;
    println!("m = {:?}", m.matrix());
    println!("m ∘ n = {:?} + {:?}x", m.mul(&n)?.u(), m.mul(&n)?.matrix());
    println!("m ∗ n = {:?} + {:?}x", m.star(&n)?.u(), m.star(&n)?.matrix());
    Ok(())
}
