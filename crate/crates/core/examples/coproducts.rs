//! Explicit coproducts and a check of their universal property.

use ellgrp::constructions::{coproduct_of, product, verify_universal};
use ellgrp::elliptic::PointedAbelian;

fn main() -> ellgrp::Result<()> {
    let test_object: PointedAbelian = "3:0".parse()?;
    for (l, r) in [("3:0", "3:0"), ("0:1", "3:0"), ("3:1", "3:0"), ("9:1", "3:1")] {
        let d = coproduct_of(&l.parse()?, &r.parse()?);
        let rep = verify_universal(&d, &test_object)?;
        println!(
            "{l} ⊔ {r} = {} ({:?}); |Mor(-, 3:0)| = {} = {} · {}, universal: {}",
            d.object.descriptor(),
            d.recipe,
            rep.mor_object,
            rep.mor_left,
            rep.mor_right,
            rep.holds()
        );
    }
    let p = product(&"3:1".parse()?, &"9:0".parse()?);
    println!("3:1 × 9:0 = {}", p.descriptor());
    Ok(())
}
