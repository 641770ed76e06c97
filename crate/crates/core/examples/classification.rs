//! Canonical forms: every finitely generated elliptic group is `_0A`,
//! `_1Z × _0A` or `_1Z/3^k × _0A`.

use ellgrp::classify::{canonical_form, embed_into_flex, indecomposables};
use ellgrp::elliptic::PointedAbelian;
use ellgrp::morphisms::is_isomorphic;

fn main() -> ellgrp::Result<()> {
    for d in ["9:0", "9:1", "9:3", "12:1", "3,3:1,0", "0,9:1,1", "2,3,4:1,1,1"] {
        let p: PointedAbelian = d.parse()?;
        println!("{d:>12}  {:<28} {:?}", canonical_form(&p).to_string(), indecomposables(&p));
    }
    let (a, b): (PointedAbelian, PointedAbelian) = ("9:1".parse()?, "9:0".parse()?);
    println!("9:1 ≅ 9:0? {}", is_isomorphic(&a, &b));

    let (kappa, flex) = embed_into_flex(&a)?;
    println!("9:1 embeds into {} via {kappa}", flex.descriptor());
    Ok(())
}
