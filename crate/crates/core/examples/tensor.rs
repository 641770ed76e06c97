//! Bimorphisms `R × S → T` counted by brute force against the closed-form
//! tensor product.

use ellgrp::constructions::{bimorphism_count, tensor_closed_form};
use ellgrp::elliptic::PointedAbelian;
use ellgrp::morphisms::enumerate_morphisms;

fn main() -> ellgrp::Result<()> {
    for (r, s, t) in [("3:0", "3:0", "3:0"), ("2:0", "2:0", "6:0"), ("3:0", "9:0", "9:0")] {
        let (r, s, t): (PointedAbelian, PointedAbelian, PointedAbelian) = (r.parse()?, s.parse()?, t.parse()?);
        let tensor = tensor_closed_form(&r, &s)?;
        let bimor = bimorphism_count(&r, &s, &t)?;
        let mor = enumerate_morphisms(&tensor, &t)?.len();
        println!("{r} ⊗ {s} = {}: |Bimor(-, {t})| = {bimor}, |Mor(⊗, {t})| = {mor}", tensor.descriptor());
    }
    Ok(())
}
