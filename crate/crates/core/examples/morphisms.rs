//! Affine morphisms `x ↦ f0 + f1(x)` with `3f0 + f1(a) = b`, counted by
//! enumeration and by closed form.

use ellgrp::elliptic::PointedAbelian;
use ellgrp::morphisms::{automorphism_report, enumerate_morphisms, hom_exists, mor_elliptic, predicted_mor_structure};

fn main() -> ellgrp::Result<()> {
    let pairs = [("3:1", "3,3:0,0"), ("3:0", "3:1"), ("9:1", "9:1"), ("0:1", "9:2")];
    for (s, d) in pairs {
        let (src, dst): (PointedAbelian, PointedAbelian) = (s.parse()?, d.parse()?);
        let count = enumerate_morphisms(&src, &dst)?.len();
        let predicted = predicted_mor_structure(&src, &dst)?.map(|p| p.descriptor());
        println!("Mor({s}, {d}): exists {}, {count} morphisms, closed form {predicted:?}", hom_exists(&src, &dst));
    }

    let m = mor_elliptic(&"3:1".parse()?, &"3,3:0,0".parse()?)?;
    println!("Mor(3:1, 3,3:0,0) is elliptic: {}", m.table.verify_axioms().all_pass());
    for f in m.morphisms.iter().take(3) {
        println!("  {f}");
    }

    let aut = automorphism_report(&"3,3:0,0".parse()?)?;
    println!("|Aut(_0(Z/3)²)| = {} = {} · {}, exact: {}", aut.order, aut.ann3_order, aut.aut_a_order, aut.is_exact());
    Ok(())
}
