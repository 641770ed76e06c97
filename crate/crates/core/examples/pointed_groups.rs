//! `_aA` with `x ∗ y = a − x − y`: tables, axioms, derived groups, and
//! recovering the pointed form from a bare table.

use ellgrp::elliptic::{DerivedGroup, PointedAbelian};

fn main() -> ellgrp::Result<()> {
    let s: PointedAbelian = "9:1".parse()?;
    let t = s.to_table()?;
    println!("{s}: {} elements, axioms {:?}", t.size(), t.verify_axioms());
    println!("flex points: {:?}", s.flex_points()?);

    let g = DerivedGroup::new(&t, 4)?;
    println!("(S, +_4): exponent {}, orders {:?}", g.exponent(), g.torsion_profile());

    let r = t.recover_pointed(4)?;
    println!("from base point 4: zero {}, base {}, rebuild matches: {}", r.zero, r.base, r.rebuild(&t)? == t);

    let id = t.identify(0)?;
    println!("identified as {}", id.pointed.descriptor());
    Ok(())
}
