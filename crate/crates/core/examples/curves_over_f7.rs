//! Two cubics over F_7 with nine points each, and their chord-tangent groups.

use ellgrp::classify::canonical_form;
use ellgrp::curves::{chord_tangent, curve_group, PrimeFieldCtx, ProjectivePoint, TernaryCubic};

fn main() -> ellgrp::Result<()> {
    let f = PrimeFieldCtx::new(7)?;
    let curves = [
        ("x³ + 2y³ = 3z³", TernaryCubic::new(f, [1, 2, -3, 0, 0, 0, 0, 0, 0, 0])?),
        ("y²z = x³ + 2z³", TernaryCubic::weierstrass(f, 0, 2)?),
    ];
    for (name, c) in &curves {
        let g = curve_group(c)?;
        let labels: Vec<String> = g.points.iter().map(|p| p.label(&f)).collect();
        println!("{name}: {} points {}", labels.len(), labels.join(" "));
        println!("  axioms hold: {}", g.table.verify_axioms().all_pass());
        let flexes: Vec<&str> = g.table.flex_points().iter().map(|&i| labels[i].as_str()).collect();
        println!("  flexes: {flexes:?}");
        println!("  canonical form: {}", canonical_form(&g.table.identify(0)?.pointed));
    }
    let o = ProjectivePoint::affine(&f, 1, 1);
    let t = chord_tangent(&curves[0].1, o, o)?;
    println!("(1,1) ∗ (1,1) = {}", t.label(&f));
    Ok(())
}
