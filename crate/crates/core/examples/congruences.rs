//! Congruences of a finite elliptic group correspond to subgroups of its
//! derived group.

use ellgrp::constructions::{enumerate_congruences, enumerate_subgroups, quotient};
use ellgrp::elliptic::PointedAbelian;

fn main() -> ellgrp::Result<()> {
    let s: PointedAbelian = "3,3:0,0".parse()?;
    let t = s.to_table()?;
    let congruences = enumerate_congruences(&t);
    println!("{s}: {} congruences, {} subgroups", congruences.len(), enumerate_subgroups(&t, 0)?.len());
    for c in &congruences {
        let q = quotient(&t, c)?;
        println!("  {} classes -> {}", c.class_count(), q.identify(0)?.pointed.descriptor());
    }
    Ok(())
}
