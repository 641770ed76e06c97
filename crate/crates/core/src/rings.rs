//! Elliptic rings: `Ell_1(R)`, `Ell_0(R)`, endomorphism rings, elliptic
//! matrices, and the arithmetic of `Ell_1(Z)` where `a ∘ b = a + b − 3ab`.
//!
//! `Σ(a) = 1 − 3a` turns `∘` into ordinary multiplication and identifies
//! `Ell_1(Z)` with the integers `≡ 1 (mod 3)`, so `∘`-factorization is
//! ordinary factorization of `Σ(a)` with every prime lifted back.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::abelian::GroupElement;
use crate::arith;
use crate::classify::free_elliptic;
use crate::elliptic::{AxiomReport, CayleyTable, PointedAbelian};
use crate::error::{Error, Result};
use crate::morphisms::{enumerate_morphisms, AffineMorphism};


/// `Ell_1` (`1 − r − s`, `r + s − 3rs`, unit `0`) or `Ell_0` (`−r − s`,
/// `rs`, unit `1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EllKind {
    Ell1,
    Ell0,
}

/// Coefficient ring: `Z` (`None`) or `Z/n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EllipticRingOps {
    pub kind: EllKind,
    pub modulus: Option<u64>,
}

pub fn ell1(modulus: Option<u64>) -> EllipticRingOps {
    EllipticRingOps { kind: EllKind::Ell1, modulus }
}

pub fn ell0(modulus: Option<u64>) -> EllipticRingOps {
    EllipticRingOps { kind: EllKind::Ell0, modulus }
}

impl EllipticRingOps {
    fn reduce(&self, x: i128) -> i64 {
        match self.modulus {
            Some(n) => x.rem_euclid(n as i128) as i64,
            None => i64::try_from(x).expect("elliptic ring value overflows i64"),
        }
    }

    pub fn star(&self, r: i64, s: i64) -> i64 {
        let (r, s) = (r as i128, s as i128);
        match self.kind {
            EllKind::Ell1 => self.reduce(1 - r - s),
            EllKind::Ell0 => self.reduce(-r - s),
        }
    }

    pub fn circ(&self, r: i64, s: i64) -> i64 {
        let (r, s) = (r as i128, s as i128);
        match self.kind {
            EllKind::Ell1 => self.reduce(r + s - 3 * r * s),
            EllKind::Ell0 => self.reduce(r * s),
        }
    }

    pub fn unit(&self) -> i64 {
        match self.kind {
            EllKind::Ell1 => 0,
            EllKind::Ell0 => self.reduce(1),
        }
    }

    /// Explicit tables over `0..n`; requires `Z/n` coefficients.
    pub fn to_finite(&self) -> Result<FiniteEllipticRing> {
        let n = self.modulus.ok_or_else(|| Error::InfiniteShape("Z".into()))?;
        let n = n as usize;
        let star = (0..n).map(|r| (0..n).map(|s| self.star(r as i64, s as i64) as usize).collect()).collect();
        let circ = (0..n).map(|r| (0..n).map(|s| self.circ(r as i64, s as i64) as usize).collect()).collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        FiniteEllipticRing::new(labels, star, circ, self.unit() as usize)
    }
}

/// A finite candidate elliptic ring given by its two operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteEllipticRing {
    star: CayleyTable,
    circ: Vec<Vec<usize>>,
    unit: usize,
}

impl FiniteEllipticRing {
    pub fn new(labels: Vec<String>, star: Vec<Vec<usize>>, circ: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let star = CayleyTable::new(labels, star)?;
        let n = star.size();
        if circ.len() != n || circ.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err(Error::MalformedTable("circ table does not match the star table".into()));
        }
        if unit >= n {
            return Err(Error::MalformedTable(format!("unit {unit} out of range")));
        }
        Ok(Self { star, circ, unit })
    }

    pub fn size(&self) -> usize {
        self.star.size()
    }

    pub fn star_table(&self) -> &CayleyTable {
        &self.star
    }

    #[inline]
    pub fn star(&self, x: usize, y: usize) -> usize {
        self.star.op(x, y)
    }

    #[inline]
    pub fn circ(&self, x: usize, y: usize) -> usize {
        self.circ[x][y]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingViolation {
    pub axiom: &'static str,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingReport {
    pub elliptic: AxiomReport,
    /// `(x ∗ y) ∘ z = (x ∘ z) ∗ (y ∘ z)`
    pub right_distributive: bool,
    /// `x ∘ (y ∗ z) = (x ∘ y) ∗ (x ∘ z)`
    pub left_distributive: bool,
    pub associative: bool,
    pub unit: bool,
    pub commutative: bool,
    pub first_violation: Option<RingViolation>,
}

impl RingReport {
    /// Axioms (i)–(iv) and EG1–EG3; commutativity is reported separately.
    pub fn is_ring(&self) -> bool {
        self.elliptic.all_pass() && self.right_distributive && self.left_distributive && self.associative && self.unit
    }
}

/// Exhaustive check of the elliptic ring axioms.
pub fn verify_ring_axioms(r: &FiniteEllipticRing) -> RingReport {
    let n = r.size();
    let triples = || (0..n).flat_map(move |x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))));
    let right = triples().find(|&(x, y, z)| r.circ(r.star(x, y), z) != r.star(r.circ(x, z), r.circ(y, z)));
    let left = triples().find(|&(x, y, z)| r.circ(x, r.star(y, z)) != r.star(r.circ(x, y), r.circ(x, z)));
    let assoc = triples().find(|&(x, y, z)| r.circ(x, r.circ(y, z)) != r.circ(r.circ(x, y), z));
    let unit = (0..n).find(|&x| r.circ(x, r.unit) != x || r.circ(r.unit, x) != x);
    let comm = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| r.circ(x, y) != r.circ(y, x));
    let first_violation = right
        .map(|(x, y, z)| RingViolation { axiom: "right_distributive", witness: vec![x, y, z] })
        .or_else(|| left.map(|(x, y, z)| RingViolation { axiom: "left_distributive", witness: vec![x, y, z] }))
        .or_else(|| assoc.map(|(x, y, z)| RingViolation { axiom: "associative", witness: vec![x, y, z] }))
        .or_else(|| unit.map(|x| RingViolation { axiom: "unit", witness: vec![x] }));
    RingReport {
        elliptic: r.star.verify_axioms(),
        right_distributive: right.is_none(),
        left_distributive: left.is_none(),
        associative: assoc.is_none(),
        unit: unit.is_none(),
        commutative: comm.is_none(),
        first_violation,
    }
}

/// `(Mor(S, S), ∗, ∘, id)` with the morphisms in enumeration order.
#[derive(Clone, Debug)]
pub struct EndoRing {
    pub morphisms: Vec<AffineMorphism>,
    pub ring: FiniteEllipticRing,
}

pub fn endo_ring(s: &PointedAbelian) -> Result<EndoRing> {
    let morphisms = enumerate_morphisms(s, s)?;
    let index: HashMap<&AffineMorphism, usize> = morphisms.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let table = |op: &dyn Fn(&AffineMorphism, &AffineMorphism) -> AffineMorphism| -> Vec<Vec<usize>> {
        morphisms.iter().map(|f| morphisms.iter().map(|g| index[&op(f, g)]).collect()).collect()
    };
    let star = table(&|f, g| f.star(g).expect("same ends"));
    let circ = table(&|f, g| f.compose(g).expect("endomorphisms compose"));
    let unit = index[&AffineMorphism::identity(s)];
    let labels = morphisms.iter().map(|f| f.to_string()).collect();
    let ring = FiniteEllipticRing::new(labels, star, circ, unit)?;
    Ok(EndoRing { morphisms, ring })
}

/// Whether `map` (a permutation of indices) is an isomorphism of elliptic
/// rings `r → s`.
pub fn is_ring_isomorphism(r: &FiniteEllipticRing, s: &FiniteEllipticRing, map: &[usize]) -> bool {
    let n = r.size();
    if s.size() != n || map.len() != n || map[r.unit()] != s.unit() {
        return false;
    }
    let mut seen = vec![false; n];
    if map.iter().any(|&y| y >= n || std::mem::replace(&mut seen[y], true)) {
        return false;
    }
    (0..n).all(|x| {
        (0..n).all(|y| map[r.star(x, y)] == s.star(map[x], map[y]) && map[r.circ(x, y)] == s.circ(map[x], map[y]))
    })
}

/// `(u, A)` with `a11 = 1 − 3u1` and `ak1 = −3uk`: the endomorphism
/// `x ↦ u + Ax` of `_{e1}Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EllipticMatrix {
    u: Vec<i64>,
    a: Vec<Vec<i64>>,
}

fn checked_dot(row: &[i64], col: impl Iterator<Item = i64>) -> Result<i64> {
    row.iter().zip(col).try_fold(0i64, |acc, (&x, y)| {
        x.checked_mul(y).and_then(|p| acc.checked_add(p)).ok_or(Error::Overflow("elliptic matrix product"))
    })
}

impl EllipticMatrix {
    pub fn new(u: Vec<i64>, a: Vec<Vec<i64>>) -> Result<Self> {
        let n = u.len();
        if n == 0 || a.len() != n || a.iter().any(|row| row.len() != n) {
            return Err(Error::ShapeMismatch(format!("need an n-vector and an n×n matrix, n ≥ 1 (n = {n})")));
        }
        let m = Self { u, a };
        if !m.column_condition() {
            return Err(Error::InvalidArgument("first column must be (1 − 3u1, −3u2, ..)".into()));
        }
        Ok(m)
    }

    /// Builds the unique elliptic matrix with the given `u` and columns
    /// `2..n` of `A`.
    pub fn from_free_columns(u: Vec<i64>, rest: Vec<Vec<i64>>) -> Result<Self> {
        let a = u
            .iter()
            .enumerate()
            .zip(rest)
            .map(|((k, &uk), row)| {
                let first = if k == 0 { 1 - 3 * uk } else { -3 * uk };
                std::iter::once(first).chain(row).collect()
            })
            .collect();
        Self::new(u, a)
    }

    pub fn identity(n: usize) -> Self {
        let a = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        Self { u: vec![0; n], a }
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    pub fn u(&self) -> &[i64] {
        &self.u
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn column_condition(&self) -> bool {
        self.a.iter().enumerate().all(|(k, row)| {
            let expected = if k == 0 { 1 - 3 * self.u[0] } else { -3 * self.u[k] };
            row[0] == expected
        })
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::ShapeMismatch(format!("dimensions {} and {}", self.dim(), other.dim())));
        }
        Ok(())
    }

    /// `(u, A) ∘ (w, B) = (u + Aw, AB)`, composition of affine maps.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let n = self.dim();
        let mut u = Vec::with_capacity(n);
        for (ui, row) in self.u.iter().zip(&self.a) {
            let aw = checked_dot(row, other.u.iter().copied())?;
            u.push(ui.checked_add(aw).ok_or(Error::Overflow("elliptic matrix product"))?);
        }
        let a = self
            .a
            .iter()
            .map(|row| (0..n).map(|j| checked_dot(row, other.a.iter().map(|r| r[j]))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { u, a })
    }

    /// Pointwise `∗` of the corresponding morphisms: vector part
    /// `(1 − u1 − v1, −uk − vk)`, matrix part `−A − B`.
    pub fn star(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let neg_sum = |x: i64, y: i64| x.checked_add(y).and_then(i64::checked_neg).ok_or(Error::Overflow("elliptic matrix star"));
        let mut u = self.u.iter().zip(&other.u).map(|(&x, &y)| neg_sum(x, y)).collect::<Result<Vec<_>>>()?;
        u[0] += 1;
        let a = self
            .a
            .iter()
            .zip(&other.a)
            .map(|(r, s)| r.iter().zip(s).map(|(&x, &y)| neg_sum(x, y)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { u, a })
    }

    /// The morphism `x ↦ u + Ax` of `_{e1}Z^n`.
    pub fn to_morphism(&self) -> AffineMorphism {
        let s = free_elliptic(self.dim()).expect("n ≥ 1");
        let images = (0..self.dim())
            .map(|j| GroupElement::from_raw(self.a.iter().map(|row| row[j]).collect()))
            .collect();
        AffineMorphism::new(&s, &s, &self.u, images).expect("column condition is compatibility")
    }
}

/// An element of `Ell_1(Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CircInt(pub i64);

impl CircInt {
    /// `1 − a − b`.
    pub fn star(self, other: CircInt) -> Result<CircInt> {
        1i64.checked_sub(self.0)
            .and_then(|x| x.checked_sub(other.0))
            .map(CircInt)
            .ok_or(Error::Overflow("circ star"))
    }

    /// `a + b − 3ab`.
    pub fn circ(self, other: CircInt) -> Result<CircInt> {
        let (a, b) = (self.0 as i128, other.0 as i128);
        i64::try_from(a + b - 3 * a * b).map(CircInt).map_err(|_| Error::Overflow("circ product"))
    }

    pub fn sigma(self) -> Result<i64> {
        sigma(self.0)
    }
}

impl fmt::Display for CircInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `Σ(a) = 1 − 3a`.
pub fn sigma(a: i64) -> Result<i64> {
    a.checked_mul(3).and_then(|x| 1i64.checked_sub(x)).ok_or(Error::Overflow("sigma"))
}

/// `a ∘ b = a + b − 3ab`.
pub fn circ(a: i64, b: i64) -> Result<i64> {
    CircInt(a).circ(CircInt(b)).map(|c| c.0)
}

/// `∘`-product of a list; the empty product is the unit `0`.
pub fn circ_product(values: &[i64]) -> Result<i64> {
    values.iter().try_fold(0, |acc, &v| circ(acc, v))
}

/// `a ≠ 0` is `∘`-prime iff `|3a − 1|` is prime.
pub fn is_circ_prime(a: i64) -> Result<bool> {
    if a == 0 {
        return Err(Error::CircUnit);
    }
    Ok(arith::is_prime(sigma(a)?.unsigned_abs()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircFactorization {
    pub input: i64,
    /// `∘`-primes in ascending order, with multiplicity.
    pub factors: Vec<i64>,
}

/// Factor `|Σ(a)|` and lift each prime `p` to `(1 − p)/3` when `p ≡ 1` and
/// to `(1 + p)/3` when `p ≡ 2 (mod 3)`.
pub fn circ_factor(a: i64) -> Result<CircFactorization> {
    if a == 0 {
        return Err(Error::CircUnit);
    }
    let s = sigma(a)?.unsigned_abs();
    let mut factors = Vec::new();
    for (p, e) in arith::factorize(s) {
        let lifted = if p % 3 == 1 { (1 - p as i64) / 3 } else { (1 + p as i64) / 3 };
        factors.extend(std::iter::repeat_n(lifted, e as usize));
    }
    factors.sort_unstable();
    Ok(CircFactorization { input: a, factors })
}

/// `c` with `a ∘ c = b`, when it exists: `c = (b − a)/(1 − 3a)`.
pub fn circ_divides(a: i64, b: i64) -> Result<Option<i64>> {
    if a == 0 {
        return Ok(Some(b));
    }
    let d = sigma(a)?;
    let diff = b.checked_sub(a).ok_or(Error::Overflow("circ_divides"))?;
    Ok((diff % d == 0).then(|| diff / d))
}

/// A `∘`-prime outside `primes`: the smallest `∘`-prime factor of
/// `N = (p1 ∘ .. ∘ pk) ∗ 0 = 1 − p1 ∘ .. ∘ pk`.
pub fn euclid_witness(primes: &[i64]) -> Result<i64> {
    if primes.is_empty() {
        return Err(Error::InvalidArgument("need at least one ∘-prime".into()));
    }
    for (i, &p) in primes.iter().enumerate() {
        if !is_circ_prime(p)? {
            return Err(Error::InvalidArgument(format!("{p} is not a ∘-prime")));
        }
        if primes[..i].contains(&p) {
            return Err(Error::InvalidArgument(format!("{p} is repeated")));
        }
    }
    let product = circ_product(primes)?;
    if product == 1 {
        return Err(Error::InvalidArgument("the ∘-product is 1, so N = 0 is the unit".into()));
    }
    let n = CircInt(product).star(CircInt(0))?.0;
    let witness = circ_factor(n)?.factors[0];
    debug_assert!(!primes.contains(&witness));
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pa(s: &str) -> PointedAbelian {
        s.parse().unwrap()
    }

    #[test]
    fn ell_examples() {
        assert_eq!(ell1(None).circ(2, 3), -13);
        assert_eq!(ell0(Some(5)).circ(2, 3), 1);
        assert_eq!(ell0(Some(5)).unit(), 1);
        assert_eq!(ell1(None).star(2, 3), -4);
    }

    #[test]
    fn finite_ells_are_rings() {
        for n in 1..=9 {
            for ops in [ell1(Some(n)), ell0(Some(n))] {
                let report = verify_ring_axioms(&ops.to_finite().unwrap());
                assert!(report.is_ring(), "{ops:?}: {report:?}");
                assert!(report.commutative);
            }
        }
    }

    #[test]
    fn corrupted_circ_fails_distributivity() {
        let good = ell1(Some(5)).to_finite().unwrap();
        let n = good.size();
        let bad_circ = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        let star = good.star_table().rows().to_vec();
        let labels = good.star_table().labels().to_vec();
        let bad = FiniteEllipticRing::new(labels, star, bad_circ, 0).unwrap();
        let report = verify_ring_axioms(&bad);
        assert!(!report.right_distributive);
        assert_eq!(report.first_violation.unwrap().axiom, "right_distributive");
    }

    #[test]
    fn endo_rings_match_ell() {
        for (s, ops, a_of) in [
            ("9:1", ell1(Some(9)), 0usize),
            ("3:1", ell1(Some(3)), 0),
            ("5:0", ell0(Some(5)), 1),
        ] {
            let endo = endo_ring(&pa(s)).unwrap();
            let target = ops.to_finite().unwrap();
            // f_a ↦ a for Ell_1 (a = constant); g_a ↦ a for Ell_0 (a = slope)
            let map: Vec<usize> = endo
                .morphisms
                .iter()
                .map(|f| {
                    if a_of == 0 {
                        f.constant().coords()[0] as usize
                    } else {
                        f.linear().images()[0].coords()[0] as usize
                    }
                })
                .collect();
            assert!(is_ring_isomorphism(&endo.ring, &target, &map), "{s}");
            let report = verify_ring_axioms(&endo.ring);
            assert!(report.is_ring());
        }
        assert_eq!(endo_ring(&PointedAbelian::terminal()).unwrap().ring.size(), 1);
    }

    #[test]
    fn noncommutative_endo_ring() {
        let endo = endo_ring(&pa("2,2:0,0")).unwrap();
        let report = verify_ring_axioms(&endo.ring);
        assert!(report.is_ring());
        assert!(!report.commutative);
    }

    #[test]
    fn matrix_identity_and_column_condition() {
        let m = EllipticMatrix::from_free_columns(vec![2, -1], vec![vec![4], vec![7]]).unwrap();
        assert_eq!(m.matrix(), &[vec![-5, 4], vec![3, 7]]);
        let id = EllipticMatrix::identity(2);
        assert_eq!(id.mul(&m).unwrap(), m);
        assert_eq!(m.mul(&id).unwrap(), m);
        assert!(EllipticMatrix::new(vec![0, 0], vec![vec![2, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn matrix_star_matches_display() {
        let m = EllipticMatrix::from_free_columns(vec![2, -1], vec![vec![4], vec![7]]).unwrap();
        let n = EllipticMatrix::from_free_columns(vec![1, 5], vec![vec![-3], vec![2]]).unwrap();
        let s = m.star(&n).unwrap();
        assert_eq!(s.u(), &[1 - 2 - 1, 1 - 5]);
        assert_eq!(s.matrix()[1], vec![-3 - (-15), -7 - 2]);
        assert!(s.column_condition());
    }

    #[test]
    fn matrix_ops_are_morphism_ops() {
        let m = EllipticMatrix::from_free_columns(vec![2, -1], vec![vec![4], vec![7]]).unwrap();
        let n = EllipticMatrix::from_free_columns(vec![1, 5], vec![vec![-3], vec![2]]).unwrap();
        assert_eq!(m.mul(&n).unwrap().to_morphism(), m.to_morphism().compose(&n.to_morphism()).unwrap());
        assert_eq!(m.star(&n).unwrap().to_morphism(), m.to_morphism().star(&n.to_morphism()).unwrap());
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(0).unwrap(), 1);
        assert_eq!(sigma(1).unwrap(), -2);
        assert_eq!(circ(2, -2).unwrap(), 12);
        assert_eq!(sigma(12).unwrap(), -35);
        assert_eq!(sigma(2).unwrap() * sigma(-2).unwrap(), -35);
    }

    #[test]
    fn circ_prime_lists() {
        for a in [1, 2, 4, 6, 8, 10, 14, -2, -4, -6, -10] {
            assert!(is_circ_prime(a).unwrap(), "{a}");
        }
        for a in [12, -8, 3, 5, -1] {
            assert!(!is_circ_prime(a).unwrap(), "{a}");
        }
        assert_eq!(is_circ_prime(0), Err(Error::CircUnit));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(circ_factor(12).unwrap().factors, vec![-2, 2]);
        assert_eq!(circ_factor(-8).unwrap().factors, vec![2, 2]);
        assert_eq!(circ_factor(14).unwrap().factors, vec![14]);
        assert_eq!(circ_factor(0), Err(Error::CircUnit));
        let j = serde_json::to_string(&circ_factor(12).unwrap()).unwrap();
        assert_eq!(j, r#"{"input":12,"factors":[-2,2]}"#);
    }

    #[test]
    fn divisibility_examples() {
        assert_eq!(circ_divides(2, 12).unwrap(), Some(-2));
        assert_eq!(circ_divides(1, 1).unwrap(), Some(0));
        assert_eq!(circ_divides(2, 5).unwrap(), None);
    }

    #[test]
    fn euclid_examples() {
        assert_eq!(euclid_witness(&[2]).unwrap(), 1);
        assert_eq!(euclid_witness(&[2, 1]).unwrap(), 4);
        assert!(euclid_witness(&[1]).is_err());
        assert!(euclid_witness(&[12]).is_err());
        assert!(euclid_witness(&[]).is_err());
    }

    #[test]
    fn euclid_chain_keeps_producing_new_primes() {
        let mut primes = vec![2];
        for _ in 0..4 {
            let w = euclid_witness(&primes).unwrap();
            assert!(is_circ_prime(w).unwrap());
            assert!(!primes.contains(&w));
            primes.push(w);
        }
    }

    #[test]
    fn divisibility_lemma() {
        // b and b ∗ c ∘-divisible by a ⇒ c ∘-divisible by a
        for a in [-4i64, -2, 1, 2, 4] {
            for x in -6..6 {
                for y in -6..6 {
                    let b = circ(a, x).unwrap();
                    let bc = circ(a, y).unwrap();
                    let c = CircInt(b).star(CircInt(bc)).unwrap().0;
                    // b ∗ c = bc by EG2
                    assert_eq!(CircInt(b).star(CircInt(c)).unwrap().0, bc);
                    assert!(circ_divides(a, c).unwrap().is_some());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn sigma_is_multiplicative(a in -100_000i64..100_000, b in -100_000i64..100_000) {
            prop_assert_eq!(sigma(circ(a, b).unwrap()).unwrap(), sigma(a).unwrap() * sigma(b).unwrap());
        }

        #[test]
        fn factorization_roundtrips(a in -1_000_000i64..1_000_000) {
            prop_assume!(a != 0);
            let f = circ_factor(a).unwrap();
            prop_assert_eq!(circ_product(&f.factors).unwrap(), a);
            for &q in &f.factors {
                prop_assert!(is_circ_prime(q).unwrap());
            }
        }

        #[test]
        fn divides_inverts_circ(a in -1000i64..1000, c in -1000i64..1000) {
            prop_assume!(a != 0);
            prop_assert_eq!(circ_divides(a, circ(a, c).unwrap()).unwrap(), Some(c));
        }

        #[test]
        fn matrices_compose_like_morphisms(
            u in prop::collection::vec(-5i64..=5, 3),
            v in prop::collection::vec(-5i64..=5, 3),
            ra in prop::collection::vec(prop::collection::vec(-5i64..=5, 2), 3),
            rb in prop::collection::vec(prop::collection::vec(-5i64..=5, 2), 3),
        ) {
            let m = EllipticMatrix::from_free_columns(u, ra).unwrap();
            let n = EllipticMatrix::from_free_columns(v, rb).unwrap();
            let p = m.mul(&n).unwrap();
            prop_assert!(p.column_condition());
            prop_assert_eq!(p.to_morphism(), m.to_morphism().compose(&n.to_morphism()).unwrap());
            prop_assert!(m.star(&n).unwrap().column_condition());
        }
    }
}
