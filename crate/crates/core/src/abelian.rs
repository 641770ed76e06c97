//! Finitely generated abelian groups presented as explicit direct sums of
//! cyclic groups `Z/m1 ⊕ ... ⊕ Z/mr`, where a modulus of `0` stands for `Z`.
//!
//! Moduli are kept exactly as given; nothing is put into Smith normal form.
//! Elements are integer vectors whose finite coordinates are reduced into
//! `[0, m)`, so structural equality of [`GroupElement`]s is group equality.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{self, gcd, mod_inverse};
use crate::error::{Error, Result};

/// A direct sum of cyclic groups. Modulus `0` is an infinite cyclic factor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupShape {
    moduli: Vec<u64>,
}

/// An element of some [`GroupShape`], stored as reduced coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    coords: Vec<i64>,
}

impl GroupElement {
    /// Wraps raw coordinates without reducing them. Use [`GroupShape::reduce`]
    /// for anything that did not come out of this module.
    pub fn from_raw(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Concatenation, the element of a direct sum.
    pub fn concat(&self, other: &GroupElement) -> GroupElement {
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        GroupElement { coords }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for GroupElement {
    type Err = Error;

    /// Comma-separated integers; the empty string is the element of the
    /// trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(GroupElement::default());
        }
        let coords = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupElement { coords })
    }
}

/// Free rank plus prime-power torsion factors, the isomorphism invariant of a
/// shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimaryDecomposition {
    pub free_rank: usize,
    /// `(p, k)` pairs sorted ascending.
    pub prime_powers: Vec<(u64, u32)>,
}

impl GroupShape {
    pub fn new(moduli: Vec<u64>) -> Self {
        Self { moduli }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(m: u64) -> Self {
        Self { moduli: vec![m] }
    }

    /// `Z^n`.
    pub fn free(n: usize) -> Self {
        Self { moduli: vec![0; n] }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Number of cyclic factors (not the group order).
    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.moduli.iter().all(|&m| m >= 1)
    }

    pub fn free_rank(&self) -> usize {
        self.moduli.iter().filter(|&&m| m == 0).count()
    }

    /// Group order, `None` for infinite shapes or on overflow.
    pub fn order(&self) -> Option<u64> {
        self.moduli
            .iter()
            .try_fold(1u64, |acc, &m| if m == 0 { None } else { acc.checked_mul(m) })
    }

    fn require_finite(&self) -> Result<u64> {
        self.order().ok_or_else(|| Error::InfiniteShape(self.descriptor()))
    }

    pub fn direct_sum(&self, other: &GroupShape) -> GroupShape {
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&other.moduli);
        GroupShape { moduli }
    }

    /// Machine descriptor, e.g. `"0,9,3"` for `Z ⊕ Z/9 ⊕ Z/3`.
    pub fn descriptor(&self) -> String {
        self.moduli.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")
    }

    fn check_len(&self, raw: &[i64]) -> Result<()> {
        if raw.len() != self.moduli.len() {
            return Err(Error::LengthMismatch {
                expected: self.moduli.len(),
                found: raw.len(),
            });
        }
        Ok(())
    }

    fn reduce_unchecked(&self, mut raw: Vec<i64>) -> GroupElement {
        for (c, &m) in raw.iter_mut().zip(&self.moduli) {
            if m != 0 {
                *c = c.rem_euclid(m as i64);
            }
        }
        GroupElement { coords: raw }
    }

    /// Reduces each finite coordinate into `[0, m)`.
    pub fn reduce(&self, raw: &[i64]) -> Result<GroupElement> {
        self.check_len(raw)?;
        Ok(self.reduce_unchecked(raw.to_vec()))
    }

    /// True when `x` has the right length and is already reduced.
    pub fn contains(&self, x: &GroupElement) -> bool {
        x.len() == self.len()
            && x.coords.iter().zip(&self.moduli).all(|(&c, &m)| m == 0 || (0..m as i64).contains(&c))
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        if !self.contains(x) {
            return Err(Error::ShapeMismatch(format!(
                "{x} is not a reduced element of {}",
                self.descriptor()
            )));
        }
        Ok(())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.len()] }
    }

    /// The `j`-th standard generator.
    pub fn generator(&self, j: usize) -> GroupElement {
        let mut coords = vec![0; self.len()];
        coords[j] = 1;
        self.reduce_unchecked(coords)
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add_unchecked(x, y))
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.sub_unchecked(x, y))
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        Ok(self.neg_unchecked(x))
    }

    pub fn smul(&self, k: i64, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        Ok(self.smul_unchecked(k, x))
    }

    pub(crate) fn add_unchecked(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let raw = x.coords.iter().zip(&y.coords).map(|(a, b)| a + b).collect();
        self.reduce_unchecked(raw)
    }

    pub(crate) fn sub_unchecked(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let raw = x.coords.iter().zip(&y.coords).map(|(a, b)| a - b).collect();
        self.reduce_unchecked(raw)
    }

    pub(crate) fn neg_unchecked(&self, x: &GroupElement) -> GroupElement {
        self.reduce_unchecked(x.coords.iter().map(|a| -a).collect())
    }

    pub(crate) fn smul_unchecked(&self, k: i64, x: &GroupElement) -> GroupElement {
        let raw = x
            .coords
            .iter()
            .zip(&self.moduli)
            .map(|(&a, &m)| {
                if m == 0 {
                    a.checked_mul(k).expect("integer overflow in scalar multiple")
                } else {
                    ((a as i128 * k as i128).rem_euclid(m as i128)) as i64
                }
            })
            .collect();
        GroupElement { coords: raw }
    }

    /// All elements in lexicographic order of their reduced coordinates.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        let n = self.require_finite()?;
        Ok((0..n as usize).map(|i| self.element_at(i)).collect())
    }

    /// Position of `x` in [`GroupShape::elements`] (mixed radix, first
    /// coordinate most significant). Finite shapes only.
    pub fn index_of(&self, x: &GroupElement) -> usize {
        x.coords
            .iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (&c, &m)| acc * m as usize + c as usize)
    }

    /// Inverse of [`GroupShape::index_of`].
    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut coords = vec![0i64; self.len()];
        for (c, &m) in coords.iter_mut().zip(&self.moduli).rev() {
            *c = (index % m as usize) as i64;
            index /= m as usize;
        }
        GroupElement { coords }
    }

    /// Free rank and the multiset of prime-power factors.
    pub fn primary_decomposition(&self) -> PrimaryDecomposition {
        let mut prime_powers = Vec::new();
        for &m in &self.moduli {
            if m >= 2 {
                prime_powers.extend(arith::factorize(m));
            }
        }
        prime_powers.sort_unstable();
        PrimaryDecomposition { free_rank: self.free_rank(), prime_powers }
    }

    /// Isomorphism of abelian groups, decided on primary decompositions.
    pub fn is_isomorphic_to(&self, other: &GroupShape) -> bool {
        self.primary_decomposition() == other.primary_decomposition()
    }

    /// One solution of `n·x = c`, if any. Solvable coordinatewise: over `Z`
    /// iff `n | c`, over `Z/m` iff `gcd(n, m) | c`.
    pub fn divide(&self, n: i64, c: &GroupElement) -> Result<Option<GroupElement>> {
        self.check(c)?;
        if n == 0 {
            return Ok(c.is_zero().then(|| self.zero()));
        }
        let mut coords = Vec::with_capacity(self.len());
        for (&ci, &m) in c.coords.iter().zip(&self.moduli) {
            if m == 0 {
                if ci % n != 0 {
                    return Ok(None);
                }
                coords.push(ci / n);
            } else {
                let m = m as i64;
                let g = gcd(n, m);
                if ci % g != 0 {
                    return Ok(None);
                }
                let reduced_mod = m / g;
                let inv = mod_inverse((n / g).rem_euclid(reduced_mod), reduced_mod)
                    .expect("n/g is a unit modulo m/g");
                let x = ((ci / g) as i128 * inv as i128).rem_euclid(reduced_mod as i128);
                coords.push(x as i64);
            }
        }
        Ok(Some(GroupElement { coords }))
    }

    /// Membership in `nA`; no finiteness requirement.
    pub fn is_multiple(&self, n: i64, c: &GroupElement) -> Result<bool> {
        Ok(self.divide(n, c)?.is_some())
    }

    /// Membership in `3A`, decided by divisibility on each coordinate.
    pub fn member_of_3a(&self, c: &GroupElement) -> Result<bool> {
        self.is_multiple(3, c)
    }

    /// `Ann_3(A) = {a : 3a = 0}`, sorted.
    pub fn ann3(&self) -> Result<Vec<GroupElement>> {
        Ok(self
            .elements()?
            .into_iter()
            .filter(|x| self.smul_unchecked(3, x).is_zero())
            .collect())
    }

    /// `3A = {3a}`, sorted and deduplicated.
    pub fn triple_image(&self) -> Result<Vec<GroupElement>> {
        let set: BTreeSet<_> = self.elements()?.iter().map(|x| self.smul_unchecked(3, x)).collect();
        Ok(set.into_iter().collect())
    }

    /// The `n`-torsion subgroup `A[n] = {x : n·x = 0}` as a shape of its own,
    /// with its embedding into `A`.
    pub fn torsion_subgroup(&self, n: u64) -> TorsionSubgroup {
        let mut moduli = Vec::new();
        let mut slots = Vec::new();
        for (i, &m) in self.moduli.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let g = arith::gcd_u64(n, m);
            if g > 1 {
                moduli.push(g);
                slots.push((i, (m / g) as i64));
            }
        }
        let shape = GroupShape { moduli };
        let images = slots
            .iter()
            .map(|&(i, step)| {
                let mut coords = vec![0; self.len()];
                coords[i] = step;
                GroupElement { coords }
            })
            .collect();
        let embedding = GroupHom { source: shape.clone(), target: self.clone(), images };
        TorsionSubgroup { shape, embedding, slots }
    }

    /// `A/3A`: one factor `gcd(m, 3)` per finite modulus, `3` per free one,
    /// with trivial factors dropped.
    pub fn mod3_quotient(&self) -> GroupShape {
        let moduli = self
            .moduli
            .iter()
            .map(|&m| if m == 0 { 3 } else { arith::gcd_u64(m, 3) })
            .filter(|&m| m != 1)
            .collect();
        GroupShape { moduli }
    }

    /// Class of `x` in [`GroupShape::mod3_quotient`].
    pub fn mod3_class(&self, x: &GroupElement) -> GroupElement {
        let coords = x
            .coords
            .iter()
            .zip(&self.moduli)
            .filter_map(|(&c, &m)| {
                let q = if m == 0 { 3 } else { arith::gcd_u64(m, 3) };
                (q != 1).then(|| c.rem_euclid(q as i64))
            })
            .collect();
        GroupElement { coords }
    }

    /// `A ⊗ B` on cyclic factors: `Z/m ⊗ Z/n = Z/gcd(m,n)`, `Z ⊗ X = X`.
    pub fn tensor(&self, other: &GroupShape) -> GroupShape {
        let mut moduli = Vec::new();
        for &m in &self.moduli {
            for &n in &other.moduli {
                let t = match (m, n) {
                    (0, n) => n,
                    (m, 0) => m,
                    (m, n) => arith::gcd_u64(m, n),
                };
                if t != 1 {
                    moduli.push(t);
                }
            }
        }
        GroupShape { moduli }
    }

    /// `Hom(A, B)` as a shape: `Hom(Z/m, Z/n) = Z/gcd`, `Hom(Z, X) = X`,
    /// `Hom(Z/m, Z) = 0`.
    pub fn hom_shape(&self, target: &GroupShape) -> GroupShape {
        let mut moduli = Vec::new();
        for &m in &self.moduli {
            for &n in &target.moduli {
                let t = match (m, n) {
                    (0, n) => n,
                    (_, 0) => 1,
                    (m, n) => arith::gcd_u64(m, n),
                };
                if t != 1 {
                    moduli.push(t);
                }
            }
        }
        GroupShape { moduli }
    }
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "0");
        }
        for (i, &m) in self.moduli.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊕ ")?;
            }
            if m == 0 {
                write!(f, "Z")?;
            } else {
                write!(f, "Z/{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for GroupShape {
    type Err = Error;

    /// Comma-separated moduli, `0` for `Z`; empty string is the trivial group.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(GroupShape::trivial());
        }
        let moduli = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("bad modulus {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupShape { moduli })
    }
}

/// `A[n]` together with its inclusion into `A`.
#[derive(Clone, Debug)]
pub struct TorsionSubgroup {
    pub shape: GroupShape,
    pub embedding: GroupHom,
    slots: Vec<(usize, i64)>,
}

impl TorsionSubgroup {
    /// Coordinates of `x ∈ A[n]` in the subgroup's own shape; `None` when `x`
    /// is not `n`-torsion.
    pub fn coordinates(&self, x: &GroupElement) -> Option<GroupElement> {
        let mut in_slot = vec![false; x.len()];
        let mut coords = Vec::with_capacity(self.slots.len());
        for &(i, step) in &self.slots {
            in_slot[i] = true;
            if x.coords[i] % step != 0 {
                return None;
            }
            coords.push(x.coords[i] / step);
        }
        let rest_zero = x.coords.iter().zip(&in_slot).all(|(&c, &s)| s || c == 0);
        rest_zero.then_some(GroupElement { coords })
    }
}

/// A group homomorphism given by the images of the standard generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    source: GroupShape,
    target: GroupShape,
    images: Vec<GroupElement>,
}

impl GroupHom {
    /// Validates that each image lies in `target` and is killed by the
    /// corresponding source modulus.
    pub fn new(source: GroupShape, target: GroupShape, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::LengthMismatch { expected: source.len(), found: images.len() });
        }
        let images = images
            .into_iter()
            .map(|x| target.reduce(x.coords()))
            .collect::<Result<Vec<_>>>()?;
        for (j, (img, &m)) in images.iter().zip(source.moduli()).enumerate() {
            if m != 0 && !target.smul_unchecked(m as i64, img).is_zero() {
                return Err(Error::InvalidMorphism(format!(
                    "generator {j} has order dividing {m} but its image {img} does not"
                )));
            }
        }
        Ok(Self { source, target, images })
    }

    pub fn identity(shape: &GroupShape) -> Self {
        let images = (0..shape.len()).map(|j| shape.generator(j)).collect();
        Self { source: shape.clone(), target: shape.clone(), images }
    }

    pub fn zero(source: &GroupShape, target: &GroupShape) -> Self {
        Self { source: source.clone(), target: target.clone(), images: vec![target.zero(); source.len()] }
    }

    pub fn source(&self) -> &GroupShape {
        &self.source
    }

    pub fn target(&self) -> &GroupShape {
        &self.target
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        self.source.check(x)?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &GroupElement) -> GroupElement {
        let mut acc = vec![0i128; self.target.len()];
        for (&xj, img) in x.coords.iter().zip(&self.images) {
            if xj == 0 {
                continue;
            }
            for (a, &b) in acc.iter_mut().zip(&img.coords) {
                *a += xj as i128 * b as i128;
            }
        }
        let coords = acc
            .into_iter()
            .zip(self.target.moduli())
            .map(|(a, &m)| {
                if m == 0 {
                    i64::try_from(a).expect("integer overflow applying homomorphism")
                } else {
                    a.rem_euclid(m as i128) as i64
                }
            })
            .collect();
        GroupElement { coords }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.target != self.source {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose: inner target {} differs from outer source {}",
                inner.target, self.source
            )));
        }
        let images = inner.images.iter().map(|y| self.apply_unchecked(y)).collect();
        Ok(GroupHom { source: inner.source.clone(), target: self.target.clone(), images })
    }

    pub fn add(&self, other: &GroupHom) -> Result<GroupHom> {
        self.same_ends(other)?;
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| self.target.add_unchecked(a, b))
            .collect();
        Ok(GroupHom { images, ..self.clone() })
    }

    pub fn neg(&self) -> GroupHom {
        let images = self.images.iter().map(|a| self.target.neg_unchecked(a)).collect();
        GroupHom { images, ..self.clone() }
    }

    fn same_ends(&self, other: &GroupHom) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("homomorphisms with different ends".into()));
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == GroupHom::identity(&self.source)
    }

    /// Bijectivity for finite source and target: equal orders and trivial
    /// kernel.
    pub fn is_bijective(&self) -> Result<bool> {
        let n = self.source.require_finite()?;
        let m = self.target.require_finite()?;
        if n != m {
            return Ok(false);
        }
        Ok((1..n as usize).all(|i| !self.apply_unchecked(&self.source.element_at(i)).is_zero()))
    }
}

/// Every homomorphism `A → B`, ordered lexicographically by the tuple of
/// generator images. Only `B` needs to be finite.
pub fn enumerate_homs(a: &GroupShape, b: &GroupShape) -> Result<Vec<GroupHom>> {
    let elements = b.elements()?;
    let choices: Vec<Vec<GroupElement>> = a
        .moduli()
        .iter()
        .map(|&m| {
            elements
                .iter()
                .filter(|y| m == 0 || b.smul_unchecked(m as i64, y).is_zero())
                .cloned()
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(a.len());
    fn rec(
        choices: &[Vec<GroupElement>],
        current: &mut Vec<GroupElement>,
        a: &GroupShape,
        b: &GroupShape,
        out: &mut Vec<GroupHom>,
    ) {
        if current.len() == choices.len() {
            out.push(GroupHom { source: a.clone(), target: b.clone(), images: current.clone() });
            return;
        }
        for y in &choices[current.len()] {
            current.push(y.clone());
            rec(choices, current, a, b, out);
            current.pop();
        }
    }
    rec(&choices, &mut current, a, b, &mut out);
    Ok(out)
}

/// Number of homomorphisms `A → B` without materializing them.
pub fn count_homs(a: &GroupShape, b: &GroupShape) -> Result<u128> {
    b.require_finite()?;
    let elements = b.elements()?;
    Ok(a.moduli()
        .iter()
        .map(|&m| {
            elements
                .iter()
                .filter(|y| m == 0 || b.smul_unchecked(m as i64, y).is_zero())
                .count() as u128
        })
        .product())
}

/// The bijective members of [`enumerate_homs`]; both shapes must be finite.
pub fn enumerate_isos(a: &GroupShape, b: &GroupShape) -> Result<Vec<GroupHom>> {
    let n = a.require_finite()?;
    let m = b.require_finite()?;
    if n != m {
        return Ok(Vec::new());
    }
    let homs = enumerate_homs(a, b)?;
    let mut out = Vec::new();
    for h in homs {
        if h.is_bijective()? {
            out.push(h);
        }
    }
    Ok(out)
}

/// A subgroup of `A` given by generators. Membership works for every shape:
/// the generators together with `m·e_j` for each finite coordinate span a
/// lattice in `Z^r`, put into row echelon form once.
#[derive(Clone, Debug)]
pub struct Subgroup {
    shape: GroupShape,
    generators: Vec<GroupElement>,
    echelon: Vec<Vec<i128>>,
}

impl Subgroup {
    pub fn new(shape: &GroupShape, generators: Vec<GroupElement>) -> Result<Self> {
        let generators = generators
            .into_iter()
            .map(|g| shape.reduce(g.coords()))
            .collect::<Result<Vec<_>>>()?;
        let r = shape.len();
        let mut rows: Vec<Vec<i128>> =
            generators.iter().map(|g| g.coords.iter().map(|&c| c as i128).collect()).collect();
        for (j, &m) in shape.moduli().iter().enumerate() {
            if m != 0 {
                let mut row = vec![0i128; r];
                row[j] = m as i128;
                rows.push(row);
            }
        }
        let echelon = row_echelon(rows, r);
        Ok(Self { shape: shape.clone(), generators, echelon })
    }

    pub fn whole(shape: &GroupShape) -> Self {
        let gens = (0..shape.len()).map(|j| shape.generator(j)).collect();
        Self::new(shape, gens).expect("generators of the shape itself")
    }

    pub fn shape(&self) -> &GroupShape {
        &self.shape
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        if x.len() != self.shape.len() {
            return false;
        }
        let mut v: Vec<i128> = x.coords.iter().map(|&c| c as i128).collect();
        let mut row_iter = self.echelon.iter().peekable();
        for col in 0..v.len() {
            match row_iter.peek() {
                Some(row) if leading(row) == Some(col) => {
                    let pivot = row[col];
                    if v[col] % pivot != 0 {
                        return false;
                    }
                    let q = v[col] / pivot;
                    for (a, b) in v.iter_mut().zip(row.iter()) {
                        *a -= q * b;
                    }
                    row_iter.next();
                }
                _ => {
                    if v[col] != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Elements in enumeration order (finite shapes only).
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        Ok(self.shape.elements()?.into_iter().filter(|x| self.contains(x)).collect())
    }
}

fn leading(row: &[i128]) -> Option<usize> {
    row.iter().position(|&a| a != 0)
}

/// Integer row echelon form (Hermite style, without normalizing the entries
/// above pivots). Zero rows are dropped.
fn row_echelon(mut rows: Vec<Vec<i128>>, cols: usize) -> Vec<Vec<i128>> {
    let mut out = Vec::new();
    for col in 0..cols {
        loop {
            let mut active: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if active.len() <= 1 {
                break;
            }
            active.sort_by_key(|&i| rows[i][col].abs());
            let p = active[0];
            let pivot_row = rows[p].clone();
            for &i in &active[1..] {
                let q = rows[i][col].div_euclid(pivot_row[col]);
                for (a, b) in rows[i].iter_mut().zip(&pivot_row) {
                    *a -= q * b;
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| rows[i][col] != 0) {
            let mut row = rows.swap_remove(i);
            if row[col] < 0 {
                row.iter_mut().for_each(|a| *a = -*a);
            }
            out.push(row);
        }
    }
    out
}
