//! Classification of finitely generated elliptic groups.
//!
//! Every such group splits into indecomposables `_0Z`, `_1Z`, `_0Z/p^k`
//! (`p ≠ 3`), `_0Z/3^k` and `_1Z/3^k`. Products of two "1" factors merge
//! (`_1Z` absorbs every other one; `_1Z/3^k` absorbs `_1Z/3^l` for `k ≥ l`),
//! leaving one of `_0A`, `_1Z × _0A` or `_1Z/3^k × _0A`.

use std::fmt;

use serde::Serialize;

use crate::abelian::{GroupElement, GroupShape};
use crate::arith;
use crate::elliptic::PointedAbelian;
use crate::error::{Error, Result};
use crate::morphisms::AffineMorphism;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IndecomposableTag {
    /// `_0Z`
    Z0,
    /// `_1Z`
    Z1,
    /// `_0Z/p^k`, `p ≠ 3`
    Q0 { p: u64, k: u32 },
    /// `_0Z/3^k`
    T0(u32),
    /// `_1Z/3^k`
    T1(u32),
}

impl IndecomposableTag {
    /// Modulus of the underlying cyclic group, `0` for `Z`.
    pub fn modulus(&self) -> u64 {
        match *self {
            Self::Z0 | Self::Z1 => 0,
            Self::Q0 { p, k } => p.pow(k),
            Self::T0(k) | Self::T1(k) => 3u64.pow(k),
        }
    }

    fn demote(self) -> Self {
        match self {
            Self::Z1 => Self::Z0,
            Self::T1(k) => Self::T0(k),
            other => other,
        }
    }
}

/// The three shapes `_0A`, `_1Z × _0A`, `_1Z/3^k × _0A`, with `A` listed as
/// free factors first and then prime powers ascending by `(p, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "variant")]
pub enum CanonicalForm {
    Flex { shape: GroupShape },
    OneZ { shape: GroupShape },
    OneTorsion { k: u32, shape: GroupShape },
}

impl CanonicalForm {
    /// The `_0A` part.
    pub fn flex_part(&self) -> &GroupShape {
        match self {
            Self::Flex { shape } | Self::OneZ { shape } | Self::OneTorsion { shape, .. } => shape,
        }
    }

    /// Modulus of the "1" factor: `None` for `Flex`, `0` for `OneZ`.
    pub fn special_modulus(&self) -> Option<u64> {
        match self {
            Self::Flex { .. } => None,
            Self::OneZ { .. } => Some(0),
            Self::OneTorsion { k, .. } => Some(3u64.pow(*k)),
        }
    }

    /// Explicit representative; the "1" factor, if any, is coordinate 0.
    pub fn to_pointed(&self) -> PointedAbelian {
        match self.special_modulus() {
            None => PointedAbelian::flex(self.flex_part().clone()),
            Some(m) => {
                let shape = GroupShape::cyclic(m).direct_sum(self.flex_part());
                let mut base = vec![0; shape.len()];
                base[0] = 1;
                PointedAbelian::new(shape, &base).expect("base has the right length")
            }
        }
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Flex { shape } => return write!(f, "_0({shape})"),
            Self::OneZ { .. } => write!(f, "_1Z")?,
            Self::OneTorsion { k, .. } => write!(f, "_1Z/{}", 3u64.pow(*k))?,
        }
        let rest = self.flex_part();
        if rest.is_empty() {
            Ok(())
        } else {
            write!(f, " × _0({rest})")
        }
    }
}

/// One pointed cyclic factor per modulus: `_aA ≅ ∏ _{a_i}(Z/m_i)`.
pub fn split_components(p: &PointedAbelian) -> Vec<(GroupShape, i64)> {
    p.shape()
        .moduli()
        .iter()
        .zip(p.base().coords())
        .map(|(&m, &a)| (GroupShape::cyclic(m), a))
        .collect()
}

/// Like [`split_components`], but each finite factor is further split by
/// the Chinese remainder theorem into prime-power pieces (trivial pieces
/// dropped).
pub fn split_primary(p: &PointedAbelian) -> Vec<(u64, i64)> {
    let mut out = Vec::new();
    for (&m, &a) in p.shape().moduli().iter().zip(p.base().coords()) {
        if m == 0 {
            out.push((0, a));
            continue;
        }
        for (q, e) in arith::factorize(m) {
            let qe = q.pow(e);
            out.push((qe, a.rem_euclid(qe as i64)));
        }
    }
    out
}

/// Tag of `_a(Z/m)` for `m = 0` or a prime power.
pub fn classify_cyclic(m: u64, a: i64) -> Result<IndecomposableTag> {
    if m == 0 {
        return Ok(if a.rem_euclid(3) == 0 { IndecomposableTag::Z0 } else { IndecomposableTag::Z1 });
    }
    let (p, k) = arith::prime_power(m).ok_or(Error::NotPrimePower(m))?;
    Ok(if p != 3 {
        IndecomposableTag::Q0 { p, k }
    } else if a.rem_euclid(3) == 0 {
        IndecomposableTag::T0(k)
    } else {
        IndecomposableTag::T1(k)
    })
}

/// Indecomposable tags of `p`, before merging.
pub fn indecomposables(p: &PointedAbelian) -> Vec<IndecomposableTag> {
    split_primary(p)
        .into_iter()
        .map(|(m, a)| classify_cyclic(m, a).expect("split_primary yields 0 or prime powers"))
        .collect()
}

/// Isomorphism invariant of a finitely generated elliptic group.
pub fn canonical_form(p: &PointedAbelian) -> CanonicalForm {
    let mut tags = indecomposables(p);
    let special = if let Some(i) = tags.iter().position(|t| *t == IndecomposableTag::Z1) {
        Some(i)
    } else {
        tags.iter()
            .enumerate()
            .filter_map(|(i, t)| match t {
                IndecomposableTag::T1(k) => Some((*k, i)),
                _ => None,
            })
            .max_by_key(|&(k, i)| (k, std::cmp::Reverse(i)))
            .map(|(_, i)| i)
    };
    let survivor = special.map(|i| tags.remove(i));
    let mut rest: Vec<u64> = tags.into_iter().map(|t| t.demote().modulus()).collect();
    rest.sort_by_key(|&m| match m {
        0 => (0, 0),
        m => arith::prime_power(m).expect("prime power"),
    });
    let shape = GroupShape::new(rest);
    match survivor {
        None => CanonicalForm::Flex { shape },
        Some(IndecomposableTag::Z1) => CanonicalForm::OneZ { shape },
        Some(IndecomposableTag::T1(k)) => CanonicalForm::OneTorsion { k, shape },
        Some(other) => unreachable!("survivor {other:?} is not a 1-tag"),
    }
}

/// `_{e1}Z^n`, free on `n` generators; `None` for `n = 0`, whose free object
/// is the empty elliptic group.
pub fn free_elliptic(n: usize) -> Option<PointedAbelian> {
    if n == 0 {
        return None;
    }
    let mut base = vec![0; n];
    base[0] = 1;
    Some(PointedAbelian::new(GroupShape::free(n), &base).expect("length n"))
}

/// The free generators `0, e2, .., en` of `_{e1}Z^n`.
pub fn free_generators(n: usize) -> Vec<GroupElement> {
    let shape = GroupShape::free(n);
    let mut out = vec![shape.zero()];
    out.extend((1..n).map(|i| shape.generator(i)));
    out
}

/// The unique morphism `_{e1}Z^n → _cA` sending the free generators to
/// `s1, .., sn`: `f(x) = s1 + x1(c − 3s1) + Σ_{i≥2} xi(si − s1)`.
pub fn universal_map(n: usize, target: &PointedAbelian, values: &[GroupElement]) -> Result<AffineMorphism> {
    let source = free_elliptic(n).ok_or(Error::InvalidArgument("n must be positive".into()))?;
    if values.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: values.len() });
    }
    let a = target.shape();
    let values = values.iter().map(|v| a.reduce(v.coords())).collect::<Result<Vec<_>>>()?;
    let s1 = &values[0];
    let mut images = vec![a.sub_unchecked(target.base(), &a.smul_unchecked(3, s1))];
    images.extend(values[1..].iter().map(|s| a.sub_unchecked(s, s1)));
    AffineMorphism::new(&source, target, s1.coords(), images)
}

/// An injective morphism into a group with a flex point. Factor by factor,
/// `_a(Z/m)` with `a ∈ 3(Z/m)` is translated onto `_0(Z/m)` by `x ↦ x − o`
/// (`3o = a`); otherwise `x ↦ a − 3x` embeds it into `_0(Z/3m)` (or `_0Z`).
pub fn embed_into_flex(p: &PointedAbelian) -> Result<(AffineMorphism, PointedAbelian)> {
    let shape = p.shape();
    let mut moduli = Vec::with_capacity(shape.len());
    let mut constant = Vec::with_capacity(shape.len());
    let mut slopes = Vec::with_capacity(shape.len());
    for (&m, &a) in shape.moduli().iter().zip(p.base().coords()) {
        let factor = GroupShape::cyclic(m);
        match factor.divide(3, &GroupElement::from_raw(vec![a]))? {
            Some(o) => {
                moduli.push(m);
                constant.push(-o.coords()[0]);
                slopes.push(1);
            }
            None => {
                moduli.push(3 * m);
                constant.push(a);
                slopes.push(-3);
            }
        }
    }
    let target = PointedAbelian::flex(GroupShape::new(moduli));
    let images = slopes
        .iter()
        .enumerate()
        .map(|(j, &s)| {
            let mut v = vec![0; shape.len()];
            v[j] = s;
            GroupElement::from_raw(v)
        })
        .collect();
    let kappa = AffineMorphism::new(p, &target, &constant, images)?;
    Ok((kappa, target))
}

/// `f(x, y) = (x, 2x + y − 1)`, an isomorphism
/// `_{(1,1)}(Z/m1 ⊕ Z/m2) → _{(1,0)}(Z/m1 ⊕ Z/m2)` for the merge cases
/// `(Z, Z)`, `(Z, Z/3^l)` and `(Z/3^k, Z/3^l)` with `k ≥ l`.
pub fn merge_isomorphism(m1: u64, m2: u64) -> Result<AffineMorphism> {
    let shape = GroupShape::new(vec![m1, m2]);
    let source = PointedAbelian::new(shape.clone(), &[1, 1])?;
    let target = PointedAbelian::new(shape, &[1, 0])?;
    let images = vec![GroupElement::from_raw(vec![1, 2]), GroupElement::from_raw(vec![0, 1])];
    AffineMorphism::new(&source, &target, &[0, -1], images)
}
