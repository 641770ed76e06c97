//! Morphisms of pointed-abelian elliptic groups. A map `_aA → _bB` preserves
//! `∗` exactly when it is affine, `f(x) = f0 + f1(x)` with `f1` a group
//! homomorphism and `3 f0 + f1(a) = b`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::abelian::{enumerate_homs, enumerate_isos, GroupElement, GroupHom, GroupShape, Subgroup};
use crate::classify::{canonical_form, CanonicalForm};
use crate::elliptic::{CayleyTable, EllipticGroup, PointedAbelian};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMorphism {
    source: PointedAbelian,
    target: PointedAbelian,
    constant: GroupElement,
    linear: GroupHom,
}

impl AffineMorphism {
    /// Reduces `constant` and the generator images, then checks that the
    /// linear part is a homomorphism and that `3 f0 + f1(a) = b`.
    pub fn new(
        source: &PointedAbelian,
        target: &PointedAbelian,
        constant: &[i64],
        images: Vec<GroupElement>,
    ) -> Result<Self> {
        let constant = target.shape().reduce(constant)?;
        let linear = GroupHom::new(source.shape().clone(), target.shape().clone(), images)?;
        Self::from_parts(source, target, constant, linear)
    }

    pub fn from_parts(
        source: &PointedAbelian,
        target: &PointedAbelian,
        constant: GroupElement,
        linear: GroupHom,
    ) -> Result<Self> {
        if linear.source() != source.shape() || linear.target() != target.shape() {
            return Err(Error::ShapeMismatch("linear part has the wrong ends".into()));
        }
        let constant = target.shape().reduce(constant.coords())?;
        let b = target.shape();
        let lhs = b.add_unchecked(&b.smul_unchecked(3, &constant), &linear.apply_unchecked(source.base()));
        if &lhs != target.base() {
            return Err(Error::InvalidMorphism(format!(
                "3·{constant} + f1({}) = {lhs}, expected {}",
                source.base(),
                target.base()
            )));
        }
        Ok(Self { source: source.clone(), target: target.clone(), constant, linear })
    }

    pub fn identity(p: &PointedAbelian) -> Self {
        Self {
            source: p.clone(),
            target: p.clone(),
            constant: p.shape().zero(),
            linear: GroupHom::identity(p.shape()),
        }
    }

    pub fn source(&self) -> &PointedAbelian {
        &self.source
    }

    pub fn target(&self) -> &PointedAbelian {
        &self.target
    }

    pub fn constant(&self) -> &GroupElement {
        &self.constant
    }

    pub fn linear(&self) -> &GroupHom {
        &self.linear
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        let y = self.linear.apply(x)?;
        Ok(self.target.shape().add_unchecked(&self.constant, &y))
    }

    pub(crate) fn apply_unchecked(&self, x: &GroupElement) -> GroupElement {
        self.target.shape().add_unchecked(&self.constant, &self.linear.apply_unchecked(x))
    }

    /// `self ∘ inner`: constant `g0 + g1(f0)`, linear `g1 ∘ f1`.
    pub fn compose(&self, inner: &AffineMorphism) -> Result<AffineMorphism> {
        if inner.target != self.source {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose {} → {} after {} → {}",
                self.source, self.target, inner.source, inner.target
            )));
        }
        let constant = self.apply_unchecked(&inner.constant);
        let linear = self.linear.compose(&inner.linear)?;
        Ok(AffineMorphism { source: inner.source.clone(), target: self.target.clone(), constant, linear })
    }

    /// Pointwise `(f ∗ g)(x) = f(x) ∗ g(x)`: constant `b − f0 − g0`,
    /// linear `−(f1 + g1)`.
    pub fn star(&self, other: &AffineMorphism) -> Result<AffineMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("morphisms with different ends".into()));
        }
        let b = self.target.shape();
        let constant = b.sub_unchecked(&b.sub_unchecked(self.target.base(), &self.constant), &other.constant);
        let linear = self.linear.add(&other.linear)?.neg();
        Ok(AffineMorphism { constant, linear, ..self.clone() })
    }

    /// Bijectivity on finite shapes (the linear part decides it).
    pub fn is_bijective(&self) -> Result<bool> {
        self.linear.is_bijective()
    }

    /// Exhaustive check of `f(x ∗ y) = f(x) ∗ f(y)` on a finite source.
    pub fn preserves_star(&self) -> Result<bool> {
        let elements = self.source.elements()?;
        let images: Vec<_> = elements.iter().map(|x| self.apply_unchecked(x)).collect();
        let index = |x: &GroupElement| self.source.shape().index_of(x);
        Ok(elements.iter().enumerate().all(|(i, x)| {
            elements.iter().enumerate().all(|(j, y)| {
                let lhs = &images[index(&self.source.star(x, y))];
                lhs == &self.target.star(&images[i], &images[j])
            })
        }))
    }

    fn sort_key(&self) -> (GroupElement, Vec<GroupElement>) {
        (self.constant.clone(), self.linear.images().to_vec())
    }
}

impl fmt::Display for AffineMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x ↦ {}", self.constant)?;
        for (j, img) in self.linear.images().iter().enumerate() {
            write!(f, " + x{}·{}", j + 1, img)?;
        }
        Ok(())
    }
}

impl Serialize for AffineMorphism {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("AffineMorphism", 2)?;
        s.serialize_field("constant", self.constant.coords())?;
        let linear: Vec<&[i64]> = self.linear.images().iter().map(|g| g.coords()).collect();
        s.serialize_field("linear", &linear)?;
        s.end()
    }
}

/// Every morphism `src → dst`, sorted by `(constant, generator images)`.
/// Only the target has to be finite.
pub fn enumerate_morphisms(src: &PointedAbelian, dst: &PointedAbelian) -> Result<Vec<AffineMorphism>> {
    let b = dst.shape();
    let ann = b.ann3()?;
    let homs = enumerate_homs(src.shape(), b)?;
    let mut out: Vec<AffineMorphism> = homs
        .into_par_iter()
        .flat_map_iter(|f1| {
            let need = b.sub_unchecked(dst.base(), &f1.apply_unchecked(src.base()));
            let particular = b.divide(3, &need).expect("need lies in B");
            let constants: Vec<GroupElement> = match particular {
                Some(p) => ann.iter().map(|t| b.add_unchecked(&p, t)).collect(),
                None => Vec::new(),
            };
            constants.into_iter().map(move |constant| AffineMorphism {
                source: src.clone(),
                target: dst.clone(),
                constant,
                linear: f1.clone(),
            })
        })
        .collect();
    out.sort_by_cached_key(AffineMorphism::sort_key);
    Ok(out)
}

/// `H(a) = {f1(a) : f1 ∈ Hom(A, B)}` as a subgroup of `B`, generated by
/// `a_j · B[m_j]` over the cyclic factors `Z/m_j` of `A`.
fn image_of_base(src: &PointedAbelian, b: &GroupShape) -> Vec<GroupElement> {
    let mut gens = Vec::new();
    for (&m, &aj) in src.shape().moduli().iter().zip(src.base().coords()) {
        if aj == 0 {
            continue;
        }
        let torsion: Vec<GroupElement> = if m == 0 {
            (0..b.len()).map(|i| b.generator(i)).collect()
        } else {
            b.torsion_subgroup(m).embedding.images().to_vec()
        };
        gens.extend(torsion.iter().map(|y| b.smul_unchecked(aj, y)));
    }
    gens
}

/// Whether some morphism `src → dst` exists, i.e. `b ∈ 3B + H(a)`. Decided
/// by lattice membership, so free factors on either side are fine.
pub fn hom_exists(src: &PointedAbelian, dst: &PointedAbelian) -> bool {
    let b = dst.shape();
    let mut gens = image_of_base(src, b);
    gens.extend((0..b.len()).map(|i| b.smul_unchecked(3, &b.generator(i))));
    Subgroup::new(b, gens).expect("generators lie in B").contains(dst.base())
}

/// Isomorphism via canonical forms; valid for every finitely generated pair.
pub fn is_isomorphic(p: &PointedAbelian, q: &PointedAbelian) -> bool {
    canonical_form(p) == canonical_form(q)
}

/// Isomorphism for finite groups by searching `b ∈ 3B + I(a)` directly.
pub fn is_isomorphic_by_enumeration(p: &PointedAbelian, q: &PointedAbelian) -> Result<bool> {
    let b = q.shape();
    for f1 in enumerate_isos(p.shape(), b)? {
        let need = b.sub_unchecked(q.base(), &f1.apply_unchecked(p.base()));
        if b.member_of_3a(&need)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `Mor(S, T)` with its pointwise elliptic structure.
#[derive(Clone, Debug)]
pub struct MorStructure {
    pub morphisms: Vec<AffineMorphism>,
    pub table: CayleyTable,
}

pub fn mor_elliptic(src: &PointedAbelian, dst: &PointedAbelian) -> Result<MorStructure> {
    let morphisms = enumerate_morphisms(src, dst)?;
    if morphisms.is_empty() {
        return Err(Error::EmptyHomSet);
    }
    let index: HashMap<&AffineMorphism, usize> = morphisms.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let table = morphisms
        .iter()
        .map(|f| {
            morphisms
                .iter()
                .map(|g| index[&f.star(g).expect("same ends")])
                .collect()
        })
        .collect();
    let labels = morphisms.iter().map(|f| f.to_string()).collect();
    let table = CayleyTable::new(labels, table)?;
    Ok(MorStructure { morphisms, table })
}

/// Closed form of `Mor(src, dst)` as a pointed group, `None` when empty.
///
/// The source is replaced by its canonical form `_εC × _0A'`; the `_0A'`
/// part contributes a free factor `_0Hom(A', B)`, and the first factor gives
/// `_0Hom(Z/3, B)` (flex, needs `b ∈ 3B`), `_bB` (for `_1Z`) or
/// `_{b−3f*}(B[3^{k+1}])` (for `_1Z/3^k`, needs `3^k b ∈ 3^{k+1}B`, with
/// `f*` any solution of `3^{k+1} f* = 3^k b`).
pub fn predicted_mor_structure(src: &PointedAbelian, dst: &PointedAbelian) -> Result<Option<PointedAbelian>> {
    let b = dst.shape();
    let form = canonical_form(src);
    let hom_rest = form.flex_part().hom_shape(b);
    let first = match &form {
        CanonicalForm::Flex { .. } => {
            if !b.member_of_3a(dst.base())? {
                return Ok(None);
            }
            PointedAbelian::flex(GroupShape::cyclic(3).hom_shape(b))
        }
        CanonicalForm::OneZ { .. } => dst.clone(),
        CanonicalForm::OneTorsion { k, .. } => {
            let pk = 3i64.checked_pow(*k).ok_or(Error::Overflow("3^k"))?;
            let target = b.smul_unchecked(pk, dst.base());
            let Some(f_star) = b.divide(3 * pk, &target)? else {
                return Ok(None);
            };
            let torsion = b.torsion_subgroup(3 * pk as u64);
            let shifted = b.sub_unchecked(dst.base(), &b.smul_unchecked(3, &f_star));
            let base = torsion.coordinates(&shifted).expect("b − 3f* is 3^{k+1}-torsion");
            PointedAbelian::from_parts(torsion.shape, base)?
        }
    };
    let shape = first.shape().direct_sum(&hom_rest);
    let base = first.base().concat(&hom_rest.zero());
    Ok(Some(PointedAbelian::from_parts(shape, base)?))
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AutReport {
    pub order: u64,
    pub ann3_order: u64,
    pub aut_a_order: u64,
    pub eta_kernel_size: u64,
    pub eta_image_size: u64,
    /// Kernel of `f ↦ f1` is exactly the translations by `Ann_3(A)`.
    pub exact_at_translations: bool,
    /// Image of `f ↦ f1` is exactly the kernel of `η`.
    pub exact_at_aut_a: bool,
}

impl AutReport {
    pub fn is_exact(&self) -> bool {
        self.exact_at_translations && self.exact_at_aut_a && self.order == self.ann3_order * self.eta_kernel_size
    }
}

/// Brute-force automorphism group of a finite `_cA` together with the
/// sequence `0 → Ann_3(A) → Aut(_cA) → Aut(A) → A/3A`, where the last map is
/// `η(g) = c − g(c) mod 3A`.
pub fn automorphism_report(p: &PointedAbelian) -> Result<AutReport> {
    let a = p.shape();
    let c = p.base();
    let mut automorphisms = Vec::new();
    for f in enumerate_morphisms(p, p)? {
        if f.is_bijective()? {
            automorphisms.push(f);
        }
    }
    let ann3 = a.ann3()?;
    let aut_a = enumerate_isos(a, a)?;

    let identity = GroupHom::identity(a);
    let kernel: BTreeSet<GroupElement> =
        automorphisms.iter().filter(|f| f.linear == identity).map(|f| f.constant.clone()).collect();
    let exact_at_translations = kernel == ann3.iter().cloned().collect();

    let alpha_image: BTreeSet<Vec<GroupElement>> =
        automorphisms.iter().map(|f| f.linear.images().to_vec()).collect();
    let eta = |g: &GroupHom| a.sub_unchecked(c, &g.apply_unchecked(c));
    let mut eta_kernel = BTreeSet::new();
    let mut eta_image = BTreeSet::new();
    for g in &aut_a {
        let d = eta(g);
        if a.member_of_3a(&d)? {
            eta_kernel.insert(g.images().to_vec());
        }
        eta_image.insert(a.mod3_class(&d));
    }
    Ok(AutReport {
        order: automorphisms.len() as u64,
        ann3_order: ann3.len() as u64,
        aut_a_order: aut_a.len() as u64,
        eta_kernel_size: eta_kernel.len() as u64,
        eta_image_size: eta_image.len() as u64,
        exact_at_translations,
        exact_at_aut_a: alpha_image == eta_kernel,
    })
}
