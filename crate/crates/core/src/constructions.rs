//! Products, coproducts, congruences and tensor products of elliptic groups.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{enumerate_homs, GroupElement, GroupHom, GroupShape, Subgroup};
use crate::classify::{canonical_form, CanonicalForm};
use crate::elliptic::{CayleyTable, DerivedGroup, PointedAbelian};
use crate::error::{Error, Result};
use crate::morphisms::{enumerate_morphisms, AffineMorphism};

/// `_aA × _bB = _{(a,b)}(A ⊕ B)`.
pub fn product(p: &PointedAbelian, q: &PointedAbelian) -> PointedAbelian {
    let shape = p.shape().direct_sum(q.shape());
    let base = p.base().concat(q.base());
    PointedAbelian::from_parts(shape, base).expect("concatenation is reduced")
}

/// Which explicit construction produced a coproduct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoproductRecipe {
    /// `_0A ⊔ _0B = _0(A ⊕ B ⊕ Z/3)`
    FlexFlex,
    /// `(_1Z × _0B) ⊔ _aA = _{(0,0,a)}(Z ⊕ B ⊕ A)`
    WithZ,
    /// `(_1Z/3^k × _0B) ⊔ _0A = _0(Z/3^{k+1} ⊕ B ⊕ A)`
    TorsionFlex,
    /// `(_1Z/3^k × _0A) ⊔ (_1Z/3^l × _0B) = _{(0,1,0,0)}(Z/3^{k+1} ⊕ Z/3^l ⊕ A ⊕ B)`, `k ≥ l`
    TorsionTorsion,
}

/// `left ⊔ right` with its injections. `left` and `right` are the canonical
/// representatives of the inputs; `swapped` records that the construction
/// was run with the arguments exchanged.
#[derive(Clone, Debug)]
pub struct CoproductDiagram {
    pub object: PointedAbelian,
    pub left: PointedAbelian,
    pub right: PointedAbelian,
    pub inj_left: AffineMorphism,
    pub inj_right: AffineMorphism,
    pub recipe: CoproductRecipe,
    pub swapped: bool,
}

fn unit(len: usize, j: usize, value: i64) -> GroupElement {
    let mut v = vec![0; len];
    v[j] = value;
    GroupElement::from_raw(v)
}

/// Images of the generators of a block of `len` coordinates placed at
/// `offset` inside a sum with `total` coordinates.
fn block(len: usize, offset: usize, total: usize) -> Vec<GroupElement> {
    (0..len).map(|j| unit(total, offset + j, 1)).collect()
}

/// Coproduct of two finitely generated elliptic groups given by canonical
/// forms. Dispatch: a `_1Z` on either side uses [`CoproductRecipe::WithZ`];
/// two flex sides use `FlexFlex`; torsion against flex uses `TorsionFlex`;
/// two torsion sides use `TorsionTorsion` with the larger exponent first.
pub fn coproduct(p: &CanonicalForm, q: &CanonicalForm) -> CoproductDiagram {
    use CanonicalForm::*;
    let swap = match (p, q) {
        (OneZ { .. }, _) => false,
        (_, OneZ { .. }) => true,
        (Flex { .. }, OneTorsion { .. }) => true,
        (OneTorsion { k, .. }, OneTorsion { k: l, .. }) => k < l,
        _ => false,
    };
    if swap {
        let d = coproduct_ordered(q, p);
        CoproductDiagram {
            left: d.right,
            right: d.left,
            inj_left: d.inj_right,
            inj_right: d.inj_left,
            swapped: true,
            ..d
        }
    } else {
        coproduct_ordered(p, q)
    }
}

/// Coproduct of arbitrary finitely generated pointed groups, through their
/// canonical forms.
pub fn coproduct_of(p: &PointedAbelian, q: &PointedAbelian) -> CoproductDiagram {
    coproduct(&canonical_form(p), &canonical_form(q))
}

fn coproduct_ordered(p: &CanonicalForm, q: &CanonicalForm) -> CoproductDiagram {
    use CanonicalForm::*;
    let left = p.to_pointed();
    let right = q.to_pointed();
    let (ll, rl) = (left.shape().len(), right.shape().len());
    let build = |object: PointedAbelian,
                 ci: Vec<i64>,
                 ii: Vec<GroupElement>,
                 cj: Vec<i64>,
                 ij: Vec<GroupElement>,
                 recipe| {
        let inj_left = AffineMorphism::new(&left, &object, &ci, ii).expect("left injection is a morphism");
        let inj_right = AffineMorphism::new(&right, &object, &cj, ij).expect("right injection is a morphism");
        CoproductDiagram {
            object,
            left: left.clone(),
            right: right.clone(),
            inj_left,
            inj_right,
            recipe,
            swapped: false,
        }
    };
    match (p, q) {
        (Flex { shape: a }, Flex { shape: b }) => {
            let shape = a.direct_sum(b).direct_sum(&GroupShape::cyclic(3));
            let total = shape.len();
            let object = PointedAbelian::flex(shape);
            let ci = vec![0; total];
            let ii = block(ll, 0, total);
            let mut cj = vec![0; total];
            cj[total - 1] = 1;
            let ij = block(rl, ll, total);
            build(object, ci, ii, cj, ij, CoproductRecipe::FlexFlex)
        }
        (OneZ { shape: b }, _) => {
            // object Z ⊕ B ⊕ A with base (0, 0, a)
            let shape = GroupShape::cyclic(0).direct_sum(b).direct_sum(right.shape());
            let total = shape.len();
            let mut base = vec![0; total];
            base[ll..].copy_from_slice(right.base().coords());
            let object = PointedAbelian::new(shape, &base).expect("base fits");
            let mut ci = vec![0; total];
            ci[0] = 1;
            let mut first = base.clone();
            first[0] = -3;
            let mut ii = vec![GroupElement::from_raw(first)];
            ii.extend(block(ll - 1, 1, total));
            let ij = block(rl, ll, total);
            build(object, ci, ii, vec![0; total], ij, CoproductRecipe::WithZ)
        }
        (OneTorsion { k, shape: b }, Flex { shape: a }) => {
            let shape = GroupShape::cyclic(3u64.pow(k + 1)).direct_sum(b).direct_sum(a);
            let total = shape.len();
            let object = PointedAbelian::flex(shape);
            let mut ci = vec![0; total];
            ci[0] = 1;
            let mut ii = vec![unit(total, 0, -3)];
            ii.extend(block(ll - 1, 1, total));
            let ij = block(rl, ll, total);
            build(object, ci, ii, vec![0; total], ij, CoproductRecipe::TorsionFlex)
        }
        (OneTorsion { k, shape: a }, OneTorsion { k: l, shape: b }) => {
            let shape = GroupShape::new(vec![3u64.pow(k + 1), 3u64.pow(*l)]).direct_sum(a).direct_sum(b);
            let total = shape.len();
            let object = PointedAbelian::new(shape, &unit(total, 1, 1).into_coords()).expect("base fits");
            let mut ci = vec![0; total];
            ci[0] = 1;
            let mut first = vec![0; total];
            first[0] = -3;
            first[1] = 1;
            let mut ii = vec![GroupElement::from_raw(first)];
            ii.extend(block(a.len(), 2, total));
            let mut ij = vec![unit(total, 1, 1)];
            ij.extend(block(b.len(), 2 + a.len(), total));
            build(object, ci, ii, vec![0; total], ij, CoproductRecipe::TorsionTorsion)
        }
        _ => unreachable!("coproduct arguments are ordered by the dispatcher"),
    }
}

/// The mediating morphism `h` with `h ∘ i = f` and `h ∘ j = g`, written down
/// from the explicit formula of the recipe.
pub fn copair(d: &CoproductDiagram, f: &AffineMorphism, g: &AffineMorphism) -> Result<AffineMorphism> {
    if f.target() != g.target() {
        return Err(Error::ShapeMismatch("f and g must share a target".into()));
    }
    if f.source() != &d.left || g.source() != &d.right {
        return Err(Error::ShapeMismatch("f and g must start at the coproduct factors".into()));
    }
    let (f, g) = if d.swapped { (g, f) } else { (f, g) };
    let e = f.target();
    let c = e.shape();
    let f0 = f.constant();
    let g0 = g.constant();
    let f1 = f.linear().images();
    let g1 = g.linear().images();
    let (constant, images): (GroupElement, Vec<GroupElement>) = match d.recipe {
        // h(x, y, [n]) = f(x) − n f(0) + g(y) + (n − 1) g(0)
        CoproductRecipe::FlexFlex => {
            let mut images = f1.to_vec();
            images.extend_from_slice(g1);
            images.push(c.sub_unchecked(g0, f0));
            (f0.clone(), images)
        }
        // h(n, b, x) = g(0) + n(f(0,0) − g(0)) + g(x) − g(0) + f(0,b) − f(0,0)
        CoproductRecipe::WithZ => {
            let mut images = vec![c.sub_unchecked(f0, g0)];
            images.extend_from_slice(&f1[1..]);
            images.extend_from_slice(g1);
            (g0.clone(), images)
        }
        // h(N, b, x) = r + N(p − r) + β(b) + α(x), f = p + nq + β, g = r + α
        CoproductRecipe::TorsionFlex => {
            let mut images = vec![c.sub_unchecked(f0, g0)];
            images.extend_from_slice(&f1[1..]);
            images.extend_from_slice(g1);
            (g0.clone(), images)
        }
        // h(N, M, a, b) = r + N(p − r) + M s + α(a) + β(b), with
        // f = p + nq + α and g = r + ms + β
        CoproductRecipe::TorsionTorsion => {
            let mut images = vec![c.sub_unchecked(f0, g0), g1[0].clone()];
            images.extend_from_slice(&f1[1..]);
            images.extend_from_slice(&g1[1..]);
            (g0.clone(), images)
        }
    };
    let linear = GroupHom::new(d.object.shape().clone(), c.clone(), images)?;
    AffineMorphism::from_parts(&d.object, e, constant, linear)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalReport {
    pub mor_left: usize,
    pub mor_right: usize,
    pub mor_object: usize,
    /// Pairs `(f, g)` with exactly one mediating `h`.
    pub unique_pairs: usize,
    /// Pairs for which [`copair`] returned that unique `h`.
    pub copair_matches: usize,
}

impl UniversalReport {
    pub fn holds(&self) -> bool {
        let pairs = self.mor_left * self.mor_right;
        self.unique_pairs == pairs && self.copair_matches == pairs && self.mor_object == pairs
    }
}

/// Checks the universal property against a finite test object `E`: every
/// pair `(f, g)` must have exactly one `h` with `h ∘ i = f`, `h ∘ j = g`.
pub fn verify_universal(d: &CoproductDiagram, e: &PointedAbelian) -> Result<UniversalReport> {
    let left = enumerate_morphisms(&d.left, e)?;
    let right = enumerate_morphisms(&d.right, e)?;
    let mediators = enumerate_morphisms(&d.object, e)?;
    let mut restrictions: HashMap<(AffineMorphism, AffineMorphism), Vec<usize>> = HashMap::new();
    for (idx, h) in mediators.iter().enumerate() {
        let key = (h.compose(&d.inj_left)?, h.compose(&d.inj_right)?);
        restrictions.entry(key).or_default().push(idx);
    }
    let (unique_pairs, copair_matches) = left
        .par_iter()
        .map(|f| {
            let mut unique = 0;
            let mut matches = 0;
            for g in &right {
                if let Some(hs) = restrictions.get(&(f.clone(), g.clone())) {
                    if hs.len() == 1 {
                        unique += 1;
                        if copair(d, f, g).ok().as_ref() == Some(&mediators[hs[0]]) {
                            matches += 1;
                        }
                    }
                }
            }
            (unique, matches)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(UniversalReport {
        mor_left: left.len(),
        mor_right: right.len(),
        mor_object: mediators.len(),
        unique_pairs,
        copair_matches,
    })
}

/// A partition of a finite elliptic group compatible with `∗`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    /// Class index of each element; classes are numbered by smallest member.
    class_of: Vec<usize>,
}

impl Congruence {
    fn from_labels(labels: &[usize]) -> Self {
        let mut renumber = HashMap::new();
        let class_of = labels
            .iter()
            .map(|l| {
                let next = renumber.len();
                *renumber.entry(*l).or_insert(next)
            })
            .collect();
        Congruence { class_of }
    }

    pub fn class_of(&self) -> &[usize] {
        &self.class_of
    }

    pub fn class_count(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count()];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    /// `x ∼ y` and `u ∼ v` imply `x ∗ u ∼ y ∗ v`.
    pub fn is_compatible(&self, s: &CayleyTable) -> bool {
        let n = s.size();
        let cls = &self.class_of;
        (0..n).all(|x| {
            (0..n).all(|y| cls[x] != cls[y] || (0..n).all(|u| cls[s.op(x, u)] == cls[s.op(y, u)]))
        })
    }
}

/// Whether `k` (element indices) is a subgroup of `(S, +_c)`.
pub fn is_derived_subgroup(s: &CayleyTable, c: usize, k: &[usize]) -> Result<bool> {
    let g = DerivedGroup::new(s, c)?;
    let set: BTreeSet<usize> = k.iter().copied().collect();
    Ok(set.contains(&c)
        && set.iter().all(|&x| set.contains(&g.neg(x)) && set.iter().all(|&y| set.contains(&g.add(x, y)))))
}

/// The congruence `x ∼ y ⇔ x −_c y ∈ K` of a subgroup `K` of `(S, +_c)`.
pub fn congruence_from_subgroup(s: &CayleyTable, c: usize, k: &[usize]) -> Result<Congruence> {
    if !is_derived_subgroup(s, c, k)? {
        return Err(Error::NotASubgroup(format!("{k:?} is not a subgroup of (S, +_{c})")));
    }
    let g = DerivedGroup::new(s, c)?;
    let labels: Vec<usize> =
        (0..s.size()).map(|x| k.iter().map(|&t| g.add(x, t)).min().expect("K contains c")).collect();
    Ok(Congruence::from_labels(&labels))
}

/// `S/∼`, classes ordered by smallest member and labelled by their members.
pub fn quotient(s: &CayleyTable, cong: &Congruence) -> Result<CayleyTable> {
    if cong.class_of.len() != s.size() || !cong.is_compatible(s) {
        return Err(Error::InvalidArgument("relation is not a congruence of this table".into()));
    }
    let classes = cong.classes();
    let labels = classes
        .iter()
        .map(|cl| {
            let names: Vec<&str> = cl.iter().map(|&x| s.labels()[x].as_str()).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    let table = classes
        .iter()
        .map(|a| classes.iter().map(|b| cong.class_of[s.op(a[0], b[0])]).collect())
        .collect();
    CayleyTable::new(labels, table)
}

/// Smallest congruence containing the given pairs, by saturation.
fn generate_congruence(s: &CayleyTable, pairs: &[(usize, usize)]) -> Congruence {
    let n = s.size();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut changed = true;
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra.max(rb)] = ra.min(rb);
    }
    while changed {
        changed = false;
        for x in 0..n {
            let rx = find(&mut parent, x);
            if rx == x {
                continue;
            }
            for u in 0..n {
                let (a, b) = (s.op(x, u), s.op(rx, u));
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                    changed = true;
                }
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    Congruence::from_labels(&labels)
}

/// All congruences of a finite table, found as joins of principal
/// congruences without reference to any group structure.
pub fn enumerate_congruences(s: &CayleyTable) -> Vec<Congruence> {
    let n = s.size();
    let principal: BTreeSet<Congruence> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).map(|p| generate_congruence(s, &[p])).collect();
    let to_pairs = |c: &Congruence| -> Vec<(usize, usize)> {
        (0..n).filter_map(|x| {
            let rep = c.class_of.iter().position(|&k| k == c.class_of[x]).expect("class member");
            (rep != x).then_some((rep, x))
        })
        .collect()
    };
    let mut all: BTreeSet<Congruence> = BTreeSet::new();
    all.insert(generate_congruence(s, &[]));
    let mut frontier: Vec<Congruence> = all.iter().cloned().collect();
    while let Some(c) = frontier.pop() {
        let base = to_pairs(&c);
        for p in &principal {
            let mut pairs = base.clone();
            pairs.extend(to_pairs(p));
            let joined = generate_congruence(s, &pairs);
            if all.insert(joined.clone()) {
                frontier.push(joined);
            }
        }
    }
    all.into_iter().collect()
}

/// All subgroups of `(S, +_c)` as sorted index sets.
pub fn enumerate_subgroups(s: &CayleyTable, c: usize) -> Result<Vec<Vec<usize>>> {
    let g = DerivedGroup::new(s, c)?;
    let close = |gens: &BTreeSet<usize>| -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([c]);
        loop {
            let before = set.len();
            let snapshot: Vec<usize> = set.iter().copied().collect();
            for &x in &snapshot {
                for &y in gens {
                    set.insert(g.add(x, y));
                }
            }
            if set.len() == before {
                return set;
            }
        }
    };
    let mut all: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let trivial = close(&BTreeSet::new());
    all.insert(trivial.clone());
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for x in 0..s.size() {
            if h.contains(&x) {
                continue;
            }
            let mut gens = h.clone();
            gens.insert(x);
            let next = close(&gens);
            if all.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    Ok(all.into_iter().map(|h| h.into_iter().collect()).collect())
}

/// Whether the coset `c + H` is closed under `x ∗ y = a − x − y`, decided by
/// `a − 3c ∈ H`.
pub fn coset_is_subgroup(p: &PointedAbelian, c: &GroupElement, h: &Subgroup) -> Result<bool> {
    let a = p.shape();
    if h.shape() != a {
        return Err(Error::ShapeMismatch("subgroup of a different shape".into()));
    }
    let c = a.reduce(c.coords())?;
    Ok(h.contains(&a.sub_unchecked(p.base(), &a.smul_unchecked(3, &c))))
}

/// Closed forms `_1Z ⊗ S ≅ S` and `_0A ⊗ _0B ≅ _0(A/3A ⊕ B/3B ⊕ A ⊗ B)`.
pub fn tensor_closed_form(p: &PointedAbelian, q: &PointedAbelian) -> Result<PointedAbelian> {
    let is_free_one = |f: &CanonicalForm| matches!(f, CanonicalForm::OneZ { shape } if shape.is_empty());
    let (fp, fq) = (canonical_form(p), canonical_form(q));
    if is_free_one(&fp) {
        return Ok(q.clone());
    }
    if is_free_one(&fq) {
        return Ok(p.clone());
    }
    match (&fp, &fq) {
        (CanonicalForm::Flex { shape: a }, CanonicalForm::Flex { shape: b }) => {
            let shape = a.mod3_quotient().direct_sum(&b.mod3_quotient()).direct_sum(&a.tensor(b));
            Ok(PointedAbelian::flex(shape))
        }
        _ => Err(Error::NoClosedForm(format!("tensor product of {fp} and {fq}"))),
    }
}

/// Number of maps `R × S → T` that are morphisms in each argument
/// separately. Such maps are `k + α(x) + β(y) + γ(x, y)` with `α`, `β`
/// homomorphisms and `γ` bilinear; each candidate is kept when every section
/// satisfies the affine compatibility condition.
pub fn bimorphism_count(r: &PointedAbelian, s: &PointedAbelian, t: &PointedAbelian) -> Result<u64> {
    let (nr, ns) = (r.order(), s.order());
    match (nr, ns, t.order()) {
        (Some(a), Some(b), Some(_)) if a * b <= 81 => {}
        (Some(_), Some(_), Some(_)) => return Err(Error::SizeLimit("|R|·|S| must be at most 81".into())),
        _ => return Err(Error::InfiniteShape("bimorphisms need finite groups".into())),
    }
    let c = t.shape();
    let rs = r.elements()?;
    let ss = s.elements()?;
    let alphas = enumerate_homs(r.shape(), c)?;
    let betas = enumerate_homs(s.shape(), c)?;
    let gammas = bilinear_maps(r.shape(), s.shape(), c)?;
    let ks = c.elements()?;
    let three = |x: &GroupElement| c.smul_unchecked(3, x);
    let count = gammas
        .par_iter()
        .map(|gamma| {
            let mut count = 0u64;
            for alpha in &alphas {
                for beta in &betas {
                    for k in &ks {
                        // section x ↦ f(x, y): constant k + β(y), linear α + γ(·, y)
                        let rows_ok = ss.iter().all(|y| {
                            let constant = c.add_unchecked(k, &beta.apply_unchecked(y));
                            let lin = c.add_unchecked(&alpha.apply_unchecked(r.base()), &gamma(r.base(), y));
                            &c.add_unchecked(&three(&constant), &lin) == t.base()
                        });
                        let cols_ok = rows_ok
                            && rs.iter().all(|x| {
                                let constant = c.add_unchecked(k, &alpha.apply_unchecked(x));
                                let lin = c.add_unchecked(&beta.apply_unchecked(s.base()), &gamma(x, s.base()));
                                &c.add_unchecked(&three(&constant), &lin) == t.base()
                            });
                        if cols_ok {
                            count += 1;
                        }
                    }
                }
            }
            count
        })
        .sum();
    Ok(count)
}

type Bilinear<'a> = Box<dyn Fn(&GroupElement, &GroupElement) -> GroupElement + Send + Sync + 'a>;

/// Every bilinear `γ : A × B → C`, given by `γ(e_i, e'_j)` killed by
/// `gcd(m_i, n_j)`.
fn bilinear_maps<'a>(a: &'a GroupShape, b: &'a GroupShape, c: &'a GroupShape) -> Result<Vec<Bilinear<'a>>> {
    let pairs: Vec<(usize, usize)> = (0..a.len()).flat_map(|i| (0..b.len()).map(move |j| (i, j))).collect();
    let moduli: Vec<u64> = pairs
        .iter()
        .map(|&(i, j)| crate::arith::gcd_u64(a.moduli()[i], b.moduli()[j]))
        .collect();
    let domain = GroupShape::new(moduli);
    let homs = enumerate_homs(&domain, c)?;
    Ok(homs
        .into_iter()
        .map(|h| {
            let pairs = pairs.clone();
            Box::new(move |x: &GroupElement, y: &GroupElement| {
                let raw: Vec<i64> = pairs.iter().map(|&(i, j)| x.coords()[i] * y.coords()[j]).collect();
                h.apply_unchecked(&GroupElement::from_raw(raw))
            }) as Bilinear<'a>
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphisms::is_isomorphic;

    fn pa(s: &str) -> PointedAbelian {
        s.parse().unwrap()
    }

    fn el(c: &[i64]) -> GroupElement {
        GroupElement::from_raw(c.to_vec())
    }

    #[test]
    fn product_examples() {
        assert_eq!(product(&pa("0:1"), &pa("3:0")), pa("0,3:1,0"));
        assert_eq!(product(&pa("9:2"), &PointedAbelian::terminal()), pa("9:2"));
        let (p, q) = (pa("3:1"), pa("2:1"));
        let pq = product(&p, &q).to_table().unwrap();
        let (tp, tq) = (p.to_table().unwrap(), q.to_table().unwrap());
        for x in 0..6 {
            for y in 0..6 {
                let (x1, x2, y1, y2) = (x / 2, x % 2, y / 2, y % 2);
                assert_eq!(pq.op(x, y), tp.op(x1, y1) * 2 + tq.op(x2, y2));
            }
        }
    }

    #[test]
    fn coproduct_examples() {
        let d = coproduct_of(&pa("3:0"), &pa("3:0"));
        assert_eq!(d.recipe, CoproductRecipe::FlexFlex);
        assert_eq!(d.object, pa("3,3,3:0,0,0"));
        assert_eq!(d.object.order(), Some(27));

        let d = coproduct_of(&pa("3:1"), &pa("3:0"));
        assert_eq!(d.recipe, CoproductRecipe::TorsionFlex);
        assert_eq!(d.object, pa("9,3:0,0"));

        let d = coproduct_of(&pa("9:1"), &pa("3:1"));
        assert_eq!(d.recipe, CoproductRecipe::TorsionTorsion);
        assert_eq!(d.object, pa("27,3:0,1"));
        assert!(!d.swapped);

        let d = coproduct_of(&pa("3:1"), &pa("9:1"));
        assert!(d.swapped);
        assert_eq!(d.inj_left.source(), &pa("3:1"));
        assert_eq!(d.inj_right.source(), &pa("9:1"));

        let d = coproduct_of(&pa("3:0"), &pa("0:1"));
        assert_eq!(d.recipe, CoproductRecipe::WithZ);
        assert!(d.swapped);
        assert_eq!(d.object, pa("0,3:0,0"));
    }

    #[test]
    fn flex_flex_mediator_formula() {
        let d = coproduct_of(&pa("3:0"), &pa("3:0"));
        let e = pa("3:0");
        let f = &enumerate_morphisms(&d.left, &e).unwrap()[4];
        let g = &enumerate_morphisms(&d.right, &e).unwrap()[7];
        let h = copair(&d, f, g).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                for n in 0..3 {
                    let fx = f.apply(&el(&[x])).unwrap().coords()[0];
                    let gy = g.apply(&el(&[y])).unwrap().coords()[0];
                    let f0 = f.constant().coords()[0];
                    let g0 = g.constant().coords()[0];
                    let expected = (fx - n * f0 + gy + (n - 1) * g0).rem_euclid(3);
                    assert_eq!(h.apply(&el(&[x, y, n])).unwrap(), el(&[expected]));
                }
            }
        }
    }

    #[test]
    fn copair_recovers_random_pairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let e = pa("9:0");
        for (l, r) in [("9:3", "3:0"), ("3:1", "9:0"), ("9:1", "3:1")] {
            let d = coproduct_of(&pa(l), &pa(r));
            let fs = enumerate_morphisms(&d.left, &e).unwrap();
            let gs = enumerate_morphisms(&d.right, &e).unwrap();
            for _ in 0..20 {
                let f = &fs[rng.gen_range(0..fs.len())];
                let g = &gs[rng.gen_range(0..gs.len())];
                let h = copair(&d, f, g).unwrap();
                for x in d.left.elements().unwrap() {
                    assert_eq!(h.apply(&d.inj_left.apply(&x).unwrap()).unwrap(), f.apply(&x).unwrap());
                }
                for y in d.right.elements().unwrap() {
                    assert_eq!(h.apply(&d.inj_right.apply(&y).unwrap()).unwrap(), g.apply(&y).unwrap());
                }
            }
        }
    }

    #[test]
    fn universal_property_counts() {
        let d = coproduct_of(&pa("3:0"), &pa("3:0"));
        let r = verify_universal(&d, &pa("3:0")).unwrap();
        assert_eq!((r.mor_left, r.mor_right, r.mor_object), (9, 9, 81));
        assert!(r.holds());
        let r = verify_universal(&d, &pa("3:1")).unwrap();
        assert_eq!(r.mor_object, 0);
        assert!(r.holds());
        let r = verify_universal(&d, &PointedAbelian::terminal()).unwrap();
        assert_eq!(r.mor_object, 1);
        assert!(r.holds());
    }

    #[test]
    fn every_recipe_is_universal() {
        let battery = [":", "2:0", "3:0", "3:1", "9:1", "3,3:1,0"];
        let inputs = [
            ("3:0", "2:0"),
            ("0:1", "3:1"),
            ("3:1", "0:2"),
            ("3:1", "3,2:0,1"),
            ("9:4", "3:2"),
            ("3,3:1,1", "9:0"),
        ];
        for (l, r) in inputs {
            let d = coproduct_of(&pa(l), &pa(r));
            for e in battery {
                let report = verify_universal(&d, &pa(e)).unwrap();
                assert!(report.holds(), "{l} ⊔ {r} against {e}: {report:?}");
            }
        }
    }

    #[test]
    fn subgroup_congruence_and_quotient() {
        let s = pa("3,3:0,0").to_table().unwrap();
        // index of (0,1) is 1, (0,2) is 2
        let cong = congruence_from_subgroup(&s, 0, &[0, 1, 2]).unwrap();
        assert_eq!(cong.class_count(), 3);
        let q = quotient(&s, &cong).unwrap();
        assert_eq!(q.size(), 3);
        assert!(q.verify_axioms().all_pass());
        let whole: Vec<usize> = (0..9).collect();
        let q = quotient(&s, &congruence_from_subgroup(&s, 0, &whole).unwrap()).unwrap();
        assert_eq!(q.size(), 1);
        assert!(matches!(congruence_from_subgroup(&s, 0, &[0, 1]), Err(Error::NotASubgroup(_))));
    }

    #[test]
    fn canonical_surjection_is_a_morphism() {
        let s = pa("9,2:1,1").to_table().unwrap();
        for k in enumerate_subgroups(&s, 3).unwrap() {
            let cong = congruence_from_subgroup(&s, 3, &k).unwrap();
            let q = quotient(&s, &cong).unwrap();
            assert!(q.verify_axioms().all_pass());
            let pi = cong.class_of();
            for x in 0..s.size() {
                for y in 0..s.size() {
                    assert_eq!(pi[s.op(x, y)], q.op(pi[x], pi[y]));
                }
            }
        }
    }

    #[test]
    fn congruences_match_subgroups() {
        let s = pa("3,3:0,0").to_table().unwrap();
        assert_eq!(enumerate_congruences(&s).len(), 6);
        assert_eq!(enumerate_subgroups(&s, 0).unwrap().len(), 6);
        for p in ["2:0", "4:1", "6:1", "2,2:1,0", "8:3", "12:5", "3,3:1,0", "2,6:1,1", "9:1"] {
            let t = pa(p).to_table().unwrap();
            let congs = enumerate_congruences(&t);
            for c in 0..t.size() {
                assert_eq!(congs.len(), enumerate_subgroups(&t, c).unwrap().len(), "{p} at {c}");
            }
            for cong in &congs {
                assert!(cong.is_compatible(&t));
            }
        }
    }

    #[test]
    fn coset_criterion_examples() {
        let z = pa("0:0");
        let three_z = Subgroup::new(z.shape(), vec![el(&[3])]).unwrap();
        let two_z = Subgroup::new(z.shape(), vec![el(&[2])]).unwrap();
        for c in 0..3 {
            assert!(coset_is_subgroup(&z, &el(&[c]), &three_z).unwrap());
        }
        assert!(!coset_is_subgroup(&z, &el(&[1]), &two_z).unwrap());
        let p = pa("9,2:4,1");
        let whole = Subgroup::whole(p.shape());
        assert!(coset_is_subgroup(&p, &el(&[5, 0]), &whole).unwrap());
    }

    #[test]
    fn coset_criterion_matches_closure() {
        for p in ["9:4", "3,3:1,0", "6:3", "12:1"] {
            let p = pa(p);
            let a = p.shape();
            let elements = a.elements().unwrap();
            for g in &elements {
                let h = Subgroup::new(a, vec![g.clone()]).unwrap();
                let members = h.elements().unwrap();
                for c in &elements {
                    let coset: BTreeSet<_> = members.iter().map(|m| a.add(c, m).unwrap()).collect();
                    let closed = coset.iter().all(|x| coset.iter().all(|y| coset.contains(&p.checked_star(x, y).unwrap())));
                    assert_eq!(coset_is_subgroup(&p, c, &h).unwrap(), closed);
                }
            }
        }
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(tensor_closed_form(&pa("0:1"), &pa("3:0")).unwrap(), pa("3:0"));
        assert_eq!(tensor_closed_form(&pa("3:0"), &pa("3:0")).unwrap(), pa("3,3,3:0,0,0"));
        assert!(is_isomorphic(&tensor_closed_form(&pa("2:0"), &pa("2:0")).unwrap(), &pa("2:0")));
        assert!(matches!(tensor_closed_form(&pa("3:1"), &pa("3:0")), Err(Error::NoClosedForm(_))));
    }

    /// Oracle: every map R × S → T, kept when all sections preserve ∗.
    fn brute_bimorphisms(r: &PointedAbelian, s: &PointedAbelian, t: &PointedAbelian) -> u64 {
        let (rs, ss, ts) = (r.elements().unwrap(), s.elements().unwrap(), t.elements().unwrap());
        let cells = rs.len() * ss.len();
        let mut count = 0;
        for code in 0..ts.len().pow(cells as u32) {
            let mut c = code;
            let f: Vec<&GroupElement> = (0..cells)
                .map(|_| {
                    let v = &ts[c % ts.len()];
                    c /= ts.len();
                    v
                })
                .collect();
            let at = |x: &GroupElement, y: &GroupElement| f[r.shape().index_of(x) * ss.len() + s.shape().index_of(y)];
            let ok = ss.iter().all(|y| {
                rs.iter().all(|x1| rs.iter().all(|x2| at(&r.star_of(x1, x2), y) == &t.star_of(at(x1, y), at(x2, y))))
            }) && rs.iter().all(|x| {
                ss.iter().all(|y1| ss.iter().all(|y2| at(x, &s.star_of(y1, y2)) == &t.star_of(at(x, y1), at(x, y2))))
            });
            if ok {
                count += 1;
            }
        }
        count
    }

    trait StarOf {
        fn star_of(&self, x: &GroupElement, y: &GroupElement) -> GroupElement;
    }

    impl StarOf for PointedAbelian {
        fn star_of(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
            self.checked_star(x, y).unwrap()
        }
    }

    #[test]
    fn bimorphism_counts_match_brute_force_and_adjunction() {
        for (r, s, t) in [("3:0", "3:0", "3:0"), ("2:0", "2:0", "6:0"), ("3:1", "2:0", "3:0"), ("2:1", "3:0", "6:3")] {
            let (r, s, t) = (pa(r), pa(s), pa(t));
            let count = bimorphism_count(&r, &s, &t).unwrap();
            assert_eq!(count, brute_bimorphisms(&r, &s, &t), "{r} {s} {t}");
            if let Ok(tensor) = tensor_closed_form(&r, &s) {
                assert_eq!(count, enumerate_morphisms(&tensor, &t).unwrap().len() as u64);
            }
        }
        assert_eq!(bimorphism_count(&pa("3:0"), &pa("3:0"), &pa("3:0")).unwrap(), 81);
        assert_eq!(bimorphism_count(&pa("2:0"), &pa("2:0"), &pa("6:0")).unwrap(), 6);
        assert_eq!(bimorphism_count(&pa("9:1"), &pa("3:0"), &PointedAbelian::terminal()).unwrap(), 1);
        assert!(matches!(
            bimorphism_count(&pa("27:0"), &pa("9:0"), &pa("3:0")),
            Err(Error::SizeLimit(_))
        ));
    }
}
