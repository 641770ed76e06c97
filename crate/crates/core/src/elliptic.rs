//! Elliptic groups: the pointed-abelian form `_aA`, explicit Cayley tables,
//! axiom verification, derived groups `(S, +_c)` and recovery of `_cA` from a
//! table.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{GroupElement, GroupShape};
use crate::arith;
use crate::error::{Error, Result};

/// Anything with an elliptic operation on some element type.
pub trait EllipticGroup {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn star(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    fn contains(&self, x: &Self::Elem) -> bool;
}

/// The elliptic group `_aA` on an abelian group `A`, with `x ∗ y = a − x − y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointedAbelian {
    shape: GroupShape,
    base: GroupElement,
}

impl PointedAbelian {
    /// Reduces `base` into `shape`.
    pub fn new(shape: GroupShape, base: &[i64]) -> Result<Self> {
        let base = shape.reduce(base)?;
        Ok(Self { shape, base })
    }

    pub fn from_parts(shape: GroupShape, base: GroupElement) -> Result<Self> {
        Self::new(shape, base.coords())
    }

    /// `_0A`.
    pub fn flex(shape: GroupShape) -> Self {
        let base = shape.zero();
        Self { shape, base }
    }

    /// The one-point elliptic group, terminal in the category.
    pub fn terminal() -> Self {
        Self::flex(GroupShape::trivial())
    }

    pub fn shape(&self) -> &GroupShape {
        &self.shape
    }

    pub fn base(&self) -> &GroupElement {
        &self.base
    }

    pub fn is_finite(&self) -> bool {
        self.shape.is_finite()
    }

    pub fn order(&self) -> Option<u64> {
        self.shape.order()
    }

    /// `"m1,m2:a1,a2"`.
    pub fn descriptor(&self) -> String {
        let base = self.base.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        format!("{}:{}", self.shape.descriptor(), base)
    }

    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        self.shape.elements()
    }

    /// `a − x − y`, validated.
    pub fn checked_star(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        let s = self.shape.add(x, y)?;
        self.shape.sub(&self.base, &s)
    }

    /// `x +_c y = c ∗ (x ∗ y) = x + y − c`.
    pub fn derived_add(&self, c: &GroupElement, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        let s = self.shape.add(x, y)?;
        self.shape.sub(&s, c)
    }

    /// `−_c x = x ∗ (c ∗ c) = 2c − x`.
    pub fn derived_neg(&self, c: &GroupElement, x: &GroupElement) -> Result<GroupElement> {
        let cc = self.shape.add(c, c)?;
        self.shape.sub(&cc, x)
    }

    /// Whether a flex point exists, i.e. `a ∈ 3A`. Works for every shape.
    pub fn has_flex(&self) -> bool {
        self.shape.member_of_3a(&self.base).expect("base lies in shape")
    }

    /// Some flex point (a solution of `3o = a`), if any.
    pub fn some_flex(&self) -> Option<GroupElement> {
        self.shape.divide(3, &self.base).expect("base lies in shape")
    }

    /// All flex points, sorted. They form a coset of `Ann_3(A)`.
    pub fn flex_points(&self) -> Result<Vec<GroupElement>> {
        let ann = self.shape.ann3()?;
        let Some(o) = self.some_flex() else {
            return Ok(Vec::new());
        };
        let mut out: Vec<_> = ann.iter().map(|t| self.shape.add_unchecked(&o, t)).collect();
        out.sort();
        Ok(out)
    }

    /// Cayley table over the lexicographic element order.
    pub fn to_table(&self) -> Result<CayleyTable> {
        let elements = self.elements()?;
        let labels = elements.iter().map(|e| e.to_string()).collect();
        let table = elements
            .iter()
            .map(|x| {
                elements
                    .iter()
                    .map(|y| self.shape.index_of(&self.star(x, y)))
                    .collect()
            })
            .collect();
        Ok(CayleyTable { size: elements.len(), labels, table })
    }
}

impl EllipticGroup for PointedAbelian {
    type Elem = GroupElement;

    fn star(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let s = self.shape.add_unchecked(x, y);
        self.shape.sub_unchecked(&self.base, &s)
    }

    fn contains(&self, x: &GroupElement) -> bool {
        self.shape.contains(x)
    }
}

impl fmt::Display for PointedAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_{}({})", self.base, self.shape)
    }
}

impl FromStr for PointedAbelian {
    type Err = Error;

    /// `"m1,..,mr:a1,..,ar"`; a missing `:part` means base `0`.
    fn from_str(s: &str) -> Result<Self> {
        let (shape, base) = match s.split_once(':') {
            Some((a, b)) => (a.parse::<GroupShape>()?, Some(b.parse::<GroupElement>()?)),
            None => (s.parse::<GroupShape>()?, None),
        };
        match base {
            Some(b) => PointedAbelian::new(shape, b.coords()),
            None => Ok(PointedAbelian::flex(shape)),
        }
    }
}

/// An explicit finite elliptic operation on `{0, .., size-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTable")]
pub struct CayleyTable {
    size: usize,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawTable {
    size: usize,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl TryFrom<RawTable> for CayleyTable {
    type Error = Error;

    fn try_from(raw: RawTable) -> Result<Self> {
        CayleyTable::new(raw.labels, raw.table).and_then(|t| {
            if t.size != raw.size {
                Err(Error::MalformedTable(format!("size {} but {} rows", raw.size, t.size)))
            } else {
                Ok(t)
            }
        })
    }
}

/// Which axiom a [`Violation`] breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    EG1,
    EG2,
    EG3,
}

/// The lexicographically smallest witness of the first failing axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub eg1: bool,
    pub eg2: bool,
    pub eg3: bool,
    pub first_violation: Option<Violation>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.eg1 && self.eg2 && self.eg3
    }
}

impl CayleyTable {
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let size = table.len();
        if labels.len() != size {
            return Err(Error::MalformedTable(format!("{} labels for {size} rows", labels.len())));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != size {
                return Err(Error::MalformedTable(format!("row {i} has {} entries, expected {size}", row.len())));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= size) {
                return Err(Error::MalformedTable(format!("entry {v} in row {i} is out of range")));
            }
        }
        Ok(Self { size, labels, table })
    }

    /// Builds a table from an operation on indices, with labels `0..n`.
    pub fn from_fn(size: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let labels = (0..size).map(|i| i.to_string()).collect();
        let table = (0..size).map(|i| (0..size).map(|j| op(i, j)).collect()).collect();
        Self::new(labels, table)
    }

    /// The empty elliptic group.
    pub fn empty() -> Self {
        Self { size: 0, labels: Vec::new(), table: Vec::new() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }

    #[inline]
    pub fn op(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::MalformedTable(format!("{} labels for {} rows", labels.len(), self.size)));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tables serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Exhaustive check of EG1–EG3. The EG3 scan is sharded over the first
    /// index; `find_map_first` keeps the reported witness the lexicographic
    /// minimum.
    pub fn verify_axioms(&self) -> AxiomReport {
        let n = self.size;
        let t = &self.table;
        let eg1_witness = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| t[i][j] != t[j][i])
            .map(|(i, j)| vec![i, j]);
        let eg2_witness = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| t[i][t[i][j]] != j)
            .map(|(i, j)| vec![i, j]);
        let eg3_witness = (0..n).into_par_iter().find_map_first(|i| {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        if t[i][t[j][t[k][l]]] != t[l][t[j][t[k][i]]] {
                            return Some(vec![i, j, k, l]);
                        }
                    }
                }
            }
            None
        });
        let first_violation = eg1_witness
            .clone()
            .map(|w| Violation { axiom: Axiom::EG1, witness: w })
            .or_else(|| eg2_witness.clone().map(|w| Violation { axiom: Axiom::EG2, witness: w }))
            .or_else(|| eg3_witness.clone().map(|w| Violation { axiom: Axiom::EG3, witness: w }));
        AxiomReport {
            eg1: eg1_witness.is_none(),
            eg2: eg2_witness.is_none(),
            eg3: eg3_witness.is_none(),
            first_violation,
        }
    }

    fn require_axioms(&self) -> Result<()> {
        let report = self.verify_axioms();
        match report.first_violation {
            None => Ok(()),
            Some(v) => Err(Error::AxiomFailure(format!("{:?} fails at {:?}", v.axiom, v.witness))),
        }
    }

    /// True iff distinct rows disagree in every column, i.e. every column is
    /// a permutation.
    pub fn totally_distinct(&self) -> bool {
        let n = self.size;
        (0..n).all(|x| {
            let mut seen = vec![false; n];
            (0..n).all(|a| !std::mem::replace(&mut seen[self.table[a][x]], true))
        })
    }

    /// `{x : x ∗ x = x}`.
    pub fn flex_points(&self) -> Vec<usize> {
        (0..self.size).filter(|&i| self.table[i][i] == i).collect()
    }

    /// The zero-`o` derived group and `c = o ∗ o`, so that the table equals
    /// `_c(S, +_o)`. The axioms are verified first.
    pub fn recover_pointed(&self, o: usize) -> Result<Recovered> {
        if self.size == 0 {
            return Err(Error::EmptyCarrier);
        }
        if o >= self.size {
            return Err(Error::InvalidArgument(format!("index {o} out of range")));
        }
        self.require_axioms()?;
        Ok(Recovered { zero: o, base: self.table[o][o] })
    }

    /// Explicit `_cA` isomorphic to this table: the derived group at `o` is
    /// decomposed into cyclic factors of prime-power order (primes ascending,
    /// exponents descending) and every element is given coordinates.
    pub fn identify(&self, o: usize) -> Result<Identified> {
        let rec = self.recover_pointed(o)?;
        let group = DerivedGroup::new(self, o)?;
        let n = self.size;
        let orders: Vec<u64> = (0..n).map(|x| group.element_order(x)).collect();

        let mut generators: Vec<(usize, u64)> = Vec::new();
        for (p, _) in arith::factorize(n as u64) {
            let part: Vec<usize> = (0..n)
                .filter(|&x| arith::prime_power(orders[x]).map_or(orders[x] == 1, |(q, _)| q == p))
                .collect();
            let exps = p_group_type(&part, &orders, p);
            let mut chosen = Vec::new();
            let span = vec![o];
            if !choose_basis(&group, &part, &orders, p, &exps, &mut chosen, span) {
                return Err(Error::AxiomFailure("derived group has no basis".into()));
            }
            generators.extend(chosen.into_iter().zip(exps.iter().map(|&e| p.pow(e))));
        }

        let shape = GroupShape::new(generators.iter().map(|&(_, m)| m).collect());
        let mut slots: Vec<Option<GroupElement>> = vec![None; n];
        for element in shape.elements()? {
            let mut x = o;
            for (&(g, _), &k) in generators.iter().zip(element.coords()) {
                for _ in 0..k {
                    x = group.add(x, g);
                }
            }
            slots[x] = Some(element);
        }
        let coords: Vec<GroupElement> = slots
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::AxiomFailure("derived group basis does not span".into()))?;
        let pointed = PointedAbelian::from_parts(shape, coords[rec.base].clone())?;
        Ok(Identified { pointed, coords })
    }
}

/// Exponents `λ1 ≥ λ2 ≥ ...` of the `p`-primary part, read off the orders of
/// the torsion subgroups `G[p^j]`.
fn p_group_type(part: &[usize], orders: &[u64], p: u64) -> Vec<u32> {
    let mut counts = vec![1usize];
    let mut j = 1u32;
    while counts.last().copied() != Some(part.len()) {
        let bound = p.pow(j);
        counts.push(part.iter().filter(|&&x| bound.is_multiple_of(orders[x])).count());
        j += 1;
    }
    // number of factors with exponent ≥ j is log_p(|G[p^j]| / |G[p^{j-1}]|)
    let mut at_least: Vec<u32> = Vec::new();
    for w in counts.windows(2) {
        let mut ratio = w[1] / w[0];
        let mut r = 0;
        while ratio > 1 {
            ratio /= p as usize;
            r += 1;
        }
        at_least.push(r);
    }
    let factors = at_least.first().copied().unwrap_or(0);
    (0..factors)
        .map(|i| at_least.iter().filter(|&&c| c > i).count() as u32)
        .collect()
}

fn choose_basis(
    group: &DerivedGroup<'_>,
    part: &[usize],
    orders: &[u64],
    p: u64,
    exps: &[u32],
    chosen: &mut Vec<usize>,
    span: Vec<usize>,
) -> bool {
    let level = chosen.len();
    if level == exps.len() {
        return true;
    }
    let order = p.pow(exps[level]);
    let in_span = |x: usize| span.contains(&x);
    for &g in part.iter().filter(|&&x| orders[x] == order) {
        // <g> ∩ span is trivial iff the order-p element of <g> avoids span
        let socle = group.multiple(g, order / p);
        if in_span(socle) {
            continue;
        }
        let mut next = Vec::with_capacity(span.len() * order as usize);
        let mut shift = group.zero;
        for _ in 0..order {
            next.extend(span.iter().map(|&s| group.add(s, shift)));
            shift = group.add(shift, g);
        }
        chosen.push(g);
        if choose_basis(group, part, orders, p, exps, chosen, next) {
            return true;
        }
        chosen.pop();
    }
    false
}

impl EllipticGroup for CayleyTable {
    type Elem = usize;

    fn star(&self, x: &usize, y: &usize) -> usize {
        self.table[*x][*y]
    }

    fn contains(&self, x: &usize) -> bool {
        *x < self.size
    }
}

/// Output of [`CayleyTable::recover_pointed`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Recovered {
    pub zero: usize,
    pub base: usize,
}

impl Recovered {
    /// The table of `x ↦ c −_o x −_o y` computed inside `(S, +_o)`.
    pub fn rebuild(&self, table: &CayleyTable) -> Result<CayleyTable> {
        let g = DerivedGroup::new(table, self.zero)?;
        let t = CayleyTable::from_fn(table.size(), |x, y| {
            let s = g.add(x, y);
            g.add(self.base, g.neg(s))
        })?;
        t.with_labels(table.labels().to_vec())
    }
}

/// Output of [`CayleyTable::identify`]: `coords[i]` is the element of
/// `pointed` corresponding to index `i`.
#[derive(Clone, Debug)]
pub struct Identified {
    pub pointed: PointedAbelian,
    pub coords: Vec<GroupElement>,
}

/// `(S, +_c)` with `x +_c y = c ∗ (x ∗ y)`.
#[derive(Clone, Debug)]
pub struct Derived<'a, G: EllipticGroup> {
    carrier: &'a G,
    zero: G::Elem,
}

/// Derived group of a Cayley table.
pub type DerivedGroup<'a> = Derived<'a, CayleyTable>;

impl<'a, G: EllipticGroup> Derived<'a, G> {
    pub fn with_zero(carrier: &'a G, zero: G::Elem) -> Result<Self> {
        if !carrier.contains(&zero) {
            return Err(Error::EmptyCarrier);
        }
        Ok(Self { carrier, zero })
    }

    pub fn zero(&self) -> &G::Elem {
        &self.zero
    }

    pub fn sum(&self, x: &G::Elem, y: &G::Elem) -> G::Elem {
        self.carrier.star(&self.zero, &self.carrier.star(x, y))
    }

    pub fn negate(&self, x: &G::Elem) -> G::Elem {
        self.carrier.star(x, &self.carrier.star(&self.zero, &self.zero))
    }
}

impl<'a> Derived<'a, CayleyTable> {
    pub fn new(table: &'a CayleyTable, zero: usize) -> Result<Self> {
        Self::with_zero(table, zero)
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.carrier.op(self.zero, self.carrier.op(x, y))
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.carrier.op(x, self.carrier.op(self.zero, self.zero))
    }

    pub fn multiple(&self, x: usize, k: u64) -> usize {
        let mut acc = self.zero;
        for _ in 0..k {
            acc = self.add(acc, x);
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut acc = x;
        let mut k = 1;
        while acc != self.zero {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        (0..self.carrier.size()).fold(1, |acc, x| {
            let o = self.element_order(x);
            acc / arith::gcd_u64(acc, o) * o
        })
    }

    /// Sizes of `G[d]` for every `d` dividing the order.
    pub fn torsion_profile(&self) -> BTreeMap<u64, usize> {
        let n = self.carrier.size() as u64;
        let orders: Vec<u64> = (0..self.carrier.size()).map(|x| self.element_order(x)).collect();
        (1..=n)
            .filter(|d| n.is_multiple_of(*d))
            .map(|d| (d, orders.iter().filter(|&&o| d % o == 0).count()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pa(s: &str) -> PointedAbelian {
        s.parse().unwrap()
    }

    fn el(c: &[i64]) -> GroupElement {
        GroupElement::from_raw(c.to_vec())
    }

    #[test]
    fn star_examples() {
        let z1 = pa("0:1");
        assert_eq!(z1.checked_star(&el(&[2]), &el(&[3])).unwrap(), el(&[-4]));
        let p = pa("3:0");
        assert_eq!(p.checked_star(&el(&[1]), &el(&[1])).unwrap(), el(&[1]));
        let p = pa("3,3:1,0");
        assert_eq!(p.checked_star(&el(&[1, 2]), &el(&[0, 1])).unwrap(), el(&[0, 0]));
        assert!(p.checked_star(&el(&[1]), &el(&[0, 1])).is_err());
    }

    #[test]
    fn to_table_examples() {
        let t = pa("3:0").to_table().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(t.op(i, j), (6 - i - j) % 3);
            }
        }
        let t = pa("3:1").to_table().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(t.op(i, j) as i64, (1 - i as i64 - j as i64).rem_euclid(3));
            }
        }
        let t = pa("2:0").to_table().unwrap();
        assert_eq!((t.op(0, 0), t.op(0, 1), t.op(1, 1)), (0, 1, 0));
        assert!(pa("0:1").to_table().is_err());
    }

    #[test]
    fn axiom_examples() {
        assert!(CayleyTable::from_fn(1, |_, _| 0).unwrap().verify_axioms().all_pass());
        let bad = CayleyTable::from_fn(2, |x, _| x).unwrap().verify_axioms();
        assert!(!bad.eg1);
        assert_eq!(bad.first_violation, Some(Violation { axiom: Axiom::EG1, witness: vec![0, 1] }));
        assert!(CayleyTable::empty().verify_axioms().all_pass());
    }

    #[test]
    fn eg3_failure_is_detected() {
        // x ∗ y = −x − y + xy on Z/5 is commutative and usually not EG2, but
        // take a commutative involutive law that breaks EG3: a Steiner
        // quasigroup of order 7 (Fano plane).
        let lines = [[0, 1, 3], [1, 2, 4], [2, 3, 5], [3, 4, 6], [4, 5, 0], [5, 6, 1], [6, 0, 2]];
        let t = CayleyTable::from_fn(7, |x, y| {
            if x == y {
                return x;
            }
            let l = lines.iter().find(|l| l.contains(&x) && l.contains(&y)).unwrap();
            *l.iter().find(|&&z| z != x && z != y).unwrap()
        })
        .unwrap();
        let r = t.verify_axioms();
        assert!(r.eg1 && r.eg2 && !r.eg3);
        assert_eq!(r.first_violation.as_ref().unwrap().axiom, Axiom::EG3);
    }

    #[test]
    fn malformed_tables_rejected() {
        assert!(CayleyTable::new(vec!["a".into()], vec![vec![1]]).is_err());
        assert!(CayleyTable::new(vec!["a".into()], vec![vec![0, 0]]).is_err());
        assert!(CayleyTable::from_json(r#"{"size":2,"labels":["a"],"table":[[0]]}"#).is_err());
    }

    #[test]
    fn json_roundtrip_is_stable() {
        let t = pa("3:1").to_table().unwrap();
        let j = t.to_json();
        assert!(j.starts_with(r#"{"size":3,"labels":["#));
        let back = CayleyTable::from_json(&j).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_json(), j);
    }

    #[test]
    fn derived_group_closed_form() {
        let z1 = pa("0:1");
        let zero = el(&[0]);
        assert_eq!(z1.derived_add(&zero, &el(&[2]), &el(&[3])).unwrap(), el(&[5]));
        let g = Derived::with_zero(&z1, zero.clone()).unwrap();
        assert_eq!(g.sum(&el(&[2]), &el(&[3])), el(&[5]));
        assert_eq!(g.sum(&el(&[7]), &zero), el(&[7]));
        assert_eq!(g.sum(&el(&[7]), &g.negate(&el(&[7]))), zero);
    }

    #[test]
    fn recover_examples() {
        let t = pa("3:1").to_table().unwrap();
        let r = t.recover_pointed(0).unwrap();
        assert_eq!(r.base, 1);
        assert_eq!(r.rebuild(&t).unwrap(), t);
        let one = CayleyTable::from_fn(1, |_, _| 0).unwrap();
        let r = one.recover_pointed(0).unwrap();
        assert_eq!(r.base, 0);
        assert_eq!(r.rebuild(&one).unwrap(), one);
        assert!(matches!(CayleyTable::empty().recover_pointed(0), Err(Error::EmptyCarrier)));
        let bad = CayleyTable::from_fn(2, |x, _| x).unwrap();
        assert!(matches!(bad.recover_pointed(0), Err(Error::AxiomFailure(_))));
    }

    #[test]
    fn roundtrip_all_small_pointed_groups() {
        for shape in ["2", "3", "4", "2,2", "6", "9", "3,3", "2,4", "8", "12", "2,6", "16", "4,4"] {
            let shape: GroupShape = shape.parse().unwrap();
            for base in shape.elements().unwrap() {
                let p = PointedAbelian::from_parts(shape.clone(), base).unwrap();
                let t = p.to_table().unwrap();
                for o in 0..t.size() {
                    let r = t.recover_pointed(o).unwrap();
                    assert_eq!(r.rebuild(&t).unwrap(), t, "{p} at {o}");
                }
            }
        }
    }

    #[test]
    fn change_of_zero_is_isomorphism() {
        for p in ["3,3:1,0", "4:1", "6:3", "2,2:1,1", "12:5"] {
            let t = pa(p).to_table().unwrap();
            let n = t.size();
            for c in 0..n {
                let gc = DerivedGroup::new(&t, c).unwrap();
                for d in 0..n {
                    let gd = DerivedGroup::new(&t, d).unwrap();
                    let phi = |x: usize| t.op(c, t.op(x, d));
                    let mut image: Vec<_> = (0..n).map(phi).collect();
                    image.sort_unstable();
                    image.dedup();
                    assert_eq!(image.len(), n);
                    for x in 0..n {
                        for y in 0..n {
                            assert_eq!(phi(gc.add(x, y)), gd.add(phi(x), phi(y)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn flex_examples() {
        let p = pa("9:3");
        assert_eq!(p.flex_points().unwrap(), vec![el(&[1]), el(&[4]), el(&[7])]);
        assert!(pa("3:1").flex_points().unwrap().is_empty());
        assert!(!pa("0,3:0,1").has_flex());
        assert!(pa("0,2:3,1").has_flex());
        let t = p.to_table().unwrap();
        assert_eq!(t.flex_points(), vec![1, 4, 7]);
    }

    #[test]
    fn flex_torsor() {
        for p in ["9:3", "3,3:0,0", "9,3:6,0", "6:0", "27:9"] {
            let p = pa(p);
            let flexes = p.flex_points().unwrap();
            let ann = p.shape().ann3().unwrap();
            assert_eq!(flexes.len(), ann.len());
            for f in &flexes {
                for a in &ann {
                    assert!(flexes.contains(&p.shape().add(f, a).unwrap()));
                }
                for g in &flexes {
                    assert!(ann.contains(&p.shape().sub(f, g).unwrap()));
                }
            }
        }
    }

    #[test]
    fn totally_distinct_examples() {
        assert!(pa("3:0").to_table().unwrap().totally_distinct());
        assert!(CayleyTable::from_fn(1, |_, _| 0).unwrap().totally_distinct());
        for p in ["9:1", "3,3:1,2", "2,4:1,3"] {
            assert!(pa(p).to_table().unwrap().totally_distinct());
        }
        assert!(!CayleyTable::from_fn(2, |_, _| 0).unwrap().totally_distinct());
    }

    #[test]
    fn identify_recovers_isomorphic_pointed_group() {
        for p in ["3,3:1,0", "9:1", "12:5", "2,6:1,3", "4,2:3,1", "8:0", "3,9:2,4"] {
            let p = pa(p);
            let t = p.to_table().unwrap();
            let o = t.size() / 2;
            let id = t.identify(o).unwrap();
            assert!(id.pointed.shape().is_isomorphic_to(p.shape()));
            for i in 0..t.size() {
                for j in 0..t.size() {
                    let expected = id.pointed.star(&id.coords[i], &id.coords[j]);
                    assert_eq!(id.coords[t.op(i, j)], expected);
                }
            }
        }
    }

    #[test]
    fn torsion_profile_of_elementary_group() {
        let t = pa("3,3:1,0").to_table().unwrap();
        let g = DerivedGroup::new(&t, 0).unwrap();
        assert_eq!(g.exponent(), 3);
        assert_eq!(g.torsion_profile()[&3], 9);
    }

    #[test]
    fn descriptor_roundtrip() {
        let p = pa("0,9:2,14");
        assert_eq!(p.base(), &el(&[2, 5]));
        assert_eq!(p.descriptor(), "0,9:2,5");
        assert_eq!(pa("9"), pa("9:0"));
        assert_eq!(PointedAbelian::terminal().descriptor(), ":");
        assert_eq!(pa(":"), PointedAbelian::terminal());
    }
}
