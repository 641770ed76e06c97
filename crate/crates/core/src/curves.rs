//! Plane cubics over small prime fields and their chord-tangent law.
//!
//! A cubic is given by 10 coefficients in the monomial order
//! `[x³, y³, z³, x²y, x²z, xy², y²z, xz², yz², xyz]`. Points are normalized
//! so that the first nonzero coordinate is `1`.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::elliptic::CayleyTable;
use crate::error::{Error, Result};

/// Arithmetic shared by `F_p` and `F_{p²}`.
trait FieldOps {
    type E: Copy + Eq;
    fn zero(&self) -> Self::E;
    fn embed(&self, c: u64) -> Self::E;
    fn add(&self, a: Self::E, b: Self::E) -> Self::E;
    fn mul(&self, a: Self::E, b: Self::E) -> Self::E;
}

/// `F_p` for a prime `5 ≤ p ≤ 97`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeFieldCtx {
    p: u64,
}

impl PrimeFieldCtx {
    pub fn new(p: u64) -> Result<Self> {
        if !(5..=97).contains(&p) || !arith::is_prime(p) {
            return Err(Error::UnsupportedField(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        arith::mod_inverse(a as i64, self.p as i64).map(|x| x as u64)
    }

    pub fn is_square(&self, a: u64) -> bool {
        (0..self.p).any(|r| r * r % self.p == a)
    }

    /// The smallest quadratic non-residue.
    pub fn non_residue(&self) -> u64 {
        (2..self.p).find(|&d| !self.is_square(d)).expect("odd p has non-residues")
    }
}

impl FieldOps for PrimeFieldCtx {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn embed(&self, c: u64) -> u64 {
        c
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        PrimeFieldCtx::add(self, a, b)
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        PrimeFieldCtx::mul(self, a, b)
    }
}

/// `F_{p²} = F_p(√d)` with `d` the smallest non-residue; `(a, b) = a + b√d`.
#[derive(Clone, Copy, Debug)]
struct Fp2 {
    f: PrimeFieldCtx,
    d: u64,
}

impl Fp2 {
    fn new(f: PrimeFieldCtx) -> Self {
        Self { f, d: f.non_residue() }
    }

    fn size(&self) -> usize {
        (self.f.p * self.f.p) as usize
    }

    fn element(&self, i: usize) -> (u64, u64) {
        (i as u64 / self.f.p, i as u64 % self.f.p)
    }

    fn index(&self, e: (u64, u64)) -> usize {
        (e.0 * self.f.p + e.1) as usize
    }

    fn sub(&self, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        (self.f.sub(a.0, b.0), self.f.sub(a.1, b.1))
    }

    fn scale(&self, a: (u64, u64), c: u64) -> (u64, u64) {
        (self.f.mul(a.0, c), self.f.mul(a.1, c))
    }

    fn inv(&self, a: (u64, u64)) -> Option<(u64, u64)> {
        // (a + b√d)⁻¹ = (a − b√d) / (a² − d b²)
        let f = &self.f;
        let norm = f.sub(f.mul(a.0, a.0), f.mul(self.d, f.mul(a.1, a.1)));
        let n = f.inv(norm)?;
        Some((f.mul(a.0, n), f.mul(f.neg(a.1), n)))
    }

    /// `sqrt[index(r²)] = Some(r)`.
    fn sqrt_table(&self) -> Vec<Option<(u64, u64)>> {
        let mut table = vec![None; self.size()];
        for i in 0..self.size() {
            let r = self.element(i);
            let sq = self.index(FieldOps::mul(self, r, r));
            table[sq].get_or_insert(r);
        }
        table
    }
}

impl FieldOps for Fp2 {
    type E = (u64, u64);
    fn zero(&self) -> (u64, u64) {
        (0, 0)
    }
    fn embed(&self, c: u64) -> (u64, u64) {
        (c, 0)
    }
    fn add(&self, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        (self.f.add(a.0, b.0), self.f.add(a.1, b.1))
    }
    fn mul(&self, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        let f = &self.f;
        let re = f.add(f.mul(a.0, b.0), f.mul(self.d, f.mul(a.1, b.1)));
        let im = f.add(f.mul(a.0, b.1), f.mul(a.1, b.0));
        (re, im)
    }
}

/// Exponents of `(x, y, z)` for each coefficient slot.
const MONOMIALS: [[u32; 3]; 10] =
    [[3, 0, 0], [0, 3, 0], [0, 0, 3], [2, 1, 0], [2, 0, 1], [1, 2, 0], [0, 2, 1], [1, 0, 2], [0, 1, 2], [1, 1, 1]];

fn pow<F: FieldOps>(f: &F, x: F::E, e: u32) -> F::E {
    (0..e).fold(f.embed(1), |acc, _| f.mul(acc, x))
}

/// A ternary cubic form over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TernaryCubic {
    field: PrimeFieldCtx,
    coeffs: [u64; 10],
}

impl TernaryCubic {
    pub fn new(field: PrimeFieldCtx, coeffs: [i64; 10]) -> Result<Self> {
        let coeffs = coeffs.map(|c| field.reduce(c));
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::InvalidArgument("cubic is identically zero".into()));
        }
        Ok(Self { field, coeffs })
    }

    /// `y²z = x³ + a·xz² + b·z³`.
    pub fn weierstrass(field: PrimeFieldCtx, a: i64, b: i64) -> Result<Self> {
        Self::new(field, [1, 0, b, 0, 0, 0, -1, a, 0, 0])
    }

    pub fn field(&self) -> PrimeFieldCtx {
        self.field
    }

    pub fn coeffs(&self) -> &[u64; 10] {
        &self.coeffs
    }

    fn eval_in<F: FieldOps>(&self, f: &F, pt: [F::E; 3]) -> F::E {
        self.coeffs.iter().zip(MONOMIALS).fold(f.zero(), |acc, (&c, [i, j, k])| {
            let m = f.mul(f.mul(pow(f, pt[0], i), pow(f, pt[1], j)), pow(f, pt[2], k));
            f.add(acc, f.mul(f.embed(c), m))
        })
    }

    fn gradient_in<F: FieldOps>(&self, f: &F, pt: [F::E; 3]) -> [F::E; 3] {
        std::array::from_fn(|v| {
            self.coeffs.iter().zip(MONOMIALS).fold(f.zero(), |acc, (&c, exps)| {
                if exps[v] == 0 {
                    return acc;
                }
                let mut reduced = exps;
                reduced[v] -= 1;
                let m = (0..3).fold(f.embed(exps[v] as u64 * c % self.field.p), |m, w| {
                    f.mul(m, pow(f, pt[w], reduced[w]))
                });
                f.add(acc, m)
            })
        })
    }

    pub fn eval(&self, pt: [u64; 3]) -> u64 {
        self.eval_in(&self.field, pt)
    }

    pub fn gradient(&self, pt: [u64; 3]) -> [u64; 3] {
        self.gradient_in(&self.field, pt)
    }

    pub fn contains(&self, pt: &ProjectivePoint) -> bool {
        self.eval(pt.coords) == 0
    }

    /// A projective point over `F_p` or `F_{p²}` where all partial
    /// derivatives vanish, as `(a, b)` pairs for `a + b√d`.
    pub fn singular_point(&self) -> Option<[(u64, u64); 3]> {
        let k = Fp2::new(self.field);
        let sqrt = k.sqrt_table();
        let vanishes = |pt: [(u64, u64); 3]| self.gradient_in(&k, pt).iter().all(|&g| g == (0, 0));
        let one = (1, 0);
        // Points at infinity: (1:0:0) and (x:1:0).
        if vanishes([one, (0, 0), (0, 0)]) {
            return Some([one, (0, 0), (0, 0)]);
        }
        if let Some(x) = (0..k.size()).map(|i| k.element(i)).find(|&x| vanishes([x, one, (0, 0)])) {
            return Some([x, one, (0, 0)]);
        }
        // Affine points: for each x, intersect the roots in y of the partials.
        let two_inv = self.field.inv(2).expect("p odd");
        (0..k.size()).into_par_iter().find_map_first(|i| {
            let x = k.element(i);
            let at = |y: (u64, u64)| self.gradient_in(&k, [x, y, one]);
            let (g0, g1, gm) = (at((0, 0)), at(one), at((self.field.p - 1, 0)));
            let mut candidates: Option<Vec<(u64, u64)>> = None;
            for v in 0..3 {
                // g_v(y) = a y² + b y + c from its values at 0, 1, −1.
                let c = g0[v];
                let a = k.sub(k.scale(FieldOps::add(&k, g1[v], gm[v]), two_inv), c);
                let b = k.scale(k.sub(g1[v], gm[v]), two_inv);
                let roots = quadratic_roots(&k, &sqrt, a, b, c);
                if let Some(r) = roots {
                    candidates = Some(r);
                    break;
                }
            }
            match candidates {
                None => Some([x, (0, 0), one]),
                Some(ys) => ys.into_iter().find(|&y| vanishes([x, y, one])).map(|y| [x, y, one]),
            }
        })
    }

    /// No singular point over `F_p` or `F_{p²}`, and at least one `F_p`
    /// point. The last condition excludes a triangle of conjugate lines over
    /// `F_{p³}`, whose singular points lie outside `F_{p²}`; every smooth
    /// cubic over `F_p` has a rational point.
    pub fn is_smooth(&self) -> bool {
        self.singular_point().is_none() && !enumerate_points(self).is_empty()
    }
}

/// Roots of `a y² + b y + c` in `F_{p²}`, or `None` if the polynomial is zero.
fn quadratic_roots(k: &Fp2, sqrt: &[Option<(u64, u64)>], a: (u64, u64), b: (u64, u64), c: (u64, u64)) -> Option<Vec<(u64, u64)>> {
    let zero = (0, 0);
    if a == zero && b == zero {
        return (c != zero).then(Vec::new);
    }
    if a == zero {
        let root = k.mul(k.sub(zero, c), k.inv(b).expect("nonzero"));
        return Some(vec![root]);
    }
    let disc = k.sub(k.mul(b, b), k.scale(k.mul(a, c), 4));
    let Some(s) = sqrt[k.index(disc)] else { return Some(Vec::new()) };
    let den = k.inv(k.scale(a, 2)).expect("nonzero");
    let neg_b = k.sub(zero, b);
    Some(vec![k.mul(FieldOps::add(k, neg_b, s), den), k.mul(k.sub(neg_b, s), den)])
}

/// A point of `P²(F_p)` with first nonzero coordinate `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProjectivePoint {
    coords: [u64; 3],
}

impl ProjectivePoint {
    pub fn new(field: &PrimeFieldCtx, coords: [i64; 3]) -> Result<Self> {
        let c = coords.map(|x| field.reduce(x));
        Self::normalized(field, c).ok_or_else(|| Error::InvalidArgument("(0:0:0) is not a projective point".into()))
    }

    fn normalized(field: &PrimeFieldCtx, c: [u64; 3]) -> Option<Self> {
        let lead = c.iter().copied().find(|&x| x != 0)?;
        let inv = field.inv(lead).expect("nonzero in a field");
        Some(Self { coords: c.map(|x| field.mul(x, inv)) })
    }

    /// The affine point `(x, y)` for `(x:y:1)`.
    pub fn affine(field: &PrimeFieldCtx, x: i64, y: i64) -> Self {
        Self::new(field, [x, y, 1]).expect("z = 1")
    }

    pub fn coords(&self) -> [u64; 3] {
        self.coords
    }

    pub fn is_at_infinity(&self) -> bool {
        self.coords[2] == 0
    }

    /// `(x, y)` with `z` scaled to `1`, for points off the line `z = 0`.
    pub fn to_affine(&self, field: &PrimeFieldCtx) -> Option<(u64, u64)> {
        let inv = field.inv(self.coords[2])?;
        Some((field.mul(self.coords[0], inv), field.mul(self.coords[1], inv)))
    }

    /// `(x,y)` for affine points and `(x:y:z)` otherwise.
    pub fn label(&self, field: &PrimeFieldCtx) -> String {
        match self.to_affine(field) {
            Some((x, y)) => format!("({x},{y})"),
            None => self.to_string(),
        }
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.coords;
        write!(f, "({x}:{y}:{z})")
    }
}

/// Every point of `P²(F_p)`: affine `(x:y:1)` lexicographically, then the
/// line `z = 0` in normalized order.
fn projective_plane(field: &PrimeFieldCtx) -> impl Iterator<Item = ProjectivePoint> + '_ {
    let p = field.p;
    let affine = (0..p).flat_map(move |x| (0..p).map(move |y| ProjectivePoint::affine(field, x as i64, y as i64)));
    let infinity = std::iter::once(ProjectivePoint { coords: [0, 1, 0] })
        .chain((0..p).map(|y| ProjectivePoint { coords: [1, y, 0] }));
    affine.chain(infinity)
}

/// The points of `C(F_p)` in enumeration order.
pub fn enumerate_points(c: &TernaryCubic) -> Vec<ProjectivePoint> {
    projective_plane(&c.field).filter(|pt| c.contains(pt)).collect()
}

fn combine(f: &PrimeFieldCtx, alpha: u64, p: [u64; 3], beta: u64, q: [u64; 3]) -> Option<ProjectivePoint> {
    let c = std::array::from_fn(|i| f.add(f.mul(alpha, p[i]), f.mul(beta, q[i])));
    ProjectivePoint::normalized(f, c)
}

fn check_on(c: &TernaryCubic, pts: &[ProjectivePoint]) -> Result<()> {
    match pts.iter().find(|pt| !c.contains(pt)) {
        Some(pt) => Err(Error::PointNotOnCurve(pt.to_string())),
        None => Ok(()),
    }
}

/// The third intersection of the chord (or tangent, if `P = Q`) with `C`.
pub fn chord_tangent(c: &TernaryCubic, p: ProjectivePoint, q: ProjectivePoint) -> Result<ProjectivePoint> {
    check_on(c, &[p, q])?;
    if p == q {
        let grad = c.gradient(p.coords);
        if grad.iter().all(|&g| g == 0) {
            return Err(Error::SingularCurve(format!("singular at {p}")));
        }
        let f = &c.field;
        let on_tangent = |x: &ProjectivePoint| (0..3).fold(0, |acc, i| f.add(acc, f.mul(grad[i], x.coords[i]))) == 0;
        let second = projective_plane(f).find(|x| *x != p && on_tangent(x)).expect("a line has p + 1 points");
        return tangent_with(c, p, second);
    }
    let f = &c.field;
    // C(sP + tQ) = s t (b s + c t), so the third root is [c : −b].
    let g = |s: u64, t: u64| c.eval(std::array::from_fn(|i| f.add(f.mul(s, p.coords[i]), f.mul(t, q.coords[i]))));
    let (g11, g1m) = (g(1, 1), g(1, f.p - 1));
    let two_inv = f.inv(2).expect("p odd");
    let cc = f.mul(f.add(g11, g1m), two_inv);
    let b = f.mul(f.sub(g11, g1m), two_inv);
    combine(f, cc, p.coords, f.neg(b), q.coords)
        .ok_or_else(|| Error::SingularCurve(format!("the line through {p} and {q} lies on the curve")))
}

/// The tangent case with an explicit second point `Q′ ≠ P` on the tangent
/// line at `P`.
pub fn tangent_with(c: &TernaryCubic, p: ProjectivePoint, second: ProjectivePoint) -> Result<ProjectivePoint> {
    check_on(c, &[p])?;
    let f = &c.field;
    let grad = c.gradient(p.coords);
    if grad.iter().all(|&g| g == 0) {
        return Err(Error::SingularCurve(format!("singular at {p}")));
    }
    let dot = (0..3).fold(0, |acc, i| f.add(acc, f.mul(grad[i], second.coords[i])));
    if second == p || dot != 0 {
        return Err(Error::InvalidArgument(format!("{second} is not a second point on the tangent at {p}")));
    }
    // C(sP + tQ′) = t² (c s + d t) with d = C(Q′); the residual root is [d : −c].
    let d = c.eval(second.coords);
    let g11 = c.eval(std::array::from_fn(|i| f.add(p.coords[i], second.coords[i])));
    let cc = f.sub(g11, d);
    if cc == 0 {
        return if d == 0 {
            Err(Error::SingularCurve(format!("the tangent at {p} lies on the curve")))
        } else {
            Ok(p)
        };
    }
    Ok(combine(f, d, p.coords, f.neg(cc), second.coords).expect("P and Q′ independent"))
}

/// The points of a smooth cubic with the chord-tangent table.
#[derive(Clone, Debug)]
pub struct CurveGroup {
    pub points: Vec<ProjectivePoint>,
    pub table: CayleyTable,
}

pub fn curve_group(c: &TernaryCubic) -> Result<CurveGroup> {
    let points = enumerate_points(c);
    if points.is_empty() {
        return Err(Error::PointlessCurve);
    }
    if let Some(s) = c.singular_point() {
        return Err(Error::SingularCurve(format!("singular at {s:?}")));
    }
    let index: HashMap<ProjectivePoint, usize> = points.iter().enumerate().map(|(i, &pt)| (pt, i)).collect();
    let rows = points
        .par_iter()
        .map(|&p| {
            points
                .iter()
                .map(|&q| {
                    let r = chord_tangent(c, p, q)?;
                    Ok(index[&r])
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = points.iter().map(|pt| pt.label(&c.field)).collect();
    Ok(CurveGroup { table: CayleyTable::new(labels, rows)?, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{canonical_form, CanonicalForm};
    use crate::abelian::GroupShape;
    use crate::elliptic::{DerivedGroup, PointedAbelian};

    fn f7() -> PrimeFieldCtx {
        PrimeFieldCtx::new(7).unwrap()
    }

    fn curve1() -> TernaryCubic {
        TernaryCubic::new(f7(), [1, 2, -3, 0, 0, 0, 0, 0, 0, 0]).unwrap()
    }

    fn curve2() -> TernaryCubic {
        TernaryCubic::weierstrass(f7(), 0, 2).unwrap()
    }

    fn labels(c: &TernaryCubic) -> Vec<String> {
        enumerate_points(c).iter().map(|p| p.label(&c.field())).collect()
    }

    #[test]
    fn fields() {
        assert!(PrimeFieldCtx::new(3).is_err());
        assert!(PrimeFieldCtx::new(9).is_err());
        assert!(PrimeFieldCtx::new(101).is_err());
        assert_eq!(f7().non_residue(), 3);
        let k = Fp2::new(f7());
        for i in 1..k.size() {
            let x = k.element(i);
            assert_eq!(FieldOps::mul(&k, x, k.inv(x).unwrap()), (1, 0));
        }
        let sq = k.sqrt_table();
        assert!((0..7).all(|a| sq[k.index((a, 0))].is_some()));
        assert_eq!(sq.iter().filter(|r| r.is_some()).count(), 1 + 48 / 2);
    }

    #[test]
    fn curve1_points() {
        let expected = ["(1,1)", "(1,2)", "(1,4)", "(2,1)", "(2,2)", "(2,4)", "(4,1)", "(4,2)", "(4,4)"];
        assert_eq!(labels(&curve1()), expected);
    }

    #[test]
    fn curve2_points() {
        let expected = ["(0,3)", "(0,4)", "(3,1)", "(3,6)", "(5,1)", "(5,6)", "(6,1)", "(6,6)", "(0:1:0)"];
        assert_eq!(labels(&curve2()), expected);
    }

    #[test]
    fn degenerate_cubic_points() {
        let c = TernaryCubic::new(f7(), [0, 0, 1, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(enumerate_points(&c).len(), 8);
        assert!(c.singular_point().is_some());
        assert!(!c.is_smooth());
        assert!(matches!(curve_group(&c), Err(Error::SingularCurve(_))));
    }

    #[test]
    fn smoothness() {
        assert!(curve1().is_smooth());
        assert!(curve2().is_smooth());
        // y² = x³ has a cusp at the origin.
        let cusp = TernaryCubic::weierstrass(f7(), 0, 0).unwrap();
        assert_eq!(cusp.singular_point(), Some([(0, 0), (0, 0), (1, 0)]));
        // y²z = x³ + x²z has a node at the origin.
        let node = TernaryCubic::new(f7(), [1, 0, 0, 0, 1, 0, -1, 0, 0, 0]).unwrap();
        assert!(node.singular_point().is_some());
    }

    #[test]
    fn singular_point_over_fp2() {
        // z(x² − 3y²): two lines conjugate over F_49 and the line z = 0, which
        // meets them at points of F_49 only.
        let c = TernaryCubic::new(f7(), [0, 0, 0, 0, 1, 0, -3, 0, 0, 0]).unwrap();
        let s = c.singular_point().unwrap();
        assert!(c.gradient_in(&Fp2::new(f7()), s).iter().all(|&g| g == (0, 0)));
        assert!(!c.is_smooth());
    }

    #[test]
    fn conjugate_triangle_is_rejected() {
        // Norm form of F_{p³}/F_p: three conjugate lines, pointless over F_p.
        let p = PrimeFieldCtx::new(7).unwrap();
        // t³ − 2 is irreducible over F_7 (2 is not a cube); N(x + yθ + zθ²)
        // = x³ + 2y³ + 4z³ − 6xyz.
        let c = TernaryCubic::new(p, [1, 2, 4, 0, 0, 0, 0, 0, 0, -6]).unwrap();
        assert!(enumerate_points(&c).is_empty());
        assert!(c.singular_point().is_none());
        assert!(!c.is_smooth());
        assert_eq!(curve_group(&c).unwrap_err(), Error::PointlessCurve);
    }

    #[test]
    fn tangent_examples() {
        let c1 = curve1();
        let f = f7();
        let o = ProjectivePoint::affine(&f, 1, 1);
        assert_eq!(chord_tangent(&c1, o, o).unwrap(), ProjectivePoint::affine(&f, 2, 4));
        let c2 = curve2();
        let inf = ProjectivePoint::new(&f, [0, 1, 0]).unwrap();
        assert_eq!(chord_tangent(&c2, inf, inf).unwrap(), inf);
    }

    #[test]
    fn off_curve_rejected() {
        let f = f7();
        let bad = ProjectivePoint::affine(&f, 0, 0);
        let o = ProjectivePoint::affine(&f, 1, 1);
        assert!(matches!(chord_tangent(&curve1(), o, bad), Err(Error::PointNotOnCurve(_))));
    }

    #[test]
    fn tangent_is_independent_of_second_point() {
        for c in [curve1(), curve2()] {
            let f = c.field();
            for p in enumerate_points(&c) {
                let expected = chord_tangent(&c, p, p).unwrap();
                let grad = c.gradient(p.coords());
                for q in projective_plane(&f).filter(|q| *q != p) {
                    let dot = (0..3).fold(0, |acc, i| f.add(acc, f.mul(grad[i], q.coords()[i])));
                    if dot == 0 {
                        assert_eq!(tangent_with(&c, p, q).unwrap(), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn chord_identities() {
        for c in [curve1(), curve2()] {
            let pts = enumerate_points(&c);
            for &p in &pts {
                for &q in &pts {
                    let r = chord_tangent(&c, p, q).unwrap();
                    assert!(c.contains(&r));
                    assert_eq!(r, chord_tangent(&c, q, p).unwrap());
                    assert_eq!(chord_tangent(&c, p, r).unwrap(), q);
                }
            }
        }
    }

    #[test]
    fn groups_of_the_two_curves() {
        let g1 = curve_group(&curve1()).unwrap();
        let g2 = curve_group(&curve2()).unwrap();
        assert!(g1.table.verify_axioms().all_pass());
        assert!(g2.table.verify_axioms().all_pass());
        assert!(g1.table.flex_points().is_empty());
        let inf = g2.points.iter().position(|p| p.is_at_infinity()).unwrap();
        assert!(g2.table.flex_points().contains(&inf));
        for g in [&g1, &g2] {
            for o in 0..9 {
                let d = DerivedGroup::new(&g.table, o).unwrap();
                assert_eq!(d.exponent(), 3);
            }
        }
        let id1 = g1.table.identify(0).unwrap();
        let id2 = g2.table.identify(0).unwrap();
        assert_eq!(canonical_form(&id1.pointed), CanonicalForm::OneTorsion { shape: GroupShape::cyclic(3), k: 1 });
        assert_eq!(canonical_form(&id2.pointed), CanonicalForm::Flex { shape: "3,3".parse().unwrap() });
        assert!(!crate::morphisms::is_isomorphic(&id1.pointed, &id2.pointed));
    }

    #[test]
    fn flex_count_matches_ann3() {
        for (a, b) in [(0, 2), (1, 1), (3, 4), (2, 5)] {
            let c = TernaryCubic::weierstrass(f7(), a, b).unwrap();
            if !c.is_smooth() {
                continue;
            }
            let g = curve_group(&c).unwrap();
            let id: PointedAbelian = g.table.identify(0).unwrap().pointed;
            let flexes = g.table.flex_points().len();
            if flexes > 0 {
                assert_eq!(flexes as u64, id.shape().ann3().unwrap().len() as u64);
            }
        }
    }

    #[test]
    fn larger_prime() {
        let f = PrimeFieldCtx::new(97).unwrap();
        let c = TernaryCubic::weierstrass(f, 1, 1).unwrap();
        assert!(c.is_smooth());
        let g = curve_group(&c).unwrap();
        let n = g.points.len() as i64;
        assert!((n - 98).abs() <= 2 * 10);
        assert!(g.table.verify_axioms().all_pass());
    }
}
