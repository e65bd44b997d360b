//! Numerical walls for a Mukai vector `v` in the `(s, t)` half-plane with
//! `beta = sH`, `omega = tH`, their enumeration on a vertical cross-section,
//! the codimension-0 family `C_m` and chamber classification.
//!
//! Enumeration at `s = s0`. Write `(R, D, A)` for the `beta`-twisted data of
//! `v` at `s0` and `(R1, D1, A1)` for a witness `v1`. At a wall point
//! `Z(v1) = lambda Z(v)` with `0 < lambda < 1`, so `0 < D1 < D` once `D > 0`,
//! and `D1` has denominator dividing `den(s0)`. Put
//! `<v1^2> = 2 m1`, `<(v - v1)^2> = 2 m2`, `<v1, v - v1> = k >= 1`; then
//! `m1 + m2 + k = <v^2>/2`. Given `(D1, m1, m2)`:
//! `R1 A1 = P = n D1^2 - m1`, `(R - R1)(A - A1) = Q = n (D - D1)^2 - m2`,
//! hence `A R1^2 - K R1 + R P = 0` with `K = R A + P - Q`. Each cell has at
//! most two candidate witnesses, so the search is finite and complete.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fmgroup::{transport_wall, GMatrix};
use crate::lattice::{beta_data, pairing, square, Context, MukaiVector};
use crate::pell::PellContext;
use crate::surd::{int, is_integer, rat_sqrt, QnNumber, Rat};
use crate::Exec;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    /// `(s - center)^2 + t^2 = radius_sq`.
    Circle {
        center: Rat,
        radius_sq: Rat,
    },
    VLine {
        s: Rat,
    },
}

impl Shape {
    /// Does the shape meet the line `s = s0` at some `t > 0`?
    pub fn crosses(&self, s0: &Rat) -> bool {
        match self {
            Shape::Circle { center, radius_sq } => {
                let ds = s0 - center;
                &ds * &ds < *radius_sq
            }
            Shape::VLine { s } => s == s0,
        }
    }

    /// Exact membership of `(s, t^2)`.
    pub fn contains_point(&self, s: &Rat, t_sq: &Rat) -> bool {
        match self {
            Shape::Circle { center, radius_sq } => {
                let ds = s - center;
                &ds * &ds + t_sq == *radius_sq
            }
            Shape::VLine { s: s0 } => s == s0,
        }
    }

    /// Is `(s, t^2)` strictly inside the disk?
    pub fn encloses(&self, s: &Rat, t_sq: &Rat) -> bool {
        match self {
            Shape::Circle { center, radius_sq } => {
                let ds = s - center;
                &ds * &ds + t_sq < *radius_sq
            }
            Shape::VLine { .. } => false,
        }
    }

    /// Is the disk of `self` inside the closed disk of `outer`?
    pub fn nested_in(&self, outer: &Shape) -> bool {
        match (self, outer) {
            (Shape::Circle { center: c1, radius_sq: r1 }, Shape::Circle { center: c2, radius_sq: r2 }) => {
                if r1 > r2 {
                    return false;
                }
                // |c1 - c2| + R1 <= R2  <=>  (c1 - c2)^2 <= R1^2 + R2^2 - 2 R1 R2
                let dc = c1 - c2;
                let gap = r1 + r2 - &dc * &dc;
                !gap.is_negative() && &gap * &gap >= int(4) * r1 * r2
            }
            _ => false,
        }
    }

    /// Abscissae where a circle meets `t = 0`: `center -+ sqrt(radius_sq)`.
    pub fn feet(&self) -> Option<(QnNumber, QnNumber)> {
        match self {
            Shape::Circle { center, radius_sq } => {
                let root = sqrt_qn(radius_sq);
                let c = QnNumber::from_rat(center.clone());
                Some((&c - &root, &c + &root))
            }
            Shape::VLine { .. } => None,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Circle { center, radius_sq } => write!(f, "Circle({center}, {radius_sq})"),
            Shape::VLine { s } => write!(f, "VLine({s})"),
        }
    }
}

/// `sqrt(q)` for `q >= 0` as an element of `Q(sqrt(k))`.
pub fn sqrt_qn(q: &Rat) -> QnNumber {
    if q.is_zero() {
        return QnNumber::zero();
    }
    let den = q.denom().clone();
    QnNumber::new(Rat::zero(), Rat::new(BigInt::one(), den.clone()), &(q.numer() * den))
}

/// Do two shapes meet at some point with `t > 0`?
pub fn shapes_meet(a: &Shape, b: &Shape) -> bool {
    match (a, b) {
        (Shape::VLine { s }, other) | (other, Shape::VLine { s }) => match other {
            Shape::VLine { s: s2 } => s == s2,
            circle => circle.crosses(s),
        },
        (Shape::Circle { center: c1, radius_sq: r1 }, Shape::Circle { center: c2, radius_sq: r2 }) => {
            if a == b {
                return true;
            }
            // crossing iff (R1 - R2)^2 < (c1 - c2)^2 < (R1 + R2)^2
            let dc = c1 - c2;
            let e = &dc * &dc - r1 - r2;
            &e * &e < int(4) * r1 * r2
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wall {
    pub shape: Shape,
    pub witness: MukaiVector,
    pub codim0: bool,
    /// Index `m` of a codimension-0 wall `C_m`.
    pub m: Option<i64>,
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} by ({})", self.shape, self.witness)?;
        if let Some(m) = self.m {
            write!(f, " C_{m}")?;
        }
        Ok(())
    }
}

fn require_positive(v: &MukaiVector, ctx: &Context) -> Result<Rat> {
    let sq = square(v, ctx);
    if !sq.is_positive() {
        return Err(Error::DegenerateV(sq.to_string()));
    }
    Ok(sq)
}

/// The wall of `v` defined by `v1`, if `v1` passes the wall conditions and
/// the locus is nonempty.
pub fn wall_between(v: &MukaiVector, v1: &MukaiVector, ctx: &Context) -> Result<Option<Wall>> {
    let sq = require_positive(v, ctx)?;
    let v2 = v - v1;
    if square(v1, ctx).is_negative()
        || square(&v2, ctx).is_negative()
        || !pairing(v1, &v2, ctx).is_positive()
        || v.is_proportional(v1)
    {
        return Ok(None);
    }
    let two_n = int(2) * ctx.nq();
    let (r, r1) = (Rat::from_integer(v.r.clone()), Rat::from_integer(v1.r.clone()));
    let shape = if !r.is_zero() {
        let den = &two_n * (&r * &v1.d - &r1 * &v.d);
        if den.is_zero() {
            Shape::VLine { s: &v.d / &r }
        } else {
            let center = (&v1.a * &r - &v.a * &r1) / den;
            let off = &v.d / &r - &center;
            let radius_sq = &off * &off - sq / (&two_n * &r * &r);
            Shape::Circle { center, radius_sq }
        }
    } else {
        if r1.is_zero() {
            return Ok(None);
        }
        let center = &v.a / (&two_n * &v.d);
        let off = &center - &v1.d / &r1;
        let radius_sq = &off * &off - square(v1, ctx) / (&two_n * &r1 * &r1);
        Shape::Circle { center, radius_sq }
    };
    if let Shape::Circle { radius_sq, .. } = &shape {
        if !radius_sq.is_positive() {
            return Ok(None);
        }
    }
    Ok(Some(Wall { shape, witness: v1.clone(), codim0: false, m: None }))
}

/// Shared data of the circle pencil: every circle wall satisfies
/// `radius_sq = (center - p)^2 - q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilData {
    pub p: Rat,
    pub q: Rat,
}

pub fn pencil(v: &MukaiVector, ctx: &Context) -> Result<PencilData> {
    let sq = require_positive(v, ctx)?;
    if v.r.is_zero() {
        return Err(Error::RankZero);
    }
    let r = Rat::from_integer(v.r.clone());
    Ok(PencilData { p: &v.d / &r, q: sq / (int(2) * ctx.nq() * &r * &r) })
}

impl PencilData {
    pub fn contains(&self, shape: &Shape) -> bool {
        match shape {
            Shape::Circle { center, radius_sq } => {
                let off = center - &self.p;
                &off * &off - &self.q == *radius_sq
            }
            Shape::VLine { s } => *s == self.p,
        }
    }

    /// Every circle of the pencil strictly contains `p - sqrt(q)` or
    /// `p + sqrt(q)`; checked in `Q(sqrt(k))`.
    pub fn endpoint_contained(&self, shape: &Shape) -> bool {
        let Shape::Circle { center, radius_sq } = shape else { return true };
        let root = sqrt_qn(&self.q);
        let p = QnNumber::from_rat(self.p.clone());
        let c = QnNumber::from_rat(center.clone());
        let r2 = QnNumber::from_rat(radius_sq.clone());
        [&p - &root, &p + &root].iter().any(|x| {
            let dx = x - &c;
            &dx * &dx < r2
        })
    }
}

type Candidate = (Shape, MukaiVector);

/// Smallest max-norm first, then `(|r1|, |d1|, |a1|)`.
pub fn witness_key(w: &MukaiVector) -> (Rat, BigInt, Rat, Rat) {
    let (r, d, a) = (w.r.abs(), w.d.abs(), w.a.abs());
    let top = Rat::from_integer(r.clone()).max(d.clone()).max(a.clone());
    (top, r, d, a)
}

fn keep_smallest(map: &mut BTreeMap<Shape, MukaiVector>, (shape, w): Candidate) {
    match map.get(&shape) {
        Some(old) if (witness_key(old), old) <= (witness_key(&w), &w) => {}
        _ => {
            map.insert(shape, w);
        }
    }
}

/// Integer roots of `a x^2 - k x + c = 0`, `a != 0`.
fn integer_roots(a: &Rat, k: &Rat, c: &Rat) -> Vec<BigInt> {
    let disc = k * k - int(4) * a * c;
    let Some(root) = rat_sqrt(&disc) else { return vec![] };
    let mut out = Vec::with_capacity(2);
    for x in [(k + &root) / (int(2) * a), (k - &root) / (int(2) * a)] {
        if is_integer(&x) && !out.contains(x.numer()) {
            out.push(x.to_integer());
        }
    }
    out
}

struct Section<'a> {
    v: MukaiVector,
    s0: &'a Rat,
    r: Rat,
    d: Rat,
    a: Rat,
    half_sq: BigInt,
    ctx: &'a Context,
}

impl Section<'_> {
    fn cell(&self, d1: &Rat, m1: &BigInt) -> Vec<Candidate> {
        let n = self.ctx.nq();
        let p = &n * d1 * d1 - Rat::from_integer(m1.clone());
        let mut out = Vec::new();
        let mut m2 = BigInt::zero();
        while (m1 + &m2) < self.half_sq {
            let dd = &self.d - d1;
            let q = &n * &dd * &dd - Rat::from_integer(m2.clone());
            let k = &self.r * &self.a + &p - q;
            let mut pairs: Vec<(BigInt, Rat)> = Vec::new();
            if self.a.is_zero() {
                if !k.is_zero() {
                    let r1 = &self.r * &p / &k;
                    if is_integer(&r1) && !r1.is_zero() {
                        pairs.push((r1.to_integer(), &p / &r1));
                    }
                }
            } else {
                for r1 in integer_roots(&self.a, &k, &(&self.r * &p)) {
                    if !r1.is_zero() {
                        let a1 = &p / Rat::from_integer(r1.clone());
                        pairs.push((r1, a1));
                    }
                }
            }
            if p.is_zero() && !self.r.is_zero() {
                pairs.push((BigInt::zero(), &k / &self.r));
            }
            for (r1, a1) in pairs {
                if let Some(c) = self.assemble(d1, r1, a1) {
                    out.push(c);
                }
            }
            m2 += 1;
        }
        out
    }

    fn assemble(&self, d1: &Rat, r1: BigInt, a1: Rat) -> Option<Candidate> {
        let n = self.ctx.nq();
        let rr = Rat::from_integer(r1.clone());
        let dd1 = d1 + &rr * self.s0;
        let aa1 = a1 + int(2) * &n * &dd1 * self.s0 - &n * &rr * self.s0 * self.s0;
        if !is_integer(&dd1) || !is_integer(&aa1) {
            return None;
        }
        let w = MukaiVector::new(r1, dd1, aa1);
        let wall = wall_between(&self.v, &w, self.ctx).ok()??;
        wall.shape.crosses(self.s0).then_some((wall.shape, w))
    }
}

/// Every wall of `v` meeting the line `s = s0`, sorted by shape.
pub fn enumerate_walls_on_line(v: &MukaiVector, s0: &Rat, ctx: &Context) -> Result<Vec<Wall>> {
    enumerate_walls_on_line_with(v, s0, ctx, Exec::default())
}

pub fn enumerate_walls_on_line_with(v: &MukaiVector, s0: &Rat, ctx: &Context, exec: Exec) -> Result<Vec<Wall>> {
    v.int_parts()?;
    let sq = require_positive(v, ctx)?;
    let b = beta_data(v, s0, ctx);
    let bad = |reason| Error::BadCrossSection { s0: s0.to_string(), reason };
    if b.d.is_zero() {
        return Err(bad("d - r*s0 = 0"));
    }
    if b.a.is_zero() && b.r.is_zero() {
        return Err(bad("a_beta = 0 for a rank-zero vector"));
    }
    let flip = b.d.is_negative();
    let vv = if flip { -v } else { v.clone() };
    let sign = |x: Rat| if flip { -x } else { x };
    let sec = Section { v: vv, s0, r: sign(b.r), d: sign(b.d), a: sign(b.a), half_sq: (sq / int(2)).to_integer(), ctx };
    let q = s0.denom().clone();
    let top = (&sec.d * Rat::from_integer(q.clone())).to_integer();
    let mut cells = Vec::new();
    let mut j = BigInt::zero();
    while j <= top {
        let mut m1 = BigInt::zero();
        while m1 < sec.half_sq {
            cells.push((Rat::new(j.clone(), q.clone()), m1.clone()));
            m1 += 1;
        }
        j += 1;
    }
    let found = crate::flat_map_cells(exec, &cells, |(d1, m1)| sec.cell(d1, m1));
    let mut best = BTreeMap::new();
    for (shape, w) in found {
        let w = if flip { -w } else { w };
        keep_smallest(&mut best, (shape, w));
    }
    Ok(best.into_iter().map(|(shape, witness)| Wall { shape, witness, codim0: false, m: None }).collect())
}

fn require_non_square(pell: &PellContext) -> Result<()> {
    if crate::pell::is_square_case(pell.n(), pell.ell()) {
        return Err(Error::SquareCase { n: pell.n().to_string(), ell: pell.ell().to_string() });
    }
    Ok(())
}

/// `C_m` for `m` in `lo..=hi`.
pub fn codim0_walls(pell: &PellContext, lo: i64, hi: i64) -> Result<Vec<Wall>> {
    require_non_square(pell)?;
    let v = pell.v();
    let ctx = pell.ctx();
    let mut out = Vec::new();
    for m in lo..=hi {
        if m == 0 {
            out.push(Wall {
                shape: Shape::VLine { s: Rat::zero() },
                witness: MukaiVector::from_ints(1, 0, 0),
                codim0: true,
                m: Some(0),
            });
            continue;
        }
        let sol = pell.numerical_solution(m);
        let witness = if sol.sign > 0 { sol.v1 } else { sol.v2 };
        let mut wall = wall_between(&v, &witness, ctx)?
            .ok_or_else(|| Error::IntegralityViolation(format!("C_{m} witness {witness} fails")))?;
        let (mu1, mu2) = (pell.slope(m).expect("m != 0"), pell.slope_dual(m).expect("m != 0"));
        let half = (&mu1 - &mu2) / int(2);
        let expect = Shape::Circle { center: (mu1 + mu2) / int(2), radius_sq: &half * &half };
        if wall.shape != expect {
            return Err(Error::IntegralityViolation(format!("C_{m}: {} != {expect}", wall.shape)));
        }
        wall.codim0 = true;
        wall.m = Some(m);
        out.push(wall);
    }
    Ok(out)
}

/// The index `m` with `shape = C_m`, searching `|m| <= bound`.
pub fn is_codim0(shape: &Shape, pell: &PellContext, bound: i64) -> Option<i64> {
    if let Shape::VLine { s } = shape {
        return s.is_zero().then_some(0);
    }
    let walls = codim0_walls(pell, -bound, bound).ok()?;
    walls.into_iter().find(|w| &w.shape == shape).and_then(|w| w.m)
}

/// Walls strictly between `C_0` and `C_{-1}`, found on the line through the
/// right foot of `C_{-1}`, together with `C_0` and `C_{-1}`.
pub fn fundamental_walls(pell: &PellContext) -> Result<Vec<Wall>> {
    fundamental_walls_with(pell, Exec::default())
}

pub fn fundamental_walls_with(pell: &PellContext, exec: Exec) -> Result<Vec<Wall>> {
    let mut out = codim0_walls(pell, -1, 0)?;
    let s0 = pell.slope(-1).expect("m != 0");
    let between = enumerate_walls_on_line_with(&pell.v(), &s0, pell.ctx(), exec)?;
    let fresh: Vec<Wall> = between.into_iter().filter(|w| !out.iter().any(|c| c.shape == w.shape)).collect();
    out.extend(fresh);
    out.sort();
    Ok(out)
}

/// All walls of `v` meeting a line through a foot `+-sqrt(l/n)`, plus the
/// line `s = 0`, when `sqrt(l n)` is an integer.
pub fn square_case_walls(n: i64, ell: i64) -> Result<Vec<Wall>> {
    let ctx = Context::new(n)?;
    let (nb, lb) = (BigInt::from(n), BigInt::from(ell));
    if ell < 1 || !crate::pell::is_square_case(&nb, &lb) {
        return Err(Error::Precondition(format!("sqrt({ell}*{n}) is not an integer")));
    }
    let v = MukaiVector::from_ints(1, 0, -ell);
    let foot = rat_sqrt(&Rat::new(lb, nb)).expect("l/n is a square");
    let mut best = BTreeMap::new();
    for s0 in [-foot.clone(), foot] {
        for w in enumerate_walls_on_line(&v, &s0, &ctx)? {
            keep_smallest(&mut best, (w.shape, w.witness));
        }
    }
    let mut out: Vec<Wall> =
        best.into_iter().map(|(shape, witness)| Wall { shape, witness, codim0: false, m: None }).collect();
    let line = wall_between(&v, &MukaiVector::from_ints(1, 0, 0), &ctx)?.expect("s = 0 is a wall");
    out.push(Wall { codim0: true, m: Some(0), ..line });
    out.sort();
    Ok(out)
}

/// Codimension-0 walls for `m` in `lo..=hi` and the fundamental walls
/// carried by `A^j` into each gap `(C_j, C_{j-1})` with both ends in range.
pub fn wall_atlas(pell: &PellContext, lo: i64, hi: i64) -> Result<Vec<Wall>> {
    wall_atlas_with(pell, lo, hi, Exec::default())
}

pub fn wall_atlas_with(pell: &PellContext, lo: i64, hi: i64, exec: Exec) -> Result<Vec<Wall>> {
    let mut out = codim0_walls(pell, lo, hi)?;
    let base: Vec<Wall> = fundamental_walls_with(pell, exec)?.into_iter().filter(|w| !w.codim0).collect();
    let a = GMatrix::from_pell(pell.generator(), pell.ell(), pell.ctx())?;
    let v = pell.v();
    for j in (lo + 1)..=hi {
        let g = a.pow(j)?;
        for w in &base {
            out.push(transport_wall(w, &g, &v, pell.ctx())?);
        }
    }
    out.sort();
    out.dedup_by(|x, y| x.shape == y.shape);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChamberReport {
    OnWall(Wall),
    Gieseker,
    DualGieseker,
    Bounded { inner: Option<Wall>, outer: Option<Wall> },
}

/// Locates `(s, t^2)` among `walls`: the smallest circle enclosing the point
/// and the largest circle inside that one which leaves the point outside.
pub fn classify_point(v: &MukaiVector, s: &Rat, t_sq: &Rat, walls: &[Wall]) -> ChamberReport {
    if let Some(w) = walls.iter().find(|w| w.shape.contains_point(s, t_sq)) {
        return ChamberReport::OnWall(w.clone());
    }
    let radius = |w: &Wall| match &w.shape {
        Shape::Circle { radius_sq, .. } => radius_sq.clone(),
        Shape::VLine { .. } => Rat::zero(),
    };
    let outer = walls.iter().filter(|w| w.shape.encloses(s, t_sq)).min_by(|x, y| radius(x).cmp(&radius(y)));
    let Some(outer) = outer else {
        let d_beta = &v.d - Rat::from_integer(v.r.clone()) * s;
        return if d_beta.is_positive() { ChamberReport::Gieseker } else { ChamberReport::DualGieseker };
    };
    let inner = walls
        .iter()
        .filter(|w| w.shape != outer.shape && w.shape.nested_in(&outer.shape) && !w.shape.encloses(s, t_sq))
        .filter(|w| matches!(w.shape, Shape::Circle { .. }))
        .max_by(|x, y| radius(x).cmp(&radius(y)));
    ChamberReport::Bounded { inner: inner.cloned(), outer: Some(outer.clone()) }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WMaxReport {
    pub wall: Wall,
    pub lambda1: QnNumber,
    pub lambda2: QnNumber,
}

/// The outermost wall in `r s < d` and its feet `lambda1 < lambda2`.
pub fn w_max_report(v: &MukaiVector, walls: &[Wall]) -> Result<WMaxReport> {
    if !v.r.is_positive() {
        return Err(Error::Precondition("W^max needs positive rank".into()));
    }
    let p = &v.d / Rat::from_integer(v.r.clone());
    let wall = walls
        .iter()
        .filter_map(|w| match &w.shape {
            Shape::Circle { center, radius_sq } if *center < p => Some((radius_sq, w)),
            _ => None,
        })
        .max_by(|x, y| x.0.cmp(y.0))
        .map(|(_, w)| w.clone())
        .ok_or(Error::NoWalls)?;
    let (lambda1, lambda2) = wall.shape.feet().expect("circle");
    Ok(WMaxReport { wall, lambda1, lambda2 })
}

/// `gcd` of the entries of an integral vector.
pub fn content(v: &MukaiVector) -> Result<BigInt> {
    let (r, d, a) = v.int_parts()?;
    Ok(r.gcd(&d).gcd(&a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charge::{aligned, StabilityPoint};
    use crate::surd::rat;
    use proptest::prelude::*;

    fn c1() -> Context {
        Context::new(1).unwrap()
    }

    fn v(r: i64, d: i64, a: i64) -> MukaiVector {
        MukaiVector::from_ints(r, d, a)
    }

    fn circle(c: Rat, r2: Rat) -> Shape {
        Shape::Circle { center: c, radius_sq: r2 }
    }

    fn shapes(ws: &[Wall]) -> Vec<Shape> {
        ws.iter().map(|w| w.shape.clone()).collect()
    }

    #[test]
    fn wall_between_examples() {
        let c = c1();
        let w = wall_between(&v(1, 0, -3), &v(1, -1, 1), &c).unwrap().unwrap();
        assert_eq!(w.shape, circle(int(-2), int(1)));
        let w = wall_between(&v(1, 0, -2), &v(1, -1, 1), &c).unwrap().unwrap();
        assert_eq!(w.shape, circle(rat(-3, 2), rat(1, 4)));
        let w = wall_between(&v(1, 0, -4), &v(1, 0, -1), &c).unwrap().unwrap();
        assert_eq!(w.shape, Shape::VLine { s: int(0) });
        assert_eq!(wall_between(&v(1, 0, -2), &v(1, 0, 1), &c).unwrap(), None);
        assert!(matches!(wall_between(&v(1, 0, 1), &v(1, 0, 0), &c), Err(Error::DegenerateV(_))));
    }

    #[test]
    fn rank_zero_walls() {
        let c = c1();
        let v0 = v(0, 2, 1);
        let w = wall_between(&v0, &v(-1, 1, 0), &c).unwrap().unwrap();
        let Shape::Circle { center, .. } = &w.shape else { panic!() };
        assert_eq!(*center, rat(1, 4));
        let pt_s = center.clone();
        let Shape::Circle { radius_sq, .. } = &w.shape else { panic!() };
        let pt = StabilityPoint::new(pt_s, radius_sq.clone()).unwrap();
        assert!(aligned(&v0, &v(-1, 1, 0), &pt, &c));
        assert_eq!(wall_between(&v0, &v(0, 1, 0), &c).unwrap(), None);
    }

    #[test]
    fn pencil_examples() {
        let c = c1();
        assert_eq!(pencil(&v(1, 0, -3), &c).unwrap(), PencilData { p: int(0), q: int(3) });
        assert_eq!(pencil(&v(1, 1, 0), &c).unwrap(), PencilData { p: int(1), q: int(1) });
        assert_eq!(pencil(&v(2, 1, 0), &c).unwrap(), PencilData { p: rat(1, 2), q: rat(1, 4) });
        assert!(matches!(pencil(&v(0, 1, 1), &c), Err(Error::RankZero)));
    }

    #[test]
    fn enumeration_examples() {
        let c = c1();
        let ws = enumerate_walls_on_line(&v(1, 0, -3), &int(-2), &c).unwrap();
        assert_eq!(shapes(&ws), vec![circle(int(-2), int(1))]);
        assert_eq!(ws[0].witness, v(1, -1, 1));
        assert!(enumerate_walls_on_line(&v(1, 0, -2), &int(-1), &c).unwrap().is_empty());
        let ws = enumerate_walls_on_line(&v(1, 0, -4), &int(-2), &c).unwrap();
        assert_eq!(shapes(&ws), vec![circle(rat(-5, 2), rat(9, 4))]);
        assert_eq!(ws[0].witness, v(1, -1, 1));
        assert!(matches!(enumerate_walls_on_line(&v(1, 0, -2), &int(0), &c), Err(Error::BadCrossSection { .. })));
    }

    #[test]
    fn sequential_matches_parallel() {
        let c = Context::new(2).unwrap();
        let vv = v(2, 1, -7);
        let s0 = rat(-3, 2);
        let a = enumerate_walls_on_line_with(&vv, &s0, &c, Exec::Sequential).unwrap();
        let b = enumerate_walls_on_line_with(&vv, &s0, &c, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fundamental_examples() {
        let p = PellContext::new(1, 2).unwrap();
        let ws = fundamental_walls(&p).unwrap();
        assert_eq!(shapes(&ws), vec![circle(rat(-3, 2), rat(1, 4)), Shape::VLine { s: int(0) }]);
        assert!(ws.iter().all(|w| w.codim0));
        let p = PellContext::new(1, 3).unwrap();
        let ws = fundamental_walls(&p).unwrap();
        let between: Vec<_> = ws.iter().filter(|w| !w.codim0).collect();
        assert_eq!(between.len(), 1);
        assert_eq!(between[0].shape, circle(int(-2), int(1)));
        assert!(ws.iter().any(|w| w.shape == circle(rat(-7, 4), rat(1, 16)) && w.m == Some(-1)));
        let p = PellContext::new(1, 5).unwrap();
        let c5 = codim0_walls(&p, -1, -1).unwrap();
        assert_eq!(c5[0].shape, circle(rat(-9, 4), rat(1, 16)));
    }

    #[test]
    fn codim0_examples() {
        let p = PellContext::new(1, 2).unwrap();
        assert_eq!(codim0_walls(&p, -1, -1).unwrap()[0].shape, circle(rat(-3, 2), rat(1, 4)));
        let p6 = PellContext::new(1, 6).unwrap();
        assert_eq!(codim0_walls(&p6, -1, -1).unwrap()[0].shape, circle(rat(-49, 20), rat(1, 400)));
        assert_eq!(codim0_walls(&p6, 0, 0).unwrap()[0].shape, Shape::VLine { s: int(0) });
        let p3 = PellContext::new(1, 3).unwrap();
        assert_eq!(is_codim0(&circle(rat(-7, 4), rat(1, 16)), &p3, 5), Some(-1));
        assert_eq!(is_codim0(&circle(int(-2), int(1)), &p3, 5), None);
        assert_eq!(is_codim0(&Shape::VLine { s: int(0) }, &p, 5), Some(0));
        assert!(codim0_walls(&PellContext::new(1, 3).unwrap(), 0, 0).is_ok());
    }

    #[test]
    fn atlas_transport() {
        let p3 = PellContext::new(1, 3).unwrap();
        let ws = wall_atlas(&p3, -2, 0).unwrap();
        assert!(ws.iter().any(|w| w.shape == circle(rat(-26, 15), rat(1, 225))));
        for (i, a) in ws.iter().enumerate() {
            for b in &ws[i + 1..] {
                assert!(!shapes_meet(&a.shape, &b.shape), "{a} meets {b}");
            }
        }
        let pen = pencil(&p3.v(), p3.ctx()).unwrap();
        assert!(ws.iter().all(|w| pen.contains(&w.shape)));
    }

    #[test]
    fn atlas_matches_direct_enumeration() {
        // walls between C_{-1} and C_{-2} all cross the right foot of C_{-2}
        for ell in [2, 3, 5, 6, 7] {
            let p = PellContext::new(1, ell).unwrap();
            let atlas = wall_atlas(&p, -2, 0).unwrap();
            let c1 = codim0_walls(&p, -1, -1).unwrap().remove(0);
            let s0 = p.slope(-2).unwrap();
            let direct = enumerate_walls_on_line(&p.v(), &s0, p.ctx()).unwrap();
            let mut expect: Vec<Shape> =
                direct.into_iter().map(|w| w.shape).filter(|s| s.nested_in(&c1.shape) && *s != c1.shape).collect();
            expect.sort();
            let mut got: Vec<Shape> = atlas
                .iter()
                .filter(|w| w.m.is_none() && w.shape.nested_in(&c1.shape))
                .map(|w| w.shape.clone())
                .collect();
            got.sort();
            assert_eq!(got, expect, "ell = {ell}");
        }
    }

    #[test]
    fn square_cases() {
        let ws = square_case_walls(1, 4).unwrap();
        assert_eq!(
            shapes(&ws),
            vec![circle(rat(-5, 2), rat(9, 4)), circle(rat(5, 2), rat(9, 4)), Shape::VLine { s: int(0) }]
        );
        let ws = square_case_walls(1, 1).unwrap();
        assert_eq!(shapes(&ws), vec![Shape::VLine { s: int(0) }]);
        assert!(square_case_walls(1, 2).is_err());
        let p = PellContext::new(1, 4);
        assert!(matches!(p, Err(Error::SquareCase { .. })));
    }

    #[test]
    fn classification() {
        let p = PellContext::new(1, 2).unwrap();
        let ws = wall_atlas(&p, -3, 0).unwrap();
        let vv = p.v();
        assert_eq!(classify_point(&vv, &rat(-1, 10), &int(1), &ws), ChamberReport::Gieseker);
        let on = classify_point(&vv, &rat(-3, 2), &rat(1, 4), &ws);
        assert!(matches!(on, ChamberReport::OnWall(w) if w.m == Some(-1)));
        let ChamberReport::Bounded { inner, outer } = classify_point(&vv, &rat(-3, 2), &rat(1, 100), &ws) else {
            panic!()
        };
        assert_eq!(outer.unwrap().m, Some(-1));
        assert_eq!(inner.unwrap().m, Some(-2));
        assert_eq!(classify_point(&vv, &int(3), &int(20), &ws), ChamberReport::DualGieseker);
    }

    #[test]
    fn w_max_examples() {
        let p2 = PellContext::new(1, 2).unwrap();
        let r = w_max_report(&p2.v(), &wall_atlas(&p2, -2, 0).unwrap()).unwrap();
        assert_eq!((r.lambda1, r.lambda2), (QnNumber::from_rat(int(-2)), QnNumber::from_rat(int(-1))));
        let p3 = PellContext::new(1, 3).unwrap();
        let r = w_max_report(&p3.v(), &wall_atlas(&p3, -2, 0).unwrap()).unwrap();
        assert_eq!(r.wall.shape, circle(int(-2), int(1)));
        assert_eq!((r.lambda1, r.lambda2), (QnNumber::from_rat(int(-3)), QnNumber::from_rat(int(-1))));
        let r = w_max_report(&v(1, 0, -4), &square_case_walls(1, 4).unwrap()).unwrap();
        assert_eq!((r.lambda1, r.lambda2), (QnNumber::from_rat(int(-4)), QnNumber::from_rat(int(-1))));
        assert!(matches!(w_max_report(&v(1, 0, -2), &[]), Err(Error::NoWalls)));
    }

    #[test]
    fn endpoints_in_every_circle() {
        let c = Context::new(2).unwrap();
        let vv = v(2, 1, -7);
        let pen = pencil(&vv, &c).unwrap();
        let mut ws = Vec::new();
        for k in -8..=-1 {
            ws.extend(enumerate_walls_on_line(&vv, &rat(k, 2), &c).unwrap());
        }
        assert!(!ws.is_empty());
        assert!(ws.iter().all(|w| pen.endpoint_contained(&w.shape) && pen.contains(&w.shape)));
    }

    #[test]
    fn meet_predicate() {
        assert!(shapes_meet(&circle(int(0), int(4)), &circle(int(3), int(4))));
        assert!(!shapes_meet(&circle(int(0), int(1)), &circle(int(2), int(1))));
        assert!(!shapes_meet(&circle(int(0), int(4)), &circle(rat(1, 2), rat(1, 4))));
        assert!(shapes_meet(&circle(int(0), int(1)), &Shape::VLine { s: rat(1, 2) }));
        assert!(!shapes_meet(&circle(int(0), int(1)), &Shape::VLine { s: int(1) }));
    }

    fn small_vec(b: i64) -> impl Strategy<Value = MukaiVector> {
        (-b..=b, -b..=b, -b..=b).prop_map(|(r, d, a)| MukaiVector::from_ints(r, d, a))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn aligned_iff_on_wall(vv in small_vec(4), w in small_vec(4), n in 1i64..=3, s in -8i64..=8, t in 1i64..=6) {
            let c = Context::new(n).unwrap();
            prop_assume!(square(&vv, &c).is_positive());
            let Some(wall) = wall_between(&vv, &w, &c).unwrap() else { return Ok(()) };
            let s = rat(s, 4);
            if let Shape::Circle { center, radius_sq } = &wall.shape {
                let ds = &s - center;
                let t_sq = radius_sq - &ds * &ds;
                if t_sq.is_positive() {
                    let pt = StabilityPoint::new(s.clone(), t_sq).unwrap();
                    prop_assert!(aligned(&vv, &w, &pt, &c));
                }
            }
            let t_sq = rat(t, 3);
            let pt = StabilityPoint::new(s.clone(), t_sq.clone()).unwrap();
            prop_assert_eq!(aligned(&vv, &w, &pt, &c), wall.shape.contains_point(&s, &t_sq));
        }

        #[test]
        fn walls_lie_in_pencil(vv in small_vec(5), w in small_vec(5), n in 1i64..=3) {
            let c = Context::new(n).unwrap();
            prop_assume!(square(&vv, &c).is_positive() && !vv.r.is_zero());
            if let Some(wall) = wall_between(&vv, &w, &c).unwrap() {
                let pen = pencil(&vv, &c).unwrap();
                prop_assert!(pen.contains(&wall.shape));
                prop_assert!(pen.endpoint_contained(&wall.shape));
            }
        }

        #[test]
        fn negation_symmetry(vv in small_vec(4), w in small_vec(4)) {
            let c = c1();
            prop_assume!(square(&vv, &c).is_positive());
            let a = wall_between(&vv, &w, &c).unwrap().map(|x| x.shape);
            let b = wall_between(&-&vv, &-&w, &c).unwrap().map(|x| x.shape);
            prop_assert_eq!(a, b);
        }

        #[test]
        fn enumerated_walls_disjoint(vv in small_vec(4), n in 1i64..=2, s in -6i64..=6) {
            let c = Context::new(n).unwrap();
            let s0 = rat(s, 2);
            prop_assume!(square(&vv, &c).is_positive());
            let Ok(ws) = enumerate_walls_on_line(&vv, &s0, &c) else { return Ok(()) };
            for (i, a) in ws.iter().enumerate() {
                prop_assert!(a.shape.crosses(&s0));
                for b in &ws[i + 1..] {
                    prop_assert!(!shapes_meet(&a.shape, &b.shape));
                }
            }
        }
    }
}
