//! Surd matrices in the group `G^` and their actions: the right action on
//! Mukai vectors through `Sym_2(Z, n)`, the Mobius action on the upper
//! half-plane, and the wall-swapping maps `Psi_m`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Context, MukaiVector};
use crate::pell::{PellContext, PellMatrix};
use crate::surd::{is_integer, squarefree_split, QnComplex, QnNumber, Rat, Surd};
use crate::walls::{wall_between, Wall};

/// `(a, b; c, d)` with `a, d` in `Z sqrt(r)`, `b, c` in `Z sqrt(s)`, `rs = n`,
/// determinant `+-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GMatrix {
    a: Surd,
    b: Surd,
    c: Surd,
    d: Surd,
    det: i32,
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let nn = n.to_u64().expect("n fits in u64");
    (1..=nn).filter(|r| nn.is_multiple_of(*r)).map(BigInt::from).collect()
}

fn on_line(x: &Surd, r: &BigInt) -> bool {
    if x.is_zero() {
        return true;
    }
    let q = x.checked_div(&Surd::sqrt_of(r)).expect("sqrt(r) nonzero");
    q.as_rational().is_some_and(is_integer)
}

fn add(x: &Surd, y: &Surd) -> Result<Surd> {
    x.checked_add(y).map_err(|e| Error::NotInGHat(e.to_string()))
}

impl GMatrix {
    pub fn new(a: Surd, b: Surd, c: Surd, d: Surd, ctx: &Context) -> Result<GMatrix> {
        let det = add(&(&a * &d), &-(&b * &c))?;
        let det = match det.as_rational() {
            Some(q) if q.is_one() => 1,
            Some(q) if (-q).is_one() => -1,
            _ => return Err(Error::NotInGHat(format!("determinant {det}"))),
        };
        let n = ctx.n();
        let shaped = divisors(n).iter().any(|r| {
            let s = n / r;
            on_line(&a, r) && on_line(&d, r) && on_line(&b, &s) && on_line(&c, &s)
        });
        if !shaped {
            return Err(Error::NotInGHat(format!("({a}, {b}; {c}, {d})")));
        }
        Ok(GMatrix { a, b, c, d, det })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64, ctx: &Context) -> Result<GMatrix> {
        GMatrix::new(Surd::from_int(a), Surd::from_int(b), Surd::from_int(c), Surd::from_int(d), ctx)
    }

    pub fn identity() -> GMatrix {
        GMatrix { a: Surd::from_int(1), b: Surd::zero(), c: Surd::zero(), d: Surd::from_int(1), det: 1 }
    }

    /// `diag(1, -1)`.
    pub fn delta() -> GMatrix {
        GMatrix { a: Surd::from_int(1), b: Surd::zero(), c: Surd::zero(), d: Surd::from_int(-1), det: -1 }
    }

    pub fn from_pell(p: &PellMatrix, ell: &BigInt, ctx: &Context) -> Result<GMatrix> {
        let [a, b, c, d] = p.entries(ell);
        GMatrix::new(a, b, c, d, ctx)
    }

    pub fn entries(&self) -> [&Surd; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> i32 {
        self.det
    }

    pub fn mul(&self, o: &GMatrix) -> Result<GMatrix> {
        let a = add(&(&self.a * &o.a), &(&self.b * &o.c))?;
        let b = add(&(&self.a * &o.b), &(&self.b * &o.d))?;
        let c = add(&(&self.c * &o.a), &(&self.d * &o.c))?;
        let d = add(&(&self.c * &o.b), &(&self.d * &o.d))?;
        Ok(GMatrix { a, b, c, d, det: self.det * o.det })
    }

    pub fn inv(&self) -> GMatrix {
        let e = Rat::from_integer(BigInt::from(self.det));
        GMatrix {
            a: self.d.scale(&e),
            b: self.b.scale(&-e.clone()),
            c: self.c.scale(&-e.clone()),
            d: self.a.scale(&e),
            det: self.det,
        }
    }

    pub fn neg(&self) -> GMatrix {
        GMatrix { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d, det: self.det }
    }

    pub fn pow(&self, m: i64) -> Result<GMatrix> {
        let step = if m >= 0 { self.clone() } else { self.inv() };
        let mut acc = GMatrix::identity();
        for _ in 0..m.unsigned_abs() {
            acc = acc.mul(&step)?;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> GMatrix {
        GMatrix { a: self.a.clone(), b: self.c.clone(), c: self.b.clone(), d: self.d.clone(), det: self.det }
    }

    pub fn eq_up_to_sign(&self, o: &GMatrix) -> bool {
        self == o || &self.neg() == o
    }
}

impl fmt::Display for GMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.a, self.b, self.c, self.d)
    }
}

/// Parses `a,b;c,d` with surd entries.
pub fn parse_gmatrix(s: &str, ctx: &Context) -> Result<GMatrix> {
    let rows: Vec<&str> = s.split(';').collect();
    let bad = || Error::Parse(format!("expected `a,b;c,d`, got `{s}`"));
    if rows.len() != 2 {
        return Err(bad());
    }
    let mut e = Vec::with_capacity(4);
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        if cols.len() != 2 {
            return Err(bad());
        }
        for c in cols {
            e.push(c.parse::<Surd>()?);
        }
    }
    let d = e.pop().unwrap();
    let c = e.pop().unwrap();
    let b = e.pop().unwrap();
    let a = e.pop().unwrap();
    GMatrix::new(a, b, c, d, ctx)
}

/// `v . g = iota^{-1}(g^t iota(v) g)`.
pub fn act_on_vector(v: &MukaiVector, g: &GMatrix, ctx: &Context) -> Result<MukaiVector> {
    let (r, d, a) = v.int_parts()?;
    let sqrt_n = Surd::sqrt_of(ctx.n());
    let m = [
        [Surd::rational(Rat::from_integer(r)), sqrt_n.scale(&Rat::from_integer(d.clone()))],
        [sqrt_n.scale(&Rat::from_integer(d)), Surd::rational(Rat::from_integer(a))],
    ];
    let gm = [[&g.a, &g.b], [&g.c, &g.d]];
    let violation = |e: Error| Error::IntegralityViolation(e.to_string());
    let mut t = [[Surd::zero(), Surd::zero()], [Surd::zero(), Surd::zero()]];
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = Surd::zero();
            for k in 0..2 {
                for l in 0..2 {
                    let term = &(gm[k][i] * &m[k][l]) * gm[l][j];
                    acc = acc.checked_add(&term).map_err(violation)?;
                }
            }
            t[i][j] = acc;
        }
    }
    let bad = || Error::IntegralityViolation(format!("{v} acted on by ({g})"));
    let x = t[0][0].as_rational().filter(|q| is_integer(q)).ok_or_else(bad)?.clone();
    let z = t[1][1].as_rational().filter(|q| is_integer(q)).ok_or_else(bad)?.clone();
    let y = t[0][1].checked_div(&sqrt_n).map_err(violation)?;
    let y = y.as_rational().filter(|q| is_integer(q)).ok_or_else(bad)?.clone();
    if t[0][1] != t[1][0] {
        return Err(bad());
    }
    Ok(MukaiVector::new(x.to_integer(), y, z))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conversion {
    /// `(a, b; c, d) -> (d, b; c, a)`: reversed transform, and the
    /// dictionary between the two matrix conventions.
    Swap,
    /// `(a, b; c, d) -> (d, -b; -c, a)`: reversed transform with dual kernel.
    SwapDual,
    /// `(a, b; c, d) -> (a, -b; -c, d)`: dual kernel.
    Dual,
}

pub fn theta_phi_convert(g: &GMatrix, how: Conversion) -> GMatrix {
    let (a, b, c, d) = (g.a.clone(), g.b.clone(), g.c.clone(), g.d.clone());
    match how {
        Conversion::Swap => GMatrix { a: d, b, c, d: a, det: g.det },
        Conversion::SwapDual => GMatrix { a: d, b: -b, c: -c, d: a, det: g.det },
        Conversion::Dual => GMatrix { a, b: -b, c: -c, d, det: g.det },
    }
}

fn field_of(ctx: &Context) -> BigInt {
    squarefree_split(ctx.n()).1
}

fn into_field(x: &Surd, k: &BigInt) -> Result<QnNumber> {
    x.in_field(k).ok_or_else(|| Error::NotInGHat(format!("{x} outside Q(sqrt({k}))")))
}

/// `g . z`; elements of determinant `-1` act through `z -> conj(z)` first,
/// so `Delta . z = -conj(z)`.
pub fn mobius(g: &GMatrix, z: &QnComplex, ctx: &Context) -> Result<QnComplex> {
    if z.im.signum() <= 0 {
        return Err(Error::Precondition("z must lie in the upper half-plane".into()));
    }
    let w = if g.det < 0 { z.conj() } else { z.clone() };
    let k = field_of(ctx);
    let pivot = [&g.a, &g.d, &g.b, &g.c].into_iter().find(|e| !e.is_zero()).expect("nonsingular matrix");
    let clear = Surd::sqrt_of(pivot.rad());
    let e = |x: &Surd| into_field(&(x * &clear), &k);
    let (a, b, c, d) = (e(&g.a)?, e(&g.b)?, e(&g.c)?, e(&g.d)?);
    let num = &w.scale(&a) + &QnComplex::real(b);
    let den = &w.scale(&c) + &QnComplex::real(d);
    let out = num.checked_div(&den)?;
    if out.im.signum() <= 0 {
        return Err(Error::LowerHalfPlane);
    }
    Ok(out)
}

/// `Z_z(v) = <e^{(z/sqrt(n))H}, v> = -a + 2n d x - n r x^2`, `x = z/sqrt(n)`.
pub fn charge_at(v: &MukaiVector, z: &QnComplex, ctx: &Context) -> QnComplex {
    let n = ctx.nq();
    let inv_sqrt_n = QnNumber::new(Rat::zero(), Rat::one() / &n, ctx.n());
    let x = z.scale(&inv_sqrt_n);
    let two_n_d = QnNumber::from_rat(Rat::from_integer(BigInt::from(2)) * &n * &v.d);
    let n_r = QnNumber::from_rat(&n * Rat::from_integer(v.r.clone()));
    let lin = x.scale(&two_n_d);
    let quad = (&x * &x).scale(&n_r);
    &(&QnComplex::real(QnNumber::from_rat(-v.a.clone())) + &lin) - &quad
}

/// `(cz + d)^2`, expanded so that each coefficient is in Q(sqrt(n)).
fn automorphy_sq(g: &GMatrix, z: &QnComplex, ctx: &Context) -> Result<QnComplex> {
    let k = field_of(ctx);
    let cc = into_field(&(&g.c * &g.c), &k)?;
    let cd2 = into_field(&(&g.c * &g.d).scale(&Rat::from_integer(BigInt::from(2))), &k)?;
    let dd = into_field(&(&g.d * &g.d), &k)?;
    Ok(&(&(z * z).scale(&cc) + &z.scale(&cd2)) + &QnComplex::real(dd))
}

/// Checks `-(cz + d)^2 Z_{g.z}(w) = Z_z(v)` with `w = -(v . theta)`.
pub fn charge_compat_with(g: &GMatrix, theta: &GMatrix, v: &MukaiVector, z: &QnComplex, ctx: &Context) -> Result<bool> {
    let gz = mobius(g, z, ctx)?;
    let w = -act_on_vector(v, theta, ctx)?;
    let j = automorphy_sq(g, z, ctx)?;
    let lhs = -(&j * &charge_at(&w, &gz, ctx));
    Ok(lhs == charge_at(v, z, ctx))
}

/// The compatibility for `g` in `G`, with `theta` the diagonal swap of `g`.
pub fn charge_compat_check(g: &GMatrix, v: &MukaiVector, z: &QnComplex, ctx: &Context) -> Result<bool> {
    if g.det != 1 {
        return Err(Error::Precondition("charge compatibility needs det = 1".into()));
    }
    charge_compat_with(g, &theta_phi_convert(g, Conversion::Swap), v, z, ctx)
}

/// Is `diag(sqrt(n), 1)^{-1} g diag(sqrt(n), 1)` in `Gamma_0(n)`?
pub fn gamma0_check(g: &GMatrix, ctx: &Context) -> bool {
    if g.det != 1 {
        return false;
    }
    let sqrt_n = Surd::sqrt_of(ctx.n());
    let int_of = |x: Surd| x.as_rational().filter(|q| is_integer(q)).map(|q| q.to_integer());
    let entries = [
        int_of(g.a.clone()),
        g.b.checked_div(&sqrt_n).ok().and_then(int_of),
        int_of(&g.c * &sqrt_n),
        int_of(g.d.clone()),
    ];
    match entries {
        [Some(_), Some(_), Some(c), Some(_)] => (c % ctx.n()).is_zero(),
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FmDescriptor {
    pub matrix: GMatrix,
    pub contravariant: bool,
    /// Shift applied after dualizing: `+1` for `m < 0`, `-1` for `m > 0`.
    pub shift_note: i32,
}

/// `theta(Psi_m) = A^{-m} Delta A^m`.
pub fn psi_map(pell: &PellContext, m: i64) -> Result<FmDescriptor> {
    let a = GMatrix::from_pell(pell.generator(), pell.ell(), pell.ctx())?;
    let am = a.pow(m)?;
    let matrix = am.inv().mul(&GMatrix::delta())?.mul(&am)?;
    Ok(FmDescriptor { matrix, contravariant: true, shift_note: -(m.signum() as i32) })
}

/// Image of a wall for `v` under `g`, assuming `v . g = +-v`.
pub fn transport_wall(wall: &Wall, g: &GMatrix, v: &MukaiVector, ctx: &Context) -> Result<Wall> {
    let vg = act_on_vector(v, g, ctx)?;
    let sign = if &vg == v {
        false
    } else if vg == -v {
        true
    } else {
        return Err(Error::Precondition(format!("matrix does not fix +-{v}")));
    };
    let w = act_on_vector(&wall.witness, g, ctx)?;
    let w = if sign { -w } else { w };
    let mut out = wall_between(v, &w, ctx)?
        .ok_or_else(|| Error::IntegralityViolation(format!("image of witness {w} is not a wall")))?;
    out.codim0 = wall.codim0;
    Ok(out)
}

pub fn psi_apply_to_wall(psi: &FmDescriptor, m: i64, wall: &Wall, pell: &PellContext) -> Result<Wall> {
    let mut out = transport_wall(wall, &psi.matrix, &pell.v(), pell.ctx())?;
    out.m = wall.m.map(|j| 2 * m - j);
    Ok(out)
}

/// `(s', t'^2)` for the transform attached to `r_1 e^{lambda H}`.
pub fn param_transform(lambda: &Rat, r1: &BigInt, s: &Rat, t_sq: &Rat, ctx: &Context) -> Result<(Rat, Rat)> {
    let ds = lambda - s;
    let rho = &ds * &ds + t_sq;
    if rho.is_zero() {
        return Err(Error::SamePoint);
    }
    if r1.is_zero() {
        return Err(Error::Precondition("r1 must be nonzero".into()));
    }
    let h2 = Rat::from_integer(BigInt::from(2)) * ctx.nq();
    let scale = Rat::from_integer(r1.abs()) * &rho * &h2;
    let s2 = Rat::from_integer(BigInt::from(2)) * &ds / &scale;
    let t2 = Rat::from_integer(BigInt::from(4)) * t_sq / (&scale * &scale);
    Ok((s2, t2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiskSide {
    Inside,
    Boundary,
    Outside,
}

/// Position relative to the closed disk bounded by `C_{v,lambda}`, and of the
/// transformed point relative to the half-plane `-(|r1| a_g / d_g) s' >= 1`.
pub fn half_plane_sides(
    v: &MukaiVector,
    lambda: &Rat,
    r1: &BigInt,
    s: &Rat,
    t_sq: &Rat,
    ctx: &Context,
) -> Result<(DiskSide, DiskSide)> {
    let g = crate::lattice::beta_data(v, lambda, ctx);
    if g.d.is_zero() {
        return Err(Error::DegenerateGamma);
    }
    let h2 = Rat::from_integer(BigInt::from(2)) * ctx.nq();
    let off = &g.a / (&g.d * &h2);
    let center = lambda + &off;
    let disk = (s - &center) * (s - &center) + t_sq - &off * &off;
    let (s2, _) = param_transform(lambda, r1, s, t_sq, ctx)?;
    let half = -(Rat::from_integer(r1.abs()) * &g.a / &g.d) * s2 - Rat::one();
    let side = |x: Rat, inside_negative: bool| {
        if x.is_zero() {
            DiskSide::Boundary
        } else if x.is_negative() == inside_negative {
            DiskSide::Inside
        } else {
            DiskSide::Outside
        }
    };
    Ok((side(disk, true), side(half, false)))
}

pub fn half_plane_image_check(
    v: &MukaiVector,
    lambda: &Rat,
    r1: &BigInt,
    s: &Rat,
    t_sq: &Rat,
    ctx: &Context,
) -> Result<bool> {
    let (a, b) = half_plane_sides(v, lambda, r1, s, t_sq, ctx)?;
    Ok(a == b)
}
