//! The algebraic Mukai lattice of an abelian surface with NS = ZH.
//!
//! A vector `(r, d, a)` stands for `r + dH + a*rho`. With `n = (H^2)/2` the
//! pairing is `<v, w> = 2n*d_v*d_w - (r_v*a_w + r_w*a_v)`. Twisted vectors
//! carry rational `d` and `a`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::surd::{is_integer, parse_rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Context {
    n: BigInt,
}

impl Context {
    pub fn new(n: i64) -> Result<Context> {
        Context::from_big(BigInt::from(n))
    }

    pub fn from_big(n: BigInt) -> Result<Context> {
        if n < BigInt::one() {
            return Err(Error::Precondition(format!("n must be >= 1, got {n}")));
        }
        Ok(Context { n })
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn nq(&self) -> Rat {
        Rat::from_integer(self.n.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MukaiVector {
    pub r: BigInt,
    pub d: Rat,
    pub a: Rat,
}

impl MukaiVector {
    pub fn new(r: BigInt, d: Rat, a: Rat) -> MukaiVector {
        MukaiVector { r, d, a }
    }

    pub fn from_ints(r: i64, d: i64, a: i64) -> MukaiVector {
        MukaiVector { r: BigInt::from(r), d: Rat::from_integer(BigInt::from(d)), a: Rat::from_integer(BigInt::from(a)) }
    }

    /// The class of a point.
    pub fn rho() -> MukaiVector {
        MukaiVector::from_ints(0, 0, 1)
    }

    /// `e^{sH} = (1, s, n s^2)`.
    pub fn exp(s: &Rat, ctx: &Context) -> MukaiVector {
        MukaiVector { r: BigInt::one(), d: s.clone(), a: ctx.nq() * s * s }
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.d.is_zero() && self.a.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        is_integer(&self.d) && is_integer(&self.a)
    }

    pub fn scale(&self, k: &BigInt) -> MukaiVector {
        let q = Rat::from_integer(k.clone());
        MukaiVector { r: &self.r * k, d: &self.d * &q, a: &self.a * &q }
    }

    fn require_integral(&self) -> Result<()> {
        if self.is_integral() {
            Ok(())
        } else {
            Err(Error::NonIntegral(self.to_string()))
        }
    }

    /// Integer entries `(r, d, a)`; fails on twisted vectors.
    pub fn int_parts(&self) -> Result<(BigInt, BigInt, BigInt)> {
        self.require_integral()?;
        Ok((self.r.clone(), self.d.to_integer(), self.a.to_integer()))
    }

    /// Proportional as rational triples.
    pub fn is_proportional(&self, w: &MukaiVector) -> bool {
        let (r1, r2) = (Rat::from_integer(self.r.clone()), Rat::from_integer(w.r.clone()));
        &r1 * &w.d == &r2 * &self.d && &r1 * &w.a == &r2 * &self.a && &self.d * &w.a == &w.d * &self.a
    }
}

impl Add<&MukaiVector> for &MukaiVector {
    type Output = MukaiVector;
    fn add(self, w: &MukaiVector) -> MukaiVector {
        MukaiVector { r: &self.r + &w.r, d: &self.d + &w.d, a: &self.a + &w.a }
    }
}

impl Sub<&MukaiVector> for &MukaiVector {
    type Output = MukaiVector;
    fn sub(self, w: &MukaiVector) -> MukaiVector {
        MukaiVector { r: &self.r - &w.r, d: &self.d - &w.d, a: &self.a - &w.a }
    }
}

impl Neg for &MukaiVector {
    type Output = MukaiVector;
    fn neg(self) -> MukaiVector {
        MukaiVector { r: -&self.r, d: -&self.d, a: -&self.a }
    }
}

impl Neg for MukaiVector {
    type Output = MukaiVector;
    fn neg(self) -> MukaiVector {
        -&self
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.r, self.d, self.a)
    }
}

impl FromStr for MukaiVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<MukaiVector> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected r,d,a, got `{s}`")));
        }
        let r = parse_rat(parts[0])?;
        if !is_integer(&r) {
            return Err(Error::Parse(format!("rank must be an integer in `{s}`")));
        }
        Ok(MukaiVector { r: r.to_integer(), d: parse_rat(parts[1])?, a: parse_rat(parts[2])? })
    }
}

pub fn pairing(v: &MukaiVector, w: &MukaiVector, ctx: &Context) -> Rat {
    let two_n = ctx.nq() * Rat::from_integer(BigInt::from(2));
    two_n * &v.d * &w.d - (Rat::from_integer(v.r.clone()) * &w.a + Rat::from_integer(w.r.clone()) * &v.a)
}

/// `<v^2>`.
pub fn square(v: &MukaiVector, ctx: &Context) -> Rat {
    pairing(v, v, ctx)
}

/// `v * e^{sH} = (r, d + rs, a + 2nds + nrs^2)`.
pub fn twist(v: &MukaiVector, s: &Rat, ctx: &Context) -> MukaiVector {
    let n = ctx.nq();
    let r = Rat::from_integer(v.r.clone());
    MukaiVector {
        r: v.r.clone(),
        d: &v.d + &r * s,
        a: &v.a + Rat::from_integer(BigInt::from(2)) * &n * &v.d * s + n * r * s * s,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaData {
    pub r: Rat,
    pub d: Rat,
    pub a: Rat,
}

/// `(r_beta, d_beta, a_beta)` at `beta = sH`, i.e. the entries of `v * e^{-sH}`.
pub fn beta_data(v: &MukaiVector, s: &Rat, ctx: &Context) -> BetaData {
    let t = twist(v, &-s, ctx);
    debug_assert_eq!(t.a, -pairing(v, &MukaiVector::exp(s, ctx), ctx));
    BetaData { r: Rat::from_integer(t.r), d: t.d, a: t.a }
}

pub fn is_positive(v: &MukaiVector) -> bool {
    if !v.r.is_zero() {
        v.r.is_positive()
    } else if !v.d.is_zero() {
        v.d.is_positive()
    } else {
        v.a.is_positive()
    }
}

pub fn is_isotropic(v: &MukaiVector, ctx: &Context) -> bool {
    square(v, ctx).is_zero()
}

pub fn is_primitive(v: &MukaiVector) -> Result<bool> {
    let (r, d, a) = v.int_parts()?;
    Ok(r.gcd(&d).gcd(&a).is_one())
}

/// The matrix `(x, y*sqrt(n); y*sqrt(n), z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sym2Form {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

impl Sym2Form {
    pub fn to_vector(&self) -> MukaiVector {
        MukaiVector { r: self.x.clone(), d: Rat::from_integer(self.y.clone()), a: Rat::from_integer(self.z.clone()) }
    }
}

pub fn to_sym2(v: &MukaiVector) -> Result<Sym2Form> {
    let (x, y, z) = v.int_parts()?;
    Ok(Sym2Form { x, y, z })
}

/// `B(X1, X2) = 2n*y1*y2 - (x1*z2 + z1*x2)`.
pub fn sym2_form(p: &Sym2Form, q: &Sym2Form, ctx: &Context) -> BigInt {
    BigInt::from(2) * ctx.n() * &p.y * &q.y - (&p.x * &q.z + &p.z * &q.x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surd::int;

    fn v(r: i64, d: i64, a: i64) -> MukaiVector {
        MukaiVector::from_ints(r, d, a)
    }

    #[test]
    fn pairing_examples() {
        let c = Context::new(1).unwrap();
        assert_eq!(pairing(&v(1, 0, -2), &v(1, 0, -2), &c), int(4));
        assert_eq!(pairing(&MukaiVector::rho(), &MukaiVector::rho(), &c), int(0));
        assert_eq!(pairing(&v(1, -1, 1), &v(1, -2, 4), &c), int(-1));
    }

    #[test]
    fn twist_examples() {
        let c = Context::new(1).unwrap();
        assert_eq!(twist(&v(1, 0, -3), &int(2), &c), v(1, 2, 1));
        assert_eq!(twist(&MukaiVector::rho(), &int(7), &c), MukaiVector::rho());
        let w = twist(&v(1, 0, -2), &int(-2), &c);
        assert_eq!(w, v(1, -2, 2));
        assert_eq!(square(&w, &c), int(4));
    }

    #[test]
    fn beta_data_examples() {
        let c = Context::new(1).unwrap();
        let b = beta_data(&v(1, 0, -3), &int(-2), &c);
        assert_eq!((b.r, b.d, b.a), (int(1), int(2), int(1)));
        let b = beta_data(&MukaiVector::rho(), &int(5), &c);
        assert_eq!((b.r, b.d, b.a), (int(0), int(0), int(1)));
    }

    #[test]
    fn predicates() {
        let c = Context::new(1).unwrap();
        let u = v(1, -1, 1);
        assert!(is_positive(&u) && is_isotropic(&u, &c) && is_primitive(&u).unwrap());
        let p = v(0, 0, 5);
        assert!(is_positive(&p) && is_isotropic(&p, &c) && !is_primitive(&p).unwrap());
        assert!(!is_positive(&v(-1, 0, 0)));
        let tw = twist(&u, &crate::surd::rat(1, 2), &c);
        assert!(matches!(is_primitive(&tw), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn sym2_example() {
        let c = Context::new(1).unwrap();
        let x = to_sym2(&v(1, 0, -2)).unwrap();
        assert_eq!((x.x.clone(), x.y.clone(), x.z.clone()), (BigInt::from(1), BigInt::from(0), BigInt::from(-2)));
        assert_eq!(sym2_form(&x, &x, &c), BigInt::from(4));
        assert_eq!(to_sym2(&MukaiVector::rho()).unwrap().to_vector(), MukaiVector::rho());
    }

    #[test]
    fn parse_display() {
        let w: MukaiVector = "1,-1/2,3".parse().unwrap();
        assert_eq!(w.to_string(), "1,-1/2,3");
        assert!("1/2,0,0".parse::<MukaiVector>().is_err());
    }
}
