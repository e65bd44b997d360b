//! Exact scalars: rationals, pure surds `q*sqrt(m)`, the field Q(sqrt(k)) and
//! complex numbers over it.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn big(p: i64) -> BigInt {
    BigInt::from(p)
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad rational `{s}`")))
}

pub fn rat_to_f64(q: &Rat) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// `m = c^2 * k` with `k` squarefree, for `m > 0`.
pub fn squarefree_split(m: &BigInt) -> (BigInt, BigInt) {
    assert!(m.is_positive(), "squarefree_split of non-positive {m}");
    let mut rest = m.clone();
    let mut c = BigInt::one();
    let mut k = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            c *= &p;
        }
        if e % 2 == 1 {
            k *= &p;
        }
        p += 1;
    }
    (c, k * rest)
}

pub fn exact_sqrt(m: &BigInt) -> Option<BigInt> {
    if m.is_negative() {
        return None;
    }
    let r = m.sqrt();
    (&r * &r == *m).then_some(r)
}

pub fn rat_sqrt(q: &Rat) -> Option<Rat> {
    if q.is_negative() {
        return None;
    }
    Some(Rat::new(exact_sqrt(q.numer())?, exact_sqrt(q.denom())?))
}

pub fn is_integer(q: &Rat) -> bool {
    q.denom().is_one()
}

/// `coef * sqrt(rad)`, `rad` squarefree; zero is stored as `0*sqrt(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    coef: Rat,
    rad: BigInt,
}

impl Surd {
    pub fn new(coef: Rat, rad: BigInt) -> Surd {
        if coef.is_zero() || rad.is_zero() {
            return Surd::zero();
        }
        assert!(rad.is_positive(), "negative radicand {rad}");
        let (c, k) = squarefree_split(&rad);
        Surd { coef: coef * Rat::from_integer(c), rad: k }
    }

    pub fn rational(q: Rat) -> Surd {
        Surd::new(q, BigInt::one())
    }

    pub fn from_int(p: i64) -> Surd {
        Surd::rational(int(p))
    }

    /// `sqrt(m)` for a positive integer `m`.
    pub fn sqrt_of(m: &BigInt) -> Surd {
        Surd::new(Rat::one(), m.clone())
    }

    pub fn zero() -> Surd {
        Surd { coef: Rat::zero(), rad: BigInt::one() }
    }

    pub fn coef(&self) -> &Rat {
        &self.coef
    }

    pub fn rad(&self) -> &BigInt {
        &self.rad
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.rad.is_one()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.coef)
    }

    pub fn square(&self) -> Rat {
        &self.coef * &self.coef * Rat::from_integer(self.rad.clone())
    }

    pub fn signum(&self) -> i32 {
        if self.coef.is_positive() {
            1
        } else if self.coef.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn scale(&self, q: &Rat) -> Surd {
        Surd::new(&self.coef * q, self.rad.clone())
    }

    pub fn checked_add(&self, other: &Surd) -> Result<Surd> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.rad != other.rad {
            return Err(Error::MixedRadicand(self.to_string(), other.to_string()));
        }
        Ok(Surd::new(&self.coef + &other.coef, self.rad.clone()))
    }

    pub fn checked_sub(&self, other: &Surd) -> Result<Surd> {
        self.checked_add(&-other)
    }

    pub fn inv(&self) -> Result<Surd> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let r = Rat::from_integer(self.rad.clone());
        Ok(Surd { coef: (&self.coef * &r).recip(), rad: self.rad.clone() })
    }

    pub fn checked_div(&self, other: &Surd) -> Result<Surd> {
        Ok(self * &other.inv()?)
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.coef) * self.rad.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    /// Value as an element of Q(sqrt(k)), if it lives there.
    pub fn in_field(&self, k: &BigInt) -> Option<QnNumber> {
        if self.is_rational() {
            Some(QnNumber::from_rat(self.coef.clone()))
        } else if &self.rad == k {
            Some(QnNumber { u: Rat::zero(), v: self.coef.clone(), k: k.clone() })
        } else {
            None
        }
    }
}

impl Mul<&Surd> for &Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        if self.is_zero() || rhs.is_zero() {
            return Surd::zero();
        }
        let g = self.rad.gcd(&rhs.rad);
        let rad = (&self.rad / &g) * (&rhs.rad / &g);
        Surd { coef: &self.coef * &rhs.coef * Rat::from_integer(g), rad }
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        &self * &rhs
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { coef: -&self.coef, rad: self.rad.clone() }
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Surd) -> Ordering {
        let (a, b) = (self.signum(), other.signum());
        if a != b {
            return a.cmp(&b);
        }
        let by_square = self.square().cmp(&other.square());
        if a >= 0 {
            by_square
        } else {
            by_square.reverse()
        }
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Surd) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn surd_cmp(x: &Surd, y: &Surd) -> Ordering {
    x.cmp(y)
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coef);
        }
        if self.coef.is_one() {
            write!(f, "sqrt({})", self.rad)
        } else if (-&self.coef).is_one() {
            write!(f, "-sqrt({})", self.rad)
        } else {
            write!(f, "{}*sqrt({})", self.coef, self.rad)
        }
    }
}

impl FromStr for Surd {
    type Err = Error;

    /// `RAT`, `RAT*sqrt(INT)`, `sqrt(INT)` or `-sqrt(INT)`.
    fn from_str(s: &str) -> Result<Surd> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("bad surd `{s}`"));
        let Some(pos) = t.find("sqrt(") else {
            return Ok(Surd::rational(parse_rat(&t)?));
        };
        let inner = t[pos + 5..].strip_suffix(')').ok_or_else(bad)?;
        let rad = BigInt::from_str(inner).map_err(|_| bad())?;
        if rad.is_negative() {
            return Err(bad());
        }
        let coef = match &t[..pos] {
            "" => Rat::one(),
            "-" => -Rat::one(),
            c => parse_rat(c.strip_suffix('*').ok_or_else(bad)?)?,
        };
        Ok(Surd::new(coef, rad))
    }
}

/// `u + v*sqrt(k)` with `k` squarefree; `k = 1` forces `v = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QnNumber {
    u: Rat,
    v: Rat,
    k: BigInt,
}

impl QnNumber {
    /// `u + v*sqrt(n)`; a square factor of `n` is folded into `v`.
    pub fn new(u: Rat, v: Rat, n: &BigInt) -> QnNumber {
        let (c, k) = squarefree_split(n);
        let v = v * Rat::from_integer(c);
        if k.is_one() {
            QnNumber { u: u + v, v: Rat::zero(), k }
        } else if v.is_zero() {
            QnNumber { u, v, k: BigInt::one() }
        } else {
            QnNumber { u, v, k }
        }
    }

    pub fn from_rat(u: Rat) -> QnNumber {
        QnNumber { u, v: Rat::zero(), k: BigInt::one() }
    }

    pub fn sqrt_of(n: &BigInt) -> QnNumber {
        QnNumber::new(Rat::zero(), Rat::one(), n)
    }

    pub fn zero() -> QnNumber {
        QnNumber::from_rat(Rat::zero())
    }

    pub fn one() -> QnNumber {
        QnNumber::from_rat(Rat::one())
    }

    pub fn u(&self) -> &Rat {
        &self.u
    }

    pub fn v(&self) -> &Rat {
        &self.v
    }

    pub fn k(&self) -> &BigInt {
        &self.k
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.v.is_zero().then_some(&self.u)
    }

    fn field(&self, other: &QnNumber) -> BigInt {
        match (self.v.is_zero(), other.v.is_zero()) {
            (true, _) => other.k.clone(),
            (_, true) => self.k.clone(),
            _ => {
                assert_eq!(self.k, other.k, "arithmetic across quadratic fields");
                self.k.clone()
            }
        }
    }

    fn make(u: Rat, v: Rat, k: BigInt) -> QnNumber {
        if v.is_zero() {
            QnNumber { u, v, k: BigInt::one() }
        } else {
            QnNumber { u, v, k }
        }
    }

    pub fn signum(&self) -> i32 {
        let su = sign(&self.u);
        let sv = sign(&self.v);
        if su == 0 || sv == 0 || su == sv {
            return if su != 0 { su } else { sv };
        }
        let uu = &self.u * &self.u;
        let vv = &self.v * &self.v * Rat::from_integer(self.k.clone());
        match uu.cmp(&vv) {
            Ordering::Greater => su,
            Ordering::Less => sv,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> QnNumber {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Galois conjugate `u - v*sqrt(k)`.
    pub fn galois(&self) -> QnNumber {
        QnNumber::make(self.u.clone(), -&self.v, self.k.clone())
    }

    pub fn norm(&self) -> Rat {
        &self.u * &self.u - &self.v * &self.v * Rat::from_integer(self.k.clone())
    }

    pub fn inv(&self) -> Result<QnNumber> {
        let nm = self.norm();
        if nm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = self.galois();
        Ok(QnNumber::make(g.u / &nm, g.v / &nm, g.k))
    }

    pub fn scale(&self, q: &Rat) -> QnNumber {
        QnNumber::make(&self.u * q, &self.v * q, self.k.clone())
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.u) + rat_to_f64(&self.v) * self.k.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

fn sign(q: &Rat) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

impl Add<&QnNumber> for &QnNumber {
    type Output = QnNumber;
    fn add(self, rhs: &QnNumber) -> QnNumber {
        let k = self.field(rhs);
        QnNumber::make(&self.u + &rhs.u, &self.v + &rhs.v, k)
    }
}

impl Sub<&QnNumber> for &QnNumber {
    type Output = QnNumber;
    fn sub(self, rhs: &QnNumber) -> QnNumber {
        self + &(-rhs)
    }
}

impl Mul<&QnNumber> for &QnNumber {
    type Output = QnNumber;
    fn mul(self, rhs: &QnNumber) -> QnNumber {
        let k = self.field(rhs);
        let kk = Rat::from_integer(k.clone());
        let u = &self.u * &rhs.u + &self.v * &rhs.v * kk;
        let v = &self.u * &rhs.v + &self.v * &rhs.u;
        QnNumber::make(u, v, k)
    }
}

impl Neg for &QnNumber {
    type Output = QnNumber;
    fn neg(self) -> QnNumber {
        QnNumber::make(-&self.u, -&self.v, self.k.clone())
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $f:ident) => {
        impl $tr for $t {
            type Output = $t;
            fn $f(self, rhs: $t) -> $t {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(QnNumber, Add, add);
forward_owned!(QnNumber, Sub, sub);
forward_owned!(QnNumber, Mul, mul);

impl Neg for QnNumber {
    type Output = QnNumber;
    fn neg(self) -> QnNumber {
        -&self
    }
}

impl Ord for QnNumber {
    fn cmp(&self, other: &QnNumber) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl PartialOrd for QnNumber {
    fn partial_cmp(&self, other: &QnNumber) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QnNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "{}", self.u);
        }
        let s = Surd { coef: self.v.clone(), rad: self.k.clone() };
        if self.u.is_zero() {
            write!(f, "{s}")
        } else if self.v.is_negative() {
            write!(f, "{}-{}", self.u, -s)
        } else {
            write!(f, "{}+{}", self.u, s)
        }
    }
}

/// `re + i*im` over Q(sqrt(k)).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QnComplex {
    pub re: QnNumber,
    pub im: QnNumber,
}

impl QnComplex {
    pub fn new(re: QnNumber, im: QnNumber) -> QnComplex {
        QnComplex { re, im }
    }

    pub fn real(re: QnNumber) -> QnComplex {
        QnComplex { re, im: QnNumber::zero() }
    }

    pub fn from_rats(re: Rat, im: Rat) -> QnComplex {
        QnComplex { re: QnNumber::from_rat(re), im: QnNumber::from_rat(im) }
    }

    pub fn i() -> QnComplex {
        QnComplex::from_rats(Rat::zero(), Rat::one())
    }

    pub fn zero() -> QnComplex {
        QnComplex::real(QnNumber::zero())
    }

    pub fn one() -> QnComplex {
        QnComplex::real(QnNumber::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> QnComplex {
        QnComplex { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sq(&self) -> QnNumber {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn scale(&self, x: &QnNumber) -> QnComplex {
        QnComplex { re: &self.re * x, im: &self.im * x }
    }

    pub fn inv(&self) -> Result<QnComplex> {
        let nn = self.norm_sq().inv()?;
        Ok(self.conj().scale(&nn))
    }

    pub fn checked_div(&self, rhs: &QnComplex) -> Result<QnComplex> {
        Ok(self * &rhs.inv()?)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add<&QnComplex> for &QnComplex {
    type Output = QnComplex;
    fn add(self, rhs: &QnComplex) -> QnComplex {
        QnComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&QnComplex> for &QnComplex {
    type Output = QnComplex;
    fn sub(self, rhs: &QnComplex) -> QnComplex {
        QnComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&QnComplex> for &QnComplex {
    type Output = QnComplex;
    fn mul(self, rhs: &QnComplex) -> QnComplex {
        QnComplex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Neg for &QnComplex {
    type Output = QnComplex;
    fn neg(self) -> QnComplex {
        QnComplex { re: -&self.re, im: -&self.im }
    }
}

impl Neg for QnComplex {
    type Output = QnComplex;
    fn neg(self) -> QnComplex {
        -&self
    }
}

forward_owned!(QnComplex, Add, add);
forward_owned!(QnComplex, Sub, sub);
forward_owned!(QnComplex, Mul, mul);

impl fmt::Display for QnComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im = if self.im.v.is_zero() && self.im.u.is_one() { "i".to_string() } else { format!("({})*i", self.im) };
        if self.re.is_zero() {
            write!(f, "{im}")
        } else {
            write!(f, "{}+{im}", self.re)
        }
    }
}

/// Parses `x+y*i` with `x`, `y` single surd terms living in Q(sqrt(n)).
pub fn parse_complex(s: &str, n: &BigInt) -> Result<QnComplex> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("bad complex `{s}`"));
    let k = squarefree_split(n).1;
    let term = |x: &str| -> Result<QnNumber> {
        let sd: Surd = x.parse()?;
        sd.in_field(&k).ok_or_else(bad)
    };
    let Some(body) = t.strip_suffix('i') else {
        return Ok(QnComplex::real(term(&t)?));
    };
    let body = body.strip_suffix('*').unwrap_or(body);
    let split = body
        .char_indices()
        .filter(|&(i, c)| i > 0 && (c == '+' || c == '-') && !body[..i].ends_with('/'))
        .map(|(i, _)| i)
        .next_back();
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x.strip_prefix('+').unwrap_or(x),
    };
    Ok(QnComplex::new(term(re)?, term(im)?))
}
