//! The group `S_{n,l}` of matrices `P(x, y) = (y, l*x; x, y)` with
//! `x = a*sqrt(r)`, `y = b*sqrt(s)`, `rs = n`, `y^2 - l*x^2 = +-1`, its
//! generator `A_l`, the iterates `A_l^m = P(a_m, b_m)`, the isotropic vectors
//! `u_m`, `u_m'` and the interval families `I_m` in the slope coordinate
//! `mu = b/(a*sqrt(n))`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{square, Context, MukaiVector};
use crate::surd::{exact_sqrt, is_integer, squarefree_split, QnNumber, Rat, Surd};

/// `P(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PellMatrix {
    pub x: Surd,
    pub y: Surd,
}

impl PellMatrix {
    pub fn identity() -> PellMatrix {
        PellMatrix { x: Surd::zero(), y: Surd::from_int(1) }
    }

    pub fn mul(&self, o: &PellMatrix, ell: &BigInt) -> PellMatrix {
        let l = Rat::from_integer(ell.clone());
        let x = (&self.x * &o.y).checked_add(&(&self.y * &o.x));
        let y = (&self.y * &o.y).checked_add(&(&self.x * &o.x).scale(&l));
        PellMatrix { x: x.expect("S_{n,l} closed under products"), y: y.expect("S_{n,l} closed under products") }
    }

    /// `y^2 - l*x^2`.
    pub fn det(&self, ell: &BigInt) -> Rat {
        self.y.square() - Rat::from_integer(ell.clone()) * self.x.square()
    }

    /// Entries `(y, l*x; x, y)` row by row.
    pub fn entries(&self, ell: &BigInt) -> [Surd; 4] {
        let lx = self.x.scale(&Rat::from_integer(ell.clone()));
        [self.y.clone(), lx, self.x.clone(), self.y.clone()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellContext {
    n: BigInt,
    ell: BigInt,
    ctx: Context,
    generator: PellMatrix,
    epsilon: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iterate {
    pub m: i64,
    pub a: Surd,
    pub b: Surd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSolution {
    pub v1: MukaiVector,
    pub v2: MukaiVector,
    pub l1: BigInt,
    pub l2: BigInt,
    /// `v = sign * (l1*v1 - l2*v2)`.
    pub sign: i32,
}

impl NumericalSolution {
    pub fn combine(&self) -> MukaiVector {
        let w = &self.v1.scale(&self.l1) - &self.v2.scale(&self.l2);
        if self.sign < 0 {
            -w
        } else {
            w
        }
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let nn = n.to_u64().expect("n fits in u64");
    (1..=nn).filter(|r| nn.is_multiple_of(*r)).map(BigInt::from).collect()
}

pub fn is_square_case(n: &BigInt, ell: &BigInt) -> bool {
    exact_sqrt(&(n * ell)).is_some()
}

#[derive(Clone, Debug)]
struct Candidate {
    a: BigInt,
    r: BigInt,
    b: BigInt,
    s: BigInt,
    eps: i32,
}

impl Candidate {
    /// `phi^2 = b^2 s + a^2 r l + 2ab sqrt(n l)`.
    fn phi_sq(&self, ell: &BigInt) -> QnNumber {
        let n = &self.r * &self.s;
        let u = &self.b * &self.b * &self.s + &self.a * &self.a * &self.r * ell;
        let v = BigInt::from(2) * &self.a * &self.b;
        QnNumber::new(Rat::from_integer(u), Rat::from_integer(v), &(n * ell))
    }

    fn matrix(&self) -> PellMatrix {
        PellMatrix {
            x: Surd::new(Rat::from_integer(self.a.clone()), self.r.clone()),
            y: Surd::new(Rat::from_integer(self.b.clone()), self.s.clone()),
        }
    }
}

fn better(c: &Candidate, best: &Option<Candidate>, ell: &BigInt) -> bool {
    match best {
        None => true,
        Some(b) => match c.phi_sq(ell).cmp(&b.phi_sq(ell)) {
            Ordering::Less => true,
            Ordering::Equal => c.eps > b.eps,
            Ordering::Greater => false,
        },
    }
}

const BRUTE_FORCE_LIMIT: u64 = 1_000_000;

/// Brute force over `a = 1..` with a doubling bound; `None` once the bound
/// would pass `limit`.
pub fn brute_force_generator(n: &BigInt, ell: &BigInt, limit: u64) -> Option<PellMatrix> {
    let l = ell.to_u128()?;
    let divs = divisors(n);
    let mut best: Option<Candidate> = None;
    let mut start = 1u64;
    let mut bound = 16u64;
    loop {
        for r in &divs {
            let s = n / r;
            let (ru, su) = (r.to_u128()?, s.to_u128()?);
            for a in start..=bound {
                let base = l * ru * (a as u128) * (a as u128);
                for (eps, num) in [(1i32, base + 1), (-1, base.wrapping_sub(1))] {
                    if num == 0 || num % su != 0 {
                        continue;
                    }
                    let bsq = BigInt::from(num / su);
                    let Some(b) = exact_sqrt(&bsq) else { continue };
                    let c = Candidate { a: BigInt::from(a), r: r.clone(), b, s: s.clone(), eps };
                    if better(&c, &best, ell) {
                        best = Some(c);
                    }
                }
            }
        }
        if let Some(c) = &best {
            // every a > phi/sqrt(l) gives a larger phi
            let bb = Rat::from_integer(BigInt::from(bound));
            let reach = QnNumber::from_rat(&bb * &bb * Rat::from_integer(ell.clone()));
            if reach >= c.phi_sq(ell) {
                return Some(c.matrix());
            }
        }
        if bound >= limit {
            return None;
        }
        start = bound + 1;
        bound = (bound * 2).min(limit);
    }
}

/// Fundamental solution of `X^2 - D*Y^2 = +-1` by the continued fraction of
/// `sqrt(D)`, `D` not a square.
pub fn fundamental_unit(dd: &BigInt) -> (BigInt, BigInt, i32) {
    let a0 = num_integer::Roots::sqrt(dd);
    let (mut m, mut d, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut p_prev, mut p) = (BigInt::one(), a0.clone());
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    loop {
        let norm = &p * &p - dd * &q * &q;
        if norm.is_one() {
            return (p, q, 1);
        }
        if norm == -BigInt::one() {
            return (p, q, -1);
        }
        m = &d * &a - &m;
        d = (dd - &m * &m) / &d;
        a = (&a0 + &m) / &d;
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
}

/// Generator via the unit `eta = X + Y sqrt(ln)`: the answer is `eta` or its
/// square root when the latter has the `S_{n,l}` shape.
pub fn cf_generator(n: &BigInt, ell: &BigInt) -> PellMatrix {
    let dd = n * ell;
    let (x, y, norm) = fundamental_unit(&dd);
    let eta = Candidate { a: y.clone(), r: n.clone(), b: x.clone(), s: BigInt::one(), eps: 1 };
    if norm < 0 {
        if ell.is_one() {
            // same phi with the roles of sqrt(n) swapped, and det +1
            return Candidate { a: x, r: BigInt::one(), b: y, s: n.clone(), eps: 1 }.matrix();
        }
        return Candidate { eps: -1, ..eta }.matrix();
    }
    let mut best: Option<Candidate> = None;
    for r in divisors(n) {
        let s = n / &r;
        for sigma in [1i32, -1] {
            let bs = &x + BigInt::from(sigma);
            let ar = &x - BigInt::from(sigma);
            if bs.is_odd() || ar.is_odd() {
                continue;
            }
            let (bs, ar): (BigInt, BigInt) = (bs / 2, ar / 2);
            let (bden, aden) = (s.clone(), &r * ell);
            if !bs.is_multiple_of(&bden) || !ar.is_multiple_of(&aden) {
                continue;
            }
            let (Some(b), Some(a)) = (exact_sqrt(&(bs / &bden)), exact_sqrt(&(ar / &aden))) else {
                continue;
            };
            if a.is_zero() || b.is_zero() || BigInt::from(2) * &a * &b != y {
                continue;
            }
            let c = Candidate { a, r: r.clone(), b, s: s.clone(), eps: sigma };
            if better(&c, &best, ell) {
                best = Some(c);
            }
        }
    }
    best.unwrap_or(eta).matrix()
}

impl PellContext {
    pub fn new(n: i64, ell: i64) -> Result<PellContext> {
        PellContext::from_big(BigInt::from(n), BigInt::from(ell))
    }

    pub fn from_big(n: BigInt, ell: BigInt) -> Result<PellContext> {
        let ctx = Context::from_big(n.clone())?;
        if ell < BigInt::one() {
            return Err(Error::Precondition(format!("ell must be >= 1, got {ell}")));
        }
        if is_square_case(&n, &ell) {
            return Err(Error::SquareCase { n: n.to_string(), ell: ell.to_string() });
        }
        let generator = brute_force_generator(&n, &ell, BRUTE_FORCE_LIMIT).unwrap_or_else(|| cf_generator(&n, &ell));
        let det = generator.det(&ell);
        let epsilon = if det.is_one() { 1 } else { -1 };
        debug_assert!(det.abs().is_one());
        Ok(PellContext { n, ell, ctx, generator, epsilon })
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn ell(&self) -> &BigInt {
        &self.ell
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn generator(&self) -> &PellMatrix {
        &self.generator
    }

    pub fn epsilon(&self) -> i32 {
        self.epsilon
    }

    /// For `l = 1` the swap `(0, 1; 1, 0)` is an extra torsion element.
    pub fn torsion(&self) -> Option<PellMatrix> {
        self.ell.is_one().then(|| PellMatrix { x: Surd::from_int(1), y: Surd::zero() })
    }

    /// `v = (1, 0, -l)`.
    pub fn v(&self) -> MukaiVector {
        MukaiVector::new(BigInt::one(), Rat::zero(), -Rat::from_integer(self.ell.clone()))
    }

    /// `A^m` as `P(a_m, b_m)`.
    pub fn power(&self, m: i64) -> PellMatrix {
        let step = if m >= 0 {
            self.generator.clone()
        } else {
            let e = Rat::from_integer(BigInt::from(self.epsilon));
            PellMatrix { x: self.generator.x.scale(&-e.clone()), y: self.generator.y.scale(&e) }
        };
        let mut acc = PellMatrix::identity();
        for _ in 0..m.unsigned_abs() {
            acc = acc.mul(&step, &self.ell);
        }
        acc
    }

    pub fn iterate(&self, m: i64) -> Iterate {
        let p = self.power(m);
        Iterate { m, a: p.x, b: p.y }
    }

    /// `b_m / (a_m sqrt(n))`, rational; `None` for `m = 0`.
    pub fn slope(&self, m: i64) -> Option<Rat> {
        let it = self.iterate(m);
        self.ratio(&it.b, &it.a)
    }

    /// `l a_m / (b_m sqrt(n))`.
    pub fn slope_dual(&self, m: i64) -> Option<Rat> {
        let it = self.iterate(m);
        self.ratio(&it.a.scale(&Rat::from_integer(self.ell.clone())), &it.b)
    }

    fn ratio(&self, num: &Surd, den: &Surd) -> Option<Rat> {
        if den.is_zero() {
            return None;
        }
        let q = num.checked_div(&(den * &Surd::sqrt_of(&self.n))).ok()?;
        Some(q.as_rational().cloned().expect("slope coordinates are rational"))
    }

    /// `(u_m, u_m')`; `m = 0` gives `(rho, (1, 0, 0))`.
    pub fn u_vectors(&self, m: i64) -> (MukaiVector, MukaiVector) {
        let it = self.iterate(m);
        let l = Rat::from_integer(self.ell.clone());
        let u = self.outer(&it.a, &it.b);
        let up = self.outer(&it.b, &it.a.scale(&l));
        (u, up)
    }

    /// `(p^2, p q / sqrt(n), q^2)` for a row `(p, q)`.
    pub fn outer(&self, p: &Surd, q: &Surd) -> MukaiVector {
        let mid = (p * q).checked_div(&Surd::sqrt_of(&self.n)).expect("sqrt(n) nonzero");
        let r = p.square();
        let d = mid.as_rational().cloned().expect("outer product lies in the lattice");
        assert!(is_integer(&r) && is_integer(&d), "outer product lies in the lattice");
        MukaiVector::new(r.to_integer(), d, q.square())
    }

    /// Row orbit `(p, q) * A^k` as a Mukai vector.
    pub fn row_orbit(&self, p: &Surd, q: &Surd, k: i64) -> MukaiVector {
        let g = self.power(k).entries(&self.ell);
        let np = (p * &g[0]).checked_add(&(q * &g[2])).expect("row times S_{n,l}");
        let nq = (p * &g[1]).checked_add(&(q * &g[3])).expect("row times S_{n,l}");
        self.outer(&np, &nq)
    }

    pub fn numerical_solution(&self, m: i64) -> NumericalSolution {
        let l = self.ell.clone();
        if m == 0 {
            return NumericalSolution {
                v1: MukaiVector::from_ints(1, 0, 0),
                v2: MukaiVector::rho(),
                l1: BigInt::one(),
                l2: l,
                sign: 1,
            };
        }
        let (u, up) = self.u_vectors(m);
        let mut sol = NumericalSolution { v1: u, v2: up, l1: l, l2: BigInt::one(), sign: 1 };
        if sol.combine() != self.v() {
            sol.sign = -1;
        }
        sol
    }

    pub fn numerical_solutions(&self, lo: i64, hi: i64) -> Vec<(i64, NumericalSolution)> {
        (lo..=hi).map(|m| (m, self.numerical_solution(m))).collect()
    }

    /// `|slope(m) - sqrt(l/n)|`, exact.
    pub fn slope_gap(&self, m: i64) -> Option<QnNumber> {
        let mu = self.slope(m)?;
        let root = QnNumber::new(Rat::zero(), Rat::new(BigInt::one(), self.n.clone()), &(&self.n * &self.ell));
        Some((&QnNumber::from_rat(mu) - &root).abs())
    }

    fn endpoint_table(&self, k_max: i64) -> (Vec<Rat>, Vec<Rat>) {
        let mut betas = vec![Rat::zero()];
        let mut gammas = vec![Rat::zero()];
        let l = Rat::from_integer(self.ell.clone());
        let mut p = PellMatrix::identity();
        for _ in 1..=k_max {
            p = p.mul(&self.generator, &self.ell);
            betas.push(self.ratio(&p.y, &p.x).expect("a_k > 0"));
            gammas.push(self.ratio(&p.x.scale(&l), &p.y).expect("b_k > 0"));
        }
        (betas, gammas)
    }

    /// The two half-open pieces of `I_m`, valid when `|m| + 1 <= k_max`.
    fn spans(&self, m: i64, betas: &[Rat], gammas: &[Rat]) -> [Span; 2] {
        use Ext::{Fin, NegInf, PosInf};
        let b = |k: i64| Fin(betas[k as usize].clone());
        let g = |k: i64| Fin(gammas[k as usize].clone());
        let nb = |k: i64| Fin(-&betas[k as usize]);
        let ng = |k: i64| Fin(-&gammas[k as usize]);
        let zero = Fin(Rat::zero());
        let sp = Span::new;
        if self.epsilon < 0 {
            match m {
                1 => [sp(zero, b(1)), sp(g(1), PosInf)],
                0 => [sp(NegInf, ng(1)), sp(nb(1), zero)],
                m if m > 0 && m % 2 == 0 => [sp(b(m - 1), g(m)), sp(b(m), g(m - 1))],
                m if m > 0 => [sp(g(m - 1), b(m)), sp(g(m), b(m - 1))],
                m if m % 2 == 0 => {
                    let k = -m;
                    [sp(nb(k), ng(k + 1)), sp(nb(k + 1), ng(k))]
                }
                m => {
                    let k = 1 - m;
                    [sp(ng(k - 1), nb(k)), sp(ng(k), nb(k - 1))]
                }
            }
        } else {
            match m {
                1 => [sp(zero, g(1)), sp(b(1), PosInf)],
                0 => [sp(NegInf, nb(1)), sp(ng(1), zero)],
                m if m > 1 => [sp(g(m - 1), g(m)), sp(b(m), b(m - 1))],
                m => {
                    let j = -m;
                    [sp(nb(j), nb(j + 1)), sp(ng(j + 1), ng(j))]
                }
            }
        }
    }

    /// `I_m` as two half-open spans `[lo, hi)`.
    pub fn interval(&self, m: i64) -> [Span; 2] {
        let (b, g) = self.endpoint_table(m.abs() + 2);
        self.spans(m, &b, &g)
    }

    /// `I_m` for every `m` in `lo..=hi`, sharing one endpoint table.
    pub fn intervals(&self, lo: i64, hi: i64) -> Vec<(i64, [Span; 2])> {
        let (b, g) = self.endpoint_table(lo.abs().max(hi.abs()) + 2);
        (lo..=hi).map(|m| (m, self.spans(m, &b, &g))).collect()
    }

    fn check_lambda(&self, lambda: &Rat) -> Result<()> {
        let lsq = lambda * lambda * Rat::from_integer(self.n.clone());
        if lsq == Rat::from_integer(self.ell.clone()) {
            return Err(Error::AccumulationPoint);
        }
        Ok(())
    }

    /// The `m` with `lambda` in `I_m`, and the `m*` with `lambda` in `I_{m*}^*`.
    pub fn interval_index(&self, lambda: &Rat) -> Result<IntervalIndex> {
        self.check_lambda(lambda)?;
        let mut k_max = 8i64;
        loop {
            let (b, g) = self.endpoint_table(k_max + 2);
            let find = |starred: bool| {
                (-k_max..=k_max).find(|&m| self.spans(m, &b, &g).iter().any(|s| s.contains(lambda, starred)))
            };
            if let (Some(m), Some(m_star)) = (find(false), find(true)) {
                return Ok(IntervalIndex { m, starred: m == m_star, m_star });
            }
            k_max *= 2;
        }
    }

    pub fn in_interval(&self, lambda: &Rat, m: i64, starred: bool) -> bool {
        self.interval(m).iter().any(|s| s.contains(lambda, starred))
    }

    pub fn sheaf_verdict(&self, lambda: &Rat, m: i64) -> Result<SheafVerdict> {
        if m > 0 {
            return Err(Error::Precondition(format!("sheaf verdict needs m <= 0, got {m}")));
        }
        self.check_lambda(lambda)?;
        Ok(SheafVerdict {
            stable_sheaf: self.in_interval(lambda, m, false),
            dual_stable_sheaf: self.in_interval(lambda, m, true),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ext {
    NegInf,
    Fin(Rat),
    PosInf,
}

impl Ext {
    fn lt(&self, x: &Rat) -> bool {
        match self {
            Ext::NegInf => true,
            Ext::Fin(a) => a < x,
            Ext::PosInf => false,
        }
    }

    fn gt(&self, x: &Rat) -> bool {
        match self {
            Ext::NegInf => false,
            Ext::Fin(a) => a > x,
            Ext::PosInf => true,
        }
    }
}

impl std::fmt::Display for Ext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::Fin(a) => write!(f, "{a}"),
            Ext::PosInf => write!(f, "inf"),
        }
    }
}

/// `[lo, hi)`; the starred version is `(lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: Ext,
    pub hi: Ext,
}

impl Span {
    fn new(lo: Ext, hi: Ext) -> Span {
        Span { lo, hi }
    }

    pub fn contains(&self, x: &Rat, starred: bool) -> bool {
        if starred {
            self.lo.lt(x) && !self.hi.lt(x)
        } else {
            !self.lo.gt(x) && self.hi.gt(x)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalIndex {
    pub m: i64,
    /// `lambda` also lies in `I_m^*`.
    pub starred: bool,
    pub m_star: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SheafVerdict {
    pub stable_sheaf: bool,
    pub dual_stable_sheaf: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationCount {
    One,
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PresentationReport {
    pub count: PresentationCount,
    pub both_presentations: bool,
}

/// Number of numerical solutions of `(1, 0, -l)`.
pub fn presentation_report(n: &BigInt, ell: &BigInt) -> PresentationReport {
    if is_square_case(n, ell) {
        PresentationReport { count: PresentationCount::One, both_presentations: false }
    } else {
        PresentationReport { count: PresentationCount::Infinite, both_presentations: true }
    }
}

/// Checks the defining identities of a numerical solution for `v`.
pub fn is_numerical_solution(sol: &NumericalSolution, v: &MukaiVector, ctx: &Context) -> bool {
    use crate::lattice::pairing;
    let one = BigInt::one();
    ((&sol.l1 - &one) * (&sol.l2 - &one)).is_zero()
        && square(&sol.v1, ctx).is_zero()
        && square(&sol.v2, ctx).is_zero()
        && pairing(&sol.v1, &sol.v2, ctx) == -Rat::one()
        && &sol.combine() == v
}

pub fn squarefree_part(n: &BigInt) -> BigInt {
    squarefree_split(n).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surd::{int, rat};

    fn pc(n: i64, l: i64) -> PellContext {
        PellContext::new(n, l).unwrap()
    }

    fn sd(s: &str) -> Surd {
        s.parse().unwrap()
    }

    #[test]
    fn generators() {
        let g = pc(1, 2);
        assert_eq!((g.generator().x.clone(), g.generator().y.clone()), (sd("1"), sd("1")));
        assert_eq!(g.epsilon(), -1);
        let g = pc(1, 6);
        assert_eq!((g.generator().x.clone(), g.generator().y.clone()), (sd("2"), sd("5")));
        assert_eq!(g.epsilon(), 1);
        let g = pc(2, 1);
        assert_eq!((g.generator().x.clone(), g.generator().y.clone()), (sd("1"), sd("sqrt(2)")));
        assert_eq!(g.epsilon(), 1);
        assert!(g.torsion().is_some());
        assert!(matches!(PellContext::new(1, 4), Err(Error::SquareCase { .. })));
    }

    #[test]
    fn brute_force_and_continued_fraction_agree() {
        for n in 1..=6i64 {
            for l in 1..=40i64 {
                let (nb, lb) = (BigInt::from(n), BigInt::from(l));
                if is_square_case(&nb, &lb) {
                    continue;
                }
                let bf = brute_force_generator(&nb, &lb, 1 << 22).unwrap();
                let cf = cf_generator(&nb, &lb);
                assert_eq!(bf, cf, "n={n} l={l}");
                assert!(bf.det(&lb).abs().is_one());
            }
        }
    }

    #[test]
    fn large_generator_via_units() {
        // D = 61 has fundamental unit 29718 + 3805 sqrt(61), norm -1
        let (x, y, norm) = fundamental_unit(&BigInt::from(61));
        assert_eq!((x, y, norm), (BigInt::from(29718), BigInt::from(3805), -1));
        let g = cf_generator(&BigInt::from(1), &BigInt::from(61));
        assert_eq!(g.det(&BigInt::from(61)), int(-1));
    }

    #[test]
    fn iterates() {
        let g = pc(1, 3);
        let it = g.iterate(2);
        assert_eq!((it.a, it.b), (sd("4"), sd("7")));
        let it = g.iterate(0);
        assert_eq!((it.a, it.b), (sd("0"), sd("1")));
        let it = g.iterate(-1);
        assert_eq!((it.a, it.b), (sd("-1"), sd("2")));
        let h = pc(1, 2);
        let it = h.iterate(-1);
        assert_eq!((it.a, it.b), (sd("1"), sd("-1")));
    }

    #[test]
    fn u_vector_examples() {
        assert_eq!(pc(1, 2).u_vectors(-1).0, MukaiVector::from_ints(1, -1, 1));
        assert_eq!(pc(1, 5).u_vectors(-1).0, MukaiVector::from_ints(1, -2, 4));
        let (u, up) = pc(1, 6).u_vectors(-1);
        assert_eq!(u, MukaiVector::from_ints(4, -10, 25));
        assert_eq!(up, MukaiVector::from_ints(25, -60, 144));
        let (u, up) = pc(1, 3).u_vectors(0);
        assert_eq!((u, up), (MukaiVector::rho(), MukaiVector::from_ints(1, 0, 0)));
    }

    #[test]
    fn numerical_solution_examples() {
        let s = pc(1, 2).numerical_solution(-1);
        assert_eq!((s.v1.clone(), s.v2.clone()), (MukaiVector::from_ints(1, -1, 1), MukaiVector::from_ints(1, -2, 4)));
        assert_eq!(s.combine(), MukaiVector::from_ints(1, 0, -2));
        let s = pc(1, 5).numerical_solution(-1);
        assert_eq!(s.v2, MukaiVector::from_ints(4, -10, 25));
        assert_eq!(s.combine(), MukaiVector::from_ints(1, 0, -5));
        let g = pc(1, 7);
        let s = g.numerical_solution(0);
        assert_eq!((s.l1.clone(), s.l2.clone()), (BigInt::from(1), BigInt::from(7)));
        for m in -4..=4 {
            assert!(is_numerical_solution(&g.numerical_solution(m), &g.v(), g.ctx()));
        }
    }

    #[test]
    fn secondary_family() {
        let g = pc(1, 3);
        let w1 = g.row_orbit(&sd("1"), &sd("-1"), 0);
        let w2 = g.row_orbit(&sd("1"), &sd("-1"), -1);
        assert_eq!(w1, MukaiVector::from_ints(1, -1, 1));
        assert_eq!(w2, MukaiVector::from_ints(9, -15, 25));
    }

    #[test]
    fn presentation_counts() {
        let b = BigInt::from;
        assert_eq!(presentation_report(&b(1), &b(4)).count, PresentationCount::One);
        assert_eq!(presentation_report(&b(1), &b(1)).count, PresentationCount::One);
        let r = presentation_report(&b(1), &b(2));
        assert_eq!((r.count, r.both_presentations), (PresentationCount::Infinite, true));
    }

    #[test]
    fn interval_examples() {
        let g = pc(1, 2);
        assert_eq!(g.interval_index(&int(0)).unwrap().m, 1);
        let ix = g.interval_index(&rat(-3, 2)).unwrap();
        assert_eq!((ix.m, ix.starred, ix.m_star), (-2, false, -1));
        assert_eq!(g.interval_index(&int(-1)).unwrap().m, 0);
        let ix = g.interval_index(&int(-2)).unwrap();
        assert_eq!((ix.m, ix.m_star), (-1, 0));
        let [a, b] = g.interval(-2);
        assert_eq!((a.lo, a.hi), (Ext::Fin(rat(-3, 2)), Ext::Fin(rat(-10, 7))));
        assert_eq!((b.lo, b.hi), (Ext::Fin(rat(-7, 5)), Ext::Fin(rat(-4, 3))));
    }

    #[test]
    fn verdicts() {
        let g = pc(1, 2);
        let v = g.sheaf_verdict(&rat(-3, 2), -2).unwrap();
        assert_eq!((v.stable_sheaf, v.dual_stable_sheaf), (true, false));
        let v = g.sheaf_verdict(&rat(-3, 2), -1).unwrap();
        assert_eq!((v.stable_sheaf, v.dual_stable_sheaf), (false, true));
        let v = g.sheaf_verdict(&int(-1), -2).unwrap();
        assert_eq!((v.stable_sheaf, v.dual_stable_sheaf), (false, false));
        let v = g.sheaf_verdict(&int(-2), 0).unwrap();
        assert_eq!((v.stable_sheaf, v.dual_stable_sheaf), (false, true));
        let v = g.sheaf_verdict(&rat(-7, 10), 0).unwrap();
        assert_eq!((v.stable_sheaf, v.dual_stable_sheaf), (true, true));
        assert!(g.sheaf_verdict(&int(0), 1).is_err());
    }

    #[test]
    fn accumulation_is_monotone() {
        for (n, l) in [(1, 2), (1, 3), (2, 3)] {
            let g = pc(n, l);
            let gaps: Vec<QnNumber> = (1..=10).map(|m| g.slope_gap(m).unwrap()).collect();
            assert!(gaps.windows(2).all(|w| w[1] < w[0]), "n={n} l={l}");
        }
    }
}
