//! Central charges `Z_{(sH, tH)}(v)` as exact polynomials in `t`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{beta_data, Context, MukaiVector};
use crate::surd::{int, rat_to_f64, Rat};

/// `Z(t) = (re0 + re2*t^2) + i*im1*t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargePoly {
    pub re0: Rat,
    pub re2: Rat,
    pub im1: Rat,
}

impl ChargePoly {
    pub fn re_at(&self, t_sq: &Rat) -> Rat {
        &self.re0 + &self.re2 * t_sq
    }

    /// Imaginary part divided by `t`.
    pub fn im_over_t(&self) -> &Rat {
        &self.im1
    }
}

impl std::ops::Add<&ChargePoly> for &ChargePoly {
    type Output = ChargePoly;
    fn add(self, o: &ChargePoly) -> ChargePoly {
        ChargePoly { re0: &self.re0 + &o.re0, re2: &self.re2 + &o.re2, im1: &self.im1 + &o.im1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityPoint {
    pub s: Rat,
    pub t_sq: Rat,
}

impl StabilityPoint {
    pub fn new(s: Rat, t_sq: Rat) -> Result<StabilityPoint> {
        if !t_sq.is_positive() {
            return Err(Error::Precondition(format!("t^2 must be positive, got {t_sq}")));
        }
        Ok(StabilityPoint { s, t_sq })
    }
}

pub fn charge(v: &MukaiVector, s: &Rat, ctx: &Context) -> ChargePoly {
    let b = beta_data(v, s, ctx);
    let n = ctx.nq();
    ChargePoly { re0: -b.a, re2: &n * &b.r, im1: int(2) * n * b.d }
}

/// `Im(Z(w) * conj Z(v)) / t` at the point; an exact rational.
pub fn cross(v: &MukaiVector, w: &MukaiVector, pt: &StabilityPoint, ctx: &Context) -> Rat {
    let zv = charge(v, &pt.s, ctx);
    let zw = charge(w, &pt.s, ctx);
    &zw.im1 * zv.re_at(&pt.t_sq) - zw.re_at(&pt.t_sq) * &zv.im1
}

fn is_zero_at(z: &ChargePoly, pt: &StabilityPoint) -> bool {
    z.im1.is_zero() && z.re_at(&pt.t_sq).is_zero()
}

/// Phase in `(-1, 1]`, from `Z = |Z| exp(i*pi*phi)`.
pub fn phase(v: &MukaiVector, pt: &StabilityPoint, ctx: &Context) -> Result<f64> {
    let z = charge(v, &pt.s, ctx);
    if is_zero_at(&z, pt) {
        return Err(Error::ZeroCharge);
    }
    let re = z.re_at(&pt.t_sq);
    if z.im1.is_zero() {
        return Ok(if re.is_negative() { 1.0 } else { 0.0 });
    }
    let t = rat_to_f64(&pt.t_sq).sqrt();
    let im = rat_to_f64(&z.im1) * t;
    Ok(im.atan2(rat_to_f64(&re)) / std::f64::consts::PI)
}

pub fn aligned(v: &MukaiVector, w: &MukaiVector, pt: &StabilityPoint, ctx: &Context) -> bool {
    cross(v, w, pt, ctx).is_zero()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhaseWindow {
    /// `phi(w)` lies in `(phi(v), phi(v) + 1)` mod 2.
    Above,
    Aligned,
    Below,
}

pub fn phase_window(v: &MukaiVector, w: &MukaiVector, pt: &StabilityPoint, ctx: &Context) -> Result<PhaseWindow> {
    if is_zero_at(&charge(v, &pt.s, ctx), pt) || is_zero_at(&charge(w, &pt.s, ctx), pt) {
        return Err(Error::ZeroCharge);
    }
    let c = cross(v, w, pt, ctx);
    Ok(if c.is_positive() {
        PhaseWindow::Above
    } else if c.is_negative() {
        PhaseWindow::Below
    } else {
        PhaseWindow::Aligned
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surd::rat;

    fn ctx() -> Context {
        Context::new(1).unwrap()
    }

    fn pt(s: Rat, t: Rat) -> StabilityPoint {
        StabilityPoint::new(s, t).unwrap()
    }

    #[test]
    fn charge_examples() {
        let c = ctx();
        let z = charge(&MukaiVector::from_ints(1, 0, -2), &int(0), &c);
        assert_eq!(z, ChargePoly { re0: int(2), re2: int(1), im1: int(0) });
        let z = charge(&MukaiVector::rho(), &rat(3, 7), &c);
        assert_eq!(z, ChargePoly { re0: int(-1), re2: int(0), im1: int(0) });
        let s = rat(-5, 3);
        let z = charge(&MukaiVector::exp(&s, &c), &s, &c);
        assert_eq!(z, ChargePoly { re0: int(0), re2: int(1), im1: int(0) });
    }

    #[test]
    fn phase_examples() {
        let c = ctx();
        let p = pt(int(0), int(1));
        assert_eq!(phase(&MukaiVector::from_ints(1, 0, -2), &p, &c).unwrap(), 0.0);
        assert_eq!(phase(&MukaiVector::rho(), &p, &c).unwrap(), 1.0);
        assert!((phase(&MukaiVector::from_ints(0, 1, 0), &p, &c).unwrap() - 0.5).abs() < 1e-12);
        let e = MukaiVector::exp(&int(0), &c);
        assert!(phase(&e, &pt(int(0), int(1)), &c).is_ok());
    }

    #[test]
    fn zero_charge() {
        let c = ctx();
        let v = MukaiVector::from_ints(1, 0, 1);
        assert!(matches!(phase(&v, &pt(int(0), int(1)), &c), Err(Error::ZeroCharge)));
    }

    #[test]
    fn alignment_on_ell3_wall() {
        let c = ctx();
        let v = MukaiVector::from_ints(1, 0, -3);
        let w = MukaiVector::from_ints(1, -1, 1);
        assert!(aligned(&v, &w, &pt(int(-2), int(1)), &c));
        assert!(aligned(&v, &v, &pt(int(-2), int(1)), &c));
        assert!(!aligned(&v, &w, &pt(int(-2), int(4)), &c));
    }

    #[test]
    fn window_three_cases() {
        let c = ctx();
        let v = MukaiVector::from_ints(1, 0, -3);
        let w = MukaiVector::from_ints(1, -1, 1);
        let inside = pt(rat(-7, 4), rat(1, 100));
        let on = pt(int(-2), int(1));
        let outside = pt(int(-4), int(1));
        assert_eq!(phase_window(&v, &w, &inside, &c).unwrap(), PhaseWindow::Above);
        assert_eq!(phase_window(&v, &w, &on, &c).unwrap(), PhaseWindow::Aligned);
        assert_eq!(phase_window(&v, &w, &outside, &c).unwrap(), PhaseWindow::Below);
        let pv = phase(&v, &inside, &c).unwrap();
        let pw = phase(&w, &inside, &c).unwrap();
        let diff = (pw - pv).rem_euclid(2.0);
        assert!(diff > 0.0 && diff < 1.0);
    }
}
