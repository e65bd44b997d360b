//! Brute-force and floating-point cross-checks for the exact wall code.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::lattice::{square, Context, MukaiVector};
use crate::surd::{rat_to_f64, Rat};
use crate::walls::{wall_between, witness_key, Shape, Wall};
use crate::Exec;

#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    /// Entry bound `B` for witness scans.
    pub entry_bound: i64,
    /// Grid step in `s` and `t`.
    pub grid: f64,
    pub tol: f64,
}

impl ScanConfig {
    pub fn new(entry_bound: i64, grid: f64, tol: f64) -> Result<ScanConfig> {
        if entry_bound < 1 || grid.is_nan() || grid <= 0.0 || tol.is_nan() || tol <= 0.0 {
            return Err(Error::Precondition("need B >= 1, grid > 0, tol > 0".into()));
        }
        Ok(ScanConfig { entry_bound, grid, tol })
    }
}

/// Walls of `v` crossing `s = s0` with a witness in `[-B, B]^3`.
pub fn brute_walls(v: &MukaiVector, s0: &Rat, bound: i64, ctx: &Context) -> Result<Vec<Wall>> {
    brute_walls_with(v, s0, bound, ctx, Exec::default())
}

pub fn brute_walls_with(v: &MukaiVector, s0: &Rat, bound: i64, ctx: &Context, exec: Exec) -> Result<Vec<Wall>> {
    if !square(v, ctx).is_positive() {
        return Err(Error::DegenerateV(square(v, ctx).to_string()));
    }
    let ranks: Vec<i64> = (-bound..=bound).collect();
    let found = crate::flat_map_cells(exec, &ranks, |&r1| {
        let mut out = Vec::new();
        for d1 in -bound..=bound {
            for a1 in -bound..=bound {
                let w = MukaiVector::from_ints(r1, d1, a1);
                if let Ok(Some(wall)) = wall_between(v, &w, ctx) {
                    if wall.shape.crosses(s0) {
                        out.push(wall);
                    }
                }
            }
        }
        out
    });
    let mut best: BTreeMap<Shape, Wall> = BTreeMap::new();
    for w in found {
        let key = |x: &Wall| (witness_key(&x.witness), x.witness.clone());
        match best.get(&w.shape) {
            Some(old) if key(old) <= key(&w) => {}
            _ => {
                best.insert(w.shape.clone(), w);
            }
        }
    }
    Ok(best.into_values().collect())
}

/// Scan rectangle `[s_min, s_max] x (0, t_max]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub s_min: f64,
    pub s_max: f64,
    pub t_max: f64,
}

struct FloatVec {
    r: f64,
    d: f64,
    a: f64,
}

impl FloatVec {
    fn of(v: &MukaiVector) -> FloatVec {
        FloatVec { r: v.r.to_f64().unwrap_or(f64::NAN), d: rat_to_f64(&v.d), a: rat_to_f64(&v.a) }
    }

    /// `Z(v)` at `(s, t)`.
    fn charge(&self, n: f64, s: f64, t: f64) -> (f64, f64) {
        let a_beta = self.a - 2.0 * n * self.d * s + n * self.r * s * s;
        let d_beta = self.d - self.r * s;
        (-a_beta + n * self.r * t * t, 2.0 * n * d_beta * t)
    }
}

/// `Im(Z(w) conj Z(v)) / t`, evaluated in floats.
fn float_cross(v: &FloatVec, w: &FloatVec, n: f64, s: f64, t: f64) -> f64 {
    let (vr, vi) = v.charge(n, s, t);
    let (wr, wi) = w.charge(n, s, t);
    (wi * vr - wr * vi) / t
}

/// One cloud per wall, scanned with the wall's witness.
pub fn float_align_scan(
    v: &MukaiVector,
    walls: &[Wall],
    window: &Window,
    cfg: &ScanConfig,
    ctx: &Context,
) -> Vec<(Wall, Vec<(f64, f64)>)> {
    walls.iter().map(|w| (w.clone(), align_cloud(v, &w.witness, window, cfg, ctx))).collect()
}

/// Grid points where the float phases of `v` and `w` align: `|F| <= tol`, or
/// `F` changes sign towards the next grid point in `s` or `t`.
pub fn align_cloud(
    v: &MukaiVector,
    w: &MukaiVector,
    window: &Window,
    cfg: &ScanConfig,
    ctx: &Context,
) -> Vec<(f64, f64)> {
    let (fv, fw) = (FloatVec::of(v), FloatVec::of(w));
    let n = ctx.n().to_f64().unwrap_or(f64::NAN);
    let h = cfg.grid;
    let cols = ((window.s_max - window.s_min) / h).round() as i64;
    let rows = (window.t_max / h).round() as i64;
    let f = |i: i64, j: i64| float_cross(&fv, &fw, n, window.s_min + i as f64 * h, j as f64 * h);
    let row_ids: Vec<i64> = (1..=rows).collect();
    crate::flat_map_cells(Exec::default(), &row_ids, |&j| {
        let mut out = Vec::new();
        for i in 0..=cols {
            let here = f(i, j);
            let flips = |other: f64| here.signum() * other.signum() < 0.0;
            let hit = here.abs() <= cfg.tol || (i < cols && flips(f(i + 1, j))) || (j < rows && flips(f(i, j + 1)));
            if hit {
                out.push((window.s_min + i as f64 * h, j as f64 * h));
            }
        }
        out
    })
}

/// Euclidean distance from `(s, t)` to the shape.
pub fn distance_to(shape: &Shape, s: f64, t: f64) -> f64 {
    match shape {
        Shape::Circle { center, radius_sq } => {
            let (c, r) = (rat_to_f64(center), rat_to_f64(radius_sq).sqrt());
            ((s - c).hypot(t) - r).abs()
        }
        Shape::VLine { s: s0 } => (s - rat_to_f64(s0)).abs(),
    }
}

/// Every cloud point lies within `cells` grid steps of the shape.
pub fn cloud_hugs(cloud: &[(f64, f64)], shape: &Shape, grid: f64, cells: f64) -> bool {
    let reach = cells * grid * std::f64::consts::SQRT_2;
    cloud.iter().all(|&(s, t)| distance_to(shape, s, t) <= reach)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surd::{int, rat};
    use crate::walls::enumerate_walls_on_line;

    fn v(r: i64, d: i64, a: i64) -> MukaiVector {
        MukaiVector::from_ints(r, d, a)
    }

    #[test]
    fn brute_examples() {
        let c = Context::new(1).unwrap();
        let ws = brute_walls(&v(1, 0, -3), &int(-2), 6, &c).unwrap();
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].shape, Shape::Circle { center: int(-2), radius_sq: int(1) });
        assert!(brute_walls(&v(1, 0, -2), &int(-1), 8, &c).unwrap().is_empty());
    }

    #[test]
    fn brute_is_monotone_and_stabilizes() {
        let c = Context::new(1).unwrap();
        let vv = v(2, -1, -4);
        let s0 = rat(-3, 2);
        let exact: Vec<Shape> = enumerate_walls_on_line(&vv, &s0, &c).unwrap().into_iter().map(|w| w.shape).collect();
        let mut prev: Vec<Shape> = Vec::new();
        for b in 1..=7 {
            let cur: Vec<Shape> = brute_walls(&vv, &s0, b, &c).unwrap().into_iter().map(|w| w.shape).collect();
            assert!(prev.iter().all(|s| cur.contains(s)));
            assert!(cur.iter().all(|s| exact.contains(s)));
            prev = cur;
        }
        assert_eq!(prev, exact);
    }

    #[test]
    fn scan_hugs_the_l2_circle() {
        let c = Context::new(1).unwrap();
        let cfg = ScanConfig::new(1, 0.01, 1e-9).unwrap();
        let win = Window { s_min: -3.0, s_max: 0.0, t_max: 1.5 };
        let w = v(1, -1, 1);
        let shape = wall_between(&v(1, 0, -2), &w, &c).unwrap().unwrap().shape;
        let cloud = align_cloud(&v(1, 0, -2), &w, &win, &cfg, &c);
        assert!(!cloud.is_empty());
        assert!(cloud_hugs(&cloud, &shape, cfg.grid, 1.0));
    }

    #[test]
    fn scan_trivial_cases() {
        let c = Context::new(1).unwrap();
        let cfg = ScanConfig::new(1, 0.02, 1e-9).unwrap();
        let win = Window { s_min: -1.0, s_max: 1.0, t_max: 1.0 };
        let vv = v(1, 0, -2);
        let none: Vec<Wall> = wall_between(&vv, &v(1, 0, 1), &c).unwrap().into_iter().collect();
        assert!(float_align_scan(&vv, &none, &win, &cfg, &c).is_empty());
        let line: Vec<Wall> = wall_between(&vv, &v(1, 0, 0), &c).unwrap().into_iter().collect();
        let scans = float_align_scan(&vv, &line, &win, &cfg, &c);
        let cloud = &scans[0].1;
        assert!(!cloud.is_empty());
        assert!(cloud.iter().all(|&(s, _)| s.abs() <= cfg.grid + 1e-12));
    }

    #[test]
    fn config_validation() {
        assert!(ScanConfig::new(0, 0.1, 0.1).is_err());
        assert!(ScanConfig::new(1, 0.0, 0.1).is_err());
        assert!(ScanConfig::new(1, 0.1, 0.1).is_ok());
    }
}
