//! JSON records. Rationals and surds travel as strings such as `"-3/2"` or
//! `"2*sqrt(3)"`; no field is ever a float.

use mukai_walls::pell::{Iterate, NumericalSolution, PellContext, Span};
use mukai_walls::surd::parse_rat;
use mukai_walls::walls::{ChamberReport, WMaxReport};
use mukai_walls::{Error, MukaiVector, Result, Shape, Wall};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeRecord {
    Circle { center: String, radius_sq: String },
    Vline { s: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallRecord {
    pub shape: ShapeRecord,
    pub witness: String,
    pub codim0: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
}

impl From<&Shape> for ShapeRecord {
    fn from(s: &Shape) -> ShapeRecord {
        match s {
            Shape::Circle { center, radius_sq } => {
                ShapeRecord::Circle { center: center.to_string(), radius_sq: radius_sq.to_string() }
            }
            Shape::VLine { s } => ShapeRecord::Vline { s: s.to_string() },
        }
    }
}

impl TryFrom<&ShapeRecord> for Shape {
    type Error = Error;
    fn try_from(r: &ShapeRecord) -> Result<Shape> {
        Ok(match r {
            ShapeRecord::Circle { center, radius_sq } => {
                Shape::Circle { center: parse_rat(center)?, radius_sq: parse_rat(radius_sq)? }
            }
            ShapeRecord::Vline { s } => Shape::VLine { s: parse_rat(s)? },
        })
    }
}

impl From<&Wall> for WallRecord {
    fn from(w: &Wall) -> WallRecord {
        WallRecord { shape: (&w.shape).into(), witness: w.witness.to_string(), codim0: w.codim0, m: w.m }
    }
}

impl TryFrom<&WallRecord> for Wall {
    type Error = Error;
    fn try_from(r: &WallRecord) -> Result<Wall> {
        Ok(Wall { shape: (&r.shape).try_into()?, witness: r.witness.parse()?, codim0: r.codim0, m: r.m })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub ok: bool,
    pub checks: Vec<CheckRecord>,
}

impl VerifyRecord {
    pub fn from_checks(checks: Vec<CheckRecord>) -> VerifyRecord {
        VerifyRecord { ok: checks.iter().all(|c| c.ok), checks }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallsRecord {
    pub n: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<String>,
    pub v: String,
    pub walls: Vec<WallRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterateRecord {
    pub m: i64,
    pub a: String,
    pub b: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope_dual: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellRecord {
    pub n: String,
    pub ell: String,
    /// `y,l*x;x,y`.
    pub generator: String,
    pub epsilon: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion: Option<String>,
    pub iterates: Vec<IterateRecord>,
    pub u_vectors: Vec<UVectorRecord>,
    pub numerical_solutions: Vec<NumSolRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UVectorRecord {
    pub m: i64,
    pub u: String,
    pub u_prime: String,
}

impl PellRecord {
    pub fn new(p: &PellContext, lo: i64, hi: i64) -> PellRecord {
        let [a, b, c, d] = p.generator().entries(p.ell());
        let iterates = (lo..=hi)
            .map(|m| {
                let Iterate { m, a, b } = p.iterate(m);
                IterateRecord {
                    m,
                    a: a.to_string(),
                    b: b.to_string(),
                    slope: p.slope(m).map(|q| q.to_string()),
                    slope_dual: p.slope_dual(m).map(|q| q.to_string()),
                }
            })
            .collect();
        PellRecord {
            n: p.n().to_string(),
            ell: p.ell().to_string(),
            generator: format!("{a},{b};{c},{d}"),
            epsilon: p.epsilon(),
            torsion: p.torsion().map(|t| {
                let [a, b, c, d] = t.entries(p.ell());
                format!("{a},{b};{c},{d}")
            }),
            iterates,
            u_vectors: (lo..=hi)
                .map(|m| {
                    let (u, up) = p.u_vectors(m);
                    UVectorRecord { m, u: u.to_string(), u_prime: up.to_string() }
                })
                .collect(),
            numerical_solutions: p.numerical_solutions(lo, hi).iter().map(|(m, s)| NumSolRecord::new(*m, s)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumSolRecord {
    pub m: i64,
    pub v1: String,
    pub v2: String,
    pub l1: String,
    pub l2: String,
    /// `v = sign * (l1*v1 - l2*v2)`.
    pub sign: i32,
}

impl NumSolRecord {
    pub fn new(m: i64, s: &NumericalSolution) -> NumSolRecord {
        NumSolRecord {
            m,
            v1: s.v1.to_string(),
            v2: s.v2.to_string(),
            l1: s.l1.to_string(),
            l2: s.l2.to_string(),
            sign: s.sign,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ChamberRecord {
    OnWall {
        wall: WallRecord,
    },
    Gieseker,
    DualGieseker,
    Bounded {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        inner: Option<WallRecord>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        outer: Option<WallRecord>,
    },
}

impl From<&ChamberReport> for ChamberRecord {
    fn from(c: &ChamberReport) -> ChamberRecord {
        match c {
            ChamberReport::OnWall(w) => ChamberRecord::OnWall { wall: w.into() },
            ChamberReport::Gieseker => ChamberRecord::Gieseker,
            ChamberReport::DualGieseker => ChamberRecord::DualGieseker,
            ChamberReport::Bounded { inner, outer } => {
                ChamberRecord::Bounded { inner: inner.as_ref().map(Into::into), outer: outer.as_ref().map(Into::into) }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyRecord {
    pub v: String,
    pub s: String,
    pub t_sq: String,
    pub chamber: ChamberRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub m: i64,
    pub stable_sheaf: bool,
    pub dual_stable_sheaf: bool,
    /// `StableSheaf`, `DualStableSheaf`, `Both` or `Neither`.
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub lambda: String,
    pub m: i64,
    pub starred: bool,
    pub m_star: i64,
    /// Half-open pieces `[lo, hi)` of `I_m`.
    pub spans: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictRecord>,
}

pub fn span_strings(spans: &[Span]) -> Vec<[String; 2]> {
    spans.iter().map(|s| [s.lo.to_string(), s.hi.to_string()]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActRecord {
    pub v: String,
    pub matrix: String,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusRecord {
    pub matrix: String,
    pub z: String,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WMaxRecord {
    pub v: String,
    pub wall: WallRecord,
    pub lambda1: String,
    pub lambda2: String,
    /// Ranges of `lambda` on which the Gieseker chamber is kept.
    pub ranges: [String; 2],
}

impl WMaxRecord {
    pub fn new(v: &MukaiVector, r: &WMaxReport) -> WMaxRecord {
        let p = &v.d / mukai_walls::Rat::from_integer(v.r.clone());
        WMaxRecord {
            v: v.to_string(),
            wall: (&r.wall).into(),
            lambda1: r.lambda1.to_string(),
            lambda2: r.lambda2.to_string(),
            ranges: [format!("lambda <= {}", r.lambda1), format!("{} <= lambda < {p}", r.lambda2)],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub error: ErrorBody,
}

impl ErrorRecord {
    pub fn new(kind: &str, message: String) -> ErrorRecord {
        ErrorRecord { error: ErrorBody { kind: kind.to_string(), message } }
    }

    pub fn from_error(e: &Error) -> ErrorRecord {
        let dbg = format!("{e:?}");
        let kind = dbg.split(['(', ' ', '{']).next().unwrap_or("Error");
        ErrorRecord::new(kind, e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mukai_walls::surd::{int, rat};
    use serde::de::DeserializeOwned;

    fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(x: &T) {
        let text = serde_json::to_string(x).unwrap();
        assert_eq!(&serde_json::from_str::<T>(&text).unwrap(), x, "{text}");
    }

    fn sample_wall() -> Wall {
        Wall {
            shape: Shape::Circle { center: rat(-3, 2), radius_sq: rat(1, 4) },
            witness: MukaiVector::from_ints(1, -1, 1),
            codim0: true,
            m: Some(-1),
        }
    }

    #[test]
    fn wall_schema() {
        let rec = WallRecord::from(&sample_wall());
        let text = serde_json::to_string(&rec).unwrap();
        assert_eq!(
            text,
            r#"{"shape":{"circle":{"center":"-3/2","radius_sq":"1/4"}},"witness":"1,-1,1","codim0":true,"m":-1}"#
        );
        let line = Wall { shape: Shape::VLine { s: int(0) }, m: None, codim0: false, ..sample_wall() };
        let text = serde_json::to_string(&WallRecord::from(&line)).unwrap();
        assert_eq!(text, r#"{"shape":{"vline":{"s":"0"}},"witness":"1,-1,1","codim0":false}"#);
        assert_eq!(Wall::try_from(&rec).unwrap(), sample_wall());
    }

    #[test]
    fn records_round_trip() {
        let w = WallRecord::from(&sample_wall());
        round_trip(&w);
        round_trip(&WallsRecord {
            n: "1".into(),
            ell: Some("2".into()),
            v: "1,0,-2".into(),
            walls: vec![w.clone()],
            verify: Some(VerifyRecord::from_checks(vec![CheckRecord {
                name: "x".into(),
                ok: true,
                detail: String::new(),
            }])),
        });
        let p = PellContext::new(2, 1).unwrap();
        round_trip(&PellRecord::new(&p, -2, 2));
        round_trip(&NumSolRecord::new(-1, &p.numerical_solution(-1)));
        for c in [
            ChamberRecord::OnWall { wall: w.clone() },
            ChamberRecord::Gieseker,
            ChamberRecord::DualGieseker,
            ChamberRecord::Bounded { inner: None, outer: Some(w.clone()) },
        ] {
            round_trip(&ClassifyRecord { v: "1,0,-2".into(), s: "0".into(), t_sq: "1".into(), chamber: c });
        }
        round_trip(&IntervalRecord {
            lambda: "-3/2".into(),
            m: -2,
            starred: false,
            m_star: -1,
            spans: span_strings(&PellContext::new(1, 2).unwrap().interval(-2)),
            verdict: Some(VerdictRecord {
                m: -2,
                stable_sheaf: true,
                dual_stable_sheaf: false,
                verdict: "StableSheaf".into(),
            }),
        });
        round_trip(&ActRecord { v: "0,0,1".into(), matrix: "1,2;1,1".into(), image: "1,1,1".into() });
        round_trip(&MobiusRecord { matrix: "1,0;0,-1".into(), z: "1+i".into(), image: "-1+i".into() });
        round_trip(&ErrorRecord::from_error(&Error::NoWalls));
    }

    #[test]
    fn error_kinds() {
        assert_eq!(ErrorRecord::from_error(&Error::NoWalls).error.kind, "NoWalls");
        let e = Error::SquareCase { n: "1".into(), ell: "4".into() };
        assert_eq!(ErrorRecord::from_error(&e).error.kind, "SquareCase");
        assert_eq!(ErrorRecord::from_error(&Error::Parse("x".into())).error.kind, "Parse");
    }
}
