//! Command dispatch for the `mukai-walls` binary. Every command yields one
//! JSON document; `walls` can also write an SVG diagram.

pub mod json;
pub mod svg;

use clap::{Args, Parser, Subcommand, ValueEnum};
use json::*;
use mukai_walls::fmgroup::{act_on_vector, mobius, parse_gmatrix};
use mukai_walls::lattice::{pairing, square};
use mukai_walls::oracle::{align_cloud, brute_walls_with, cloud_hugs, ScanConfig, Window};
use mukai_walls::pell::{is_numerical_solution, is_square_case};
use mukai_walls::surd::{parse_complex, parse_rat};
use mukai_walls::walls::{
    classify_point, enumerate_walls_on_line_with, pencil, shapes_meet, square_case_walls, w_max_report,
    wall_atlas_with, witness_key,
};
use mukai_walls::{Context, Error, Exec, MukaiVector, PellContext, Rat, Wall};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::path::PathBuf;
use svg::{Diagram, Frame};

#[derive(Parser, Debug)]
#[command(name = "mukai-walls", version, about = "Walls and chambers for stability conditions on abelian surfaces")]
pub struct Cli {
    /// Worker threads for the enumeration loops; 1 runs sequentially.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// `text` prints one line per wall for `walls`; other commands always print JSON.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// The surface and the vector: `(H^2) = 2n`, and either `v = (1, 0, -ell)`
/// or an explicit `--v r,d,a`.
#[derive(Args, Debug, Clone)]
pub struct Family {
    #[arg(long, default_value_t = 1)]
    pub n: i64,
    #[arg(long)]
    pub ell: Option<i64>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "ell")]
    pub v: Option<String>,
    /// Index range `lo..hi` (or `lo:hi`) of the codimension-0 family.
    #[arg(long, allow_hyphen_values = true)]
    pub m_range: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Walls of the family (fundamental walls plus codimension-0 walls), or
    /// of `--v` along the line `s = s0`.
    Walls {
        #[command(flatten)]
        family: Family,
        #[arg(long, allow_hyphen_values = true)]
        s0: Option<String>,
        /// Plot window `s_min:s_max:t_max`.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Cross-check against the brute-force and float oracles.
        #[arg(long)]
        verify: bool,
    },
    /// Pell generator, iterates, isotropic pairs and numerical solutions.
    Pell {
        #[command(flatten)]
        family: Family,
    },
    /// Numerical solutions `v = l1 v1 - l2 v2` over the index range.
    Numsol {
        #[command(flatten)]
        family: Family,
    },
    /// Chamber of the point `(s, t^2)`.
    Classify {
        #[command(flatten)]
        family: Family,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        t2: String,
    },
    /// Interval `I_m` containing `lambda` and the sheaf verdict there.
    Intervals {
        #[command(flatten)]
        family: Family,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Cohomological action of a group matrix on a Mukai vector.
    Act {
        #[arg(long, default_value_t = 1)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Mobius action of a group matrix on a point of the upper half-plane.
    Mobius {
        #[arg(long, default_value_t = 1)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// The outermost wall in `r s < d` and its feet.
    Wmax {
        #[command(flatten)]
        family: Family,
        #[arg(long, allow_hyphen_values = true)]
        s0: Option<String>,
    },
    /// Runs the oracle checks for a family without printing walls.
    Verify {
        #[command(flatten)]
        family: Family,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
}

#[derive(Debug)]
pub enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(e) if e.is_invariant_violation() => 3,
            _ => 2,
        }
    }

    pub fn record(&self) -> ErrorRecord {
        match self {
            Failure::Lib(e) => ErrorRecord::from_error(e),
            Failure::Io(msg) => ErrorRecord::new("Io", msg.clone()),
        }
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub json: serde_json::Value,
    /// Replaces the JSON on stdout under `--format text`.
    pub text: Option<String>,
    pub svg: Option<(PathBuf, String)>,
    /// 3 when a verification check failed.
    pub exit_code: u8,
}

impl Outcome {
    fn json<T: Serialize>(x: &T) -> Outcome {
        Outcome { json: serde_json::to_value(x).expect("records serialize"), text: None, svg: None, exit_code: 0 }
    }
}

fn parse_range(text: &str) -> Result<(i64, i64), Error> {
    let (lo, hi) = text
        .split_once("..")
        .or_else(|| text.split_once(':'))
        .ok_or_else(|| Error::Parse(format!("range {text:?}: expected lo..hi")))?;
    let parse = |x: &str| x.trim().parse::<i64>().map_err(|e| Error::Parse(format!("range {text:?}: {e}")));
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo > hi {
        return Err(Error::Parse(format!("range {text:?}: lo > hi")));
    }
    Ok((lo, hi))
}

fn frame_of(text: &str) -> Result<Frame, Error> {
    Frame::parse(text).map_err(Error::Parse)
}

enum Target {
    Pell(PellContext),
    Square { n: i64, ell: i64 },
    Vector(MukaiVector, Context),
}

impl Family {
    fn target(&self) -> Result<Target, Error> {
        match (&self.v, self.ell) {
            (Some(v), _) => Ok(Target::Vector(v.parse()?, Context::new(self.n)?)),
            (None, Some(ell)) => {
                let ctx = Context::new(self.n)?;
                if ell >= 1 && is_square_case(ctx.n(), &ell.into()) {
                    Ok(Target::Square { n: self.n, ell })
                } else {
                    Ok(Target::Pell(PellContext::new(self.n, ell)?))
                }
            }
            (None, None) => Err(Error::Precondition("give --ell or --v".into())),
        }
    }

    fn pell(&self) -> Result<PellContext, Error> {
        match self.target()? {
            Target::Pell(p) => Ok(p),
            Target::Square { n, ell } => Err(Error::SquareCase { n: n.to_string(), ell: ell.to_string() }),
            Target::Vector(..) => Err(Error::Precondition("this command needs --ell".into())),
        }
    }

    fn range(&self, default: (i64, i64)) -> Result<(i64, i64), Error> {
        self.m_range.as_deref().map_or(Ok(default), parse_range)
    }
}

/// The vector, its context, its walls and the cross-section they were
/// enumerated on.
struct WallSet {
    v: MukaiVector,
    ctx: Context,
    walls: Vec<Wall>,
    s0: Option<Rat>,
    pell: Option<PellContext>,
}

fn wall_set(family: &Family, s0: Option<&str>, default_range: (i64, i64), exec: Exec) -> Result<WallSet, Error> {
    let s0 = s0.map(parse_rat).transpose()?;
    match family.target()? {
        Target::Pell(p) => {
            let (lo, hi) = family.range(default_range)?;
            let walls = wall_atlas_with(&p, lo, hi, exec)?;
            Ok(WallSet { v: p.v(), ctx: p.ctx().clone(), walls, s0: s0.or_else(|| p.slope(-1)), pell: Some(p) })
        }
        Target::Square { n, ell } => {
            let walls = square_case_walls(n, ell)?;
            let ctx = Context::new(n)?;
            Ok(WallSet { v: MukaiVector::from_ints(1, 0, -ell), ctx, walls, s0, pell: None })
        }
        Target::Vector(v, ctx) => {
            let s0 = s0.ok_or_else(|| Error::Precondition("--v needs --s0".into()))?;
            let walls = enumerate_walls_on_line_with(&v, &s0, &ctx, exec)?;
            Ok(WallSet { v, ctx, walls, s0: Some(s0), pell: None })
        }
    }
}

const VERIFY_BOUND: i64 = 10;
const VERIFY_GRID: f64 = 0.01;
const VERIFY_TOL: f64 = 1e-9;

fn check(name: &str, ok: bool, detail: String) -> CheckRecord {
    CheckRecord { name: name.into(), ok, detail }
}

/// Oracle cross-checks for a wall set.
fn verify(set: &WallSet, frame: Frame, exec: Exec) -> Result<VerifyRecord, Error> {
    let WallSet { v, ctx, walls, s0, pell } = set;
    let mut checks = Vec::new();

    let meets: Vec<String> = walls
        .iter()
        .enumerate()
        .flat_map(|(i, a)| {
            walls[i + 1..]
                .iter()
                .filter(|b| shapes_meet(&a.shape, &b.shape))
                .map(move |b| format!("{} / {}", a.shape, b.shape))
        })
        .collect();
    checks.push(check("disjoint", meets.is_empty(), meets.join("; ")));

    if !v.r.is_zero() {
        let pen = pencil(v, ctx)?;
        let off: Vec<String> = walls.iter().filter(|w| !pen.contains(&w.shape)).map(|w| w.shape.to_string()).collect();
        checks.push(check("pencil", off.is_empty(), off.join("; ")));
    }

    if let Some(s0) = s0 {
        let enumerated = enumerate_walls_on_line_with(v, s0, ctx, exec)?;
        let brute = brute_walls_with(v, s0, VERIFY_BOUND, ctx, exec)?;
        let shapes = |ws: &[Wall]| ws.iter().map(|w| w.shape.clone()).collect::<std::collections::BTreeSet<_>>();
        let (e, b) = (shapes(&enumerated), shapes(&brute));
        let bound = Rat::from_integer(VERIFY_BOUND.into());
        let saturated = enumerated.iter().all(|w| witness_key(&w.witness).0 <= bound);
        let ok = b.is_subset(&e) && (!saturated || b == e);
        let detail = format!("s0 = {s0}: {} enumerated, {} found with entries <= {VERIFY_BOUND}", e.len(), b.len());
        checks.push(check("brute_force", ok, detail));
    }

    let cfg = ScanConfig::new(VERIFY_BOUND, VERIFY_GRID, VERIFY_TOL)?;
    let window = Window { s_min: frame.s_min, s_max: frame.s_max, t_max: frame.t_max };
    let mut far = Vec::new();
    for w in walls {
        let cloud = align_cloud(v, &w.witness, &window, &cfg, ctx);
        if !cloud_hugs(&cloud, &w.shape, VERIFY_GRID, 1.0) {
            far.push(w.shape.to_string());
        }
    }
    checks.push(check("float_scan", far.is_empty(), far.join("; ")));

    if let Some(p) = pell {
        let c = p.ctx();
        let bad: Vec<i64> = (-8..=8)
            .filter(|&m| {
                let (u, up) = p.u_vectors(m);
                let comb = &u.scale(&p.ell().clone()) - &up;
                !(square(&u, c).is_zero()
                    && square(&up, c).is_zero()
                    && pairing(&u, &up, c) == -Rat::one()
                    && (comb == p.v() || comb == -p.v())
                    && is_numerical_solution(&p.numerical_solution(m), &p.v(), c))
            })
            .collect();
        checks.push(check("isotropic_pairs", bad.is_empty(), format!("failing m: {bad:?}")));
    }
    Ok(VerifyRecord::from_checks(checks))
}

fn caption(v: &MukaiVector, ctx: &Context) -> String {
    format!("walls for v = ({v}), (H^2) = {}", ctx.n() * 2)
}

fn configure_threads(jobs: Option<usize>) -> Exec {
    match jobs {
        Some(1) => Exec::Sequential,
        Some(k) => {
            // A second build in the same process keeps the first pool.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            Exec::Parallel
        }
        None => Exec::default(),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let exec = configure_threads(cli.jobs);
    match &cli.command {
        Command::Walls { family, s0, window, svg, verify: want_verify } => {
            let set = wall_set(family, s0.as_deref(), (-1, 0), exec)?;
            let frame = match window {
                Some(w) => frame_of(w)?,
                None => Frame::around(&set.walls),
            };
            let verify_record = if *want_verify { Some(verify(&set, frame, exec)?) } else { None };
            let exit_code = if verify_record.as_ref().is_some_and(|r| !r.ok) { 3 } else { 0 };
            let record = WallsRecord {
                n: set.ctx.n().to_string(),
                ell: family.ell.map(|l| l.to_string()),
                v: set.v.to_string(),
                walls: set.walls.iter().map(Into::into).collect(),
                verify: verify_record,
            };
            let svg = svg.as_ref().map(|path| {
                let d = Diagram {
                    frame,
                    walls: &set.walls,
                    cross_section: set.s0.clone(),
                    caption: caption(&set.v, &set.ctx),
                };
                (path.clone(), svg::render(&d))
            });
            let text =
                (cli.format == Format::Text).then(|| set.walls.iter().map(|w| format!("{w}\n")).collect::<String>());
            Ok(Outcome { text, svg, exit_code, ..Outcome::json(&record) })
        }
        Command::Pell { family } => {
            let p = family.pell()?;
            let (lo, hi) = family.range((-3, 3))?;
            Ok(Outcome::json(&PellRecord::new(&p, lo, hi)))
        }
        Command::Numsol { family } => {
            let p = family.pell()?;
            let (lo, hi) = family.range((-3, 3))?;
            let sols: Vec<NumSolRecord> =
                p.numerical_solutions(lo, hi).iter().map(|(m, s)| NumSolRecord::new(*m, s)).collect();
            Ok(Outcome::json(&sols))
        }
        Command::Classify { family, s, t2 } => {
            let set = wall_set(family, Some(s), (-4, 4), exec)?;
            let (s, t_sq) = (parse_rat(s)?, parse_rat(t2)?);
            if !t_sq.is_positive() {
                return Err(Error::Precondition("--t2 must be positive".into()).into());
            }
            let report = classify_point(&set.v, &s, &t_sq, &set.walls);
            Ok(Outcome::json(&ClassifyRecord {
                v: set.v.to_string(),
                s: s.to_string(),
                t_sq: t_sq.to_string(),
                chamber: (&report).into(),
            }))
        }
        Command::Intervals { family, lambda } => {
            let p = family.pell()?;
            let lambda = parse_rat(lambda)?;
            let idx = p.interval_index(&lambda)?;
            let sv = p.sheaf_verdict(&lambda, idx.m)?;
            let verdict = match (sv.stable_sheaf, sv.dual_stable_sheaf) {
                (true, true) => "Both",
                (true, false) => "StableSheaf",
                (false, true) => "DualStableSheaf",
                (false, false) => "Neither",
            };
            Ok(Outcome::json(&IntervalRecord {
                lambda: lambda.to_string(),
                m: idx.m,
                starred: idx.starred,
                m_star: idx.m_star,
                spans: span_strings(&p.interval(idx.m)),
                verdict: Some(VerdictRecord {
                    m: idx.m,
                    stable_sheaf: sv.stable_sheaf,
                    dual_stable_sheaf: sv.dual_stable_sheaf,
                    verdict: verdict.into(),
                }),
            }))
        }
        Command::Act { n, g, v } => {
            let ctx = Context::new(*n)?;
            let (g, v) = (parse_gmatrix(g, &ctx)?, v.parse::<MukaiVector>()?);
            let image = act_on_vector(&v, &g, &ctx)?;
            Ok(Outcome::json(&ActRecord { v: v.to_string(), matrix: g.to_string(), image: image.to_string() }))
        }
        Command::Mobius { n, g, z } => {
            let ctx = Context::new(*n)?;
            let (g, z) = (parse_gmatrix(g, &ctx)?, parse_complex(z, ctx.n())?);
            let image = mobius(&g, &z, &ctx)?;
            Ok(Outcome::json(&MobiusRecord { matrix: g.to_string(), z: z.to_string(), image: image.to_string() }))
        }
        Command::Wmax { family, s0 } => {
            let set = wall_set(family, s0.as_deref(), (-1, 0), exec)?;
            let report = w_max_report(&set.v, &set.walls)?;
            Ok(Outcome::json(&WMaxRecord::new(&set.v, &report)))
        }
        Command::Verify { family, window } => {
            let set = wall_set(family, None, (-1, 0), exec)?;
            let frame = match window {
                Some(w) => frame_of(w)?,
                None => Frame::around(&set.walls),
            };
            let record = verify(&set, frame, exec)?;
            let exit_code = if record.ok { 0 } else { 3 };
            Ok(Outcome { exit_code, ..Outcome::json(&record) })
        }
    }
}

/// Writes the SVG, then prints the JSON (or text) document to stdout.
pub fn emit(outcome: &Outcome) -> Result<(), Failure> {
    if let Some((path, body)) = &outcome.svg {
        std::fs::write(path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    match &outcome.text {
        Some(text) => print!("{text}"),
        None => println!("{}", serde_json::to_string_pretty(&outcome.json).expect("json value prints")),
    }
    Ok(())
}
