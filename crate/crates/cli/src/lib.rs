//! Command-line driver: parses a job, runs it against the core library and
//! renders JSON, CSV or SVG.

pub mod render;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use parabolic_core::horocycle::{self, Circle, Horocycle};
use parabolic_core::orbit::iterate;
use parabolic_core::stability::{
    build_complex_witness_with, build_real_witness, build_translation_witness, separation_profile, verify_with,
    WitnessOptions,
};
use parabolic_core::{
    Complex64, Conclusion, Error, MapClass, MobiusMap64, PseudoOrbit64, RealMobiusMap64, SpherePoint64,
    StabilityVerdict64,
};

pub use render::{render_svg, Scene};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_PARABOLIC: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Classify,
    Orbit,
    Horocycle,
    Witness,
    Verify,
    Plot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotScene {
    Horocycles,
    Orbit,
    Separation,
}

/// One invocation.
#[derive(Debug, Clone, Parser)]
#[command(
    name = "parabolic",
    version,
    about = "Parabolic Möbius dynamics and non-stability witnesses"
)]
pub struct JobConfig {
    pub mode: Mode,

    /// Map coefficients a,b,c,d (real) or a_re,a_im,b_re,...,d_im (complex).
    #[arg(long, allow_hyphen_values = true)]
    pub map: String,

    /// Use dynamics on the extended real line.
    #[arg(long)]
    pub real: bool,

    /// Starting point `re,im` (or just `re`).
    #[arg(long, alias = "z0", default_value = "0,0", allow_hyphen_values = true)]
    pub b0: String,

    #[arg(long)]
    pub epsilon: Option<f64>,

    /// Run one verified witness per epsilon in `a:b:n` (inclusive, evenly spaced).
    #[arg(long, value_name = "A:B:N")]
    pub sweep_epsilon: Option<String>,

    /// Last index computed (forward steps for `orbit`).
    #[arg(long, default_value_t = 100)]
    pub horizon: usize,

    /// Backward steps for `orbit`.
    #[arg(long, default_value_t = 0)]
    pub backward: usize,

    /// Verify the witness right after building it.
    #[arg(long)]
    pub verify: bool,

    #[arg(long, default_value_t = 5)]
    pub min_exceed: usize,

    /// Separation that counts as exceeding.
    #[arg(long, default_value_t = 1.0)]
    pub threshold: f64,

    /// Raise the horizon to the minimum that `--min-exceed` needs.
    #[arg(long)]
    pub auto_horizon: bool,

    /// Use the horocycle on the other side of `L∞`.
    #[arg(long)]
    pub mirror: bool,

    /// Horocycle through this point (repeatable).
    #[arg(long = "point", allow_hyphen_values = true)]
    pub points: Vec<String>,

    /// Horocycle with this centre on the centre line (repeatable).
    #[arg(long = "center", allow_hyphen_values = true)]
    pub centers: Vec<String>,

    /// Sample count for invariance checks.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,

    /// Geometric tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,

    /// Pseudo-orbit JSON for `verify`.
    #[arg(long)]
    pub input: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub scene: Option<PlotScene>,

    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,

    /// Write the artifact here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Result of [`run`]: exit code and the two streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotParabolic { .. } | Error::SingularMatrix { .. } => EXIT_NOT_PARABOLIC,
            _ => EXIT_INVALID,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type Res<T> = Result<T, Failure>;

fn numbers(field: &str, s: &str) -> Res<Vec<f64>> {
    s.split(',')
        .enumerate()
        .map(|(i, t)| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Failure::invalid(format!("--{field}: value {} ({:?}) is not a finite number", i + 1, t)))
        })
        .collect()
}

pub fn parse_complex(field: &str, s: &str) -> Res<Complex64> {
    match numbers(field, s)?[..] {
        [re] => Ok(Complex64::new(re, 0.0)),
        [re, im] => Ok(Complex64::new(re, im)),
        ref v => Err(Failure::invalid(format!(
            "--{field}: expected re or re,im, got {} values",
            v.len()
        ))),
    }
}

/// The map as given on the command line, before normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MapArg {
    Real([f64; 4]),
    Complex([Complex64; 4]),
}

pub fn parse_map(s: &str) -> Res<MapArg> {
    let v = numbers("map", s)?;
    match v.len() {
        4 => Ok(MapArg::Real([v[0], v[1], v[2], v[3]])),
        8 => Ok(MapArg::Complex([
            Complex64::new(v[0], v[1]),
            Complex64::new(v[2], v[3]),
            Complex64::new(v[4], v[5]),
            Complex64::new(v[6], v[7]),
        ])),
        n => Err(Failure::invalid(format!(
            "--map: expected 4 or 8 comma-separated numbers, got {n}"
        ))),
    }
}

impl MapArg {
    fn complex(&self) -> Res<MobiusMap64> {
        Ok(match *self {
            MapArg::Real([a, b, c, d]) => MobiusMap64::from_real(a, b, c, d)?,
            MapArg::Complex([a, b, c, d]) => MobiusMap64::normalize(a, b, c, d)?,
        })
    }

    fn real(&self) -> Res<RealMobiusMap64> {
        match *self {
            MapArg::Real([a, b, c, d]) => Ok(RealMobiusMap64::new(a, b, c, d)?),
            MapArg::Complex(z) if z.iter().all(|z| z.im == 0.0) => {
                Ok(RealMobiusMap64::new(z[0].re, z[1].re, z[2].re, z[3].re)?)
            }
            MapArg::Complex(_) => Err(Failure::invalid("--real needs real coefficients")),
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn csv_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x}")
    } else {
        "inf".into()
    }
}

/// Runs one job. Artifacts go to `--out` when given, otherwise to
/// `stdout`.
pub fn run(config: &JobConfig) -> Outcome {
    let result = dispatch(config).and_then(|(artifact, code)| match &config.out {
        Some(path) => std::fs::write(path, &artifact)
            .map(|_| (String::new(), code))
            .map_err(|e| Failure {
                code: EXIT_IO,
                message: format!("cannot write {}: {e}", path.display()),
            }),
        None => Ok((artifact, code)),
    });
    match result {
        Ok((stdout, code)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("{}\n", f.message),
        },
    }
}

/// Parses `args` (without the program name) and runs the job. Usage errors
/// exit with 2.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("parabolic")).chain(args.into_iter().map(Into::into));
    match JobConfig::try_parse_from(argv) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

fn dispatch(cfg: &JobConfig) -> Res<(String, i32)> {
    let map = parse_map(&cfg.map)?;
    match cfg.mode {
        Mode::Classify => classify(cfg, &map),
        Mode::Orbit => orbit(cfg, &map, cfg.format),
        Mode::Horocycle => horocycles(cfg, &map, cfg.format),
        Mode::Witness => witness(cfg, &map, cfg.format),
        Mode::Verify => verify_input(cfg, &map, cfg.format),
        Mode::Plot => match cfg.scene {
            Some(PlotScene::Horocycles) | None => horocycles(cfg, &map, Format::Svg),
            Some(PlotScene::Orbit) => orbit(cfg, &map, Format::Svg),
            Some(PlotScene::Separation) if cfg.input.is_some() => verify_input(cfg, &map, Format::Svg),
            Some(PlotScene::Separation) => witness(cfg, &map, Format::Svg),
        },
    }
}

#[derive(Serialize)]
struct ClassifyReport {
    class: &'static str,
    sign: i8,
    alpha: SpherePoint64,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma: Option<i8>,
}

fn classify(cfg: &JobConfig, map: &MapArg) -> Res<(String, i32)> {
    if cfg.format != Format::Json {
        return Err(Failure::invalid("classify only writes json"));
    }
    let g = map.complex()?;
    let sign = g.trace_direction()?;
    debug_assert_eq!(g.classify(), MapClass::Parabolic(sign));
    let sigma = if cfg.real {
        Some(map.real()?.sigma()?.as_i8())
    } else {
        None
    };
    let report = ClassifyReport {
        class: g.classify().name(),
        sign: sign.as_i8(),
        alpha: g.fixed_point()?,
        sigma,
    };
    Ok((json(&report), EXIT_OK))
}

#[derive(Serialize)]
struct OrbitReport {
    alpha: Option<SpherePoint64>,
    backward: usize,
    points: Vec<SpherePoint64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<parabolic_core::IntervalLabel>>,
}

fn start_point(cfg: &JobConfig) -> Res<SpherePoint64> {
    Ok(SpherePoint64::Finite(parse_complex("b0", &cfg.b0)?))
}

fn real_start(cfg: &JobConfig) -> Res<f64> {
    let z = parse_complex("b0", &cfg.b0)?;
    if z.im != 0.0 {
        return Err(Failure::invalid("--b0 must be real with --real"));
    }
    Ok(z.re)
}

fn orbit(cfg: &JobConfig, map: &MapArg, format: Format) -> Res<(String, i32)> {
    let g = map.complex()?;
    let alpha = g.fixed_point().ok();
    let (points, backward, labels) = if cfg.real {
        let r = map.real()?;
        let x0 = SpherePoint64::real(real_start(cfg)?);
        if cfg.backward > 0 {
            return Err(Failure::invalid("--backward is not supported with --real"));
        }
        let pts = std::iter::successors(Some(x0), |x| Some(r.apply(*x)))
            .take(cfg.horizon + 1)
            .collect::<Vec<_>>();
        let labels = if r.sigma().is_ok() {
            Some(pts.iter().map(|x| r.locate(*x)).collect::<Result<Vec<_>, _>>()?)
        } else {
            None
        };
        (pts, 0, labels)
    } else {
        let o = iterate(&g, start_point(cfg)?, cfg.horizon, cfg.backward);
        (o.points, o.backward, None)
    };
    let indexed = || points.iter().enumerate().map(|(i, z)| (i as i64 - backward as i64, *z));
    Ok(match format {
        Format::Json => (
            json(&OrbitReport {
                alpha,
                backward,
                points: points.clone(),
                labels,
            }),
            EXIT_OK,
        ),
        Format::Csv => {
            let mut s = String::from("n,re,im,dist_to_alpha\n");
            for (n, z) in indexed() {
                let dist = match (alpha, z) {
                    (Some(a), _) => csv_num(parabolic_core::euclid_distance(a, z).value()),
                    (None, _) => String::new(),
                };
                let (re, im) = z.finite().map_or(("inf".to_string(), "inf".to_string()), |z| {
                    (csv_num(z.re), csv_num(z.im))
                });
                let _ = writeln!(s, "{n},{re},{im},{dist}");
            }
            (s, EXIT_OK)
        }
        Format::Svg => {
            let pts = indexed().filter_map(|(n, z)| z.finite().map(|z| (n, z))).collect();
            let scene = Scene::Orbit {
                alpha: alpha.and_then(|a| a.finite()),
                points: pts,
            };
            (render_svg(&scene), EXIT_OK)
        }
    })
}

#[derive(Serialize)]
struct HorocycleEntry {
    horocycle: Horocycle<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    through: Option<SpherePoint64>,
    max_residual: f64,
}

#[derive(Serialize)]
struct HorocycleReport {
    alpha: Complex64,
    center_line: CenterLineJson,
    horocycles: Vec<HorocycleEntry>,
}

#[derive(Serialize)]
struct CenterLineJson {
    anchor: Complex64,
    direction: Complex64,
}

fn horocycles(cfg: &JobConfig, map: &MapArg, format: Format) -> Res<(String, i32)> {
    let g = map.complex()?;
    let nf = g.normal_form()?;
    let line = horocycle::center_line(&g)?;
    let mut entries = vec![];
    let l_inf = horocycle::extended_line(&g)?;
    entries.push(HorocycleEntry {
        horocycle: l_inf,
        through: None,
        max_residual: horocycle::check_invariance(&g, &l_inf, cfg.samples).max_residual,
    });
    for s in &cfg.centers {
        let p = parse_complex("center", s)?;
        let scale = 1.0f64.max(p.norm());
        if line.distance(p) > cfg.tol * scale {
            return Err(Failure::invalid(format!("--center {s}: not on the centre line")));
        }
        if (p - nf.alpha).norm() <= cfg.tol * scale {
            return Err(Error::FixedPointInput.into());
        }
        let hc = Horocycle::Circle(Circle {
            center: p,
            radius: (p - nf.alpha).norm(),
        });
        entries.push(HorocycleEntry {
            horocycle: hc,
            through: None,
            max_residual: horocycle::check_invariance(&g, &hc, cfg.samples).max_residual,
        });
    }
    for s in &cfg.points {
        let z = SpherePoint64::Finite(parse_complex("point", s)?);
        let hc = horocycle::horocycle_through(&g, z)?;
        entries.push(HorocycleEntry {
            horocycle: hc,
            through: Some(z),
            max_residual: horocycle::check_invariance(&g, &hc, cfg.samples).max_residual,
        });
    }
    let (anchor, direction) = match l_inf {
        Horocycle::ExtendedLine { anchor, direction } => (anchor, direction),
        Horocycle::Circle(_) => unreachable!("L∞ is a line"),
    };
    Ok(match format {
        Format::Json => (
            json(&HorocycleReport {
                alpha: nf.alpha,
                center_line: CenterLineJson {
                    anchor: line.anchor,
                    direction: line.direction,
                },
                horocycles: entries,
            }),
            EXIT_OK,
        ),
        Format::Csv => {
            let mut s = String::from("kind,center_re,center_im,radius,max_residual\n");
            for e in &entries {
                match e.horocycle {
                    Horocycle::ExtendedLine { .. } => {
                        let _ = writeln!(s, "line,,,,{}", csv_num(e.max_residual));
                    }
                    Horocycle::Circle(k) => {
                        let _ = writeln!(
                            s,
                            "circle,{},{},{},{}",
                            csv_num(k.center.re),
                            csv_num(k.center.im),
                            csv_num(k.radius),
                            csv_num(e.max_residual)
                        );
                    }
                }
            }
            (s, EXIT_OK)
        }
        Format::Svg => {
            let circles = entries
                .iter()
                .filter_map(|e| e.horocycle.as_circle().copied())
                .collect();
            let _ = anchor;
            let scene = Scene::Horocycles {
                alpha: nf.alpha,
                direction,
                circles,
            };
            (render_svg(&scene), EXIT_OK)
        }
    })
}

/// A map able to drive a pseudo-orbit: complex, real, or a translation.
enum Driver {
    Complex(MobiusMap64),
    Real(RealMobiusMap64),
}

impl Driver {
    fn from_cfg(cfg: &JobConfig, map: &MapArg) -> Res<Self> {
        if cfg.real {
            Ok(Driver::Real(map.real()?))
        } else {
            Ok(Driver::Complex(map.complex()?))
        }
    }

    fn verify(
        &self,
        pseudo: &PseudoOrbit64,
        b0: SpherePoint64,
        min_exceed: usize,
        threshold: f64,
    ) -> Res<StabilityVerdict64> {
        Ok(match self {
            Driver::Complex(g) => verify_with(g, pseudo, b0, min_exceed, threshold)?,
            Driver::Real(r) => verify_with(r, pseudo, b0, min_exceed, threshold)?,
        })
    }

    fn separation(&self, pseudo: &PseudoOrbit64, b0: SpherePoint64) -> Vec<(usize, f64)> {
        match self {
            Driver::Complex(g) => separation_profile(g, pseudo, b0),
            Driver::Real(r) => separation_profile(r, pseudo, b0),
        }
    }

    fn build(&self, cfg: &JobConfig, b0: SpherePoint64, epsilon: f64, horizon: usize) -> Res<PseudoOrbit64> {
        Ok(match self {
            Driver::Real(r) => build_real_witness(r, real_start(cfg)?, epsilon, horizon)?,
            Driver::Complex(g) if g.fixes_infinity() => {
                // z ↦ (az + b)/d with a = d = ±1 after normalization
                let near = (g.a() - g.d()).norm() <= 1e-12;
                if !near {
                    return Err(Failure::from(g.trace_direction().err().unwrap_or(Error::FixesInfinity)));
                }
                let a0 = b0.finite().ok_or(Error::NonFinite)?;
                build_translation_witness(g.b() / g.d(), a0, epsilon, horizon)?
            }
            Driver::Complex(g) => {
                build_complex_witness_with(g, b0, epsilon, horizon, WitnessOptions { mirror: cfg.mirror })?
            }
        })
    }

    /// Builds with the configured horizon, or with the smallest one that
    /// fits `--min-exceed` when `--auto-horizon` is set.
    fn build_fitted(&self, cfg: &JobConfig, b0: SpherePoint64, epsilon: f64) -> Res<PseudoOrbit64> {
        let pseudo = self.build(cfg, b0, epsilon, cfg.horizon)?;
        if !cfg.auto_horizon {
            return Ok(pseudo);
        }
        let need = pseudo.preperiod + cfg.min_exceed * pseudo.period;
        if need > cfg.horizon {
            self.build(cfg, b0, epsilon, need)
        } else {
            Ok(pseudo)
        }
    }
}

#[derive(Serialize)]
struct WitnessReport<'a> {
    pseudo_orbit: &'a PseudoOrbit64,
    verdict: &'a StabilityVerdict64,
}

fn verdict_code(v: &StabilityVerdict64) -> i32 {
    match v.conclusion {
        Conclusion::NonStabilityWitnessed => EXIT_OK,
        Conclusion::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn separation_csv(values: &[(usize, f64)]) -> String {
    let mut s = String::from("n,separation\n");
    for (n, d) in values {
        let _ = writeln!(s, "{n},{}", csv_num(*d));
    }
    s
}

fn parse_sweep(s: &str) -> Res<Vec<f64>> {
    let bad = || Failure::invalid(format!("--sweep-epsilon {s}: expected a:b:n"));
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts[..] else { return Err(bad()) };
    let (a, b): (f64, f64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    let n: usize = n.parse().map_err(|_| bad())?;
    match n {
        0 => Err(bad()),
        1 => Ok(vec![a]),
        _ => Ok((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()),
    }
}

fn check_horizon(cfg: &JobConfig) -> Res<()> {
    if cfg.horizon == 0 {
        return Err(Failure::invalid("--horizon must be at least 1"));
    }
    Ok(())
}

fn witness(cfg: &JobConfig, map: &MapArg, format: Format) -> Res<(String, i32)> {
    check_horizon(cfg)?;
    let driver = Driver::from_cfg(cfg, map)?;
    let b0 = if cfg.real {
        SpherePoint64::real(real_start(cfg)?)
    } else {
        start_point(cfg)?
    };

    if let Some(sweep) = &cfg.sweep_epsilon {
        let eps = parse_sweep(sweep)?;
        let verdicts: Vec<StabilityVerdict64> = eps
            .par_iter()
            .map(|&e| {
                let pseudo = driver.build_fitted(cfg, b0, e)?;
                driver.verify(&pseudo, b0, cfg.min_exceed, cfg.threshold)
            })
            .collect::<Res<Vec<_>>>()?;
        let code = verdicts.iter().map(verdict_code).max().unwrap_or(EXIT_OK);
        return Ok(match format {
            Format::Json => (json(&verdicts), code),
            Format::Csv => {
                let mut s = String::from("epsilon,defect_observed,exceed_count,conclusion\n");
                for v in &verdicts {
                    let _ = writeln!(
                        s,
                        "{},{},{},{:?}",
                        v.epsilon,
                        csv_num(v.defect_observed),
                        v.exceed_count,
                        v.conclusion
                    );
                }
                (s, code)
            }
            Format::Svg => return Err(Failure::invalid("--sweep-epsilon writes json or csv")),
        });
    }

    let epsilon = cfg.epsilon.ok_or_else(|| Failure::invalid("--epsilon is required"))?;
    let pseudo = driver.build_fitted(cfg, b0, epsilon)?;
    let verdict = if cfg.verify {
        Some(driver.verify(&pseudo, b0, cfg.min_exceed, cfg.threshold)?)
    } else {
        None
    };
    let code = verdict.as_ref().map_or(EXIT_OK, verdict_code);
    Ok(match format {
        Format::Json => match &verdict {
            Some(v) => (
                json(&WitnessReport {
                    pseudo_orbit: &pseudo,
                    verdict: v,
                }),
                code,
            ),
            None => (json(&pseudo), code),
        },
        Format::Csv => (separation_csv(&driver.separation(&pseudo, b0)), code),
        Format::Svg => {
            let scene = Scene::Separation {
                values: driver.separation(&pseudo, b0),
                threshold: cfg.threshold,
            };
            (render_svg(&scene), code)
        }
    })
}

fn verify_input(cfg: &JobConfig, map: &MapArg, format: Format) -> Res<(String, i32)> {
    let path = cfg
        .input
        .as_ref()
        .ok_or_else(|| Failure::invalid("--input is required"))?;
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_IO,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    let pseudo: PseudoOrbit64 = serde_json::from_str(&text).map_err(|e| {
        Failure::invalid(format!(
            "{}: line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })?;
    let driver = Driver::from_cfg(cfg, map)?;
    let b0 = if cfg.real {
        SpherePoint64::real(real_start(cfg)?)
    } else {
        start_point(cfg)?
    };
    let verdict = driver.verify(&pseudo, b0, cfg.min_exceed, cfg.threshold)?;
    let code = verdict_code(&verdict);
    Ok(match format {
        Format::Json => (json(&verdict), code),
        Format::Csv => (separation_csv(&driver.separation(&pseudo, b0)), code),
        Format::Svg => {
            let scene = Scene::Separation {
                values: driver.separation(&pseudo, b0),
                threshold: cfg.threshold,
            };
            (render_svg(&scene), code)
        }
    })
}
