#![allow(dead_code)]

use parabolic_core::{Complex64, MobiusMap64, RealMobiusMap64, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sign(rng: &mut impl Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

pub fn complex(rng: &mut impl Rng, half_width: f64) -> Complex64 {
    Complex64::new(
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
    )
}

/// Parabolic map built from its fixed point, lower-left coefficient and
/// trace sign.
pub struct RandomMap {
    pub g: MobiusMap64,
    pub alpha: Complex64,
    pub c: Complex64,
    pub s: Sign,
}

pub fn parabolic(rng: &mut impl Rng) -> RandomMap {
    let alpha = complex(rng, 2.0);
    let c = Complex64::from_polar(rng.gen_range(0.25..3.0), rng.gen_range(0.0..std::f64::consts::TAU));
    let s = sign(rng);
    let g = MobiusMap64::parabolic_from_fixed_point(alpha, c, s).unwrap();
    RandomMap { g, alpha, c, s }
}

/// Real parabolic map with the requested `σ = s·sign(c)`.
pub fn real_parabolic(rng: &mut impl Rng, sigma: Sign) -> RealMobiusMap64 {
    let alpha = rng.gen_range(-2.0..2.0);
    let s = sign(rng);
    let c = rng.gen_range(0.25..3.0) * (s * sigma).value::<f64>();
    RealMobiusMap64::parabolic_from_fixed_point(alpha, c, s).unwrap()
}

/// Runs the CLI with whitespace-separated arguments.
pub fn cli(args: &str) -> parabolic_cli::Outcome {
    parabolic_cli::run_args(args.split_whitespace())
}

pub fn golden(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Parses an SVG document and checks the root element.
pub fn check_svg(text: &str) -> Result<roxmltree::Document<'_>, String> {
    let doc = roxmltree::Document::parse(text).map_err(|e| e.to_string())?;
    let root = doc.root_element();
    if root.tag_name().name() != "svg" || root.tag_name().namespace() != Some("http://www.w3.org/2000/svg") {
        return Err(format!("root is {:?}", root.tag_name()));
    }
    if root.attribute("version") != Some("1.1") {
        return Err("missing version=\"1.1\"".into());
    }
    if root.attribute("viewBox").map(|v| v.split_whitespace().count()) != Some(4) {
        return Err("bad viewBox".into());
    }
    Ok(doc)
}
