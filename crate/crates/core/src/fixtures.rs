//! The bundled map corpus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::mapanalysis::is_dominant;
use crate::parse::{parse_map, render_map};
use crate::poly::PolyMap;

pub const PASFERME: &str = "\
name: pasferme
vars: x1 x2 x3
targets: a1 a2 a3
map:
x1^3 - x1*x2*x3
x2*x3
x3*x1
";

pub const REMARK48: &str = "\
name: remark48
vars: x1 x2 x3
targets: a1 a2 a3
map:
x1^3 - x1*x2*x3
x2*x3
x3
";

pub const REMARK49: &str = "\
name: remark49
vars: x1 x2 x3
targets: a1 a2 a3
map:
x1^2 - x2*x3
x2 - x3
x1 - x3
";

pub const IDENTITY: &str = "\
name: identity
vars: x1 x2
map:
x1
x2
";

pub const XY: &str = "\
name: xy
vars: x y
map:
x
x*y
";

pub const LINEAR: &str = "\
name: linear
vars: x1 x2 x3
map:
2*x1 + x2
x2 - x3
x1 + x3 + 1
";

pub const SQUARES: &str = "\
name: squares
vars: x y
map:
x^2
y^2
";

/// Seeds of the two random quadratic maps in the corpus.
pub const RANDOM_SEEDS: [u64; 2] = [7, 11];

pub fn pasferme() -> PolyMap {
    parse_map(PASFERME).expect("bundled map parses")
}

pub fn remark48() -> PolyMap {
    parse_map(REMARK48).expect("bundled map parses")
}

pub fn remark49() -> PolyMap {
    parse_map(REMARK49).expect("bundled map parses")
}

pub fn identity() -> PolyMap {
    parse_map(IDENTITY).expect("bundled map parses")
}

pub fn xy() -> PolyMap {
    parse_map(XY).expect("bundled map parses")
}

pub fn linear() -> PolyMap {
    parse_map(LINEAR).expect("bundled map parses")
}

pub fn squares() -> PolyMap {
    parse_map(SQUARES).expect("bundled map parses")
}

fn coeff(rng: &mut ChaCha8Rng) -> i64 {
    rng.gen_range(-1..=1)
}

fn random_quadratic_text(rng: &mut ChaCha8Rng, name: &str) -> String {
    let monos = ["x^2", "x*y", "y^2", "x", "y"];
    let mut lines = Vec::new();
    for _ in 0..2 {
        loop {
            let cs: Vec<i64> = monos.iter().map(|_| coeff(rng)).collect();
            if cs[..3].iter().all(|&c| c == 0) {
                continue;
            }
            let terms: Vec<String> = cs
                .iter()
                .zip(monos)
                .filter(|(c, _)| **c != 0)
                .map(|(c, m)| format!("({c})*{m}"))
                .collect();
            lines.push(terms.join(" + "));
            break;
        }
    }
    format!("name: {name}\nvars: x y\nmap:\n{}\n{}\n", lines[0], lines[1])
}

/// A dominant map `C² → C²` with quadratic components drawn from `seed`,
/// coefficients in `{-1, 0, 1}`.
pub fn random_quadratic(seed: u64) -> Result<PolyMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let name = format!("random-{seed}");
    loop {
        let map = parse_map(&random_quadratic_text(&mut rng, &name))?;
        if is_dominant(&map)? {
            return Ok(map);
        }
    }
}

/// Every corpus map with its name, sorted by name.
pub fn corpus() -> Result<Vec<(String, PolyMap)>> {
    let mut out = vec![
        ("identity".to_string(), identity()),
        ("linear".to_string(), linear()),
        ("pasferme".to_string(), pasferme()),
        ("remark48".to_string(), remark48()),
        ("remark49".to_string(), remark49()),
        ("squares".to_string(), squares()),
        ("xy".to_string(), xy()),
    ];
    for s in RANDOM_SEEDS {
        out.push((format!("random-{s}"), random_quadratic(s)?));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Map text of a named corpus entry.
pub fn map_text(name: &str) -> Option<String> {
    match name {
        "pasferme" => Some(PASFERME.to_string()),
        "remark48" => Some(REMARK48.to_string()),
        "remark49" => Some(REMARK49.to_string()),
        "identity" => Some(IDENTITY.to_string()),
        "xy" => Some(XY.to_string()),
        "linear" => Some(LINEAR.to_string()),
        "squares" => Some(SQUARES.to_string()),
        _ => {
            let seed = name.strip_prefix("random-")?.parse().ok()?;
            random_quadratic(seed).ok().map(|m| render_map(&m))
        }
    }
}
