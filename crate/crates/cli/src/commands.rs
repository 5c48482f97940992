use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, to_value, Map, Value};
use stratkit::mapanalysis::{point_in_image, singular_locus};
use stratkit::thom::{self, stratification_json, Stratification};
use stratkit::{fixtures, Analysis, PolyMap, Rational, Result};

use crate::report::Report;
use crate::{Command, Options};

const SAMPLES: usize = 6;

fn val<T: serde::Serialize>(x: T) -> Result<Value> {
    Ok(to_value(x).expect("report types serialize"))
}

pub fn run(cmd: Command, report: &mut Report, map: &PolyMap, opts: &Options) {
    if cmd == Command::Jacobian {
        report.stage("jacobian", || jacobian(map));
        return;
    }
    if cmd == Command::SingularLocus {
        report.stage("singular_locus", || {
            let s = singular_locus(map)?;
            val(json!({ "ideal": s.render()?, "dimension": s.dimension()? }))
        });
        return;
    }
    let an = match Analysis::new(map.clone()) {
        Ok(an) => an,
        Err(e) => return report.record_error("analysis", e),
    };
    match cmd {
        Command::CriticalValues => {
            report.stage("critical_values", || {
                let closure = an.k0_closure()?;
                let k0 = an.k0()?.normalize()?;
                let purity = k0.is_pure_dimensional()?;
                val(json!({
                    "closure": closure.render()?,
                    "closure_dimension": closure.dimension()?,
                    "pieces": k0.to_json()?,
                    "pure": purity.pure,
                }))
            });
        }
        Command::AsymptoticSet => {
            report.stage("asymptotic_set", || {
                let sf = an.sf()?;
                val(json!({
                    "ideal": sf.render()?,
                    "dimension": sf.dimension()?,
                    "jelonek": an.jelonek()?,
                }))
            });
        }
        Command::Dominant => {
            report.stage("dominant", || val(an.dominant()?));
        }
        Command::Proper => {
            report.stage("proper", || val(an.proper()?));
        }
        Command::LeadingForms => {
            report.stage("leading_forms", || val(an.leading()?.to_json()));
        }
        Command::ThomPartition => {
            report.stage("thom_partition", || {
                let ws = an
                    .thom_partition()?
                    .iter()
                    .map(|w| w.to_json())
                    .collect::<Result<Vec<_>>>()?;
                val(ws)
            });
        }
        Command::Stratify => {
            if prelude(report, &an) {
                stratify_stage(report, &an);
            }
        }
        Command::Verify => {
            if !prelude(report, &an) {
                return;
            }
            if let Some(s) = stratify_only(report, &an) {
                verify_stages(report, &an, &s, opts.seed);
            }
        }
        Command::Conjecture => {
            if !prelude(report, &an) {
                return;
            }
            let Some(s) = stratify_only(report, &an) else {
                return;
            };
            report.stage("conjecture", || val(thom::conjecture_of(&an, &s)?));
        }
        Command::Jacobian | Command::SingularLocus | Command::Corpus => unreachable!(),
    }
}

fn jacobian(map: &PolyMap) -> Result<Value> {
    let j = map.jacobian();
    let rows: Vec<Vec<String>> = (0..j.rows())
        .map(|i| j.row(i).iter().map(|p| p.to_string()).collect())
        .collect();
    let mut out = Map::new();
    out.insert("matrix".into(), json!(rows));
    out.insert("generic_rank".into(), json!(j.generic_rank()?));
    let det = if j.rows() == j.cols() {
        Some(j.determinant()?.to_string())
    } else {
        None
    };
    out.insert("determinant".into(), json!(det));
    Ok(Value::Object(out))
}

/// The closed sets everything else is built from, so that a budget failure
/// later on still leaves them in the report.
fn prelude(report: &mut Report, an: &Analysis) -> bool {
    report.stage("singular_locus", || val(an.sing()?.render()?))
        && report.stage("k0_closure", || val(an.k0_closure()?.render()?))
        && report.stage("asymptotic_set", || val(an.sf()?.render()?))
}

fn stratify_only(report: &mut Report, an: &Analysis) -> Option<Stratification> {
    let start = std::time::Instant::now();
    let s = thom::stratify(an);
    report.timing("stratify", start.elapsed().as_secs_f64());
    match s {
        Ok(s) => Some(s),
        Err(e) => {
            report.record_error("stratify", e);
            None
        }
    }
}

fn stratify_stage(report: &mut Report, an: &Analysis) -> Option<Stratification> {
    let s = stratify_only(report, an)?;
    report
        .stage("stratification", || val(stratification_json(an, &s)?))
        .then_some(s)
}

/// Closedness, frontier, Jelonek and transversality, plus a sampled
/// comparison of K₀ membership against fibre computations.
fn verify_stages(report: &mut Report, an: &Analysis, s: &Stratification, seed: u64) {
    let mut bad = Vec::new();
    let ok = report.stage("closedness", || {
        let c = thom::closedness_of(an)?;
        if !c.ok {
            bad.push("closedness");
        }
        val(c)
    }) && report.stage("frontier", || {
        if !s.frontier.ok {
            bad.push("frontier");
        }
        val(&s.frontier)
    }) && report.stage("jelonek", || {
        let j = an.jelonek()?;
        if !j.ok {
            bad.push("jelonek");
        }
        val(j)
    }) && report.stage("transversality", || {
        if !s.transversality.ok {
            bad.push("transversality");
        }
        val(&s.transversality)
    }) && report.stage("samples", || {
        let (v, agree) = sampled_k0(an, seed)?;
        if !agree {
            bad.push("samples");
        }
        Ok(v)
    });
    for b in bad {
        report.violation(b);
    }
    if ok {
        let v = report.violations.is_empty();
        report.results.insert("ok".into(), json!(v));
    }
}

fn sampled_k0(an: &Analysis, seed: u64) -> Result<(Value, bool)> {
    let map = an.map();
    let n = map.arity();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> Vec<Rational> {
        (0..n)
            .map(|_| Rational::from_integer(rng.gen_range(-2i64..=2).into()))
            .collect()
    };
    let mut points = Vec::new();
    for _ in 0..SAMPLES {
        points.push(draw(&mut rng));
    }
    for _ in 0..SAMPLES {
        let x = draw(&mut rng);
        points.push(map.evaluate(&x)?);
    }
    let sing = an.sing()?;
    let k0 = an.k0()?;
    let mut disagreements = Vec::new();
    let mut inside = 0;
    for p in &points {
        let by_pieces = k0.contains_point(p)?;
        let by_fibre = point_in_image(map, sing, p)?;
        inside += usize::from(by_fibre);
        if by_pieces != by_fibre {
            let coords: Vec<String> = p.iter().map(|c| c.to_string()).collect();
            disagreements.push(format!("({})", coords.join(", ")));
        }
    }
    let agree = disagreements.is_empty();
    let v = json!({
        "seed": seed,
        "points": points.len(),
        "in_k0": inside,
        "disagreements": disagreements,
    });
    Ok((v, agree))
}

struct FixtureRun {
    name: String,
    report: Report,
}

fn run_fixture(name: String, map: PolyMap, opts: &Options, budget: u64) -> FixtureRun {
    stratkit::ideal::budget::set_step_budget(budget);
    let mut report = Report::new("corpus", budget, opts.timings);
    let an = match Analysis::new(map) {
        Ok(an) => an,
        Err(e) => {
            report.record_error("analysis", e);
            return FixtureRun { name, report };
        }
    };
    if report.stage("analysis", || val(an.report()?)) {
        if let Some(s) = stratify_stage(&mut report, &an) {
            report.stage("conjecture", || val(thom::conjecture_of(&an, &s)?));
            verify_stages(&mut report, &an, &s, opts.seed);
        }
    }
    FixtureRun { name, report }
}

/// Every fixture on its own thread; results merged by fixture name.
pub fn corpus(report: &mut Report, opts: &Options, budget: u64) {
    let maps = match fixtures::corpus() {
        Ok(m) => m,
        Err(e) => return report.record_error("corpus", e),
    };
    let mut runs: Vec<FixtureRun> = std::thread::scope(|scope| {
        let handles: Vec<_> = maps
            .into_iter()
            .map(|(name, map)| scope.spawn(move || run_fixture(name, map, opts, budget)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("fixture thread panicked"))
            .collect()
    });
    runs.sort_by(|a, b| a.name.cmp(&b.name));
    let mut summary = Map::new();
    for FixtureRun { name, report: r } in runs {
        let ok = r.error.is_none() && r.violations.is_empty();
        summary.insert(name.clone(), json!(ok));
        for v in &r.violations {
            report.violation(format!("{name}: {v}"));
        }
        for l in &r.limits_hit {
            report.limits_hit.push(format!("{name}: {l}"));
        }
        if let Some(e) = &r.error {
            report.fail(format!("{name}: {e}"));
        }
        if report.timings_enabled() {
            let total: f64 = r
                .to_value()
                .get("timings")
                .and_then(Value::as_object)
                .map(|t| t.values().filter_map(Value::as_f64).sum())
                .unwrap_or(0.0);
            report.timing(&name, total);
        }
        report
            .results
            .insert(name, Value::Object(r.results));
    }
    report.results.insert("summary".into(), Value::Object(summary));
}
