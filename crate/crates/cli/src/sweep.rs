use serde::Serialize;
use serde_json::json;

use matchlab_core::folner::{folner_search, SearchOutcome, Strategy};
use matchlab_core::rational::{self, Rational};

use crate::cli::SweepArgs;
use crate::commands::load_group;
use crate::error::{CliError, Outcome};
use crate::folner::{coloring_cover, translate_set};
use crate::manifest::{write_atomic, Inputs};
use crate::schema::{parse_mode, parse_rational};
use crate::Report;

#[derive(Debug, Serialize)]
struct Row {
    theta: String,
    /// Lossy; `theta` is exact.
    theta_decimal_lossy: f64,
    max_radius: usize,
    outcome: &'static str,
    f_size: usize,
    best_ratio: String,
    /// Lossy; `best_ratio` is exact.
    best_ratio_decimal_lossy: f64,
}

/// `start:stop:step`, inclusive of `stop`.
fn grid(spec: &str) -> Result<Vec<Rational>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return Err(CliError::Invalid(format!("theta grid {spec:?} is not start:stop:step")));
    };
    let (start, stop, step) = (parse_rational(start)?, parse_rational(stop)?, parse_rational(step)?);
    if step <= rational::int(0) {
        return Err(CliError::Invalid("theta grid step must be positive".into()));
    }
    let mut out = Vec::new();
    let mut t = start;
    while t <= stop {
        out.push(t.clone());
        t += &step;
    }
    Ok(out)
}

pub fn sweep(args: SweepArgs) -> Result<Report, CliError> {
    let mut inputs = Inputs::default();
    let group = load_group(&mut inputs, &args.group.group)?;
    let e = translate_set(&group, &args.group.e)?;
    let mode = parse_mode(&args.mode)?;
    let thetas = grid(&args.theta_grid)?;
    let cover = coloring_cover(&mut inputs, &group, &e, &args.coloring, args.max_radius, args.window_cap)?;
    let mut rows = Vec::new();
    for theta in &thetas {
        for r in 0..=args.max_radius {
            let outcome = folner_search(&group, &e, &cover, theta, mode, Strategy::Balls { max_radius: r })?;
            let (name, f_size, ratio) = match outcome {
                SearchOutcome::Found(cert) => ("found", cert.f.len(), cert.min_ratio()),
                SearchOutcome::Exhausted { best_f, best_ratio, .. } => ("exhausted", best_f.len(), best_ratio),
            };
            rows.push(Row {
                theta: rational::format(theta),
                theta_decimal_lossy: rational::to_f64(theta),
                max_radius: r,
                outcome: name,
                f_size,
                best_ratio: rational::format(&ratio),
                best_ratio_decimal_lossy: rational::to_f64(&ratio),
            });
        }
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        writer.serialize(row).map_err(|e| CliError::Invalid(e.to_string()))?;
    }
    let bytes = writer.into_inner().map_err(|e| CliError::Invalid(e.to_string()))?;
    if let Some(path) = &args.out {
        write_atomic(path, &bytes)?;
    }
    let text = String::from_utf8(bytes).expect("csv output is utf-8");
    Ok(Report::new(Outcome::Pass, json!({ "rows": rows }), text.trim_end().to_string()))
}
