use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use matchlab_core::cover::{Covering, GroundSet};
use matchlab_core::folner::{
    adversary_coloring, folner_search, monochromatic_translate, perfect_net, window_for, AdversaryStrategy, Coloring,
    MonoResult, SearchOutcome, Strategy,
};
use matchlab_core::groups::{GroupElem, GroupKind, GroupModel};
use matchlab_core::rational;

use crate::cli::{AdversaryArgs, AdversaryKind, CoverSource, MonoArgs, NetArgs, SearchArgs, SearchStrategy};
use crate::commands::{load_group, write_json};
use crate::error::{CliError, Outcome};
use crate::manifest::{Inputs, RunManifest};
use crate::schema::{
    format_elems, parse_elems, parse_mode, parse_rational, CertificateJson, ColoringJson, CoveringJson,
};
use crate::Report;

/// `--e`, or the group's generators when it is empty.
pub(crate) fn translate_set(group: &GroupModel, e: &[String]) -> Result<Vec<GroupElem>, CliError> {
    if e.is_empty() {
        Ok(group.generators().to_vec())
    } else {
        parse_elems(group, e)
    }
}

/// Colors `window` by a named rule.
fn rule_coloring(group: &GroupModel, window: GroundSet<GroupElem>, rule: &str) -> Result<Coloring<GroupElem>, CliError> {
    let parts: Vec<&str> = rule.split(':').collect();
    let coloring = match parts.as_slice() {
        ["parity"] => Coloring::from_fn(window, 1, |g| match g {
            GroupElem::Vector(v) => v.iter().sum::<i64>().rem_euclid(2) as usize,
            GroupElem::Word(w) => w.len() % 2,
            GroupElem::Index(i) => i % 2,
        }),
        ["first-letter"] => {
            if !matches!(group.kind(), GroupKind::Free { .. }) {
                return Err(CliError::Invalid("first-letter coloring needs a free group".into()));
            }
            Coloring::from_fn(window, 1, |g| match g {
                GroupElem::Word(w) if w.first() == Some(&1) => 1,
                _ => 0,
            })
        }
        ["random", k, seed] => {
            let k: usize = k.parse().map_err(|_| CliError::Invalid(format!("bad color count in {rule:?}")))?;
            let seed: u64 = seed.parse().map_err(|_| CliError::Invalid(format!("bad seed in {rule:?}")))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Coloring::from_fn(window, k, |_| rng.gen_range(0..=k))
        }
        _ => return Err(CliError::Invalid(format!("unknown coloring {rule:?}"))),
    };
    Ok(coloring?)
}

/// The covering named by `--cover` or `--coloring`; rule colorings are laid
/// over the window of radius `radius`.
pub(crate) fn resolve_cover(
    inputs: &mut Inputs,
    group: &GroupModel,
    e: &[GroupElem],
    source: &CoverSource,
    radius: usize,
    cap: usize,
) -> Result<Covering<GroupElem>, CliError> {
    if let Some(path) = &source.cover {
        return inputs.read_json::<CoveringJson>(path)?.to_group_cover(group);
    }
    let rule = source
        .coloring
        .as_deref()
        .ok_or_else(|| CliError::Invalid("need --cover or --coloring".into()))?;
    coloring_cover(inputs, group, e, rule, radius, cap)
}

pub(crate) fn coloring_cover(
    inputs: &mut Inputs,
    group: &GroupModel,
    e: &[GroupElem],
    rule: &str,
    radius: usize,
    cap: usize,
) -> Result<Covering<GroupElem>, CliError> {
    if Path::new(rule).is_file() {
        let c: ColoringJson = inputs.read_json(rule)?;
        let ground = GroundSet::new(parse_elems(group, &c.ground)?)?;
        return Ok(Coloring::new(ground, c.colors, c.k)?.partition());
    }
    let window = window_for(group, e, radius, cap)?;
    Ok(rule_coloring(group, window, rule)?.partition())
}

pub fn search(args: SearchArgs, argv: Vec<String>) -> Result<Report, CliError> {
    let mut inputs = Inputs::default();
    let group = load_group(&mut inputs, &args.group.group)?;
    let e = translate_set(&group, &args.group.e)?;
    let theta = parse_rational(&args.theta)?;
    let mode = parse_mode(&args.mode)?;
    let cover = resolve_cover(&mut inputs, &group, &e, &args.source, args.max_radius, args.window_cap)?;
    let strategy = match args.strategy {
        SearchStrategy::Balls => Strategy::Balls { max_radius: args.max_radius },
        SearchStrategy::Local => Strategy::Local { seed: args.seed, budget: args.budget },
    };
    match folner_search(&group, &e, &cover, &theta, mode, strategy)? {
        SearchOutcome::Found(cert) => {
            let manifest = RunManifest::new(argv, &inputs, args.seed, Outcome::Pass as u8);
            let out = CertificateJson::from_certificate(&cert, manifest);
            write_json(args.out.as_deref(), &out)?;
            let text = format!(
                "FOUND |F| = {}, min ratio {} (threshold {} of {})",
                cert.f.len(),
                out.min_ratio,
                out.threshold,
                cert.f.len()
            );
            Ok(Report::new(Outcome::Pass, serde_json::to_value(&out).expect("serializable"), text))
        }
        SearchOutcome::Exhausted { best_f, best_ratio, evaluated } => {
            let ratio = rational::format(&best_ratio);
            let text = format!("EXHAUSTED after {evaluated} candidates; best |F| = {}, ratio {ratio}", best_f.len());
            let json = json!({
                "outcome": "exhausted",
                "evaluated": evaluated,
                "best_f": format_elems(&group, &best_f),
                "best_ratio": ratio,
            });
            Ok(Report::new(Outcome::Fail, json, text))
        }
    }
}

pub fn adversary(args: AdversaryArgs, argv: Vec<String>) -> Result<Report, CliError> {
    let mut inputs = Inputs::default();
    let group = load_group(&mut inputs, &args.group.group)?;
    let e = translate_set(&group, &args.group.e)?;
    let f = match args.f_radius {
        Some(r) => group.ball(r)?,
        None if !args.f.is_empty() => parse_elems(&group, &args.f)?,
        None => return Err(CliError::Invalid("need --f or --f-radius".into())),
    };
    let mode = parse_mode(&args.mode)?;
    let strategy = match args.strategy {
        AdversaryKind::Exhaustive => AdversaryStrategy::Exhaustive { cap: args.cap },
        AdversaryKind::Local => AdversaryStrategy::Local { seed: args.seed, budget: args.budget },
    };
    let result = adversary_coloring(&group, &f, &e, args.colors, mode, strategy)?;
    let coloring = ColoringJson {
        ground: format_elems(&group, result.coloring.ground().atoms()),
        colors: result.coloring.colors().to_vec(),
        k: result.coloring.k(),
    };
    write_json(args.out.as_deref(), &coloring)?;
    let ratio = rational::format(&result.ratio);
    let manifest = RunManifest::new(argv, &inputs, args.seed, Outcome::Pass as u8);
    let text = format!("ratio {ratio} over {} colorings tried (|F| = {})", result.evaluated, f.len());
    let json = json!({
        "ratio": ratio,
        "evaluated": result.evaluated,
        "coloring": coloring,
        "manifest": manifest,
    });
    Ok(Report::new(Outcome::Pass, json, text))
}

pub fn net(args: NetArgs) -> Result<Report, CliError> {
    let mut inputs = Inputs::default();
    let group = load_group(&mut inputs, &args.group)?;
    let u = parse_elems(&group, &args.u)?;
    let net = perfect_net(&group, &u, args.cap)?;
    let witnesses: Vec<_> = net
        .witnesses
        .iter()
        .map(|(g, w)| json!({ "g": group.format_elem(g), "pairs": w.pairs }))
        .collect();
    let json = json!({
        "v": format_elems(&group, &net.v),
        "f": format_elems(&group, &net.f),
        "minimal": net.minimal,
        "cover": CoveringJson::from_cover(&group, &net.cover),
        "witnesses": witnesses,
    });
    write_json(args.out.as_deref(), &json)?;
    let text = format!(
        "V = {{{}}}\nF = {{{}}}{}\nperfect matchings for {} translates",
        format_elems(&group, &net.v).join(", "),
        format_elems(&group, &net.f).join(", "),
        if net.minimal { "" } else { " (greedy)" },
        net.witnesses.len()
    );
    Ok(Report::new(Outcome::Pass, json, text))
}

pub fn mono(args: MonoArgs) -> Result<Report, CliError> {
    let mut inputs = Inputs::default();
    let group = load_group(&mut inputs, &args.group.group)?;
    let e = translate_set(&group, &args.group.e)?;
    let cover = resolve_cover(&mut inputs, &group, &e, &args.source, args.window_radius, 200_000)?;
    match monochromatic_translate(&group, &cover, &e)? {
        MonoResult::Found { g, block } => {
            let g = group.format_elem(&g);
            Ok(Report::new(Outcome::Pass, json!({ "found": true, "g": g, "block": block }), format!("FOUND g = {g} in block {block}")))
        }
        MonoResult::NotFound { scanned } => Ok(Report::new(
            Outcome::Fail,
            json!({ "found": false, "scanned": scanned }),
            format!("NOT FOUND among {scanned} admissible translates"),
        )),
    }
}
