use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use matchlab_core::bipartite::{covering_graph, hall_deficiency, max_matching, BipartiteGraph};
use matchlab_core::groups::GroupModel;
use matchlab_core::means::{push_forward, rationalize as rationalize_weights, FiniteFunction};
use matchlab_core::ramsey::{ramsey_condition_check, ColoringSource, RamseyInstance, RamseyVerdict};
use matchlab_core::rational::{self, Rational};

use crate::cli::{ConvolveArgs, CoverArgs, CoverOp, MatchArgs, MuArgs, PushArgs, RamseyArgs, RationalizeArgs};
use crate::error::{CliError, Outcome};
use crate::manifest::{to_json_bytes, write_atomic, Inputs, RunManifest};
use crate::schema::{
    parse_elems, parse_rational, CombinationJson, CoveringJson, GraphJson, GroupSpec, MetricJson, RamseyBundle,
    RamseyWitnessJson, FORMAT_VERSION, RAMSEY_FORMAT,
};
use crate::Report;

/// A group shorthand such as `free2`, or a group JSON file.
pub(crate) fn load_group(inputs: &mut Inputs, spec: &str) -> Result<GroupModel, CliError> {
    match GroupSpec::shorthand(spec) {
        Some(g) => g.build(),
        None if Path::new(spec).is_file() => inputs.read_json::<GroupSpec>(spec)?.build(),
        None => Err(CliError::Invalid(format!("unknown group {spec:?}"))),
    }
}

/// Atoms from a JSON array file, or a `;`-separated list.
fn atom_list(inputs: &mut Inputs, arg: &str) -> Result<Vec<String>, CliError> {
    if Path::new(arg).is_file() {
        return inputs.read_json(arg);
    }
    Ok(arg.split(';').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect())
}

pub(crate) fn write_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<(), CliError> {
    match out {
        Some(path) => write_atomic(path, &to_json_bytes(value)),
        None => Ok(()),
    }
}

fn flag(b: bool) -> Outcome {
    if b {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

pub fn cover(args: CoverArgs) -> Result<Report, CliError> {
    let mut inputs = Inputs::default();
    let u = inputs.read_json::<CoveringJson>(&args.cover)?.to_string_cover()?;
    let mut other = || -> Result<_, CliError> {
        let path = args.other.as_deref().ok_or_else(|| CliError::Invalid("this operation needs --other".into()))?;
        inputs.read_json::<CoveringJson>(path)?.to_string_cover()
    };
    let (result, answer) = match args.op {
        CoverOp::Star => (Some(u.star_iterate(args.times)?), None),
        CoverOp::Join => (Some(u.join(&other()?)?), None),
        CoverOp::Refines => (None, Some(u.refined_by(&other()?)?)),
        CoverOp::StarRefines => (None, Some(u.star_refined_by(&other()?)?)),
        CoverOp::IsPartition => (None, Some(u.is_partition())),
    };
    match (result, answer) {
        (Some(c), _) => {
            let out = CoveringJson::from_strings(&c);
            write_json(args.out.as_deref(), &out)?;
            let text = out.blocks.iter().map(|b| b.join(" ")).collect::<Vec<_>>().join("\n");
            Ok(Report::new(Outcome::Pass, json!({ "cover": out }), text))
        }
        (None, Some(b)) => Ok(Report::new(flag(b), json!({ "result": b }), b.to_string())),
        (None, None) => unreachable!("every operation yields a covering or an answer"),
    }
}

pub fn mu(args: MuArgs) -> Result<Report, CliError> {
    let mut inputs = Inputs::default();
    let u = inputs.read_json::<CoveringJson>(&args.cover)?.to_string_cover()?;
    let mut left = atom_list(&mut inputs, &args.left)?;
    let mut right = atom_list(&mut inputs, &args.right)?;
    left.sort();
    left.dedup();
    right.sort();
    right.dedup();
    let graph = covering_graph(&u, &left, &right)?;
    let witness = max_matching(&graph);
    let pairs: Vec<(&str, &str)> =
        witness.pairs.iter().map(|&(x, y)| (left[x].as_str(), right[y].as_str())).collect();
    let text = format!(
        "mu = {}\n{}",
        witness.len(),
        pairs.iter().map(|(x, y)| format!("{x} -> {y}")).collect::<Vec<_>>().join("\n")
    );
    Ok(Report::new(Outcome::Pass, json!({ "mu": witness.len(), "witness": pairs }), text.trim_end().to_string()))
}

pub fn matching(args: MatchArgs) -> Result<Report, CliError> {
    let mut inputs = Inputs::default();
    let spec: GraphJson = inputs.read_json(&args.graph)?;
    let graph = BipartiteGraph::new(spec.left, spec.right, &spec.edges)?;
    let witness = max_matching(&graph);
    let hall = hall_deficiency(&graph);
    let text = format!(
        "matching = {}\nhall deficiency = {} (subset {:?})",
        witness.len(),
        hall.deficiency,
        hall.subset()
    );
    Ok(Report::new(
        Outcome::Pass,
        json!({
            "matching": witness.len(),
            "witness": witness.pairs,
            "deficiency": hall.deficiency,
            "hall_subset": hall.subset(),
        }),
        text,
    ))
}

pub fn convolve(args: ConvolveArgs) -> Result<Report, CliError> {
    let mut inputs = Inputs::default();
    let group = load_group(&mut inputs, &args.group)?;
    let a = inputs.read_json::<CombinationJson>(&args.a)?.build(&group)?;
    let b = inputs.read_json::<CombinationJson>(&args.b)?.build(&group)?;
    let out = CombinationJson::from_combination(&group, &a.convolve(&b, &group)?);
    write_json(args.out.as_deref(), &out)?;
    let text = out.weights.iter().map(|(g, w)| format!("{g}\t{w}")).collect::<Vec<_>>().join("\n");
    Ok(Report::new(Outcome::Pass, serde_json::to_value(&out).expect("serializable"), text))
}

pub fn rationalize(args: RationalizeArgs) -> Result<Report, CliError> {
    let mut inputs = Inputs::default();
    let alpha: CombinationJson = inputs.read_json(&args.alpha)?;
    let weights = alpha
        .weights
        .iter()
        .map(|(k, w)| Ok((k.clone(), parse_rational(w)?)))
        .collect::<Result<BTreeMap<String, Rational>, CliError>>()?;
    let theta = parse_rational(&args.theta)?;
    let r = rationalize_weights(&weights, &theta)?;
    let beta: BTreeMap<&String, String> = r.beta.iter().map(|(k, b)| (k, rational::format(b))).collect();
    let deviation: Rational = weights.iter().map(|(k, a)| num_abs(a - &r.beta[k])).sum();
    let text = format!(
        "n = {}\n{}\ndeviation = {}",
        r.n,
        r.gamma.iter().map(|(k, g)| format!("{k}\t{g}/{}", r.n)).collect::<Vec<_>>().join("\n"),
        rational::format(&deviation)
    );
    Ok(Report::new(
        Outcome::Pass,
        json!({ "n": r.n, "gamma": r.gamma, "beta": beta, "deviation": rational::format(&deviation) }),
        text,
    ))
}

fn num_abs(r: Rational) -> Rational {
    if r < Rational::from_integer(0.into()) {
        -r
    } else {
        r
    }
}

pub fn push(args: PushArgs) -> Result<Report, CliError> {
    let mut inputs = Inputs::default();
    let group = load_group(&mut inputs, &args.group)?;
    let f: CombinationJson = inputs.read_json(&args.f)?;
    let mut values = BTreeMap::new();
    for (g, v) in &f.weights {
        values.insert(group.parse_elem(g)?, parse_rational(v)?);
    }
    let f = FiniteFunction::new(values);
    let nu = inputs.read_json::<CombinationJson>(&args.nu)?.build(&group)?;
    let window = parse_elems(&group, &args.window)?;
    let pushed = push_forward(&f, &nu, &window, &group)?;
    let out: BTreeMap<String, String> =
        pushed.values().iter().map(|(g, v)| (group.format_elem(g), rational::format(v))).collect();
    let text = out.iter().map(|(g, v)| format!("{g}\t{v}")).collect::<Vec<_>>().join("\n");
    Ok(Report::new(Outcome::Pass, json!({ "values": out }), text))
}

/// The verdict bundle for one Ramsey check; shared with `verify`.
pub(crate) fn ramsey_bundle(
    a: &MetricJson,
    b: &MetricJson,
    c: &MetricJson,
    colors: usize,
    eps: &str,
    budget: usize,
    cap: u128,
    samples: Option<usize>,
    seed: u64,
) -> Result<(RamseyInstance, RamseyVerdict), CliError> {
    let inst = RamseyInstance::new(a.build()?, b.build()?, c.build()?)?;
    let eps = parse_rational(eps)?;
    let source = match samples {
        Some(samples) => ColoringSource::Sampled { seed, samples },
        None => ColoringSource::Exhaustive { cap },
    };
    let verdict = ramsey_condition_check(&inst, colors, &eps, budget, source)?;
    Ok((inst, verdict))
}

pub fn ramsey(args: RamseyArgs, argv: Vec<String>) -> Result<Report, CliError> {
    let mut inputs = Inputs::default();
    let a: MetricJson = inputs.read_json(&args.a)?;
    let b: MetricJson = inputs.read_json(&args.b)?;
    let c: MetricJson = inputs.read_json(&args.c)?;
    let (inst, verdict) =
        ramsey_bundle(&a, &b, &c, args.colors, &args.eps, args.budget, args.cap, args.samples, args.seed)?;
    let (outcome, name, witnesses, counterexample, text) = match verdict {
        RamseyVerdict::Holds { witnesses } => {
            let text = format!(
                "HOLDS for {} colorings of {} embeddings",
                witnesses.len(),
                inst.emb_ac.len()
            );
            let w = witnesses.into_iter().map(|w| RamseyWitnessJson { phi: w.phi, psi: w.psi }).collect();
            (Outcome::Pass, "holds", w, None, text)
        }
        RamseyVerdict::Fails { phi, tried } => {
            let text = format!("FAILS: coloring {phi:?} defeated {tried} families");
            (Outcome::Fail, "fails", Vec::new(), Some(RamseyWitnessJson { phi, psi: Vec::new() }), text)
        }
    };
    let bundle = RamseyBundle {
        format: RAMSEY_FORMAT.into(),
        version: FORMAT_VERSION,
        a,
        b,
        c,
        colors: args.colors,
        eps: rational::format(&parse_rational(&args.eps)?),
        budget: args.budget,
        cap: args.cap,
        samples: args.samples,
        verdict: name.into(),
        witnesses,
        counterexample,
        manifest: RunManifest::new(argv, &inputs, args.seed, outcome as u8),
    };
    write_json(args.out.as_deref(), &bundle)?;
    Ok(Report::new(outcome, serde_json::to_value(&bundle).expect("serializable"), text))
}
