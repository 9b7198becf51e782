//! `pl`, `f` and `fbr`: element arithmetic.

use rinfty_core::braid::{braid_equal, BraidWord};
use rinfty_core::braided::{fbr_generators, BraidedDiagram};
use rinfty_core::exact::{ExactNumber, SlopeGroupSpec};
use rinfty_core::pl::{BieriStrebelSpec, PLMap};
use rinfty_core::thompson::TreePair;
use serde_json::json;

use crate::args::{FAction, FbrAction, PlAction};
use crate::output::{parse, to_value, CliError, Output};

/// A tree pair literal `minus|plus`, or a named generator `x<n>` / `id`.
fn tree_pair(flag: &str, s: &str) -> Result<TreePair, CliError> {
    let s = s.trim();
    if s == "id" {
        return Ok(TreePair::identity());
    }
    if let Some(n) = s.strip_prefix('x').and_then(|n| n.parse::<usize>().ok()) {
        return Ok(TreePair::x(n));
    }
    parse(flag, s)
}

/// A PL literal, or anything [`tree_pair`] accepts.
fn pl_map(flag: &str, s: &str) -> Result<PLMap, CliError> {
    if s.trim_start().starts_with("pl") {
        parse(flag, s)
    } else {
        Ok(tree_pair(flag, s)?.to_pl())
    }
}

fn map_output(f: &PLMap) -> Output {
    Output::new(f.to_string(), json!({ "map": f.to_string() }))
}

pub fn pl(action: &PlAction) -> Result<Output, CliError> {
    match action {
        PlAction::Compose { maps } => {
            let maps = maps.iter().map(|m| pl_map("--map", m)).collect::<Result<Vec<_>, _>>()?;
            let mut acc = maps.last().expect("clap requires one map").clone();
            for m in maps.iter().rev().skip(1) {
                acc = m.compose(&acc).map_err(CliError::invalid)?;
            }
            Ok(map_output(&acc))
        }
        PlAction::Invert { map } => Ok(map_output(&pl_map("--map", map)?.invert())),
        PlAction::Member { spec, map } => {
            let spec: BieriStrebelSpec = parse("--spec", spec)?;
            let f = pl_map("--map", map)?;
            let report = f.membership(&spec);
            let mut human = format!("{}", report.is_member());
            for v in &report.violations {
                human.push_str(&format!("\n  {v}"));
            }
            Ok(Output::new(human, json!({ "spec": spec.to_string(), "member": report.is_member(), "violations": to_value(&report.violations) })))
        }
        PlAction::Char { map, slopes } => {
            let f = pl_map("--map", map)?;
            let p: SlopeGroupSpec = parse("--slopes", slopes)?;
            let (start, end) = f.endpoint_characters(&p).map_err(CliError::invalid)?;
            Ok(Output::new(
                format!("at 0: {start:?}\nat {}: {end:?}", f.ell()),
                json!({ "slope_group": p.to_string(), "at_start": start, "at_end": end }),
            ))
        }
        PlAction::Eval { map, x } => {
            let f = pl_map("--map", map)?;
            let x: ExactNumber = parse("--x", x)?;
            let y = f.evaluate(&x).map_err(CliError::invalid)?;
            Ok(Output::new(y.to_string(), json!({ "x": x.to_string(), "image": y.to_string() })))
        }
    }
}

fn pair_output(d: &TreePair) -> Output {
    Output::new(d.to_string(), json!({ "tree_pair": d.to_string(), "leaves": d.leaf_count() }))
}

pub fn f(action: &FAction) -> Result<Output, CliError> {
    match action {
        FAction::Multiply { a, b } => Ok(pair_output(&tree_pair("A", a)?.multiply(&tree_pair("B", b)?))),
        FAction::Reduce { a } => Ok(pair_output(&tree_pair("A", a)?.reduce())),
        FAction::Inverse { a } => Ok(pair_output(&tree_pair("A", a)?.inverse())),
        FAction::ToPl { a } => Ok(map_output(&tree_pair("A", a)?.to_pl())),
        FAction::FromPl { map } => {
            let f: PLMap = parse("MAP", map)?;
            Ok(pair_output(&TreePair::from_pl(&f).map_err(CliError::invalid)?))
        }
        FAction::Chars { a } => {
            let (c0, c1) = tree_pair("A", a)?.characters();
            Ok(Output::new(format!("chi0 = {c0}\nchi1 = {c1}"), json!({ "chi0": c0, "chi1": c1 })))
        }
    }
}

fn diagram_output(d: &BraidedDiagram) -> Output {
    Output::new(d.to_string(), json!({ "diagram": d.to_string(), "leaves": d.leaf_count(), "pure": d.is_pure() }))
}

pub fn fbr(action: &FbrAction) -> Result<Output, CliError> {
    let diagram = |flag: &str, s: &str| -> Result<BraidedDiagram, CliError> { parse(flag, s) };
    match action {
        FbrAction::Multiply { a, b } => {
            let product = diagram("A", a)?.multiply(&diagram("B", b)?).map_err(CliError::invalid)?;
            Ok(diagram_output(&product))
        }
        FbrAction::Equivalent { a, b } => {
            let same = diagram("A", a)?.equivalent(&diagram("B", b)?).map_err(CliError::invalid)?;
            Ok(Output::new(same.to_string(), json!({ "equivalent": same })))
        }
        FbrAction::Chars { a } => {
            let (c0, c1) = diagram("A", a)?.characters();
            Ok(Output::new(format!("phi0 = {c0}\nphi1 = {c1}"), json!({ "phi0": c0, "phi1": c1 })))
        }
        FbrAction::BraidEqual { strands, a, b } => {
            let parse_braid = |flag: &str, s: &str| {
                rinfty_core::braid::parse_braid_at(s, *strands, 0)
                    .map_err(|err| CliError::Parse { flag: flag.into(), input: s.into(), err })
            };
            let (a, b): (BraidWord, BraidWord) = (parse_braid("A", a)?, parse_braid("B", b)?);
            let same = braid_equal(&a, &b).map_err(CliError::invalid)?;
            Ok(Output::new(same.to_string(), json!({ "equal": same })))
        }
        FbrAction::Generators => {
            let gens = fbr_generators();
            let human = gens.iter().map(|(name, d)| format!("{name}: {d}")).collect::<Vec<_>>().join("\n");
            let json = gens.iter().map(|(name, d)| json!({ "name": name, "diagram": d.to_string() })).collect();
            Ok(Output::new(human, serde_json::Value::Array(json)))
        }
    }
}
