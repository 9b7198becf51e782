//! `sigma`: Cayley balls and nonnegative-character components.

use rinfty_core::case_studies::GwGroup;
use rinfty_core::sigma::{ball, nonneg_components, Crystallographic, GroupChoice, GroupOracle, Lattice, LodhaMoore, ThompsonPl, ThompsonTreePairs};
use serde_json::json;

use crate::args::{SigmaAction, SigmaArgs};
use crate::output::{parse, to_value, CliError, Output};

pub fn run(action: &SigmaAction) -> Result<Output, CliError> {
    let (args, character) = match action {
        SigmaAction::Ball { group, character } => (group, character.as_deref()),
        SigmaAction::Components { group, character } => (group, Some(character.as_str())),
    };
    let choice: GroupChoice = parse("--group", &args.group)?;
    match choice {
        GroupChoice::Lattice(n) => explore(&Lattice(n), args, character),
        GroupChoice::TreePairs => explore(&ThompsonTreePairs, args, character),
        GroupChoice::Pl => explore(&ThompsonPl, args, character),
        GroupChoice::Gw(b) => explore(&Crystallographic(GwGroup::new(b)), args, character),
        GroupChoice::Lm(v) => explore(&LodhaMoore::new(v, args.lm_depth), args, character),
    }
}

fn explore<O: GroupOracle>(oracle: &O, args: &SigmaArgs, character: Option<&str>) -> Result<Output, CliError> {
    let b = ball(oracle, args.radius).map_err(CliError::invalid)?;
    let mut human = format!("{}: ball of radius {}, {} elements, ball sizes by radius {:?}", oracle.name(), args.radius, b.len(), b.sizes());
    if !b.exact {
        human.push_str("\n(element equality is probe-based; sizes are lower bounds)");
    }
    let mut json = json!({
        "group": oracle.name(),
        "radius": args.radius,
        "elements": b.len(),
        "ball_sizes": b.sizes(),
        "exact_equality": b.exact,
        "characters": oracle.character_labels(),
    });
    if let Some(c) = character {
        let comps = nonneg_components(oracle, &b, c, args.radius).map_err(CliError::invalid)?;
        human.push_str(&format!(
            "\n{c} >= 0: {} vertices in {} component(s), sizes {:?}\n{}",
            comps.nonnegative_vertices, comps.count, comps.sizes, comps.note
        ));
        json["components"] = to_value(&comps);
    }
    Ok(Output::new(human, json))
}
