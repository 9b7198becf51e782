//! `reid`: Smith forms, fixed subgroups, Reidemeister numbers and the
//! finite-group oracle.

use num_bigint::BigInt;
use rinfty_core::abelian::{smith_normal_form, AbelianAuto, FGAbelianGroup, IntMatrix};
use rinfty_core::character_action::{
    action_permuting, character_independence, fixed_vector_from_characters, thompson_like_cases, CharacterData, ThompsonLikeCase,
};
use rinfty_core::finite_group::{audit_small_groups, small_groups, AbelianModel, FiniteGroup};
use serde_json::json;

use crate::args::{AbelianArgs, ReidAction};
use crate::output::{parse, to_value, CliError, Output};

/// Largest fixed subgroup listed element by element.
const LIST_LIMIT: usize = 64;

fn moduli(s: &str) -> Result<Vec<BigInt>, CliError> {
    s.split(',')
        .map(|m| m.trim().parse::<BigInt>().map_err(|_| CliError::invalid(format!("invalid --moduli entry '{m}'"))))
        .collect()
}

fn group_of(relations: Option<&String>, moduli_arg: Option<&String>, n: usize) -> Result<FGAbelianGroup, CliError> {
    match (relations, moduli_arg) {
        (Some(r), _) => Ok(FGAbelianGroup::new(parse("--relations", r)?)),
        (None, Some(m)) => Ok(FGAbelianGroup::from_moduli(&moduli(m)?)),
        (None, None) => Ok(FGAbelianGroup::free(n)),
    }
}

fn auto_of(args: &AbelianArgs) -> Result<AbelianAuto, CliError> {
    let m: IntMatrix = parse("--matrix", &args.matrix)?;
    let group = group_of(args.relations.as_ref(), args.moduli.as_ref(), m.rows())?;
    AbelianAuto::new(group, m).map_err(CliError::invalid)
}

fn show(v: &[BigInt]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn builtin_case(index: usize) -> Result<ThompsonLikeCase, CliError> {
    let cases = thompson_like_cases();
    let n = cases.len();
    cases.into_iter().nth(index).ok_or_else(|| CliError::invalid(format!("--case must be below {n}")))
}

pub fn run(action: &ReidAction) -> Result<Output, CliError> {
    match action {
        ReidAction::Snf { matrix } => {
            let m: IntMatrix = parse("--matrix", matrix)?;
            let f = smith_normal_form(&m);
            let factors = f.invariant_factors();
            let human = format!("U = {}\nS = {}\nV = {}\ninvariant factors: {}", f.u, f.s, f.v, show(&factors));
            Ok(Output::new(
                human,
                json!({ "u": f.u.to_string(), "s": f.s.to_string(), "v": f.v.to_string(), "invariant_factors": strings(&factors) }),
            ))
        }
        ReidAction::Fix(args) => {
            let auto = auto_of(args)?;
            let fix = auto.fix_subgroup();
            let elements = fix.elements(auto.group(), LIST_LIMIT);
            let mut human = format!(
                "group: {}\nFix: {} (order {})\ngenerators: {}",
                auto.group().structure(),
                fix.structure.structure(),
                fix.order(),
                fix.generators.iter().map(|g| show(g)).collect::<Vec<_>>().join(" ")
            );
            if let Some(els) = &elements {
                human.push_str(&format!("\nelements: {}", els.iter().map(|e| show(e)).collect::<Vec<_>>().join(" ")));
            }
            Ok(Output::new(
                human,
                json!({
                    "group": auto.group().structure(),
                    "fix_structure": fix.structure.structure(),
                    "order": to_value(&fix.order()),
                    "free_rank": fix.free_rank(),
                    "torsion": strings(&fix.torsion()),
                    "generators": fix.generators.iter().map(|g| strings(g)).collect::<Vec<_>>(),
                    "elements": elements.map(|els| els.iter().map(|e| strings(e)).collect::<Vec<_>>()),
                }),
            ))
        }
        ReidAction::Number(args) => {
            let auto = auto_of(args)?;
            let r = auto.reidemeister_number();
            let fix = auto.fix_subgroup().order();
            let consistent = r.is_infinite() == fix.is_infinite();
            Ok(Output::checked(
                consistent,
                format!("R = {r}\n|Fix| = {fix}"),
                json!({ "group": auto.group().structure(), "reidemeister": to_value(&r), "fix_order": to_value(&fix), "consistent": consistent }),
            ))
        }
        ReidAction::Oracle { group, table, moduli: mods, matrix, auto } => {
            if let Some(m) = mods {
                return abelian_oracle(m, matrix.as_deref().expect("clap enforces --matrix"));
            }
            let (name, g) = match (group, table) {
                (Some(name), _) => {
                    let found = small_groups().into_iter().find(|(n, _)| n == name);
                    let (n, g) = found.ok_or_else(|| {
                        let names: Vec<&str> = small_groups().iter().map(|(n, _)| *n).collect();
                        CliError::invalid(format!("unknown group '{name}'; available: {}", names.join(", ")))
                    })?;
                    (n.to_string(), g)
                }
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path).map_err(|e| CliError::invalid(format!("{path}: {e}")))?;
                    (path.clone(), FiniteGroup::from_csv(&text).map_err(CliError::invalid)?)
                }
                (None, None) => return Err(CliError::invalid("give one of --group, --table, or --moduli with --matrix")),
            };
            finite_oracle(&name, &g, auto.as_deref())
        }
        ReidAction::Corpus => {
            let audit = audit_small_groups();
            let human = format!(
                "{} groups, {} automorphisms\nR = 1 iff |Fix| = 1: {} mismatches\nR >= R(quotient): {} pairs, {} violations",
                audit.groups,
                audit.automorphisms,
                audit.single_class_mismatches.len(),
                audit.quotient_pairs,
                audit.quotient_violations.len()
            );
            Ok(Output::checked(audit.passed(), human, to_value(&audit)))
        }
        ReidAction::Tecnico { chars, matrix, case, swap } => {
            let (data, m) = match case {
                Some(i) => {
                    let c = builtin_case(*i)?;
                    let m = action_permuting(&c.characters, *swap).map_err(CliError::invalid)?;
                    (c.characters, m)
                }
                None => {
                    let rows: IntMatrix = parse("--chars", chars.as_deref().ok_or_else(|| CliError::invalid("give --chars or --case"))?)?;
                    let labels = (0..rows.rows()).map(|i| format!("chi{i}")).collect();
                    let data = CharacterData::new((0..rows.rows()).map(|i| rows.row(i).to_vec()).collect(), labels).map_err(CliError::invalid)?;
                    (data, parse("--matrix", matrix.as_deref().expect("clap enforces --matrix"))?)
                }
            };
            match fixed_vector_from_characters(&data, &m) {
                Ok(cert) => {
                    let human = format!(
                        "M = {m}\npermutation: {:?}\nf = {}\nfixed vector v = {} with f(v) = {}",
                        cert.permutation,
                        show(&cert.invariant_sum),
                        show(&cert.fixed_vector),
                        cert.sum_on_fixed_vector
                    );
                    Ok(Output::new(human, json!({ "matrix": m.to_string(), "certificate": to_value(&cert) })))
                }
                Err(e) => Ok(Output::checked(false, format!("M = {m}\nfailed: {e}"), json!({ "matrix": m.to_string(), "error": e.to_string() }))),
            }
        }
        ReidAction::Independence { values, case } => {
            let m: IntMatrix = match (values, case) {
                (Some(v), _) => parse("--values", v)?,
                (None, Some(i)) => builtin_case(*i)?.characters.as_matrix(),
                (None, None) => return Err(CliError::invalid("give --values or --case")),
            };
            let ind = character_independence(&m).map_err(CliError::invalid)?;
            Ok(Output::new(
                format!("values {m}\ndeterminant {}: {}", ind.determinant, if ind.independent { "independent" } else { "dependent" }),
                json!({ "values": m.to_string(), "independence": to_value(&ind) }),
            ))
        }
    }
}

fn abelian_oracle(mods: &str, matrix: &str) -> Result<Output, CliError> {
    let group = FGAbelianGroup::from_moduli(&moduli(mods)?);
    let auto = AbelianAuto::new(group, parse("--matrix", matrix)?).map_err(CliError::invalid)?;
    let model = AbelianModel::new(auto.group()).ok_or_else(|| CliError::invalid("the oracle needs a finite group of order at most 10000"))?;
    let (g, phi) = (&model.group, model.permutation(&auto));
    let brute = g.twisted_classes(&phi).map_err(CliError::invalid)?.count();
    let formula = auto.reidemeister_number();
    let fix_brute = g.fixed_points(&phi).len();
    let fix_formula = auto.fix_subgroup().order();
    let agree = formula.finite() == Some(&BigInt::from(brute)) && fix_formula.finite() == Some(&BigInt::from(fix_brute));
    Ok(Output::checked(
        agree,
        format!(
            "group {} of order {}\nR: oracle {brute}, cokernel {formula}\n|Fix|: oracle {fix_brute}, kernel {fix_formula}",
            auto.group().structure(),
            g.order()
        ),
        json!({
            "group": auto.group().structure(),
            "order": g.order(),
            "oracle": { "reidemeister": brute, "fix_order": fix_brute },
            "closed_form": { "reidemeister": to_value(&formula), "fix_order": to_value(&fix_formula) },
            "agree": agree,
        }),
    ))
}

fn finite_oracle(name: &str, g: &FiniteGroup, images: Option<&str>) -> Result<Output, CliError> {
    let gens = g.generating_set();
    let autos = match images {
        Some(s) => {
            let imgs: Vec<usize> = s
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| CliError::invalid(format!("invalid --auto entry '{x}'"))))
                .collect::<Result<_, _>>()?;
            if imgs.len() != gens.len() {
                return Err(CliError::invalid(format!("--auto needs {} images, one per generator {gens:?}", gens.len())));
            }
            let phi = g.extend(&gens, &imgs).ok_or_else(|| CliError::invalid("images do not define an automorphism"))?;
            vec![phi]
        }
        None => g.automorphisms(),
    };
    let mut ok = true;
    let mut rows = Vec::new();
    let mut human = format!("{name}: order {}, generators {gens:?}, {} automorphisms\n", g.order(), autos.len());
    for phi in &autos {
        let r = g.twisted_classes(phi).map_err(CliError::invalid)?.count();
        let fix = g.fixed_points(phi).len();
        let consistent = (r == 1) == (fix == 1);
        ok &= consistent;
        let images: Vec<usize> = gens.iter().map(|&x| phi[x]).collect();
        human.push_str(&format!("  {images:?}: R = {r}, |Fix| = {fix}{}\n", if consistent { "" } else { "  MISMATCH" }));
        rows.push(json!({ "images": images, "reidemeister": r, "fix_order": fix }));
    }
    Ok(Output::checked(ok, human, json!({ "group": name, "order": g.order(), "generators": gens, "automorphisms": rows })))
}
