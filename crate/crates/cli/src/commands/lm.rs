//! `lm`: Lodha-Moore words.

use rinfty_core::lodha_moore::{
    equal_up_to_depth, relation_suite, relation_sweep, Address, Character, Comparison, LMWord, PeriodicSeq, RelationStatus, Variant,
};
use serde_json::json;

use crate::args::LmAction;
use crate::output::{parse, to_value, CliError, Output};

fn variant(s: &str) -> Result<Variant, CliError> {
    parse("--variant", s)
}

fn word(flag: &str, s: &str, v: Variant) -> Result<LMWord, CliError> {
    LMWord::parse(s, v).map_err(|e| match e {
        rinfty_core::lodha_moore::LmError::Parse(err) => CliError::Parse { flag: flag.into(), input: s.into(), err },
        other => CliError::invalid(other),
    })
}

pub fn run(action: &LmAction) -> Result<Output, CliError> {
    match action {
        LmAction::Eval { variant: v, word: w, input } => {
            let v = variant(&v.variant)?;
            let w = word("--word", w, v)?;
            let input: PeriodicSeq = parse("--input", input)?;
            let image = w.apply(&input);
            Ok(Output::new(image.to_string(), json!({ "word": w.to_string(), "input": input.to_string(), "image": image.to_string() })))
        }
        LmAction::Equal { variant: v, a, b, depth } => {
            let v = variant(&v.variant)?;
            let verdict = equal_up_to_depth(&word("--a", a, v)?, &word("--b", b, v)?, *depth);
            let human = match &verdict {
                Comparison::Indistinguishable { depth } => format!("indistinguishable at depth {depth}"),
                Comparison::Distinct(w) => {
                    format!("distinct: on {} they give {} and {} (first difference at bit {})", w.input, w.left, w.right, w.position)
                }
            };
            Ok(Output::new(human, to_value(&verdict)))
        }
        LmAction::Relations { s, t, depth, variant: only } => {
            let s: Address = parse("--s", s)?;
            let t: Address = parse("--t", t)?;
            let variants = match only {
                Some(v) => vec![variant(v)?],
                None => Variant::ALL.to_vec(),
            };
            let mut ok = true;
            let mut human = String::new();
            let mut per_variant = Vec::new();
            for v in variants {
                let outcomes = relation_suite(&s, &t, v, *depth);
                human.push_str(&format!("{v} (s = {s}, t = {t}, depth {depth})\n"));
                for o in &outcomes {
                    let line = match &o.status {
                        RelationStatus::Passed => format!("  PASS {}: {}", o.relation, o.instance),
                        RelationStatus::Failed { witness } => {
                            ok = false;
                            format!("  FAIL {}: {} (input {})", o.relation, o.instance, witness.input)
                        }
                        RelationStatus::Skipped { reason } => format!("  skip {}: {reason}", o.relation),
                    };
                    human.push_str(&line);
                    human.push('\n');
                }
                per_variant.push(json!({ "variant": v, "outcomes": to_value(&outcomes) }));
            }
            Ok(Output::checked(ok, human, json!({ "s": s.to_string(), "t": t.to_string(), "depth": depth, "groups": per_variant })))
        }
        LmAction::Chars { variant: v, word: w } => {
            let v = variant(&v.variant)?;
            let w = word("--word", w, v)?;
            let mut human = Vec::new();
            let mut values = serde_json::Map::new();
            for c in Character::ALL.into_iter().filter(|c| c.defined_on(v)) {
                let value = w.character(c).map_err(CliError::invalid)?;
                human.push(format!("{c} = {value}"));
                values.insert(c.to_string(), value.into());
            }
            Ok(Output::new(human.join("\n"), values.into()))
        }
        LmAction::Quotient { variant: v, word: w } => {
            let v = variant(&v.variant)?;
            let w = word("--word", w, v)?;
            let (a, b) = w.quotient_image();
            let labels: Vec<String> =
                v.quotient_basis().iter().map(|&(sign, c)| if sign < 0 { format!("-{c}") } else { c.to_string() }).collect();
            Ok(Output::new(format!("({a}, {b}) in ({}, {})", labels[0], labels[1]), json!({ "basis": labels, "image": [a, b] })))
        }
        LmAction::Sweep { max_len, depth } => {
            let summaries = relation_sweep(*max_len, *depth);
            let ok = summaries.iter().all(|s| s.failed.is_empty() && s.character_violations.is_empty());
            let human = summaries
                .iter()
                .map(|s| {
                    format!(
                        "{}: {} instances, {} failed, {} character violations",
                        s.variant,
                        s.checked,
                        s.failed.len(),
                        s.character_violations.len()
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::checked(ok, human, to_value(&summaries)))
        }
    }
}
