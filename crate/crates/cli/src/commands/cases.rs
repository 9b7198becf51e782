//! `case`: the worked examples, each as a pass/fail report.

use rand_chacha::ChaCha8Rng;
use rinfty_core::case_studies::{cohen_lustig_report, gw_report, sl2_report, uncount_report};
use rinfty_core::exact::ExactNumber;

use crate::args::CaseAction;
use crate::output::{parse, to_value, CliError, Output};

pub fn run(action: &CaseAction, rng: &mut ChaCha8Rng) -> Result<Output, CliError> {
    match action {
        CaseAction::Gw { b, samples, radius } => {
            if *b < 1 {
                return Err(CliError::invalid("--b must be a positive integer"));
            }
            Ok(Output::report(&gw_report(*b, *samples, *radius, rng)))
        }
        CaseAction::Sl2 { bound, samples } => {
            if *bound < 1 {
                return Err(CliError::invalid("--bound must be positive"));
            }
            let (report, summary) = sl2_report(*samples, *bound, rng);
            let mut out = Output::report(&report);
            out.json = serde_json::json!({ "report": out.json, "summary": to_value(&summary) });
            Ok(out)
        }
        CaseAction::CohenLustig => Ok(Output::report(&cohen_lustig_report())),
        CaseAction::Uncount { p, q, r } => {
            let (p, q, r): (ExactNumber, ExactNumber, ExactNumber) = (parse("--p", p)?, parse("--q", q)?, parse("--r", r)?);
            Ok(Output::report(&uncount_report(&p, &q, &r).map_err(CliError::invalid)?))
        }
    }
}
