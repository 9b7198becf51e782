//! The generators `f_p`, `g_q`, `h_r` of the groups `G(p, q, r)`, checked
//! against their piecewise formulas.

use crate::exact::ExactNumber;
use crate::pl::{uncountable_family_generators, PLMap, PlError};
use crate::report::{Basis, Report};

type Piece = (ExactNumber, ExactNumber, Box<dyn Fn(&ExactNumber) -> ExactNumber>);

fn n(k: i64) -> ExactNumber {
    ExactNumber::from_int(k)
}

/// `f_p` as three affine pieces on closed intervals.
fn left_pieces(p: &ExactNumber) -> Vec<Piece> {
    let b1 = &(&n(3) * p) / &(&(&n(4) * p) + &n(4));
    let c = &n(3) / &(&(&n(4) * p) + &n(4));
    let (p1, p2, b1c) = (p.clone(), p.clone(), b1.clone());
    vec![
        (n(0), b1.clone(), Box::new(move |x: &ExactNumber| x / &p1)),
        (b1, ExactNumber::ratio(3, 4), Box::new(move |x: &ExactNumber| &c + &(&p2 * &(x - &b1c)))),
        (ExactNumber::ratio(3, 4), n(1), Box::new(|x: &ExactNumber| x.clone())),
    ]
}

/// `g_q` (and `h_r`) as three affine pieces.
fn middle_pieces(q: &ExactNumber) -> Vec<Piece> {
    let quarter = ExactNumber::ratio(1, 4);
    let den = &(&n(4) * q) + &n(4);
    let b2 = &(&(&n(4) * q) + &n(1)) / &den;
    let c = &(q + &n(4)) / &den;
    let (q1, q2, b2c, quarter2) = (q.clone(), q.clone(), b2.clone(), quarter.clone());
    vec![
        (n(0), quarter.clone(), Box::new(|x: &ExactNumber| x.clone())),
        (quarter, b2.clone(), Box::new(move |x: &ExactNumber| &(&(x - &quarter2) / &q1) + &ExactNumber::ratio(1, 4))),
        (b2, n(1), Box::new(move |x: &ExactNumber| &c + &(&q2 * &(x - &b2c)))),
    ]
}

/// Compares a map with its piecewise formula at every piece endpoint and
/// midpoint, and checks that adjacent pieces agree where they meet.
fn matches_formula(map: &PLMap, pieces: &[Piece]) -> Result<(), String> {
    let half = ExactNumber::ratio(1, 2);
    for (k, (lo, hi, f)) in pieces.iter().enumerate() {
        let mid = &(lo + hi) * &half;
        for x in [lo, &mid, hi] {
            let got = map.evaluate(x).map_err(|e| e.to_string())?;
            if got != f(x) {
                return Err(format!("piece {k} at {x}: map gives {got}, formula gives {}", f(x)));
            }
        }
        if let Some((_, _, g)) = pieces.get(k + 1) {
            if f(hi) != g(hi) {
                return Err(format!("pieces {k} and {} disagree at {hi}", k + 1));
            }
        }
    }
    let last = pieces.last().expect("three pieces");
    if pieces[0].2(&n(0)) != n(0) || last.2(&last.1) != n(1) {
        return Err("formula does not fix the endpoints".into());
    }
    Ok(())
}

pub fn uncount_report(p: &ExactNumber, q: &ExactNumber, r: &ExactNumber) -> Result<Report, PlError> {
    let [f, g, h] = uncountable_family_generators(p, q, r)?;
    let mut report = Report::new(format!("G(p, q, r) generators with p = {p}, q = {q}, r = {r}"));
    for (name, map, pieces) in [("f_p", &f, left_pieces(p)), ("g_q", &g, middle_pieces(q)), ("h_r", &h, middle_pieces(r))] {
        let verdict = matches_formula(map, &pieces);
        report.check(
            format!("{name} matches its piecewise formula"),
            Basis::Published,
            verdict.is_ok(),
            verdict.err().unwrap_or_else(|| map.to_string()),
        );
    }
    let quarter = ExactNumber::ratio(1, 4);
    report.check(
        "supports",
        Basis::Computed,
        f.support() == vec![(n(0), ExactNumber::ratio(3, 4))] && g.support() == vec![(quarter.clone(), n(1))],
        format!("f_p: {:?}, g_q: {:?}", f.support(), g.support()),
    );
    let slopes = [f.slope_at_start(), f.slope_at_end(), g.slope_at_start(), g.slope_at_end()];
    report.check(
        "endpoint slopes",
        Basis::Computed,
        *slopes[0] == p.recip().expect("p > 1") && slopes[1].is_one() && slopes[2].is_one() && slopes[3] == q,
        format!("f_p: {} at 0, {} at 1; g_q: {} at 0, {} at 1", slopes[0], slopes[1], slopes[2], slopes[3]),
    );
    report.skip("uncountably many isomorphism classes as (p, q, r) varies (cited)");
    report.skip("existence of an Aut-invariant character (cited)");
    Ok(report)
}
