//! Fixed points of conjugation by `Q = [[3, 1], [2, 1]]` on `SL₂(Z)`.

use num_bigint::BigInt;
use num_integer::Roots;
use rand::Rng;
use serde::Serialize;

use crate::abelian::{kernel_basis, IntMatrix};
use crate::report::{Basis, Report};

pub const CONJUGATOR: [[i64; 2]; 2] = [[3, 1], [2, 1]];
const CONJUGATOR_INVERSE: [[i64; 2]; 2] = [[1, -1], [-2, 3]];

type M2 = [[i64; 2]; 2];

fn mul(a: &M2, b: &M2) -> M2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

/// `Q X Q⁻¹` by direct multiplication.
pub fn conjugate(x: &M2) -> M2 {
    mul(&mul(&CONJUGATOR, x), &CONJUGATOR_INVERSE)
}

/// The entrywise formula for `Q X Q⁻¹` as printed in the source.
pub fn printed_formula(x: &M2) -> M2 {
    let [[a, b], [c, d]] = *x;
    [[3 * a - 6 * b + c - 2 * d, -3 * a + 9 * b - c + d], [2 * a - 4 * b + c - 2 * d, -2 * a + 6 * b - c + 3 * d]]
}

/// Integer solutions `(p, q)` of `det(p·I + q·Q) = 1`, i.e.
/// `p² + 4pq + q² = 1`, with every entry of `p·I + q·Q` bounded by `bound`.
///
/// Exhaustive: the entries include `q` and `2q`, so `|q| ≤ bound / 2`, and
/// for each `q` the equation is a monic quadratic in `p` with at most two
/// integer roots `p = -2q ± √(3q² + 1)`.
pub fn unimodular_commutant(bound: i64) -> Vec<M2> {
    let mut out = Vec::new();
    let qmax = bound / 2;
    for q in -qmax..=qmax {
        let disc = 3 * (q as i128) * (q as i128) + 1;
        let root = disc.sqrt();
        if root * root != disc {
            continue;
        }
        let root = root as i64;
        for p in [-2 * q + root, -2 * q - root] {
            let x = [[p + 3 * q, q], [2 * q, p + q]];
            if x.iter().flatten().all(|e| e.abs() <= bound) && !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out.sort();
    out
}

/// The integer commutant of `Q`, computed by solving `Q X = X Q` as a
/// linear system in the entries of `X`.
pub fn commutant_basis() -> Vec<Vec<BigInt>> {
    let [[q11, q12], [q21, q22]] = CONJUGATOR;
    // Unknowns (a, b, c, d); rows are the four entries of Q X - X Q.
    let system = IntMatrix::from_rows(&[
        vec![0, -q21, q12, 0],
        vec![-q12, q11 - q22, 0, q12],
        vec![q21, 0, q22 - q11, -q21],
        vec![0, q21, -q12, 0],
    ]);
    kernel_basis(&system)
}

#[derive(Debug, Clone, Serialize)]
pub struct Sl2Summary {
    pub formula_mismatches: usize,
    pub solutions: Vec<M2>,
}

pub fn sl2_report<R: Rng + ?Sized>(samples: usize, bound: i64, rng: &mut R) -> (Report, Sl2Summary) {
    let mut report = Report::new("Conjugation by [[3,1],[2,1]] on SL2(Z)");
    let identity: M2 = [[1, 0], [0, 1]];
    let minus: M2 = [[-1, 0], [0, -1]];
    report.check(
        "I and -I are fixed",
        Basis::Elementary,
        conjugate(&identity) == identity && conjugate(&minus) == minus,
        "direct multiplication",
    );

    let mut mismatches = 0;
    let mut first_bad = None;
    for _ in 0..samples {
        let x: M2 = [[rng.gen_range(-100..=100), rng.gen_range(-100..=100)], [rng.gen_range(-100..=100), rng.gen_range(-100..=100)]];
        if printed_formula(&x) != conjugate(&x) {
            mismatches += 1;
            first_bad.get_or_insert(x);
        }
    }
    let detail = match first_bad {
        None => format!("{samples} random matrices"),
        Some(x) => format!(
            "{mismatches}/{samples} mismatches; e.g. X = {x:?}: printed {:?}, direct {:?} (entry (1,2) is -3a+9b-c+3d)",
            printed_formula(&x),
            conjugate(&x)
        ),
    };
    report.check("printed conjugation formula matches direct multiplication", Basis::Published, mismatches == 0, detail);

    let basis = commutant_basis();
    let q = [[3, 1], [2, 1]];
    let spans_pi_qq = basis.len() == 2 && {
        // The lattice {pI + qQ} is {(a, b, c, d) : b = q, c = 2q, a - d = 2q}.
        basis.iter().all(|v| {
            let (a, b, c, d) = (&v[0], &v[1], &v[2], &v[3]);
            c == &(b * 2) && a - d == b * 2
        })
    };
    report.check(
        "commutant of Q is the lattice {pI + qQ}",
        Basis::Computed,
        spans_pi_qq,
        format!("kernel basis {basis:?}"),
    );

    let solutions = unimodular_commutant(bound);
    let expected = vec![minus, identity];
    let listed: Vec<String> = solutions.iter().take(8).map(|m| format!("{m:?}")).collect();
    report.check(
        "Fix of conjugation is exactly {I, -I}",
        Basis::Published,
        solutions == expected,
        format!(
            "{} determinant-one commutant elements with entries up to {bound}, e.g. {}; Q itself commutes with Q: {}",
            solutions.len(),
            listed.join(", "),
            solutions.contains(&q)
        ),
    );
    (report, Sl2Summary { formula_mismatches: mismatches, solutions })
}
