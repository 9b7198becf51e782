//! Acceptance criteria 1–9. Each prints one PASS/FAIL line with its elapsed
//! time; a criterion passes only if every check holds within its time bound.
//!
//! Criterion 2 is expected to fail: the printed entry (1,2) of the
//! conjugation formula is wrong, and the determinant-one commutant of
//! `[[3,1],[2,1]]` is infinite (a Pell equation), not `{±I}`.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rinfty_core::abelian::{AbelianAuto, Count, FGAbelianGroup, IntMatrix};
use rinfty_core::braid::{braid_equal, BraidWord};
use rinfty_core::braided::{fbr_generators, BraidedDiagram};
use rinfty_core::case_studies::{cohen_lustig_report, gw_abelianization, gw_report, sl2_report};
use rinfty_core::character_action::{
    action_permuting, character_independence, fixed_vector_from_characters, has_eigenvalue_one, thompson_like_cases,
};
use rinfty_core::finite_group::{audit_small_groups, AbelianModel};
use rinfty_core::lodha_moore::{relation_sweep, Address, Generator, LMWord, Variant};
use rinfty_core::report::Report;
use rinfty_core::thompson::TreePair;

use common::{big, finite_abelian_chains, invariant_subgroups, random_automorphism};

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn report(&mut self, report: &Report) {
        for c in report.failures() {
            self.failures.push(format!("{}: {}", c.name, c.detail));
        }
    }
}

fn criterion(number: usize, title: &str, bound: Duration, body: impl FnOnce(&mut Outcome)) {
    let start = Instant::now();
    let mut outcome = Outcome::new();
    body(&mut outcome);
    let elapsed = start.elapsed();
    outcome.require(elapsed <= bound, format!("took {elapsed:.2?}, bound {bound:?}"));
    let verdict = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
    // Written past the test harness's capture so passing criteria are listed too.
    let mut line = format!("{verdict} criterion {number}: {title} ({elapsed:.2?})\n");
    for f in &outcome.failures {
        line.push_str(&format!("    {f}\n"));
    }
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    assert!(outcome.failures.is_empty(), "criterion {number} failed: {:#?}", outcome.failures);
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn criterion_1_gw() {
    criterion(1, "GW case study", Duration::from_secs(5), |out| {
        let mut r = rng(1);
        for b in [2, 3] {
            out.report(&gw_report(b, 10_000, 8, &mut r));
        }
        let two = gw_abelianization(2);
        out.require(two.group().torsion() == big(&[2]) && two.group().free_rank() == 2, format!("b=2: {}", two.group().structure()));
        out.require(two.fix_subgroup().order() == Count::Finite(2.into()), "b=2: |Fix| != 2");
        let three = gw_abelianization(3);
        out.require(three.group().torsion().is_empty() && three.group().free_rank() == 2, format!("b=3: {}", three.group().structure()));
        out.require(three.fix_subgroup().order() == Count::Finite(1.into()), "b=3: |Fix| != 1");
    });
}

#[test]
fn criterion_2_sl2() {
    criterion(2, "SL2(Z) conjugation by [[3,1],[2,1]]", Duration::from_secs(10), |out| {
        let (report, _) = sl2_report(1000, 1_000_000, &mut rng(2));
        out.report(&report);
    });
}

#[test]
fn criterion_3_cohen_lustig() {
    criterion(3, "Cohen-Lustig automorphism", Duration::from_secs(1), |out| {
        out.report(&cohen_lustig_report());
    });
}

#[test]
fn criterion_4_finite_groups() {
    criterion(4, "finite-group oracle", Duration::from_secs(60), |out| {
        let audit = audit_small_groups();
        out.require(audit.groups >= 40, format!("only {} groups in the corpus", audit.groups));
        out.require(audit.single_class_mismatches.is_empty(), format!("R = 1 vs |Fix| = 1: {:?}", audit.single_class_mismatches));
        out.require(audit.quotient_violations.is_empty(), format!("R >= R(G/N): {:?}", audit.quotient_violations));

        // Random finite abelian instances: oracle vs closed forms, then the
        // quotient inequality over invariant subgroups.
        let mut r = rng(4);
        let chains: Vec<Vec<u64>> = finite_abelian_chains(200).into_iter().filter(|c| !c.is_empty()).collect();
        let mut models = std::collections::HashMap::new();
        for i in 0..1000 {
            let chain = &chains[r.gen_range(0..chains.len())];
            let model = models.entry(chain.clone()).or_insert_with(|| AbelianModel::new(&FGAbelianGroup::from_moduli(&big(chain))).unwrap());
            let auto = random_automorphism(&mut r, chain, 4 * chain.len() + 4);
            let phi = model.permutation(&auto);
            let g = &model.group;
            let classes = g.twisted_classes(&phi).unwrap().count();
            let fixed = g.fixed_points(&phi).len();
            if auto.reidemeister_number() != Count::Finite(classes.into()) || auto.fix_subgroup().order() != Count::Finite(fixed.into()) {
                out.require(false, format!("instance {i}: {chain:?}, M = {}", auto.matrix()));
            }
            for (name, n) in invariant_subgroups(g, &phi) {
                match g.quotient_twisted_count(&phi, &n) {
                    Some(q) if q <= classes => {}
                    other => out.require(false, format!("instance {i}: {chain:?} over {name}: {other:?} vs R = {classes}")),
                }
            }
        }

        // Infinite instances: R infinite iff Fix infinite.
        for i in 0..1000 {
            let n = r.gen_range(1..=4);
            let moduli: Vec<u64> = (0..n).map(|_| [0, 0, 2, 3, 4][r.gen_range(0..5)]).collect();
            let auto = random_automorphism(&mut r, &moduli, 4 * n + 4);
            let (rr, fix) = (auto.reidemeister_number(), auto.fix_subgroup().order());
            out.require(rr.is_infinite() == fix.is_infinite(), format!("mixed instance {i}: {moduli:?}, M = {}", auto.matrix()));
        }
    });
}

#[test]
fn criterion_5_lodha_moore() {
    criterion(5, "Lodha-Moore relations and quotient", Duration::from_secs(60), |out| {
        for s in relation_sweep(4, 12) {
            out.require(s.checked > 0, format!("{}: no instances", s.variant));
            out.require(s.failed.is_empty(), format!("{}: {} failed, e.g. {:?}", s.variant, s.failed.len(), s.failed.first()));
            out.require(s.character_violations.is_empty(), format!("{}: {:?}", s.variant, s.character_violations.first()));
        }
        for variant in Variant::ALL {
            let x = |a: Address| LMWord::new(vec![Generator::x(a)], variant).unwrap().quotient_image();
            let (whole, left, right) = (x(Address::empty()), x(Address::constant(0, 1)), x(Address::constant(1, 1)));
            out.require(whole == (left.0 + right.0, left.1 + right.1), format!("{variant}: x = x0 x1 fails: {whole:?} vs {left:?} + {right:?}"));
            for n in 2..=8 {
                let v = x(Address::constant(0, n));
                out.require(v == left, format!("{variant}: x_0^{n} = {v:?}, x_0 = {left:?}"));
            }
        }
    });
}

#[test]
fn criterion_6_thompson() {
    criterion(6, "Thompson F across representations", Duration::from_secs(30), |out| {
        let mut r = rng(6);
        for i in 0..1000 {
            let (la, lb) = (r.gen_range(1..12), r.gen_range(1..12));
            let (a, b) = (TreePair::random(&mut r, la), TreePair::random(&mut r, lb));
            out.require(a.multiply(&b).to_pl() == a.to_pl().compose(&b.to_pl()).unwrap(), format!("pair {i}: {a} · {b}"));
        }
        for i in 0..1000 {
            let leaves = r.gen_range(1..10);
            let a = TreePair::random(&mut r, leaves);
            let mut d = a.clone();
            for _ in 0..r.gen_range(0..6) {
                let leaf = r.gen_range(0..d.leaf_count());
                d = d.expand(leaf);
            }
            let seed = r.gen::<u64>();
            let mut pick = rng(seed);
            let reduced = d.reduce_with(|c| c[pick.gen_range(0..c.len())]);
            out.require(reduced == a.reduce() && reduced.is_reduced(), format!("confluence {i}: {d}"));
        }
    });
}

#[test]
fn criterion_7_braided() {
    criterion(7, "braided Thompson group", Duration::from_secs(60), |out| {
        let gens = fbr_generators();
        out.require(gens.len() == 10, format!("{} generators", gens.len()));
        for (name, d) in &gens {
            out.require(d.is_pure(), format!("{name} is not pure"));
        }
        let mut r = rng(7);
        for i in 0..1000 {
            let (leaves, len) = (r.gen_range(1..6), r.gen_range(0..5));
            let d = BraidedDiagram::random_pure(&mut r, leaves, len);
            let leaf = r.gen_range(0..d.leaf_count());
            let e = d.expand(leaf).unwrap();
            out.require(e.characters() == d.characters() && e.is_pure(), format!("expansion {i}"));
        }
        for i in 0..1000 {
            let (la, lena, lb, lenb) = (r.gen_range(1..6), r.gen_range(0..5), r.gen_range(1..6), r.gen_range(0..5));
            let a = BraidedDiagram::random_pure(&mut r, la, lena);
            let b = BraidedDiagram::random_pure(&mut r, lb, lenb);
            let (p, q, s) = (a.characters(), b.characters(), a.multiply(&b).unwrap().characters());
            out.require(s == (p.0 + q.0, p.1 + q.1), format!("product {i}: {p:?} + {q:?} != {s:?}"));
        }
        let w = |n: usize, word: &[i64]| BraidWord::from_signed(n, word).unwrap();
        for n in 3..=7 {
            for i in 1..n as i64 - 1 {
                out.require(braid_equal(&w(n, &[i, i + 1, i]), &w(n, &[i + 1, i, i + 1])).unwrap(), format!("braid relation {i} on {n}"));
            }
            for i in 1..n as i64 {
                for j in i + 2..n as i64 {
                    out.require(braid_equal(&w(n, &[i, j]), &w(n, &[j, i])).unwrap(), format!("far commutation {i},{j} on {n}"));
                }
            }
        }
        out.require(!braid_equal(&w(2, &[1, 1]), &BraidWord::empty(2)).unwrap(), "sigma1^2 = 1 accepted");
        for i in 0..300 {
            let (la, lb) = (r.gen_range(1..9), r.gen_range(1..9));
            let (a, b) = (TreePair::random(&mut r, la), TreePair::random(&mut r, lb));
            let lifted = BraidedDiagram::from_tree_pair(&a).multiply(&BraidedDiagram::from_tree_pair(&b)).unwrap();
            out.require(lifted.equivalent(&BraidedDiagram::from_tree_pair(&a.multiply(&b))).unwrap(), format!("trivial braids {i}"));
        }
    });
}

#[test]
fn criterion_8_fixed_vectors() {
    criterion(8, "fixed vectors from invariant character pairs", Duration::from_secs(1), |out| {
        for case in thompson_like_cases() {
            for swap in [false, true] {
                let m = action_permuting(&case.characters, swap).unwrap();
                match fixed_vector_from_characters(&case.characters, &m) {
                    Ok(cert) => {
                        let v = &cert.fixed_vector;
                        out.require(m.mul_vec(v) == *v && v.iter().any(|x| *x != BigInt::from(0)), format!("{} swap={swap}: bad vector", case.group));
                        let auto = AbelianAuto::new(FGAbelianGroup::free(2), m).unwrap();
                        out.require(auto.fix_subgroup().order().is_infinite(), format!("{} swap={swap}: Fix finite", case.group));
                    }
                    Err(e) => out.require(false, format!("{} swap={swap}: {e}", case.group)),
                }
            }
            let ind = character_independence(&case.characters.as_matrix()).unwrap();
            out.require(ind.independent, format!("{}: determinant {}", case.group, ind.determinant));
        }
    });
}

#[test]
fn criterion_9_eigenvalue_one() {
    criterion(9, "eigenvalue-one check", Duration::from_secs(1), |out| {
        let mut r = rng(9);
        for i in 0..1000 {
            let steps = r.gen_range(1..12);
            let m = IntMatrix::random_unimodular(&mut r, 2, steps);
            let singular = (&m - &IntMatrix::identity(2)).det() == BigInt::from(0);
            out.require(has_eigenvalue_one(&m).unwrap() == singular, format!("matrix {i}: {m}"));
        }
    });
}
