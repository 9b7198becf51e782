//! Smith forms, fixed subgroups and Reidemeister numbers against
//! brute-force oracles.

mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rinfty_core::abelian::{smith_normal_form, AbelianAuto, Count, FGAbelianGroup, IntMatrix};
use rinfty_core::character_action::{action_permuting, fixed_vector_from_characters, has_eigenvalue_one, CharacterData};
use rinfty_core::finite_group::AbelianModel;

use common::{big, finite_abelian_chains, random_automorphism};

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim, any::<u64>())
        .prop_map(move |(r, c, seed)| IntMatrix::random(&mut ChaCha8Rng::seed_from_u64(seed), r, c, bound))
}

/// gcd of all `k × k` minors, by cofactor expansion on row subsets.
fn determinantal_divisor(m: &IntMatrix, k: usize) -> BigInt {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (k - 1..n).flat_map(|last| subsets(last, k - 1).into_iter().map(move |mut s| {
            s.push(last);
            s
        })).collect()
    }
    let mut g = BigInt::zero();
    for rows in subsets(m.rows(), k) {
        for cols in subsets(m.cols(), k) {
            let minor: Vec<Vec<BigInt>> = rows.iter().map(|&i| cols.iter().map(|&j| m[(i, j)].clone()).collect()).collect();
            g = g.gcd(&IntMatrix::from_rows(&minor).det());
        }
    }
    g
}

fn count(n: usize) -> Count {
    Count::Finite(BigInt::from(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(m in matrix(8, 20)) {
        let f = smith_normal_form(&m);
        prop_assert_eq!(&(&f.u * &m) * &f.v, f.s.clone());
        prop_assert!(f.u.det().abs().is_one());
        prop_assert!(f.v.det().abs().is_one());
        prop_assert!(f.s.is_diagonal());
        let diag: Vec<BigInt> = (0..m.rows().min(m.cols())).map(|i| f.s[(i, i)].clone()).collect();
        prop_assert!(diag.iter().all(|d| !d.is_negative()));
        for w in diag.windows(2) {
            // Zeros trail, and each factor divides the next.
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()), "{:?}", diag);
        }
    }

    #[test]
    fn invariant_factors_match_determinantal_divisors(m in matrix(4, 9)) {
        let factors = smith_normal_form(&m).invariant_factors();
        let mut product = BigInt::one();
        for k in 1..=m.rows().min(m.cols()) {
            let dk = determinantal_divisor(&m, k);
            if k <= factors.len() {
                product *= &factors[k - 1];
                prop_assert_eq!(&dk, &product);
            } else {
                prop_assert!(dk.is_zero());
            }
        }
    }

    #[test]
    fn infinite_reidemeister_iff_infinite_fix(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let moduli: Vec<u64> = (0..n).map(|_| [0, 0, 0, 2, 3, 4, 6][rng.gen_range(0..7)]).collect();
        let auto = random_automorphism(&mut rng, &moduli, 3 * n + 4);
        let (r, fix) = (auto.reidemeister_number(), auto.fix_subgroup().order());
        prop_assert_eq!(r.is_infinite(), fix.is_infinite(), "moduli {:?}, M = {}", moduli, auto.matrix());
        if r.is_infinite() {
            prop_assert!(auto.fix_subgroup().free_rank() > 0);
        }
    }

    #[test]
    fn permuted_characters_certify_infinite_fix(seed in any::<u64>(), swap in any::<bool>()) {
        let c = IntMatrix::random_unimodular(&mut ChaCha8Rng::seed_from_u64(seed), 2, 8);
        let chars = CharacterData::new(vec![c.row(0), c.row(1)], vec!["a".into(), "b".into()]).unwrap();
        let m = action_permuting(&chars, swap).unwrap();
        let cert = fixed_vector_from_characters(&chars, &m).unwrap();
        prop_assert_eq!(m.mul_vec(&cert.fixed_vector), cert.fixed_vector.clone());
        prop_assert!(cert.fixed_vector.iter().any(|x| !x.is_zero()));
        let auto = AbelianAuto::new(FGAbelianGroup::free(2), m).unwrap();
        prop_assert!(auto.fix_subgroup().order().is_infinite());
        prop_assert!(auto.reidemeister_number().is_infinite());
    }

    #[test]
    fn any_certificate_implies_infinite_fix(seed in any::<u64>(), a in -3i64..=3, b in -3i64..=3, c in -3i64..=3, d in -3i64..=3) {
        let m = IntMatrix::random_unimodular(&mut ChaCha8Rng::seed_from_u64(seed), 2, 6);
        let Ok(chars) = CharacterData::from_i64(&[&[a, b], &[c, d]]) else { return Ok(()) };
        if fixed_vector_from_characters(&chars, &m).is_ok() {
            let auto = AbelianAuto::new(FGAbelianGroup::free(2), m).unwrap();
            prop_assert!(auto.fix_subgroup().order().is_infinite());
        }
    }

    #[test]
    fn eigenvalue_one_via_characteristic_polynomial(seed in any::<u64>()) {
        let m = IntMatrix::random_unimodular(&mut ChaCha8Rng::seed_from_u64(seed), 2, 10);
        // λ² − tλ + d vanishes at 1 iff t = 1 + d.
        prop_assert_eq!(has_eigenvalue_one(&m).unwrap(), m.trace() == BigInt::one() + m.det());
    }
}

#[test]
fn closed_forms_match_the_oracle_on_every_group_up_to_order_200() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    let chains = finite_abelian_chains(200);
    let mut checked = 0;
    for chain in &chains {
        let group = FGAbelianGroup::from_moduli(&big(chain));
        let model = AbelianModel::new(&group).expect("finite and small");
        assert_eq!(model.group.order() as u64, chain.iter().product::<u64>());
        for _ in 0..12 {
            let auto = random_automorphism(&mut rng, chain, 4 * chain.len() + 4);
            let phi = model.permutation(&auto);
            let (g, m) = (&model.group, auto.matrix());
            assert_eq!(auto.reidemeister_number(), count(g.twisted_classes(&phi).unwrap().count()), "{chain:?} M = {m}");
            assert_eq!(auto.fix_subgroup().order(), count(g.fixed_points(&phi).len()), "{chain:?} M = {m}");
            checked += 1;
        }
    }
    // Trivial group plus every nontrivial chain.
    assert_eq!(chains.len(), 1 + (2..=200u64).map(abelian_groups_of_order).sum::<usize>());
    assert!(checked >= 10 * chains.len());
}

/// Number of abelian groups of order n: product of partition numbers of the
/// prime exponents.
fn abelian_groups_of_order(mut n: u64) -> usize {
    let partitions = [1, 1, 2, 3, 5, 7, 11, 15];
    let mut total = 1;
    let mut p = 2;
    while n > 1 {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        total *= partitions[e];
        p += 1;
    }
    total
}

#[test]
fn small_known_values() {
    let auto = |mods: &[i64], rows: &[Vec<i64>]| {
        let mods: Vec<BigInt> = mods.iter().map(|&d| d.into()).collect();
        AbelianAuto::new(FGAbelianGroup::from_moduli(&mods), IntMatrix::from_rows(rows)).unwrap()
    };
    // Inversion on Z/n: R = |Fix| = gcd(2, n).
    for n in 2..30 {
        let a = auto(&[n], &[vec![-1]]);
        assert_eq!(a.reidemeister_number(), count(n.gcd(&2) as usize));
        assert_eq!(a.fix_subgroup().order(), count(n.gcd(&2) as usize));
    }
    // −I on Z²: R = 4, Fix trivial.
    let a = auto(&[0, 0], &[vec![-1, 0], vec![0, -1]]);
    assert_eq!(a.reidemeister_number(), count(4));
    assert_eq!(a.fix_subgroup().order(), count(1));
    // Hyperbolic [[2,1],[1,1]]: R = |det(M − I)| = 1.
    let a = auto(&[0, 0], &[vec![2, 1], vec![1, 1]]);
    assert_eq!(a.reidemeister_number(), count(1));
    assert!(AbelianAuto::new(FGAbelianGroup::free(2), IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]])).is_err());
    assert!(AbelianAuto::new(FGAbelianGroup::from_moduli(&[BigInt::from(2), BigInt::zero()]), IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]])).is_err());
}
