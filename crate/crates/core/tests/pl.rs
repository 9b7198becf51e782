//! Group laws of G([0,1]; A, P) over the dyadic, {2,3}-adic and golden rings.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rinfty_core::exact::ExactNumber;
use rinfty_core::pl::{BieriStrebelSpec, PLMap};

#[derive(Debug, Clone, Copy)]
enum Ring {
    Dyadic,
    SixAdic,
    Golden,
}

impl Ring {
    fn spec(self) -> BieriStrebelSpec {
        match self {
            Ring::Dyadic => BieriStrebelSpec::thompson_f(),
            Ring::SixAdic => BieriStrebelSpec::stein_f23(),
            Ring::Golden => BieriStrebelSpec::cleary_f_tau(),
        }
    }

    /// Ways to cut an interval, as fractions of its length.
    fn cuts(self) -> Vec<(ExactNumber, ExactNumber)> {
        let r = ExactNumber::ratio;
        match self {
            Ring::Dyadic => vec![(r(1, 2), r(1, 2))],
            Ring::SixAdic => vec![(r(1, 2), r(1, 2)), (r(1, 3), r(2, 3)), (r(2, 3), r(1, 3))],
            Ring::Golden => {
                let t = ExactNumber::tau();
                let t2 = &t * &t;
                vec![(t.clone(), t2.clone()), (t2, t)]
            }
        }
    }
}

/// Piece lengths of a random subdivision of [0,1] into `pieces` parts.
fn subdivision(rng: &mut ChaCha8Rng, ring: Ring, pieces: usize) -> Vec<ExactNumber> {
    let cuts = ring.cuts();
    let mut lengths = vec![ExactNumber::one()];
    while lengths.len() < pieces {
        let i = rng.gen_range(0..lengths.len());
        let (a, b) = &cuts[rng.gen_range(0..cuts.len())];
        let l = lengths.remove(i);
        lengths.insert(i, &l * b);
        lengths.insert(i, &l * a);
    }
    lengths
}

/// Maps the pieces of one random subdivision affinely onto those of another.
fn random_map(seed: u64, ring: Ring) -> PLMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pieces = rng.gen_range(1..7);
    let source = subdivision(&mut rng, ring, pieces);
    let target = subdivision(&mut rng, ring, pieces);
    let mut breaks = Vec::new();
    let mut x = ExactNumber::zero();
    for l in &source[..pieces - 1] {
        x = &x + l;
        breaks.push(x.clone());
    }
    let slopes = target.iter().zip(&source).map(|(t, s)| t / s).collect();
    PLMap::new(ExactNumber::one(), breaks, slopes).unwrap()
}

fn ring() -> impl Strategy<Value = Ring> {
    prop_oneof![Just(Ring::Dyadic), Just(Ring::SixAdic), Just(Ring::Golden)]
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3000))]

    #[test]
    fn group_axioms(ring in ring(), s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (f, g, h) = (random_map(s1, ring), random_map(s2, ring), random_map(s3, ring));
        prop_assert_eq!(f.compose(&g).unwrap().compose(&h).unwrap(), f.compose(&g.compose(&h).unwrap()).unwrap());
        prop_assert_eq!(f.compose(&PLMap::unit_identity()).unwrap(), f.clone());
        prop_assert_eq!(PLMap::unit_identity().compose(&f).unwrap(), f.clone());
        prop_assert!(f.compose(&f.invert()).unwrap().is_identity());
        prop_assert!(f.invert().compose(&f).unwrap().is_identity());
    }

    #[test]
    fn membership_is_closed(ring in ring(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let spec = ring.spec();
        let (f, g) = (random_map(s1, ring), random_map(s2, ring));
        prop_assert!(f.is_member(&spec) && g.is_member(&spec), "{} / {}", f, g);
        prop_assert!(f.compose(&g).unwrap().is_member(&spec));
        prop_assert!(f.invert().is_member(&spec));
    }

    #[test]
    fn endpoint_characters_are_homomorphisms(ring in ring(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let p = ring.spec().slopes;
        let (f, g) = (random_map(s1, ring), random_map(s2, ring));
        let (cf, cg) = (f.endpoint_characters(&p).unwrap(), g.endpoint_characters(&p).unwrap());
        let fg = f.compose(&g).unwrap().endpoint_characters(&p).unwrap();
        prop_assert_eq!(fg, (add(&cf.0, &cg.0), add(&cf.1, &cg.1)));
        let commutator = f.compose(&g).unwrap().compose(&f.invert()).unwrap().compose(&g.invert()).unwrap();
        let (c0, c1) = commutator.endpoint_characters(&p).unwrap();
        prop_assert!(c0.iter().chain(&c1).all(|&e| e == 0));
    }
}
