//! The crystallographic group `Z² ⋊_B Z` with `B = [[-1, b], [0, 1]]`,
//! and the automorphism negating every coordinate.

use std::collections::HashSet;

use num_bigint::BigInt;
use rand::Rng;
use serde::Serialize;

use super::free_group::FreeWord;
use crate::abelian::{kernel_basis, AbelianAuto, Count, FGAbelianGroup, IntMatrix};
use crate::report::{Basis, Report};

/// `((x, y), z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GwElement {
    pub v: (i64, i64),
    pub z: i64,
}

impl GwElement {
    pub const IDENTITY: GwElement = GwElement { v: (0, 0), z: 0 };

    pub fn new(x: i64, y: i64, z: i64) -> Self {
        GwElement { v: (x, y), z }
    }
}

/// The group for a fixed parameter `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GwGroup {
    pub b: i64,
}

impl GwGroup {
    pub fn new(b: i64) -> Self {
        GwGroup { b }
    }

    /// `B^z · v`, using `B² = I`.
    fn twist(&self, z: i64, (x, y): (i64, i64)) -> (i64, i64) {
        if z.rem_euclid(2) == 0 {
            (x, y)
        } else {
            (-x + self.b * y, y)
        }
    }

    pub fn multiply(&self, g: &GwElement, h: &GwElement) -> GwElement {
        let (x, y) = self.twist(g.z, h.v);
        GwElement { v: (g.v.0 + x, g.v.1 + y), z: g.z + h.z }
    }

    pub fn inverse(&self, g: &GwElement) -> GwElement {
        let (x, y) = self.twist(g.z, g.v);
        GwElement { v: (-x, -y), z: -g.z }
    }

    /// `e₁, e₂, t`.
    pub fn generators(&self) -> [GwElement; 3] {
        [GwElement::new(1, 0, 0), GwElement::new(0, 1, 0), GwElement::new(0, 0, 1)]
    }

    /// The generators and their inverses.
    pub fn symmetric_generators(&self) -> Vec<GwElement> {
        let g = self.generators();
        g.iter().copied().chain(g.iter().map(|x| self.inverse(x))).collect()
    }

    pub fn evaluate(&self, w: &FreeWord) -> GwElement {
        let gens = self.generators();
        w.letters().iter().fold(GwElement::IDENTITY, |acc, &l| {
            let g = gens[l.unsigned_abs() as usize - 1];
            self.multiply(&acc, &if l > 0 { g } else { self.inverse(&g) })
        })
    }

    /// Elements of word length at most `radius`, by BFS layer.
    pub fn ball_layers(&self, radius: usize) -> Vec<Vec<GwElement>> {
        let gens = self.symmetric_generators();
        let mut seen: HashSet<GwElement> = HashSet::from([GwElement::IDENTITY]);
        let mut layers = vec![vec![GwElement::IDENTITY]];
        for _ in 0..radius {
            let mut next = Vec::new();
            for g in layers.last().expect("nonempty") {
                for s in &gens {
                    let h = self.multiply(g, s);
                    if seen.insert(h) {
                        next.push(h);
                    }
                }
            }
            next.sort();
            layers.push(next);
        }
        layers
    }

    /// Relators of the presentation `⟨e₁, e₂, t | [e₁,e₂], t e₁ t⁻¹ e₁, t e₂ t⁻¹ (e₁^b e₂)⁻¹⟩`.
    pub fn relators(&self) -> Vec<FreeWord> {
        let (e1, e2, t) = (FreeWord::generator(0), FreeWord::generator(1), FreeWord::generator(2));
        vec![
            FreeWord::commutator(&e1, &e2),
            t.mul(&e1).mul(&t.inverse()).mul(&e1),
            t.mul(&e2).mul(&t.inverse()).mul(&e1.pow(self.b).mul(&e2).inverse()),
        ]
    }
}

/// `((x, y), z) ↦ ((-x, -y), -z)`.
pub fn gw_phi(g: &GwElement) -> GwElement {
    GwElement { v: (-g.v.0, -g.v.1), z: -g.z }
}

/// Images of `e₁, e₂, t` under φ, as words.
fn phi_on_generators() -> Vec<FreeWord> {
    (0..3).map(|i| FreeWord::generator(i).inverse()).collect()
}

/// Abelianization and the induced automorphism, from the presentation.
pub fn gw_abelianization(b: i64) -> AbelianAuto {
    let group = GwGroup::new(b);
    let rels: Vec<Vec<BigInt>> =
        group.relators().iter().map(|r| r.abelianize(3).into_iter().map(BigInt::from).collect()).collect();
    let ab = FGAbelianGroup::new(IntMatrix::from_columns(3, &rels));
    let cols: Vec<Vec<BigInt>> =
        phi_on_generators().iter().map(|w| w.abelianize(3).into_iter().map(BigInt::from).collect()).collect();
    AbelianAuto::new(ab, IntMatrix::from_columns(3, &cols)).expect("negation is an automorphism")
}

pub fn gw_report<R: Rng + ?Sized>(b: i64, samples: usize, radius: usize, rng: &mut R) -> Report {
    let group = GwGroup::new(b);
    let mut report = Report::new(format!("GW with b = {b}"));
    let e = GwElement::IDENTITY;

    let probe = GwElement::new(3, -2, 5);
    report.check(
        "identity is neutral",
        Basis::Elementary,
        group.multiply(&e, &probe) == probe && group.multiply(&probe, &e) == probe,
        "checked on ((3,-2),5)",
    );
    let prod = group.multiply(&GwElement::new(1, 0, 1), &GwElement::new(1, 0, 0));
    report.check(
        "((1,0),1)·((1,0),0) = ((0,0),1)",
        Basis::Computed,
        prod == GwElement::new(0, 0, 1),
        format!("got {prod:?}"),
    );

    let random = |rng: &mut R| GwElement::new(rng.gen_range(-50..=50), rng.gen_range(-50..=50), rng.gen_range(-50..=50));
    let mut assoc_ok = true;
    let mut hom_ok = true;
    for _ in 0..samples {
        let (g, h, k) = (random(rng), random(rng), random(rng));
        assoc_ok &= group.multiply(&group.multiply(&g, &h), &k) == group.multiply(&g, &group.multiply(&h, &k));
        hom_ok &= gw_phi(&group.multiply(&g, &h)) == group.multiply(&gw_phi(&g), &gw_phi(&h));
    }
    report.check("associativity", Basis::Computed, assoc_ok, format!("{samples} random triples"));
    report.check("phi is a homomorphism", Basis::Published, hom_ok, format!("{samples} random pairs"));

    let relators_hold = group.relators().iter().all(|r| group.evaluate(r) == e);
    report.check("presentation relators hold in the model", Basis::Published, relators_hold, "[e1,e2], t e1 t^-1 e1, t e2 t^-1 = e1^b e2");

    let layers = group.ball_layers(radius);
    let ball: Vec<GwElement> = layers.iter().flatten().copied().collect();
    let ball_set: HashSet<GwElement> = ball.iter().copied().collect();
    let bijective = ball.iter().all(|g| ball_set.contains(&gw_phi(g)) && gw_phi(&gw_phi(g)) == *g);
    report.check("phi is a bijection of the ball", Basis::Computed, bijective, format!("radius {radius}, {} elements", ball.len()));
    let fixed: Vec<&GwElement> = ball.iter().filter(|g| gw_phi(g) == **g).collect();
    report.check(
        "Fix(phi) in the ball is trivial",
        Basis::Published,
        fixed == [&e],
        format!("radius {radius}: {} fixed element(s)", fixed.len()),
    );
    // φ is linear in the coordinates (x, y, z); its fixed points are the
    // integer kernel of (φ - I).
    let phi_coords = IntMatrix::from_rows(&[vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]]);
    let closed_form = kernel_basis(&(&phi_coords - &IntMatrix::identity(3))).is_empty();
    report.check("Fix(phi) is trivial (closed form)", Basis::Published, closed_form, "(-v, -z) = (v, z) forces z = 0 and v = 0");

    let sizes: Vec<usize> = layers.iter().scan(0, |acc, l| {
        *acc += l.len();
        Some(*acc)
    }).collect();
    let cubic = (1..sizes.len()).all(|r| sizes[r] <= sizes[1] * r * r * r);
    report.check("ball growth at most cubic", Basis::Computed, cubic, format!("ball sizes {:?}", &sizes[1..]));

    let auto = gw_abelianization(b);
    let ab = auto.group();
    let torsion: Vec<String> = ab.torsion().iter().map(ToString::to_string).collect();
    let even = b % 2 == 0;
    let expected_torsion: Vec<String> = if even { vec!["2".into()] } else { vec![] };
    report.check(
        "abelianization",
        Basis::Published,
        torsion == expected_torsion && ab.free_rank() == 2,
        format!("{} (torsion {:?}, free rank {})", ab.structure(), torsion, ab.free_rank()),
    );
    report.check(
        "induced map on the abelianization is -I",
        Basis::Published,
        *auto.matrix() == IntMatrix::from_rows(&[vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]]),
        format!("{}", auto.matrix()),
    );
    let fix = auto.fix_subgroup();
    let expected_fix = if even { 2 } else { 1 };
    let elements = fix.elements(ab, 16).unwrap_or_default();
    let e1_fixed = ab.normalize(&[BigInt::from(1), BigInt::from(0), BigInt::from(0)]);
    let fix_ok = fix.order() == Count::Finite(BigInt::from(expected_fix)) && (!even || elements.contains(&e1_fixed));
    report.check(
        "|Fix(phi^ab)|",
        Basis::Published,
        fix_ok,
        format!("{} (expected {expected_fix}{})", fix.order(), if even { ", elements 0 and e1" } else { "" }),
    );
    let r = auto.reidemeister_number();
    report.check("R(phi^ab) is finite", Basis::Computed, !r.is_infinite(), format!("R = {r}"));
    report
}
