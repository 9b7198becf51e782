//! Generators shared by the integration suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use rand::Rng;
use rinfty_core::abelian::{AbelianAuto, FGAbelianGroup, IntMatrix};
use rinfty_core::finite_group::FiniteGroup;

/// Invariant-factor chains `d₁ | d₂ | … ` with every `dᵢ > 1` and product at
/// most `max_order`: one entry per finite abelian group up to isomorphism.
pub fn finite_abelian_chains(max_order: u64) -> Vec<Vec<u64>> {
    fn extend(prefix: &mut Vec<u64>, product: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        out.push(prefix.clone());
        let last = prefix.last().copied();
        let mut d = last.unwrap_or(2);
        while product * d <= max {
            if last.is_none_or(|l| d.is_multiple_of(l)) {
                prefix.push(d);
                extend(prefix, product * d, max, out);
                prefix.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_order, &mut out);
    out
}

pub fn big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&d| BigInt::from(d)).collect()
}

/// A random automorphism of `⊕ Z/dᵢ` (with `dᵢ = 0` meaning `Z`), as a
/// product of elementary automorphisms: unit scalings on one coordinate and
/// transvections `eᵢ ↦ eᵢ + c·eⱼ` with `c` a multiple of `dᵢ / gcd(dᵢ, dⱼ)`.
pub fn random_automorphism<R: Rng + ?Sized>(rng: &mut R, moduli: &[u64], steps: usize) -> AbelianAuto {
    let n = moduli.len();
    let mut m = IntMatrix::identity(n);
    for _ in 0..if n == 0 { 0 } else { steps } {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let mut e = IntMatrix::identity(n);
        if i == j {
            let u = if moduli[i] == 0 {
                if rng.gen_bool(0.5) { 1 } else { -1 }
            } else {
                loop {
                    let u = rng.gen_range(1..=moduli[i].max(2)) as i64;
                    if (u as u64).gcd(&moduli[i]) == 1 {
                        break u;
                    }
                }
            };
            e[(i, i)] = BigInt::from(u);
        } else {
            let (di, dj) = (moduli[i], moduli[j]);
            let step = match (di, dj) {
                (0, 0) => 1,
                (0, _) => continue,
                (_, _) => di / di.gcd(&dj),
            };
            let c = rng.gen_range(-3i64..=3) * step as i64;
            e[(i, j)] = BigInt::from(c);
        }
        m = &e * &m;
    }
    let group = FGAbelianGroup::from_moduli(&big(moduli));
    AbelianAuto::new(group, m).expect("elementary automorphisms compose to an automorphism")
}

/// Subgroups of a finite abelian group that every automorphism (or this
/// particular `phi`) preserves: `G[k]`, `kG` for each prime `k` dividing the
/// order, `Fix(φ)` and `im(φ − 1)`.
pub fn invariant_subgroups(g: &FiniteGroup, phi: &[usize]) -> Vec<(String, Vec<usize>)> {
    let n = g.order();
    let power = |x: usize, k: usize| (0..k).fold(g.identity(), |acc, _| g.mul(acc, x));
    let mut out = Vec::new();
    for p in (2..=n).filter(|p| n % p == 0 && (2..*p).all(|q| p % q != 0)) {
        out.push((format!("G[{p}]"), (0..n).filter(|&x| power(x, p) == g.identity()).collect()));
        let mut multiples: Vec<usize> = (0..n).map(|x| power(x, p)).collect();
        multiples.sort_unstable();
        multiples.dedup();
        out.push((format!("{p}G"), multiples));
    }
    out.push(("Fix".into(), g.fixed_points(phi)));
    let mut image: Vec<usize> = (0..n).map(|x| g.mul(phi[x], g.inv(x))).collect();
    image.sort_unstable();
    image.dedup();
    out.push(("im(phi-1)".into(), image));
    out
}
