//! The automorphism of `F₃ = ⟨x, y, z⟩` given by
//! `x ↦ z³xz⁻³`, `y ↦ z⁻¹xz²x⁻¹yz⁻¹`, `z ↦ z·φ([y, x])`.

use super::free_group::{stallings_fold, FreeWord, DEFAULT_ALPHABET};
use crate::report::{Basis, Report};

/// Images of `x, y, z`.
pub fn cohen_lustig_images() -> [FreeWord; 3] {
    let parse = |s: &str| FreeWord::parse(s, DEFAULT_ALPHABET).expect("literal word");
    let fx = parse("z^3 x z^-3");
    let fy = parse("z' x z^2 x' y z'");
    // φ([y, x]) = [φ(y), φ(x)] with [a, b] = a b a⁻¹ b⁻¹.
    let fz = parse("z").mul(&FreeWord::commutator(&fy, &fx));
    [fx, fy, fz]
}

pub fn cohen_lustig_report() -> Report {
    let mut report = Report::new("Cohen-Lustig automorphism of F3");
    let images = cohen_lustig_images();
    report.check(
        "phi(x) has reduced length 7",
        Basis::Computed,
        images[0].len() == 7,
        format!("phi(x) = {}", images[0]),
    );
    report.check("phi(y)", Basis::Elementary, true, format!("{} (length {})", images[1], images[1].len()));
    report.check("phi(z)", Basis::Elementary, true, format!("{} (length {})", images[2], images[2].len()));

    let columns: Vec<Vec<i64>> = images.iter().map(|w| w.abelianize(3)).collect();
    let identity = (0..3).all(|j| (0..3).all(|i| columns[j][i] == i64::from(i == j)));
    report.check(
        "induced map on the abelianization is the identity",
        Basis::Published,
        identity,
        format!("columns {columns:?}"),
    );

    let graph = stallings_fold(&images, 3);
    report.check(
        "images generate F3 (folded graph is the 3-petal rose)",
        Basis::Computed,
        graph.is_full(),
        format!("{} vertices, {} edges after folding", graph.vertices, graph.edges.len()),
    );
    report.skip("the outer class of phi is nontrivial (needs a conjugacy or Whitehead algorithm)");
    report.skip("fixed-point dynamics of phi (cited, not computed)");
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_passes() {
        let r = cohen_lustig_report();
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.not_checked.len(), 2);
    }

    #[test]
    fn is_an_endomorphism_consistent_with_substitution() {
        let images = cohen_lustig_images();
        let yx = FreeWord::commutator(&FreeWord::generator(1), &FreeWord::generator(0));
        assert_eq!(images[2], FreeWord::generator(2).mul(&yx.substitute(&images)));
    }
}
