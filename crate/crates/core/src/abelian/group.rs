use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use super::snf::{kernel_basis, smith_normal_form, SmithForm};
use super::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("matrix is {rows}x{cols}, expected {expected}x{expected}")]
    Shape { rows: usize, cols: usize, expected: usize },
    #[error("matrix does not preserve the relation lattice")]
    DoesNotDescend,
    #[error("induced map on the quotient is not invertible")]
    NotInvertible,
}

/// A cardinality that may be infinite.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Count {
    Finite(BigInt),
    Infinite,
}

impl Count {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Count::Infinite)
    }

    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Count::Finite(n) => Some(n),
            Count::Infinite => None,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Count {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Count::Finite(n) => match n.to_u64() {
                Some(k) => s.serialize_u64(k),
                None => s.collect_str(n),
            },
            Count::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// `Z^n` modulo the column span of a relation matrix.
#[derive(Debug, Clone)]
pub struct FGAbelianGroup {
    relations: IntMatrix,
    snf: SmithForm,
}

impl FGAbelianGroup {
    /// Relations are the columns of `relations`; its row count is the
    /// number of generators.
    pub fn new(relations: IntMatrix) -> Self {
        let snf = smith_normal_form(&relations);
        FGAbelianGroup { relations, snf }
    }

    pub fn free(n: usize) -> Self {
        Self::new(IntMatrix::zeros(n, 0))
    }

    /// `Z/d_1 ⊕ … ⊕ Z/d_k`; a zero modulus gives a free factor.
    pub fn from_moduli(moduli: &[BigInt]) -> Self {
        Self::new(IntMatrix::diagonal(moduli))
    }

    pub fn generators(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn smith(&self) -> &SmithForm {
        &self.snf
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.snf.invariant_factors().into_iter().filter(|d| !d.is_one()).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.generators() - self.snf.rank()
    }

    pub fn order(&self) -> Count {
        if self.free_rank() > 0 {
            Count::Infinite
        } else {
            Count::Finite(self.torsion().iter().product())
        }
    }

    /// Canonical coordinates of the class of `x`: `U·x` with torsion
    /// coordinates reduced into `[0, d_i)`.
    pub fn normalize(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.reduce_canonical(self.snf.u.mul_vec(x))
    }

    /// Reduces coordinates that are already in `U`-space.
    pub fn reduce_canonical(&self, mut y: Vec<BigInt>) -> Vec<BigInt> {
        for (i, d) in self.snf.invariant_factors().iter().enumerate() {
            y[i] = y[i].mod_floor(d);
        }
        y
    }

    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        self.normalize(x).iter().all(Zero::is_zero)
    }

    /// Whether the class of `x` has finite order.
    pub fn is_torsion(&self, x: &[BigInt]) -> bool {
        let y = self.snf.u.mul_vec(x);
        y[self.snf.rank()..].iter().all(Zero::is_zero)
    }

    pub fn structure(&self) -> String {
        let mut parts: Vec<String> = self.torsion().iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank() > 0 {
            parts.push(if self.free_rank() == 1 { "Z".to_string() } else { format!("Z^{}", self.free_rank()) });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// An endomorphism of `Z^n` that descends to an automorphism of the quotient.
#[derive(Debug, Clone)]
pub struct AbelianAuto {
    group: FGAbelianGroup,
    matrix: IntMatrix,
}

impl AbelianAuto {
    pub fn new(group: FGAbelianGroup, matrix: IntMatrix) -> Result<Self, AbelianError> {
        let n = group.generators();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(AbelianError::Shape { rows: matrix.rows(), cols: matrix.cols(), expected: n });
        }
        let images = &matrix * group.relations();
        if !images.columns().iter().all(|c| group.is_zero(c)) {
            return Err(AbelianError::DoesNotDescend);
        }
        // Surjective on the quotient iff [M | R] spans Z^n; surjective
        // endomorphisms of finitely generated abelian groups are injective.
        let spanning = smith_normal_form(&matrix.hstack(group.relations()));
        let factors = spanning.invariant_factors();
        if factors.len() != n || !factors.iter().all(One::is_one) {
            return Err(AbelianError::NotInvertible);
        }
        Ok(AbelianAuto { group, matrix })
    }

    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(x)
    }

    fn minus_identity(&self) -> IntMatrix {
        &self.matrix - &IntMatrix::identity(self.group.generators())
    }

    pub fn fix_subgroup(&self) -> FixedSubgroup {
        let n = self.group.generators();
        let stacked = self.minus_identity().hstack(self.group.relations());
        // x is fixed mod L iff (x, y) lies in the kernel of [M - I | R].
        let lifts: Vec<Vec<BigInt>> = kernel_basis(&stacked)
            .into_iter()
            .map(|k| k[..n].to_vec())
            .filter(|x| !self.group.is_zero(x))
            .collect();
        let gens: Vec<Vec<BigInt>> = lifts.iter().map(|x| self.group.normalize(x)).collect();

        // Relations among the generators: c with Σ c_j g_j = 0 in the group.
        let d = self.group.smith().invariant_factors();
        let k = gens.len();
        let mut system = IntMatrix::zeros(n, k + d.len());
        for (j, g) in gens.iter().enumerate() {
            for i in 0..n {
                system[(i, j)] = g[i].clone();
            }
        }
        for (i, di) in d.iter().enumerate() {
            system[(i, k + i)] = di.clone();
        }
        let relation_cols: Vec<Vec<BigInt>> = kernel_basis(&system).into_iter().map(|c| c[..k].to_vec()).collect();
        let structure = FGAbelianGroup::new(IntMatrix::from_columns(k, &relation_cols));
        FixedSubgroup { generators: lifts, structure }
    }

    /// `|Z^n / (im(M - I) + L)|`.
    pub fn reidemeister_number(&self) -> Count {
        FGAbelianGroup::new(self.minus_identity().hstack(self.group.relations())).order()
    }
}

/// The fixed subgroup of an [`AbelianAuto`].
#[derive(Debug, Clone)]
pub struct FixedSubgroup {
    /// Lifts to `Z^n` of a generating set.
    pub generators: Vec<Vec<BigInt>>,
    /// Abstract structure of the subgroup.
    pub structure: FGAbelianGroup,
}

impl FixedSubgroup {
    pub fn order(&self) -> Count {
        self.structure.order()
    }

    pub fn free_rank(&self) -> usize {
        self.structure.free_rank()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.structure.torsion()
    }

    /// All elements as canonical coordinates in the ambient group, when the
    /// subgroup is finite with at most `limit` elements.
    pub fn elements(&self, ambient: &FGAbelianGroup, limit: usize) -> Option<Vec<Vec<BigInt>>> {
        if self.order().is_infinite() {
            return None;
        }
        let n = ambient.generators();
        let zero = vec![BigInt::zero(); n];
        let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
        let mut queue: VecDeque<Vec<BigInt>> = VecDeque::new();
        seen.insert(ambient.normalize(&zero));
        queue.push_back(zero);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y: Vec<BigInt> = x.iter().zip(g).map(|(a, b)| a + b).collect();
                let key = ambient.normalize(&y);
                if seen.insert(key) {
                    if seen.len() > limit {
                        return None;
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<Vec<BigInt>> = seen.into_iter().collect();
        out.sort();
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> IntMatrix {
        s.parse().unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn structures() {
        let g = FGAbelianGroup::new(m("[[2,3],[0,0],[0,0]]"));
        assert_eq!(g.structure(), "Z^2");
        let g = FGAbelianGroup::new(m("[[2,2],[0,0],[0,0]]"));
        assert_eq!(g.structure(), "Z/2 + Z^2");
        assert_eq!(FGAbelianGroup::from_moduli(&big(&[4, 6])).structure(), "Z/2 + Z/12");
    }

    #[test]
    fn identity_on_z2() {
        let a = AbelianAuto::new(FGAbelianGroup::free(2), IntMatrix::identity(2)).unwrap();
        assert_eq!(a.fix_subgroup().free_rank(), 2);
        assert!(a.reidemeister_number().is_infinite());
    }

    #[test]
    fn negation_on_z2() {
        let a = AbelianAuto::new(FGAbelianGroup::free(2), m("[[-1,0],[0,-1]]")).unwrap();
        assert_eq!(a.fix_subgroup().order(), Count::Finite(BigInt::one()));
        assert_eq!(a.reidemeister_number(), Count::Finite(BigInt::from(4)));
    }

    #[test]
    fn negation_with_torsion() {
        let g = FGAbelianGroup::new(m("[[2,2],[0,0],[0,0]]"));
        let a = AbelianAuto::new(g.clone(), m("[[-1,0,0],[0,-1,0],[0,0,-1]]")).unwrap();
        let fix = a.fix_subgroup();
        assert_eq!(fix.order(), Count::Finite(BigInt::from(2)));
        let elems = fix.elements(&g, 10).unwrap();
        assert_eq!(elems.len(), 2);
        assert!(elems.contains(&g.normalize(&big(&[1, 0, 0]))));
        assert_eq!(a.reidemeister_number(), Count::Finite(BigInt::from(8)));
    }

    #[test]
    fn rejects_bad_maps() {
        let g = FGAbelianGroup::from_moduli(&big(&[2, 4]));
        assert_eq!(AbelianAuto::new(g.clone(), m("[[1,0],[1,1]]")).unwrap_err(), AbelianError::DoesNotDescend);
        assert_eq!(AbelianAuto::new(g, m("[[1,0],[0,2]]")).unwrap_err(), AbelianError::NotInvertible);
        assert!(matches!(
            AbelianAuto::new(FGAbelianGroup::free(2), IntMatrix::identity(3)),
            Err(AbelianError::Shape { .. })
        ));
    }
}
