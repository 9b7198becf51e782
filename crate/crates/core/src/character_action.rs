//! How an automorphism acts on a finite set of discrete characters, and the
//! fixed vectors this forces in the abelian quotient.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::abelian::{content, kernel_basis, IntMatrix};
use crate::braided::BraidedDiagram;
use crate::lodha_moore::{Address, Generator, LMWord, Variant};
use crate::report::display;
use crate::thompson::TreePair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("character {0} is zero")]
    ZeroCharacter(usize),
    #[error("character {index} has length {len}, expected {expected}")]
    Length { index: usize, len: usize, expected: usize },
    #[error("expected a square matrix of size {expected}, got {rows}x{cols}")]
    Shape { rows: usize, cols: usize, expected: usize },
    #[error("matrix has determinant {0}, expected ±1")]
    NotUnimodular(BigInt),
    #[error("character {0} is not sent to a positive multiple of a listed character")]
    NotInvariant(usize),
    #[error("sum of characters is not preserved")]
    SumNotPreserved,
    #[error("matrix has no nonzero fixed vector")]
    NoFixedVector,
}

/// Discrete characters given by their values on a fixed generating set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterData {
    #[serde(serialize_with = "rows_as_strings")]
    pub characters: Vec<Vec<BigInt>>,
    pub labels: Vec<String>,
}

fn rows_as_strings<S: serde::Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        seq.serialize_element(&r.iter().map(ToString::to_string).collect::<Vec<_>>())?;
    }
    seq.end()
}

impl CharacterData {
    pub fn new(characters: Vec<Vec<BigInt>>, labels: Vec<String>) -> Result<Self, CharacterError> {
        let expected = characters.first().map_or(0, Vec::len);
        for (i, c) in characters.iter().enumerate() {
            if c.len() != expected {
                return Err(CharacterError::Length { index: i, len: c.len(), expected });
            }
            if c.iter().all(Zero::is_zero) {
                return Err(CharacterError::ZeroCharacter(i));
            }
        }
        Ok(CharacterData { characters, labels })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, CharacterError> {
        let characters: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let labels = (0..characters.len()).map(|i| format!("c{i}")).collect();
        Self::new(characters, labels)
    }

    pub fn rank(&self) -> usize {
        self.characters.first().map_or(0, Vec::len)
    }

    pub fn as_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.characters)
    }
}

/// The positive ray representative: divide by the (positive) gcd.
/// Signs are kept, since `χ` and `-χ` are different points of the sphere.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = content(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x.div_floor(&g)).collect()
}

/// Witness that an automorphism of `Z^n` fixes an element of infinite order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedVectorCertificate {
    /// `permutation[i] = j` when `χ_i ∘ M = χ_j`.
    pub permutation: Vec<usize>,
    #[serde(serialize_with = "vec_as_strings")]
    pub invariant_sum: Vec<BigInt>,
    #[serde(serialize_with = "vec_as_strings")]
    pub fixed_vector: Vec<BigInt>,
    #[serde(serialize_with = "display")]
    pub sum_on_fixed_vector: BigInt,
}

fn vec_as_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// Checks that `m` (acting on coordinates, characters as row vectors)
/// permutes the character rays, forms `f = Σ χ_i`, checks `f·M = f`, and
/// returns a nonzero `v` with `M·v = v`, preferring one with `f(v) ≠ 0`.
pub fn fixed_vector_from_characters(chars: &CharacterData, m: &IntMatrix) -> Result<FixedVectorCertificate, CharacterError> {
    let n = chars.rank();
    if m.rows() != n || m.cols() != n {
        return Err(CharacterError::Shape { rows: m.rows(), cols: m.cols(), expected: n });
    }
    let det = m.det();
    if !det.abs().is_one() {
        return Err(CharacterError::NotUnimodular(det));
    }
    let reps: Vec<Vec<BigInt>> = chars.characters.iter().map(|c| primitive(c)).collect();
    let mut permutation = Vec::with_capacity(reps.len());
    for (i, c) in reps.iter().enumerate() {
        let image = primitive(&m.vec_mul(c));
        let j = reps.iter().position(|r| *r == image).ok_or(CharacterError::NotInvariant(i))?;
        permutation.push(j);
    }
    let mut sorted = permutation.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != permutation.len() {
        return Err(CharacterError::NotInvariant(0));
    }

    let f: Vec<BigInt> = (0..n).map(|k| reps.iter().map(|r| r[k].clone()).sum()).collect();
    if m.vec_mul(&f) != f {
        return Err(CharacterError::SumNotPreserved);
    }
    let fixed = kernel_basis(&(m - &IntMatrix::identity(n)));
    let eval = |v: &[BigInt]| -> BigInt { f.iter().zip(v).map(|(a, b)| a * b).sum() };
    let v = fixed
        .iter()
        .find(|v| !eval(v).is_zero())
        .or_else(|| fixed.first())
        .cloned()
        .ok_or(CharacterError::NoFixedVector)?;
    Ok(FixedVectorCertificate { permutation, sum_on_fixed_vector: eval(&v), invariant_sum: f, fixed_vector: v })
}

/// Whether a 2×2 unimodular matrix has eigenvalue 1, via `det(M - I) = 0`.
pub fn has_eigenvalue_one(m: &IntMatrix) -> Result<bool, CharacterError> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(CharacterError::Shape { rows: m.rows(), cols: m.cols(), expected: 2 });
    }
    let det = m.det();
    if !det.abs().is_one() {
        return Err(CharacterError::NotUnimodular(det));
    }
    Ok((m - &IntMatrix::identity(2)).det().is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Independence {
    #[serde(serialize_with = "display")]
    pub determinant: BigInt,
    pub independent: bool,
}

/// Determinant of the characters-by-generators value matrix.
pub fn character_independence(values: &IntMatrix) -> Result<Independence, CharacterError> {
    if !values.is_square() {
        return Err(CharacterError::Shape { rows: values.rows(), cols: values.cols(), expected: values.rows() });
    }
    let determinant = values.det();
    Ok(Independence { independent: !determinant.is_zero(), determinant })
}

/// One column of the table of groups and their two exceptional characters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThompsonLikeCase {
    pub index: usize,
    pub group: String,
    pub generators: [String; 2],
    pub characters: CharacterData,
}

/// Character values of each group's two distinguished characters on its
/// two quotient generators, computed from the diagram and transducer models.
pub fn thompson_like_cases() -> Vec<ThompsonLikeCase> {
    let mut out = Vec::new();

    let x0 = BraidedDiagram::from_tree_pair(&TreePair::x0()).characters();
    let x1 = BraidedDiagram::from_tree_pair(&TreePair::x1()).characters();
    let rows = vec![vec![BigInt::from(x0.0), BigInt::from(x1.0)], vec![BigInt::from(x0.1), BigInt::from(x1.1)]];
    out.push(ThompsonLikeCase {
        index: 0,
        group: "F_br".into(),
        generators: ["x0".into(), "x1".into()],
        characters: CharacterData::new(rows, vec!["phi0".into(), "phi1".into()]).expect("nonzero"),
    });

    for (index, variant) in Variant::ALL.into_iter().enumerate() {
        let first = if variant.allows_y(&Address::constant(0, 1)) { Generator::y(Address::constant(0, 1)) } else { Generator::x(Address::constant(0, 1)) };
        let second = if variant.allows_y(&Address::constant(1, 1)) { Generator::y(Address::constant(1, 1)) } else { Generator::x(Address::constant(1, 1)) };
        let gens = [first, second];
        let words: Vec<LMWord> = gens.iter().map(|g| LMWord::new(vec![g.clone()], variant).expect("legal generator")).collect();
        let basis = variant.quotient_basis();
        let rows: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|&(sign, c)| words.iter().map(|w| BigInt::from(sign * w.character(c).expect("defined on variant"))).collect())
            .collect();
        let labels = basis.iter().map(|&(sign, c)| if sign < 0 { format!("-{c}") } else { c.to_string() }).collect();
        out.push(ThompsonLikeCase {
            index: index + 1,
            group: variant.to_string(),
            generators: [gens[0].to_string(), gens[1].to_string()],
            characters: CharacterData::new(rows, labels).expect("nonzero"),
        });
    }
    out
}

/// The coordinate action `C⁻¹·P·C` realising a permutation `P` of the
/// characters (rows of `C`), for unimodular `C`.
pub fn action_permuting(chars: &CharacterData, swap: bool) -> Result<IntMatrix, CharacterError> {
    let c = chars.as_matrix();
    if c.rows() != 2 || c.cols() != 2 {
        return Err(CharacterError::Shape { rows: c.rows(), cols: c.cols(), expected: 2 });
    }
    let det = c.det();
    if !det.abs().is_one() {
        return Err(CharacterError::NotUnimodular(det));
    }
    // For det = ±1 the inverse is det · adj(C).
    let inv = IntMatrix::from_rows(&[
        vec![&det * &c[(1, 1)], -&det * &c[(0, 1)]],
        vec![-&det * &c[(1, 0)], &det * &c[(0, 0)]],
    ]);
    let p = if swap { IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]) } else { IntMatrix::identity(2) };
    Ok(&(&inv * &p) * &c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> IntMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn identity_action() {
        let chars = CharacterData::from_i64(&[&[-1, 0], &[0, 1]]).unwrap();
        let cert = fixed_vector_from_characters(&chars, &IntMatrix::identity(2)).unwrap();
        assert_eq!(cert.permutation, vec![0, 1]);
        assert!(cert.fixed_vector.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn swap_action() {
        let chars = CharacterData::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        let cert = fixed_vector_from_characters(&chars, &m("[[0,1],[1,0]]")).unwrap();
        assert_eq!(cert.permutation, vec![1, 0]);
        let v = &cert.fixed_vector;
        assert_eq!(v[0], v[1]);
        assert!(!v[0].is_zero());
    }

    #[test]
    fn negation_breaks_invariance() {
        let chars = CharacterData::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(fixed_vector_from_characters(&chars, &m("[[-1,0],[0,-1]]")), Err(CharacterError::NotInvariant(0)));
    }

    #[test]
    fn eigenvalue_one() {
        assert!(has_eigenvalue_one(&IntMatrix::identity(2)).unwrap());
        assert!(has_eigenvalue_one(&m("[[1,1],[0,1]]")).unwrap());
        assert!(!has_eigenvalue_one(&m("[[0,-1],[1,0]]")).unwrap());
        assert!(has_eigenvalue_one(&m("[[2,0],[0,1]]")).is_err());
    }

    #[test]
    fn independence() {
        let r = character_independence(&m("[[-1,0],[0,1]]")).unwrap();
        assert_eq!(r.determinant, BigInt::from(-1));
        assert!(!character_independence(&m("[[1,2],[1,2]]")).unwrap().independent);
    }

    #[test]
    fn table_values() {
        let cases = thompson_like_cases();
        assert_eq!(cases.len(), 5);
        assert_eq!(cases[0].characters.as_matrix(), m("[[-1,0],[1,1]]"));
        assert_eq!(cases[1].characters.as_matrix(), m("[[-1,0],[0,1]]"));
        assert_eq!(cases[2].characters.as_matrix(), m("[[1,0],[0,1]]"));
        assert_eq!(cases[3].characters.as_matrix(), m("[[-1,0],[0,-1]]"));
        assert_eq!(cases[4].characters.as_matrix(), m("[[1,0],[0,-1]]"));
    }

    #[test]
    fn swap_on_braided_characters() {
        let case = &thompson_like_cases()[0];
        let a = action_permuting(&case.characters, true).unwrap();
        let cert = fixed_vector_from_characters(&case.characters, &a).unwrap();
        assert_eq!(cert.permutation, vec![1, 0]);
    }
}
