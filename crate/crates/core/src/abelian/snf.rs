use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U·M·V = S` with `U`, `V` unimodular and
/// `S` diagonal with a nonnegative divisibility chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for k in 0..rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let Some((pi, pj)) = smallest_entry(&s, k) else { break };
        s.swap_rows(k, pi);
        u.swap_rows(k, pi);
        s.swap_cols(k, pj);
        v.swap_cols(k, pj);

        loop {
            let mut clean = true;
            for i in k + 1..rows {
                if s[(i, k)].is_zero() {
                    continue;
                }
                let q = -s[(i, k)].div_floor(&s[(k, k)]);
                s.add_row_multiple(i, k, &q);
                u.add_row_multiple(i, k, &q);
                if !s[(i, k)].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if s[(k, j)].is_zero() {
                    continue;
                }
                let q = -s[(k, j)].div_floor(&s[(k, k)]);
                s.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
                if !s[(k, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // Enforce divisibility: fold a non-multiple row into row k.
                let bad = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&s[(k, k)])));
                match bad {
                    None => break,
                    Some(i) => {
                        let one = BigInt::from(1);
                        s.add_row_multiple(k, i, &one);
                        u.add_row_multiple(k, i, &one);
                    }
                }
            }
            // Move a smaller remainder into the pivot position.
            let (bi, bj) = smallest_in_cross(&s, k);
            if (bi, bj) != (k, k) {
                s.swap_rows(k, bi);
                u.swap_rows(k, bi);
                s.swap_cols(k, bj);
                v.swap_cols(k, bj);
            }
        }
        if s[(k, k)].is_negative() {
            s.negate_row(k);
            u.negate_row(k);
        }
    }
    SmithForm { u, s, v }
}

fn smallest_entry(s: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in k..s.rows() {
        for j in k..s.cols() {
            let a = s[(i, j)].abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| &a < b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(p, _)| p)
}

/// Smallest nonzero entry among row k and column k (from position k on).
fn smallest_in_cross(s: &IntMatrix, k: usize) -> (usize, usize) {
    let mut best = ((k, k), s[(k, k)].abs());
    for i in k + 1..s.rows() {
        let a = s[(i, k)].abs();
        if !a.is_zero() && a < best.1 {
            best = ((i, k), a);
        }
    }
    for j in k + 1..s.cols() {
        let a = s[(k, j)].abs();
        if !a.is_zero() && a < best.1 {
            best = ((k, j), a);
        }
    }
    best.0
}

/// The inverse of a unimodular matrix: from `U·M·V = I`, `M⁻¹ = V·U`.
/// Returns `None` if `m` is not square with determinant ±1.
pub fn inverse_unimodular(m: &IntMatrix) -> Option<IntMatrix> {
    if !m.is_square() || !m.det().abs().is_one() {
        return None;
    }
    let f = smith_normal_form(m);
    Some(&f.v * &f.u)
}

/// A basis of the integer kernel `{x : M·x = 0}`, as columns.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    (r..m.cols()).map(|j| snf.v.column(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let f = smith_normal_form(m);
        assert_eq!(&(&f.u * m) * &f.v, f.s, "U·M·V != S for {m}");
        assert!(f.u.det().abs().is_one());
        assert!(f.v.det().abs().is_one());
        assert!(f.s.is_diagonal());
        let d = f.invariant_factors();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        f
    }

    #[test]
    fn identity() {
        let f = check(&IntMatrix::identity(3));
        assert_eq!(f.u, IntMatrix::identity(3));
        assert_eq!(f.v, IntMatrix::identity(3));
        assert_eq!(f.s, IntMatrix::identity(3));
    }

    #[test]
    fn known_forms() {
        let f = check(&"[[2,4,4],[-6,6,12],[10,-4,-16]]".parse().unwrap());
        assert_eq!(f.invariant_factors(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let f = check(&"[[2,0],[0,3]]".parse().unwrap());
        assert_eq!(f.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
        let f = check(&"[[0,0],[0,0]]".parse().unwrap());
        assert_eq!(f.rank(), 0);
    }

    #[test]
    fn random_shapes() {
        let mut rng = rand::thread_rng();
        for _ in 0..200 {
            let r = rand::Rng::gen_range(&mut rng, 1..6);
            let c = rand::Rng::gen_range(&mut rng, 1..6);
            check(&IntMatrix::random(&mut rng, r, c, 9));
        }
    }

    #[test]
    fn unimodular_inverse() {
        let m: IntMatrix = "[[2,1],[5,3]]".parse().unwrap();
        assert_eq!(&inverse_unimodular(&m).unwrap() * &m, IntMatrix::identity(2));
        assert!(inverse_unimodular(&"[[2,0],[0,1]]".parse().unwrap()).is_none());
    }

    #[test]
    fn kernel() {
        let m: IntMatrix = "[[1,2,3],[2,4,6]]".parse().unwrap();
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }
}
