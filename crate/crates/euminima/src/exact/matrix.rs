//! Symmetric rational matrices and fraction-free (Bareiss) determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::{Error, Result};

/// Dense symmetric matrix with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl SymMatrix {
    /// Zero matrix of the given dimension.
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    /// Build from full rows; rejects non-square or asymmetric input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSymmetric);
        }
        let mut m = SymMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.data[i * n + j] = v.clone();
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if m.data[i * n + j] != m.data[j * n + i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(m)
    }

    /// Build from integer rows (test and constructor convenience).
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        SymMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| super::rat_int(v)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    /// Set the (i, j) and (j, i) entries.
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.n + j] = v.clone();
        self.data[j * self.n + i] = v;
    }

    /// Entrywise scaling.
    pub fn scaled(&self, c: &Rational) -> SymMatrix {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    /// Block-diagonal sum of the given matrices.
    pub fn block_diag(parts: &[&SymMatrix]) -> SymMatrix {
        let n: usize = parts.iter().map(|p| p.n).sum();
        let mut m = SymMatrix::zeros(n);
        let mut off = 0;
        for p in parts {
            for i in 0..p.n {
                for j in 0..p.n {
                    m.data[(off + i) * n + (off + j)] = p.data[i * p.n + j].clone();
                }
            }
            off += p.n;
        }
        m
    }

    /// Matrix with rows and columns listed in reverse order (congruent to
    /// self by a permutation, so all lattice invariants agree).
    pub(crate) fn reversed(&self) -> SymMatrix {
        let n = self.n;
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = self.data[(n - 1 - i) * n + (n - 1 - j)].clone();
            }
        }
        m
    }

    /// Common-denominator integer form: returns (N, L) with self = N / L.
    fn cleared(&self) -> (Vec<BigInt>, BigInt) {
        let mut lcm = BigInt::one();
        for v in &self.data {
            lcm = num_integer::lcm(lcm, v.denom().clone());
        }
        let ints = self
            .data
            .iter()
            .map(|v| v.numer() * (&lcm / v.denom()))
            .collect();
        (ints, lcm)
    }
}

/// Exact determinant by fraction-free elimination with row pivoting.
///
/// Denominators are cleared up front so every intermediate value is an
/// integer; divisions in the Bareiss recurrence are exact.
pub fn bareiss_det(m: &SymMatrix) -> Rational {
    let n = m.dim();
    if n == 0 {
        return Rational::one();
    }
    let (mut a, lcm) = m.cleared();
    let mut sign = 1i64;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k * n + k].is_zero() {
            let Some(piv) = ((k + 1)..n).find(|&i| !a[i * n + k].is_zero()) else {
                return Rational::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, piv * n + j);
            }
            sign = -sign;
        }
        let pivot = a[k * n + k].clone();
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = &pivot * &a[i * n + j] - &a[i * n + k] * &a[k * n + j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "fraction-free division must be exact");
                a[i * n + j] = q;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = pivot;
    }
    let det_int = &a[(n - 1) * n + (n - 1)] * BigInt::from(sign);
    Rational::new(det_int, lcm.pow(n as u32))
}

/// Positive-definiteness check by exact leading principal minors.
///
/// Returns the determinant on success; the failing minor index otherwise.
/// No pivoting is performed: a zero pivot means a vanishing leading minor,
/// which already disqualifies the matrix.
pub(crate) fn posdef_det(m: &SymMatrix) -> Result<Rational> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let (mut a, lcm) = m.cleared();
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = a[k * n + k].clone();
        // minor_k of the original matrix is pivot / lcm^(k+1); same sign as pivot
        if !pivot.is_positive() {
            return Err(Error::NotPositiveDefinite { index: k + 1 });
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = &pivot * &a[i * n + j] - &a[i * n + k] * &a[k * n + j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "fraction-free division must be exact");
                a[i * n + j] = q;
            }
        }
        prev = pivot;
    }
    Ok(Rational::new(prev, lcm.pow(n as u32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn ident(n: usize) -> SymMatrix {
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, rat_int(1));
        }
        m
    }

    /// Cofactor-expansion determinant, the independent oracle for Bareiss.
    pub(crate) fn cofactor_det(m: &SymMatrix) -> Rational {
        fn det_rows(rows: &[Vec<Rational>]) -> Rational {
            let n = rows.len();
            if n == 0 {
                return Rational::one();
            }
            if n == 1 {
                return rows[0][0].clone();
            }
            let mut acc = Rational::zero();
            for j in 0..n {
                if rows[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Rational>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &rows[0][j] * det_rows(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        let n = m.dim();
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
            .collect();
        det_rows(&rows)
    }

    #[test]
    fn identity_det() {
        assert_eq!(bareiss_det(&ident(3)), rat_int(1));
    }

    #[test]
    fn hand_checked_two_by_two() {
        let m = SymMatrix::from_int_rows(&[&[2, -1], &[-1, 2]]).unwrap();
        assert_eq!(bareiss_det(&m), rat_int(3));
    }

    #[test]
    fn b_i_minus_j_det() {
        // b = 3, m = 2: eigenvalues b - m and b give 3^1 * 1 = 3
        let m = SymMatrix::from_int_rows(&[&[2, -1], &[-1, 2]]).unwrap();
        assert_eq!(bareiss_det(&m), cofactor_det(&m));
        assert_eq!(bareiss_det(&m), rat_int(3));
    }

    #[test]
    fn zero_det_is_valid_output() {
        let m = SymMatrix::from_int_rows(&[&[1, 1], &[1, 1]]).unwrap();
        assert_eq!(bareiss_det(&m), rat_int(0));
    }

    #[test]
    fn rational_entries() {
        let m = SymMatrix::from_rows(vec![
            vec![rat(3, 2), rat_int(-1)],
            vec![rat_int(-1), rat(3, 2)],
        ])
        .unwrap();
        assert_eq!(bareiss_det(&m), rat(5, 4));
    }

    #[test]
    fn bareiss_matches_cofactor_on_random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for case in 0..100 {
            let n = 1 + case % 6;
            let mut m = SymMatrix::zeros(n);
            for i in 0..n {
                for j in i..n {
                    let num = rng.gen_range(-6i64..=6);
                    let den = rng.gen_range(1i64..=4);
                    m.set(i, j, rat(num, den));
                }
            }
            assert_eq!(bareiss_det(&m), cofactor_det(&m), "case {case}");
        }
    }

    #[test]
    fn posdef_check() {
        let good = SymMatrix::from_int_rows(&[&[2, -1], &[-1, 2]]).unwrap();
        assert_eq!(posdef_det(&good).unwrap(), rat_int(3));
        let bad = SymMatrix::from_int_rows(&[&[1, 2], &[2, 1]]).unwrap();
        assert!(matches!(
            posdef_det(&bad),
            Err(Error::NotPositiveDefinite { index: 2 })
        ));
        let zero_pivot = SymMatrix::from_int_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert!(posdef_det(&zero_pivot).is_err());
    }

    #[test]
    fn block_diag_and_reverse() {
        let a = SymMatrix::from_int_rows(&[&[2, -1], &[-1, 2]]).unwrap();
        let b = SymMatrix::from_int_rows(&[&[5]]).unwrap();
        let s = SymMatrix::block_diag(&[&a, &b]);
        assert_eq!(s.dim(), 3);
        assert_eq!(bareiss_det(&s), rat_int(15));
        let r = s.reversed();
        assert_eq!(r.get(0, 0), &rat_int(5));
        assert_eq!(bareiss_det(&r), rat_int(15));
    }
}
