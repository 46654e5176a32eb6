use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::IntPoly;
use crate::error::SpectralError;

/// Monic integer characteristic polynomial `det(xI - M)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CharPoly {
    poly: IntPoly,
}

impl CharPoly {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("monic")
    }

    pub fn into_poly(self) -> IntPoly {
        self.poly
    }
}

impl AsRef<IntPoly> for CharPoly {
    fn as_ref(&self) -> &IntPoly {
        &self.poly
    }
}

impl AsRef<IntPoly> for IntPoly {
    fn as_ref(&self) -> &IntPoly {
        self
    }
}

impl std::fmt::Display for CharPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.poly.fmt(f)
    }
}

/// Faddeev–LeVerrier recursion over the integers. All divisions are exact.
pub fn char_poly(m: &[Vec<i64>]) -> Result<CharPoly, SpectralError> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(SpectralError::NotSquare);
    }
    let a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // mk = A * M_{k-1} + c_{n-k+1} I, starting from M_0 = 0
    let mut mk = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        let mut next = mat_mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = mat_mul(&a, &mk);
        let trace: BigInt = (0..n).map(|i| &am[i][i]).sum();
        coeffs[n - k] = -trace / BigInt::from(k);
    }
    Ok(CharPoly {
        poly: IntPoly::new(coeffs),
    })
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for (l, ail) in a[i].iter().enumerate() {
            if ail.is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[l][j].is_zero() {
                    out[i][j] += ail * &b[l][j];
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle};

    #[test]
    fn small_matrices() {
        assert_eq!(
            char_poly(&[vec![0, 1], vec![1, 0]]).unwrap().poly(),
            &IntPoly::from_i64(&[-1, 0, 1])
        );
        let h72 = vec![vec![0, 1, 0], vec![1, 0, 5], vec![0, 1, 4]];
        assert_eq!(char_poly(&h72).unwrap().poly(), &IntPoly::from_i64(&[4, -6, -4, 1]));
        let lf = vec![vec![1, 2, 3], vec![2, 0, 0], vec![2, 0, 2]];
        assert_eq!(char_poly(&lf).unwrap().poly(), &IntPoly::from_i64(&[8, -8, -3, 1]));
        assert_eq!(char_poly(&[]).unwrap().poly(), &IntPoly::from_i64(&[1]));
        assert_eq!(char_poly(&[vec![1, 2]]), Err(SpectralError::NotSquare));
    }

    #[test]
    fn graph_spectra() {
        // K_4: (x-3)(x+1)^3 = x^4 - 6x^2 - 8x - 3
        let p = char_poly(&complete(4).adjacency_matrix()).unwrap();
        assert_eq!(p.poly(), &IntPoly::from_i64(&[-3, -8, -6, 0, 1]));
        assert_eq!(p.degree(), 4);
        // C_4: x^2 (x-2)(x+2) = x^4 - 4x^2
        let p = char_poly(&cycle(4).adjacency_matrix()).unwrap();
        assert_eq!(p.poly(), &IntPoly::from_i64(&[0, 0, -4, 0, 1]));
    }
}
