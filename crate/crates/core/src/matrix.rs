use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::lattice::MukaiVector;

/// 3×3 integer matrix acting on `(r, d, a)` coordinates in the basis
/// `(1, c1(L), ω)`. Stored column-major: `cols[j]` is the image of the j-th
/// basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix3 {
    cols: [[BigInt; 3]; 3],
}

impl IntMatrix3 {
    pub fn from_columns(cols: [MukaiVector; 3]) -> Self {
        let [c0, c1, c2] = cols;
        IntMatrix3 {
            cols: [[c0.r, c0.d, c0.a], [c1.r, c1.d, c1.a], [c2.r, c2.d, c2.a]],
        }
    }

    pub fn identity() -> Self {
        Self::from_columns([
            MukaiVector::new(1, 0, 0),
            MukaiVector::new(0, 1, 0),
            MukaiVector::new(0, 0, 1),
        ])
    }

    pub fn column(&self, j: usize) -> MukaiVector {
        let [r, d, a] = self.cols[j].clone();
        MukaiVector { r, d, a }
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.cols[col][row]
    }

    pub fn apply(&self, v: &MukaiVector) -> MukaiVector {
        let x = [&v.r, &v.d, &v.a];
        let row = |i: usize| -> BigInt { (0..3).map(|j| &self.cols[j][i] * x[j]).sum() };
        MukaiVector {
            r: row(0),
            d: row(1),
            a: row(2),
        }
    }

    pub fn mul(&self, rhs: &IntMatrix3) -> IntMatrix3 {
        IntMatrix3::from_columns([
            self.apply(&rhs.column(0)),
            self.apply(&rhs.column(1)),
            self.apply(&rhs.column(2)),
        ])
    }

    pub fn determinant(&self) -> BigInt {
        let m = |i: usize, j: usize| self.entry(i, j);
        m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
            - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
    }

    /// Integral inverse, available exactly when the determinant is `±1`.
    pub fn inverse(&self) -> Option<IntMatrix3> {
        let det = self.determinant();
        if !det.abs().is_one() {
            return None;
        }
        let m = |i: usize, j: usize| self.entry(i, j);
        // adjugate: adj[i][j] = cofactor(j, i)
        let cof = |i: usize, j: usize| -> BigInt {
            let rows: Vec<usize> = (0..3).filter(|&x| x != i).collect();
            let cols: Vec<usize> = (0..3).filter(|&x| x != j).collect();
            let minor = m(rows[0], cols[0]) * m(rows[1], cols[1])
                - m(rows[0], cols[1]) * m(rows[1], cols[0]);
            if (i + j).is_multiple_of(2) {
                minor
            } else {
                -minor
            }
        };
        let mut cols: [[BigInt; 3]; 3] = Default::default();
        for (j, col) in cols.iter_mut().enumerate() {
            for (i, slot) in col.iter_mut().enumerate() {
                *slot = cof(j, i) * &det;
            }
        }
        Some(IntMatrix3 { cols })
    }

    pub fn is_identity(&self) -> bool {
        (0..3).all(|i| {
            (0..3).all(|j| {
                let e = self.entry(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// Rows as nested vectors, for display and serialization.
    pub fn rows(&self) -> [[BigInt; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.entry(i, j).clone()))
    }
}

impl fmt::Display for IntMatrix3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows();
        let parts: Vec<String> = rows
            .iter()
            .map(|r| format!("[{},{},{}]", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(r: i64, d: i64, a: i64) -> MukaiVector {
        MukaiVector::new(r, d, a)
    }

    // Leibniz formula over all six permutations, independent of the cofactor
    // expansion in `determinant`.
    fn leibniz(m: &IntMatrix3) -> BigInt {
        let perms = [
            ([0, 1, 2], 1),
            ([1, 2, 0], 1),
            ([2, 0, 1], 1),
            ([0, 2, 1], -1),
            ([2, 1, 0], -1),
            ([1, 0, 2], -1),
        ];
        perms
            .iter()
            .map(|(p, sgn)| {
                BigInt::from(*sgn) * m.entry(0, p[0]) * m.entry(1, p[1]) * m.entry(2, p[2])
            })
            .sum()
    }

    #[test]
    fn determinant_and_inverse() {
        let m = IntMatrix3::from_columns([v(3, 2, 8), v(-12, -7, -24), v(2, 1, 3)]);
        assert_eq!(m.determinant(), BigInt::one());
        assert_eq!(leibniz(&m), BigInt::one());
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        assert_eq!(m.apply(&v(1, 1, 3)), v(-3, -2, -7));
        assert_eq!(inv.apply(&v(-3, -2, -7)), v(1, 1, 3));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = IntMatrix3::from_columns([v(1, 2, 3), v(2, 4, 6), v(0, 0, 1)]);
        assert_eq!(m.determinant(), BigInt::zero());
        assert!(m.inverse().is_none());
        let m = IntMatrix3::from_columns([v(2, 0, 0), v(0, 1, 0), v(0, 0, 1)]);
        assert!(m.inverse().is_none());
    }

    #[test]
    fn negative_unit_determinant_inverts() {
        let m = IntMatrix3::from_columns([v(0, 1, 0), v(1, 0, 0), v(5, -3, 1)]);
        assert_eq!(m.determinant(), BigInt::from(-1));
        assert_eq!(leibniz(&m), BigInt::from(-1));
        assert!(m.mul(&m.inverse().unwrap()).is_identity());
    }

    #[test]
    fn display_rows() {
        assert_eq!(
            IntMatrix3::identity().to_string(),
            "[[1,0,0],[0,1,0],[0,0,1]]"
        );
    }
}
