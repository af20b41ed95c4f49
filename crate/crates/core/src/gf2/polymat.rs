//! Matrices with polynomial entries over GF(2).

use std::fmt;

use super::{BinMatrix, BinPoly, Gf2Error};

/// A rectangular matrix over GF(2)[z].
#[derive(Clone, PartialEq, Eq)]
pub struct BinPolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BinPoly>,
}

impl BinPolyMatrix {
    pub fn from_rows(rows: Vec<Vec<BinPoly>>) -> Result<Self, Gf2Error> {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        for row in &rows {
            if row.len() != cols {
                return Err(Gf2Error::RaggedRows {
                    expected: cols,
                    found: row.len(),
                });
            }
        }
        Ok(BinPolyMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BinPoly {
        &self.entries[r * self.cols + c]
    }

    /// Maximum entry degree in row `r`; -1 if the row is zero.
    pub fn row_degree(&self, r: usize) -> isize {
        (0..self.cols).map(|c| self.get(r, c).degree()).max().unwrap_or(-1)
    }

    /// Right-multiplies by a constant GF(2) matrix, coefficient-wise.
    pub fn mul_matrix(&self, m: &BinMatrix) -> Result<BinPolyMatrix, Gf2Error> {
        if self.cols != m.rows() {
            return Err(Gf2Error::DimensionMismatch {
                op: "polynomial matrix by constant matrix",
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", m.rows(), m.cols()),
            });
        }
        let mut out = Vec::with_capacity(self.rows * m.cols());
        for i in 0..self.rows {
            for j in 0..m.cols() {
                let mut acc = BinPoly::zero();
                for k in 0..self.cols {
                    if m.get(k, j) {
                        acc += self.get(i, k);
                    }
                }
                out.push(acc);
            }
        }
        Ok(BinPolyMatrix {
            rows: self.rows,
            cols: m.cols(),
            entries: out,
        })
    }

    /// Rank over the rational function field GF(2)(z), by elimination with
    /// cross-multiplied rows (no fractions ever materialize).
    pub fn rank_rational(&self) -> usize {
        let mut m: Vec<Vec<BinPoly>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).clone()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            let pivot_row = m[rank].clone();
            for row in m.iter_mut().skip(rank + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let a = pivot_row[col].clone();
                let b = row[col].clone();
                for (dst, piv) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *dst = dst.mul(&a).add(&piv.mul(&b));
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// The matrix of each row's `z^(row degree)` coefficients. A zero row
    /// contributes a zero row.
    pub fn leading_coefficient_matrix(&self) -> BinMatrix {
        let mut m = BinMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            let d = self.row_degree(r);
            if d < 0 {
                continue;
            }
            for c in 0..self.cols {
                if self.get(r, c).coeff(d as usize) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Determinant of a square polynomial matrix. In characteristic 2 the
    /// determinant equals the permanent, so a subset DP over columns avoids
    /// sign bookkeeping.
    pub fn det(&self) -> Result<BinPoly, Gf2Error> {
        if self.rows != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                op: "determinant",
                left: format!("{}x{}", self.rows, self.cols),
                right: "square".into(),
            });
        }
        let n = self.rows;
        let mut dp = vec![BinPoly::zero(); 1 << n];
        dp[0] = BinPoly::one();
        for mask in 1u32..(1 << n) {
            let row = mask.count_ones() as usize - 1;
            let mut acc = BinPoly::zero();
            let mut rest = mask;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let e = self.get(row, j);
                if !e.is_zero() {
                    acc += &e.mul(&dp[(mask & !(1 << j)) as usize]);
                }
            }
            dp[mask as usize] = acc;
        }
        Ok(dp[(1usize << n) - 1].clone())
    }

    /// GCD of all maximal (rows x rows) minors; requires rows <= cols.
    /// A full-rank polynomial matrix has a polynomial right inverse exactly
    /// when this gcd is 1.
    pub fn full_minors_gcd(&self) -> Result<BinPoly, Gf2Error> {
        if self.rows > self.cols {
            return Err(Gf2Error::DimensionMismatch {
                op: "maximal minors",
                left: format!("{}x{}", self.rows, self.cols),
                right: "rows <= cols".into(),
            });
        }
        let mut gcd = BinPoly::zero();
        let mut combo: Vec<usize> = (0..self.rows).collect();
        loop {
            let square = BinPolyMatrix::from_rows(
                (0..self.rows)
                    .map(|r| combo.iter().map(|&c| self.get(r, c).clone()).collect())
                    .collect(),
            )?;
            gcd = BinPoly::gcd(&gcd, &square.det()?);
            if gcd == BinPoly::one() {
                break;
            }
            // next k-combination of columns
            let k = self.rows;
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(gcd);
                }
                i -= 1;
                if combo[i] != i + self.cols - k {
                    break;
                }
            }
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
        }
        Ok(gcd)
    }
}

impl fmt::Debug for BinPolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinPolyMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[u8]) -> BinPoly {
        BinPoly::from_coeffs(coeffs).unwrap()
    }

    fn pm(rows: Vec<Vec<&[u8]>>) -> BinPolyMatrix {
        BinPolyMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(poly).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn compose_reproduces_butterfly_output_codes() {
        // [1+z+z^2, 1+z^2] times the two sink transfer matrices
        let g = pm(vec![vec![&[1, 1, 1], &[1, 0, 1]]]);
        let m1 = BinMatrix::from_rows(&[[1u8, 1], [0, 1]]).unwrap();
        let m2 = BinMatrix::from_rows(&[[1u8, 0], [1, 1]]).unwrap();
        assert_eq!(g.mul_matrix(&m1).unwrap(), pm(vec![vec![&[1, 1, 1], &[0, 1]]]));
        assert_eq!(g.mul_matrix(&m2).unwrap(), pm(vec![vec![&[0, 1], &[1, 0, 1]]]));
        assert_eq!(g.mul_matrix(&BinMatrix::identity(2)).unwrap(), g);
    }

    #[test]
    fn rational_rank() {
        assert_eq!(pm(vec![vec![&[1, 1, 1], &[1, 0, 1]]]).rank_rational(), 1);
        // second row is z times the first: rank 1
        let dependent = pm(vec![vec![&[1, 1], &[1]], vec![&[0, 1, 1], &[0, 1]]]);
        assert_eq!(dependent.rank_rational(), 1);
        let full = pm(vec![vec![&[1], &[0, 1]], vec![&[0, 1], &[1]]]);
        assert_eq!(full.rank_rational(), 2);
    }

    #[test]
    fn leading_coefficients() {
        let g = pm(vec![vec![&[1, 1, 1], &[1, 0, 1]]]);
        assert_eq!(
            g.leading_coefficient_matrix(),
            BinMatrix::from_rows(&[[1u8, 1]]).unwrap()
        );
        let h = pm(vec![vec![&[1, 1], &[1]]]);
        assert_eq!(
            h.leading_coefficient_matrix(),
            BinMatrix::from_rows(&[[1u8, 0]]).unwrap()
        );
    }

    #[test]
    fn determinant_and_minors() {
        let full = pm(vec![vec![&[1], &[0, 1]], vec![&[0, 1], &[1]]]);
        // det = 1 + z^2
        assert_eq!(full.det().unwrap(), poly(&[1, 0, 1]));
        // coprime entries: right-invertible
        assert_eq!(
            pm(vec![vec![&[1, 1, 1], &[1, 0, 1]]]).full_minors_gcd().unwrap(),
            BinPoly::one()
        );
        // common factor 1+z: not right-invertible
        assert_eq!(
            pm(vec![vec![&[1, 1], &[1, 1]]]).full_minors_gcd().unwrap(),
            poly(&[1, 1])
        );
    }
}
