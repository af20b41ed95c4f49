//! Dense GF(2) matrices with bit-packed rows.

use std::fmt;

use super::Gf2Error;

/// A rows x cols matrix over GF(2). Each row is packed into `words_per_row`
/// 64-bit words; padding bits past `cols` are kept zero so derived equality
/// is structural.
#[derive(Clone, PartialEq, Eq)]
pub struct BinMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BinMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64).max(1);
        BinMatrix {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds from row-major 0/1 entries. All rows must have equal length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, Gf2Error> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Gf2Error::RaggedRows {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, &e) in row.iter().enumerate() {
                match e {
                    0 => {}
                    1 => m.set(i, j, true),
                    other => return Err(Gf2Error::BadEntry(other)),
                }
            }
        }
        Ok(m)
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.bits[r * self.words_per_row + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.bits[r * self.words_per_row + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    fn xor_row_into(&mut self, dst: usize, src_row: &[u64]) {
        let base = dst * self.words_per_row;
        for (k, &w) in src_row.iter().enumerate() {
            self.bits[base + k] ^= w;
        }
    }

    /// The packed bits of one row; only valid for matrices with up to 64 columns.
    pub fn row_mask(&self, r: usize) -> u64 {
        assert!(self.cols <= 64, "row_mask requires cols <= 64");
        self.bits[r * self.words_per_row]
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn mul(&self, rhs: &BinMatrix) -> Result<BinMatrix, Gf2Error> {
        if self.cols != rhs.rows {
            return Err(Gf2Error::DimensionMismatch {
                op: "matrix multiply",
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", rhs.rows, rhs.cols),
            });
        }
        let mut out = BinMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let src = rhs.row(k).to_vec();
                    out.xor_row_into(i, &src);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &BinMatrix) -> Result<BinMatrix, Gf2Error> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Gf2Error::DimensionMismatch {
                op: "matrix add",
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", rhs.rows, rhs.cols),
            });
        }
        let mut out = self.clone();
        for (w, &r) in out.bits.iter_mut().zip(rhs.bits.iter()) {
            *w ^= r;
        }
        Ok(out)
    }

    pub fn transpose(&self) -> BinMatrix {
        let mut out = BinMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    out.set(j, i, true);
                }
            }
        }
        out
    }

    /// Row rank by Gaussian elimination on packed rows.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| m.get(r, col)) else {
                continue;
            };
            if pivot != rank {
                for k in 0..m.words_per_row {
                    m.bits.swap(pivot * m.words_per_row + k, rank * m.words_per_row + k);
                }
            }
            let pivot_row = m.row(rank).to_vec();
            for r in 0..m.rows {
                if r != rank && m.get(r, col) {
                    m.xor_row_into(r, &pivot_row);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Inverse by Gauss-Jordan on the augmented system; the matrix must be
    /// square and full rank.
    pub fn inverse(&self) -> Result<BinMatrix, Gf2Error> {
        if self.rows != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                op: "matrix inverse",
                left: format!("{}x{}", self.rows, self.cols),
                right: "square".into(),
            });
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = BinMatrix::identity(n);
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| work.get(r, col)) else {
                return Err(Gf2Error::Singular);
            };
            if pivot != col {
                for k in 0..work.words_per_row {
                    work.bits.swap(pivot * work.words_per_row + k, col * work.words_per_row + k);
                    inv.bits.swap(pivot * inv.words_per_row + k, col * inv.words_per_row + k);
                }
            }
            let wrow = work.row(col).to_vec();
            let irow = inv.row(col).to_vec();
            for r in 0..n {
                if r != col && work.get(r, col) {
                    work.xor_row_into(r, &wrow);
                    inv.xor_row_into(r, &irow);
                }
            }
        }
        Ok(inv)
    }

    /// Left vector-matrix product `w * self` for a 0/1 vector of length `rows`.
    pub fn mul_vec_left(&self, w: &[u8]) -> Result<Vec<u8>, Gf2Error> {
        if w.len() != self.rows {
            return Err(Gf2Error::DimensionMismatch {
                op: "vector-matrix multiply",
                left: format!("1x{}", w.len()),
                right: format!("{}x{}", self.rows, self.cols),
            });
        }
        let mut acc = vec![0u64; self.words_per_row];
        for (e, &we) in w.iter().enumerate() {
            match we {
                0 => {}
                1 => {
                    for (k, &word) in self.row(e).iter().enumerate() {
                        acc[k] ^= word;
                    }
                }
                other => return Err(Gf2Error::BadEntry(other)),
            }
        }
        Ok((0..self.cols).map(|j| (acc[j / 64] >> (j % 64) & 1) as u8).collect())
    }
}

impl fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_rows() {
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}
