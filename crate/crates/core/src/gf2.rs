//! Dense bit-packed linear algebra over GF(2).

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A bit vector over GF(2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Gf2Vector { len, words: vec![0; words_for(len)] }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Gf2Vector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len);
        let bit = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= bit;
        } else {
            self.words[i / WORD] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// A dense `rows x cols` matrix over GF(2), stored row-major with each row
/// packed into 64-bit words.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl std::fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Gf2Matrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries; all rows must share a length.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Gf2Matrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: row.len() });
            }
            for (c, &x) in row.iter().enumerate() {
                m.set(r, c, x & 1 == 1);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / WORD] >> (c % WORD) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / WORD];
        let bit = 1u64 << (c % WORD);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|w| *w == 0)
    }

    pub fn column(&self, c: usize) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(r).iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + b)
            })
        })
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: rhs.rows });
        }
        let mut out = Gf2Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in self.row_ones(r).collect::<Vec<_>>() {
                let src = k * rhs.stride;
                let dst = r * out.stride;
                for w in 0..out.stride {
                    out.data[dst + w] ^= rhs.data[src + w];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `M x`.
    pub fn mul_vec(&self, x: &Gf2Vector) -> Result<Gf2Vector> {
        if x.len != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: x.len });
        }
        let mut out = Gf2Vector::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self.row_words(r).iter().zip(&x.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>();
            if parity & 1 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Rank by Gaussian elimination on a private copy of the rows.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<u64>> = (0..self.rows).map(|r| self.row_words(r).to_vec()).collect();
        row_echelon(&mut rows, self.cols).len()
    }

    /// Whether `v` is a GF(2) combination of the columns of `self`.
    pub fn in_column_space(&self, v: &Gf2Vector) -> Result<bool> {
        if v.len != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: v.len });
        }
        if v.is_zero() {
            return Ok(true);
        }
        let t = self.transpose();
        let mut rows: Vec<Vec<u64>> = (0..t.rows).map(|r| t.row_words(r).to_vec()).collect();
        let pivots = row_echelon(&mut rows, t.cols);
        let mut residue = v.words.clone();
        for (row, &p) in rows.iter().zip(&pivots) {
            if residue[p / WORD] >> (p % WORD) & 1 == 1 {
                for (a, b) in residue.iter_mut().zip(row) {
                    *a ^= b;
                }
            }
        }
        Ok(residue.iter().all(|w| *w == 0))
    }
}

/// Reduces `rows` in place to row-echelon form, keeping only the nonzero rows,
/// and returns the pivot column of each kept row.
fn row_echelon(rows: &mut Vec<Vec<u64>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        let (w, bit) = (col / WORD, 1u64 << (col % WORD));
        let Some(found) = (next..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
            continue;
        };
        rows.swap(next, found);
        let (head, tail) = rows.split_at_mut(next + 1);
        let pivot = &head[next];
        for row in tail.iter_mut() {
            if row[w] & bit != 0 {
                for (a, b) in row[w..].iter_mut().zip(&pivot[w..]) {
                    *a ^= b;
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    pivots
}
