//! Dense linear algebra over `F_q`, plus bit-packed rows for `F_2`.

use crate::field::Field;

/// Row-major dense matrix over a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    field: Field,
    ncols: usize,
    rows: Vec<Vec<u8>>,
}

/// Reduced row-echelon basis of a row space. Pivot `i` is the leading
/// column of `rows[i]`, which is 1 there and 0 in every other basis row.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: Field,
    ncols: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<u8>>,
}

impl FpMatrix {
    pub fn new(field: Field, ncols: usize, rows: Vec<Vec<u8>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        FpMatrix { field, ncols, rows }
    }

    pub fn zeros(field: Field, nrows: usize, ncols: usize) -> Self {
        FpMatrix::new(field, ncols, vec![vec![0; ncols]; nrows])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.rows[r][c] = v;
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.rows[r].iter().filter(|&&v| v != 0).count()
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.ncols);
        let f = self.field;
        self.rows
            .iter()
            .map(|row| dot(f, row, v))
            .collect()
    }

    /// True iff `self * other^T = 0`.
    pub fn orthogonal_to(&self, other: &FpMatrix) -> bool {
        assert_eq!(self.ncols, other.ncols);
        let f = self.field;
        self.rows
            .iter()
            .all(|r| other.rows.iter().all(|s| dot(f, r, s) == 0))
    }

    pub fn row_space(&self) -> RowSpace {
        let f = self.field;
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.ncols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = f.inv(rows[rank][col]);
            if inv != 1 {
                for v in rows[rank].iter_mut() {
                    *v = f.mul(*v, inv);
                }
            }
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let c = row[col];
                    axpy(f, row, f.neg(c), &pivot_row);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        RowSpace {
            field: f,
            ncols: self.ncols,
            pivots,
            rows,
        }
    }

    pub fn rank(&self) -> usize {
        self.row_space().rank()
    }

    /// Basis of the right kernel `{v : self * v = 0}`.
    pub fn kernel(&self) -> FpMatrix {
        let rs = self.row_space();
        let f = self.field;
        let mut is_pivot = vec![false; self.ncols];
        for &p in &rs.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u8; self.ncols];
            v[free] = 1;
            for (row, &p) in rs.rows.iter().zip(&rs.pivots) {
                v[p] = f.neg(row[free]);
            }
            basis.push(v);
        }
        FpMatrix::new(f, self.ncols, basis)
    }
}

impl RowSpace {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let f = self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = out[p];
            if c != 0 {
                axpy(f, &mut out, f.neg(c), row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Bit-packed copy for `F_2` row spaces.
    pub fn to_bits(&self) -> BitRowSpace {
        assert!(self.field.is_binary());
        BitRowSpace {
            words: words_for(self.ncols),
            pivots: self.pivots.clone(),
            rows: self.rows.iter().map(|r| pack_bits(r)).collect(),
        }
    }
}

pub(crate) fn dot(f: Field, a: &[u8], b: &[u8]) -> u8 {
    let q = f.q();
    let mut acc = 0u32;
    for (&x, &y) in a.iter().zip(b) {
        acc += x as u32 * y as u32;
        if acc >= 1 << 24 {
            acc %= q;
        }
    }
    (acc % q) as u8
}

/// `y += c * x`.
pub(crate) fn axpy(f: Field, y: &mut [u8], c: u8, x: &[u8]) {
    if c == 0 {
        return;
    }
    for (a, &b) in y.iter_mut().zip(x) {
        if b != 0 {
            *a = f.add(*a, f.mul(c, b));
        }
    }
}

pub fn words_for(nbits: usize) -> usize {
    nbits.div_ceil(64)
}

pub fn pack_bits(v: &[u8]) -> Vec<u64> {
    let mut out = vec![0u64; words_for(v.len())];
    for (i, &b) in v.iter().enumerate() {
        if b & 1 == 1 {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

pub fn unpack_bits(w: &[u64], nbits: usize) -> Vec<u8> {
    (0..nbits).map(|i| ((w[i / 64] >> (i % 64)) & 1) as u8).collect()
}

#[inline]
pub fn popcount(w: &[u64]) -> u32 {
    w.iter().map(|x| x.count_ones()).sum()
}

#[inline]
pub fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

#[inline]
pub fn bit(w: &[u64], i: usize) -> bool {
    (w[i / 64] >> (i % 64)) & 1 == 1
}

/// Bit-packed reduced row-echelon basis over `F_2`, used for fast
/// degeneracy tests.
#[derive(Clone, Debug)]
pub struct BitRowSpace {
    words: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<u64>>,
}

impl BitRowSpace {
    pub fn words(&self) -> usize {
        self.words
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// True iff `v` lies outside the row space.
    pub fn is_outside(&self, v: &[u64]) -> bool {
        self.is_outside_with(v, &mut Vec::new())
    }

    /// As `is_outside`, reusing `scratch` to avoid allocation.
    pub fn is_outside_with(&self, v: &[u64], scratch: &mut Vec<u64>) -> bool {
        scratch.clear();
        scratch.extend_from_slice(v);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if bit(scratch, p) {
                xor_into(scratch, row);
            }
        }
        scratch.iter().any(|&w| w != 0)
    }
}
