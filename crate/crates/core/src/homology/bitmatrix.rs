//! Dense GF(2) vectors and matrices with bit-packed rows.

use std::fmt;

const W: usize = 64;

fn words(bits: usize) -> usize {
    bits.div_ceil(W)
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words(len)],
        }
    }

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.set(i, true);
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
        debug_assert!(i < self.len);
        self.words[i / W] >> (i % W) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % W);
        if value {
            self.words[i / W] |= mask;
        } else {
            self.words[i / W] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / W] ^= 1u64 << (i % W);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        xor_words(&mut self.words, &other.words);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the inner product with `other`.
    pub fn dot(&self, other: &BitVec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        first_one_from(&self.words, 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * W + b)
            })
        })
    }

    pub fn as_words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

fn xor_words(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

fn first_one_from(words: &[u64], start_word: usize) -> Option<usize> {
    words[start_word..]
        .iter()
        .position(|&w| w != 0)
        .map(|i| (start_word + i) * W + words[start_word + i].trailing_zeros() as usize)
}

/// A `rows x cols` matrix over GF(2). Bits past `cols` in each row are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / W] >> (c % W) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(
            r < self.rows && c < self.cols,
            "({r},{c}) outside {}x{}",
            self.rows,
            self.cols
        );
        let w = &mut self.data[r * self.stride + c / W];
        let mask = 1u64 << (c % W);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / W] ^= 1u64 << (c % W);
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn row_ones(&self, r: usize) -> Vec<usize> {
        self.row(r).ones().collect()
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_ones(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    pub fn col_count_ones(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c)).count()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in self.row(r).ones() {
                let (dst, src) = (r * out.stride, k * other.stride);
                for w in 0..out.stride {
                    out.data[dst + w] ^= other.data[src + w];
                }
            }
        }
        out
    }

    /// `self * v` for a column vector `v` of length `cols`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len, self.cols);
        BitVec::from_ones(
            self.rows,
            (0..self.rows).filter(|&r| {
                self.row_words(r)
                    .iter()
                    .zip(&v.words)
                    .map(|(a, b)| (a & b).count_ones())
                    .sum::<u32>()
                    % 2
                    == 1
            }),
        )
    }

    /// Rank over GF(2); see [`rank_gf2`].
    pub fn rank(&self) -> usize {
        rank_gf2(self)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "{:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Rank over GF(2). Rows are inserted one by one into an echelon basis keyed
/// by leading column; each reduction step strictly increases the leading
/// column, so a row is either absorbed or becomes a new pivot. The input is
/// not modified.
pub fn rank_gf2(m: &BitMatrix) -> usize {
    let stride = m.stride;
    let mut pivot_of_col: Vec<u32> = vec![u32::MAX; m.cols];
    let mut basis: Vec<u64> = Vec::new();
    let mut scratch = vec![0u64; stride];
    let mut rank = 0;
    for r in 0..m.rows {
        scratch.copy_from_slice(m.row_words(r));
        let mut start = 0;
        while let Some(lead) = first_one_from(&scratch, start) {
            let p = pivot_of_col[lead];
            if p == u32::MAX {
                pivot_of_col[lead] = rank as u32;
                basis.extend_from_slice(&scratch);
                rank += 1;
                break;
            }
            let p = p as usize;
            let w0 = lead / W;
            xor_words(
                &mut scratch[w0..],
                &basis[p * stride + w0..(p + 1) * stride],
            );
            start = w0;
        }
    }
    rank
}

/// Reduced row echelon form of a matrix together with the row operations
/// that produced it, for solving `A x = b` against many right-hand sides.
///
/// Pivots are chosen column by column in increasing order, and free
/// variables are set to zero, so solutions are reproducible.
#[derive(Clone, Debug)]
pub struct EchelonSolver {
    cols: usize,
    /// `pivot_cols[i]` is the pivot column of reduced row `i`, `i < rank`.
    pivot_cols: Vec<usize>,
    /// Row `i` of the transform `E`, with `E * A = R`.
    transform: Vec<BitVec>,
}

impl EchelonSolver {
    pub fn new(a: &BitMatrix) -> Self {
        let (rows, cols) = (a.rows, a.cols);
        let mut r: Vec<BitVec> = (0..rows).map(|i| a.row(i)).collect();
        let mut e: Vec<BitVec> = (0..rows).map(|i| BitVec::from_ones(rows, [i])).collect();
        let mut pivot_cols = Vec::new();
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&i| r[i].get(c)) else {
                continue;
            };
            r.swap(rank, p);
            e.swap(rank, p);
            let (pr, pe) = (r[rank].clone(), e[rank].clone());
            for i in 0..rows {
                if i != rank && r[i].get(c) {
                    r[i].xor_assign(&pr);
                    e[i].xor_assign(&pe);
                }
            }
            pivot_cols.push(c);
            rank += 1;
        }
        Self {
            cols,
            pivot_cols,
            transform: e,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    /// A solution of `A x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        let rank = self.rank();
        if self.transform[rank..].iter().any(|row| row.dot(b)) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (i, &c) in self.pivot_cols.iter().enumerate() {
            if self.transform[i].dot(b) {
                x.set(c, true);
            }
        }
        Some(x)
    }
}
