//! Dense linear algebra over the two-element field.
//!
//! Vectors are packed into `u64` words. Row reduction always pivots on the
//! lowest available column, so every result here is reproducible bit for bit.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    /// The standard basis vector `e_index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string such as `"1010"`; any character other than `'1'` and
    /// `'0'` is skipped, so `"1 0 1"` works too.
    pub fn parse(s: &str) -> Self {
        let bits: Vec<bool> = s
            .chars()
            .filter(|c| *c == '0' || *c == '1')
            .map(|c| c == '1')
            .collect();
        Self::from_bits(&bits)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// `self += other` (bitwise exclusive-or).
    pub fn add_assign(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len, "F2Vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn add(&self, other: &F2Vector) -> F2Vector {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Inner product over F₂.
    pub fn dot(&self, other: &F2Vector) -> bool {
        assert_eq!(self.len, other.len, "F2Vector length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Copies the bit range `range` into a new vector.
    pub fn slice(&self, range: std::ops::Range<usize>) -> F2Vector {
        let mut out = F2Vector::zeros(range.len());
        for (k, i) in range.enumerate() {
            if self.get(i) {
                out.set(k, true);
            }
        }
        out
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &F2Vector) -> F2Vector {
        let mut out = F2Vector::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vector(")?;
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Matrix {
    rows: Vec<F2Vector>,
    cols: usize,
}

impl F2Matrix {
    pub fn new(cols: usize, rows: Vec<F2Vector>) -> Self {
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "all rows of an F2Matrix must have {cols} columns"
        );
        Self { rows, cols }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(cols, vec![F2Vector::zeros(cols); rows])
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, (0..n).map(|i| F2Vector::unit(n, i)).collect())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[F2Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has the wrong length");
            for i in c.ones() {
                m.rows[i].set(j, true);
            }
        }
        m
    }

    /// Parses rows written as bit strings, e.g. `["110", "011"]`.
    pub fn parse(rows: &[&str]) -> Self {
        let rows: Vec<F2Vector> = rows.iter().map(|r| F2Vector::parse(r)).collect();
        let cols = rows.first().map_or(0, F2Vector::len);
        Self::new(cols, rows)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols)
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[F2Vector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn mul_vec(&self, v: &F2Vector) -> F2Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        let bits: Vec<bool> = self.rows.iter().map(|r| r.dot(v)).collect();
        F2Vector::from_bits(&bits)
    }

    pub fn transpose(&self) -> F2Matrix {
        F2Matrix::from_columns(self.cols, &self.rows)
    }

    /// `self · other`.
    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.row_count(), "matrix product shape mismatch");
        let t = other.transpose();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let bits: Vec<bool> = t.rows.iter().map(|c| r.dot(c)).collect();
                F2Vector::from_bits(&bits)
            })
            .collect();
        F2Matrix::new(other.cols, rows)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(F2Vector::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    pub rank: usize,
    /// Reduced row-echelon form; zero rows are kept at the bottom.
    pub reduced: F2Matrix,
    pub pivot_columns: Vec<usize>,
}

pub fn row_reduce(m: &F2Matrix) -> RowReduction {
    let mut rows = m.rows.clone();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..m.cols {
        let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(next, found);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.get(col) {
                row.add_assign(&pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    RowReduction {
        rank: pivots.len(),
        reduced: F2Matrix::new(m.cols, rows),
        pivot_columns: pivots,
    }
}

pub fn rank(m: &F2Matrix) -> usize {
    row_reduce(m).rank
}

/// A basis of `{v : m·v = 0}`, one vector per free column, in column order.
pub fn kernel_basis(m: &F2Matrix) -> Vec<F2Vector> {
    let rr = row_reduce(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &rr.pivot_columns {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = F2Vector::unit(m.cols, free);
            for (r, &p) in rr.pivot_columns.iter().enumerate() {
                if rr.reduced.get(r, free) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// Solutions of `m·x = target` as a particular solution plus a kernel basis,
/// or `None` when the system is inconsistent.
pub fn solve_affine_space(m: &F2Matrix, target: &F2Vector) -> Option<(F2Vector, Vec<F2Vector>)> {
    assert_eq!(target.len(), m.row_count(), "target length must equal row count");
    let augmented = F2Matrix::new(
        m.cols + 1,
        m.rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&F2Vector::from_bits(&[target.get(i)])))
            .collect(),
    );
    let rr = row_reduce(&augmented);
    if rr.pivot_columns.last() == Some(&m.cols) {
        return None;
    }
    let mut particular = F2Vector::zeros(m.cols);
    for (r, &p) in rr.pivot_columns.iter().enumerate() {
        if rr.reduced.get(r, m.cols) {
            particular.set(p, true);
        }
    }
    Some((particular, kernel_basis(m)))
}

/// A subspace held in reduced echelon form, for repeated membership tests and
/// normal-form reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<F2Vector>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(ambient: usize, spanning: &[F2Vector]) -> Self {
        let rr = row_reduce(&F2Matrix::new(ambient, spanning.to_vec()));
        let rows = rr.reduced.rows[..rr.rank].to_vec();
        Self {
            dim: ambient,
            rows,
            pivots: rr.pivot_columns,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[F2Vector] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns not used as pivots, in increasing order. These index a fixed
    /// complement of the subspace.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.dim).filter(|&c| !is_pivot[c]).collect()
    }

    /// The unique representative of `v + span` vanishing on every pivot column.
    pub fn reduce(&self, v: &F2Vector) -> F2Vector {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out.add_assign(row);
            }
        }
        out
    }

    pub fn contains(&self, v: &F2Vector) -> bool {
        self.reduce(v).is_zero()
    }
}

pub fn subspace_membership(basis: &[F2Vector], v: &F2Vector) -> bool {
    EchelonBasis::new(v.len(), basis).contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_has_full_rank() {
        let rr = row_reduce(&F2Matrix::identity(3));
        assert_eq!(rr.rank, 3);
        assert_eq!(rr.pivot_columns, vec![0, 1, 2]);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let rr = row_reduce(&F2Matrix::zeros(2, 4));
        assert_eq!(rr.rank, 0);
        assert!(rr.pivot_columns.is_empty());
    }

    #[test]
    fn dependent_third_row() {
        let m = F2Matrix::parse(&["1100", "0110", "1010"]);
        let rr = row_reduce(&m);
        assert_eq!(rr.rank, 2);
        assert_eq!(rr.reduced, F2Matrix::parse(&["1010", "0110", "0000"]));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&F2Matrix::identity(4)).is_empty());
        assert_eq!(kernel_basis(&F2Matrix::zeros(1, 3)).len(), 3);
        assert_eq!(
            kernel_basis(&F2Matrix::parse(&["110", "011"])),
            vec![F2Vector::parse("111")]
        );
    }

    #[test]
    fn affine_examples() {
        let t = F2Vector::parse("101");
        let (p, k) = solve_affine_space(&F2Matrix::identity(3), &t).unwrap();
        assert_eq!(p, t);
        assert!(k.is_empty());

        assert!(solve_affine_space(&F2Matrix::zeros(1, 2), &F2Vector::parse("1")).is_none());

        let (p, k) = solve_affine_space(&F2Matrix::parse(&["11"]), &F2Vector::parse("1")).unwrap();
        assert_eq!(p, F2Vector::parse("10"));
        assert_eq!(k, vec![F2Vector::parse("11")]);
    }

    #[test]
    fn membership_examples() {
        assert!(subspace_membership(&[], &F2Vector::zeros(3)));
        assert!(!subspace_membership(&[], &F2Vector::parse("010")));
        let basis = [F2Vector::parse("110"), F2Vector::parse("011")];
        assert!(subspace_membership(&basis, &F2Vector::parse("101")));
        assert!(!subspace_membership(&basis, &F2Vector::parse("100")));
    }

    #[test]
    fn vectors_wider_than_one_word() {
        let mut v = F2Vector::zeros(130);
        v.set(129, true);
        v.set(64, true);
        assert_eq!(v.first_one(), Some(64));
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![64, 129]);
        assert_eq!(v.slice(64..130).first_one(), Some(0));
    }

    fn arb_matrix() -> impl Strategy<Value = F2Matrix> {
        (1usize..9, 1usize..9).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(any::<bool>(), c), r).prop_map(move |rows| {
                F2Matrix::new(c, rows.iter().map(|b| F2Vector::from_bits(b)).collect())
            })
        })
    }

    proptest! {
        #[test]
        fn row_reduce_is_idempotent(m in arb_matrix()) {
            let once = row_reduce(&m);
            let twice = row_reduce(&once.reduced);
            prop_assert_eq!(&once, &twice);
        }

        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.len(), m.col_count());
            for v in &k {
                prop_assert!(m.mul_vec(v).is_zero());
            }
            prop_assert_eq!(rank(&F2Matrix::new(m.col_count(), k.clone())), k.len());
        }

        #[test]
        fn affine_solutions_solve(m in arb_matrix(), seed in any::<u64>()) {
            let x: Vec<bool> = (0..m.col_count()).map(|i| seed >> (i % 64) & 1 == 1).collect();
            let target = m.mul_vec(&F2Vector::from_bits(&x));
            let (p, kernel) = solve_affine_space(&m, &target).expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&p), target.clone());
            let mut combo = p.clone();
            for (i, k) in kernel.iter().enumerate() {
                if seed >> (i % 64) & 1 == 1 {
                    combo.add_assign(k);
                }
            }
            prop_assert_eq!(m.mul_vec(&combo), target);
        }
    }
}
