use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ring::Ring;

/// Sparse integer matrix; absent entries are zero and stored entries are never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix({}x{})[", self.rows, self.cols)?;
        for (i, row) in self.to_dense().iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone().into());
            }
        }
        m
    }

    pub fn from_dense(rows: usize, cols: usize, data: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, row) in data.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.entries.insert((i, j), v.clone());
                }
            }
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.entries.insert((i, j), v.clone());
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

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn get_ref(&self, i: usize, j: usize) -> Option<&BigInt> {
        self.entries.get(&(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &BigInt) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    /// Stored entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.rows];
        for (&(i, jj), x) in &self.entries {
            if jj == j {
                v[i] = x.clone();
            }
        }
        v
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.rows]; self.cols];
        for (&(i, j), x) in &self.entries {
            out[j][i] = x.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            t.entries.insert((j, i), v.clone());
        }
        t
    }

    pub fn reduced(&self, ring: Ring) -> Self {
        if ring == Ring::Integers {
            return self.clone();
        }
        let mut m = Self::zeros(self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            m.set(i, j, ring.reduce_ref(v));
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut by_row: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); other.rows];
        for (&(k, j), v) in &other.entries {
            by_row[k].push((j, v));
        }
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            for &(j, b) in &by_row[k] {
                *acc.entry((i, j)).or_default() += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        IntMatrix { rows: self.rows, cols: other.cols, entries: acc }
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sum");
        let mut m = self.clone();
        for (&(i, j), v) in &other.entries {
            m.add_at(i, j, v);
        }
        m
    }

    pub fn neg(&self) -> IntMatrix {
        let mut m = self.clone();
        for v in m.entries.values_mut() {
            *v = -v.clone();
        }
        m
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let mut m = self.clone();
        for v in m.entries.values_mut() {
            *v *= c;
        }
        m
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![BigInt::zero(); self.rows];
        for (&(i, j), a) in &self.entries {
            if !v[j].is_zero() {
                out[i] += a * &v[j];
            }
        }
        out
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> IntMatrix {
        let mut rpos = vec![usize::MAX; self.rows];
        for (a, &r) in row_idx.iter().enumerate() {
            rpos[r] = a;
        }
        let mut cpos = vec![usize::MAX; self.cols];
        for (b, &c) in col_idx.iter().enumerate() {
            cpos[c] = b;
        }
        let mut m = Self::zeros(row_idx.len(), col_idx.len());
        for (&(i, j), v) in &self.entries {
            let (a, b) = (rpos[i], cpos[j]);
            if a != usize::MAX && b != usize::MAX {
                m.entries.insert((a, b), v.clone());
            }
        }
        m
    }

    /// Writes `block` with its top-left corner at (r0, c0), overwriting.
    pub fn place(&mut self, r0: usize, c0: usize, block: &IntMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for (&(i, j), v) in &block.entries {
            self.set(r0 + i, c0 + j, v.clone());
        }
    }

    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        m.place(0, 0, self);
        m.place(0, self.cols, other);
        m
    }

    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut m = Self::zeros(self.rows + other.rows, self.cols);
        m.place(0, 0, self);
        m.place(self.rows, 0, other);
        m
    }

    pub fn max_abs(&self) -> BigInt {
        use num_traits::Signed;
        self.entries.values().map(|v| v.abs()).max().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_identity() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let i = IntMatrix::identity(2);
        assert_eq!(a.mul(&i), a);
        let sq = a.mul(&a);
        assert_eq!(sq, IntMatrix::from_rows(&[vec![7, 10], vec![15, 22]]));
    }

    #[test]
    fn zero_entries_are_not_stored() {
        let mut a = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(a.nnz(), 2);
        a.add_at(0, 0, &BigInt::from(-1));
        assert_eq!(a.nnz(), 1);
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn empty_shapes() {
        let a = IntMatrix::zeros(0, 3);
        let b = IntMatrix::zeros(3, 2);
        let c = a.mul(&b);
        assert_eq!((c.rows(), c.cols()), (0, 2));
    }
}
