use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::ring::Ring;

/// Smith normal form `left * M * right = diag(factors, 0, ...)`.
///
/// `left_inv` and `right_inv` are the inverses of the two unimodular transforms.
#[derive(Clone, Debug)]
pub struct Snf {
    pub ring: Ring,
    pub factors: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub left_inv: IntMatrix,
    pub right_inv: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

type Dense = Vec<Vec<BigInt>>;

fn identity(n: usize) -> Dense {
    let mut d = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    d
}

struct Work {
    ring: Ring,
    a: Dense,
    m: usize,
    n: usize,
    track: bool,
    left: Dense,
    left_inv: Dense,
    right: Dense,
    right_inv: Dense,
}

impl Work {
    fn new(mat: &IntMatrix, ring: Ring, track: bool) -> Self {
        let (m, n) = (mat.rows(), mat.cols());
        let a = mat.reduced(ring).to_dense();
        let (left, left_inv, right, right_inv) = if track {
            (identity(m), identity(m), identity(n), identity(n))
        } else {
            (Vec::new(), Vec::new(), Vec::new(), Vec::new())
        };
        Work { ring, a, m, n, track, left, left_inv, right, right_inv }
    }

    fn red(&self, x: BigInt) -> BigInt {
        self.ring.reduce(x)
    }

    /// row_i += c * row_k
    fn row_add(&mut self, i: usize, k: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.n {
            if !self.a[k][j].is_zero() {
                let v = &self.a[i][j] + c * &self.a[k][j];
                self.a[i][j] = self.red(v);
            }
        }
        if self.track {
            for j in 0..self.m {
                if !self.left[k][j].is_zero() {
                    let v = &self.left[i][j] + c * &self.left[k][j];
                    self.left[i][j] = self.red(v);
                }
            }
            // left_inv <- left_inv * E^{-1}: column k -= c * column i
            for r in 0..self.m {
                if !self.left_inv[r][i].is_zero() {
                    let v = &self.left_inv[r][k] - c * &self.left_inv[r][i];
                    self.left_inv[r][k] = self.red(v);
                }
            }
        }
    }

    fn row_swap(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap(i, k);
        if self.track {
            self.left.swap(i, k);
            for row in self.left_inv.iter_mut() {
                row.swap(i, k);
            }
        }
    }

    fn row_scale(&mut self, i: usize, u: &BigInt) {
        if u.is_one() {
            return;
        }
        let uinv = self.ring.inverse(u).expect("row scaling needs a unit");
        for j in 0..self.n {
            let v = &self.a[i][j] * u;
            self.a[i][j] = self.red(v);
        }
        if self.track {
            for j in 0..self.m {
                let v = &self.left[i][j] * u;
                self.left[i][j] = self.red(v);
            }
            for r in 0..self.m {
                let v = &self.left_inv[r][i] * &uinv;
                self.left_inv[r][i] = self.red(v);
            }
        }
    }

    /// col_j += c * col_k
    fn col_add(&mut self, j: usize, k: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for r in 0..self.m {
            if !self.a[r][k].is_zero() {
                let v = &self.a[r][j] + c * &self.a[r][k];
                self.a[r][j] = self.red(v);
            }
        }
        if self.track {
            for r in 0..self.n {
                if !self.right[r][k].is_zero() {
                    let v = &self.right[r][j] + c * &self.right[r][k];
                    self.right[r][j] = self.red(v);
                }
            }
            // right_inv <- E^{-1} * right_inv: row k -= c * row j
            for col in 0..self.n {
                if !self.right_inv[j][col].is_zero() {
                    let v = &self.right_inv[k][col] - c * &self.right_inv[j][col];
                    self.right_inv[k][col] = self.red(v);
                }
            }
        }
    }

    fn col_swap(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(j, k);
        }
        if self.track {
            for row in self.right.iter_mut() {
                row.swap(j, k);
            }
            self.right_inv.swap(j, k);
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let s = self.ring.size(x);
                if best.as_ref().is_none_or(|(b, _, _)| s < *b) {
                    let unit = s.is_one();
                    best = Some((s, i, j));
                    if unit {
                        return best.map(|(_, i, j)| (i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Smallest nonzero entry in row t / column t beyond the pivot, if smaller than the pivot.
    fn smaller_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let p = self.ring.size(&self.a[t][t]);
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t + 1..self.m {
            let x = &self.a[i][t];
            if !x.is_zero() {
                let s = self.ring.size(x);
                if s < p && best.as_ref().is_none_or(|(b, _, _)| s < *b) {
                    best = Some((s, i, t));
                }
            }
        }
        for j in t + 1..self.n {
            let x = &self.a[t][j];
            if !x.is_zero() {
                let s = self.ring.size(x);
                if s < p && best.as_ref().is_none_or(|(b, _, _)| s < *b) {
                    best = Some((s, t, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn run(&mut self) -> Vec<BigInt> {
        let mut factors = Vec::new();
        let mut t = 0;
        while t < self.m.min(self.n) {
            let Some((pi, pj)) = self.min_pivot(t) else { break };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                if let Some((i, j)) = self.smaller_in_cross(t) {
                    self.row_swap(t, i);
                    self.col_swap(t, j);
                }
                let piv = self.a[t][t].clone();
                let mut clean = true;
                for i in t + 1..self.m {
                    if !self.a[i][t].is_zero() {
                        let (q, r) = self.ring.div_rem(&self.a[i][t], &piv);
                        self.row_add(i, t, &(-q));
                        if !r.is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..self.n {
                    if !self.a[t][j].is_zero() {
                        let (q, r) = self.ring.div_rem(&self.a[t][j], &piv);
                        self.col_add(j, t, &(-q));
                        if !r.is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    continue;
                }
                // Divisibility of the remaining block by the pivot.
                let mut offender = None;
                'scan: for i in t + 1..self.m {
                    for j in t + 1..self.n {
                        if !self.ring.divides(&piv, &self.a[i][j]) {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => {
                        let one = BigInt::one();
                        self.row_add(t, i, &one);
                    }
                    None => break,
                }
            }
            let u = self.ring.normalizing_unit(&self.a[t][t]);
            self.row_scale(t, &u);
            factors.push(self.a[t][t].clone());
            t += 1;
        }
        factors
    }
}

fn dense_to(m: usize, n: usize, d: &Dense) -> IntMatrix {
    IntMatrix::from_dense(m, n, d)
}

/// Smith normal form over the integers with unimodular transforms.
pub fn snf(m: &IntMatrix) -> Snf {
    snf_over(m, Ring::Integers)
}

/// Smith normal form over the given ring (over a field every factor is 1).
pub fn snf_over(m: &IntMatrix, ring: Ring) -> Snf {
    let mut w = Work::new(m, ring, true);
    let factors = w.run();
    Snf {
        ring,
        factors,
        left: dense_to(w.m, w.m, &w.left),
        right: dense_to(w.n, w.n, &w.right),
        left_inv: dense_to(w.m, w.m, &w.left_inv),
        right_inv: dense_to(w.n, w.n, &w.right_inv),
    }
}

/// Invariant factors only (no transforms are accumulated).
pub fn invariant_factors(m: &IntMatrix, ring: Ring) -> Vec<BigInt> {
    let mut w = Work::new(m, ring, false);
    w.run()
}

pub fn rank_over(m: &IntMatrix, ring: Ring) -> usize {
    invariant_factors(m, ring).len()
}

/// Rank over the rationals and a saturated basis of the integral kernel (as columns).
pub fn rank_and_kernel(m: &IntMatrix) -> (usize, IntMatrix) {
    rank_and_kernel_over(m, Ring::Integers)
}

pub fn rank_and_kernel_over(m: &IntMatrix, ring: Ring) -> (usize, IntMatrix) {
    let s = snf_over(m, ring);
    let r = s.rank();
    let cols: Vec<usize> = (r..m.cols()).collect();
    let rows: Vec<usize> = (0..m.cols()).collect();
    (r, s.right.submatrix(&rows, &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn diag_check(m: &IntMatrix, s: &Snf) {
        let d = s.left.mul(m).mul(&s.right).reduced(s.ring);
        for (i, j, v) in d.iter() {
            assert_eq!(i, j, "off-diagonal entry");
            assert_eq!(*v, s.factors[i]);
        }
        assert_eq!(d.nnz(), s.factors.len());
        let n = m.rows();
        assert_eq!(s.left.mul(&s.left_inv).reduced(s.ring), IntMatrix::identity(n));
        let k = m.cols();
        assert_eq!(s.right.mul(&s.right_inv).reduced(s.ring), IntMatrix::identity(k));
    }

    #[test]
    fn two_by_two_oracle() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let s = snf(&m);
        assert_eq!(s.factors, vec![BigInt::from(2), BigInt::from(4)]);
        diag_check(&m, &s);
    }

    #[test]
    fn identity_and_zero() {
        let s = snf(&IntMatrix::identity(4));
        assert_eq!(s.factors, vec![BigInt::one(); 4]);
        let s = snf(&IntMatrix::zeros(3, 2));
        assert!(s.factors.is_empty());
        let s = snf(&IntMatrix::zeros(0, 0));
        assert!(s.factors.is_empty());
    }

    #[test]
    fn diag_two_three() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = snf(&m);
        assert_eq!(s.factors, vec![BigInt::from(1), BigInt::from(6)]);
        diag_check(&m, &s);
    }

    #[test]
    fn kernel_oracle() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        let (r, k) = rank_and_kernel(&m);
        assert_eq!(r, 1);
        assert_eq!(k.cols(), 1);
        let v = k.column(0);
        let expect = [BigInt::from(2), BigInt::from(-1)];
        let neg: Vec<BigInt> = expect.iter().map(|x| -x).collect();
        assert!(v == expect || v == neg, "kernel {v:?}");
    }

    #[test]
    fn kernel_trivial_cases() {
        let (r, k) = rank_and_kernel(&IntMatrix::identity(3));
        assert_eq!((r, k.cols()), (3, 0));
        let (r, k) = rank_and_kernel(&IntMatrix::zeros(2, 3));
        assert_eq!(r, 0);
        assert_eq!(k, IntMatrix::identity(3));
    }

    #[test]
    fn field_variant() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let s = snf_over(&m, Ring::Prime(2));
        assert!(s.factors.is_empty());
        let s = snf_over(&m, Ring::Prime(3));
        assert_eq!(s.factors.len(), 2);
        diag_check(&m, &s);
    }

    #[test]
    fn det_matches_factor_product() {
        let m = IntMatrix::from_rows(&[vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5]]);
        let s = snf(&m);
        let prod: BigInt = s.factors.iter().product();
        // det computed by cofactor expansion
        let d = 3 * (5 * 5 - 9 * 6) - (5 - 9 * 2) + 4 * (6 - 5 * 2);
        assert_eq!(prod, BigInt::from(d).abs());
    }
}
