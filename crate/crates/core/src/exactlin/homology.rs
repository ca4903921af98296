use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::AbelianGroup;
use super::matrix::IntMatrix;
use super::ring::Ring;
use super::snf::{invariant_factors, rank_over, snf_over, Snf};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinError {
    #[error("composition d_out * d_in is nonzero")]
    CompositionNonzero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vector is not a cycle")]
    NotACycle,
}

fn check_pair(d_in: &IntMatrix, d_out: &IntMatrix, ring: Ring) -> Result<(), LinError> {
    if d_out.cols() != d_in.rows() {
        return Err(LinError::DimensionMismatch(format!(
            "d_out has {} columns but d_in has {} rows",
            d_out.cols(),
            d_in.rows()
        )));
    }
    if !d_out.mul(d_in).reduced(ring).is_zero() {
        return Err(LinError::CompositionNonzero);
    }
    Ok(())
}

/// ker(d_out) / im(d_in) over the integers.
pub fn homology_of_pair(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<AbelianGroup, LinError> {
    homology_of_pair_over(d_in, d_out, Ring::Integers)
}

pub fn homology_of_pair_over(
    d_in: &IntMatrix,
    d_out: &IntMatrix,
    ring: Ring,
) -> Result<AbelianGroup, LinError> {
    check_pair(d_in, d_out, ring)?;
    let n = d_in.rows();
    let r_out = rank_over(d_out, ring);
    let f_in = invariant_factors(d_in, ring);
    let free = n - r_out - f_in.len();
    let mut g = AbelianGroup::free(free);
    if ring == Ring::Integers {
        g = AbelianGroup::from_orders(f_in.iter().chain(std::iter::repeat_n(&BigInt::zero(), free)));
    }
    Ok(g)
}

/// Solves `M x = v` using a precomputed Smith form.
#[derive(Clone, Debug)]
pub struct Solver {
    snf: Snf,
    cols: usize,
}

impl Solver {
    pub fn new(m: &IntMatrix, ring: Ring) -> Self {
        Solver { snf: snf_over(m, ring), cols: m.cols() }
    }

    pub fn ring(&self) -> Ring {
        self.snf.ring
    }

    pub fn rank(&self) -> usize {
        self.snf.rank()
    }

    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let ring = self.snf.ring;
        let w: Vec<BigInt> = self.snf.left.apply(v).into_iter().map(|x| ring.reduce(x)).collect();
        let r = self.snf.rank();
        let mut y = vec![BigInt::zero(); self.cols];
        for (i, wi) in w.iter().enumerate() {
            if i < r {
                let d = &self.snf.factors[i];
                let (q, rem) = ring.div_rem(wi, d);
                if !rem.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !wi.is_zero() {
                return None;
            }
        }
        Some(self.snf.right.apply(&y).into_iter().map(|x| ring.reduce(x)).collect())
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.solve(v).is_some()
    }
}

/// Explicit presentation of ker(d_out)/im(d_in) with cycle representatives.
///
/// Generator `k` has order `orders[k]` (0 for an infinite cyclic or field summand).
#[derive(Clone, Debug)]
pub struct Presentation {
    pub ring: Ring,
    pub orders: Vec<BigInt>,
    /// Columns are cycle representatives of the generators.
    pub reps: IntMatrix,
    coords: IntMatrix,
    d_out: IntMatrix,
}

impl Presentation {
    pub fn new(d_in: &IntMatrix, d_out: &IntMatrix, ring: Ring) -> Result<Self, LinError> {
        check_pair(d_in, d_out, ring)?;
        let n = d_in.rows();
        let s_out = snf_over(d_out, ring);
        let r_out = s_out.rank();
        let all: Vec<usize> = (0..n).collect();
        let kcols: Vec<usize> = (r_out..n).collect();
        // kernel basis K (n x k) and its left inverse L (k x n)
        let kbasis = s_out.right.submatrix(&all, &kcols);
        let linv = s_out.right_inv.submatrix(&kcols, &all);
        let a = linv.mul(d_in).reduced(ring);
        let s_a = snf_over(&a, ring);
        let k = kcols.len();
        let new_basis = kbasis.mul(&s_a.left_inv).reduced(ring);
        let coords_all = s_a.left.mul(&linv).reduced(ring);
        let mut keep = Vec::new();
        let mut orders = Vec::new();
        for i in 0..k {
            if i < s_a.rank() {
                let f = &s_a.factors[i];
                if ring == Ring::Integers && !f.is_one() {
                    keep.push(i);
                    orders.push(f.clone());
                }
            } else {
                keep.push(i);
                orders.push(BigInt::zero());
            }
        }
        let reps = new_basis.submatrix(&all, &keep);
        let coords = coords_all.submatrix(&keep, &all);
        Ok(Presentation { ring, orders, reps, coords, d_out: d_out.clone() })
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn group(&self) -> AbelianGroup {
        if self.ring == Ring::Integers {
            AbelianGroup::from_orders(self.orders.iter())
        } else {
            AbelianGroup::free(self.orders.len())
        }
    }

    pub fn rep(&self, k: usize) -> Vec<BigInt> {
        self.reps.column(k)
    }

    pub fn is_cycle(&self, z: &[BigInt]) -> bool {
        self.d_out.apply(z).into_iter().all(|x| self.ring.reduce(x).is_zero())
    }

    /// Coordinates of the class of a cycle, reduced modulo the generator orders.
    pub fn class_of(&self, z: &[BigInt]) -> Result<Vec<BigInt>, LinError> {
        if !self.is_cycle(z) {
            return Err(LinError::NotACycle);
        }
        let c = self.coords.apply(z);
        Ok(c.into_iter()
            .zip(self.orders.iter())
            .map(|(x, o)| if o.is_zero() { self.ring.reduce(x) } else { x.mod_floor(o) })
            .collect())
    }

    /// Relation matrix of the presentation: diagonal with the generator orders.
    pub fn relations(&self) -> IntMatrix {
        let n = self.orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, o) in self.orders.iter().enumerate() {
            if !o.is_zero() {
                m.set(i, i, o.clone());
            }
        }
        m
    }
}

/// Homomorphism between presented groups `Z^a / R_src -> Z^b / R_tgt`.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub ring: Ring,
    pub src_orders: Vec<BigInt>,
    pub tgt_orders: Vec<BigInt>,
    pub matrix: IntMatrix,
}

fn diag(orders: &[BigInt]) -> IntMatrix {
    let n = orders.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, o) in orders.iter().enumerate() {
        if !o.is_zero() {
            m.set(i, i, o.clone());
        }
    }
    m
}

fn column_in_lattice(v: &[BigInt], orders: &[BigInt], ring: Ring) -> bool {
    v.iter().zip(orders).all(|(x, o)| {
        let x = ring.reduce(x.clone());
        if o.is_zero() {
            x.is_zero()
        } else {
            (x % o).is_zero()
        }
    })
}

impl GroupHom {
    /// Builds the map from the images of the source generators' representatives.
    pub fn from_images(src: &Presentation, tgt: &Presentation, images: &[Vec<BigInt>]) -> Self {
        let cols: Vec<Vec<BigInt>> = images.to_vec();
        GroupHom {
            ring: src.ring,
            src_orders: src.orders.clone(),
            tgt_orders: tgt.orders.clone(),
            matrix: IntMatrix::from_columns(tgt.orders.len(), &cols),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.columns().iter().all(|c| column_in_lattice(c, &self.tgt_orders, self.ring))
    }

    /// Lattice of x in Z^a with F x in R_tgt Z^b, as columns.
    fn kernel_lattice(&self) -> IntMatrix {
        let a = self.src_orders.len();
        let r = diag(&self.tgt_orders);
        let big = self.matrix.hstack(&r);
        let s = snf_over(&big, self.ring);
        let total = big.cols();
        let kcols: Vec<usize> = (s.rank()..total).collect();
        let first: Vec<usize> = (0..a).collect();
        s.right.submatrix(&first, &kcols)
    }

    pub fn is_injective(&self) -> bool {
        let k = self.kernel_lattice();
        k.columns().iter().all(|c| column_in_lattice(c, &self.src_orders, self.ring))
    }

    pub fn is_surjective(&self) -> bool {
        let b = self.tgt_orders.len();
        let big = self.matrix.hstack(&diag(&self.tgt_orders));
        let f = invariant_factors(&big, self.ring);
        f.len() == b && f.iter().all(|x| x.is_one())
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn sub(&self, other: &GroupHom) -> GroupHom {
        GroupHom { matrix: self.matrix.sub(&other.matrix).reduced(self.ring), ..self.clone() }
    }

    pub fn neg(&self) -> GroupHom {
        GroupHom { matrix: self.matrix.neg().reduced(self.ring), ..self.clone() }
    }

    /// Equality as homomorphisms (entries agree modulo the target relations).
    pub fn same_as(&self, other: &GroupHom) -> bool {
        self.src_orders == other.src_orders && self.tgt_orders == other.tgt_orders && self.sub(other).is_zero()
    }

    pub fn compose(&self, first: &GroupHom) -> GroupHom {
        GroupHom {
            ring: self.ring,
            src_orders: first.src_orders.clone(),
            tgt_orders: self.tgt_orders.clone(),
            matrix: self.matrix.mul(&first.matrix).reduced(self.ring),
        }
    }
}

/// Exactness of `A --f--> B --g--> C` at B: g f = 0 and ker g = im f.
pub fn exact_at(f: &GroupHom, g: &GroupHom) -> bool {
    let ring = f.ring;
    if !g.compose(f).is_zero() {
        return false;
    }
    let im = f.matrix.hstack(&diag(&f.tgt_orders));
    let solver = Solver::new(&im, ring);
    g.kernel_lattice().columns().iter().all(|c| solver.contains(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_oracles() {
        let z = IntMatrix::zeros(3, 0);
        let out = IntMatrix::zeros(0, 3);
        assert_eq!(homology_of_pair(&z, &out).unwrap(), AbelianGroup::free(3));
        let two = IntMatrix::from_rows(&[vec![2]]);
        let g = homology_of_pair(&two, &IntMatrix::zeros(0, 1)).unwrap();
        assert_eq!(g.to_string(), "Z/2");
        let d = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let g = homology_of_pair(&d, &IntMatrix::zeros(0, 2)).unwrap();
        assert_eq!(g.to_string(), "Z/6");
    }

    #[test]
    fn pair_errors() {
        let a = IntMatrix::from_rows(&[vec![1]]);
        assert_eq!(homology_of_pair(&a, &a), Err(LinError::CompositionNonzero));
        let b = IntMatrix::zeros(2, 2);
        assert!(matches!(homology_of_pair(&a, &b), Err(LinError::DimensionMismatch(_))));
    }

    #[test]
    fn presentation_classes() {
        // Z^2 with boundary spanned by (2, 4): H = Z + Z/2
        let d_in = IntMatrix::from_rows(&[vec![2], vec![4]]);
        let d_out = IntMatrix::zeros(0, 2);
        let p = Presentation::new(&d_in, &d_out, Ring::Integers).unwrap();
        assert_eq!(p.group().to_string(), "Z + Z/2");
        let b: Vec<BigInt> = vec![2.into(), 4.into()];
        assert!(p.class_of(&b).unwrap().iter().all(|x| x.is_zero()));
        let half: Vec<BigInt> = vec![1.into(), 2.into()];
        assert!(!p.class_of(&half).unwrap().iter().all(|x| x.is_zero()));
        for k in 0..p.len() {
            let c = p.class_of(&p.rep(k)).unwrap();
            for (i, x) in c.iter().enumerate() {
                assert_eq!(*x, if i == k { BigInt::one() } else { BigInt::zero() });
            }
        }
    }

    #[test]
    fn group_hom_flags() {
        let ring = Ring::Integers;
        // Z --2--> Z: injective, not surjective
        let h = GroupHom {
            ring,
            src_orders: vec![0.into()],
            tgt_orders: vec![0.into()],
            matrix: IntMatrix::from_rows(&[vec![2]]),
        };
        assert!(h.is_injective() && !h.is_surjective());
        // Z --1--> Z/2: surjective, not injective
        let q = GroupHom {
            ring,
            src_orders: vec![0.into()],
            tgt_orders: vec![2.into()],
            matrix: IntMatrix::from_rows(&[vec![1]]),
        };
        assert!(!q.is_injective() && q.is_surjective());
        assert!(exact_at(&h, &q));
        // Z/2 --1--> Z/2 is an isomorphism
        let id = GroupHom {
            ring,
            src_orders: vec![2.into()],
            tgt_orders: vec![2.into()],
            matrix: IntMatrix::from_rows(&[vec![3]]),
        };
        assert!(id.is_iso());
    }
}
