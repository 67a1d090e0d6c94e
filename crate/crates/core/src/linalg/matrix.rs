use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::vector::IntVector;

/// Dense integer matrix, stored row-major. Rows or columns may be zero
/// in the internal helpers; the public `hnf` expects a nonempty matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(data: Vec<Vec<BigInt>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        debug_assert!(data.iter().all(|r| r.len() == cols));
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[IntVector]) -> Self {
        IntMatrix::new(rows.iter().map(|r| r.coords().to_vec()).collect())
    }

    pub fn from_i64(data: &[&[i64]]) -> Self {
        IntMatrix::new(
            data.iter()
                .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in data.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        IntMatrix {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn row_vector(&self, i: usize) -> IntVector {
        IntVector::new(self.data[i].clone())
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut data = vec![vec![BigInt::zero(); self.rows]; self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j][i] = self.data[i][j].clone();
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut data = vec![vec![BigInt::zero(); other.cols]; self.rows];
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = &self.data[i][k] * &other.data[k][j];
                    data[i][j] += prod;
                }
            }
        }
        IntMatrix::new(data)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn negate_row(&mut self, i: usize) {
        for c in &mut self.data[i] {
            *c = -std::mem::take(c);
        }
    }

    /// row[j] -= q * row[i]
    fn shear(&mut self, j: usize, i: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let delta = q * &self.data[i][c];
            self.data[j][c] -= delta;
        }
    }
}

/// Row-style Hermite normal form with transformation matrix.
///
/// Returns (H, U) with H = U·m, det(U) = ±1, H an upper staircase with
/// positive pivots and entries above each pivot reduced into [0, pivot).
/// Running `hnf` on an H already in this form returns it unchanged with
/// U the identity.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    debug_assert!(m.rows() > 0, "hnf expects a nonempty matrix");
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut r = 0usize;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        // Euclidean elimination in column c among rows r..
        loop {
            // Pick the row with the smallest nonzero |entry| as pivot.
            let mut pivot: Option<usize> = None;
            for i in r..h.rows() {
                if h.data[i][c].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some(i),
                    Some(p) => {
                        if h.data[i][c].abs() < h.data[p][c].abs() {
                            pivot = Some(i);
                        }
                    }
                }
            }
            let Some(p) = pivot else { break };
            if p != r {
                h.swap_rows(p, r);
                u.swap_rows(p, r);
            }
            let mut done = true;
            for i in (r + 1)..h.rows() {
                if h.data[i][c].is_zero() {
                    continue;
                }
                let q = round_div(&h.data[i][c], &h.data[r][c]);
                h.shear(i, r, &q);
                u.shear(i, r, &q);
                if !h.data[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.data[r][c].is_zero() {
            continue;
        }
        if h.data[r][c].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        // Reduce entries above the pivot into [0, pivot).
        for j in 0..r {
            let q = h.data[j][c].div_floor(&h.data[r][c]);
            h.shear(j, r, &q);
            u.shear(j, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Nearest-integer quotient, used to shrink remainders fast.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    // Adjust so |a - q*b| <= |b|/2.
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Basis of the right kernel over Z: all x ∈ Zⁿ with m·x = 0. The basis
/// generates a saturated (primitive) sublattice because the rows of the
/// unimodular transform do.
pub fn integer_kernel(m: &IntMatrix) -> Vec<IntVector> {
    let n = m.cols();
    if m.rows() == 0 {
        return (0..n).map(|i| IntVector::unit(n, i)).collect();
    }
    if n == 0 {
        return Vec::new();
    }
    let t = m.transpose(); // n × rows
    let (h, u) = hnf(&t);
    let mut basis = Vec::new();
    for i in 0..h.rows() {
        if h.row(i).iter().all(|c| c.is_zero()) {
            basis.push(u.row_vector(i));
        }
    }
    basis
}

/// One integer solution x of m·x = b, if any exists.
pub fn solve_integer(m: &IntMatrix, b: &IntVector) -> Option<IntVector> {
    debug_assert_eq!(m.rows(), b.rank());
    let n = m.cols();
    if n == 0 {
        return if b.is_zero() {
            Some(IntVector::zero(0))
        } else {
            None
        };
    }
    let t = m.transpose(); // n × rows
    let (h, u) = hnf(&t);
    // Solve y·H = b by forward substitution along the staircase, then x = Uᵀ·y.
    let mut residual: Vec<BigInt> = b.coords().to_vec();
    let mut y = vec![BigInt::zero(); h.rows()];
    for i in 0..h.rows() {
        let Some(p) = h.row(i).iter().position(|c| !c.is_zero()) else {
            continue;
        };
        let (q, r) = residual[p].div_rem(&h.data[i][p]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for c in 0..h.cols() {
                let delta = &q * &h.data[i][c];
                residual[c] -= delta;
            }
        }
        y[i] = q;
    }
    if residual.iter().any(|c| !c.is_zero()) {
        return None;
    }
    // x = Uᵀ y
    let mut x = vec![BigInt::zero(); n];
    for i in 0..u.rows() {
        if y[i].is_zero() {
            continue;
        }
        for j in 0..n {
            let delta = &y[i] * &u.data[i][j];
            x[j] += delta;
        }
    }
    Some(IntVector::new(x))
}

/// Dense rational matrix with exact entries, normalised by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigRational>>,
}

impl RatMatrix {
    pub fn new(data: Vec<Vec<BigRational>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        debug_assert!(data.iter().all(|r| r.len() == cols));
        RatMatrix { rows, cols, data }
    }

    pub fn from_int_rows(rows: &[IntVector]) -> Self {
        RatMatrix::new(rows.iter().map(|r| r.to_rational()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i][j]
    }

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else {
                continue;
            };
            self.data.swap(p, r);
            let inv = self.data[r][c].recip();
            for j in 0..self.cols {
                self.data[r][j] *= &inv;
            }
            for i in 0..self.rows {
                if i != r && !self.data[i][c].is_zero() {
                    let f = self.data[i][c].clone();
                    for j in 0..self.cols {
                        let delta = &f * &self.data[r][j];
                        self.data[i][j] -= delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Nonzero rows after rref, each scaled to a primitive integer vector
    /// whose leading entry is positive.
    pub fn rref_primitive_rows(&self) -> Vec<IntVector> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut out = Vec::new();
        for i in 0..pivots.len() {
            let row = &m.data[i];
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
            let v = IntVector::new(ints).primitive().expect("nonzero rref row");
            out.push(v);
        }
        out
    }

    /// One rational solution x of self·x = b, if the system is consistent.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        debug_assert_eq!(b.len(), self.rows);
        let mut aug = RatMatrix::new(
            self.data
                .iter()
                .zip(b)
                .map(|(row, bi)| {
                    let mut r = row.clone();
                    r.push(bi.clone());
                    r
                })
                .collect(),
        );
        let pivots = aug.rref();
        // Inconsistency: a pivot in the augmented column.
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug.data[i][self.cols].clone();
        }
        Some(x)
    }
}
