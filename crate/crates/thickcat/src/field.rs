//! Exact dense linear algebra over a prime field.
//!
//! Everything downstream (Hom spaces, Ext groups, cone computations) reduces
//! to row reduction of small dense matrices over `F_p`. Pivoting is
//! deterministic (first nonzero entry), so all outputs are reproducible
//! bit-for-bit.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// A prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
}

impl FieldSpec {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a % self.p * (b % self.p) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "division by zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.p;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense matrix over a prime field, entries stored row-major and reduced mod p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub field: FieldSpec,
    entries: Vec<u64>,
}

impl Mat {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, field, entries: vec![0; rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<u64>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| x % field.p()));
        }
        Mat { rows: r, cols: c, field, entries }
    }

    /// Column vector from a slice.
    pub fn column(field: FieldSpec, v: &[u64]) -> Mat {
        let mut m = Mat::zeros(field, v.len(), 1);
        for (i, &x) in v.iter().enumerate() {
            m.set(i, 0, x);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = v % self.field.p();
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let p = f.p();
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, (cur + a * other.get(k, j)) % p);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.field.add(self.get(i, j), other.get(i, j)));
            }
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.field.sub(self.get(i, j), other.get(i, j)));
            }
        }
        out
    }

    pub fn neg(&self) -> Mat {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = self.field.neg(*e);
        }
        out
    }

    pub fn scale(&self, c: u64) -> Mat {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = self.field.mul(*e, c);
        }
        out
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut out = Mat::zeros(self.field, self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                out.set(self.rows + i, j, other.get(i, j));
            }
        }
        out
    }

    /// Reduced row echelon form with deterministic first-nonzero pivoting.
    /// Returns the reduced matrix, the rank, and the pivot columns.
    pub fn rref(&self) -> (Mat, usize, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            // first nonzero entry in this column at or below `row`
            let mut pr = None;
            for r in row..m.rows {
                if m.get(r, col) != 0 {
                    pr = Some(r);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            if pr != row {
                for j in 0..m.cols {
                    let a = m.get(row, j);
                    let b = m.get(pr, j);
                    m.set(row, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = f.inv(m.get(row, col));
            for j in 0..m.cols {
                m.set(row, j, f.mul(m.get(row, j), inv));
            }
            for r in 0..m.rows {
                if r != row && m.get(r, col) != 0 {
                    let c = m.get(r, col);
                    for j in 0..m.cols {
                        let v = f.sub(m.get(r, j), f.mul(c, m.get(row, j)));
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, row, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Solve `A x = b` for one solution, where `b` may have several columns.
    /// Returns `None` when the system is inconsistent.
    pub fn solve(&self, b: &Mat) -> Option<Mat> {
        if self.rows != b.rows {
            return None;
        }
        let aug = self.hstack(b);
        let (red, _, pivots) = aug.rref();
        // inconsistent iff a pivot lands in the b-block
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.field, self.cols, b.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(c, j, red.get(r, self.cols + j));
            }
        }
        Some(x)
    }

    /// Basis of the kernel, as columns of the returned matrix.
    pub fn kernel_basis(&self) -> Mat {
        let f = self.field;
        let (red, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for r in 0..rank {
                let pc = pivots[r];
                out.set(pc, k, f.neg(red.get(r, fc)));
            }
        }
        out
    }

    /// Canonical basis of the column space, as columns (rref of the row space
    /// of the transpose).
    pub fn column_space(&self) -> Mat {
        let (red, rank, _) = self.transpose().rref();
        let mut out = Mat::zeros(self.field, self.rows, rank);
        for r in 0..rank {
            for j in 0..self.rows {
                out.set(j, r, red.get(r, j));
            }
        }
        out
    }
}

/// Sum of subspaces, each given by a matrix of basis columns in the same
/// ambient space. Returns a canonical basis.
pub fn subspace_sum(field: FieldSpec, ambient_dim: usize, bases: &[&Mat]) -> Mat {
    let mut acc = Mat::zeros(field, ambient_dim, 0);
    for b in bases {
        assert_eq!(b.rows, ambient_dim, "subspace ambient mismatch");
        acc = acc.hstack(b);
    }
    acc.column_space()
}

pub fn subspace_equal(b1: &Mat, b2: &Mat) -> bool {
    b1.column_space() == b2.column_space()
}

/// Does the span of `space` contain the column vector `v`?
pub fn subspace_contains(space: &Mat, v: &Mat) -> bool {
    space.solve(v).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    #[test]
    fn field_validation() {
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(0).is_err());
        assert!(FieldSpec::new(2).is_ok());
        assert!(FieldSpec::new(101).is_ok());
    }

    #[test]
    fn rref_identity() {
        let m = Mat::identity(f(101), 3);
        let (r, rank, _) = m.rref();
        assert_eq!(r, m);
        assert_eq!(rank, 3);
    }

    #[test]
    fn rref_zero() {
        let m = Mat::zeros(f(101), 2, 4);
        let (r, rank, _) = m.rref();
        assert_eq!(r, m);
        assert_eq!(rank, 0);
    }

    #[test]
    fn rref_mod2() {
        let m = Mat::from_rows(f(2), &[vec![1, 1], vec![1, 1]]);
        let (r, rank, _) = m.rref();
        assert_eq!(r, Mat::from_rows(f(2), &[vec![1, 1], vec![0, 0]]));
        assert_eq!(rank, 1);
    }

    #[test]
    fn rref_idempotent() {
        let m = Mat::from_rows(f(5), &[vec![1, 2, 3], vec![4, 0, 1], vec![2, 4, 1]]);
        let (r1, _, _) = m.rref();
        let (r2, _, _) = r1.rref();
        assert_eq!(r1, r2);
    }

    #[test]
    fn solve_identity() {
        let a = Mat::identity(f(7), 3);
        let b = Mat::column(f(7), &[1, 5, 6]);
        assert_eq!(a.solve(&b).unwrap(), b);
    }

    #[test]
    fn solve_inconsistent() {
        let a = Mat::zeros(f(7), 2, 2);
        let b = Mat::column(f(7), &[1, 0]);
        assert!(a.solve(&b).is_none());
    }

    #[test]
    fn solve_substitute_back() {
        let a = Mat::from_rows(f(5), &[vec![1, 2], vec![0, 1]]);
        let b = Mat::column(f(5), &[0, 1]);
        let x = a.solve(&b).unwrap();
        assert_eq!(x, Mat::column(f(5), &[3, 1]));
        assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn kernel_identity_and_zero() {
        assert_eq!(Mat::identity(f(101), 4).kernel_basis().cols, 0);
        assert_eq!(Mat::zeros(f(101), 3, 3).kernel_basis().cols, 3);
    }

    #[test]
    fn rank_nullity() {
        let m = Mat::from_rows(f(101), &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 0, 1]]);
        assert_eq!(m.rank() + m.kernel_basis().cols, m.cols);
        // kernel vectors actually lie in the kernel
        let k = m.kernel_basis();
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn subspace_ops() {
        let field = f(101);
        let e1 = Mat::column(field, &[1, 0]);
        let e2 = Mat::column(field, &[0, 1]);
        let sum = subspace_sum(field, 2, &[&e1, &e2]);
        assert_eq!(sum.cols, 2);
        assert!(subspace_equal(&sum, &Mat::identity(field, 2)));
        assert!(subspace_contains(&sum, &Mat::column(field, &[5, 7])));
    }

    #[test]
    fn subspace_equal_under_rref_change() {
        let field = f(5);
        let b = Mat::from_rows(field, &[vec![1, 2], vec![3, 4], vec![0, 1]]);
        let canon = b.column_space();
        assert!(subspace_equal(&b, &canon));
    }
}
