//! Dense matrices over a [`Field`].

use std::fmt;

use super::field::Field;
use super::AlgebraError;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.tag())?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form with pivot columns.
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Matrix<F> {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Matrix<F> {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Matrix<F>, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Ragged);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Matrix<F> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_i64(field: &F, rows: &[Vec<i64>]) -> Matrix<F> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Matrix::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut F::Elem {
        &mut self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }
    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Matrix<F> {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<G: Field>(&self, field: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix {
            field: field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<G: Field, E>(&self, field: &G, f: impl Fn(&F::Elem) -> Result<G::Elem, E>) -> Result<Matrix<G>, E> {
        Ok(Matrix {
            field: field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, E>>()?,
        })
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Shape {
                op: "mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let na = f.neg(a);
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        f.sub_mul_assign(out.get_mut(i, j), &na, b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip(
        &self,
        other: &Matrix<F>,
        op: &'static str,
        g: impl Fn(&F::Elem, &F::Elem) -> F::Elem,
    ) -> Result<Matrix<F>, AlgebraError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(AlgebraError::Shape {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| g(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Matrix<F>) -> Result<Matrix<F>, AlgebraError> {
        self.zip(other, "add", |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Matrix<F>) -> Result<Matrix<F>, AlgebraError> {
        self.zip(other, "sub", |a, b| self.field.sub(a, b))
    }

    pub fn scale(&self, c: &F::Elem) -> Matrix<F> {
        self.map(&self.field, |x| self.field.mul(c, x))
    }

    pub fn neg(&self) -> Matrix<F> {
        self.map(&self.field, |x| self.field.neg(x))
    }

    pub fn conj(&self) -> Matrix<F> {
        self.map(&self.field, |x| self.field.conj(x))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix<F> {
        self.transpose().conj()
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc = f.add(&acc, &f.mul(a, b));
                }
                acc
            })
            .collect()
    }

    pub fn hstack(&self, other: &Matrix<F>) -> Result<Matrix<F>, AlgebraError> {
        if self.rows != other.rows {
            return Err(AlgebraError::Shape {
                op: "hstack",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(Matrix::from_fn(
            &self.field,
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j).clone()
                } else {
                    other.get(i, j - self.cols).clone()
                }
            },
        ))
    }

    pub fn vstack(&self, other: &Matrix<F>) -> Result<Matrix<F>, AlgebraError> {
        if self.cols != other.cols {
            return Err(AlgebraError::Shape {
                op: "vstack",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn block_diag(&self, other: &Matrix<F>) -> Matrix<F> {
        let f = &self.field;
        Matrix::from_fn(f, self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => f.zero(),
            }
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<F> {
        Matrix::from_fn(&self.field, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    pub fn rank(&self) -> usize {
        F::rank_of(self)
    }

    pub fn det(&self) -> Result<F::Elem, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::NotSquare(self.rows, self.cols));
        }
        Ok(F::det_of(self).unwrap_or_else(|| self.field.zero()))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Reduced row echelon form; the pivot in each column is the first
    /// nonzero entry at or below the current row.
    pub fn rref(&self) -> Rref<F> {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            let pivot_row: Vec<F::Elem> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for (k, pv) in pivot_row.iter().enumerate() {
                    if !f.is_zero(pv) {
                        f.sub_mul_assign(m.get_mut(i, c + k), &factor, pv);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rank by forward elimination.
    pub fn gauss_rank(&self) -> usize {
        let f = &self.field;
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for i in r + 1..m.rows {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                for j in c..m.cols {
                    let pv = m.get(r, j).clone();
                    if !f.is_zero(&pv) {
                        f.sub_mul_assign(m.get_mut(i, j), &factor, &pv);
                    }
                }
            }
            r += 1;
        }
        r
    }

    pub fn gauss_det(&self) -> Option<F::Elem> {
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Some(f.zero());
            };
            if p != c {
                m.swap_rows(c, p);
                det = f.neg(&det);
            }
            det = f.mul(&det, m.get(c, c));
            let inv = f.inv(m.get(c, c)).expect("nonzero pivot");
            for i in c + 1..n {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                for j in c..n {
                    let pv = m.get(c, j).clone();
                    f.sub_mul_assign(m.get_mut(i, j), &factor, &pv);
                }
            }
        }
        Some(det)
    }

    /// Basis of the right kernel, as the columns of the returned matrix.
    /// Each basis vector has a 1 in one free column and zeros in the others.
    pub fn kernel(&self) -> Matrix<F> {
        let f = &self.field;
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (t, &fc) in free.iter().enumerate() {
            k.set(fc, t, f.one());
            for (row, &pc) in pivots.iter().enumerate() {
                k.set(pc, t, f.neg(matrix.get(row, fc)));
            }
        }
        k
    }

    /// Kernel basis as a list of vectors.
    pub fn kernel_vectors(&self) -> Vec<Vec<F::Elem>> {
        let k = self.kernel();
        (0..k.cols()).map(|j| k.column(j)).collect()
    }

    /// Basis of the left kernel (vectors `y` with `y A = 0`).
    pub fn left_kernel_vectors(&self) -> Vec<Vec<F::Elem>> {
        self.transpose().kernel_vectors()
    }

    /// A particular solution of `A x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let bcol = Matrix::from_fn(f, self.rows, 1, |i, _| b[i].clone());
        let aug = self.hstack(&bcol).expect("same rows");
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Solves `A X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix<F>) -> Option<Matrix<F>> {
        let cols: Option<Vec<Vec<F::Elem>>> = (0..b.cols()).map(|j| self.solve(&b.column(j))).collect();
        let cols = cols?;
        Some(Matrix::from_fn(&self.field, self.cols, b.cols(), |i, j| {
            cols[j][i].clone()
        }))
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(&self.field, self.rows);
        let aug = self.hstack(&id).expect("same rows");
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < self.rows || pivots[self.rows - 1] >= self.cols {
            return None;
        }
        let all: Vec<usize> = (0..self.rows).collect();
        let right: Vec<usize> = (self.cols..2 * self.cols).collect();
        Some(matrix.submatrix(&all, &right))
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Matrix<F>) -> Matrix<F> {
        let f = &self.field;
        Matrix::from_fn(f, self.rows * other.rows, self.cols * other.cols, |i, j| {
            f.mul(
                self.get(i / other.rows, j / other.cols),
                other.get(i % other.rows, j % other.cols),
            )
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};

    fn qm(rows: &[Vec<i64>]) -> Matrix<Rationals> {
        Matrix::from_i64(&Rationals, rows)
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(qm(&[vec![1, 2], vec![2, 4]]).rank(), 1);
        assert_eq!(qm(&[vec![1, 2], vec![2, 4]]).gauss_rank(), 1);
    }

    #[test]
    fn kernel_of_row() {
        let k = qm(&[vec![1, 1]]).kernel_vectors();
        assert_eq!(k, vec![vec![Rationals.from_i64(-1), Rationals.from_i64(1)]]);
    }

    #[test]
    fn solve_upper_triangular() {
        let x = qm(&[vec![1, 1], vec![0, 1]])
            .solve(&[Rationals.from_i64(3), Rationals.from_i64(1)])
            .unwrap();
        assert_eq!(x, vec![Rationals.from_i64(2), Rationals.from_i64(1)]);
    }

    #[test]
    fn inconsistent_system() {
        let a = qm(&[vec![1, 1], vec![1, 1]]);
        assert!(a.solve(&[Rationals.from_i64(1), Rationals.from_i64(2)]).is_none());
    }

    #[test]
    fn inverse_and_det() {
        let a = qm(&[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(&Rationals, 2));
        assert_eq!(a.det().unwrap(), Rationals.from_i64(1));
        assert!(qm(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn prime_field_rank_can_drop() {
        let f = PrimeField::new(5).unwrap();
        let a = Matrix::from_i64(&f, &[vec![1, 2], vec![3, 1]]);
        assert_eq!(a.rank(), 1);
        assert_eq!(qm(&[vec![1, 2], vec![3, 1]]).rank(), 2);
    }

    #[test]
    fn kron_shape() {
        let a = qm(&[vec![1, 2]]);
        let b = qm(&[vec![1], vec![3]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(k.get(1, 1), &Rationals.from_i64(6));
    }
}
