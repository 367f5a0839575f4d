//! Dense exact linear algebra over [`Rational`]: products, rank, row
//! reduction, span bases, coordinates, inverses and subspace intersection.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Vector = Vec<Rational>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vector]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows.concat() })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension("column length mismatch".into()));
            }
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, *v);
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

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(&b)?)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::Dimension("vector length mismatch".into()));
        }
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .try_fold(Rational::ZERO, |acc, (a, b)| acc.add(&a.mul(b)?))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, c: &Rational) -> Result<Matrix> {
        let data = self.data.iter().map(|v| v.mul(c)).collect::<Result<_>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    fn zip_with(
        &self,
        other: &Matrix,
        f: impl Fn(&Rational, &Rational) -> Result<Rational>,
    ) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(a, b))
            .collect::<Result<_>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j { v.is_one() } else { v.is_zero() }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>)> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip()?;
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv)?;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).sub(&f.mul(&m.get(r, j))?)?;
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok((m, pivots))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Rational::ONE);
        }
        let (red, pivots) = aug.rref()?;
        if pivots.len() < n || pivots[n - 1] >= n {
            return Ok(None);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, n + j));
            }
        }
        Ok(Some(inv))
    }

    /// Basis of the null space `{v : self * v = 0}`.
    pub fn null_space(&self) -> Result<Vec<Vector>> {
        let (red, pivots) = self.rref()?;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::ZERO; self.cols];
            v[f] = Rational::ONE;
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = red.get(row, f).neg();
            }
            basis.push(v);
        }
        Ok(basis)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Canonical basis (nonzero rows of the RREF) of the span of `vectors`, all of length `dim`.
///
/// Two spans are equal iff their canonical bases are equal.
pub fn span_basis(dim: usize, vectors: &[Vector]) -> Result<Vec<Vector>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let m = Matrix::from_rows(vectors)?;
    if m.cols() != dim {
        return Err(Error::Dimension("vector length mismatch".into()));
    }
    let (red, pivots) = m.rref()?;
    Ok((0..pivots.len()).map(|i| red.row(i).to_vec()).collect())
}

/// Coordinates of `v` in `basis`, or `None` when `v` is outside the span.
pub fn coordinates(basis: &[Vector], v: &[Rational]) -> Result<Option<Vector>> {
    let dim = v.len();
    if basis.is_empty() {
        return Ok(v.iter().all(Rational::is_zero).then(Vec::new));
    }
    let k = basis.len();
    let mut aug = Matrix::zeros(dim, k + 1);
    for (j, b) in basis.iter().enumerate() {
        if b.len() != dim {
            return Err(Error::Dimension("basis vector length mismatch".into()));
        }
        for i in 0..dim {
            aug.set(i, j, b[i]);
        }
    }
    for (i, x) in v.iter().enumerate() {
        aug.set(i, k, *x);
    }
    let (red, pivots) = aug.rref()?;
    if pivots.contains(&k) {
        return Ok(None);
    }
    if pivots.len() < k {
        return Err(Error::Dimension("basis is linearly dependent".into()));
    }
    Ok(Some((0..k).map(|i| red.get(i, k)).collect()))
}

/// Canonical basis of the intersection of two spans.
pub fn intersect_spans(dim: usize, a: &[Vector], b: &[Vector]) -> Result<Vec<Vector>> {
    let a = span_basis(dim, a)?;
    let b = span_basis(dim, b)?;
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    // solve sum_i x_i a_i - sum_j y_j b_j = 0
    let mut cols = a.clone();
    cols.extend(b.iter().map(|v| v.iter().map(Rational::neg).collect::<Vector>()));
    let m = Matrix::from_columns(dim, &cols)?;
    let mut out = Vec::new();
    for kv in m.null_space()? {
        let mut v = vec![Rational::ZERO; dim];
        for (coef, basis_vec) in kv.iter().zip(&a) {
            if coef.is_zero() {
                continue;
            }
            for (slot, x) in v.iter_mut().zip(basis_vec) {
                *slot = slot.add(&coef.mul(x)?)?;
            }
        }
        out.push(v);
    }
    span_basis(dim, &out)
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> Result<Vector> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn vec_sub(a: &[Rational], b: &[Rational]) -> Result<Vector> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn vec_scale(a: &[Rational], c: &Rational) -> Result<Vector> {
    a.iter().map(|x| x.mul(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn ints(rows: &[&[i64]]) -> Matrix {
        let rows: Vec<Vector> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
            .collect();
        Matrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank().unwrap(), 2);
        assert_eq!(Matrix::identity(4).rank().unwrap(), 4);
        assert_eq!(Matrix::zeros(3, 3).rank().unwrap(), 0);
    }

    #[test]
    fn inverse_round_trip() {
        let m = ints(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(ints(&[&[1, 2], &[2, 4]]).inverse().unwrap().is_none());
    }

    #[test]
    fn null_space_is_annihilated() {
        let m = ints(&[&[1, 1, 0], &[0, 1, 1]]);
        let ns = m.null_space().unwrap();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).unwrap().iter().all(Rational::is_zero));
    }

    #[test]
    fn coordinates_and_membership() {
        let basis = vec![vec![q(1, 1), q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1), q(1, 1)]];
        let v = vec![q(2, 1), q(5, 2), q(1, 2)];
        assert_eq!(coordinates(&basis, &v).unwrap(), Some(vec![q(2, 1), q(1, 2)]));
        let outside = vec![q(1, 1), q(0, 1), q(0, 1)];
        assert_eq!(coordinates(&basis, &outside).unwrap(), None);
    }

    #[test]
    fn intersection_of_planes() {
        let one = Rational::ONE;
        let zero = Rational::ZERO;
        let xy = vec![vec![one, zero, zero], vec![zero, one, zero]];
        let yz = vec![vec![zero, one, zero], vec![zero, zero, one]];
        let meet = intersect_spans(3, &xy, &yz).unwrap();
        assert_eq!(meet, vec![vec![zero, one, zero]]);
    }
}
