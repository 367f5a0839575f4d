//! Finite-dimensional algebras over `Q` given by structure constants.

use crate::error::{Error, Result};
use crate::linalg::{vec_add, vec_scale, Vector};
use crate::par;
use crate::rational::Rational;

/// `table[i][j]` holds the coordinates of `b_i b_j` in the basis `b_0, ..`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureAlgebra {
    dim: usize,
    table: Vec<Vec<Vector>>,
    unit: Vector,
}

impl StructureAlgebra {
    pub fn new(table: Vec<Vec<Vector>>, unit: Vector) -> Result<StructureAlgebra> {
        let dim = table.len();
        let ok = unit.len() == dim
            && table
                .iter()
                .all(|row| row.len() == dim && row.iter().all(|v| v.len() == dim));
        if !ok {
            return Err(Error::Dimension("structure table is not dim × dim × dim".into()));
        }
        Ok(StructureAlgebra { dim, table, unit })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![Rational::ZERO; self.dim];
        v[i] = Rational::ONE;
        v
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Result<Vector> {
        let mut out = vec![Rational::ZERO; self.dim];
        for (i, ai) in a.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = ai.mul(bj)?;
                out = vec_add(&out, &vec_scale(&self.table[i][j], &c)?)?;
            }
        }
        Ok(out)
    }

    /// First basis triple violating `(b_i b_j) b_k = b_i (b_j b_k)`.
    pub fn associativity_failure(&self) -> Result<Option<(usize, usize, usize)>> {
        let n = self.dim;
        let hit = par::try_find_first(n, |i| {
            for j in 0..n {
                let left = &self.table[i][j];
                for k in 0..n {
                    let lhs = self.mul(left, &self.basis_vector(k))?;
                    let rhs = self.mul(&self.basis_vector(i), &self.table[j][k])?;
                    if lhs != rhs {
                        return Ok(Some((j, k)));
                    }
                }
            }
            Ok(None)
        })?;
        Ok(hit.map(|(i, (j, k))| (i, j, k)))
    }

    /// Whether the stored unit is a two-sided identity on the basis.
    pub fn unit_holds(&self) -> Result<bool> {
        for i in 0..self.dim {
            let b = self.basis_vector(i);
            if self.mul(&self.unit, &b)? != b || self.mul(&b, &self.unit)? != b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks that the linear map with the given images of basis vectors
    /// into `target` is multiplicative on basis pairs and unital.
    pub fn hom_failure(
        &self,
        target: &StructureAlgebra,
        images: &[Vector],
    ) -> Result<Option<HomFailure>> {
        if images.len() != self.dim || images.iter().any(|v| v.len() != target.dim) {
            return Err(Error::Dimension("images do not match the algebras".into()));
        }
        let apply = |v: &[Rational]| -> Result<Vector> {
            let mut out = vec![Rational::ZERO; target.dim];
            for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                out = vec_add(&out, &vec_scale(&images[i], c)?)?;
            }
            Ok(out)
        };
        if apply(&self.unit)? != target.unit {
            return Ok(Some(HomFailure::Unit));
        }
        let hit = par::try_find_first(self.dim, |i| {
            for j in 0..self.dim {
                let lhs = apply(&self.table[i][j])?;
                let rhs = target.mul(&images[i], &images[j])?;
                if lhs != rhs {
                    return Ok(Some(j));
                }
            }
            Ok(None)
        })?;
        Ok(hit.map(|(i, j)| HomFailure::Product(i, j)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomFailure {
    Unit,
    Product(usize, usize),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    /// Group algebra of Z/n.
    fn cyclic(n: usize) -> StructureAlgebra {
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = vec![r(0); n];
                        v[(i + j) % n] = r(1);
                        v
                    })
                    .collect()
            })
            .collect();
        let mut unit = vec![r(0); n];
        unit[0] = r(1);
        StructureAlgebra::new(table, unit).unwrap()
    }

    #[test]
    fn group_algebra_is_associative_with_unit() {
        let a = cyclic(4);
        assert_eq!(a.associativity_failure().unwrap(), None);
        assert!(a.unit_holds().unwrap());
        let x = vec![r(1), r(2), r(0), r(0)];
        let y = vec![r(0), r(1), r(0), r(3)];
        assert_eq!(a.mul(&x, &y).unwrap(), vec![r(6), r(1), r(2), r(3)]);
    }

    #[test]
    fn detects_non_associativity() {
        let mut a = cyclic(3);
        a.table[1][1] = vec![r(1), r(0), r(0)];
        assert!(a.associativity_failure().unwrap().is_some());
    }

    #[test]
    fn homomorphism_checks() {
        let a = cyclic(4);
        let b = cyclic(2);
        // Z/4 -> Z/2, reduction mod 2
        let images: Vec<Vector> = (0..4).map(|i| b.basis_vector(i % 2)).collect();
        assert_eq!(a.hom_failure(&b, &images).unwrap(), None);
        let bad: Vec<Vector> = (0..4).map(|_| b.basis_vector(1)).collect();
        assert_eq!(a.hom_failure(&b, &bad).unwrap(), Some(HomFailure::Unit));
        assert!(a.hom_failure(&b, &images[..2]).is_err());
    }
}
