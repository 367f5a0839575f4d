//! The Hecke algebra `H(G, H)` as bi-invariant functions on `G`, stored by
//! their value on each double coset.
//!
//! Operators on `F(G/H)` and functions correspond through
//! `matrix[t][s] = f(t s^{-1})`; under this dictionary composition of
//! operators is convolution of functions.

use std::collections::BTreeMap;

use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::pair::HeckePair;
use crate::par;
use crate::rational::Rational;

/// A bi-invariant function, by its value on each double coset (in the
/// order of the pair's double coset space).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeckeElement {
    coeffs: Vec<Rational>,
}

impl HeckeElement {
    pub fn from_values(coeffs: Vec<Rational>) -> HeckeElement {
        HeckeElement { coeffs }
    }

    pub fn values(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add(&self, other: &HeckeElement) -> Result<HeckeElement> {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(HeckeElement { coeffs })
    }

    pub fn scale(&self, c: &Rational) -> Result<HeckeElement> {
        let coeffs = self.coeffs.iter().map(|a| a.mul(c)).collect::<Result<_>>()?;
        Ok(HeckeElement { coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }
}

/// Sparse convolution table: `(f*g)(c) = Σ count · f(a) · g(b)`.
type ConvTable = Vec<Vec<(usize, usize, i64)>>;

#[derive(Debug, Clone)]
pub struct HeckeAlgebra<'g> {
    pair: HeckePair<'g>,
    conv: ConvTable,
    /// Double coset of `x^{-1}` for the representative of each double coset.
    inverse_block: Vec<usize>,
}

impl<'g> HeckeAlgebra<'g> {
    pub fn new(pair: HeckePair<'g>) -> HeckeAlgebra<'g> {
        let g = pair.group();
        let dc = pair.double_cosets();
        let right = pair.right_cosets().reps();
        let conv = par::map_range(dc.len(), |c| {
            let t = dc.rep(c);
            let mut counts: BTreeMap<(usize, usize), i64> = BTreeMap::new();
            for &s in right {
                let a = dc.block_of(g.mul(t, g.inv(s)));
                *counts.entry((a, dc.block_of(s))).or_default() += 1;
            }
            counts.into_iter().map(|((a, b), n)| (a, b, n)).collect()
        });
        let inverse_block = dc.reps().iter().map(|&x| dc.block_of(g.inv(x))).collect();
        HeckeAlgebra { pair, conv, inverse_block }
    }

    pub fn pair(&self) -> &HeckePair<'g> {
        &self.pair
    }

    pub fn dim(&self) -> usize {
        self.pair.num_double_cosets()
    }

    pub fn zero(&self) -> HeckeElement {
        HeckeElement { coeffs: vec![Rational::ZERO; self.dim()] }
    }

    /// `1_{HxH}`
    pub fn indicator(&self, x: usize) -> HeckeElement {
        let mut f = self.zero();
        f.coeffs[self.pair.double_cosets().block_of(x)] = Rational::ONE;
        f
    }

    /// The unit `σ_1 = 1_H`.
    pub fn one(&self) -> HeckeElement {
        self.indicator(0)
    }

    /// Function form of `σ_x`: `(1/R(x)) 1_{HxH}`.
    pub fn sigma(&self, x: usize) -> Result<HeckeElement> {
        self.pair.group().check_index(x)?;
        let mut f = self.zero();
        f.coeffs[self.pair.double_cosets().block_of(x)] =
            Rational::new(1, self.pair.r(x) as i128)?;
        Ok(f)
    }

    /// `σ_x` for each double coset representative `x`.
    pub fn basis(&self) -> Result<Vec<HeckeElement>> {
        self.pair.double_cosets().reps().iter().map(|&x| self.sigma(x)).collect()
    }

    pub fn value(&self, f: &HeckeElement, t: usize) -> Rational {
        f.coeffs[self.pair.double_cosets().block_of(t)]
    }

    /// Coordinates in the basis `σ_x`: the value times `R(x)`.
    pub fn sigma_coords(&self, f: &HeckeElement) -> Result<Vector> {
        f.coeffs
            .iter()
            .zip(self.pair.hecke_data().r)
            .map(|(v, r)| v.mul_int(r as i64))
            .collect()
    }

    pub fn from_sigma_coords(&self, coords: &[Rational]) -> Result<HeckeElement> {
        let coeffs = coords
            .iter()
            .zip(self.pair.hecke_data().r)
            .map(|(v, r)| v.div(&Rational::from_int(r as i64)))
            .collect::<Result<_>>()?;
        Ok(HeckeElement { coeffs })
    }

    /// Rank of the operators of the basis, flattened to vectors.
    pub fn basis_rank(&self) -> Result<usize> {
        let rows: Vec<Vector> = self
            .basis()?
            .iter()
            .map(|f| {
                let m = self.to_operator(f);
                (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
            })
            .collect();
        Matrix::from_rows(&rows)?.rank()
    }

    /// `matrix[t][s] = f(t s^{-1})` over the right-coset representatives.
    pub fn to_operator(&self, f: &HeckeElement) -> Matrix {
        let g = self.pair.group();
        let reps = self.pair.right_cosets().reps();
        let mut m = Matrix::zeros(reps.len(), reps.len());
        for (i, &t) in reps.iter().enumerate() {
            for (j, &s) in reps.iter().enumerate() {
                m.set(i, j, self.value(f, g.mul(t, g.inv(s))));
            }
        }
        m
    }

    /// `f_a(t)` = coefficient of `δ_{Ht}` in `a(δ_H)`. Fails when `f_a` is
    /// not constant on a double coset or `a` is not the operator of `f_a`.
    pub fn from_operator(&self, a: &Matrix) -> Result<HeckeElement> {
        let n = self.pair.index();
        if a.rows() != n || a.cols() != n {
            return Err(Error::Dimension(format!("operator is {}×{}, module has dimension {n}", a.rows(), a.cols())));
        }
        let right = self.pair.right_cosets();
        let dc = self.pair.double_cosets();
        let mut coeffs: Vec<Option<Rational>> = vec![None; dc.len()];
        for (i, &t) in right.reps().iter().enumerate() {
            let v = a.get(i, 0);
            let slot = &mut coeffs[dc.block_of(t)];
            match slot {
                None => *slot = Some(v),
                Some(prev) if *prev != v => return Err(Error::NotInHeckeAlgebra { element: t }),
                _ => {}
            }
        }
        let f = HeckeElement {
            coeffs: coeffs.into_iter().map(|c| c.unwrap_or(Rational::ZERO)).collect(),
        };
        let back = self.to_operator(&f);
        if let Some(j) = (0..n).find(|&j| back.column(j) != a.column(j)) {
            return Err(Error::NotInHeckeAlgebra { element: right.rep(j) });
        }
        Ok(f)
    }

    /// `(f*g)(t) = Σ_{Hs} f(t s^{-1}) g(s)`.
    pub fn convolve(&self, f: &HeckeElement, g: &HeckeElement) -> Result<HeckeElement> {
        let coeffs = self
            .conv
            .iter()
            .map(|terms| {
                let mut acc = Rational::ZERO;
                for &(a, b, n) in terms {
                    let (fa, gb) = (&f.coeffs[a], &g.coeffs[b]);
                    if fa.is_zero() || gb.is_zero() {
                        continue;
                    }
                    acc = acc.add(&fa.mul(gb)?.mul_int(n)?)?;
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        Ok(HeckeElement { coeffs })
    }

    /// `f*(t) = Δ(t^{-1}) f(t^{-1})`.
    pub fn star(&self, f: &HeckeElement) -> Result<HeckeElement> {
        let reps = self.pair.double_cosets().reps();
        let g = self.pair.group();
        let coeffs = (0..self.dim())
            .map(|c| {
                let inv = g.inv(reps[c]);
                self.pair.delta(inv).mul(&f.coeffs[self.inverse_block[c]])
            })
            .collect::<Result<_>>()?;
        Ok(HeckeElement { coeffs })
    }

    /// `f#(t) = f(t^{-1})`.
    pub fn sharp(&self, f: &HeckeElement) -> HeckeElement {
        HeckeElement {
            coeffs: self.inverse_block.iter().map(|&b| f.coeffs[b]).collect(),
        }
    }

    /// The algebra in the basis `σ_x`, with unit `σ_1`.
    pub fn structure(&self) -> Result<StructureAlgebra> {
        let basis = self.basis()?;
        let table = par::try_map_range(basis.len(), |i| {
            basis
                .iter()
                .map(|b| self.sigma_coords(&self.convolve(&basis[i], b)?))
                .collect::<Result<Vec<_>>>()
        })?;
        let mut unit = vec![Rational::ZERO; self.dim()];
        unit[0] = Rational::ONE;
        StructureAlgebra::new(table, unit)
    }

    /// Round trip and composition checks over all basis pairs. Returns the
    /// first basis index pair that fails.
    pub fn dictionary_failure(&self) -> Result<Option<(usize, usize)>> {
        let basis = self.basis()?;
        let ops: Vec<Matrix> = basis.iter().map(|f| self.to_operator(f)).collect();
        for (i, f) in basis.iter().enumerate() {
            if self.from_operator(&ops[i])? != *f {
                return Ok(Some((i, i)));
            }
        }
        let hit = par::try_find_first(basis.len(), |i| {
            for j in 0..basis.len() {
                let lhs = self.to_operator(&self.convolve(&basis[i], &basis[j])?);
                if lhs != ops[i].mul(&ops[j])? {
                    return Ok(Some(j));
                }
            }
            Ok(None)
        })?;
        Ok(hit)
    }

    /// Involution laws on all basis pairs.
    pub fn involution_report(&self) -> Result<InvolutionReport> {
        let basis = self.basis()?;
        let g = self.pair.group();
        let reps = self.pair.double_cosets().reps();
        let mut report = InvolutionReport {
            star_involutive: true,
            sharp_involutive: true,
            star_anti_multiplicative: true,
            sharp_anti_multiplicative: true,
            star_of_sigma: true,
            star_is_form_adjoint: true,
        };
        for (i, f) in basis.iter().enumerate() {
            report.star_involutive &= self.star(&self.star(f)?)? == *f;
            report.sharp_involutive &= self.sharp(&self.sharp(f)) == *f;
            report.star_of_sigma &= self.star(f)? == self.sigma(g.inv(reps[i]))?;
            let adj = crate::module_space::form_adjoint(&self.pair, &self.to_operator(f))?;
            report.star_is_form_adjoint &= adj == self.to_operator(&self.star(f)?);
            for h in &basis {
                let fh = self.convolve(f, h)?;
                report.star_anti_multiplicative &=
                    self.star(&fh)? == self.convolve(&self.star(h)?, &self.star(f)?)?;
                report.sharp_anti_multiplicative &=
                    self.sharp(&fh) == self.convolve(&self.sharp(h), &self.sharp(f))?;
            }
        }
        Ok(report)
    }

    /// `λ(x) = +sqrt(Δ(x))`, which is multiplicative whenever it exists.
    pub fn derive_lambda(&self) -> Result<Vec<Rational>> {
        let delta: Vec<Rational> = self.pair.group().elements().map(|x| self.pair.delta(x)).collect();
        positive_square_roots(&delta)
    }

    /// Validates `λ` and returns the map `Λ(f)(x) = λ(x) f(x)`.
    pub fn lambda_isomorphism(&self, lambda: &[Rational]) -> Result<LambdaMap> {
        let g = self.pair.group();
        if lambda.len() != g.order() {
            return Err(Error::Lambda(format!("expected {} values, got {}", g.order(), lambda.len())));
        }
        for x in g.elements() {
            if lambda[x].mul(&lambda[x])? != self.pair.delta(x) {
                return Err(Error::Lambda(format!("λ({x})² ≠ Δ({x})")));
            }
            for y in g.elements() {
                if lambda[g.mul(x, y)] != lambda[x].mul(&lambda[y])? {
                    return Err(Error::Lambda(format!("not multiplicative at ({x}, {y})")));
                }
            }
        }
        // without this Λ(f) would fail to be bi-invariant
        if let Some(&h) = self.pair.subgroup().elements().iter().find(|&&h| !lambda[h].is_one()) {
            return Err(Error::Lambda(format!("λ({h}) ≠ 1 on an element of H")));
        }
        let weights = self.pair.double_cosets().reps().iter().map(|&x| lambda[x]).collect();
        Ok(LambdaMap { weights })
    }

    /// Checks that `Λ` is bijective, multiplicative and carries `*` to `#`
    /// on all basis elements.
    pub fn lambda_holds(&self, map: &LambdaMap) -> Result<bool> {
        if map.weights.iter().any(Rational::is_zero) {
            return Ok(false);
        }
        let basis = self.basis()?;
        for f in &basis {
            if map.apply(&self.star(f)?)? != self.sharp(&map.apply(f)?) {
                return Ok(false);
            }
            for h in &basis {
                let lhs = map.apply(&self.convolve(f, h)?)?;
                if lhs != self.convolve(&map.apply(f)?, &map.apply(h)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Positive rational square root of every entry, or an error naming the
/// first entry without one.
pub fn positive_square_roots(values: &[Rational]) -> Result<Vec<Rational>> {
    values
        .iter()
        .enumerate()
        .map(|(i, d)| {
            d.sqrt()
                .filter(|r| !r.is_zero())
                .ok_or_else(|| Error::Lambda(format!("Δ at element {i} is {d}, which has no square root in Q")))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaMap {
    weights: Vec<Rational>,
}

impl LambdaMap {
    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn apply(&self, f: &HeckeElement) -> Result<HeckeElement> {
        let coeffs = f
            .coeffs
            .iter()
            .zip(&self.weights)
            .map(|(v, w)| v.mul(w))
            .collect::<Result<_>>()?;
        Ok(HeckeElement { coeffs })
    }

    pub fn is_identity(&self) -> bool {
        self.weights.iter().all(Rational::is_one)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvolutionReport {
    pub star_involutive: bool,
    pub sharp_involutive: bool,
    pub star_anti_multiplicative: bool,
    pub sharp_anti_multiplicative: bool,
    pub star_of_sigma: bool,
    pub star_is_form_adjoint: bool,
}

impl InvolutionReport {
    pub fn holds(&self) -> bool {
        self.star_involutive
            && self.sharp_involutive
            && self.star_anti_multiplicative
            && self.sharp_anti_multiplicative
            && self.star_of_sigma
            && self.star_is_form_adjoint
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{generate_subgroup, Family, GroupTable, Subgroup};
    use crate::module_space::{rho_op, sigma_op};

    fn el(g: &GroupTable, l: &str) -> usize {
        g.elements().find(|&x| g.label(x) == l).unwrap()
    }

    fn d4_algebra(g: &GroupTable) -> HeckeAlgebra<'_> {
        let h = generate_subgroup(g, &[el(g, "s")]).unwrap();
        HeckeAlgebra::new(HeckePair::new(g, h).unwrap())
    }

    #[test]
    fn dictionary_on_d4() {
        let g = GroupTable::builtin(Family::Dihedral(4), 100).unwrap();
        let alg = d4_algebra(&g);
        assert_eq!(alg.dim(), 3);
        assert!(alg.to_operator(&alg.one()).is_identity());
        assert_eq!(alg.from_operator(&Matrix::identity(4)).unwrap(), alg.one());
        let r = el(&g, "r");
        let sr = sigma_op(alg.pair(), r).unwrap();
        let f = alg.from_operator(&sr).unwrap();
        assert_eq!(f, alg.sigma(r).unwrap());
        assert_eq!(alg.value(&f, r), Rational::new(1, 2).unwrap());
        assert_eq!(alg.to_operator(&f), sr);
        assert_eq!(alg.dictionary_failure().unwrap(), None);
        let rho = rho_op(alg.pair(), r).unwrap();
        assert!(matches!(alg.from_operator(&rho), Err(Error::NotInHeckeAlgebra { .. })));
    }

    #[test]
    fn golden_product_on_d4() {
        let g = GroupTable::builtin(Family::Dihedral(4), 100).unwrap();
        let alg = d4_algebra(&g);
        let sr = alg.sigma(el(&g, "r")).unwrap();
        let lhs = alg.convolve(&sr, &sr).unwrap();
        let half = Rational::new(1, 2).unwrap();
        let rhs = alg
            .one()
            .add(&alg.sigma(el(&g, "r^2")).unwrap())
            .unwrap()
            .scale(&half)
            .unwrap();
        assert_eq!(lhs, rhs);
        let s = alg.structure().unwrap();
        assert_eq!(s.associativity_failure().unwrap(), None);
        assert!(s.unit_holds().unwrap());
    }

    #[test]
    fn involutions_on_s4_pairs() {
        let g = GroupTable::builtin(Family::Symmetric(4), 100).unwrap();
        for h in crate::group::all_subgroups(&g) {
            let alg = HeckeAlgebra::new(HeckePair::new(&g, h).unwrap());
            let rep = alg.involution_report().unwrap();
            assert!(rep.holds(), "{rep:?}");
            let lam = alg.lambda_isomorphism(&alg.derive_lambda().unwrap()).unwrap();
            assert!(lam.is_identity());
            assert!(alg.lambda_holds(&lam).unwrap());
        }
    }

    #[test]
    fn sign_character_lambda() {
        let g = GroupTable::builtin(Family::Symmetric(3), 100).unwrap();
        let sign: Vec<Rational> = g
            .elements()
            .map(|x| Rational::from_int(if g.element_order(x) == 2 { -1 } else { 1 }))
            .collect();
        let trivial = HeckeAlgebra::new(HeckePair::new(&g, Subgroup::trivial(&g)).unwrap());
        let map = trivial.lambda_isomorphism(&sign).unwrap();
        assert!(!map.is_identity());
        assert!(trivial.lambda_holds(&map).unwrap());
        let h = generate_subgroup(&g, &[el(&g, "(1,2)")]).unwrap();
        let alg = HeckeAlgebra::new(HeckePair::new(&g, h).unwrap());
        assert!(matches!(alg.lambda_isomorphism(&sign), Err(Error::Lambda(_))));
        let mut bad = sign.clone();
        bad[1] = Rational::from_int(2);
        assert!(trivial.lambda_isomorphism(&bad).is_err());
    }

    #[test]
    fn lambda_needs_rational_roots() {
        let delta = [Rational::ONE, Rational::from_int(4), Rational::from_int(2)];
        let err = positive_square_roots(&delta).unwrap_err();
        assert!(err.to_string().contains("element 2"), "{err}");
        assert_eq!(positive_square_roots(&delta[..2]).unwrap()[1], Rational::from_int(2));
    }

    #[test]
    fn trivial_and_full_subgroups() {
        let g = GroupTable::builtin(Family::Dihedral(3), 100).unwrap();
        let full = HeckeAlgebra::new(HeckePair::new(&g, Subgroup::whole(&g)).unwrap());
        assert_eq!(full.basis().unwrap(), vec![full.one()]);
        let triv = HeckeAlgebra::new(HeckePair::new(&g, Subgroup::trivial(&g)).unwrap());
        assert_eq!(triv.dim(), 6);
        assert_eq!(triv.basis_rank().unwrap(), 6);
        assert_eq!(full.basis_rank().unwrap(), 1);
    }
}
