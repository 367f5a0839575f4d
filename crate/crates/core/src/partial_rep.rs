//! Partial representations `u : G → B` into an algebra given by structure
//! constants, and the check that `σ` is one exactly when `H` is
//! protonormal.
//!
//! For families that are constant on double cosets the axioms only need
//! to be tested on part of `G × G`: the left axiom
//! `u(x⁻¹)u(x)u(y) = u(x⁻¹)u(xy)` at `(hxk, y)` is the axiom at `(x, ky)`
//! and is unchanged by `y ↦ yh`, so `x` may range over double coset
//! representatives and `y` over left coset representatives. The right
//! axiom is the mirror image.

use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::group::{CosetSpace, GroupTable};
use crate::hecke::HeckeAlgebra;
use crate::linalg::Vector;
use crate::pair::HeckePair;
use crate::par;
use crate::rational::Rational;

/// A map from `G` into an algebra, by the coordinates of each `u(x)`.
#[derive(Debug, Clone, Copy)]
pub struct ElementFamily<'a> {
    pub algebra: &'a StructureAlgebra,
    pub values: &'a [Vector],
}

impl ElementFamily<'_> {
    fn u(&self, x: usize) -> &Vector {
        &self.values[x]
    }

    fn mul3(&self, a: &[Rational], b: &[Rational], c: &[Rational]) -> Result<Vector> {
        self.algebra.mul(&self.algebra.mul(a, b)?, c)
    }

    fn left_axiom(&self, g: &GroupTable, x: usize, y: usize) -> Result<bool> {
        let xi = self.u(g.inv(x));
        let lhs = self.mul3(xi, self.u(x), self.u(y))?;
        Ok(lhs == self.algebra.mul(xi, self.u(g.mul(x, y)))?)
    }

    fn right_axiom(&self, g: &GroupTable, x: usize, y: usize) -> Result<bool> {
        let yi = self.u(g.inv(y));
        let lhs = self.mul3(self.u(x), self.u(y), yi)?;
        Ok(lhs == self.algebra.mul(self.u(g.mul(x, y)), yi)?)
    }

    /// `e_x = u(x) u(x⁻¹)`
    pub fn idempotent(&self, g: &GroupTable, x: usize) -> Result<Vector> {
        self.algebra.mul(self.u(x), self.u(g.inv(x)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartialRepCheck {
    pub unit: bool,
    /// First `(x, y)` breaking `u(x⁻¹)u(x)u(y) = u(x⁻¹)u(xy)`.
    pub left_failure: Option<(usize, usize)>,
    /// First `(x, y)` breaking `u(x)u(y)u(y⁻¹) = u(xy)u(y⁻¹)`.
    pub right_failure: Option<(usize, usize)>,
}

impl PartialRepCheck {
    pub fn is_partial_rep(&self) -> bool {
        self.unit && self.left_failure.is_none() && self.right_failure.is_none()
    }
}

fn first_pair<F>(xs: &[usize], ys: &[usize], test: F) -> Result<Option<(usize, usize)>>
where
    F: Fn(usize, usize) -> Result<bool> + Sync + Send,
{
    let hit = par::try_find_first(xs.len(), |i| {
        for &y in ys {
            if !test(xs[i], y)? {
                return Ok(Some(y));
            }
        }
        Ok(None)
    })?;
    Ok(hit.map(|(i, y)| (xs[i], y)))
}

/// All three axioms over every pair in `G × G`.
pub fn check_partial_rep(g: &GroupTable, u: ElementFamily) -> Result<PartialRepCheck> {
    let all: Vec<usize> = g.elements().collect();
    Ok(PartialRepCheck {
        unit: *u.u(0) == *u.algebra.unit(),
        left_failure: first_pair(&all, &all, |x, y| u.left_axiom(g, x, y))?,
        right_failure: first_pair(&all, &all, |x, y| u.right_axiom(g, x, y))?,
    })
}

/// First element where `u` differs from its value on the double coset
/// representative.
pub fn bi_invariance_failure(pair: &HeckePair, u: ElementFamily) -> Option<usize> {
    let dc = pair.double_cosets();
    pair.group()
        .elements()
        .find(|&x| u.u(x) != u.u(dc.rep(dc.block_of(x))))
}

/// The axioms on the reduced index sets; `u` must be bi-invariant.
pub fn check_partial_rep_reduced(pair: &HeckePair, u: ElementFamily) -> Result<PartialRepCheck> {
    if let Some(element) = bi_invariance_failure(pair, u) {
        return Err(Error::NotBiInvariant { element });
    }
    let g = pair.group();
    let dc = pair.double_cosets().reps();
    let left = CosetSpace::left(g, pair.subgroup());
    let right = pair.right_cosets().reps();
    Ok(PartialRepCheck {
        unit: *u.u(0) == *u.algebra.unit(),
        left_failure: first_pair(dc, left.reps(), |x, y| u.left_axiom(g, x, y))?,
        right_failure: first_pair(right, dc, |x, y| u.right_axiom(g, x, y))?,
    })
}

/// First `x` in `xs` with `u(x) u(x⁻¹) u(x) ≠ u(x)`.
pub fn partial_isometry_failure(
    g: &GroupTable,
    u: ElementFamily,
    xs: &[usize],
) -> Result<Option<usize>> {
    let hit = par::try_find_first(xs.len(), |i| {
        let x = xs[i];
        Ok((u.mul3(u.u(x), u.u(g.inv(x)), u.u(x))? != *u.u(x)).then_some(x))
    })?;
    Ok(hit.map(|(_, x)| x))
}

/// First `(x, y)` with `u(x) e_y ≠ e_{xy} u(x)`, `x` from `xs`, `y` over `G`.
pub fn check_commutation(
    g: &GroupTable,
    u: ElementFamily,
    xs: &[usize],
) -> Result<Option<(usize, usize)>> {
    let all: Vec<usize> = g.elements().collect();
    first_pair(xs, &all, |x, y| {
        let lhs = u.algebra.mul(u.u(x), &u.idempotent(g, y)?)?;
        Ok(lhs == u.algebra.mul(&u.idempotent(g, g.mul(x, y))?, u.u(x))?)
    })
}

/// `{x : u(x) = 1}`
pub fn kernel(g: &GroupTable, u: ElementFamily) -> Vec<usize> {
    g.elements().filter(|&x| u.u(x) == u.algebra.unit()).collect()
}

/// `σ_x` for every element, in the `σ` basis of the Hecke algebra.
pub fn sigma_values(alg: &HeckeAlgebra) -> Vec<Vector> {
    let dc = alg.pair().double_cosets();
    alg.pair()
        .group()
        .elements()
        .map(|x| {
            let mut v = vec![Rational::ZERO; alg.dim()];
            v[dc.block_of(x)] = Rational::ONE;
            v
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub protonormal: bool,
    pub protonormal_witness: Option<usize>,
    pub partial_rep: PartialRepCheck,
    /// First `x` where `σ_x σ_{x⁻¹} σ_x ≠ σ_x`.
    pub isometry_failure: Option<usize>,
    /// Present only for partial representations.
    pub commutation_failure: Option<Option<(usize, usize)>>,
    pub idempotents: Option<bool>,
    pub kernel_is_subgroup: Option<bool>,
    /// Full `|G|²` audit of the axioms, when requested.
    pub audit: Option<PartialRepCheck>,
}

impl EquivalenceReport {
    /// Protonormality, the partial representation axioms and the weak
    /// identity all agree, and the audit (if any) matches the fast path.
    pub fn consistent(&self) -> bool {
        let pr = self.partial_rep.is_partial_rep();
        let weak = self.isometry_failure.is_none();
        let audit_ok = self.audit.is_none_or(|a| a.is_partial_rep() == pr);
        // under σ_x* = σ_{x⁻¹} the left axiom implies the right one
        let mirror = self.partial_rep.left_failure.is_some() || self.partial_rep.right_failure.is_none();
        let extras = [
            self.commutation_failure.map(|c| c.is_none()),
            self.idempotents,
            self.kernel_is_subgroup,
        ]
        .iter()
        .all(|v| v.unwrap_or(true));
        self.protonormal == pr && pr == weak && audit_ok && mirror && extras
    }
}

pub fn equivalence_suite(alg: &HeckeAlgebra, audit_full: bool) -> Result<EquivalenceReport> {
    let pair = alg.pair();
    let g = pair.group();
    let structure = alg.structure()?;
    let values = sigma_values(alg);
    let u = ElementFamily { algebra: &structure, values: &values };
    let proto = pair.protonormality();
    let partial_rep = check_partial_rep_reduced(pair, u)?;
    let reps = pair.double_cosets().reps();
    let isometry_failure = partial_isometry_failure(g, u, reps)?;
    let audit = if audit_full { Some(check_partial_rep(g, u)?) } else { None };
    let (commutation_failure, idempotents, kernel_is_subgroup) = if partial_rep.is_partial_rep() {
        let mut idem = true;
        for x in g.elements() {
            let e = u.idempotent(g, x)?;
            idem &= structure.mul(&e, &e)? == e;
        }
        (
            Some(check_commutation(g, u, reps)?),
            Some(idem),
            Some(kernel(g, u) == pair.subgroup().elements()),
        )
    } else {
        (None, None, None)
    };
    Ok(EquivalenceReport {
        protonormal: proto.holds,
        protonormal_witness: proto.witness,
        partial_rep,
        isometry_failure,
        commutation_failure,
        idempotents,
        kernel_is_subgroup,
        audit,
    })
}

/// Consequences of the product relations for subnormal `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FurtherProperties {
    pub partial_rep: bool,
    /// `xH ⊆ Hx` gives `σ_x σ_{x⁻¹} = 1` and `σ_x σ_y = σ_{xy}`.
    pub left_inclusion: bool,
    /// `Hx ⊆ xH` gives `σ_{x⁻¹} σ_x = 1` and `σ_y σ_x = σ_{yx}`.
    pub right_inclusion: bool,
    /// Normalizer elements give invertible `σ_x` with inverse `σ_{x⁻¹}`.
    pub normalizer_invertible: bool,
    pub bi_invariant: bool,
}

impl FurtherProperties {
    pub fn holds(&self) -> bool {
        self.partial_rep
            && self.left_inclusion
            && self.right_inclusion
            && self.normalizer_invertible
            && self.bi_invariant
    }
}

pub fn further_properties(alg: &HeckeAlgebra) -> Result<FurtherProperties> {
    let pair = alg.pair();
    if !pair.is_subnormal() {
        return Err(Error::NotSubnormal);
    }
    let g = pair.group();
    let h = pair.subgroup();
    let structure = alg.structure()?;
    let values = sigma_values(alg);
    let u = ElementFamily { algebra: &structure, values: &values };
    let one = structure.unit();
    let mul = |a: usize, b: usize| structure.mul(&values[a], &values[b]);
    // xH ⊆ Hx
    let left_in = |x: usize| h.elements().iter().all(|&e| h.contains(g.mul(g.mul(x, e), g.inv(x))));
    // Hx ⊆ xH
    let right_in = |x: usize| h.elements().iter().all(|&e| h.contains(g.mul(g.mul(g.inv(x), e), x)));
    let mut out = FurtherProperties {
        partial_rep: check_partial_rep_reduced(pair, u)?.is_partial_rep(),
        left_inclusion: true,
        right_inclusion: true,
        normalizer_invertible: true,
        bi_invariant: bi_invariance_failure(pair, u).is_none(),
    };
    for x in g.elements() {
        let xi = g.inv(x);
        let (l, r) = (left_in(x), right_in(x));
        if l {
            out.left_inclusion &= mul(x, xi)? == *one;
            for y in g.elements() {
                out.left_inclusion &= mul(x, y)? == values[g.mul(x, y)];
            }
        }
        if r {
            out.right_inclusion &= mul(xi, x)? == *one;
            for y in g.elements() {
                out.right_inclusion &= mul(y, x)? == values[g.mul(y, x)];
            }
        }
        if l && r {
            out.normalizer_invertible &= mul(x, xi)? == *one && mul(xi, x)? == *one;
        }
    }
    Ok(out)
}
