//! The Hecke algebra of a pair with `H ⊴ N ⊴ G` as a crossed product of
//! `A = F(N/H)` by a twisted partial action of `G/N`.
//!
//! Everything lives inside the Hecke algebra, in coordinates of the basis
//! `σ_x`. `A` is the span of the `σ_n` with `n ∈ N`, the ideals are
//! `D_t = e_t A` with `e_x = σ_x σ_{x⁻¹}`, `θ_t(a) = σ_ξ(t) a σ_ξ(t)⁻¹` and
//! `w_{r,s} = σ_n` for `n = ξ(r)ξ(s)ξ(rs)⁻¹`, kept as an element of the
//! corner `e_r e_{rs} A`.

use crate::algebra::{HomFailure, StructureAlgebra};
use crate::error::{Error, Result};
use crate::group::{all_subgroups, is_normal, is_normal_in, CosetSpace, GroupTable, Subgroup};
use crate::hecke::{HeckeAlgebra, HeckeElement};
use crate::linalg::{coordinates, intersect_spans, span_basis, Matrix, Vector};
use crate::par;
use crate::product_law::star_matrix;
use crate::rational::Rational;

/// `ι(δ_{Hn}) = σ_n`.
pub fn embed_iota(alg: &HeckeAlgebra, n_sub: &Subgroup, n: usize) -> Result<HeckeElement> {
    if !n_sub.contains(n) {
        return Err(Error::Membership(format!("element {n} is not in N")));
    }
    alg.sigma(n)
}

/// Rank of `ι` on the basis `δ_{Hn}` of `F(N/H)`; equals `[N : H]` when
/// `ι` is injective.
pub fn iota_rank(alg: &HeckeAlgebra, n_sub: &Subgroup) -> Result<usize> {
    let g = alg.pair().group();
    let cosets = CosetSpace::right(g, alg.pair().subgroup());
    let rows = cosets
        .reps()
        .iter()
        .filter(|&&n| n_sub.contains(n))
        .map(|&n| {
            let m = alg.to_operator(&embed_iota(alg, n_sub, n)?);
            Ok((0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect())
        })
        .collect::<Result<Vec<Vector>>>()?;
    Matrix::from_rows(&rows)?.rank()
}

/// Checks `H ⊴ N ⊴ G`.
pub fn check_chain(g: &GroupTable, h: &Subgroup, n: &Subgroup) -> Result<()> {
    if !is_normal_in(g, h, n) {
        return Err(Error::NormalityChain("H is not normal in N".into()));
    }
    if !is_normal(g, n) {
        return Err(Error::NormalityChain("N is not normal in G".into()));
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct TwistedAction<'a, 'g> {
    alg: &'a HeckeAlgebra<'g>,
    hecke: StructureAlgebra,
    star: Matrix,
    n: Subgroup,
    quotient: CosetSpace,
    section: Vec<usize>,
    /// Class of `ξ(r)ξ(s)`.
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
    a_basis: Vec<Vector>,
    idempotents: Vec<Vector>,
    ideals: Vec<Vec<Vector>>,
    /// `ξ(r)ξ(s)ξ(rs)⁻¹ ∈ N`.
    cocycle: Vec<Vec<usize>>,
}

/// Checks made while building the action; all must hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildChecks {
    /// `xy ∈ N ⇒ σ_x σ_y ∈ A`.
    pub products_in_a: bool,
    /// Each `e_x` is a central idempotent of `A` depending only on `Nx`.
    pub central_idempotents: bool,
    /// `θ_t` maps `D_{t⁻¹}` onto `D_t` and `ψ_{ξ(t)⁻¹}` inverts it.
    pub theta_bijective: bool,
    /// The two cocycle identities relating `σ_x σ_y` and `w σ_z`.
    pub cocycle_identities: bool,
    /// Each `w_{r,s}` is invertible in its corner.
    pub cocycle_invertible: bool,
}

impl BuildChecks {
    pub fn holds(&self) -> bool {
        self.products_in_a
            && self.central_idempotents
            && self.theta_bijective
            && self.cocycle_identities
            && self.cocycle_invertible
    }
}

fn same_span(dim: usize, a: &[Vector], b: &[Vector]) -> Result<bool> {
    Ok(span_basis(dim, a)? == span_basis(dim, b)?)
}

impl<'a, 'g> TwistedAction<'a, 'g> {
    /// Builds the action for `H ⊴ N ⊴ G`. Without a section the smallest
    /// element of each coset of `N` is used.
    pub fn build(
        alg: &'a HeckeAlgebra<'g>,
        n: &Subgroup,
        section: Option<Vec<usize>>,
    ) -> Result<TwistedAction<'a, 'g>> {
        let pair = alg.pair();
        let g = pair.group();
        check_chain(g, pair.subgroup(), n)?;
        let quotient = CosetSpace::right(g, n);
        let section = match section {
            None => quotient.reps().to_vec(),
            Some(s) => {
                if s.len() != quotient.len() {
                    return Err(Error::InvalidSection(format!(
                        "{} values for {} cosets",
                        s.len(),
                        quotient.len()
                    )));
                }
                for (t, &x) in s.iter().enumerate() {
                    g.check_index(x)?;
                    if quotient.block_of(x) != t {
                        return Err(Error::InvalidSection(format!("ξ({t}) = {x} lies in another coset")));
                    }
                }
                if s[0] != 0 {
                    return Err(Error::InvalidSection("ξ(N) must be the identity".into()));
                }
                s
            }
        };
        let k = quotient.len();
        let mult: Vec<Vec<usize>> = (0..k)
            .map(|r| (0..k).map(|s| quotient.block_of(g.mul(section[r], section[s]))).collect())
            .collect();
        let inv: Vec<usize> = (0..k).map(|t| quotient.block_of(g.inv(section[t]))).collect();
        let cocycle: Vec<Vec<usize>> = (0..k)
            .map(|r| {
                (0..k)
                    .map(|s| {
                        let rs = mult[r][s];
                        g.mul(g.mul(section[r], section[s]), g.inv(section[rs]))
                    })
                    .collect()
            })
            .collect();
        let hecke = alg.structure()?;
        let star = star_matrix(alg)?;
        let dim = hecke.dim();
        let dc = pair.double_cosets();
        let mut a_blocks: Vec<usize> = n.elements().iter().map(|&e| dc.block_of(e)).collect();
        a_blocks.sort_unstable();
        a_blocks.dedup();
        let a_basis: Vec<Vector> = a_blocks.iter().map(|&b| hecke.basis_vector(b)).collect();
        let mut out = TwistedAction {
            alg,
            hecke,
            star,
            n: n.clone(),
            quotient,
            section,
            mult,
            inv,
            a_basis,
            idempotents: Vec::new(),
            ideals: Vec::new(),
            cocycle,
        };
        out.idempotents = (0..k)
            .map(|t| out.idempotent_of(out.section[t]))
            .collect::<Result<_>>()?;
        out.ideals = (0..k)
            .map(|t| {
                let gens = out
                    .a_basis
                    .iter()
                    .map(|a| out.mul(&out.idempotents[t], a))
                    .collect::<Result<Vec<_>>>()?;
                span_basis(dim, &gens)
            })
            .collect::<Result<_>>()?;
        Ok(out)
    }

    pub fn algebra(&self) -> &'a HeckeAlgebra<'g> {
        self.alg
    }

    pub fn hecke_structure(&self) -> &StructureAlgebra {
        &self.hecke
    }

    pub fn normal_subgroup(&self) -> &Subgroup {
        &self.n
    }

    pub fn num_classes(&self) -> usize {
        self.quotient.len()
    }

    pub fn section(&self) -> &[usize] {
        &self.section
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.quotient.block_of(x)
    }

    pub fn class_mul(&self, r: usize, s: usize) -> usize {
        self.mult[r][s]
    }

    pub fn class_inv(&self, t: usize) -> usize {
        self.inv[t]
    }

    pub fn a_basis(&self) -> &[Vector] {
        &self.a_basis
    }

    pub fn ideal(&self, t: usize) -> &[Vector] {
        &self.ideals[t]
    }

    pub fn idempotent(&self, t: usize) -> &Vector {
        &self.idempotents[t]
    }

    /// `n = ξ(r)ξ(s)ξ(rs)⁻¹`
    pub fn cocycle_element(&self, r: usize, s: usize) -> usize {
        self.cocycle[r][s]
    }

    fn dim(&self) -> usize {
        self.hecke.dim()
    }

    fn mul(&self, a: &[Rational], b: &[Rational]) -> Result<Vector> {
        self.hecke.mul(a, b)
    }

    fn mul3(&self, a: &[Rational], b: &[Rational], c: &[Rational]) -> Result<Vector> {
        self.mul(&self.mul(a, b)?, c)
    }

    /// `σ_x` in coordinates.
    pub fn sigma(&self, x: usize) -> Vector {
        self.hecke.basis_vector(self.alg.pair().double_cosets().block_of(x))
    }

    fn idempotent_of(&self, x: usize) -> Result<Vector> {
        let g = self.alg.pair().group();
        self.mul(&self.sigma(x), &self.sigma(g.inv(x)))
    }

    fn in_span(&self, basis: &[Vector], v: &[Rational]) -> Result<bool> {
        if v.iter().all(Rational::is_zero) {
            return Ok(true);
        }
        Ok(coordinates(basis, v)?.is_some())
    }

    /// `ψ_x(a) = σ_x a σ_{x⁻¹}`.
    pub fn psi(&self, x: usize, a: &[Rational]) -> Result<Vector> {
        let g = self.alg.pair().group();
        self.mul3(&self.sigma(x), a, &self.sigma(g.inv(x)))
    }

    /// `θ_t : D_{t⁻¹} → D_t`.
    pub fn theta(&self, t: usize, a: &[Rational]) -> Result<Vector> {
        self.psi(self.section[t], a)
    }

    /// Inverse of `θ_t`, namely `ψ_{ξ(t)⁻¹}` on `D_t`.
    pub fn theta_inv(&self, t: usize, a: &[Rational]) -> Result<Vector> {
        let g = self.alg.pair().group();
        self.psi(g.inv(self.section[t]), a)
    }

    /// `w_{r,s}` in the corner `e_r e_{rs} A`.
    pub fn cocycle(&self, r: usize, s: usize) -> Result<Vector> {
        let unit = self.mul(&self.idempotents[r], &self.idempotents[self.mult[r][s]])?;
        self.mul(&unit, &self.sigma(self.cocycle[r][s]))
    }

    pub fn cocycle_inverse(&self, r: usize, s: usize) -> Result<Vector> {
        let g = self.alg.pair().group();
        let unit = self.mul(&self.idempotents[r], &self.idempotents[self.mult[r][s]])?;
        self.mul(&unit, &self.sigma(g.inv(self.cocycle[r][s])))
    }

    fn star_of(&self, v: &[Rational]) -> Result<Vector> {
        self.star.mul_vec(v)
    }

    pub fn build_checks(&self) -> Result<BuildChecks> {
        let pair = self.alg.pair();
        let g = pair.group();
        let dim = self.dim();
        let k = self.num_classes();

        let products_in_a = par::try_find_first(g.order(), |x| {
            for &m in self.n.elements() {
                let y = g.mul(g.inv(x), m);
                if !self.in_span(&self.a_basis, &self.mul(&self.sigma(x), &self.sigma(y))?)? {
                    return Ok(Some(y));
                }
            }
            Ok(None)
        })?
        .is_none();

        let mut central_idempotents = true;
        for x in g.elements() {
            let e = self.idempotent_of(x)?;
            central_idempotents &= e == self.idempotents[self.class_of(x)];
        }
        for e in &self.idempotents {
            central_idempotents &= self.mul(e, e)? == *e && self.in_span(&self.a_basis, e)?;
            for a in &self.a_basis {
                central_idempotents &= self.mul(e, a)? == self.mul(a, e)?;
            }
        }

        let mut theta_bijective = true;
        for t in 0..k {
            let src = &self.ideals[self.inv[t]];
            let image = src.iter().map(|a| self.theta(t, a)).collect::<Result<Vec<_>>>()?;
            theta_bijective &= same_span(dim, &image, &self.ideals[t])?;
            for a in src {
                theta_bijective &= self.theta_inv(t, &self.theta(t, a)?)? == *a;
            }
            for b in &self.ideals[t] {
                theta_bijective &= self.theta(t, &self.theta_inv(t, b)?)? == *b;
            }
            // ψ_x maps all of A onto D^x
            let whole = self
                .a_basis
                .iter()
                .map(|a| self.theta(t, a))
                .collect::<Result<Vec<_>>>()?;
            theta_bijective &= same_span(dim, &whole, &self.ideals[t])?;
        }

        let mut cocycle_identities = true;
        let mut cocycle_invertible = true;
        for r in 0..k {
            for s in 0..k {
                let (x, y, z) = (self.section[r], self.section[s], self.section[self.mult[r][s]]);
                let n = self.sigma(self.cocycle[r][s]);
                let n_inv = self.sigma(g.inv(self.cocycle[r][s]));
                let e_yinv = self.idempotent_of(g.inv(y))?;
                let lhs = self.mul3(&self.sigma(x), &self.sigma(y), &e_yinv)?;
                let rhs = self.mul3(&n, &self.sigma(z), &e_yinv)?;
                cocycle_identities &= lhs == rhs;
                let lhs = self.mul3(&e_yinv, &self.sigma(g.inv(y)), &self.sigma(g.inv(x)))?;
                let rhs = self.mul3(&e_yinv, &self.sigma(g.inv(z)), &n_inv)?;
                cocycle_identities &= lhs == rhs;
                let unit = self.mul(&self.idempotents[r], &self.idempotents[self.mult[r][s]])?;
                let w = self.cocycle(r, s)?;
                let wi = self.cocycle_inverse(r, s)?;
                cocycle_invertible &= self.mul(&w, &wi)? == unit && self.mul(&wi, &w)? == unit;
            }
        }
        Ok(BuildChecks {
            products_in_a,
            central_idempotents,
            theta_bijective,
            cocycle_identities,
            cocycle_invertible,
        })
    }

    /// Verifies the eight axioms over all classes and ideal bases.
    pub fn check_axioms(&self) -> Result<AxiomReport> {
        let dim = self.dim();
        let k = self.num_classes();
        let mut rep = AxiomReport::default();
        let fail = |slot: &mut Option<(usize, usize, usize)>, w: (usize, usize, usize)| {
            if slot.is_none() {
                *slot = Some(w);
            }
        };

        // (i)
        if !same_span(dim, &self.ideals[0], &self.a_basis)?
            || self.a_basis.iter().any(|a| self.theta(0, a).map_or(true, |b| b != *a))
        {
            rep.identity = Some((0, 0, 0));
        }
        for r in 0..k {
            let ri = self.inv[r];
            for s in 0..k {
                let rs = self.mult[r][s];
                // (ii)
                let dom = intersect_spans(dim, &self.ideals[ri], &self.ideals[s])?;
                let img = dom.iter().map(|a| self.theta(r, a)).collect::<Result<Vec<_>>>()?;
                let target = intersect_spans(dim, &self.ideals[r], &self.ideals[rs])?;
                if !same_span(dim, &img, &target)? {
                    fail(&mut rep.domains, (r, s, 0));
                }
                // (iii)
                let si = self.inv[s];
                let dom = intersect_spans(dim, &self.ideals[si], &self.ideals[self.inv[rs]])?;
                let w = self.cocycle(r, s)?;
                let wi = self.cocycle_inverse(r, s)?;
                for a in &dom {
                    let lhs = self.theta(r, &self.theta(s, a)?)?;
                    let rhs = self.mul3(&w, &self.theta(rs, a)?, &wi)?;
                    if lhs != rhs {
                        fail(&mut rep.composition, (r, s, 0));
                    }
                }
                // (viii)
                if self.star_of(&w)? != wi {
                    fail(&mut rep.star_cocycle, (r, s, 0));
                }
                // (v)
                for t in 0..k {
                    let st = self.mult[s][t];
                    let d1 = intersect_spans(dim, &self.ideals[ri], &self.ideals[s])?;
                    let dom = intersect_spans(dim, &d1, &self.ideals[st])?;
                    if dom.is_empty() {
                        continue;
                    }
                    let w_st = self.cocycle(s, t)?;
                    let w_r_st = self.cocycle(r, st)?;
                    let w_rs_t = self.cocycle(rs, t)?;
                    for a in &dom {
                        let lhs = self.mul(&self.theta(r, &self.mul(a, &w_st)?)?, &w_r_st)?;
                        let rhs = self.mul3(&self.theta(r, a)?, &w, &w_rs_t)?;
                        if lhs != rhs {
                            fail(&mut rep.cocycle_condition, (r, s, t));
                        }
                    }
                }
            }
            // (iv): the unit of D_1 ∩ D_r = D_r is e_r
            let e = &self.idempotents[r];
            if self.cocycle(0, r)? != *e || self.cocycle(r, 0)? != *e {
                fail(&mut rep.normalized, (r, 0, 0));
            }
            // (vi)
            let starred = self.ideals[r].iter().map(|a| self.star_of(a)).collect::<Result<Vec<_>>>()?;
            if !same_span(dim, &starred, &self.ideals[r])? {
                fail(&mut rep.star_ideals, (r, 0, 0));
            }
            // (vii)
            for a in &self.ideals[ri] {
                if self.theta(r, &self.star_of(a)?)? != self.star_of(&self.theta(r, a)?)? {
                    fail(&mut rep.star_theta, (r, 0, 0));
                }
            }
        }
        Ok(rep)
    }

    /// Whether every `w_{r,s}` is the unit, i.e. `ξ(r)ξ(s)ξ(rs)⁻¹ ∈ H`.
    pub fn cocycle_trivial(&self) -> bool {
        let h = self.alg.pair().subgroup();
        self.cocycle.iter().flatten().all(|&n| h.contains(n))
    }
}

/// First failing `(r, s, t)` per axiom; `None` means the axiom holds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AxiomReport {
    /// `D_1 = A`, `θ_1 = id`
    pub identity: Option<(usize, usize, usize)>,
    /// `θ_r(D_{r⁻¹} ∩ D_s) = D_r ∩ D_{rs}`
    pub domains: Option<(usize, usize, usize)>,
    /// `θ_r θ_s = Ad(w_{r,s}) θ_{rs}`
    pub composition: Option<(usize, usize, usize)>,
    /// `w_{1,t} = w_{t,1} = 1`
    pub normalized: Option<(usize, usize, usize)>,
    /// `θ_r(a w_{s,t}) w_{r,st} = θ_r(a) w_{r,s} w_{rs,t}`
    pub cocycle_condition: Option<(usize, usize, usize)>,
    /// `D_t* = D_t`
    pub star_ideals: Option<(usize, usize, usize)>,
    /// `θ_t(a*) = θ_t(a)*`
    pub star_theta: Option<(usize, usize, usize)>,
    /// `w⁻¹ = w*`
    pub star_cocycle: Option<(usize, usize, usize)>,
}

impl AxiomReport {
    pub fn all(&self) -> [(&'static str, Option<(usize, usize, usize)>); 8] {
        [
            ("identity", self.identity),
            ("domains", self.domains),
            ("composition", self.composition),
            ("normalized", self.normalized),
            ("cocycle_condition", self.cocycle_condition),
            ("star_ideals", self.star_ideals),
            ("star_theta", self.star_theta),
            ("star_cocycle", self.star_cocycle),
        ]
    }

    pub fn holds(&self) -> bool {
        self.all().iter().all(|(_, f)| f.is_none())
    }
}

/// `⊕_t D_t` with the twisted multiplication, by structure constants over
/// the concatenated ideal bases.
#[derive(Debug, Clone)]
pub struct CrossedProduct<'x, 'a, 'g> {
    action: &'x TwistedAction<'a, 'g>,
    /// `(class, index in the ideal basis)` for each basis element.
    basis: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    structure: StructureAlgebra,
}

/// An element `Σ a_t δ_t` by its components, each in its ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedProductElement {
    pub components: Vec<Vector>,
}

impl<'x, 'a, 'g> CrossedProduct<'x, 'a, 'g> {
    pub fn new(action: &'x TwistedAction<'a, 'g>) -> Result<CrossedProduct<'x, 'a, 'g>> {
        let k = action.num_classes();
        let mut basis = Vec::new();
        let mut offsets = Vec::with_capacity(k);
        for t in 0..k {
            offsets.push(basis.len());
            basis.extend((0..action.ideal(t).len()).map(|i| (t, i)));
        }
        let mut cp = CrossedProduct {
            action,
            basis,
            offsets,
            structure: StructureAlgebra::new(Vec::new(), Vec::new())?,
        };
        let n = cp.basis.len();
        let table = par::try_map_range(n, |i| {
            let (r, p) = cp.basis[i];
            (0..n)
                .map(|j| {
                    let (s, q) = cp.basis[j];
                    let a = &action.ideal(r)[p];
                    let b = &action.ideal(s)[q];
                    let c = cp.product_component(r, a, s, b)?;
                    cp.coords(action.class_mul(r, s), &c)
                })
                .collect::<Result<Vec<_>>>()
        })?;
        let one = action.hecke_structure().unit().clone();
        let unit = cp.coords(0, &one)?;
        cp.structure = StructureAlgebra::new(table, unit)?;
        Ok(cp)
    }

    /// `θ_r(θ_r⁻¹(a) b) w_{r,s}`, the `δ_{rs}` component of `(aδ_r)(bδ_s)`.
    pub fn product_component(&self, r: usize, a: &[Rational], s: usize, b: &[Rational]) -> Result<Vector> {
        let act = self.action;
        let inner = act.mul(&act.theta_inv(r, a)?, b)?;
        act.mul(&act.theta(r, &inner)?, &act.cocycle(r, s)?)
    }

    /// Coordinates of `a δ_t` in the crossed product basis.
    pub fn coords(&self, t: usize, a: &[Rational]) -> Result<Vector> {
        let ideal = self.action.ideal(t);
        let local = if a.iter().all(Rational::is_zero) {
            vec![Rational::ZERO; ideal.len()]
        } else {
            coordinates(ideal, a)?
                .ok_or_else(|| Error::Membership(format!("component is not in the ideal of class {t}")))?
        };
        let mut v = vec![Rational::ZERO; self.basis.len()];
        for (i, c) in local.into_iter().enumerate() {
            v[self.offsets[t] + i] = c;
        }
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn structure(&self) -> &StructureAlgebra {
        &self.structure
    }

    pub fn element(&self, v: &[Rational]) -> Result<CrossedProductElement> {
        let act = self.action;
        let mut components = vec![vec![Rational::ZERO; act.dim()]; act.num_classes()];
        for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (t, p) = self.basis[i];
            let term = crate::linalg::vec_scale(&act.ideal(t)[p], c)?;
            components[t] = crate::linalg::vec_add(&components[t], &term)?;
        }
        Ok(CrossedProductElement { components })
    }

    pub fn element_coords(&self, e: &CrossedProductElement) -> Result<Vector> {
        let mut v = vec![Rational::ZERO; self.dim()];
        for (t, a) in e.components.iter().enumerate() {
            v = crate::linalg::vec_add(&v, &self.coords(t, a)?)?;
        }
        Ok(v)
    }

    pub fn multiply(&self, a: &CrossedProductElement, b: &CrossedProductElement) -> Result<CrossedProductElement> {
        let p = self.structure.mul(&self.element_coords(a)?, &self.element_coords(b)?)?;
        self.element(&p)
    }

    /// `Φ(a δ_t) = a σ_ξ(t)` on each basis element.
    pub fn phi_images(&self) -> Result<Vec<Vector>> {
        let act = self.action;
        self.basis
            .iter()
            .map(|&(t, p)| act.mul(&act.ideal(t)[p], &act.sigma(act.section[t])))
            .collect()
    }

    /// `Ψ(σ_x) = e_x σ_{x ξ(π(x))⁻¹} δ_{π(x)}` for every element `x`.
    pub fn psi_family(&self) -> Result<Vec<Vector>> {
        let act = self.action;
        let g = act.alg.pair().group();
        g.elements()
            .map(|x| {
                let t = act.class_of(x);
                let n = g.mul(x, g.inv(act.section[t]));
                let a = act.mul(&act.idempotent_of(x)?, &act.sigma(n))?;
                self.coords(t, &a)
            })
            .collect()
    }

    pub fn verify_isomorphism(&self) -> Result<IsomorphismReport> {
        let act = self.action;
        let hecke = act.hecke_structure();
        let associative = self.structure.associativity_failure()?.is_none();
        let unital = self.structure.unit_holds()?;
        let phi = self.phi_images()?;
        let phi_failure = self.structure.hom_failure(hecke, &phi)?;
        let family = self.psi_family()?;
        let psi = crate::product_law::universal_hom(act.alg, &self.structure, &family, None);
        let (psi_ok, psi_images) = match psi {
            Ok(h) => (true, h.images),
            Err(Error::RelationViolation { .. }) | Err(Error::NotBiInvariant { .. }) => (false, Vec::new()),
            Err(e) => return Err(e),
        };
        let apply = |images: &[Vector], v: &[Rational], out_dim: usize| -> Result<Vector> {
            let mut out = vec![Rational::ZERO; out_dim];
            for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                out = crate::linalg::vec_add(&out, &crate::linalg::vec_scale(&images[i], c)?)?;
            }
            Ok(out)
        };
        let mut phi_psi = psi_ok;
        let mut psi_phi = psi_ok;
        if psi_ok {
            for i in 0..hecke.dim() {
                let back = apply(&phi, &psi_images[i], hecke.dim())?;
                phi_psi &= back == hecke.basis_vector(i);
            }
            for (j, img) in phi.iter().enumerate() {
                let back = apply(&psi_images, img, self.dim())?;
                psi_phi &= back == self.structure.basis_vector(j);
            }
        }
        Ok(IsomorphismReport {
            dim: self.dim(),
            double_cosets: hecke.dim(),
            associative,
            unital,
            phi_homomorphism: phi_failure.is_none(),
            phi_failure,
            psi_homomorphism: psi_ok,
            phi_psi_identity: phi_psi,
            psi_phi_identity: psi_phi,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsomorphismReport {
    pub dim: usize,
    pub double_cosets: usize,
    pub associative: bool,
    pub unital: bool,
    pub phi_homomorphism: bool,
    pub phi_failure: Option<HomFailure>,
    pub psi_homomorphism: bool,
    pub phi_psi_identity: bool,
    pub psi_phi_identity: bool,
}

impl IsomorphismReport {
    pub fn holds(&self) -> bool {
        self.dim == self.double_cosets
            && self.associative
            && self.unital
            && self.phi_homomorphism
            && self.psi_homomorphism
            && self.phi_psi_identity
            && self.psi_phi_identity
    }
}

/// A section of `G → G/N` that is a homomorphism, found as a complement
/// `K` of `N` (`K ∩ N = 1`, `|K| = [G : N]`). Such sections are exactly the
/// complements, so the search is exhaustive.
pub fn homomorphic_section(g: &GroupTable, n: &Subgroup) -> Option<Vec<usize>> {
    let quotient = CosetSpace::right(g, n);
    let k = quotient.len();
    all_subgroups(g)
        .into_iter()
        .filter(|c| c.order() == k && c.intersection(n).order() == 1)
        .map(|c| {
            let mut section = vec![0; k];
            for &e in c.elements() {
                section[quotient.block_of(e)] = e;
            }
            section
        })
        .next()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UntwistReport {
    pub section: Option<Vec<usize>>,
    /// Every `w_{r,s}` is the unit for the found section.
    pub cocycle_trivial: bool,
}

impl UntwistReport {
    pub fn untwisted(&self) -> bool {
        self.section.is_some() && self.cocycle_trivial
    }
}

pub fn untwist_detect(alg: &HeckeAlgebra, n: &Subgroup) -> Result<UntwistReport> {
    let g = alg.pair().group();
    match homomorphic_section(g, n) {
        None => Ok(UntwistReport { section: None, cocycle_trivial: false }),
        Some(section) => {
            let act = TwistedAction::build(alg, n, Some(section.clone()))?;
            let mut trivial = act.cocycle_trivial();
            let one = act.hecke_structure().unit().clone();
            for r in 0..act.num_classes() {
                for s in 0..act.num_classes() {
                    trivial &= act.sigma(act.cocycle_element(r, s)) == one;
                }
            }
            Ok(UntwistReport { section: Some(section), cocycle_trivial: trivial })
        }
    }
}

/// Full verification for one pair and one `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedProductReport {
    pub normal_subgroup: Vec<usize>,
    pub section: Vec<usize>,
    pub iota_rank: usize,
    pub n_over_h: usize,
    pub build: BuildChecks,
    pub axioms: AxiomReport,
    pub isomorphism: IsomorphismReport,
}

impl CrossedProductReport {
    pub fn holds(&self) -> bool {
        self.iota_rank == self.n_over_h && self.build.holds() && self.axioms.holds() && self.isomorphism.holds()
    }
}

pub fn verify_crossed_product(
    alg: &HeckeAlgebra,
    n: &Subgroup,
    section: Option<Vec<usize>>,
) -> Result<CrossedProductReport> {
    let act = TwistedAction::build(alg, n, section)?;
    let build = act.build_checks()?;
    let axioms = act.check_axioms()?;
    let cp = CrossedProduct::new(&act)?;
    let isomorphism = cp.verify_isomorphism()?;
    Ok(CrossedProductReport {
        normal_subgroup: n.elements().to_vec(),
        section: act.section().to_vec(),
        iota_rank: iota_rank(alg, n)?,
        n_over_h: n.order() / alg.pair().subgroup().order(),
        build,
        axioms,
        isomorphism,
    })
}
