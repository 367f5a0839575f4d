//! The coset module `F(G/H)`: vectors over the right-coset basis `δ_{Ht}`,
//! the operators `σ_x` and `ρ(g)`, the hermitian form, and the averaging
//! machinery `µ`, `q_K`, `Q_K`, `π̃` for a subgroup `K` commuting with `H`.
//!
//! Operators are matrices whose column `s` is the image of the basis
//! vector of the `s`-th right coset.

use crate::error::{Error, Result};
use crate::group::{product_subgroup, rep_family, subgroups_commute, CosetSpace, Subgroup};
use crate::linalg::{Matrix, Vector};
use crate::pair::HeckePair;
use crate::rational::Rational;

fn average_of(n: usize) -> Result<Rational> {
    Rational::new(1, n as i128)
}

/// `σ_x` built from an arbitrary family of representatives of
/// `H / (H ∩ H^x)` and arbitrary elements of each right coset.
pub fn sigma_op_with(
    pair: &HeckePair,
    x: usize,
    family: &[usize],
    coset_elements: &[usize],
) -> Result<Matrix> {
    let g = pair.group();
    let cosets = pair.right_cosets();
    let w = average_of(family.len())?;
    let mut m = Matrix::zeros(cosets.len(), cosets.len());
    for (col, &t) in coset_elements.iter().enumerate() {
        for &h in family {
            let row = cosets.block_of(g.mul(g.mul(x, h), t));
            m.set(row, col, m.get(row, col).add(&w)?);
        }
    }
    Ok(m)
}

/// `σ_x(δ_{Ht}) = (1/|S_x|) Σ_{h ∈ S_x} δ_{Hxht}`.
pub fn sigma_op(pair: &HeckePair, x: usize) -> Result<Matrix> {
    pair.group().check_index(x)?;
    sigma_op_with(pair, x, &pair.sigma_family(x), pair.right_cosets().reps())
}

/// `σ_x` from representatives `T_x` of `H^x H / H^x`. Needs `H^x H` to be a
/// subgroup, which is what protonormality guarantees.
pub fn sigma_op_alt(pair: &HeckePair, x: usize) -> Result<Matrix> {
    let g = pair.group();
    g.check_index(x)?;
    let hx = pair.conjugate(x);
    let prod = product_subgroup(g, &hx, pair.subgroup()).map_err(|_| Error::NotProtonormal { x })?;
    let family = rep_family(g, &prod, &hx)?;
    let cosets = pair.right_cosets();
    let w = average_of(family.len())?;
    let mut m = Matrix::zeros(cosets.len(), cosets.len());
    for (col, &t) in cosets.reps().iter().enumerate() {
        for &k in &family {
            let row = cosets.block_of(g.mul(g.mul(x, k), t));
            m.set(row, col, m.get(row, col).add(&w)?);
        }
    }
    Ok(m)
}

/// `ρ(g) δ_{Ht} = δ_{Htg}`.
pub fn rho_op(pair: &HeckePair, g_elem: usize) -> Result<Matrix> {
    let g = pair.group();
    g.check_index(g_elem)?;
    let cosets = pair.right_cosets();
    let mut m = Matrix::zeros(cosets.len(), cosets.len());
    for (col, &t) in cosets.reps().iter().enumerate() {
        m.set(cosets.block_of(g.mul(t, g_elem)), col, Rational::ONE);
    }
    Ok(m)
}

/// Basis vector `δ_{Ht}`.
pub fn delta_vec(pair: &HeckePair, t: usize) -> Vector {
    let mut v = vec![Rational::ZERO; pair.index()];
    v[pair.right_cosets().block_of(t)] = Rational::ONE;
    v
}

/// Diagonal of the Gram matrix: `⟨⟨δ_{Ht}, δ_{Ht}⟩⟩ = Δ(t)`.
pub fn gram_diagonal(pair: &HeckePair) -> Vec<Rational> {
    pair.right_cosets().reps().iter().map(|&t| pair.delta(t)).collect()
}

/// `⟨⟨ξ, η⟩⟩ = Σ_t ξ_t η_t Δ(t)`; conjugation on `Q` is the identity.
pub fn hermitian_form(pair: &HeckePair, xi: &[Rational], eta: &[Rational]) -> Result<Rational> {
    if xi.len() != pair.index() || eta.len() != pair.index() {
        return Err(Error::Dimension(format!(
            "vectors of length {} and {} in a module of dimension {}",
            xi.len(),
            eta.len(),
            pair.index()
        )));
    }
    let mut acc = Rational::ZERO;
    for ((a, b), d) in xi.iter().zip(eta).zip(gram_diagonal(pair)) {
        acc = acc.add(&a.mul(b)?.mul(&d)?)?;
    }
    Ok(acc)
}

/// Adjoint with respect to the hermitian form: `D^{-1} Aᵀ D`.
pub fn form_adjoint(pair: &HeckePair, a: &Matrix) -> Result<Matrix> {
    let d = gram_diagonal(pair);
    let t = a.transpose();
    let mut out = Matrix::zeros(t.rows(), t.cols());
    for i in 0..t.rows() {
        for j in 0..t.cols() {
            out.set(i, j, t.get(i, j).mul(&d[j])?.div(&d[i])?);
        }
    }
    Ok(out)
}

/// `µ(S)`, the average of the basis vectors of a set of right cosets
/// (given by their block indices).
pub fn mu_average(dim: usize, blocks: &[usize]) -> Result<Vector> {
    let mut set: Vec<usize> = blocks.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some(&b) = set.iter().find(|&&b| b >= dim) {
        return Err(Error::Dimension(format!("coset {b} outside a space of dimension {dim}")));
    }
    let w = average_of(set.len())?;
    let mut v = vec![Rational::ZERO; dim];
    for b in set {
        v[b] = w;
    }
    Ok(v)
}

fn commuting_family(pair: &HeckePair, k: &Subgroup) -> Result<Vec<usize>> {
    let g = pair.group();
    let h = pair.subgroup();
    if let Some((a, b)) = subgroups_commute(g, h, k).witness {
        return Err(Error::NotCommuting { a, b });
    }
    rep_family(g, k, &h.intersection(k))
}

/// `q_K = µ(HK/H) = (1/|S|) Σ_{k ∈ S} δ_{Hk}` with `S` representing `K/(H ∩ K)`.
pub fn q_element(pair: &HeckePair, k: &Subgroup) -> Result<Vector> {
    let family = commuting_family(pair, k)?;
    let cosets = pair.right_cosets();
    let blocks: Vec<usize> = family.iter().map(|&e| cosets.block_of(e)).collect();
    mu_average(pair.index(), &blocks)
}

/// `Q_K(δ_{Hx}) = ρ_x(q_K) = (1/|S|) Σ_{k ∈ S} δ_{Hkx}`.
pub fn q_operator(pair: &HeckePair, k: &Subgroup) -> Result<Matrix> {
    let family = commuting_family(pair, k)?;
    let g = pair.group();
    let cosets = pair.right_cosets();
    let w = average_of(family.len())?;
    let mut m = Matrix::zeros(cosets.len(), cosets.len());
    for (col, &t) in cosets.reps().iter().enumerate() {
        for &e in &family {
            let row = cosets.block_of(g.mul(e, t));
            m.set(row, col, m.get(row, col).add(&w)?);
        }
    }
    Ok(m)
}

/// Linearized quotient map `F(G/H) → F(G/HK)`.
#[derive(Debug, Clone)]
pub struct PiTilde {
    pub matrix: Matrix,
    pub hk: Subgroup,
    pub target: CosetSpace,
}

pub fn pi_tilde(pair: &HeckePair, k: &Subgroup) -> Result<PiTilde> {
    let g = pair.group();
    let hk = product_subgroup(g, pair.subgroup(), k)?;
    let target = CosetSpace::right(g, &hk);
    let cosets = pair.right_cosets();
    let mut matrix = Matrix::zeros(target.len(), cosets.len());
    for (col, &t) in cosets.reps().iter().enumerate() {
        matrix.set(target.block_of(t), col, Rational::ONE);
    }
    Ok(PiTilde { matrix, hk, target })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiTildeCheck {
    /// `π̃ ∘ Q_K = π̃`
    pub absorbs_q: bool,
    pub q_idempotent: bool,
    pub rank_q: usize,
    /// Rank of `π̃` restricted to the range of `Q_K`.
    pub rank_restricted: usize,
    pub target_dim: usize,
}

impl PiTildeCheck {
    pub fn holds(&self) -> bool {
        self.absorbs_q
            && self.q_idempotent
            && self.rank_q == self.target_dim
            && self.rank_restricted == self.target_dim
    }
}

/// Exact-rank check that `π̃` is an isomorphism from the range of `Q_K`.
pub fn check_pi_tilde(pair: &HeckePair, k: &Subgroup) -> Result<PiTildeCheck> {
    let q = q_operator(pair, k)?;
    let pi = pi_tilde(pair, k)?;
    let pq = pi.matrix.mul(&q)?;
    Ok(PiTildeCheck {
        absorbs_q: pq == pi.matrix,
        q_idempotent: q.mul(&q)? == q,
        rank_q: q.rank()?,
        rank_restricted: pq.rank()?,
        target_dim: pi.target.len(),
    })
}

/// Both sides of `π̃(q_L) = µ(HKL/HK)`, computed independently.
pub fn three_subgroup_identity(
    pair: &HeckePair,
    k: &Subgroup,
    l: &Subgroup,
) -> Result<(Vector, Vector)> {
    let g = pair.group();
    let pi = pi_tilde(pair, k)?;
    let lhs = pi.matrix.mul_vec(&q_element(pair, l)?)?;
    if let Some((a, b)) = subgroups_commute(g, k, l).witness {
        return Err(Error::NotCommuting { a, b });
    }
    let hkl = product_subgroup(g, &pi.hk, l)?;
    let blocks: Vec<usize> = hkl.elements().iter().map(|&e| pi.target.block_of(e)).collect();
    let rhs = mu_average(pi.target.len(), &blocks)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{conjugate_subgroup, generate_subgroup, Family, GroupTable};

    fn d4() -> GroupTable {
        GroupTable::builtin(Family::Dihedral(4), 100).unwrap()
    }

    fn el(g: &GroupTable, l: &str) -> usize {
        g.elements().find(|&x| g.label(x) == l).unwrap()
    }

    fn half() -> Rational {
        Rational::new(1, 2).unwrap()
    }

    #[test]
    fn sigma_basics_on_d4() {
        let g = d4();
        let h = generate_subgroup(&g, &[el(&g, "s")]).unwrap();
        let p = HeckePair::new(&g, h).unwrap();
        assert!(sigma_op(&p, el(&g, "s")).unwrap().is_identity());
        let sr = sigma_op(&p, el(&g, "r")).unwrap();
        for i in 0..4 {
            let col = sr.column(i);
            assert_eq!(col.iter().filter(|v| **v == half()).count(), 2);
            assert!(col.iter().all(|v| v.is_zero() || *v == half()));
        }
        assert_eq!(sigma_op_alt(&p, el(&g, "r")).unwrap(), sr);
        assert!(sigma_op_alt(&p, 0).unwrap().is_identity());
        let rho = rho_op(&p, el(&g, "r")).unwrap();
        assert_eq!(rho.mul(&sr).unwrap(), sr.mul(&rho).unwrap());
        let back = rho_op(&p, g.inv(el(&g, "r"))).unwrap();
        assert!(rho.mul(&back).unwrap().is_identity());
    }

    #[test]
    fn sigma_alt_needs_protonormality() {
        let g = GroupTable::builtin(Family::Symmetric(3), 100).unwrap();
        let h = generate_subgroup(&g, &[el(&g, "(1,2)")]).unwrap();
        let p = HeckePair::new(&g, h).unwrap();
        let x = p.protonormality().witness.unwrap();
        assert_eq!(sigma_op_alt(&p, x), Err(Error::NotProtonormal { x }));
    }

    #[test]
    fn hermitian_form_values() {
        let g = d4();
        let h = generate_subgroup(&g, &[el(&g, "s")]).unwrap();
        let p = HeckePair::new(&g, h).unwrap();
        let r = el(&g, "r");
        let e = delta_vec(&p, 0);
        let er = delta_vec(&p, r);
        assert_eq!(hermitian_form(&p, &e, &e).unwrap(), Rational::ONE);
        assert_eq!(hermitian_form(&p, &e, &er).unwrap(), Rational::ZERO);
        assert_eq!(hermitian_form(&p, &er, &er).unwrap(), p.delta(r));
        assert!(hermitian_form(&p, &e, &[Rational::ONE]).is_err());
    }

    #[test]
    fn mu_and_q() {
        assert_eq!(mu_average(3, &[1]).unwrap(), vec![Rational::ZERO, Rational::ONE, Rational::ZERO]);
        assert_eq!(mu_average(2, &[0, 1]).unwrap(), vec![half(), half()]);
        assert_eq!(mu_average(2, &[]), Err(Error::EmptySet));
        let g = d4();
        let h = generate_subgroup(&g, &[el(&g, "s")]).unwrap();
        let p = HeckePair::new(&g, h.clone()).unwrap();
        assert_eq!(q_element(&p, &h).unwrap(), delta_vec(&p, 0));
        let hr = conjugate_subgroup(&g, &h, el(&g, "r")).unwrap();
        let q = q_element(&p, &hr).unwrap();
        let mut expect = delta_vec(&p, 0);
        expect[p.right_cosets().block_of(el(&g, "sr^2"))] = half();
        expect[0] = half();
        assert_eq!(q, expect);
        let qop = q_operator(&p, &hr).unwrap();
        assert_eq!(qop.mul(&qop).unwrap(), qop);
        for c in 0..qop.cols() {
            assert_eq!(crate::rational::sum(&qop.column(c)).unwrap(), Rational::ONE);
        }
        assert!(q_operator(&p, &Subgroup::trivial(&g)).unwrap().is_identity());
    }

    #[test]
    fn q_rejects_non_commuting() {
        let g = GroupTable::builtin(Family::Symmetric(3), 100).unwrap();
        let h = generate_subgroup(&g, &[el(&g, "(1,2)")]).unwrap();
        let k = generate_subgroup(&g, &[el(&g, "(2,3)")]).unwrap();
        let p = HeckePair::new(&g, h).unwrap();
        assert!(matches!(q_element(&p, &k), Err(Error::NotCommuting { .. })));
        assert!(pi_tilde(&p, &k).is_err());
    }

    #[test]
    fn pi_tilde_on_d4() {
        let g = d4();
        let s = el(&g, "s");
        let h = generate_subgroup(&g, &[s]).unwrap();
        let p = HeckePair::new(&g, h.clone()).unwrap();
        let k = generate_subgroup(&g, &[el(&g, "sr^2")]).unwrap();
        let chk = check_pi_tilde(&p, &k).unwrap();
        assert!(chk.holds(), "{chk:?}");
        assert_eq!(chk.target_dim, 2);
        let whole = Subgroup::whole(&g);
        assert_eq!(pi_tilde(&p, &whole).unwrap().target.len(), 1);
        assert!(pi_tilde(&p, &h).unwrap().matrix.is_identity());
        let l = generate_subgroup(&g, &[el(&g, "r^2")]).unwrap();
        let (lhs, rhs) = three_subgroup_identity(&p, &k, &l).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sigma_independent_of_representatives() {
        let g = GroupTable::builtin(Family::Symmetric(4), 100).unwrap();
        for h in crate::group::all_subgroups(&g) {
            let p = HeckePair::new(&g, h.clone()).unwrap();
            let cosets = p.right_cosets();
            let last: Vec<usize> = cosets.blocks().iter().map(|b| *b.last().unwrap()).collect();
            for &x in p.double_cosets().reps() {
                let k = h.intersection(&p.conjugate(x));
                // the largest element of each coset (H∩H^x)h instead of the smallest
                let fam: Vec<usize> = p
                    .sigma_family(x)
                    .iter()
                    .map(|&f| k.elements().iter().map(|&e| g.mul(e, f)).max().unwrap())
                    .collect();
                assert_eq!(
                    sigma_op_with(&p, x, &fam, &last).unwrap(),
                    sigma_op(&p, x).unwrap()
                );
            }
        }
    }
}
