//! A subgroup pair `(G, H)` with its coset data, the numbers `R(x)` and
//! `Δ(x)`, and the normal / subnormal / protonormal classification.

use crate::error::Result;
use crate::group::{
    conjugate_subgroup, is_normal, is_normal_in, normal_closure, rep_family, set_product,
    subgroups_commute, CosetSpace, GroupTable, Subgroup,
};
use crate::par;
use crate::rational::Rational;

/// Everything derived once per pair and shared by the later modules.
#[derive(Debug, Clone)]
pub struct HeckePair<'g> {
    g: &'g GroupTable,
    h: Subgroup,
    right: CosetSpace,
    dc: CosetSpace,
    r: Vec<usize>,
    delta: Vec<Rational>,
}

impl<'g> HeckePair<'g> {
    pub fn new(g: &'g GroupTable, h: Subgroup) -> Result<HeckePair<'g>> {
        let right = CosetSpace::right(g, &h);
        let dc = CosetSpace::double(g, &h, &h);
        // |HxH| = R(x)|H|
        let r: Vec<usize> = dc.blocks().iter().map(|b| b.len() / h.order()).collect();
        let delta = dc
            .reps()
            .iter()
            .map(|&x| {
                let inv = dc.block_of(g.inv(x));
                Rational::new(r[dc.block_of(x)] as i128, r[inv] as i128)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HeckePair { g, h, right, dc, r, delta })
    }

    pub fn group(&self) -> &'g GroupTable {
        self.g
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.h
    }

    /// Right cosets `Ht`; the basis of the coset module.
    pub fn right_cosets(&self) -> &CosetSpace {
        &self.right
    }

    pub fn double_cosets(&self) -> &CosetSpace {
        &self.dc
    }

    /// `[G : H]`
    pub fn index(&self) -> usize {
        self.right.len()
    }

    pub fn num_double_cosets(&self) -> usize {
        self.dc.len()
    }

    /// `R(x)`, the number of right cosets in `HxH`.
    pub fn r(&self, x: usize) -> usize {
        self.r[self.dc.block_of(x)]
    }

    pub fn delta(&self, x: usize) -> Rational {
        self.delta[self.dc.block_of(x)]
    }

    /// `H^x = x^{-1} H x`.
    pub fn conjugate(&self, x: usize) -> Subgroup {
        conjugate_subgroup(self.g, &self.h, x).expect("element in range")
    }

    /// `S_x`: one element of `H` per right coset of `H ∩ H^x` in `H`.
    pub fn sigma_family(&self, x: usize) -> Vec<usize> {
        let k = self.h.intersection(&self.conjugate(x));
        rep_family(self.g, &self.h, &k).expect("intersection lies in H")
    }

    pub fn hecke_data(&self) -> HeckeData {
        HeckeData {
            reps: self.dc.reps().to_vec(),
            r: self.r.clone(),
            delta: self.delta.clone(),
        }
    }

    pub fn is_normal(&self) -> bool {
        is_normal(self.g, &self.h)
    }

    fn commutes_with_conjugate(&self, x: usize) -> Option<(usize, usize)> {
        subgroups_commute(self.g, &self.conjugate(x), &self.h).witness
    }

    /// Protonormality tested on double coset representatives only. Failure
    /// is constant on double cosets, so the witness is also the smallest
    /// failing element of `G`.
    pub fn protonormality(&self) -> Protonormality {
        let reps = self.dc.reps();
        let hit = par::find_first(reps.len(), |i| self.commutes_with_conjugate(reps[i]));
        Protonormality::from_hit(hit.map(|(i, w)| (reps[i], w)))
    }

    /// The same predicate over every `x` in `G`.
    pub fn protonormality_full(&self) -> Protonormality {
        let hit = par::find_first(self.g.order(), |x| self.commutes_with_conjugate(x));
        Protonormality::from_hit(hit)
    }

    pub fn is_protonormal(&self) -> bool {
        self.protonormality().holds
    }

    /// Subnormality via the normal closure `N`: `H` is subnormal iff `H ⊴ N`.
    pub fn subnormality(&self) -> Subnormality {
        let n = normal_closure(self.g, &self.h);
        if is_normal_in(self.g, &self.h, &n) {
            return Subnormality { holds: true, closure: n, triple: None };
        }
        let g = self.g;
        let hs = self.h.elements();
        let triple = par::find_first(g.order(), |x| {
            for &h in hs {
                let y = g.mul(g.mul(x, h), g.inv(x));
                for &k in hs {
                    if !self.h.contains(g.mul(g.mul(y, k), g.inv(y))) {
                        return Some((h, k));
                    }
                }
            }
            None
        })
        .map(|(x, (h, k))| (x, h, k));
        Subnormality { holds: false, closure: n, triple }
    }

    pub fn is_subnormal(&self) -> bool {
        is_normal_in(self.g, &self.h, &normal_closure(self.g, &self.h))
    }

    pub fn report(&self) -> PairReport {
        let proto = self.protonormality();
        let sub = self.subnormality();
        PairReport {
            group_order: self.g.order(),
            subgroup_order: self.h.order(),
            index: self.index(),
            double_cosets: self.num_double_cosets(),
            hecke: self.hecke_data(),
            is_normal: self.is_normal(),
            is_protonormal: proto.holds,
            is_subnormal: sub.holds,
            protonormal_witness: proto.witness,
            subnormal_triple: sub.triple,
            normal_closure: sub.closure.elements().to_vec(),
        }
    }

    /// Checks `Δ(xy) = Δ(x)Δ(y)` for all pairs; returns the first failure.
    pub fn delta_multiplicativity(&self) -> Result<Option<(usize, usize)>> {
        let g = self.g;
        par::try_find_first(g.order(), |x| {
            for y in g.elements() {
                if self.delta(g.mul(x, y)) != self.delta(x).mul(&self.delta(y))? {
                    return Ok(Some(y));
                }
            }
            Ok(None)
        })
    }

    /// Consequences of subnormality: `H ∩ H^x ⊴ H` and `H ⊴ H H^x` for all x.
    pub fn subnormal_consequences_hold(&self) -> bool {
        let g = self.g;
        g.elements().all(|x| {
            let hx = self.conjugate(x);
            let meet = self.h.intersection(&hx);
            if !is_normal_in(g, &meet, &self.h) {
                return false;
            }
            match Subgroup::from_elements(g, &set_product(g, self.h.elements(), hx.elements())) {
                Ok(prod) => is_normal_in(g, &self.h, &prod),
                Err(_) => false,
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeData {
    pub reps: Vec<usize>,
    pub r: Vec<usize>,
    pub delta: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Protonormality {
    pub holds: bool,
    /// Smallest `x` with `H^x H ≠ H H^x`.
    pub witness: Option<usize>,
    /// `(a, b)` with `a ∈ H^x`, `b ∈ H` and `ab ∉ H H^x`.
    pub commutation_pair: Option<(usize, usize)>,
}

impl Protonormality {
    fn from_hit(hit: Option<(usize, (usize, usize))>) -> Protonormality {
        Protonormality {
            holds: hit.is_none(),
            witness: hit.map(|(x, _)| x),
            commutation_pair: hit.map(|(_, p)| p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subnormality {
    pub holds: bool,
    /// Normal closure of `H`; the middle term of `H ⊴ N ⊴ G` when subnormal.
    pub closure: Subgroup,
    /// Smallest `(x, h, k)` with `(xhx^{-1}) k (xhx^{-1})^{-1} ∉ H`.
    pub triple: Option<(usize, usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub index: usize,
    pub double_cosets: usize,
    pub hecke: HeckeData,
    pub is_normal: bool,
    pub is_protonormal: bool,
    pub is_subnormal: bool,
    pub protonormal_witness: Option<usize>,
    pub subnormal_triple: Option<(usize, usize, usize)>,
    pub normal_closure: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{generate_subgroup, Family};

    fn setup(fam: Family, gens: &[&str]) -> (GroupTable, Subgroup) {
        let g = GroupTable::builtin(fam, 1000).unwrap();
        let idx: Vec<usize> = gens
            .iter()
            .map(|l| g.elements().find(|&x| g.label(x) == *l).unwrap())
            .collect();
        let h = generate_subgroup(&g, &idx).unwrap();
        (g, h)
    }

    #[test]
    fn d4_reflection_pair() {
        let (g, h) = setup(Family::Dihedral(4), &["s"]);
        let p = HeckePair::new(&g, h).unwrap();
        let find = |l: &str| g.elements().find(|&x| g.label(x) == l).unwrap();
        assert_eq!(p.r(0), 1);
        assert_eq!(p.r(find("r^2")), 1);
        assert_eq!(p.r(find("r")), 2);
        assert!(p.hecke_data().delta.iter().all(Rational::is_one));
        assert!(p.is_protonormal());
        let sub = p.subnormality();
        assert!(sub.holds);
        let mut klein = vec![0, find("r^2"), find("s"), find("sr^2")];
        klein.sort();
        assert_eq!(sub.closure.elements(), klein.as_slice());
        assert!(!p.is_normal());
        assert!(p.subnormal_consequences_hold());
    }

    #[test]
    fn s3_transposition_pair() {
        let (g, h) = setup(Family::Symmetric(3), &["(1,2)"]);
        let p = HeckePair::new(&g, h.clone()).unwrap();
        let proto = p.protonormality();
        assert!(!proto.holds);
        let x = proto.witness.unwrap();
        let hx = p.conjugate(x);
        assert_ne!(
            set_product(&g, hx.elements(), h.elements()),
            set_product(&g, h.elements(), hx.elements())
        );
        assert_eq!(p.protonormality_full().witness, Some(x));
        let sub = p.subnormality();
        assert!(!sub.holds);
        assert_eq!(sub.closure.order(), 6);
        let (x, a, b) = sub.triple.unwrap();
        let y = g.mul(g.mul(x, a), g.inv(x));
        assert!(!h.contains(g.mul(g.mul(y, b), g.inv(y))));
    }

    #[test]
    fn normal_and_trivial_subgroups() {
        let (g, h) = setup(Family::Dihedral(4), &["r"]);
        let p = HeckePair::new(&g, h).unwrap();
        assert!(p.is_normal() && p.is_subnormal() && p.is_protonormal());
        assert!(p.hecke_data().r.iter().all(|&r| r == 1));
        let t = HeckePair::new(&g, Subgroup::trivial(&g)).unwrap();
        assert_eq!(t.num_double_cosets(), 8);
        assert!(g.elements().all(|x| t.r(x) == 1));
        assert_eq!(p.delta_multiplicativity().unwrap(), None);
    }

    #[test]
    fn r_counts_match_double_coset_sizes() {
        for fam in [Family::Symmetric(4), Family::AffineMod(5), Family::Dihedral(6)] {
            let g = GroupTable::builtin(fam, 1000).unwrap();
            for h in crate::group::all_subgroups(&g) {
                let p = HeckePair::new(&g, h.clone()).unwrap();
                for (b, block) in p.double_cosets().blocks().iter().enumerate() {
                    let x = p.double_cosets().rep(b);
                    assert_eq!(block.len(), p.sigma_family(x).len() * h.order());
                }
            }
        }
    }
}
