//! Library results against brute-force computations written from the
//! definitions, using nothing but the multiplication table.

use std::collections::BTreeSet;

use hecke_core::corpus::corpus_groups;
use hecke_core::crossed::{untwist_detect, verify_crossed_product};
use hecke_core::group::{generate_subgroup, Family, GroupTable, Subgroup};
use hecke_core::hecke::HeckeAlgebra;
use hecke_core::module_space::sigma_op;
use hecke_core::pair::HeckePair;
use hecke_core::{Matrix, Rational};

fn el(g: &GroupTable, label: &str) -> usize {
    g.elements().find(|&x| g.label(x) == label).unwrap()
}

fn set(it: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    it.into_iter().collect()
}

fn right_coset(g: &GroupTable, h: &[usize], t: usize) -> BTreeSet<usize> {
    set(h.iter().map(|&k| g.mul(k, t)))
}

fn double_coset(g: &GroupTable, h: &[usize], x: usize) -> BTreeSet<usize> {
    set(h.iter().flat_map(|&a| h.iter().map(move |&b| g.mul(g.mul(a, x), b))))
}

/// All right cosets, each as a set.
fn right_cosets(g: &GroupTable, h: &[usize]) -> Vec<BTreeSet<usize>> {
    let mut out: Vec<BTreeSet<usize>> = Vec::new();
    for t in g.elements() {
        let c = right_coset(g, h, t);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// `σ_x(δ_{Ht}) = (1/R) Σ_{Hu ⊆ HxHt} δ_{Hu}`, from the function form,
/// with basis index taken from the library's coset numbering.
fn sigma_oracle(pair: &HeckePair, x: usize) -> Matrix {
    let g = pair.group();
    let h = pair.subgroup().elements();
    let cosets = right_cosets(g, h);
    let idx = |c: &BTreeSet<usize>| pair.right_cosets().block_of(*c.iter().next().unwrap());
    let n = cosets.len();
    let mut m = Matrix::zeros(n, n);
    for c in &cosets {
        let t = *c.iter().next().unwrap();
        let target = set(double_coset(g, h, x).into_iter().map(|y| g.mul(y, t)));
        let inside: Vec<&BTreeSet<usize>> = cosets.iter().filter(|d| d.is_subset(&target)).collect();
        let w = Rational::new(1, inside.len() as i128).unwrap();
        for d in inside {
            m.set(idx(d), idx(c), w);
        }
    }
    m
}

fn r_oracle(g: &GroupTable, h: &[usize], x: usize) -> usize {
    double_coset(g, h, x).len() / h.len()
}

fn corpus(max: usize) -> Vec<(GroupTable, Subgroup)> {
    corpus_groups(max)
        .unwrap()
        .into_iter()
        .flat_map(|c| {
            let g = c.group;
            c.subgroups.into_iter().map(move |h| (g.clone(), h))
        })
        .collect()
}

#[test]
fn d4_index_counts() {
    let g = GroupTable::builtin(Family::Dihedral(4), 100).unwrap();
    let h = generate_subgroup(&g, &[el(&g, "s")]).unwrap();
    let pair = HeckePair::new(&g, h.clone()).unwrap();
    for (x, r) in [("1", 1), ("r^2", 1), ("r", 2)] {
        assert_eq!(pair.r(el(&g, x)), r);
        assert_eq!(r_oracle(&g, h.elements(), el(&g, x)), r);
    }
    let sizes: Vec<usize> = pair.double_cosets().blocks().iter().map(|b| b.len()).collect();
    assert_eq!(set(sizes.iter().copied()), set([2, 4]));
    assert_eq!(sizes.iter().sum::<usize>(), 8);
}

#[test]
fn r_delta_and_sigma_match_oracle() {
    for (g, h) in corpus(12) {
        let pair = HeckePair::new(&g, h.clone()).unwrap();
        for x in g.elements() {
            let r = r_oracle(&g, h.elements(), x);
            assert_eq!(pair.r(x), r);
            let ri = r_oracle(&g, h.elements(), g.inv(x));
            assert_eq!(pair.delta(x), Rational::new(r as i128, ri as i128).unwrap());
        }
        for &x in pair.double_cosets().reps() {
            assert_eq!(sigma_op(&pair, x).unwrap(), sigma_oracle(&pair, x));
        }
    }
}

#[test]
fn d4_golden_product() {
    let g = GroupTable::builtin(Family::Dihedral(4), 100).unwrap();
    let h = generate_subgroup(&g, &[el(&g, "s")]).unwrap();
    let pair = HeckePair::new(&g, h).unwrap();
    let r = sigma_oracle(&pair, el(&g, "r"));
    let half = Rational::new(1, 2).unwrap();
    let expect = sigma_oracle(&pair, 0)
        .add(&sigma_oracle(&pair, el(&g, "r^2")))
        .unwrap()
        .scale(&half)
        .unwrap();
    assert_eq!(r.mul(&r).unwrap(), expect);
    let alg = HeckeAlgebra::new(pair);
    let sr = alg.sigma(el(&g, "r")).unwrap();
    let lib = alg.convolve(&sr, &sr).unwrap();
    assert_eq!(alg.to_operator(&lib), expect);
}

fn commute_oracle(g: &GroupTable, a: &[usize], b: &[usize]) -> bool {
    let ab = set(a.iter().flat_map(|&x| b.iter().map(move |&y| g.mul(x, y))));
    let ba = set(b.iter().flat_map(|&y| a.iter().map(move |&x| g.mul(y, x))));
    ab == ba
}

fn conj_set(g: &GroupTable, h: &[usize], x: usize) -> Vec<usize> {
    h.iter().map(|&k| g.mul(g.mul(g.inv(x), k), x)).collect()
}

fn closure_oracle(g: &GroupTable, gens: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut s = gens.clone();
    s.insert(0);
    loop {
        let next = set(s.iter().flat_map(|&a| s.iter().map(move |&b| g.mul(a, b))));
        if next == s {
            return s;
        }
        s = next;
    }
}

#[test]
fn hierarchy_matches_oracle() {
    for (g, h) in corpus(16) {
        let hs = h.elements();
        let pair = HeckePair::new(&g, h.clone()).unwrap();
        let proto = g.elements().all(|x| commute_oracle(&g, &conj_set(&g, hs, x), hs));
        assert_eq!(pair.is_protonormal(), proto);
        let normal = g.elements().all(|x| set(conj_set(&g, hs, x)) == set(hs.iter().copied()));
        assert_eq!(pair.is_normal(), normal);
        let n = closure_oracle(&g, &set(g.elements().flat_map(|x| conj_set(&g, hs, x))));
        let sub = n.iter().all(|&x| set(conj_set(&g, hs, x)) == set(hs.iter().copied()));
        assert_eq!(pair.is_subnormal(), sub);
    }
}

#[test]
fn s3_transposition_is_not_protonormal() {
    let g = GroupTable::builtin(Family::Symmetric(3), 100).unwrap();
    let h = generate_subgroup(&g, &[el(&g, "(1,2)")]).unwrap();
    let pair = HeckePair::new(&g, h.clone()).unwrap();
    let p = pair.protonormality();
    let x = p.witness.unwrap();
    assert!(!commute_oracle(&g, &conj_set(&g, h.elements(), x), h.elements()));
    // (13) is also a witness
    assert!(!commute_oracle(&g, &conj_set(&g, h.elements(), el(&g, "(1,3)")), h.elements()));
    let bad = pair.double_cosets().reps().iter().any(|&x| {
        let a = sigma_oracle(&pair, x);
        let b = sigma_oracle(&pair, g.inv(x));
        a.mul(&b).unwrap().mul(&a).unwrap() != a
    });
    assert!(bad);
}

#[test]
fn cyclic6_mod_order_two_is_group_algebra_of_z3() {
    let g = GroupTable::builtin(Family::Cyclic(6), 100).unwrap();
    let h = generate_subgroup(&g, &[3]).unwrap();
    let alg = HeckeAlgebra::new(HeckePair::new(&g, h).unwrap());
    assert_eq!(alg.dim(), 3);
    let a = alg.sigma(1).unwrap();
    let a2 = alg.convolve(&a, &a).unwrap();
    assert_eq!(a2, alg.sigma(2).unwrap());
    assert_eq!(alg.convolve(&a2, &a).unwrap(), alg.one());
}

#[test]
fn crossed_product_dimension_counts() {
    let g = GroupTable::builtin(Family::Dihedral(4), 100).unwrap();
    let h = generate_subgroup(&g, &[el(&g, "s")]).unwrap();
    let alg = HeckeAlgebra::new(HeckePair::new(&g, h.clone()).unwrap());
    let k4 = generate_subgroup(&g, &[el(&g, "s"), el(&g, "r^2")]).unwrap();
    let rep = verify_crossed_product(&alg, &k4, None).unwrap();
    assert!(rep.holds());
    let dcs = set(g.elements().map(|x| *double_coset(&g, h.elements(), x).iter().next().unwrap()));
    assert_eq!(rep.isomorphism.dim, dcs.len());
    assert_eq!(rep.iota_rank, 2);
}

#[test]
fn direct_product_untwists() {
    // Z2 × Z3 ≅ Z6 with N = Z3
    let g = GroupTable::builtin(Family::Cyclic(6), 100).unwrap();
    let n = generate_subgroup(&g, &[2]).unwrap();
    let alg = HeckeAlgebra::new(HeckePair::new(&g, Subgroup::trivial(&g)).unwrap());
    let u = untwist_detect(&alg, &n).unwrap();
    assert!(u.untwisted());
    assert_eq!(u.section, Some(vec![0, 3]));
}
