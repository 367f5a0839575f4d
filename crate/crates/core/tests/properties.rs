use std::sync::OnceLock;

use proptest::prelude::*;

use hecke_core::corpus::corpus_groups;
use hecke_core::crossed::verify_crossed_product;
use hecke_core::group::{normal_closure, CosetSpace, GroupTable, Subgroup};
use hecke_core::hecke::{HeckeAlgebra, HeckeElement};
use hecke_core::pair::HeckePair;
use hecke_core::Rational;

fn pairs() -> &'static [(GroupTable, Subgroup)] {
    static PAIRS: OnceLock<Vec<(GroupTable, Subgroup)>> = OnceLock::new();
    PAIRS.get_or_init(|| {
        corpus_groups(16)
            .unwrap()
            .into_iter()
            .flat_map(|c| {
                let g = c.group;
                c.subgroups.into_iter().map(move |h| (g.clone(), h))
            })
            .collect()
    })
}

fn pair_index() -> impl Strategy<Value = usize> {
    0..pairs().len()
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i128..=9, 1i128..=5).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn element(alg: &HeckeAlgebra, coeffs: &[Rational]) -> HeckeElement {
    HeckeElement::from_values(coeffs.iter().cycle().take(alg.dim()).copied().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cosets_partition_the_group(i in pair_index()) {
        let (g, h) = &pairs()[i];
        for space in [CosetSpace::right(g, h), CosetSpace::left(g, h), CosetSpace::double(g, h, h)] {
            let mut seen = vec![false; g.order()];
            for (b, block) in space.blocks().iter().enumerate() {
                prop_assert_eq!(space.rep(b), block[0]);
                for &x in block {
                    prop_assert!(!seen[x]);
                    seen[x] = true;
                    prop_assert_eq!(space.block_of(x), b);
                }
            }
            prop_assert!(seen.iter().all(|&s| s));
        }
        prop_assert_eq!(CosetSpace::right(g, h).len() * h.order(), g.order());
    }

    #[test]
    fn hierarchy_and_modular_function(i in pair_index()) {
        let (g, h) = &pairs()[i];
        let pair = HeckePair::new(g, h.clone()).unwrap();
        let rep = pair.report();
        prop_assert!(!rep.is_normal || rep.is_subnormal);
        prop_assert!(!rep.is_subnormal || rep.is_protonormal);
        prop_assert_eq!(pair.protonormality().holds, pair.protonormality_full().holds);
        for x in g.elements() {
            let d = Rational::new(pair.r(x) as i128, pair.r(g.inv(x)) as i128).unwrap();
            prop_assert_eq!(pair.delta(x), d);
            prop_assert!(pair.delta(x).is_one());
            prop_assert_eq!(pair.r(x), pair.sigma_family(x).len());
            prop_assert_eq!(pair.r(x), h.order() / h.intersection(&pair.conjugate(x)).order());
        }
        if rep.is_normal {
            prop_assert!(rep.hecke.r.iter().all(|&r| r == 1));
        }
    }

    #[test]
    fn involutions_and_convolution(
        i in pair_index(),
        a in proptest::collection::vec(small_rational(), 1..6),
        b in proptest::collection::vec(small_rational(), 1..6),
        c in proptest::collection::vec(small_rational(), 1..6),
    ) {
        let (g, h) = &pairs()[i];
        let alg = HeckeAlgebra::new(HeckePair::new(g, h.clone()).unwrap());
        let (f, k, l) = (element(&alg, &a), element(&alg, &b), element(&alg, &c));
        let fk = alg.convolve(&f, &k).unwrap();
        prop_assert_eq!(alg.star(&alg.star(&f).unwrap()).unwrap(), f.clone());
        prop_assert_eq!(alg.sharp(&alg.sharp(&f)), f.clone());
        prop_assert_eq!(alg.star(&fk).unwrap(), alg.convolve(&alg.star(&k).unwrap(), &alg.star(&f).unwrap()).unwrap());
        prop_assert_eq!(alg.sharp(&fk), alg.convolve(&alg.sharp(&k), &alg.sharp(&f)).unwrap());
        prop_assert_eq!(
            alg.convolve(&fk, &l).unwrap(),
            alg.convolve(&f, &alg.convolve(&k, &l).unwrap()).unwrap()
        );
        let op = alg.to_operator(&f);
        prop_assert_eq!(alg.from_operator(&op).unwrap(), f.clone());
        prop_assert_eq!(alg.to_operator(&fk), op.mul(&alg.to_operator(&k)).unwrap());
        prop_assert_eq!(alg.from_sigma_coords(&alg.sigma_coords(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn crossed_product_is_section_independent(i in pair_index(), pick in any::<u64>()) {
        let (g, h) = &pairs()[i];
        let pair = HeckePair::new(g, h.clone()).unwrap();
        prop_assume!(pair.is_subnormal());
        let alg = HeckeAlgebra::new(pair);
        let n = normal_closure(g, h);
        let q = CosetSpace::right(g, &n);
        let mut section: Vec<usize> = q
            .blocks()
            .iter()
            .enumerate()
            .map(|(t, b)| b[((pick >> (t % 32)) as usize + t) % b.len()])
            .collect();
        section[0] = 0;
        let rep = verify_crossed_product(&alg, &n, Some(section)).unwrap();
        prop_assert!(rep.holds(), "{:?}", rep);
    }
}
