use b0lab::catalog::{self, family_counts};
use b0lab::pcgroup::{self, PcGroup, Subgroup};

#[test]
fn every_catalog_group_is_consistent_of_order_p5() {
    for p in [3, 5, 7, 11, 13] {
        for e in catalog::catalog(p).unwrap() {
            let g = PcGroup::new(e.presentation.clone())
                .unwrap_or_else(|err| panic!("{}: {err}", e.id));
            assert_eq!(g.order(), u64::from(p).pow(5), "{}", e.id);
        }
    }
}

#[test]
fn constructor_counts_match_family_counts() {
    for p in [3, 5, 7, 11, 13] {
        let counts = family_counts(p).unwrap();
        for fam in [5u8, 6, 7, 10] {
            let n = catalog::variants(fam, p).unwrap().len() as u32;
            assert_eq!(n, counts.per_family[fam as usize - 1], "family {fam}, p={p}");
        }
    }
}

#[test]
fn centers_and_derived_subgroups() {
    for p in [3, 5] {
        for e in catalog::catalog(p).unwrap() {
            let g = PcGroup::new(e.presentation.clone()).unwrap();
            let z = pcgroup::center(&g).order();
            let d = pcgroup::derived_subgroup(&g).order();
            let pp = u64::from(p);
            let (ez, ed) = match e.id.family {
                1 => (pp.pow(5), 1),
                5 => (pp, pp),
                6 => (pp * pp, pp.pow(3)),
                7 => (pp, pp * pp),
                10 => (pp, pp.pow(3)),
                _ => unreachable!(),
            };
            assert_eq!((z, d), (ez, ed), "{}", e.id);
        }
    }
}

#[test]
fn abelian_types() {
    let g = PcGroup::new(catalog::build_abelian(&[2, 2, 1], 3).unwrap()).unwrap();
    assert_eq!(Subgroup::whole(&g).abelian_invariants().unwrap(), vec![3, 9, 9]);
    let g = PcGroup::new(catalog::build_abelian(&[5], 3).unwrap()).unwrap();
    assert_eq!(pcgroup::group_exponent(&g), 243);
}

#[test]
fn p_quotient_recovers_catalog_groups() {
    use b0lab::pquotient::{p_quotient, FpPresentation};
    for p in [3, 5] {
        for e in catalog::catalog(p).unwrap() {
            let f = FpPresentation::from_pc(&e.presentation);
            let q = p_quotient(&f, p, 10).unwrap();
            assert!(q.is_stable(), "{}", e.id);
            assert_eq!(q.order(), u64::from(p).pow(5), "{}", e.id);
            let g = PcGroup::new(e.presentation.clone()).unwrap();
            assert_eq!(pcgroup::center(q.group()).order(), pcgroup::center(&g).order());
            assert_eq!(pcgroup::group_exponent(q.group()), pcgroup::group_exponent(&g));
        }
    }
}

fn exhaustively_associative(g: &PcGroup) -> bool {
    let all: Vec<_> = g.all_exps().collect();
    all.iter().all(|a| {
        all.iter().all(|b| {
            let ab = g.mul(a, b);
            all.iter().all(|c| g.mul(&ab, c) == g.mul(a, &g.mul(b, c)))
        })
    })
}

#[test]
fn phi10_without_f3_f2_relation_is_still_consistent() {
    for p in [3, 5, 7] {
        for v in catalog::variants(10, p).unwrap() {
            let mut pres = catalog::build_phi10(p, &v).unwrap();
            pres.set_comm(2, 1, &[]).unwrap();
            assert!(pcgroup::is_consistent(&pres), "p={p} {v}");
        }
    }
    let mut pres = catalog::build_phi10(3, "(1^5)").unwrap();
    pres.set_comm(2, 1, &[]).unwrap();
    let g = PcGroup::new_unchecked(pres).unwrap();
    assert!(exhaustively_associative(&g));
    // A different group: the commutator subgroup becomes abelian of rank 3.
    assert!(pcgroup::derived_subgroup(&g).is_abelian());
}

#[test]
fn noncentral_power_tail_is_inconsistent() {
    for p in [3, 5, 7] {
        let mut pres = catalog::build_phi10(p, "(1^5)").unwrap();
        pres.set_power(0, &[(1, 1)]).unwrap();
        assert!(!pcgroup::is_consistent(&pres), "p={p}");
        if p == 3 {
            assert!(!exhaustively_associative(&PcGroup::new_unchecked(pres).unwrap()));
        }
    }
}
