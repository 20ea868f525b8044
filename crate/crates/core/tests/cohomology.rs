use b0lab::catalog;
use b0lab::cohomology::{self, Character, QZValue};
use b0lab::pcgroup::{self, BicyclicMode, Exps};
use b0lab::{PcGroup, Subgroup};

fn group(family: u8, p: u32, variant: &str) -> PcGroup {
    PcGroup::new(catalog::build(family, p, variant).unwrap()).unwrap()
}

fn binom(n: i64, k: i64) -> i64 {
    match k {
        2 => n * (n - 1) / 2,
        3 => n * (n - 1) * (n - 2) / 6,
        _ => unreachable!(),
    }
}

/// Evaluate `g_a^e ...` given 0-based indices and signed exponents.
fn word(g: &PcGroup, letters: &[(usize, i64)]) -> Exps {
    let mut x = g.identity_exps();
    g.mul_letters(&mut x, letters);
    x
}

fn phi10_groups(p: u32) -> Vec<PcGroup> {
    catalog::catalog(p)
        .unwrap()
        .into_iter()
        .filter(|e| e.id.family == 10)
        .map(|e| PcGroup::new(e.presentation).unwrap())
        .collect()
}

fn n45(g: &PcGroup) -> Subgroup<'_> {
    Subgroup::closure(g, &[g.gen_exps(3), g.gen_exps(4)])
}

#[test]
fn phi10_quotient_by_f4_f5_is_extraspecial_exponent_p() {
    for p in [3, 5, 7] {
        for g in phi10_groups(p) {
            let n = n45(&g);
            assert_eq!(n.order(), u64::from(p * p));
            assert!(n.is_abelian() && n.is_normal());
            assert_eq!(n.abelian_invariants().unwrap(), vec![u64::from(p); 2]);
            let q = pcgroup::quotient(&g, &n).unwrap();
            let h = q.group();
            assert_eq!(h.order(), u64::from(p).pow(3));
            assert_eq!(pcgroup::group_exponent(h), u64::from(p));
            assert!(!Subgroup::whole(h).is_abelian());
        }
    }
}

#[test]
fn h2_of_extraspecial_exponent_p() {
    for p in [3, 5] {
        let g = group(10, p, "(1^5)");
        let q = pcgroup::quotient(&g, &n45(&g)).unwrap();
        let h2 = cohomology::h2_qz(q.group(), None).unwrap();
        assert_eq!(h2.invariants(), &[u64::from(p), u64::from(p)]);
    }
}

#[test]
fn invariant_characters_of_f4_f5() {
    for p in [3, 5, 7] {
        for g in phi10_groups(p) {
            let n = n45(&g);
            let inv = cohomology::h1_invariants(&g, &n).unwrap();
            let nontrivial: Vec<_> = inv.iter().filter(|c| !c.is_trivial()).collect();
            assert_eq!(nontrivial.len(), 1, "H1(N)^G has rank 1");
            let phi = nontrivial[0];
            let v4 = phi.eval(&g.gen_exps(3)).unwrap();
            let v5 = phi.eval(&g.gen_exps(4)).unwrap();
            assert!(v5.is_zero());
            assert_eq!(v4.exponent(), 1, "order p");
            // Normalize to the generator with phi1(f4) = 1/p.
            let k = cohomology::QZValue::new(p, 1, 1);
            let scale = (1..p as i64).find(|&s| v4.scale(s) == k).unwrap();
            let phi1 = Character::new(n.clone(), phi.values().iter().map(|v| v.scale(scale)).collect()).unwrap();
            assert_eq!(phi1.eval(&g.gen_exps(3)).unwrap(), QZValue::new(p, 1, 1));
            assert_eq!(phi1.eval(&g.gen_exps(4)).unwrap(), QZValue::zero(p));
        }
    }
}

#[test]
fn f1_conjugation_sends_phi2_to_phi1_plus_phi2() {
    for p in [3, 5, 7] {
        for g in phi10_groups(p) {
            let n = n45(&g);
            let from_table = |a: i64, b: i64| {
                let vals = n
                    .gens()
                    .iter()
                    .map(|x| {
                        let c = n.express(x).unwrap();
                        let (c4, c5) = (i64::from(c[0]), i64::from(c[1]));
                        QZValue::new(p, a * c4 + b * c5, 1)
                    })
                    .collect();
                Character::new(n.clone(), vals).unwrap()
            };
            let phi1 = from_table(1, 0);
            let phi2 = from_table(0, 1);
            let sum = from_table(1, 1);
            assert_eq!(phi1.eval(&g.gen_exps(3)).unwrap(), QZValue::new(p, 1, 1));
            assert_eq!(phi2.eval(&g.gen_exps(4)).unwrap(), QZValue::new(p, 1, 1));
            assert_eq!(phi2.conjugate_by(&g.gen_exps(0)).unwrap(), sum);
            assert_eq!(phi1.conjugate_by(&g.gen_exps(0)).unwrap(), phi1);
        }
    }
}

#[test]
fn phi10_collection_identities() {
    for p in [3, 5, 7] {
        let pi = i64::from(p);
        for g in phi10_groups(p) {
            let (f1, f2, f3, f4, f5) = (0, 1, 2, 3, 4);
            for i in 0..pi {
                for j in 0..pi {
                    let lhs = word(&g, &[(f3, i), (f1, j)]);
                    let rhs = word(&g, &[(f1, j), (f3, i), (f4, i * j), (f5, i * binom(j, 2))]);
                    assert_eq!(lhs, rhs, "f3^{i} f1^{j}");
                    let lhs = word(&g, &[(f2, i), (f1, j)]);
                    let e5 = i * binom(j, 3) + binom(i, 2) * j;
                    let rhs = word(&g, &[(f1, j), (f2, i), (f3, i * j), (f4, i * binom(j, 2)), (f5, e5)]);
                    assert_eq!(lhs, rhs, "f2^{i} f1^{j}");
                }
            }
            let q = pcgroup::quotient(&g, &n45(&g)).unwrap();
            let h = q.group();
            let bar = |k: usize| q.project(&g, &g.gen_exps(k));
            let letters = |x: &Exps, e: i64| -> Vec<(usize, i64)> {
                x.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, i64::from(c) * e)).collect()
            };
            let (b1, b2, b3) = (bar(f1), bar(f2), bar(f3));
            for i in 1..pi {
                for j in 1..pi {
                    let base = h.mul(&h.pow(&b1, j), &h.pow(&b2, i));
                    for e in 1..=pi {
                        let lhs = h.pow(&base, e);
                        let mut rhs = h.identity_exps();
                        for (x, k) in [(&b1, e * j), (&b2, e * i), (&b3, binom(e, 2) * i * j)] {
                            h.mul_letters(&mut rhs, &letters(x, k));
                        }
                        assert_eq!(lhs, rhs, "(f1^{j} f2^{i})^{e}");
                    }
                }
            }
        }
    }
}

#[test]
fn phi6_collection_identities() {
    for p in [3, 5, 7] {
        let pi = i64::from(p);
        for e in catalog::catalog(p).unwrap().into_iter().filter(|e| e.id.family == 6) {
            let g = PcGroup::new(e.presentation).unwrap();
            let (f1, f2, f0, h1, h2) = (0, 1, 2, 3, 4);
            for i in 0..pi {
                for j in 0..pi {
                    assert_eq!(
                        word(&g, &[(f0, j), (f1, i)]),
                        word(&g, &[(f1, i), (f0, j), (h1, i * j)]),
                        "{}: f0^{j} f1^{i}",
                        e.id
                    );
                    assert_eq!(
                        word(&g, &[(f0, j), (f2, i)]),
                        word(&g, &[(f2, i), (f0, j), (h2, i * j)]),
                        "{}: f0^{j} f2^{i}",
                        e.id
                    );
                    assert_eq!(
                        word(&g, &[(f2, i), (f1, j)]),
                        word(&g, &[(f1, j), (f2, i), (f0, -i * j), (h1, -i * binom(j, 2)), (h2, -j * binom(i, 2))]),
                        "{}: f2^{i} f1^{j}",
                        e.id
                    );
                }
            }
        }
    }
}

#[test]
fn transgression_not_surjective_on_phi10() {
    let g = group(10, 5, "(1^5)");
    let r = cohomology::transgression_cokernel(&g, &n45(&g), None).unwrap();
    assert_eq!(r.h1_fixed_order, 5);
    assert_eq!(r.h2_quotient_order, 25);
    assert!(r.cokernel_order >= 5);
}

#[test]
fn lemma22_certificates_at_p3() {
    for g in phi10_groups(3) {
        let f: Vec<_> = (0..5).map(|i| g.gen_exps(i)).collect();
        let c = cohomology::lemma22_check(&g, &f, BicyclicMode::AllPairs).unwrap();
        assert!(c.holds, "{:?}", c.transcript);
    }
    let g = group(5, 3, "(1^5)");
    let f: Vec<_> = (0..5).map(|i| g.gen_exps(i)).collect();
    assert!(!cohomology::lemma22_check(&g, &f, BicyclicMode::AllPairs).unwrap().holds);
}

#[test]
fn thm56_certificate_for_phi6_221a() {
    for p in [3, 5] {
        let g = group(6, p, "(221)a");
        let n = Subgroup::closure(&g, &[g.gen_exps(0), g.gen_exps(2), g.gen_exps(3), g.gen_exps(4)]);
        let c = cohomology::thm56_certificate(&g, &n).unwrap();
        assert!(c.holds, "p={p}: {:?}", c.transcript);
    }
}

#[test]
fn b0_oracle_on_small_groups() {
    let heis = PcGroup::new(catalog::parse_pcp("p 3\ngens 3\ncomm 2 1 : 3^1\n").unwrap()).unwrap();
    let r = cohomology::b0_oracle(&heis, None, BicyclicMode::AllPairs).unwrap();
    assert!(r.invariants.is_empty());
    assert_eq!(r.multiplier_invariants, vec![3, 3]);
    let big = group(10, 3, "(1^5)");
    assert!(matches!(
        cohomology::b0_oracle(&big, None, BicyclicMode::AllPairs),
        Err(b0lab::Error::SizeCap { .. })
    ));
}

#[test]
fn criteria_verdicts_on_catalog() {
    for e in catalog::catalog(3).unwrap() {
        let g = PcGroup::new(e.presentation).unwrap();
        let v = cohomology::b0_criteria(&g, BicyclicMode::CyclicReps).unwrap();
        match (e.id.family, e.id.variant.as_str()) {
            (10, _) => assert_eq!(v.nonzero, Some(true), "{}", e.id),
            (6, "(221)a") => assert_eq!(v.nonzero, Some(false), "{}", e.id),
            _ => assert_ne!(v.nonzero, Some(true), "{}", e.id),
        }
    }
}
