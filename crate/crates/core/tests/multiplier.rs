use b0lab::catalog;
use b0lab::multiplier::{self, B0Options, PairMode};
use b0lab::pcgroup::{self, commuting_pairs};
use b0lab::{PcGroup, PcPresentation};

fn data_groups() -> Vec<PcGroup> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");
    let mut paths: Vec<_> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    paths
        .iter()
        .map(|p| PcGroup::new(catalog::parse_pcp(&std::fs::read_to_string(p).unwrap()).unwrap()).unwrap())
        .collect()
}

fn abelian(p: u32, part: &[u32]) -> PcGroup {
    let n = part.iter().sum::<u32>() as usize;
    let mut pres = PcPresentation::new(p, n);
    let mut k = 0;
    for &l in part {
        for i in 0..l as usize - 1 {
            pres.set_power(k + i, &[(k + i + 1, 1)]).unwrap();
        }
        k += l as usize;
    }
    PcGroup::new(pres).unwrap()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

#[test]
fn abelian_multiplier_matches_pairwise_gcd_formula() {
    let parts: &[&[u32]] = &[&[1], &[1, 1], &[2, 1], &[1, 1, 1], &[2, 2], &[3, 1], &[2, 1, 1]];
    for &part in parts {
        let g = abelian(3, part);
        let cyc: Vec<u64> = part.iter().map(|&l| 3u64.pow(l)).collect();
        let mut expected = Vec::new();
        for i in 0..cyc.len() {
            for j in i + 1..cyc.len() {
                expected.push(gcd(cyc[i], cyc[j]));
            }
        }
        expected.sort_unstable();
        let mut got = multiplier::schur_multiplier(&g, None).unwrap();
        got.sort_unstable();
        assert_eq!(got, expected, "{part:?}");
    }
}

#[test]
fn tau_order_identities_on_every_test_group() {
    let mut groups = data_groups();
    groups.extend(catalog::catalog(3).unwrap().into_iter().map(|e| PcGroup::new(e.presentation).unwrap()));
    for g in &groups {
        let d = multiplier::exterior_square(g, None).unwrap();
        assert_eq!(d.tau_group().order(), g.order().pow(2) * d.wedge_order());
        assert_eq!(d.wedge_order(), d.multiplier_order() * d.derived_order());
        assert_eq!(d.derived_order(), pcgroup::derived_subgroup(g).order());
    }
}

#[test]
fn pair_modes_agree() {
    let mut groups = data_groups();
    groups.extend(catalog::catalog(3).unwrap().into_iter().map(|e| PcGroup::new(e.presentation).unwrap()));
    for g in &groups {
        let full = multiplier::b0_tensor(g, B0Options::default()).unwrap();
        let bic = multiplier::b0_tensor(g, B0Options { pairs: PairMode::Bicyclic, ..Default::default() }).unwrap();
        assert_eq!(full.invariants, bic.invariants, "{}", full.name);
        assert_eq!(full.m0_order, bic.m0_order, "{}", full.name);
    }
}

#[test]
fn wedges_of_commuting_pairs_lie_in_multiplier() {
    let g = data_groups().remove(0);
    let d = multiplier::exterior_square(&g, None).unwrap();
    let m = d.multiplier_subgroup();
    for (x, y) in commuting_pairs(&g).step_by(7) {
        let w = multiplier::commuting_wedge(&d, &x, &y).unwrap();
        assert!(m.contains(&w));
    }
}

#[test]
fn b0_nonzero_exactly_on_phi10_at_p3() {
    for e in catalog::catalog(3).unwrap() {
        let g = PcGroup::new(e.presentation).unwrap();
        let r = multiplier::b0_tensor(&g, B0Options::default()).unwrap();
        assert_eq!(r.is_nonzero(), e.id.family == 10, "{}", e.id);
        if e.id.family == 10 {
            assert_eq!(r.invariants, vec![3]);
        }
    }
}
