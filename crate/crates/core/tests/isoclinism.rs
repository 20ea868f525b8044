use b0lab::catalog::{self, CatalogEntry};
use b0lab::isoclinism::{self, IsoclinismResult};
use b0lab::multiplier::{self, B0Options};
use b0lab::PcGroup;

fn entry(p: u32, family: u8, variant: &str) -> CatalogEntry {
    catalog::catalog(p)
        .unwrap()
        .into_iter()
        .find(|e| e.id.family == family && e.id.variant == variant)
        .unwrap()
}

#[test]
fn phi10_at_p3_pairwise_isoclinic_with_valid_witnesses() {
    let gs: Vec<PcGroup> = catalog::catalog(3)
        .unwrap()
        .into_iter()
        .filter(|e| e.id.family == 10)
        .map(|e| PcGroup::new(e.presentation).unwrap())
        .collect();
    assert_eq!(gs.len(), 3);
    for a in &gs {
        for b in &gs {
            match isoclinism::is_isoclinic(a, b, None).unwrap() {
                IsoclinismResult::Isoclinic(w) => assert!(isoclinism::validate_witness(a, b, &w).unwrap()),
                IsoclinismResult::NotIsoclinic => panic!("expected isoclinic"),
            }
        }
    }
}

#[test]
fn cross_family_pairs_not_isoclinic() {
    let es = [
        entry(3, 5, "(1^5)"),
        entry(3, 6, "(221)a"),
        catalog::catalog(3).unwrap().into_iter().find(|e| e.gap_id == Some(56)).unwrap(),
        catalog::catalog(3).unwrap().into_iter().find(|e| e.gap_id == Some(28)).unwrap(),
    ];
    let gs: Vec<PcGroup> = es.iter().map(|e| PcGroup::new(e.presentation.clone()).unwrap()).collect();
    for i in 0..gs.len() {
        for j in 0..gs.len() {
            let r = isoclinism::is_isoclinic(&gs[i], &gs[j], None).unwrap().is_isoclinic();
            assert_eq!(r, i == j, "{} vs {}", es[i].id, es[j].id);
        }
    }
}

#[test]
fn isoclinic_groups_share_fingerprint_key() {
    let gs: Vec<(u8, PcGroup)> = catalog::catalog(3)
        .unwrap()
        .into_iter()
        .map(|e| (e.id.family, PcGroup::new(e.presentation).unwrap()))
        .collect();
    for (fa, a) in &gs {
        for (fb, b) in &gs {
            if fa == fb {
                assert_eq!(isoclinism::family_fingerprint(a).key(), isoclinism::family_fingerprint(b).key());
            }
        }
    }
}

#[test]
fn b0_constant_on_families_at_p3() {
    let reports: Vec<(String, _)> = catalog::catalog(3)
        .unwrap()
        .into_iter()
        .map(|e| {
            let g = PcGroup::new(e.presentation).unwrap();
            (format!("Phi{}", e.id.family), multiplier::b0_tensor(&g, B0Options::default()).unwrap())
        })
        .collect();
    let fams = isoclinism::b0_constancy_report(&reports);
    assert_eq!(fams.len(), 5);
    for f in &fams {
        assert!(f.is_constant(), "{}", f.family);
        assert_eq!(f.is_zero(), f.family != "Phi10", "{}", f.family);
    }
}
