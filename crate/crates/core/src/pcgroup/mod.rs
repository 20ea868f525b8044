//! Power-commutator presentations, collection, subgroups and quotients.

mod collector;
mod element;
mod hom;
mod presentation;
mod subgroup;

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

pub use collector::{is_consistent, Exps, Overlap, PcGroup};
pub use element::Element;
pub use hom::Homomorphism;
pub use presentation::{PcPresentation, Word};
pub use subgroup::Subgroup;

use crate::error::{Error, Result};

pub fn order_of(x: &Element<'_>) -> u64 {
    x.order()
}

pub fn order_of_exps(g: &PcGroup, x: &[u8]) -> u64 {
    element::order_of_exps(g, x)
}

/// Largest element order.
pub fn group_exponent(g: &PcGroup) -> u64 {
    g.all_exps().map(|x| element::order_of_exps(g, &x)).max().unwrap_or(1)
}

pub fn center(g: &PcGroup) -> Subgroup<'_> {
    let gens: Vec<Exps> = (0..g.num_gens()).map(|i| g.gen_exps(i)).collect();
    let central: Vec<Exps> = g
        .all_exps()
        .filter(|x| gens.iter().all(|s| g.commute(x, s)))
        .collect();
    Subgroup::closure(g, &central)
}

/// Centralizer of `x`, by brute force.
pub fn centralizer<'g>(g: &'g PcGroup, x: &[u8]) -> Subgroup<'g> {
    let members: Vec<Exps> = g.all_exps().filter(|y| g.commute(x, y)).collect();
    Subgroup::closure(g, &members)
}

/// Normal closure of the commutators `[a, b]` for `a` in the sequence of
/// `a_sub` and `b` a pc generator.
fn commutator_with_group<'g>(g: &'g PcGroup, a_sub: &Subgroup<'g>) -> Subgroup<'g> {
    let mut gens = Vec::new();
    for a in a_sub.gens() {
        for i in 0..g.num_gens() {
            gens.push(g.comm(a, &g.gen_exps(i)));
        }
    }
    Subgroup::normal_closure(g, &gens)
}

pub fn derived_subgroup(g: &PcGroup) -> Subgroup<'_> {
    let mut gens = Vec::new();
    for i in 0..g.num_gens() {
        for j in i + 1..g.num_gens() {
            gens.push(g.comm(&g.gen_exps(j), &g.gen_exps(i)));
        }
    }
    Subgroup::normal_closure(g, &gens)
}

/// `G = γ_1 > γ_2 > ... > γ_c+1 = 1`; the last (trivial) term is included.
pub fn lower_central_series(g: &PcGroup) -> Vec<Subgroup<'_>> {
    let mut series = vec![Subgroup::whole(g)];
    loop {
        let last = series.last().expect("nonempty");
        if last.is_trivial() {
            return series;
        }
        let next = commutator_with_group(g, last);
        series.push(next);
    }
}

pub fn nilpotency_class(g: &PcGroup) -> usize {
    lower_central_series(g).len() - 1
}

/// Length of the lower exponent-p central series `P_i+1 = [P_i, G] P_i^p`.
pub fn p_class(g: &PcGroup) -> usize {
    let mut cur = Subgroup::whole(g);
    let mut c = 0;
    while !cur.is_trivial() {
        let mut gens = commutator_with_group(g, &cur).gens().to_vec();
        gens.extend(cur.gens().iter().map(|s| g.pow(s, i64::from(g.p()))));
        cur = Subgroup::normal_closure(g, &gens);
        c += 1;
    }
    c
}

/// A quotient group `G/N` together with the projection data.
#[derive(Clone, Debug)]
pub struct Quotient {
    group: PcGroup,
    images: Vec<Exps>,
    complement: Vec<usize>,
    kernel_seq: Vec<Exps>,
    kernel_lead: Vec<usize>,
}

impl Quotient {
    pub fn group(&self) -> &PcGroup {
        &self.group
    }

    pub fn presentation(&self) -> &PcPresentation {
        self.group.presentation()
    }

    /// Images of the source pc generators.
    pub fn images(&self) -> &[Exps] {
        &self.images
    }

    /// Source generator indices that survive as quotient generators.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// Image of a source element.
    pub fn project(&self, source: &PcGroup, x: &[u8]) -> Exps {
        coset_coords(source, &self.complement, &self.kernel_seq, &self.kernel_lead, x)
    }

    pub fn projection<'a>(&'a self, source: &'a PcGroup) -> Result<Homomorphism<'a>> {
        Homomorphism::new(source, &self.group, self.images.clone())
    }

    /// Section: the product of the complement generators with the given
    /// quotient exponents.
    pub fn lift(&self, source: &PcGroup, y: &[u8]) -> Exps {
        let mut x = source.identity_exps();
        for (k, &c) in self.complement.iter().enumerate() {
            if y[k] != 0 {
                source.mul_gen_pow(&mut x, c, y[k]);
            }
        }
        x
    }
}

fn coset_coords(g: &PcGroup, comp: &[usize], seq: &[Exps], lead: &[usize], x: &[u8]) -> Exps {
    let mut x = x.to_vec();
    let mut out = vec![0u8; comp.len()];
    let mut ci = 0;
    let mut li = 0;
    for i in 0..g.num_gens() {
        let e = x[i];
        if ci < comp.len() && comp[ci] == i {
            if e != 0 {
                out[ci] = e;
                let y = g.pow(&g.gen_exps(i), -i64::from(e));
                x = g.mul(&y, &x);
            }
            ci += 1;
        } else {
            debug_assert_eq!(lead[li], i);
            if e != 0 {
                let y = g.pow(&seq[li], -i64::from(e));
                g.mul_exps(&mut x, &y);
            }
            li += 1;
        }
    }
    debug_assert!(PcGroup::is_identity(&x));
    out
}

/// `G/N` for a normal subgroup `N`.
pub fn quotient(g: &PcGroup, n: &Subgroup<'_>) -> Result<Quotient> {
    if !std::ptr::eq(n.group(), g) {
        return Err(Error::ParentMismatch);
    }
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let lead = n.leading_indices().to_vec();
    let seq = n.gens().to_vec();
    let comp: Vec<usize> = (0..g.num_gens()).filter(|i| !lead.contains(i)).collect();
    let m = comp.len();
    let coords = |x: &[u8]| coset_coords(g, &comp, &seq, &lead, x);
    let word = |c: Exps| -> Vec<(usize, i64)> {
        c.into_iter()
            .enumerate()
            .filter(|(_, e)| *e != 0)
            .map(|(k, e)| (k, i64::from(e)))
            .collect()
    };
    let mut pres = PcPresentation::new(g.p(), m);
    for (a, &ca) in comp.iter().enumerate() {
        pres.set_power(a, &word(coords(&g.pow_word(ca))))?;
        for (b, &cb) in comp.iter().enumerate().skip(a + 1) {
            let c = g.comm(&g.gen_exps(cb), &g.gen_exps(ca));
            pres.set_comm(b, a, &word(coords(&c)))?;
        }
    }
    if let Some(name) = g.name() {
        pres.set_name(format!("{name}/N"));
    }
    let group = PcGroup::new(pres)?;
    let images = (0..g.num_gens()).map(|i| coords(&g.gen_exps(i))).collect();
    Ok(Quotient {
        group,
        images,
        complement: comp,
        kernel_seq: seq,
        kernel_lead: lead,
    })
}

/// Abelian invariants of `G/G'`.
pub fn abelianization_invariants(g: &PcGroup) -> Vec<u64> {
    let d = derived_subgroup(g);
    let q = quotient(g, &d).expect("derived subgroup is normal");
    Subgroup::whole(q.group())
        .abelian_invariants()
        .expect("abelianization is abelian")
}

/// All ordered commuting pairs.
pub fn commuting_pairs(g: &PcGroup) -> impl Iterator<Item = (Element<'_>, Element<'_>)> + '_ {
    let order = g.order() as usize;
    (0..order).flat_map(move |a| {
        let x = g.exps_of_index(a);
        (0..order).filter_map(move |b| {
            let y = g.exps_of_index(b);
            if g.commute(&x, &y) {
                Some((Element::from_raw(g, x.clone()), Element::from_raw(g, y)))
            } else {
                None
            }
        })
    })
}

/// Sizes of conjugacy classes, with multiplicities.
pub fn class_sizes(g: &PcGroup) -> BTreeMap<u64, u64> {
    let order = g.order() as usize;
    let mut seen = vec![false; order];
    let gens: Vec<Exps> = (0..g.num_gens()).map(|i| g.gen_exps(i)).collect();
    let mut sizes = BTreeMap::new();
    for start in 0..order {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![g.exps_of_index(start)];
        let mut size = 0u64;
        while let Some(x) = stack.pop() {
            size += 1;
            for s in &gens {
                let y = g.conjugate(&x, s);
                let k = g.index_of(&y);
                if !seen[k] {
                    seen[k] = true;
                    stack.push(y);
                }
            }
        }
        *sizes.entry(size).or_insert(0) += 1;
    }
    sizes
}

/// How bicyclic subgroups are enumerated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BicyclicMode {
    /// Closures of all commuting element pairs.
    #[default]
    AllPairs,
    /// Closures of commuting pairs of cyclic-subgroup representatives.
    CyclicReps,
}

/// One generator per cyclic subgroup (identity excluded).
pub fn cyclic_subgroup_reps(g: &PcGroup) -> Vec<Exps> {
    let order = g.order() as usize;
    let p = i64::from(g.p());
    let mut covered = vec![false; order];
    covered[0] = true;
    let mut reps = Vec::new();
    for idx in 1..order {
        if covered[idx] {
            continue;
        }
        let x = g.exps_of_index(idx);
        let ord = element::order_of_exps(g, &x) as i64;
        for k in 1..ord {
            if k % p != 0 {
                covered[g.index_of(&g.pow(&x, k))] = true;
            }
        }
        reps.push(x);
    }
    reps
}

/// Every bicyclic subgroup with one generating pair, sorted by canonical
/// sequence.
pub fn enumerate_bicyclic_subgroups(g: &PcGroup, mode: BicyclicMode) -> Vec<(Subgroup<'_>, (Exps, Exps))> {
    let pool: Vec<Exps> = match mode {
        BicyclicMode::AllPairs => g.all_exps().collect(),
        BicyclicMode::CyclicReps => {
            let mut v = vec![g.identity_exps()];
            v.extend(cyclic_subgroup_reps(g));
            v
        }
    };
    let found: Vec<(Vec<Exps>, (Exps, Exps))> = (0..pool.len())
        .into_par_iter()
        .fold(
            || (HashSet::new(), Vec::new()),
            |(mut seen, mut out): (HashSet<Vec<Exps>>, Vec<_>), a| {
                for b in a..pool.len() {
                    let (x, y) = (&pool[a], &pool[b]);
                    if !g.commute(x, y) {
                        continue;
                    }
                    let s = Subgroup::closure(g, &[x.clone(), y.clone()]);
                    let key = s.gens().to_vec();
                    if seen.insert(key.clone()) {
                        out.push((key, (x.clone(), y.clone())));
                    }
                }
                (seen, out)
            },
        )
        .map(|(_, out)| out)
        .reduce(Vec::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut merged: BTreeMap<Vec<Exps>, (Exps, Exps)> = BTreeMap::new();
    for (key, pair) in found {
        merged.entry(key).or_insert(pair);
    }
    merged
        .into_values()
        .map(|(x, y)| (Subgroup::closure(g, &[x.clone(), y.clone()]), (x, y)))
        .collect()
}

/// Bicyclic subgroups not properly contained in another one.
pub fn maximal_bicyclic_subgroups<'g>(
    all: &[(Subgroup<'g>, (Exps, Exps))],
) -> Vec<(Subgroup<'g>, (Exps, Exps))> {
    all.iter()
        .filter(|(s, _)| {
            !all.iter()
                .any(|(t, _)| t.log_order() > s.log_order() && s.is_subgroup_of(t))
        })
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heisenberg(p: u32) -> PcGroup {
        let mut pres = PcPresentation::new(p, 3);
        pres.set_comm(1, 0, &[(2, 1)]).unwrap();
        PcGroup::new(pres).unwrap()
    }

    fn cyclic(p: u32, k: usize) -> PcGroup {
        let mut pres = PcPresentation::new(p, k);
        for i in 0..k - 1 {
            pres.set_power(i, &[(i + 1, 1)]).unwrap();
        }
        PcGroup::new(pres).unwrap()
    }

    #[test]
    fn heisenberg_commuting_pairs() {
        let g = heisenberg(3);
        assert_eq!(commuting_pairs(&g).count(), 297);
        assert_eq!(center(&g).order(), 3);
        assert_eq!(derived_subgroup(&g).order(), 3);
        assert_eq!(group_exponent(&g), 3);
        assert_eq!(nilpotency_class(&g), 2);
    }

    #[test]
    fn cyclic_group_structure() {
        let g = cyclic(3, 3);
        assert_eq!(group_exponent(&g), 27);
        assert_eq!(abelianization_invariants(&g), vec![27]);
        assert_eq!(cyclic_subgroup_reps(&g).len(), 3);
        assert_eq!(p_class(&g), 3);
    }

    #[test]
    fn subgroup_membership_matches_enumeration() {
        let g = heisenberg(5);
        let x = g.mul(&g.gen_exps(0), &g.gen_exps(2));
        let s = Subgroup::closure(&g, &[x.clone()]);
        assert_eq!(s.order(), 5);
        let members: HashSet<Exps> = s.elements().into_iter().collect();
        for y in g.all_exps() {
            assert_eq!(s.contains_exps(&y), members.contains(&y));
        }
        assert_eq!(s.express(&x), Some(vec![1]));
    }

    #[test]
    fn quotient_by_center_is_elementary() {
        let g = heisenberg(3);
        let z = center(&g);
        let q = quotient(&g, &z).unwrap();
        assert_eq!(q.group().order(), 9);
        let hom = q.projection(&g).unwrap();
        let ker = hom.kernel().unwrap();
        assert_eq!(ker, z);
        assert_eq!(Subgroup::whole(q.group()).abelian_invariants().unwrap(), vec![3, 3]);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let g = heisenberg(3);
        let s = Subgroup::closure(&g, &[g.gen_exps(0)]);
        assert_eq!(quotient(&g, &s).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn bicyclic_modes_agree() {
        let g = heisenberg(3);
        let a = enumerate_bicyclic_subgroups(&g, BicyclicMode::AllPairs);
        let b = enumerate_bicyclic_subgroups(&g, BicyclicMode::CyclicReps);
        let ka: Vec<_> = a.iter().map(|(s, _)| s.gens().to_vec()).collect();
        let kb: Vec<_> = b.iter().map(|(s, _)| s.gens().to_vec()).collect();
        assert_eq!(ka, kb);
        // trivial, 13 of order 3, 4 of order 9
        assert_eq!(a.len(), 18);
        assert!(a.iter().all(|(s, _)| s.is_bicyclic()));
        assert_eq!(maximal_bicyclic_subgroups(&a).len(), 4);
    }

    #[test]
    fn class_sizes_of_heisenberg() {
        let g = heisenberg(3);
        let sizes = class_sizes(&g);
        assert_eq!(sizes.get(&1), Some(&3));
        assert_eq!(sizes.get(&3), Some(&8));
    }

    #[test]
    fn elementary_abelian_rank() {
        let g = PcGroup::new(PcPresentation::new(3, 3)).unwrap();
        let w = Subgroup::whole(&g);
        assert_eq!(w.rank(), 3);
        assert!(!w.is_bicyclic());
    }

    #[test]
    fn subgroup_presentation_round_trip() {
        let g = heisenberg(3);
        let s = Subgroup::closure(&g, &[g.gen_exps(1), g.gen_exps(2)]);
        let h = PcGroup::new(s.presentation()).unwrap();
        assert_eq!(h.order(), 9);
    }
}
