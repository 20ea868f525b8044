//! Isoclinism: isomorphisms of central quotients and derived subgroups
//! compatible with the commutator map.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::multiplier::B0Report;
use crate::pcgroup::{self, Exps, PcGroup, Quotient, Subgroup};

/// The commutator map `G/Z x G/Z -> G'`.
pub struct CommutatorPairing<'g> {
    group: &'g PcGroup,
    quotient: Quotient,
    derived: Subgroup<'g>,
    // lifts of the quotient elements, by index
    lifts: Vec<Exps>,
}

impl<'g> CommutatorPairing<'g> {
    pub fn group(&self) -> &'g PcGroup {
        self.group
    }

    /// `G/Z(G)` as a pc group.
    pub fn central_quotient(&self) -> &PcGroup {
        self.quotient.group()
    }

    pub fn derived(&self) -> &Subgroup<'g> {
        &self.derived
    }

    /// `[a~, b~]` for cosets given in the coordinates of `G/Z`.
    pub fn value(&self, a: &[u8], b: &[u8]) -> Exps {
        let q = self.quotient.group();
        self.group
            .comm(&self.lifts[q.index_of(a)], &self.lifts[q.index_of(b)])
    }

    /// `[x, y]` for `x, y` in `G`, through their cosets.
    pub fn value_of(&self, x: &[u8], y: &[u8]) -> Exps {
        let a = self.quotient.project(self.group, x);
        let b = self.quotient.project(self.group, y);
        self.value(&a, &b)
    }

    /// Full table indexed by pairs of quotient element indices.
    pub fn table(&self) -> Vec<Exps> {
        let q = self.quotient.group();
        let elems: Vec<Exps> = q.all_exps().collect();
        let mut out = Vec::with_capacity(elems.len() * elems.len());
        for a in &elems {
            for b in &elems {
                out.push(self.value(a, b));
            }
        }
        out
    }
}

/// Builds the pairing and checks that it does not depend on the coset
/// representatives (multiplying each generator by each central generator).
pub fn commutator_pairing(g: &PcGroup) -> Result<CommutatorPairing<'_>> {
    let z = pcgroup::center(g);
    let quotient = pcgroup::quotient(g, &z)?;
    let lifts: Vec<Exps> = quotient.group().all_exps().map(|y| quotient.lift(g, &y)).collect();
    for i in 0..g.num_gens() {
        for j in 0..g.num_gens() {
            let base = g.comm(&g.gen_exps(i), &g.gen_exps(j));
            for c in z.gens() {
                let shifted = g.mul(&g.gen_exps(i), c);
                if g.comm(&shifted, &g.gen_exps(j)) != base {
                    return Err(Error::Guard("commutator map depends on the representative".into()));
                }
            }
        }
    }
    Ok(CommutatorPairing {
        group: g,
        quotient,
        derived: pcgroup::derived_subgroup(g),
        lifts,
    })
}

/// An isoclinism: `theta` on generators of `G1/Z1` and `phi` on generators
/// of `G1'`, all as normal-form exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoclinismWitness {
    /// Pairs (generator of `G1/Z1`, image in `G2/Z2`).
    pub theta: Vec<(Exps, Exps)>,
    /// Pairs (generator of `G1'` in `G1`, image in `G2'` in `G2`).
    pub phi: Vec<(Exps, Exps)>,
}

/// Outcome of an isoclinism test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoclinismResult {
    Isoclinic(IsoclinismWitness),
    NotIsoclinic,
}

impl IsoclinismResult {
    pub fn is_isoclinic(&self) -> bool {
        matches!(self, IsoclinismResult::Isoclinic(_))
    }
}

/// Default number of search nodes before giving up.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Tests isoclinism by backtracking over images of a minimal generating
/// set of `G1/Z1`.
pub fn is_isoclinic(g1: &PcGroup, g2: &PcGroup, budget: Option<u64>) -> Result<IsoclinismResult> {
    if g1.p() != g2.p() {
        return Ok(IsoclinismResult::NotIsoclinic);
    }
    let pa = commutator_pairing(g1)?;
    let pb = commutator_pairing(g2)?;
    let (q1, q2) = (pa.central_quotient(), pb.central_quotient());
    if q1.order() != q2.order() || pa.derived.order() != pb.derived.order() {
        return Ok(IsoclinismResult::NotIsoclinic);
    }
    if q1.num_gens() == 0 {
        // both groups abelian
        return Ok(IsoclinismResult::Isoclinic(IsoclinismWitness {
            theta: Vec::new(),
            phi: Vec::new(),
        }));
    }
    let mut search = Search::new(&pa, &pb, budget.unwrap_or(DEFAULT_BUDGET));
    match search.run()? {
        Some(w) => {
            if !validate_witness(g1, g2, &w)? {
                return Err(Error::Guard("isoclinism witness failed validation".into()));
            }
            Ok(IsoclinismResult::Isoclinic(w))
        }
        None => Ok(IsoclinismResult::NotIsoclinic),
    }
}

/// Generators of `q` outside its Frattini subgroup.
fn minimal_generators(q: &PcGroup) -> Vec<Exps> {
    let whole = Subgroup::whole(q);
    let mut frattini_gens: Vec<Exps> = pcgroup::derived_subgroup(q).gens().to_vec();
    frattini_gens.extend(whole.power_subgroup(1).gens().iter().cloned());
    let frattini = Subgroup::closure(q, &frattini_gens);
    let mut chosen: Vec<Exps> = Vec::new();
    let mut span = frattini;
    for i in 0..q.num_gens() {
        let x = q.gen_exps(i);
        if !span.contains_exps(&x) {
            let mut gens = span.gens().to_vec();
            gens.push(x.clone());
            span = Subgroup::closure(q, &gens);
            chosen.push(x);
        }
    }
    chosen
}

struct Search<'a, 'g> {
    pa: &'a CommutatorPairing<'g>,
    pb: &'a CommutatorPairing<'g>,
    gens: Vec<Exps>,
    candidates: Vec<Vec<Exps>>,
    budget: u64,
    nodes: u64,
}

impl<'a, 'g> Search<'a, 'g> {
    fn new(pa: &'a CommutatorPairing<'g>, pb: &'a CommutatorPairing<'g>, budget: u64) -> Self {
        let q1 = pa.central_quotient();
        let q2 = pb.central_quotient();
        let gens = minimal_generators(q1);
        let orders2: Vec<(Exps, u64)> = q2
            .all_exps()
            .map(|y| {
                let o = pcgroup::order_of_exps(q2, &y);
                (y, o)
            })
            .collect();
        let candidates = gens
            .iter()
            .map(|x| {
                let o = pcgroup::order_of_exps(q1, x);
                orders2.iter().filter(|(_, b)| *b == o).map(|(y, _)| y.clone()).collect()
            })
            .collect();
        Self {
            pa,
            pb,
            gens,
            candidates,
            budget,
            nodes: 0,
        }
    }

    fn run(&mut self) -> Result<Option<IsoclinismWitness>> {
        let mut chosen = Vec::with_capacity(self.gens.len());
        self.extend(&mut chosen)
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudget(self.budget));
        }
        Ok(())
    }

    fn extend(&mut self, chosen: &mut Vec<Exps>) -> Result<Option<IsoclinismWitness>> {
        let k = chosen.len();
        if k == self.gens.len() {
            return self.complete(chosen);
        }
        let q1 = self.pa.central_quotient();
        let q2 = self.pb.central_quotient();
        for idx in 0..self.candidates[k].len() {
            self.tick()?;
            let y = self.candidates[k][idx].clone();
            // partial checks: product orders and commutator orders with earlier images
            let ok = (0..k).all(|i| {
                let x = &self.gens[i];
                let xk = &self.gens[k];
                pcgroup::order_of_exps(q1, &q1.mul(x, xk)) == pcgroup::order_of_exps(q2, &q2.mul(&chosen[i], &y))
                    && pcgroup::order_of_exps(self.pa.group, &self.pa.value(x, xk))
                        == pcgroup::order_of_exps(self.pb.group, &self.pb.value(&chosen[i], &y))
            });
            if !ok {
                continue;
            }
            chosen.push(y);
            if let Some(w) = self.extend(chosen)? {
                return Ok(Some(w));
            }
            chosen.pop();
        }
        Ok(None)
    }

    /// Extends the generator images to a map on `G1/Z1`; then forces `phi`.
    fn complete(&mut self, images: &[Exps]) -> Result<Option<IsoclinismWitness>> {
        let q1 = self.pa.central_quotient();
        let q2 = self.pb.central_quotient();
        let Some(theta) = extend_to_hom(q1, q2, &self.gens, images) else {
            return Ok(None);
        };
        // injective
        let mut seen = vec![false; q2.order() as usize];
        for y in &theta {
            let i = q2.index_of(y);
            if seen[i] {
                return Ok(None);
            }
            seen[i] = true;
        }
        // phi on pairing values
        let elems: Vec<Exps> = q1.all_exps().collect();
        let mut forced: HashMap<Exps, Exps> = HashMap::new();
        for (a, x) in elems.iter().enumerate() {
            for (b, y) in elems.iter().enumerate().skip(a + 1) {
                self.tick()?;
                let c1 = self.pa.value(x, y);
                let c2 = self.pb.value(&theta[a], &theta[b]);
                match forced.get(&c1) {
                    Some(prev) if *prev != c2 => return Ok(None),
                    Some(_) => {}
                    None => {
                        forced.insert(c1, c2);
                    }
                }
            }
        }
        let g1 = self.pa.group;
        let g2 = self.pb.group;
        let gen_pairs: Vec<(Exps, Exps)> = forced.into_iter().collect();
        let Some(phi) = extend_to_hom_on_subgroup(g1, g2, &gen_pairs) else {
            return Ok(None);
        };
        if phi.len() as u64 != self.pa.derived.order() {
            return Ok(None);
        }
        let mut values: Vec<&Exps> = phi.values().collect();
        values.sort();
        values.dedup();
        if values.len() as u64 != self.pb.derived.order() {
            return Ok(None);
        }
        let phi_gens = self
            .pa
            .derived
            .gens()
            .iter()
            .map(|d| (d.clone(), phi[d].clone()))
            .collect();
        Ok(Some(IsoclinismWitness {
            theta: self.gens.iter().cloned().zip(images.iter().cloned()).collect(),
            phi: phi_gens,
        }))
    }
}

/// Extends generator images to a map on all of `q1`, indexed by `q1`
/// element index; `None` if the assignment is not a homomorphism.
fn extend_to_hom(q1: &PcGroup, q2: &PcGroup, gens: &[Exps], images: &[Exps]) -> Option<Vec<Exps>> {
    let n = q1.order() as usize;
    let mut map: Vec<Option<Exps>> = vec![None; n];
    map[0] = Some(q2.identity_exps());
    let mut queue = VecDeque::from([q1.identity_exps()]);
    while let Some(x) = queue.pop_front() {
        let fx = map[q1.index_of(&x)].clone().expect("visited");
        for (s, t) in gens.iter().zip(images) {
            let y = q1.mul(&x, s);
            let fy = q2.mul(&fx, t);
            let i = q1.index_of(&y);
            match &map[i] {
                Some(prev) if *prev != fy => return None,
                Some(_) => {}
                None => {
                    map[i] = Some(fy);
                    queue.push_back(y);
                }
            }
        }
    }
    map.into_iter().collect()
}

/// The homomorphism on the subgroup generated by the first components,
/// keyed by element; `None` if the pairs do not define one.
fn extend_to_hom_on_subgroup(g1: &PcGroup, g2: &PcGroup, pairs: &[(Exps, Exps)]) -> Option<HashMap<Exps, Exps>> {
    let mut map: HashMap<Exps, Exps> = HashMap::new();
    map.insert(g1.identity_exps(), g2.identity_exps());
    let mut queue = VecDeque::from([g1.identity_exps()]);
    while let Some(x) = queue.pop_front() {
        let fx = map[&x].clone();
        for (s, t) in pairs {
            let y = g1.mul(&x, s);
            let fy = g2.mul(&fx, t);
            match map.get(&y) {
                Some(prev) if *prev != fy => return None,
                Some(_) => {}
                None => {
                    map.insert(y.clone(), fy);
                    queue.push_back(y);
                }
            }
        }
    }
    // the forced pairs must agree with the extension
    pairs.iter().all(|(s, t)| map[s] == *t).then_some(map)
}

/// Rebuilds both maps from the witness and checks bijectivity and
/// `phi([g, h]) = [g', h']` for all pairs of `G1/Z1` elements.
pub fn validate_witness(g1: &PcGroup, g2: &PcGroup, w: &IsoclinismWitness) -> Result<bool> {
    let pa = commutator_pairing(g1)?;
    let pb = commutator_pairing(g2)?;
    let (q1, q2) = (pa.central_quotient(), pb.central_quotient());
    if q1.order() != q2.order() || pa.derived.order() != pb.derived.order() {
        return Ok(false);
    }
    let gens: Vec<Exps> = w.theta.iter().map(|(a, _)| a.clone()).collect();
    let images: Vec<Exps> = w.theta.iter().map(|(_, b)| b.clone()).collect();
    if Subgroup::closure(q1, &gens).order() != q1.order() {
        return Ok(false);
    }
    let Some(theta) = extend_to_hom(q1, q2, &gens, &images) else {
        return Ok(false);
    };
    let mut ts: Vec<&Exps> = theta.iter().collect();
    ts.sort();
    ts.dedup();
    if ts.len() as u64 != q2.order() {
        return Ok(false);
    }
    if Subgroup::closure(g1, &w.phi.iter().map(|(a, _)| a.clone()).collect::<Vec<_>>()).order() != pa.derived.order() {
        return Ok(false);
    }
    let Some(phi) = extend_to_hom_on_subgroup(g1, g2, &w.phi) else {
        return Ok(false);
    };
    let mut ps: Vec<&Exps> = phi.values().collect();
    ps.sort();
    ps.dedup();
    if ps.len() as u64 != pb.derived.order() {
        return Ok(false);
    }
    let elems: Vec<Exps> = q1.all_exps().collect();
    for (a, x) in elems.iter().enumerate() {
        for (b, y) in elems.iter().enumerate() {
            let c1 = pa.value(x, y);
            match phi.get(&c1) {
                Some(v) if *v == pb.value(&theta[a], &theta[b]) => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

/// Cheap invariants used to pre-filter isoclinism tests.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub center_order: u64,
    pub derived_order: u64,
    /// Orders of `gamma_1 = G, gamma_2, ...` down to the identity.
    pub lower_central: Vec<u64>,
    pub exponent: u64,
    pub abelianization: Vec<u64>,
    /// Class size -> number of classes.
    pub class_sizes: BTreeMap<u64, u64>,
}

/// The part of a fingerprint preserved by isoclinism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoclinismKey {
    pub central_quotient_order: u64,
    pub derived_order: u64,
    pub lower_central_from_2: Vec<u64>,
    /// Class size -> number of cosets of `Z` whose elements have that size.
    pub coset_class_sizes: Vec<(u64, u64)>,
}

impl Fingerprint {
    pub fn order(&self) -> u64 {
        self.lower_central.first().copied().unwrap_or(1)
    }

    pub fn key(&self) -> IsoclinismKey {
        IsoclinismKey {
            central_quotient_order: self.order() / self.center_order,
            derived_order: self.derived_order,
            lower_central_from_2: self.lower_central.iter().skip(1).copied().collect(),
            coset_class_sizes: self
                .class_sizes
                .iter()
                .map(|(&s, &c)| (s, s * c / self.center_order))
                .collect(),
        }
    }
}

pub fn family_fingerprint(g: &PcGroup) -> Fingerprint {
    Fingerprint {
        center_order: pcgroup::center(g).order(),
        derived_order: pcgroup::derived_subgroup(g).order(),
        lower_central: pcgroup::lower_central_series(g).iter().map(Subgroup::order).collect(),
        exponent: pcgroup::group_exponent(g),
        abelianization: pcgroup::abelianization_invariants(g),
        class_sizes: pcgroup::class_sizes(g),
    }
}

/// Per-family comparison of `B0` invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyConstancy {
    pub family: String,
    pub members: Vec<String>,
    /// Distinct invariant lists seen in the family.
    pub values: Vec<Vec<u64>>,
}

impl FamilyConstancy {
    pub fn is_constant(&self) -> bool {
        self.values.len() <= 1
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Vec::is_empty)
    }
}

/// Groups reports by family label and checks that `B0` agrees within each
/// family. This is evidence, not a proof.
pub fn b0_constancy_report(reports: &[(String, B0Report)]) -> Vec<FamilyConstancy> {
    let mut by_family: BTreeMap<&str, FamilyConstancy> = BTreeMap::new();
    for (family, r) in reports {
        let entry = by_family.entry(family).or_insert_with(|| FamilyConstancy {
            family: family.clone(),
            members: Vec::new(),
            values: Vec::new(),
        });
        entry.members.push(r.name.clone());
        if !entry.values.contains(&r.invariants) {
            entry.values.push(r.invariants.clone());
        }
    }
    by_family.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PcPresentation;

    fn group(p: u32, n: usize, powers: &[(usize, usize)], comms: &[(usize, usize, usize)]) -> PcGroup {
        let mut pres = PcPresentation::new(p, n);
        for &(i, k) in powers {
            pres.set_power(i, &[(k, 1)]).unwrap();
        }
        for &(j, i, k) in comms {
            pres.set_comm(j, i, &[(k, 1)]).unwrap();
        }
        PcGroup::new(pres).unwrap()
    }

    #[test]
    fn order_27_groups_are_isoclinic() {
        let heis = group(3, 3, &[], &[(1, 0, 2)]);
        let m27 = group(3, 3, &[(0, 2)], &[(1, 0, 2)]);
        let r = is_isoclinic(&heis, &m27, None).unwrap();
        assert!(r.is_isoclinic());
        let c9 = group(3, 2, &[(0, 1)], &[]);
        assert!(is_isoclinic(&c9, &group(3, 2, &[], &[]), None).unwrap().is_isoclinic());
        assert!(!is_isoclinic(&c9, &heis, None).unwrap().is_isoclinic());
        assert_eq!(family_fingerprint(&heis).key(), family_fingerprint(&m27).key());
    }

    #[test]
    fn heisenberg_times_c3_is_isoclinic_to_heisenberg() {
        let heis = group(3, 3, &[], &[(1, 0, 2)]);
        let hc = group(3, 4, &[], &[(1, 0, 2)]);
        let r = is_isoclinic(&heis, &hc, None).unwrap();
        assert!(r.is_isoclinic());
        if let IsoclinismResult::Isoclinic(w) = r {
            assert!(validate_witness(&heis, &hc, &w).unwrap());
        }
    }

    #[test]
    fn pairing_on_abelian_is_trivial() {
        let g = group(3, 3, &[], &[]);
        let pa = commutator_pairing(&g).unwrap();
        assert!(pa.table().iter().all(|x| PcGroup::is_identity(x)));
    }
}
