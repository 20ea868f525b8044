use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::collector::{Exps, PcGroup};
use super::element::Element;
use super::presentation::PcPresentation;

pub(crate) fn leading(x: &[u8]) -> Option<usize> {
    x.iter().position(|&e| e != 0)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| (a * b) % p == 1).expect("unit mod p")
}

/// A subgroup given by its canonical generating sequence: one element per
/// leading index, leading exponent 1, and zero exponents at the leading
/// indices of the other members. The sequence is unique for the subgroup.
#[derive(Clone, Debug)]
pub struct Subgroup<'g> {
    group: &'g PcGroup,
    seq: Vec<Exps>,
    lead: Vec<usize>,
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.group, other.group) && self.seq == other.seq
    }
}

impl Eq for Subgroup<'_> {}

impl<'g> Subgroup<'g> {
    pub fn trivial(group: &'g PcGroup) -> Self {
        Self {
            group,
            seq: Vec::new(),
            lead: Vec::new(),
        }
    }

    pub fn whole(group: &'g PcGroup) -> Self {
        let n = group.num_gens();
        Self {
            group,
            seq: (0..n).map(|i| group.gen_exps(i)).collect(),
            lead: (0..n).collect(),
        }
        .canonical()
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure(group: &'g PcGroup, gens: &[Exps]) -> Self {
        let p = group.p();
        let mut table: BTreeMap<usize, Exps> = BTreeMap::new();
        let mut queue: Vec<Exps> = gens.to_vec();
        loop {
            while let Some(x) = queue.pop() {
                let r = sift_table(group, &table, x);
                let Some(d) = leading(&r) else { continue };
                let e = u32::from(r[d]);
                let r = if e == 1 { r } else { group.pow(&r, i64::from(inv_mod(e, p))) };
                queue.push(group.pow(&r, i64::from(p)));
                for s in table.values() {
                    queue.push(group.comm(&r, s));
                }
                table.insert(d, r);
            }
            // re-verify closure against the final table
            let elems: Vec<&Exps> = table.values().collect();
            for (a, x) in elems.iter().enumerate() {
                let pw = group.pow(x, i64::from(p));
                if !PcGroup::is_identity(&sift_table(group, &table, pw.clone())) {
                    queue.push(pw);
                }
                for y in &elems[a + 1..] {
                    let c = group.comm(x, y);
                    if !PcGroup::is_identity(&sift_table(group, &table, c.clone())) {
                        queue.push(c);
                    }
                }
            }
            if queue.is_empty() {
                break;
            }
        }
        let lead = table.keys().copied().collect();
        let seq = table.into_values().collect();
        Self { group, seq, lead }.canonical()
    }

    pub fn closure_of(group: &'g PcGroup, gens: &[Element<'_>]) -> Self {
        let raw: Vec<Exps> = gens.iter().map(|g| g.exps().to_vec()).collect();
        Self::closure(group, &raw)
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(group: &'g PcGroup, gens: &[Exps]) -> Self {
        let mut sub = Self::closure(group, gens);
        loop {
            let mut extra = Vec::new();
            for s in &sub.seq {
                for i in 0..group.num_gens() {
                    let c = group.conjugate(s, &group.gen_exps(i));
                    if !sub.contains_exps(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return sub;
            }
            extra.extend(sub.seq.iter().cloned());
            sub = Self::closure(group, &extra);
        }
    }

    fn canonical(mut self) -> Self {
        let g = self.group;
        let k = self.seq.len();
        for i in (0..k).rev() {
            for j in i + 1..k {
                let e = self.seq[i][self.lead[j]];
                if e != 0 {
                    let y = g.pow(&self.seq[j], -i64::from(e));
                    let x = g.mul(&self.seq[i], &y);
                    self.seq[i] = x;
                }
            }
        }
        self
    }

    pub fn group(&self) -> &'g PcGroup {
        self.group
    }

    /// Canonical generating sequence.
    pub fn gens(&self) -> &[Exps] {
        &self.seq
    }

    pub fn gen_elements(&self) -> Vec<Element<'g>> {
        self.seq.iter().map(|s| Element::from_raw(self.group, s.clone())).collect()
    }

    pub fn leading_indices(&self) -> &[usize] {
        &self.lead
    }

    pub fn log_order(&self) -> u32 {
        self.seq.len() as u32
    }

    pub fn order(&self) -> u64 {
        u64::from(self.group.p()).pow(self.log_order())
    }

    pub fn is_trivial(&self) -> bool {
        self.seq.is_empty()
    }

    /// Writes `x = s_1^e_1 ... s_k^e_k`; `None` if `x` is not a member.
    pub fn express(&self, x: &[u8]) -> Option<Vec<u8>> {
        let g = self.group;
        let mut x = x.to_vec();
        let mut coeffs = vec![0u8; self.seq.len()];
        let mut next = 0;
        while let Some(d) = leading(&x) {
            while next < self.lead.len() && self.lead[next] < d {
                next += 1;
            }
            if next == self.lead.len() || self.lead[next] != d {
                return None;
            }
            let e = x[d];
            coeffs[next] = e;
            let y = g.pow(&self.seq[next], -i64::from(e));
            x = g.mul(&y, &x);
            next += 1;
        }
        Some(coeffs)
    }

    /// Inverse of [`Self::express`].
    pub fn element_from_coeffs(&self, coeffs: &[u8]) -> Exps {
        let g = self.group;
        let mut x = g.identity_exps();
        for (s, &e) in self.seq.iter().zip(coeffs) {
            if e != 0 {
                let y = g.pow(s, i64::from(e));
                g.mul_exps(&mut x, &y);
            }
        }
        x
    }

    pub fn contains_exps(&self, x: &[u8]) -> bool {
        self.express(x).is_some()
    }

    pub fn contains(&self, x: &Element<'_>) -> bool {
        std::ptr::eq(x.group(), self.group) && self.contains_exps(x.exps())
    }

    pub fn is_subgroup_of(&self, other: &Subgroup<'_>) -> bool {
        self.seq.iter().all(|s| other.contains_exps(s))
    }

    /// All members, by running through the coefficient vectors.
    pub fn elements(&self) -> Vec<Exps> {
        let p = self.group.p() as usize;
        let k = self.seq.len();
        let total = p.pow(k as u32);
        let mut out = Vec::with_capacity(total);
        for idx in 0..total {
            let mut c = vec![0u8; k];
            let mut r = idx;
            for slot in c.iter_mut().rev() {
                *slot = (r % p) as u8;
                r /= p;
            }
            out.push(self.element_from_coeffs(&c));
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.group;
        self.seq
            .iter()
            .enumerate()
            .all(|(i, x)| self.seq[i + 1..].iter().all(|y| g.commute(x, y)))
    }

    pub fn is_normal(&self) -> bool {
        let g = self.group;
        self.seq.iter().all(|s| {
            (0..g.num_gens()).all(|i| self.contains_exps(&g.conjugate(s, &g.gen_exps(i))))
        })
    }

    /// Subgroup generated by the `p^k`-th powers of the sequence (the
    /// `p^k`-power subgroup when the subgroup is abelian).
    pub fn power_subgroup(&self, k: u32) -> Subgroup<'g> {
        let g = self.group;
        let e = i64::from(g.p()).pow(k);
        let gens: Vec<Exps> = self.seq.iter().map(|s| g.pow(s, e)).collect();
        Subgroup::closure(g, &gens)
    }

    /// Pc presentation of the subgroup on its canonical sequence.
    pub fn presentation(&self) -> PcPresentation {
        let g = self.group;
        let k = self.seq.len();
        let mut pres = PcPresentation::new(g.p(), k);
        let to_word = |c: Vec<u8>| -> Vec<(usize, i64)> {
            c.into_iter()
                .enumerate()
                .filter(|(_, e)| *e != 0)
                .map(|(i, e)| (i, i64::from(e)))
                .collect()
        };
        for i in 0..k {
            let pw = g.pow(&self.seq[i], i64::from(g.p()));
            let c = self.express(&pw).expect("power lies in the subgroup");
            pres.set_power(i, &to_word(c)).expect("induced sequence relation");
            for j in i + 1..k {
                let cm = g.comm(&self.seq[j], &self.seq[i]);
                let c = self.express(&cm).expect("commutator lies in the subgroup");
                pres.set_comm(j, i, &to_word(c)).expect("induced sequence relation");
            }
        }
        pres
    }

    /// Abelian invariants (prime powers, ascending).
    pub fn abelian_invariants(&self) -> Result<Vec<u64>> {
        if !self.is_abelian() {
            return Err(Error::NotAbelian);
        }
        Ok(abelian_invariants_from_power_orders(self))
    }

    /// Abelian invariants of `self / sub` for abelian `self` and `sub <= self`.
    pub fn quotient_invariants(&self, sub: &Subgroup<'_>) -> Result<Vec<u64>> {
        if !self.is_abelian() {
            return Err(Error::NotAbelian);
        }
        if !sub.is_subgroup_of(self) {
            return Err(Error::Malformed("not a subgroup".into()));
        }
        let g = self.group;
        let base = sub.log_order();
        let mut logs = vec![self.log_order() - base];
        let mut k = 1;
        while *logs.last().expect("nonempty") > 0 {
            let e = i64::from(g.p()).pow(k);
            let mut gens: Vec<Exps> = self.seq.iter().map(|s| g.pow(s, e)).collect();
            gens.extend(sub.gens().iter().cloned());
            logs.push(Subgroup::closure(g, &gens).log_order() - base);
            k += 1;
        }
        Ok(invariants_from_logs(u64::from(g.p()), &logs))
    }

    /// Number of generators of `S / S^p [S,S]`.
    pub fn rank(&self) -> u32 {
        let g = self.group;
        let mut gens: Vec<Exps> = self.seq.iter().map(|s| g.pow(s, i64::from(g.p()))).collect();
        for (i, x) in self.seq.iter().enumerate() {
            for y in &self.seq[i + 1..] {
                gens.push(g.comm(x, y));
            }
        }
        let frattini = Subgroup::normal_closure_within(self, &gens);
        self.log_order() - frattini.log_order()
    }

    fn normal_closure_within(within: &Subgroup<'g>, gens: &[Exps]) -> Subgroup<'g> {
        let g = within.group;
        let mut sub = Subgroup::closure(g, gens);
        loop {
            let mut extra = Vec::new();
            for s in &sub.seq {
                for t in &within.seq {
                    let c = g.conjugate(s, t);
                    if !sub.contains_exps(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return sub;
            }
            extra.extend(sub.seq.iter().cloned());
            sub = Subgroup::closure(g, &extra);
        }
    }

    /// Abelian with at most two generators.
    pub fn is_bicyclic(&self) -> bool {
        self.is_abelian() && self.rank() <= 2
    }

    pub fn is_cyclic(&self) -> bool {
        self.rank() <= 1
    }
}

fn sift_table(g: &PcGroup, table: &BTreeMap<usize, Exps>, mut x: Exps) -> Exps {
    while let Some(d) = leading(&x) {
        let Some(s) = table.get(&d) else { return x };
        let e = x[d];
        let y = g.pow(s, -i64::from(e));
        x = g.mul(&y, &x);
    }
    x
}

fn abelian_invariants_from_power_orders(s: &Subgroup<'_>) -> Vec<u64> {
    let p = u64::from(s.group.p());
    let mut logs = vec![s.log_order()];
    let mut k = 1;
    loop {
        let l = s.power_subgroup(k).log_order();
        logs.push(l);
        if l == 0 {
            break;
        }
        k += 1;
    }
    invariants_from_logs(p, &logs)
}

/// Invariants from `log_p |A^(p^k)|` for `k = 0, 1, ...` ending in 0.
pub(crate) fn invariants_from_logs(p: u64, logs: &[u32]) -> Vec<u64> {
    // r_k = logs[k] - logs[k+1] counts cyclic factors of order >= p^(k+1)
    let r: Vec<u32> = logs.windows(2).map(|w| w[0] - w[1]).collect();
    let mut inv = Vec::new();
    for (k, &rk) in r.iter().enumerate() {
        let next = r.get(k + 1).copied().unwrap_or(0);
        for _ in 0..rk - next {
            inv.push(p.pow(k as u32 + 1));
        }
    }
    inv.sort_unstable();
    inv
}
