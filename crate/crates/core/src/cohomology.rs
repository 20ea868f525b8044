//! Cohomology with trivial `Q/Z` coefficients by explicit cochains, used as
//! an oracle independent of the exterior square, and the extension-theoretic
//! certificates for `B0(G) != 0` and `B0(G) = 0`.
//!
//! `Q/Z` is modelled by `Z/n` with `n = |G|` (`a` stands for `a/n`). A
//! 2-cochain is stored through its reduced coordinates `f(g, s)` for
//! `g != 1` and `s` a pc generator; the full cocycle is rebuilt by walking
//! normal-form words.

use std::fmt;
use std::ops::{Add, Neg};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::modular::{self, Howell, ModRing};
use crate::multiplier::{B0Report, Method};
use crate::pcgroup::{self, BicyclicMode, Exps, PcGroup, Subgroup};

/// An element `a / p^e` of the `p`-part of `Q/Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QZValue {
    p: u32,
    num: u64,
    exp: u32,
}

impl QZValue {
    pub fn zero(p: u32) -> Self {
        Self { p, num: 0, exp: 0 }
    }

    /// `a / p^e`, reduced.
    pub fn new(p: u32, a: i64, e: u32) -> Self {
        let q = i128::from(p).pow(e);
        let mut num = (i128::from(a).rem_euclid(q)) as u64;
        let mut exp = e;
        while exp > 0 && num % u64::from(p) == 0 {
            num /= u64::from(p);
            exp -= 1;
        }
        if num == 0 {
            exp = 0;
        }
        Self { p, num, exp }
    }

    /// `a / n` for `n` a power of `p`.
    pub fn from_mod(p: u32, a: u64, n: u64) -> Self {
        let mut e = 0;
        let mut m = n;
        while m > 1 {
            debug_assert_eq!(m % u64::from(p), 0);
            m /= u64::from(p);
            e += 1;
        }
        Self::new(p, (a % n) as i64, e)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// The representative in `Z/n`, if `p^e` divides `n`.
    pub fn to_mod(&self, n: u64) -> Option<u64> {
        let q = u64::from(self.p).pow(self.exp);
        (n % q == 0).then(|| self.num * (n / q) % n)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.p, (i128::from(self.num as i64) * i128::from(k) % i128::from(u64::from(self.p).pow(self.exp))) as i64, self.exp)
    }
}

impl Add for QZValue {
    type Output = QZValue;
    fn add(self, o: QZValue) -> QZValue {
        let e = self.exp.max(o.exp);
        let a = self.num * u64::from(self.p).pow(e - self.exp);
        let b = o.num * u64::from(o.p).pow(e - o.exp);
        QZValue::new(self.p, (a + b) as i64, e)
    }
}

impl Neg for QZValue {
    type Output = QZValue;
    fn neg(self) -> QZValue {
        QZValue::new(self.p, -(self.num as i64), self.exp)
    }
}

impl fmt::Display for QZValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            f.write_str("0")
        } else {
            write!(f, "{}/{}", self.num, u64::from(self.p).pow(self.exp))
        }
    }
}

/// A homomorphism `N -> Q/Z`, stored by its values on the canonical
/// generating sequence of `N`.
#[derive(Clone, Debug)]
pub struct Character<'g> {
    domain: Subgroup<'g>,
    values: Vec<QZValue>,
}

impl<'g> Character<'g> {
    /// Validates the values against the relations of the domain.
    pub fn new(domain: Subgroup<'g>, values: Vec<QZValue>) -> Result<Self> {
        let g = domain.group();
        if values.len() != domain.gens().len() {
            return Err(Error::Malformed("one value per generator expected".into()));
        }
        let n = g.order();
        let mut v = Vec::with_capacity(values.len());
        for x in &values {
            v.push(x.to_mod(n).ok_or_else(|| Error::Premise(format!("value {x} has order above |G|")))?);
        }
        let ring = ModRing::for_modulus(u64::from(g.p()), n);
        for row in hom_rows(&domain, ring) {
            let s = row.iter().zip(&v).fold(0, |acc, (&a, &b)| ring.add(acc, ring.mul(a, b)));
            if s != 0 {
                return Err(Error::Premise("values violate a relation of the domain".into()));
            }
        }
        Ok(Self { domain, values })
    }

    fn from_mod_values(domain: Subgroup<'g>, v: &[u64]) -> Self {
        let g = domain.group();
        let values = v.iter().map(|&a| QZValue::from_mod(g.p(), a, g.order())).collect();
        Self { domain, values }
    }

    pub fn domain(&self) -> &Subgroup<'g> {
        &self.domain
    }

    pub fn values(&self) -> &[QZValue] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(QZValue::is_zero)
    }

    pub fn eval(&self, x: &[u8]) -> Result<QZValue> {
        let c = self
            .domain
            .express(x)
            .ok_or_else(|| Error::Premise("element outside the domain".into()))?;
        Ok(c.iter()
            .zip(&self.values)
            .fold(QZValue::zero(self.domain.group().p()), |acc, (&e, v)| acc + v.scale(i64::from(e))))
    }

    /// `(^t phi)(x) = phi(t^-1 x t)`; the domain must be normal.
    pub fn conjugate_by(&self, t: &[u8]) -> Result<Self> {
        let g = self.domain.group();
        let values = self
            .domain
            .gens()
            .iter()
            .map(|s| self.eval(&g.conjugate(s, t)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            domain: self.domain.clone(),
            values,
        })
    }
}

impl PartialEq for Character<'_> {
    fn eq(&self, o: &Self) -> bool {
        self.domain == o.domain && self.values == o.values
    }
}

/// Linear conditions on the values of a character on `sub.gens()`.
fn hom_rows(sub: &Subgroup<'_>, ring: ModRing) -> Vec<Vec<u64>> {
    let pres = sub.presentation();
    let d = pres.num_gens();
    let p = u64::from(pres.p());
    let mut rows = Vec::new();
    for i in 0..d {
        let mut row = vec![0u64; d];
        row[i] = ring.add(row[i], p % ring.modulus());
        for &(k, e) in pres.power(i) {
            row[k] = ring.sub(row[k], u64::from(e));
        }
        rows.push(row);
        for j in i + 1..d {
            let w = pres.comm(j, i);
            if w.is_empty() {
                continue;
            }
            let mut row = vec![0u64; d];
            for &(k, e) in w {
                row[k] = ring.add(row[k], u64::from(e));
            }
            rows.push(row);
        }
    }
    rows
}

/// `Hom(sub, Z/n)` inside `(Z/n)^d`, `d = |sub.gens()|`.
fn hom_module(sub: &Subgroup<'_>, ring: ModRing) -> Howell {
    let d = sub.gens().len();
    modular::solve_homogeneous(ring, d, hom_rows(sub, ring))
}

fn ring_for(g: &PcGroup) -> ModRing {
    ModRing::for_modulus(u64::from(g.p()), g.order())
}

/// Coordinates of `t^-1 s t` for each generator `s` of the normal subgroup.
fn conjugation_matrix(n_sub: &Subgroup<'_>, t: &[u8]) -> Result<Vec<Vec<u64>>> {
    let g = n_sub.group();
    n_sub
        .gens()
        .iter()
        .map(|s| {
            n_sub
                .express(&g.conjugate(s, t))
                .map(|c| c.into_iter().map(u64::from).collect())
                .ok_or(Error::NotNormal)
        })
        .collect()
}

fn mat_vec(ring: ModRing, a: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (&x, &y)| ring.add(acc, ring.mul(x, y))))
        .collect()
}

/// Generators of `Hom(N, Q/Z)^G`.
pub fn h1_invariants<'g>(g: &'g PcGroup, n_sub: &Subgroup<'g>) -> Result<Vec<Character<'g>>> {
    let h = h1_fixed_module(g, n_sub)?;
    Ok(h.row_vecs()
        .into_iter()
        .map(|v| Character::from_mod_values(n_sub.clone(), &v))
        .collect())
}

fn h1_fixed_module(g: &PcGroup, n_sub: &Subgroup<'_>) -> Result<Howell> {
    if !std::ptr::eq(g, n_sub.group()) {
        return Err(Error::ParentMismatch);
    }
    if !n_sub.is_normal() {
        return Err(Error::NotNormal);
    }
    let ring = ring_for(g);
    let d = n_sub.gens().len();
    let mut rows = hom_rows(n_sub, ring);
    for i in 0..g.num_gens() {
        let a = conjugation_matrix(n_sub, &g.gen_exps(i))?;
        for (r, arow) in a.into_iter().enumerate() {
            let mut row = arow;
            row[r] = ring.sub(row[r], 1);
            rows.push(row);
        }
    }
    Ok(modular::solve_homogeneous(ring, d, rows))
}

/// Default order cap for the cochain oracle.
pub fn default_size_cap(p: u32) -> u64 {
    let p = u64::from(p);
    if p == 3 {
        p.pow(4)
    } else {
        p.pow(3)
    }
}

/// Reduced 2-cochains of one group with values in `Z/n`.
struct Reduced<'g> {
    g: &'g PcGroup,
    ring: ModRing,
    order: usize,
    d: usize,
}

impl<'g> Reduced<'g> {
    fn new(g: &'g PcGroup, ring: ModRing) -> Self {
        Self {
            g,
            ring,
            order: g.order() as usize,
            d: g.num_gens(),
        }
    }

    fn width(&self) -> usize {
        (self.order - 1) * self.d
    }

    fn var(&self, x: &[u8], s: usize) -> Option<usize> {
        let idx = self.g.index_of(x);
        (idx != 0).then(|| (idx - 1) * self.d + s)
    }

    fn letters(x: &[u8]) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &e) in x.iter().enumerate() {
            out.extend(std::iter::repeat(i).take(e as usize));
        }
        out
    }

    /// Adds `coeff * f(x, s)` along the path of `word` from `start`; returns the end.
    fn path(&self, start: &[u8], word: &[usize], coeff: u64, row: &mut [u64]) -> Exps {
        let mut x = start.to_vec();
        for &s in word {
            if let Some(v) = self.var(&x, s) {
                row[v] = self.ring.add(row[v], coeff);
            }
            self.g.mul_gen_pow(&mut x, s, 1);
        }
        x
    }

    fn relations(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let g = self.g;
        let p = g.p() as usize;
        let mut rels = Vec::new();
        for i in 0..self.d {
            rels.push((vec![i; p], Self::letters(&g.pow_word(i))));
            for j in i + 1..self.d {
                // g_j g_i = g_i g_j [g_j, g_i]
                let mut rhs = vec![i, j];
                rhs.extend(Self::letters(&g.comm_word(j, i)));
                rels.push((vec![j, i], rhs));
            }
        }
        rels
    }

    /// Conditions for the generator actions to define a central extension.
    fn cocycle_rows(&self) -> Result<Vec<Vec<u64>>> {
        let w = self.width();
        let minus = self.ring.neg(1);
        let mut rows = Vec::new();
        let one = self.g.identity_exps();
        for (lhs, rhs) in self.relations() {
            let mut base = vec![0u64; w];
            self.path(&one, &lhs, 1, &mut base);
            self.path(&one, &rhs, minus, &mut base);
            for x in self.g.all_exps().skip(1) {
                let mut row = vec![0u64; w];
                let a = self.path(&x, &lhs, 1, &mut row);
                let b = self.path(&x, &rhs, minus, &mut row);
                if a != b {
                    return Err(Error::Guard("relation words end at different elements".into()));
                }
                for (r, b) in row.iter_mut().zip(&base) {
                    *r = self.ring.sub(*r, *b);
                }
                if row.iter().any(|&v| v != 0) {
                    rows.push(row);
                }
            }
        }
        Ok(rows)
    }

    /// Reduced coordinates of `(g, s) -> chi(g) + chi(s) - chi(gs)`.
    fn coboundary_of(&self, chi: &[u64]) -> Vec<u64> {
        let mut v = vec![0u64; self.width()];
        for x in self.g.all_exps().skip(1) {
            let gi = self.g.index_of(&x);
            for s in 0..self.d {
                let mut y = x.clone();
                self.g.mul_gen_pow(&mut y, s, 1);
                let si = self.g.index_of(&self.g.gen_exps(s));
                let val = self.ring.sub(self.ring.add(chi[gi], chi[si]), chi[self.g.index_of(&y)]);
                v[(gi - 1) * self.d + s] = val;
            }
        }
        v
    }

    fn coboundaries(&self) -> Vec<Vec<u64>> {
        (1..self.order)
            .map(|h| {
                let mut chi = vec![0u64; self.order];
                chi[h] = 1;
                self.coboundary_of(&chi)
            })
            .collect()
    }

    /// Images of `Hom(G, Z/n)` under the Bockstein map.
    fn bocksteins(&self) -> Vec<Vec<u64>> {
        let n = self.ring.modulus();
        let whole = Subgroup::whole(self.g);
        let homs = hom_module(&whole, self.ring);
        let mut out = Vec::new();
        for h in homs.row_vecs() {
            // whole.gens() are the pc generators in order
            let chi: Vec<u64> = self
                .g
                .all_exps()
                .map(|x| {
                    let c = whole.express(&x).expect("member");
                    c.iter().zip(&h).fold(0, |acc, (&e, &v)| self.ring.add(acc, self.ring.mul(u64::from(e), v)))
                })
                .collect();
            let mut v = vec![0u64; self.width()];
            for x in self.g.all_exps().skip(1) {
                let gi = self.g.index_of(&x);
                for s in 0..self.d {
                    let mut y = x.clone();
                    self.g.mul_gen_pow(&mut y, s, 1);
                    let si = self.g.index_of(&self.g.gen_exps(s));
                    let carry = (chi[gi] + chi[si] - chi[self.g.index_of(&y)]) / n;
                    v[(gi - 1) * self.d + s] = carry % n;
                }
            }
            out.push(v);
        }
        out
    }

    /// `psi(x)`: sum of `f` along the normal-form path from the identity.
    fn psi_table(&self, f: &[u64]) -> Vec<u64> {
        let mut psi = vec![0u64; self.order];
        for idx in 1..self.order {
            let x = self.g.exps_of_index(idx);
            let k = x.iter().rposition(|&e| e != 0).expect("nontrivial");
            let mut prefix = x.clone();
            prefix[k] -= 1;
            let pi = self.g.index_of(&prefix);
            let add = if pi == 0 { 0 } else { f[(pi - 1) * self.d + k] };
            psi[idx] = self.ring.add(psi[pi], add);
        }
        psi
    }

    /// The full cocycle value `c(x, y)` attached to reduced coordinates `f`.
    fn cocycle_value(&self, f: &[u64], psi: &[u64], x: &[u8], y: &[u8]) -> u64 {
        let mut z = x.to_vec();
        let mut acc = psi[self.g.index_of(x)];
        for s in Self::letters(y) {
            if let Some(v) = self.var(&z, s) {
                acc = self.ring.add(acc, f[v]);
            }
            self.g.mul_gen_pow(&mut z, s, 1);
        }
        self.ring.sub(acc, psi[self.g.index_of(&z)])
    }

    /// Reduced coordinates of the restriction to `a`, in the coordinates of
    /// `ag`, the group on `a`'s canonical sequence.
    fn restrict(&self, f: &[u64], a: &Subgroup<'_>, ra: &Reduced<'_>) -> Vec<u64> {
        let psi = self.psi_table(f);
        let mut v = vec![0u64; ra.width()];
        let images: Vec<Exps> = ra.g.all_exps().map(|c| a.element_from_coeffs(&c)).collect();
        for idx in 1..ra.order {
            for (s, t) in a.gens().iter().enumerate() {
                v[(idx - 1) * ra.d + s] = self.cocycle_value(f, &psi, &images[idx], t);
            }
        }
        v
    }
}

/// Explicit 2-cocycle table on a group with trivial coefficients `Z/n`.
#[derive(Clone, Debug)]
pub struct Cocycle2 {
    order: usize,
    modulus: u64,
    p: u32,
    mul: Vec<usize>,
    values: Vec<u64>,
}

impl Cocycle2 {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Value at group elements given by their indices.
    pub fn get(&self, x: usize, y: usize) -> QZValue {
        QZValue::from_mod(self.p, self.values[x * self.order + y], self.modulus)
    }

    pub fn raw(&self) -> &[u64] {
        &self.values
    }

    pub fn is_cocycle(&self) -> bool {
        let n = self.order;
        let m = self.modulus;
        let v = |a: usize, b: usize| self.values[a * n + b];
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul[a * n + b];
                (0..n).all(|c| {
                    let bc = self.mul[b * n + c];
                    (v(a, b) + v(ab, c)) % m == (v(a, bc) + v(b, c)) % m
                })
            })
        })
    }
}

/// `H^2(G, Q/Z)` computed from cochains.
pub struct H2Structure<'g> {
    group: &'g PcGroup,
    ring: ModRing,
    cocycles: Howell,
    trivial: Howell,
    invariants: Vec<u64>,
}

impl<'g> H2Structure<'g> {
    pub fn group(&self) -> &'g PcGroup {
        self.group
    }

    pub fn modulus(&self) -> u64 {
        self.ring.modulus()
    }

    /// Abelian invariants (ascending prime powers).
    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    /// Reduced cocycles generating the classes; the trivial classes are
    /// spanned by coboundaries and Bockstein images.
    pub fn basis(&self) -> Vec<Vec<u64>> {
        self.cocycles
            .row_vecs()
            .into_iter()
            .filter(|v| !self.trivial.contains(v))
            .collect()
    }

    pub fn is_trivial_class(&self, f: &[u64]) -> bool {
        self.trivial.contains(f)
    }

    /// The full cocycle of a reduced cocycle, indexed by element indices.
    pub fn cocycle_table(&self, f: &[u64]) -> Cocycle2 {
        let r = Reduced::new(self.group, self.ring);
        let psi = r.psi_table(f);
        let elems: Vec<Exps> = self.group.all_exps().collect();
        let order = elems.len();
        let mut values = Vec::with_capacity(order * order);
        let mut mul = Vec::with_capacity(order * order);
        for x in &elems {
            for y in &elems {
                values.push(r.cocycle_value(f, &psi, x, y));
                mul.push(self.group.index_of(&self.group.mul(x, y)));
            }
        }
        Cocycle2 {
            order,
            modulus: self.modulus(),
            p: self.group.p(),
            mul,
            values,
        }
    }
}

fn check_cap(g: &PcGroup, size_cap: Option<u64>) -> Result<()> {
    let cap = size_cap.unwrap_or_else(|| default_size_cap(g.p()));
    if g.order() > cap {
        return Err(Error::SizeCap { order: g.order(), cap });
    }
    Ok(())
}

struct H2Parts {
    cocycles: Howell,
    trivial: Howell,
}

fn h2_parts(g: &PcGroup, ring: ModRing) -> Result<H2Parts> {
    let r = Reduced::new(g, ring);
    let w = r.width();
    let cocycles = modular::solve_homogeneous(ring, w, r.cocycle_rows()?);
    let trivial = Howell::from_rows(ring, w, r.coboundaries().into_iter().chain(r.bocksteins()));
    if trivial.rows().any(|(_, v)| !cocycles.contains(v)) {
        return Err(Error::Guard("a coboundary fails the cocycle conditions".into()));
    }
    Ok(H2Parts { cocycles, trivial })
}

fn exps_to_orders(p: u32, e: &[u32]) -> Vec<u64> {
    e.iter().map(|&k| u64::from(p).pow(k)).collect()
}

/// `H^2(G, Q/Z)` for `|G|` at most the cap.
pub fn h2_qz(g: &PcGroup, size_cap: Option<u64>) -> Result<H2Structure<'_>> {
    check_cap(g, size_cap)?;
    let ring = ring_for(g);
    let parts = h2_parts(g, ring)?;
    let invariants = exps_to_orders(g.p(), &modular::quotient_invariants(&parts.cocycles, &parts.trivial));
    Ok(H2Structure {
        group: g,
        ring,
        cocycles: parts.cocycles,
        trivial: parts.trivial,
        invariants,
    })
}

/// `B0(G)` as the classes restricting trivially to every bicyclic subgroup.
pub fn b0_oracle(g: &PcGroup, size_cap: Option<u64>, mode: BicyclicMode) -> Result<B0Report> {
    let start = Instant::now();
    let h2 = h2_qz(g, size_cap)?;
    let ring = h2.ring;
    let r = Reduced::new(g, ring);
    let mut kernel = h2.cocycles.clone();
    let bicyclic = pcgroup::enumerate_bicyclic_subgroups(g, mode);
    let target = h2.trivial.log_order();
    for (a, _) in &bicyclic {
        if kernel.log_order() == target {
            break;
        }
        let ag = PcGroup::new(a.presentation())?;
        let ra = Reduced::new(&ag, ring);
        let la = h2_parts(&ag, ring)?.trivial;
        let gens = kernel.row_vecs();
        let mut images: Vec<Vec<u64>> = gens.iter().map(|f| r.restrict(f, a, &ra)).collect();
        images.extend(la.row_vecs());
        let ker = modular::kernel(ring, &images, ra.width());
        let mut next = h2.trivial.clone();
        for (_, coeffs) in ker.rows() {
            let mut v = vec![0u64; r.width()];
            for (c, f) in coeffs.iter().zip(&gens) {
                if *c != 0 {
                    for (x, y) in v.iter_mut().zip(f) {
                        *x = ring.add(*x, ring.mul(*c, *y));
                    }
                }
            }
            next.insert(v);
        }
        kernel = next;
    }
    let invariants = exps_to_orders(g.p(), &modular::quotient_invariants(&kernel, &h2.trivial));
    let b0_order: u64 = invariants.iter().product();
    Ok(B0Report {
        name: g.name().unwrap_or("G").to_string(),
        p: g.p(),
        n: g.num_gens() as u32,
        method: Method::Oracle,
        invariants,
        multiplier_invariants: h2.invariants.clone(),
        m_order: h2.order(),
        m0_order: h2.order() / b0_order,
        certificates: vec![format!(
            "|H^2(G, Q/Z)| = {}, bicyclic subgroups = {}, mode = {:?}",
            h2.order(),
            bicyclic.len(),
            mode
        )],
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Full coboundary of a 1-cochain (indexed by elements) as a table on `G^2`.
pub fn coboundary1(g: &PcGroup, modulus: u64, chi: &[u64]) -> Vec<u64> {
    let elems: Vec<Exps> = g.all_exps().collect();
    let n = elems.len();
    let mut out = vec![0u64; n * n];
    for (a, x) in elems.iter().enumerate() {
        for (b, y) in elems.iter().enumerate() {
            let ab = g.index_of(&g.mul(x, y));
            out[a * n + b] = (chi[a] + chi[b] + modulus - chi[ab] % modulus) % modulus;
        }
    }
    out
}

/// Full coboundary of a 2-cochain as a table on `G^3`.
pub fn coboundary2(g: &PcGroup, modulus: u64, f: &[u64]) -> Vec<u64> {
    let elems: Vec<Exps> = g.all_exps().collect();
    let n = elems.len();
    let mul: Vec<usize> = elems
        .iter()
        .flat_map(|x| elems.iter().map(move |y| g.index_of(&g.mul(x, y))))
        .collect();
    let mut out = vec![0u64; n * n * n];
    for a in 0..n {
        for b in 0..n {
            let ab = mul[a * n + b];
            for c in 0..n {
                let bc = mul[b * n + c];
                let pos = f[b * n + c] + f[a * n + bc];
                let neg = f[ab * n + c] + f[a * n + b];
                out[(a * n + b) * n + c] = (pos + 2 * modulus - neg % (2 * modulus)) % modulus;
            }
        }
    }
    out
}

/// A yes/no verdict with the computation that supports it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub holds: bool,
    pub transcript: Vec<String>,
}

impl Certificate {
    fn new() -> Self {
        Self {
            holds: false,
            transcript: Vec::new(),
        }
    }

    fn note(&mut self, line: impl Into<String>) {
        self.transcript.push(line.into());
    }

    fn fail(mut self, line: impl Into<String>) -> Self {
        self.note(line);
        self.holds = false;
        self
    }
}

/// Orders from the five-term sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransgressionReport {
    pub h1_fixed_order: u64,
    pub restriction_image_order: u64,
    pub h2_quotient_order: u64,
    pub cokernel_order: u64,
}

impl fmt::Display for TransgressionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "|H^1(N)^G| = {}, |res H^1(G)| = {}, |im tr| = {}, |H^2(G/N)| = {}, |coker tr| = {}",
            self.h1_fixed_order,
            self.restriction_image_order,
            self.h1_fixed_order / self.restriction_image_order,
            self.h2_quotient_order,
            self.cokernel_order
        )
    }
}

/// Cokernel of the transgression `H^1(N)^G -> H^2(G/N)`.
pub fn transgression_cokernel(g: &PcGroup, n_sub: &Subgroup<'_>, size_cap: Option<u64>) -> Result<TransgressionReport> {
    let p = u64::from(g.p());
    let fixed = h1_fixed_module(g, n_sub)?;
    let ring = fixed.ring();
    let whole = Subgroup::whole(g);
    let homs = hom_module(&whole, ring);
    let restricted = Howell::from_rows(
        ring,
        n_sub.gens().len(),
        homs.row_vecs().into_iter().map(|h| {
            n_sub
                .gens()
                .iter()
                .map(|s| {
                    let c = whole.express(s).expect("member");
                    c.iter().zip(&h).fold(0, |acc, (&e, &v)| ring.add(acc, ring.mul(u64::from(e), v)))
                })
                .collect::<Vec<u64>>()
        }),
    );
    let q = pcgroup::quotient(g, n_sub)?;
    let h2 = h2_qz(q.group(), size_cap)?;
    let h1_fixed_order = p.pow(fixed.log_order());
    let restriction_image_order = p.pow(restricted.log_order());
    let image_tr = h1_fixed_order / restriction_image_order;
    if h2.order() % image_tr != 0 {
        return Err(Error::Guard("transgression image larger than its target".into()));
    }
    Ok(TransgressionReport {
        h1_fixed_order,
        restriction_image_order,
        h2_quotient_order: h2.order(),
        cokernel_order: h2.order() / image_tr,
    })
}

/// Non-surjective transgression plus cyclic images `AN/N` of all bicyclic
/// `A` give `B0(G) != 0`.
pub fn lemma21_check(g: &PcGroup, n_sub: &Subgroup<'_>, mode: BicyclicMode) -> Result<Certificate> {
    let mut cert = Certificate::new();
    let tr = transgression_cokernel(g, n_sub, None)?;
    cert.note(tr.to_string());
    if tr.cokernel_order == 1 {
        return Ok(cert.fail("transgression is surjective"));
    }
    let q = pcgroup::quotient(g, n_sub)?;
    let qg = q.group();
    let bicyclic = pcgroup::enumerate_bicyclic_subgroups(g, mode);
    let mut failing = Vec::new();
    for (a, (x, y)) in &bicyclic {
        let img = Subgroup::closure(qg, &[q.project(g, x), q.project(g, y)]);
        if !img.is_cyclic() {
            failing.push(a.gens().to_vec());
        }
    }
    cert.note(format!(
        "bicyclic subgroups checked = {}, with noncyclic image = {}",
        bicyclic.len(),
        failing.len()
    ));
    if !failing.is_empty() {
        for f in failing.iter().take(5) {
            cert.note(format!("noncyclic image: A = <{f:?}>"));
        }
        return Ok(cert.fail("some bicyclic subgroup has noncyclic image in G/N"));
    }
    cert.holds = true;
    Ok(cert)
}

/// Checks the relation pattern on `f1..f5`, then applies [`lemma21_check`]
/// with `N = <f4, f5>`.
pub fn lemma22_check(g: &PcGroup, f: &[Exps], mode: BicyclicMode) -> Result<Certificate> {
    if g.p() < 3 {
        return Err(Error::UnsupportedPrime(g.p()));
    }
    if f.len() != 5 || f.iter().any(|x| x.len() != g.num_gens()) {
        return Err(Error::Malformed("expected five elements f1..f5".into()));
    }
    let mut cert = Certificate::new();
    let p = i64::from(g.p());
    let id = g.identity_exps();
    let eq = |a: &Exps, b: &Exps| a == b;
    if Subgroup::closure(g, f).order() != g.order() || g.order() != (p as u64).pow(5) {
        return Ok(cert.fail("f1..f5 do not generate a group of order p^5"));
    }
    // (i)
    if !eq(&g.pow(&f[3], p), &id) || !eq(&g.pow(&f[4], p), &id) {
        return Ok(cert.fail("(i) fails: f4^p or f5^p is nontrivial"));
    }
    if !pcgroup::center(g).contains_exps(&f[4]) {
        return Ok(cert.fail("(i) fails: f5 is not central"));
    }
    cert.note("(i) holds");
    // (ii)
    let checks: [(usize, usize, Option<usize>); 6] = [
        (1, 0, Some(2)),
        (2, 0, Some(3)),
        (3, 0, Some(4)),
        (2, 1, Some(4)),
        (3, 1, None),
        (3, 2, None),
    ];
    for (j, i, rhs) in checks {
        let c = g.comm(&f[j], &f[i]);
        let want = rhs.map_or_else(|| id.clone(), |k| f[k].clone());
        if c != want {
            let rhs = rhs.map_or("1".to_string(), |k| format!("f{}", k + 1));
            return Ok(cert.fail(format!("(ii) fails: [f{},f{}] != {rhs}", j + 1, i + 1)));
        }
    }
    cert.note("(ii) holds");
    // (iii)
    let n_sub = Subgroup::closure(g, &[f[3].clone(), f[4].clone()]);
    if n_sub.order() != (p as u64).pow(2) || !n_sub.is_abelian() || n_sub.power_subgroup(1).order() != 1 {
        return Ok(cert.fail("(iii) fails: <f4, f5> is not C_p x C_p"));
    }
    let q = pcgroup::quotient(g, &n_sub)?;
    let qg = q.group();
    if qg.order() != (p as u64).pow(3) || pcgroup::derived_subgroup(qg).order() == 1 || pcgroup::group_exponent(qg) != p as u64 {
        return Ok(cert.fail("(iii) fails: G/<f4, f5> is not nonabelian of order p^3 and exponent p"));
    }
    cert.note("(iii) holds");
    let inner = lemma21_check(g, &n_sub, mode)?;
    cert.transcript.extend(inner.transcript);
    cert.holds = inner.holds;
    Ok(cert)
}

/// A finite module `M` inside `(Z/p^k)^dim` with an action of `C_n`;
/// `sigma` acts on column vectors.
#[derive(Clone, Debug)]
pub struct CyclicModule {
    ring: ModRing,
    order: usize,
    sigma: Vec<Vec<u64>>,
    gens: Vec<Vec<u64>>,
}

impl CyclicModule {
    pub fn new(ring: ModRing, order: usize, sigma: Vec<Vec<u64>>, gens: Vec<Vec<u64>>) -> Result<Self> {
        let dim = sigma.len();
        if sigma.iter().any(|r| r.len() != dim) || gens.iter().any(|v| v.len() != dim) {
            return Err(Error::Malformed("action matrix and generators disagree in size".into()));
        }
        let m = Self {
            ring,
            order,
            sigma,
            gens,
        };
        let span = Howell::from_rows(ring, dim, m.gens.clone());
        for v in &m.gens {
            if !span.contains(&m.act(v)) {
                return Err(Error::Premise("module is not invariant under the action".into()));
            }
            if m.act_pow(v, order) != v.iter().map(|&x| x % ring.modulus()).collect::<Vec<_>>() {
                return Err(Error::Premise(format!("action does not have order dividing {order}")));
            }
        }
        Ok(m)
    }

    /// `Z/p^k` with trivial action.
    pub fn trivial(ring: ModRing, order: usize) -> Self {
        Self {
            ring,
            order,
            sigma: vec![vec![1]],
            gens: vec![vec![1]],
        }
    }

    pub fn ring(&self) -> ModRing {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.sigma.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn gens(&self) -> &[Vec<u64>] {
        &self.gens
    }

    pub fn act(&self, v: &[u64]) -> Vec<u64> {
        mat_vec(self.ring, &self.sigma, v)
    }

    pub fn act_pow(&self, v: &[u64], i: usize) -> Vec<u64> {
        let mut x = v.to_vec();
        for _ in 0..i {
            x = self.act(&x);
        }
        x
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| self.ring.add(x, y)).collect()
    }

    fn combine(&self, coeffs: &[u64], vecs: &[Vec<u64>]) -> Vec<u64> {
        let mut v = vec![0u64; self.dim()];
        for (c, w) in coeffs.iter().zip(vecs) {
            for (x, y) in v.iter_mut().zip(w) {
                *x = self.ring.add(*x, self.ring.mul(*c, *y));
            }
        }
        v
    }

    pub fn norm(&self, v: &[u64]) -> Vec<u64> {
        let mut acc = vec![0u64; self.dim()];
        let mut x = v.to_vec();
        for _ in 0..self.order {
            acc = self.add(&acc, &x);
            x = self.act(&x);
        }
        acc
    }
}

/// `H^1(C_n, M) = Ker(Norm) / Im(sigma - 1)`.
#[derive(Clone, Debug)]
pub struct CyclicH1 {
    module: CyclicModule,
    kernel: Howell,
    image: Howell,
    invariants: Vec<u64>,
}

impl CyclicH1 {
    pub fn module(&self) -> &CyclicModule {
        &self.module
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    /// Generators of `Ker(Norm)`.
    pub fn kernel_gens(&self) -> Vec<Vec<u64>> {
        self.kernel.row_vecs()
    }

    /// Generators of `Ker(Norm)` that are nonzero in the quotient.
    pub fn classes(&self) -> Vec<Vec<u64>> {
        self.kernel
            .row_vecs()
            .into_iter()
            .filter(|v| !self.image.contains(v))
            .collect()
    }

    pub fn is_trivial_class(&self, x: &[u64]) -> bool {
        self.image.contains(x)
    }

    /// `beta_x(sigma^i) = x + sigma x + ... + sigma^(i-1) x` for `i < n`.
    pub fn cocycle(&self, x: &[u64]) -> Vec<Vec<u64>> {
        let m = &self.module;
        let mut out = Vec::with_capacity(m.order);
        let mut acc = vec![0u64; m.dim()];
        let mut y = x.to_vec();
        for _ in 0..m.order {
            out.push(acc.clone());
            acc = m.add(&acc, &y);
            y = m.act(&y);
        }
        out
    }
}

pub fn cyclic_h1(module: &CyclicModule) -> CyclicH1 {
    let ring = module.ring;
    let dim = module.dim();
    let gens = module.gens.clone();
    let norms: Vec<Vec<u64>> = gens.iter().map(|v| module.norm(v)).collect();
    let coeffs = modular::kernel(ring, &norms, dim);
    let kernel = Howell::from_rows(ring, dim, coeffs.row_vecs().iter().map(|c| module.combine(c, &gens)));
    let image = Howell::from_rows(
        ring,
        dim,
        gens.iter().map(|v| {
            let s = module.act(v);
            s.iter().zip(v).map(|(&a, &b)| ring.sub(a, b)).collect::<Vec<u64>>()
        }),
    );
    let invariants = exps_to_orders(ring.p() as u32, &modular::quotient_invariants(&kernel, &image));
    CyclicH1 {
        module: module.clone(),
        kernel,
        image,
        invariants,
    }
}

/// A 3-cochain on `C_n` with values in a [`CyclicModule`].
#[derive(Clone, Debug)]
pub struct Cocycle3 {
    module: CyclicModule,
    values: Vec<Vec<u64>>,
}

impl Cocycle3 {
    pub fn module(&self) -> &CyclicModule {
        &self.module
    }

    /// Value at `(sigma^i, sigma^j, sigma^l)`.
    pub fn get(&self, i: usize, j: usize, l: usize) -> &[u64] {
        let n = self.module.order;
        &self.values[(i % n * n + j % n) * n + l % n]
    }

    /// Value in `Q/Z` when the module is `Z/p^k`.
    pub fn qz(&self, i: usize, j: usize, l: usize) -> QZValue {
        let r = self.module.ring;
        QZValue::from_mod(r.p() as u32, self.get(i, j, l)[0], r.modulus())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(|&x| x == 0))
    }

    pub fn is_cocycle(&self) -> bool {
        let m = &self.module;
        let n = m.order;
        let r = m.ring;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let t1 = m.act_pow(self.get(b, c, d), a);
                        let terms = [
                            (&t1[..], true),
                            (self.get(a + b, c, d), false),
                            (self.get(a, b + c, d), true),
                            (self.get(a, b, c + d), false),
                            (self.get(a, b, c), true),
                        ];
                        for k in 0..m.dim() {
                            let s = terms.iter().fold(0, |acc, (v, plus)| {
                                if *plus {
                                    r.add(acc, v[k])
                                } else {
                                    r.sub(acc, v[k])
                                }
                            });
                            if s != 0 {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

impl PartialEq for Cocycle3 {
    fn eq(&self, o: &Self) -> bool {
        self.values == o.values
    }
}

/// Cup product of a 1-cocycle `beta` on `C_p` with the fundamental class.
pub fn cup_fundamental(module: &CyclicModule, beta: &[Vec<u64>]) -> Result<Cocycle3> {
    let p = module.order;
    if beta.len() != p {
        return Err(Error::Malformed("one value per group element expected".into()));
    }
    let zero = vec![0u64; module.dim()];
    let mut values = Vec::with_capacity(p * p * p);
    for i in 0..p {
        for j in 0..p {
            for l in 0..p {
                values.push(if i + j < p {
                    zero.clone()
                } else {
                    module.act_pow(&beta[l], (i + j) % p)
                });
            }
        }
    }
    Ok(Cocycle3 {
        module: module.clone(),
        values,
    })
}

/// An extension `N -> G -> C_p` with section `u(tau^i) = t^i`.
pub struct CyclicExtension<'g> {
    group: &'g PcGroup,
    normal: Subgroup<'g>,
    t: Exps,
    ring: ModRing,
    hom: Howell,
    sigma: Vec<Vec<u64>>,
}

impl<'g> CyclicExtension<'g> {
    pub fn new(g: &'g PcGroup, n_sub: &Subgroup<'g>) -> Result<Self> {
        if !std::ptr::eq(g, n_sub.group()) {
            return Err(Error::ParentMismatch);
        }
        if !n_sub.is_normal() {
            return Err(Error::NotNormal);
        }
        if n_sub.log_order() + 1 != g.num_gens() as u32 {
            return Err(Error::Premise("G/N must be cyclic of order p".into()));
        }
        let t = (0..g.num_gens())
            .map(|i| g.gen_exps(i))
            .find(|x| !n_sub.contains_exps(x))
            .expect("proper subgroup");
        let ring = ring_for(g);
        let hom = hom_module(n_sub, ring);
        let sigma = conjugation_matrix(n_sub, &t)?;
        Ok(Self {
            group: g,
            normal: n_sub.clone(),
            t,
            ring,
            hom,
            sigma,
        })
    }

    pub fn section_generator(&self) -> &Exps {
        &self.t
    }

    pub fn p(&self) -> usize {
        self.group.p() as usize
    }

    /// `H^1(N, Q/Z)` as a `G/N`-module, coordinates on `N`'s generators.
    pub fn h1_module(&self) -> CyclicModule {
        CyclicModule {
            ring: self.ring,
            order: self.p(),
            sigma: self.sigma.clone(),
            gens: self.hom.row_vecs(),
        }
    }

    pub fn character(&self, v: &[u64]) -> Character<'g> {
        Character::from_mod_values(self.normal.clone(), v)
    }

    fn u(&self, i: usize) -> Exps {
        self.group.pow(&self.t, (i % self.p()) as i64)
    }

    /// `u(tau^i) u(tau^j) u(tau^(i+j))^-1`.
    pub fn epsilon(&self, i: usize, j: usize) -> Exps {
        let g = self.group;
        g.mul(&g.mul(&self.u(i), &self.u(j)), &g.inv(&self.u(i + j)))
    }

    /// `c(t1, t2, t3) = (^u(t1 t2) gamma(t3))(epsilon(t1, t2))`.
    pub fn lambda(&self, gamma: &[Vec<u64>]) -> Result<Cocycle3> {
        let p = self.p();
        if gamma.len() != p {
            return Err(Error::Malformed("one value per element of G/N expected".into()));
        }
        let g = self.group;
        let ring = self.ring;
        let mut values = Vec::with_capacity(p * p * p);
        for i in 0..p {
            for j in 0..p {
                let eps = self.epsilon(i, j);
                let u = self.u(i + j);
                let c = self
                    .normal
                    .express(&g.conjugate(&eps, &u))
                    .ok_or_else(|| Error::Guard("epsilon outside N".into()))?;
                for gl in gamma {
                    let v = c
                        .iter()
                        .zip(gl)
                        .fold(0, |acc, (&e, &x)| ring.add(acc, ring.mul(u64::from(e), x)));
                    values.push(vec![v]);
                }
            }
        }
        Ok(Cocycle3 {
            module: CyclicModule::trivial(ring, p),
            values,
        })
    }
}

/// `lambda(gamma)` for the extension `N -> G -> G/N`.
pub fn lambda_map(g: &PcGroup, n_sub: &Subgroup<'_>, gamma: &[Vec<u64>]) -> Result<Cocycle3> {
    let n_sub = Subgroup::closure(g, n_sub.gens());
    CyclicExtension::new(g, &n_sub)?.lambda(gamma)
}

/// `B0(G) = 0` from injectivity of `lambda` on `H^1(G/N, H^1(N))`, given
/// `|N| <= p^4` and `H^2(G/N) = 0`.
pub fn thm56_certificate(g: &PcGroup, n_sub: &Subgroup<'_>) -> Result<Certificate> {
    let p = g.p() as usize;
    let n_sub = Subgroup::closure(g, n_sub.gens());
    if n_sub.log_order() > 4 {
        return Err(Error::Premise("|N| must be at most p^4".into()));
    }
    let ext = CyclicExtension::new(g, &n_sub)?;
    let q = pcgroup::quotient(g, &n_sub)?;
    if !h2_qz(q.group(), None)?.is_trivial() {
        return Err(Error::Premise("H^2(G/N) is nontrivial".into()));
    }
    let mut cert = Certificate::new();
    cert.note("H^2(G/N, Q/Z) = 0");
    let module = ext.h1_module();
    let h1 = cyclic_h1(&module);
    cert.note(format!("H^1(G/N, H^1(N, Q/Z)) invariants {:?}", h1.invariants()));
    if h1.is_trivial() {
        cert.note("lambda is injective on the trivial group");
        cert.holds = true;
        return Ok(cert);
    }
    let ring = module.ring();
    let trivial = CyclicModule::trivial(ring, p);
    let gens = h1.kernel_gens();
    let mut extracted = Vec::with_capacity(gens.len());
    for x in &gens {
        let c = ext.lambda(&h1.cocycle(x))?;
        if !c.is_cocycle() {
            return Err(Error::Guard("lambda output is not a 3-cocycle".into()));
        }
        // beta~(sigma^i) = c(sigma, sigma^(p-1), sigma^i)
        let bt: Vec<Vec<u64>> = (0..p).map(|i| c.get(1, p - 1, i).to_vec()).collect();
        if cup_fundamental(&trivial, &bt)? != c {
            return Ok(cert.fail("lambda output is not a cup product with the fundamental class"));
        }
        if h1.is_trivial_class(x) {
            continue;
        }
        let vals: Vec<String> = bt.iter().map(|v| QZValue::from_mod(g.p(), v[0], ring.modulus()).to_string()).collect();
        cert.note(format!("class {x:?}: c(s, s^(p-1), s^i) = [{}]", vals.join(", ")));
        extracted.push((x.clone(), bt.into_iter().map(|v| v[0]).collect::<Vec<u64>>()));
    }
    // the kernel of x -> beta~_x on Ker(Norm) must lie in Im(sigma - 1)
    let images: Vec<Vec<u64>> = gens
        .iter()
        .map(|x| {
            let c = ext.lambda(&h1.cocycle(x)).expect("checked above");
            (0..p).map(|i| c.get(1, p - 1, i)[0]).collect()
        })
        .collect();
    let ker = modular::kernel(ring, &images, p);
    for (_, coeffs) in ker.rows() {
        let x = module.combine(coeffs, &gens);
        if !h1.is_trivial_class(&x) {
            return Ok(cert.fail(format!("lambda kills the nontrivial class {x:?}")));
        }
    }
    cert.note("lambda is injective");
    cert.holds = true;
    Ok(cert)
}

/// Outcome of the certificate-based method: `Some(true)` when the
/// transgression criterion applies to the pc generators, `Some(false)` when
/// some index-`p` subgroup yields a vanishing certificate, `None` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriteriaVerdict {
    pub nonzero: Option<bool>,
    pub certificates: Vec<String>,
}

pub fn b0_criteria(g: &PcGroup, mode: BicyclicMode) -> Result<CriteriaVerdict> {
    let n = g.num_gens();
    let mut certificates = Vec::new();
    if n == 5 && g.p() >= 3 {
        let f: Vec<Exps> = (0..5).map(|i| g.gen_exps(i)).collect();
        let c = lemma22_check(g, &f, mode)?;
        certificates.push(format!("lemma22 on pc generators: {}", c.holds));
        certificates.extend(c.transcript);
        if c.holds {
            return Ok(CriteriaVerdict {
                nonzero: Some(true),
                certificates,
            });
        }
    }
    for skip in 0..n {
        let gens: Vec<Exps> = (0..n).filter(|&i| i != skip).map(|i| g.gen_exps(i)).collect();
        let n_sub = Subgroup::closure(g, &gens);
        if n_sub.log_order() + 1 != n as u32 || !n_sub.is_normal() {
            continue;
        }
        match thm56_certificate(g, &n_sub) {
            Ok(c) => {
                certificates.push(format!("thm56 with N = <g_i : i != {}>: {}", skip + 1, c.holds));
                certificates.extend(c.transcript);
                if c.holds {
                    return Ok(CriteriaVerdict {
                        nonzero: Some(false),
                        certificates,
                    });
                }
            }
            Err(Error::Premise(_)) | Err(Error::SizeCap { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    certificates.push("no criterion applies".into());
    Ok(CriteriaVerdict {
        nonzero: None,
        certificates,
    })
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
    fn qz_arithmetic() {
        let a = QZValue::new(3, 3, 2);
        assert_eq!((a.numerator(), a.exponent()), (1, 1));
        assert_eq!((a + a + a).to_string(), "0");
        assert_eq!((-a).to_string(), "2/3");
        assert_eq!(QZValue::from_mod(5, 50, 125).to_string(), "2/5");
        assert_eq!(a.to_mod(27), Some(9));
    }

    #[test]
    fn h2_small_groups() {
        assert!(h2_qz(&group(3, 2, &[(0, 1)], &[]), None).unwrap().is_trivial());
        assert_eq!(h2_qz(&group(3, 2, &[], &[]), None).unwrap().invariants(), &[3]);
        assert_eq!(h2_qz(&group(3, 3, &[], &[(1, 0, 2)]), None).unwrap().invariants(), &[3, 3]);
        assert_eq!(h2_qz(&group(3, 3, &[], &[]), None).unwrap().invariants(), &[3, 3, 3]);
        assert!(h2_qz(&group(3, 3, &[(0, 2)], &[(1, 0, 2)]), None).unwrap().is_trivial());
    }

    #[test]
    fn basis_cocycles_are_cocycles() {
        let g = group(3, 3, &[], &[(1, 0, 2)]);
        let h2 = h2_qz(&g, None).unwrap();
        for f in h2.basis() {
            assert!(h2.cocycle_table(&f).is_cocycle());
        }
    }

    #[test]
    fn size_cap_refuses() {
        let g = group(3, 5, &[], &[]);
        assert!(matches!(h2_qz(&g, None), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn oracle_on_order_27() {
        let heis = group(3, 3, &[], &[(1, 0, 2)]);
        let r = b0_oracle(&heis, None, BicyclicMode::AllPairs).unwrap();
        assert!(r.invariants.is_empty());
        assert_eq!(r.multiplier_invariants, vec![3, 3]);
    }

    #[test]
    fn cyclic_h1_trivial_action() {
        let ring = ModRing::new(5, 1);
        let h = cyclic_h1(&CyclicModule::trivial(ring, 5));
        assert_eq!(h.invariants(), &[5]);
    }

    #[test]
    fn cup_formula_value() {
        let ring = ModRing::new(5, 1);
        let m = CyclicModule::trivial(ring, 5);
        let beta: Vec<Vec<u64>> = (0..5).map(|i| vec![i]).collect();
        let c = cup_fundamental(&m, &beta).unwrap();
        assert!(c.is_cocycle());
        assert_eq!(c.qz(3, 4, 2).to_string(), "2/5");
        assert!(c.qz(1, 1, 1).is_zero());
    }
}
