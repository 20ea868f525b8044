//! p-quotients of finitely presented groups: the lower exponent-p central
//! series quotients as consistent pc presentations.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::modular::rref_gf;
use crate::pcgroup::{Element, Exps, PcGroup, PcPresentation};

/// A word in the free group: `(generator, exponent)` letters, exponents
/// may be negative.
pub type FpWord = Vec<(usize, i64)>;

pub fn word_inverse(w: &[(usize, i64)]) -> FpWord {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

pub fn word_concat(parts: &[&[(usize, i64)]]) -> FpWord {
    parts.iter().flat_map(|w| w.iter().copied()).collect()
}

/// `[a, b] = a^-1 b^-1 a b`.
pub fn word_comm(a: &[(usize, i64)], b: &[(usize, i64)]) -> FpWord {
    word_concat(&[&word_inverse(a), &word_inverse(b), a, b])
}

/// `a^b = b^-1 a b`.
pub fn word_conj(a: &[(usize, i64)], b: &[(usize, i64)]) -> FpWord {
    word_concat(&[&word_inverse(b), a, b])
}

/// A finitely presented group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPresentation {
    gens: Vec<String>,
    relators: Vec<FpWord>,
}

impl FpPresentation {
    pub fn new(gens: Vec<String>) -> Self {
        Self {
            gens,
            relators: Vec::new(),
        }
    }

    /// Free group on `x1, ..., xn`.
    pub fn free(n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("x{i}")).collect())
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn relators(&self) -> &[FpWord] {
        &self.relators
    }

    pub fn gen_index(&self, name: &str) -> Result<usize> {
        self.gens
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn add_relator(&mut self, w: FpWord) -> Result<()> {
        if let Some(&(g, _)) = w.iter().find(|&&(g, _)| g >= self.gens.len()) {
            return Err(Error::UnknownGenerator(format!("#{g}")));
        }
        self.relators.push(w);
        Ok(())
    }

    /// Parses a word such as `x1^2 y1^-1 x2` over the generator names.
    pub fn parse_word(&self, text: &str) -> Result<FpWord> {
        let mut w = Vec::new();
        for tok in text.split_whitespace() {
            let (name, e) = match tok.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>()
                        .map_err(|_| Error::Malformed(format!("bad exponent in `{tok}`")))?,
                ),
                None => (tok, 1),
            };
            w.push((self.gen_index(name)?, e));
        }
        Ok(w)
    }

    /// The relations of a pc presentation as relators on `g1, ..., gn`.
    pub fn from_pc(pres: &PcPresentation) -> Self {
        let n = pres.num_gens();
        let mut f = Self::new((1..=n).map(|i| format!("g{i}")).collect());
        let p = i64::from(pres.p());
        let word = |w: &[(usize, u32)]| -> FpWord { w.iter().map(|&(g, e)| (g, i64::from(e))).collect() };
        for i in 0..n {
            let rhs = word(pres.power(i));
            f.relators.push(word_concat(&[&[(i, p)], &word_inverse(&rhs)]));
        }
        for j in 0..n {
            for i in 0..j {
                let rhs = word(pres.comm(j, i));
                let c = word_comm(&[(j, 1)], &[(i, 1)]);
                f.relators.push(word_concat(&[&c, &word_inverse(&rhs)]));
            }
        }
        f
    }
}

/// How a pc generator of a quotient arises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Definition {
    /// Image of this FP generator.
    FpGen(usize),
    /// Tail of the power relation of this pc generator.
    Power(usize),
    /// Tail of the commutator relation `[g_j, g_i]`.
    Comm(usize, usize),
}

/// A p-quotient with its epimorphism data.
#[derive(Clone, Debug)]
pub struct PcQuotient {
    group: PcGroup,
    class: usize,
    images: Vec<Exps>,
    definitions: Vec<Definition>,
    stable: bool,
}

impl PcQuotient {
    pub fn group(&self) -> &PcGroup {
        &self.group
    }

    pub fn presentation(&self) -> &PcPresentation {
        self.group.presentation()
    }

    pub fn class(&self) -> usize {
        self.class
    }

    /// Images of the FP generators.
    pub fn images(&self) -> &[Exps] {
        &self.images
    }

    pub fn definitions(&self) -> &[Definition] {
        &self.definitions
    }

    /// Weight (class of definition) of each pc generator.
    pub fn weights(&self) -> &[u32] {
        self.group.presentation().weights().unwrap_or(&[])
    }

    /// Whether the next class is known to add nothing.
    pub fn is_stable(&self) -> bool {
        self.stable
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    /// Evaluates an FP word under the epimorphism.
    pub fn eval_exps(&self, w: &[(usize, i64)]) -> Result<Exps> {
        eval_word(&self.group, &self.images, w)
    }
}

fn eval_word(g: &PcGroup, images: &[Exps], w: &[(usize, i64)]) -> Result<Exps> {
    let mut x = g.identity_exps();
    for &(k, e) in w {
        let img = images
            .get(k)
            .ok_or_else(|| Error::UnknownGenerator(format!("#{k}")))?;
        let y = g.pow(img, e);
        g.mul_exps(&mut x, &y);
    }
    Ok(x)
}

/// Image of an FP word in the quotient.
pub fn lift_word<'q>(q: &'q PcQuotient, w: &[(usize, i64)]) -> Result<Element<'q>> {
    let x = q.eval_exps(w)?;
    Ok(Element::from_word(q.group(), &exps_letters(&x)))
}

fn exps_letters(x: &[u8]) -> Vec<(usize, i64)> {
    x.iter()
        .enumerate()
        .filter(|(_, e)| **e != 0)
        .map(|(i, &e)| (i, i64::from(e)))
        .collect()
}

/// `F / [F,F] F^p`.
pub fn class1_quotient(f: &FpPresentation, p: u32) -> Result<PcQuotient> {
    if !crate::catalog::is_prime(p) {
        return Err(Error::UnsupportedPrime(p));
    }
    let m = f.num_gens();
    let pm = u64::from(p);
    let rows: Vec<Vec<u64>> = f
        .relators
        .iter()
        .map(|r| {
            let mut v = vec![0i64; m];
            for &(g, e) in r {
                v[g] += e;
            }
            v.into_iter().map(|e| e.rem_euclid(pm as i64) as u64).collect()
        })
        .collect();
    let (rref, pivots) = rref_gf(pm, rows, m);
    let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    let d = free.len();
    let mut images = vec![vec![0u8; d]; m];
    for (pos, &c) in free.iter().enumerate() {
        images[c][pos] = 1;
    }
    for (row, &c) in rref.iter().zip(&pivots) {
        for (pos, &fc) in free.iter().enumerate() {
            images[c][pos] = ((pm - row[fc] % pm) % pm) as u8;
        }
    }
    let mut pres = PcPresentation::new(p, d);
    pres.set_weights(vec![1; d]);
    let group = PcGroup::new(pres)?;
    Ok(PcQuotient {
        group,
        class: 1,
        images,
        definitions: free.into_iter().map(Definition::FpGen).collect(),
        stable: false,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TailSource {
    Power(usize),
    Comm(usize, usize),
    Image(usize),
}

/// One step of the p-quotient algorithm: the class `c+1` quotient, or
/// `None` when it equals the class `c` one.
pub fn extend_one_class(f: &FpPresentation, q: &PcQuotient) -> Result<Option<PcQuotient>> {
    let old = q.presentation();
    let p = old.p();
    let pm = u64::from(p);
    let n = old.num_gens();
    let m = f.num_gens();
    let defs: HashSet<Definition> = q.definitions.iter().copied().collect();

    let mut sources = Vec::new();
    for i in 0..n {
        if !defs.contains(&Definition::Power(i)) {
            sources.push(TailSource::Power(i));
        }
    }
    for j in 0..n {
        for i in 0..j {
            if !defs.contains(&Definition::Comm(j, i)) {
                sources.push(TailSource::Comm(j, i));
            }
        }
    }
    for k in 0..m {
        if !defs.contains(&Definition::FpGen(k)) {
            sources.push(TailSource::Image(k));
        }
    }
    let t = sources.len();

    // the covering presentation with one central tail per source
    let mut star = PcPresentation::new(p, n + t);
    let as_letters = |w: &[(usize, u32)]| -> Vec<(usize, i64)> { w.iter().map(|&(g, e)| (g, i64::from(e))).collect() };
    for i in 0..n {
        star.set_power(i, &as_letters(old.power(i)))?;
        for jj in i + 1..n {
            star.set_comm(jj, i, &as_letters(old.comm(jj, i)))?;
        }
    }
    let mut image_tail = vec![None; m];
    for (r, src) in sources.iter().enumerate() {
        match *src {
            TailSource::Power(i) => {
                let mut w = as_letters(old.power(i));
                w.push((n + r, 1));
                star.set_power(i, &w)?;
            }
            TailSource::Comm(j, i) => {
                let mut w = as_letters(old.comm(j, i));
                w.push((n + r, 1));
                star.set_comm(j, i, &w)?;
            }
            TailSource::Image(k) => image_tail[k] = Some(n + r),
        }
    }
    let star_group = PcGroup::new_unchecked(star)?;
    let star_images: Vec<Exps> = (0..m)
        .map(|k| {
            let mut x = q.images[k].clone();
            x.resize(n + t, 0);
            if let Some(c) = image_tail[k] {
                x[c] = 1;
            }
            x
        })
        .collect();

    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut guard = Ok(());
    star_group.for_each_overlap(n, |o, left, right| {
        if left[..n] != right[..n] {
            guard = Err(Error::Guard(format!("{o} differs outside the tails")));
            return false;
        }
        let row: Vec<u64> = (n..n + t)
            .map(|c| (u64::from(left[c]) + pm - u64::from(right[c])) % pm)
            .collect();
        if row.iter().any(|&v| v != 0) {
            rows.push(row);
        }
        true
    });
    guard?;
    for rel in &f.relators {
        let x = eval_word(&star_group, &star_images, rel)?;
        if x[..n].iter().any(|&e| e != 0) {
            return Err(Error::Guard("relator is nontrivial in the previous quotient".into()));
        }
        let row: Vec<u64> = x[n..].iter().map(|&e| u64::from(e)).collect();
        if row.iter().any(|&v| v != 0) {
            rows.push(row);
        }
    }

    let (rref, pivots) = rref_gf(pm, rows, t);
    let free: Vec<usize> = (0..t).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        return Ok(None);
    }
    let s = free.len();
    // each tail as a vector over the surviving tails
    let mut expr = vec![vec![0u8; s]; t];
    for (pos, &c) in free.iter().enumerate() {
        expr[c][pos] = 1;
    }
    for (row, &c) in rref.iter().zip(&pivots) {
        for (pos, &fc) in free.iter().enumerate() {
            expr[c][pos] = ((pm - row[fc] % pm) % pm) as u8;
        }
    }
    let with_tail = |w: &[(usize, u32)], r: usize| -> Vec<(usize, i64)> {
        let mut v = as_letters(w);
        v.extend(
            expr[r]
                .iter()
                .enumerate()
                .filter(|(_, e)| **e != 0)
                .map(|(pos, &e)| (n + pos, i64::from(e))),
        );
        v
    };
    let mut pres = PcPresentation::new(p, n + s);
    for i in 0..n {
        pres.set_power(i, &as_letters(old.power(i)))?;
        for jj in i + 1..n {
            pres.set_comm(jj, i, &as_letters(old.comm(jj, i)))?;
        }
    }
    for (r, src) in sources.iter().enumerate() {
        match *src {
            TailSource::Power(i) => pres.set_power(i, &with_tail(old.power(i), r))?,
            TailSource::Comm(j, i) => pres.set_comm(j, i, &with_tail(old.comm(j, i), r))?,
            TailSource::Image(_) => {}
        }
    }
    let class = q.class + 1;
    let mut weights = q.weights().to_vec();
    weights.resize(n + s, class as u32);
    pres.set_weights(weights);
    let group = PcGroup::new(pres).map_err(|e| Error::Guard(format!("extended quotient: {e}")))?;
    let images: Vec<Exps> = (0..m)
        .map(|k| {
            let mut x = q.images[k].clone();
            x.resize(n, 0);
            match image_tail[k] {
                Some(c) => x.extend_from_slice(&expr[c - n]),
                None => x.resize(n + s, 0),
            }
            x
        })
        .collect();
    let mut definitions = q.definitions.clone();
    for &c in &free {
        definitions.push(match sources[c] {
            TailSource::Power(i) => Definition::Power(i),
            TailSource::Comm(j, i) => Definition::Comm(j, i),
            TailSource::Image(k) => Definition::FpGen(k),
        });
    }
    for rel in &f.relators {
        if !PcGroup::is_identity(&eval_word(&group, &images, rel)?) {
            return Err(Error::Guard("relator survives in the extended quotient".into()));
        }
    }
    Ok(Some(PcQuotient {
        group,
        class,
        images,
        definitions,
        stable: false,
    }))
}

/// Iterates [`extend_one_class`] up to `max_class`. Reaching the cap is not
/// an error; check [`PcQuotient::is_stable`].
pub fn p_quotient(f: &FpPresentation, p: u32, max_class: usize) -> Result<PcQuotient> {
    if max_class == 0 {
        return Err(Error::Malformed("max_class must be at least 1".into()));
    }
    let mut q = class1_quotient(f, p)?;
    loop {
        match extend_one_class(f, &q)? {
            None => {
                q.stable = true;
                return Ok(q);
            }
            Some(next) => {
                if next.class > max_class {
                    return Ok(q);
                }
                q = next;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_class2_exponent3() {
        let f = FpPresentation::free(2);
        let q1 = class1_quotient(&f, 3).unwrap();
        assert_eq!(q1.order(), 9);
        let q2 = extend_one_class(&f, &q1).unwrap().unwrap();
        // x^3, y^3 and [y,x] all survive: the p-covering group of C3 x C3
        assert_eq!(q2.class(), 2);
        assert_eq!(q2.order(), 3u64.pow(5));
    }

    #[test]
    fn exponent3_generators_class2() {
        let mut f = FpPresentation::free(2);
        f.add_relator(vec![(0, 3)]).unwrap();
        f.add_relator(vec![(1, 3)]).unwrap();
        let q1 = class1_quotient(&f, 3).unwrap();
        let q2 = extend_one_class(&f, &q1).unwrap().unwrap();
        assert_eq!(q2.order(), 27);
        assert_eq!(q2.definitions()[2], Definition::Comm(1, 0));
    }

    #[test]
    fn elementary_abelian_is_stable() {
        let mut f = FpPresentation::free(2);
        f.add_relator(vec![(0, 3)]).unwrap();
        f.add_relator(vec![(1, 3)]).unwrap();
        f.add_relator(word_comm(&[(0, 1)], &[(1, 1)])).unwrap();
        let q = p_quotient(&f, 3, 5).unwrap();
        assert!(q.is_stable());
        assert_eq!(q.order(), 9);
    }

    #[test]
    fn dependent_generator_image() {
        // x2 = x1^2; the lowest pivot eliminates x1, so x1 = x2^2
        let mut f = FpPresentation::free(2);
        f.add_relator(vec![(1, 1), (0, -2)]).unwrap();
        f.add_relator(vec![(0, 3)]).unwrap();
        let q = p_quotient(&f, 3, 4).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(q.images()[0], vec![2]);
        assert_eq!(q.images()[1], vec![1]);
    }
}
