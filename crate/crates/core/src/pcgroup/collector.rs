use crate::error::{Error, Result};

use super::presentation::PcPresentation;

/// Exponent vector of a normal-form element.
pub type Exps = Vec<u8>;

/// A compiled power-commutator presentation: relation data plus the
/// conjugation tables driving collection from the left.
#[derive(Clone, Debug)]
pub struct PcGroup {
    pres: PcPresentation,
    p: u8,
    n: usize,
    power: Vec<Vec<(usize, u8)>>,
    // for each i, the generators j > i with [g_j, g_i] != 1
    noncomm: Vec<Vec<usize>>,
    // conj[j * n + i][s - 1] = normal form of (g_j^s)^(g_i), for noncommuting j > i
    conj: Vec<Option<Vec<Exps>>>,
}

impl PcGroup {
    /// Compiles and checks consistency.
    pub fn new(pres: PcPresentation) -> Result<Self> {
        let g = Self::new_unchecked(pres)?;
        if let Some(failure) = g.consistency_failure() {
            return Err(Error::Inconsistent(failure));
        }
        Ok(g)
    }

    /// Compiles without the consistency check. Collection still terminates,
    /// but normal forms need not be unique.
    pub fn new_unchecked(pres: PcPresentation) -> Result<Self> {
        let p = pres.p();
        if !(2..=251).contains(&p) {
            return Err(Error::UnsupportedPrime(p));
        }
        let n = pres.num_gens();
        let power = (0..n)
            .map(|i| pres.power(i).iter().map(|&(g, e)| (g, e as u8)).collect())
            .collect();
        let mut noncomm = vec![Vec::new(); n];
        for (j, i, _) in pres.nontrivial_comms() {
            noncomm[i].push(j);
        }
        for v in &mut noncomm {
            v.sort_unstable();
        }
        let mut g = Self {
            pres,
            p: p as u8,
            n,
            power,
            noncomm,
            conj: vec![None; n * n],
        };
        for i in (0..n).rev() {
            for idx in 0..g.noncomm[i].len() {
                let j = g.noncomm[i][idx];
                let mut base = vec![0u8; n];
                base[j] = 1;
                for &(k, e) in g.pres.comm(j, i) {
                    base[k] = e as u8;
                }
                let mut table = Vec::with_capacity(g.p as usize - 1);
                let mut acc = base.clone();
                table.push(base.clone());
                for _ in 2..g.p {
                    g.mul_exps(&mut acc, &base);
                    table.push(acc.clone());
                }
                g.conj[j * n + i] = Some(table);
            }
        }
        Ok(g)
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.pres
    }

    pub fn p(&self) -> u32 {
        u32::from(self.p)
    }

    pub fn num_gens(&self) -> usize {
        self.n
    }

    /// `|G| = p^n`.
    pub fn order(&self) -> u64 {
        u64::from(self.p).pow(self.n as u32)
    }

    pub fn name(&self) -> Option<&str> {
        self.pres.name()
    }

    pub fn identity_exps(&self) -> Exps {
        vec![0; self.n]
    }

    pub fn gen_exps(&self, i: usize) -> Exps {
        let mut e = vec![0; self.n];
        e[i] = 1;
        e
    }

    /// Whether `g_j` and `g_i` commute by the relations (`j != i`).
    pub fn gens_commute(&self, j: usize, i: usize) -> bool {
        let (hi, lo) = if j > i { (j, i) } else { (i, j) };
        self.conj[hi * self.n + lo].is_none()
    }

    /// `x := x * g_i^c`.
    pub fn mul_gen_pow(&self, x: &mut [u8], i: usize, c: u8) {
        if c == 0 {
            return;
        }
        let needs_conj = self.noncomm[i].iter().any(|&j| x[j] != 0);
        if !needs_conj {
            let e = u16::from(x[i]) + u16::from(c);
            if e < u16::from(self.p) {
                x[i] = e as u8;
                return;
            }
            x[i] = (e - u16::from(self.p)) as u8;
            if self.power[i].is_empty() {
                return;
            }
            let suffix = take_suffix(x, i + 1);
            for &(g, e) in &self.power[i] {
                self.mul_gen_pow(x, g, e);
            }
            self.mul_exps_from(x, &suffix, i + 1);
            return;
        }
        for _ in 0..c {
            let suffix = take_suffix(x, i + 1);
            self.mul_gen_pow(x, i, 1);
            for j in i + 1..self.n {
                let s = suffix[j];
                if s == 0 {
                    continue;
                }
                match &self.conj[j * self.n + i] {
                    None => self.mul_gen_pow(x, j, s),
                    Some(table) => self.mul_exps_from(x, &table[s as usize - 1], j),
                }
            }
        }
    }

    /// `x := x * y`.
    pub fn mul_exps(&self, x: &mut [u8], y: &[u8]) {
        self.mul_exps_from(x, y, 0);
    }

    fn mul_exps_from(&self, x: &mut [u8], y: &[u8], from: usize) {
        for (k, &e) in y.iter().enumerate().skip(from) {
            if e != 0 {
                self.mul_gen_pow(x, k, e);
            }
        }
    }

    pub fn mul(&self, x: &[u8], y: &[u8]) -> Exps {
        let mut r = x.to_vec();
        self.mul_exps(&mut r, y);
        r
    }

    pub fn inv(&self, x: &[u8]) -> Exps {
        let mut z = x.to_vec();
        let mut y = vec![0u8; self.n];
        for i in 0..self.n {
            let e = z[i];
            if e != 0 {
                let c = self.p - e;
                self.mul_gen_pow(&mut z, i, c);
                self.mul_gen_pow(&mut y, i, c);
            }
        }
        debug_assert!(z.iter().all(|&v| v == 0));
        y
    }

    pub fn pow(&self, x: &[u8], k: i64) -> Exps {
        let base = if k < 0 { self.inv(x) } else { x.to_vec() };
        let mut k = k.unsigned_abs();
        let mut result = self.identity_exps();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                self.mul_exps(&mut result, &sq);
            }
            k >>= 1;
            if k > 0 {
                let s = sq.clone();
                self.mul_exps(&mut sq, &s);
            }
        }
        result
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn comm(&self, x: &[u8], y: &[u8]) -> Exps {
        let mut yx = y.to_vec();
        self.mul_exps(&mut yx, x);
        let mut r = self.inv(&yx);
        self.mul_exps(&mut r, x);
        self.mul_exps(&mut r, y);
        r
    }

    /// `x^y = y^-1 x y`.
    pub fn conjugate(&self, x: &[u8], y: &[u8]) -> Exps {
        let mut r = self.inv(y);
        self.mul_exps(&mut r, x);
        self.mul_exps(&mut r, y);
        r
    }

    pub fn commute(&self, x: &[u8], y: &[u8]) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn is_identity(x: &[u8]) -> bool {
        x.iter().all(|&e| e == 0)
    }

    /// Multiplies the generator word `letters` (each `(gen, exponent)`,
    /// exponents may be negative) onto `x`.
    pub fn mul_letters(&self, x: &mut Exps, letters: &[(usize, i64)]) {
        for &(g, e) in letters {
            let y = self.pow(&self.gen_exps(g), e);
            self.mul_exps(x, &y);
        }
    }

    /// Index of a normal form in `0..p^n` (first generator most significant).
    pub fn index_of(&self, x: &[u8]) -> usize {
        x.iter().fold(0usize, |acc, &e| acc * self.p as usize + e as usize)
    }

    pub fn exps_of_index(&self, mut idx: usize) -> Exps {
        let mut e = vec![0u8; self.n];
        for i in (0..self.n).rev() {
            e[i] = (idx % self.p as usize) as u8;
            idx /= self.p as usize;
        }
        e
    }

    /// All normal forms, in index order.
    pub fn all_exps(&self) -> impl Iterator<Item = Exps> + '_ {
        (0..self.order() as usize).map(move |i| self.exps_of_index(i))
    }

    /// First consistency test that fails, if any.
    pub fn consistency_failure(&self) -> Option<String> {
        let mut failure = None;
        self.for_each_overlap(self.n, |o, left, right| {
            if left != right {
                failure = Some(o.to_string());
                return false;
            }
            true
        });
        failure
    }

    /// Evaluates both sides of every consistency overlap among the first
    /// `upto` generators; stops early when `f` returns false.
    pub(crate) fn for_each_overlap(&self, upto: usize, mut f: impl FnMut(Overlap, Exps, Exps) -> bool) {
        let p = i64::from(self.p);
        let g = |i: usize| self.gen_exps(i);
        for k in 0..upto {
            for j in 0..k {
                let kj = self.mul(&g(k), &g(j));
                for i in 0..j {
                    let left = self.mul(&g(k), &self.mul(&g(j), &g(i)));
                    let right = self.mul(&kj, &g(i));
                    if !f(Overlap::Assoc(k, j, i), left, right) {
                        return;
                    }
                }
            }
        }
        for j in 0..upto {
            let pj = self.pow_word(j);
            let pj1 = self.pow(&g(j), p - 1);
            for i in 0..j {
                let left = self.mul(&pj, &g(i));
                let right = self.mul(&pj1, &self.mul(&g(j), &g(i)));
                if !f(Overlap::PowerLeft(j, i), left, right) {
                    return;
                }
            }
        }
        for i in 0..upto {
            let pi = self.pow_word(i);
            let pi1 = self.pow(&g(i), p - 1);
            for j in i + 1..upto {
                let left = self.mul(&g(j), &pi);
                let right = self.mul(&self.mul(&g(j), &g(i)), &pi1);
                if !f(Overlap::PowerRight(j, i), left, right) {
                    return;
                }
            }
            let left = self.mul(&g(i), &pi);
            let right = self.mul(&pi, &g(i));
            if !f(Overlap::PowerSelf(i), left, right) {
                return;
            }
        }
    }

    /// Normal form of the right-hand side of `g_i^p`.
    pub fn pow_word(&self, i: usize) -> Exps {
        let mut e = self.identity_exps();
        for &(g, c) in &self.power[i] {
            e[g] = c;
        }
        e
    }

    /// Normal form of the right-hand side of `[g_j, g_i]`.
    pub fn comm_word(&self, j: usize, i: usize) -> Exps {
        let mut e = self.identity_exps();
        for &(g, c) in self.pres.comm(j, i) {
            e[g] = c as u8;
        }
        e
    }
}

/// A consistency overlap (0-based generator indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overlap {
    /// `g_k (g_j g_i)` against `(g_k g_j) g_i`.
    Assoc(usize, usize, usize),
    /// `g_j^p g_i` against `g_j^(p-1) (g_j g_i)`.
    PowerLeft(usize, usize),
    /// `g_j g_i^p` against `(g_j g_i) g_i^(p-1)`.
    PowerRight(usize, usize),
    /// `g_i g_i^p` against `g_i^p g_i`.
    PowerSelf(usize),
}

impl std::fmt::Display for Overlap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Overlap::Assoc(k, j, i) => write!(f, "associativity overlap g{} g{} g{}", k + 1, j + 1, i + 1),
            Overlap::PowerLeft(j, i) => write!(f, "power overlap g{}^p g{}", j + 1, i + 1),
            Overlap::PowerRight(j, i) => write!(f, "power overlap g{} g{}^p", j + 1, i + 1),
            Overlap::PowerSelf(i) => write!(f, "power overlap g{}^(p+1)", i + 1),
        }
    }
}

fn take_suffix(x: &mut [u8], from: usize) -> Exps {
    let mut s = vec![0u8; x.len()];
    for k in from..x.len() {
        s[k] = x[k];
        x[k] = 0;
    }
    s
}

pub fn is_consistent(pres: &PcPresentation) -> bool {
    PcGroup::new_unchecked(pres.clone()).is_ok_and(|g| g.consistency_failure().is_none())
}
