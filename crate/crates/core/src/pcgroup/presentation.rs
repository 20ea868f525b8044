use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A word in normal form: `(generator, exponent)` pairs with strictly
/// increasing generators and exponents in `1..p`.
pub type Word = Vec<(usize, u32)>;

/// Power-commutator presentation of a finite p-group with all relative
/// orders equal to `p`.
///
/// `power(i)` is the word equal to `g_i^p`, `comm(j, i)` (for `j > i`) the
/// word equal to `[g_j, g_i] = g_j^-1 g_i^-1 g_j g_i`. Omitted relations are
/// trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    p: u32,
    n: usize,
    power: Vec<Word>,
    comm: BTreeMap<(usize, usize), Word>,
    name: Option<String>,
    weights: Option<Vec<u32>>,
}

impl PcPresentation {
    /// Elementary abelian presentation on `n` generators.
    pub fn new(p: u32, n: usize) -> Self {
        Self {
            p,
            n,
            power: vec![Vec::new(); n],
            comm: BTreeMap::new(),
            name: None,
            weights: None,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn num_gens(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = Some(name.into());
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn set_weights(&mut self, w: Vec<u32>) {
        assert_eq!(w.len(), self.n);
        self.weights = Some(w);
    }

    pub fn power(&self, i: usize) -> &[(usize, u32)] {
        &self.power[i]
    }

    /// `[g_j, g_i]` for `j > i`.
    pub fn comm(&self, j: usize, i: usize) -> &[(usize, u32)] {
        self.comm.get(&(j, i)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn nontrivial_comms(&self) -> impl Iterator<Item = (usize, usize, &Word)> {
        self.comm.iter().map(|(&(j, i), w)| (j, i, w))
    }

    /// Sets `g_i^p = word`. Exponents are reduced mod p (negative allowed).
    pub fn set_power(&mut self, i: usize, word: &[(usize, i64)]) -> Result<()> {
        if i >= self.n {
            return Err(Error::Malformed(format!("power relation for generator {i} out of range")));
        }
        let w = self.normalize(word, i)?;
        self.power[i] = w;
        Ok(())
    }

    /// Sets `[g_j, g_i] = word` for `j > i`.
    pub fn set_comm(&mut self, j: usize, i: usize, word: &[(usize, i64)]) -> Result<()> {
        if j >= self.n || i >= j {
            return Err(Error::Malformed(format!("commutator relation ({j},{i}) needs {} > j > i", self.n)));
        }
        let w = self.normalize(word, j)?;
        if w.is_empty() {
            self.comm.remove(&(j, i));
        } else {
            self.comm.insert((j, i), w);
        }
        Ok(())
    }

    fn normalize(&self, word: &[(usize, i64)], above: usize) -> Result<Word> {
        let mut out = Vec::with_capacity(word.len());
        let mut last = None;
        for &(g, e) in word {
            if g >= self.n {
                return Err(Error::Malformed(format!("generator {g} out of range")));
            }
            if g <= above {
                return Err(Error::Malformed(format!(
                    "tail generator {g} must be greater than {above}"
                )));
            }
            if last.is_some_and(|l| g <= l) {
                return Err(Error::Malformed("tail generators must strictly increase".into()));
            }
            last = Some(g);
            let e = e.rem_euclid(i64::from(self.p)) as u32;
            if e != 0 {
                out.push((g, e));
            }
        }
        Ok(out)
    }

    /// Canonical pcp text (comments stripped, relations in index order);
    /// generators are printed 1-based.
    pub fn to_pcp(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p {}", self.p);
        let _ = writeln!(s, "gens {}", self.n);
        if let Some(name) = &self.name {
            let _ = writeln!(s, "name {name}");
        }
        for (i, w) in self.power.iter().enumerate() {
            if !w.is_empty() {
                let _ = writeln!(s, "pow {} : {}", i + 1, word_text(w));
            }
        }
        for (&(j, i), w) in &self.comm {
            let _ = writeln!(s, "comm {} {} : {}", j + 1, i + 1, word_text(w));
        }
        s
    }

    /// The relation data only, without the name (for hashing).
    pub fn relations_text(&self) -> String {
        let mut copy = self.clone();
        copy.name = None;
        copy.to_pcp()
    }
}

fn word_text(w: &[(usize, u32)]) -> String {
    w.iter()
        .map(|(g, e)| format!("{}^{}", g + 1, e))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_tails_below_the_relation() {
        let mut p = PcPresentation::new(3, 3);
        assert!(p.set_comm(1, 0, &[(1, 1)]).is_err());
        assert!(p.set_power(2, &[(2, 1)]).is_err());
        assert!(p.set_comm(2, 0, &[(5, 1)]).is_err());
        assert!(p.set_comm(0, 1, &[(2, 1)]).is_err());
    }

    #[test]
    fn negative_exponents_reduce_mod_p() {
        let mut p = PcPresentation::new(5, 3);
        p.set_power(0, &[(1, -1), (2, 5)]).unwrap();
        assert_eq!(p.power(0), &[(1, 4)]);
    }
}
