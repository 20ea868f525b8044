use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;

use crate::error::{Error, Result};

use super::collector::{Exps, PcGroup};

/// A group element in normal form, tied to its parent group.
#[derive(Clone)]
pub struct Element<'g> {
    group: &'g PcGroup,
    exps: Exps,
}

impl<'g> Element<'g> {
    pub fn identity(group: &'g PcGroup) -> Self {
        Self {
            group,
            exps: group.identity_exps(),
        }
    }

    pub fn generator(group: &'g PcGroup, i: usize) -> Self {
        Self {
            group,
            exps: group.gen_exps(i),
        }
    }

    /// Builds an element from an exponent vector, reducing entries mod p.
    pub fn from_exps(group: &'g PcGroup, exps: &[u32]) -> Result<Self> {
        if exps.len() != group.num_gens() {
            return Err(Error::Malformed(format!(
                "exponent vector of length {} for a group on {} generators",
                exps.len(),
                group.num_gens()
            )));
        }
        let p = group.p();
        Ok(Self {
            group,
            exps: exps.iter().map(|&e| (e % p) as u8).collect(),
        })
    }

    pub(crate) fn from_raw(group: &'g PcGroup, exps: Exps) -> Self {
        debug_assert_eq!(exps.len(), group.num_gens());
        Self { group, exps }
    }

    /// The product `g_1^e_1 ... g_n^e_n` for arbitrary integer exponents,
    /// evaluated by collection.
    pub fn from_word(group: &'g PcGroup, letters: &[(usize, i64)]) -> Self {
        let mut x = group.identity_exps();
        group.mul_letters(&mut x, letters);
        Self { group, exps: x }
    }

    pub fn group(&self) -> &'g PcGroup {
        self.group
    }

    pub fn exps(&self) -> &[u8] {
        &self.exps
    }

    pub fn into_exps(self) -> Exps {
        self.exps
    }

    pub fn is_identity(&self) -> bool {
        PcGroup::is_identity(&self.exps)
    }

    fn check(&self, other: &Element<'_>) -> Result<()> {
        if std::ptr::eq(self.group, other.group) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn multiply(&self, other: &Element<'_>) -> Result<Element<'g>> {
        self.check(other)?;
        Ok(Self::from_raw(self.group, self.group.mul(&self.exps, &other.exps)))
    }

    pub fn inverse(&self) -> Element<'g> {
        Self::from_raw(self.group, self.group.inv(&self.exps))
    }

    pub fn power(&self, k: i64) -> Element<'g> {
        Self::from_raw(self.group, self.group.pow(&self.exps, k))
    }

    /// `[self, other] = self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Element<'_>) -> Result<Element<'g>> {
        self.check(other)?;
        Ok(Self::from_raw(self.group, self.group.comm(&self.exps, &other.exps)))
    }

    /// `other^-1 self other`.
    pub fn conjugate_by(&self, other: &Element<'_>) -> Result<Element<'g>> {
        self.check(other)?;
        Ok(Self::from_raw(self.group, self.group.conjugate(&self.exps, &other.exps)))
    }

    pub fn order(&self) -> u64 {
        order_of_exps(self.group, &self.exps)
    }
}

pub(crate) fn order_of_exps(g: &PcGroup, x: &[u8]) -> u64 {
    let p = u64::from(g.p());
    let mut y = x.to_vec();
    let mut ord = 1;
    while !PcGroup::is_identity(&y) {
        y = g.pow(&y, p as i64);
        ord *= p;
    }
    ord
}

impl PartialEq for Element<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.group, other.group) && self.exps == other.exps
    }
}

impl Eq for Element<'_> {}

impl Hash for Element<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl fmt::Debug for Element<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Element<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("g{}", i + 1)
                } else {
                    format!("g{}^{}", i + 1, e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl<'g> Mul for &Element<'g> {
    type Output = Element<'g>;

    /// Panics if the operands live in different groups.
    fn mul(self, rhs: Self) -> Element<'g> {
        self.multiply(rhs).expect("parent mismatch in element product")
    }
}
