use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::collector::{Exps, PcGroup};
use super::subgroup::{leading, Subgroup};

/// A homomorphism between pc groups, given by the images of the source
/// pc generators.
#[derive(Clone, Debug)]
pub struct Homomorphism<'a> {
    source: &'a PcGroup,
    target: &'a PcGroup,
    images: Vec<Exps>,
}

impl<'a> Homomorphism<'a> {
    /// Builds and validates.
    pub fn new(source: &'a PcGroup, target: &'a PcGroup, images: Vec<Exps>) -> Result<Self> {
        let h = Self::new_unchecked(source, target, images)?;
        h.validate()?;
        Ok(h)
    }

    pub fn new_unchecked(source: &'a PcGroup, target: &'a PcGroup, images: Vec<Exps>) -> Result<Self> {
        if images.len() != source.num_gens() || images.iter().any(|x| x.len() != target.num_gens()) {
            return Err(Error::Malformed("image list does not match the groups".into()));
        }
        Ok(Self {
            source,
            target,
            images,
        })
    }

    pub fn source(&self) -> &'a PcGroup {
        self.source
    }

    pub fn target(&self) -> &'a PcGroup {
        self.target
    }

    pub fn images(&self) -> &[Exps] {
        &self.images
    }

    pub fn apply(&self, x: &[u8]) -> Exps {
        let t = self.target;
        let mut y = t.identity_exps();
        for (i, &e) in x.iter().enumerate() {
            if e != 0 {
                let z = t.pow(&self.images[i], i64::from(e));
                t.mul_exps(&mut y, &z);
            }
        }
        y
    }

    /// Checks that every source relation holds for the images.
    pub fn validate(&self) -> Result<()> {
        let s = self.source;
        let t = self.target;
        let p = i64::from(s.p());
        if s.p() != t.p() {
            return Err(Error::Malformed("source and target primes differ".into()));
        }
        for i in 0..s.num_gens() {
            let lhs = t.pow(&self.images[i], p);
            let rhs = self.apply(&s.pow_word(i));
            if lhs != rhs {
                return Err(Error::Guard(format!("power relation of g{} not preserved", i + 1)));
            }
            for j in i + 1..s.num_gens() {
                let lhs = t.comm(&self.images[j], &self.images[i]);
                let rhs = self.apply(&s.comm_word(j, i));
                if lhs != rhs {
                    return Err(Error::Guard(format!(
                        "commutator relation of g{}, g{} not preserved",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn image(&self) -> Subgroup<'a> {
        Subgroup::closure(self.target, &self.images)
    }

    pub fn kernel(&self) -> Result<Subgroup<'a>> {
        self.kernel_on(&Subgroup::whole(self.source))
    }

    /// Kernel of the restriction to `sub`. Guarded by `|ker| |im| = |sub|`.
    pub fn kernel_on(&self, sub: &Subgroup<'_>) -> Result<Subgroup<'a>> {
        if !std::ptr::eq(sub.group(), self.source) {
            return Err(Error::ParentMismatch);
        }
        let (image_log, kernel_gens) = self.image_with_kernel_gens(sub.gens());
        let mut ker = Subgroup::closure(self.source, &kernel_gens);
        // normal closure inside sub, in case sifting missed conjugates
        while ker.log_order() + image_log < sub.log_order() {
            let mut gens = ker.gens().to_vec();
            for k in ker.gens() {
                for s in sub.gens() {
                    gens.push(self.source.conjugate(k, s));
                }
            }
            let next = Subgroup::closure(self.source, &gens);
            if next.log_order() == ker.log_order() {
                break;
            }
            ker = next;
        }
        if ker.log_order() + image_log != sub.log_order() {
            return Err(Error::Guard(format!(
                "kernel order p^{} and image order p^{} do not multiply to p^{}",
                ker.log_order(),
                image_log,
                sub.log_order()
            )));
        }
        Ok(ker)
    }

    /// Builds an induced sequence of the image while tracking preimages;
    /// elements whose image sifts to the identity leave a kernel element.
    fn image_with_kernel_gens(&self, gens: &[Exps]) -> (u32, Vec<Exps>) {
        let s = self.source;
        let t = self.target;
        let p = t.p();
        let mut table: BTreeMap<usize, (Exps, Exps)> = BTreeMap::new();
        let mut kernel = Vec::new();
        let mut queue: Vec<(Exps, Exps)> = gens.iter().map(|x| (self.apply(x), x.clone())).collect();
        while let Some((mut y, mut x)) = queue.pop() {
            while let Some(d) = leading(&y) {
                let Some((ty, tx)) = table.get(&d) else { break };
                let e = -i64::from(y[d]);
                y = t.mul(&t.pow(ty, e), &y);
                x = s.mul(&s.pow(tx, e), &x);
            }
            let Some(d) = leading(&y) else {
                if !PcGroup::is_identity(&x) {
                    kernel.push(x);
                }
                continue;
            };
            let e = u32::from(y[d]);
            let k = (1..p).find(|&b| (e * b) % p == 1).expect("unit") as i64;
            let y = t.pow(&y, k);
            let x = s.pow(&x, k);
            queue.push((t.pow(&y, i64::from(p)), s.pow(&x, i64::from(p))));
            for (ty, tx) in table.values() {
                queue.push((t.comm(&y, ty), s.comm(&x, tx)));
            }
            table.insert(d, (y, x));
        }
        (table.len() as u32, kernel)
    }
}
