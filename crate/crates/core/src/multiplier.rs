//! Nonabelian exterior square, Schur multiplier `M(G)`, the commuting
//! part `M0(G)` and `B0(G) = M(G)/M0(G)`.

use std::collections::HashSet;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pcgroup::{self, BicyclicMode, Element, Exps, Homomorphism, PcGroup, PcPresentation, Subgroup};
use crate::pquotient::{self, word_comm, word_concat, word_conj, word_inverse, Definition, FpPresentation, FpWord, PcQuotient};

/// Relators of `tau(G)` on `x_1..x_n` (indices `0..n`) and `y_1..y_n`
/// (indices `n..2n`).
pub fn tau_presentation(g: &PcPresentation) -> FpPresentation {
    let n = g.num_gens();
    let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    names.extend((1..=n).map(|i| format!("y{i}")));
    let mut f = FpPresentation::new(names);
    let base = FpPresentation::from_pc(g);
    for r in base.relators() {
        f.add_relator(r.clone()).expect("x relator");
        let shifted: FpWord = r.iter().map(|&(k, e)| (k + n, e)).collect();
        f.add_relator(shifted).expect("y relator");
    }
    let x = |i: usize| -> FpWord { vec![(i, 1)] };
    let y = |i: usize| -> FpWord { vec![(i + n, 1)] };
    for i in 0..n {
        for j in 0..n {
            let c = word_comm(&x(i), &y(j));
            for k in 0..n {
                for eps in [1i64, -1] {
                    let xk = vec![(k, eps)];
                    let yk = vec![(k + n, eps)];
                    let rhs = word_comm(&word_conj(&x(i), &xk), &word_conj(&y(j), &yk));
                    for z in [&xk, &yk] {
                        let lhs = word_conj(&c, z);
                        f.add_relator(word_concat(&[&lhs, &word_inverse(&rhs)])).expect("crossed relator");
                    }
                }
            }
        }
    }
    for i in 0..n {
        f.add_relator(word_comm(&x(i), &y(i))).expect("diagonal relator");
        for j in i + 1..n {
            let r = word_concat(&[&word_comm(&x(i), &y(j)), &word_comm(&x(j), &y(i))]);
            f.add_relator(r).expect("diagonal relator");
        }
    }
    f
}

/// Default class cap for the `tau` quotient.
pub fn default_class_cap(g: &PcGroup) -> usize {
    2 * pcgroup::p_class(g) + 2
}

/// The `tau(G)` quotient with the wedge subgroup and the commutator map.
#[derive(Clone, Debug)]
pub struct ExteriorSquareData {
    n: usize,
    tau: PcQuotient,
    /// Canonical generating sequence of `W` in `tau`.
    wedge_gens: Vec<Exps>,
    /// Canonical generating sequence of `M = ker kappa` in `tau`.
    kernel_gens: Vec<Exps>,
    /// Images in `G` of the pc generators of `tau`.
    kappa_images: Vec<Exps>,
    derived_order: u64,
}

impl ExteriorSquareData {
    pub fn tau(&self) -> &PcQuotient {
        &self.tau
    }

    pub fn tau_group(&self) -> &PcGroup {
        self.tau.group()
    }

    /// `W = G ∧ G` inside `tau`.
    pub fn wedge_subgroup(&self) -> Subgroup<'_> {
        Subgroup::closure(self.tau.group(), &self.wedge_gens)
    }

    /// `M(G) = ker kappa` inside `tau`.
    pub fn multiplier_subgroup(&self) -> Subgroup<'_> {
        Subgroup::closure(self.tau.group(), &self.kernel_gens)
    }

    /// The map `tau -> G` sending both copies to `G`; restricted to `W` it
    /// is the commutator map kappa.
    pub fn kappa<'a>(&'a self, g: &'a PcGroup) -> Result<Homomorphism<'a>> {
        Homomorphism::new(self.tau.group(), g, self.kappa_images.clone())
    }

    pub fn wedge_order(&self) -> u64 {
        u64::from(self.tau.group().p()).pow(self.wedge_gens.len() as u32)
    }

    pub fn multiplier_order(&self) -> u64 {
        u64::from(self.tau.group().p()).pow(self.kernel_gens.len() as u32)
    }

    pub fn derived_order(&self) -> u64 {
        self.derived_order
    }

    /// Image of `x` under `G -> tau`, `g_i -> x_i`.
    pub fn lift_x(&self, x: &[u8]) -> Exps {
        self.lift(x, 0)
    }

    /// Image of `x` under `G -> tau`, `g_i -> y_i`.
    pub fn lift_y(&self, x: &[u8]) -> Exps {
        self.lift(x, self.n)
    }

    fn lift(&self, x: &[u8], offset: usize) -> Exps {
        let w: FpWord = x
            .iter()
            .enumerate()
            .filter(|(_, e)| **e != 0)
            .map(|(i, &e)| (i + offset, i64::from(e)))
            .collect();
        self.tau.eval_exps(&w).expect("generator in range")
    }
}

/// Computes `tau(G)`, `W` and `M(G)`, with the order guards.
pub fn exterior_square(g: &PcGroup, class_cap: Option<usize>) -> Result<ExteriorSquareData> {
    let n = g.num_gens();
    let cap = class_cap.unwrap_or_else(|| default_class_cap(g));
    let f = tau_presentation(g.presentation());
    let tau = pquotient::p_quotient(&f, g.p(), cap)?;
    if !tau.is_stable() {
        return Err(Error::ClassCap(cap));
    }
    let t = tau.group();
    let mut wedge_raw = Vec::new();
    for i in 0..n {
        for j in 0..n {
            wedge_raw.push(tau.eval_exps(&word_comm(&[(i, 1)], &[(j + n, 1)]))?);
        }
    }
    let w = Subgroup::normal_closure(t, &wedge_raw);

    // kappa on pc generators of tau, through their definitions
    let mut kappa_images: Vec<Exps> = Vec::with_capacity(t.num_gens());
    for (k, def) in tau.definitions().iter().enumerate() {
        // each defining relation reads `lhs = rest * g_k` with `rest` on earlier generators
        let (lhs, rest) = match *def {
            Definition::FpGen(a) => (g.gen_exps(a % n), letters(&tau.images()[a][..k])),
            Definition::Power(i) => (
                g.pow(&kappa_images[i], i64::from(g.p())),
                word_before(k, t.presentation().power(i)),
            ),
            Definition::Comm(j, i) => (
                g.comm(&kappa_images[j], &kappa_images[i]),
                word_before(k, t.presentation().comm(j, i)),
            ),
        };
        let img = g.mul(&g.inv(&apply_partial(g, &kappa_images, &rest)), &lhs);
        kappa_images.push(img);
    }
    let kappa = Homomorphism::new(t, g, kappa_images.clone())
        .map_err(|e| Error::Guard(format!("commutator map is not a homomorphism: {e}")))?;
    let m = kappa.kernel_on(&w)?;

    let derived = pcgroup::derived_subgroup(g);
    let order_g = g.order();
    if t.order() != order_g * order_g * w.order() {
        return Err(Error::Guard(format!(
            "|tau| = {} but |G|^2 |W| = {}",
            t.order(),
            order_g * order_g * w.order()
        )));
    }
    if w.order() != m.order() * derived.order() {
        return Err(Error::Guard(format!(
            "|W| = {} but |M| |G'| = {}",
            w.order(),
            m.order() * derived.order()
        )));
    }
    let image_w: Vec<Exps> = w.gens().iter().map(|x| kappa.apply(x)).collect();
    if Subgroup::closure(g, &image_w) != derived {
        return Err(Error::Guard("kappa(W) differs from G'".into()));
    }
    Ok(ExteriorSquareData {
        n,
        wedge_gens: w.gens().to_vec(),
        kernel_gens: m.gens().to_vec(),
        kappa_images,
        derived_order: derived.order(),
        tau,
    })
}

fn apply_partial(g: &PcGroup, images: &[Exps], word: &[(usize, i64)]) -> Exps {
    let mut x = g.identity_exps();
    for &(k, e) in word {
        let y = g.pow(&images[k], e);
        g.mul_exps(&mut x, &y);
    }
    x
}

fn word_before(k: usize, w: &[(usize, u32)]) -> Vec<(usize, i64)> {
    debug_assert!(w.iter().any(|&(g, e)| g == k && e == 1));
    w.iter().filter(|&&(g, _)| g < k).map(|&(g, e)| (g, i64::from(e))).collect()
}

/// Abelian invariants of `M(G)`.
pub fn schur_multiplier(g: &PcGroup, class_cap: Option<usize>) -> Result<Vec<u64>> {
    let data = exterior_square(g, class_cap)?;
    data.multiplier_subgroup().abelian_invariants()
}

/// `[x, y^phi]` in `tau` for commuting `x, y`; lies in `M(G)`.
pub fn commuting_wedge<'d>(data: &'d ExteriorSquareData, x: &Element<'_>, y: &Element<'_>) -> Result<Element<'d>> {
    let g = x.group();
    if !std::ptr::eq(g, y.group()) {
        return Err(Error::ParentMismatch);
    }
    if !g.commute(x.exps(), y.exps()) {
        return Err(Error::NotCommuting);
    }
    let t = data.tau_group();
    let w = t.comm(&data.lift_x(x.exps()), &data.lift_y(y.exps()));
    Ok(Element::from_word(t, &letters(&w)))
}

fn letters(x: &[u8]) -> Vec<(usize, i64)> {
    x.iter()
        .enumerate()
        .filter(|(_, e)| **e != 0)
        .map(|(i, &e)| (i, i64::from(e)))
        .collect()
}

/// How commuting pairs are enumerated for `M0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PairMode {
    /// Every ordered commuting pair.
    #[default]
    Full,
    /// One generating pair per bicyclic subgroup.
    Bicyclic,
}

impl fmt::Display for PairMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairMode::Full => "full",
            PairMode::Bicyclic => "bicyclic",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct B0Options {
    pub class_cap: Option<usize>,
    pub pairs: PairMode,
}

/// Which computation produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Tensor,
    Oracle,
    Criterion,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Tensor => "tensor",
            Method::Oracle => "oracle",
            Method::Criterion => "criterion",
        })
    }
}

/// Result of a `B0` computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct B0Report {
    pub name: String,
    pub p: u32,
    /// `|G| = p^n`.
    pub n: u32,
    pub method: Method,
    /// Abelian invariants of `B0(G)`; empty iff `B0(G) = 0`.
    pub invariants: Vec<u64>,
    pub multiplier_invariants: Vec<u64>,
    pub m_order: u64,
    pub m0_order: u64,
    pub certificates: Vec<String>,
    pub elapsed_ms: u128,
}

impl B0Report {
    pub fn is_nonzero(&self) -> bool {
        !self.invariants.is_empty()
    }
}

fn group_name(g: &PcGroup) -> String {
    g.name().unwrap_or("G").to_string()
}

/// `B0(G) = M(G)/M0(G)` from the exterior square.
pub fn b0_tensor(g: &PcGroup, opts: B0Options) -> Result<B0Report> {
    let start = Instant::now();
    let data = exterior_square(g, opts.class_cap)?;
    let t = data.tau_group();
    let m = data.multiplier_subgroup();
    let wedges: HashSet<Exps> = match opts.pairs {
        PairMode::Full => {
            let elems: Vec<Exps> = g.all_exps().collect();
            let lx: Vec<Exps> = elems.par_iter().map(|x| data.lift_x(x)).collect();
            let ly: Vec<Exps> = elems.par_iter().map(|x| data.lift_y(x)).collect();
            (0..elems.len())
                .into_par_iter()
                .fold(HashSet::new, |mut acc, a| {
                    for b in 0..elems.len() {
                        if g.commute(&elems[a], &elems[b]) {
                            acc.insert(t.comm(&lx[a], &ly[b]));
                        }
                    }
                    acc
                })
                .reduce(HashSet::new, |mut a, b| {
                    a.extend(b);
                    a
                })
        }
        PairMode::Bicyclic => pcgroup::enumerate_bicyclic_subgroups(g, BicyclicMode::CyclicReps)
            .into_par_iter()
            .map(|(_, (x, y))| t.comm(&data.lift_x(&x), &data.lift_y(&y)))
            .collect(),
    };
    let mut wedges: Vec<Exps> = wedges.into_iter().collect();
    wedges.sort();
    if let Some(bad) = wedges.iter().find(|w| !m.contains_exps(w)) {
        return Err(Error::Guard(format!("commuting wedge {bad:?} outside M(G)")));
    }
    let m0 = Subgroup::closure(t, &wedges);
    let invariants = m.quotient_invariants(&m0)?;
    Ok(B0Report {
        name: group_name(g),
        p: g.p(),
        n: g.num_gens() as u32,
        method: Method::Tensor,
        invariants,
        multiplier_invariants: m.abelian_invariants()?,
        m_order: m.order(),
        m0_order: m0.order(),
        certificates: vec![format!(
            "|tau| = {}, |W| = {}, |M| = {}, |M0| = {}, |G'| = {}, pairs = {}",
            t.order(),
            data.wedge_order(),
            m.order(),
            m0.order(),
            data.derived_order(),
            opts.pairs
        )],
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// A group of order `p^5` to verify, optionally tagged with its family
/// membership (`Some(true)` for Φ10).
#[derive(Clone, Debug)]
pub struct CorpusGroup {
    pub name: String,
    pub presentation: PcPresentation,
    pub phi10: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct VerificationRow {
    pub name: String,
    pub phi10: bool,
    pub report: B0Report,
}

impl VerificationRow {
    pub fn agrees(&self) -> bool {
        self.report.is_nonzero() == self.phi10
    }
}

/// Per-group results of checking "`B0 != 0` exactly on Φ10".
#[derive(Clone, Debug)]
pub struct Verification {
    pub p: u32,
    pub rows: Vec<VerificationRow>,
}

impl Verification {
    pub fn mismatches(&self) -> Vec<&VerificationRow> {
        self.rows.iter().filter(|r| !r.agrees()).collect()
    }

    pub fn holds(&self) -> bool {
        self.rows.iter().all(VerificationRow::agrees)
    }

    pub fn nonzero_count(&self) -> usize {
        self.rows.iter().filter(|r| r.report.is_nonzero()).count()
    }
}

/// Φ10 membership by isoclinism with the built-in `Φ10(1^5)`.
pub fn is_phi10(g: &PcGroup) -> Result<bool> {
    let reference = PcGroup::new(crate::catalog::build_phi10(g.p(), "(1^5)")?)?;
    if crate::isoclinism::family_fingerprint(g).key() != crate::isoclinism::family_fingerprint(&reference).key() {
        return Ok(false);
    }
    Ok(crate::isoclinism::is_isoclinic(g, &reference, None)?.is_isoclinic())
}

/// Runs `compute` on every corpus group and compares against Φ10
/// membership (from the tag, else by isoclinism).
pub fn verify_theorem_with<F>(p: u32, corpus: &[CorpusGroup], compute: F) -> Result<Verification>
where
    F: Fn(&PcGroup) -> Result<B0Report> + Sync,
{
    if p == 2 || !crate::catalog::is_prime(p) {
        return Err(Error::UnsupportedPrime(p));
    }
    let rows = corpus
        .par_iter()
        .map(|c| {
            let g = PcGroup::new(c.presentation.clone())?;
            if g.p() != p || g.order() != u64::from(p).pow(5) {
                return Err(Error::Malformed(format!("{}: not a group of order {p}^5", c.name)));
            }
            let phi10 = match c.phi10 {
                Some(t) => t,
                None => is_phi10(&g)?,
            };
            let mut report = compute(&g)?;
            report.name = c.name.clone();
            Ok(VerificationRow {
                name: c.name.clone(),
                phi10,
                report,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Verification { p, rows })
}

/// [`verify_theorem_with`] using [`b0_tensor`].
pub fn verify_theorem(p: u32, corpus: &[CorpusGroup], opts: B0Options) -> Result<Verification> {
    verify_theorem_with(p, corpus, |g| b0_tensor(g, opts))
}

/// The built-in groups at `p`, tagged by family.
pub fn catalog_corpus(p: u32) -> Result<Vec<CorpusGroup>> {
    Ok(crate::catalog::catalog(p)?
        .into_iter()
        .map(|e| CorpusGroup {
            name: e.id.name(),
            phi10: Some(e.id.family == 10),
            presentation: e.presentation,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn multipliers_of_small_groups() {
        assert_eq!(schur_multiplier(&group(3, 1, &[], &[]), None).unwrap(), Vec::<u64>::new());
        assert_eq!(schur_multiplier(&group(3, 2, &[], &[]), None).unwrap(), vec![3]);
        assert_eq!(schur_multiplier(&group(3, 3, &[], &[]), None).unwrap(), vec![3, 3, 3]);
        assert_eq!(schur_multiplier(&group(3, 3, &[(0, 1)], &[]), None).unwrap(), vec![3]);
        // Heisenberg and the exponent-9 group of order 27
        assert_eq!(schur_multiplier(&group(3, 3, &[], &[(1, 0, 2)]), None).unwrap(), vec![3, 3]);
        assert_eq!(schur_multiplier(&group(3, 3, &[(0, 2)], &[(1, 0, 2)]), None).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn wedge_of_commuting_pair_is_in_m() {
        let g = group(3, 2, &[], &[]);
        let data = exterior_square(&g, None).unwrap();
        let a = Element::generator(&g, 0);
        let b = Element::generator(&g, 1);
        let w = commuting_wedge(&data, &a, &b).unwrap();
        assert!(!w.is_identity());
        assert!(data.multiplier_subgroup().contains(&w));
        assert!(commuting_wedge(&data, &a, &a).unwrap().is_identity());
    }

    #[test]
    fn untagged_membership_uses_isoclinism() {
        let corpus: Vec<_> = catalog_corpus(3)
            .unwrap()
            .into_iter()
            .filter(|c| c.name.starts_with("Phi10") || c.name.starts_with("Phi7"))
            .map(|c| CorpusGroup { phi10: None, ..c })
            .collect();
        let v = verify_theorem(3, &corpus, B0Options::default()).unwrap();
        assert!(v.holds());
        assert_eq!(v.nonzero_count(), 3);
        assert!(matches!(verify_theorem(2, &[], B0Options::default()), Err(Error::UnsupportedPrime(2))));
    }
}
