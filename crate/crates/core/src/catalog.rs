//! Built-in presentations of groups of order p^5, family counts, GAP id
//! tables and the pcp text format.

use std::fmt;

use crate::error::{Error, Result};
use crate::pcgroup::{PcGroup, PcPresentation};

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Inverse of `a` modulo the prime `p`.
pub fn inv_mod(a: i64, p: u32) -> u32 {
    let a = a.rem_euclid(i64::from(p)) as u64;
    pow_mod(a, u64::from(p) - 2, u64::from(p)) as u32
}

/// Number-theoretic constants attached to an odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NumberTheoryContext {
    pub p: u32,
    /// Smallest positive primitive root.
    pub g: u32,
    /// Smallest positive quadratic non-residue.
    pub nu: u32,
    /// Same as `g`; kept separately to match the two naming conventions.
    pub alpha: u32,
}

impl NumberTheoryContext {
    pub fn new(p: u32) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::UnsupportedPrime(p));
        }
        let g = smallest_primitive_root(p);
        let nu = smallest_nonresidue(p);
        Ok(Self { p, g, nu, alpha: g })
    }
}

pub fn smallest_primitive_root(p: u32) -> u32 {
    let m = u64::from(p);
    let mut factors = Vec::new();
    let mut r = p - 1;
    let mut d = 2;
    while d * d <= r {
        if r % d == 0 {
            factors.push(d);
            while r % d == 0 {
                r /= d;
            }
        }
        d += 1;
    }
    if r > 1 {
        factors.push(r);
    }
    (1..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(u64::from(g), u64::from((p - 1) / q), m) != 1))
        .expect("primes have primitive roots")
}

pub fn smallest_nonresidue(p: u32) -> u32 {
    let m = u64::from(p);
    (2..p)
        .find(|&a| pow_mod(u64::from(a), u64::from((p - 1) / 2), m) == m - 1)
        .expect("odd primes have non-residues")
}

/// A catalog group: family index, James variant label and prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyId {
    pub family: u8,
    pub variant: String,
    pub p: u32,
}

impl FamilyId {
    pub fn name(&self) -> String {
        format!("Phi{}{}", self.family, self.variant)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (p={})", self.name(), self.p)
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: FamilyId,
    pub gap_id: Option<u32>,
    pub presentation: PcPresentation,
}

/// Builder shorthand: 1-based generator indices, integer exponents.
struct Builder {
    pres: PcPresentation,
}

impl Builder {
    fn new(p: u32, n: usize) -> Self {
        Self {
            pres: PcPresentation::new(p, n),
        }
    }

    fn pow(&mut self, i: usize, word: &[(usize, i64)]) -> &mut Self {
        let w: Vec<_> = word.iter().map(|&(g, e)| (g - 1, e)).collect();
        self.pres.set_power(i - 1, &w).expect("catalog relation");
        self
    }

    fn comm(&mut self, j: usize, i: usize, word: &[(usize, i64)]) -> &mut Self {
        let w: Vec<_> = word.iter().map(|&(g, e)| (g - 1, e)).collect();
        self.pres.set_comm(j - 1, i - 1, &w).expect("catalog relation");
        self
    }

    fn finish(&mut self, name: String) -> PcPresentation {
        let mut pres = self.pres.clone();
        pres.set_name(name);
        pres
    }
}

fn normalize_label(s: &str) -> String {
    s.chars()
        .filter(|c| !matches!(c, '(' | ')' | ' '))
        .collect::<String>()
        .replace('⁵', "^5")
        .replace('ν', "nu")
        .to_lowercase()
}

fn invalid(variant: &str, p: u32) -> Error {
    Error::InvalidVariant {
        variant: variant.to_string(),
        p,
    }
}

/// Variant labels of a family at `p`, in catalog order.
pub fn variants(family: u8, p: u32) -> Result<Vec<String>> {
    NumberTheoryContext::new(p)?;
    let v = match family {
        1 => PARTITIONS.iter().map(|part| partition_label(part)).collect(),
        5 => vec!["(2111)".into(), "(1^5)".into()],
        6 => {
            let mut v = vec!["(221)a".to_string()];
            for r in 1..=(p - 1) / 2 {
                v.push(format!("(221)b_{r}"));
            }
            v.push("(221)c_1".into());
            v.push("(221)c_nu".into());
            v.push("(221)d_0".into());
            for r in 1..=(p - 1) / 2 {
                v.push(format!("(221)d_{r}"));
            }
            if p >= 5 {
                v.push("(2111)a".into());
                v.push("(2111)b_1".into());
                v.push("(2111)b_nu".into());
            }
            v.push("(1^5)".into());
            v
        }
        7 => vec![
            "(2111)a".into(),
            "(2111)b_1".into(),
            "(2111)b_nu".into(),
            "(2111)c".into(),
            "(1^5)".into(),
        ],
        10 => {
            if p == 3 {
                vec!["(1^5)".into(), "(2111)a_0".into(), "(2111)a_1".into()]
            } else {
                let mut v = vec!["(1^5)".to_string()];
                for r in 0..gcd(3, p - 1) {
                    v.push(format!("(2111)a_{r}"));
                }
                for r in 0..gcd(4, p - 1) {
                    v.push(format!("(2111)b_{r}"));
                }
                v
            }
        }
        _ => return Err(invalid(&format!("family {family}"), p)),
    };
    Ok(v)
}

fn find_variant(family: u8, p: u32, variant: &str) -> Result<String> {
    let want = normalize_label(variant);
    let list = variants(family, p)?;
    if let Some(v) = list.iter().find(|v| normalize_label(v) == want) {
        return Ok(v.clone());
    }
    // numeric nu, e.g. "(221)c_2" at p=3
    let ctx = NumberTheoryContext::new(p)?;
    let nu = format!("_{}", ctx.nu);
    if want.ends_with(&nu) {
        let alt = format!("{}_nu", &want[..want.len() - nu.len()]);
        if let Some(v) = list.iter().find(|v| normalize_label(v) == alt) {
            return Ok(v.clone());
        }
    }
    // GAP ids
    if let Ok(id) = want.parse::<u32>() {
        if let Some((v, _)) = gap_ids(family, p).into_iter().find(|&(_, g)| g == id) {
            return Ok(v.to_string());
        }
    }
    Err(invalid(variant, p))
}

fn suffix_r(label: &str) -> Option<u32> {
    label.rsplit('_').next().and_then(|s| s.parse().ok())
}

/// Family Φ10: `[f2,f1]=f3, [f3,f1]=f4, [f4,f1]=[f3,f2]=f5`.
pub fn build_phi10(p: u32, variant: &str) -> Result<PcPresentation> {
    let ctx = NumberTheoryContext::new(p)?;
    let label = find_variant(10, p, variant)?;
    let mut b = Builder::new(p, 5);
    b.comm(2, 1, &[(3, 1)])
        .comm(3, 1, &[(4, 1)])
        .comm(4, 1, &[(5, 1)])
        .comm(3, 2, &[(5, 1)]);
    if p == 3 {
        b.pow(2, &[(4, -1)]).pow(3, &[(5, -1)]);
        match label.as_str() {
            "(1^5)" => {}
            "(2111)a_0" => {
                b.pow(1, &[(5, 1)]);
            }
            "(2111)a_1" => {
                b.pow(1, &[(5, -1)]);
            }
            _ => unreachable!(),
        }
    } else if label != "(1^5)" {
        let r = suffix_r(&label).expect("indexed variant");
        let e = pow_mod(u64::from(ctx.alpha), u64::from(r), u64::from(p)) as i64;
        if label.starts_with("(2111)a") {
            b.pow(1, &[(5, e)]);
        } else {
            b.pow(2, &[(5, e)]);
        }
    }
    Ok(b.finish(FamilyId { family: 10, variant: label, p }.name()))
}

/// Family Φ6 on the pc sequence `f1, f2, f0, h1, h2` with
/// `[f1,f2]=f0, [f0,f1]=h1, [f0,f2]=h2`.
pub fn build_phi6(p: u32, variant: &str) -> Result<PcPresentation> {
    let ctx = NumberTheoryContext::new(p)?;
    let label = find_variant(6, p, variant)?;
    let (f1, f2, f0, h1, h2) = (1, 2, 3, 4, 5);
    let mut b = Builder::new(p, 5);
    b.comm(f2, f1, &[(f0, -1)]).comm(f0, f1, &[(h1, 1)]).comm(f0, f2, &[(h2, 1)]);
    let pm = u64::from(p);
    let r = suffix_r(&label);
    match label.as_str() {
        "(221)a" => {
            b.pow(f1, &[(h1, 1)]).pow(f2, &[(h2, 1)]);
        }
        l if l.starts_with("(221)b_") => {
            let k = pow_mod(u64::from(ctx.g), u64::from(r.unwrap()), pm) as i64;
            b.pow(f1, &[(h1, k)]).pow(f2, &[(h2, 1)]);
        }
        l if l.starts_with("(221)c_") => {
            let r = i64::from(if l.ends_with("nu") { ctx.nu } else { 1 });
            let e = (-r * i64::from(inv_mod(4, p))).rem_euclid(i64::from(p));
            b.pow(f1, &[(h2, e)]).pow(f2, &[(h1, r), (h2, r)]);
        }
        "(221)d_0" => {
            b.pow(f1, &[(h2, 1)]).pow(f2, &[(h1, i64::from(ctx.nu))]);
        }
        l if l.starts_with("(221)d_") => {
            let gr = pow_mod(u64::from(ctx.g), 2 * u64::from(r.unwrap()) + 1, pm) as i64;
            let k = ((gr - 1) * i64::from(inv_mod(4, p))).rem_euclid(i64::from(p));
            b.pow(f1, &[(h2, k)]).pow(f2, &[(h1, 1), (h2, 1)]);
        }
        "(2111)a" => {
            b.pow(f1, &[(h1, 1)]);
        }
        l if l.starts_with("(2111)b_") => {
            let r = i64::from(if l.ends_with("nu") { ctx.nu } else { 1 });
            b.pow(f2, &[(h1, r)]);
        }
        "(1^5)" => {}
        _ => unreachable!(),
    }
    let mut pres = b.finish(FamilyId { family: 6, variant: label, p }.name());
    pres.set_weights(vec![1, 1, 2, 3, 3]);
    Ok(pres)
}

/// Family Φ7. For `p >= 5` the pc sequence is `f0, f1, f4, f2, f3`; for
/// `p = 3` it is `f1, ..., f5` with the GAP-id relations.
pub fn build_phi7(p: u32, variant: &str) -> Result<PcPresentation> {
    let ctx = NumberTheoryContext::new(p)?;
    let label = find_variant(7, p, variant)?;
    let mut b = Builder::new(p, 5);
    if p == 3 {
        b.comm(2, 1, &[(4, 1)]).comm(3, 2, &[(5, 1)]).comm(4, 1, &[(5, 1)]);
        match label.as_str() {
            // GAP 56
            "(2111)b_1" => {}
            // GAP 57
            "(2111)b_nu" => {
                b.pow(2, &[(5, 1)]);
            }
            // GAP 58
            "(1^5)" => {
                b.pow(2, &[(5, 2)]);
            }
            // GAP 59
            "(2111)a" => {
                b.pow(1, &[(5, 1)]).pow(2, &[(5, -1)]);
            }
            // GAP 60
            "(2111)c" => {
                b.pow(3, &[(5, 1)]);
            }
            _ => unreachable!(),
        }
    } else {
        let (f0, f1, f4, f2, f3) = (1, 2, 3, 4, 5);
        b.comm(f1, f0, &[(f2, 1)]).comm(f2, f0, &[(f3, 1)]).comm(f4, f1, &[(f3, -1)]);
        match label.as_str() {
            "(2111)a" => {
                b.pow(f0, &[(f3, 1)]);
            }
            "(2111)b_1" => {
                b.pow(f1, &[(f3, 1)]);
            }
            "(2111)b_nu" => {
                b.pow(f1, &[(f3, i64::from(ctx.nu))]);
            }
            "(2111)c" => {
                b.pow(f4, &[(f3, 1)]);
            }
            "(1^5)" => {}
            _ => unreachable!(),
        }
    }
    Ok(b.finish(FamilyId { family: 7, variant: label, p }.name()))
}

/// Family Φ5 (extraspecial): `[f1,f2]=[f3,f4]=f5`.
pub fn build_phi5(p: u32, variant: &str) -> Result<PcPresentation> {
    NumberTheoryContext::new(p)?;
    let label = find_variant(5, p, variant)?;
    let mut b = Builder::new(p, 5);
    b.comm(2, 1, &[(5, -1)]).comm(4, 3, &[(5, -1)]);
    if label == "(2111)" {
        b.pow(1, &[(5, 1)]);
    }
    Ok(b.finish(FamilyId { family: 5, variant: label, p }.name()))
}

const PARTITIONS: [&[u32]; 7] = [&[5], &[4, 1], &[3, 2], &[3, 1, 1], &[2, 2, 1], &[2, 1, 1, 1], &[1, 1, 1, 1, 1]];

fn partition_label(part: &[u32]) -> String {
    let s: Vec<String> = part.iter().map(u32::to_string).collect();
    format!("({})", s.join(","))
}

/// Abelian group `C_{p^a1} x C_{p^a2} x ...` for a partition of 5.
pub fn build_abelian(partition: &[u32], p: u32) -> Result<PcPresentation> {
    if !is_prime(p) {
        return Err(Error::UnsupportedPrime(p));
    }
    if partition.iter().sum::<u32>() != 5 || partition.contains(&0) {
        return Err(invalid(&format!("{partition:?}"), p));
    }
    let mut part = partition.to_vec();
    part.sort_unstable_by(|a, b| b.cmp(a));
    let n: u32 = part.iter().sum();
    let mut b = Builder::new(p, n as usize);
    let mut start = 1;
    for &a in &part {
        for k in start..start + a as usize - 1 {
            b.pow(k, &[(k + 1, 1)]);
        }
        start += a as usize;
    }
    Ok(b.finish(
        FamilyId {
            family: 1,
            variant: partition_label(&part),
            p,
        }
        .name(),
    ))
}

/// Builds any catalog group from its family and variant label (or GAP id).
pub fn build(family: u8, p: u32, variant: &str) -> Result<PcPresentation> {
    match family {
        1 => {
            let parts: std::result::Result<Vec<u32>, _> = variant
                .trim_matches(|c| c == '(' || c == ')')
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect();
            build_abelian(&parts.map_err(|_| invalid(variant, p))?, p)
        }
        5 => build_phi5(p, variant),
        6 => build_phi6(p, variant),
        7 => build_phi7(p, variant),
        10 => build_phi10(p, variant),
        _ => Err(invalid(&format!("family {family}"), p)),
    }
}

/// All built-in groups at `p`: the abelian groups and families Φ5, Φ6, Φ7,
/// Φ10.
pub fn catalog(p: u32) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for family in [1u8, 5, 6, 7, 10] {
        let ids = gap_ids(family, p);
        for v in variants(family, p)? {
            let presentation = build(family, p, &v)?;
            let gap_id = ids.iter().find(|(l, _)| *l == v).map(|&(_, g)| g);
            out.push(CatalogEntry {
                id: FamilyId { family, variant: v, p },
                gap_id,
                presentation,
            });
        }
    }
    Ok(out)
}

/// Group counts per isoclinism family for order `p^5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCounts {
    pub p: u32,
    /// Index `i` holds the size of family `i + 1`.
    pub per_family: [u32; 10],
    pub total: u32,
    /// Closed formula for the total; only valid for `p >= 5`.
    pub bagnera: Option<u32>,
}

impl FamilyCounts {
    pub fn phi10(&self) -> u32 {
        self.per_family[9]
    }
}

pub fn family_counts(p: u32) -> Result<FamilyCounts> {
    if p == 2 || !is_prime(p) {
        return Err(Error::UnsupportedPrime(p));
    }
    let g3 = gcd(3, p - 1);
    let g4 = gcd(4, p - 1);
    let mut per_family = [7, 15, 13, p + 8, 2, p + 7, 5, 1, g3 + 2, g4 + g3 + 1];
    if p == 3 {
        per_family[5] = 7;
        per_family[9] = 3;
    }
    let total = per_family.iter().sum();
    let bagnera = (p >= 5).then(|| 2 * p + 61 + g4 + 2 * g3);
    Ok(FamilyCounts {
        p,
        per_family,
        total,
        bagnera,
    })
}

/// GAP small-group ids of catalog variants, where known individually.
fn gap_ids(family: u8, p: u32) -> Vec<(&'static str, u32)> {
    match (family, p) {
        (10, 3) => vec![("(1^5)", 28), ("(2111)a_0", 29), ("(2111)a_1", 30)],
        (7, 3) => vec![
            ("(2111)b_1", 56),
            ("(2111)b_nu", 57),
            ("(1^5)", 58),
            ("(2111)a", 59),
            ("(2111)c", 60),
        ],
        _ => Vec::new(),
    }
}

/// GAP id cross-reference for one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapIdMap {
    pub p: u32,
    /// Inclusive id range of family Φ10.
    pub phi10_range: (u32, u32),
    /// Individual assignments (variant label, GAP id) where known.
    pub phi10: Vec<(String, u32)>,
    pub phi7: Vec<(String, u32)>,
}

pub fn gap_id_map(p: u32) -> Result<GapIdMap> {
    let phi10_range = match p {
        3 => (28, 30),
        5 => (33, 38),
        7 => (37, 42),
        11 => (39, 42),
        _ => return Err(Error::UnsupportedPrime(p)),
    };
    let own = |f| {
        gap_ids(f, p)
            .into_iter()
            .map(|(l, g)| (l.to_string(), g))
            .collect::<Vec<_>>()
    };
    Ok(GapIdMap {
        p,
        phi10_range,
        phi10: own(10),
        phi7: own(7),
    })
}

/// Parses the pcp text format and checks consistency.
pub fn parse_pcp(text: &str) -> Result<PcPresentation> {
    let pres = parse_pcp_unchecked(text)?;
    PcGroup::new(pres.clone())?;
    Ok(pres)
}

/// Parses without the consistency check.
pub fn parse_pcp_unchecked(text: &str) -> Result<PcPresentation> {
    let mut p: Option<u32> = None;
    let mut n: Option<usize> = None;
    let mut name: Option<String> = None;
    let mut pres: Option<PcPresentation> = None;
    let mut seen = std::collections::HashSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(&(col0, kw)) = toks.first() else { continue };
        let err = |col: usize, msg: String| Error::Syntax {
            line: line_no,
            col,
            msg,
        };
        match kw {
            "p" | "gens" => {
                let &(col, val) = toks.get(1).ok_or_else(|| err(col0, format!("missing value after `{kw}`")))?;
                if toks.len() > 2 {
                    return Err(err(toks[2].0, "unexpected token".into()));
                }
                if pres.is_some() {
                    return Err(err(col0, "header after relations".into()));
                }
                let v: u32 = val.parse().map_err(|_| err(col, format!("expected a number, found `{val}`")))?;
                if kw == "p" {
                    if !is_prime(v) {
                        return Err(err(col, format!("{v} is not prime")));
                    }
                    if p.replace(v).is_some() {
                        return Err(err(col0, "duplicate `p`".into()));
                    }
                } else if n.replace(v as usize).is_some() {
                    return Err(err(col0, "duplicate `gens`".into()));
                }
            }
            "name" => {
                let rest = line.trim_start()[4..].trim();
                name = Some(rest.to_string());
            }
            "pow" | "comm" => {
                if pres.is_none() {
                    let (Some(p), Some(n)) = (p, n) else {
                        return Err(err(col0, "relation before `p` and `gens`".into()));
                    };
                    if p > 251 {
                        return Err(err(col0, format!("prime {p} is too large")));
                    }
                    pres = Some(PcPresentation::new(p, n));
                }
                let pr = pres.as_mut().expect("initialised");
                let gens = pr.num_gens();
                let nidx = if kw == "pow" { 1 } else { 2 };
                let colon = toks
                    .iter()
                    .position(|&(_, t)| t == ":")
                    .ok_or_else(|| err(col0, "missing `:`".into()))?;
                if colon != 1 + nidx {
                    let c = toks.get(1 + nidx.min(colon)).map_or(col0, |t| t.0);
                    return Err(err(c, format!("`{kw}` takes {nidx} generator index(es) before `:`")));
                }
                let mut idx = Vec::new();
                for &(c, t) in &toks[1..colon] {
                    let v: usize = t.parse().map_err(|_| err(c, format!("expected an index, found `{t}`")))?;
                    if v == 0 || v > gens {
                        return Err(err(c, format!("generator index {v} out of range 1..={gens}")));
                    }
                    idx.push(v - 1);
                }
                let above = *idx.first().expect("index present");
                if kw == "comm" && idx[0] <= idx[1] {
                    return Err(err(toks[1].0, "`comm j i` needs j > i".into()));
                }
                let mut word = Vec::new();
                let mut last: Option<usize> = None;
                for &(c, t) in &toks[colon + 1..] {
                    let (gs, es) = t.split_once('^').unwrap_or((t, "1"));
                    let g: usize = gs.parse().map_err(|_| err(c, format!("bad factor `{t}`")))?;
                    let e: i64 = es.parse().map_err(|_| err(c, format!("bad exponent in `{t}`")))?;
                    if g == 0 || g > gens {
                        return Err(err(c, format!("generator index {g} out of range 1..={gens}")));
                    }
                    let g = g - 1;
                    if g <= above {
                        return Err(err(c, format!("factor {} must exceed {}", g + 1, above + 1)));
                    }
                    if last.is_some_and(|l| g <= l) {
                        return Err(err(c, "factor indices must strictly increase".into()));
                    }
                    last = Some(g);
                    word.push((g, e));
                }
                if !seen.insert((kw, idx.clone())) {
                    return Err(err(col0, "duplicate relation".into()));
                }
                let res = if kw == "pow" {
                    pr.set_power(idx[0], &word)
                } else {
                    pr.set_comm(idx[0], idx[1], &word)
                };
                res.map_err(|e| err(col0, e.to_string()))?;
            }
            other => return Err(err(col0, format!("unknown keyword `{other}`"))),
        }
    }
    let mut pres = match pres {
        Some(pr) => pr,
        None => {
            let p = p.ok_or_else(|| Error::Syntax {
                line: 1,
                col: 1,
                msg: "missing `p` header".into(),
            })?;
            let n = n.ok_or_else(|| Error::Syntax {
                line: 1,
                col: 1,
                msg: "missing `gens` header".into(),
            })?;
            PcPresentation::new(p, n)
        }
    };
    if let Some(name) = name {
        pres.set_name(name);
    }
    Ok(pres)
}

/// Whitespace tokens with 1-based columns; `:` is always its own token.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() || ch == ':' {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
            if ch == ':' {
                out.push((i + 1, &line[i..i + 1]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_theory_constants() {
        let c = NumberTheoryContext::new(7).unwrap();
        assert_eq!((c.g, c.nu), (3, 3));
        let c = NumberTheoryContext::new(5).unwrap();
        assert_eq!((c.g, c.nu), (2, 2));
        assert!(NumberTheoryContext::new(9).is_err());
    }

    #[test]
    fn variant_lookup_accepts_aliases() {
        assert_eq!(find_variant(10, 3, "29").unwrap(), "(2111)a_0");
        assert_eq!(find_variant(10, 7, "2111a_1").unwrap(), "(2111)a_1");
        assert_eq!(find_variant(6, 3, "(221)c_2").unwrap(), "(221)c_nu");
        assert_eq!(find_variant(7, 3, "Φ").unwrap_err(), invalid("Φ", 3));
        assert!(build_phi6(3, "(2111)a").is_err());
    }

    #[test]
    fn pcp_round_trip() {
        let pres = build_phi10(3, "28").unwrap();
        let back = parse_pcp(&pres.to_pcp()).unwrap();
        assert_eq!(back, pres);
    }

    #[test]
    fn pcp_errors_carry_positions() {
        let e = parse_pcp_unchecked("p 3\ngens 2\ncomm 2 1 : 3^1\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 3, col: 12, .. }), "{e:?}");
        let e = parse_pcp_unchecked("p 4\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 1, col: 3, .. }));
        let e = parse_pcp_unchecked("gens 2\npow 1 : 2\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 2, .. }));
    }

    #[test]
    fn pcp_comments_and_negative_exponents() {
        let text = "# header\np 5 # prime\ngens 2\npow 1 : 2^-1\n";
        let pres = parse_pcp(text).unwrap();
        assert_eq!(pres.power(0), &[(1, 4)]);
    }
}
