//! Serializable results and their text/CSV/JSON renderings.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use b0lab::multiplier::B0Report;
use b0lab::PcPresentation;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Stable digest of the relations of a presentation; the name and any
/// formatting of the source file do not enter.
pub fn presentation_hash(pres: &PcPresentation) -> String {
    let digest = Sha256::digest(pres.relations_text().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// One B0 computation, as stored in the cache.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub hash: String,
    pub name: String,
    pub p: u32,
    pub n: u32,
    pub method: String,
    /// `None` when the method could not decide.
    pub b0_nonzero: Option<bool>,
    /// Abelian invariants of B0; absent for certificate-only verdicts.
    pub b0_invariants: Option<Vec<u64>>,
    pub multiplier_invariants: Option<Vec<u64>>,
    pub m_order: Option<u64>,
    pub m0_order: Option<u64>,
    pub certificates: Vec<String>,
    pub elapsed_ms: u64,
    pub version: String,
}

impl ResultRecord {
    pub fn from_report(hash: &str, method: &str, r: &B0Report) -> Self {
        Self {
            hash: hash.to_string(),
            name: r.name.clone(),
            p: r.p,
            n: r.n,
            method: method.to_string(),
            b0_nonzero: Some(r.is_nonzero()),
            b0_invariants: Some(r.invariants.clone()),
            multiplier_invariants: Some(r.multiplier_invariants.clone()),
            m_order: Some(r.m_order),
            m0_order: Some(r.m0_order),
            certificates: r.certificates.clone(),
            elapsed_ms: r.elapsed_ms as u64,
            version: TOOL_VERSION.to_string(),
        }
    }

    /// B0 as text: `0`, invariants like `3x9`, `nonzero`, or `?`.
    pub fn b0_text(&self) -> String {
        match (&self.b0_invariants, self.b0_nonzero) {
            (Some(v), _) if v.is_empty() => "0".into(),
            (Some(v), _) => join(v, "x"),
            (None, Some(true)) => "nonzero".into(),
            (None, Some(false)) => "0".into(),
            (None, None) => "?".into(),
        }
    }
}

pub fn join(v: &[u64], sep: &str) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(sep)
}

fn opt(v: Option<u64>) -> String {
    v.map_or_else(|| "-".into(), |x| x.to_string())
}

pub const CSV_HEADER: [&str; 8] = ["name", "p", "n", "method", "b0_invariants", "|M|", "|M0|", "elapsed_ms"];

pub fn to_csv(records: &[ResultRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in records {
        w.write_record([
            r.name.clone(),
            r.p.to_string(),
            r.n.to_string(),
            r.method.clone(),
            r.b0_text(),
            opt(r.m_order),
            opt(r.m0_order),
            r.elapsed_ms.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn to_text(records: &[ResultRecord]) -> String {
    let rows: Vec<[String; 7]> = records
        .iter()
        .map(|r| {
            [
                r.name.clone(),
                format!("{}^{}", r.p, r.n),
                r.method.clone(),
                r.b0_text(),
                r.multiplier_invariants.as_deref().map_or_else(|| "-".into(), |m| format!("({})", join(m, ","))),
                opt(r.m0_order),
                format!("{}ms", r.elapsed_ms),
            ]
        })
        .collect();
    table(&["group", "order", "method", "B0", "M(G)", "|M0|", "time"], &rows)
}

/// Left-aligned plain-text table.
pub fn table<const N: usize>(header: &[&str; N], rows: &[[String; N]]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ResultRecord {
        ResultRecord {
            hash: "ab".into(),
            name: "G, \"quoted\"".into(),
            p: 3,
            n: 5,
            method: "tensor".into(),
            b0_nonzero: Some(true),
            b0_invariants: Some(vec![3]),
            multiplier_invariants: Some(vec![3, 3]),
            m_order: Some(9),
            m0_order: Some(3),
            certificates: vec!["x".into()],
            elapsed_ms: 12,
            version: TOOL_VERSION.into(),
        }
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let r = sample();
        let line = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<ResultRecord>(&line).unwrap(), r);
    }

    #[test]
    fn csv_has_fixed_columns_and_quotes() {
        let csv = to_csv(&[sample()]);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "name,p,n,method,b0_invariants,|M|,|M0|,elapsed_ms");
        assert_eq!(lines.next().unwrap(), "\"G, \"\"quoted\"\"\",3,5,tensor,3,9,3,12");
    }

    #[test]
    fn hash_ignores_name_and_formatting() {
        let a = b0lab::catalog::parse_pcp("p 3\ngens 2\nname A\ncomm 2 1 : \n").unwrap();
        let b = b0lab::catalog::parse_pcp("# c\np 3\n\ngens   2\nname B\n").unwrap();
        assert_eq!(presentation_hash(&a), presentation_hash(&b));
        let c = b0lab::catalog::parse_pcp("p 3\ngens 2\npow 1 : 2^1\n").unwrap();
        assert_ne!(presentation_hash(&a), presentation_hash(&c));
    }
}
