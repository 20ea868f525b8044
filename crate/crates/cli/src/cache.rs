//! Append-only JSON-lines cache of [`ResultRecord`]s.

use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use crate::record::ResultRecord;

/// Records read from a cache file plus warnings for skipped lines.
#[derive(Debug, Default)]
pub struct Loaded {
    pub records: Vec<ResultRecord>,
    pub warnings: Vec<String>,
}

/// Reads every parseable line; a missing file is an empty cache.
pub fn load(path: &Path) -> io::Result<Loaded> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Loaded::default()),
        Err(e) => return Err(e),
    };
    let mut out = Loaded::default();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<ResultRecord>(&line) {
            Ok(r) => out.records.push(r),
            Err(e) => out.warnings.push(format!("{}:{}: skipped corrupt record ({e})", path.display(), i + 1)),
        }
    }
    Ok(out)
}

/// The single writer for a cache file; concurrent callers are serialized.
pub struct Appender {
    path: PathBuf,
    file: Mutex<File>,
}

impl Appender {
    pub fn open(path: &Path) -> io::Result<Self> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(Self {
            path: path.to_path_buf(),
            file: Mutex::new(file),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn append(&self, r: &ResultRecord) -> io::Result<()> {
        let mut line = serde_json::to_string(r).map_err(io::Error::other)?;
        line.push('\n');
        let mut f = self.file.lock().unwrap_or_else(|e| e.into_inner());
        f.write_all(line.as_bytes())?;
        f.flush()
    }
}

/// Most recent record for a presentation, method and tool version.
pub fn lookup<'a>(records: &'a [ResultRecord], hash: &str, method: &str) -> Option<&'a ResultRecord> {
    records
        .iter()
        .rev()
        .find(|r| r.hash == hash && r.method == method && r.version == crate::record::TOOL_VERSION)
}

/// Records sorted by name, hash and method with later duplicates winning.
pub fn canonical(records: &[ResultRecord]) -> Vec<ResultRecord> {
    let mut map = std::collections::BTreeMap::new();
    for r in records {
        map.insert((r.name.clone(), r.hash.clone(), r.method.clone()), r.clone());
    }
    map.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::TOOL_VERSION;

    fn rec(name: &str, hash: &str) -> ResultRecord {
        ResultRecord {
            hash: hash.into(),
            name: name.into(),
            p: 3,
            n: 3,
            method: "tensor".into(),
            b0_nonzero: Some(false),
            b0_invariants: Some(vec![]),
            multiplier_invariants: Some(vec![3, 3]),
            m_order: Some(9),
            m0_order: Some(9),
            certificates: vec![],
            elapsed_ms: 1,
            version: TOOL_VERSION.into(),
        }
    }

    #[test]
    fn write_then_read_and_skip_corrupt_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sub/cache.jsonl");
        let app = Appender::open(&path).unwrap();
        app.append(&rec("a", "h1")).unwrap();
        std::fs::OpenOptions::new()
            .append(true)
            .open(&path)
            .unwrap()
            .write_all(b"{not json\n")
            .unwrap();
        app.append(&rec("b", "h2")).unwrap();
        let loaded = load(&path).unwrap();
        assert_eq!(loaded.records, vec![rec("a", "h1"), rec("b", "h2")]);
        assert_eq!(loaded.warnings.len(), 1);
        assert!(lookup(&loaded.records, "h2", "tensor").is_some());
        assert!(lookup(&loaded.records, "h2", "oracle").is_none());
    }

    #[test]
    fn missing_file_is_empty() {
        let loaded = load(Path::new("/nonexistent/b0lab/cache.jsonl")).unwrap();
        assert!(loaded.records.is_empty() && loaded.warnings.is_empty());
    }

    #[test]
    fn canonical_order_is_deterministic() {
        let a = [rec("b", "1"), rec("a", "2"), rec("b", "1")];
        let c = canonical(&a);
        assert_eq!(c.iter().map(|r| r.name.as_str()).collect::<Vec<_>>(), ["a", "b"]);
    }
}
