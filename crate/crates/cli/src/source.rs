//! Resolving group specifications: pcp files and catalog ids.

use std::path::{Path, PathBuf};

use b0lab::catalog;
use b0lab::{Error, PcPresentation};

/// A resolved group together with what is known about its family.
#[derive(Clone, Debug)]
pub struct Source {
    pub name: String,
    pub presentation: PcPresentation,
    /// Isoclinism family when the group came from the catalog.
    pub family: Option<u8>,
    pub gap_id: Option<u32>,
}

fn need_p(p: Option<u32>, spec: &str) -> Result<u32, Error> {
    p.ok_or_else(|| Error::Malformed(format!("{spec}: catalog ids need --p")))
}

/// Reads a pcp file; the file stem names unnamed presentations.
pub fn read_pcp(path: &Path) -> Result<PcPresentation, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    let mut pres = catalog::parse_pcp(&text).map_err(|e| match e {
        Error::Syntax { line, col, msg } => Error::Syntax {
            line,
            col,
            msg: format!("{}: {msg}", path.display()),
        },
        Error::Inconsistent(m) => Error::Inconsistent(format!("{}: {m}", path.display())),
        other => other,
    })?;
    if pres.name().is_none() {
        if let Some(stem) = path.file_stem() {
            pres.set_name(stem.to_string_lossy());
        }
    }
    Ok(pres)
}

/// Trailing decimal digits of a file stem, read as a GAP id.
pub fn gap_id_from_path(path: &Path) -> Option<u32> {
    let stem = path.file_stem()?.to_string_lossy().into_owned();
    let digits: String = stem.chars().rev().take_while(char::is_ascii_digit).collect();
    digits.chars().rev().collect::<String>().parse().ok()
}

/// Accepts a pcp file path, `gap:<id>`, `abelian:<parts>` or
/// `Phi<family><variant>` (also `phi<family>:<variant>`).
pub fn resolve(spec: &str, p: Option<u32>) -> Result<Source, Error> {
    let path = Path::new(spec);
    if path.is_file() {
        let presentation = read_pcp(path)?;
        return Ok(Source {
            name: presentation.name().unwrap_or(spec).to_string(),
            presentation,
            family: None,
            gap_id: None,
        });
    }
    let lower = spec.to_ascii_lowercase();
    if let Some(id) = lower.strip_prefix("gap:") {
        let p = need_p(p, spec)?;
        let id: u32 = id.trim().parse().map_err(|_| Error::Malformed(format!("bad GAP id in {spec:?}")))?;
        let e = catalog::catalog(p)?
            .into_iter()
            .find(|e| e.gap_id == Some(id))
            .ok_or_else(|| Error::Malformed(format!("no built-in group with GAP id {id} at p = {p}")))?;
        return Ok(Source {
            name: e.id.name(),
            presentation: e.presentation,
            family: Some(e.id.family),
            gap_id: e.gap_id,
        });
    }
    if let Some(parts) = lower.strip_prefix("abelian:") {
        let p = need_p(p, spec)?;
        let parts: Vec<u32> = parts
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| Error::Malformed(format!("bad partition in {spec:?}")))?;
        let presentation = catalog::build_abelian(&parts, p)?;
        return Ok(Source {
            name: presentation.name().unwrap_or(spec).to_string(),
            family: (parts.iter().sum::<u32>() == 5).then_some(1),
            presentation,
            gap_id: None,
        });
    }
    if let Some(rest) = lower.strip_prefix("phi") {
        let p = need_p(p, spec)?;
        let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
        let family: u8 = digits.parse().map_err(|_| Error::Malformed(format!("bad family in {spec:?}")))?;
        // keep the variant's original case (b_nu, etc.)
        let variant = spec[3 + digits.len()..].trim_start_matches(':');
        let presentation = catalog::build(family, p, variant)?;
        let entry = catalog::catalog(p)?
            .into_iter()
            .find(|e| e.id.family == family && e.presentation == presentation);
        return Ok(Source {
            name: presentation.name().unwrap_or(spec).to_string(),
            gap_id: entry.and_then(|e| e.gap_id),
            presentation,
            family: Some(family),
        });
    }
    Err(Error::Malformed(format!("{spec:?} is neither a file nor a catalog id")))
}

/// `*.pcp` files in a directory (sorted) or the path itself.
pub fn expand_paths(paths: &[PathBuf]) -> Result<Vec<PathBuf>, Error> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut files: Vec<PathBuf> = std::fs::read_dir(p)
                .map_err(|e| Error::Malformed(format!("{}: {e}", p.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "pcp"))
                .collect();
            files.sort();
            out.extend(files);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_ids() {
        let s = resolve("Phi10(1^5)", Some(3)).unwrap();
        assert_eq!((s.family, s.gap_id), (Some(10), Some(28)));
        let s = resolve("phi10:(2111)a_1", Some(3)).unwrap();
        assert_eq!(s.gap_id, Some(30));
        let s = resolve("gap:56", Some(3)).unwrap();
        assert_eq!(s.family, Some(7));
        let s = resolve("abelian:1,1,1,1,1", Some(3)).unwrap();
        assert_eq!(s.family, Some(1));
        assert!(resolve("Phi10(1^5)", None).is_err());
        assert!(resolve("nonsense", Some(3)).is_err());
    }

    #[test]
    fn gap_ids_from_file_names() {
        assert_eq!(gap_id_from_path(Path::new("/x/243_28.pcp")), Some(28));
        assert_eq!(gap_id_from_path(Path::new("g7.pcp")), Some(7));
        assert_eq!(gap_id_from_path(Path::new("heis.pcp")), None);
    }
}
