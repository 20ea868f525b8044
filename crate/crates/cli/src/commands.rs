//! Command implementations.

use std::path::Path;

use rayon::prelude::*;
use serde_json::json;

use b0lab::catalog;
use b0lab::cohomology;
use b0lab::isoclinism::{self, IsoclinismResult};
use b0lab::multiplier::{self, B0Options, PairMode};
use b0lab::pcgroup::{self, BicyclicMode};
use b0lab::PcGroup;

use crate::cache::{self, Appender};
use crate::config::{CatalogCmd, Command, Format, GroupCmd, MethodArg, RunConfig};
use crate::record::{self, join, presentation_hash, ResultRecord};
use crate::source::{self, Source};
use crate::{CliError, Outcome};

type CliResult<T> = Result<T, CliError>;

pub fn dispatch(cmd: &Command, cfg: &RunConfig, diag: &mut Vec<String>) -> CliResult<Outcome> {
    match cmd {
        Command::Group { cmd: GroupCmd::Info { spec } } => group_info(spec, cfg).map(Outcome::ok),
        Command::B0 { spec } => b0(spec, cfg, diag).map(Outcome::ok),
        Command::Verify { corpus, phi10_only } => verify(cfg, corpus.as_deref(), *phi10_only, diag),
        Command::Isoclinism { a, b } => isoclinism_cmd(a, b, cfg),
        Command::Catalog { cmd: CatalogCmd::List } => catalog_list(cfg).map(Outcome::ok),
        Command::Ingest { paths, out } => ingest(paths, out.as_deref(), cfg),
        Command::Report => report(cfg, diag).map(Outcome::ok),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn bicyclic_mode(cfg: &RunConfig) -> BicyclicMode {
    match cfg.pairs {
        PairMode::Full => BicyclicMode::AllPairs,
        PairMode::Bicyclic => BicyclicMode::CyclicReps,
    }
}

// ---------------------------------------------------------------- group info

pub fn group_info(spec: &str, cfg: &RunConfig) -> CliResult<String> {
    let src = source::resolve(spec, cfg.p)?;
    let g = PcGroup::new(src.presentation.clone())?;
    let fp = isoclinism::family_fingerprint(&g);
    let key = fp.key();
    let class = pcgroup::nilpotency_class(&g);
    let hash = presentation_hash(&src.presentation);
    let sizes: Vec<(u64, u64)> = fp.class_sizes.iter().map(|(&s, &c)| (s, c)).collect();
    Ok(match cfg.format {
        Format::Json => pretty(&json!({
            "name": src.name,
            "hash": hash,
            "p": g.p(),
            "order": g.order(),
            "center_order": fp.center_order,
            "derived_order": fp.derived_order,
            "exponent": fp.exponent,
            "abelianization": fp.abelianization,
            "nilpotency_class": class,
            "lower_central_series": fp.lower_central,
            "class_sizes": sizes,
            "family": src.family,
            "gap_id": src.gap_id,
            "isoclinism_key": {
                "central_quotient_order": key.central_quotient_order,
                "derived_order": key.derived_order,
                "lower_central_from_2": key.lower_central_from_2,
                "coset_class_sizes": key.coset_class_sizes,
            },
        })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let head = ["name", "p", "order", "center", "derived", "exponent", "abelianization", "class"];
            w.write_record(head).expect("in-memory write");
            w.write_record([
                src.name.clone(),
                g.p().to_string(),
                g.order().to_string(),
                fp.center_order.to_string(),
                fp.derived_order.to_string(),
                fp.exponent.to_string(),
                join(&fp.abelianization, "x"),
                class.to_string(),
            ])
            .expect("in-memory write");
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
        Format::Text => {
            let sizes: Vec<String> = sizes.iter().map(|(s, c)| format!("{c}x{s}")).collect();
            let mut s = String::new();
            let mut line = |k: &str, v: String| s.push_str(&format!("{k:<16}{v}\n"));
            line("name", src.name.clone());
            line("hash", hash);
            line("order", format!("{} = {}^{}", g.order(), g.p(), g.num_gens()));
            line("center", fp.center_order.to_string());
            line("derived", fp.derived_order.to_string());
            line("exponent", fp.exponent.to_string());
            line("abelianization", format!("({})", join(&fp.abelianization, ",")));
            line("class", class.to_string());
            line("lower central", join(&fp.lower_central, " > "));
            line("class sizes", sizes.join(" "));
            if let Some(f) = src.family {
                line("family", format!("Phi{f}"));
            }
            if let Some(id) = src.gap_id {
                line("gap id", id.to_string());
            }
            s
        }
    })
}

// ---------------------------------------------------------------------- b0

struct CacheState {
    records: Vec<ResultRecord>,
    appender: Appender,
}

fn open_cache(cfg: &RunConfig, diag: &mut Vec<String>) -> CliResult<Option<CacheState>> {
    let Some(path) = &cfg.cache else { return Ok(None) };
    let loaded = cache::load(path)?;
    diag.extend(loaded.warnings);
    Ok(Some(CacheState {
        records: loaded.records,
        appender: Appender::open(path)?,
    }))
}

fn tensor_record(g: &PcGroup, hash: &str, cfg: &RunConfig) -> CliResult<ResultRecord> {
    let opts = B0Options {
        class_cap: cfg.class_cap,
        pairs: cfg.pairs,
    };
    let r = multiplier::b0_tensor(g, opts)?;
    Ok(ResultRecord::from_report(hash, "tensor", &r))
}

fn oracle_record(g: &PcGroup, hash: &str, cfg: &RunConfig) -> CliResult<ResultRecord> {
    let r = cohomology::b0_oracle(g, cfg.oracle_cap, bicyclic_mode(cfg))?;
    Ok(ResultRecord::from_report(hash, "oracle", &r))
}

fn criteria_record(g: &PcGroup, name: &str, hash: &str, cfg: &RunConfig) -> CliResult<ResultRecord> {
    let start = std::time::Instant::now();
    let v = cohomology::b0_criteria(g, bicyclic_mode(cfg))?;
    Ok(ResultRecord {
        hash: hash.to_string(),
        name: name.to_string(),
        p: g.p(),
        n: g.num_gens() as u32,
        method: "criteria".into(),
        b0_nonzero: v.nonzero,
        b0_invariants: None,
        multiplier_invariants: None,
        m_order: None,
        m0_order: None,
        certificates: v.certificates,
        elapsed_ms: start.elapsed().as_millis() as u64,
        version: record::TOOL_VERSION.into(),
    })
}

/// Tensor method cross-checked against the oracle (when within its cap)
/// and the criteria (when one applies).
fn all_record(g: &PcGroup, name: &str, hash: &str, cfg: &RunConfig) -> CliResult<ResultRecord> {
    let mut rec = tensor_record(g, hash, cfg)?;
    rec.method = "all".into();
    let cap = cfg.oracle_cap.unwrap_or_else(|| cohomology::default_size_cap(g.p()));
    if g.order() <= cap {
        let o = oracle_record(g, hash, cfg)?;
        if o.b0_invariants != rec.b0_invariants || o.multiplier_invariants != rec.multiplier_invariants {
            return Err(CliError::mismatch(format!(
                "{name}: tensor gives B0 {} with M {:?}, oracle gives B0 {} with M {:?}",
                rec.b0_text(),
                rec.multiplier_invariants,
                o.b0_text(),
                o.multiplier_invariants
            )));
        }
        rec.certificates.push("oracle agrees".into());
    } else {
        rec.certificates.push(format!("oracle skipped: order {} above cap {cap}", g.order()));
    }
    let c = criteria_record(g, name, hash, cfg)?;
    match c.b0_nonzero {
        Some(v) if Some(v) != rec.b0_nonzero => {
            return Err(CliError::mismatch(format!(
                "{name}: criteria say B0 {} but the tensor method gives {}",
                if v { "!= 0" } else { "= 0" },
                rec.b0_text()
            )))
        }
        Some(_) => rec.certificates.push("criteria agree".into()),
        None => rec.certificates.push("no criterion applies".into()),
    }
    rec.elapsed_ms += c.elapsed_ms;
    Ok(rec)
}

/// Computes (or fetches from the cache) the record for one group.
fn compute(src: &Source, cfg: &RunConfig, cache: Option<&CacheState>) -> CliResult<ResultRecord> {
    let hash = presentation_hash(&src.presentation);
    let method = cfg.method.as_str();
    if let Some(hit) = cache.and_then(|c| cache::lookup(&c.records, &hash, method)) {
        let mut r = hit.clone();
        r.name = src.name.clone();
        return Ok(r);
    }
    let g = PcGroup::new(src.presentation.clone())?;
    let mut rec = match cfg.method {
        MethodArg::Tensor => tensor_record(&g, &hash, cfg)?,
        MethodArg::Oracle => oracle_record(&g, &hash, cfg)?,
        MethodArg::Criteria => criteria_record(&g, &src.name, &hash, cfg)?,
        MethodArg::All => all_record(&g, &src.name, &hash, cfg)?,
    };
    rec.name = src.name.clone();
    if let Some(c) = cache {
        c.appender.append(&rec)?;
    }
    Ok(rec)
}

fn render_records(records: &[ResultRecord], format: Format) -> String {
    match format {
        Format::Json => pretty(&serde_json::to_value(records).expect("records serialize")),
        Format::Csv => record::to_csv(records),
        Format::Text => record::to_text(records),
    }
}

pub fn b0(spec: &str, cfg: &RunConfig, diag: &mut Vec<String>) -> CliResult<String> {
    let src = source::resolve(spec, cfg.p)?;
    let cache = open_cache(cfg, diag)?;
    let rec = compute(&src, cfg, cache.as_ref())?;
    Ok(match cfg.format {
        Format::Json => pretty(&serde_json::to_value(&rec).expect("record serializes")),
        Format::Text => {
            let mut s = record::to_text(std::slice::from_ref(&rec));
            for c in &rec.certificates {
                s.push_str(&format!("  {c}\n"));
            }
            s
        }
        Format::Csv => record::to_csv(std::slice::from_ref(&rec)),
    })
}

// ------------------------------------------------------------------ verify

struct CorpusItem {
    src: Source,
    phi10: Option<bool>,
}

fn catalog_items(p: u32, phi10_only: bool) -> CliResult<Vec<CorpusItem>> {
    Ok(catalog::catalog(p)?
        .into_iter()
        .filter(|e| !phi10_only || e.id.family == 10)
        .map(|e| CorpusItem {
            phi10: Some(e.id.family == 10),
            src: Source {
                name: e.id.name(),
                family: Some(e.id.family),
                gap_id: e.gap_id,
                presentation: e.presentation,
            },
        })
        .collect())
}

fn corpus_items(dir: &Path, p: u32) -> CliResult<Vec<CorpusItem>> {
    let files = source::expand_paths(&[dir.to_path_buf()])?;
    if files.is_empty() {
        return Err(CliError::invalid(format!("{}: no pcp files", dir.display())));
    }
    let range = catalog::gap_id_map(p).ok().map(|m| m.phi10_range);
    files
        .iter()
        .map(|f| {
            let presentation = source::read_pcp(f)?;
            let gap_id = source::gap_id_from_path(f);
            let phi10 = match (gap_id, range) {
                (Some(id), Some((lo, hi))) => Some((lo..=hi).contains(&id)),
                _ => None,
            };
            Ok(CorpusItem {
                phi10,
                src: Source {
                    name: f.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned()),
                    presentation,
                    family: None,
                    gap_id,
                },
            })
        })
        .collect()
}

pub fn verify(cfg: &RunConfig, corpus: Option<&Path>, phi10_only: bool, diag: &mut Vec<String>) -> CliResult<Outcome> {
    let p = cfg.p.ok_or_else(|| CliError::invalid("verify needs --p"))?;
    if p == 2 {
        return Err(CliError::invalid("verify supports odd primes only"));
    }
    if !catalog::is_prime(p) {
        return Err(CliError::invalid(format!("{p} is not prime")));
    }
    let items = match corpus {
        Some(dir) => corpus_items(dir, p)?,
        None => catalog_items(p, phi10_only)?,
    };
    let cache = open_cache(cfg, diag)?;
    let rows = items
        .par_iter()
        .map(|it| {
            let g = PcGroup::new(it.src.presentation.clone())?;
            if g.p() != p || g.order() != u64::from(p).pow(5) {
                return Err(CliError::invalid(format!("{}: not a group of order {p}^5", it.src.name)));
            }
            let phi10 = match it.phi10 {
                Some(t) => t,
                None => multiplier::is_phi10(&g)?,
            };
            let rec = compute(&it.src, cfg, cache.as_ref())?;
            Ok((phi10, rec))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let offenders: Vec<&ResultRecord> = rows
        .iter()
        .filter(|(phi10, r)| r.b0_nonzero != Some(*phi10))
        .map(|(_, r)| r)
        .collect();
    let nonzero = rows.iter().filter(|(_, r)| r.b0_nonzero == Some(true)).count();
    let holds = offenders.is_empty();
    let text = match cfg.format {
        Format::Json => pretty(&json!({
            "p": p,
            "method": cfg.method.as_str(),
            "groups": rows.len(),
            "nonzero": nonzero,
            "holds": holds,
            "rows": rows.iter().map(|(phi10, r)| json!({"phi10": phi10, "record": r})).collect::<Vec<_>>(),
        })),
        Format::Csv => record::to_csv(&rows.iter().map(|(_, r)| r.clone()).collect::<Vec<_>>()),
        Format::Text => {
            let table_rows: Vec<[String; 5]> = rows
                .iter()
                .map(|(phi10, r)| {
                    [
                        r.name.clone(),
                        if *phi10 { "yes" } else { "no" }.into(),
                        r.b0_text(),
                        format!("{}ms", r.elapsed_ms),
                        if r.b0_nonzero == Some(*phi10) { "ok" } else { "MISMATCH" }.into(),
                    ]
                })
                .collect();
            let mut s = record::table(&["group", "Phi10", "B0", "time", "status"], &table_rows);
            s.push_str(&format!(
                "p = {p}: {} groups, {nonzero} with B0 != 0, {}\n",
                rows.len(),
                if holds { "B0 != 0 exactly on Phi10" } else { "verification FAILED" }
            ));
            s
        }
    };
    let status = (!holds).then(|| {
        CliError::mismatch(format!(
            "verification mismatch on: {}",
            offenders.iter().map(|r| r.name.as_str()).collect::<Vec<_>>().join(", ")
        ))
    });
    Ok(Outcome { text, status })
}

// -------------------------------------------------------------- isoclinism

pub fn isoclinism_cmd(a: &str, b: &str, cfg: &RunConfig) -> CliResult<Outcome> {
    let sa = source::resolve(a, cfg.p)?;
    let sb = source::resolve(b, cfg.p)?;
    let ga = PcGroup::new(sa.presentation.clone())?;
    let gb = PcGroup::new(sb.presentation.clone())?;
    let result = isoclinism::is_isoclinic(&ga, &gb, cfg.search_budget)?;
    let validated = match &result {
        IsoclinismResult::Isoclinic(w) => Some(isoclinism::validate_witness(&ga, &gb, w)?),
        IsoclinismResult::NotIsoclinic => None,
    };
    let verdict = result.is_isoclinic();
    let text = match cfg.format {
        Format::Json => pretty(&json!({
            "a": sa.name,
            "b": sb.name,
            "isoclinic": verdict,
            "witness_validated": validated,
        })),
        Format::Csv => format!(
            "a,b,isoclinic,witness_validated\n{},{},{verdict},{}\n",
            sa.name,
            sb.name,
            validated.map_or_else(String::new, |v| v.to_string())
        ),
        Format::Text => format!(
            "{} and {} are {}{}\n",
            sa.name,
            sb.name,
            if verdict { "isoclinic" } else { "not isoclinic" },
            match validated {
                Some(true) => " (witness validated)",
                Some(false) => " (witness INVALID)",
                None => "",
            }
        ),
    };
    let status = (validated == Some(false)).then(|| CliError::mismatch("isoclinism witness failed validation"));
    Ok(Outcome { text, status })
}

// ----------------------------------------------------------------- catalog

pub fn catalog_list(cfg: &RunConfig) -> CliResult<String> {
    let p = cfg.p.ok_or_else(|| CliError::invalid("catalog list needs --p"))?;
    let entries = catalog::catalog(p)?;
    let counts = catalog::family_counts(p)?;
    let built = |f: u8| entries.iter().filter(|e| e.id.family == f).count();
    Ok(match cfg.format {
        Format::Json => pretty(&json!({
            "p": p,
            "groups": entries.iter().map(|e| json!({
                "name": e.id.name(),
                "family": e.id.family,
                "variant": e.id.variant,
                "gap_id": e.gap_id,
            })).collect::<Vec<_>>(),
            "family_counts": counts.per_family,
            "built_in": (1..=10).map(built).collect::<Vec<_>>(),
            "phi10_count": counts.phi10(),
            "total": counts.total,
            "bagnera": counts.bagnera,
        })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["name", "family", "variant", "gap_id"]).expect("in-memory write");
            for e in &entries {
                w.write_record([
                    e.id.name(),
                    e.id.family.to_string(),
                    e.id.variant.clone(),
                    e.gap_id.map_or_else(String::new, |g| g.to_string()),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
        Format::Text => {
            let rows: Vec<[String; 3]> = entries
                .iter()
                .map(|e| [e.id.name(), format!("Phi{}", e.id.family), e.gap_id.map_or_else(|| "-".into(), |g| g.to_string())])
                .collect();
            let mut s = record::table(&["group", "family", "gap id"], &rows);
            s.push_str("\nfamily  groups  built-in\n");
            for f in 1..=10u8 {
                s.push_str(&format!("Phi{f:<5}{:>6}  {:>8}\n", counts.per_family[f as usize - 1], built(f)));
            }
            s.push_str(&format!("total {}", counts.total));
            if let Some(b) = counts.bagnera {
                s.push_str(&format!(" (closed formula {b})"));
            }
            s.push('\n');
            s
        }
    })
}

// ------------------------------------------------------------------ ingest

pub fn ingest(paths: &[std::path::PathBuf], out_dir: Option<&Path>, cfg: &RunConfig) -> CliResult<Outcome> {
    let files = source::expand_paths(paths)?;
    if let Some(d) = out_dir {
        std::fs::create_dir_all(d)?;
    }
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for f in &files {
        let res = (|| -> CliResult<[String; 5]> {
            let pres = source::read_pcp(f)?;
            let g = PcGroup::new(pres.clone())?;
            let p = g.p();
            let phi10 = if p > 2 && g.num_gens() == 5 {
                if multiplier::is_phi10(&g)? { "yes" } else { "no" }
            } else {
                "-"
            };
            if let Some(d) = out_dir {
                let name = f.file_name().ok_or_else(|| CliError::invalid("bad file name"))?;
                std::fs::write(d.join(name), pres.to_pcp())?;
            }
            Ok([
                f.display().to_string(),
                pres.name().unwrap_or("").to_string(),
                format!("{}^{}", p, g.num_gens()),
                phi10.into(),
                presentation_hash(&pres),
            ])
        })();
        match res {
            Ok(r) => rows.push(r),
            Err(e) if e.message.contains(&f.display().to_string()) => failures.push(e.message),
            Err(e) => failures.push(format!("{}: {}", f.display(), e.message)),
        }
    }
    let text = match cfg.format {
        Format::Json => pretty(&json!({
            "ingested": rows.iter().map(|r| json!({
                "file": r[0], "name": r[1], "order": r[2], "phi10": r[3], "hash": r[4],
            })).collect::<Vec<_>>(),
            "failed": failures,
        })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["file", "name", "order", "phi10", "hash"]).expect("in-memory write");
            for r in &rows {
                w.write_record(r).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
        Format::Text => record::table(&["file", "name", "order", "Phi10", "hash"], &rows),
    };
    let status = (!failures.is_empty()).then(|| CliError::invalid(failures.join("\n")));
    Ok(Outcome { text, status })
}

// ------------------------------------------------------------------ report

pub fn report(cfg: &RunConfig, diag: &mut Vec<String>) -> CliResult<String> {
    let path = cfg.cache.as_ref().ok_or_else(|| CliError::invalid("report needs --cache"))?;
    let loaded = cache::load(path)?;
    diag.extend(loaded.warnings);
    Ok(render_records(&cache::canonical(&loaded.records), cfg.format))
}
