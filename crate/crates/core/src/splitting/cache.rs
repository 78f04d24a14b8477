//! Plain-text persistence of split records.
//!
//! ```text
//! grhgen-cache v1 <field-digest> <limit>
//! 2 1 1:1
//! 3 0 2:1
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use super::{sieve_primes, IdealNormTable, SplitRecord};
use crate::numberfield::NumberField;
use crate::{Error, Result};

const MAGIC: &str = "grhgen-cache";
const VERSION: &str = "v1";

pub fn cache_path(dir: &Path, field_id: &str) -> PathBuf {
    dir.join(format!("{field_id}.cache"))
}

pub fn render_cache(table: &IdealNormTable) -> String {
    let mut out = format!("{MAGIC} {VERSION} {} {}\n", table.field_id(), table.limit());
    for rec in table.records() {
        out.push_str(&rec.to_line());
        out.push('\n');
    }
    out
}

pub fn parse_cache(text: &str, field: &NumberField) -> Result<IdealNormTable> {
    let malformed = |msg: String| Error::MalformedCache(msg);
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| malformed("empty file".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [magic, version, digest, limit] = fields[..] else {
        return Err(malformed(format!("bad header {header:?}")));
    };
    if magic != MAGIC || version != VERSION {
        return Err(malformed(format!("unsupported header {header:?}")));
    }
    let expected = field.id();
    if digest != expected {
        return Err(Error::DigestMismatch {
            expected,
            found: digest.to_string(),
        });
    }
    let limit: f64 = limit
        .parse()
        .ok()
        .filter(|l: &f64| l.is_finite() && *l >= 1.0)
        .ok_or_else(|| malformed(format!("bad limit {limit:?}")))?;

    let records = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| SplitRecord::parse_line(l).map_err(|e| malformed(e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let expected_primes = sieve_primes(limit.floor() as u64);
    if records.len() != expected_primes.len()
        || records.iter().zip(&expected_primes).any(|(r, &p)| r.p != p)
    {
        return Err(malformed(format!(
            "records do not list exactly the primes up to the declared limit {limit}"
        )));
    }
    for r in &records {
        r.validate(field.degree())
            .map_err(|e| malformed(e.to_string()))?;
    }
    Ok(IdealNormTable::from_records(field, limit, records))
}

pub fn save_cache(table: &IdealNormTable, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, table.field_id());
    let tmp = path.with_extension("cache.tmp");
    fs::write(&tmp, render_cache(table))?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// Loads the cached table of `field` from `dir`; an absent file yields an
/// empty table.
pub fn load_cache(dir: &Path, field: &NumberField) -> Result<IdealNormTable> {
    let path = cache_path(dir, &field.id());
    match fs::read_to_string(&path) {
        Ok(text) => parse_cache(&text, field),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(IdealNormTable::new(field)),
        Err(e) => Err(e.into()),
    }
}
