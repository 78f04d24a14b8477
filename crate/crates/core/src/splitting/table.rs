use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{primes_in, splitting_degrees, SplitRecord};
use crate::numberfield::NumberField;
use crate::{Error, Result};

/// One prime-ideal norm `p^f`, counted with multiplicity `count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormEntry {
    pub norm: u64,
    pub log_norm: f64,
    pub p: u64,
    pub f: u32,
    pub count: u32,
}

/// Sorted prime-ideal norms of a field, valid for all norms up to `limit`.
///
/// Split records are kept for every prime up to the limit so that entries
/// `p^f` with `f ≥ 2` can be added later when the limit grows. Records of
/// untrusted primes are stored but contribute no entries unless a user
/// override is present.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealNormTable {
    field_id: String,
    limit: f64,
    records: Vec<SplitRecord>,
    entries: Vec<NormEntry>,
    overrides: BTreeMap<u64, SplitRecord>,
}

impl IdealNormTable {
    /// An empty table with limit 1.
    pub fn new(field: &NumberField) -> Self {
        Self {
            field_id: field.id(),
            limit: 1.0,
            records: Vec::new(),
            entries: Vec::new(),
            overrides: BTreeMap::new(),
        }
    }

    pub(crate) fn from_records(
        field: &NumberField,
        limit: f64,
        records: Vec<SplitRecord>,
    ) -> Self {
        let mut t = Self::new(field);
        t.limit = limit;
        t.records = records
            .into_iter()
            .map(|mut r| {
                r.trusted = !field.is_index_suspect(r.p);
                r
            })
            .collect();
        t.rebuild_entries();
        t
    }

    pub fn field_id(&self) -> &str {
        &self.field_id
    }

    pub fn limit(&self) -> f64 {
        self.limit
    }

    pub fn entries(&self) -> &[NormEntry] {
        &self.entries
    }

    pub fn records(&self) -> &[SplitRecord] {
        &self.records
    }

    /// Primes whose records are excluded from the entries.
    pub fn excluded_primes(&self) -> Vec<u64> {
        self.records
            .iter()
            .filter(|r| !r.trusted && !self.overrides.contains_key(&r.p))
            .map(|r| r.p)
            .collect()
    }

    /// Supplies the splitting of an index-suspect prime by hand.
    pub fn set_override(&mut self, field: &NumberField, mut record: SplitRecord) -> Result<()> {
        record.validate(field.degree())?;
        record.trusted = true;
        self.overrides.insert(record.p, record);
        self.rebuild_entries();
        Ok(())
    }

    /// Prime ideals of norm at most `t`, counted with multiplicity.
    pub fn count_up_to(&self, t: u64) -> u64 {
        self.entries
            .iter()
            .take_while(|e| e.norm <= t)
            .map(|e| u64::from(e.count))
            .sum()
    }

    /// Whether every integer norm strictly below `e^log_t` is present.
    pub fn covers(&self, log_t: f64) -> bool {
        self.limit >= required_limit(log_t)
    }

    pub fn check_covers(&self, log_t: f64) -> Result<()> {
        if self.covers(log_t) {
            Ok(())
        } else {
            Err(Error::TableTooSmall {
                limit: self.limit,
                needed: required_limit(log_t),
            })
        }
    }

    /// Grows the table to `new_limit`. Extending to the current limit is a
    /// no-op.
    pub fn extend(&mut self, field: &NumberField, new_limit: f64) -> Result<()> {
        if field.id() != self.field_id {
            return Err(Error::DigestMismatch {
                expected: self.field_id.clone(),
                found: field.id(),
            });
        }
        if !(new_limit >= self.limit) {
            return Err(Error::InvalidArgument(format!(
                "new limit {new_limit} is below the current limit {}",
                self.limit
            )));
        }
        if new_limit > u64::MAX as f64 / 2.0 {
            return Err(Error::CapExceeded(format!("table limit {new_limit}")));
        }
        let old = self.limit.floor() as u64;
        let new = new_limit.floor() as u64;
        if new > old {
            for p in primes_in(old + 1, new) {
                let mut rec = splitting_degrees(field.poly(), p)?;
                rec.trusted = !field.is_index_suspect(p);
                self.records.push(rec);
            }
        }
        self.limit = new_limit;
        self.rebuild_entries();
        Ok(())
    }

    fn rebuild_entries(&mut self) {
        let lim = self.limit.floor() as u64;
        let mut entries = Vec::new();
        for rec in &self.records {
            let rec = match self.overrides.get(&rec.p) {
                Some(o) => o,
                None if rec.trusted => rec,
                None => continue,
            };
            for &(f, count) in &rec.degrees {
                match rec.p.checked_pow(f) {
                    Some(norm) if norm <= lim => entries.push(NormEntry {
                        norm,
                        log_norm: f64::from(f) * (rec.p as f64).ln(),
                        p: rec.p,
                        f,
                        count,
                    }),
                    _ => {}
                }
            }
        }
        entries.sort_by_key(|e| (e.norm, e.f));
        self.entries = entries;
    }
}

/// Smallest table limit containing every integer below `e^log_t`, with a
/// relative margin for rounding in `exp`.
pub fn required_limit(log_t: f64) -> f64 {
    if log_t <= 0.0 {
        return 1.0;
    }
    ((log_t.exp() * (1.0 + 1e-12)).ceil() - 1.0).max(1.0)
}
