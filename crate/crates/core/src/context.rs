use crate::analytic::{self, EllValue};
use crate::numberfield::NumberField;
use crate::splitting::{required_limit, IdealNormTable};
use crate::Result;

/// A field together with its norm table, extended on demand.
#[derive(Debug, Clone)]
pub struct FieldContext {
    field: NumberField,
    table: IdealNormTable,
}

impl FieldContext {
    pub fn new(field: NumberField) -> Self {
        let table = IdealNormTable::new(&field);
        Self { field, table }
    }

    /// Starts from a previously computed (e.g. cached) table.
    pub fn with_table(field: NumberField, table: IdealNormTable) -> Result<Self> {
        let mut ctx = Self::new(field);
        if table.field_id() != ctx.table.field_id() {
            return Err(crate::Error::DigestMismatch {
                expected: ctx.table.field_id().to_string(),
                found: table.field_id().to_string(),
            });
        }
        ctx.table = table;
        Ok(ctx)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn table(&self) -> &IdealNormTable {
        &self.table
    }

    pub fn table_mut(&mut self) -> &mut IdealNormTable {
        &mut self.table
    }

    /// Extends the table so that it covers `e^log_t`, growing geometrically
    /// to amortize repeated small extensions.
    pub fn ensure(&mut self, log_t: f64) -> Result<()> {
        if self.table.covers(log_t) {
            return Ok(());
        }
        let needed = required_limit(log_t);
        let target = needed.max((self.table.limit() * 1.25).floor());
        self.table.extend(&self.field, target)
    }

    /// Extends the table to exactly `limit` (if larger than the current one).
    pub fn extend_to(&mut self, limit: f64) -> Result<()> {
        if limit > self.table.limit() {
            self.table.extend(&self.field, limit)?;
        }
        Ok(())
    }

    pub fn ell(&mut self, l: f64) -> Result<EllValue> {
        self.ensure(l)?;
        analytic::ell(&self.field, &self.table, l)
    }

    pub fn grh_check_coro(&mut self, log_t: f64) -> Result<f64> {
        self.ensure(log_t)?;
        analytic::grh_check_coro(&self.field, &self.table, log_t)
    }

    /// Prime ideals of norm at most `t`.
    pub fn count_up_to(&mut self, t: u64) -> Result<u64> {
        self.extend_to(t as f64)?;
        Ok(self.table.count_up_to(t))
    }
}
