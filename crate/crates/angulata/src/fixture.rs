//! A frozen table of index vectors across one mutation in the (d, n) =
//! (3, 3) model.
//!
//! The table fixes one mutable slot of one collection and lists, for each of
//! the 25 objects, its coefficient row before and after the exchange,
//! together with the two exchange vectors of the slot. Verification replays
//! the sign-driven substitution rule over every row and reports any
//! disagreement. The default table is compiled in; set
//! `ANGULATA_FIXTURE_DIR` to load `d3n3_index_mutation.json` from another
//! directory instead.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::substitute_index_coeffs;
use crate::params::ModelParams;

const BUILTIN: &str = include_str!("../fixtures/d3n3_index_mutation.json");
const FILE_NAME: &str = "d3n3_index_mutation.json";
pub const FIXTURE_DIR_ENV: &str = "ANGULATA_FIXTURE_DIR";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixtureRow {
    pub before: Vec<i64>,
    pub after: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MutationFixture {
    pub d: u32,
    pub n: u32,
    pub pos: usize,
    pub sigma_estar: Vec<i64>,
    pub estar: Vec<i64>,
    pub rows: Vec<FixtureRow>,
}

#[derive(Debug, Clone)]
pub struct FixtureMismatch {
    pub row: usize,
    pub expected: Vec<i64>,
    pub got: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct FixtureReport {
    pub total: usize,
    pub matches: usize,
    pub mismatches: Vec<FixtureMismatch>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl MutationFixture {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let fixture: MutationFixture = serde_json::from_str(s)
            .map_err(|e| Error::Validation(format!("malformed fixture file: {e}")))?;
        fixture.check_shape()?;
        Ok(fixture)
    }

    /// Loads from `$ANGULATA_FIXTURE_DIR/d3n3_index_mutation.json` when the
    /// variable is set, from the compiled-in table otherwise.
    pub fn load() -> Result<Self> {
        match std::env::var_os(FIXTURE_DIR_ENV) {
            Some(dir) => {
                let path = std::path::Path::new(&dir).join(FILE_NAME);
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    Error::Validation(format!("cannot read {}: {e}", path.display()))
                })?;
                Self::from_json_str(&text)
            }
            None => Self::from_json_str(BUILTIN),
        }
    }

    fn check_shape(&self) -> Result<()> {
        let p = ModelParams::new(self.d, self.n)?;
        let slots = p.tilting_size();
        if self.pos >= slots {
            return Err(Error::Validation(format!(
                "mutated position {} out of range for {slots} slots",
                self.pos
            )));
        }
        if self.sigma_estar.len() != slots || self.estar.len() != slots {
            return Err(Error::Validation(format!(
                "exchange vectors must have {slots} entries"
            )));
        }
        if self.rows.len() as u64 != p.object_count() {
            return Err(Error::Validation(format!(
                "{} rows for a model with {} objects",
                self.rows.len(),
                p.object_count()
            )));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.before.len() != slots || row.after.len() != slots {
                return Err(Error::Validation(format!(
                    "row {i} must hold two {slots}-entry vectors"
                )));
            }
        }
        Ok(())
    }

    /// Replays the substitution rule over every row.
    pub fn verify(&self) -> Result<FixtureReport> {
        let mut mismatches = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            let got =
                substitute_index_coeffs(&row.before, self.pos, &self.sigma_estar, &self.estar)?;
            if got != row.after {
                mismatches.push(FixtureMismatch {
                    row: i,
                    expected: row.after.clone(),
                    got,
                });
            }
        }
        Ok(FixtureReport {
            total: self.rows.len(),
            matches: self.rows.len() - mismatches.len(),
            mismatches,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_table_verifies() {
        let fixture = MutationFixture::load().unwrap();
        assert_eq!((fixture.d, fixture.n, fixture.pos), (3, 3, 6));
        let report = fixture.verify().unwrap();
        assert_eq!(report.total, 25);
        assert_eq!(report.matches, 25);
        assert!(report.passed());
    }

    #[test]
    fn unit_rows_off_the_slot_are_fixed_points() {
        let fixture = MutationFixture::load().unwrap();
        for (i, row) in fixture.rows.iter().enumerate() {
            if row.before.iter().filter(|&&c| c != 0).count() == 1
                && row.before[fixture.pos] == 0
            {
                assert_eq!(row.before, row.after, "row {i}");
            }
        }
    }

    #[test]
    fn corrupted_rows_are_reported_not_swallowed() {
        let mut fixture = MutationFixture::load().unwrap();
        fixture.rows[6].after[0] += 1;
        let report = fixture.verify().unwrap();
        assert_eq!(report.matches, 24);
        assert_eq!(report.mismatches.len(), 1);
        assert_eq!(report.mismatches[0].row, 6);
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(MutationFixture::from_json_str("{}").is_err());
        let mut fixture = MutationFixture::load().unwrap();
        fixture.rows.pop();
        let json = serde_json::to_string(&fixture).unwrap();
        assert!(MutationFixture::from_json_str(&json).is_err());
    }
}
