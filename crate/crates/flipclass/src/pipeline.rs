//! Level-by-level classification: census `Ic_h`, products `Rc_h`, and the
//! combined table `Ac_h` with its goodness checks.

use std::path::Path;

use anyhow::{bail, Result};
use flipclass_core::classify::{build_ac, CoefficientTable, GoodnessReport, InvariantTable};
use serde::Serialize;

use crate::census::{run_census, Census};
use crate::format;

/// Reference flipclass counts of `S_{h+1}` for `h = 1..=6`.
pub const EXPECTED_COUNTS: [u64; 6] = [4, 4, 50, 1096, 36634, 1_701_056];

pub fn expected_count(h: usize) -> Option<u64> {
    EXPECTED_COUNTS.get(h.checked_sub(1)?).copied()
}

#[derive(Clone, Debug)]
pub struct Level {
    pub census: Census,
    pub ac: InvariantTable,
    pub goodness: GoodnessReport,
    pub t_vector_goodness: GoodnessReport,
}

impl Level {
    pub fn h(&self) -> usize {
        self.census.h
    }

    pub fn ic(&self) -> InvariantTable {
        self.ac.census_part()
    }

    pub fn rc(&self) -> InvariantTable {
        self.ac.product_part()
    }

    pub fn report(&self) -> LevelReport {
        let s = self.census.summary();
        LevelReport {
            h: s.h,
            n: s.n,
            flipclasses: s.flipclasses,
            expected: expected_count(s.h),
            restricted: self.census.restricted_count(),
            distinct_iota: s.distinct_iota,
            distinct_t_vectors: s.distinct_tvec,
            ic: self.ic().len(),
            rc: self.rc().len(),
            ac: self.ac.len(),
            good: self.goodness.is_good(),
            t_vector_conflicts: self.t_vector_goodness.conflicts.iter().map(|c| c.key.clone()).collect(),
            products_within_census: self.ac.products_within_census(),
            seconds: self.census.seconds,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub h: usize,
    pub n: usize,
    pub flipclasses: u64,
    pub expected: Option<u64>,
    pub restricted: usize,
    pub distinct_iota: usize,
    pub distinct_t_vectors: usize,
    pub ic: usize,
    pub rc: usize,
    pub ac: usize,
    pub good: bool,
    pub t_vector_conflicts: Vec<String>,
    pub products_within_census: bool,
    pub seconds: f64,
}

/// Classification of levels `1..=h_max`, each from a census of `S_{h+1}`.
#[derive(Clone, Debug, Default)]
pub struct Classification {
    pub levels: Vec<Level>,
}

impl Classification {
    pub fn level(&self, h: usize) -> Option<&Level> {
        self.levels.get(h.checked_sub(1)?)
    }

    /// Extends the classification by one level.
    pub fn push_level(&mut self, workers: usize) -> Result<&Level> {
        let h = self.levels.len() + 1;
        let census = run_census(h + 1, h, workers)?;
        let lower: Vec<&InvariantTable> = self.levels.iter().map(|l| &l.ac).collect();
        let ac = build_ac(&census.data.table, &lower)?;
        let goodness = ac.check_goodness();
        let t_vector_goodness = ac.check_goodness_by_t_vector();
        self.levels.push(Level { census, ac, goodness, t_vector_goodness });
        Ok(self.levels.last().expect("just pushed"))
    }

    pub fn coefficient_table(&self, h: usize) -> Result<CoefficientTable> {
        let Some(level) = self.level(h) else { bail!("level {h} has not been classified") };
        Ok(level.ac.to_coefficient_table()?)
    }

    /// Writes `ac{h}.tsv` and `ac{h}-records.tsv` for every good level.
    pub fn save(&self, dir: &Path) -> Result<Vec<std::path::PathBuf>> {
        let mut written = Vec::new();
        for level in &self.levels {
            written.push(format::save_invariant_table(dir, &level.ac)?);
            if level.goodness.is_good() {
                written.push(format::save_coefficient_table(dir, &level.ac.to_coefficient_table()?)?);
            }
        }
        Ok(written)
    }
}

/// Classifies levels `1..=h_max`, calling `progress` after each.
pub fn classify(h_max: usize, workers: usize, mut progress: impl FnMut(&Level)) -> Result<Classification> {
    let mut out = Classification::default();
    for _ in 0..h_max {
        progress(out.push_level(workers)?);
    }
    Ok(out)
}
