//! Frozen fixtures: the tangent-dimension table for `n ≤ 4` and the `S_4`
//! census.

use std::time::Instant;

use xtri_core::good_pairs::{census, DEFAULT_CENSUS_BOUND};
use xtri_core::schubert::tangent_table;
use xtri_core::verify::SuiteReport;
use xtri_core::Result;

use crate::{render, table_csv};

pub const SCHUBERT_TABLE: &str = include_str!("../golden/schubert_table.csv");
pub const CENSUS_S4: &str = include_str!("../golden/census_n4.json");

pub fn current_schubert_table() -> Result<String> {
    let mut rows = Vec::new();
    for n in 1..=4 {
        rows.extend(tangent_table(n, false)?);
    }
    Ok(table_csv(&rows))
}

pub fn current_census_s4() -> Result<String> {
    let report = census(4, 1, DEFAULT_CENSUS_BOUND)?;
    Ok(render(&serde_json::to_value(report).expect("reports always serialize")))
}

pub fn golden_suite() -> Result<SuiteReport> {
    let start = Instant::now();
    let mut failures = Vec::new();
    if current_schubert_table()? != SCHUBERT_TABLE {
        failures.push("tangent-dimension table differs from golden/schubert_table.csv".into());
    }
    if current_census_s4()? != CENSUS_S4 {
        failures.push("S_4 census differs from golden/census_n4.json".into());
    }
    Ok(SuiteReport {
        suite: "golden".into(),
        passed: failures.is_empty(),
        cases: 2,
        failures,
        millis: start.elapsed().as_millis(),
    })
}
