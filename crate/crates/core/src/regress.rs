//! Reference counts for the solved problems and a runner that compares against them.

use std::str::FromStr;
use std::time::Duration;

use crate::condition::Shape;
use crate::discovery::{discover_improved, Counts, Options};
use crate::error::Result;

/// Expected counts per problem, in suite order.
pub const TABLE: [([usize; 3], Counts); 6] = [
    ([0, 1, 0], row(7, None, None, 7, 120, 1, 1)),
    ([0, 1, 1], row(63, Some(24), Some(16), 7, 32, 18, 2)),
    ([1, 1, 0], row(63, Some(24), Some(20), 12, 1024, 13, 2)),
    ([0, 2, 1], row(511, Some(63), Some(33), 7, 60, 71, 3)),
    ([1, 2, 0], row(511, Some(63), Some(42), 15, 10240, 81, 3)),
    ([1, 1, 1], row(511, Some(63), Some(45), 16, 39392, 409, 3)),
];

const fn row(
    names: usize,
    base_names: Option<usize>,
    viable_names: Option<usize>,
    tr: usize,
    mgic: usize,
    mnse: usize,
    max_nse: usize,
) -> Counts {
    Counts {
        names,
        base_names,
        viable_names,
        tr,
        mgic,
        mnse,
        max_nse,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Problems with at most three rules and a small search space.
    Fast,
    /// Every row of the table.
    Slow,
}

impl Suite {
    pub fn rows(self) -> &'static [([usize; 3], Counts)] {
        match self {
            Suite::Fast => &TABLE[..4],
            Suite::Slow => &TABLE,
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "fast" => Ok(Suite::Fast),
            "slow" => Ok(Suite::Slow),
            other => Err(format!("unknown suite `{other}` (expected fast or slow)")),
        }
    }
}

/// Field-by-field differences, empty when the counts agree.
pub fn compare(expected: &Counts, actual: &Counts) -> Vec<String> {
    let opt = |v: Option<usize>| v.map_or("n/a".to_string(), |v| v.to_string());
    let fields = [
        ("|IS|", expected.names.to_string(), actual.names.to_string()),
        ("|IS′|", opt(expected.base_names), opt(actual.base_names)),
        (
            "|IS″|",
            opt(expected.viable_names),
            opt(actual.viable_names),
        ),
        ("TR", expected.tr.to_string(), actual.tr.to_string()),
        ("|MGIC|", expected.mgic.to_string(), actual.mgic.to_string()),
        ("|MNSE|", expected.mnse.to_string(), actual.mnse.to_string()),
        (
            "Max",
            expected.max_nse.to_string(),
            actual.max_nse.to_string(),
        ),
    ];
    fields
        .into_iter()
        .filter(|(_, e, a)| e != a)
        .map(|(name, e, a)| format!("{name}: expected {e}, found {a}"))
        .collect()
}

#[derive(Clone, Debug)]
pub struct RowOutcome {
    pub shape: Shape,
    pub expected: Counts,
    pub actual: Counts,
    pub mismatches: Vec<String>,
    pub elapsed: Duration,
}

impl RowOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn line(&self) -> String {
        if self.passed() {
            format!(
                "PASS {} {} time={:.2?}",
                self.shape, self.actual, self.elapsed
            )
        } else {
            format!("FAIL {} {}", self.shape, self.mismatches.join("; "))
        }
    }
}

pub fn run_row(shape: [usize; 3], expected: Counts, opts: &Options) -> Result<RowOutcome> {
    let shape = Shape::new(shape[0], shape[1], shape[2])?;
    let report = discover_improved(shape, opts)?;
    let actual = report.counts();
    Ok(RowOutcome {
        shape,
        expected,
        actual,
        mismatches: compare(&expected, &actual),
        elapsed: report.elapsed,
    })
}

pub fn run_suite(suite: Suite, opts: &Options) -> Result<Vec<RowOutcome>> {
    suite
        .rows()
        .iter()
        .map(|&(shape, expected)| run_row(shape, expected, opts))
        .collect()
}
