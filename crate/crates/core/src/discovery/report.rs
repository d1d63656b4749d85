use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::condition::{ISCondition, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Sound,
    Conjectural,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sound" => Ok(Mode::Sound),
            "conjectural" => Ok(Mode::Conjectural),
            other => Err(format!(
                "unknown mode `{other}` (expected sound or conjectural)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Every subset of the name universe.
    Basic,
    /// Filtered, layered and pruned search.
    Layered,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerStats {
    pub layer: usize,
    /// Conditions left after pruning.
    pub candidates: usize,
    /// Candidates classified without computing HT-models.
    pub assumed: usize,
    pub se: usize,
    pub nse: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    /// `|IS|`
    pub names: usize,
    /// `|IS′|`, absent for the basic algorithm.
    pub base_names: Option<usize>,
    /// `|IS″|`, absent for the basic algorithm.
    pub viable_names: Option<usize>,
    /// Calls to the verifier, singleton filter included.
    pub verified: usize,
    pub layers: Vec<LayerStats>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub shape: Shape,
    pub mode: Mode,
    pub algorithm: Algorithm,
    pub mgic: Vec<ISCondition>,
    pub mnse: Vec<ISCondition>,
    pub tr: usize,
    pub max_nse: usize,
    /// Set when the search stopped at the layer limit before terminating.
    pub partial: bool,
    pub stats: Stats,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// The counts that the regression table compares.
    pub fn counts(&self) -> Counts {
        Counts {
            names: self.stats.names,
            base_names: self.stats.base_names,
            viable_names: self.stats.viable_names,
            tr: self.tr,
            mgic: self.mgic.len(),
            mnse: self.mnse.len(),
            max_nse: self.max_nse,
        }
    }

    /// One-line summary in table style, with the wall time.
    pub fn summary(&self) -> String {
        format!("{} {} time={:.2?}", self.shape, self.counts(), self.elapsed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Counts {
    pub names: usize,
    pub base_names: Option<usize>,
    pub viable_names: Option<usize>,
    pub tr: usize,
    pub mgic: usize,
    pub mnse: usize,
    pub max_nse: usize,
}

impl fmt::Display for Counts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<usize>| v.map_or("n/a".to_string(), |v| v.to_string());
        write!(
            f,
            "|IS|={} |IS′|={} |IS″|={} TR={} |MGIC|={} |MNSE|={} Max={}",
            self.names,
            opt(self.base_names),
            opt(self.viable_names),
            self.tr,
            self.mgic,
            self.mnse,
            self.max_nse
        )
    }
}
