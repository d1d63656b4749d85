//! Append-only JSON-lines progress file for the layered search.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::report::{Algorithm, LayerStats, Mode};
use crate::condition::{ISCondition, Shape};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Entry {
    Header {
        shape: Shape,
        config: String,
        viable_names: Vec<u32>,
    },
    Layer {
        stats: LayerStats,
        mgic: Vec<ISCondition>,
        mnse: Vec<ISCondition>,
    },
}

pub(super) struct LayerEntry {
    pub stats: LayerStats,
    pub mgic: Vec<ISCondition>,
    pub mnse: Vec<ISCondition>,
}

pub(super) struct Checkpoint {
    file: File,
    shape: Shape,
    config: String,
    /// `IS″` from the header, when resuming.
    pub viable: Option<Vec<u32>>,
    pub layers: Vec<LayerEntry>,
}

fn config_hash(shape: Shape, mode: Mode, drop_i5: bool) -> String {
    let config = serde_json::json!({
        "shape": shape,
        "mode": mode,
        "drop_i5": drop_i5,
        "algorithm": Algorithm::Layered,
    });
    hex::encode(Sha256::digest(config.to_string().as_bytes()))
}

impl Checkpoint {
    /// Opens `path`, replaying whatever it already holds.
    pub fn open(path: &Path, shape: Shape, mode: Mode, drop_i5: bool) -> Result<Self> {
        let config = config_hash(shape, mode, drop_i5);
        let mut viable = None;
        let mut layers = Vec::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            for (i, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let entry: Entry = serde_json::from_str(&line)
                    .map_err(|e| Error::Checkpoint(format!("line {}: {e}", i + 1)))?;
                match entry {
                    Entry::Header {
                        shape: s,
                        config: c,
                        viable_names,
                    } => {
                        if viable.is_some() || i != 0 {
                            return Err(Error::Checkpoint("header must be the first line".into()));
                        }
                        if s != shape || c != config {
                            return Err(Error::Checkpoint(format!(
                                "file was written for problem {s} with another configuration"
                            )));
                        }
                        viable = Some(viable_names);
                    }
                    Entry::Layer { stats, mgic, mnse } => {
                        if viable.is_none() {
                            return Err(Error::Checkpoint("layer before header".into()));
                        }
                        if stats.layer != layers.len() + 1 {
                            return Err(Error::Checkpoint(format!(
                                "expected layer {}, found {}",
                                layers.len() + 1,
                                stats.layer
                            )));
                        }
                        layers.push(LayerEntry { stats, mgic, mnse });
                    }
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(Checkpoint {
            file,
            shape,
            config,
            viable,
            layers,
        })
    }

    fn append(&mut self, entry: &Entry) -> Result<()> {
        let mut line = serde_json::to_string(entry)?;
        line.push('\n');
        self.file.write_all(line.as_bytes())?;
        self.file.flush()?;
        Ok(())
    }

    pub fn write_header(&mut self, viable: &[u32]) -> Result<()> {
        let entry = Entry::Header {
            shape: self.shape,
            config: self.config.clone(),
            viable_names: viable.to_vec(),
        };
        self.append(&entry)?;
        self.viable = Some(viable.to_vec());
        Ok(())
    }

    pub fn write_layer(
        &mut self,
        stats: &LayerStats,
        mgic: &[ISCondition],
        mnse: &[ISCondition],
    ) -> Result<()> {
        self.append(&Entry::Layer {
            stats: stats.clone(),
            mgic: mgic.to_vec(),
            mnse: mnse.to_vec(),
        })
    }
}
