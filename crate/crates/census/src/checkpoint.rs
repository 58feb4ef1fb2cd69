//! Per-shard checkpoint records, stored as JSON lines.
//!
//! Each line is `{"record": {...}, "sha256": "<hex>"}` where the digest covers the
//! compact JSON of `record`. A line that fails to parse, whose digest does not match,
//! or whose counts are inconsistent makes the whole file unreadable.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Error;

/// Result of classifying every graph in one enumeration shard.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShardRecord {
    pub order: usize,
    pub shard: usize,
    pub shards: usize,
    pub total: u64,
    /// Verdict label (`"1"`, ..., `"3.7"`, `"survived"`) to count.
    pub eliminated_by: BTreeMap<String, u64>,
    /// [`line_checksum`] of the canonical graph6 lines remaining after filter 2.2.
    pub survivors_checksum: String,
    /// Stage whose survivors are listed in `survivors`, if any.
    pub stage: Option<String>,
    pub survivors: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct Line {
    record: ShardRecord,
    sha256: String,
}

pub fn sha256_hex(data: &[u8]) -> String {
    format!("{:x}", Sha256::digest(data))
}

/// Checksum of a multiset of lines: the wrapping sum of the leading 128 bits of each
/// line's SHA-256, as 32 hex digits. Checksums of disjoint parts combine with
/// [`combine_checksums`], so the result does not depend on how the lines were split.
pub fn line_checksum<S: AsRef<str>>(lines: &[S]) -> String {
    let sum = lines.iter().fold(0u128, |acc, l| {
        let d = Sha256::digest(l.as_ref().as_bytes());
        acc.wrapping_add(u128::from_be_bytes(d[..16].try_into().expect("16 bytes")))
    });
    format!("{sum:032x}")
}

pub fn combine_checksums<S: AsRef<str>>(parts: &[S]) -> Option<String> {
    let mut sum = 0u128;
    for p in parts {
        sum = sum.wrapping_add(u128::from_str_radix(p.as_ref(), 16).ok()?);
    }
    Some(format!("{sum:032x}"))
}

fn encode_line(record: &ShardRecord) -> String {
    let body = serde_json::to_string(record).expect("records serialize");
    let line = Line {
        record: record.clone(),
        sha256: sha256_hex(body.as_bytes()),
    };
    serde_json::to_string(&line).expect("records serialize")
}

/// Appends records to a checkpoint file, one flushed line each.
pub struct Checkpoint {
    path: PathBuf,
    file: File,
}

impl Checkpoint {
    /// Reads all records from `path` (none if the file does not exist), validating each.
    pub fn load(path: &Path) -> Result<Vec<ShardRecord>, Error> {
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        let corrupt = |record: usize, reason: &str| Error::CorruptCheckpoint {
            path: path.to_path_buf(),
            record,
            reason: reason.to_string(),
        };
        let mut out = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let parsed: Line = serde_json::from_str(&line).map_err(|e| corrupt(i + 1, &e.to_string()))?;
            let body = serde_json::to_string(&parsed.record).expect("records serialize");
            if sha256_hex(body.as_bytes()) != parsed.sha256 {
                return Err(corrupt(i + 1, "checksum mismatch"));
            }
            let r = parsed.record;
            if u128::from_str_radix(&r.survivors_checksum, 16).is_err() {
                return Err(corrupt(i + 1, "bad survivor checksum"));
            }
            if r.eliminated_by.values().sum::<u64>() != r.total || r.shard >= r.shards {
                return Err(corrupt(i + 1, "inconsistent counts"));
            }
            if let Some(stage) = &r.stage {
                if r.survivors.len() as u64 > r.total || stage.is_empty() {
                    return Err(corrupt(i + 1, "inconsistent survivor list"));
                }
            }
            out.push(r);
        }
        Ok(out)
    }

    /// Rewrites `path` to hold exactly `records`, then opens it for appending.
    pub fn create(path: &Path, records: &[ShardRecord]) -> Result<Checkpoint, Error> {
        let tmp = path.with_extension("tmp");
        {
            let mut f = File::create(&tmp)?;
            for r in records {
                writeln!(f, "{}", encode_line(r))?;
            }
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        let file = OpenOptions::new().append(true).open(path)?;
        Ok(Checkpoint {
            path: path.to_path_buf(),
            file,
        })
    }

    pub fn append(&mut self, record: &ShardRecord) -> Result<(), Error> {
        writeln!(self.file, "{}", encode_line(record))?;
        self.file.flush()?;
        Ok(())
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}
