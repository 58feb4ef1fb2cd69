//! The census driver: enumerate, classify, count, and record survivors per shard.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::fs::File;
use std::io::BufWriter;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sicgraph_core::cascade::{Classifier, FilterId};
use sicgraph_core::enumerate::{expand, shard_of, split_roots, MAX_CENSUS_ORDER};
use sicgraph_core::{canonical_form, graph6, Graph};

use crate::checkpoint::{combine_checksums, line_checksum, Checkpoint, ShardRecord};
use crate::error::Error;

pub const DEFAULT_SHARDS: usize = 64;

#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub orders: RangeInclusive<usize>,
    /// Shards per order.
    pub shards: usize,
    /// Shards to run; `None` runs all of them.
    pub shard_indices: Option<Vec<usize>>,
    /// Worker threads; `None` uses the rayon default.
    pub threads: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    /// Record the graphs remaining after this stage.
    pub record_stage: Option<FilterId>,
}

impl CensusConfig {
    pub fn new(orders: RangeInclusive<usize>) -> Self {
        CensusConfig {
            orders,
            shards: DEFAULT_SHARDS,
            shard_indices: None,
            threads: None,
            checkpoint: None,
            record_stage: None,
        }
    }
}

/// Graphs remaining after a stage, as sorted canonical graph6 strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivorList {
    pub stage: String,
    pub count: u64,
    #[serde(skip)]
    pub graphs: Vec<String>,
}

/// Counts for one order. `remaining` holds the number of graphs left after each filter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub order: usize,
    pub total: u64,
    pub remaining: BTreeMap<String, u64>,
    pub eliminated_by: BTreeMap<String, u64>,
    pub shards: usize,
    pub shards_completed: usize,
    /// Order-independent checksum of the canonical graph6 lines remaining after filter 2.2.
    pub survivors_checksum: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub survivors: Option<SurvivorList>,
}

impl CensusReport {
    pub fn remaining_after(&self, f: FilterId) -> u64 {
        self.remaining[f.label()]
    }

    /// Graphs that passed every filter.
    pub fn survivors_of_cascade(&self) -> u64 {
        self.remaining_after(FilterId::Pattern(7))
    }
}

/// Label-indexed counts over the ten filters plus `survived`.
fn empty_counts() -> BTreeMap<String, u64> {
    FilterId::CASCADE.iter().chain([FilterId::Survived].iter()).map(|f| (f.label().to_string(), 0)).collect()
}

/// Classifies every graph in one shard.
pub fn run_shard(classifier: &Classifier, n: usize, shard: usize, shards: usize, roots: &[Graph], stage: Option<FilterId>) -> ShardRecord {
    let mut eliminated = [0u64; 11];
    let mut after_pairs = Vec::new();
    let mut listed = Vec::new();
    let mut total = 0;
    for root in roots {
        total += expand(root, n, &mut |g: &Graph| {
            let pos = classifier.classify(g).filter.position();
            eliminated[pos] += 1;
            if pos > FilterId::PairStructure.position() {
                after_pairs.push(graph6::encode(canonical_form(g).graph()));
            }
            if stage.is_some_and(|s| pos > s.position()) {
                listed.push(graph6::encode(canonical_form(g).graph()));
            }
        });
    }
    listed.sort_unstable();
    let mut eliminated_by = empty_counts();
    for (f, c) in FilterId::CASCADE.iter().chain([FilterId::Survived].iter()).zip(eliminated) {
        eliminated_by.insert(f.label().to_string(), c);
    }
    ShardRecord {
        order: n,
        shard,
        shards,
        total,
        eliminated_by,
        survivors_checksum: line_checksum(&after_pairs),
        stage: stage.map(|s| s.label().to_string()),
        survivors: listed,
    }
}

/// Runs the census over `config.orders`, resuming from and appending to the checkpoint.
pub fn run_census(config: &CensusConfig) -> Result<Vec<CensusReport>, Error> {
    let (lo, hi) = (*config.orders.start(), *config.orders.end());
    if lo < 1 || hi > MAX_CENSUS_ORDER || lo > hi {
        return Err(Error::OrderRange(format!("{lo}..{hi}")));
    }
    let k = config.shards.max(1);
    let selected: Vec<usize> = match &config.shard_indices {
        Some(ix) => {
            if let Some(&bad) = ix.iter().find(|&&i| i >= k) {
                return Err(sicgraph_core::EnumerateError::InvalidShard { shard: bad, total: k }.into());
            }
            ix.clone()
        }
        None => (0..k).collect(),
    };
    let stage_label = config.record_stage.map(|s| s.label().to_string());

    let mut done: HashMap<(usize, usize), ShardRecord> = HashMap::new();
    let checkpoint = match &config.checkpoint {
        Some(path) => {
            let mut kept = Vec::new();
            for r in Checkpoint::load(path)? {
                if r.shards != k {
                    return Err(Error::ShardLayout { expected: k, found: r.shards });
                }
                if done.contains_key(&(r.order, r.shard)) {
                    return Err(Error::ShardOverlap { order: r.order, shard: r.shard });
                }
                // records made for another survivor stage are redone
                if r.stage == stage_label {
                    done.insert((r.order, r.shard), r.clone());
                    kept.push(r);
                }
            }
            Some(Mutex::new(Checkpoint::create(path, &kept)?))
        }
        None => None,
    };

    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(t) = config.threads {
            b = b.num_threads(t);
        }
        b.build().expect("thread pool")
    };
    let classifier = Classifier::new();
    let mut reports = Vec::new();
    for n in lo..=hi {
        let mut by_shard: Vec<Vec<Graph>> = vec![Vec::new(); k];
        for root in split_roots(n) {
            by_shard[shard_of(&root, k)].push(root);
        }
        let todo: Vec<usize> = selected.iter().copied().filter(|s| !done.contains_key(&(n, *s))).collect();
        let fresh: Vec<ShardRecord> = pool.install(|| {
            todo.par_iter()
                .map(|&s| {
                    let r = run_shard(&classifier, n, s, k, &by_shard[s], config.record_stage);
                    if let Some(ck) = &checkpoint {
                        ck.lock().expect("checkpoint lock").append(&r)?;
                    }
                    Ok(r)
                })
                .collect::<Result<_, Error>>()
        })?;
        let records: Vec<&ShardRecord> = selected.iter().filter_map(|s| done.get(&(n, *s))).chain(fresh.iter()).collect();
        reports.push(aggregate(n, k, &records, config.record_stage));
    }
    Ok(reports)
}

fn aggregate(n: usize, shards: usize, records: &[&ShardRecord], stage: Option<FilterId>) -> CensusReport {
    let mut eliminated_by = empty_counts();
    let mut total = 0;
    let mut listed: Vec<String> = Vec::new();
    let mut digests: Vec<&str> = Vec::new();
    for r in records {
        total += r.total;
        for (label, c) in &r.eliminated_by {
            *eliminated_by.get_mut(label).expect("known label") += c;
        }
        listed.extend(r.survivors.iter().cloned());
        digests.push(&r.survivors_checksum);
    }
    listed.sort_unstable();
    let mut remaining = BTreeMap::new();
    let mut left = total;
    for f in FilterId::CASCADE {
        left -= eliminated_by[f.label()];
        remaining.insert(f.label().to_string(), left);
    }
    CensusReport {
        order: n,
        total,
        remaining,
        eliminated_by,
        shards,
        shards_completed: records.len(),
        survivors_checksum: combine_checksums(&digests).expect("validated checksums"),
        survivors: stage.map(|s| SurvivorList {
            stage: s.label().to_string(),
            count: listed.len() as u64,
            graphs: listed,
        }),
    }
}

/// Writes the recorded survivors of `reports` after `stage`, sorted by order then
/// canonical graph6, and returns how many were written.
pub fn emit_survivors(reports: &[CensusReport], stage: FilterId, path: &Path) -> Result<u64, Error> {
    let mut lines = Vec::new();
    for r in reports {
        match &r.survivors {
            Some(s) if s.stage == stage.label() => lines.extend(s.graphs.iter().map(String::as_str)),
            _ => return Err(Error::StageNotRecorded(stage.label().to_string())),
        }
    }
    let mut w = BufWriter::new(File::create(path)?);
    for l in &lines {
        std::io::Write::write_all(&mut w, l.as_bytes())?;
        std::io::Write::write_all(&mut w, b"\n")?;
    }
    std::io::Write::flush(&mut w)?;
    Ok(lines.len() as u64)
}

pub fn reports_to_json(reports: &[CensusReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

/// Fixed-width table: one row per order, columns for the total and each filter.
pub fn reports_to_table(reports: &[CensusReport]) -> String {
    let mut out = format!("{:>3} {:>12}", "n", "graphs");
    for f in FilterId::CASCADE {
        let _ = write!(out, " {:>10}", f.label());
    }
    out.push('\n');
    for r in reports {
        let _ = write!(out, "{:>3} {:>12}", r.order, r.total);
        for f in FilterId::CASCADE {
            let _ = write!(out, " {:>10}", r.remaining_after(f));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders_match_known_counts() {
        let reports = run_census(&CensusConfig::new(1..=7)).unwrap();
        let totals: Vec<u64> = reports.iter().map(|r| r.total).collect();
        assert_eq!(totals, [1, 2, 4, 11, 34, 156, 1044]);
        let after: Vec<(u64, u64, u64)> = reports
            .iter()
            .map(|r| (r.remaining_after(FilterId::Disconnected), r.remaining_after(FilterId::CliqueBound), r.remaining_after(FilterId::PairStructure)))
            .collect();
        assert_eq!(after, [(1, 0, 0), (0, 0, 0), (0, 0, 0), (1, 0, 0), (8, 1, 0), (68, 2, 0), (662, 28, 0)]);
        assert!(reports.iter().all(|r| r.survivors_of_cascade() == 0));
    }

    #[test]
    fn stage_one_survivor_at_order_4_is_p4() {
        let mut cfg = CensusConfig::new(4..=4);
        cfg.record_stage = Some(FilterId::Disconnected);
        let reports = run_census(&cfg).unwrap();
        let s = reports[0].survivors.as_ref().unwrap();
        assert_eq!(s.graphs, [graph6::encode(canonical_form(&Graph::path(4).unwrap()).graph())]);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.g6");
        assert_eq!(emit_survivors(&reports, FilterId::Disconnected, &path).unwrap(), 1);
        assert!(matches!(emit_survivors(&reports, FilterId::CliqueBound, &path), Err(Error::StageNotRecorded(_))));
    }

    #[test]
    fn json_schema() {
        let reports = run_census(&CensusConfig::new(5..=5)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&reports_to_json(&reports)).unwrap();
        let r = &v[0];
        assert_eq!(r["order"], 5);
        assert_eq!(r["total"], 34);
        let keys: Vec<&str> = r["remaining"].as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["1", "2.1", "2.2", "3.1", "3.2", "3.3", "3.4", "3.5", "3.6", "3.7"]);
        assert!(reports_to_table(&reports).contains("  5           34"));
    }

    #[test]
    fn bad_ranges() {
        assert!(matches!(run_census(&CensusConfig::new(0..=3)), Err(Error::OrderRange(_))));
        assert!(matches!(run_census(&CensusConfig::new(5..=13)), Err(Error::OrderRange(_))));
        let mut cfg = CensusConfig::new(3..=3);
        cfg.shard_indices = Some(vec![64]);
        assert!(run_census(&cfg).is_err());
    }
}
