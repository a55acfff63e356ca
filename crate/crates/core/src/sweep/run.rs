use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::mpsc;

use rayon::prelude::*;
use serde::Serialize;

use super::{admissible_pairs, check_single, task_seed, CheckMode, Journal, SweepRecord};
use crate::classify::{has_dpc_predicate, DpcReason};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub q_min: u64,
    pub q_max: u64,
    pub samples: u64,
    pub seed: u64,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    pub out: PathBuf,
    pub resume: bool,
    pub exhaustive_fallback: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub pairs: usize,
    /// Pairs taken from the journal instead of recomputed.
    pub resumed: usize,
    pub satisfied: usize,
    /// Unsatisfied pairs, i.e. possible counterexamples.
    pub unsatisfied: Vec<(u64, u64)>,
}

impl SweepSummary {
    pub fn all_satisfied(&self) -> bool {
        self.unsatisfied.is_empty()
    }
}

fn cross_check_predicate(q: u64, p: u64) {
    match has_dpc_predicate(q, p) {
        Ok(v) if v.reason == DpcReason::OrderCondition => {}
        Ok(v) => log::warn!("({q}, {p}) swept but the closed-form predicate gives {:?}", v.reason),
        Err(e) => log::warn!("({q}, {p}) swept but the closed-form predicate failed: {e}"),
    }
}

/// Records are written in `(q, p)` order whatever the scheduling, so equal
/// flags give identical output up to `elapsed_ms`.
pub fn run_sweep(opts: &SweepOptions) -> Result<SweepSummary> {
    if opts.q_min > opts.q_max {
        return Err(Error::InvalidSpec(format!("q_min = {} exceeds q_max = {}", opts.q_min, opts.q_max)));
    }
    let mut journal = if opts.resume { Journal::resume(&opts.out)? } else { Journal::create(&opts.out)? };
    let all = admissible_pairs(opts.q_min, opts.q_max);
    let mut summary = SweepSummary { pairs: all.len(), ..Default::default() };
    for r in journal.prior() {
        summary.resumed += 1;
        tally(&mut summary, r);
    }
    let todo: Vec<(u64, u64)> = all.into_iter().filter(|&(q, p)| !journal.is_done(q, p)).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::InvalidSpec(format!("thread pool: {e}")))?;
    let (tx, rx) = mpsc::channel::<(usize, Result<SweepRecord>)>();

    std::thread::scope(|s| -> Result<()> {
        let todo = &todo;
        s.spawn(move || {
            pool.install(|| {
                todo.par_iter().enumerate().for_each_with(tx, |tx, (i, &(q, p))| {
                    cross_check_predicate(q, p);
                    let mode = CheckMode::Sampled {
                        samples: opts.samples,
                        seed: task_seed(opts.seed, q, p),
                        exhaustive_fallback: opts.exhaustive_fallback,
                    };
                    // the receiver only hangs up after an error
                    let _ = tx.send((i, check_single(q, p, mode)));
                })
            })
        });
        let mut pending = BTreeMap::new();
        let mut next = 0;
        for (i, rec) in rx {
            pending.insert(i, rec?);
            while let Some(rec) = pending.remove(&next) {
                if !rec.satisfied {
                    log::warn!("POSSIBLE_COUNTEREXAMPLE q={} p={} tries={}", rec.q, rec.p, rec.tries);
                }
                journal.append(&rec)?;
                tally(&mut summary, &rec);
                next += 1;
            }
        }
        Ok(())
    })?;
    Ok(summary)
}

fn tally(summary: &mut SweepSummary, rec: &SweepRecord) {
    if rec.satisfied {
        summary.satisfied += 1;
    } else {
        summary.unsatisfied.push((rec.q, rec.p));
    }
}
