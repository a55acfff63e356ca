//! Sweeps over odd prime powers: one record per admissible `(q, p)` saying
//! whether a sampled (or enumerated) `h` satisfies the orbit-sum condition.

mod journal;
mod run;

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::criteria::{exhaustive_count, search_companion};
use crate::error::{Error, Result};
use crate::field::PrimePower;
use crate::instance::Instance;

pub use journal::{journal_path, record_digest, Journal};
pub use run::{run_sweep, SweepOptions, SweepSummary};

pub const DEFAULT_SAMPLES: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mode {
    Sampled,
    Exhaustive,
}

/// One line of sweep output. Field order is the serialization order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub q: u64,
    pub l: u64,
    pub r: u32,
    pub p: u64,
    pub d: u64,
    pub t_encoding: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<[u32; 4]>,
    pub tries: u64,
    pub satisfied: bool,
    /// `satisfied/total` over `G \ D`, unreduced.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fraction: Option<String>,
    pub elapsed_ms: u64,
    pub mode: Mode,
}

/// How `check_single` looks for a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Sampled { samples: u64, seed: u64, exhaustive_fallback: bool },
    Exhaustive,
}

/// Reason `(q, p)` is outside the swept family, if it is.
pub fn admissibility(q: u64, p: u64) -> Option<String> {
    match arith::prime_power(q) {
        None => return Some(format!("{q} is not a prime power")),
        Some((2, _)) => return Some(format!("q = {q} is even")),
        _ => {}
    }
    if !arith::is_prime(p) {
        Some(format!("{p} is not prime"))
    } else if p <= 5 {
        Some(format!("p = {p} is not greater than 5"))
    } else if (q + 1) % p != 0 {
        Some(format!("{p} does not divide q + 1 = {}", q + 1))
    } else {
        None
    }
}

/// Admissible pairs with `q_min ≤ q ≤ q_max`, ordered by `q` then `p`.
pub fn admissible_pairs(q_min: u64, q_max: u64) -> Vec<(u64, u64)> {
    (q_min.max(3)..=q_max)
        .filter(|&q| q % 2 == 1 && arith::prime_power(q).is_some())
        .flat_map(|q| arith::prime_divisors(q + 1).into_iter().filter(|&p| p > 5).map(move |p| (q, p)))
        .collect()
}

/// Per-pair seed, independent of scheduling.
pub fn task_seed(seed: u64, q: u64, p: u64) -> u64 {
    arith::mix64(arith::mix64(arith::mix64(seed) ^ q) ^ p)
}

pub fn check_single(q: u64, p: u64, mode: CheckMode) -> Result<SweepRecord> {
    if let Some(reason) = admissibility(q, p) {
        return Err(Error::InadmissiblePair { q, p, reason });
    }
    let start = Instant::now();
    let pp = PrimePower::from_order(q)?;
    let inst = Instance::new(q, p)?;
    // `tries` counts every h examined, sampled or enumerated
    let exhaustive = |sampled: u64| -> Result<(Option<[u32; 4]>, u64, Option<String>)> {
        let c = exhaustive_count(&inst)?;
        let fraction = format!("{}/{}", c.satisfied, c.total);
        Ok((c.first.map(|h| h.encoding()), sampled + c.total, Some(fraction)))
    };
    let (h, tries, fraction) = match mode {
        CheckMode::Exhaustive => exhaustive(0)?,
        CheckMode::Sampled { samples, seed, exhaustive_fallback } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let out = search_companion(&inst, &mut rng, samples, false)?;
            match out.h {
                Some(h) => (Some(h.encoding()), out.tries, None),
                None if exhaustive_fallback => exhaustive(out.tries)?,
                None => (None, out.tries, None),
            }
        }
    };
    Ok(SweepRecord {
        q,
        l: pp.l,
        r: pp.r,
        p,
        d: inst.gens.d,
        t_encoding: inst.gens.t.encoding(),
        satisfied: h.is_some(),
        h,
        tries,
        mode: if fraction.is_some() { Mode::Exhaustive } else { Mode::Sampled },
        fraction,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
