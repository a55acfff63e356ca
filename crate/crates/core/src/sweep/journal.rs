use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::SweepRecord;
use crate::error::{Error, Result};

pub fn journal_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".journal");
    PathBuf::from(s)
}

/// SHA-256 of the record's JSON with `elapsed_ms` zeroed.
pub fn record_digest(rec: &SweepRecord) -> String {
    let stable = SweepRecord { elapsed_ms: 0, ..rec.clone() };
    let json = serde_json::to_vec(&stable).expect("records serialize");
    hex::encode(Sha256::digest(json))
}

/// Append-only list of completed `(q, p)` keys, one `q p digest` line each,
/// paired with the JSONL output it vouches for.
pub struct Journal {
    out_path: PathBuf,
    journal_path: PathBuf,
    out: BufWriter<File>,
    journal: BufWriter<File>,
    done: HashMap<(u64, u64), String>,
    prior: Vec<SweepRecord>,
}

impl Journal {
    /// Starts fresh, truncating both files.
    pub fn create(out_path: &Path) -> Result<Self> {
        let jp = journal_path(out_path);
        let out = File::create(out_path).map_err(|e| Error::io(out_path, e))?;
        let journal = File::create(&jp).map_err(|e| Error::io(&jp, e))?;
        Ok(Journal {
            out_path: out_path.to_owned(),
            journal_path: jp,
            out: BufWriter::new(out),
            journal: BufWriter::new(journal),
            done: HashMap::new(),
            prior: Vec::new(),
        })
    }

    /// Reopens an earlier run. Output lines not vouched for by the journal
    /// (a torn tail, or a record written just before a crash) are dropped, so
    /// replaying the same crash twice gives the same files.
    pub fn resume(out_path: &Path) -> Result<Self> {
        let jp = journal_path(out_path);
        if !jp.exists() {
            return Self::create(out_path);
        }
        let done = read_journal(&jp)?;
        let mut kept: Vec<(String, SweepRecord)> = Vec::new();
        let mut vouched: HashMap<(u64, u64), String> = HashMap::new();
        if out_path.exists() {
            let f = File::open(out_path).map_err(|e| Error::io(out_path, e))?;
            for line in BufReader::new(f).lines() {
                let line = line.map_err(|e| Error::io(out_path, e))?;
                // an unparsable line can only be a torn final write
                let Ok(rec) = serde_json::from_str::<SweepRecord>(&line) else { continue };
                let key = (rec.q, rec.p);
                let digest = record_digest(&rec);
                if done.get(&key) == Some(&digest) && !vouched.contains_key(&key) {
                    vouched.insert(key, digest);
                    kept.push((line, rec));
                }
            }
        }
        for key in done.keys().filter(|k| !vouched.contains_key(k)) {
            log::warn!("journaled pair {key:?} has no matching output record; recomputing");
        }
        let tmp = out_path.with_extension("resume.tmp");
        write_lines(&tmp, kept.iter().map(|(line, _)| line.clone()))?;
        fs::rename(&tmp, out_path).map_err(|e| Error::io(out_path, e))?;
        write_lines(&jp, kept.iter().map(|(_, r)| format!("{} {} {}", r.q, r.p, vouched[&(r.q, r.p)])))?;
        let open = |p: &Path| OpenOptions::new().append(true).open(p).map_err(|e| Error::io(p, e));
        Ok(Journal {
            out: BufWriter::new(open(out_path)?),
            journal: BufWriter::new(open(&jp)?),
            out_path: out_path.to_owned(),
            journal_path: jp,
            done: vouched,
            prior: kept.into_iter().map(|(_, r)| r).collect(),
        })
    }

    /// Records carried over by [`Journal::resume`].
    pub fn prior(&self) -> &[SweepRecord] {
        &self.prior
    }

    pub fn is_done(&self, q: u64, p: u64) -> bool {
        self.done.contains_key(&(q, p))
    }

    /// Writes the record, then journals it; both are flushed before returning.
    pub fn append(&mut self, rec: &SweepRecord) -> Result<()> {
        let line = serde_json::to_string(rec).expect("records serialize");
        let digest = record_digest(rec);
        writeln!(self.out, "{line}").and_then(|_| self.out.flush()).map_err(|e| Error::io(&self.out_path, e))?;
        writeln!(self.journal, "{} {} {digest}", rec.q, rec.p)
            .and_then(|_| self.journal.flush())
            .map_err(|e| Error::io(&self.journal_path, e))?;
        self.done.insert((rec.q, rec.p), digest);
        Ok(())
    }
}

fn write_lines(path: &Path, lines: impl Iterator<Item = String>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path).map_err(|e| Error::io(path, e))?);
    for line in lines {
        writeln!(w, "{line}").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn read_journal(path: &Path) -> Result<HashMap<(u64, u64), String>> {
    let f = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut done = HashMap::new();
    for line in BufReader::new(f).lines() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let parts: Vec<&str> = line.split_whitespace().collect();
        // a torn last line is ignored
        if let [q, p, d] = parts[..] {
            if let (Ok(q), Ok(p), true) = (q.parse(), p.parse(), d.len() == 64) {
                done.insert((q, p), d.to_owned());
            }
        }
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::Mode;

    fn rec(q: u64, p: u64, ms: u64) -> SweepRecord {
        SweepRecord {
            q,
            l: q,
            r: 1,
            p,
            d: 1,
            t_encoding: 3,
            h: Some([1, 2, 3, 4]),
            tries: 1,
            satisfied: true,
            fraction: None,
            elapsed_ms: ms,
            mode: Mode::Sampled,
        }
    }

    #[test]
    fn digest_ignores_elapsed() {
        assert_eq!(record_digest(&rec(13, 7, 1)), record_digest(&rec(13, 7, 900)));
        assert_ne!(record_digest(&rec(13, 7, 1)), record_digest(&rec(27, 7, 1)));
    }

    #[test]
    fn resume_drops_unjournaled_tail() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("s.jsonl");
        {
            let mut j = Journal::create(&out).unwrap();
            j.append(&rec(13, 7, 5)).unwrap();
            j.append(&rec(27, 7, 5)).unwrap();
        }
        // a record written without its journal line, then a torn line
        let mut f = OpenOptions::new().append(true).open(&out).unwrap();
        writeln!(f, "{}", serde_json::to_string(&rec(41, 7, 5)).unwrap()).unwrap();
        write!(f, "{{\"q\":43,").unwrap();
        drop(f);
        for _ in 0..2 {
            let j = Journal::resume(&out).unwrap();
            assert!(j.is_done(13, 7) && j.is_done(27, 7) && !j.is_done(41, 7));
            assert_eq!(j.prior().len(), 2);
            drop(j);
            assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 2);
            assert_eq!(fs::read_to_string(journal_path(&out)).unwrap().lines().count(), 2);
        }
    }
}
