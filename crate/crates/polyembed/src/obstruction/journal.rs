use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::PointResult;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    result: PointResult,
}

/// Append-only JSON-lines checkpoint of finished a0 points, keyed by interval.
pub struct Journal {
    key: String,
    done: HashMap<(i64, i64), PointResult>,
    file: Mutex<File>,
}

impl Journal {
    pub fn open(path: &Path, key: &str) -> Result<Self> {
        let mut done = HashMap::new();
        if path.exists() {
            let r = BufReader::new(File::open(path)?);
            for line in r.lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                // a torn last line from an interrupted run is skipped
                let Ok(e) = serde_json::from_str::<Entry>(&line) else { continue };
                if e.key == key {
                    done.insert((e.result.p, e.result.q), e.result);
                }
            }
        }
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        // keep the next record off a torn line
        let len = file.metadata()?.len();
        if len > 0 && std::fs::read(path)?.last() != Some(&b'\n') {
            file.write_all(b"\n")?;
        }
        Ok(Journal { key: key.to_string(), done, file: Mutex::new(file) })
    }

    pub fn lookup(&self, p: i64, q: i64) -> Option<PointResult> {
        self.done.get(&(p, q)).cloned()
    }

    pub fn completed(&self) -> usize {
        self.done.len()
    }

    pub fn record(&self, r: &PointResult) -> Result<()> {
        let e = Entry { key: self.key.clone(), result: r.clone() };
        let mut line = serde_json::to_string(&e).map_err(|e| Error::Io(e.to_string()))?;
        line.push('\n');
        let mut f = self.file.lock().expect("journal lock");
        f.write_all(line.as_bytes())?;
        f.flush()?;
        Ok(())
    }
}
