//! Memo table of correlators with an optional append-only text cache.
//!
//! Each cache line is `g;k_1,...,k_n;p/q` with exponents sorted ascending.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use num_traits::Zero;

use super::CorrelatorKey;
use crate::error::{Result, TautError};
use crate::exact::{format_rational, parse_rational, BigRational};

#[derive(Debug, Default, Clone)]
pub struct IntersectionTable {
    entries: HashMap<CorrelatorKey, BigRational>,
    cache: Option<PathBuf>,
    pending: Vec<CorrelatorKey>,
}

impl IntersectionTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// A table backed by `path`; existing lines are loaded, a missing file is
    /// created on the first [`flush`](Self::flush).
    pub fn with_cache(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut table = IntersectionTable {
            cache: Some(path.clone()),
            ..Self::default()
        };
        if path.exists() {
            let reader = BufReader::new(File::open(&path)?);
            for (lineno, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let (key, value) = parse_line(&line).map_err(|e| {
                    TautError::Parse(format!("{}:{}: {e}", path.display(), lineno + 1))
                })?;
                table.store(key, value)?;
            }
        }
        Ok(table)
    }

    pub fn cache_path(&self) -> Option<&Path> {
        self.cache.as_deref()
    }

    pub fn get(&self, key: &CorrelatorKey) -> Option<&BigRational> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in key order.
    pub fn sorted_entries(&self) -> Vec<(&CorrelatorKey, &BigRational)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    /// Adds an entry. Re-inserting an equal value is a no-op; a different
    /// value is an error.
    pub fn insert(&mut self, key: CorrelatorKey, value: BigRational) -> Result<()> {
        if self.store(key.clone(), value)? {
            self.pending.push(key);
        }
        Ok(())
    }

    fn store(&mut self, key: CorrelatorKey, value: BigRational) -> Result<bool> {
        if !key.is_top_degree() && !value.is_zero() {
            return Err(TautError::Invariant(format!(
                "{key} is off the top degree but has value {}",
                format_rational(&value)
            )));
        }
        match self.entries.get(&key) {
            Some(old) if *old == value => Ok(false),
            Some(old) => Err(TautError::Invariant(format!(
                "{key}: conflicting values {} and {}",
                format_rational(old),
                format_rational(&value)
            ))),
            None => {
                self.entries.insert(key, value);
                Ok(true)
            }
        }
    }

    /// Appends entries added since the last flush to the cache file; returns
    /// how many lines were written.
    pub fn flush(&mut self) -> Result<usize> {
        let Some(path) = &self.cache else {
            return Ok(0);
        };
        if self.pending.is_empty() {
            return Ok(0);
        }
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        let mut out = String::new();
        for key in &self.pending {
            out.push_str(&format_line(key, &self.entries[key]));
            out.push('\n');
        }
        file.write_all(out.as_bytes())?;
        let n = self.pending.len();
        self.pending.clear();
        Ok(n)
    }
}

pub(crate) fn format_line(key: &CorrelatorKey, value: &BigRational) -> String {
    let exps: Vec<String> = key.exps().iter().map(u32::to_string).collect();
    format!("{};{};{}", key.g, exps.join(","), format_rational(value))
}

pub(crate) fn parse_line(line: &str) -> Result<(CorrelatorKey, BigRational)> {
    let fields: Vec<&str> = line.trim().split(';').collect();
    let [g, exps, value] = fields[..] else {
        return Err(TautError::Parse(format!("expected 3 fields in {line:?}")));
    };
    let g: u32 = g
        .parse()
        .map_err(|_| TautError::Parse(format!("bad genus {g:?}")))?;
    let exps = if exps.is_empty() {
        Vec::new()
    } else {
        exps.split(',')
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| TautError::Parse(format!("bad exponent {t:?}")))
            })
            .collect::<Result<Vec<u32>>>()?
    };
    let key = CorrelatorKey::new(g, exps)?;
    Ok((key, parse_rational(value)?))
}
