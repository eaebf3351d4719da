//! Vendored OEIS b-files and the b-file parser.
//!
//! Header lines `# key: value` carry metadata; `offset` and `sign` describe
//! how a sequence lines up with a computed coefficient list:
//! `a(k) = sign · coefficient[k]` for `k = offset, offset + 1, …`.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;

use crate::error::{Error, Result};

const VENDORED: &[(&str, &str)] = &[
    ("A003116", include_str!("../fixtures/A003116.txt")),
    ("A039924", include_str!("../fixtures/A039924.txt")),
];

/// One b-file: `(index, value)` pairs plus header metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct Sequence {
    pub id: String,
    pub terms: Vec<(i64, BigInt)>,
    pub metadata: BTreeMap<String, String>,
}

impl Sequence {
    /// First index, from the data.
    pub fn offset(&self) -> Option<i64> {
        self.terms.first().map(|(i, _)| *i)
    }

    /// `sign` from the header; `+1` when absent.
    pub fn sign(&self) -> Result<i64> {
        match self.metadata.get("sign").map(String::as_str) {
            None | Some("+1") | Some("1") => Ok(1),
            Some("-1") => Ok(-1),
            Some(other) => Err(Error::Parse(format!("{}: bad sign {other:?}", self.id))),
        }
    }

    pub fn values(&self) -> Vec<BigInt> {
        self.terms.iter().map(|(_, v)| v.clone()).collect()
    }

    /// Compares against `coeffs[k]` for every listed index `k`, after the
    /// header's sign. Returns the first index that differs or is missing.
    pub fn first_mismatch(&self, coeffs: &[BigInt]) -> Result<Option<i64>> {
        let sign = BigInt::from(self.sign()?);
        for (k, v) in &self.terms {
            let got = usize::try_from(*k).ok().and_then(|i| coeffs.get(i));
            match got {
                Some(c) if &(c * &sign) == v => {}
                _ => return Ok(Some(*k)),
            }
        }
        Ok(None)
    }
}

/// Parses b-file text. Blank lines and `#` lines are skipped; every other
/// line must be `index value` with indices contiguous.
pub fn parse_bfile(id: &str, text: &str) -> Result<Sequence> {
    let mut terms: Vec<(i64, BigInt)> = Vec::new();
    let mut metadata = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((k, v)) = comment.split_once(':') {
                let key = k.trim();
                if !key.is_empty() && !key.contains(' ') {
                    metadata.insert(key.to_string(), v.trim().to_string());
                }
            }
            continue;
        }
        let bad = || Error::MalformedBFile { line: lineno + 1, text: raw.to_string() };
        let mut parts = line.split_whitespace();
        let (Some(i), Some(v), None) = (parts.next(), parts.next(), parts.next()) else { return Err(bad()) };
        let i: i64 = i.parse().map_err(|_| bad())?;
        let v: BigInt = v.parse().map_err(|_| bad())?;
        if let Some((last, _)) = terms.last() {
            if i != last + 1 {
                return Err(bad());
            }
        }
        terms.push((i, v));
    }
    if let Some(declared) = metadata.get("offset") {
        let first = terms.first().map(|(i, _)| i.to_string());
        if first.as_deref() != Some(declared.as_str()) {
            return Err(Error::Parse(format!("{id}: declared offset {declared} but data starts at {first:?}")));
        }
    }
    Ok(Sequence { id: id.to_string(), terms, metadata })
}

/// Sequences keyed by OEIS id.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FixtureSet {
    pub sequences: BTreeMap<String, Sequence>,
}

impl FixtureSet {
    /// The fixtures compiled into the crate.
    pub fn vendored() -> Result<Self> {
        let mut set = FixtureSet::default();
        for (id, text) in VENDORED {
            set.sequences.insert(id.to_string(), parse_bfile(id, text)?);
        }
        Ok(set)
    }

    /// Vendored fixtures, each overridden by `dir/<id>.txt` when present.
    pub fn load(dir: Option<&Path>) -> Result<Self> {
        let mut set = Self::vendored()?;
        if let Some(dir) = dir {
            for id in set.sequences.keys().cloned().collect::<Vec<_>>() {
                let path = dir.join(format!("{id}.txt"));
                if path.exists() {
                    let text = std::fs::read_to_string(&path)?;
                    set.sequences.insert(id.clone(), parse_bfile(&id, &text)?);
                }
            }
        }
        Ok(set)
    }

    pub fn get(&self, id: &str) -> Result<&Sequence> {
        self.sequences.get(id).ok_or_else(|| Error::InvalidArgument(format!("no fixture for {id}")))
    }
}

/// Validates a downloaded b-file and writes it to `dir/<id>.txt` atomically.
pub fn store_bfile(dir: &Path, id: &str, text: &str) -> Result<Sequence> {
    let seq = parse_bfile(id, text)?;
    std::fs::create_dir_all(dir)?;
    let tmp = tempfile::NamedTempFile::new_in(dir)?;
    std::fs::write(tmp.path(), text)?;
    tmp.persist(dir.join(format!("{id}.txt"))).map_err(|e| Error::Io(e.to_string()))?;
    Ok(seq)
}

/// OEIS b-file URL for an id like `A003116`.
pub fn bfile_url(id: &str) -> Result<String> {
    let digits = id.strip_prefix('A').filter(|d| d.len() == 6 && d.chars().all(|c| c.is_ascii_digit()));
    let digits = digits.ok_or_else(|| Error::InvalidArgument(format!("not an OEIS id: {id:?}")))?;
    Ok(format!("https://oeis.org/{id}/b{digits}.txt"))
}
