//! LZ77, LZ-End and C-factorizations.
//!
//! All three are greedy left-to-right parses. LZ77 here is the
//! non-overlapping variant: a phrase's source lies entirely before the
//! phrase. LZ-End additionally requires the source to end where an earlier
//! phrase ends. C-factorization phrases are either a fresh letter or a
//! longest previous factor, with no trailing mismatch letter.
//!
//! Two engines compute each scheme: [`Engine::Naive`] scans the text
//! directly and is the reference; [`Engine::Indexed`] runs over a suffix
//! automaton and must agree with it phrase for phrase.

mod indexed;
mod naive;
mod sam;
mod validate;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use validate::validate;

/// Longest input the direct-scan engines accept.
pub const NAIVE_MAX_LEN: usize = 65536;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Scheme {
    #[serde(rename = "LZ77")]
    Lz77,
    #[serde(rename = "LZEND")]
    LzEnd,
    #[serde(rename = "CFACT")]
    CFact,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Lz77, Scheme::LzEnd, Scheme::CFact];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Lz77 => "LZ77",
            Scheme::LzEnd => "LZEND",
            Scheme::CFact => "CFACT",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lz77" => Ok(Scheme::Lz77),
            "lzend" | "lz-end" => Ok(Scheme::LzEnd),
            "cfact" | "c" => Ok(Scheme::CFact),
            _ => Err(Error::domain("Scheme::from_str", format!("unknown scheme {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Naive,
    #[default]
    Indexed,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Naive => "naive",
            Engine::Indexed => "indexed",
        })
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "naive" => Ok(Engine::Naive),
            "indexed" => Ok(Engine::Indexed),
            _ => Err(Error::domain("Engine::from_str", format!("unknown engine {s:?}"))),
        }
    }
}

/// Where a phrase's copied part comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SourceRef {
    /// Nothing is copied: a single fresh letter.
    None,
    /// Copy starting at this position, ending at or before the phrase start.
    Window(usize),
    /// Copy ending where phrase `j` ends (`j` is a 0-based phrase index).
    Boundary(usize),
}

impl SourceRef {
    pub fn kind(&self) -> &'static str {
        match self {
            SourceRef::None => "none",
            SourceRef::Window(_) => "window",
            SourceRef::Boundary(_) => "boundary",
        }
    }

    pub fn value(&self) -> Option<usize> {
        match *self {
            SourceRef::None => None,
            SourceRef::Window(v) | SourceRef::Boundary(v) => Some(v),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Phrase {
    pub start: usize,
    pub len: usize,
    pub src: SourceRef,
    /// The last letter is a literal rather than part of the copy.
    pub has_sentinel: bool,
}

impl Phrase {
    /// Number of letters taken from the source.
    pub fn copy_len(&self) -> usize {
        if self.has_sentinel {
            self.len - 1
        } else {
            self.len
        }
    }

    pub fn end(&self) -> usize {
        self.start + self.len
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub scheme: Scheme,
    pub phrases: Vec<Phrase>,
    pub input_len: usize,
}

impl Factorization {
    pub fn count(&self) -> usize {
        self.phrases.len()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.phrases.iter().map(|p| p.len).collect()
    }

    /// Text of every phrase, borrowing from `w`.
    pub fn phrase_texts<'a>(&self, w: &'a [u8]) -> Result<Vec<&'a [u8]>> {
        check_tiling(self, w.len())?;
        Ok(self.phrases.iter().map(|p| &w[p.start..p.end()]).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("factorization serializes")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Computes `scheme` over `w` with `engine`.
pub fn factorize(w: &[u8], scheme: Scheme, engine: Engine) -> Result<Factorization> {
    if engine == Engine::Naive && w.len() > NAIVE_MAX_LEN {
        return Err(Error::ResourceLimit {
            what: "naive engine input length",
            value: w.len() as u64,
            max: NAIVE_MAX_LEN as u64,
        });
    }
    let phrases = match (scheme, engine) {
        (Scheme::Lz77, Engine::Naive) => naive::lz77(w),
        (Scheme::Lz77, Engine::Indexed) => indexed::lz77(w),
        (Scheme::LzEnd, Engine::Naive) => naive::lzend(w),
        (Scheme::LzEnd, Engine::Indexed) => indexed::lzend(w),
        (Scheme::CFact, Engine::Naive) => naive::cfact(w),
        (Scheme::CFact, Engine::Indexed) => indexed::cfact(w),
    };
    Ok(Factorization {
        scheme,
        phrases,
        input_len: w.len(),
    })
}

pub fn lz77(w: &[u8], engine: Engine) -> Result<Factorization> {
    factorize(w, Scheme::Lz77, engine)
}

pub fn lzend(w: &[u8], engine: Engine) -> Result<Factorization> {
    factorize(w, Scheme::LzEnd, engine)
}

/// C-factorization with the indexed engine.
pub fn cfact(w: &[u8]) -> Factorization {
    factorize(w, Scheme::CFact, Engine::Indexed).expect("indexed engine has no length limit")
}

fn check_tiling(f: &Factorization, n: usize) -> Result<()> {
    if f.input_len != n {
        return Err(Error::structural(
            f.phrases.len(),
            format!("factorization claims length {} but text has {n}", f.input_len),
        ));
    }
    let mut cursor = 0;
    for (idx, p) in f.phrases.iter().enumerate() {
        if p.start != cursor {
            return Err(Error::structural(
                idx,
                format!("starts at {} but previous phrase ended at {cursor}", p.start),
            ));
        }
        if p.len == 0 {
            return Err(Error::structural(idx, "empty phrase"));
        }
        cursor += p.len;
        if cursor > n {
            return Err(Error::structural(idx, format!("runs past the end of the text ({n})")));
        }
    }
    if cursor != n {
        return Err(Error::structural(
            f.phrases.len(),
            format!("phrases cover {cursor} of {n} letters"),
        ));
    }
    Ok(())
}

/// Rebuilds the text from sources alone, reading only sentinel letters from
/// `w`. Every structural rule of the scheme is enforced on the way.
pub fn decode(f: &Factorization, w: &[u8]) -> Result<Vec<u8>> {
    check_tiling(f, w.len())?;
    let mut out: Vec<u8> = Vec::with_capacity(w.len());
    let last = f.phrases.len().saturating_sub(1);
    for (idx, p) in f.phrases.iter().enumerate() {
        let copy = p.copy_len();
        if !p.has_sentinel && idx != last && f.scheme != Scheme::CFact {
            return Err(Error::structural(idx, "only the final phrase may omit its literal"));
        }
        match p.src {
            SourceRef::None => {
                if copy != 0 {
                    return Err(Error::structural(idx, "copies letters without a source"));
                }
            }
            SourceRef::Window(s) => {
                if f.scheme == Scheme::LzEnd {
                    return Err(Error::structural(idx, "LZ-End phrase with a window source"));
                }
                if s + copy > p.start {
                    return Err(Error::structural(
                        idx,
                        format!("source [{s}, {}) overlaps the phrase at {}", s + copy, p.start),
                    ));
                }
                out.extend_from_within(s..s + copy);
            }
            SourceRef::Boundary(j) => {
                if f.scheme != Scheme::LzEnd {
                    return Err(Error::structural(idx, "boundary source outside LZ-End"));
                }
                if j >= idx {
                    return Err(Error::structural(
                        idx,
                        format!("boundary source names phrase {j}, not an earlier one"),
                    ));
                }
                let e = f.phrases[j].end();
                if copy > e {
                    return Err(Error::structural(
                        idx,
                        format!("copy of {copy} letters does not fit before position {e}"),
                    ));
                }
                out.extend_from_within(e - copy..e);
            }
        }
        if p.has_sentinel {
            out.push(w[p.end() - 1]);
        }
    }
    Ok(out)
}

/// Phrase texts joined by `|`.
pub fn render_pipes(f: &Factorization, w: &[u8]) -> Result<String> {
    let parts = f.phrase_texts(w)?;
    Ok(parts
        .iter()
        .map(|p| String::from_utf8_lossy(p))
        .collect::<Vec<_>>()
        .join("|"))
}

#[derive(Serialize, Deserialize)]
struct PhraseWire {
    start: usize,
    len: usize,
    src_kind: String,
    src_value: Option<usize>,
    has_sentinel: bool,
}

#[derive(Serialize, Deserialize)]
struct FactorizationWire {
    scheme: Scheme,
    index_base: u8,
    input_len: usize,
    count: usize,
    phrases: Vec<PhraseWire>,
}

impl Serialize for Factorization {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FactorizationWire {
            scheme: self.scheme,
            index_base: 0,
            input_len: self.input_len,
            count: self.phrases.len(),
            phrases: self
                .phrases
                .iter()
                .map(|p| PhraseWire {
                    start: p.start,
                    len: p.len,
                    src_kind: p.src.kind().to_string(),
                    src_value: p.src.value(),
                    has_sentinel: p.has_sentinel,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Factorization {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = FactorizationWire::deserialize(d)?;
        if wire.index_base != 0 {
            return Err(D::Error::custom("only index_base 0 is supported"));
        }
        if wire.count != wire.phrases.len() {
            return Err(D::Error::custom("count does not match the phrase list"));
        }
        let phrases = wire
            .phrases
            .into_iter()
            .map(|p| {
                let src = match (p.src_kind.as_str(), p.src_value) {
                    ("none", None) => SourceRef::None,
                    ("window", Some(v)) => SourceRef::Window(v),
                    ("boundary", Some(v)) => SourceRef::Boundary(v),
                    (kind, value) => {
                        return Err(D::Error::custom(format!(
                            "bad source {kind:?} with value {value:?}"
                        )))
                    }
                };
                Ok(Phrase {
                    start: p.start,
                    len: p.len,
                    src,
                    has_sentinel: p.has_sentinel,
                })
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(Factorization {
            scheme: wire.scheme,
            phrases,
            input_len: wire.input_len,
        })
    }
}
