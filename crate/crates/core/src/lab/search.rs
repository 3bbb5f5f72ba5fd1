//! Exhaustive `z'/z` search over binary strings.
//!
//! Only strings starting with `a` are enumerated; every other binary string
//! is the letter-swapped image of one of them and has the same phrase
//! lengths. Work is split into fixed blocks of consecutive representatives
//! and merged in enumeration order, so the result does not depend on how
//! many workers ran.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::{factorize, Engine, Scheme};

pub const MAX_ENUM_LEN: usize = 24;

const BLOCK: u64 = 1 << 12;

fn check_len(op: &'static str, max_len: usize) -> Result<()> {
    if max_len == 0 || max_len > MAX_ENUM_LEN {
        return Err(Error::ResourceLimit {
            what: if op == "enumerate_binary" { "enumeration length" } else { "search length" },
            value: max_len as u64,
            max: MAX_ENUM_LEN as u64,
        });
    }
    Ok(())
}

/// The representative of length `len` with `bits` as the binary value of its
/// last `len - 1` letters (`a` = 0, most significant first).
fn representative(len: usize, bits: u64) -> Vec<u8> {
    let mut w = Vec::with_capacity(len);
    w.push(b'a');
    for i in (0..len - 1).rev() {
        w.push(if bits >> i & 1 == 1 { b'b' } else { b'a' });
    }
    w
}

/// Every binary string of length `1..=max_len` beginning with `a`, by length
/// and then lexicographically.
pub fn enumerate_binary(max_len: usize) -> Result<impl Iterator<Item = Vec<u8>>> {
    check_len("enumerate_binary", max_len)?;
    Ok((1..=max_len).flat_map(|len| (0..1u64 << (len - 1)).map(move |bits| representative(len, bits))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub string: String,
    pub z: usize,
    pub z_prime: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramEntry {
    pub z: usize,
    pub z_prime: usize,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioSearchResult {
    pub max_len: usize,
    pub engine: Engine,
    pub strings_examined: u64,
    #[serde(with = "super::ratio_text")]
    pub best_ratio: Ratio<u64>,
    /// Every representative attaining `best_ratio`, in enumeration order.
    pub witnesses: Vec<Witness>,
    /// Sorted by `(z, z_prime)`.
    pub histogram: Vec<HistogramEntry>,
    /// Strings with `z' < z`; expected to be empty.
    pub dominance_violations: Vec<Witness>,
}

impl RatioSearchResult {
    /// `z' >= z` everywhere and `z'/z <= 2`.
    pub fn conjecture_holds(&self) -> bool {
        self.dominance_violations.is_empty() && self.best_ratio <= Ratio::from_integer(2)
    }
}

#[derive(Default)]
struct Partial {
    best: Option<Ratio<u64>>,
    witnesses: Vec<Witness>,
    histogram: BTreeMap<(usize, usize), u64>,
    violations: Vec<Witness>,
    examined: u64,
}

impl Partial {
    fn absorb(&mut self, other: Partial) {
        match (self.best, other.best) {
            (_, None) => {}
            (Some(a), Some(b)) if b < a => {}
            (Some(a), Some(b)) if b == a => self.witnesses.extend(other.witnesses),
            _ => {
                self.best = other.best;
                self.witnesses = other.witnesses;
            }
        }
        for (key, count) in other.histogram {
            *self.histogram.entry(key).or_default() += count;
        }
        self.violations.extend(other.violations);
        self.examined += other.examined;
    }
}

fn run_block(len: usize, lo: u64, hi: u64, engine: Engine) -> Result<Partial> {
    let mut part = Partial::default();
    for bits in lo..hi {
        let w = representative(len, bits);
        let z = factorize(&w, Scheme::Lz77, engine)?.count();
        let z_prime = factorize(&w, Scheme::LzEnd, engine)?.count();
        let witness = || Witness {
            string: String::from_utf8_lossy(&w).into_owned(),
            z,
            z_prime,
        };
        if z_prime < z {
            part.violations.push(witness());
        }
        *part.histogram.entry((z, z_prime)).or_default() += 1;
        part.examined += 1;
        let r = Ratio::new(z_prime as u64, z as u64);
        match part.best {
            Some(b) if r < b => {}
            Some(b) if r == b => part.witnesses.push(witness()),
            _ => {
                part.best = Some(r);
                part.witnesses = vec![witness()];
            }
        }
    }
    Ok(part)
}

pub fn max_ratio_search(max_len: usize, engine: Engine) -> Result<RatioSearchResult> {
    max_ratio_search_with_workers(max_len, engine, 0)
}

/// `workers = 0` uses the available parallelism.
pub fn max_ratio_search_with_workers(
    max_len: usize,
    engine: Engine,
    workers: usize,
) -> Result<RatioSearchResult> {
    check_len("max_ratio_search", max_len)?;
    let blocks: Vec<(usize, u64, u64)> = (1..=max_len)
        .flat_map(|len| {
            let total = 1u64 << (len - 1);
            (0..total.div_ceil(BLOCK)).map(move |b| (len, b * BLOCK, ((b + 1) * BLOCK).min(total)))
        })
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::domain("max_ratio_search", e.to_string()))?;
    let parts: Vec<Result<Partial>> = pool.install(|| {
        blocks
            .par_iter()
            .map(|&(len, lo, hi)| run_block(len, lo, hi, engine))
            .collect()
    });

    let mut total = Partial::default();
    for part in parts {
        total.absorb(part?);
    }
    Ok(RatioSearchResult {
        max_len,
        engine,
        strings_examined: total.examined,
        best_ratio: total.best.expect("at least one string enumerated"),
        witnesses: total.witnesses,
        histogram: total
            .histogram
            .into_iter()
            .map(|((z, z_prime), count)| HistogramEntry { z, z_prime, count })
            .collect(),
        dominance_violations: total.violations,
    })
}
