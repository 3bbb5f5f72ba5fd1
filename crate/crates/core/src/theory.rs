//! Closed forms for the LZ77 and LZ-End factorizations of `S_k`.
//!
//! The realignment indices `k*_1 = 5`, `k*_m = k*_{m-1} + 3/16 · 2^{k*_{m-1}}`
//! drive everything else: `f(k) = m + 1` on `[k*_m - 1, k*_{m+1} - 2]`,
//! `lzeph(S_k) = 2k - f(k)` and `lzph(S_k) = k + 1`. All arithmetic is exact;
//! the recurrence is evaluated with big integers since `k*_4` already has
//! more than a hundred decimal digits.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const FIRST_KSTAR: u64 = 5;

/// Largest `k` whose predicted lengths fit in `u128`.
pub const MAX_PREDICTION_K: u32 = 120;

/// `k*_1 < k*_2 < ...`, every entry at most the horizon it was built for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KStarTable {
    pub horizon: u64,
    pub entries: Vec<u64>,
}

impl KStarTable {
    pub fn contains(&self, k: u64) -> bool {
        self.entries.binary_search(&k).is_ok()
    }

    /// Number of entries `<= k`.
    pub fn rank(&self, k: u64) -> usize {
        self.entries.partition_point(|&e| e <= k)
    }

    /// `max{k* <= k}`.
    pub fn ell(&self, k: u64) -> Option<u64> {
        self.entries[..self.rank(k)].last().copied()
    }
}

/// `k + 3/16 · 2^k`, exact.
fn next_kstar(k: u64) -> BigUint {
    debug_assert!(k >= 4);
    (BigUint::from(3u8) << (k - 4) as usize) + k
}

pub fn kstar_table(horizon: u64) -> Result<KStarTable> {
    if horizon < FIRST_KSTAR {
        return Err(Error::domain(
            "kstar_table",
            format!("horizon must be at least {FIRST_KSTAR}, got {horizon}"),
        ));
    }
    let mut entries = vec![FIRST_KSTAR];
    loop {
        let last = *entries.last().unwrap();
        match next_kstar(last).to_u64() {
            Some(next) if next <= horizon => entries.push(next),
            _ => break,
        }
    }
    Ok(KStarTable { horizon, entries })
}

/// `f(k) = m + 1` for `k in [k*_m - 1, k*_{m+1} - 2]`, defined from `k = 4`.
pub fn f_of_k(k: u64) -> Result<u64> {
    if k < FIRST_KSTAR - 1 {
        return Err(Error::domain("f_of_k", format!("defined for k >= 4, got {k}")));
    }
    // k lies in the m-th interval iff k*_m <= k + 1 < k*_{m+1}
    let table = kstar_table(k + 1)?;
    Ok(table.rank(k + 1) as u64 + 1)
}

/// Everything the closed forms say about `S_k`, `k >= 5`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoryPrediction {
    pub k: u32,
    pub n: u128,
    pub f: u64,
    /// LZ77 phrase count.
    pub lzph: u64,
    /// LZ-End phrase count.
    pub lzeph: u64,
    /// `k` is a realignment index: `w_k` equals the last phrase of `S_{k-1}`.
    pub in_k: bool,
    pub ell: u64,
    pub w_len: u128,
    pub x_len: u128,
    pub y_len: u128,
}

impl TheoryPrediction {
    /// Length of the prefix of `S_k` covered by phrases shared with `S_{k-1}`.
    pub fn shared_prefix_len(&self) -> u128 {
        self.n - self.w_len - self.x_len - self.y_len
    }

    /// Length of the last LZ-End phrase of `S_k`.
    pub fn last_phrase_len(&self) -> u128 {
        if self.y_len > 0 {
            self.y_len
        } else {
            self.x_len
        }
    }
}

pub fn predicted_counts(k: u32) -> Result<TheoryPrediction> {
    if (k as u64) < FIRST_KSTAR {
        return Err(Error::domain("predicted_counts", format!("needs k >= 5, got {k}")));
    }
    if k > MAX_PREDICTION_K {
        return Err(Error::domain(
            "predicted_counts",
            format!("lengths for k = {k} exceed the supported range (k <= {MAX_PREDICTION_K})"),
        ));
    }
    let table = kstar_table(k as u64)?;
    let ell = table.ell(k as u64).expect("k >= 5 so the table is non-empty");
    let f = f_of_k(k as u64)?;
    let n: u128 = 1 << k;
    let in_k = ell == k as u64;
    let (w_len, x_len, y_len) = if in_k {
        (3 * n / 16, 5 * n / 16 + 1, 3 * n / 16 - 1)
    } else {
        let n_ell: u128 = 1 << ell;
        (n / 8 + 1, 3 * n / 8, 3 * n_ell / 16 - (k as u128 - ell as u128) - 1)
    };
    Ok(TheoryPrediction {
        k,
        n,
        f,
        lzph: k as u64 + 1,
        lzeph: 2 * k as u64 - f,
        in_k,
        ell,
        w_len,
        x_len,
        y_len,
    })
}

/// `lzeph(S_k) / lzph(S_k) = (2k - f(k)) / (k + 1)`, reduced.
pub fn ratio(k: u64) -> Result<Ratio<u64>> {
    if k < FIRST_KSTAR {
        return Err(Error::domain("ratio", format!("needs k >= 5, got {k}")));
    }
    let f = f_of_k(k)?;
    Ok(Ratio::new(2 * k - f, k + 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NonTerminal {
    /// Derives `S_i`.
    S(u32),
    /// Derives `S_{i-2} S_{i-2}`.
    T(u32),
    /// Derives the single letter `b`.
    B,
}

impl fmt::Display for NonTerminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonTerminal::S(i) => write!(f, "S_{i}"),
            NonTerminal::T(i) => write!(f, "T_{i}"),
            NonTerminal::B => f.write_str("B"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rhs {
    Letter(u8),
    Pair(NonTerminal, NonTerminal),
}

/// Straight-line program in Chomsky normal form deriving `S_k`:
/// `S_i -> S_{i-1} T_i`, `T_i -> S_{i-2} S_{i-2}`, `S_1 -> S_0 B`,
/// `S_0 -> a`, `B -> b`. Size is the number of productions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slp {
    pub k: u32,
    /// Start symbol first; every right-hand side refers to later rules.
    pub productions: Vec<(NonTerminal, Rhs)>,
}

impl Slp {
    pub fn size(&self) -> usize {
        self.productions.len()
    }

    pub fn start(&self) -> NonTerminal {
        self.productions[0].0
    }

    pub fn expand(&self) -> Vec<u8> {
        let mut memo: HashMap<NonTerminal, Vec<u8>> = HashMap::new();
        for (lhs, rhs) in self.productions.iter().rev() {
            let value = match *rhs {
                Rhs::Letter(c) => vec![c],
                Rhs::Pair(l, r) => [memo[&l].as_slice(), memo[&r].as_slice()].concat(),
            };
            memo.insert(*lhs, value);
        }
        memo.remove(&self.start()).unwrap_or_default()
    }
}

impl fmt::Display for Slp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (lhs, rhs) in &self.productions {
            match rhs {
                Rhs::Letter(c) => writeln!(f, "{lhs} -> {}", *c as char)?,
                Rhs::Pair(l, r) => writeln!(f, "{lhs} -> {l} {r}")?,
            }
        }
        Ok(())
    }
}

pub fn pd_slp(k: u32) -> Result<Slp> {
    if k < 2 {
        return Err(Error::domain("pd_slp", format!("needs k >= 2, got {k}")));
    }
    use NonTerminal::*;
    let mut productions = Vec::with_capacity(2 * k as usize + 1);
    for i in (2..=k).rev() {
        productions.push((S(i), Rhs::Pair(S(i - 1), T(i))));
        productions.push((T(i), Rhs::Pair(S(i - 2), S(i - 2))));
    }
    productions.push((S(1), Rhs::Pair(S(0), B)));
    productions.push((B, Rhs::Letter(b'b')));
    productions.push((S(0), Rhs::Letter(b'a')));
    Ok(Slp { k, productions })
}
