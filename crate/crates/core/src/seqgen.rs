//! Period-doubling sequences and the word-combinatorics helpers used to
//! state their properties.
//!
//! `S_0 = a` and `S_k = S_{k-1} · hat(S_{k-1})`, where `hat` flips the last
//! letter. Equivalently `S_k` is the `k`-th image of `a` under the morphism
//! `a -> ab, b -> aa`. Both constructions are provided so they can be
//! checked against each other.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// Default ceiling on the generation index; `2^30` bytes is the largest
/// sequence we are willing to materialize without an explicit override.
pub const DEFAULT_MAX_K: u32 = 30;

/// A non-empty-or-empty word over the letters `a` and `b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryString(Vec<u8>);

impl BinaryString {
    /// Wraps `bytes`, rejecting anything outside `{a, b}`.
    pub fn new(bytes: impl Into<Vec<u8>>) -> Result<Self> {
        let bytes = bytes.into();
        if let Some(pos) = bytes.iter().position(|&c| c != b'a' && c != b'b') {
            return Err(Error::domain(
                "BinaryString::new",
                format!("byte {:#04x} at position {pos} is not 'a' or 'b'", bytes[pos]),
            ));
        }
        Ok(BinaryString(bytes))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }

    pub fn concat(parts: &[&BinaryString]) -> BinaryString {
        let mut out = Vec::with_capacity(parts.iter().map(|p| p.len()).sum());
        for p in parts {
            out.extend_from_slice(p);
        }
        BinaryString(out)
    }
}

impl Deref for BinaryString {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl AsRef<[u8]> for BinaryString {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", String::from_utf8_lossy(&self.0))
    }
}

impl fmt::Display for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.0))
    }
}

/// The `k`-th period-doubling word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdSequence {
    pub k: u32,
    pub seq: BinaryString,
}

impl PdSequence {
    /// `n_k = 2^k`.
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.seq.as_bytes()
    }
}

/// `S_k = A_k B_k A_k A_k` with `A_k = S_{k-2}` and `B_k = hat(A_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbDecomposition {
    pub k: u32,
    pub a: BinaryString,
    pub b: BinaryString,
}

impl AbDecomposition {
    pub fn concat(&self) -> BinaryString {
        BinaryString::concat(&[&self.a, &self.b, &self.a, &self.a])
    }
}

fn check_k(k: u32, max_k: u32) -> Result<()> {
    if k > max_k {
        return Err(Error::ResourceLimit {
            what: "k",
            value: k as u64,
            max: max_k as u64,
        });
    }
    Ok(())
}

#[inline]
fn flip(c: u8) -> u8 {
    if c == b'a' {
        b'b'
    } else {
        b'a'
    }
}

/// `S_k` by repeated doubling, capped at [`DEFAULT_MAX_K`].
pub fn pd_doubling(k: u32) -> Result<PdSequence> {
    pd_doubling_capped(k, DEFAULT_MAX_K)
}

pub fn pd_doubling_capped(k: u32, max_k: u32) -> Result<PdSequence> {
    check_k(k, max_k)?;
    let n = 1usize << k;
    let mut seq = Vec::with_capacity(n);
    seq.push(b'a');
    while seq.len() < n {
        let half = seq.len();
        seq.extend_from_within(..half);
        let last = seq.len() - 1;
        seq[last] = flip(seq[last]);
    }
    Ok(PdSequence {
        k,
        seq: BinaryString(seq),
    })
}

/// `S_k` as `phi^k(a)` with `phi(a) = ab`, `phi(b) = aa`.
pub fn pd_morphic(k: u32) -> Result<PdSequence> {
    pd_morphic_capped(k, DEFAULT_MAX_K)
}

pub fn pd_morphic_capped(k: u32, max_k: u32) -> Result<PdSequence> {
    check_k(k, max_k)?;
    let mut seq = vec![b'a'];
    for _ in 0..k {
        let mut next = Vec::with_capacity(seq.len() * 2);
        for &c in &seq {
            next.push(b'a');
            next.push(if c == b'a' { b'b' } else { b'a' });
        }
        seq = next;
    }
    Ok(PdSequence {
        k,
        seq: BinaryString(seq),
    })
}

/// `w` with its final letter complemented.
pub fn hat(w: &BinaryString) -> Result<BinaryString> {
    let mut out = w.0.clone();
    match out.last_mut() {
        Some(c) => *c = flip(*c),
        None => return Err(Error::domain("hat", "undefined on the empty word")),
    }
    Ok(BinaryString(out))
}

pub fn ab_decompose(k: u32) -> Result<AbDecomposition> {
    if k < 2 {
        return Err(Error::domain("ab_decompose", format!("needs k >= 2, got {k}")));
    }
    let a = pd_doubling(k - 2)?.seq;
    let b = hat(&a)?;
    let dec = AbDecomposition { k, a, b };
    debug_assert_eq!(dec.concat(), pd_doubling(k)?.seq);
    Ok(dec)
}

/// KMP failure function: `pi[i]` is the length of the longest proper border
/// of `w[..=i]`.
pub(crate) fn prefix_function(w: &[u8]) -> Vec<usize> {
    let mut pi = vec![0usize; w.len()];
    for i in 1..w.len() {
        let mut k = pi[i - 1];
        while k > 0 && w[i] != w[k] {
            k = pi[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        pi[i] = k;
    }
    pi
}

/// True iff `w` is not `x^m` for any `x` and `m >= 2`.
pub fn is_primitive(w: &[u8]) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::domain("is_primitive", "undefined on the empty word"));
    }
    let n = w.len();
    let period = n - prefix_function(w)[n - 1];
    Ok(period == n || n % period != 0)
}

/// Number of (possibly overlapping) occurrences of `pattern` in `text`.
pub fn count_occurrences(pattern: &[u8], text: &[u8]) -> Result<usize> {
    Ok(occurrences(pattern, text)?.len())
}

/// Starting positions of every occurrence of `pattern` in `text`, ascending.
pub fn occurrences(pattern: &[u8], text: &[u8]) -> Result<Vec<usize>> {
    if pattern.is_empty() {
        return Err(Error::domain("count_occurrences", "empty pattern"));
    }
    let pi = prefix_function(pattern);
    let m = pattern.len();
    let mut hits = Vec::new();
    let mut k = 0;
    for (i, &c) in text.iter().enumerate() {
        while k > 0 && (k == m || c != pattern[k]) {
            k = pi[k - 1];
        }
        if c == pattern[k] {
            k += 1;
        }
        if k == m {
            hits.push(i + 1 - m);
        }
    }
    Ok(hits)
}

/// Every rotation `w[i..] · w[..i]`, `1 <= i < |w|`, that differs from `w`,
/// in order of `i`.
pub fn proper_rotations(w: &[u8]) -> Vec<Vec<u8>> {
    (1..w.len())
        .map(|i| {
            let mut r = Vec::with_capacity(w.len());
            r.extend_from_slice(&w[i..]);
            r.extend_from_slice(&w[..i]);
            r
        })
        .filter(|r| r.as_slice() != w)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BinaryString {
        BinaryString::new(s.as_bytes()).unwrap()
    }

    fn brute_primitive(w: &[u8]) -> bool {
        let n = w.len();
        !(1..n).any(|p| n % p == 0 && (0..n).all(|i| w[i] == w[i % p]))
    }

    #[test]
    fn doubling_small_values() {
        assert_eq!(pd_doubling(0).unwrap().seq, bs("a"));
        assert_eq!(pd_doubling(1).unwrap().seq, bs("ab"));
        assert_eq!(
            pd_doubling(5).unwrap().seq,
            bs("abaaabababaaabaaabaaabababaaabab")
        );
    }

    #[test]
    fn morphic_matches_doubling() {
        assert_eq!(pd_morphic(0).unwrap().seq, bs("a"));
        assert_eq!(pd_morphic(2).unwrap().seq, bs("abaa"));
        for k in 0..=20 {
            let d = pd_doubling(k).unwrap();
            assert_eq!(d.len(), 1 << k);
            assert_eq!(d.seq, pd_morphic(k).unwrap().seq, "k = {k}");
        }
    }

    #[test]
    fn halves_follow_definition() {
        for k in 1..=12 {
            let s = pd_doubling(k).unwrap().seq;
            let prev = pd_doubling(k - 1).unwrap().seq;
            let half = s.len() / 2;
            assert_eq!(&s[..half], prev.as_bytes());
            assert_eq!(&s[half..], hat(&prev).unwrap().as_bytes());
        }
    }

    #[test]
    fn guard_rejects_large_k() {
        assert!(matches!(pd_doubling(31), Err(Error::ResourceLimit { .. })));
        assert!(matches!(pd_morphic(99), Err(Error::ResourceLimit { .. })));
        assert!(pd_doubling_capped(6, 5).is_err());
        assert!(pd_doubling_capped(5, 5).is_ok());
    }

    #[test]
    fn hat_cases() {
        assert_eq!(hat(&bs("abaa")).unwrap(), bs("abab"));
        assert_eq!(hat(&bs("a")).unwrap(), bs("b"));
        assert_eq!(hat(&bs("ab")).unwrap(), bs("aa"));
        assert!(hat(&bs("")).is_err());
        for k in 0..=20 {
            let s = pd_doubling(k).unwrap().seq;
            assert_eq!(hat(&hat(&s).unwrap()).unwrap(), s);
        }
    }

    #[test]
    fn binary_string_rejects_other_letters() {
        assert!(BinaryString::new(b"abc".to_vec()).is_err());
    }

    #[test]
    fn ab_decomposition() {
        let d = ab_decompose(2).unwrap();
        assert_eq!((d.a.clone(), d.b.clone()), (bs("a"), bs("b")));
        assert_eq!(d.concat(), bs("abaa"));
        let d = ab_decompose(3).unwrap();
        assert_eq!((d.a.clone(), d.b.clone()), (bs("ab"), bs("aa")));
        assert_eq!(d.concat(), bs("abaaabab"));
        let d = ab_decompose(5).unwrap();
        assert_eq!(d.a, pd_doubling(3).unwrap().seq);
        assert_eq!(d.concat(), pd_doubling(5).unwrap().seq);
        assert!(ab_decompose(1).is_err());
    }

    #[test]
    fn primitivity() {
        assert!(!is_primitive(b"abab").unwrap());
        assert!(is_primitive(b"ab").unwrap());
        assert!(is_primitive(b"a").unwrap());
        assert!(!is_primitive(b"aa").unwrap());
        assert!(is_primitive(pd_doubling(6).unwrap().as_bytes()).unwrap());
        assert!(is_primitive(b"").is_err());
        for k in 0..=20 {
            assert!(is_primitive(pd_doubling(k).unwrap().as_bytes()).unwrap());
        }
    }

    #[test]
    fn primitivity_matches_divisor_scan() {
        for len in 1..=12usize {
            for bits in 0u32..(1 << len) {
                let w: Vec<u8> = (0..len)
                    .map(|i| if bits >> i & 1 == 0 { b'a' } else { b'b' })
                    .collect();
                assert_eq!(is_primitive(&w).unwrap(), brute_primitive(&w));
            }
        }
    }

    #[test]
    fn occurrence_counts() {
        assert_eq!(count_occurrences(b"a", b"aaa").unwrap(), 3);
        assert_eq!(count_occurrences(b"aa", b"aaaa").unwrap(), 3);
        assert_eq!(count_occurrences(b"abc", b"ab").unwrap(), 0);
        assert!(count_occurrences(b"", b"ab").is_err());
        let d5 = ab_decompose(5).unwrap();
        let s5 = pd_doubling(5).unwrap();
        assert_eq!(count_occurrences(&d5.a, s5.as_bytes()).unwrap(), 3);
        let d4 = ab_decompose(4).unwrap();
        let ba = BinaryString::concat(&[&d4.b, &d4.a]);
        assert_eq!(count_occurrences(&ba, pd_doubling(4).unwrap().as_bytes()).unwrap(), 1);
    }

    #[test]
    fn occurrence_positions_match_brute_scan() {
        let text = pd_doubling(9).unwrap().seq;
        for k in 0..=6 {
            let p = pd_doubling(k).unwrap().seq;
            let brute: Vec<usize> = (0..=text.len() - p.len())
                .filter(|&i| &text[i..i + p.len()] == p.as_bytes())
                .collect();
            assert_eq!(occurrences(&p, &text).unwrap(), brute);
        }
    }

    #[test]
    fn rotations() {
        assert_eq!(proper_rotations(b"ab"), vec![b"ba".to_vec()]);
        assert!(proper_rotations(b"aa").is_empty());
        assert!(proper_rotations(b"a").is_empty());
        assert_eq!(
            proper_rotations(b"abaa"),
            vec![b"baaa".to_vec(), b"aaab".to_vec(), b"aaba".to_vec()]
        );
    }

    #[test]
    fn primitive_square_has_no_internal_occurrence() {
        for len in 1..=12usize {
            for bits in 0u32..(1 << len) {
                let w: Vec<u8> = (0..len)
                    .map(|i| if bits >> i & 1 == 0 { b'a' } else { b'b' })
                    .collect();
                if is_primitive(&w).unwrap() {
                    let ww = [w.as_slice(), w.as_slice()].concat();
                    assert_eq!(count_occurrences(&w, &ww).unwrap(), 2);
                    assert_eq!(proper_rotations(&w).len(), len - 1);
                }
            }
        }
    }
}
