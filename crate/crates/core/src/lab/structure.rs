//! Measured LZ77/LZ-End structure of `S_k` against the closed forms.

use std::ops::Range;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::check_range;
use crate::error::{Error, Result};
use crate::factor::{factorize, render_pipes, Engine, Factorization, Scheme, NAIVE_MAX_LEN};
use crate::report::VerificationReport;
use crate::seqgen::{hat, pd_doubling, DEFAULT_MAX_K};
use crate::theory::{f_of_k, predicted_counts};

pub const INDEXED_STRUCTURE_MAX_K: u32 = 24;

/// Default ceiling on `k` for structure runs with `engine`.
pub fn structure_max_k(engine: Engine) -> u32 {
    match engine {
        Engine::Naive => NAIVE_MAX_LEN.trailing_zeros(),
        Engine::Indexed => INDEXED_STRUCTURE_MAX_K,
    }
}

/// `w_k`, `x_k`, `y_k` located in `lze(S_k)` using the phrase count of
/// `lze(S_{k-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasuredStructure {
    pub k: u32,
    pub lzeph: usize,
    pub prev_lzeph: usize,
    pub w: Range<usize>,
    pub x: Range<usize>,
    pub y: Range<usize>,
    /// `w_k` equals the last phrase of `S_{k-1}`.
    pub in_k: bool,
    /// The first `prev_lzeph - 1` phrases coincide with those of `S_{k-1}`.
    pub prefix_stable: bool,
    /// `y_k` empty and nothing follows `x_k`, or `y_k` is exactly one final phrase.
    pub y_is_last_phrase: bool,
}

fn structure_from(k: u32, s: &[u8], prev: &Factorization, cur: &Factorization) -> Result<MeasuredStructure> {
    let m = prev.count();
    if m == 0 || cur.count() < m + 1 {
        return Err(Error::structural(
            cur.count(),
            format!("lze(S_{k}) has {} phrases, fewer than lze(S_{}) + 1 = {}", cur.count(), k - 1, m + 1),
        ));
    }
    let wp = cur.phrases[m - 1];
    let xp = cur.phrases[m];
    let w = wp.start..wp.end();
    let x = xp.start..xp.end();
    let y = xp.end()..s.len();
    let last_prev = prev.phrases[m - 1];
    let in_k = s[w.clone()] == s[last_prev.start..last_prev.end()];
    let prefix_stable = cur.phrases[..m - 1] == prev.phrases[..m - 1];
    let y_is_last_phrase = if y.is_empty() {
        cur.count() == m + 1
    } else {
        cur.count() == m + 2 && cur.phrases[m + 1].start == y.start
    };
    Ok(MeasuredStructure {
        k,
        lzeph: cur.count(),
        prev_lzeph: m,
        w,
        x,
        y,
        in_k,
        prefix_stable,
        y_is_last_phrase,
    })
}

/// Measures the structure of `lze(S_k)` for a single `k >= 5`.
pub fn measure_structure(k: u32, engine: Engine) -> Result<MeasuredStructure> {
    check_range("measure_structure", k, k, 5, DEFAULT_MAX_K)?;
    let prev_s = pd_doubling(k - 1)?;
    let s = pd_doubling(k)?;
    let prev = factorize(prev_s.as_bytes(), Scheme::LzEnd, engine)?;
    let cur = factorize(s.as_bytes(), Scheme::LzEnd, engine)?;
    structure_from(k, s.as_bytes(), &prev, &cur)
}

pub fn verify_structure(k_min: u32, k_max: u32, engine: Engine) -> Result<VerificationReport> {
    verify_structure_capped(k_min, k_max, engine, structure_max_k(engine))
}

/// LZ77 phrase list, LZ-End phrase count, prefix stability, `w/x/y` lengths
/// and the final-phrase property for every `k` in range.
pub fn verify_structure_capped(
    k_min: u32,
    k_max: u32,
    engine: Engine,
    max_k: u32,
) -> Result<VerificationReport> {
    check_range("verify_structure", k_min, k_max, 5, max_k.min(DEFAULT_MAX_K))?;
    let mut report = VerificationReport::new(format!("structure k={k_min}..{k_max} engine={engine}"));

    let prev_s = pd_doubling(k_min - 1)?;
    let mut prev = factorize(prev_s.as_bytes(), Scheme::LzEnd, engine)?;
    if k_min == 5 {
        report.check_eq("lzeph_extended_k4", "k=4", 2 * 4 - f_of_k(4)? as usize, prev.count());
    }

    for k in k_min..=k_max {
        let subject = format!("k={k}");
        let s = pd_doubling(k)?;
        let w = s.as_bytes();
        let theory = predicted_counts(k)?;

        let lz = factorize(w, Scheme::Lz77, engine)?;
        report.check_eq("lzph", &subject, theory.lzph as usize, lz.count());
        let mut expected = vec![pd_doubling(0)?.seq.into_bytes()];
        for i in 0..k {
            expected.push(hat(&pd_doubling(i)?.seq)?.into_bytes());
        }
        let texts = lz.phrase_texts(w)?;
        report.check_eq_with(
            "lz77_phrase_list",
            &subject,
            true,
            texts.len() == expected.len() && texts.iter().zip(&expected).all(|(a, b)| *a == b.as_slice()),
            || format!("lz77: {}", render_pipes(&lz, w).unwrap_or_default()),
        );

        let cur = factorize(w, Scheme::LzEnd, engine)?;
        let dump = || {
            format!(
                "lze(S_{}) = {}\nlze(S_{k}) = {}",
                k - 1,
                render_pipes(&prev, &w[..w.len() / 2]).unwrap_or_default(),
                render_pipes(&cur, w).unwrap_or_default()
            )
        };
        report.check_eq_with("lzeph", &subject, theory.lzeph as usize, cur.count(), dump);

        match structure_from(k, w, &prev, &cur) {
            Ok(m) => {
                report.check_eq_with("prefix_stability", &subject, true, m.prefix_stable, dump);
                report.check_eq_with("in_K", &subject, theory.in_k, m.in_k, dump);
                report.check_eq_with("w_len", &subject, theory.w_len, m.w.len() as u128, dump);
                report.check_eq_with("x_len", &subject, theory.x_len, m.x.len() as u128, dump);
                report.check_eq_with("y_len", &subject, theory.y_len, m.y.len() as u128, dump);
                report.check_eq_with("y_is_last_phrase", &subject, true, m.y_is_last_phrase, dump);
            }
            Err(e) => {
                report.push("structure", &subject, "w_k and x_k present", e, false, dump);
            }
        }
        prev = cur;
    }
    Ok(report)
}

/// One line of a ratio table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioRow {
    pub k: u32,
    pub z: u64,
    pub z_prime: u64,
    #[serde(with = "super::ratio_text")]
    pub ratio: Ratio<u64>,
}

impl RatioRow {
    fn new(k: u32, z: u64, z_prime: u64) -> Self {
        RatioRow {
            k,
            z,
            z_prime,
            ratio: Ratio::new(z_prime, z),
        }
    }

    pub fn decimal(&self) -> f64 {
        *self.ratio.numer() as f64 / *self.ratio.denom() as f64
    }
}

pub fn theory_ratio_table(k_min: u32, k_max: u32) -> Result<Vec<RatioRow>> {
    check_range("theory_ratio_table", k_min, k_max, 5, u32::MAX)?;
    (k_min..=k_max)
        .map(|k| {
            let k64 = k as u64;
            Ok(RatioRow::new(k, k64 + 1, 2 * k64 - f_of_k(k64)?))
        })
        .collect()
}

pub fn measured_ratio_table(k_min: u32, k_max: u32, engine: Engine) -> Result<Vec<RatioRow>> {
    check_range("measured_ratio_table", k_min, k_max, 5, structure_max_k(engine))?;
    (k_min..=k_max)
        .map(|k| {
            let s = pd_doubling(k)?;
            let z = factorize(s.as_bytes(), Scheme::Lz77, engine)?.count() as u64;
            let z_prime = factorize(s.as_bytes(), Scheme::LzEnd, engine)?.count() as u64;
            Ok(RatioRow::new(k, z, z_prime))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::show;

    fn text(s: &[u8], r: &Range<usize>) -> String {
        show(&s[r.clone()])
    }

    #[test]
    fn base_case_strings() {
        let m = measure_structure(5, Engine::Naive).unwrap();
        let s = pd_doubling(5).unwrap();
        assert_eq!(text(s.as_bytes(), &m.w), "aaabaa");
        assert_eq!(text(s.as_bytes(), &m.x), "abaaabababa");
        assert_eq!(text(s.as_bytes(), &m.y), "aabab");
        assert!(m.in_k && m.prefix_stable && m.y_is_last_phrase);
        let r = verify_structure(5, 5, Engine::Naive).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn realignment_branch_at_eleven() {
        let m = measure_structure(11, Engine::Indexed).unwrap();
        assert!(m.in_k);
        assert_eq!(m.w.len(), 384);
        let m = measure_structure(12, Engine::Indexed).unwrap();
        assert!(!m.in_k);
    }

    #[test]
    fn structure_holds_up_to_sixteen() {
        let r = verify_structure(5, 16, Engine::Indexed).unwrap();
        assert!(r.all_passed(), "{r}");
        let counts: Vec<String> = r
            .checks
            .iter()
            .filter(|c| c.name == "lzeph")
            .map(|c| c.measured.clone())
            .collect();
        assert_eq!(counts, ["8", "10", "12", "14", "16", "17", "19", "21", "23", "25", "27", "29"]);
        assert!(r.checks.iter().any(|c| c.name == "lzeph_extended_k4" && c.pass));
    }

    #[test]
    fn range_guards() {
        assert!(verify_structure(3, 4, Engine::Indexed).is_err());
        assert!(verify_structure(5, 17, Engine::Naive).is_err());
        assert!(verify_structure(5, 25, Engine::Indexed).is_err());
        assert!(verify_structure_capped(6, 6, Engine::Indexed, 5).is_err());
    }

    #[test]
    fn ratio_tables_agree() {
        let theory = theory_ratio_table(5, 16).unwrap();
        assert_eq!(theory, measured_ratio_table(5, 16, Engine::Indexed).unwrap());
        let last = theory_ratio_table(5, 24).unwrap().pop().unwrap();
        assert_eq!((last.k, last.z, last.z_prime), (24, 25, 45));
        assert_eq!(last.ratio, Ratio::new(9, 5));
        let first = &measured_ratio_table(5, 5, Engine::Naive).unwrap()[0];
        assert_eq!((first.z, first.z_prime, first.ratio), (6, 8, Ratio::new(4, 3)));
    }
}
