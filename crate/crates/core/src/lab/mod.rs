//! Harnesses that compare the factorizers and the closed forms against
//! each other, and the exhaustive `z'/z` search over binary strings.

mod crosscheck;
mod lemmas;
mod search;
mod structure;

pub use crosscheck::{cross_check_engines, cross_check_with, random_corpus};
pub use lemmas::{verify_lemmas, verify_lemmas_with, ROTATION_MAX_K};
pub use search::{
    enumerate_binary, max_ratio_search, max_ratio_search_with_workers, HistogramEntry,
    RatioSearchResult, Witness, MAX_ENUM_LEN,
};
pub use structure::{
    measure_structure, measured_ratio_table, structure_max_k, theory_ratio_table,
    verify_structure, verify_structure_capped, MeasuredStructure, RatioRow,
    INDEXED_STRUCTURE_MAX_K,
};

use crate::error::{Error, Result};

pub(crate) fn check_range(op: &'static str, k_min: u32, k_max: u32, lo: u32, hi: u32) -> Result<()> {
    if k_min < lo || k_min > k_max || k_max > hi {
        return Err(Error::domain(
            op,
            format!("need {lo} <= k_min <= k_max <= {hi}, got {k_min}..{k_max}"),
        ));
    }
    Ok(())
}

pub(crate) fn show(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

/// Serializes an exact ratio as `"num/den"`.
pub(crate) mod ratio_text {
    use num_rational::Ratio;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<u64>, D::Error> {
        let text = String::deserialize(d)?;
        let (n, m) = text
            .split_once('/')
            .ok_or_else(|| D::Error::custom(format!("expected num/den, got {text:?}")))?;
        let n: u64 = n.trim().parse().map_err(D::Error::custom)?;
        let m: u64 = m.trim().parse().map_err(D::Error::custom)?;
        if m == 0 {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Ratio::new(n, m))
    }
}
