//! Concrete checks of the combinatorial facts about `S_k`: primitivity, the
//! `A B A A` tiling, occurrence counts of `A_k`, and occurrence counts of its
//! proper rotations.

use super::{check_range, show};
use crate::error::Result;
use crate::report::VerificationReport;
use crate::seqgen::{
    hat, is_primitive, occurrences, pd_doubling, pd_morphic, proper_rotations, BinaryString,
    DEFAULT_MAX_K,
};

/// Rotation checks enumerate `|A_k| - 1` rotations and stop at this `k`.
pub const ROTATION_MAX_K: u32 = 12;

pub fn verify_lemmas(k_min: u32, k_max: u32) -> Result<VerificationReport> {
    verify_lemmas_with(k_min, k_max, &|k| Ok(pd_doubling(k)?.seq))
}

/// Same checks with `S_k` supplied by `generate`, so a corrupted sequence
/// can be injected.
pub fn verify_lemmas_with(
    k_min: u32,
    k_max: u32,
    generate: &dyn Fn(u32) -> Result<BinaryString>,
) -> Result<VerificationReport> {
    check_range("verify_lemmas", k_min, k_max, 0, DEFAULT_MAX_K)?;
    let mut report = VerificationReport::new(format!("lemmas k={k_min}..{k_max}"));

    for k in k_min..=k_max {
        let s = generate(k)?;
        let subject = format!("k={k}");
        report.check_eq("length", &subject, 1usize << k, s.len());
        report.check_eq("primitive", &subject, true, !s.is_empty() && is_primitive(&s)?);
        report.check_eq("morphic_equals_doubling", &subject, true, pd_morphic(k)?.seq == s);

        if k >= 1 {
            let prev = generate(k - 1)?;
            let half = s.len() / 2;
            let ok = s.len() == 2 * prev.len()
                && s[..half] == prev[..]
                && s[half..] == hat(&prev)?[..];
            report.check_eq("doubling_halves", &subject, true, ok);
        }

        if k < 2 {
            continue;
        }
        let a = generate(k - 2)?;
        let b = hat(&a)?;
        report.check_eq_with(
            "abaa_tiling",
            &subject,
            true,
            BinaryString::concat(&[&a, &b, &a, &a]) == s,
            || format!("S_k = {}\nA_k = {}", show(&s), show(&a)),
        );
        report.check_eq("count_A_in_S", &subject, 3, occurrences(&a, &s)?.len());

        let n = a.len();
        let aa = BinaryString::concat(&[&a, &a]);
        let ab = BinaryString::concat(&[&a, &b]);
        let ba = BinaryString::concat(&[&b, &a]);
        let internal = format!(
            "AA{:?} AB{:?} BA{:?}",
            occurrences(&a, &aa)?,
            occurrences(&a, &ab)?,
            occurrences(&a, &ba)?
        );
        report.check_eq(
            "no_internal_A",
            &subject,
            format!("AA{:?} AB{:?} BA{:?}", [0, n], [0], [n]),
            internal,
        );

        if k >= 3 {
            let a_prev = generate(k - 3)?;
            let b_prev = hat(&a_prev)?;
            report.check_eq(
                "A_is_A'B'",
                &subject,
                true,
                BinaryString::concat(&[&a_prev, &b_prev]) == a,
            );
            report.check_eq(
                "B_is_A'A'",
                &subject,
                true,
                BinaryString::concat(&[&a_prev, &a_prev]) == b,
            );
        }

        // vacuous at k = 2: A_2 = "a" has no proper rotation
        if (3..=ROTATION_MAX_K).contains(&k) {
            let aaa = BinaryString::concat(&[&a, &a, &a]);
            let rotations = proper_rotations(&a);
            let mut deviation = None;
            for (i, alpha) in rotations.iter().enumerate() {
                let counts = (
                    occurrences(alpha, &aaa)?.len(),
                    occurrences(alpha, &ab)?.len(),
                    occurrences(alpha, &ba)?.len(),
                );
                if counts != (2, 1, 0) {
                    deviation = Some(format!("rotation {} gives {counts:?}", i + 1));
                    break;
                }
            }
            report.check_eq("rotation_count", &subject, n - 1, rotations.len());
            report.check_eq(
                "rotation_occurrences",
                &subject,
                "(2, 1, 0)".to_string(),
                deviation.unwrap_or_else(|| "(2, 1, 0)".to_string()),
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemmas_hold_for_small_k() {
        let r = verify_lemmas(2, 12).unwrap();
        assert!(r.all_passed(), "{r}");
        assert!(r.checks.iter().any(|c| c.name == "rotation_occurrences" && c.subject == "k=12"));
        assert!(!r.checks.iter().any(|c| c.name == "rotation_occurrences" && c.subject == "k=2"));
    }

    #[test]
    fn primitivity_only_below_two() {
        let r = verify_lemmas(0, 1).unwrap();
        assert!(r.all_passed());
        assert!(r.checks.iter().all(|c| c.name != "abaa_tiling"));
        assert!(r.checks.iter().any(|c| c.name == "primitive"));
    }

    #[test]
    fn corrupted_sequence_is_caught() {
        let mutated = |k: u32| -> Result<BinaryString> {
            let mut s = pd_doubling(k)?.seq.into_bytes();
            if k == 6 {
                s[10] = if s[10] == b'a' { b'b' } else { b'a' };
            }
            BinaryString::new(s)
        };
        let r = verify_lemmas_with(5, 7, &mutated).unwrap();
        assert!(!r.all_passed());
        let f = r.first_failure.unwrap();
        assert_eq!((f.name.as_str(), f.subject.as_str()), ("morphic_equals_doubling", "k=6"));
    }

    #[test]
    fn range_errors() {
        assert!(verify_lemmas(3, 2).is_err());
        assert!(verify_lemmas(0, DEFAULT_MAX_K + 1).is_err());
    }
}
