//! Naive-versus-indexed agreement on an exhaustive binary corpus plus a
//! seeded random corpus over small alphabets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::search::MAX_ENUM_LEN;
use super::show;
use crate::error::{Error, Result};
use crate::factor::{factorize, render_pipes, Engine, Factorization, Scheme, NAIVE_MAX_LEN};
use crate::report::VerificationReport;

/// `trials` strings with lengths in `1..=max_len` over alphabets of 2 to 4
/// letters, reproducible from `seed`.
pub fn random_corpus(trials: usize, max_len: usize, seed: u64) -> Vec<Vec<u8>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let sigma = rng.gen_range(2..=4u8);
            let len = rng.gen_range(1..=max_len.max(1));
            (0..len).map(|_| b'a' + rng.gen_range(0..sigma)).collect()
        })
        .collect()
}

fn all_binary(max_len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for bits in 0u64..1 << len {
            out.push(
                (0..len)
                    .rev()
                    .map(|i| if bits >> i & 1 == 1 { b'b' } else { b'a' })
                    .collect(),
            );
        }
    }
    out
}

pub fn cross_check_engines(
    max_len: usize,
    random_trials: usize,
    max_random_len: usize,
    seed: u64,
) -> Result<VerificationReport> {
    cross_check_with(max_len, random_trials, max_random_len, seed, &|w, scheme| {
        factorize(w, scheme, Engine::Indexed)
    })
}

/// Compares the naive engines against `candidate` on every scheme.
pub fn cross_check_with(
    max_len: usize,
    random_trials: usize,
    max_random_len: usize,
    seed: u64,
    candidate: &(dyn Fn(&[u8], Scheme) -> Result<Factorization> + Sync),
) -> Result<VerificationReport> {
    if max_len > MAX_ENUM_LEN {
        return Err(Error::ResourceLimit {
            what: "exhaustive length",
            value: max_len as u64,
            max: MAX_ENUM_LEN as u64,
        });
    }
    if max_random_len > NAIVE_MAX_LEN || (random_trials > 0 && max_random_len == 0) {
        return Err(Error::ResourceLimit {
            what: "random string length",
            value: max_random_len as u64,
            max: NAIVE_MAX_LEN as u64,
        });
    }

    let mut report = VerificationReport::new(format!(
        "engines exhaustive<= {max_len}, random {random_trials}x<= {max_random_len}"
    ));
    report.seed = Some(seed);
    let corpora = [
        (format!("exhaustive<={max_len}"), all_binary(max_len)),
        (
            format!("random seed={seed}"),
            random_corpus(random_trials, max_random_len, seed),
        ),
    ];

    for (label, inputs) in &corpora {
        if inputs.is_empty() {
            continue;
        }
        for scheme in Scheme::ALL {
            let outcomes: Vec<Result<Option<(Factorization, Factorization)>>> = inputs
                .par_iter()
                .map(|w| {
                    let reference = factorize(w, scheme, Engine::Naive)?;
                    let got = candidate(w, scheme)?;
                    Ok((reference != got).then_some((reference, got)))
                })
                .collect();
            let mut first = None;
            for (w, outcome) in inputs.iter().zip(outcomes) {
                if let Some(pair) = outcome? {
                    first = Some((w, pair));
                    break;
                }
            }
            let subject = format!("{scheme} {label}");
            match first {
                None => {
                    report.push(
                        "engine_equivalence",
                        subject,
                        "identical phrases",
                        format!("identical on {} inputs", inputs.len()),
                        true,
                        String::new,
                    );
                }
                Some((w, (reference, got))) => {
                    let payload = || {
                        format!(
                            "input: {}\nnaive: {}\n  {}\ncandidate: {}\n  {}",
                            show(w),
                            render_pipes(&reference, w).unwrap_or_else(|e| e.to_string()),
                            reference.to_json(),
                            render_pipes(&got, w).unwrap_or_else(|e| e.to_string()),
                            got.to_json()
                        )
                    };
                    report.push(
                        "engine_equivalence",
                        subject,
                        "identical phrases",
                        format!("diverges on {}", show(w)),
                        false,
                        payload,
                    );
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_small() {
        let r = cross_check_engines(10, 0, 0, 0).unwrap();
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.checks.len(), 3);
    }

    #[test]
    fn random_small() {
        let r = cross_check_engines(0, 200, 300, 42).unwrap();
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.seed, Some(42));
    }

    #[test]
    fn corpus_is_reproducible() {
        assert_eq!(random_corpus(20, 50, 7), random_corpus(20, 50, 7));
        assert_ne!(random_corpus(20, 50, 7), random_corpus(20, 50, 8));
        let c = random_corpus(200, 30, 1);
        assert!(c.iter().all(|w| !w.is_empty() && w.len() <= 30));
        assert!(c.iter().flatten().all(|&b| (b'a'..=b'd').contains(&b)));
    }

    #[test]
    fn truncated_engine_is_caught() {
        let stub = |w: &[u8], scheme: Scheme| -> Result<Factorization> {
            let mut f = factorize(w, scheme, Engine::Indexed)?;
            if let Some(p) = f.phrases.last_mut() {
                if p.len > 1 {
                    p.len -= 1;
                }
            }
            Ok(f)
        };
        let r = cross_check_with(6, 0, 0, 0, &stub).unwrap();
        assert!(!r.all_passed());
        let f = r.first_failure.unwrap();
        assert!(f.subject.starts_with("LZ77"));
        assert!(f.payload.contains("input: aa"));
    }

    #[test]
    fn guards() {
        assert!(cross_check_engines(25, 0, 0, 0).is_err());
        assert!(cross_check_engines(0, 1, NAIVE_MAX_LEN + 1, 0).is_err());
        assert!(cross_check_engines(0, 1, 0, 0).is_err());
    }
}
