//! Acceptance suite. Runs every criterion in order, prints one PASS/FAIL line
//! per criterion, and exits non-zero if any of them failed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lzend_core::factor::{decode, factorize, render_pipes, validate, Engine, Scheme};
use lzend_core::lab::{
    cross_check_engines, max_ratio_search, measured_ratio_table, theory_ratio_table,
    verify_lemmas, verify_structure,
};
use lzend_core::seqgen::{hat, pd_doubling};
use lzend_core::theory::{f_of_k, kstar_table, pd_slp, ratio};
use num_rational::Ratio;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed <= budget, || format!("took {elapsed:?}, budget {budget:?}"))
}

fn pipes(w: &[u8], scheme: Scheme, engine: Engine) -> Result<String, String> {
    let f = factorize(w, scheme, engine).map_err(|e| e.to_string())?;
    render_pipes(&f, w).map_err(|e| e.to_string())
}

fn golden_factorizations() -> Outcome {
    let t = Instant::now();
    let s4 = pd_doubling(4).unwrap();
    let s5 = pd_doubling(5).unwrap();
    let s = b"abaababaabbabbaababa".to_vec();
    let saba = [s.as_slice(), b"aba"].concat();
    let cases: [(&[u8], &str); 4] = [
        (s4.as_bytes(), "a|b|aa|aba|bab|aaabaa"),
        (s5.as_bytes(), "a|b|aa|aba|bab|aaabaa|abaaabababa|aabab"),
        (&s, "a|b|aa|ba|baab|bab|baabab|a"),
        (&saba, "a|b|aa|ba|baab|bab|baababaaba"),
    ];
    for engine in [Engine::Naive, Engine::Indexed] {
        for (w, expected) in cases {
            let got = pipes(w, Scheme::LzEnd, engine)?;
            ensure(got == expected, || format!("{engine}: got {got}, expected {expected}"))?;
        }
    }
    within(t.elapsed(), Duration::from_secs(1))?;
    Ok(format!("4 golden LZ-End parses exact on both engines in {:?}", t.elapsed()))
}

fn proposition() -> Outcome {
    let t = Instant::now();
    for k in 0..=20u32 {
        let s = pd_doubling(k).unwrap();
        let f = factorize(s.as_bytes(), Scheme::Lz77, Engine::Indexed).unwrap();
        let mut expected = vec![pd_doubling(0).unwrap().seq.into_bytes()];
        for i in 0..k {
            expected.push(hat(&pd_doubling(i).unwrap().seq).unwrap().into_bytes());
        }
        let texts = f.phrase_texts(s.as_bytes()).unwrap();
        ensure(f.count() == k as usize + 1, || format!("k={k}: z = {}", f.count()))?;
        ensure(
            texts.iter().zip(&expected).all(|(a, b)| *a == b.as_slice()),
            || format!("k={k}: phrase list differs"),
        )?;
    }
    within(t.elapsed(), Duration::from_secs(60))?;
    Ok(format!("lz(S_k) = (S_0, ^S_0, ..., ^S_(k-1)), z = k+1 for k = 0..20 in {:?}", t.elapsed()))
}

fn theorem() -> Outcome {
    let table = kstar_table(10_000).unwrap();
    ensure(table.entries == [5, 11, 395], || format!("k* table {:?}", table.entries))?;
    let t = Instant::now();
    let mut last = Duration::ZERO;
    for k in 5..=24u32 {
        let f = f_of_k(k as u64).unwrap();
        let expected_f = if k <= 9 { 2 } else { 3 };
        ensure(f == expected_f, || format!("f({k}) = {f}"))?;
        let s = pd_doubling(k).unwrap();
        let tk = Instant::now();
        let z = factorize(s.as_bytes(), Scheme::LzEnd, Engine::Indexed).unwrap().count() as u64;
        last = tk.elapsed();
        ensure(z == 2 * k as u64 - f, || format!("indexed k={k}: lzeph {z} != {}", 2 * k as u64 - f))?;
        if k <= 14 {
            let zn = factorize(s.as_bytes(), Scheme::LzEnd, Engine::Naive).unwrap().count() as u64;
            ensure(zn == z, || format!("naive k={k}: lzeph {zn} != {z}"))?;
        }
    }
    within(last, Duration::from_secs(600))?;
    Ok(format!(
        "lzeph(S_k) = 2k - f(k) for k = 5..24 (naive to 14); k=24 took {last:?}, total {:?}",
        t.elapsed()
    ))
}

fn structure_lemma() -> Outcome {
    let r = verify_structure(5, 16, Engine::Indexed).map_err(|e| e.to_string())?;
    ensure(r.all_passed(), || r.to_text())?;
    let in_k: Vec<&str> = r
        .checks
        .iter()
        .filter(|c| c.name == "in_K" && c.expected == "true")
        .map(|c| c.subject.as_str())
        .collect();
    ensure(in_k == ["k=5", "k=11"], || format!("realignment branch taken at {in_k:?}"))?;
    Ok(format!("{} structure checks, in_K branch at k = 5, 11", r.summary.passed))
}

fn lemma_suite() -> Outcome {
    let t = Instant::now();
    let r = verify_lemmas(0, 20).map_err(|e| e.to_string())?;
    ensure(r.all_passed(), || r.to_text())?;
    for (name, lo, hi) in [
        ("primitive", 0, 20),
        ("abaa_tiling", 2, 20),
        ("count_A_in_S", 2, 20),
        ("rotation_occurrences", 3, 12),
    ] {
        let covered: Vec<u32> = r
            .checks
            .iter()
            .filter(|c| c.name == name)
            .map(|c| c.subject.trim_start_matches("k=").parse().unwrap())
            .collect();
        ensure(covered == (lo..=hi).collect::<Vec<_>>(), || format!("{name} covered {covered:?}"))?;
    }
    within(t.elapsed(), Duration::from_secs(300))?;
    Ok(format!("{} lemma checks in {:?}", r.summary.passed, t.elapsed()))
}

fn ratio_trend() -> Outcome {
    let theory = theory_ratio_table(5, 16).unwrap();
    let measured = measured_ratio_table(5, 16, Engine::Indexed).unwrap();
    ensure(theory == measured, || "theory and measured tables differ".into())?;
    let r24 = ratio(24).unwrap();
    ensure(r24 == Ratio::new(9, 5), || format!("ratio(24) = {r24}"))?;
    for k in 5..=10_000u64 {
        let gap = Ratio::from_integer(2) - ratio(k).unwrap();
        let f = f_of_k(k).unwrap();
        ensure(gap == Ratio::new(f + 2, k + 1), || format!("k={k}: 2 - ratio = {gap}"))?;
    }
    ensure(f_of_k(10_000).unwrap() == 4, || "f(10^4) != 4".into())?;
    Ok("tables agree on 5..16; ratio(24) = 9/5; 2 - ratio(k) = (f+2)/(k+1) for k <= 10^4".into())
}

fn conjecture() -> Outcome {
    let t = Instant::now();
    let r = max_ratio_search(16, Engine::Naive).map_err(|e| e.to_string())?;
    ensure(r.strings_examined == (1 << 16) - 1, || format!("examined {}", r.strings_examined))?;
    ensure(r.dominance_violations.is_empty(), || format!("z' < z on {:?}", r.dominance_violations))?;
    ensure(r.best_ratio <= Ratio::from_integer(2), || format!("best ratio {}", r.best_ratio))?;
    within(t.elapsed(), Duration::from_secs(900))?;
    let sample: Vec<&str> = r.witnesses.iter().take(3).map(|w| w.string.as_str()).collect();
    Ok(format!(
        "max z'/z = {}/{} over {} representatives, {} witnesses (first: {:?}) in {:?}",
        r.best_ratio.numer(),
        r.best_ratio.denom(),
        r.strings_examined,
        r.witnesses.len(),
        sample,
        t.elapsed()
    ))
}

fn oracle_equivalence() -> Outcome {
    let t = Instant::now();
    let r = cross_check_engines(14, 1000, 2000, 42).map_err(|e| e.to_string())?;
    ensure(r.all_passed(), || r.to_text())?;
    ensure(r.checks.len() == 6, || format!("{} checks", r.checks.len()))?;
    Ok(format!("naive == indexed on 2^15-2 binary strings and 1000 random (seed 42) in {:?}", t.elapsed()))
}

fn slp() -> Outcome {
    for k in 2..=20u32 {
        let g = pd_slp(k).unwrap();
        ensure(g.size() == 2 * k as usize + 1, || format!("k={k}: size {}", g.size()))?;
        ensure(g.expand() == pd_doubling(k).unwrap().as_bytes(), || format!("k={k}: expansion"))?;
    }
    Ok("size 2k+1 and expansion = S_k for k = 2..20".into())
}

fn alphabet_text(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    (2u8..=4).prop_flat_map(move |sigma| prop::collection::vec(b'a'..b'a' + sigma, 0..=max_len))
}

fn property_suite() -> Outcome {
    const CASES: u32 = 10_000;
    let config = || Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    let mut results = Vec::new();

    let mut runner = TestRunner::new(config());
    results.push((
        "decode round-trip",
        runner.run(&alphabet_text(64), |w| {
            for scheme in Scheme::ALL {
                let f = factorize(&w, scheme, Engine::Indexed).unwrap();
                prop_assert_eq!(decode(&f, &w).unwrap(), w.clone());
            }
            Ok(())
        })
        .map_err(|e| e.to_string()),
    ));

    let mut runner = TestRunner::new(config());
    results.push((
        "greedy maximality",
        runner.run(&alphabet_text(48), |w| {
            for scheme in Scheme::ALL {
                let f = factorize(&w, scheme, Engine::Indexed).unwrap();
                let r = validate(&f, &w);
                prop_assert!(r.all_passed(), "{}", r);
            }
            Ok(())
        })
        .map_err(|e| e.to_string()),
    ));

    let mut runner = TestRunner::new(config());
    results.push((
        "z' >= z",
        runner.run(&alphabet_text(64), |w| {
            let z = factorize(&w, Scheme::Lz77, Engine::Indexed).unwrap().count();
            let zp = factorize(&w, Scheme::LzEnd, Engine::Indexed).unwrap().count();
            prop_assert!(zp >= z);
            Ok(())
        })
        .map_err(|e| e.to_string()),
    ));

    let mut runner = TestRunner::new(config());
    let perm_case = (alphabet_text(64), Just(*b"abcd").prop_shuffle());
    results.push((
        "permutation invariance",
        runner.run(&perm_case, |(w, perm)| {
            let mapped: Vec<u8> = w.iter().map(|&c| perm[(c - b'a') as usize]).collect();
            for scheme in Scheme::ALL {
                let a = factorize(&w, scheme, Engine::Indexed).unwrap().lengths();
                let b = factorize(&mapped, scheme, Engine::Indexed).unwrap().lengths();
                prop_assert_eq!(a, b);
            }
            Ok(())
        })
        .map_err(|e| e.to_string()),
    ));

    let failed: Vec<String> = results
        .iter()
        .filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}")))
        .collect();
    ensure(failed.is_empty(), || failed.join("; "))?;
    Ok(format!("4 properties x {CASES} cases, zero failures"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("golden factorizations", golden_factorizations),
        ("LZ77 proposition", proposition),
        ("LZ-End phrase count theorem", theorem),
        ("structure lemma", structure_lemma),
        ("word lemmas", lemma_suite),
        ("ratio trend", ratio_trend),
        ("z'/z <= 2 exhaustive search", conjecture),
        ("oracle equivalence", oracle_equivalence),
        ("SLP size", slp),
        ("property suite", property_suite),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let elapsed = t.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL {name}: {detail} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
