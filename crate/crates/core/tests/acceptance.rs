//! Runs every acceptance criterion and prints one PASS/FAIL line for each;
//! exits non-zero if any fails.

use std::time::{Duration, Instant};

use lehmer_ff::cyclo::FactoringBudget;
use lehmer_ff::ffield::field_from_order;
use lehmer_ff::lehmer_search::{
    abundancy_bound_violations, candidate_degrees, candidate_degrees_with_precision,
    classify_a_ge_3, totient_bound_violations, verify_prop36, Partition,
};
use lehmer_ff::totient::{check_lehmer_invariants, lehmer_set};
use lehmer_ff::verify::{
    euler_theorem_check, exponent_map_check, published_lehmer_set, run_suite,
    totient_oracle_check, zsigmondy_check, Suite, SuiteConfig,
};

fn verdict(id: u32, what: &str, ok: bool, limit: Option<Duration>, elapsed: Duration, detail: &str) -> bool {
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let passed = ok && in_time;
    let timing = match limit {
        Some(l) => format!(" [{:.2}s / {}s]", elapsed.as_secs_f64(), l.as_secs()),
        None => format!(" [{:.2}s]", elapsed.as_secs_f64()),
    };
    println!(
        "criterion {id:>2}: {} {what}{timing}{}",
        if passed { "PASS" } else { "FAIL" },
        if detail.is_empty() { String::new() } else { format!(" -- {detail}") }
    );
    passed
}

fn single_worker<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(f)
}

fn texts<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn criterion_01_binary_lehmer_set() -> bool {
    let start = Instant::now();
    let field = field_from_order(2).unwrap();
    let found = single_worker(|| lehmer_set(&field, 12, false).unwrap());
    let (expected, _) = published_lehmer_set(&field, 12).unwrap();
    let ok = found == expected;
    verdict(
        1,
        "L(F_2[x]) to degree 12 is exactly the six listed products",
        ok,
        secs(60),
        start.elapsed(),
        &if ok { String::new() } else { format!("found {:?}", texts(&found)) },
    )
}

fn criterion_02_ternary_lehmer_set() -> bool {
    let start = Instant::now();
    let field = field_from_order(3).unwrap();
    let monic = lehmer_set(&field, 8, false).unwrap();
    let expanded = lehmer_set(&field, 8, true).unwrap();
    let (want_monic, want_expanded) = published_lehmer_set(&field, 8).unwrap();
    let want_expanded = want_expanded.unwrap();
    let ok = monic == want_monic && expanded == want_expanded && expanded.len() == 6;
    verdict(
        2,
        "L(F_3[x]) to degree 8: three monic hits, six with unit multiples",
        ok,
        secs(60),
        start.elapsed(),
        &format!("monic {:?}", texts(&monic)),
    )
}

fn criterion_03_larger_fields_empty() -> bool {
    let start = Instant::now();
    let mut found = Vec::new();
    for q in [4u64, 5] {
        let field = field_from_order(q).unwrap();
        found.extend(lehmer_set(&field, 7, false).unwrap());
    }
    verdict(
        3,
        "L(F_4[x]) and L(F_5[x]) to degree 7 are empty",
        found.is_empty(),
        secs(120),
        start.elapsed(),
        &texts(&found).join(", "),
    )
}

fn criterion_04_bases_at_least_three() -> bool {
    let start = Instant::now();
    let found = classify_a_ge_3(8, 10).unwrap();
    let expected = vec![
        (3, Partition::new(vec![1, 1]).unwrap()),
        (3, Partition::new(vec![1, 1, 1, 1]).unwrap()),
    ];
    let shown: Vec<String> = found.iter().map(|(a, p)| format!("({a},{p})")).collect();
    verdict(
        4,
        "dividing partitions for 3 <= a <= 8, n <= 10 are (3,(1,1)) and (3,(1,1,1,1))",
        found == expected,
        secs(30),
        start.elapsed(),
        &shown.join(" "),
    )
}

fn criterion_05_base_two_constrained_partitions() -> bool {
    let start = Instant::now();
    let found = verify_prop36(30).unwrap();
    let expected: Vec<(u32, Partition)> = [(2, vec![1, 1]), (4, vec![1, 1, 2]), (6, vec![1, 2, 3])]
        .into_iter()
        .map(|(n, p)| (n, Partition::new(p).unwrap()))
        .collect();
    let shown: Vec<String> = found.iter().map(|(n, p)| format!("({n},{p})")).collect();
    verdict(
        5,
        "constrained a = 2 partitions to n = 30 are (1,1), (1,1,2), (1,2,3)",
        found == expected,
        secs(60),
        start.elapsed(),
        &shown.join(" "),
    )
}

fn criterion_06_candidate_degrees() -> bool {
    let start = Instant::now();
    let sets = candidate_degrees(200).unwrap();
    let low_precision = candidate_degrees_with_precision(200, 30);
    let mut coarse: Vec<u64> = (7..=22).collect();
    coarse.extend([24, 26, 30, 34, 38, 42, 46, 50, 54]);
    let refined = vec![8, 9, 10, 12, 14, 18, 20, 24, 30];
    let coarse_ok = sets.coarse == coarse;
    let refined_ok = sets.refined == refined;
    let precision_ok = low_precision.as_ref() == Ok(&sets);
    let extra: Vec<u64> = sets.coarse.iter().copied().filter(|n| !coarse.contains(n)).collect();
    let missing: Vec<u64> = coarse.iter().copied().filter(|n| !sets.coarse.contains(n)).collect();
    verdict(
        6,
        "candidate degrees to 200: coarse and refined sets, stable at 30 digits",
        coarse_ok && refined_ok && precision_ok,
        None,
        start.elapsed(),
        &format!(
            "coarse {} (extra {extra:?}, missing {missing:?}); refined {}; 30-digit run {}",
            if coarse_ok { "matches" } else { "differs" },
            if refined_ok { "matches" } else { "differs" },
            if precision_ok { "agrees" } else { "disagrees or alerts" },
        ),
    )
}

fn criterion_07_totient_oracle() -> bool {
    let start = Instant::now();
    let checks = [
        totient_oracle_check(2, 6).unwrap(),
        totient_oracle_check(3, 4).unwrap(),
        totient_oracle_check(4, 4).unwrap(),
    ];
    let mismatches: Vec<String> = checks.iter().flat_map(|c| c.found.clone()).collect();
    let cases: u64 = checks.iter().map(|c| c.cases).sum();
    verdict(
        7,
        "totient formula equals residue count (F_2 deg <= 6, F_3 and F_4 deg <= 4)",
        mismatches.is_empty(),
        secs(30),
        start.elapsed(),
        &format!("{cases} polynomials, {} mismatches", mismatches.len()),
    )
}

fn criterion_08_primitive_divisors() -> bool {
    let start = Instant::now();
    let check = zsigmondy_check(12, 30, &FactoringBudget::default()).unwrap();
    verdict(
        8,
        "primitive divisors of a^n - 1 for a <= 12, n <= 30 exist exactly off the exceptions",
        check.passed,
        None,
        start.elapsed(),
        &check.found.join("; "),
    )
}

fn criterion_09_cyclotomic_lemmas() -> bool {
    let start = Instant::now();
    let report = run_suite(Suite::CycloLemmas, &SuiteConfig::default()).unwrap();
    let failed: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.found.join(", ")))
        .collect();
    verdict(
        9,
        "cyclotomic identities and lemmas over their bounded ranges",
        report.passed,
        secs(120),
        start.elapsed(),
        &failed.join("; "),
    )
}

fn criterion_10_arithmetic_bounds() -> bool {
    let start = Instant::now();
    let n_max = 100_000;
    let h: Vec<u64> = abundancy_bound_violations(n_max).into_iter().filter(|&n| n >= 2).collect();
    let phi = totient_bound_violations(n_max);
    verdict(
        10,
        "h(n) < 1.28 n^(1/4) and phi(n) > c(n) n^(3/4) for 2 <= n <= 10^5",
        h.is_empty() && phi.is_empty(),
        secs(60),
        start.elapsed(),
        &format!("abundancy violations {h:?}; totient violations {phi:?}"),
    )
}

fn criterion_11_property_suites() -> bool {
    let start = Instant::now();
    let mut problems = Vec::new();
    for q in [2u64, 3, 4, 5, 9] {
        let c = euler_theorem_check(q, 100, 0x5eed).unwrap();
        if !c.passed {
            problems.push(format!("{}: {}", c.name, c.found.join(", ")));
        }
    }
    for (q, d) in [(2u64, 12usize), (3, 8), (4, 6), (5, 5), (7, 4)] {
        let field = field_from_order(q).unwrap();
        let set = lehmer_set(&field, d, false).unwrap();
        if let Err(e) = check_lehmer_invariants(&set) {
            problems.push(e.to_string());
        }
        let expanded = lehmer_set(&field, d, true).unwrap();
        if let Err(e) = check_lehmer_invariants(&expanded) {
            problems.push(e.to_string());
        }
    }
    let map = exponent_map_check(20).unwrap();
    if !map.passed {
        problems.push(format!("{}: {}", map.name, map.found.join(", ")));
    }
    verdict(
        11,
        "Euler's theorem mod f, squarefree and Schettler invariants, exponent-map consistency",
        problems.is_empty(),
        None,
        start.elapsed(),
        &problems.join("; "),
    )
}

fn main() {
    let criteria: [fn() -> bool; 11] = [
        criterion_01_binary_lehmer_set,
        criterion_02_ternary_lehmer_set,
        criterion_03_larger_fields_empty,
        criterion_04_bases_at_least_three,
        criterion_05_base_two_constrained_partitions,
        criterion_06_candidate_degrees,
        criterion_07_totient_oracle,
        criterion_08_primitive_divisors,
        criterion_09_cyclotomic_lemmas,
        criterion_10_arithmetic_bounds,
        criterion_11_property_suites,
    ];
    let mut failed = Vec::new();
    for (i, criterion) in criteria.into_iter().enumerate() {
        let id = i + 1;
        match std::panic::catch_unwind(criterion) {
            Ok(true) => {}
            Ok(false) => failed.push(id),
            Err(_) => {
                println!("criterion {id:>2}: FAIL (panicked)");
                failed.push(id);
            }
        }
    }
    println!(
        "acceptance: {} passed, {} failed {:?}",
        criteria.len() - failed.len(),
        failed.len(),
        failed
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
