//! The acceptance gate. Runs without the libtest harness so the per-criterion
//! pass/fail lines always reach the `cargo test` log, in order; any failure
//! or panic exits nonzero. The heavy catalog scan is shared between criteria
//! 4 and 5.

use std::process::Command;
use std::sync::{Mutex, OnceLock};
use std::time::Instant;
use xmnlab::{
    brute_force_xmn_oracle, catalog_scan, class_spec, contains_kmn, generation_probability,
    kst_random_property_test, make_alternating, make_symmetric, pair_in_class, registry,
    run_scan, verify_group, x_probability, ClassId, Report, ScanOptions, VerifyOptions, XGraph,
    XmnOutcome,
};

fn ratio(p: i64, q: i64) -> num::BigRational {
    num::BigRational::new(p.into(), q.into())
}

static FAILURES: Mutex<Vec<String>> = Mutex::new(Vec::new());

fn criterion(n: usize, what: &str, ok: bool) {
    println!(
        "[acceptance] criterion {n}: {} - {what}",
        if ok { "PASS" } else { "FAIL" }
    );
    if !ok {
        FAILURES.lock().unwrap().push(format!("criterion {n}: {what}"));
    }
}

/// The order-200 catalog scan, run once, single-threaded in-process.
fn full_scan() -> &'static Report {
    static SCAN: OnceLock<Report> = OnceLock::new();
    SCAN.get_or_init(|| {
        run_scan(&ScanOptions {
            max_order: 200,
            classes: ClassId::ALL.to_vec(),
            verify: VerifyOptions::default(),
            order_cap: 1000,
            seed: None,
            parallel: false,
        })
    })
}

fn criterion_1_constant_reproduction() {
    let start = Instant::now();
    let registry = registry();
    let expect = [
        (ClassId::Nilpotent, ratio(1, 2), ratio(4, 1)),
        (ClassId::Soluble, ratio(11, 30), ratio(60, 19)),
        (ClassId::OddOrder, ratio(1, 4), ratio(8, 3)),
        (ClassId::FittedUniversal, ratio(37, 90), ratio(180, 53)),
        (ClassId::Abelian, ratio(5, 8), ratio(16, 3)),
    ];
    let ok = expect.iter().all(|(id, gamma, base)| {
        let spec = registry.iter().find(|s| s.id == *id).unwrap();
        spec.gamma == *gamma && spec.bound_base() == *base
    });
    criterion(
        1,
        &format!(
            "registry reproduces 2/(1-gamma) = 4, 60/19, 8/3, 180/53 exactly ({:?})",
            start.elapsed()
        ),
        ok,
    );
}

fn criterion_2_extremal_probabilities() {
    let start = Instant::now();
    let s3 = make_symmetric(3, 1000).unwrap();
    let a5 = make_alternating(5, 1000).unwrap();
    let ok = x_probability(&s3, ClassId::Nilpotent) == ratio(1, 2)
        && x_probability(&a5, ClassId::Soluble) == ratio(11, 30)
        && generation_probability(&a5) == ratio(19, 30);
    criterion(
        2,
        &format!(
            "p_nilpotent(S3) = 1/2, p_soluble(A5) = 11/30, generation p(A5) = 19/30 ({:?})",
            start.elapsed()
        ),
        ok,
    );
}

fn criterion_3_oracle_equivalence() {
    let start = Instant::now();
    let mut cells = 0usize;
    let mut agreed = 0usize;
    for entry in catalog_scan(12) {
        let group = entry.build(1000).unwrap();
        for id in ClassId::ALL {
            let spec = class_spec(id);
            let xg = XGraph::build(&group, spec.clone());
            for m in 1..=3usize {
                for n in m..=3usize {
                    let fast = xg.satisfies_xmn(m, n).unwrap().holds();
                    let slow = brute_force_xmn_oracle(&group, &spec, m, n).unwrap();
                    cells += 1;
                    agreed += usize::from(fast == slow);
                }
            }
        }
    }
    criterion(
        3,
        &format!(
            "satisfies_xmn matches the brute-force oracle in {agreed}/{cells} cells \
             over the order <= 12 catalog ({:?})",
            start.elapsed()
        ),
        cells > 0 && agreed == cells,
    );
}

fn criterion_4_theorem_bound_suite() {
    let start = Instant::now();
    let report = full_scan();
    let s = &report.summary;
    let ok = report.errors.is_empty()
        && s.bound_checks > 0
        && s.bound_violations == 0
        && s.corollary_violations == 0
        && s.chain_anomalies == 0;
    criterion(
        4,
        &format!(
            "order <= 200 catalog, all classes, m in 1..3: {} bound checks, \
             0 violations, universal 180/53 form included ({:?} single-threaded)",
            s.bound_checks,
            start.elapsed()
        ),
        ok,
    );
}

fn criterion_5_threshold_consequence() {
    let report = full_scan();
    let non_members = report.rows.iter().filter(|r| !r.in_class).count();
    let ok = non_members > 0 && report.summary.threshold_violations == 0;
    criterion(
        5,
        &format!(
            "p_X <= gamma holds exactly for all {non_members} non-member \
             (group, class) cells of the order <= 200 catalog"
        ),
        ok,
    );
}

fn criterion_6_hand_checkable_case() {
    let s3 = make_symmetric(3, 1000).unwrap();
    let spec = class_spec(ClassId::Abelian);
    let xg = XGraph::build(&s3, spec.clone());

    let n_star = xg.n_star(1, 4).unwrap();
    let at_4 = xg.satisfies_xmn(1, 4).unwrap();
    let at_5 = xg.satisfies_xmn(1, 5).unwrap();
    let witness_is_transposition = match &at_4 {
        XmnOutcome::Violated(w) => {
            w.m_set.len() == 1
                && s3.element(w.m_set[0]).order() == 2
                && w.bad_common.len() == 4
        }
        _ => false,
    };
    let report = verify_group(&s3, &spec, &VerifyOptions { m_min: 1, m_max: 1, ..Default::default() });
    let check = report.checks[0].check.as_ref().unwrap();
    let ok = n_star.value == 5
        && witness_is_transposition
        && at_5.holds()
        && check.bound == "64/3"
        && check.holds;
    criterion(
        6,
        "S3 with the abelian class: n*(1) = 5, X(1,4) fails at a transposition \
         with 4 common bad elements, X(1,5) holds, 6 <= (16/3)*4",
        ok,
    );
}

fn criterion_7_kst_property_test() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = String::new();
    for (m, n) in [(1u32, 3u64), (2, 2), (2, 3)] {
        let summary = kst_random_property_test(42, 30, m, n, 500, false).unwrap();
        ok &= summary.violations == 0 && summary.trials == 500;
        detail.push_str(&format!(
            "({m},{n}): {} exceeded, {} boundary at m=1; ",
            summary.exceeded_strictly, summary.boundary_m1
        ));
    }
    criterion(
        7,
        &format!(
            "1500 seeded graphs on <= 30 vertices, every strict exceedance \
             yields a K_m_n witness; {detail}({:?})",
            start.elapsed()
        ),
        ok,
    );
}

fn criterion_8_structural_invariants() {
    let start = Instant::now();
    let mut ok = true;
    let mut graphs = 0usize;
    for entry in catalog_scan(60) {
        let group = entry.build(1000).unwrap();
        let t = group.order();
        for id in ClassId::ALL {
            let xg = XGraph::build(&group, class_spec(id));
            graphs += 1;

            // accounting identity
            ok &= 2 * xg.eta() + xg.loop_count() == xg.bad_ordered();

            // adjacency symmetry and irreflexivity
            for x in 0..t {
                ok &= !xg.adjacency(x).contains(x);
                for y in xg.adjacency(x).ones() {
                    ok &= xg.adjacency(y).contains(x);
                }
            }

            // monotonicity in m and n, and X(m,n) implies K_{m,n}-freeness
            let simple = xg.to_simple_graph();
            let mut holds = [[false; 4]; 4];
            for m in 1..=3usize {
                for n in 1..=3usize {
                    holds[m][n] = xg.satisfies_xmn(m, n).unwrap().holds();
                }
            }
            for m in 1..=3usize {
                for n in 1..=3usize {
                    if holds[m][n] {
                        if m < 3 {
                            ok &= holds[m + 1][n];
                        }
                        if n < 3 {
                            ok &= holds[m][n + 1];
                        }
                        if n >= m {
                            ok &= contains_kmn(&simple, m, n, 4).unwrap().is_none();
                        }
                    }
                }
            }
        }

        // conjugation invariance of pair classification, strided sample
        let stride = (t / 7).max(1);
        for id in ClassId::ALL {
            for x in (0..t).step_by(stride) {
                for y in (0..t).step_by(stride) {
                    let base = pair_in_class(&group, x, y, id);
                    for g in (0..t).step_by(stride) {
                        let cx = group.conjugate(x, g);
                        let cy = group.conjugate(y, g);
                        ok &= pair_in_class(&group, cx, cy, id) == base;
                    }
                }
            }
        }
    }
    criterion(
        8,
        &format!(
            "accounting, symmetry, monotonicity, conjugation invariance and \
             K_m_n-freeness over {graphs} graphs from the order <= 60 catalog ({:?})",
            start.elapsed()
        ),
        ok && graphs > 0,
    );
}

fn criterion_9_determinism() {
    let start = Instant::now();
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_xmnlab"))
            .env("RAYON_NUM_THREADS", threads)
            .env_remove("XMNLAB_ORDER_CAP")
            .args(["scan", "--max-order", "100", "--seed", "7", "--format", "json"])
            .output()
            .expect("binary runs");
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    let single = run("1");
    let parallel = run("4");
    criterion(
        9,
        &format!(
            "scan --max-order 100 --seed 7 single-threaded and with 4 threads: \
             byte-identical {} byte reports ({:?})",
            single.len(),
            start.elapsed()
        ),
        !single.is_empty() && single == parallel,
    );
}

fn main() {
    let criteria: [(usize, fn()); 9] = [
        (1, criterion_1_constant_reproduction),
        (2, criterion_2_extremal_probabilities),
        (3, criterion_3_oracle_equivalence),
        (4, criterion_4_theorem_bound_suite),
        (5, criterion_5_threshold_consequence),
        (6, criterion_6_hand_checkable_case),
        (7, criterion_7_kst_property_test),
        (8, criterion_8_structural_invariants),
        (9, criterion_9_determinism),
    ];
    let mut panicked = 0usize;
    for (n, run) in criteria {
        if std::panic::catch_unwind(run).is_err() {
            println!("[acceptance] criterion {n}: FAIL - panicked");
            panicked += 1;
        }
    }
    let failures = FAILURES.lock().unwrap();
    if failures.is_empty() && panicked == 0 {
        println!("[acceptance] all 9 criteria passed");
    } else {
        for f in failures.iter() {
            eprintln!("[acceptance] failed: {f}");
        }
        std::process::exit(1);
    }
}
