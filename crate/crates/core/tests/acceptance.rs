//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line and then
//! asserts; run with `cargo test -p gpcolor --test acceptance -- --nocapture`
//! to see the lines.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use gpcolor::crc::{crc_report, distance_partition, is_completely_regular, is_equitable, DedupRule, Partition};
use gpcolor::{
    brute_force_colorings, build_gp, construct, derive_matrix, divisibility_admissible, existence_sweep, search_gp,
    verify_coloring, white_count, Coloring, GpParams, MatrixId, SearchOptions,
};
use num_rational::Ratio;

fn report(id: u32, name: &str, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id}: {name} ({detail})");
    assert!(ok, "criterion {id} failed: {detail}");
}

fn p(n: usize, k: usize) -> GpParams {
    GpParams::new(n, k).unwrap()
}

/// `n` values in `ns` where a coloring with `id` exists, from an existence sweep.
fn exists_at(k: usize, ns: std::ops::RangeInclusive<usize>) -> Vec<(MatrixId, Vec<usize>)> {
    let cells = existence_sweep(k, ns, 1).unwrap();
    MatrixId::ALL
        .into_iter()
        .map(|id| (id, cells.iter().filter(|c| c.matrix == id && c.exists).map(|c| c.n).collect()))
        .collect()
}

#[test]
fn criterion_1_table_k3() {
    let started = Instant::now();
    let got = exists_at(3, 7..=12);
    let expected: Vec<(MatrixId, Vec<usize>)> = vec![
        (MatrixId::A1, vec![7, 8, 9, 10, 11, 12]),
        (MatrixId::A2, vec![]),
        (MatrixId::A3, vec![8, 10, 12]),
        (MatrixId::A4, vec![8, 12]),
        (MatrixId::A5, vec![10]),
        (MatrixId::A6, vec![8, 10, 12]),
    ];
    let elapsed = started.elapsed();
    let ok = got == expected && elapsed < Duration::from_secs(120);
    report(1, "existence table for k=3, n in 7..12", ok, &format!("{got:?} in {elapsed:?}"));
}

#[test]
fn criterion_2_table_k2() {
    let got = exists_at(2, 5..=12);
    let expected: Vec<(MatrixId, Vec<usize>)> = vec![
        (MatrixId::A1, (5..=12).collect()),
        (MatrixId::A2, vec![6, 9, 12]),
        (MatrixId::A3, vec![]),
        (MatrixId::A4, vec![]),
        (MatrixId::A5, vec![5, 10]),
        (MatrixId::A6, vec![]),
    ];
    report(2, "existence table for k=2, n in 5..12", got == expected, &format!("{got:?}"));
}

#[test]
fn criterion_3_constructors() {
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in 3..=100 {
        for k in 1..=(n - 1) / 2 {
            let params = p(n, k);
            let g = build_gp(params);
            for id in MatrixId::ALL {
                let Ok(c) = construct(params, id) else { continue };
                let a = id.matrix();
                let perfect = verify_coloring(&g, &c, &a).unwrap().is_perfect();
                let white = white_count(&a, g.vertex_count() as u64).unwrap();
                let count_ok = Ratio::from_integer(c.class_size(1) as u64) == white;
                if !perfect || !count_ok {
                    failures.push(format!("{params} {id}"));
                }
                checked += 1;
            }
        }
    }
    // A3/A4 must have been exercised on every eligible GP(n,3)
    let eligible_a4 = (7..=100).filter(|n| n % 4 == 0).count();
    let ok = failures.is_empty() && checked > 2 * eligible_a4;
    report(
        3,
        "constructors verify and match the white count, n <= 100",
        ok,
        &format!("{checked} colorings, failures {failures:?}"),
    );
}

#[test]
fn criterion_4_oracle_equivalence() {
    let started = Instant::now();
    let mut rows = Vec::new();
    let mut ok = true;
    for n in 7..=11 {
        let g = build_gp(p(n, 3));
        for id in MatrixId::ALL {
            let a = id.matrix();
            let fast = search_gp(p(n, 3), &a, SearchOptions::default()).unwrap().count;
            let slow = brute_force_colorings(&g, &a).unwrap().count;
            ok &= fast == slow;
            rows.push(format!("GP({n},3) {id}: {fast}/{slow}"));
        }
    }
    let elapsed = started.elapsed();
    ok &= elapsed < Duration::from_secs(300);
    report(
        4,
        "backtracking counts equal brute-force counts, GP(n,3) n in 7..11",
        ok,
        &format!("{} in {elapsed:?}", rows.join(", ")),
    );
}

#[test]
fn criterion_5_filter_sound_not_complete() {
    let mut unsound = Vec::new();
    for n in 7..=12 {
        for id in MatrixId::ALL {
            let a = id.matrix();
            let found = search_gp(p(n, 3), &a, SearchOptions::existence()).unwrap().count > 0;
            if found && !divisibility_admissible(&a, 2 * n as u64) {
                unsound.push(format!("GP({n},3) {id}"));
            }
        }
    }
    let a4 = MatrixId::A4.matrix();
    let passes = divisibility_admissible(&a4, 20);
    let count = search_gp(p(10, 3), &a4, SearchOptions::default()).unwrap().count;
    let ok = unsound.is_empty() && passes && count == 0;
    report(
        5,
        "divisibility filter is sound and necessary-only",
        ok,
        &format!("rejected-yet-found {unsound:?}; GP(10,3)/A4 admissible={passes} count={count}"),
    );
}

#[test]
fn criterion_6_crc_gp_9_3() {
    let started = Instant::now();
    let r = crc_report(p(9, 3), 9, 1).unwrap();
    let elapsed = started.elapsed();
    let rules = r.rules_yielding(2);
    let all_imperfect = r.codes.iter().all(|c| !c.perfect);
    let counts: Vec<String> = r.counts.iter().map(|c| format!("{}={}", c.rule, c.count)).collect();
    let ok = !rules.is_empty() && all_imperfect && elapsed < Duration::from_secs(60);
    report(
        6,
        "GP(9,3) completely regular codes of size 9",
        ok,
        &format!(
            "counts [{}], rules giving 2: {rules:?}, none perfect: {all_imperfect}, {elapsed:?}",
            counts.join(", ")
        ),
    );
    assert_eq!(r.count(DedupRule::Raw), r.codes.len());
}

fn rotation_closed(params: GpParams, witnesses: &[Coloring]) -> bool {
    let set: BTreeSet<&Coloring> = witnesses.iter().collect();
    witnesses.iter().all(|w| set.contains(&w.permuted(|v| params.rotate(v, 1))))
}

#[test]
fn criterion_7_property_suite() {
    let mut problems = Vec::new();
    let mut witnesses_checked = 0;
    for n in 7..=12 {
        let params = p(n, 3);
        let g = build_gp(params);
        for id in MatrixId::ALL {
            let a = id.matrix();
            let swapped_matrix = a.swapped().unwrap();
            let first = search_gp(params, &a, SearchOptions::collecting()).unwrap();
            let again = search_gp(params, &a, SearchOptions::collecting()).unwrap();
            let parallel = search_gp(params, &a, SearchOptions { workers: 4, ..SearchOptions::collecting() }).unwrap();
            if first.without_timing() != again.without_timing() || first.without_timing() != parallel.without_timing() {
                problems.push(format!("{params} {id}: nondeterministic report"));
            }
            if !rotation_closed(params, &first.witnesses) {
                problems.push(format!("{params} {id}: witness set not closed under rotation"));
            }
            for w in &first.witnesses {
                witnesses_checked += 1;
                if derive_matrix(&g, w).unwrap().as_ref() != Some(&a)
                    || !verify_coloring(&g, w, &a).unwrap().is_perfect()
                {
                    problems.push(format!("{params} {id}: verify/derive round trip failed for {w}"));
                }
                if !verify_coloring(&g, &w.swapped().unwrap(), &swapped_matrix).unwrap().is_perfect() {
                    problems.push(format!("{params} {id}: swapped coloring does not have the swapped matrix"));
                }
                let q = is_equitable(&g, &Partition::from_coloring(w).unwrap()).unwrap();
                match q {
                    Some(q) if q == a && q.row_sums().iter().all(|&s| s == 3) => {}
                    _ => problems.push(format!("{params} {id}: quotient mismatch for {w}")),
                }
                for color in [1, 2] {
                    if a.a(color as usize, color as usize) > 2 {
                        continue;
                    }
                    let class = w.class(color);
                    let crc = is_completely_regular(&g, &class).unwrap();
                    let ok =
                        crc.as_ref().is_some_and(|c| c.covering_radius == 1 && c.quotient.row_sums() == vec![3, 3]);
                    let cells = distance_partition(&g, &class).unwrap().len();
                    if !ok || cells != 2 {
                        problems.push(format!("{params} {id}: color class {color} of {w} is not a radius-1 CRC"));
                    }
                }
            }
        }
    }
    report(
        7,
        "rotation closure, swap transposition, round trip, row sums, determinism",
        problems.is_empty() && witnesses_checked > 0,
        &format!("{witnesses_checked} witnesses, problems {problems:?}"),
    );
}
