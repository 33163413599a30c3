//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num::{BigRational, One, Zero};

use common::{corpus, fixture, Params};
use lrcpir::capacity::{c_asymptotic, c_finite, CapacityQuery, FileCount};
use lrcpir::code::LinearCode;
use lrcpir::ematrix::{brute_force_search, construct, step_a_with_seeds, validate, Construction};
use lrcpir::error::Error;
use lrcpir::format::{load_code, read_gf_matrix};
use lrcpir::gf::{make_field, Field};
use lrcpir::lrc::{check_compliance, feasible_surpluses, lemma3_check, Lemma3Outcome, LrcCode};
use lrcpir::matrix::{BinaryMatrix, MatrixGF};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if took > limit {
        o.pass = false;
        o.detail.push_str(&format!("; exceeded time limit {limit:?}"));
    }
    o.detail.push_str(&format!(" [{:.2} s]", took.as_secs_f64()));
    o
}

fn criterion_1() -> Outcome {
    let h = read_gf_matrix(&fixture("H_C.txt")).unwrap();
    let code = LinearCode::from_parity_check(h).unwrap();
    let mut notes = Vec::new();
    let mut pass = (code.n(), code.k()) == (7, 4);
    for set in [[1, 2, 3], [4, 5, 6]] {
        let local = code.puncture(&set).unwrap();
        let d = local.dmin_bruteforce().unwrap();
        let ok = (local.n(), local.k(), d) == (3, 2, 2) && local.is_mds().unwrap();
        notes.push(format!("C|{set:?} = [{}, {}] d={d}", local.n(), local.k()));
        pass &= ok;
    }
    let d = code.dmin_bruteforce().unwrap();
    pass &= d == 3;
    notes.push(format!("d_min = {d}"));

    // which degree-3 polynomial makes the parent matrix MDS
    let text = fixture("H_MDS.txt");
    let mut mds_under = Vec::new();
    for poly in [[1, 0, 1, 1], [1, 1, 0, 1]] {
        let f = make_field(2, 3, &poly).unwrap();
        let parent = LinearCode::from_parity_check(MatrixGF::from_text(&f, &text).unwrap()).unwrap();
        if parent.is_mds().unwrap() {
            mds_under.push(if poly == [1, 0, 1, 1] { "x^3+x+1" } else { "x^3+x^2+1" });
        }
    }
    pass &= !mds_under.is_empty();
    notes.push(format!("H^MDS is MDS under {}", mds_under.join(" and ")));
    outcome(pass, notes.join(", "))
}

fn criterion_2() -> Outcome {
    let lrc = load_code(&fixture("pyramid_7_4.json")).unwrap();
    let e = BinaryMatrix::from_text(&fixture("reference_E.txt")).unwrap();
    let rep = validate(&e, lrc.linear()).unwrap();
    let weights_ok = rep.row_weights.iter().chain(&rep.col_weights).all(|&w| w == 3);
    let rows_ok = rep.row_correctable.iter().filter(|&&b| b).count();
    outcome(
        rep.verdict && weights_ok && rows_ok == 7,
        format!("weights all 3: {weights_ok}, correctable rows: {rows_ok}/7"),
    )
}

struct Instance {
    params: Params,
    lrc: LrcCode,
    built: Result<Construction, Error>,
}

fn build_corpus() -> Vec<Instance> {
    corpus()
        .into_iter()
        .map(|params| {
            let lrc = params.build();
            let built = construct(&lrc);
            Instance { params, lrc, built }
        })
        .collect()
}

fn describe(p: &Params) -> String {
    format!("GF(2^{}) n={} k={} r={} delta={} L_c={} rbar={}", p.m, p.n, p.k, p.r, p.delta, p.local_codes, p.remainder)
}

fn criterion_3(corpus: &[Instance]) -> Outcome {
    let mut failures = Vec::new();
    for inst in corpus {
        let ok = match &inst.built {
            Ok(b) => validate(b.matrix.matrix(), inst.lrc.code()).unwrap().verdict,
            Err(e) => {
                failures.push(format!("{} ({e})", describe(&inst.params)));
                continue;
            }
        };
        if !ok {
            failures.push(format!("{} (rejected by validate)", describe(&inst.params)));
        }
    }
    let mut detail = format!("{}/{} instances constructed and validated", corpus.len() - failures.len(), corpus.len());
    for f in &failures {
        detail.push_str(&format!("\n      failed: {f}"));
    }
    outcome(failures.is_empty(), detail)
}

/// Rank of the chosen columns of `g`, by elimination written independently of the library.
fn column_rank(f: &Field, g: &MatrixGF, cols: &[usize]) -> usize {
    let mut m: Vec<Vec<u32>> = (0..g.rows()).map(|r| cols.iter().map(|&c| g.get(r, c)).collect()).collect();
    let mut rank = 0;
    for c in 0..cols.len() {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        let inv = f.inv(m[rank][c]).unwrap();
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let s = f.mul(m[r][c], inv);
                for j in 0..cols.len() {
                    let v = f.mul(s, m[rank][j]);
                    m[r][j] = f.sub(m[r][j], v);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Masks of erasure sets containing the support of some nonzero codeword,
/// found by listing every codeword. `None` when there are too many.
fn uncorrectable_by_enumeration(code: &LinearCode) -> Option<Vec<bool>> {
    let (n, k) = (code.n(), code.k());
    let f = code.field();
    let q = f.order() as u64;
    if q.checked_pow(k as u32)? > 1 << 16 {
        return None;
    }
    let g = code.generator();
    let mut bad = vec![false; 1 << n];
    let mut msg = vec![0u32; k];
    for index in 1..q.pow(k as u32) {
        let mut x = index;
        for slot in msg.iter_mut() {
            *slot = (x % q) as u32;
            x /= q;
        }
        let mut mask = 0usize;
        for c in 0..n {
            let v = (0..k).fold(0, |acc, i| f.add(acc, f.mul(msg[i], g.get(i, c))));
            if v != 0 {
                mask |= 1 << c;
            }
        }
        bad[mask] = true;
    }
    // superset closure
    for bit in 0..n {
        for s in 0..1usize << n {
            if s & (1 << bit) != 0 && bad[s ^ (1 << bit)] {
                bad[s] = true;
            }
        }
    }
    Some(bad)
}

fn criterion_4(corpus: &[Instance]) -> Outcome {
    let mut disagreements = Vec::new();
    let (mut codes, mut patterns, mut enumerated) = (0, 0u64, 0);
    for inst in corpus.iter().filter(|i| i.params.n <= 10) {
        codes += 1;
        let code = inst.lrc.code();
        let (n, k) = (code.n(), code.k());
        let constructed = inst.built.is_ok();
        let searched = match brute_force_search(code, 200_000_000) {
            Ok(found) => found.is_some(),
            Err(e) => {
                disagreements.push(format!("{}: search {e}", describe(&inst.params)));
                continue;
            }
        };
        if constructed != searched {
            disagreements.push(format!(
                "{}: construct {}, search {}",
                describe(&inst.params),
                if constructed { "succeeds" } else { "fails" },
                if searched { "finds a witness" } else { "finds none" }
            ));
        }
        let table = uncorrectable_by_enumeration(code);
        enumerated += table.is_some() as usize;
        for w in 0..=n - k {
            for s in (0..n).combinations(w) {
                patterns += 1;
                let rank_says = code.is_correctable_0(&s);
                let rest: Vec<usize> = (0..n).filter(|c| !s.contains(c)).collect();
                let completion = column_rank(code.field(), code.generator(), &rest) == k;
                let listed = table.as_ref().map(|t| !t[s.iter().map(|&c| 1usize << c).sum::<usize>()]);
                if rank_says != completion || listed.is_some_and(|l| l != completion) {
                    disagreements.push(format!("{}: pattern {s:?}", describe(&inst.params)));
                }
            }
        }
    }
    let mut detail = format!(
        "{codes} codes, {patterns} patterns ({enumerated} codes also by full codeword listing), {} disagreements",
        disagreements.len()
    );
    for d in &disagreements {
        detail.push_str(&format!("\n      {d}"));
    }
    outcome(disagreements.is_empty(), detail)
}

fn criterion_5(corpus: &[Instance]) -> Outcome {
    let mut problems = Vec::new();
    let mut checked = 0;
    for inst in corpus.iter().filter(|i| i.params.remainder >= 1) {
        let Ok(built) = &inst.built else { continue };
        checked += 1;
        let p = inst.lrc.profile();
        let (n, k, nc, l, rbar) = (p.n, p.k, p.local_length, p.partitions, p.remainder);
        let tracked: Vec<usize> = p.parity_sets[..l].iter().flatten().map(|c| c - 1).collect();
        let mut e = built.step_a.matrix().clone();
        if step_a_with_seeds(p, built.config.seeds.clone()).unwrap().0 != built.step_a {
            problems.push(format!("{}: Step a not reproducible from its seeds", describe(&inst.params)));
        }
        let mut fail = |msg: String| problems.push(format!("{}: {msg}", describe(&inst.params)));
        if built.trace.iterations.len() != rbar {
            fail(format!("{} iterations", built.trace.iterations.len()));
            continue;
        }
        for (it, iteration) in built.trace.iterations.iter().enumerate() {
            let before = e.col_weights();
            let rows_before = e.row_weights();
            let z = nc * l + it;
            let swaps: Vec<_> = iteration.partitions.iter().flat_map(|ps| &ps.swaps).collect();
            if swaps.len() != n - k - rbar {
                fail(format!("iteration {}: {} swaps", it + 1, swaps.len()));
            }
            let first = &iteration.partitions[0].shift;
            for (i, ps) in iteration.partitions.iter().enumerate() {
                let expected: Vec<u8> = (0..l).map(|b| first[(b + l - i) % l]).collect();
                let active = ps.column_partition - 1;
                let cols: Vec<usize> = ps.swaps.iter().map(|s| s.from_col).sorted().collect();
                if ps.shift != expected || ps.shift.iter().map(|&x| x as usize).sum::<usize>() != 1 || cols != p.parity_sets[active] {
                    fail(format!("iteration {}: partition {} shift or columns wrong", it + 1, i + 1));
                }
                for s in &ps.swaps {
                    let (r, c) = (s.row - 1, s.from_col - 1);
                    if !(i * nc..(i + 1) * nc).contains(&r) || s.to_col - 1 != z || !e.get(r, c) || e.get(r, z) {
                        fail(format!("iteration {}: bad swap {s:?}", it + 1));
                        continue;
                    }
                    e.set(r, c, false);
                    e.set(r, z, true);
                }
            }
            let after = e.col_weights();
            for &c in &tracked {
                if after[c] + 1 != before[c] {
                    fail(format!("iteration {}: column {} went {} -> {}", it + 1, c + 1, before[c], after[c]));
                }
            }
            if e.row_weights() != rows_before {
                fail(format!("iteration {}: row weights changed", it + 1));
            }
            let z_body = (0..nc * l).filter(|&r| e.get(r, z)).count();
            if z_body != n - k - rbar || after[z] != n - k {
                fail(format!("iteration {}: Z column weight {z_body}, total {}", it + 1, after[z]));
            }
            let rows_ok = (0..n).all(|r| {
                let s: Vec<usize> = (0..n).filter(|&c| e.get(r, c)).collect();
                inst.lrc.code().is_correctable_0(&s)
            });
            if !rows_ok {
                fail(format!("iteration {}: uncorrectable intermediate row", it + 1));
            }
        }
        if &e != built.matrix.matrix() {
            fail("replayed trace does not reproduce E".into());
        }
    }
    let mut detail = format!("{checked} instances with rbar >= 1 replayed, {} problems", problems.len());
    for p in &problems {
        detail.push_str(&format!("\n      {p}"));
    }
    outcome(problems.is_empty(), detail)
}

fn criterion_6() -> Outcome {
    let grid: Vec<(u64, u64)> = (2..).flat_map(|n| (1..n).map(move |k| (n, k))).take(50).collect();
    let mut problems = Vec::new();
    for &(n, k) in &grid {
        let q = |f| CapacityQuery::new(n, k, FileCount::Finite(f)).unwrap();
        let limit = c_asymptotic(&q(1));
        if c_finite(&q(1)).unwrap() != BigRational::one() {
            problems.push(format!("C_1({n},{k}) != 1"));
        }
        let mut prev_gap: Option<BigRational> = None;
        let mut prev: Option<BigRational> = None;
        for f in 1..=64 {
            let c = c_finite(&q(f)).unwrap();
            let gap = &c - &limit;
            if !(gap > BigRational::zero()) || prev.as_ref().is_some_and(|p| c >= *p) || prev_gap.as_ref().is_some_and(|g| gap >= *g) {
                problems.push(format!("({n},{k}) f={f}"));
            }
            prev = Some(c);
            prev_gap = Some(gap);
        }
    }
    let c74 = c_asymptotic(&CapacityQuery::new(7, 4, FileCount::Infinite).unwrap());
    let exact = c74 == BigRational::new(3.into(), 7.into());
    outcome(
        problems.is_empty() && exact && grid.len() == 50,
        format!("{} (n,k) pairs, f = 1..64, {} violations, C_inf(7,4) = {c74}", grid.len(), problems.len()),
    )
}

fn criterion_7(corpus: &[Instance]) -> Outcome {
    let (mut codes, mut vectors, mut patterns, mut skipped) = (0, 0, 0u64, 0);
    let mut counterexamples = Vec::new();
    for inst in corpus {
        if !check_compliance(&inst.lrc).all_ok() {
            continue;
        }
        codes += 1;
        for nu in feasible_surpluses(inst.lrc.profile()) {
            match lemma3_check(&inst.lrc, &nu) {
                Ok(Lemma3Outcome::Holds { patterns: p }) => {
                    vectors += 1;
                    patterns += p;
                }
                Ok(Lemma3Outcome::Counterexample { support }) => {
                    counterexamples.push(format!("{} nu={nu:?} erased={support:?}", describe(&inst.params)))
                }
                Ok(Lemma3Outcome::NotApplicable { .. }) | Err(Error::TooLarge(_)) => skipped += 1,
                Err(e) => counterexamples.push(format!("{}: {e}", describe(&inst.params))),
            }
        }
    }
    let mut detail = format!(
        "{codes} compliant codes, {vectors} surplus vectors, {patterns} patterns, {skipped} skipped as too large, {} counterexamples",
        counterexamples.len()
    );
    for c in &counterexamples {
        detail.push_str(&format!("\n      {c}"));
    }
    outcome(counterexamples.is_empty() && vectors > 0, detail)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut results = vec![
        ("1 worked example: local codes and d_min", timed(Duration::from_secs(1), criterion_1)),
        ("2 worked example: displayed E validates", timed(Duration::from_secs(1), criterion_2)),
    ];
    let mut corpus = Vec::new();
    let c3 = timed(Duration::from_secs(60), || {
        corpus = build_corpus();
        criterion_3(&corpus)
    });
    results.push(("3 construction over the corpus", c3));
    results.push(("4 oracle agreement (n <= 10)", timed(Duration::from_secs(120), || criterion_4(&corpus))));
    results.push(("5 step b bookkeeping", criterion_5(&corpus)));
    results.push(("6 capacity formulas", criterion_6()));
    results.push(("7 simultaneous local erasures", criterion_7(&corpus)));

    println!();
    let mut all = true;
    for (name, o) in &results {
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        all &= o.pass;
    }
    println!("acceptance finished in {:.1} s", start.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
