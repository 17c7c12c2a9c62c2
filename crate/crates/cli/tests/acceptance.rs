//! Acceptance suite: one line per criterion, exact comparisons throughout.
//! Run with `cargo test -p coverreg-cli --test acceptance`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coverreg::cohomology::{
    ai_patterns_all, ai_values, fit_linear, regularity_from_ai, HomologyCache, RealizedPattern, DEFAULT_SCAN_BUDGET,
};
use coverreg::complexes::{degree_complex_general, degree_complex_unimodular, DegreeVector};
use coverreg::exactlin::{int, lp_dual, lp_solve, Relation};
use coverreg::hypergraph::{is_totally_unimodular, TuVerdict, DEFAULT_TU_CAP};
use coverreg::monomial::{cover_ideal, krull_dim_quotient, symbolic_power_cover};
use coverreg::polytopes::{default_dual_pair, delta_sequence, dual_fit};
use coverreg::{AiValue, Field, Hypergraph, LinearProgram, LpOutcome, Method, MonomialIdeal, RationalMatrix};
use coverreg_cli::{cmd_verify, write_outputs, CommonArgs, Format};

type Outcome = Result<String, String>;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus() -> Vec<(String, Hypergraph)> {
    coverreg_cli::load_inputs(&[corpus_dir()])
        .expect("corpus loads")
        .into_iter()
        .map(|i| (i.id, i.hypergraph))
        .collect()
}

fn is_tu(h: &Hypergraph) -> bool {
    is_totally_unimodular(&h.incidence_matrix(), DEFAULT_TU_CAP)
        .map(|v| v.is_unimodular())
        .unwrap_or(false)
}

fn tu_corpus() -> Vec<(String, Hypergraph)> {
    corpus().into_iter().filter(|(_, h)| is_tu(h)).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equivalence() -> Outcome {
    let members: Vec<_> = tu_corpus().into_iter().filter(|(_, h)| h.n() <= 6).collect();
    let mut comparisons = 0;
    for (name, h) in &members {
        let cache = HomologyCache::new();
        for s in 1..=4 {
            let o = ai_values(h, s, Field::Rationals, Method::Oracle, DEFAULT_SCAN_BUDGET, &cache).map_err(|e| e.to_string())?;
            let p = ai_values(h, s, Field::Rationals, Method::Patterns, DEFAULT_SCAN_BUDGET, &cache).map_err(|e| e.to_string())?;
            ensure(o == p, || format!("{name} s={s}: oracle {o:?} patterns {p:?}"))?;
            comparisons += o.len();
        }
    }
    Ok(format!("{} hypergraphs, {comparisons} (p, s) values equal", members.len()))
}

fn degree_complex_equivalence() -> Outcome {
    let mut points = 0u64;
    for (name, h) in tu_corpus() {
        for s in 1..=3 {
            let ideal = cover_ideal(&h).and_then(|j| j.power(s)).map_err(|e| e.to_string())?;
            let radices: Vec<u64> = ideal.max_exponents().iter().map(|&r| u64::from(r) + 1).collect();
            for mut index in 0..radices.iter().product::<u64>() {
                let mut alpha = Vec::with_capacity(radices.len());
                for &r in &radices {
                    alpha.push((index % r) as i64);
                    index /= r;
                }
                let alpha = DegreeVector::new(alpha);
                let fast = degree_complex_unimodular(&h, s, &alpha).map_err(|e| e.to_string())?;
                let general = degree_complex_general(&ideal, &alpha);
                ensure(fast == general, || format!("{name} s={s} alpha={alpha:?}: {fast:?} vs {general:?}"))?;
                points += 1;
            }
        }
    }
    Ok(format!("{points} degrees, facet sets identical"))
}

fn ideal_eq(a: &MonomialIdeal, b: &MonomialIdeal) -> bool {
    a.contains_ideal(b) && b.contains_ideal(a)
}

fn symbolic_equals_ordinary() -> Outcome {
    let members = tu_corpus();
    for (name, h) in &members {
        for s in 1..=3 {
            let ordinary = cover_ideal(h).and_then(|j| j.power(s)).map_err(|e| e.to_string())?;
            let symbolic = symbolic_power_cover(h, s).map_err(|e| e.to_string())?;
            ensure(ideal_eq(&ordinary, &symbolic), || format!("{name} s={s}: powers differ"))?;
        }
    }
    let c3 = Hypergraph::cycle(3).map_err(|e| e.to_string())?;
    let ordinary = cover_ideal(&c3).and_then(|j| j.power(2)).map_err(|e| e.to_string())?;
    let symbolic = symbolic_power_cover(&c3, 2).map_err(|e| e.to_string())?;
    ensure(symbolic.contains_ideal(&ordinary) && !ordinary.contains_ideal(&symbolic), || {
        "C3 s=2: inclusion not strict".into()
    })?;
    Ok(format!("{} TU members equal for s <= 3; C3 strict at s = 2", members.len()))
}

fn c4_regularity() -> Outcome {
    let c4 = Hypergraph::cycle(4).map_err(|e| e.to_string())?;
    let want = [3i64, 5, 7, 9, 11, 13];
    let cache = HomologyCache::new();
    let mut reg = BTreeMap::new();
    for method in [Method::Oracle, Method::Patterns] {
        let got: Vec<i64> = (1..=6)
            .map(|s| {
                ai_values(&c4, s, Field::Rationals, method, DEFAULT_SCAN_BUDGET, &cache)
                    .and_then(|v| regularity_from_ai(&v))
                    .map_err(|e| e.to_string())
            })
            .collect::<Result<_, _>>()?;
        ensure(got == want, || format!("{method}: {got:?}"))?;
        reg = got.iter().enumerate().map(|(i, &r)| (i as u32 + 1, r)).collect();
    }
    let d_j = cover_ideal(&c4).and_then(|j| j.max_gen_degree()).map_err(|e| e.to_string())?;
    let dim = krull_dim_quotient(&c4).map_err(|e| e.to_string())? as i64;
    let fit = fit_linear(&reg, Some(i64::from(d_j))).map_err(|f| f.reason)?;
    let e = fit.intercept();
    ensure(fit.d == 2 && e == 1 && e <= dim - fit.d + 1, || format!("fit d={} e={e}", fit.d))?;
    ensure(fit.onset == 1 && fit.onset <= 5 && fit.onset <= 6, || format!("onset {}", fit.onset))?;
    Ok(format!("reg = {want:?} by both methods; d = 2 = d(J), e = 1 <= {}, onset 1 <= 5, 6", dim - fit.d + 1))
}

fn c4_ai_linearity() -> Outcome {
    let c4 = Hypergraph::cycle(4).map_err(|e| e.to_string())?;
    let cache = HomologyCache::new();
    let mut col = BTreeMap::new();
    for s in 1..=6u32 {
        for method in [Method::Oracle, Method::Patterns] {
            let v = ai_values(&c4, s, Field::Rationals, method, DEFAULT_SCAN_BUDGET, &cache).map_err(|e| e.to_string())?;
            let want = AiValue::Finite(2 * i64::from(s) - 2);
            ensure(v[2] == want, || format!("{method} s={s}: a_2 = {}", v[2]))?;
        }
        col.insert(s, 2 * i64::from(s) - 2);
    }
    let fit = fit_linear(&col, None).map_err(|f| f.reason)?;
    ensure(fit.d == 2 && fit.e == 2 && fit.d <= fit.e && fit.e <= 16, || format!("d={} e={}", fit.d, fit.e))?;
    Ok("a_2 = 2s - 2 for s = 1..6; d = 2 <= e = 2 <= 16".into())
}

fn delta_suite() -> Outcome {
    let mut patterns: BTreeMap<(String, Vec<usize>, Vec<usize>), RealizedPattern> = BTreeMap::new();
    for (name, h) in tu_corpus() {
        let cache = HomologyCache::new();
        for s in 1..=4 {
            for r in ai_patterns_all(&h, s, Field::Rationals, &cache).map_err(|e| e.to_string())?.realized {
                patterns.entry((name.clone(), r.removed.clone(), r.pattern.lower().to_vec())).or_insert(r);
            }
        }
    }
    for ((name, removed, lower), r) in &patterns {
        let pat = &r.pattern;
        let n = pat.base().n() as i64;
        let threshold = pat.stabilization_threshold();
        let seq = delta_sequence(pat, 1..=threshold + 3, true).map_err(|e| e.to_string())?;
        let label = format!("{name} G={removed:?} lower={lower:?}");
        ensure(seq.checks.passed(), || format!("{label}: {:?}", seq.checks.counterexamples))?;
        let (d, st) = seq.d.zip(seq.stabilization).ok_or_else(|| format!("{label}: no stabilization"))?;
        ensure(st.e >= 0 && st.e <= n * n && st.onset <= threshold, || format!("{label}: e={} onset={}", st.e, st.onset))?;
        let fit = dual_fit(pat, default_dual_pair(st.onset), Some((d, st.e))).map_err(|e| e.to_string())?;
        ensure(fit.checks.passed() && (fit.a, fit.b) == (d, st.e) && fit.a <= fit.b, || {
            format!("{label}: dual ({}, {}) vs ({d}, {})", fit.a, fit.b, st.e)
        })?;
    }
    Ok(format!("{} realized patterns: monotone e_t, P_n nonempty, e <= n^2, onset bound, dual (a, b) = (d, e)", patterns.len()))
}

fn tu_gate() -> Outcome {
    let mut bipartite = 0;
    for (name, h) in corpus() {
        if h.is_bipartite_graph() {
            ensure(is_tu(&h), || format!("{name} bipartite but not TU"))?;
            bipartite += 1;
        }
    }
    for name in ["cycle_c3", "cycle_c5"] {
        let (_, h) = corpus().into_iter().find(|(n, _)| n == name).ok_or_else(|| format!("{name} missing"))?;
        let m = h.incidence_matrix();
        match is_totally_unimodular(&m, DEFAULT_TU_CAP).map_err(|e| e.to_string())? {
            TuVerdict::Violated(w) => {
                let recomputed = m.submatrix(&w.rows, &w.cols).det().map_err(|e| e.to_string())?;
                ensure(recomputed == w.det && (w.det == int(2) || w.det == int(-2)), || {
                    format!("{name}: witness det {} recomputed {recomputed}", w.det)
                })?;
            }
            TuVerdict::TotallyUnimodular => return Err(format!("{name} passed")),
        }
    }
    Ok(format!("{bipartite} bipartite members TU; C3, C5 rejected with det +-2 witnesses"))
}

/// A random bounded program over an interval matrix with a known feasible integer point.
fn random_tu_program(rng: &mut ChaCha8Rng) -> (LinearProgram, RationalMatrix) {
    let n = rng.gen_range(2..=5);
    let x0: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
    let mut lp = LinearProgram::maximize((0..n).map(|_| int(rng.gen_range(-3..=4))).collect());
    let mut rows = Vec::new();
    for _ in 0..rng.gen_range(1..=5) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(a..n);
        let row: Vec<i64> = (0..n).map(|j| i64::from(a <= j && j <= b)).collect();
        let at_x0: i64 = row.iter().zip(&x0).map(|(r, x)| r * x).sum();
        let slack = rng.gen_range(0..=2);
        let (rel, rhs) = match rng.gen_range(0..3) {
            0 => (Relation::Le, at_x0 + slack),
            1 => (Relation::Ge, at_x0 - slack),
            _ => (Relation::Eq, at_x0),
        };
        lp.add_constraint(row.iter().map(|&c| int(c)).collect(), rel, int(rhs)).expect("row length");
        rows.push(row);
    }
    for (j, &x) in x0.iter().enumerate() {
        let row: Vec<i64> = (0..n).map(|k| i64::from(k == j)).collect();
        lp.add_constraint(row.iter().map(|&c| int(c)).collect(), Relation::Le, int(x + rng.gen_range(0..=3)))
            .expect("row length");
        rows.push(row);
    }
    (lp, RationalMatrix::from_i64_rows(&rows).expect("rectangular"))
}

fn lp_kernel() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for k in 0..100 {
        let (lp, m) = random_tu_program(&mut rng);
        ensure(is_totally_unimodular(&m, DEFAULT_TU_CAP).map_err(|e| e.to_string())?.is_unimodular(), || {
            format!("program {k}: matrix not TU")
        })?;
        let LpOutcome::Optimal { value, point } = lp_solve(&lp) else {
            return Err(format!("program {k}: feasible bounded program not solved to optimality"));
        };
        ensure(point.iter().all(|x| x.is_integer()), || format!("program {k}: fractional vertex {point:?}"))?;
        let dual = lp_solve(&lp_dual(&lp).map_err(|e| e.to_string())?);
        ensure(dual.value().map(|v| -v) == Some(value.clone()), || format!("program {k}: primal {value} dual {dual:?}"))?;
    }
    Ok("100 programs: primal = dual, integral optima".into())
}

fn determinism() -> Outcome {
    let args = CommonArgs {
        inputs: vec![corpus_dir()],
        s_max: 4,
        t_max: 12,
        field: Field::Rationals,
        method: None,
        out: None,
        format: vec![Format::Csv, Format::Json],
        tu_cap: DEFAULT_TU_CAP,
        scan_budget: DEFAULT_SCAN_BUDGET,
    };
    let mut bytes = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let out = cmd_verify(&args).map_err(|e| e.to_string())?;
        ensure(out.passed, || format!("verify failed:\n{}", out.stdout))?;
        write_outputs(dir.path(), &out.files).map_err(|e| e.to_string())?;
        let mut files = Vec::new();
        for (name, _) in &out.files {
            files.push((name.clone(), std::fs::read(dir.path().join(name)).map_err(|e| e.to_string())?));
        }
        bytes.push((out.stdout, files));
    }
    ensure(bytes[0] == bytes[1], || "reports differ between runs".into())?;
    let size: usize = bytes[0].1.iter().map(|(_, b)| b.len()).sum();
    Ok(format!("two verify runs byte-identical ({} files, {size} bytes)", bytes[0].1.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("oracle equivalence", oracle_equivalence),
        ("degree-complex equivalence", degree_complex_equivalence),
        ("symbolic = ordinary powers", symbolic_equals_ordinary),
        ("C4 regularity", c4_regularity),
        ("a_i linearity", c4_ai_linearity),
        ("delta(P_t) suite", delta_suite),
        ("TU gate", tu_gate),
        ("LP kernel", lp_kernel),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("[PASS] {}. {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
