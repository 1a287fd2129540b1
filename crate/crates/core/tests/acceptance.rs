//! Acceptance suite. Runs without the libtest harness and prints one
//! PASS/FAIL line per criterion; exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{bits, rows_of, Gf};
use eaqecc::bch::{
    construct, construct_with, reproduce_table, reproduce_table_with, table_certify_options, table_rows,
    CertifyOptions, ConstructionError, ConstructionRequest, ConstructionResult, DistanceReport, RowStatus, TableReport,
    Theorem,
};
use eaqecc::codes::{
    bch_dual_bound, evaluation_code, min_weight, subfield_subcode, CosetCodes, LinearCode, WeightError,
};
use eaqecc::cosets::{bound_b, CosetTable};
use eaqecc::enlarge::{build_da, make_a_case1, symplectic_entanglement_by_dimension, Delta, SplitCode};
use eaqecc::galois::{Elem, Field, Poly};
use eaqecc::matgf::{companion, skew_rank, Matrix};

/// Parameter sets small enough for the test-side oracles.
const SMALL: [(u64, u32, u32); 5] = [(2, 4, 1), (2, 4, 2), (2, 5, 1), (3, 2, 1), (3, 3, 1)];

fn certified_tables() -> &'static [TableReport] {
    static REPORTS: OnceLock<Vec<TableReport>> = OnceLock::new();
    REPORTS.get_or_init(|| {
        (1..=3).map(|id| reproduce_table_with(id, true, &table_certify_options()).expect("known table")).collect()
    })
}

/// Every construction on `SMALL` that the hypotheses admit, certified.
fn small_constructions() -> &'static [ConstructionResult] {
    static RESULTS: OnceLock<Vec<ConstructionResult>> = OnceLock::new();
    RESULTS.get_or_init(|| {
        let opts = CertifyOptions { budget: 1 << 22, ..CertifyOptions::default() };
        let mut out = Vec::new();
        for (p, m, s) in SMALL {
            let codes = CosetCodes::new(p, m, s).unwrap();
            let z = codes.table().z();
            for th in Theorem::ALL {
                for l1 in 0..z {
                    for l2 in l1..=z {
                        let (a, b) = match th.arity() {
                            0 => (None, None),
                            1 => (Some(l1), None),
                            _ => (Some(l1), Some(l2)),
                        };
                        if th.arity() < 2 && l2 != l1 || th.arity() == 0 && l1 != 0 {
                            continue;
                        }
                        let req = match ConstructionRequest::new(p, m, s, th).indices(a, b) {
                            Ok(r) => r.certify(true),
                            Err(_) => continue,
                        };
                        match construct_with(&req, &opts, Some(&codes)) {
                            Ok(r) => out.push(r),
                            Err(ConstructionError::InvalidRequest(_)) => {}
                            Err(e) => panic!("{th} {p},{m},{s} l = ({l1},{l2}): {e}"),
                        }
                    }
                }
            }
        }
        out
    })
}

fn show(r: &ConstructionResult) -> String {
    let p = &r.params;
    format!(
        "{} ({},{},{}) l = {:?},{:?} [[{},{},{};{}]]",
        r.request.theorem, r.request.p, r.request.m, r.request.s, r.l1, r.l2, p.n, p.k, p.d_lower, p.c
    )
}

fn criterion_1() -> String {
    let start = Instant::now();
    let expect = [(1u8, 13usize, 1usize), (2, 16, 0), (3, 9, 0)];
    let mut parts = Vec::new();
    for (id, matches, errata) in expect {
        let rep = reproduce_table(id, false).unwrap();
        assert_eq!(rep.rows.len(), matches + errata, "table {id} row count");
        assert_eq!(rep.count(RowStatus::Match), matches, "table {id} matches");
        assert_eq!(rep.count(RowStatus::Erratum), errata, "table {id} errata");
        for r in &rep.rows {
            let got = r.corrected.or(r.computed).expect("formula values");
            let e = &r.expected;
            assert_eq!((got.n, got.k, got.d_lower, got.c), (e.n, e.k, e.d, e.c), "table {id} row {}", e.position);
        }
        if errata == 1 {
            let row = rep.rows.iter().find(|r| r.status == RowStatus::Erratum).unwrap();
            let e = &row.expected;
            assert_eq!((e.n, e.k, e.d, e.c, e.a_l2), (127, 70, 18, 43, 7));
            assert_eq!(e.erratum_a_l2, Some(9));
        }
        parts.push(format!("table {id}: {matches} match, {errata} erratum"));
    }
    format!("{} in {:.2?}", parts.join("; "), start.elapsed())
}

fn criterion_2() -> String {
    let start = Instant::now();
    let mut certified = 0;
    for rep in certified_tables() {
        for row in &rep.rows {
            let e = &row.expected;
            if !(e.n <= 63 || e.table == 3) {
                assert!(row.certification.is_none());
                continue;
            }
            let cert = row
                .certification
                .as_ref()
                .unwrap_or_else(|| panic!("table {} row {} uncertified: {}", e.table, e.position, row.note));
            for name in ["rank_da", "c_gram", "k"] {
                let c =
                    cert.check(name).unwrap_or_else(|| panic!("table {} row {}: no {name} check", e.table, e.position));
                assert!(c.passed, "table {} row {}: {name}: {}", e.table, e.position, c.detail);
            }
            let (r, t) = (cert.r.unwrap(), cert.t.unwrap());
            let p = cert.params.unwrap();
            assert_eq!(p.c, e.c, "c' for table {} row {}", e.table, e.position);
            assert_eq!(p.k + 2 * r + t, e.n + p.c, "k = n - 2r - t + c' for table {} row {}", e.table, e.position);
            assert_eq!(p.k, e.k);
            assert!(cert.passed(), "table {} row {}: {}", e.table, e.position, row.note);
            certified += 1;
        }
    }
    assert_eq!(certified, small_row_count());
    format!("{certified} rows certified from matrices in {:.2?}", start.elapsed())
}

fn small_row_count() -> usize {
    (1..=3).flat_map(table_rows).filter(|r| r.is_small()).count()
}

fn criterion_3() -> String {
    let start = Instant::now();
    let row = table_rows(1).into_iter().find(|r| (r.n, r.k, r.d, r.c) == (15, 4, 6, 3)).expect("row present");
    let opts = CertifyOptions { require_exact: true, ..CertifyOptions::default() };
    let res = construct(&row.request(row.a_l2).certify(true), &opts).unwrap();
    let cert = res.certification.as_ref().unwrap();
    assert!(cert.passed());
    let DistanceReport::Exact { value } = cert.distance else { panic!("no exact distance: {:?}", cert.distance) };

    // recount on bit masks: the symplectic dual of D_A is the Euclidean
    // kernel with the halves swapped
    let da = &res.code.as_ref().unwrap().da;
    let n = 15;
    let d_rows = bits::rows(da);
    let dual: Vec<u64> = bits::kernel(&d_rows, 2 * n).into_iter().map(|v| bits::swap(v, n)).collect();
    assert_eq!(dual.len(), 16);
    for &u in &dual {
        for &r in &d_rows {
            let prod = (u & bits::swap(r, n)).count_ones() % 2;
            assert_eq!(prod, 0);
        }
    }
    // D ∩ D^perp, spanned by the dual words that lie in D
    let d_basis = bits::echelon(&d_rows);
    let mut inside = Vec::new();
    let mut w = 0u64;
    for i in 1u64..(1 << dual.len()) {
        w ^= dual[i.trailing_zeros() as usize];
        if bits::reduce(&d_basis, w) == 0 {
            inside.push(w);
        }
    }
    let both = bits::echelon(&inside);
    let oracle = bits::min_outside(&dual, &both, |v| bits::symplectic_weight(v, n)).expect("dual is larger");
    assert_eq!(value, oracle as u64, "library {value} vs bit-mask oracle {oracle}");
    assert!(value >= 6);
    format!("d_s = {value} >= 6 over 65536 dual words ({:.2?})", start.elapsed())
}

fn random_matrix(rng: &mut ChaCha8Rng, f: &Field, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(f, rows, cols, |_, _| Elem(rng.gen_range(0..f.order())))
}

fn random_invertible(rng: &mut ChaCha8Rng, f: &Field, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, f, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

fn criterion_4() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    type Params = &'static [(u64, u32, u32)];
    let fields: [(&str, Params); 3] =
        [("GF(2)", &[(2, 4, 1), (2, 5, 1)]), ("GF(3)", &[(3, 2, 1), (3, 3, 1)]), ("GF(4)", &[(2, 4, 2), (2, 6, 2)])];
    let mut seen_c = Vec::new();
    for (name, params) in fields {
        let all: Vec<CosetCodes> = params.iter().map(|&(p, m, s)| CosetCodes::new(p, m, s).unwrap()).collect();
        let mut done = 0;
        let mut cs = std::collections::BTreeSet::new();
        while done < 50 {
            let codes = &all[rng.gen_range(0..all.len())];
            let table = codes.table();
            let mut order: Vec<usize> = (0..table.cosets().len()).collect();
            order.shuffle(&mut rng);
            let (mut r_set, mut t_set) = (Vec::new(), Vec::new());
            for i in order {
                let rec = table.reciprocal_index(i);
                match rng.gen_range(0..3) {
                    // B_t cosets must be orthogonal to all of C
                    0 if rec != i && !r_set.contains(&rec) && !t_set.contains(&rec) => t_set.push(i),
                    1 if !t_set.contains(&rec) => r_set.push(i),
                    _ => {}
                }
            }
            let t: usize = t_set.iter().map(|&i| table.coset(i).size()).sum();
            if t < 2 {
                continue;
            }
            let f = codes.small().clone();
            let bt = random_invertible(&mut rng, &f, t).mul(&codes.generator(&t_set));
            let br0 = codes.generator(&r_set);
            let br = if br0.rows() == 0 {
                br0
            } else {
                let mix = random_invertible(&mut rng, &f, br0.rows());
                mix.mul(&br0).add(&random_matrix(&mut rng, &f, br0.rows(), t).mul(&bt))
            };
            let gf = Gf::of(&f);
            let g_rows: Vec<Vec<u32>> = rows_of(&br).into_iter().chain(rows_of(&bt)).collect();
            assert!(gf.gram(&rows_of(&bt), &g_rows).iter().flatten().all(|&x| x == 0), "B_t not in C^perp");
            let c = gf.rank(&gf.gram(&g_rows, &g_rows));
            let src = SplitCode::new(br, bt).unwrap();
            assert_eq!(src.c(), c);
            let a = make_a_case1(src.t(), &f).unwrap();
            let e = build_da(&src, &a, Delta::bound(1), Delta::bound(1)).unwrap();
            assert_eq!(e.c_prime(), c, "{name}: c' from the Gram rank");
            let sg = gf.rank(&gf.symplectic_gram(&rows_of(&e.da)));
            assert_eq!(sg, 2 * c, "{name}: symplectic Gram rank of D_A");
            cs.insert(c);
            done += 1;
        }
        seen_c.push(format!("{name}: 50 codes, c in {cs:?}"));
    }
    seen_c.join("; ")
}

fn criterion_5() -> String {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut counts = [0usize; 3];
    for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)] {
        let f = Field::gf(p, m).unwrap();
        let gf = Gf::of(&f);
        for j in 2..=8usize {
            for _ in 0..100 {
                let a: Vec<u32> = (0..j).map(|_| rng.gen_range(0..gf.q)).collect();
                let l: Vec<Vec<u32>> = (0..j)
                    .map(|r| {
                        (0..j)
                            .map(|c| {
                                if r + 1 == j {
                                    gf.neg(a[c])
                                } else if c == r + 1 {
                                    1
                                } else {
                                    0
                                }
                            })
                            .collect()
                    })
                    .collect();
                let h = Poly::monic(&f, &a.iter().map(|&x| Elem(x)).collect::<Vec<_>>());
                let lib = companion(&h).unwrap();
                assert_eq!(rows_of(&lib), l, "companion layout");
                let skew: Vec<Vec<u32>> = (0..j).map(|r| (0..j).map(|c| gf.sub(l[r][c], l[c][r])).collect()).collect();
                let rank = gf.rank(&skew);
                assert_eq!(skew_rank(&lib.sub(&lib.transpose())).unwrap(), rank);
                assert!(rank + 2 >= j);
                if j % 2 == 1 {
                    assert_eq!(rank, j - 1);
                    counts[0] += 1;
                } else {
                    let sum = (0..j - 1).step_by(2).fold(1, |acc, i| gf.add(acc, a[i]));
                    assert_eq!(rank == j, sum != 0, "q = {}, j = {j}, a = {a:?}", gf.q);
                    assert!(rank == j || rank == j - 2);
                    counts[if rank == j { 1 } else { 2 }] += 1;
                }
            }
        }
    }
    format!(
        "4200 polynomials: {} odd j, {} full rank, {} rank j-2 ({:.2?})",
        counts[0],
        counts[1],
        counts[2],
        start.elapsed()
    )
}

fn criterion_6() -> String {
    let mut split = 0;
    let mut css = 0;
    for rep in certified_tables() {
        for row in rep.rows.iter().filter(|r| r.certification.is_some()) {
            let cert = row.certification.as_ref().unwrap();
            for name in ["c_rank_eq_dimension", "c_symplectic_dimension"] {
                let c = cert
                    .check(name)
                    .unwrap_or_else(|| panic!("table {} row {}: no {name}", rep.id, row.expected.position));
                assert!(c.passed, "table {} row {}: {name}: {}", rep.id, row.expected.position, c.detail);
            }
            split += 1;
        }
    }
    for res in small_constructions() {
        let Some(cert) = &res.certification else { continue };
        if !cert.passed() {
            continue;
        }
        let req = &res.request;
        let codes = CosetCodes::new(req.p, req.m, req.s).unwrap();
        let gf = Gf::of(codes.small());
        match &res.code {
            None => {
                // CSS from a single BCH code
                let ds = codes.table().delta(res.l1.unwrap()).unwrap();
                let code = codes.subfield_subcode(&ds);
                let g = rows_of(code.generator());
                let by_rank = gf.rank(&gf.gram(&g, &g));
                let by_dim = code.dim() - code.intersect(&code.dual()).dim();
                assert_eq!(by_rank, by_dim, "{}", show(res));
                assert_eq!(by_rank, res.params.c, "{}", show(res));
                css += 1;
            }
            Some(e) => {
                let g: Vec<Vec<u32>> = rows_of(&e.source.generator());
                let by_rank = gf.rank(&gf.gram(&g, &g));
                let code = e.source.code();
                assert_eq!(by_rank, code.dim() - code.intersect(&code.dual()).dim(), "{}", show(res));
                let (by_dim, _) = symplectic_entanglement_by_dimension(&e.da).unwrap();
                assert_eq!(e.c_prime(), by_dim, "{}", show(res));
                assert_eq!(gf.rank(&gf.symplectic_gram(&rows_of(&e.da))), 2 * by_dim, "{}", show(res));
                split += 1;
            }
        }
    }
    assert!(css > 0 && split > 0);
    format!("{split} enlarged and {css} CSS constructions consistent")
}

fn criterion_7() -> String {
    let grid: [(u64, u32, u32); 12] = [
        (2, 4, 1),
        (2, 4, 2),
        (2, 5, 1),
        (2, 6, 1),
        (2, 6, 2),
        (2, 6, 3),
        (2, 7, 1),
        (3, 2, 1),
        (3, 3, 1),
        (3, 4, 1),
        (3, 4, 2),
        (5, 2, 1),
    ];
    let mut subcodes = 0;
    for (p, m, s) in grid {
        let codes = CosetCodes::new(p, m, s).unwrap();
        let table = codes.table();
        for l in 0..=table.z().min(8) {
            for ds in [table.delta(l).unwrap(), table.delta_r(l).unwrap()] {
                let ev = evaluation_code(codes.big(), &ds.exponents).unwrap();
                let kernel = subfield_subcode(&ev, codes.embedding()).unwrap();
                let size: usize = ds.cosets.iter().map(|&i| table.coset(i).size()).sum();
                assert_eq!(kernel.dim(), size, "({p},{m},{s}) l = {l}");
                assert_eq!(kernel, codes.subfield_subcode(&ds), "trace and kernel codes differ ({p},{m},{s}) l = {l}");
                assert_eq!(
                    kernel.dual(),
                    codes.subfield_subcode(&ds.dual(table)),
                    "dual defining set ({p},{m},{s}) l = {l}"
                );
                subcodes += 1;
            }
        }
    }

    let mut checked = 0u64;
    let prop_grid: [(u64, u32, u32); 10] = [
        (2, 4, 1),
        (2, 6, 2),
        (2, 7, 1),
        (2, 8, 2),
        (2, 10, 1),
        (2, 10, 5),
        (3, 4, 1),
        (3, 6, 2),
        (3, 6, 3),
        (5, 4, 2),
    ];
    for (p, m, s) in prop_grid {
        let table = CosetTable::new(p, m, s).unwrap();
        let n = p.pow(m) - 1;
        let mult = p.pow(s);
        let big_m = (m / s) as usize;
        let b_max = bound_b(p, m, s).unwrap();
        for b in 1..b_max {
            let mut orbit = vec![b];
            let mut x = b * mult % n;
            while x != b {
                orbit.push(x);
                x = x * mult % n;
            }
            assert_eq!(orbit.len(), big_m, "size of I_{b} for ({p},{m},{s})");
            assert!(!orbit.contains(&(n - b)), "I_{b} is symmetric for ({p},{m},{s})");
            let lib = table.check_prop_bound(b).unwrap();
            assert!(lib.subset_ok);
            assert_eq!(lib.size, big_m);
            checked += 1;
        }
    }
    format!("{subcodes} subfield-subcodes over 12 parameter sets; {checked} values of b below B")
}

fn criterion_8() -> String {
    let budget = 1u64 << 22;
    let mut classical = 0;
    let mut skipped = 0;
    for (p, m, s) in SMALL {
        let codes = CosetCodes::new(p, m, s).unwrap();
        let table = codes.table();
        let q = p.pow(s);
        for l in 0..table.z() {
            let bound = bch_dual_bound(table, l).unwrap();
            for ds in [table.delta(l).unwrap(), table.delta_r(l).unwrap()] {
                let dual: LinearCode = codes.subfield_subcode(&ds).dual();
                if dual.dim() == 0 {
                    continue;
                }
                match min_weight(&dual, budget) {
                    Ok(d) => {
                        assert!(d as u64 >= bound, "({p},{m},{s}) l = {l}: d = {d} < {bound}");
                        if q == 2 {
                            let gens = bits::rows(dual.generator());
                            let oracle = bits::min_outside(&gens, &[], |v| v.count_ones()).unwrap();
                            assert_eq!(d as u32, oracle);
                        }
                        classical += 1;
                    }
                    Err(WeightError::Exceeded(_)) => skipped += 1,
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    let mut quantum = 0;
    let mut deltas = 0;
    let certs = certified_tables()
        .iter()
        .flat_map(|t| t.rows.iter().filter_map(|r| r.certification.as_ref().map(|c| (c, r.expected.d))))
        .chain(small_constructions().iter().filter_map(|r| r.certification.as_ref().map(|c| (c, r.params.d_lower))));
    for (cert, bound) in certs {
        if let DistanceReport::Exact { value } = cert.distance {
            assert!(value >= bound, "exact {value} < bound {bound}");
            quantum += 1;
        }
        for name in ["delta1_oracle_ge_bound", "delta2_oracle_ge_bound"] {
            if let Some(c) = cert.check(name) {
                assert!(c.passed, "{name}: {}", c.detail);
                deltas += 1;
            }
        }
    }
    assert!(classical > 0 && quantum > 0);
    format!(
        "{classical} classical duals ({skipped} over budget), {quantum} quantum distances, {deltas} relative distances; all >= bounds"
    )
}

fn main() {
    type Criterion = (&'static str, fn() -> String);
    let criteria: [Criterion; 8] = [
        ("table reproduction (formulas)", criterion_1),
        ("matrix-level certification (small rows)", criterion_2),
        ("exact symplectic distance, n = 15", criterion_3),
        ("c' = c when <B_t> is orthogonal to C", criterion_4),
        ("companion skew-rank trichotomy", criterion_5),
        ("entanglement by rank equals entanglement by dimension", criterion_6),
        ("subfield-subcode dimensions and cosets below B", criterion_7),
        ("exact distances meet the bounds", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {}: FAIL {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
