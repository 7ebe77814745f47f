//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the report is always printed.
//! Exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;

use dwork_core::diagonal::{enumerate_orbits, fermat_count, koblitz_count, orbit_key};
use dwork_core::dwork::miyatani::{enumerate_kernel_brute, kernel_identity_residual};
use dwork_core::dwork::{
    class_identity_residual, dwork4_greene_count, dwork5_greene_count, dwork6_class_identities,
    dwork6_greene_count, enumerate_kernel, miyatani_dwork6_count, miyatani_identities, smith_normal_form,
    valid_lambdas, DWORK6_CLASSES,
};
use dwork_core::oracle::dwork_sweep;
use dwork_core::verify;
use dwork_core::{Characters, DiagonalParams, DworkParams, FqElem, FqField};

type Outcome = Result<String, String>;

fn field(p: u32, e: u32) -> Characters {
    Characters::for_field(p, e).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn describe(counts: &[(u32, usize)]) -> String {
    counts
        .iter()
        .map(|&(q, n)| if n == 0 { format!("q={q}: no valid λ") } else { format!("q={q}: {n} λ") })
        .collect::<Vec<_>>()
        .join(", ")
}

/// Counts verified by enumeration, `(q, degree, λ, count)`.
const FROZEN: &[(u32, u32, i64, u64)] = &[
    (13, 6, 2, 9810),
    (19, 6, 2, 79200),
    (31, 6, 2, 598752),
    (13, 4, 2, 320),
    (13, 4, 4, 352),
    (17, 4, 2, 408),
    (17, 4, 3, 120),
    (17, 4, 6, 88),
    (11, 5, 2, 2550),
];

fn check_frozen(ch: &Characters, degree: u32, count: impl Fn(FqElem) -> u64) -> Result<(), String> {
    for &(q, d, l, n) in FROZEN {
        if q == ch.q() && d == degree {
            let got = count(ch.field().from_int(l));
            ensure(got == n, || format!("q={q} d={d} λ={l}: expected {n}, got {got}"))?;
        }
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let mut seen = Vec::new();
    for (p, e) in [(7, 1), (13, 1), (19, 1), (5, 2), (31, 1)] {
        let ch = field(p, e);
        let sweep = dwork_sweep(ch.field(), 6).map_err(|e| e.to_string())?;
        check_frozen(&ch, 6, |l| sweep.count(l))?;
        let lambdas = valid_lambdas(&ch, 6);
        for &lambda in &lambdas {
            let brute = sweep.count(lambda) as i64;
            let diag = DiagonalParams::dwork(&ch, 6, lambda).unwrap();
            let params = DworkParams::new(&ch, 6, lambda).unwrap();
            let k = koblitz_count(&ch, &diag).map_err(|e| e.to_string())?.count;
            let g = dwork6_greene_count(&ch, &params).map_err(|e| e.to_string())?.count;
            let m = miyatani_dwork6_count(&ch, &params).map_err(|e| e.to_string())?.count;
            ensure(brute == k && k == g && g == m, || {
                format!("q={} λ={}: brute {brute}, koblitz {k}, greene {g}, kernel {m}", ch.q(), ch.field().format(lambda))
            })?;
        }
        seen.push((ch.q(), lambdas.len()));
    }
    Ok(describe(&seen))
}

fn criterion_2() -> Outcome {
    let mut seen = Vec::new();
    for (p, e) in [(5, 1), (13, 1), (17, 1), (5, 2)] {
        let ch = field(p, e);
        let sweep = dwork_sweep(ch.field(), 4).map_err(|e| e.to_string())?;
        check_frozen(&ch, 4, |l| sweep.count(l))?;
        let lambdas = valid_lambdas(&ch, 4);
        for &lambda in &lambdas {
            let params = DworkParams::new(&ch, 4, lambda).unwrap();
            let g = dwork4_greene_count(&ch, &params).map_err(|e| e.to_string())?.count;
            let b = sweep.count(lambda) as i64;
            ensure(g == b, || format!("q={} λ={}: greene {g}, brute {b}", ch.q(), ch.field().format(lambda)))?;
        }
        seen.push((ch.q(), lambdas.len()));
    }
    Ok(describe(&seen))
}

fn criterion_3() -> Outcome {
    let mut seen = Vec::new();
    for p in [11, 31] {
        let ch = field(p, 1);
        let sweep = dwork_sweep(ch.field(), 5).map_err(|e| e.to_string())?;
        check_frozen(&ch, 5, |l| sweep.count(l))?;
        let lambdas = valid_lambdas(&ch, 5);
        for &lambda in &lambdas {
            let params = DworkParams::new(&ch, 5, lambda).unwrap();
            let g = dwork5_greene_count(&ch, &params).map_err(|e| e.to_string())?.count;
            let b = sweep.count(lambda) as i64;
            ensure(g == b, || format!("q={p} λ={}: greene {g}, brute {b}", ch.field().format(lambda)))?;
        }
        seen.push((p, lambdas.len()));
    }
    Ok(describe(&seen))
}

fn criterion_4() -> Outcome {
    let mut seen = Vec::new();
    for p in [7, 13] {
        let ch = field(p, 1);
        let sweep = dwork_sweep(ch.field(), 3).map_err(|e| e.to_string())?;
        let mut n = 0;
        for lambda in ch.field().nonzero() {
            let Ok(params) = DiagonalParams::dwork(&ch, 3, lambda) else { continue };
            let k = koblitz_count(&ch, &params).map_err(|e| e.to_string())?.count;
            let b = sweep.count(lambda) as i64;
            ensure(k == b, || format!("q={p} λ={}: koblitz {k}, brute {b}", ch.field().format(lambda)))?;
            n += 1;
        }
        ensure(n > 0, || format!("q={p}: no smooth λ"))?;
        if p == 7 {
            for l in [3, 5, 6] {
                let got = sweep.count(ch.field().from_int(l));
                ensure(got == 9, || format!("q=7 λ={l}: expected 9, got {got}"))?;
            }
        }
        seen.push((p, n));
    }
    Ok(describe(&seen))
}

fn criterion_5() -> Outcome {
    let ch = field(13, 1);
    ensure(ch.field().to_code(ch.field().generator()) == 2, || "generator of F_13 is not 2".into())?;
    let zeta = Complex64::from_polar(1.0, std::f64::consts::TAU / 12.0);
    let z2 = zeta * zeta;
    let one = Complex64::new(1.0, 0.0);
    let w = |k: i64| ch.omega_pow(k);
    let omega2 = ch.value(ch.omega(), ch.field().from_int(2));
    let mut worst = (omega2 - Complex64::from_polar(1.0, std::f64::consts::PI / 6.0)).norm();
    let fixtures = [
        ("J(ω₂,ω̄₃,ω̄₆)", vec![w(6), w(8), w(10)], 4.0 * z2 - one),
        ("J(ω₆,ω₃,ω₂)", vec![w(2), w(4), w(6)], -4.0 * z2 + 3.0 * one),
        ("J(ω₆,ω₆,ω̄₃)", vec![w(2), w(2), w(8)], z2 - 4.0 * one),
        ("J(ω₃,ω₃,ω₃)", vec![w(4), w(4), w(4)], 3.0 * z2 + one),
        ("J(ω₆,ω₆)", vec![w(2), w(2)], -z2 + 4.0 * one),
    ];
    for (name, chars, expected) in fixtures {
        let direct = ch.jacobi(&chars).unwrap();
        let fast = ch.jacobi_fast(&chars).unwrap();
        let r = (direct - expected).norm().max((fast - expected).norm());
        ensure(r < 1e-9, || format!("{name}: residual {r:.3e}"))?;
        worst = worst.max(r);
    }
    Ok(format!("5 Jacobi fixtures over F_13, max residual {worst:.1e}"))
}

fn criterion_6() -> Outcome {
    let mut notes = Vec::new();
    for (p, e) in [(7, 1), (13, 1), (5, 2)] {
        let ch = field(p, e);
        let mut results = verify::check_gauss(&ch);
        results.push(verify::check_hasse_davenport(&ch));
        results.push(verify::check_sextic_product(&ch));
        results.push(verify::check_turai(&ch));
        let mut cases = 0;
        for r in &results {
            ensure(r.passed(), || format!("q={}: {} residual {:.3e}", ch.q(), r.name, r.max_residual))?;
            cases += r.cases;
        }
        let turai = results.last().unwrap();
        notes.push(format!("q={}: {cases} checks ({} with λ)", ch.q(), turai.cases));
    }
    Ok(notes.join(", "))
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    for p in [7, 13, 19] {
        let ch = field(p, 1);
        let tol = 1e-6 * (p as f64).powi(4);
        let lambdas = valid_lambdas(&ch, 6);
        let mut worst = 0.0f64;
        for &lambda in &lambdas {
            let params = DworkParams::new(&ch, 6, lambda).unwrap();
            for id in dwork6_class_identities(&ch, &params).unwrap() {
                let r = class_identity_residual(&ch, &params, &id).unwrap();
                ensure(r < tol, || format!("q={p} class {:?}: residual {r:.3e}", id.classes))?;
                worst = worst.max(r);
            }
            for id in miyatani_identities(&ch, &params).unwrap() {
                let r = kernel_identity_residual(&ch, &params, &id).unwrap();
                ensure(r < tol, || format!("q={p} kernel {:?}: residual {r:.3e}", id.weights))?;
                worst = worst.max(r);
            }
        }
        notes.push(if lambdas.is_empty() {
            format!("q={p}: no valid λ")
        } else {
            format!("q={p}: {} λ × 27 identities, max residual {worst:.1e}", lambdas.len())
        });
    }
    Ok(notes.join(", "))
}

fn criterion_8() -> Outcome {
    let orbits = enumerate_orbits(6, &[1; 6]).map_err(|e| e.to_string())?;
    ensure(orbits.len() == 14, || format!("{} orbits", orbits.len()))?;
    for (w, size) in DWORK6_CLASSES {
        let key = orbit_key(&w, 6, &[1; 6]);
        let found = orbits.iter().find(|o| o.rep == key).map(|o| o.size);
        ensure(found == Some(size), || format!("orbit of {w:?}: expected {size}, got {found:?}"))?;
    }
    let total: usize = orbits.iter().map(|o| o.size).sum();
    ensure(total == 1296, || format!("orbit sizes sum to {total}"))?;
    let a: Vec<Vec<i64>> = (0..6).map(|i| (0..6).map(|j| if i == j { 5 } else { -1 }).collect()).collect();
    let snf = smith_normal_form(&a);
    ensure(snf == vec![1, 6, 6, 6, 6, 0], || format!("SNF {snf:?}"))?;
    for (p, e) in [(7, 1), (13, 1), (19, 1), (5, 2), (31, 1)] {
        let ch = field(p, e);
        let k = enumerate_kernel(&ch).map_err(|e| e.to_string())?;
        ensure(k.len() == 1296, || format!("q={}: kernel has {} elements", ch.q(), k.len()))?;
    }
    for p in [7, 13] {
        let mut a = enumerate_kernel(&field(p, 1)).unwrap();
        let mut b = enumerate_kernel_brute(p - 1).map_err(|e| e.to_string())?;
        a.sort();
        b.sort();
        ensure(a == b, || format!("q={p}: kernel differs from exhaustive scan"))?;
    }
    Ok("14 orbits summing to 1296, SNF (1,6,6,6,6,0), |Ker| = 1296".into())
}

fn criterion_9() -> Outcome {
    let mut notes = Vec::new();
    for p in [7, 13] {
        let ch = field(p, 1);
        let r = verify::check_transform(&ch, 250, 0xacce97).map_err(|e| e.to_string())?;
        ensure(r.cases >= 200 && r.passed(), || format!("q={p}: {} tuples, residual {:.3e}", r.cases, r.max_residual))?;
        notes.push(format!("q={p}: {} tuples, max residual {:.1e}", r.cases, r.max_residual));
    }
    Ok(notes.join(", "))
}

/// All final counts over one field, keyed by description.
fn final_counts(ch: &Characters) -> Vec<(String, i64)> {
    let mut out = Vec::new();
    for (d, n) in [(3, 3), (6, 6), (1, 3)] {
        if let Ok(c) = fermat_count(ch, d, n) {
            out.push((format!("fermat d={d} n={n}"), c.count));
        }
    }
    for lambda in ch.field().nonzero() {
        let l = ch.field().to_code(lambda);
        if let Ok(params) = DiagonalParams::dwork(ch, 3, lambda) {
            out.push((format!("hesse λ={l}"), koblitz_count(ch, &params).unwrap().count));
        }
        for d in [4, 6] {
            let Ok(params) = DworkParams::new(ch, d, lambda) else { continue };
            if d == 4 {
                out.push((format!("d=4 greene λ={l}"), dwork4_greene_count(ch, &params).unwrap().count));
                continue;
            }
            let diag = DiagonalParams::dwork(ch, 6, lambda).unwrap();
            out.push((format!("d=6 koblitz λ={l}"), koblitz_count(ch, &diag).unwrap().count));
            out.push((format!("d=6 greene λ={l}"), dwork6_greene_count(ch, &params).unwrap().count));
            out.push((format!("d=6 kernel λ={l}"), miyatani_dwork6_count(ch, &params).unwrap().count));
        }
    }
    // Iteration follows powers of the generator; compare in code order.
    out.sort();
    out
}

fn criterion_10() -> Outcome {
    let mut notes = Vec::new();
    for p in [7, 13] {
        let base = field(p, 1);
        let alt = Characters::new(Arc::new(FqField::with_generator_rank(p, 1, 1).unwrap()));
        ensure(base.field().generator_code() != alt.field().generator_code(), || "same generator".into())?;
        let a = final_counts(&base);
        let b = final_counts(&alt);
        ensure(a == b, || {
            let diff = a.iter().zip(&b).find(|(x, y)| x != y);
            format!("q={p}: {diff:?}")
        })?;
        notes.push(format!("q={p}: {} counts (generators {} and {})", a.len(), base.field().generator_code(), alt.field().generator_code()));
    }
    Ok(notes.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("three-route equality, degree 6", criterion_1),
        ("degree 4 closed form vs brute force", criterion_2),
        ("degree 5 closed form vs brute force", criterion_3),
        ("Koblitz count of the Hesse cubic", criterion_4),
        ("Jacobi sum fixtures over F_13", criterion_5),
        ("Gauss sum identity suite", criterion_6),
        ("per-orbit closed forms", criterion_7),
        ("orbit, SNF and kernel structure", criterion_8),
        ("McCarthy to Greene transformation", criterion_9),
        ("generator independence", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name} [{secs:.1}s] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name} [{secs:.1}s] {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
