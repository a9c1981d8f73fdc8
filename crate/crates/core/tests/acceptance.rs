//! Acceptance suite. Every criterion uses exact integer arithmetic; each
//! prints one `pass`/`FAIL` line and the process exits nonzero if any fails.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;

use fdeg::formulas::{
    alternate_threshold, degree_set, delta_sup, sum_theorem_max, weisman_check, weisman_m, weisman_m_mod,
    weisman_threshold, wilson_check, DeltaCase,
};
use fdeg::funcmap::{fdeg, fdeg_bruteforce, generator_scan, make_delta, FuncTable, ScanOutcome, DEFAULT_BRUTE_BUDGET};
use fdeg::group_ring::nilpotency_index;
use fdeg::groups::{parse_group_spec, FiniteAbelianGroup, GroupDescriptor, GroupElement};
use fdeg::verify::{corpus, run_suite, Budget, SuiteId};
use fdeg::ExtNat;

type Check = Result<String, String>;

fn grp(factors: &[u64]) -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(factors.to_vec()).unwrap()
}

fn el(c: &[u64]) -> GroupElement {
    GroupElement(c.to_vec())
}

fn desc(spec: &str) -> GroupDescriptor {
    parse_group_spec(spec).unwrap()
}

/// `(β(p−1)+1)p^{α−1} − 1`, written out independently of the library.
fn cyclic_degree(p: u64, alpha: u32, beta: u32) -> u64 {
    (beta as u64 * (p - 1) + 1) * p.pow(alpha - 1) - 1
}

/// `Σ_j (p^{α_j} − 1) + (β − 1)(p − 1)p^{α_1 − 1}` for factor orders `p^{α_j}`.
fn closed_form(p: u64, orders: &[u64], beta: u32) -> u64 {
    let top = *orders.iter().max().unwrap();
    orders.iter().map(|q| q - 1).sum::<u64>() + (beta as u64 - 1) * (p - 1) * (top / p)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Check {
    let mut n = 0;
    for p in [2u64, 3] {
        for alpha in 1..=2u32 {
            for beta in 1..=2u32 {
                let (pa, pb) = (p.pow(alpha), p.pow(beta));
                let d = make_delta(&grp(&[pa]), &grp(&[pb]), &el(&[0]), &el(&[1])).unwrap();
                let want = ExtNat::Finite(cyclic_degree(p, alpha, beta));
                let scan = generator_scan(&d, 64);
                ensure(scan == ScanOutcome::Degree(want), || format!("Z{pa}→Z{pb}: scan {scan:?}, want {want}"))?;
                ensure(fdeg(&d) == want, || format!("Z{pa}→Z{pb}: fdeg {}", fdeg(&d)))?;
                if pa <= 4 {
                    let brute = fdeg_bruteforce(&d, 64, DEFAULT_BRUTE_BUDGET).map_err(|e| e.to_string())?;
                    ensure(brute == ScanOutcome::Degree(want), || format!("Z{pa}→Z{pb}: oracle {brute:?}"))?;
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} cyclic pairs"))
}

fn criterion_2() -> Check {
    let two_groups: &[&[u64]] = &[
        &[2],
        &[4],
        &[2, 2],
        &[8],
        &[4, 2],
        &[2, 2, 2],
        &[16],
        &[8, 2],
        &[4, 4],
        &[4, 2, 2],
        &[2, 2, 2, 2],
    ];
    let three_groups: &[&[u64]] = &[&[3], &[9], &[3, 3]];
    let mut n = 0;
    for (p, list) in [(2u64, two_groups), (3, three_groups)] {
        for &orders in list {
            for beta in 1..=3u32 {
                let m = p.pow(beta);
                let nu = nilpotency_index(m, &grp(orders), 1024).map_err(|e| e.to_string())?;
                let want = ExtNat::Finite(closed_form(p, orders, beta) + 1);
                ensure(nu == want, || format!("ν(Z{m}[{orders:?}]) = {nu}, formula + 1 = {want}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} (A, β) pairs"))
}

fn criterion_3() -> Check {
    let cases: [(u64, &[u64], ExtNat); 7] = [
        (2, &[2], ExtNat::Finite(2)),
        (2, &[4], ExtNat::Finite(4)),
        (2, &[8], ExtNat::Finite(8)),
        (3, &[3], ExtNat::Finite(3)),
        (3, &[9], ExtNat::Finite(9)),
        (0, &[2], ExtNat::Infinity),
        (6, &[2], ExtNat::Infinity),
    ];
    for (m, orders, want) in cases {
        let nu = nilpotency_index(m, &grp(orders), 64).map_err(|e| e.to_string())?;
        ensure(nu == want, || format!("ν(Z{m}[Z{}]) = {nu}, want {want}", orders[0]))?;
    }
    Ok("7 group rings".into())
}

/// Term-by-term `Σ_{i≡j (mod k)} (−1)^i C(n,i)`.
fn alternating_sum(k: u64, j: i64, n: u64) -> BigInt {
    let mut c = BigInt::from(1);
    let mut sum = BigInt::from(0);
    for i in 0..=n {
        if (i as i64 - j).rem_euclid(k as i64) == 0 {
            sum += if i % 2 == 0 { c.clone() } else { -c.clone() };
        }
        c = c * (n - i) / (i + 1);
    }
    sum
}

fn criterion_4() -> Check {
    let mut n = 0;
    for p in [2u64, 3] {
        for alpha in 1..=2u32 {
            for beta in 1..=3u32 {
                let (k, m) = (p.pow(alpha), BigInt::from(p.pow(beta)));
                let t = (beta as u64 * (p - 1) + 1) * p.pow(alpha - 1);
                ensure(weisman_threshold(p, alpha, beta) == t, || format!("threshold({p},{alpha},{beta})"))?;
                let residue = BigInt::from(-(p as i64)).pow(beta - 1).mod_floor(&m);
                for j in 0..k as i64 {
                    for nn in t - 1..=t + 4 {
                        let exact = alternating_sum(k, j, nn);
                        ensure(weisman_m(k, j, nn) == exact, || format!("M_{k}({j},{nn}) exact"))?;
                        let r = exact.mod_floor(&m);
                        ensure(BigInt::from(weisman_m_mod(k, j, nn, p.pow(beta))) == r, || format!("M_{k}({j},{nn}) mod {m}"))?;
                        let want = if nn == t - 1 { residue.clone() } else { BigInt::from(0) };
                        ensure(r == want, || format!("M_{k}({j},{nn}) ≡ {r} mod {m}, want {want}"))?;
                    }
                    ensure(weisman_check(p, alpha, beta, j, 4).holds(), || format!("check ({p},{alpha},{beta},{j})"))?;
                    n += 1;
                }
            }
        }
    }
    // With threshold β·p^α = 4 at (2,1,2), the value at n = 3 would have to be
    // (−2)^1 ≡ 2 mod 4, but M_2(0,3) = 4 ≡ 0.
    ensure(alternate_threshold(2, 1, 2) == 4, || "alternate threshold".into())?;
    let m3 = alternating_sum(2, 0, 3);
    ensure(m3 == BigInt::from(4), || format!("M_2(0,3) = {m3}"))?;
    ensure(m3.mod_floor(&BigInt::from(4)) == BigInt::from(0), || "M_2(0,3) mod 4".into())?;
    Ok(format!("{n} residue classes; β·p^α reading refuted at (2,1,2): M_2(0,3) = 4 ≡ 0 mod 4, not 2"))
}

fn criterion_5() -> Check {
    let mut n = 0;
    for p in [2u64, 3] {
        for alpha in (1..=3u32).filter(|&a| p.pow(a) <= 27) {
            for beta in 1..=3u32 {
                let w = wilson_check(p, alpha, beta).map_err(|e| e.to_string())?;
                ensure(w.equal, || format!("({p},{alpha},{beta}): {} ≠ {}", w.lhs, w.rhs))?;
                ensure(w.annihilated, || format!("({p},{alpha},{beta}): (t-1)^T ≠ 0"))?;
                ensure(w.exponent == cyclic_degree(p, alpha, beta), || "exponent".into())?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} group rings"))
}

fn criterion_6() -> Check {
    let mut n = 0;
    for p in [2u64, 3] {
        // Non-increasing exponent lists with Σ p^{α_i} ≤ 16.
        let mut stack: Vec<Vec<u32>> = (1..=4).filter(|&a| p.pow(a) <= 16).map(|a| vec![a]).collect();
        while let Some(al) = stack.pop() {
            let used: u64 = al.iter().map(|&a| p.pow(a)).sum();
            let last = *al.last().unwrap();
            for a in 1..=last {
                if used + p.pow(a) <= 16 {
                    let mut next = al.clone();
                    next.push(a);
                    stack.push(next);
                }
            }
            let orders: Vec<u64> = al.iter().map(|&a| p.pow(a)).collect();
            for beta in 1..=3u32 {
                let best = sum_theorem_max(p, &al, beta);
                let want = closed_form(p, &orders, beta);
                ensure(best == want, || format!("p={p} α={al:?} β={beta}: {best} vs {want}"))?;
                n += 1;
            }
        }
    }
    let by_sum = sum_theorem_max(2, &[2, 1], 2);
    let by_delta = delta_sup(&desc("Z2xZ4"), &desc("Z4")).map_err(|e| e.to_string())?.value;
    let by_nu = nilpotency_index(4, &grp(&[4, 2]), 64).map_err(|e| e.to_string())?;
    ensure(by_sum == 6 && by_delta == ExtNat::Finite(6) && by_nu == ExtNat::Finite(7), || {
        format!("δ(Z2⊕Z4, Z4): sum {by_sum}, formula {by_delta}, ν {by_nu}")
    })?;
    Ok(format!("{n} multisets × β; δ(Z2⊕Z4, Z4) = 6 three ways"))
}

fn all_maps(a: &FiniteAbelianGroup, b: &FiniteAbelianGroup) -> Vec<FuncTable> {
    let elems: Vec<GroupElement> = b.elements().collect();
    let mut tables = vec![vec![]];
    for _ in 0..a.size() {
        tables = tables
            .into_iter()
            .flat_map(|t: Vec<GroupElement>| {
                elems.iter().map(move |y| {
                    let mut t = t.clone();
                    t.push(y.clone());
                    t
                })
            })
            .collect();
    }
    tables.iter().map(|t| FuncTable::from_values(a, b, t).unwrap()).collect()
}

fn criterion_7() -> Check {
    use ExtNat::{Finite, Infinity, NegInfinity};
    let cases: [(&str, &[u64], &[u64], Vec<ExtNat>, usize); 3] = [
        ("Z2", &[2], &[2], vec![NegInfinity, Finite(0), Finite(1)], 4),
        ("Z3", &[3], &[2], vec![NegInfinity, Finite(0), Infinity], 8),
        ("Z6", &[2, 3], &[2, 3], vec![NegInfinity, Finite(0), Finite(1), Finite(2), Infinity], 46656),
    ];
    let mut notes = Vec::new();
    for (name, a, b, want, count) in cases {
        let (a, b) = (grp(a), grp(b));
        let maps = all_maps(&a, &b);
        ensure(maps.len() == count, || format!("{name}: {} maps", maps.len()))?;
        let seen: BTreeSet<ExtNat> = maps.iter().map(fdeg).collect();
        let want: BTreeSet<ExtNat> = want.into_iter().collect();
        ensure(seen == want, || format!("{name}: sweep gives {seen:?}"))?;
        let bname = if name == "Z3" { "Z2" } else { name };
        let set = degree_set(&desc(name), &desc(bname)).map_err(|e| e.to_string())?;
        let formula: BTreeSet<ExtNat> = set.members().unwrap().into_iter().collect();
        ensure(formula == want, || format!("{name}: degree_set gives {set}"))?;
        notes.push(format!("D({name},{bname}) = {} over {count} maps", set.members_string().unwrap()));
    }
    Ok(notes.join("; "))
}

fn criterion_8() -> Check {
    let suites = [
        SuiteId::Lemma00,
        SuiteId::DegreeDrop,
        SuiteId::Subadditivity,
        SuiteId::Functoriality,
        SuiteId::Restriction,
        SuiteId::Products,
        SuiteId::Sums,
        SuiteId::Diagonalization,
        SuiteId::PrimarySplit,
        SuiteId::DeltaProp,
    ];
    let budget = Budget {
        max_group_order: 12,
        corpus_size: 200,
        seed: 0,
        ..Budget::default()
    };
    let mut lines = Vec::new();
    for id in suites {
        let b = if id == SuiteId::DeltaProp { Budget::for_suite(id) } else { budget.clone() };
        let r = run_suite(id, &b).map_err(|e| e.to_string())?;
        println!("      {:<16} cases {:>6}  failures {}  {} ms", id.name(), r.cases_run, r.failures.len(), r.wall_time_ms);
        ensure(r.cases_run >= 26, || format!("{id}: only {} cases", r.cases_run))?;
        if let Some(f) = r.failures.first() {
            return Err(format!("{id}: {} | expected {} | actual {}", f.inputs, f.expected, f.actual));
        }
        lines.push(id.name());
    }
    Ok(format!("{} suites, zero failures", lines.len()))
}

fn criterion_9() -> Check {
    let mut maps: Vec<FuncTable> = corpus(&Budget::default()).into_iter().map(|m| m.map).collect();
    maps.extend(
        corpus(&Budget {
            max_group_order: 8,
            corpus_size: 300,
            seed: 1,
            ..Budget::default()
        })
        .into_iter()
        .map(|m| m.map),
    );
    maps.retain(|f| f.domain().order() <= 8);
    let mut exceeded = 0;
    for f in &maps {
        let d = fdeg(f);
        let brute = fdeg_bruteforce(f, 15, DEFAULT_BRUTE_BUDGET).map_err(|e| e.to_string())?;
        match brute {
            ScanOutcome::Degree(x) => ensure(x == d, || format!("{}: fdeg {d}, oracle {x}", f.to_json()))?,
            ScanOutcome::Exceeded(_) => {
                let case = delta_sup(
                    &GroupDescriptor::from_finite(f.domain()),
                    &GroupDescriptor::from_finite(f.codomain()),
                )
                .map_err(|e| e.to_string())?
                .case_tag;
                ensure(d == ExtNat::Infinity && case == DeltaCase::NoCommonPrime, || {
                    format!("{}: oracle exceeded, fdeg {d}, case {case}", f.to_json())
                })?;
                exceeded += 1;
            }
        }
    }
    Ok(format!("{} maps, {exceeded} of infinite degree", maps.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("1 cyclic formula", criterion_1),
        ("2 main formula via ν", criterion_2),
        ("3 nilpotency examples", criterion_3),
        ("4 alternating binomial sums", criterion_4),
        ("5 group-ring congruence", criterion_5),
        ("6 sum maximization", criterion_6),
        ("7 degree sets", criterion_7),
        ("8 property suites", criterion_8),
        ("9 oracle agreement", criterion_9),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("pass  criterion {name:<28} {ms:>7} ms  {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name:<28} {ms:>7} ms  {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
