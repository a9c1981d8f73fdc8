use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

use super::corpus::{case_rng, corpus, groups_up_to, p_groups_up_to, random_element, random_hom, random_map, MapKind};
use super::oracle::{
    all_maps, binomial_sum, diagonal_components, induced_primary_map, is_diagonal, iterate_difference, naive_power,
};
use super::{Ctx, Failure, SuiteId, VerifyError};
use crate::ext_nat::ExtNat;
use crate::formulas::{
    degree_set, delta_circ, delta_cyclic, delta_sup, main_formula_value, predicted_nu, sum_theorem_max,
    weisman_m, weisman_m_mod, weisman_threshold, wilson_check, DeltaCase,
};
use crate::funcmap::{
    compose_post, compose_pre, diagonal_join, difference, fdeg, fdeg_bruteforce, generator_scan,
    iterated_difference_binomial, make_delta, make_hom, pointwise_add, FuncTable, ScanOutcome,
    DEFAULT_BRUTE_BUDGET,
};
use crate::group_ring::{delta_elem, ideal_power_is_zero, nilpotency_index, GroupRingElement};
use crate::groups::arith::{factorize, is_prime, pow, prime_power};
use crate::groups::{hom_is_trivial, FiniteAbelianGroup, GroupDescriptor, GroupElement};

type Outcome = Result<(u64, Vec<Failure>), VerifyError>;

/// Cap for the all-tuples oracle in the `sums` suite.
const BRUTE_CAP: u64 = 16;
/// Cap for ideal-power scans.
const NU_CAP: u64 = 512;

pub(super) fn run(ctx: &Ctx) -> Outcome {
    match ctx.id {
        SuiteId::Lemma00 => lemma_0_0(ctx),
        SuiteId::DegreeDrop => degree_drop(ctx),
        SuiteId::Subadditivity => subadditivity(ctx),
        SuiteId::Functoriality => functoriality(ctx),
        SuiteId::Restriction => restriction(ctx),
        SuiteId::Products => products(ctx),
        SuiteId::Sums => sums(ctx),
        SuiteId::Diagonalization => diagonalization(ctx),
        SuiteId::PrimarySplit => primary_split(ctx),
        SuiteId::DeltaVsNu => delta_vs_nu(ctx),
        SuiteId::Weisman => weisman(ctx),
        SuiteId::Wilson => wilson(ctx),
        SuiteId::MainFormula => main_formula(ctx),
        SuiteId::SumTheorem => sum_theorem(ctx),
        SuiteId::DeltaProp => delta_prop(ctx),
    }
}

fn show(f: &FuncTable) -> String {
    f.to_json()
}

/// `|A|·(⌊log₂|B|⌋ + 1)`, above every finite degree of a map `A → B`.
fn degree_cap(f: &FuncTable) -> u64 {
    f.domain().order() * (64 - f.codomain().order().leading_zeros()) as u64
}

fn desc(g: &FiniteAbelianGroup) -> GroupDescriptor {
    GroupDescriptor::from_finite(g)
}

fn cyclic(n: u64) -> FiniteAbelianGroup {
    FiniteAbelianGroup::cyclic(n).expect("n ≥ 1")
}

fn scan_degree(outcome: ScanOutcome) -> ExtNat {
    match outcome {
        ScanOutcome::Degree(d) => d,
        ScanOutcome::Exceeded(_) => ExtNat::Infinity,
    }
}

/// Exponents `α_j` of a canonical `p`-group, largest first.
fn alphas(g: &FiniteAbelianGroup) -> Vec<u32> {
    g.factors().iter().map(|&n| prime_power(n).expect("p-group").1).collect()
}

fn lemma_0_0(ctx: &Ctx) -> Outcome {
    let maps = corpus(&ctx.budget);
    ctx.run_cases(&maps, |i, m| {
        let f = &m.map;
        let mut rng = case_rng(ctx.budget.seed, i);
        let a = random_element(f.domain(), &mut rng);
        let n = rng.gen_range(0..=6u64);
        let inputs = format!("f={} a={a} n={n}", show(f));
        let expected = iterate_difference(f, &a, n);
        let mut out = Vec::new();
        let binomial = iterated_difference_binomial(f, &a, n).expect("element of the domain");
        if binomial != expected {
            out.push(ctx.failure(inputs.clone(), show(&expected), show(&binomial)));
        }
        let ring_op = delta_elem(f.codomain().exponent(), f.domain(), &a)
            .expect("exponent ≥ 2")
            .pow(n)
            .act(f)
            .expect("e(B) divides the modulus");
        if ring_op != expected {
            out.push(ctx.failure(format!("{inputs} via Δ_a^n ∈ Z_e[A]"), show(&expected), show(&ring_op)));
        }
        out
    })
}

fn degree_drop(ctx: &Ctx) -> Outcome {
    let maps = corpus(&ctx.budget);
    ctx.run_cases(&maps, |i, m| {
        let f = &m.map;
        let d = fdeg(f);
        let mut out = Vec::new();
        let diffs: Vec<ExtNat> = f
            .domain()
            .elements()
            .map(|a| fdeg(&difference(f, &a).expect("element of the domain")))
            .collect();
        let top = ExtNat::sup(diffs.iter().copied());
        let inputs = format!("f={} fdeg(f)={d}", show(f));
        match d {
            ExtNat::Finite(n) if n >= 1 => {
                let want = ExtNat::Finite(n - 1);
                if top != want {
                    out.push(ctx.failure(inputs.clone(), format!("max_a fdeg(Δ_a f) = {want}"), top));
                }
            }
            ExtNat::Finite(_) | ExtNat::NegInfinity => {
                if top != ExtNat::NegInfinity {
                    out.push(ctx.failure(inputs.clone(), "every Δ_a f = 0", top));
                }
            }
            ExtNat::Infinity => {
                if top != ExtNat::Infinity {
                    out.push(ctx.failure(inputs.clone(), "some Δ_a f of degree inf", top));
                }
            }
        }
        let mut rng = case_rng(ctx.budget.seed, i);
        let a = random_element(f.domain(), &mut rng);
        let shifted = GroupRingElement::monomial(f.codomain().exponent(), f.domain(), &a, 1)
            .expect("exponent ≥ 2")
            .act(f)
            .expect("e(B) divides the modulus");
        let ds = fdeg(&shifted);
        if ds != d {
            out.push(ctx.failure(format!("{inputs} shifted by {a}"), d, ds));
        }
        out
    })
}

fn subadditivity(ctx: &Ctx) -> Outcome {
    let maps = corpus(&ctx.budget);
    let kinds = [
        MapKind::Random,
        MapKind::HomPlusConstant,
        MapKind::Delta,
        MapKind::DifferenceOfRandom,
    ];
    ctx.run_cases(&maps, |i, m| {
        let f = &m.map;
        let mut rng = case_rng(ctx.budget.seed, i);
        let kind = kinds[rng.gen_range(0..kinds.len())];
        let g = random_map(kind, f.domain(), f.codomain(), &mut rng);
        let (df, dg) = (fdeg(f), fdeg(&g));
        let sum = pointwise_add(f, &g).expect("same shape");
        let ds = fdeg(&sum);
        let mut out = Vec::new();
        if ds > df.max(dg) {
            out.push(ctx.failure(
                format!("f={} g={}", show(f), show(&g)),
                format!("≤ max({df}, {dg})"),
                ds,
            ));
        }
        let cancel = fdeg(&pointwise_add(f, &f.neg()).expect("same shape"));
        if cancel != ExtNat::NegInfinity {
            out.push(ctx.failure(format!("f={} plus -f", show(f)), ExtNat::NegInfinity, cancel));
        }
        out
    })
}

fn distinct_values(f: &FuncTable) -> usize {
    f.values().into_iter().collect::<std::collections::HashSet<_>>().len()
}

fn functoriality(ctx: &Ctx) -> Outcome {
    let maps = corpus(&ctx.budget);
    let groups = groups_up_to(ctx.budget.max_group_order);
    let z2 = cyclic(2);
    let z3 = cyclic(3);
    ctx.run_cases(&maps, |i, m| {
        let f = &m.map;
        let (a, b) = (f.domain(), f.codomain());
        let mut rng = case_rng(ctx.budget.seed, i);
        let d = fdeg(f);
        let mut out = Vec::new();
        let mut check = |label: String, got: ExtNat, equal: bool| {
            let bad = if equal { got != d } else { got > d };
            if bad {
                let want = if equal { d.to_string() } else { format!("≤ {d}") };
                out.push(ctx.failure(format!("f={} {label}", show(f)), want, got));
            }
        };

        let a2 = &groups[rng.gen_range(0..groups.len())];
        let eps = random_hom(a2, a, &mut rng);
        let surjective = distinct_values(&eps) == a.size();
        check(
            format!("∘ ε={} (surjective: {surjective})", show(&eps)),
            fdeg(&compose_pre(f, &eps).expect("ε lands in A")),
            surjective,
        );

        let sum = FiniteAbelianGroup::direct_sum([a, &z2]).expect("valid groups");
        let mut images: Vec<GroupElement> = (0..a.arity()).map(|j| a.generator(j)).collect();
        images.push(a.zero());
        let proj = make_hom(&sum, a, &images).expect("projection");
        check("∘ projection from A⊕Z2".into(), fdeg(&compose_pre(f, &proj).expect("lands in A")), true);

        let b2 = &groups[rng.gen_range(0..groups.len())];
        let mu = random_hom(b, b2, &mut rng);
        let injective = distinct_values(&mu) == b.size();
        check(
            format!("μ={} ∘ (injective: {injective})", show(&mu)),
            fdeg(&compose_post(&mu, f).expect("μ starts at B")),
            injective,
        );

        let bigger = FiniteAbelianGroup::direct_sum([b, &z3]).expect("valid groups");
        let images: Vec<GroupElement> = (0..b.arity())
            .map(|j| {
                let mut c = b.generator(j).0;
                c.push(0);
                GroupElement(c)
            })
            .collect();
        let incl = make_hom(b, &bigger, &images).expect("inclusion");
        check("inclusion B → B⊕Z3 ∘".into(), fdeg(&compose_post(&incl, f).expect("starts at B")), true);
        out
    })
}

fn restriction(ctx: &Ctx) -> Outcome {
    let maps = corpus(&ctx.budget);
    ctx.run_cases(&maps, |i, m| {
        let f = &m.map;
        let a = f.domain();
        let mut rng = case_rng(ctx.budget.seed, i);
        let d = fdeg(f);
        let mut out = Vec::new();
        let x = random_element(a, &mut rng);
        let o = a.order_of(&x).expect("element of A");
        let (sub, images) = if o == 1 {
            (FiniteAbelianGroup::trivial(), vec![])
        } else {
            (cyclic(o), vec![x.clone()])
        };
        let incl = make_hom(&sub, a, &images).expect("x has order o");
        let r = fdeg(&compose_pre(f, &incl).expect("lands in A"));
        if r > d {
            out.push(ctx.failure(format!("f={} restricted to <{x}>", show(f)), format!("≤ {d}"), r));
        }
        if a.arity() >= 2 {
            let drop = rng.gen_range(0..a.arity());
            let keep: Vec<usize> = (0..a.arity()).filter(|&j| j != drop).collect();
            let sub = FiniteAbelianGroup::new(keep.iter().map(|&j| a.factors()[j]).collect()).expect("subgroup");
            let images: Vec<GroupElement> = keep.iter().map(|&j| a.generator(j)).collect();
            let incl = make_hom(&sub, a, &images).expect("coordinate inclusion");
            let r = fdeg(&compose_pre(f, &incl).expect("lands in A"));
            if r > d {
                out.push(ctx.failure(
                    format!("f={} restricted to coordinates {keep:?}", show(f)),
                    format!("≤ {d}"),
                    r,
                ));
            }
        }
        out
    })
}

fn products(ctx: &Ctx) -> Outcome {
    let maps = corpus(&ctx.budget);
    ctx.run_cases(&maps, |_, m| {
        let f = &m.map;
        let cap = degree_cap(f);
        let d = fdeg(f);
        let c = f.canonicalize();
        let components: Vec<FuncTable> = c.codomain().primes().into_iter().map(|p| c.project_primary(p)).collect();
        let mut out = Vec::new();
        let by_fdeg = ExtNat::sup(components.iter().map(fdeg));
        if d != by_fdeg {
            out.push(ctx.failure(format!("f={} via fdeg of components", show(f)), by_fdeg, d));
        }
        let by_scan = ExtNat::sup(components.iter().map(|g| scan_degree(generator_scan(g, cap))));
        let whole = scan_degree(generator_scan(f, cap));
        if whole != by_scan || whole != d {
            out.push(ctx.failure(
                format!("f={} generator scans, cap {cap}", show(f)),
                format!("whole = max of components = {d}"),
                format!("whole {whole}, components {by_scan}"),
            ));
        }
        out
    })
}

fn sums(ctx: &Ctx) -> Outcome {
    let maps = corpus(&ctx.budget);
    ctx.run_cases(&maps, |_, m| {
        let f = &m.map;
        let scan = generator_scan(f, BRUTE_CAP);
        let mut out = Vec::new();
        match fdeg_bruteforce(f, BRUTE_CAP, DEFAULT_BRUTE_BUDGET) {
            Ok(brute) if brute == scan => {}
            Ok(brute) => out.push(ctx.failure(format!("f={} cap {BRUTE_CAP}", show(f)), format!("{brute:?}"), format!("{scan:?}"))),
            Err(e) => out.push(ctx.failure(format!("f={}", show(f)), "oracle result", e)),
        }
        let d = fdeg(f);
        let want = match d {
            ExtNat::Finite(n) if n > BRUTE_CAP => ScanOutcome::Exceeded(BRUTE_CAP),
            ExtNat::Infinity => ScanOutcome::Exceeded(BRUTE_CAP),
            d => ScanOutcome::Degree(d),
        };
        if scan != want {
            out.push(ctx.failure(format!("f={} fdeg vs scan", show(f)), format!("{want:?}"), format!("{scan:?}")));
        }
        out
    })
}

enum DiagCase {
    Join(FuncTable, FuncTable),
    Exhaustive(FuncTable),
}

fn diagonalization(ctx: &Ctx) -> Outcome {
    let small = groups_up_to(6.min(ctx.budget.max_group_order));
    let mut cases = Vec::new();
    for i in 0..ctx.budget.corpus_size {
        let mut rng = case_rng(ctx.budget.seed, i);
        let pick = |rng: &mut rand_chacha::ChaCha8Rng| small[rng.gen_range(0..small.len())].clone();
        let mut chosen = None;
        for _ in 0..200 {
            let (a1, b1, a2, b2) = (pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng));
            if hom_is_trivial(&desc(&a1), &desc(&b2)) && hom_is_trivial(&desc(&a2), &desc(&b1)) {
                chosen = Some((a1, b1, a2, b2));
                break;
            }
        }
        let (a1, b1, a2, b2) = chosen.unwrap_or_else(|| (cyclic(2), cyclic(2), cyclic(3), cyclic(3)));
        let kinds = [MapKind::Random, MapKind::HomPlusConstant, MapKind::Delta];
        let f1 = random_map(kinds[rng.gen_range(0..3)], &a1, &b1, &mut rng);
        let f2 = random_map(kinds[rng.gen_range(0..3)], &a2, &b2, &mut rng);
        cases.push(DiagCase::Join(f1, f2));
    }
    let g = FiniteAbelianGroup::new(vec![2, 3]).expect("valid");
    cases.extend(all_maps(&g, &g).map(DiagCase::Exhaustive));
    let finite = AtomicU64::new(0);
    let (z2, z3) = (cyclic(2), cyclic(3));
    let (mut n, mut failures) = ctx.run_cases(&cases, |_, case| match case {
        DiagCase::Join(f1, f2) => {
            let join = diagonal_join(&[f1.clone(), f2.clone()]).expect("nonempty");
            let (d1, d2, d) = (fdeg(f1), fdeg(f2), fdeg(&join));
            if d != d1.max(d2) {
                vec![ctx.failure(format!("f1={} f2={}", show(f1), show(f2)), d1.max(d2), d)]
            } else {
                vec![]
            }
        }
        DiagCase::Exhaustive(f) => {
            let d = fdeg(f);
            let diagonal = is_diagonal(f, 1, 1);
            let finite_degree = d != ExtNat::Infinity;
            if finite_degree {
                finite.fetch_add(1, Ordering::Relaxed);
            }
            if finite_degree != diagonal {
                return vec![ctx.failure(show(f), format!("diagonal iff finite degree (fdeg {d})"), format!("diagonal: {diagonal}"))];
            }
            if diagonal {
                let (f1, f2) = diagonal_components(f, &z2, &z3, &z2, &z3);
                let want = fdeg(&f1).max(fdeg(&f2));
                if want != d {
                    return vec![ctx.failure(format!("{} components", show(f)), want, d)];
                }
            }
            vec![]
        }
    })?;
    // Every map Z2 → Z2 and every map Z3 → Z3 has finite degree.
    let count = finite.load(Ordering::Relaxed);
    n += 1;
    if count != 4 * 27 {
        failures.push(ctx.failure("finite-degree maps Z2⊕Z3 → Z2⊕Z3".into(), 108, count));
    }
    Ok((n, failures))
}

fn primary_split(ctx: &Ctx) -> Outcome {
    let maps = corpus(&ctx.budget);
    ctx.run_cases(&maps, |_, m| {
        let f = &m.map;
        let c = f.canonicalize();
        let cap = degree_cap(f);
        let mut expected = ExtNat::NegInfinity;
        for p in c.codomain().primes() {
            let part = match induced_primary_map(&c, p) {
                None => ExtNat::Infinity,
                Some(g) => scan_degree(generator_scan(&g, cap)),
            };
            expected = expected.max(part);
        }
        let d = fdeg(f);
        let mut out = Vec::new();
        if d != expected {
            out.push(ctx.failure(format!("f={}", show(f)), expected, d));
        }

        let (a, b) = (desc(f.domain()), desc(f.codomain()));
        let set = degree_set(&a, &b).expect("finite groups are supported");
        if !set.contains(d) {
            out.push(ctx.failure(format!("f={} against D(A,B)", show(f)), format!("fdeg ∈ {set}"), d));
        }
        let (sa, sb) = (a.structure_stats(), b.structure_stats());
        let mut finite_sup = ExtNat::ZERO;
        for p in a.primes().filter(|&p| b.part(p).is_some()) {
            let part = delta_sup(&a.primary_component(p), &b.primary_component(p)).expect("nontrivial components");
            finite_sup = finite_sup.max(part.value);
        }
        let same_p_group = sa.is_p_group.is_some() && sa.is_p_group == sb.is_p_group;
        if set.finite_sup != finite_sup || set.contains_inf == same_p_group {
            out.push(ctx.failure(
                format!("D({a},{b}) from primary components"),
                format!("finite_sup {finite_sup}, contains_inf {}", !same_p_group),
                format!("finite_sup {}, contains_inf {}", set.finite_sup, set.contains_inf),
            ));
        }
        let circ = delta_circ(&a, &b).expect("finite groups are supported");
        if circ != finite_sup {
            out.push(ctx.failure(format!("δ°({a},{b})"), finite_sup, circ));
        }
        out
    })
}

fn delta_vs_nu(ctx: &Ctx) -> Outcome {
    let mut cases = Vec::new();
    for a in groups_up_to(ctx.budget.max_group_order) {
        let mut moduli: Vec<u64> = Vec::new();
        for (p, _) in factorize(a.order()) {
            moduli.extend((1..=ctx.budget.max_beta).map(|b| pow(p, b)));
        }
        moduli.extend([2, 3, 6, 10, 12]);
        moduli.sort_unstable();
        moduli.dedup();
        cases.extend(moduli.into_iter().map(|m| (a.clone(), m)));
    }
    ctx.run_cases(&cases, |_, (a, m)| {
        let mut out = Vec::new();
        let inputs = format!("m={m} A={a}");
        let nu = match nilpotency_index(*m, a, NU_CAP) {
            Ok(nu) => nu,
            Err(e) => return vec![ctx.failure(inputs, "a nilpotency index", e)],
        };
        let ad = desc(a);
        let zm = desc(&cyclic(*m));
        let predicted = predicted_nu(*m, &ad).expect("m ≥ 2");
        if predicted != nu {
            out.push(ctx.failure(format!("{inputs} predicted"), predicted, nu));
        }
        let delta = delta_sup(&ad, &zm).expect("nontrivial groups");
        if delta.value.succ() != nu {
            out.push(ctx.failure(format!("{inputs} δ(A,Z_m)+1"), delta.value.succ(), nu));
        }
        if hom_is_trivial(&ad, &zm) && nu != ExtNat::Infinity {
            out.push(ctx.failure(format!("{inputs} with Hom(A,Z_m) = 0"), ExtNat::Infinity, nu));
        }
        out
    })
}

fn weisman(ctx: &Ctx) -> Outcome {
    let max = ctx.budget.max_group_order;
    let mut sums = Vec::new();
    let mut bridges = Vec::new();
    for p in (2..=max).filter(|&p| is_prime(p)) {
        for alpha in (1..).take_while(|&a| pow(p, a) <= max) {
            for beta in 1..=ctx.budget.max_beta {
                sums.extend((0..pow(p, alpha) as i64).map(|j| (p, alpha, beta, j)));
                if beta <= 2 {
                    bridges.push((p, alpha, beta));
                }
            }
        }
    }
    let (n1, mut failures) = ctx.run_cases(&sums, |_, &(p, alpha, beta, j)| {
        let k = pow(p, alpha);
        let m = BigInt::from(pow(p, beta));
        let t = weisman_threshold(p, alpha, beta);
        let residue = BigInt::from(-(p as i64)).pow(beta - 1).mod_floor(&m);
        let mut out = Vec::new();
        for n in t - 1..=t + 4 {
            let exact = binomial_sum(k, j, n);
            let r = exact.mod_floor(&m);
            let want = if n + 1 == t { residue.clone() } else { BigInt::zero() };
            let inputs = format!("p={p} α={alpha} β={beta} j={j} n={n}");
            if r != want {
                out.push(ctx.failure(inputs.clone(), format!("{want} mod {m}"), r.clone()));
            }
            let lib = weisman_m(k, j, n);
            if lib != exact {
                out.push(ctx.failure(format!("{inputs} exact sum"), &exact, lib));
            }
            let lib_mod = weisman_m_mod(k, j, n, pow(p, beta));
            if BigInt::from(lib_mod) != r {
                out.push(ctx.failure(format!("{inputs} reduced sum"), &r, lib_mod));
            }
        }
        out
    })?;
    let (n2, more) = ctx.run_cases(&bridges, |_, &(p, alpha, beta)| {
        let (a, b) = (cyclic(pow(p, alpha)), cyclic(pow(p, beta)));
        let m = BigInt::from(pow(p, beta));
        let delta = make_delta(&a, &b, &a.zero(), &b.generator(0)).expect("valid elements");
        let one = a.generator(0);
        let mut out = Vec::new();
        for n in 0..=weisman_threshold(p, alpha, beta) {
            let table = iterated_difference_binomial(&delta, &one, n).expect("element of A");
            for x in 0..a.size() {
                let sign = BigInt::from(if n % 2 == 0 { 1 } else { -1 });
                let want = (binomial_sum(a.order(), -(x as i64), n) * sign).mod_floor(&m);
                let got = table.value(x).coords()[0];
                if BigInt::from(got) != want {
                    out.push(ctx.failure(
                        format!("(Δ_1^{n} δ_(0,1))({x}) on Z{} → Z{}", a.order(), b.order()),
                        &want,
                        got,
                    ));
                }
            }
        }
        out
    })?;
    failures.extend(more);
    Ok((n1 + n2, failures))
}

fn wilson(ctx: &Ctx) -> Outcome {
    let max = ctx.budget.max_group_order;
    let mut cases = Vec::new();
    for p in (2..=max).filter(|&p| is_prime(p)) {
        for alpha in (1..).take_while(|&a| pow(p, a) <= max) {
            cases.extend((1..=ctx.budget.max_beta).map(|beta| (p, alpha, beta)));
        }
    }
    ctx.run_cases(&cases, |_, &(p, alpha, beta)| {
        let inputs = format!("p={p} α={alpha} β={beta}");
        let w = match wilson_check(p, alpha, beta) {
            Ok(w) => w,
            Err(e) => return vec![ctx.failure(inputs, "a Wilson check", e)],
        };
        let mut out = Vec::new();
        if !w.equal || !w.annihilated {
            out.push(ctx.failure(inputs.clone(), "equal and annihilated", format!("equal {}, annihilated {}", w.equal, w.annihilated)));
        }
        let m = pow(p, beta);
        let group = cyclic(pow(p, alpha));
        let t = GroupRingElement::monomial(m, &group, &group.generator(0), 1).expect("m ≥ 2");
        let minus_one = GroupRingElement::monomial(m, &group, &group.zero(), -1).expect("m ≥ 2");
        let base = t.add(&minus_one).expect("same ring");
        let lhs = naive_power(&base, w.exponent);
        if lhs != w.lhs {
            out.push(ctx.failure(format!("{inputs} lhs"), &lhs, &w.lhs));
        }
        let c = BigInt::from(-(p as i64)).pow(beta - 1).mod_floor(&BigInt::from(m));
        let rhs_ok = lhs.support_size() == group.size() && group.elements().all(|x| lhs.coefficient(&x) == c);
        if !rhs_ok {
            out.push(ctx.failure(format!("{inputs} coefficients"), format!("{c} everywhere"), &lhs));
        }
        if !lhs.augmentation().mod_floor(&BigInt::from(m)).is_zero() {
            out.push(ctx.failure(format!("{inputs} augmentation"), 0, lhs.augmentation()));
        }
        if !lhs.mul(&base).expect("same ring").is_zero() {
            out.push(ctx.failure(format!("{inputs} next power"), 0, "nonzero"));
        }
        out
    })
}

fn main_formula(ctx: &Ctx) -> Outcome {
    let cases: Vec<(FiniteAbelianGroup, u32)> = p_groups_up_to(ctx.budget.max_group_order)
        .into_iter()
        .flat_map(|a| (1..=ctx.budget.max_beta).map(move |b| (a.clone(), b)))
        .collect();
    ctx.run_cases(&cases, |_, (a, beta)| {
        let p = a.p_group_prime().expect("p-group");
        let m = pow(p, *beta);
        let inputs = format!("A={a} m={m}");
        let nu = match nilpotency_index(m, a, NU_CAP).map(|n| n.finite()) {
            Ok(Some(n)) => n,
            other => return vec![ctx.failure(inputs, "finite ν", format!("{other:?}"))],
        };
        let mut out = Vec::new();
        let al = alphas(a);
        let formula = main_formula_value(p, &al, *beta);
        if nu - 1 != formula {
            out.push(ctx.failure(inputs.clone(), formula, nu - 1));
        }
        if al.len() == 1 && delta_cyclic(p, al[0], *beta) != nu - 1 {
            out.push(ctx.failure(format!("{inputs} cyclic"), nu - 1, delta_cyclic(p, al[0], *beta)));
        }
        let at = ideal_power_is_zero(m, a, nu).expect("m ≥ 2");
        let below = ideal_power_is_zero(m, a, nu - 1).expect("m ≥ 2");
        if !at || below {
            out.push(ctx.failure(format!("{inputs} I^ν = 0 ≠ I^(ν-1)"), "true, false", format!("{at}, {below}")));
        }
        let ad = desc(a);
        let b1 = desc(&cyclic(m));
        let b2 = desc(&FiniteAbelianGroup::new(vec![m, p]).expect("valid"));
        let (r1, r2) = (delta_sup(&ad, &b1).expect("nontrivial"), delta_sup(&ad, &b2).expect("nontrivial"));
        if r1 != r2 || r1.value != ExtNat::Finite(nu - 1) || r1.case_tag != DeltaCase::PGroupFormula {
            out.push(ctx.failure(format!("{inputs} δ(A,Z_m) and δ(A,Z_m⊕Z_p)"), nu - 1, format!("{r1:?} / {r2:?}")));
        }
        out
    })
}

/// Non-increasing exponent lists with `Σ p^{α_i} ≤ max`.
fn exponent_multisets(p: u64, max: u64) -> Vec<Vec<u32>> {
    fn go(p: u64, room: u64, top: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        for a in 1..=top {
            let w = pow(p, a);
            if w > room {
                break;
            }
            prefix.push(a);
            go(p, room - w, a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(p, max, 32, &mut Vec::new(), &mut out);
    out
}

fn sum_theorem(ctx: &Ctx) -> Outcome {
    let mut cases = Vec::new();
    for p in (2..=ctx.budget.max_group_order).filter(|&p| is_prime(p)) {
        for al in exponent_multisets(p, ctx.budget.max_group_order) {
            cases.extend((1..=ctx.budget.max_beta).map(|b| (p, al.clone(), b)));
        }
    }
    let (n, mut failures) = ctx.run_cases(&cases, |_, (p, al, beta)| {
        let inputs = format!("p={p} α={al:?} β={beta}");
        let best = sum_theorem_max(*p, al, *beta);
        let mut out = Vec::new();
        let closed = main_formula_value(*p, al, *beta);
        if best != closed {
            out.push(ctx.failure(inputs.clone(), closed, best));
        }
        let collapsed = delta_cyclic(*p, al[0], *beta) + al[1..].iter().map(|&a| delta_cyclic(*p, a, 1)).sum::<u64>();
        if best != collapsed {
            out.push(ctx.failure(format!("{inputs} all of β-1 on α_1"), collapsed, best));
        }
        let a = FiniteAbelianGroup::new(al.iter().map(|&x| pow(*p, x)).collect()).expect("valid");
        let d = delta_sup(&desc(&a), &desc(&cyclic(pow(*p, *beta)))).expect("nontrivial").value;
        if d != ExtNat::Finite(best) {
            out.push(ctx.failure(format!("{inputs} δ(A,Z_p^β)"), best, d));
        }
        out
    })?;
    let spot_a = desc(&FiniteAbelianGroup::new(vec![2, 4]).expect("valid"));
    let spot = (sum_theorem_max(2, &[2, 1], 2), delta_sup(&spot_a, &desc(&cyclic(4))).map(|r| r.value));
    if spot != (6, Ok(ExtNat::Finite(6))) {
        failures.push(ctx.failure("δ(Z2⊕Z4, Z4)".into(), 6, format!("{spot:?}")));
    }
    Ok((n + 1, failures))
}

fn delta_prop(ctx: &Ctx) -> Outcome {
    let max = ctx.budget.max_group_order;
    let mut cases = Vec::new();
    for a in p_groups_up_to(max) {
        let p = a.p_group_prime().expect("p-group");
        for beta in (1..).take_while(|&b| pow(p, b) <= max) {
            cases.push((a.clone(), cyclic(pow(p, beta))));
        }
    }
    ctx.run_cases(&cases, |_, (a, b)| {
        let (ad, bd) = (desc(a), desc(b));
        let want = delta_sup(&ad, &bd).expect("nontrivial").value;
        let mut out = Vec::new();
        let set = degree_set(&ad, &bd).expect("supported");
        if set.finite_sup != want || set.contains_inf {
            out.push(ctx.failure(format!("D({a},{b})"), format!("finite_sup {want}, no inf"), set));
        }
        let Some(cap) = want.finite().map(|d| d + 1) else {
            return vec![ctx.failure(format!("δ({a},{b})"), "finite", want)];
        };
        let top = b.order();
        for x in a.elements() {
            for y in b.elements().filter(|y| b.order_of(y).expect("element") == top) {
                let f = make_delta(a, b, &x, &y).expect("valid elements");
                let scan = scan_degree(generator_scan(&f, cap));
                let d = fdeg(&f);
                if scan != want || d != want {
                    out.push(ctx.failure(show(&f), want, format!("scan {scan}, fdeg {d}")));
                }
            }
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multisets() {
        assert_eq!(
            exponent_multisets(2, 8),
            vec![vec![1], vec![1, 1], vec![1, 1, 1], vec![1, 1, 1, 1], vec![2], vec![2, 1], vec![2, 1, 1], vec![2, 2], vec![3]]
        );
    }

    #[test]
    fn caps_cover_the_worst_cyclic_case() {
        let f = FuncTable::zero(&cyclic(8), &cyclic(8));
        assert!(degree_cap(&f) >= 15);
        assert_eq!(degree_cap(&f), 32);
    }
}
