//! One PASS/FAIL line per acceptance criterion.
//!
//! Runs without the libtest harness so the lines always print. The process
//! fails if the set of failing criteria differs from `EXPECTED_FAIL`; those
//! failures are genuine disagreements, documented in the README.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;
use std::time::Instant;

use diagperm::base::{verify_group, BaseReport, SearchOptions, Stats, VerifyOptions};
use diagperm::catalog::{SimpleSpec, SimpleWithAut};
use diagperm::diagonal::{
    enumerate_overgroups, DiagonalConfig, DiagonalGroup, NamedOut, NamedTop, OutPart, QLabel, TopPart,
};
use diagperm::k2::{
    class_bound_criterion, exceptional_check, invertiliser_procedure, l2_order_comparisons, lie_table_params,
    oplus_check, qtilde_exact, ClassicalFamily, ClassicalGroup, CriterionParams, ExceptionalFamily,
};
use diagperm::partition::{
    ceil_chain, closed_form_vs_sim, enumerate_types, stab_order, verify_min_part, verify_part_sigma, DEFAULT_TYPE_CAP,
};
use diagperm::perm::{orbits, DEFAULT_MEMORY_CAP};
use diagperm::rc::{certify, log_bound, rc_bounds, witness_alternating_family, witness_rc4};
use diagperm::Result;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

/// Criteria that fail on the computed evidence.
const EXPECTED_FAIL: [u32; 2] = [4, 9];

#[derive(Default)]
struct Instances {
    reports: Vec<BaseReport>,
    /// (label, certified lower bound from the four-point witness)
    rc4: Vec<(String, usize)>,
    /// (label, lower, upper, I)
    brackets: Vec<(String, usize, usize, usize)>,
}

fn threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn all_stats() -> VerifyOptions {
    VerifyOptions {
        stats: Stats::parse("b,greedy,irr").unwrap(),
        search: SearchOptions {
            threads: threads(),
            ..SearchOptions::default()
        },
        ..VerifyOptions::default()
    }
}

fn overgroups(s: &Arc<SimpleWithAut>) -> Result<Vec<(DiagonalGroup, bool)>> {
    let full = 2 * s.aut.out_order();
    enumerate_overgroups(s.t.spec(), &s.aut)
        .into_iter()
        .map(|o| Ok((DiagonalGroup::with_simple(&o.config, s.clone())?, o.pairs.len() == full)))
        .collect()
}

fn c1(inst: &mut Instances) -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for (spec, want) in [(SimpleSpec::alt(5), 5), (SimpleSpec::alt(6), 16)] {
        let s = SimpleWithAut::build(spec)?;
        let groups = overgroups(&s)?;
        ok &= groups.len() == want;
        let mut fours = 0;
        for (g, full) in &groups {
            let r = verify_group(g, &all_stats())?;
            let expect = if *full { 4 } else { 3 };
            fours += usize::from(r.b == Some(4));
            ok &= r.b == Some(expect) && r.greedy_sizes == Some(vec![expect]) && r.matches;
            inst.reports.push(r);
        }
        notes.push(format!("{spec}: {} groups, b = G = 4 for {fours}", groups.len()));
    }
    Ok((ok, notes.join("; ")))
}

fn c2(inst: &mut Instances) -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for q in [7, 8, 11, 13] {
        let s = SimpleWithAut::build(SimpleSpec::psl2(q))?;
        let groups = overgroups(&s)?;
        let mut comparisons = 0;
        for (g, _) in &groups {
            let r = verify_group(g, &all_stats())?;
            ok &= r.greedy_sizes == Some(vec![3]) && r.matches;
            inst.reports.push(r);
            for c in l2_order_comparisons(g)? {
                comparisons += 1;
                ok &= c.ok;
            }
        }
        notes.push(format!("L2({q}): {} groups, {comparisons} comparisons", groups.len()));
    }
    Ok((ok, notes.join("; ")))
}

fn c3(inst: &mut Instances) -> Result<(bool, String)> {
    let t = SimpleSpec::alt(5);
    let s = SimpleWithAut::build(t)?;
    let none = || OutPart::Named(NamedOut::None);
    let full = || OutPart::Named(NamedOut::Full);
    let configs = [
        DiagonalConfig::custom(t, 3, none(), TopPart::Named(NamedTop::A), QLabel::A, None),
        DiagonalConfig::custom(t, 3, full(), TopPart::Named(NamedTop::A), QLabel::A, None),
        DiagonalConfig::custom(t, 3, none(), TopPart::Named(NamedTop::S), QLabel::S, None),
        DiagonalConfig::custom(t, 3, none(), TopPart::Named(NamedTop::S), QLabel::A, Some(1)),
        DiagonalConfig::full(t, 3),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for c in &configs {
        let g = DiagonalGroup::with_simple(c, s.clone())?;
        let d = g.d_permutations(usize::MAX)?;
        let longest = orbits(&d, g.omega_size())?.iter().map(Vec::len).max().unwrap_or(0);
        let r = verify_group(&g, &all_stats())?;
        ok &= longest == d.len() && r.b == Some(2) && r.greedy_sizes == Some(vec![2]) && r.matches;
        notes.push(format!("|D| = {} longest {longest}", d.len()));
        inst.reports.push(r);
    }
    Ok((ok, format!("{} groups: {}", configs.len(), notes.join(", "))))
}

/// Labelled-partition stabiliser orders in S_k and A_k, by enumerating S_k.
fn stab_brute_ok() -> bool {
    fn perms(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(k - 1) {
            for i in 0..k {
                let mut q = p.clone();
                q.insert(i, k - 1);
                out.push(q);
            }
        }
        out
    }
    let even = |p: &[usize]| (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count() % 2 == 0;
    for k in 1..=9usize {
        let all = perms(k);
        let Ok(types) = enumerate_types(k as u64, k as u64, 100_000) else { return false };
        for t in types {
            let mut label = Vec::new();
            for (block, size) in t.parts().iter().flat_map(|&(s, m)| std::iter::repeat_n(s, m as usize)).enumerate() {
                label.extend(std::iter::repeat_n(block, size as usize));
            }
            let keep: Vec<&Vec<usize>> = all.iter().filter(|p| (0..k).all(|x| label[p[x]] == label[x])).collect();
            let evens = keep.iter().filter(|p| even(p)).count();
            if stab_order(&t, QLabel::S) != BigUint::from(keep.len()) || stab_order(&t, QLabel::A) != BigUint::from(evens) {
                return false;
            }
        }
    }
    true
}

fn c4() -> Result<(bool, String)> {
    let mut failed: Vec<String> = Vec::new();
    let mut runs = 0;
    for n in 6..=8u64 {
        for k in n + 1..=3 * n {
            for q in [QLabel::A, QLabel::S] {
                runs += 2;
                if !verify_min_part(k, n, q, DEFAULT_TYPE_CAP)?.ok {
                    failed.push(format!("min-part({k},{n},{q:?})"));
                }
                if !verify_part_sigma(k, n, q, DEFAULT_TYPE_CAP)?.ok {
                    failed.push(format!("sigma-part({k},{n},{q:?})"));
                }
            }
        }
    }
    let stab = stab_brute_ok();
    let detail = format!(
        "{} of {runs} checks fail [{}]; stab_order vs enumeration for k <= 9: {}",
        failed.len(),
        failed.join(" "),
        if stab { "agrees" } else { "DISAGREES" }
    );
    Ok((failed.is_empty() && stab, detail))
}

fn c5() -> Result<(bool, String)> {
    let mut bad = 0;
    let mut total = 0;
    for n in 1..=20 {
        for r in 0..=6 {
            for m in 0..=10_000 {
                total += 1;
                bad += usize::from(!ceil_chain(m, n, r)?);
            }
        }
    }
    Ok((bad == 0, format!("{bad} of {total} triples fail")))
}

fn c6() -> Result<(bool, String)> {
    let mut ok = true;
    let mut rows = 0;
    let mut literal = 0;
    let mut examples = Vec::new();
    for n in [60u64, 168, 360, 504, 660] {
        let mut ks: Vec<u64> = (n + 1..=n + 200).collect();
        for l in [2u32, 3] {
            let p = n.pow(l);
            ks.extend([p - 2, p - 1, p, p + 1]);
        }
        for r in closed_form_vs_sim(n, ks, &[QLabel::A, QLabel::S])? {
            rows += 1;
            ok &= (r.sim == r.ell + 1 || r.sim == r.ell + 2) && r.sim == r.prop_reading;
            if r.sim != r.thm_reading {
                literal += 1;
                if examples.len() < 3 {
                    examples.push(format!("n={} k={} Q={:?} sim={} literal={}", r.n, r.k, r.q, r.sim, r.thm_reading));
                }
            }
        }
    }
    Ok((ok, format!("{rows} rows; Q = A_k boundary reading differs on {literal} rows, e.g. {}", examples.join("; "))))
}

fn c7(inst: &mut Instances) -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for c in [
        DiagonalConfig::socle(SimpleSpec::alt(5), 2),
        DiagonalConfig::full(SimpleSpec::alt(5), 2),
        DiagonalConfig::socle(SimpleSpec::alt(5), 3),
        DiagonalConfig::full(SimpleSpec::alt(5), 3),
        DiagonalConfig::socle(SimpleSpec::psl2(8), 2),
        DiagonalConfig::full(SimpleSpec::psl2(8), 2),
    ] {
        let g = DiagonalGroup::build(&c)?;
        let cert = certify(&g, &witness_rc4(&g)?, DEFAULT_MEMORY_CAP)?;
        ok &= cert.complete && !cert.same_orbit && cert.rc_lower == Some(4);
        inst.rc4.push((c.label(), cert.rc_lower.unwrap_or(0)));
    }
    notes.push(format!("(a) {} four-point witnesses", inst.rc4.len()));

    for spec in [SimpleSpec::psl2(8), SimpleSpec::alt(5)] {
        let g = DiagonalGroup::build(&DiagonalConfig::socle(spec, 2))?;
        let irr = verify_group(&g, &all_stats())?.irr.unwrap_or(0);
        let b = rc_bounds(&g, 4, &all_stats().search)?;
        if spec == SimpleSpec::psl2(8) {
            ok &= irr == 3 && b.exact && b.lower == 4;
            notes.push(format!("(b) L2(8)^2: I = {irr}, {} <= RC <= {}", b.lower, b.upper));
        }
        inst.brackets.push((b.label, b.lower, b.upper, irr));
    }

    for k in [3, 4] {
        let c = DiagonalConfig::custom(SimpleSpec::alt(5), k, OutPart::Named(NamedOut::None), TopPart::Named(NamedTop::S), QLabel::S, None);
        let g = DiagonalGroup::build(&c)?;
        let cert = certify(&g, &witness_alternating_family(&g, 3)?, DEFAULT_MEMORY_CAP)?;
        ok &= cert.complete && !cert.same_orbit && cert.rc_lower == Some(3);
        notes.push(format!("(c) m = 3, k = {k}: RC >= {}", cert.rc_lower.unwrap_or(0)));
    }
    Ok((ok, notes.join("; ")))
}

fn c8() -> Result<(bool, String)> {
    let bad: Vec<u64> = (64..=5000).filter(|&m| !log_bound(m).map(|b| b.ok()).unwrap_or(false)).collect();
    Ok((bad.is_empty(), format!("{} of 4937 values of m fail", bad.len())))
}

/// Q~ recomputed from the element list of Aut(T), classes by conjugation.
fn qtilde_brute(s: &SimpleWithAut, y: usize) -> BigRational {
    let els = s.aut.elements();
    let index: HashMap<_, _> = els.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let yi = s.t.inv(y);
    let inv: HashSet<usize> = (0..els.len()).filter(|&i| [y, yi].contains(&els[i].apply(y))).collect();
    let mut seen = vec![false; els.len()];
    let mut total = BigRational::zero();
    for i in 0..els.len() {
        if seen[i] {
            continue;
        }
        let class: HashSet<usize> = els.iter().map(|g| index[&els[i].conjugate_by(g)]).collect();
        for &c in &class {
            seen[c] = true;
        }
        let ord = els[i].order();
        if ord >= 2 && (2..ord).all(|d| !ord.is_multiple_of(d)) {
            let hit = class.iter().filter(|c| inv.contains(c)).count();
            total += BigRational::new(BigInt::from(hit), BigInt::from(class.len()));
        }
    }
    total * BigRational::from_integer(BigInt::from(inv.len() * s.aut.out_order()))
}

fn c9() -> Result<(bool, String)> {
    let mut notes = Vec::new();
    let mut proc_ok = true;
    for q in [7, 8, 11] {
        let r = invertiliser_procedure(&*SimpleWithAut::build(SimpleSpec::psl2(q))?)?;
        let missing: Vec<&str> = r.classes.iter().filter(|c| c.x0.is_none()).map(|c| c.label.as_str()).collect();
        proc_ok &= r.success;
        notes.push(format!("procedure L2({q}): {}", if r.success { "succeeds".into() } else { format!("no x0 for {}", missing.join(",")) }));
    }

    let mut qt_ok = true;
    for (spec, labels) in [(SimpleSpec::alt(5), ["3A", "5A", "5B"]), (SimpleSpec::psl2(7), ["3A", "4A", "7A"])] {
        let s = SimpleWithAut::build(spec)?;
        for l in labels {
            let y = s.t.class_representative(l)?;
            qt_ok &= qtilde_exact(&s, y)?.value == qtilde_brute(&s, y);
        }
    }
    notes.push(format!("qtilde vs oracle: {}", if qt_ok { "agrees" } else { "DISAGREES" }));

    use ClassicalFamily as C;
    let points = [(C::PSp, 3, 5), (C::L, 4, 9), (C::PSp, 3, 7), (C::U, 5, 4), (C::L, 5, 5), (C::OmegaOdd, 4, 5), (C::OmegaMinus, 5, 3)];
    let mut held = Vec::new();
    let mut failed = Vec::new();
    for (f, m, q) in points {
        let g = ClassicalGroup::new(f, m, q)?;
        if class_bound_criterion(&CriterionParams::from(&lie_table_params(&g)?))? {
            held.push(g.to_string());
        } else {
            failed.push(g.to_string());
        }
    }
    let crit_ok = held.len() >= 5 && held.iter().any(|g| g == "PSp6(5)") && held.iter().any(|g| g == "L4(9)");
    notes.push(format!("criterion holds on {}/{} points, fails on [{}]", held.len(), points.len(), failed.join(", ")));

    let oplus = [(4, 4), (4, 5), (4, 7), (5, 2), (5, 3), (6, 2), (7, 2)];
    let mut oplus_held = 0;
    for (m, q) in oplus {
        oplus_held += usize::from(oplus_check(m, q)?.holds);
    }
    notes.push(format!("oplus holds on {oplus_held}/{}", oplus.len()));

    let mut e7_ok = true;
    for q in [3, 4, 5] {
        e7_ok &= exceptional_check(ExceptionalFamily::E7, q, None)?.holds;
    }
    notes.push(format!("E7(3,4,5): {}", if e7_ok { "hold" } else { "FAIL" }));

    Ok((proc_ok && qt_ok && crit_ok && oplus_held >= 3 && e7_ok, notes.join("; ")))
}

fn c10(inst: &Instances) -> Result<(bool, String)> {
    let ceil_log2 = |n: usize| if n <= 1 { 0 } else { (n - 1).ilog2() as usize + 1 };
    let mut bad = Vec::new();
    for r in &inst.reports {
        let (Some(b), Some(sizes), Some(i)) = (r.b, r.greedy_sizes.as_ref(), r.irr) else {
            bad.push(format!("{}: missing statistics", r.label));
            continue;
        };
        let (lo, hi) = (sizes[0], *sizes.last().unwrap());
        if !(b <= lo && lo <= hi && hi <= i && i <= b * ceil_log2(r.omega) && sizes.len() == 1) {
            bad.push(r.label.clone());
        }
    }
    for (label, lower) in &inst.rc4 {
        if *lower < 4 {
            bad.push(format!("{label}: RC lower {lower}"));
        }
    }
    for (label, lower, upper, irr) in &inst.brackets {
        if *upper != irr + 1 || lower > upper {
            bad.push(format!("{label}: bracket {lower}..{upper} with I = {irr}"));
        }
    }
    let n = inst.reports.len() + inst.rc4.len() + inst.brackets.len();
    Ok((bad.is_empty(), format!("{n} instances, {} violations {bad:?}", bad.len())))
}

fn main() {
    let mut inst = Instances::default();
    let mut failed = Vec::new();
    type Criterion<'a> = Box<dyn FnOnce(&mut Instances) -> Result<(bool, String)> + 'a>;
    let criteria: Vec<(u32, &str, Criterion)> = vec![
        (1, "k = 2 bases for every A5 and A6 overgroup", Box::new(c1)),
        (2, "k = 2 greedy value and order comparisons for L2(q)", Box::new(c2)),
        (3, "A5^3 with P, Q in {A3, S3}: regular suborbit, b = G = 2", Box::new(c3)),
        (4, "partition-type claims for n in {6, 7, 8}, n < k <= 3n", Box::new(|_| c4())),
        (5, "ceiling identity for m <= 10^4, n <= 20, r <= 6", Box::new(|_| c5())),
        (6, "refinement simulator against the closed form", Box::new(|_| c6())),
        (7, "relational-complexity witnesses", Box::new(c7)),
        (8, "log n / log log n <= 2m for 64 <= m <= 5000", Box::new(|_| c8())),
        (9, "k = 2 criteria", Box::new(|_| c9())),
        (10, "global invariants over the instances above", Box::new(|i| c10(i))),
    ];
    for (id, name, f) in criteria {
        let start = Instant::now();
        let (ok, detail) = f(&mut inst).unwrap_or_else(|e| (false, format!("error: {e}")));
        let secs = start.elapsed().as_secs_f64();
        println!("{} criterion {id}: {name}: {detail} ({secs:.1}s)", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failed.push(id);
        }
    }
    println!("failing criteria: {failed:?}, expected {EXPECTED_FAIL:?}");
    if failed != EXPECTED_FAIL {
        eprintln!("acceptance outcome changed");
        std::process::exit(1);
    }
}
