use std::collections::BTreeSet;

use diagperm::base::{verify_paper_case, BaseProblem, SearchOptions, VerifyOptions};
use diagperm::catalog::{SimpleSpec, SimpleWithAut};
use diagperm::diagonal::{enumerate_overgroups, DiagonalConfig, DiagonalGroup, NamedTop, OutPart, QLabel, TopPart};
use diagperm::perm::{Permutation, StabilizerChain};
use proptest::prelude::*;

// Oracles: plain recursion over every point, no orbit reduction, no memo.

fn stab(elems: &[Permutation], x: usize) -> Vec<Permutation> {
    elems.iter().filter(|p| p.fixes(x)).cloned().collect()
}

fn orbit_len(elems: &[Permutation], x: usize) -> usize {
    elems.iter().map(|p| p.apply(x)).collect::<BTreeSet<_>>().len()
}

fn brute_greedy(elems: &[Permutation], n: usize, depth: usize, out: &mut BTreeSet<usize>) {
    if elems.len() == 1 {
        out.insert(depth);
        return;
    }
    let longest = (0..n).map(|x| orbit_len(elems, x)).max().unwrap();
    for x in (0..n).filter(|&x| orbit_len(elems, x) == longest) {
        brute_greedy(&stab(elems, x), n, depth + 1, out);
    }
}

fn brute_min(elems: &[Permutation], n: usize) -> usize {
    if elems.len() == 1 {
        return 0;
    }
    (0..n)
        .filter(|&x| orbit_len(elems, x) > 1)
        .map(|x| 1 + brute_min(&stab(elems, x), n))
        .min()
        .unwrap()
}

fn brute_irr(elems: &[Permutation], n: usize) -> usize {
    if elems.len() == 1 {
        return 0;
    }
    (0..n)
        .filter(|&x| orbit_len(elems, x) > 1)
        .map(|x| 1 + brute_irr(&stab(elems, x), n))
        .max()
        .unwrap()
}

fn problem(n: usize, gens: &[Permutation]) -> (BaseProblem, Vec<Permutation>) {
    let chain = StabilizerChain::build(n, gens).unwrap();
    let elems = chain.elements(100_000).unwrap();
    (BaseProblem::from_chain(&chain, 100_000).unwrap(), elems)
}

#[test]
fn s5_natural_matches_brute_force() {
    let gens = [
        Permutation::from_cycles(5, &[&[0, 1]]).unwrap(),
        Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
    ];
    let (p, elems) = problem(5, &gens);
    let opts = SearchOptions::default();
    let mut g = BTreeSet::new();
    brute_greedy(&elems, 5, 0, &mut g);
    assert_eq!(p.greedy_sizes(&opts).unwrap().sizes, g.into_iter().collect::<Vec<_>>());
    assert_eq!(p.min_base(&opts).unwrap().0, brute_min(&elems, 5));
    assert_eq!(p.max_irredundant(&opts).unwrap().0, brute_irr(&elems, 5));
}

fn arb_group() -> impl Strategy<Value = (usize, Vec<Permutation>)> {
    (3usize..=7).prop_flat_map(|n| {
        let perm = Just((0..n as u32).collect::<Vec<u32>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap());
        (Just(n), prop::collection::vec(perm, 1..=2))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn statistics_match_brute_force((n, gens) in arb_group()) {
        let (p, elems) = problem(n, &gens);
        let opts = SearchOptions::default();
        let mut g = BTreeSet::new();
        brute_greedy(&elems, n, 0, &mut g);
        let out = p.greedy_sizes(&opts).unwrap();
        prop_assert_eq!(&out.sizes, &g.into_iter().collect::<Vec<_>>());
        for w in &out.witnesses {
            prop_assert!(p.is_base(w));
        }
        let (b, wb) = p.min_base(&opts).unwrap();
        prop_assert_eq!(b, brute_min(&elems, n));
        prop_assert!(p.is_base(&wb));
        let (i, wi) = p.max_irredundant(&opts).unwrap();
        prop_assert_eq!(i, brute_irr(&elems, n));
        prop_assert!(p.is_base(&wi));
        prop_assert!(b <= out.sizes[0] && *out.sizes.last().unwrap() <= i);
    }
}

#[test]
fn a5_squared_socle_and_full() {
    let opts = VerifyOptions::default();
    let socle = verify_paper_case(&DiagonalConfig::socle(SimpleSpec::alt(5), 2), &opts).unwrap();
    assert_eq!(socle.b, Some(3));
    assert_eq!(socle.greedy_sizes, Some(vec![3]));
    let full = verify_paper_case(&DiagonalConfig::full(SimpleSpec::alt(5), 2), &opts).unwrap();
    assert_eq!(full.b, Some(4));
    assert_eq!(full.greedy_sizes, Some(vec![4]));
    assert!(socle.matches && full.matches, "{socle:?}\n{full:?}");
}

#[test]
fn a5_socle_irredundant_matches_brute_force() {
    let g = DiagonalGroup::build(&DiagonalConfig::socle(SimpleSpec::alt(5), 2)).unwrap();
    let elems = g.d_permutations(usize::MAX).unwrap();
    let p = BaseProblem::from_diagonal(&g, usize::MAX).unwrap();
    let (i, _) = p.max_irredundant(&SearchOptions::default()).unwrap();
    assert_eq!(i, 1 + brute_irr(&elems, 60));
}

#[test]
fn every_a5_overgroup_for_k2() {
    let sa = SimpleWithAut::build(SimpleSpec::alt(5)).unwrap();
    let opts = VerifyOptions::default();
    for o in enumerate_overgroups(SimpleSpec::alt(5), &sa.aut) {
        let r = verify_paper_case(&o.config, &opts).unwrap();
        let expect = if o.pairs.len() == 4 { 4 } else { 3 };
        assert_eq!(r.greedy_sizes, Some(vec![expect]), "{}", r.label);
        assert!(r.matches, "{r:?}");
    }
}

#[test]
fn a6_squared_full() {
    let r = verify_paper_case(&DiagonalConfig::full(SimpleSpec::alt(6), 2), &VerifyOptions::default()).unwrap();
    assert_eq!((r.b, r.greedy_sizes.clone()), (Some(4), Some(vec![4])));
    assert!(r.matches, "{r:?}");
}

#[test]
fn l2_8_socle_irredundant() {
    let r = verify_paper_case(&DiagonalConfig::socle(SimpleSpec::psl2(8), 2), &VerifyOptions::default()).unwrap();
    assert_eq!(r.irr, Some(3));
    assert_eq!(r.b, Some(3));
    assert!(r.matches, "{r:?}");
}

#[test]
fn a5_cubed_has_regular_suborbit() {
    let opts = VerifyOptions::default();
    let full = verify_paper_case(&DiagonalConfig::full(SimpleSpec::alt(5), 3), &opts).unwrap();
    assert_eq!((full.b, full.greedy_sizes.clone()), (Some(2), Some(vec![2])));
    assert!(full.matches, "{full:?}");
    let alt_top = DiagonalConfig::custom(
        SimpleSpec::alt(5),
        3,
        OutPart::Labels(vec![]),
        TopPart::Named(NamedTop::A),
        QLabel::A,
        None,
    );
    let r = verify_paper_case(&alt_top, &opts).unwrap();
    assert_eq!((r.b, r.greedy_sizes.clone()), (Some(2), Some(vec![2])));
    assert!(r.matches, "{r:?}");
}
