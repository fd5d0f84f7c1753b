use std::collections::HashSet;

use diagperm::catalog::{
    invertiliser, is_automorphism, CatalogOptions, GroupSnapshot, HolomorphAction, SimpleGroupData, SimpleSpec,
    SimpleWithAut,
};
use diagperm::perm::{Permutation, StabilizerChain, DEFAULT_ORDER_CAP};
use diagperm::Error;

const CATALOG: [SimpleSpec; 6] = [
    SimpleSpec::Alt { n: 5 },
    SimpleSpec::Alt { n: 6 },
    SimpleSpec::Psl2 { q: 7 },
    SimpleSpec::Psl2 { q: 8 },
    SimpleSpec::Psl2 { q: 11 },
    SimpleSpec::Psl2 { q: 13 },
];

fn order(c: &StabilizerChain) -> u64 {
    c.order_u64().unwrap()
}

#[test]
fn orders_and_tables() {
    for spec in CATALOG {
        let t = SimpleGroupData::build(spec).unwrap();
        assert_eq!(t.order() as u64, spec.expected_order(), "{spec}");
        assert_eq!(t.identity(), 0);
        // the table agrees with composing the natural-action permutations
        for a in (0..t.order()).step_by(7) {
            assert_eq!(t.mul(a, t.inv(a)), 0);
            for b in (0..t.order()).step_by(11) {
                let ab = t.element(a).compose(t.element(b));
                assert_eq!(t.index_of(&ab), Some(t.mul(a, b)));
            }
        }
        let degree = match spec {
            SimpleSpec::Alt { n } => n as usize,
            SimpleSpec::Psl2 { q } => q as usize + 1,
        };
        assert_eq!(t.natural_degree(), degree);
        assert!(t.generates(t.generators()));
    }
    assert_eq!(SimpleGroupData::build(SimpleSpec::psl2(8)).unwrap().order(), 504);
}

#[test]
fn aliases_and_caps() {
    assert!(matches!(SimpleGroupData::build(SimpleSpec::psl2(4)), Err(Error::Unsupported(_))));
    let opts = CatalogOptions {
        allow_aliases: true,
        ..CatalogOptions::default()
    };
    assert_eq!(SimpleGroupData::build_with(SimpleSpec::psl2(4), &opts).unwrap().spec(), SimpleSpec::alt(5));
    assert_eq!(SimpleGroupData::build_with(SimpleSpec::psl2(9), &opts).unwrap().order(), 360);
    assert!(SimpleGroupData::build(SimpleSpec::alt(7)).unwrap_err().is_resource());
    assert!(matches!(SimpleGroupData::build(SimpleSpec::alt(4)), Err(Error::Unsupported(_))));
    assert!(matches!(SimpleGroupData::build(SimpleSpec::psl2(6)), Err(Error::Unsupported(_))));
}

#[test]
fn labels_parse() {
    for (s, spec) in [("A5", SimpleSpec::alt(5)), ("Alt(6)", SimpleSpec::alt(6)), ("L2_8", SimpleSpec::psl2(8)), ("PSL2(11)", SimpleSpec::psl2(11))] {
        assert_eq!(s.parse::<SimpleSpec>().unwrap(), spec);
    }
    assert!(matches!("M11".parse::<SimpleSpec>(), Err(Error::Config(_))));
}

#[test]
fn automorphism_groups() {
    for spec in CATALOG {
        let s = SimpleWithAut::build(spec).unwrap();
        assert_eq!(s.aut.out_order() as u64, spec.expected_out_order().unwrap(), "{spec}");
        assert_eq!(s.aut.order(), s.t.order() * s.aut.out_order());
        assert_eq!(s.aut.elements().len(), s.aut.order());
    }
}

#[test]
fn a5_automorphisms_preserve_every_product() {
    let s = SimpleWithAut::build(SimpleSpec::alt(5)).unwrap();
    let (t, aut) = (&s.t, &s.aut);
    assert_eq!(aut.order(), 120);
    let distinct: HashSet<&Permutation> = aut.elements().iter().collect();
    assert_eq!(distinct.len(), 120);
    for phi in aut.elements() {
        for a in 0..60 {
            for b in 0..60 {
                assert_eq!(phi.apply(t.mul(a, b)), t.mul(phi.apply(a), phi.apply(b)));
            }
        }
    }
    assert!(!is_automorphism(t, &Permutation::from_cycles(60, &[&[1, 2]]).unwrap()));
}

#[test]
fn l2_7_and_a6_counts() {
    let s = SimpleWithAut::build(SimpleSpec::psl2(7)).unwrap();
    assert_eq!(s.aut.order(), 336);
    for phi in s.aut.generators() {
        assert!(is_automorphism(&s.t, phi));
    }
    let a6 = SimpleWithAut::build(SimpleSpec::alt(6)).unwrap();
    assert_eq!(a6.aut.order(), 1440);
    assert_eq!(a6.aut.out_order(), 4);
}

#[test]
fn invertiliser_examples() {
    let s = SimpleWithAut::build(SimpleSpec::alt(5)).unwrap();
    let five = s.t.class_representative("5A").unwrap();
    let i = invertiliser(&s.t, s.aut.chain(), five, DEFAULT_ORDER_CAP).unwrap();
    assert_eq!(order(&i), 10);
    assert_eq!(s.aut.invertiliser(&s.t, five).len(), 10);
    let inv = s.t.class_representative("2A").unwrap();
    assert_eq!(s.aut.invertiliser(&s.t, inv), s.aut.centraliser(inv));
    let triv = StabilizerChain::trivial(60);
    assert_eq!(order(&invertiliser(&s.t, &triv, five, DEFAULT_ORDER_CAP).unwrap()), 1);
    for spec in CATALOG {
        let s = SimpleWithAut::build(spec).unwrap();
        for x in 0..s.t.order() {
            let (c, i) = (s.aut.centraliser(x).len(), s.aut.invertiliser(&s.t, x).len());
            assert!(c <= i && i <= 2 * c);
        }
    }
}

#[test]
fn holomorph_orders() {
    let s = SimpleWithAut::build(SimpleSpec::alt(5)).unwrap();
    let h = HolomorphAction::new(&s.t, &s.aut, false).chain().unwrap();
    assert_eq!(order(&h), 7200);
    assert_eq!(order(&h.point_stabilizer(0).unwrap()), 120);
    let hs = HolomorphAction::new(&s.t, &s.aut, true).chain().unwrap();
    assert_eq!(order(&hs), 14400);
    assert_eq!(order(&hs.point_stabilizer(0).unwrap()), 240);
}

#[test]
fn classes_partition_the_group() {
    for spec in CATALOG {
        let t = SimpleGroupData::build(spec).unwrap();
        let classes = t.classes();
        assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), t.order());
        let labels = t.class_labels();
        assert_eq!(labels.len(), classes.len());
        for (c, l) in classes.iter().zip(&labels) {
            assert_eq!(t.class_representative(l).unwrap(), c[0]);
            assert!(l.starts_with(&t.element_order(c[0]).to_string()));
        }
    }
    let a5 = SimpleGroupData::build(SimpleSpec::alt(5)).unwrap();
    let sizes: Vec<usize> = a5.classes().iter().map(Vec::len).collect();
    assert_eq!(sizes, vec![1, 15, 20, 12, 12]);
}

#[test]
fn snapshots_round_trip() {
    for spec in [SimpleSpec::alt(5), SimpleSpec::psl2(8)] {
        let s = SimpleWithAut::build(spec).unwrap();
        let snap = GroupSnapshot::new(&s.t, &s.aut);
        let text = serde_json::to_string(&snap).unwrap();
        let back: GroupSnapshot = serde_json::from_str(&text).unwrap();
        assert_eq!(back, snap);
        let aut = back.restore_aut(&s.t).unwrap();
        assert_eq!(aut.order(), s.aut.order());
        let other = SimpleGroupData::build(SimpleSpec::psl2(7)).unwrap();
        assert!(matches!(back.restore_aut(&other), Err(Error::Internal(_))));
    }
}
