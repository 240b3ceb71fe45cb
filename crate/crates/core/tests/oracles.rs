//! Derived values checked against independent computations: path counts,
//! closed formulas, exhaustive scans and hand-computed examples.

mod common;

use proptest::prelude::*;
use siltkit::algebra::{
    build_algebra, dynkin_quiver, jacobian_presentation, preprojective_presentation, AlgebraPresentation,
    AlgebraTable, Quiver,
};
use siltkit::homotopy::{h0, is_isomorphic as complex_iso, ProjComplex};
use siltkit::rep::{direct_sum, hom_dim, indecomposables, is_isomorphic, projective, simple};
use siltkit::silting::{
    geq, hasse, initial_silting, interval_membership, mutate_set, replay, two_silt_interval, Direction,
};
use siltkit::tau_tilt::{
    enumerate_stt, fac_closure, index_in, is_stt_pair, pair_from_silting, silting_from_pair, tau_tilting_finite,
    torsion_classes_bruteforce, verify_simple_tilt, verify_two_silt_bijection, SupportTauTiltingPair,
    TauFiniteness, Verification,
};

use common::{load, setup};

fn catalan(n: u64) -> u64 {
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

/// Paths in an acyclic quiver by depth-first search, trivial paths included.
fn count_paths(n: usize, arrows: &[(usize, usize)]) -> usize {
    fn from(v: usize, arrows: &[(usize, usize)]) -> usize {
        1 + arrows.iter().filter(|a| a.0 == v).map(|a| from(a.1, arrows)).sum::<usize>()
    }
    (0..n).map(|v| from(v, arrows)).sum()
}

fn quiver(n: usize, arrows: &[(usize, usize)]) -> Quiver {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let arrows = arrows.iter().enumerate().map(|(k, &(s, t))| (format!("a{k}"), names[s].clone(), names[t].clone())).collect();
    Quiver::from_named(names, arrows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn path_algebra_dimension_is_path_count(raw in prop::collection::vec((0usize..4, 0usize..4), 0..6)) {
        // orient every arrow from the smaller to the larger vertex: acyclic
        let arrows: Vec<(usize, usize)> = raw.into_iter().filter(|(s, t)| s != t).map(|(s, t)| (s.min(t), s.max(t))).collect();
        let alg = build_algebra(&AlgebraPresentation::path_algebra(quiver(4, &arrows))).unwrap();
        prop_assert_eq!(alg.dim(), count_paths(4, &arrows));
    }
}

#[test]
fn algebra_identities_and_associativity() {
    for name in ["a2", "a3", "dual_numbers", "preproj_a2", "preproj_a3", "jacobian_3cycle", "kronecker"] {
        let alg = load(name);
        let d = alg.dim();
        assert!(d <= 12);
        let one = (0..alg.num_vertices()).fold(alg.zero(), |acc, v| alg.add(&acc, &alg.unit(alg.idempotent(v))));
        for u in 0..d {
            let x = alg.unit(u);
            assert_eq!(alg.mul(&one, &x), x, "{name}");
            assert_eq!(alg.mul(&x, &one), x, "{name}");
            for v in 0..d {
                let xy = alg.mul(&x, &alg.unit(v));
                for w in 0..d {
                    let z = alg.unit(w);
                    assert_eq!(alg.mul(&xy, &z), alg.mul(&x, &alg.mul(&alg.unit(v), &z)), "{name}: ({u} {v}) {w}");
                }
            }
        }
    }
}

#[test]
fn preprojective_dimensions_follow_the_tetrahedral_numbers() {
    for n in 1..=3 {
        let alg = build_algebra(&preprojective_presentation(&dynkin_quiver('A', n).unwrap()).unwrap()).unwrap();
        assert_eq!(alg.dim(), n * (n + 1) * (n + 2) / 6);
    }
}

#[test]
fn jacobian_corpus_matches_the_cyclic_derivatives() {
    let q = Quiver::new(&["1", "2", "3"], &[("x", "1", "2"), ("y", "2", "3"), ("z", "3", "1")]).unwrap();
    let built = build_algebra(&jacobian_presentation(&q, &[(1, vec![0, 1, 2])]).unwrap()).unwrap();
    let file = load("jacobian_3cycle");
    assert_eq!(built.dim(), 6);
    assert_eq!(file.dim(), 6);
    assert_eq!(built.cartan(), file.cartan());
}

#[test]
fn hom_from_projectives_reads_off_dimension_vectors() {
    let alg = load("a3");
    for m in indecomposables(&alg, 10).unwrap().modules {
        for v in 0..3 {
            assert_eq!(hom_dim(&alg, &projective(&alg, v).unwrap(), &m).unwrap(), m.dims()[v]);
        }
    }
}

#[test]
fn torsion_class_counts_from_exhaustive_scans() {
    // kA_n has Catalan(n + 1) torsion classes; a semisimple algebra has 2^n
    for (name, want) in [("a2", catalan(3)), ("a3", catalan(4)), ("semisimple2", 4), ("dual_numbers", 2)] {
        let s = setup(name);
        assert_eq!(torsion_classes_bruteforce(&s.closures).unwrap().len() as u64, want, "{name}");
    }
    assert_eq!(setup("a2").indecs.len(), 3);
    assert_eq!(setup("a3").indecs.len(), 6);
}

#[test]
fn three_counts_agree_on_finite_corpus() {
    for (name, want) in [("a2", 5), ("a3", 14), ("preproj_a2", 6), ("jacobian_3cycle", 14), ("dual_numbers", 2), ("semisimple2", 4)] {
        let alg = load(name);
        let r = verify_two_silt_bijection(&alg, 100, 30).unwrap();
        assert_eq!(r.status, Verification::Verified, "{name}: {:?}", r.witnesses);
        assert_eq!((r.silt2_count, r.stt_count, r.tors_count), (want, Some(want), Some(want)), "{name}");
    }
}

#[test]
fn preprojective_a3_has_24_pairs_and_round_trips() {
    let alg = load("preproj_a3");
    let iv = two_silt_interval(&alg, &initial_silting(&alg), 100).unwrap();
    assert!(iv.complete);
    assert_eq!(iv.objects.len(), 24);
    let (pairs, complete) = enumerate_stt(&alg, 100).unwrap();
    assert!(complete);
    assert_eq!(pairs.len(), 24);
    for n in &iv.objects {
        let p = pair_from_silting(&alg, n).unwrap();
        assert!(is_stt_pair(&alg, &p).unwrap());
        assert!(complex_iso(&alg, &silting_from_pair(&alg, &p).unwrap(), n.complex()).unwrap());
        // every object is reproducible from its mutation path
        let again = replay(&alg, n.provenance()).unwrap();
        assert_eq!(again.k0_key(3), n.k0_key(3));
    }
    let h = hasse(&alg, &iv.objects).unwrap();
    assert!(h.matches_mutation);
    // each object has exactly n = 3 neighbours in the exchange graph
    let mut degree = vec![0; iv.objects.len()];
    for &(a, b) in &h.arrows {
        degree[a] += 1;
        degree[b] += 1;
    }
    assert!(degree.iter().all(|&d| d == 3));
}

#[test]
fn round_trip_and_order_transport_on_finite_corpus() {
    for name in ["a2", "a3", "preproj_a2", "jacobian_3cycle"] {
        let s = setup(name);
        let alg = &s.alg;
        let iv = two_silt_interval(alg, &initial_silting(alg), 100).unwrap();
        let facs: Vec<_> = iv
            .objects
            .iter()
            .map(|n| fac_closure(alg, &h0(alg, n.complex()).unwrap(), &s.indecs, &s.closures).unwrap())
            .collect();
        for (a, na) in iv.objects.iter().enumerate() {
            let p = pair_from_silting(alg, na).unwrap();
            assert!(complex_iso(alg, &silting_from_pair(alg, &p).unwrap(), na.complex()).unwrap(), "{name}");
            for (b, nb) in iv.objects.iter().enumerate() {
                assert_eq!(geq(alg, na, nb).unwrap(), facs[a].is_superset(&facs[b]), "{name}: {a} vs {b}");
            }
        }
    }
}

fn stalk_index(alg: &AlgebraTable, v: usize) -> usize {
    initial_silting(alg).summands().iter().position(|s| *s == ProjComplex::stalk(&[v], 0)).unwrap()
}

#[test]
fn pair_examples_over_a2() {
    let alg = load("a2");
    let lam = initial_silting(&alg);
    let p1 = projective(&alg, 0).unwrap();
    let s1 = simple(&alg, 0).unwrap();
    let s2 = simple(&alg, 1).unwrap();

    let p = pair_from_silting(&alg, &lam).unwrap();
    assert!(p.killed.is_empty());
    assert!(is_isomorphic(&alg, &p.module(&alg), &direct_sum(&alg, &[&p1, &projective(&alg, 1).unwrap()])));

    // P1 ⊕ (P2 -> P1): left mutation of Λ at P2
    let n = mutate_set(&alg, &lam, &[stalk_index(&alg, 1)], Direction::Left).unwrap();
    let p = pair_from_silting(&alg, &n).unwrap();
    assert!(p.killed.is_empty());
    assert!(is_isomorphic(&alg, &p.module(&alg), &direct_sum(&alg, &[&p1, &s1])));

    // P1[1] ⊕ P2: left mutation of Λ at P1
    let n = mutate_set(&alg, &lam, &[stalk_index(&alg, 0)], Direction::Left).unwrap();
    let p = pair_from_silting(&alg, &n).unwrap();
    assert_eq!(p.killed, vec![0]);
    assert!(is_isomorphic(&alg, &p.module(&alg), &s2));

    let bad = SupportTauTiltingPair { summands: vec![s1.clone(), s2.clone()], killed: vec![] };
    assert!(!is_stt_pair(&alg, &bad).unwrap());
    assert!(is_stt_pair(&alg, &SupportTauTiltingPair { summands: vec![], killed: vec![0, 1] }).unwrap());
}

#[test]
fn fac_examples_over_a2() {
    let s = setup("a2");
    let alg = &s.alg;
    let p1 = projective(alg, 0).unwrap();
    let p2 = projective(alg, 1).unwrap();
    let s1 = simple(alg, 0).unwrap();
    let all = fac_closure(alg, &direct_sum(alg, &[&p1, &p2]), &s.indecs, &s.closures).unwrap();
    assert_eq!(all.members, vec![0, 1, 2]);
    let t = fac_closure(alg, &direct_sum(alg, &[&p1, &s1]), &s.indecs, &s.closures).unwrap();
    let mut want = vec![index_in(alg, &s.indecs, &p1).unwrap(), index_in(alg, &s.indecs, &s1).unwrap()];
    want.sort_unstable();
    assert_eq!(t.members, want);
}

#[test]
fn simple_tilts_match_hand_computation() {
    let s = setup("a2");
    let alg = &s.alg;
    let idx = |m| index_in(alg, &s.indecs, &m).unwrap();
    let mut p1_s1 = vec![idx(projective(alg, 0).unwrap()), idx(simple(alg, 0).unwrap())];
    p1_s1.sort_unstable();
    let r = verify_simple_tilt(alg, &[1], &s.indecs, &s.closures).unwrap();
    assert!(r.equal);
    assert_eq!(r.from_simples.members, p1_s1);
    let r = verify_simple_tilt(alg, &[0], &s.indecs, &s.closures).unwrap();
    assert!(r.equal);
    assert_eq!(r.from_simples.members, vec![idx(simple(alg, 1).unwrap())]);
    let r = verify_simple_tilt(alg, &[], &s.indecs, &s.closures).unwrap();
    assert!(r.equal);
    assert_eq!(r.from_simples.members.len(), 3);
}

#[test]
fn finiteness_verdicts() {
    assert_eq!(tau_tilting_finite(&load("a2"), 50).unwrap(), TauFiniteness::Finite(5));
    assert_eq!(tau_tilting_finite(&load("dual_numbers"), 50).unwrap(), TauFiniteness::Finite(2));
    assert_eq!(tau_tilting_finite(&load("kronecker"), 20).unwrap(), TauFiniteness::Inconclusive(20));
    let r = verify_two_silt_bijection(&load("kronecker"), 20, 12).unwrap();
    assert!(matches!(r.status, Verification::Inconclusive(ref why) if why.contains("cap 20") && why.contains("dimension cap")));
}

#[test]
fn interval_contains_exactly_the_two_term_objects() {
    let alg = load("a3");
    let lam = initial_silting(&alg);
    let iv = two_silt_interval(&alg, &lam, 100).unwrap();
    for n in &iv.objects {
        assert!(interval_membership(&alg, n, &lam, 0, 1).unwrap());
        assert!(n.complex().lo() >= -1 && n.complex().hi() <= 0);
    }
    assert_eq!(iv.objects.first().map(|o| o.k0_key(3)), iv.objects.iter().map(|o| o.k0_key(3)).min());
}
