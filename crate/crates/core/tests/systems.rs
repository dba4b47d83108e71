mod common;

use std::collections::BTreeSet;

use common::{shuffle, system};
use steiner_veblen::automorphism::{automorphism_group, induced_triple_permutation};
use steiner_veblen::catalog::{self, ag, pg};
use steiner_veblen::extension::{extension_sts, kernel_first_labeling, ExtensionSpec};
use steiner_veblen::factor::FactorSystem;
use steiner_veblen::iso::{are_isomorphic, find_isomorphism};
use steiner_veblen::loops::{central_points, loop_from_sts};
use steiner_veblen::pasch::{find_pasch_configurations, pasch_switch, PaschConfiguration};
use steiner_veblen::sts::{max_veblen_count, SteinerTripleSystem};
use steiner_veblen::Error;

fn all_catalog() -> Vec<(String, SteinerTripleSystem)> {
    let mut out: Vec<(String, SteinerTripleSystem)> = catalog::names()
        .into_iter()
        .map(|n| (n.to_string(), system(n)))
        .collect();
    out.push(("ag(2)".into(), ag(2)));
    out
}

/// Brute force: four triples on six points, each point in exactly two.
fn pasch_count_brute(s: &SteinerTripleSystem) -> usize {
    let t = s.triples();
    let b = t.len();
    let mut count = 0;
    for i in 0..b {
        for j in i + 1..b {
            for k in j + 1..b {
                for l in k + 1..b {
                    let pts: BTreeSet<usize> =
                        [t[i], t[j], t[k], t[l]].iter().flatten().copied().collect();
                    if pts.len() == 6 {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

#[test]
fn table_systems_validate_with_expected_shapes() {
    for (name, v) in [
        ("sts9", 9),
        ("sts13-noncyclic", 13),
        ("sts13-cyclic", 13),
        ("sts15-2", 15),
        ("sts15-3", 15),
        ("sts15-7", 15),
        ("sts15-61", 15),
        ("sts15-80", 15),
        ("sts19-S0", 19),
        ("sts19-S1", 19),
        ("sts19-S2", 19),
    ] {
        let s = system(name);
        assert_eq!(s.v(), v, "{name}");
        assert_eq!(s.b(), v * (v - 1) / 6, "{name}");
    }
}

#[test]
fn third_point_examples() {
    // 1-based table pair (1,2) completes with 8
    assert_eq!(system("sts9").third_point(0, 1).unwrap(), 7);
    let fano = SteinerTripleSystem::new(
        7,
        [
            [1, 2, 3],
            [1, 4, 5],
            [1, 6, 7],
            [2, 4, 6],
            [2, 5, 7],
            [3, 4, 7],
            [3, 5, 6],
        ]
        .map(|t| t.map(|p: usize| p - 1)),
    )
    .unwrap();
    assert_eq!(fano.third_point(0, 1).unwrap(), 2);
    assert!(matches!(fano.third_point(3, 3), Err(Error::SamePoint(3))));
    for p in 0..7 {
        for q in 0..7 {
            if p != q {
                let z = fano.third(p, q);
                assert_eq!(fano.third(p, z), q);
            }
        }
    }
}

#[test]
fn deleting_a_triple_uncovers_pairs() {
    let s = system("sts9");
    let fewer: Vec<[usize; 3]> = s.source_triples()[1..].to_vec();
    assert!(matches!(
        SteinerTripleSystem::new(9, fewer),
        Err(Error::PairMissing(..))
    ));
}

#[test]
fn veblen_scan_agrees_with_loop_center() {
    for (name, s) in all_catalog() {
        let scan = s.veblen_points();
        let center = central_points(&loop_from_sts(&s));
        assert_eq!(scan, center, "{name}");
        // sizes are 2^c - 1 within the admissible bound
        let k = scan.len();
        assert!((k + 1).is_power_of_two(), "{name}");
        assert!(k <= max_veblen_count(s.v(), true).unwrap(), "{name}");
    }
}

#[test]
fn veblen_examples() {
    let s0 = system("sts19-S0");
    assert!(s0.is_veblen_point(0).unwrap());
    assert!(!s0.is_veblen_point(1).unwrap());
    assert_eq!(system("sts19-S1").veblen_points(), BTreeSet::from([0]));
    assert_eq!(system("sts19-S2").veblen_points(), BTreeSet::from([0]));
    assert_eq!(pg(3).veblen_points().len(), 15);
    assert_eq!(pg(2).veblen_points().len(), 7);
    assert!(system("sts9").veblen_points().is_empty());
    assert_eq!(system("sts15-2").veblen_points(), BTreeSet::from([0]));
    for name in ["sts15-3", "sts15-7", "sts15-61", "sts15-80"] {
        assert!(system(name).veblen_points().is_empty(), "{name}");
    }
    assert!(matches!(
        pg(2).is_veblen_point(7),
        Err(Error::PointOutOfRange { point: 7, v: 7 })
    ));
}

#[test]
fn max_veblen_count_examples() {
    assert_eq!(max_veblen_count(19, false).unwrap(), 1);
    assert_eq!(max_veblen_count(31, false).unwrap(), 3);
    assert_eq!(max_veblen_count(31, true).unwrap(), 31);
    assert_eq!(max_veblen_count(15, true).unwrap(), 15);
    assert!(matches!(
        max_veblen_count(11, true),
        Err(Error::NotAdmissible(11))
    ));
}

#[test]
fn pasch_counts_match_brute_force() {
    for (name, s) in [
        ("fano", pg(2)),
        ("sts9", system("sts9")),
        ("sts13-cyclic", system("sts13-cyclic")),
        ("sts15-80", system("sts15-80")),
        ("sts15-2", system("sts15-2")),
        ("pg32", pg(3)),
    ] {
        let found = find_pasch_configurations(&s);
        assert_eq!(found.len(), pasch_count_brute(&s), "{name}");
        let distinct: BTreeSet<[usize; 4]> = found.iter().map(|c| c.triple_indices(&s)).collect();
        assert_eq!(distinct.len(), found.len(), "{name}");
    }
    assert_eq!(find_pasch_configurations(&pg(2)).len(), 7);
    assert_eq!(find_pasch_configurations(&pg(3)).len(), 105);
    assert!(find_pasch_configurations(&system("sts9")).is_empty());
    assert!(find_pasch_configurations(&system("sts15-80")).is_empty());
}

#[test]
fn pasch_switch_chain() {
    let s0 = system("sts19-S0");
    let s1 = system("sts19-S1");
    let s2 = system("sts19-S2");
    let c0 = PaschConfiguration::new(&s0, [3, 6, 9, 18, 15, 12]).unwrap();
    assert_eq!(
        c0.switched_triples(),
        [[3, 6, 18], [3, 9, 15], [6, 9, 12], [12, 15, 18]]
    );
    assert_eq!(pasch_switch(&s0, &c0).unwrap(), s1);
    let c1 = PaschConfiguration::new(&s1, [7, 8, 9, 18, 17, 16]).unwrap();
    assert_eq!(pasch_switch(&s1, &c1).unwrap(), s2);
    // involution
    assert_eq!(pasch_switch(&s1, &c0.switched()).unwrap(), s0);
    // a configuration that is not present is rejected
    assert!(matches!(
        PaschConfiguration::new(&s0, [3, 6, 9, 15, 18, 12]),
        Err(Error::NotAPasch(_))
    ));
}

#[test]
fn sts19_tables_are_pairwise_non_isomorphic() {
    let s = [system("sts19-S0"), system("sts19-S1"), system("sts19-S2")];
    for i in 0..3 {
        for j in 0..3 {
            let a = are_isomorphic(&s[i], &s[j]).unwrap();
            let b = find_isomorphism(&s[i], &s[j]).unwrap();
            assert_eq!(a.is_some(), i == j);
            assert_eq!(b.is_some(), i == j);
        }
    }
}

#[test]
fn isomorphism_is_invariant_under_relabeling() {
    for (name, s) in all_catalog() {
        let a = s.relabel(&shuffle(s.v(), 11)).unwrap();
        let b = s.relabel(&shuffle(s.v(), 12)).unwrap();
        let iso = are_isomorphic(&a, &b).unwrap().expect(&name);
        assert_eq!(a.relabel(&iso).unwrap(), b, "{name}");
        let back = are_isomorphic(&b, &a).unwrap().expect(&name);
        assert_eq!(b.relabel(&back).unwrap(), a, "{name}");
    }
    assert!(matches!(
        are_isomorphic(&pg(2), &pg(3)),
        Err(Error::SizeMismatch(7, 15))
    ));
}

#[test]
fn affine_plane_matches_both_sts9_tables() {
    let a = ag(2);
    assert_eq!(a.b(), 12);
    assert!(are_isomorphic(&a, &system("sts9")).unwrap().is_some());
    assert_eq!(system("sts9-ag"), system("sts9-example"));
    assert!(are_isomorphic(&a, &system("sts9-ag")).unwrap().is_some());
    assert_eq!(ag(3).b(), 117);
}

/// Row-major grid: `P_i` at `((i-1)/3, (i-1)%3)`; three points are a line
/// iff both coordinate sums vanish mod 3.
#[test]
fn grid_labelled_sts9_is_the_coordinate_plane() {
    let s = system("sts9-ag");
    for t in s.triples() {
        let rows: usize = t.iter().map(|p| p / 3).sum();
        let cols: usize = t.iter().map(|p| p % 3).sum();
        assert_eq!((rows % 3, cols % 3), (0, 0), "{t:?}");
    }
}

#[test]
fn projective_groups() {
    assert_eq!(automorphism_group(&pg(3)).unwrap().order, 20160);
    assert_eq!(automorphism_group(&pg(2)).unwrap().order, 168);
}

#[test]
fn translation_cycles_the_parallel_rows() {
    let s = system("sts9-ag");
    // (r, c) -> (r + 1, c)
    let beta: Vec<usize> = (0..9).map(|p| (p + 3) % 9).collect();
    let sigma = induced_triple_permutation(&beta, &s).unwrap().sigma;
    // canonical order: 012 036 048 057 138 147 156 237 246 258 345 678
    assert_eq!((sigma[0], sigma[10], sigma[11]), (10, 11, 0));
    assert_eq!((sigma[1], sigma[5], sigma[9]), (1, 5, 9));
    let id: Vec<usize> = (0..9).collect();
    assert_eq!(
        induced_triple_permutation(&id, &s).unwrap().sigma,
        (0..12).collect::<Vec<_>>()
    );
    let swap01: Vec<usize> = [1, 0, 2, 3, 4, 5, 6, 7, 8].to_vec();
    assert!(matches!(
        induced_triple_permutation(&swap01, &s),
        Err(Error::NotAnAutomorphism(_))
    ));
}

/// Kernel-first labels turn the three built extensions of the grid plane
/// into the published STS(19)s exactly.
#[test]
fn built_extensions_reproduce_the_sts19_tables() {
    let q = system("sts9-ag");
    // triple {P3,P6,P9} is index 9 and {P7,P8,P9} index 11
    let f0 = FactorSystem::encode(1, &[0; 12]).unwrap();
    let mut v1 = [0u32; 12];
    v1[9] = 1;
    let f1 = FactorSystem::encode(1, &v1).unwrap();
    let mut v2 = v1;
    v2[11] = 1;
    let f2 = FactorSystem::encode(1, &v2).unwrap();
    let lab = kernel_first_labeling(9, 1);
    for (fs, name) in [(f0, "sts19-S0"), (f1, "sts19-S1"), (f2, "sts19-S2")] {
        let spec = ExtensionSpec::new(q.clone(), 1, fs).unwrap();
        let built = extension_sts(&spec).unwrap().relabel(&lab).unwrap();
        assert_eq!(built, system(name), "{name}");
        assert_eq!(built.veblen_points(), BTreeSet::from([0]), "{name}");
    }
}
