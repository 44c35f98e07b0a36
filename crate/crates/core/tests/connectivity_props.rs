//! Connectivity and tangle properties beyond the acceptance criteria:
//! separation identities on random instances, the nested-target drop-set
//! identity, induced-tangle rank bounds, and derived small-case values.

use matroid_forge_core::budget::Budget;
use matroid_forge_core::connectivity::{
    induced_tangle, is_round, is_vertically_k_connected, kappa, lambda, local_conn,
    standard_tangle, tangle_rank, vertical_connectivity, TangleOutcome,
};
use matroid_forge_core::geometries::{complete_graph_matroid, dowling};
use matroid_forge_core::groups::cyclic_group;
use matroid_forge_core::gf::SmallField;
use matroid_forge_core::matroid::Matroid;
use matroid_forge_core::set::ElemSet;
use matroid_forge_core::verify::gen;
use rand::Rng;

fn b() -> Budget {
    Budget::default()
}

#[test]
fn lambda_is_symmetric_and_submodular_on_random_matroids() {
    let mut rng = gen::rng(0x1a3bda);
    for _ in 0..10 {
        let m = gen::random_gf_matroid(&mut rng).unwrap();
        let m = m.restrict(ElemSet::full(m.size().min(9)));
        let subsets: Vec<ElemSet> = m.ground().subsets().collect();
        for &x in &subsets {
            assert_eq!(lambda(&m, x), lambda(&m, m.ground().difference(x)));
        }
        for &x in subsets.iter().step_by(7) {
            for &y in subsets.iter().step_by(11) {
                assert!(
                    lambda(&m, x) + lambda(&m, y)
                        >= lambda(&m, x.union(y)) + lambda(&m, x.intersection(y))
                );
            }
        }
    }
}

#[test]
fn kappa_never_exceeds_any_separating_lambda() {
    let mut rng = gen::rng(0xc0de_ca11);
    for _ in 0..20 {
        let m = gen::random_gf_matroid(&mut rng).unwrap();
        let elems: Vec<usize> = m.ground().iter().collect();
        let a = ElemSet::from_iter(elems[..2].iter().copied());
        let y = ElemSet::from_iter(elems[2..4].iter().copied());
        let k = kappa(&m, a, y, &b()).unwrap();
        assert_eq!(k, kappa(&m, y, a, &b()).unwrap());
        // every admissible Z bounds it from above
        for z in m.ground().difference(y).subsets() {
            if a.is_subset(z) {
                assert!(k <= lambda(&m, z));
            }
        }
        assert!(k <= m.rank(a).min(m.rank(y)));
        assert!(k <= local_conn(&m, a, y).max(k));
    }
}

#[test]
fn drop_set_identity_for_nested_targets() {
    // D collects the elements whose contraction lowers some separation to
    // the target; attaching D to the source side never changes the value
    let mut rng = gen::rng(0xd40b);
    for _ in 0..12 {
        let m = gen::random_gf_matroid(&mut rng).unwrap();
        let m = m.restrict(ElemSet::full(m.size().min(8)));
        let elems: Vec<usize> = m.ground().iter().collect();
        if elems.len() < 6 {
            continue;
        }
        let y = ElemSet::from_iter(elems[..2].iter().copied());
        let j = ElemSet::from_iter(elems[2..4].iter().copied());
        let mut d = ElemSet::EMPTY;
        for e in m.ground().difference(y).difference(j).iter() {
            let contracted = m.contract(ElemSet::singleton(e));
            let mut drops = false;
            for a in y.subsets() {
                if kappa(&contracted, a, j, &b()).unwrap() < kappa(&m, a, j, &b()).unwrap() {
                    drops = true;
                    break;
                }
            }
            if drops {
                d.insert(e);
            }
        }
        assert_eq!(
            kappa(&m, y.union(d), j, &b()).unwrap(),
            kappa(&m, y, j, &b()).unwrap(),
            "drop-set identity fails with D = {d}"
        );
    }
}

#[test]
fn complete_graph_vertical_connectivity() {
    // derived value, frozen: M(K_5) is vertically 4-connected and no better
    let (k5, _) = complete_graph_matroid(5, &b()).unwrap();
    assert!(is_vertically_k_connected(&k5, 4, &b()).unwrap());
    assert_eq!(vertical_connectivity(&k5, &b()).unwrap(), 4);
}

#[test]
fn uniform_vertical_connectivity_exhaustive() {
    let u = Matroid::uniform(2, 4);
    assert!(is_vertically_k_connected(&u, 2, &b()).unwrap());
    assert_eq!(vertical_connectivity(&u, &b()).unwrap(), 2);
}

#[test]
fn roundness_spanning_restriction_instance() {
    // a matroid with a spanning round restriction is round: U_{2,4} on
    // columns 0..4 plus two parallel copies stays round
    let f5 = SmallField::new(5).unwrap();
    let entries = vec![
        1, 1, 1, 1, 2, 3, //
        0, 1, 2, 3, 0, 3,
    ];
    let m = Matroid::from_gf_matrix(f5, 2, 6, entries).unwrap();
    assert_eq!(m.epsilon(), 4);
    assert!(is_round(&m.restrict(ElemSet::full(4)), &b()).unwrap());
    assert!(is_round(&m, &b()).unwrap());
}

#[test]
fn tangle_rank_is_a_matroid_rank_function() {
    // exhaustively on a host with at most 10 elements
    let (dg, _) = dowling(3, &cyclic_group(2), &b()).unwrap();
    let m = dg.matroid;
    let TangleOutcome::Tangle(t) = standard_tangle(&m, 3, &b()).unwrap() else {
        panic!("tangle exists")
    };
    let subsets: Vec<ElemSet> = m.ground().subsets().collect();
    let rt: Vec<usize> =
        subsets.iter().map(|&x| tangle_rank(&t, x, &b()).unwrap()).collect();
    let index = |x: ElemSet| subsets.iter().position(|&s| s == x).unwrap();
    for (i, &x) in subsets.iter().enumerate() {
        assert!(rt[i] <= x.len());
        assert!(rt[i] <= m.rank(x), "tangle rank exceeds host rank on {x}");
        for &y in &subsets {
            if x.is_subset(y) {
                assert!(rt[i] <= rt[index(y)]);
            }
            assert!(
                rt[i] + rt[index(y)] >= rt[index(x.union(y))] + rt[index(x.intersection(y))],
                "tangle rank submodularity fails on {x}, {y}"
            );
        }
    }
    // the tangle matroid has rank order - 1
    assert_eq!(rt[index(m.ground())], t.order() - 1);
}

#[test]
fn induced_tangle_rank_lower_bound() {
    // r_T(X) >= min(r_G(X on the minor), k-1) for the induced tangle
    let (k4, _) = complete_graph_matroid(4, &b()).unwrap();
    let TangleOutcome::Tangle(t) = standard_tangle(&k4, 3, &b()).unwrap() else {
        panic!("tangle exists")
    };
    let mut circuits = k4.circuits(None, &b()).unwrap();
    circuits.push(ElemSet::from_iter([0, 6]));
    for c in k4.circuits(None, &b()).unwrap() {
        if c.contains(0) {
            circuits.push(c.without(0).with(6));
        }
    }
    let ext = Matroid::from_circuits(7, circuits).unwrap();
    let induced = induced_tangle(&ext, &t, &b()).unwrap();
    for x in ext.ground().subsets() {
        let lhs = tangle_rank(&induced, x, &b()).unwrap();
        let rhs = k4.rank(x.intersection(k4.ground())).min(induced.order() - 1);
        assert!(lhs >= rhs, "induced tangle rank too small on {x}: {lhs} < {rhs}");
    }
}

#[test]
fn nested_chain_of_length_one_matches_single_linking() {
    let mut rng = gen::rng(0x111d_0007);
    for _ in 0..10 {
        let m = gen::random_gf_matroid(&mut rng).unwrap();
        let elems: Vec<usize> = m.ground().iter().collect();
        let x = ElemSet::from_iter(elems[..2].iter().copied());
        let y = ElemSet::from_iter(elems[2..5].iter().copied());
        let single = matroid_forge_core::connectivity::linking_minor(&m, x, y, &b()).unwrap();
        let chain = matroid_forge_core::connectivity::nested_linking_minor(&m, x, &[y], &b()).unwrap();
        assert_eq!(single.ground(), chain.ground());
        for s in single.ground().subsets() {
            assert_eq!(single.rank(s), chain.rank(s));
        }
    }
}

#[test]
fn random_chain_preservation_on_nine_elements() {
    let mut rng = gen::rng(0xc4a1_0002);
    for _ in 0..25 {
        let m = gen::random_gf_matroid(&mut rng).unwrap();
        let elems: Vec<usize> = m.ground().iter().collect();
        let x = ElemSet::from_iter(elems[..2].iter().copied());
        let y1 = ElemSet::singleton(elems[2]);
        let extra = rng.gen_range(3..5);
        let y2 = ElemSet::from_iter(elems[2..2 + extra].iter().copied());
        let t1 = kappa(&m, x, y1, &b()).unwrap();
        let t2 = kappa(&m, x, y2, &b()).unwrap();
        let n =
            matroid_forge_core::connectivity::nested_linking_minor(&m, x, &[y1, y2], &b()).unwrap();
        assert_eq!(kappa(&n, x, y1, &b()).unwrap(), t1);
        assert_eq!(kappa(&n, x, y2, &b()).unwrap(), t2);
    }
}
