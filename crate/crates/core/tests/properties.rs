use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;

use triple_arrays::affine::{
    build_partiteness_instance, derangements_from_partition, derangements_to_ta, solve_derangements, solve_partiteness,
    ta_to_derangements, AffinePlaneContext,
};
use triple_arrays::arrays::admissible_up_to_rows;
use triple_arrays::canon::{canonical_design, canonical_resolution, canonical_ta, canonical_uta};
use triple_arrays::catalog::{load_fixture, parades, symmetric_designs};
use triple_arrays::constructions::{agrawal, agrawal_reverse, paley, paley_parameters, ruta};
use triple_arrays::enumeration::enumerate_extremal;
use triple_arrays::exact_cover::ExactCover;
use triple_arrays::ordering::{order_uta, OrderResult};
use triple_arrays::{params_for, BlockDesign, Resolution, TripleArray, Uta};

fn ta(id: &str) -> TripleArray {
    load_fixture(id).unwrap().into_ta().unwrap()
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn relabel_ta(t: &TripleArray, rows: &[usize], cols: &[usize], syms: &[usize]) -> TripleArray {
    let mut grid = vec![0; t.r() * t.c()];
    for i in 0..t.r() {
        for j in 0..t.c() {
            grid[rows[i] * t.c() + cols[j]] = syms[t.get(i, j)];
        }
    }
    TripleArray::new(t.r(), t.c(), t.v(), grid).unwrap()
}

fn relabel_uta(u: &Uta, rows: &[usize], cols: &[usize], syms: &[usize]) -> Uta {
    let map = |sets: &[Vec<usize>], order: &[usize]| {
        let mut out = vec![Vec::new(); sets.len()];
        for (i, s) in sets.iter().enumerate() {
            out[order[i]] = s.iter().map(|&x| syms[x]).collect();
        }
        out
    };
    Uta::new(u.v(), map(u.row_sets(), rows), map(u.col_sets(), cols)).unwrap()
}

fn relabel_resolution(r: &Resolution, points: &[usize], blocks: &[usize]) -> Resolution {
    let d = r.design().relabel_points(points).unwrap();
    let mut new_blocks = vec![Vec::new(); d.b()];
    for (i, b) in d.blocks().iter().enumerate() {
        new_blocks[blocks[i]] = b.clone();
    }
    let classes = r
        .classes()
        .iter()
        .map(|c| c.iter().map(|&b| blocks[b]).collect())
        .collect();
    Resolution::new(BlockDesign::new(d.v(), new_blocks).unwrap(), classes).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ta_key_survives_isotopy(
        rows in perm_strategy(5),
        cols in perm_strategy(6),
        syms in perm_strategy(10),
    ) {
        let t = ta("fig8-left-ta-5x6");
        let moved = relabel_ta(&t, &rows, &cols, &syms);
        prop_assert!(moved.is_valid());
        let a = canonical_ta(&t);
        let b = canonical_ta(&moved);
        prop_assert_eq!(a.key, b.key);
        prop_assert_eq!(a.aut_order, b.aut_order);
    }

    #[test]
    fn uta_key_survives_isomorphism(
        rows in perm_strategy(7),
        cols in perm_strategy(8),
        syms in perm_strategy(14),
    ) {
        let u = ta("fig6-bottom-ta-7x8").uta().unwrap();
        let moved = relabel_uta(&u, &rows, &cols, &syms);
        prop_assert_eq!(canonical_uta(&u).key, canonical_uta(&moved).key);
        prop_assert_eq!(moved.is_quad(), u.is_quad());
    }

    #[test]
    fn resolution_key_survives_relabelling(
        pick in 0usize..7,
        points in perm_strategy(15),
        blocks in perm_strategy(35),
    ) {
        let (_, r) = parades().swap_remove(pick);
        let moved = relabel_resolution(&r, &points, &blocks);
        prop_assert_eq!(canonical_resolution(&r).key, canonical_resolution(&moved).key);
    }

    #[test]
    fn agrawal_reverse_recovers_the_design(pick in 0usize..5, sigma in 0usize..15) {
        let d = symmetric_designs(15, 7, 3).unwrap().swap_remove(pick);
        let u = agrawal(&d, sigma).unwrap();
        let p = u.verify().unwrap();
        prop_assert_eq!(p.lambda_cc.unwrap().to_integer(), p.r as i64 - p.e.to_integer());
        prop_assert_eq!(p.lambda_rr.unwrap().to_integer(), p.c as i64 - p.e.to_integer());
        let back = agrawal_reverse(&u).unwrap();
        prop_assert_eq!(canonical_design(&back).key, canonical_design(&d).key);
        let again = agrawal(&back, 0).unwrap();
        prop_assert!(again.verify().is_ok());
    }

    #[test]
    fn ruta_intersections(order in perm_strategy(7), pick in 0usize..7) {
        let fano = symmetric_designs(7, 3, 1).unwrap().remove(0);
        let (_, res) = parades().swap_remove(pick);
        let u = ruta(&fano, &res, &order).unwrap();
        let p = u.verify().unwrap();
        let lrr = p.lambda_rr.unwrap().to_integer() as usize;
        let e = p.e.to_integer() as usize;
        for i in 0..u.r() {
            for s in 0..u.r() {
                if i != s {
                    let common = u.row_sets()[i].iter().filter(|x| u.row_sets()[s].contains(x)).count();
                    prop_assert_eq!(common, lrr);
                }
            }
            for j in 0..u.c() {
                let common = u.row_sets()[i].iter().filter(|x| u.col_sets()[j].contains(x)).count();
                prop_assert_eq!(common, e);
            }
        }
        prop_assert!(u.is_resolvable());
    }

    #[test]
    fn exact_cover_count_matches_brute_force(
        items in 1usize..7,
        raw in prop::collection::vec(prop::collection::btree_set(0usize..7, 1..4), 1..14),
    ) {
        let options: Vec<Vec<usize>> = raw
            .into_iter()
            .map(|s| s.into_iter().filter(|&x| x < items).collect::<Vec<_>>())
            .filter(|o| !o.is_empty())
            .collect();
        prop_assume!(!options.is_empty());
        let mut brute = 0u64;
        for mask in 0u32..(1 << options.len()) {
            let mut seen = vec![0; items];
            for (i, o) in options.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for &x in o {
                        seen[x] += 1;
                    }
                }
            }
            if seen.iter().all(|&n| n == 1) {
                brute += 1;
            }
        }
        let ec = ExactCover::new(items, options).unwrap();
        let stats = ec.count(None);
        prop_assert!(stats.complete);
        prop_assert_eq!(stats.solutions, brute);
    }
}

#[test]
fn autotopisms_divide_uta_automorphisms() {
    for id in [
        "fig1-ta-4x9",
        "fig3-ta-7x15",
        "fig6-top-ta-7x8",
        "fig8-left-ta-5x6",
        "figC1-ta-21x15",
    ] {
        let t = ta(id);
        let at = canonical_ta(&t).aut_order;
        let au = canonical_uta(&t.uta().unwrap()).aut_order;
        assert!((&au % &at).is_zero(), "{id}: {at} does not divide {au}");
    }
}

#[test]
fn resolvable_in_at_most_one_orientation() {
    for id in ["fig1-ta-4x9", "fig3-ta-7x15", "fig6-top-ta-7x8", "figC1-ta-21x15"] {
        let t = ta(id);
        let u = t.uta().unwrap();
        assert!(u.is_resolvable(), "{id}");
        assert!(u.is_quad(), "{id}");
        assert!(t.transpose().is_valid(), "{id}");
        assert!(!t.transpose().uta().unwrap().is_resolvable(), "{id} transposed");
    }
}

#[test]
fn extremal_identities_on_admissible_sets() {
    for p in admissible_up_to_rows(40)
        .into_iter()
        .filter(|p| p.extremal && p.ta_admissible)
    {
        let e = p.e.to_integer();
        assert_eq!(p.lambda_cc.unwrap().to_integer(), p.r as i64 - e, "{p:?}");
        assert_eq!(p.lambda_rr.unwrap().to_integer(), p.c as i64 - e, "{p:?}");
    }
}

#[test]
fn nonexistent_sets_are_still_admissible() {
    for (r, c, v) in [(3, 4, 6), (7, 15, 21), (15, 28, 42)] {
        assert!(params_for(r, c, v).unwrap().ta_admissible, "({r}x{c},{v})");
    }
}

#[test]
fn square_family_never_resolvable_admissible() {
    for u in 2..=10usize {
        let p = params_for(2 * u * u - u, 2 * u * u + u, 4 * u * u - 1).unwrap();
        assert!(p.ta_admissible, "u={u}");
        assert!(!p.k.is_integer(), "u={u}");
        let t = p.transpose();
        assert!(!t.k.is_integer(), "u={u} transposed");
    }
}

#[test]
fn paley_q23_resolvable() {
    let params = paley_parameters(23).unwrap();
    assert!(!params.is_empty());
    for (a, b) in params {
        let t = paley(23, a, b).unwrap();
        t.verify().unwrap();
        assert!(t.uta().unwrap().is_resolvable(), "a={a} b={b}");
    }
}

#[test]
fn affine_equivalence_triangle() {
    for q in [2, 3, 4] {
        let ctx = AffinePlaneContext::galois(q).unwrap();
        let by_order = !matches!(order_uta(&ctx.uta(), None).unwrap(), OrderResult::Absent);
        let (d, _) = solve_derangements(&ctx, None);
        let inst = build_partiteness_instance(&ctx);
        let (part, _) = solve_partiteness(&ctx, &inst, None).unwrap();
        assert_eq!(by_order, d.is_some(), "q={q}");
        assert_eq!(d.is_some(), part.is_some(), "q={q}");
        if let (Some(d), Some(part)) = (d, part) {
            assert!(inst.check_partition(&part));
            let t = derangements_to_ta(&ctx, &d).unwrap();
            t.verify().unwrap();
            assert_eq!(ta_to_derangements(&ctx, &t).unwrap(), d);
            let from_part = derangements_from_partition(&inst, &part).unwrap();
            derangements_to_ta(&ctx, &from_part).unwrap().verify().unwrap();
        }
    }
}

#[test]
fn affine_utas_from_orderings_are_resolvable() {
    let u = AffinePlaneContext::galois(3).unwrap().uta();
    assert!(u.detect_resolution().is_some());
    let fig1 = ta("fig1-ta-4x9").uta().unwrap();
    assert!(fig1.detect_resolution().is_some());
}

#[test]
fn designs_satisfy_fisher_and_constant_intersections() {
    for (v, k, l) in [(7, 3, 1), (11, 5, 2), (13, 4, 1), (15, 7, 3), (16, 6, 2), (21, 5, 1)] {
        for d in symmetric_designs(v, k, l).unwrap() {
            let p = d.verify_2design().unwrap();
            assert!(p.b >= p.v);
            assert!(p.is_symmetric());
            for a in 0..d.b() {
                for b in a + 1..d.b() {
                    let common = d.block(a).iter().filter(|x| d.block(b).contains(x)).count();
                    assert_eq!(common, l, "2-({v},{k},{l})");
                }
            }
            let dual = d.dual().verify_2design().unwrap();
            assert_eq!((dual.v, dual.k, dual.lambda), (v, k, l));
        }
    }
}

#[test]
fn parades_are_seven_resolutions_of_four_designs() {
    let ps = parades();
    assert_eq!(ps.len(), 7);
    let mut rkeys: Vec<_> = ps.iter().map(|(_, r)| canonical_resolution(r).key).collect();
    rkeys.sort();
    rkeys.dedup();
    assert_eq!(rkeys.len(), 7);
    let mut dkeys: Vec<_> = ps.iter().map(|(_, r)| canonical_design(r.design()).key).collect();
    dkeys.sort();
    dkeys.dedup();
    assert_eq!(dkeys.len(), 4);
    for (label, r) in &ps {
        let p = r.design().verify_2design().unwrap();
        assert_eq!((p.v, p.k, p.lambda), (15, 3, 1), "{label}");
        assert_eq!(r.num_classes(), p.r, "{label}");
        assert!(r.classes().iter().all(|c| c.len() == 5), "{label}");
    }
}

#[test]
fn enumeration_is_deterministic() {
    let designs = symmetric_designs(15, 7, 3).unwrap();
    let a = enumerate_extremal(&designs, 1).unwrap();
    let b = enumerate_extremal(&designs, 2).unwrap();
    let keys = |e: &triple_arrays::enumeration::UtaEnumeration| {
        e.classes
            .iter()
            .map(|c| (c.key.clone(), c.aut_order.clone(), c.hits, c.witness.clone()))
            .collect::<Vec<(_, BigUint, u64, Uta)>>()
    };
    assert_eq!(keys(&a), keys(&b));
}
