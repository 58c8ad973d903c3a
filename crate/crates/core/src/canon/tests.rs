use super::*;
use crate::geometry::{ag_design, pg_design};
use proptest::prelude::*;

fn plain(n: usize, edges: &[(usize, usize)]) -> ColoredGraph {
    let mut g = ColoredGraph::new(vec![0; n]);
    for &(a, b) in edges {
        g.add_edge(a, b);
    }
    g.finish()
}

fn order_of(g: &ColoredGraph) -> BigUint {
    canonical_graph(g).2.order()
}

fn key_of(g: &ColoredGraph) -> Vec<u8> {
    canonical_graph(g).0
}

fn cycle_graph(n: usize) -> ColoredGraph {
    plain(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
}

fn petersen() -> ColoredGraph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    plain(10, &e)
}

fn rook4() -> ColoredGraph {
    let mut e = Vec::new();
    for a in 0..16 {
        for b in a + 1..16 {
            if a / 4 == b / 4 || a % 4 == b % 4 {
                e.push((a, b));
            }
        }
    }
    plain(16, &e)
}

fn shrikhande() -> ColoredGraph {
    let mut e = Vec::new();
    let id = |x: i32, y: i32| (x.rem_euclid(4) * 4 + y.rem_euclid(4)) as usize;
    for x in 0..4 {
        for y in 0..4 {
            for (dx, dy) in [(0, 1), (1, 0), (1, 1)] {
                e.push((id(x, y), id(x + dx, y + dy)));
            }
        }
    }
    plain(16, &e)
}

#[test]
fn classic_group_orders() {
    assert_eq!(order_of(&petersen()), BigUint::from(120u32));
    assert_eq!(order_of(&cycle_graph(7)), BigUint::from(14u32));
    let k6: Vec<_> = (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).collect();
    assert_eq!(order_of(&plain(6, &k6)), BigUint::from(720u32));
    assert_eq!(order_of(&plain(5, &[])), BigUint::from(120u32));
    assert_eq!(order_of(&rook4()), BigUint::from(1152u32));
    assert_eq!(order_of(&shrikhande()), BigUint::from(192u32));
}

#[test]
fn shrikhande_is_not_the_rook_graph() {
    assert_ne!(key_of(&rook4()), key_of(&shrikhande()));
}

#[test]
fn geometry_groups() {
    let cases = [
        (pg_design(2, 1, 2).unwrap().design, 168u64),
        (pg_design(2, 1, 3).unwrap().design, 5616),
        (pg_design(3, 1, 2).unwrap().design, 20160),
        (pg_design(2, 1, 4).unwrap().design, 120960),
        (ag_design(2, 1, 3).unwrap().design, 432),
        (ag_design(3, 2, 2).unwrap().design, 1344),
    ];
    for (d, order) in cases {
        assert_eq!(canonical_design(&d).aut_order, BigUint::from(order));
    }
}

#[test]
fn repeated_blocks_count_as_distinct() {
    let fano = pg_design(2, 1, 2).unwrap().design;
    assert_eq!(
        canonical_design(&fano.multiple(2)).aut_order,
        BigUint::from(168u64 * 128)
    );
}

#[test]
fn first_path_orbits_match_sims_order() {
    for g in [
        petersen(),
        rook4(),
        shrikhande(),
        design_graph(&pg_design(3, 1, 2).unwrap().design),
    ] {
        let res = canonical_search(&g);
        let mut product = BigUint::from(1u32);
        for (lvl, &x) in res.first_path.iter().enumerate() {
            let fixing: Vec<Perm> = res
                .generators
                .iter()
                .filter(|p| res.first_path[..lvl].iter().all(|&y| p[y as usize] == y))
                .cloned()
                .collect();
            product *= BigUint::from(group::orbit_of(x, &fixing).len());
        }
        assert_eq!(product, order_of(&g));
        assert!(res.generators.iter().all(|p| g.is_automorphism(p)));
    }
}

#[test]
fn hex_round_trip() {
    let c = canonical_design(&pg_design(2, 1, 2).unwrap().design);
    assert_eq!(CanonKey::from_hex(&c.key.to_hex()).unwrap(), c.key);
    assert!(c
        .key
        .to_hex()
        .chars()
        .all(|ch| ch.is_ascii_digit() || ('a'..='f').contains(&ch)));
    assert!(CanonKey::from_hex("abc").is_err());
}

fn brute_aut_count(n: usize, adj: &[Vec<bool>], colors: &[u32]) -> (usize, Vec<Vec<bool>>) {
    // returns automorphism count and the lexicographically largest relabelled adjacency
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0;
    let mut best: Option<Vec<bool>> = None;
    let mut best_mat = Vec::new();
    loop {
        if (0..n).all(|i| colors[i] == colors[perm[i]]) {
            if (0..n).all(|i| (0..n).all(|j| adj[i][j] == adj[perm[i]][perm[j]])) {
                count += 1;
            }
        }
        // relabelled matrix under inverse of perm, restricted to colour-sorted orders
        let mut sorted = true;
        for w in perm.windows(2) {
            if colors[w[0]] > colors[w[1]] {
                sorted = false;
            }
        }
        if sorted {
            let flat: Vec<bool> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| adj[perm[i]][perm[j]])
                .collect();
            if best.as_ref().map_or(true, |b| &flat > b) {
                best = Some(flat);
                best_mat = (0..n)
                    .map(|i| (0..n).map(|j| adj[perm[i]][perm[j]]).collect())
                    .collect();
            }
        }
        // next permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    (count, best_mat)
}

fn graph_strategy() -> impl Strategy<Value = (usize, Vec<(usize, usize)>, Vec<u32>)> {
    (1usize..=7).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let m = pairs.len();
        (
            Just(n),
            proptest::collection::vec(any::<bool>(), m)
                .prop_map(move |mask| pairs.iter().zip(mask).filter(|(_, k)| *k).map(|(p, _)| *p).collect()),
            proptest::collection::vec(0u32..2, n),
        )
    })
}

fn build(edges: &[(usize, usize)], colors: &[u32]) -> ColoredGraph {
    let mut g = ColoredGraph::new(colors.to_vec());
    for &(a, b) in edges {
        g.add_edge(a, b);
    }
    g.finish()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn key_is_invariant_under_relabelling((n, edges, colors) in graph_strategy(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let g = build(&edges, &colors);
        let mut perm: Vec<u32> = (0..n as u32).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = g.relabel(&perm);
        prop_assert_eq!(key_of(&g), key_of(&h));
    }

    #[test]
    fn order_and_key_match_brute_force(
        (n, edges, colors) in graph_strategy(),
        (n2, edges2, colors2) in graph_strategy(),
    ) {
        let g = build(&edges, &colors);
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in &edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        let (count, best) = brute_aut_count(n, &adj, &colors);
        prop_assert_eq!(order_of(&g), BigUint::from(count));

        let h = build(&edges2, &colors2);
        let mut adj2 = vec![vec![false; n2]; n2];
        for &(a, b) in &edges2 {
            adj2[a][b] = true;
            adj2[b][a] = true;
        }
        let (_, best2) = brute_aut_count(n2, &adj2, &colors2);
        let mut c1 = colors.clone();
        c1.sort();
        let mut c2 = colors2.clone();
        c2.sort();
        let iso = n == n2 && c1 == c2 && best == best2;
        prop_assert_eq!(key_of(&g) == key_of(&h), iso);
    }
}
