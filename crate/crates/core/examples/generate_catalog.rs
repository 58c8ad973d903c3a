//! Regenerates the bundled design and resolution catalogs under `data/`.
//!
//! Usage: `cargo run --release --example generate_catalog -- [designs|parades|packing|res1556|all]`

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use triple_arrays::canon::{canonical_design, canonical_resolution, canonical_uta, CanonKey};
use triple_arrays::enumeration::enumerate_resolvable;
use triple_arrays::exact_cover::ExactCover;
use triple_arrays::geometry::pg_design;
use triple_arrays::{BlockDesign, Resolution, TripleArray};

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

fn subsets(v: usize, k: usize) -> Vec<u32> {
    (0u32..1 << v).filter(|m| m.count_ones() as usize == k).collect()
}

fn mask_to_block(m: u32) -> Vec<usize> {
    (0..32).filter(|i| m >> i & 1 == 1).collect()
}

/// Depth-first search for `v` blocks of size `k` meeting pairwise in `lambda` points.
fn symmetric_search(v: usize, k: usize, lambda: u32, rng: &mut ChaCha8Rng, node_limit: u64) -> Option<BlockDesign> {
    let mut all = subsets(v, k);
    all.shuffle(rng);
    let first = all[0];
    let cands: Vec<u32> = all[1..]
        .iter()
        .copied()
        .filter(|&b| (b & first).count_ones() == lambda)
        .collect();
    let mut chosen = vec![first];
    let mut nodes = 0u64;
    fn go(v: usize, lambda: u32, cands: &[u32], chosen: &mut Vec<u32>, nodes: &mut u64, limit: u64) -> bool {
        if chosen.len() == v {
            return true;
        }
        if cands.len() < v - chosen.len() || *nodes > limit {
            return false;
        }
        for (i, &b) in cands.iter().enumerate() {
            if cands.len() - i < v - chosen.len() {
                break;
            }
            *nodes += 1;
            let rest: Vec<u32> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&c| (c & b).count_ones() == lambda)
                .collect();
            chosen.push(b);
            if go(v, lambda, &rest, chosen, nodes, limit) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if !go(v, lambda, &cands, &mut chosen, &mut nodes, node_limit) {
        return None;
    }
    let d = BlockDesign::new(v, chosen.into_iter().map(mask_to_block).collect()).ok()?;
    d.is_2design().then_some(d)
}

fn collect_symmetric(
    v: usize,
    k: usize,
    lambda: u32,
    want: usize,
    seed: u64,
    seeds: Vec<BlockDesign>,
) -> Vec<BlockDesign> {
    let mut found: BTreeMap<CanonKey, (BigUint, BlockDesign)> = BTreeMap::new();
    for d in seeds {
        let c = canonical_design(&d);
        found.entry(c.key).or_insert((c.aut_order, d));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    while found.len() < want && attempts < 20000 {
        attempts += 1;
        if let Some(d) = symmetric_search(v, k, lambda, &mut rng, 200_000) {
            let c = canonical_design(&d);
            if !found.contains_key(&c.key) {
                eprintln!(
                    "2-({v},{k},{lambda}): class with |Aut| = {} after {attempts} attempts",
                    c.aut_order
                );
                found.insert(c.key, (c.aut_order, d));
            }
        }
    }
    let mut out: Vec<(BigUint, BlockDesign)> = found.into_values().collect();
    out.sort_by(|a, b| b.0.cmp(&a.0));
    out.into_iter().map(|(_, d)| d).collect()
}

fn write_designs(name: &str, title: &str, designs: &[BlockDesign]) {
    let mut s = format!("# {title}\n# {} designs, points and blocks 0-based\n", designs.len());
    for d in designs {
        s.push('\n');
        s.push_str(&d.to_text());
    }
    let path = data_dir().join("designs").join(name);
    fs::write(&path, s).unwrap();
    eprintln!("wrote {}", path.display());
}

fn designs() {
    let pg = pg_design(3, 2, 2).unwrap().design;
    let d15 = collect_symmetric(15, 7, 3, 5, 15, vec![pg]);
    write_designs("sym-15-7-3.txt", "symmetric 2-(15,7,3) designs", &d15);
    let d16 = collect_symmetric(16, 6, 2, 3, 16, vec![]);
    write_designs("sym-16-6-2.txt", "symmetric 2-(16,6,2) designs", &d16);
}

fn pair_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    a * 15 - a * (a + 1) / 2 + (b - a - 1)
}

/// One resolution of a 2-(15,3,1) design. Point 0 lies in `{0, 2d+1, 2d+2}` on day `d`.
fn kirkman_search(rng: &mut ChaCha8Rng) -> Option<Resolution> {
    let triples: Vec<[usize; 3]> = (0..15)
        .flat_map(|a| (a + 1..15).flat_map(move |b| (b + 1..15).map(move |c| [a, b, c])))
        .collect();
    let mut options = Vec::new();
    let mut meaning = Vec::new();
    for t in &triples {
        for day in 0..7 {
            if t[0] == 0 && !(t[1] == 2 * day + 1 && t[2] == 2 * day + 2) {
                continue;
            }
            let mut o = vec![pair_index(t[0], t[1]), pair_index(t[0], t[2]), pair_index(t[1], t[2])];
            o.extend(t.iter().map(|&p| 105 + day * 15 + p));
            options.push(o);
            meaning.push((*t, day));
        }
    }
    let mut order: Vec<usize> = (0..options.len()).collect();
    order.shuffle(rng);
    let ec = ExactCover::new(210, order.iter().map(|&i| options[i].clone()).collect()).ok()?;
    let (sol, _) = ec.first(Some(5_000_000));
    let sol = sol?;
    let mut blocks = Vec::new();
    let mut classes = vec![Vec::new(); 7];
    let mut picked: Vec<([usize; 3], usize)> = sol.iter().map(|&i| meaning[order[i]]).collect();
    picked.sort();
    for (t, day) in picked {
        classes[day].push(blocks.len());
        blocks.push(t.to_vec());
    }
    Resolution::new(BlockDesign::new(15, blocks).ok()?, classes).ok()
}

fn fig_ta(name: &str) -> TripleArray {
    let text = fs::read_to_string(data_dir().join("fixtures").join(name)).unwrap();
    TripleArray::from_text_one_based(&text).unwrap()
}

fn parades() {
    let mut rng = ChaCha8Rng::seed_from_u64(1515);
    let mut found: BTreeMap<CanonKey, Resolution> = BTreeMap::new();
    let mut attempts = 0;
    while found.len() < 7 && attempts < 5000 {
        attempts += 1;
        if let Some(r) = kirkman_search(&mut rng) {
            let key = canonical_resolution(&r).key;
            if !found.contains_key(&key) {
                eprintln!("parade class {} after {attempts} attempts", found.len() + 1);
                found.insert(key, r);
            }
        }
    }
    assert_eq!(found.len(), 7, "did not reach seven parade classes");
    let parades: Vec<Resolution> = found.into_values().collect();

    let fano = pg_design(2, 1, 2).unwrap().design;
    let pg_key = canonical_design(&pg_design(3, 1, 2).unwrap().design).key;
    let labelled: Vec<(String, Resolution)> = parades
        .iter()
        .enumerate()
        .map(|(i, r)| (i.to_string(), r.clone()))
        .collect();
    let report = enumerate_resolvable(&fano, &labelled, 4, None).unwrap();
    let fig3_key = canonical_uta(&fig_ta("fig3-7x15.ta").uta().unwrap()).key;

    struct Info {
        design_key: CanonKey,
        aut_r: BigUint,
        tas: usize,
        profile: Vec<(BigUint, usize)>,
        has_fig3: bool,
    }
    let infos: Vec<Info> = parades
        .iter()
        .zip(&report.parades)
        .map(|(r, p)| {
            let mut profile: Vec<(BigUint, usize)> = p
                .utas
                .classes
                .iter()
                .zip(&p.tas.per_uta)
                .map(|(u, t)| (u.aut_order.clone(), t.classes.len()))
                .collect();
            profile.sort();
            Info {
                design_key: canonical_design(r.design()).key,
                aut_r: canonical_resolution(r).aut_order,
                tas: p.tas.total,
                profile,
                has_fig3: p.utas.classes.iter().any(|u| u.key == fig3_key),
            }
        })
        .collect();
    for (i, info) in infos.iter().enumerate() {
        eprintln!(
            "parade {i}: |Aut R| = {}, PG = {}, TAs = {}, fig3 = {}, profile = {:?}",
            info.aut_r,
            info.design_key == pg_key,
            info.tas,
            info.has_fig3,
            info.profile.iter().map(|(a, n)| format!("{a}:{n}")).collect::<Vec<_>>()
        );
    }

    let mut labels = vec![String::new(); 7];
    let mut by_design: BTreeMap<&CanonKey, Vec<usize>> = BTreeMap::new();
    for (i, info) in infos.iter().enumerate() {
        by_design.entry(&info.design_key).or_default().push(i);
    }
    let nineteen_a: Vec<(BigUint, usize)> = {
        let mut p: Vec<(BigUint, usize)> = [(12u32, 2), (4, 1), (12, 2), (12, 0), (3, 3), (1, 6), (3, 3), (3, 4)]
            .iter()
            .map(|&(a, n)| (BigUint::from(a), n))
            .collect();
        p.sort();
        p
    };
    for members in by_design.values() {
        match members.as_slice() {
            [one] => labels[*one] = "61".into(),
            [x, y] => {
                let (x, y) = (*x, *y);
                if infos[x].design_key == pg_key {
                    let b = if infos[x].has_fig3 { x } else { y };
                    labels[b] = "1b".into();
                    labels[x + y - b] = "1a".into();
                } else if infos[x].aut_r == BigUint::from(24u32) {
                    let a = if infos[x].tas > infos[y].tas { x } else { y };
                    labels[a] = "7a".into();
                    labels[x + y - a] = "7b".into();
                } else {
                    let a = if infos[x].profile == nineteen_a { x } else { y };
                    labels[a] = "19a".into();
                    labels[x + y - a] = "19b".into();
                }
            }
            other => panic!("unexpected design class with {} parades", other.len()),
        }
    }
    for (r, label) in parades.iter().zip(&labels) {
        let path = data_dir().join("resolutions").join(format!("kts15-{label}.txt"));
        let text = format!(
            "# Kirkman parade {label}: a resolution of a 2-(15,3,1) design into 7 classes\n{}",
            r.to_text()
        );
        fs::write(&path, text).unwrap();
        eprintln!("wrote {}", path.display());
    }
}

/// A partition of the lines of PG(3,q) into spreads, by exact cover.
fn packing(q: usize, budget: u64) {
    let g = pg_design(3, 1, q).unwrap();
    let lines = g.design.blocks().to_vec();
    let np = g.design.v();
    let nl = lines.len();
    let spreads = q * q + q + 1;
    let through_zero: Vec<usize> = (0..nl).filter(|&l| lines[l].contains(&0)).collect();
    let mut options = Vec::new();
    let mut meaning = Vec::new();
    for (l, line) in lines.iter().enumerate() {
        for s in 0..spreads {
            if let Some(pos) = through_zero.iter().position(|&x| x == l) {
                if pos != s {
                    continue;
                }
            }
            let mut o = vec![l];
            o.extend(line.iter().map(|&p| nl + s * np + p));
            options.push(o);
            meaning.push((l, s));
        }
    }
    let ec = ExactCover::new(nl + spreads * np, options).unwrap();
    let (sol, stats) = ec.first(Some(budget));
    let Some(sol) = sol else {
        eprintln!("no packing of PG(3,{q}) within {} nodes", stats.nodes);
        return;
    };
    let mut classes = vec![Vec::new(); spreads];
    for k in sol {
        let (l, s) = meaning[k];
        classes[s].push(l);
    }
    for c in &mut classes {
        c.sort();
    }
    let r = Resolution::new(g.design.clone(), classes).unwrap();
    let path = data_dir().join("resolutions").join(format!("pg3-{q}-packing.txt"));
    let text = format!(
        "# a partition of the lines of PG(3,{q}) into {spreads} spreads\n{}",
        r.to_text()
    );
    fs::write(&path, text).unwrap();
    eprintln!("wrote {} after {} nodes", path.display(), stats.nodes);
}

/// The 2-(15,5,6) resolution and 2-(21,5,1) design underlying the 21 x 15 fixture.
fn res1556() {
    let t = fig_ta("figC1-21x15.ta");
    let u = t.uta().unwrap();
    let w = u.detect_resolution().expect("resolvable");
    let cd = u.col_design();
    let res = Resolution::new(cd, (0..w.groups.len()).map(|g| w.groups[g].clone()).collect()).unwrap();
    let p = res.design().verify_2design().unwrap();
    assert_eq!((p.v, p.k, p.lambda), (15, 5, 6));
    let s = BlockDesign::new(u.r(), w.group_rows.clone()).unwrap();
    let sp = s.verify_2design().unwrap();
    assert_eq!((sp.v, sp.k, sp.lambda), (21, 5, 1));
    let dir = data_dir().join("resolutions");
    fs::write(
        dir.join("res-15-5-6.txt"),
        format!(
            "# a resolution of a 2-(15,5,6) design into 21 classes\n{}",
            res.to_text()
        ),
    )
    .unwrap();
    fs::write(
        data_dir().join("designs").join("sym-21-5-1-for-res-15-5-6.txt"),
        format!(
            "# 2-(21,5,1) design; block x pairs with class x of res-15-5-6\n{}",
            s.to_text()
        ),
    )
    .unwrap();
    eprintln!("wrote res-15-5-6 and its partner design");
}

fn main() {
    let what = std::env::args().nth(1).unwrap_or_else(|| "all".into());
    match what.as_str() {
        "designs" => designs(),
        "parades" => parades(),
        "packing" => packing(3, 50_000_000),
        "res1556" => res1556(),
        "all" => {
            designs();
            parades();
            res1556();
            packing(3, 50_000_000);
        }
        other => {
            eprintln!("unknown target {other}");
            std::process::exit(2);
        }
    }
}
