//! Isomorphism-free enumeration with orbit-stabilizer cross-checks.
//!
//! Every enumeration hits each class `N` times and checks `|Aut X| * N` against
//! the size of the acting group. A mismatch aborts with
//! [`Error::Consistency`](crate::error::Error::Consistency).

use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::arrays::{TripleArray, Uta};
use crate::canon::{canonical_design, canonical_resolution, canonical_ta, canonical_uta, uta_automorphisms, CanonKey};
use crate::constructions::{agrawal, ruta};
use crate::design::{BlockDesign, Resolution};
use crate::error::{Error, Result};
use crate::ordering::build_ordering_instance;

/// Where a UTA class was first produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    /// Design index and removed point.
    Agrawal { design: usize, sigma: usize },
    /// Class order used by the resolvable construction.
    Ruta { class_order: Vec<usize> },
}

#[derive(Debug, Clone)]
pub struct UtaClass {
    pub key: CanonKey,
    pub aut_order: BigUint,
    pub witness: Uta,
    pub origin: Origin,
    /// How many labelled inputs produced this class.
    pub hits: u64,
}

#[derive(Debug, Clone)]
pub struct UtaEnumeration {
    /// Sorted by canonical key.
    pub classes: Vec<UtaClass>,
    /// `|Aut|` to number of classes.
    pub histogram: BTreeMap<BigUint, usize>,
    /// Human-readable record of the checks that passed.
    pub checks: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct TaClass {
    pub key: CanonKey,
    pub aut_order: BigUint,
    pub witness: TripleArray,
    /// Labelled orderings of the fixed UTA isotopic to this class.
    pub hits: u64,
}

#[derive(Debug, Clone)]
pub struct TaEnumeration {
    pub uta_aut_order: BigUint,
    pub labelled: u64,
    /// Sorted by canonical key.
    pub classes: Vec<TaClass>,
    pub histogram: BTreeMap<BigUint, usize>,
    /// False when the node budget ran out; counts are then partial and unchecked.
    pub complete: bool,
    pub nodes: u64,
}

fn histogram<'a>(orders: impl Iterator<Item = &'a BigUint>) -> BTreeMap<BigUint, usize> {
    let mut h = BTreeMap::new();
    for o in orders {
        *h.entry(o.clone()).or_insert(0) += 1;
    }
    h
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))
}

struct Hit {
    key: CanonKey,
    aut_order: BigUint,
    uta: Uta,
    origin: Origin,
}

fn merge_hits(hits: Vec<Hit>) -> Vec<UtaClass> {
    let mut classes: BTreeMap<CanonKey, UtaClass> = BTreeMap::new();
    for h in hits {
        classes
            .entry(h.key.clone())
            .and_modify(|c| c.hits += 1)
            .or_insert(UtaClass {
                key: h.key,
                aut_order: h.aut_order,
                witness: h.uta,
                origin: h.origin,
                hits: 1,
            });
    }
    classes.into_values().collect()
}

/// All extremal UTAs obtainable from the given symmetric designs by removing a point.
///
/// The designs must be pairwise non-isomorphic. For each design `D` and each
/// class found from it, `|Aut U| * N = |Aut D|`.
pub fn enumerate_extremal(designs: &[BlockDesign], threads: usize) -> Result<UtaEnumeration> {
    let keys: Vec<_> = designs.iter().map(canonical_design).collect();
    for a in 0..keys.len() {
        for b in a + 1..keys.len() {
            if keys[a].key == keys[b].key {
                return Err(Error::Invalid(format!("designs {a} and {b} are isomorphic")));
            }
        }
    }
    let jobs: Vec<(usize, usize)> = designs
        .iter()
        .enumerate()
        .flat_map(|(d, des)| (0..des.v()).map(move |s| (d, s)))
        .collect();
    let hits: Vec<Result<Hit>> = pool(threads)?.install(|| {
        jobs.par_iter()
            .map(|&(design, sigma)| {
                let uta = agrawal(&designs[design], sigma)?;
                let c = canonical_uta(&uta);
                Ok(Hit {
                    key: c.key,
                    aut_order: c.aut_order,
                    uta,
                    origin: Origin::Agrawal { design, sigma },
                })
            })
            .collect()
    });
    let hits: Vec<Hit> = hits.into_iter().collect::<Result<_>>()?;
    let mut checks = Vec::new();
    let mut per_design: HashMap<(usize, CanonKey), (u64, BigUint)> = HashMap::new();
    for h in &hits {
        let Origin::Agrawal { design, .. } = h.origin else {
            unreachable!()
        };
        let e = per_design
            .entry((design, h.key.clone()))
            .or_insert((0, h.aut_order.clone()));
        e.0 += 1;
    }
    for ((design, _), (n, aut)) in &per_design {
        if aut * BigUint::from(*n) != keys[*design].aut_order {
            return Err(Error::Consistency(format!(
                "design {design}: |Aut U| = {aut}, hits = {n}, |Aut D| = {}",
                keys[*design].aut_order
            )));
        }
    }
    let classes = merge_hits(hits);
    let total: usize = designs.iter().map(|d| d.v()).sum();
    checks.push(format!(
        "{} removals over {} designs give {} classes; |Aut U| * hits = |Aut D| for each",
        total,
        designs.len(),
        classes.len()
    ));
    Ok(UtaEnumeration {
        histogram: histogram(classes.iter().map(|c| &c.aut_order)),
        classes,
        checks,
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

/// Largest number of classes for which every class order is tried.
pub const MAX_RUTA_CLASSES: usize = 9;

/// All UTAs from the resolvable construction with fixed `s` and `res`, over every class order.
///
/// Checks `sum_U |Aut S| |Aut R| / |Aut U| = r!` and `|Aut U| * N = |Aut S| |Aut R|` per class.
pub fn enumerate_rutas(s: &BlockDesign, res: &Resolution, threads: usize) -> Result<UtaEnumeration> {
    let r = res.num_classes();
    if r > MAX_RUTA_CLASSES {
        return Err(Error::Unsupported(format!(
            "{r} classes means {r}! class orders; the bound is {MAX_RUTA_CLASSES}"
        )));
    }
    let aut_s = canonical_design(s).aut_order;
    let aut_r = canonical_resolution(res).aut_order;
    let orders = permutations(r);
    let hits: Vec<Result<Hit>> = pool(threads)?.install(|| {
        orders
            .par_iter()
            .map(|pi| {
                let uta = ruta(s, res, pi)?;
                let c = canonical_uta(&uta);
                Ok(Hit {
                    key: c.key,
                    aut_order: c.aut_order,
                    uta,
                    origin: Origin::Ruta {
                        class_order: pi.clone(),
                    },
                })
            })
            .collect()
    });
    let hits: Vec<Hit> = hits.into_iter().collect::<Result<_>>()?;
    let classes = merge_hits(hits);
    let group = &aut_s * &aut_r;
    for c in &classes {
        if &c.aut_order * BigUint::from(c.hits) != group {
            return Err(Error::Consistency(format!(
                "|Aut U| = {}, hits = {}, |Aut S||Aut R| = {group}",
                c.aut_order, c.hits
            )));
        }
    }
    let checks = vec![format!(
        "{} class orders give {} classes; |Aut U| * hits = |Aut S| |Aut R| = {group} for each",
        orders.len(),
        classes.len()
    )];
    Ok(UtaEnumeration {
        histogram: histogram(classes.iter().map(|c| &c.aut_order)),
        classes,
        checks,
    })
}

/// Aut(U) acting on row-major grids: `T'(a, b) = sym(T(rinv(a), cinv(b)))`.
struct GridAction {
    c: usize,
    rows_inv: Vec<Vec<u16>>,
    cols_inv: Vec<Vec<u16>>,
    syms: Vec<Vec<u16>>,
    /// For large groups: `first[cell][x]` is the least image of symbol `x` at cell 0
    /// over elements pulling cell 0 back to `cell`, with the elements attaining it.
    first: Option<Vec<Vec<(u16, Vec<usize>)>>>,
}

impl GridAction {
    fn new(u: &Uta) -> (GridAction, BigUint) {
        let canon = canonical_uta(u);
        let elems = uta_automorphisms(u, &canon);
        let inv = |p: &[usize]| {
            let mut q = vec![0u16; p.len()];
            for (i, &x) in p.iter().enumerate() {
                q[x] = i as u16;
            }
            q
        };
        let mut action = GridAction {
            c: u.c(),
            rows_inv: elems.iter().map(|g| inv(&g.rows)).collect(),
            cols_inv: elems.iter().map(|g| inv(&g.cols)).collect(),
            syms: elems
                .iter()
                .map(|g| g.symbols.iter().map(|&x| x as u16).collect())
                .collect(),
            first: None,
        };
        let cells = u.r() * u.c();
        if elems.len() > cells {
            let mut first = vec![vec![(u16::MAX, Vec::new()); u.v()]; cells];
            for g in 0..elems.len() {
                let cell = action.rows_inv[g][0] as usize * action.c + action.cols_inv[g][0] as usize;
                for x in 0..u.v() {
                    let img = action.syms[g][x];
                    let slot = &mut first[cell][x];
                    if img < slot.0 {
                        *slot = (img, vec![g]);
                    } else if img == slot.0 {
                        slot.1.push(g);
                    }
                }
            }
            action.first = Some(first);
        }
        (action, canon.aut_order)
    }

    #[inline]
    fn image_cell(&self, g: usize, grid: &[usize], idx: usize) -> u16 {
        let (a, b) = (idx / self.c, idx % self.c);
        let i = self.rows_inv[g][a] as usize;
        let j = self.cols_inv[g][b] as usize;
        self.syms[g][grid[i * self.c + j]]
    }

    /// Writes the lexicographically least image of `grid` to `out` and returns
    /// the number of group elements attaining it, which is the stabilizer order.
    fn min_image(&self, grid: &[usize], cand: &mut Vec<usize>, out: &mut Vec<u16>) -> usize {
        out.clear();
        cand.clear();
        let start = match &self.first {
            Some(first) => {
                let best = (0..grid.len())
                    .map(|cell| first[cell][grid[cell]].0)
                    .min()
                    .unwrap_or(u16::MAX);
                for (cell, &x) in grid.iter().enumerate() {
                    if first[cell][x].0 == best {
                        cand.extend_from_slice(&first[cell][x].1);
                    }
                }
                out.push(best);
                1
            }
            None => {
                cand.extend(0..self.syms.len());
                0
            }
        };
        for idx in start..grid.len() {
            if cand.len() == 1 {
                let g = cand[0];
                out.extend((idx..grid.len()).map(|k| self.image_cell(g, grid, k)));
                return 1;
            }
            let mut best = u16::MAX;
            let mut kept = 0;
            for t in 0..cand.len() {
                let g = cand[t];
                let x = self.image_cell(g, grid, idx);
                if x < best {
                    best = x;
                    kept = 0;
                }
                if x == best {
                    cand[kept] = g;
                    kept += 1;
                }
            }
            cand.truncate(kept);
            out.push(best);
        }
        cand.len()
    }
}

/// All triple arrays with underlying UTA `u`, up to isotopism.
///
/// Isotopism classes of orderings of a fixed UTA are the orbits of Aut(U) on
/// its labelled orderings; each labelled ordering is reduced to its least
/// image. The autotopism group of each representative is computed separately
/// and `|Aut T| * N = |Aut U|` is checked, as is the number of distinct keys.
pub fn enumerate_tas(u: &Uta, budget: Option<u64>) -> Result<TaEnumeration> {
    let inst = build_ordering_instance(u)?;
    let (action, uta_aut) = GridAction::new(u);
    let mut reps: HashMap<Vec<u16>, (u64, usize)> = HashMap::new();
    let mut cand = Vec::new();
    let mut img = Vec::new();
    let mut labelled = 0u64;
    let stats = inst.for_each_grid(budget, |grid| {
        labelled += 1;
        let stab = action.min_image(grid, &mut cand, &mut img);
        match reps.get_mut(&img) {
            Some(n) => n.0 += 1,
            None => {
                reps.insert(img.clone(), (1, stab));
            }
        }
        ControlFlow::Continue(())
    });
    let complete = stats.complete;
    let reps: Vec<(Vec<u16>, (u64, usize))> = reps.into_iter().collect();
    let mut classes: Vec<TaClass> = reps
        .into_par_iter()
        .map(|(grid, (hits, stab))| {
            let t = TripleArray::new(u.r(), u.c(), u.v(), grid.into_iter().map(usize::from).collect())?;
            let c = canonical_ta(&t);
            if c.aut_order != BigUint::from(stab) {
                return Err(Error::Consistency(format!(
                    "|Aut T| = {} but {stab} elements of Aut U fix the representative",
                    c.aut_order
                )));
            }
            if complete && &c.aut_order * BigUint::from(hits) != uta_aut {
                return Err(Error::Consistency(format!(
                    "|Aut T| = {}, hits = {hits}, |Aut U| = {uta_aut}",
                    c.aut_order
                )));
            }
            Ok(TaClass {
                key: c.key,
                aut_order: c.aut_order,
                witness: t,
                hits,
            })
        })
        .collect::<Result<_>>()?;
    classes.sort_by(|a, b| a.key.cmp(&b.key));
    if classes.windows(2).any(|w| w[0].key == w[1].key) {
        return Err(Error::Consistency(
            "two orbit representatives share a canonical key".into(),
        ));
    }
    Ok(TaEnumeration {
        uta_aut_order: uta_aut,
        labelled,
        histogram: histogram(classes.iter().map(|c| &c.aut_order)),
        classes,
        complete,
        nodes: stats.nodes,
    })
}

/// Triple-array enumeration for every UTA class of an enumeration.
#[derive(Debug, Clone)]
pub struct OrderingsReport {
    pub per_uta: Vec<TaEnumeration>,
    pub total: usize,
    pub histogram: BTreeMap<BigUint, usize>,
    pub unorderable: usize,
    pub complete: bool,
}

/// Runs [`enumerate_tas`] on every class, several at a time on `threads` workers.
pub fn enumerate_orderings(utas: &UtaEnumeration, threads: usize, budget: Option<u64>) -> Result<OrderingsReport> {
    let per_uta: Vec<Result<TaEnumeration>> = pool(threads)?.install(|| {
        utas.classes
            .par_iter()
            .map(|c| enumerate_tas(&c.witness, budget))
            .collect()
    });
    Ok(summarize(per_uta.into_iter().collect::<Result<_>>()?))
}

fn summarize(per_uta: Vec<TaEnumeration>) -> OrderingsReport {
    let total = per_uta.iter().map(|e| e.classes.len()).sum();
    let histogram = histogram(per_uta.iter().flat_map(|e| e.classes.iter().map(|c| &c.aut_order)));
    let unorderable = per_uta.iter().filter(|e| e.complete && e.classes.is_empty()).count();
    let complete = per_uta.iter().all(|e| e.complete);
    OrderingsReport {
        per_uta,
        total,
        histogram,
        unorderable,
        complete,
    }
}

#[derive(Debug, Clone)]
pub struct ParadeReport {
    pub label: String,
    pub utas: UtaEnumeration,
    pub tas: OrderingsReport,
}

#[derive(Debug, Clone)]
pub struct ResolvableReport {
    pub parades: Vec<ParadeReport>,
    pub uta_total: usize,
    pub ta_total: usize,
    pub uta_histogram: BTreeMap<BigUint, usize>,
    pub ta_histogram: BTreeMap<BigUint, usize>,
    pub unorderable: usize,
}

/// Resolvable UTAs and triple arrays from one symmetric design and several labelled resolutions.
///
/// Checks that UTA keys and triple-array keys are distinct across resolutions.
pub fn enumerate_resolvable(
    s: &BlockDesign,
    resolutions: &[(String, Resolution)],
    threads: usize,
    budget: Option<u64>,
) -> Result<ResolvableReport> {
    let mut parades = Vec::new();
    for (label, res) in resolutions {
        let utas = enumerate_rutas(s, res, threads)?;
        let witnesses: Vec<&Uta> = utas.classes.iter().map(|c| &c.witness).collect();
        let per_uta: Vec<Result<TaEnumeration>> =
            pool(threads)?.install(|| witnesses.par_iter().map(|u| enumerate_tas(u, budget)).collect());
        let tas = summarize(per_uta.into_iter().collect::<Result<_>>()?);
        parades.push(ParadeReport {
            label: label.clone(),
            utas,
            tas,
        });
    }
    let mut uta_keys: Vec<&CanonKey> = parades
        .iter()
        .flat_map(|p| p.utas.classes.iter().map(|c| &c.key))
        .collect();
    let mut ta_keys: Vec<&CanonKey> = parades
        .iter()
        .flat_map(|p| p.tas.per_uta.iter().flat_map(|e| e.classes.iter().map(|c| &c.key)))
        .collect();
    let (nu, nt) = (uta_keys.len(), ta_keys.len());
    uta_keys.sort();
    uta_keys.dedup();
    ta_keys.sort();
    ta_keys.dedup();
    if uta_keys.len() != nu || ta_keys.len() != nt {
        return Err(Error::Consistency(
            "the same class arose from two different resolutions".into(),
        ));
    }
    let uta_histogram = histogram(parades.iter().flat_map(|p| p.utas.classes.iter().map(|c| &c.aut_order)));
    let ta_histogram = histogram(parades.iter().flat_map(|p| {
        p.tas
            .per_uta
            .iter()
            .flat_map(|e| e.classes.iter().map(|c| &c.aut_order))
    }));
    let unorderable = parades.iter().map(|p| p.tas.unorderable).sum();
    Ok(ResolvableReport {
        parades,
        uta_total: nu,
        ta_total: nt,
        uta_histogram,
        ta_histogram,
        unorderable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{family_ag, trivial_symmetric};
    use crate::geometry::{ag_design, hyperplane_resolution, pg_design};

    #[test]
    fn extremal_from_fano() {
        let fano = pg_design(2, 1, 2).unwrap().design;
        let e = enumerate_extremal(&[fano], 1).unwrap();
        assert_eq!(e.classes.len(), 1);
        assert_eq!(e.classes[0].aut_order, BigUint::from(24u32));
        assert_eq!(e.classes[0].hits, 7);
    }

    #[test]
    fn four_by_nine_has_one_ta() {
        let u = family_ag(3, 2).unwrap();
        let t = enumerate_tas(&u, None).unwrap();
        assert!(t.complete);
        assert_eq!(t.uta_aut_order, BigUint::from(432u32));
        assert_eq!(t.labelled, 144);
        assert_eq!(t.classes.len(), 1);
        assert_eq!(t.classes[0].aut_order, BigUint::from(3u32));
        assert!(t.classes[0].witness.verify().is_ok());
    }

    #[test]
    fn rutas_of_affine_plane_of_order_three() {
        let res = hyperplane_resolution(&ag_design(2, 1, 3).unwrap()).unwrap();
        let e = enumerate_rutas(&trivial_symmetric(4), &res, 2).unwrap();
        assert_eq!(e.classes.len(), 1);
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(0).len(), 1);
    }
}
