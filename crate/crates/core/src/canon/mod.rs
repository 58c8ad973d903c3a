//! Canonical forms and automorphism groups of designs and arrays.
//!
//! Every object is encoded as a vertex-coloured graph whose automorphisms are
//! exactly the object's automorphisms. The canonical key is the edge list of
//! the canonically relabelled graph, prefixed by a kind tag and the colour
//! class sizes, so equal keys mean isomorphic objects of the same kind.

mod graph;
pub mod group;
mod search;

use num_bigint::BigUint;

pub use graph::ColoredGraph;
pub use group::{Perm, SimsTable};
pub use search::{canonical_search, SearchResult};

use crate::arrays::{TripleArray, Uta};
use crate::design::{BlockDesign, Resolution};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonKey(Vec<u8>);

impl CanonKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        use std::fmt::Write;
        let mut s = String::with_capacity(self.0.len() * 2);
        for b in &self.0 {
            write!(s, "{b:02x}").unwrap();
        }
        s
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() % 2 != 0 {
            return Err(Error::Invalid("hex key has odd length".into()));
        }
        (0..s.len())
            .step_by(2)
            .map(|i| {
                u8::from_str_radix(&s[i..i + 2], 16)
                    .map_err(|_| Error::Invalid(format!("bad hex digit pair `{}`", &s[i..i + 2])))
            })
            .collect::<Result<Vec<u8>>>()
            .map(CanonKey)
    }
}

impl std::fmt::Display for CanonKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Design = 1,
    Resolution = 2,
    Uta = 3,
    TripleArray = 4,
}

/// Canonical key, automorphism group and the labelling that produced the key.
#[derive(Debug, Clone)]
pub struct Canonical {
    pub key: CanonKey,
    pub aut_order: BigUint,
    pub generators: Vec<Perm>,
    /// `labeling[v]` is the canonical label of graph vertex `v`.
    pub labeling: Vec<u32>,
    pub group: SimsTable,
}

pub fn canonical_graph(g: &ColoredGraph) -> (Vec<u8>, SearchResult, SimsTable) {
    let res = canonical_search(g);
    let relabelled = g.relabel(&res.labeling);
    let mut bytes = Vec::new();
    push_u32(&mut bytes, g.n() as u32);
    let mut classes: Vec<(u32, u32)> = Vec::new();
    for &c in relabelled.colors() {
        match classes.last_mut() {
            Some((col, n)) if *col == c => *n += 1,
            _ => classes.push((c, 1)),
        }
    }
    push_u32(&mut bytes, classes.len() as u32);
    for (c, n) in classes {
        push_u32(&mut bytes, c);
        push_u32(&mut bytes, n);
    }
    for v in 0..relabelled.n() {
        for &u in relabelled.neighbors(v) {
            if (u as usize) > v {
                push_u32(&mut bytes, v as u32);
                push_u32(&mut bytes, u);
            }
        }
    }
    let group = SimsTable::new(g.n(), &res.first_path, &res.generators);
    (bytes, res, group)
}

fn push_u32(out: &mut Vec<u8>, x: u32) {
    out.extend_from_slice(&x.to_be_bytes());
}

fn canonicalize(kind: Kind, header: &[usize], g: &ColoredGraph) -> Canonical {
    let (body, res, group) = canonical_graph(g);
    let mut bytes = vec![kind as u8];
    push_u32(&mut bytes, header.len() as u32);
    for &h in header {
        push_u32(&mut bytes, h as u32);
    }
    bytes.extend(body);
    Canonical {
        key: CanonKey(bytes),
        aut_order: group.order(),
        generators: res.generators,
        labeling: res.labeling,
        group,
    }
}

/// Points `0..v`, then one vertex per block.
pub fn design_graph(d: &BlockDesign) -> ColoredGraph {
    let v = d.v();
    let mut colors = vec![0u32; v];
    colors.extend(std::iter::repeat(1).take(d.b()));
    let mut g = ColoredGraph::new(colors);
    for (i, b) in d.blocks().iter().enumerate() {
        for &p in b {
            g.add_edge(p, v + i);
        }
    }
    g.finish()
}

/// The design graph plus one vertex per parallel class.
pub fn resolution_graph(r: &Resolution) -> ColoredGraph {
    let d = r.design();
    let (v, b) = (d.v(), d.b());
    let mut colors = vec![0u32; v];
    colors.extend(std::iter::repeat(1).take(b));
    colors.extend(std::iter::repeat(2).take(r.num_classes()));
    let mut g = ColoredGraph::new(colors);
    for (i, blk) in d.blocks().iter().enumerate() {
        for &p in blk {
            g.add_edge(p, v + i);
        }
    }
    for (ci, class) in r.classes().iter().enumerate() {
        for &bi in class {
            g.add_edge(v + bi, v + b + ci);
        }
    }
    g.finish()
}

/// Symbols `0..v`, rows `v..v+r`, columns `v+r..v+r+c`.
pub fn uta_graph(u: &Uta) -> ColoredGraph {
    let (v, r, c) = (u.v(), u.r(), u.c());
    let mut colors = vec![0u32; v];
    colors.extend(std::iter::repeat(1).take(r));
    colors.extend(std::iter::repeat(2).take(c));
    let mut g = ColoredGraph::new(colors);
    for (i, s) in u.row_sets().iter().enumerate() {
        for &x in s {
            g.add_edge(x, v + i);
        }
    }
    for (j, s) in u.col_sets().iter().enumerate() {
        for &x in s {
            g.add_edge(x, v + r + j);
        }
    }
    g.finish()
}

/// Rows `0..r`, columns `r..r+c`, symbols `r+c..r+c+v`, then one vertex per cell.
pub fn ta_graph(t: &TripleArray) -> ColoredGraph {
    let (r, c, v) = (t.r(), t.c(), t.v());
    let mut colors = vec![0u32; r];
    colors.extend(std::iter::repeat(1).take(c));
    colors.extend(std::iter::repeat(2).take(v));
    colors.extend(std::iter::repeat(3).take(r * c));
    let mut g = ColoredGraph::new(colors);
    let base = r + c + v;
    for i in 0..r {
        for j in 0..c {
            let cell = base + i * c + j;
            g.add_edge(cell, i);
            g.add_edge(cell, r + j);
            g.add_edge(cell, r + c + t.get(i, j));
        }
    }
    g.finish()
}

pub fn canonical_design(d: &BlockDesign) -> Canonical {
    canonicalize(Kind::Design, &[d.v(), d.b()], &design_graph(d))
}

pub fn canonical_resolution(r: &Resolution) -> Canonical {
    let d = r.design();
    canonicalize(Kind::Resolution, &[d.v(), d.b(), r.num_classes()], &resolution_graph(r))
}

pub fn canonical_uta(u: &Uta) -> Canonical {
    canonicalize(Kind::Uta, &[u.r(), u.c(), u.v()], &uta_graph(u))
}

pub fn canonical_ta(t: &TripleArray) -> Canonical {
    canonicalize(Kind::TripleArray, &[t.r(), t.c(), t.v()], &ta_graph(t))
}

pub fn designs_isomorphic(a: &BlockDesign, b: &BlockDesign) -> bool {
    a.v() == b.v() && a.b() == b.b() && canonical_design(a).key == canonical_design(b).key
}

/// An isotopism of an unordered triple array: row, column and symbol permutations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Isotopism {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub symbols: Vec<usize>,
}

/// All automorphisms of `u`, read off the stabilizer chain of its graph.
pub fn uta_automorphisms(u: &Uta, canon: &Canonical) -> Vec<Isotopism> {
    let (v, r, c) = (u.v(), u.r(), u.c());
    canon
        .group
        .elements()
        .into_iter()
        .map(|g| Isotopism {
            symbols: (0..v).map(|x| g[x] as usize).collect(),
            rows: (0..r).map(|i| g[v + i] as usize - v).collect(),
            cols: (0..c).map(|j| g[v + r + j] as usize - v - r).collect(),
        })
        .collect()
}

/// Rebuilds the design with points and blocks in canonical order.
pub fn canonical_design_form(d: &BlockDesign) -> BlockDesign {
    let c = canonical_design(d);
    let v = d.v();
    let mut blocks = vec![Vec::new(); d.b()];
    for (i, b) in d.blocks().iter().enumerate() {
        let pos = c.labeling[v + i] as usize - v;
        blocks[pos] = b.iter().map(|&p| c.labeling[p] as usize).collect();
    }
    BlockDesign::new(v, blocks).expect("relabelled design is valid")
}

#[cfg(test)]
mod tests;
