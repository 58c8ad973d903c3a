//! Individualization-refinement search for a canonical labelling.
//!
//! Cells of the ordered partition are identified by their first position.
//! Refinement splits cells by neighbour counts into a splitter cell until the
//! partition is equitable; the search individualizes vertices of the first
//! non-trivial cell and keeps the leaf with the largest edge certificate.

use std::collections::VecDeque;

use super::graph::ColoredGraph;
use super::group::{orbit_reps, Perm};

#[derive(Clone)]
struct Partition {
    lab: Vec<u32>,
    pos: Vec<u32>,
    cell: Vec<u32>,
    end: Vec<u32>,
    cells: usize,
}

struct Scratch {
    count: Vec<u32>,
    touched: Vec<u32>,
    in_queue: Vec<bool>,
}

impl Partition {
    fn by_colors(colors: &[u32]) -> (Partition, Vec<u32>) {
        let n = colors.len();
        let mut lab: Vec<u32> = (0..n as u32).collect();
        lab.sort_by_key(|&v| (colors[v as usize], v));
        let mut pos = vec![0u32; n];
        let mut cell = vec![0u32; n];
        let mut end = vec![0u32; n];
        let mut starts = Vec::new();
        let mut s = 0;
        while s < n {
            let c = colors[lab[s] as usize];
            let mut e = s;
            while e < n && colors[lab[e] as usize] == c {
                e += 1;
            }
            for p in s..e {
                pos[lab[p] as usize] = p as u32;
                cell[lab[p] as usize] = s as u32;
            }
            end[s] = e as u32;
            starts.push(s as u32);
            s = e;
        }
        let cells = starts.len();
        (
            Partition {
                lab,
                pos,
                cell,
                end,
                cells,
            },
            starts,
        )
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    fn target_cell(&self) -> Option<usize> {
        let mut s = 0;
        while s < self.lab.len() {
            let e = self.end[s] as usize;
            if e - s > 1 {
                return Some(s);
            }
            s = e;
        }
        None
    }

    fn individualize(&mut self, v: u32) -> u32 {
        let s = self.cell[v as usize] as usize;
        let e = self.end[s] as usize;
        let p = self.pos[v as usize] as usize;
        let w = self.lab[s];
        self.lab.swap(s, p);
        self.pos[w as usize] = p as u32;
        self.pos[v as usize] = s as u32;
        self.end[s] = s as u32 + 1;
        self.end[s + 1] = e as u32;
        for q in s + 1..e {
            self.cell[self.lab[q] as usize] = s as u32 + 1;
        }
        self.cells += 1;
        s as u32
    }

    fn refine(&mut self, g: &ColoredGraph, splitters: &[u32], sc: &mut Scratch) {
        let mut queue: VecDeque<u32> = VecDeque::new();
        for &s in splitters {
            if !sc.in_queue[s as usize] {
                sc.in_queue[s as usize] = true;
                queue.push_back(s);
            }
        }
        let mut cells_hit: Vec<u32> = Vec::new();
        while let Some(w) = queue.pop_front() {
            sc.in_queue[w as usize] = false;
            if self.cells == self.lab.len() {
                continue;
            }
            let we = self.end[w as usize];
            for p in w..we {
                let v = self.lab[p as usize];
                for &u in g.neighbors(v as usize) {
                    if sc.count[u as usize] == 0 {
                        sc.touched.push(u);
                    }
                    sc.count[u as usize] += 1;
                }
            }
            cells_hit.clear();
            cells_hit.extend(sc.touched.iter().map(|&u| self.cell[u as usize]));
            cells_hit.sort_unstable();
            cells_hit.dedup();
            for &s in &cells_hit {
                let (s, e) = (s as usize, self.end[s as usize] as usize);
                if e - s == 1 {
                    continue;
                }
                let count = &sc.count;
                self.lab[s..e].sort_unstable_by_key(|&v| count[v as usize]);
                for p in s..e {
                    self.pos[self.lab[p] as usize] = p as u32;
                }
                if count[self.lab[s] as usize] == count[self.lab[e - 1] as usize] {
                    continue;
                }
                let mut frags: Vec<(usize, usize)> = Vec::new();
                let mut f = s;
                for p in s + 1..=e {
                    if p == e || count[self.lab[p] as usize] != count[self.lab[f] as usize] {
                        frags.push((f, p));
                        f = p;
                    }
                }
                for &(fs, fe) in &frags {
                    self.end[fs] = fe as u32;
                    for p in fs..fe {
                        self.cell[self.lab[p] as usize] = fs as u32;
                    }
                }
                self.cells += frags.len() - 1;
                let was_queued = sc.in_queue[s];
                let skip = if was_queued {
                    0
                } else {
                    let mut best = 0;
                    for (i, &(fs, fe)) in frags.iter().enumerate() {
                        if fe - fs > frags[best].1 - frags[best].0 {
                            best = i;
                        }
                    }
                    best
                };
                for (i, &(fs, _)) in frags.iter().enumerate() {
                    if i == skip {
                        continue;
                    }
                    sc.in_queue[fs] = true;
                    queue.push_back(fs as u32);
                }
            }
            for &u in &sc.touched {
                sc.count[u as usize] = 0;
            }
            sc.touched.clear();
        }
    }
}

enum Flow {
    Continue,
    Jump(usize),
}

struct Leaf {
    lab: Vec<u32>,
    cert: Vec<u64>,
    path: Vec<u32>,
}

struct Search<'a> {
    g: &'a ColoredGraph,
    sc: Scratch,
    path: Vec<u32>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    gens: Vec<Perm>,
    leaves: u64,
}

/// Result of a canonical-labelling search.
#[derive(Debug, Clone)]
pub struct SearchResult {
    /// `labeling[v]` is the canonical label of vertex `v`.
    pub labeling: Vec<u32>,
    /// Generators of the automorphism group.
    pub generators: Vec<Perm>,
    /// Vertices individualized along the first path; a base for the group.
    pub first_path: Vec<u32>,
    pub leaves: u64,
}

fn certificate(g: &ColoredGraph, p: &Partition) -> Vec<u64> {
    let n = g.n() as u64;
    let mut cert = Vec::with_capacity(g.edge_count());
    for v in 0..g.n() {
        let a = p.pos[v] as u64;
        for &u in g.neighbors(v) {
            let b = p.pos[u as usize] as u64;
            if a < b {
                cert.push(a * n + b);
            }
        }
    }
    cert.sort_unstable();
    cert
}

fn common_prefix(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl<'a> Search<'a> {
    fn leaf(&mut self, p: &Partition) -> Flow {
        self.leaves += 1;
        let cert = certificate(self.g, p);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                lab: p.lab.clone(),
                cert,
                path: self.path.clone(),
            };
            self.best = Some(Leaf {
                lab: leaf.lab.clone(),
                cert: leaf.cert.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return Flow::Continue;
        };
        if cert == first.cert {
            let gen = automorphism(&first.lab, &p.lab);
            let level = common_prefix(&self.path, &first.path);
            self.gens.push(gen);
            return Flow::Jump(level);
        }
        let best = self.best.as_ref().expect("set with first");
        match cert.cmp(&best.cert) {
            std::cmp::Ordering::Equal => {
                let gen = automorphism(&best.lab, &p.lab);
                let level = common_prefix(&self.path, &best.path);
                self.gens.push(gen);
                Flow::Jump(level)
            }
            std::cmp::Ordering::Greater => {
                self.best = Some(Leaf {
                    lab: p.lab.clone(),
                    cert,
                    path: self.path.clone(),
                });
                Flow::Continue
            }
            std::cmp::Ordering::Less => Flow::Continue,
        }
    }

    fn node(&mut self, p: Partition) -> Flow {
        if p.is_discrete() {
            return self.leaf(&p);
        }
        let depth = self.path.len();
        let s = p.target_cell().expect("not discrete");
        let mut children: Vec<u32> = p.lab[s..p.end[s] as usize].to_vec();
        children.sort_unstable();
        let mut explored: Vec<u32> = Vec::new();
        let mut orbits: Option<(usize, Vec<u32>)> = None;
        for v in children {
            if !explored.is_empty() {
                if orbits.as_ref().map_or(true, |(k, _)| *k != self.gens.len()) {
                    let fixing: Vec<Perm> = self
                        .gens
                        .iter()
                        .filter(|g| self.path.iter().all(|&x| g[x as usize] == x))
                        .cloned()
                        .collect();
                    orbits = Some((self.gens.len(), orbit_reps(self.g.n(), &fixing)));
                }
                let reps = &orbits.as_ref().unwrap().1;
                if explored.iter().any(|&u| reps[u as usize] == reps[v as usize]) {
                    continue;
                }
            }
            explored.push(v);
            let mut child = p.clone();
            let cell = child.individualize(v);
            child.refine(self.g, &[cell], &mut self.sc);
            self.path.push(v);
            let flow = self.node(child);
            self.path.pop();
            if let Flow::Jump(level) = flow {
                if level < depth {
                    return Flow::Jump(level);
                }
            }
        }
        Flow::Continue
    }
}

/// Maps the vertex at each position of `from` to the vertex at the same position of `to`.
fn automorphism(from: &[u32], to: &[u32]) -> Perm {
    let mut g = vec![0u32; from.len()];
    for (a, b) in from.iter().zip(to) {
        g[*a as usize] = *b;
    }
    g
}

pub fn canonical_search(g: &ColoredGraph) -> SearchResult {
    let n = g.n();
    let mut sc = Scratch {
        count: vec![0; n],
        touched: Vec::new(),
        in_queue: vec![false; n],
    };
    let (mut root, starts) = Partition::by_colors(g.colors());
    root.refine(g, &starts, &mut sc);
    let mut search = Search {
        g,
        sc,
        path: Vec::new(),
        first: None,
        best: None,
        gens: Vec::new(),
        leaves: 0,
    };
    if n > 0 {
        search.node(root);
    }
    let labeling = match &search.best {
        Some(best) => {
            let mut l = vec![0u32; n];
            for (i, &v) in best.lab.iter().enumerate() {
                l[v as usize] = i as u32;
            }
            l
        }
        None => Vec::new(),
    };
    let first_path = search.first.as_ref().map(|f| f.path.clone()).unwrap_or_default();
    SearchResult {
        labeling,
        generators: search.gens,
        first_path,
        leaves: search.leaves,
    }
}
