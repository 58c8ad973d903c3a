/// An undirected vertex-coloured graph. Colours are compared by value, so an
/// isomorphism must map each vertex to one of the same colour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    adj: Vec<Vec<u32>>,
    colors: Vec<u32>,
}

impl ColoredGraph {
    pub fn new(colors: Vec<u32>) -> Self {
        ColoredGraph {
            adj: vec![Vec::new(); colors.len()],
            colors,
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert_ne!(a, b, "loops are not supported");
        self.adj[a].push(b as u32);
        self.adj[b].push(a as u32);
    }

    /// Sorts adjacency lists and drops repeated edges.
    pub fn finish(mut self) -> Self {
        for l in &mut self.adj {
            l.sort_unstable();
            l.dedup();
        }
        self
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Whether `p` maps edges to edges and keeps colours.
    pub fn is_automorphism(&self, p: &[u32]) -> bool {
        (0..self.n()).all(|v| {
            self.colors[v] == self.colors[p[v] as usize]
                && self.adj[v]
                    .iter()
                    .all(|&u| self.adj[p[v] as usize].binary_search(&p[u as usize]).is_ok())
        })
    }

    /// The graph with vertex `perm[v]` in place of `v`.
    pub fn relabel(&self, perm: &[u32]) -> ColoredGraph {
        let n = self.n();
        let mut colors = vec![0; n];
        for v in 0..n {
            colors[perm[v] as usize] = self.colors[v];
        }
        let mut g = ColoredGraph::new(colors);
        for v in 0..n {
            for &u in &self.adj[v] {
                if (u as usize) > v {
                    g.add_edge(perm[v] as usize, perm[u as usize] as usize);
                }
            }
        }
        g.finish()
    }
}
