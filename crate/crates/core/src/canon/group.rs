//! Permutations and a Sims table built with Knuth's incremental Schreier-Sims.

use num_bigint::BigUint;

/// `p[x]` is the image of `x`.
pub type Perm = Vec<u32>;

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

pub fn is_identity(p: &[u32]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

/// `a` then `b`.
pub fn compose(a: &[u32], b: &[u32]) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn inverse(p: &[u32]) -> Perm {
    let mut inv = vec![0u32; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

/// Orbits of the group generated by `gens`, as a representative per point.
pub fn orbit_reps(n: usize, gens: &[Perm]) -> Vec<u32> {
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for g in gens {
        for (i, &x) in g.iter().enumerate() {
            let a = find(&mut parent, i as u32);
            let b = find(&mut parent, x);
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
    }
    (0..n as u32).map(|x| find(&mut parent, x)).collect()
}

pub fn orbit_of(point: u32, gens: &[Perm]) -> Vec<u32> {
    let n = gens.first().map_or(point as usize + 1, Vec::len);
    let mut seen = vec![false; n];
    let mut orbit = vec![point];
    seen[point as usize] = true;
    let mut i = 0;
    while i < orbit.len() {
        let x = orbit[i];
        for g in gens {
            let y = g[x as usize];
            if !seen[y as usize] {
                seen[y as usize] = true;
                orbit.push(y);
            }
        }
        i += 1;
    }
    orbit
}

/// A stabilizer chain along a fixed base.
///
/// `transversal[k][j]` maps `base[k]` to `j` and fixes `base[..k]`.
#[derive(Debug, Clone)]
pub struct SimsTable {
    n: usize,
    base: Vec<u32>,
    transversal: Vec<Vec<Option<Perm>>>,
    strong: Vec<Vec<Perm>>,
}

enum Task {
    Add(usize, Perm),
    Extend(usize, Perm),
}

impl SimsTable {
    /// `base_prefix` is extended by the remaining points in increasing order.
    pub fn new(n: usize, base_prefix: &[u32], gens: &[Perm]) -> Self {
        let mut base: Vec<u32> = base_prefix.to_vec();
        let mut used = vec![false; n];
        for &b in &base {
            used[b as usize] = true;
        }
        base.extend((0..n as u32).filter(|&x| !used[x as usize]));
        let transversal = base
            .iter()
            .map(|&b| {
                let mut row = vec![None; n];
                row[b as usize] = Some(identity(n));
                row
            })
            .collect();
        let mut t = SimsTable {
            n,
            base,
            transversal,
            strong: vec![Vec::new(); n],
        };
        for g in gens {
            t.run(Task::Add(0, g.clone()));
        }
        t
    }

    fn run(&mut self, first: Task) {
        let mut stack = vec![first];
        while let Some(task) = stack.pop() {
            match task {
                Task::Add(k, p) => {
                    if k >= self.n || self.contains_from(k, &p) {
                        continue;
                    }
                    self.strong[k].push(p.clone());
                    for t in self.transversal[k].iter().flatten() {
                        stack.push(Task::Extend(k, compose(t, &p)));
                    }
                }
                Task::Extend(k, p) => {
                    let j = p[self.base[k] as usize] as usize;
                    match &self.transversal[k][j] {
                        None => {
                            for s in &self.strong[k] {
                                stack.push(Task::Extend(k, compose(&p, s)));
                            }
                            self.transversal[k][j] = Some(p);
                        }
                        Some(t) => {
                            let h = compose(&p, &inverse(t));
                            if !is_identity(&h) {
                                stack.push(Task::Add(k + 1, h));
                            }
                        }
                    }
                }
            }
        }
    }

    fn contains_from(&self, k: usize, p: &[u32]) -> bool {
        let mut h = p.to_vec();
        for l in k..self.n {
            if is_identity(&h) {
                return true;
            }
            let j = h[self.base[l] as usize] as usize;
            match &self.transversal[l][j] {
                None => return false,
                Some(t) => h = compose(&h, &inverse(t)),
            }
        }
        is_identity(&h)
    }

    pub fn contains(&self, p: &[u32]) -> bool {
        p.len() == self.n && self.contains_from(0, p)
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.transversal
            .iter()
            .map(|row| row.iter().filter(|t| t.is_some()).count())
            .collect()
    }

    pub fn order(&self) -> BigUint {
        self.orbit_sizes()
            .into_iter()
            .fold(BigUint::from(1u32), |acc, s| acc * BigUint::from(s))
    }

    /// Every group element, each exactly once.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![identity(self.n)];
        for row in self.transversal.iter().rev() {
            let reps: Vec<&Perm> = row.iter().flatten().collect();
            if reps.len() == 1 {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * reps.len());
            for g in &out {
                for t in &reps {
                    next.push(compose(g, t));
                }
            }
            out = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Perm {
        (0..n as u32).map(|i| (i + 1) % n as u32).collect()
    }

    fn swap01(n: usize) -> Perm {
        let mut p = identity(n);
        p.swap(0, 1);
        p
    }

    #[test]
    fn symmetric_groups() {
        for n in 2..=8 {
            let t = SimsTable::new(n, &[], &[cycle(n), swap01(n)]);
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(t.order(), BigUint::from(fact));
        }
        let t = SimsTable::new(12, &[], &[cycle(12), swap01(12)]);
        assert_eq!(t.order(), BigUint::from(479001600u64));
    }

    #[test]
    fn cyclic_and_dihedral() {
        let n = 9;
        let t = SimsTable::new(n, &[], &[cycle(n)]);
        assert_eq!(t.order(), BigUint::from(9u32));
        let refl: Perm = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
        let t = SimsTable::new(n, &[], &[cycle(n), refl]);
        assert_eq!(t.order(), BigUint::from(18u32));
        let elems = t.elements();
        assert_eq!(elems.len(), 18);
        let mut sorted = elems.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 18);
        assert!(elems.iter().all(|g| t.contains(g)));
    }

    #[test]
    fn membership_rejects_outsiders() {
        let t = SimsTable::new(5, &[], &[cycle(5)]);
        assert!(!t.contains(&swap01(5)));
        assert!(t.contains(&compose(&cycle(5), &cycle(5))));
    }

    #[test]
    fn orbits() {
        let g = vec![vec![1, 0, 2, 4, 3]];
        assert_eq!(orbit_reps(5, &g), vec![0, 0, 2, 3, 3]);
        assert_eq!(orbit_of(3, &g), vec![3, 4]);
    }
}
