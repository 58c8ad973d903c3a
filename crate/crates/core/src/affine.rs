//! Triple arrays with `r = e + 1`, affine planes, derangements and partite hypergraphs.
//!
//! A `((q+1) x q^2, q(q+1))` UTA is determined by an affine plane of order `q`:
//! symbols are lines, row `i` holds every line outside parallel class `i` and
//! column `j` holds the lines through point `j`. Ordering it is equivalent to
//! choosing a derangement `sigma_p` of the classes for every point, such that
//! collinear points disagree on the class of their line.

use std::ops::ControlFlow;

use crate::arrays::{ResolutionWitness, TripleArray, Uta};
use crate::design::BlockDesign;
use crate::error::{invalid, Error, Result};
use crate::geometry::ag_design;

/// The `r = e + 1` collapse: returns the forced `(c, v)`.
pub fn collapse_params(r: usize) -> Result<(usize, usize)> {
    if r < 3 {
        return Err(Error::Params(format!(
            "r = {r} leaves no non-trivial parameter set with r = e + 1"
        )));
    }
    let e = r - 1;
    Ok((e * e, e * (e + 1)))
}

/// An affine plane with its parallel classes and the line through each point in each class.
#[derive(Debug, Clone)]
pub struct AffinePlaneContext {
    q: usize,
    plane: BlockDesign,
    classes: Vec<Vec<usize>>,
    /// `line_through[i][p]` is the class-`i` line containing point `p`.
    line_through: Vec<Vec<usize>>,
}

impl AffinePlaneContext {
    pub fn new(plane: BlockDesign) -> Result<Self> {
        let p = plane.verify_2design()?;
        if p.lambda != 1 || p.v != p.k * p.k || p.k < 2 {
            return Err(Error::Params(format!("{p} is not an affine plane")));
        }
        let q = p.k;
        let mut class_of = vec![usize::MAX; plane.b()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for l in 0..plane.b() {
            if class_of[l] != usize::MAX {
                continue;
            }
            let mut class = vec![l];
            for m in l + 1..plane.b() {
                let meets = plane.block(m).iter().any(|x| plane.block(l).binary_search(x).is_ok());
                if !meets {
                    class.push(m);
                }
            }
            if class.len() != q {
                return invalid(format!(
                    "line {l} has {} lines parallel to it, expected {q}",
                    class.len()
                ));
            }
            for &m in &class {
                class_of[m] = classes.len();
            }
            classes.push(class);
        }
        if classes.len() != q + 1 {
            return invalid(format!("found {} parallel classes, expected {}", classes.len(), q + 1));
        }
        let mut line_through = vec![vec![usize::MAX; q * q]; q + 1];
        for (i, class) in classes.iter().enumerate() {
            for &l in class {
                for &pt in plane.block(l) {
                    line_through[i][pt] = l;
                }
            }
        }
        Ok(AffinePlaneContext {
            q,
            plane,
            classes,
            line_through,
        })
    }

    /// The Desarguesian plane AG(2, q).
    pub fn galois(q: usize) -> Result<Self> {
        Self::new(ag_design(2, 1, q)?.design)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn plane(&self) -> &BlockDesign {
        &self.plane
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn line_through(&self, class: usize, point: usize) -> usize {
        self.line_through[class][point]
    }

    /// `U_A`: symbols are lines, row `i` misses class `i`, column `j` holds the lines through point `j`.
    pub fn uta(&self) -> Uta {
        let q = self.q;
        let rows = (0..=q)
            .map(|i| (0..self.plane.b()).filter(|l| !self.classes[i].contains(l)).collect())
            .collect();
        let cols = (0..q * q)
            .map(|p| (0..=q).map(|i| self.line_through[i][p]).collect())
            .collect();
        Uta::new(self.plane.b(), rows, cols).expect("lines are symbols")
    }
}

/// Groups `V_i`: the symbols missing from row `i`, for a `((q+1) x q^2, q(q+1))` UTA.
pub fn uta_is_resolvable_affine(u: &Uta) -> Result<ResolutionWitness> {
    let p = u.verify()?;
    let r = u.r();
    if r < 3 || u.c() != (r - 1) * (r - 1) || u.v() != r * (r - 1) {
        return Err(Error::Params(format!("{p} is not of the form ((q+1) x q^2, q(q+1))")));
    }
    let mut groups = Vec::with_capacity(r);
    let mut group_rows = Vec::with_capacity(r);
    for i in 0..r {
        groups.push(
            (0..u.v())
                .filter(|x| u.row_sets()[i].binary_search(x).is_err())
                .collect::<Vec<usize>>(),
        );
        group_rows.push((0..r).filter(|&s| s != i).collect());
    }
    for (j, col) in u.col_sets().iter().enumerate() {
        for (i, g) in groups.iter().enumerate() {
            let n = g.iter().filter(|x| col.binary_search(x).is_ok()).count();
            if n != 1 {
                return Err(Error::Consistency(format!(
                    "column {j} meets the symbols missing from row {i} {n} times"
                )));
            }
        }
    }
    Ok(ResolutionWitness { groups, group_rows })
}

/// `sigma[p][i]`: the row holding the class-`i` line through point `p`.
pub type DerangementAssignment = Vec<Vec<usize>>;

/// All derangements of `0..n` in lexicographic order.
pub fn derangements(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == n {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if x != i && !used[x] {
                used[x] = true;
                cur.push(x);
                go(n, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    go(n, &mut cur, &mut used, &mut out);
    out
}

/// Checks both conditions: every `sigma_p` is a derangement, and collinear points disagree on their line's class.
pub fn check_derangements(ctx: &AffinePlaneContext, d: &DerangementAssignment) -> Result<()> {
    let q = ctx.q;
    if d.len() != q * q {
        return invalid(format!("expected {} permutations, found {}", q * q, d.len()));
    }
    for (p, s) in d.iter().enumerate() {
        let mut seen = vec![false; q + 1];
        if s.len() != q + 1 || s.iter().any(|&x| x > q || std::mem::replace(&mut seen[x], true)) {
            return invalid(format!("sigma at point {p} is not a permutation of 0..{q}"));
        }
        if let Some(i) = (0..=q).find(|&i| s[i] == i) {
            return invalid(format!("sigma at point {p} fixes {i}"));
        }
    }
    for (i, class) in ctx.classes.iter().enumerate() {
        for &l in class {
            let mut seen = vec![false; q + 1];
            for &p in ctx.plane.block(l) {
                if std::mem::replace(&mut seen[d[p][i]], true) {
                    return invalid(format!("two points of line {l} send class {i} to row {}", d[p][i]));
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DerangementStats {
    pub nodes: u64,
    pub solutions: u64,
    pub complete: bool,
    pub budget_exhausted: bool,
}

struct DerangementSearch<'a> {
    ctx: &'a AffinePlaneContext,
    perms: Vec<Vec<usize>>,
    /// `used[line]`: bitmask of rows already taken on that line.
    used: Vec<u64>,
    current: Vec<usize>,
    nodes: u64,
    solutions: u64,
    budget: u64,
    exhausted: bool,
}

impl DerangementSearch<'_> {
    fn run<F: FnMut(&[usize]) -> ControlFlow<()>>(&mut self, f: &mut F) -> ControlFlow<()> {
        let p = self.current.len();
        let q = self.ctx.q;
        if p == q * q {
            self.solutions += 1;
            return f(&self.current);
        }
        for k in 0..self.perms.len() {
            let fits = (0..=q).all(|i| self.used[self.ctx.line_through[i][p]] >> self.perms[k][i] & 1 == 0);
            if !fits {
                continue;
            }
            if self.nodes >= self.budget {
                self.exhausted = true;
                return ControlFlow::Break(());
            }
            self.nodes += 1;
            for i in 0..=q {
                self.used[self.ctx.line_through[i][p]] |= 1 << self.perms[k][i];
            }
            self.current.push(k);
            let flow = self.run(f);
            self.current.pop();
            for i in 0..=q {
                self.used[self.ctx.line_through[i][p]] &= !(1 << self.perms[k][i]);
            }
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Backtracking over points in order, trying derangements in lexicographic order.
///
/// Each solution is handed to `f` as an assignment.
pub fn for_each_derangement_solution<F: FnMut(&DerangementAssignment) -> ControlFlow<()>>(
    ctx: &AffinePlaneContext,
    budget: Option<u64>,
    mut f: F,
) -> DerangementStats {
    let perms = derangements(ctx.q + 1);
    let mut s = DerangementSearch {
        ctx,
        used: vec![0; ctx.plane.b()],
        current: Vec::with_capacity(ctx.q * ctx.q),
        nodes: 0,
        solutions: 0,
        budget: budget.unwrap_or(u64::MAX),
        exhausted: false,
        perms,
    };
    let perms = s.perms.clone();
    let flow = s.run(&mut |idx: &[usize]| f(&idx.iter().map(|&k| perms[k].clone()).collect()));
    DerangementStats {
        nodes: s.nodes,
        solutions: s.solutions,
        complete: flow.is_continue(),
        budget_exhausted: s.exhausted,
    }
}

pub fn solve_derangements(
    ctx: &AffinePlaneContext,
    budget: Option<u64>,
) -> (Option<DerangementAssignment>, DerangementStats) {
    let mut found = None;
    let stats = for_each_derangement_solution(ctx, budget, |d| {
        found = Some(d.clone());
        ControlFlow::Break(())
    });
    (found, stats)
}

pub fn count_derangement_solutions(ctx: &AffinePlaneContext, budget: Option<u64>) -> DerangementStats {
    for_each_derangement_solution(ctx, budget, |_| ControlFlow::Continue(()))
}

/// Places the class-`i` line through point `j` in cell `(sigma_j(i), j)`.
pub fn derangements_to_ta(ctx: &AffinePlaneContext, d: &DerangementAssignment) -> Result<TripleArray> {
    check_derangements(ctx, d)?;
    let (r, c) = (ctx.q + 1, ctx.q * ctx.q);
    let mut grid = vec![0; r * c];
    for j in 0..c {
        for i in 0..r {
            grid[d[j][i] * c + j] = ctx.line_through[i][j];
        }
    }
    TripleArray::new(r, c, ctx.plane.b(), grid)
}

/// Reads the assignment back off a triple array whose underlying UTA is `ctx.uta()`.
pub fn ta_to_derangements(ctx: &AffinePlaneContext, t: &TripleArray) -> Result<DerangementAssignment> {
    let (r, c) = (ctx.q + 1, ctx.q * ctx.q);
    if (t.r(), t.c()) != (r, c) {
        return invalid(format!("expected a {r} x {c} array"));
    }
    let mut d = vec![vec![usize::MAX; r]; c];
    for j in 0..c {
        for i in 0..r {
            let line = ctx.line_through[i][j];
            match (0..r).find(|&s| t.get(s, j) == line) {
                Some(s) => d[j][i] = s,
                None => return invalid(format!("line {line} is missing from column {j}")),
            }
        }
    }
    check_derangements(ctx, &d)?;
    Ok(d)
}

/// The `(q+1)`-graph whose `(q+1)`-partitions correspond to derangement solutions.
///
/// Vertex `v_ij` is `i * q^2 + j`, vertex `w_i` is `(q+1) q^2 + i`.
/// Edges: `e(p_j)` for each point, `e(l)` for each line class by class, then `e_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitenessInstance {
    pub q: usize,
    pub vertices: usize,
    pub edges: Vec<Vec<usize>>,
}

impl PartitenessInstance {
    pub fn v(&self, i: usize, j: usize) -> usize {
        i * self.q * self.q + j
    }

    pub fn w(&self, i: usize) -> usize {
        (self.q + 1) * self.q * self.q + i
    }

    pub fn is_linear(&self) -> bool {
        let sets: Vec<Vec<usize>> = self
            .edges
            .iter()
            .map(|e| {
                let mut e = e.clone();
                e.sort_unstable();
                e
            })
            .collect();
        (0..sets.len()).all(|a| {
            (a + 1..sets.len()).all(|b| sets[a].iter().filter(|x| sets[b].binary_search(x).is_ok()).count() <= 1)
        })
    }

    /// Whether `part` (a part index in `0..=q` per vertex) meets every edge once in each part.
    pub fn check_partition(&self, part: &[usize]) -> bool {
        let k = self.q + 1;
        part.len() == self.vertices
            && part.iter().all(|&x| x < k)
            && self.edges.iter().all(|e| {
                let mut seen = vec![false; k];
                e.len() == k && e.iter().all(|&x| !std::mem::replace(&mut seen[part[x]], true))
            })
    }
}

pub fn build_partiteness_instance(ctx: &AffinePlaneContext) -> PartitenessInstance {
    let q = ctx.q;
    let qq = q * q;
    let mut inst = PartitenessInstance {
        q,
        vertices: (q + 1) * qq + q + 1,
        edges: Vec::new(),
    };
    for j in 0..qq {
        inst.edges.push((0..=q).map(|i| inst.v(i, j)).collect());
    }
    for (i, class) in ctx.classes.iter().enumerate() {
        for &l in class {
            let mut e: Vec<usize> = ctx.plane.block(l).iter().map(|&j| inst.v(i, j)).collect();
            e.push(inst.w(i));
            inst.edges.push(e);
        }
    }
    inst.edges.push((0..=q).map(|i| inst.w(i)).collect());
    inst
}

/// `V_s` holds `w_s` and every `v_ij` with `sigma_j(i) = s`.
pub fn partition_from_derangements(inst: &PartitenessInstance, d: &DerangementAssignment) -> Vec<usize> {
    let q = inst.q;
    let mut part = vec![0; inst.vertices];
    for (j, s) in d.iter().enumerate() {
        for i in 0..=q {
            part[inst.v(i, j)] = s[i];
        }
    }
    for i in 0..=q {
        part[inst.w(i)] = i;
    }
    part
}

/// Renames parts so that `w_i` lies in part `i`, then reads `sigma_j(i)` off `v_ij`.
pub fn derangements_from_partition(inst: &PartitenessInstance, part: &[usize]) -> Result<DerangementAssignment> {
    if !inst.check_partition(part) {
        return invalid("not a partition meeting every edge once per part");
    }
    let q = inst.q;
    let mut rename = vec![0; q + 1];
    for i in 0..=q {
        rename[part[inst.w(i)]] = i;
    }
    Ok((0..q * q)
        .map(|j| (0..=q).map(|i| rename[part[inst.v(i, j)]]).collect())
        .collect())
}

/// Solves the partition problem through the derangement search and checks the result directly.
pub fn solve_partiteness(
    ctx: &AffinePlaneContext,
    inst: &PartitenessInstance,
    budget: Option<u64>,
) -> Result<(Option<Vec<usize>>, DerangementStats)> {
    let (d, stats) = solve_derangements(ctx, budget);
    let Some(d) = d else {
        return Ok((None, stats));
    };
    let part = partition_from_derangements(inst, &d);
    if !inst.check_partition(&part) {
        return Err(Error::Consistency(
            "derangement solution does not give a valid partition".into(),
        ));
    }
    Ok((Some(part), stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrays::admissible_up_to_rows;

    #[test]
    fn derangement_numbers() {
        let n: Vec<usize> = (1..=6).map(|k| derangements(k).len()).collect();
        assert_eq!(n, vec![0, 1, 2, 9, 44, 265]);
    }

    #[test]
    fn collapse_matches_admissible_sets() {
        assert_eq!(collapse_params(3).unwrap(), (4, 6));
        assert_eq!(collapse_params(5).unwrap(), (16, 20));
        assert!(collapse_params(2).is_err());
        for p in admissible_up_to_rows(25) {
            if p.e_int() == Some(p.r - 1) {
                assert_eq!(collapse_params(p.r).unwrap(), (p.c, p.v), "{p}");
            }
        }
    }

    #[test]
    fn order_two_has_no_solution() {
        let ctx = AffinePlaneContext::galois(2).unwrap();
        let stats = count_derangement_solutions(&ctx, None);
        assert!(stats.complete);
        assert_eq!(stats.solutions, 0);
    }

    #[test]
    fn order_three_solutions_match_orderings() {
        let ctx = AffinePlaneContext::galois(3).unwrap();
        let stats = count_derangement_solutions(&ctx, None);
        assert_eq!(stats.solutions, 144);
        let u = ctx.uta();
        let (d, _) = solve_derangements(&ctx, None);
        let d = d.unwrap();
        let t = derangements_to_ta(&ctx, &d).unwrap();
        t.verify().unwrap();
        assert_eq!(t.uta().unwrap(), u);
        assert_eq!(ta_to_derangements(&ctx, &t).unwrap(), d);
    }

    #[test]
    fn partiteness_instance_shape() {
        for q in [2, 3, 4] {
            let ctx = AffinePlaneContext::galois(q).unwrap();
            let inst = build_partiteness_instance(&ctx);
            assert_eq!(inst.vertices, (q + 1) * q * q + q + 1);
            assert_eq!(inst.edges.len(), q * q + q * q + q + 1);
            assert!(inst.is_linear());
        }
    }

    #[test]
    fn partition_round_trip() {
        let ctx = AffinePlaneContext::galois(3).unwrap();
        let inst = build_partiteness_instance(&ctx);
        let (part, _) = solve_partiteness(&ctx, &inst, None).unwrap();
        let part = part.unwrap();
        let mut shuffled = part.clone();
        for x in &mut shuffled {
            *x = (*x + 1) % 4;
        }
        let d = derangements_from_partition(&inst, &shuffled).unwrap();
        check_derangements(&ctx, &d).unwrap();
        assert_eq!(partition_from_derangements(&inst, &d), part);
    }

    #[test]
    fn affine_witness_partitions_symbols() {
        let ctx = AffinePlaneContext::galois(4).unwrap();
        let w = uta_is_resolvable_affine(&ctx.uta()).unwrap();
        assert_eq!(w.groups.len(), 5);
        assert!(w.groups.iter().all(|g| g.len() == 4));
    }
}
