//! Exact cover by dancing links, with minimum-remaining-values item choice.
//!
//! Ties between items of equal length go to the lowest item index, so search
//! order and solution order are deterministic.

use std::ops::ControlFlow;

use crate::error::{invalid, parse_err, Result};
use crate::text::{header, join, Lines};

/// Items `0..items`; each option is a set of items, and a solution picks
/// options covering every item exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCover {
    items: usize,
    options: Vec<Vec<usize>>,
}

impl ExactCover {
    pub fn new(items: usize, options: Vec<Vec<usize>>) -> Result<Self> {
        for (k, o) in options.iter().enumerate() {
            if o.is_empty() {
                return invalid(format!("option {k} is empty"));
            }
            if let Some(&x) = o.iter().find(|&&x| x >= items) {
                return invalid(format!("option {k} names item {x} outside 0..{items}"));
            }
            let mut s = o.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("option {k} repeats an item"));
            }
        }
        Ok(ExactCover { items, options })
    }

    pub fn items(&self) -> usize {
        self.items
    }

    pub fn options(&self) -> &[Vec<usize>] {
        &self.options
    }

    /// Whether the chosen options cover every item exactly once.
    pub fn is_solution(&self, chosen: &[usize]) -> bool {
        let mut seen = vec![false; self.items];
        for &k in chosen {
            let Some(o) = self.options.get(k) else {
                return false;
            };
            for &x in o {
                if std::mem::replace(&mut seen[x], true) {
                    return false;
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.items, self.options.len());
        for o in &self.options {
            s.push_str(&join(o));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        let h = header(&mut lines, "exact cover", 2)?;
        let mut options = Vec::with_capacity(h[1]);
        for _ in 0..h[1] {
            options.push(lines.numbers("option")?);
        }
        if !lines.at_end() {
            return parse_err(lines.line_no() + 1, "trailing content after options");
        }
        ExactCover::new(h[0], options)
    }

    pub fn solver(&self) -> Solver {
        Solver::new(self)
    }

    pub fn first(&self, budget: Option<u64>) -> (Option<Vec<usize>>, SearchStats) {
        let mut found = None;
        let stats = self.solver().for_each(budget, |s| {
            found = Some(s.to_vec());
            ControlFlow::Break(())
        });
        (found, stats)
    }

    pub fn count(&self, budget: Option<u64>) -> SearchStats {
        self.solver().for_each(budget, |_| ControlFlow::Continue(()))
    }
}

/// Counters from one search. `complete` is false when the node budget ran out
/// or the callback stopped the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub nodes: u64,
    pub solutions: u64,
    pub complete: bool,
    pub budget_exhausted: bool,
}

pub struct Solver {
    items: usize,
    llink: Vec<u32>,
    rlink: Vec<u32>,
    len: Vec<u32>,
    ulink: Vec<u32>,
    dlink: Vec<u32>,
    top: Vec<u32>,
    opt_of: Vec<u32>,
    opt_start: Vec<u32>,
    opt_end: Vec<u32>,
    chosen: Vec<usize>,
    nodes: u64,
    solutions: u64,
    budget: u64,
    exhausted: bool,
}

impl Solver {
    fn new(ec: &ExactCover) -> Solver {
        let n = ec.items;
        let total = n + 1 + ec.options.iter().map(Vec::len).sum::<usize>();
        let mut s = Solver {
            items: n,
            llink: (0..=n as u32).map(|i| if i == 0 { n as u32 } else { i - 1 }).collect(),
            rlink: (0..=n as u32)
                .map(|i| if i as usize == n { 0 } else { i + 1 })
                .collect(),
            len: vec![0; n + 1],
            ulink: (0..total as u32).collect(),
            dlink: (0..total as u32).collect(),
            top: vec![0; total],
            opt_of: vec![0; total],
            opt_start: Vec::with_capacity(ec.options.len()),
            opt_end: Vec::with_capacity(ec.options.len()),
            chosen: Vec::new(),
            nodes: 0,
            solutions: 0,
            budget: u64::MAX,
            exhausted: false,
        };
        let mut next = n + 1;
        for (k, o) in ec.options.iter().enumerate() {
            s.opt_start.push(next as u32);
            for &item in o {
                let h = item + 1;
                let node = next as u32;
                let last = s.ulink[h];
                s.ulink[node as usize] = last;
                s.dlink[node as usize] = h as u32;
                s.dlink[last as usize] = node;
                s.ulink[h] = node;
                s.top[node as usize] = h as u32;
                s.opt_of[node as usize] = k as u32;
                s.len[h] += 1;
                next += 1;
            }
            s.opt_end.push(next as u32);
        }
        s
    }

    #[inline]
    fn hide(&mut self, p: u32) {
        let k = self.opt_of[p as usize] as usize;
        for q in self.opt_start[k]..self.opt_end[k] {
            if q == p {
                continue;
            }
            let (u, d) = (self.ulink[q as usize], self.dlink[q as usize]);
            self.dlink[u as usize] = d;
            self.ulink[d as usize] = u;
            self.len[self.top[q as usize] as usize] -= 1;
        }
    }

    #[inline]
    fn unhide(&mut self, p: u32) {
        let k = self.opt_of[p as usize] as usize;
        for q in (self.opt_start[k]..self.opt_end[k]).rev() {
            if q == p {
                continue;
            }
            let (u, d) = (self.ulink[q as usize], self.dlink[q as usize]);
            self.dlink[u as usize] = q;
            self.ulink[d as usize] = q;
            self.len[self.top[q as usize] as usize] += 1;
        }
    }

    fn cover(&mut self, i: u32) {
        let mut p = self.dlink[i as usize];
        while p != i {
            self.hide(p);
            p = self.dlink[p as usize];
        }
        let (l, r) = (self.llink[i as usize], self.rlink[i as usize]);
        self.rlink[l as usize] = r;
        self.llink[r as usize] = l;
    }

    fn uncover(&mut self, i: u32) {
        let (l, r) = (self.llink[i as usize], self.rlink[i as usize]);
        self.rlink[l as usize] = i;
        self.llink[r as usize] = i;
        let mut p = self.ulink[i as usize];
        while p != i {
            self.unhide(p);
            p = self.ulink[p as usize];
        }
    }

    fn choose_item(&self) -> Option<u32> {
        let mut best = None;
        let mut best_len = u32::MAX;
        let mut i = self.rlink[0];
        while i != 0 {
            let l = self.len[i as usize];
            if l < best_len {
                best_len = l;
                best = Some(i);
                if l == 0 {
                    break;
                }
            }
            i = self.rlink[i as usize];
        }
        best
    }

    fn search<F: FnMut(&[usize]) -> ControlFlow<()>>(&mut self, f: &mut F) -> ControlFlow<()> {
        let Some(i) = self.choose_item() else {
            self.solutions += 1;
            return f(&self.chosen);
        };
        if self.len[i as usize] == 0 {
            return ControlFlow::Continue(());
        }
        self.cover(i);
        let mut p = self.dlink[i as usize];
        let mut flow = ControlFlow::Continue(());
        while p != i {
            if self.nodes >= self.budget {
                self.exhausted = true;
                flow = ControlFlow::Break(());
                break;
            }
            self.nodes += 1;
            let k = self.opt_of[p as usize] as usize;
            self.chosen.push(k);
            for q in self.opt_start[k]..self.opt_end[k] {
                if q != p {
                    self.cover(self.top[q as usize]);
                }
            }
            flow = self.search(f);
            for q in (self.opt_start[k]..self.opt_end[k]).rev() {
                if q != p {
                    self.uncover(self.top[q as usize]);
                }
            }
            self.chosen.pop();
            if flow.is_break() {
                break;
            }
            p = self.dlink[p as usize];
        }
        self.uncover(i);
        flow
    }

    /// Runs the search, handing each solution (option indices in choice order)
    /// to `f` until it breaks, the budget is spent or the space is exhausted.
    pub fn for_each<F: FnMut(&[usize]) -> ControlFlow<()>>(&mut self, budget: Option<u64>, mut f: F) -> SearchStats {
        self.budget = budget.unwrap_or(u64::MAX);
        self.nodes = 0;
        self.solutions = 0;
        self.exhausted = false;
        let flow = if self.items == 0 {
            self.solutions = 1;
            f(&[])
        } else {
            self.search(&mut f)
        };
        SearchStats {
            nodes: self.nodes,
            solutions: self.solutions,
            complete: flow.is_continue(),
            budget_exhausted: self.exhausted,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn knuth_example() -> ExactCover {
        // items a..g, the classic instance with a single solution
        ExactCover::new(
            7,
            vec![
                vec![2, 4],
                vec![0, 3, 6],
                vec![1, 2, 5],
                vec![0, 3, 5],
                vec![1, 6],
                vec![3, 4, 6],
            ],
        )
        .unwrap()
    }

    #[test]
    fn knuth_instance() {
        let ec = knuth_example();
        let (sol, _) = ec.first(None);
        let mut sol = sol.unwrap();
        sol.sort();
        assert_eq!(sol, vec![0, 3, 4]);
        let stats = ec.count(None);
        assert_eq!(stats.solutions, 1);
        assert!(stats.complete);
    }

    #[test]
    fn empty_instance_has_one_solution() {
        let ec = ExactCover::new(0, vec![]).unwrap();
        assert_eq!(ec.count(None).solutions, 1);
    }

    #[test]
    fn budget_stops_the_search() {
        let ec = knuth_example();
        let stats = ec.count(Some(1));
        assert!(stats.budget_exhausted && !stats.complete);
    }

    #[test]
    fn text_round_trip() {
        let ec = knuth_example();
        assert_eq!(ExactCover::from_text(&ec.to_text()).unwrap(), ec);
        assert!(ExactCover::from_text("2 1\n0 5\n").is_err());
    }

    fn brute(ec: &ExactCover) -> u64 {
        let m = ec.options().len();
        (0u32..1 << m)
            .filter(|mask| {
                let chosen: Vec<usize> = (0..m).filter(|k| mask >> k & 1 == 1).collect();
                ec.is_solution(&chosen)
            })
            .count() as u64
    }

    proptest! {
        #[test]
        fn count_matches_brute_force(
            items in 1usize..7,
            raw in proptest::collection::vec(proptest::collection::btree_set(0usize..7, 1..4), 0..16),
        ) {
            let options: Vec<Vec<usize>> = raw
                .into_iter()
                .map(|s| s.into_iter().filter(|&x| x < items).collect::<Vec<_>>())
                .filter(|o: &Vec<usize>| !o.is_empty())
                .collect();
            let ec = ExactCover::new(items, options).unwrap();
            let mut seen = Vec::new();
            let stats = ec.solver().for_each(None, |s| {
                let mut s = s.to_vec();
                s.sort();
                seen.push(s);
                ControlFlow::Continue(())
            });
            prop_assert_eq!(stats.solutions, brute(&ec));
            prop_assert!(seen.iter().all(|s| ec.is_solution(s)));
            let n = seen.len();
            seen.sort();
            seen.dedup();
            prop_assert_eq!(seen.len(), n);
        }
    }
}
