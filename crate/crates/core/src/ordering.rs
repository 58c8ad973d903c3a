//! Turning an unordered triple array into triple arrays via exact cover.
//!
//! Items are the cells `x_ij`, the pairs `y_ia` (symbol `a` placed in row `i`)
//! and the pairs `z_ja` (symbol `a` placed in column `j`). Placing `a` in
//! cell `(i, j)` covers `x_ij`, `y_ia` and `z_ja`.

use std::ops::ControlFlow;

use crate::arrays::{TripleArray, Uta};
use crate::error::{invalid, Result};
use crate::exact_cover::{ExactCover, SearchStats};

#[derive(Debug, Clone)]
pub struct OrderingInstance {
    uta: Uta,
    cover: ExactCover,
    /// `(row, column, symbol)` of each option.
    placements: Vec<(usize, usize, usize)>,
}

pub fn build_ordering_instance(u: &Uta) -> Result<OrderingInstance> {
    let (r, c) = (u.r(), u.c());
    if u.row_sets().iter().any(|s| s.len() != c) || u.col_sets().iter().any(|s| s.len() != r) {
        return invalid("row-sets need c symbols and column-sets need r symbols");
    }
    let rc = r * c;
    let mut options = Vec::new();
    let mut placements = Vec::new();
    for i in 0..r {
        for j in 0..c {
            for a in u.cell_candidates(i, j) {
                let ya = u.row_sets()[i].binary_search(&a).expect("a in R_i");
                let za = u.col_sets()[j].binary_search(&a).expect("a in C_j");
                options.push(vec![i * c + j, rc + i * c + ya, 2 * rc + j * r + za]);
                placements.push((i, j, a));
            }
        }
    }
    Ok(OrderingInstance {
        uta: u.clone(),
        cover: ExactCover::new(3 * rc, options)?,
        placements,
    })
}

impl OrderingInstance {
    pub fn cover(&self) -> &ExactCover {
        &self.cover
    }

    pub fn uta(&self) -> &Uta {
        &self.uta
    }

    pub fn placements(&self) -> &[(usize, usize, usize)] {
        &self.placements
    }

    /// Writes the symbols chosen by `solution` into a row-major grid.
    pub fn fill(&self, solution: &[usize], grid: &mut [usize]) {
        let c = self.uta.c();
        for &k in solution {
            let (i, j, a) = self.placements[k];
            grid[i * c + j] = a;
        }
    }

    pub fn decode(&self, solution: &[usize]) -> TripleArray {
        let mut grid = vec![0; self.uta.r() * self.uta.c()];
        self.fill(solution, &mut grid);
        TripleArray::new(self.uta.r(), self.uta.c(), self.uta.v(), grid).expect("symbols in range")
    }

    /// Hands each ordering, as a row-major grid, to `f`.
    pub fn for_each_grid<F: FnMut(&[usize]) -> ControlFlow<()>>(&self, budget: Option<u64>, mut f: F) -> SearchStats {
        let mut grid = vec![0; self.uta.r() * self.uta.c()];
        self.cover.solver().for_each(budget, |sol| {
            self.fill(sol, &mut grid);
            f(&grid)
        })
    }
}

/// Outcome of looking for one ordering.
#[derive(Debug, Clone)]
pub enum OrderResult {
    Found(TripleArray),
    Absent,
    BudgetExhausted { nodes: u64 },
}

/// Searches for a triple array whose underlying UTA is `u`.
pub fn order_uta(u: &Uta, budget: Option<u64>) -> Result<OrderResult> {
    let inst = build_ordering_instance(u)?;
    let (sol, stats) = inst.cover.first(budget);
    Ok(match sol {
        Some(s) => OrderResult::Found(inst.decode(&s)),
        None if stats.budget_exhausted => OrderResult::BudgetExhausted { nodes: stats.nodes },
        None => OrderResult::Absent,
    })
}

/// Number of labelled orderings of `u`.
pub fn count_orderings(u: &Uta, budget: Option<u64>) -> Result<SearchStats> {
    Ok(build_ordering_instance(u)?.cover.count(budget))
}
