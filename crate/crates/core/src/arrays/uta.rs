use super::params::{params_for, ArrayParams};
use crate::design::BlockDesign;
use crate::error::{invalid, parse_err, Error, Result};
use crate::text::{header, join, Lines};

/// An unordered triple array: `r` row-sets and `c` column-sets over symbols `0..v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Uta {
    v: usize,
    rows: Vec<Vec<usize>>,
    cols: Vec<Vec<usize>>,
}

/// How the symbols of a resolvable UTA split into groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionWitness {
    /// Symbol groups, ordered by smallest member.
    pub groups: Vec<Vec<usize>>,
    /// `group_rows[g]` lists the rows whose row-set contains group `g`.
    pub group_rows: Vec<Vec<usize>>,
}

fn sorted_set(mut s: Vec<usize>, v: usize, what: &str) -> Result<Vec<usize>> {
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return invalid(format!("{what} repeats a symbol"));
    }
    if s.last().is_some_and(|&x| x >= v) {
        return invalid(format!("{what} has a symbol outside 0..{v}"));
    }
    Ok(s)
}

impl Uta {
    pub fn new(v: usize, rows: Vec<Vec<usize>>, cols: Vec<Vec<usize>>) -> Result<Self> {
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, s)| sorted_set(s, v, &format!("row-set {i}")))
            .collect::<Result<Vec<_>>>()?;
        let cols = cols
            .into_iter()
            .enumerate()
            .map(|(j, s)| sorted_set(s, v, &format!("column-set {j}")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Uta { v, rows, cols })
    }

    pub fn r(&self) -> usize {
        self.rows.len()
    }

    pub fn c(&self) -> usize {
        self.cols.len()
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn row_sets(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn col_sets(&self) -> &[Vec<usize>] {
        &self.cols
    }

    pub fn params(&self) -> Result<ArrayParams> {
        params_for(self.r(), self.c(), self.v)
    }

    pub fn transpose(&self) -> Uta {
        Uta {
            v: self.v,
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }

    fn membership(&self, sets: &[Vec<usize>]) -> Vec<Vec<bool>> {
        sets.iter()
            .map(|s| {
                let mut m = vec![false; self.v];
                for &x in s {
                    m[x] = true;
                }
                m
            })
            .collect()
    }

    /// `R_i ∩ C_j` in increasing order.
    pub fn cell_candidates(&self, i: usize, j: usize) -> Vec<usize> {
        self.rows[i]
            .iter()
            .copied()
            .filter(|x| self.cols[j].binary_search(x).is_ok())
            .collect()
    }

    /// `|R_i ∩ R_s ∩ C_j|`.
    pub fn triple_intersection(&self, i: usize, s: usize, j: usize) -> usize {
        self.rows[i]
            .iter()
            .filter(|x| self.rows[s].binary_search(x).is_ok() && self.cols[j].binary_search(x).is_ok())
            .count()
    }

    /// Checks every defining property and returns the parameters.
    pub fn verify(&self) -> Result<ArrayParams> {
        let (r, c, v) = (self.r(), self.c(), self.v);
        let p = self.params()?;
        let Some(e) = p.e_int() else {
            return invalid(format!("v={v} does not divide rc={}", r * c));
        };
        for (i, s) in self.rows.iter().enumerate() {
            if s.len() != c {
                return invalid(format!("row-set {i} has {} symbols, expected {c}", s.len()));
            }
        }
        for (j, s) in self.cols.iter().enumerate() {
            if s.len() != r {
                return invalid(format!("column-set {j} has {} symbols, expected {r}", s.len()));
            }
        }
        let rm = self.membership(&self.rows);
        let cm = self.membership(&self.cols);
        for x in 0..v {
            let in_rows = rm.iter().filter(|m| m[x]).count();
            let in_cols = cm.iter().filter(|m| m[x]).count();
            if in_rows != e || in_cols != e {
                return invalid(format!(
                    "symbol {x} is in {in_rows} row-sets and {in_cols} column-sets, expected {e}"
                ));
            }
        }
        let count = |a: &[bool], b: &[bool]| a.iter().zip(b).filter(|(x, y)| **x && **y).count();
        for i in 0..r {
            for j in 0..c {
                let n = count(&rm[i], &cm[j]);
                if n != e {
                    return invalid(format!("|R{i} ∩ C{j}| = {n}, expected {e}"));
                }
            }
        }
        let check_pairs = |m: &[Vec<bool>], what: &str| -> Result<()> {
            let mut lambda = None;
            for a in 0..m.len() {
                for b in a + 1..m.len() {
                    let n = count(&m[a], &m[b]);
                    match lambda {
                        None => lambda = Some(n),
                        Some(l) if l != n => {
                            return invalid(format!("{what} {a},{b} share {n} symbols but earlier pairs share {l}"))
                        }
                        _ => {}
                    }
                }
            }
            Ok(())
        };
        check_pairs(&rm, "row-sets")?;
        check_pairs(&cm, "column-sets")?;
        Ok(p)
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_ok()
    }

    /// Points are the rows; symbol `x` gives the block of rows whose row-set contains `x`.
    pub fn row_design(&self) -> BlockDesign {
        BlockDesign::new(self.r(), self.symbol_blocks(&self.rows)).expect("in range")
    }

    /// Points are the columns; symbol `x` gives the block of columns whose column-set contains `x`.
    pub fn col_design(&self) -> BlockDesign {
        BlockDesign::new(self.c(), self.symbol_blocks(&self.cols)).expect("in range")
    }

    fn symbol_blocks(&self, sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.v];
        for (i, s) in sets.iter().enumerate() {
            for &x in s {
                blocks[x].push(i);
            }
        }
        blocks
    }

    /// The first triple `(i, s, j)` with `i < s` whose intersection differs from `lambda_rrc`.
    ///
    /// Returns `Some` with the offending count, or with `usize::MAX` as the row
    /// indices when `lambda_rrc` is not an integer.
    pub fn quad_violation(&self) -> Option<(usize, usize, usize, usize)> {
        let p = self.params().ok()?;
        let Some(l) = p.lambda_rrc_int() else {
            return Some((usize::MAX, usize::MAX, usize::MAX, 0));
        };
        for i in 0..self.r() {
            for s in i + 1..self.r() {
                for j in 0..self.c() {
                    let n = self.triple_intersection(i, s, j);
                    if n != l {
                        return Some((i, s, j, n));
                    }
                }
            }
        }
        None
    }

    pub fn is_quad(&self) -> bool {
        self.quad_violation().is_none()
    }

    /// Groups symbols by the set of rows containing them and checks the resolvability conditions.
    pub fn detect_resolution(&self) -> Option<ResolutionWitness> {
        let p = self.params().ok()?;
        let k = p.k_int()?;
        p.lambda_rrc_int()?;
        let rd = self.row_design();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut group_rows: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.v {
            let rows = rd.block(x);
            match group_rows.iter().position(|g| g.as_slice() == rows) {
                Some(g) => groups[g].push(x),
                None => {
                    groups.push(vec![x]);
                    group_rows.push(rows.to_vec());
                }
            }
        }
        if groups.len() != self.r() || groups.iter().any(|g| g.len() != k) {
            return None;
        }
        let w = ResolutionWitness { groups, group_rows };
        self.check_groups(&w.groups).then_some(w)
    }

    fn check_groups(&self, groups: &[Vec<usize>]) -> bool {
        let mut group_of = vec![usize::MAX; self.v];
        for (g, members) in groups.iter().enumerate() {
            for &x in members {
                group_of[x] = g;
            }
        }
        self.cols.iter().all(|col| {
            let mut seen = vec![0usize; groups.len()];
            for &x in col {
                seen[group_of[x]] += 1;
            }
            seen.iter().all(|&n| n == 1)
        })
    }

    pub fn is_resolvable(&self) -> bool {
        self.detect_resolution().is_some()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.r(), self.c(), self.v);
        for set in self.rows.iter().chain(&self.cols) {
            s.push_str(&join(set));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        Self::parse(text, 0)
    }

    /// Parses a file whose symbols start at 1.
    pub fn from_text_one_based(text: &str) -> Result<Self> {
        Self::parse(text, 1)
    }

    fn parse(text: &str, base: usize) -> Result<Self> {
        let mut lines = Lines::new(text);
        let h = header(&mut lines, "UTA", 3)?;
        let (r, c, v) = (h[0], h[1], h[2]);
        let mut read_sets = |n: usize, what: &str| -> Result<Vec<Vec<usize>>> {
            (0..n)
                .map(|_| {
                    let nums = lines.numbers(what)?;
                    nums.into_iter()
                        .map(|x| {
                            x.checked_sub(base).ok_or_else(|| Error::Parse {
                                line: lines.line_no(),
                                msg: "symbol 0 in a one-based file".into(),
                            })
                        })
                        .collect()
                })
                .collect()
        };
        let rows = read_sets(r, "row-set")?;
        let cols = read_sets(c, "column-set")?;
        if !lines.at_end() {
            return parse_err(lines.line_no() + 1, "trailing content after UTA");
        }
        Uta::new(v, rows, cols)
    }
}
