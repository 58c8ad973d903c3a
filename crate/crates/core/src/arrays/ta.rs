use super::params::ArrayParams;
use super::uta::Uta;
use crate::error::{invalid, parse_err, Error, Result};
use crate::text::{header, join, Lines};

/// An `r x c` array over symbols `0..v`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripleArray {
    r: usize,
    c: usize,
    v: usize,
    grid: Vec<usize>,
}

impl TripleArray {
    pub fn new(r: usize, c: usize, v: usize, grid: Vec<usize>) -> Result<Self> {
        if grid.len() != r * c {
            return invalid(format!("grid has {} cells, expected {}", grid.len(), r * c));
        }
        if let Some(&x) = grid.iter().find(|&&x| x >= v) {
            return invalid(format!("symbol {x} outside 0..{v}"));
        }
        Ok(TripleArray { r, c, v, grid })
    }

    pub fn from_rows(v: usize, rows: &[Vec<usize>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return invalid("rows have different lengths");
        }
        TripleArray::new(r, c, v, rows.concat())
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn grid(&self) -> &[usize] {
        &self.grid
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.grid[i * self.c + j]
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.grid[i * self.c..(i + 1) * self.c]
    }

    pub fn transpose(&self) -> TripleArray {
        let mut grid = Vec::with_capacity(self.grid.len());
        for j in 0..self.c {
            for i in 0..self.r {
                grid.push(self.get(i, j));
            }
        }
        TripleArray {
            r: self.c,
            c: self.r,
            v: self.v,
            grid,
        }
    }

    /// Row-sets and column-sets; fails when a row or column repeats a symbol.
    pub fn uta(&self) -> Result<Uta> {
        let rows = (0..self.r).map(|i| self.row(i).to_vec()).collect();
        let cols = (0..self.c)
            .map(|j| (0..self.r).map(|i| self.get(i, j)).collect())
            .collect();
        Uta::new(self.v, rows, cols).map_err(|e| Error::Invalid(format!("array is not binary: {e}")))
    }

    /// Checks binarity and the triple-array intersection conditions.
    pub fn verify(&self) -> Result<ArrayParams> {
        let u = self.uta()?;
        u.verify()
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_ok()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.r, self.c, self.v);
        for i in 0..self.r {
            s.push_str(&join(self.row(i)));
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
        let h = header(&mut lines, "triple array", 3)?;
        let (r, c, v) = (h[0], h[1], h[2]);
        let mut grid = Vec::with_capacity(r * c);
        for _ in 0..r {
            let row = lines.numbers("array row")?;
            if row.len() != c {
                return parse_err(lines.line_no(), format!("row has {} entries, expected {c}", row.len()));
            }
            for x in row {
                let Some(x) = x.checked_sub(base) else {
                    return parse_err(lines.line_no(), "symbol 0 in a one-based file");
                };
                grid.push(x);
            }
        }
        if !lines.at_end() {
            return parse_err(lines.line_no() + 1, "trailing content after array");
        }
        TripleArray::new(r, c, v, grid).map_err(|e| Error::Parse {
            line: lines.line_no(),
            msg: e.to_string(),
        })
    }
}

impl std::fmt::Display for TripleArray {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let w = self.v.saturating_sub(1).to_string().len();
        for i in 0..self.r {
            let cells: Vec<String> = self.row(i).iter().map(|x| format!("{x:>w$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
