//! Block designs, 2-designs and resolutions.

use crate::error::{invalid, parse_err, Error, Result};
use crate::text::{header, join, Lines};

/// A finite point set `0..v` with a multiset of blocks.
///
/// Blocks are stored sorted; repeated blocks are kept as separate entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockDesign {
    v: usize,
    blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwoDesignParams {
    pub v: usize,
    pub b: usize,
    pub r: usize,
    pub k: usize,
    pub lambda: usize,
}

impl TwoDesignParams {
    pub fn is_symmetric(&self) -> bool {
        self.v == self.b
    }
}

impl std::fmt::Display for TwoDesignParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "2-({},{},{})", self.v, self.k, self.lambda)
    }
}

impl BlockDesign {
    pub fn new(v: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut out = Vec::with_capacity(blocks.len());
        for (i, mut b) in blocks.into_iter().enumerate() {
            b.sort_unstable();
            if b.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("block {i} repeats a point"));
            }
            if let Some(&p) = b.last() {
                if p >= v {
                    return invalid(format!("block {i} contains point {p} outside 0..{v}"));
                }
            }
            out.push(b);
        }
        Ok(BlockDesign { v, blocks: out })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn contains(&self, block: usize, point: usize) -> bool {
        self.blocks[block].binary_search(&point).is_ok()
    }

    /// `incidence()[p]` lists the blocks through point `p`.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.v];
        for (i, b) in self.blocks.iter().enumerate() {
            for &p in b {
                inc[p].push(i);
            }
        }
        inc
    }

    pub fn complement(&self) -> BlockDesign {
        let blocks = self
            .blocks
            .iter()
            .map(|b| (0..self.v).filter(|p| b.binary_search(p).is_err()).collect())
            .collect();
        BlockDesign { v: self.v, blocks }
    }

    /// Points and blocks swap roles: point `i` of the dual is block `i`.
    pub fn dual(&self) -> BlockDesign {
        BlockDesign {
            v: self.b(),
            blocks: self.incidence(),
        }
    }

    /// Every block repeated `k` times, copies adjacent.
    pub fn multiple(&self, k: usize) -> BlockDesign {
        let mut blocks = Vec::with_capacity(self.b() * k);
        for b in &self.blocks {
            for _ in 0..k {
                blocks.push(b.clone());
            }
        }
        BlockDesign { v: self.v, blocks }
    }

    pub fn has_repeated_blocks(&self) -> bool {
        let mut sorted = self.blocks.clone();
        sorted.sort();
        sorted.windows(2).any(|w| w[0] == w[1])
    }

    /// Checks the 2-design axioms and returns the parameters.
    pub fn verify_2design(&self) -> Result<TwoDesignParams> {
        let b = self.b();
        if b == 0 {
            return Err(Error::Params("design has no blocks".into()));
        }
        let k = self.blocks[0].len();
        if let Some(i) = self.blocks.iter().position(|bl| bl.len() != k) {
            return Err(Error::Params(format!(
                "block {i} has size {} but block 0 has size {k}",
                self.blocks[i].len()
            )));
        }
        let inc = self.incidence();
        let r = inc.first().map_or(0, Vec::len);
        if let Some(p) = inc.iter().position(|bs| bs.len() != r) {
            return Err(Error::Params(format!(
                "point {p} lies in {} blocks but point 0 lies in {r}",
                inc[p].len()
            )));
        }
        let mut pair = vec![0usize; self.v * self.v];
        for bl in &self.blocks {
            for (i, &x) in bl.iter().enumerate() {
                for &y in &bl[i + 1..] {
                    pair[x * self.v + y] += 1;
                }
            }
        }
        let lambda = if self.v >= 2 { pair[1] } else { 0 };
        for x in 0..self.v {
            for y in x + 1..self.v {
                if pair[x * self.v + y] != lambda {
                    return Err(Error::Params(format!(
                        "points {x},{y} lie together in {} blocks, expected {lambda}",
                        pair[x * self.v + y]
                    )));
                }
            }
        }
        Ok(TwoDesignParams {
            v: self.v,
            b,
            r,
            k,
            lambda,
        })
    }

    pub fn is_2design(&self) -> bool {
        self.verify_2design().is_ok()
    }

    pub fn is_symmetric(&self) -> bool {
        self.verify_2design().map_or(false, |p| p.is_symmetric())
    }

    /// Relabels points by `perm[p]`; block order is kept.
    pub fn relabel_points(&self, perm: &[usize]) -> Result<BlockDesign> {
        if perm.len() != self.v {
            return invalid("point permutation has the wrong length");
        }
        BlockDesign::new(
            self.v,
            self.blocks
                .iter()
                .map(|b| b.iter().map(|&p| perm[p]).collect())
                .collect(),
        )
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.v, self.b());
        for b in &self.blocks {
            s.push_str(&join(b));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        let d = Self::read(&mut lines)?;
        if !lines.at_end() {
            return parse_err(lines.line_no() + 1, "trailing content after design");
        }
        Ok(d)
    }

    pub(crate) fn read(lines: &mut Lines<'_>) -> Result<Self> {
        let h = header(lines, "design", 2)?;
        let (v, b) = (h[0], h[1]);
        let mut blocks = Vec::with_capacity(b);
        for _ in 0..b {
            blocks.push(lines.numbers("block")?);
        }
        let at = lines.line_no();
        BlockDesign::new(v, blocks).map_err(|e| Error::Parse {
            line: at,
            msg: e.to_string(),
        })
    }
}

/// A partition of the blocks of a design into parallel classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    design: BlockDesign,
    classes: Vec<Vec<usize>>,
}

impl Resolution {
    /// Checks that every class partitions the point set and every block is used once.
    pub fn new(design: BlockDesign, classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut used = vec![false; design.b()];
        for (ci, class) in classes.iter().enumerate() {
            let mut covered = vec![false; design.v()];
            for &bi in class {
                if bi >= design.b() {
                    return invalid(format!("class {ci} names block {bi} which does not exist"));
                }
                if std::mem::replace(&mut used[bi], true) {
                    return invalid(format!("block {bi} appears in more than one class"));
                }
                for &p in design.block(bi) {
                    if std::mem::replace(&mut covered[p], true) {
                        return invalid(format!("class {ci} covers point {p} twice"));
                    }
                }
            }
            if let Some(p) = covered.iter().position(|c| !c) {
                return invalid(format!("class {ci} misses point {p}"));
            }
        }
        if let Some(bi) = used.iter().position(|u| !u) {
            return invalid(format!("block {bi} is in no class"));
        }
        Ok(Resolution { design, classes })
    }

    pub fn design(&self) -> &BlockDesign {
        &self.design
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn to_text(&self) -> String {
        let mut s = self.design.to_text();
        s.push_str(&format!("classes {}\n", self.classes.len()));
        for c in &self.classes {
            s.push_str(&join(c));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        let r = Self::read(&mut lines)?;
        if !lines.at_end() {
            return parse_err(lines.line_no() + 1, "trailing content after resolution");
        }
        Ok(r)
    }

    pub(crate) fn read(lines: &mut Lines<'_>) -> Result<Self> {
        let design = BlockDesign::read(lines)?;
        let line = lines.expect_content("classes header")?;
        let n = match line.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["classes", n] => n.parse::<usize>().ok(),
            _ => None,
        };
        let Some(n) = n else {
            return parse_err(lines.line_no(), "expected `classes <count>`");
        };
        let mut classes = Vec::with_capacity(n);
        for _ in 0..n {
            classes.push(lines.numbers("class")?);
        }
        let at = lines.line_no();
        Resolution::new(design, classes).map_err(|e| Error::Parse {
            line: at,
            msg: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> BlockDesign {
        BlockDesign::new(
            7,
            vec![
                vec![0, 1, 2],
                vec![0, 4, 5],
                vec![0, 3, 6],
                vec![2, 3, 4],
                vec![1, 3, 5],
                vec![1, 4, 6],
                vec![2, 5, 6],
            ],
        )
        .unwrap()
    }

    #[test]
    fn fano_is_symmetric_2_7_3_1() {
        let p = fano().verify_2design().unwrap();
        assert_eq!((p.v, p.b, p.r, p.k, p.lambda), (7, 7, 3, 3, 1));
        assert!(p.is_symmetric());
    }

    #[test]
    fn complement_of_fano() {
        let p = fano().complement().verify_2design().unwrap();
        assert_eq!((p.v, p.k, p.lambda), (7, 4, 2));
    }

    #[test]
    fn multiple_scales_lambda() {
        let d = fano().complement().multiple(2);
        let p = d.verify_2design().unwrap();
        assert_eq!((p.b, p.r, p.lambda), (14, 8, 4));
        assert!(d.has_repeated_blocks());
    }

    #[test]
    fn dual_of_symmetric_is_2design() {
        let p = fano().dual().verify_2design().unwrap();
        assert_eq!((p.v, p.k, p.lambda), (7, 3, 1));
    }

    #[test]
    fn broken_design_names_the_pair() {
        let d = BlockDesign::new(4, vec![vec![0, 1], vec![0, 1], vec![2, 3]]).unwrap();
        assert!(d.verify_2design().is_err());
    }

    #[test]
    fn text_round_trip() {
        let d = fano();
        assert_eq!(BlockDesign::from_text(&d.to_text()).unwrap(), d);
        assert!(BlockDesign::from_text("3 1\n0 1 5\n").is_err());
        assert!(BlockDesign::from_text("3 2\n0 1\n").is_err());
    }

    #[test]
    fn resolution_checks_classes() {
        let d = BlockDesign::new(
            4,
            vec![vec![0, 1], vec![2, 3], vec![0, 2], vec![1, 3], vec![0, 3], vec![1, 2]],
        )
        .unwrap();
        let r = Resolution::new(d.clone(), vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert_eq!(Resolution::from_text(&r.to_text()).unwrap(), r);
        assert!(Resolution::new(d, vec![vec![0, 2], vec![1, 3], vec![4, 5]]).is_err());
    }
}
