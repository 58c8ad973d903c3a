//! Point/flat designs of the finite geometries PG(n,q) and AG(n,q).

use crate::design::{BlockDesign, Resolution};
use crate::error::{invalid, Error, Result};
use crate::field::FiniteField;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometryKind {
    Projective,
    Affine,
}

/// The design of points and `i`-flats of a finite geometry.
///
/// For affine geometries the blocks are grouped by direction: `directions[d]`
/// lists the flats that are translates of the `d`-th linear subspace.
#[derive(Debug, Clone)]
pub struct GeometryDesign {
    pub kind: GeometryKind,
    pub n: usize,
    pub i: usize,
    pub q: usize,
    pub design: BlockDesign,
    pub points: Vec<Vec<u32>>,
    pub directions: Vec<Vec<usize>>,
}

fn encode(v: &[u32], q: usize) -> usize {
    v.iter().fold(0, |acc, &c| acc * q + c as usize)
}

fn decode(mut x: usize, m: usize, q: usize) -> Vec<u32> {
    let mut v = vec![0u32; m];
    for t in (0..m).rev() {
        v[t] = (x % q) as u32;
        x /= q;
    }
    v
}

fn combinations(m: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for x in start..m {
            cur.push(x);
            rec(x + 1, m, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, d, &mut Vec::new(), &mut out);
    out
}

/// All `d`-dimensional subspaces of GF(q)^m as reduced row echelon bases.
fn subspaces(f: &FiniteField, m: usize, d: usize) -> Vec<Vec<Vec<u32>>> {
    let q = f.order();
    let mut out = Vec::new();
    for pivots in combinations(m, d) {
        let mut free = Vec::new();
        for (t, &pc) in pivots.iter().enumerate() {
            for col in pc + 1..m {
                if !pivots.contains(&col) {
                    free.push((t, col));
                }
            }
        }
        let total = q.pow(free.len() as u32);
        for assignment in 0..total {
            let vals = decode(assignment, free.len(), q);
            let mut rows = vec![vec![0u32; m]; d];
            for (t, &pc) in pivots.iter().enumerate() {
                rows[t][pc] = 1;
            }
            for (&(t, col), &val) in free.iter().zip(&vals) {
                rows[t][col] = val;
            }
            out.push(rows);
        }
    }
    out
}

fn span(f: &FiniteField, rows: &[Vec<u32>], m: usize) -> Vec<Vec<u32>> {
    let q = f.order();
    let d = rows.len();
    (0..q.pow(d as u32))
        .map(|coeffs| {
            let cs = decode(coeffs, d, q);
            let mut v = vec![0u32; m];
            for (row, &c) in rows.iter().zip(&cs) {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(c, r));
                }
            }
            v
        })
        .collect()
}

fn normalize(f: &FiniteField, v: &[u32]) -> Option<Vec<u32>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = f.inv(lead).unwrap();
    Some(v.iter().map(|&x| f.mul(x, inv)).collect())
}

fn check_dims(n: usize, i: usize) -> Result<()> {
    if n < 2 || i == 0 || i >= n {
        return invalid(format!("need 1 <= i <= n-1 and n >= 2, got n={n}, i={i}"));
    }
    Ok(())
}

/// Points and `i`-dimensional projective subspaces of PG(n,q).
pub fn pg_design(n: usize, i: usize, q: usize) -> Result<GeometryDesign> {
    check_dims(n, i)?;
    let f = FiniteField::new(q)?;
    let m = n + 1;
    let mut index = vec![usize::MAX; q.pow(m as u32)];
    let mut points = Vec::new();
    for x in 0..q.pow(m as u32) {
        let v = decode(x, m, q);
        if v.iter().find(|&&c| c != 0) == Some(&1) {
            index[x] = points.len();
            points.push(v);
        }
    }
    let mut blocks = Vec::new();
    for rows in subspaces(&f, m, i + 1) {
        let mut b: Vec<usize> = span(&f, &rows, m)
            .iter()
            .filter_map(|v| normalize(&f, v))
            .map(|v| index[encode(&v, q)])
            .collect();
        b.sort_unstable();
        b.dedup();
        blocks.push(b);
    }
    let design = BlockDesign::new(points.len(), blocks)?;
    Ok(GeometryDesign {
        kind: GeometryKind::Projective,
        n,
        i,
        q,
        design,
        points,
        directions: Vec::new(),
    })
}

/// Points and `i`-flats of AG(n,q); point index is the base-q encoding of the vector.
pub fn ag_design(n: usize, i: usize, q: usize) -> Result<GeometryDesign> {
    check_dims(n, i)?;
    let f = FiniteField::new(q)?;
    let size = q.pow(n as u32);
    let points: Vec<Vec<u32>> = (0..size).map(|x| decode(x, n, q)).collect();
    let mut blocks = Vec::new();
    let mut directions = Vec::new();
    for rows in subspaces(&f, n, i) {
        let w = span(&f, &rows, n);
        let mut covered = vec![false; size];
        let mut class = Vec::new();
        for x in 0..size {
            if covered[x] {
                continue;
            }
            let mut b: Vec<usize> = w
                .iter()
                .map(|wv| {
                    let s: Vec<u32> = points[x].iter().zip(wv).map(|(&a, &c)| f.add(a, c)).collect();
                    encode(&s, q)
                })
                .collect();
            b.sort_unstable();
            for &p in &b {
                covered[p] = true;
            }
            class.push(blocks.len());
            blocks.push(b);
        }
        directions.push(class);
    }
    let design = BlockDesign::new(size, blocks)?;
    Ok(GeometryDesign {
        kind: GeometryKind::Affine,
        n,
        i,
        q,
        design,
        points,
        directions,
    })
}

/// The resolution of AG_{n-1}(n,q) whose classes are the pencils of parallel hyperplanes.
pub fn hyperplane_resolution(g: &GeometryDesign) -> Result<Resolution> {
    if g.kind != GeometryKind::Affine || g.i + 1 != g.n {
        return Err(Error::Params(
            "hyperplane resolution needs the design of hyperplanes of an affine geometry".into(),
        ));
    }
    Resolution::new(g.design.clone(), g.directions.clone())
}

fn gaussian_binomial(n: usize, k: usize, q: usize) -> usize {
    let mut num = 1usize;
    let mut den = 1usize;
    for t in 0..k {
        num *= q.pow((n - t) as u32) - 1;
        den *= q.pow((t + 1) as u32) - 1;
    }
    num / den
}

/// Number of `i`-dimensional subspaces of PG(n,q).
pub fn pg_flat_count(n: usize, i: usize, q: usize) -> usize {
    gaussian_binomial(n + 1, i + 1, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_planes_and_spaces() {
        for (n, i, q, v, k, lambda) in [
            (2, 1, 2, 7, 3, 1),
            (2, 1, 3, 13, 4, 1),
            (2, 1, 4, 21, 5, 1),
            (3, 1, 2, 15, 3, 1),
            (3, 2, 2, 15, 7, 3),
            (3, 1, 3, 40, 4, 1),
            (4, 3, 2, 31, 15, 7),
        ] {
            let g = pg_design(n, i, q).unwrap();
            let p = g.design.verify_2design().unwrap();
            assert_eq!((p.v, p.k, p.lambda), (v, k, lambda), "PG_{i}({n},{q})");
            assert_eq!(p.b, pg_flat_count(n, i, q));
        }
    }

    #[test]
    fn affine_hyperplanes_resolve() {
        for (n, q) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (4, 2)] {
            let g = ag_design(n, n - 1, q).unwrap();
            let p = g.design.verify_2design().unwrap();
            assert_eq!(p.v, q.pow(n as u32));
            assert_eq!(p.k, q.pow(n as u32 - 1));
            let res = hyperplane_resolution(&g).unwrap();
            assert_eq!(res.num_classes(), (q.pow(n as u32) - 1) / (q - 1));
            assert!(res.classes().iter().all(|c| c.len() == q));
        }
    }

    #[test]
    fn affine_lines_in_3_space() {
        let g = ag_design(3, 1, 2).unwrap();
        let p = g.design.verify_2design().unwrap();
        assert_eq!((p.v, p.b, p.k, p.lambda), (8, 28, 2, 1));
        assert!(hyperplane_resolution(&g).is_err());
    }

    #[test]
    fn bad_dimensions() {
        assert!(pg_design(2, 2, 2).is_err());
        assert!(ag_design(2, 0, 2).is_err());
        assert!(pg_design(2, 1, 6).is_err());
    }
}
