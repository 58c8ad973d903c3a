//! Constructions of unordered triple arrays and triple arrays.

use crate::arrays::{TripleArray, Uta};
use crate::design::{BlockDesign, Resolution};
use crate::error::{invalid, Error, Result};
use crate::field::FiniteField;
use crate::geometry::{ag_design, hyperplane_resolution, pg_design};

/// Extremal UTA from a symmetric 2-(r+c, r, λ) design and a point `sigma`.
///
/// Column-sets are the blocks avoiding `sigma`, row-sets the complements of the
/// blocks through it. Symbols are the remaining points, renumbered in order.
pub fn agrawal(s: &BlockDesign, sigma: usize) -> Result<Uta> {
    let p = s.verify_2design()?;
    if !p.is_symmetric() {
        return Err(Error::Params(format!("{p} is not symmetric")));
    }
    if sigma >= s.v() {
        return invalid(format!("point {sigma} is not in 0..{}", s.v()));
    }
    let relabel = |x: usize| if x > sigma { x - 1 } else { x };
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    for b in s.blocks() {
        if b.binary_search(&sigma).is_ok() {
            rows.push(
                (0..s.v())
                    .filter(|x| b.binary_search(x).is_err())
                    .map(relabel)
                    .collect(),
            );
        } else {
            cols.push(b.iter().map(|&x| relabel(x)).collect());
        }
    }
    Uta::new(s.v() - 1, rows, cols)
}

/// Inverse of [`agrawal`]: adds a point `v` and returns the symmetric design.
pub fn agrawal_reverse(u: &Uta) -> Result<BlockDesign> {
    let (r, c, v) = (u.r(), u.c(), u.v());
    if v + 1 != r + c {
        return Err(Error::Params(format!(
            "({r}x{c},{v}) is not extremal, need v = r + c - 1"
        )));
    }
    let sigma = v;
    let mut blocks: Vec<Vec<usize>> = u.col_sets().to_vec();
    for row in u.row_sets() {
        let mut b: Vec<usize> = (0..v).filter(|x| row.binary_search(x).is_err()).collect();
        b.push(sigma);
        blocks.push(b);
    }
    let d = BlockDesign::new(v + 1, blocks)?;
    let p = d
        .verify_2design()
        .map_err(|e| Error::Params(format!("reverse construction is not a 2-design: {e}")))?;
    if !p.is_symmetric() {
        return Err(Error::Params(format!("{p} is not symmetric")));
    }
    Ok(d)
}

/// Resolvable UTA from a symmetric design on the rows and a resolution on the columns.
///
/// Class `class_order[x]` of the resolution is attached to block `x` of `s`.
/// Symbol `x * k + y` is block `y` of that class.
pub fn ruta(s: &BlockDesign, res: &Resolution, class_order: &[usize]) -> Result<Uta> {
    let sp = s.verify_2design()?;
    if !sp.is_symmetric() {
        return Err(Error::Params(format!("{sp} is not symmetric")));
    }
    let bp = res.design().verify_2design()?;
    let r = sp.v;
    if res.num_classes() != r {
        return Err(Error::Params(format!(
            "resolution has {} classes but the symmetric design has {r} points",
            res.num_classes()
        )));
    }
    if bp.k != sp.k {
        return Err(Error::Params(format!(
            "block sizes differ: {} in the symmetric design, {} in the resolution",
            sp.k, bp.k
        )));
    }
    let mut perm = class_order.to_vec();
    perm.sort_unstable();
    if perm != (0..r).collect::<Vec<_>>() {
        return invalid("class order is not a permutation of the classes");
    }
    let c = bp.v;
    let k = res.classes()[0].len();
    let mut rows = vec![Vec::new(); r];
    let mut cols = vec![Vec::new(); c];
    for x in 0..r {
        let class = &res.classes()[class_order[x]];
        for (y, &bi) in class.iter().enumerate() {
            let sym = x * k + y;
            for &i in s.block(x) {
                rows[i].push(sym);
            }
            for &j in res.design().block(bi) {
                cols[j].push(sym);
            }
        }
    }
    Uta::new(r * k, rows, cols)
}

fn identity_order(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// The trivial symmetric design whose blocks are all `n - 1`-subsets, block `x` missing `x`.
pub fn trivial_symmetric(n: usize) -> BlockDesign {
    BlockDesign::new(n, (0..n).map(|x| (0..n).filter(|&y| y != x).collect()).collect()).expect("valid")
}

/// Resolvable `((q^n-1)/(q-1) x q^n, q(q^n-1)/(q-1))` UTA from affine hyperplanes.
pub fn family_ag(q: usize, n: usize) -> Result<Uta> {
    if n < 2 {
        return invalid("family_ag needs n >= 2");
    }
    let s = if n == 2 {
        trivial_symmetric(q + 1)
    } else {
        pg_design(n - 1, n - 2, q)?.design.complement()
    };
    let res = hyperplane_resolution(&ag_design(n, n - 1, q)?)?;
    ruta(&s, &res, &identity_order(res.num_classes()))
}

/// Resolvable `((4m-1) x 4m, 8m-2)` UTA from a symmetric 2-(4m-1, 2m-1, m-1) design.
pub fn family_hadamard(d: &BlockDesign) -> Result<Uta> {
    let p = d.verify_2design()?;
    if !p.is_symmetric() || (p.v + 1) % 4 != 0 {
        return Err(Error::Params(format!(
            "{p} is not a symmetric 2-(4m-1,2m-1,m-1) design"
        )));
    }
    let m = (p.v + 1) / 4;
    if p.k != 2 * m - 1 || p.lambda != m - 1 {
        return Err(Error::Params(format!(
            "{p} is not a symmetric 2-(4m-1,2m-1,m-1) design"
        )));
    }
    let v = p.v;
    let sigma = v;
    let mut blocks = Vec::new();
    let mut classes = Vec::new();
    for b in d.blocks() {
        let mut with_sigma = b.clone();
        with_sigma.push(sigma);
        let rest: Vec<usize> = (0..v).filter(|x| b.binary_search(x).is_err()).collect();
        classes.push(vec![blocks.len(), blocks.len() + 1]);
        blocks.push(with_sigma);
        blocks.push(rest);
    }
    let res = Resolution::new(BlockDesign::new(v + 1, blocks)?, classes)?;
    ruta(&d.complement(), &res, &identity_order(v))
}

/// Resolvable `((q²+q+1) x (q³+q²+q+1), (q²+q+1)(q²+1))` UTA from PG(2,q) and a packing of PG(3,q).
pub fn family_pg3(q: usize, packing: &Resolution) -> Result<Uta> {
    let plane = pg_design(2, 1, q)?.design;
    let p = packing.design().verify_2design()?;
    let points = q * q * q + q * q + q + 1;
    if p.v != points || p.k != q + 1 || p.lambda != 1 || packing.num_classes() != q * q + q + 1 {
        return Err(Error::Params(format!(
            "packing must resolve the lines of PG(3,{q}) into {} spreads, got {p} with {} classes",
            q * q + q + 1,
            packing.num_classes()
        )));
    }
    ruta(&plane, packing, &identity_order(packing.num_classes()))
}

/// Field-element order used to index Paley arrays: 0, then powers of the primitive element.
pub fn paley_order(f: &FiniteField) -> Vec<u32> {
    let g = f.primitive_element();
    let mut w = vec![0u32];
    let mut x = 1u32;
    for _ in 1..f.order() {
        w.push(x);
        x = f.mul(x, g);
    }
    w
}

/// Whether `(a, b)` gives a resolvable Paley array over GF(q).
pub fn paley_valid(f: &FiniteField, a: u32, b: u32) -> bool {
    let q = f.order();
    if q % 4 != 3 || q < 7 || a == 0 || b == 0 || a as usize >= q || b as usize >= q {
        return false;
    }
    let am1 = f.sub(a, 1);
    let bp1 = f.add(b, 1);
    f.is_nonzero_square(f.mul(am1, bp1)) && f.is_nonzero_square(f.mul(a, b))
}

/// All `(a, b)` accepted by [`paley`] for GF(q), in increasing encoding order.
pub fn paley_parameters(q: usize) -> Result<Vec<(u32, u32)>> {
    let f = FiniteField::new(q)?;
    let mut out = Vec::new();
    for a in 1..q as u32 {
        for b in 1..q as u32 {
            if paley_valid(&f, a, b) {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

/// Paley `(q x (q+1), 2q)` triple array.
///
/// Row `i` and column `j <= q` correspond to the `i`-th and `j`-th element of
/// [`paley_order`]. Symbol `s` is the `s`-th element and `q + s` its primed copy.
pub fn paley(q: usize, a: u32, b: u32) -> Result<TripleArray> {
    let f = FiniteField::new(q)?;
    if !paley_valid(&f, a, b) {
        return Err(Error::Params(format!(
            "need q = 3 mod 4, q >= 7, (a-1)(b+1) and ab non-zero squares; got q={q}, a={a}, b={b}"
        )));
    }
    let w = paley_order(&f);
    let mut index = vec![0usize; q];
    for (s, &x) in w.iter().enumerate() {
        index[x as usize] = s;
    }
    let inv_a = f.inv(a).unwrap();
    let inv_b = f.inv(b).unwrap();
    let mut grid = Vec::with_capacity(q * (q + 1));
    for i in 0..q {
        for j in 0..=q {
            if j == q {
                grid.push(i);
                continue;
            }
            let d = f.sub(w[i], w[j]);
            if f.is_nonzero_square(d) {
                grid.push(index[f.sub(w[i], f.mul(d, inv_a)) as usize]);
            } else {
                grid.push(q + index[f.add(w[i], f.mul(d, inv_b)) as usize]);
            }
        }
    }
    TripleArray::new(q, q + 1, 2 * q, grid)
}

/// The Paley difference-set design: blocks `x + Q` over GF(q), `q = 3 mod 4`.
pub fn quadratic_residue_design(q: usize) -> Result<BlockDesign> {
    let f = FiniteField::new(q)?;
    if q % 4 != 3 {
        return invalid(format!("quadratic residue design needs q = 3 mod 4, got {q}"));
    }
    let squares = f.squares();
    BlockDesign::new(
        q,
        (0..q as u32)
            .map(|x| squares.iter().map(|&s| f.add(x, s) as usize).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pg_design;

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
    fn agrawal_on_fano_matches_fixture() {
        let u = agrawal(&fano(), 0).unwrap();
        let fig2 = Uta::from_text_one_based("3 4 6\n3 4 5 6\n1 2 3 6\n1 2 4 5\n2 3 4\n1 3 5\n1 4 6\n2 5 6\n").unwrap();
        assert_eq!(u, fig2);
        let back = agrawal_reverse(&u).unwrap();
        assert!(crate::canon::designs_isomorphic(&back, &fano()));
    }

    #[test]
    fn agrawal_rejects_bad_input() {
        assert!(agrawal(&fano(), 7).is_err());
        let not_sym = pg_design(3, 1, 2).unwrap().design;
        assert!(agrawal(&not_sym, 0).is_err());
        let square = Uta::new(2, vec![vec![0, 1], vec![0, 1]], vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert!(agrawal_reverse(&square).is_err());
        let plane = agrawal_reverse(&family_ag(3, 2).unwrap()).unwrap();
        assert!(crate::canon::designs_isomorphic(
            &plane,
            &pg_design(2, 1, 3).unwrap().design
        ));
    }

    #[test]
    fn families_verify() {
        for (q, n) in [(2, 2), (3, 2), (2, 3)] {
            let u = family_ag(q, n).unwrap();
            u.verify().unwrap();
            assert!(u.is_resolvable());
        }
        let u = family_hadamard(&fano()).unwrap();
        let p = u.verify().unwrap();
        assert_eq!((p.r, p.c, p.v), (7, 8, 14));
        assert!(u.is_resolvable());
    }

    #[test]
    fn ruta_checks_sizes() {
        let res = hyperplane_resolution(&ag_design(2, 1, 3).unwrap()).unwrap();
        assert!(ruta(&fano(), &res, &[0, 1, 2, 3]).is_err());
        assert!(ruta(&trivial_symmetric(4), &res, &[0, 1, 1, 3]).is_err());
        let u = ruta(&trivial_symmetric(4), &res, &[3, 1, 0, 2]).unwrap();
        u.verify().unwrap();
    }

    #[test]
    fn paley_seven() {
        let params = paley_parameters(7).unwrap();
        assert!(!params.is_empty());
        for (a, b) in params {
            let t = paley(7, a, b).unwrap();
            let p = t.verify().unwrap();
            assert_eq!((p.r, p.c, p.v), (7, 8, 14));
            let w = t.uta().unwrap().detect_resolution().unwrap();
            for g in &w.groups {
                assert_eq!(g.len(), 2);
                assert_eq!(g[1], g[0] + 7);
            }
        }
        assert!(paley(7, 1, 1).is_err());
        assert!(paley(5, 2, 2).is_err());
    }

    #[test]
    fn qr_designs() {
        for (q, k, l) in [(7, 3, 1), (11, 5, 2), (19, 9, 4), (23, 11, 5)] {
            let p = quadratic_residue_design(q).unwrap().verify_2design().unwrap();
            assert_eq!((p.v, p.k, p.lambda), (q, k, l));
        }
    }
}
