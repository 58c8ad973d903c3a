use num_rational::Rational64;
use num_traits::One;

use crate::error::{invalid, Result};

/// Derived quantities of a parameter set `(r x c, v)`.
///
/// `lambda_rr` is undefined for a single row and `lambda_cc` for a single column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ArrayParams {
    pub r: usize,
    pub c: usize,
    pub v: usize,
    pub e: Rational64,
    pub lambda_rr: Option<Rational64>,
    pub lambda_cc: Option<Rational64>,
    pub lambda_rrc: Option<Rational64>,
    pub k: Rational64,
    pub extremal: bool,
    pub non_trivial: bool,
    pub ta_admissible: bool,
    pub quad_admissible: bool,
    pub resolvable_admissible: bool,
}

fn integral(x: &Option<Rational64>) -> bool {
    x.map_or(true, |x| x.is_integer())
}

pub fn params_for(r: usize, c: usize, v: usize) -> Result<ArrayParams> {
    if r == 0 || c == 0 || v == 0 {
        return invalid("r, c and v must be positive");
    }
    let (ri, ci, vi) = (r as i64, c as i64, v as i64);
    let e = Rational64::new(ri * ci, vi);
    let one = Rational64::one();
    let lambda_rr = (r > 1).then(|| Rational64::from(ci) * (e - one) / Rational64::from(ri - 1));
    let lambda_cc = (c > 1).then(|| Rational64::from(ri) * (e - one) / Rational64::from(ci - 1));
    let lambda_rrc = (r > 1).then(|| e * (e - one) / Rational64::from(ri - 1));
    let k = Rational64::new(vi, ri);
    let ta_admissible = e.is_integer() && integral(&lambda_rr) && integral(&lambda_cc);
    let quad_admissible = ta_admissible && integral(&lambda_rrc);
    let resolvable_admissible = quad_admissible && k.is_integer();
    Ok(ArrayParams {
        r,
        c,
        v,
        e,
        lambda_rr,
        lambda_cc,
        lambda_rrc,
        k,
        extremal: v + 1 == r + c,
        non_trivial: r.max(c) < v && v < r * c,
        ta_admissible,
        quad_admissible,
        resolvable_admissible,
    })
}

impl ArrayParams {
    pub fn transpose(&self) -> ArrayParams {
        params_for(self.c, self.r, self.v).expect("positive parameters")
    }

    pub fn e_int(&self) -> Option<usize> {
        self.e.is_integer().then(|| self.e.to_integer() as usize)
    }

    pub fn k_int(&self) -> Option<usize> {
        self.k.is_integer().then(|| self.k.to_integer() as usize)
    }

    pub fn lambda_rrc_int(&self) -> Option<usize> {
        self.lambda_rrc
            .filter(|x| x.is_integer())
            .map(|x| x.to_integer() as usize)
    }
}

impl std::fmt::Display for ArrayParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}x{},{})", self.r, self.c, self.v)
    }
}

fn fmt_ratio(x: &Option<Rational64>) -> String {
    match x {
        None => "-".into(),
        Some(x) if x.is_integer() => x.to_integer().to_string(),
        Some(x) => format!("{}/{}", x.numer(), x.denom()),
    }
}

impl ArrayParams {
    /// One line: `r c v e lambda_rr lambda_cc lambda_rrc k` followed by the flags.
    pub fn summary(&self) -> String {
        format!(
            "{}x{} v={} e={} lrr={} lcc={} lrrc={} k={} extremal={} non_trivial={} ta={} quad={} resolvable={}",
            self.r,
            self.c,
            self.v,
            fmt_ratio(&Some(self.e)),
            fmt_ratio(&self.lambda_rr),
            fmt_ratio(&self.lambda_cc),
            fmt_ratio(&self.lambda_rrc),
            fmt_ratio(&Some(self.k)),
            self.extremal,
            self.non_trivial,
            self.ta_admissible,
            self.quad_admissible,
            self.resolvable_admissible
        )
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn merge(a: Vec<(u64, u32)>, b: Vec<(u64, u32)>) -> Vec<(u64, u32)> {
    let mut all = a;
    for (p, k) in b {
        match all.iter_mut().find(|(q, _)| *q == p) {
            Some(entry) => entry.1 += k,
            None => all.push((p, k)),
        }
    }
    all
}

fn divisors(f: &[(u64, u32)]) -> Vec<u64> {
    let mut ds = vec![1u64];
    for &(p, k) in f {
        let mut next = Vec::with_capacity(ds.len() * (k as usize + 1));
        for &d in &ds {
            let mut x = d;
            for _ in 0..=k {
                next.push(x);
                x *= p;
            }
        }
        ds = next;
    }
    ds.sort_unstable();
    ds
}

/// Non-trivial parameter sets that are quad-admissible in at least one orientation.
#[derive(Debug, Clone, Default)]
pub struct QuadScan {
    /// Every quad-admissible `(r x c, v)` with `2 <= e <= e_max`, sorted by `(e, r, c)`.
    pub one_orientation: Vec<ArrayParams>,
    /// Those among them whose transpose is quad-admissible as well.
    pub both_orientations: Vec<ArrayParams>,
}

/// Searches all non-trivial parameter sets with `e <= e_max` for sets that are
/// quad-admissible in both orientations.
///
/// Quad admissibility forces `r - 1 | e(e - 1)` and `c - 1 | r(e - 1)`, which
/// bounds the search for each `e`.
pub fn scan_quad_transpose(e_max: usize) -> QuadScan {
    let mut scan = QuadScan::default();
    for e in 2..=e_max as u64 {
        let rs = divisors(&merge(factorize(e), factorize(e - 1)));
        for &dr in &rs {
            let r = dr + 1;
            if r <= e {
                continue;
            }
            for dc in divisors(&merge(factorize(r), factorize(e - 1))) {
                let c = dc + 1;
                if c <= e || (r * c) % e != 0 {
                    continue;
                }
                let v = r * c / e;
                let p = params_for(r as usize, c as usize, v as usize).expect("positive");
                if !(p.quad_admissible && p.non_trivial) {
                    continue;
                }
                if p.transpose().quad_admissible {
                    scan.both_orientations.push(p);
                }
                scan.one_orientation.push(p);
            }
        }
    }
    let key = |p: &ArrayParams| (p.e, p.r, p.c);
    scan.one_orientation.sort_by_key(key);
    scan.both_orientations.sort_by_key(key);
    scan
}

/// All non-trivial `(r x c, v)` with `r <= r_max` admissible for triple arrays.
pub fn admissible_up_to_rows(r_max: usize) -> Vec<ArrayParams> {
    let mut out = Vec::new();
    for r in 2..=r_max {
        for e in 2..r {
            // lambda_cc >= 1 bounds c by r(e - 1) + 1
            for c in e + 1..=r * (e - 1) + 1 {
                if (r * c) % e != 0 {
                    continue;
                }
                let p = params_for(r, c, r * c / e).expect("positive");
                if p.ta_admissible && p.non_trivial {
                    out.push(p);
                }
            }
        }
    }
    out.sort_by_key(|p| (p.r, p.c, p.v));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_by_eight() {
        let p = params_for(7, 8, 14).unwrap();
        assert_eq!(p.e, Rational64::from(4));
        assert_eq!(p.lambda_rr, Some(Rational64::from(4)));
        assert_eq!(p.lambda_cc, Some(Rational64::from(3)));
        assert_eq!(p.lambda_rrc, Some(Rational64::from(2)));
        assert_eq!(p.k, Rational64::from(2));
        assert!(p.extremal && p.non_trivial && p.resolvable_admissible);
        let t = p.transpose();
        assert!(t.ta_admissible && !t.quad_admissible);
        assert_eq!(t.lambda_rrc, Some(Rational64::new(12, 7)));
    }

    #[test]
    fn sixteen_by_nine_is_quad_but_not_resolvable() {
        let p = params_for(16, 9, 24).unwrap();
        assert!(p.quad_admissible && !p.resolvable_admissible);
        assert_eq!(p.lambda_rrc, Some(Rational64::from(2)));
        assert_eq!(p.k, Rational64::new(3, 2));
    }

    #[test]
    fn bad_input() {
        assert!(params_for(0, 3, 4).is_err());
        let p = params_for(3, 4, 5).unwrap();
        assert!(!p.ta_admissible);
        let single = params_for(1, 4, 4).unwrap();
        assert!(single.lambda_rr.is_none());
    }

    #[test]
    fn divisors_of_60() {
        assert_eq!(divisors(&factorize(60)), vec![1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60]);
    }

    #[test]
    fn scan_brute_force_agrees_for_small_e() {
        let scan = scan_quad_transpose(8);
        let mut brute = Vec::new();
        for e in 2..=8usize {
            for r in e + 1..=e * (e - 1) + 1 {
                for c in e + 1..=r * (e - 1) + 1 {
                    if (r * c) % e != 0 {
                        continue;
                    }
                    let p = params_for(r, c, r * c / e).unwrap();
                    if p.quad_admissible && p.non_trivial {
                        brute.push(p);
                    }
                }
            }
        }
        brute.sort_by_key(|p| (p.e, p.r, p.c));
        assert_eq!(scan.one_orientation, brute);
        assert!(scan.both_orientations.is_empty());
    }

    #[test]
    fn resolvable_never_in_both_orientations() {
        for p in admissible_up_to_rows(40) {
            if p.resolvable_admissible {
                assert!(!p.transpose().resolvable_admissible, "{p}");
            }
        }
    }
}
