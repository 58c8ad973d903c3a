//! Table-driven arithmetic in GF(q) for prime powers q up to 32.
//!
//! An element of GF(p^n) is encoded as the integer whose base-p digits are the
//! coefficients of its polynomial representative, lowest degree first.

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 32;

/// Defining polynomials for the non-prime fields, coefficients lowest degree first
/// without the leading 1.
const MODULI: &[(usize, usize, &[usize])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (5, 2, &[2, 1]),
];

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: usize,
    n: usize,
    q: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    primitive: u32,
}

pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut m = q;
    let mut n = 0;
    while m % p == 0 {
        m /= p;
        n += 1;
    }
    (m == 1).then_some((p, n))
}

impl FiniteField {
    pub fn new(q: usize) -> Result<Self> {
        let Some((p, n)) = prime_power(q) else {
            return Err(Error::Unsupported(format!("{q} is not a prime power")));
        };
        if q > MAX_ORDER {
            return Err(Error::Unsupported(format!(
                "GF({q}) is above the supported bound {MAX_ORDER}"
            )));
        }
        let modulus: Vec<usize> = if n == 1 {
            Vec::new()
        } else {
            MODULI
                .iter()
                .find(|m| m.0 == p && m.1 == n)
                .map(|m| m.2.to_vec())
                .ok_or_else(|| Error::Unsupported(format!("no modulus for GF({q})")))?
        };
        let digits = |mut x: usize| -> Vec<usize> {
            let mut d = vec![0; n];
            for di in d.iter_mut() {
                *di = x % p;
                x /= p;
            }
            d
        };
        let encode = |d: &[usize]| d.iter().rev().fold(0usize, |acc, &c| acc * p + c);
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for x in 0..q {
            let dx = digits(x);
            for y in 0..q {
                let dy = digits(y);
                let s: Vec<usize> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[x * q + y] = encode(&s) as u32;
                let mut prod = vec![0usize; 2 * n];
                for i in 0..n {
                    for j in 0..n {
                        prod[i + j] = (prod[i + j] + dx[i] * dy[j]) % p;
                    }
                }
                // x^n = -(m_0 + m_1 x + ... + m_{n-1} x^{n-1})
                for deg in (n..2 * n).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, &m) in modulus.iter().enumerate() {
                        prod[deg - n + i] = (prod[deg - n + i] + (p - c) * m) % p;
                    }
                }
                mul[x * q + y] = encode(&prod[..n]) as u32;
            }
        }
        let mut neg = vec![0u32; q];
        let mut inv = vec![0u32; q];
        for x in 0..q {
            neg[x] = (0..q).find(|&y| add[x * q + y] == 0).unwrap() as u32;
            if x != 0 {
                inv[x] = (0..q)
                    .find(|&y| mul[x * q + y] == 1)
                    .ok_or_else(|| Error::Consistency(format!("GF({q}): {x} has no inverse")))?
                    as u32;
            }
        }
        let primitive = (1..q)
            .find(|&g| {
                let mut x = g;
                let mut order = 1;
                while x != 1 {
                    x = mul[x * q + g] as usize;
                    order += 1;
                }
                order == q - 1
            })
            .ok_or_else(|| Error::Consistency(format!("GF({q}) has no primitive element")))?
            as u32;
        Ok(FiniteField {
            p,
            n,
            q,
            add,
            mul,
            neg,
            inv,
            primitive,
        })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        self.add[x as usize * self.q + y as usize]
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg[y as usize])
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.mul[x as usize * self.q + y as usize]
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        self.neg[x as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: u32) -> Option<u32> {
        (x != 0).then(|| self.inv[x as usize])
    }

    pub fn div(&self, x: u32, y: u32) -> Option<u32> {
        self.inv(y).map(|iy| self.mul(x, iy))
    }

    pub fn pow(&self, x: u32, mut e: usize) -> u32 {
        let mut base = x;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The smallest generator of the multiplicative group under the integer encoding.
    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    pub fn is_nonzero_square(&self, x: u32) -> bool {
        x != 0 && (1..self.q as u32).any(|y| self.mul(y, y) == x)
    }

    /// Non-zero squares in increasing encoding order.
    pub fn squares(&self) -> Vec<u32> {
        (1..self.q as u32).filter(|&x| self.is_nonzero_square(x)).collect()
    }

    /// Non-squares in increasing encoding order.
    pub fn non_squares(&self) -> Vec<u32> {
        (1..self.q as u32).filter(|&x| !self.is_nonzero_square(x)).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ORDERS: &[usize] = &[2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32];

    #[test]
    fn every_supported_order_is_a_field() {
        for &q in ORDERS {
            let f = FiniteField::new(q).unwrap();
            let q32 = q as u32;
            for x in 0..q32 {
                assert_eq!(f.add(x, 0), x);
                assert_eq!(f.mul(x, 1), x);
                assert_eq!(f.add(x, f.neg(x)), 0);
                if x != 0 {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), 1, "q={q} x={x}");
                }
                for y in 0..q32 {
                    assert_eq!(f.add(x, y), f.add(y, x));
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    for z in 0..q32 {
                        assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                        assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                    }
                }
            }
            assert_eq!(f.characteristic().pow(f.degree() as u32), q);
            assert_eq!(f.pow(f.primitive_element(), q - 1), 1);
        }
    }

    #[test]
    fn squares_split_evenly_in_odd_order() {
        for &q in ORDERS.iter().filter(|&&q| q % 2 == 1) {
            let f = FiniteField::new(q).unwrap();
            assert_eq!(f.squares().len(), (q - 1) / 2);
            assert_eq!(f.non_squares().len(), (q - 1) / 2);
        }
        let f = FiniteField::new(7).unwrap();
        assert_eq!(f.squares(), vec![1, 2, 4]);
        assert_eq!(f.neg(1), 6);
        assert!(!f.is_nonzero_square(6));
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(1).is_err());
        assert!(FiniteField::new(37).is_err());
        assert_eq!(prime_power(27), Some((3, 3)));
    }
}
