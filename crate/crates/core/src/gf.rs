//! Small finite fields as explicit tables: prime fields GF(p) for p < 64 and
//! the prime powers GF(4), GF(8), GF(9). Large enough for every
//! representation search in this crate.

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct SmallField {
    order: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>, // inv[0] unused
}

impl SmallField {
    pub fn new(q: usize) -> Result<SmallField> {
        match q {
            _ if is_prime(q) && q < 64 => Ok(prime_field(q)),
            4 => Ok(ext_field(2, 2, &[1, 1, 1])),       // x^2 + x + 1
            8 => Ok(ext_field(2, 3, &[1, 1, 0, 1])),    // x^3 + x + 1
            9 => Ok(ext_field(3, 2, &[1, 0, 1])),       // x^2 + 1
            _ => Err(Error::Unsupported(format!("no field of order {q} available"))),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        1
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: usize) -> usize {
        debug_assert!(a != 0);
        self.inv[a] as usize
    }

    /// Reduce an integer to a field element. Only meaningful for prime
    /// fields, where element ids coincide with residues.
    pub fn from_int(&self, v: i64) -> usize {
        let q = self.order as i64;
        (((v % q) + q) % q) as usize
    }
}

impl std::fmt::Debug for SmallField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.order)
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_field(p: usize) -> SmallField {
    let mut add = vec![0u8; p * p];
    let mut mul = vec![0u8; p * p];
    let mut neg = vec![0u8; p];
    let mut inv = vec![0u8; p];
    for a in 0..p {
        neg[a] = ((p - a) % p) as u8;
        for b in 0..p {
            add[a * p + b] = ((a + b) % p) as u8;
            mul[a * p + b] = ((a * b) % p) as u8;
        }
    }
    for a in 1..p {
        inv[a] = (1..p).find(|&b| (a * b) % p == 1).unwrap() as u8;
    }
    SmallField { order: p, add, mul, neg, inv }
}

/// GF(p^k) with elements encoded as base-p digit strings of polynomial
/// coefficients (constant term first); `modulus` is the irreducible
/// polynomial's coefficients, degree k.
fn ext_field(p: usize, k: usize, modulus: &[usize]) -> SmallField {
    let q = p.pow(k as u32);
    let digits = |mut v: usize| -> Vec<usize> {
        let mut d = vec![0; k];
        for x in d.iter_mut() {
            *x = v % p;
            v /= p;
        }
        d
    };
    let undigits = |d: &[usize]| -> usize { d.iter().rev().fold(0, |acc, &x| acc * p + x) };
    let polymul = |a: &[usize], b: &[usize]| -> Vec<usize> {
        let mut prod = vec![0usize; 2 * k];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // reduce modulo the irreducible polynomial
        for i in (k..2 * k).rev() {
            let c = prod[i];
            if c != 0 {
                prod[i] = 0;
                for (j, &m) in modulus.iter().enumerate().take(k) {
                    let idx = i - k + j;
                    prod[idx] = (prod[idx] + c * (p - m % p) % p) % p;
                }
            }
        }
        prod.truncate(k);
        prod
    };

    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    let mut neg = vec![0u8; q];
    let mut inv = vec![0u8; q];
    for a in 0..q {
        let da = digits(a);
        let dn: Vec<usize> = da.iter().map(|&x| (p - x) % p).collect();
        neg[a] = undigits(&dn) as u8;
        for b in 0..q {
            let db = digits(b);
            let ds: Vec<usize> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
            add[a * q + b] = undigits(&ds) as u8;
            mul[a * q + b] = undigits(&polymul(&da, &db)) as u8;
        }
    }
    for a in 1..q {
        inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap_or_else(|| {
            panic!("modulus not irreducible over GF({p})")
        }) as u8;
    }
    SmallField { order: q, add, mul, neg, inv }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_field_axioms(f: &SmallField) {
        let q = f.order();
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn prime_fields() {
        for q in [2, 3, 5, 7, 13, 17] {
            check_field_axioms(&SmallField::new(q).unwrap());
        }
    }

    #[test]
    fn extension_fields() {
        for q in [4, 8, 9] {
            check_field_axioms(&SmallField::new(q).unwrap());
        }
    }

    #[test]
    fn gf4_has_characteristic_two() {
        let f = SmallField::new(4).unwrap();
        for a in 0..4 {
            assert_eq!(f.add(a, a), 0);
        }
    }

    #[test]
    fn unsupported_orders_rejected() {
        assert!(SmallField::new(6).is_err());
        assert!(SmallField::new(16).is_err());
    }
}
