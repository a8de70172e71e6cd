//! Exact arithmetic in the finite field GF(q), q = p^k a prime power.
//!
//! Elements are integer codes in `0..q`: the base-p digits of a code are the
//! coefficients of a polynomial over F_p (constant digit first), and
//! multiplication is polynomial multiplication modulo a fixed monic
//! irreducible of degree k. The modulus is the lexicographically smallest
//! irreducible, so the encoding is deterministic and two `FiniteField`
//! values with the same q agree element-for-element. For prime q the code is
//! just the residue and everything reduces to arithmetic mod p.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Hard cap on the field order. Enumeration budgets keep practical q far
/// smaller; the cap only guards the irreducible-polynomial search.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    q: u64,
    p: u64,
    k: u32,
    /// Non-leading coefficients of the monic modulus, constant first,
    /// length k. Empty for prime fields (k = 1, modulus unused).
    modulus: Vec<u64>,
}

impl FiniteField {
    /// Builds GF(q). Errors unless q is a prime power with q ≤ 2^16.
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidRing(format!(
                "field order must be at least 2, got {q}"
            )));
        }
        if q > MAX_FIELD_ORDER {
            return Err(Error::InvalidRing(format!(
                "field order {q} exceeds the supported maximum {MAX_FIELD_ORDER}"
            )));
        }
        let p = smallest_prime_factor(q);
        let mut k = 0u32;
        let mut acc = 1u64;
        while acc < q {
            acc *= p;
            k += 1;
        }
        if acc != q {
            return Err(Error::InvalidRing(format!("{q} is not a prime power")));
        }
        let modulus = if k == 1 {
            Vec::new()
        } else {
            smallest_irreducible(p, k)
        };
        Ok(FiniteField { q, p, k, modulus })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Extension degree k where q = p^k.
    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Validates an element code.
    pub fn check(&self, a: u64) -> Result<u64> {
        if a < self.q {
            Ok(a)
        } else {
            Err(Error::InvalidPoint(format!(
                "element code {a} out of range for GF({})",
                self.q
            )))
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let mut out = 0;
        let mut base = 1;
        let (mut a, mut b) = (a, b);
        while a > 0 || b > 0 {
            out += (a % self.p + b % self.p) % self.p * base;
            a /= self.p;
            b /= self.p;
            base *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let mut out = 0;
        let mut base = 1;
        let mut a = a;
        while a > 0 {
            out += (self.p - a % self.p) % self.p * base;
            a /= self.p;
            base *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a * b % self.p;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * self.k as usize];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // Reduce modulo the monic irreducible: x^k = -(modulus).
        for i in (self.k as usize..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &m) in self.modulus.iter().enumerate() {
                let idx = i - self.k as usize + j;
                prod[idx] = (prod[idx] + c * (self.p - m) % self.p) % self.p;
            }
        }
        self.encode(&prod[..self.k as usize])
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::InvalidPoint(format!(
                "zero is not invertible in GF({})",
                self.q
            )));
        }
        // a^(q-2) = a^(-1) in GF(q)^*.
        Ok(self.pow_unsigned(a, self.q - 2))
    }

    /// a^e for any integer e (negative exponents via the inverse).
    pub fn pow(&self, a: u64, e: i64) -> Result<u64> {
        if e >= 0 {
            Ok(self.pow_unsigned(a, e as u64))
        } else {
            let inv = self.inv(a)?;
            Ok(self.pow_unsigned(inv, e.unsigned_abs()))
        }
    }

    fn pow_unsigned(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The image of an integer under the ring map Z -> GF(q) (lands in the
    /// prime subfield).
    pub fn from_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let mut r = n % &p;
        if r.is_negative() {
            r += &p;
        }
        r.to_u64().expect("residue fits in u64")
    }

    pub fn from_i64(&self, n: i64) -> u64 {
        self.from_bigint(&BigInt::from(n))
    }

    fn digits(&self, a: u64) -> Vec<u64> {
        let mut out = vec![0u64; self.k as usize];
        let mut a = a;
        for d in out.iter_mut() {
            *d = a % self.p;
            a /= self.p;
        }
        out
    }

    fn encode(&self, digits: &[u64]) -> u64 {
        let mut out = 0;
        for &d in digits.iter().rev() {
            out = out * self.p + d;
        }
        out
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 1;
    }
    n
}

/// Non-leading coefficients (constant first) of the lexicographically
/// smallest monic irreducible of degree k over F_p. "Lexicographically
/// smallest" orders candidates by their code sum(c_i p^i).
fn smallest_irreducible(p: u64, k: u32) -> Vec<u64> {
    let total = p.pow(k);
    for code in 0..total {
        let cand = decode_poly(code, p, k as usize);
        if is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("an irreducible of every degree exists over F_p")
}

fn decode_poly(code: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    let mut c = code;
    for d in out.iter_mut() {
        *d = c % p;
        c /= p;
    }
    out
}

/// Tests x^k + sum(c_i x^i) for irreducibility by trial division with every
/// monic polynomial of degree 1..=k/2.
fn is_irreducible(non_leading: &[u64], p: u64) -> bool {
    let k = non_leading.len();
    let mut f: Vec<u64> = non_leading.to_vec();
    f.push(1); // monic of degree k
    for d in 1..=k / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g = decode_poly(code, p, d);
            g.push(1);
            if poly_rem_is_zero(&f, &g, p) {
                return false;
            }
        }
    }
    true
}

/// Whether g (monic) divides f exactly, over F_p.
fn poly_rem_is_zero(f: &[u64], g: &[u64], p: u64) -> bool {
    let mut r: Vec<u64> = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let shift = r.len() - 1 - dg;
            for (i, &gc) in g.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + lead * (p - gc) % p) % p;
            }
        }
        r.pop();
        while r.len() > dg && *r.last().unwrap() == 0 {
            r.pop();
        }
    }
    r.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f5 = FiniteField::new(5).unwrap();
        assert_eq!(f5.characteristic(), 5);
        assert_eq!(f5.degree(), 1);
        assert_eq!(f5.add(3, 4), 2);
        assert_eq!(f5.mul(3, 4), 2);
        assert_eq!(f5.neg(2), 3);
        assert_eq!(f5.inv(3).unwrap(), 2);
        assert_eq!(f5.pow(2, -1).unwrap(), 3);
        assert_eq!(f5.from_i64(-1), 4);
    }

    #[test]
    fn gf4_is_a_field() {
        let f4 = FiniteField::new(4).unwrap();
        assert_eq!(f4.characteristic(), 2);
        assert_eq!(f4.degree(), 2);
        // Modulus is x^2 + x + 1, the only irreducible quadratic over F_2,
        // so code 2 (= x) satisfies x^2 = x + 1 = code 3.
        assert_eq!(f4.mul(2, 2), 3);
        assert_eq!(f4.mul(2, 3), 1);
        assert_eq!(f4.add(2, 3), 1);
        // Every nonzero element is invertible and 1 + 1 = 0.
        assert_eq!(f4.add(1, 1), 0);
        for a in 1..4 {
            let b = f4.inv(a).unwrap();
            assert_eq!(f4.mul(a, b), 1);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = FiniteField::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn non_prime_powers_rejected() {
        for q in [0u64, 1, 6, 10, 12, 100] {
            assert!(FiniteField::new(q).is_err(), "q = {q} accepted");
        }
        assert!(FiniteField::new(MAX_FIELD_ORDER + 1).is_err());
    }

    #[test]
    fn integer_reduction_lands_in_prime_subfield() {
        let f9 = FiniteField::new(9).unwrap();
        assert_eq!(f9.from_i64(3), 0);
        assert_eq!(f9.from_i64(-1), 2);
        assert_eq!(f9.from_i64(7), 1);
    }
}
