//! Table-driven arithmetic in GF(q).
//!
//! Elements are numbered `0..q` by reading their coefficient vector
//! `(c_0, …, c_{e-1})` over GF(p) as the base-p integer `Σ c_i p^i`, so `0`
//! and `1` are the additive and multiplicative identities.

use crate::error::{Error, Result};

/// Largest order for which full addition/multiplication tables are built.
pub const MAX_ORDER: usize = 1024;

/// Monic irreducible polynomials `x^e + Σ c_i x^i`, stored as `(p, [c_0, …, c_{e-1}])`.
const IRREDUCIBLE: &[(usize, &[usize])] = &[
    (2, &[1, 1]),          // GF(4):  x^2 + x + 1
    (2, &[1, 1, 0]),       // GF(8):  x^3 + x + 1
    (3, &[1, 0]),          // GF(9):  x^2 + 1
    (2, &[1, 1, 0, 0]),    // GF(16): x^4 + x + 1
    (5, &[2, 1]),          // GF(25): x^2 + x + 2
    (3, &[1, 2, 0]),       // GF(27): x^3 + 2x + 1
    (2, &[1, 0, 1, 0, 0]), // GF(32): x^5 + x^2 + 1
    (7, &[3, 1]),          // GF(49): x^2 + x + 3
];

/// Returns `(p, e)` with `q = p^e` when `q` is a prime power.
pub fn prime_power(q: usize) -> Option<(usize, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: usize,
    e: u32,
    q: usize,
    modulus: Vec<usize>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// Builds GF(q) and checks its axioms.
pub fn gf(q: usize) -> Result<FiniteField> {
    let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q > MAX_ORDER {
        return Err(Error::UnsupportedFieldOrder(q));
    }
    let modulus = if e == 1 {
        Vec::new()
    } else {
        IRREDUCIBLE
            .iter()
            .find(|(pp, c)| *pp == p && c.len() == e as usize)
            .map(|(_, c)| c.to_vec())
            .ok_or(Error::UnsupportedFieldOrder(q))?
    };
    let field = FiniteField::from_tables(p, e, modulus);
    // A reducible modulus leaves some element without an inverse.
    if let Some(a) = (1..q).find(|&a| field.inv[a] == u16::MAX) {
        return Err(Error::Format(format!("GF({q}): element {a} has no inverse")));
    }
    field
        .verify_axioms()
        .map_err(|m| Error::Format(format!("GF({q}): {m}")))?;
    Ok(field)
}

impl FiniteField {
    fn from_tables(p: usize, e: u32, modulus: Vec<usize>) -> Self {
        let q = p.pow(e);
        let digits = |mut x: usize| -> Vec<usize> {
            (0..e)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let number = |c: &[usize]| c.iter().rev().fold(0, |acc, &d| acc * p + d);
        let coeffs: Vec<Vec<usize>> = (0..q).map(digits).collect();

        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<usize> = coeffs[a].iter().zip(&coeffs[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = number(&sum) as u16;
                mul[a * q + b] = number(&poly_mul_mod(&coeffs[a], &coeffs[b], &modulus, p)) as u16;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u16)
            .collect();
        let inv = (0..q)
            .map(|a| (0..q).find(|&b| mul[a * q + b] == 1).map_or(u16::MAX, |b| b as u16))
            .collect();
        Self {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> usize {
        self.q
    }

    /// Low-order coefficients of the reducing polynomial (empty for prime fields).
    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (a != 0).then(|| self.inv[a] as usize)
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> Option<usize> {
        (1..self.q).find(|&g| {
            let mut x = g;
            for _ in 1..self.q - 1 {
                if x == 1 {
                    return false;
                }
                x = self.mul(x, g);
            }
            x == 1
        })
    }

    /// Field axioms: exhaustive over all triples for `q ≤ 9`, otherwise over
    /// all pairs with a deterministic set of third operands.
    pub fn verify_axioms(&self) -> std::result::Result<(), String> {
        let q = self.q;
        let thirds: Vec<usize> = if q <= 9 {
            (0..q).collect()
        } else {
            let mut t = vec![0, 1, q - 1, q / 2, q / 3 + 1];
            t.sort_unstable();
            t.dedup();
            t
        };
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a || self.mul(a, 0) != 0 {
                return Err(format!("identity fails at {a}"));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(format!("no additive inverse for {a}"));
            }
            if a != 0 && self.inv(a).map(|b| self.mul(a, b)) != Some(1) {
                return Err(format!("no multiplicative inverse for {a}"));
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("commutativity fails at ({a}, {b})"));
                }
                for &c in &thirds {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("additive associativity fails at ({a}, {b}, {c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("multiplicative associativity fails at ({a}, {b}, {c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Product of two coefficient vectors reduced modulo the monic polynomial
/// `x^e + Σ modulus_i x^i` over GF(p).
fn poly_mul_mod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let e = a.len();
    let mut prod = vec![0usize; 2 * e.max(1) - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // x^e ≡ -Σ modulus_i x^i
    for deg in (e..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &m) in modulus.iter().enumerate() {
            let t = deg - e + i;
            prod[t] = (prod[t] + (p - m % p) * c) % p;
        }
    }
    prod.truncate(e);
    prod
}
