//! Small finite fields with fully tabulated operations.
//!
//! Prime-power fields are built from fixed irreducible polynomials; only
//! orders up to 9 are supported, which covers every oracle instance.

use super::OracleError;

/// F_q for q in {2,3,4,5,7,8,9}, with dense operation tables. Elements are
/// encoded as 0..q-1; for prime powers the encoding is base-p digits of the
/// polynomial representation.
#[derive(Clone, Debug)]
pub struct FiniteField {
    q: usize,
    add_t: Vec<u8>,
    mul_t: Vec<u8>,
    neg_t: Vec<u8>,
    inv_t: Vec<u8>,
}

impl FiniteField {
    pub fn new(q: i64) -> Result<FiniteField, OracleError> {
        // irreducible polynomials, coefficients low to high, leading 1 included
        let (p, e, modulus): (usize, usize, &[u8]) = match q {
            2 => (2, 1, &[0, 1]),
            3 => (3, 1, &[0, 1]),
            5 => (5, 1, &[0, 1]),
            7 => (7, 1, &[0, 1]),
            4 => (2, 2, &[1, 1, 1]),    // x^2 + x + 1
            8 => (2, 3, &[1, 1, 0, 1]), // x^3 + x + 1
            9 => (3, 2, &[1, 0, 1]),    // x^2 + 1
            _ => return Err(OracleError::UnsupportedField(q)),
        };
        let q = q as usize;
        let digits = |v: usize| -> Vec<usize> {
            let mut v = v;
            let mut out = Vec::with_capacity(e);
            for _ in 0..e {
                out.push(v % p);
                v /= p;
            }
            out
        };
        let encode = |d: &[usize]| -> usize {
            d.iter().rev().fold(0, |acc, &c| acc * p + c)
        };
        let mut add_t = vec![0u8; q * q];
        let mut mul_t = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let da = digits(a);
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add_t[a * q + b] = encode(&sum) as u8;

                // polynomial product then reduction by the modulus
                let mut prod = vec![0usize; 2 * e];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (e..2 * e).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (t, &mc) in modulus.iter().enumerate().take(e) {
                        let pos = deg - e + t;
                        prod[pos] = (prod[pos] + p * p - (c * mc as usize) % p) % p;
                    }
                }
                mul_t[a * q + b] = encode(&prod[..e]) as u8;
            }
        }
        let mut neg_t = vec![0u8; q];
        let mut inv_t = vec![0u8; q];
        for a in 0..q {
            neg_t[a] = (0..q).find(|&b| add_t[a * q + b] == 0).unwrap() as u8;
            if a != 0 {
                inv_t[a] = (0..q).find(|&b| mul_t[a * q + b] == 1).ok_or(())
                    .map_err(|_| OracleError::UnsupportedField(q as i64))?
                    as u8;
            }
        }
        Ok(FiniteField { q, add_t, mul_t, neg_t, inv_t })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add_t[a as usize * self.q + b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul_t[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        self.neg_t[a as usize]
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero");
        self.inv_t[a as usize]
    }
}
