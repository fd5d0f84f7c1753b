//! Table-driven arithmetic in small finite fields GF(p^f).

use crate::error::{Error, Result};

/// GF(q) with elements `0..q`. For `q = p^f` an element is the base-`p`
/// encoding of its coefficient vector modulo a fixed irreducible polynomial.
#[derive(Clone, Debug)]
pub struct FiniteField {
    q: usize,
    p: usize,
    f: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    primitive: usize,
}

/// Returns `(p, f)` with `q = p^f`, or `None` if `q` is not a prime power.
pub fn prime_power(q: usize) -> Option<(usize, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut r = q;
    let mut f = 0;
    while r.is_multiple_of(p) {
        r /= p;
        f += 1;
    }
    (r == 1).then_some((p, f))
}

fn digits(x: usize, p: usize, f: u32) -> Vec<usize> {
    let mut v = Vec::with_capacity(f as usize);
    let mut x = x;
    for _ in 0..f {
        v.push(x % p);
        x /= p;
    }
    v
}

fn undigits(v: &[usize], p: usize) -> usize {
    v.iter().rev().fold(0, |acc, &d| acc * p + d)
}

// Polynomial remainder over GF(p); coefficients low degree first.
fn poly_rem(a: &[usize], m: &[usize], p: usize) -> Vec<usize> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = (1..p).find(|&x| x * m[dm] % p == 1).expect("unit leading coefficient");
    while r.len() > dm {
        let c = r[r.len() - 1] * lead_inv % p;
        let shift = r.len() - 1 - dm;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * mi % p) % p;
        }
        r.pop();
        while r.len() > dm && r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

fn is_irreducible(m: &[usize], p: usize) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g = digits(code, p, d as u32);
            g.push(1);
            if poly_rem(m, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn new(q: usize) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or_else(|| Error::Domain(format!("{q} is not a prime power")))?;
        if q > 4096 {
            return Err(Error::resource("finite field size", 4096u32));
        }
        let modulus: Vec<usize> = if f == 1 {
            vec![0, 1]
        } else {
            (0..p.pow(f))
                .map(|code| {
                    let mut m = digits(code, p, f);
                    m.push(1);
                    m
                })
                .find(|m| m[0] != 0 && is_irreducible(m, p))
                .expect("irreducible polynomials exist in every degree")
        };
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for a in 0..q {
            let da = digits(a, p, f);
            for b in 0..q {
                let db = digits(b, p, f);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s, p) as u32;
                let mut prod = vec![0usize; 2 * f as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = if f == 1 { vec![prod[0]] } else { poly_rem(&prod, &modulus, p) };
                r.resize(f as usize, 0);
                mul[a * q + b] = undigits(&r, p) as u32;
            }
        }
        let neg: Vec<u32> = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).expect("additive inverse") as u32)
            .collect();
        let mut inv = vec![0u32; q];
        for a in 1..q {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).expect("field") as u32;
        }
        let mut field = FiniteField {
            q,
            p,
            f,
            add,
            mul,
            neg,
            inv,
            primitive: 0,
        };
        field.primitive = (1..q)
            .find(|&a| field.multiplicative_order(a) == q - 1)
            .expect("cyclic multiplicative group");
        Ok(field)
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    /// Multiplicative inverse; `a` must be non-zero.
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        debug_assert!(a != 0);
        self.inv[a] as usize
    }

    pub fn primitive_element(&self) -> usize {
        self.primitive
    }

    pub fn multiplicative_order(&self, a: usize) -> usize {
        if a == 0 {
            return 0;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}
