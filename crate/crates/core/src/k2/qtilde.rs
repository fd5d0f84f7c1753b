use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{AutGroupData, SimpleWithAut};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QTilde {
    pub y: usize,
    pub y_order: usize,
    pub invertiliser: usize,
    pub out: usize,
    /// `sum over prime-order z in I_Aut(y) of 1 / |z^Aut(T)|`.
    pub class_sum: BigRational,
    pub value: BigRational,
}

impl QTilde {
    pub fn below_one(&self) -> bool {
        self.value < BigRational::one()
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub(crate) fn aut_element_order(aut: &AutGroupData, phi: usize) -> usize {
    let id = aut.identity();
    let (mut cur, mut n) = (phi, 1);
    while cur != id {
        cur = aut.mul(cur, phi);
        n += 1;
    }
    n
}

/// `|phi^Aut(T)|`, as the index of the centraliser.
pub(crate) fn aut_class_size(aut: &AutGroupData, phi: usize) -> usize {
    let cent = (0..aut.order()).filter(|&psi| aut.mul(phi, psi) == aut.mul(psi, phi)).count();
    aut.order() / cent
}

/// `|I_Aut(y)| |Out(T)| sum_z |z^Aut ∩ I_Aut(y)| / |z^Aut|`, with `z` over the
/// prime-order classes of Aut(T).
pub fn qtilde_exact(s: &SimpleWithAut, y: usize) -> Result<QTilde> {
    let (t, aut) = (&s.t, &s.aut);
    if y >= t.order() {
        return Err(Error::Domain(format!("{y} is not an element index of {}", t.name())));
    }
    let inv = aut.invertiliser(t, y);
    let mut class_sum = BigRational::zero();
    for &phi in &inv {
        if is_prime(aut_element_order(aut, phi)) {
            class_sum += BigRational::new(BigInt::one(), BigInt::from(aut_class_size(aut, phi)));
        }
    }
    let out = aut.out_order();
    let value = &class_sum * BigRational::from_integer(BigInt::from(inv.len() * out));
    Ok(QTilde {
        y,
        y_order: t.element_order(y),
        invertiliser: inv.len(),
        out,
        class_sum,
        value,
    })
}

/// The fraction of `g in Aut(T)` with `I_Aut(x) ∩ I_Aut(y^g) != 1`, which Q~(T, y) bounds
/// from above for every non-identity `x`.
pub fn bad_conjugate_fraction(s: &SimpleWithAut, x: usize, y: usize) -> Result<BigRational> {
    let (t, aut) = (&s.t, &s.aut);
    if x >= t.order() || y >= t.order() {
        return Err(Error::Domain(format!("element index out of range for {}", t.name())));
    }
    let mut mask = vec![false; aut.order()];
    for phi in aut.invertiliser(t, x) {
        mask[phi] = true;
    }
    let bad = (0..aut.order())
        .filter(|&g| aut.invertiliser(t, aut.apply(g, y)).into_iter().filter(|&phi| mask[phi]).count() > 1)
        .count();
    Ok(BigRational::new(BigInt::from(bad), BigInt::from(aut.order())))
}
