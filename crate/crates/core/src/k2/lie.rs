use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::prime_power;

/// Relative slack added to every floating-point logarithm before it is made exact.
pub const LOG_GUARD: f64 = 1e-12;

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn rat(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

fn frac(num: BigUint, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn pow(q: u64, e: u64) -> BigUint {
    big(q).pow(e as u32)
}

/// `floor(q^(num/den))`, a lower bound for a fractional power.
fn pow_floor(q: u64, num: u64, den: u64) -> BigUint {
    let g = num.gcd(&den);
    let (num, den) = (num / g, den / g);
    if den == 1 {
        pow(q, num)
    } else {
        pow(q, num).nth_root(den as u32)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// An exact rational at least `coeff * log2(q)`.
fn log_upper(coeff: u64, q: u64) -> BigRational {
    let v = coeff as f64 * (q as f64).log2() * (1.0 + LOG_GUARD);
    BigRational::from_float(v).expect("finite logarithm")
}

fn field_degree(q: u64) -> Result<(u64, u64)> {
    let (p, f) = prime_power(q as usize).ok_or_else(|| Error::Domain(format!("{q} is not a prime power")))?;
    Ok((p as u64, f as u64))
}

/// A bound `omega >= |Out(T)|`, exact or from a logarithm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaBound {
    pub value: BigRational,
    pub exact: bool,
    pub text: String,
}

impl OmegaBound {
    fn exact(out: u64) -> Self {
        OmegaBound {
            value: BigRational::from_integer(BigInt::from(out)),
            exact: true,
            text: format!("|Out(T)| = {out}"),
        }
    }

    fn log(coeff: u64, q: u64) -> Self {
        OmegaBound {
            value: log_upper(coeff, q),
            exact: false,
            text: format!("{coeff} log2 {q}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassicalFamily {
    /// `L_n(q)`, rank parameter `n`.
    L,
    /// `U_n(q)`, rank parameter `n`.
    U,
    /// `PSp_2m(q)`, rank parameter `m`.
    PSp,
    /// `Omega_(2m+1)(q)`, `q` odd.
    OmegaOdd,
    /// `POmega^-_2m(q)`.
    OmegaMinus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassicalGroup {
    pub family: ClassicalFamily,
    pub rank: u64,
    pub q: u64,
}

impl fmt::Display for ClassicalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, q) = (self.rank, self.q);
        match self.family {
            ClassicalFamily::L => write!(f, "L{r}({q})"),
            ClassicalFamily::U => write!(f, "U{r}({q})"),
            ClassicalFamily::PSp => write!(f, "PSp{}({q})", 2 * r),
            ClassicalFamily::OmegaOdd => write!(f, "Omega{}({q})", 2 * r + 1),
            ClassicalFamily::OmegaMinus => write!(f, "POmega-{}({q})", 2 * r),
        }
    }
}

impl ClassicalGroup {
    pub fn new(family: ClassicalFamily, rank: u64, q: u64) -> Result<Self> {
        let g = ClassicalGroup { family, rank, q };
        let (p, _) = field_degree(q)?;
        let ok = match family {
            ClassicalFamily::L | ClassicalFamily::U => rank >= 3,
            ClassicalFamily::PSp => rank >= 2 && (rank, q) != (2, 2),
            ClassicalFamily::OmegaOdd => rank >= 3 && p != 2,
            ClassicalFamily::OmegaMinus => rank >= 4,
        };
        if !ok {
            return Err(Error::Domain(format!("{g} is outside the tabulated range")));
        }
        Ok(g)
    }

    /// Whether the group is in the finite list handled by direct computation.
    pub fn in_small_list(&self) -> bool {
        let (r, q) = (self.rank, self.q);
        match self.family {
            ClassicalFamily::L => (r == 3 && (q <= 25 || q == 64)) || (r == 4 && q <= 17) || (r == 5 && q == 2) || (r == 6 && q == 2),
            ClassicalFamily::U => (r == 3 && q <= 32) || (r == 4 && q <= 5) || (r == 5 && q == 2) || (r == 6 && q == 2),
            ClassicalFamily::PSp => (r == 2 && (3..=5).contains(&q)) || (r == 3 && q <= 3) || (r == 4 && q == 2),
            ClassicalFamily::OmegaOdd => r == 3 && q == 3,
            ClassicalFamily::OmegaMinus => (r == 4 && q == 2) || (r == 5 && q == 2),
        }
    }

    /// `|Out(T)|` from the standard formulas.
    pub fn out_order(&self) -> u64 {
        let (r, q) = (self.rank, self.q);
        let f = field_degree(q).map(|x| x.1).unwrap_or(1);
        match self.family {
            ClassicalFamily::L => 2 * gcd(r, q - 1) * f,
            ClassicalFamily::U => 2 * gcd(r, q + 1) * f,
            ClassicalFamily::PSp if r == 2 => 2 * f,
            ClassicalFamily::PSp => gcd(2, q - 1) * f,
            ClassicalFamily::OmegaOdd => 2 * f,
            ClassicalFamily::OmegaMinus => {
                let qm = pow(q, r);
                let four = (qm + 1u32) % 4u32;
                let g = if four.is_zero() { 4 } else if (four % 2u32).is_zero() { 2 } else { 1 };
                2 * g * f
            }
        }
    }
}

/// Closed-form entries of the class-size tables for one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieTableRow {
    pub group: ClassicalGroup,
    pub label: String,
    pub c: BigUint,
    pub a: BigUint,
    pub b0: BigRational,
    pub b1: BigRational,
    pub b2: BigRational,
    pub omega: OmegaBound,
    pub out: u64,
}

pub fn lie_table_params(g: &ClassicalGroup) -> Result<LieTableRow> {
    let ClassicalGroup { family, rank: r, q } = *g;
    let (c, a, b0, b1, b2, omega);
    match family {
        ClassicalFamily::L => {
            let alpha = q - 1;
            c = (pow(q, r) - 1u32) / alpha;
            a = big(q - 1);
            if r == 3 {
                b0 = rat(&(pow(q, 2) * (pow(q, 3) - 1u32)));
                let base = pow(q, 3) * (pow(q, 2) - 1u32) * (q - 1);
                b1 = rat(&base);
                b2 = frac(base, 3);
            } else {
                b0 = frac(pow(q, (r * r + r - 2) / 2), 2 * alpha);
                let base = pow_floor(q, r * r - 2, 2) * (q - 1);
                b1 = frac(base.clone(), 2);
                b2 = frac(base, 4);
            }
            omega = match r {
                3 if q <= 73 => OmegaBound::exact(g.out_order()),
                3 => OmegaBound::log(6, q),
                4 => OmegaBound::log(8, q),
                _ => OmegaBound::log(2 * (q - 1), q),
            };
        }
        ClassicalFamily::U => {
            let alpha = q + 1;
            a = big(q + 1);
            if r == 3 {
                c = (pow(q, 3) + 1u32) / alpha;
                b0 = rat(&(pow(q, 2) * (pow(q, 3) + 1u32)));
                let base = pow(q, 3) * (pow(q, 2) - 1u32) * (q + 1);
                b1 = rat(&base);
                b2 = frac(base, 3);
            } else {
                if r == 4 {
                    c = pow(q, 3) + 1u32;
                    b0 = frac(pow(q, 2) * (pow(q, 3) + 1u32) * (pow(q, 4) - 1u32), 4);
                } else {
                    c = if r % 2 == 1 { (pow(q, r) + 1u32) / alpha } else { pow(q, r - 1) + 1u32 };
                    b0 = frac(pow(q, (r * r + r - 2) / 2), 2 * alpha);
                }
                if r % 2 == 1 {
                    let base = pow_floor(q, 2 * r * r, 3);
                    b1 = frac(base.clone(), 2);
                    b2 = frac(base, 6);
                } else {
                    b1 = frac(pow_floor(q, 2 * (r * r + r - 4), 3), 4);
                    b2 = frac(pow(q, r - 1) * (pow(q, r) - 1u32), q + 1);
                }
            }
            omega = match r {
                3 if q <= 73 => OmegaBound::exact(g.out_order()),
                4 if q == 7 || q == 8 => OmegaBound::exact(g.out_order()),
                3 => OmegaBound::log(6, q),
                4 => OmegaBound::log(8, q),
                _ => OmegaBound::log(2 * (q + 1), q),
            };
        }
        ClassicalFamily::PSp => {
            c = pow(q, r) + 1u32;
            a = big(2);
            if r == 2 {
                let base = pow(q, 3) * (pow(q, 2) + 1u32) * (q - 1);
                b0 = frac(base.clone(), 2);
                b1 = rat(&base);
                b2 = frac(base, 2);
            } else {
                let top = pow(q, r * r + r + 1);
                b0 = frac(top.clone(), 4 * (q + 1));
                b1 = frac(top.clone(), 2 * (q + 1));
                b2 = frac(top, 4 * (q + 1));
            }
            omega = OmegaBound::log(2, q);
        }
        ClassicalFamily::OmegaOdd => {
            c = pow(q, r) + 1u32;
            a = big(gcd(2, q - 1));
            b0 = frac(pow(q, r * r + r), 4);
            b1 = frac(pow(q, r * r + r + 1), 2 * (q + 1));
            b2 = frac(pow(q, r) * (pow(q, r) - 1u32), 2);
            omega = OmegaBound::log(2, q);
        }
        ClassicalFamily::OmegaMinus => {
            c = pow(q, r) + 1u32;
            a = big(gcd(2, q - 1));
            b0 = frac(pow(q, r * r), 8);
            let b = frac(pow(q, r * r - r + 1), 2 * (q + 1));
            b1 = b.clone();
            b2 = b;
            omega = OmegaBound::log(8, q);
        }
    }
    Ok(LieTableRow {
        group: *g,
        label: g.to_string(),
        c,
        a,
        b0,
        b1,
        b2,
        omega,
        out: g.out_order(),
    })
}

/// The quantities of the class-size inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionParams {
    pub c: BigUint,
    pub a: BigUint,
    pub b0: BigRational,
    pub b1: BigRational,
    pub b2: BigRational,
    pub omega: BigRational,
}

impl From<&LieTableRow> for CriterionParams {
    fn from(r: &LieTableRow) -> Self {
        CriterionParams {
            c: r.c.clone(),
            a: r.a.clone(),
            b0: r.b0.clone(),
            b1: r.b1.clone(),
            b2: r.b2.clone(),
            omega: r.omega.value.clone(),
        }
    }
}

/// `2 c omega (c / b0 + c / b1 + (a - 1) / b2)`, exactly.
pub fn criterion_value(p: &CriterionParams) -> Result<BigRational> {
    if p.c.is_zero() || p.a.is_zero() || [&p.b0, &p.b1, &p.b2, &p.omega].iter().any(|x| !x.is_positive()) {
        return Err(Error::Domain("criterion parameters must be positive with a >= 1".into()));
    }
    let c = rat(&p.c);
    let am1 = rat(&p.a) - BigRational::one();
    let sum = &c / &p.b0 + &c / &p.b1 + am1 / &p.b2;
    Ok(BigRational::from_integer(BigInt::from(2)) * &c * &p.omega * sum)
}

/// Whether the class-size inequality holds, i.e. the value is below 1.
pub fn class_bound_criterion(p: &CriterionParams) -> Result<bool> {
    Ok(criterion_value(p)? < BigRational::one())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OplusCheck {
    pub m: u64,
    pub q: u64,
    pub omega: OmegaBound,
    pub a: BigUint,
    pub b: BigRational,
    /// `omega a^2 / b`.
    pub value: BigRational,
    pub holds: bool,
}

/// `|Out(POmega+_2m(q))|` for the three cases where the log bound is not used.
pub const OPLUS_OUT: [((u64, u64), u64); 3] = [((4, 4), 12), ((5, 2), 2), ((6, 2), 2)];

/// For `q` even: `6f` when `m = 4` (triality), else `2f`.
fn oplus_out_even(m: u64, q: u64) -> Option<u64> {
    let (p, f) = field_degree(q).ok()?;
    (p == 2).then_some(if m == 4 { 6 * f } else { 2 * f })
}

pub fn oplus_check(m: u64, q: u64) -> Result<OplusCheck> {
    field_degree(q)?;
    if m < 4 || (m == 4 && (q == 2 || q == 3)) {
        return Err(Error::Domain(format!("POmega+{}({q}) is outside the range of the bound", 2 * m)));
    }
    let omega = match OPLUS_OUT.iter().find(|(k, _)| *k == (m, q)) {
        Some(&(_, out)) => {
            if oplus_out_even(m, q) != Some(out) {
                return Err(Error::Internal(format!("stored |Out| for POmega+{}({q}) disagrees with the formula", 2 * m)));
            }
            OmegaBound::exact(out)
        }
        None => OmegaBound::log(24, q),
    };
    let a = big(2) * (pow(q, m) - 1u32);
    let b = frac(pow(q, 2 * m - 2) * (pow(q, m) - 1u32) * (pow(q, m - 1) - 1u32), 2 * (q + 1));
    let value = &omega.value * rat(&(&a * &a)) / &b;
    let holds = value < BigRational::one();
    Ok(OplusCheck {
        m,
        q,
        omega,
        a,
        b,
        value,
        holds,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExceptionalFamily {
    /// `2B2(q)`, `q = 2^(2a+1)`.
    Suzuki,
    /// `2G2(q)`, `q = 3^(2a+1)`.
    Ree,
    /// `2F4(q)'`, `q = 2^(2a+1)`.
    TwistedF4,
    G2,
    TrialityD4,
    F4,
    E6,
    TwistedE6,
    E7,
    E8,
}

fn isqrt_exact(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    (r.checked_mul(r) == Some(n)).then_some(r)
}

impl ExceptionalFamily {
    fn validate(&self, q: u64) -> Result<(u64, u64)> {
        let (p, f) = field_degree(q)?;
        let bad = match self {
            ExceptionalFamily::Suzuki => p != 2 || f % 2 == 0 || q < 8,
            ExceptionalFamily::Ree => p != 3 || f % 2 == 0 || q < 27,
            ExceptionalFamily::TwistedF4 => p != 2 || f % 2 == 0,
            _ => false,
        };
        if bad {
            return Err(Error::Domain(format!("{self:?}({q}) is not a valid parameter")));
        }
        Ok((p, f))
    }

    /// The torus order `|y|` of the table of exceptional groups.
    pub fn torus_order(&self, q: u64) -> Result<BigUint> {
        self.validate(q)?;
        let qb = big(q);
        let q2 = &qb * &qb;
        let q3 = &q2 * &qb;
        let q4 = &q2 * &q2;
        let q6 = &q3 * &q3;
        Ok(match self {
            ExceptionalFamily::Suzuki => qb + isqrt_exact(2 * q).expect("2q is a square") + 1u32,
            ExceptionalFamily::Ree => qb + isqrt_exact(3 * q).expect("3q is a square") + 1u32,
            ExceptionalFamily::TwistedF4 => {
                let s = isqrt_exact(2 * q).expect("2q is a square");
                &q2 + &qb * s + &qb + s + 1u32
            }
            ExceptionalFamily::G2 => q2 - &qb + 1u32,
            ExceptionalFamily::TrialityD4 => q4 - q2 + 1u32,
            ExceptionalFamily::F4 if q == 2 => big(17),
            ExceptionalFamily::F4 => q4 - q2 + 1u32,
            ExceptionalFamily::E6 => (q6 + q3 + 1u32) / gcd(3, q - 1),
            ExceptionalFamily::TwistedE6 => (q6 - q3 + 1u32) / gcd(3, q + 1),
            ExceptionalFamily::E7 if q == 2 => big(129),
            ExceptionalFamily::E7 => (qb + 1u32) * (q6 - q3 + 1u32) / gcd(2, q - 1),
            ExceptionalFamily::E8 => {
                let q5 = &q4 * &qb;
                let q7 = &q6 * &qb;
                let q8 = &q4 * &q4;
                q8 + q7 + 1u32 + &qb - q5 - q4 - q3
            }
        })
    }

    /// `|Inndiag(T) : T|`.
    pub fn inndiag_index(&self, q: u64) -> u64 {
        match self {
            ExceptionalFamily::E6 => gcd(3, q - 1),
            ExceptionalFamily::TwistedE6 => gcd(3, q + 1),
            ExceptionalFamily::E7 => gcd(2, q - 1),
            _ => 1,
        }
    }

    /// `|Out(T)|`.
    pub fn out_order(&self, q: u64) -> Result<u64> {
        let (p, f) = self.validate(q)?;
        let d = self.inndiag_index(q);
        Ok(match self {
            ExceptionalFamily::Suzuki | ExceptionalFamily::Ree | ExceptionalFamily::E8 => f,
            ExceptionalFamily::TwistedF4 if q == 2 => 2,
            ExceptionalFamily::TwistedF4 => f,
            ExceptionalFamily::G2 => if p == 3 { 2 * f } else { f },
            ExceptionalFamily::TrialityD4 => 3 * f,
            ExceptionalFamily::F4 => if p == 2 { 2 * f } else { f },
            ExceptionalFamily::E6 | ExceptionalFamily::TwistedE6 => 2 * d * f,
            ExceptionalFamily::E7 => d * f,
        })
    }

    /// The class-size lower bound quoted for this family, if any: `q^34` for `E7(q)`, `q >= 3`.
    pub fn default_min_class(&self, q: u64) -> Option<BigUint> {
        (*self == ExceptionalFamily::E7 && q >= 3).then(|| pow(q, 34))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalCheck {
    pub family: ExceptionalFamily,
    pub q: u64,
    pub torus: BigUint,
    pub d: u64,
    pub out: u64,
    /// `|Out(T)| (2 d |y|)^2`.
    pub rhs: BigUint,
    pub min_class: BigUint,
    pub holds: bool,
}

/// `min_class > |Out(T)| (2 d |y|)^2`. Without a supplied bound only the quoted `E7` one is used.
pub fn exceptional_check(family: ExceptionalFamily, q: u64, min_class: Option<BigUint>) -> Result<ExceptionalCheck> {
    let torus = family.torus_order(q)?;
    let d = family.inndiag_index(q);
    let out = family.out_order(q)?;
    let min_class = min_class.or_else(|| family.default_min_class(q)).ok_or_else(|| {
        Error::MissingData(format!("no class-size lower bound supplied for {family:?}({q})"))
    })?;
    let inv = big(2 * d) * &torus;
    let rhs = big(out) * &inv * &inv;
    Ok(ExceptionalCheck {
        family,
        q,
        holds: min_class > rhs,
        torus,
        d,
        out,
        rhs,
        min_class,
    })
}

/// Decimal approximation for reports.
pub fn approx(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::INFINITY)
}
