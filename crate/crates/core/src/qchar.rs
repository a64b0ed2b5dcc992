//! Truncated q-series with integer coefficients and a rational global
//! exponent shift, Gaussian binomials, and the level-one branching functions
//! that the graded quotient dimensions must reproduce.

use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Rat;
use crate::wedge::GradedDims;

/// q^shift * (c_0 + c_1 q + ... + c_order q^order); coefficients beyond the
/// truncation order are unknown, coefficients below the shift are zero.
#[derive(Clone, PartialEq, Debug)]
pub struct QSeries {
    shift: Rat,
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn new(shift: Rat, coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty());
        QSeries { shift, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        QSeries {
            shift: Rat::zero(),
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// 1 - q^k, truncated.
    pub fn one_minus_q_pow(k: usize, order: usize) -> Self {
        let mut s = Self::one(order);
        if k <= order {
            s.coeffs[k] = -BigInt::one();
        }
        s
    }

    /// The monomial q^e with a rational exponent.
    pub fn q_pow(e: Rat, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.shift = e;
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn shift(&self) -> &Rat {
        &self.shift
    }

    /// Truncation order relative to the shift.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Largest absolute exponent with a known coefficient.
    pub fn boundary(&self) -> Rat {
        &self.shift + Rat::from_integer(BigInt::from(self.order() as i64))
    }

    /// Coefficient at absolute exponent e, if within the known range.
    pub fn coeff_at(&self, e: &Rat) -> Option<BigInt> {
        let off = e - &self.shift;
        if !off.is_integer() {
            return Some(BigInt::zero());
        }
        let k = off.to_integer();
        if k.is_negative() {
            return Some(BigInt::zero());
        }
        let k = k.to_usize()?;
        if k <= self.order() {
            Some(self.coeffs[k].clone())
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        coeffs.resize(coeffs.len().max(1), BigInt::zero());
        QSeries {
            shift: self.shift.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        QSeries {
            shift: self.shift.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Addition; the shifts must differ by an integer. The result's order is
    /// set so that no unknown coefficient is reported as known.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let diff = &other.shift - &self.shift;
        if !diff.is_integer() {
            return Err(Error::ShiftMismatch(
                self.shift.to_string(),
                other.shift.to_string(),
            ));
        }
        let d = diff.to_integer().to_i64().ok_or_else(|| {
            Error::Overflow("shift difference".into())
        })?;
        let (lo, hi, off) = if d >= 0 {
            (self, other, d as usize)
        } else {
            (other, self, (-d) as usize)
        };
        // lo has the smaller shift; hi starts off steps later
        let boundary = lo.order().min(off + hi.order());
        let mut coeffs = vec![BigInt::zero(); boundary + 1];
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c += &lo.coeffs[k];
            if k >= off && k - off <= hi.order() {
                *c += &hi.coeffs[k - off];
            }
        }
        Ok(QSeries {
            shift: lo.shift.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Multiplication: shifts add, order is the minimum of the operand
    /// orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        QSeries {
            shift: &self.shift + &other.shift,
            coeffs,
        }
    }

    /// Inverse of a series whose constant coefficient is a unit (+-1).
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !(c0 == &BigInt::one() || c0 == &(-BigInt::one())) {
            return Err(Error::OutOfRange(
                "series inverse needs constant coefficient +-1".into(),
            ));
        }
        let order = self.order();
        let mut inv = vec![BigInt::zero(); order + 1];
        inv[0] = c0.clone(); // 1/c0 = c0 for +-1
        for k in 1..=order {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &inv[k - j];
            }
            inv[k] = -c0 * acc;
        }
        Ok(QSeries {
            shift: -&self.shift,
            coeffs: inv,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "shift": { "num": self.shift.numer().to_string(), "den": self.shift.denom().to_string() },
            "coeffs": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }

    /// Text form "c0 + c1*q^{s+1} + ...".
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = &self.shift + Rat::from_integer(BigInt::from(k as i64));
            let es = if e.is_integer() {
                e.to_integer().to_string()
            } else {
                format!("({})", e)
            };
            let term = if e.is_zero() {
                c.to_string()
            } else if c.is_one() {
                format!("q^{}", es)
            } else if *c == -BigInt::one() {
                format!("-q^{}", es)
            } else {
                format!("{}*q^{}", c, es)
            };
            parts.push(term);
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// [n]_q! = prod_{j=1}^{n} (1 - q^j), truncated.
pub fn q_factorial(n: u64, order: usize) -> QSeries {
    let mut out = QSeries::one(order);
    for j in 1..=n {
        out = out.mul(&QSeries::one_minus_q_pow(j as usize, order));
    }
    out
}

/// Gaussian binomial coefficient, a polynomial in q with nonnegative
/// coefficients; zero series outside 0 <= l <= n.
pub fn q_binomial(n: i64, l: i64, order: usize) -> QSeries {
    if l < 0 || l > n {
        return QSeries::zero(order);
    }
    let mut num = QSeries::one(order);
    let mut den = QSeries::one(order);
    for i in 1..=l {
        num = num.mul(&QSeries::one_minus_q_pow((n - l + i) as usize, order));
        den = den.mul(&QSeries::one_minus_q_pow(i as usize, order));
    }
    num.mul(&den.invert().expect("unit constant"))
}

/// Branching function: sum over n == i (mod 2), n - 2l = lambda of
/// q^{n^2/4} / [n]_q! * ([n,l] - [n,l-1]), truncated at absolute exponent
/// `order`. Inconsistent parity yields the zero series.
pub fn branching_char(i: u8, lambda: u64, order: usize) -> Result<QSeries> {
    assert!(i < 2);
    if lambda % 2 != i as u64 % 2 {
        return Ok(QSeries::zero(order));
    }
    // accumulate with the parity-fixed fractional shift
    let base_shift = if i == 0 { Rat::zero() } else { Rat::new(1.into(), 4.into()) };
    let mut acc = QSeries::q_pow(base_shift.clone(), order).mul(&QSeries::zero(order));
    let mut n = lambda;
    loop {
        let min_exp = Rat::new(BigInt::from(n) * BigInt::from(n), 4.into());
        if &min_exp - &base_shift > Rat::from_integer(BigInt::from(order as i64)) {
            break;
        }
        let l = ((n - lambda) / 2) as i64;
        let diff = q_binomial(n as i64, l, order).sub(&q_binomial(n as i64, l - 1, order))?;
        let term = QSeries::q_pow(min_exp, order)
            .mul(&q_factorial(n, order).invert()?)
            .mul(&diff);
        acc = acc.add(&term)?;
        n += 2;
    }
    // report exactly the requested absolute window
    let rel = (Rat::from_integer(BigInt::from(order as i64)) - acc.shift()).to_integer();
    let rel = rel.to_usize().unwrap_or(0);
    Ok(acc.truncate(rel))
}

/// Outcome of comparing graded dimensions against a reference series.
#[derive(Clone, Debug, PartialEq)]
pub struct MatchReport {
    pub matched: bool,
    pub checked_to: i64,
    pub first_mismatch: Option<(i64, u64, BigInt)>,
}

impl MatchReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "matched": self.matched,
            "checked_to": self.checked_to,
            "first_mismatch": self.first_mismatch.as_ref().map(|(d, got, want)| {
                serde_json::json!({ "deg": d, "dims": got, "reference": want.to_string() })
            }),
        })
    }
}

/// Compare integer-graded dimensions with a reference series coefficient by
/// coefficient up to `order`. The reference must cover the whole window.
pub fn char_compare(dims: &GradedDims, reference: &QSeries, order: i64) -> Result<MatchReport> {
    let lo = dims.dims.keys().next().copied().unwrap_or(0).min(0);
    for d in lo..=order {
        let e = Rat::from_integer(BigInt::from(d));
        let want = reference.coeff_at(&e).ok_or_else(|| {
            Error::InsufficientData(format!("reference series unknown at q^{d}"))
        })?;
        let got = dims.dim(d);
        if BigInt::from(got) != want {
            return Ok(MatchReport {
                matched: false,
                checked_to: order,
                first_mismatch: Some((d, got, want)),
            });
        }
    }
    Ok(MatchReport {
        matched: true,
        checked_to: order,
        first_mismatch: None,
    })
}
