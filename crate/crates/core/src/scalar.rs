//! The coefficient ring for tower levels: Gaussian rationals extended by the
//! invertible symbols pi and zeta0 = zeta(-pi i).
//!
//! Elements are finite sums  sum  (a + b i) * pi^j * zeta0^k  with exact
//! rational a, b and integer (possibly negative) j, k. All tower identities
//! are verified in this ring; numbers enter only through
//! [`crate::barnes::numeric_instantiate`].

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::poly::{Rat, Scalar};

/// Gaussian rational a + b i with i^2 = -1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussRat {
            re,
            im: Rat::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn i() -> Self {
        GaussRat {
            re: Rat::zero(),
            im: Rat::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussRat {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn neg(&self) -> Self {
        GaussRat {
            re: -&self.re,
            im: -&self.im,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    /// i^k for any integer k.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => Self::one().neg(),
            _ => Self::i().neg(),
        }
    }

    /// 2^k as an exact rational (negative k allowed).
    pub fn two_pow(k: i64) -> Self {
        let mut r = Rat::one();
        let two = Rat::from_integer(2.into());
        for _ in 0..k.unsigned_abs() {
            r *= &two;
        }
        if k < 0 {
            r = r.recip();
        }
        Self::from_rat(r)
    }
}

/// Element of Q(i)[pi^{+-1}, zeta0^{+-1}]: map from (pi power, zeta0 power)
/// to a Gaussian rational.
#[derive(Clone, PartialEq, Debug)]
pub struct ConstScalar {
    terms: BTreeMap<(i64, i64), GaussRat>,
}

impl ConstScalar {
    pub fn zero() -> Self {
        ConstScalar {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::term(0, 0, GaussRat::one())
    }

    pub fn term(pi_pow: i64, zeta0_pow: i64, c: GaussRat) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert((pi_pow, zeta0_pow), c);
        }
        ConstScalar { terms: t }
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::term(0, 0, GaussRat::from_rat(r))
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rat(Rat::from_integer(k.into()))
    }

    /// (2 pi i)^k exactly.
    pub fn two_pi_i_pow(k: i64) -> Self {
        Self::term(k, 0, GaussRat::two_pow(k).mul(&GaussRat::i_pow(k)))
    }

    /// (i zeta0)^k exactly.
    pub fn i_zeta0_pow(k: i64) -> Self {
        Self::term(0, k, GaussRat::i_pow(k))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &GaussRat)> {
        self.terms.iter()
    }

    fn insert(&mut self, key: (i64, i64), c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.insert(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ConstScalar {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for ((p1, z1), c1) in &self.terms {
            for ((p2, z2), c2) in &o.terms {
                out.insert((p1 + p2, z1 + z2), c1.mul(c2));
            }
        }
        out
    }

    /// Inverse of a single-term (monomial) scalar; None for general sums.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let ((p, z), c) = self.terms.iter().next().unwrap();
        // (a+bi)^{-1} = (a-bi)/(a^2+b^2)
        let norm = &c.re * &c.re + &c.im * &c.im;
        if norm.is_zero() {
            return None;
        }
        let inv = GaussRat::new(&c.re / &norm, -&c.im / &norm);
        Some(Self::term(-p, -z, inv))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|((p, z), c)| {
                serde_json::json!({
                    "pi": p,
                    "zeta0": z,
                    "re": { "num": c.re.numer().to_string(), "den": c.re.denom().to_string() },
                    "im": { "num": c.im.numer().to_string(), "den": c.im.denom().to_string() },
                })
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }
}

impl std::ops::Add for ConstScalar {
    type Output = ConstScalar;
    fn add(self, rhs: ConstScalar) -> ConstScalar {
        ConstScalar::add(&self, &rhs)
    }
}

impl std::ops::Mul for ConstScalar {
    type Output = ConstScalar;
    fn mul(self, rhs: ConstScalar) -> ConstScalar {
        ConstScalar::mul(&self, &rhs)
    }
}

impl num::Zero for ConstScalar {
    fn zero() -> Self {
        ConstScalar::zero()
    }
    fn is_zero(&self) -> bool {
        ConstScalar::is_zero(self)
    }
}

impl num::One for ConstScalar {
    fn one() -> Self {
        ConstScalar::one()
    }
}

impl Scalar for ConstScalar {
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn gaussian_multiplication() {
        let i = GaussRat::i();
        assert_eq!(i.mul(&i), GaussRat::one().neg());
        assert_eq!(GaussRat::i_pow(-1), GaussRat::i().neg());
        assert_eq!(GaussRat::i_pow(6), GaussRat::one().neg());
    }

    #[test]
    fn symbol_arithmetic() {
        // (2 pi i)^2 = -4 pi^2
        let s = ConstScalar::two_pi_i_pow(2);
        let expect = ConstScalar::term(2, 0, GaussRat::from_rat(rat(-4, 1)));
        assert_eq!(s, expect);
        // (2 pi i)^{-1} * (2 pi i) = 1
        let prod = ConstScalar::two_pi_i_pow(-1).mul(&ConstScalar::two_pi_i_pow(1));
        assert_eq!(prod, ConstScalar::one());
    }

    #[test]
    fn monomial_inverse_round_trip() {
        let s = ConstScalar::term(3, -2, GaussRat::new(rat(2, 3), rat(-1, 5)));
        let inv = s.monomial_inverse().unwrap();
        assert_eq!(s.mul(&inv), ConstScalar::one());
        let sum = ConstScalar::one().add(&ConstScalar::term(1, 0, GaussRat::one()));
        assert!(sum.monomial_inverse().is_none());
    }
}
