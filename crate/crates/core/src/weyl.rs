//! The operator algebras on the affine line in characteristic p.
//!
//! * crystalline: the Weyl algebra `k<x, d>/(dx - xd - 1)`;
//! * restricted: its quotient by `d^p` (the distinguished central element
//!   `d^p - d^{[p]}` with `d^{[p]} = 0` on the line);
//! * divided-power: Grothendieck operators spanned by Hasse derivatives
//!   `d^{[b]}` with `d^{[i]} d^{[j]} = C(i+j, i) d^{[i+j]}`.
//!
//! Elements are kept in the normal form `Σ c_{a,b} x^a d^b`, functions on the
//! left.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field;
use crate::poly::{Polynomial, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Crystalline,
    Restricted,
    DividedPower,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Crystalline => "crystalline",
            Flavor::Restricted => "restricted",
            Flavor::DividedPower => "divided-power",
        })
    }
}

/// Normal-form operator `Σ c_{a,b} x^a d^b` (or `x^a d^{[b]}`).
///
/// `opposite` marks an element of the opposite algebra: same basis, reversed
/// multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    p: u32,
    flavor: Flavor,
    opposite: bool,
    terms: BTreeMap<(u32, u32), u32>,
}

impl WeylElement {
    pub fn zero(p: u32, flavor: Flavor) -> Self {
        Self { p, flavor, opposite: false, terms: BTreeMap::new() }
    }

    pub fn one(p: u32, flavor: Flavor) -> Self {
        Self::monomial(1, 0, 0, p, flavor)
    }

    /// `c x^a d^b`; in the restricted algebra `b >= p` gives zero.
    pub fn monomial(c: u32, a: u32, b: u32, p: u32, flavor: Flavor) -> Self {
        let mut e = Self::zero(p, flavor);
        e.add_term(a, b, c);
        e
    }

    pub fn x(p: u32, flavor: Flavor) -> Self {
        Self::monomial(1, 1, 0, p, flavor)
    }

    pub fn d(p: u32, flavor: Flavor) -> Self {
        Self::monomial(1, 0, 1, p, flavor)
    }

    /// Multiplication operator by a function.
    pub fn function(f: &Polynomial, flavor: Flavor) -> Self {
        let mut e = Self::zero(f.modulus(), flavor);
        for (a, &c) in f.coeffs().iter().enumerate() {
            e.add_term(a as u32, 0, c);
        }
        e
    }

    /// `Σ f_b(x) d^b` from per-order coefficient polynomials.
    pub fn from_coefficients(p: u32, flavor: Flavor, coeffs: &[Polynomial]) -> Self {
        let mut e = Self::zero(p, flavor);
        for (b, f) in coeffs.iter().enumerate() {
            for (a, &c) in f.coeffs().iter().enumerate() {
                e.add_term(a as u32, b as u32, c);
            }
        }
        e
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn is_opposite(&self) -> bool {
        self.opposite
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), u32> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: u32, b: u32) -> u32 {
        self.terms.get(&(a, b)).copied().unwrap_or(0)
    }

    /// Highest d-order present (0 for zero).
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|&(_, b)| b).max().unwrap_or(0)
    }

    /// Coefficient of `d^b` as a polynomial in x.
    pub fn coefficient_of(&self, b: u32) -> Polynomial {
        let mut coeffs = Vec::new();
        for (&(a, bb), &c) in &self.terms {
            if bb == b {
                let a = a as usize;
                if coeffs.len() <= a {
                    coeffs.resize(a + 1, 0);
                }
                coeffs[a] = c;
            }
        }
        Polynomial::from_raw(self.p, Var::X, coeffs)
    }

    pub(crate) fn add_term(&mut self, a: u32, b: u32, c: u32) {
        let c = c % self.p;
        if c == 0 || (self.flavor == Flavor::Restricted && b >= self.p) {
            return;
        }
        let p = self.p;
        let slot = self.terms.entry((a, b)).or_insert(0);
        *slot = field::add(*slot, c, p);
        if *slot == 0 {
            self.terms.remove(&(a, b));
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if self.flavor != other.flavor || self.opposite != other.opposite {
            return Err(Error::FlavorMismatch(self.describe(), other.describe()));
        }
        Ok(())
    }

    fn describe(&self) -> String {
        if self.opposite {
            format!("{} (opposite)", self.flavor)
        } else {
            self.flavor.to_string()
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut r = self.clone();
        for (&(a, b), &c) in &other.terms {
            r.add_term(a, b, c);
        }
        Ok(r)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(self.p - 1))
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut r = Self { terms: BTreeMap::new(), ..self.clone() };
        for (&(a, b), &v) in &self.terms {
            r.add_term(a, b, field::mul(v, c % self.p, self.p));
        }
        r
    }

    /// Product in the algebra the operands live in (reversed for opposite elements).
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (l, r) = if self.opposite { (other, self) } else { (self, other) };
        let mut out = Self::zero(self.p, self.flavor);
        out.opposite = self.opposite;
        for (&(a, b), &c1) in &l.terms {
            for (&(c, e), &c2) in &r.terms {
                let coef = field::mul(c1, c2, self.p);
                mul_monomials(&mut out, coef, (a, b), (c, e));
            }
        }
        Ok(out)
    }

    /// The polynomial `u(f)`.
    pub fn act(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.modulus() != self.p {
            return Err(Error::ModulusMismatch(self.p, f.modulus()));
        }
        let mut out = Polynomial::zero(self.p, Var::X);
        for (&(a, b), &c) in &self.terms {
            let g = match self.flavor {
                Flavor::DividedPower => f.hasse_derivative(b as usize),
                _ => f.nth_derivative(b as usize),
            };
            out.add_scaled_assign(&g, c, a as usize);
        }
        Ok(out)
    }

    /// Quotient map from the crystalline to the restricted algebra.
    pub fn restrict(&self) -> Result<Self> {
        if self.flavor != Flavor::Crystalline {
            return Err(Error::FlavorMismatch(self.describe(), Flavor::Crystalline.to_string()));
        }
        let mut out = Self::zero(self.p, Flavor::Restricted);
        out.opposite = self.opposite;
        for (&(a, b), &c) in &self.terms {
            out.add_term(a, b, c);
        }
        Ok(out)
    }

    /// Section of the quotient: a restricted element viewed as crystalline.
    pub fn lift(&self) -> Self {
        let mut out = self.clone();
        out.flavor = Flavor::Crystalline;
        out
    }

    /// `d^b ↦ b! d^{[b]}` on operators of order below p.
    pub fn to_divided(&self) -> Result<Self> {
        if self.flavor != Flavor::Restricted {
            return Err(Error::FlavorMismatch(self.describe(), Flavor::Restricted.to_string()));
        }
        let mut out = Self::zero(self.p, Flavor::DividedPower);
        out.opposite = self.opposite;
        for (&(a, b), &c) in &self.terms {
            out.add_term(a, b, field::mul(c, field::factorial(b as u64, self.p), self.p));
        }
        Ok(out)
    }

    /// The same element regarded in the opposite algebra (an involution).
    pub fn opposite(&self) -> Self {
        Self { opposite: !self.opposite, ..self.clone() }
    }

    /// Anti-involution `x ↦ x`, `d ↦ -d`, identifying the opposite algebra
    /// with the algebra itself. Not defined on divided powers.
    pub fn transpose(&self) -> Result<Self> {
        if self.flavor == Flavor::DividedPower {
            return Err(Error::UnsupportedCombination("transpose of divided-power operators".into()));
        }
        let mut out = Self::zero(self.p, self.flavor);
        out.opposite = self.opposite;
        for (&(a, b), &c) in &self.terms {
            // (x^a d^b)^T = (-d)^b x^a
            let sign = if b % 2 == 1 { self.p - 1 } else { 1 };
            mul_monomials(&mut out, field::mul(c, sign, self.p), (0, b), (a, 0));
        }
        Ok(out)
    }

    /// Commutator `uv - vu`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }
}

// out += coef * (x^a d^b)(x^c d^e), rewritten to normal form.
pub(crate) fn mul_monomials(out: &mut WeylElement, coef: u32, (a, b): (u32, u32), (c, e): (u32, u32)) {
    let p = out.p;
    for k in 0..=b.min(c) {
        let (w, order) = match out.flavor {
            // d^b x^c = Σ_k C(b,k) (x^c)^{(k)} d^{b-k}
            Flavor::Crystalline | Flavor::Restricted => {
                let w = field::mul(field::binom(b as u64, k as u64, p), field::falling(c as u64, k as u64, p), p);
                (w, b - k + e)
            }
            // d^{[b]} x^c = Σ_k d^{[k]}(x^c) d^{[b-k]}, then d^{[b-k]} d^{[e]}
            Flavor::DividedPower => {
                let w =
                    field::mul(field::binom(c as u64, k as u64, p), field::binom((b - k + e) as u64, e as u64, p), p);
                (w, b - k + e)
            }
        };
        if w != 0 {
            out.add_term(a + c - k, order, field::mul(coef, w, p));
        }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let dp = self.flavor == Flavor::DividedPower;
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(a, b), &c)| {
                let mut s = String::new();
                if c != 1 || (a == 0 && b == 0) {
                    s.push_str(&c.to_string());
                }
                match a {
                    0 => {}
                    1 => s.push('x'),
                    _ => s.push_str(&format!("x^{a}")),
                }
                match (b, dp) {
                    (0, _) => {}
                    (_, true) => s.push_str(&format!("d^[{b}]")),
                    (1, false) => s.push('d'),
                    (_, false) => s.push_str(&format!("d^{b}")),
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Flavor::*;

    fn m(c: u32, a: u32, b: u32, p: u32, fl: Flavor) -> WeylElement {
        WeylElement::monomial(c, a, b, p, fl)
    }

    #[test]
    fn weyl_relation() {
        for p in [2, 3, 5] {
            let dx = WeylElement::d(p, Crystalline).try_mul(&WeylElement::x(p, Crystalline)).unwrap();
            let expected = m(1, 1, 1, p, Crystalline).try_add(&WeylElement::one(p, Crystalline)).unwrap();
            assert_eq!(dx, expected);
        }
    }

    #[test]
    fn d_squared_times_x() {
        let lhs = m(1, 0, 2, 5, Crystalline).try_mul(&WeylElement::x(5, Crystalline)).unwrap();
        let rhs = m(1, 1, 2, 5, Crystalline).try_add(&m(2, 0, 1, 5, Crystalline)).unwrap();
        assert_eq!(lhs, rhs);
        // Cross-check through the action on x, x^2, x^3.
        for n in 1..=3 {
            let f = Polynomial::monomial(1, n, 5, Var::X);
            assert_eq!(lhs.act(&f).unwrap(), rhs.act(&f).unwrap());
        }
    }

    #[test]
    fn divided_power_products() {
        let d1 = m(1, 0, 1, 5, DividedPower);
        assert_eq!(d1.try_mul(&d1).unwrap(), m(2, 0, 2, 5, DividedPower));
        // d^[1] x = x d^[1] + 1
        let dx = d1.try_mul(&WeylElement::x(5, DividedPower)).unwrap();
        assert_eq!(dx, m(1, 1, 1, 5, DividedPower).try_add(&WeylElement::one(5, DividedPower)).unwrap());
    }

    #[test]
    fn actions() {
        let x2 = Polynomial::monomial(1, 2, 7, Var::X);
        assert_eq!(WeylElement::d(7, Crystalline).act(&x2).unwrap(), Polynomial::monomial(2, 1, 7, Var::X));
        assert_eq!(WeylElement::one(7, Crystalline).act(&x2).unwrap(), x2);
        for p in [2, 3, 5] {
            let dp = m(1, 0, p, p, Crystalline);
            for n in 0..4 * p as usize {
                assert!(dp.act(&Polynomial::monomial(1, n, p, Var::X)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn restriction() {
        for p in [2, 3, 5] {
            assert!(m(1, 0, p, p, Crystalline).restrict().unwrap().is_zero());
            assert!(m(1, 0, p + 1, p, Crystalline).restrict().unwrap().is_zero());
            assert_eq!(m(1, 3, 1, p, Crystalline).restrict().unwrap(), m(1, 3, 1, p, Restricted));
        }
        assert!(matches!(m(1, 0, 1, 3, Restricted).restrict(), Err(Error::FlavorMismatch(..))));
    }

    #[test]
    fn to_divided_examples() {
        assert_eq!(m(1, 0, 1, 3, Restricted).to_divided().unwrap(), m(1, 0, 1, 3, DividedPower));
        let d2 = m(1, 0, 2, 3, Restricted);
        assert_eq!(d2.to_divided().unwrap(), m(2, 0, 2, 3, DividedPower));
        let x3 = Polynomial::monomial(1, 3, 3, Var::X);
        assert!(d2.act(&x3).unwrap().is_zero());
        assert!(d2.to_divided().unwrap().act(&x3).unwrap().is_zero());
    }

    #[test]
    fn opposite_multiplication() {
        let p = 3;
        let d = WeylElement::d(p, Restricted);
        let x = WeylElement::x(p, Restricted);
        let dx = d.try_mul(&x).unwrap();
        assert_eq!(dx.opposite(), x.opposite().try_mul(&d.opposite()).unwrap());
        assert_eq!(dx.opposite().opposite(), dx);
        assert_eq!(WeylElement::one(p, Restricted).opposite().opposite(), WeylElement::one(p, Restricted));
        assert!(matches!(d.try_mul(&x.opposite()), Err(Error::FlavorMismatch(..))));
    }

    #[test]
    fn transpose_is_anti_involution() {
        let p = 5;
        let u = m(2, 1, 2, p, Restricted).try_add(&m(1, 3, 1, p, Restricted)).unwrap();
        let v = m(3, 2, 3, p, Restricted).try_add(&WeylElement::x(p, Restricted)).unwrap();
        let lhs = u.try_mul(&v).unwrap().transpose().unwrap();
        let rhs = v.transpose().unwrap().try_mul(&u.transpose().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(u.transpose().unwrap().transpose().unwrap(), u);
    }

    #[test]
    fn mismatches() {
        let a = WeylElement::d(3, Restricted);
        assert!(matches!(a.try_mul(&WeylElement::d(5, Restricted)), Err(Error::ModulusMismatch(3, 5))));
        assert!(matches!(a.try_mul(&WeylElement::d(3, Crystalline)), Err(Error::FlavorMismatch(..))));
    }
}
