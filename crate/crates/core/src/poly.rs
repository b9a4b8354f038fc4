//! Dense univariate polynomials over F_p.
//!
//! The same type houses functions on the line, `k[x]`, and on its Frobenius
//! twist, `k[t]`, where `t` is identified with `x^p`. Coefficient vectors are
//! always trimmed so that structural equality is mathematical equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{self, FieldElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    T,
}

impl Var {
    fn symbol(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::T => "t",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    p: u32,
    var: Var,
    coeffs: Vec<u32>,
}

impl Polynomial {
    pub fn zero(p: u32, var: Var) -> Self {
        Self { p, var, coeffs: Vec::new() }
    }

    pub fn one(p: u32, var: Var) -> Self {
        Self::constant(1, p, var)
    }

    pub fn constant(c: u32, p: u32, var: Var) -> Self {
        Self::monomial(c, 0, p, var)
    }

    /// `c * var^e`.
    pub fn monomial(c: u32, e: usize, p: u32, var: Var) -> Self {
        let c = c % p;
        if c == 0 {
            return Self::zero(p, var);
        }
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c;
        Self { p, var, coeffs }
    }

    /// The variable itself.
    pub fn var(p: u32, var: Var) -> Self {
        Self::monomial(1, 1, p, var)
    }

    /// Builds from residues in `0..p`, trimming trailing zeros.
    pub fn from_raw(p: u32, var: Var, mut coeffs: Vec<u32>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < p));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, var, coeffs }
    }

    /// Builds from arbitrary integers, reducing mod p.
    pub fn from_coeffs(p: u32, var: Var, coeffs: &[i64]) -> Result<Self> {
        field::check_prime(p)?;
        Ok(Self::from_raw(p, var, coeffs.iter().map(|&c| field::from_i64(c, p)).collect()))
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn variable(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coefficient(&self, i: usize) -> FieldElement {
        FieldElement::from_raw(self.coeff(i), self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Relabels the variable without touching coefficients.
    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if self.var != other.var {
            return Err(Error::VariableMismatch(self.var, other.var));
        }
        Ok(())
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let c = c % self.p;
        if c == 0 {
            return Self::zero(self.p, self.var);
        }
        Self { p: self.p, var: self.var, coeffs: self.coeffs.iter().map(|&a| field::mul(a, c, self.p)).collect() }
    }

    /// Multiplies by `var^e`.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; e];
        coeffs.extend_from_slice(&self.coeffs);
        Self { p: self.p, var: self.var, coeffs }
    }

    /// In-place `self += c * other * var^shift`.
    pub fn add_scaled_assign(&mut self, other: &Self, c: u32, shift: usize) {
        debug_assert_eq!(self.p, other.p);
        let c = c % self.p;
        if c == 0 || other.is_zero() {
            return;
        }
        let need = other.coeffs.len() + shift;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, 0);
        }
        for (i, &a) in other.coeffs.iter().enumerate() {
            let slot = &mut self.coeffs[i + shift];
            *slot = field::add(*slot, field::mul(a, c, self.p), self.p);
        }
        self.trim();
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut r = self.clone();
        r.add_scaled_assign(other, 1, 0);
        Ok(r)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p, self.var);
        }
        let p = self.p;
        let mut coeffs = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = field::add(coeffs[i + j], field::mul(a, b, p), p);
            }
        }
        Self::from_raw(p, self.var, coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.p, self.var);
        for _ in 0..e {
            r = r.mul_unchecked(self);
        }
        r
    }

    /// Division with remainder: `self = q * divisor + r`, `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_compatible(divisor)?;
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let dd = divisor.coeffs.len() - 1;
        let lead_inv = field::inv(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(p, self.var), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = field::mul(rem[i + dd], lead_inv, p);
            if c == 0 {
                continue;
            }
            quot[i] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = field::sub(rem[i + j], field::mul(c, b, p), p);
            }
        }
        rem.truncate(dd);
        Ok((Self::from_raw(p, self.var, quot), Self::from_raw(p, self.var, rem)))
    }

    /// True when `divisor` divides `self` (zero divides only zero).
    pub fn divisible_by(&self, divisor: &Self) -> bool {
        if divisor.is_zero() {
            return self.is_zero();
        }
        self.div_rem(divisor).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Scales to a monic polynomial; zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(field::inv(self.leading(), self.p))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn eval(&self, a: u32) -> u32 {
        self.coeffs.iter().rev().fold(0, |acc, &c| field::add(field::mul(acc, a, self.p), c, self.p))
    }

    /// Ordinary derivative.
    pub fn derivative(&self) -> Self {
        let p = self.p;
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(n, &c)| field::mul(c, (n as u32) % p, p)).collect();
        Self::from_raw(p, self.var, coeffs)
    }

    /// The k-th Hasse derivative: `x^n ↦ C(n, k) x^(n-k)`.
    pub fn hasse_derivative(&self, k: usize) -> Self {
        self.derivative_table(k, |n, k, p| field::binom(n as u64, k as u64, p))
    }

    /// The k-th iterated derivative `(d/dx)^k`: `x^n ↦ n!/(n-k)! x^(n-k)`.
    pub fn nth_derivative(&self, k: usize) -> Self {
        self.derivative_table(k, |n, k, p| field::falling(n as u64, k as u64, p))
    }

    fn derivative_table(&self, k: usize, weight: impl Fn(usize, usize, u32) -> u32) -> Self {
        let p = self.p;
        if k == 0 {
            return self.clone();
        }
        let coeffs = self.coeffs.iter().enumerate().skip(k).map(|(n, &c)| field::mul(c, weight(n, k, p), p)).collect();
        Self::from_raw(p, self.var, coeffs)
    }

    /// Splits `f(x) = Σ_{a<p} g_a(x^p) x^a` and returns `g_0, …, g_{p-1}` in `t`.
    pub fn frobenius_decompose(&self) -> Vec<Polynomial> {
        let p = self.p as usize;
        let mut parts = vec![Vec::new(); p];
        for (n, &c) in self.coeffs.iter().enumerate() {
            let part = &mut parts[n % p];
            let e = n / p;
            if part.len() <= e {
                part.resize(e + 1, 0);
            }
            part[e] = c;
        }
        parts.into_iter().map(|c| Polynomial::from_raw(self.p, Var::T, c)).collect()
    }

    /// Inverse of [`frobenius_decompose`](Self::frobenius_decompose).
    pub fn frobenius_reassemble(parts: &[Polynomial], p: u32) -> Polynomial {
        let mut out = Polynomial::zero(p, Var::X);
        for (a, g) in parts.iter().enumerate() {
            out.add_scaled_assign(&g.inflate().with_var(Var::X), 1, a);
        }
        out
    }

    /// Substitutes `t ↦ x^p`.
    pub fn inflate(&self) -> Polynomial {
        let p = self.p as usize;
        let mut coeffs = vec![0u32; if self.is_zero() { 0 } else { (self.coeffs.len() - 1) * p + 1 }];
        for (e, &c) in self.coeffs.iter().enumerate() {
            coeffs[e * p] = c;
        }
        Polynomial::from_raw(self.p, Var::X, coeffs)
    }

    /// Serialization used by reports: `c0+c1*t+c2*t^2`.
    pub fn to_coeff_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let v = self.var.symbol();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*{v}"),
                _ => format!("{c}*{v}^{i}"),
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let v = self.var.symbol();
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "{v}")?,
                (1, _) => write!(f, "{c}{v}")?,
                (_, 1) => write!(f, "{v}^{i}")?,
                _ => write!(f, "{c}{v}^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.check_compatible(rhs).is_ok(), "incompatible polynomials");
        let mut r = self.clone();
        r.add_scaled_assign(rhs, self.p - 1, 0);
        r
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.p - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn px(p: u32, c: &[i64]) -> Polynomial {
        Polynomial::from_coeffs(p, Var::X, c).unwrap()
    }

    fn pt(p: u32, c: &[i64]) -> Polynomial {
        Polynomial::from_coeffs(p, Var::T, c).unwrap()
    }

    #[test]
    fn hasse_examples() {
        // x^2, k = 1, p = 3 -> 2x
        assert_eq!(px(3, &[0, 0, 1]).hasse_derivative(1), px(3, &[0, 2]));
        assert!(px(5, &[1]).hasse_derivative(1).is_zero());
        for p in [2, 3, 5, 7] {
            assert!(Polynomial::monomial(1, p as usize, p, Var::X).hasse_derivative(1).is_zero());
        }
    }

    #[test]
    fn frobenius_examples() {
        // x^3, p = 2 -> (0, t)
        assert_eq!(px(2, &[0, 0, 0, 1]).frobenius_decompose(), vec![pt(2, &[]), pt(2, &[0, 1])]);
        let one = px(5, &[1]).frobenius_decompose();
        assert_eq!(one[0], pt(5, &[1]));
        assert!(one[1..].iter().all(Polynomial::is_zero));
        // x^2 + x, p = 2 -> (t, 1)
        assert_eq!(px(2, &[0, 1, 1]).frobenius_decompose(), vec![pt(2, &[0, 1]), pt(2, &[1])]);
    }

    #[test]
    fn division_and_gcd() {
        let f = pt(5, &[1, 2, 3, 4]);
        let g = pt(5, &[2, 1]);
        let (q, r) = f.div_rem(&g).unwrap();
        assert_eq!(&(&q * &g) + &r, f);
        assert!(r.degree().unwrap_or(0) < 1);
        let a = pt(3, &[0, 1]); // t
        let b = pt(3, &[0, 0, 1]); // t^2
        assert_eq!(a.gcd(&b).unwrap(), a);
        assert!(b.divisible_by(&a));
        assert!(!a.divisible_by(&b));
    }

    #[test]
    fn coefficient_string() {
        assert_eq!(pt(3, &[0, 0, 1]).to_coeff_string(), "0+0*t+1*t^2");
        assert_eq!(pt(3, &[2]).to_coeff_string(), "2");
        assert_eq!(pt(3, &[1, 2]).to_string(), "2t + 1");
    }

    #[test]
    fn mismatched_moduli_are_rejected() {
        assert_eq!(px(2, &[1]).try_add(&px(3, &[1])), Err(Error::ModulusMismatch(2, 3)));
        assert_eq!(px(2, &[1]).try_mul(&pt(2, &[1])), Err(Error::VariableMismatch(Var::X, Var::T)));
    }
}
