//! Polyvector fields on the Frobenius twist and their embedding into the
//! crystalline polydifferential complex.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field;
use crate::matrix::FpMatrix;
use crate::poly::{Polynomial, Var};
use crate::tensor::{CoefficientTag, SlotKind, TensorOperator};

/// `c(t) · ξ_1^{m_1} ⋯ ξ_i^{m_i}`, one fiber variable per argument slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolMonomial {
    pub coefficient: Polynomial,
    pub exponents: Vec<u32>,
}

impl PolMonomial {
    pub fn new(coefficient: Polynomial, exponents: Vec<u32>) -> Self {
        Self { coefficient: coefficient.with_var(Var::T), exponents }
    }

    pub fn arity(&self) -> usize {
        self.exponents.len()
    }
}

/// A finite sum of [`PolMonomial`]s of a fixed arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolElement {
    p: u32,
    arity: usize,
    terms: BTreeMap<Vec<u32>, Polynomial>,
}

impl PolElement {
    pub fn zero(p: u32, arity: usize) -> Self {
        Self { p, arity, terms: BTreeMap::new() }
    }

    pub fn from_monomial(m: &PolMonomial) -> Self {
        let mut out = Self::zero(m.coefficient.modulus(), m.arity());
        out.add(m.exponents.clone(), &m.coefficient, 1);
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Polynomial> {
        &self.terms
    }

    pub fn monomials(&self) -> Vec<PolMonomial> {
        self.terms.iter().map(|(e, c)| PolMonomial::new(c.clone(), e.clone())).collect()
    }

    fn add(&mut self, exponents: Vec<u32>, c: &Polynomial, w: u32) {
        if c.is_zero() || w.is_multiple_of(self.p) {
            return;
        }
        let entry = self.terms.entry(exponents.clone()).or_insert_with(|| Polynomial::zero(self.p, Var::T));
        entry.add_scaled_assign(c, w, 0);
        if entry.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    /// The k-th coface: `ξ^0` prepended / appended at the ends, and
    /// `ξ^m ↦ Σ_j C(m, j) ξ^j ⊗ ξ^{m-j}` on slot k otherwise.
    pub fn coface(&self, k: usize) -> Result<Self> {
        let i = self.arity;
        if k > i + 1 {
            return Err(Error::IndexOutOfRange { index: k, bound: i + 1 });
        }
        let mut out = Self::zero(self.p, i + 1);
        for (e, c) in &self.terms {
            if k == 0 || k == i + 1 {
                let mut ne = e.clone();
                ne.insert(if k == 0 { 0 } else { i }, 0);
                out.add(ne, c, 1);
            } else {
                let m = e[k - 1];
                for j in 0..=m {
                    let mut ne = e[..k - 1].to_vec();
                    ne.push(j);
                    ne.push(m - j);
                    ne.extend_from_slice(&e[k..]);
                    out.add(ne, c, field::binom(m as u64, j as u64, self.p));
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: other.arity });
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add(e.clone(), c, 1);
        }
        Ok(out)
    }

    /// Multiplies by a function on the twist.
    pub fn mul_coefficient(&self, f: &Polynomial) -> Self {
        let f = f.clone().with_var(Var::T);
        let mut out = Self::zero(self.p, self.arity);
        for (e, c) in &self.terms {
            out.add(e.clone(), &(c * &f), 1);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `δ = Σ_k (-1)^k d_k`.
    pub fn differential(&self) -> Self {
        let mut out = Self::zero(self.p, self.arity + 1);
        for k in 0..=self.arity + 1 {
            let face = self.coface(k).expect("index in range");
            let w = if k % 2 == 0 { 1 } else { self.p - 1 };
            for (e, c) in &face.terms {
                out.add(e.clone(), c, w);
            }
        }
        out
    }

    pub fn embed(&self) -> Result<TensorOperator> {
        let mut out = TensorOperator::zero(self.p, self.arity, CoefficientTag::O, SlotKind::Crystalline)?;
        for (e, c) in &self.terms {
            out = out.try_add(&pol_embed(&PolMonomial::new(c.clone(), e.clone()))?)?;
        }
        Ok(out)
    }
}

/// An F_p-basis of the cocycles of `Pol` in the given arity with constant
/// coefficients and exponents in `1..=max_exponent` (the normalized part).
pub fn normalized_cocycles(p: u32, arity: usize, max_exponent: u32) -> Result<Vec<PolElement>> {
    field::check_prime(p)?;
    let mut keys: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..arity {
        keys = keys
            .into_iter()
            .flat_map(|k| {
                (1..=max_exponent).map(move |m| {
                    let mut n = k.clone();
                    n.push(m);
                    n
                })
            })
            .collect();
    }
    let one = Polynomial::one(p, Var::T);
    let images: Vec<PolElement> = keys
        .iter()
        .map(|k| PolElement::from_monomial(&PolMonomial::new(one.clone(), k.clone())).differential())
        .collect();
    let mut rows: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for im in &images {
        for e in im.terms.keys() {
            let n = rows.len();
            rows.entry(e.clone()).or_insert(n);
        }
    }
    let columns: Vec<Vec<u32>> = images
        .iter()
        .map(|im| {
            let mut c = vec![0; rows.len()];
            for (e, v) in &im.terms {
                c[rows[e]] = v.coeff(0);
            }
            c
        })
        .collect();
    let m = FpMatrix::from_columns(p, rows.len(), &columns);
    Ok(m.kernel()
        .into_iter()
        .map(|v| {
            let mut out = PolElement::zero(p, arity);
            for (k, &c) in keys.iter().zip(&v) {
                out.add(k.clone(), &one, c);
            }
            out
        })
        .collect())
}

/// `t^e ξ^{m_1} ⋯ ξ^{m_i} ↦ x^{pe} d^{p m_1} ⊗ ⋯ ⊗ d^{p m_i}` (crystalline slots).
pub fn pol_embed(m: &PolMonomial) -> Result<TensorOperator> {
    let p = m.coefficient.modulus();
    let orders = m.exponents.iter().map(|&e| e * p).collect();
    TensorOperator::monomial(m.coefficient.inflate(), orders, 0, CoefficientTag::O, SlotKind::Crystalline)
}
