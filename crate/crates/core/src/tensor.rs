//! Polydifferential operators `D ⊗_O … ⊗_O D ⊗_O P` in normal form.
//!
//! A term `f(x) · d^{b_1} ⊗ … ⊗ d^{b_i} ⊗ q_c` is the multilinear operator
//! `(g_1, …, g_i) ↦ f · d^{b_1}(g_1) ⋯ d^{b_i}(g_i) · q_c` where `q_c` is the
//! c-th basis element of the coefficient bimodule (`1` for `O`, `d^c` for the
//! operator algebras). All function coefficients sit on the far left.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field;
use crate::poly::{Polynomial, Var};
use crate::weyl::{Flavor, WeylElement};

/// The coefficient bimodule `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientTag {
    /// The structure sheaf `O_X = k[x]`.
    O,
    /// The restricted operators `D^{≤p-1}`.
    Dres,
    /// The opposite of the restricted operators.
    DresOp,
    /// Crystalline operators (unbounded order).
    Dfull,
}

impl CoefficientTag {
    pub fn has_payload(self) -> bool {
        self != CoefficientTag::O
    }
}

impl fmt::Display for CoefficientTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoefficientTag::O => "O",
            CoefficientTag::Dres => "Dres",
            CoefficientTag::DresOp => "DresOp",
            CoefficientTag::Dfull => "Dfull",
        })
    }
}

/// Whether argument slots carry restricted (`b < p`) or crystalline operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SlotKind {
    Restricted,
    Crystalline,
}

/// Multi-index of slot orders plus the payload basis index.
pub type TermKey = (Vec<u32>, u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorOperator {
    p: u32,
    arity: usize,
    coeff: CoefficientTag,
    slots: SlotKind,
    terms: BTreeMap<TermKey, Polynomial>,
}

impl TensorOperator {
    pub fn zero(p: u32, arity: usize, coeff: CoefficientTag, slots: SlotKind) -> Result<Self> {
        field::check_prime(p)?;
        match (coeff, slots) {
            (CoefficientTag::Dres | CoefficientTag::DresOp, SlotKind::Crystalline)
            | (CoefficientTag::Dfull, SlotKind::Restricted) => {
                return Err(Error::UnsupportedCombination(format!("{coeff} coefficients with {slots:?} slots")))
            }
            _ => {}
        }
        Ok(Self { p, arity, coeff, slots, terms: BTreeMap::new() })
    }

    /// `f · d^{orders[0]} ⊗ … ⊗ q_payload`.
    pub fn monomial(
        f: Polynomial,
        orders: Vec<u32>,
        payload: u32,
        coeff: CoefficientTag,
        slots: SlotKind,
    ) -> Result<Self> {
        let mut t = Self::zero(f.modulus(), orders.len(), coeff, slots)?;
        if !coeff.has_payload() && payload != 0 {
            return Err(Error::IndexOutOfRange { index: payload as usize, bound: 1 });
        }
        t.add_term(orders, payload, &f);
        Ok(t)
    }

    /// Arity-0 operator given by a function (coefficient `O`).
    pub fn function(f: Polynomial, slots: SlotKind) -> Result<Self> {
        Self::monomial(f, Vec::new(), 0, CoefficientTag::O, slots)
    }

    /// `1 ⊗ … ⊗ 1` of the given arity with coefficient `O`: the multiplication
    /// `(g_1, …, g_i) ↦ g_1 ⋯ g_i`.
    pub fn unit(p: u32, arity: usize, slots: SlotKind) -> Result<Self> {
        Self::monomial(Polynomial::one(p, Var::X), vec![0; arity], 0, CoefficientTag::O, slots)
    }

    /// A module-valued arity-0 element from an operator.
    pub fn from_operator(u: &WeylElement, coeff: CoefficientTag) -> Result<Self> {
        let slots = if coeff == CoefficientTag::Dfull { SlotKind::Crystalline } else { SlotKind::Restricted };
        let mut t = Self::zero(u.modulus(), 0, coeff, slots)?;
        for (&(a, b), &c) in u.terms() {
            t.add_term(Vec::new(), b, &Polynomial::monomial(c, a as usize, u.modulus(), Var::X));
        }
        Ok(t)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coefficient_tag(&self) -> CoefficientTag {
        self.coeff
    }

    pub fn slot_kind(&self) -> SlotKind {
        self.slots
    }

    pub fn terms(&self) -> &BTreeMap<TermKey, Polynomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest slot order appearing in any term.
    pub fn max_slot_order(&self) -> u32 {
        self.terms.keys().flat_map(|(o, _)| o.iter().copied()).max().unwrap_or(0)
    }

    pub fn max_payload_order(&self) -> u32 {
        self.terms.keys().map(|(_, c)| *c).max().unwrap_or(0)
    }

    fn empty_like(&self, arity: usize) -> Self {
        Self { p: self.p, arity, coeff: self.coeff, slots: self.slots, terms: BTreeMap::new() }
    }

    fn order_survives(&self, b: u32) -> bool {
        self.slots == SlotKind::Crystalline || b < self.p
    }

    fn payload_survives(&self, c: u32) -> bool {
        match self.coeff {
            CoefficientTag::O => c == 0,
            CoefficientTag::Dres | CoefficientTag::DresOp => c < self.p,
            CoefficientTag::Dfull => true,
        }
    }

    /// Adds `f` to the coefficient of `(orders, payload)`; terms outside the
    /// normal-form range (restricted orders ≥ p) vanish.
    pub(crate) fn add_term(&mut self, orders: Vec<u32>, payload: u32, f: &Polynomial) {
        self.add_scaled_term(orders, payload, f, 1);
    }

    pub(crate) fn add_scaled_term(&mut self, orders: Vec<u32>, payload: u32, f: &Polynomial, c: u32) {
        debug_assert_eq!(orders.len(), self.arity);
        if f.is_zero() || c.is_multiple_of(self.p) {
            return;
        }
        if !orders.iter().all(|&b| self.order_survives(b)) || !self.payload_survives(payload) {
            return;
        }
        let key = (orders, payload);
        match self.terms.get_mut(&key) {
            Some(g) => {
                g.add_scaled_assign(f, c, 0);
                if g.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, f.scale(c).with_var(Var::X));
            }
        }
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: other.arity });
        }
        if self.coeff != other.coeff || self.slots != other.slots {
            return Err(Error::CoefficientMismatch(format!(
                "{}/{:?} vs {}/{:?}",
                self.coeff, self.slots, other.coeff, other.slots
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for ((o, c), f) in &other.terms {
            out.add_term(o.clone(), *c, f);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(self.p - 1))
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = self.empty_like(self.arity);
        for ((o, pl), f) in &self.terms {
            out.add_scaled_term(o.clone(), *pl, f, c);
        }
        out
    }

    /// Multiplies every coefficient by a function on the left.
    pub fn mul_function(&self, g: &Polynomial) -> Self {
        let mut out = self.empty_like(self.arity);
        for ((o, pl), f) in &self.terms {
            out.add_term(o.clone(), *pl, &(f * &g.clone().with_var(Var::X)));
        }
        out
    }

    /// Applies the operator to `arity` functions. The result is an element of
    /// the coefficient module, returned as its `d^c` coefficients (a single
    /// polynomial for `O`).
    pub fn evaluate(&self, args: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: args.len() });
        }
        for a in args {
            if a.modulus() != self.p {
                return Err(Error::ModulusMismatch(self.p, a.modulus()));
            }
        }
        let mut out: Vec<Polynomial> = Vec::new();
        for ((orders, c), f) in &self.terms {
            let mut value = f.clone();
            for (b, g) in orders.iter().zip(args) {
                value = &value * &g.clone().with_var(Var::X).nth_derivative(*b as usize);
                if value.is_zero() {
                    break;
                }
            }
            let c = *c as usize;
            if out.len() <= c {
                out.resize(c + 1, Polynomial::zero(self.p, Var::X));
            }
            out[c].add_scaled_assign(&value, 1, 0);
        }
        if self.coeff == CoefficientTag::DresOp {
            // Stored data is the transpose image of the value.
            let flavor = Flavor::Restricted;
            let v = WeylElement::from_coefficients(self.p, flavor, &out).transpose()?;
            out = (0..=v.order()).map(|b| v.coefficient_of(b)).collect();
        }
        while out.last().is_some_and(Polynomial::is_zero) {
            out.pop();
        }
        if out.is_empty() {
            out.push(Polynomial::zero(self.p, Var::X));
        }
        Ok(out)
    }

    /// Evaluation as an element of the coefficient algebra (order-0 for `O`).
    pub fn evaluate_operator(&self, args: &[Polynomial]) -> Result<WeylElement> {
        let flavor = if self.coeff == CoefficientTag::Dfull { Flavor::Crystalline } else { Flavor::Restricted };
        Ok(WeylElement::from_coefficients(self.p, flavor, &self.evaluate(args)?))
    }

    /// The k-th coface, `0 ≤ k ≤ arity + 1`:
    /// `g_1 A(g_2, …)`, `A(…, g_k g_{k+1}, …)`, `A(…) g_{i+1}`.
    pub fn coface(&self, k: usize) -> Result<Self> {
        let i = self.arity;
        if k > i + 1 {
            return Err(Error::IndexOutOfRange { index: k, bound: i + 1 });
        }
        let p = self.p;
        let mut out = self.empty_like(i + 1);
        for ((orders, c), f) in &self.terms {
            if k == 0 {
                let mut o = Vec::with_capacity(i + 1);
                o.push(0);
                o.extend_from_slice(orders);
                out.add_term(o, *c, f);
            } else if k <= i {
                // Comultiplication on slot k: d^b ↦ Σ C(b, j) d^j ⊗ d^{b-j}.
                let b = orders[k - 1];
                for j in 0..=b {
                    let w = field::binom(b as u64, j as u64, p);
                    let mut o = Vec::with_capacity(i + 1);
                    o.extend_from_slice(&orders[..k - 1]);
                    o.push(j);
                    o.push(b - j);
                    o.extend_from_slice(&orders[k..]);
                    out.add_scaled_term(o, *c, f, w);
                }
            } else if !self.coeff.has_payload() {
                let mut o = orders.clone();
                o.push(0);
                out.add_term(o, 0, f);
            } else {
                // q_c · g = d^c g = Σ C(c, j) g^{(j)} d^{c-j}.
                for j in 0..=*c {
                    let w = field::binom(*c as u64, j as u64, p);
                    let mut o = orders.clone();
                    o.push(j);
                    out.add_scaled_term(o, c - j, f, w);
                }
            }
        }
        Ok(out)
    }

    /// The k-th codegeneracy, `0 ≤ k < arity`: inserts the constant 1 as argument `k+1`.
    pub fn codegeneracy(&self, k: usize) -> Result<Self> {
        if k >= self.arity {
            return Err(Error::IndexOutOfRange { index: k, bound: self.arity });
        }
        let mut out = self.empty_like(self.arity - 1);
        for ((orders, c), f) in &self.terms {
            if orders[k] == 0 {
                let mut o = orders.clone();
                o.remove(k);
                out.add_term(o, *c, f);
            }
        }
        Ok(out)
    }

    /// `δ = Σ_k (-1)^k d_k`.
    pub fn cochain_differential(&self) -> Self {
        let mut out = self.empty_like(self.arity + 1);
        for k in 0..=self.arity + 1 {
            let face = self.coface(k).expect("index in range");
            let sign = if k % 2 == 0 { 1 } else { self.p - 1 };
            for ((o, c), f) in face.terms {
                out.add_scaled_term(o, c, &f, sign);
            }
        }
        out
    }

    /// Cup product `(-1)^{ij} A(a_1..a_i) · B(a_{i+1}..a_{i+j})`; `A` must have
    /// coefficients in `O`.
    pub fn cup(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if self.coeff != CoefficientTag::O || self.slots != other.slots {
            return Err(Error::CoefficientMismatch(format!(
                "cannot multiply {}/{:?} by {}/{:?}",
                self.coeff, self.slots, other.coeff, other.slots
            )));
        }
        let sign = if (self.arity * other.arity) % 2 == 1 { self.p - 1 } else { 1 };
        let mut out = other.empty_like(self.arity + other.arity);
        for ((o1, _), f1) in &self.terms {
            for ((o2, c), f2) in &other.terms {
                let mut o = o1.clone();
                o.extend_from_slice(o2);
                out.add_scaled_term(o, *c, &(f1 * f2), sign);
            }
        }
        Ok(out)
    }

    /// Projection onto terms with every slot order ≥ 1 (the normalized part).
    pub fn normalized_part(&self) -> Self {
        let mut out = self.empty_like(self.arity);
        for ((o, c), f) in &self.terms {
            if o.iter().all(|&b| b >= 1) {
                out.add_term(o.clone(), *c, f);
            }
        }
        out
    }
}

impl fmt::Display for TensorOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((o, c), g)| {
                let mut slots: Vec<String> = o.iter().map(|b| format!("d^{b}")).collect();
                if self.coeff.has_payload() {
                    slots.push(format!("[d^{c}]"));
                }
                format!("({g})·{}", slots.join("⊗"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use CoefficientTag::*;
    use SlotKind::*;

    fn x(p: u32, e: usize) -> Polynomial {
        Polynomial::monomial(1, e, p, Var::X)
    }

    fn op(p: u32, orders: &[u32], coeff: CoefficientTag, payload: u32) -> TensorOperator {
        TensorOperator::monomial(x(p, 0), orders.to_vec(), payload, coeff, Restricted).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let p = 5;
        let f = Polynomial::from_coeffs(p, Var::X, &[1, 2, 3]).unwrap();
        let g = Polynomial::from_coeffs(p, Var::X, &[0, 4, 0, 1]).unwrap();
        let dd = op(p, &[1, 1], O, 0);
        assert_eq!(dd.evaluate(&[f.clone(), g.clone()]).unwrap()[0], &f.derivative() * &g.derivative());
        let c = TensorOperator::function(f.clone(), Restricted).unwrap();
        assert_eq!(c.evaluate(&[]).unwrap()[0], f);
        let one_d = op(p, &[0, 1], O, 0);
        assert_eq!(one_d.evaluate(&[x(p, 1), x(p, 2)]).unwrap()[0], x(p, 2).scale(2));
        assert!(matches!(dd.evaluate(&[f]), Err(Error::ArityMismatch { expected: 2, got: 1 })));
    }

    #[test]
    fn coface_examples() {
        let p = 5;
        let d = op(p, &[1], O, 0);
        let expected = op(p, &[1, 0], O, 0).try_add(&op(p, &[0, 1], O, 0)).unwrap();
        assert_eq!(d.coface(1).unwrap(), expected);
        assert_eq!(d.coface(0).unwrap(), op(p, &[0, 1], O, 0));
        let unit0 = TensorOperator::unit(p, 0, Restricted).unwrap();
        assert_eq!(unit0.coface(0).unwrap(), op(p, &[0], O, 0));
        assert!(d.coface(3).is_err());
    }

    #[test]
    fn codegeneracy_examples() {
        let p = 3;
        assert!(op(p, &[1, 0], O, 0).codegeneracy(0).unwrap().is_zero());
        let a = op(p, &[2], O, 0);
        assert_eq!(op(p, &[0, 2], O, 0).codegeneracy(0).unwrap(), a);
        let f = TensorOperator::monomial(x(p, 2), vec![0, 0], 0, O, Restricted).unwrap();
        assert_eq!(f.codegeneracy(0).unwrap(), TensorOperator::monomial(x(p, 2), vec![0], 0, O, Restricted).unwrap());
        assert!(a.codegeneracy(1).is_err());
    }

    #[test]
    fn differential_examples() {
        let p = 5;
        let f = TensorOperator::function(x(p, 3), Restricted).unwrap();
        assert!(f.cochain_differential().is_zero());
        assert!(op(p, &[1], O, 0).cochain_differential().is_zero());
        let d2 = op(p, &[2], O, 0);
        assert_eq!(d2.cochain_differential(), op(p, &[1, 1], O, 0).scale(p - 2));
    }

    #[test]
    fn cup_examples() {
        let p = 3;
        let f = TensorOperator::function(x(p, 1), Restricted).unwrap();
        let g = TensorOperator::function(x(p, 2), Restricted).unwrap();
        assert_eq!(f.cup(&g).unwrap(), TensorOperator::function(x(p, 3), Restricted).unwrap());
        let d = op(p, &[1], O, 0);
        assert_eq!(d.cup(&d).unwrap(), op(p, &[1, 1], O, 0).scale(p - 1));
        let one = TensorOperator::unit(p, 0, Restricted).unwrap();
        assert_eq!(one.cup(&d).unwrap(), d);
        let m = op(p, &[1], Dres, 2);
        assert!(matches!(m.cup(&d), Err(Error::CoefficientMismatch(_))));
    }

    #[test]
    fn restricted_payload_vanishes_at_p() {
        let t = TensorOperator::monomial(x(3, 0), vec![], 3, Dres, Restricted).unwrap();
        assert!(t.is_zero());
        assert!(TensorOperator::zero(3, 1, Dres, Crystalline).is_err());
    }
}
