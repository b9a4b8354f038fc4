//! Matrix assembly of the cochain complexes over F_p[t].

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field;
use crate::homology::CochainMatrixComplex;
use crate::matrix::PolyMatrix;
use crate::poly::{Polynomial, Var};
use crate::tensor::{CoefficientTag, SlotKind, TensorOperator};

/// `N` is the top cochain degree assembled; `M` bounds slot and payload
/// orders of crystalline complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationParams {
    pub max_degree: usize,
    pub max_order: Option<u32>,
}

impl TruncationParams {
    pub fn new(max_degree: usize) -> Self {
        Self { max_degree, max_order: None }
    }

    pub fn with_order(max_degree: usize, max_order: u32) -> Self {
        Self { max_degree, max_order: Some(max_order) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `Diff_{O'}(O^•, P)` with restricted slots.
    HhRelOprime,
    /// `Diff(O^•, P)` with crystalline slots, order-truncated.
    HhRelOprimeFull,
    /// `k[x] → k[x] → …` with maps `d/dx` and `(d/dx)^{p-1}`.
    Reduced,
    /// The 2-periodic resolution of `Dres` by `D^e`-modules, augmented.
    Resolution,
    /// The two-sided complex `Dres^{⊗(n+2)}` in degree n.
    TwoSided,
    /// Relative Hochschild cohomology of `k[t] → k[x]` via its periodic resolution.
    Hypersurface,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::HhRelOprime => "HH_rel_Oprime",
            Family::HhRelOprimeFull => "HH_rel_Oprime_full",
            Family::Reduced => "Reduced",
            Family::Resolution => "Resolution",
            Family::TwoSided => "TwoSided",
            Family::Hypersurface => "Hypersurface",
        })
    }
}

/// For the hypersurface family, `O` means coefficients in `O_X` and `Dres`
/// means coefficients in `End_{O'}(O_X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplexSpec {
    pub family: Family,
    pub coeff: CoefficientTag,
    pub p: u32,
    pub truncation: TruncationParams,
    pub normalized: bool,
}

impl ComplexSpec {
    pub fn new(family: Family, coeff: CoefficientTag, p: u32, truncation: TruncationParams) -> Self {
        Self { family, coeff, p, truncation, normalized: false }
    }

    pub fn normalized(mut self, normalized: bool) -> Self {
        self.normalized = normalized;
        self
    }

    pub fn validate(&self) -> Result<()> {
        field::check_prime(self.p)?;
        use CoefficientTag::*;
        use Family::*;
        let ok = match self.family {
            HhRelOprime => matches!(self.coeff, O | Dres | DresOp),
            HhRelOprimeFull => matches!(self.coeff, O | Dfull),
            Reduced => self.coeff == O,
            Resolution | TwoSided => self.coeff == Dres,
            Hypersurface => matches!(self.coeff, O | Dres),
        };
        if !ok {
            return Err(Error::UnsupportedCombination(format!("{} with {} coefficients", self.family, self.coeff)));
        }
        if self.normalized && !self.supports_normalization() {
            return Err(Error::UnsupportedCombination(format!("normalized {}", self.family)));
        }
        if self.truncation.max_degree < 1 {
            return Err(Error::TruncationTooSmall("max degree must be at least 1".into()));
        }
        if self.family == HhRelOprimeFull {
            match self.truncation.max_order {
                Some(m) if m >= self.p => {}
                Some(m) => return Err(Error::TruncationTooSmall(format!("order bound {m} is below p = {}", self.p))),
                None => return Err(Error::TruncationTooSmall("crystalline complexes need an order bound".into())),
            }
        }
        Ok(())
    }

    pub fn supports_normalization(&self) -> bool {
        matches!(self.family, Family::HhRelOprime | Family::HhRelOprimeFull)
    }

    fn is_tensor_family(&self) -> bool {
        matches!(self.family, Family::HhRelOprime | Family::HhRelOprimeFull | Family::TwoSided)
    }

    fn slot_kind(&self) -> SlotKind {
        if self.family == Family::HhRelOprimeFull {
            SlotKind::Crystalline
        } else {
            SlotKind::Restricted
        }
    }

    /// Coefficient module of the underlying tensor operators.
    fn operator_coeff(&self) -> CoefficientTag {
        if self.family == Family::TwoSided {
            CoefficientTag::O
        } else {
            self.coeff
        }
    }

    /// Number of argument slots of a degree-`i` cochain.
    pub fn arity(&self, i: usize) -> usize {
        if self.family == Family::TwoSided {
            i + 2
        } else {
            i
        }
    }

    fn slot_orders(&self) -> std::ops::RangeInclusive<u32> {
        let top = match self.slot_kind() {
            SlotKind::Restricted => self.p - 1,
            SlotKind::Crystalline => self.truncation.max_order.unwrap_or(self.p),
        };
        (if self.normalized { 1 } else { 0 })..=top
    }

    fn payload_orders(&self) -> std::ops::RangeInclusive<u32> {
        match self.operator_coeff() {
            CoefficientTag::O => 0..=0,
            CoefficientTag::Dres | CoefficientTag::DresOp => 0..=self.p - 1,
            CoefficientTag::Dfull => 0..=self.truncation.max_order.unwrap_or(self.p),
        }
    }
}

impl fmt::Display for ComplexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(coeff={}, p={}, N={}", self.family, self.coeff, self.p, self.truncation.max_degree)?;
        if let Some(m) = self.truncation.max_order {
            write!(f, ", M={m}")?;
        }
        if self.normalized {
            write!(f, ", normalized")?;
        }
        write!(f, ")")
    }
}

/// Basis key `(a, slot orders, payload)` for `x^a · d^{b_1} ⊗ … ⊗ q_c`, `a < p`.
pub type BasisKey = (u32, Vec<u32>, u32);

/// The F_p[t]-basis of one cochain degree of a tensor family.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    keys: Vec<BasisKey>,
    index: HashMap<BasisKey, usize>,
}

impl DegreeBasis {
    pub fn keys(&self) -> &[BasisKey] {
        &self.keys
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn position(&self, key: &BasisKey) -> Option<usize> {
        self.index.get(key).copied()
    }
}

pub fn degree_basis(spec: &ComplexSpec, degree: usize) -> Result<DegreeBasis> {
    if !spec.is_tensor_family() {
        return Err(Error::UnsupportedCombination(format!("{} has no tensor basis", spec.family)));
    }
    let arity = spec.arity(degree);
    let slot: Vec<u32> = spec.slot_orders().collect();
    let mut multi: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..arity {
        multi = multi
            .into_iter()
            .flat_map(|m| {
                slot.iter().map(move |&b| {
                    let mut n = m.clone();
                    n.push(b);
                    n
                })
            })
            .collect();
    }
    let mut keys = Vec::new();
    for a in 0..spec.p {
        for orders in &multi {
            for c in spec.payload_orders() {
                keys.push((a, orders.clone(), c));
            }
        }
    }
    let index = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    Ok(DegreeBasis { keys, index })
}

/// The tensor operator of a basis element.
pub fn basis_operator(spec: &ComplexSpec, key: &BasisKey) -> Result<TensorOperator> {
    let (a, orders, c) = key;
    TensorOperator::monomial(
        Polynomial::monomial(1, *a as usize, spec.p, Var::X),
        orders.clone(),
        *c,
        spec.operator_coeff(),
        spec.slot_kind(),
    )
}

/// The differential of the family at the level of tensor operators.
pub fn operator_differential(spec: &ComplexSpec, op: &TensorOperator) -> Result<TensorOperator> {
    if spec.family != Family::TwoSided {
        return Ok(op.cochain_differential());
    }
    // Only the faces merging adjacent arguments: the outer ones act through
    // the module and op-module payloads in the first and last slots.
    let p = spec.p;
    let mut out = TensorOperator::zero(p, op.arity() + 1, op.coefficient_tag(), op.slot_kind())?;
    for k in 1..=op.arity() {
        let face = op.coface(k)?;
        out = if k % 2 == 1 { out.try_add(&face)? } else { out.try_sub(&face)? };
    }
    Ok(out)
}

/// Coordinates of an operator in the degree basis.
pub fn operator_to_vector(basis: &DegreeBasis, op: &TensorOperator) -> Result<Vec<Polynomial>> {
    let p = op.modulus();
    let mut v = vec![Polynomial::zero(p, Var::T); basis.len()];
    for ((orders, c), f) in op.terms() {
        for (r, g) in f.frobenius_decompose().into_iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let key = (r as u32, orders.clone(), *c);
            let idx = basis.position(&key).ok_or_else(|| {
                Error::TruncationTooSmall(format!("term x^{r}·{orders:?}/{c} lies outside the assembled basis"))
            })?;
            v[idx].add_scaled_assign(&g, 1, 0);
        }
    }
    Ok(v)
}

/// The operator with the given coordinates.
pub fn vector_to_operator(spec: &ComplexSpec, basis: &DegreeBasis, v: &[Polynomial]) -> Result<TensorOperator> {
    let arity = basis.keys.first().map_or(0, |k| k.1.len());
    let mut out = TensorOperator::zero(spec.p, arity, spec.operator_coeff(), spec.slot_kind())?;
    for (key, g) in basis.keys.iter().zip(v) {
        if g.is_zero() {
            continue;
        }
        out = out.try_add(&basis_operator(spec, key)?.mul_function(&g.inflate()))?;
    }
    Ok(out)
}

/// Matrix of the differential `C^degree → C^{degree+1}` of a tensor family.
pub fn tensor_differential(spec: &ComplexSpec, degree: usize) -> Result<PolyMatrix> {
    let src = degree_basis(spec, degree)?;
    let dst = degree_basis(spec, degree + 1)?;
    let columns: Vec<Vec<Polynomial>> = src
        .keys
        .par_iter()
        .map(|key| {
            let unit_key = (0, key.1.clone(), key.2);
            let image = operator_differential(spec, &basis_operator(spec, &unit_key)?)?;
            let image = image.mul_function(&Polynomial::monomial(1, key.0 as usize, spec.p, Var::X));
            operator_to_vector(&dst, &image)
        })
        .collect::<Result<_>>()?;
    let mut m = PolyMatrix::zeros(spec.p, dst.len(), src.len());
    for (j, col) in columns.into_iter().enumerate() {
        for (i, e) in col.into_iter().enumerate() {
            if !e.is_zero() {
                m.set(i, j, e);
            }
        }
    }
    Ok(m)
}

/// Assembles the complex described by `spec` through degree `N`.
pub fn build_complex(spec: &ComplexSpec) -> Result<CochainMatrixComplex> {
    spec.validate()?;
    let p = spec.p;
    let n = spec.truncation.max_degree;
    let differentials: Vec<PolyMatrix> = match spec.family {
        Family::HhRelOprime | Family::HhRelOprimeFull | Family::TwoSided => {
            (0..n).map(|i| tensor_differential(spec, i)).collect::<Result<_>>()?
        }
        Family::Reduced => {
            let (d, dp) = (derivative_matrix(p), top_derivative_matrix(p));
            (0..n).map(|i| if i % 2 == 0 { d.clone() } else { dp.clone() }).collect()
        }
        Family::Hypersurface => {
            let (l, r) = hypersurface_actions(p, spec.coeff == CoefficientTag::Dres)?;
            let diff = l.try_sub(&r)?;
            let mut norm = PolyMatrix::zeros(p, l.rows(), l.cols());
            for i in 0..p {
                let term = matrix_pow(&l, i)?.try_mul(&matrix_pow(&r, p - 1 - i)?)?;
                norm = norm.try_add(&term)?;
            }
            (0..n).map(|i| if i % 2 == 0 { diff.clone() } else { norm.clone() }).collect()
        }
        Family::Resolution => resolution_maps(p)?,
    };
    CochainMatrixComplex::from_differentials(p, differentials)
}

/// `d/dx` on `O_X = ⊕_{a<p} x^a k[t]`.
pub fn derivative_matrix(p: u32) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(p, p as usize, p as usize);
    for a in 1..p {
        m.set((a - 1) as usize, a as usize, Polynomial::constant(a, p, Var::T));
    }
    m
}

/// `(d/dx)^{p-1}`: only `x^{p-1} ↦ (p-1)!` survives.
pub fn top_derivative_matrix(p: u32) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(p, p as usize, p as usize);
    m.set(0, (p - 1) as usize, Polynomial::constant(field::factorial((p - 1) as u64, p), p, Var::T));
    m
}

/// Multiplication by `x` on `O_X` in the basis `1, x, …, x^{p-1}`.
pub fn multiplication_by_x(p: u32) -> PolyMatrix {
    let n = p as usize;
    let mut m = PolyMatrix::zeros(p, n, n);
    for a in 0..n - 1 {
        m.set(a + 1, a, Polynomial::one(p, Var::T));
    }
    m.set(0, n - 1, Polynomial::var(p, Var::T));
    m
}

/// Left and right multiplication by `x` on the coefficient module: `O_X`
/// (both equal) or `End_{O'}(O_X)` acting on column-stacked matrices.
pub fn hypersurface_actions(p: u32, endomorphisms: bool) -> Result<(PolyMatrix, PolyMatrix)> {
    let x = multiplication_by_x(p);
    if !endomorphisms {
        return Ok((x.clone(), x));
    }
    let id = PolyMatrix::identity(p, p as usize);
    Ok((id.kronecker(&x), x.transpose().kronecker(&id)))
}

fn matrix_pow(m: &PolyMatrix, e: u32) -> Result<PolyMatrix> {
    let mut out = PolyMatrix::identity(m.modulus(), m.rows());
    for _ in 0..e {
        out = out.try_mul(m)?;
    }
    Ok(out)
}

/// Index of `x^a d^i ⊗ d^j` in `D^e`.
pub fn de_index(p: u32, a: u32, i: u32, j: u32) -> usize {
    ((a * p + i) * p + j) as usize
}

/// Right multiplication on `D^e` by `Σ c · d^k ⊗ d^l` (constant coefficients).
pub fn de_right_multiplication(p: u32, element: &[(u32, u32, u32)]) -> PolyMatrix {
    let n = (p * p * p) as usize;
    let mut m = PolyMatrix::zeros(p, n, n);
    for a in 0..p {
        for i in 0..p {
            for j in 0..p {
                let col = de_index(p, a, i, j);
                for &(c, k, l) in element {
                    if i + k < p && j + l < p {
                        let row = de_index(p, a, i + k, j + l);
                        let cur = m.get(row, col).clone();
                        m.set(row, col, &cur + &Polynomial::constant(c, p, Var::T));
                    }
                }
            }
        }
    }
    m
}

/// The augmented resolution `D^e →Σ D^e →(u-v) D^e →Σ D^e →(u-v) D^e →m Dres`
/// with `u = d⊗1`, `v = 1⊗d`, `Σ = Σ_i d^{p-1-i} ⊗ d^i`.
pub fn resolution_maps(p: u32) -> Result<Vec<PolyMatrix>> {
    field::check_prime(p)?;
    let diff = de_right_multiplication(p, &[(1, 1, 0), (p - 1, 0, 1)]);
    let norm_terms: Vec<(u32, u32, u32)> = (0..p).map(|i| (1, p - 1 - i, i)).collect();
    let norm = de_right_multiplication(p, &norm_terms);
    let mut m = PolyMatrix::zeros(p, (p * p) as usize, (p * p * p) as usize);
    for a in 0..p {
        for i in 0..p {
            for j in 0..p {
                if i + j < p {
                    m.set((a * p + i + j) as usize, de_index(p, a, i, j), Polynomial::one(p, Var::T));
                }
            }
        }
    }
    Ok(vec![norm.clone(), diff.clone(), norm, diff, m])
}
