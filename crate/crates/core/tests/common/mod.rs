//! Value-level differentials for checking assembled matrices.
//!
//! Restricted operators are determined by their values on `x^a`, `a < p`, so
//! comparing values on all such argument tuples compares operators.

use charquant_core::engine::assemble::{basis_operator, degree_basis, tensor_differential, vector_to_operator};
use charquant_core::engine::{ComplexSpec, Family, TruncationParams};
use charquant_core::tensor::{CoefficientTag, TensorOperator};
use charquant_core::{Flavor, Polynomial, Var, WeylElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn x_pow(p: u32, a: u32) -> Polynomial {
    Polynomial::monomial(1, a as usize, p, Var::X)
}

fn value(op: &TensorOperator, args: &[Polynomial]) -> WeylElement {
    op.evaluate_operator(args).unwrap()
}

fn function(f: &Polynomial) -> WeylElement {
    WeylElement::function(f, Flavor::Restricted)
}

fn scaled(v: WeylElement, sign: i64, p: u32) -> WeylElement {
    if sign < 0 {
        v.scale(p - 1)
    } else {
        v
    }
}

fn merged(args: &[Polynomial], k: usize) -> Vec<Polynomial> {
    let mut out = args[..k - 1].to_vec();
    out.push(&args[k - 1] * &args[k]);
    out.extend_from_slice(&args[k + 1..]);
    out
}

/// `(δA)(f_0, …, f_n)` from values of `A`.
fn hochschild_delta(a: &TensorOperator, args: &[Polynomial]) -> WeylElement {
    let p = a.modulus();
    let n = a.arity();
    let opposite = a.coefficient_tag() == CoefficientTag::DresOp;
    let (first, last) = (function(&args[0]), function(&args[n]));
    let inner = value(a, &args[1..]);
    let mut total = if opposite { inner.try_mul(&first) } else { first.try_mul(&inner) }.unwrap();
    for k in 1..=n {
        let sign = if k % 2 == 1 { -1 } else { 1 };
        total = total.try_add(&scaled(value(a, &merged(args, k)), sign, p)).unwrap();
    }
    let outer = value(a, &args[..n]);
    let outer = if opposite { last.try_mul(&outer) } else { outer.try_mul(&last) }.unwrap();
    total.try_add(&scaled(outer, if n.is_multiple_of(2) { -1 } else { 1 }, p)).unwrap()
}

/// Alternating sum of the merging faces only.
fn two_sided_delta(a: &TensorOperator, args: &[Polynomial]) -> WeylElement {
    let p = a.modulus();
    let mut total = WeylElement::zero(p, Flavor::Restricted);
    for k in 1..=a.arity() {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        total = total.try_add(&scaled(value(a, &merged(args, k)), sign, p)).unwrap();
    }
    total
}

fn argument_tuples(p: u32, n: usize) -> Vec<Vec<Polynomial>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t: Vec<Polynomial>| {
                (0..p).map(move |a| {
                    let mut t = t.clone();
                    t.push(x_pow(p, a));
                    t
                })
            })
            .collect();
    }
    out
}

/// Compares column `col` of the degree-`degree` matrix; returns the number of tuples checked.
pub fn check_column(spec: &ComplexSpec, degree: usize, col: usize) -> usize {
    let src = degree_basis(spec, degree).unwrap();
    let dst = degree_basis(spec, degree + 1).unwrap();
    let matrix = tensor_differential(spec, degree).unwrap();
    let image = vector_to_operator(spec, &dst, &matrix.column(col)).unwrap();
    let a = basis_operator(spec, &src.keys()[col]).unwrap();
    let tuples = argument_tuples(spec.p, image.arity());
    for args in &tuples {
        let expected = match spec.family {
            Family::TwoSided => two_sided_delta(&a, args),
            _ => hochschild_delta(&a, args),
        };
        assert_eq!(value(&image, args), expected, "{spec}, degree {degree}, column {col}, args {args:?}");
    }
    tuples.len()
}

pub fn restricted_specs(p: u32, n: usize) -> Vec<ComplexSpec> {
    let t = TruncationParams::new(n);
    let mut specs = Vec::new();
    for coeff in [CoefficientTag::O, CoefficientTag::Dres, CoefficientTag::DresOp] {
        for normalized in [false, true] {
            specs.push(ComplexSpec::new(Family::HhRelOprime, coeff, p, t).normalized(normalized));
        }
    }
    specs.push(ComplexSpec::new(Family::TwoSided, CoefficientTag::Dres, p, t));
    specs
}

/// Every column of every differential through `max_degree` of each spec; returns the column count.
pub fn exhaustive(specs: &[ComplexSpec], max_degree: usize) -> usize {
    let mut columns = 0;
    for spec in specs {
        for degree in 0..max_degree {
            let cols = degree_basis(spec, degree).unwrap().len();
            for col in 0..cols {
                check_column(spec, degree, col);
            }
            columns += cols;
        }
    }
    columns
}

/// Random columns of degrees below `max_degree`.
pub fn sampled(specs: &[ComplexSpec], max_degree: usize, samples: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let spec = specs[rng.gen_range(0..specs.len())];
        let degree = rng.gen_range(0..max_degree);
        let cols = degree_basis(&spec, degree).unwrap().len();
        check_column(&spec, degree, rng.gen_range(0..cols));
    }
}
