//! Seeded randomized suites for the cosimplicial, cup and brace identities.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::brace::{brace, brace_module_action, gerstenhaber};
use crate::error::Result;
use crate::field;
use crate::matrix::FpMatrix;
use crate::pol::{normalized_cocycles, pol_embed, PolElement, PolMonomial};
use crate::poly::{Polynomial, Var};
use crate::tensor::{CoefficientTag, SlotKind, TensorOperator};
use crate::weyl::{Flavor, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: String,
    pub p: u32,
    pub samples: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
    pub note: Option<String>,
    /// Informational suites record a documented observation and never fail a run.
    pub gating: bool,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.samples > 0
    }

    /// Whether this outcome makes a run fail.
    pub fn blocks(&self) -> bool {
        self.gating && !self.passed()
    }
}

struct Tally {
    outcome: SuiteOutcome,
}

impl Tally {
    fn new(name: &str, p: u32) -> Self {
        Self {
            outcome: SuiteOutcome {
                name: name.into(),
                p,
                samples: 0,
                failures: 0,
                first_failure: None,
                note: None,
                gating: true,
            },
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.outcome.samples += 1;
        if !ok {
            self.outcome.failures += 1;
            if self.outcome.first_failure.is_none() {
                self.outcome.first_failure = Some(what());
            }
        }
    }
}

const TAGS: [CoefficientTag; 4] =
    [CoefficientTag::O, CoefficientTag::Dres, CoefficientTag::DresOp, CoefficientTag::Dfull];

fn slots_for(tag: CoefficientTag) -> SlotKind {
    if tag == CoefficientTag::Dfull {
        SlotKind::Crystalline
    } else {
        SlotKind::Restricted
    }
}

fn random_poly<R: Rng>(rng: &mut R, p: u32, max_degree: usize) -> Polynomial {
    let coeffs: Vec<u32> = (0..=max_degree).map(|_| rng.gen_range(0..p)).collect();
    Polynomial::from_raw(p, Var::X, coeffs)
}

/// A random operator with up to three terms; crystalline orders stay below `2p`.
pub fn random_operator<R: Rng>(
    rng: &mut R,
    p: u32,
    arity: usize,
    tag: CoefficientTag,
    slots: SlotKind,
) -> TensorOperator {
    let top = match slots {
        SlotKind::Restricted => p,
        SlotKind::Crystalline => 2 * p,
    };
    let payload_top = match tag {
        CoefficientTag::O => 1,
        CoefficientTag::Dres | CoefficientTag::DresOp => p,
        CoefficientTag::Dfull => 2 * p,
    };
    let mut out = TensorOperator::zero(p, arity, tag, slots).expect("valid combination");
    for _ in 0..rng.gen_range(1..=3) {
        let orders: Vec<u32> = (0..arity).map(|_| rng.gen_range(0..top)).collect();
        let c = rng.gen_range(0..payload_top);
        let f = random_poly(rng, p, 2 * p as usize);
        out.add_term(orders, c, &f);
    }
    out
}

/// Like [`random_operator`] with O coefficients, but orders drawn from the
/// boundary values `0, 1, 2, p - 1, p, p + 1, 2p - 1` and coefficients of
/// degree below 6, so that nested braces stay small at large p.
fn random_boundary_operator<R: Rng>(rng: &mut R, p: u32, arity: usize, slots: SlotKind) -> TensorOperator {
    let top = match slots {
        SlotKind::Restricted => p,
        SlotKind::Crystalline => 2 * p,
    };
    let mut choices: Vec<u32> = [0, 1, 2, p - 1, p, p + 1, 2 * p - 1].into_iter().filter(|&b| b < top).collect();
    choices.sort_unstable();
    choices.dedup();
    let mut out = TensorOperator::zero(p, arity, CoefficientTag::O, slots).expect("valid combination");
    for _ in 0..rng.gen_range(1..=3) {
        let orders: Vec<u32> = (0..arity).map(|_| choices[rng.gen_range(0..choices.len())]).collect();
        let f = random_poly(rng, p, (2 * p as usize).min(6));
        out.add_term(orders, 0, &f);
    }
    out
}

fn random_tag<R: Rng>(rng: &mut R) -> CoefficientTag {
    TAGS[rng.gen_range(0..TAGS.len())]
}

fn value_flavor(tag: CoefficientTag) -> Flavor {
    if tag == CoefficientTag::Dfull {
        Flavor::Crystalline
    } else {
        Flavor::Restricted
    }
}

/// `g ⊳ V` and `V ⊲ g` in the coefficient bimodule; the opposite algebra swaps sides.
fn act_left(tag: CoefficientTag, g: &Polynomial, v: &WeylElement) -> Result<WeylElement> {
    let g = WeylElement::function(g, value_flavor(tag));
    if tag == CoefficientTag::DresOp {
        v.try_mul(&g)
    } else {
        g.try_mul(v)
    }
}

fn act_right(tag: CoefficientTag, v: &WeylElement, g: &Polynomial) -> Result<WeylElement> {
    let g = WeylElement::function(g, value_flavor(tag));
    if tag == CoefficientTag::DresOp {
        g.try_mul(v)
    } else {
        v.try_mul(&g)
    }
}

/// The k-th coface computed from values of `A` alone.
pub fn coface_by_evaluation(a: &TensorOperator, k: usize, args: &[Polynomial]) -> Result<WeylElement> {
    let i = a.arity();
    let tag = a.coefficient_tag();
    if k == 0 {
        act_left(tag, &args[0], &a.evaluate_operator(&args[1..])?)
    } else if k <= i {
        let mut merged = args[..k - 1].to_vec();
        merged.push(&args[k - 1] * &args[k]);
        merged.extend_from_slice(&args[k + 1..]);
        a.evaluate_operator(&merged)
    } else {
        act_right(tag, &a.evaluate_operator(&args[..i])?, &args[i])
    }
}

/// `A{A_1, …}` computed by inserting values.
pub fn brace_by_evaluation(a: &TensorOperator, inserts: &[TensorOperator], args: &[Polynomial]) -> Result<WeylElement> {
    let p = a.modulus();
    let i = a.arity();
    let m = inserts.len();
    let mut total = WeylElement::zero(p, value_flavor(a.coefficient_tag()));
    let mut chosen = Vec::new();
    choose(i, m, 0, &mut chosen, &mut |positions| {
        let mut inner_args = Vec::with_capacity(i);
        let mut next = 0;
        let mut used = 0;
        let mut eps = 0usize;
        for s in 0..i {
            if used < m && positions[used] == s {
                let j = inserts[used].arity();
                eps += next * ((j + 1) % 2);
                inner_args.push(inserts[used].evaluate(&args[next..next + j])?.swap_remove(0));
                next += j;
                used += 1;
            } else {
                inner_args.push(args[next].clone());
                next += 1;
            }
        }
        let sign = if eps % 2 == 1 { p - 1 } else { 1 };
        total = total.try_add(&a.evaluate_operator(&inner_args)?.scale(sign))?;
        Ok(())
    })?;
    Ok(total)
}

fn choose(
    n: usize,
    m: usize,
    start: usize,
    cur: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if cur.len() == m {
        return f(cur);
    }
    for s in start..n {
        cur.push(s);
        choose(n, m, s + 1, cur, f)?;
        cur.pop();
    }
    Ok(())
}

fn random_args<R: Rng>(rng: &mut R, p: u32, n: usize) -> Vec<Polynomial> {
    (0..n).map(|_| random_poly(rng, p, p as usize)).collect()
}

fn neg_if(op: TensorOperator, odd: bool) -> TensorOperator {
    if odd {
        op.scale(op.modulus() - 1)
    } else {
        op
    }
}

/// The sign σ in `δA = σ · [A, μ]` for the multiplication `μ = 1 ⊗ 1`.
/// Over F_2 both signs agree; the value is confirmed at every odd p.
pub const DIFFERENTIAL_BRACKET_SIGN: i8 = -1;

/// Runs every suite with `samples` random cases each.
pub fn run_identity_suites(p: u32, samples: usize, seed: u64) -> Result<Vec<SuiteOutcome>> {
    field::check_prime(p)?;
    type Suite = fn(&mut ChaCha8Rng, u32, usize) -> Result<SuiteOutcome>;
    let suites: [Suite; 8] = [
        cosimplicial_suite,
        differential_squared_suite,
        cup_leibniz_suite,
        pre_lie_suite,
        bracket_differential_suite,
        pol_bracket_exact_suite,
        pol_bracket_chain_suite,
        evaluation_oracle_suite,
    ];
    suites
        .iter()
        .enumerate()
        .map(|(k, suite)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(u64::from(p) * 64 + k as u64);
            suite(&mut rng, p, samples)
        })
        .collect()
}

pub fn cosimplicial_suite(rng: &mut ChaCha8Rng, p: u32, samples: usize) -> Result<SuiteOutcome> {
    let mut tally = Tally::new("cosimplicial identities", p);
    for _ in 0..samples {
        let tag = random_tag(rng);
        let n = rng.gen_range(0..=3);
        let a = random_operator(rng, p, n, tag, slots_for(tag));
        let j = rng.gen_range(1..=n + 2);
        let i = rng.gen_range(0..j);
        let faces = a.coface(i)?.coface(j)? == a.coface(j - 1)?.coface(i)?;

        let i = rng.gen_range(0..=n + 1);
        let j = rng.gen_range(0..=n);
        let lhs = a.coface(i)?.codegeneracy(j)?;
        let rhs = if i < j {
            a.codegeneracy(j - 1)?.coface(i)?
        } else if i == j || i == j + 1 {
            a.clone()
        } else {
            a.codegeneracy(j)?.coface(i - 1)?
        };
        tally.record(faces && lhs == rhs, || format!("{tag} arity {n}: {a}"));
    }
    Ok(tally.outcome)
}

pub fn differential_squared_suite(rng: &mut ChaCha8Rng, p: u32, samples: usize) -> Result<SuiteOutcome> {
    let mut tally = Tally::new("δ² = 0", p);
    for _ in 0..samples {
        let tag = random_tag(rng);
        let n = rng.gen_range(0..=3);
        let a = random_operator(rng, p, n, tag, slots_for(tag));
        tally.record(a.cochain_differential().cochain_differential().is_zero(), || a.to_string());
    }
    Ok(tally.outcome)
}

/// `δ(A ∪ B) = (-1)^j δA ∪ B + A ∪ δB`, the form the rule takes with the
/// `(-1)^{ij}` sign built into the product.
pub fn cup_leibniz_suite(rng: &mut ChaCha8Rng, p: u32, samples: usize) -> Result<SuiteOutcome> {
    let mut tally = Tally::new("cup Leibniz rule", p);
    let mut other_form = 0;
    for _ in 0..samples {
        let tag = random_tag(rng);
        let (i, j) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let a = random_operator(rng, p, i, CoefficientTag::O, slots_for(tag));
        let b = random_operator(rng, p, j, tag, slots_for(tag));
        let lhs = a.cup(&b)?.cochain_differential();
        let rhs = neg_if(a.cochain_differential().cup(&b)?, j % 2 == 1).try_add(&a.cup(&b.cochain_differential())?)?;
        let unsigned =
            a.cochain_differential().cup(&b)?.try_add(&neg_if(a.cup(&b.cochain_differential())?, i % 2 == 1))?;
        if lhs != unsigned {
            other_form += 1;
        }
        tally.record(lhs == rhs, || format!("A = {a}, B = {b}"));
    }
    tally.outcome.note =
        Some(format!("the form δA ∪ B + (-1)^i A ∪ δB fails on {other_form} samples with this product sign"));
    Ok(tally.outcome)
}

fn brace_or_zero(a: &TensorOperator, inserts: &[TensorOperator]) -> Result<TensorOperator> {
    if inserts.len() > a.arity() {
        let n = a.arity() + inserts.iter().map(TensorOperator::arity).sum::<usize>() - inserts.len();
        return TensorOperator::zero(a.modulus(), n, a.coefficient_tag(), a.slot_kind());
    }
    brace(a, inserts)
}

/// `(A{B}){C} - A{B{C}} = A{B,C} + (-1)^{(j-1)(k-1)} A{C,B}`; in particular
/// the associator is graded symmetric in `B` and `C`.
pub fn pre_lie_suite(rng: &mut ChaCha8Rng, p: u32, samples: usize) -> Result<SuiteOutcome> {
    let mut tally = Tally::new("brace pre-Lie relation", p);
    for _ in 0..samples {
        let slots = if rng.gen_bool(0.5) { SlotKind::Restricted } else { SlotKind::Crystalline };
        let (i, j, k) = (rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(1..=2));
        let a = random_boundary_operator(rng, p, i, slots);
        let b = random_boundary_operator(rng, p, j, slots);
        let c = random_boundary_operator(rng, p, k, slots);
        let assoc = |x: &TensorOperator, y: &TensorOperator| -> Result<TensorOperator> {
            brace(&brace(&a, std::slice::from_ref(x))?, std::slice::from_ref(y))?
                .try_sub(&brace(&a, &[brace(x, std::slice::from_ref(y))?])?)
        };
        let odd = (j + 1) % 2 == 1 && (k + 1) % 2 == 1;
        let abc = assoc(&b, &c)?;
        let symmetric = abc == neg_if(assoc(&c, &b)?, odd);
        let expanded = brace_or_zero(&a, &[b.clone(), c.clone()])?
            .try_add(&neg_if(brace_or_zero(&a, &[c.clone(), b.clone()])?, odd))?;
        tally.record(symmetric && abc == expanded, || format!("A = {a}, B = {b}, C = {c}"));
    }
    Ok(tally.outcome)
}

/// `δA = σ [A, μ]` with the fixed sign [`DIFFERENTIAL_BRACKET_SIGN`].
pub fn bracket_differential_suite(rng: &mut ChaCha8Rng, p: u32, samples: usize) -> Result<SuiteOutcome> {
    let mut tally = Tally::new("δ = σ[−, μ] with one global sign", p);
    let mu = TensorOperator::unit(p, 2, SlotKind::Restricted)?;
    let mut reversed_parity_dependent = 0;
    for _ in 0..samples {
        let n = rng.gen_range(0..=3);
        let a = random_operator(rng, p, n, CoefficientTag::O, SlotKind::Restricted);
        let delta = a.cochain_differential();
        let bracket = gerstenhaber(&a, &mu)?;
        let expected = neg_if(bracket, DIFFERENTIAL_BRACKET_SIGN < 0);
        tally.record(delta == expected, || a.to_string());
        let reversed = gerstenhaber(&mu, &a)?;
        if !delta.is_zero() && delta != neg_if(reversed, DIFFERENTIAL_BRACKET_SIGN < 0) {
            reversed_parity_dependent += 1;
        }
    }
    tally.outcome.note = Some(format!(
        "σ = {DIFFERENTIAL_BRACKET_SIGN}; with the order [μ, A] the sign would depend on the arity of A ({reversed_parity_dependent} samples differ)"
    ));
    Ok(tally.outcome)
}

fn random_pol<R: Rng>(rng: &mut R, p: u32) -> PolMonomial {
    let arity = rng.gen_range(0..=2);
    let exponents = (0..arity).map(|_| rng.gen_range(0..=2)).collect();
    PolMonomial::new(random_t_coefficient(rng, p), exponents)
}

fn random_t_coefficient<R: Rng>(rng: &mut R, p: u32) -> Polynomial {
    loop {
        let c = random_poly(rng, p, 2).with_var(Var::T);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Whether an O-valued crystalline operator is `δ` of some operator. The
/// complex splits by left coefficient monomial and by total order, so each
/// piece is a finite-dimensional F_p problem.
pub fn is_crystalline_coboundary(target: &TensorOperator) -> Result<bool> {
    if target.is_zero() {
        return Ok(true);
    }
    if target.coefficient_tag() != CoefficientTag::O
        || target.slot_kind() != SlotKind::Crystalline
        || target.arity() == 0
    {
        return Err(crate::error::Error::UnsupportedCombination(
            "coboundary test expects O-valued crystalline operators of positive arity".into(),
        ));
    }
    let p = target.modulus();
    let n = target.arity() - 1;
    let mut pieces: BTreeMap<(usize, u32), BTreeMap<Vec<u32>, u32>> = BTreeMap::new();
    for ((orders, _), f) in target.terms() {
        let s = orders.iter().sum();
        for (e, &c) in f.coeffs().iter().enumerate() {
            if c != 0 {
                pieces.entry((e, s)).or_default().insert(orders.clone(), c);
            }
        }
    }
    let mut sources: BTreeMap<u32, (Vec<Vec<u32>>, Vec<TensorOperator>)> = BTreeMap::new();
    for (&(_, s), piece) in &pieces {
        let (_, images) = sources.entry(s).or_insert_with(|| {
            let src = compositions(s, n);
            let images = src
                .iter()
                .map(|o| {
                    TensorOperator::monomial(
                        Polynomial::one(p, Var::X),
                        o.clone(),
                        0,
                        CoefficientTag::O,
                        SlotKind::Crystalline,
                    )
                    .expect("valid monomial")
                    .cochain_differential()
                })
                .collect();
            (src, images)
        });
        let mut rows: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        for key in images.iter().flat_map(|im| im.terms().keys().map(|(o, _)| o)).chain(piece.keys()) {
            let next = rows.len();
            rows.entry(key.clone()).or_insert(next);
        }
        let mut columns: Vec<Vec<u32>> = images
            .iter()
            .map(|im| {
                let mut c = vec![0; rows.len()];
                for ((o, _), f) in im.terms() {
                    c[rows[o]] = f.coeff(0);
                }
                c
            })
            .collect();
        let before = FpMatrix::from_columns(p, rows.len(), &columns).rank();
        let mut v = vec![0; rows.len()];
        for (o, &c) in piece {
            v[rows[o]] = c;
        }
        columns.push(v);
        if FpMatrix::from_columns(p, rows.len(), &columns).rank() != before {
            return Ok(false);
        }
    }
    Ok(true)
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn random_pol_cocycle<R: Rng>(rng: &mut R, p: u32, bases: &[Vec<PolElement>]) -> Result<TensorOperator> {
    let arity = rng.gen_range(0..bases.len());
    let mut out = PolElement::zero(p, arity);
    if arity == 0 {
        out = PolElement::from_monomial(&PolMonomial::new(Polynomial::one(p, Var::T), Vec::new()));
    } else {
        for c in &bases[arity] {
            let w = rng.gen_range(0..p);
            if w != 0 {
                out = out.try_add(&c.mul_coefficient(&Polynomial::constant(w, p, Var::T)))?;
            }
        }
    }
    out.mul_coefficient(&random_t_coefficient(rng, p)).embed()
}

/// The bracket of two `Pol` cocycles is a coboundary of the crystalline
/// Hochschild complex: the bracket is trivial on cohomology.
pub fn pol_bracket_exact_suite(rng: &mut ChaCha8Rng, p: u32, samples: usize) -> Result<SuiteOutcome> {
    let mut tally = Tally::new("Gerstenhaber bracket on Pol cocycles is exact", p);
    let bases: Vec<Vec<PolElement>> = (0..=2).map(|k| normalized_cocycles(p, k, 2)).collect::<Result<_>>()?;
    for _ in 0..samples {
        let a = random_pol_cocycle(rng, p, &bases)?;
        let b = random_pol_cocycle(rng, p, &bases)?;
        let bracket = gerstenhaber(&a, &b)?;
        let ok =
            bracket.arity() == 0 && bracket.is_zero() || bracket.arity() > 0 && is_crystalline_coboundary(&bracket)?;
        tally.record(ok, || format!("{a} and {b}"));
    }
    Ok(tally.outcome)
}

/// The literal chain-level statement on arbitrary pairs from the image of
/// `pol_embed`; informational, since it does not hold in general.
pub fn pol_bracket_chain_suite(rng: &mut ChaCha8Rng, p: u32, samples: usize) -> Result<SuiteOutcome> {
    let mut tally = Tally::new("Gerstenhaber bracket vanishes on the Pol image at chain level", p);
    tally.outcome.gating = false;
    let mut nonzero_braces = 0;
    let mut low_arity_failures = 0;
    for _ in 0..samples {
        let (m1, m2) = (random_pol(rng, p), random_pol(rng, p));
        let (a, b) = (pol_embed(&m1)?, pol_embed(&m2)?);
        let zero = gerstenhaber(&a, &b)?.is_zero();
        let normalized_low =
            a.arity() <= 1 && b.arity() <= 1 && m1.exponents.iter().chain(&m2.exponents).all(|&e| e > 0);
        if normalized_low && !zero {
            low_arity_failures += 1;
        }
        tally.record(zero, || format!("{a} and {b}"));
        if a.arity() > 0 && !brace(&a, std::slice::from_ref(&b))?.is_zero() {
            nonzero_braces += 1;
        }
    }
    tally.outcome.note = Some(format!(
        "vanishes for normalized pairs of arity <= 1 ({low_arity_failures} exceptions); single braces A{{B}} were nonzero on {nonzero_braces} of {samples} pairs"
    ));
    Ok(tally.outcome)
}

/// Cofaces, cups and braces agree with their definitions through `evaluate`.
pub fn evaluation_oracle_suite(rng: &mut ChaCha8Rng, p: u32, samples: usize) -> Result<SuiteOutcome> {
    let mut tally = Tally::new("evaluation oracle for coface, cup and brace", p);
    for _ in 0..samples {
        let tag = random_tag(rng);
        let slots = slots_for(tag);
        let n = rng.gen_range(0..=2);
        let a = random_operator(rng, p, n, tag, slots);
        let k = rng.gen_range(0..=n + 1);
        let args = random_args(rng, p, n + 1);
        let coface_ok = a.coface(k)?.evaluate_operator(&args)? == coface_by_evaluation(&a, k, &args)?;

        let i = rng.gen_range(0..=2);
        let f = random_operator(rng, p, i, CoefficientTag::O, slots);
        let args = random_args(rng, p, i + n);
        let value = act_left(tag, &f.evaluate(&args[..i])?[0], &a.evaluate_operator(&args[i..])?)?;
        let expected = if (i * n) % 2 == 1 { value.scale(p - 1) } else { value };
        let cup_ok = f.cup(&a)?.evaluate_operator(&args)? == expected;

        let m = rng.gen_range(0..=n);
        let inserts: Vec<TensorOperator> = (0..m)
            .map(|_| {
                let arity = rng.gen_range(0..=2);
                random_operator(rng, p, arity, CoefficientTag::O, slots)
            })
            .collect();
        let braced = brace_module_action(&a, &inserts)?;
        let args = random_args(rng, p, braced.arity());
        let brace_ok = braced.evaluate_operator(&args)? == brace_by_evaluation(&a, &inserts, &args)?;
        tally.record(coface_ok && cup_ok && brace_ok, || format!("{tag}: {a}"));
    }
    Ok(tally.outcome)
}
