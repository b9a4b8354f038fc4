//! Azumaya witnesses for the restricted algebra over `k[t]`, `t = x^p`:
//! centers inside monomial boxes, the endomorphism isomorphism onto `p × p`
//! matrices over `F_p[t]`, and fiberwise matrix-algebra checks.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field;
use crate::matrix::{FpMatrix, PolyMatrix};
use crate::poly::{Polynomial, Var};
use crate::snf;
use crate::weyl::{Flavor, WeylElement};

/// Elements of the box `{x^a d^b : a < x_bound, b < d_bound}` commuting with
/// every element of `with`, as an F_p basis in reduced echelon order.
pub fn commutant(with: &[WeylElement], flavor: Flavor, p: u32, bounds: (u32, u32)) -> Result<Vec<WeylElement>> {
    let (xb, db) = bounds;
    let db = if flavor == Flavor::Restricted { db.min(p) } else { db };
    let monomials: Vec<(u32, u32)> = (0..xb).flat_map(|a| (0..db).map(move |b| (a, b))).collect();
    let mut row_index: BTreeMap<(usize, u32, u32), usize> = BTreeMap::new();
    let mut columns: Vec<Vec<(usize, u32)>> = Vec::with_capacity(monomials.len());
    for &(a, b) in &monomials {
        let u = WeylElement::monomial(1, a, b, p, flavor);
        let mut col = Vec::new();
        for (g, gen) in with.iter().enumerate() {
            let c = u.commutator(gen)?;
            for (&(ea, eb), &v) in c.terms() {
                let next = row_index.len();
                let r = *row_index.entry((g, ea, eb)).or_insert(next);
                col.push((r, v));
            }
        }
        columns.push(col);
    }
    let mut m = FpMatrix::zeros(p, row_index.len(), monomials.len());
    for (c, col) in columns.iter().enumerate() {
        for &(r, v) in col {
            m.set(r, c, v);
        }
    }
    Ok(m.kernel()
        .into_iter()
        .map(|v| {
            let mut e = WeylElement::zero(p, flavor);
            for (i, &c) in v.iter().enumerate() {
                if c != 0 {
                    let (a, b) = monomials[i];
                    e = e.try_add(&WeylElement::monomial(c, a, b, p, flavor)).expect("same algebra");
                }
            }
            e
        })
        .collect())
}

/// Basis of the center within the monomial box `a < bounds.0`, `b < bounds.1`.
pub fn center(flavor: Flavor, p: u32, bounds: (u32, u32)) -> Result<Vec<WeylElement>> {
    field::check_prime(p)?;
    if flavor == Flavor::DividedPower {
        return Err(Error::UnsupportedCombination("center of the divided-power algebra".into()));
    }
    if bounds.0 < p || bounds.1 == 0 {
        return Err(Error::BoundsTooSmall(bounds, p));
    }
    commutant(&[WeylElement::x(p, flavor), WeylElement::d(p, flavor)], flavor, p, bounds)
}

/// Default box: x-degree below 3p, d-order below p (restricted) or 3p.
pub fn default_bounds(flavor: Flavor, p: u32) -> (u32, u32) {
    match flavor {
        Flavor::Restricted => (3 * p, p),
        _ => (3 * p, 3 * p),
    }
}

/// The action of the restricted algebra on `O_X`, free over `F_p[t]` with
/// basis `1, x, …, x^{p-1}`.
#[derive(Clone, Copy, Debug)]
pub struct EndIso {
    p: u32,
}

pub fn end_iso(p: u32) -> Result<EndIso> {
    field::check_prime(p)?;
    Ok(EndIso { p })
}

impl EndIso {
    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// The `p × p` matrix over `F_p[t]` of `u` acting on `O_X`.
    pub fn matrix(&self, u: &WeylElement) -> Result<PolyMatrix> {
        let p = self.p;
        if u.modulus() != p {
            return Err(Error::ModulusMismatch(p, u.modulus()));
        }
        if u.flavor() != Flavor::Restricted || u.is_opposite() {
            return Err(Error::FlavorMismatch(u.flavor().to_string(), Flavor::Restricted.to_string()));
        }
        let n = p as usize;
        let mut m = PolyMatrix::zeros(p, n, n);
        for j in 0..n {
            let image = u.act(&Polynomial::monomial(1, j, p, Var::X))?;
            for (a, g) in image.frobenius_decompose().into_iter().enumerate() {
                m.set(a, j, g);
            }
        }
        Ok(m)
    }

    /// Columns: flattened images of the basis `x^a d^b`, `a, b < p`.
    pub fn basis_images(&self) -> PolyMatrix {
        let p = self.p;
        let n = p as usize;
        let mut out = PolyMatrix::zeros(p, n * n, n * n);
        for (col, (a, b)) in restricted_basis(p).enumerate() {
            let m = self.matrix(&WeylElement::monomial(1, a, b, p, Flavor::Restricted)).expect("restricted");
            for r in 0..n {
                for c in 0..n {
                    out.set(r * n + c, col, m.get(r, c).clone());
                }
            }
        }
        out
    }

    /// Bijectivity onto `M_p(F_p[t])`: all `p²` invariant factors are units.
    pub fn is_bijective(&self) -> bool {
        let f = snf::invariant_factors(&self.basis_images());
        f.len() == (self.p * self.p) as usize && f.iter().all(Polynomial::is_one)
    }
}

/// The F_p[t]-basis `x^a d^b`, `a, b < p`, of the restricted algebra.
pub fn restricted_basis(p: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..p).flat_map(move |a| (0..p).map(move |b| (a, b)))
}

/// The fiber of the restricted algebra at `t = a`.
#[derive(Clone, Debug)]
pub struct FiberReport {
    pub point: u32,
    pub p: u32,
    pub dimension: usize,
    /// `structure[i][j]` is the product `e_i e_j` in the basis `x^a d^b`.
    pub structure: Vec<Vec<Vec<u32>>>,
    /// Rank of the representation on `F_p[x]/((x-a)^p)`, as a map into `p × p` matrices.
    pub representation_rank: usize,
    pub representation_is_homomorphism: bool,
    pub is_matrix_algebra: bool,
}

pub fn fiber_at(a: u32, p: u32) -> Result<FiberReport> {
    field::check_prime(p)?;
    if a >= p {
        return Err(Error::IndexOutOfRange { index: a as usize, bound: p as usize });
    }
    let basis: Vec<(u32, u32)> = restricted_basis(p).collect();
    let n = p as usize;
    let index = |x: u32, d: u32| (x * p + d) as usize;

    // Structure constants modulo x^p = a.
    let mut structure = vec![vec![vec![0u32; basis.len()]; basis.len()]; basis.len()];
    for (i, &(a1, b1)) in basis.iter().enumerate() {
        for (j, &(a2, b2)) in basis.iter().enumerate() {
            let prod = WeylElement::monomial(1, a1, b1, p, Flavor::Restricted).try_mul(&WeylElement::monomial(
                1,
                a2,
                b2,
                p,
                Flavor::Restricted,
            ))?;
            for (&(ea, eb), &c) in prod.terms() {
                let w = field::mul(c, field::pow(a, (ea / p) as u64, p), p);
                let k = index(ea % p, eb);
                structure[i][j][k] = field::add(structure[i][j][k], w, p);
            }
        }
    }

    let iso = end_iso(p)?;
    let reps: Vec<FpMatrix> = basis
        .iter()
        .map(|&(x, d)| iso.matrix(&WeylElement::monomial(1, x, d, p, Flavor::Restricted)).map(|m| m.eval_at(a)))
        .collect::<Result<_>>()?;
    let flat: Vec<Vec<u32>> =
        reps.iter().map(|m| (0..n).flat_map(|r| (0..n).map(move |c| m.get(r, c))).collect()).collect();
    let representation_rank = FpMatrix::from_columns(p, n * n, &flat).rank();

    let mut homomorphism = true;
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            let lhs = reps[i].mul(&reps[j]);
            let mut rhs = FpMatrix::zeros(p, n, n);
            for (k, &c) in structure[i][j].iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for r in 0..n {
                    for s in 0..n {
                        let v = field::add(rhs.get(r, s), field::mul(c, reps[k].get(r, s), p), p);
                        rhs.set(r, s, v);
                    }
                }
            }
            homomorphism &= lhs == rhs;
        }
    }
    let dimension = basis.len();
    Ok(FiberReport {
        point: a,
        p,
        dimension,
        structure,
        representation_rank,
        representation_is_homomorphism: homomorphism,
        is_matrix_algebra: homomorphism && dimension == n * n && representation_rank == n * n,
    })
}
