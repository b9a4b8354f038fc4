//! Smith normal form over the principal ideal domain F_p[t].
//!
//! Elimination with degree-minimal pivots (ties: lowest row, then lowest
//! column) and monic normalization of the diagonal. Transformations are
//! tracked only when requested, since homology computations need `V` and
//! `V^{-1}` but never `U`.

use crate::field;
use crate::matrix::PolyMatrix;
use crate::poly::{Polynomial, Var};

/// Result of a Smith reduction `U · M · V = D`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: Option<PolyMatrix>,
    pub d: PolyMatrix,
    pub v: Option<PolyMatrix>,
    pub v_inv: Option<PolyMatrix>,
    /// Nonzero diagonal entries, monic, each dividing the next.
    pub invariant_factors: Vec<Polynomial>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Invariant factors that are not units.
    pub fn torsion(&self) -> Vec<Polynomial> {
        self.invariant_factors.iter().filter(|f| !f.is_one()).cloned().collect()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub u: bool,
    pub v: bool,
}

/// Full reduction returning `(U, D, V)` with `U · M · V = D`.
pub fn smith_normal_form(m: &PolyMatrix) -> (PolyMatrix, PolyMatrix, PolyMatrix) {
    let s = smith(m, Track { u: true, v: true });
    (s.u.expect("tracked"), s.d, s.v.expect("tracked"))
}

/// Only the invariant factors.
pub fn invariant_factors(m: &PolyMatrix) -> Vec<Polynomial> {
    smith(m, Track::default()).invariant_factors
}

pub fn smith(m: &PolyMatrix, track: Track) -> SmithForm {
    let p = m.modulus();
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = track.u.then(|| PolyMatrix::identity(p, rows));
    let mut v = track.v.then(|| PolyMatrix::identity(p, cols));
    let mut v_inv = track.v.then(|| PolyMatrix::identity(p, cols));

    let mut k = 0;
    'outer: while k < rows.min(cols) {
        loop {
            let Some((pr, pc)) = find_pivot(&d, k) else {
                break 'outer;
            };
            d.swap_rows(k, pr);
            if let Some(u) = u.as_mut() {
                u.swap_rows(k, pr);
            }
            d.swap_cols(k, pc);
            if let (Some(v), Some(vi)) = (v.as_mut(), v_inv.as_mut()) {
                v.swap_cols(k, pc);
                vi.swap_rows(k, pc);
            }

            let pivot = d.get(k, k).clone();
            let mut clean = true;
            for i in k + 1..rows {
                if d.get(i, k).is_zero() {
                    continue;
                }
                let (q, r) = d.get(i, k).div_rem(&pivot).expect("same ring");
                let nq = -&q;
                d.add_row_multiple(i, k, &nq);
                if let Some(u) = u.as_mut() {
                    u.add_row_multiple(i, k, &nq);
                }
                clean &= r.is_zero();
            }
            for j in k + 1..cols {
                if d.get(k, j).is_zero() {
                    continue;
                }
                let (q, r) = d.get(k, j).div_rem(&pivot).expect("same ring");
                let nq = -&q;
                d.add_col_multiple(j, k, &nq);
                if let (Some(v), Some(vi)) = (v.as_mut(), v_inv.as_mut()) {
                    v.add_col_multiple(j, k, &nq);
                    vi.add_row_multiple(k, j, &q);
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row and retry.
            let offending = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !d.get(i, j).divisible_by(&pivot)));
            match offending {
                Some(i) => {
                    let one = Polynomial::one(p, Var::T);
                    d.add_row_multiple(k, i, &one);
                    if let Some(u) = u.as_mut() {
                        u.add_row_multiple(k, i, &one);
                    }
                }
                None => break,
            }
        }
        let c = field::inv(d.get(k, k).leading(), p);
        if c != 1 {
            d.scale_row(k, c);
            if let Some(u) = u.as_mut() {
                u.scale_row(k, c);
            }
        }
        k += 1;
    }

    let invariant_factors = (0..rows.min(cols)).map(|i| d.get(i, i).clone()).take_while(|f| !f.is_zero()).collect();
    SmithForm { u, d, v, v_inv, invariant_factors }
}

// Minimal-degree nonzero entry in the trailing submatrix; ties by lowest row then column.
fn find_pivot(d: &PolyMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for i in k..d.rows() {
        for j in k..d.cols() {
            if let Some(deg) = d.get(i, j).degree() {
                if best.is_none_or(|(b, _, _)| deg < b) {
                    best = Some((deg, i, j));
                    if deg == 0 {
                        return Some((i, j));
                    }
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(p: u32, rows: &[Vec<Vec<i64>>]) -> PolyMatrix {
        PolyMatrix::from_int_rows(p, rows).unwrap()
    }

    fn t(p: u32, c: &[i64]) -> Polynomial {
        Polynomial::from_coeffs(p, Var::T, c).unwrap()
    }

    #[test]
    fn upper_triangular_example() {
        // [[t, 1], [0, t]] -> (1, t^2)
        let m = mat(5, &[vec![vec![0, 1], vec![1]], vec![vec![], vec![0, 1]]]);
        let (u, d, v) = smith_normal_form(&m);
        assert_eq!(u.try_mul(&m).unwrap().try_mul(&v).unwrap(), d);
        assert_eq!(invariant_factors(&m), vec![t(5, &[1]), t(5, &[0, 0, 1])]);
    }

    #[test]
    fn zero_and_diagonal() {
        assert!(invariant_factors(&PolyMatrix::zeros(3, 2, 2)).is_empty());
        let m = mat(3, &[vec![vec![0, 1], vec![]], vec![vec![], vec![0, 0, 1]]]);
        assert_eq!(invariant_factors(&m), vec![t(3, &[0, 1]), t(3, &[0, 0, 1])]);
    }

    #[test]
    fn non_divisible_diagonal_is_repaired() {
        // diag(t, t+1) -> (1, t(t+1))
        let m = mat(3, &[vec![vec![0, 1], vec![]], vec![vec![], vec![1, 1]]]);
        assert_eq!(invariant_factors(&m), vec![t(3, &[1]), t(3, &[0, 1, 1])]);
    }

    #[test]
    fn tracks_inverse_of_v() {
        let m = mat(2, &[vec![vec![1, 1], vec![0, 1], vec![1]], vec![vec![1], vec![1, 1], vec![0, 0, 1]]]);
        let s = smith(&m, Track { u: false, v: true });
        let v = s.v.unwrap();
        let vi = s.v_inv.unwrap();
        assert_eq!(v.try_mul(&vi).unwrap(), PolyMatrix::identity(2, 3));
    }
}
