//! Cohomology of bounded cochain complexes of free F_p[t]-modules.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::snf::{self, Track};

/// Per-degree cohomology: a free part and torsion invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub degree: usize,
    pub free_rank: usize,
    /// Monic, non-unit, each dividing the next.
    pub torsion: Vec<Polynomial>,
}

impl HomologySummary {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Free of the given rank with no torsion.
    pub fn is_free_of_rank(&self, rank: usize) -> bool {
        self.free_rank == rank && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H^{}: free rank {}", self.degree, self.free_rank)?;
        if !self.torsion.is_empty() {
            let t: Vec<String> = self.torsion.iter().map(|p| format!("({p})")).collect();
            write!(f, ", torsion {}", t.join(" "))?;
        }
        Ok(())
    }
}

/// A bounded complex `C^0 → C^1 → … → C^n` of free F_p[t]-modules.
///
/// Differential `k` maps `C^k` to `C^{k+1}` and is stored as a
/// `rank(C^{k+1}) × rank(C^k)` matrix acting on column vectors.
#[derive(Clone, Debug)]
pub struct CochainMatrixComplex {
    p: u32,
    ranks: Vec<usize>,
    differentials: Vec<PolyMatrix>,
}

impl CochainMatrixComplex {
    pub fn new(p: u32, ranks: Vec<usize>, differentials: Vec<PolyMatrix>) -> Result<Self> {
        if ranks.len() != differentials.len() + 1 {
            return Err(Error::ShapeMismatch(format!(
                "{} ranks for {} differentials",
                ranks.len(),
                differentials.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.modulus() != p {
                return Err(Error::ModulusMismatch(p, d.modulus()));
            }
            if d.cols() != ranks[k] || d.rows() != ranks[k + 1] {
                return Err(Error::ShapeMismatch(format!(
                    "differential {k} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[k + 1],
                    ranks[k]
                )));
            }
        }
        Ok(Self { p, ranks, differentials })
    }

    /// Infers ranks from the matrices.
    pub fn from_differentials(p: u32, differentials: Vec<PolyMatrix>) -> Result<Self> {
        let mut ranks = Vec::with_capacity(differentials.len() + 1);
        if let Some(first) = differentials.first() {
            ranks.push(first.cols());
        }
        ranks.extend(differentials.iter().map(PolyMatrix::rows));
        if differentials.is_empty() {
            ranks.push(0);
        }
        Self::new(p, ranks, differentials)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.differentials
    }

    /// Index of the first pair with `d_{k+1} ∘ d_k ≠ 0`, if any.
    pub fn first_nonzero_composite(&self) -> Option<usize> {
        self.differentials.windows(2).position(|w| !w[1].try_mul(&w[0]).expect("shapes validated").is_zero())
    }

    /// Cohomology in every degree `0..=n`, treating the complex as zero beyond `C^n`.
    pub fn cohomology(&self) -> Result<Vec<HomologySummary>> {
        if let Some(k) = self.first_nonzero_composite() {
            return Err(Error::CompositionNonzero(k));
        }
        (0..self.ranks.len()).map(|k| self.cohomology_at(k)).collect()
    }

    /// Cohomology in degrees `0..n` only: the top term is dropped because its
    /// outgoing differential is unknown in a truncated complex.
    pub fn truncated_cohomology(&self) -> Result<Vec<HomologySummary>> {
        let mut all = self.cohomology()?;
        all.pop();
        Ok(all)
    }

    fn cohomology_at(&self, k: usize) -> Result<HomologySummary> {
        let n = self.ranks[k];
        // Kernel of the outgoing map, as the last n - r columns of V.
        let (r, v_inv) = match self.differentials.get(k) {
            Some(d) => {
                let s = snf::smith(d, Track { u: false, v: true });
                (s.rank(), s.v_inv)
            }
            None => (0, None),
        };
        let kernel_rank = n - r;
        let (image_rank, torsion) = match k.checked_sub(1).map(|i| &self.differentials[i]) {
            Some(incoming) if kernel_rank > 0 => {
                let coords = match v_inv {
                    Some(vi) => vi.try_mul(incoming)?,
                    None => incoming.clone(),
                };
                debug_assert!((0..r).all(|i| (0..coords.cols()).all(|j| coords.get(i, j).is_zero())));
                let rows: Vec<usize> = (r..n).collect();
                let sub = coords.select_rows(&rows);
                let s = snf::smith(&sub, Track::default());
                (s.rank(), s.torsion())
            }
            _ => (0, Vec::new()),
        };
        Ok(HomologySummary { degree: k, free_rank: kernel_rank - image_rank, torsion })
    }
}

/// Cohomology of the bounded complex given by consecutive differentials.
pub fn complex_cohomology(differentials: &[PolyMatrix]) -> Result<Vec<HomologySummary>> {
    let p = differentials.first().map_or(2, PolyMatrix::modulus);
    for w in differentials.windows(2) {
        if w[1].cols() != w[0].rows() {
            return Err(Error::ShapeMismatch(format!(
                "differential with {} rows followed by one with {} columns",
                w[0].rows(),
                w[1].cols()
            )));
        }
    }
    CochainMatrixComplex::from_differentials(p, differentials.to_vec())?.cohomology()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;

    #[test]
    fn single_free_module() {
        let h = complex_cohomology(&[PolyMatrix::zeros(3, 0, 1)]).unwrap();
        assert!(h[0].is_free_of_rank(1));
        assert!(h[1].is_zero());
    }

    #[test]
    fn multiplication_by_t() {
        let m = PolyMatrix::from_int_rows(2, &[vec![vec![0, 1]]]).unwrap();
        let h = complex_cohomology(&[m]).unwrap();
        assert!(h[0].is_zero());
        assert_eq!(h[1].free_rank, 0);
        assert_eq!(h[1].torsion, vec![Polynomial::var(2, Var::T)]);
    }

    #[test]
    fn rejects_nonzero_composite_and_bad_shapes() {
        let one = PolyMatrix::identity(3, 1);
        assert_eq!(complex_cohomology(&[one.clone(), one]), Err(Error::CompositionNonzero(0)));
        let a = PolyMatrix::zeros(3, 2, 1);
        let b = PolyMatrix::zeros(3, 1, 3);
        assert!(matches!(complex_cohomology(&[a, b]), Err(Error::ShapeMismatch(_))));
    }
}
