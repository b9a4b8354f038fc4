//! Brace operations, brace-module actions and the Gerstenhaber bracket.

use crate::error::{Error, Result};
use crate::field;
use crate::poly::Polynomial;
use crate::tensor::{CoefficientTag, TensorOperator};

/// `A{A_1, …, A_m}`: insert the outputs of the `A_l` into increasing argument
/// positions of `A`, summed over all position choices with sign
/// `(-1)^{Σ_l i_l (j_l - 1)}`, where `i_l` counts the arguments preceding the
/// block of `A_l` and `j_l` is its arity.
pub fn brace(a: &TensorOperator, inserts: &[TensorOperator]) -> Result<TensorOperator> {
    if a.coefficient_tag() != CoefficientTag::O {
        return Err(Error::CoefficientMismatch(format!(
            "brace expects O-valued operators, got {}",
            a.coefficient_tag()
        )));
    }
    insert(a, inserts)
}

/// `B{A_1, …, A_m}` for `B` with values in a bimodule; the payload is untouched.
pub fn brace_module_action(b: &TensorOperator, inserts: &[TensorOperator]) -> Result<TensorOperator> {
    insert(b, inserts)
}

/// `[A, B] = A{B} - (-1)^{(i-1)(j-1)} B{A}`.
pub fn gerstenhaber(a: &TensorOperator, b: &TensorOperator) -> Result<TensorOperator> {
    for op in [a, b] {
        if op.coefficient_tag() != CoefficientTag::O {
            return Err(Error::CoefficientMismatch(format!(
                "bracket expects O-valued operators, got {}",
                op.coefficient_tag()
            )));
        }
    }
    if a.modulus() != b.modulus() {
        return Err(Error::ModulusMismatch(a.modulus(), b.modulus()));
    }
    if a.slot_kind() != b.slot_kind() {
        return Err(Error::CoefficientMismatch("mixed slot kinds".into()));
    }
    let p = a.modulus();
    let (i, j) = (a.arity(), b.arity());
    let arity = (i + j).saturating_sub(1);
    let ab = if i > 0 {
        insert(a, std::slice::from_ref(b))?
    } else {
        TensorOperator::zero(p, arity, CoefficientTag::O, a.slot_kind())?
    };
    let ba = if j > 0 {
        insert(b, std::slice::from_ref(a))?
    } else {
        TensorOperator::zero(p, arity, CoefficientTag::O, a.slot_kind())?
    };
    // (i - 1)(j - 1) is odd exactly when both arities are even.
    let odd = i % 2 == 0 && j % 2 == 0;
    if odd {
        ab.try_add(&ba)
    } else {
        ab.try_sub(&ba)
    }
}

fn insert(a: &TensorOperator, inserts: &[TensorOperator]) -> Result<TensorOperator> {
    let p = a.modulus();
    let i = a.arity();
    let m = inserts.len();
    for ins in inserts {
        if ins.modulus() != p {
            return Err(Error::ModulusMismatch(p, ins.modulus()));
        }
        if ins.coefficient_tag() != CoefficientTag::O || ins.slot_kind() != a.slot_kind() {
            return Err(Error::CoefficientMismatch(format!(
                "inserted operators must be O-valued with {:?} slots",
                a.slot_kind()
            )));
        }
    }
    if m > i {
        return Err(Error::TooManyInserts { inserts: m, arity: i });
    }
    if m == 0 {
        return Ok(a.clone());
    }
    let arities: Vec<usize> = inserts.iter().map(TensorOperator::arity).collect();
    let n = i + arities.iter().sum::<usize>() - m;
    let mut out = TensorOperator::zero(p, n, a.coefficient_tag(), a.slot_kind())?;
    for positions in combinations(i, m) {
        let sign_odd = positions
            .iter()
            .enumerate()
            .scan(0usize, |acc, (l, &s)| {
                let prev_end = if l == 0 { 0 } else { positions[l - 1] + 1 };
                let i_l = *acc + (s - prev_end);
                *acc = i_l + arities[l];
                Some(i_l as i64 * (arities[l] as i64 - 1))
            })
            .sum::<i64>()
            .rem_euclid(2)
            == 1;
        let sign = if sign_odd { p - 1 } else { 1 };
        for ((orders, payload), f) in a.terms() {
            let mut state = Expansion { out: &mut out, positions: &positions, inserts, orders, payload: *payload, p };
            state.expand(0, 0, Vec::with_capacity(n), f.clone(), sign);
        }
    }
    Ok(out)
}

struct Expansion<'a> {
    out: &'a mut TensorOperator,
    positions: &'a [usize],
    inserts: &'a [TensorOperator],
    orders: &'a [u32],
    payload: u32,
    p: u32,
}

impl Expansion<'_> {
    fn expand(&mut self, slot: usize, next: usize, built: Vec<u32>, coef: Polynomial, weight: u32) {
        if coef.is_zero() || weight == 0 {
            return;
        }
        if slot == self.orders.len() {
            self.out.add_scaled_term(built, self.payload, &coef, weight);
            return;
        }
        let b = self.orders[slot];
        if next < self.positions.len() && self.positions[next] == slot {
            let inserts = self.inserts;
            let ins = &inserts[next];
            for ((c, _), f) in ins.terms() {
                for parts in compositions(b, c.len() + 1) {
                    let w = field::multinomial(&parts.iter().map(|&e| e as u64).collect::<Vec<_>>(), self.p);
                    if w == 0 {
                        continue;
                    }
                    let g = f.nth_derivative(parts[0] as usize);
                    if g.is_zero() {
                        continue;
                    }
                    let mut nb = built.clone();
                    nb.extend(c.iter().zip(&parts[1..]).map(|(ci, e)| ci + e));
                    self.expand(slot + 1, next + 1, nb, &coef * &g, field::mul(weight, w, self.p));
                }
            }
        } else {
            let mut nb = built;
            nb.push(b);
            self.expand(slot + 1, next, nb, coef, weight);
        }
    }
}

/// Increasing `m`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for s in start..n {
            if n - s < m - cur.len() {
                break;
            }
            cur.push(s);
            rec(s + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, m, &mut Vec::new(), &mut out);
    out
}

/// Ordered ways of writing `total` as a sum of `parts` non-negative integers.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;
    use crate::tensor::SlotKind::Restricted;

    fn x(p: u32, e: usize) -> Polynomial {
        Polynomial::monomial(1, e, p, Var::X)
    }

    fn op(p: u32, orders: &[u32]) -> TensorOperator {
        TensorOperator::monomial(x(p, 0), orders.to_vec(), 0, CoefficientTag::O, Restricted).unwrap()
    }

    #[test]
    fn empty_brace_is_identity() {
        let a = op(3, &[1, 2]);
        assert_eq!(brace(&a, &[]).unwrap(), a);
    }

    #[test]
    fn mu_brace_d_is_leibniz() {
        let p = 5;
        let mu = TensorOperator::unit(p, 2, Restricted).unwrap();
        let d = op(p, &[1]);
        let r = brace(&mu, &[d]).unwrap();
        let expected = op(p, &[1, 0]).try_add(&op(p, &[0, 1])).unwrap();
        assert_eq!(r, expected);
    }

    #[test]
    fn arity_zero_insert_consumes_argument() {
        let p = 5;
        let f = TensorOperator::function(x(p, 3), Restricted).unwrap();
        let r = brace(&op(p, &[1]), &[f]).unwrap();
        assert_eq!(r, TensorOperator::function(x(p, 2).scale(3), Restricted).unwrap());
        assert!(matches!(brace(&op(p, &[]), &[op(p, &[1])]), Err(Error::TooManyInserts { inserts: 1, arity: 0 })));
    }

    #[test]
    fn bracket_of_functions_vanishes() {
        let p = 3;
        let f = TensorOperator::function(x(p, 1), Restricted).unwrap();
        assert!(gerstenhaber(&f, &f).unwrap().is_zero());
        let mu = TensorOperator::unit(p, 2, Restricted).unwrap();
        assert!(gerstenhaber(&mu, &mu).unwrap().is_zero());
    }

    #[test]
    fn differential_is_bracket_with_multiplication() {
        let p = 3;
        let mu = TensorOperator::unit(p, 2, Restricted).unwrap();
        for orders in [vec![2], vec![1, 2], vec![2, 1, 1]] {
            let a = TensorOperator::monomial(x(p, 2), orders, 0, CoefficientTag::O, Restricted).unwrap();
            let bracket = gerstenhaber(&a, &mu).unwrap();
            assert_eq!(a.cochain_differential(), bracket.scale(p - 1));
        }
    }
}
