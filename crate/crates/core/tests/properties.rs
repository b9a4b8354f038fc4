use charquant_core::field;
use charquant_core::snf::{self, Track};
use charquant_core::{Flavor, PolyMatrix, Polynomial, Var, WeylElement};
use proptest::prelude::*;

const PRIMES: [u32; 4] = [2, 3, 5, 7];

fn poly(p: u32, var: Var, max_len: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(0..p, 0..max_len).prop_map(move |c| Polynomial::from_raw(p, var, c))
}

fn poly_triple() -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
    prop::sample::select(PRIMES.to_vec())
        .prop_flat_map(|p| (poly(p, Var::X, 8), poly(p, Var::X, 8), poly(p, Var::X, 8)))
}

fn weyl(p: u32, flavor: Flavor) -> impl Strategy<Value = WeylElement> {
    let top = if flavor == Flavor::Restricted { p } else { p + 2 };
    prop::collection::vec((0..p, 0..5u32, 0..top), 0..5).prop_map(move |terms| {
        terms.into_iter().fold(WeylElement::zero(p, flavor), |acc, (c, a, b)| {
            acc.try_add(&WeylElement::monomial(c, a, b, p, flavor)).unwrap()
        })
    })
}

fn weyl_triple() -> impl Strategy<Value = (WeylElement, WeylElement, WeylElement)> {
    (prop::sample::select(vec![2u32, 3, 5]), prop::sample::select(vec![Flavor::Restricted, Flavor::Crystalline]))
        .prop_flat_map(|(p, f)| (weyl(p, f), weyl(p, f), weyl(p, f)))
}

fn poly_matrix() -> impl Strategy<Value = PolyMatrix> {
    (prop::sample::select(vec![2u32, 3]), 1..4usize, 1..4usize).prop_flat_map(|(p, r, c)| {
        prop::collection::vec(poly(p, Var::T, 3), r * c).prop_map(move |entries| {
            let rows = entries.chunks(c).map(|row| row.to_vec()).collect();
            PolyMatrix::from_rows(p, rows).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn polynomial_ring_axioms((a, b, c) in poly_triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(a.modulus(), Var::X), a.clone());
    }

    #[test]
    fn hasse_derivatives_compose((f, _, _) in poly_triple(), i in 0..6usize, j in 0..6usize) {
        let p = f.modulus();
        let lhs = f.hasse_derivative(j).hasse_derivative(i);
        let rhs = f.hasse_derivative(i + j).scale(field::binom((i + j) as u64, i as u64, p));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hasse_derivatives_are_leibniz((f, g, _) in poly_triple(), k in 0..6usize) {
        let p = f.modulus();
        let lhs = (&f * &g).hasse_derivative(k);
        let mut rhs = Polynomial::zero(p, Var::X);
        for i in 0..=k {
            rhs = &rhs + &(&f.hasse_derivative(i) * &g.hasse_derivative(k - i));
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn frobenius_roundtrip((f, _, _) in poly_triple()) {
        let parts = f.frobenius_decompose();
        prop_assert_eq!(parts.len(), f.modulus() as usize);
        prop_assert_eq!(Polynomial::frobenius_reassemble(&parts, f.modulus()), f);
    }

    #[test]
    fn division_with_remainder(p in prop::sample::select(PRIMES.to_vec()), a in 0..100u64, b in 1..100u64) {
        let f = Polynomial::from_raw(p, Var::T, (0..8).map(|i| ((a >> i) as u32) % p).collect());
        let mut g = Polynomial::from_raw(p, Var::T, (0..4).map(|i| ((b >> i) as u32) % p).collect());
        if g.is_zero() {
            g = Polynomial::one(p, Var::T);
        }
        let (q, r) = f.div_rem(&g).unwrap();
        prop_assert_eq!(&(&q * &g) + &r, f);
        prop_assert!(r.degree().is_none_or(|d| d < g.degree().unwrap()));
    }

    #[test]
    fn weyl_associativity_and_distributivity((a, b, c) in weyl_triple()) {
        let ab_c = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let a_bc = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let rhs = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weyl_action_is_a_module((a, b, _) in weyl_triple(), f in poly(5, Var::X, 6)) {
        let p = a.modulus();
        let f = Polynomial::from_raw(p, Var::X, f.coeffs().iter().map(|c| c % p).collect());
        let lhs = a.try_mul(&b).unwrap().act(&f).unwrap();
        let rhs = a.act(&b.act(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn smith_postconditions(m in poly_matrix()) {
        let s = snf::smith(&m, Track { u: true, v: true });
        let (u, v) = (s.u.clone().unwrap(), s.v.clone().unwrap());
        prop_assert_eq!(u.try_mul(&m).unwrap().try_mul(&v).unwrap(), s.d.clone());
        prop_assert!(s.d.is_diagonal());
        prop_assert_eq!(v.try_mul(&s.v_inv.clone().unwrap()).unwrap(), PolyMatrix::identity(m.modulus(), m.cols()));
        for f in &s.invariant_factors {
            prop_assert!(f.is_monic());
        }
        for w in s.invariant_factors.windows(2) {
            prop_assert!(w[1].divisible_by(&w[0]));
        }
        let n = m.rows().min(m.cols());
        for i in s.rank()..n {
            prop_assert!(s.d.get(i, i).is_zero());
        }
    }

    #[test]
    fn rank_is_invariant_under_transpose(m in poly_matrix()) {
        prop_assert_eq!(snf::invariant_factors(&m), snf::invariant_factors(&m.transpose()));
    }
}
