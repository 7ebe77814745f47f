use dwork_core::hyper::{greene_f, greene_f_direct, mccarthy_f, mccarthy_to_greene};
use dwork_core::oracle::{brute_count, dwork_sweep};
use dwork_core::{Characters, FqElem, FqField, GreeneParams, McCarthyParams, Polynomial};
use proptest::prelude::*;

const PRIMES: [u32; 5] = [5, 7, 11, 13, 19];

fn pick(idx: usize) -> Characters {
    Characters::for_field(PRIMES[idx % PRIMES.len()], 1).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(idx in 0usize..5, a in 0u32..64, b in 0u32..64, c in 0u32..64) {
        let ch = pick(idx);
        let f = ch.field();
        let q = f.q();
        let (a, b, c) = (f.from_code(a % q).unwrap(), f.from_code(b % q).unwrap(), f.from_code(c % q).unwrap());
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), FqElem::Zero);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FqElem::ONE);
        }
    }

    #[test]
    fn extension_field_axioms(a in 0u32..49, b in 0u32..49) {
        let f = FqField::new(7, 2).unwrap();
        let (a, b) = (f.from_code(a).unwrap(), f.from_code(b).unwrap());
        prop_assert_eq!(f.pow(f.add(a, b), 7), f.add(f.pow(a, 7), f.pow(b, 7)));
        prop_assert_eq!(f.trace(a), f.trace_by_frobenius(a));
    }

    #[test]
    fn characters_are_multiplicative(idx in 0usize..5, k in 0i64..20, a in 1u32..64, b in 1u32..64) {
        let ch = pick(idx);
        let f = ch.field();
        let q = f.q();
        let (a, b) = (f.from_code(1 + a % (q - 1)).unwrap(), f.from_code(1 + b % (q - 1)).unwrap());
        let chi = ch.omega_pow(k);
        let lhs = ch.value(chi, f.mul(a, b));
        let rhs = ch.value(chi, a) * ch.value(chi, b);
        prop_assert!((lhs - rhs).norm() < 1e-9);
    }

    #[test]
    fn gauss_sums_have_norm_sqrt_q(idx in 0usize..5, k in 1i64..64) {
        let ch = pick(idx);
        let k = 1 + k % (ch.order() as i64 - 1);
        let g = ch.gauss(ch.omega_pow(k));
        prop_assert!((g.norm_sqr() - ch.q() as f64).abs() < 1e-9);
    }

    #[test]
    fn greene_matches_direct_sum(idx in 0usize..4, a in 0i64..20, b in 0i64..20, c in 0i64..20, x in 0u32..19) {
        let ch = pick(idx);
        let f = ch.field();
        let params = GreeneParams::new(
            vec![ch.omega_pow(a), ch.omega_pow(b)],
            vec![ch.omega_pow(c)],
            f.from_code(x % f.q()).unwrap(),
        );
        let d = greene_f(&ch, &params).unwrap() - greene_f_direct(&ch, &params).unwrap();
        prop_assert!(d.norm() < 1e-9);
    }

    #[test]
    fn mccarthy_agrees_with_greene_form(idx in 0usize..5, a0 in 1i64..20, a1 in 0i64..20, b1 in 0i64..20, x in 0u32..19) {
        let ch = pick(idx);
        let n = ch.order() as i64;
        let (a0, a1, b1) = (1 + a0 % (n - 1), a1 % n, b1 % n);
        prop_assume!(a1 != b1);
        let params = McCarthyParams::new(
            vec![ch.omega_pow(a0), ch.omega_pow(a1)],
            vec![ch.trivial(), ch.omega_pow(b1)],
            ch.field().from_code(x % ch.q()).unwrap(),
        );
        let d = mccarthy_f(&ch, &params).unwrap() - mccarthy_to_greene(&ch, &params).unwrap();
        prop_assert!(d.norm() < 1e-9);
    }
}

#[test]
fn normalized_enumeration_visits_every_point_once() {
    for (p, n) in [(5, 3), (7, 4), (3, 6)] {
        let f = FqField::new(p, 1).unwrap();
        let zero = Polynomial::new(n, Vec::new()).unwrap();
        let expected = (u64::from(p).pow(n as u32) - 1) / u64::from(p - 1);
        assert_eq!(brute_count(&f, &zero).unwrap(), expected);
    }
}

#[test]
fn sweep_matches_single_counts_and_is_deterministic() {
    let f = FqField::new(7, 1).unwrap();
    let sweep = dwork_sweep(&f, 4).unwrap();
    assert_eq!(sweep, dwork_sweep(&f, 4).unwrap());
    for lambda in f.nonzero() {
        let poly = Polynomial::dwork(&f, 4, lambda).unwrap();
        assert_eq!(sweep.count(lambda), brute_count(&f, &poly).unwrap());
    }
}

#[test]
fn line_has_one_point() {
    let f = FqField::new(5, 1).unwrap();
    let poly = Polynomial::new(2, vec![(FqElem::ONE, vec![1, 0]), (FqElem::ONE, vec![0, 1])]).unwrap();
    assert_eq!(brute_count(&f, &poly).unwrap(), 1);
}
