use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use kasw_core::cyclotomic::{vp_rat, CycField, CycNum, Val};
use kasw_core::fp::Fp;
use kasw_core::monomial::Monomial;
use kasw_core::series::MSeries;
use kasw_core::witt::{asw_map, ghost, witt_add, witt_neg};

const FIELDS: &[(u32, u32)] = &[(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)];

fn field() -> impl Strategy<Value = CycField> {
    (0..FIELDS.len()).prop_map(|i| CycField::new(FIELDS[i].0, FIELDS[i].1).unwrap())
}

fn element(f: CycField) -> impl Strategy<Value = CycNum> {
    (prop::collection::vec(-20i64..=20, f.degree()), 1i64..=6).prop_map(move |(c, d)| {
        let coeffs: Vec<BigRational> = c.iter().map(|&n| BigRational::new(n.into(), d.into())).collect();
        f.from_coeffs(&coeffs).unwrap()
    })
}

fn with_elements(n: usize) -> impl Strategy<Value = (CycField, Vec<CycNum>)> {
    field().prop_flat_map(move |f| (Just(f), prop::collection::vec(element(f), n)))
}

/// Norm as the product of all Galois conjugates, independent of the resultant.
fn norm_by_conjugates(a: &CycNum) -> BigRational {
    let m = a.field().order();
    let mut acc = a.field().one();
    for k in 1..m {
        if num_integer::gcd(k, m) == 1 {
            acc = &acc * &a.conjugate(k);
        }
    }
    acc.as_rational().expect("norm is rational")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((_f, v) in with_elements(3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(&(a + b) + c, a + &(b + c));
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        if !a.is_zero() {
            prop_assert!((a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn norm_matches_conjugate_product((_f, v) in with_elements(2)) {
        let (a, b) = (&v[0], &v[1]);
        prop_assert_eq!(a.norm(), norm_by_conjugates(a));
        prop_assert_eq!((a * b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn valuation_is_norm_valuation_over_e((f, v) in with_elements(1)) {
        let a = &v[0];
        if a.is_zero() {
            prop_assert!(a.valuation().is_infinite());
        } else {
            let vn = vp_rat(&norm_by_conjugates(a), f.p()).unwrap();
            prop_assert_eq!(a.valuation(), Val::frac(vn, f.degree() as i64));
        }
    }

    #[test]
    fn valuation_is_ultrametric_and_multiplicative((f, v) in with_elements(2), k in 0u64..5) {
        let a = &v[0] * &f.pi().pow(k);
        let b = &v[1];
        let (va, vb) = (a.valuation(), b.valuation());
        prop_assert!((&a + b).valuation() >= va.clone().min(vb.clone()));
        if va != vb {
            prop_assert_eq!((&a + b).valuation(), va.clone().min(vb.clone()));
        }
        if !a.is_zero() && !b.is_zero() {
            let sum = match (va.finite(), vb.finite()) {
                (Some(x), Some(y)) => Val::Finite(x + y),
                _ => unreachable!(),
            };
            prop_assert_eq!((&a * b).valuation(), sum);
        }
    }

    #[test]
    fn serialization_round_trips((f, v) in with_elements(1)) {
        prop_assert_eq!(CycNum::from_strings(f, &v[0].to_strings()).unwrap(), v[0].clone());
    }
}

fn series(f: CycField, nvars: usize, degree: u32, constant: bool) -> impl Strategy<Value = MSeries> {
    let n = f.degree();
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), prop::collection::vec(-9i64..=9, n), 1i64..=4), 0..5)
        .prop_map(move |terms| {
            let mut s = MSeries::zero(f, nvars, degree).unwrap();
            for (exps, c, d) in terms {
                let m = Monomial::from_exps(&exps).unwrap();
                if m.degree() > degree || (m.degree() == 0 && !constant) {
                    continue;
                }
                let coeffs: Vec<BigRational> = c.iter().map(|&x| BigRational::new(x.into(), d.into())).collect();
                s.insert(m, f.from_coeffs(&coeffs).unwrap());
            }
            s
        })
}

fn three_series(constant: bool) -> impl Strategy<Value = (MSeries, MSeries, MSeries)> {
    (0..3usize).prop_flat_map(move |i| {
        let f = CycField::new([2, 3, 2][i], [1, 1, 2][i]).unwrap();
        (series(f, 2, 6, constant), series(f, 2, 6, constant), series(f, 2, 6, constant))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn series_ring_laws((a, b, c) in three_series(true)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.sub(&a).unwrap().len(), 0);
    }

    #[test]
    fn exp_is_a_homomorphism((a, b, _c) in three_series(false)) {
        let lhs = a.add(&b).unwrap().exp().unwrap();
        let rhs = a.exp().unwrap().mul(&b.exp().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.exp().unwrap().ln().unwrap(), a.clone());
    }

    #[test]
    fn inverse_series((a, _b, _c) in three_series(false)) {
        let u = a.add_constant(&a.field().one());
        prop_assert!(u.mul(&u.inv().unwrap()).unwrap() == MSeries::one(a.field(), 2, 6).unwrap());
    }
}

fn rat_vec(s: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((-40i64..=40, 1i64..=9), s)
        .prop_map(|v| v.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witt_addition_is_additive_on_ghosts(p in prop::sample::select(vec![2u32, 3, 5]), (a, b) in (1usize..=3).prop_flat_map(|s| (rat_vec(s), rat_vec(s)))) {
        let sum = witt_add(p, &a, &b).unwrap();
        let (ga, gb, gs) = (ghost(p, &a), ghost(p, &b), ghost(p, &sum));
        for n in 0..a.len() {
            prop_assert_eq!(&gs[n], &(&ga[n] + &gb[n]));
        }
        let neg = witt_add(p, &a, &witt_neg(p, &a).unwrap()).unwrap();
        prop_assert!(neg.iter().all(|x| x.is_zero()));
    }

    /// Second coordinate against the closed form `x_1 + y_1 + (x_0^p + y_0^p - (x_0 + y_0)^p)/p`.
    #[test]
    fn second_witt_coordinate_closed_form(p in prop::sample::select(vec![2u32, 3, 5]), a in rat_vec(2), b in rat_vec(2)) {
        let sum = witt_add(p, &a, &b).unwrap();
        let pw = |x: &BigRational| num_traits::pow(x.clone(), p as usize);
        let expected = &a[1] + &b[1]
            + (pw(&a[0]) + pw(&b[0]) - pw(&(&a[0] + &b[0]))) / BigRational::from_integer(BigInt::from(p));
        prop_assert_eq!(&sum[0], &(&a[0] + &b[0]));
        prop_assert_eq!(&sum[1], &expected);
    }

    #[test]
    fn asw_is_additive_over_fp(p in prop::sample::select(vec![2u32, 3, 5]), s in 1usize..=3, seed in prop::collection::vec(0i64..5, 6)) {
        let a: Vec<Fp> = (0..s).map(|i| Fp::new(p, seed[i])).collect();
        let b: Vec<Fp> = (0..s).map(|i| Fp::new(p, seed[i + 3])).collect();
        let lhs = asw_map(&witt_add(p, &a, &b).unwrap()).unwrap();
        let rhs = witt_add(p, &asw_map(&a).unwrap(), &asw_map(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn rational_unit_has_zero_valuation() {
    let f = CycField::new(3, 2).unwrap();
    let x = f.from_rational(&BigRational::new(BigInt::from(7), BigInt::from(2)));
    assert_eq!(x.valuation(), Val::int(0));
}
