use minrep::algebra::{quadric_form, reduce_mod_quadric, ExactScalar, Polynomial, PowerSeries};
use minrep::bessel::ktilde;
use minrep::diffop::{
    apply_r_mu_ell, commutator_rr, coordinate_mult, double_commutator_qrq, fundamental_r, jordan_mul, EulerFactor,
};
use minrep::ConeSpec;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const CONES: [(usize, usize); 3] = [(2, 2), (3, 1), (4, 2)];

fn scalar() -> impl Strategy<Value = ExactScalar> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| ExactScalar::frac(n, d))
}

fn poly(nvars: usize, max_deg: i32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec(0..=max_deg, nvars), scalar());
    prop::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        let base = Polynomial::zero_in(nvars);
        terms.into_iter().fold(base.clone(), |acc, (mut e, c)| {
            // keep total degree ≤ max_deg
            while e.iter().sum::<i32>() > max_deg {
                let i = e.iter().position(|&x| x > 0).unwrap();
                e[i] -= 1;
            }
            acc + base.monomial_like(e, c)
        })
    })
}

fn cone_and_poly(max_deg: i32) -> impl Strategy<Value = (ConeSpec, Polynomial)> {
    prop::sample::select(CONES.to_vec())
        .prop_flat_map(move |(p, q)| (Just(ConeSpec::new(p, q).unwrap()), poly(p + q, max_deg, 5)))
}

fn rational_vec(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((-20i64..=20, 1i64..=7), n)
        .prop_map(|v| v.into_iter().map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b * a);
    }

    #[test]
    fn polynomial_ring_axioms(f in poly(3, 3, 4), g in poly(3, 3, 4), h in poly(3, 3, 4)) {
        prop_assert_eq!((f.clone() + g.clone()) + h.clone(), f.clone() + (g.clone() + h.clone()));
        prop_assert_eq!((&(&f * &g)) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(g.clone() + h.clone()), &f * &g + &f * &h);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert!((f.clone() - f).is_zero());
    }

    #[test]
    fn quadric_multiples_reduce_to_zero((spec, f) in cone_and_poly(4)) {
        let fq = &f * &quadric_form(&spec);
        prop_assert!(reduce_mod_quadric(&fq, &spec).unwrap().is_zero());
    }

    #[test]
    fn quadric_reduction_is_idempotent((spec, f) in cone_and_poly(4)) {
        let once = reduce_mod_quadric(&f, &spec).unwrap();
        prop_assert!(once.max_exponent(spec.n() - 1).unwrap_or(0) <= 1);
        prop_assert_eq!(reduce_mod_quadric(&once, &spec).unwrap(), once);
    }

    #[test]
    fn series_product_matches_polynomial_product(
        a in prop::collection::vec(scalar(), 1..=5),
        b in prop::collection::vec(scalar(), 1..=5),
    ) {
        let n = 10;
        let sa = PowerSeries::from_scalars(n, &a).unwrap();
        let sb = PowerSeries::from_scalars(n, &b).unwrap();
        let prod = sa.mul(&sb).unwrap();
        let as_poly = |v: &[ExactScalar]| Polynomial::univariate(v.iter().cloned().enumerate().map(|(k, c)| (k as i32, c)));
        let pp = &as_poly(&a) * &as_poly(&b);
        for k in 0..=n {
            let want = pp.coeff1(k as i32);
            let got = prod.coeff(k).unwrap().coefficient(&[0]);
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn ktilde_positive_and_decreasing(alpha in -0.5f64..6.0, z in 0.05f64..40.0) {
        let a = ktilde(alpha, z).unwrap();
        let b = ktilde(alpha, z * 1.05).unwrap();
        prop_assert!(a > 0.0 && b > 0.0 && b < a);
    }

    #[test]
    fn euler_factor_degree_bound(f in poly(1, 6, 5), c in scalar(), a in prop::sample::select(vec![0i64, 1])) {
        let half = if a == 1 { ExactScalar::frac(-1, 2) } else { ExactScalar::zero() };
        let g = EulerFactor::new(c, half).apply(&f);
        if let (Some(dg), Some(df)) = (g.total_degree(), f.total_degree()) {
            prop_assert!(dg <= df + 1);
        }
    }

    #[test]
    fn r_mu_ell_degree_bound(f in poly(1, 6, 5), mu in 0i64..8, ell in -1i64..4) {
        let g = apply_r_mu_ell(mu, ell, &f).unwrap();
        if let (Some(dg), Some(df)) = (g.total_degree(), f.total_degree()) {
            prop_assert!(dg <= df + 2);
        }
    }

    #[test]
    fn fundamental_operators_commute((spec, f) in cone_and_poly(4), i in 1usize..=6, j in 1usize..=6) {
        let n = spec.n();
        let (i, j) = ((i - 1) % n + 1, (j - 1) % n + 1);
        prop_assert!(commutator_rr(i, j, &f, &spec).unwrap().is_zero());
    }

    #[test]
    fn double_commutator_is_a_multiplication((spec, f) in cone_and_poly(3), i in 1usize..=6, j in 1usize..=6, k in 1usize..=6) {
        let n = spec.n();
        let (i, j, k) = ((i - 1) % n + 1, (j - 1) % n + 1, (k - 1) % n + 1);
        let one = Polynomial::zero_in(n).constant_like(ExactScalar::one());
        let m = double_commutator_qrq(i, j, k, &one, &spec).unwrap();
        let lhs = double_commutator_qrq(i, j, k, &f, &spec).unwrap();
        let rhs = reduce_mod_quadric(&(&m * &f), &spec).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fundamental_operator_lowers_degree((spec, f) in cone_and_poly(4), j in 1usize..=6) {
        let j = (j - 1) % spec.n() + 1;
        let g = fundamental_r(j, &f, &spec).unwrap();
        if let (Some(dg), Some(df)) = (g.total_degree(), f.total_degree()) {
            prop_assert!(dg < df);
        }
        prop_assert!(coordinate_mult(spec.n() + 1, &f).is_err());
    }

    #[test]
    fn jordan_product_symmetry_and_identity(
        (p, q) in prop::sample::select(CONES.to_vec()),
        u in rational_vec(6),
        v in rational_vec(6),
    ) {
        let spec = ConeSpec::new(p, q).unwrap();
        let n = spec.n();
        let (u, v) = (&u[..n], &v[..n]);
        prop_assert_eq!(jordan_mul(u, v, &spec).unwrap(), jordan_mul(v, u, &spec).unwrap());
        let mut e = vec![BigRational::from_integer(BigInt::from(0)); n];
        e[0] = BigRational::from_integer(BigInt::from(1));
        prop_assert_eq!(jordan_mul(&e, v, &spec).unwrap(), v.to_vec());
    }
}
