use modtrace::qseries::{eisenstein, eta, eta_power, serre_derivative};
use modtrace::rational::{int, rat, rational_roots};
use modtrace::virasoro::{kac_weight, minimal_model, partitions, singular_vectors, Partition, VermaModule, VermaVector};
use modtrace::zhu::zhu_poly;
use modtrace::{BigRational, PuiseuxSeries};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-12i64..12, 1i64..8).prop_map(|(n, d)| rat(n, d))
}

fn unit_series(len: usize) -> impl Strategy<Value = PuiseuxSeries> {
    proptest::collection::vec(small_rat(), len).prop_map(|mut cs| {
        cs[0] = BigRational::one();
        PuiseuxSeries::from_coeffs(cs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn eta_powers_multiply(a in small_rat(), b in small_rat()) {
        let lhs = eta_power(&a, 12).mul(&eta_power(&b, 12));
        prop_assert!(lhs.agrees_with(&eta_power(&(a + b), 12)).unwrap());
    }

    #[test]
    fn eta_power_is_serre_flat(r in small_rat()) {
        let d = serre_derivative(&eta_power(&r, 15), &(&r / int(2))).unwrap();
        prop_assert!(d.coeffs().iter().all(Zero::is_zero));
    }

    #[test]
    fn inverse_and_roots(f in unit_series(10), n in 1i64..5) {
        let prod = f.mul(&f.inverse().unwrap());
        prop_assert!(prod.agrees_with(&PuiseuxSeries::one(10)).unwrap());
        let root = f.pow_rational(&rat(1, n)).unwrap();
        let mut back = PuiseuxSeries::one(10);
        for _ in 0..n {
            back = back.mul(&root);
        }
        prop_assert!(back.agrees_with(&f).unwrap());
    }

    #[test]
    fn roots_of_products(mut rs in proptest::collection::vec(small_rat(), 1..5)) {
        let mut poly = vec![BigRational::one()];
        for r in &rs {
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            poly = next;
        }
        rs.sort();
        prop_assert_eq!(rational_roots(&poly), rs);
    }

    #[test]
    fn virasoro_commutator(c in small_rat(), h in small_rat(), m in -3i64..4, n in -3i64..4, idx in 0usize..5) {
        let module = VermaModule::new(c.clone(), h);
        let basis = module.basis(4);
        let v = VermaVector::basis(basis[idx % basis.len()].clone());
        let lhs = {
            let mut x = module.apply(m, &module.apply(n, &v));
            x.add_scaled(&int(-1), &module.apply(n, &module.apply(m, &v)));
            x
        };
        let mut rhs = module.apply(m + n, &v).scale(&int(m - n));
        if m + n == 0 {
            rhs.add_scaled(&(c * rat(m * m * m - m, 12)), &v);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gram_matrices_are_symmetric(c in small_rat(), h in small_rat(), level in 0usize..5) {
        prop_assert!(VermaModule::new(c, h).gram(level).is_symmetric());
    }
}

#[test]
fn partition_counts_match_eta_inverse() {
    let counts = eta_power(&int(-1), 20);
    for n in 0..20 {
        assert_eq!(int(partitions(n, 1).len() as i64), counts.coeffs()[n], "p({n})");
    }
    assert_eq!(partitions(4, 2), vec![Partition::new(vec![4]), Partition::new(vec![2, 2])]);
}

#[test]
fn kac_weights_carry_singular_vectors() {
    for m in 1..=3u32 {
        let c = minimal_model(m).central_charge;
        for r in 1..=m + 1 {
            for s in 1..=r {
                let h = kac_weight(m, r, s);
                let level = (r * s) as usize;
                if level <= 6 {
                    assert!(!singular_vectors(&c, &h, level).is_empty(), "m={m} r={r} s={s}");
                }
            }
        }
    }
}

#[test]
fn ramanujan_e2() {
    let e2 = eisenstein(2, 20).unwrap();
    let e4 = eisenstein(4, 20).unwrap();
    let lhs = e2.theta();
    let rhs = e4.scale(&int(5)).sub(&e2.mul(&e2)).unwrap();
    assert!(lhs.with_weight(None).agrees_with(&rhs.with_weight(None)).unwrap());
    assert_eq!(eta(5).lambda(), &rat(1, 24));
}

/// Level-30 singular vector; slow.
#[test]
#[ignore]
fn zhu_spectrum_m4() {
    let z = zhu_poly(4, None).unwrap();
    assert_eq!(z.roots(), minimal_model(4).weights);
    assert_eq!(z.degree(), 15);
}
