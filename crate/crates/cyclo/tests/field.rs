use ball::CBall;
use cyclo::{cyclotomic_polynomial, embed_complex, trace_reconstruct, trace_to_q, CycMatrix, CycNum, GaloisChar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn from_ints(n: u64, c: &[i64]) -> CycNum {
    CycNum::from_int_coeffs(n, &c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
}

/// Solves `x * m = e_0` over Q where `m` is the matrix of multiplication by
/// `a` in the basis `1..z^5` of Q[z]/(1+z+...+z^6), built by schoolbook
/// polynomial reduction.
fn inverse_in_q_zeta7(a: &[i64; 6]) -> Vec<BigRational> {
    let phi = 6;
    let mut rows = Vec::new();
    for k in 0..phi {
        let mut prod = vec![0i64; 12];
        for (i, &c) in a.iter().enumerate() {
            prod[i + k] += c;
        }
        // z^6 = -(1 + z + ... + z^5)
        for d in (phi..12).rev() {
            let c = prod[d];
            prod[d] = 0;
            for j in 0..phi {
                prod[d - phi + j] -= c;
            }
        }
        rows.push(prod[..phi].iter().map(|&v| BigRational::from_integer(v.into())).collect::<Vec<_>>());
    }
    // transpose: unknown x satisfies sum_k x_k rows[k] = e_0
    let mut aug: Vec<Vec<BigRational>> = (0..phi)
        .map(|j| {
            let mut r: Vec<BigRational> = (0..phi).map(|k| rows[k][j].clone()).collect();
            r.push(if j == 0 { BigRational::one() } else { BigRational::zero() });
            r
        })
        .collect();
    for c in 0..phi {
        let p = (c..phi).find(|&r| !aug[r][c].is_zero()).unwrap();
        aug.swap(c, p);
        let piv = aug[c][c].clone();
        for v in aug[c].iter_mut() {
            *v = &*v / &piv;
        }
        for r in 0..phi {
            if r != c && !aug[r][c].is_zero() {
                let f = aug[r][c].clone();
                let pr = aug[c].clone();
                for (v, w) in aug[r].iter_mut().zip(pr) {
                    *v -= &f * w;
                }
            }
        }
    }
    aug.into_iter().map(|r| r[phi].clone()).collect()
}

#[test]
fn cyclotomic_polynomials() {
    assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
    assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
    assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    assert_eq!(cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
    assert_eq!(cyclotomic_polynomial(169).len(), 157);
}

#[test]
fn arithmetic_examples() {
    let z5 = CycNum::zeta(5);
    assert!(z5.mul(&z5.pow(4)).is_one());
    assert_eq!(z5.mul(&CycNum::zeta_pow(5, 4)), CycNum::one());
    assert_eq!(z5.add(&CycNum::zero()), z5);

    let xi = CycNum::zeta(7).add(&CycNum::zeta_pow(7, 6));
    let inv = xi.inv().unwrap();
    // z + z^6 = z - (1 + z + ... + z^5)
    let oracle = inverse_in_q_zeta7(&[-1, 0, -1, -1, -1, -1]);
    assert_eq!(inv.coeffs(), oracle);
    assert_eq!(inv, from_ints(7, &[-1, 0, 0, -1, -1, 0]));
    assert!(inv.mul(&xi).is_one());
    assert_eq!(CycNum::one().div(&CycNum::zero()), Err(cyclo::CycloError::DivisionByZero));
}

#[test]
fn mixed_conductors_lift_to_lcm() {
    let a = CycNum::zeta(3).add(&CycNum::zeta(4));
    assert_eq!(a.conductor(), 12);
    assert_eq!(CycNum::zeta(3), CycNum::zeta_pow(12, 4));
    // zeta_4 = i and i^2 = -1
    assert_eq!(CycNum::zeta(4).mul(&CycNum::zeta(4)), CycNum::from_int(-1));
    // zeta_7 + zeta_7^-1 stays in the real subfield
    let xi = CycNum::zeta_pow(14, 2).add(&CycNum::zeta_pow(14, 12));
    assert_eq!(xi.minimal_conductor(), 7);
    assert_eq!(xi.reduce_conductor(), CycNum::zeta(7).add(&CycNum::zeta_pow(7, 6)));
}

#[test]
fn galois_examples() {
    let s2 = GaloisChar::new(5, 2).unwrap();
    assert_eq!(s2.apply(&CycNum::zeta(5)).unwrap(), CycNum::zeta_pow(5, 2));
    let id = GaloisChar::identity(5);
    let a = from_ints(5, &[3, -1, 0, 2]);
    assert_eq!(id.apply(&a).unwrap(), a);
    let s3 = GaloisChar::new(7, 3).unwrap();
    let s5 = GaloisChar::new(7, 5).unwrap();
    let z7 = CycNum::zeta(7);
    assert_eq!(s3.apply(&s5.apply(&z7).unwrap()).unwrap(), z7);
    assert_eq!(s3.compose(&s5), GaloisChar::identity(7));
    assert_eq!(s3.inverse(), s5);
    assert!(GaloisChar::new(12, 3).is_err());
    assert_eq!(GaloisChar::all(12).iter().map(|s| s.d).collect::<Vec<_>>(), vec![1, 5, 7, 11]);
}

#[test]
fn trace_examples() {
    assert_eq!(trace_to_q(&CycNum::zeta(5)), q(-1, 1));
    assert_eq!(trace_to_q(&CycNum::one().lift(5)), q(4, 1));
    assert_eq!(trace_to_q(&CycNum::zeta(12)), q(0, 1));
    assert_eq!(trace_to_q(&CycNum::zeta_pow(12, 6)), q(-4, 1));
    assert_eq!(trace_reconstruct(&[q(2, 1), q(-1, 1)], 3).unwrap(), CycNum::one());
    assert_eq!(trace_reconstruct(&[q(5, 1)], 1).unwrap(), CycNum::from_int(5));
    assert!(trace_reconstruct(&[q(5, 1)], 3).is_err());
}

#[test]
fn embedding_examples() {
    for p in [32u32, 64, 128, 256] {
        let one = embed_complex(&CycNum::one(), p);
        assert!(one.contains_point(&q(1, 1), &q(0, 1)));
        assert!(one.rad().log2() <= -(p as f64) + 2.0);
        let i = embed_complex(&CycNum::zeta(4), p);
        assert!(i.contains_point(&q(0, 1), &q(1, 1)));
    }
    let xi = CycNum::zeta(7).add(&CycNum::zeta_pow(7, 6));
    let b = embed_complex(&xi, 64);
    let cos = CBall::root_of_unity(1, 7, 200);
    let two_cos = cos.re.mul_int(&BigInt::from(2));
    assert!(b.re.overlaps(&two_cos));
    assert!(b.im.contains_zero());
    assert!((b.re.to_f64() - 1.246_979_603_717_467).abs() < 1e-15);
    // 2cos(2pi/7) is a root of x^3 + x^2 - 2x - 1
    let x = b.re.clone();
    let v = x.pow(3).add(&x.sqr()).sub(&x.mul_int(&2.into())).sub(&ball::Ball::one(64));
    assert!(v.contains_zero());
    assert!(embed_complex(&xi, 128).rad() < b.rad());
}

#[test]
fn serialization_roundtrip() {
    let a = CycNum::from_poly(5, &[q(1, 2), q(-3, 1), q(0, 1), q(7, 5)]);
    let s = serde_json::to_string(&a).unwrap();
    assert_eq!(s, r#"{"conductor":5,"coeffs":["1/2","-3","0","7/5"]}"#);
    let b: CycNum = serde_json::from_str(&s).unwrap();
    assert_eq!(a, b);
    assert!(serde_json::from_str::<CycNum>(r#"{"conductor":5,"coeffs":["1"]}"#).is_err());
}

#[test]
fn matrix_solve_by_restriction() {
    let z = CycNum::zeta(5);
    let a = CycMatrix::from_rows(vec![
        vec![CycNum::one(), z.clone(), CycNum::zero()],
        vec![z.pow(2), CycNum::from_int(3), z.add(&CycNum::one())],
    ]);
    let x = CycMatrix::from_rows(vec![vec![z.pow(3), CycNum::from_rational(&q(1, 2))], vec![CycNum::zero(), z.clone()]]);
    let b = x.mul(&a);
    assert_eq!(CycMatrix::solve_left(&a, &b).unwrap(), x);
    assert_eq!(a.rank(), 2);
    let bad = CycMatrix::from_rows(vec![vec![CycNum::zero(), CycNum::zero(), CycNum::one()]]);
    let a1 = CycMatrix::from_rows(vec![a.row(0).to_vec()]);
    assert!(CycMatrix::solve_left(&a1, &bad).is_err());

    let s = serde_json::to_string(&a).unwrap();
    assert_eq!(serde_json::from_str::<CycMatrix>(&s).unwrap(), a);
    assert!(CycMatrix::identity(3, 7).mul(&CycMatrix::identity(3, 7)).is_identity());
}

fn conductor() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![1u64, 3, 4, 5, 7, 8, 9, 12, 13, 15])
}

fn element(n: u64) -> impl Strategy<Value = CycNum> {
    let phi = cyclo::cyclotomic_polynomial(n).len() - 1;
    prop::collection::vec((-20i64..20, 1i64..6), phi).prop_map(move |c| {
        CycNum::from_poly(n, &c.iter().map(|&(a, b)| q(a, b)).collect::<Vec<_>>())
    })
}

fn triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    conductor().prop_flat_map(|n| (element(n), element(n), element(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trace_pairing_roundtrip(a in conductor().prop_flat_map(element)) {
        let n = a.conductor();
        let phi = a.phi();
        let traces: Vec<_> = (0..phi).map(|b| trace_to_q(&CycNum::zeta_pow(n, b as i64).mul(&a))).collect();
        prop_assert_eq!(trace_reconstruct(&traces, n).unwrap(), a);
    }

    #[test]
    fn galois_is_a_ring_homomorphism((a, b, c) in triple(), k in 0u64..40) {
        let n = a.conductor();
        let units: Vec<_> = GaloisChar::all(n);
        let s = units[k as usize % units.len()];
        let lhs = s.apply(&a.mul(&b).add(&c)).unwrap();
        let rhs = s.apply(&a).unwrap().mul(&s.apply(&b).unwrap()).add(&s.apply(&c).unwrap());
        prop_assert_eq!(lhs, rhs);
        if !b.is_zero() {
            prop_assert_eq!(s.apply(&a.div(&b).unwrap()).unwrap(), s.apply(&a).unwrap().div(&s.apply(&b).unwrap()).unwrap());
        }
    }

    #[test]
    fn trace_is_sum_of_conjugates(a in conductor().prop_flat_map(element)) {
        let n = a.conductor();
        let sum = GaloisChar::all(n).iter().fold(CycNum::zero(), |acc, s| acc.add(&s.apply(&a).unwrap()));
        prop_assert_eq!(sum.to_rational(), Some(trace_to_q(&a)));
        prop_assert!(sum.lift(n).coeffs()[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn field_axioms((a, b, c) in triple()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), CycNum::zero());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn embedding_respects_products((a, b, _c) in triple(), p in prop::sample::select(vec![40u32, 80, 160])) {
        let ea = embed_complex(&a, p);
        let eb = embed_complex(&b, p);
        let eab = embed_complex(&a.mul(&b), p);
        prop_assert!(ea.mul(&eb).overlaps(&eab));
        prop_assert!(ea.add(&eb).overlaps(&embed_complex(&a.add(&b), p)));
        // the exact product lies in both balls: a tighter embedding sits inside the product ball
        let fine = embed_complex(&a.mul(&b), p + 100);
        prop_assert!(ea.mul(&eb).contains(&fine));
        prop_assert!(eab.contains(&fine));
    }
}
