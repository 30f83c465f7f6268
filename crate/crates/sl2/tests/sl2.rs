use std::path::PathBuf;

use alcore::PrecisionPolicy;
use cyclo::CycNum;
use newforms::FixtureStore;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sl2::*;

fn store() -> FixtureStore {
    FixtureStore::new(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/newforms"))
}

fn table(n: u64, k: u32) -> ActionTable {
    build_action_table(n, k, &store(), PrecisionPolicy::default()).unwrap()
}

fn random_gl2(rng: &mut ChaCha8Rng, n: u64) -> GL2Element {
    loop {
        let e: [i64; 4] = std::array::from_fn(|_| rng.gen_range(0..n as i64));
        if let Ok(g) = GL2Element::new(n, e) {
            return g;
        }
    }
}

fn random_vec(rng: &mut ChaCha8Rng, g: usize, n: u64) -> Vec<CycNum> {
    let phi = zlinalg::numth::euler_phi(n) as usize;
    (0..g)
        .map(|_| {
            let c: Vec<BigInt> = (0..phi).map(|_| BigInt::from(rng.gen_range(-5i64..6))).collect();
            CycNum::from_int_coeffs(n, &c)
        })
        .collect()
}

fn neg_if(v: &[CycNum], odd: bool) -> Vec<CycNum> {
    v.iter().map(|x| if odd { x.neg() } else { x.clone() }).collect()
}

#[test]
fn word_examples() {
    assert_eq!(word_decompose(&[[0, -1], [1, 0]]).unwrap().to_string(), "S");
    assert_eq!(word_decompose(&[[1, 3], [0, 1]]).unwrap().to_string(), "TTT");
    assert_eq!(word_decompose(&[[1, -2], [0, 1]]).unwrap().to_string(), "tt");
    assert!(word_decompose(&[[1, 0], [0, 1]]).unwrap().is_empty());
    assert_eq!(word_decompose(&[[-1, 0], [0, -1]]).unwrap().to_string(), "SS");
    assert!(matches!(word_decompose(&[[2, 0], [0, 1]]), Err(Sl2Error::DetNotOne(2))));
}

#[test]
fn gl2_basics() {
    let n = 7;
    assert!(GL2Element::new(n, [7, 0, 0, 1]).is_err());
    let s = GL2Element::s(n);
    assert_eq!(s.pow(4), GL2Element::identity(n));
    assert_eq!(s.mul(&GL2Element::t(n)).pow(6), GL2Element::identity(n));
    assert_eq!(GL2Element::t(n).pow(7), GL2Element::identity(n));
    let a = GL2Element::new(n, [2, 3, 1, 4]).unwrap();
    assert!(a.mul(&a.inverse()).is_identity());
    let (gamma, d) = a.factor();
    assert_eq!(gamma.det(), 1);
    assert_eq!(gamma.mul(&GL2Element::diag(n, d as i64).unwrap()), a);
}

#[test]
fn lifts_and_words_reproduce_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [2u64, 5, 7, 12, 13, 49] {
        for _ in 0..200 {
            let (gamma, _) = random_gl2(&mut rng, n).factor();
            let m = lift_sl2(&gamma).unwrap();
            assert_eq!(m[0][0] * m[1][1] - m[0][1] * m[1][0], 1);
            let w = word_decompose(&m).unwrap();
            let p = w.matrix();
            let back = GL2Element::new(n, [p[0][0], p[0][1], p[1][0], p[1][1]]).unwrap();
            assert_eq!(back, gamma);
            assert_eq!(w.reduce_mod(n).matrix().map(|r| r.map(|x| x.rem_euclid(n as i64))), p.map(|r| r.map(|x| x.rem_euclid(n as i64))));
        }
    }
}

proptest! {
    #[test]
    fn words_multiply_back(a in -60i64..60, b in -60i64..60) {
        let (g, x, y) = zlinalg::numth::ext_gcd_i64(a, b);
        prop_assume!(g == 1);
        // a x + b y = 1
        let m = [[a, b], [-y, x]];
        let w = word_decompose(&m).unwrap();
        prop_assert_eq!(w.matrix(), m);
        // Euclid on the bottom row: at most two letters per halving step
        let bound = 4 + 4 * (64 - (x.unsigned_abs() + y.unsigned_abs() + 1).leading_zeros()) as usize;
        prop_assert!(w.letters().len() <= bound, "{} letters for {:?}", w.letters().len(), m);
    }
}

#[test]
fn level_7_table_matches_known_data() {
    let t = table(7, 2);
    assert_eq!(t.dim(), 3);
    let h = t.basis();
    let lead = [[(1, 1), (8, -3), (22, 4)], [(2, 1), (9, -3), (16, -1)], [(4, 1), (11, -4), (18, 3)]];
    for (f, terms) in h.iter().zip(lead) {
        assert_eq!((f.width(), f.level()), (7, 7));
        assert_eq!(f.valuation(), Some(terms[0].0));
        for (m, c) in terms {
            assert_eq!(f.coeff(m).unwrap(), &CycNum::from_int(c).lift(f.conductor()));
        }
    }
    let w49 = t.al.w.lift(7).scale(&CycNum::from_int(1).scale(&num_rational::BigRational::new(1.into(), 49.into())));
    assert_eq!(t.s_matrix, w49);
    assert!(t.report.passed());
    for name in ["s_squared", "st_cubed", "t_period", "t_stable"] {
        assert!(t.report.checks.iter().any(|c| c.name == name && c.passed), "{name}");
    }
}

/// The relations and the group law for one table.
fn representation_suite(n: u64, k: u32, pairs: usize) {
    let t = table(n, k);
    let g = t.dim();
    let odd = k % 2 == 1;
    let mut rng = ChaCha8Rng::seed_from_u64(1000 * n + k as u64);
    let sign = CycNum::from_int(t.sign());
    let s = &t.s_matrix;
    let minus = cyclo::CycMatrix::identity(g, n).scale(&sign);
    assert_eq!(s.mul(s), minus, "S^2 for N={n} k={k}");
    let st = s.mul(&t.t_matrix(1));
    assert_eq!(st.mul(&st).mul(&st), minus, "(ST)^3 for N={n} k={k}");
    assert!(t.t_matrix(n as i64).is_identity());
    let v = random_vec(&mut rng, g, n);
    assert_eq!(t.act(&v, &GL2Element::identity(n)).unwrap(), v);
    assert_eq!(t.act(&v, &GL2Element::scalar(n, -1).unwrap()).unwrap(), neg_if(&v, odd));
    assert_eq!(t.act(&v, &GL2Element::t(n).pow(n)).unwrap(), v);
    for _ in 0..pairs {
        let a = random_gl2(&mut rng, n);
        let b = random_gl2(&mut rng, n);
        let v = random_vec(&mut rng, g, n);
        let lhs = t.act(&t.act(&v, &a).unwrap(), &b).unwrap();
        let rhs = t.act(&v, &a.mul(&b)).unwrap();
        assert_eq!(lhs, rhs, "group law for N={n} k={k}: {a:?} {b:?}");
    }
}

#[test]
fn representation_n7_k2() {
    representation_suite(7, 2, 100);
}

#[test]
fn representation_small_levels() {
    for (n, k) in [(3, 6), (4, 3), (4, 4), (5, 3), (6, 2), (8, 2), (9, 2)] {
        representation_suite(n, k, 100);
    }
}

#[test]
fn diagonal_elements_act_on_coefficients() {
    let t = table(7, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let len = 40;
    for d in 1..7 {
        let v = random_vec(&mut rng, t.dim(), 7);
        let moved = t.act(&v, &GL2Element::diag(7, d).unwrap()).unwrap();
        let before = t.expansion(&v, len);
        let after = t.expansion(&moved, len);
        for m in 0..len {
            assert_eq!(after.coeff(m).unwrap(), &before.coeff(m).unwrap().galois(d));
        }
    }
}

#[test]
fn principal_congruence_elements_act_trivially() {
    let t = table(7, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let up = [[1, 7], [0, 1]];
    let down = [[1, 0], [7, 1]];
    for _ in 0..20 {
        // a random product of generators of Gamma(7), decomposed without reduction
        let mut m = [[1i64, 0], [0, 1]];
        for _ in 0..4 {
            let x = if rng.gen_bool(0.5) { up } else { down };
            m = [
                [m[0][0] * x[0][0] + m[0][1] * x[1][0], m[0][0] * x[0][1] + m[0][1] * x[1][1]],
                [m[1][0] * x[0][0] + m[1][1] * x[1][0], m[1][0] * x[0][1] + m[1][1] * x[1][1]],
            ];
        }
        let w = word_decompose(&m).unwrap();
        let v = random_vec(&mut rng, 3, 7);
        assert_eq!(t.apply_word(&v, &w), v, "{m:?}");
    }
}

#[test]
fn modulus_and_dimension_errors() {
    let t = table(7, 2);
    let v = vec![CycNum::one(); 3];
    assert!(matches!(t.act(&v, &GL2Element::identity(5)), Err(Sl2Error::ModulusMismatch(5, 7))));
    assert!(matches!(t.act(&v[..2], &GL2Element::identity(7)), Err(Sl2Error::Dimension { got: 2, expected: 3 })));
    assert!(matches!(build_action_table(1, 2, &store(), PrecisionPolicy::default()), Err(Sl2Error::LevelTooSmall(1))));
}

#[test]
fn representation_n13_k2() {
    representation_suite(13, 2, 100);
}
