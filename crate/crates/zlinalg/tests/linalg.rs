use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zlinalg::hnf::{det, is_hnf};
use zlinalg::rational::{inverse, rank};
use zlinalg::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(rows)
}

fn random_int(rng: &mut ChaCha8Rng, r: usize, c: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_fn(r, c, |_, _| BigInt::from(rng.gen_range(-bound..=bound)))
}

/// Unimodular matrix built from random elementary operations.
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let f = BigInt::from(rng.gen_range(-3..=3));
        for t in 0..n {
            let v = &u[(j, t)] * &f;
            u[(i, t)] += v;
        }
    }
    u
}

// Reference rank over F_p by the textbook elimination on i64.
fn rank_mod_p_oracle(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let mut rank = 0;
    let cols = m.first().map_or(0, |r| r.len());
    for j in 0..cols {
        let Some(k) = (rank..m.len()).find(|&i| m[i][j] != 0) else { continue };
        m.swap(k, rank);
        let inv = (1..p).find(|x| x * m[rank][j] % p == 1).unwrap();
        for i in 0..m.len() {
            if i != rank && m[i][j] != 0 {
                let f = m[i][j] * inv % p;
                for t in 0..cols {
                    m[i][t] = (m[i][t] - f * m[rank][t]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

// gcd of all r x r minors, by cofactor expansion.
fn minors_gcd(a: &IntMatrix, r: usize) -> BigInt {
    fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
        if r == 0 {
            return vec![vec![]];
        }
        if n < r {
            return vec![];
        }
        let mut out = subsets(n - 1, r);
        for mut s in subsets(n - 1, r - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
        if m.is_empty() {
            return BigInt::one();
        }
        let mut acc = BigInt::zero();
        for j in 0..m.len() {
            let minor: Vec<Vec<BigInt>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(t, _)| t != j).map(|(_, x)| x.clone()).collect()).collect();
            let term = &m[0][j] * cofactor_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
    let mut g = BigInt::zero();
    for rs in subsets(a.rows(), r) {
        for cs in subsets(a.cols(), r) {
            let m: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| a[(i, j)].clone()).collect()).collect();
            g = g.gcd(&cofactor_det(&m));
        }
    }
    g
}

#[test]
fn hnf_examples() {
    let id = IntMatrix::identity(3);
    let h = hnf(&id);
    assert_eq!(h.h, id);
    assert_eq!(h.u, id);

    let a = int(&[&[2, 4], &[1, 1]]);
    let h = hnf(&a);
    assert_eq!(h.h, int(&[&[1, 1], &[0, 2]]));
    assert_eq!(h.u.mul(&a), h.h);
    assert_eq!(det(&h.u), BigInt::from(h.det_u));

    let already = int(&[&[2, 1, 5], &[0, 3, 4], &[0, 0, 0]]);
    assert_eq!(hnf(&already).h, already);
}

#[test]
fn hnf_rank_deficient_has_det_one() {
    let a = int(&[&[0, 2, 4], &[1, 0, 1], &[1, 2, 5]]);
    let h = hnf(&a);
    assert!(is_hnf(&h.h));
    assert_eq!(h.rank(), 2);
    assert_eq!(det(&h.u), BigInt::one());
    assert_eq!(h.u.mul(&a), h.h);
}

#[test]
fn pivot_product_examples() {
    assert_eq!(pivot_product(&IntMatrix::identity(4)).unwrap(), BigInt::one());
    assert_eq!(pivot_product(&int(&[&[1, 1], &[0, 2]])).unwrap(), BigInt::from(2));
    assert_eq!(pivot_product(&int(&[&[3, 0], &[0, 5]])).unwrap(), BigInt::from(15));
    assert!(matches!(pivot_product(&int(&[&[0, 0], &[0, 5]])), Err(LinalgError::Malformed(_))));
}

#[test]
fn snf_examples() {
    let s = snf(&int(&[&[4, 0], &[0, 6]]));
    assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(12)]);
    let s = snf(&IntMatrix::identity(3));
    assert_eq!(s.diag, vec![BigInt::one(); 3]);
    let s = snf(&IntMatrix::zeros(2, 3));
    assert!(s.diag.is_empty());
}

#[test]
fn rank_mod_p_examples() {
    assert_eq!(rank_mod_p(&IntMatrix::identity(3), 2).unwrap(), 3);
    assert_eq!(rank_mod_p(&int(&[&[2, 2], &[4, 4]]), 2).unwrap(), 0);
    assert_eq!(rank_mod_p(&int(&[&[1, 2], &[3, 4]]), 2).unwrap(), 1);
    assert_eq!(rank_mod_p(&int(&[&[1, 2], &[3, 4]]), 2).unwrap(), rank_mod_p_oracle(&[vec![1, 2], vec![3, 4]], 2));
    assert_eq!(rank_mod_p(&IntMatrix::identity(2), 9), Err(LinalgError::NotPrime(9)));
}

#[test]
fn solve_left_examples() {
    let a = int(&[&[1, 0, 0], &[0, 2, 0]]).to_rational();
    assert_eq!(solve_left(&a, &a).unwrap(), QMatrix::identity(2));
    let b = int(&[&[2, 2, 0]]).to_rational();
    assert_eq!(solve_left(&a, &b).unwrap(), int(&[&[2, 1]]).to_rational());
    let bad = int(&[&[0, 0, 1]]).to_rational();
    assert_eq!(solve_left(&a, &bad), Err(LinalgError::Inconsistent));
    let deficient = int(&[&[1, 2], &[2, 4]]).to_rational();
    assert!(matches!(solve_left(&deficient, &deficient), Err(LinalgError::RankDeficient { rank: 1, needed: 2 })));
}

#[test]
fn kernel_examples() {
    assert_eq!(kernel(&QMatrix::identity(3)).rows(), 0);
    let k = kernel(&int(&[&[1, 1]]).to_rational());
    assert_eq!(k, int(&[&[1, -1]]).to_rational());

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = random_int(&mut rng, 5, 8, 9);
    assert_eq!(rank_mod_p_oracle(&a.to_rows().iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect::<Vec<_>>(), 1_000_003), 5);
    let k = kernel(&a.to_rational());
    assert_eq!(k.rows(), 3);
    assert!(a.to_rational().mul(&k.transpose()).is_zero());
    assert_eq!(rank(&k), 3);
}

#[test]
fn kernel_is_echelonized() {
    let a = int(&[&[1, 2, 3, 4], &[2, 4, 6, 9]]).to_rational();
    let k = kernel(&a);
    // Leading entry of each row is 1 and pivots increase.
    let mut last = None;
    for i in 0..k.rows() {
        let lead = (0..k.cols()).find(|&j| !k[(i, j)].is_zero()).unwrap();
        assert!(k[(i, lead)].is_one());
        assert!(last.is_none_or(|l| lead > l));
        last = Some(lead);
    }
    // Spanned by (-2, 1, 0, 0) and (-3, 0, 1, 0); reduced by hand.
    let want = QMatrix::from_rows(vec![vec![q(1, 1), q(0, 1), q(-1, 3), q(0, 1)], vec![q(0, 1), q(1, 1), q(-2, 3), q(0, 1)]]);
    assert_eq!(k, want);
}

#[test]
fn rational_rref_and_inverse() {
    let a = QMatrix::from_rows(vec![vec![q(1, 2), q(1, 3)], vec![q(1, 4), q(1, 5)]]);
    let inv = inverse(&a).unwrap();
    assert_eq!(a.mul(&inv), QMatrix::identity(2));
    assert_eq!(zlinalg::rational::det(&a), q(1, 10) - q(1, 12));
    let e = rref(&a);
    assert_eq!(e.pivots, vec![0, 1]);
    assert_eq!(e.r, QMatrix::identity(2));
}

#[test]
fn multimodular_handles_huge_entries() {
    // Entries near 2^200 force several primes before reconstruction succeeds.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let big = BigInt::one() << 200usize;
    let a = IntMatrix::from_fn(4, 6, |_, _| &big / BigInt::from(rng.gen_range(1..1000i64)) + BigInt::from(rng.gen_range(-50..50i64)));
    let e = rref(&a.to_rational());
    assert_eq!(e.rank(), 4);
    let x = solve_left(&e.r, &a.to_rational()).unwrap();
    assert_eq!(x.mul(&e.r), a.to_rational());
}

#[test]
fn saturation_examples() {
    // The span of (2, 4) contains (1, 2).
    assert_eq!(saturate_rows(&int(&[&[2, 4]])), int(&[&[1, 2]]));
    // (1,1,0) and (1,-1,0) span an index-2 sublattice of span{e1, e2}.
    assert_eq!(saturate_rows(&int(&[&[1, 1, 0], &[1, -1, 0]])), int(&[&[1, 0, 0], &[0, 1, 0]]));
    // Rank deficient input with a p^2 index.
    let m = int(&[&[9, 0, 3], &[0, 9, 6], &[9, 9, 9]]);
    let s = saturate_rows(&m);
    assert!(is_hnf(&s));
    // x*(1,0,1/3) + y*(0,1,2/3) is integral iff 3 | x + 2y.
    assert_eq!(s, int(&[&[1, 1, 1], &[0, 3, 2]]));
}

fn check_saturated(m: &IntMatrix) {
    let s = saturate_rows(m);
    assert!(is_hnf(&s));
    let r = rank(&m.to_rational());
    assert_eq!(s.rows(), r);
    if r == 0 {
        return;
    }
    // Same span, M lies in the lattice, and the lattice is primitive.
    let x = solve_left(&s.to_rational(), &m.to_rational()).unwrap();
    assert!(x.is_integral());
    assert!(snf(&s).diag.iter().all(|b| b.is_one()));
}

#[test]
fn saturation_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let r = rng.gen_range(1..4);
        let c = rng.gen_range(r..6);
        let base = random_int(&mut rng, r, c, 5);
        let k = rng.gen_range(1..5);
        let mix = random_int(&mut rng, k, r, 6);
        check_saturated(&mix.mul(&base));
    }
}

#[test]
fn big_prime_in_denominator() {
    let p = BigInt::from(18446744073709551557u64) * BigInt::from(3);
    let m = IntMatrix::from_rows(vec![vec![p.clone(), p.clone() * 2, p.clone() + 1]]);
    let s = saturate_rows(&m);
    check_saturated(&m);
    assert_eq!(s.rows(), 1);
    assert!(s[(0, 0)].is_positive());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hnf_is_invariant_under_unimodular(seed in any::<u64>(), r in 1usize..5, c in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_int(&mut rng, r, c, 20);
        let u = random_unimodular(&mut rng, r);
        let h1 = hnf(&a);
        let h2 = hnf(&u.mul(&a));
        prop_assert!(is_hnf(&h1.h));
        prop_assert_eq!(&h1.u.mul(&a), &h1.h);
        prop_assert!(det(&h1.u).abs().is_one());
        prop_assert_eq!(&h1.h, &h2.h);
    }

    #[test]
    fn snf_matches_minor_gcds(seed in any::<u64>(), r in 1usize..4, c in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_int(&mut rng, r, c, 12);
        let s = snf(&a);
        let d = s.u.mul(&a).mul(&s.v);
        for i in 0..r {
            for j in 0..c {
                let want = if i == j && i < s.diag.len() { s.diag[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(&d[(i, j)], &want);
            }
        }
        prop_assert!(det(&s.u).abs().is_one());
        prop_assert!(det(&s.v).abs().is_one());
        let mut prod = BigInt::one();
        for (t, b) in s.diag.iter().enumerate() {
            prop_assert!(b.is_positive());
            if t > 0 {
                prop_assert!(b.is_multiple_of(&s.diag[t - 1]));
            }
            prod *= b;
            prop_assert_eq!(&prod, &minors_gcd(&a, t + 1));
        }
        prop_assert!(minors_gcd(&a, s.diag.len() + 1).is_zero() || s.diag.len() == r.min(c));
    }

    #[test]
    fn rank_mod_p_matches_oracle(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5, 7, 101])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_int(&mut rng, 4, 5, 6);
        let rows: Vec<Vec<i64>> = a.to_rows().iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect();
        prop_assert_eq!(rank_mod_p(&a, p).unwrap(), rank_mod_p_oracle(&rows, p as i64));
    }

    #[test]
    fn solve_left_recovers_x(seed in any::<u64>(), g in 1usize..4, extra in 0usize..3, h in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_int(&mut rng, g, g + extra, 9).to_rational();
        prop_assume!(rank(&a) == g);
        let x = QMatrix::from_fn(h, g, |_, _| q(rng.gen_range(-20..20), rng.gen_range(1..9)));
        prop_assert_eq!(solve_left(&a, &x.mul(&a)).unwrap(), x);
    }

    #[test]
    fn kernel_annihilates(seed in any::<u64>(), r in 1usize..5, c in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_int(&mut rng, r, c, 3).to_rational();
        let k = kernel(&a);
        prop_assert_eq!(k.rows(), c - rank(&a));
        prop_assert!(a.mul(&k.transpose()).is_zero());
        prop_assert_eq!(left_kernel(&a.transpose()), k);
    }
}

