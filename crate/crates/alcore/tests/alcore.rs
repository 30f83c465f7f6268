use std::path::PathBuf;
use std::sync::Arc;

use alcore::*;
use ball::CBall;
use cyclo::{CycMatrix, CycNum};
use newforms::{FixtureStore, UnitGroup};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use serde_json::Value;
use zlinalg::modp::left_kernel_mod_p;
use zlinalg::numth::{factor, gcd_u64};
use zlinalg::rational::{inverse, solve_left};
use zlinalg::{hnf, snf, IntMatrix};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/newforms")
}

fn store() -> FixtureStore {
    FixtureStore::new(fixture_dir())
}

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

fn spaces() -> Vec<(u64, u32, u64)> {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(fixture_dir().join("spaces.json")).unwrap()).unwrap();
    v["spaces"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| (s["level"].as_u64().unwrap(), s["weight"].as_u64().unwrap() as u32, s["h_modulus"].as_u64().unwrap()))
        .collect()
}

/// Saturation by the loop of the textbook proof: while the last invariant
/// factor is not 1, pick `p` dividing it and a combination of the rows that
/// vanishes mod `p`, divide it by `p`, and swap it in.
fn saturate_by_snf_loop(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    loop {
        let s = snf(&h);
        let last = s.diag.last().unwrap().clone();
        if last.is_one() {
            return hnf(&h).h;
        }
        let p = factor(&last)[0].0.clone();
        let pu: u64 = p.clone().try_into().unwrap();
        let ker = left_kernel_mod_p(&h, pu).unwrap();
        let c = &ker[0];
        let i = c.iter().position(|&x| x != 0).unwrap();
        let row: Vec<BigInt> = (0..h.cols())
            .map(|j| (0..h.rows()).fold(BigInt::zero(), |acc, r| acc + BigInt::from(c[r]) * &h[(r, j)]))
            .map(|x| {
                assert!((&x % &p).is_zero());
                x / &p
            })
            .collect();
        h.row_mut(i).clone_from_slice(&row);
    }
}

#[test]
fn denominator_bound_examples() {
    assert_eq!(denominator_bounds(2, 49), (int(7), int(1)));
    assert_eq!(denominator_bounds(5, 1), (int(1), int(1)));
    assert_eq!(denominator_bounds(3, 12), (int(72), int(24)));
    assert_eq!(denominator_bounds(2, 169), (int(13), int(1)));
}

#[test]
fn saturation_examples() {
    let f = IntMatrix::from_i64(&[&[0, 1, 0, 0, 2, 3], &[0, 0, 1, 5, 1, 0]]);
    let s = saturate(&f).unwrap();
    assert_eq!(s.h, f);
    assert_eq!(s.pivots, vec![1, 2]);
    assert!(s.alpha.is_one());
    let doubled = IntMatrix::from_i64(&[&[0, 2, 0, 0, 4, 6]]);
    assert_eq!(saturate(&doubled).unwrap().h, IntMatrix::from_i64(&[&[0, 1, 0, 0, 2, 3]]));
    let dependent = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]);
    assert!(matches!(saturate(&dependent), Err(AlError::RankDeficient { rank: 1, expected: 2 })));
}

#[test]
fn level_49_basis() {
    let basis = ZBasis::build(&Space::gamma0_gamma1(49, 2, 7), &store()).unwrap();
    assert_eq!(basis.dim(), 3);
    // f1 = q - 3q^8 + ..., f2 = q^2 - 3q^9 - q^16 + ..., f3 = q^4 - 4q^11 + 3q^18 + ...
    let lead = [(1, 8, -3), (2, 9, -3), (4, 11, -4)];
    for (i, &(p, n, c)) in lead.iter().enumerate() {
        assert_eq!(basis.pivots[i], p);
        assert_eq!(basis.a[(i, p)], int(1));
        assert_eq!(basis.a[(i, n)], int(c));
    }
    assert_eq!(basis.a[(1, 16)], int(-1));
    assert_eq!(basis.a[(2, 18)], int(3));
    assert!(basis.alpha.is_one());
    let blocks = &basis.blocks;
    let total: usize = blocks.iter().map(|b| trace_span(b, 30).unwrap().len()).sum();
    assert_eq!(total, 3);
    for b in blocks.iter().filter(|b| b.degree() == 1) {
        let t = trace_span(b, 30).unwrap();
        assert_eq!(t[0].coeff(1).unwrap(), &CycNum::one());
    }
}

#[test]
fn saturation_matches_the_snf_loop_on_traces() {
    for (n, k, m) in [(49, 2, 7), (21, 2, 21), (25, 3, 5), (81, 2, 9)] {
        let basis = ZBasis::build(&Space::gamma0_gamma1(n, k, m), &store()).unwrap();
        assert_eq!(saturate_by_snf_loop(&basis.traces), basis.a, "N = {n}");
    }
}

#[test]
fn diamond_examples() {
    let full = UnitGroup::generated(49, &[3]);
    let basis = ZBasis::build(&Space::new(49, 2, full), &store()).unwrap();
    let rep = diamond_matrices(&basis).unwrap();
    assert_eq!(rep.q, 1);
    assert!(rep.mats.values().all(|m| m.is_identity()));

    let basis = ZBasis::build(&Space::gamma0_gamma1(49, 2, 7), &store()).unwrap();
    let rep = diamond_matrices(&basis).unwrap();
    assert_eq!(rep.q, 7);
    assert!(!rep.get(3).is_identity());
    for d in 1..7i64 {
        assert!(rep.get(d).pow(6).is_identity());
        let inv = (1..7).find(|e| d * e % 7 == 1).unwrap();
        assert!(rep.get(d).mul(rep.get(inv)).is_identity());
    }
    assert_eq!(rep.get(-1), rep.get(6));
    let gens = rep.generators();
    let h = UnitGroup::generated(7, &gens);
    assert_eq!(h.len(), 6);
}

#[test]
fn diamonds_agree_with_sturm_solve() {
    // f|<d> from the trace expansions, then solved against A on all Sturm columns
    for (n, k, m) in [(49, 2, 7), (21, 2, 21), (13, 2, 13), (25, 3, 5)] {
        let basis = ZBasis::build(&Space::gamma0_gamma1(n, k, m), &store()).unwrap();
        let a = basis.a.to_rational();
        let t = basis.traces.to_rational();
        for d in (2..n).filter(|&d| gcd_u64(d, n) == 1).take(4) {
            let image = basis.r.mul(&trace_diamond(&basis, d).unwrap()).mul(&t);
            let solved = solve_left(&a, &image).unwrap();
            assert_eq!(solved, diamond_matrix(&basis, d).unwrap().to_rational());
        }
    }
}

#[test]
fn pivot_product_witnesses() {
    let basis = ZBasis::build(&Space::gamma0_gamma1(81, 2, 9), &store()).unwrap();
    let ap = basis.pivot_matrix();
    let inv = inverse(&ap.to_rational()).unwrap();
    let scaled = inv.map(|x| x * BigRational::from_integer(basis.alpha.clone()));
    assert!(scaled.is_integral());
    let v: Vec<BigRational> = (0..basis.dim()).map(|i| BigRational::from_integer(int(i as i64 * 3 - 7))).collect();
    let at_pivots = ap.to_rational().left_apply(&v);
    assert_eq!(basis.coordinates(&at_pivots).unwrap(), v);
}

fn unimodular(g: usize, seed: &[i64]) -> IntMatrix {
    let mut u = IntMatrix::identity(g);
    for (t, &s) in seed.iter().enumerate() {
        let (i, j) = (t % g, (t * 7 + 1) % g);
        if i != j {
            for c in 0..g {
                let add = &u[(j, c)] * int(s);
                u[(i, c)] += add;
            }
        }
    }
    u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn saturation_is_basis_independent(seed in prop::collection::vec(-3i64..4, 0..12), scale in prop::collection::vec(1i64..5, 3)) {
        let basis = ZBasis::build(&Space::gamma0_gamma1(49, 2, 7), &store()).unwrap();
        let g = basis.dim();
        let other = unimodular(g, &seed).mul(&basis.a);
        let s = saturate(&other).unwrap();
        prop_assert_eq!(&s.h, &basis.a);
        prop_assert_eq!(&saturate(&s.h).unwrap().h, &s.h);
        // alpha divides the pivot minor of any Z-basis, and of any sublattice
        let minor = zlinalg::hnf::det(&other.select_cols(&basis.pivots));
        prop_assert_eq!(minor.abs(), basis.alpha.clone());
        let d = IntMatrix::from_fn(g, g, |i, j| if i == j { int(scale[i]) } else { int(0) });
        let sub = d.mul(&other);
        prop_assert_eq!(saturate(&sub).unwrap().h, basis.a.clone());
        prop_assert_eq!(saturate_by_snf_loop(&sub), basis.a.clone());
    }
}

fn w_of(n: u64, k: u32, m: u64) -> (ALMatrix, VerifyReport) {
    compute_al_matrix(&Space::gamma0_gamma1(n, k, m), &store(), PrecisionPolicy::default()).unwrap()
}

#[test]
fn every_listed_space_verifies() {
    for (n, k, m) in spaces().into_iter().filter(|s| s.0 != 169) {
        let (al, report) = w_of(n, k, m);
        assert!(report.passed(), "N = {n}, k = {k}: {:?}", report.failures());
        assert_eq!(al.w.rows(), al.basis.dim());
        assert!(report.checks.len() >= 6);
    }
}

#[test]
fn rational_cases() {
    // 11a: lambda = -1, so f|W = -11 f
    let (al, _) = w_of(11, 2, 1);
    assert_eq!(al.conductor(), 1);
    assert_eq!(al.w, CycMatrix::from_int(&IntMatrix::from_i64(&[&[-11]]), 1));
    assert_eq!(al.betas.len(), 1);
    assert_eq!(al.betas[0], al.w.to_rational().unwrap());
}

#[test]
fn numeric_w_refines() {
    let basis = Arc::new(ZBasis::build(&Space::gamma0_gamma1(49, 2, 7), &store()).unwrap());
    let (al, _) = w_of(49, 2, 7);
    let exact = al.w.embed(300);
    let mut last = f64::INFINITY;
    for prec in [64, 128, 256] {
        let nums = block_numerics(&basis, prec).unwrap();
        let w = numeric_w(&basis, &nums, prec).unwrap();
        let sq = ball_mul(&w, &w, prec + 64);
        let worst = w.iter().flatten().map(|x| x.rad().log2()).fold(f64::NEG_INFINITY, f64::max);
        assert!(worst < last - 32.0);
        last = worst;
        for i in 0..3 {
            for j in 0..3 {
                assert!(w[i][j].overlaps(&exact[i][j]));
                let target = if i == j { CBall::from_int(2401, prec) } else { CBall::zero(prec) };
                assert!(sq[i][j].overlaps(&target));
            }
        }
    }
}

#[test]
fn reconstruction_roundtrip() {
    for (n, k, m) in [(49, 2, 7), (13, 2, 13), (16, 4, 4)] {
        let (al, _) = w_of(n, k, m);
        let numw = al.w.embed(200);
        let again = reconstruct_w(&numw, &al.diamonds, &al.basis, 200).unwrap();
        assert_eq!(again.w, al.w);
        let coarse: Vec<Vec<CBall>> = numw.iter().map(|r| r.iter().map(|x| x.clone().add_error(ball::Mag::pow2(3))).collect()).collect();
        assert!(matches!(reconstruct_w(&coarse, &al.diamonds, &al.basis, 200), Err(AlError::Precision { .. })));
    }
}

#[test]
fn injected_faults_are_caught() {
    let (al, report) = w_of(49, 2, 7);
    assert!(report.passed());
    let mut bad = al.clone();
    let x = bad.w.get(0, 0).add(&CycNum::one());
    bad.w.set(0, 0, x);
    let r = verify_w(&bad);
    assert!(r.failures().iter().any(|c| c.name == "w_squared"));
    // conjugating all of W (or one row) is another solution of the Galois
    // relation; twisting one column is not
    assert!(verify_w(&ALMatrix { w: al.w.galois(3), ..al.clone() }).failures().iter().all(|c| c.name == "beta_traces"));
    let mut twisted = al.clone();
    for i in 0..3 {
        twisted.w.set(i, 0, al.w.get(i, 0).galois(3));
    }
    let r = verify_w(&twisted);
    assert!(r.failures().iter().any(|c| c.name == "galois_twist"));
}

#[test]
fn exact_pseudo_eigenvalues() {
    let prec = 128;
    for (n, k, m) in [(49, 2, 7), (13, 2, 13), (21, 2, 21), (25, 3, 5), (7, 3, 7), (16, 3, 4)] {
        let (al, _) = w_of(n, k, m);
        let labels: Vec<String> = al.basis.blocks.iter().filter(|b| b.m == n).map(|b| b.f.label.clone()).collect();
        for label in labels {
            let c = exact_pseudo_eigenvalue(&al, &label, prec).unwrap();
            let blk = al.basis.blocks.iter().find(|b| b.f.label == label).unwrap();
            let orbit = newforms::EmbeddedOrbit::new(blk.f.clone(), prec).unwrap();
            for i in 0..orbit.degree() {
                let numeric = newforms::pseudo_eigenvalue(&orbit.embedding(i, blk.f.n_max), prec).unwrap();
                assert!(numeric.value.overlaps(&c.lambdas[i]), "{label} embedding {i}");
            }
            if let Some(v) = c.rational_field_value() {
                if blk.f.has_trivial_character() {
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    assert_eq!(v.mul(v), CycNum::from_int(BigInt::from(n).pow(k) * sign));
                }
                assert_eq!(v.mul(&v.conj()), CycNum::from_int(BigInt::from(n).pow(k)));
            }
        }
        assert!(matches!(exact_pseudo_eigenvalue(&al, "1.2.1.1", prec), Err(AlError::NotInSpace(_))));
    }
}

#[test]
fn json_output() {
    let (al, report) = w_of(49, 2, 7);
    let v = al.to_json(&report);
    assert_eq!(v["conductor"], 7);
    assert_eq!(v["genus"], 3);
    assert_eq!(v["w"]["conductor"], 7);
    assert_eq!(v["basis"][0][1], "1");
    assert!(v["verification"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}
