use std::path::PathBuf;

use alcore::*;
use cyclo::{CycMatrix, CycNum};
use newforms::FixtureStore;

fn store() -> FixtureStore {
    FixtureStore::new(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/newforms"))
}

/// `a xi^2 + b xi + c` with `xi = zeta_7 + zeta_7^-1`.
fn xi_poly(a: i64, b: i64, c: i64) -> CycNum {
    let xi = CycNum::zeta_pow(7, 1).add(&CycNum::zeta_pow(7, 6));
    xi.mul(&xi).scale_int(&a.into()).add(&xi.scale_int(&b.into())).add(&CycNum::from_int(c))
}

fn known_w() -> CycMatrix {
    let e = [
        [(-3, -2, 2), (2, -1, -6), (-1, -3, 3)],
        [(2, -1, -6), (1, 3, -3), (3, 2, -2)],
        [(-1, -3, 3), (3, 2, -2), (2, -1, -6)],
    ];
    CycMatrix::from_fn(3, 3, 7, |i, j| {
        let (a, b, c) = e[i][j];
        xi_poly(a, b, c).scale_int(&7.into())
    })
}

#[test]
fn level_49_matches_known_matrix() {
    let space = Space::gamma0_gamma1(49, 2, 7);
    let (al, report) = compute_al_matrix(&space, &store(), PrecisionPolicy::default()).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(al.conductor(), 7);
    assert_eq!(al.basis.pivots, vec![1, 2, 4]);
    assert_eq!(al.w, known_w());
}

