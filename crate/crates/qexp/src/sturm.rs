use serde::Serialize;
use zlinalg::numth::factor_u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SturmBound {
    pub k: u32,
    pub n: u64,
    /// `[SL2(Z) : Gamma1(N)]`.
    pub index: u64,
    pub s: u64,
}

/// `[SL2(Z) : Gamma1(N)] = N^2 prod_{p | N} (1 - 1/p^2)`.
pub fn gamma1_index(n: u64) -> u64 {
    factor_u64(n).iter().fold(n * n, |acc, &(p, _)| acc / (p * p) * (p * p - 1))
}

/// Largest `s` with `s <= k/12 * [SL2(Z) : Gamma1(N)]`.
pub fn sturm_bound(k: u32, n: u64) -> SturmBound {
    assert!(k >= 1 && n >= 1, "weight and level must be positive");
    let index = gamma1_index(n);
    SturmBound { k, n, index, s: k as u64 * index / 12 }
}
