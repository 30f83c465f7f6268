use num_bigint::BigInt;
use zlinalg::numth::factor_u64;

/// `(B, C)` with `B = prod p^ceil(k/(p-1))` and `C = prod p^floor(k/(p-1))`
/// over the primes `p | N`.
pub fn denominator_bounds(k: u32, n: u64) -> (BigInt, BigInt) {
    let mut b = BigInt::from(1);
    let mut c = BigInt::from(1);
    for (p, _) in factor_u64(n) {
        let k = k as u64;
        let lo = k / (p - 1);
        let hi = k.div_ceil(p - 1);
        b *= BigInt::from(p).pow(hi as u32);
        c *= BigInt::from(p).pow(lo as u32);
    }
    (b, c)
}
