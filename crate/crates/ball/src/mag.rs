use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

const BITS: u32 = 32;

/// A nonnegative dyadic `man * 2^exp` with a 32-bit mantissa. Every
/// operation names its rounding direction; radii are always rounded up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mag {
    man: u64,
    exp: i64,
}

fn bitlen(x: u128) -> u32 {
    128 - x.leading_zeros()
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    fn norm(man: u128, exp: i64, up: bool) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let b = bitlen(man);
        if b > BITS {
            let s = b - BITS;
            let mut m = man >> s;
            if up && (m << s) != man {
                m += 1;
                if bitlen(m) > BITS {
                    // carried into a new bit: m is exactly 2^BITS
                    return Mag { man: (m >> 1) as u64, exp: exp + s as i64 + 1 };
                }
            }
            Mag { man: m as u64, exp: exp + s as i64 }
        } else {
            let s = BITS - b;
            Mag { man: (man << s) as u64, exp: exp - s as i64 }
        }
    }

    pub fn from_u64(x: u64) -> Mag {
        Mag::norm(x as u128, 0, true)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Mag {
        Mag { man: 1 << (BITS - 1), exp: e - (BITS as i64 - 1) }
    }

    /// Upper bound for `|x| * 2^e`.
    pub fn from_bigint_up(x: &BigInt, e: i64) -> Mag {
        Self::from_bigint(x, e, true)
    }

    /// Lower bound for `|x| * 2^e`.
    pub fn from_bigint_down(x: &BigInt, e: i64) -> Mag {
        Self::from_bigint(x, e, false)
    }

    fn from_bigint(x: &BigInt, e: i64, up: bool) -> Mag {
        let bits = x.bits();
        if bits == 0 {
            return Mag::ZERO;
        }
        let a = x.abs();
        if bits <= 64 {
            return Mag::norm(a.to_u64().unwrap() as u128, e, up);
        }
        let s = bits - 64;
        let top = (&a >> s).to_u64().unwrap();
        let m = if up { top as u128 + 1 } else { top as u128 };
        Mag::norm(m, e + s as i64, up)
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    /// Smallest `t` with `self < 2^t` (the value's binary magnitude); `None`
    /// for zero.
    pub fn top(&self) -> Option<i64> {
        (self.man != 0).then(|| self.exp + BITS as i64)
    }

    pub fn mul_2exp(&self, e: i64) -> Mag {
        if self.man == 0 {
            *self
        } else {
            Mag { man: self.man, exp: self.exp + e }
        }
    }

    fn add(&self, o: &Mag, up: bool) -> Mag {
        if self.man == 0 {
            return *o;
        }
        if o.man == 0 {
            return *self;
        }
        let (hi, lo) = if self.exp >= o.exp { (self, o) } else { (o, self) };
        let d = hi.exp - lo.exp;
        if d > 64 {
            // lo is below one unit of hi's last place
            let m = if up { hi.man as u128 + 1 } else { hi.man as u128 };
            return Mag::norm(m, hi.exp, up);
        }
        Mag::norm(((hi.man as u128) << d) + lo.man as u128, lo.exp, up)
    }

    pub fn add_up(&self, o: &Mag) -> Mag {
        self.add(o, true)
    }

    pub fn add_down(&self, o: &Mag) -> Mag {
        self.add(o, false)
    }

    /// Lower bound for `max(self - o, 0)`.
    pub fn sub_down(&self, o: &Mag) -> Mag {
        if o.man == 0 {
            return *self;
        }
        if self <= o {
            return Mag::ZERO;
        }
        let d = self.exp - o.exp;
        if d > 64 {
            return Mag::norm(self.man as u128 - 1, self.exp, false);
        }
        if d >= 0 {
            Mag::norm(((self.man as u128) << d) - o.man as u128, o.exp, false)
        } else {
            // self > o with smaller exponent: shift o left instead
            Mag::norm(self.man as u128 - ((o.man as u128) << (-d)), self.exp, false)
        }
    }

    pub fn mul_up(&self, o: &Mag) -> Mag {
        Mag::norm(self.man as u128 * o.man as u128, self.exp + o.exp, true)
    }

    pub fn mul_down(&self, o: &Mag) -> Mag {
        Mag::norm(self.man as u128 * o.man as u128, self.exp + o.exp, false)
    }

    /// Upper bound for `self / o`; `o` must be nonzero.
    pub fn div_up(&self, o: &Mag) -> Mag {
        assert!(o.man != 0, "division by a zero magnitude");
        let n = (self.man as u128) << 64;
        let q = n.div_ceil(o.man as u128);
        Mag::norm(q, self.exp - o.exp - 64, true)
    }

    pub fn div_down(&self, o: &Mag) -> Mag {
        assert!(o.man != 0, "division by a zero magnitude");
        let n = (self.man as u128) << 64;
        Mag::norm(n / o.man as u128, self.exp - o.exp - 64, false)
    }

    fn sqrt(&self, up: bool) -> Mag {
        if self.man == 0 {
            return *self;
        }
        // Scale to a 62-bit mantissa with an even exponent.
        let mut m = (self.man as u128) << 30;
        let mut e = self.exp - 30;
        if e % 2 != 0 {
            m <<= 1;
            e -= 1;
        }
        let mut r = (m as f64).sqrt() as u128;
        while r * r > m {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= m {
            r += 1;
        }
        if up && r * r != m {
            r += 1;
        }
        Mag::norm(r, e / 2, up)
    }

    pub fn sqrt_up(&self) -> Mag {
        self.sqrt(true)
    }

    pub fn sqrt_down(&self) -> Mag {
        self.sqrt(false)
    }

    /// Approximate base-2 logarithm; `-inf` for zero.
    pub fn log2(&self) -> f64 {
        if self.man == 0 {
            f64::NEG_INFINITY
        } else {
            (self.man as f64).log2() + self.exp as f64
        }
    }

    /// Nearest `f64`, saturating to zero or infinity out of range.
    pub fn to_f64(&self) -> f64 {
        if self.man == 0 {
            return 0.0;
        }
        (self.man as f64) * 2f64.powi(self.exp.clamp(-2000, 2000) as i32)
    }

    /// `(man, exp)` with value `man * 2^exp`.
    pub fn parts(&self) -> (u64, i64) {
        (self.man, self.exp)
    }

    /// Exact value as `BigInt * 2^exp`.
    pub fn to_bigint_exp(&self) -> (BigInt, i64) {
        (BigInt::from(self.man), self.exp)
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self.man == 0, o.man == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        // Both normalized, so the exponent decides unless equal.
        self.exp.cmp(&o.exp).then(self.man.cmp(&o.man))
    }
}

impl Default for Mag {
    fn default() -> Self {
        Mag::ZERO
    }
}

impl Zero for Mag {
    fn zero() -> Self {
        Mag::ZERO
    }
    fn is_zero(&self) -> bool {
        self.man == 0
    }
}

impl std::ops::Add for Mag {
    type Output = Mag;
    fn add(self, o: Mag) -> Mag {
        self.add_up(&o)
    }
}
