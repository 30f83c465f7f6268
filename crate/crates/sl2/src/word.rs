use std::fmt;

use serde::Serialize;

use crate::Sl2Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Letter {
    S,
    /// `T^e`, `e != 0`.
    T(i64),
}

/// A word in `S` and powers of `T`, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Word(pub Vec<Letter>);

type M2 = [[i64; 2]; 2];

fn mul2(x: &M2, y: &M2) -> M2 {
    let mut out = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

impl Letter {
    pub fn matrix(&self) -> M2 {
        match *self {
            Letter::S => [[0, -1], [1, 0]],
            Letter::T(e) => [[1, e], [0, 1]],
        }
    }
}

impl Word {
    fn push(&mut self, l: Letter) {
        match (self.0.last_mut(), l) {
            (Some(Letter::T(e)), Letter::T(f)) => {
                *e += f;
                if *e == 0 {
                    self.0.pop();
                }
            }
            (_, Letter::T(0)) => {}
            _ => self.0.push(l),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Number of `S`, `T` and `T^-1` symbols.
    pub fn len(&self) -> usize {
        self.0.iter().map(|l| if let Letter::T(e) = l { e.unsigned_abs() as usize } else { 1 }).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn matrix(&self) -> M2 {
        self.0.iter().fold([[1, 0], [0, 1]], |acc, l| mul2(&acc, &l.matrix()))
    }

    /// Replaces every `T` exponent by its residue modulo `n`.
    pub fn reduce_mod(&self, n: u64) -> Word {
        let mut w = Word::default();
        for l in &self.0 {
            match *l {
                Letter::T(e) => w.push(Letter::T(e.rem_euclid(n as i64))),
                Letter::S => w.push(Letter::S),
            }
        }
        w
    }
}

/// `S`, `T` and `t` for `T^-1`, e.g. `T^3 S T^-1` is `TTTSt`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            match *l {
                Letter::S => f.write_str("S")?,
                Letter::T(e) => f.write_str(&(if e > 0 { "T" } else { "t" }).repeat(e.unsigned_abs() as usize))?,
            }
        }
        Ok(())
    }
}

/// A word whose product is exactly `m`, for `m` in `SL2(Z)`.
///
/// Right multiplication by `T^k` and `S` runs the nearest-integer Euclidean
/// algorithm on the bottom row until it is `(0, ±1)`.
pub fn word_decompose(m: &M2) -> Result<Word, Sl2Error> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det != 1 {
        return Err(Sl2Error::DetNotOne(det));
    }
    let mut cur = *m;
    let mut applied = Vec::new();
    while cur[1][0] != 0 {
        let (c, d) = (cur[1][0], cur[1][1]);
        // k with |d + k c| minimal; ties reduce toward the smaller remainder
        let k = -(2 * d + c.signum() * c).div_euclid(2 * c.abs()) * c.signum();
        if k != 0 {
            applied.push(Letter::T(k));
            cur = mul2(&cur, &Letter::T(k).matrix());
        }
        applied.push(Letter::S);
        cur = mul2(&cur, &Letter::S.matrix());
    }
    // cur = e (1 b'; 0 1) with e = ±1
    let e = cur[0][0];
    let mut negate = e < 0;
    let mut w = Word::default();
    w.push(Letter::T(e * cur[0][1]));
    for l in applied.iter().rev() {
        match *l {
            Letter::T(k) => w.push(Letter::T(-k)),
            // S^-1 = -S, and -I is central
            Letter::S => {
                w.push(Letter::S);
                negate = !negate;
            }
        }
    }
    if negate {
        let mut full = Word(vec![Letter::S, Letter::S]);
        for l in w.0 {
            full.push(l);
        }
        w = full;
    }
    debug_assert_eq!(w.matrix(), *m);
    Ok(w)
}
