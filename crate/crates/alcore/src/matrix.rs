use ball::CBall;
use zlinalg::QMatrix;

pub fn qmat_to_balls(m: &QMatrix, prec: u32) -> Vec<Vec<CBall>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| CBall::from_rational(&m[(i, j)], prec)).collect()).collect()
}

pub fn ball_mul(a: &[Vec<CBall>], b: &[Vec<CBall>], prec: u32) -> Vec<Vec<CBall>> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = CBall::zero(prec);
                    for (l, x) in row.iter().enumerate() {
                        if !x.contains_zero() || !x.rad().is_zero() {
                            acc = acc.add(&x.mul(&b[l][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}
