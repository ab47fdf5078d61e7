//! Dense linear algebra over the rational function field.

use crate::exact_arith::RatFn;

pub type Mat = Vec<Vec<RatFn>>;

pub fn zeros(n: usize, m: usize) -> Mat {
    vec![vec![RatFn::zero(); m]; n]
}

pub fn identity(n: usize) -> Mat {
    let mut a = zeros(n, n);
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = RatFn::one();
    }
    a
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = zeros(n, m);
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(aik * &b[k][j]);
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &Mat, v: &[RatFn]) -> Vec<RatFn> {
    a.iter()
        .map(|row| row.iter().zip(v).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn mat_sub(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn mat_scale(a: &Mat, k: &RatFn) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x * k).collect()).collect()
}

/// Row-reduces in place and returns the pivot columns.
fn rref(a: &mut Mat) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(p) = (pr..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(pr, p);
        let inv = a[pr][c].inv().expect("nonzero pivot");
        for x in a[pr].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != pr && !a[i][c].is_zero() {
                let k = a[i][c].clone();
                for j in 0..cols {
                    if !a[pr][j].is_zero() {
                        a[i][j] = &a[i][j] - &(&k * &a[pr][j]);
                    }
                }
            }
        }
        pivots.push(c);
        pr += 1;
    }
    pivots
}

pub fn rank(vectors: &[Vec<RatFn>]) -> usize {
    let mut a = vectors.to_vec();
    rref(&mut a).len()
}

/// Basis of `{x : a x = 0}`.
pub fn nullspace(a: &Mat, ncols: usize) -> Vec<Vec<RatFn>> {
    let mut r = a.clone();
    let pivots = rref(&mut r);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![RatFn::zero(); ncols];
        v[free] = RatFn::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&r[row][free];
        }
        out.push(v);
    }
    out
}

pub fn inverse(a: &Mat) -> Option<Mat> {
    let n = a.len();
    let mut aug: Mat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { RatFn::one() } else { RatFn::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det(a: &Mat) -> RatFn {
    let n = a.len();
    let mut m = a.clone();
    let mut d = RatFn::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return RatFn::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d = &d * &m[c][c];
        let inv = m[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let k = &m[i][c] * &inv;
                for j in c..n {
                    m[i][j] = &m[i][j] - &(&k * &m[c][j]);
                }
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFn {
        RatFn::parse(s).unwrap()
    }

    #[test]
    fn inverse_round_trip() {
        let a = vec![vec![rf("q"), rf("a")], vec![rf("1"), rf("b - 1")]];
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert_eq!(det(&a), rf("q*b - q - a"));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = vec![vec![rf("q"), rf("q^2")], vec![rf("1"), rf("q")]];
        let ns = nullspace(&a, 2);
        assert_eq!(ns.len(), 1);
        assert_eq!(mat_vec(&a, &ns[0]), vec![RatFn::zero(), RatFn::zero()]);
        assert!(inverse(&a).is_none());
    }
}
