use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Laurent polynomial in one variable `z` with integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * z^e`
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Image under `z -> z^k`.
    pub fn scale_exponents(&self, k: i64) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(e, c)| (e * k, c.clone())))
    }

    /// Image under `z -> z^{-1}`.
    pub fn bar(&self) -> Self {
        self.scale_exponents(-1)
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(e, c)| (e + k, c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dmax = d.max_exp().unwrap();
        let dmin = d.min_exp().unwrap();
        let lead = d.coeff(dmax);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rmax) = rem.max_exp() {
            if rmax - (dmax - dmin) < rem.min_exp().unwrap() {
                return None;
            }
            let (q, r) = rem.coeff(rmax).div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            let e = rmax - dmax;
            let t = Self::monomial(q, e);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Evaluation at an integer point with `z != 0`, as a rational number.
    pub fn eval_ratio(&self, num: &BigInt, den: &BigInt) -> num_rational::BigRational {
        let mut acc = num_rational::BigRational::zero();
        let base = num_rational::BigRational::new(num.clone(), den.clone());
        for (e, c) in &self.coeffs {
            let p = if *e >= 0 {
                num_traits::pow(base.clone(), *e as usize)
            } else {
                num_traits::pow(base.recip(), e.unsigned_abs() as usize)
            };
            acc += p * c;
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_laurent(f, self, "z")
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders in descending exponent order: `z^4 - z^2 - z^-2 + z^-4`.
pub(crate) fn fmt_laurent(f: &mut fmt::Formatter<'_>, p: &LaurentPoly, var: &str) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (k, (e, c)) in p.coeffs.iter().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        let mono = match *e {
            0 => String::new(),
            1 => var.to_string(),
            e => format!("{var}^{e}"),
        };
        if mono.is_empty() {
            write!(f, "{a}")?;
        } else if a.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{a}*{mono}")?;
        }
    }
    Ok(())
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(e, c)| (*e, -c.clone())))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::monomial(c, 0)
    }
}

/// Symmetric q-integer `[l]_z = (z^l - z^-l)/(z - z^-1)`.
pub fn q_int(l: i64) -> LaurentPoly {
    let sign: i64 = if l < 0 { -1 } else { 1 };
    let n = l.abs();
    LaurentPoly::from_terms((0..n).map(|k| (n - 1 - 2 * k, sign)))
}

/// Symmetric q-factorial `[n]_z!`.
pub fn q_factorial(n: u32) -> LaurentPoly {
    (1..=n as i64).fold(LaurentPoly::one(), |acc, k| &acc * &q_int(k))
}

/// Gaussian binomial `[s, k]_z` as a symmetric Laurent polynomial.
pub fn q_binom(s: u32, k: u32) -> Result<LaurentPoly, super::ArithError> {
    if k > s {
        return Err(super::ArithError::OutOfRange(format!(
            "q_binom: k={k} exceeds s={s}"
        )));
    }
    // [n,j] = z^{n-j}[n-1,j-1] + z^{-j}[n-1,j]
    let mut row = vec![LaurentPoly::one()];
    for n in 1..=s {
        let mut next = Vec::with_capacity(n as usize + 1);
        for j in 0..=n {
            let mut v = LaurentPoly::zero();
            if j >= 1 {
                v = &v + &row[(j - 1) as usize].shift((n - j) as i64);
            }
            if j < n {
                v = &v + &row[j as usize].shift(-(j as i64));
            }
            next.push(v);
        }
        row = next;
    }
    Ok(row.swap_remove(k as usize))
}

/// Determinant of a square matrix of Laurent polynomials (fraction-free Bareiss elimination).
pub fn lp_det(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    assert!(m.iter().all(|row| row.len() == n), "lp_det: matrix not square");
    let mut a: Vec<Vec<LaurentPoly>> = m.to_vec();
    let mut sign = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return LaurentPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step is an exact division");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Signed cofactor matrix transposed: `adj(M)` with `adj(M) * M = det(M) * I`.
pub fn lp_adjugate(m: &[Vec<LaurentPoly>]) -> Vec<Vec<LaurentPoly>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![LaurentPoly::one()]];
    }
    let mut adj = vec![vec![LaurentPoly::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<LaurentPoly>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| m[r][c].clone())
                        .collect()
                })
                .collect();
            let d = lp_det(&minor);
            adj[i][j] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    adj
}

pub fn lp_matmul(a: &[Vec<LaurentPoly>], b: &[Vec<LaurentPoly>]) -> Vec<Vec<LaurentPoly>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..inner).fold(LaurentPoly::zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j]))
                })
                .collect()
        })
        .collect()
}

impl LaurentPoly {
    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|e| *e == 0)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.values().next_back()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(e: i64) -> LaurentPoly {
        LaurentPoly::monomial(1, e)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&z(1) + &z(-1)) * &(&z(1) - &z(-1));
        assert_eq!(p, &z(2) - &z(-2));
    }

    #[test]
    fn identity_times_p() {
        let p = LaurentPoly::from_terms([(3, 2), (-1, -5)]);
        assert_eq!(&LaurentPoly::one() * &p, p);
    }

    #[test]
    fn squares_difference_gives_affine_det() {
        let a = &(&z(2) + &z(-2)).pow(2) - &(&z(1) + &z(-1)).pow(2);
        assert_eq!(a.to_string(), "z^4 - z^2 - z^-2 + z^-4");
    }

    #[test]
    fn q_int_values() {
        assert_eq!(q_int(0), LaurentPoly::zero());
        assert_eq!(q_int(1), LaurentPoly::one());
        assert_eq!(q_int(2), &z(1) + &z(-1));
        assert_eq!(q_int(-3), -(&(&z(2) + &z(0)) + &z(-2)));
    }

    #[test]
    fn q_binom_values() {
        assert_eq!(q_binom(5, 0).unwrap(), LaurentPoly::one());
        assert_eq!(q_binom(2, 1).unwrap(), &z(1) + &z(-1));
        assert_eq!(
            q_binom(4, 2).unwrap(),
            LaurentPoly::from_terms([(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)])
        );
        assert!(q_binom(2, 3).is_err());
    }

    #[test]
    fn q_binom_matches_factorial_quotient() {
        for s in 0..8u32 {
            for k in 0..=s {
                let num = q_factorial(s);
                let den = &q_factorial(k) * &q_factorial(s - k);
                assert_eq!(num.div_exact(&den).unwrap(), q_binom(s, k).unwrap());
            }
        }
    }

    #[test]
    fn det_identity() {
        let id = vec![
            vec![LaurentPoly::one(), LaurentPoly::zero()],
            vec![LaurentPoly::zero(), LaurentPoly::one()],
        ];
        assert_eq!(lp_det(&id), LaurentPoly::one());
    }

    #[test]
    fn div_exact_rejects_non_divisor() {
        let p = &z(2) + &z(0);
        assert!(p.div_exact(&(&z(1) + &LaurentPoly::from(2))).is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!((&z(1) + &z(-1)).to_string(), "z + z^-1");
        assert_eq!(LaurentPoly::from_terms([(0, -3), (2, 2)]).to_string(), "2*z^2 - 3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
