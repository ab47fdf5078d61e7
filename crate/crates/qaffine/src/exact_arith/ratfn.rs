use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::mpoly::{MPoly, Mono, Var};
use super::ArithError;

/// Rational function in the fixed variable set, kept in lowest terms.
///
/// Numerator and denominator have nonnegative exponents, are coprime, and the
/// denominator has a positive leading coefficient, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: MPoly,
    den: MPoly,
}

/// Rational functions in `q` (and other spectral symbols).
pub type QRat = RatFn;
/// Rational functions that also involve the twist parameter `u`.
pub type QURat = RatFn;

impl Default for RatFn {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFn {
    pub fn zero() -> Self {
        RatFn {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        RatFn {
            num: MPoly::constant(c),
            den: MPoly::one(),
        }
    }

    pub fn var(v: Var) -> Self {
        Self::from_mono(&Mono::var(v))
    }

    pub fn from_mono(m: &Mono) -> Self {
        Self::from_poly(MPoly::term(1, *m))
    }

    pub fn from_poly(p: MPoly) -> Self {
        Self::new(p, MPoly::one()).expect("unit denominator")
    }

    pub fn new(num: MPoly, den: MPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let shift = num.min_mono().meet(&den.min_mono()).inv();
        let mut num = num.mul_mono(&shift);
        let mut den = den.mul_mono(&shift);
        // clear the remaining negative exponents on either side
        let nm = num.min_mono();
        let dm = den.min_mono();
        let fix = Mono::one().meet(&nm).meet(&dm).inv();
        if !fix.is_one() {
            num = num.mul_mono(&fix);
            den = den.mul_mono(&fix);
        }
        let g = MPoly::gcd(&num, &den);
        if !g.is_one() {
            num = num.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        if den.leading().is_some_and(|(_, c)| c.is_negative()) {
            num = -num;
            den = -den;
        }
        Ok(RatFn { num, den })
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Returns `(c, m)` if the function is a single Laurent monomial `c*m`.
    pub fn as_monomial(&self) -> Option<(BigInt, Mono)> {
        let (c, m) = self.num.as_monomial()?;
        let (dc, dm) = self.den.as_monomial()?;
        if dc.is_one() {
            Some((c, m.div(&dm)))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, o: &RatFn) -> Result<Self, ArithError> {
        if o.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn powi(&self, n: i64) -> Result<Self, ArithError> {
        if n >= 0 {
            Ok(RatFn {
                num: self.num.pow(n as u32),
                den: self.den.pow(n as u32),
            })
        } else {
            self.inv()?.powi(-n)
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        Self::new(self.num.mul_mono(m), self.den.clone()).expect("nonzero denominator")
    }

    pub fn contains(&self, v: Var) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }

    /// Substitutes `v := value` throughout.
    pub fn substitute(&self, v: Var, value: &RatFn) -> Result<Self, ArithError> {
        let n = subst_poly(&self.num, v, value)?;
        let d = subst_poly(&self.den, v, value)?;
        n.checked_div(&d)
    }

    /// Substitutes several variables simultaneously.
    pub fn substitute_all(&self, subs: &[(Var, RatFn)]) -> Result<Self, ArithError> {
        // rename targets to fresh monomials first would need spare slots; the
        // substituted values in this crate never mention the other targets
        let mut out = self.clone();
        for (v, val) in subs {
            out = out.substitute(*v, val)?;
        }
        Ok(out)
    }

    /// True if the denominator vanishes identically after `v := value`.
    pub fn den_vanishes_at(&self, v: Var, value: &RatFn) -> Result<bool, ArithError> {
        Ok(subst_poly(&self.den, v, value)?.is_zero())
    }

    /// True if the denominator is a monomial in `v` times a polynomial free of `v`,
    /// i.e. the function is a Laurent polynomial in `v` over the other symbols.
    pub fn is_laurent_in(&self, v: Var) -> bool {
        let mut exps = self.den.terms().map(|(m, _)| m.exp(v));
        match exps.next() {
            None => true,
            Some(first) => exps.all(|e| e == first),
        }
    }

    /// Parses expressions such as `q*(1-q^-2*a^-1*u*b)/(1-a^-1*u*b)`.
    pub fn parse(s: &str) -> Result<Self, ArithError> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let r = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(r)
    }
}

fn subst_poly(p: &MPoly, v: Var, value: &RatFn) -> Result<RatFn, ArithError> {
    if !p.contains(v) {
        return Ok(RatFn::from_poly(p.clone()));
    }
    if let Some((c, m)) = value.as_monomial() {
        if c.abs().is_one() || p.min_deg(v) >= 0 {
            return Ok(RatFn::from_poly(p.subst_monomial(v, &c, &m)));
        }
    }
    let mut out = RatFn::zero();
    for (e, c) in p.coeffs_in(v) {
        let term = RatFn::from_poly(c) * value.powi(e as i64)?;
        out = out + term;
    }
    Ok(out)
}

/// Sum of the geometric series `1 + u*c + (u*c)^2 + ...`, that is `1/(1 - u*c)`.
pub fn geom_sum(c: &RatFn) -> Result<RatFn, ArithError> {
    let uc = c * &RatFn::var(Var::U);
    let den = &RatFn::one() - &uc;
    if den.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    den.inv()
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, o: &RatFn) -> RatFn {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFn::new(&self.num + &o.num, self.den.clone()).expect("nonzero denominator");
        }
        RatFn::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .expect("nonzero denominator")
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, o: &RatFn) -> RatFn {
        self + &(-o)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, o: &RatFn) -> RatFn {
        if self.is_zero() || o.is_zero() {
            return RatFn::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        RatFn::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominator")
    }
}

impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, o: &RatFn) -> RatFn {
        self.checked_div(o).expect("division by zero")
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFn {
            type Output = RatFn;
            fn $m(self, o: RatFn) -> RatFn {
                (&self).$m(&o)
            }
        }
        impl $tr<&RatFn> for RatFn {
            type Output = RatFn;
            fn $m(self, o: &RatFn) -> RatFn {
                (&self).$m(o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl From<i64> for RatFn {
    fn from(c: i64) -> Self {
        RatFn::constant(c)
    }
}

impl From<MPoly> for RatFn {
    fn from(p: MPoly) -> Self {
        RatFn::from_poly(p)
    }
}

impl std::iter::Sum for RatFn {
    fn sum<I: Iterator<Item = RatFn>>(it: I) -> RatFn {
        it.fold(RatFn::zero(), |a, b| a + b)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &MPoly, product: bool| {
            let s = p.to_string();
            if p.len() > 1 || (product && s.contains('*')) {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num, false), wrap(&self.den, true))
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ArithError {
        ArithError::Parse(format!("{msg} at column {}", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFn, ArithError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFn, ArithError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFn, ArithError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.int_exponent()?;
            return base.powi(e);
        }
        Ok(base)
    }

    fn int_exponent(&mut self) -> Result<i64, ArithError> {
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let n = self.digits()?;
        let n: i64 = n.try_into().map_err(|_| self.err("exponent too large"))?;
        if paren {
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
        }
        Ok(if neg { -n } else { n })
    }

    fn digits(&mut self) -> Result<BigInt, ArithError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("valid digits"))
    }

    fn atom(&mut self) -> Result<RatFn, ArithError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(RatFn::constant(self.digits()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match Var::from_name(name) {
                    Some(v) => Ok(RatFn::var(v)),
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("unknown symbol '{name}'")))
                    }
                }
            }
            _ => Err(self.err("expected operand")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatFn {
        RatFn::parse(s).unwrap()
    }

    #[test]
    fn reduces_to_lowest_terms() {
        assert_eq!(r("(q^2-1)/(q-1)"), r("q+1"));
        assert_eq!(r("(q^2-1)/(q-1)").to_string(), "q + 1");
    }

    #[test]
    fn laurent_exponents_are_cleared() {
        let x = r("q - q^-1");
        assert_eq!(x.to_string(), "(q^2 - 1)/q");
        assert_eq!(&x * &r("q"), r("q^2-1"));
    }

    #[test]
    fn sign_normalised() {
        assert_eq!(r("1/(-q)"), r("-1/q"));
        assert_eq!(r("(1-q)/(1-q)"), RatFn::one());
    }

    #[test]
    fn substitution() {
        let f = r("(1-q^2*a^-1*b*u)/(1-a^-1*b*u)");
        let g = f.substitute(Var::U, &RatFn::one()).unwrap();
        assert_eq!(g, r("(a - q^2*b)/(a-b)"));
        assert!(f.den_vanishes_at(Var::A, &r("b*u")).unwrap());
    }

    #[test]
    fn geometric_series() {
        assert_eq!(geom_sum(&r("a/b")).unwrap(), r("b/(b-u*a)"));
        assert!(geom_sum(&r("u^-1")).is_err());
    }

    #[test]
    fn laurent_in_u() {
        assert!(r("(a+u^3)/(u^2*(a-b))").is_laurent_in(Var::U));
        assert!(!r("1/(1-u*a)").is_laurent_in(Var::U));
    }

    #[test]
    fn parse_errors_report_column() {
        let e = RatFn::parse("q + x").unwrap_err();
        assert!(e.to_string().contains("column 5"), "{e}");
        assert!(RatFn::parse("1/(q-q)").is_err());
    }
}
