use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::exact_arith::{ArithError, Mono, RatFn, Var};

/// A function of an integer symbol `r` of the form `sum_g c_g * g^r`.
///
/// Distinct Laurent monomials `g` give linearly independent functions of `r`,
/// so structural equality is equality as functions.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExpPoly {
    terms: BTreeMap<Mono, RatFn>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c * g^r`.
    pub fn term(c: RatFn, g: Mono) -> Self {
        let mut e = Self::zero();
        e.add_term(g, c);
        e
    }

    /// `g^r`.
    pub fn power(g: Mono) -> Self {
        Self::term(RatFn::one(), g)
    }

    /// The constant function `c`.
    pub fn constant(c: RatFn) -> Self {
        Self::term(c, Mono::one())
    }

    /// `c * g^r * [h]'_{r+s}` where `[h]'_n = (1 - h^n)/(1 - h)`.
    pub fn qprime(c: &RatFn, g: Mono, h: Mono, s: i64) -> Result<Self, ArithError> {
        if h.is_one() {
            return Err(ArithError::OutOfRange("[1]'_r is not an exponential sum".into()));
        }
        let k = c.checked_div(&(&RatFn::one() - &RatFn::from_mono(&h)))?;
        let mut e = Self::term(k.clone(), g);
        e.add_term(g.mul(&h), -k.mul_mono(&h.pow(s)));
        Ok(e)
    }

    fn add_term(&mut self, g: Mono, c: RatFn) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(g).or_insert_with(RatFn::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &RatFn)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &Mono) -> RatFn {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn bases(&self) -> impl Iterator<Item = &Mono> {
        self.terms.keys()
    }

    pub fn scale(&self, k: &RatFn) -> Self {
        let mut out = Self::zero();
        if k.is_zero() {
            return out;
        }
        for (g, c) in &self.terms {
            out.add_term(*g, c * k);
        }
        out
    }

    /// Replaces every base `g` by `g*m`, i.e. multiplies by `m^r`.
    pub fn dilate(&self, m: &Mono) -> Self {
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            out.add_term(g.mul(m), c.clone());
        }
        out
    }

    /// The function `r -> f(r + k)`.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            out.add_term(*g, c.mul_mono(&g.pow(k)));
        }
        out
    }

    pub fn mul(&self, o: &ExpPoly) -> Self {
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            for (h, d) in &o.terms {
                out.add_term(g.mul(h), c * d);
            }
        }
        out
    }

    pub fn eval(&self, r: i64) -> RatFn {
        self.terms.iter().map(|(g, c)| c.mul_mono(&g.pow(r))).sum()
    }

    /// Substitutes `v := m` in coefficients and bases; bases that collide merge.
    pub fn substitute(&self, v: Var, m: &Mono) -> Result<Self, ArithError> {
        let val = RatFn::from_mono(m);
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            let e = g.exp(v) as i64;
            let g2 = g.with_exp(v, 0).mul(&m.pow(e));
            out.add_term(g2, c.substitute(v, &val)?);
        }
        Ok(out)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = &RatFn> {
        self.terms.values()
    }
}

impl Add for &ExpPoly {
    type Output = ExpPoly;
    fn add(self, o: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (g, c) in &o.terms {
            out.add_term(*g, c.clone());
        }
        out
    }
}

impl Sub for &ExpPoly {
    type Output = ExpPoly;
    fn sub(self, o: &ExpPoly) -> ExpPoly {
        self + &(-o)
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        ExpPoly {
            terms: self.terms.iter().map(|(g, c)| (*g, -c)).collect(),
        }
    }
}

fn fmt_base(g: &Mono) -> String {
    let vars: Vec<(Var, i32)> = g.vars().collect();
    match vars.as_slice() {
        [(v, 1)] => format!("{}^r", v.name()),
        _ => format!("({})^r", g),
    }
}

fn fmt_coeff(c: &RatFn) -> String {
    let s = c.to_string();
    if c.num().len() > 1 || !c.den().is_one() {
        format!("({})", s)
    } else {
        s
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| {
                if g.is_one() {
                    fmt_coeff(c)
                } else if c.is_one() {
                    fmt_base(g)
                } else if (-c).is_one() {
                    format!("-{}", fmt_base(g))
                } else {
                    format!("{}*{}", fmt_coeff(c), fmt_base(g))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A rational function of `z` written as `alpha + sum_g beta_g / (1 - g z)`.
///
/// Its expansion at `z = 0` gives the `phi^+` modes and at `z = infinity` the
/// `phi^-` modes.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PartialFrac {
    alpha: RatFn,
    beta: BTreeMap<Mono, RatFn>,
}

impl PartialFrac {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: RatFn) -> Self {
        PartialFrac {
            alpha: c,
            beta: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(RatFn::one())
    }

    pub fn new<I: IntoIterator<Item = (Mono, RatFn)>>(alpha: RatFn, poles: I) -> Self {
        let mut p = Self::constant(alpha);
        for (g, b) in poles {
            p.add_pole(g, b);
        }
        p
    }

    fn add_pole(&mut self, g: Mono, b: RatFn) {
        if b.is_zero() {
            return;
        }
        let slot = self.beta.entry(g).or_insert_with(RatFn::zero);
        *slot = &*slot + &b;
        if slot.is_zero() {
            self.beta.remove(&g);
        }
    }

    pub fn alpha(&self) -> &RatFn {
        &self.alpha
    }

    pub fn poles(&self) -> impl Iterator<Item = (&Mono, &RatFn)> {
        self.beta.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.beta.is_empty()
    }

    pub fn add(&self, o: &PartialFrac) -> Self {
        let mut out = PartialFrac::constant(&self.alpha + &o.alpha);
        for (g, b) in self.beta.iter().chain(o.beta.iter()) {
            out.add_pole(*g, b.clone());
        }
        out
    }

    pub fn scale(&self, k: &RatFn) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        PartialFrac {
            alpha: &self.alpha * k,
            beta: self.beta.iter().map(|(g, b)| (*g, b * k)).collect(),
        }
    }

    /// Product; `None` if the factors share a pole.
    pub fn mul(&self, o: &PartialFrac) -> Option<Self> {
        let mut out = PartialFrac::constant(&self.alpha * &o.alpha);
        for (g, b) in &self.beta {
            out.add_pole(*g, b * &o.alpha);
        }
        for (h, c) in &o.beta {
            out.add_pole(*h, c * &self.alpha);
        }
        for (g, b) in &self.beta {
            for (h, c) in &o.beta {
                if g == h {
                    return None;
                }
                // 1/((1-gz)(1-hz)) = (g/(1-gz) - h/(1-hz))/(g-h)
                let gr = RatFn::from_mono(g);
                let hr = RatFn::from_mono(h);
                let k = &(b * c) / &(&gr - &hr);
                out.add_pole(*g, &k * &gr);
                out.add_pole(*h, -(&k * &hr));
            }
        }
        Some(out)
    }

    /// The function `z -> f(m z)`.
    pub fn dilate(&self, m: &Mono) -> Self {
        PartialFrac {
            alpha: self.alpha.clone(),
            beta: self.beta.iter().map(|(g, b)| (g.mul(m), b.clone())).collect(),
        }
    }

    /// Coefficient of `z^m` in the expansion at `0`, for `m >= 0`.
    pub fn mode_plus(&self, m: i64) -> RatFn {
        assert!(m >= 0);
        let s: RatFn = self.beta.iter().map(|(g, b)| b.mul_mono(&g.pow(m))).sum();
        if m == 0 {
            &self.alpha + &s
        } else {
            s
        }
    }

    /// Coefficient of `z^m` in the expansion at infinity, for `m <= 0`.
    pub fn mode_minus(&self, m: i64) -> RatFn {
        assert!(m <= 0);
        if m == 0 {
            return self.alpha.clone();
        }
        -self.beta.iter().map(|(g, b)| b.mul_mono(&g.pow(m))).sum::<RatFn>()
    }

    /// `n -> phi^+_n - phi^-_n` for all integers `n`.
    pub fn mode_diff(&self) -> ExpPoly {
        let mut e = ExpPoly::zero();
        for (g, b) in &self.beta {
            e.add_term(*g, b.clone());
        }
        e
    }

    /// The same function as an element of the rational function field in `z`.
    pub fn to_ratfn(&self) -> RatFn {
        let z = RatFn::var(Var::Z);
        let mut out = self.alpha.clone();
        for (g, b) in &self.beta {
            let den = &RatFn::one() - &z.mul_mono(g);
            out = out + b / &den;
        }
        out
    }

    pub fn substitute(&self, v: Var, m: &Mono) -> Result<Self, ArithError> {
        let val = RatFn::from_mono(m);
        let mut out = PartialFrac::constant(self.alpha.substitute(v, &val)?);
        for (g, b) in &self.beta {
            let e = g.exp(v) as i64;
            out.add_pole(g.with_exp(v, 0).mul(&m.pow(e)), b.substitute(v, &val)?);
        }
        Ok(out)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = &RatFn> {
        std::iter::once(&self.alpha).chain(self.beta.values())
    }
}

impl fmt::Debug for PartialFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratfn())
    }
}
