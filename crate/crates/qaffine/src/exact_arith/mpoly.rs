use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Number of variable slots. The set of symbols is closed for this domain.
pub const NVARS: usize = 14;

/// A formal variable. Slot 0 is `q`; lexicographic order treats it as most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(pub u8);

impl Var {
    pub const Q: Var = Var(0);
    pub const U: Var = Var(1);
    pub const A: Var = Var(2);
    pub const B: Var = Var(3);
    pub const C: Var = Var(4);
    pub const Z: Var = Var(5);

    /// `w_k` for `k` in `1..=8`.
    pub fn w(k: usize) -> Var {
        assert!((1..=8).contains(&k), "w index out of range");
        Var(5 + k as u8)
    }

    pub fn name(self) -> String {
        match self.0 {
            0 => "q".into(),
            1 => "u".into(),
            2 => "a".into(),
            3 => "b".into(),
            4 => "c".into(),
            5 => "z".into(),
            k => format!("w{}", k - 5),
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "q" => Some(Var::Q),
            "u" => Some(Var::U),
            "a" => Some(Var::A),
            "b" => Some(Var::B),
            "c" => Some(Var::C),
            "z" => Some(Var::Z),
            _ => {
                let k: usize = s.strip_prefix('w')?.parse().ok()?;
                (1..=8).contains(&k).then(|| Var::w(k))
            }
        }
    }

    fn idx(self) -> usize {
        self.0 as usize
    }
}

/// Laurent monomial (unit coefficient), stored as an exponent vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(pub [i32; NVARS]);

impl Mono {
    pub fn one() -> Self {
        Mono([0; NVARS])
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        let mut m = Self::one();
        m.0[v.idx()] = e;
        m
    }

    pub fn from_pairs(pairs: &[(Var, i32)]) -> Self {
        let mut m = Self::one();
        for (v, e) in pairs {
            m.0[v.idx()] += e;
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.idx()]
    }

    pub fn with_exp(mut self, v: Var, e: i32) -> Self {
        self.0[v.idx()] = e;
        self
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut m = *self;
        for (a, b) in m.0.iter_mut().zip(o.0.iter()) {
            *a += b;
        }
        m
    }

    pub fn inv(&self) -> Mono {
        let mut m = *self;
        for a in m.0.iter_mut() {
            *a = -*a;
        }
        m
    }

    pub fn div(&self, o: &Mono) -> Mono {
        self.mul(&o.inv())
    }

    pub fn pow(&self, k: i64) -> Mono {
        let mut m = *self;
        for a in m.0.iter_mut() {
            *a = (*a as i64 * k) as i32;
        }
        m
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|e| *e >= 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|e| *e as i64).sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e != 0)
            .map(|(i, e)| (Var(i as u8), *e))
    }

    pub fn meet(&self, o: &Mono) -> Mono {
        let mut m = *self;
        for (a, b) in m.0.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        m
    }

    /// Parses products such as `q^2*b` or `1`.
    pub fn parse(s: &str) -> Option<Mono> {
        let s = s.trim();
        if s == "1" {
            return Some(Mono::one());
        }
        let mut m = Mono::one();
        for factor in s.split('*') {
            let factor = factor.trim();
            let (name, e) = match factor.split_once('^') {
                Some((n, e)) => (n.trim(), e.trim().trim_matches(|c| c == '(' || c == ')').parse().ok()?),
                None => (factor, 1),
            };
            m = m.mul(&Mono::var_pow(Var::from_name(name)?, e));
        }
        Some(m)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .vars()
            .map(|(v, e)| {
                if e == 1 {
                    v.name()
                } else {
                    format!("{}^{}", v.name(), e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Multivariate Laurent polynomial over the integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, BigInt>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Mono::one())
    }

    pub fn term(c: impl Into<BigInt>, m: Mono) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn var(v: Var) -> Self {
        Self::term(1, Mono::var(v))
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, BigInt)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Returns the integer value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(BigInt, Mono)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *m))
        } else {
            None
        }
    }

    /// Leading term in lexicographic order.
    pub fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) != 0)
    }

    pub fn max_deg(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn min_deg(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).min().unwrap_or(0)
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_mono(&self) -> Mono {
        let mut it = self.terms.keys();
        match it.next() {
            None => Mono::one(),
            Some(first) => it.fold(*first, |acc, m| acc.meet(m)),
        }
    }

    pub fn is_nonneg(&self) -> bool {
        self.terms.keys().all(|m| m.is_nonneg())
    }

    /// View as a univariate polynomial in `v` with coefficients free of `v`.
    pub fn coeffs_in(&self, v: Var) -> BTreeMap<i32, MPoly> {
        let mut out: BTreeMap<i32, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            out.entry(e)
                .or_default()
                .add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    /// Replaces `v` by the Laurent monomial `c * m`.
    pub fn subst_monomial(&self, v: Var, c: &BigInt, m: &Mono) -> MPoly {
        let mut out = MPoly::zero();
        for (k, coef) in &self.terms {
            let e = k.exp(v);
            let base = k.with_exp(v, 0).mul(&m.pow(e as i64));
            let factor = if e >= 0 {
                num_traits::pow(c.clone(), e as usize)
            } else {
                // only unit scalars are invertible over the integers
                assert!(c.abs().is_one(), "non-unit scalar substituted with negative exponent");
                num_traits::pow(c.clone(), e.unsigned_abs() as usize)
            };
            out.add_term(base, coef * factor);
        }
        out
    }

    /// Exact division; `None` if `d` does not divide `self` in the Laurent ring.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        if d.is_zero() {
            return None;
        }
        if let Some((c, m)) = d.as_monomial() {
            let mut out = MPoly::zero();
            for (k, coef) in &self.terms {
                let (q, r) = coef.div_rem(&c);
                if !r.is_zero() {
                    return None;
                }
                out.add_term(k.div(&m), q);
            }
            return Some(out);
        }
        // normalise both to polynomials before lexicographic long division
        let shift = self.min_mono().meet(&d.min_mono());
        let num = self.mul_mono(&shift.inv());
        let den = d.mul_mono(&d.min_mono().inv());
        let dshift = d.min_mono().div(&shift);
        let (lm, lc) = {
            let (m, c) = den.leading().unwrap();
            (*m, c.clone())
        };
        let mut rem = num;
        let mut quot = MPoly::zero();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            if !lm.divides(&rm) {
                return None;
            }
            let (q, r) = rc.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let t = MPoly::term(q, rm.div(&lm));
            rem = &rem - &(&t * &den);
            quot = &quot + &t;
        }
        Some(quot.mul_mono(&dshift.inv()))
    }

    fn normalize_sign(self) -> MPoly {
        match self.leading() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self,
        }
    }

    /// Greatest common divisor of two polynomials with nonnegative exponents,
    /// normalised to a positive leading coefficient.
    pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
        if a.is_zero() {
            return b.clone().normalize_sign();
        }
        if b.is_zero() {
            return a.clone().normalize_sign();
        }
        if a == b {
            return a.clone().normalize_sign();
        }
        if let Some(c) = a.as_constant() {
            return MPoly::constant(c.gcd(&b.content()));
        }
        if let Some(c) = b.as_constant() {
            return MPoly::constant(c.gcd(&a.content()));
        }
        if let Some((c, m)) = a.as_monomial() {
            return MPoly::term(c.gcd(&b.content()), m.meet(&b.min_mono()));
        }
        if let Some((c, m)) = b.as_monomial() {
            return MPoly::term(c.gcd(&a.content()), m.meet(&a.min_mono()));
        }
        // common monomial factor first, then the polynomial part
        let mono = a.min_mono().meet(&b.min_mono());
        let a1 = a.mul_mono(&mono.inv());
        let b1 = b.mul_mono(&mono.inv());
        let v = (0..NVARS)
            .rev()
            .map(|i| Var(i as u8))
            .find(|v| a1.contains(*v) || b1.contains(*v))
            .expect("non-constant polynomials contain a variable");
        let ca = a1.content_in(v);
        let cb = b1.content_in(v);
        let g = MPoly::gcd(&ca, &cb);
        let pa = a1.div_exact(&ca).expect("content divides");
        let pb = b1.div_exact(&cb).expect("content divides");
        let prim = if pa.contains(v) && pb.contains(v) {
            prs_gcd(&pa, &pb, v)
        } else {
            MPoly::one()
        };
        (&(&g * &prim).mul_mono(&mono)).clone().normalize_sign()
    }

    /// gcd of the coefficients of `self` viewed as a polynomial in `v`.
    fn content_in(&self, v: Var) -> MPoly {
        let cs = self.coeffs_in(v);
        let mut g = MPoly::zero();
        for c in cs.values() {
            g = MPoly::gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_in(&self, v: Var) -> MPoly {
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides")
    }
}

fn lead_in(p: &MPoly, v: Var) -> MPoly {
    p.coeffs_in(v).remove(&p.max_deg(v)).unwrap_or_default()
}

/// `lc(b)^(deg a - deg b + 1) * a` reduced modulo `b` in `v`.
fn prem(a: &MPoly, b: &MPoly, v: Var) -> MPoly {
    let db = b.max_deg(v);
    let lb = lead_in(b, v);
    let mut steps = a.max_deg(v) - db + 1;
    let mut r = a.clone();
    while !r.is_zero() && r.max_deg(v) >= db {
        let dr = r.max_deg(v);
        let lr = lead_in(&r, v);
        let shift = Mono::var_pow(v, dr - db);
        r = &(&r * &lb) - &(&(&lr * b).mul_mono(&shift));
        steps -= 1;
    }
    if steps > 0 {
        r = &r * &lb.pow(steps as u32);
    }
    r
}

/// Specialises every variable except `v` to small integers, keeping both
/// leading coefficients in `v` nonzero.
fn specialize_except(a: &MPoly, b: &MPoly, v: Var) -> Option<(MPoly, MPoly)> {
    let others: Vec<Var> = (0..NVARS)
        .map(|i| Var(i as u8))
        .filter(|w| *w != v && (a.contains(*w) || b.contains(*w)))
        .collect();
    if others.is_empty() {
        return None;
    }
    for attempt in 0..8i64 {
        let (mut sa, mut sb) = (a.clone(), b.clone());
        for (k, w) in others.iter().enumerate() {
            let c = BigInt::from(2 + attempt * 7 + 3 * k as i64);
            sa = sa.subst_monomial(*w, &c, &Mono::one());
            sb = sb.subst_monomial(*w, &c, &Mono::one());
        }
        if sa.max_deg(v) == a.max_deg(v) && sb.max_deg(v) == b.max_deg(v) {
            return Some((sa, sb));
        }
    }
    None
}

fn prs_gcd(a: &MPoly, b: &MPoly, v: Var) -> MPoly {
    let (mut f, mut g) = if a.max_deg(v) >= b.max_deg(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    // the degree of a specialised gcd bounds the true one from above
    if let Some((sf, sg)) = specialize_except(&f, &g, v) {
        let bound = prs_gcd(&sf, &sg, v).max_deg(v);
        if bound == 0 {
            return MPoly::one();
        }
        if bound == g.max_deg(v) && f.div_exact(&g).is_some() {
            return g.primitive_in(v);
        }
    }
    // subresultant sequence
    let mut d = f.max_deg(v) - g.max_deg(v);
    let mut beta = if d % 2 == 0 { -MPoly::one() } else { MPoly::one() };
    let mut psi = -MPoly::one();
    loop {
        let r = prem(&f, &g, v);
        if r.is_zero() {
            return g.primitive_in(v);
        }
        if !r.contains(v) {
            return MPoly::one();
        }
        let r = r.div_exact(&beta).expect("subresultant division is exact");
        let gamma = lead_in(&g, v);
        psi = if d == 0 {
            psi
        } else {
            (-&gamma)
                .pow(d as u32)
                .div_exact(&psi.pow((d - 1) as u32))
                .expect("subresultant division is exact")
        };
        f = g;
        g = r;
        d = f.max_deg(v) - g.max_deg(v);
        beta = -(&gamma * &psi.pow(d as u32));
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(mut self) -> MPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, o: MPoly) -> MPoly {
        &self + &o
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, o: MPoly) -> MPoly {
        &self - &o
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, o: MPoly) -> MPoly {
        &self * &o
    }
}

impl From<i64> for MPoly {
    fn from(c: i64) -> Self {
        MPoly::constant(c)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: Var) -> MPoly {
        MPoly::var(v)
    }

    #[test]
    fn gcd_of_products() {
        let q = x(Var::Q);
        let a = x(Var::A);
        let f1 = &q - &a;
        let f2 = &(&q * &a) + &MPoly::one();
        let f3 = &a + &MPoly::constant(2);
        let p1 = &(&f1 * &f2) * &MPoly::constant(6);
        let p2 = &(&f1 * &f3) * &MPoly::constant(4);
        let g = MPoly::gcd(&p1, &p2);
        assert_eq!(g, (&f1 * &MPoly::constant(2)).normalize_sign());
    }

    #[test]
    fn gcd_in_three_variables() {
        let (q, u, a) = (x(Var::Q), x(Var::U), x(Var::A));
        let common = &(&(&q * &q) * &(&u * &a)) - &(&q * &MPoly::constant(2));
        let f = &common * &(&(&(&u * &a) * &MPoly::constant(3)) + &(&u * &MPoly::constant(2)));
        let g = &common * &(&(&(&(&q * &a) * &a) + &(&u * &a)) - &MPoly::one());
        assert_eq!(MPoly::gcd(&f, &g), common.clone().normalize_sign());
        let h = &(&q * &u) + &a;
        assert!(MPoly::gcd(&(&f * &h), &(&g * &h)).div_exact(&(&common * &h)).is_some());
    }

    #[test]
    fn gcd_coprime() {
        let q = x(Var::Q);
        let b = x(Var::B);
        let g = MPoly::gcd(&(&q + &b), &(&q - &b));
        assert!(g.is_one());
    }

    #[test]
    fn gcd_with_monomial_factor() {
        let q = x(Var::Q);
        let u = x(Var::U);
        let p1 = &(&q * &u) * &(&u + &MPoly::one());
        let p2 = &(&q * &q) * &(&u + &MPoly::one());
        assert_eq!(MPoly::gcd(&p1, &p2), &q * &(&u + &MPoly::one()));
    }

    #[test]
    fn exact_division() {
        let q = x(Var::Q);
        let z = x(Var::Z);
        let f = &(&q - &z) * &(&q + &z);
        assert_eq!(f.div_exact(&(&q - &z)).unwrap(), &q + &z);
        assert!(f.div_exact(&(&q + &MPoly::one())).is_none());
    }

    #[test]
    fn mono_parse_round_trip() {
        let m = Mono::parse("q^2*b").unwrap();
        assert_eq!(m.to_string(), "q^2*b");
        assert_eq!(Mono::parse("a^-1*b*u").unwrap().exp(Var::A), -1);
    }
}
