//! The monomial group: `Y_{i,a}` exponents plus a coweight record `(λ, n)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::cartan::CartanData;
use crate::exact_arith::{Mono, RatFn, Var};

/// A point `orbit · q^qexp` of a `q^ℤ`-orbit in `ℂ*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpectralParam {
    pub orbit: u32,
    pub qexp: i64,
}

impl SpectralParam {
    pub const fn new(orbit: u32, qexp: i64) -> Self {
        SpectralParam { orbit, qexp }
    }

    /// Parameter `q^qexp` in the base orbit.
    pub const fn q(qexp: i64) -> Self {
        SpectralParam { orbit: 0, qexp }
    }

    pub fn shift(self, k: i64) -> Self {
        SpectralParam {
            orbit: self.orbit,
            qexp: self.qexp + k,
        }
    }
}

impl fmt::Display for SpectralParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orbit != 0 {
            write!(f, "[{}]", self.orbit)?;
        }
        write!(f, "q^{}", self.qexp)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonomialError {
    #[error("inconsistent weight at node {node}: lambda = {lambda} but deg Q - deg R = {degree}")]
    InconsistentWeight { node: usize, lambda: i64, degree: i64 },
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
}

/// `k_ω ∏ Y_{i,a}^{u_{i,a}}` with `ω = ν(λ) - Σ n_i r_i α_i^∨`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: BTreeMap<(usize, SpectralParam), i64>,
    lambda: Vec<i64>,
    depth: Vec<i64>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            exps: BTreeMap::new(),
            lambda: vec![0; n],
            depth: vec![0; n],
        }
    }

    /// `Y_{i,a}^e` carrying its own weight `λ = e·Λ_i`.
    pub fn y(n: usize, i: usize, a: SpectralParam, e: i64) -> Self {
        let mut m = Monomial::one(n);
        if e != 0 {
            m.exps.insert((i, a), e);
            m.lambda[i] = e;
        }
        m
    }

    /// Product of `Y`'s with `λ` equal to the `u`-vector and zero depth.
    pub fn from_exps<I: IntoIterator<Item = ((usize, SpectralParam), i64)>>(n: usize, it: I) -> Self {
        let mut m = Monomial::one(n);
        for ((i, a), e) in it {
            m = m.mul(&Monomial::y(n, i, a, e));
        }
        m
    }

    /// Builds a monomial from raw parts without checking consistency.
    pub fn from_parts(
        exps: BTreeMap<(usize, SpectralParam), i64>,
        lambda: Vec<i64>,
        depth: Vec<i64>,
    ) -> Self {
        let exps = exps.into_iter().filter(|(_, e)| *e != 0).collect();
        Monomial { exps, lambda, depth }
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    pub fn exps(&self) -> &BTreeMap<(usize, SpectralParam), i64> {
        &self.exps
    }

    pub fn exp(&self, i: usize, a: SpectralParam) -> i64 {
        self.exps.get(&(i, a)).copied().unwrap_or(0)
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    pub fn depth(&self) -> &[i64] {
        &self.depth
    }

    pub fn total_depth(&self) -> i64 {
        self.depth.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty() && self.lambda.iter().all(|x| *x == 0) && self.depth.iter().all(|x| *x == 0)
    }

    /// True if the `Y`-part is empty (the record may still carry a `k_ω`).
    pub fn is_trivial_y(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        assert_eq!(self.rank(), o.rank(), "monomials of different rank");
        let mut exps = self.exps.clone();
        for (k, e) in &o.exps {
            let v = exps.entry(*k).or_insert(0);
            *v += e;
            if *v == 0 {
                exps.remove(k);
            }
        }
        Monomial {
            exps,
            lambda: self.lambda.iter().zip(&o.lambda).map(|(a, b)| a + b).collect(),
            depth: self.depth.iter().zip(&o.depth).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn inv(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|(k, e)| (*k, -e)).collect(),
            lambda: self.lambda.iter().map(|x| -x).collect(),
            depth: self.depth.iter().map(|x| -x).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one(self.rank());
        }
        Monomial {
            exps: self.exps.iter().map(|(p, e)| (*p, e * k)).collect(),
            lambda: self.lambda.iter().map(|x| x * k).collect(),
            depth: self.depth.iter().map(|x| x * k).collect(),
        }
    }

    /// `u_j(m) = Σ_a u_{j,a}(m)`.
    pub fn u_vector(&self) -> Vec<i64> {
        let mut u = vec![0; self.rank()];
        for ((i, _), e) in &self.exps {
            u[*i] += e;
        }
        u
    }

    /// Checks `u_j(m) = λ_j - Σ_i C_{j,i} n_i` for every `j`.
    pub fn is_consistent(&self, cd: &CartanData) -> bool {
        let u = self.u_vector();
        (0..cd.n).all(|j| {
            let cn: i64 = (0..cd.n).map(|i| cd.c[j][i] * self.depth[i]).sum();
            u[j] == self.lambda[j] - cn
        })
    }

    /// Same `Y`-part with the record reset to `λ = u`, `n = 0`.
    pub fn normalized(&self) -> Monomial {
        Monomial {
            exps: self.exps.clone(),
            lambda: self.u_vector(),
            depth: vec![0; self.rank()],
        }
    }

    /// Exponents at node `i`, keyed by spectral parameter.
    pub fn node_exps(&self, i: usize) -> impl Iterator<Item = (SpectralParam, i64)> + '_ {
        self.exps
            .range((i, SpectralParam::new(0, i64::MIN))..)
            .take_while(move |((j, _), _)| *j == i)
            .map(|((_, a), e)| (*a, *e))
    }

    pub fn is_i_dominant(&self, i: usize) -> bool {
        self.node_exps(i).all(|(_, e)| e >= 0)
    }

    /// Renders `Y{i,q^k}` factors, then the `k[...]` record when `show_k` is set.
    pub fn render(&self, show_k: bool) -> String {
        let mut parts: Vec<String> = self
            .exps
            .iter()
            .map(|((i, a), e)| {
                if *e == 1 {
                    format!("Y{{{},{}}}", i + 1, a)
                } else {
                    format!("Y{{{},{}}}^{}", i + 1, a, e)
                }
            })
            .collect();
        if show_k && !(self.lambda.iter().all(|x| *x == 0) && self.depth.iter().all(|x| *x == 0)) {
            parts.push(format!("k[{};{}]", join(&self.lambda), join(&self.depth)));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.total_depth()
            .cmp(&o.total_depth())
            .then_with(|| self.depth.cmp(&o.depth))
            .then_with(|| self.lambda.cmp(&o.lambda))
            .then_with(|| o.exps.iter().cmp(self.exps.iter()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(true))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(true))
    }
}

pub fn mono_mul(m1: &Monomial, m2: &Monomial) -> Monomial {
    m1.mul(m2)
}

/// `A_{i,a} = k_i Y_{i,aq_i^{-1}} Y_{i,aq_i} ∏_{j: C_{ji}<0} ∏_r Y_{j,aq^r}^{-1}`.
pub fn a_monomial(i: usize, a: SpectralParam, cd: &CartanData) -> Monomial {
    let n = cd.n;
    let mut exps = BTreeMap::new();
    let ri = cd.r[i];
    *exps.entry((i, a.shift(-ri))).or_insert(0) += 1;
    *exps.entry((i, a.shift(ri))).or_insert(0) += 1;
    for j in 0..n {
        let c = cd.c[j][i];
        if j == i || c >= 0 {
            continue;
        }
        let mut r = c + 1;
        while r <= -c - 1 {
            *exps.entry((j, a.shift(r))).or_insert(0) -= 1;
            r += 2;
        }
    }
    let mut depth = vec![0; n];
    depth[i] = -1;
    Monomial::from_parts(exps, vec![0; n], depth)
}

pub fn a_inverse(i: usize, a: SpectralParam, cd: &CartanData) -> Monomial {
    a_monomial(i, a, cd).inv()
}

pub fn is_dominant(m: &Monomial) -> bool {
    m.exps.values().all(|e| *e >= 0)
}

/// Per-node root multisets of the polynomials `Q_i` and `R_i`, plus `λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DrinfeldData {
    pub q_roots: Vec<Vec<SpectralParam>>,
    pub r_roots: Vec<Vec<SpectralParam>>,
    pub lambda: Vec<i64>,
}

impl DrinfeldData {
    /// Dominant data: only `P_i = Q_i`, with `λ_i = deg P_i`.
    pub fn dominant(p_roots: Vec<Vec<SpectralParam>>) -> Self {
        let lambda = p_roots.iter().map(|v| v.len() as i64).collect();
        let n = p_roots.len();
        let mut d = DrinfeldData {
            q_roots: p_roots,
            r_roots: vec![Vec::new(); n],
            lambda,
        };
        d.sort();
        d
    }

    fn sort(&mut self) {
        for v in self.q_roots.iter_mut().chain(self.r_roots.iter_mut()) {
            v.sort();
        }
    }
}

pub fn from_drinfeld(dd: &DrinfeldData) -> Result<Monomial, MonomialError> {
    let n = dd.lambda.len();
    for v in [&dd.q_roots, &dd.r_roots] {
        if v.len() != n {
            return Err(MonomialError::RankMismatch {
                expected: n,
                got: v.len(),
            });
        }
    }
    let mut exps = BTreeMap::new();
    for i in 0..n {
        let deg = dd.q_roots[i].len() as i64 - dd.r_roots[i].len() as i64;
        if deg != dd.lambda[i] {
            return Err(MonomialError::InconsistentWeight {
                node: i + 1,
                lambda: dd.lambda[i],
                degree: deg,
            });
        }
        for a in &dd.q_roots[i] {
            *exps.entry((i, *a)).or_insert(0) += 1;
        }
        for a in &dd.r_roots[i] {
            *exps.entry((i, *a)).or_insert(0) -= 1;
        }
    }
    Ok(Monomial::from_parts(exps, dd.lambda.clone(), vec![0; n]))
}

pub fn to_drinfeld(m: &Monomial) -> DrinfeldData {
    let n = m.rank();
    let mut q_roots = vec![Vec::new(); n];
    let mut r_roots = vec![Vec::new(); n];
    for ((i, a), e) in &m.exps {
        let target = if *e > 0 { &mut q_roots[*i] } else { &mut r_roots[*i] };
        target.extend(std::iter::repeat(*a).take(e.unsigned_abs() as usize));
    }
    let mut d = DrinfeldData {
        q_roots,
        r_roots,
        lambda: m.u_vector(),
    };
    d.sort();
    d
}

/// The record `(λ, n)` identifying the classical weight `e(ω(m))`.
pub fn classical_weight(m: &Monomial) -> (Vec<i64>, Vec<i64>) {
    (m.lambda.clone(), m.depth.clone())
}

/// The `sl2` l-weight `∏ (q(1 - q^{-1}cz)/(1 - qcz))^{u_c}`, with orbit `o` realised as `orbit_symbols[o]`.
pub fn sl2_l_weight(m: &Monomial, orbit_symbols: &[Mono]) -> RatFn {
    let q = RatFn::var(Var::Q);
    let z = RatFn::var(Var::Z);
    let mut out = RatFn::one();
    for ((_, a), e) in &m.exps {
        let c = RatFn::from_mono(&orbit_symbols[a.orbit as usize].mul(&Mono::var_pow(Var::Q, a.qexp as i32)));
        let num = &q * &(&RatFn::one() - &(&(&c * &z) / &q));
        let den = &RatFn::one() - &(&(&q * &c) * &z);
        let f = &num / &den;
        out = &out * &f.powi(*e).expect("nonzero l-weight factor");
    }
    out
}
