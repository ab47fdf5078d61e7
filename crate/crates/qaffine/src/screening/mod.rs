//! Screening operators `S_i`, the transform `τ_i`, and kernel membership.

mod character;
mod linsolve;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub use character::QCharacter;

use crate::cartan::{int_det, CartanData, CartanError, PTable};
use crate::monomial::{a_inverse, a_monomial, is_dominant, Monomial, SpectralParam};
use linsolve::Rref;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScreeningError {
    #[error("safe depth {safe} is not below the truncation depth {depth}")]
    DepthTooShallow { safe: i64, depth: i64 },
    #[error("linear system is underdetermined: {0}")]
    Underdetermined(String),
    #[error("linear system has no solution: {0}")]
    NoSolution(String),
    #[error(transparent)]
    Cartan(#[from] CartanError),
}

/// `S_{i,a}` reduced to its class representative: the smallest nonnegative `qexp` modulo `2r_i`.
pub fn class_rep(a: SpectralParam, ri: i64) -> SpectralParam {
    SpectralParam::new(a.orbit, a.qexp.rem_euclid(2 * ri))
}

/// The monomial `M` with `S_{i,a} = M·S_{i,rep(a)}`.
pub fn reduction_chain(i: usize, a: SpectralParam, cd: &CartanData) -> (Monomial, SpectralParam) {
    let ri = cd.r[i];
    let rep = class_rep(a, ri);
    let t = (a.qexp - rep.qexp) / (2 * ri);
    let mut m = Monomial::one(cd.n);
    if t > 0 {
        for s in 1..=t {
            m = m.mul(&a_monomial(i, rep.shift((2 * s - 1) * ri), cd));
        }
    } else {
        for s in (t + 1)..=0 {
            m = m.mul(&a_inverse(i, rep.shift((2 * s - 1) * ri), cd));
        }
    }
    (m, rep)
}

/// Terms `c · M · S_{i,rep}` of `S_i(χ)` after reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScreeningElement {
    pub node: usize,
    pub terms: BTreeMap<(Monomial, SpectralParam), BigInt>,
}

impl ScreeningElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

struct Screened {
    coef: BigInt,
    max_source_depth: i64,
}

fn screen_sourced(chi: &QCharacter, i: usize, cd: &CartanData) -> BTreeMap<(Monomial, SpectralParam), Screened> {
    let mut out: BTreeMap<(Monomial, SpectralParam), Screened> = BTreeMap::new();
    for (m, c) in chi.terms() {
        for (a, u) in m.node_exps(i) {
            let (chain, rep) = reduction_chain(i, a, cd);
            let e = out.entry((m.mul(&chain), rep)).or_insert(Screened {
                coef: BigInt::zero(),
                max_source_depth: i64::MIN,
            });
            e.coef += c * BigInt::from(u);
            e.max_source_depth = e.max_source_depth.max(m.total_depth());
        }
    }
    out
}

pub fn screen(chi: &QCharacter, i: usize, cd: &CartanData) -> ScreeningElement {
    let terms = screen_sourced(chi, i, cd)
        .into_iter()
        .filter(|(_, s)| !s.coef.is_zero())
        .map(|(k, s)| (k, s.coef))
        .collect();
    ScreeningElement { node: i, terms }
}

/// Longest `i`-string any term can head: `max_m Σ_a max(u_{i,a}(m), 0)` over all nodes.
pub fn string_reach(chi: &QCharacter) -> i64 {
    chi.terms()
        .map(|(m, _)| (0..chi.rank()).map(|i| positive_part(m, i)).max().unwrap_or(0))
        .max()
        .unwrap_or(0)
}

fn positive_part(m: &Monomial, i: usize) -> i64 {
    m.node_exps(i).map(|(_, e)| e.max(0)).sum()
}

/// Default interior for [`is_in_kernel`]: truncation depth minus [`string_reach`].
pub fn default_safe_depth(chi: &QCharacter) -> i64 {
    chi.truncation_depth() - string_reach(chi).max(1)
}

/// True iff every reduced coefficient whose sources all sit at depth `<= safe_depth` vanishes.
pub fn is_in_kernel(chi: &QCharacter, i: usize, safe_depth: i64, cd: &CartanData) -> Result<bool, ScreeningError> {
    if safe_depth >= chi.truncation_depth() {
        return Err(ScreeningError::DepthTooShallow {
            safe: safe_depth,
            depth: chi.truncation_depth(),
        });
    }
    Ok(screen_sourced(chi, i, cd)
        .values()
        .all(|s| s.max_source_depth > safe_depth || s.coef.is_zero()))
}

fn candidates(seed: &Monomial, max_depth: i64, cd: &CartanData) -> BTreeSet<Monomial> {
    let mut seen = BTreeSet::new();
    seen.insert(seed.clone());
    let mut frontier = vec![seed.clone()];
    while let Some(m) = frontier.pop() {
        if m.total_depth() >= max_depth {
            continue;
        }
        for i in 0..cd.n {
            for (c, u) in m.node_exps(i).collect::<Vec<_>>() {
                if u > 0 {
                    let next = m.mul(&a_inverse(i, c.shift(cd.r[i]), cd));
                    if seen.insert(next.clone()) {
                        frontier.push(next);
                    }
                }
            }
        }
    }
    seen
}

/// Solves `S_i(χ) = 0` for all `i` by exact linear algebra, with `χ[seed] = 1` and
/// no other dominant monomial, and returns `χ` truncated at depth `d`.
pub fn kernel_solve(seed: &Monomial, d: i64, cd: &CartanData) -> Result<QCharacter, ScreeningError> {
    if !is_dominant(seed) {
        return Err(ScreeningError::NoSolution("seed is not dominant".into()));
    }
    let d = d.max(seed.total_depth());
    let reach = (0..cd.n).map(|i| positive_part(seed, i)).max().unwrap_or(0).max(1);
    let mut last_err = None;
    let mut extra = reach;
    while extra <= 3 * reach + 2 {
        match solve_at(seed, d, d + extra, reach, cd) {
            Ok(chi) => return Ok(chi),
            Err(e @ ScreeningError::Underdetermined(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
        extra += 1;
    }
    Err(last_err.unwrap())
}

fn solve_at(seed: &Monomial, d: i64, de: i64, reach: i64, cd: &CartanData) -> Result<QCharacter, ScreeningError> {
    let cands: Vec<Monomial> = candidates(seed, de, cd).into_iter().collect();
    let index: BTreeMap<&Monomial, usize> = cands.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let reach = cands
        .iter()
        .map(|m| (0..cd.n).map(|i| positive_part(m, i)).max().unwrap_or(0))
        .max()
        .unwrap_or(0)
        .max(reach);
    let ncols = cands.len();
    let mut sys = Rref::new(ncols);
    for (k, m) in cands.iter().enumerate() {
        if m == seed {
            sys.push([(k, BigRational::one()), (ncols, -BigRational::one())].into_iter().collect());
        } else if is_dominant(m) {
            sys.push([(k, BigRational::one())].into_iter().collect());
        }
    }
    let interior = de - reach;
    for i in 0..cd.n {
        let mut rows: BTreeMap<(Monomial, SpectralParam), (linsolve::Row, i64)> = BTreeMap::new();
        for m in &cands {
            for (a, u) in m.node_exps(i) {
                let (chain, rep) = reduction_chain(i, a, cd);
                let e = rows.entry((m.mul(&chain), rep)).or_default();
                let v = e.0.entry(index[m]).or_insert_with(BigRational::zero);
                *v += BigRational::from_integer(BigInt::from(u));
                e.1 = e.1.max(m.total_depth());
            }
        }
        for (_, (row, maxd)) in rows {
            if maxd <= interior {
                sys.push(row);
            }
        }
    }
    if sys.is_inconsistent() {
        return Err(ScreeningError::NoSolution(format!(
            "kernel system for {} is inconsistent",
            seed.render(true)
        )));
    }
    let mut chi = QCharacter::new(cd.n, d);
    for (k, m) in cands.iter().enumerate() {
        if m.total_depth() > d {
            continue;
        }
        let v = sys.value(k).ok_or_else(|| {
            ScreeningError::Underdetermined(format!("coefficient of {} not pinned at depth {de}", m.render(true)))
        })?;
        if !v.is_integer() {
            return Err(ScreeningError::NoSolution(format!(
                "non-integral coefficient {v} at {}",
                m.render(true)
            )));
        }
        chi.add_term(m.clone(), v.to_integer());
    }
    Ok(chi)
}

/// Coweight part of a `τ_i`-image orthogonal to `α_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Perp {
    /// Coordinates in the basis of simple coroots (available when `C` is invertible).
    Coroot(Vec<BigRational>),
    /// The raw record `(λ, 2·coroot part)` when `C` is singular.
    Record { lambda: Vec<i64>, coroot2: Vec<i64> },
}

/// `k^{(i)}_r k_perp ∏ Y_{i,a}^{..} ∏ Z_{j,c}^{..}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TauMonomial {
    pub r: i64,
    pub iexps: BTreeMap<SpectralParam, i64>,
    pub zexps: BTreeMap<(usize, SpectralParam), i64>,
    pub perp: Perp,
}

impl TauMonomial {
    pub fn mul(&self, o: &TauMonomial) -> TauMonomial {
        fn merge<K: Ord + Copy>(a: &BTreeMap<K, i64>, b: &BTreeMap<K, i64>) -> BTreeMap<K, i64> {
            let mut out = a.clone();
            for (k, v) in b {
                let e = out.entry(*k).or_insert(0);
                *e += v;
                if *e == 0 {
                    out.remove(k);
                }
            }
            out
        }
        let perp = match (&self.perp, &o.perp) {
            (Perp::Coroot(x), Perp::Coroot(y)) => Perp::Coroot(x.iter().zip(y).map(|(a, b)| a + b).collect()),
            (Perp::Record { lambda: l1, coroot2: c1 }, Perp::Record { lambda: l2, coroot2: c2 }) => Perp::Record {
                lambda: l1.iter().zip(l2).map(|(a, b)| a + b).collect(),
                coroot2: c1.iter().zip(c2).map(|(a, b)| a + b).collect(),
            },
            _ => panic!("mixed coweight encodings"),
        };
        TauMonomial {
            r: self.r + o.r,
            iexps: merge(&self.iexps, &o.iexps),
            zexps: merge(&self.zexps, &o.zexps),
            perp,
        }
    }

    pub fn is_pure(&self) -> bool {
        self.zexps.is_empty()
            && match &self.perp {
                Perp::Coroot(x) => x.iter().all(|v| v.is_zero()),
                Perp::Record { lambda, coroot2 } => lambda.iter().chain(coroot2).all(|v| *v == 0),
            }
    }
}

/// Solves `C^T y = b` exactly; `None` if `C` is singular.
fn solve_transpose(cd: &CartanData, b: &[BigRational]) -> Option<Vec<BigRational>> {
    if int_det(&cd.c).is_zero() {
        return None;
    }
    let n = cd.n;
    let mut sys = Rref::new(n);
    for k in 0..n {
        let mut row: linsolve::Row = (0..n)
            .filter(|&j| cd.c[j][k] != 0)
            .map(|j| (j, BigRational::from_integer(BigInt::from(cd.c[j][k]))))
            .collect();
        row.insert(n, -b[k].clone());
        sys.push(row);
    }
    (0..n).map(|j| sys.value(j)).collect()
}

/// `τ_i(m)`: `Y_{j,a} ↦ Y_{i,a}^{δ_{ij}} ∏_{k≠i,r} Z_{k,aq^r}^{p_{j,k}(r)}` with the coweight split along `α_i`.
pub fn tau_i(m: &Monomial, i: usize, pt: &PTable, cd: &CartanData) -> TauMonomial {
    let u = m.u_vector();
    let mut iexps = BTreeMap::new();
    let mut zexps: BTreeMap<(usize, SpectralParam), i64> = BTreeMap::new();
    for ((j, a), e) in m.exps() {
        if *j == i {
            iexps.insert(*a, *e);
        }
        for k in (0..cd.n).filter(|k| *k != i) {
            for (s, p) in pt.support(*j, k) {
                let v = zexps.entry((k, a.shift(s))).or_insert(0);
                *v += e * p.to_i64().expect("small p coefficient");
            }
        }
    }
    zexps.retain(|_, v| *v != 0);
    let r = cd.r[i] * u[i];
    let b: Vec<BigRational> = (0..cd.n)
        .map(|k| BigRational::from_integer(BigInt::from(cd.r[k] * u[k])))
        .collect();
    let perp = match solve_transpose(cd, &b) {
        Some(mut y) => {
            y[i] -= BigRational::new(BigInt::from(r), BigInt::from(2));
            Perp::Coroot(y)
        }
        None => {
            let mut coroot2: Vec<i64> = (0..cd.n).map(|j| -2 * m.depth()[j] * cd.r[j]).collect();
            coroot2[i] -= r;
            Perp::Record {
                lambda: m.lambda().to_vec(),
                coroot2,
            }
        }
    };
    TauMonomial { r, iexps, zexps, perp }
}

/// The image `k^{(i)}_{2r_i} Y_{i,aq_i^{-1}} Y_{i,aq_i}` predicted for `τ_i(A_{i,a})`.
pub fn tau_a_expected(i: usize, a: SpectralParam, cd: &CartanData) -> TauMonomial {
    let ri = cd.r[i];
    let mut iexps = BTreeMap::new();
    iexps.insert(a.shift(-ri), 1);
    *iexps.entry(a.shift(ri)).or_insert(0) += 1;
    let perp = if int_det(&cd.c).is_zero() {
        Perp::Record {
            lambda: vec![0; cd.n],
            coroot2: vec![0; cd.n],
        }
    } else {
        Perp::Coroot(vec![BigRational::zero(); cd.n])
    };
    TauMonomial {
        r: 2 * ri,
        iexps,
        zexps: BTreeMap::new(),
        perp,
    }
}

/// Checks that reducing `S_i(χ)` then applying `τ_i` agrees with applying `τ_i`
/// and reducing with the images `τ_i(A_{i,b})`.
pub fn tau_screen_commutes(chi: &QCharacter, i: usize, pt: &PTable, cd: &CartanData) -> bool {
    let mut lhs: BTreeMap<(TauMonomial, SpectralParam), BigInt> = BTreeMap::new();
    for ((m, rep), c) in screen(chi, i, cd).terms {
        *lhs.entry((tau_i(&m, i, pt, cd), rep)).or_default() += c;
    }
    let ri = cd.r[i];
    let mut rhs: BTreeMap<(TauMonomial, SpectralParam), BigInt> = BTreeMap::new();
    for (m, c) in chi.terms() {
        let t = tau_i(m, i, pt, cd);
        for (a, u) in t.iexps.clone() {
            let rep = class_rep(a, ri);
            let steps = (a.qexp - rep.qexp) / (2 * ri);
            let mut img = t.clone();
            if steps > 0 {
                for s in 1..=steps {
                    img = img.mul(&tau_a_expected(i, rep.shift((2 * s - 1) * ri), cd));
                }
            } else {
                for s in (steps + 1)..=0 {
                    img = img.mul(&tau_inverse(&tau_a_expected(i, rep.shift((2 * s - 1) * ri), cd)));
                }
            }
            *rhs.entry((img, rep)).or_default() += c * BigInt::from(u);
        }
    }
    lhs.retain(|_, v| !v.is_zero());
    rhs.retain(|_, v| !v.is_zero());
    lhs == rhs
}

fn tau_inverse(t: &TauMonomial) -> TauMonomial {
    TauMonomial {
        r: -t.r,
        iexps: t.iexps.iter().map(|(k, v)| (*k, -v)).collect(),
        zexps: t.zexps.iter().map(|(k, v)| (*k, -v)).collect(),
        perp: match &t.perp {
            Perp::Coroot(x) => Perp::Coroot(x.iter().map(|v| -v.clone()).collect()),
            Perp::Record { lambda, coroot2 } => Perp::Record {
                lambda: lambda.iter().map(|v| -v).collect(),
                coroot2: coroot2.iter().map(|v| -v).collect(),
            },
        },
    }
}
