//! `sl2` strings, Frenkel–Mukhin expansion, decomposition into simples and fusion.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cartan::{quantized_cartan, CartanData};
use crate::monomial::{a_inverse, classical_weight, is_dominant, Monomial, SpectralParam};
use crate::screening::{QCharacter, ScreeningError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QcharError {
    #[error("expansion undefined for this Cartan datum: {0}")]
    NotApplicable(String),
    #[error("inconsistent multiplicity: {0}")]
    InconsistentMultiplicity(String),
    #[error("truncation too shallow to close the decomposition: {0}")]
    DepthExhausted(String),
    #[error("seed is not dominant: {0}")]
    NotDominant(String),
    #[error(transparent)]
    Screening(#[from] ScreeningError),
}

/// The `q_i^2`-string `Y_a Y_{aq_i^2} ⋯ Y_{aq_i^{2(k-1)}}` at one node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2String {
    pub a: SpectralParam,
    pub k: usize,
}

impl Sl2String {
    /// Spectral parameters of the string at node with symmetrizer `ri`.
    pub fn points(&self, ri: i64) -> Vec<SpectralParam> {
        (0..self.k as i64).map(|s| self.a.shift(2 * ri * s)).collect()
    }

    /// General position: the union is not a string, or one contains the other.
    pub fn general_position(&self, o: &Sl2String, ri: i64) -> bool {
        if self.a.orbit != o.a.orbit || (self.a.qexp - o.a.qexp).rem_euclid(2 * ri) != 0 {
            return true;
        }
        let (s1, e1) = (self.a.qexp, self.a.qexp + 2 * ri * self.k as i64);
        let (s2, e2) = (o.a.qexp, o.a.qexp + 2 * ri * o.k as i64);
        let contains = (s1 <= s2 && e2 <= e1) || (s2 <= s1 && e1 <= e2);
        let union_is_string = s1.max(s2) <= e1.min(e2);
        contains || !union_is_string
    }
}

/// Lowering chain of a string: step `t` multiplies by `A^{-1}_{i, a q_i^{2k-2t+1}}`.
fn string_steps(i: usize, s: &Sl2String, cd: &CartanData) -> Vec<Monomial> {
    let ri = cd.r[i];
    let k = s.k as i64;
    (1..=k).map(|t| a_inverse(i, s.a.shift(ri * (2 * k - 2 * t + 1)), cd)).collect()
}

pub fn string_top(i: usize, s: &Sl2String, cd: &CartanData) -> Monomial {
    Monomial::from_exps(cd.n, s.points(cd.r[i]).into_iter().map(|p| ((i, p), 1)))
}

/// `k+1` terms obtained from the top by the descending ladder of `A^{-1}`'s.
pub fn sl2_string_char(i: usize, s: &Sl2String, cd: &CartanData, depth: i64) -> QCharacter {
    let mut m = string_top(i, s, cd);
    let mut chi = QCharacter::new(cd.n, depth);
    chi.add_term(m.clone(), BigInt::one());
    for step in string_steps(i, s, cd) {
        m = m.mul(&step);
        chi.add_term(m.clone(), BigInt::one());
    }
    chi
}

/// Greedy decomposition of the node-`i` part of a dominant monomial into strings in general position.
pub fn string_decomposition(m: &Monomial, i: usize, cd: &CartanData) -> Vec<Sl2String> {
    let ri = cd.r[i];
    let mut pool: BTreeMap<(u32, i64, i64), i64> = BTreeMap::new();
    for (a, e) in m.node_exps(i) {
        if e > 0 {
            pool.insert((a.orbit, a.qexp.rem_euclid(2 * ri), a.qexp), e);
        }
    }
    let mut out = Vec::new();
    while let Some((&(orbit, class, start), _)) = pool.iter().next() {
        let mut k = 0usize;
        let mut q = start;
        while let Some(c) = pool.get_mut(&(orbit, class, q)) {
            *c -= 1;
            if *c == 0 {
                pool.remove(&(orbit, class, q));
            }
            k += 1;
            q += 2 * ri;
        }
        out.push(Sl2String {
            a: SpectralParam::new(orbit, start),
            k,
        });
    }
    out
}

/// Lifted `sl2` simple character of the node-`i` part of `m`, as multipliers of `m`.
fn i_expansion(m: &Monomial, i: usize, cd: &CartanData, max_extra: i64) -> BTreeMap<Monomial, BigInt> {
    let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    acc.insert(Monomial::one(cd.n), BigInt::one());
    for s in string_decomposition(m, i, cd) {
        let mut ladder = vec![Monomial::one(cd.n)];
        for step in string_steps(i, &s, cd) {
            let next = ladder.last().unwrap().mul(&step);
            ladder.push(next);
        }
        let mut next: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (f, c) in &acc {
            for l in &ladder {
                let g = f.mul(l);
                if g.total_depth() <= max_extra {
                    *next.entry(g).or_default() += c;
                }
            }
        }
        acc = next;
    }
    acc
}

/// Simple character of an `i`-dominant monomial restricted to node `i`, lifted globally.
pub fn sl2_simple_char(m: &Monomial, i: usize, cd: &CartanData, depth: i64) -> QCharacter {
    let mut chi = QCharacter::new(cd.n, depth);
    for (f, c) in i_expansion(m, i, cd, depth - m.total_depth()) {
        chi.add_term(m.mul(&f), c);
    }
    chi
}

/// Gate for the expansion: fails when some `C_{ij}C_{ji} > 3` and `det C(z) = 0`.
pub fn check_applicable(cd: &CartanData) -> Result<(), QcharError> {
    let mut worst = None;
    for i in 0..cd.n {
        for j in 0..cd.n {
            if i != j && cd.c[i][j] * cd.c[j][i] > 3 {
                worst = Some((i, j));
            }
        }
    }
    if let Some((i, j)) = worst {
        if quantized_cartan(cd).det.is_zero() {
            return Err(QcharError::NotApplicable(format!(
                "C_{0}{1}*C_{1}{0} = {2} exceeds 3 and det C(z) vanishes, so the i-expansions cannot be matched",
                i + 1,
                j + 1,
                cd.c[i][j] * cd.c[j][i]
            )));
        }
    }
    Ok(())
}

#[derive(Default)]
struct Slot {
    colors: Vec<BigInt>,
}

/// Frenkel–Mukhin expansion of a dominant seed, truncated at absolute depth `depth`.
pub fn fm_expand(seed: &Monomial, depth: i64, cd: &CartanData) -> Result<QCharacter, QcharError> {
    check_applicable(cd)?;
    if !is_dominant(seed) {
        return Err(QcharError::NotDominant(seed.render(true)));
    }
    let n = cd.n;
    let mut chi = QCharacter::new(n, depth);
    let mut pending: BTreeMap<Monomial, Slot> = BTreeMap::new();
    pending.insert(
        seed.clone(),
        Slot {
            colors: vec![BigInt::zero(); n],
        },
    );
    let mut first = true;
    while let Some((m, slot)) = pending.pop_first() {
        if m.total_depth() > depth {
            break;
        }
        let s = if first {
            first = false;
            BigInt::one()
        } else {
            slot.colors.iter().max().cloned().unwrap_or_default()
        };
        if s.is_zero() {
            continue;
        }
        if s.is_negative() {
            return Err(QcharError::InconsistentMultiplicity(format!(
                "negative multiplicity {s} at {}",
                m.render(true)
            )));
        }
        if m != *seed && is_dominant(&m) {
            return Err(QcharError::InconsistentMultiplicity(format!(
                "dominant monomial {} reached with multiplicity {s}",
                m.render(true)
            )));
        }
        for i in 0..n {
            let deficit = &s - &slot.colors[i];
            if deficit.is_zero() {
                continue;
            }
            if !m.is_i_dominant(i) {
                return Err(QcharError::InconsistentMultiplicity(format!(
                    "{} needs {deficit} more from node {} but is not {}-dominant",
                    m.render(true),
                    i + 1,
                    i + 1
                )));
            }
            for (f, c) in i_expansion(&m, i, cd, depth - m.total_depth()) {
                if f.is_one() {
                    continue;
                }
                let target = m.mul(&f);
                let e = pending.entry(target).or_insert_with(|| Slot {
                    colors: vec![BigInt::zero(); n],
                });
                e.colors[i] += &deficit * c;
            }
        }
        chi.add_term(m, s);
    }
    Ok(chi)
}

/// Multiplicities `λ_m` with `χ = Σ λ_m F(m)` for a kernel element.
pub type FusionTable = BTreeMap<Monomial, BigInt>;

pub fn decompose(chi: &QCharacter, cd: &CartanData) -> Result<FusionTable, QcharError> {
    let depth = chi.truncation_depth();
    let mut residual = chi.clone();
    let mut table = FusionTable::new();
    let mut cache: HashMap<Monomial, QCharacter> = HashMap::new();
    while let Some((m, c)) = residual
        .dominant_terms()
        .first()
        .map(|(m, c)| ((*m).clone(), (*c).clone()))
    {
        let f = match cache.get(&m) {
            Some(f) => f.clone(),
            None => {
                let f = fm_expand(&m, depth, cd)?;
                cache.insert(m.clone(), f.clone());
                f
            }
        };
        residual = residual.sub(&f.scale(&c));
        *table.entry(m).or_default() += c;
    }
    table.retain(|_, c| !c.is_zero());
    if let Some((m, _)) = residual.terms().next() {
        return Err(QcharError::DepthExhausted(format!(
            "non-dominant residual {} left after removing all simples",
            m.render(true)
        )));
    }
    Ok(table)
}

pub fn fuse(m1: &Monomial, m2: &Monomial, depth: i64, cd: &CartanData) -> Result<FusionTable, QcharError> {
    let chi = fm_expand(m1, depth, cd)?.mul(&fm_expand(m2, depth, cd)?);
    decompose(&chi, cd)
}

/// Pushforward of coefficients along the classical weight `(λ, n)`.
pub fn classical_char(chi: &QCharacter) -> BTreeMap<(Vec<i64>, Vec<i64>), BigInt> {
    let mut out: BTreeMap<(Vec<i64>, Vec<i64>), BigInt> = BTreeMap::new();
    for (m, c) in chi.terms() {
        *out.entry(classical_weight(m)).or_default() += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn classical_dimension(chi: &QCharacter) -> BigInt {
    chi.terms().map(|(_, c)| c.clone()).sum()
}
