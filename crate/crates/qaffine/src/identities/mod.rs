//! Polynomial identities behind the triangular decomposition: the q-binomial
//! vanishing, the Jing symmetrization identity, and the geometric vanishing of `P_+`.

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::exact_arith::{q_binom, LaurentPoly, MPoly, Mono, Var};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdentityError {
    #[error("s = {0} is outside the supported range {1}")]
    OutOfRange(i64, &'static str),
    #[error("B_ij = {bij} is not r_i * (1 - s) for s = {s} and a positive r_i")]
    BadEntry { s: u32, bij: i64 },
}

/// Largest `s` accepted by [`jing_identity`]; the sum has `s!` terms.
pub const MAX_JING_S: u32 = 5;

/// `sum_k (-1)^k [s choose k]_q q^{k p'}`.
pub fn q_binom_identity(s: u32, p: i64) -> LaurentPoly {
    (0..=s)
        .map(|k| {
            let b = q_binom(s, k).expect("k <= s");
            let signed = if k % 2 == 1 { -b } else { b };
            signed.shift(k as i64 * p)
        })
        .fold(LaurentPoly::zero(), |acc, t| &acc + &t)
}

/// Exponents `p'` for which [`q_binom_identity`] vanishes: `1-s, 3-s, ..., s-1`.
pub fn admissible_exponents(s: u32) -> impl Iterator<Item = i64> {
    let s = s as i64;
    (0..s).map(move |j| 1 - s + 2 * j)
}

fn lp_to_mpoly(p: &LaurentPoly) -> MPoly {
    MPoly::from_terms(p.terms().map(|(e, c)| (Mono::var_pow(Var::Q, e as i32), c.clone())))
}

fn qpow(e: i64) -> MPoly {
    MPoly::term(1, Mono::var_pow(Var::Q, e as i32))
}

/// `x - c*y` for monomial coefficient `c = q^e`.
fn lin(x: &MPoly, e: i64, y: &MPoly) -> MPoly {
    x - &(&qpow(e) * y)
}

fn permutations(s: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for idx in 0..rest.len() {
            let x = rest.remove(idx);
            prefix.push(x);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(idx, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..s).collect(), &mut out);
    out.into_iter()
        .map(|p| {
            let inv = (0..s).flat_map(|i| (i + 1..s).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let sign = if inv % 2 == 0 { 1 } else { -1 };
            (p, sign)
        })
        .collect()
}

fn jing_term(perm: &[usize], s: u32) -> MPoly {
    let z = MPoly::var(Var::Z);
    let w: Vec<MPoly> = perm.iter().map(|&p| MPoly::var(Var::w(p + 1))).collect();
    let e = s as i64 - 1;
    let n = s as usize;
    // prefix[k] = prod_{t<k} (z - q^{s-1} w_t), suffix[k] = prod_{t>=k} (w_t - q^{s-1} z)
    let mut prefix = vec![MPoly::one()];
    for wt in &w {
        let next = prefix.last().expect("nonempty") * &lin(&z, e, wt);
        prefix.push(next);
    }
    let mut suffix = vec![MPoly::one(); n + 1];
    for k in (0..n).rev() {
        suffix[k] = &suffix[k + 1] * &lin(&w[k], e, &z);
    }
    let mut inner = MPoly::zero();
    for k in 0..=n {
        let b = lp_to_mpoly(&q_binom(s, k as u32).expect("k <= s"));
        inner = inner + &b * &(&prefix[k] * &suffix[k]);
    }
    let mut vander = MPoly::one();
    for r in 0..n {
        for r2 in r + 1..n {
            vander = &vander * &lin(&w[r], 2, &w[r2]);
        }
    }
    &inner * &vander
}

fn jing_sum(s: u32, flip: Option<usize>) -> Result<MPoly, IdentityError> {
    if !(1..=MAX_JING_S).contains(&s) {
        return Err(IdentityError::OutOfRange(s as i64, "1..=5"));
    }
    let perms = permutations(s as usize);
    Ok(perms
        .par_iter()
        .enumerate()
        .map(|(idx, (p, sign))| {
            let sign = if flip == Some(idx) { -sign } else { *sign };
            jing_term(p, s).scale(&BigInt::from(sign))
        })
        .reduce(MPoly::zero, |a, b| a + b))
}

/// The signed sum over `S_s` of the Jing identity in `z, w_1, ..., w_s`; expected zero.
pub fn jing_identity(s: u32) -> Result<MPoly, IdentityError> {
    jing_sum(s, None)
}

/// [`jing_identity`] with the sign of the `idx`-th permutation reversed.
pub fn jing_identity_flipped(s: u32, idx: usize) -> Result<MPoly, IdentityError> {
    jing_sum(s, Some(idx))
}

fn ri_of(s: u32, bij: i64) -> Result<i64, IdentityError> {
    if s == 1 {
        return if bij == 0 { Ok(1) } else { Err(IdentityError::BadEntry { s, bij }) };
    }
    let c = 1 - s as i64;
    if bij % c != 0 || bij / c <= 0 {
        return Err(IdentityError::BadEntry { s, bij });
    }
    Ok(bij / c)
}

/// `P_+(w_1, ..., w_s, z)` at the given values of the `w_t`.
pub fn techun_at(s: u32, bij: i64, ws: &[MPoly]) -> Result<MPoly, IdentityError> {
    let ri = ri_of(s, bij)?;
    assert_eq!(ws.len(), s as usize, "need one value per w_t");
    let z = MPoly::var(Var::Z);
    let n = s as usize;
    let mut out = MPoly::zero();
    for k in 0..=n {
        let b = q_binom(s, k as u32).expect("k <= s").scale_exponents(ri);
        let mut term = lp_to_mpoly(&b);
        if k % 2 == 1 {
            term = -term;
        }
        for (t, wt) in ws.iter().enumerate() {
            let f = if t < k { lin(wt, bij, &z) } else { &(&qpow(bij) * wt) - &z };
            term = &term * &f;
        }
        out = out + term;
    }
    Ok(out)
}

/// `P_+` at `w_t = q_i^{-2(s-t)} w`; expected zero.
pub fn techun_vanishing(s: u32, bij: i64) -> Result<MPoly, IdentityError> {
    if !(1..=8).contains(&s) {
        return Err(IdentityError::OutOfRange(s as i64, "1..=8"));
    }
    let ri = ri_of(s, bij)?;
    let w = MPoly::var(Var::w(1));
    let ws: Vec<MPoly> = (1..=s as i64).map(|t| &qpow(-2 * ri * (s as i64 - t)) * &w).collect();
    techun_at(s, bij, &ws)
}
