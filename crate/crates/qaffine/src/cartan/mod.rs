//! Generalized Cartan matrices, symmetrizers and the quantized Cartan matrix `C(z)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::exact_arith::{lp_adjugate, lp_det, q_int, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CartanError {
    #[error("not a generalized Cartan matrix: {0}")]
    NotGcm(String),
    #[error("not symmetrizable: {0}")]
    NotSymmetrizable(String),
    #[error("det C(z) vanishes identically")]
    SingularCz,
}

/// A symmetrizable generalized Cartan matrix together with its symmetrizer `D = diag(r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanData {
    pub n: usize,
    pub c: Vec<Vec<i64>>,
    pub r: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CartanType {
    Finite,
    Affine,
    Indefinite,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CartanType::Finite => "finite",
            CartanType::Affine => "affine",
            CartanType::Indefinite => "indefinite",
        })
    }
}

/// Entries of `C(z)` with determinant and adjugate, so `C(z)^{-1} = adj / det` when `det != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantizedCartan {
    pub entries: Vec<Vec<LaurentPoly>>,
    pub det: LaurentPoly,
    pub adj: Vec<Vec<LaurentPoly>>,
}

/// Coefficients `p_{i,j}(r)` of `D(z)·adj C(z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PTable {
    polys: Vec<Vec<LaurentPoly>>,
    window: (i64, i64),
}

impl PTable {
    pub fn n(&self) -> usize {
        self.polys.len()
    }

    /// `p_{i,j}(r)`, zero outside the window.
    pub fn p(&self, i: usize, j: usize, r: i64) -> BigInt {
        if r < self.window.0 || r > self.window.1 {
            return BigInt::zero();
        }
        self.polys[i][j].coeff(r)
    }

    pub fn poly(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.polys[i][j]
    }

    /// Nonzero `(r, p_{i,j}(r))` pairs inside the window, ascending in `r`.
    pub fn support(&self, i: usize, j: usize) -> Vec<(i64, BigInt)> {
        self.polys[i][j]
            .terms()
            .filter(|(e, _)| *e >= self.window.0 && *e <= self.window.1)
            .map(|(e, c)| (e, c.clone()))
            .collect()
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }
}

impl CartanData {
    /// Connected components of the Dynkin diagram, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                for j in 0..self.n {
                    if !seen[j] && self.c[i][j] != 0 {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// `(D(z)C(z))_{ij}` is symmetric; required for the `τ_i` identities.
    pub fn quantum_symmetric(&self) -> bool {
        let qc = quantized_cartan(self);
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                &q_int(self.r[i]) * &qc.entries[i][j] == &q_int(self.r[j]) * &qc.entries[j][i]
            })
        })
    }
}

fn validate_gcm(c: &[Vec<i64>]) -> Result<usize, CartanError> {
    let n = c.len();
    if n == 0 {
        return Err(CartanError::NotGcm("empty matrix".into()));
    }
    for (i, row) in c.iter().enumerate() {
        if row.len() != n {
            return Err(CartanError::NotGcm(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                row.len(),
                n
            )));
        }
    }
    for i in 0..n {
        if c[i][i] != 2 {
            return Err(CartanError::NotGcm(format!("diagonal entry ({0},{0}) is not 2", i + 1)));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if c[i][j] > 0 {
                return Err(CartanError::NotGcm(format!(
                    "off-diagonal entry ({},{}) is positive",
                    i + 1,
                    j + 1
                )));
            }
            if (c[i][j] == 0) != (c[j][i] == 0) {
                return Err(CartanError::NotGcm(format!(
                    "entries ({0},{1}) and ({1},{0}) are not simultaneously zero",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(n)
}

fn minimal_symmetrizer(c: &[Vec<i64>]) -> Result<Vec<i64>, CartanError> {
    let n = c.len();
    let mut r: Vec<Option<Rational64>> = vec![None; n];
    for s in 0..n {
        if r[s].is_some() {
            continue;
        }
        r[s] = Some(Rational64::from_integer(1));
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            let ri = r[i].unwrap();
            for j in 0..n {
                if i == j || c[i][j] == 0 {
                    continue;
                }
                let want = ri * Rational64::new(c[i][j], c[j][i]);
                match r[j] {
                    None => {
                        r[j] = Some(want);
                        comp.push(j);
                    }
                    Some(rj) if rj != want => {
                        return Err(CartanError::NotSymmetrizable(format!(
                            "cycle through nodes {} and {} forces incompatible ratios",
                            i + 1,
                            j + 1
                        )));
                    }
                    _ => {}
                }
            }
            k += 1;
        }
        let l = comp.iter().fold(1i64, |acc, &i| acc.lcm(r[i].unwrap().denom()));
        let ints: Vec<i64> = comp.iter().map(|&i| (r[i].unwrap() * l).to_integer()).collect();
        let g = ints.iter().fold(0i64, |acc, v| acc.gcd(v));
        for (&i, v) in comp.iter().zip(ints) {
            r[i] = Some(Rational64::from_integer(v / g));
        }
    }
    Ok(r.into_iter().map(|x| x.unwrap().to_integer()).collect())
}

/// Validates `c` and attaches a symmetrizer, computing the minimal one per component if `r` is `None`.
pub fn build_cartan(c: &[Vec<i64>], r: Option<&[i64]>) -> Result<CartanData, CartanError> {
    let n = validate_gcm(c)?;
    let r = match r {
        Some(r) => {
            if r.len() != n {
                return Err(CartanError::NotSymmetrizable(format!(
                    "symmetrizer has {} entries, expected {}",
                    r.len(),
                    n
                )));
            }
            if let Some(i) = r.iter().position(|x| *x <= 0) {
                return Err(CartanError::NotSymmetrizable(format!(
                    "r_{} must be positive",
                    i + 1
                )));
            }
            for i in 0..n {
                for j in 0..n {
                    if r[i] * c[i][j] != r[j] * c[j][i] {
                        return Err(CartanError::NotSymmetrizable(format!(
                            "DC is not symmetric at ({},{})",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
            r.to_vec()
        }
        None => minimal_symmetrizer(c)?,
    };
    Ok(CartanData {
        n,
        c: c.to_vec(),
        r,
    })
}

pub fn quantized_cartan(cd: &CartanData) -> QuantizedCartan {
    let entries: Vec<Vec<LaurentPoly>> = (0..cd.n)
        .map(|i| {
            (0..cd.n)
                .map(|j| {
                    if i == j {
                        &LaurentPoly::monomial(1, cd.r[i]) + &LaurentPoly::monomial(1, -cd.r[i])
                    } else {
                        q_int(cd.c[i][j])
                    }
                })
                .collect()
        })
        .collect();
    let det = lp_det(&entries);
    let adj = lp_adjugate(&entries);
    QuantizedCartan { entries, det, adj }
}

/// Sufficient condition for `det C(z) != 0`: `C_{ij} < -1` implies `-C_{ji} <= r_i`.
pub fn check_invertibility_condition(cd: &CartanData) -> bool {
    (0..cd.n).all(|i| {
        (0..cd.n).all(|j| i == j || cd.c[i][j] >= -1 || -cd.c[j][i] <= cd.r[i])
    })
}

pub fn pij_coeffs(
    qc: &QuantizedCartan,
    cd: &CartanData,
    window: std::ops::RangeInclusive<i64>,
) -> Result<PTable, CartanError> {
    if qc.det.is_zero() {
        return Err(CartanError::SingularCz);
    }
    let polys = (0..cd.n)
        .map(|i| {
            let d = q_int(cd.r[i]);
            (0..cd.n).map(|j| &d * &qc.adj[i][j]).collect()
        })
        .collect();
    Ok(PTable {
        polys,
        window: (*window.start(), *window.end()),
    })
}

/// The full `p`-table, with the window covering the whole support.
pub fn pij_table(cd: &CartanData) -> Result<PTable, CartanError> {
    pij_coeffs(&quantized_cartan(cd), cd, i64::MIN..=i64::MAX)
}

pub(crate) fn int_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|x| BigInt::from(*x)).collect())
        .collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

fn principal_minor(c: &[Vec<i64>], idx: &[usize]) -> BigInt {
    let sub: Vec<Vec<i64>> = idx
        .iter()
        .map(|&i| idx.iter().map(|&j| c[i][j]).collect())
        .collect();
    int_det(&sub)
}

/// Finite if every principal minor is positive; affine if every proper one is and `det C = 0`.
pub fn classify(cd: &CartanData) -> CartanType {
    let n = cd.n;
    assert!(n <= 16, "classification is exponential in the rank");
    let mut proper_positive = true;
    for mask in 1u32..(1 << n) - 1 {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if !principal_minor(&cd.c, &idx).is_positive() {
            proper_positive = false;
            break;
        }
    }
    let full = principal_minor(&cd.c, &(0..n).collect::<Vec<_>>());
    match (proper_positive, full.is_positive(), full.is_zero()) {
        (true, true, _) => CartanType::Finite,
        (true, _, true) => CartanType::Affine,
        _ => CartanType::Indefinite,
    }
}

/// Rendering of a `PTable` row for reports, keyed by exponent.
pub fn ptable_row(pt: &PTable, i: usize, j: usize) -> BTreeMap<i64, BigInt> {
    pt.support(i, j).into_iter().collect()
}
