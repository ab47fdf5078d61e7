//! The Drinfeld new coproduct `Delta_u` on sl2 evaluation modules.
//!
//! Actions of `x^±_r` are stored as closed forms in `r`, and `phi^±(z)` as one
//! partial-fraction rational function whose two expansions give both families
//! of modes.

mod closed_form;
pub mod linalg;

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

pub use closed_form::{ExpPoly, PartialFrac};
use linalg::{inverse, mat_mul, mat_scale, mat_sub, mat_vec, nullspace, rank, Mat};

use crate::exact_arith::{geom_sum, ArithError, Mono, RatFn, Var};
use crate::monomial::{sl2_l_weight, Monomial};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoproductError {
    #[error("geometric ratio {0} is identically u^-1")]
    ResummationPole(String),
    #[error("product of l-weights has a double pole at {0}")]
    DoublePole(String),
    #[error("entry {0} leaves the C[u, u^-1]-span")]
    NotClosed(String),
    #[error("entry {0} has a pole at u = 1")]
    PoleAtOne(String),
    #[error("base change is singular")]
    Singular,
    #[error("expected a 4-dimensional tensor of two evaluation modules, got dimension {0}")]
    NotTwoByTwo(usize),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A finite-dimensional module over the sl2 quantum affinization.
///
/// Matrix entry `[i][j]` is the coefficient of basis vector `i` in the image of
/// basis vector `j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleTable {
    pub labels: Vec<String>,
    pub weights: Vec<i64>,
    pub xplus: Vec<Vec<ExpPoly>>,
    pub xminus: Vec<Vec<ExpPoly>>,
    pub phi: Vec<Vec<PartialFrac>>,
}

fn eval_closed(m: &[Vec<ExpPoly>], r: i64) -> Mat {
    m.iter().map(|row| row.iter().map(|e| e.eval(r)).collect()).collect()
}

impl ModuleTable {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn xplus_at(&self, r: i64) -> Mat {
        eval_closed(&self.xplus, r)
    }

    pub fn xminus_at(&self, r: i64) -> Mat {
        eval_closed(&self.xminus, r)
    }

    /// Matrix of `phi^+_n - phi^-_n`.
    pub fn phi_diff_at(&self, n: i64) -> Mat {
        self.phi
            .iter()
            .map(|row| row.iter().map(|p| p.mode_diff().eval(n)).collect())
            .collect()
    }

    /// `phi(z)` as a matrix of rational functions in `z`.
    pub fn phi_ratfn(&self) -> Mat {
        self.phi.iter().map(|row| row.iter().map(|p| p.to_ratfn()).collect()).collect()
    }

    pub fn substitute(&self, v: Var, m: &Mono) -> Result<ModuleTable, ArithError> {
        let sub_e = |t: &Vec<Vec<ExpPoly>>| -> Result<Vec<Vec<ExpPoly>>, ArithError> {
            t.iter().map(|row| row.iter().map(|e| e.substitute(v, m)).collect()).collect()
        };
        Ok(ModuleTable {
            labels: self.labels.clone(),
            weights: self.weights.clone(),
            xplus: sub_e(&self.xplus)?,
            xminus: sub_e(&self.xminus)?,
            phi: self
                .phi
                .iter()
                .map(|row| row.iter().map(|p| p.substitute(v, m)).collect())
                .collect::<Result<_, _>>()?,
        })
    }

    /// True if `x^±` shift weights by `±2` and `phi` preserves them.
    pub fn weights_compatible(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let (wi, wj) = (self.weights[i], self.weights[j]);
                (self.xplus[i][j].is_zero() || wi == wj + 2)
                    && (self.xminus[i][j].is_zero() || wi == wj - 2)
                    && (self.phi[i][j].is_zero() || wi == wj)
            })
        })
    }

    /// Copy with the sign of the first nonzero `x^+` entry flipped.
    pub fn corrupted(&self) -> ModuleTable {
        let mut t = self.clone();
        'outer: for row in t.xplus.iter_mut() {
            for e in row.iter_mut() {
                if !e.is_zero() {
                    *e = -&*e;
                    break 'outer;
                }
            }
        }
        t
    }

    /// Renders the action table, one line per generator and basis vector.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let combo = |col: &mut dyn Iterator<Item = (usize, String)>| -> String {
            let parts: Vec<String> = col.map(|(i, s)| format!("[{}] {}", s, self.labels[i])).collect();
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            }
        };
        for j in 0..self.dim() {
            let mut it = (0..self.dim())
                .filter(|&i| !self.xplus[i][j].is_zero())
                .map(|i| (i, self.xplus[i][j].to_string()));
            out.push_str(&format!("x_r^+\t{}\t{}\n", self.labels[j], combo(&mut it)));
        }
        for j in 0..self.dim() {
            let mut it = (0..self.dim())
                .filter(|&i| !self.xminus[i][j].is_zero())
                .map(|i| (i, self.xminus[i][j].to_string()));
            out.push_str(&format!("x_r^-\t{}\t{}\n", self.labels[j], combo(&mut it)));
        }
        for j in 0..self.dim() {
            let mut it = (0..self.dim())
                .filter(|&i| !self.phi[i][j].is_zero())
                .map(|i| (i, self.phi[i][j].to_ratfn().to_string()));
            out.push_str(&format!("phi(z)\t{}\t{}\n", self.labels[j], combo(&mut it)));
        }
        out
    }
}

fn label_prefix(v: Var) -> &'static str {
    match v {
        Var::A => "v",
        Var::B => "w",
        Var::C => "t",
        _ => "e",
    }
}

/// The two-dimensional evaluation module `L(1 - a z)` at spectral symbol `a`.
pub fn eval_module(a: Var) -> ModuleTable {
    let q = RatFn::var(Var::Q);
    let qi = q.inv().expect("q is nonzero");
    let g = Mono::var(a);
    let p = label_prefix(a);
    let z = ExpPoly::zero;
    ModuleTable {
        labels: vec![format!("{p}0"), format!("{p}1")],
        weights: vec![1, -1],
        xplus: vec![vec![z(), ExpPoly::power(g)], vec![z(), z()]],
        xminus: vec![vec![z(), z()], vec![ExpPoly::power(g), z()]],
        phi: vec![
            vec![PartialFrac::new(qi.clone(), [(g, &q - &qi)]), PartialFrac::zero()],
            vec![PartialFrac::zero(), PartialFrac::new(q.clone(), [(g, &qi - &q)])],
        ],
    }
}

/// `sum_{l>=0} u^{r+l} phi^-_{-l} x_{r+l}` for one entry pair, resummed.
fn resum_plus(phi: &PartialFrac, x: &ExpPoly) -> Result<ExpPoly, CoproductError> {
    let u = Mono::var(Var::U);
    let mut out = ExpPoly::zero();
    if phi.is_zero() {
        return Ok(out);
    }
    for (h, c) in x.terms() {
        let mut k = phi.alpha().clone();
        for (g, b) in phi.poles() {
            let ratio = h.div(g);
            let gs = geom_sum(&RatFn::from_mono(&ratio))
                .map_err(|_| CoproductError::ResummationPole(ratio.to_string()))?;
            k = k - &(b * &gs).mul_mono(&ratio.mul(&u));
        }
        out = &out + &ExpPoly::term(c * &k, h.mul(&u));
    }
    Ok(out)
}

/// `sum_{l>=0} u^l x_{r-l} phi^+_l` for one entry pair, resummed.
fn resum_minus(x: &ExpPoly, phi: &PartialFrac) -> Result<ExpPoly, CoproductError> {
    let mut out = ExpPoly::zero();
    if phi.is_zero() {
        return Ok(out);
    }
    for (g, c) in x.terms() {
        let mut k = phi.alpha().clone();
        for (h, b) in phi.poles() {
            let ratio = h.div(g);
            let gs = geom_sum(&RatFn::from_mono(&ratio))
                .map_err(|_| CoproductError::ResummationPole(ratio.to_string()))?;
            k = k + b * &gs;
        }
        out = &out + &ExpPoly::term(c * &k, *g);
    }
    Ok(out)
}

/// `phi^V(z) ⊗ phi^W(uz)` on the tensor basis `i + dim(V) * j`.
pub fn tensor_phi(v: &ModuleTable, w: &ModuleTable) -> Result<Vec<Vec<PartialFrac>>, CoproductError> {
    let (dv, dw) = (v.dim(), w.dim());
    let u = Mono::var(Var::U);
    let mut phi = vec![vec![PartialFrac::zero(); dv * dw]; dv * dw];
    for (i2, i, j2, j) in quad(dv, dw) {
        let a = &v.phi[i2][i];
        let b = &w.phi[j2][j];
        if a.is_zero() || b.is_zero() {
            continue;
        }
        phi[i2 + dv * j2][i + dv * j] =
            a.mul(&b.dilate(&u)).ok_or_else(|| CoproductError::DoublePole(format!("{:?}", a)))?;
    }
    Ok(phi)
}

fn quad(dv: usize, dw: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..dv).flat_map(move |i2| {
        (0..dv).flat_map(move |i| (0..dw).flat_map(move |j2| (0..dw).map(move |j| (i2, i, j2, j))))
    })
}

/// The tensor module `V ⊗ W` under `Delta_u`, with basis index `i + dim(V) * j`.
pub fn delta_u_tensor(v: &ModuleTable, w: &ModuleTable) -> Result<ModuleTable, CoproductError> {
    let (dv, dw) = (v.dim(), w.dim());
    let n = dv * dw;
    let u = Mono::var(Var::U);
    let mut xplus = vec![vec![ExpPoly::zero(); n]; n];
    let mut xminus = vec![vec![ExpPoly::zero(); n]; n];
    for (i2, i, j2, j) in quad(dv, dw) {
        let (row, col) = (i2 + dv * j2, i + dv * j);
        let mut p = resum_plus(&v.phi[i2][i], &w.xplus[j2][j])?;
        let mut m = resum_minus(&v.xminus[i2][i], &w.phi[j2][j])?;
        if j == j2 {
            p = &p + &v.xplus[i2][i];
        }
        if i == i2 {
            m = &m + &w.xminus[j2][j].dilate(&u);
        }
        xplus[row][col] = p;
        xminus[row][col] = m;
    }
    let mut labels = vec![String::new(); n];
    let mut weights = vec![0; n];
    for j in 0..dw {
        for i in 0..dv {
            labels[i + dv * j] = format!("{}⊗{}", v.labels[i], w.labels[j]);
            weights[i + dv * j] = v.weights[i] + w.weights[j];
        }
    }
    Ok(ModuleTable {
        labels,
        weights,
        xplus,
        xminus,
        phi: tensor_phi(v, w)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `[x^+_r, x^-_s] = (phi^+_{r+s} - phi^-_{r+s})/(q - q^-1)`
    PlusMinus,
    /// `x^+_{r+1} x^+_s - q^2 x^+_s x^+_{r+1} = q^2 x^+_r x^+_{s+1} - x^+_{s+1} x^+_r`
    QCommPlus,
    /// The same with `x^-` and `q^-2`.
    QCommMinus,
}

#[derive(Debug, Clone)]
pub struct RelationInstance {
    pub relation: Relation,
    pub r: i64,
    pub s: i64,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct RelationReport {
    pub weights_ok: bool,
    pub instances: Vec<RelationInstance>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.weights_ok && self.instances.iter().all(|i| i.holds)
    }

    pub fn failures(&self) -> Vec<&RelationInstance> {
        self.instances.iter().filter(|i| !i.holds).collect()
    }
}

fn comm(a: &Mat, b: &Mat, k: &RatFn) -> Mat {
    mat_sub(&mat_mul(a, b), &mat_scale(&mat_mul(b, a), k))
}

/// Checks the defining relations for all `r, s` in `window`.
pub fn relation_check(t: &ModuleTable, window: std::ops::RangeInclusive<i64>) -> RelationReport {
    let (lo, hi) = (*window.start(), *window.end());
    let q = RatFn::var(Var::Q);
    let q2 = &q * &q;
    let qm2 = q2.inv().expect("q is nonzero");
    let denom = (&q - &q.inv().expect("q is nonzero")).inv().expect("q - 1/q is nonzero");
    let xp: Vec<Mat> = (lo..=hi + 1).map(|r| t.xplus_at(r)).collect();
    let xm: Vec<Mat> = (lo..=hi + 1).map(|r| t.xminus_at(r)).collect();
    let at = |v: &Vec<Mat>, r: i64| v[(r - lo) as usize].clone();
    let pairs: Vec<(i64, i64)> = window.clone().flat_map(|r| window.clone().map(move |s| (r, s))).collect();
    let instances = pairs
        .par_iter()
        .flat_map_iter(|&(r, s)| {
            let pm = mat_sub(&mat_mul(&at(&xp, r), &at(&xm, s)), &mat_mul(&at(&xm, s), &at(&xp, r)));
            let rhs = mat_scale(&t.phi_diff_at(r + s), &denom);
            let qc = |x: &Vec<Mat>, k: &RatFn| {
                let lhs = comm(&at(x, r + 1), &at(x, s), k);
                let rhs = mat_sub(&mat_scale(&mat_mul(&at(x, r), &at(x, s + 1)), k), &mat_mul(&at(x, s + 1), &at(x, r)));
                lhs == rhs
            };
            [
                RelationInstance {
                    relation: Relation::PlusMinus,
                    r,
                    s,
                    holds: pm == rhs,
                },
                RelationInstance {
                    relation: Relation::QCommPlus,
                    r,
                    s,
                    holds: qc(&xp, &q2),
                },
                RelationInstance {
                    relation: Relation::QCommMinus,
                    r,
                    s,
                    holds: qc(&xm, &qm2),
                },
            ]
        })
        .collect();
    RelationReport {
        weights_ok: t.weights_compatible(),
        instances,
    }
}

/// A change of basis whose span is stable under the generators over `C[u, u^-1]`.
#[derive(Debug, Clone)]
pub struct UForm {
    /// Column `k` holds `e_{k+1}` in the tensor basis.
    pub basis: Mat,
    pub table: ModuleTable,
}

fn conj_closed(pinv: &Mat, x: &[Vec<ExpPoly>], p: &Mat) -> Vec<Vec<ExpPoly>> {
    let n = p.len();
    let mut out = vec![vec![ExpPoly::zero(); n]; n];
    for (k, row) in out.iter_mut().enumerate() {
        for (l, slot) in row.iter_mut().enumerate() {
            for i in 0..n {
                if pinv[k][i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if p[j][l].is_zero() || x[i][j].is_zero() {
                        continue;
                    }
                    *slot = &*slot + &x[i][j].scale(&(&pinv[k][i] * &p[j][l]));
                }
            }
        }
    }
    out
}

fn conj_phi(pinv: &Mat, x: &[Vec<PartialFrac>], p: &Mat) -> Vec<Vec<PartialFrac>> {
    let n = p.len();
    let mut out = vec![vec![PartialFrac::zero(); n]; n];
    for (k, row) in out.iter_mut().enumerate() {
        for (l, slot) in row.iter_mut().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    if pinv[k][i].is_zero() || p[j][l].is_zero() || x[i][j].is_zero() {
                        continue;
                    }
                    *slot = slot.add(&x[i][j].scale(&(&pinv[k][i] * &p[j][l])));
                }
            }
        }
    }
    out
}

/// Window of modes used for span-closure checks.
pub const CLOSURE_WINDOW: std::ops::RangeInclusive<i64> = -3..=3;

/// Builds `e1 = v0⊗w0`, `e2 = x_0^- e1`, `e3 = -a^-1 x_1^- e1 + e2` and
/// `e4 = x_0^- e2 / (q + q^-1)`, and checks that their span is a `C[u, u^-1]`-form.
pub fn u_form(t: &ModuleTable) -> Result<UForm, CoproductError> {
    if t.dim() != 4 {
        return Err(CoproductError::NotTwoByTwo(t.dim()));
    }
    let q = RatFn::var(Var::Q);
    let qsum = &q + &q.inv()?;
    let x0 = t.xminus_at(0);
    let x1 = t.xminus_at(1);
    let mut e1 = vec![RatFn::zero(); 4];
    e1[0] = RatFn::one();
    let e2 = mat_vec(&x0, &e1);
    let ainv = RatFn::var(Var::A).inv()?;
    let e3: Vec<RatFn> = mat_vec(&x1, &e1).iter().zip(&e2).map(|(x, y)| y - &(&ainv * x)).collect();
    let e4: Vec<RatFn> = mat_vec(&x0, &e2).iter().map(|x| x / &qsum).collect();
    let basis: Mat = (0..4).map(|i| vec![e1[i].clone(), e2[i].clone(), e3[i].clone(), e4[i].clone()]).collect();
    let pinv = inverse(&basis).ok_or(CoproductError::Singular)?;
    let weights = (0..4)
        .map(|k| {
            let i = (0..4).find(|&i| !basis[i][k].is_zero()).expect("nonzero basis vector");
            t.weights[i]
        })
        .collect();
    let table = ModuleTable {
        labels: (1..=4).map(|k| format!("e{k}")).collect(),
        weights,
        xplus: conj_closed(&pinv, &t.xplus, &basis),
        xminus: conj_closed(&pinv, &t.xminus, &basis),
        phi: conj_phi(&pinv, &t.phi, &basis),
    };
    check_span_closed(&table)?;
    Ok(UForm { basis, table })
}

/// Every mode in the closure window acts by matrices with entries Laurent in `u`.
pub fn check_span_closed(t: &ModuleTable) -> Result<(), CoproductError> {
    let n = t.dim();
    for r in CLOSURE_WINDOW {
        for (name, m) in [("x^+", t.xplus_at(r)), ("x^-", t.xminus_at(r))] {
            for i in 0..n {
                for j in 0..n {
                    if !m[i][j].is_laurent_in(Var::U) {
                        return Err(CoproductError::NotClosed(format!("{name}_{r}[{i}][{j}] = {}", m[i][j])));
                    }
                }
            }
        }
    }
    for m in 0..=*CLOSURE_WINDOW.end() {
        for i in 0..n {
            for j in 0..n {
                let p = &t.phi[i][j];
                for (sign, v) in [("+", p.mode_plus(m)), ("-", p.mode_minus(-m))] {
                    if !v.is_laurent_in(Var::U) {
                        return Err(CoproductError::NotClosed(format!("phi^{sign}_{m}[{i}][{j}] = {v}")));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The specialization `u = 1` of a `C[u, u^-1]`-form.
pub fn specialize_u1(f: &UForm) -> Result<ModuleTable, CoproductError> {
    let t = &f.table;
    let one = RatFn::one();
    let coeffs = t
        .xplus
        .iter()
        .chain(&t.xminus)
        .flatten()
        .flat_map(|e| e.coeffs())
        .chain(t.phi.iter().flatten().flat_map(|p| p.coeffs()));
    for c in coeffs {
        if c.den_vanishes_at(Var::U, &one)? {
            return Err(CoproductError::PoleAtOne(c.to_string()));
        }
    }
    Ok(t.substitute(Var::U, &Mono::one())?)
}

/// Substitutes `a = q^k b`.
pub fn specialize_ratio(t: &ModuleTable, k: i32) -> Result<ModuleTable, CoproductError> {
    Ok(t.substitute(Var::A, &Mono::from_pairs(&[(Var::Q, k), (Var::B, 1)]))?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    Submodule {
        /// Generator in the table's basis, scaled so its last nonzero coordinate is 1.
        generator: Vec<RatFn>,
        weight: i64,
        dim: usize,
        /// `phi(z)` eigenvalue when the submodule is one-dimensional.
        l_weight: Option<RatFn>,
    },
}

fn generated_span(t: &ModuleTable, v: &[RatFn]) -> Vec<Vec<RatFn>> {
    let mut span = vec![v.to_vec()];
    let mut frontier = vec![v.to_vec()];
    let mats: Vec<Mat> = CLOSURE_WINDOW.flat_map(|r| [t.xplus_at(r), t.xminus_at(r)]).collect();
    while let Some(w) = frontier.pop() {
        for m in &mats {
            let img = mat_vec(m, &w);
            if img.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut trial = span.clone();
            trial.push(img.clone());
            if rank(&trial) > span.len() {
                span = trial;
                frontier.push(img);
            }
        }
    }
    span
}

fn submodule(t: &ModuleTable, mut v: Vec<RatFn>, weight: i64) -> Simplicity {
    if let Some(last) = v.iter().rev().find(|x| !x.is_zero()).cloned() {
        let inv = last.inv().expect("nonzero");
        v.iter_mut().for_each(|x| *x = &*x * &inv);
    }
    let dim = generated_span(t, &v).len();
    let l_weight = (dim == 1).then(|| {
        let k = v.iter().position(|x| !x.is_zero()).expect("nonzero generator");
        let img = mat_vec(&t.phi_ratfn(), &v);
        &img[k] / &v[k]
    });
    Simplicity::Submodule {
        generator: v,
        weight,
        dim,
        l_weight,
    }
}

/// Looks for a proper submodule via singular vectors below the top weight,
/// then checks that the top weight vector is cyclic.
pub fn simplicity_check(t: &ModuleTable) -> Simplicity {
    let n = t.dim();
    let ws: BTreeSet<i64> = t.weights.iter().copied().collect();
    let top = *ws.iter().next_back().expect("nonempty module");
    for &w in ws.iter().rev().skip(1) {
        let idx: Vec<usize> = (0..n).filter(|&k| t.weights[k] == w).collect();
        let mut rows: Mat = Vec::new();
        for o in 0..n {
            let bases: BTreeSet<Mono> = idx.iter().flat_map(|&k| t.xplus[o][k].bases().copied()).collect();
            for g in bases {
                rows.push(idx.iter().map(|&k| t.xplus[o][k].coeff(&g)).collect());
            }
        }
        if let Some(sol) = nullspace(&rows, idx.len()).into_iter().next() {
            let mut v = vec![RatFn::zero(); n];
            for (c, &k) in sol.into_iter().zip(&idx) {
                v[k] = c;
            }
            return submodule(t, v, w);
        }
    }
    let k = t.weights.iter().position(|&w| w == top).expect("top weight");
    let mut v = vec![RatFn::zero(); n];
    v[k] = RatFn::one();
    if generated_span(t, &v).len() < n {
        return submodule(t, v, top);
    }
    Simplicity::Simple
}

#[derive(Debug, Clone)]
pub struct CoassocReport {
    /// `phi(z)` eigenvalue on `v0⊗w0⊗t0` for `(V⊗W)⊗T`.
    pub left: RatFn,
    /// The same for `V⊗(W⊗T)`.
    pub right: RatFn,
    /// Third-slot factors after dividing out `phi^V(z) phi^W(uz)`.
    pub left_third: RatFn,
    pub right_third: RatFn,
}

impl CoassocReport {
    pub fn differ(&self) -> bool {
        self.left != self.right
    }
}

/// Compares the two iterated coproducts of `phi(z)` on three evaluation modules.
pub fn coassoc_probe() -> Result<CoassocReport, CoproductError> {
    let (v, w, t) = (eval_module(Var::A), eval_module(Var::B), eval_module(Var::C));
    let vw = ModuleTable {
        phi: tensor_phi(&v, &w)?,
        ..blank(v.dim() * w.dim())
    };
    let wt = ModuleTable {
        phi: tensor_phi(&w, &t)?,
        ..blank(w.dim() * t.dim())
    };
    let left = tensor_phi(&vw, &t)?[0][0].to_ratfn();
    let right = tensor_phi(&v, &wt)?[0][0].to_ratfn();
    let base = vw.phi[0][0].to_ratfn();
    Ok(CoassocReport {
        left_third: left.checked_div(&base)?,
        right_third: right.checked_div(&base)?,
        left,
        right,
    })
}

fn blank(n: usize) -> ModuleTable {
    ModuleTable {
        labels: vec![String::new(); n],
        weights: vec![0; n],
        xplus: vec![vec![ExpPoly::zero(); n]; n],
        xminus: vec![vec![ExpPoly::zero(); n]; n],
        phi: vec![vec![PartialFrac::zero(); n]; n],
    }
}

/// Characteristic polynomial of `phi(z)` on one weight space, in the variable `w1`.
pub fn phi_char_poly(t: &ModuleTable, weight: i64) -> RatFn {
    let idx: Vec<usize> = (0..t.dim()).filter(|&k| t.weights[k] == weight).collect();
    let s = RatFn::var(Var::w(1));
    let phi = t.phi_ratfn();
    let m: Mat = idx
        .iter()
        .map(|&i| {
            idx.iter()
                .map(|&j| if i == j { &s - &phi[i][j] } else { -&phi[i][j] })
                .collect()
        })
        .collect();
    linalg::det(&m)
}

/// True if the `phi(z)` spectrum of `t` matches the l-weights of `monomials`
/// weight space by weight space, with orbit `k` read as the symbol `orbit_symbols[k]`.
pub fn ch_q_matches(t: &ModuleTable, monomials: &[(Monomial, i64)], orbit_symbols: &[Mono]) -> bool {
    let s = RatFn::var(Var::w(1));
    let ws: BTreeSet<i64> = t.weights.iter().copied().collect();
    let total: i64 = monomials.iter().map(|(_, c)| *c).sum();
    if total != t.dim() as i64 || monomials.iter().any(|(_, c)| *c < 0) {
        return false;
    }
    let mws: BTreeSet<i64> = monomials.iter().map(|(m, _)| m.u_vector()[0]).collect();
    if !mws.is_subset(&ws) {
        return false;
    }
    ws.into_iter().all(|w| {
        let expected = monomials
            .iter()
            .filter(|(m, _)| m.u_vector()[0] == w)
            .fold(RatFn::one(), |acc, (m, c)| {
                let f = &s - &sl2_l_weight(m, orbit_symbols);
                &acc * &f.powi(*c).expect("nonzero factor")
            });
        phi_char_poly(t, w) == expected
    })
}
