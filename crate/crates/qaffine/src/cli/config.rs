//! Run configuration, written in TOML:
//!
//! ```toml
//! # generalized Cartan matrix, row by row
//! cartan = [[2, -1], [-1, 2]]
//! # symmetrizer; the minimal one is used when omitted
//! r = [1, 1]
//! # absolute truncation depth
//! depth = 4
//! # seeds as [node, q-exponent, multiplicity], nodes counted from 1
//! seed = [[1, 0, 1]]
//! seed2 = [[2, 3, 1]]
//! ```

use serde::Deserialize;

use crate::cartan::{build_cartan, CartanData};
use crate::monomial::{Monomial, SpectralParam};

use super::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    cartan: Vec<Vec<i64>>,
    r: Option<Vec<i64>>,
    depth: Option<i64>,
    seed: Option<Vec<[i64; 3]>>,
    seed2: Option<Vec<[i64; 3]>>,
}

#[derive(Debug, Clone)]
pub struct Config {
    pub cartan: CartanData,
    pub depth: Option<i64>,
    pub seed: Option<Monomial>,
    pub seed2: Option<Monomial>,
}

fn line_of_offset(text: &str, off: usize) -> usize {
    text[..off.min(text.len())].matches('\n').count() + 1
}

fn line_of_key(text: &str, key: &str) -> usize {
    text.lines()
        .position(|l| {
            let t = l.trim_start();
            t.strip_prefix(key).is_some_and(|rest| rest.trim_start().starts_with('='))
        })
        .map_or(1, |i| i + 1)
}

/// Builds a seed monomial from `[node, q-exponent, multiplicity]` triples.
pub fn seed_from_triples(n: usize, triples: &[[i64; 3]]) -> Result<Monomial, String> {
    let mut m = Monomial::one(n);
    for &[node, qexp, mult] in triples {
        if node < 1 || node as usize > n {
            return Err(format!("node {node} is outside 1..={n}"));
        }
        m = m.mul(&Monomial::y(n, node as usize - 1, SpectralParam::q(qexp), mult));
    }
    Ok(m)
}

pub fn parse_config(text: &str) -> Result<Config, CliError> {
    let raw: Raw = toml::from_str(text).map_err(|e| CliError::Config {
        line: e.span().map_or(1, |s| line_of_offset(text, s.start)),
        msg: e.message().to_string(),
    })?;
    let at = |key: &str, msg: String| CliError::Config {
        line: line_of_key(text, key),
        msg,
    };
    let cartan = build_cartan(&raw.cartan, raw.r.as_deref()).map_err(|e| {
        let key = if matches!(e, crate::cartan::CartanError::NotSymmetrizable(_)) && raw.r.is_some() {
            "r"
        } else {
            "cartan"
        };
        at(key, e.to_string())
    })?;
    if let Some(d) = raw.depth {
        if d < 0 {
            return Err(at("depth", format!("depth must be nonnegative, got {d}")));
        }
    }
    let n = cartan.n;
    let seed = raw
        .seed
        .as_deref()
        .map(|t| seed_from_triples(n, t))
        .transpose()
        .map_err(|m| at("seed", m))?;
    let seed2 = raw
        .seed2
        .as_deref()
        .map(|t| seed_from_triples(n, t))
        .transpose()
        .map_err(|m| at("seed2", m))?;
    Ok(Config {
        cartan,
        depth: raw.depth,
        seed,
        seed2,
    })
}
