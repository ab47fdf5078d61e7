use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::monomial::{is_dominant, Monomial};

/// A finite integer combination of monomials, truncated at total depth `depth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QCharacter {
    n: usize,
    depth: i64,
    terms: BTreeMap<Monomial, BigInt>,
}

impl QCharacter {
    pub fn new(n: usize, depth: i64) -> Self {
        QCharacter {
            n,
            depth,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(m: Monomial, depth: i64) -> Self {
        let mut c = QCharacter::new(m.rank(), depth);
        c.add_term(m, BigInt::one());
        c
    }

    /// The constant character `1`.
    pub fn one(n: usize, depth: i64) -> Self {
        Self::from_monomial(Monomial::one(n), depth)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn truncation_depth(&self) -> i64 {
        self.depth
    }

    /// Adds `c·m`, dropping it if `m` lies below the truncation depth.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() || m.total_depth() > self.depth {
            return;
        }
        assert_eq!(m.rank(), self.n, "monomial rank differs from character rank");
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dominant_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        self.terms.iter().filter(|(m, _)| is_dominant(m)).collect()
    }

    /// Smallest total depth among the terms, or `0` if empty.
    pub fn base_depth(&self) -> i64 {
        self.terms.keys().map(|m| m.total_depth()).min().unwrap_or(0)
    }

    pub fn truncated(&self, depth: i64) -> QCharacter {
        let mut out = QCharacter::new(self.n, depth.min(self.depth));
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> QCharacter {
        let mut out = QCharacter::new(self.n, self.depth);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn add(&self, o: &QCharacter) -> QCharacter {
        let mut out = self.truncated(o.depth);
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &QCharacter) -> QCharacter {
        self.add(&o.scale(&BigInt::from(-1)))
    }

    /// Product, valid down to `min(D1 + b2, D2 + b1)` where `b` is each factor's base depth.
    pub fn mul(&self, o: &QCharacter) -> QCharacter {
        let depth = (self.depth + o.base_depth()).min(o.depth + self.base_depth());
        let mut out = QCharacter::new(self.n, depth);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if m1.total_depth() + m2.total_depth() <= depth {
                    out.add_term(m1.mul(m2), c1 * c2);
                }
            }
        }
        out
    }

    /// Re-keys every term by its normalized monomial, forgetting the coweight record.
    pub fn normalized(&self) -> BTreeMap<Monomial, BigInt> {
        let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in &self.terms {
            *out.entry(m.normalized()).or_default() += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `coefficient<TAB>monomial` lines in sorted order.
    pub fn render_lines(&self, show_k: bool) -> Vec<String> {
        self.terms
            .iter()
            .map(|(m, c)| format!("{}\t{}", c, m.render(show_k)))
            .collect()
    }
}
