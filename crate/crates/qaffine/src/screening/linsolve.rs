use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type Row = BTreeMap<usize, BigRational>;

/// Incremental reduced row echelon form over the rationals.
///
/// Column `ncols` is the right-hand side.
#[derive(Debug, Default)]
pub(crate) struct Rref {
    rows: Vec<Row>,
    pivot_of: BTreeMap<usize, usize>,
    ncols: usize,
    inconsistent: bool,
}

fn axpy(row: &mut Row, k: &BigRational, other: &Row) {
    for (c, v) in other {
        let e = row.entry(*c).or_insert_with(BigRational::zero);
        *e -= k * v;
        if e.is_zero() {
            row.remove(c);
        }
    }
}

impl Rref {
    pub(crate) fn new(ncols: usize) -> Self {
        Rref {
            ncols,
            ..Default::default()
        }
    }

    pub(crate) fn push(&mut self, mut row: Row) {
        row.retain(|_, v| !v.is_zero());
        let pivots: Vec<(usize, usize)> = self.pivot_of.iter().map(|(c, r)| (*c, *r)).collect();
        for (c, r) in pivots {
            if let Some(k) = row.get(&c).cloned() {
                axpy(&mut row, &k, &self.rows[r]);
            }
        }
        let Some((&p, _)) = row.iter().next() else {
            return;
        };
        if p == self.ncols {
            self.inconsistent = true;
            return;
        }
        let inv = BigRational::one() / row[&p].clone();
        for v in row.values_mut() {
            *v *= &inv;
        }
        for r in self.rows.iter_mut() {
            if let Some(k) = r.get(&p).cloned() {
                axpy(r, &k, &row);
            }
        }
        self.rows.push(row);
        self.pivot_of.insert(p, self.rows.len() - 1);
    }

    pub(crate) fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    /// Value of column `c` if the system pins it down uniquely.
    pub(crate) fn value(&self, c: usize) -> Option<BigRational> {
        let r = &self.rows[*self.pivot_of.get(&c)?];
        if r.keys().any(|k| *k != c && *k != self.ncols) {
            return None;
        }
        Some(r.get(&self.ncols).map(|v| -v.clone()).unwrap_or_default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn solves_small_system() {
        // x + y = 3, x - y = 1
        let mut s = Rref::new(2);
        s.push([(0, q(1)), (1, q(1)), (2, q(-3))].into_iter().collect());
        s.push([(0, q(1)), (1, q(-1)), (2, q(-1))].into_iter().collect());
        assert_eq!(s.value(0), Some(q(2)));
        assert_eq!(s.value(1), Some(q(1)));
    }

    #[test]
    fn detects_free_and_inconsistent() {
        let mut s = Rref::new(2);
        s.push([(0, q(1)), (1, q(1))].into_iter().collect());
        assert_eq!(s.value(0), None);
        s.push([(0, q(1)), (1, q(1)), (2, q(1))].into_iter().collect());
        assert!(s.is_inconsistent());
    }
}
