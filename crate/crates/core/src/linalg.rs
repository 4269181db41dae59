//! Exact linear algebra: an incremental sparse fraction-free echelon form
//! (rank and span membership) and dense Bareiss elimination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

/// A sparse integer row, sorted by column with no zero entries.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Build a sparse row from arbitrary `(column, value)` pairs, summing repeats.
pub fn sparse_row(entries: impl IntoIterator<Item = (usize, BigInt)>) -> SparseRow {
    let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (c, v) in entries {
        *acc.entry(c).or_insert_with(BigInt::zero) += v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn primitive(mut row: SparseRow) -> SparseRow {
    let g = row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in &mut row {
            *v /= &g;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in &mut row {
            *v = -v.clone();
        }
    }
    row
}

/// `x * a - y * b` on sparse rows.
fn combine(a: &SparseRow, x: &BigInt, b: &SparseRow, y: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        let (c, v) = if take_a {
            i += 1;
            (a[i - 1].0, x * &a[i - 1].1)
        } else if take_b {
            j += 1;
            (b[j - 1].0, -(y * &b[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (a[i - 1].0, x * &a[i - 1].1 - y * &b[j - 1].1)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    out
}

/// Row echelon form over Z with distinct leading columns.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `row` by leading-column elimination; zero means it lies in the span.
    pub fn reduce(&self, row: SparseRow) -> SparseRow {
        let mut row = primitive(row);
        while let Some((c, v)) = row.first() {
            let Some(piv) = self.pivots.get(c) else { break };
            let pv = &piv[0].1;
            let g = pv.gcd(v);
            let (x, y) = (pv / &g, v / &g);
            row = primitive(combine(&row, &x, piv, &y));
        }
        row
    }

    /// Insert a row; returns whether the rank increased.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let r = self.reduce(row);
        match r.first() {
            None => false,
            Some(&(c, _)) => {
                self.pivots.insert(c, r);
                true
            }
        }
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }
}

/// Rank of a list of sparse rows.
pub fn sparse_rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Rank of a dense integer matrix by Bareiss fraction-free elimination.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k]) / &prev;
                m[r][k] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return BigInt::zero() };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        for r in c + 1..n {
            for k in c + 1..n {
                m[r][k] = (&m[c][c] * &m[r][k] - &m[r][c] * &m[c][k]) / &prev;
            }
        }
        prev = m[c][c].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &m[n - 1][n - 1]
}

/// Exact inverse of a unimodular integer matrix, or `None` if the determinant is not ±1.
#[allow(clippy::needless_range_loop)]
pub fn unimodular_inverse(m: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    let n = m.len();
    let det = bareiss_det(m.to_vec());
    if !det.abs().is_one() {
        return None;
    }
    // adjugate via cofactors; sizes here are tiny
    let mut inv = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<BigInt>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c].clone()).collect())
                .collect();
            let cof = bareiss_det(minor);
            inv[i][j] = if (i + j) % 2 == 0 { cof } else { -cof } * &det;
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn sparse(rows: &[Vec<BigInt>]) -> Vec<SparseRow> {
        rows.iter().map(|r| sparse_row(r.iter().cloned().enumerate())).collect()
    }

    #[test]
    fn ranks_agree() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1], &[1, 3, 4]]);
        assert_eq!(bareiss_rank(a.clone()), 2);
        assert_eq!(sparse_rank(sparse(&a)), 2);
        assert_eq!(bareiss_rank(Vec::new()), 0);
        let b = m(&[&[0, 0], &[0, 3]]);
        assert_eq!(bareiss_rank(b.clone()), 1);
        assert_eq!(sparse_rank(sparse(&b)), 1);
    }

    #[test]
    fn membership() {
        let mut e = Echelon::new();
        assert!(e.insert(sparse_row([(0, BigInt::from(2)), (3, BigInt::from(4))])));
        assert!(e.insert(sparse_row([(3, BigInt::from(3))])));
        assert!(e.contains(sparse_row([(0, BigInt::from(1))])));
        assert!(!e.contains(sparse_row([(1, BigInt::from(1))])));
        assert!(e.contains(Vec::new()));
    }

    #[test]
    fn determinant_and_inverse() {
        let c = m(&[&[1, 1], &[1, 2]]);
        assert_eq!(bareiss_det(c.clone()), BigInt::from(1));
        assert_eq!(unimodular_inverse(&c).unwrap(), m(&[&[2, -1], &[-1, 1]]));
        assert_eq!(bareiss_det(m(&[&[2, 0], &[0, 3]])), BigInt::from(6));
        assert!(unimodular_inverse(&m(&[&[2, 0], &[0, 1]])).is_none());
    }
}
