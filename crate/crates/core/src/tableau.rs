//! Double tableaux of `B`-monomials, the induced leading-monomial order and
//! the map `T+` from standard tagged words to monomials.
//!
//! A monomial is laid out column by column. With `m` the number of `a`
//! variables in column `h` and `n` the number of `b` variables there, the `m`
//! smallest `a` entries of every column form the pure-a rows, the `n` smallest
//! `b` entries the pure-b rows, and what remains stacks into mixed rows.
//!
//! Monomials are compared first by their column profile (fewer entries in
//! high columns is larger, scanning from column `h` down), then
//! lexicographically by the reading word.

use std::cmp::{Ordering, Reverse};
use std::fmt;

use crate::diffring::{DiffVar, Family};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Coeff;
use crate::seqcomb::{ESeq, Kind};

/// A word letter: a variable, or the placeholder for an empty cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Star,
    Var(DiffVar),
}

fn var_key(v: &DiffVar) -> (u32, u16, Family, u16) {
    (v.order, v.row, v.family, v.col)
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Entry::Star, Entry::Star) => Ordering::Equal,
            (Entry::Star, Entry::Var(_)) => Ordering::Less,
            (Entry::Var(_), Entry::Star) => Ordering::Greater,
            (Entry::Var(a), Entry::Var(b)) => var_key(a).cmp(&var_key(b)),
        }
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A row indexed by column (`cells[c]` is column `c + 1`).
pub type Row = Vec<Option<DiffVar>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauLayout {
    pub h: usize,
    pub pure_a: Vec<Row>,
    pub pure_b: Vec<Row>,
    pub mixed: Vec<(Row, Row)>,
}

fn buckets(m: &Monomial<DiffVar>, h: usize, family: Family) -> Vec<Vec<DiffVar>> {
    let mut cols = vec![Vec::new(); h];
    for v in m.expanded() {
        if v.family == family {
            cols[v.col as usize - 1].push(v);
        }
    }
    for c in &mut cols {
        c.sort_by_key(var_key);
    }
    cols
}

/// Lay out a monomial of `B` for ambient width `h`.
pub fn layout(m: &Monomial<DiffVar>, h: usize) -> TableauLayout {
    let a = buckets(m, h, Family::A);
    let b = buckets(m, h, Family::B);
    let (na, nb) = (a[h - 1].len(), b[h - 1].len());
    let rows = |cols: &[Vec<DiffVar>], skip: usize, count: usize| -> Vec<Row> {
        (0..count).map(|r| cols.iter().map(|c| c.get(skip + r).copied()).collect()).collect()
    };
    let pure_a = rows(&a, 0, na);
    let pure_b = rows(&b, 0, nb);
    let ta = a.iter().map(|c| c.len().saturating_sub(na)).max().unwrap_or(0);
    let tb = b.iter().map(|c| c.len().saturating_sub(nb)).max().unwrap_or(0);
    let ma = rows(&a, na, ta.max(tb));
    let mb = rows(&b, nb, ta.max(tb));
    TableauLayout { h, pure_a, pure_b, mixed: ma.into_iter().zip(mb).collect() }
}

fn cell(c: &Option<DiffVar>) -> Entry {
    c.map(Entry::Var).unwrap_or(Entry::Star)
}

/// Reading word: pure-a rows, pure-b rows, then mixed rows (a-run then
/// b-run), every row read from column `h` down to column 1.
pub fn word(m: &Monomial<DiffVar>, h: usize) -> Vec<Entry> {
    let t = layout(m, h);
    let mut out = Vec::new();
    for row in t.pure_a.iter().chain(&t.pure_b) {
        out.extend(row.iter().rev().map(cell));
    }
    for (ra, rb) in &t.mixed {
        out.extend(ra.iter().rev().map(cell));
        out.extend(rb.iter().rev().map(cell));
    }
    out
}

/// Sort key realizing the monomial order: larger key means larger monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrderKey {
    profile: Vec<Reverse<usize>>,
    word: Vec<Entry>,
}

pub fn order_key(m: &Monomial<DiffVar>, h: usize) -> OrderKey {
    let mut counts = vec![(0usize, 0usize); h];
    for (v, e) in m.factors() {
        let slot = &mut counts[v.col as usize - 1];
        match v.family {
            Family::A => slot.0 += *e as usize,
            Family::B => slot.1 += *e as usize,
        }
    }
    let profile = counts.iter().rev().flat_map(|&(x, y)| [Reverse(x), Reverse(y)]).collect();
    OrderKey { profile, word: word(m, h) }
}

pub fn cmp_monomials(x: &Monomial<DiffVar>, y: &Monomial<DiffVar>, h: usize) -> Ordering {
    order_key(x, h).cmp(&order_key(y, h))
}

/// `Ld+(f)`: the largest monomial of `f` with its coefficient.
pub fn ld_plus<C: Coeff>(f: &Polynomial<DiffVar, C>, h: usize) -> Result<(Monomial<DiffVar>, C)> {
    f.max_term_by(|m| order_key(m, h))
        .map(|(m, c)| (m.clone(), c.clone()))
        .ok_or_else(|| Error::Precondition("leading monomial of the zero polynomial".into()))
}

/// `T+` of one tagged sequence: `a(k_i)_{u_i, i}` and `b(l_i)_{v_i, i}`.
pub fn t_plus_row(e: &ESeq) -> Monomial<DiffVar> {
    let mut pairs = Vec::new();
    for (i, &(u, k)) in e.left.iter().enumerate() {
        pairs.push((DiffVar::a(u, i as u16 + 1, k), 1));
    }
    for (i, &(v, l)) in e.right.iter().enumerate() {
        pairs.push((DiffVar::b(v, i as u16 + 1, l), 1));
    }
    Monomial::from_pairs(pairs)
}

/// `T+` of a tagged word: the product of its rows.
pub fn t_plus(chain: &[ESeq]) -> Monomial<DiffVar> {
    chain.iter().fold(Monomial::one(), |acc, e| acc.mul(&t_plus_row(e)))
}

fn full_row(row: &Row) -> Option<Vec<(u16, u32)>> {
    row.iter().map(|c| c.map(|v| (v.row, v.order))).collect()
}

fn prefix_row(row: &Row) -> Option<Vec<(u16, u32)>> {
    let len = row.iter().take_while(|c| c.is_some()).count();
    if len == 0 || row[len..].iter().any(|c| c.is_some()) {
        return None;
    }
    full_row(&row[..len].to_vec())
}

/// Read a monomial's layout back as a tagged word, when every row has the
/// shape of a `T+` row. Index repeats within a row are rejected.
pub fn invert_t_plus(m: &Monomial<DiffVar>, h: usize) -> Option<Vec<ESeq>> {
    let t = layout(m, h);
    let mut out = Vec::new();
    for row in &t.pure_a {
        out.push(ESeq::new_left(full_row(row)?));
    }
    for row in &t.pure_b {
        out.push(ESeq::new_right(full_row(row)?));
    }
    for (ra, rb) in &t.mixed {
        let (l, r) = (prefix_row(ra)?, prefix_row(rb)?);
        if l.len() != r.len() {
            return None;
        }
        out.push(ESeq::new_full(l, r));
    }
    if out.iter().any(|e| !e.is_valid()) || out.iter().any(|e| e.kind == Kind::Full && e.size() >= h) {
        return None;
    }
    Some(out)
}

impl fmt::Display for TableauLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |c: &Option<DiffVar>| c.map(|v| v.to_string()).unwrap_or_else(|| "*".into());
        let side = |r: &Row, rev: bool| {
            let mut cells: Vec<String> = r.iter().map(show).collect();
            if rev {
                cells.reverse();
            }
            cells.join(" ")
        };
        for r in &self.pure_a {
            writeln!(f, "{} |", side(r, true))?;
        }
        for r in &self.pure_b {
            writeln!(f, "| {}", side(r, false))?;
        }
        for (ra, rb) in &self.mixed {
            writeln!(f, "{} | {}", side(ra, true), side(rb, false))?;
        }
        Ok(())
    }
}
