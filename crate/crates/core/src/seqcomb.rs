//! The alphabet of derived minors and its tagged refinement.
//!
//! A [`JSeq`] names a generator `dbar^k` of a left determinant `(u_h..u_1|`,
//! a right determinant `|v_1..v_h)` or a mixed minor `(u_r..u_1|v_1..v_r)`.
//! An [`ESeq`] distributes the weight of a `JSeq` over its index slots; the
//! slot at position `i` holds `(u_i, k_i)`. Position 1 sits next to the bar.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{compositions, permutations, sort_sign, subsets};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    L,
    R,
    Full,
}

impl Kind {
    pub fn has_left(self) -> bool {
        self != Kind::R
    }
    pub fn has_right(self) -> bool {
        self != Kind::L
    }
}

/// `dbar^weight` of a minor with sorted index lists (empty when the side is absent).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JSeq {
    pub kind: Kind,
    pub weight: u32,
    pub us: Vec<u16>,
    pub vs: Vec<u16>,
}

/// A signed `JSeq`, or zero when an index repeats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedJ {
    pub sign: i32,
    pub seq: Option<JSeq>,
}

impl JSeq {
    pub fn left(weight: u32, mut us: Vec<u16>) -> Self {
        us.sort_unstable();
        JSeq { kind: Kind::L, weight, us, vs: Vec::new() }
    }

    pub fn right(weight: u32, mut vs: Vec<u16>) -> Self {
        vs.sort_unstable();
        JSeq { kind: Kind::R, weight, us: Vec::new(), vs }
    }

    pub fn full(weight: u32, mut us: Vec<u16>, mut vs: Vec<u16>) -> Self {
        us.sort_unstable();
        vs.sort_unstable();
        JSeq { kind: Kind::Full, weight, us, vs }
    }

    pub fn size(&self) -> usize {
        if self.kind == Kind::R {
            self.vs.len()
        } else {
            self.us.len()
        }
    }

    pub fn with_weight(&self, weight: u32) -> Self {
        JSeq { weight, ..self.clone() }
    }

    /// Membership in the alphabet for ambient `h`: L/R of size `h`, Full of size `1..h-1`.
    pub fn in_alphabet(&self, h: usize) -> bool {
        match self.kind {
            Kind::L | Kind::R => self.size() == h,
            Kind::Full => self.size() >= 1 && self.size() < h,
        }
    }

    /// Contribution to the multidegree: `(a-row counts, b-row counts, weight)`.
    pub fn multidegree(&self, p: usize, q: usize) -> (Vec<u32>, Vec<u32>, u32) {
        let mut da = vec![0; p];
        let mut db = vec![0; q];
        for &u in &self.us {
            da[u as usize - 1] += 1;
        }
        for &v in &self.vs {
            db[v as usize - 1] += 1;
        }
        (da, db, self.weight)
    }

    fn word(&self) -> Vec<u16> {
        self.us.iter().rev().chain(self.vs.iter().rev()).copied().collect()
    }
}

/// Sort raw index lists (left side in written order `u_h..u_1`, right side in
/// written order `v_1..v_h`) and attach the permutation sign.
pub fn normalize_raw(kind: Kind, weight: u32, raw_us: &[u16], raw_vs: &[u16]) -> SignedJ {
    let mut sign = 1;
    if kind.has_left() {
        let ascending: Vec<u16> = raw_us.iter().rev().copied().collect();
        sign *= sort_sign(&ascending);
    }
    if kind.has_right() {
        sign *= sort_sign(raw_vs);
    }
    if sign == 0 {
        return SignedJ { sign: 0, seq: None };
    }
    let seq = match kind {
        Kind::L => JSeq::left(weight, raw_us.to_vec()),
        Kind::R => JSeq::right(weight, raw_vs.to_vec()),
        Kind::Full => JSeq::full(weight, raw_us.to_vec(), raw_vs.to_vec()),
    };
    SignedJ { sign, seq: Some(seq) }
}

/// Total order on the alphabet: L before R before Full; among Full, larger
/// size first; then weight; then the reversed index word.
pub fn cmp_total_j(a: &JSeq, b: &JSeq) -> Ordering {
    a.kind
        .cmp(&b.kind)
        .then_with(|| b.size().cmp(&a.size()))
        .then_with(|| a.weight.cmp(&b.weight))
        .then_with(|| a.word().cmp(&b.word()))
}

impl Ord for JSeq {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_total_j(self, other)
    }
}

impl PartialOrd for JSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn list(xs: impl Iterator<Item = String>) -> String {
    xs.collect::<Vec<_>>().join(",")
}

impl fmt::Display for JSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let left = list(self.us.iter().rev().map(|u| u.to_string()));
        let right = list(self.vs.iter().map(|v| v.to_string()));
        match self.kind {
            Kind::L => write!(f, "D^{}({}|", self.weight, left),
            Kind::R => write!(f, "D^{}|{})", self.weight, right),
            Kind::Full => write!(f, "D^{}({}|{})", self.weight, left, right),
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<u16>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse::<u16>().map_err(|_| Error::Parse(format!("bad index '{t}'")))).collect()
}

impl std::str::FromStr for JSeq {
    type Err = Error;

    /// Parses the canonical text form; index lists must already be canonical.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed sequence '{s}'"));
        let rest = s.trim().strip_prefix("D^").ok_or_else(bad)?;
        let split = rest.find(['(', '|']).ok_or_else(bad)?;
        let weight: u32 = rest[..split].parse().map_err(|_| bad())?;
        let body = &rest[split..];
        let bar = body.find('|').ok_or_else(bad)?;
        let (lhs, rhs) = (&body[..bar], &body[bar + 1..]);
        let kind = match (lhs.starts_with('('), rhs.ends_with(')')) {
            (true, true) => Kind::Full,
            (true, false) if rhs.is_empty() => Kind::L,
            (false, true) if lhs.is_empty() => Kind::R,
            _ => return Err(bad()),
        };
        let us: Vec<u16> =
            if kind.has_left() { parse_list(&lhs[1..])?.into_iter().rev().collect() } else { Vec::new() };
        let vs: Vec<u16> = if kind.has_right() { parse_list(&rhs[..rhs.len() - 1])? } else { Vec::new() };
        if us.windows(2).any(|w| w[0] >= w[1]) || vs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!("index lists of '{s}' are not canonical")));
        }
        if kind == Kind::Full && us.len() != vs.len() {
            return Err(bad());
        }
        if us.contains(&0) || vs.contains(&0) || (us.is_empty() && vs.is_empty()) {
            return Err(bad());
        }
        Ok(JSeq { kind, weight, us, vs })
    }
}

/// An index paired with its derivative tag.
pub type Pair = (u16, u32);

/// Weight-major pair order: `(u,k) <= (u',k')` iff `k < k'`, or `k = k'` and `u <= u'`.
pub fn pair_key(p: &Pair) -> (u32, u16) {
    (p.1, p.0)
}

/// A tagged sequence; `left[i]` and `right[i]` hold position `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ESeq {
    pub kind: Kind,
    pub left: Vec<Pair>,
    pub right: Vec<Pair>,
}

impl ESeq {
    pub fn new_left(left: Vec<Pair>) -> Self {
        ESeq { kind: Kind::L, left, right: Vec::new() }
    }

    pub fn new_right(right: Vec<Pair>) -> Self {
        ESeq { kind: Kind::R, left: Vec::new(), right }
    }

    pub fn new_full(left: Vec<Pair>, right: Vec<Pair>) -> Self {
        ESeq { kind: Kind::Full, left, right }
    }

    /// The minimal left sequence `((h,0),...,(1,0)|`.
    pub fn zero_left(h: usize) -> Self {
        ESeq::new_left((1..=h as u16).map(|u| (u, 0)).collect())
    }

    /// The minimal right sequence `|(1,0),...,(h,0))`.
    pub fn zero_right(h: usize) -> Self {
        ESeq::new_right((1..=h as u16).map(|v| (v, 0)).collect())
    }

    pub fn size(&self) -> usize {
        if self.kind == Kind::R {
            self.right.len()
        } else {
            self.left.len()
        }
    }

    pub fn weight(&self) -> u32 {
        self.left.iter().chain(&self.right).map(|p| p.1).sum()
    }

    pub fn is_valid(&self) -> bool {
        let distinct = |xs: &[Pair]| sort_sign(&xs.iter().map(|p| p.0).collect::<Vec<_>>()) != 0;
        distinct(&self.left)
            && distinct(&self.right)
            && match self.kind {
                Kind::L => self.right.is_empty() && !self.left.is_empty(),
                Kind::R => self.left.is_empty() && !self.right.is_empty(),
                Kind::Full => self.left.len() == self.right.len() && !self.left.is_empty(),
            }
    }

    fn word(&self) -> Vec<(u32, u16)> {
        self.left.iter().rev().chain(self.right.iter().rev()).map(pair_key).collect()
    }
}

/// `||E||`: sort indices, sum tags.
pub fn norm_of_e(e: &ESeq) -> JSeq {
    let us = e.left.iter().map(|p| p.0).collect();
    let vs = e.right.iter().map(|p| p.0).collect();
    match e.kind {
        Kind::L => JSeq::left(e.weight(), us),
        Kind::R => JSeq::right(e.weight(), vs),
        Kind::Full => JSeq::full(e.weight(), us, vs),
    }
}

/// Total order on tagged sequences, parallel to [`cmp_total_j`] with the
/// weight-major pair order on the word `(u_r,k_r)..(u_1,k_1)(v_r,l_r)..(v_1,l_1)`.
pub fn cmp_total_e(a: &ESeq, b: &ESeq) -> Ordering {
    a.kind
        .cmp(&b.kind)
        .then_with(|| b.size().cmp(&a.size()))
        .then_with(|| a.weight().cmp(&b.weight()))
        .then_with(|| a.word().cmp(&b.word()))
}

fn dominated(lo: &[Pair], hi: &[Pair]) -> bool {
    hi.len() <= lo.len() && hi.iter().zip(lo).all(|(h, l)| pair_key(l) <= pair_key(h))
}

/// Which sides of `e` constrain a representative of `j`, or `None` when the
/// kinds are not comparable.
fn constrained_sides(e: &ESeq, j_kind: Kind, j_size: usize) -> Option<(bool, bool)> {
    if j_size > e.size() {
        return None;
    }
    match (e.kind, j_kind) {
        (Kind::L, Kind::L) | (Kind::L, Kind::Full) => Some((true, false)),
        (Kind::R, Kind::R) | (Kind::R, Kind::Full) => Some((false, true)),
        (Kind::Full, Kind::Full) => Some((true, true)),
        _ => None,
    }
}

/// The partial order `E1 <= E2`: positionwise pair dominance on the first
/// `sz(E2)` slots of the sides that both carry.
pub fn le_partial_e(e1: &ESeq, e2: &ESeq) -> bool {
    match constrained_sides(e1, e2.kind, e2.size()) {
        None => false,
        Some((l, r)) => (!l || dominated(&e1.left, &e2.left)) && (!r || dominated(&e1.right, &e2.right)),
    }
}

impl fmt::Display for ESeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let left = list(self.left.iter().rev().map(|(u, k)| format!("({u},{k})")));
        let right = list(self.right.iter().map(|(v, l)| format!("({v},{l})")));
        match self.kind {
            Kind::L => write!(f, "({left}|"),
            Kind::R => write!(f, "|{right})"),
            Kind::Full => write!(f, "({left}|{right})"),
        }
    }
}

fn parse_pairs(s: &str) -> Result<Vec<Pair>> {
    let bad = || Error::Parse(format!("malformed pair list '{s}'"));
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let inner = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = inner.find(')').ok_or_else(bad)?;
        let (a, b) = inner[..close].split_once(',').ok_or_else(bad)?;
        out.push((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?));
        rest = inner[close + 1..].strip_prefix(',').unwrap_or(&inner[close + 1..]);
    }
    Ok(out)
}

impl std::str::FromStr for ESeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("malformed tagged sequence '{s}'"));
        let bar = s.find('|').ok_or_else(bad)?;
        let (lhs, rhs) = (&s[..bar], &s[bar + 1..]);
        let e = match (lhs.is_empty(), rhs.is_empty()) {
            (false, true) => {
                let l = parse_pairs(lhs.strip_prefix('(').ok_or_else(bad)?)?;
                ESeq::new_left(l.into_iter().rev().collect())
            }
            (true, false) => ESeq::new_right(parse_pairs(rhs.strip_suffix(')').ok_or_else(bad)?)?),
            (false, false) => {
                let l = parse_pairs(lhs.strip_prefix('(').ok_or_else(bad)?)?;
                let r = parse_pairs(rhs.strip_suffix(')').ok_or_else(bad)?)?;
                ESeq::new_full(l.into_iter().rev().collect(), r)
            }
            _ => return Err(bad()),
        };
        if !e.is_valid() {
            return Err(bad());
        }
        Ok(e)
    }
}

/// `E(h')`: keep positions `1..=s`.
pub fn restrict(e: &ESeq, s: usize) -> Result<ESeq> {
    if s > e.size() || s == 0 {
        return Err(Error::Precondition(format!("cannot restrict size {} to {s}", e.size())));
    }
    let cut = |xs: &Vec<Pair>| xs.iter().take(s).copied().collect::<Vec<_>>();
    Ok(ESeq { kind: e.kind, left: cut(&e.left), right: cut(&e.right) })
}

/// `E(L)`.
pub fn left_part(e: &ESeq) -> Result<ESeq> {
    if !e.kind.has_left() {
        return Err(Error::Incompatible);
    }
    Ok(ESeq::new_left(e.left.clone()))
}

/// `E(R)`.
pub fn right_part(e: &ESeq) -> Result<ESeq> {
    if !e.kind.has_right() {
        return Err(Error::Incompatible);
    }
    Ok(ESeq::new_right(e.right.clone()))
}

/// `F(E^L, E^R)`.
pub fn fuse(el: &ESeq, er: &ESeq) -> Result<ESeq> {
    if el.kind != Kind::L || er.kind != Kind::R || el.size() != er.size() {
        return Err(Error::Incompatible);
    }
    Ok(ESeq::new_full(el.left.clone(), er.right.clone()))
}

/// Every tagged sequence `E` with `||E|| = J`: all bijections of indices onto
/// positions and all compositions of the weight over the slots (left slots first).
pub fn eclass(j: &JSeq) -> Vec<ESeq> {
    let s = j.size();
    let nslots = if j.kind == Kind::Full { 2 * s } else { s };
    let perms_l = if j.kind.has_left() { permutations(s) } else { vec![(Vec::new(), 1)] };
    let perms_r = if j.kind.has_right() { permutations(s) } else { vec![(Vec::new(), 1)] };
    let mut out = Vec::new();
    for comp in compositions(j.weight, nslots) {
        let (kl, kr) = if j.kind == Kind::R { (&comp[..0], &comp[..]) } else { comp.split_at(s) };
        for (pl, _) in &perms_l {
            for (pr, _) in &perms_r {
                let left: Vec<Pair> = pl.iter().enumerate().map(|(i, &x)| (j.us[x], kl[i])).collect();
                let right: Vec<Pair> = pr.iter().enumerate().map(|(i, &x)| (j.vs[x], kr[i])).collect();
                out.push(ESeq { kind: j.kind, left, right });
            }
        }
    }
    out
}

/// Smallest shift `i0` with `target[i] >= sorted(base)[i - i0]` for `i0 < i <= len`.
fn shift_number(base: &[u16], target: &[u16]) -> usize {
    let mut b = base.to_vec();
    b.sort_unstable();
    let n = target.len();
    (0..=n).find(|&i0| (i0..n).all(|i| target[i] >= b[i - i0])).unwrap()
}

/// The L-number `L(E, J')`.
pub fn lnum(e: &ESeq, j: &JSeq) -> Result<usize> {
    if !e.kind.has_left() || !j.kind.has_left() || j.size() > e.size() {
        return Err(Error::Incompatible);
    }
    let base: Vec<u16> = e.left[..j.size()].iter().map(|p| p.0).collect();
    Ok(shift_number(&base, &j.us))
}

/// The R-number `R(E, J')`.
pub fn rnum(e: &ESeq, j: &JSeq) -> Result<usize> {
    if !e.kind.has_right() || !j.kind.has_right() || j.size() > e.size() {
        return Err(Error::Incompatible);
    }
    let base: Vec<u16> = e.right[..j.size()].iter().map(|p| p.0).collect();
    Ok(shift_number(&base, &j.vs))
}

/// Whether some representative of `J'` dominates `E`: the weight surplus of
/// `J'` over `E(h')` must cover the L- and R-numbers of the constrained sides.
pub fn is_greater(j: &JSeq, e: &ESeq) -> bool {
    let Some((l, r)) = constrained_sides(e, j.kind, j.size()) else {
        return false;
    };
    let s = j.size();
    let mut need = 0u64;
    if l {
        need += e.left[..s].iter().map(|p| p.1 as u64).sum::<u64>() + lnum(e, j).unwrap() as u64;
    }
    if r {
        need += e.right[..s].iter().map(|p| p.1 as u64).sum::<u64>() + rnum(e, j).unwrap() as u64;
    }
    j.weight as u64 >= need
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    Left,
    Right,
}

/// Greedy construction of the largest representative of `j` dominating the
/// slot bounds; `bounds_l[i]`/`bounds_r[i]` constrain position `i + 1`.
fn greedy_largest(j: &JSeq, bounds_l: Option<&[Pair]>, bounds_r: Option<&[Pair]>) -> Option<ESeq> {
    let s = j.size();
    let mut slots: Vec<(Side, usize)> = Vec::new();
    if j.kind.has_left() {
        slots.extend((0..s).rev().map(|i| (Side::Left, i)));
    }
    if j.kind.has_right() {
        slots.extend((0..s).rev().map(|i| (Side::Right, i)));
    }
    let bound = |side: Side, i: usize| -> Pair {
        let b = if side == Side::Left { bounds_l } else { bounds_r };
        b.map(|b| b[i]).unwrap_or((0, 0))
    };
    let mut pool_l: Vec<u16> = j.us.clone();
    let mut pool_r: Vec<u16> = j.vs.clone();
    let mut left = vec![(0u16, 0u32); if j.kind.has_left() { s } else { 0 }];
    let mut right = vec![(0u16, 0u32); if j.kind.has_right() { s } else { 0 }];

    // minimal weight still needed by the slots from index `t` on
    let needed = |t: usize, pool_l: &[u16], pool_r: &[u16]| -> u64 {
        let mut need = 0u64;
        for (side, pool) in [(Side::Left, pool_l), (Side::Right, pool_r)] {
            let mut bs: Vec<Pair> = slots[t..].iter().filter(|x| x.0 == side).map(|x| bound(side, x.1)).collect();
            need += bs.iter().map(|b| b.1 as u64).sum::<u64>();
            bs.sort_unstable();
            let mut p = pool.to_vec();
            p.sort_unstable();
            let mut matched = 0;
            for u in p {
                if matched < bs.len() && u >= bs[matched].0 {
                    matched += 1;
                }
            }
            need += (bs.len() - matched) as u64;
        }
        need
    };

    let mut remaining = j.weight;
    for t in 0..slots.len() {
        let (side, i) = slots[t];
        let b = bound(side, i);
        let mut chosen = None;
        'search: for k in (0..=remaining).rev() {
            let pool = if side == Side::Left { &pool_l } else { &pool_r };
            let mut cands = pool.clone();
            cands.sort_unstable_by(|x, y| y.cmp(x));
            for u in cands {
                if pair_key(&(u, k)) < pair_key(&b) {
                    continue;
                }
                let rest = remaining - k;
                let (mut pl, mut pr) = (pool_l.clone(), pool_r.clone());
                let pool_mut = if side == Side::Left { &mut pl } else { &mut pr };
                pool_mut.retain(|&x| x != u);
                let ok = if t + 1 == slots.len() { rest == 0 } else { needed(t + 1, &pl, &pr) <= rest as u64 };
                if ok {
                    chosen = Some((u, k, pl, pr));
                    break 'search;
                }
            }
        }
        let (u, k, pl, pr) = chosen?;
        if side == Side::Left {
            left[i] = (u, k);
        } else {
            right[i] = (u, k);
        }
        pool_l = pl;
        pool_r = pr;
        remaining -= k;
    }
    Some(ESeq { kind: j.kind, left, right })
}

/// The largest element of `E(J)` under [`cmp_total_e`].
pub fn largest_in_class(j: &JSeq) -> ESeq {
    greedy_largest(j, None, None).expect("an unconstrained class is never empty")
}

/// The largest `E'` in `E(J')` with `E <= E'`, or `None` when none exists.
pub fn largest_e_above(e: &ESeq, j: &JSeq) -> Option<ESeq> {
    let (l, r) = constrained_sides(e, j.kind, j.size())?;
    let s = j.size();
    greedy_largest(j, l.then(|| &e.left[..s]), r.then(|| &e.right[..s]))
}

/// Which side(s) of a sequence a [`min_w`] query ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WSide {
    Left,
    Right,
    Both,
}

/// The smallest size-`s` sequence built from sub-selections of the indices of
/// `J'` that is greater than `E` (on the chosen side), with minimal weight.
pub fn min_w(e: &ESeq, j: &JSeq, s: usize, side: WSide) -> Result<Option<JSeq>> {
    let (lhs, rhs) = match side {
        WSide::Left => (true, false),
        WSide::Right => (false, true),
        WSide::Both => (true, true),
    };
    if (lhs && (!e.kind.has_left() || !j.kind.has_left())) || (rhs && (!e.kind.has_right() || !j.kind.has_right())) {
        return Err(Error::Incompatible);
    }
    if s == 0 || s > j.size() || s > e.size() {
        return Err(Error::Precondition(format!("size {s} out of range")));
    }
    let base = match side {
        WSide::Left => left_part(e)?,
        WSide::Right => right_part(e)?,
        WSide::Both => {
            if e.kind != Kind::Full {
                return Err(Error::Incompatible);
            }
            e.clone()
        }
    };
    let base = restrict(&base, s)?;
    let sel_l = if lhs { subsets(j.us.len(), s) } else { vec![Vec::new()] };
    let sel_r = if rhs { subsets(j.vs.len(), s) } else { vec![Vec::new()] };
    let mut best: Option<JSeq> = None;
    for a in &sel_l {
        for b in &sel_r {
            let us: Vec<u16> = a.iter().map(|&i| j.us[i]).collect();
            let vs: Vec<u16> = b.iter().map(|&i| j.vs[i]).collect();
            let probe = match side {
                WSide::Left => JSeq::left(0, us),
                WSide::Right => JSeq::right(0, vs),
                WSide::Both => JSeq::full(0, us, vs),
            };
            let mut w = base.weight() as usize;
            if lhs {
                w += lnum(&base, &probe)?;
            }
            if rhs {
                w += rnum(&base, &probe)?;
            }
            let cand = probe.with_weight(w as u32);
            if best.as_ref().is_none_or(|b| cmp_total_j(&cand, b) == Ordering::Less) {
                best = Some(cand);
            }
        }
    }
    Ok(best)
}

/// Every alphabet element for ambient `(p, q, h)` with weight at most `max_weight`,
/// in increasing total order.
pub fn alphabet(p: usize, q: usize, h: usize, max_weight: u32) -> Vec<JSeq> {
    let mut out = Vec::new();
    let idx = |n: usize, k: usize| -> Vec<Vec<u16>> {
        subsets(n, k).into_iter().map(|s| s.into_iter().map(|i| i as u16 + 1).collect()).collect()
    };
    for w in 0..=max_weight {
        for us in idx(p, h) {
            out.push(JSeq::left(w, us));
        }
        for vs in idx(q, h) {
            out.push(JSeq::right(w, vs));
        }
        for s in 1..h {
            for us in idx(p, s) {
                for vs in idx(q, s) {
                    out.push(JSeq::full(w, us.clone(), vs));
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(s: &str) -> JSeq {
        s.parse().unwrap()
    }
    fn e(s: &str) -> ESeq {
        s.parse().unwrap()
    }

    #[test]
    fn text_round_trips() {
        for s in ["D^0(2,1|", "D^3|1,4)", "D^1(3,2|1,2)", "D^0(1|1)"] {
            assert_eq!(j(s).to_string(), s);
        }
        for s in ["((2,1),(1,0)|", "|(1,0),(2,3))", "((2,1),(1,0)|(1,0),(3,2))"] {
            assert_eq!(e(s).to_string(), s);
        }
        assert!("D^0(1,2|".parse::<JSeq>().is_err());
        assert!("((1,0),(1,2)|".parse::<ESeq>().is_err());
    }

    #[test]
    fn normalize_examples() {
        let s = normalize_raw(Kind::L, 0, &[1, 2], &[]);
        assert_eq!(s, SignedJ { sign: -1, seq: Some(j("D^0(2,1|")) });
        assert_eq!(normalize_raw(Kind::L, 0, &[1, 1], &[]).sign, 0);
        assert_eq!(normalize_raw(Kind::L, 2, &[3, 1], &[]), SignedJ { sign: 1, seq: Some(j("D^2(3,1|")) });
        assert_eq!(normalize_raw(Kind::Full, 0, &[1, 2], &[2, 1]).sign, 1);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm_of_e(&e("((2,1),(1,0)|")), j("D^1(2,1|"));
        assert_eq!(norm_of_e(&ESeq::new_left(vec![(3, 2), (1, 0)])), j("D^2(3,1|"));
        assert_eq!(norm_of_e(&e("((1,0)|(1,0))")), j("D^0(1|1)"));
    }

    #[test]
    fn eclass_counts() {
        assert_eq!(eclass(&j("D^0(2,1|")).len(), 2);
        assert_eq!(eclass(&j("D^1(2,1|")).len(), 4);
        assert_eq!(eclass(&j("D^2(2,1|")).len(), 6);
        assert_eq!(eclass(&j("D^1(1|1)")).len(), 2);
        for x in eclass(&j("D^2(3,1|2,4)")) {
            assert_eq!(norm_of_e(&x), j("D^2(3,1|2,4)"));
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(cmp_total_j(&j("D^0(2,1|"), &j("D^1(2,1|")), Ordering::Less);
        assert!(j("D^0(2,1|") < j("D^0|1,2)"));
        assert!(j("D^0|1,2)") < j("D^0(1|1)"));
        assert!(j("D^5(2,1|1,2)") < j("D^0(1|1)"));
        assert!(le_partial_e(&e("((2,0),(1,0)|"), &e("((2,1),(1,0)|")));
        assert!(!le_partial_e(&e("((3,0),(1,0)|"), &e("((2,0),(1,0)|")));
        assert!(le_partial_e(&e("((2,1),(1,0)|(1,0),(3,2))"), &e("((1,0)|(1,0))")));
    }

    #[test]
    fn restrict_and_fuse() {
        let x = e("((2,1),(1,0)|(1,0),(3,2))");
        assert_eq!(restrict(&x, 1).unwrap(), e("((1,0)|(1,0))"));
        assert_eq!(fuse(&left_part(&x).unwrap(), &right_part(&x).unwrap()).unwrap(), x);
        assert_eq!(left_part(&e("((2,1),(1,0)|")).unwrap(), e("((2,1),(1,0)|"));
        assert!(restrict(&x, 3).is_err());
    }

    #[test]
    fn l_numbers_and_greater() {
        assert_eq!(lnum(&e("((3,0),(1,0)|"), &j("D^0(2,1|")).unwrap(), 1);
        assert_eq!(lnum(&e("((2,0),(1,0)|"), &j("D^0(2,1|")).unwrap(), 0);
        assert!(is_greater(&j("D^1(2,1|"), &e("((2,0),(1,0)|")));
        assert!(!is_greater(&j("D^0(2,1|"), &e("((3,0),(1,0)|")));
        let x = e("((1,1),(3,0)|");
        assert!(is_greater(&norm_of_e(&x), &x));
    }

    #[test]
    fn largest_examples() {
        assert_eq!(largest_e_above(&e("((2,0),(1,0)|"), &j("D^1(2,1|")), Some(e("((2,1),(1,0)|")));
        assert_eq!(largest_e_above(&e("((3,0),(1,0)|"), &j("D^0(2,1|")), None);
        assert_eq!(largest_e_above(&ESeq::zero_left(2), &j("D^0(2,1|")), Some(e("((2,0),(1,0)|")));
        // a permuted representative can be the largest
        assert_eq!(largest_e_above(&e("((3,0),(2,0)|"), &j("D^1(3,1|")), Some(e("((1,1),(3,0)|")));
        assert_eq!(largest_in_class(&j("D^2(3,1|2,4)")), e("((3,2),(1,0)|(2,0),(4,0))"));
    }

    #[test]
    fn alphabet_is_sorted_and_complete() {
        let a = alphabet(2, 2, 2, 1);
        assert_eq!(a.len(), 2 * (1 + 1 + 4));
        assert!(a.windows(2).all(|w| w[0] < w[1]));
    }
}
