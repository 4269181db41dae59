//! Relation families among the generators, their kernel check under the
//! evaluation map, and exact graded linear algebra in the presentation ring.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::diffring::{pres_x, pres_y, pres_z, tri_degree, Ambient, PresVar};
use crate::error::{Error, Result};
use crate::linalg::{sparse_row, unimodular_inverse, Echelon, SparseRow};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::{binomial, compositions, permutations, sort_sign, subsets, Coeff};
use crate::seqcomb::{normalize_raw, Kind};
use crate::smt::Evaluator;
use crate::{Integer, JPoly, PresPoly};

/// Names of the relation families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelFamily {
    /// `dbar^n (det X - Y Z)`.
    DetYZ,
    /// Expansion of a repeated-row determinant along an X column.
    XYPlucker,
    XZPlucker,
    /// Shuffle relations among pairs of Y's with depth `l`.
    YYShuffle,
    ZZShuffle,
    /// Shuffles between a mixed minor and a left (right) minor.
    BasicPlus4,
    BasicPlus5,
    /// Exchange relations: left minor against mixed minor.
    ExchangeLeftMixed,
    /// Right minor against mixed minor.
    ExchangeRightMixed,
    ExchangeLeftLeft,
    ExchangeRightRight,
}

pub const ALL_FAMILIES: [RelFamily; 11] = [
    RelFamily::DetYZ,
    RelFamily::XYPlucker,
    RelFamily::XZPlucker,
    RelFamily::YYShuffle,
    RelFamily::ZZShuffle,
    RelFamily::BasicPlus4,
    RelFamily::BasicPlus5,
    RelFamily::ExchangeLeftMixed,
    RelFamily::ExchangeRightMixed,
    RelFamily::ExchangeLeftLeft,
    RelFamily::ExchangeRightRight,
];

impl RelFamily {
    pub fn name(self) -> &'static str {
        match self {
            RelFamily::DetYZ => "det-yz",
            RelFamily::XYPlucker => "xy-plucker",
            RelFamily::XZPlucker => "xz-plucker",
            RelFamily::YYShuffle => "yy-shuffle",
            RelFamily::ZZShuffle => "zz-shuffle",
            RelFamily::BasicPlus4 => "mixed-left-shuffle",
            RelFamily::BasicPlus5 => "mixed-right-shuffle",
            RelFamily::ExchangeLeftMixed => "exchange-left-mixed",
            RelFamily::ExchangeRightMixed => "exchange-right-mixed",
            RelFamily::ExchangeLeftLeft => "exchange-left-left",
            RelFamily::ExchangeRightRight => "exchange-right-right",
        }
    }
}

impl fmt::Display for RelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ALL_FAMILIES
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown relation family `{s}`")))
    }
}

/// One member of a relation family.
///
/// Index lists follow the written order of the displays: left lists run
/// `u_h, ..., u_1`, right lists `v_1, ..., v_h`. `pool` holds the indices
/// that are permuted (shuffled) between the two factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub family: RelFamily,
    pub h: u16,
    /// Derivative order (the total weight `m` for exchange relations).
    pub n: u32,
    /// Shuffle depth where applicable.
    pub l: u32,
    /// First-factor fixed indices.
    pub fixed: Vec<u16>,
    /// Second-factor fixed indices (exchange relations).
    pub fixed2: Vec<u16>,
    pub pool: Vec<u16>,
    /// Indices on the opposite side of a mixed minor, or the single column
    /// (row) index of X in the Plucker families.
    pub other: Vec<u16>,
    /// How many pool entries go to the first factor.
    pub split: usize,
    /// Exchange relations: start of the prescribed coefficient window.
    pub k0: u32,
    /// Exchange relations: prescribed coefficients `a_{k0}..a_{k0+l0}`.
    pub given: Vec<Integer>,
}

impl RelationInstance {
    fn base(family: RelFamily, h: u16) -> Self {
        RelationInstance {
            family,
            h,
            n: 0,
            l: 0,
            fixed: vec![],
            fixed2: vec![],
            pool: vec![],
            other: vec![],
            split: 0,
            k0: 0,
            given: vec![],
        }
    }

    pub fn det_yz(h: u16, us: Vec<u16>, vs: Vec<u16>, n: u32) -> Self {
        RelationInstance { n, pool: us, other: vs, ..Self::base(RelFamily::DetYZ, h) }
    }

    /// `us` has `h + 1` entries `u_0..u_h`.
    pub fn xy_plucker(h: u16, us: Vec<u16>, v: u16, n: u32) -> Self {
        RelationInstance { n, pool: us, other: vec![v], ..Self::base(RelFamily::XYPlucker, h) }
    }

    pub fn xz_plucker(h: u16, u: u16, vs: Vec<u16>, n: u32) -> Self {
        RelationInstance { n, pool: vs, other: vec![u], ..Self::base(RelFamily::XZPlucker, h) }
    }

    /// `fixed` has `h - i` entries, `pool` has `h + i`.
    pub fn shuffle(family: RelFamily, h: u16, fixed: Vec<u16>, pool: Vec<u16>, l: u32, n: u32) -> Self {
        let split = h as usize - fixed.len();
        RelationInstance { n, l, fixed, pool, split, ..Self::base(family, h) }
    }

    /// Mixed minor of size `other.len()` carrying `fixed` plus `i` pool
    /// entries, against a one-sided minor carrying the remaining `h`.
    pub fn basic_plus(family: RelFamily, h: u16, fixed: Vec<u16>, pool: Vec<u16>, other: Vec<u16>, l: u32) -> Self {
        let split = other.len() - fixed.len();
        RelationInstance { l, fixed, pool, other, split, ..Self::base(family, h) }
    }

    /// Exchange relation: `split = i1` pool entries go to the first factor.
    #[allow(clippy::too_many_arguments)]
    pub fn exchange(
        family: RelFamily,
        h: u16,
        fixed: Vec<u16>,
        fixed2: Vec<u16>,
        pool: Vec<u16>,
        other: Vec<u16>,
        split: usize,
        m: u32,
        k0: u32,
        given: Vec<Integer>,
    ) -> Self {
        RelationInstance { n: m, fixed, fixed2, pool, other, split, k0, given, ..Self::base(family, h) }
    }

    /// `i1 + i2 - h - 1` for exchange relations.
    pub fn l0(&self) -> Option<u32> {
        let pooled = self.pool.len() as i64;
        let v = pooled - self.h as i64 - 1;
        (v >= 0).then_some(v as u32)
    }

    pub fn to_json(&self) -> Value {
        let mut idx = serde_json::Map::new();
        let mut put = |k: &str, v: &Vec<u16>| {
            if !v.is_empty() {
                idx.insert(k.into(), json!(v));
            }
        };
        put("fixed", &self.fixed);
        put("fixed2", &self.fixed2);
        put("pool", &self.pool);
        put("other", &self.other);
        let mut out = json!({
            "family": self.family.name(),
            "h": self.h,
            "indices": Value::Object(idx),
            "n": self.n,
            "l": self.l,
        });
        if is_exchange(self.family) {
            out["split"] = json!(self.split);
            out["k0"] = json!(self.k0);
            out["given"] = json!(self.given.iter().map(|g| g.to_string()).collect::<Vec<_>>());
        }
        out
    }
}

impl RelationInstance {
    /// Indices used on the `a` side and on the `b` side.
    pub fn index_sets(&self) -> (Vec<u16>, Vec<u16>) {
        let mut near: Vec<u16> = self.fixed.iter().chain(&self.fixed2).chain(&self.pool).copied().collect();
        let mut far = self.other.clone();
        let swapped = matches!(
            self.family,
            RelFamily::XZPlucker
                | RelFamily::ZZShuffle
                | RelFamily::BasicPlus5
                | RelFamily::ExchangeRightMixed
                | RelFamily::ExchangeRightRight
        );
        if swapped {
            std::mem::swap(&mut near, &mut far);
        }
        for v in [&mut near, &mut far] {
            v.sort_unstable();
            v.dedup();
        }
        (near, far)
    }

    /// Whether each side uses exactly the indices `1..=r` for some `r`.
    /// Evaluation commutes with increasing relabelings, so these instances
    /// represent all others.
    pub fn is_canonical(&self) -> bool {
        let (a, b) = self.index_sets();
        let initial = |v: &[u16]| v.iter().enumerate().all(|(i, &x)| x as usize == i + 1);
        initial(&a) && initial(&b)
    }
}

fn is_exchange(f: RelFamily) -> bool {
    matches!(
        f,
        RelFamily::ExchangeLeftMixed
            | RelFamily::ExchangeRightMixed
            | RelFamily::ExchangeLeftLeft
            | RelFamily::ExchangeRightRight
    )
}

/// A generated relation, living in the presentation ring or in the ring of
/// alphabet symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    Pres(PresPoly),
    Jet(JPoly),
}

impl Relation {
    pub fn is_zero(&self) -> bool {
        match self {
            Relation::Pres(f) => f.is_zero(),
            Relation::Jet(f) => f.is_zero(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Relation::Pres(f) => f.len(),
            Relation::Jet(f) => f.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flip the sign of the first term (a negative control).
    pub fn corrupted(&self) -> Relation {
        fn flip<V: crate::poly::Variable>(f: &Polynomial<V, Integer>) -> Polynomial<V, Integer> {
            let mut g = f.clone();
            if let Some((m, c)) = f.terms().next() {
                g.add_term(m.clone(), -(c.clone() * Integer::from(2)));
            }
            g
        }
        match self {
            Relation::Pres(f) => Relation::Pres(flip(f)),
            Relation::Jet(f) => Relation::Jet(flip(f)),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Pres(p) => p.fmt(f),
            Relation::Jet(p) => p.fmt(f),
        }
    }
}

fn int(x: i64) -> Integer {
    Integer::from(x)
}

/// Assignments of pool entries to the two factors, each counted once.
/// Yields (first part, second part, sign of the shuffle), both parts in pool order.
fn shuffles(pool: &[u16], first: usize) -> Vec<(Vec<u16>, Vec<u16>, i32)> {
    subsets(pool.len(), first)
        .into_iter()
        .map(|s| {
            let t: Vec<usize> = (0..pool.len()).filter(|i| !s.contains(i)).collect();
            let order: Vec<usize> = s.iter().chain(&t).copied().collect();
            let sign = sort_sign(&order);
            (s.iter().map(|&i| pool[i]).collect(), t.iter().map(|&i| pool[i]).collect(), sign)
        })
        .collect()
}

/// The `(l0+1) x (l0+1)` matrix `c[j][i] = C(k0 + j, i)`.
pub fn binomial_matrix(k0: u32, l0: u32) -> Vec<Vec<BigInt>> {
    (0..=l0).map(|j| (0..=l0).map(|i| binomial(k0 + j, i)).collect()).collect()
}

/// Extend prescribed coefficients `a_{k0}..a_{k0+l0}` to `a_0..a_m` so that
/// the combination is a sum of derivatives of vanishing shuffles.
pub fn straightening_coeffs(k0: u32, l0: u32, m: u32, given: &[Integer]) -> Result<Vec<Integer>> {
    if k0 + l0 > m {
        return Err(Error::Precondition(format!("need k0 + l0 <= m, got {k0} + {l0} > {m}")));
    }
    if given.len() != l0 as usize + 1 {
        return Err(Error::Length { expected: l0 as usize + 1, found: given.len() });
    }
    let b = unimodular_inverse(&binomial_matrix(k0, l0))
        .ok_or_else(|| Error::Precondition("binomial matrix is not unimodular".into()))?;
    // w[l] = sum_j b[l][j] * a_{k0+j}
    let w: Vec<Integer> = (0..=l0 as usize).map(|l| (0..=l0 as usize).map(|j| &b[l][j] * &given[j]).sum()).collect();
    Ok((0..=m).map(|k| (0..=l0).map(|l| binomial(k, l) * &w[l as usize]).sum()).collect())
}

/// Generate the relation element of an instance.
pub fn gen_relation(inst: &RelationInstance) -> Result<Relation> {
    let h = inst.h as usize;
    let n = inst.n;
    let need = |cond: bool, what: &str| {
        if cond {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{}: {what}", inst.family)))
        }
    };
    match inst.family {
        RelFamily::DetYZ => {
            let (us, vs) = (&inst.pool, &inst.other);
            need(us.len() == h && vs.len() == h, "index lists must have length h")?;
            let mut f = PresPoly::zero();
            for comp in compositions(n, h) {
                for (perm, sign) in permutations(h) {
                    let mut t = PresPoly::constant(int(sign as i64));
                    for a in 0..h {
                        t = t.mul_ref(&pres_x(us[a], vs[perm[a]], comp[a]));
                    }
                    f = f + t;
                }
            }
            for k in 0..=n {
                f = f - pres_y(us, k).mul_ref(&pres_z(vs, n - k));
            }
            Ok(Relation::Pres(f))
        }
        RelFamily::XYPlucker | RelFamily::XZPlucker => {
            let (list, o) = (&inst.pool, inst.other.first().copied());
            need(list.len() == h + 1 && o.is_some(), "need h + 1 indices and one X index")?;
            let o = o.unwrap_or_default();
            let mut f = PresPoly::zero();
            for k in 0..=n {
                for i in 0..=h {
                    let rest: Vec<u16> = list.iter().enumerate().filter(|&(a, _)| a != i).map(|(_, &u)| u).collect();
                    let t = if inst.family == RelFamily::XYPlucker {
                        pres_x(list[i], o, k).mul_ref(&pres_y(&rest, n - k))
                    } else {
                        pres_x(o, list[i], k).mul_ref(&pres_z(&rest, n - k))
                    };
                    f.add_assign_scaled(&t, &int(if i % 2 == 0 { 1 } else { -1 }));
                }
            }
            Ok(Relation::Pres(f))
        }
        RelFamily::YYShuffle | RelFamily::ZZShuffle => {
            let i = inst.split;
            need(
                i >= 1 && i <= h && inst.fixed.len() == h - i && inst.pool.len() == h + i,
                "need 1 <= i <= h, |fixed| = h - i, |pool| = h + i",
            )?;
            need(inst.l < i as u32, "need l < i")?;
            let sym =
                |raw: &[u16], k: u32| if inst.family == RelFamily::YYShuffle { pres_y(raw, k) } else { pres_z(raw, k) };
            let mut f = PresPoly::zero();
            for (s, t, sign) in shuffles(&inst.pool, i) {
                // first factor: fixed then the shuffled-in entries, in reverse pool order
                let first: Vec<u16> = inst.fixed.iter().chain(s.iter().rev()).copied().collect();
                let second: Vec<u16> = t.iter().rev().copied().collect();
                for k in inst.l..=n {
                    let c = binomial(k, inst.l) * sign;
                    f.add_assign_scaled(&sym(&first, n - k).mul_ref(&sym(&second, k)), &c);
                }
            }
            Ok(Relation::Pres(f))
        }
        RelFamily::BasicPlus4 | RelFamily::BasicPlus5 => {
            let i = inst.split;
            let hp = inst.other.len();
            need(
                i >= 1 && hp >= i && hp <= h && inst.fixed.len() == hp - i && inst.pool.len() == h + i,
                "need 1 <= i <= h' <= h",
            )?;
            need(inst.l < i as u32, "need l < i")?;
            let left = inst.family == RelFamily::BasicPlus4;
            let mut f = JPoly::zero();
            for (s, t, sign) in shuffles(&inst.pool, i) {
                let moved: Vec<u16> = inst.fixed.iter().chain(s.iter().rev()).copied().collect();
                let rest: Vec<u16> = t.iter().rev().copied().collect();
                let (mixed, side) = if left {
                    (normalize_raw(Kind::Full, inst.l, &moved, &inst.other), normalize_raw(Kind::L, 0, &rest, &[]))
                } else {
                    let moved: Vec<u16> = moved.iter().rev().copied().collect();
                    let rest: Vec<u16> = rest.iter().rev().copied().collect();
                    (normalize_raw(Kind::Full, inst.l, &inst.other, &moved), normalize_raw(Kind::R, 0, &[], &rest))
                };
                let sg = sign * mixed.sign * side.sign;
                if let (Some(a), Some(b), true) = (mixed.seq, side.seq, sg != 0) {
                    f.add_term(Monomial::from_pairs([(a, 1), (b, 1)]), int(sg as i64));
                }
            }
            Ok(Relation::Jet(f))
        }
        fam => {
            let i1 = inst.split;
            let i2 = inst.pool.len() - i1.min(inst.pool.len());
            let l0 = inst.l0().ok_or_else(|| Error::Precondition(format!("{fam}: need i1 + i2 > h")))?;
            let (mixed_second, left) = match fam {
                RelFamily::ExchangeLeftMixed => (true, true),
                RelFamily::ExchangeRightMixed => (true, false),
                RelFamily::ExchangeLeftLeft => (false, true),
                _ => (false, false),
            };
            let h2 = if mixed_second { inst.other.len() } else { h };
            need(i1 <= h && inst.fixed.len() == h - i1, "first factor must have h entries")?;
            need(i2 <= h2 && inst.fixed2.len() == h2 - i2 && h2 <= h, "second factor must have h' <= h entries")?;
            let a = straightening_coeffs(inst.k0, l0, n, &inst.given)?;
            let mut f = JPoly::zero();
            for (s, t, sign) in shuffles(&inst.pool, i1) {
                let first: Vec<u16> = inst.fixed.iter().chain(&s).copied().collect();
                let second: Vec<u16> = inst.fixed2.iter().chain(&t).copied().collect();
                for (k, ak) in a.iter().enumerate() {
                    if ak.is_zero() {
                        continue;
                    }
                    let k = k as u32;
                    let (x, y) = if left {
                        let x = normalize_raw(Kind::L, n - k, &first, &[]);
                        let y = if mixed_second {
                            normalize_raw(Kind::Full, k, &second, &inst.other)
                        } else {
                            normalize_raw(Kind::L, k, &second, &[])
                        };
                        (x, y)
                    } else {
                        let first: Vec<u16> = first.iter().rev().copied().collect();
                        let second: Vec<u16> = second.iter().rev().copied().collect();
                        let x = normalize_raw(Kind::R, n - k, &[], &first);
                        let y = if mixed_second {
                            normalize_raw(Kind::Full, k, &inst.other, &second)
                        } else {
                            normalize_raw(Kind::R, k, &[], &second)
                        };
                        (x, y)
                    };
                    let sg = sign * x.sign * y.sign;
                    if let (Some(xs), Some(ys), true) = (x.seq, y.seq, sg != 0) {
                        f.add_term(Monomial::from_pairs([(xs, 1), (ys, 1)]), ak * sg);
                    }
                }
            }
            Ok(Relation::Jet(f))
        }
    }
}

/// Whether the evaluation map sends the relation to zero. Any exact
/// coefficient ring works; machine integers abort on overflow.
pub fn verify_kernel<C: Coeff>(ev: &mut Evaluator<C>, rel: &Relation) -> bool {
    match rel {
        Relation::Pres(f) => ev.q_eval_pres(&f.map_coeffs(C::from_bigint)).is_zero(),
        Relation::Jet(f) => ev.q_eval_jpoly(&f.map_coeffs(C::from_bigint)).is_zero(),
    }
}

fn increasing(bound: u16, len: usize) -> Vec<Vec<u16>> {
    subsets(bound as usize, len).into_iter().map(|s| s.into_iter().map(|i| i as u16 + 1).collect()).collect()
}

/// Every instance of the chosen families for the ambient, with derivative
/// order up to `n_max`. Index lists run over strictly increasing choices;
/// exchange relations use the unit coefficient windows.
pub fn instances(amb: &Ambient, families: &[RelFamily], n_max: u32) -> Vec<RelationInstance> {
    let (p, q, h) = (amb.p, amb.q, amb.h);
    let hu = h as usize;
    let mut out = Vec::new();
    for &fam in families {
        match fam {
            RelFamily::DetYZ => {
                for us in increasing(p, hu) {
                    for vs in increasing(q, hu) {
                        for n in 0..=n_max {
                            out.push(RelationInstance::det_yz(h, us.clone(), vs.clone(), n));
                        }
                    }
                }
            }
            RelFamily::XYPlucker | RelFamily::XZPlucker => {
                let (long, short) = if fam == RelFamily::XYPlucker { (p, q) } else { (q, p) };
                for list in increasing(long, hu + 1) {
                    for o in 1..=short {
                        for n in 0..=n_max {
                            out.push(if fam == RelFamily::XYPlucker {
                                RelationInstance::xy_plucker(h, list.clone(), o, n)
                            } else {
                                RelationInstance::xz_plucker(h, o, list.clone(), n)
                            });
                        }
                    }
                }
            }
            RelFamily::YYShuffle | RelFamily::ZZShuffle => {
                let bound = if fam == RelFamily::YYShuffle { p } else { q };
                for i in 1..=hu {
                    for fixed in increasing(bound, hu - i) {
                        for pool in increasing(bound, hu + i) {
                            for l in 0..i as u32 {
                                for n in l..=n_max {
                                    out.push(RelationInstance::shuffle(fam, h, fixed.clone(), pool.clone(), l, n));
                                }
                            }
                        }
                    }
                }
            }
            RelFamily::BasicPlus4 | RelFamily::BasicPlus5 => {
                let (near, far) = if fam == RelFamily::BasicPlus4 { (p, q) } else { (q, p) };
                for hp in 1..=hu {
                    for i in 1..=hp {
                        for fixed in increasing(near, hp - i) {
                            for pool in increasing(near, hu + i) {
                                for other in increasing(far, hp) {
                                    for l in 0..i as u32 {
                                        out.push(RelationInstance::basic_plus(
                                            fam,
                                            h,
                                            fixed.clone(),
                                            pool.clone(),
                                            other.clone(),
                                            l,
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            fam => {
                let mixed = matches!(fam, RelFamily::ExchangeLeftMixed | RelFamily::ExchangeRightMixed);
                let left = matches!(fam, RelFamily::ExchangeLeftMixed | RelFamily::ExchangeLeftLeft);
                let (near, far) = if left { (p, q) } else { (q, p) };
                let sizes: Vec<usize> = if mixed { (1..=hu).collect() } else { vec![hu] };
                for h2 in sizes {
                    for i1 in 0..=hu {
                        for i2 in 0..=h2 {
                            if i1 + i2 <= hu {
                                continue;
                            }
                            let l0 = (i1 + i2 - hu - 1) as u32;
                            let others = if mixed { increasing(far, h2) } else { vec![vec![]] };
                            for fixed in increasing(near, hu - i1) {
                                for fixed2 in increasing(near, h2 - i2) {
                                    for pool in increasing(near, i1 + i2) {
                                        for other in &others {
                                            for m in l0..=n_max.max(l0) {
                                                if m > n_max {
                                                    break;
                                                }
                                                for k0 in 0..=m - l0 {
                                                    for j in 0..=l0 as usize {
                                                        let mut given = vec![Integer::zero(); l0 as usize + 1];
                                                        given[j] = Integer::one();
                                                        out.push(RelationInstance::exchange(
                                                            fam,
                                                            h,
                                                            fixed.clone(),
                                                            fixed2.clone(),
                                                            pool.clone(),
                                                            other.clone(),
                                                            i1,
                                                            m,
                                                            k0,
                                                            given,
                                                        ));
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// The instances of [`instances`] whose index sets are initial segments.
pub fn canonical_instances(amb: &Ambient, families: &[RelFamily], n_max: u32) -> Vec<RelationInstance> {
    instances(amb, families, n_max).into_iter().filter(RelationInstance::is_canonical).collect()
}

/// All presentation-ring relations (determinant, Plucker and shuffle families)
/// of derivative order up to `n_max`; shuffles of positive depth only when
/// `with_deep_shuffles`.
pub fn presentation_relations(amb: &Ambient, n_max: u32, with_deep_shuffles: bool) -> Vec<PresPoly> {
    let fams =
        [RelFamily::DetYZ, RelFamily::XYPlucker, RelFamily::XZPlucker, RelFamily::YYShuffle, RelFamily::ZZShuffle];
    instances(amb, &fams, n_max)
        .into_iter()
        .filter(|inst| with_deep_shuffles || inst.l == 0)
        .filter_map(|inst| match gen_relation(&inst) {
            Ok(Relation::Pres(f)) if !f.is_zero() => Some(f),
            _ => None,
        })
        .collect()
}

/// Only the shuffle relations of positive depth.
pub fn deep_shuffle_relations(amb: &Ambient, n_max: u32) -> Vec<PresPoly> {
    instances(amb, &[RelFamily::YYShuffle, RelFamily::ZZShuffle], n_max)
        .into_iter()
        .filter(|inst| inst.l > 0)
        .filter_map(|inst| match gen_relation(&inst) {
            Ok(Relation::Pres(f)) if !f.is_zero() => Some(f),
            _ => None,
        })
        .collect()
}

pub type TriDegree = (u32, u32, u32);

/// The monomials of one tri-degree of the presentation ring.
#[derive(Clone, Debug)]
pub struct GradedComponent {
    pub degree: TriDegree,
    pub basis: Vec<Monomial<PresVar>>,
}

impl GradedComponent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn variables_below(deg: TriDegree, amb: &Ambient) -> Vec<PresVar> {
    let (p, q, h) = (amb.p, amb.q, amb.h);
    let mut vars = Vec::new();
    for k in 0..=deg.2 {
        if deg.0 >= 1 && deg.1 >= 1 {
            for i in 1..=p {
                for j in 1..=q {
                    vars.push(PresVar::X { i, j, k });
                }
            }
        }
        if deg.0 >= h as u32 {
            vars.extend(increasing(p, h as usize).into_iter().map(|us| PresVar::Y { us, k }));
        }
        if deg.1 >= h as u32 {
            vars.extend(increasing(q, h as usize).into_iter().map(|vs| PresVar::Z { vs, k }));
        }
    }
    vars.sort();
    vars
}

/// All presentation monomials of exactly the given tri-degree, sorted.
pub fn graded_basis(deg: TriDegree, amb: &Ambient) -> GradedComponent {
    let vars = variables_below(deg, amb);
    let degs: Vec<TriDegree> = vars.iter().map(|v| v.degree(amb.h)).collect();
    let mut basis = Vec::new();
    fn go(
        vars: &[PresVar],
        degs: &[TriDegree],
        start: usize,
        left: TriDegree,
        cur: &mut Vec<PresVar>,
        out: &mut Vec<Monomial<PresVar>>,
    ) {
        if left == (0, 0, 0) {
            out.push(Monomial::from_pairs(cur.iter().map(|v| (v.clone(), 1))));
            return;
        }
        for i in start..vars.len() {
            let d = degs[i];
            if d.0 <= left.0 && d.1 <= left.1 && d.2 <= left.2 {
                cur.push(vars[i].clone());
                go(vars, degs, i, (left.0 - d.0, left.1 - d.1, left.2 - d.2), cur, out);
                cur.pop();
            }
        }
    }
    if deg != (0, 0, 0) {
        go(&vars, &degs, 0, deg, &mut Vec::new(), &mut basis);
    } else {
        basis.push(Monomial::one());
    }
    basis.sort();
    basis.dedup();
    GradedComponent { degree: deg, basis }
}

/// The degree component of the ideal generated by homogeneous relations.
#[derive(Clone, Debug)]
pub struct ComponentSpan {
    pub component: GradedComponent,
    pub rows: Vec<SparseRow>,
    pub echelon: Echelon,
    index: HashMap<Monomial<PresVar>, usize>,
}

impl ComponentSpan {
    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Coordinates of `f` in the component, or `None` if `f` has a foreign monomial.
    pub fn coordinates(&self, f: &PresPoly) -> Option<SparseRow> {
        let mut entries = Vec::with_capacity(f.len());
        for (m, c) in f.terms() {
            entries.push((*self.index.get(m)?, c.clone()));
        }
        Some(sparse_row(entries))
    }

    pub fn contains(&self, f: &PresPoly) -> bool {
        self.coordinates(f).is_some_and(|r| self.echelon.contains(r))
    }
}

/// Assemble every `monomial * relation` landing in `deg` and eliminate.
/// Inhomogeneous relations are rejected.
pub fn component_span(rels: &[PresPoly], deg: TriDegree, amb: &Ambient) -> Result<ComponentSpan> {
    let component = graded_basis(deg, amb);
    let index: HashMap<Monomial<PresVar>, usize> =
        component.basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut cofactors: HashMap<TriDegree, GradedComponent> = HashMap::new();
    let mut span = ComponentSpan { component, rows: Vec::new(), echelon: Echelon::new(), index };
    for r in rels {
        if r.is_zero() {
            continue;
        }
        let d = tri_degree(r, amb.h).ok_or_else(|| Error::Precondition("relation is not homogeneous".into()))?;
        if d.0 > deg.0 || d.1 > deg.1 || d.2 > deg.2 {
            continue;
        }
        let rest = (deg.0 - d.0, deg.1 - d.1, deg.2 - d.2);
        let co = cofactors.entry(rest).or_insert_with(|| graded_basis(rest, amb));
        for m in &co.basis {
            let prod = r.mul_monomial(m, &Integer::one());
            let row = span.coordinates(&prod).expect("product lands in the component");
            span.echelon.insert(row.clone());
            span.rows.push(row);
        }
    }
    Ok(span)
}

/// Rank of the degree component of the ideal generated by `rels`.
pub fn component_span_rank(rels: &[PresPoly], deg: TriDegree, amb: &Ambient) -> Result<usize> {
    Ok(component_span(rels, deg, amb)?.rank())
}

/// Whether a homogeneous `f` of degree `deg` lies in the ideal's component.
pub fn membership(f: &PresPoly, rels: &[PresPoly], deg: TriDegree, amb: &Ambient) -> Result<bool> {
    if !f.is_zero() && tri_degree(f, amb.h) != Some(deg) {
        return Err(Error::Precondition("element is not homogeneous of the stated degree".into()));
    }
    Ok(component_span(rels, deg, amb)?.contains(f))
}

/// `sum_{i<j<=h+2} (-1)^(i+j) Y(0)[h+3..2h, i, j] Y(1)[1..h+2 without i, j]`:
/// killed by the evaluation map, yet outside the ideal generated by the
/// weight-zero relations and their derivatives.
pub fn nilradical_witness(h: u16, p: u16) -> Result<PresPoly> {
    if h < 3 {
        return Err(Error::Precondition(format!("witness needs h >= 3, got h = {h}")));
    }
    let need = (h + 3).max(2 * h);
    if p < need {
        return Err(Error::Precondition(format!("witness needs p >= {need}, got p = {p}")));
    }
    let mut f = PresPoly::zero();
    for i in 1..=h + 2 {
        for j in i + 1..=h + 2 {
            let first: Vec<u16> = (h + 3..=2 * h).chain([i, j]).collect();
            let second: Vec<u16> = (1..=h + 2).filter(|&x| x != i && x != j).collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            f.add_assign_scaled(&pres_y::<Integer>(&first, 0).mul_ref(&pres_y(&second, 1)), &int(sign));
        }
    }
    Ok(f)
}

/// Outcome of the nilradical experiment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilradicalReport {
    pub witness: PresPoly,
    pub qstar_is_zero: bool,
    pub in_classical_span: bool,
    pub in_full_span: bool,
    pub classical_rank: usize,
    pub full_rank: usize,
    pub dim: usize,
}

/// Evaluate the witness, then test membership against the weight-zero-derived
/// relations and against those plus the depth-one shuffles.
pub fn nilradical_experiment(amb: &Ambient) -> Result<NilradicalReport> {
    let f = nilradical_witness(amb.h, amb.p)?;
    let deg = (2 * amb.h as u32, 0, 1);
    let mut ev = Evaluator::<Integer>::new(*amb);
    let qstar_is_zero = ev.q_eval_pres(&f).is_zero();
    let classical = presentation_relations(amb, 1, false);
    let mut full = classical.clone();
    full.extend(deep_shuffle_relations(amb, 1));
    let cspan = component_span(&classical, deg, amb)?;
    let fspan = component_span(&full, deg, amb)?;
    Ok(NilradicalReport {
        in_classical_span: cspan.contains(&f),
        in_full_span: fspan.contains(&f),
        classical_rank: cspan.rank(),
        full_rank: fspan.rank(),
        dim: cspan.component.dim(),
        qstar_is_zero,
        witness: f,
    })
}

/// Component ranks at `(2h, 0, 1)` without and with the deep shuffles.
pub fn deep_shuffle_ranks(amb: &Ambient) -> Result<(usize, usize)> {
    let deg = (2 * amb.h as u32, 0, 1);
    let classical = presentation_relations(amb, 1, false);
    let mut full = classical.clone();
    full.extend(deep_shuffle_relations(amb, 1));
    Ok((component_span_rank(&classical, deg, amb)?, component_span_rank(&full, deg, amb)?))
}

/// Integer value of a small coefficient, for display.
pub fn small(c: &Integer) -> Option<i64> {
    c.to_i64()
}
