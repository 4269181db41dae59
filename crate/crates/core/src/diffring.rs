//! The differential polynomial rings.
//!
//! `B = Z[a(k)_il, b(k)_jl]` is the coordinate ring of the arc space of
//! `p` row vectors and `q` covectors of length `h`. `A` is the presentation
//! ring generated by the symbols `X(k)_ij`, `Y(k)_us`, `Z(k)_vs`.

use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{Differential, Monomial, Polynomial};
use crate::scalar::{compositions, permutations, sort_sign, Coeff};

/// Ambient sizes: `p` rows of `a`, `q` rows of `b`, `h` columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    pub p: u16,
    pub q: u16,
    pub h: u16,
}

impl Ambient {
    pub fn new(p: u16, q: u16, h: u16) -> Result<Self> {
        if h == 0 {
            return Err(Error::Precondition("h must be at least 1".into()));
        }
        Ok(Ambient { p, q, h })
    }

    fn check_list(&self, xs: &[u16], bound: u16, strict: bool) -> Result<()> {
        for &x in xs {
            if x == 0 || x > bound {
                return Err(Error::IndexOutOfRange { index: x, bound });
            }
        }
        if strict && xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotIncreasing(xs.to_vec()));
        }
        Ok(())
    }

    pub fn check_us(&self, us: &[u16], strict: bool) -> Result<()> {
        self.check_list(us, self.p, strict)
    }

    pub fn check_vs(&self, vs: &[u16], strict: bool) -> Result<()> {
        self.check_list(vs, self.q, strict)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
}

/// A variable `a(k)_{row,col}` or `b(k)_{row,col}`. Field order fixes the
/// canonical sort key (family, col, order, row).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiffVar {
    pub family: Family,
    pub col: u16,
    pub order: u32,
    pub row: u16,
}

impl DiffVar {
    pub fn a(row: u16, col: u16, order: u32) -> Self {
        DiffVar { family: Family::A, col, order, row }
    }

    pub fn b(row: u16, col: u16, order: u32) -> Self {
        DiffVar { family: Family::B, col, order, row }
    }
}

impl Differential for DiffVar {
    fn order(&self) -> u32 {
        self.order
    }
    fn with_order(&self, k: u32) -> Self {
        DiffVar { order: k, ..*self }
    }
}

impl fmt::Display for DiffVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::A => 'a',
            Family::B => 'b',
        };
        write!(f, "{fam}[{},{}]^({})", self.row, self.col, self.order)
    }
}

/// Presentation symbols. Y and Z carry strictly increasing index lists.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PresVar {
    X { i: u16, j: u16, k: u32 },
    Y { us: Vec<u16>, k: u32 },
    Z { vs: Vec<u16>, k: u32 },
}

impl PresVar {
    /// Tri-degree `(d1, d2, weight)` for ambient `h`.
    pub fn degree(&self, h: u16) -> (u32, u32, u32) {
        match self {
            PresVar::X { k, .. } => (1, 1, *k),
            PresVar::Y { k, .. } => (h as u32, 0, *k),
            PresVar::Z { k, .. } => (0, h as u32, *k),
        }
    }
}

impl Differential for PresVar {
    fn order(&self) -> u32 {
        match self {
            PresVar::X { k, .. } | PresVar::Y { k, .. } | PresVar::Z { k, .. } => *k,
        }
    }
    fn with_order(&self, k: u32) -> Self {
        match self {
            PresVar::X { i, j, .. } => PresVar::X { i: *i, j: *j, k },
            PresVar::Y { us, .. } => PresVar::Y { us: us.clone(), k },
            PresVar::Z { vs, .. } => PresVar::Z { vs: vs.clone(), k },
        }
    }
}

fn join(xs: &[u16]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for PresVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresVar::X { i, j, k } => write!(f, "X[{i},{j}]^({k})"),
            PresVar::Y { us, k } => write!(f, "Y[{}]^({k})", join(us)),
            PresVar::Z { vs, k } => write!(f, "Z[{}]^({k})", join(vs)),
        }
    }
}

/// Generic polynomial in `B`.
pub type BPoly<C> = Polynomial<DiffVar, C>;
/// Generic polynomial in the presentation ring `A`.
pub type APoly<C> = Polynomial<PresVar, C>;

/// `Y(k)` over an arbitrary index list, sign-normalized (zero on repeats).
pub fn pres_y<C: Coeff>(raw: &[u16], k: u32) -> APoly<C> {
    signed_list(raw, |us| PresVar::Y { us, k })
}

/// `Z(k)` over an arbitrary index list, sign-normalized.
pub fn pres_z<C: Coeff>(raw: &[u16], k: u32) -> APoly<C> {
    signed_list(raw, |vs| PresVar::Z { vs, k })
}

pub fn pres_x<C: Coeff>(i: u16, j: u16, k: u32) -> APoly<C> {
    APoly::var(PresVar::X { i, j, k })
}

fn signed_list<C: Coeff>(raw: &[u16], make: impl Fn(Vec<u16>) -> PresVar) -> APoly<C> {
    let s = sort_sign(raw);
    if s == 0 {
        return APoly::zero();
    }
    let mut sorted = raw.to_vec();
    sorted.sort_unstable();
    APoly::term(Monomial::var(make(sorted)), C::from_i64(s as i64))
}

/// Tri-degree of a presentation polynomial if it is homogeneous.
pub fn tri_degree<C: Coeff>(f: &APoly<C>, h: u16) -> Option<(u32, u32, u32)> {
    let mut deg = None;
    for (m, _) in f.terms() {
        let mut d = (0, 0, 0);
        for (v, e) in m.factors() {
            let (x, y, w) = v.degree(h);
            d = (d.0 + x * e, d.1 + y * e, d.2 + w * e);
        }
        match deg {
            None => deg = Some(d),
            Some(prev) if prev != d => return None,
            _ => {}
        }
    }
    deg
}

/// Determinant of the square matrix `entry(r, c)` over `r, c < n`, by permutations.
pub fn det_by<V: crate::poly::Variable, C: Coeff>(
    n: usize,
    entry: impl Fn(usize, usize) -> Polynomial<V, C>,
) -> Polynomial<V, C> {
    let mut out = Polynomial::zero();
    for (perm, sign) in permutations(n) {
        let mut prod = Polynomial::constant(C::from_i64(sign as i64));
        for (r, &c) in perm.iter().enumerate() {
            prod = prod.mul_ref(&entry(r, c));
            if prod.is_zero() {
                break;
            }
        }
        out = out + prod;
    }
    out
}

/// `det[a(0)_{us[r], c+1}]` for an arbitrary list of length `h` (alternating).
pub fn det_a_raw<C: Coeff>(us: &[u16]) -> BPoly<C> {
    det_by(us.len(), |r, c| BPoly::var(DiffVar::a(us[r], c as u16 + 1, 0)))
}

/// `det[b(0)_{vs[r], c+1}]` for an arbitrary list of length `h`.
pub fn det_b_raw<C: Coeff>(vs: &[u16]) -> BPoly<C> {
    det_by(vs.len(), |r, c| BPoly::var(DiffVar::b(vs[r], c as u16 + 1, 0)))
}

/// The weight-0 determinant `Y(0)_us`.
pub fn det_a<C: Coeff>(amb: &Ambient, us: &[u16]) -> Result<BPoly<C>> {
    amb.check_us(us, true)?;
    if us.len() != amb.h as usize {
        return Err(Error::Length { expected: amb.h as usize, found: us.len() });
    }
    Ok(det_a_raw(us))
}

/// The weight-0 determinant `Z(0)_vs`.
pub fn det_b<C: Coeff>(amb: &Ambient, vs: &[u16]) -> Result<BPoly<C>> {
    amb.check_vs(vs, true)?;
    if vs.len() != amb.h as usize {
        return Err(Error::Length { expected: amb.h as usize, found: vs.len() });
    }
    Ok(det_b_raw(vs))
}

/// `dbar^k X(0)_uv = dbar^k sum_l a_ul b_vl`.
pub fn x_entry<C: Coeff>(h: u16, u: u16, v: u16, k: u32) -> BPoly<C> {
    let mut x = BPoly::zero();
    for l in 1..=h {
        x.add_term(Monomial::from_pairs([(DiffVar::a(u, l, 0), 1), (DiffVar::b(v, l, 0), 1)]), C::one());
    }
    x.dbar(k)
}

/// Weight-0 minor of the X matrix on rows `us`, columns `vs`, by Cauchy-Binet.
pub fn det_x_minor_raw<C: Coeff>(h: u16, us: &[u16], vs: &[u16]) -> BPoly<C> {
    let r = us.len();
    debug_assert_eq!(r, vs.len());
    if r > h as usize {
        return BPoly::zero();
    }
    let mut out = BPoly::zero();
    for cols in crate::scalar::subsets(h as usize, r) {
        let da = det_by(r, |i, c| BPoly::<C>::var(DiffVar::a(us[i], cols[c] as u16 + 1, 0)));
        if da.is_zero() {
            continue;
        }
        let db = det_by(r, |i, c| BPoly::<C>::var(DiffVar::b(vs[i], cols[c] as u16 + 1, 0)));
        out = out + da.mul_ref(&db);
    }
    out
}

/// Weight-0 `r x r` minor of the X matrix, validated.
pub fn det_x_minor<C: Coeff>(amb: &Ambient, us: &[u16], vs: &[u16]) -> Result<BPoly<C>> {
    amb.check_us(us, true)?;
    amb.check_vs(vs, true)?;
    if us.len() != vs.len() {
        return Err(Error::Length { expected: us.len(), found: vs.len() });
    }
    if us.len() > amb.h as usize {
        return Err(Error::Precondition(format!("minor size {} exceeds h = {}", us.len(), amb.h)));
    }
    Ok(det_x_minor_raw(amb.h, us, vs))
}

/// Closed-form `dbar^n` of an X-minor: sum over compositions of `n` and
/// permutations of signed products of derived X entries.
pub fn dbar_det_expansion<C: Coeff>(amb: &Ambient, us: &[u16], vs: &[u16], n: u32) -> Result<BPoly<C>> {
    amb.check_us(us, true)?;
    amb.check_vs(vs, true)?;
    if us.len() != vs.len() || us.is_empty() {
        return Err(Error::Length { expected: us.len().max(1), found: vs.len() });
    }
    let r = us.len();
    let perms = permutations(r);
    let mut out = BPoly::zero();
    for comp in compositions(n, r) {
        for (perm, sign) in &perms {
            let mut prod = BPoly::constant(C::from_i64(*sign as i64));
            for i in 0..r {
                prod = prod.mul_ref(&x_entry(amb.h, us[i], vs[perm[i]], comp[i]));
            }
            out = out + prod;
        }
    }
    Ok(out)
}

/// JSON form of a `B` polynomial: `[{coeff, vars: [[family,row,col,order,exp],..]}]`.
pub fn bpoly_to_json<C: Coeff>(f: &BPoly<C>) -> Value {
    Value::Array(
        f.terms()
            .map(|(m, c)| {
                let vars: Vec<Value> = m
                    .factors()
                    .iter()
                    .map(|(v, e)| {
                        let fam = if v.family == Family::A { "a" } else { "b" };
                        json!([fam, v.row, v.col, v.order, e])
                    })
                    .collect();
                json!({"coeff": c.to_string(), "vars": vars})
            })
            .collect(),
    )
}

/// Parse the JSON form produced by [`bpoly_to_json`].
pub fn bpoly_from_json(v: &Value) -> Result<BPoly<BigInt>> {
    let bad = |msg: &str| Error::Parse(msg.to_string());
    let mut out = BPoly::zero();
    for t in v.as_array().ok_or_else(|| bad("expected array"))? {
        let c: BigInt = t["coeff"].as_str().ok_or_else(|| bad("coeff"))?.parse().map_err(|_| bad("coeff"))?;
        let mut pairs = Vec::new();
        for var in t["vars"].as_array().ok_or_else(|| bad("vars"))? {
            let f = var[0].as_str().ok_or_else(|| bad("family"))?;
            let num = |i: usize| var[i].as_u64().ok_or_else(|| bad("index"));
            let (row, col, order, e) = (num(1)? as u16, num(2)? as u16, num(3)? as u32, num(4)? as u32);
            let dv = match f {
                "a" => DiffVar::a(row, col, order),
                "b" => DiffVar::b(row, col, order),
                _ => return Err(bad("family")),
            };
            pairs.push((dv, e));
        }
        out.add_term(Monomial::from_pairs(pairs), c);
    }
    Ok(out)
}

/// Parse the canonical text form, e.g. `2*a[1,1]^(0)*b[2,1]^(1)^2 - 1*a[2,2]^(0)`.
pub fn parse_bpoly(s: &str) -> Result<BPoly<BigInt>> {
    let mut p = TextParser { s: s.as_bytes(), i: 0 };
    let out = p.poly()?;
    p.ws();
    if p.i != p.s.len() {
        return Err(Error::Parse(format!("trailing input at byte {}", p.i)));
    }
    Ok(out)
}

struct TextParser<'a> {
    s: &'a [u8],
    i: usize,
}

impl TextParser<'_> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i] == b' ' {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.i += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected '{}' at byte {}", c as char, self.i)))
        }
    }

    fn digits(&mut self) -> Result<&str> {
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return Err(Error::Parse(format!("expected digits at byte {start}")));
        }
        Ok(std::str::from_utf8(&self.s[start..self.i]).unwrap())
    }

    fn number<T: std::str::FromStr>(&mut self) -> Result<T> {
        let pos = self.i;
        self.digits()?.parse().map_err(|_| Error::Parse(format!("bad number at byte {pos}")))
    }

    fn poly(&mut self) -> Result<BPoly<BigInt>> {
        self.ws();
        let mut out = BPoly::zero();
        let mut negative = false;
        if self.peek() == Some(b'-') {
            self.i += 1;
            negative = true;
        }
        loop {
            self.ws();
            let c: BigInt = self.digits()?.parse().unwrap();
            let mut pairs = Vec::new();
            while self.peek() == Some(b'*') {
                self.i += 1;
                let fam = self.peek();
                self.i += 1;
                self.eat(b'[')?;
                let row = self.number()?;
                self.eat(b',')?;
                let col = self.number()?;
                self.eat(b']')?;
                self.eat(b'^')?;
                self.eat(b'(')?;
                let order = self.number()?;
                self.eat(b')')?;
                let mut e = 1u32;
                if self.peek() == Some(b'^') {
                    self.i += 1;
                    e = self.number()?;
                }
                let v = match fam {
                    Some(b'a') => DiffVar::a(row, col, order),
                    Some(b'b') => DiffVar::b(row, col, order),
                    _ => return Err(Error::Parse(format!("unknown family at byte {}", self.i))),
                };
                pairs.push((v, e));
            }
            out.add_term(Monomial::from_pairs(pairs), if negative { -c } else { c });
            self.ws();
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                _ => break,
            }
            self.i += 1;
        }
        Ok(out)
    }
}
