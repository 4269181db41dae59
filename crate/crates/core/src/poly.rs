//! Sparse multivariate polynomials over a generic variable alphabet.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use crate::scalar::{binomial_in, Coeff};

/// A polynomial variable: any totally ordered, hashable symbol.
pub trait Variable: Clone + Ord + Eq + Hash + fmt::Debug + Send + Sync {}

impl<T: Clone + Ord + Eq + Hash + fmt::Debug + Send + Sync> Variable for T {}

/// A variable carrying a derivative order, acted on by the divided powers
/// `dbar^n x^(m) = C(m+n, n) x^(m+n)`.
pub trait Differential: Variable {
    fn order(&self) -> u32;
    fn with_order(&self, k: u32) -> Self;
}

/// A monomial: sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial<V> {
    factors: Vec<(V, u32)>,
}

impl<V> Default for Monomial<V> {
    fn default() -> Self {
        Monomial { factors: Vec::new() }
    }
}

impl<V: Variable> Monomial<V> {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: V) -> Self {
        Monomial { factors: vec![(v, 1)] }
    }

    /// Build from arbitrary pairs; merges duplicates and drops zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (V, u32)>) -> Self {
        let mut map: BTreeMap<V, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial { factors: map.into_iter().filter(|(_, e)| *e > 0).collect() }
    }

    pub fn factors(&self) -> &[(V, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    /// Exponent of `v`.
    pub fn exponent(&self, v: &V) -> u32 {
        self.factors.binary_search_by(|(w, _)| w.cmp(v)).map(|i| self.factors[i].1).unwrap_or(0)
    }

    /// Factors with multiplicity, in canonical order.
    pub fn expanded(&self) -> Vec<V> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        for (v, e) in &self.factors {
            for _ in 0..*e {
                out.push(v.clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    pub fn mul_var(&self, v: &V) -> Self {
        let mut factors = self.factors.clone();
        match factors.binary_search_by(|(w, _)| w.cmp(v)) {
            Ok(i) => factors[i].1 += 1,
            Err(i) => factors.insert(i, (v.clone(), 1)),
        }
        Monomial { factors }
    }
}

/// A sparse polynomial: map from monomial to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<V, C> {
    terms: BTreeMap<Monomial<V>, C>,
}

impl<V: Variable, C: Coeff> Default for Polynomial<V, C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: Variable, C: Coeff> Polynomial<V, C> {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(v: V) -> Self {
        Self::term(Monomial::var(v), C::one())
    }

    pub fn term(m: Monomial<V>, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial<V>, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending monomial) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<V>, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial<V>, C)> {
        self.terms.into_iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial<V>> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial<V>) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Add `c * m` in place, pruning a coefficient that becomes zero.
    pub fn add_term(&mut self, m: Monomial<V>, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: &C) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), d.clone() * c.clone());
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, d)| (m.clone(), d.clone() * c.clone())).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial<V>, c: &C) -> Self {
        let mut out = Self::zero();
        for (n, d) in &self.terms {
            out.add_term(n.mul(m), d.clone() * c.clone());
        }
        out
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut acc = FxHashMap::default();
        Self::mul_acc(&mut acc, self, other, &C::one());
        Self::from_acc(acc)
    }

    /// `acc += c * a * b` without materializing the product.
    fn mul_acc(acc: &mut FxHashMap<Monomial<V>, C>, a: &Self, b: &Self, c: &C) {
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        acc.reserve(small.len() * large.len() / 2);
        for (m1, c1) in &small.terms {
            let c1 = c1.mul_ref(c);
            for (m2, c2) in &large.terms {
                acc.entry(m1.mul(m2)).or_insert_with(C::zero).add_assign_ref(&c1.mul_ref(c2));
            }
        }
    }

    fn from_acc(acc: FxHashMap<Monomial<V>, C>) -> Self {
        Polynomial { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul_ref(self);
        }
        out
    }

    /// Largest monomial under an arbitrary total order, with its coefficient.
    pub fn max_term_by<K: Ord>(&self, key: impl Fn(&Monomial<V>) -> K) -> Option<(&Monomial<V>, &C)> {
        self.terms.iter().map(|(m, c)| (key(m), m, c)).max_by(|a, b| a.0.cmp(&b.0)).map(|(_, m, c)| (m, c))
    }

    /// Ring homomorphism induced by a substitution of every variable.
    pub fn substitute<W: Variable>(&self, mut image: impl FnMut(&V) -> Polynomial<W, C>) -> Polynomial<W, C> {
        let mut cache: HashMap<V, Vec<Polynomial<W, C>>> = HashMap::new();
        let mut acc = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut powers: Vec<Polynomial<W, C>> = Vec::with_capacity(m.factors().len());
            for (v, e) in m.factors() {
                let ps = cache.entry(v.clone()).or_insert_with(|| vec![Polynomial::one(), image(v)]);
                while ps.len() <= *e as usize {
                    let next = ps[ps.len() - 1].mul_ref(&ps[1]);
                    ps.push(next);
                }
                powers.push(ps[*e as usize].clone());
            }
            // multiply all but the last factor, then accumulate the last product directly
            let last = powers.pop().unwrap_or_else(Polynomial::one);
            let mut prod = Polynomial::<W, C>::one();
            for p in &powers {
                prod = prod.mul_ref(p);
            }
            Polynomial::mul_acc(&mut acc, &prod, &last, c);
        }
        Polynomial::from_acc(acc)
    }

    /// Rename variables monomial by monomial (no merging of coefficients is lost).
    pub fn map_monomials<W: Variable>(&self, f: impl Fn(&Monomial<V>) -> Monomial<W>) -> Polynomial<W, C> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Polynomial<V, D> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// The derivation extending `image` on variables by the Leibniz rule.
    pub fn derivation(&self, mut image: impl FnMut(&V) -> Self) -> Self {
        let mut images: HashMap<V, Self> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (idx, (v, e)) in m.factors().iter().enumerate() {
                let dv = images.entry(v.clone()).or_insert_with(|| image(v));
                if dv.is_zero() {
                    continue;
                }
                let mut rest = m.factors().to_vec();
                if *e == 1 {
                    rest.remove(idx);
                } else {
                    rest[idx].1 -= 1;
                }
                let scale = c.clone() * C::from_i64(*e as i64);
                out.add_assign_scaled(&dv.mul_monomial(&Monomial { factors: rest }, &C::one()), &scale);
            }
        }
        out
    }
}

impl<V: Differential, C: Coeff> Polynomial<V, C> {
    /// The divided-power operator `dbar^n`, via Leibniz with binomial weights.
    pub fn dbar(&self, n: u32) -> Self {
        if n == 0 {
            return self.clone();
        }
        let mut acc: FxHashMap<Monomial<V>, C> = FxHashMap::default();
        for (m, c) in &self.terms {
            for (t, d) in dbar_monomial::<V, C>(m, n) {
                acc.entry(t).or_insert_with(C::zero).add_assign_ref(&d.mul_ref(c));
            }
        }
        Self::from_acc(acc)
    }

    /// The derivation `d = dbar^1`.
    pub fn derive(&self) -> Self {
        self.dbar(1)
    }
}

/// `dbar^n` of a single monomial, distributing weight over its factors.
pub fn dbar_monomial<V: Differential, C: Coeff>(m: &Monomial<V>, n: u32) -> Vec<(Monomial<V>, C)> {
    // layers[w] collects partial products having consumed weight w
    let mut layers: Vec<FxHashMap<Monomial<V>, C>> = vec![FxHashMap::default(); n as usize + 1];
    layers[0].insert(Monomial::one(), C::one());
    for v in m.expanded() {
        let base = v.order();
        let mut next: Vec<FxHashMap<Monomial<V>, C>> = vec![FxHashMap::default(); n as usize + 1];
        for (w, layer) in layers.iter().enumerate() {
            for (part, c) in layer {
                for i in 0..=(n as usize - w) {
                    let coef = binomial_in::<C>(base + i as u32, i as u32) * c.clone();
                    let t = part.mul_var(&v.with_order(base + i as u32));
                    next[w + i].entry(t).or_insert_with(C::zero).add_assign_ref(&coef);
                }
            }
        }
        layers = next;
    }
    layers.pop().unwrap().into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl<V: Variable, C: Coeff> Add for &Polynomial<V, C> {
    type Output = Polynomial<V, C>;
    fn add(self, rhs: Self) -> Polynomial<V, C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<V: Variable, C: Coeff> Add for Polynomial<V, C> {
    type Output = Polynomial<V, C>;
    fn add(mut self, rhs: Self) -> Polynomial<V, C> {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<V: Variable, C: Coeff> Sub for &Polynomial<V, C> {
    type Output = Polynomial<V, C>;
    fn sub(self, rhs: Self) -> Polynomial<V, C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<V: Variable, C: Coeff> Sub for Polynomial<V, C> {
    type Output = Polynomial<V, C>;
    fn sub(mut self, rhs: Self) -> Polynomial<V, C> {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<V: Variable, C: Coeff> Neg for Polynomial<V, C> {
    type Output = Polynomial<V, C>;
    fn neg(self) -> Polynomial<V, C> {
        Polynomial { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<V: Variable, C: Coeff> Mul for &Polynomial<V, C> {
    type Output = Polynomial<V, C>;
    fn mul(self, rhs: Self) -> Polynomial<V, C> {
        self.mul_ref(rhs)
    }
}

impl<V: Variable, C: Coeff> Mul for Polynomial<V, C> {
    type Output = Polynomial<V, C>;
    fn mul(self, rhs: Self) -> Polynomial<V, C> {
        self.mul_ref(&rhs)
    }
}

impl<V: Variable + fmt::Display, C: Coeff> fmt::Display for Polynomial<V, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-{abs}")?,
                (0, false) => write!(f, "{abs}")?,
                (_, true) => write!(f, " - {abs}")?,
                (_, false) => write!(f, " + {abs}")?,
            }
            for (v, e) in m.factors() {
                write!(f, "*{v}")?;
                if *e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
