//! Evaluation of alphabet symbols in `B`, the standardness test, enumeration
//! of standard words and straightening by leading-term peeling.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::diffring::{det_a_raw, det_b_raw, det_x_minor_raw, x_entry, APoly, Ambient, BPoly, DiffVar, PresVar};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Coeff;
use crate::seqcomb::{alphabet, fuse, largest_e_above, largest_in_class, norm_of_e, ESeq, JSeq, Kind};
use crate::tableau::{invert_t_plus, ld_plus, order_key};

/// An ordered product of alphabet symbols, kept sorted.
pub type JWord = Vec<JSeq>;

/// Coordinates on the standard monomial basis.
pub type BasisCoords<C> = BTreeMap<JWord, C>;

/// Evaluates symbols as derived determinants in `B`, caching generator images.
pub struct Evaluator<C: Coeff> {
    pub amb: Ambient,
    cache: HashMap<JSeq, BPoly<C>>,
}

impl<C: Coeff> Evaluator<C> {
    pub fn new(amb: Ambient) -> Self {
        Evaluator { amb, cache: HashMap::new() }
    }

    /// `Q(J) = dbar^k` of the minor named by `J`.
    pub fn q_eval_j(&mut self, j: &JSeq) -> BPoly<C> {
        if let Some(p) = self.cache.get(j) {
            return p.clone();
        }
        let base = match j.kind {
            Kind::L => det_a_raw(&j.us),
            Kind::R => det_b_raw(&j.vs),
            Kind::Full => det_x_minor_raw(self.amb.h, &j.us, &j.vs),
        };
        let p = base.dbar(j.weight);
        self.cache.insert(j.clone(), p.clone());
        p
    }

    pub fn q_eval_word(&mut self, w: &[JSeq]) -> BPoly<C> {
        let mut out = BPoly::one();
        for j in w {
            out = out.mul_ref(&self.q_eval_j(j));
        }
        out
    }

    /// The homomorphism from the presentation ring.
    pub fn q_eval_pres(&mut self, f: &APoly<C>) -> BPoly<C> {
        let h = self.amb.h;
        f.substitute(|v| match v {
            PresVar::X { i, j, k } => x_entry(h, *i, *j, *k),
            PresVar::Y { us, k } => self.q_eval_j(&JSeq::left(*k, us.clone())),
            PresVar::Z { vs, k } => self.q_eval_j(&JSeq::right(*k, vs.clone())),
        })
    }

    /// The homomorphism from polynomials in alphabet symbols.
    pub fn q_eval_jpoly(&mut self, f: &Polynomial<JSeq, C>) -> BPoly<C> {
        f.substitute(|j| self.q_eval_j(j))
    }
}

/// Incremental construction of the dominance chain of a sorted word.
#[derive(Clone, Debug, Default)]
pub struct Chain {
    h: usize,
    last_l: Option<ESeq>,
    last_r: Option<ESeq>,
    last_full: Option<ESeq>,
    pub elements: Vec<ESeq>,
}

impl Chain {
    pub fn new(h: usize) -> Self {
        Chain { h, ..Default::default() }
    }

    /// Extend by the next symbol; `None` when no dominating representative exists.
    pub fn push(&mut self, j: &JSeq) -> Option<ESeq> {
        if !j.in_alphabet(self.h) {
            return None;
        }
        let e = match j.kind {
            Kind::L => match &self.last_l {
                None => largest_in_class(j),
                Some(prev) => largest_e_above(prev, j)?,
            },
            Kind::R => match &self.last_r {
                None => largest_in_class(j),
                Some(prev) => largest_e_above(prev, j)?,
            },
            Kind::Full => match (&self.last_full, &self.last_l, &self.last_r) {
                (Some(prev), _, _) => largest_e_above(prev, j)?,
                (None, None, None) => largest_in_class(j),
                (None, l, r) => {
                    let l = l.clone().unwrap_or_else(|| ESeq::zero_left(self.h));
                    let r = r.clone().unwrap_or_else(|| ESeq::zero_right(self.h));
                    largest_e_above(&fuse(&l, &r).ok()?, j)?
                }
            },
        };
        let slot = match j.kind {
            Kind::L => &mut self.last_l,
            Kind::R => &mut self.last_r,
            Kind::Full => &mut self.last_full,
        };
        *slot = Some(e.clone());
        self.elements.push(e.clone());
        Some(e)
    }
}

/// Outcome of a standardness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Standardness {
    /// The certificate chain `pi^{-1}(W)`.
    Standard(Vec<ESeq>),
    /// Index of the first symbol that admits no dominating representative.
    FailsAt(usize),
}

/// Test a sorted word for standardness.
pub fn is_standard(w: &[JSeq], h: usize) -> Result<Standardness> {
    if w.windows(2).any(|p| p[0] > p[1]) {
        return Err(Error::Precondition("word is not sorted".into()));
    }
    let mut chain = Chain::new(h);
    for (i, j) in w.iter().enumerate() {
        if chain.push(j).is_none() {
            return Ok(Standardness::FailsAt(i));
        }
    }
    Ok(Standardness::Standard(chain.elements))
}

/// The inverse of the bijection from standard tagged words to standard words.
pub fn pi_inverse(w: &[JSeq], h: usize) -> Result<Vec<ESeq>> {
    match is_standard(w, h)? {
        Standardness::Standard(c) => Ok(c),
        Standardness::FailsAt(i) => Err(Error::NotStandard(i)),
    }
}

/// All standard words with at most `max_degree` symbols and total weight at
/// most `max_weight`, in lexicographic order (shorter prefixes first).
pub fn enumerate_standard(amb: &Ambient, max_weight: u32, max_degree: usize) -> Vec<JWord> {
    let alpha = alphabet(amb.p as usize, amb.q as usize, amb.h as usize, max_weight);
    let mut out = Vec::new();
    fn go(
        alpha: &[JSeq],
        start: usize,
        budget: u32,
        left: usize,
        chain: &Chain,
        word: &mut JWord,
        out: &mut Vec<JWord>,
    ) {
        out.push(word.clone());
        if left == 0 {
            return;
        }
        for (i, j) in alpha.iter().enumerate().skip(start) {
            if j.weight > budget {
                continue;
            }
            let mut next = chain.clone();
            if next.push(j).is_none() {
                continue;
            }
            word.push(j.clone());
            go(alpha, i, budget - j.weight, left - 1, &next, word, out);
            word.pop();
        }
    }
    go(&alpha, 0, max_weight, max_degree, &Chain::new(amb.h as usize), &mut Vec::new(), &mut out);
    out
}

/// Multidegree of a word: per-row counts of `a` and `b` indices and total weight.
pub fn word_multidegree(w: &[JSeq], amb: &Ambient) -> (Vec<u32>, Vec<u32>, u32) {
    let (p, q) = (amb.p as usize, amb.q as usize);
    let mut acc = (vec![0; p], vec![0; q], 0);
    for j in w {
        let (a, b, k) = j.multidegree(p, q);
        acc.0.iter_mut().zip(a).for_each(|(x, y)| *x += y);
        acc.1.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        acc.2 += k;
    }
    acc
}

fn is_unit<C: Coeff>(c: &C) -> bool {
    c.is_one() || (-c.clone()).is_one()
}

/// Express `f` on the standard monomial basis by repeatedly cancelling the
/// leading monomial with the image of the standard word it encodes.
pub fn peel<C: Coeff>(ev: &mut Evaluator<C>, f: &BPoly<C>, max_steps: usize) -> Result<BasisCoords<C>> {
    let h = ev.amb.h as usize;
    let mut residual = f.clone();
    let mut coords: BasisCoords<C> = BTreeMap::new();
    let mut last_key = None;
    let stuck = |r: &BPoly<C>| Error::NotInSubring { residual: r.to_string() };
    for _ in 0..max_steps {
        if residual.is_zero() {
            return Ok(coords);
        }
        let (lead, c) = ld_plus(&residual, h)?;
        let key = order_key(&lead, h);
        if last_key.as_ref().is_some_and(|k| &key >= k) {
            return Err(stuck(&residual));
        }
        let chain = invert_t_plus(&lead, h).ok_or_else(|| stuck(&residual))?;
        let mut word: JWord = chain.iter().map(norm_of_e).collect();
        word.sort();
        if pi_inverse(&word, h).ok().as_ref().map(|cert| sorted_chain(cert)) != Some(sorted_chain(&chain)) {
            return Err(stuck(&residual));
        }
        let image = ev.q_eval_word(&word);
        let c0 = image.coeff(&lead);
        if !is_unit(&c0) {
            return Err(stuck(&residual));
        }
        let mult = c * c0;
        residual.add_assign_scaled(&image, &-mult.clone());
        let entry = coords.entry(word).or_insert_with(C::zero);
        *entry = entry.clone() + mult;
        last_key = Some(key);
    }
    if residual.is_zero() {
        Ok(coords)
    } else {
        Err(stuck(&residual))
    }
}

fn sorted_chain(c: &[ESeq]) -> Vec<String> {
    let mut v: Vec<String> = c.iter().map(|e| e.to_string()).collect();
    v.sort();
    v
}

/// Default iteration bound for [`peel`].
pub const PEEL_STEPS: usize = 1_000_000;

/// Straighten an arbitrary word onto the standard basis.
pub fn straighten<C: Coeff>(ev: &mut Evaluator<C>, w: &[JSeq]) -> Result<BasisCoords<C>> {
    let mut sorted = w.to_vec();
    sorted.sort();
    let f = ev.q_eval_word(&sorted);
    let mut coords = peel(ev, &f, PEEL_STEPS)?;
    coords.retain(|_, c| !c.is_zero());
    Ok(coords)
}

/// Rebuild `sum c_S Q(S)`.
pub fn expand_coords<C: Coeff>(ev: &mut Evaluator<C>, coords: &BasisCoords<C>) -> BPoly<C> {
    let mut out = BPoly::zero();
    for (w, c) in coords {
        out.add_assign_scaled(&ev.q_eval_word(w), c);
    }
    out
}

/// Lexicographic order on sorted words, a proper prefix being smaller.
pub fn cmp_words(a: &[JSeq], b: &[JSeq]) -> std::cmp::Ordering {
    a.cmp(b)
}

/// Parse whitespace-separated symbols into a sorted word.
pub fn parse_word(s: &str) -> Result<JWord> {
    let mut w: JWord = s.split_whitespace().map(|t| t.parse()).collect::<Result<_>>()?;
    w.sort();
    Ok(w)
}

pub fn coords_to_json<C: Coeff>(coords: &BasisCoords<C>) -> Value {
    Value::Array(
        coords
            .iter()
            .map(|(w, c)| json!({"word": w.iter().map(|j| j.to_string()).collect::<Vec<_>>(), "coeff": c.to_string()}))
            .collect(),
    )
}

/// Leading monomial and coefficient of `Q(W)` for a word.
pub fn leading_of_word<C: Coeff>(ev: &mut Evaluator<C>, w: &[JSeq]) -> Result<(Monomial<DiffVar>, C)> {
    ld_plus(&ev.q_eval_word(w), ev.amb.h as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::t_plus;
    use num_bigint::BigInt;

    fn w(s: &str) -> JWord {
        parse_word(s).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let mut ev = Evaluator::<BigInt>::new(Ambient::new(1, 1, 1).unwrap());
        let x = ev.q_eval_j(&"D^0(1|1)".parse().unwrap());
        assert_eq!(x.to_string(), "1*a[1,1]^(0)*b[1,1]^(0)");
        let mut ev2 = Evaluator::<BigInt>::new(Ambient::new(2, 2, 2).unwrap());
        let y = ev2.q_eval_j(&"D^0(2,1|".parse().unwrap());
        assert_eq!(y.to_string(), "1*a[1,1]^(0)*a[2,2]^(0) - 1*a[2,1]^(0)*a[1,2]^(0)");
    }

    #[test]
    fn standardness_examples() {
        let got = is_standard(&w("D^0(2,1| D^1(2,1|"), 2).unwrap();
        assert_eq!(
            got,
            Standardness::Standard(vec!["((2,0),(1,0)|".parse().unwrap(), "((2,1),(1,0)|".parse().unwrap()])
        );
        assert!(matches!(is_standard(&w("D^0(2,1| D^0(3,1|"), 2).unwrap(), Standardness::Standard(_)));
        assert_eq!(is_standard(&w("D^0(4,1| D^0(3,2|"), 2).unwrap(), Standardness::FailsAt(1));
        assert!(matches!(is_standard(&w("D^0(2,1| D^0|1,2) D^0(1|1)"), 2).unwrap(), Standardness::Standard(_)));
        assert_eq!(pi_inverse(&[], 2).unwrap(), Vec::<ESeq>::new());
        assert!(is_standard(&["D^1(2,1|".parse().unwrap(), "D^0(2,1|".parse().unwrap()], 2).is_err());
    }

    #[test]
    fn enumeration_h1() {
        let all = enumerate_standard(&Ambient::new(1, 1, 1).unwrap(), 0, 2);
        let shown: Vec<String> =
            all.iter().map(|w| w.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(" ")).collect();
        assert_eq!(shown, vec!["", "D^0(1|", "D^0(1| D^0(1|", "D^0(1| D^0|1)", "D^0|1)", "D^0|1) D^0|1)"]);
        assert_eq!(enumerate_standard(&Ambient::new(2, 2, 2).unwrap(), 1, 0).len(), 1);
    }

    #[test]
    fn leading_monomial_example() {
        let mut ev = Evaluator::<BigInt>::new(Ambient::new(2, 2, 2).unwrap());
        let word = w("D^0(2,1| D^1(2,1|");
        let (m, c) = leading_of_word(&mut ev, &word).unwrap();
        assert_eq!(m, t_plus(&pi_inverse(&word, 2).unwrap()));
        assert_eq!(
            m.to_owned(),
            Monomial::from_pairs([(DiffVar::a(2, 2, 0), 1), (DiffVar::a(1, 1, 0), 2), (DiffVar::a(2, 2, 1), 1)])
        );
        assert_eq!(c, BigInt::from(1));
    }

    #[test]
    fn straighten_examples() {
        let mut ev = Evaluator::<BigInt>::new(Ambient::new(1, 1, 1).unwrap());
        let got = straighten(&mut ev, &w("D^0(1|1)")).unwrap();
        assert_eq!(got, BTreeMap::from([(w("D^0(1| D^0|1)"), BigInt::from(1))]));
        let mut ev3 = Evaluator::<BigInt>::new(Ambient::new(4, 4, 2).unwrap());
        let nonstd = w("D^0(4,1| D^0(3,2|");
        let got = straighten(&mut ev3, &nonstd).unwrap();
        assert_eq!(expand_coords(&mut ev3, &got), ev3.q_eval_word(&nonstd));
        assert_eq!(got.len(), 2);
        assert!(peel(&mut ev3, &BPoly::zero(), 10).unwrap().is_empty());
    }
}
