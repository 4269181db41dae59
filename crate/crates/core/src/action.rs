//! Infinitesimal action of the truncated current algebra `sl_h[t]` on `B`
//! by derivations, and the invariance check for the generators.

use serde_json::{json, Value};

use crate::diffring::{det_a_raw, det_b_raw, x_entry, Ambient, BPoly, DiffVar, Family};
use crate::error::{Error, Result};
use crate::scalar::{subsets, Coeff};

/// `xi * t^m` with `xi` an integer `h x h` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElem {
    pub xi: Vec<Vec<i64>>,
    pub m: u32,
    pub label: String,
}

impl LieElem {
    /// A traceless element; nonzero trace is rejected.
    pub fn new(xi: Vec<Vec<i64>>, m: u32, label: impl Into<String>) -> Result<Self> {
        let trace: i64 = (0..xi.len()).map(|i| xi[i][i]).sum();
        if trace != 0 {
            return Err(Error::Precondition(format!("trace must vanish, got {trace}")));
        }
        Ok(Self::gl(xi, m, label))
    }

    /// Any matrix, traceless or not (used for controls).
    pub fn gl(xi: Vec<Vec<i64>>, m: u32, label: impl Into<String>) -> Self {
        LieElem { xi, m, label: label.into() }
    }

    pub fn h(&self) -> usize {
        self.xi.len()
    }

    pub fn trace(&self) -> i64 {
        (0..self.h()).map(|i| self.xi[i][i]).sum()
    }
}

fn unit(h: usize, r: usize, s: usize) -> Vec<Vec<i64>> {
    let mut xi = vec![vec![0; h]; h];
    xi[r][s] = 1;
    xi
}

/// `E_rs` (r != s) and `H_r = E_rr - E_{r+1,r+1}`, for every `m <= m_max`.
pub fn lie_basis(h: usize, m_max: u32) -> Vec<LieElem> {
    let mut out = Vec::new();
    for m in 0..=m_max {
        for r in 0..h {
            for s in 0..h {
                if r != s {
                    out.push(LieElem::gl(unit(h, r, s), m, format!("E{}{}", r + 1, s + 1)));
                }
            }
        }
        for r in 0..h.saturating_sub(1) {
            let mut xi = unit(h, r, r);
            xi[r + 1][r + 1] = -1;
            out.push(LieElem::gl(xi, m, format!("H{}", r + 1)));
        }
    }
    out
}

/// The derivation of `g` applied to one variable.
fn act_on_var<C: Coeff>(g: &LieElem, v: &DiffVar) -> BPoly<C> {
    let mut out = BPoly::zero();
    if v.order < g.m {
        return out;
    }
    let k = v.order - g.m;
    let l = v.col as usize - 1;
    for lp in 0..g.h() {
        let (coef, var) = match v.family {
            Family::A => (g.xi[lp][l], DiffVar::a(v.row, lp as u16 + 1, k)),
            Family::B => (-g.xi[l][lp], DiffVar::b(v.row, lp as u16 + 1, k)),
        };
        if coef != 0 {
            out.add_term(crate::poly::Monomial::var(var), C::from_i64(coef));
        }
    }
    out
}

/// `D_g(f)`: rows of `a` move by `xi`, rows of `b` by `-xi^T`, orders drop by `m`.
pub fn infinitesimal_action<C: Coeff>(g: &LieElem, f: &BPoly<C>) -> BPoly<C> {
    f.derivation(|v| act_on_var(g, v))
}

/// A generator of the invariant ring with a printable name.
#[derive(Clone, Debug)]
pub struct Generator<C: Coeff> {
    pub label: String,
    pub poly: BPoly<C>,
}

fn join(xs: &[u16]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `dbar^k X_ij`, `dbar^k Y_us`, `dbar^k Z_vs` for `k <= max_weight`.
pub fn generators<C: Coeff>(amb: &Ambient, max_weight: u32) -> Vec<Generator<C>> {
    let h = amb.h;
    let mut out = Vec::new();
    let lists = |bound: u16| -> Vec<Vec<u16>> {
        subsets(bound as usize, h as usize).into_iter().map(|s| s.into_iter().map(|i| i as u16 + 1).collect()).collect()
    };
    for k in 0..=max_weight {
        for i in 1..=amb.p {
            for j in 1..=amb.q {
                out.push(Generator { label: format!("X[{i},{j}]^({k})"), poly: x_entry(h, i, j, k) });
            }
        }
        for us in lists(amb.p) {
            out.push(Generator { label: format!("Y[{}]^({k})", join(&us)), poly: det_a_raw(&us).dbar(k) });
        }
        for vs in lists(amb.q) {
            out.push(Generator { label: format!("Z[{}]^({k})", join(&vs)), poly: det_b_raw(&vs).dbar(k) });
        }
    }
    out
}

/// Result of applying every basis element to every generator.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvarianceReport {
    pub checked: usize,
    /// `(generator, lie element label, m)` for every nonzero image.
    pub violations: Vec<(String, String, u32)>,
    pub rows: Vec<Value>,
}

impl InvarianceReport {
    pub fn all_zero(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_invariance(amb: &Ambient, weight_max: u32, m_max: u32) -> InvarianceReport {
    let gens = generators::<crate::Integer>(amb, weight_max);
    let basis = lie_basis(amb.h as usize, m_max);
    let mut report = InvarianceReport::default();
    for g in &gens {
        for e in &basis {
            let zero = infinitesimal_action(e, &g.poly).is_zero();
            report.checked += 1;
            report.rows.push(json!({"generator": g.label, "xi": e.label, "m": e.m, "zero": zero}));
            if !zero {
                report.violations.push((g.label.clone(), e.label.clone(), e.m));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn basis_shape() {
        let b = lie_basis(2, 0);
        assert_eq!(b.iter().map(|e| e.label.as_str()).collect::<Vec<_>>(), vec!["E12", "E21", "H1"]);
        assert!(lie_basis(3, 2).iter().all(|e| e.trace() == 0));
        assert_eq!(lie_basis(3, 2).len(), 24);
        assert!(LieElem::new(unit(2, 0, 0), 0, "E11").is_err());
    }

    #[test]
    fn invariants_are_killed() {
        let e12 = LieElem::new(unit(2, 0, 1), 0, "E12").unwrap();
        assert!(infinitesimal_action(&e12, &x_entry::<BigInt>(2, 1, 1, 0)).is_zero());
        assert!(infinitesimal_action(&e12, &det_a_raw::<BigInt>(&[1, 2])).is_zero());
        let e11 = LieElem::gl(unit(2, 0, 0), 0, "E11");
        let y = det_a_raw::<BigInt>(&[1, 2]);
        assert_eq!(infinitesimal_action(&e11, &y), y);
    }

    #[test]
    fn truncation() {
        let g = LieElem::new(unit(2, 0, 1), 2, "E12").unwrap();
        assert!(infinitesimal_action(&g, &BPoly::<BigInt>::var(DiffVar::a(1, 1, 1))).is_zero());
    }
}
