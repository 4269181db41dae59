//! Coefficient rings.
//!
//! Every algebraic structure in the crate is generic over a [`Coeff`]. The
//! mathematics lives over Z, so the default instantiation is [`BigInt`];
//! machine integers are available for fast experiments and [`BigRational`]
//! for linear algebra. Floating point types are deliberately not supported.

use std::collections::HashMap;
use std::fmt::{Debug, Display};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

/// An exact commutative coefficient ring containing the integers.
pub trait Coeff: Signed + Clone + Debug + Display + Send + Sync + 'static {
    /// Embed an integer. Panics if the value does not fit the type.
    fn from_bigint(n: &BigInt) -> Self;

    /// Embed a machine integer.
    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// `self * other` without consuming either side.
    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.clone() + other.clone();
    }
}

impl Coeff for BigInt {
    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

impl Coeff for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

// Machine integers rely on overflow checks (enabled in every profile of the
// workspace) so that an overflow aborts instead of wrapping.
impl Coeff for i64 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_i64().expect("integer does not fit in i64")
    }

    fn from_i64(n: i64) -> Self {
        n
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

impl Coeff for i128 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_i128().expect("integer does not fit in i128")
    }
}

fn binomial_table() -> &'static RwLock<HashMap<(u32, u32), BigInt>> {
    static TABLE: OnceLock<RwLock<HashMap<(u32, u32), BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Exact binomial coefficient C(n, k), memoized. Returns 0 for k > n.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    if k == 0 {
        return BigInt::from(1);
    }
    if let Some(v) = binomial_table().read().unwrap().get(&(n, k)) {
        return v.clone();
    }
    let v = num_integer::binomial(BigInt::from(n), BigInt::from(k));
    binomial_table().write().unwrap().insert((n, k), v.clone());
    v
}

/// Binomial coefficient embedded in a coefficient ring.
pub fn binomial_in<C: Coeff>(n: u32, k: u32) -> C {
    C::from_bigint(&binomial(n, k))
}

/// Sign of the permutation sorting `xs` ascending, or 0 when `xs` has a repeat.
pub fn sort_sign<T: Ord>(xs: &[T]) -> i32 {
    let mut sign = 1;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            match xs[i].cmp(&xs[j]) {
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

/// All permutations of `0..n` paired with their signs, in lexicographic order.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i32)>) {
        let n = used.len();
        if cur.len() == n {
            out.push((cur.clone(), sort_sign(cur)));
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// All compositions of `total` into `parts` non-negative parts, colexicographic.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in (0..=total).rev() {
            cur.push(first);
            go(total - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// All `k`-element subsets of `items`, as sorted index vectors into `items`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_matches_pascal() {
        for n in 0..30u32 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }

    #[test]
    fn sort_sign_basics() {
        assert_eq!(sort_sign(&[1, 2, 3]), 1);
        assert_eq!(sort_sign(&[2, 1, 3]), -1);
        assert_eq!(sort_sign(&[3, 1, 2]), 1);
        assert_eq!(sort_sign(&[1, 1]), 0);
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(compositions(3, 3).len(), 10);
        assert_eq!(compositions(0, 0).len(), 1);
        assert_eq!(compositions(1, 0).len(), 0);
    }

    #[test]
    fn permutation_signs_balance() {
        let ps = permutations(4);
        assert_eq!(ps.len(), 24);
        assert_eq!(ps.iter().map(|p| p.1).sum::<i32>(), 0);
    }
}
