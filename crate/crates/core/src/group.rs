//! Structure of small finite abelian groups from their element-order census.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::hash::Hash;

use serde::Serialize;

use crate::arith::{factorize, gcd};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub order: u64,
    pub exponent: u64,
    /// `d_1 | d_2 | ... | d_r`, all greater than 1.
    pub invariant_factors: Vec<u64>,
    /// Prime-power cyclic factors in increasing order.
    pub primary_factors: Vec<u64>,
}

/// Decomposition of an abelian group given the orders of all its elements.
///
/// For each prime `r`, `|G[r^j]| = r^{c_j}` where `c_j - c_{j-1}` counts the
/// cyclic `r`-primary factors of exponent at least `j`.
pub fn abelian_invariants(orders: &[u64]) -> AbelianInvariants {
    let order = orders.len() as u64;
    let exponent = orders.iter().fold(1, |acc, &o| acc / gcd(acc, o) * o);
    let mut primary = Vec::new();
    let mut per_prime: Vec<Vec<u64>> = Vec::new();
    for (r, a) in factorize(order) {
        // c[j] = log_r #{x : x^{r^j} = 1}
        let mut c = vec![0u32];
        for j in 1..=a {
            let rj = r.pow(j);
            let count = orders.iter().filter(|&&o| rj % o == 0).count() as u64;
            c.push(count.ilog(r));
        }
        let at_least: Vec<u32> = (1..c.len()).map(|j| c[j] - c[j - 1]).collect();
        let mut powers = Vec::new();
        for j in 1..=at_least.len() {
            let exact = at_least[j - 1] - at_least.get(j).copied().unwrap_or(0);
            for _ in 0..exact {
                powers.push(r.pow(j as u32));
            }
        }
        powers.sort_unstable();
        primary.extend(powers.iter().copied());
        per_prime.push(powers);
    }
    primary.sort_unstable();
    let rank = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut invariant = vec![1u64; rank];
    for powers in &per_prime {
        // largest prime powers go to the last invariant factors
        for (slot, pw) in invariant.iter_mut().rev().zip(powers.iter().rev()) {
            *slot *= pw;
        }
    }
    AbelianInvariants {
        order,
        exponent,
        invariant_factors: invariant,
        primary_factors: primary,
    }
}

/// Invariant factors of `(F_q, +) x F_q^*` for `q = p^t`.
pub fn additive_times_multiplicative(p: u64, t: u32) -> Vec<u64> {
    let q = p.pow(t);
    let mut out = vec![p; t as usize - 1];
    out.push(p * (q - 1));
    out.retain(|&d| d > 1);
    out
}

/// Order of `x` under `op` with identity `id`.
pub fn element_order<T: Clone + PartialEq>(x: &T, id: &T, op: impl Fn(&T, &T) -> T) -> u64 {
    let mut k = 1;
    let mut cur = x.clone();
    while cur != *id {
        cur = op(&cur, x);
        k += 1;
    }
    k
}

/// Closure of `gens` under `op`, starting from `id`.
pub fn generated_subgroup<T: Clone + Eq + Hash>(gens: &[T], id: &T, op: impl Fn(&T, &T) -> T) -> HashSet<T> {
    let mut seen: HashSet<T> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id.clone()]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = op(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Greedy generating set: walk the elements by decreasing order and keep
/// each one not already in the span of those kept.
pub fn greedy_generators<T: Clone + Eq + Hash>(elements: &[T], orders: &[u64], id: &T, op: impl Fn(&T, &T) -> T) -> Vec<T> {
    let mut idx: Vec<usize> = (0..elements.len()).collect();
    idx.sort_by_key(|&i| std::cmp::Reverse(orders[i]));
    let mut gens: Vec<T> = Vec::new();
    let mut span: HashSet<T> = HashSet::from([id.clone()]);
    for i in idx {
        if span.len() == elements.len() {
            break;
        }
        if !span.contains(&elements[i]) {
            gens.push(elements[i].clone());
            span = generated_subgroup(&gens, id, &op);
        }
    }
    gens
}

/// Histogram of element orders.
pub fn order_histogram(orders: &[u64]) -> BTreeMap<u64, u64> {
    let mut h = BTreeMap::new();
    for &o in orders {
        *h.entry(o).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_product_orders(mods: &[u64]) -> Vec<u64> {
        let mut out = vec![1u64];
        for &m in mods {
            let mut next = Vec::new();
            for &o in &out {
                for k in 0..m {
                    let ok = m / gcd(k, m);
                    next.push(o / gcd(o, ok) * ok);
                }
            }
            out = next;
        }
        out
    }

    #[test]
    fn census_recovers_structure() {
        let inv = abelian_invariants(&cyclic_product_orders(&[2, 2, 3]));
        assert_eq!(inv.invariant_factors, vec![2, 6]);
        assert_eq!(inv.primary_factors, vec![2, 2, 3]);
        assert_eq!(inv.exponent, 6);
        let inv = abelian_invariants(&cyclic_product_orders(&[4, 2, 9, 3, 5]));
        assert_eq!(inv.invariant_factors, vec![6, 180]);
        assert_eq!(inv.primary_factors, vec![2, 3, 4, 5, 9]);
        let inv = abelian_invariants(&[1]);
        assert!(inv.invariant_factors.is_empty());
    }

    #[test]
    fn expected_types() {
        assert_eq!(additive_times_multiplicative(3, 1), vec![6]);
        assert_eq!(additive_times_multiplicative(2, 2), vec![2, 6]);
        assert_eq!(additive_times_multiplicative(3, 2), vec![3, 24]);
        assert_eq!(additive_times_multiplicative(2, 1), vec![2]);
    }
}
