//! Numerical semigroups and their classical invariants.
//!
//! A [`NumericalSemigroup`] is stored through its minimal generators, sorted
//! ascending, together with the Apéry set with respect to the multiplicity.
//! Every membership query goes through that table.

use std::collections::BinaryHeap;
use std::cmp::Reverse;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest integer accepted by [`NumericalSemigroup::factorizations`].
pub const FACTORIZATION_LIMIT: i64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("generator list is empty")]
    Empty,
    #[error("generator {0} is not positive")]
    NonPositive(i64),
    #[error("generators have gcd {0}, expected 1")]
    GcdNotOne(i64),
    #[error("generator {0} lies in the semigroup generated by the others")]
    NonMinimalGenerators(i64),
    #[error("{0} is not an element of the semigroup")]
    NotInSemigroup(i64),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

/// JSON shape `{"generators":[...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupSpec {
    pub generators: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<i64>,
    /// `apery[r]` is the least element congruent to `r` modulo the multiplicity.
    apery: Vec<i64>,
    frobenius: i64,
    gaps: Vec<i64>,
    pseudo_frobenius: Vec<i64>,
}

impl NumericalSemigroup {
    pub fn new(gens: &[i64]) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::Empty);
        }
        if let Some(&g) = gens.iter().find(|&&g| g <= 0) {
            return Err(SemigroupError::NonPositive(g));
        }
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        let g = sorted.iter().fold(0, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(SemigroupError::GcdNotOne(g));
        }

        // Unbounded knapsack over the generators seen so far.
        let top = *sorted.last().unwrap() as usize;
        let mut reachable = vec![false; top + 1];
        reachable[0] = true;
        for &a in &sorted {
            if reachable[a as usize] {
                return Err(SemigroupError::NonMinimalGenerators(a));
            }
            let a = a as usize;
            for v in a..=top {
                if reachable[v - a] {
                    reachable[v] = true;
                }
            }
        }

        let apery = apery_table(&sorted, sorted[0]);
        let multiplicity = sorted[0];
        let frobenius = apery.iter().copied().max().unwrap() - multiplicity;
        let mut sg = NumericalSemigroup {
            generators: sorted,
            apery,
            frobenius,
            gaps: Vec::new(),
            pseudo_frobenius: Vec::new(),
        };
        sg.gaps = (1..=frobenius).filter(|&x| !sg.contains(x)).collect();
        // x + h ∈ H for all h > 0 iff x + a ∈ H for every generator a.
        sg.pseudo_frobenius = (-1..=frobenius)
            .filter(|&x| !sg.contains(x) && sg.generators.iter().all(|&a| sg.contains(x + a)))
            .collect();
        Ok(sg)
    }

    pub fn from_spec(spec: &SemigroupSpec) -> Result<Self, SemigroupError> {
        Self::new(&spec.generators)
    }

    pub fn to_spec(&self) -> SemigroupSpec {
        SemigroupSpec { generators: self.generators.clone() }
    }

    /// Minimal generators in ascending order.
    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn multiplicity(&self) -> i64 {
        self.generators[0]
    }

    pub fn max_generator(&self) -> i64 {
        *self.generators.last().unwrap()
    }

    pub fn contains(&self, h: i64) -> bool {
        if h < 0 {
            return false;
        }
        let m = self.multiplicity();
        h >= self.apery[h.rem_euclid(m) as usize]
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn gaps(&self) -> &[i64] {
        &self.gaps
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    /// Apéry set of `s`, indexed by residue modulo `s`.
    pub fn apery_set(&self, s: i64) -> Result<Vec<i64>, SemigroupError> {
        if s <= 0 || !self.contains(s) {
            return Err(SemigroupError::NotInSemigroup(s));
        }
        if s == self.multiplicity() {
            return Ok(self.apery.clone());
        }
        Ok(apery_table(&self.generators, s))
    }

    pub fn pseudo_frobenius(&self) -> &[i64] {
        &self.pseudo_frobenius
    }

    pub fn semigroup_type(&self) -> usize {
        self.pseudo_frobenius.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let f = self.frobenius;
        (0..=f).all(|x| self.contains(x) != self.contains(f - x))
    }

    /// Nari's criterion: `f_i + f_{t-i} = f_t` for the sorted pseudo-Frobenius numbers.
    pub fn is_almost_symmetric(&self) -> bool {
        let pf = &self.pseudo_frobenius;
        let t = pf.len();
        (1..t).all(|i| pf[i - 1] + pf[t - i - 1] == pf[t - 1])
    }

    /// All exponent vectors `λ` (indexed like [`generators`](Self::generators))
    /// with `Σ λ_i a_i = h`.
    pub fn factorizations(&self, h: i64) -> Result<Vec<Vec<u32>>, SemigroupError> {
        if h > FACTORIZATION_LIMIT {
            return Err(SemigroupError::ResourceLimit(format!(
                "factorizations of {h} exceed the limit {FACTORIZATION_LIMIT}"
            )));
        }
        let mut out = Vec::new();
        if !self.contains(h) {
            return Ok(out);
        }
        let mut current = vec![0u32; self.generators.len()];
        factorize_rec(&self.generators, 0, h, &mut current, &mut out);
        Ok(out)
    }
}

fn factorize_rec(gens: &[i64], idx: usize, rest: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if idx + 1 == gens.len() {
        if rest % gens[idx] == 0 {
            cur[idx] = (rest / gens[idx]) as u32;
            out.push(cur.clone());
            cur[idx] = 0;
        }
        return;
    }
    let mut k = 0;
    while k * gens[idx] <= rest {
        cur[idx] = k as u32;
        factorize_rec(gens, idx + 1, rest - k * gens[idx], cur, out);
        k += 1;
    }
    cur[idx] = 0;
}

/// Least element of `⟨gens⟩` in each residue class modulo `modulus`
/// (shortest paths on the residue graph).
fn apery_table(gens: &[i64], modulus: i64) -> Vec<i64> {
    let m = modulus as usize;
    let mut dist = vec![i64::MAX; m];
    dist[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0i64, 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &a in gens {
            let nd = d + a;
            let nr = (r + a as usize) % m;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    dist
}
