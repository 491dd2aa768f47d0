//! Relative ideals of a numerical semigroup.
//!
//! A relative ideal `E` is a subset of ℤ that is bounded below and closed
//! under adding elements of `H`. It is stored as its minimal generators, so
//! `E = ∪_g (g + H)`. These are the combinatorial model of fractional ideals
//! of `k[[H]]`, and give a trace computation that needs no presentation of the
//! ring at all.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semigroup::{NumericalSemigroup, SemigroupSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("relative ideals live over different semigroups")]
    BaseMismatch,
    #[error("a relative ideal needs at least one generator")]
    Empty,
}

/// JSON shape `{"base":{"generators":[...]},"generators":[...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeIdealSpec {
    pub base: SemigroupSpec,
    pub generators: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct RelativeIdeal {
    base: Arc<NumericalSemigroup>,
    generators: Vec<i64>,
}

impl PartialEq for RelativeIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.same_base(other) && self.generators == other.generators
    }
}

impl Eq for RelativeIdeal {}

impl RelativeIdeal {
    pub fn from_generators(base: &Arc<NumericalSemigroup>, gens: &[i64]) -> Result<Self, IdealError> {
        if gens.is_empty() {
            return Err(IdealError::Empty);
        }
        Ok(Self { base: Arc::clone(base), generators: normalize(base, gens) })
    }

    /// The ideal `H` itself, i.e. `0 + H`.
    pub fn unit(base: &Arc<NumericalSemigroup>) -> Self {
        Self { base: Arc::clone(base), generators: vec![0] }
    }

    /// Builds the relative ideal whose members are exactly the integers
    /// accepted by `member`, given that nothing below `lower` is a member and
    /// that `upper` is.
    ///
    /// The predicate must describe a set closed under `+H`.
    pub(crate) fn from_membership(
        base: &Arc<NumericalSemigroup>,
        lower: i64,
        upper: i64,
        member: impl Fn(i64) -> bool,
    ) -> Self {
        assert!(member(upper), "membership window sentinel {upper} is not in the ideal");
        let first = (lower..=upper).find(|&z| member(z)).unwrap();
        // Beyond first + F(H) every integer is in the ideal, so minimal
        // generators sit below first + F(H) + max generator.
        let top = first + base.frobenius().max(0) + base.max_generator();
        let gens: Vec<i64> = (first..=top)
            .filter(|&z| member(z) && base.generators().iter().all(|&a| !member(z - a)))
            .collect();
        Self { base: Arc::clone(base), generators: gens }
    }

    pub fn from_spec(spec: &RelativeIdealSpec) -> Result<Self, crate::Error> {
        let base = Arc::new(NumericalSemigroup::from_spec(&spec.base)?);
        Ok(Self::from_generators(&base, &spec.generators)?)
    }

    pub fn to_spec(&self) -> RelativeIdealSpec {
        RelativeIdealSpec { base: self.base.to_spec(), generators: self.generators.clone() }
    }

    pub fn base(&self) -> &Arc<NumericalSemigroup> {
        &self.base
    }

    /// Minimal generators, ascending.
    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn min(&self) -> i64 {
        self.generators[0]
    }

    pub fn contains(&self, z: i64) -> bool {
        self.generators.iter().any(|&g| self.base.contains(z - g))
    }

    pub fn is_subset_of(&self, other: &RelativeIdeal) -> bool {
        self.generators.iter().all(|&g| other.contains(g))
    }

    /// Shifts every element by `k`.
    pub fn translate(&self, k: i64) -> Self {
        Self {
            base: Arc::clone(&self.base),
            generators: self.generators.iter().map(|g| g + k).collect(),
        }
    }

    fn same_base(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.base, &other.base) || self.base.generators() == other.base.generators()
    }

    /// Minkowski sum `E + F`.
    pub fn add(&self, other: &Self) -> Result<Self, IdealError> {
        if !self.same_base(other) {
            return Err(IdealError::BaseMismatch);
        }
        let sums: Vec<i64> = self
            .generators
            .iter()
            .flat_map(|&e| other.generators.iter().map(move |&f| e + f))
            .collect();
        Ok(Self { base: Arc::clone(&self.base), generators: normalize(&self.base, &sums) })
    }

    /// `E − F = {z : z + F ⊆ E}`.
    pub fn colon(&self, other: &Self) -> Result<Self, IdealError> {
        if !self.same_base(other) {
            return Err(IdealError::BaseMismatch);
        }
        // z + min(F) < min(E) rules z out; z + min(F) > min(E) + F(H) puts
        // every z + g inside E.
        let lower = self.min() - other.min();
        let upper = lower + self.base.frobenius().max(0) + 1;
        Ok(Self::from_membership(&self.base, lower, upper, |z| {
            other.generators.iter().all(|&g| self.contains(z + g))
        }))
    }

    /// True iff `self = other + k` for some integer `k`.
    pub fn is_translate_of(&self, other: &Self) -> bool {
        self.same_base(other)
            && self.generators.len() == other.generators.len()
            && self.translate(other.min() - self.min()).generators == other.generators
    }
}

fn normalize(base: &NumericalSemigroup, gens: &[i64]) -> Vec<i64> {
    let mut sorted = gens.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out: Vec<i64> = Vec::with_capacity(sorted.len());
    for g in sorted {
        if !out.iter().any(|&h| base.contains(g - h)) {
            out.push(g);
        }
    }
    out
}

/// The canonical ideal `K = {x : F(H) − x ∉ H}`.
pub fn canonical_ideal(base: &Arc<NumericalSemigroup>) -> RelativeIdeal {
    let f = base.frobenius();
    let ideal = RelativeIdeal::from_membership(base, 0, f + 1, |x| !base.contains(f - x));
    debug_assert!({
        let mut expected: Vec<i64> = base.pseudo_frobenius().iter().map(|p| f - p).collect();
        expected.sort_unstable();
        expected == ideal.generators
    });
    ideal
}

/// Trace of the canonical module, `K + (H − K)`.
pub fn trace_canonical_oracle(base: &Arc<NumericalSemigroup>) -> RelativeIdeal {
    let k = canonical_ideal(base);
    let dual = RelativeIdeal::unit(base).colon(&k).expect("same base");
    k.add(&dual).expect("same base")
}

/// Nearly Gorenstein iff every minimal generator of `H` lies in the trace.
pub fn is_nearly_gorenstein_oracle(base: &Arc<NumericalSemigroup>) -> bool {
    let tr = trace_canonical_oracle(base);
    base.generators().iter().all(|&a| tr.contains(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn base(g: &[i64]) -> Arc<NumericalSemigroup> {
        Arc::new(NumericalSemigroup::new(g).unwrap())
    }

    /// Elements of a relative ideal inside `[lo, hi]`, by brute force from the generators.
    fn elements(h: &NumericalSemigroup, gens: &[i64], lo: i64, hi: i64) -> BTreeSet<i64> {
        (lo..=hi).filter(|&z| gens.iter().any(|&g| h.contains(z - g))).collect()
    }

    /// Minimal generators of a finite description "members in [lo, hi], everything above hi".
    fn min_gens(h: &NumericalSemigroup, members: &BTreeSet<i64>, hi: i64) -> Vec<i64> {
        let inside = |z: i64| z > hi || members.contains(&z);
        members
            .iter()
            .copied()
            .filter(|&z| h.generators().iter().all(|&a| !inside(z - a)))
            .collect()
    }

    #[test]
    fn normalization() {
        let h = base(&[3, 4, 5]);
        assert_eq!(RelativeIdeal::from_generators(&h, &[0, 3]).unwrap().generators(), &[0]);
        assert_eq!(RelativeIdeal::from_generators(&h, &[1, 2]).unwrap().generators(), &[1, 2]);
        let h = base(&[7, 8, 9, 10]);
        assert_eq!(
            RelativeIdeal::from_generators(&h, &[0, 11, 12, 13]).unwrap().generators(),
            &[0, 11, 12, 13]
        );
        assert_eq!(RelativeIdeal::from_generators(&h, &[]), Err(IdealError::Empty));
    }

    #[test]
    fn canonical_ideals() {
        assert_eq!(canonical_ideal(&base(&[2, 3])).generators(), &[0]);
        assert_eq!(canonical_ideal(&base(&[3, 4, 5])).generators(), &[0, 1]);
        assert_eq!(canonical_ideal(&base(&[7, 8, 9, 10])).generators(), &[0, 1, 2]);
    }

    #[test]
    fn ideal_arithmetic_small_cases() {
        let h = base(&[3, 4, 5]);
        let k = canonical_ideal(&h);
        let unit = RelativeIdeal::unit(&h);
        assert_eq!(k.add(&unit).unwrap(), k);
        assert_eq!(k.colon(&unit).unwrap(), k);

        // H − K = {z : z ∈ H, z + 1 ∈ H} = {3, 4, 5, ...}.
        let dual = unit.colon(&k).unwrap();
        let members: BTreeSet<i64> = (-5..=20).filter(|&z| h.contains(z) && h.contains(z + 1)).collect();
        assert_eq!(dual.generators(), min_gens(&h, &members, 20).as_slice());
        assert_eq!(dual.generators(), &[3, 4, 5]);

        // {1,2} + {1,2}: sums {2,3,4}, none differ by an element of H.
        let e = RelativeIdeal::from_generators(&h, &[1, 2]).unwrap();
        let sum = e.add(&e).unwrap();
        let members = elements(&h, &[2, 3, 4], -5, 30);
        assert_eq!(sum.generators(), min_gens(&h, &members, 30).as_slice());
        assert_eq!(sum.generators(), &[2, 3, 4]);

        let other = RelativeIdeal::unit(&base(&[2, 3]));
        assert_eq!(k.add(&other), Err(IdealError::BaseMismatch));
        assert_eq!(k.colon(&other), Err(IdealError::BaseMismatch));
    }

    #[test]
    fn colon_handles_spread_out_divisors() {
        // F has generators far apart relative to E; the scan must still reach them.
        let h = base(&[3, 4, 5]);
        let e = RelativeIdeal::unit(&h);
        let f = RelativeIdeal::from_generators(&h, &[0, 100]).unwrap();
        let col = e.colon(&f).unwrap();
        let members: BTreeSet<i64> =
            (-200..=200).filter(|&z| h.contains(z) && h.contains(z + 100)).collect();
        assert_eq!(col.generators(), min_gens(&h, &members, 200).as_slice());
    }

    #[test]
    fn traces() {
        let h = base(&[2, 3]);
        assert_eq!(trace_canonical_oracle(&h), RelativeIdeal::unit(&h));
        assert!(is_nearly_gorenstein_oracle(&h));

        let h = base(&[3, 4, 5]);
        assert_eq!(trace_canonical_oracle(&h).generators(), &[3, 4, 5]);

        let h = base(&[7, 8, 9, 10]);
        let tr = trace_canonical_oracle(&h);
        assert!([7, 8, 9, 10].iter().all(|&a| tr.contains(a)));
        assert!(is_nearly_gorenstein_oracle(&h));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn setup() -> impl Strategy<Value = (Arc<NumericalSemigroup>, Vec<i64>, Vec<i64>)> {
            (
                prop::collection::vec(2i64..15, 2..4)
                    .prop_filter_map("invalid", |g| NumericalSemigroup::new(&g).ok().map(Arc::new)),
                prop::collection::vec(-6i64..12, 1..4),
                prop::collection::vec(-6i64..12, 1..4),
            )
        }

        proptest! {
            #[test]
            fn galois_connection((h, e, f) in setup()) {
                let e = RelativeIdeal::from_generators(&h, &e).unwrap();
                let f = RelativeIdeal::from_generators(&h, &f).unwrap();
                prop_assert!(e.is_subset_of(&e.add(&f).unwrap().colon(&f).unwrap()));
                prop_assert!(e.colon(&f).unwrap().add(&f).unwrap().is_subset_of(&e));
            }

            #[test]
            fn colon_matches_brute_force((h, e, f) in setup()) {
                let e = RelativeIdeal::from_generators(&h, &e).unwrap();
                let f = RelativeIdeal::from_generators(&h, &f).unwrap();
                let col = e.colon(&f).unwrap();
                let hi = 200;
                let members: BTreeSet<i64> = (-100..=hi)
                    .filter(|&z| f.generators().iter().all(|&g| e.contains(z + g)))
                    .collect();
                prop_assert_eq!(col.generators().to_vec(), min_gens(&h, &members, hi));
            }

            #[test]
            fn canonical_generators_are_shifted_pseudo_frobenius(
                h in prop::collection::vec(2i64..30, 2..5)
                    .prop_filter_map("invalid", |g| NumericalSemigroup::new(&g).ok().map(Arc::new))
            ) {
                let f = h.frobenius();
                let mut expected: Vec<i64> = h.pseudo_frobenius().iter().map(|p| f - p).collect();
                expected.sort();
                prop_assert_eq!(canonical_ideal(&h).generators().to_vec(), expected);
                let tr = trace_canonical_oracle(&h);
                prop_assert!(tr.is_subset_of(&RelativeIdeal::unit(&h)));
                prop_assert_eq!(tr == RelativeIdeal::unit(&h), h.is_symmetric());
                if h.is_almost_symmetric() {
                    prop_assert!(is_nearly_gorenstein_oracle(&h));
                }
            }
        }
    }
}
