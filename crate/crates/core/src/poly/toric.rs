//! Defining ideal of a monomial curve: the kernel of `X_i ↦ t^{a_i}`.
//!
//! Start from the lattice ideal generated by binomials of a kernel basis,
//! then saturate by the product of the variables.

use std::sync::Arc;

use super::field::Field;
use super::groebner::{buchberger, GbLimits, GroebnerBasis};
use super::lattice::kernel_basis;
use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::ring::{MonomialOrder, PolyRing};
use super::PolyError;

pub const MAX_TORIC_VARS: usize = 6;
pub const MAX_TORIC_GENERATOR: i64 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Saturation {
    /// One variable at a time: a revlex basis with `x_k` last, then divide
    /// out powers of `x_k`.
    PerVariable,
    /// Adjoin `T` with `T·x_1⋯x_n − 1` and eliminate `T`.
    Elimination,
}

pub fn lattice_binomials<F: Field>(ring: &Arc<PolyRing>, a: &[i64]) -> Vec<Polynomial<F>> {
    kernel_basis(a)
        .into_iter()
        .map(|u| {
            let plus: Vec<u32> = u.iter().map(|&x| x.max(0) as u32).collect();
            let minus: Vec<u32> = u.iter().map(|&x| (-x).max(0) as u32).collect();
            Polynomial::binomial(ring, &plus, &minus)
        })
        .collect()
}

/// Gröbner basis of the toric ideal of `a` in the ring `X1..Xn` graded by
/// `a`, under the default order.
pub fn toric_ideal<F: Field>(a: &[i64]) -> Result<GroebnerBasis<F>, PolyError> {
    toric_ideal_via(a, Saturation::PerVariable)
}

pub fn toric_ideal_via<F: Field>(a: &[i64], route: Saturation) -> Result<GroebnerBasis<F>, PolyError> {
    if a.is_empty() || a.len() > MAX_TORIC_VARS || a.iter().any(|&x| x > MAX_TORIC_GENERATOR) {
        return Err(PolyError::ResourceLimit(format!(
            "toric ideal needs 1..={MAX_TORIC_VARS} generators each at most {MAX_TORIC_GENERATOR}"
        )));
    }
    assert!(a.iter().all(|&x| x > 0), "generators must be positive");
    let weights: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let ring = PolyRing::standard(&weights);
    let gens = lattice_binomials::<F>(&ring, a);
    match route {
        Saturation::PerVariable => saturate_per_variable(&ring, gens),
        Saturation::Elimination => saturate_by_elimination(&ring, gens),
    }
}

fn saturate_per_variable<F: Field>(
    ring: &Arc<PolyRing>,
    mut gens: Vec<Polynomial<F>>,
) -> Result<GroebnerBasis<F>, PolyError> {
    let limits = GbLimits::for_ring(ring);
    for k in 0..ring.nvars() {
        let rk = ring.with_order(MonomialOrder::weighted_revlex_with_last(ring.weights(), Some(k)));
        let local: Vec<_> = gens.iter().map(|g| g.to_ring(&rk)).collect();
        let gb = buchberger(&rk, &local, limits)?;
        gens = gb.basis().iter().map(|g| g.strip_var(k).to_ring(ring)).collect();
    }
    buchberger(ring, &gens, limits)
}

fn saturate_by_elimination<F: Field>(
    ring: &Arc<PolyRing>,
    gens: Vec<Polynomial<F>>,
) -> Result<GroebnerBasis<F>, PolyError> {
    let n = ring.nvars();
    let big = ring.extend(&["T"], &[1]);
    let big = big.with_order(MonomialOrder::elimination(big.weights(), &[n]));
    let map: Vec<usize> = (0..n).collect();
    let mut all: Vec<Polynomial<F>> = gens.iter().map(|g| g.embed(&big, &map)).collect();
    let t_prod = Polynomial::monomial(&big, &vec![1u32; n + 1]);
    all.push(&t_prod - &Polynomial::one(&big));
    let gb = buchberger(&big, &all, GbLimits::for_ring(&big))?;
    let kept: Vec<Polynomial<F>> = gb
        .basis()
        .iter()
        .filter(|g| !g.uses_var(n))
        .map(|g| {
            let raw = g
                .terms()
                .iter()
                .map(|(m, c)| (Monomial::from_exponents(m.exponents()[..n].to_vec()), c.clone()))
                .collect();
            Polynomial::from_terms(ring, raw)
        })
        .collect();
    buchberger(ring, &kept, GbLimits::for_ring(ring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_polynomial;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type Gb = GroebnerBasis<BigRational>;

    #[test]
    fn plane_cusp() {
        let gb: Gb = toric_ideal(&[2, 3]).unwrap();
        assert_eq!(gb.len(), 1);
        let r = gb.ring().clone();
        let g: Polynomial<BigRational> = parse_polynomial(&r, "X1^3 - X2^2").unwrap();
        assert_eq!(gb.basis()[0].monic(), g.monic());
    }

    #[test]
    fn routes_agree() {
        for a in [vec![3, 4, 5], vec![7, 8, 9, 10], vec![5, 7, 11], vec![4, 6, 9], vec![6, 7, 8, 9, 10]] {
            let x: Gb = toric_ideal_via(&a, Saturation::PerVariable).unwrap();
            let y: Gb = toric_ideal_via(&a, Saturation::Elimination).unwrap();
            assert!(x.is_groebner() && x.is_homogeneous(), "{a:?}");
            let sx: Vec<String> = x.basis().iter().map(|g| g.to_string()).collect();
            let sy: Vec<String> = y.basis().iter().map(|g| g.to_string()).collect();
            assert_eq!(sx, sy, "{a:?}");
        }
    }

    #[test]
    fn rejects_oversized_input() {
        assert!(matches!(toric_ideal::<BigRational>(&[3, 201]), Err(PolyError::ResourceLimit(_))));
        assert!(matches!(
            toric_ideal::<BigRational>(&[7, 8, 9, 10, 11, 12, 13]),
            Err(PolyError::ResourceLimit(_))
        ));
    }

    fn weighted(u: &[u32], a: &[i64]) -> i64 {
        u.iter().zip(a).map(|(&x, &y)| x as i64 * y).sum()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn membership_matches_degree_equality(
            idx in 0usize..4,
            pairs in prop::collection::vec(
                (prop::collection::vec(0u32..5, 4), prop::collection::vec(0u32..5, 4)),
                100,
            ),
        ) {
            let sets: [&[i64]; 4] = [&[3, 4, 5], &[7, 8, 9, 10], &[5, 6, 13], &[4, 5, 11, 13]];
            let a = sets[idx];
            let gb: Gb = toric_ideal(a).unwrap();
            let r = gb.ring().clone();
            for (u, v) in &pairs {
                let (u, v) = (&u[..a.len()], &v[..a.len()]);
                let b = Polynomial::<BigRational>::binomial(&r, u, v);
                prop_assert_eq!(gb.contains(&b), weighted(u, a) == weighted(v, a));
            }
        }
    }
}
