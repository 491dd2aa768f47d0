//! Left kernel of a matrix over a quotient ring `S/J`.
//!
//! Module elements of `S^k` are encoded as polynomials linear in extra
//! position variables `e_1..e_k`, with all products `e_a e_b` adjoined to
//! the ideal. A block order comparing the position block first gives a
//! position-over-term module order.

use std::sync::Arc;

use super::field::Field;
use super::groebner::{buchberger, GbLimits};
use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::ring::{MonomialOrder, OrderBlock, PolyRing};
use super::PolyError;

pub const MAX_KERNEL_ROWS: usize = 4;
pub const MAX_KERNEL_VARS: usize = 6;

/// Generators of `{f ∈ (S/J)^r : f·N ≡ 0 mod J}` for an `r × q` matrix `N`.
///
/// Built from a module Gröbner basis of the rows `(N_i | e_i)` together with
/// `J·e_k`; basis elements supported on the last `r` positions are the
/// kernel.
pub fn kernel_over_quotient<F: Field>(
    ring: &Arc<PolyRing>,
    matrix: &[Vec<Polynomial<F>>],
    ideal: &[Polynomial<F>],
) -> Result<Vec<Vec<Polynomial<F>>>, PolyError> {
    let r = matrix.len();
    if r == 0 {
        return Ok(Vec::new());
    }
    let q = matrix[0].len();
    assert!(matrix.iter().all(|row| row.len() == q), "ragged matrix");
    if r > MAX_KERNEL_ROWS || ring.nvars() > MAX_KERNEL_VARS {
        return Err(PolyError::ResourceLimit(format!(
            "kernel computation limited to {MAX_KERNEL_ROWS} rows and {MAX_KERNEL_VARS} variables"
        )));
    }

    let nv = ring.nvars();
    let k = q + r;
    let names: Vec<String> = (1..=k).map(|i| format!("e{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let big = ring.extend(&name_refs, &vec![1; k]);
    let mut blocks = vec![OrderBlock { vars: (nv..nv + k).collect(), weights: vec![1; k] }];
    blocks.extend(ring.order().blocks.iter().cloned());
    let big = big.with_order(MonomialOrder { blocks });

    let map: Vec<usize> = (0..nv).collect();
    let e = |i: usize| Polynomial::<F>::var(&big, nv + i);

    let mut gens = Vec::new();
    for (i, row) in matrix.iter().enumerate() {
        let mut g = e(q + i);
        for (c, entry) in row.iter().enumerate() {
            g = &g + &(&entry.embed(&big, &map) * &e(c));
        }
        gens.push(g);
    }
    for h in ideal {
        let hb = h.embed(&big, &map);
        for c in 0..q {
            gens.push(&hb * &e(c));
        }
    }
    for a in 0..k {
        for b in a..k {
            gens.push(&e(a) * &e(b));
        }
    }

    let base = GbLimits::for_ring(ring);
    let limits = GbLimits { max_basis: base.max_basis, max_degree: base.max_degree + 2 };
    let gb = buchberger(&big, &gens, limits)?;

    let mut rows = Vec::new();
    for g in gb.basis() {
        let mut parts: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); k];
        let mut linear = true;
        for (m, c) in g.terms() {
            let ex = m.exponents();
            let pos: Vec<usize> = (0..k).filter(|&i| ex[nv + i] > 0).collect();
            if pos.len() != 1 || ex[nv + pos[0]] != 1 {
                linear = false;
                break;
            }
            parts[pos[0]].push((Monomial::from_exponents(ex[..nv].to_vec()), c.clone()));
        }
        if !linear || parts[..q].iter().any(|p| !p.is_empty()) {
            continue;
        }
        rows.push(parts[q..].iter().map(|p| Polynomial::from_terms(ring, p.clone())).collect());
    }
    Ok(rows)
}
