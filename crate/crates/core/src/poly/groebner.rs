use std::collections::BTreeSet;
use std::sync::Arc;

use super::field::Field;
use super::monomial::Monomial;
use super::polynomial::{merge_scaled, Polynomial};
use super::ring::PolyRing;
use super::PolyError;

/// Caps on Buchberger's algorithm. Exceeding either is an error, never a
/// silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbLimits {
    pub max_basis: usize,
    pub max_degree: u64,
}

impl GbLimits {
    pub fn for_ring(ring: &PolyRing) -> Self {
        GbLimits { max_basis: 5000, max_degree: 10 * ring.weights().iter().sum::<u64>() }
    }
}

/// Reduced Gröbner basis of an ideal, sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<PolyRing>,
    basis: Vec<Polynomial<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    degree: u64,
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Entry<F: Field> {
    poly: Polynomial<F>,
    lm: Monomial,
    active: bool,
}

/// Buchberger's algorithm with the Gebauer–Möller criteria and the normal
/// selection strategy (smallest lcm degree, then pair index).
pub fn buchberger<F: Field>(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial<F>],
    limits: GbLimits,
) -> Result<GroebnerBasis<F>, PolyError> {
    let mut entries: Vec<Entry<F>> = Vec::new();
    let mut pairs: BTreeSet<Pair> = BTreeSet::new();

    for g in gens {
        if !(Arc::ptr_eq(g.ring(), ring) || **g.ring() == **ring) {
            return Err(PolyError::RingMismatch);
        }
        let h = reduce(g.clone(), &entries);
        if !h.is_zero() {
            insert(&mut entries, &mut pairs, h.monic(), limits)?;
        }
    }

    while let Some(p) = pairs.pop_first() {
        if p.degree > limits.max_degree {
            return Err(PolyError::ResourceLimit(format!(
                "S-pair degree {} exceeds cap {}",
                p.degree, limits.max_degree
            )));
        }
        let s = s_polynomial(&entries[p.i], &entries[p.j], &p.lcm);
        let h = reduce(s, &entries);
        if !h.is_zero() {
            insert(&mut entries, &mut pairs, h.monic(), limits)?;
        }
    }

    let active: Vec<&Entry<F>> = entries.iter().filter(|e| e.active).collect();
    let mut basis = Vec::with_capacity(active.len());
    for (k, e) in active.iter().enumerate() {
        let others: Vec<&Polynomial<F>> =
            active.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, o)| &o.poly).collect();
        basis.push(normal_form_by(&e.poly, &others).monic());
    }
    basis.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    Ok(GroebnerBasis { ring: ring.clone(), basis })
}

fn s_polynomial<F: Field>(a: &Entry<F>, b: &Entry<F>, lcm: &Monomial) -> Polynomial<F> {
    let ta = a.lm.quotient_of(lcm);
    let tb = b.lm.quotient_of(lcm);
    let ring = a.poly.ring();
    let left: Vec<_> = a.poly.terms()[1..].iter().map(|(m, c)| (m.mul(&ta), c.clone())).collect();
    let terms = merge_scaled(ring, &left, &b.poly.terms()[1..], &tb, &(-F::one()));
    Polynomial::from_sorted(ring, terms)
}

fn insert<F: Field>(
    entries: &mut Vec<Entry<F>>,
    pairs: &mut BTreeSet<Pair>,
    h: Polynomial<F>,
    limits: GbLimits,
) -> Result<(), PolyError> {
    if entries.len() >= limits.max_basis {
        return Err(PolyError::ResourceLimit(format!(
            "basis size exceeds cap {}",
            limits.max_basis
        )));
    }
    let ring = h.ring().clone();
    let t = entries.len();
    let lh = h.leading_monomial().unwrap().clone();

    let mut cand: Vec<(usize, Monomial, bool)> = entries
        .iter()
        .enumerate()
        .filter(|(_, e)| e.active)
        .map(|(i, e)| (i, e.lm.lcm(&lh), e.lm.is_coprime(&lh)))
        .collect();

    // Chain criterion among new pairs: drop (i,t) when another new pair's
    // lcm properly divides its lcm.
    let snapshot = cand.clone();
    cand.retain(|(_, l, _)| !snapshot.iter().any(|(_, l2, _)| l2 != l && l2.divides(l)));
    // Among pairs with equal lcm keep one, or none if any is coprime.
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    for (i, l, cop) in cand {
        match kept.iter_mut().find(|(_, l2, _)| *l2 == l) {
            Some(k) => k.2 |= cop,
            None => kept.push((i, l, cop)),
        }
    }
    kept.retain(|(_, _, cop)| !cop);

    // Old pairs made redundant by the new leading monomial.
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && entries[p.i].lm.lcm(&lh) != p.lcm
            && entries[p.j].lm.lcm(&lh) != p.lcm)
    });
    for (i, l, _) in kept {
        pairs.insert(Pair { degree: ring.degree(&l), i, j: t, lcm: l });
    }
    for e in entries.iter_mut() {
        if e.active && lh.divides(&e.lm) {
            e.active = false;
        }
    }
    entries.push(Entry { poly: h, lm: lh, active: true });
    Ok(())
}

fn reduce<F: Field>(p: Polynomial<F>, entries: &[Entry<F>]) -> Polynomial<F> {
    let divisors: Vec<&Polynomial<F>> =
        entries.iter().filter(|e| e.active).map(|e| &e.poly).collect();
    normal_form_by(&p, &divisors)
}

/// Full multivariate division remainder of `p` by `divisors`; the first
/// divisor (in list order) whose leading monomial divides is used.
pub fn normal_form_by<F: Field>(p: &Polynomial<F>, divisors: &[&Polynomial<F>]) -> Polynomial<F> {
    let ring = p.ring().clone();
    let lms: Vec<(&Monomial, &F)> = divisors
        .iter()
        .map(|g| (g.leading_monomial().expect("nonzero divisor"), g.leading_coeff().unwrap()))
        .collect();
    let mut rem: Vec<(Monomial, F)> = Vec::new();
    let mut cur: Vec<(Monomial, F)> = p.terms().to_vec();
    let mut start = 0;
    while start < cur.len() {
        let (lm, lc) = &cur[start];
        match lms.iter().position(|(g, _)| g.divides(lm)) {
            Some(k) => {
                let q = lms[k].0.quotient_of(lm);
                let c = -(lc.clone() / lms[k].1.clone());
                cur = merge_scaled(&ring, &cur[start + 1..], &divisors[k].terms()[1..], &q, &c);
                start = 0;
            }
            None => {
                rem.push(cur[start].clone());
                start += 1;
            }
        }
    }
    Polynomial::from_sorted(&ring, rem)
}

impl<F: Field> GroebnerBasis<F> {
    /// Gröbner basis under default limits for the ring.
    pub fn compute(ring: &Arc<PolyRing>, gens: &[Polynomial<F>]) -> Result<Self, PolyError> {
        buchberger(ring, gens, GbLimits::for_ring(ring))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn basis(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|g| g.is_constant())
    }

    pub fn normal_form(&self, p: &Polynomial<F>) -> Polynomial<F> {
        let p = if Arc::ptr_eq(p.ring(), &self.ring) || **p.ring() == *self.ring {
            p.clone()
        } else {
            p.to_ring(&self.ring)
        };
        let divs: Vec<&Polynomial<F>> = self.basis.iter().collect();
        normal_form_by(&p, &divs)
    }

    pub fn contains(&self, p: &Polynomial<F>) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Buchberger's criterion, checked from scratch.
    pub fn is_groebner(&self) -> bool {
        let divs: Vec<&Polynomial<F>> = self.basis.iter().collect();
        for (i, a) in self.basis.iter().enumerate() {
            for b in &self.basis[i + 1..] {
                let la = a.leading_monomial().unwrap();
                let lb = b.leading_monomial().unwrap();
                let l = la.lcm(lb);
                let s = &a.mul_term(&la.quotient_of(&l), &F::one())
                    - &b.mul_term(&lb.quotient_of(&l), &F::one());
                if !normal_form_by(&s, &divs).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// No basis element has a leading monomial dividing another's, and no
    /// element has a reducible tail.
    pub fn is_reduced(&self) -> bool {
        self.basis.iter().enumerate().all(|(i, g)| {
            g.leading_coeff().is_some_and(|c| c.is_one())
                && self.basis.iter().enumerate().all(|(j, h)| {
                    i == j || g.terms().iter().all(|(m, _)| !h.leading_monomial().unwrap().divides(m))
                })
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        self.basis.iter().all(|g| g.is_homogeneous())
    }

    /// Same-ideal test against another basis over the same variables.
    pub fn same_ideal(&self, other: &GroebnerBasis<F>) -> bool {
        other.basis.iter().all(|g| self.contains(g)) && self.basis.iter().all(|g| other.contains(g))
    }
}

/// Decides `p ∈ (gens)`.
pub fn ideal_membership<F: Field>(
    p: &Polynomial<F>,
    gens: &[Polynomial<F>],
) -> Result<bool, PolyError> {
    let gb = GroebnerBasis::compute(p.ring(), gens)?;
    Ok(gb.contains(p))
}

/// All 2×2 minors of a 2-row matrix, column pairs `(i, j)` with `i < j` in
/// lexicographic order, each `top_i * bottom_j - top_j * bottom_i`.
pub fn two_minors<F: Field>(matrix: &[Vec<Polynomial<F>>; 2]) -> Vec<Polynomial<F>> {
    let [top, bottom] = matrix;
    assert_eq!(top.len(), bottom.len(), "rows must have equal length");
    let n = top.len();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push(&(&top[i] * &bottom[j]) - &(&top[j] * &bottom[i]));
        }
    }
    out
}
