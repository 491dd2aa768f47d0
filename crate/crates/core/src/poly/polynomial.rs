use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::Field;
use super::monomial::Monomial;
use super::ring::PolyRing;

/// Sparse polynomial with terms stored in strictly decreasing monomial
/// order and no zero coefficients.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: F) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, F::one())
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: F) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<PolyRing>, idx: usize) -> Self {
        Self::var_pow(ring, idx, 1)
    }

    pub fn var_pow(ring: &Arc<PolyRing>, idx: usize, exp: u32) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), idx, exp), F::one())
    }

    /// Monomial `X^exps` with coefficient 1.
    pub fn monomial(ring: &Arc<PolyRing>, exps: &[u32]) -> Self {
        Self::term(ring, Monomial::from_exponents(exps.to_vec()), F::one())
    }

    /// Binomial `X^u - X^v`.
    pub fn binomial(ring: &Arc<PolyRing>, u: &[u32], v: &[u32]) -> Self {
        &Self::monomial(ring, u) - &Self::monomial(ring, v)
    }

    /// Builds from arbitrary terms, combining duplicates and sorting.
    pub fn from_terms(ring: &Arc<PolyRing>, mut raw: Vec<(Monomial, F)>) -> Self {
        raw.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut terms: Vec<(Monomial, F)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            assert_eq!(m.nvars(), ring.nvars());
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    *lc = lc.clone() + c;
                    if lc.is_zero() {
                        terms.pop();
                    }
                }
                _ => {
                    if !c.is_zero() {
                        terms.push((m, c));
                    }
                }
            }
        }
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
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

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.terms.first().map(|t| &t.1)
    }

    /// Largest weighted degree among the terms.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| self.ring.degree(m)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| self.ring.degree(m));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a.clone() * c.clone())).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&(F::one() / lc.clone())),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self + c * m * other`, the workhorse of reduction.
    pub fn add_scaled(&self, other: &Self, m: &Monomial, c: &F) -> Self {
        self.check_ring(other);
        let terms = merge_scaled(&self.ring, &self.terms, &other.terms, m, c);
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<(Monomial, F)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Reinterprets the polynomial in a ring with the same variables but a
    /// possibly different order.
    pub fn to_ring(&self, ring: &Arc<PolyRing>) -> Self {
        assert!(self.ring.same_variables(ring), "rings must share variables");
        Self::from_terms(ring, self.terms.clone())
    }

    /// Maps variable `i` of this ring to variable `map[i]` of `ring`.
    pub fn embed(&self, ring: &Arc<PolyRing>, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.ring.nvars());
        let raw = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; ring.nvars()];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial::from_exponents(e), c.clone())
            })
            .collect();
        Self::from_terms(ring, raw)
    }

    /// Divides out the largest power of variable `v` dividing every term.
    pub fn strip_var(&self, v: usize) -> Self {
        let k = self.terms.iter().map(|(m, _)| m.exponents()[v]).min().unwrap_or(0);
        if k == 0 {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e[v] -= k;
                (Monomial::from_exponents(e), c.clone())
            })
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[v] > 0)
    }

    /// Substitutes polynomials (over `ring`) for each variable.
    pub fn substitute(&self, ring: &Arc<PolyRing>, images: &[Polynomial<F>]) -> Self {
        assert_eq!(images.len(), self.ring.nvars());
        let mut acc = Self::zero(ring);
        for (m, c) in &self.terms {
            let mut t = Self::constant(ring, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring,
            "polynomials live in different rings"
        );
    }
}

/// Merges sorted term lists: `a + c * m * b`.
pub(crate) fn merge_scaled<F: Field>(
    ring: &PolyRing,
    a: &[(Monomial, F)],
    b: &[(Monomial, F)],
    m: &Monomial,
    c: &F,
) -> Vec<(Monomial, F)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut a = a.iter().peekable();
    let mut b = b.iter().map(|(t, x)| (t.mul(m), x.clone() * c.clone())).peekable();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some(x), Some(y)) => ring.cmp(&x.0, &y.0),
        };
        match ord {
            Ordering::Greater => out.push(a.next().unwrap().clone()),
            Ordering::Less => {
                let t = b.next().unwrap();
                if !t.1.is_zero() {
                    out.push(t);
                }
            }
            Ordering::Equal => {
                let (m1, c1) = a.next().unwrap();
                let (_, c2) = b.next().unwrap();
                let s = c1.clone() + c2;
                if !s.is_zero() {
                    out.push((m1.clone(), s));
                }
            }
        }
    }
    out
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_variables(&other.ring)
            && if *self.ring.order() == *other.ring.order() {
                self.terms == other.terms
            } else {
                self.terms == other.to_ring(&self.ring).terms
            }
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        self.add_scaled(rhs, &Monomial::one(self.ring.nvars()), &F::one())
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        self.add_scaled(rhs, &Monomial::one(self.ring.nvars()), &(-F::one()))
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&(-F::one()))
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        self.check_ring(rhs);
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                raw.push((m1.mul(m2), c1.clone() * c2.clone()));
            }
        }
        Polynomial::from_terms(&self.ring, raw)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", self.ring.format_monomial(m))?;
            } else {
                write!(f, "{abs}*{}", self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
