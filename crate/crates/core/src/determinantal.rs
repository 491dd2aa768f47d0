//! Numerical semigroups whose defining ideal is generated by the 2-minors of
//! the cyclic matrix
//!
//! ```text
//! X2^m2  X3^m3  ...  Xn^mn      X1^m1
//! X1^l1  X2^l2  ...  X(n-1)^l(n-1)  Xn^ln
//! ```
//!
//! with column `i` equal to `(X_[i+1]^m_[i+1], X_i^l_i)`.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::poly::{toric_ideal, two_minors, GroebnerBasis, PolyError, PolyRing, Polynomial};
use crate::semigroup::{NumericalSemigroup, SemigroupError};
use crate::Poly;

pub const MAX_SEARCH_BOUND: i64 = 500;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeterminantalError {
    #[error("determinantal form needs n >= 3 generators, got {0}")]
    TooFewGenerators(usize),
    #[error("order, m and ell must all have length {expected}")]
    LengthMismatch { expected: usize },
    #[error("exponents must be positive")]
    NonPositiveExponent,
    #[error("order {0:?} is not a rearrangement of the minimal generators")]
    OrderMismatch(Vec<i64>),
    #[error("matrix is not homogeneous: column {index} gives {found}, column 1 gives {expected}")]
    InhomogeneousMatrix { index: usize, expected: i64, found: i64 },
    #[error("defining ideal is not I_2(D): {witness} is not in the ideal of minors")]
    IdealMismatch { witness: String },
    #[error("product of m equals product of ell, which forces c = 0")]
    DegenerateExponents,
    #[error("search bound {0} exceeds the cap {MAX_SEARCH_BOUND}")]
    BoundTooLarge(i64),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Serialized form: `{"generators":[7,8,9,10],"order":[7,8,9,10],"m":[3,1,1,1],"ell":[1,1,1,2]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterminantalSpec {
    pub generators: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<i64>>,
    pub m: Vec<u32>,
    pub ell: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminantalInstance {
    semigroup: Arc<NumericalSemigroup>,
    order: Vec<i64>,
    m: Vec<u32>,
    ell: Vec<u32>,
    c: i64,
}

/// Element of the dihedral group acting on the cyclic data: optionally
/// reverse (which swaps the two rows), then rotate left by `shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symmetry {
    pub shift: usize,
    pub reversed: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry { shift: 0, reversed: false };

    /// Scan order: identity, the rotations, then the reversed family.
    pub fn all(n: usize) -> Vec<Symmetry> {
        let mut v: Vec<Symmetry> = (0..n).map(|s| Symmetry { shift: s, reversed: false }).collect();
        v.extend((0..n).map(|s| Symmetry { shift: s, reversed: true }));
        v
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.reversed, self.shift) {
            (false, 0) => write!(f, "identity"),
            (false, s) => write!(f, "rotate {s}"),
            (true, 0) => write!(f, "reverse"),
            (true, s) => write!(f, "reverse, rotate {s}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NgCase {
    /// `m_1 = … = m_n = 1`.
    CaseA,
    /// `m_2 = … = m_n = ℓ_1 = … = ℓ_{n-2} = 1`.
    CaseB,
}

impl fmt::Display for NgCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NgCase::CaseA => write!(f, "main(a)"),
            NgCase::CaseB => write!(f, "main(b)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NgClassification {
    pub is_ng: bool,
    pub case: Option<NgCase>,
    pub symmetry: Option<Symmetry>,
}

/// Applies a symmetry to cyclic data `(order, m, ell)`.
pub fn apply_symmetry<T: Clone>(
    sym: Symmetry,
    order: &[T],
    m: &[u32],
    ell: &[u32],
) -> (Vec<T>, Vec<u32>, Vec<u32>) {
    let (mut o, mut mm, mut ll) = (order.to_vec(), m.to_vec(), ell.to_vec());
    if sym.reversed {
        o.reverse();
        let new_m: Vec<u32> = ell.iter().rev().cloned().collect();
        let new_l: Vec<u32> = m.iter().rev().cloned().collect();
        mm = new_m;
        ll = new_l;
    }
    o.rotate_left(sym.shift);
    mm.rotate_left(sym.shift);
    ll.rotate_left(sym.shift);
    (o, mm, ll)
}

pub fn satisfies_case_a(m: &[u32]) -> bool {
    m.iter().all(|&x| x == 1)
}

pub fn satisfies_case_b(m: &[u32], ell: &[u32]) -> bool {
    let n = m.len();
    m[1..].iter().all(|&x| x == 1) && ell[..n - 2].iter().all(|&x| x == 1)
}

/// Common value of `m_[i+1] a_[i+1] - ℓ_i a_i`, or the first column where
/// it changes.
pub fn homogeneity_constant(order: &[i64], m: &[u32], ell: &[u32]) -> Result<i64, DeterminantalError> {
    let n = order.len();
    let col = |i: usize| m[(i + 1) % n] as i64 * order[(i + 1) % n] - ell[i] as i64 * order[i];
    let c = col(0);
    for i in 1..n {
        let ci = col(i);
        if ci != c {
            return Err(DeterminantalError::InhomogeneousMatrix { index: i + 1, expected: c, found: ci });
        }
    }
    Ok(c)
}

/// The weight vector `d` with `d_i = Σ_j (m_[i+1]⋯m_[i+j-1])(ℓ_[i+j]⋯ℓ_[i+n-1])`.
/// It satisfies `m_[i+1] d_[i+1] - ℓ_i d_i = Πm - Πℓ`.
pub fn remark_degrees(m: &[u32], ell: &[u32]) -> Vec<u128> {
    let n = m.len();
    assert_eq!(ell.len(), n);
    (0..n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let mp: u128 = (1..j).map(|k| m[(i + k) % n] as u128).product();
                    let lp: u128 = (j..n).map(|k| ell[(i + k) % n] as u128).product();
                    mp * lp
                })
                .sum()
        })
        .collect()
}

/// Matrix `D` over `ring`, whose variable `i` stands for `order[i]`.
pub fn matrix_d(ring: &Arc<PolyRing>, m: &[u32], ell: &[u32]) -> [Vec<Poly>; 2] {
    let n = m.len();
    let top = (0..n).map(|i| Polynomial::var_pow(ring, (i + 1) % n, m[(i + 1) % n])).collect();
    let bottom = (0..n).map(|i| Polynomial::var_pow(ring, i, ell[i])).collect();
    [top, bottom]
}

/// First generator of the defining ideal of `order` that is not in
/// `I_2(D)`, or `None` when the two ideals agree. The minors themselves are
/// homogeneous binomials, so they always lie in the defining ideal.
pub fn defining_ideal_gap(order: &[i64], m: &[u32], ell: &[u32]) -> Result<Option<Poly>, PolyError> {
    let weights: Vec<u64> = order.iter().map(|&a| a as u64).collect();
    let ring = PolyRing::standard(&weights);
    let minors = two_minors(&matrix_d(&ring, m, ell));
    debug_assert!(minors.iter().all(|f| f.is_homogeneous()));
    let gb = GroebnerBasis::compute(&ring, &minors)?;
    let toric = toric_ideal(order)?;
    Ok(toric.basis().iter().find(|g| !gb.contains(g)).cloned())
}

impl DeterminantalInstance {
    pub fn build(
        semigroup: &NumericalSemigroup,
        order: &[i64],
        m: &[u32],
        ell: &[u32],
    ) -> Result<Self, DeterminantalError> {
        let inst = Self::build_unvalidated(semigroup, order, m, ell)?;
        if let Some(w) = defining_ideal_gap(&inst.order, &inst.m, &inst.ell)? {
            return Err(DeterminantalError::IdealMismatch { witness: w.to_string() });
        }
        Ok(inst)
    }

    /// Shape and homogeneity checks only; the ideal equality is not tested.
    pub fn build_unvalidated(
        semigroup: &NumericalSemigroup,
        order: &[i64],
        m: &[u32],
        ell: &[u32],
    ) -> Result<Self, DeterminantalError> {
        let n = semigroup.embedding_dimension();
        if n < 3 {
            return Err(DeterminantalError::TooFewGenerators(n));
        }
        if order.len() != n || m.len() != n || ell.len() != n {
            return Err(DeterminantalError::LengthMismatch { expected: n });
        }
        if m.iter().chain(ell).any(|&x| x == 0) {
            return Err(DeterminantalError::NonPositiveExponent);
        }
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != semigroup.generators() {
            return Err(DeterminantalError::OrderMismatch(order.to_vec()));
        }
        let c = homogeneity_constant(order, m, ell)?;
        Ok(DeterminantalInstance {
            semigroup: Arc::new(semigroup.clone()),
            order: order.to_vec(),
            m: m.to_vec(),
            ell: ell.to_vec(),
            c,
        })
    }

    pub fn from_spec(spec: &DeterminantalSpec) -> Result<Self, DeterminantalError> {
        let h = NumericalSemigroup::new(&spec.generators)?;
        let order = spec.order.clone().unwrap_or_else(|| spec.generators.clone());
        Self::build(&h, &order, &spec.m, &spec.ell)
    }

    pub fn to_spec(&self) -> DeterminantalSpec {
        DeterminantalSpec {
            generators: self.semigroup.generators().to_vec(),
            order: Some(self.order.clone()),
            m: self.m.clone(),
            ell: self.ell.clone(),
        }
    }

    pub fn semigroup(&self) -> &Arc<NumericalSemigroup> {
        &self.semigroup
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[i64] {
        &self.order
    }

    pub fn m(&self) -> &[u32] {
        &self.m
    }

    pub fn ell(&self) -> &[u32] {
        &self.ell
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    /// Polynomial ring `X1..Xn` with `deg X_i = order[i]`.
    pub fn ring(&self) -> Arc<PolyRing> {
        let w: Vec<u64> = self.order.iter().map(|&a| a as u64).collect();
        PolyRing::standard(&w)
    }

    pub fn matrix(&self, ring: &Arc<PolyRing>) -> [Vec<Poly>; 2] {
        matrix_d(ring, &self.m, &self.ell)
    }

    pub fn minors(&self, ring: &Arc<PolyRing>) -> Vec<Poly> {
        two_minors(&self.matrix(ring))
    }

    pub fn validate_defining_ideal(&self) -> Result<bool, PolyError> {
        Ok(defining_ideal_gap(&self.order, &self.m, &self.ell)?.is_none())
    }

    /// The same ideal presented through a dihedral relabeling.
    pub fn transformed(&self, sym: Symmetry) -> DeterminantalInstance {
        let (order, m, ell) = apply_symmetry(sym, &self.order, &self.m, &self.ell);
        let c = homogeneity_constant(&order, &m, &ell).expect("symmetries preserve the form");
        DeterminantalInstance { semigroup: self.semigroup.clone(), order, m, ell, c }
    }

    pub fn classify_nearly_gorenstein(&self) -> NgClassification {
        for sym in Symmetry::all(self.n()) {
            let (_, m, ell) = apply_symmetry(sym, &self.order, &self.m, &self.ell);
            let case = if satisfies_case_a(&m) {
                Some(NgCase::CaseA)
            } else if satisfies_case_b(&m, &ell) {
                Some(NgCase::CaseB)
            } else {
                None
            };
            if case.is_some() {
                return NgClassification { is_ng: true, case, symmetry: Some(sym) };
            }
        }
        NgClassification { is_ng: false, case: None, symmetry: None }
    }

    pub fn classify_almost_gorenstein(&self) -> bool {
        self.almost_gorenstein_symmetry().is_some()
    }

    pub fn almost_gorenstein_symmetry(&self) -> Option<Symmetry> {
        Symmetry::all(self.n()).into_iter().find(|&sym| {
            let (_, m, _) = apply_symmetry(sym, &self.order, &self.m, &self.ell);
            satisfies_case_a(&m)
        })
    }

    /// Some window of `n-1` cyclically consecutive generators is an
    /// arithmetic progression. Reversal maps windows to reversed windows, so
    /// rotations suffice.
    pub fn arithmetic_progression_check(&self) -> bool {
        self.arithmetic_progression_window().is_some()
    }

    pub fn arithmetic_progression_window(&self) -> Option<Vec<i64>> {
        let n = self.n();
        (0..n).find_map(|s| {
            let w: Vec<i64> = (0..n - 1).map(|k| self.order[(s + k) % n]).collect();
            let d = w[1] - w[0];
            w.windows(2).all(|p| p[1] - p[0] == d).then_some(w)
        })
    }
}

/// Result of solving for one exponent pattern.
#[derive(Clone, Debug)]
pub struct SearchCandidate {
    pub m: Vec<u32>,
    pub ell: Vec<u32>,
    /// Generators in matrix order, when a positive integer solution exists.
    pub order: Option<Vec<i64>>,
    pub outcome: Result<DeterminantalInstance, DeterminantalError>,
}

/// Solves `m_[i+1] a_[i+1] - ℓ_i a_i = c` for a primitive positive vector.
/// The solution ray is spanned by `remark_degrees`, scaled by the sign of
/// `Πm - Πℓ`; only the primitive point can have gcd 1.
pub fn solve_exponents(m: &[u32], ell: &[u32]) -> Option<(Vec<i64>, i64)> {
    let pm: i128 = m.iter().map(|&x| x as i128).product();
    let pl: i128 = ell.iter().map(|&x| x as i128).product();
    if pm == pl {
        return None;
    }
    let d = remark_degrees(m, ell);
    let g = d.iter().fold(0u128, |acc, &x| acc.gcd(&x));
    let a: Vec<i64> = d.iter().map(|&x| (x / g) as i64).collect();
    let c = (pm - pl) / g as i128;
    Some((a, c as i64))
}

/// One candidate per `(m, ell)`, with the reason it failed if it did.
pub fn search_candidate(m: &[u32], ell: &[u32], bound: i64) -> SearchCandidate {
    let fail = |order: Option<Vec<i64>>, e: DeterminantalError| SearchCandidate {
        m: m.to_vec(),
        ell: ell.to_vec(),
        order,
        outcome: Err(e),
    };
    let n = m.len();
    if n < 3 {
        return fail(None, DeterminantalError::TooFewGenerators(n));
    }
    if ell.len() != n {
        return fail(None, DeterminantalError::LengthMismatch { expected: n });
    }
    if m.iter().chain(ell).any(|&x| x == 0) {
        return fail(None, DeterminantalError::NonPositiveExponent);
    }
    let Some((order, c)) = solve_exponents(m, ell) else {
        return fail(None, DeterminantalError::DegenerateExponents);
    };
    debug_assert_eq!(homogeneity_constant(&order, m, ell).ok(), Some(c));
    if order.iter().any(|&a| a > bound) {
        return fail(Some(order), DeterminantalError::BoundTooLarge(bound));
    }
    let outcome = NumericalSemigroup::new(&order)
        .map_err(DeterminantalError::from)
        .and_then(|h| DeterminantalInstance::build(&h, &order, m, ell));
    SearchCandidate { m: m.to_vec(), ell: ell.to_vec(), order: Some(order), outcome }
}

/// Validated instances for the exponent pattern `(m, ell)` with every
/// generator at most `bound`.
pub fn search_instances(
    m: &[u32],
    ell: &[u32],
    bound: i64,
) -> Result<Vec<DeterminantalInstance>, DeterminantalError> {
    if bound > MAX_SEARCH_BOUND {
        return Err(DeterminantalError::BoundTooLarge(bound));
    }
    Ok(search_candidate(m, ell, bound).outcome.into_iter().collect())
}

/// All exponent vectors of length `n` with entries in `1..=max`, in
/// lexicographic order.
pub fn exponent_tuples(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (1..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Every `(m, ell)` with entries `<= max_exp` for the given `n`, solved and
/// filtered in parallel; output order follows the exponent enumeration.
pub fn search_all(n: usize, max_exp: u32, bound: i64) -> Result<Vec<DeterminantalInstance>, DeterminantalError> {
    if bound > MAX_SEARCH_BOUND {
        return Err(DeterminantalError::BoundTooLarge(bound));
    }
    let tuples = exponent_tuples(n, max_exp);
    let pairs: Vec<(&Vec<u32>, &Vec<u32>)> =
        tuples.iter().flat_map(|m| tuples.iter().map(move |l| (m, l))).collect();
    let found: Vec<Option<DeterminantalInstance>> =
        pairs.par_iter().map(|(m, l)| search_candidate(m, l, bound).outcome.ok()).collect();
    Ok(found.into_iter().flatten().collect())
}

/// A determinantal presentation of `H` found by trying every ordering of the
/// generators, with exponents restricted to the theorem's two shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationHit {
    pub order: Vec<i64>,
    pub m: Vec<u32>,
    pub ell: Vec<u32>,
    pub case: NgCase,
}

/// Searches all `n!` orders (n <= 5) for a validated presentation in shape
/// (a) or (b) with free exponents at most `max_exp`.
pub fn full_permutation_scan(
    h: &NumericalSemigroup,
    max_exp: u32,
) -> Result<Option<PermutationHit>, DeterminantalError> {
    let n = h.embedding_dimension();
    if !(3..=5).contains(&n) {
        return Err(DeterminantalError::TooFewGenerators(n));
    }
    for order in permutations(h.generators()) {
        for (m, ell, case) in shaped_exponents(&order, max_exp) {
            if homogeneity_constant(&order, &m, &ell).is_ok()
                && defining_ideal_gap(&order, &m, &ell)?.is_none()
            {
                return Ok(Some(PermutationHit { order, m, ell, case }));
            }
        }
    }
    Ok(None)
}

fn shaped_exponents(order: &[i64], max_exp: u32) -> Vec<(Vec<u32>, Vec<u32>, NgCase)> {
    let n = order.len();
    let mut out = Vec::new();
    // Case (a): m all ones, ℓ free.
    for ell in exponent_tuples(n, max_exp) {
        out.push((vec![1; n], ell, NgCase::CaseA));
    }
    // Case (b): only m_1, ℓ_{n-1}, ℓ_n free.
    for m1 in 1..=max_exp {
        for l1 in 1..=max_exp {
            for l2 in 1..=max_exp {
                let mut m = vec![1; n];
                m[0] = m1;
                let mut ell = vec![1; n];
                ell[n - 2] = l1;
                ell[n - 1] = l2;
                out.push((m, ell, NgCase::CaseB));
            }
        }
    }
    out.retain(|(m, ell, _)| homogeneity_constant(order, m, ell).is_ok());
    out
}

fn permutations(v: &[i64]) -> Vec<Vec<i64>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relative_ideal::is_nearly_gorenstein_oracle;
    use proptest::prelude::*;

    fn h(g: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    #[test]
    fn three_four_five() {
        let inst = DeterminantalInstance::build(&h(&[3, 4, 5]), &[3, 4, 5], &[2, 1, 1], &[1, 1, 1]).unwrap();
        assert_eq!(inst.c(), 1);
        let ng = inst.classify_nearly_gorenstein();
        assert!(ng.is_ng);
        assert_eq!(ng.case, Some(NgCase::CaseB));
        assert_eq!(ng.symmetry, Some(Symmetry::IDENTITY));
        assert!(inst.classify_almost_gorenstein());
        assert_eq!(inst.almost_gorenstein_symmetry(), Some(Symmetry { shift: 0, reversed: true }));
        assert!(inst.arithmetic_progression_check());
        let r = inst.ring();
        let basis = GroebnerBasis::compute(&r, &inst.minors(&r)).unwrap();
        let f: Poly = crate::poly::parse_polynomial(&r, "X2^2 - X1*X3").unwrap();
        assert!(basis.contains(&f));
        let g: Poly = crate::poly::parse_polynomial(&r, "X2*X3 - X1^3").unwrap();
        assert!(basis.contains(&g));
    }

    #[test]
    fn seven_eight_nine_ten() {
        let inst =
            DeterminantalInstance::build(&h(&[7, 8, 9, 10]), &[7, 8, 9, 10], &[3, 1, 1, 1], &[1, 1, 1, 2])
                .unwrap();
        assert_eq!(inst.c(), 1);
        let ng = inst.classify_nearly_gorenstein();
        assert_eq!((ng.is_ng, ng.case), (true, Some(NgCase::CaseB)));
        assert!(!inst.classify_almost_gorenstein());
        assert_eq!(inst.arithmetic_progression_window(), Some(vec![7, 8, 9]));
        assert_eq!(inst.minors(&inst.ring()).len(), 6);
    }

    #[test]
    fn inhomogeneous_input_is_rejected() {
        let e = DeterminantalInstance::build(&h(&[3, 4, 5]), &[3, 4, 5], &[1, 1, 1], &[1, 1, 1]).unwrap_err();
        assert_eq!(e, DeterminantalError::InhomogeneousMatrix { index: 3, expected: 1, found: -2 });
    }

    #[test]
    fn homogeneous_but_wrong_exponents_report_a_witness() {
        // Doubling every exponent keeps c constant but the minors generate
        // a smaller ideal.
        let e = DeterminantalInstance::build(&h(&[3, 4, 5]), &[3, 4, 5], &[4, 2, 2], &[2, 2, 2]).unwrap_err();
        match e {
            DeterminantalError::IdealMismatch { witness } => assert!(!witness.is_empty()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn search_examples() {
        let a = search_instances(&[2, 1, 1], &[1, 1, 1], 50).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].order(), &[3, 4, 5]);
        let b = search_instances(&[3, 1, 1, 1], &[1, 1, 1, 2], 50).unwrap();
        assert_eq!(b[0].order(), &[7, 8, 9, 10]);
        assert!(search_instances(&[1, 1, 1], &[1, 1, 1], 50).unwrap().is_empty());
        assert!(matches!(search_instances(&[2, 1, 1], &[1, 1, 1], 501), Err(DeterminantalError::BoundTooLarge(_))));
    }

    #[test]
    fn remark_degrees_examples() {
        assert_eq!(remark_degrees(&[1, 1, 1, 1], &[1, 1, 1, 1]), vec![4, 4, 4, 4]);
        assert_eq!(remark_degrees(&[3, 1, 1, 1], &[1, 1, 1, 2])[0], 7);
    }

    #[test]
    fn reversal_maps_minors_to_minors() {
        // Symbolic check on the ideal of minors with independent exponents:
        // relabel the reversed instance's variables back and compare ideals.
        for (m, ell) in [
            (vec![2u32, 1, 3], vec![1u32, 2, 1]),
            (vec![1, 2, 1, 3], vec![2, 1, 1, 2]),
            (vec![2, 1, 1, 1, 2], vec![1, 3, 1, 2, 1]),
        ] {
            let n = m.len();
            let r = PolyRing::standard(&vec![1; n]);
            let ideal = GroebnerBasis::compute(&r, &two_minors(&matrix_d(&r, &m, &ell))).unwrap();
            for sym in Symmetry::all(n) {
                let idx: Vec<usize> = (0..n).collect();
                let (perm, m2, l2) = apply_symmetry(sym, &idx, &m, &ell);
                // Variable k of the transformed matrix is variable perm[k] of the original.
                let minors2 = two_minors(&matrix_d(&r, &m2, &l2));
                let back: Vec<Poly> = minors2.iter().map(|f| f.embed(&r, &perm)).collect();
                let ideal2 = GroebnerBasis::compute(&r, &back).unwrap();
                assert!(ideal.same_ideal(&ideal2), "{sym} on {m:?} {ell:?}");
            }
        }
    }

    #[test]
    fn full_permutation_scan_finds_shapes() {
        let hit = full_permutation_scan(&h(&[7, 8, 9, 10]), 3).unwrap().unwrap();
        assert_eq!(hit.case, NgCase::CaseB);
        assert!(full_permutation_scan(&h(&[3, 4, 5]), 2).unwrap().is_some());
    }

    #[test]
    fn n3_criterion_matches_oracle() {
        for inst in search_all(3, 3, 150).unwrap() {
            let expected = (0..3).all(|i| inst.m()[i].min(inst.ell()[i]) == 1);
            assert_eq!(inst.classify_nearly_gorenstein().is_ng, expected, "{:?}", inst.to_spec());
            assert_eq!(is_nearly_gorenstein_oracle(inst.semigroup()), expected);
        }
    }

    proptest! {
        #[test]
        fn remark_degrees_solve_the_system(
            m in prop::collection::vec(1u32..=4, 3..7),
            seed in prop::collection::vec(1u32..=4, 7),
        ) {
            let n = m.len();
            let ell = &seed[..n];
            let d = remark_degrees(&m, ell);
            let pm: i128 = m.iter().map(|&x| x as i128).product();
            let pl: i128 = ell.iter().map(|&x| x as i128).product();
            for i in 0..n {
                let j = (i + 1) % n;
                prop_assert_eq!(m[j] as i128 * d[j] as i128 - ell[i] as i128 * d[i] as i128, pm - pl);
            }
        }

        #[test]
        fn symmetries_preserve_homogeneity(
            m in prop::collection::vec(1u32..=3, 3..6),
            seed in prop::collection::vec(1u32..=3, 6),
        ) {
            let n = m.len();
            let ell = &seed[..n];
            if let Some((order, c)) = solve_exponents(&m, ell) {
                for sym in Symmetry::all(n) {
                    let (o, m2, l2) = apply_symmetry(sym, &order, &m, ell);
                    let expected = if sym.reversed { -c } else { c };
                    prop_assert_eq!(homogeneity_constant(&o, &m2, &l2).unwrap(), expected);
                }
            }
        }
    }
}
