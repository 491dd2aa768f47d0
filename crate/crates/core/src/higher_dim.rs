//! Higher-dimensional deformations `R^I_J`: the matrix `D` with `Y_i` added
//! to the top entries for `i ∈ I` and `Z_j` to the bottom entries for
//! `j ∈ J`, graded by `deg X_i = a_i`, `deg Y_i = m_i a_i`,
//! `deg Z_j = ℓ_j a_j`.
//!
//! Indices in `I`, `J` and in reported clauses are 1-based and refer to the
//! base instance's own order.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::determinantal::{
    DeterminantalError, DeterminantalInstance, DeterminantalSpec, NgCase, Symmetry,
};
use crate::poly::{GroebnerBasis, PolyError, PolyRing, Polynomial};
use crate::Poly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HigherDimError {
    #[error("index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("exponents m={m:?}, ell={ell:?} match neither hypothesis block")]
    UnsupportedBaseCase { m: Vec<u32>, ell: Vec<u32> },
    #[error("trace by matrix entries needs n = 3, got {0}")]
    RequiresThreeGenerators(usize),
    #[error("{0} is not nearly Gorenstein, so there is no witness")]
    NotNearlyGorenstein(String),
    #[error("no tabulated witness rows for {0}")]
    NoTabulatedWitness(String),
    #[error("row {row}, column {column}: f·M reduces to {normal_form}")]
    WitnessFailed { row: usize, column: usize, normal_form: String },
    #[error("row entries do not generate {variable} modulo I_2(D)")]
    CoverageFailed { variable: String },
    #[error(transparent)]
    Base(#[from] DeterminantalError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseCase {
    /// `m_1 = … = m_n = 1`.
    AllOnes,
    /// `m_2 = … = m_n = ℓ_1 = … = ℓ_{n-2} = 1`, `m_1 >= 2`, and for
    /// `n >= 4` also `ℓ_{n-1} >= 2` or `ℓ_n >= 2`.
    TailCase,
    Other,
}

impl BaseCase {
    pub fn of(m: &[u32], ell: &[u32]) -> BaseCase {
        let n = m.len();
        if m.iter().all(|&x| x == 1) {
            return BaseCase::AllOnes;
        }
        let shape = m[0] >= 2 && m[1..].iter().all(|&x| x == 1) && ell[..n - 2].iter().all(|&x| x == 1);
        let tail = n == 3 || ell[n - 2] >= 2 || ell[n - 1] >= 2;
        if shape && tail {
            BaseCase::TailCase
        } else {
            BaseCase::Other
        }
    }
}

/// Statement clause that decided a classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Clause {
    /// `I = J = ∅`: the one-dimensional classification, with its case.
    Main(Option<NgCase>),
    N3Agl,
    N3NonAgl,
    NewAg(&'static str),
    NewNonAg(&'static str),
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clause::Main(Some(c)) => write!(f, "{c}"),
            Clause::Main(None) => write!(f, "main"),
            Clause::N3Agl => write!(f, "n3AGL"),
            Clause::N3NonAgl => write!(f, "n3nonAGL"),
            Clause::NewAg(s) => write!(f, "newAGcase({s})"),
            Clause::NewNonAg(s) => write!(f, "newnonAGcase({s})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HigherClassification {
    pub is_ng: bool,
    pub clause: Clause,
}

/// `{"generators":[...],"m":[...],"ell":[...],"I":[1],"J":[3]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HigherDimSpec {
    #[serde(flatten)]
    pub base: DeterminantalSpec,
    #[serde(rename = "I", default)]
    pub i: Vec<usize>,
    #[serde(rename = "J", default)]
    pub j: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct HigherMatrices {
    pub ring: Arc<PolyRing>,
    pub d: [Vec<Poly>; 2],
    pub m: Vec<Vec<Poly>>,
}

#[derive(Clone, Debug)]
pub struct WitnessSet {
    /// Row of the witness table used, in normalized indices.
    pub table_entry: &'static str,
    /// Cyclic relabeling: normalized index `k` is original index `[k + shift]`.
    pub shift: usize,
    pub rows: Vec<Vec<Poly>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub rows: usize,
    /// Entries of `f·M` reduced to zero.
    pub products_checked: usize,
    pub variables_covered: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HigherDimInstance {
    base: DeterminantalInstance,
    i_set: BTreeSet<usize>,
    j_set: BTreeSet<usize>,
    base_case: BaseCase,
}

impl HigherDimInstance {
    pub fn new(base: DeterminantalInstance, i: &[usize], j: &[usize]) -> Result<Self, HigherDimError> {
        let n = base.n();
        if let Some(&index) = i.iter().chain(j).find(|&&k| k == 0 || k > n) {
            return Err(HigherDimError::IndexOutOfRange { index, n });
        }
        let base_case = BaseCase::of(base.m(), base.ell());
        Ok(HigherDimInstance {
            base,
            i_set: i.iter().copied().collect(),
            j_set: j.iter().copied().collect(),
            base_case,
        })
    }

    pub fn from_spec(spec: &HigherDimSpec) -> Result<Self, HigherDimError> {
        Self::new(DeterminantalInstance::from_spec(&spec.base)?, &spec.i, &spec.j)
    }

    pub fn to_spec(&self) -> HigherDimSpec {
        HigherDimSpec {
            base: self.base.to_spec(),
            i: self.i_set.iter().copied().collect(),
            j: self.j_set.iter().copied().collect(),
        }
    }

    pub fn base(&self) -> &DeterminantalInstance {
        &self.base
    }

    pub fn i_set(&self) -> &BTreeSet<usize> {
        &self.i_set
    }

    pub fn j_set(&self) -> &BTreeSet<usize> {
        &self.j_set
    }

    pub fn p(&self) -> usize {
        self.i_set.len()
    }

    pub fn q(&self) -> usize {
        self.j_set.len()
    }

    pub fn base_case(&self) -> BaseCase {
        self.base_case
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// Krull dimension `p + q + 1`, taken as known rather than computed.
    pub fn dimension(&self) -> usize {
        self.p() + self.q() + 1
    }

    fn ell(&self, k: usize) -> u32 {
        self.base.ell()[(k - 1) % self.n()]
    }

    /// Variables `X1..Xn`, then `Y_i` for `i ∈ I`, then `Z_j` for `j ∈ J`.
    pub fn ring(&self) -> Arc<PolyRing> {
        let (a, m, l) = (self.base.order(), self.base.m(), self.base.ell());
        let mut names: Vec<String> = (1..=self.n()).map(|k| format!("X{k}")).collect();
        let mut weights: Vec<u64> = a.iter().map(|&x| x as u64).collect();
        for &i in &self.i_set {
            names.push(format!("Y{i}"));
            weights.push(m[i - 1] as u64 * a[i - 1] as u64);
        }
        for &j in &self.j_set {
            names.push(format!("Z{j}"));
            weights.push(l[j - 1] as u64 * a[j - 1] as u64);
        }
        PolyRing::new(names, weights)
    }

    fn y_index(&self, i: usize) -> Option<usize> {
        self.i_set.iter().position(|&k| k == i).map(|p| self.n() + p)
    }

    fn z_index(&self, j: usize) -> Option<usize> {
        self.j_set.iter().position(|&k| k == j).map(|p| self.n() + self.p() + p)
    }

    /// `V_r = X_r^{m_r} (+ Y_r)`, 1-based `r`.
    pub fn v(&self, ring: &Arc<PolyRing>, r: usize) -> Poly {
        let x = Polynomial::var_pow(ring, r - 1, self.base.m()[r - 1]);
        match self.y_index(r) {
            Some(y) => &x + &Polynomial::var(ring, y),
            None => x,
        }
    }

    /// `U_r = X_r^{ℓ_r} (+ Z_r)`, 1-based `r`.
    pub fn u(&self, ring: &Arc<PolyRing>, r: usize) -> Poly {
        let x = Polynomial::var_pow(ring, r - 1, self.base.ell()[r - 1]);
        match self.z_index(r) {
            Some(z) => &x + &Polynomial::var(ring, z),
            None => x,
        }
    }

    /// Column `i` is `(V_[i+1], U_i)`.
    pub fn matrix_d(&self, ring: &Arc<PolyRing>) -> [Vec<Poly>; 2] {
        let n = self.n();
        let top = (1..=n).map(|i| self.v(ring, i % n + 1)).collect();
        let bottom = (1..=n).map(|i| self.u(ring, i)).collect();
        [top, bottom]
    }

    /// `(n-1) × n(n-2)`: column `(j-1)n + i` has `V_[i+1]` in row `j` and
    /// `-U_i` in row `j+1`.
    pub fn matrix_m(&self, ring: &Arc<PolyRing>) -> Vec<Vec<Poly>> {
        let n = self.n();
        let [top, bottom] = self.matrix_d(ring);
        let mut mat = vec![vec![Polynomial::zero(ring); n * (n - 2)]; n - 1];
        for j in 0..n - 2 {
            for i in 0..n {
                mat[j][j * n + i] = top[i].clone();
                mat[j + 1][j * n + i] = -&bottom[i];
            }
        }
        mat
    }

    pub fn build_matrices(&self) -> HigherMatrices {
        let ring = self.ring();
        HigherMatrices { d: self.matrix_d(&ring), m: self.matrix_m(&ring), ring }
    }

    /// Nearly Gorenstein decision from the classification statements, in
    /// the instance's own order.
    pub fn classify(&self) -> Result<HigherClassification, HigherDimError> {
        let n = self.n();
        let (p, q) = (self.p(), self.q());
        let ng = |is_ng, clause| Ok(HigherClassification { is_ng, clause });
        if p == 0 && q == 0 {
            let c = self.base.classify_nearly_gorenstein();
            return ng(c.is_ng, Clause::Main(c.case));
        }
        let ell_one = |k: usize| self.ell(k) == 1;
        let disjoint = self.i_set.is_disjoint(&self.j_set);
        let first = |s: &BTreeSet<usize>| *s.iter().next().unwrap();
        match self.base_case {
            BaseCase::Other => Err(HigherDimError::UnsupportedBaseCase {
                m: self.base.m().to_vec(),
                ell: self.base.ell().to_vec(),
            }),
            BaseCase::AllOnes if n == 3 => {
                ng(disjoint && self.i_set.iter().all(|&i| ell_one(i)), Clause::N3Agl)
            }
            BaseCase::TailCase if n == 3 => ng(
                disjoint && !self.j_set.contains(&1) && self.i_set.iter().all(|&i| ell_one(i)),
                Clause::N3NonAgl,
            ),
            BaseCase::AllOnes => match (p, q) {
                (1, 0) => {
                    let i = first(&self.i_set);
                    ng((i..=i + n - 3).all(ell_one), Clause::NewAg("1a"))
                }
                (0, 1) => {
                    let i = first(&self.j_set);
                    ng((i + 1..=i + n - 3).all(ell_one), Clause::NewAg("1b"))
                }
                (0, 2) => {
                    let v: Vec<usize> = self.j_set.iter().copied().collect();
                    let (i, j) = (v[0], v[1]);
                    let pair = matches!((i, j), (1, 3) | (2, 4));
                    ng(n == 4 && pair && ell_one(i + 1) && ell_one(j + 1), Clause::NewAg("2a"))
                }
                (1, 1) => {
                    let (i, j) = (first(&self.i_set), first(&self.j_set));
                    let pair = matches!((i, j), (1, 3) | (2, 4) | (3, 1) | (4, 2));
                    ng(
                        n == 4 && pair && ell_one(i) && ell_one(i + 1) && ell_one(j + 1),
                        Clause::NewAg("2b"),
                    )
                }
                (2, 0) => ng(false, Clause::NewAg("2c")),
                _ => ng(false, Clause::NewAg("3")),
            },
            BaseCase::TailCase => match (p, q) {
                (1, 0) => {
                    let i = first(&self.i_set);
                    ng(i == 1 || (i == n && ell_one(n)), Clause::NewNonAg("1a"))
                }
                (0, 1) => {
                    let j = first(&self.j_set);
                    ng(j == n || (j == n - 1 && ell_one(n)), Clause::NewNonAg("1b"))
                }
                (2, 0) | (0, 2) => ng(false, Clause::NewNonAg("2a")),
                (1, 1) => {
                    let (i, j) = (first(&self.i_set), first(&self.j_set));
                    ng(n == 4 && i == 1 && j == 3 && ell_one(4), Clause::NewNonAg("2b"))
                }
                _ => ng(false, Clause::NewNonAg("3")),
            },
        }
    }

    /// The same ring presented through a dihedral relabeling of the base.
    /// Reversal swaps the rows of `D`, so `Y` and `Z` trade places.
    pub fn transformed(&self, sym: Symmetry) -> HigherDimInstance {
        let n = self.n();
        let (mut i_new, mut j_new) = (self.i_set.clone(), self.j_set.clone());
        if sym.reversed {
            i_new = self.j_set.iter().map(|&k| n + 1 - k).collect();
            j_new = self.i_set.iter().map(|&k| n + 1 - k).collect();
        }
        let rot = |s: BTreeSet<usize>| s.into_iter().map(|k| (k - 1 + n - sym.shift % n) % n + 1).collect();
        let base = self.base.transformed(sym);
        let base_case = BaseCase::of(base.m(), base.ell());
        HigherDimInstance { base, i_set: rot(i_new), j_set: rot(j_new), base_case }
    }

    /// First dihedral relabeling under which the statements apply, with its
    /// classification.
    pub fn classify_dihedral(&self) -> Result<(Symmetry, HigherClassification), HigherDimError> {
        let mut last = None;
        for sym in Symmetry::all(self.n()) {
            match self.transformed(sym).classify() {
                Ok(c) => return Ok((sym, c)),
                Err(e) => last = Some(e),
            }
        }
        Err(last.expect("symmetry group is nonempty"))
    }

    /// Witness rows `f` with `f·M = 0` over `R^I_J`, written in this
    /// instance's variables.
    pub fn witness_rows(&self) -> Result<WitnessSet, HigherDimError> {
        let cls = self.classify()?;
        if !cls.is_ng {
            return Err(HigherDimError::NotNearlyGorenstein(cls.clause.to_string()));
        }
        self.table_rows()
    }

    /// The witness table's rows for the shape of `(I, J)` alone, without
    /// checking the exponent conditions. On an instance that is not nearly
    /// Gorenstein these must fail [`Self::check_rows`].
    pub fn table_rows(&self) -> Result<WitnessSet, HigherDimError> {
        let n = self.n();
        let (p, q) = (self.p(), self.q());
        let none = || {
            Err(HigherDimError::NoTabulatedWitness(format!(
                "{:?} with I={:?}, J={:?}",
                self.base_case, self.i_set, self.j_set
            )))
        };
        if n == 3 || p + q == 0 || p + q > 2 {
            return none();
        }
        let first = |s: &BTreeSet<usize>| *s.iter().next().unwrap();
        let shape_ok = match (self.base_case, p, q) {
            (BaseCase::AllOnes, 1, 0) | (BaseCase::AllOnes, 0, 1) => true,
            (BaseCase::AllOnes, 0, 2) => {
                let v: Vec<usize> = self.j_set.iter().copied().collect();
                n == 4 && v[1] == v[0] + 2
            }
            (BaseCase::AllOnes, 1, 1) => n == 4 && first(&self.j_set) == (first(&self.i_set) + 1) % n + 1,
            (BaseCase::TailCase, 1, 0) => matches!(first(&self.i_set), i if i == 1 || i == n),
            (BaseCase::TailCase, 0, 1) => matches!(first(&self.j_set), j if j == n || j == n - 1),
            (BaseCase::TailCase, 1, 1) => n == 4 && first(&self.i_set) == 1 && first(&self.j_set) == 3,
            _ => false,
        };
        if !shape_ok {
            return none();
        }
        let ring = self.ring();
        let shift = match self.base_case {
            BaseCase::AllOnes => self.i_set.iter().chain(&self.j_set).next().unwrap() - 1,
            _ => 0,
        };
        let orig = |k: usize| (k - 1 + shift) % n + 1;
        let x = |k: usize| Polynomial::var(&ring, orig(k) - 1);
        let xp = |k: usize, e: u32| Polynomial::var_pow(&ring, orig(k) - 1, e);
        let y = |k: usize| Polynomial::var(&ring, self.y_index(orig(k)).expect("Y in ring"));
        let z = |k: usize| Polynomial::var(&ring, self.z_index(orig(k)).expect("Z in ring"));
        let l = |k: usize| self.ell(orig(k));
        let m1 = self.base.m()[orig(1) - 1];

        let f1 = || (1..n).map(&x).collect::<Vec<_>>();
        let f2 = |last: Poly| {
            let lift = xp(n - 1, l(n - 1) - 1);
            let mut row: Vec<Poly> = (1..=n - 2).map(|k| &x(k + 1) * &lift).collect();
            row.push(last);
            row
        };
        let f3 = |last: Poly| {
            let lift = &xp(n - 1, l(n - 1) - 1) * &xp(n, l(n) - 1);
            let mut row: Vec<Poly> = (1..=n - 3).map(|k| &x(k + 2) * &lift).collect();
            row.push(xp(n, l(n)));
            row.push(last);
            row
        };
        let tail = |head: Vec<Poly>, upto: usize| {
            let mut row = head;
            row.push(xp(1, m1));
            let lead = xp(1, m1 - 1);
            row.extend((2..=upto).map(|k| &lead * &x(k)));
            row
        };

        let (p, q) = (self.p(), self.q());
        let (table_entry, rows) = match (self.base_case, p, q) {
            (BaseCase::AllOnes, 1, 0) => ("AGcase(1), i=1", vec![f1(), f2(x(n)), f3(&x(1) + &y(1))]),
            (BaseCase::AllOnes, 0, 1) => {
                let mut g1 = f1();
                g1[0] = &xp(1, l(1)) + &z(1);
                ("AGcase(2), i=1", vec![g1, f2(x(n)), f3(x(1))])
            }
            (BaseCase::AllOnes, 0, 2) => (
                "AGcase(3), (i,j)=(1,3)",
                vec![vec![&xp(1, l(1)) + &z(1), x(2), x(3)], vec![&xp(3, l(3)) + &z(3), x(4), x(1)]],
            ),
            (BaseCase::AllOnes, 1, 1) => (
                "AGcase(4), (i,j)=(1,3)",
                vec![f1(), vec![&xp(3, l(3)) + &z(3), x(4), &x(1) + &y(1)]],
            ),
            (BaseCase::TailCase, 1, 0) if self.i_set.contains(&1) => {
                ("nonAGcase(1), i=1", vec![f1(), f2(x(n)), f3(&xp(1, m1) + &y(1))])
            }
            (BaseCase::TailCase, 1, 0) => {
                ("nonAGcase(1), i=n", vec![f1(), f2(&x(n) + &y(n)), tail(vec![x(n)], n - 2)])
            }
            (BaseCase::TailCase, 0, 1) if self.j_set.contains(&n) => (
                "nonAGcase(2), i=n",
                vec![f1(), f2(x(n)), tail(vec![&xp(n, l(n)) + &z(n)], n - 2)],
            ),
            (BaseCase::TailCase, 0, 1) => (
                "nonAGcase(2), i=n-1",
                vec![f1(), tail(vec![&xp(n - 1, l(n - 1)) + &z(n - 1), x(n)], n - 3)],
            ),
            (BaseCase::TailCase, 1, 1) => (
                "nonAGcase(4)",
                vec![f1(), vec![&xp(3, l(3)) + &z(3), x(4), &xp(1, m1) + &y(1)]],
            ),
            _ => return none(),
        };
        debug_assert!(rows.iter().all(|r| r.len() == n - 1));
        Ok(WitnessSet { table_entry, shift, rows })
    }

    /// Checks that every entry of `f·M` is zero modulo `I_2(D)` and that the
    /// entries of all rows generate every variable modulo `I_2(D)`.
    pub fn check_rows(&self, rows: &[Vec<Poly>]) -> Result<WitnessReport, HigherDimError> {
        let HigherMatrices { ring, d, m } = self.build_matrices();
        let minors = crate::poly::two_minors(&d);
        let gb = GroebnerBasis::compute(&ring, &minors)?;
        let mut checked = 0;
        for (r, f) in rows.iter().enumerate() {
            assert_eq!(f.len(), m.len(), "row length must match M");
            for col in 0..m[0].len() {
                let mut s = Polynomial::zero(&ring);
                for (fk, mk) in f.iter().zip(&m) {
                    if !mk[col].is_zero() {
                        s = &s + &(fk * &mk[col]);
                    }
                }
                let nf = gb.normal_form(&s);
                if !nf.is_zero() {
                    return Err(HigherDimError::WitnessFailed {
                        row: r + 1,
                        column: col + 1,
                        normal_form: nf.to_string(),
                    });
                }
                checked += 1;
            }
        }
        let mut gens = minors;
        gens.extend(rows.iter().flatten().cloned());
        let cover = GroebnerBasis::compute(&ring, &gens)?;
        for v in 0..ring.nvars() {
            if !cover.contains(&Polynomial::var(&ring, v)) {
                return Err(HigherDimError::CoverageFailed { variable: ring.names()[v].clone() });
            }
        }
        Ok(WitnessReport { rows: rows.len(), products_checked: checked, variables_covered: ring.nvars() })
    }

    pub fn verify_witness(&self) -> Result<WitnessReport, HigherDimError> {
        let w = self.witness_rows()?;
        self.check_rows(&w.rows)
    }

    /// Entries of `N^I_J` for `n = 3`; they generate the canonical trace.
    pub fn trace_n3(&self) -> Result<Vec<Poly>, HigherDimError> {
        if self.n() != 3 {
            return Err(HigherDimError::RequiresThreeGenerators(self.n()));
        }
        let ring = self.ring();
        let [top, bottom] = self.matrix_d(&ring);
        Ok(top.into_iter().chain(bottom).collect())
    }

    /// Every variable lies in the ideal generated by [`Self::trace_n3`].
    pub fn trace_n3_is_ng(&self) -> Result<bool, HigherDimError> {
        let entries = self.trace_n3()?;
        let ring = self.ring();
        let gb = GroebnerBasis::compute(&ring, &entries)?;
        Ok((0..ring.nvars()).all(|v| gb.contains(&Polynomial::var(&ring, v))))
    }
}

/// All pairs `(I, J)` of subsets of `{1..n}`.
pub fn all_index_pairs(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let subsets: Vec<Vec<usize>> =
        (0u32..1 << n).map(|mask| (1..=n).filter(|&k| mask >> (k - 1) & 1 == 1).collect()).collect();
    let mut out = Vec::with_capacity(subsets.len() * subsets.len());
    for i in &subsets {
        for j in &subsets {
            out.push((i.clone(), j.clone()));
        }
    }
    out
}

/// Largest dimension a nearly Gorenstein `R^I_J` can have over an
/// `n`-generated base.
pub fn dimension_cap(n: usize) -> usize {
    match n {
        3 => 4,
        4 => 3,
        _ => 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::determinantal::search_candidate;
    use crate::poly::parse_polynomial;

    fn base(m: &[u32], ell: &[u32]) -> DeterminantalInstance {
        search_candidate(m, ell, 200).outcome.unwrap()
    }

    fn hd(m: &[u32], ell: &[u32], i: &[usize], j: &[usize]) -> HigherDimInstance {
        HigherDimInstance::new(base(m, ell), i, j).unwrap()
    }

    #[test]
    fn base_cases() {
        assert_eq!(BaseCase::of(&[1, 1, 1, 1], &[1, 1, 1, 2]), BaseCase::AllOnes);
        assert_eq!(BaseCase::of(&[3, 1, 1, 1], &[1, 1, 1, 2]), BaseCase::TailCase);
        assert_eq!(BaseCase::of(&[3, 1, 1, 1], &[1, 1, 1, 1]), BaseCase::Other);
        assert_eq!(BaseCase::of(&[2, 1, 1], &[1, 1, 1]), BaseCase::TailCase);
        assert_eq!(BaseCase::of(&[1, 2, 1, 1], &[1, 1, 1, 2]), BaseCase::Other);
    }

    #[test]
    fn dimension_counts() {
        assert_eq!(hd(&[1, 1, 1, 1], &[1, 1, 1, 2], &[], &[]).dimension(), 1);
        assert_eq!(hd(&[3, 1, 1, 1], &[1, 1, 2, 1], &[1], &[3]).dimension(), 3);
        assert_eq!(hd(&[1, 1, 1, 1], &[2, 1, 1, 1], &[1, 2, 3, 4], &[1]).dimension(), 6);
    }

    #[test]
    fn rejects_bad_indices() {
        let b = base(&[1, 1, 1, 1], &[1, 1, 1, 2]);
        assert_eq!(
            HigherDimInstance::new(b.clone(), &[5], &[]).unwrap_err(),
            HigherDimError::IndexOutOfRange { index: 5, n: 4 }
        );
        assert!(HigherDimInstance::new(b, &[], &[0]).is_err());
    }

    #[test]
    fn matrix_d_with_deformations() {
        let h = hd(&[3, 1, 1, 1], &[1, 1, 2, 1], &[1], &[3]);
        let mats = h.build_matrices();
        let r = &mats.ring;
        let p = |s: &str| parse_polynomial::<crate::Rational>(r, s).unwrap();
        assert_eq!(mats.d[0], vec![p("X2"), p("X3"), p("X4"), p("X1^3 + Y1")]);
        assert_eq!(mats.d[1], vec![p("X1"), p("X2"), p("X3^2 + Z3"), p("X4")]);
    }

    #[test]
    fn matrix_m_shape_and_homogeneity() {
        let h = hd(&[1, 1, 1, 1, 1], &[1, 1, 1, 2, 3], &[2], &[4]);
        let mats = h.build_matrices();
        let n = 5;
        assert_eq!(mats.m.len(), n - 1);
        assert!(mats.m.iter().all(|row| row.len() == n * (n - 2)));
        let c = h.base().c();
        for col in 0..n {
            let top = mats.d[0][col].degree().unwrap() as i64;
            let bot = mats.d[1][col].degree().unwrap() as i64;
            assert!(mats.d[0][col].is_homogeneous() && mats.d[1][col].is_homogeneous());
            assert_eq!(top - bot, c);
        }
        for col in 0..n * (n - 2) {
            let nz: Vec<usize> = (0..n - 1).filter(|&r| !mats.m[r][col].is_zero()).collect();
            assert_eq!(nz, vec![col / n, col / n + 1]);
        }
    }

    #[test]
    fn empty_sets_give_base_matrices() {
        let h = hd(&[3, 1, 1, 1], &[1, 1, 1, 2], &[], &[]);
        let mats = h.build_matrices();
        assert_eq!(mats.d, h.base().matrix(&mats.ring));
        let c = h.classify().unwrap();
        assert_eq!(c.is_ng, h.base().classify_nearly_gorenstein().is_ng);
        assert_eq!(c.clause.to_string(), "main(b)");
    }

    #[test]
    fn classification_examples() {
        let c = hd(&[1, 1, 1, 1], &[2, 1, 3, 1], &[], &[1, 3]).classify().unwrap();
        assert!(c.is_ng);
        assert_eq!(c.clause.to_string(), "newAGcase(2a)");

        let c = hd(&[1, 1, 1, 1, 1], &[1, 1, 1, 1, 2], &[], &[1, 3]).classify().unwrap();
        assert!(!c.is_ng);

        let c = hd(&[3, 1, 1, 1], &[1, 1, 2, 1], &[1], &[3]).classify().unwrap();
        assert!(c.is_ng);
        assert_eq!(c.clause.to_string(), "newnonAGcase(2b)");

        let c = hd(&[3, 1, 1, 1], &[1, 1, 2, 1], &[1, 2], &[3]).classify().unwrap();
        assert_eq!((c.is_ng, c.clause.to_string()), (false, "newnonAGcase(3)".to_string()));
    }

    #[test]
    fn unsupported_base() {
        let b = base(&[2, 1, 1, 1], &[1, 2, 1, 2]);
        let err = HigherDimInstance::new(b, &[1], &[]).unwrap().classify().unwrap_err();
        assert!(matches!(err, HigherDimError::UnsupportedBaseCase { .. }));
    }

    #[test]
    fn n3_examples_both_ways() {
        for (m, ell, i, j, expect) in [
            (vec![1, 1, 1], vec![1, 2, 2], vec![1], vec![], true),
            (vec![1, 1, 1], vec![1, 2, 2], vec![1], vec![1], false),
            (vec![2, 1, 1], vec![1, 2, 2], vec![], vec![1], false),
            (vec![2, 1, 1], vec![1, 2, 2], vec![1], vec![2, 3], true),
            (vec![1, 1, 1], vec![2, 1, 3], vec![], vec![1, 2, 3], true),
        ] {
            let h = hd(&m, &ell, &i, &j);
            assert_eq!(h.classify().unwrap().is_ng, expect, "{m:?} {ell:?} {i:?} {j:?}");
            assert_eq!(h.trace_n3_is_ng().unwrap(), expect, "{m:?} {ell:?} {i:?} {j:?}");
        }
    }

    #[test]
    fn witness_ag1_rows_as_printed() {
        let h = hd(&[1, 1, 1, 1, 1], &[1, 1, 1, 2, 3], &[1], &[]);
        let w = h.witness_rows().unwrap();
        assert_eq!(w.table_entry, "AGcase(1), i=1");
        let r = h.ring();
        let p = |s: &str| parse_polynomial::<crate::Rational>(&r, s).unwrap();
        assert_eq!(w.rows[0], vec![p("X1"), p("X2"), p("X3"), p("X4")]);
        assert_eq!(w.rows[1], vec![p("X2*X4"), p("X3*X4"), p("X4^2"), p("X5")]);
        assert_eq!(w.rows[2], vec![p("X3*X4*X5^2"), p("X4^2*X5^2"), p("X5^3"), p("X1 + Y1")]);
        let rep = h.verify_witness().unwrap();
        assert_eq!(rep.products_checked, 3 * 15);
    }

    #[test]
    fn witness_table_rows() {
        let h = hd(&[3, 1, 1, 1, 1], &[1, 1, 1, 2, 2], &[], &[5]);
        let w = h.witness_rows().unwrap();
        let r = h.ring();
        let p = |s: &str| parse_polynomial::<crate::Rational>(&r, s).unwrap();
        assert_eq!(w.rows[2], vec![p("X5^2 + Z5"), p("X1^3"), p("X1^2*X2"), p("X1^2*X3")]);

        let h = hd(&[3, 1, 1, 1], &[1, 1, 2, 1], &[1], &[3]);
        let w = h.witness_rows().unwrap();
        let r = h.ring();
        let p = |s: &str| parse_polynomial::<crate::Rational>(&r, s).unwrap();
        assert_eq!(w.rows[1], vec![p("X3^2 + Z3"), p("X4"), p("X1^3 + Y1")]);
        assert!(h.verify_witness().is_ok());
    }

    #[test]
    fn relabeled_witness_uses_original_indices() {
        // J = {2, 4} is J = {1, 3} after shifting by one.
        let h = hd(&[1, 1, 1, 1], &[1, 2, 1, 3], &[], &[2, 4]);
        assert!(h.classify().unwrap().is_ng);
        let w = h.witness_rows().unwrap();
        assert_eq!(w.shift, 1);
        let r = h.ring();
        let p = |s: &str| parse_polynomial::<crate::Rational>(&r, s).unwrap();
        assert_eq!(w.rows[0], vec![p("X2^2 + Z2"), p("X3"), p("X4")]);
        assert!(h.verify_witness().is_ok());
    }

    #[test]
    fn verify_examples() {
        for ell in [[1, 1, 1, 2], [1, 1, 2, 1], [1, 1, 2, 2], [1, 1, 2, 3]] {
            assert!(hd(&[1, 1, 1, 1], &ell, &[1], &[]).verify_witness().is_ok());
        }
        assert!(hd(&[1, 1, 1, 1, 1], &[1, 1, 1, 3, 2], &[1], &[]).verify_witness().is_ok());
    }

    #[test]
    fn perturbed_witness_fails() {
        let h = hd(&[1, 1, 1, 1], &[1, 1, 1, 2], &[1], &[]);
        let mut w = h.witness_rows().unwrap();
        let r = h.ring();
        w.rows[1][0] = &w.rows[1][0] * &Polynomial::var(&r, 0);
        assert!(matches!(h.check_rows(&w.rows), Err(HigherDimError::WitnessFailed { row: 2, .. })));
    }

    #[test]
    fn missing_rows_fail_coverage() {
        let h = hd(&[1, 1, 1, 1], &[1, 1, 1, 2], &[1], &[]);
        let w = h.witness_rows().unwrap();
        assert!(matches!(h.check_rows(&w.rows[..1]), Err(HigherDimError::CoverageFailed { .. })));
    }

    #[test]
    fn no_witness_for_false_or_n3() {
        let h = hd(&[1, 1, 1, 1], &[1, 1, 2, 2], &[1, 2], &[]);
        assert!(matches!(h.witness_rows(), Err(HigherDimError::NotNearlyGorenstein(_))));
        let h = hd(&[1, 1, 1], &[1, 2, 2], &[1], &[]);
        assert!(matches!(h.witness_rows(), Err(HigherDimError::NoTabulatedWitness(_))));
    }

    #[test]
    fn almost_gorenstein_but_not_nearly() {
        for (n, ell) in [(3, vec![2, 1, 1]), (4, vec![1, 1, 1, 2]), (5, vec![1, 1, 1, 2, 1])] {
            let all: Vec<usize> = (1..=n).collect();
            let h = hd(&vec![1; n], &ell, &all, &[1]);
            assert!(h.base().classify_almost_gorenstein());
            assert_eq!(h.dimension(), n + 2);
            assert!(!h.classify().unwrap().is_ng);
        }
    }

    #[test]
    fn transformed_ring_is_the_same() {
        let h = hd(&[3, 1, 1, 1], &[1, 1, 2, 1], &[1], &[3]);
        let n = h.n();
        let ring = h.ring();
        let original = GroebnerBasis::compute(&ring, &crate::poly::two_minors(&h.matrix_d(&ring))).unwrap();
        let idx: Vec<usize> = (0..n).collect();
        for sym in Symmetry::all(n) {
            let t = h.transformed(sym);
            assert_eq!(t.dimension(), h.dimension());
            let (pos, _, _) = crate::determinantal::apply_symmetry(sym, &idx, h.base().m(), h.base().ell());
            let tr = t.ring();
            let map: Vec<usize> = tr
                .names()
                .iter()
                .map(|name| {
                    let k: usize = name[1..].parse().unwrap();
                    let o = pos[k - 1] + 1;
                    let kind = match (&name[..1], sym.reversed) {
                        ("X", _) => "X",
                        ("Y", false) | ("Z", true) => "Y",
                        _ => "Z",
                    };
                    ring.var_index(&format!("{kind}{o}")).unwrap()
                })
                .collect();
            let minors: Vec<Poly> =
                crate::poly::two_minors(&t.matrix_d(&tr)).iter().map(|f| f.embed(&ring, &map)).collect();
            let gb = GroebnerBasis::compute(&ring, &minors).unwrap();
            assert!(gb.same_ideal(&original), "{sym}");
        }
    }
}
