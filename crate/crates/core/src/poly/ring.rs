use std::cmp::Ordering;
use std::sync::Arc;

use super::monomial::Monomial;

/// One block of a block order. Monomials are compared first by weighted
/// degree over the block's variables, then reverse-lexicographically with
/// the last listed variable being the smallest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderBlock {
    pub vars: Vec<usize>,
    pub weights: Vec<u64>,
}

/// Block monomial order. The default order is a single block holding every
/// variable with the ring weights, i.e. weighted degree with a revlex
/// tie-break.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    pub blocks: Vec<OrderBlock>,
}

impl MonomialOrder {
    pub fn weighted_revlex(weights: &[u64]) -> Self {
        Self::weighted_revlex_with_last(weights, None)
    }

    /// Weighted revlex where `last` (if given) is moved to the end of the
    /// tie-break sequence, so it is the cheapest variable.
    pub fn weighted_revlex_with_last(weights: &[u64], last: Option<usize>) -> Self {
        let mut vars: Vec<usize> = (0..weights.len()).filter(|&v| Some(v) != last).collect();
        if let Some(l) = last {
            vars.push(l);
        }
        let w = vars.iter().map(|&v| weights[v]).collect();
        MonomialOrder { blocks: vec![OrderBlock { vars, weights: w }] }
    }

    /// Block order eliminating `elim` (compared first) and falling back to
    /// weighted revlex on the remaining variables.
    pub fn elimination(weights: &[u64], elim: &[usize]) -> Self {
        let first = OrderBlock {
            vars: elim.to_vec(),
            weights: elim.iter().map(|&v| weights[v]).collect(),
        };
        let rest: Vec<usize> = (0..weights.len()).filter(|v| !elim.contains(v)).collect();
        let second = OrderBlock { weights: rest.iter().map(|&v| weights[v]).collect(), vars: rest };
        MonomialOrder { blocks: vec![first, second] }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        for block in &self.blocks {
            let mut da = 0u64;
            let mut db = 0u64;
            for (&v, &w) in block.vars.iter().zip(&block.weights) {
                da += w * ea[v] as u64;
                db += w * eb[v] as u64;
            }
            match da.cmp(&db) {
                Ordering::Equal => {}
                o => return o,
            }
            for &v in block.vars.iter().rev() {
                match ea[v].cmp(&eb[v]) {
                    Ordering::Equal => {}
                    o => return o.reverse(),
                }
            }
        }
        Ordering::Equal
    }
}

/// Variable table, grading and monomial order shared by a family of
/// polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    names: Vec<String>,
    weights: Vec<u64>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(names: Vec<String>, weights: Vec<u64>) -> Arc<Self> {
        assert_eq!(names.len(), weights.len(), "one weight per variable");
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        let order = MonomialOrder::weighted_revlex(&weights);
        Arc::new(PolyRing { names, weights, order })
    }

    /// Ring on `X1..Xn` graded by `weights`.
    pub fn standard(weights: &[u64]) -> Arc<Self> {
        let names = (1..=weights.len()).map(|i| format!("X{i}")).collect();
        Self::new(names, weights.to_vec())
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        let mut seen = vec![false; self.nvars()];
        for b in &order.blocks {
            assert_eq!(b.vars.len(), b.weights.len());
            for &v in &b.vars {
                assert!(!seen[v], "variable listed twice in order");
                seen[v] = true;
            }
        }
        assert!(seen.iter().all(|&s| s), "order must mention every variable");
        Arc::new(PolyRing { names: self.names.clone(), weights: self.weights.clone(), order })
    }

    /// Same ring with extra variables appended (default weighted revlex).
    pub fn extend(&self, names: &[&str], weights: &[u64]) -> Arc<Self> {
        let mut n = self.names.clone();
        n.extend(names.iter().map(|s| s.to_string()));
        let mut w = self.weights.clone();
        w.extend_from_slice(weights);
        Self::new(n, w)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name).or_else(|| {
            let stripped: String = name.chars().filter(|&c| c != '_').collect();
            self.names.iter().position(|n| *n == stripped)
        })
    }

    pub fn degree(&self, m: &Monomial) -> u64 {
        m.exponents().iter().zip(&self.weights).map(|(&e, &w)| e as u64 * w).sum()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }

    /// True when both rings share variables and weights (orders may differ).
    pub fn same_variables(&self, other: &PolyRing) -> bool {
        self.names == other.names && self.weights == other.weights
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}
