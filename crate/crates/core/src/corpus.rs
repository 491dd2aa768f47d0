//! Exhaustive property runs over every exponent pattern up to a cap.
//!
//! Per-instance checks run in parallel; results are merged in enumeration
//! order so reports are identical from run to run.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::determinantal::{
    exponent_tuples, search_candidate, DeterminantalError, DeterminantalInstance, DeterminantalSpec,
    MAX_SEARCH_BOUND,
};
use crate::higher_dim::{all_index_pairs, dimension_cap, BaseCase, HigherDimInstance};
use crate::poly::PolyError;
use crate::relative_ideal::{is_nearly_gorenstein_oracle, trace_canonical_oracle, RelativeIdeal};
use crate::trace_lambda::trace_canonical_lambda;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// Theorem, oracle and Λ-method agree on nearly Gorenstein.
    NgAgreement,
    /// Λ-method trace equals the oracle trace.
    TraceEquality,
    /// For n = 3 the trace is generated by the `m_i a_i` and `ℓ_i a_i`.
    HerzogN3,
    TypeInvariant,
    /// Almost Gorenstein classifier agrees with almost symmetry.
    AgAgreement,
    /// Nearly but not almost Gorenstein implies an arithmetic progression.
    ApCorollary,
    /// n = 3 deformations: classification agrees with the matrix-entry trace.
    HigherN3,
    HigherDimensionCap,
    HigherMonotonicity,
    HigherSpecialization,
    /// Classification is the same under every dihedral relabeling that
    /// lands in a hypothesis block.
    HigherDihedral,
    /// Tabulated rows verify exactly when classification says true.
    WitnessAgreement,
    /// Each true case has a minimal perturbation that classifies false.
    WitnessPerturbation,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Property::NgAgreement => "ng_agreement",
            Property::TraceEquality => "trace_equality",
            Property::HerzogN3 => "herzog_n3",
            Property::TypeInvariant => "type_invariant",
            Property::AgAgreement => "ag_agreement",
            Property::ApCorollary => "ap_corollary",
            Property::HigherN3 => "higher_n3",
            Property::HigherDimensionCap => "higher_dimension_cap",
            Property::HigherMonotonicity => "higher_monotonicity",
            Property::HigherSpecialization => "higher_specialization",
            Property::HigherDihedral => "higher_dihedral",
            Property::WitnessAgreement => "witness_agreement",
            Property::WitnessPerturbation => "witness_perturbation",
        };
        f.write_str(s)
    }
}

/// A failed property with enough data to rerun it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub property: Property,
    pub instance: DeterminantalSpec,
    #[serde(rename = "I", skip_serializing_if = "Option::is_none")]
    pub i: Option<Vec<usize>>,
    #[serde(rename = "J", skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<usize>>,
    pub detail: String,
}

/// A candidate that could not be decided within the resource limits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Overrun {
    pub m: Vec<u32>,
    pub ell: Vec<u32>,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusConfig {
    pub ns: Vec<usize>,
    pub max_exp: u32,
    pub bound: i64,
    /// Keep only this many exponent patterns, chosen by `seed`.
    pub sample: Option<usize>,
    pub seed: u64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { ns: vec![3, 4, 5], max_exp: 3, bound: 150, sample: None, seed: 0 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checked: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CorpusReport {
    pub candidates: usize,
    pub instances: usize,
    pub distinct_semigroups: usize,
    /// `(theorem, oracle, lambda)` nearly Gorenstein verdicts and counts.
    pub ng_table: Vec<((bool, bool, bool), usize)>,
    /// `(classifier, almost symmetric)` verdicts and counts.
    pub ag_table: Vec<((bool, bool), usize)>,
    pub tallies: BTreeMap<Property, Tally>,
    pub overruns: Vec<Overrun>,
    pub violations: Vec<Violation>,
}

impl CorpusReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn tally(&self, p: Property) -> Tally {
        self.tallies.get(&p).cloned().unwrap_or_default()
    }

    fn record(&mut self, p: Property, ok: bool, v: impl FnOnce() -> Violation) {
        let t = self.tallies.entry(p).or_default();
        t.checked += 1;
        if !ok {
            t.violations += 1;
            self.violations.push(v());
        }
    }

    fn merge(&mut self, other: CorpusReport) {
        for (p, t) in other.tallies {
            let e = self.tallies.entry(p).or_default();
            e.checked += t.checked;
            e.violations += t.violations;
        }
        self.violations.extend(other.violations);
        self.overruns.extend(other.overruns);
    }
}

/// Exponent patterns `(m, ell)` for each `n`, in enumeration order,
/// optionally subsampled.
pub fn candidate_patterns(cfg: &CorpusConfig) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut all = Vec::new();
    for &n in &cfg.ns {
        let tuples = exponent_tuples(n, cfg.max_exp);
        for m in &tuples {
            for l in &tuples {
                all.push((m.clone(), l.clone()));
            }
        }
    }
    match cfg.sample {
        Some(k) if k < all.len() => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut idx = sample(&mut rng, all.len(), k).into_vec();
            idx.sort_unstable();
            idx.into_iter().map(|i| all[i].clone()).collect()
        }
        _ => all,
    }
}

/// Validated instances and resource overruns for the configured patterns.
pub fn collect_instances(
    cfg: &CorpusConfig,
) -> Result<(usize, Vec<DeterminantalInstance>, Vec<Overrun>), DeterminantalError> {
    if cfg.bound > MAX_SEARCH_BOUND {
        return Err(DeterminantalError::BoundTooLarge(cfg.bound));
    }
    let patterns = candidate_patterns(cfg);
    let outcomes: Vec<_> = patterns.par_iter().map(|(m, l)| search_candidate(m, l, cfg.bound)).collect();
    let mut instances = Vec::new();
    let mut overruns = Vec::new();
    for c in outcomes {
        match c.outcome {
            Ok(d) => instances.push(d),
            Err(DeterminantalError::Poly(e @ PolyError::ResourceLimit(_))) => {
                overruns.push(Overrun { m: c.m, ell: c.ell, error: e.to_string() })
            }
            Err(_) => {}
        }
    }
    Ok((patterns.len(), instances, overruns))
}

fn violation(d: &DeterminantalInstance, p: Property, detail: String) -> Violation {
    Violation { property: p, instance: d.to_spec(), i: None, j: None, detail }
}

struct BaseVerdicts {
    ng: (bool, bool, bool),
    ag: (bool, bool),
    report: CorpusReport,
}

fn check_base(d: &DeterminantalInstance) -> BaseVerdicts {
    let h = d.semigroup();
    let mut r = CorpusReport::default();
    let theorem = d.classify_nearly_gorenstein().is_ng;
    let oracle = is_nearly_gorenstein_oracle(h);
    let lam = trace_canonical_lambda(d);
    let via_lambda = d.order().iter().all(|&a| lam.contains(a));
    r.record(Property::NgAgreement, theorem == oracle && oracle == via_lambda, || {
        violation(d, Property::NgAgreement, format!("theorem={theorem} oracle={oracle} lambda={via_lambda}"))
    });

    let tr = trace_canonical_oracle(h);
    r.record(Property::TraceEquality, lam == tr, || {
        violation(
            d,
            Property::TraceEquality,
            format!("lambda {:?} vs oracle {:?}", lam.generators(), tr.generators()),
        )
    });

    if d.n() == 3 {
        let gens: Vec<i64> = (0..3)
            .flat_map(|i| [d.m()[i] as i64 * d.order()[i], d.ell()[i] as i64 * d.order()[i]])
            .collect();
        let herzog = RelativeIdeal::from_generators(h, &gens).expect("positive generators");
        r.record(Property::HerzogN3, herzog == tr, || {
            violation(
                d,
                Property::HerzogN3,
                format!("{:?} vs oracle {:?}", herzog.generators(), tr.generators()),
            )
        });
    }

    let t = h.semigroup_type();
    r.record(Property::TypeInvariant, t == d.n() - 1, || {
        violation(d, Property::TypeInvariant, format!("type {t}"))
    });

    let ag = d.classify_almost_gorenstein();
    let sym = h.is_almost_symmetric();
    r.record(Property::AgAgreement, ag == sym, || {
        violation(d, Property::AgAgreement, format!("classifier={ag} almost_symmetric={sym}"))
    });

    if theorem && !ag {
        r.record(Property::ApCorollary, d.arithmetic_progression_check(), || {
            violation(d, Property::ApCorollary, "no arithmetic progression window".into())
        });
    }
    BaseVerdicts { ng: (theorem, oracle, via_lambda), ag: (ag, sym), report: r }
}

/// Properties of the one-dimensional rings over the configured corpus.
pub fn run_corpus(cfg: &CorpusConfig) -> Result<CorpusReport, DeterminantalError> {
    let (candidates, instances, overruns) = collect_instances(cfg)?;
    Ok(report_for(candidates, &instances, overruns))
}

pub fn report_for(candidates: usize, instances: &[DeterminantalInstance], overruns: Vec<Overrun>) -> CorpusReport {
    let verdicts: Vec<BaseVerdicts> = instances.par_iter().map(check_base).collect();
    let mut report = CorpusReport {
        candidates,
        instances: instances.len(),
        distinct_semigroups: distinct(instances),
        overruns,
        ..Default::default()
    };
    let mut ng: BTreeMap<(bool, bool, bool), usize> = BTreeMap::new();
    let mut ag: BTreeMap<(bool, bool), usize> = BTreeMap::new();
    for v in verdicts {
        *ng.entry(v.ng).or_default() += 1;
        *ag.entry(v.ag).or_default() += 1;
        report.merge(v.report);
    }
    report.ng_table = ng.into_iter().rev().collect();
    report.ag_table = ag.into_iter().rev().collect();
    report
}

fn distinct(instances: &[DeterminantalInstance]) -> usize {
    let mut g: Vec<&[i64]> = instances.iter().map(|d| d.semigroup().generators()).collect();
    g.sort_unstable();
    g.dedup();
    g.len()
}

fn hd_violation(h: &HigherDimInstance, p: Property, detail: String) -> Violation {
    Violation {
        property: p,
        instance: h.base().to_spec(),
        i: Some(h.i_set().iter().copied().collect()),
        j: Some(h.j_set().iter().copied().collect()),
        detail,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HigherCounts {
    pub classifiable: usize,
    pub nearly_gorenstein: usize,
    pub unsupported: usize,
}

fn check_higher(d: &DeterminantalInstance, dihedral: bool) -> (HigherCounts, CorpusReport) {
    let n = d.n();
    let mut r = CorpusReport::default();
    let mut counts = HigherCounts::default();
    let base_ng = d.classify_nearly_gorenstein().is_ng;
    for (i, j) in all_index_pairs(n) {
        let h = HigherDimInstance::new(d.clone(), &i, &j).expect("indices in range");
        if dihedral && !(i.is_empty() && j.is_empty()) {
            let verdicts: Vec<bool> = crate::determinantal::Symmetry::all(n)
                .into_iter()
                .filter_map(|s| h.transformed(s).classify().ok().map(|c| c.is_ng))
                .collect();
            if verdicts.len() > 1 {
                r.record(Property::HigherDihedral, verdicts.iter().all(|&v| v == verdicts[0]), || {
                    hd_violation(&h, Property::HigherDihedral, format!("{verdicts:?}"))
                });
            }
        }
        let Ok(c) = h.classify() else {
            counts.unsupported += 1;
            continue;
        };
        counts.classifiable += 1;
        if c.is_ng {
            counts.nearly_gorenstein += 1;
        }
        if i.is_empty() && j.is_empty() {
            r.record(Property::HigherSpecialization, c.is_ng == base_ng, || {
                hd_violation(&h, Property::HigherSpecialization, format!("{} vs base {base_ng}", c.is_ng))
            });
        }
        if n == 3 {
            let by_trace = h.trace_n3_is_ng();
            r.record(Property::HigherN3, by_trace.as_ref().ok() == Some(&c.is_ng), || {
                hd_violation(&h, Property::HigherN3, format!("{} says {}, trace says {by_trace:?}", c.clause, c.is_ng))
            });
        }
        if c.is_ng {
            let cap = dimension_cap(n);
            r.record(Property::HigherDimensionCap, h.dimension() <= cap, || {
                hd_violation(&h, Property::HigherDimensionCap, format!("dimension {} > {cap}", h.dimension()))
            });
            let drops = i
                .iter()
                .map(|k| (i.iter().copied().filter(|x| x != k).collect::<Vec<_>>(), j.clone()))
                .chain(j.iter().map(|k| (i.clone(), j.iter().copied().filter(|x| x != k).collect())));
            for (i2, j2) in drops {
                let smaller = HigherDimInstance::new(d.clone(), &i2, &j2).expect("indices in range");
                let ok = smaller.classify().map(|s| s.is_ng).unwrap_or(false);
                r.record(Property::HigherMonotonicity, ok, || {
                    hd_violation(&h, Property::HigherMonotonicity, format!("dropping to I={i2:?}, J={j2:?}"))
                });
            }
        }
    }
    (counts, r)
}

/// Classification properties of every `R^I_J` over the given bases.
pub fn run_higher(instances: &[DeterminantalInstance], dihedral: bool) -> (HigherCounts, CorpusReport) {
    let parts: Vec<_> = instances.par_iter().map(|d| check_higher(d, dihedral)).collect();
    let mut counts = HigherCounts::default();
    let mut report = CorpusReport { instances: instances.len(), ..Default::default() };
    for (c, r) in parts {
        counts.classifiable += c.classifiable;
        counts.nearly_gorenstein += c.nearly_gorenstein;
        counts.unsupported += c.unsupported;
        report.merge(r);
    }
    (counts, report)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WitnessCounts {
    pub bases: usize,
    pub tabulated: usize,
    pub verified: usize,
    /// Tabulated shapes that classify false and whose rows fail.
    pub rejected: usize,
    pub products_checked: usize,
}

/// Bases in the two hypothesis blocks with free exponents at most
/// `max_param`: all `ℓ` for `m = 1`, and `m_1, ℓ_{n-1}, ℓ_n` otherwise.
pub fn witness_bases(n: usize, max_param: u32, bound: i64) -> Vec<DeterminantalInstance> {
    let mut patterns: Vec<(Vec<u32>, Vec<u32>)> =
        exponent_tuples(n, max_param).into_iter().map(|l| (vec![1; n], l)).collect();
    for m1 in 2..=max_param {
        for a in 1..=max_param {
            for b in 1..=max_param {
                let mut m = vec![1; n];
                m[0] = m1;
                let mut l = vec![1; n];
                l[n - 2] = a;
                l[n - 1] = b;
                patterns.push((m, l));
            }
        }
    }
    let found: Vec<Option<DeterminantalInstance>> =
        patterns.par_iter().map(|(m, l)| search_candidate(m, l, bound).outcome.ok()).collect();
    found.into_iter().flatten().filter(|d| BaseCase::of(d.m(), d.ell()) != BaseCase::Other).collect()
}

fn perturbations(h: &HigherDimInstance, bound: i64) -> Vec<HigherDimInstance> {
    let n = h.n();
    let (i, j): (Vec<usize>, Vec<usize>) =
        (h.i_set().iter().copied().collect(), h.j_set().iter().copied().collect());
    let mut out = Vec::new();
    for k in 1..=n {
        if !h.i_set().contains(&k) {
            let mut i2 = i.clone();
            i2.push(k);
            out.push(HigherDimInstance::new(h.base().clone(), &i2, &j).unwrap());
        }
        if !h.j_set().contains(&k) {
            let mut j2 = j.clone();
            j2.push(k);
            out.push(HigherDimInstance::new(h.base().clone(), &i, &j2).unwrap());
        }
        let mut ell = h.base().ell().to_vec();
        ell[k - 1] += 1;
        if let Ok(b) = search_candidate(h.base().m(), &ell, bound).outcome {
            out.push(HigherDimInstance::new(b, &i, &j).unwrap());
        }
    }
    out
}

fn check_witnesses(d: &DeterminantalInstance, bound: i64) -> (WitnessCounts, CorpusReport) {
    let mut counts = WitnessCounts { bases: 1, ..Default::default() };
    let mut r = CorpusReport::default();
    for (i, j) in all_index_pairs(d.n()) {
        if i.len() + j.len() > 2 {
            continue;
        }
        let h = HigherDimInstance::new(d.clone(), &i, &j).unwrap();
        let Ok(c) = h.classify() else { continue };
        let Ok(w) = h.table_rows() else {
            if c.is_ng && !(i.is_empty() && j.is_empty()) && d.n() > 3 {
                r.record(Property::WitnessAgreement, false, || {
                    hd_violation(&h, Property::WitnessAgreement, "true case without table rows".into())
                });
            }
            continue;
        };
        counts.tabulated += 1;
        let outcome = h.check_rows(&w.rows);
        match &outcome {
            Ok(rep) => {
                counts.verified += 1;
                counts.products_checked += rep.products_checked;
            }
            Err(_) => counts.rejected += 1,
        }
        r.record(Property::WitnessAgreement, outcome.is_ok() == c.is_ng, || {
            hd_violation(
                &h,
                Property::WitnessAgreement,
                format!("{} says {}, rows give {:?}", c.clause, c.is_ng, outcome.err()),
            )
        });
        if c.is_ng {
            let falls = perturbations(&h, bound).iter().any(|p| matches!(p.classify(), Ok(c) if !c.is_ng));
            r.record(Property::WitnessPerturbation, falls, || {
                hd_violation(&h, Property::WitnessPerturbation, "no perturbation classifies false".into())
            });
        }
    }
    (counts, r)
}

/// Tabulated witness rows over all `(I, J)` with `|I| + |J| <= 2` on the
/// given bases.
pub fn run_witnesses(bases: &[DeterminantalInstance], bound: i64) -> (WitnessCounts, CorpusReport) {
    let parts: Vec<_> = bases.par_iter().map(|d| check_witnesses(d, bound)).collect();
    let mut counts = WitnessCounts::default();
    let mut report = CorpusReport { instances: bases.len(), ..Default::default() };
    for (c, r) in parts {
        counts.bases += c.bases;
        counts.tabulated += c.tabulated;
        counts.verified += c.verified;
        counts.rejected += c.rejected;
        counts.products_checked += c.products_checked;
        report.merge(r);
    }
    (counts, report)
}
