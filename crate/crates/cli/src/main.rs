use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use semitrace::corpus::{self, CorpusConfig, CorpusReport, Violation};
use semitrace::determinantal::{
    full_permutation_scan, search_all, search_instances, DeterminantalError, MAX_SEARCH_BOUND,
};
use semitrace::higher_dim::HigherDimError;
use semitrace::relative_ideal::{is_nearly_gorenstein_oracle, trace_canonical_oracle, RelativeIdeal};
use semitrace::trace_lambda::{trace_canonical_lambda, trace_canonical_syzygy};
use semitrace::{
    DeterminantalInstance, DeterminantalSpec, Error, HigherDimInstance, HigherDimSpec, NumericalSemigroup,
    SemigroupSpec,
};

const EXIT_INPUT: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_UNSUPPORTED: u8 = 4;
const EXIT_VIOLATION: u8 = 5;

#[derive(Parser)]
#[command(name = "semitrace", version, about = "Canonical traces of determinantal numerical semigroup rings")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Oracle,
    Lambda,
    Syzygy,
    All,
}

#[derive(Args)]
struct MethodArgs {
    #[arg(long, value_enum, default_value_t = Method::All)]
    method: Method,
    /// Allow the kernel-over-quotient route (slow beyond n = 4).
    #[arg(long)]
    stretch_syzygy: bool,
}

impl MethodArgs {
    fn check(&self) -> Result<(), Failure> {
        if self.method == Method::Syzygy && !self.stretch_syzygy {
            return Err(Failure::input("--method syzygy requires --stretch-syzygy"));
        }
        Ok(())
    }

    fn wants(&self, m: Method) -> bool {
        match m {
            Method::Syzygy => self.stretch_syzygy && matches!(self.method, Method::Syzygy | Method::All),
            _ => self.method == m || self.method == Method::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a numerical semigroup: generators or a JSON source.
    Sgp {
        #[arg(required = true, allow_hyphen_values = true)]
        input: Vec<String>,
    },
    /// Nearly and almost Gorenstein classification of a determinantal instance.
    Classify {
        /// Path, inline JSON, or `-` for stdin.
        input: String,
        #[command(flatten)]
        method: MethodArgs,
        /// Also search every generator order for a presentation of either shape.
        #[arg(long)]
        full_perm: bool,
        #[arg(long, default_value_t = 3)]
        max_exp: u32,
    },
    /// Canonical trace ideal by each selected method.
    Trace {
        input: String,
        #[command(flatten)]
        method: MethodArgs,
    },
    /// Solve for instances from exponent vectors.
    Search {
        #[arg(long, value_delimiter = ',', requires = "ell")]
        m: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',', requires = "m")]
        ell: Option<Vec<u32>>,
        /// Enumerate all exponent vectors for this many generators instead.
        #[arg(long, conflicts_with = "m")]
        n: Option<usize>,
        #[arg(long, default_value_t = 3)]
        max_exp: u32,
        #[arg(long, default_value_t = 150)]
        bound: i64,
    },
    /// Classification of a deformation with index sets `I`, `J`.
    Higher {
        input: String,
        /// Try dihedral relabelings of the base when the given order falls
        /// outside both hypothesis blocks.
        #[arg(long)]
        dihedral: bool,
    },
    /// Exhaustive property run with agreement tables.
    Corpus {
        #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        max_exp: u32,
        #[arg(long, default_value_t = 150)]
        bound: i64,
        /// Check only this many exponent patterns, chosen by `--seed`.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also run the deformation checks.
        #[arg(long)]
        higher: bool,
        /// Also sweep the tabulated witness rows (n = 4, 5, parameters <= 4).
        #[arg(long)]
        witness: bool,
    },
    /// Check `I_H = I_2(D)`; with `I` or `J` present, also verify the witness rows.
    Verify { input: String },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Determinantal(d) => determinantal_code(d),
            Error::HigherDim(h) => higher_code(h),
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<DeterminantalError> for Failure {
    fn from(e: DeterminantalError) -> Self {
        Failure::from(Error::from(e))
    }
}

impl From<HigherDimError> for Failure {
    fn from(e: HigherDimError) -> Self {
        Failure::from(Error::from(e))
    }
}

fn determinantal_code(e: &DeterminantalError) -> u8 {
    match e {
        DeterminantalError::IdealMismatch { .. } | DeterminantalError::InhomogeneousMatrix { .. } => EXIT_MISMATCH,
        _ => EXIT_INPUT,
    }
}

fn higher_code(e: &HigherDimError) -> u8 {
    match e {
        HigherDimError::Base(d) => determinantal_code(d),
        HigherDimError::UnsupportedBaseCase { .. }
        | HigherDimError::NoTabulatedWitness(_)
        | HigherDimError::NotNearlyGorenstein(_) => EXIT_UNSUPPORTED,
        HigherDimError::WitnessFailed { .. } | HigherDimError::CoverageFailed { .. } => EXIT_VIOLATION,
        _ => EXIT_INPUT,
    }
}

/// Reads a path, inline JSON, or stdin for `-`.
fn read_source(src: &str) -> Result<String, Failure> {
    let trimmed = src.trim_start();
    if trimmed.starts_with('{') {
        return Ok(src.to_string());
    }
    if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(src).map_err(|e| Failure::input(format!("{src}: {e}")))
}

fn parse<T: serde::de::DeserializeOwned>(src: &str) -> Result<T, Failure> {
    serde_json::from_str(&read_source(src)?).map_err(|e| Failure::input(format!("invalid JSON: {e}")))
}

fn list(v: &[i64]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    s.join(", ")
}

fn list_u(v: &[u32]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    s.join(", ")
}

fn emit(format: Format, value: &Value, table: &str) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
        Format::Table => print!("{table}"),
    }
}

fn cmd_sgp(format: Format, input: &[String]) -> Result<(), Failure> {
    let gens: Result<Vec<i64>, _> = input.iter().map(|s| s.trim_matches(',').parse::<i64>()).collect();
    let spec = match gens {
        Ok(g) => SemigroupSpec { generators: g },
        Err(_) if input.len() == 1 => parse(&input[0])?,
        Err(_) => return Err(Failure::input("expected integers or a single JSON source")),
    };
    let h = NumericalSemigroup::from_spec(&spec).map_err(Error::from)?;
    let apery = h.apery_set(h.multiplicity()).expect("multiplicity is an element");
    let value = json!({
        "generators": h.generators(),
        "frobenius": h.frobenius(),
        "genus": h.genus(),
        "gaps": h.gaps(),
        "apery": apery,
        "pseudo_frobenius": h.pseudo_frobenius(),
        "type": h.semigroup_type(),
        "symmetric": h.is_symmetric(),
        "almost_symmetric": h.is_almost_symmetric(),
    });
    let table = format!(
        "H = <{}>\n  Frobenius        {}\n  genus            {}\n  gaps             {{{}}}\n  Apery({})         {{{}}}\n  pseudo-Frobenius {{{}}}\n  type             {}\n  symmetric        {}\n  almost symmetric {}\n",
        list(h.generators()),
        h.frobenius(),
        h.genus(),
        list(h.gaps()),
        h.multiplicity(),
        list(&apery),
        list(h.pseudo_frobenius()),
        h.semigroup_type(),
        h.is_symmetric(),
        h.is_almost_symmetric()
    );
    emit(format, &value, &table);
    Ok(())
}

fn load_instance(src: &str) -> Result<DeterminantalInstance, Failure> {
    let spec: DeterminantalSpec = parse(src)?;
    Ok(DeterminantalInstance::from_spec(&spec)?)
}

fn describe(d: &DeterminantalInstance) -> String {
    format!(
        "H = <{}>, order ({}), m ({}), ell ({}), c = {}",
        list(d.semigroup().generators()),
        list(d.order()),
        list_u(d.m()),
        list_u(d.ell()),
        d.c()
    )
}

fn cmd_classify(
    format: Format,
    src: &str,
    method: &MethodArgs,
    full_perm: bool,
    max_exp: u32,
) -> Result<(), Failure> {
    method.check()?;
    let d = load_instance(src)?;
    let h = d.semigroup();
    let cls = d.classify_nearly_gorenstein();
    let mut verdicts: Vec<(&str, bool)> = vec![("theorem", cls.is_ng)];
    if method.wants(Method::Oracle) {
        verdicts.push(("oracle", is_nearly_gorenstein_oracle(h)));
    }
    if method.wants(Method::Lambda) {
        let t = trace_canonical_lambda(&d);
        verdicts.push(("lambda", d.order().iter().all(|&a| t.contains(a))));
    }
    if method.wants(Method::Syzygy) {
        let t = trace_canonical_syzygy(&d).map_err(Error::from)?;
        verdicts.push(("syzygy", d.order().iter().all(|&a| t.contains(a))));
    }
    let agree = verdicts.iter().all(|&(_, v)| v == cls.is_ng);
    let ag = d.classify_almost_gorenstein();
    let ag_oracle = h.is_almost_symmetric();
    let perm = if full_perm { full_permutation_scan(h, max_exp)? } else { None };

    let value = json!({
        "instance": d.to_spec(),
        "defining_ideal_verified": true,
        "nearly_gorenstein": {
            "verdicts": verdicts.iter().map(|(k, v)| json!({"method": k, "is_ng": v})).collect::<Vec<_>>(),
            "agree": agree,
            "case": cls.case.map(|c| c.to_string()),
            "symmetry": cls.symmetry.map(|s| s.to_string()),
        },
        "almost_gorenstein": {"theorem": ag, "almost_symmetric": ag_oracle},
        "arithmetic_progression": d.arithmetic_progression_window(),
        "full_permutation": perm.as_ref().map(|p| json!({
            "order": p.order, "m": p.m, "ell": p.ell, "case": p.case.to_string()
        })),
    });
    let mut t = format!("{}\ndefining ideal: I_H = I_2(D) verified\nnearly Gorenstein:\n", describe(&d));
    for (k, v) in &verdicts {
        t += &format!("  {k:<8} {v}\n");
    }
    match (cls.case, cls.symmetry) {
        (Some(c), Some(s)) => t += &format!("  fired    {c} via {s}\n"),
        _ => t += "  fired    none\n",
    }
    t += &format!("almost Gorenstein: {ag} (almost symmetric: {ag_oracle})\n");
    if let Some(w) = d.arithmetic_progression_window() {
        t += &format!("arithmetic progression window: ({})\n", list(&w));
    }
    if full_perm {
        match &perm {
            Some(p) => {
                t += &format!(
                    "full permutation scan: order ({}), m ({}), ell ({}), {}\n",
                    list(&p.order),
                    list_u(&p.m),
                    list_u(&p.ell),
                    p.case
                )
            }
            None => t += "full permutation scan: no presentation of either shape\n",
        }
    }
    emit(format, &value, &t);
    if !agree || ag != ag_oracle {
        return Err(Failure { code: EXIT_VIOLATION, message: "classification methods disagree".into() });
    }
    Ok(())
}

fn cmd_trace(format: Format, src: &str, method: &MethodArgs) -> Result<(), Failure> {
    method.check()?;
    let d = load_instance(src)?;
    let mut traces: Vec<(&str, RelativeIdeal)> = Vec::new();
    if method.wants(Method::Oracle) {
        traces.push(("oracle", trace_canonical_oracle(d.semigroup())));
    }
    if method.wants(Method::Lambda) {
        traces.push(("lambda", trace_canonical_lambda(&d)));
    }
    if method.wants(Method::Syzygy) {
        traces.push(("syzygy", trace_canonical_syzygy(&d).map_err(Error::from)?));
    }
    let agree = traces.windows(2).all(|w| w[0].1 == w[1].1);
    let value = json!({
        "instance": d.to_spec(),
        "traces": traces.iter().map(|(k, t)| json!({"method": k, "generators": t.generators()})).collect::<Vec<_>>(),
        "agree": agree,
    });
    let mut t = format!("{}\n", describe(&d));
    for (k, tr) in &traces {
        t += &format!("  {k:<8} tr(K) = ({})\n", list(tr.generators()));
    }
    emit(format, &value, &t);
    if !agree {
        return Err(Failure { code: EXIT_VIOLATION, message: "trace methods disagree".into() });
    }
    Ok(())
}

fn cmd_search(
    format: Format,
    m: Option<Vec<u32>>,
    ell: Option<Vec<u32>>,
    n: Option<usize>,
    max_exp: u32,
    bound: i64,
) -> Result<(), Failure> {
    if bound <= 0 || bound > MAX_SEARCH_BOUND {
        return Err(Failure::input(format!("--bound must be in 1..={MAX_SEARCH_BOUND}")));
    }
    let found = match (m, ell, n) {
        (Some(m), Some(ell), _) => {
            if m.len() != ell.len() {
                return Err(Failure::input("--m and --ell must have equal length"));
            }
            search_instances(&m, &ell, bound)?
        }
        (_, _, Some(n)) => search_all(n, max_exp, bound)?,
        _ => return Err(Failure::input("give --m and --ell, or --n")),
    };
    let rows: Vec<Value> = found
        .iter()
        .map(|d| {
            let c = d.classify_nearly_gorenstein();
            json!({
                "instance": d.to_spec(),
                "c": d.c(),
                "nearly_gorenstein": c.is_ng,
                "case": c.case.map(|x| x.to_string()),
                "almost_gorenstein": d.classify_almost_gorenstein(),
            })
        })
        .collect();
    let mut t = String::from("order,m,ell,c,nearly_gorenstein,case,almost_gorenstein\n");
    for d in &found {
        let c = d.classify_nearly_gorenstein();
        t += &format!(
            "\"{}\",\"{}\",\"{}\",{},{},{},{}\n",
            list(d.order()),
            list_u(d.m()),
            list_u(d.ell()),
            d.c(),
            c.is_ng,
            c.case.map(|x| x.to_string()).unwrap_or_default(),
            d.classify_almost_gorenstein()
        );
    }
    emit(format, &Value::Array(rows), &t);
    Ok(())
}

fn cmd_higher(format: Format, src: &str, dihedral: bool) -> Result<(), Failure> {
    let spec: HigherDimSpec = parse(src)?;
    let h = HigherDimInstance::from_spec(&spec)?;
    let (sym, cls, target) = if dihedral {
        let (sym, cls) = h.classify_dihedral()?;
        (Some(sym), cls, h.transformed(sym))
    } else {
        (None, h.classify()?, h.clone())
    };
    let witness = if cls.is_ng && target.n() > 3 && target.p() + target.q() > 0 {
        let w = target.witness_rows()?;
        let rep = target.check_rows(&w.rows)?;
        Some((w, rep))
    } else {
        None
    };
    let n3 = if h.n() == 3 { Some(h.trace_n3_is_ng()?) } else { None };
    let value = json!({
        "instance": h.to_spec(),
        "base_case": format!("{:?}", h.base_case()),
        "symmetry": sym.map(|s| s.to_string()),
        "clause": cls.clause.to_string(),
        "is_ng": cls.is_ng,
        "dimension": h.dimension(),
        "witness": witness.as_ref().map(|(w, r)| json!({
            "table_entry": w.table_entry,
            "shift": w.shift,
            "rows": w.rows.iter().map(|row| row.iter().map(|p| p.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "report": r,
        })),
        "trace_n3_is_ng": n3,
    });
    let mut t = format!(
        "{}\nI = {:?}, J = {:?}, base case {:?}, dimension {}\n",
        describe(h.base()),
        h.i_set(),
        h.j_set(),
        h.base_case(),
        h.dimension()
    );
    if let Some(s) = sym {
        t += &format!("relabeled by {s}\n");
    }
    t += &format!("nearly Gorenstein: {} by {}\n", cls.is_ng, cls.clause);
    if let Some((w, r)) = &witness {
        t += &format!("witness rows ({}, shift {}):\n", w.table_entry, w.shift);
        for row in &w.rows {
            let s: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            t += &format!("  ({})\n", s.join(", "));
        }
        t += &format!(
            "verified: {} products reduce to 0, all {} variables in the trace\n",
            r.products_checked, r.variables_covered
        );
    }
    if let Some(v) = n3 {
        t += &format!("matrix-entry trace: nearly Gorenstein {v}\n");
    }
    emit(format, &value, &t);
    if n3.is_some_and(|v| v != cls.is_ng) {
        return Err(Failure { code: EXIT_VIOLATION, message: "classification disagrees with the trace".into() });
    }
    Ok(())
}

fn print_report(t: &mut String, title: &str, rep: &CorpusReport) {
    *t += &format!("{title}\n");
    for (p, tally) in &rep.tallies {
        *t += &format!("  {:<24} {:>8} checked {:>4} violations\n", p.to_string(), tally.checked, tally.violations);
    }
}

fn reproducer(v: &Violation) -> String {
    serde_json::to_string(v).expect("serializable")
}

#[allow(clippy::too_many_arguments)]
fn cmd_corpus(
    format: Format,
    ns: Vec<usize>,
    max_exp: u32,
    bound: i64,
    sample: Option<usize>,
    seed: u64,
    higher: bool,
    witness: bool,
) -> Result<(), Failure> {
    if ns.iter().any(|&n| !(3..=6).contains(&n)) || max_exp == 0 || bound <= 0 {
        return Err(Failure::input("need 3 <= n <= 6, positive --max-exp and --bound"));
    }
    let cfg = CorpusConfig { ns, max_exp, bound, sample, seed };
    let (candidates, instances, overruns) = corpus::collect_instances(&cfg)?;
    let rep = corpus::report_for(candidates, &instances, overruns);
    let mut violations: Vec<Violation> = rep.violations.clone();

    let mut t = format!(
        "{} candidates, {} instances, {} distinct semigroups, {} resource overruns\n",
        rep.candidates,
        rep.instances,
        rep.distinct_semigroups,
        rep.overruns.len()
    );
    t += "nearly Gorenstein (theorem, oracle, lambda):\n";
    for ((a, b, c), k) in &rep.ng_table {
        t += &format!("  {a:<5} {b:<5} {c:<5} {k:>8}\n");
    }
    t += "almost Gorenstein (classifier, almost symmetric):\n";
    for ((a, b), k) in &rep.ag_table {
        t += &format!("  {a:<5} {b:<5} {k:>8}\n");
    }
    print_report(&mut t, "properties:", &rep);
    for o in &rep.overruns {
        t += &format!("  overrun m ({}) ell ({}): {}\n", list_u(&o.m), list_u(&o.ell), o.error);
    }

    let mut value = json!({ "config": cfg, "report": rep });
    if higher {
        let (counts, hrep) = corpus::run_higher(&instances, true);
        t += &format!(
            "deformations: {} classifiable, {} nearly Gorenstein, {} outside both blocks\n",
            counts.classifiable, counts.nearly_gorenstein, counts.unsupported
        );
        print_report(&mut t, "deformation properties:", &hrep);
        violations.extend(hrep.violations.iter().cloned());
        value["higher"] = json!({ "counts": counts, "report": hrep });
    }
    if witness {
        let mut bases = corpus::witness_bases(4, 4, 200);
        bases.extend(corpus::witness_bases(5, 4, 200));
        let (counts, wrep) = corpus::run_witnesses(&bases, 200);
        t += &format!(
            "witness rows: {} bases, {} tabulated, {} verified, {} rejected\n",
            counts.bases, counts.tabulated, counts.verified, counts.rejected
        );
        print_report(&mut t, "witness properties:", &wrep);
        violations.extend(wrep.violations.iter().cloned());
        value["witness"] = json!({ "counts": counts, "report": wrep });
    }
    emit(format, &value, &t);
    if let Some(v) = violations.first() {
        return Err(Failure {
            code: EXIT_VIOLATION,
            message: format!("{} violations; first reproducer: {}", violations.len(), reproducer(v)),
        });
    }
    Ok(())
}

fn cmd_verify(format: Format, src: &str) -> Result<(), Failure> {
    let spec: HigherDimSpec = parse(src)?;
    let base = &spec.base;
    let h = NumericalSemigroup::new(&base.generators).map_err(Error::from)?;
    let order = base.order.clone().unwrap_or_else(|| base.generators.clone());
    let d = DeterminantalInstance::build_unvalidated(&h, &order, &base.m, &base.ell)?;
    let gap = semitrace::determinantal::defining_ideal_gap(d.order(), d.m(), d.ell()).map_err(Error::from)?;
    let mut value = json!({
        "instance": d.to_spec(),
        "defining_ideal_verified": gap.is_none(),
        "witness": gap.as_ref().map(|g| g.to_string()),
    });
    let mut t = format!("{}\n", describe(&d));
    match &gap {
        None => t += "I_H = I_2(D): verified\n",
        Some(g) => t += &format!("I_H != I_2(D): {g} is not in the ideal of minors\n"),
    }
    if gap.is_some() {
        emit(format, &value, &t);
        return Err(Failure { code: EXIT_MISMATCH, message: "defining ideal is not determinantal".into() });
    }
    if !spec.i.is_empty() || !spec.j.is_empty() {
        let hd = HigherDimInstance::new(d, &spec.i, &spec.j)?;
        let outcome = hd.verify_witness();
        match &outcome {
            Ok(r) => {
                t += &format!(
                    "witness rows verified: {} rows, {} products reduce to 0, {} variables covered\n",
                    r.rows, r.products_checked, r.variables_covered
                );
                value["witness_report"] = json!(r);
            }
            Err(e) => {
                t += &format!("witness rows: {e}\n");
                value["witness_error"] = json!(e.to_string());
            }
        }
        emit(format, &value, &t);
        outcome?;
        return Ok(());
    }
    emit(format, &value, &t);
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let f = cli.format;
    match cli.command {
        Command::Sgp { input } => cmd_sgp(f, &input),
        Command::Classify { input, method, full_perm, max_exp } => cmd_classify(f, &input, &method, full_perm, max_exp),
        Command::Trace { input, method } => cmd_trace(f, &input, &method),
        Command::Search { m, ell, n, max_exp, bound } => cmd_search(f, m, ell, n, max_exp, bound),
        Command::Higher { input, dihedral } => cmd_higher(f, &input, dihedral),
        Command::Corpus { n, max_exp, bound, sample, seed, higher, witness } => {
            cmd_corpus(f, n, max_exp, bound, sample, seed, higher, witness)
        }
        Command::Verify { input } => cmd_verify(f, &input),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
