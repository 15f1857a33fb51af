//! The subcommands, each producing a [`ReportDocument`].

use std::fs;
use std::path::Path;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use pvk_core::combinatorics::{asymptotic_ratio, rank_by_genfun, rank_by_partitions};
use pvk_core::exactmat::Budget;
use pvk_core::exterior::{anzai_matrix, linearization, unipotent_degree, LinearizationSpec};
use pvk_core::ktheory::{pv_kgroups_with_budget, rank_kgroups_with_budget, KOutcome};
use pvk_core::quotients::{orbit_cardinality, zeta_invariant, CircleElement, QuotientSpec};
use pvk_core::{Error, FGAbelianGroup};
use serde_json::{json, Value};

use crate::golden;
use crate::report::{ReportDocument, Status, Table, Timing};
use crate::suites;

/// Failure before any report could be produced. Always exit code 1 except
/// for budget exhaustion outside a partial-result context.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> String {
        let kind = match self.code {
            2 => "budget-exceeded",
            3 => "verification-failed",
            _ => "input",
        };
        json!({"error": kind, "message": self.message}).to_string()
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => 2,
            Error::Defect(_) => 3,
            _ => 1,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub budget: Option<u64>,
    pub timings: bool,
}

impl Options {
    fn budget(&self) -> Budget {
        Budget(self.budget)
    }
}

struct Clock {
    enabled: bool,
    entries: Vec<Timing>,
}

impl Clock {
    fn new(enabled: bool) -> Self {
        Clock {
            enabled,
            entries: Vec::new(),
        }
    }

    fn time<T>(&mut self, label: impl Into<String>, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            self.entries.push(Timing {
                label: label.into(),
                millis: start.elapsed().as_secs_f64() * 1e3,
            });
        }
        out
    }

    fn finish(self) -> Option<Vec<Timing>> {
        self.enabled.then_some(self.entries)
    }
}

fn group_json(g: &FGAbelianGroup) -> Value {
    serde_json::to_value(g).expect("group serialization")
}

fn torsion_text(g: &FGAbelianGroup) -> String {
    g.torsion()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Where a linearization comes from on the command line.
pub enum SpecSource<'a> {
    Anzai(usize),
    Ascending(Vec<BigInt>),
    Furstenberg(&'a Path),
    General(&'a Path),
}

fn read(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Files may hold the full tagged spec or just its payload: the exponent
/// object for `--furstenberg`, a bare matrix for `--general`.
pub fn load_spec(source: SpecSource<'_>) -> Result<LinearizationSpec, CliError> {
    let (kind, mut doc) = match source {
        SpecSource::Anzai(n) => return Ok(check(LinearizationSpec::Anzai { n })?),
        SpecSource::Ascending(k) => return Ok(check(LinearizationSpec::Ascending { k })?),
        SpecSource::Furstenberg(p) => ("furstenberg", read(p)?),
        SpecSource::General(p) => ("general", read(p)?),
    };
    let obj = doc
        .as_object_mut()
        .ok_or_else(|| CliError::input("spec file must hold a JSON object"))?;
    match obj.get("kind").and_then(Value::as_str) {
        Some(k) if k != kind => {
            return Err(CliError::input(format!(
                "file describes a {k} map, expected {kind}"
            )));
        }
        Some(_) => {}
        None if kind == "general" && obj.contains_key("rows") => {
            doc = json!({"kind": "general", "matrix": doc});
        }
        None => {
            obj.insert("kind".into(), Value::String(kind.into()));
        }
    }
    Ok(LinearizationSpec::from_json(&doc.to_string())?)
}

fn check(spec: LinearizationSpec) -> Result<LinearizationSpec, Error> {
    spec.validate()?;
    Ok(spec)
}

pub fn cmd_kgroups(spec: &LinearizationSpec, opts: Options) -> Result<ReportDocument, CliError> {
    let a = linearization(spec)?;
    let n = a.rows();
    let spec_value: Value = serde_json::from_str(&spec.to_json()).expect("spec json");
    let mut doc = ReportDocument::new(
        "kgroups",
        format!("K-groups for a linearization on T^{n}"),
        json!({"spec": spec_value, "budget": opts.budget}),
    );
    let mut clock = Clock::new(opts.timings);
    let outcome = clock.time("all blocks", || pv_kgroups_with_budget(&a, opts.budget()))?;
    let mut table = Table::new(&["item", "rank", "torsion"]);
    match outcome {
        KOutcome::Complete(k) => {
            k.check_consistency()?;
            doc.results = serde_json::to_value(&k).expect("record serialization");
            table.push(vec![
                "K0".into(),
                k.k0.free_rank().to_string(),
                torsion_text(&k.k0),
            ]);
            table.push(vec![
                "K1".into(),
                k.k1.free_rank().to_string(),
                torsion_text(&k.k1),
            ]);
            for b in &k.blocks {
                table.push(vec![
                    format!("coker r={}", b.r),
                    b.coker.free_rank().to_string(),
                    torsion_text(&b.coker),
                ]);
                table.push(vec![
                    format!("ker r={}", b.r),
                    b.ker.free_rank().to_string(),
                    String::new(),
                ]);
            }
            doc.notes.push(format!("K0 = {}", k.k0));
            doc.notes.push(format!("K1 = {}", k.k1));
        }
        KOutcome::Partial(p) => {
            doc.status = Status::BudgetExceeded;
            let blocks: Vec<Value> = p
                .blocks
                .iter()
                .enumerate()
                .map(|(r, b)| match b {
                    Some(b) => serde_json::to_value(b).expect("block serialization"),
                    None => json!({"r": r, "coker": null, "ker": null}),
                })
                .collect();
            doc.results = json!({"n": n, "K0": null, "K1": null, "blocks": blocks});
            for (r, b) in p.blocks.iter().enumerate() {
                match b {
                    Some(b) => {
                        table.push(vec![
                            format!("coker r={r}"),
                            b.coker.free_rank().to_string(),
                            torsion_text(&b.coker),
                        ]);
                        table.push(vec![
                            format!("ker r={r}"),
                            b.ker.free_rank().to_string(),
                            String::new(),
                        ]);
                    }
                    None => table.push(vec![
                        format!("block r={r}"),
                        "budget exceeded".into(),
                        String::new(),
                    ]),
                }
            }
            doc.notes.push(format!(
                "budget of {} steps exceeded in blocks {:?}",
                p.budget,
                p.failed_blocks()
            ));
        }
    }
    if let Some(d) = unipotent_degree(&a)? {
        doc.notes.push(format!("unipotent of degree {d}"));
    }
    doc.table = table;
    doc.timings = clock.finish();
    Ok(doc)
}

pub fn cmd_table(max_n: usize, opts: Options) -> Result<ReportDocument, CliError> {
    if max_n == 0 {
        return Err(CliError::input("--max-n must be at least 1"));
    }
    let mut doc = ReportDocument::new(
        "table",
        format!("K-groups of the Anzai crossed products, 1 <= n <= {max_n}"),
        json!({"max_n": max_n, "budget": opts.budget}),
    );
    let mut table = Table::new(&["n", "K0", "K1", "rank", "golden"]);
    let mut rows = Vec::new();
    let mut clock = Clock::new(opts.timings);
    for n in 1..=max_n {
        let outcome = clock.time(format!("n={n}"), || {
            pv_kgroups_with_budget(&anzai_matrix(n), opts.budget())
        })?;
        match outcome {
            KOutcome::Complete(k) => {
                let golden = golden::row(n).map(|g| g.groups() == (k.k0.clone(), k.k1.clone()));
                if golden == Some(false) {
                    doc.status = doc.status.max(Status::VerificationFailed);
                }
                let flag = match golden {
                    Some(true) => "match",
                    Some(false) => "MISMATCH",
                    None => "",
                };
                table.push(vec![
                    n.to_string(),
                    k.k0.to_string(),
                    k.k1.to_string(),
                    k.rank().to_string(),
                    flag.into(),
                ]);
                rows.push(json!({
                    "n": n,
                    "K0": group_json(&k.k0),
                    "K1": group_json(&k.k1),
                    "rank": k.rank(),
                    "golden": golden,
                }));
            }
            KOutcome::Partial(p) => {
                doc.status = doc.status.max(Status::BudgetExceeded);
                table.push(vec![
                    n.to_string(),
                    "budget exceeded".into(),
                    "budget exceeded".into(),
                    String::new(),
                    String::new(),
                ]);
                rows.push(
                    json!({"n": n, "error": "budget-exceeded", "failed_blocks": p.failed_blocks()}),
                );
            }
        }
    }
    let compared = max_n.min(golden::TABLE.len());
    doc.notes.push(match doc.status {
        Status::Ok => format!("rows 1..={compared} agree with the published table"),
        Status::VerificationFailed => "some rows disagree with the published table".into(),
        Status::BudgetExceeded => "some rows exceeded the budget".into(),
    });
    doc.results = json!({"rows": rows});
    doc.table = table;
    doc.timings = clock.finish();
    Ok(doc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMethod {
    Snf,
    Partition,
    Genfun,
    All,
}

pub fn cmd_rank(n: usize, method: RankMethod, opts: Options) -> Result<ReportDocument, CliError> {
    if n == 0 {
        return Err(CliError::input("--n must be at least 1"));
    }
    let name = format!("{method:?}").to_lowercase();
    let mut doc = ReportDocument::new(
        "rank",
        format!("Common rank of the K-groups for n = {n}"),
        json!({"n": n, "method": name, "budget": opts.budget}),
    );
    let mut clock = Clock::new(opts.timings);
    let use_snf = matches!(method, RankMethod::Snf | RankMethod::All);
    let use_partition = matches!(method, RankMethod::Partition | RankMethod::All);
    let use_genfun = matches!(method, RankMethod::Genfun | RankMethod::All);
    let mut results = serde_json::Map::new();
    results.insert("n".into(), json!(n));
    let mut values: Vec<BigInt> = Vec::new();
    let mut table = Table::new(&["method", "rank"]);
    if use_snf {
        match clock.time("snf", || {
            rank_kgroups_with_budget(&anzai_matrix(n), opts.budget())
        }) {
            Ok(r) => {
                values.push(r.into());
                results.insert("snf".into(), json!(r));
                table.push(vec!["snf".into(), r.to_string()]);
            }
            Err(Error::BudgetExceeded { .. }) => {
                doc.status = Status::BudgetExceeded;
                results.insert("snf".into(), Value::Null);
                table.push(vec!["snf".into(), "budget exceeded".into()]);
            }
            Err(e) => return Err(e.into()),
        }
    }
    if use_partition {
        let r = clock.time("partition", || rank_by_partitions(n));
        results.insert("partition".into(), pvk_int(&r));
        table.push(vec!["partition".into(), r.to_string()]);
        values.push(r);
    }
    if use_genfun {
        let r = clock.time("genfun", || rank_by_genfun(n));
        results.insert("genfun".into(), pvk_int(&r));
        table.push(vec!["genfun".into(), r.to_string()]);
        values.push(r);
        let ratio = asymptotic_ratio(n, 6);
        results.insert("asymptotic_ratio".into(), json!(ratio));
        doc.notes.push(format!("a_n n^(3/2) / 2^n = {ratio}"));
    }
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    if method == RankMethod::All {
        results.insert("agree".into(), json!(agree));
        doc.notes.push(if agree {
            "methods agree".into()
        } else {
            "METHODS DISAGREE".into()
        });
    }
    if !agree {
        doc.status = doc.status.max(Status::VerificationFailed);
    }
    if let Some(g) = golden::row(n) {
        if values.iter().any(|v| *v != BigInt::from(g.rank)) {
            doc.status = doc.status.max(Status::VerificationFailed);
            doc.notes.push(format!("published value is {}", g.rank));
        }
    }
    doc.results = Value::Object(results);
    doc.table = table;
    doc.timings = clock.finish();
    Ok(doc)
}

/// Integers that fit in `u64` as JSON numbers, larger ones as strings.
fn pvk_int(x: &BigInt) -> Value {
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn load_quotient(path: &Path) -> Result<QuotientSpec, CliError> {
    let doc = read(path)?;
    Ok(QuotientSpec::from_json(&doc.to_string())?)
}

/// `ϑ` with `ζ = e^{2πiϑ}`, written as `a + bθ` with zero parts dropped.
fn angle(z: &CircleElement) -> String {
    let (a, b) = (z.rat(), z.irr());
    let theta = |b: &BigRational| {
        if b.is_one() {
            "θ".to_string()
        } else {
            format!("{b}θ")
        }
    };
    match (a.is_zero(), b.is_zero()) {
        (_, true) => a.to_string(),
        (true, false) if (-b).is_one() => "-θ".into(),
        (true, false) => theta(b),
        (false, false) if b.is_negative() => format!("{a} - {}", theta(&-b)),
        (false, false) => format!("{a} + {}", theta(b)),
    }
}

fn witness(s: &QuotientSpec) -> Result<Value, CliError> {
    let c = orbit_cardinality(s)?;
    let z = zeta_invariant(s)?;
    Ok(json!({
        "fibre_dim": s.fibre_dim(),
        "C": pvk_int(&c),
        "zeta": {"rat": z.rat().to_string(), "irr": z.irr().to_string()},
        "trace_range": format!("(1/{c})(Z + Z({}))", angle(&z)),
        "rank": pvk_int(&rank_by_genfun(s.fibre_dim())),
    }))
}

pub fn cmd_classify(s: &QuotientSpec, t: &QuotientSpec) -> Result<ReportDocument, CliError> {
    let spec_value =
        |q: &QuotientSpec| -> Value { serde_json::from_str(&q.to_json()).expect("spec json") };
    let mut doc = ReportDocument::new(
        "classify",
        "Isomorphism test for two simple quotients".into(),
        json!({"first": spec_value(s), "second": spec_value(t)}),
    );
    let (ws, wt) = (witness(s)?, witness(t)?);
    let (zs, zt) = (zeta_invariant(s)?, zeta_invariant(t)?);
    let (iso, reason) = if s.fibre_dim() != t.fibre_dim() {
        (
            false,
            format!(
                "fibre dimensions {} and {} differ, so the K-group ranks {} and {} differ",
                s.fibre_dim(),
                t.fibre_dim(),
                ws["rank"],
                wt["rank"]
            ),
        )
    } else if ws["C"] != wt["C"] {
        (
            false,
            format!("orbit cardinalities {} and {} differ", ws["C"], wt["C"]),
        )
    } else if zs == zt {
        (true, "invariants agree".into())
    } else if zs == zt.inverse() {
        (true, "invariants are mutually inverse".into())
    } else {
        (
            false,
            "invariants differ and are not mutually inverse".into(),
        )
    };
    let mut table = Table::new(&["quantity", "first", "second"]);
    for key in ["fibre_dim", "C", "trace_range", "rank"] {
        let show = |v: &Value| v.as_str().map_or_else(|| v.to_string(), str::to_string);
        table.push(vec![key.into(), show(&ws[key]), show(&wt[key])]);
    }
    doc.notes.push(format!(
        "{}: {reason}",
        if iso { "isomorphic" } else { "not isomorphic" }
    ));
    doc.results = json!({"isomorphic": iso, "reason": reason, "first": ws, "second": wt});
    doc.table = table;
    Ok(doc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Duality,
    Oracle,
    Unipotent,
    Symmetry,
    All,
}

pub fn cmd_verify(suite: Suite, seed: u64, opts: Options) -> ReportDocument {
    let name = format!("{suite:?}").to_lowercase();
    let mut doc = ReportDocument::new(
        "verify",
        format!("Verification suite: {name}"),
        json!({"suite": name, "seed": seed}),
    );
    let mut clock = Clock::new(opts.timings);
    let want = |s: Suite| suite == s || suite == Suite::All;
    let mut results = Vec::new();
    if want(Suite::Identities) {
        results.push(clock.time("binomial-identity", suites::binomial_identity));
        results.push(clock.time("delta-identity", suites::delta_identity));
    }
    if want(Suite::Duality) {
        results.push(clock.time("duality", || suites::duality(seed, 100)));
    }
    if want(Suite::Oracle) {
        results.push(clock.time("oracle", || suites::oracle(seed, 1000)));
    }
    if want(Suite::Unipotent) {
        results.push(clock.time("unipotent-rank", || suites::unipotent_rank(seed, 200, 8)));
    }
    if want(Suite::Symmetry) {
        results.push(clock.time("odd-symmetry", || suites::odd_symmetry(seed, 50)));
    }
    let mut table = Table::new(&["suite", "cases", "failures", "seed", "verdict"]);
    for r in &results {
        table.push(vec![
            r.name.into(),
            r.cases.to_string(),
            r.failures.to_string(),
            r.seed.map_or_else(String::new, |s| s.to_string()),
            if r.passed() {
                "pass".into()
            } else {
                "FAIL".into()
            },
        ]);
        if let Some(f) = &r.first_failure {
            doc.notes.push(format!("{} first failure: {f}", r.name));
        }
    }
    if results.iter().any(|r| !r.passed()) {
        doc.status = Status::VerificationFailed;
    }
    doc.results = json!({"suites": results});
    doc.table = table;
    doc.timings = clock.finish();
    doc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kgroups_of_s6_records_the_torsion() {
        let doc = cmd_kgroups(&LinearizationSpec::Anzai { n: 6 }, Options::default()).unwrap();
        assert_eq!(doc.status, Status::Ok);
        assert_eq!(doc.results["K1"]["torsion"], json!([2]));
        assert_eq!(
            doc.results["blocks"][3]["coker"],
            json!({"rank": 3, "torsion": [2]})
        );
    }

    #[test]
    fn tiny_budget_gives_partial_report() {
        let opts = Options {
            budget: Some(2),
            timings: false,
        };
        let doc = cmd_kgroups(&LinearizationSpec::Anzai { n: 6 }, opts).unwrap();
        assert_eq!(doc.status, Status::BudgetExceeded);
        assert_eq!(doc.results["K0"], Value::Null);
        let doc = cmd_table(4, opts).unwrap();
        assert_eq!(doc.status, Status::BudgetExceeded);
        assert_eq!(doc.table.rows.len(), 4);
    }

    #[test]
    fn rank_methods_agree() {
        let doc = cmd_rank(9, RankMethod::All, Options::default()).unwrap();
        assert_eq!(doc.results["agree"], json!(true));
        assert_eq!(doc.results["genfun"], json!(52));
        assert_eq!(doc.status, Status::Ok);
    }

    #[test]
    fn verify_identities_passes() {
        let doc = cmd_verify(Suite::Identities, suites::DEFAULT_SEED, Options::default());
        assert_eq!(doc.status, Status::Ok);
        assert_eq!(doc.table.rows.len(), 2);
    }
}
