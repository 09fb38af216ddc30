//! JSON input and output.
//!
//! Every document carries `"schema_version": 1`. On input the field may be
//! omitted; any other value is rejected. Validation collects every problem
//! before failing, each located by a JSON path such as `$.relations[2][0]`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::algebra::{Algebra, Triple};
use crate::constraints::{CheckVerdict, Constraint, ConstraintSystem, Failure, Reduction};
use crate::error::{InputError, InputIssue};
use crate::existence::{Deformation, Witness};
use crate::oracle::{deformed_relation, OracleVerdict, RewriteSystem};
use crate::parameters::{in_scope, parameter_names, ParameterTable};
use crate::polynomial::ParamName;
use crate::rational::parse_rational;
use crate::shortcuts::{ShortcutReport, TripleShortcut};

pub const SCHEMA_VERSION: u64 = 1;

/// Top-level keys of a parameter document. The last three are the metadata a
/// deformation document carries, so its output can be fed back as input.
const PARAM_FIELDS: [&str; 6] = ["schema_version", "a", "b", "case", "witness", "relations"];

#[derive(Default)]
struct Issues(Vec<InputIssue>);

impl Issues {
    fn push(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.0.push(InputIssue {
            path: path.into(),
            message: message.into(),
        });
    }

    fn finish<T>(self, value: impl FnOnce() -> T) -> Result<T, InputError> {
        if self.0.is_empty() {
            Ok(value())
        } else {
            Err(InputError::Invalid(self.0))
        }
    }
}

fn parse_json(text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))
}

fn root_object<'v>(v: &'v Value, issues: &mut Issues) -> Option<&'v Map<String, Value>> {
    let Some(obj) = v.as_object() else {
        issues.push("$", "expected a JSON object");
        return None;
    };
    match obj.get("schema_version") {
        None => {}
        Some(s) if s.as_u64() == Some(SCHEMA_VERSION) => {}
        Some(s) => issues.push("$.schema_version", format!("unsupported schema version {s}, expected 1")),
    }
    Some(obj)
}

fn index(v: &Value, path: &str, issues: &mut Issues) -> Option<usize> {
    match v.as_u64() {
        Some(x) => Some(x as usize),
        None => {
            issues.push(path, format!("expected a non-negative integer, found {v}"));
            None
        }
    }
}

fn rational(v: &Value, path: &str, issues: &mut Issues) -> Option<BigRational> {
    let parsed = match v {
        Value::String(s) => parse_rational(s),
        Value::Number(x) if x.is_i64() || x.is_u64() => x.to_string().parse::<BigInt>().ok().map(BigRational::from_integer),
        _ => None,
    };
    if parsed.is_none() {
        issues.push(path, format!("malformed rational {v}: expected an integer or a string \"p/q\""));
    }
    parsed
}

fn algebra_fields(obj: &Map<String, Value>, issues: &mut Issues) -> Option<Algebra> {
    let n = match obj.get("n") {
        None => {
            issues.push("$.n", "missing field");
            None
        }
        Some(v) => match index(v, "$.n", issues) {
            Some(0) => {
                issues.push("$.n", "an algebra needs at least one generator");
                None
            }
            other => other,
        },
    };
    let Some(rels) = obj.get("relations") else {
        issues.push("$.relations", "missing field");
        return None;
    };
    let Some(rels) = rels.as_array() else {
        issues.push("$.relations", "expected an array of [i, j] pairs");
        return None;
    };
    let mut pairs = Vec::new();
    let before = issues.0.len();
    for (ix, r) in rels.iter().enumerate() {
        let path = format!("$.relations[{ix}]");
        match r.as_array().map(Vec::as_slice) {
            Some([i, j]) => {
                let i = index(i, &format!("{path}[0]"), issues);
                let j = index(j, &format!("{path}[1]"), issues);
                if let (Some(i), Some(j)) = (i, j) {
                    if let Some(n) = n {
                        for (pos, x) in [(0, i), (1, j)] {
                            if x == 0 || x > n {
                                issues.push(format!("{path}[{pos}]"), format!("index {x} out of range 1..={n}"));
                            }
                        }
                    }
                    pairs.push((i, j));
                }
            }
            _ => issues.push(path, format!("expected a pair [i, j], found {r}")),
        }
    }
    let n = n?;
    if issues.0.len() > before {
        return None;
    }
    Algebra::new(n, pairs).ok()
}

pub fn parse_algebra(text: &str) -> Result<Algebra, InputError> {
    let v = parse_json(text)?;
    let mut issues = Issues::default();
    let alg = root_object(&v, &mut issues).and_then(|obj| algebra_fields(obj, &mut issues));
    issues.finish(|| alg.expect("no issues means the algebra was built"))
}

fn param_entries(obj: &Map<String, Value>, alg: Option<&Algebra>, issues: &mut Issues) -> BTreeMap<ParamName, BigRational> {
    let mut out = BTreeMap::new();
    for (key, with_m) in [("a", true), ("b", false)] {
        let Some(list) = obj.get(key) else { continue };
        let Some(list) = list.as_array() else {
            issues.push(format!("$.{key}"), "expected an array of entries");
            continue;
        };
        for (ix, e) in list.iter().enumerate() {
            let path = format!("$.{key}[{ix}]");
            let Some(e) = e.as_object() else {
                issues.push(path, "expected an object");
                continue;
            };
            let mut field = |f: &str| match e.get(f) {
                Some(v) => index(v, &format!("{path}.{f}"), issues),
                None => {
                    issues.push(format!("{path}.{f}"), "missing field");
                    None
                }
            };
            let i = field("i");
            let j = field("j");
            let m = if with_m { field("m") } else { Some(0) };
            let value = match e.get("value") {
                Some(v) => rational(v, &format!("{path}.value"), issues),
                None => {
                    issues.push(format!("{path}.value"), "missing field");
                    None
                }
            };
            let (Some(i), Some(j), Some(m), Some(value)) = (i, j, m, value) else { continue };
            let name = if with_m { ParamName::a(i, j, m) } else { ParamName::b(i, j) };
            if let Some(alg) = alg {
                let n = alg.n();
                if [i, j].iter().chain(with_m.then_some(&m)).any(|&x| x == 0 || x > n) {
                    issues.push(path, format!("{name} has an index out of range 1..={n}"));
                    continue;
                }
                if !in_scope(alg, name) {
                    issues.push(
                        path,
                        format!("{name} is out of scope: ({i},{j}) is not a relation, so the parameter is identically zero"),
                    );
                    continue;
                }
            }
            if out.insert(name, value).is_some() {
                issues.push(path, format!("{name} is assigned more than once"));
            }
        }
    }
    for key in obj.keys() {
        if !PARAM_FIELDS.contains(&key.as_str()) {
            issues.push(format!("$.{key}"), "unknown field");
        }
    }
    out
}

/// Numeric parameters for `alg`; unlisted parameters default to zero.
pub fn parse_params(alg: &Algebra, text: &str) -> Result<ParameterTable, InputError> {
    let v = parse_json(text)?;
    let mut issues = Issues::default();
    let entries = root_object(&v, &mut issues)
        .map(|obj| param_entries(obj, Some(alg), &mut issues))
        .unwrap_or_default();
    issues.finish(|| ParameterTable::numeric(alg, entries).expect("entries were validated"))
}

/// Algebra and optional parameters, validated together. Parameter entries are
/// still checked for shape when the algebra itself is invalid, so one run
/// reports everything. Paths in the parameter document are prefixed `params`.
pub fn parse_input(algebra: &str, params: Option<&str>) -> Result<(Algebra, Option<ParameterTable>), InputError> {
    let mut issues = Issues::default();
    let alg_value = parse_json(algebra)?;
    let alg = root_object(&alg_value, &mut issues).and_then(|obj| algebra_fields(obj, &mut issues));

    let mut entries = None;
    if let Some(text) = params {
        let v = serde_json::from_str::<Value>(text).map_err(|e| InputError::Json(format!("parameters: {e}")))?;
        let mut local = Issues::default();
        if let Some(obj) = root_object(&v, &mut local) {
            entries = Some(param_entries(obj, alg.as_ref(), &mut local));
        }
        for issue in local.0 {
            issues.push(issue.path.replacen('$', "params$", 1), issue.message);
        }
    }
    issues.finish(|| {
        let alg = alg.expect("no issues means the algebra was built");
        let table = entries.map(|e| ParameterTable::numeric(&alg, e).expect("entries were validated"));
        (alg, table)
    })
}

fn versioned(mut body: Map<String, Value>) -> Value {
    body.insert("schema_version".into(), json!(SCHEMA_VERSION));
    Value::Object(body)
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("json! object literal"),
    }
}

fn triple_json(t: Triple) -> Value {
    json!(t.as_array())
}

pub fn algebra_json(alg: &Algebra) -> Value {
    let relations: Vec<[usize; 2]> = alg.relations().map(|a| [a.from, a.to]).collect();
    versioned(object(json!({ "n": alg.n(), "relations": relations })))
}

fn params_body(table: &ParameterTable) -> Map<String, Value> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for p in parameter_names(table.algebra()) {
        let value = table.value(p).expect("serializing needs a numeric table").to_string();
        match p {
            ParamName::A { i, j, m } => a.push(json!({ "i": i, "j": j, "m": m, "value": value })),
            ParamName::B { i, j } => b.push(json!({ "i": i, "j": j, "value": value })),
        }
    }
    object(json!({ "a": a, "b": b }))
}

/// Every in-scope parameter of a numeric table, zeros included.
pub fn params_json(table: &ParameterTable) -> Value {
    versioned(params_body(table))
}

pub fn constraint_json(c: &Constraint) -> Value {
    let mut m = Map::new();
    m.insert("origin".into(), json!(c.origin.as_str()));
    m.insert("triple".into(), triple_json(c.triple));
    if let Some(r) = c.r {
        m.insert("r".into(), json!(r));
    }
    if let Some(aux) = c.aux {
        m.insert("aux".into(), json!(aux));
    }
    m.insert("polynomial".into(), json!(c.polynomial.to_string()));
    Value::Object(m)
}

/// With a report, each constraint a shortcut makes implied gets a
/// `"skippable"` field naming what must hold first (`"I"` or `"I+II"`).
pub fn constraints_json(sys: &ConstraintSystem, report: Option<&ShortcutReport>) -> Value {
    let list: Vec<Value> = sys
        .iter()
        .map(|c| {
            let mut v = constraint_json(c);
            if let Some(req) = report.and_then(|r| r.skippable(c)) {
                v.as_object_mut().unwrap().insert("skippable".into(), json!(req.as_str()));
            }
            v
        })
        .collect();
    versioned(object(json!({ "constraints": list })))
}

fn failure_json(f: &Failure) -> Value {
    let mut v = constraint_json(&f.constraint);
    v.as_object_mut().unwrap().insert("value".into(), json!(f.value.to_string()));
    v
}

pub fn verdict_json(v: &CheckVerdict) -> Value {
    let failures: Vec<Value> = v.failures.iter().map(failure_json).collect();
    versioned(object(json!({ "pbw": v.pbw, "failures": failures })))
}

pub fn oracle_json(v: &OracleVerdict) -> Value {
    let failures: Vec<Value> = v
        .failures
        .iter()
        .map(|f| {
            json!({
                "triple": triple_json(f.triple),
                "left": f.left.to_string(),
                "right": f.right.to_string(),
            })
        })
        .collect();
    versioned(object(json!({ "pbw": v.pbw, "failures": failures })))
}

fn names(ps: impl IntoIterator<Item = ParamName>) -> Vec<String> {
    ps.into_iter().map(|p| p.to_string()).collect()
}

pub fn reduction_json(red: &Reduction) -> Value {
    let rules: Map<String, Value> = red
        .rules
        .iter()
        .map(|(p, rhs)| (p.to_string(), json!(rhs.to_string())))
        .collect();
    let classes: Vec<Value> = red
        .classes
        .iter()
        .map(|c| {
            json!({
                "representative": c.representative.to_string(),
                "members": names(c.members.iter().copied()),
                "zero": c.zero,
            })
        })
        .collect();
    let pivots: Map<String, Value> = red
        .b_pivots
        .iter()
        .map(|(p, e)| (p.to_string(), json!(e.to_string())))
        .collect();
    let residual: Vec<Value> = red.residual.iter().map(constraint_json).collect();
    versioned(object(json!({
        "rules": rules,
        "classes": classes,
        "free_a": names(red.free_a.iter().copied()),
        "free_a_count": red.free_a.len(),
        "b_solved": pivots,
        "free_b": names(red.free_b()),
        "residual": residual,
    })))
}

fn shortcut_entry_json(e: &TripleShortcut) -> Value {
    let skip_ii: BTreeSet<usize> = e.skip_ii.clone();
    json!({
        "triple": triple_json(e.triple),
        "shape": e.shape.as_str(),
        "pattern": e.shape.pattern(),
        "clause_two_pattern": e.shape.clause_two_pattern(),
        "clauses": e.clauses,
        "skip_ii_r": skip_ii,
        "skip_iii_after": e.skip_iii.map(|r| r.as_str()),
    })
}

pub fn shortcuts_json(report: &ShortcutReport) -> Value {
    let entries: Vec<Value> = report.entries.iter().map(shortcut_entry_json).collect();
    versioned(object(json!({
        "overlaps": entries,
        "skipped_ii": report.skipped_ii_count(),
    })))
}

fn witness_json(w: Witness) -> Value {
    match w {
        Witness::Loop { vertex } => json!({ "loop": vertex }),
        Witness::TwoCycle { s, t } => json!({ "two_cycle": [s, t] }),
        Witness::Vertex { u } => json!({ "vertex": u }),
    }
}

/// The parameter document plus the case, its witness and the deformed relations.
pub fn deformation_json(alg: &Algebra, d: &Deformation) -> Value {
    let rs = RewriteSystem::new(alg, &d.table);
    let relations: Vec<String> = alg
        .relations()
        .map(|a| deformed_relation(&rs, a.from, a.to).expect("relation has a rule").to_string())
        .collect();
    let mut body = params_body(&d.table);
    body.insert("case".into(), json!(d.witness.case()));
    body.insert("witness".into(), witness_json(d.witness));
    body.insert("relations".into(), json!(relations));
    versioned(body)
}
