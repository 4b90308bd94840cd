//! Reading and writing matrices, filtered complexes and diagrams.

use std::path::Path;
use std::str::FromStr;

use bigdecimal::BigDecimal;
use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use dirhom_core::{Bar, DiagramKind, DirectedSimplex, DissimilarityMatrix, Extended, FilteredComplex, PersistenceDiagram, Rational};

use crate::CliError;

/// Parses `p/q` or a decimal literal (optionally with exponent) exactly.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty entry".into());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| format!("bad numerator in {s:?}"))?;
        let q = BigInt::from_str(q.trim()).map_err(|_| format!("bad denominator in {s:?}"))?;
        if q == BigInt::from(0) {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(p, q));
    }
    // BigDecimal has no NaN or infinity, so those fail here
    let d = BigDecimal::from_str(s).map_err(|_| format!("not a number: {s:?}"))?;
    let (digits, scale) = d.as_bigint_and_exponent();
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        Rational::new(digits, num_traits::pow(ten, scale as usize))
    } else {
        Rational::from_integer(digits * num_traits::pow(ten, (-scale) as usize))
    })
}

/// `7`, `-1/3`: integers bare, everything else as `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// JSON number for integers that fit an `i64`, a `"p/q"` string otherwise.
pub fn rational_to_json(r: &Rational) -> Value {
    if r.denom().is_one() {
        if let Ok(n) = i64::try_from(r.numer()) {
            return json!(n);
        }
    }
    Value::String(format_rational(r))
}

pub fn rational_from_json(v: &Value) -> Result<Rational, String> {
    match v {
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        other => Err(format!("expected a number, found {other}")),
    }
}

fn extended_to_json(e: &Extended) -> Value {
    match e {
        Extended::Finite(r) => rational_to_json(r),
        Extended::Infinite => Value::Null,
    }
}

fn extended_from_json(v: &Value) -> Result<Extended, String> {
    match v {
        Value::Null => Ok(Extended::Infinite),
        v => rational_from_json(v).map(Extended::Finite),
    }
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub enum Input {
    Matrix { labels: Option<Vec<String>>, matrix: DissimilarityMatrix },
    Complex(FilteredComplex),
}

pub fn read_input(path: &Path) -> Result<Input, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) || text.trim_start().starts_with('{');
    if is_json {
        let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))?;
        if v.get("simplices").is_some() {
            parse_complex_json(&v).map(Input::Complex)
        } else {
            parse_matrix_json(&v).map(|(labels, matrix)| Input::Matrix { labels, matrix })
        }
    } else {
        parse_matrix_csv(&text).map(|(labels, matrix)| Input::Matrix { labels, matrix })
    }
    .map_err(|e| match e {
        CliError::Format(m) => CliError::Format(format!("{}: {m}", path.display())),
        e => e,
    })
}

/// Reads a dissimilarity matrix from CSV or JSON.
pub fn parse_matrix(path: &Path) -> Result<DissimilarityMatrix, CliError> {
    match read_input(path)? {
        Input::Matrix { matrix, .. } => Ok(matrix),
        Input::Complex(_) => Err(CliError::Format(format!("{}: expected a matrix, found a complex", path.display()))),
    }
}

fn square(rows: Vec<Vec<Rational>>) -> Result<DissimilarityMatrix, CliError> {
    let n = rows.len();
    if n == 0 {
        return Err(CliError::Format("matrix is empty".into()));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(CliError::Format(format!("row {}: expected {n} entries, found {}", i + 1, r.len())));
    }
    DissimilarityMatrix::new(rows).map_err(|e| CliError::Format(e.to_string()))
}

/// CSV with an optional header row of labels (a first row with no numeric
/// cell). Positions in errors are 1-based.
pub fn parse_matrix_csv(text: &str) -> Result<(Option<Vec<String>>, DissimilarityMatrix), CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = Vec::new();
    for r in reader.records() {
        let r = r.map_err(|e| CliError::Format(e.to_string()))?;
        if r.len() == 1 && r[0].is_empty() {
            continue;
        }
        records.push(r);
    }
    let mut labels = None;
    if let Some(first) = records.first() {
        if first.iter().all(|cell| parse_rational(cell).is_err()) {
            labels = Some(first.iter().map(str::to_owned).collect::<Vec<_>>());
            records.remove(0);
        }
    }
    let offset = usize::from(labels.is_some());
    let rows = records
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, cell)| {
                    parse_rational(cell)
                        .map_err(|e| CliError::Format(format!("row {}, column {}: {e}", i + 1 + offset, j + 1)))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(l) = &labels {
        if l.len() != rows.len() {
            return Err(CliError::Format(format!("{} labels for {} rows", l.len(), rows.len())));
        }
    }
    Ok((labels, square(rows)?))
}

/// `{"labels": [...], "d": [[...]]}`; `labels` is optional.
pub fn parse_matrix_json(v: &Value) -> Result<(Option<Vec<String>>, DissimilarityMatrix), CliError> {
    let d = v.get("d").and_then(Value::as_array).ok_or_else(|| CliError::Format("missing array \"d\"".into()))?;
    let rows = d
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let row = row.as_array().ok_or_else(|| CliError::Format(format!("row {}: not an array", i + 1)))?;
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    rational_from_json(x).map_err(|e| CliError::Format(format!("row {}, column {}: {e}", i + 1, j + 1)))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let labels = match v.get("labels") {
        None | Some(Value::Null) => None,
        Some(Value::Array(l)) => Some(
            l.iter()
                .map(|x| x.as_str().map(str::to_owned).ok_or_else(|| CliError::Format("labels must be strings".into())))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        Some(_) => return Err(CliError::Format("labels must be an array".into())),
    };
    if labels.as_ref().is_some_and(|l| l.len() != rows.len()) {
        return Err(CliError::Format("label count does not match the matrix".into()));
    }
    Ok((labels, square(rows)?))
}

pub fn matrix_to_csv(m: &DissimilarityMatrix, labels: Option<&[String]>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(l) = labels {
        w.write_record(l).expect("in-memory write");
    }
    for row in m.rows() {
        w.write_record(row.iter().map(format_rational)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("csv output is utf-8")
}

pub fn matrix_to_json(m: &DissimilarityMatrix, labels: Option<&[String]>) -> Value {
    let d: Vec<Value> = m.rows().iter().map(|r| Value::Array(r.iter().map(rational_to_json).collect())).collect();
    match labels {
        Some(l) => json!({ "labels": l, "d": d }),
        None => json!({ "d": d }),
    }
}

/// `{"vertices": n, "simplices": [[[v0, v1, ...], value], ...]}`. Missing
/// faces are added with the entrance value of their earliest coface.
pub fn parse_complex_json(v: &Value) -> Result<FilteredComplex, CliError> {
    let bad = |m: String| CliError::Format(m);
    let n = match v.get("vertices") {
        None => None,
        Some(x) => Some(x.as_u64().ok_or_else(|| bad("\"vertices\" must be a count".into()))? as usize),
    };
    let list = v.get("simplices").and_then(Value::as_array).ok_or_else(|| bad("missing array \"simplices\"".into()))?;
    let mut entries = Vec::with_capacity(list.len());
    for (i, item) in list.iter().enumerate() {
        let pos = i + 1;
        let pair = item.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad(format!("simplex {pos}: expected [vertices, value]")))?;
        let verts = pair[0]
            .as_array()
            .filter(|a| !a.is_empty())
            .ok_or_else(|| bad(format!("simplex {pos}: vertex list must be a nonempty array")))?
            .iter()
            .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("simplex {pos}: vertices must be indices"))))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(n) = n {
            if let Some(v) = verts.iter().find(|&&v| v >= n) {
                return Err(bad(format!("simplex {pos}: vertex {v} out of range for {n} vertices")));
            }
        }
        let value = rational_from_json(&pair[1]).map_err(|e| bad(format!("simplex {pos}: {e}")))?;
        entries.push((DirectedSimplex::new(verts), value));
    }
    Ok(FilteredComplex::from_entrances(entries))
}

pub fn diagram_to_json(d: &PersistenceDiagram, kind: DiagramKind) -> Value {
    let (pairs, mult): (Vec<Value>, Vec<Value>) = d
        .points()
        .map(|(b, m)| (json!([rational_to_json(&b.birth), extended_to_json(&b.death)]), json!(m)))
        .unzip();
    json!({ "dim": d.dimension(), "kind": kind.as_str(), "pairs": pairs, "multiplicities": mult })
}

pub fn diagram_from_json(v: &Value) -> Result<(PersistenceDiagram, DiagramKind), CliError> {
    let bad = |m: &str| CliError::Format(m.to_owned());
    let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| bad("diagram needs an integer \"dim\""))? as usize;
    let kind = match v.get("kind").and_then(Value::as_str) {
        Some("undirected") | None => DiagramKind::Undirected,
        Some("directed") => DiagramKind::Directed,
        Some(k) => return Err(CliError::Format(format!("unknown diagram kind {k:?}"))),
    };
    let pairs = v.get("pairs").and_then(Value::as_array).ok_or_else(|| bad("diagram needs \"pairs\""))?;
    let mult: Vec<usize> = match v.get("multiplicities") {
        None => vec![1; pairs.len()],
        Some(m) => m
            .as_array()
            .ok_or_else(|| bad("\"multiplicities\" must be an array"))?
            .iter()
            .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| bad("multiplicities must be counts")))
            .collect::<Result<_, _>>()?,
    };
    if mult.len() != pairs.len() {
        return Err(bad("\"pairs\" and \"multiplicities\" differ in length"));
    }
    let mut d = PersistenceDiagram::new(dim);
    for (i, (p, m)) in pairs.iter().zip(mult).enumerate() {
        let p = p.as_array().filter(|p| p.len() == 2).ok_or_else(|| CliError::Format(format!("pair {}: expected [birth, death]", i + 1)))?;
        let birth = rational_from_json(&p[0]).map_err(|e| CliError::Format(format!("pair {}: {e}", i + 1)))?;
        let death = extended_from_json(&p[1]).map_err(|e| CliError::Format(format!("pair {}: {e}", i + 1)))?;
        d.insert(Bar::new(birth, death), m);
    }
    Ok((d, kind))
}

/// Reads either one diagram object or an array of them.
pub fn diagrams_from_json(v: &Value) -> Result<Vec<(PersistenceDiagram, DiagramKind)>, CliError> {
    match v {
        Value::Array(items) => items.iter().map(diagram_from_json).collect(),
        v => Ok(vec![diagram_from_json(v)?]),
    }
}

/// One row per distinct point: `dim,kind,birth,death,multiplicity`, with
/// `inf` for an infinite death.
pub fn diagrams_to_csv(diagrams: &[(PersistenceDiagram, DiagramKind)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["dim", "kind", "birth", "death", "multiplicity"]).expect("in-memory write");
    for (d, kind) in diagrams {
        for (b, m) in d.points() {
            let death = match &b.death {
                Extended::Finite(r) => format_rational(r),
                Extended::Infinite => "inf".into(),
            };
            w.write_record([d.dimension().to_string(), kind.to_string(), format_rational(&b.birth), death, m.to_string()])
                .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("csv output is utf-8")
}

pub fn diagrams_from_csv(text: &str) -> Result<Vec<(PersistenceDiagram, DiagramKind)>, CliError> {
    let mut out: Vec<(PersistenceDiagram, DiagramKind)> = Vec::new();
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    for (i, r) in reader.records().enumerate() {
        let row = i + 2;
        let r = r.map_err(|e| CliError::Format(e.to_string()))?;
        if r.len() != 5 {
            return Err(CliError::Format(format!("row {row}: expected 5 fields")));
        }
        let fail = |what: &str| CliError::Format(format!("row {row}: bad {what}"));
        let dim: usize = r[0].parse().map_err(|_| fail("dim"))?;
        let kind = match &r[1] {
            "undirected" => DiagramKind::Undirected,
            "directed" => DiagramKind::Directed,
            _ => return Err(fail("kind")),
        };
        let birth = parse_rational(&r[2]).map_err(|_| fail("birth"))?;
        let death = match &r[3] {
            "inf" => Extended::Infinite,
            s => Extended::Finite(parse_rational(s).map_err(|_| fail("death"))?),
        };
        let m: usize = r[4].parse().map_err(|_| fail("multiplicity"))?;
        match out.iter_mut().find(|(d, k)| d.dimension() == dim && *k == kind) {
            Some((d, _)) => d.insert(Bar::new(birth, death), m),
            None => {
                let mut d = PersistenceDiagram::new(dim);
                d.insert(Bar::new(birth, death), m);
                out.push((d, kind));
            }
        }
    }
    Ok(out)
}
