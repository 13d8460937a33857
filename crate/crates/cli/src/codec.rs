//! JSON documents for matrices, states and reports.
//!
//! Complex numbers are `[re, im]` pairs, matrices are row-major nested arrays,
//! and floats are written with 17 significant digits so that every `f64`
//! survives a write/read cycle bit for bit. Keys come out sorted.

use std::str::FromStr;

use serde_json::{Map, Number, Value};
use tps_core::{Complex64, ComplexMatrix, PauliMap, StateVector, ZanardiReport};

use crate::error::CliError;

pub const VERSION: u64 = 1;

pub fn float(x: f64) -> Result<Value, CliError> {
    if !x.is_finite() {
        return Err(CliError::non_finite("", "refusing to write a non-finite value"));
    }
    let text = format!("{x:.16e}");
    let n = Number::from_str(&text).expect("exponent notation is valid JSON");
    Ok(Value::Number(n))
}

pub fn complex(z: Complex64) -> Result<Value, CliError> {
    Ok(Value::Array(vec![float(z.re)?, float(z.im)?]))
}

pub fn complex_list(zs: &[Complex64]) -> Result<Value, CliError> {
    zs.iter().map(|&z| complex(z)).collect::<Result<Vec<_>, _>>().map(Value::Array)
}

pub fn float_list(xs: &[f64]) -> Result<Value, CliError> {
    xs.iter().map(|&x| float(x)).collect::<Result<Vec<_>, _>>().map(Value::Array)
}

pub fn object(entries: Vec<(&str, Value)>) -> Value {
    Value::Object(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

/// Top-level document with `kind` and `version`.
pub fn document(kind: &str, mut entries: Vec<(&str, Value)>) -> Value {
    entries.push(("kind", Value::from(kind)));
    entries.push(("version", Value::from(VERSION)));
    object(entries)
}

pub fn matrix(m: &ComplexMatrix) -> Result<Value, CliError> {
    let rows = (0..m.rows())
        .map(|r| complex_list(m.row(r)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(object(vec![
        ("kind", Value::from("matrix")),
        ("rows", Value::from(m.rows())),
        ("cols", Value::from(m.cols())),
        ("data", Value::Array(rows)),
    ]))
}

pub fn matrices(ms: &[ComplexMatrix]) -> Result<Value, CliError> {
    ms.iter().map(matrix).collect::<Result<Vec<_>, _>>().map(Value::Array)
}

pub fn state(s: &StateVector) -> Result<Value, CliError> {
    Ok(object(vec![
        ("kind", Value::from("state")),
        ("dim", Value::from(s.dim())),
        ("amplitudes", complex_list(s.amplitudes())?),
    ]))
}

pub fn report(r: &ZanardiReport) -> Result<Value, CliError> {
    Ok(object(vec![
        ("independence_max_commutator", float(r.independence_max_commutator)?),
        ("generated_dim", Value::from(r.generated_dim)),
        ("independent", Value::from(r.is_independent)),
        ("complete", Value::from(r.is_complete)),
    ]))
}

pub fn pauli_map(map: &PauliMap) -> Result<Value, CliError> {
    let mut out = Map::new();
    for (label, &coef) in map {
        out.insert(label.clone(), complex(coef)?);
    }
    Ok(Value::Object(out))
}

pub fn to_text(doc: &Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(doc)
    } else {
        serde_json::to_string(doc)
    }
    .expect("values built here always serialize");
    s.push('\n');
    s
}

// Reading.

pub fn parse(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::malformed(e.to_string()))
}

pub fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

pub fn index(path: &str, i: usize) -> String {
    format!("{path}[{i}]")
}

pub fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, CliError> {
    v.as_object().ok_or_else(|| CliError::schema(path, "expected an object"))
}

pub fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, CliError> {
    obj.get(key).ok_or_else(|| CliError::schema(&join(path, key), "missing field"))
}

pub fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a [Value], CliError> {
    v.as_array().map(Vec::as_slice).ok_or_else(|| CliError::schema(path, "expected an array"))
}

pub fn read_f64(v: &Value, path: &str) -> Result<f64, CliError> {
    if !v.is_number() {
        return Err(CliError::schema(path, "expected a number"));
    }
    let x = v.as_f64().unwrap_or(f64::INFINITY);
    if !x.is_finite() {
        return Err(CliError::non_finite(path, "value is not a finite double"));
    }
    Ok(x)
}

pub fn read_usize(v: &Value, path: &str) -> Result<usize, CliError> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| CliError::schema(path, "expected a non-negative integer"))
}

/// `[re, im]`, or a bare number for a real value.
pub fn read_complex(v: &Value, path: &str) -> Result<Complex64, CliError> {
    if v.is_number() {
        return Ok(Complex64::new(read_f64(v, path)?, 0.0));
    }
    let pair = as_array(v, path)?;
    if pair.len() != 2 {
        return Err(CliError::schema(path, "expected an [re, im] pair"));
    }
    Ok(Complex64::new(read_f64(&pair[0], &index(path, 0))?, read_f64(&pair[1], &index(path, 1))?))
}

pub fn read_complex_list(v: &Value, path: &str) -> Result<Vec<Complex64>, CliError> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, z)| read_complex(z, &index(path, i)))
        .collect()
}

pub fn read_usize_list(v: &Value, path: &str) -> Result<Vec<usize>, CliError> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, n)| read_usize(n, &index(path, i)))
        .collect()
}

/// Checks `kind`, and `version` when present (required for top-level documents).
pub fn expect_kind(
    obj: &Map<String, Value>,
    kind: &str,
    path: &str,
    version_required: bool,
) -> Result<(), CliError> {
    let got = field(obj, "kind", path)?;
    if got.as_str() != Some(kind) {
        return Err(CliError::schema(&join(path, "kind"), &format!("expected \"{kind}\", found {got}")));
    }
    match obj.get("version") {
        Some(v) if v.as_u64() == Some(VERSION) => Ok(()),
        Some(v) => Err(CliError::schema(&join(path, "version"), &format!("unsupported version {v}"))),
        None if version_required => Err(CliError::schema(&join(path, "version"), "missing field")),
        None => Ok(()),
    }
}

pub fn read_matrix(v: &Value, path: &str) -> Result<ComplexMatrix, CliError> {
    let obj = as_object(v, path)?;
    expect_kind(obj, "matrix", path, false)?;
    let rows = read_usize(field(obj, "rows", path)?, &join(path, "rows"))?;
    let cols = read_usize(field(obj, "cols", path)?, &join(path, "cols"))?;
    if rows == 0 || cols == 0 {
        return Err(CliError::schema(path, "matrix shape must be non-empty"));
    }
    let data_path = join(path, "data");
    let data = as_array(field(obj, "data", path)?, &data_path)?;
    if data.len() != rows {
        return Err(CliError::dimension(&data_path, &format!("{} rows, expected {rows}", data.len())));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for (r, row) in data.iter().enumerate() {
        let row_path = index(&data_path, r);
        let row = read_complex_list(row, &row_path)?;
        if row.len() != cols {
            return Err(CliError::dimension(&row_path, &format!("{} entries, expected {cols}", row.len())));
        }
        entries.extend(row);
    }
    ComplexMatrix::new(rows, cols, entries).map_err(|e| CliError::from_core(e, path))
}

pub fn read_matrix_list(v: &Value, path: &str) -> Result<Vec<ComplexMatrix>, CliError> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, m)| read_matrix(m, &index(path, i)))
        .collect()
}

pub fn read_state(v: &Value, path: &str) -> Result<StateVector, CliError> {
    let obj = as_object(v, path)?;
    expect_kind(obj, "state", path, false)?;
    let dim = read_usize(field(obj, "dim", path)?, &join(path, "dim"))?;
    let amp_path = join(path, "amplitudes");
    let amplitudes = read_complex_list(field(obj, "amplitudes", path)?, &amp_path)?;
    if amplitudes.is_empty() {
        return Err(CliError::schema(&amp_path, "amplitude list is empty"));
    }
    if amplitudes.len() != dim {
        return Err(CliError::dimension(
            &amp_path,
            &format!("{} amplitudes, dim is {dim}", amplitudes.len()),
        ));
    }
    StateVector::new(amplitudes).map_err(|e| CliError::from_core(e, &amp_path))
}
