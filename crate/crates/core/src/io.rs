//! JSON documents for complexes, maps and results.
//!
//! A complex document looks like
//!
//! ```json
//! {
//!   "diffs": {"0": [[1]], "1": [[1]]},
//!   "dims": {"0": 1, "1": 1, "2": 1},
//!   "n": 3,
//!   "ring": {"kind": "prime_field", "p": 2},
//!   "schema_version": 1,
//!   "support": {"hi": 2, "kind": "bounded", "lo": 0}
//! }
//! ```
//!
//! Degree keys are decimal strings. Entries are integers over `GF(p)`,
//! `[numerator, denominator]` pairs over `Q` and coefficient arrays
//! `[c_0, ..., c_{m-1}]` over `GF(p)[x]/(x^m)`. Missing dims and diffs are
//! zero. Keys are emitted sorted, so output is canonical.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::homotopy::HomotopyWitness;
use crate::linalg::{CoeffRing, Elem, RingMatrix};
use crate::ncomplex::{ChainMapN, HomologyFingerprint, NComplex, Support};
use crate::quiver::{RepChainMap, RepComplex};

pub const SCHEMA_VERSION: u64 = 1;

fn err(path: &str, reason: impl Into<String>) -> Error {
    Error::Document { path: path.to_string(), reason: reason.into() }
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| err(path, format!("missing field `{key}`")))
}

fn as_u64(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| err(path, "expected a non-negative integer"))
}

fn as_i64(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| err(path, "expected an integer"))
}

fn as_bigint(v: &Value, path: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(err(path, "expected an integer"))
            }
        }
        Value::String(s) => s.parse().map_err(|_| err(path, format!("`{s}` is not an integer"))),
        _ => Err(err(path, "expected an integer")),
    }
}

fn bigint_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => json!(i),
        None => json!(x.to_string()),
    }
}

pub fn ring_to_value(ring: CoeffRing) -> Value {
    match ring {
        CoeffRing::PrimeField { p } => json!({"kind": "prime_field", "p": p}),
        CoeffRing::Rationals => json!({"kind": "rationals"}),
        CoeffRing::TruncatedPoly { p, m } => json!({"kind": "truncated_poly", "p": p, "m": m}),
    }
}

pub fn ring_from_value(v: &Value, path: &str) -> Result<CoeffRing> {
    if let Some(s) = v.as_str() {
        return s.parse().map_err(|e: Error| err(path, e.to_string()));
    }
    let kind = field(v, "kind", path)?.as_str().ok_or_else(|| err(path, "`kind` must be a string"))?;
    let p = || as_u64(field(v, "p", path)?, &format!("{path}.p"));
    let wrap = |r: Result<CoeffRing>| r.map_err(|e| err(path, e.to_string()));
    match kind {
        "prime_field" => wrap(CoeffRing::prime_field(p()?)),
        "rationals" => Ok(CoeffRing::Rationals),
        "truncated_poly" => {
            let m = as_u64(field(v, "m", path)?, &format!("{path}.m"))? as usize;
            wrap(CoeffRing::truncated_poly(p()?, m))
        }
        other => Err(err(path, format!("unknown ring kind `{other}`"))),
    }
}

pub fn elem_to_value(e: &Elem) -> Value {
    match e {
        Elem::Prime(x) => json!(x),
        Elem::Rational(q) => json!([bigint_value(q.numer()), bigint_value(q.denom())]),
        Elem::Poly(c) => json!(c),
    }
}

fn reduce_mod(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().unwrap()
}

pub fn elem_from_value(ring: CoeffRing, v: &Value, path: &str) -> Result<Elem> {
    match ring {
        CoeffRing::PrimeField { p } => Ok(Elem::Prime(reduce_mod(&as_bigint(v, path)?, p))),
        CoeffRing::Rationals => {
            let (n, d) = match v {
                Value::Array(a) if a.len() == 2 => (as_bigint(&a[0], path)?, as_bigint(&a[1], path)?),
                Value::Array(_) => return Err(err(path, "a rational is a [numerator, denominator] pair")),
                other => (as_bigint(other, path)?, BigInt::one()),
            };
            if d.is_zero() {
                return Err(err(path, "zero denominator"));
            }
            Ok(Elem::Rational(BigRational::new(n, d)))
        }
        CoeffRing::TruncatedPoly { p, m } => {
            let coeffs: Vec<u64> = match v {
                Value::Array(a) => {
                    if a.len() > m {
                        return Err(err(path, format!("{} coefficients for a ring of degree {m}", a.len())));
                    }
                    a.iter().map(|c| as_bigint(c, path).map(|b| reduce_mod(&b, p))).collect::<Result<_>>()?
                }
                other => vec![reduce_mod(&as_bigint(other, path)?, p)],
            };
            let mut coeffs = coeffs;
            coeffs.resize(m, 0);
            Ok(Elem::Poly(coeffs))
        }
    }
}

pub fn matrix_to_value(a: &RingMatrix) -> Value {
    Value::Array((0..a.rows()).map(|r| Value::Array((0..a.cols()).map(|c| elem_to_value(&a.entry(r, c))).collect())).collect())
}

pub fn matrix_from_value(ring: CoeffRing, rows: usize, cols: usize, v: &Value, path: &str) -> Result<RingMatrix> {
    let arr = v.as_array().ok_or_else(|| err(path, "a matrix is a list of rows"))?;
    if arr.len() != rows {
        return Err(err(path, format!("expected {rows} rows, found {}", arr.len())));
    }
    let mut vals = Vec::with_capacity(rows * cols);
    for (r, row) in arr.iter().enumerate() {
        let rp = format!("{path}[{r}]");
        let row = row.as_array().ok_or_else(|| err(&rp, "a row is a list of entries"))?;
        if row.len() != cols {
            return Err(err(&rp, format!("expected {cols} entries, found {}", row.len())));
        }
        for (c, e) in row.iter().enumerate() {
            vals.push(elem_from_value(ring, e, &format!("{rp}[{c}]"))?);
        }
    }
    RingMatrix::from_elems(ring, rows, cols, vals).map_err(|e| err(path, e.to_string()))
}

pub fn support_to_value(s: Support) -> Value {
    match s {
        Support::Bounded { lo, hi } => json!({"kind": "bounded", "lo": lo, "hi": hi}),
        Support::Periodic { period } => json!({"kind": "periodic", "period": period}),
    }
}

pub fn support_from_value(v: &Value, path: &str) -> Result<Support> {
    match field(v, "kind", path)?.as_str() {
        Some("bounded") => {
            let lo = as_i64(field(v, "lo", path)?, &format!("{path}.lo"))?;
            let hi = as_i64(field(v, "hi", path)?, &format!("{path}.hi"))?;
            Ok(Support::Bounded { lo, hi })
        }
        Some("periodic") => {
            let period = as_u64(field(v, "period", path)?, &format!("{path}.period"))? as usize;
            if period == 0 {
                return Err(err(path, "period must be positive"));
            }
            Ok(Support::Periodic { period })
        }
        _ => Err(err(path, "support kind must be `bounded` or `periodic`")),
    }
}

fn degree_map(v: Option<&Value>, path: &str) -> Result<BTreeMap<i64, Value>> {
    let Some(v) = v else { return Ok(BTreeMap::new()) };
    let obj = v.as_object().ok_or_else(|| err(path, "expected an object keyed by degree"))?;
    obj.iter()
        .map(|(k, val)| {
            let deg = k.trim().parse::<i64>().map_err(|_| err(path, format!("`{k}` is not a degree")))?;
            Ok((deg, val.clone()))
        })
        .collect()
}

fn check_header(v: &Value) -> Result<()> {
    let ver = as_u64(field(v, "schema_version", "$")?, "$.schema_version")?;
    if ver != SCHEMA_VERSION {
        return Err(err("$.schema_version", format!("unsupported schema version {ver}")));
    }
    Ok(())
}

pub fn complex_to_value(x: &NComplex) -> Value {
    let mut dims = Map::new();
    let mut diffs = Map::new();
    for i in x.support().degrees() {
        dims.insert(i.to_string(), json!(x.dim(i)));
        let d = x.d(i);
        if d.rows() > 0 && d.cols() > 0 {
            diffs.insert(i.to_string(), matrix_to_value(&d));
        }
    }
    json!({
        "schema_version": SCHEMA_VERSION,
        "n": x.order(),
        "ring": ring_to_value(x.ring()),
        "support": support_to_value(x.support()),
        "dims": dims,
        "diffs": diffs,
    })
}

/// Parse and validate a complex document.
pub fn complex_from_value(v: &Value) -> Result<NComplex> {
    check_header(v)?;
    let n = as_u64(field(v, "n", "$")?, "$.n")? as usize;
    if n < 2 {
        return Err(err("$.n", "N must be at least 2"));
    }
    let ring = ring_from_value(field(v, "ring", "$")?, "$.ring")?;
    let support = support_from_value(field(v, "support", "$")?, "$.support")?;
    let dim_map = degree_map(v.get("dims"), "$.dims")?;
    let diff_map = degree_map(v.get("diffs"), "$.diffs")?;
    let degs: Vec<i64> = support.degrees().collect();
    let inside = |i: i64| degs.binary_search(&i).is_ok();
    for &i in dim_map.keys().chain(diff_map.keys()) {
        if !inside(i) {
            return Err(err(&format!("$.dims.{i}"), "degree outside the support"));
        }
    }
    let dim = |i: i64| -> Result<usize> {
        let key = match support {
            Support::Periodic { period } => i.rem_euclid(period as i64),
            _ => i,
        };
        match dim_map.get(&key) {
            Some(d) => Ok(as_u64(d, &format!("$.dims.{key}"))? as usize),
            None => Ok(0),
        }
    };
    let mut dims = Vec::with_capacity(degs.len());
    let mut diffs = Vec::with_capacity(degs.len());
    for &i in &degs {
        let (c, mut r) = (dim(i)?, dim(i + 1)?);
        if let Support::Bounded { hi, .. } = support {
            if i == hi {
                r = 0;
            }
        }
        dims.push(c);
        diffs.push(match diff_map.get(&i) {
            Some(m) => matrix_from_value(ring, r, c, m, &format!("$.diffs.{i}"))?,
            None => RingMatrix::zeros(ring, r, c),
        });
    }
    NComplex::new(n, ring, support, dims, diffs)
}

/// Pretty-printed canonical JSON with a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn parse_json(text: &str, path: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| err(path, format!("invalid JSON: {e}")))
}

pub fn complex_to_string(x: &NComplex) -> String {
    to_canonical_string(&complex_to_value(x))
}

pub fn complex_from_str(text: &str) -> Result<NComplex> {
    complex_from_value(&parse_json(text, "$")?)
}

pub fn chain_map_to_value(f: &ChainMapN) -> Value {
    let maps: Map<String, Value> = f
        .degrees()
        .map(|i| (i, f.map(i)))
        .filter(|(_, m)| m.rows() > 0 && m.cols() > 0)
        .map(|(i, m)| (i.to_string(), matrix_to_value(&m)))
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "chain_map",
        "source": complex_to_value(f.source()),
        "target": complex_to_value(f.target()),
        "maps": maps,
    })
}

/// Parse and validate a chain map document.
pub fn chain_map_from_value(v: &Value) -> Result<ChainMapN> {
    check_header(v)?;
    let x = complex_from_value(field(v, "source", "$")?)?;
    let y = complex_from_value(field(v, "target", "$")?)?;
    let raw = degree_map(v.get("maps"), "$.maps")?;
    let mut maps = BTreeMap::new();
    for (i, m) in raw {
        maps.insert(i, matrix_from_value(x.ring(), y.dim(i), x.dim(i), &m, &format!("$.maps.{i}"))?);
    }
    let period = x.period().zip(y.period()).map(|(p, q)| num_integer::lcm(p, q) as i64);
    ChainMapN::new(&x, &y, |i| {
        let key = period.map_or(i, |p| i.rem_euclid(p));
        maps.get(&key).cloned().unwrap_or_else(|| RingMatrix::zeros(x.ring(), y.dim(i), x.dim(i)))
    })
}

pub fn witness_to_value(w: &HomotopyWitness) -> Value {
    let s: Map<String, Value> = w
        .s
        .iter()
        .filter(|(_, m)| m.rows() > 0 && m.cols() > 0)
        .map(|(i, m)| (i.to_string(), matrix_to_value(m)))
        .collect();
    json!({"schema_version": SCHEMA_VERSION, "kind": "homotopy", "period": w.period, "s": s})
}

/// Parse a homotopy family between `x` and `y`.
pub fn witness_from_value(v: &Value, x: &NComplex, y: &NComplex, path: &str) -> Result<HomotopyWitness> {
    let n = x.order() as i64;
    let period = match v.get("period") {
        None | Some(Value::Null) => None,
        Some(p) => Some(as_u64(p, &format!("{path}.period"))? as usize),
    };
    let mut s = BTreeMap::new();
    for (i, m) in degree_map(v.get("s"), &format!("{path}.s"))? {
        s.insert(i, matrix_from_value(x.ring(), y.dim(i - n + 1), x.dim(i), &m, &format!("{path}.s.{i}"))?);
    }
    Ok(HomotopyWitness { s, period })
}

pub fn homology_to_value(h: &HomologyFingerprint) -> Value {
    let entries: Vec<Value> = h
        .nonzero()
        .map(|(&(i, r), q)| {
            let mut e = json!({"degree": i, "r": r, "dim": q.dim});
            if q.x_ranks.iter().any(|&k| k > 0) {
                e["x_ranks"] = json!(q.x_ranks);
            }
            e
        })
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "homology",
        "n": h.n,
        "period": h.period,
        "exact": h.is_zero(),
        "nonzero": entries,
    })
}

pub fn rep_complex_to_value(x: &RepComplex) -> Value {
    let mut terms = Map::new();
    let mut diffs = Map::new();
    for i in x.support().degrees() {
        let t = x.term(i);
        let arrows: Vec<Value> = (0..t.vertex_count().saturating_sub(1)).map(|v| matrix_to_value(t.arrow(v))).collect();
        terms.insert(i.to_string(), json!({"vdims": t.vdims(), "arrows": arrows}));
        let d = x.d(i);
        if d.iter().any(|m| m.rows() > 0 && m.cols() > 0) {
            diffs.insert(i.to_string(), Value::Array(d.iter().map(matrix_to_value).collect()));
        }
    }
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "rep_complex",
        "vertices": x.vertices(),
        "ring": ring_to_value(x.ring()),
        "support": support_to_value(x.support()),
        "terms": terms,
        "diffs": diffs,
    })
}

pub fn rep_chain_map_to_value(f: &RepChainMap) -> Value {
    let maps: Map<String, Value> =
        f.degrees().into_iter().map(|i| (i.to_string(), Value::Array(f.map(i).iter().map(matrix_to_value).collect()))).collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "rep_chain_map",
        "source": rep_complex_to_value(f.source()),
        "target": rep_complex_to_value(f.target()),
        "maps": maps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncomplex::tests::x_complex;

    #[test]
    fn round_trip_is_byte_identical() {
        let q = CoeffRing::Rationals;
        let a = RingMatrix::from_elems(q, 1, 1, vec![Elem::Rational(BigRational::new(6.into(), (-4).into()))]).unwrap();
        let x = NComplex::bounded(3, q, -1, vec![1, 1], vec![a]).unwrap();
        for c in [x, x_complex(), NComplex::disk(4, CoeffRing::PrimeField { p: 5 }, 2, 3, 2).unwrap()] {
            let s = complex_to_string(&c);
            let back = complex_from_str(&s).unwrap();
            assert_eq!(back, c);
            assert_eq!(complex_to_string(&back), s);
        }
    }

    #[test]
    fn normalizes_entries() {
        let text = r#"{"schema_version":1,"n":2,"ring":{"kind":"rationals"},"support":{"kind":"bounded","lo":0,"hi":1},
            "dims":{"0":1,"1":1},"diffs":{"0":[[[2,-4]]]}}"#;
        let x = complex_from_str(text).unwrap();
        assert_eq!(complex_to_value(&x)["diffs"]["0"], json!([[[-1, 2]]]));
        let gf = r#"{"schema_version":1,"n":2,"ring":"GF(3)","support":{"kind":"bounded","lo":0,"hi":1},
            "dims":{"0":1,"1":1},"diffs":{"0":[[-1]]}}"#;
        assert_eq!(complex_to_value(&complex_from_str(gf).unwrap())["diffs"]["0"], json!([[2]]));
    }

    #[test]
    fn located_errors() {
        let bad = r#"{"schema_version":1,"n":2,"ring":{"kind":"prime_field","p":2},"support":{"kind":"bounded","lo":0,"hi":2},
            "dims":{"0":1,"1":1,"2":1},"diffs":{"0":[[1]],"1":[[1]]}}"#;
        assert!(matches!(complex_from_str(bad), Err(Error::InvalidComplex { degree: 0, .. })));
        let shape = r#"{"schema_version":1,"n":2,"ring":{"kind":"prime_field","p":2},"support":{"kind":"bounded","lo":0,"hi":1},
            "dims":{"0":1,"1":1},"diffs":{"0":[[1,1]]}}"#;
        match complex_from_str(shape) {
            Err(Error::Document { path, .. }) => assert_eq!(path, "$.diffs.0[0]"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(complex_from_str("{"), Err(Error::Document { .. })));
    }

    #[test]
    fn chain_maps_round_trip() {
        let d = NComplex::disk(3, CoeffRing::PrimeField { p: 2 }, 1, 2, 1).unwrap();
        let f = ChainMapN::identity(&d);
        assert_eq!(chain_map_from_value(&chain_map_to_value(&f)).unwrap(), f);
    }
}
