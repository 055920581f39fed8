//! JSON encodings of rationals, parameter polynomials, matrices, series and
//! operator representations.

use std::collections::BTreeSet;

use opcalc_core::diffop::DiffOpRep;
use opcalc_core::{ParamPoly, Poly, PowerSeries, Rational, Ring, TruncMatrix};
use serde_json::{json, Map, Value};

use crate::error::CliError;

/// Coefficient rings the front end can work in.
pub trait CliRing: Ring {
    /// Lift a parsed literal; fails for symbolic literals in a numeric ring.
    fn lift(p: &ParamPoly) -> Result<Self, CliError>;
    fn to_param(&self) -> ParamPoly;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, CliError>;
    /// The `ring` field for a matrix with these entries.
    fn ring_label<'a>(entries: impl Iterator<Item = &'a Self>) -> String;
}

impl CliRing for Rational {
    fn lift(p: &ParamPoly) -> Result<Self, CliError> {
        p.as_constant()
            .ok_or_else(|| CliError::Usage(format!("`{p}` has parameters; use --ring params:<names>")))
    }

    fn to_param(&self) -> ParamPoly {
        ParamPoly::constant(self.clone())
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_fraction_string())
    }

    fn from_json(v: &Value) -> Result<Self, CliError> {
        match v {
            Value::String(s) => s.parse().map_err(|_| CliError::format(format!("bad rational `{s}`"))),
            Value::Number(n) if n.is_i64() => Ok(Rational::from(n.as_i64().expect("checked"))),
            other => Err(CliError::format(format!("expected a rational string, found {other}"))),
        }
    }

    fn ring_label<'a>(_: impl Iterator<Item = &'a Self>) -> String {
        "rational".into()
    }
}

impl CliRing for ParamPoly {
    fn lift(p: &ParamPoly) -> Result<Self, CliError> {
        Ok(p.clone())
    }

    fn to_param(&self) -> ParamPoly {
        self.clone()
    }

    fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(e, c)| json!({ "exp": e, "coef": c.to_fraction_string() }))
            .collect();
        json!({ "vars": self.vars(), "terms": terms })
    }

    fn from_json(v: &Value) -> Result<Self, CliError> {
        let obj = match v {
            Value::Object(o) => o,
            _ => return Rational::from_json(v).map(ParamPoly::constant),
        };
        let vars: Vec<String> = serde_json::from_value(obj.get("vars").cloned().unwrap_or(json!([])))?;
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        let raw = obj.get("terms").and_then(Value::as_array).ok_or_else(|| CliError::format("parameter polynomial needs `terms`"))?;
        let mut terms = Vec::with_capacity(raw.len());
        for t in raw {
            let exp: Vec<u32> = serde_json::from_value(t.get("exp").cloned().unwrap_or(Value::Null))?;
            if exp.len() != vars.len() {
                return Err(CliError::format("exponent vector length differs from `vars`"));
            }
            let coef = Rational::from_json(t.get("coef").unwrap_or(&Value::Null))?;
            terms.push((exp, coef));
        }
        Ok(ParamPoly::new(&names, terms))
    }

    fn ring_label<'a>(entries: impl Iterator<Item = &'a Self>) -> String {
        let mut names = BTreeSet::new();
        for e in entries {
            for (i, v) in e.vars().iter().enumerate() {
                if e.terms().any(|(exp, _)| exp[i] > 0) {
                    names.insert(v.clone());
                }
            }
        }
        format!("params:{}", names.into_iter().collect::<Vec<_>>().join(","))
    }
}

pub fn matrix_to_json<R: CliRing>(m: &TruncMatrix<R>) -> Value {
    let rows: Vec<Value> = m.rows().iter().map(|r| Value::Array(r.iter().map(R::to_json).collect())).collect();
    json!({
        "index": m.index_bound(),
        "valid_rows": m.valid_rows(),
        "ring": R::ring_label(m.rows().iter().flatten()),
        "rows": rows,
    })
}

/// A matrix read from JSON, in the ring its `ring` field names.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix {
    Rational(TruncMatrix<Rational>),
    Params(TruncMatrix<ParamPoly>),
}

pub fn matrix_from_json(v: &Value) -> Result<AnyMatrix, CliError> {
    let obj = v.as_object().ok_or_else(|| CliError::format("matrix must be a JSON object"))?;
    let ring = obj.get("ring").and_then(Value::as_str).unwrap_or("rational");
    if ring == "rational" {
        Ok(AnyMatrix::Rational(typed_matrix(obj)?))
    } else if ring.starts_with("params") {
        Ok(AnyMatrix::Params(typed_matrix(obj)?))
    } else {
        Err(CliError::format(format!("unknown ring `{ring}`")))
    }
}

pub fn typed_matrix<R: CliRing>(obj: &Map<String, Value>) -> Result<TruncMatrix<R>, CliError> {
    let index = obj.get("index").and_then(Value::as_i64).ok_or_else(|| CliError::format("matrix needs an integer `index`"))?;
    let rows = obj.get("rows").and_then(Value::as_array).ok_or_else(|| CliError::format("matrix needs `rows`"))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| CliError::format("each row must be an array"))?
                .iter()
                .map(R::from_json)
                .collect::<Result<Vec<R>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let m = TruncMatrix::from_rows(index, rows)?;
    if let Some(vr) = obj.get("valid_rows").and_then(Value::as_u64) {
        if vr as usize != m.valid_rows() {
            return Err(CliError::format(format!("`valid_rows` is {vr} but {} rows are given", m.valid_rows())));
        }
    }
    Ok(m)
}

pub fn series_to_json<R: CliRing>(s: &PowerSeries<R>) -> Value {
    json!({ "order": s.order(), "coeffs": s.coeffs().iter().map(R::to_json).collect::<Vec<_>>() })
}

pub fn series_from_json<R: CliRing>(v: &Value) -> Result<PowerSeries<R>, CliError> {
    let coeffs = v.get("coeffs").and_then(Value::as_array).ok_or_else(|| CliError::format("series needs `coeffs`"))?;
    let coeffs = coeffs.iter().map(R::from_json).collect::<Result<Vec<_>, _>>()?;
    if let Some(n) = v.get("order").and_then(Value::as_u64) {
        if n as usize != coeffs.len() {
            return Err(CliError::format("`order` differs from the number of coefficients"));
        }
    }
    Ok(PowerSeries::new(coeffs))
}

pub fn poly_to_json<R: CliRing>(p: &Poly<R>) -> Value {
    Value::Array(p.coeffs().iter().map(R::to_json).collect())
}

pub fn rep_to_json<R: CliRing>(rep: &DiffOpRep<R>) -> Value {
    json!({ "K": rep.len(), "ps": rep.ps().iter().map(poly_to_json).collect::<Vec<_>>() })
}

pub fn rep_from_json<R: CliRing>(v: &Value) -> Result<DiffOpRep<R>, CliError> {
    let ps = v.get("ps").and_then(Value::as_array).ok_or_else(|| CliError::format("representation needs `ps`"))?;
    let ps = ps
        .iter()
        .map(|p| {
            let cs = p.as_array().ok_or_else(|| CliError::format("each p must be a coefficient array"))?;
            Ok(Poly::new(cs.iter().map(R::from_json).collect::<Result<Vec<_>, CliError>>()?))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    if let Some(k) = v.get("K").and_then(Value::as_u64) {
        if k as usize != ps.len() {
            return Err(CliError::format("`K` differs from the number of polynomials"));
        }
    }
    Ok(DiffOpRep::new(ps))
}
