//! Serde helpers: rationals as `"p/q"` strings, floats with 17 significant digits.

use serde::ser::SerializeSeq;
use serde::Serializer;

use crate::scalar::{format_rational, Rational};
use crate::RationalMatrix;

pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn ser_rationals<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&format_rational(r))?;
    }
    seq.end()
}

pub fn ser_opt_rationals<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser_rationals(v, s),
        None => s.serialize_none(),
    }
}

/// Matrices serialize as a list of rows.
pub fn ser_matrix<S: Serializer>(m: &RationalMatrix, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(m.rows()))?;
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(format_rational).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn ser_float<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_float(*x))
}

pub fn ser_floats<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&format_float(*x))?;
    }
    seq.end()
}
