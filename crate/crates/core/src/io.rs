//! Canonical JSON and text forms, and a small polynomial parser.
//!
//! JSON objects have sorted keys, rationals are "p/q" strings and index lists
//! are 1-based. Exponent vectors are written as plain arrays.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chart::SymplecticChart;
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::exterior::{self, Form};
use crate::fedosov::{FedosovData, GaugeOperator, OmegaTerm};
use crate::hh::{BarChain, KoszulChain, PsiElement};
use crate::linear::LinComb;
use crate::multi::{self, Exps};
use crate::scalar::{fmt_q, parse_q, Q};
use crate::weyl::{FKey, FormWeyl};
use crate::xpoly::{HbarScalar, XPoly};

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct PolyTerm {
    pub coeff: String,
    pub exps: Vec<u8>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct ChristoffelEntry {
    pub upper: usize,
    pub lower: [usize; 2],
    pub poly: Vec<PolyTerm>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct FormEntry {
    pub indices: [usize; 2],
    pub poly: Vec<PolyTerm>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct OmegaEntry {
    pub hbar_power: i32,
    pub form: Vec<FormEntry>,
}

/// The on-disk form of `FedosovData`.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct FedosovDataJson {
    pub dim: usize,
    pub order: i32,
    pub omega_lower: Vec<Vec<Vec<PolyTerm>>>,
    pub omega_upper: Vec<Vec<Vec<PolyTerm>>>,
    #[serde(default)]
    pub christoffel: Vec<ChristoffelEntry>,
    #[serde(rename = "Omega", default)]
    pub omega: Vec<OmegaEntry>,
}

/// Serializes any value through `serde_json::Value`, which keeps object keys sorted.
pub fn canonical_string(v: &Value) -> String {
    serde_json::to_string(v).expect("json values always serialize")
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

pub fn poly_to_terms(p: &XPoly) -> Vec<PolyTerm> {
    p.terms.iter().map(|(e, c)| PolyTerm { coeff: fmt_q(c), exps: e.to_vec() }).collect()
}

pub fn poly_from_terms(terms: &[PolyTerm], dim: usize) -> Result<XPoly> {
    let mut t = LinComb::new();
    for term in terms {
        if term.exps.len() != dim {
            return Err(schema(format!("exponent vector {:?} has length {}, expected {dim}", term.exps, term.exps.len())));
        }
        let c = parse_q(&term.coeff).map_err(|_| schema(format!("bad rational {:?}", term.coeff)))?;
        t.add_term(term.exps.iter().copied().collect::<Exps>(), c);
    }
    Ok(XPoly { dim, terms: t })
}

fn matrix_to_json(m: &[Vec<XPoly>]) -> Vec<Vec<Vec<PolyTerm>>> {
    m.iter().map(|r| r.iter().map(poly_to_terms).collect()).collect()
}

fn matrix_from_json(m: &[Vec<Vec<PolyTerm>>], dim: usize, name: &str) -> Result<Vec<Vec<XPoly>>> {
    if m.len() != dim || m.iter().any(|r| r.len() != dim) {
        return Err(schema(format!("{name} must be a {dim}x{dim} matrix")));
    }
    m.iter().map(|r| r.iter().map(|p| poly_from_terms(p, dim)).collect()).collect()
}

fn check_index(i: usize, dim: usize, what: &str) -> Result<usize> {
    if i == 0 || i > dim {
        return Err(schema(format!("{what} index {i} out of range 1..={dim}")));
    }
    Ok(i - 1)
}

impl FedosovDataJson {
    pub fn from_data(d: &FedosovData) -> Self {
        let c = &d.chart;
        let mut christoffel = Vec::new();
        for (j, mj) in c.christoffel.iter().enumerate() {
            for (i, row) in mj.iter().enumerate() {
                for (k, p) in row.iter().enumerate() {
                    if !p.is_zero() {
                        christoffel.push(ChristoffelEntry { upper: j + 1, lower: [i + 1, k + 1], poly: poly_to_terms(p) });
                    }
                }
            }
        }
        let omega = d
            .omega
            .iter()
            .map(|t| OmegaEntry {
                hbar_power: t.hbar_power,
                form: t
                    .form
                    .iter()
                    .map(|((i, j), p)| FormEntry { indices: [i + 1, j + 1], poly: poly_to_terms(p) })
                    .collect(),
            })
            .collect();
        Self {
            dim: c.dim,
            order: d.order,
            omega_lower: matrix_to_json(&c.omega_lower),
            omega_upper: matrix_to_json(&c.omega_upper),
            christoffel,
            omega,
        }
    }

    /// Builds and validates the data.
    pub fn to_data(&self) -> Result<FedosovData> {
        let n = self.dim;
        if n == 0 || n % 2 == 1 {
            return Err(Error::OddDimension(n));
        }
        if n > 16 {
            return Err(schema("dimension above 16 is not supported"));
        }
        let lower = matrix_from_json(&self.omega_lower, n, "omega_lower")?;
        let upper = matrix_from_json(&self.omega_upper, n, "omega_upper")?;
        let mut gamma = vec![vec![vec![XPoly::zero(n); n]; n]; n];
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.christoffel {
            let j = check_index(e.upper, n, "christoffel upper")?;
            let i = check_index(e.lower[0], n, "christoffel lower")?;
            let k = check_index(e.lower[1], n, "christoffel lower")?;
            if !seen.insert((j, i, k)) {
                return Err(schema(format!("duplicate christoffel entry Gamma^{}_{{{}{}}}", j + 1, i + 1, k + 1)));
            }
            gamma[j][i][k] = poly_from_terms(&e.poly, n)?;
        }
        let mut omega = Vec::new();
        for t in &self.omega {
            let mut form = Vec::new();
            for f in &t.form {
                let i = check_index(f.indices[0], n, "Omega form")?;
                let j = check_index(f.indices[1], n, "Omega form")?;
                form.push(((i, j), poly_from_terms(&f.poly, n)?));
            }
            omega.push(OmegaTerm { hbar_power: t.hbar_power, form });
        }
        let chart = SymplecticChart::new_unchecked(lower, upper, gamma)?;
        FedosovData::new(chart, omega, self.order)
    }
}

pub fn fedosov_data_from_str(s: &str) -> Result<FedosovData> {
    let j: FedosovDataJson = serde_json::from_str(s).map_err(|e| schema(e.to_string()))?;
    j.to_data()
}

pub fn fedosov_data_to_json(d: &FedosovData) -> Value {
    serde_json::to_value(FedosovDataJson::from_data(d)).expect("serializable")
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct GaugeTerm {
    pub deriv: Vec<u8>,
    pub poly: Vec<PolyTerm>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct GaugeEntry {
    pub hbar_power: i32,
    pub terms: Vec<GaugeTerm>,
}

/// Reads id + sum hbar^k c(x) d^alpha from `[{"hbar_power", "terms": [{"deriv", "poly"}]}]`.
pub fn gauge_from_str(s: &str, dim: usize) -> Result<GaugeOperator> {
    let entries: Vec<GaugeEntry> = serde_json::from_str(s).map_err(|e| schema(e.to_string()))?;
    let mut terms: BTreeMap<i32, BTreeMap<Exps, XPoly>> = BTreeMap::new();
    for e in entries {
        for t in e.terms {
            if t.deriv.len() != dim {
                return Err(schema(format!("deriv {:?} must have length {dim}", t.deriv)));
            }
            let p = poly_from_terms(&t.poly, dim)?;
            let slot = terms.entry(e.hbar_power).or_default().entry(t.deriv.iter().copied().collect()).or_insert_with(|| XPoly::zero(dim));
            *slot = slot.add(&p);
        }
    }
    GaugeOperator::new(terms)
}

pub fn gauge_to_json(g: &GaugeOperator) -> Value {
    let entries: Vec<GaugeEntry> = g
        .terms
        .iter()
        .map(|(k, m)| GaugeEntry {
            hbar_power: *k,
            terms: m.iter().map(|(a, p)| GaugeTerm { deriv: a.to_vec(), poly: poly_to_terms(p) }).collect(),
        })
        .collect();
    serde_json::to_value(entries).expect("serializable")
}

fn index_list(s: Form) -> Vec<usize> {
    exterior::indices(s).into_iter().map(|i| i + 1).collect()
}

fn slot_list(e: &[u8]) -> Vec<usize> {
    multi::to_index_list(e)
}

pub fn weyl_to_json(a: &FormWeyl) -> Value {
    let mut rows: Vec<(i32, Exps, Exps, Form, &Q)> =
        a.terms.iter().map(|(k, c)| (k.hbar, k.y.clone(), k.x.clone(), k.form, c)).collect();
    rows.sort_by(|p, q| (p.0, &p.1, &p.2, p.3).cmp(&(q.0, &q.1, &q.2, q.3)));
    let terms: Vec<Value> = rows
        .into_iter()
        .map(|(h, y, x, f, c)| json!({"coeff": fmt_q(c), "hbar": h, "y": y.to_vec(), "x": x.to_vec(), "dx": index_list(f)}))
        .collect();
    json!({"dim": a.dim, "order": a.order, "terms": terms})
}

pub fn weyl_from_json(v: &Value) -> Result<FormWeyl> {
    let dim = v["dim"].as_u64().ok_or_else(|| schema("missing dim"))? as usize;
    let order = v["order"].as_i64().ok_or_else(|| schema("missing order"))? as i32;
    let terms = v["terms"].as_array().ok_or_else(|| schema("missing terms"))?;
    let exps = |t: &Value, key: &str| -> Result<Exps> {
        let arr = t[key].as_array().ok_or_else(|| schema(format!("missing {key}")))?;
        if arr.len() != dim {
            return Err(schema(format!("{key} must have length {dim}")));
        }
        arr.iter().map(|e| e.as_u64().map(|e| e as u8).ok_or_else(|| schema(format!("bad {key}")))).collect()
    };
    let mut out = LinComb::new();
    for t in terms {
        let coeff = parse_q(t["coeff"].as_str().ok_or_else(|| schema("missing coeff"))?)?;
        let hbar = t["hbar"].as_i64().ok_or_else(|| schema("missing hbar"))? as i32;
        let idx: Vec<usize> = match t.get("dx") {
            Some(d) => d
                .as_array()
                .ok_or_else(|| schema("bad dx"))?
                .iter()
                .map(|i| i.as_u64().map(|i| i as usize).ok_or_else(|| schema("bad dx index")))
                .collect::<Result<_>>()?,
            None => Vec::new(),
        };
        let idx0: Vec<usize> = idx.iter().map(|&i| check_index(i, dim, "dx")).collect::<Result<_>>()?;
        let (form, odd) = exterior::from_indices(&idx0).ok_or_else(|| schema("repeated dx index"))?;
        let c = if odd { -coeff } else { coeff };
        out.add_term(FKey { form, hbar, y: exps(t, "y")?, x: exps(t, "x")? }, c);
    }
    Ok(FormWeyl::from_terms(dim, order, out))
}

pub fn cochain_to_json(p: &Cochain) -> Value {
    let mut rows: Vec<(i32, Exps, Exps, Form, Vec<Vec<usize>>, &Q)> = p
        .terms
        .iter()
        .map(|(k, c)| (k.hbar, k.y.clone(), k.x.clone(), k.form, k.slots.iter().map(|s| slot_list(s)).collect(), c))
        .collect();
    rows.sort_by(|a, b| (a.0, &a.1, &a.2, a.3, &a.4).cmp(&(b.0, &b.1, &b.2, b.3, &b.4)));
    let terms: Vec<Value> = rows
        .into_iter()
        .map(|(h, y, x, f, s, c)| {
            let slots: Vec<Vec<usize>> = s.into_iter().map(|l| l.into_iter().map(|i| i + 1).collect()).collect();
            json!({"coeff": fmt_q(c), "hbar": h, "y": y.to_vec(), "x": x.to_vec(), "dx": index_list(f), "slots": slots})
        })
        .collect();
    json!({"dim": p.dim, "order": p.order, "cap": p.cap, "arity": p.arity, "terms": terms})
}

pub fn bar_to_json(b: &BarChain) -> Value {
    let terms: Vec<Value> = b
        .terms
        .iter()
        .map(|(k, c)| {
            let copies: Vec<Vec<u8>> = k.copies.iter().map(|e| e.to_vec()).collect();
            json!({"coeff": fmt_q(c), "hbar": k.hbar, "copies": copies})
        })
        .collect();
    json!({"dim": b.dim, "m": b.m, "order": b.order, "terms": terms})
}

pub fn koszul_to_json(a: &KoszulChain) -> Value {
    let terms: Vec<Value> = a
        .terms
        .iter()
        .map(|(k, c)| json!({"coeff": fmt_q(c), "hbar": k.hbar, "y1": k.y1.to_vec(), "y2": k.y2.to_vec(), "c": index_list(k.c)}))
        .collect();
    json!({"dim": a.dim, "m": a.m, "order": a.order, "terms": terms})
}

pub fn psi_to_json(a: &PsiElement) -> Value {
    let terms: Vec<Value> = a
        .terms
        .iter()
        .map(|(k, c)| json!({"coeff": fmt_q(c), "hbar": k.hbar, "y": k.y.to_vec(), "psi": index_list(k.psi)}))
        .collect();
    json!({"dim": a.dim, "order": a.order, "terms": terms})
}

pub fn hbar_scalar_to_json(s: &HbarScalar) -> Value {
    let terms: Vec<Value> = s.terms.iter().map(|(k, c)| json!({"coeff": fmt_q(c), "hbar": k})).collect();
    json!({ "terms": terms })
}

fn power(name: &str, k: i64) -> String {
    if k == 1 {
        name.to_string()
    } else {
        format!("{name}^{k}")
    }
}

fn vars(prefix: &str, e: &[u8]) -> Vec<String> {
    e.iter()
        .enumerate()
        .filter(|(_, &p)| p > 0)
        .map(|(i, &p)| power(&format!("{prefix}{}", i + 1), p as i64))
        .collect()
}

/// Joins signed terms "c m" into "a + b - c".
fn join_terms(terms: Vec<(Q, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (c, mono)) in terms.into_iter().enumerate() {
        let neg = c < Q::from_integer(0.into());
        let abs = if neg { -c } else { c };
        let body = match (abs == Q::from_integer(1.into()), mono.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => mono,
            (false, true) => fmt_q(&abs),
            (false, false) => format!("{} {mono}", fmt_q(&abs)),
        };
        if n == 0 {
            out.push_str(if neg { "-" } else { "" });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

/// Text form of a Weyl-valued form, e.g. "x1*x2 + 1/2 hbar".
pub fn fmt_weyl(a: &FormWeyl) -> String {
    let mut rows: Vec<(&FKey, &Q)> = a.terms.iter().collect();
    rows.sort_by(|(p, _), (q, _)| {
        let deg = |k: &FKey| multi::degree(&k.x) + multi::degree(&k.y);
        (p.hbar, std::cmp::Reverse(deg(p)), std::cmp::Reverse(&p.x), std::cmp::Reverse(&p.y), p.form)
            .cmp(&(q.hbar, std::cmp::Reverse(deg(q)), std::cmp::Reverse(&q.x), std::cmp::Reverse(&q.y), q.form))
    });
    let terms = rows
        .into_iter()
        .map(|(k, c)| {
            let mut f = Vec::new();
            if k.hbar != 0 {
                f.push(power("hbar", k.hbar as i64));
            }
            f.extend(vars("x", &k.x));
            f.extend(vars("y", &k.y));
            f.extend(exterior::indices(k.form).into_iter().map(|i| format!("dx{}", i + 1)));
            (c.clone(), f.join("*"))
        })
        .collect();
    join_terms(terms)
}

/// Text form of a cochain, e.g. "hbar^-1 y1^2 d2"; slots are separated by " | ".
pub fn fmt_cochain(p: &Cochain) -> String {
    let mut rows: Vec<_> = p.terms.iter().collect();
    rows.sort_by(|(a, _), (b, _)| (a.hbar, &a.slots, &a.y, &a.x, a.form).cmp(&(b.hbar, &b.slots, &b.y, &b.x, b.form)));
    let terms = rows
        .into_iter()
        .map(|(k, c)| {
            let mut f = Vec::new();
            if k.hbar != 0 {
                f.push(power("hbar", k.hbar as i64));
            }
            f.extend(vars("x", &k.x));
            f.extend(vars("y", &k.y));
            f.extend(exterior::indices(k.form).into_iter().map(|i| format!("dx{}", i + 1)));
            let slots: Vec<String> = k
                .slots
                .iter()
                .map(|s| {
                    let d = vars("d", s);
                    if d.is_empty() {
                        "1".to_string()
                    } else {
                        d.join(" ")
                    }
                })
                .collect();
            if !slots.is_empty() {
                f.push(slots.join(" | "));
            }
            (c.clone(), f.join(" "))
        })
        .collect();
    join_terms(terms)
}

pub fn fmt_hbar_scalar(s: &HbarScalar) -> String {
    join_terms(s.terms.iter().map(|(k, c)| (c.clone(), if *k == 0 { String::new() } else { power("hbar", *k as i64) })).collect())
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Q),
    Ident(String),
    Int(i64),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let bad = |m: String| Error::Parse(m);
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '/') {
                i += 1;
            }
            let text: String = cs[st..i].iter().collect();
            if matches!(out.last(), Some(Tok::Op('^'))) {
                out.push(Tok::Int(text.parse().map_err(|_| bad(format!("bad exponent {text}")))?));
            } else {
                out.push(Tok::Num(parse_q(&text)?));
            }
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*^".contains(c) {
            if c == '-' && matches!(out.last(), Some(Tok::Op('^'))) {
                let st = i;
                i += 1;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = cs[st..i].iter().collect();
                out.push(Tok::Int(text.parse().map_err(|_| bad(format!("bad exponent {text}")))?));
                continue;
            }
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(bad(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

/// Parses a polynomial in x1..xn, y1..yn and hbar (negative hbar powers allowed),
/// e.g. "x1*x2 + 1/2 hbar" or "-3 hbar^-1 y2^2".
pub fn parse_weyl(s: &str, dim: usize, order: i32) -> Result<FormWeyl> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut terms: BTreeMap<FKey, Q> = BTreeMap::new();
    let mut i = 0;
    let one = Q::from_integer(1.into());
    loop {
        let mut coeff = one.clone();
        if let Some(Tok::Op(c @ ('+' | '-'))) = toks.get(i) {
            if *c == '-' {
                coeff = -coeff;
            }
            i += 1;
        } else if i > 0 {
            return Err(Error::Parse("expected + or -".into()));
        }
        let mut key = FKey { form: 0, hbar: 0, y: multi::zeros(dim), x: multi::zeros(dim) };
        let mut factors = 0;
        while let Some(t) = toks.get(i) {
            match t {
                Tok::Op('*') if factors > 0 => {
                    i += 1;
                    continue;
                }
                Tok::Num(q) => coeff *= q,
                Tok::Ident(name) => {
                    let mut exp = 1i64;
                    if let (Some(Tok::Op('^')), Some(Tok::Int(k))) = (toks.get(i + 1), toks.get(i + 2)) {
                        exp = *k;
                        i += 2;
                    }
                    if name == "hbar" {
                        key.hbar += exp as i32;
                    } else {
                        let (v, idx) = name.split_at(1);
                        let idx: usize = idx.parse().map_err(|_| Error::Parse(format!("unknown variable {name}")))?;
                        if idx == 0 || idx > dim || !(v == "x" || v == "y") {
                            return Err(Error::Parse(format!("unknown variable {name}")));
                        }
                        if exp < 0 {
                            return Err(Error::Parse(format!("negative power of {name}")));
                        }
                        let slot = if v == "x" { &mut key.x } else { &mut key.y };
                        slot[idx - 1] += exp as u8;
                    }
                }
                _ => break,
            }
            factors += 1;
            i += 1;
        }
        if factors == 0 {
            return Err(Error::Parse("expected a term".into()));
        }
        *terms.entry(key).or_insert_with(|| Q::from_integer(0.into())) += coeff;
        if i >= toks.len() {
            break;
        }
    }
    Ok(FormWeyl::from_terms(dim, order, terms.into_iter().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qf;

    #[test]
    fn text_round_trip() {
        let a = parse_weyl("x1*x2 + 1/2 hbar", 2, 6).unwrap();
        assert_eq!(fmt_weyl(&a), "x1*x2 + 1/2 hbar");
        let b = parse_weyl("-3 hbar^-1 y2^2 - x1", 2, 6).unwrap();
        assert_eq!(fmt_weyl(&b), "-3 hbar^-1*y2^2 - x1");
        assert!(parse_weyl("x3", 2, 6).is_err());
        assert!(parse_weyl("x1 +", 2, 6).is_err());
    }

    #[test]
    fn cochain_text() {
        let c = Cochain::with_slots(&parse_weyl("hbar^-1 y1^2", 2, 6).unwrap(), &[multi::unit(2, 1)], 2);
        assert_eq!(fmt_cochain(&c), "hbar^-1 y1^2 d2");
    }

    #[test]
    fn fedosov_data_round_trip() {
        let d = FedosovData::new(
            SymplecticChart::flat(2),
            vec![OmegaTerm { hbar_power: 1, form: vec![((0, 1), XPoly::constant(2, qf(1, 2)))] }],
            6,
        )
        .unwrap();
        let j = canonical_string(&fedosov_data_to_json(&d));
        let back = fedosov_data_from_str(&j).unwrap();
        assert_eq!(back, d);
        assert_eq!(canonical_string(&fedosov_data_to_json(&back)), j);
    }

    #[test]
    fn weyl_json_round_trip() {
        let a = parse_weyl("x1*y2 + 2/3 hbar y1", 2, 6).unwrap().wedge_dx_left(1);
        let v = weyl_to_json(&a);
        assert_eq!(weyl_from_json(&v).unwrap(), a);
    }

    #[test]
    fn gauge_round_trip() {
        let g = gauge_from_str(r#"[{"hbar_power": 1, "terms": [{"deriv": [1, 0], "poly": [{"coeff": "1/2", "exps": [0, 1]}]}]}]"#, 2).unwrap();
        let back = gauge_from_str(&canonical_string(&gauge_to_json(&g)), 2).unwrap();
        assert_eq!(back, g);
        assert!(gauge_from_str(r#"[{"hbar_power": 0, "terms": [{"deriv": [1, 0], "poly": [{"coeff": "1", "exps": [0, 0]}]}]}]"#, 2).is_err());
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(fedosov_data_from_str("{"), Err(Error::Schema(_))));
        assert!(matches!(fedosov_data_from_str(r#"{"dim": 2}"#), Err(Error::Schema(_))));
    }
}
