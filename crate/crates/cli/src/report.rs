//! JSON reports for each subcommand, and their plain-text rendering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Map, Value};

use hyplat::json::{
    algebraic_real_json, int_json, isometry_json, matrix_json, model_json, nf_elem_json, nf_vector_json,
    polynomial_json, rational_json, vector_json,
};
use hyplat::nef::{LeadingRays, PowerIteration};
use hyplat::spectral::{AuditResult, EntropyClass, SalemSplit, SpectralData};
use hyplat::stabilizer::{Dependence, FixedRay, Multiplier, MultiplierRecord, Uniqueness, WordScan};
use hyplat::surface::{Blowdown, IndexDiagnostic, Minimality, StabReport};
use hyplat::weyl::{CoxeterReport, NullOrder, TableRow};
use hyplat::zariski::{ProbeReport, ZariskiPair};
use hyplat::{AlgebraicReal, LatticeVector};

/// Digits used for the decimal enclosure of algebraic reals.
pub const DECIMAL_DIGITS: usize = 8;

/// `q` rounded towards minus infinity (or plus infinity when `up`) to
/// `digits` decimals.
pub fn decimal(q: &BigRational, digits: usize, up: bool) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = q * BigRational::from_integer(scale.clone());
    let n = if up { scaled.ceil().to_integer() } else { scaled.floor().to_integer() };
    let (int, frac) = n.abs().div_rem(&scale);
    let sign = if n.is_negative() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
}

/// `[lo, hi]` with `DECIMAL_DIGITS` decimals enclosing `a`.
pub fn decimal_enclosure(a: &AlgebraicReal) -> (String, String) {
    let width = BigRational::new(BigInt::from(1), num_traits::pow(BigInt::from(10), DECIMAL_DIGITS + 2));
    let r = a.clone().refined(&width);
    (decimal(r.lo(), DECIMAL_DIGITS, false), decimal(r.hi(), DECIMAL_DIGITS, true))
}

fn refine(a: &AlgebraicReal, tol: &BigRational) -> AlgebraicReal {
    a.clone().refined(tol)
}

fn lambda_json(a: &AlgebraicReal, tol: &BigRational) -> Value {
    let r = refine(a, tol);
    let mut v = algebraic_real_json(&r);
    let (lo, hi) = decimal_enclosure(&r);
    v["decimal"] = json!({ "lo": lo, "hi": hi });
    v
}

fn split_json(split: &SalemSplit) -> Value {
    json!({
        "salem_factor": polynomial_json(&split.salem_factor),
        "cyclotomic": split.cyclo_part.iter().map(|(k, m)| json!({"k": k.to_string(), "multiplicity": m.to_string()})).collect::<Vec<_>>(),
        "s": split.s_exponent.to_string(),
        "e": split.e_exponent.to_string(),
    })
}

pub fn entropy(class: &EntropyClass, tol: &BigRational) -> Value {
    match class {
        EntropyClass::Null => json!({ "class": "null" }),
        EntropyClass::Positive(l) => json!({ "class": "positive", "lambda": lambda_json(l, tol) }),
    }
}

pub fn salem(data: &SpectralData, audit: Option<&hyplat::Result<AuditResult>>, lehmer: Option<bool>, tol: &BigRational) -> Value {
    let mut m = Map::new();
    m.insert("class".into(), entropy(&data.class, tol)["class"].clone());
    m.insert("char_poly".into(), polynomial_json(&data.char_poly));
    m.insert("split".into(), split_json(&data.split));
    if let Some(l) = data.class.lambda() {
        m.insert("lambda".into(), lambda_json(l, tol));
    }
    if let Some(ok) = lehmer {
        m.insert("lehmer_check".into(), Value::Bool(ok));
    }
    if let Some(a) = audit {
        let s = match a {
            Ok(AuditResult::Verified) => "verified".to_string(),
            Ok(AuditResult::Unchecked) => "unchecked".to_string(),
            Err(e) => format!("failed: {e}"),
        };
        m.insert("irreducibility".into(), Value::String(s));
    }
    Value::Object(m)
}

pub fn leading(rays: &LeadingRays, tol: &BigRational) -> Value {
    let k = rays.plus.field();
    json!({
        "lambda": lambda_json(&rays.lambda, tol),
        "plus": nf_vector_json(&rays.plus),
        "minus": nf_vector_json(&rays.minus),
        "plus_approx": approx_list(&rays.plus.to_f64()),
        "minus_approx": approx_list(&rays.minus.to_f64()),
        "pair_plus_minus": nf_elem_json(k, &rays.plus.pair(&rays.minus).expect("same field")),
    })
}

// floats only ever appear as strings
fn approx_list(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format!("{x:.12e}"))).collect())
}

pub fn power_iteration(p: &PowerIteration) -> Value {
    let mut m = Map::new();
    m.insert("direction_approx".into(), approx_list(&p.direction));
    m.insert("iterations".into(), Value::String(p.iterations.to_string()));
    m.insert("residual_approx".into(), Value::String(format!("{:.3e}", p.residual)));
    if let Some(a) = p.angle_to_exact {
        m.insert("angle_to_exact_approx".into(), Value::String(format!("{a:.3e}")));
    }
    Value::Object(m)
}

pub fn zariski(z: &ZariskiPair) -> Value {
    let comps: Map<String, Value> = z.components.iter().map(|(n, a)| (n.clone(), rational_json(a))).collect();
    json!({
        "positive": vector_json(&z.positive),
        "negative": vector_json(&z.negative),
        "components": comps,
    })
}

pub fn probe(p: &ProbeReport) -> Value {
    json!({
        "trials": p.trials.to_string(),
        "unique": true,
        "decomposable": p.outcome.is_ok(),
    })
}

pub fn multiplier(rec: &MultiplierRecord, tol: &BigRational) -> Value {
    let (kind, value) = match &rec.alpha {
        Multiplier::One => ("one", Value::String("1".into())),
        Multiplier::Expanding(a) => ("expanding", lambda_json(a, tol)),
        Multiplier::Inverse(b) => ("inverse", lambda_json(b, tol)),
    };
    json!({
        "generator_id": rec.generator_id,
        "alpha_kind": kind,
        "alpha": value,
        "entropy_class": if rec.entropy_class.is_positive() { "positive" } else { "null" },
        "consistent": rec.is_consistent(),
    })
}

pub fn names(v: &[String]) -> Value {
    Value::Array(v.iter().map(|s| Value::String(s.clone())).collect())
}

pub fn minimality(m: &Minimality) -> Value {
    match m {
        Minimality::Minimal => json!({ "minimal": true }),
        Minimality::NotMinimal(s) => json!({ "minimal": false, "contractible": names(s) }),
    }
}

pub fn blowdown(b: &Blowdown, data: &SpectralData, tol: &BigRational) -> Value {
    json!({
        "model": model_json(&b.model),
        "isometry": isometry_json(&b.isometry),
        "basis": b.basis.iter().map(vector_json).collect::<Vec<_>>(),
        "lorentzian_basis": b.lorentzian_basis,
        "spectral": salem(data, None, data.class.lambda().map(hyplat::spectral::lehmer_check), tol),
    })
}

pub fn stab_report(r: &StabReport, diag: Option<&IndexDiagnostic>) -> Value {
    let mut m = Map::new();
    m.insert("stab_set".into(), names(&r.stab_set));
    if let Some(d) = &r.delta {
        let delta: Map<String, Value> = d.iter().map(|(n, a)| (n.clone(), rational_json(a))).collect();
        m.insert("delta".into(), Value::Object(delta));
    }
    if let Some(d) = &r.d_index {
        m.insert("d".into(), int_json(d));
    }
    if let Some(g) = &r.gcd {
        m.insert("gcd".into(), int_json(g));
    }
    m.insert("minus_two_extras".into(), names(&r.minus_two_extras));
    m.insert("pairing_violations".into(), names(&r.pairing_violations));
    if let Some(t) = &r.tree_conditions {
        m.insert(
            "tree_conditions".into(),
            json!({
                "all_at_most_minus_two": t.all_at_most_minus_two,
                "some_at_most_minus_three": t.some_at_most_minus_three,
            }),
        );
    }
    let mut warnings: Vec<Value> = r.warnings.iter().map(|w| Value::String(w.clone())).collect();
    if let Some(IndexDiagnostic::Warning(w)) = diag {
        warnings.push(Value::String(w.clone()));
    }
    m.insert("warnings".into(), Value::Array(warnings));
    if let Some(d) = diag {
        m.insert("index_diagnostic".into(), Value::String(if matches!(d, IndexDiagnostic::Ok) { "ok" } else { "warning" }.into()));
    }
    Value::Object(m)
}

pub fn coxeter(r: &CoxeterReport, tol: &BigRational) -> Value {
    let mut m = Map::new();
    m.insert("n".into(), Value::String(r.n.to_string()));
    m.insert("order".into(), Value::Array(r.order.iter().map(|i| Value::String(i.to_string())).collect()));
    m.insert("class".into(), Value::String(if r.lambda.is_some() { "positive" } else { "null" }.into()));
    m.insert("matrix".into(), matrix_json(r.element.matrix()));
    m.insert("char_poly".into(), polynomial_json(&r.char_poly));
    m.insert("split".into(), split_json(&r.split));
    if let Some(l) = &r.lambda {
        m.insert("lambda".into(), lambda_json(l, tol));
        m.insert("lehmer_check".into(), Value::Bool(hyplat::spectral::lehmer_check(l)));
    }
    if let Some(rays) = &r.leading {
        m.insert("leading".into(), leading(rays, tol));
    }
    if let Some(o) = &r.null_order {
        m.insert(
            "null_order".into(),
            match o {
                NullOrder::Finite(k) => json!({ "finite": k.to_string() }),
                NullOrder::Infinite { s, nilpotency_index } => {
                    json!({ "infinite": { "s": s.to_string(), "nilpotency_index": nilpotency_index.to_string() } })
                }
            },
        );
    }
    Value::Object(m)
}

pub fn table(rows: &[TableRow], tol: &BigRational) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            let mut m = Map::new();
            m.insert("n".into(), Value::String(r.n.to_string()));
            m.insert("class".into(), Value::String(if r.is_positive() { "positive" } else { "null" }.into()));
            if let Some(l) = &r.lambda {
                m.insert("lambda".into(), lambda_json(l, tol));
            }
            m.insert("salem_degree".into(), Value::String(r.salem_degree.to_string()));
            m.insert("s".into(), Value::String(r.s.to_string()));
            m.insert("e".into(), Value::String(r.e.to_string()));
            if let Some(ok) = r.lehmer_ok {
                m.insert("lehmer_check".into(), Value::Bool(ok));
            }
            Value::Object(m)
        })
        .collect();
    json!({ "rows": rows })
}

pub fn dependence(d: &Dependence, tol: &BigRational) -> Value {
    match d {
        Dependence::Generator { generator, exponents, bound } => json!({
            "dependent": true,
            "generator": lambda_json(generator, tol),
            "exponents": exponents.iter().map(|e| Value::String(e.to_string())).collect::<Vec<_>>(),
            "bound": bound.to_string(),
        }),
        Dependence::Independent(r) => json!({
            "dependent": false,
            "independent_pair": [r.i.to_string(), r.j.to_string()],
            "bound": r.bound.to_string(),
        }),
    }
}

pub fn fixed_ray(r: &FixedRay, scan: Option<&WordScan>, tol: &BigRational) -> Value {
    let mut m = Map::new();
    m.insert("ray".into(), vector_json(&r.ray));
    m.insert("fixed_dim".into(), Value::String(r.fixed_dim.to_string()));
    m.insert("finite_order_generators".into(), Value::Bool(r.finite_order_generators));
    match &r.uniqueness {
        Uniqueness::Certified => {
            m.insert("unique".into(), Value::Bool(true));
        }
        Uniqueness::NotUnique(others) => {
            m.insert("unique".into(), Value::Bool(false));
            m.insert("other_rays".into(), Value::Array(others.iter().map(vector_json).collect()));
        }
    }
    if let Some(s) = scan {
        m.insert("word_scan".into(), word_scan(s, tol));
    }
    Value::Object(m)
}

pub fn word_scan(s: &WordScan, tol: &BigRational) -> Value {
    let mut m = Map::new();
    m.insert("words_checked".into(), Value::String(s.words_checked.to_string()));
    match &s.first_positive {
        Some((w, l)) => {
            m.insert("positive_word".into(), Value::String(w.clone()));
            m.insert("lambda".into(), lambda_json(l, tol));
        }
        None => {
            m.insert("positive_word".into(), Value::Null);
        }
    }
    Value::Object(m)
}

pub fn average(v: &LatticeVector) -> Value {
    vector_json(v)
}

// ---- plain text

/// Readable rendering: algebraic reals become `[lo, hi] ≈ x`
/// and nested objects are flattened to `path: value` lines.
pub fn pretty(v: &Value) -> String {
    if let Some(rows) = v.get("rows").and_then(Value::as_array) {
        return pretty_table(rows);
    }
    let mut out = String::new();
    if v.get("n").is_some() && v.get("split").is_some() && v.get("order").is_some() {
        out.push_str(&pretty_table(std::slice::from_ref(&table_row_of(v))));
        out.push('\n');
    }
    flatten("", v, &mut out);
    out
}

fn table_row_of(v: &Value) -> Value {
    let mut m = Map::new();
    for key in ["n", "class", "lambda", "lehmer_check"] {
        if let Some(x) = v.get(key) {
            m.insert(key.into(), x.clone());
        }
    }
    let split = &v["split"];
    m.insert("s".into(), split["s"].clone());
    m.insert("e".into(), split["e"].clone());
    let degree = split["salem_factor"]["coeffs"].as_array().map_or(0, |c| c.len().saturating_sub(1));
    m.insert("salem_degree".into(), Value::String(if v.get("lambda").is_some() { degree } else { 0 }.to_string()));
    Value::Object(m)
}

fn approx_of(v: &Value) -> Option<f64> {
    let lo = parse_q(v.get("lo")?.as_str()?)?;
    let hi = parse_q(v.get("hi")?.as_str()?)?;
    ((lo + hi) / BigRational::from_integer(2.into())).to_f64()
}

fn parse_q(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((p, q)) => Some(BigRational::new(p.parse().ok()?, q.parse().ok()?)),
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

fn is_algebraic(v: &Value) -> bool {
    v.get("min_poly").is_some() && v.get("lo").is_some() && v.get("hi").is_some()
}

fn algebraic_text(v: &Value) -> String {
    let enclosure = match v.get("decimal") {
        Some(d) => format!("[{}, {}]", d["lo"].as_str().unwrap_or("?"), d["hi"].as_str().unwrap_or("?")),
        None => format!("[{}, {}]", v["lo"].as_str().unwrap_or("?"), v["hi"].as_str().unwrap_or("?")),
    };
    match approx_of(v) {
        Some(x) => format!("{enclosure} ≈ {x:.12}"),
        None => enclosure,
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn flatten(path: &str, v: &Value, out: &mut String) {
    match v {
        _ if is_algebraic(v) => out.push_str(&format!("{path}: {}\n", algebraic_text(v))),
        Value::Object(m) if m.contains_key("display") && m.contains_key("coeffs") => {
            out.push_str(&format!("{path}: {}\n", scalar_text(&m["display"])));
        }
        Value::Object(m) => {
            for (k, x) in m {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = a.iter().map(scalar_text).collect();
            let items = items.iter().map(|s| if path.ends_with("_approx") { format!("≈{s}") } else { s.clone() }).collect::<Vec<_>>();
            out.push_str(&format!("{path}: [{}]\n", items.join(", ")));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), x, out);
            }
        }
        _ => {
            let marker = if path.ends_with("_approx") { "≈" } else { "" };
            out.push_str(&format!("{path}: {marker}{}\n", scalar_text(v)));
        }
    }
}

fn pretty_table(rows: &[Value]) -> String {
    let header = ["n", "class", "lambda", "≈lambda", "deg", "s", "e", "lehmer"];
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let (interval, approx) = match r.get("lambda") {
                Some(l) if is_algebraic(l) => (
                    format!("[{}, {}]", l["decimal"]["lo"].as_str().unwrap_or("?"), l["decimal"]["hi"].as_str().unwrap_or("?")),
                    approx_of(l).map_or("-".into(), |x| format!("≈{x:.10}")),
                ),
                _ => ("-".into(), "-".into()),
            };
            vec![
                scalar_text(&r["n"]),
                scalar_text(&r["class"]),
                interval,
                approx,
                scalar_text(&r["salem_degree"]),
                scalar_text(&r["s"]),
                scalar_text(&r["e"]),
                r.get("lehmer_check").map_or("-".into(), scalar_text),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|c| body.iter().map(|r| r[c].chars().count()).chain([header[c].chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<String>| -> String {
        cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}", w = *w)).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    let mut out = line(header.iter().map(|s| s.to_string()).collect());
    out.push('\n');
    for r in body {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rounding() {
        let q = BigRational::new(BigInt::from(-7), BigInt::from(4));
        assert_eq!(decimal(&q, 1, false), "-1.8");
        assert_eq!(decimal(&q, 1, true), "-1.7");
        assert_eq!(decimal(&BigRational::new(BigInt::from(1), BigInt::from(3)), 4, true), "0.3334");
        assert_eq!(decimal(&BigRational::from_integer(0.into()), 2, false), "0.00");
    }

    #[test]
    fn lehmer_enclosure() {
        let (lo, hi) = decimal_enclosure(&hyplat::spectral::lehmer_number());
        assert_eq!((lo.as_str(), hi.as_str()), ("1.17628081", "1.17628082"));
    }
}
