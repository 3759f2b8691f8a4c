//! One evaluated point and its CSV / JSON / text renderings.

use std::f64::consts::LN_10;

use meixner_core::numerics::{LogComplex, ScaledReal};
use serde_json::{json, Value as Json};

pub const CSV_HEADER: &str =
    "z_re,z_im,region,formula,exact_sign,exact_log10,asym_sign,asym_log10,rel_err,err_estimate";

/// A polynomial value: real values keep their exact decimal digits.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Real(ScaledReal),
    Complex(LogComplex),
}

impl Value {
    /// `None` for complex values.
    pub fn sign(&self) -> Option<i8> {
        match self {
            Value::Real(r) => Some(r.sign),
            Value::Complex(_) => None,
        }
    }

    /// log₁₀ of the modulus.
    pub fn log10_abs(&self) -> f64 {
        match self {
            Value::Real(r) => r.log10_mag,
            Value::Complex(c) => c.log_mag / LN_10,
        }
    }

    pub fn to_log_complex(&self) -> LogComplex {
        match self {
            Value::Real(r) => r.to_log_complex(),
            Value::Complex(c) => *c,
        }
    }

    /// Real and imaginary parts as scaled reals.
    pub fn parts(&self) -> (ScaledReal, ScaledReal) {
        match self {
            Value::Real(r) => (r.clone(), ScaledReal::zero()),
            Value::Complex(c) => (part(c, c.phase.cos()), part(c, c.phase.sin())),
        }
    }

    /// |self/reference − 1|.
    pub fn rel_diff(&self, reference: &Value) -> f64 {
        match (self, reference) {
            (Value::Real(a), Value::Real(b)) => a.rel_diff(b),
            _ => self.to_log_complex().rel_diff(&reference.to_log_complex()),
        }
    }

    pub fn display(&self, digits: usize) -> String {
        match self {
            Value::Real(r) => r.format_sig(digits),
            Value::Complex(_) => {
                let (re, im) = self.parts();
                let sep = if im.sign < 0 { "-" } else { "+" };
                let im_abs = ScaledReal {
                    sign: im.sign.abs(),
                    ..im
                };
                format!(
                    "{} {sep} {}i",
                    re.format_sig(digits),
                    im_abs.format_sig(digits)
                )
            }
        }
    }
}

fn part(c: &LogComplex, factor: f64) -> ScaledReal {
    if factor == 0.0 || c.is_zero() {
        return ScaledReal::zero();
    }
    let lc = LogComplex {
        log_mag: c.log_mag + factor.abs().ln(),
        phase: if factor < 0.0 {
            std::f64::consts::PI
        } else {
            0.0
        },
    };
    lc.to_scaled_real(1.0)
        .unwrap_or_else(|_| ScaledReal::zero())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonRow {
    pub z_re: f64,
    pub z_im: f64,
    /// The input as given, e.g. `0.171` or `2,0.5`.
    pub z_text: String,
    pub region: String,
    pub formula: String,
    pub exact: Option<Value>,
    pub asym: Option<Value>,
    pub rel_err: Option<f64>,
    pub err_estimate: Option<f64>,
    pub warnings: Vec<String>,
}

/// Rounds to 15 significant digits.
pub fn sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn num(x: f64) -> Json {
    if x.is_finite() {
        json!(sig15(x))
    } else {
        Json::Null
    }
}

fn opt_num(x: Option<f64>) -> Json {
    x.map(num).unwrap_or(Json::Null)
}

/// `{sign, mantissa, exponent}` with a 15-digit mantissa.
pub fn scaled_json(r: &ScaledReal) -> Json {
    if r.sign == 0 {
        return json!({"sign": 0, "mantissa": 0.0, "exponent": 0});
    }
    let s = r.format_sig(15);
    let (m, e) = s.split_once('e').unwrap_or((&s, "0"));
    let m: f64 = m.parse().unwrap_or(f64::NAN);
    let e: i64 = e.parse().unwrap_or(0);
    json!({"sign": r.sign, "mantissa": m.abs(), "exponent": e})
}

fn value_json(v: &Option<Value>) -> Json {
    match v {
        None => Json::Null,
        Some(v) => {
            let (re, im) = v.parts();
            json!({
                "kind": if matches!(v, Value::Real(_)) { "real" } else { "complex" },
                "re": scaled_json(&re),
                "im": scaled_json(&im),
                "log10_abs": num(v.log10_abs()),
                "phase": num(v.to_log_complex().phase),
            })
        }
    }
}

fn csv_num(x: Option<f64>) -> String {
    match x {
        Some(x) if x.is_finite() => format!("{}", sig15(x)),
        Some(x) => format!("{x}"),
        None => String::new(),
    }
}

fn csv_value(v: &Option<Value>) -> (String, String) {
    match v {
        None => (String::new(), String::new()),
        Some(v) => (
            v.sign().map(|s| s.to_string()).unwrap_or_default(),
            csv_num(Some(v.log10_abs())),
        ),
    }
}

impl ComparisonRow {
    /// One CSV line matching [`CSV_HEADER`]. Complex values leave the sign empty.
    pub fn to_csv(&self) -> String {
        let (es, el) = csv_value(&self.exact);
        let (as_, al) = csv_value(&self.asym);
        format!(
            "{},{},{},{},{es},{el},{as_},{al},{},{}",
            csv_num(Some(self.z_re)),
            csv_num(Some(self.z_im)),
            self.region,
            self.formula,
            csv_num(self.rel_err),
            csv_num(self.err_estimate),
        )
    }

    pub fn to_json(&self) -> Json {
        json!({
            "z": {"re": num(self.z_re), "im": num(self.z_im), "input": self.z_text},
            "region": self.region,
            "formula": self.formula,
            "exact": value_json(&self.exact),
            "asym": value_json(&self.asym),
            "rel_err": opt_num(self.rel_err),
            "err_estimate": opt_num(self.err_estimate),
            "warnings": self.warnings,
        })
    }

    pub fn to_text(&self) -> String {
        let show = |v: &Option<Value>| {
            v.as_ref()
                .map(|v| v.display(6))
                .unwrap_or_else(|| "-".into())
        };
        let show_num = |x: Option<f64>| x.map(|x| format!("{x:.3e}")).unwrap_or_else(|| "-".into());
        let mut s = format!(
            "z            {}\nregion       {}\nformula      {}\nexact        {}\nasym         {}\nrel_err      {}\nerr_estimate {}\n",
            self.z_text,
            self.region,
            self.formula,
            show(&self.exact),
            show(&self.asym),
            show_num(self.rel_err),
            show_num(self.err_estimate),
        );
        for w in &self.warnings {
            s.push_str(&format!("warning      {w}\n"));
        }
        s
    }
}
