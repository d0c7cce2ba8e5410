//! Machine-readable stdout payloads.

use bhbounds_core::BoundsRow;
use serde_json::{json, Value};

/// Digits in CSV tables.
pub const CSV_DIGITS: usize = 9;
/// Digits in JSON reports.
pub const JSON_DIGITS: usize = 12;

/// `x` with `digits` significant digits, `%g` style: trailing zeros dropped,
/// exponent notation outside `1e-4 <= |x| < 10^digits`.
pub fn format_sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_owned();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        format!("{}e{}", strip_zeros(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_owned()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `x` rounded to `digits` significant digits, for JSON output.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x.is_finite() {
        format_sig(x, digits)
            .parse()
            .expect("formatted float parses")
    } else {
        x
    }
}

/// JSON number rounded to [`JSON_DIGITS`]; non-finite values become `null`.
pub fn json_num(x: f64) -> Value {
    json!(round_sig(x, JSON_DIGITS))
}

pub const BOUNDS_HEADER: &str = "m,lower,upper,multilinear_lower,optimal_x";

pub fn bounds_csv(rows: &[BoundsRow]) -> String {
    let mut out = String::from(BOUNDS_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.m,
            format_sig(r.lower, CSV_DIGITS),
            format_sig(r.upper, CSV_DIGITS),
            format_sig(r.multilinear_lower, CSV_DIGITS),
            format_sig(r.optimal_x, CSV_DIGITS),
        ));
    }
    out
}

pub fn bounds_json(rows: &[BoundsRow]) -> String {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "m": r.m,
                "lower": json_num(r.lower),
                "upper": json_num(r.upper),
                "multilinear_lower": json_num(r.multilinear_lower),
                "optimal_x": json_num(r.optimal_x),
            })
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("plain data serializes");
    s.push('\n');
    s
}
