//! JSON and text rendering shared by all commands.

use serde::Serialize;
use serde_json::Value;

use crate::CliError;

/// Significant digits kept for floats in JSON reports.
pub const SIGNIFICANT_DIGITS: usize = 15;

/// Rounds every float in `v` to [`SIGNIFICANT_DIGITS`] significant digits.
/// Integers are left alone.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(f) = n.as_f64() {
                *v = Value::from(round_sig(f));
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn round_sig(f: f64) -> f64 {
    if !f.is_finite() || f == 0.0 {
        return f;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, f)
        .parse()
        .unwrap_or(f)
}

/// Serializes `report` with rounded floats and sorted keys.
pub fn report_json<T: Serialize>(report: &T) -> Result<String, CliError> {
    let mut v = serde_json::to_value(report).map_err(|e| CliError::Parse(e.to_string()))?;
    round_floats(&mut v);
    json_string(&v)
}

pub fn json_string(v: &Value) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Fixed ten-decimal rendering; values that round to zero print without a
/// sign.
pub fn fixed(f: f64) -> String {
    let s = format!("{f:.10}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// Right-aligned columns of [`fixed`] values.
pub fn matrix_table(rows: &[Vec<f64>]) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|&c| fixed(c)).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str("  ");
        out.push_str(&line.join("  "));
        out.push('\n');
    }
    out
}

pub fn index_list(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("[{}]", items.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_fifteen_digits() {
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333333);
        assert_eq!(round_sig(-1.0 / 7.0), -0.142857142857143);
        assert_eq!(round_sig(0.0), 0.0);
        assert_eq!(round_sig(-1e-300), -1e-300);
    }

    #[test]
    fn rounded_json_reparses_to_itself() {
        let mut v = serde_json::json!({"b": [0.1, 1.0 / 7.0, 3], "a": {"x": -2.0f64.sqrt()}});
        round_floats(&mut v);
        let s = json_string(&v).unwrap();
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        // keys come out sorted
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
    }

    #[test]
    fn fixed_drops_negative_zero() {
        assert_eq!(fixed(-1e-17), "0.0000000000");
        assert_eq!(fixed(-0.5f64.sqrt()), "-0.7071067812");
    }
}
