use serde_json::{Map, Value};
use std::fmt::Display;

/// A command's printable result: aligned `key  value` rows followed by free
/// body lines in text mode, or a single JSON object.
#[derive(Debug, Default)]
pub struct Report {
    rows: Vec<(String, String)>,
    body: Vec<String>,
    json: Map<String, Value>,
    /// Printed verbatim instead of rows in text mode (file contents).
    raw: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.json.insert("command".into(), Value::from(command));
        r
    }

    pub fn field(&mut self, key: &str, text: impl Display, json: impl Into<Value>) -> &mut Self {
        self.rows.push((key.to_string(), text.to_string()));
        self.json.insert(key.to_string(), json.into());
        self
    }

    /// Exact integers of any width go to JSON as strings only when they overflow `u64`.
    pub fn int(&mut self, key: &str, v: impl Display) -> &mut Self {
        let s = v.to_string();
        let j = match s.parse::<u64>() {
            Ok(x) => Value::from(x),
            Err(_) => Value::from(s.clone()),
        };
        self.field(key, s, j)
    }

    pub fn real(&mut self, key: &str, v: f64) -> &mut Self {
        self.field(key, fmt_real(v), v)
    }

    pub fn flag(&mut self, key: &str, v: bool) -> &mut Self {
        self.field(key, v, v)
    }

    pub fn text(&mut self, key: &str, v: impl Display) -> &mut Self {
        let s = v.to_string();
        self.field(key, s.clone(), s)
    }

    /// JSON-only entry.
    pub fn data(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.json.insert(key.to_string(), v.into());
        self
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.body.push(s.into());
        self
    }

    pub fn raw(&mut self, content: String) -> &mut Self {
        self.json.insert("content".into(), Value::from(content.clone()));
        self.raw = Some(content);
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return format!("{}\n", Value::Object(self.json.clone()));
        }
        if let Some(raw) = &self.raw {
            return raw.clone();
        }
        let width = self.rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.rows {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        for l in &self.body {
            out.push_str(l);
            out.push('\n');
        }
        out
    }
}

/// A real with 12 significant digits, trailing zeros trimmed; plain notation
/// for moderate exponents, scientific otherwise.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 {
        return "0.0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (11 - exp).max(1) as usize;
        let s = format!("{x:.decimals$}");
        let s = s.trim_end_matches('0');
        if s.ends_with('.') {
            format!("{s}0")
        } else {
            s.to_string()
        }
    } else {
        let m = mant.trim_end_matches('0');
        let m = if m.ends_with('.') { &m[..m.len() - 1] } else { m };
        format!("{m}e{exp}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_formatting() {
        assert_eq!(fmt_real(1.0), "1.0");
        assert_eq!(fmt_real(0.75), "0.75");
        assert_eq!(fmt_real(0.0), "0.0");
        assert_eq!(fmt_real(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_real(2.0f64.sqrt() * 100.0), "141.421356237");
        assert_eq!(fmt_real((-6.25f64).exp()), "0.00193045413623");
        assert_eq!(fmt_real(1.5e-9), "1.5e-9");
        assert_eq!(fmt_real(1e20), "1e20");
    }

    #[test]
    fn aligned_rows_and_json() {
        let mut r = Report::new("demo");
        r.int("n", 4).real("factor", 1.0).text("gub", "64/3");
        assert_eq!(r.render(false), "n       4\nfactor  1.0\ngub     64/3\n");
        let v: Value = serde_json::from_str(&r.render(true)).unwrap();
        assert_eq!(v["n"], 4);
        assert_eq!(v["gub"], "64/3");
        assert_eq!(v["command"], "demo");
    }
}
