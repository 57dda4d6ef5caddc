//! Deterministic serialization helpers shared by the verification reports
//! and the command-line front end.
//!
//! Floating-point values are rendered at a fixed 17 significant digits so a
//! given configuration and seed always produce identical bytes.

/// `x` at 17 significant digits in scientific notation; `nan`/`inf` spelled out.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        }
    } else {
        format!("{x:.16e}")
    }
}

/// Minimal JSON writer with stable key order (insertion order).
#[derive(Default)]
pub struct JsonObject {
    fields: Vec<(String, String)>,
}

impl JsonObject {
    pub fn new() -> Self {
        JsonObject::default()
    }

    pub fn field_raw(mut self, key: &str, raw: impl Into<String>) -> Self {
        self.fields.push((key.to_string(), raw.into()));
        self
    }

    pub fn field_str(self, key: &str, value: &str) -> Self {
        let quoted = quote(value);
        self.field_raw(key, quoted)
    }

    pub fn field_f64(self, key: &str, value: f64) -> Self {
        // Rendered as a string so the 17-digit policy survives JSON parsers.
        let v = fmt_f64(value);
        self.field_raw(key, quote(&v))
    }

    pub fn field_u64(self, key: &str, value: u64) -> Self {
        self.field_raw(key, value.to_string())
    }

    pub fn field_bool(self, key: &str, value: bool) -> Self {
        self.field_raw(key, if value { "true" } else { "false" })
    }

    pub fn field_array(self, key: &str, items: Vec<String>) -> Self {
        self.field_raw(key, format!("[{}]", items.join(",")))
    }

    pub fn render(&self) -> String {
        let body: Vec<String> = self
            .fields
            .iter()
            .map(|(k, v)| format!("{}:{}", quote(k), v))
            .collect();
        format!("{{{}}}", body.join(","))
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_f64(2.0), "2.0000000000000000e0");
        assert_eq!(fmt_f64(-0.25), "-2.5000000000000000e-1");
        assert_eq!(fmt_f64(f64::NAN), "nan");
    }

    #[test]
    fn json_escaping_and_order() {
        let s = JsonObject::new()
            .field_str("name", "a\"b")
            .field_u64("n", 3)
            .field_bool("ok", true)
            .render();
        assert_eq!(s, r#"{"name":"a\"b","n":3,"ok":true}"#);
    }
}
