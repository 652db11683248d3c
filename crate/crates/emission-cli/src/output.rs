//! Table rendering: RFC 4180 CSV (header row, CRLF records, 12 significant
//! digits) and a single JSON object (metadata block plus row arrays, 17
//! significant digits — enough to round-trip every f64 exactly).

use crate::config::OutFormat;

/// One metadata entry.
#[derive(Debug, Clone)]
pub enum Meta {
    Text(String),
    Number(f64),
    Integer(u64),
}

/// A computed result table: ordered metadata plus homogeneous numeric rows
/// (`None` marks a value undefined at that point, e.g. a pole).
#[derive(Debug)]
pub struct Table {
    pub command: &'static str,
    pub metadata: Vec<(&'static str, Meta)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn render(&self, format: OutFormat) -> String {
        match format {
            OutFormat::Csv => self.to_csv(),
            OutFormat::Json => self.to_json(),
        }
    }

    /// Header row plus one record per row; empty field for undefined
    /// values. All fields are numbers or plain identifiers, so no quoting
    /// is ever required.
    fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push_str("\r\n");
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .map(|v| match v {
                    Some(x) => format!("{x:.11e}"),
                    None => String::new(),
                })
                .collect();
            out.push_str(&fields.join(","));
            out.push_str("\r\n");
        }
        out
    }

    fn to_json(&self) -> String {
        let mut out = String::from("{\n  \"schema_version\": 1,\n");
        out.push_str(&format!("  \"command\": {},\n", json_string(self.command)));
        out.push_str("  \"metadata\": {\n");
        let meta: Vec<String> = self
            .metadata
            .iter()
            .map(|(k, v)| {
                let value = match v {
                    Meta::Text(s) => json_string(s),
                    Meta::Number(x) => json_number(Some(*x)),
                    Meta::Integer(n) => n.to_string(),
                };
                format!("    {}: {}", json_string(k), value)
            })
            .collect();
        out.push_str(&meta.join(",\n"));
        out.push_str("\n  },\n  \"columns\": [");
        let cols: Vec<String> = self.columns.iter().map(|c| json_string(c)).collect();
        out.push_str(&cols.join(", "));
        out.push_str("],\n  \"rows\": [\n");
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                let vals: Vec<String> = row.iter().map(|v| json_number(*v)).collect();
                format!("    [{}]", vals.join(", "))
            })
            .collect();
        out.push_str(&rows.join(",\n"));
        out.push_str("\n  ]\n}\n");
        out
    }
}

fn json_number(v: Option<f64>) -> String {
    match v {
        Some(x) if x.is_finite() => format!("{x:.16e}"),
        _ => "null".into(),
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
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
