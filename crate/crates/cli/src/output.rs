//! Line-oriented output: every record has a human-readable line and a JSON
//! object; `--json` selects the latter, one object per line.

use std::io::{self, Write};

use serde_json::{Map, Value};

pub struct Output {
    json: bool,
    out: io::StdoutLock<'static>,
}

impl Output {
    pub fn new(json: bool) -> Self {
        Self {
            json,
            out: io::stdout().lock(),
        }
    }

    /// Writes one record. Integers must already be strings in `fields`.
    pub fn record(&mut self, text: impl AsRef<str>, fields: Vec<(&str, Value)>) -> io::Result<()> {
        if self.json {
            let obj: Map<String, Value> = fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            writeln!(self.out, "{}", Value::Object(obj))
        } else {
            writeln!(self.out, "{}", text.as_ref())
        }
    }
}

/// A JSON string from anything displayable (used for every integer).
pub fn s(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

pub fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Value {
    Value::Array(items.into_iter().map(s).collect())
}
