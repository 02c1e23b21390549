use serde_json::{Map, Value};

pub struct Table {
    pub title: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, header: Vec<&'static str>) -> Self {
        Self { title: title.into(), header, rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }
}

/// Output of one command. A set `failure` means a check did not hold.
pub struct Report {
    pub command: &'static str,
    pub tables: Vec<Table>,
    pub json: Map<String, Value>,
    pub failure: Option<String>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Self { command, tables: Vec::new(), json: Map::new(), failure: None }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.json.insert(key.to_string(), value);
    }

    /// Records the first failed check.
    pub fn fail(&mut self, witness: impl Into<String>) {
        if self.failure.is_none() {
            self.failure = Some(witness.into());
        }
    }

    pub fn tsv(&self) -> String {
        let mut out = String::new();
        for (i, t) in self.tables.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&format!("# {}\n", t.title));
            out.push_str(&t.header.join("\t"));
            out.push('\n');
            for r in &t.rows {
                out.push_str(&r.join("\t"));
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut obj = self.json.clone();
        obj.insert("command".into(), Value::from(self.command));
        obj.insert("ok".into(), Value::from(self.failure.is_none()));
        if let Some(f) = &self.failure {
            obj.insert("failure".into(), Value::from(f.as_str()));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("report serializes");
        s.push('\n');
        s
    }
}
