//! Command reports: ordered `key=value` lines, optionally followed by a
//! point list, renderable as text or as a JSON object with the same keys.

use std::fmt::Write as _;

use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Int(i128),
    Bool(bool),
    Text(String),
    /// Space-separated in text, an array in JSON.
    List(Vec<String>),
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v as i128)
    }
}

impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Field::Int(v as i128)
    }
}

impl From<u32> for Field {
    fn from(v: u32) -> Self {
        Field::Int(v as i128)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Bool(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_string())
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}

impl From<Vec<String>> for Field {
    fn from(v: Vec<String>) -> Self {
        Field::List(v)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    fields: Vec<(String, Field)>,
    /// `x:y:z -> {labels}` lines.
    points: Vec<(String, Vec<i64>)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Field>) {
        self.fields.push((key.into(), value.into()));
    }

    pub fn push_point(&mut self, point: impl Into<String>, labels: Vec<i64>) {
        self.points.push((point.into(), labels));
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            let v = match v {
                Field::Int(i) => i.to_string(),
                Field::Bool(b) => b.to_string(),
                Field::Text(s) => s.clone(),
                Field::List(items) => items.join(" "),
            };
            writeln!(out, "{k}={v}").unwrap();
        }
        for (p, labels) in &self.points {
            let labels: Vec<String> = labels.iter().map(i64::to_string).collect();
            writeln!(out, "{p} -> {{{}}}", labels.join(",")).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut map = Map::new();
        for (k, v) in &self.fields {
            let v = match v {
                Field::Int(i) => match i64::try_from(*i) {
                    Ok(i) => Value::from(i),
                    Err(_) => Value::from(i.to_string()),
                },
                Field::Bool(b) => Value::from(*b),
                Field::Text(s) => Value::from(s.clone()),
                Field::List(items) => Value::from(items.clone()),
            };
            map.insert(k.clone(), v);
        }
        if !self.points.is_empty() {
            let points: Map<String, Value> = self
                .points
                .iter()
                .map(|(p, labels)| (p.clone(), Value::from(labels.clone())))
                .collect();
            map.insert("points".into(), Value::Object(points));
        }
        let mut out = serde_json::to_string_pretty(&Value::Object(map)).expect("plain JSON values");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_share_keys() {
        let mut r = Report::new();
        r.push("lines", 9usize);
        r.push("t[3]", 12usize);
        r.push("steiner", true);
        r.push("witness", vec!["1->2".to_string(), "2->1".to_string()]);
        r.push_point("0:0:1", vec![0, 1, 2]);
        assert_eq!(
            r.to_text(),
            "lines=9\nt[3]=12\nsteiner=true\nwitness=1->2 2->1\n0:0:1 -> {0,1,2}\n"
        );
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["lines"], 9);
        assert_eq!(v["t[3]"], 12);
        assert_eq!(v["witness"][1], "2->1");
        assert_eq!(v["points"]["0:0:1"][2], 2);
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["lines", "t[3]", "steiner", "witness", "points"]);
    }
}
