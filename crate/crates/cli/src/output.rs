//! Tables rendered as CSV (15 significant digits) or as a JSON array of
//! objects carrying the same rounded values.

use serde_json::{Map, Number, Value};

use crate::config::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => fmt_g15(*x),
            Cell::Text(t) => t.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            // Parse the rounded text back so both formats carry one value.
            Cell::Float(x) => fmt_g15(*x)
                .parse::<f64>()
                .ok()
                .and_then(Number::from_f64)
                .map_or(Value::Null, Value::Number),
            Cell::Text(t) => Value::from(t.as_str()),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<&str> for Cell {
    fn from(t: &str) -> Self {
        Cell::Text(t.to_string())
    }
}

/// `%.15g`.
pub fn fmt_g15(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Summary lines; trailing `#` comments in CSV, ignored in JSON.
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(headers: Vec<&'static str>) -> Self {
        Table { headers, ..Table::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn csv(&self) -> String {
        let mut out = self.headers.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        for note in &self.notes {
            out.push_str("# ");
            out.push_str(note);
            out.push('\n');
        }
        out
    }

    fn json(&self) -> String {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (h, c) in self.headers.iter().zip(row) {
                    m.insert((*h).to_string(), c.json());
                }
                Value::Object(m)
            })
            .collect();
        let mut out = serde_json::to_string_pretty(&Value::Array(records)).expect("serializable");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_format() {
        assert_eq!(fmt_g15(0.0), "0");
        assert_eq!(fmt_g15(0.2), "0.2");
        assert_eq!(fmt_g15(1.0 / 3.0), "0.333333333333333");
        assert_eq!(fmt_g15(std::f64::consts::PI), "3.14159265358979");
        assert_eq!(fmt_g15(-2.5e-9), "-2.5e-09");
        assert_eq!(fmt_g15(1.234e20), "1.234e+20");
        assert_eq!(fmt_g15(123456.0), "123456");
        assert_eq!(fmt_g15(9.999999999999999e14), "1e+15");
    }

    #[test]
    fn csv_and_json_agree() {
        let mut t = Table::new(vec!["n", "x", "c"]);
        t.push(vec![Cell::from(1usize), Cell::from(1.0 / 3.0), Cell::from("A")]);
        t.notes.push("done".into());
        assert_eq!(t.render(Format::Csv), "n,x,c\n1,0.333333333333333,A\n# done\n");
        let parsed: Value = serde_json::from_str(&t.render(Format::Json)).unwrap();
        assert_eq!(parsed[0]["x"].as_f64().unwrap(), 0.333333333333333);
        assert_eq!(parsed[0]["c"], "A");
    }
}
