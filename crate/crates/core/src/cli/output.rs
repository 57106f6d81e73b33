//! Table rows and their CSV / JSON encodings.

use std::io::Write;

use serde_json::{Map, Number, Value};

use crate::model::ParamSet;
use crate::Vec3;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Missing,
    Flag(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Num)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Flag(v)
    }
}

impl Cell {
    /// 17 significant digits, enough to round-trip any `f64`.
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Missing => String::new(),
            Cell::Flag(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Missing => Value::Null,
            Cell::Flag(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Column {
    pub name: String,
    pub unit: &'static str,
    pub cell: Cell,
}

/// One output row; column order is the insertion order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Row(pub Vec<Column>);

impl Row {
    pub fn push(&mut self, name: impl Into<String>, unit: &'static str, cell: impl Into<Cell>) {
        self.0.push(Column { name: name.into(), unit, cell: cell.into() });
    }

    pub fn push_vec(&mut self, name: &str, unit: &'static str, v: &Vec3) {
        for (c, x) in ["x", "y", "z"].iter().zip(v.iter()) {
            self.push(format!("{name}_{c}"), unit, *x);
        }
    }

    pub fn get(&self, name: &str) -> Option<&Cell> {
        self.0.iter().find(|c| c.name == name).map(|c| &c.cell)
    }

    /// Keep only the named columns, in the requested order. Unknown names
    /// are returned as errors.
    pub fn select(&self, names: &[String]) -> Result<Row, String> {
        names
            .iter()
            .map(|n| self.0.iter().find(|c| &c.name == n).cloned().ok_or_else(|| n.clone()))
            .collect::<Result<Vec<_>, _>>()
            .map(Row)
    }

    /// Every input parameter, so a row reproduces its own result.
    pub fn echo(p: &ParamSet) -> Row {
        let mut r = Row::default();
        r.push("m", "E", p.m);
        r.push("q", "q", p.q);
        r.push("hbar", "E L", p.hbar);
        r.push("mu", "E", p.mu);
        r.push("mu_over_m", "1", p.mu / p.m);
        r.push("tau", "L", p.tau);
        r.push("temperature", "E", p.temperature);
        r.push_vec("b", "E/(q L)", &p.b_field);
        r.push_vec("omega", "1/L", &p.omega);
        r.push_vec("e", "E/(q L)", &p.e_field);
        r.push_vec("x", "L", &p.x);
        r.push("radius", "L", p.radius);
        r.push("branch", "1", Cell::Text(format!("{:?}", p.branch).to_lowercase()));
        r
    }
}

/// CSV with a `name [unit]` header taken from the first row.
pub fn write_csv(rows: &[Row], out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if let Some(first) = rows.first() {
        w.write_record(first.0.iter().map(|c| format!("{} [{}]", c.name, c.unit)))?;
    }
    for r in rows {
        w.write_record(r.0.iter().map(|c| c.cell.csv()))?;
    }
    w.flush()?;
    Ok(())
}

/// One JSON object per line; units under the `"units"` key of each object.
pub fn write_json(rows: &[Row], mut out: impl Write) -> std::io::Result<()> {
    for r in rows {
        let mut obj = Map::new();
        let mut units = Map::new();
        for c in &r.0 {
            obj.insert(c.name.clone(), c.cell.json());
            units.insert(c.name.clone(), Value::String(c.unit.to_string()));
        }
        obj.insert("units".into(), Value::Object(units));
        serde_json::to_writer(&mut out, &Value::Object(obj))?;
        writeln!(out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trips_values() {
        let mut r = Row::default();
        r.push("a", "E", 0.1 + 0.2);
        r.push("b", "1", None::<f64>);
        r.push("c", "1", true);
        let mut buf = Vec::new();
        write_csv(&[r], &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("a [E],b [1],c [1]"));
        let vals: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(vals[0].parse::<f64>().unwrap(), 0.1 + 0.2);
        assert_eq!(vals[1], "");
        assert_eq!(vals[2], "true");
    }

    #[test]
    fn json_lines() {
        let mut r = Row::default();
        r.push("a", "E", 1.5);
        r.push("nan", "1", f64::NAN);
        let mut buf = Vec::new();
        write_json(&[r.clone(), r], &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s.lines().count(), 2);
        let v: Value = serde_json::from_str(s.lines().next().unwrap()).unwrap();
        assert_eq!(v["a"], 1.5);
        assert_eq!(v["nan"], Value::Null);
        assert_eq!(v["units"]["a"], "E");
    }

    #[test]
    fn select_reports_unknown() {
        let r = Row::echo(&ParamSet::default());
        assert_eq!(r.select(&["mu".into(), "m".into()]).unwrap().0[0].name, "mu");
        assert_eq!(r.select(&["nope".into()]), Err("nope".into()));
    }
}
