use std::fmt::Write as _;

/// One output cell; numbers are rendered the same way in CSV and JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as u64)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

/// `%.{digits}g` with trailing zeros removed.
pub fn format_g(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let m = trim(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Rows with a fixed header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self, digits: usize) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| csv_cell(c, digits)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Array of objects keyed by the header.
    pub fn to_json(&self, digits: usize) -> String {
        let mut out = String::from("[");
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&json_object(&self.header, row, digits));
        }
        out.push(']');
        out
    }
}

fn csv_cell(c: &Cell, digits: usize) -> String {
    match c {
        Cell::Num(x) => format_g(*x, digits),
        Cell::Int(n) => n.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Text(s) => s.clone(),
    }
}

pub fn json_cell(c: &Cell, digits: usize) -> String {
    match c {
        Cell::Num(x) if x.is_finite() => format_g(*x, digits),
        Cell::Num(_) => "null".into(),
        Cell::Int(n) => n.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(s) => serde_json::to_string(s).expect("string serializes"),
    }
}

pub fn json_object(keys: &[&str], cells: &[Cell], digits: usize) -> String {
    let mut out = String::from("{");
    for (i, (k, c)) in keys.iter().zip(cells).enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{}:{}", serde_json::to_string(k).expect("key serializes"), json_cell(c, digits));
    }
    out.push('}');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_format() {
        assert_eq!(format_g(0.8, 12), "0.8");
        assert_eq!(format_g(2.0, 12), "2");
        assert_eq!(format_g(1.0 / 3.0, 6), "0.333333");
        assert_eq!(format_g(1.5e-7, 12), "1.5e-07");
        assert_eq!(format_g(123456.0, 3), "1.23e+05");
        assert_eq!(format_g(9.9999999e5, 3), "1e+06");
        assert_eq!(format_g(-0.00012, 12), "-0.00012");
        assert_eq!(format_g(0.0, 12), "0");
    }

    #[test]
    fn json_numbers_parse_back() {
        let mut t = Table::new(vec!["x", "name"]);
        t.push(vec![Cell::Num(1.5e-7), Cell::Text("a,\"b\"".into())]);
        let v: serde_json::Value = serde_json::from_str(&t.to_json(12)).unwrap();
        assert_eq!(v[0]["x"].as_f64(), Some(1.5e-7));
        assert_eq!(t.to_csv(12), "x,name\n1.5e-07,\"a,\"\"b\"\"\"\n");
    }

    proptest::proptest! {
        #[test]
        fn g_format_roundtrips(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL, digits in 1usize..=17) {
            let s = format_g(x, digits);
            proptest::prop_assert!(s.chars().all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e')));
            let back: f64 = s.parse().unwrap();
            if digits == 17 {
                proptest::prop_assert_eq!(back, x);
            } else {
                proptest::prop_assert!(((back - x) / x).abs() <= 0.5 * 10f64.powi(1 - digits as i32) * (1.0 + 1e-12));
            }
        }
    }
}
