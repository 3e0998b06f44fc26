use std::io::{self, Write};

use serde_json::Value;

use crate::args::Format;

/// A command result renderable as an aligned table, CSV or JSON.
pub struct Output {
    pub json: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Extra lines printed after the table in text mode.
    pub notes: Vec<String>,
}

impl Output {
    pub fn new(json: Value, columns: Vec<&'static str>) -> Self {
        Output {
            json,
            columns,
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => {
                let mut json = self.json.clone();
                if let Value::Object(map) = &mut json {
                    map.insert("schema".into(), Value::from(1));
                }
                serde_json::to_writer_pretty(&mut *out, &json)?;
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()
            }
            Format::Text => {
                write_table(out, &self.columns, &self.rows)?;
                for note in &self.notes {
                    writeln!(out, "{note}")?;
                }
                Ok(())
            }
        }
    }
}

fn write_table(out: &mut dyn Write, columns: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = columns.iter().map(|c| c.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |out: &mut dyn Write, cells: &[&str]| -> io::Result<()> {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(cell);
            if i + 1 < cells.len() {
                s.extend(std::iter::repeat_n(' ', w - cell.chars().count()));
            }
        }
        writeln!(out, "{}", s.trim_end())
    };
    line(out, columns)?;
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    line(out, &rule.iter().map(String::as_str).collect::<Vec<_>>())?;
    for row in rows {
        line(out, &row.iter().map(String::as_str).collect::<Vec<_>>())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn render(o: &Output, f: Format) -> String {
        let mut buf = Vec::new();
        o.write(f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn formats() {
        let mut o = Output::new(json!({"b": 1, "a": [1, 2]}), vec!["poly", "phi"]);
        o.rows.push(vec!["x^2+x".into(), "1".into()]);
        o.rows.push(vec!["x*(x+1),y".into(), "12".into()]);
        assert_eq!(
            render(&o, Format::Text),
            "poly       phi\n---------  ---\nx^2+x      1\nx*(x+1),y  12\n"
        );
        assert_eq!(render(&o, Format::Csv), "poly,phi\nx^2+x,1\n\"x*(x+1),y\",12\n");
        let j = render(&o, Format::Json);
        assert!(j.find("\"a\"").unwrap() < j.find("\"b\"").unwrap());
        assert!(j.contains("\"schema\": 1"));
    }
}
