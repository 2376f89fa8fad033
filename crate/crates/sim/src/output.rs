//! CSV and JSON writers. Numbers are printed with 17 significant digits so
//! they read back to the same bits.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::SimError;

/// A finished data file, held in memory until the run succeeds.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputFile {
    pub name: String,
    pub contents: String,
}

impl OutputFile {
    pub fn json<T: Serialize>(name: &str, value: &T) -> Self {
        let mut contents = serde_json::to_string_pretty(value).expect("serializable");
        contents.push('\n');
        OutputFile { name: name.to_string(), contents }
    }
}

pub fn number(v: f64) -> String {
    format!("{v:.16e}")
}

pub struct Csv {
    text: String,
    columns: usize,
}

impl Csv {
    /// `comments` become `# ` lines ahead of the column row.
    pub fn new(comments: &[String], columns: &[String]) -> Self {
        let mut text = String::new();
        for c in comments {
            text.push_str("# ");
            text.push_str(c);
            text.push('\n');
        }
        text.push_str(&columns.join(","));
        text.push('\n');
        Csv { text, columns: columns.len() }
    }

    pub fn row(&mut self, cells: &[f64]) {
        debug_assert_eq!(cells.len(), self.columns);
        let line: Vec<String> = cells.iter().map(|&v| number(v)).collect();
        self.text.push_str(&line.join(","));
        self.text.push('\n');
    }

    /// Row whose leading cells are text.
    pub fn mixed_row(&mut self, labels: &[&str], cells: &[f64]) {
        debug_assert_eq!(labels.len() + cells.len(), self.columns);
        let line: Vec<String> = labels.iter().map(|s| s.to_string()).chain(cells.iter().map(|&v| number(v))).collect();
        self.text.push_str(&line.join(","));
        self.text.push('\n');
    }

    pub fn finish(self, name: &str) -> OutputFile {
        OutputFile { name: name.to_string(), contents: self.text }
    }
}

/// Write through a temporary file in the same directory and rename.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, SimError> {
    let path = dir.join(name);
    let tmp = dir.join(format!(".{name}.tmp"));
    let mut f = fs::File::create(&tmp).map_err(|e| SimError::io(&tmp, e))?;
    f.write_all(contents.as_bytes()).map_err(|e| SimError::io(&tmp, e))?;
    f.sync_all().map_err(|e| SimError::io(&tmp, e))?;
    drop(f);
    fs::rename(&tmp, &path).map_err(|e| SimError::io(&path, e))?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE] {
            assert_eq!(number(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn header_then_columns() {
        let mut csv = Csv::new(&["scenario: test".into()], &["a".into(), "b".into()]);
        csv.row(&[1.0, 2.0]);
        let f = csv.finish("t.csv");
        let lines: Vec<&str> = f.contents.lines().collect();
        assert_eq!(lines[0], "# scenario: test");
        assert_eq!(lines[1], "a,b");
        assert_eq!(lines[2], "1.0000000000000000e0,2.0000000000000000e0");
    }
}
