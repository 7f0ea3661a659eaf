use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use modcat_core::{Check, CyclotomicNumber, Matrix, ModularData};
use serde_json::{json, Value};

use crate::args::Format;

/// Significant digits of the floating renderings added by `--approx`.
pub const APPROX_DIGITS: usize = 12;

/// A command result in every format it supports.
pub struct Rendered {
    pub json: Value,
    pub pretty: String,
    pub csv: Option<String>,
    /// Whether the checks behind the result passed.
    pub ok: bool,
}

impl Rendered {
    pub fn new(json: Value, pretty: String) -> Self {
        Rendered {
            json,
            pretty,
            csv: None,
            ok: true,
        }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn with_ok(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    pub fn text(&self, format: Format) -> Option<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
                s.push('\n');
                Some(s)
            }
            Format::Pretty => Some(self.pretty.clone()),
            Format::Csv => self.csv.clone(),
        }
    }
}

pub fn approx(x: &CyclotomicNumber) -> Value {
    let z = x.approx();
    let r = |v: f64| format!("{:.*e}", APPROX_DIGITS - 1, v);
    json!([r(z.re), r(z.im)])
}

pub fn approx_matrix(m: &Matrix) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(approx).collect())).collect())
}

pub fn approx_block(c: &ModularData) -> Value {
    json!({
        "digits": APPROX_DIGITS,
        "S": approx_matrix(&c.s),
        "theta": (0..c.rank).map(|x| approx(&c.theta(x))).collect::<Vec<_>>(),
        "dims": c.dims().iter().map(approx).collect::<Vec<_>>(),
    })
}

pub fn pretty_data(c: &ModularData) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "rank {}  conductor {}  ord(T) {}", c.rank, c.conductor, c.ord_t());
    for x in 0..c.rank {
        let (e, n) = c.theta_fraction(x);
        let _ = writeln!(
            s,
            "  {:<12} dual {:<12} theta exp(2πi·{e}/{n})  d = {}",
            c.labels[x],
            c.labels[c.dual_perm[x]],
            c.dim(x)
        );
    }
    let _ = writeln!(s, "S:");
    for row in &c.s {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "  [{}]", cells.join(", "));
    }
    s
}

pub fn pretty_checks(subject: &str, checks: &[Check]) -> String {
    let mut s = format!("{subject}\n");
    for c in checks {
        let status = match (c.passed, c.warning) {
            (true, _) => "ok  ",
            (false, true) => "warn",
            (false, false) => "FAIL",
        };
        let _ = write!(s, "  [{status}] {}", c.name);
        if !c.detail.is_empty() {
            let _ = write!(s, ": {}", c.detail);
        }
        s.push('\n');
    }
    s
}

pub fn csv_checks(checks: &[Check]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "passed", "warning", "detail"]).expect("in-memory write");
    for c in checks {
        w.write_record([c.name.as_str(), &c.passed.to_string(), &c.warning.to_string(), &c.detail])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 records")
}

/// Write to stdout, or atomically to `path` via a sibling temporary file.
pub fn emit(text: &str, path: Option<&Path>) -> std::io::Result<()> {
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
        Some(path) => {
            let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let tmp = path.with_file_name(format!(".{name}.tmp{}", std::process::id()));
            std::fs::write(&tmp, text)?;
            std::fs::rename(&tmp, path)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_details() {
        let checks = vec![Check {
            name: "S symmetric".into(),
            passed: true,
            warning: false,
            detail: "a, b".into(),
        }];
        assert_eq!(csv_checks(&checks), "name,passed,warning,detail\nS symmetric,true,false,\"a, b\"\n");
    }

    #[test]
    fn approx_rendering() {
        let v = approx(&CyclotomicNumber::zeta(4, 1));
        let im: f64 = v[1].as_str().unwrap().parse().unwrap();
        assert_eq!(im, 1.0);
        assert_eq!(v[1].as_str().unwrap().len(), "1.00000000000e0".len());
    }

    #[test]
    fn atomic_write() {
        let path = std::env::temp_dir().join(format!("modcat-emit-{}.txt", std::process::id()));
        emit("hello\n", Some(&path)).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "hello\n");
        std::fs::remove_file(path).unwrap();
    }
}
