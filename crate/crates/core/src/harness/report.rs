use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A measured-constant suite: values are recorded, nothing is asserted.
    Recorded,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Recorded => "recorded",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Field {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Field {
    fn render(&self) -> String {
        match self {
            Field::Num(v) => format_num(*v),
            Field::Int(v) => v.to_string(),
            Field::Text(s) => quote(s),
        }
    }
}

/// Shortest round-trip representation; `inf`, `-inf` and `nan` spelled out.
pub fn format_num(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:e}")
    }
}

fn quote(s: &str) -> String {
    if !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || "._-:/+".contains(c)) {
        s.to_string()
    } else {
        format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

/// Key/value fields gathered by a suite.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Fields(pub Vec<(String, Field)>);

impl Fields {
    pub fn num(&mut self, k: impl Into<String>, v: f64) -> &mut Self {
        self.0.push((k.into(), Field::Num(v)));
        self
    }

    pub fn int(&mut self, k: impl Into<String>, v: i64) -> &mut Self {
        self.0.push((k.into(), Field::Int(v)));
        self
    }

    pub fn text(&mut self, k: impl Into<String>, v: impl Into<String>) -> &mut Self {
        self.0.push((k.into(), Field::Text(v.into())));
        self
    }

    pub fn get(&self, k: &str) -> Option<&Field> {
        self.0.iter().find(|(key, _)| key == k).map(|(_, v)| v)
    }

    pub fn get_num(&self, k: &str) -> Option<f64> {
        match self.get(k)? {
            Field::Num(v) => Some(*v),
            Field::Int(v) => Some(*v as f64),
            Field::Text(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Record {
    pub name: String,
    pub anchor: String,
    pub hard: bool,
    pub status: Status,
    pub fields: Fields,
    pub note: String,
    pub runtime: Duration,
}

impl Record {
    fn line(&self) -> String {
        let mut s = format!(
            "record=suite name={} anchor={} hard={} status={}",
            quote(&self.name),
            quote(&self.anchor),
            self.hard,
            self.status.as_str()
        );
        for (k, v) in &self.fields.0 {
            let _ = write!(s, " {k}={}", v.render());
        }
        if !self.note.is_empty() {
            let _ = write!(s, " note={}", quote(&self.note));
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub manifest: Fields,
    pub records: Vec<Record>,
}

impl Report {
    pub fn hard_failures(&self) -> Vec<&Record> {
        self.records.iter().filter(|r| r.status == Status::Fail).collect()
    }

    pub fn passed(&self) -> bool {
        self.hard_failures().is_empty()
    }

    pub fn record(&self, name: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.name == name)
    }

    /// Line-oriented `key=value` report. Contains no timing information, so
    /// equal configurations give byte-identical output.
    pub fn machine(&self) -> String {
        let mut s = String::from("record=manifest");
        for (k, v) in &self.manifest.0 {
            let _ = write!(s, " {k}={}", v.render());
        }
        s.push('\n');
        for r in &self.records {
            s.push_str(&r.line());
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "record=total suites={} hard_failures={} status={}",
            self.records.len(),
            self.hard_failures().len(),
            if self.passed() { "pass" } else { "fail" }
        );
        s
    }

    /// `suite,key,value` rows for every numeric field.
    pub fn constants_csv(&self) -> String {
        let mut s = String::from("suite,key,value\n");
        for r in &self.records {
            for (k, v) in &r.fields.0 {
                let val = match v {
                    Field::Num(x) => format_num(*x),
                    Field::Int(x) => x.to_string(),
                    Field::Text(_) => continue,
                };
                let _ = writeln!(s, "{},{k},{val}", r.name);
            }
        }
        s
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let get = |k: &str| self.manifest.get(k).map(|f| f.render()).unwrap_or_default();
        let _ = writeln!(s, "model {}  points {}  mode {}  seed {}", get("model"), get("points"), get("mode"), get("seed"));
        let _ = writeln!(
            s,
            "window [{}, {}]  spectrum [{}, {}]",
            get("window_min"),
            get("window_max"),
            get("sqrt_lambda_min"),
            get("sqrt_lambda_max")
        );
        s.push('\n');
        let width = self.records.iter().map(|r| r.name.len()).max().unwrap_or(0);
        for r in &self.records {
            let _ = write!(s, "{:<width$}  {:<8}  {:>8.3}s", r.name, r.status.as_str(), r.runtime.as_secs_f64());
            if !r.note.is_empty() {
                let _ = write!(s, "  {}", r.note);
            }
            s.push('\n');
        }
        let n = |st: Status| self.records.iter().filter(|r| r.status == st).count();
        let _ = writeln!(
            s,
            "\n{} passed, {} failed, {} recorded, {} skipped",
            n(Status::Pass),
            n(Status::Fail),
            n(Status::Recorded),
            n(Status::Skipped)
        );
        s
    }

    /// Writes `report.txt`, `constants.csv` and `summary.txt` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::Config(format!("{}: {e}", dir.display()));
        std::fs::create_dir_all(dir).map_err(io)?;
        std::fs::write(dir.join("report.txt"), self.machine()).map_err(io)?;
        std::fs::write(dir.join("constants.csv"), self.constants_csv()).map_err(io)?;
        std::fs::write(dir.join("summary.txt"), self.summary()).map_err(io)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(name: &str, hard: bool, status: Status) -> Record {
        let mut f = Fields::default();
        f.num("ratio", 1.5).int("count", 3).text("model", "C 64");
        Record { name: name.into(), anchor: "a::b".into(), hard, status, fields: f, note: String::new(), runtime: Duration::from_millis(7) }
    }

    #[test]
    fn machine_lines() {
        let r = Report { manifest: Fields::default(), records: vec![rec("x", true, Status::Pass)] };
        let m = r.machine();
        assert_eq!(
            m.lines().nth(1).unwrap(),
            "record=suite name=x anchor=a::b hard=true status=pass ratio=1.5e0 count=3 model=\"C 64\""
        );
        assert!(m.ends_with("record=total suites=1 hard_failures=0 status=pass\n"));
        assert!(!m.contains("0.007"));
        assert_eq!(r.constants_csv(), "suite,key,value\nx,ratio,1.5e0\nx,count,3\n");
    }

    #[test]
    fn failures() {
        let r = Report {
            manifest: Fields::default(),
            records: vec![rec("a", false, Status::Recorded), rec("b", true, Status::Skipped), rec("c", true, Status::Fail)],
        };
        assert_eq!(r.hard_failures().len(), 1);
        assert_eq!(r.hard_failures()[0].name, "c");
        assert!(!r.passed());
    }

    #[test]
    fn number_format_round_trips() {
        for v in [0.1, 1e-300, 123456.789, -2.5e10] {
            assert_eq!(format_num(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(format_num(f64::INFINITY), "inf");
    }
}
