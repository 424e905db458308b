//! Reports: a header echoing the configuration, result rows, violations and
//! a verdict. The verdict is `fail` exactly when there are violations.

use crate::plot::Plot;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub header: Vec<(String, String)>,
    pub rows: Vec<Vec<String>>,
    pub violations: Vec<String>,
    pub plot: Option<Plot>,
}

impl Report {
    pub fn new(header: Vec<(String, String)>) -> Self {
        Report { header, ..Default::default() }
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.rows.push(cells.into_iter().map(Into::into).collect());
    }

    pub fn violation(&mut self, v: impl Into<String>) {
        self.violations.push(v.into());
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    /// Comment lines for the header, then rows, `violation` rows and the
    /// `verdict` row. Contains no timestamps, so equal runs give equal bytes.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# ordlift {}\n", env!("CARGO_PKG_VERSION"));
        for (k, v) in &self.header {
            out.push_str(&format!("# {k}={v}\n"));
        }
        let mut w = csv::WriterBuilder::new().flexible(true).has_headers(false).from_writer(Vec::new());
        let tail = self
            .violations
            .iter()
            .map(|v| vec!["violation".to_string(), v.clone()])
            .chain(std::iter::once(vec!["verdict".to_string(), self.verdict().to_string()]));
        for r in self.rows.iter().cloned().chain(tail) {
            w.write_record(&r).expect("writing to memory");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv of utf-8 cells"));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut r = Report::new(vec![("seed".into(), "0".into())]);
        r.row(["tau", "1/2", "1/2"]);
        assert!(r.passed());
        let text = r.to_csv();
        assert!(text.contains("# seed=0\ntau,1/2,1/2\nverdict,pass\n"), "{text}");
        r.violation("a, b");
        assert_eq!(r.verdict(), "fail");
        assert!(r.to_csv().contains("violation,\"a, b\"\nverdict,fail\n"));
    }
}
