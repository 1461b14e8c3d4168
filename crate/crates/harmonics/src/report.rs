//! Residual reports: one row per checked identity.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config::Format;
use crate::error::{CliError, Result};

pub const CSV_HEADER: &str = "identity,paper_ref,residual,tolerance,pass,ms";

/// Pass condition for a residual. `AtLeast` marks guard rows, which pass
/// when a deliberately wrong convention is detected.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bound {
    AtMost(f64),
    AtLeast(f64),
}

impl Bound {
    pub fn holds(&self, residual: f64) -> bool {
        match *self {
            Bound::AtMost(b) => residual <= b,
            Bound::AtLeast(b) => residual >= b,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::AtMost(b) => write!(f, "<={b:e}"),
            Bound::AtLeast(b) => write!(f, ">={b:e}"),
        }
    }
}

impl FromStr for Bound {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || CliError::Config(format!("bad tolerance {s:?}"));
        let (ctor, rest): (fn(f64) -> Bound, &str) = if let Some(r) = s.strip_prefix("<=") {
            (Bound::AtMost, r)
        } else if let Some(r) = s.strip_prefix(">=") {
            (Bound::AtLeast, r)
        } else {
            return Err(bad());
        };
        rest.parse().map(ctor).map_err(|_| bad())
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub identity: String,
    pub paper_ref: String,
    pub residual: f64,
    pub tolerance: Bound,
    pub pass: bool,
    pub ms: u64,
}

impl Row {
    pub fn new(identity: &str, paper_ref: &str, residual: f64, tolerance: Bound, ms: u64) -> Self {
        Self {
            identity: identity.to_owned(),
            paper_ref: paper_ref.to_owned(),
            residual,
            tolerance,
            pass: tolerance.holds(residual),
            ms,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ResidualReport {
    pub rows: Vec<Row>,
}

impl ResidualReport {
    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
        out.write_record(CSV_HEADER.split(','))?;
        for row in &self.rows {
            out.serialize(row)?;
        }
        out.flush().map_err(|e| CliError::io("<report>", e))?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut w, &self.rows)?;
        w.write_all(b"\n").map_err(|e| CliError::io("<report>", e))
    }

    pub fn to_bytes(&self, format: Format) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        match format {
            Format::Csv => self.write_csv(&mut buf)?,
            Format::Json => self.write_json(&mut buf)?,
        }
        Ok(buf)
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut input = csv::Reader::from_reader(r);
        let header: Vec<String> = input.headers()?.iter().map(str::to_owned).collect();
        if header.join(",") != CSV_HEADER {
            return Err(CliError::Config(format!("unexpected report header {header:?}")));
        }
        let rows = input.deserialize().collect::<std::result::Result<_, _>>()?;
        Ok(Self { rows })
    }

    pub fn read_json<R: Read>(r: R) -> Result<Self> {
        Ok(Self { rows: serde_json::from_reader(r)? })
    }

    /// `PASS`/`FAIL` lines for a terminal.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            let verdict = if r.pass { "PASS" } else { "FAIL" };
            s.push_str(&format!("{verdict} {} residual={:e} tolerance={}\n", r.identity, r.residual, r.tolerance));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert!(Bound::AtMost(1e-6).holds(1e-7));
        assert!(!Bound::AtMost(1e-6).holds(f64::NAN));
        assert!(Bound::AtLeast(1e-2).holds(0.5));
        for b in [Bound::AtMost(1e-12), Bound::AtLeast(0.01), Bound::AtMost(0.0)] {
            assert_eq!(b.to_string().parse::<Bound>().unwrap(), b);
        }
        assert_eq!(Bound::AtMost(1e-6).to_string(), "<=1e-6");
        assert!("1e-6".parse::<Bound>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut r = ResidualReport::default();
        r.push(Row::new("a", "x = y", 1.5e-9, Bound::AtMost(1e-6), 0));
        r.push(Row::new("b", "guard", 0.9, Bound::AtLeast(1e-2), 3));
        let back = ResidualReport::read_json(&r.to_bytes(Format::Json).unwrap()[..]).unwrap();
        assert_eq!(back, r);
    }
}
