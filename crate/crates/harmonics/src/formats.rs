//! JSON and CSV encodings of the library types.

use std::io::Write;

use harmonics_core::lie::{GroupElement, IwasawaFactors, KElement};
use harmonics_core::matrix::CMatrix;
use harmonics_core::minkowski::{LorentzClass, LorentzMatrix, MinkowskiVector};
use harmonics_core::poincare::{PSpectralTable, QElement};
use harmonics_core::slc::SpectralTable;
use harmonics_core::su2::KSpectrum;
use harmonics_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::error::{CliError, Result};

/// Largest table a job will export.
pub const MAX_EXPORT_ROWS: usize = 1 << 22;

pub type ComplexJson = [f64; 2];

fn c(z: ComplexJson) -> Complex64 {
    Complex64::new(z[0], z[1])
}

fn cj(z: Complex64) -> ComplexJson {
    [z.re, z.im]
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupElementJson {
    pub a: ComplexJson,
    pub b: ComplexJson,
    pub c: ComplexJson,
    pub d: ComplexJson,
}

impl From<&GroupElement> for GroupElementJson {
    fn from(g: &GroupElement) -> Self {
        let [a, b, c, d] = g.entries().map(cj);
        Self { a, b, c, d }
    }
}

impl GroupElementJson {
    pub fn to_element(&self) -> Result<GroupElement> {
        Ok(GroupElement::new(c(self.a), c(self.b), c(self.c), c(self.d))?)
    }
}

/// `g = k(φ, θ, ψ) · a(t) · n(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IwasawaJson {
    pub euler: [f64; 3],
    pub t: f64,
    pub n: ComplexJson,
}

impl From<&IwasawaFactors> for IwasawaJson {
    fn from(f: &IwasawaFactors) -> Self {
        let (phi, theta, psi) = f.k.to_euler();
        Self { euler: [phi, theta, psi], t: f.t, n: cj(f.n) }
    }
}

impl IwasawaJson {
    pub fn to_factors(&self) -> IwasawaFactors {
        let [phi, theta, psi] = self.euler;
        IwasawaFactors { k: KElement::from_euler(phi, theta, psi), t: self.t, n: c(self.n) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KElementJson {
    pub euler: [f64; 3],
}

impl KElementJson {
    pub fn to_element(&self) -> KElement {
        let [phi, theta, psi] = self.euler;
        KElement::from_euler(phi, theta, psi)
    }
}

/// One `(2j+1)²` block, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockJson {
    pub two_j: u32,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl BlockJson {
    pub fn new(two_j: u32, m: &CMatrix) -> Self {
        Self {
            two_j,
            re: m.as_slice().iter().map(|z| z.re).collect(),
            im: m.as_slice().iter().map(|z| z.im).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let dim = self.two_j as usize + 1;
        if self.re.len() != dim * dim || self.im.len() != dim * dim {
            return Err(CliError::Config(format!("block two_j = {} needs {} entries", self.two_j, dim * dim)));
        }
        let data = self.re.iter().zip(&self.im).map(|(&r, &i)| Complex64::new(r, i)).collect();
        CMatrix::from_row_major(data).ok_or_else(|| CliError::Config("block is not square".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KSpectrumJson {
    pub jmax_twice: u32,
    pub blocks: Vec<BlockJson>,
}

impl From<&KSpectrum> for KSpectrumJson {
    fn from(s: &KSpectrum) -> Self {
        Self::from_blocks(s.blocks())
    }
}

impl KSpectrumJson {
    pub fn from_blocks(blocks: &[CMatrix]) -> Self {
        Self {
            jmax_twice: blocks.len().saturating_sub(1) as u32,
            blocks: blocks.iter().enumerate().map(|(tj, b)| BlockJson::new(tj as u32, b)).collect(),
        }
    }

    pub fn to_spectrum(&self) -> Result<KSpectrum> {
        let mut s = KSpectrum::zeros(self.jmax_twice);
        for b in &self.blocks {
            if b.two_j > self.jmax_twice {
                return Err(CliError::Config(format!("block two_j = {} above jmax_twice", b.two_j)));
            }
            *s.block_mut(b.two_j) = b.to_matrix()?;
        }
        Ok(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QElementJson {
    pub v: [f64; 4],
    pub h: GroupElementJson,
    pub g: GroupElementJson,
}

impl From<&QElement> for QElementJson {
    fn from(q: &QElement) -> Self {
        Self { v: q.v.0, h: (&q.h).into(), g: (&q.g).into() }
    }
}

impl QElementJson {
    pub fn to_element(&self) -> Result<QElement> {
        Ok(QElement::new(MinkowskiVector(self.v), self.h.to_element()?, self.g.to_element()?))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LorentzJson {
    pub element: GroupElementJson,
    pub matrix: [[f64; 4]; 4],
    pub class: String,
    pub metric_defect: f64,
    /// `Λv` for each input vector.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub images: Vec<[f64; 4]>,
}

impl LorentzJson {
    pub fn new(g: &GroupElement, m: &LorentzMatrix, class: LorentzClass, vectors: &[MinkowskiVector]) -> Self {
        Self {
            element: g.into(),
            matrix: m.0,
            class: format!("{class:?}"),
            metric_defect: m.metric_defect(),
            images: vectors.iter().map(|v| m.apply(v).0).collect(),
        }
    }
}

/// Accepts a single value or an array of values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    pub fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(v) => v,
        }
    }
}

pub fn to_json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut buf = serde_json::to_vec_pretty(value)?;
    buf.push(b'\n');
    Ok(buf)
}

#[derive(Serialize)]
struct TableEntry {
    two_j: u32,
    lambda: f64,
    xi1: f64,
    xi2: f64,
    hs_norm: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    re: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    im: Option<Vec<f64>>,
}

#[derive(Serialize)]
struct PTableEntry {
    two_j: u32,
    eta1: f64,
    eta2: f64,
    eta3: f64,
    eta4: f64,
    lambda: f64,
    xi1: f64,
    xi2: f64,
    hs_norm: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    re: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    im: Option<Vec<f64>>,
}

fn parts(m: &CMatrix, full: bool) -> (Option<Vec<f64>>, Option<Vec<f64>>) {
    if full {
        let b = BlockJson::new(0, m);
        (Some(b.re), Some(b.im))
    } else {
        (None, None)
    }
}

fn check_rows(rows: usize) -> Result<()> {
    if rows > MAX_EXPORT_ROWS {
        return Err(CliError::CapExceeded { what: "exported table rows", requested: rows, cap: MAX_EXPORT_ROWS });
    }
    Ok(())
}

fn write_rows<T: Serialize>(format: Format, rows: impl Iterator<Item = T>, mut w: impl Write) -> Result<()> {
    match format {
        Format::Csv => {
            let mut out = csv::Writer::from_writer(w);
            for r in rows {
                out.serialize(r)?;
            }
            out.flush().map_err(|e| CliError::io("<table>", e))?;
        }
        Format::Json => {
            // one compact object per line, streamed
            let io = |e| CliError::io("<table>", e);
            w.write_all(b"[").map_err(io)?;
            for (i, r) in rows.enumerate() {
                w.write_all(if i == 0 { b"\n" } else { b",\n" }).map_err(io)?;
                serde_json::to_writer(&mut w, &r)?;
            }
            w.write_all(b"\n]\n").map_err(io)?;
        }
    }
    Ok(())
}

/// One row per `(j, λ, ξ)`. JSON always carries the full matrices, CSV only
/// the Hilbert–Schmidt norms.
pub fn write_spectral_table(table: &SpectralTable, format: Format, w: impl Write) -> Result<()> {
    let freq = table.freq();
    check_rows(freq.len() * (table.jmax_twice() as usize + 1))?;
    let full = format == Format::Json;
    let rows = (0..=table.jmax_twice()).flat_map(|tj| {
        (0..freq.len()).map(move |i| {
            let p = freq.point(i);
            let m = table.get(tj, i);
            let (re, im) = parts(m, full);
            TableEntry { two_j: tj, lambda: p.lambda, xi1: p.xi[0], xi2: p.xi[1], hs_norm: m.hs_norm_sqr().sqrt(), re, im }
        })
    });
    write_rows(format, rows, w)
}

/// One row per `(j, η, λ, ξ)`; the matrices are included only with `full`
/// and JSON output.
pub fn write_p_spectral_table(table: &PSpectralTable, format: Format, full: bool, w: impl Write) -> Result<()> {
    let freq = *table.freq();
    check_rows(table.eta_len() * freq.len() * (table.jmax_twice() as usize + 1))?;
    let full = full && format == Format::Json;
    let rows = (0..=table.jmax_twice()).flat_map(move |tj| {
        (0..table.eta_len()).flat_map(move |e| {
            let eta = table.eta_point(e);
            (0..freq.len()).map(move |i| {
                let p = freq.point(i);
                let m = table.get(e, tj, i);
                let (re, im) = parts(&m, full);
                PTableEntry {
                    two_j: tj,
                    eta1: eta[0],
                    eta2: eta[1],
                    eta3: eta[2],
                    eta4: eta[3],
                    lambda: p.lambda,
                    xi1: p.xi[0],
                    xi2: p.xi[1],
                    hs_norm: m.hs_norm_sqr().sqrt(),
                    re,
                    im,
                }
            })
        })
    });
    write_rows(format, rows, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use harmonics_core::su2::{wigner_all, IrrepIndex};

    #[test]
    fn group_element_round_trip() {
        let g = IwasawaJson { euler: [0.3, 1.1, 2.0], t: 0.4, n: [0.2, -0.7] }.to_factors().compose();
        let json = serde_json::to_string(&GroupElementJson::from(&g)).unwrap();
        let back: GroupElementJson = serde_json::from_str(&json).unwrap();
        assert!(back.to_element().unwrap().max_entry_distance(&g) <= 1e-15);
        let bad = GroupElementJson { a: [2.0, 0.0], b: [0.0; 2], c: [0.0; 2], d: [1.0, 0.0] };
        assert!(matches!(bad.to_element(), Err(CliError::Core(_))));
    }

    #[test]
    fn identity_factors() {
        let f = IwasawaFactors::decompose(&GroupElement::IDENTITY);
        let j = IwasawaJson::from(&f);
        assert_eq!(j.t, 0.0);
        assert_eq!(j.n, [0.0, 0.0]);
        assert_eq!(j.euler, [0.0, 0.0, 0.0]);
    }

    #[test]
    fn spectrum_round_trip() {
        let k = KElementJson { euler: [0.1, 0.2, 0.3] }.to_element();
        let blocks = wigner_all(3, &k).unwrap();
        let j = KSpectrumJson::from_blocks(&blocks);
        assert_eq!(j.jmax_twice, 3);
        let text = serde_json::to_string(&j).unwrap();
        let back: KSpectrumJson = serde_json::from_str(&text).unwrap();
        let s = back.to_spectrum().unwrap();
        for (tj, b) in blocks.iter().enumerate() {
            assert_eq!(s.block(tj as u32), b);
        }
        let short = KSpectrumJson { jmax_twice: 1, blocks: vec![BlockJson { two_j: 1, re: vec![0.0; 3], im: vec![0.0; 4] }] };
        assert!(short.to_spectrum().is_err());
        assert_eq!(IrrepIndex::new(3).unwrap().dim(), 4);
    }

    #[test]
    fn spectral_table_json_parses() {
        use harmonics_core::abelian::LineGrid;
        use harmonics_core::slc::FrequencyGrid;
        let line = LineGrid::new(2.0, 8).unwrap();
        let table = SpectralTable::zeros(FrequencyGrid { lambda: line, xi1: line, xi2: line }, 1);
        let mut buf = Vec::new();
        write_spectral_table(&table, Format::Json, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let rows = v.as_array().unwrap();
        assert_eq!(rows.len(), 2 * 512);
        assert_eq!(rows[600]["re"].as_array().unwrap().len(), 4);
        let mut csv = Vec::new();
        write_spectral_table(&table, Format::Csv, &mut csv).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap().lines().count(), 1 + 2 * 512);
    }

    #[test]
    fn one_or_many() {
        let one: OneOrMany<[f64; 4]> = serde_json::from_str("[1, 0, 0, 0]").unwrap();
        assert_eq!(one.into_vec().len(), 1);
        let many: OneOrMany<[f64; 4]> = serde_json::from_str("[[1, 0, 0, 0], [0, 1, 0, 0]]").unwrap();
        assert_eq!(many.into_vec().len(), 2);
    }
}
