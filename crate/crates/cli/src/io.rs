//! JSON and CSV documents emitted by the CLI.
//!
//! Complex numbers are `[re, im]` pairs. Negative zero is written as `0.0`
//! so that output does not depend on the sign of vanishing round-off.

use std::io::Write;

use paragrassmann::nalgebra::DMatrix;
use paragrassmann::Complex64;
use serde::{Deserialize, Serialize};

pub type Pair = [f64; 2];

fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

pub fn pair(z: Complex64) -> Pair {
    [clean(z.re), clean(z.im)]
}

pub fn rows(m: &DMatrix<Complex64>) -> Vec<Vec<Pair>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| pair(m[(r, c)])).collect())
        .collect()
}

/// Inverse of [`rows`].
pub fn matrix_from_rows(rows: &[Vec<Pair>]) -> DMatrix<Complex64> {
    let ncols = rows.first().map_or(0, Vec::len);
    DMatrix::from_fn(rows.len(), ncols, |r, c| Complex64::new(rows[r][c][0], rows[r][c][1]))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub l: usize,
    pub q: Pair,
    pub weights: Vec<f64>,
    /// `monomial`, `orthonormal` or `aw`.
    pub basis: String,
    pub rows: Vec<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub determinant: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WickProbe {
    pub rank: usize,
    pub dimension: usize,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDoc {
    pub l: usize,
    pub q: Pair,
    pub weights: Vec<f64>,
    pub deformed_integers: Vec<f64>,
    pub deformed_factorials: Vec<f64>,
    pub number_eigenvalues: Vec<f64>,
    pub norm_t_eta: f64,
    pub wick_rank_probe: WickProbe,
}

/// Compact JSON followed by a newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// One CSV row per matrix row, each entry written as an `re,im` column pair.
pub fn matrix_csv(doc: &MatrixDoc) -> String {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_writer(Vec::new());
    let ncols = doc.rows.first().map_or(0, Vec::len);
    let header: Vec<String> = (0..ncols)
        .flat_map(|c| [format!("re{c}"), format!("im{c}")])
        .collect();
    w.write_record(&header).expect("in-memory write");
    for row in &doc.rows {
        let record: Vec<String> = row.iter().flat_map(|p| p.iter().map(|x| x.to_string())).collect();
        w.write_record(&record).expect("in-memory write");
    }
    if let Some(det) = doc.determinant {
        w.write_record([format!("determinant={det}")]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("csv is utf-8")
}

/// `quantity,index,value` rows.
pub fn spectrum_csv(doc: &SpectrumDoc) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["quantity", "index", "value"]).expect("in-memory write");
    let lists = [
        ("deformed_integer", &doc.deformed_integers),
        ("deformed_factorial", &doc.deformed_factorials),
        ("number_eigenvalue", &doc.number_eigenvalues),
    ];
    for (name, values) in lists {
        for (a, v) in values.iter().enumerate() {
            w.write_record([name.to_string(), a.to_string(), v.to_string()]).expect("in-memory write");
        }
    }
    w.write_record(["norm_t_eta".to_string(), String::new(), doc.norm_t_eta.to_string()])
        .expect("in-memory write");
    w.write_record([
        "wick_rank_probe_informational".to_string(),
        doc.wick_rank_probe.dimension.to_string(),
        doc.wick_rank_probe.rank.to_string(),
    ])
    .expect("in-memory write");
    String::from_utf8(w.into_inner().expect("flush")).expect("csv is utf-8")
}

/// Writes `text` to `path`, or to standard output when `path` is `None`.
pub fn emit(text: &str, path: Option<&std::path::Path>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}
