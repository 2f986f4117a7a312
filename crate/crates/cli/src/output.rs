//! Machine-readable output: fixed-schema records serialized as JSON lines or
//! CSV with a mirroring header. Reals are rounded to 15 significant digits so
//! output is byte-stable for fixed inputs.

use serde::Serialize;

/// One output row. Field order is the wire order.
#[derive(Debug, Serialize)]
pub struct Record {
    pub quantity: String,
    pub p: Option<f64>,
    pub m: Option<u64>,
    pub sigma: Option<f64>,
    pub value: f64,
    pub branch: Option<String>,
    pub provenance: &'static str,
}

impl Record {
    pub fn new(quantity: impl Into<String>, value: f64, provenance: &'static str) -> Self {
        Record {
            quantity: quantity.into(),
            p: None,
            m: None,
            sigma: None,
            value: round_sig15(value),
            branch: None,
            provenance,
        }
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = Some(round_sig15(p));
        self
    }

    pub fn with_m(mut self, m: u64) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.sigma = Some(round_sig15(sigma));
        self
    }

    pub fn with_branch(mut self, branch: impl ToString) -> Self {
        self.branch = Some(branch.to_string());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Round to 15 significant digits.
pub fn round_sig15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(14 - magnitude);
    (x * factor).round() / factor
}

const CSV_HEADER: &str = "quantity,p,m,sigma,value,branch,provenance";

/// Write the table to stdout. A closed pipe on the reading side (e.g. from
/// `minkowski theta --mmax 100 | head`) silently truncates the output.
pub fn emit(records: &[Record], format: Format) {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if write_all(&mut out, records, format).is_err() {
        std::process::exit(0);
    }
}

fn write_all(out: &mut impl std::io::Write, records: &[Record], format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                writeln!(out, "{}", serde_json::to_string(r).expect("record serializes"))?;
            }
        }
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in records {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.quantity,
                    opt_num(r.p),
                    r.m.map(|m| m.to_string()).unwrap_or_default(),
                    opt_num(r.sigma),
                    r.value,
                    r.branch.as_deref().unwrap_or(""),
                    r.provenance,
                )?;
            }
        }
    }
    Ok(())
}

fn opt_num(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}
