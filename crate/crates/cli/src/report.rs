//! Machine-readable reports. Key order is fixed by struct declaration
//! order and every map is sorted, so reports are byte-identical across runs
//! with the same config and seed (timings are printed to the terminal only,
//! never written into the report).

use serde::Serialize;

use doring_core::betti::TruncationReport;
use doring_core::validate::ValidationReport;

#[derive(Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub field: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caps: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncated: Option<TruncatedOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncated_homology: Option<TruncatedOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub products: Option<Vec<ProductLine>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckLine>>,
    pub exit_code: i32,
}

impl Report {
    pub fn new(command: &str, field: &str, seed: u64) -> Report {
        Report {
            schema: "doring-report/1",
            command: command.into(),
            field: field.into(),
            seed,
            n_max: None,
            caps: None,
            validation: None,
            betti: None,
            truncated: None,
            truncated_homology: None,
            products: None,
            checks: None,
            exit_code: 0,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}

#[derive(Serialize)]
pub struct ValidationOut {
    pub valid: bool,
    pub issues: Vec<IssueLine>,
}

#[derive(Serialize)]
pub struct IssueLine {
    pub check: String,
    pub witness: String,
    pub expected: String,
    pub got: String,
}

pub fn validation_out(report: &ValidationReport) -> ValidationOut {
    ValidationOut {
        valid: report.is_valid(),
        issues: report
            .issues
            .iter()
            .map(|i| IssueLine {
                check: i.check.clone(),
                witness: i.witness.clone(),
                expected: i.expected.clone(),
                got: i.got.clone(),
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct TruncatedOut {
    pub shift: u32,
    pub degrees: Vec<TruncatedDegree>,
}

#[derive(Serialize)]
pub struct TruncatedDegree {
    pub degree: usize,
    pub lower_bound: usize,
    pub stable: bool,
    pub caps: Vec<TruncatedCap>,
}

#[derive(Serialize)]
pub struct TruncatedCap {
    pub cap: u32,
    pub kernel_dim: usize,
    pub boundary_dim: usize,
    pub residual: usize,
}

pub fn truncated_out(report: &TruncationReport) -> TruncatedOut {
    TruncatedOut {
        shift: report.shift,
        degrees: report
            .degrees
            .iter()
            .map(|d| TruncatedDegree {
                degree: d.degree,
                lower_bound: d.lower_bound,
                stable: d.stable,
                caps: d
                    .caps
                    .iter()
                    .map(|c| TruncatedCap {
                        cap: c.cap,
                        kernel_dim: c.kernel_dim,
                        boundary_dim: c.boundary_dim,
                        residual: c.residual,
                    })
                    .collect(),
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct ProductLine {
    pub left: String,
    pub right: String,
    pub bidegree: String,
    pub product: String,
}

#[derive(Serialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}
