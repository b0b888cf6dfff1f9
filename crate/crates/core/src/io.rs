//! JSON and CSV file formats. Every float is written with 17 significant
//! digits so that `f64` values survive a round trip.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::code::{CanonicalCode, CodeError, StabilizerCode};
use crate::dense::CMatrix;
use crate::distill::{DistillationResult, SweepPoint};
use crate::oracle::{DenseState, OracleError};
use crate::wigner::{density_from_wigner, wigner_from_density, WignerError, WignerFunction};
use crate::witness::WitnessReport;
use crate::zd::{Prime, ZdError, ZdMatrix};

/// Wigner files must sum to one within this.
pub const NORMALIZATION_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Zd(#[from] ZdError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Wigner(#[from] WignerError),
    #[error(transparent)]
    State(#[from] OracleError),
}

/// `{"d": int, "N": int, "rows": [[a.., b..], ...], "syndrome": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub d: u32,
    #[serde(rename = "N")]
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
    #[serde(default)]
    pub syndrome: Option<Vec<i64>>,
}

impl CodeFile {
    pub fn from_code(code: &StabilizerCode) -> Self {
        let g = code.generators();
        CodeFile {
            d: code.modulus().get(),
            n: code.num_qudits(),
            rows: (0..g.rows())
                .map(|i| g.row(i).iter().map(|&x| x as i64).collect())
                .collect(),
            syndrome: Some(
                code.syndrome()
                    .as_slice()
                    .iter()
                    .map(|&x| x as i64)
                    .collect(),
            ),
        }
    }

    /// Range- and shape-checked; a missing syndrome means all zeros.
    pub fn to_code(&self) -> Result<StabilizerCode, IoError> {
        let d = Prime::new(self.d)?;
        let zeros = vec![0; self.n.saturating_sub(1)];
        let syndrome = self.syndrome.as_deref().unwrap_or(&zeros);
        Ok(StabilizerCode::from_parts(d, self.n, &self.rows, syndrome)?)
    }
}

pub fn parse_code(text: &str) -> Result<StabilizerCode, IoError> {
    serde_json::from_str::<CodeFile>(text)?.to_code()
}

pub fn code_to_json(code: &StabilizerCode) -> String {
    serde_json::to_string(&CodeFile::from_code(code)).expect("plain data")
}

/// 17 significant digits, `null` for non-finite values.
pub fn fmt_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn real_list(values: impl IntoIterator<Item = f64>) -> String {
    let items: Vec<String> = values.into_iter().map(fmt_real).collect();
    format!("[{}]", items.join(", "))
}

fn int_list<T: ToString>(values: &[T]) -> String {
    let items: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("[{}]", items.join(", "))
}

fn matrix_list(m: &ZdMatrix) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|i| int_list(m.row(i))).collect();
    format!("[{}]", rows.join(", "))
}

/// `{"d": int, "N": int, "values": [...]}`.
pub fn wigner_to_json(w: &WignerFunction<f64>) -> String {
    format!(
        "{{\"d\": {}, \"N\": {}, \"values\": {}}}",
        w.modulus(),
        w.num_qudits(),
        real_list(w.values().iter().copied())
    )
}

/// `{"d": int, "re": [[...]], "im": [[...]]}`.
pub fn dense_to_json(d: Prime, m: &CMatrix<f64>) -> String {
    let rows = |f: &dyn Fn(usize, usize) -> f64| {
        let r: Vec<String> = (0..m.rows())
            .map(|i| real_list((0..m.cols()).map(|j| f(i, j))))
            .collect();
        format!("[{}]", r.join(", "))
    };
    format!(
        "{{\"d\": {}, \"re\": {}, \"im\": {}}}",
        d,
        rows(&|i, j| m[(i, j)].re),
        rows(&|i, j| m[(i, j)].im)
    )
}

/// A state file in either representation.
#[derive(Debug, Clone, PartialEq)]
pub enum StateFile {
    Wigner(WignerFunction<f64>),
    Dense(DenseState<f64>),
}

impl StateFile {
    pub fn modulus(&self) -> Prime {
        match self {
            StateFile::Wigner(w) => w.modulus(),
            StateFile::Dense(s) => s.modulus,
        }
    }

    pub fn wigner(&self) -> Result<WignerFunction<f64>, IoError> {
        match self {
            StateFile::Wigner(w) => Ok(w.clone()),
            StateFile::Dense(s) => Ok(wigner_from_density(&s.matrix, s.modulus, s.num_qudits)?),
        }
    }

    pub fn density(&self) -> Result<CMatrix<f64>, IoError> {
        match self {
            StateFile::Wigner(w) => Ok(density_from_wigner(w)?),
            StateFile::Dense(s) => Ok(s.matrix.clone()),
        }
    }
}

#[derive(Deserialize)]
struct WignerFile {
    d: u32,
    #[serde(rename = "N", default = "one")]
    n: usize,
    values: Vec<f64>,
}

fn one() -> usize {
    1
}

#[derive(Deserialize)]
struct DenseFile {
    d: u32,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

/// Detects the format by its keys: `values` for Wigner, `re`/`im` for a
/// density matrix.
pub fn parse_state(text: &str) -> Result<StateFile, IoError> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| IoError::Format("state file must be a JSON object".into()))?;
    if obj.contains_key("values") {
        let f: WignerFile = serde_json::from_value(value)?;
        let d = Prime::new(f.d)?;
        let w = WignerFunction::new(d, f.n, f.values)?;
        if !w.is_normalized(NORMALIZATION_TOL) {
            return Err(IoError::Format(format!(
                "Wigner values sum to {}, expected 1",
                fmt_real(w.total())
            )));
        }
        Ok(StateFile::Wigner(w))
    } else if obj.contains_key("re") {
        let f: DenseFile = serde_json::from_value(value)?;
        let d = Prime::new(f.d)?;
        let m = CMatrix::from_parts(&f.re, &f.im)
            .ok_or_else(|| IoError::Format("ragged or mismatched re/im".into()))?;
        let q = d.as_usize();
        let mut n = 0;
        let mut dim = 1;
        while dim < m.rows() {
            dim *= q;
            n += 1;
        }
        if dim != m.rows() || n == 0 {
            return Err(IoError::Format(format!(
                "matrix size {} is not a power of d = {d}",
                m.rows()
            )));
        }
        Ok(StateFile::Dense(DenseState::new(d, n, m)?))
    } else {
        Err(IoError::Format(
            "state file needs either \"values\" or \"re\"/\"im\"".into(),
        ))
    }
}

pub fn distillation_to_json(
    res: &DistillationResult<f64>,
    engine: &str,
    accepted: Option<(u64, u64)>,
) -> String {
    let mut out = format!(
        "{{\"engine\": \"{engine}\", \"acceptance_probability\": {}, \"histogram\": {}, \"w_out\": {}",
        fmt_real(res.acceptance_probability),
        real_list(res.histogram.iter().copied()),
        wigner_to_json(&res.w_out)
    );
    if let Some((samples, acc)) = accepted {
        out.push_str(&format!(", \"samples\": {samples}, \"accepted\": {acc}"));
    }
    out.push('}');
    out
}

pub fn witness_to_json(r: &WitnessReport) -> String {
    format!(
        "{{\"face\": [{}, {}], \"value\": {}, \"bound\": {}, \"contextual\": {}, \"closed_form\": {}}}",
        r.face.0,
        r.face.1,
        fmt_real(r.value),
        fmt_real(r.bound),
        r.contextual,
        fmt_real(r.closed_form)
    )
}

pub fn canonical_to_json(c: &CanonicalCode) -> String {
    format!(
        concat!(
            "{{\"d\": {}, \"n\": {}, \"m\": {}, \"A\": {}, \"B\": {}, \"C\": {}, ",
            "\"vecA\": {}, \"vecB\": {}, \"vecC\": {}, \"permutation\": {}, \"syndrome\": {}, \"trivial\": {}}}"
        ),
        c.modulus,
        c.n,
        c.m,
        matrix_list(&c.a),
        matrix_list(&c.b),
        matrix_list(&c.c),
        int_list(c.vec_a.as_slice()),
        int_list(c.vec_b.as_slice()),
        int_list(c.vec_c.as_slice()),
        int_list(&c.column_permutation),
        int_list(c.syndrome.as_slice()),
        c.is_trivial()
    )
}

pub const SWEEP_HEADER: &str = "nu_in,nu_out,acceptance_probability";

pub fn sweep_to_csv(points: &[SweepPoint<f64>]) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_real(p.nu_in),
            fmt_real(p.nu_out),
            fmt_real(p.acceptance_probability)
        ));
    }
    out
}
