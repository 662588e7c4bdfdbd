//! The per-emit result record and its JSON form.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

use crate::constructions::RealizationPlan;
use crate::invariants::{CharNumbers, Surface4, ThreeFold, TriState};
use crate::scalar::{int, parse_int, ratio_to_string, Scalar};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone)]
pub struct Report<T> {
    pub numbers: CharNumbers<T>,
    /// `c₁c₂/24`; integral for every integrable structure.
    pub todd: Ratio<T>,
    pub spin: bool,
    pub kahler_type: TriState,
    pub simply_connected: TriState,
    pub provenance: Vec<String>,
    pub warnings: Vec<String>,
}

impl<T: Scalar> PartialEq for Report<T> {
    fn eq(&self, other: &Self) -> bool {
        self.numbers == other.numbers
            && self.todd == other.todd
            && self.spin == other.spin
            && self.kahler_type == other.kahler_type
            && self.simply_connected == other.simply_connected
            && self.provenance == other.provenance
            && self.warnings == other.warnings
    }
}

impl<T: Scalar> Eq for Report<T> {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("missing or malformed field `{0}`")]
    Field(&'static str),
    #[error("unsupported schema_version {0}")]
    Schema(String),
}

impl<T: Scalar> Report<T> {
    pub fn from_threefold(x: &ThreeFold<T>, mut warnings: Vec<String>) -> Self {
        let todd = Ratio::new(x.numbers.c1c2.clone(), int(24));
        if !todd.is_integer() {
            warnings.push(format!(
                "Todd genus {} is not an integer; c1c2 = {} is not realizable",
                ratio_to_string(&todd),
                x.numbers.c1c2
            ));
        }
        if x.almost_complex_only {
            warnings.push("almost-complex structure only; not known to be integrable".into());
        }
        Report {
            numbers: x.numbers.clone(),
            todd,
            spin: x.spin,
            kahler_type: x.kahler_type,
            simply_connected: x.simply_connected,
            provenance: x.provenance.clone(),
            warnings,
        }
    }

    pub fn to_json(&self) -> Value {
        let todd = if self.todd.is_integer() {
            number(self.todd.numer())
        } else {
            Value::String(ratio_to_string(&self.todd))
        };
        json!({
            "schema_version": SCHEMA_VERSION,
            "c1_cubed": number(&self.numbers.c1_cubed),
            "c1c2": number(&self.numbers.c1c2),
            "c3": number(&self.numbers.c3),
            "todd": todd,
            "spin": self.spin,
            "kahler_type": self.kahler_type.as_str(),
            "simply_connected": self.simply_connected.as_str(),
            "provenance": self.provenance,
            "warnings": self.warnings,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, ReportError> {
        let obj = v.as_object().ok_or(ReportError::Field("schema_version"))?;
        match obj.get("schema_version") {
            Some(Value::Number(n)) if n.to_string() == SCHEMA_VERSION.to_string() => {}
            Some(other) => return Err(ReportError::Schema(other.to_string())),
            None => return Err(ReportError::Field("schema_version")),
        }
        let todd = match obj.get("todd") {
            Some(Value::Number(n)) => parse_int(&n.to_string()).map(Ratio::from_integer),
            Some(Value::String(s)) => s.split_once('/').and_then(|(p, q)| {
                let (p, q): (T, T) = (parse_int(p)?, parse_int(q)?);
                (!q.is_zero()).then(|| Ratio::new(p, q))
            }),
            _ => None,
        }
        .ok_or(ReportError::Field("todd"))?;
        Ok(Report {
            numbers: CharNumbers {
                c1_cubed: int_field(obj, "c1_cubed")?,
                c1c2: int_field(obj, "c1c2")?,
                c3: int_field(obj, "c3")?,
            },
            todd,
            spin: obj.get("spin").and_then(Value::as_bool).ok_or(ReportError::Field("spin"))?,
            kahler_type: tri_field(obj, "kahler_type")?,
            simply_connected: tri_field(obj, "simply_connected")?,
            provenance: strings_field(obj, "provenance")?,
            warnings: strings_field(obj, "warnings")?,
        })
    }
}

/// Exact JSON number for any scalar.
pub fn number<T: Scalar>(v: &T) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integers are valid JSON numbers"))
}

fn int_field<T: Scalar>(obj: &Map<String, Value>, key: &'static str) -> Result<T, ReportError> {
    match obj.get(key) {
        Some(Value::Number(n)) => parse_int(&n.to_string()),
        _ => None,
    }
    .ok_or(ReportError::Field(key))
}

fn tri_field(obj: &Map<String, Value>, key: &'static str) -> Result<TriState, ReportError> {
    obj.get(key)
        .and_then(Value::as_str)
        .and_then(TriState::parse)
        .ok_or(ReportError::Field(key))
}

fn strings_field(obj: &Map<String, Value>, key: &'static str) -> Result<Vec<String>, ReportError> {
    obj.get(key)
        .and_then(Value::as_array)
        .and_then(|a| a.iter().map(|v| v.as_str().map(str::to_string)).collect())
        .ok_or(ReportError::Field(key))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl<T: Scalar> fmt::Display for Report<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "  c1^3              {}", self.numbers.c1_cubed)?;
        writeln!(f, "  c1c2              {}", self.numbers.c1c2)?;
        writeln!(f, "  c3                {}", self.numbers.c3)?;
        writeln!(f, "  todd              {}", ratio_to_string(&self.todd))?;
        writeln!(f, "  spin              {}", yes_no(self.spin))?;
        writeln!(f, "  kahler type       {}", self.kahler_type)?;
        writeln!(f, "  simply connected  {}", self.simply_connected)?;
        writeln!(f, "  provenance")?;
        for (i, step) in self.provenance.iter().enumerate() {
            writeln!(f, "    {}. {step}", i + 1)?;
        }
        for w in &self.warnings {
            writeln!(f, "  warning: {w}")?;
        }
        Ok(())
    }
}

pub fn surface_json<T: Scalar>(s: &Surface4<T>) -> Value {
    json!({
        "name": s.name,
        "chi": number(&s.chi),
        "tau": number(&s.tau),
        "c1_squared": number(&s.c1_squared()),
        "todd": number(&s.todd()),
        "spin": s.spin,
        "kahler": s.kahler,
        "simply_connected": s.simply_connected.as_str(),
    })
}

/// Machine form of a realization plan; the two structures are full reports.
pub fn plan_json<T: Scalar>(plan: &RealizationPlan<T>, warnings: &[String]) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "m": number(&plan.m),
        "n": number(&plan.n),
        "n_tilde": number(&plan.n_tilde),
        "k0": number(&plan.k0),
        "k": number(&plan.k),
        "l": number(&plan.l),
        "surface": surface_json(&plan.surface),
        "x_J": Report::from_threefold(&plan.x_j, warnings.to_vec()).to_json(),
        "x_Jtilde": Report::from_threefold(&plan.x_jtilde, warnings.to_vec()).to_json(),
    })
}
