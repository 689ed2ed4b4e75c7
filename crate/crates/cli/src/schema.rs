//! Input document: model, numerics and an ordered task list.

use std::f64::consts::PI;
use std::fmt;

use dbk_core::{JacobiData, ZeroData};
use serde::{Deserialize, Deserializer};

/// An angle in radians, either a number or an expression such as `"pi/2"`,
/// `"3*pi/4"` or `"-pi/8"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle {
    pub value: f64,
    /// Source spelling, echoed in reports.
    pub text: AngleText,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AngleText {
    Number,
    /// `num * pi / den`
    PiMultiple {
        num: f64,
        den: f64,
    },
}

impl Angle {
    pub fn radians(value: f64) -> Self {
        Angle { value, text: AngleText::Number }
    }

    pub fn parse(s: &str) -> Result<Self, String> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        if t.is_empty() {
            return Err("empty angle".into());
        }
        let Some(at) = t.find("pi") else {
            return t.parse::<f64>().map(Angle::radians).map_err(|_| format!("cannot parse angle {s:?}"));
        };
        let (head, tail) = (&t[..at], &t[at + 2..]);
        let head = head.strip_suffix('*').unwrap_or(head);
        let num = match head {
            "" | "+" => 1.0,
            "-" => -1.0,
            h => h.parse::<f64>().map_err(|_| format!("bad coefficient in angle {s:?}"))?,
        };
        let den = match tail {
            "" => 1.0,
            d => d
                .strip_prefix('/')
                .and_then(|d| d.parse::<f64>().ok())
                .filter(|d| *d != 0.0)
                .ok_or_else(|| format!("bad denominator in angle {s:?}"))?,
        };
        // `pi / 2` and friends are formed exactly as they would be in code.
        let value = if num == 1.0 { PI / den } else { num * PI / den };
        Ok(Angle { value, text: AngleText::PiMultiple { num, den } })
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.text {
            AngleText::Number => write!(f, "{:.16e}", self.value),
            AngleText::PiMultiple { num, den } => {
                match num {
                    1.0 => write!(f, "pi")?,
                    -1.0 => write!(f, "-pi")?,
                    n => write!(f, "{n}*pi")?,
                }
                if den != 1.0 {
                    write!(f, "/{den}")?;
                }
                Ok(())
            }
        }
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)
            .map_err(|_| serde::de::Error::custom("angle must be a number or a string like \"pi/2\""))?
        {
            Raw::Number(v) if v.is_finite() => Ok(Angle::radians(v)),
            Raw::Number(v) => Err(serde::de::Error::custom(format!("angle {v} is not finite"))),
            Raw::Text(s) => Angle::parse(&s).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ModelSpec {
    Name(String),
    Jacobi { jacobi: JacobiData },
    ZeroData { zerodata: ZeroData },
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum BetaGrid {
    Count(usize),
    List(Vec<Angle>),
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericsSpec {
    pub window: Option<[f64; 2]>,
    pub truncation: Option<usize>,
    pub tol: Option<f64>,
    pub beta_grid: Option<BetaGrid>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "task", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Task {
    Spectrum {
        beta: Angle,
    },
    VerifyRankOne {
        #[serde(default)]
        betas: Option<Vec<Angle>>,
        #[serde(default)]
        n: Option<usize>,
    },
    VerifyGenerating {
        #[serde(default)]
        betas: Option<Vec<Angle>>,
    },
    VerifyLemmas {
        #[serde(default = "default_draws")]
        draws: usize,
    },
    ZeroFree {
        beta: Angle,
    },
    Theorem43 {
        #[serde(default)]
        betas: Option<Vec<Angle>>,
        /// Ascending coefficients of `j0`; the product over the zeros of `s0` by default.
        #[serde(default)]
        j0: Option<Vec<f64>>,
    },
    Uniqueness {
        beta1: Angle,
        beta2: Angle,
    },
    Gauge {
        #[serde(default)]
        beta: Option<Angle>,
        #[serde(default = "default_gauge_points")]
        points: usize,
    },
}

fn default_draws() -> usize {
    100
}

fn default_gauge_points() -> usize {
    20
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Spectrum { .. } => "spectrum",
            Task::VerifyRankOne { .. } => "verify-rank-one",
            Task::VerifyGenerating { .. } => "verify-generating",
            Task::VerifyLemmas { .. } => "verify-lemmas",
            Task::ZeroFree { .. } => "zero-free",
            Task::Theorem43 { .. } => "theorem43",
            Task::Uniqueness { .. } => "uniqueness",
            Task::Gauge { .. } => "gauge",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub model: ModelSpec,
    #[serde(default)]
    pub numerics: NumericsSpec,
    pub tasks: Vec<Task>,
}

#[derive(Debug, thiserror::Error)]
#[error("schema violation at line {line}, column {column}: {message}")]
pub struct SchemaError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Parses and validates a document. Every task is checked before any
/// computation starts.
pub fn parse_document(text: &str) -> Result<Document, SchemaError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| SchemaError {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    if doc.tasks.is_empty() {
        return Err(SchemaError { line: 1, column: 1, message: "tasks must not be empty".into() });
    }
    if let Some([lo, hi]) = doc.numerics.window {
        if !(lo < hi && lo.is_finite() && hi.is_finite()) {
            return Err(position_of(text, "window", format!("window [{lo}, {hi}] must satisfy lo < hi")));
        }
    }
    if let Some(tol) = doc.numerics.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(position_of(text, "tol", format!("tol {tol} must be positive")));
        }
    }
    if let Some(BetaGrid::Count(0)) = doc.numerics.beta_grid {
        return Err(position_of(text, "beta_grid", "beta_grid count must be positive".into()));
    }
    Ok(doc)
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

/// Position of the first occurrence of `"key"` in `text`.
fn position_of(text: &str, key: &str, message: String) -> SchemaError {
    let needle = format!("\"{key}\"");
    let offset = text.find(&needle).unwrap_or(0);
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = offset - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    SchemaError { line, column, message }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles_parse_exactly() {
        assert_eq!(Angle::parse("pi/2").unwrap().value, std::f64::consts::FRAC_PI_2);
        assert_eq!(Angle::parse("pi").unwrap().value, PI);
        assert_eq!(Angle::parse("3*pi/4").unwrap().value, 3.0 * PI / 4.0);
        assert_eq!(Angle::parse(" -pi / 8 ").unwrap().value, -PI / 8.0);
        assert_eq!(Angle::parse("2pi/3").unwrap().value, 2.0 * PI / 3.0);
        assert_eq!(Angle::parse("0.25").unwrap().value, 0.25);
        assert!(Angle::parse("pi/0").is_err());
        assert!(Angle::parse("tau").is_err());
        assert_eq!(Angle::parse("3*pi/4").unwrap().to_string(), "3*pi/4");
    }

    #[test]
    fn document_round_trip() {
        let doc = parse_document(
            r#"{"model": "cheb2", "numerics": {"seed": 3, "beta_grid": ["pi/3", 1.0]},
                "tasks": [{"task": "spectrum", "beta": "pi/2"}, {"task": "verify-lemmas"}]}"#,
        )
        .unwrap();
        assert_eq!(doc.model, ModelSpec::Name("cheb2".into()));
        assert_eq!(doc.tasks[1], Task::VerifyLemmas { draws: 100 });
        let doc = parse_document(
            r#"{"model": {"jacobi": {"diag": [0], "offdiag": [], "b_next": 1}}, "tasks": [{"task": "gauge"}]}"#,
        )
        .unwrap();
        assert!(matches!(doc.model, ModelSpec::Jacobi { .. }));
    }

    #[test]
    fn unknown_task_is_rejected_with_position() {
        let err = parse_document("{\"model\": \"cheb2\",\n \"tasks\": [\n  {\"task\": \"frobnicate\"}]}").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("frobnicate"), "{}", err.message);
        let err = parse_document(r#"{"model": "cheb2", "tasks": [{"task": "spectrum", "beta": "pi/2", "x": 1}]}"#)
            .unwrap_err();
        assert!(err.message.contains("unknown field"), "{}", err.message);
        let err = parse_document(
            "{\"model\": \"cheb2\",\n\"numerics\": {\"window\": [1, -1]}, \"tasks\": [{\"task\": \"gauge\"}]}",
        )
        .unwrap_err();
        assert_eq!(err.line, 2);
    }
}
