//! Structured outcome of a single check.

use serde::ser::SerializeStruct;
use serde::Serialize;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    Fail,
    Informational,
}

impl Verdict {
    pub fn is_success(self) -> bool {
        self != Verdict::Fail
    }
}

/// What a residual has to satisfy for the check to pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    /// `value ≤ tol`.
    Below(f64),
    /// `value ≥ floor`.
    Above(f64),
    /// Recorded only.
    Recorded,
}

impl Bound {
    pub fn holds(self, value: f64) -> bool {
        match self {
            Bound::Below(tol) => value <= tol,
            Bound::Above(floor) => value >= floor,
            Bound::Recorded => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    /// Truncation order; `0` for pointwise identities that involve no truncation.
    pub order: usize,
    pub value: f64,
    pub label: String,
    pub bound: Bound,
}

impl Serialize for Residual {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Residual", 2)?;
        st.serialize_field("N", &self.order)?;
        st.serialize_field("value", &self.value)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub check_name: String,
    pub params_echo: serde_json::Value,
    pub residuals: Vec<Residual>,
    pub conditions: Vec<(String, bool)>,
    pub notes: Vec<String>,
    informational: bool,
}

impl CheckReport {
    pub fn new(check_name: impl Into<String>, params_echo: serde_json::Value) -> Self {
        Self {
            check_name: check_name.into(),
            params_echo,
            residuals: Vec::new(),
            conditions: Vec::new(),
            notes: Vec::new(),
            informational: false,
        }
    }

    pub fn residual(&mut self, order: usize, label: impl Into<String>, value: f64, bound: Bound) -> &mut Self {
        self.residuals.push(Residual { order, value, label: label.into(), bound });
        self
    }

    pub fn condition(&mut self, label: impl Into<String>, holds: bool) -> &mut Self {
        self.conditions.push((label.into(), holds));
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    /// Mark the report as informational: its residuals are measurements, not claims.
    pub fn informational(&mut self) -> &mut Self {
        self.informational = true;
        self
    }

    pub fn is_informational(&self) -> bool {
        self.informational
    }

    /// Pass iff every bounded residual and every condition holds; an empty
    /// residual list never passes.
    pub fn verdict(&self) -> Verdict {
        if self.informational {
            return Verdict::Informational;
        }
        let ok = !self.residuals.is_empty()
            && self.residuals.iter().all(|r| r.bound.holds(r.value))
            && self.conditions.iter().all(|(_, h)| *h);
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Replace every upper tolerance with `tol`.
    pub fn override_tolerance(&mut self, tol: f64) {
        for r in &mut self.residuals {
            if let Bound::Below(_) = r.bound {
                r.bound = Bound::Below(tol);
            }
        }
        self.note(format!("tolerance overridden to {tol:e}"));
    }

    pub fn max_residual(&self, label_prefix: &str) -> Option<f64> {
        self.residuals
            .iter()
            .filter(|r| r.label.starts_with(label_prefix))
            .map(|r| r.value)
            .reduce(f64::max)
    }

    /// Human-readable notes: free text, then one line per residual and condition.
    pub fn notes_text(&self) -> String {
        let mut lines = self.notes.clone();
        for r in &self.residuals {
            let (rel, thr) = match r.bound {
                Bound::Below(t) => ("<=", format!("{t:e}")),
                Bound::Above(t) => (">=", format!("{t:e}")),
                Bound::Recorded => ("", String::new()),
            };
            let status = if r.bound.holds(r.value) { "ok" } else { "VIOLATED" };
            if rel.is_empty() {
                lines.push(format!("[N={}] {} = {:e}", r.order, r.label, r.value));
            } else {
                lines.push(format!("[N={}] {} = {:e} (required {rel} {thr}: {status})", r.order, r.label, r.value));
            }
        }
        for (label, holds) in &self.conditions {
            lines.push(format!("{label}: {}", if *holds { "holds" } else { "FAILS" }));
        }
        lines.join("; ")
    }
}

impl Serialize for CheckReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CheckReport", 6)?;
        st.serialize_field("check", &self.check_name)?;
        st.serialize_field("params", &self.params_echo)?;
        st.serialize_field("residuals", &self.residuals)?;
        st.serialize_field("verdict", &self.verdict())?;
        st.serialize_field("notes", &self.notes_text())?;
        st.serialize_field("tool_version", TOOL_VERSION)?;
        st.end()
    }
}
