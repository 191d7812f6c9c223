//! Serializable run reports and their human-readable rendering.

use std::fmt::Write as _;

use circaut_core::{CirculantGraph, Error, GroupDescription, PermGroup};
use serde::Serialize;

/// One solved graph. Field order is the JSON key order.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub n: usize,
    pub set: Vec<usize>,
    pub method: String,
    pub group: GroupDescription,
    /// Decimal string, exact at any size.
    pub order: String,
    pub generators: Vec<Vec<usize>>,
    pub verified: Option<bool>,
    /// Wall time, present only when timing was requested.
    pub ms: Option<u64>,
}

impl RunReport {
    pub fn new(x: &CirculantGraph, method: &str, group: GroupDescription, realized: &PermGroup) -> Self {
        RunReport {
            n: x.n(),
            set: x.set().to_vec(),
            method: method.to_string(),
            group,
            order: realized.order().to_string(),
            generators: realized.generators().iter().map(|g| g.images().to_vec()).collect(),
            verified: None,
            ms: None,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let set: Vec<String> = self.set.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(out, "X({}; {{{}}})", self.n, set.join(", "));
        let _ = writeln!(out, "Aut = {}", self.group);
        let _ = writeln!(out, "order: {}", self.order);
        let _ = writeln!(out, "method: {}", self.method);
        match self.verified {
            Some(true) => out.push_str("verified: equal to the oracle group\n"),
            Some(false) => out.push_str("verified: DIFFERS from the oracle group\n"),
            None => {}
        }
        if let Some(ms) = self.ms {
            let _ = writeln!(out, "time: {ms} ms");
        }
        let _ = writeln!(out, "generators ({}):", self.generators.len());
        for g in &self.generators {
            let images: Vec<String> = g.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "  [{}]", images.join(" "));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
}

impl From<&Error> for ErrorBody {
    fn from(e: &Error) -> Self {
        ErrorBody {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

/// A batch line that could not be solved.
#[derive(Debug, Clone, Serialize)]
pub struct LineFailure {
    pub line: usize,
    pub input: String,
    pub error: ErrorBody,
}
