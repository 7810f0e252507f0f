use std::fmt;

use crate::models::line::SpinWindow;

/// Parameters a run was produced with, carried alongside its entropy values.
#[derive(Debug, Clone, PartialEq)]
pub struct RunMeta {
    pub model: String,
    pub transparency: Option<f64>,
    pub beta: Option<f64>,
    pub outputs: Option<usize>,
    pub window: Option<SpinWindow>,
    pub steps: usize,
}

impl RunMeta {
    pub fn new(model: impl Into<String>, steps: usize) -> Self {
        Self { model: model.into(), transparency: None, beta: None, outputs: None, window: None, steps }
    }

    pub fn with_transparency(mut self, t: f64) -> Self {
        self.transparency = Some(t);
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn with_outputs(mut self, z: usize) -> Self {
        self.outputs = Some(z);
        self
    }

    pub fn with_window(mut self, window: SpinWindow) -> Self {
        self.window = Some(window);
        self
    }

    /// Short human-readable label, used for plot legends.
    pub fn legend(&self) -> String {
        let mut parts = vec![self.model.clone()];
        if let Some(t) = self.transparency {
            parts.push(format!("T={t}"));
        }
        if let Some(z) = self.outputs {
            parts.push(format!("Z={z}"));
        }
        if let Some(b) = self.beta {
            parts.push(format!("beta={b}"));
        }
        if let Some(w) = &self.window {
            parts.push(format!("spins={w}"));
        }
        parts.join(" ")
    }
}

impl fmt::Display for RunMeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} steps={}", self.legend(), self.steps)
    }
}

/// Entropy `S(tau)` in nats, indexed by step from `tau = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropySeries {
    pub values: Vec<f64>,
    pub meta: RunMeta,
}

impl EntropySeries {
    pub fn new(values: Vec<f64>, meta: RunMeta) -> Self {
        Self { values, meta }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn last(&self) -> Option<f64> {
        self.values.last().copied()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}
