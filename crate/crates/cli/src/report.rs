//! Report objects emitted by every command: structured, human-readable JSON
//! with a stable field order, round-tripping losslessly.

use bjorth_core::{
    ClassifyReport, Complex64, FtaReport, JGammaReport, NormReport, NormingSet, OrthoDecision,
    RunConfig, ScenarioReport, WindingResult,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    pub expressions: Vec<String>,
    pub curve: Option<String>,
    /// Extra command options as (name, value) pairs, in a fixed order.
    pub options: Vec<(String, String)>,
}

impl Inputs {
    pub fn new(expressions: Vec<String>, curve: Option<String>) -> Inputs {
        Inputs {
            expressions,
            curve,
            options: Vec::new(),
        }
    }

    pub fn with_option(mut self, name: &str, value: impl ToString) -> Inputs {
        self.options.push((name.to_string(), value.to_string()));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthoOutput {
    pub minimize: Option<OrthoDecision>,
    pub covering: Option<OrthoDecision>,
    /// Whether the two paths reached the same verdict (when both ran).
    pub agreement: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringOutput {
    pub covering: bool,
    pub witness: Option<Complex64>,
    pub pair_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CommandOutput {
    Norm(NormReport),
    NormingSet(NormingSet),
    JGamma(JGammaReport),
    Classify(ClassifyReport),
    Ortho(OrthoOutput),
    Covering(CoveringOutput),
    Zeros(WindingResult),
    Fta(FtaReport),
    DerivScenario(ScenarioReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Inputs,
    pub outputs: CommandOutput,
    /// Wall-clock milliseconds; the only field allowed to differ between
    /// identical runs.
    pub timing_ms: f64,
    pub config: RunConfig,
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn from_text(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips_losslessly() {
        let report = Report {
            command: "norm".into(),
            inputs: Inputs::new(vec!["z^3".into()], Some("circle(0,2)".into()))
                .with_option("eps", 1e-6),
            outputs: CommandOutput::Norm(NormReport {
                norm_value: 8.000000000000002,
                argmax_params: vec![0.0, 0.125, 0.7071067811865476],
                grid_size: 4096,
            }),
            timing_ms: 12.25,
            config: RunConfig::default(),
        };
        let text = report.to_text();
        let back = Report::from_text(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.to_text(), text);
    }
}
