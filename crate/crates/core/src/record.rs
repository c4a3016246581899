//! Machine-readable result records, one JSON object per computed value.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measures::{self, MeasureKind, MeasureResult, Value};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub graph_id: String,
    pub kind: MeasureKind,
    /// Exact value as a reduced fraction.
    pub numerator: i64,
    pub denominator: i64,
    /// Floating-point rendering of the fraction, for plotting.
    pub value: f64,
    /// 1-based labels of the witness set.
    pub witness: Vec<usize>,
    pub exact: bool,
    pub solver: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub wall_time_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub params: Option<serde_json::Value>,
}

impl ResultRecord {
    pub fn new(graph_id: impl Into<String>, res: &MeasureResult, wall_time_ms: u64) -> Self {
        ResultRecord {
            graph_id: graph_id.into(),
            kind: res.kind,
            numerator: *res.value.numer(),
            denominator: *res.value.denom(),
            value: res.value_f64(),
            witness: res.witness.labels(),
            exact: res.exact,
            solver: res.solver.to_string(),
            seed: None,
            wall_time_ms,
            params: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_params(mut self, params: serde_json::Value) -> Self {
        self.params = Some(params);
        self
    }

    pub fn fraction(&self) -> Value {
        Value::new(self.numerator, self.denominator)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records always serialise")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }

    /// Re-evaluates the measure on the recorded witness. For set measures
    /// this must reproduce the recorded fraction.
    pub fn recompute(&self, g: &Graph) -> Result<Value> {
        let s = VertexSet::from_labels(g.node_count(), self.witness.iter().copied())?;
        measures::evaluate(g, self.kind, &s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::measures::brute_force_optimize;

    #[test]
    fn round_trip_and_recompute() {
        let g = generators::gen_star(10).unwrap();
        let res = brute_force_optimize(&g, MeasureKind::Vat).unwrap();
        let rec = ResultRecord::new("star-10", &res, 3).with_seed(7);
        let text = rec.to_json();
        assert!(text.contains("\"kind\": \"vat\""));
        let back = ResultRecord::from_json(&text).unwrap();
        assert_eq!(back, rec);
        assert_eq!((back.numerator, back.denominator), (1, 9));
        assert_eq!(back.witness, vec![1]);
        assert_eq!(back.recompute(&g).unwrap(), back.fraction());
        assert!(ResultRecord::from_json("{").is_err());
    }
}
