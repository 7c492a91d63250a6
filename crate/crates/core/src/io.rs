//! JSON graph documents.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpgError};
use crate::graph::VertexId;

/// On-disk and wire form of a game graph.
///
/// Field order is fixed, so serialization is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub directed: bool,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub edges: Vec<(VertexId, VertexId, i64)>,
    pub s: VertexId,
    pub t: VertexId,
}

impl GraphDocument {
    /// Parse and check index ranges. Costs and graph-level rules are checked
    /// later by [`crate::graph::GameGraph::from_document`].
    pub fn parse(text: &str) -> Result<Self> {
        let doc: GraphDocument = serde_json::from_str(text).map_err(|e| SpgError::SchemaError {
            field: missing_field(&e.to_string()).unwrap_or_else(|| "document".into()),
            message: e.to_string(),
        })?;
        doc.check_ranges()?;
        Ok(doc)
    }

    pub fn check_ranges(&self) -> Result<()> {
        let schema = |field: String, message: String| Err(SpgError::SchemaError { field, message });
        if let Some(labels) = &self.labels {
            if labels.len() != self.n {
                return schema("labels".into(), format!("{} labels for n={}", labels.len(), self.n));
            }
        }
        for (field, v) in [("s", self.s), ("t", self.t)] {
            if v >= self.n {
                return schema(field.into(), format!("index {v} out of range 0..{}", self.n));
            }
        }
        for (i, &(u, v, _)) in self.edges.iter().enumerate() {
            if u >= self.n || v >= self.n {
                return schema(format!("edges[{i}]"), format!("endpoint ({u},{v}) out of range 0..{}", self.n));
            }
        }
        Ok(())
    }

    /// Canonical single-line JSON.
    pub fn serialize(&self) -> String {
        serde_json::to_string(self).expect("document serialization cannot fail")
    }

    pub fn serialize_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization cannot fail")
    }

    pub fn label(&self, v: VertexId) -> String {
        self.labels.as_ref().map_or_else(|| v.to_string(), |l| l[v].clone())
    }
}

fn missing_field(msg: &str) -> Option<String> {
    let rest = msg.strip_prefix("missing field `")?;
    Some(rest.split('`').next()?.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE2: &str = r#"{
        "directed": true, "n": 6, "labels": ["s","a","b","c","d","t"],
        "edges": [[0,1,5],[1,3,1],[1,2,2],[3,4,5],[3,5,6],[2,4,1],[4,5,1]],
        "s": 0, "t": 5
    }"#;

    #[test]
    fn parses_and_reserializes_canonically() {
        let doc = GraphDocument::parse(EXAMPLE2).unwrap();
        let canon = doc.serialize();
        assert_eq!(
            canon,
            r#"{"directed":true,"n":6,"labels":["s","a","b","c","d","t"],"edges":[[0,1,5],[1,3,1],[1,2,2],[3,4,5],[3,5,6],[2,4,1],[4,5,1]],"s":0,"t":5}"#
        );
        assert_eq!(GraphDocument::parse(&canon).unwrap(), doc);
    }

    #[test]
    fn missing_t_is_schema_error() {
        let err = GraphDocument::parse(r#"{"directed":true,"n":2,"edges":[[0,1,1]],"s":0}"#).unwrap_err();
        match err {
            SpgError::SchemaError { field, .. } => assert_eq!(field, "t"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn edge_out_of_range_is_schema_error() {
        let err = GraphDocument::parse(r#"{"directed":true,"n":2,"edges":[[0,2,1]],"s":0,"t":1}"#).unwrap_err();
        assert!(matches!(err, SpgError::SchemaError { ref field, .. } if field == "edges[0]"));
    }

    #[test]
    fn syntax_error_reports_line() {
        let err = GraphDocument::parse("{\n\"directed\": tru }").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }
}
