//! Application records for kernelization audits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{TimeStep, VertexId};

/// Instance summary snapshot around one rule application.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStats {
    pub n: usize,
    pub appearances: u64,
    pub lifetime: TimeStep,
    pub p: i64,
}

/// One rule application. `deleted` and `edges_removed` use pre-application
/// vertex ids; `created` and `edges_added` use post-application ids
/// (survivors are compacted in order, created vertices appended). Edges
/// implied by vertex deletion are not listed separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleApplication {
    pub rule: String,
    pub locus: String,
    pub deleted: Vec<VertexId>,
    pub created: Vec<(VertexId, u64)>,
    pub edges_removed: Vec<(VertexId, VertexId, TimeStep)>,
    pub edges_added: Vec<(VertexId, VertexId, TimeStep)>,
    pub before: TraceStats,
    pub after: TraceStats,
}

/// Ordered log of every application of one kernelization run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelTrace {
    pub applications: Vec<RuleApplication>,
}

impl KernelTrace {
    /// One JSON object per line, in application order.
    pub fn to_json_lines(&self) -> Result<String> {
        let mut out = String::new();
        for app in &self.applications {
            let line = serde_json::to_string(app)
                .map_err(|e| Error::InternalError(e.to_string()))?;
            out.push_str(&line);
            out.push('\n');
        }
        Ok(out)
    }

    pub fn from_json_lines(s: &str) -> Result<Self> {
        let mut applications = Vec::new();
        for (i, line) in s.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let app = serde_json::from_str(line)
                .map_err(|e| Error::Syntax { line: i + 1, msg: e.to_string() })?;
            applications.push(app);
        }
        Ok(KernelTrace { applications })
    }
}
