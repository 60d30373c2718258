//! Structured, deterministic report documents.
//!
//! Every command of the CLI emits exactly one self-describing JSON document
//! built from these types. Identical inputs produce byte-identical
//! documents regardless of worker count: all collections are sorted and no
//! timing data is embedded (wall time goes to stderr).

use serde::{Deserialize, Serialize};

use crate::group::FiniteGroup;
use crate::search::TssClassReport;
use crate::theorems::{BoundScanResult, ClassifyOutcome, HoelderOutcome, HomSummary};
use crate::tss::TssCertificate;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo {
            name: "totsym".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Echo of the run configuration. Round-trips through serde; the worker
/// count is deliberately not part of it, since output must not depend on
/// parallelism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct ConfigEcho {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_file: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub set: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub up_to_conjugacy: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selector: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_order: Option<usize>,
    pub budget_secs: u64,
    pub format: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

/// The single document a run emits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document<T> {
    pub tool: ToolInfo,
    pub config: ConfigEcho,
    pub result: T,
}

impl<T: Serialize> Document<T> {
    pub fn new(config: ConfigEcho, result: T) -> Self {
        Document {
            tool: ToolInfo::current(),
            config,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serialization");
        text.push('\n');
        text
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    /// 1-based positions swapped by this witness.
    pub swap: [usize; 2],
    pub by: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub members: Vec<String>,
    pub witnesses: Vec<WitnessDoc>,
    pub realized_group_order: usize,
}

impl CertificateDoc {
    pub fn render(group: &FiniteGroup, certificate: &TssCertificate) -> Self {
        CertificateDoc {
            members: certificate
                .member_ids
                .iter()
                .map(|&id| group.perm(id).to_string())
                .collect(),
            witnesses: certificate
                .adjacent_witnesses
                .iter()
                .enumerate()
                .map(|(i, &w)| WitnessDoc {
                    swap: [i + 1, i + 2],
                    by: group.perm(w).to_string(),
                })
                .collect(),
            realized_group_order: certificate.realized_group_order,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub group: String,
    pub members: Vec<String>,
    pub totally_symmetric: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDoc>,
    /// When not totally symmetric: the first permutation of the tuple, in
    /// generation order, that no group element realizes (as a permutation
    /// of positions 1..k).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unrealized_permutation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub representative: Vec<String>,
    pub orbit_size: usize,
    pub certificate: CertificateDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchDoc {
    pub group: String,
    pub k: usize,
    pub up_to_conjugacy: bool,
    pub complete: bool,
    pub class_count: usize,
    pub total_count: usize,
    pub classes: Vec<ClassDoc>,
}

impl SearchDoc {
    pub fn render(group: &FiniteGroup, report: &TssClassReport) -> Self {
        SearchDoc {
            group: report.group_label.clone(),
            k: report.k,
            up_to_conjugacy: report.up_to_conjugacy,
            complete: report.complete,
            class_count: report.classes.len(),
            total_count: report.total_count,
            classes: report
                .classes
                .iter()
                .map(|class| ClassDoc {
                    representative: class
                        .representative
                        .iter()
                        .map(|&id| group.perm(id).to_string())
                        .collect(),
                    orbit_size: class.orbit_size,
                    certificate: CertificateDoc::render(group, &class.certificate),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRowDoc {
    pub label: String,
    pub order: usize,
    pub max_tss: usize,
    pub bound_ok: bool,
    pub equality_case: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iso_sym_confirmed: Option<bool>,
    pub commuting_bound_ok: bool,
    pub complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl From<&BoundScanResult> for BoundRowDoc {
    fn from(r: &BoundScanResult) -> Self {
        BoundRowDoc {
            label: r.label.clone(),
            order: r.order,
            max_tss: r.max_tss,
            bound_ok: r.bound_ok,
            equality_case: r.equality_case,
            iso_sym_confirmed: r.iso_sym_confirmed,
            commuting_bound_ok: r.commuting_bound_ok,
            complete: r.complete,
            counterexample: r.counterexample.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSectionDoc {
    pub max_order: usize,
    pub pass: bool,
    pub group_count: usize,
    pub rows: Vec<BoundRowDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifySectionDoc {
    pub n: usize,
    pub k: usize,
    pub expected_classes: usize,
    pub found_classes: usize,
    pub pass: bool,
    pub detail: String,
    pub classes: Vec<ClassDoc>,
}

impl ClassifySectionDoc {
    pub fn render(group: &FiniteGroup, outcome: &ClassifyOutcome) -> Self {
        let search = SearchDoc::render(group, &outcome.report);
        ClassifySectionDoc {
            n: outcome.n,
            k: outcome.k,
            expected_classes: outcome.expected_classes,
            found_classes: outcome.report.classes.len(),
            pass: outcome.pass,
            detail: outcome.detail.clone(),
            classes: search.classes,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomSummaryDoc {
    pub transposition_image: String,
    pub cycle_image: String,
    pub tag: String,
}

impl From<&HomSummary> for HomSummaryDoc {
    fn from(s: &HomSummary) -> Self {
        HomSummaryDoc {
            transposition_image: s.transposition_image.clone(),
            cycle_image: s.cycle_image.clone(),
            tag: s.tag.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoelderSectionDoc {
    pub n: usize,
    pub m: usize,
    pub part: u8,
    pub pass: bool,
    pub hom_count: usize,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<HomSummaryDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aut_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_order: Option<usize>,
}

impl From<&HoelderOutcome> for HoelderSectionDoc {
    fn from(o: &HoelderOutcome) -> Self {
        HoelderSectionDoc {
            n: o.n,
            m: o.m,
            part: o.part,
            pass: o.pass,
            hom_count: o.hom_count,
            detail: o.detail.clone(),
            counterexample: o.counterexample.as_ref().map(HomSummaryDoc::from),
            aut_count: o.aut_count,
            out_order: o.out_order,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct TheoremsDoc {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundSectionDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub classify: Vec<ClassifySectionDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub hoelder: Vec<HoelderSectionDoc>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_echo_round_trips() {
        let config = ConfigEcho {
            command: "search".into(),
            group: Some("S6".into()),
            group_file: None,
            set: vec![],
            size: Some(5),
            up_to_conjugacy: Some(true),
            selector: None,
            n: None,
            m: None,
            max_order: None,
            budget_secs: 1800,
            format: "json".into(),
            out: None,
        };
        let text = serde_json::to_string(&config).unwrap();
        let back: ConfigEcho = serde_json::from_str(&text).unwrap();
        assert_eq!(config, back);
    }

    #[test]
    fn document_round_trips() {
        let config = ConfigEcho {
            command: "verify".into(),
            group: Some("S4".into()),
            set: vec!["(1 2)".into()],
            budget_secs: 60,
            format: "json".into(),
            ..Default::default()
        };
        let doc = Document::new(
            config,
            VerifyDoc {
                group: "S4".into(),
                members: vec!["(1 2)".into()],
                totally_symmetric: true,
                certificate: None,
                unrealized_permutation: None,
            },
        );
        let text = doc.to_json();
        let back: Document<VerifyDoc> = serde_json::from_str(&text).unwrap();
        assert_eq!(doc, back);
    }
}
