//! Everything a human inspects afterwards: the detection report JSON,
//! Gephi-loadable graph files (GEXF 1.2 and GraphML) with community and
//! degree attributes, and pie-chart CSVs for the amplification rankings.
//!
//! All writers are pure functions of their inputs: lists are sorted, map
//! keys ordered, and no timestamps are embedded, so equal inputs produce
//! byte-identical files.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::amplify::AmplificationRanking;
use crate::community::CommunityAssignment;
use crate::detect::{CoordGraph, Detection, DetectionParams, Thresholds};
use crate::error::{Error, Result};
use crate::evaluate::Metrics;

/// Dataset-level tallies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub groups: u64,
    pub eligible_groups: u64,
    pub suspect_groups: u64,
    pub accounts: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub account: String,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub source: String,
    pub target: String,
    pub weight: u64,
}

/// The highly coordinated graph in serializable form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct GraphSection {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

impl GraphSection {
    pub fn from_graph(graph: &CoordGraph) -> GraphSection {
        GraphSection {
            nodes: graph
                .nodes
                .iter()
                .zip(&graph.degrees)
                .map(|(account, &degree)| GraphNode {
                    account: account.clone(),
                    degree,
                })
                .collect(),
            edges: graph
                .edges
                .iter()
                .map(|&(a, b, weight)| GraphEdge {
                    source: graph.nodes[a as usize].clone(),
                    target: graph.nodes[b as usize].clone(),
                    weight,
                })
                .collect(),
        }
    }

    /// Rebuild the in-memory graph; degrees are recomputed from the edges.
    pub fn to_graph(&self) -> CoordGraph {
        CoordGraph::from_weighted_pairs(
            self.edges
                .iter()
                .map(|e| (e.source.clone(), e.target.clone(), e.weight)),
        )
    }
}

/// Account and domain rankings, when the amplification stage ran.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct AmplificationSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accounts: Option<AmplificationRanking>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domains: Option<AmplificationRanking>,
}

/// The single artifact the pipeline accumulates stage by stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionReport {
    pub dataset: String,
    pub tool_version: String,
    pub parameters: DetectionParams,
    pub thresholds: Thresholds,
    pub counts: Counts,
    pub tier1: Vec<String>,
    pub tier2: Vec<String>,
    pub suspect_group_ids: Vec<String>,
    pub coordinated_group_ids: Vec<String>,
    pub graph: GraphSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub communities: Option<CommunityAssignment>,
    #[serde(default, skip_serializing_if = "is_empty_amplification")]
    pub amplification: AmplificationSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<Metrics>,
}

fn is_empty_amplification(section: &AmplificationSection) -> bool {
    section.accounts.is_none() && section.domains.is_none()
}

pub fn tool_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

/// Assemble a report from a finished detection run. Community labels,
/// rankings and metrics are attached by their own stages.
pub fn build_report(
    dataset: impl Into<String>,
    params: &DetectionParams,
    detection: &Detection,
    total_groups: u64,
    coordinated_group_ids: &BTreeSet<String>,
) -> DetectionReport {
    DetectionReport {
        dataset: dataset.into(),
        tool_version: tool_version(),
        parameters: params.clone(),
        thresholds: detection.tiers.thresholds,
        counts: Counts {
            groups: total_groups,
            eligible_groups: detection.eligible_groups as u64,
            suspect_groups: detection.tiers.flagged_group_ids.len() as u64,
            accounts: detection.account_count as u64,
        },
        tier1: detection.tiers.tier1.iter().cloned().collect(),
        tier2: detection.tiers.tier2.iter().cloned().collect(),
        suspect_group_ids: detection.tiers.flagged_group_ids.iter().cloned().collect(),
        coordinated_group_ids: coordinated_group_ids.iter().cloned().collect(),
        graph: GraphSection::from_graph(&detection.graph),
        communities: None,
        amplification: AmplificationSection::default(),
        metrics: None,
    }
}

/// Serialize with stable key order and a trailing newline; re-reading
/// yields an equal report.
pub fn write_report<W: Write>(mut writer: W, report: &DetectionReport) -> Result<()> {
    let json = serde_json::to_string_pretty(report).map_err(|e| Error::Json {
        path: "<report>".into(),
        source: e,
    })?;
    writer
        .write_all(json.as_bytes())
        .and_then(|_| writer.write_all(b"\n"))
        .map_err(|e| Error::io("<report>", e))
}

pub fn write_report_file(path: &Path, report: &DetectionReport) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    write_report(std::io::BufWriter::new(file), report)
}

pub fn read_report_file(path: &Path) -> Result<DetectionReport> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    serde_json::from_str(&text).map_err(|e| Error::Json {
        path: path.display().to_string(),
        source: e,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFormat {
    Gexf,
    Graphml,
}

impl std::str::FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "gexf" => Ok(GraphFormat::Gexf),
            "graphml" => Ok(GraphFormat::Graphml),
            other => Err(format!("unknown format `{other}` (expected gexf or graphml)")),
        }
    }
}

fn xml_escape(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    for ch in raw.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(ch),
        }
    }
    out
}

/// Export the graph with `community` and `degree` node attributes in a
/// Gephi-compatible format. GEXF additionally sizes nodes by degree.
/// Every node must be labeled.
pub fn export_graph<W: Write>(
    writer: W,
    graph: &CoordGraph,
    communities: &CommunityAssignment,
    format: GraphFormat,
) -> Result<()> {
    for account in &graph.nodes {
        if !communities.labels.contains_key(account) {
            return Err(Error::UnlabeledNode(account.clone()));
        }
    }
    match format {
        GraphFormat::Gexf => export_gexf(writer, graph, communities),
        GraphFormat::Graphml => export_graphml(writer, graph, communities),
    }
}

fn export_gexf<W: Write>(
    mut w: W,
    graph: &CoordGraph,
    communities: &CommunityAssignment,
) -> Result<()> {
    let io_err = |e: std::io::Error| Error::io("<gexf>", e);
    let mut body = String::new();
    body.push_str(concat!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
        "<gexf xmlns=\"http://www.gexf.net/1.2draft\"",
        " xmlns:viz=\"http://www.gexf.net/1.2draft/viz\"",
        " version=\"1.2\">\n",
    ));
    body.push_str("  <meta>\n    <creator>coornet ");
    body.push_str(&tool_version());
    body.push_str("</creator>\n  </meta>\n");
    body.push_str("  <graph mode=\"static\" defaultedgetype=\"undirected\">\n");
    body.push_str(concat!(
        "    <attributes class=\"node\">\n",
        "      <attribute id=\"0\" title=\"community\" type=\"integer\"/>\n",
        "      <attribute id=\"1\" title=\"degree\" type=\"integer\"/>\n",
        "    </attributes>\n",
    ));
    body.push_str("    <nodes>\n");
    for (i, account) in graph.nodes.iter().enumerate() {
        let name = xml_escape(account);
        let degree = graph.degrees[i];
        let community = communities.labels[account];
        body.push_str(&format!(
            concat!(
                "      <node id=\"{name}\" label=\"{name}\">\n",
                "        <attvalues>\n",
                "          <attvalue for=\"0\" value=\"{community}\"/>\n",
                "          <attvalue for=\"1\" value=\"{degree}\"/>\n",
                "        </attvalues>\n",
                "        <viz:size value=\"{degree}\"/>\n",
                "      </node>\n",
            ),
            name = name,
            community = community,
            degree = degree,
        ));
    }
    body.push_str("    </nodes>\n    <edges>\n");
    for (index, &(a, b, weight)) in graph.edges.iter().enumerate() {
        body.push_str(&format!(
            "      <edge id=\"{index}\" source=\"{}\" target=\"{}\" weight=\"{weight}\"/>\n",
            xml_escape(&graph.nodes[a as usize]),
            xml_escape(&graph.nodes[b as usize]),
        ));
    }
    body.push_str("    </edges>\n  </graph>\n</gexf>\n");
    w.write_all(body.as_bytes()).map_err(io_err)
}

fn export_graphml<W: Write>(
    mut w: W,
    graph: &CoordGraph,
    communities: &CommunityAssignment,
) -> Result<()> {
    let io_err = |e: std::io::Error| Error::io("<graphml>", e);
    let mut body = String::new();
    body.push_str(concat!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
        "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"",
        " xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"",
        " xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns",
        " http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n",
        "  <key id=\"community\" for=\"node\" attr.name=\"community\" attr.type=\"int\"/>\n",
        "  <key id=\"degree\" for=\"node\" attr.name=\"degree\" attr.type=\"int\"/>\n",
        "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n",
        "  <graph id=\"G\" edgedefault=\"undirected\">\n",
    ));
    for (i, account) in graph.nodes.iter().enumerate() {
        let name = xml_escape(account);
        body.push_str(&format!(
            concat!(
                "    <node id=\"{name}\">\n",
                "      <data key=\"community\">{community}</data>\n",
                "      <data key=\"degree\">{degree}</data>\n",
                "    </node>\n",
            ),
            name = name,
            community = communities.labels[account],
            degree = graph.degrees[i],
        ));
    }
    for (index, &(a, b, weight)) in graph.edges.iter().enumerate() {
        body.push_str(&format!(
            concat!(
                "    <edge id=\"e{index}\" source=\"{source}\" target=\"{target}\">\n",
                "      <data key=\"weight\">{weight}</data>\n",
                "    </edge>\n",
            ),
            index = index,
            source = xml_escape(&graph.nodes[a as usize]),
            target = xml_escape(&graph.nodes[b as usize]),
            weight = weight,
        ));
    }
    body.push_str("  </graph>\n</graphml>\n");
    w.write_all(body.as_bytes()).map_err(io_err)
}

pub fn export_graph_file(
    path: &Path,
    graph: &CoordGraph,
    communities: &CommunityAssignment,
    format: GraphFormat,
) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    export_graph(std::io::BufWriter::new(file), graph, communities, format)
}

/// Write a ranking as pie-chart data: `name,count,share` with shares at
/// four decimal places. An empty ranking produces a header-only file.
pub fn emit_pie_data<W: Write>(writer: W, ranking: &AmplificationRanking) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    let io_err = |e: csv::Error| Error::io("<pie csv>", std::io::Error::other(e));
    csv.write_record(["name", "count", "share"]).map_err(io_err)?;
    for entry in &ranking.entries {
        csv.write_record([
            entry.name.as_str(),
            &entry.count.to_string(),
            &format!("{:.4}", entry.share),
        ])
        .map_err(io_err)?;
    }
    csv.flush().map_err(|e| Error::io("<pie csv>", e))?;
    Ok(())
}

pub fn emit_pie_data_file(path: &Path, ranking: &AmplificationRanking) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    emit_pie_data(std::io::BufWriter::new(file), ranking)
}
