//! Export the coordination graph as GEXF 1.2 and GraphML for Gephi, with
//! community and degree attributes and degree-sized nodes.
//!
//! Run with: `cargo run --example export_gephi`

use coornet::detect::{detect, DetectionParams};
use coornet::ingest::group_tweets;
use coornet::louvain;
use coornet::report::{export_graph, GraphFormat};
use coornet::synth::{generate, SynthConfig};

fn main() {
    let (records, _) = generate(&SynthConfig::default()).unwrap();
    let groups = group_tweets(&records);
    let detection = detect(&groups, &DetectionParams::default()).unwrap();
    let communities = louvain(&detection.graph, 1.0, 42).unwrap();

    let out_dir = std::env::temp_dir().join("coornet_export_example");
    std::fs::create_dir_all(&out_dir).unwrap();

    for (format, extension) in [(GraphFormat::Gexf, "gexf"), (GraphFormat::Graphml, "graphml")] {
        let path = out_dir.join(format!("coordination.{extension}"));
        let mut buffer = Vec::new();
        export_graph(&mut buffer, &detection.graph, &communities, format).unwrap();
        std::fs::write(&path, &buffer).unwrap();
        println!("wrote {} ({} bytes)", path.display(), buffer.len());
    }

    println!(
        "\n{} accounts, {} edges, {} communities",
        detection.graph.node_count(),
        detection.graph.edge_count(),
        communities.community_count()
    );

    let mut gexf = Vec::new();
    export_graph(&mut gexf, &detection.graph, &communities, GraphFormat::Gexf).unwrap();
    let text = String::from_utf8(gexf).unwrap();
    println!("\nGEXF head (node sizes carry the degree for Gephi):\n");
    for line in text.lines().take(22) {
        println!("  {line}");
    }
    println!("  ...");
}
