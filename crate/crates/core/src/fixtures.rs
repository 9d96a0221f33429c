//! Small named graphs used throughout the tests, the acceptance suite and
//! the bundled data files.

use crate::graph::{AnnotatedGraph, Skel, SkeletonGraph};

fn build(nodes: &[(&str, &[&str])], edges: &[(&str, &str, &[&str])]) -> AnnotatedGraph {
    let mut g = AnnotatedGraph::new();
    for (id, anno) in nodes {
        g.add_node(id.to_string(), anno.iter().map(|s| s.to_string()))
            .expect("fixture nodes are distinct");
    }
    for (a, b, anno) in edges {
        g.add_edge(a.to_string(), b.to_string(), anno.iter().map(|s| s.to_string()))
            .expect("fixture edges are well-formed");
    }
    g
}

const ATT: &[&str] = &["attacks"];

/// `u1 → u2 → u3`, `u4 → u5`, where u3 and u5 share an ID.
pub fn equiv_chain() -> AnnotatedGraph {
    build(
        &[
            ("u1", &["ID1"]),
            ("u2", &["ID2"]),
            ("u3", &["ID3"]),
            ("u4", &["ID4"]),
            ("u5", &["ID3"]),
        ],
        &[("u1", "u2", ATT), ("u2", "u3", ATT), ("u4", "u5", ATT)],
    )
}

/// `u1 → u2 → u3`, `u4 ⇄ u5 → u6`, where u1~u4 and u3~u6.
pub fn equiv_mutual() -> AnnotatedGraph {
    build(
        &[
            ("u1", &["ID1"]),
            ("u2", &["ID2"]),
            ("u3", &["ID3"]),
            ("u4", &["ID1"]),
            ("u5", &["ID4"]),
            ("u6", &["ID3"]),
        ],
        &[
            ("u1", "u2", ATT),
            ("u2", "u3", ATT),
            ("u4", "u5", ATT),
            ("u5", "u4", ATT),
            ("u5", "u6", ATT),
        ],
    )
}

/// A plain attack graph (empty node annotations) with a 2-cycle and a 3-cycle.
pub fn dung_cycles() -> AnnotatedGraph {
    build(
        &[("txt1", &[]), ("txt2", &[]), ("txt3", &[]), ("txt4", &[]), ("txt5", &[])],
        &[
            ("txt1", "txt2", ATT),
            ("txt2", "txt1", ATT),
            ("txt2", "txt3", ATT),
            ("txt3", "txt4", ATT),
            ("txt4", "txt5", ATT),
            ("txt5", "txt3", ATT),
        ],
    )
}

const TOULMIN_ROLES: [&str; 6] = ["backing", "warrant", "grounds", "qualifier", "claim", "rebuttal"];
const TOULMIN_EDGES: [(usize, usize); 6] = [(1, 2), (2, 4), (2, 5), (3, 4), (4, 5), (6, 5)];

/// A Toulmin argument laid out as an annotated graph over `txt1..txt6`.
pub fn toulmin() -> AnnotatedGraph {
    let mut g = AnnotatedGraph::new();
    for (i, role) in TOULMIN_ROLES.iter().enumerate() {
        g.add_node(format!("txt{}", i + 1), [role.to_string()]).unwrap();
    }
    for (a, b) in TOULMIN_EDGES {
        g.add_edge(format!("txt{a}"), format!("txt{b}"), []).unwrap();
    }
    g
}

/// The degree-6 skeleton matching [`toulmin`] with placeholders for texts.
pub fn toulmin_pattern() -> SkeletonGraph {
    let mut g = SkeletonGraph::new();
    for (i, role) in TOULMIN_ROLES.iter().enumerate() {
        g.add_node(Skel::Hole(i + 1), [Skel::lit(*role)]).unwrap();
    }
    for (a, b) in TOULMIN_EDGES {
        g.add_edge(Skel::Hole(a), Skel::Hole(b), []).unwrap();
    }
    g
}

/// Host graph for [`pattern_skeleton`].
pub fn pattern_host() -> AnnotatedGraph {
    build(
        &[("u4", &["u1"]), ("u2", &["u3"]), ("u8", &["u1"])],
        &[
            ("u4", "u2", &["u5", "u6"]),
            ("u2", "u4", &["u5"]),
            ("u2", "u8", &["u7"]),
            ("u8", "u2", &["u7"]),
        ],
    )
}

/// `*1:{u1} ⇄ u2:{u3}` with both edges annotated `{*2}`.
pub fn pattern_skeleton() -> SkeletonGraph {
    let mut g = SkeletonGraph::new();
    g.add_node(Skel::Hole(1), [Skel::lit("u1")]).unwrap();
    g.add_node(Skel::lit("u2"), [Skel::lit("u3")]).unwrap();
    g.add_edge(Skel::Hole(1), Skel::lit("u2"), [Skel::Hole(2)]).unwrap();
    g.add_edge(Skel::lit("u2"), Skel::Hole(1), [Skel::Hole(2)]).unwrap();
    g
}
