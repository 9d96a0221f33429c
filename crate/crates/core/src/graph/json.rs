use serde::{Deserialize, Serialize};

use super::{degree_of, placeholder_index, AnnotatedGraph, GraphError, LabeledGraph, Skel, SkeletonGraph};

/// Wire format shared by graphs, skeletons and predicate bodies.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    #[serde(default)]
    pub nodes: Vec<NodeDoc>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub id: String,
    #[serde(default)]
    pub anno: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub from: String,
    pub to: String,
    #[serde(default)]
    pub anno: Vec<String>,
}

impl GraphDoc {
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))
    }

    /// Builds a graph, converting every string with `f`.
    pub fn build<T, F>(&self, mut f: F) -> Result<LabeledGraph<T>, GraphError>
    where
        T: Ord + Clone + std::fmt::Display,
        F: FnMut(&str) -> Result<T, GraphError>,
    {
        let mut g = LabeledGraph::new();
        for n in &self.nodes {
            let anno = n.anno.iter().map(|a| f(a)).collect::<Result<Vec<_>, _>>()?;
            g.add_node(f(&n.id)?, anno)?;
        }
        for e in &self.edges {
            let anno = e.anno.iter().map(|a| f(a)).collect::<Result<Vec<_>, _>>()?;
            g.add_edge(f(&e.from)?, f(&e.to)?, anno)?;
        }
        Ok(g)
    }

    pub fn to_object(&self) -> Result<AnnotatedGraph, GraphError> {
        self.build(|s| match placeholder_index(s) {
            Some(_) => Err(GraphError::PlaceholderInObjectGraph(s.to_string())),
            None => Ok(s.to_string()),
        })
    }

    pub fn to_skeleton(&self) -> Result<SkeletonGraph, GraphError> {
        let g = self.build(Skel::parse)?;
        degree_of(&g)?;
        Ok(g)
    }
}

impl<T: Ord + ToString> From<&LabeledGraph<T>> for GraphDoc {
    fn from(g: &LabeledGraph<T>) -> Self {
        let strs = |s: &std::collections::BTreeSet<T>| s.iter().map(T::to_string).collect();
        GraphDoc {
            nodes: g
                .node_entries()
                .map(|(id, anno)| NodeDoc {
                    id: id.to_string(),
                    anno: strs(anno),
                })
                .collect(),
            edges: g
                .edge_entries()
                .map(|((a, b), anno)| EdgeDoc {
                    from: a.to_string(),
                    to: b.to_string(),
                    anno: strs(anno),
                })
                .collect(),
        }
    }
}

/// Loads an object-level graph; placeholder strings are rejected.
pub fn parse_object_graph(text: &str) -> Result<AnnotatedGraph, GraphError> {
    GraphDoc::from_json(text)?.to_object()
}

/// Loads a skeleton graph and checks its degree property.
pub fn parse_skeleton_graph(text: &str) -> Result<SkeletonGraph, GraphError> {
    GraphDoc::from_json(text)?.to_skeleton()
}
