use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::quiver::{Quiver, Vertex};
use super::seed::Seed;
use super::ClusterError;
use crate::algebra::RationalFn;

fn is_true(b: &bool) -> bool {
    *b
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    pub level: usize,
    pub frozen: bool,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub active: bool,
    pub var: RationalFn,
}

/// `{"vertices":[{id, level, frozen, var}], "eps2":[[..]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeedJson {
    pub vertices: Vec<VertexJson>,
    pub eps2: Vec<Vec<i32>>,
}

pub fn seed_to_json(s: &Seed) -> SeedJson {
    SeedJson {
        vertices: s
            .quiver
            .vertices()
            .iter()
            .zip(s.vars())
            .map(|(v, (_, r))| VertexJson { id: v.id, level: v.level, frozen: v.frozen, active: v.active, var: r.clone() })
            .collect(),
        eps2: s.quiver.matrix().to_vec(),
    }
}

pub fn seed_from_json(j: &SeedJson) -> Result<Seed, ClusterError> {
    let vertices = j
        .vertices
        .iter()
        .map(|v| Vertex { id: v.id, level: v.level, frozen: v.frozen, active: v.active })
        .collect();
    let q = Quiver::new(vertices, j.eps2.clone())?;
    Seed::new(q, j.vertices.iter().map(|v| v.var.clone()).collect())
}

/// Graphviz rendering: frozen vertices boxed, half-weight arrows dashed,
/// weights above 1 labeled. With a seed, nodes show their variables.
pub fn quiver_dot(q: &Quiver, seed: Option<&Seed>) -> String {
    let mut out = String::from("digraph quiver {\n  rankdir=LR;\n");
    for v in q.vertices() {
        let mut label = v.id.to_string();
        if let Some(r) = seed.and_then(|s| s.var(v.id).ok()) {
            let _ = write!(label, "\\n{r}");
        }
        let shape = if v.frozen { "box" } else { "ellipse" };
        let extra = if v.active { "" } else { ", style=dotted" };
        let _ = writeln!(out, "  v{} [label=\"{label}\", shape={shape}{extra}];", v.id);
    }
    for a in q.arrows() {
        let mut attrs = Vec::new();
        if a.weight2 % 2 != 0 {
            attrs.push("style=dashed".to_string());
            if a.weight2 > 1 {
                attrs.push(format!("label=\"{}/2\"", a.weight2));
            }
        } else if a.weight2 > 2 {
            attrs.push(format!("label=\"{}\"", a.weight2 / 2));
        }
        let attrs = if attrs.is_empty() { String::new() } else { format!(" [{}]", attrs.join(", ")) };
        let _ = writeln!(out, "  v{} -> v{}{attrs};", a.from, a.to);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;
    use crate::cluster::{initial_seed, seeds_equal};

    #[test]
    fn json_round_trip() {
        let s = initial_seed(&parse_braid("1,3,1,2,1,3,1,2", None).unwrap()).mutate(3).unwrap();
        let text = serde_json::to_string(&seed_to_json(&s)).unwrap();
        assert!(text.starts_with(r#"{"vertices":[{"id":1,"level":1,"frozen":false,"var":"b1"}"#));
        let back = seed_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert!(seeds_equal(&s, &back));
        assert_eq!(back.quiver, s.quiver);
    }

    #[test]
    fn dot_styles() {
        let s = initial_seed(&parse_braid("1,3,1,2,1,3,1,2", None).unwrap());
        let dot = quiver_dot(&s.quiver, Some(&s));
        assert!(dot.contains("v8 [label=\"8\\n"));
        assert!(dot.contains("shape=box"));
        assert!(dot.contains("v8 -> v7 [style=dashed];"));
        assert!(dot.contains("v1 -> v3;"));
        assert_eq!(dot.matches("->").count(), 11);
    }
}
