//! Graphviz output of the specialization preorder.

use std::fmt::Write;

use crate::topology::{FinSpace, PointSet};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram of `q ≤ p ⇔ q ∈ U_p`, drawn bottom to top.
///
/// Edges join covering pairs `q < p`; points with the same minimal
/// neighbourhood are joined by a dashed undirected edge. Points in
/// `highlight` are filled.
pub fn specialization_dot(space: &FinSpace, name: &str, highlight: Option<&PointSet>) -> String {
    let n = space.len();
    let strictly_below = |q: usize, p: usize| q != p && space.leq(q, p) && !space.leq(p, q);
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for p in 0..n {
        let filled = highlight.is_some_and(|h| h.contains(p));
        let style = if filled { " style=filled fillcolor=lightblue" } else { "" };
        writeln!(out, "  n{p} [label={}{style}];", quote(&space.point(p).to_string())).unwrap();
    }
    for p in 0..n {
        for q in 0..n {
            if !strictly_below(q, p) {
                continue;
            }
            let covered = (0..n).all(|r| !(strictly_below(q, r) && strictly_below(r, p)));
            if covered {
                writeln!(out, "  n{q} -> n{p};").unwrap();
            }
        }
    }
    for p in 0..n {
        for q in p + 1..n {
            if space.leq(q, p) && space.leq(p, q) {
                writeln!(out, "  n{p} -> n{q} [dir=none style=dashed];").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sierpinski_has_one_edge() {
        let s = FinSpace::sierpinski();
        let dot = specialization_dot(&s, "S", None);
        assert_eq!(dot.matches("->").count(), 1);
        // 1 is open, so 1 ∈ U_0 and 1 sits below 0
        assert!(dot.contains("n1 -> n0;"), "{dot}");
    }

    #[test]
    fn covering_edges_only() {
        // chain x < y < z
        let s = FinSpace::from_labels(&["x", "y", "z"], &[("x", &["x"]), ("y", &["x", "y"]), ("z", &["x", "y", "z"])]).unwrap();
        let dot = specialization_dot(&s, "chain", Some(&s.set_of(["z"]).unwrap()));
        assert_eq!(dot.matches("->").count(), 2);
        assert!(!dot.contains("n0 -> n2"));
        assert_eq!(dot.matches("fillcolor").count(), 1);
    }

    #[test]
    fn indistinguishable_points_are_dashed() {
        let s = FinSpace::indiscrete(&["a", "b"]).unwrap();
        let dot = specialization_dot(&s, "I", None);
        assert!(dot.contains("dashed"));
        assert_eq!(dot.matches("->").count(), 1);
    }
}
