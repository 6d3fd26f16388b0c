//! Explicit colored digraphs of finite crystals and their DOT / JSON export.

use std::collections::HashMap;
use std::fmt::{Display, Write as _};

use serde::Serialize;

use crate::crystal::Crystal;
use crate::error::{Error, Result};
use crate::pattern::DEFAULT_SIZE_LIMIT;

/// `table[l][u]`: the image of vertex `u` under one operator of color `l`.
pub type OperatorTable = Vec<Vec<Option<usize>>>;

/// Vertices are sorted; an edge `(u, l, v)` means `f_l(u) = v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrystalGraph<V> {
    pub vertices: Vec<V>,
    pub edges: Vec<(usize, usize, usize)>,
    #[serde(skip)]
    pub colors: usize,
}

pub fn build_graph<C: Crystal>(crystal: &C) -> Result<CrystalGraph<C::Element>> {
    build_graph_capped(crystal, DEFAULT_SIZE_LIMIT)
}

pub fn build_graph_capped<C: Crystal>(crystal: &C, limit: usize) -> Result<CrystalGraph<C::Element>> {
    let mut vertices = crystal.elements_capped(limit)?;
    vertices.sort();
    let index: HashMap<&C::Element, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut edges = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        for l in crystal.colors() {
            if let Some(w) = crystal.f(v, l) {
                let j = *index.get(&w).ok_or_else(|| {
                    Error::OracleFailure(format!("f_{l}({v}) = {w} is not an element of the crystal"))
                })?;
                edges.push((i, l, j));
            }
        }
    }
    Ok(CrystalGraph {
        vertices,
        edges,
        colors: crystal.rank() + 1,
    })
}

impl<V> CrystalGraph<V> {
    /// Builds a graph from explicit data; used for hand-made crystals.
    pub fn from_edges(vertices: Vec<V>, edges: Vec<(usize, usize, usize)>, colors: usize) -> Self {
        Self {
            vertices,
            edges,
            colors,
        }
    }

    /// `f_l` as a table: `succ[l][u] = Some(v)` for each edge `(u, l, v)`.
    /// Returns `None` if some vertex has two outgoing or two incoming edges
    /// of one color.
    pub fn operator_tables(&self) -> Option<(OperatorTable, OperatorTable)> {
        let n = self.vertices.len();
        let mut succ = vec![vec![None; n]; self.colors];
        let mut pred = vec![vec![None; n]; self.colors];
        for &(u, l, v) in &self.edges {
            if succ[l][u].replace(v).is_some() || pred[l][v].replace(u).is_some() {
                return None;
            }
        }
        Some((succ, pred))
    }

    /// String lengths `(eps_l, phi_l)` for every vertex and color, obtained by
    /// walking the graph. Strings are assumed acyclic.
    pub fn string_lengths(&self) -> Option<Vec<Vec<(u32, u32)>>> {
        let (succ, pred) = self.operator_tables()?;
        let walk = |table: &Vec<Option<usize>>, mut v: usize| {
            let mut k = 0u32;
            while let Some(w) = table[v] {
                v = w;
                k += 1;
                if k as usize > table.len() {
                    return None;
                }
            }
            Some(k)
        };
        (0..self.vertices.len())
            .map(|v| {
                (0..self.colors)
                    .map(|l| Some((walk(&pred[l], v)?, walk(&succ[l], v)?)))
                    .collect()
            })
            .collect()
    }

    pub fn is_connected(&self, colors: &[usize]) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut uf = UnionFind::new(n);
        for &(u, l, v) in &self.edges {
            if colors.contains(&l) {
                uf.union(u, v);
            }
        }
        (1..n).all(|v| uf.find(v) == uf.find(0))
    }

    /// Connected components under the given colors, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self, colors: &[usize]) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut uf = UnionFind::new(n);
        for &(u, l, v) in &self.edges {
            if colors.contains(&l) {
                uf.union(u, v);
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for v in 0..n {
            groups.entry(uf.find(v)).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }
}

impl<V: Display> CrystalGraph<V> {
    /// Graphviz export; edges are labeled by color.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph crystal {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{}\"];", escape(&v.to_string()));
        }
        for &(u, l, v) in &self.edges {
            let _ = writeln!(out, "  v{u} -> v{v} [label=\"{l}\"];");
        }
        out.push_str("}\n");
        out
    }

    /// Edge list as `(source label, color, target label)`.
    pub fn labeled_edges(&self) -> Vec<(String, usize, String)> {
        self.edges
            .iter()
            .map(|&(u, l, v)| (self.vertices[u].to_string(), l, self.vertices[v].to_string()))
            .collect()
    }
}

impl<V: Serialize> CrystalGraph<V> {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, v: usize) -> usize {
        let mut root = v;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut v = v;
        while self.parent[v] != root {
            let next = self.parent[v];
            self.parent[v] = root;
            v = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
