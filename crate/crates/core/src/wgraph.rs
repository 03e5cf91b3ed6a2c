//! W-graphs read off canonical bases: construction, cells and molecules,
//! quasi-admissibility, duality, and DOT/JSON/CSV export.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use petgraph::algo::kosaraju_scc;
use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::gelfand::{is_twisted, GelfandSet};
use crate::hecke::{
    act, canonical_basis_with, CanonicalBasisTable, CanonicalOptions, ClassifiedBasis, Family,
};
use crate::laurent::Laurent;
use crate::parabolic::{phi_map, KSet};
use crate::report::Report;
use crate::weyl::{CoxeterType, Generator, GroupType};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphFamily {
    M,
    N,
    MTilde,
    NTilde,
}

impl GraphFamily {
    /// The module whose canonical basis supplies the edges.
    pub fn module(self) -> Family {
        match self {
            GraphFamily::M | GraphFamily::MTilde => Family::M,
            GraphFamily::N | GraphFamily::NTilde => Family::N,
        }
    }

    pub fn is_tilde(self) -> bool {
        matches!(self, GraphFamily::MTilde | GraphFamily::NTilde)
    }

    pub fn tilde(self) -> GraphFamily {
        match self.module() {
            Family::M => GraphFamily::MTilde,
            Family::N => GraphFamily::NTilde,
        }
    }
}

impl From<Family> for GraphFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::M => GraphFamily::M,
            Family::N => GraphFamily::N,
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphFamily::M => "m",
            GraphFamily::N => "n",
            GraphFamily::MTilde => "m-tilde",
            GraphFamily::NTilde => "n-tilde",
        })
    }
}

impl FromStr for GraphFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "m" => Ok(GraphFamily::M),
            "n" => Ok(GraphFamily::N),
            "m-tilde" => Ok(GraphFamily::MTilde),
            "n-tilde" => Ok(GraphFamily::NTilde),
            other => Err(Error::Parse(format!("unknown graph family {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub label: String,
    pub asc: BTreeSet<Generator>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub w: i64,
}

/// A graph with vertex ascent sets and integer edge weights; edges are kept
/// sorted by `(src, dst)` and never carry weight zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WGraph {
    pub family: GraphFamily,
    pub group: GroupType,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl WGraph {
    pub fn new(family: GraphFamily, group: GroupType, vertices: Vec<Vertex>, mut edges: Vec<Edge>) -> Result<Self> {
        edges.retain(|e| e.w != 0);
        edges.sort();
        if edges.windows(2).any(|p| (p[0].src, p[0].dst) == (p[1].src, p[1].dst)) {
            return Err(Error::InvalidElement("repeated edge".into()));
        }
        if edges.iter().any(|e| e.src >= vertices.len() || e.dst >= vertices.len() || e.src == e.dst) {
            return Err(Error::InvalidElement("edge endpoint out of range".into()));
        }
        if vertices.iter().map(|v| &v.label).all_unique() {
            Ok(Self {
                family,
                group,
                vertices,
                edges,
            })
        } else {
            Err(Error::InvalidElement("vertex labels are not unique".into()))
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn weight(&self, src: usize, dst: usize) -> i64 {
        self.edges
            .binary_search_by(|e| (e.src, e.dst).cmp(&(src, dst)))
            .map_or(0, |i| self.edges[i].w)
    }

    pub fn weights(&self) -> BTreeSet<i64> {
        self.edges.iter().map(|e| e.w).collect()
    }

    /// The induced subgraph on `keep`, relabelled in that order.
    pub fn restrict(&self, keep: &[usize]) -> WGraph {
        let position: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let vertices = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                Some(Edge {
                    src: *position.get(&e.src)?,
                    dst: *position.get(&e.dst)?,
                    w: e.w,
                })
            })
            .collect();
        WGraph::new(self.family, self.group, vertices, edges).expect("restriction of a valid graph")
    }
}

/// `omega(y, z) = mu(y, z) + mu(z, y)` when `asc(y)` is not contained in `asc(z)`.
pub fn graph_from_table(
    family: GraphFamily,
    basis: &ClassifiedBasis,
    table: &CanonicalBasisTable,
) -> WGraph {
    let module = table.family();
    let vertices: Vec<Vertex> = (0..basis.len())
        .map(|z| Vertex {
            label: basis.label(z).to_string(),
            asc: (0..basis.generators().len())
                .filter(|&slot| !module.is_descent(basis.class(z, slot)))
                .map(|slot| basis.generators()[slot])
                .collect(),
        })
        .collect();
    let mut mu: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for (y, z, m) in table.mu_entries() {
        if y != z {
            *mu.entry((y, z)).or_default() += m;
            *mu.entry((z, y)).or_default() += m;
        }
    }
    let edges = mu
        .into_iter()
        .filter(|&((y, z), _)| !vertices[y].asc.is_subset(&vertices[z].asc))
        .map(|((src, dst), w)| Edge { src, dst, w })
        .collect();
    WGraph::new(family, *basis.group(), vertices, edges).expect("graph from a canonical table")
}

/// `Gamma^m` or `Gamma^n` of a group.
pub fn build(group: GroupType, family: Family) -> WGraph {
    build_with(group, family, CanonicalOptions::default())
}

pub fn build_with(group: GroupType, family: Family, options: CanonicalOptions) -> WGraph {
    let set = GelfandSet::new(group);
    let basis = ClassifiedBasis::from_gelfand(&set);
    let table = canonical_basis_with(family, &basis, options);
    graph_from_table(family.into(), &basis, &table)
}

/// The type-D relabelling: `s_-1` and `s_1` trade places in the ascent set of
/// every twisted vertex; edges are unchanged.
pub fn build_tilde(set: &GelfandSet, graph: &WGraph) -> Result<WGraph> {
    let group = *set.group();
    if group.ty != CoxeterType::D {
        return Err(Error::WrongFamily {
            expected: "D".into(),
            got: group.ty.to_string(),
        });
    }
    if graph.family.is_tilde() || graph.len() != set.len() {
        return Err(Error::InvalidElement(format!("{} graph is not an untwisted graph of {group}", graph.family)));
    }
    let mut out = graph.clone();
    out.family = graph.family.tilde();
    for (v, vertex) in out.vertices.iter_mut().enumerate() {
        if is_twisted(group.rank, &set.vertex(v).z) {
            vertex.asc = vertex.asc.iter().map(|s| s.diamond()).collect();
        }
    }
    Ok(out)
}

/// The disjoint union of the parabolic graphs over all model triples, or the
/// graph of one triple when `triple` is given.
pub fn build_upsilon(kset: &KSet, family: Family, triple: Option<usize>) -> WGraph {
    let table = canonical_basis_with(family, kset.basis(), CanonicalOptions::default());
    let graph = graph_from_table(family.into(), kset.basis(), &table);
    match triple {
        None => graph,
        Some(t) => graph.restrict(&kset.indices_of_triple(t)),
    }
}

/// Compares a Gelfand graph to a parabolic graph through a vertex bijection.
pub fn compare_transport(gelfand: &WGraph, upsilon: &WGraph, map: &[usize]) -> Report {
    let mut report = Report::new(format!("transport {} {}", gelfand.family, gelfand.group));
    report.check(gelfand.len() == upsilon.len() && map.iter().all_unique(), || {
        "vertex map is not a bijection".into()
    });
    if !report.passed() {
        return report;
    }
    for (v, &k) in map.iter().enumerate() {
        report.check(gelfand.vertices[v].asc == upsilon.vertices[k].asc, || {
            format!("ascent sets differ at {}", gelfand.vertices[v].label)
        });
    }
    let moved: BTreeSet<Edge> = gelfand
        .edges
        .iter()
        .map(|e| Edge {
            src: map[e.src],
            dst: map[e.dst],
            w: e.w,
        })
        .collect();
    let target: BTreeSet<Edge> = upsilon.edges.iter().copied().collect();
    report.check(moved == target, || {
        format!(
            "{} transported edges, {} parabolic edges, {} in common",
            moved.len(),
            target.len(),
            moved.intersection(&target).count()
        )
    });
    report
}

/// Gelfand graph against the transported parabolic union, for one family.
pub fn verify_transport(group: GroupType, family: Family) -> Result<Report> {
    let set = GelfandSet::new(group);
    let kset = KSet::new(group);
    let map = phi_map(&set, &kset)?;
    Ok(compare_transport(&build(group, family), &build_upsilon(&kset, family, None), &map))
}

fn canonical_partition(mut parts: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for p in &mut parts {
        p.sort_unstable();
    }
    parts.sort();
    parts
}

fn union_find_parts(n: usize, pairs: impl Iterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::<usize>::new(n);
    for (a, b) in pairs {
        uf.union(a, b);
    }
    let mut parts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        parts.entry(uf.find(v)).or_default().push(v);
    }
    canonical_partition(parts.into_values().collect())
}

/// Strongly connected components, each sorted, ordered by smallest vertex.
pub fn cells(graph: &WGraph) -> Vec<Vec<usize>> {
    let mut g = DiGraph::<(), ()>::with_capacity(graph.len(), graph.edges.len());
    let nodes: Vec<_> = (0..graph.len()).map(|_| g.add_node(())).collect();
    for e in &graph.edges {
        g.add_edge(nodes[e.src], nodes[e.dst], ());
    }
    let parts = kosaraju_scc(&g)
        .into_iter()
        .map(|c| c.into_iter().map(|n| n.index()).collect())
        .collect();
    canonical_partition(parts)
}

/// Components of the subgraph of bidirected edges.
pub fn molecules(graph: &WGraph) -> Vec<Vec<usize>> {
    let pairs = graph
        .edges
        .iter()
        .filter(|e| e.src < e.dst && graph.weight(e.dst, e.src) != 0)
        .map(|e| (e.src, e.dst));
    union_find_parts(graph.len(), pairs)
}

/// Components of the underlying undirected graph.
pub fn weak_components(graph: &WGraph) -> Vec<Vec<usize>> {
    union_find_parts(graph.len(), graph.edges.iter().map(|e| (e.src, e.dst)))
}

/// The table row of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stats {
    pub family: GraphFamily,
    pub group: GroupType,
    pub vertices: usize,
    pub edges: usize,
    pub weights: BTreeSet<i64>,
    pub wcc: usize,
    pub cells: usize,
    pub molecules: usize,
}

pub const STATS_HEADER: [&str; 9] = ["family", "type", "rank", "vertices", "edges", "weights", "wcc", "cells", "molecules"];

impl Stats {
    pub fn weight_set(&self) -> String {
        format!("{{{}}}", self.weights.iter().join(","))
    }

    pub fn record(&self) -> Vec<String> {
        vec![
            self.family.to_string(),
            self.group.ty.to_string(),
            coxeter_rank(&self.group).to_string(),
            self.vertices.to_string(),
            self.edges.to_string(),
            self.weight_set(),
            self.wcc.to_string(),
            self.cells.to_string(),
            self.molecules.to_string(),
        ]
    }
}

pub fn stats(graph: &WGraph) -> Stats {
    Stats {
        family: graph.family,
        group: graph.group,
        vertices: graph.len(),
        edges: graph.edges.len(),
        weights: graph.weights(),
        wcc: weak_components(graph).len(),
        cells: cells(graph).len(),
        molecules: molecules(graph).len(),
    }
}

/// Rank of the Coxeter system: `n - 1` for `S_n`, `n` otherwise.
pub fn coxeter_rank(group: &GroupType) -> usize {
    match group.ty {
        CoxeterType::A => group.rank - 1,
        _ => group.rank,
    }
}

fn group_from_coxeter(ty: CoxeterType, rank: usize) -> Result<GroupType> {
    GroupType::new(ty, if ty == CoxeterType::A { rank + 1 } else { rank })
}

/// CSV with a header row and one record per graph.
pub fn to_csv(rows: &[Stats]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Parse(e.to_string());
    writer.write_record(STATS_HEADER).map_err(io)?;
    for row in rows {
        writer.write_record(row.record()).map_err(io)?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// Graphviz source; bidirected pairs become one undirected-looking edge when
/// `merge_bidirected` is set.
pub fn to_dot(graph: &WGraph, merge_bidirected: bool) -> String {
    let mut out = format!("digraph \"{}_{}\" {{\n", graph.family, graph.group);
    for (i, v) in graph.vertices.iter().enumerate() {
        let asc = v.asc.iter().join(",");
        out.push_str(&format!("  {i} [label=\"{}\\n{{{asc}}}\"];\n", v.label));
    }
    for e in &graph.edges {
        let back = graph.weight(e.dst, e.src);
        let merged = merge_bidirected && back == e.w;
        if merged && e.src > e.dst {
            continue;
        }
        let mut attrs = Vec::new();
        if e.w != 1 {
            attrs.push(format!("label=\"{}\"", e.w));
        }
        if merged {
            attrs.push("dir=none".to_string());
        }
        if attrs.is_empty() {
            out.push_str(&format!("  {} -> {};\n", e.src, e.dst));
        } else {
            out.push_str(&format!("  {} -> {} [{}];\n", e.src, e.dst, attrs.join(",")));
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize, Deserialize)]
struct JsonVertex {
    id: usize,
    oneline: String,
    asc: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    src: usize,
    dst: usize,
    w: i64,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    family: String,
    #[serde(rename = "type")]
    ty: String,
    rank: usize,
    vertices: Vec<JsonVertex>,
    edges: Vec<JsonEdge>,
}

/// JSON in the schema `{family, type, rank, vertices, edges}`, with `rank`
/// the Coxeter rank.
pub fn to_json(graph: &WGraph) -> String {
    let doc = JsonGraph {
        family: graph.family.to_string(),
        ty: graph.group.ty.to_string(),
        rank: coxeter_rank(&graph.group),
        vertices: graph
            .vertices
            .iter()
            .enumerate()
            .map(|(id, v)| JsonVertex {
                id,
                oneline: v.label.clone(),
                asc: v.asc.iter().map(|s| s.to_string()).collect(),
            })
            .collect(),
        edges: graph
            .edges
            .iter()
            .map(|e| JsonEdge {
                src: e.src,
                dst: e.dst,
                w: e.w,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("graph serializes") + "\n"
}

pub fn from_json(text: &str) -> Result<WGraph> {
    let doc: JsonGraph = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let group = group_from_coxeter(doc.ty.parse()?, doc.rank)?;
    let mut vertices = Vec::with_capacity(doc.vertices.len());
    for (i, v) in doc.vertices.into_iter().enumerate() {
        if v.id != i {
            return Err(Error::Parse(format!("vertex id {} out of order", v.id)));
        }
        let asc = v.asc.iter().map(|s| s.parse()).collect::<Result<BTreeSet<Generator>>>()?;
        vertices.push(Vertex { label: v.oneline, asc });
    }
    let edges = doc
        .edges
        .into_iter()
        .map(|e| Edge {
            src: e.src,
            dst: e.dst,
            w: e.w,
        })
        .collect();
    WGraph::new(doc.family.parse()?, group, vertices, edges)
}

/// Bipartite underlying graph, no edge out of `u` into `v` when
/// `asc(u) ⊆ asc(v)`, and symmetric weights between incomparable ascent sets.
/// Integrality of weights holds by construction.
pub fn is_quasi_admissible(graph: &WGraph) -> Report {
    let mut report = Report::new(format!("quasi-admissible {} {}", graph.family, graph.group));
    let mut adjacency = vec![Vec::new(); graph.len()];
    for e in &graph.edges {
        adjacency[e.src].push(e.dst);
        adjacency[e.dst].push(e.src);
    }
    let mut color: Vec<Option<bool>> = vec![None; graph.len()];
    for start in 0..graph.len() {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let c = color[u].expect("colored");
            for &v in &adjacency[u] {
                match color[v] {
                    None => {
                        color[v] = Some(!c);
                        stack.push(v);
                    }
                    Some(d) => report.check(d != c, || {
                        format!("odd cycle through {} and {}", graph.vertices[u].label, graph.vertices[v].label)
                    }),
                }
            }
        }
    }
    for e in &graph.edges {
        let (a, b) = (&graph.vertices[e.src].asc, &graph.vertices[e.dst].asc);
        report.check(!a.is_subset(b), || {
            format!("edge {} -> {} with nested ascent sets", graph.vertices[e.src].label, graph.vertices[e.dst].label)
        });
        if !b.is_subset(a) {
            let back = graph.weight(e.dst, e.src);
            report.check(back == e.w, || {
                format!(
                    "weights {} and {back} between {} and {}",
                    e.w, graph.vertices[e.src].label, graph.vertices[e.dst].label
                )
            });
        }
    }
    report
}

/// Every edge joins labels whose degrees differ by twice an odd number.
pub fn verify_degree_bipartition(graph: &WGraph, basis: &ClassifiedBasis) -> Report {
    let mut report = Report::new(format!("degree bipartition {} {}", graph.family, graph.group));
    report.check(graph.len() == basis.len(), || "graph and basis sizes differ".into());
    for e in &graph.edges {
        let (a, b) = (basis.degree(e.src) as i64, basis.degree(e.dst) as i64);
        report.check((a - b) % 2 == 0 && (a / 2 - b / 2) % 2 != 0, || {
            format!("edge {} -> {} joins degrees {a} and {b}", basis.label(e.src), basis.label(e.dst))
        });
    }
    report
}

/// `H_s C_u = x C_u` for `s` outside `asc(u)`, and otherwise
/// `H_s C_u = -x^-1 C_u + sum over v with s outside asc(v) of omega(u, v) C_v`.
pub fn verify_wgraph_axioms(graph: &WGraph, basis: &ClassifiedBasis, table: &CanonicalBasisTable) -> Result<Report> {
    let family = table.family();
    if graph.family != GraphFamily::from(family) {
        return Err(Error::WrongFamily {
            expected: family.to_string(),
            got: graph.family.to_string(),
        });
    }
    let mut report = Report::new(format!("W-graph axioms {} {}", graph.family, graph.group));
    let mut out_edges: Vec<Vec<(usize, i64)>> = vec![Vec::new(); graph.len()];
    for e in &graph.edges {
        out_edges[e.src].push((e.dst, e.w));
    }
    for (u, edges) in out_edges.iter().enumerate() {
        for &s in basis.generators() {
            let lhs = act(family, basis, s, table.column(u));
            let rhs = if graph.vertices[u].asc.contains(&s) {
                let mut v = table.column(u).scaled(&-Laurent::x_inv());
                for &(t, w) in edges {
                    if !graph.vertices[t].asc.contains(&s) {
                        v.add_scaled(&Laurent::constant(w), table.column(t));
                    }
                }
                v
            } else {
                table.column(u).scaled(&Laurent::x())
            };
            report.check(lhs == rhs, || format!("{s} at {}", graph.vertices[u].label));
        }
    }
    Ok(report)
}

/// `omega_b(iota u, iota v) = omega_a(v, u)` and `asc_b(iota v) = S \ asc_a(v)`.
pub fn check_dual(a: &WGraph, b: &WGraph, iota: &[usize]) -> Report {
    let mut report = Report::new(format!("duality {} vs {} {}", a.family, b.family, a.group));
    report.check(a.len() == b.len() && iota.len() == a.len() && iota.iter().all_unique(), || {
        "iota is not a bijection of the vertex sets".into()
    });
    if !report.passed() {
        return report;
    }
    let all: BTreeSet<Generator> = a.group.generators().into_iter().collect();
    for (vertex, &image) in a.vertices.iter().zip(iota) {
        let complement: BTreeSet<Generator> = all.difference(&vertex.asc).copied().collect();
        report.check(b.vertices[image].asc == complement, || {
            format!("ascent set of {} is not complemented", vertex.label)
        });
    }
    let transposed: BTreeSet<Edge> = a
        .edges
        .iter()
        .map(|e| Edge {
            src: iota[e.dst],
            dst: iota[e.src],
            w: e.w,
        })
        .collect();
    let target: BTreeSet<Edge> = b.edges.iter().copied().collect();
    report.check(transposed == target, || {
        format!(
            "{} transposed edges, {} target edges, {} in common",
            transposed.len(),
            target.len(),
            transposed.intersection(&target).count()
        )
    });
    report
}

/// The BC duality between `Gamma^m` and `Gamma^n`, or the D dualities between
/// each untwisted graph and the twisted graph of the other family.
pub fn verify_duality(group: GroupType) -> Result<Report> {
    if group.ty == CoxeterType::A {
        return Err(Error::WrongFamily {
            expected: "BC or D".into(),
            got: group.ty.to_string(),
        });
    }
    let set = GelfandSet::new(group);
    let iota = set.iota_map()?;
    let m = build(group, Family::M);
    let n = build(group, Family::N);
    let mut report = Report::new(format!("duality {group}"));
    if group.ty == CoxeterType::BC {
        report.merge(check_dual(&m, &n, &iota));
    } else {
        report.merge(check_dual(&m, &build_tilde(&set, &n)?, &iota));
        report.merge(check_dual(&n, &build_tilde(&set, &m)?, &iota));
    }
    Ok(report)
}
