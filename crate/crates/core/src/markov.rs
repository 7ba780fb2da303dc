//! Fiber graphs, decomposition testers, and Markov bases.
//!
//! Two points of a fiber are joined when their supports intersect. A kernel
//! vector `u` lies in the universal Markov basis exactly when `u+` and `u-`
//! fall into different components of the fiber graph of its degree, and in
//! the indispensable subset exactly when that fiber is `{u+, u-}`.
//!
//! A walk `u+ = s_0, …, s_l = u-` through pairwise non-coprime points yields
//! the decomposition `u = Σ (s_{i-1} - s_i)` whose chain coefficients
//! `min(s_{i-1}, s_i)` are all nonzero, i.e. a proper strongly semiconformal
//! decomposition; [`find_ssc_chain`] builds it explicitly and checks the
//! defining inequalities.

use std::collections::{BTreeMap, VecDeque};

use petgraph::unionfind::UnionFind;

use crate::config::{Configuration, Fiber};
use crate::error::{Error, Result};
use crate::graver::{graver_basis_with, CompletionLimits, GraverBasis};
use crate::vector::IntVec;

#[derive(Clone, Debug)]
pub struct FiberGraph {
    pub fiber: Fiber,
    /// Pairs `(i, j)`, `i < j`, of point indices with intersecting supports.
    pub edges: Vec<(usize, usize)>,
    /// Connected components, each sorted; ordered by their smallest index.
    pub components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
}

impl FiberGraph {
    pub fn from_fiber(fiber: Fiber) -> Self {
        let p = fiber.len();
        let mut edges = Vec::new();
        let mut uf = UnionFind::<usize>::new(p);
        for i in 0..p {
            for j in i + 1..p {
                if fiber.points[i].support_intersects(&fiber.points[j]) {
                    edges.push((i, j));
                    uf.union(i, j);
                }
            }
        }
        let (components, component_of) = components_of(&mut uf, p);
        FiberGraph { fiber, edges, components, component_of }
    }

    pub fn component_of(&self, t: &IntVec) -> Option<usize> {
        self.fiber.index_of(t).map(|i| self.component_of[i])
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.fiber.points[i].support_intersects(&self.fiber.points[j])
    }
}

fn components_of(uf: &mut UnionFind<usize>, p: usize) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut by_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut component_of = vec![0; p];
    // Visiting indices in order makes component ids follow their smallest member.
    for i in 0..p {
        let root = uf.find_mut(i);
        let id = *by_root.entry(root).or_insert_with(|| {
            components.push(Vec::new());
            components.len() - 1
        });
        components[id].push(i);
        component_of[i] = id;
    }
    (components, component_of)
}

pub fn fiber_graph(config: &Configuration, degree: &IntVec) -> Result<FiberGraph> {
    Ok(FiberGraph::from_fiber(config.fiber(degree)?))
}

fn graph_of(config: &Configuration, u: &IntVec) -> Result<FiberGraph> {
    config.check_nonzero_kernel(u)?;
    fiber_graph(config, &config.a_degree(u)?)
}

fn separates(graph: &FiberGraph, u: &IntVec) -> Result<bool> {
    let a = graph.component_of(&u.pos_part());
    let b = graph.component_of(&u.neg_part()?);
    match (a, b) {
        (Some(a), Some(b)) => Ok(a != b),
        _ => Err(Error::Consistency(format!("{u}: u+ or u- missing from its own fiber"))),
    }
}

/// Membership in the universal Markov basis (graph criterion).
pub fn in_universal_markov(config: &Configuration, u: &IntVec) -> Result<bool> {
    separates(&graph_of(config, u)?, u)
}

/// Membership in the indispensable subset: the fiber is exactly `{u+, u-}`.
pub fn in_indispensable(config: &Configuration, u: &IntVec) -> Result<bool> {
    config.check_nonzero_kernel(u)?;
    let fiber = config.fiber(&config.a_degree(u)?)?;
    Ok(fiber.len() == 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MarkovKind {
    Minimal,
    Universal,
    Indispensable,
}

impl MarkovKind {
    pub fn name(self) -> &'static str {
        match self {
            MarkovKind::Minimal => "minimal",
            MarkovKind::Universal => "universal",
            MarkovKind::Indispensable => "indispensable",
        }
    }
}

impl std::str::FromStr for MarkovKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minimal" => Ok(MarkovKind::Minimal),
            "universal" => Ok(MarkovKind::Universal),
            "indispensable" => Ok(MarkovKind::Indispensable),
            _ => Err(Error::domain(format!("unknown basis kind `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovBasis {
    pub config: Configuration,
    pub kind: MarkovKind,
    /// Canonical-signed, sorted graded-lex.
    pub elements: Vec<IntVec>,
}

impl MarkovBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Fiber graphs of all Graver degrees, computed once per distinct degree.
pub struct DegreeGraphs {
    graphs: BTreeMap<IntVec, FiberGraph>,
}

impl DegreeGraphs {
    pub fn build(graver: &GraverBasis) -> Result<Self> {
        let config = &graver.config;
        if !config.nonneg_pointed() {
            return Err(Error::Unsupported(
                "Markov bases need a nonnegative matrix without zero columns".into(),
            ));
        }
        let mut graphs = BTreeMap::new();
        for u in &graver.elements {
            let d = config.a_degree(u)?;
            if let std::collections::btree_map::Entry::Vacant(slot) = graphs.entry(d) {
                let g = fiber_graph(config, slot.key())?;
                slot.insert(g);
            }
        }
        Ok(DegreeGraphs { graphs })
    }

    pub fn graph(&self, degree: &IntVec) -> Option<&FiberGraph> {
        self.graphs.get(degree)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IntVec, &FiberGraph)> {
        self.graphs.iter()
    }
}

/// All three basis kinds derived from one Graver basis.
#[derive(Clone, Debug)]
pub struct MarkovBases {
    pub graver: GraverBasis,
    pub universal: MarkovBasis,
    pub indispensable: MarkovBasis,
    pub minimal: MarkovBasis,
}

pub fn markov_bases_from(graver: &GraverBasis) -> Result<MarkovBases> {
    let graphs = DegreeGraphs::build(graver)?;
    let config = &graver.config;
    let mut universal = Vec::new();
    let mut indispensable = Vec::new();
    for u in &graver.elements {
        let g = graphs.graph(&config.a_degree(u)?).expect("degree graph built above");
        if separates(g, u)? {
            universal.push(u.clone());
        }
        if g.fiber.len() == 2 {
            indispensable.push(u.clone());
        }
    }
    let minimal = minimal_from_graphs(&graphs)?;
    let wrap = |kind, elements| MarkovBasis { config: config.clone(), kind, elements };
    Ok(MarkovBases {
        graver: graver.clone(),
        universal: wrap(MarkovKind::Universal, universal),
        indispensable: wrap(MarkovKind::Indispensable, indispensable),
        minimal: wrap(MarkovKind::Minimal, minimal),
    })
}

pub fn markov_bases(config: &Configuration, limits: &CompletionLimits) -> Result<MarkovBases> {
    if !config.nonneg_pointed() {
        return Err(Error::Unsupported(
            "Markov bases need a nonnegative matrix without zero columns".into(),
        ));
    }
    markov_bases_from(&graver_basis_with(config, limits)?)
}

pub fn universal_markov_basis(config: &Configuration) -> Result<MarkovBasis> {
    Ok(markov_bases(config, &CompletionLimits::default())?.universal)
}

pub fn indispensable_subset(config: &Configuration) -> Result<MarkovBasis> {
    Ok(markov_bases(config, &CompletionLimits::default())?.indispensable)
}

pub fn minimal_markov_basis(config: &Configuration) -> Result<MarkovBasis> {
    Ok(markov_bases(config, &CompletionLimits::default())?.minimal)
}

/// Per degree with components `C_1, …, C_p` (ordered by smallest point), the
/// moves `min(C_i) - min(C_1)` for `i ≥ 2`.
fn minimal_from_graphs(graphs: &DegreeGraphs) -> Result<Vec<IntVec>> {
    let mut out = Vec::new();
    for (_, g) in graphs.iter() {
        let Some(first) = g.components.first() else { continue };
        let anchor = &g.fiber.points[first[0]];
        for comp in &g.components[1..] {
            out.push(g.fiber.points[comp[0]].checked_sub(anchor)?.canonicalize()?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Moves of one degree grouped for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSummary {
    pub degree: IntVec,
    pub fiber_size: usize,
    pub components: usize,
}

pub fn degree_summaries(graver: &GraverBasis) -> Result<Vec<DegreeSummary>> {
    Ok(DegreeGraphs::build(graver)?
        .iter()
        .map(|(d, g)| DegreeSummary {
            degree: d.clone(),
            fiber_size: g.fiber.len(),
            components: g.components.len(),
        })
        .collect())
}

/// Number of distinct minimal Markov bases. Each degree contributes the
/// number of spanning trees on its components, where components of sizes
/// `s_a`, `s_b` are joined by `s_a·s_b` moves: `N^(p-2) ∏ s_a`.
pub fn count_minimal_markov_bases(graver: &GraverBasis) -> Result<u128> {
    let mut total: u128 = 1;
    for (_, g) in DegreeGraphs::build(graver)?.iter() {
        let p = g.components.len();
        if p < 2 {
            continue;
        }
        let n = g.fiber.len() as u128;
        let mut count: u128 = 1;
        for _ in 0..p - 2 {
            count = count.checked_mul(n).ok_or(Error::Overflow("minimal basis count"))?;
        }
        for comp in &g.components {
            count = count.checked_mul(comp.len() as u128).ok_or(Error::Overflow("minimal basis count"))?;
        }
        total = total.checked_mul(count).ok_or(Error::Overflow("minimal basis count"))?;
    }
    Ok(total)
}

/// Whether `moves` connect `u+` to `u-` in every fiber of the reference
/// universal Markov basis.
pub fn is_markov_basis(config: &Configuration, moves: &[IntVec]) -> Result<bool> {
    let reference = universal_markov_basis(config)?;
    is_markov_basis_against(config, moves, &reference.elements)
}

/// Same as [`is_markov_basis`] with a precomputed reference generating set.
pub fn is_markov_basis_against(config: &Configuration, moves: &[IntVec], reference: &[IntVec]) -> Result<bool> {
    for m in moves {
        config.check_kernel(m)?;
    }
    let mut by_degree: BTreeMap<IntVec, Vec<&IntVec>> = BTreeMap::new();
    for u in reference {
        by_degree.entry(config.a_degree(u)?).or_default().push(u);
    }
    for (degree, us) in by_degree {
        let fiber = config.fiber(&degree)?;
        let p = fiber.len();
        let mut uf = UnionFind::<usize>::new(p);
        for (i, t) in fiber.points.iter().enumerate() {
            for m in moves {
                let s = t.checked_sub(m)?;
                if s.is_nonnegative() {
                    if let Some(j) = fiber.index_of(&s) {
                        uf.union(i, j);
                    }
                }
            }
        }
        for u in us {
            let a = fiber.index_of(&u.pos_part());
            let b = fiber.index_of(&u.neg_part()?);
            match (a, b) {
                (Some(a), Some(b)) if uf.equiv(a, b) => {}
                (Some(_), Some(_)) => return Ok(false),
                _ => return Err(Error::Consistency(format!("{u} missing from its fiber"))),
            }
        }
    }
    Ok(true)
}

/// `u = v +sc w`: `u = v + w`, `u+ ≥ v+` and `u- ≥ w-`.
pub fn is_semiconformal_split(u: &IntVec, v: &IntVec, w: &IntVec) -> Result<bool> {
    Ok(&v.checked_add(w)? == u && u.pos_part().dominates(&v.pos_part()) && u.neg_part()?.dominates(&w.neg_part()?))
}

/// `u = v +c w`: `u+ = v+ + w+` and `u- = v- + w-`.
pub fn is_conformal_split(u: &IntVec, v: &IntVec, w: &IntVec) -> Result<bool> {
    Ok(u.pos_part() == v.pos_part().checked_add(&w.pos_part())?
        && u.neg_part()? == v.neg_part()?.checked_add(&w.neg_part()?)?)
}

/// Checks `u =ssc u_1 + … + u_l` literally: the parts sum to `u`, `l ≥ 2`,
/// `u+ > u_1+` and `u+ > (u_1 + … + u_{i-1}) + u_i+` for `i ≥ 2`, where `>`
/// means `≥` componentwise and not equal.
pub fn is_strongly_semiconformal(u: &IntVec, parts: &[IntVec]) -> Result<bool> {
    if parts.len() < 2 {
        return Ok(false);
    }
    let up = u.pos_part();
    let mut partial = IntVec::zeros(u.len());
    for p in parts {
        let bound = partial.checked_add(&p.pos_part())?;
        if !up.strictly_dominates(&bound) {
            return Ok(false);
        }
        partial = partial.checked_add(p)?;
    }
    Ok(&partial == u)
}

/// A proper semiconformal split `(u+ - t, t - u-)` for the graded-lex
/// smallest fiber point `t ∉ {u+, u-}`; `None` iff the fiber is `{u+, u-}`.
pub fn find_semiconformal_witness(config: &Configuration, u: &IntVec) -> Result<Option<(IntVec, IntVec)>> {
    config.check_nonzero_kernel(u)?;
    let fiber = config.fiber(&config.a_degree(u)?)?;
    let (up, um) = (u.pos_part(), u.neg_part()?);
    let Some(t) = fiber.points.iter().find(|t| **t != up && **t != um) else {
        return Ok(None);
    };
    Ok(Some((up.checked_sub(t)?, t.checked_sub(&um)?)))
}

/// A proper strongly semiconformal decomposition read off a shortest path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SscChain {
    /// Fiber points `u+ = s_0, …, s_l = u-`.
    pub path: Vec<IntVec>,
    /// `u_i = s_{i-1} - s_i`.
    pub parts: Vec<IntVec>,
}

impl SscChain {
    /// Number of summands; minimal over all such decompositions.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Shortest (then lexicographically smallest) walk from `u+` to `u-` in the
/// fiber graph, returned as a strongly semiconformal decomposition.
pub fn find_ssc_chain(config: &Configuration, u: &IntVec) -> Result<Option<SscChain>> {
    let graph = graph_of(config, u)?;
    let pts = &graph.fiber.points;
    let start = graph.fiber.index_of(&u.pos_part()).ok_or_else(|| Error::Consistency("u+ not in fiber".into()))?;
    let goal = graph.fiber.index_of(&u.neg_part()?).ok_or_else(|| Error::Consistency("u- not in fiber".into()))?;

    let p = pts.len();
    let mut adj = vec![Vec::new(); p];
    for &(i, j) in &graph.edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
    }
    // Distances to the goal, then a greedy walk picking the smallest next index.
    let mut dist = vec![usize::MAX; p];
    dist[goal] = 0;
    let mut queue = VecDeque::from([goal]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    if dist[start] == usize::MAX {
        return Ok(None);
    }
    let mut path = vec![start];
    let mut cur = start;
    while cur != goal {
        cur = *adj[cur].iter().find(|&&y| dist[y] + 1 == dist[cur]).expect("BFS layer");
        path.push(cur);
    }
    let path: Vec<IntVec> = path.into_iter().map(|i| pts[i].clone()).collect();
    let parts = path
        .windows(2)
        .map(|w| w[0].checked_sub(&w[1]))
        .collect::<Result<Vec<_>>>()?;
    if !is_strongly_semiconformal(u, &parts)? {
        return Err(Error::Consistency(format!("chain for {u} violates strong semiconformality")));
    }
    Ok(Some(SscChain { path, parts }))
}
