//! Isomorph-free enumeration of small balanced closed pseudomanifolds.
//!
//! The search grows a strongly connected set of rainbow facets (one vertex
//! per color). At each node it takes the least ridge lying in exactly one
//! facet and branches over the facets that could close it. A leaf has no
//! such ridge left; leaves are re-checked with the homology engine and
//! deduplicated by canonical form.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::certificate::{Certificate, InputsDigest, Verdict};
use crate::coloring::{self, Coloring};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::Face;
use crate::homology::{self, CoefficientField};
use crate::iso;

/// Predicates a census member must satisfy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Target {
    /// Rational homology manifold (closed, since every ridge lies in two facets).
    pub manifold: bool,
    pub connected: bool,
    pub chi: Option<i64>,
    pub require_beta1: bool,
    /// Reduced rational Betti numbers `β̃_0, β̃_1, ..`.
    pub betti: Option<Vec<u64>>,
}

impl Target {
    /// Connected closed surface or manifold with no further constraint.
    pub fn closed_manifold() -> Self {
        Target { manifold: true, connected: true, chi: None, require_beta1: false, betti: None }
    }

    pub fn with_chi(mut self, chi: i64) -> Self {
        self.chi = Some(chi);
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Limits {
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
}

/// Individually switchable prunes. None of them changes the census of an
/// exhausted run, only the number of nodes visited.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PruneFlags {
    /// Reject a node once some ridge lies in three facets.
    pub ridge_degree: bool,
    /// For `d = 3` and a manifold target: every vertex link must remain a
    /// subgraph of a single cycle.
    pub link_cycles: bool,
    /// Start from the facet made of the least vertex of each class.
    pub fix_first_facet: bool,
    /// For class sizes `(4, 3, .., 3)` and `d = 3`: once the link of a vertex
    /// outside the 4-class closes up, that vertex must be adjacent to every
    /// vertex of another 3-class.
    pub graph_completeness: bool,
}

impl Default for PruneFlags {
    fn default() -> Self {
        PruneFlags { ridge_degree: true, link_cycles: true, fix_first_facet: true, graph_completeness: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchSpec {
    pub d: usize,
    pub class_sizes: Vec<usize>,
    pub target: Target,
    pub limits: Limits,
    pub prunes: PruneFlags,
    /// Vertex `v` of the standard layout (classes in order, ids increasing)
    /// gets id `relabel[v]`.
    pub relabel: Option<Vec<usize>>,
    /// Worker threads; `0` uses the global pool.
    #[serde(skip)]
    pub jobs: usize,
}

impl SearchSpec {
    pub fn new(d: usize, class_sizes: Vec<usize>, target: Target) -> Result<Self> {
        let spec = SearchSpec {
            d,
            class_sizes,
            target,
            limits: Limits::default(),
            prunes: PruneFlags::default(),
            relabel: None,
            jobs: 0,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_shape()?;
        if let Some(&s) = self.class_sizes.iter().find(|&&s| s < 3) {
            return Err(Error::BadParameters(format!("color classes need at least 3 vertices, got {s}")));
        }
        Ok(())
    }

    fn validate_shape(&self) -> Result<()> {
        if self.d < 2 || self.class_sizes.len() != self.d {
            return Err(Error::BadParameters(format!("need d >= 2 class sizes, got d = {} and {:?}", self.d, self.class_sizes)));
        }
        let n = self.num_vertices();
        if n > Face::MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        if let Some(r) = &self.relabel {
            let mut seen = vec![false; n];
            if r.len() != n || r.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::BadParameters("relabeling is not a permutation of the vertices".into()));
            }
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.class_sizes.iter().sum()
    }

    /// The coloring every candidate carries.
    pub fn coloring(&self) -> Coloring {
        let n = self.num_vertices();
        let mut colors = vec![0; n];
        let mut v = 0;
        for (c, &s) in self.class_sizes.iter().enumerate() {
            for _ in 0..s {
                let id = self.relabel.as_ref().map_or(v, |r| r[v]);
                colors[id] = c + 1;
                v += 1;
            }
        }
        Coloring::new(colors).expect("at most 64 vertices")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusClass {
    pub complex: Complex,
    pub coloring: Coloring,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    NodeBudget,
    TimeBudget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    /// One representative per isomorphism class, in canonical order.
    pub classes: Vec<CensusClass>,
    pub exhausted: bool,
    pub stop: Option<StopReason>,
    pub nodes: u64,
    /// Leaves reached before the final predicate check.
    pub leaves: u64,
}

#[derive(Clone)]
struct State {
    facets: Vec<Face>,
    ridge_degree: Vec<u8>,
    used: Vec<bool>,
}

struct Space<'a> {
    spec: &'a SearchSpec,
    n: usize,
    d: usize,
    color: Vec<usize>,
    classes: Vec<Vec<usize>>,
    ridge_index: BTreeMap<Face, usize>,
    facet_index: BTreeMap<Face, usize>,
    big_class: Option<usize>,
    nodes: AtomicU64,
    leaves: AtomicU64,
    stop: AtomicBool,
    time_out: AtomicBool,
    start: Instant,
}

fn rainbow_sets(classes: &[Vec<usize>], skip: Option<usize>) -> Vec<Face> {
    let mut out = vec![Face::EMPTY];
    for (c, class) in classes.iter().enumerate() {
        if Some(c) == skip {
            continue;
        }
        out = out.iter().flat_map(|f| class.iter().map(move |&v| f.with(v))).collect();
    }
    out
}

impl<'a> Space<'a> {
    fn new(spec: &'a SearchSpec) -> Self {
        let kappa = spec.coloring();
        let n = spec.num_vertices();
        let d = spec.d;
        let color: Vec<usize> = (0..n).map(|v| kappa.color(v) - 1).collect();
        let classes: Vec<Vec<usize>> = (0..d).map(|c| (0..n).filter(|&v| color[v] == c).collect()).collect();
        let mut ridge_index = BTreeMap::new();
        for skip in 0..d {
            for r in rainbow_sets(&classes, Some(skip)) {
                let k = ridge_index.len();
                ridge_index.insert(r, k);
            }
        }
        let facet_index = rainbow_sets(&classes, None).into_iter().enumerate().map(|(i, f)| (f, i)).collect();
        let big = spec.class_sizes.iter().filter(|&&s| s == 4).count() == 1
            && spec.class_sizes.iter().filter(|&&s| s == 3).count() == d - 1;
        let big_class = big.then(|| spec.class_sizes.iter().position(|&s| s == 4).unwrap());
        Space {
            spec,
            n,
            d,
            color,
            classes,
            ridge_index,
            facet_index,
            big_class,
            nodes: AtomicU64::new(0),
            leaves: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            time_out: AtomicBool::new(false),
            start: Instant::now(),
        }
    }

    fn empty_state(&self) -> State {
        State { facets: Vec::new(), ridge_degree: vec![0; self.ridge_index.len()], used: vec![false; self.facet_index.len()] }
    }

    fn ridges(&self, f: Face) -> impl Iterator<Item = usize> + '_ {
        f.vertices().map(move |v| self.ridge_index[&f.without(v)])
    }

    fn push(&self, s: &mut State, f: Face) {
        s.used[self.facet_index[&f]] = true;
        s.facets.push(f);
        for r in self.ridges(f) {
            s.ridge_degree[r] += 1;
        }
    }

    fn pop(&self, s: &mut State) {
        let f = s.facets.pop().expect("nonempty");
        s.used[self.facet_index[&f]] = false;
        for r in self.ridges(f) {
            s.ridge_degree[r] -= 1;
        }
    }

    fn least_open_ridge(&self, s: &State) -> Option<Face> {
        let mut best: Option<Face> = None;
        for &f in &s.facets {
            for v in f.vertices() {
                let r = f.without(v);
                if s.ridge_degree[self.ridge_index[&r]] == 1 && best.is_none_or(|b| r < b) {
                    best = Some(r);
                }
            }
        }
        best
    }

    /// Checks the prunes touched by the facet `f` just added.
    fn admissible(&self, s: &State, f: Face) -> bool {
        let p = &self.spec.prunes;
        if p.ridge_degree && self.ridges(f).any(|r| s.ridge_degree[r] > 2) {
            return false;
        }
        if self.d == 3 && self.spec.target.manifold && (p.link_cycles || p.graph_completeness) {
            for v in f.vertices() {
                let link = self.vertex_link(s, v);
                if p.link_cycles && !extends_to_cycle(&link) {
                    return false;
                }
                if p.graph_completeness && !self.complete_when_closed(v, &link) {
                    return false;
                }
            }
        }
        true
    }

    fn vertex_link(&self, s: &State, v: usize) -> Vec<(usize, usize)> {
        s.facets
            .iter()
            .filter(|f| f.contains(v))
            .map(|f| {
                let e = f.without(v).to_vec();
                (e[0], e[1])
            })
            .collect()
    }

    fn complete_when_closed(&self, v: usize, link: &[(usize, usize)]) -> bool {
        let Some(big) = self.big_class else { return true };
        if self.color[v] == big || !is_single_cycle(link) {
            return true;
        }
        let nbrs = link.iter().fold(Face::EMPTY, |m, &(a, b)| m.with(a).with(b));
        (0..self.n).filter(|&w| self.color[w] != big && self.color[w] != self.color[v]).all(|w| nbrs.contains(w))
    }

    fn out_of_budget(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        let nodes = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.spec.limits.max_nodes.is_some_and(|m| nodes > m) {
            self.stop.store(true, Ordering::Relaxed);
            return true;
        }
        if nodes.is_multiple_of(1024) {
            if let Some(secs) = self.spec.limits.max_seconds {
                if self.start.elapsed() > Duration::from_secs_f64(secs) {
                    self.time_out.store(true, Ordering::Relaxed);
                    self.stop.store(true, Ordering::Relaxed);
                    return true;
                }
            }
        }
        false
    }

    /// Root children: the first facet.
    fn roots(&self) -> Vec<Face> {
        let first: Vec<usize> = self.classes.iter().map(|c| c[0]).collect();
        if self.spec.prunes.fix_first_facet {
            vec![Face::from_vertices(first).expect("in range")]
        } else {
            let v0 = (0..self.n).min().unwrap();
            self.facet_index.keys().copied().filter(|f| f.contains(v0)).collect()
        }
    }

    fn children(&self, s: &State) -> Option<Vec<Face>> {
        let r = self.least_open_ridge(s)?;
        let missing = (0..self.d).find(|&c| r.vertices().all(|v| self.color[v] != c)).expect("ridge misses a color");
        Some(self.classes[missing].iter().map(|&w| r.with(w)).filter(|f| !s.used[self.facet_index[f]]).collect())
    }

    /// States at `depth` facets, in search order, plus leaves found above.
    fn frontier(&self, depth: usize) -> (Vec<State>, Vec<Vec<Face>>) {
        let mut layer = Vec::new();
        let mut leaves = Vec::new();
        for f in self.roots() {
            let mut s = self.empty_state();
            self.nodes.fetch_add(1, Ordering::Relaxed);
            self.push(&mut s, f);
            if self.admissible(&s, f) {
                layer.push(s);
            }
        }
        for _ in 1..depth {
            let mut next = Vec::new();
            for s in layer {
                match self.children(&s) {
                    None => {
                        self.leaves.fetch_add(1, Ordering::Relaxed);
                        leaves.push(s.facets.clone());
                    }
                    Some(kids) => {
                        for f in kids {
                            let mut t = s.clone();
                            self.nodes.fetch_add(1, Ordering::Relaxed);
                            self.push(&mut t, f);
                            if self.admissible(&t, f) {
                                next.push(t);
                            }
                        }
                    }
                }
            }
            layer = next;
        }
        (layer, leaves)
    }

    fn dfs(&self, s: &mut State, out: &mut Vec<Vec<Face>>) {
        let Some(kids) = self.children(s) else {
            self.leaves.fetch_add(1, Ordering::Relaxed);
            out.push(s.facets.clone());
            return;
        };
        for f in kids {
            if self.out_of_budget() {
                return;
            }
            self.push(s, f);
            if self.admissible(s, f) {
                self.dfs(s, out);
            }
            self.pop(s);
        }
    }
}

fn link_adjacency(link: &[(usize, usize)]) -> BTreeMap<usize, Vec<usize>> {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in link {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    adj
}

/// Degrees at most 2, and a closed cycle only if it is the whole link.
fn extends_to_cycle(link: &[(usize, usize)]) -> bool {
    let adj = link_adjacency(link);
    if adj.values().any(|n| n.len() > 2) {
        return false;
    }
    let start = match adj.keys().next() {
        Some(&s) => s,
        None => return true,
    };
    let mut seen = vec![start];
    let mut stack = vec![start];
    while let Some(a) = stack.pop() {
        for &b in &adj[&a] {
            if !seen.contains(&b) {
                seen.push(b);
                stack.push(b);
            }
        }
    }
    let connected = seen.len() == adj.len();
    if connected {
        return true;
    }
    // Several components: none of them may be a cycle.
    let mut visited: Vec<usize> = Vec::new();
    for &s in adj.keys() {
        if visited.contains(&s) {
            continue;
        }
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(a) = stack.pop() {
            for &b in &adj[&a] {
                if !comp.contains(&b) {
                    comp.push(b);
                    stack.push(b);
                }
            }
        }
        if comp.iter().all(|v| adj[v].len() == 2) {
            return false;
        }
        visited.extend(comp);
    }
    true
}

fn is_single_cycle(link: &[(usize, usize)]) -> bool {
    let adj = link_adjacency(link);
    !adj.is_empty() && adj.values().all(|n| n.len() == 2) && extends_to_cycle(link) && {
        let start = *adj.keys().next().unwrap();
        let (mut prev, mut cur, mut len) = (start, adj[&start][0], 1);
        while cur != start {
            let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
            prev = cur;
            cur = next;
            len += 1;
        }
        len == adj.len()
    }
}

/// The first target predicate `c` fails, by name.
pub fn failing_predicate(c: &Complex, kappa: &Coloring, spec: &SearchSpec) -> Option<&'static str> {
    if !c.is_pure() || c.dim() != spec.d as isize - 1 {
        return Some("pure of dimension d - 1");
    }
    if c.num_vertices() != spec.num_vertices() {
        return Some("vertex count");
    }
    if !coloring::validate(c, kappa) {
        return Some("balanced");
    }
    let mut sizes: Vec<usize> = kappa.classes().iter().map(|cl| cl.intersection(c.vertex_set()).len()).collect();
    let mut want = spec.class_sizes.clone();
    sizes.sort_unstable();
    want.sort_unstable();
    if sizes != want {
        return Some("class sizes");
    }
    for &r in c.faces_of_size(spec.d - 1) {
        if c.facets().iter().filter(|f| r.is_subset_of(**f)).count() != 2 {
            return Some("closed pseudomanifold");
        }
    }
    let t = &spec.target;
    if t.connected && !c.is_connected() {
        return Some("connected");
    }
    if t.manifold && !homology::is_homology_manifold(c, CoefficientField::Rationals).unwrap_or(false) {
        return Some("homology manifold");
    }
    if t.chi.is_some_and(|chi| c.f_vector().euler_characteristic() != chi) {
        return Some("euler characteristic");
    }
    if t.require_beta1 || t.betti.is_some() {
        let b = homology::betti(c, CoefficientField::Rationals);
        if t.require_beta1 && b.reduced(1) == 0 {
            return Some("beta_1 nonzero");
        }
        if let Some(want) = &t.betti {
            let got: Vec<u64> = (0..want.len() as isize).map(|i| b.reduced(i)).collect();
            if &got != want {
                return Some("betti profile");
            }
        }
    }
    None
}

/// Merges candidates into canonical representatives. Among candidates with
/// the same canonical form the least transported coloring is kept, so the
/// result does not depend on discovery order.
fn canonicalize(spec: &SearchSpec, candidates: Vec<Vec<Face>>) -> Vec<CensusClass> {
    let kappa = spec.coloring();
    let n = spec.num_vertices();
    let accepted: Vec<(iso::CanonicalForm, Vec<usize>)> = candidates
        .into_par_iter()
        .filter_map(|facets| {
            let c = Complex::from_facets(n, facets).ok()?;
            if failing_predicate(&c, &kappa, spec).is_some() {
                return None;
            }
            let (form, map) = iso::canonical_labeling(&c, None);
            let mut colors = vec![0; form.vertices];
            for (&old, &new) in &map {
                colors[new] = kappa.color(old);
            }
            Some((form, colors))
        })
        .collect();
    let mut best: BTreeMap<iso::CanonicalForm, Vec<usize>> = BTreeMap::new();
    for (form, colors) in accepted {
        best.entry(form).and_modify(|c| {
            if colors < *c {
                *c = colors.clone();
            }
        })
        .or_insert(colors);
    }
    best.into_iter()
        .map(|(form, colors)| CensusClass {
            complex: form.to_complex(),
            coloring: Coloring::new(colors).expect("at most 64 vertices"),
        })
        .collect()
}

const SPLIT_DEPTH: usize = 3;

fn run(spec: &SearchSpec) -> Census {
    let space = Space::new(spec);
    let (frontier, mut candidates) = space.frontier(SPLIT_DEPTH);
    let found: Vec<Vec<Vec<Face>>> = frontier
        .into_par_iter()
        .map(|mut s| {
            let mut out = Vec::new();
            space.dfs(&mut s, &mut out);
            out
        })
        .collect();
    candidates.extend(found.into_iter().flatten());
    let stopped = space.stop.load(Ordering::Relaxed);
    let stop = stopped.then(|| if space.time_out.load(Ordering::Relaxed) { StopReason::TimeBudget } else { StopReason::NodeBudget });
    Census {
        classes: canonicalize(spec, candidates),
        exhausted: !stopped,
        stop,
        nodes: space.nodes.load(Ordering::Relaxed),
        leaves: space.leaves.load(Ordering::Relaxed),
    }
}

/// Exhaustive within the limits; a run cut short by a budget returns what it
/// found with `exhausted = false`.
pub fn enumerate(spec: &SearchSpec) -> Result<Census> {
    spec.validate()?;
    enumerate_unchecked(spec)
}

/// As [`enumerate`] but allowing classes with fewer than 3 vertices, which
/// only yields cones and suspensions.
pub fn enumerate_unchecked(spec: &SearchSpec) -> Result<Census> {
    spec.validate_shape()?;
    if spec.jobs > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(spec.jobs)
            .build()
            .map_err(|e| Error::BadParameters(e.to_string()))?;
        Ok(pool.install(|| run(spec)))
    } else {
        Ok(run(spec))
    }
}

/// Every subset of rainbow facets, for cross-checking [`enumerate`] on tiny
/// spaces.
pub fn brute_force_census(spec: &SearchSpec) -> Result<Vec<CensusClass>> {
    spec.validate_shape()?;
    let space = Space::new(spec);
    let all: Vec<Face> = space.facet_index.keys().copied().collect();
    if all.len() > 24 {
        return Err(Error::BadParameters(format!("{} rainbow facets is too many to brute force", all.len())));
    }
    let candidates: Vec<Vec<Face>> = (1u64..1 << all.len())
        .into_par_iter()
        .filter_map(|mask| {
            let facets: Vec<Face> = (0..all.len()).filter(|&i| mask >> i & 1 == 1).map(|i| all[i]).collect();
            let closed = facets.iter().all(|f| {
                f.vertices().all(|v| {
                    let r = f.without(v);
                    facets.iter().filter(|g| r.is_subset_of(**g)).count() == 2
                })
            });
            closed.then_some(facets)
        })
        .collect();
    Ok(canonicalize(spec, candidates))
}

/// Re-checks every census member against the full predicate set and checks
/// that members are pairwise non-isomorphic.
pub fn verify_census(census: &Census, spec: &SearchSpec) -> Certificate {
    let claim = "census";
    let mut digest = InputsDigest::new(claim);
    digest.text("spec", &serde_json::to_string(spec).expect("spec serializes"));
    for class in &census.classes {
        digest.complex(&class.complex).coloring(&class.coloring);
    }
    let mut failures = Vec::new();
    for (i, class) in census.classes.iter().enumerate() {
        if let Some(p) = failing_predicate(&class.complex, &class.coloring, spec) {
            failures.push(json!({"class": i, "predicate": p}));
        }
    }
    for i in 0..census.classes.len() {
        for j in i + 1..census.classes.len() {
            if iso::is_isomorphic(&census.classes[i].complex, &census.classes[j].complex) {
                failures.push(json!({"class": j, "predicate": "distinct isomorphism class", "duplicate_of": i}));
            }
        }
    }
    let evidence = json!({
        "classes": census.classes.len(),
        "exhausted": census.exhausted,
        "nodes": census.nodes,
        "f_vectors": census.classes.iter().map(|c| c.complex.f_vector().counts().to_vec()).collect::<Vec<_>>(),
        "failures": failures,
    });
    Certificate::new(claim, digest.finish(), Verdict::from_bool(failures.is_empty()), evidence)
}

/// Census summary written as `census.json` next to the member files.
pub fn census_json(census: &Census, spec: &SearchSpec) -> serde_json::Value {
    json!({
        "version": crate::certificate::VERSION,
        "spec": spec,
        "exhausted": census.exhausted,
        "stop": census.stop,
        "nodes": census.nodes,
        "leaves": census.leaves,
        "classes": census.classes.iter().enumerate().map(|(i, c)| json!({
            "file": class_file_name(i),
            "f_vector": c.complex.f_vector().counts(),
            "betti_Q": homology::betti_json(&homology::betti(&c.complex, CoefficientField::Rationals)),
        })).collect::<Vec<_>>(),
    })
}

pub fn class_file_name(i: usize) -> String {
    format!("class_{i:03}.cplx")
}

/// Writes `census.json` and one facet file per class into `dir`.
pub fn write_census_dir(dir: &std::path::Path, census: &Census, spec: &SearchSpec) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for (i, c) in census.classes.iter().enumerate() {
        std::fs::write(dir.join(class_file_name(i)), crate::io::write_complex(&c.complex, Some(&c.coloring)))?;
    }
    let text = serde_json::to_string_pretty(&census_json(census, spec)).expect("census serializes");
    std::fs::write(dir.join("census.json"), text + "\n")
}
