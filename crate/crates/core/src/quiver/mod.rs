//! Quivers, paths and the parallel-path combinatorics `P//P'`.
//!
//! Paths are written function-style: the path that traverses `a` and then
//! `c` is `c*a`, stored with its arrows in that order (first traversed arrow
//! last).

mod parse;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub use parse::{parse_presentation, parse_presentation_with};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with named vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    /// Builds a quiver from vertex names and `(name, source, target)` arrows
    /// given by vertex index.
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, usize, usize)>) -> Result<Quiver> {
        if vertices.is_empty() {
            return Err(Error::EmptyQuiver);
        }
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{v}`")));
            }
        }
        let mut arrow_index = HashMap::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (i, (name, s, t)) in arrows.into_iter().enumerate() {
            if s >= vertices.len() || t >= vertices.len() {
                return Err(Error::InvalidQuiver(format!("arrow `{name}` has an invalid endpoint")));
            }
            if vertex_index.contains_key(&name) || arrow_index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate name `{name}`")));
            }
            out.push(Arrow { name, source: s, target: t });
        }
        Ok(Quiver { vertices, arrows: out, vertex_index, arrow_index })
    }

    /// Convenience constructor from string slices, arrows given by vertex name.
    ///
    /// ```
    /// use tauhh::quiver::Quiver;
    /// let q = Quiver::from_names(&["x", "y"], &[("a", "x", "y"), ("b", "x", "y")]).unwrap();
    /// assert_eq!(q.num_arrows(), 2);
    /// ```
    pub fn from_names(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Quiver> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let find = |n: &str| {
            vs.iter()
                .position(|v| v == n)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex `{n}`")))
        };
        let mut arr = Vec::new();
        for (name, s, t) in arrows {
            arr.push((name.to_string(), find(s)?, find(t)?));
        }
        Quiver::new(vs, arr)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.arrow_index.get(name).copied()
    }

    /// Path from arrow names in function-style order, e.g. `["c", "a"]`.
    pub fn path(&self, names: &[&str]) -> Option<Path> {
        let idx: Option<Vec<usize>> = names.iter().map(|n| self.arrow_by_name(n)).collect();
        Path::from_arrows(self, idx?)
    }

    /// All length-one paths, in arrow order.
    pub fn arrow_paths(&self) -> Vec<Path> {
        (0..self.num_arrows()).map(|a| Path::arrow(self, a)).collect()
    }

    pub fn vertex_paths(&self) -> Vec<Path> {
        (0..self.num_vertices()).map(Path::trivial).collect()
    }

    /// Human readable path: arrow names concatenated when they are all single
    /// characters (`cb`), joined by `*` otherwise; `e_v` for trivial paths.
    pub fn path_string(&self, p: &Path) -> String {
        if p.is_trivial() {
            return format!("e_{}", self.vertices[p.source]);
        }
        let names: Vec<&str> = p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect();
        if names.iter().all(|n| n.chars().count() == 1) {
            names.concat()
        } else {
            names.join("*")
        }
    }

    /// The path in input syntax: arrow names joined by `*`.
    pub fn path_syntax(&self, p: &Path) -> String {
        if p.is_trivial() {
            return format!("e_{}", self.vertices[p.source]);
        }
        let names: Vec<&str> = p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect();
        names.join("*")
    }
}

/// An oriented path. `arrows[0]` is traversed last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Path {
        let ar = q.arrow(a);
        Path { source: ar.source, target: ar.target, arrows: vec![a] }
    }

    /// Path with the given arrows (function-style order) if they compose.
    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Option<Path> {
        let (&first, &last) = (arrows.first()?, arrows.last()?);
        for w in arrows.windows(2) {
            if q.arrow(w[0]).source != q.arrow(w[1]).target {
                return None;
            }
        }
        Some(Path { source: q.arrow(last).source, target: q.arrow(first).target, arrows })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    /// `(target, source)`, the pair indexing `yΛx`.
    pub fn endpoints(&self) -> (usize, usize) {
        (self.target, self.source)
    }

    pub fn is_parallel(&self, other: &Path) -> bool {
        self.source == other.source && self.target == other.target
    }

    /// `self ∘ other`: traverse `other`, then `self`.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.source != other.target {
            return None;
        }
        let mut arrows = Vec::with_capacity(self.len() + other.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: other.source, target: self.target, arrows })
    }

    /// Whether `sub` occurs as a contiguous subpath. A trivial `sub` is
    /// only contained in itself.
    pub fn contains(&self, sub: &Path) -> bool {
        if sub.is_trivial() {
            return self == sub;
        }
        self.arrows.windows(sub.len()).any(|w| w == sub.arrows.as_slice())
    }

    /// Positions (in `arrows()`) where arrow `a` occurs.
    pub fn occurrences(&self, a: usize) -> Vec<usize> {
        self.arrows.iter().enumerate().filter(|(_, &x)| x == a).map(|(i, _)| i).collect()
    }

    /// Replaces the arrow at `pos` by `replacement`, which must be parallel
    /// to it. A trivial replacement deletes the arrow.
    pub fn replace_at(&self, pos: usize, replacement: &Path) -> Path {
        let mut arrows = Vec::with_capacity(self.len() + replacement.len());
        arrows.extend_from_slice(&self.arrows[..pos]);
        arrows.extend_from_slice(&replacement.arrows);
        arrows.extend_from_slice(&self.arrows[pos + 1..]);
        Path { source: self.source, target: self.target, arrows }
    }
}

impl Ord for Path {
    /// Length first, then lexicographic on arrow indices; trivial paths by vertex.
    fn cmp(&self, other: &Path) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Path) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            write!(f, "e{}", self.source)
        } else {
            let s: Vec<String> = self.arrows.iter().map(|a| format!("α{a}")).collect();
            write!(f, "{}", s.join("*"))
        }
    }
}

/// Number of paths of each length `0..=max_len`, saturating at `usize::MAX`.
pub fn count_paths(q: &Quiver, max_len: usize) -> Vec<usize> {
    let n = q.num_vertices();
    // ending[v] = number of paths of the current length ending at v
    let mut ending = vec![1usize; n];
    let mut counts = vec![n];
    for _ in 0..max_len {
        let mut next = vec![0usize; n];
        for a in q.arrows() {
            next[a.target] = next[a.target].saturating_add(ending[a.source]);
        }
        counts.push(next.iter().fold(0usize, |s, &x| s.saturating_add(x)));
        ending = next;
    }
    counts
}

/// All paths of length at most `max_len`, ordered by length and then
/// lexicographically by arrow index; the trivial paths come first.
pub fn enumerate_paths(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = q.vertex_paths();
    let mut layer: Vec<Path> = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &layer {
            for (a, ar) in q.arrows().iter().enumerate() {
                if ar.source == p.target {
                    next.push(Path::arrow(q, a).compose(p).expect("composable"));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// `P//P'`: pairs with equal sources and equal targets, in input order.
pub fn parallel_pairs<'a>(left: &'a [Path], right: &'a [Path]) -> Vec<(&'a Path, &'a Path)> {
    let mut out = Vec::new();
    for p in left {
        for r in right {
            if p.is_parallel(r) {
                out.push((p, r));
            }
        }
    }
    out
}

/// Coarse shape data of a quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    pub connected: bool,
    pub acyclic: bool,
    pub tree: bool,
    /// `c` if the quiver is a `c`-crown (an oriented cycle through every
    /// vertex once), 0 otherwise.
    pub crown_order: usize,
    /// `|Q0| - |Q1|`.
    pub euler_characteristic: i64,
    /// Indices of the loops.
    pub loops: Vec<usize>,
}

pub fn classify_shape(q: &Quiver) -> ShapeReport {
    let n = q.num_vertices();
    let connected = is_connected(q);
    let acyclic = is_acyclic(q);
    let euler_characteristic = n as i64 - q.num_arrows() as i64;
    let tree = connected && euler_characteristic == 1;
    let mut indeg = vec![0usize; n];
    let mut outdeg = vec![0usize; n];
    for a in q.arrows() {
        indeg[a.target] += 1;
        outdeg[a.source] += 1;
    }
    let crown = connected
        && q.num_arrows() == n
        && indeg.iter().all(|&d| d == 1)
        && outdeg.iter().all(|&d| d == 1);
    let loops = q
        .arrows()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.source == a.target)
        .map(|(i, _)| i)
        .collect();
    ShapeReport {
        connected,
        acyclic,
        tree,
        crown_order: if crown { n } else { 0 },
        euler_characteristic,
        loops,
    }
}

fn is_connected(q: &Quiver) -> bool {
    let n = q.num_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in q.arrows() {
        let (ra, rb) = (find(&mut parent, a.source), find(&mut parent, a.target));
        parent[ra] = rb;
    }
    let root = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == root)
}

/// Number of connected components of the underlying graph.
pub fn connected_components(q: &Quiver) -> usize {
    let n = q.num_vertices();
    let mut seen = vec![false; n];
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for a in q.arrows() {
                for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
    }
    count
}

fn is_acyclic(q: &Quiver) -> bool {
    let n = q.num_vertices();
    let mut indeg = vec![0usize; n];
    for a in q.arrows() {
        indeg[a.target] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = ready.pop() {
        removed += 1;
        for a in q.arrows().iter().filter(|a| a.source == v) {
            indeg[a.target] -= 1;
            if indeg[a.target] == 0 {
                ready.push(a.target);
            }
        }
    }
    removed == n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qca_quiver() -> Quiver {
        Quiver::from_names(
            &["v1", "v2", "v3"],
            &[("a", "v1", "v2"), ("b", "v1", "v2"), ("c", "v2", "v3")],
        )
        .unwrap()
    }

    fn four_vertex_quiver() -> Quiver {
        Quiver::from_names(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4"), ("d", "2", "4")],
        )
        .unwrap()
    }

    fn crown(c: usize) -> Quiver {
        let vs: Vec<String> = (0..c).map(|i| format!("v{i}")).collect();
        let arrows = (0..c).map(|i| (format!("a{i}"), i, (i + 1) % c)).collect();
        Quiver::new(vs, arrows).unwrap()
    }

    #[test]
    fn rejects_bad_quivers() {
        assert_eq!(Quiver::new(vec![], vec![]), Err(Error::EmptyQuiver));
        assert!(Quiver::from_names(&["x", "x"], &[]).is_err());
        assert!(Quiver::from_names(&["x"], &[("a", "x", "x"), ("a", "x", "x")]).is_err());
        assert!(Quiver::new(vec!["x".into()], vec![("a".into(), 0, 1)]).is_err());
    }

    #[test]
    fn enumerate_single_vertex() {
        let q = Quiver::from_names(&["x"], &[]).unwrap();
        assert_eq!(enumerate_paths(&q, 5).len(), 1);
    }

    #[test]
    fn enumerate_kronecker() {
        let q = Quiver::from_names(&["x", "y"], &[("a", "x", "y"), ("b", "x", "y")]).unwrap();
        let p = enumerate_paths(&q, 2);
        let names: Vec<String> = p.iter().map(|p| q.path_string(p)).collect();
        assert_eq!(names, ["e_x", "e_y", "a", "b"]);
    }

    #[test]
    fn enumerate_qca_paths() {
        let q = qca_quiver();
        let names: Vec<String> = enumerate_paths(&q, 2).iter().map(|p| q.path_string(p)).collect();
        assert_eq!(names, ["e_v1", "e_v2", "e_v3", "a", "b", "c", "ca", "cb"]);
        assert_eq!(count_paths(&q, 3), vec![3, 3, 2, 0]);
    }

    #[test]
    fn path_composition_is_function_style() {
        let q = qca_quiver();
        let ca = q.path(&["c", "a"]).unwrap();
        assert_eq!(ca.source(), 0);
        assert_eq!(ca.target(), 2);
        assert!(q.path(&["a", "c"]).is_none());
        let c = Path::arrow(&q, 2);
        let a = Path::arrow(&q, 0);
        assert_eq!(c.compose(&a), Some(ca.clone()));
        assert_eq!(a.compose(&c), None);
        let cb = ca.replace_at(1, &Path::arrow(&q, 1));
        assert_eq!(q.path_string(&cb), "cb");
    }

    #[test]
    fn parallel_pair_examples() {
        let loop1 = Quiver::from_names(&["x"], &[("l", "x", "x")]).unwrap();
        assert_eq!(parallel_pairs(&loop1.arrow_paths(), &loop1.vertex_paths()).len(), 1);
        let kr = Quiver::from_names(&["x", "y"], &[("a", "x", "y"), ("b", "x", "y")]).unwrap();
        assert_eq!(parallel_pairs(&kr.arrow_paths(), &kr.arrow_paths()).len(), 4);
        let c3 = crown(3);
        let q2: Vec<Path> = enumerate_paths(&c3, 2).into_iter().filter(|p| p.len() == 2).collect();
        assert_eq!(parallel_pairs(&q2, &c3.arrow_paths()).len(), 0);
    }

    #[test]
    fn shapes() {
        let s = classify_shape(&crown(1));
        assert_eq!(s.crown_order, 1);
        assert_eq!(s.loops, vec![0]);
        assert_eq!(classify_shape(&crown(2)).crown_order, 2);
        let r = classify_shape(&four_vertex_quiver());
        assert!(r.connected && r.acyclic && !r.tree);
        assert_eq!(r.euler_characteristic, 0);
        assert_eq!(r.crown_order, 0);
        let a3 = Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        let s = classify_shape(&a3);
        assert!(s.tree && s.acyclic && s.connected);
        let disc = Quiver::from_names(&["1", "2"], &[]).unwrap();
        assert!(!classify_shape(&disc).connected);
        assert_eq!(connected_components(&disc), 2);
        // Two loops at one vertex: in/out degree 2, not a crown.
        let two = Quiver::from_names(&["x"], &[("u", "x", "x"), ("v", "x", "x")]).unwrap();
        assert_eq!(classify_shape(&two).crown_order, 0);
    }

    #[test]
    fn acyclic_enumeration_stabilizes() {
        let r = four_vertex_quiver();
        assert_eq!(enumerate_paths(&r, 4), enumerate_paths(&r, 9));
    }
}
