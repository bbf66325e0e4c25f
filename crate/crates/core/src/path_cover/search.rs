//! Alternating-path search over a maximum 2-matching.
//!
//! An alternating path `v0, v1, ..., v_{2i+1}, v_{2i+2}` adds the edges
//! `(v_{2j}, v_{2j+1})` and removes `(v_{2j+1}, v_{2j+2})`, so the matching
//! keeps its size while one deficient component (a singleton, or for the
//! short-path rule also a 1-path) gets absorbed into a longer path.
//!
//! Each interior hop enters a short path at a vertex that splits it into
//! two small pieces, detaches one piece and carries it on to the next hop.
//! The final hop lands on a long path or a cycle and deletes one matching
//! edge there without leaving a new deficient piece behind.
//!
//! The search is a single BFS from all deficient components at once. Each
//! vertex is visited in one role only: as an entry point of a short path or
//! as a member of a detached piece.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::Graph;
use crate::two_matching::{MatchingDecomposition, TwoMatching, TwoMatchingError};

/// Which components count as deficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Save singletons only. Interior hops use 2-paths (entered at the
    /// middle); terminals are cycle vertices and internal vertices of paths
    /// with at least 3 edges.
    Singletons,
    /// Save singletons and 1-paths. Interior hops use paths with 2 to 4
    /// edges, entered at a vertex that leaves at most two vertices on either
    /// side (the middle, for 4-paths); terminals are cycle vertices, vertices
    /// of paths with at least 5 edges, and non-middle vertices of 4-paths.
    ShortPaths,
}

/// The deficient component an alternating path starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SaveObject {
    Singleton(usize),
    /// A 1-path; the first vertex is the one the alternating path leaves from.
    OnePath(usize, usize),
}

impl SaveObject {
    pub fn vertices(&self) -> Vec<usize> {
        match *self {
            SaveObject::Singleton(v) => vec![v],
            SaveObject::OnePath(v, u) => vec![v, u],
        }
    }
}

/// An edge swap that saves one deficient component.
///
/// `vertices` lists `v0, v1, ..., v_{2i+2}`, where an even-position vertex
/// other than `v0` stands for the whole piece detached at that hop. The
/// edges actually swapped are in `add_edges` and `remove_edges`; an added
/// edge may leave from the far vertex of a detached 1-path piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingPath {
    pub root: SaveObject,
    pub vertices: Vec<usize>,
    pub add_edges: Vec<(usize, usize)>,
    pub remove_edges: Vec<(usize, usize)>,
}

impl AlternatingPath {
    /// Number of interior hops `i`.
    pub fn hops(&self) -> usize {
        self.add_edges.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SwapError {
    #[error("swap adds {add} edges but removes {remove}")]
    Unbalanced { add: usize, remove: usize },
    #[error("vertex {0} repeats on the alternating path")]
    NotSimple(usize),
    #[error(transparent)]
    Edge(#[from] TwoMatchingError),
}

/// Applies `ap` to `m`: removes `ap.remove_edges`, then adds `ap.add_edges`.
pub fn apply_swap<'g>(m: &TwoMatching<'g>, ap: &AlternatingPath) -> Result<TwoMatching<'g>, SwapError> {
    if ap.add_edges.len() != ap.remove_edges.len() || ap.add_edges.is_empty() {
        return Err(SwapError::Unbalanced {
            add: ap.add_edges.len(),
            remove: ap.remove_edges.len(),
        });
    }
    let mut seen = vec![false; m.host().n()];
    for &v in &ap.vertices {
        if std::mem::replace(&mut seen[v], true) {
            return Err(SwapError::NotSimple(v));
        }
    }
    let mut out = m.clone();
    for &(u, v) in &ap.remove_edges {
        out.remove(u, v)?;
    }
    for &(u, v) in &ap.add_edges {
        out.insert(u, v)?;
    }
    Ok(out)
}

struct Component {
    verts: Vec<usize>,
    cycle: bool,
}

impl Component {
    /// Number of edges of a path component.
    fn len(&self) -> usize {
        self.verts.len() - 1
    }
}

/// Per-vertex view of a decomposition.
struct Layout {
    comps: Vec<Component>,
    comp: Vec<usize>,
    pos: Vec<usize>,
}

impl Layout {
    fn new(n: usize, dec: &MatchingDecomposition) -> Self {
        let mut comps: Vec<Component> = dec
            .paths()
            .map(|verts| Component { verts, cycle: false })
            .collect();
        comps.extend(dec.cycles.iter().map(|c| Component {
            verts: c.clone(),
            cycle: true,
        }));
        let mut comp = vec![usize::MAX; n];
        let mut pos = vec![usize::MAX; n];
        for (ci, c) in comps.iter().enumerate() {
            for (p, &v) in c.verts.iter().enumerate() {
                comp[v] = ci;
                pos[v] = p;
            }
        }
        Layout { comps, comp, pos }
    }

    fn component(&self, v: usize) -> &Component {
        &self.comps[self.comp[v]]
    }

    fn can_enter(&self, rule: Rule, v: usize) -> bool {
        let c = self.component(v);
        if c.cycle {
            return false;
        }
        let (k, p) = (c.len(), self.pos[v]);
        match rule {
            Rule::Singletons => k == 2 && p == 1,
            Rule::ShortPaths => match k {
                2 => p == 1,
                3 => p == 1 || p == 2,
                4 => p == 2,
                _ => false,
            },
        }
    }

    /// If `v` can end an alternating path, the vertex `z` such that deleting
    /// `(v, z)` leaves no new deficient piece.
    fn terminal_mate(&self, rule: Rule, v: usize) -> Option<usize> {
        let c = self.component(v);
        let p = self.pos[v];
        if c.cycle {
            let l = c.verts.len();
            return Some(c.verts[(p + 1) % l].min(c.verts[(p + l - 1) % l]));
        }
        let k = c.len();
        // The detached piece must keep at least `min_piece` vertices.
        let min_piece = match rule {
            Rule::Singletons if k >= 3 && p > 0 && p < k => 2,
            Rule::ShortPaths if k >= 5 || (k == 4 && p != 2) => 3,
            _ => return None,
        };
        let after = (p < k && k - p >= min_piece).then(|| c.verts[p + 1]);
        let before = (p >= min_piece).then(|| c.verts[p - 1]);
        match (before, after) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// The vertices beyond `near` when walking from `entry` through `near`.
    fn piece(&self, entry: usize, near: usize) -> Vec<usize> {
        let c = self.component(entry);
        let (pe, pn) = (self.pos[entry], self.pos[near]);
        if pn > pe {
            c.verts[pn..].to_vec()
        } else {
            c.verts[..=pn].iter().rev().copied().collect()
        }
    }

    fn path_neighbors(&self, v: usize) -> Vec<usize> {
        let c = self.component(v);
        let p = self.pos[v];
        let mut out = Vec::with_capacity(2);
        if p > 0 {
            out.push(c.verts[p - 1]);
        }
        if p + 1 < c.verts.len() {
            out.push(c.verts[p + 1]);
        }
        out.sort_unstable();
        out
    }
}

#[derive(Clone, Copy)]
enum Reach {
    Unseen,
    Root,
    /// Entered from the detached-piece vertex `from`.
    Entry { from: usize },
    /// Member of the piece detached by removing `(entry, near)`.
    Piece { entry: usize, near: usize },
}

/// Finds an alternating path saving some deficient component under `rule`,
/// or `None` when no deficient component can be saved.
pub fn find_saving_path(host: &Graph, m: &TwoMatching<'_>, rule: Rule) -> Option<AlternatingPath> {
    let dec = m.decompose();
    find_in(host, m, &dec, rule)
}

/// Singleton-saving search.
pub fn find_saving_path_a(host: &Graph, m: &TwoMatching<'_>) -> Option<AlternatingPath> {
    find_saving_path(host, m, Rule::Singletons)
}

/// Singleton-or-1-path-saving search.
pub fn find_saving_path_b(host: &Graph, m: &TwoMatching<'_>) -> Option<AlternatingPath> {
    find_saving_path(host, m, Rule::ShortPaths)
}

fn find_in(
    host: &Graph,
    m: &TwoMatching<'_>,
    dec: &MatchingDecomposition,
    rule: Rule,
) -> Option<AlternatingPath> {
    let n = host.n();
    let layout = Layout::new(n, dec);
    let mut reach = vec![Reach::Unseen; n];
    let mut queue = VecDeque::new();

    let mut roots: Vec<usize> = dec.p0.clone();
    if rule == Rule::ShortPaths {
        roots.extend(dec.p1.iter().flat_map(|&(u, v)| [u, v]));
    }
    roots.sort_unstable();
    for &r in &roots {
        reach[r] = Reach::Root;
        queue.push_back(r);
    }

    // Whether the hop chain leading to `x` already passes through component `ci`.
    let on_branch = |reach: &[Reach], ci: usize, mut x: usize| loop {
        match reach[x] {
            Reach::Piece { entry, .. } => {
                if layout.comp[entry] == ci {
                    return true;
                }
                match reach[entry] {
                    Reach::Entry { from } => x = from,
                    _ => unreachable!("piece hangs off an entry"),
                }
            }
            _ => return false,
        }
    };

    while let Some(x) = queue.pop_front() {
        for &y in host.neighbors(x) {
            if let Some(z) = layout.terminal_mate(rule, y) {
                if !on_branch(&reach, layout.comp[y], x) {
                    return Some(trace(m, &reach, x, y, z));
                }
                continue;
            }
            if !matches!(reach[y], Reach::Unseen) || !layout.can_enter(rule, y) {
                continue;
            }
            reach[y] = Reach::Entry { from: x };
            for near in layout.path_neighbors(y) {
                for w in layout.piece(y, near) {
                    if matches!(reach[w], Reach::Unseen) {
                        reach[w] = Reach::Piece { entry: y, near };
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    None
}

fn trace(m: &TwoMatching<'_>, reach: &[Reach], x: usize, y: usize, z: usize) -> AlternatingPath {
    let mut rev = vec![z, y];
    let mut add = vec![(x, y)];
    let mut remove = vec![(y, z)];
    let mut v = x;
    let root = loop {
        match reach[v] {
            Reach::Root => {
                rev.push(v);
                break match m.mates(v).next() {
                    Some(u) => SaveObject::OnePath(v, u),
                    None => SaveObject::Singleton(v),
                };
            }
            Reach::Piece { entry, near } => {
                rev.push(near);
                rev.push(entry);
                remove.push((entry, near));
                let Reach::Entry { from } = reach[entry] else {
                    unreachable!("piece hangs off an entry")
                };
                add.push((from, entry));
                v = from;
            }
            _ => unreachable!("BFS only expands roots and pieces"),
        }
    };
    rev.reverse();
    add.reverse();
    remove.reverse();
    AlternatingPath {
        root,
        vertices: rev,
        add_edges: add,
        remove_edges: remove,
    }
}
