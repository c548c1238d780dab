//! Planarity testing with embedding extraction.
//!
//! Each biconnected block is embedded by path addition
//! (Demoucron–Malgrange–Pertuiset): start from a cycle, and repeatedly embed
//! a path of some fragment into a face that contains all of the fragment's
//! attachment vertices, preferring fragments with a single admissible face.
//! A fragment with no admissible face certifies non-planarity. Block
//! embeddings are glued at cut vertices by concatenating rotations.

use std::collections::{HashMap, VecDeque};

use super::{CombinatorialEmbedding, Dart, Rotation};
use crate::graph::{biconnected, Graph, VertexId};

#[derive(Debug, Clone)]
pub enum Planarity {
    Planar(CombinatorialEmbedding),
    NonPlanar,
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }

    pub fn embedding(self) -> Option<CombinatorialEmbedding> {
        match self {
            Planarity::Planar(e) => Some(e),
            Planarity::NonPlanar => None,
        }
    }
}

pub fn test_planarity(g: &Graph) -> Planarity {
    let (n, edges, ids) = g.index_view();
    match planar_rotation(n, &edges) {
        None => Planarity::NonPlanar,
        Some(orders) => {
            let rot = Rotation::from_orders(orders.into_iter().enumerate().map(|(v, ds)| {
                let darts = ds
                    .into_iter()
                    .map(|d| Dart::new(ids[d / 2], d % 2))
                    .collect();
                (VertexId::new(v), darts)
            }));
            let emb = CombinatorialEmbedding::new(g, rot)
                .expect("path-addition embedding must satisfy Euler's formula");
            Planarity::Planar(emb)
        }
    }
}

pub fn is_planar(g: &Graph) -> bool {
    let (n, edges, _) = g.index_view();
    planar_rotation(n, &edges).is_some()
}

/// Per-vertex cyclic dart orders (dart `2i + s` is edge `i` leaving endpoint
/// `s`), or `None` when the graph is not planar.
pub(crate) fn planar_rotation(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut orders = vec![Vec::new(); n];
    let distinct = edges.len() - count_multi(edges);
    if n >= 3 && distinct > 3 * n - 6 {
        return None;
    }
    for block in biconnected(n, edges).components {
        for (v, ds) in embed_block(edges, &block)? {
            orders[v].extend(ds);
        }
    }
    Some(orders)
}

// Loops and parallel edges do not count towards the 3n − 6 bound.
fn count_multi(edges: &[(usize, usize)]) -> usize {
    let mut seen = std::collections::HashSet::new();
    edges
        .iter()
        .filter(|&&(u, v)| u == v || !seen.insert((u.min(v), u.max(v))))
        .count()
}

struct Block {
    verts: Vec<usize>,
    // local endpoints of local edge i
    ends: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl Block {
    fn head(&self, d: usize) -> usize {
        let (a, b) = self.ends[d / 2];
        if d % 2 == 0 {
            b
        } else {
            a
        }
    }

    fn leaving(&self, e: usize, v: usize) -> usize {
        if self.ends[e].0 == v {
            2 * e
        } else {
            2 * e + 1
        }
    }
}

struct LocalRotation {
    next: Vec<usize>,
    prev: Vec<usize>,
}

impl LocalRotation {
    fn insert_after(&mut self, anchor: usize, d: usize) {
        let after = self.next[anchor];
        self.next[anchor] = d;
        self.prev[d] = anchor;
        self.next[d] = after;
        self.prev[after] = d;
    }

    fn pair(&mut self, a: usize, b: usize) {
        self.next[a] = b;
        self.prev[a] = b;
        self.next[b] = a;
        self.prev[b] = a;
    }
}

struct Fragment {
    attachments: Vec<usize>,
    // Some(edge) for a chord, None for a component of unembedded vertices
    chord: Option<usize>,
    interior: Vec<usize>,
}

fn embed_block(edges: &[(usize, usize)], block: &[usize]) -> Option<Vec<(usize, Vec<usize>)>> {
    if block.len() == 1 {
        let i = block[0];
        let (u, v) = edges[i];
        return Some(if u == v {
            vec![(u, vec![2 * i, 2 * i + 1])]
        } else {
            vec![(u, vec![2 * i]), (v, vec![2 * i + 1])]
        });
    }

    let mut local_of: HashMap<usize, usize> = HashMap::new();
    let mut verts = Vec::new();
    let mut ends = Vec::with_capacity(block.len());
    for &i in block {
        let (u, v) = edges[i];
        let mut loc = |x: usize| {
            *local_of.entry(x).or_insert_with(|| {
                verts.push(x);
                verts.len() - 1
            })
        };
        let (a, b) = (loc(u), loc(v));
        ends.push((a, b));
    }
    let k = verts.len();
    let l = ends.len();
    let mut adj = vec![Vec::new(); k];
    for (e, &(a, b)) in ends.iter().enumerate() {
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    let blk = Block { verts, ends, adj };

    let mut rot = LocalRotation {
        next: vec![usize::MAX; 2 * l],
        prev: vec![usize::MAX; 2 * l],
    };
    let mut first = vec![usize::MAX; k];
    let mut in_v = vec![false; k];
    let mut in_e = vec![false; l];

    let (cycle_v, cycle_e) = find_cycle(&blk);
    let c = cycle_v.len();
    for i in 0..c {
        let v = cycle_v[i];
        let out = blk.leaving(cycle_e[i], v);
        let back = blk.leaving(cycle_e[(i + c - 1) % c], v);
        rot.pair(out, back);
        first[v] = out;
        in_v[v] = true;
    }
    for &e in &cycle_e {
        in_e[e] = true;
    }
    let mut embedded = c;

    let words = k.div_ceil(64);
    while embedded < l {
        // faces of the current (biconnected) embedding; each is a simple cycle
        let mut seen = vec![false; 2 * l];
        let mut face_sets: Vec<Vec<u64>> = Vec::new();
        let mut face_into: Vec<HashMap<usize, usize>> = Vec::new();
        for e in 0..l {
            if !in_e[e] {
                continue;
            }
            for start in [2 * e, 2 * e + 1] {
                if seen[start] {
                    continue;
                }
                let mut bits = vec![0u64; words];
                let mut into = HashMap::new();
                let mut d = start;
                loop {
                    seen[d] = true;
                    let h = blk.head(d);
                    bits[h / 64] |= 1 << (h % 64);
                    into.insert(h, d);
                    d = rot.next[d ^ 1];
                    if d == start {
                        break;
                    }
                }
                face_sets.push(bits);
                face_into.push(into);
            }
        }

        let fragments = fragments(&blk, &in_v, &in_e);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let mut admissible = face_sets.iter().enumerate().filter(|(_, bits)| {
                frag.attachments
                    .iter()
                    .all(|&a| bits[a / 64] & (1 << (a % 64)) != 0)
            });
            let Some((face, _)) = admissible.next() else {
                return None;
            };
            let unique = admissible.next().is_none();
            if unique {
                choice = Some((fi, face));
                break;
            }
            if choice.is_none() {
                choice = Some((fi, face));
            }
        }
        let (fi, face) = choice.expect("unembedded edges imply a fragment");
        let frag = &fragments[fi];

        let (path_v, path_e) = fragment_path(&blk, frag, &in_v);
        let a = path_v[0];
        let b = *path_v.last().unwrap();
        let anchor_a = face_into[face][&a] ^ 1;
        let anchor_b = face_into[face][&b] ^ 1;
        let steps = path_e.len();
        rot.insert_after(anchor_a, blk.leaving(path_e[0], a));
        for i in 1..steps {
            let x = path_v[i];
            let back = blk.leaving(path_e[i - 1], x);
            let out = blk.leaving(path_e[i], x);
            rot.pair(back, out);
            first[x] = out;
            in_v[x] = true;
        }
        rot.insert_after(anchor_b, blk.leaving(path_e[steps - 1], b));
        for &e in &path_e {
            in_e[e] = true;
        }
        embedded += steps;
    }

    let mut out = Vec::with_capacity(k);
    for v in 0..k {
        let start = first[v];
        let mut ds = Vec::new();
        let mut d = start;
        loop {
            ds.push(2 * block[d / 2] + d % 2);
            d = rot.next[d];
            if d == start {
                break;
            }
        }
        out.push((blk.verts[v], ds));
    }
    Some(out)
}

/// Some cycle of a biconnected block with at least two edges, as parallel
/// vertex and edge lists (edge i joins vertex i and i + 1).
fn find_cycle(blk: &Block) -> (Vec<usize>, Vec<usize>) {
    let k = blk.verts.len();
    let mut parent_edge = vec![usize::MAX; k];
    let mut parent = vec![usize::MAX; k];
    let mut visited = vec![false; k];
    let mut stack = vec![(0usize, 0usize)];
    visited[0] = true;
    while let Some(top) = stack.last_mut() {
        let v = top.0;
        if top.1 == blk.adj[v].len() {
            stack.pop();
            continue;
        }
        let (w, e) = blk.adj[v][top.1];
        top.1 += 1;
        if e == parent_edge[v] {
            continue;
        }
        if visited[w] {
            // back edge to an ancestor: w ... v via tree edges, then e
            let mut vs = vec![v];
            let mut es = vec![e];
            let mut x = v;
            while x != w {
                es.push(parent_edge[x]);
                x = parent[x];
                vs.push(x);
            }
            // vs = v, .., w with es[0] = (v,w) back edge and es[i] joining vs[i-1], vs[i]
            // reorder so that edge i joins vertex i and i + 1 cyclically
            let len = vs.len();
            let mut cv = Vec::with_capacity(len);
            let mut ce = Vec::with_capacity(len);
            for i in 0..len {
                cv.push(vs[i]);
                ce.push(es[(i + 1) % len]);
            }
            return (cv, ce);
        }
        visited[w] = true;
        parent[w] = v;
        parent_edge[w] = e;
        stack.push((w, 0));
    }
    unreachable!("biconnected block without a cycle")
}

fn fragments(blk: &Block, in_v: &[bool], in_e: &[bool]) -> Vec<Fragment> {
    let mut out = Vec::new();
    for (e, &(a, b)) in blk.ends.iter().enumerate() {
        if !in_e[e] && in_v[a] && in_v[b] {
            out.push(Fragment {
                attachments: vec![a, b],
                chord: Some(e),
                interior: Vec::new(),
            });
        }
    }
    let k = blk.verts.len();
    let mut comp = vec![usize::MAX; k];
    for s in 0..k {
        if in_v[s] || comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut interior = vec![s];
        let mut attachments = Vec::new();
        comp[s] = id;
        let mut i = 0;
        while i < interior.len() {
            let v = interior[i];
            i += 1;
            for &(w, _) in &blk.adj[v] {
                if in_v[w] {
                    attachments.push(w);
                } else if comp[w] == usize::MAX {
                    comp[w] = id;
                    interior.push(w);
                }
            }
        }
        attachments.sort_unstable();
        attachments.dedup();
        out.push(Fragment {
            attachments,
            chord: None,
            interior,
        });
    }
    out
}

/// A path through the fragment between two distinct attachment vertices.
fn fragment_path(blk: &Block, frag: &Fragment, in_v: &[bool]) -> (Vec<usize>, Vec<usize>) {
    if let Some(e) = frag.chord {
        let (a, b) = blk.ends[e];
        return (vec![a, b], vec![e]);
    }
    let k = blk.verts.len();
    let start = frag.attachments[0];
    let mut inside = vec![false; k];
    for &x in &frag.interior {
        inside[x] = true;
    }
    let mut pred: Vec<Option<(usize, usize)>> = vec![None; k];
    let mut queue = VecDeque::new();
    for &(w, e) in &blk.adj[start] {
        if inside[w] && pred[w].is_none() {
            pred[w] = Some((start, e));
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &(w, e) in &blk.adj[v] {
            if in_v[w] && w != start {
                let mut vs = vec![w, v];
                let mut es = vec![e];
                let mut x = v;
                while let Some((p, pe)) = pred[x] {
                    es.push(pe);
                    vs.push(p);
                    if p == start {
                        break;
                    }
                    x = p;
                }
                vs.reverse();
                es.reverse();
                return (vs, es);
            }
            if inside[w] && pred[w].is_none() {
                pred[w] = Some((v, e));
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment of a biconnected block has two attachments")
}
