//! Instance families with known or well-studied crossing numbers, the plain
//! edge-list format, and biconnected preprocessing.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::embed::is_planar;
use crate::graph::{EdgeId, Graph, VertexId};

const MAX_REGULAR_RESTARTS: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("no simple regular graph found after {0} restarts")]
    RestartsExhausted(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn invalid(msg: impl Into<String>) -> InstanceError {
    InstanceError::InvalidParameters(msg.into())
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::with_capacity(a * b);
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a + j));
        }
    }
    Graph::from_edges(a + b, &edges).unwrap()
}

/// Cartesian product of cycles `C_i` and `C_j`; vertex `(r, c)` is `r * j + c`.
pub fn cycle_product(i: usize, j: usize) -> Graph {
    assert!(i >= 3 && j >= 3, "cycle product needs i, j >= 3");
    let id = |r: usize, c: usize| r * j + c;
    let mut edges = Vec::with_capacity(2 * i * j);
    for r in 0..i {
        for c in 0..j {
            edges.push((id(r, c), id(r, (c + 1) % j)));
            edges.push((id(r, c), id((r + 1) % i, c)));
        }
    }
    Graph::from_edges(i * j, &edges).unwrap()
}

/// Generalized Petersen graph `P(m, k)`: outer cycle `0..m`, spokes, inner
/// vertices `m..2m` joined in steps of `k`.
pub fn petersen(m: usize, k: usize) -> Result<Graph, InstanceError> {
    if m < 3 || k < 1 || 2 * k >= m {
        return Err(invalid(format!("petersen needs m >= 3 and 1 <= k < m/2, got ({m}, {k})")));
    }
    let mut edges = Vec::with_capacity(3 * m);
    for i in 0..m {
        edges.push((i, (i + 1) % m));
        edges.push((i, m + i));
        edges.push((m + i, m + (i + k) % m));
    }
    Ok(Graph::from_edges(2 * m, &edges).unwrap())
}

/// Uniform-ish simple `d`-regular graph on `n` vertices via incremental stub
/// pairing (Steger–Wormald): each round shuffles the open stubs, keeps every
/// pair that is neither a loop nor a repeated edge, and restarts from scratch
/// when the remaining stubs can no longer be paired.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, InstanceError> {
    if (n * d) % 2 != 0 {
        return Err(invalid(format!("n*d must be even, got n={n}, d={d}")));
    }
    if d >= n {
        return Err(invalid(format!("degree {d} must be below n={n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_REGULAR_RESTARTS {
        if let Some(mut edges) = try_regular(n, d, &mut rng) {
            edges.sort_unstable();
            return Ok(Graph::from_edges(n, &edges).unwrap());
        }
    }
    Err(InstanceError::RestartsExhausted(MAX_REGULAR_RESTARTS))
}

fn try_regular(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut edges: HashSet<(usize, usize)> = HashSet::new();
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    while !stubs.is_empty() {
        let mut open: BTreeMap<usize, usize> = BTreeMap::new();
        stubs.shuffle(rng);
        for pair in stubs.chunks(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a != b && !edges.contains(&(a, b)) {
                edges.insert((a, b));
            } else {
                *open.entry(a).or_default() += 1;
                *open.entry(b).or_default() += 1;
            }
        }
        let keys: Vec<usize> = open.keys().copied().collect();
        let pairable = keys.is_empty()
            || keys
                .iter()
                .enumerate()
                .any(|(i, &a)| keys[i + 1..].iter().any(|&b| !edges.contains(&(a, b))));
        if !pairable {
            return None;
        }
        stubs = open
            .into_iter()
            .flat_map(|(v, c)| std::iter::repeat_n(v, c))
            .collect();
    }
    let mut out: Vec<_> = edges.into_iter().collect();
    out.sort_unstable();
    Some(out)
}

/// Splits `g` into biconnected components and returns the non-planar ones
/// as standalone graphs (vertices relabeled in ascending id order).
pub fn preprocess(g: &Graph) -> Vec<Graph> {
    g.biconnected_components()
        .into_iter()
        .map(|comp| induced_on_edges(g, &comp))
        .filter(|h| !is_planar(h))
        .collect()
}

fn induced_on_edges(g: &Graph, edges: &[EdgeId]) -> Graph {
    let mut verts: Vec<VertexId> = edges.iter().flat_map(|&e| g.endpoints(e)).collect();
    verts.sort_unstable();
    verts.dedup();
    let mut local = vec![usize::MAX; g.vertex_bound()];
    for (i, v) in verts.iter().enumerate() {
        local[v.index()] = i;
    }
    let pairs: Vec<(usize, usize)> = edges
        .iter()
        .map(|&e| {
            let [a, b] = g.endpoints(e);
            (local[a.index()], local[b.index()])
        })
        .collect();
    Graph::from_edges(verts.len(), &pairs).unwrap()
}

/// Parses the edge-list format: a `n m` header, then `m` lines `u v` with
/// 0-based vertex indices. `#` starts a comment; blank lines are ignored.
pub fn parse_graph(text: &str) -> Result<Graph, InstanceError> {
    let mut header: Option<(usize, usize)> = None;
    let mut g = Graph::new();
    let mut seen = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| InstanceError::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err(format!("expected two integers, found {:?}", line)));
        }
        let a: usize = fields[0].parse().map_err(|_| err(format!("bad integer {:?}", fields[0])))?;
        let b: usize = fields[1].parse().map_err(|_| err(format!("bad integer {:?}", fields[1])))?;
        match header {
            None => {
                header = Some((a, b));
                g = Graph::with_vertices(a);
            }
            Some((n, m)) => {
                if seen == m {
                    return Err(err(format!("more than the declared {m} edges")));
                }
                if a >= n || b >= n {
                    return Err(err(format!("vertex index out of range 0..{n}")));
                }
                g.add_edge(VertexId::new(a), VertexId::new(b)).unwrap();
                seen += 1;
            }
        }
    }
    let Some((_, m)) = header else {
        return Err(InstanceError::Parse {
            line: 1,
            message: "missing `n m` header".into(),
        });
    };
    if seen != m {
        return Err(InstanceError::Parse {
            line: text.lines().count().max(1),
            message: format!("declared {m} edges, found {seen}"),
        });
    }
    Ok(g)
}

/// Writes `g` in the edge-list format. Live vertices are numbered in
/// ascending id order, edges listed in ascending id order.
pub fn format_graph(g: &Graph) -> String {
    let mut local = vec![usize::MAX; g.vertex_bound()];
    for (i, v) in g.vertices().enumerate() {
        local[v.index()] = i;
    }
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let [a, b] = g.endpoints(e);
        out.push_str(&format!("{} {}\n", local[a.index()], local[b.index()]));
    }
    out
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph, InstanceError> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn write_graph(g: &Graph, path: impl AsRef<Path>) -> Result<(), InstanceError> {
    std::fs::write(path, format_graph(g))?;
    Ok(())
}

/// A named instance: a generator family with parameters, or a file.
///
/// Textual form is `family:params`, e.g. `complete:8`, `bipartite:5,5`,
/// `cycles:3,6`, `petersen:7,2`, `regular:30,4,11`, `file:g.txt`, or the long
/// family names (`complete_bipartite`, `cycle_product`, `random_regular`). Any other
/// string is taken as a file path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceSpec {
    Complete(usize),
    CompleteBipartite(usize, usize),
    CycleProduct(usize, usize),
    Petersen(usize, usize),
    RandomRegular { n: usize, d: usize, seed: u64 },
    File(PathBuf),
}

impl InstanceSpec {
    pub fn build(&self) -> Result<Graph, InstanceError> {
        match *self {
            InstanceSpec::Complete(n) => {
                if n < 1 {
                    return Err(invalid("complete needs n >= 1"));
                }
                Ok(complete(n))
            }
            InstanceSpec::CompleteBipartite(a, b) => {
                if a < 1 || b < 1 {
                    return Err(invalid("complete bipartite needs a, b >= 1"));
                }
                Ok(complete_bipartite(a, b))
            }
            InstanceSpec::CycleProduct(i, j) => {
                if i < 3 || j < 3 {
                    return Err(invalid("cycle product needs i, j >= 3"));
                }
                Ok(cycle_product(i, j))
            }
            InstanceSpec::Petersen(m, k) => petersen(m, k),
            InstanceSpec::RandomRegular { n, d, seed } => random_regular(n, d, seed),
            InstanceSpec::File(ref p) => read_graph(p),
        }
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceSpec::Complete(n) => write!(f, "complete:{n}"),
            InstanceSpec::CompleteBipartite(a, b) => write!(f, "complete_bipartite:{a},{b}"),
            InstanceSpec::CycleProduct(i, j) => write!(f, "cycle_product:{i},{j}"),
            InstanceSpec::Petersen(m, k) => write!(f, "petersen:{m},{k}"),
            InstanceSpec::RandomRegular { n, d, seed } => write!(f, "random_regular:{n},{d},{seed}"),
            InstanceSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl FromStr for InstanceSpec {
    type Err = InstanceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let Some((family, params)) = s.split_once(':') else {
            return Ok(InstanceSpec::File(PathBuf::from(s)));
        };
        if family == "file" {
            return Ok(InstanceSpec::File(PathBuf::from(params)));
        }
        let nums: Vec<u64> = params
            .split(',')
            .map(|x| x.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|_| invalid(format!("bad parameters in {s:?}")))?;
        let arity = |k: usize| {
            if nums.len() == k {
                Ok(())
            } else {
                Err(invalid(format!("{family} takes {k} parameters, got {s:?}")))
            }
        };
        let u = |i: usize| nums[i] as usize;
        match family {
            "complete" | "k" => arity(1).map(|_| InstanceSpec::Complete(u(0))),
            "bipartite" | "complete_bipartite" => {
                arity(2).map(|_| InstanceSpec::CompleteBipartite(u(0), u(1)))
            }
            "cycles" | "cycle_product" => arity(2).map(|_| InstanceSpec::CycleProduct(u(0), u(1))),
            "petersen" => arity(2).map(|_| InstanceSpec::Petersen(u(0), u(1))),
            "regular" | "random_regular" => arity(3).map(|_| InstanceSpec::RandomRegular {
                n: u(0),
                d: u(1),
                seed: nums[2],
            }),
            _ => Ok(InstanceSpec::File(PathBuf::from(s))),
        }
    }
}
