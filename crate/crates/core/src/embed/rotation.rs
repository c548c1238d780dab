use crate::graph::{EdgeId, Graph, VertexId};

const NONE: usize = usize::MAX;

/// One side of an edge: the edge traversed away from one of its endpoints.
/// Side 0 leaves the first endpoint, side 1 leaves the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart(usize);

impl Dart {
    pub const fn new(edge: EdgeId, side: usize) -> Self {
        Dart(edge.index() * 2 + side)
    }

    pub(crate) const fn from_index(i: usize) -> Self {
        Dart(i)
    }

    pub const fn index(self) -> usize {
        self.0
    }

    pub const fn edge(self) -> EdgeId {
        EdgeId::new(self.0 / 2)
    }

    pub const fn side(self) -> usize {
        self.0 % 2
    }

    pub const fn twin(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    /// The dart of `e` leaving `v`.
    pub fn leaving(g: &Graph, e: EdgeId, v: VertexId) -> Dart {
        let [a, _] = g.endpoints(e);
        Dart::new(e, if a == v { 0 } else { 1 })
    }

    pub fn tail(self, g: &Graph) -> VertexId {
        g.endpoints(self.edge())[self.side()]
    }

    pub fn head(self, g: &Graph) -> VertexId {
        g.endpoints(self.edge())[1 - self.side()]
    }
}

/// Rotation system: for each vertex, the cyclic order of the darts leaving
/// it, stored as doubly linked cycles so splices are O(1).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Rotation {
    next: Vec<usize>,
    prev: Vec<usize>,
    owner: Vec<usize>,
    first: Vec<usize>,
}

impl Rotation {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a rotation from explicit per-vertex cyclic orders.
    pub fn from_orders<I>(orders: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, Vec<Dart>)>,
    {
        let mut rot = Rotation::new();
        for (v, darts) in orders {
            rot.set_order(v, &darts);
        }
        rot
    }

    fn grow(&mut self, d: Dart, v: VertexId) {
        let need = (d.0 | 1) + 1;
        if self.next.len() < need {
            self.next.resize(need, NONE);
            self.prev.resize(need, NONE);
            self.owner.resize(need, NONE);
        }
        if self.first.len() <= v.index() {
            self.first.resize(v.index() + 1, NONE);
        }
    }

    /// Replaces the whole order at `v`.
    pub fn set_order(&mut self, v: VertexId, darts: &[Dart]) {
        for d in self.around(v) {
            self.detach(d);
        }
        if self.first.len() > v.index() {
            self.first[v.index()] = NONE;
        }
        let mut last: Option<Dart> = None;
        for &d in darts {
            match last {
                None => self.insert_first(v, d),
                Some(a) => self.insert_after(a, d),
            }
            last = Some(d);
        }
    }

    pub fn contains(&self, d: Dart) -> bool {
        self.owner.get(d.0).is_some_and(|&o| o != NONE)
    }

    /// Vertex the dart leaves from.
    pub fn owner(&self, d: Dart) -> VertexId {
        VertexId::new(self.owner[d.0])
    }

    pub fn first(&self, v: VertexId) -> Option<Dart> {
        match self.first.get(v.index()) {
            Some(&f) if f != NONE => Some(Dart(f)),
            _ => None,
        }
    }

    /// Successor in the cyclic order around the dart's tail.
    pub fn next(&self, d: Dart) -> Dart {
        Dart(self.next[d.0])
    }

    pub fn prev(&self, d: Dart) -> Dart {
        Dart(self.prev[d.0])
    }

    /// Next dart along the face to the left of travel: arrive via `d`, leave
    /// via the successor of its twin.
    pub fn face_successor(&self, d: Dart) -> Dart {
        self.next(d.twin())
    }

    /// Places `d` as the only dart at `v`. Panics if `v` already has darts.
    pub fn insert_first(&mut self, v: VertexId, d: Dart) {
        self.grow(d, v);
        assert_eq!(self.first[v.index()], NONE, "vertex already has darts");
        self.first[v.index()] = d.0;
        self.next[d.0] = d.0;
        self.prev[d.0] = d.0;
        self.owner[d.0] = v.index();
    }

    /// Inserts `d` directly after `anchor` around the anchor's tail.
    pub fn insert_after(&mut self, anchor: Dart, d: Dart) {
        let v = self.owner(anchor);
        self.grow(d, v);
        let after = self.next[anchor.0];
        self.next[anchor.0] = d.0;
        self.prev[d.0] = anchor.0;
        self.next[d.0] = after;
        self.prev[after] = d.0;
        self.owner[d.0] = v.index();
    }

    /// Inserts after `anchor` when given, otherwise as the first dart at `v`.
    pub fn insert_at(&mut self, v: VertexId, anchor: Option<Dart>, d: Dart) {
        match anchor {
            Some(a) => {
                debug_assert_eq!(self.owner(a), v);
                self.insert_after(a, d)
            }
            None => match self.first(v) {
                Some(f) => self.insert_after(self.prev(f), d),
                None => self.insert_first(v, d),
            },
        }
    }

    /// Puts `new` in the cyclic position of `old` and removes `old`.
    pub fn replace(&mut self, old: Dart, new: Dart) {
        let v = self.owner(old);
        if self.next[old.0] == old.0 {
            self.detach(old);
            self.first[v.index()] = NONE;
            self.insert_first(v, new);
        } else {
            self.insert_after(old, new);
            self.remove(old);
        }
    }

    pub fn remove(&mut self, d: Dart) {
        let v = self.owner[d.0];
        let n = self.next[d.0];
        if self.first[v] == d.0 {
            self.first[v] = if n == d.0 { NONE } else { n };
        }
        self.detach(d);
    }

    fn detach(&mut self, d: Dart) {
        let (p, n) = (self.prev[d.0], self.next[d.0]);
        if p != NONE && n != NONE {
            self.next[p] = n;
            self.prev[n] = p;
        }
        self.next[d.0] = NONE;
        self.prev[d.0] = NONE;
        self.owner[d.0] = NONE;
    }

    /// Darts leaving `v` in cyclic order, starting from its first dart.
    pub fn around(&self, v: VertexId) -> Vec<Dart> {
        let mut out = Vec::new();
        if let Some(f) = self.first(v) {
            let mut d = f;
            loop {
                out.push(d);
                d = self.next(d);
                if d == f {
                    break;
                }
            }
        }
        out
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.around(v).len()
    }

    /// One past the highest dart index ever placed.
    pub fn dart_bound(&self) -> usize {
        self.owner.len()
    }

    /// All darts currently placed, in index order.
    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.owner
            .iter()
            .enumerate()
            .filter(|(_, &o)| o != NONE)
            .map(|(i, _)| Dart(i))
    }

    /// Does the rotation place exactly the darts of `g`, at their tails?
    pub fn matches(&self, g: &Graph) -> bool {
        let placed = self.darts().count();
        placed == 2 * g.edge_count()
            && g.edges().all(|e| {
                (0..2).all(|s| {
                    let d = Dart::new(e, s);
                    self.contains(d) && self.owner(d) == d.tail(g)
                })
            })
    }
}
