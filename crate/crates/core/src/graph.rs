//! Plumbing trees: parsing, validation, node/leg/chain classification and
//! subgraph determinants.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub b: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlumbingGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    arrows: Vec<usize>,
    adj: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawGraph {
    vertices: Vec<Vertex>,
    #[serde(default)]
    edges: Vec<[String; 2]>,
    #[serde(default)]
    arrows: Vec<String>,
}

impl PlumbingGraph {
    /// Parses either the JSON form or the line based text form
    /// (`vertex <id> <b>`, `edge <a> <b>`, `arrow <id>`, `#` comments).
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            let raw: RawGraph =
                serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
            let edges = raw.edges.into_iter().map(|[a, b]| (a, b)).collect();
            return Self::from_parts(raw.vertices, edges, raw.arrows);
        }
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut arrows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Parse(format!("line {}: `{}`", lineno + 1, line));
            match toks.as_slice() {
                ["vertex", id, b] => vertices.push(Vertex {
                    id: id.to_string(),
                    b: b.parse().map_err(|_| bad())?,
                }),
                ["edge", a, b] => edges.push((a.to_string(), b.to_string())),
                ["arrow", id] => arrows.push(id.to_string()),
                _ => return Err(bad()),
            }
        }
        Self::from_parts(vertices, edges, arrows)
    }

    pub fn from_parts(
        vertices: Vec<Vertex>,
        edges: Vec<(String, String)>,
        arrows: Vec<String>,
    ) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.id.clone()));
            }
        }
        let lookup = |id: &str| index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.into()));
        let n = vertices.len();
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        let mut es = Vec::new();
        for (a, b) in &edges {
            let (i, j) = (lookup(a)?, lookup(b)?);
            if i == j {
                return Err(Error::NotATree(format!("loop at `{a}`")));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::NotATree(format!("repeated edge `{a}`-`{b}`")));
            }
            adj[i].push(j);
            adj[j].push(i);
            es.push((i, j));
        }
        if n == 0 {
            return Err(Error::NotATree("no vertices".into()));
        }
        if es.len() != n - 1 {
            return Err(Error::NotATree(format!("{} vertices but {} edges", n, es.len())));
        }
        let mut visited = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        visited[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if visited.iter().any(|&x| !x) {
            return Err(Error::NotATree("disconnected".into()));
        }
        let mut arr = Vec::new();
        for a in &arrows {
            let i = lookup(a)?;
            if arr.contains(&i) {
                return Err(Error::ArrowMisplaced(format!("several arrows at `{a}`")));
            }
            if adj[i].len() + 1 < 3 {
                return Err(Error::ArrowMisplaced(format!(
                    "arrow at `{a}` does not sit on a node"
                )));
            }
            arr.push(i);
        }
        for v in adj.iter_mut() {
            v.sort_by(|x, y| vertices[*x].id.cmp(&vertices[*y].id));
        }
        Ok(PlumbingGraph { vertices, edges: es, arrows: arr, adj })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn has_arrows(&self) -> bool {
        !self.arrows.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn b(&self, v: usize) -> i64 {
        self.vertices[v].b
    }

    pub fn id(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// Valency, an arrow counting as one extra neighbour.
    pub fn valency(&self, v: usize) -> usize {
        self.adj[v].len() + usize::from(self.arrows.contains(&v))
    }

    /// Vertices violating minimality (valency at most 2, no arrow, b > -2).
    pub fn minimality_warnings(&self) -> Vec<String> {
        (0..self.len())
            .filter(|&v| self.valency(v) <= 2 && self.b(v) > -2)
            .map(|v| format!("vertex `{}` has valency <= 2 and b = {}", self.id(v), self.b(v)))
            .collect()
    }

    /// Intersection matrix: b_v on the diagonal, 1 for edges.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut m = vec![vec![0; n]; n];
        for v in 0..n {
            m[v][v] = self.b(v);
        }
        for &(a, b) in &self.edges {
            m[a][b] = 1;
            m[b][a] = 1;
        }
        m
    }

    /// The tree path from v to w, both included.
    pub fn path(&self, v: usize, w: usize) -> Vec<usize> {
        let mut prev = vec![usize::MAX; self.len()];
        prev[v] = v;
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            if x == w {
                break;
            }
            for &y in &self.adj[x] {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut out = vec![w];
        let mut cur = w;
        while cur != v {
            cur = prev[cur];
            out.push(cur);
        }
        out.reverse();
        out
    }

    /// Path with optionally open endpoints: `(v,w]`, `[v,w)`, `(v,w)`.
    pub fn path_open(&self, v: usize, w: usize, open_start: bool, open_end: bool) -> Vec<usize> {
        let p = self.path(v, w);
        if v == w {
            return if open_start || open_end { vec![] } else { p };
        }
        let lo = usize::from(open_start);
        let hi = p.len() - usize::from(open_end);
        p[lo..hi].to_vec()
    }

    /// det(-I) restricted to `set`; the empty set has determinant 1.
    pub fn subgraph_det(&self, set: &[usize]) -> i64 {
        let m: Vec<Vec<i128>> = set
            .iter()
            .map(|&a| {
                set.iter()
                    .map(|&b| {
                        if a == b {
                            -(self.b(a) as i128)
                        } else if self.adj[a].contains(&b) {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        let d = bareiss_det(m);
        i64::try_from(d).expect("subgraph determinant exceeds i64")
    }

    /// Path determinant with the edge conventions: `det_(v,v) = 0`, and
    /// empty paths otherwise have determinant 1.
    pub fn path_det(&self, v: usize, w: usize, open_start: bool, open_end: bool) -> i64 {
        if v == w && open_start && open_end {
            return 0;
        }
        self.subgraph_det(&self.path_open(v, w, open_start, open_end))
    }

    /// det of the graph with the closed path [v,w] removed.
    pub fn det_complement_of_path(&self, v: usize, w: usize) -> i64 {
        let p: BTreeSet<usize> = self.path(v, w).into_iter().collect();
        let rest: Vec<usize> = (0..self.len()).filter(|x| !p.contains(x)).collect();
        self.subgraph_det(&rest)
    }
}

/// Fraction-free (Bareiss) determinant with row pivoting.
pub fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leg {
    /// Node index (position in `Classification::nodes`).
    pub node: usize,
    pub end: usize,
    /// Vertices from the neighbour of the node out to the end.
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    /// Smaller node in the partial order (closer to the root).
    pub lo: usize,
    pub hi: usize,
    /// Interior vertices listed from the `lo` side.
    pub interior: Vec<usize>,
}

impl Chain {
    /// The vertex `n_{n'}` adjacent to the smaller node, if the chain is nonempty.
    pub fn connector(&self) -> Option<usize> {
        self.interior.first().copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// Node vertices, sorted by id.
    pub nodes: Vec<usize>,
    pub node_of_vertex: Vec<Option<usize>>,
    pub ends: Vec<usize>,
    pub legs: Vec<Leg>,
    pub chains: Vec<Chain>,
    /// Per node: valency, number of node neighbours, number of ends
    /// (arrows included).
    pub delta: Vec<usize>,
    pub delta_nodes: Vec<usize>,
    pub delta_ends: Vec<usize>,
    /// delta_{n,N} - 2, plus one for an arrow: the exponent left on
    /// (1 - t^{E*_n}) once the ends are absorbed.
    pub zeta_exponent: Vec<i64>,
    /// Nodes with nonnegative zeta exponent.
    pub n_hat: Vec<usize>,
    /// Parent of each node in the rooted node tree.
    pub parent: Vec<Option<usize>>,
}

impl Classification {
    pub fn new(g: &PlumbingGraph) -> Self {
        let mut nodes: Vec<usize> = (0..g.len()).filter(|&v| g.valency(v) >= 3).collect();
        nodes.sort_by(|a, b| g.id(*a).cmp(g.id(*b)));
        let mut node_of_vertex = vec![None; g.len()];
        for (i, &v) in nodes.iter().enumerate() {
            node_of_vertex[v] = Some(i);
        }
        let mut ends: Vec<usize> = (0..g.len()).filter(|&v| g.valency(v) == 1).collect();
        ends.sort_by(|a, b| g.id(*a).cmp(g.id(*b)));

        // Walk out of each node along every neighbour until a node or an end.
        let mut legs = Vec::new();
        let mut raw_chains = Vec::new();
        for (ni, &n) in nodes.iter().enumerate() {
            for &start in g.neighbors(n) {
                let mut path = vec![start];
                let (mut prev, mut cur) = (n, start);
                while node_of_vertex[cur].is_none() && g.valency(cur) == 2 {
                    let next = *g.neighbors(cur).iter().find(|&&x| x != prev).unwrap();
                    prev = cur;
                    cur = next;
                    path.push(cur);
                }
                if let Some(nj) = node_of_vertex[cur] {
                    path.pop();
                    raw_chains.push((ni, nj, path));
                } else {
                    legs.push(Leg { node: ni, end: cur, path });
                }
            }
        }

        // Root the node tree at the first node; orient chains away from it.
        let k = nodes.len();
        let mut parent = vec![None; k];
        let mut depth = vec![usize::MAX; k];
        if k > 0 {
            depth[0] = 0;
            let mut queue = VecDeque::from([0usize]);
            while let Some(x) = queue.pop_front() {
                let mut nbrs: Vec<usize> =
                    raw_chains.iter().filter(|c| c.0 == x).map(|c| c.1).collect();
                nbrs.sort();
                for y in nbrs {
                    if depth[y] == usize::MAX {
                        depth[y] = depth[x] + 1;
                        parent[y] = Some(x);
                        queue.push_back(y);
                    }
                }
            }
        }
        let mut chains: Vec<Chain> = raw_chains
            .into_iter()
            .filter(|(a, b, _)| depth[*a] < depth[*b])
            .map(|(lo, hi, interior)| Chain { lo, hi, interior })
            .collect();
        chains.sort_by_key(|c| (c.lo, c.hi));

        let delta: Vec<usize> = nodes.iter().map(|&v| g.valency(v)).collect();
        let delta_nodes: Vec<usize> = (0..k)
            .map(|i| chains.iter().filter(|c| c.lo == i || c.hi == i).count())
            .collect();
        let delta_ends: Vec<usize> = (0..k).map(|i| delta[i] - delta_nodes[i]).collect();
        let zeta_exponent: Vec<i64> = (0..k)
            .map(|i| (delta[i] - legs.iter().filter(|l| l.node == i).count()) as i64 - 2)
            .collect();
        let n_hat = (0..k).filter(|&i| zeta_exponent[i] >= 0).collect();
        Classification {
            nodes,
            node_of_vertex,
            ends,
            legs,
            chains,
            delta,
            delta_nodes,
            delta_ends,
            zeta_exponent,
            n_hat,
            parent,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn legs_of(&self, node: usize) -> impl Iterator<Item = &Leg> {
        self.legs.iter().filter(move |l| l.node == node)
    }

    /// Nodes on the `lo` and `hi` side after cutting the chain; the `hi`
    /// side is the subtree below `hi` in the rooted node tree.
    pub fn sides(&self, chain: &Chain) -> (Vec<usize>, Vec<usize>) {
        let below = |mut x: usize| loop {
            if x == chain.hi {
                return true;
            }
            match self.parent[x] {
                Some(p) => x = p,
                None => return false,
            }
        };
        (0..self.num_nodes()).partition(|&x| !below(x))
    }
}
