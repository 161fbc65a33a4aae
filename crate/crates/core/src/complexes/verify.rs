use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::SimplicialComplex;
use crate::exactmath::{kernel_basis, IntMatrix};

/// Vertex colors `1..=d+1` such that every face meets each class at most once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub classes: BTreeMap<usize, usize>,
}

impl Coloring {
    pub fn color(&self, v: usize) -> Option<usize> {
        self.classes.get(&v).copied()
    }

    pub fn color_count(&self) -> usize {
        self.classes.values().copied().max().unwrap_or(0)
    }

    /// Every facet is rainbow.
    pub fn is_proper_for(&self, c: &SimplicialComplex) -> bool {
        c.facets.iter().all(|f| {
            let mut seen: Vec<usize> = Vec::with_capacity(f.len());
            f.iter().all(|v| match self.color(*v) {
                Some(col) if !seen.contains(&col) => {
                    seen.push(col);
                    true
                }
                _ => false,
            })
        })
    }
}

/// A sign per facet, in the complex's facet order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orientation {
    pub epsilon: Vec<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub pure: bool,
    pub dimension: isize,
    pub strongly_connected: bool,
    pub pseudomanifold: bool,
    pub boundaryless: bool,
    pub normal: bool,
    pub balanced: bool,
    pub coloring: Option<Coloring>,
    pub orientable: bool,
    pub orientation: Option<Orientation>,
    pub facet_ridge_bipartite: bool,
}

/// Ridges with the facets containing them, ridges in lexicographic order.
pub(crate) fn ridge_map(c: &SimplicialComplex) -> BTreeMap<Vec<usize>, Vec<usize>> {
    let mut m: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (j, f) in c.facets.iter().enumerate() {
        for i in 0..f.len() {
            let mut r = f.clone();
            r.remove(i);
            m.entry(r).or_default().push(j);
        }
    }
    m
}

fn components(vertex_count: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![Vec::new(); vertex_count];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; vertex_count];
    let mut count = 0;
    for s in 0..vertex_count {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if !std::mem::replace(&mut seen[y], true) {
                    q.push_back(y);
                }
            }
        }
    }
    count
}

fn facet_ridge_edges(c: &SimplicialComplex) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for fs in ridge_map(c).values() {
        for (i, &a) in fs.iter().enumerate() {
            for &b in &fs[i + 1..] {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// Whether the facet-ridge graph is connected.
pub fn is_strongly_connected(c: &SimplicialComplex) -> bool {
    c.facets.len() <= 1 || components(c.facets.len(), &facet_ridge_edges(c)) == 1
}

/// Whether the facet-ridge graph is bipartite.
pub fn facet_ridge_bipartite(c: &SimplicialComplex) -> bool {
    let n = c.facets.len();
    let mut adj = vec![Vec::new(); n];
    for (a, b) in facet_ridge_edges(c) {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut side = vec![None; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            let sx = side[x].expect("visited");
            for &y in &adj[x] {
                match side[y] {
                    None => {
                        side[y] = Some(!sx);
                        q.push_back(y);
                    }
                    Some(sy) if sy == sx => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Whether the complex spanned by `facets` is connected (empty and
/// single-vertex complexes count as connected).
fn facets_connected(facets: &[Vec<usize>]) -> bool {
    let mut index: HashMap<usize, usize> = HashMap::new();
    for f in facets {
        for &v in f {
            let next = index.len();
            index.entry(v).or_insert(next);
        }
    }
    let edges: Vec<(usize, usize)> = facets
        .iter()
        .flat_map(|f| f.windows(2).map(|w| (index[&w[0]], index[&w[1]])).collect::<Vec<_>>())
        .collect();
    index.len() <= 1 || components(index.len(), &edges) == 1
}

/// Pure, ridges in at most two facets, strongly connected.
pub fn is_pseudomanifold(c: &SimplicialComplex) -> bool {
    c.is_pure() && !c.facets.is_empty() && ridge_map(c).values().all(|f| f.len() <= 2) && is_strongly_connected(c)
}

/// A pseudomanifold whose faces of dimension at most `d - 2` all have
/// connected links.
pub fn is_normal(c: &SimplicialComplex) -> bool {
    if !is_pseudomanifold(c) {
        return false;
    }
    let d = c.dimension();
    (0..=d - 2).all(|k| {
        c.faces(k as usize)
            .iter()
            .all(|face| facets_connected(&c.link(face)))
    })
}

/// Exact search for a coloring with `dim + 1` colors. Colors are numbered
/// by the smallest vertex in each class.
pub fn balanced_coloring(c: &SimplicialComplex) -> Option<Coloring> {
    let d = c.dimension();
    if d < 0 || !c.is_pure() {
        return None;
    }
    let colors = d as usize + 1;
    let verts = c.vertices();
    let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![Vec::new(); verts.len()];
    for f in &c.facets {
        for (i, a) in f.iter().enumerate() {
            for b in &f[i + 1..] {
                adj[pos[a]].push(pos[b]);
                adj[pos[b]].push(pos[a]);
            }
        }
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
        a.dedup();
    }
    let mut assign: Vec<Option<usize>> = vec![None; verts.len()];
    // the first facet is a clique: fixing its colors breaks the symmetry
    for (col, v) in c.facets[0].iter().enumerate() {
        assign[pos[v]] = Some(col);
    }
    let mut order: Vec<usize> = (0..verts.len()).filter(|&i| assign[i].is_none()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(adj[i].len()), i));

    fn search(i: usize, order: &[usize], adj: &[Vec<usize>], assign: &mut [Option<usize>], colors: usize) -> bool {
        let Some(&v) = order.get(i) else { return true };
        for col in 0..colors {
            if adj[v].iter().all(|&u| assign[u] != Some(col)) {
                assign[v] = Some(col);
                if search(i + 1, order, adj, assign, colors) {
                    return true;
                }
            }
        }
        assign[v] = None;
        false
    }
    if !search(0, &order, &adj, &mut assign, colors) {
        return None;
    }
    let mut rename: HashMap<usize, usize> = HashMap::new();
    let mut classes = BTreeMap::new();
    for (i, &v) in verts.iter().enumerate() {
        let raw = assign[i].expect("all colored");
        let next = rename.len() + 1;
        let col = *rename.entry(raw).or_insert(next);
        classes.insert(v, col);
    }
    Some(Coloring { classes })
}

/// Top boundary matrix (rows: lexicographic ridges, columns: facets) in
/// the standard sign convention for increasing vertex order.
pub(crate) fn boundary_matrix(c: &SimplicialComplex, ridges: &[Vec<usize>]) -> IntMatrix {
    let rindex: HashMap<&[usize], usize> = ridges.iter().enumerate().map(|(i, r)| (r.as_slice(), i)).collect();
    let mut m = IntMatrix::zeros(ridges.len(), c.facets.len());
    for (j, f) in c.facets.iter().enumerate() {
        for i in 0..f.len() {
            let mut r = f.clone();
            r.remove(i);
            if let Some(&row) = rindex.get(r.as_slice()) {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.set(row, j, sign.into());
            }
        }
    }
    m
}

/// A ±1 generator of the integer kernel of the boundary map restricted to
/// interior ridges, if that kernel has rank one. The first facet gets +1.
pub fn orientation(c: &SimplicialComplex) -> Option<Orientation> {
    if c.facets.is_empty() || !c.is_pure() {
        return None;
    }
    let interior: Vec<Vec<usize>> = ridge_map(c)
        .into_iter()
        .filter(|(_, fs)| fs.len() == 2)
        .map(|(r, _)| r)
        .collect();
    let kernel = if interior.is_empty() {
        if c.facets.len() != 1 {
            return None;
        }
        vec![vec![One::one()]]
    } else {
        kernel_basis(&boundary_matrix(c, &interior)).basis_vectors
    };
    if kernel.len() != 1 {
        return None;
    }
    let v = &kernel[0];
    if !v.iter().all(|x| x.abs().is_one()) {
        return None;
    }
    let flip = v[0].is_negative();
    let epsilon = v
        .iter()
        .map(|x| {
            let s = x.to_i8().expect("unit");
            if flip {
                -s
            } else {
                s
            }
        })
        .collect();
    Some(Orientation { epsilon })
}

/// Every predicate computed independently.
pub fn verify(c: &SimplicialComplex) -> VerifyReport {
    let pseudomanifold = is_pseudomanifold(c);
    let coloring = balanced_coloring(c);
    let orientation = orientation(c);
    VerifyReport {
        pure: c.is_pure(),
        dimension: c.dimension(),
        strongly_connected: is_strongly_connected(c),
        pseudomanifold,
        boundaryless: pseudomanifold && ridge_map(c).values().all(|f| f.len() == 2),
        normal: is_normal(c),
        balanced: coloring.is_some(),
        coloring,
        orientable: orientation.is_some(),
        orientation,
        facet_ridge_bipartite: facet_ridge_bipartite(c),
    }
}
