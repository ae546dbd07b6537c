//! 2-skeletons of Vietoris-Rips and Čech complexes and their Betti numbers.
//!
//! Vertex ids are indices into the point list the complex was built from and
//! stay stable when vertices are removed.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::{min_enclosing_radius, within, TaggedPoint};
use crate::gf2::{BitVector, EchelonBasis};

/// Characteristic of the coefficient field used for every rank computation.
/// Only the two-element field is implemented; swapping fields means replacing
/// [`crate::gf2`] behind [`SimplicialComplex2::ranks`].
pub const COEFFICIENT_FIELD_CHARACTERISTIC: u32 = 2;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexKind {
    /// Flag complex on the `2r` proximity graph.
    #[default]
    Rips,
    /// Triangles only where the three radius-`r` balls share a point.
    Cech,
}

impl std::fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComplexKind::Rips => f.write_str("rips"),
            ComplexKind::Cech => f.write_str("cech"),
        }
    }
}

impl std::str::FromStr for ComplexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rips" => Ok(ComplexKind::Rips),
            "cech" | "čech" => Ok(ComplexKind::Cech),
            other => Err(invalid("kind", format!("expected `rips` or `cech`, got `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BettiPair {
    pub beta0: usize,
    pub beta1: usize,
}

impl BettiPair {
    pub const COVERED: BettiPair = BettiPair { beta0: 1, beta1: 0 };

    pub fn new(beta0: usize, beta1: usize) -> Self {
        BettiPair { beta0, beta1 }
    }

    /// One connected component and no hole.
    pub fn is_covered(&self) -> bool {
        *self == Self::COVERED
    }
}

impl From<BettiPair> for [usize; 2] {
    fn from(b: BettiPair) -> Self {
        [b.beta0, b.beta1]
    }
}

/// Simplex counts and boundary ranks of a 2-skeleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomologyRanks {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub rank_d1: usize,
    pub rank_d2: usize,
}

impl HomologyRanks {
    pub fn betti(&self) -> BettiPair {
        BettiPair {
            beta0: self.vertices - self.rank_d1,
            beta1: self.edges - self.rank_d1 - self.rank_d2,
        }
    }
}

/// Vertices, edges and triangles of a simplicial complex, closed under faces.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialComplex2 {
    points: Vec<TaggedPoint>,
    alive: Vec<bool>,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
}

impl SimplicialComplex2 {
    pub fn build(points: &[TaggedPoint], r: f64, kind: ComplexKind) -> Result<Self> {
        match kind {
            ComplexKind::Rips => build_rips(points, r),
            ComplexKind::Cech => build_cech(points, r),
        }
    }

    /// Complex from explicit simplex lists. Vertices are all of `points`;
    /// simplices are canonicalised and the closure invariant is checked.
    pub fn from_simplices(
        points: Vec<TaggedPoint>,
        edges: &[[usize; 2]],
        triangles: &[[usize; 3]],
    ) -> Result<Self> {
        let n = points.len();
        let mut es: Vec<[usize; 2]> = Vec::with_capacity(edges.len());
        for &[a, b] in edges {
            if a >= n || b >= n {
                return Err(Error::UnknownVertex(a.max(b)));
            }
            if a == b {
                return Err(invalid("edges", format!("loop on vertex {a}")));
            }
            es.push([a.min(b), a.max(b)]);
        }
        es.sort_unstable();
        es.dedup();
        let mut ts: Vec<[usize; 3]> = Vec::with_capacity(triangles.len());
        for t in triangles {
            let mut t = *t;
            t.sort_unstable();
            if t[0] == t[1] || t[1] == t[2] {
                return Err(invalid("triangles", format!("repeated vertex in {t:?}")));
            }
            if t[2] >= n {
                return Err(Error::UnknownVertex(t[2]));
            }
            for face in [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]] {
                if es.binary_search(&face).is_err() {
                    return Err(invalid("triangles", format!("face {face:?} of {t:?} is not an edge")));
                }
            }
            ts.push(t);
        }
        ts.sort_unstable();
        ts.dedup();
        let mut adjacency = vec![Vec::new(); n];
        for &[a, b] in &es {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for nb in &mut adjacency {
            nb.sort_unstable();
        }
        Ok(SimplicialComplex2 {
            alive: vec![true; n],
            points,
            adjacency,
            edges: es,
            triangles: ts,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.alive.iter().filter(|a| **a).count()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num_vertices() == 0
    }

    /// Ids of present vertices, ascending.
    pub fn vertex_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.alive.iter().enumerate().filter(|(_, a)| **a).map(|(i, _)| i)
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    /// The point a vertex id refers to, present or not.
    pub fn point(&self, v: usize) -> Option<&TaggedPoint> {
        self.points.get(v)
    }

    /// All points the complex was built on, including removed ones.
    pub fn points(&self) -> &[TaggedPoint] {
        &self.points
    }

    /// Present neighbours of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.contains_vertex(a) && self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn contains_triangle(&self, t: [usize; 3]) -> bool {
        let mut t = t;
        t.sort_unstable();
        self.triangles.binary_search(&t).is_ok()
    }

    /// Triangles having `v` as a vertex.
    pub fn triangles_of(&self, v: usize) -> impl Iterator<Item = [usize; 3]> + '_ {
        let nb = &self.adjacency[v];
        nb.iter().enumerate().flat_map(move |(i, &a)| {
            nb[i + 1..].iter().filter_map(move |&b| {
                if !self.triangles.is_empty() && self.has_triangle_sorted(v, a, b) {
                    let mut t = [v, a, b];
                    t.sort_unstable();
                    Some(t)
                } else {
                    None
                }
            })
        })
    }

    fn has_triangle_sorted(&self, v: usize, a: usize, b: usize) -> bool {
        let mut t = [v, a, b];
        t.sort_unstable();
        self.triangles.binary_search(&t).is_ok()
    }

    /// Copy of the complex without `v` and its cofaces.
    pub fn remove_vertex(&self, v: usize) -> Result<Self> {
        let mut out = self.clone();
        out.remove_vertex_in_place(v)?;
        Ok(out)
    }

    pub fn remove_vertex_in_place(&mut self, v: usize) -> Result<()> {
        if !self.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        self.alive[v] = false;
        for u in std::mem::take(&mut self.adjacency[v]) {
            if let Ok(pos) = self.adjacency[u].binary_search(&v) {
                self.adjacency[u].remove(pos);
            }
        }
        self.edges.retain(|e| !e.contains(&v));
        self.triangles.retain(|t| !t.contains(&v));
        Ok(())
    }

    /// Counts and boundary ranks over the two-element field.
    ///
    /// `rank_d2` stops early once it fills the cycle space, which is exact
    /// since the image of the second boundary map lies in the first kernel.
    pub fn ranks(&self) -> HomologyRanks {
        let ids: Vec<usize> = self.vertex_ids().collect();
        let nv = ids.len();
        let mut compact = vec![usize::MAX; self.points.len()];
        for (i, &v) in ids.iter().enumerate() {
            compact[v] = i;
        }

        let mut d1 = EchelonBasis::new(nv);
        let max_rank1 = nv.saturating_sub(1);
        for &[a, b] in &self.edges {
            if d1.rank() == max_rank1 {
                break;
            }
            d1.insert(BitVector::from_indices(nv, &[compact[a], compact[b]]));
        }
        let rank_d1 = d1.rank();

        let ne = self.edges.len();
        let cycle_dim = ne - rank_d1;
        let mut d2 = EchelonBasis::new(ne);
        for &[a, b, c] in &self.triangles {
            if d2.rank() == cycle_dim {
                break;
            }
            let faces = [self.edge_index(a, b), self.edge_index(a, c), self.edge_index(b, c)];
            d2.insert(BitVector::from_indices(ne, &faces));
        }
        HomologyRanks {
            vertices: nv,
            edges: ne,
            triangles: self.triangles.len(),
            rank_d1,
            rank_d2: d2.rank(),
        }
    }

    pub fn betti(&self) -> BettiPair {
        self.ranks().betti()
    }

    fn edge_index(&self, a: usize, b: usize) -> usize {
        self.edges
            .binary_search(&[a, b])
            .expect("closure invariant: triangle faces are edges")
    }

    /// Connected components by breadth-first traversal of the 1-skeleton.
    pub fn connected_components(&self) -> usize {
        let mut seen = vec![false; self.points.len()];
        let mut components = 0;
        for start in self.vertex_ids() {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adjacency[v] {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        components
    }

    /// Checks the closure and canonical-ordering invariants.
    pub fn check_invariants(&self) -> Result<()> {
        for w in self.edges.windows(2) {
            if w[0] >= w[1] {
                return Err(invalid("edges", "not strictly sorted"));
            }
        }
        for &[a, b] in &self.edges {
            if a >= b || !self.contains_vertex(a) || !self.contains_vertex(b) {
                return Err(invalid("edges", format!("bad edge [{a}, {b}]")));
            }
        }
        for w in self.triangles.windows(2) {
            if w[0] >= w[1] {
                return Err(invalid("triangles", "not strictly sorted"));
            }
        }
        for &[a, b, c] in &self.triangles {
            if !(a < b && b < c) || !self.has_edge(a, b) || !self.has_edge(a, c) || !self.has_edge(b, c) {
                return Err(invalid("triangles", format!("bad triangle [{a}, {b}, {c}]")));
            }
        }
        Ok(())
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r.is_finite() && r > 0.0) {
        return Err(invalid("r", format!("must be finite and > 0, got {r}")));
    }
    Ok(())
}

/// Proximity graph with edges at distance `<= 2r`, plus the triangles kept by
/// `keep_triangle` among its 3-cliques.
fn build_with<F>(points: &[TaggedPoint], r: f64, keep_triangle: F) -> Result<SimplicialComplex2>
where
    F: Fn(usize, usize, usize) -> bool,
{
    check_radius(r)?;
    let n = points.len();
    let reach = 2.0 * r;
    let reach2 = reach * reach;
    let mut adjacency = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for i in 0..n {
        let p = points[i].position();
        for j in i + 1..n {
            if within(p.distance_sq(points[j].position()), reach2) {
                adjacency[i].push(j);
                adjacency[j].push(i);
                edges.push([i, j]);
            }
        }
    }
    let mut triangles = Vec::new();
    for i in 0..n {
        let upper: Vec<usize> = adjacency[i].iter().copied().filter(|&j| j > i).collect();
        for (a, &j) in upper.iter().enumerate() {
            for &k in &upper[a + 1..] {
                if adjacency[j].binary_search(&k).is_ok() && keep_triangle(i, j, k) {
                    triangles.push([i, j, k]);
                }
            }
        }
    }
    Ok(SimplicialComplex2 {
        points: points.to_vec(),
        alive: vec![true; n],
        adjacency,
        edges,
        triangles,
    })
}

/// Vietoris-Rips 2-skeleton: edges at distance `<= 2r`, every 3-clique filled.
pub fn build_rips(points: &[TaggedPoint], r: f64) -> Result<SimplicialComplex2> {
    build_with(points, r, |_, _, _| true)
}

/// Čech 2-skeleton: Rips edges, triangles whose enclosing circle has radius `<= r`.
pub fn build_cech(points: &[TaggedPoint], r: f64) -> Result<SimplicialComplex2> {
    build_with(points, r, |i, j, k| {
        within(
            min_enclosing_radius(points[i].position(), points[j].position(), points[k].position()),
            r,
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point2;

    fn pts(coords: &[(f64, f64)]) -> Vec<TaggedPoint> {
        coords.iter().map(|&c| TaggedPoint::existing(c.into())).collect()
    }

    fn dummy(n: usize) -> Vec<TaggedPoint> {
        (0..n).map(|i| TaggedPoint::existing(Point2::new(i as f64, 0.0))).collect()
    }

    fn equilateral(side: f64) -> Vec<TaggedPoint> {
        pts(&[(0.0, 0.0), (side, 0.0), (side / 2.0, side * 3f64.sqrt() / 2.0)])
    }

    fn hollow_square() -> SimplicialComplex2 {
        SimplicialComplex2::from_simplices(dummy(4), &[[0, 1], [1, 2], [2, 3], [0, 3]], &[]).unwrap()
    }

    fn filled_triangle() -> SimplicialComplex2 {
        SimplicialComplex2::from_simplices(dummy(3), &[[0, 1], [1, 2], [0, 2]], &[[0, 1, 2]]).unwrap()
    }

    #[test]
    fn rips_edge_threshold() {
        let near = build_rips(&pts(&[(0.0, 0.0), (0.49, 0.0)]), 0.25).unwrap();
        assert_eq!(near.num_edges(), 1);
        let far = build_rips(&pts(&[(0.0, 0.0), (0.51, 0.0)]), 0.25).unwrap();
        assert_eq!(far.num_edges(), 0);
    }

    #[test]
    fn rips_square_is_hollow() {
        // sides 0.45 <= 0.5, diagonals 0.636 > 0.5
        let sq = pts(&[(0.0, 0.0), (0.45, 0.0), (0.45, 0.45), (0.0, 0.45)]);
        let x = build_rips(&sq, 0.25).unwrap();
        assert_eq!((x.num_edges(), x.num_triangles()), (4, 0));
        assert_eq!(x.betti(), BettiPair::new(1, 1));
    }

    #[test]
    fn cech_is_stricter_than_rips() {
        let wide = equilateral(0.45);
        let cech = build_cech(&wide, 0.25).unwrap();
        let rips = build_rips(&wide, 0.25).unwrap();
        assert_eq!((cech.num_edges(), cech.num_triangles()), (3, 0));
        assert_eq!(rips.num_triangles(), 1);

        let tight = build_cech(&equilateral(0.40), 0.25).unwrap();
        assert_eq!(tight.num_triangles(), 1);

        let single = build_cech(&pts(&[(0.3, 0.3)]), 0.25).unwrap();
        assert_eq!((single.num_vertices(), single.num_edges(), single.num_triangles()), (1, 0, 0));
    }

    #[test]
    fn build_rejects_bad_radius() {
        assert!(build_rips(&pts(&[(0.0, 0.0)]), 0.0).is_err());
        assert!(build_cech(&pts(&[(0.0, 0.0)]), -1.0).is_err());
    }

    #[test]
    fn betti_examples() {
        let empty = SimplicialComplex2::from_simplices(vec![], &[], &[]).unwrap();
        assert_eq!(empty.betti(), BettiPair::new(0, 0));
        let one = SimplicialComplex2::from_simplices(dummy(1), &[], &[]).unwrap();
        assert_eq!(one.betti(), BettiPair::new(1, 0));
        let two = SimplicialComplex2::from_simplices(dummy(2), &[], &[]).unwrap();
        assert_eq!(two.betti(), BettiPair::new(2, 0));
        let sq = hollow_square();
        assert_eq!(sq.ranks().rank_d1, 3);
        assert_eq!(sq.betti(), BettiPair::new(1, 1));
        assert_eq!(filled_triangle().betti(), BettiPair::new(1, 0));
    }

    #[test]
    fn removal_examples() {
        let t = filled_triangle();
        let without_apex = t.remove_vertex(2).unwrap();
        assert_eq!((without_apex.num_vertices(), without_apex.num_edges()), (2, 1));
        assert_eq!(without_apex.num_triangles(), 0);
        // input untouched
        assert_eq!(t.num_triangles(), 1);

        let mixed = SimplicialComplex2::from_simplices(dummy(4), &[[0, 1], [1, 2], [0, 2]], &[[0, 1, 2]]).unwrap();
        assert_eq!(mixed.betti().beta0, 2);
        assert_eq!(mixed.remove_vertex(3).unwrap().betti().beta0, 1);

        let path = hollow_square().remove_vertex(0).unwrap();
        assert_eq!(path.betti(), BettiPair::new(1, 0));
        assert_eq!(path.num_edges(), 2);
        path.check_invariants().unwrap();

        assert_eq!(t.remove_vertex(7), Err(Error::UnknownVertex(7)));
        assert_eq!(without_apex.remove_vertex(2), Err(Error::UnknownVertex(2)));
    }

    #[test]
    fn from_simplices_enforces_closure() {
        let err = SimplicialComplex2::from_simplices(dummy(3), &[[0, 1], [1, 2]], &[[0, 1, 2]]);
        assert!(err.is_err());
        assert!(SimplicialComplex2::from_simplices(dummy(2), &[[0, 0]], &[]).is_err());
        assert!(SimplicialComplex2::from_simplices(dummy(2), &[[0, 5]], &[]).is_err());
    }

    #[test]
    fn triangles_of_vertex() {
        let tet: Vec<[usize; 2]> = vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];
        let x = SimplicialComplex2::from_simplices(dummy(4), &tet, &[[0, 1, 2], [0, 1, 3]]).unwrap();
        let mut ts: Vec<_> = x.triangles_of(0).collect();
        ts.sort();
        assert_eq!(ts, vec![[0, 1, 2], [0, 1, 3]]);
        assert_eq!(x.triangles_of(2).count(), 1);
    }

    #[test]
    fn kind_parses() {
        assert_eq!("rips".parse::<ComplexKind>().unwrap(), ComplexKind::Rips);
        assert_eq!("Cech".parse::<ComplexKind>().unwrap(), ComplexKind::Cech);
        assert!("alpha".parse::<ComplexKind>().is_err());
    }
}
