//! The `(d+1)`-uniform hypergraph of `d`-faces, its 2-core, and weakly
//! connected components.

use std::collections::{BTreeMap, BTreeSet};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::alpha::{AlphaEntry, AlphaVector, Exponent};
use crate::complex::{Face, SimplicialComplex};
use crate::scalar::Scalar;

/// Hypergraph whose hyperedges are the `d`-faces of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DFaceHypergraph {
    d: usize,
    vertices: Vec<usize>,
    edges: Vec<Face>,
}

impl DFaceHypergraph {
    /// Hyperedges must all have `d + 1` vertices.
    pub fn new(d: usize, edges: Vec<Face>) -> Self {
        assert!(
            edges.iter().all(|e| e.len() == d + 1),
            "hyperedges must have d+1 vertices"
        );
        let vertices: BTreeSet<usize> = edges.iter().flat_map(|e| e.vertices().iter().copied()).collect();
        Self {
            d,
            vertices: vertices.into_iter().collect(),
            edges,
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Face] {
        &self.edges
    }
}

pub fn build_hypergraph(x: &SimplicialComplex, d: usize) -> DFaceHypergraph {
    assert!(d >= 1, "hypergraph dimension must be at least 1");
    DFaceHypergraph::new(d, x.faces(d).to_vec())
}

/// Removal sequence of a free-vertex peel plus the residual 2-core.
///
/// Reading `order` backwards and keeping the hyperedges gives an ordering
/// `f_1, ..., f_k` of the removed faces in which every `f_{l+1}` has a
/// vertex outside `f_1 ∪ ... ∪ f_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelResult {
    pub order: Vec<(usize, Option<Face>)>,
    pub core: Vec<Face>,
}

impl PeelResult {
    pub fn core_is_empty(&self) -> bool {
        self.core.is_empty()
    }

    /// Removed hyperedges in attachment order (last removed first).
    pub fn attachment_order(&self) -> Vec<&Face> {
        self.order.iter().rev().filter_map(|(_, e)| e.as_ref()).collect()
    }

    /// Vertices of the residual core.
    pub fn core_vertices(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.core.iter().flat_map(|e| e.vertices().iter().copied()).collect();
        s.into_iter().collect()
    }
}

/// `{"order": [[v, face|null], ...], "core": [face, ...]}`
impl Serialize for PeelResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PeelResult", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("core", &self.core)?;
        st.end()
    }
}

/// Peels vertices of degree ≤ 1, smallest id first, each together with its
/// remaining hyperedge if it has one. What survives is the 2-core.
pub fn two_core(h: &DFaceHypergraph) -> PeelResult {
    let mut incidence: BTreeMap<usize, Vec<usize>> = h.vertices.iter().map(|&v| (v, Vec::new())).collect();
    for (ei, e) in h.edges.iter().enumerate() {
        for v in e.vertices() {
            incidence.get_mut(v).expect("vertex set covers edges").push(ei);
        }
    }
    let mut degree: BTreeMap<usize, usize> = incidence.iter().map(|(&v, es)| (v, es.len())).collect();
    let mut edge_alive = vec![true; h.edges.len()];
    let mut removable: BTreeSet<usize> = degree.iter().filter(|&(_, &k)| k <= 1).map(|(&v, _)| v).collect();
    let mut order = Vec::new();

    while let Some(v) = removable.pop_first() {
        let mut removed_edge = None;
        if degree[&v] == 1 {
            let ei = *incidence[&v]
                .iter()
                .find(|&&ei| edge_alive[ei])
                .expect("degree-one vertex has a live edge");
            edge_alive[ei] = false;
            for u in h.edges[ei].vertices() {
                if *u == v {
                    continue;
                }
                if let Some(k) = degree.get_mut(u) {
                    *k -= 1;
                    if *k <= 1 {
                        removable.insert(*u);
                    }
                }
            }
            removed_edge = Some(h.edges[ei].clone());
        }
        degree.remove(&v);
        order.push((v, removed_edge));
    }

    let core = h
        .edges
        .iter()
        .zip(&edge_alive)
        .filter(|(_, &alive)| alive)
        .map(|(e, _)| e.clone())
        .collect();
    PeelResult { order, core }
}

/// Convenience: the 2-core peel of the pure `d`-part of `x`.
pub fn peel_complex(x: &SimplicialComplex, d: usize) -> PeelResult {
    two_core(&build_hypergraph(x, d))
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Components of the graph on `d`-faces where two faces are adjacent iff
/// they share a vertex. Each component is sorted; components are ordered
/// by their first face.
pub fn weakly_connected_components(x: &SimplicialComplex, d: usize) -> Vec<Vec<Face>> {
    assert!(d >= 1, "component dimension must be at least 1");
    let faces = x.faces(d);
    let mut parent: Vec<usize> = (0..faces.len()).collect();
    let mut first_face_of: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        for &v in f.vertices() {
            match first_face_of.get(&v) {
                None => {
                    first_face_of.insert(v, i);
                }
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Face>> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(f.clone());
    }
    groups.into_values().collect()
}

pub fn component_vertex_count(component: &[Face]) -> usize {
    component
        .iter()
        .flat_map(|f| f.vertices().iter().copied())
        .collect::<BTreeSet<_>>()
        .len()
}

/// Largest vertex count over the weakly connected components; 0 if none.
pub fn max_component_vertices(x: &SimplicialComplex, d: usize) -> usize {
    weakly_connected_components(x, d)
        .iter()
        .map(|c| component_vertex_count(c))
        .max()
        .unwrap_or(0)
}

/// `f_0 - Σ_{i=1}^{d} α_i f_i`. An infinite `α_i` only matters when
/// `f_i > 0`, in which case the result is `-∞`.
pub fn f_dot<T: Scalar>(x: &SimplicialComplex, alpha: &AlphaVector<T>, d: usize) -> Exponent<T> {
    let mut acc = T::from_usize_exact(x.faces(0).len());
    for i in 1..=d {
        let fi = x.faces(i).len();
        if fi == 0 {
            continue;
        }
        match alpha.get(i) {
            AlphaEntry::Infinite => return Exponent::NegInfinite,
            AlphaEntry::Finite(a) => acc = acc - a * T::from_usize_exact(fi),
        }
    }
    Exponent::Finite(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face(v: &[usize]) -> Face {
        Face::new(v.to_vec()).unwrap()
    }

    fn closure(n: usize, dim_cap: usize, gens: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::downward_closure(n, dim_cap, gens.iter().map(|g| face(g))).unwrap()
    }

    #[test]
    fn hypergraph_examples() {
        let tri = closure(3, 2, &[&[0, 1], &[1, 2], &[0, 2]]);
        let h = build_hypergraph(&tri, 1);
        assert_eq!(h.vertices(), &[0, 1, 2]);
        assert_eq!(h.edges().len(), 3);

        let simplex = closure(3, 2, &[&[0, 1, 2]]);
        assert_eq!(build_hypergraph(&simplex, 2).edges(), &[face(&[0, 1, 2])]);

        let verts = SimplicialComplex::vertices_only(4, 2);
        assert!(build_hypergraph(&verts, 2).edges().is_empty());
    }

    #[test]
    fn path_peels_completely() {
        let path = closure(3, 1, &[&[0, 1], &[1, 2]]);
        let p = peel_complex(&path, 1);
        assert!(p.core_is_empty());
        assert_eq!(
            p.order,
            vec![(0, Some(face(&[0, 1]))), (1, Some(face(&[1, 2]))), (2, None)]
        );
        assert_eq!(p.attachment_order(), vec![&face(&[1, 2]), &face(&[0, 1])]);
    }

    #[test]
    fn triangle_boundary_is_a_core() {
        let tri = closure(3, 2, &[&[0, 1], &[1, 2], &[0, 2]]);
        let p = peel_complex(&tri, 1);
        assert!(p.order.is_empty());
        assert_eq!(p.core.len(), 3);
    }

    #[test]
    fn bowtie_of_triangles_peels() {
        let x = closure(5, 2, &[&[0, 1, 2], &[2, 3, 4]]);
        let p = peel_complex(&x, 2);
        assert!(p.core_is_empty());
        assert_eq!(p.order.len(), 5);
    }

    #[test]
    fn empty_hypergraph_is_vacuously_collapsible() {
        let p = peel_complex(&SimplicialComplex::vertices_only(3, 2), 2);
        assert!(p.order.is_empty() && p.core.is_empty());
    }

    #[test]
    fn peel_json_shape() {
        let path = closure(2, 1, &[&[0, 1]]);
        let json = serde_json::to_string(&peel_complex(&path, 1)).unwrap();
        assert_eq!(json, r#"{"order":[[0,[0,1]],[1,null]],"core":[]}"#);
    }

    #[test]
    fn components() {
        let two = closure(6, 2, &[&[0, 1, 2], &[3, 4, 5]]);
        assert_eq!(weakly_connected_components(&two, 2).len(), 2);
        let shared = closure(5, 2, &[&[0, 1, 2], &[2, 3, 4]]);
        let c = weakly_connected_components(&shared, 2);
        assert_eq!(c.len(), 1);
        assert_eq!(component_vertex_count(&c[0]), 5);
        assert!(weakly_connected_components(&SimplicialComplex::vertices_only(3, 2), 2).is_empty());
    }

    #[test]
    fn f_dot_examples() {
        let tri = closure(3, 2, &[&[0, 1], &[1, 2], &[0, 2]]);
        let v = f_dot(&tri, &"1.2".parse::<AlphaVector>().unwrap(), 1).to_f64();
        assert!((v + 0.6).abs() < 1e-12);

        // octahedron boundary: antipodal pairs (0,1), (2,3), (4,5)
        let mut gens = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    gens.push(face(&[a, b, c]));
                }
            }
        }
        let oct = SimplicialComplex::downward_closure(6, 2, gens).unwrap();
        assert_eq!(oct.f_vector().0, vec![6, 12, 8]);
        let v = f_dot(&oct, &"0,0.9".parse::<AlphaVector>().unwrap(), 2).to_f64();
        assert!((v + 1.2).abs() < 1e-12);

        let edge = closure(2, 1, &[&[0, 1]]);
        assert_eq!(
            f_dot(&edge, &"inf".parse::<AlphaVector>().unwrap(), 1),
            Exponent::NegInfinite
        );
    }
}
