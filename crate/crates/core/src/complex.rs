//! Simplicial complexes on `[n]` and the multiparameter random model.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alpha::AlphaVector;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::seed::{hash_words, unit_interval};

/// A simplex given by its strictly increasing vertex ids.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Face(Vec<usize>);

impl Face {
    /// Sorts the vertices; rejects empty input and repeated vertices.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidComplex("empty face".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidComplex(format!("repeated vertex in {vertices:?}")));
        }
        Ok(Face(vertices))
    }

    /// Caller guarantees the vertices are strictly increasing and nonempty.
    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(!vertices.is_empty() && vertices.windows(2).all(|w| w[0] < w[1]));
        Face(vertices)
    }

    pub fn vertex(v: usize) -> Self {
        Face(vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// Sorted union of the vertex sets.
    pub fn union(&self, other: &Face) -> Vec<usize> {
        let mut out: Vec<usize> = self.0.iter().chain(&other.0).copied().collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Codimension-one faces, i.e. the face with one vertex dropped.
    pub fn facets(&self) -> impl Iterator<Item = Face> + '_ {
        let k = self.0.len();
        (0..if k > 1 { k } else { 0 }).map(move |skip| {
            Face(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }

    /// All nonempty subfaces, including the face itself.
    pub fn subfaces(&self) -> impl Iterator<Item = Face> + '_ {
        let k = self.0.len();
        (1u64..(1u64 << k)).map(move |mask| Face((0..k).filter(|&i| mask & (1 << i) != 0).map(|i| self.0[i]).collect()))
    }

    pub fn max_vertex(&self) -> usize {
        *self.0.last().expect("faces are nonempty")
    }
}

impl TryFrom<Vec<usize>> for Face {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Face::new(v)
    }
}

impl From<Face> for Vec<usize> {
    fn from(f: Face) -> Self {
        f.0
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Per-dimension face counts `(f_0, ..., f_k)`, trimmed after the top
/// nonempty dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    /// `f_i`, zero past the end.
    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// A downward-closed family of faces on the vertex set `[n]`.
///
/// Faces are kept in per-dimension lexicographically sorted lists, so
/// iteration order is deterministic and membership is a binary search.
/// Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    dim_cap: usize,
    faces: Vec<Vec<Face>>,
}

impl SimplicialComplex {
    /// No faces at all, not even vertices.
    pub fn empty(n: usize, dim_cap: usize) -> Self {
        Self {
            n,
            dim_cap,
            faces: vec![Vec::new(); dim_cap + 1],
        }
    }

    /// The `n` vertices and nothing else.
    pub fn vertices_only(n: usize, dim_cap: usize) -> Self {
        let mut x = Self::empty(n, dim_cap);
        x.faces[0] = (0..n).map(Face::vertex).collect();
        x
    }

    /// Validating constructor: every face in range, no duplicates, no face
    /// above `dim_cap`, and every facet of every face present.
    pub fn from_faces(n: usize, dim_cap: usize, faces: impl IntoIterator<Item = Face>) -> Result<Self> {
        let mut by_dim: Vec<Vec<Face>> = vec![Vec::new(); dim_cap + 1];
        for f in faces {
            if f.dimension() > dim_cap {
                return Err(Error::InvalidComplex(format!("face {f:?} exceeds dim_cap {dim_cap}")));
            }
            if f.max_vertex() >= n {
                return Err(Error::InvalidComplex(format!("face {f:?} has a vertex >= n = {n}")));
            }
            by_dim[f.dimension()].push(f);
        }
        for list in &mut by_dim {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!("duplicate face {:?}", w[0])));
            }
        }
        let x = Self {
            n,
            dim_cap,
            faces: by_dim,
        };
        x.check_closed()?;
        Ok(x)
    }

    /// Smallest complex containing `generators` (duplicates allowed).
    pub fn downward_closure(n: usize, dim_cap: usize, generators: impl IntoIterator<Item = Face>) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<Face>> = vec![BTreeSet::new(); dim_cap + 1];
        for g in generators {
            if g.dimension() > dim_cap {
                return Err(Error::InvalidComplex(format!("face {g:?} exceeds dim_cap {dim_cap}")));
            }
            if g.max_vertex() >= n {
                return Err(Error::InvalidComplex(format!("face {g:?} has a vertex >= n = {n}")));
            }
            if by_dim[g.dimension()].contains(&g) {
                continue;
            }
            for s in g.subfaces() {
                let dim = s.dimension();
                by_dim[dim].insert(s);
            }
        }
        Ok(Self {
            n,
            dim_cap,
            faces: by_dim.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    fn check_closed(&self) -> Result<()> {
        for dim in 1..=self.dim_cap {
            for f in &self.faces[dim] {
                if let Some(missing) = f.facets().find(|g| !self.contains_face(g)) {
                    return Err(Error::InvalidComplex(format!(
                        "face {f:?} is present but its facet {missing:?} is not"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    /// The sorted `dim`-faces; empty above `dim_cap`.
    pub fn faces(&self, dim: usize) -> &[Face] {
        self.faces.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().flatten()
    }

    pub fn contains_face(&self, f: &Face) -> bool {
        self.faces(f.dimension()).binary_search(f).is_ok()
    }

    /// Membership test for a sorted vertex slice.
    pub fn contains_vertices(&self, vertices: &[usize]) -> bool {
        if vertices.is_empty() {
            return false;
        }
        self.faces(vertices.len() - 1)
            .binary_search_by(|f| f.vertices().cmp(vertices))
            .is_ok()
    }

    /// Largest `i` with `f_i > 0`, or `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        self.faces
            .iter()
            .rposition(|l| !l.is_empty())
            .map_or(-1, |i| i as isize)
    }

    pub fn f_vector(&self) -> FVector {
        let top = self.dimension();
        FVector((0..=top).map(|i| self.faces[i as usize].len()).collect())
    }

    /// Faces of dimension at most `k`; `dim_cap` is kept.
    pub fn skeleton(&self, k: usize) -> Self {
        let mut x = Self::empty(self.n, self.dim_cap);
        for dim in 0..=k.min(self.dim_cap) {
            x.faces[dim] = self.faces[dim].clone();
        }
        x
    }

    /// Downward closure of the `d`-faces. Vertex labels are kept; vertices
    /// outside every `d`-face simply do not appear.
    pub fn pure_part(&self, d: usize) -> Self {
        Self::downward_closure(self.n, self.dim_cap, self.faces(d).iter().cloned())
            .expect("subfaces of a valid complex are valid")
    }

    /// Vertices that appear in some face.
    pub fn vertex_ids(&self) -> Vec<usize> {
        self.faces(0).iter().map(|f| f.vertices()[0]).collect()
    }

    pub fn is_subcomplex_of(&self, other: &Self) -> bool {
        self.all_faces().all(|f| other.contains_face(f))
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            n: self.n,
            dim_cap: self.dim_cap,
            faces: self
                .faces
                .iter()
                .map(|l| l.iter().map(|f| f.vertices().to_vec()).collect())
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("complex serializes")
    }

    /// Parses and re-validates downward closure.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: ComplexJson = serde_json::from_str(s)?;
        raw.try_into()
    }
}

/// Wire form: `{"n": .., "dim_cap": .., "faces": [[0-faces], [1-faces], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    pub n: usize,
    pub dim_cap: usize,
    pub faces: Vec<Vec<Vec<usize>>>,
}

impl TryFrom<ComplexJson> for SimplicialComplex {
    type Error = Error;

    fn try_from(raw: ComplexJson) -> Result<Self> {
        let mut faces = Vec::new();
        for (dim, list) in raw.faces.into_iter().enumerate() {
            for vs in list {
                let f = Face::new(vs)?;
                if f.dimension() != dim {
                    return Err(Error::InvalidComplex(format!(
                        "face {f:?} listed among the {dim}-faces"
                    )));
                }
                faces.push(f);
            }
        }
        SimplicialComplex::from_faces(raw.n, raw.dim_cap, faces)
    }
}

/// Uniform coin for a candidate face: a pure function of the seed and the
/// vertex tuple (the dimension is the tuple length).
pub fn face_coin(seed: u64, face: &[usize]) -> f64 {
    let h = hash_words(
        seed ^ (face.len() as u64).wrapping_mul(0xA24B_AED4_963E_E407),
        face.iter().map(|&v| v as u64),
    );
    unit_interval(h)
}

/// Samples `X(n; 1, n^{-α_1}, ..., n^{-α_D})` with `D = dim_cap`.
///
/// All `n` vertices are present. Dimension by dimension, each candidate
/// face whose full boundary is present is kept iff its coin is below
/// `n^{-α_i}`. Coins depend only on `(seed, face)`, so lowering any `α_i`
/// under a fixed seed can only add faces.
pub fn sample_complex<T: Scalar>(
    n: usize,
    alpha: &AlphaVector<T>,
    dim_cap: usize,
    seed: u64,
) -> Result<SimplicialComplex> {
    if n == 0 {
        return Err(Error::pre("n must be at least 1"));
    }
    if dim_cap == 0 {
        return Err(Error::pre("dim_cap must be at least 1"));
    }
    let mut x = SimplicialComplex::vertices_only(n, dim_cap);
    for dim in 1..=dim_cap {
        let p = alpha.probability(dim, n);
        if p <= 0.0 || x.faces[dim - 1].is_empty() {
            break;
        }
        let mut next = Vec::new();
        let mut candidate = Vec::with_capacity(dim + 1);
        for base in &x.faces[dim - 1] {
            for w in base.max_vertex() + 1..n {
                candidate.clear();
                candidate.extend_from_slice(base.vertices());
                candidate.push(w);
                if face_coin(seed, &candidate) >= p {
                    continue;
                }
                // `base` is the facet without `w`; check the others.
                let boundary_ok = (0..dim).all(|skip| {
                    let facet: Vec<usize> = candidate
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    x.contains_vertices(&facet)
                });
                if boundary_ok {
                    next.push(Face::from_sorted(candidate.clone()));
                }
            }
        }
        // Generated in lexicographic order already.
        x.faces[dim] = next;
    }
    Ok(x)
}
