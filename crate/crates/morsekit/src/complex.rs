//! Finite abstract simplicial complexes with facet/cofacet incidence.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{BufRead, Write};

use thiserror::Error;

pub type Vertex = u32;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("simplex has a repeated vertex: {0:?}")]
    RepeatedVertex(Vec<Vertex>),
    #[error("empty simplex")]
    EmptySimplex,
    #[error("missing facet {facet} of {simplex}")]
    MissingFacet { simplex: Simplex, facet: Simplex },
    #[error("level {level} is not sorted or contains duplicates")]
    UnsortedLevel { level: usize },
    #[error("basepoint {0} is not a vertex of the complex")]
    BadBasepoint(Vertex),
    #[error("complex is not connected")]
    Disconnected,
    #[error("vertex ids overflow u32 during relabeling")]
    VertexOverflow,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A simplex held as a strictly increasing sequence of vertex ids.
///
/// `Ord` is lexicographic on the vertex sequence, which is the order used
/// everywhere a deterministic simplex order is needed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::RepeatedVertex(vertices));
        }
        Ok(Simplex(vertices))
    }

    /// Wraps a vertex list already known to be strictly increasing.
    pub fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(!vertices.is_empty());
        Simplex(vertices)
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(vec![v])
    }

    pub fn edge(a: Vertex, b: Vertex) -> Self {
        assert_ne!(a, b);
        Simplex(if a < b { vec![a, b] } else { vec![b, a] })
    }

    pub fn triangle(a: Vertex, b: Vertex, c: Vertex) -> Self {
        Simplex::new(vec![a, b, c]).expect("distinct vertices")
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.0.len()).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            Simplex(v)
        })
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "}}")
    }
}

/// Accumulates simplices together with all of their faces.
#[derive(Default)]
pub struct ComplexBuilder {
    closed: BTreeSet<Simplex>,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `s` and every face of it. Idempotent.
    pub fn insert_closed(&mut self, vertices: &[Vertex]) -> Result<(), ComplexError> {
        let s = Simplex::new(vertices.to_vec())?;
        self.insert_simplex_closed(s);
        Ok(())
    }

    pub fn insert_simplex_closed(&mut self, s: Simplex) {
        if self.closed.contains(&s) {
            return;
        }
        // Enumerate the face lattice by bitmask; simplices stay small here.
        let vs = s.vertices().to_vec();
        let k = vs.len();
        assert!(k <= 28, "simplex dimension out of supported range");
        for mask in 1u32..(1 << k) {
            let face: Vec<Vertex> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| vs[i]).collect();
            self.closed.insert(Simplex(face));
        }
    }

    pub fn build(self) -> SimplicialComplex {
        let mut levels: Vec<Vec<Simplex>> = Vec::new();
        for s in self.closed {
            let d = s.dim();
            if levels.len() <= d {
                levels.resize_with(d + 1, Vec::new);
            }
            levels[d].push(s);
        }
        // BTreeSet iteration is sorted, so each level is sorted and closure
        // holds by construction.
        SimplicialComplex::from_levels(levels).expect("builder output is a valid complex")
    }
}

/// An immutable simplicial complex.
///
/// Simplices are stored dimension-major and lexicographically sorted within
/// each dimension; the simplex id is the position in that global order.
pub struct SimplicialComplex {
    simplices: Vec<Simplex>,
    dim_start: Vec<usize>,
    facets: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex {
            simplices: Vec::new(),
            dim_start: vec![0],
            facets: Vec::new(),
            cofacets: Vec::new(),
        }
    }

    /// Builds from per-dimension simplex lists.
    ///
    /// Each level must be strictly sorted, and every facet of every simplex
    /// must be present in the level below.
    pub fn from_levels(levels: Vec<Vec<Simplex>>) -> Result<Self, ComplexError> {
        let mut dim_start = Vec::with_capacity(levels.len() + 1);
        let mut simplices = Vec::new();
        for (d, level) in levels.iter().enumerate() {
            if level.windows(2).any(|w| w[0] >= w[1]) {
                return Err(ComplexError::UnsortedLevel { level: d });
            }
            dim_start.push(simplices.len());
            simplices.extend(level.iter().cloned());
        }
        dim_start.push(simplices.len());
        while dim_start.len() > 2 && dim_start[dim_start.len() - 1] == dim_start[dim_start.len() - 2]
        {
            dim_start.pop();
        }

        let mut k = SimplicialComplex {
            simplices,
            dim_start,
            facets: Vec::new(),
            cofacets: Vec::new(),
        };
        k.link_incidence()?;
        Ok(k)
    }

    /// Builds the closure of a collection of simplices.
    pub fn from_maximal<I>(simplices: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator,
        I::Item: AsRef<[Vertex]>,
    {
        let mut b = ComplexBuilder::new();
        for s in simplices {
            b.insert_closed(s.as_ref())?;
        }
        Ok(b.build())
    }

    fn link_incidence(&mut self) -> Result<(), ComplexError> {
        let n = self.simplices.len();
        self.facets = vec![Vec::new(); n];
        self.cofacets = vec![Vec::new(); n];
        for id in self.dim_range(1).start..n {
            let s = self.simplices[id].clone();
            for f in s.facets() {
                let fid = self
                    .id_of(&f)
                    .ok_or_else(|| ComplexError::MissingFacet { simplex: s.clone(), facet: f })?;
                self.facets[id].push(fid);
                self.cofacets[fid].push(id);
            }
        }
        // Facet lists come out sorted descending-by-removed-position; keep
        // them ascending by id for deterministic iteration.
        for l in self.facets.iter_mut().chain(self.cofacets.iter_mut()) {
            l.sort_unstable();
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Dimension of the complex; `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        if self.is_empty() {
            None
        } else {
            Some(self.dim_start.len() - 2)
        }
    }

    pub fn count(&self, dim: usize) -> usize {
        let r = self.dim_range(dim);
        r.end - r.start
    }

    /// Id range of the simplices of dimension `dim` (empty when out of range).
    pub fn dim_range(&self, dim: usize) -> std::ops::Range<usize> {
        if dim + 1 >= self.dim_start.len() {
            return self.simplices.len()..self.simplices.len();
        }
        self.dim_start[dim]..self.dim_start[dim + 1]
    }

    pub fn simplex(&self, id: usize) -> &Simplex {
        &self.simplices[id]
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn id_of(&self, s: &Simplex) -> Option<usize> {
        let r = self.dim_range(s.dim());
        self.simplices[r.clone()].binary_search(s).ok().map(|i| r.start + i)
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.id_of(s).is_some()
    }

    pub fn facets(&self, id: usize) -> &[usize] {
        &self.facets[id]
    }

    pub fn cofacets(&self, id: usize) -> &[usize] {
        &self.cofacets[id]
    }

    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for d in 0..self.dim_start.len() - 1 {
            let c = self.count(d) as i64;
            if d % 2 == 0 {
                chi += c;
            } else {
                chi -= c;
            }
        }
        chi
    }

    /// Maximal simplices (no cofacets), in lexicographic order.
    pub fn maximal_simplices(&self) -> Vec<&Simplex> {
        let mut out: Vec<&Simplex> =
            (0..self.len()).filter(|&id| self.cofacets[id].is_empty()).map(|id| &self.simplices[id]).collect();
        out.sort();
        out
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.simplices[self.dim_range(0)].iter().map(|s| s.vertices()[0])
    }

    /// Connectivity of the whole complex, isolated vertices included.
    /// The empty complex counts as connected.
    pub fn is_connected(&self) -> bool {
        let nv = self.count(0);
        if nv <= 1 {
            return true;
        }
        let vr = self.dim_range(0);
        let mut uf = UnionFind::new(nv);
        for eid in self.dim_range(1) {
            let f = &self.facets[eid];
            uf.union(f[0] - vr.start, f[1] - vr.start);
        }
        let root = uf.find(0);
        (1..nv).all(|i| uf.find(i) == root)
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex[")?;
        for d in 0..self.dim_start.len() - 1 {
            if d > 0 {
                write!(f, ", ")?;
            }
            write!(f, "c_{}={}", d, self.count(d))?;
        }
        write!(f, "]")
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices
    }
}
impl Eq for SimplicialComplex {}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    /// Merges the classes of `a` and `b`; the smaller root index wins, so the
    /// class representative is always the least member.
    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
    }
}

/// A complex with a distinguished basepoint vertex.
pub struct PointedComplex {
    pub complex: SimplicialComplex,
    pub basepoint: Vertex,
}

impl PointedComplex {
    pub fn new(complex: SimplicialComplex, basepoint: Vertex) -> Result<Self, ComplexError> {
        if !complex.contains(&Simplex::vertex(basepoint)) {
            return Err(ComplexError::BadBasepoint(basepoint));
        }
        Ok(PointedComplex { complex, basepoint })
    }
}

/// Wedge of `copies` relabeled copies of `p`, identified at the basepoint.
///
/// Copy `i` relabels each non-basepoint vertex `v` to `i*stride + v` where
/// `stride = max_vertex + 1`; the basepoint keeps its id in every copy, so
/// copy 0 is `p` itself. Requires a connected input.
pub fn wedge_amplify(p: &PointedComplex, copies: usize) -> Result<PointedComplex, ComplexError> {
    assert!(copies >= 1);
    if !p.complex.is_connected() {
        return Err(ComplexError::Disconnected);
    }
    let stride = wedge_stride(&p.complex);
    let mut b = ComplexBuilder::new();
    for i in 0..copies {
        let offset = (i as u64) * (stride as u64);
        for s in p.complex.maximal_simplices() {
            let relabeled: Vec<Vertex> = s
                .vertices()
                .iter()
                .map(|&v| {
                    if v == p.basepoint {
                        Ok(v)
                    } else {
                        u32::try_from(offset + v as u64).map_err(|_| ComplexError::VertexOverflow)
                    }
                })
                .collect::<Result<_, _>>()?;
            b.insert_closed(&relabeled)?;
        }
    }
    PointedComplex::new(b.build(), p.basepoint)
}

pub fn wedge_stride(k: &SimplicialComplex) -> Vertex {
    k.vertices().max().map_or(1, |m| m + 1)
}

/// Reads the `.cplx` format: one simplex per line as space-separated vertex
/// ids, `#` starts a comment. The complex is the closure of the lines.
pub fn read_cplx<R: BufRead>(r: R) -> Result<SimplicialComplex, ComplexError> {
    let mut b = ComplexBuilder::new();
    for (ln, line) in r.lines().enumerate() {
        let line = line?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut vs = Vec::new();
        for tok in content.split_whitespace() {
            let v: Vertex = tok
                .parse()
                .map_err(|_| ComplexError::Parse { line: ln + 1, msg: format!("bad vertex id {tok:?}") })?;
            vs.push(v);
        }
        b.insert_closed(&vs)
            .map_err(|e| ComplexError::Parse { line: ln + 1, msg: e.to_string() })?;
    }
    Ok(b.build())
}

/// Writes the `.cplx` format: maximal simplices only, lexicographic order.
pub fn write_cplx<W: Write>(k: &SimplicialComplex, mut w: W) -> Result<(), ComplexError> {
    for s in k.maximal_simplices() {
        let line: Vec<String> = s.vertices().iter().map(|v| v.to_string()).collect();
        writeln!(w, "{}", line.join(" "))?;
    }
    Ok(())
}

pub fn read_cplx_path(path: &std::path::Path) -> Result<SimplicialComplex, ComplexError> {
    let f = std::fs::File::open(path)?;
    read_cplx(std::io::BufReader::new(f))
}

pub fn write_cplx_path(k: &SimplicialComplex, path: &std::path::Path) -> Result<(), ComplexError> {
    let f = std::fs::File::create(path)?;
    write_cplx(k, std::io::BufWriter::new(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> SimplicialComplex {
        // Two triangles sharing the edge {1 2}.
        SimplicialComplex::from_maximal([[0u32, 1, 2], [1, 2, 3]]).unwrap()
    }

    #[test]
    fn closure_counts() {
        let k = two_triangles();
        // 4 vertices, 5 edges, 2 triangles.
        assert_eq!(k.count(0), 4);
        assert_eq!(k.count(1), 5);
        assert_eq!(k.count(2), 2);
        assert_eq!(k.len(), 11);
        assert_eq!(k.euler_characteristic(), 1);
        assert_eq!(k.dim(), Some(2));
    }

    #[test]
    fn insert_is_idempotent() {
        let mut b = ComplexBuilder::new();
        b.insert_closed(&[0, 1, 2]).unwrap();
        b.insert_closed(&[2, 1, 0]).unwrap();
        b.insert_closed(&[0, 1]).unwrap();
        let k = b.build();
        assert_eq!(k.len(), 7);
    }

    #[test]
    fn rejects_repeated_vertex() {
        let mut b = ComplexBuilder::new();
        assert!(b.insert_closed(&[0, 1, 1]).is_err());
    }

    #[test]
    fn incidence_agrees_with_subset_scan() {
        // Oracle: facet/cofacet relations recomputed by scanning all pairs.
        let k = two_triangles();
        for a in 0..k.len() {
            for b in 0..k.len() {
                let (sa, sb) = (k.simplex(a), k.simplex(b));
                let is_facet = sa.dim() + 1 == sb.dim() && sa.is_face_of(sb);
                assert_eq!(k.facets(b).contains(&a), is_facet);
                assert_eq!(k.cofacets(a).contains(&b), is_facet);
            }
        }
    }

    #[test]
    fn ids_are_dimension_major_lex() {
        let k = two_triangles();
        for d in 0..=2 {
            let r = k.dim_range(d);
            for w in k.simplices()[r].windows(2) {
                assert!(w[0] < w[1]);
            }
        }
        let e = k.id_of(&Simplex::edge(1, 2)).unwrap();
        assert_eq!(k.simplex(e).vertices(), &[1, 2]);
    }

    #[test]
    fn connectivity() {
        assert!(two_triangles().is_connected());
        let k = SimplicialComplex::from_maximal([[0u32, 1], [2, 3]]).unwrap();
        assert!(!k.is_connected());
        assert!(SimplicialComplex::empty().is_connected());
    }

    #[test]
    fn cplx_roundtrip() {
        let k = two_triangles();
        let mut buf = Vec::new();
        write_cplx(&k, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "0 1 2\n1 2 3\n");
        let k2 = read_cplx(std::io::Cursor::new(buf)).unwrap();
        assert!(k == k2);
    }

    #[test]
    fn cplx_reader_takes_closure_and_skips_comments() {
        let text = "# comment\n0 1 2  # trailing\n\n3 4\n";
        let k = read_cplx(std::io::Cursor::new(text)).unwrap();
        assert_eq!(k.count(0), 5);
        assert_eq!(k.count(1), 4);
        assert_eq!(k.count(2), 1);
        assert!(read_cplx(std::io::Cursor::new("0 x 2\n")).is_err());
    }

    #[test]
    fn wedge_relabeling_and_euler() {
        let k = two_triangles();
        let p = PointedComplex::new(k, 1).unwrap();
        let chi = p.complex.euler_characteristic();
        let w = wedge_amplify(&p, 3).unwrap();
        assert_eq!(w.complex.euler_characteristic(), 3 * chi - 2);
        // Copy 0 keeps its labels; copy 2 is offset by 2*stride except 1.
        assert!(w.complex.contains(&Simplex::triangle(0, 1, 2)));
        let stride = wedge_stride(&p.complex);
        assert_eq!(stride, 4);
        assert!(w.complex.contains(&Simplex::triangle(1, 8 + 2, 8 + 3)));
        // Only the basepoint is shared between copies.
        assert_eq!(w.complex.count(0), 3 * 3 + 1);
    }

    #[test]
    fn wedge_rejects_disconnected() {
        let k = SimplicialComplex::from_maximal([[0u32, 1], [2, 3]]).unwrap();
        let p = PointedComplex::new(k, 0).unwrap();
        assert!(wedge_amplify(&p, 2).is_err());
    }
}
