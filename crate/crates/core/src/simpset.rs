//! Finitely presented simplicial sets and ordered simplicial complexes.
//!
//! Cells are stored in Eilenberg-Zilber normal form: every simplex is a
//! strictly decreasing degeneracy word applied to a nondegenerate cell, so a
//! truncated simplicial set is a finite object even though it has degenerate
//! simplices in every degree.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Reference to a nondegenerate cell: dimension and index into that
/// dimension's cell list.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CellId {
    pub dim: usize,
    pub idx: usize,
}

/// A simplex in Eilenberg-Zilber normal form: `s_{w_0} s_{w_1} ... s_{w_k}`
/// applied to a nondegenerate `base`, with `w_0 > w_1 > ... > w_k`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cell {
    pub word: Vec<usize>,
    pub base: CellId,
}

impl Cell {
    pub fn nondeg(base: CellId) -> Self {
        Cell { word: Vec::new(), base }
    }

    pub fn degree(&self) -> usize {
        self.base.dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// Normal form of `s_k` applied to this cell, via `s_i s_j = s_{j+1} s_i`
    /// for `i <= j`.
    pub fn degenerate(&self, k: usize) -> Cell {
        debug_assert!(k <= self.degree());
        let mut word = self.word.clone();
        insert_degeneracy(&mut word, k);
        Cell { word, base: self.base }
    }
}

fn insert_degeneracy(word: &mut Vec<usize>, k: usize) {
    // Find the position where k sinks, bumping indices it passes under.
    let mut pos = 0;
    while pos < word.len() && k <= word[pos] {
        word[pos] += 1;
        pos += 1;
    }
    word.insert(pos, k);
    debug_assert!(word.windows(2).all(|w| w[0] > w[1]));
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimpSetError {
    /// A declared face reference is out of range or has the wrong degree.
    BadFace { cell: String, index: usize, reason: String },
    /// A simplicial identity fails.
    IdentityFailure { detail: String },
    /// The vertex order is not total on a simplex.
    OrderNotTotal { simplex: Vec<String> },
    /// The order relation has a cycle.
    OrderCycle { witness: String },
    /// Requested data beyond the stored truncation.
    Truncated { needed: usize, stored: usize },
    /// Empty boundary (n = 0 sphere) or otherwise empty input.
    EmptyInput { reason: String },
    /// A referenced vertex is missing.
    UnknownVertex { name: String },
}

impl fmt::Display for SimpSetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpSetError::BadFace { cell, index, reason } => {
                write!(f, "bad face d_{index} of cell {cell}: {reason}")
            }
            SimpSetError::IdentityFailure { detail } => {
                write!(f, "simplicial identity failure: {detail}")
            }
            SimpSetError::OrderNotTotal { simplex } => {
                write!(f, "vertex order is not total on simplex {{{}}}", simplex.join(", "))
            }
            SimpSetError::OrderCycle { witness } => {
                write!(f, "vertex order contains a cycle through {witness}")
            }
            SimpSetError::Truncated { needed, stored } => {
                write!(f, "degree {needed} requested but data stored only up to {stored}")
            }
            SimpSetError::EmptyInput { reason } => write!(f, "empty input: {reason}"),
            SimpSetError::UnknownVertex { name } => write!(f, "unknown vertex {name}"),
        }
    }
}

impl core::error::Error for SimpSetError {}

/// Finitely generated simplicial set, truncated at `max_degree`.
///
/// Only nondegenerate cells are stored; their faces are arbitrary cells in
/// normal form. Faces and degeneracies of degenerate cells are computed by
/// the simplicial identities.
#[derive(Clone, Debug)]
pub struct FinSimplicialSet {
    max_degree: usize,
    /// Labels of nondegenerate cells per dimension.
    nondeg: Vec<Vec<String>>,
    /// `faces[n][i][k]` = d_k of the i-th nondegenerate n-cell, for n >= 1.
    faces: Vec<Vec<Vec<Cell>>>,
}

impl FinSimplicialSet {
    pub fn new(max_degree: usize) -> Self {
        FinSimplicialSet {
            max_degree,
            nondeg: vec![Vec::new(); max_degree + 1],
            faces: vec![Vec::new(); max_degree + 1],
        }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Add a nondegenerate cell with its faces (required for dim >= 1).
    pub fn add_cell(
        &mut self,
        dim: usize,
        label: impl Into<String>,
        faces: Vec<Cell>,
    ) -> Result<CellId, SimpSetError> {
        let label = label.into();
        if dim > self.max_degree {
            return Err(SimpSetError::Truncated { needed: dim, stored: self.max_degree });
        }
        if dim >= 1 {
            if faces.len() != dim + 1 {
                return Err(SimpSetError::BadFace {
                    cell: label,
                    index: faces.len(),
                    reason: format!("expected {} faces, got {}", dim + 1, faces.len()),
                });
            }
            for (k, fc) in faces.iter().enumerate() {
                if fc.degree() + 1 != dim {
                    return Err(SimpSetError::BadFace {
                        cell: label.clone(),
                        index: k,
                        reason: format!("face has degree {}, expected {}", fc.degree(), dim - 1),
                    });
                }
                if fc.base.dim >= dim || fc.base.idx >= self.nondeg[fc.base.dim].len() {
                    return Err(SimpSetError::BadFace {
                        cell: label.clone(),
                        index: k,
                        reason: "face base cell not previously added".to_string(),
                    });
                }
            }
        }
        let idx = self.nondeg[dim].len();
        self.nondeg[dim].push(label);
        if dim >= 1 {
            self.faces[dim].push(faces);
        }
        Ok(CellId { dim, idx })
    }

    pub fn nondeg_count(&self, dim: usize) -> usize {
        self.nondeg.get(dim).map_or(0, Vec::len)
    }

    pub fn nondeg_labels(&self, dim: usize) -> &[String] {
        &self.nondeg[dim]
    }

    pub fn label(&self, id: CellId) -> &str {
        &self.nondeg[id.dim][id.idx]
    }

    pub fn cell_label(&self, cell: &Cell) -> String {
        if cell.word.is_empty() {
            self.label(cell.base).to_string()
        } else {
            let ws: Vec<String> = cell.word.iter().map(|w| format!("s{w}")).collect();
            format!("{} {}", ws.join(" "), self.label(cell.base))
        }
    }

    pub fn find_nondeg(&self, dim: usize, label: &str) -> Option<CellId> {
        self.nondeg
            .get(dim)?
            .iter()
            .position(|l| l == label)
            .map(|idx| CellId { dim, idx })
    }

    /// Face `d_i` of an arbitrary cell, in normal form.
    pub fn face(&self, cell: &Cell, i: usize) -> Cell {
        let n = cell.degree();
        assert!(n >= 1 && i <= n, "face index out of range");
        match cell.word.split_first() {
            None => self.faces[cell.base.dim][cell.base.idx][i].clone(),
            Some((&j, tail)) => {
                let inner = Cell { word: tail.to_vec(), base: cell.base };
                if i < j {
                    self.face(&inner, i).degenerate(j - 1)
                } else if i == j || i == j + 1 {
                    inner
                } else {
                    self.face(&inner, i - 1).degenerate(j)
                }
            }
        }
    }

    /// All cells of the given degree (nondegenerate bases with all strictly
    /// decreasing degeneracy words).
    pub fn cells(&self, degree: usize) -> Vec<Cell> {
        let mut out = Vec::new();
        for base_dim in 0..=degree.min(self.max_degree) {
            let word_len = degree - base_dim;
            for idx in 0..self.nondeg[base_dim].len() {
                let base = CellId { dim: base_dim, idx };
                for word in decreasing_words(word_len, degree) {
                    out.push(Cell { word, base });
                }
            }
        }
        out
    }

    /// Exhaustive check of the simplicial identities on all cells up to the
    /// truncation degree.
    pub fn check_identities(&self) -> Result<(), SimpSetError> {
        for n in 0..=self.max_degree {
            for cell in self.cells(n) {
                // d_i d_j = d_{j-1} d_i for i < j
                if n >= 2 {
                    for j in 1..=n {
                        for i in 0..j {
                            let lhs = self.face(&self.face(&cell, j), i);
                            let rhs = self.face(&self.face(&cell, i), j - 1);
                            if lhs != rhs {
                                return Err(SimpSetError::IdentityFailure {
                                    detail: format!(
                                        "d_{i} d_{j} != d_{} d_{i} on {}",
                                        j - 1,
                                        self.cell_label(&cell)
                                    ),
                                });
                            }
                        }
                    }
                }
                // s_i s_j = s_{j+1} s_i for i <= j
                for j in 0..=n {
                    for i in 0..=j {
                        let lhs = cell.degenerate(j).degenerate(i);
                        let rhs = cell.degenerate(i).degenerate(j + 1);
                        if lhs != rhs {
                            return Err(SimpSetError::IdentityFailure {
                                detail: format!(
                                    "s_{i} s_{j} != s_{} s_{i} on {}",
                                    j + 1,
                                    self.cell_label(&cell)
                                ),
                            });
                        }
                    }
                }
                // d_i s_j relations
                for j in 0..=n {
                    let sj = cell.degenerate(j);
                    for i in 0..=n + 1 {
                        let lhs = self.face(&sj, i);
                        let rhs = if i < j {
                            self.face(&cell, i).degenerate(j - 1)
                        } else if i == j || i == j + 1 {
                            cell.clone()
                        } else {
                            self.face(&cell, i - 1).degenerate(j)
                        };
                        if lhs != rhs {
                            return Err(SimpSetError::IdentityFailure {
                                detail: format!(
                                    "d_{i} s_{j} relation fails on {}",
                                    self.cell_label(&cell)
                                ),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Strictly decreasing words of the given length with entries < bound.
fn decreasing_words(len: usize, bound: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut choose = vec![0usize; len];
    fn rec(out: &mut Vec<Vec<usize>>, choose: &mut Vec<usize>, pos: usize, lo: usize, hi: usize) {
        if pos == choose.len() {
            out.push(choose.clone());
            return;
        }
        let remaining = choose.len() - pos;
        for v in (lo + remaining - 1..hi).rev() {
            choose[pos] = v;
            rec(out, choose, pos + 1, lo, v);
        }
    }
    rec(&mut out, &mut choose, 0, 0, bound);
    out
}

/// Ordered simplicial complex: vertex set with a partial order that is total
/// on every simplex, and a family of simplices closed under faces.
#[derive(Clone, Debug)]
pub struct OrderedComplex {
    vertices: Vec<String>,
    /// less[u][v] = true when u < v; default order is lexicographic on labels.
    less: Vec<Vec<bool>>,
    /// Simplices as sorted vertex-index sets, closed under subsets.
    simplices: BTreeSet<Vec<usize>>,
}

impl OrderedComplex {
    /// Build from vertex labels, optional explicit order pairs (a, b) meaning
    /// a < b, and generating simplices (automatically closed under faces).
    pub fn new(
        vertices: Vec<String>,
        order_pairs: &[(String, String)],
        simplices: &[Vec<String>],
    ) -> Result<Self, SimpSetError> {
        let index: BTreeMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if index.len() != vertices.len() {
            return Err(SimpSetError::EmptyInput { reason: "duplicate vertex labels".into() });
        }
        let n = vertices.len();
        let mut less = vec![vec![false; n]; n];
        if order_pairs.is_empty() {
            for i in 0..n {
                for j in 0..n {
                    less[i][j] = vertices[i] < vertices[j];
                }
            }
        } else {
            for (a, b) in order_pairs {
                let ia = *index
                    .get(a.as_str())
                    .ok_or_else(|| SimpSetError::UnknownVertex { name: a.clone() })?;
                let ib = *index
                    .get(b.as_str())
                    .ok_or_else(|| SimpSetError::UnknownVertex { name: b.clone() })?;
                less[ia][ib] = true;
            }
            // Transitive closure.
            for k in 0..n {
                for i in 0..n {
                    if less[i][k] {
                        for j in 0..n {
                            if less[k][j] {
                                less[i][j] = true;
                            }
                        }
                    }
                }
            }
            for (i, v) in vertices.iter().enumerate() {
                if less[i][i] {
                    return Err(SimpSetError::OrderCycle { witness: v.clone() });
                }
            }
        }
        let mut closed: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in simplices {
            let mut idxs = Vec::with_capacity(s.len());
            for v in s {
                idxs.push(
                    *index
                        .get(v.as_str())
                        .ok_or_else(|| SimpSetError::UnknownVertex { name: v.clone() })?,
                );
            }
            idxs.sort_unstable();
            idxs.dedup();
            if idxs.is_empty() {
                continue;
            }
            for mask in 1u64..(1 << idxs.len()) {
                let sub: Vec<usize> = idxs
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                closed.insert(sub);
            }
        }
        for i in 0..n {
            closed.insert(vec![i]);
        }
        Ok(OrderedComplex { vertices, less, simplices: closed })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn dim(&self) -> usize {
        self.simplices.iter().map(|s| s.len() - 1).max().unwrap_or(0)
    }

    /// Simplices of the given dimension, each listed in increasing order.
    pub fn simplices_of_dim(&self, d: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .simplices
            .iter()
            .filter(|s| s.len() == d + 1)
            .map(|s| self.sort_by_order(s))
            .collect();
        out.sort();
        out
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        let mut s = simplex.to_vec();
        s.sort_unstable();
        s.dedup();
        self.simplices.contains(&s)
    }

    pub fn cmp_vertices(&self, a: usize, b: usize) -> Option<core::cmp::Ordering> {
        use core::cmp::Ordering;
        if a == b {
            Some(Ordering::Equal)
        } else if self.less[a][b] {
            Some(Ordering::Less)
        } else if self.less[b][a] {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    fn sort_by_order(&self, simplex: &[usize]) -> Vec<usize> {
        let mut s = simplex.to_vec();
        s.sort_by(|&a, &b| self.cmp_vertices(a, b).expect("order total on simplex"));
        s
    }

    /// Error unless the order is total on every simplex.
    pub fn check_order_total(&self) -> Result<(), SimpSetError> {
        for s in &self.simplices {
            for (k, &a) in s.iter().enumerate() {
                for &b in &s[k + 1..] {
                    if self.cmp_vertices(a, b).is_none() {
                        return Err(SimpSetError::OrderNotTotal {
                            simplex: s.iter().map(|&v| self.vertices[v].clone()).collect(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// The simplicial set of weakly monotone vertex tuples of an ordered complex,
/// truncated at `max_degree`. Nondegenerate cells are the strictly monotone
/// tuples, i.e. the simplices of the complex.
pub fn ordered_to_sset(
    k: &OrderedComplex,
    max_degree: usize,
) -> Result<FinSimplicialSet, SimpSetError> {
    k.check_order_total()?;
    if max_degree < k.dim() {
        return Err(SimpSetError::Truncated { needed: k.dim(), stored: max_degree });
    }
    let mut sset = FinSimplicialSet::new(max_degree);
    // id_of[d] maps the order-sorted tuple to its CellId.
    let mut id_of: Vec<BTreeMap<Vec<usize>, CellId>> = vec![BTreeMap::new(); k.dim() + 1];
    for d in 0..=k.dim() {
        for tuple in k.simplices_of_dim(d) {
            let label = tuple
                .iter()
                .map(|&v| k.vertices()[v].clone())
                .collect::<Vec<_>>()
                .join(",");
            let faces = if d == 0 {
                Vec::new()
            } else {
                (0..=d)
                    .map(|i| {
                        let mut f = tuple.clone();
                        f.remove(i);
                        Cell::nondeg(id_of[d - 1][&f])
                    })
                    .collect()
            };
            let id = sset.add_cell(d, label, faces)?;
            id_of[d].insert(tuple, id);
        }
    }
    Ok(sset)
}

/// The boundary of the standard n-simplex as an ordered complex on vertices
/// `0..=n` (all proper nonempty subsets).
pub fn boundary_sphere_complex(n: usize) -> Result<OrderedComplex, SimpSetError> {
    if n == 0 {
        return Err(SimpSetError::EmptyInput {
            reason: "the boundary of a point is empty".into(),
        });
    }
    let vertices: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let mut order = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            order.push((i.to_string(), j.to_string()));
        }
    }
    // Generating simplices: the n+1 facets.
    let mut simplices = Vec::new();
    for omit in 0..=n {
        let facet: Vec<String> = (0..=n).filter(|&v| v != omit).map(|v| v.to_string()).collect();
        simplices.push(facet);
    }
    OrderedComplex::new(vertices, &order, &simplices)
}

/// `ordered_to_sset` of the boundary-sphere complex.
pub fn boundary_sphere(n: usize, max_degree: usize) -> Result<FinSimplicialSet, SimpSetError> {
    ordered_to_sset(&boundary_sphere_complex(n)?, max_degree)
}

/// The full standard n-simplex as an ordered complex.
pub fn full_simplex_complex(n: usize) -> OrderedComplex {
    let vertices: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let mut order = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            order.push((i.to_string(), j.to_string()));
        }
    }
    let top: Vec<String> = (0..=n).map(|v| v.to_string()).collect();
    OrderedComplex::new(vertices, &order, &[top]).expect("standard simplex is valid")
}

/// A cell of the nerve of the pair groupoid of a set of points: an ordered
/// `(n+1)`-tuple. Faces delete entries, degeneracies repeat entries.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TupleCell<T>(pub Vec<T>);

impl<T: Clone + Eq> TupleCell<T> {
    /// The tuple as an n-simplex; `points.len()` must be n+1.
    pub fn new(points: Vec<T>, n: usize) -> Result<Self, SimpSetError> {
        if points.len() != n + 1 {
            return Err(SimpSetError::EmptyInput {
                reason: format!(
                    "expected {} points for an {}-cell, got {}",
                    n + 1,
                    n,
                    points.len()
                ),
            });
        }
        Ok(TupleCell(points))
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn face(&self, i: usize) -> TupleCell<T> {
        assert!(self.degree() >= 1 && i <= self.degree());
        let mut v = self.0.clone();
        v.remove(i);
        TupleCell(v)
    }

    pub fn degeneracy(&self, i: usize) -> TupleCell<T> {
        assert!(i <= self.degree());
        let mut v = self.0.clone();
        v.insert(i, v[i].clone());
        TupleCell(v)
    }

    /// Degenerate iff two consecutive entries agree.
    pub fn is_degenerate(&self) -> bool {
        self.0.windows(2).any(|w| w[0] == w[1])
    }

    /// Eilenberg-Zilber normal form: the strictly decreasing degeneracy word
    /// and the repeat-free base tuple.
    pub fn normal_form(&self) -> (Vec<usize>, TupleCell<T>) {
        let mut word = Vec::new();
        let mut cur = self.clone();
        loop {
            // Strip the largest applicable degeneracy first.
            let j = (0..cur.degree()).rev().find(|&j| cur.0[j] == cur.0[j + 1]);
            match j {
                Some(j) => {
                    word.push(j);
                    cur = cur.face(j);
                }
                None => break,
            }
        }
        (word, cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_triangle_counts() {
        let s = boundary_sphere(2, 3).unwrap();
        assert_eq!(s.nondeg_count(0), 3);
        assert_eq!(s.nondeg_count(1), 3);
        assert_eq!(s.nondeg_count(2), 0);
        s.check_identities().unwrap();
    }

    #[test]
    fn boundary_tetrahedron_counts() {
        let s = boundary_sphere(3, 4).unwrap();
        assert_eq!(s.nondeg_count(0), 4);
        assert_eq!(s.nondeg_count(1), 6);
        assert_eq!(s.nondeg_count(2), 4);
        assert_eq!(s.nondeg_count(3), 0);
        s.check_identities().unwrap();
    }

    #[test]
    fn two_point_sphere() {
        let s = boundary_sphere(1, 2).unwrap();
        assert_eq!(s.nondeg_count(0), 2);
        assert_eq!(s.nondeg_count(1), 0);
    }

    #[test]
    fn zero_sphere_rejected() {
        assert!(boundary_sphere_complex(0).is_err());
    }

    #[test]
    fn single_vertex_everything_degenerate() {
        let k = OrderedComplex::new(vec!["v0".into()], &[], &[vec!["v0".into()]]).unwrap();
        let s = ordered_to_sset(&k, 3).unwrap();
        assert_eq!(s.nondeg_count(0), 1);
        for d in 1..=3 {
            assert_eq!(s.nondeg_count(d), 0);
            // all cells in degree d are degenerate, and there is exactly one
            assert_eq!(s.cells(d).len(), 1);
        }
        s.check_identities().unwrap();
    }

    #[test]
    fn delta1_has_three_one_cells() {
        // S_<=(Delta^1)_1 = {(v0,v0), (v0,v1), (v1,v1)}
        let k = full_simplex_complex(1);
        let s = ordered_to_sset(&k, 2).unwrap();
        assert_eq!(s.cells(1).len(), 3);
        assert_eq!(s.nondeg_count(1), 1);
    }

    #[test]
    fn nondeg_counts_match_complex() {
        let k = boundary_sphere_complex(3).unwrap();
        let s = ordered_to_sset(&k, 4).unwrap();
        for d in 0..=3 {
            assert_eq!(s.nondeg_count(d), k.simplices_of_dim(d).len());
        }
    }

    #[test]
    fn order_not_total_rejected() {
        // Two incomparable vertices spanning an edge.
        let k = OrderedComplex::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[("a".into(), "b".into())],
            &[vec!["a".into(), "b".into()], vec!["b".into(), "c".into()]],
        )
        .unwrap();
        let err = ordered_to_sset(&k, 1).unwrap_err();
        match err {
            SimpSetError::OrderNotTotal { simplex } => {
                assert_eq!(simplex, vec!["b".to_string(), "c".to_string()]);
            }
            other => panic!("expected OrderNotTotal, got {other:?}"),
        }
    }

    #[test]
    fn ez_word_insertion() {
        // s_0 s_0 = s_1 s_0
        let base = CellId { dim: 0, idx: 0 };
        let c = Cell::nondeg(base);
        assert_eq!(c.degenerate(0).degenerate(0).word, vec![1, 0]);
        assert_eq!(c.degenerate(0).degenerate(0).degenerate(0).word, vec![2, 1, 0]);
    }

    #[test]
    fn pair_nerve_tuples() {
        let c = TupleCell::new(vec!["x0", "x1"], 1).unwrap();
        assert_eq!(c.face(0).0, vec!["x1"]);
        assert_eq!(c.face(1).0, vec!["x0"]);
        assert_eq!(c.degeneracy(1).0, vec!["x0", "x1", "x1"]);
        let diag = TupleCell::new(vec!["x", "x"], 1).unwrap();
        assert!(diag.is_degenerate());
        let (word, base) = diag.normal_form();
        assert_eq!(word, vec![0]);
        assert_eq!(base.0, vec!["x"]);
        assert!(TupleCell::new(vec!["x"], 1).is_err());
    }

    #[test]
    fn cells_enumeration_counts() {
        // Delta^1 truncated at 3: degree-2 cells are weakly monotone triples:
        // (000),(001),(011),(111) = 4
        let s = ordered_to_sset(&full_simplex_complex(1), 3).unwrap();
        assert_eq!(s.cells(2).len(), 4);
        assert_eq!(s.cells(3).len(), 5);
    }
}
