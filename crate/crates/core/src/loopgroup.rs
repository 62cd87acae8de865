//! Dwyer-Kan loop groups with maximal trees, abelianization, and the W / W-bar
//! constructions with principal-fibration checks.
//!
//! The loop group of a pointed connected simplicial set is presented
//! degreewise freely: degree-n generators are the (n+1)-cells that are
//! neither s_0-degenerate nor in the chosen maximal tree, with
//!
//! * `d_0(sigma) = d_1(sigma) . d_0(sigma)^{-1}`,
//! * `d_i(sigma) = d_{i+1}(sigma)` for `i >= 1`,
//! * `s_i(sigma) = s_{i+1}(sigma)`,
//!
//! where cells landing in `s_0(K) or T` are rewritten to the identity word.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed as _, Zero};

use crate::chains::{homology_fp, smith_normal_form, HomologyGroup, IntMat};
use crate::simpset::{Cell, CellId, FinSimplicialSet};

/// Reduced word in free-group generators: letters `(generator, +-1)` with no
/// adjacent cancelling pair.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GroupWord {
    letters: Vec<(usize, i8)>,
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, e)| if e > 0 { format!("g{g}") } else { format!("g{g}^-1") })
            .collect();
        write!(f, "{}", parts.join("."))
    }
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord { letters: Vec::new() }
    }

    pub fn generator(g: usize) -> Self {
        GroupWord { letters: vec![(g, 1)] }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (usize, i8)>) -> Self {
        let mut w = GroupWord::identity();
        for (g, e) in letters {
            assert!(e == 1 || e == -1, "letter exponents must be +-1");
            w.push(g, e);
        }
        w
    }

    fn push(&mut self, g: usize, e: i8) {
        match self.letters.last() {
            Some(&(h, f)) if h == g && f == -e => {
                self.letters.pop();
            }
            _ => self.letters.push((g, e)),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn mul(&self, rhs: &GroupWord) -> GroupWord {
        let mut out = self.clone();
        for &(g, e) in &rhs.letters {
            out.push(g, e);
        }
        out
    }

    pub fn inv(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// Exponent-sum vector over `num_gens` generators.
    pub fn exponents(&self, num_gens: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); num_gens];
        for &(g, e) in &self.letters {
            v[g] += BigInt::from(e);
        }
        v
    }

    /// Canonical abelian form: letters sorted by generator.
    pub fn abelianized(&self, num_gens: usize) -> GroupWord {
        let exps = self.exponents(num_gens);
        let mut letters = Vec::new();
        for (g, e) in exps.iter().enumerate() {
            let sign: i8 = if e.is_negative() { -1 } else { 1 };
            let count = e.abs().to_string().parse::<usize>().unwrap_or(0);
            for _ in 0..count {
                letters.push((g, sign));
            }
        }
        GroupWord { letters }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoopGroupError {
    Disconnected { stray_vertex: String },
    DepthTooLarge { needed_max_degree: usize, stored: usize },
    TreeMismatch { reason: String },
    TruncationTooShallow { needed_depth: usize, stored_depth: usize },
    IdentityFailure { detail: String },
    NotAbelian,
    InfiniteGroup { degree: usize },
}

impl fmt::Display for LoopGroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopGroupError::Disconnected { stray_vertex } => {
                write!(f, "complex is not connected: vertex {stray_vertex} unreachable")
            }
            LoopGroupError::DepthTooLarge { needed_max_degree, stored } => write!(
                f,
                "loop group depth needs cells up to degree {needed_max_degree}, stored {stored}"
            ),
            LoopGroupError::TreeMismatch { reason } => write!(f, "bad maximal tree: {reason}"),
            LoopGroupError::TruncationTooShallow { needed_depth, stored_depth } => write!(
                f,
                "homotopy in this degree needs presentation depth {needed_depth}, have {stored_depth}"
            ),
            LoopGroupError::IdentityFailure { detail } => {
                write!(f, "simplicial identity failure: {detail}")
            }
            LoopGroupError::NotAbelian => write!(f, "operation requires an abelian presentation"),
            LoopGroupError::InfiniteGroup { degree } => {
                write!(f, "group in degree {degree} is not finite")
            }
        }
    }
}

impl core::error::Error for LoopGroupError {}

/// Spanning tree in the 1-skeleton, rooted at the basepoint. Contains every
/// vertex and no loops of positive length; its higher cells are all
/// degenerate.
#[derive(Clone, Debug)]
pub struct MaximalTree {
    pub root: usize,
    /// Indices of nondegenerate 1-cells in the tree.
    pub edges: alloc::collections::BTreeSet<usize>,
}

impl MaximalTree {
    /// Membership of an arbitrary cell in the tree subcomplex.
    pub fn contains(&self, cell: &Cell) -> bool {
        match cell.base.dim {
            0 => true,
            1 => self.edges.contains(&cell.base.idx),
            _ => false,
        }
    }
}

/// Deterministic breadth-first spanning tree from the basepoint, following
/// the stored vertex and edge order.
pub fn maximal_tree(
    k: &FinSimplicialSet,
    basepoint: usize,
) -> Result<MaximalTree, LoopGroupError> {
    let nv = k.nondeg_count(0);
    assert!(basepoint < nv, "basepoint out of range");
    let ne = k.nondeg_count(1);
    // endpoints: edge -> (vertex 0, vertex 1) = (d_1, d_0)
    let mut endpoints = Vec::with_capacity(ne);
    for idx in 0..ne {
        let e = Cell::nondeg(CellId { dim: 1, idx });
        let v0 = k.face(&e, 1);
        let v1 = k.face(&e, 0);
        endpoints.push((v0.base.idx, v1.base.idx));
    }
    let mut visited = vec![false; nv];
    visited[basepoint] = true;
    let mut queue = alloc::collections::VecDeque::new();
    queue.push_back(basepoint);
    let mut edges = alloc::collections::BTreeSet::new();
    while let Some(v) = queue.pop_front() {
        for (idx, &(a, b)) in endpoints.iter().enumerate() {
            let other = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !visited[other] {
                visited[other] = true;
                edges.insert(idx);
                queue.push_back(other);
            }
        }
    }
    if let Some(stray) = visited.iter().position(|&v| !v) {
        return Err(LoopGroupError::Disconnected {
            stray_vertex: k.nondeg_labels(0)[stray].clone(),
        });
    }
    Ok(MaximalTree { root: basepoint, edges })
}

/// Degreewise free (or free abelian) simplicial group on finite generator
/// sets, explicit through degree `depth`. Generators may carry a finite
/// order (abelian constant groups use this).
#[derive(Clone, Debug)]
pub struct SimplicialGroupPresentation {
    pub depth: usize,
    pub abelian: bool,
    pub gens: Vec<Vec<String>>,
    /// Finite generator orders; `None` = infinite (free generator).
    pub orders: Vec<Vec<Option<u64>>>,
    /// `faces[n][g][i]` for 1 <= n <= depth, 0 <= i <= n.
    pub faces: Vec<Vec<Vec<GroupWord>>>,
    /// `degens[n][g][i]` for 0 <= n < depth, 0 <= i <= n.
    pub degens: Vec<Vec<Vec<GroupWord>>>,
}

impl SimplicialGroupPresentation {
    pub fn rank(&self, n: usize) -> usize {
        self.gens.get(n).map_or(0, Vec::len)
    }

    /// Homomorphic extension of the i-th face to words of degree n.
    pub fn face_word(&self, n: usize, i: usize, w: &GroupWord) -> GroupWord {
        let mut out = GroupWord::identity();
        for &(g, e) in w.letters() {
            let img = &self.faces[n][g][i];
            out = out.mul(&if e > 0 { img.clone() } else { img.inv() });
        }
        out
    }

    pub fn degen_word(&self, n: usize, i: usize, w: &GroupWord) -> GroupWord {
        let mut out = GroupWord::identity();
        for &(g, e) in w.letters() {
            let img = &self.degens[n][g][i];
            out = out.mul(&if e > 0 { img.clone() } else { img.inv() });
        }
        out
    }

    fn words_equal(&self, n: usize, a: &GroupWord, b: &GroupWord) -> bool {
        if self.abelian {
            let k = self.rank(n);
            let mut ea = a.exponents(k);
            let mut eb = b.exponents(k);
            for g in 0..k {
                if let Some(m) = self.orders[n][g] {
                    let m = BigInt::from(m);
                    ea[g] = num_integer::Integer::mod_floor(&ea[g], &m);
                    eb[g] = num_integer::Integer::mod_floor(&eb[g], &m);
                }
            }
            ea == eb
        } else {
            a == b
        }
    }

    /// Exhaustive simplicial-identity check on generators (homomorphically
    /// extended), through the stored truncation.
    pub fn check_identities(&self) -> Result<(), LoopGroupError> {
        for n in 0..=self.depth {
            for g in 0..self.rank(n) {
                let w = GroupWord::generator(g);
                // d_i d_j = d_{j-1} d_i, i < j
                if n >= 2 {
                    for j in 1..=n {
                        for i in 0..j {
                            let lhs = self.face_word(n - 1, i, &self.faces[n][g][j]);
                            let rhs = self.face_word(n - 1, j - 1, &self.faces[n][g][i]);
                            if !self.words_equal(n - 2, &lhs, &rhs) {
                                return Err(LoopGroupError::IdentityFailure {
                                    detail: format!(
                                        "d_{i} d_{j} != d_{} d_{i} on degree-{n} generator {}",
                                        j - 1,
                                        self.gens[n][g]
                                    ),
                                });
                            }
                        }
                    }
                }
                // s_i s_j = s_{j+1} s_i, i <= j (image in degree n+2)
                if n + 2 <= self.depth {
                    for j in 0..=n {
                        for i in 0..=j {
                            let lhs = self.degen_word(n + 1, i, &self.degens[n][g][j]);
                            let rhs = self.degen_word(n + 1, j + 1, &self.degens[n][g][i]);
                            if !self.words_equal(n + 2, &lhs, &rhs) {
                                return Err(LoopGroupError::IdentityFailure {
                                    detail: format!(
                                        "s_{i} s_{j} != s_{} s_{i} on degree-{n} generator {}",
                                        j + 1,
                                        self.gens[n][g]
                                    ),
                                });
                            }
                        }
                    }
                }
                // d_i s_j relations (image in degree n)
                if n + 1 <= self.depth {
                    for j in 0..=n {
                        let sj = &self.degens[n][g][j];
                        for i in 0..=n + 1 {
                            let lhs = self.face_word(n + 1, i, sj);
                            let rhs = if i < j {
                                self.degen_word(n - 1, j - 1, &self.faces[n][g][i])
                            } else if i == j || i == j + 1 {
                                w.clone()
                            } else {
                                self.degen_word(n - 1, j, &self.faces[n][g][i - 1])
                            };
                            if !self.words_equal(n, &lhs, &rhs) {
                                return Err(LoopGroupError::IdentityFailure {
                                    detail: format!(
                                        "d_{i} s_{j} relation fails on degree-{n} generator {}",
                                        self.gens[n][g]
                                    ),
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Constant simplicial group Z/m (single generator of order m per level).
    pub fn constant_cyclic(m: u64, depth: usize) -> Self {
        let gens = vec![vec![String::from("a")]; depth + 1];
        let orders = vec![vec![Some(m)]; depth + 1];
        let mut faces = vec![Vec::new(); depth + 1];
        let mut degens = vec![Vec::new(); depth + 1];
        for n in 1..=depth {
            faces[n] = vec![vec![GroupWord::generator(0); n + 1]];
        }
        for n in 0..depth {
            degens[n] = vec![vec![GroupWord::generator(0); n + 1]];
        }
        SimplicialGroupPresentation { depth, abelian: true, gens, orders, faces, degens }
    }

    /// The trivial simplicial group.
    pub fn zero_group(depth: usize) -> Self {
        SimplicialGroupPresentation {
            depth,
            abelian: true,
            gens: vec![Vec::new(); depth + 1],
            orders: vec![Vec::new(); depth + 1],
            faces: vec![Vec::new(); depth + 1],
            degens: vec![Vec::new(); depth + 1],
        }
    }
}

/// The Dwyer-Kan loop group of a pointed connected simplicial set with
/// respect to a maximal tree, presented through degree `depth`.
pub fn loop_group(
    k: &FinSimplicialSet,
    basepoint: usize,
    tree: &MaximalTree,
    depth: usize,
) -> Result<SimplicialGroupPresentation, LoopGroupError> {
    let _ = basepoint;
    if depth + 1 > k.max_degree() {
        return Err(LoopGroupError::DepthTooLarge {
            needed_max_degree: depth + 1,
            stored: k.max_degree(),
        });
    }
    if tree.edges.iter().any(|&e| e >= k.nondeg_count(1)) {
        return Err(LoopGroupError::TreeMismatch {
            reason: "tree edge index out of range".into(),
        });
    }
    // Degree-n generators: cells of K_{n+1} neither s_0-degenerate nor in T.
    let is_generator = |cell: &Cell| !cell.word.contains(&0) && !tree.contains(cell);
    let mut gen_cells: Vec<Vec<Cell>> = Vec::with_capacity(depth + 1);
    let mut gen_index: Vec<BTreeMap<Cell, usize>> = Vec::with_capacity(depth + 1);
    for n in 0..=depth {
        let cells: Vec<Cell> =
            k.cells(n + 1).into_iter().filter(|c| is_generator(c)).collect();
        let index = cells.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        gen_cells.push(cells);
        gen_index.push(index);
    }
    // kill: a cell of K_{m} interpreted in degree m-1 of the group.
    let kill = |m: usize, cell: &Cell| -> GroupWord {
        match gen_index[m - 1].get(cell) {
            Some(&g) => GroupWord::generator(g),
            None => GroupWord::identity(),
        }
    };
    let mut gens = Vec::with_capacity(depth + 1);
    let mut orders = Vec::with_capacity(depth + 1);
    let mut faces = vec![Vec::new(); depth + 1];
    let mut degens = vec![Vec::new(); depth + 1];
    for n in 0..=depth {
        gens.push(
            gen_cells[n]
                .iter()
                .map(|c| k.cell_label(c))
                .collect::<Vec<String>>(),
        );
        orders.push(vec![None; gen_cells[n].len()]);
        if n >= 1 {
            let mut level = Vec::with_capacity(gen_cells[n].len());
            for cell in &gen_cells[n] {
                let mut imgs = Vec::with_capacity(n + 1);
                // d_0 = d_1(sigma) . d_0(sigma)^{-1}
                let d1 = kill(n, &k.face(cell, 1));
                let d0 = kill(n, &k.face(cell, 0));
                imgs.push(d1.mul(&d0.inv()));
                for i in 1..=n {
                    imgs.push(kill(n, &k.face(cell, i + 1)));
                }
                level.push(imgs);
            }
            faces[n] = level;
        }
        if n < depth {
            let mut level = Vec::with_capacity(gen_cells[n].len());
            for cell in &gen_cells[n] {
                let imgs: Vec<GroupWord> = (0..=n)
                    .map(|i| {
                        let s = cell.degenerate(i + 1);
                        kill(n + 2, &s)
                    })
                    .collect();
                level.push(imgs);
            }
            degens[n] = level;
        }
    }
    Ok(SimplicialGroupPresentation { depth, abelian: false, gens, orders, faces, degens })
}

/// Abelianization: same generators, images replaced by exponent sums.
pub fn abelianize(p: &SimplicialGroupPresentation) -> SimplicialGroupPresentation {
    let mut out = p.clone();
    out.abelian = true;
    for n in 1..=p.depth {
        let k = p.rank(n - 1);
        for g in 0..p.rank(n) {
            for i in 0..out.faces[n][g].len() {
                out.faces[n][g][i] = out.faces[n][g][i].abelianized(k);
            }
        }
    }
    for n in 0..p.depth {
        let k = p.rank(n + 1);
        for g in 0..p.rank(n) {
            for i in 0..out.degens[n][g].len() {
                out.degens[n][g][i] = out.degens[n][g][i].abelianized(k);
            }
        }
    }
    out
}

/// Recognized isomorphism types from Tietze-style reduction of a small
/// presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnownGroup {
    Trivial,
    FreeOfRank(usize),
    Cyclic(u64),
}

impl fmt::Display for KnownGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnownGroup::Trivial => write!(f, "1"),
            KnownGroup::FreeOfRank(1) => write!(f, "Z"),
            KnownGroup::FreeOfRank(r) => write!(f, "F_{r}"),
            KnownGroup::Cyclic(m) => write!(f, "Z/{m}"),
        }
    }
}

/// Finitely presented group descriptor returned by `pi0_of_group`.
#[derive(Clone, Debug)]
pub struct GroupDescriptor {
    pub generators: Vec<String>,
    pub relations: Vec<GroupWord>,
    /// Invariants of the abelianization (always computable).
    pub abelianized: HomologyGroup,
    /// Isomorphism type when the reduction is conclusive.
    pub recognized: Option<KnownGroup>,
}

/// pi_0 of a simplicial group: the coequalizer of `d_0, d_1` applied to
/// groups, i.e. degree 0 modulo the relations `d_0(g) d_1(g)^{-1}`.
pub fn pi0_of_group(p: &SimplicialGroupPresentation) -> GroupDescriptor {
    let k0 = p.rank(0);
    let mut relations: Vec<GroupWord> = Vec::new();
    if p.depth >= 1 {
        for g in 0..p.rank(1) {
            let rel = p.faces[1][g][0].mul(&p.faces[1][g][1].inv());
            if !rel.is_identity() {
                relations.push(rel);
            }
        }
    }
    for g in 0..k0 {
        if let Some(m) = p.orders[0][g] {
            let letters = vec![(g, 1i8); m as usize];
            relations.push(GroupWord::from_letters(letters));
        }
    }
    // Abelianized invariants: coker of the exponent matrix.
    let mut rel_mat = IntMat::zero(k0, relations.len());
    for (j, r) in relations.iter().enumerate() {
        for (i, e) in r.exponents(k0).into_iter().enumerate() {
            rel_mat[(i, j)] = e;
        }
    }
    let snf = smith_normal_form(&rel_mat);
    let betti = k0 - snf.rank;
    let torsion: Vec<BigInt> = (0..snf.rank)
        .map(|i| snf.d[(i, i)].clone())
        .filter(|d| !d.is_one())
        .collect();
    let abelianized = HomologyGroup { betti, torsion };

    let recognized = reduce_presentation(k0, &relations);
    GroupDescriptor {
        generators: p.gens.first().cloned().unwrap_or_default(),
        relations,
        abelianized,
        recognized,
    }
}

/// Small Tietze-style reduction: drop trivial relations and kill generators
/// forced to the identity by single-letter relations.
fn reduce_presentation(num_gens: usize, relations: &[GroupWord]) -> Option<KnownGroup> {
    let mut alive: Vec<bool> = vec![true; num_gens];
    let mut rels: Vec<GroupWord> = relations.to_vec();
    loop {
        rels.retain(|r| !r.is_identity());
        let singleton = rels.iter().find_map(|r| {
            if r.letters().len() == 1 {
                Some(r.letters()[0].0)
            } else {
                None
            }
        });
        match singleton {
            Some(dead) => {
                alive[dead] = false;
                rels = rels
                    .iter()
                    .map(|r| {
                        GroupWord::from_letters(
                            r.letters().iter().copied().filter(|&(g, _)| g != dead),
                        )
                    })
                    .collect();
            }
            None => break,
        }
    }
    let live = alive.iter().filter(|&&a| a).count();
    if rels.is_empty() {
        return Some(if live == 0 {
            KnownGroup::Trivial
        } else {
            KnownGroup::FreeOfRank(live)
        });
    }
    if live == 1 {
        // All remaining relations are powers of one generator.
        let mut orders = Vec::new();
        for r in &rels {
            let e = &r.exponents(num_gens).iter().map(|x| x.abs()).max()?.clone();
            let total: BigInt = r
                .letters()
                .iter()
                .map(|&(_, s)| BigInt::from(s))
                .sum();
            let _ = e;
            orders.push(total.abs());
        }
        let mut g = BigInt::zero();
        for o in orders {
            g = num_integer::Integer::gcd(&g, &o);
        }
        if g.is_zero() {
            return Some(KnownGroup::FreeOfRank(1));
        }
        if g.is_one() {
            return Some(KnownGroup::Trivial);
        }
        let m: u64 = g.to_string().parse().ok()?;
        return Some(KnownGroup::Cyclic(m));
    }
    None
}

/// Homotopy of an abelian simplicial group presentation: homology of the
/// unnormalized complex with boundary the alternating face sum.
pub fn simplicial_abelian_homotopy(
    p: &SimplicialGroupPresentation,
    i: usize,
) -> Result<HomologyGroup, LoopGroupError> {
    if !p.abelian {
        return Err(LoopGroupError::NotAbelian);
    }
    if i + 1 > p.depth {
        return Err(LoopGroupError::TruncationTooShallow {
            needed_depth: i + 1,
            stored_depth: p.depth,
        });
    }
    // Boundary matrices D_n: alternating sums of face homomorphisms.
    let boundary_matrix = |n: usize| -> IntMat {
        let rows = p.rank(n - 1);
        let cols = p.rank(n);
        let mut m = IntMat::zero(rows, cols);
        for g in 0..cols {
            let mut acc = vec![BigInt::zero(); rows];
            for face_i in 0..=n {
                let img = p.faces[n][g][face_i].exponents(rows);
                let sign = if face_i % 2 == 0 { 1 } else { -1 };
                for (r, v) in img.into_iter().enumerate() {
                    acc[r] += v * BigInt::from(sign);
                }
            }
            for (r, v) in acc.into_iter().enumerate() {
                m[(r, g)] = v;
            }
        }
        m
    };
    let order_matrix = |n: usize| -> IntMat {
        let k = p.rank(n);
        let finite: Vec<(usize, u64)> = (0..k)
            .filter_map(|g| p.orders[n][g].map(|m| (g, m)))
            .collect();
        let mut m = IntMat::zero(k, finite.len());
        for (j, (g, ord)) in finite.into_iter().enumerate() {
            m[(g, j)] = BigInt::from(ord);
        }
        m
    };
    let out = if i == 0 {
        IntMat::zero(0, p.rank(0))
    } else {
        boundary_matrix(i)
    };
    let into = boundary_matrix(i + 1);
    let rel_mid = order_matrix(i);
    let rel_below = if i == 0 {
        IntMat::zero(0, 0)
    } else {
        order_matrix(i - 1)
    };
    Ok(homology_fp(&out, &into, &rel_mid, &rel_below))
}

/// Finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub labels: Vec<String>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    pub fn cyclic(m: u64) -> Self {
        let m = m as usize;
        assert!(m >= 1);
        let labels = (0..m).map(|i| i.to_string()).collect();
        let mul = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        let inv = (0..m).map(|a| (m - a) % m).collect();
        FiniteGroup { labels, mul, inv, identity: 0 }
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }
}

/// Tuples over a finite group with the W / W-bar face and degeneracy
/// formulas (the group is taken as a constant simplicial group, so the inner
/// face and degeneracy maps of elements are identities).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Flavor {
    Total,
    Classifying,
}

/// Tuple length at simplicial degree n.
fn tuple_len(flavor: Flavor, n: usize) -> usize {
    match flavor {
        Flavor::Total => n + 1,
        Flavor::Classifying => n,
    }
}

/// Face of a tuple. Tuples are stored as written in the construction:
/// `(g_n, ..., g_0)` for W and `(g_{n-1}, ..., g_0)` for W-bar, index 0 of
/// the vector is the LEFTMOST entry.
fn tuple_face(flavor: Flavor, g: &FiniteGroup, n: usize, t: &[usize], i: usize) -> Vec<usize> {
    debug_assert_eq!(t.len(), tuple_len(flavor, n));
    match flavor {
        Flavor::Total => {
            // d_i(g_n,...,g_0): for i < n the entries g_n..g_{n-i+1} map through
            // (identity) faces, then (d_0 g_{n-i}) g_{n-i-1} merges two slots;
            // for i = n the last entry drops.
            if i == n {
                t[..n].to_vec()
            } else {
                // positions: slot j holds g_{n-j}
                let mut out = Vec::with_capacity(n);
                out.extend_from_slice(&t[..i]);
                out.push(g.mul(t[i], t[i + 1]));
                out.extend_from_slice(&t[i + 2..]);
                out
            }
        }
        Flavor::Classifying => {
            // d_i(g_{n-1},...,g_0)
            if i == 0 {
                t[1..].to_vec()
            } else if i == n {
                t[..n - 1].to_vec()
            } else {
                // slot j holds g_{n-1-j}; twist merges g_{n-i-1}(d_0 g_{n-i}):
                // slots i-1 (g_{n-i}) and i (g_{n-i-1}) combine as t[i]*t[i-1].
                let mut out = Vec::with_capacity(n - 1);
                out.extend_from_slice(&t[..i - 1]);
                out.push(g.mul(t[i], t[i - 1]));
                out.extend_from_slice(&t[i + 1..]);
                out
            }
        }
    }
}

/// Degeneracy of a tuple, inserting an identity element.
fn tuple_degen(flavor: Flavor, g: &FiniteGroup, n: usize, t: &[usize], i: usize) -> Vec<usize> {
    debug_assert_eq!(t.len(), tuple_len(flavor, n));
    let e = g.identity();
    match flavor {
        Flavor::Total => {
            // s_i(g_n,...,g_0) = (s_i g_n, ..., s_0 g_{n-i}, e, g_{n-i-1}, ...)
            let mut out = Vec::with_capacity(n + 2);
            out.extend_from_slice(&t[..=i]);
            out.push(e);
            out.extend_from_slice(&t[i + 1..]);
            out
        }
        Flavor::Classifying => {
            // s_0 prepends e; s_i (1 <= i <= n) inserts e after g_{n-i}.
            let mut out = Vec::with_capacity(n + 1);
            out.extend_from_slice(&t[..i]);
            out.push(e);
            out.extend_from_slice(&t[i..]);
            out
        }
    }
}

fn all_tuples(order: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * order);
        for t in &out {
            for e in 0..order {
                let mut t2 = t.clone();
                t2.push(e);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

fn build_simplicial_set(
    flavor: Flavor,
    g: &FiniteGroup,
    depth: usize,
) -> Result<FinSimplicialSet, LoopGroupError> {
    if g.order() == 0 {
        return Err(LoopGroupError::InfiniteGroup { degree: 0 });
    }
    // Enumerate all cells per level and find the degenerate ones.
    let levels: Vec<Vec<Vec<usize>>> =
        (0..=depth).map(|n| all_tuples(g.order(), tuple_len(flavor, n))).collect();
    let label = |t: &[usize]| -> String {
        if t.is_empty() {
            String::from("()")
        } else {
            let parts: Vec<String> = t.iter().map(|&e| g.labels[e].clone()).collect();
            format!("({})", parts.join(","))
        }
    };
    let mut sset = FinSimplicialSet::new(depth);
    let mut id_of: Vec<BTreeMap<Vec<usize>, CellId>> = vec![BTreeMap::new(); depth + 1];
    // EZ normal form of a tuple at level n, stripping the largest degeneracy.
    fn normal_form(
        flavor: Flavor,
        g: &FiniteGroup,
        n: usize,
        t: &[usize],
    ) -> (Vec<usize>, usize, Vec<usize>) {
        if n > 0 {
            for j in (0..n).rev() {
                let dj = tuple_face(flavor, g, n, t, j);
                let sj = tuple_degen(flavor, g, n - 1, &dj, j);
                if sj == t {
                    let (mut word, dim, base) = normal_form(flavor, g, n - 1, &dj);
                    let mut full = vec![j];
                    full.append(&mut word);
                    // keep strictly decreasing: j is the largest stripped index
                    debug_assert!(full.windows(2).all(|w| w[0] > w[1]));
                    return (full, dim, base);
                }
            }
        }
        (Vec::new(), n, t.to_vec())
    }
    for n in 0..=depth {
        for t in &levels[n] {
            let (word, dim, base) = normal_form(flavor, g, n, t);
            if !word.is_empty() || dim != n {
                continue; // degenerate
            }
            let _ = (word, dim, base);
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        let ft = tuple_face(flavor, g, n, t, i);
                        let (w, d, b) = normal_form(flavor, g, n - 1, &ft);
                        let base_id = id_of[d][&b];
                        Cell { word: w, base: base_id }
                    })
                    .collect()
            };
            let id = sset
                .add_cell(n, label(t), faces)
                .map_err(|e| LoopGroupError::IdentityFailure { detail: format!("{e}") })?;
            id_of[n].insert(t.clone(), id);
        }
    }
    Ok(sset)
}

/// Total space `WG` of the universal principal fibration, truncated.
pub fn w_total(g: &FiniteGroup, depth: usize) -> Result<FinSimplicialSet, LoopGroupError> {
    build_simplicial_set(Flavor::Total, g, depth)
}

/// Standard simplicial classifying complex `W-bar G`, truncated.
pub fn wbar(g: &FiniteGroup, depth: usize) -> Result<FinSimplicialSet, LoopGroupError> {
    build_simplicial_set(Flavor::Classifying, g, depth)
}

/// One line of the principal-fibration report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationCheck {
    pub degree: usize,
    pub action_free: bool,
    pub orbits_match_base: bool,
    pub identities_ok: bool,
}

/// Verify that `G` acts levelwise freely on `WG` (left multiplication in the
/// first slot) and that the orbit sets biject with the cells of `W-bar G`,
/// and that both tuple systems satisfy the simplicial identities.
pub fn check_principal_fibration(g: &FiniteGroup, depth: usize) -> Vec<FibrationCheck> {
    let mut out = Vec::with_capacity(depth + 1);
    for n in 0..=depth {
        let total = all_tuples(g.order(), tuple_len(Flavor::Total, n));
        // (a) freeness by exhaustive orbit enumeration
        let mut action_free = true;
        for h in 0..g.order() {
            if h == g.identity() {
                continue;
            }
            for t in &total {
                let mut moved = t.clone();
                moved[0] = g.mul(h, t[0]);
                if moved == *t {
                    action_free = false;
                }
            }
        }
        // (b) orbit set = base cells
        let mut orbit_keys: alloc::collections::BTreeSet<Vec<usize>> = Default::default();
        for t in &total {
            // orbit representative: normalize first slot to the identity
            let rep: Vec<usize> = t[1..].to_vec();
            orbit_keys.insert(rep);
        }
        let base = all_tuples(g.order(), tuple_len(Flavor::Classifying, n));
        let orbits_match_base = orbit_keys.len() == base.len()
            && base.iter().all(|b| orbit_keys.contains(b));
        // (c) simplicial identities on both levels, where faces stay in range
        let identities_ok = check_tuple_identities(Flavor::Total, g, n, depth)
            && check_tuple_identities(Flavor::Classifying, g, n, depth);
        out.push(FibrationCheck { degree: n, action_free, orbits_match_base, identities_ok });
    }
    out
}

fn check_tuple_identities(flavor: Flavor, g: &FiniteGroup, n: usize, depth: usize) -> bool {
    let tuples = all_tuples(g.order(), tuple_len(flavor, n));
    for t in &tuples {
        if n >= 2 {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = tuple_face(
                        flavor,
                        g,
                        n - 1,
                        &tuple_face(flavor, g, n, t, j),
                        i,
                    );
                    let rhs = tuple_face(
                        flavor,
                        g,
                        n - 1,
                        &tuple_face(flavor, g, n, t, i),
                        j - 1,
                    );
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        if n + 1 <= depth {
            for j in 0..=n {
                let sj = tuple_degen(flavor, g, n, t, j);
                for i in 0..=n + 1 {
                    let lhs = tuple_face(flavor, g, n + 1, &sj, i);
                    let ok = if i < j {
                        lhs == tuple_degen(flavor, g, n - 1, &tuple_face(flavor, g, n, t, i), j - 1)
                    } else if i == j || i == j + 1 {
                        lhs == *t
                    } else {
                        lhs == tuple_degen(flavor, g, n - 1, &tuple_face(flavor, g, n, t, i - 1), j)
                    };
                    if !ok {
                        return false;
                    }
                }
                if n + 2 <= depth {
                    for i in 0..=j {
                        let lhs = tuple_degen(flavor, g, n + 1, &tuple_degen(flavor, g, n, t, j), i);
                        let rhs =
                            tuple_degen(flavor, g, n + 1, &tuple_degen(flavor, g, n, t, i), j + 1);
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}
