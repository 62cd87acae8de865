//! Integer chain complexes and homology with torsion via Smith normal form.
//!
//! Everything is arbitrary-precision: no modular shortcuts, so torsion (for
//! instance the Z/2 in the classifying space of Z/2) is exact.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::simpset::FinSimplicialSet;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{}", self[(i, j)])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl core::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        IntMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().map(BigInt::from).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a * &rhs[(k, j)];
                    if !add.is_zero() {
                        out[(i, j)] += add;
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += q * row[b]
    fn add_row(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = q * &self[(b, j)];
            self[(a, j)] += add;
        }
    }

    /// col[a] += q * col[b]
    fn add_col(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = q * &self[(i, b)];
            self[(i, a)] += add;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self[(a, j)].clone();
            self[(a, j)] = v;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination; square only.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }
}

/// Smith normal form decomposition: `u * m * v = d` with `u`, `v` unimodular
/// and `d` diagonal with a divisibility chain.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
    /// Inverse of `v`, maintained alongside (used to express kernel data).
    pub v_inv: IntMat,
    pub rank: usize,
}

/// Smith normal form with smallest-absolute-value pivoting.
pub fn smith_normal_form(m: &IntMat) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let mut v_inv = IntMat::identity(cols);
    let steps = rows.min(cols);
    let mut k = 0;
    while k < steps {
        // Smallest-absolute-value nonzero pivot in the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if d[(i, j)].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if d[(i, j)].abs() < d[(pi, pj)].abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);
        v_inv.swap_rows(k, pj);
        // Clear row and column k; pivot may shrink, so iterate.
        loop {
            let mut clean = true;
            for i in k + 1..rows {
                if !d[(i, k)].is_zero() {
                    let q = -(&d[(i, k)] / &d[(k, k)]);
                    d.add_row(i, k, &q);
                    u.add_row(i, k, &q);
                    if !d[(i, k)].is_zero() {
                        // Remainder smaller than the pivot: promote it.
                        d.swap_rows(i, k);
                        u.swap_rows(i, k);
                        clean = false;
                    }
                }
            }
            for j in k + 1..cols {
                if !d[(k, j)].is_zero() {
                    let q = -(&d[(k, j)] / &d[(k, k)]);
                    d.add_col(j, k, &q);
                    v.add_col(j, k, &q);
                    v_inv.add_row(k, j, &(-q));
                    if !d[(k, j)].is_zero() {
                        d.swap_cols(j, k);
                        v.swap_cols(j, k);
                        v_inv.swap_rows(j, k);
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        // Divisibility fix-up: fold a nondivisible entry into row k.
        let piv = d[(k, k)].clone();
        let culprit = (k + 1..rows)
            .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !(&d[(i, j)] % &piv).is_zero());
        if let Some((i, _)) = culprit {
            let one = BigInt::one();
            d.add_row(k, i, &one);
            u.add_row(k, i, &one);
            continue; // redo step k with the enlarged row
        }
        if d[(k, k)].is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
        k += 1;
    }
    let rank = (0..steps).take_while(|&i| !d[(i, i)].is_zero()).count();
    Snf { u, d, v, v_inv, rank }
}

/// A finitely generated abelian group: free rank plus invariant factors
/// (each dividing the next, all > 1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup { betti, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push(String::from("Z")),
            b => parts.push(format!("Z^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainError {
    DegreeOutOfRange { degree: usize, top: usize },
    NotAChainComplex { degree: usize },
    ShapeMismatch { detail: String },
}

impl fmt::Display for ChainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainError::DegreeOutOfRange { degree, top } => {
                write!(f, "degree {degree} outside represented range 0..={top}")
            }
            ChainError::NotAChainComplex { degree } => {
                write!(f, "boundary composition is nonzero in degree {degree}")
            }
            ChainError::ShapeMismatch { detail } => write!(f, "shape mismatch: {detail}"),
        }
    }
}

impl core::error::Error for ChainError {}

/// Chain complex of free abelian groups with integer boundary matrices.
///
/// `boundary[n]` has shape `ranks[n-1] x ranks[n]`; `boundary[0]` is the
/// empty map out of degree 0.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    pub boundary: Vec<IntMat>,
    pub labels: Vec<Vec<String>>,
}

impl ChainComplex {
    pub fn new(
        ranks: Vec<usize>,
        boundary: Vec<IntMat>,
        labels: Vec<Vec<String>>,
    ) -> Result<Self, ChainError> {
        if boundary.len() != ranks.len() {
            return Err(ChainError::ShapeMismatch {
                detail: format!("{} ranks but {} boundaries", ranks.len(), boundary.len()),
            });
        }
        for n in 1..ranks.len() {
            if boundary[n].rows != ranks[n - 1] || boundary[n].cols != ranks[n] {
                return Err(ChainError::ShapeMismatch {
                    detail: format!(
                        "boundary[{n}] is {}x{}, expected {}x{}",
                        boundary[n].rows,
                        boundary[n].cols,
                        ranks[n - 1],
                        ranks[n]
                    ),
                });
            }
        }
        let cc = ChainComplex { ranks, boundary, labels };
        cc.check_boundary_squares_to_zero()?;
        Ok(cc)
    }

    pub fn top(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn check_boundary_squares_to_zero(&self) -> Result<(), ChainError> {
        for n in 2..self.ranks.len() {
            if !self.boundary[n - 1].mul(&self.boundary[n]).is_zero() {
                return Err(ChainError::NotAChainComplex { degree: n });
            }
        }
        Ok(())
    }

    /// Homology in degree `n`; the boundary out of degree `n + 1` is taken to
    /// be zero when `n` is the top represented degree.
    pub fn homology(&self, n: usize) -> Result<HomologyGroup, ChainError> {
        if n >= self.ranks.len() {
            return Err(ChainError::DegreeOutOfRange { degree: n, top: self.top() });
        }
        let rank_n = self.ranks[n];
        let out = if n == 0 {
            IntMat::zero(0, rank_n)
        } else {
            self.boundary[n].clone()
        };
        let into = if n + 1 < self.ranks.len() {
            self.boundary[n + 1].clone()
        } else {
            IntMat::zero(rank_n, 0)
        };
        Ok(homology_of_pair(&out, &into))
    }
}

/// Homology of `ker(out) / im(into)` where `out: Z^n -> Z^m` and
/// `into: Z^p -> Z^n` with `out * into = 0`.
pub fn homology_of_pair(out: &IntMat, into: &IntMat) -> HomologyGroup {
    assert_eq!(out.cols, into.rows, "middle ranks disagree");
    debug_assert!(out.mul(into).is_zero(), "not a complex");
    let snf_out = smith_normal_form(out);
    let r = snf_out.rank;
    let kernel_dim = out.cols - r;
    // Coordinates of im(into) in the kernel basis: the last `kernel_dim`
    // rows of v_inv * into (the first r rows vanish because out*into = 0).
    let coords = snf_out.v_inv.mul(into);
    let mut rel = IntMat::zero(kernel_dim, into.cols);
    for i in 0..kernel_dim {
        for j in 0..into.cols {
            rel[(i, j)] = coords[(r + i, j)].clone();
        }
    }
    debug_assert!((0..r).all(|i| (0..into.cols).all(|j| coords[(i, j)].is_zero())));
    let snf_rel = smith_normal_form(&rel);
    let betti = kernel_dim - snf_rel.rank;
    let torsion: Vec<BigInt> = (0..snf_rel.rank)
        .map(|i| snf_rel.d[(i, i)].clone())
        .filter(|d| !d.is_one())
        .collect();
    HomologyGroup { betti, torsion }
}

/// Homology of a complex of finitely presented abelian groups in one degree.
///
/// The middle group is `Z^k / im(rel_mid)`, the one below `Z^p / im(rel_below)`;
/// `out` and `into` are integer lifts of the boundary maps. Computes
/// `ker(out-bar) / im(into-bar)` where the bars are the induced maps.
pub fn homology_fp(
    out: &IntMat,
    into: &IntMat,
    rel_mid: &IntMat,
    rel_below: &IntMat,
) -> HomologyGroup {
    let k = out.cols;
    assert_eq!(into.rows, k);
    assert_eq!(rel_mid.rows, k);
    assert_eq!(rel_below.rows, out.rows);
    // Lattice L = { x : out x in im(rel_below) } as the projection of
    // ker [out | rel_below] onto the first k coordinates.
    let p = if out.rows == 0 {
        IntMat::identity(k)
    } else {
        let mut stacked = IntMat::zero(out.rows, k + rel_below.cols);
        for i in 0..out.rows {
            for j in 0..k {
                stacked[(i, j)] = out[(i, j)].clone();
            }
            for j in 0..rel_below.cols {
                stacked[(i, k + j)] = rel_below[(i, j)].clone();
            }
        }
        let snf = smith_normal_form(&stacked);
        let ker_dim = stacked.cols - snf.rank;
        let mut gen = IntMat::zero(k, ker_dim);
        for c in 0..ker_dim {
            for r in 0..k {
                gen[(r, c)] = snf.v[(r, snf.rank + c)].clone();
            }
        }
        gen
    };
    // Express the columns of [into | rel_mid] in the generating coordinates
    // of L, then quotient (also by the kernel of the generating matrix).
    let snf_p = smith_normal_form(&p);
    let gens = p.cols;
    let solve = |c: &[BigInt]| -> Vec<BigInt> {
        // p z = c with c guaranteed to lie in the column span.
        let mut uc = vec![BigInt::zero(); p.rows];
        for i in 0..p.rows {
            for (j, cj) in c.iter().enumerate() {
                uc[i] += &snf_p.u[(i, j)] * cj;
            }
        }
        let mut w = vec![BigInt::zero(); gens];
        for i in 0..p.rows.min(gens) {
            let d = &snf_p.d[(i, i)];
            if d.is_zero() {
                assert!(uc[i].is_zero(), "boundary does not land in the kernel lattice");
            } else {
                let (q, r) = uc[i].div_rem(d);
                assert!(r.is_zero(), "boundary does not land in the kernel lattice");
                w[i] = q;
            }
        }
        for v in uc.iter().skip(gens) {
            assert!(v.is_zero(), "boundary does not land in the kernel lattice");
        }
        // z = v w
        let mut z = vec![BigInt::zero(); gens];
        for (i, zi) in z.iter_mut().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                *zi += &snf_p.v[(i, j)] * wj;
            }
        }
        z
    };
    let ker_p_dim = gens - snf_p.rank;
    let n_cols = into.cols + rel_mid.cols + ker_p_dim;
    let mut relations = IntMat::zero(gens, n_cols);
    for j in 0..into.cols {
        let col: Vec<BigInt> = (0..k).map(|i| into[(i, j)].clone()).collect();
        for (i, v) in solve(&col).into_iter().enumerate() {
            relations[(i, j)] = v;
        }
    }
    for j in 0..rel_mid.cols {
        let col: Vec<BigInt> = (0..k).map(|i| rel_mid[(i, j)].clone()).collect();
        for (i, v) in solve(&col).into_iter().enumerate() {
            relations[(i, into.cols + j)] = v;
        }
    }
    for j in 0..ker_p_dim {
        for i in 0..gens {
            relations[(i, into.cols + rel_mid.cols + j)] =
                snf_p.v[(i, snf_p.rank + j)].clone();
        }
    }
    let snf_rel = smith_normal_form(&relations);
    let betti = gens - snf_rel.rank;
    let torsion: Vec<BigInt> = (0..snf_rel.rank)
        .map(|i| snf_rel.d[(i, i)].clone())
        .filter(|d| !d.is_one())
        .collect();
    HomologyGroup { betti, torsion }
}

/// Normalized (Moore) chain complex of a simplicial set: degree-n basis is
/// the nondegenerate n-cells, boundary the alternating face sum with
/// degenerate faces sent to zero.
pub fn normalized_complex(
    k: &FinSimplicialSet,
    top: usize,
) -> Result<ChainComplex, ChainError> {
    if top > k.max_degree() {
        return Err(ChainError::DegreeOutOfRange { degree: top, top: k.max_degree() });
    }
    let ranks: Vec<usize> = (0..=top).map(|n| k.nondeg_count(n)).collect();
    let labels: Vec<Vec<String>> =
        (0..=top).map(|n| k.nondeg_labels(n).to_vec()).collect();
    let mut boundary = Vec::with_capacity(top + 1);
    boundary.push(IntMat::zero(0, ranks[0]));
    for n in 1..=top {
        let mut m = IntMat::zero(ranks[n - 1], ranks[n]);
        for idx in 0..ranks[n] {
            let cell = crate::simpset::Cell::nondeg(crate::simpset::CellId { dim: n, idx });
            for i in 0..=n {
                let face = k.face(&cell, i);
                if face.is_degenerate() {
                    continue;
                }
                let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                m[(face.base.idx, idx)] += sign;
            }
        }
        boundary.push(m);
    }
    ChainComplex::new(ranks, boundary, labels)
}

/// Simplicial chain complex of an ordered complex itself (basis the
/// d-simplices, boundary the alternating vertex-deletion sum). Used as the
/// comparison route against the normalized complex of `S_<=(K)`.
pub fn ordered_complex_chains(
    k: &crate::simpset::OrderedComplex,
) -> Result<ChainComplex, ChainError> {
    let dim = k.dim();
    let mut index: Vec<alloc::collections::BTreeMap<Vec<usize>, usize>> = Vec::new();
    let mut ranks = Vec::new();
    let mut labels = Vec::new();
    for d in 0..=dim {
        let simps = k.simplices_of_dim(d);
        let mut map = alloc::collections::BTreeMap::new();
        let mut lab = Vec::new();
        for (i, s) in simps.iter().enumerate() {
            map.insert(s.clone(), i);
            lab.push(
                s.iter()
                    .map(|&v| k.vertices()[v].clone())
                    .collect::<Vec<_>>()
                    .join(","),
            );
        }
        ranks.push(simps.len());
        labels.push(lab);
        index.push(map);
    }
    let mut boundary = Vec::with_capacity(dim + 1);
    boundary.push(IntMat::zero(0, ranks[0]));
    for d in 1..=dim {
        let simps = k.simplices_of_dim(d);
        let mut m = IntMat::zero(ranks[d - 1], ranks[d]);
        for (j, s) in simps.iter().enumerate() {
            for i in 0..=d {
                let mut f = s.clone();
                f.remove(i);
                let fi = index[d - 1][&f];
                let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                m[(fi, j)] += sign;
            }
        }
        boundary.push(m);
    }
    ChainComplex::new(ranks, boundary, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::{boundary_sphere, full_simplex_complex, ordered_to_sset};

    /// Independent oracle: rank and invariant factors by plain first-nonzero
    /// pivoting, no smallest-pivot optimization, no transform tracking.
    fn snf_oracle_diag(m: &IntMat) -> Vec<BigInt> {
        let mut d = m.clone();
        let (rows, cols) = (d.rows, d.cols);
        let mut k = 0;
        while k < rows.min(cols) {
            let piv = (k..rows)
                .flat_map(|i| (k..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_zero());
            let Some((pi, pj)) = piv else { break };
            d.swap_rows(k, pi);
            d.swap_cols(k, pj);
            loop {
                let mut done = true;
                for i in k + 1..rows {
                    while !d[(i, k)].is_zero() {
                        let q = -(&d[(i, k)] / &d[(k, k)]);
                        d.add_row(i, k, &q);
                        if !d[(i, k)].is_zero() {
                            d.swap_rows(i, k);
                            done = false;
                        }
                    }
                }
                for j in k + 1..cols {
                    while !d[(k, j)].is_zero() {
                        let q = -(&d[(k, j)] / &d[(k, k)]);
                        d.add_col(j, k, &q);
                        if !d[(k, j)].is_zero() {
                            d.swap_cols(j, k);
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            let piv = d[(k, k)].clone();
            let bad = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&d[(i, j)] % &piv).is_zero());
            if let Some((i, _)) = bad {
                d.add_row(k, i, &BigInt::one());
                continue;
            }
            if d[(k, k)].is_negative() {
                d.negate_row(k);
            }
            k += 1;
        }
        (0..rows.min(cols)).map(|i| d[(i, i)].clone()).collect()
    }

    fn check_snf(m: &IntMat) {
        let snf = smith_normal_form(m);
        // u * m * v = d
        assert_eq!(snf.u.mul(m).mul(&snf.v), snf.d);
        // unimodular
        assert_eq!(snf.u.det().abs(), BigInt::one());
        assert_eq!(snf.v.det().abs(), BigInt::one());
        // v * v_inv = 1
        assert_eq!(snf.v.mul(&snf.v_inv), IntMat::identity(m.cols));
        // diagonal with divisibility chain
        for i in 0..m.rows {
            for j in 0..m.cols {
                if i != j {
                    assert!(snf.d[(i, j)].is_zero());
                }
            }
        }
        for i in 1..snf.rank {
            let prev = snf.d[(i - 1, i - 1)].clone();
            assert!((&snf.d[(i, i)] % &prev).is_zero(), "divisibility chain broken");
        }
        // diagonal agrees with the oracle
        let oracle = snf_oracle_diag(m);
        let ours: Vec<BigInt> = (0..m.rows.min(m.cols)).map(|i| snf.d[(i, i)].clone()).collect();
        assert_eq!(ours, oracle);
    }

    #[test]
    fn snf_hand_examples() {
        // diag(2,3) -> diag(1,6), by hand row/column reduction
        let m = IntMat::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.d[(0, 0)], BigInt::from(1));
        assert_eq!(snf.d[(1, 1)], BigInt::from(6));
        check_snf(&m);

        let z = IntMat::zero(3, 2);
        let snf = smith_normal_form(&z);
        assert!(snf.d.is_zero());
        assert_eq!(snf.u, IntMat::identity(3));
        assert_eq!(snf.v, IntMat::identity(2));

        let id = IntMat::identity(4);
        let snf = smith_normal_form(&id);
        assert_eq!(snf.d, IntMat::identity(4));
    }

    #[test]
    fn snf_random_matrices_match_oracle() {
        // Deterministic little generator; matrices up to 6x6.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..40 {
            let r = (next() % 6 + 1) as usize;
            let c = (next() % 6 + 1) as usize;
            let mut m = IntMat::zero(r, c);
            for i in 0..r {
                for j in 0..c {
                    m[(i, j)] = BigInt::from((next() % 19) as i64 - 9);
                }
            }
            check_snf(&m);
        }
    }

    #[test]
    fn point_homology() {
        let k = ordered_to_sset(&full_simplex_complex(0), 2).unwrap();
        let cc = normalized_complex(&k, 2).unwrap();
        assert_eq!(cc.ranks, vec![1, 0, 0]);
        assert_eq!(cc.homology(0).unwrap(), HomologyGroup::free(1));
        assert_eq!(cc.homology(1).unwrap(), HomologyGroup::free(0));
        assert_eq!(cc.homology(2).unwrap(), HomologyGroup::free(0));
    }

    #[test]
    fn circle_complex_shape() {
        let k = boundary_sphere(2, 2).unwrap();
        let cc = normalized_complex(&k, 2).unwrap();
        assert_eq!(cc.ranks, vec![3, 3, 0]);
        // signed vertex-incidence matrix: each edge hits two vertices
        for j in 0..3 {
            let col_sum: BigInt = (0..3).map(|i| cc.boundary[1][(i, j)].clone()).sum();
            assert!(col_sum.is_zero());
        }
        assert_eq!(cc.homology(0).unwrap(), HomologyGroup::free(1));
        assert_eq!(cc.homology(1).unwrap(), HomologyGroup::free(1));
    }

    #[test]
    fn two_sphere_homology() {
        let k = boundary_sphere(3, 3).unwrap();
        let cc = normalized_complex(&k, 3).unwrap();
        assert_eq!(cc.ranks, vec![4, 6, 4, 0]);
        cc.check_boundary_squares_to_zero().unwrap();
        assert_eq!(cc.homology(0).unwrap(), HomologyGroup::free(1));
        assert_eq!(cc.homology(1).unwrap(), HomologyGroup::free(0));
        assert_eq!(cc.homology(2).unwrap(), HomologyGroup::free(1));
    }

    #[test]
    fn degree_out_of_range_rejected() {
        let k = boundary_sphere(2, 2).unwrap();
        let cc = normalized_complex(&k, 1).unwrap();
        assert!(cc.homology(2).is_err());
        assert!(normalized_complex(&k, 5).is_err());
    }

    #[test]
    fn torsion_example_rp2() {
        // Minimal RP^2 (6 vertices, antipodal icosahedron quotient).
        let tris = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 1, 5],
            [1, 2, 4],
            [2, 4, 5],
            [2, 3, 5],
            [1, 3, 5],
            [1, 3, 4],
        ];
        let verts: Vec<String> = (0..6).map(|i: i32| alloc::string::ToString::to_string(&i)).collect();
        let simps: Vec<Vec<String>> = tris
            .iter()
            .map(|t| t.iter().map(|v: &i32| alloc::string::ToString::to_string(v)).collect())
            .collect();
        let k = crate::simpset::OrderedComplex::new(verts, &[], &simps).unwrap();
        let s = ordered_to_sset(&k, 3).unwrap();
        let cc = normalized_complex(&s, 3).unwrap();
        assert_eq!(cc.homology(0).unwrap(), HomologyGroup::free(1));
        assert_eq!(
            cc.homology(1).unwrap(),
            HomologyGroup { betti: 0, torsion: vec![BigInt::from(2)] }
        );
        assert_eq!(cc.homology(2).unwrap(), HomologyGroup::free(0));
    }
}
