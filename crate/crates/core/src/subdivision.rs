//! The barycentric subdivision operator on exact-rational linear chains,
//! with the cone operator, the chain homotopies T and D_r, and the
//! permutation action with its sign.
//!
//! Degree -1 is kept explicit: LC_{-1} is generated by the empty simplex,
//! the base case of the inductive definitions.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Rat;

/// Affine simplex `[y_0, ..., y_k]` with exact rational coordinates; the
/// empty list is the empty simplex in degree -1. Repeated points are allowed
/// (degenerate simplices are honest generators of the linear-chain groups).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineSimplex {
    ambient: usize,
    points: Vec<Vec<Rat>>,
}

impl fmt::Debug for AffineSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.points.is_empty() {
            return write!(f, "[empty]");
        }
        let pts: Vec<alloc::string::String> = self
            .points
            .iter()
            .map(|p| {
                let cs: Vec<alloc::string::String> =
                    p.iter().map(|c| alloc::format!("{c}")).collect();
                alloc::format!("({})", cs.join(","))
            })
            .collect();
        write!(f, "[{}]", pts.join(" "))
    }
}

impl AffineSimplex {
    pub fn new(ambient: usize, points: Vec<Vec<Rat>>) -> Self {
        assert!(
            points.iter().all(|p| p.len() == ambient),
            "all points must share the ambient dimension"
        );
        AffineSimplex { ambient, points }
    }

    pub fn empty(ambient: usize) -> Self {
        AffineSimplex { ambient, points: Vec::new() }
    }

    /// Geometric degree: number of points minus one (-1 for the empty simplex).
    pub fn degree(&self) -> isize {
        self.points.len() as isize - 1
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn points(&self) -> &[Vec<Rat>] {
        &self.points
    }

    /// Exact barycenter (undefined for the empty simplex).
    pub fn barycenter(&self) -> Vec<Rat> {
        assert!(!self.points.is_empty(), "the empty simplex has no barycenter");
        let n = Rat::from(BigInt::from(self.points.len() as i64));
        (0..self.ambient)
            .map(|j| {
                let sum: Rat = self.points.iter().map(|p| p[j].clone()).sum();
                sum / n.clone()
            })
            .collect()
    }

    /// Delete the i-th point.
    pub fn face(&self, i: usize) -> AffineSimplex {
        assert!(i < self.points.len());
        let mut pts = self.points.clone();
        pts.remove(i);
        AffineSimplex { ambient: self.ambient, points: pts }
    }

    /// Prepend a point (the cone construction on a single simplex).
    pub fn cone(&self, apex: &[Rat]) -> AffineSimplex {
        assert_eq!(apex.len(), self.ambient);
        let mut pts = Vec::with_capacity(self.points.len() + 1);
        pts.push(apex.to_vec());
        pts.extend(self.points.iter().cloned());
        AffineSimplex { ambient: self.ambient, points: pts }
    }
}

/// Integer combination of equal-degree affine simplices.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearChain {
    ambient: usize,
    degree: isize,
    terms: BTreeMap<AffineSimplex, BigInt>,
}

impl fmt::Debug for LinearChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let ts: Vec<alloc::string::String> = self
            .terms
            .iter()
            .map(|(s, c)| alloc::format!("{c}*{s:?}"))
            .collect();
        write!(f, "{}", ts.join(" + "))
    }
}

impl LinearChain {
    pub fn zero(ambient: usize, degree: isize) -> Self {
        assert!(degree >= -1);
        LinearChain { ambient, degree, terms: BTreeMap::new() }
    }

    pub fn generator(simplex: AffineSimplex) -> Self {
        let mut c = LinearChain::zero(simplex.ambient(), simplex.degree());
        c.add_term(simplex, BigInt::one());
        c
    }

    /// The canonical generator of LC_{-1}.
    pub fn empty_simplex(ambient: usize) -> Self {
        LinearChain::generator(AffineSimplex::empty(ambient))
    }

    pub fn degree(&self) -> isize {
        self.degree
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffineSimplex, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, simplex: AffineSimplex, coeff: BigInt) {
        assert_eq!(simplex.degree(), self.degree, "mixed-degree chain");
        assert_eq!(simplex.ambient(), self.ambient);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(simplex) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &LinearChain) -> LinearChain {
        assert_eq!(self.degree, rhs.degree);
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &LinearChain) -> LinearChain {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> LinearChain {
        LinearChain {
            ambient: self.ambient,
            degree: self.degree,
            terms: self.terms.iter().map(|(s, c)| (s.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> LinearChain {
        if k.is_zero() {
            return LinearChain::zero(self.ambient, self.degree);
        }
        LinearChain {
            ambient: self.ambient,
            degree: self.degree,
            terms: self.terms.iter().map(|(s, c)| (s.clone(), c * k)).collect(),
        }
    }
}

/// Alternating face sum; in degree 0 every point maps to the empty simplex.
pub fn boundary(c: &LinearChain) -> LinearChain {
    assert!(c.degree() >= 0, "boundary needs degree >= 0");
    let mut out = LinearChain::zero(c.ambient(), c.degree() - 1);
    for (s, coeff) in c.terms() {
        if s.degree() == 0 {
            out.add_term(AffineSimplex::empty(c.ambient()), coeff.clone());
            continue;
        }
        for i in 0..=s.degree() as usize {
            let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            out.add_term(s.face(i), sign * coeff);
        }
    }
    out
}

/// Cone operator `b`: `[y_0..y_n] -> [b, y_0..y_n]`, `[empty] -> [b]`,
/// extended linearly. Satisfies `boundary . cone + cone . boundary = id`.
pub fn cone(apex: &[Rat], c: &LinearChain) -> LinearChain {
    assert_eq!(apex.len(), c.ambient(), "cone apex in wrong ambient space");
    let mut out = LinearChain::zero(c.ambient(), c.degree() + 1);
    for (s, coeff) in c.terms() {
        out.add_term(s.cone(apex), coeff.clone());
    }
    out
}

/// Barycentric subdivision operator, `S(lambda) = b_lambda(S(boundary lambda))`
/// with `S` the identity in degrees -1 and 0.
pub fn subdivide(c: &LinearChain) -> LinearChain {
    let mut out = LinearChain::zero(c.ambient(), c.degree());
    for (s, coeff) in c.terms() {
        out = out.add(&subdivide_simplex(s).scale(coeff));
    }
    out
}

fn subdivide_simplex(s: &AffineSimplex) -> LinearChain {
    if s.degree() <= 0 {
        return LinearChain::generator(s.clone());
    }
    let b = s.barycenter();
    let inner = subdivide(&boundary(&LinearChain::generator(s.clone())));
    cone(&b, &inner)
}

/// Chain homotopy between the subdivision operator and the identity:
/// `T = 0` in degree -1 and `T(lambda) = b_lambda(lambda - T(boundary lambda))`.
pub fn chain_homotopy_t(c: &LinearChain) -> LinearChain {
    let mut out = LinearChain::zero(c.ambient(), c.degree() + 1);
    for (s, coeff) in c.terms() {
        out = out.add(&homotopy_simplex(s).scale(coeff));
    }
    out
}

fn homotopy_simplex(s: &AffineSimplex) -> LinearChain {
    if s.degree() < 0 {
        return LinearChain::zero(s.ambient(), 0);
    }
    let b = s.barycenter();
    let gen = LinearChain::generator(s.clone());
    let inner = gen.sub(&chain_homotopy_t(&boundary(&gen)));
    cone(&b, &inner)
}

/// `r`-fold subdivision together with its accumulated chain homotopy
/// `D_r = sum_{0 <= i < r} T S^i`, so that `dD_r + D_r d = id - S^r`.
pub fn iterate(c: &LinearChain, r: usize) -> (LinearChain, LinearChain) {
    let mut current = c.clone();
    let mut homotopy = LinearChain::zero(c.ambient(), c.degree() + 1);
    for _ in 0..r {
        homotopy = homotopy.add(&chain_homotopy_t(&current));
        current = subdivide(&current);
    }
    (current, homotopy)
}

/// Parity of a permutation given in one-line notation.
pub fn permutation_sign(sigma: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            if sigma[i] > sigma[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArityMismatch {
    pub expected: usize,
    pub got: usize,
}

impl fmt::Display for ArityMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "permutation of {} symbols applied to {} points", self.got, self.expected)
    }
}

impl core::error::Error for ArityMismatch {}

/// Vertex permutation `sigma_* lambda = (y_{sigma(0)}, ..., y_{sigma(k)})`
/// together with the sign of `sigma`.
pub fn permute(
    s: &AffineSimplex,
    sigma: &[usize],
) -> Result<(AffineSimplex, i32), ArityMismatch> {
    let n = s.points().len();
    if sigma.len() != n {
        return Err(ArityMismatch { expected: n, got: sigma.len() });
    }
    let mut seen = alloc::vec![false; n];
    for &v in sigma {
        assert!(v < n && !seen[v], "not a permutation");
        seen[v] = true;
    }
    let pts: Vec<Vec<Rat>> = sigma.iter().map(|&i| s.points()[i].clone()).collect();
    Ok((AffineSimplex::new(s.ambient(), pts), permutation_sign(sigma)))
}

/// Apply the permutation to every term of a chain, with signs.
pub fn permute_chain(c: &LinearChain, sigma: &[usize]) -> Result<LinearChain, ArityMismatch> {
    let mut out = LinearChain::zero(c.ambient(), c.degree());
    for (s, coeff) in c.terms() {
        let (p, sign) = permute(s, sigma)?;
        out.add_term(p, coeff * BigInt::from(sign));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};
    use itertools::Itertools;

    fn pt(coords: &[i64]) -> Vec<Rat> {
        coords.iter().map(|&c| rint(c)).collect()
    }

    fn seg() -> AffineSimplex {
        AffineSimplex::new(1, alloc::vec![pt(&[0]), pt(&[1])])
    }

    fn tri() -> AffineSimplex {
        AffineSimplex::new(2, alloc::vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])])
    }

    #[test]
    fn boundary_of_segment() {
        let c = LinearChain::generator(seg());
        let b = boundary(&c);
        // d[y0,y1] = [y1] - [y0]
        let mut expect = LinearChain::zero(1, 0);
        expect.add_term(AffineSimplex::new(1, alloc::vec![pt(&[1])]), BigInt::from(1));
        expect.add_term(AffineSimplex::new(1, alloc::vec![pt(&[0])]), BigInt::from(-1));
        assert_eq!(b, expect);
    }

    #[test]
    fn boundary_of_point_is_empty_simplex() {
        let c = LinearChain::generator(AffineSimplex::new(2, alloc::vec![pt(&[3, 4])]));
        assert_eq!(boundary(&c), LinearChain::empty_simplex(2));
    }

    #[test]
    fn boundary_squares_to_zero() {
        let c = LinearChain::generator(tri());
        assert!(boundary(&boundary(&c)).is_zero());
    }

    #[test]
    fn cone_is_contracting_homotopy() {
        // d(b(c)) + b(d(c)) = c for c = [y0,y1]
        let b = pt(&[5]);
        let c = LinearChain::generator(seg());
        let lhs = boundary(&cone(&b, &c)).add(&cone(&b, &boundary(&c)));
        assert_eq!(lhs, c);
        // cone of the zero chain is zero
        let z = LinearChain::zero(1, 0);
        assert!(cone(&b, &z).is_zero());
        // b([y0]) = [b, y0]
        let single = LinearChain::generator(AffineSimplex::new(1, alloc::vec![pt(&[0])]));
        let coned = cone(&b, &single);
        let expect =
            LinearChain::generator(AffineSimplex::new(1, alloc::vec![pt(&[5]), pt(&[0])]));
        assert_eq!(coned, expect);
    }

    #[test]
    fn subdivision_of_segment() {
        // S[y0,y1] = [b,y1] - [b,y0], b = midpoint
        let s = subdivide(&LinearChain::generator(seg()));
        let b = alloc::vec![rat(1, 2)];
        let mut expect = LinearChain::zero(1, 1);
        expect.add_term(
            AffineSimplex::new(1, alloc::vec![b.clone(), pt(&[1])]),
            BigInt::from(1),
        );
        expect.add_term(AffineSimplex::new(1, alloc::vec![b, pt(&[0])]), BigInt::from(-1));
        assert_eq!(s, expect);
    }

    #[test]
    fn subdivision_fixes_points() {
        let c = LinearChain::generator(AffineSimplex::new(2, alloc::vec![pt(&[7, 1])]));
        assert_eq!(subdivide(&c), c);
        let e = LinearChain::empty_simplex(3);
        assert_eq!(subdivide(&e), e);
    }

    #[test]
    fn subdivision_of_triangle_six_terms() {
        // S[y0,y1,y2] = [b,b2,y1] - [b,b2,y0] + [b,b0,y2] - [b,b0,y1]
        //             - [b,b1,y2] + [b,b1,y0]
        let t = tri();
        let s = subdivide(&LinearChain::generator(t.clone()));
        assert_eq!(s.num_terms(), 6);
        let y0 = pt(&[0, 0]);
        let y1 = pt(&[1, 0]);
        let y2 = pt(&[0, 1]);
        let b = t.barycenter();
        let b0 = AffineSimplex::new(2, alloc::vec![y1.clone(), y2.clone()]).barycenter();
        let b1 = AffineSimplex::new(2, alloc::vec![y0.clone(), y2.clone()]).barycenter();
        let b2 = AffineSimplex::new(2, alloc::vec![y0.clone(), y1.clone()]).barycenter();
        let term = |a: &Vec<Rat>, c: &Vec<Rat>, d: &Vec<Rat>| {
            AffineSimplex::new(2, alloc::vec![a.clone(), c.clone(), d.clone()])
        };
        let mut expect = LinearChain::zero(2, 2);
        expect.add_term(term(&b, &b2, &y1), BigInt::from(1));
        expect.add_term(term(&b, &b2, &y0), BigInt::from(-1));
        expect.add_term(term(&b, &b0, &y2), BigInt::from(1));
        expect.add_term(term(&b, &b0, &y1), BigInt::from(-1));
        expect.add_term(term(&b, &b1, &y2), BigInt::from(-1));
        expect.add_term(term(&b, &b1, &y0), BigInt::from(1));
        assert_eq!(s, expect);
    }

    #[test]
    fn term_count_is_factorial() {
        for k in 0..=4usize {
            let pts: Vec<Vec<Rat>> = (0..=k)
                .map(|i| (0..k).map(|j| if j + 1 == i { rint(1) } else { rint(0) }).collect())
                .collect();
            let s = AffineSimplex::new(k, pts);
            let sub = subdivide(&LinearChain::generator(s));
            let fact: usize = (1..=k + 1).product();
            assert_eq!(sub.num_terms(), fact);
        }
    }

    #[test]
    fn homotopy_base_cases() {
        // T([y0]) = [y0,y0]
        let p = AffineSimplex::new(1, alloc::vec![pt(&[2])]);
        let t = chain_homotopy_t(&LinearChain::generator(p.clone()));
        let expect =
            LinearChain::generator(AffineSimplex::new(1, alloc::vec![pt(&[2]), pt(&[2])]));
        assert_eq!(t, expect);
        // T([empty]) = 0
        assert!(chain_homotopy_t(&LinearChain::empty_simplex(1)).is_zero());
        // T([y0,y1]) = [b,y0,y1] - [b,y1,y1] + [b,y0,y0]
        let t = chain_homotopy_t(&LinearChain::generator(seg()));
        let b = alloc::vec![rat(1, 2)];
        let mk = |a: &Vec<Rat>, c: &[i64], d: &[i64]| {
            AffineSimplex::new(1, alloc::vec![a.clone(), pt(c), pt(d)])
        };
        let mut expect = LinearChain::zero(1, 2);
        expect.add_term(mk(&b, &[0], &[1]), BigInt::from(1));
        expect.add_term(mk(&b, &[1], &[1]), BigInt::from(-1));
        expect.add_term(mk(&b, &[0], &[0]), BigInt::from(1));
        assert_eq!(t, expect);
    }

    #[test]
    fn homotopy_identity_on_triangle() {
        // dT + Td = id - S
        let c = LinearChain::generator(tri());
        let lhs = boundary(&chain_homotopy_t(&c)).add(&chain_homotopy_t(&boundary(&c)));
        let rhs = c.sub(&subdivide(&c));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn boundary_commutes_with_subdivision() {
        let c = LinearChain::generator(tri());
        assert_eq!(boundary(&subdivide(&c)), subdivide(&boundary(&c)));
    }

    #[test]
    fn iterate_base_cases() {
        let c = LinearChain::generator(tri());
        let (s0, d0) = iterate(&c, 0);
        assert_eq!(s0, c);
        assert!(d0.is_zero());
        let (s1, d1) = iterate(&c, 1);
        assert_eq!(s1, subdivide(&c));
        assert_eq!(d1, chain_homotopy_t(&c));
    }

    #[test]
    fn iterated_homotopy_identity() {
        // dD_r + D_r d = id - S^r for r = 3 on a 2-chain
        let c = LinearChain::generator(tri());
        let (sr, dr) = iterate(&c, 3);
        let lhs = boundary(&dr).add(&{
            let (_, dr_of_boundary) = iterate(&boundary(&c), 3);
            dr_of_boundary
        });
        let rhs = c.sub(&sr);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn permutation_action() {
        let t = tri();
        let (same, sign) = permute(&t, &[0, 1, 2]).unwrap();
        assert_eq!(same, t);
        assert_eq!(sign, 1);
        let (swapped, sign) = permute(&t, &[0, 2, 1]).unwrap();
        assert_eq!(sign, -1);
        assert_eq!(swapped.points()[1], pt(&[0, 1]));
        assert!(permute(&t, &[0, 1]).is_err());
    }

    #[test]
    fn barr_kock_on_triangle() {
        // S(sigma_* lambda) = sgn(sigma) S(lambda) for all sigma in S_3
        let t = tri();
        let s_plain = subdivide(&LinearChain::generator(t.clone()));
        for sigma in (0..3).permutations(3) {
            let (p, sign) = permute(&t, &sigma).unwrap();
            let s_perm = subdivide(&LinearChain::generator(p));
            assert_eq!(s_perm, s_plain.scale(&BigInt::from(sign)));
        }
    }
}
