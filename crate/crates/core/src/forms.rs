//! Differential forms with rational-function coefficients on Cartesian
//! charts: wedge, exterior derivative, pullback, multilinear evaluation, and
//! the generalized Faa di Bruno formula for higher derivatives of composites.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::{Poly, RatFn};
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormsError {
    ChartMismatch { expected: usize, got: usize },
    DegreeMismatch { expected: usize, got: usize },
    Pole { location: String },
    BadIndexTuple { detail: String },
    EmptyMultiIndex,
    NotPolynomial,
}

impl fmt::Display for FormsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormsError::ChartMismatch { expected, got } => {
                write!(f, "chart dimension mismatch: expected {expected}, got {got}")
            }
            FormsError::DegreeMismatch { expected, got } => {
                write!(f, "degree mismatch: expected {expected}, got {got}")
            }
            FormsError::Pole { location } => write!(f, "pole at {location}"),
            FormsError::BadIndexTuple { detail } => write!(f, "bad index tuple: {detail}"),
            FormsError::EmptyMultiIndex => write!(f, "multi-index must have order >= 1"),
            FormsError::NotPolynomial => {
                write!(f, "operation requires polynomial coefficients (no denominators)")
            }
        }
    }
}

impl core::error::Error for FormsError {}

/// Differential k-form on a Cartesian chart, with rational-function
/// coefficients indexed by strictly increasing tuples (0-based).
#[derive(Clone, PartialEq, Eq)]
pub struct RationalForm {
    chart_dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, RatFn>,
}

impl fmt::Debug for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(idx, c)| {
                let dx: Vec<String> = idx.iter().map(|i| format!("dx{i}")).collect();
                if dx.is_empty() {
                    format!("({c:?})")
                } else {
                    format!("({c:?}) {}", dx.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl RationalForm {
    pub fn zero(chart_dim: usize, degree: usize) -> Self {
        RationalForm { chart_dim, degree, coeffs: BTreeMap::new() }
    }

    /// Degree-0 form (a function).
    pub fn function(chart_dim: usize, f: RatFn) -> Self {
        let mut form = RationalForm::zero(chart_dim, 0);
        form.set_term(Vec::new(), f);
        form
    }

    /// The coordinate 1-form `dx_i`.
    pub fn dx(chart_dim: usize, i: usize) -> Self {
        assert!(i < chart_dim);
        let mut form = RationalForm::zero(chart_dim, 1);
        form.set_term(vec![i], RatFn::constant(chart_dim, Rat::one()));
        form
    }

    pub fn chart_dim(&self) -> usize {
        self.chart_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &RatFn)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, idx: &[usize]) -> RatFn {
        self.coeffs
            .get(idx)
            .cloned()
            .unwrap_or_else(|| RatFn::zero(self.chart_dim))
    }

    pub fn set_term(&mut self, idx: Vec<usize>, c: RatFn) {
        assert_eq!(idx.len(), self.degree, "index tuple length must match degree");
        assert!(idx.windows(2).all(|w| w[0] < w[1]), "index tuple must strictly increase");
        assert!(idx.iter().all(|&i| i < self.chart_dim), "index out of chart range");
        assert_eq!(c.nvars(), self.chart_dim);
        if c.is_zero() {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, c);
        }
    }

    pub fn add_term(&mut self, idx: Vec<usize>, c: RatFn) {
        let cur = self.coeff(&idx);
        self.set_term(idx, cur.add(&c));
    }

    pub fn add(&self, rhs: &RationalForm) -> RationalForm {
        assert_eq!(self.chart_dim, rhs.chart_dim);
        assert_eq!(self.degree, rhs.degree);
        let mut out = self.clone();
        for (idx, c) in rhs.terms() {
            out.add_term(idx.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &RationalForm) -> RationalForm {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RationalForm {
        RationalForm {
            chart_dim: self.chart_dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(i, c)| (i.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, f: &RatFn) -> RationalForm {
        let mut out = RationalForm::zero(self.chart_dim, self.degree);
        for (idx, c) in self.terms() {
            out.add_term(idx.clone(), c.mul(f));
        }
        out
    }

    /// True when every coefficient is a polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.coeffs.values().all(RatFn::is_polynomial)
    }
}

/// Exterior derivative, by the quotient rule on every coefficient.
pub fn exterior_d(omega: &RationalForm) -> RationalForm {
    let n = omega.chart_dim();
    let mut out = RationalForm::zero(n, omega.degree() + 1);
    for (idx, c) in omega.terms() {
        for j in 0..n {
            if idx.contains(&j) {
                continue;
            }
            let dc = c.partial(j);
            if dc.is_zero() {
                continue;
            }
            let pos = idx.iter().take_while(|&&i| i < j).count();
            let mut new_idx = idx.clone();
            new_idx.insert(pos, j);
            let signed = if pos % 2 == 0 { dc } else { dc.neg() };
            out.add_term(new_idx, signed);
        }
    }
    out
}

/// Graded-commutative wedge product.
pub fn wedge(a: &RationalForm, b: &RationalForm) -> Result<RationalForm, FormsError> {
    if a.chart_dim() != b.chart_dim() {
        return Err(FormsError::ChartMismatch { expected: a.chart_dim(), got: b.chart_dim() });
    }
    let n = a.chart_dim();
    let mut out = RationalForm::zero(n, a.degree() + b.degree());
    for (ia, ca) in a.terms() {
        'next: for (ib, cb) in b.terms() {
            // Shuffle sign: inversions between the two increasing tuples.
            let mut inversions = 0usize;
            for &x in ia {
                for &y in ib {
                    if x == y {
                        continue 'next;
                    }
                    if x > y {
                        inversions += 1;
                    }
                }
            }
            let mut merged: Vec<usize> = ia.iter().chain(ib.iter()).copied().collect();
            merged.sort_unstable();
            let c = ca.mul(cb);
            out.add_term(merged, if inversions % 2 == 0 { c } else { c.neg() });
        }
    }
    Ok(out)
}

/// Map between Cartesian charts with rational-function components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub components: Vec<RatFn>,
}

impl PolyMap {
    pub fn new(domain_dim: usize, components: Vec<RatFn>) -> Self {
        assert!(components.iter().all(|c| c.nvars() == domain_dim));
        PolyMap { domain_dim, codomain_dim: components.len(), components }
    }

    pub fn identity(dim: usize) -> Self {
        PolyMap::new(dim, (0..dim).map(|i| RatFn::var(dim, i)).collect())
    }

    pub fn eval(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        self.components.iter().map(|c| c.eval(x)).collect()
    }

    pub fn eval_f64(&self, x: &[f64]) -> Vec<f64> {
        self.components.iter().map(|c| c.eval_f64(x)).collect()
    }

    /// Composition `self . g` (apply `g` first).
    pub fn compose(&self, g: &PolyMap) -> PolyMap {
        assert_eq!(self.domain_dim, g.codomain_dim);
        PolyMap::new(
            g.domain_dim,
            self.components.iter().map(|c| c.compose(&g.components)).collect(),
        )
    }
}

/// Pullback `f^* omega`: substitute the components and send
/// `dx_i` to `sum_j (df_i/dt_j) dt_j`, expanding exactly.
pub fn pullback(omega: &RationalForm, f: &PolyMap) -> Result<RationalForm, FormsError> {
    if f.codomain_dim != omega.chart_dim() {
        return Err(FormsError::ChartMismatch {
            expected: omega.chart_dim(),
            got: f.codomain_dim,
        });
    }
    let dom = f.domain_dim;
    // Pulled-back coordinate differentials.
    let d_components: Vec<RationalForm> = f
        .components
        .iter()
        .map(|c| {
            let mut df = RationalForm::zero(dom, 1);
            for j in 0..dom {
                let p = c.partial(j);
                if !p.is_zero() {
                    df.add_term(vec![j], p);
                }
            }
            df
        })
        .collect();
    let mut out = RationalForm::zero(dom, omega.degree());
    for (idx, c) in omega.terms() {
        let mut term = RationalForm::function(dom, c.compose(&f.components));
        for &i in idx {
            term = wedge(&term, &d_components[i])?;
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Exact determinant of a square rational matrix (Laplace expansion; the
/// matrices here are at most chart-dimension sized).
fn det_rat(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    match n {
        0 => Rat::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = Rat::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Rat>> = (1..n)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| m[r][c].clone())
                            .collect()
                    })
                    .collect();
                let cof = m[0][j].clone() * det_rat(&minor);
                if j % 2 == 0 {
                    acc += cof;
                } else {
                    acc -= cof;
                }
            }
            acc
        }
    }
}

/// Evaluate a k-form at a point on k tangent vectors:
/// `sum_I coeff_I(x) det(rows I of the vector matrix)`.
pub fn evaluate(
    omega: &RationalForm,
    x: &[Rat],
    vectors: &[Vec<Rat>],
) -> Result<Rat, FormsError> {
    if x.len() != omega.chart_dim() {
        return Err(FormsError::ChartMismatch { expected: omega.chart_dim(), got: x.len() });
    }
    if vectors.len() != omega.degree() {
        return Err(FormsError::DegreeMismatch { expected: omega.degree(), got: vectors.len() });
    }
    let mut acc = Rat::zero();
    for (idx, c) in omega.terms() {
        let cv = c.eval(x).ok_or_else(|| FormsError::Pole {
            location: format!("{x:?}"),
        })?;
        if omega.degree() == 0 {
            acc += cv;
            continue;
        }
        let minor: Vec<Vec<Rat>> = idx
            .iter()
            .map(|&row| vectors.iter().map(|v| v[row].clone()).collect())
            .collect();
        acc += cv * det_rat(&minor);
    }
    Ok(acc)
}

/// f64 evaluation used by the quadrature paths.
pub fn evaluate_f64(omega: &RationalForm, x: &[f64], vectors: &[Vec<f64>]) -> f64 {
    let mut acc = 0.0;
    for (idx, c) in omega.terms() {
        let cv = c.eval_f64(x);
        if omega.degree() == 0 {
            acc += cv;
            continue;
        }
        let minor: Vec<Vec<f64>> = idx
            .iter()
            .map(|&row| vectors.iter().map(|v| v[row]).collect())
            .collect();
        acc += cv * det_f64(&minor);
    }
    acc
}

fn det_f64(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    match n {
        0 => 1.0,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut acc = 0.0;
            for j in 0..n {
                let minor: Vec<Vec<f64>> = (1..n)
                    .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c]).collect())
                    .collect();
                let cof = m[0][j] * det_f64(&minor);
                acc += if j % 2 == 0 { cof } else { -cof };
            }
            acc
        }
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn multi_factorial(beta: &[u32]) -> BigInt {
    beta.iter().map(|&b| factorial(b)).fold(BigInt::one(), |a, b| a * b)
}

/// All multi-indices `0 <= m <= bound` componentwise with `|m| >= 1`.
fn sub_multi_indices(bound: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in bound {
        let mut next = Vec::new();
        for prefix in &out {
            for v in 0..=b {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out.retain(|m| m.iter().sum::<u32>() >= 1);
    out
}

/// Generalized Faa di Bruno formula: the mixed partial of `g . f` at `x0`
/// expanded as a sum over derivative assignments, which must coincide with
/// the direct symbolic derivative of the composite.
pub fn faa_di_bruno(
    g: &RatFn,
    f: &PolyMap,
    beta: &[u32],
    x0: &[Rat],
) -> Result<Rat, FormsError> {
    if beta.len() != f.domain_dim {
        return Err(FormsError::BadIndexTuple {
            detail: format!("multi-index arity {} vs domain {}", beta.len(), f.domain_dim),
        });
    }
    if g.nvars() != f.codomain_dim {
        return Err(FormsError::ChartMismatch { expected: f.codomain_dim, got: g.nvars() });
    }
    let order: u32 = beta.iter().sum();
    if order == 0 {
        return Err(FormsError::EmptyMultiIndex);
    }
    let y0 = f
        .eval(x0)
        .ok_or_else(|| FormsError::Pole { location: format!("f at {x0:?}") })?;
    let m = f.codomain_dim;

    // Precompute inner derivatives f_i^{(beta')} at x0 for all sub-indices.
    let inner_indices = sub_multi_indices(beta);
    let mut inner_vals: BTreeMap<(usize, Vec<u32>), Rat> = BTreeMap::new();
    for i in 0..m {
        for bp in &inner_indices {
            let mut d = f.components[i].clone();
            for (var, &k) in bp.iter().enumerate() {
                for _ in 0..k {
                    d = d.partial(var);
                }
            }
            let v = d
                .eval(x0)
                .ok_or_else(|| FormsError::Pole { location: format!("f at {x0:?}") })?;
            inner_vals.insert((i, bp.clone()), v);
        }
    }

    // Pairs (component i, sub-index beta') in a fixed order for DFS.
    let pairs: Vec<(usize, Vec<u32>)> = (0..m)
        .flat_map(|i| inner_indices.iter().map(move |bp| (i, bp.clone())))
        .collect();

    let beta_fact = multi_factorial(beta);
    let mut total = Rat::zero();
    let mut sigma = vec![0u32; m];

    // DFS over multiplicity assignments e_{i, beta'} with
    // sum e * beta' = beta; accumulate the product term for each.
    fn dfs(
        pairs: &[(usize, Vec<u32>)],
        pos: usize,
        remaining: &mut [u32],
        sigma: &mut [u32],
        partial: Rat,
        inner_vals: &BTreeMap<(usize, Vec<u32>), Rat>,
        g_derivs: &mut BTreeMap<Vec<u32>, Option<Rat>>,
        g: &RatFn,
        y0: &[Rat],
        beta_fact: &BigInt,
        total: &mut Rat,
    ) -> Result<(), FormsError> {
        if remaining.iter().all(|&r| r == 0) {
            // Complete assignment: multiply by the outer derivative.
            if sigma.iter().all(|&s| s == 0) {
                return Ok(());
            }
            let key = sigma.to_vec();
            let entry = g_derivs.entry(key.clone()).or_insert_with(|| {
                let mut d = g.clone();
                for (var, &k) in key.iter().enumerate() {
                    for _ in 0..k {
                        d = d.partial(var);
                    }
                }
                d.eval(y0)
            });
            let gv = entry
                .clone()
                .ok_or_else(|| FormsError::Pole { location: format!("g at {y0:?}") })?;
            *total += partial * gv * Rat::from(beta_fact.clone());
            return Ok(());
        }
        if pos == pairs.len() {
            return Ok(());
        }
        let (i, bp) = &pairs[pos];
        // Maximum multiplicity of beta' fitting into the remaining budget.
        let max_e = bp
            .iter()
            .zip(remaining.iter())
            .filter(|(&b, _)| b > 0)
            .map(|(&b, &r)| r / b)
            .min()
            .unwrap_or(0);
        // e = 0 branch
        dfs(
            pairs, pos + 1, remaining, sigma, partial.clone(), inner_vals, g_derivs, g, y0,
            beta_fact, total,
        )?;
        let base = inner_vals[&(*i, bp.clone())].clone();
        let bp_fact = multi_factorial(bp);
        let mut power = Rat::one();
        for e in 1..=max_e {
            for (slot, &b) in bp.iter().enumerate() {
                remaining[slot] -= b;
            }
            sigma[*i] += 1;
            power *= base.clone();
            // partial * f^{(beta')}^e / (e! (beta'!)^e)
            let mut denom = factorial(e);
            let mut bpf = BigInt::one();
            for _ in 0..e {
                bpf *= &bp_fact;
            }
            denom *= bpf;
            let contrib = partial.clone() * power.clone() / Rat::from(denom);
            dfs(
                pairs, pos + 1, remaining, sigma, contrib, inner_vals, g_derivs, g, y0,
                beta_fact, total,
            )?;
        }
        for (slot, &b) in bp.iter().enumerate() {
            remaining[slot] += b * max_e;
        }
        sigma[*i] -= max_e;
        Ok(())
    }

    let mut remaining = beta.to_vec();
    let mut g_derivs: BTreeMap<Vec<u32>, Option<Rat>> = BTreeMap::new();
    dfs(
        &pairs,
        0,
        &mut remaining,
        &mut sigma,
        Rat::one(),
        &inner_vals,
        &mut g_derivs,
        g,
        &y0,
        &beta_fact,
        &mut total,
    )?;
    Ok(total)
}

/// Direct route: the same mixed partial computed symbolically on the
/// composite. This is the oracle the expansion must match.
pub fn composite_partial(
    g: &RatFn,
    f: &PolyMap,
    beta: &[u32],
    x0: &[Rat],
) -> Result<Rat, FormsError> {
    if beta.len() != f.domain_dim {
        return Err(FormsError::BadIndexTuple {
            detail: format!("multi-index arity {} vs domain {}", beta.len(), f.domain_dim),
        });
    }
    let mut comp = g.compose(&f.components);
    for (var, &k) in beta.iter().enumerate() {
        for _ in 0..k {
            comp = comp.partial(var);
        }
    }
    comp.eval(x0).ok_or_else(|| FormsError::Pole { location: format!("{x0:?}") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};

    fn xvar() -> RatFn {
        RatFn::var(2, 0)
    }
    fn yvar() -> RatFn {
        RatFn::var(2, 1)
    }

    #[test]
    fn d_of_x_dy() {
        // d(x dy) = dx ^ dy
        let mut w = RationalForm::zero(2, 1);
        w.set_term(vec![1], xvar());
        let dw = exterior_d(&w);
        let mut expect = RationalForm::zero(2, 2);
        expect.set_term(vec![0, 1], RatFn::constant(2, Rat::one()));
        assert_eq!(dw, expect);
    }

    #[test]
    fn d_of_rotation_form() {
        // d(x dy - y dx) = 2 dx^dy
        let mut w = RationalForm::zero(2, 1);
        w.set_term(vec![1], xvar());
        w.set_term(vec![0], yvar().neg());
        let dw = exterior_d(&w);
        assert_eq!(dw.coeff(&[0, 1]), RatFn::constant(2, rint(2)));
    }

    #[test]
    fn d_squared_zero_on_rational_form() {
        // f = x/(1+x^2+y^2), w = f dx + f^2 dy
        let den = Poly::one(2)
            .add(&Poly::var(2, 0).pow(2))
            .add(&Poly::var(2, 1).pow(2));
        let f = RatFn::new(Poly::var(2, 0), den);
        let mut w = RationalForm::zero(2, 1);
        w.set_term(vec![0], f.clone());
        w.set_term(vec![1], f.mul(&f));
        let ddw = exterior_d(&exterior_d(&w));
        assert!(ddw.is_zero());
    }

    #[test]
    fn wedge_basics() {
        let dx = RationalForm::dx(2, 0);
        let dy = RationalForm::dx(2, 1);
        assert!(wedge(&dx, &dx).unwrap().is_zero());
        let dxdy = wedge(&dx, &dy).unwrap();
        let dydx = wedge(&dy, &dx).unwrap();
        assert_eq!(dxdy, dydx.neg());
        // (x dx) ^ (y dy) = xy dx^dy
        let xdx = dx.scale(&xvar());
        let ydy = dy.scale(&yvar());
        let prod = wedge(&xdx, &ydy).unwrap();
        assert_eq!(prod.coeff(&[0, 1]), xvar().mul(&yvar()));
    }

    #[test]
    fn graded_commutativity() {
        // alpha 1-form, beta 2-form in dim 3: alpha^beta = +beta^alpha
        let a = RationalForm::dx(3, 0).scale(&RatFn::var(3, 2));
        let mut b = RationalForm::zero(3, 2);
        b.set_term(vec![1, 2], RatFn::var(3, 0));
        let ab = wedge(&a, &b).unwrap();
        let ba = wedge(&b, &a).unwrap();
        assert_eq!(ab, ba);
    }

    #[test]
    fn pullback_parabola() {
        // pullback of dy along t -> (t, t^2) is 2t dt
        let f = PolyMap::new(1, vec![
            RatFn::var(1, 0),
            RatFn::var(1, 0).mul(&RatFn::var(1, 0)),
        ]);
        let dy = RationalForm::dx(2, 1);
        let p = pullback(&dy, &f).unwrap();
        assert_eq!(p.coeff(&[0]), RatFn::var(1, 0).scale(&rint(2)));
    }

    #[test]
    fn pullback_identity_and_linear_det() {
        let dxdy = {
            let mut w = RationalForm::zero(2, 2);
            w.set_term(vec![0, 1], RatFn::constant(2, Rat::one()));
            w
        };
        let id = PolyMap::identity(2);
        assert_eq!(pullback(&dxdy, &id).unwrap(), dxdy);
        // linear map with matrix [[1,2],[3,4]]: pullback of dx^dy = det ds^dt
        let s = RatFn::var(2, 0);
        let t = RatFn::var(2, 1);
        let f = PolyMap::new(2, vec![
            s.add(&t.scale(&rint(2))),
            s.scale(&rint(3)).add(&t.scale(&rint(4))),
        ]);
        let p = pullback(&dxdy, &f).unwrap();
        assert_eq!(p.coeff(&[0, 1]), RatFn::constant(2, rint(-2)));
    }

    #[test]
    fn pullback_functoriality() {
        // (f.g)^* = g^* . f^* on a rational 1-form
        let den = Poly::one(2).add(&Poly::var(2, 0).pow(2)).add(&Poly::var(2, 1).pow(2));
        let mut w = RationalForm::zero(2, 1);
        w.set_term(vec![0], RatFn::new(Poly::var(2, 1), den));
        let f = PolyMap::new(2, vec![
            RatFn::var(2, 0).mul(&RatFn::var(2, 1)),
            RatFn::var(2, 1).add(&RatFn::constant(2, rint(1))),
        ]);
        let g = PolyMap::new(2, vec![
            RatFn::var(2, 0).add(&RatFn::var(2, 1)),
            RatFn::var(2, 0).mul(&RatFn::var(2, 0)),
        ]);
        let lhs = pullback(&w, &f.compose(&g)).unwrap();
        let rhs = pullback(&pullback(&w, &f).unwrap(), &g).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_commutes_with_d() {
        let mut w = RationalForm::zero(2, 1);
        w.set_term(vec![0], xvar().mul(&yvar()));
        w.set_term(vec![1], yvar());
        let f = PolyMap::new(2, vec![
            RatFn::var(2, 1).mul(&RatFn::var(2, 1)),
            RatFn::var(2, 0).add(&RatFn::var(2, 1)),
        ]);
        assert_eq!(pullback(&exterior_d(&w), &f).unwrap(), exterior_d(&pullback(&w, &f).unwrap()));
    }

    #[test]
    fn evaluation_examples() {
        let mut dxdy = RationalForm::zero(2, 2);
        dxdy.set_term(vec![0, 1], RatFn::constant(2, Rat::one()));
        let e1 = vec![rint(1), rint(0)];
        let e2 = vec![rint(0), rint(1)];
        let at = [rint(7), rint(9)];
        assert_eq!(evaluate(&dxdy, &at, &[e1.clone(), e2.clone()]).unwrap(), rint(1));
        assert_eq!(evaluate(&dxdy, &at, &[e2.clone(), e1.clone()]).unwrap(), rint(-1));
        // x dx^dy at (2,0)
        let xdxdy = dxdy.scale(&xvar());
        assert_eq!(evaluate(&xdxdy, &[rint(2), rint(0)], &[e1, e2]).unwrap(), rint(2));
    }

    #[test]
    fn pole_detected() {
        let f = RatFn::new(Poly::one(1), Poly::var(1, 0));
        let w = RationalForm::function(1, f);
        assert!(matches!(
            evaluate(&w, &[rint(0)], &[]),
            Err(FormsError::Pole { .. })
        ));
    }

    #[test]
    fn faa_di_bruno_univariate() {
        // f(x) = x^2, g(y) = y^3, beta = (1), x0 = 1 -> d/dx x^6 = 6
        let f = PolyMap::new(1, vec![RatFn::var(1, 0).pow_u32(2)]);
        let g = RatFn::var(1, 0).pow_u32(3);
        let v = faa_di_bruno(&g, &f, &[1], &[rint(1)]).unwrap();
        assert_eq!(v, rint(6));
        // second derivative of x^6 at x0: 30 x0^4
        let v2 = faa_di_bruno(&g, &f, &[2], &[rint(2)]).unwrap();
        assert_eq!(v2, rint(30 * 16));
        assert_eq!(v2, composite_partial(&g, &f, &[2], &[rint(2)]).unwrap());
    }

    #[test]
    fn faa_di_bruno_linear_outer_is_chain_rule() {
        // g linear: only first-order terms survive
        let f = PolyMap::new(2, vec![
            RatFn::var(2, 0).mul(&RatFn::var(2, 1)),
            RatFn::var(2, 1).pow_u32(3),
        ]);
        let g = RatFn::var(2, 0).scale(&rint(5)).add(&RatFn::var(2, 1).scale(&rint(-2)));
        let x0 = [rat(1, 2), rint(3)];
        let beta = [1u32, 0];
        let lhs = faa_di_bruno(&g, &f, &beta, &x0).unwrap();
        let rhs = composite_partial(&g, &f, &beta, &x0).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn faa_di_bruno_mixed_partial() {
        // f(x1,x2) = x1 x2, g(y) = y^2, beta=(1,1), x0=(1,1):
        // d^2 (x1^2 x2^2) / dx1 dx2 = 4 x1 x2 -> 4
        let f = PolyMap::new(2, vec![RatFn::var(2, 0).mul(&RatFn::var(2, 1))]);
        let g = RatFn::var(1, 0).pow_u32(2);
        let v = faa_di_bruno(&g, &f, &[1, 1], &[rint(1), rint(1)]).unwrap();
        assert_eq!(v, rint(4));
    }

    #[test]
    fn faa_di_bruno_matches_direct_on_rational_g() {
        // g with a denominator, |beta| = 3
        let g = RatFn::new(
            Poly::var(2, 0),
            Poly::one(2).add(&Poly::var(2, 1).pow(2)),
        );
        let f = PolyMap::new(2, vec![
            RatFn::var(2, 0).add(&RatFn::var(2, 1).pow_u32(2)),
            RatFn::var(2, 0).mul(&RatFn::var(2, 1)),
        ]);
        let x0 = [rat(1, 3), rat(-1, 2)];
        for beta in [[2u32, 1], [1, 2], [3, 0], [0, 3], [2, 2]] {
            let lhs = faa_di_bruno(&g, &f, &beta, &x0).unwrap();
            let rhs = composite_partial(&g, &f, &beta, &x0).unwrap();
            assert_eq!(lhs, rhs, "mismatch at beta={beta:?}");
        }
    }

    #[test]
    fn faa_di_bruno_rejects_order_zero() {
        let f = PolyMap::identity(1);
        let g = RatFn::var(1, 0);
        assert!(matches!(
            faa_di_bruno(&g, &f, &[0], &[rint(0)]),
            Err(FormsError::EmptyMultiIndex)
        ));
    }
}
