//! Exact multivariate polynomials and rational functions over the rationals.
//!
//! Polynomials are kept in canonical form: a sorted monomial map with no zero
//! coefficients. Rational functions are reduced by a primitive-PRS gcd and
//! their denominators are sign-normalized, so equality of canonical forms is
//! structural equality; cross-multiplied comparison is available as a second,
//! independent route.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rat;

/// Multivariate polynomial with exact rational coefficients.
///
/// `terms` maps exponent vectors (length `nvars`) to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&default_names(self.nvars)))
    }
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| alloc::format!("x{i}")).collect()
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rat::one())
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(exps, Rat::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "exponent arity mismatch");
            p.add_term(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut n: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Poly {
        assert!(i < self.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[i] -= 1;
            out.add_term(exps, c * Rat::from(BigInt::from(e[i])));
        }
        out
    }

    /// Iterated partial derivative by a multi-index.
    pub fn partial_multi(&self, beta: &[u32]) -> Poly {
        assert_eq!(beta.len(), self.nvars);
        let mut p = self.clone();
        for (i, &b) in beta.iter().enumerate() {
            for _ in 0..b {
                p = p.partial(i);
            }
        }
        p
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= &x[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.nvars);
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= x[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute polynomials for the variables.
    pub fn compose(&self, args: &[Poly]) -> Poly {
        assert_eq!(args.len(), self.nvars);
        let out_vars = args.first().map_or(0, Poly::nvars);
        assert!(args.iter().all(|a| a.nvars() == out_vars));
        let mut acc = Poly::zero(out_vars);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(out_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&args[i].pow(k));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute rational functions for the variables.
    pub fn compose_ratfn(&self, args: &[RatFn]) -> RatFn {
        assert_eq!(args.len(), self.nvars);
        let out_vars = args.first().map_or(0, RatFn::nvars);
        let mut acc = RatFn::zero(out_vars);
        for (e, c) in &self.terms {
            let mut t = RatFn::constant(out_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&args[i].pow_u32(k));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Degree in variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Exact division; `None` when the divisor does not divide exactly.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert_eq!(self.nvars, d.nvars);
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quo = Poly::zero(self.nvars);
        let (dlead_e, dlead_c) = d.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        while !rem.is_zero() {
            let (rlead_e, rlead_c) = {
                let (e, c) = rem.terms.iter().next_back().unwrap();
                (e.clone(), c.clone())
            };
            let mut qe = Vec::with_capacity(self.nvars);
            for (a, b) in rlead_e.iter().zip(&dlead_e) {
                if a < b {
                    return None;
                }
                qe.push(a - b);
            }
            let qc = rlead_c / &dlead_c;
            let mut mono = Poly::zero(self.nvars);
            mono.terms.insert(qe, qc);
            quo = quo.add(&mono);
            rem = rem.sub(&mono.mul(d));
        }
        Some(quo)
    }

    /// Leading coefficient under the monomial order.
    fn leading_coeff(&self) -> Rat {
        self.terms.values().next_back().cloned().unwrap_or_else(Rat::zero)
    }

    /// Write the polynomial as univariate in `x_k`: coefficient polynomials by
    /// exponent of `x_k`.
    fn coeffs_in(&self, k: usize) -> Vec<Poly> {
        let deg = self.degree_in(k) as usize;
        let mut coeffs = vec![Poly::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let j = e[k] as usize;
            let mut exps = e.clone();
            exps[k] = 0;
            coeffs[j].add_term(exps, c.clone());
        }
        coeffs
    }

    fn from_coeffs_in(nvars: usize, k: usize, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero(nvars);
        for (j, c) in coeffs.iter().enumerate() {
            for (e, coef) in &c.terms {
                let mut exps = e.clone();
                exps[k] += j as u32;
                out.add_term(exps, coef.clone());
            }
        }
        out
    }

    /// Greatest common divisor, normalized to an integer-primitive polynomial
    /// with positive leading coefficient.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let g = gcd_inner(self, rhs);
        normalize_sign(&g)
    }

    /// Render with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            } else if c.is_negative() {
                out.push('-');
            }
            let abs = c.abs();
            let monos: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        names[v].clone()
                    } else {
                        alloc::format!("{}^{}", names[v], k)
                    }
                })
                .collect();
            if monos.is_empty() {
                out.push_str(&alloc::format!("{abs}"));
            } else {
                if !abs.is_one() {
                    out.push_str(&alloc::format!("{abs}*"));
                }
                out.push_str(&monos.join("*"));
            }
        }
        out
    }
}

/// Sign-normalize: make the leading coefficient positive and clear rational
/// content down to an integer-primitive polynomial.
fn normalize_sign(p: &Poly) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let content = rational_content(p);
    let mut scaled = p.scale(&content.recip());
    if scaled.leading_coeff().is_negative() {
        scaled = scaled.neg();
    }
    scaled
}

/// gcd of numerators over lcm of denominators; positive.
fn rational_content(p: &Poly) -> Rat {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for c in p.terms.values() {
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    if num_gcd.is_zero() {
        return Rat::one();
    }
    Rat::new(num_gcd, den_lcm)
}

fn gcd_inner(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.nvars());
    }
    // Main variable: highest-indexed variable occurring in either operand.
    let k = (0..a.nvars())
        .rev()
        .find(|&i| a.degree_in(i) > 0 || b.degree_in(i) > 0)
        .expect("nonconstant polynomial must mention a variable");
    if a.degree_in(k) == 0 || b.degree_in(k) == 0 {
        // One operand is free of x_k: gcd divides its content in x_k.
        let (free, other) = if a.degree_in(k) == 0 { (a, b) } else { (b, a) };
        let cont = content_in(other, k);
        return gcd_inner(free, &cont);
    }
    let ca = content_in(a, k);
    let cb = content_in(b, k);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let cont_gcd = gcd_inner(&ca, &cb);
    let prim_gcd = primitive_prs(&pa, &pb, k);
    cont_gcd.mul(&prim_gcd)
}

/// gcd of the coefficients of `p` viewed as univariate in `x_k`.
fn content_in(p: &Poly, k: usize) -> Poly {
    let coeffs = p.coeffs_in(k);
    let mut g = Poly::zero(p.nvars());
    for c in &coeffs {
        if !c.is_zero() {
            g = gcd_inner(&g, c);
        }
    }
    g
}

/// Primitive polynomial remainder sequence in `x_k` on x_k-primitive inputs.
fn primitive_prs(a: &Poly, b: &Poly, k: usize) -> Poly {
    let mut f = a.clone();
    let mut g = b.clone();
    if f.degree_in(k) < g.degree_in(k) {
        core::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = pseudo_rem(&f, &g, k);
        if r.is_zero() {
            let cont = content_in(&g, k);
            return g.div_exact(&cont).expect("content divides");
        }
        if r.degree_in(k) == 0 {
            return Poly::one(a.nvars());
        }
        let cont = content_in(&r, k);
        f = g;
        g = r.div_exact(&cont).expect("content divides");
    }
}

/// Pseudo-remainder of `a` by `b` in the variable `x_k`.
fn pseudo_rem(a: &Poly, b: &Poly, k: usize) -> Poly {
    let da = a.degree_in(k);
    let db = b.degree_in(k);
    assert!(db > 0 && da >= db);
    let bcs = b.coeffs_in(k);
    let lb = bcs.last().unwrap().clone();
    let mut rem = a.clone();
    while !rem.is_zero() && rem.degree_in(k) >= db {
        let dr = rem.degree_in(k);
        let rcs = rem.coeffs_in(k);
        let lr = rcs.last().unwrap().clone();
        // rem <- lb*rem - lr * x_k^(dr-db) * b
        let shift = Poly::from_coeffs_in(a.nvars(), k, &{
            let mut cs = vec![Poly::zero(a.nvars()); (dr - db) as usize + 1];
            *cs.last_mut().unwrap() = lr;
            cs
        });
        rem = rem.mul(&lb).sub(&shift.mul(b));
    }
    rem
}

/// Rational function in canonical reduced form.
///
/// Invariants: the denominator is nonzero, gcd(num, den) = 1 and the
/// denominator is integer-primitive with positive leading coefficient.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().map(|c| c.is_one()).unwrap_or(false) {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut rf = RatFn { num, den };
        rf.reduce();
        rf
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RatFn { num: p, den: Poly::one(n) }
    }

    pub fn zero(nvars: usize) -> Self {
        RatFn::from_poly(Poly::zero(nvars))
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        RatFn::from_poly(Poly::constant(nvars, c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        RatFn::from_poly(Poly::var(nvars, i))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is constant (no poles).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_poly(&self) -> Option<Poly> {
        let c = self.den.as_constant()?;
        Some(self.num.scale(&c.recip()))
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one(self.num.nvars());
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_constant() {
            self.num = self.num.div_exact(&g).expect("gcd divides numerator");
            self.den = self.den.div_exact(&g).expect("gcd divides denominator");
        }
        // Normalize the denominator to integer-primitive, positive leading term.
        let c = rational_content(&self.den);
        let mut scale = c.recip();
        if self.den.leading_coeff().is_negative() {
            scale = -scale;
        }
        self.den = self.den.scale(&scale);
        self.num = self.num.scale(&scale);
    }

    pub fn add(&self, rhs: &RatFn) -> RatFn {
        if self.den == rhs.den {
            return RatFn::new(self.num.add(&rhs.num), self.den.clone());
        }
        // Combine over the lcm of the denominators; Cech sums share large
        // denominator factors and blow up under blind cross-multiplication.
        let g = self.den.gcd(&rhs.den);
        if !g.is_constant() {
            let u = self.den.div_exact(&g).expect("gcd divides");
            let v = rhs.den.div_exact(&g).expect("gcd divides");
            return RatFn::new(
                self.num.mul(&v).add(&rhs.num.mul(&u)),
                self.den.mul(&v),
            );
        }
        RatFn::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &RatFn) -> RatFn {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &RatFn) -> RatFn {
        RatFn::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn scale(&self, c: &Rat) -> RatFn {
        RatFn::new(self.num.scale(c), self.den.clone())
    }

    pub fn div(&self, rhs: &RatFn) -> RatFn {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RatFn::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    pub fn recip(&self) -> RatFn {
        assert!(!self.is_zero());
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn pow_u32(&self, n: u32) -> RatFn {
        RatFn { num: self.num.pow(n), den: self.den.pow(n) }
    }

    /// Quotient-rule partial derivative.
    pub fn partial(&self, i: usize) -> RatFn {
        let dn = self.num.partial(i);
        let dd = self.den.partial(i);
        if dd.is_zero() {
            return RatFn::new(dn, self.den.clone());
        }
        RatFn::new(
            dn.mul(&self.den).sub(&self.num.mul(&dd)),
            self.den.mul(&self.den),
        )
    }

    /// Exact evaluation; `None` at a pole of the stored denominator.
    pub fn eval(&self, x: &[Rat]) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    /// Substitute rational functions for the variables.
    pub fn compose(&self, args: &[RatFn]) -> RatFn {
        let n = self.num.compose_ratfn(args);
        let d = self.den.compose_ratfn(args);
        assert!(!d.is_zero(), "composition lands in a pole locus");
        n.div(&d)
    }

    /// Structural equality is canonical; this is the independent
    /// cross-multiplication route.
    pub fn eq_cross(&self, rhs: &RatFn) -> bool {
        self.num.mul(&rhs.den) == rhs.num.mul(&self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};
    use proptest::prelude::*;

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }

    #[test]
    fn arithmetic_basics() {
        let p = x().mul(&x()).add(&y().scale(&rint(3)));
        let q = x().sub(&y());
        let s = p.add(&q);
        assert_eq!(s.eval(&[rint(2), rint(5)]), rint(4 + 15 + 2 - 5));
        assert_eq!(p.partial(0), x().scale(&rint(2)));
        assert_eq!(p.partial(1), Poly::constant(2, rint(3)));
    }

    #[test]
    fn div_exact_roundtrip() {
        let p = x().add(&y()).mul(&x().sub(&y()));
        let d = x().add(&y());
        let q = p.div_exact(&d).unwrap();
        assert_eq!(q, x().sub(&y()));
        assert!(p.div_exact(&x().add(&Poly::one(2))).is_none());
    }

    #[test]
    fn gcd_cancels_common_factor() {
        let common = x().mul(&x()).add(&y().mul(&y())).add(&Poly::one(2));
        let a = common.mul(&x());
        let b = common.mul(&y().add(&Poly::one(2)));
        let g = a.gcd(&b);
        assert_eq!(g, common);
    }

    #[test]
    fn ratfn_reduce_and_eval() {
        let num = x().mul(&x()).sub(&y().mul(&y()));
        let den = x().sub(&y());
        let f = RatFn::new(num, den);
        assert_eq!(f, RatFn::from_poly(x().add(&y())));
        assert_eq!(f.eval(&[rint(1), rint(2)]), Some(rint(3)));
        let pole = RatFn::new(Poly::one(2), x().clone());
        assert_eq!(pole.eval(&[rint(0), rint(7)]), None);
    }

    #[test]
    fn quotient_rule() {
        // d/dx (x / (1+x^2+y^2)) = (1+y^2-x^2)/(1+x^2+y^2)^2
        let den = Poly::one(2).add(&x().mul(&x())).add(&y().mul(&y()));
        let f = RatFn::new(x().clone(), den.clone());
        let df = f.partial(0);
        let expected = RatFn::new(
            Poly::one(2).add(&y().mul(&y())).sub(&x().mul(&x())),
            den.mul(&den),
        );
        assert_eq!(df, expected);
    }

    #[test]
    fn compose_chain() {
        // f(x,y) = x/y composed with (t^2, 1+t^2) -> t^2/(1+t^2)
        let f = RatFn::new(x().clone(), y().clone());
        let t = RatFn::var(1, 0);
        let g = f.compose(&[t.mul(&t), RatFn::from_poly(Poly::one(1)).add(&t.mul(&t))]);
        let expect = RatFn::new(
            Poly::var(1, 0).pow(2),
            Poly::one(1).add(&Poly::var(1, 0).pow(2)),
        );
        assert_eq!(g, expect);
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((0u32..3, 0u32..3, -4i64..5), 0..5).prop_map(|ts| {
            Poly::from_terms(2, ts.into_iter().map(|(a, b, c)| (vec![a, b], rint(c))))
        })
    }

    proptest! {
        #[test]
        fn mul_then_div_roundtrips(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!q.is_zero());
            let prod = p.mul(&q);
            prop_assert_eq!(prod.div_exact(&q).unwrap(), p);
        }

        #[test]
        fn gcd_divides_both(p in arb_poly(), q in arb_poly()) {
            let g = p.gcd(&q);
            if !p.is_zero() || !q.is_zero() {
                prop_assert!(p.div_exact(&g).is_some());
                prop_assert!(q.div_exact(&g).is_some());
            }
        }

        #[test]
        fn leibniz_rule(p in arb_poly(), q in arb_poly()) {
            let lhs = p.mul(&q).partial(0);
            let rhs = p.partial(0).mul(&q).add(&p.mul(&q.partial(0)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ratfn_add_matches_eval(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!q.is_zero());
            let f = RatFn::new(p.clone(), q.clone());
            let s = f.add(&f);
            let pt = [rat(1, 3), rat(2, 7)];
            if let (Some(a), Some(b)) = (f.eval(&pt), s.eval(&pt)) {
                prop_assert_eq!(a * rint(2), b);
            }
        }
    }

    #[test]
    fn deep_gcd_three_vars() {
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let z = Poly::var(3, 2);
        let f = x.mul(&y).add(&z.pow(2)).add(&Poly::one(3));
        let a = f.pow(2).mul(&x.add(&y));
        let b = f.mul(&x.add(&y)).mul(&z.sub(&y));
        let g = a.gcd(&b);
        assert_eq!(g, f.mul(&x.add(&y)));
    }
}
