//! Cech and Cech-Deligne cochain complexes on finite good covers: cocycle
//! verification in degrees 1 and 2, the total differential, curvature,
//! holonomy along chart-decomposed loops, and Chern numbers by winding
//! quadrature.
//!
//! Circle-valued transition data is stored as an unnormalized complex
//! polynomial `h = a + ib`; the function it denotes is `g = h/|h|`. This
//! keeps `|g| = 1` by construction, makes `dlog g = (a db - b da)/(a^2+b^2)`
//! an exactly rational 1-form, and represents every integer winding (an
//! exactly unit-modulus rational function can only wind evenly).
//!
//! The total differential is `D = delta + (-1)^p d` in Cech degree p, the
//! convention under which the stated degree-1 and degree-2 cocycle
//! conditions are exactly the vanishing of `D` and coboundaries verify.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::forms::{evaluate_f64, exterior_d, pullback, PolyMap, RationalForm};
use crate::poly::{Poly, RatFn};
use crate::quad;
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeligneError {
    MissingDomain { key: Vec<usize> },
    MissingValue { slot: String, key: Vec<usize> },
    DimensionMismatch { detail: String },
    InconsistentInclusions { key: Vec<usize>, detail: String },
    BadPath { detail: String },
    NotACocycle { detail: String },
}

impl fmt::Display for DeligneError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeligneError::MissingDomain { key } => {
                write!(f, "cover has no intersection domain for {key:?}")
            }
            DeligneError::MissingValue { slot, key } => {
                write!(f, "cochain is missing its {slot} value on {key:?}")
            }
            DeligneError::DimensionMismatch { detail } => write!(f, "{detail}"),
            DeligneError::InconsistentInclusions { key, detail } => {
                write!(f, "inclusions into {key:?} do not compose: {detail}")
            }
            DeligneError::BadPath { detail } => write!(f, "bad path: {detail}"),
            DeligneError::NotACocycle { detail } => write!(f, "not a cocycle: {detail}"),
        }
    }
}

impl core::error::Error for DeligneError {}

/// Circle-valued function on a chart domain, represented by an unnormalized
/// nonvanishing complex polynomial; the function is `h / |h|`.
#[derive(Clone, PartialEq, Eq)]
pub struct CircleFn {
    re: Poly,
    im: Poly,
}

impl fmt::Debug for CircleFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + i {:?})/|.|", self.re, self.im)
    }
}

impl CircleFn {
    pub fn new(re: Poly, im: Poly) -> Self {
        assert_eq!(re.nvars(), im.nvars());
        assert!(!(re.is_zero() && im.is_zero()), "zero is not a circle value");
        CircleFn { re, im }
    }

    pub fn one(nvars: usize) -> Self {
        CircleFn { re: Poly::one(nvars), im: Poly::zero(nvars) }
    }

    pub fn nvars(&self) -> usize {
        self.re.nvars()
    }

    pub fn re(&self) -> &Poly {
        &self.re
    }

    pub fn im(&self) -> &Poly {
        &self.im
    }

    /// `(x + iy)^k` on a 2-dimensional chart (k may be negative: conjugate).
    pub fn winding_monomial(nvars: usize, x: usize, y: usize, k: i64) -> Self {
        let w = CircleFn::new(Poly::var(nvars, x), Poly::var(nvars, y));
        let mut acc = CircleFn::one(nvars);
        let base = if k >= 0 { w } else { w.inv() };
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn mul(&self, rhs: &CircleFn) -> CircleFn {
        CircleFn {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    /// The inverse of a unit-modulus function is its conjugate.
    pub fn inv(&self) -> CircleFn {
        CircleFn { re: self.re.clone(), im: self.im.neg() }
    }

    /// Exactly 1 as a normalized function: imaginary part vanishes
    /// identically and the real part is positive (checked on samples).
    pub fn is_one(&self, sample_points: &[Vec<f64>]) -> bool {
        if !self.im.is_zero() {
            return false;
        }
        sample_points.iter().all(|p| self.re.eval_f64(p) > 0.0)
    }

    /// Normalized value at an f64 point.
    pub fn eval_f64(&self, x: &[f64]) -> (f64, f64) {
        let re = self.re.eval_f64(x);
        let im = self.im.eval_f64(x);
        let n = quad::cabs((re, im));
        (re / n, im / n)
    }

    /// Normalized value at an exact rational point (f64 output).
    pub fn eval_rat(&self, x: &[Rat]) -> (f64, f64) {
        let xf: Vec<f64> = x.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        self.eval_f64(&xf)
    }

    /// `d(arg h) = (a db - b da) / (a^2 + b^2)`, an exact rational 1-form.
    /// This is 2 pi times the (1/2 pi i) g^{-1} dg normalization; the 2 pi
    /// is absorbed into the stored form units.
    pub fn dlog(&self) -> RationalForm {
        let n = self.nvars();
        let den = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let mut out = RationalForm::zero(n, 1);
        for j in 0..n {
            let num = self.re.mul(&self.im.partial(j)).sub(&self.im.mul(&self.re.partial(j)));
            if !num.is_zero() {
                out.add_term(vec![j], RatFn::new(num, den.clone()));
            }
        }
        out
    }

    /// Composition with a rational chart map (the result is again an
    /// unnormalized representative; a common real denominator is absorbed by
    /// multiplying both parts with it, which preserves the normalized value
    /// up to its sign and the sign with it).
    pub fn compose(&self, f: &PolyMap) -> CircleFn {
        let re = self.re_as_ratfn().compose(&f.components);
        let im = self.im_as_ratfn().compose(&f.components);
        // common denominator d: (re.num * im.den + i im.num * re.den) * d
        let d = re.den().mul(im.den());
        let a = re.num().mul(im.den());
        let b = im.num().mul(re.den());
        CircleFn { re: a.mul(&d), im: b.mul(&d) }
    }

    fn re_as_ratfn(&self) -> RatFn {
        RatFn::from_poly(self.re.clone())
    }

    fn im_as_ratfn(&self) -> RatFn {
        RatFn::from_poly(self.im.clone())
    }
}

/// Finite good cover: chart domains, nonempty-intersection domains up to
/// depth 4, and one inclusion map per codimension-1 face relation.
#[derive(Clone, Debug, Default)]
pub struct GoodCover {
    chart_dims: Vec<usize>,
    /// Intersection domains for sorted index sets of size >= 2.
    domains: BTreeMap<Vec<usize>, usize>,
    /// Inclusion from the domain of S into the domain of S minus one chart.
    faces: BTreeMap<(Vec<usize>, Vec<usize>), PolyMap>,
}

impl GoodCover {
    pub fn new(chart_dims: Vec<usize>) -> Self {
        GoodCover { chart_dims, domains: BTreeMap::new(), faces: BTreeMap::new() }
    }

    pub fn num_charts(&self) -> usize {
        self.chart_dims.len()
    }

    pub fn chart_dim(&self, i: usize) -> usize {
        self.chart_dims[i]
    }

    /// Register an intersection domain together with its inclusions into
    /// every facet (subsets of size one less; for pairs, into the charts).
    pub fn add_intersection(
        &mut self,
        key: Vec<usize>,
        dim: usize,
        facet_maps: Vec<(Vec<usize>, PolyMap)>,
    ) -> Result<(), DeligneError> {
        let mut sorted = key.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != key.len() {
            return Err(DeligneError::DimensionMismatch {
                detail: format!("intersection key {key:?} must be strictly increasing"),
            });
        }
        for (facet, map) in &facet_maps {
            if map.domain_dim != dim {
                return Err(DeligneError::DimensionMismatch {
                    detail: format!(
                        "inclusion out of {key:?} has domain dim {}, expected {dim}",
                        map.domain_dim
                    ),
                });
            }
            let expected = self.dim_of(facet)?;
            if map.codomain_dim != expected {
                return Err(DeligneError::DimensionMismatch {
                    detail: format!(
                        "inclusion {key:?} -> {facet:?} lands in dim {}, expected {expected}",
                        map.codomain_dim
                    ),
                });
            }
        }
        self.domains.insert(sorted.clone(), dim);
        for (facet, map) in facet_maps {
            self.faces.insert((sorted.clone(), facet), map);
        }
        Ok(())
    }

    pub fn has_domain(&self, key: &[usize]) -> bool {
        match key.len() {
            0 => false,
            1 => key[0] < self.chart_dims.len(),
            _ => self.domains.contains_key(key),
        }
    }

    pub fn dim_of(&self, key: &[usize]) -> Result<usize, DeligneError> {
        match key.len() {
            1 => {
                if key[0] < self.chart_dims.len() {
                    Ok(self.chart_dims[key[0]])
                } else {
                    Err(DeligneError::MissingDomain { key: key.to_vec() })
                }
            }
            _ => self
                .domains
                .get(key)
                .copied()
                .ok_or(DeligneError::MissingDomain { key: key.to_vec() }),
        }
    }

    /// All registered index sets of the given size (singletons included).
    pub fn subsets(&self, size: usize) -> Vec<Vec<usize>> {
        if size == 1 {
            return (0..self.chart_dims.len()).map(|i| vec![i]).collect();
        }
        self.domains.keys().filter(|k| k.len() == size).cloned().collect()
    }

    /// Restriction map from the domain of `sub` into the domain of `sup`,
    /// where `sup` is a subset of `sub` (composition of facet inclusions).
    pub fn restriction(&self, sub: &[usize], sup: &[usize]) -> Result<PolyMap, DeligneError> {
        assert!(sup.iter().all(|i| sub.contains(i)), "restriction target must be a subset");
        if sub == sup {
            return Ok(PolyMap::identity(self.dim_of(sub)?));
        }
        // Remove extra charts one at a time (any order; consistency is
        // checked separately).
        let extra: Vec<usize> =
            sub.iter().copied().filter(|i| !sup.contains(i)).collect();
        let mut current: Vec<usize> = sub.to_vec();
        let mut map: Option<PolyMap> = None;
        for gone in extra {
            let next: Vec<usize> = current.iter().copied().filter(|&i| i != gone).collect();
            let step = self
                .faces
                .get(&(current.clone(), next.clone()))
                .ok_or(DeligneError::MissingDomain { key: next.clone() })?;
            map = Some(match map {
                None => step.clone(),
                Some(m) => step.compose(&m),
            });
            current = next;
        }
        Ok(map.expect("at least one step"))
    }

    /// Exact compatibility of inclusion maps: for every registered domain of
    /// size >= 3, all orders of removing two charts compose to the same map.
    pub fn check_compositions(&self) -> Result<(), DeligneError> {
        for key in self.domains.keys() {
            if key.len() < 3 {
                continue;
            }
            for a in key {
                for b in key {
                    if a >= b {
                        continue;
                    }
                    let minus_a: Vec<usize> =
                        key.iter().copied().filter(|i| i != a).collect();
                    let minus_b: Vec<usize> =
                        key.iter().copied().filter(|i| i != b).collect();
                    let minus_ab: Vec<usize> =
                        minus_a.iter().copied().filter(|i| i != b).collect();
                    let via_a = self
                        .faces
                        .get(&(minus_a.clone(), minus_ab.clone()))
                        .and_then(|second| {
                            self.faces
                                .get(&(key.clone(), minus_a.clone()))
                                .map(|first| second.compose(first))
                        });
                    let via_b = self
                        .faces
                        .get(&(minus_b.clone(), minus_ab.clone()))
                        .and_then(|second| {
                            self.faces
                                .get(&(key.clone(), minus_b.clone()))
                                .map(|first| second.compose(first))
                        });
                    match (via_a, via_b) {
                        (Some(x), Some(y)) => {
                            if x != y {
                                return Err(DeligneError::InconsistentInclusions {
                                    key: key.clone(),
                                    detail: format!("dropping {a} then {b} vs {b} then {a}"),
                                });
                            }
                        }
                        _ => {
                            return Err(DeligneError::InconsistentInclusions {
                                key: key.clone(),
                                detail: "missing facet inclusion".to_string(),
                            })
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Mixed Cech-Deligne cochain of one total degree on a cover, in the
/// truncated complex with top form degree `truncation`.
#[derive(Clone, Debug)]
pub struct MixedCochain {
    pub truncation: usize,
    pub total_degree: usize,
    /// Slot (total_degree, 0): circle functions on (total_degree+1)-subsets.
    pub fun: BTreeMap<Vec<usize>, CircleFn>,
    /// Slot (p, total_degree - p) for p < total_degree: forms per subset.
    pub forms: BTreeMap<usize, BTreeMap<Vec<usize>, RationalForm>>,
}

impl MixedCochain {
    pub fn new(truncation: usize, total_degree: usize) -> Self {
        MixedCochain {
            truncation,
            total_degree,
            fun: BTreeMap::new(),
            forms: BTreeMap::new(),
        }
    }

    pub fn set_fun(&mut self, key: Vec<usize>, g: CircleFn) {
        assert_eq!(key.len(), self.total_degree + 1, "fun slot lives on (d+1)-subsets");
        self.fun.insert(key, g);
    }

    pub fn set_form(&mut self, p: usize, key: Vec<usize>, omega: RationalForm) {
        assert!(p < self.total_degree || (self.total_degree == 0 && p == 0));
        assert_eq!(key.len(), p + 1);
        assert_eq!(omega.degree(), self.total_degree - p);
        assert!(self.total_degree - p <= self.truncation, "form degree beyond truncation");
        self.forms.entry(p).or_default().insert(key, omega);
    }

    pub fn form(&self, p: usize, key: &[usize]) -> Option<&RationalForm> {
        self.forms.get(&p).and_then(|m| m.get(key))
    }
}

/// Cech coboundary of a family of forms in Cech degree p (alternating
/// pullback sum on each registered (p+2)-subset).
pub fn cech_delta_forms(
    cover: &GoodCover,
    p: usize,
    values: &BTreeMap<Vec<usize>, RationalForm>,
    form_degree: usize,
) -> Result<BTreeMap<Vec<usize>, RationalForm>, DeligneError> {
    let mut out = BTreeMap::new();
    for key in cover.subsets(p + 2) {
        let dim = cover.dim_of(&key)?;
        let mut acc = RationalForm::zero(dim, form_degree);
        for (j, _) in key.iter().enumerate() {
            let mut facet = key.clone();
            facet.remove(j);
            let value = values.get(&facet).ok_or(DeligneError::MissingValue {
                slot: format!("form (p={p})"),
                key: facet.clone(),
            })?;
            let restricted = pullback(value, &cover.restriction(&key, &facet)?)
                .map_err(|e| DeligneError::DimensionMismatch { detail: format!("{e}") })?;
            acc = if j % 2 == 0 { acc.add(&restricted) } else { acc.sub(&restricted) };
        }
        out.insert(key, acc);
    }
    Ok(out)
}

/// Multiplicative Cech coboundary of a family of circle functions in Cech
/// degree p.
pub fn cech_delta_funs(
    cover: &GoodCover,
    p: usize,
    values: &BTreeMap<Vec<usize>, CircleFn>,
) -> Result<BTreeMap<Vec<usize>, CircleFn>, DeligneError> {
    let mut out = BTreeMap::new();
    for key in cover.subsets(p + 2) {
        let dim = cover.dim_of(&key)?;
        let mut acc = CircleFn::one(dim);
        for (j, _) in key.iter().enumerate() {
            let mut facet = key.clone();
            facet.remove(j);
            let value = values.get(&facet).ok_or(DeligneError::MissingValue {
                slot: "transition function".to_string(),
                key: facet.clone(),
            })?;
            let restricted = value.compose(&cover.restriction(&key, &facet)?);
            acc = acc.mul(&if j % 2 == 0 { restricted } else { restricted.inv() });
        }
        out.insert(key, acc);
    }
    Ok(out)
}

/// Total differential `D = delta + (-1)^p d` of the truncated double
/// complex; the vertical differential on the function row is dlog and form
/// components beyond the truncation degree are dropped.
pub fn total_differential(
    cover: &GoodCover,
    c: &MixedCochain,
) -> Result<MixedCochain, DeligneError> {
    let d = c.total_degree;
    let mut out = MixedCochain::new(c.truncation, d + 1);
    // delta of the function slot -> (d+1, 0)
    if !c.fun.is_empty() || d == 0 {
        out.fun = cech_delta_funs(cover, d, &c.fun)?;
    }
    // dlog of the function slot -> (d, 1), sign (-1)^d
    if 1 <= c.truncation {
        let mut slot: BTreeMap<Vec<usize>, RationalForm> = BTreeMap::new();
        for (key, g) in &c.fun {
            let mut form = g.dlog();
            if d % 2 == 1 {
                form = form.neg();
            }
            slot.insert(key.clone(), form);
        }
        if !slot.is_empty() {
            merge_form_slot(&mut out, d, slot);
        }
    }
    for (&p, values) in &c.forms {
        let q = d - p;
        // horizontal: delta -> (p+1, q)
        let deltas = cech_delta_forms(cover, p, values, q)?;
        merge_form_slot(&mut out, p + 1, deltas);
        // vertical: (-1)^p d -> (p, q+1), truncated
        if q + 1 <= c.truncation {
            let mut slot: BTreeMap<Vec<usize>, RationalForm> = BTreeMap::new();
            for (key, omega) in values {
                let mut der = exterior_d(omega);
                if p % 2 == 1 {
                    der = der.neg();
                }
                slot.insert(key.clone(), der);
            }
            merge_form_slot(&mut out, p, slot);
        }
    }
    Ok(out)
}

fn merge_form_slot(
    out: &mut MixedCochain,
    p: usize,
    slot: BTreeMap<Vec<usize>, RationalForm>,
) {
    let entry = out.forms.entry(p).or_default();
    for (key, form) in slot {
        match entry.remove(&key) {
            None => {
                entry.insert(key, form);
            }
            Some(existing) => {
                entry.insert(key, existing.add(&form));
            }
        }
    }
}

/// Whether a mixed cochain is zero: circle parts identically 1, form parts
/// identically 0 (exact), with an f64 sampling fallback.
pub fn is_zero_cochain(cover: &GoodCover, c: &MixedCochain, opts: &VerifyOptions) -> bool {
    for (key, g) in &c.fun {
        let dim = cover.dim_of(key).unwrap_or(0);
        let pts = quad::quasi_random_points(dim, opts.samples.min(32));
        if !g.is_one(&pts) {
            return false;
        }
    }
    for values in c.forms.values() {
        for omega in values.values() {
            if !omega.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Degree-1 connection data: transition functions on pairs, 1-forms on
/// charts (the local data of a circle bundle with connection).
#[derive(Clone, Debug)]
pub struct Degree1Cochain {
    pub transitions: BTreeMap<Vec<usize>, CircleFn>,
    pub connections: Vec<RationalForm>,
}

/// Degree-2 connection data (the local data of a bundle gerbe with
/// connection and curving).
#[derive(Clone, Debug)]
pub struct Degree2Cochain {
    pub transitions: BTreeMap<Vec<usize>, CircleFn>,
    pub connections: BTreeMap<Vec<usize>, RationalForm>,
    pub curvings: Vec<RationalForm>,
}

impl Degree1Cochain {
    pub fn as_mixed(&self, truncation: usize) -> MixedCochain {
        let mut c = MixedCochain::new(truncation, 1);
        for (k, g) in &self.transitions {
            c.set_fun(k.clone(), g.clone());
        }
        for (i, a) in self.connections.iter().enumerate() {
            c.set_form(0, vec![i], a.clone());
        }
        c
    }
}

impl Degree2Cochain {
    pub fn as_mixed(&self, truncation: usize) -> MixedCochain {
        let mut c = MixedCochain::new(truncation, 2);
        for (k, g) in &self.transitions {
            c.set_fun(k.clone(), g.clone());
        }
        for (k, a) in &self.connections {
            c.set_form(1, k.clone(), a.clone());
        }
        for (i, b) in self.curvings.iter().enumerate() {
            c.set_form(0, vec![i], b.clone());
        }
        c
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub samples: usize,
    pub tolerance: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { samples: 200, tolerance: 1e-9 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    ExactPass,
    SampledPass,
    Fail,
}

#[derive(Clone, Debug)]
pub struct CheckRecord {
    pub name: String,
    pub key: Vec<usize>,
    pub status: CheckStatus,
    /// Largest sampled residual (0 for exact passes).
    pub residual: f64,
    /// A witness point for failures.
    pub witness: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub records: Vec<CheckRecord>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status != CheckStatus::Fail)
    }

    pub fn all_exact(&self) -> bool {
        self.records.iter().all(|r| r.status == CheckStatus::ExactPass)
    }
}

/// Equality check of two forms on a domain: exact first, sampling fallback.
fn check_forms_equal(
    name: &str,
    key: &[usize],
    lhs: &RationalForm,
    rhs: &RationalForm,
    dim: usize,
    opts: &VerifyOptions,
) -> CheckRecord {
    if lhs == rhs {
        return CheckRecord {
            name: name.to_string(),
            key: key.to_vec(),
            status: CheckStatus::ExactPass,
            residual: 0.0,
            witness: None,
        };
    }
    // Sampled comparison of coefficients on quasi-random points.
    let pts = quad::quasi_random_points(dim, opts.samples);
    let mut worst = 0.0f64;
    let mut witness = None;
    let diff = lhs.sub(rhs);
    for pt in &pts {
        for (_, c) in diff.terms() {
            let v = c.eval_f64(pt);
            if !v.is_finite() {
                continue; // pole of the stored denominators; skip sample
            }
            let a = libm::fabs(v);
            if a > worst {
                worst = a;
                witness = Some(pt.clone());
            }
        }
    }
    CheckRecord {
        name: name.to_string(),
        key: key.to_vec(),
        status: if worst <= opts.tolerance { CheckStatus::SampledPass } else { CheckStatus::Fail },
        residual: worst,
        witness: if worst <= opts.tolerance { None } else { witness },
    }
}

fn check_fun_is_one(
    name: &str,
    key: &[usize],
    g: &CircleFn,
    dim: usize,
    opts: &VerifyOptions,
) -> CheckRecord {
    let pts = quad::quasi_random_points(dim, opts.samples);
    if g.is_one(&pts) {
        return CheckRecord {
            name: name.to_string(),
            key: key.to_vec(),
            status: CheckStatus::ExactPass,
            residual: 0.0,
            witness: None,
        };
    }
    let mut worst = 0.0f64;
    let mut witness = None;
    for pt in &pts {
        let (re, im) = g.eval_f64(pt);
        if !(re.is_finite() && im.is_finite()) {
            continue;
        }
        let res = libm::hypot(re - 1.0, im);
        if res > worst {
            worst = res;
            witness = Some(pt.clone());
        }
    }
    CheckRecord {
        name: name.to_string(),
        key: key.to_vec(),
        status: if worst <= opts.tolerance { CheckStatus::SampledPass } else { CheckStatus::Fail },
        residual: worst,
        witness: if worst <= opts.tolerance { None } else { witness },
    }
}

fn lookup_transition<'a>(
    transitions: &'a BTreeMap<Vec<usize>, CircleFn>,
    key: &[usize],
) -> Result<&'a CircleFn, DeligneError> {
    transitions.get(key).ok_or(DeligneError::MissingValue {
        slot: "transition function".to_string(),
        key: key.to_vec(),
    })
}

/// Degree-1 cocycle verification: the cocycle identity on every triple and
/// the connection transformation on every pair.
pub fn verify_cocycle_deg1(
    cover: &GoodCover,
    c: &Degree1Cochain,
    opts: &VerifyOptions,
) -> Result<VerifyReport, DeligneError> {
    let mut report = VerifyReport::default();
    // g_jk g_ij = g_ik on triples
    for key in cover.subsets(3) {
        let dim = cover.dim_of(&key)?;
        let (i, j, k) = (key[0], key[1], key[2]);
        let gjk = lookup_transition(&c.transitions, &[j, k])?
            .compose(&cover.restriction(&key, &[j, k])?);
        let gij = lookup_transition(&c.transitions, &[i, j])?
            .compose(&cover.restriction(&key, &[i, j])?);
        let gik = lookup_transition(&c.transitions, &[i, k])?
            .compose(&cover.restriction(&key, &[i, k])?);
        let product = gjk.mul(&gij).mul(&gik.inv());
        report.records.push(check_fun_is_one("cocycle g_jk.g_ij = g_ik", &key, &product, dim, opts));
    }
    // A_j - A_i = dlog g_ij on pairs
    for key in cover.subsets(2) {
        let dim = cover.dim_of(&key)?;
        let (i, j) = (key[0], key[1]);
        let ai = pullback(&c.connections[i], &cover.restriction(&key, &[i])?)
            .map_err(|e| DeligneError::DimensionMismatch { detail: format!("{e}") })?;
        let aj = pullback(&c.connections[j], &cover.restriction(&key, &[j])?)
            .map_err(|e| DeligneError::DimensionMismatch { detail: format!("{e}") })?;
        let g = lookup_transition(&c.transitions, &key)?;
        report.records.push(check_forms_equal(
            "A_j - A_i = dlog g_ij",
            &key,
            &aj.sub(&ai),
            &g.dlog(),
            dim,
            opts,
        ));
    }
    Ok(report)
}

/// Degree-2 cocycle verification: three condition families (curving
/// transformation, connection cocycle, function cocycle) matching the
/// vanishing of the total differential.
pub fn verify_cocycle_deg2(
    cover: &GoodCover,
    c: &Degree2Cochain,
    opts: &VerifyOptions,
) -> Result<VerifyReport, DeligneError> {
    let mut report = VerifyReport::default();
    // dA_ij = B_j - B_i on pairs
    for key in cover.subsets(2) {
        let dim = cover.dim_of(&key)?;
        let (i, j) = (key[0], key[1]);
        let a = c.connections.get(&key).ok_or(DeligneError::MissingValue {
            slot: "connection 1-form".to_string(),
            key: key.clone(),
        })?;
        let bi = pullback(&c.curvings[i], &cover.restriction(&key, &[i])?)
            .map_err(|e| DeligneError::DimensionMismatch { detail: format!("{e}") })?;
        let bj = pullback(&c.curvings[j], &cover.restriction(&key, &[j])?)
            .map_err(|e| DeligneError::DimensionMismatch { detail: format!("{e}") })?;
        report.records.push(check_forms_equal(
            "dA_ij = B_j - B_i",
            &key,
            &exterior_d(a),
            &bj.sub(&bi),
            dim,
            opts,
        ));
    }
    // A_jk - A_ik + A_ij = -dlog g_ijk on triples (delta-consistent sign)
    for key in cover.subsets(3) {
        let dim = cover.dim_of(&key)?;
        let (i, j, k) = (key[0], key[1], key[2]);
        let restrict_form = |pair: [usize; 2]| -> Result<RationalForm, DeligneError> {
            let a = c.connections.get(pair.as_slice()).ok_or(DeligneError::MissingValue {
                slot: "connection 1-form".to_string(),
                key: pair.to_vec(),
            })?;
            pullback(a, &cover.restriction(&key, &pair)?)
                .map_err(|e| DeligneError::DimensionMismatch { detail: format!("{e}") })
        };
        let ajk = restrict_form([j, k])?;
        let aik = restrict_form([i, k])?;
        let aij = restrict_form([i, j])?;
        let g = lookup_transition(&c.transitions, &key)?;
        report.records.push(check_forms_equal(
            "A_jk - A_ik + A_ij = -dlog g_ijk",
            &key,
            &ajk.sub(&aik).add(&aij),
            &g.dlog().neg(),
            dim,
            opts,
        ));
    }
    // g_jkl g_ikl^{-1} g_ijl g_ijk^{-1} = 1 on quadruples
    for key in cover.subsets(4) {
        let dim = cover.dim_of(&key)?;
        let mut acc = CircleFn::one(dim);
        for (pos, _) in key.iter().enumerate() {
            let mut facet = key.clone();
            facet.remove(pos);
            let g = lookup_transition(&c.transitions, &facet)?
                .compose(&cover.restriction(&key, &facet)?);
            acc = acc.mul(&if pos % 2 == 0 { g } else { g.inv() });
        }
        report.records.push(check_fun_is_one(
            "g_jkl.g_ikl^-1.g_ijl.g_ijk^-1 = 1",
            &key,
            &acc,
            dim,
            opts,
        ));
    }
    Ok(report)
}

/// Curvature of a verified degree-1 cocycle: `F_i = dA_i`, together with the
/// check that the curvatures agree on overlaps.
pub fn curvature(
    cover: &GoodCover,
    c: &Degree1Cochain,
    opts: &VerifyOptions,
) -> Result<(Vec<RationalForm>, VerifyReport), DeligneError> {
    let pre = verify_cocycle_deg1(cover, c, opts)?;
    if !pre.passed() {
        return Err(DeligneError::NotACocycle {
            detail: "degree-1 verification failed; curvature undefined".to_string(),
        });
    }
    let curvatures: Vec<RationalForm> = c.connections.iter().map(exterior_d).collect();
    let mut report = VerifyReport::default();
    for key in cover.subsets(2) {
        let dim = cover.dim_of(&key)?;
        let (i, j) = (key[0], key[1]);
        let fi = pullback(&curvatures[i], &cover.restriction(&key, &[i])?)
            .map_err(|e| DeligneError::DimensionMismatch { detail: format!("{e}") })?;
        let fj = pullback(&curvatures[j], &cover.restriction(&key, &[j])?)
            .map_err(|e| DeligneError::DimensionMismatch { detail: format!("{e}") })?;
        report.records.push(check_forms_equal("F_i = F_j on overlap", &key, &fi, &fj, dim, opts));
    }
    Ok((curvatures, report))
}

/// A loop for the Chern pairing: a circle in an intersection domain,
/// traversed clockwise or counterclockwise.
#[derive(Clone, Debug)]
pub struct LoopSpec {
    pub domain: Vec<usize>,
    pub center: Vec<Rat>,
    pub radius: Rat,
    pub clockwise: bool,
}

/// Chern number: `(1/2 pi) . integral over the loop of dlog g` for the
/// two-chart transition function, by periodic trapezoid quadrature.
pub fn chern_number(
    cover: &GoodCover,
    c: &Degree1Cochain,
    loop_spec: &LoopSpec,
    samples: usize,
) -> Result<ChernResult, DeligneError> {
    let dim = cover.dim_of(&loop_spec.domain)?;
    if dim != 2 || loop_spec.center.len() != 2 {
        return Err(DeligneError::DimensionMismatch {
            detail: "chern loops live in a 2-dimensional overlap".to_string(),
        });
    }
    if loop_spec.domain.len() != 2 {
        return Err(DeligneError::BadPath {
            detail: "chern pairing needs a two-chart overlap".to_string(),
        });
    }
    let g = lookup_transition(&c.transitions, &loop_spec.domain)?
        .compose(&cover.restriction(&loop_spec.domain, &loop_spec.domain)?);
    let omega = g.dlog();
    let cx = loop_spec.center[0].to_f64().unwrap_or(f64::NAN);
    let cy = loop_spec.center[1].to_f64().unwrap_or(f64::NAN);
    let r = loop_spec.radius.to_f64().unwrap_or(f64::NAN);
    let orient = if loop_spec.clockwise { -1.0 } else { 1.0 };
    let two_pi = 2.0 * core::f64::consts::PI;
    let integral = quad::trapezoid_periodic(
        |t| {
            let theta = orient * two_pi * t;
            let x = cx + r * libm::cos(theta);
            let y = cy + r * libm::sin(theta);
            let dx = -r * two_pi * orient * libm::sin(theta);
            let dy = r * two_pi * orient * libm::cos(theta);
            evaluate_f64(&omega, &[x, y], &[vec![dx, dy]])
        },
        samples,
    );
    let raw = integral / two_pi;
    let rounded = libm::round(raw);
    Ok(ChernResult {
        raw,
        rounded: rounded as i64,
        deviation: libm::fabs(raw - rounded),
        flagged: libm::fabs(raw - rounded) > 0.01,
    })
}

#[derive(Clone, Debug)]
pub struct ChernResult {
    pub raw: f64,
    pub rounded: i64,
    pub deviation: f64,
    pub flagged: bool,
}

/// One segment of a chart-decomposed loop with its parametrization.
#[derive(Clone, Debug)]
pub enum SegmentPath {
    /// Straight segment between two rational points of the chart.
    Line { from: Vec<Rat>, to: Vec<Rat> },
    /// Circular arc: center, radius and angle range in turns.
    Arc { center: Vec<Rat>, radius: Rat, from_turn: f64, to_turn: f64 },
}

#[derive(Clone, Debug)]
pub struct PathSegment {
    pub chart: usize,
    pub path: SegmentPath,
}

/// A transition between consecutive segments: the junction point expressed
/// in intersection-domain coordinates.
#[derive(Clone, Debug)]
pub struct Transition {
    pub overlap: Vec<usize>,
    pub point: Vec<Rat>,
}

/// A closed chart-decomposed loop: segment k is followed by the transition
/// k into segment k+1 (cyclically).
#[derive(Clone, Debug)]
pub struct ChartPath {
    pub segments: Vec<PathSegment>,
    pub transitions: Vec<Transition>,
}

impl SegmentPath {
    fn eval(&self, t: f64) -> Vec<f64> {
        match self {
            SegmentPath::Line { from, to } => from
                .iter()
                .zip(to)
                .map(|(a, b)| {
                    let a = a.to_f64().unwrap_or(f64::NAN);
                    let b = b.to_f64().unwrap_or(f64::NAN);
                    a + t * (b - a)
                })
                .collect(),
            SegmentPath::Arc { center, radius, from_turn, to_turn } => {
                let two_pi = 2.0 * core::f64::consts::PI;
                let theta = two_pi * (from_turn + t * (to_turn - from_turn));
                let r = radius.to_f64().unwrap_or(f64::NAN);
                vec![
                    center[0].to_f64().unwrap_or(f64::NAN) + r * libm::cos(theta),
                    center[1].to_f64().unwrap_or(f64::NAN) + r * libm::sin(theta),
                ]
            }
        }
    }

    fn velocity(&self, t: f64) -> Vec<f64> {
        match self {
            SegmentPath::Line { from, to } => from
                .iter()
                .zip(to)
                .map(|(a, b)| b.to_f64().unwrap_or(f64::NAN) - a.to_f64().unwrap_or(f64::NAN))
                .collect(),
            SegmentPath::Arc { center, radius, from_turn, to_turn } => {
                let two_pi = 2.0 * core::f64::consts::PI;
                let span = to_turn - from_turn;
                let theta = two_pi * (from_turn + t * span);
                let r = radius.to_f64().unwrap_or(f64::NAN);
                let _ = center;
                vec![
                    -r * two_pi * span * libm::sin(theta),
                    r * two_pi * span * libm::cos(theta),
                ]
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct HolonomyOptions {
    /// Gauss-Legendre panels per segment.
    pub panels: usize,
    /// Tolerance for junction consistency checks.
    pub junction_tol: f64,
}

impl Default for HolonomyOptions {
    fn default() -> Self {
        HolonomyOptions { panels: 64, junction_tol: 1e-9 }
    }
}

/// Holonomy of a degree-1 cocycle along a closed chart-decomposed loop:
/// `prod_a exp(i int_{s_a} A_{c_a}) . prod_a g_{c_a c_{a+1}}(p_a)`.
pub fn holonomy(
    cover: &GoodCover,
    c: &Degree1Cochain,
    path: &ChartPath,
    opts: &HolonomyOptions,
) -> Result<(f64, f64), DeligneError> {
    let m = path.segments.len();
    if m == 0 || path.transitions.len() != m {
        return Err(DeligneError::BadPath {
            detail: format!(
                "need one transition per segment (got {} segments, {} transitions)",
                m,
                path.transitions.len()
            ),
        });
    }
    let mut hol = (1.0f64, 0.0f64);
    for (a, seg) in path.segments.iter().enumerate() {
        let form = &c.connections[seg.chart];
        let integral = quad::gauss_legendre(
            |t| {
                let x = seg.path.eval(t);
                let v = seg.path.velocity(t);
                evaluate_f64(form, &x, &[v])
            },
            0.0,
            1.0,
            opts.panels,
        );
        hol = quad::cmul(hol, quad::unit_exp(integral));
        // transition after this segment
        let trans = &path.transitions[a];
        let next = &path.segments[(a + 1) % m];
        let (i, j) = (seg.chart, next.chart);
        if i != j {
            let mut pair = vec![i, j];
            pair.sort_unstable();
            if trans.overlap != pair {
                return Err(DeligneError::BadPath {
                    detail: format!(
                        "transition {a} declared on {:?} but segments run {i} -> {j}",
                        trans.overlap
                    ),
                });
            }
            // junction consistency: the transition point maps to the end of
            // this segment and the start of the next
            let to_i = cover.restriction(&pair, &[i])?;
            let to_j = cover.restriction(&pair, &[j])?;
            let ptf: Vec<f64> =
                trans.point.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
            let end_here = seg.path.eval(1.0);
            let start_next = next.path.eval(0.0);
            let img_i = to_i.eval_f64(&ptf);
            let img_j = to_j.eval_f64(&ptf);
            let err_i = img_i
                .iter()
                .zip(&end_here)
                .map(|(a, b)| libm::fabs(a - b))
                .fold(0.0, f64::max);
            let err_j = img_j
                .iter()
                .zip(&start_next)
                .map(|(a, b)| libm::fabs(a - b))
                .fold(0.0, f64::max);
            if err_i > opts.junction_tol || err_j > opts.junction_tol {
                return Err(DeligneError::BadPath {
                    detail: format!(
                        "transition {a} point does not match segment endpoints \
                         (residuals {err_i:.3e}, {err_j:.3e})"
                    ),
                });
            }
            let g = lookup_transition(&c.transitions, &pair)?;
            let val = g.eval_rat(&trans.point);
            hol = quad::cmul(hol, if i < j { val } else { (val.0, -val.1) });
        } else {
            // Same chart: endpoints must agree.
            let end_here = seg.path.eval(1.0);
            let start_next = next.path.eval(0.0);
            let err = end_here
                .iter()
                .zip(&start_next)
                .map(|(a, b)| libm::fabs(a - b))
                .fold(0.0, f64::max);
            if err > opts.junction_tol {
                return Err(DeligneError::BadPath {
                    detail: format!("segments {a} and next do not meet (residual {err:.3e})"),
                });
            }
        }
    }
    Ok(hol)
}

/// Gauge transformation of degree-1 data by a degree-0 cochain (one circle
/// function per chart): `g_ij -> g_ij . (lambda_j|_{ij}) . (lambda_i|_{ij})^{-1}`,
/// `A_i -> A_i + dlog lambda_i`.
pub fn gauge_transform(
    cover: &GoodCover,
    c: &Degree1Cochain,
    lambdas: &[CircleFn],
) -> Result<Degree1Cochain, DeligneError> {
    if lambdas.len() != cover.num_charts() {
        return Err(DeligneError::DimensionMismatch {
            detail: "one gauge function per chart required".to_string(),
        });
    }
    let mut transitions = BTreeMap::new();
    for (key, g) in &c.transitions {
        let (i, j) = (key[0], key[1]);
        let li = lambdas[i].compose(&cover.restriction(key, &[i])?);
        let lj = lambdas[j].compose(&cover.restriction(key, &[j])?);
        transitions.insert(key.clone(), g.mul(&lj).mul(&li.inv()));
    }
    let connections = c
        .connections
        .iter()
        .zip(lambdas)
        .map(|(a, l)| a.add(&l.dlog()))
        .collect();
    Ok(Degree1Cochain { transitions, connections })
}

/// The monopole of charge k on the two-chart stereographic cover:
/// `A = k (x dy - y dx)/(1 + x^2 + y^2)` in both charts,
/// `g_01 = ((x - iy)/|..|)^k` on the overlap (north coordinates), so that
/// the curvature is `2k dx dy / (1 + x^2 + y^2)^2`.
pub fn monopole_cover() -> GoodCover {
    let mut cover = GoodCover::new(vec![2, 2]);
    // Overlap in north coordinates; inclusion into the south chart is the
    // holomorphic transition 1/z: (x, y) -> (x, -y)/(x^2 + y^2).
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let r2 = x.mul(&x).add(&y.mul(&y));
    let to_north = PolyMap::identity(2);
    let to_south = PolyMap::new(
        2,
        vec![RatFn::new(x.clone(), r2.clone()), RatFn::new(y.neg(), r2)],
    );
    cover
        .add_intersection(vec![0, 1], 2, vec![(vec![0], to_north), (vec![1], to_south)])
        .expect("monopole cover is well formed");
    cover
}

pub fn monopole_cochain(k: i64) -> Degree1Cochain {
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let r2 = x.mul(&x).add(&y.mul(&y));
    let den = Poly::one(2).add(&r2);
    let mut a = RationalForm::zero(2, 1);
    // k (x dy - y dx)/(1 + x^2 + y^2)
    a.set_term(vec![1], RatFn::new(x.scale(&crate::rint(k)), den.clone()));
    a.set_term(vec![0], RatFn::new(y.scale(&crate::rint(-k)), den));
    let mut transitions = BTreeMap::new();
    transitions.insert(vec![0, 1], CircleFn::winding_monomial(2, 0, 1, -k));
    Degree1Cochain { transitions, connections: vec![a.clone(), a] }
}

/// The equator loop used for the monopole Chern pairing: the unit circle in
/// overlap coordinates, clockwise in the north chart (counterclockwise seen
/// from the south chart).
pub fn monopole_equator() -> LoopSpec {
    LoopSpec {
        domain: vec![0, 1],
        center: vec![crate::rint(0), crate::rint(0)],
        radius: crate::rint(1),
        clockwise: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rint;

    /// Four translated unit squares in the plane with a common core, all
    /// intersection domains in shared global coordinates (inclusions are
    /// identity maps).
    fn plane_cover(num_charts: usize, max_depth: usize) -> GoodCover {
        let mut cover = GoodCover::new(vec![2; num_charts]);
        let ids = |n: usize| PolyMap::identity(n);
        for size in 2..=max_depth.min(num_charts) {
            // all increasing subsets of {0..num_charts} of this size
            let mut stack = vec![(Vec::new(), 0usize)];
            while let Some((cur, start)) = stack.pop() {
                if cur.len() == size {
                    let facets: Vec<(Vec<usize>, PolyMap)> = (0..size)
                        .map(|j| {
                            let mut f: Vec<usize> = cur.clone();
                            f.remove(j);
                            (f, ids(2))
                        })
                        .collect();
                    cover.add_intersection(cur.clone(), 2, facets).unwrap();
                    continue;
                }
                for i in start..num_charts {
                    let mut c: Vec<usize> = cur.clone();
                    c.push(i);
                    stack.push((c, i + 1));
                }
            }
        }
        cover
    }

    fn poly_form_1(seed: i64) -> RationalForm {
        let x = RatFn::var(2, 0);
        let y = RatFn::var(2, 1);
        let mut w = RationalForm::zero(2, 1);
        w.set_term(vec![0], x.mul(&y).scale(&rint(seed)));
        w.set_term(vec![1], y.pow_u32(2).add(&RatFn::constant(2, rint(seed - 2))));
        w
    }

    #[test]
    fn dlog_examples() {
        // g = 1 -> 0
        assert!(CircleFn::one(2).dlog().is_zero());
        // g = z/|z| -> (x dy - y dx)/(x^2 + y^2)  (2 pi absorbed)
        let g = CircleFn::winding_monomial(2, 0, 1, 1);
        let d = g.dlog();
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let r2 = x.mul(&x).add(&y.mul(&y));
        assert_eq!(d.coeff(&[1]), RatFn::new(x, r2.clone()));
        assert_eq!(d.coeff(&[0]), RatFn::new(y.neg(), r2));
    }

    #[test]
    fn dlog_is_multiplicative() {
        let g = CircleFn::winding_monomial(2, 0, 1, 2);
        let h = CircleFn::new(
            Poly::var(2, 0).add(&Poly::constant(2, rint(3))),
            Poly::var(2, 1),
        );
        let lhs = g.mul(&h).dlog();
        let rhs = g.dlog().add(&h.dlog());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dlog_of_winding_k() {
        for k in [-2i64, -1, 1, 2] {
            let g = CircleFn::winding_monomial(2, 0, 1, k);
            let x = Poly::var(2, 0);
            let y = Poly::var(2, 1);
            let r2 = x.mul(&x).add(&y.mul(&y));
            let mut expect = RationalForm::zero(2, 1);
            expect.set_term(vec![1], RatFn::new(x.scale(&rint(k)), r2.clone()));
            expect.set_term(vec![0], RatFn::new(y.scale(&rint(-k)), r2));
            assert_eq!(g.dlog(), expect, "k = {k}");
        }
    }

    #[test]
    fn cover_composition_check() {
        let cover = plane_cover(4, 4);
        cover.check_compositions().unwrap();
    }

    #[test]
    fn delta_squared_zero_on_forms() {
        let cover = plane_cover(4, 4);
        // random-ish 0-cochain of 1-forms
        let mut values = BTreeMap::new();
        for i in 0..4 {
            values.insert(vec![i], poly_form_1(i as i64 + 1));
        }
        let d1 = cech_delta_forms(&cover, 0, &values, 1).unwrap();
        let d2 = cech_delta_forms(&cover, 1, &d1, 1).unwrap();
        assert!(d2.values().all(RationalForm::is_zero));
    }

    #[test]
    fn delta_squared_zero_on_funs() {
        let cover = plane_cover(4, 4);
        let mut values = BTreeMap::new();
        for i in 0..4i64 {
            values.insert(
                vec![i as usize],
                CircleFn::new(
                    Poly::var(2, 0).add(&Poly::constant(2, rint(i + 2))),
                    Poly::var(2, 1).scale(&rint(i + 1)),
                ),
            );
        }
        let d1 = cech_delta_funs(&cover, 0, &values).unwrap();
        let d2 = cech_delta_funs(&cover, 1, &d1).unwrap();
        let pts = quad::quasi_random_points(2, 64);
        assert!(d2.values().all(|g| g.is_one(&pts)));
    }

    #[test]
    fn total_differential_squares_to_zero() {
        let cover = plane_cover(4, 4);
        // mixed degree-1 cochain with random-ish entries
        let mut c = MixedCochain::new(2, 1);
        for key in cover.subsets(2) {
            c.set_fun(
                key.clone(),
                CircleFn::new(
                    Poly::var(2, 0).scale(&rint(key[0] as i64 + 1)).add(&Poly::one(2)),
                    Poly::var(2, 1).scale(&rint(key[1] as i64)),
                ),
            );
        }
        for i in 0..4 {
            c.set_form(0, vec![i], poly_form_1(i as i64));
        }
        let dc = total_differential(&cover, &c).unwrap();
        let ddc = total_differential(&cover, &dc).unwrap();
        assert!(is_zero_cochain(&cover, &ddc, &VerifyOptions::default()));
    }

    #[test]
    fn coboundary_passes_degree2_verification() {
        let cover = plane_cover(4, 4);
        let mut c = MixedCochain::new(2, 1);
        for key in cover.subsets(2) {
            c.set_fun(
                key.clone(),
                CircleFn::new(
                    Poly::var(2, 0).add(&Poly::constant(2, rint(key[0] as i64 + 2))),
                    Poly::var(2, 1).scale(&rint(key[1] as i64 + 1)),
                ),
            );
        }
        for i in 0..4 {
            c.set_form(0, vec![i], poly_form_1(2 * i as i64 - 3));
        }
        let dc = total_differential(&cover, &c).unwrap();
        // repackage the mixed coboundary as degree-2 connection data
        let two = Degree2Cochain {
            transitions: dc.fun.clone(),
            connections: dc.forms.get(&1).cloned().unwrap_or_default(),
            curvings: (0..4)
                .map(|i| dc.form(0, &[i]).cloned().unwrap())
                .collect(),
        };
        let report = verify_cocycle_deg2(&cover, &two, &VerifyOptions::default()).unwrap();
        assert!(report.passed(), "records: {:?}", report.records);
        assert!(report.all_exact());
    }

    #[test]
    fn zero_degree2_cochain_passes() {
        let cover = plane_cover(4, 4);
        let two = Degree2Cochain {
            transitions: cover.subsets(3).into_iter().map(|k| (k, CircleFn::one(2))).collect(),
            connections: cover
                .subsets(2)
                .into_iter()
                .map(|k| (k, RationalForm::zero(2, 1)))
                .collect(),
            curvings: vec![RationalForm::zero(2, 2); 4],
        };
        let report = verify_cocycle_deg2(&cover, &two, &VerifyOptions::default()).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn distinct_constant_curvings_fail() {
        let cover = plane_cover(4, 4);
        let mut curvings = Vec::new();
        for i in 0..4i64 {
            let mut b = RationalForm::zero(2, 2);
            b.set_term(vec![0, 1], RatFn::constant(2, rint(i)));
            curvings.push(b);
        }
        let two = Degree2Cochain {
            transitions: cover.subsets(3).into_iter().map(|k| (k, CircleFn::one(2))).collect(),
            connections: cover
                .subsets(2)
                .into_iter()
                .map(|k| (k, RationalForm::zero(2, 1)))
                .collect(),
            curvings,
        };
        let report = verify_cocycle_deg2(&cover, &two, &VerifyOptions::default()).unwrap();
        assert!(!report.passed());
        let failing: Vec<_> = report
            .records
            .iter()
            .filter(|r| r.status == CheckStatus::Fail)
            .collect();
        assert!(failing.iter().all(|r| r.name.starts_with("dA_ij")));
    }

    #[test]
    fn monopole_cocycle_exact() {
        let cover = monopole_cover();
        cover.check_compositions().unwrap();
        for k in -2..=2 {
            let c = monopole_cochain(k);
            let report = verify_cocycle_deg1(&cover, &c, &VerifyOptions::default()).unwrap();
            assert!(report.passed(), "k = {k}: {:?}", report.records);
            assert!(report.all_exact(), "k = {k} should verify exactly");
        }
    }

    #[test]
    fn monopole_broken_connection_fails_with_witness() {
        let cover = monopole_cover();
        let mut c = monopole_cochain(1);
        // A_N -> A_N + dx breaks the pair condition
        let dx = RationalForm::dx(2, 0);
        c.connections[0] = c.connections[0].add(&dx);
        let report = verify_cocycle_deg1(&cover, &c, &VerifyOptions::default()).unwrap();
        assert!(!report.passed());
        let fail = report.records.iter().find(|r| r.status == CheckStatus::Fail).unwrap();
        assert!(fail.witness.is_some());
    }

    #[test]
    fn trivial_cocycle_passes() {
        // g = 1 on the overlap, A_i restrictions of one global form
        let cover = monopole_cover();
        let x = RatFn::var(2, 0);
        let mut a_north = RationalForm::zero(2, 1);
        a_north.set_term(vec![1], x);
        // global form given in north coordinates; the south copy is its
        // pullback along the inverse transition (same map: 1/z is an
        // involution)
        let trans = cover.restriction(&[0, 1], &[1]).unwrap();
        let a_south = pullback(&a_north, &trans).unwrap();
        // On the overlap A_S pulls back to A_N (transition is an involution),
        // so the pair condition holds with g = 1... but a_south must live on
        // the south chart; its defining expression is exactly a_north
        // composed with the transition read the other way.
        let mut transitions = BTreeMap::new();
        transitions.insert(vec![0, 1], CircleFn::one(2));
        let c = Degree1Cochain { transitions, connections: vec![a_north, a_south] };
        let report = verify_cocycle_deg1(&cover, &c, &VerifyOptions::default()).unwrap();
        assert!(report.passed(), "{:?}", report.records);
    }

    #[test]
    fn monopole_curvature() {
        let cover = monopole_cover();
        for k in [-2i64, 1, 2] {
            let c = monopole_cochain(k);
            let (curv, report) = curvature(&cover, &c, &VerifyOptions::default()).unwrap();
            assert!(report.passed());
            // F = 2k dx dy / (1 + x^2 + y^2)^2
            let x = Poly::var(2, 0);
            let y = Poly::var(2, 1);
            let den = Poly::one(2).add(&x.mul(&x)).add(&y.mul(&y));
            let mut expect = RationalForm::zero(2, 2);
            expect.set_term(
                vec![0, 1],
                RatFn::new(Poly::constant(2, rint(2 * k)), den.mul(&den)),
            );
            assert_eq!(curv[0], expect);
            assert_eq!(curv[1], expect);
        }
    }

    #[test]
    fn flat_and_constant_curvature_examples() {
        // trivial bundle with A = x dy on a one-chart cover: F = dx dy
        let cover = GoodCover::new(vec![2]);
        let mut a = RationalForm::zero(2, 1);
        a.set_term(vec![1], RatFn::var(2, 0));
        let mut transitions = BTreeMap::new();
        let _ = &mut transitions; // no pairs on a single chart
        let c = Degree1Cochain { transitions, connections: vec![a] };
        let (curv, _) = curvature(&cover, &c, &VerifyOptions::default()).unwrap();
        let mut expect = RationalForm::zero(2, 2);
        expect.set_term(vec![0, 1], RatFn::constant(2, Rat::from(crate::BigInt::from(1))));
        assert_eq!(curv[0], expect);
    }

    #[test]
    fn monopole_chern_numbers() {
        let cover = monopole_cover();
        let equator = monopole_equator();
        for k in -2..=2 {
            let c = monopole_cochain(k);
            let res = chern_number(&cover, &c, &equator, 256).unwrap();
            assert_eq!(res.rounded, k, "raw = {}", res.raw);
            assert!(res.deviation <= 1e-6, "k = {k}, deviation = {}", res.deviation);
            assert!(!res.flagged);
        }
    }

    #[test]
    fn holonomy_trivial_data_is_one() {
        let cover = monopole_cover();
        let mut transitions = BTreeMap::new();
        transitions.insert(vec![0, 1], CircleFn::one(2));
        let c = Degree1Cochain {
            transitions,
            connections: vec![RationalForm::zero(2, 1), RationalForm::zero(2, 1)],
        };
        // unit square loop in the north chart
        let sq = |x0: i64, y0: i64, x1: i64, y1: i64| PathSegment {
            chart: 0,
            path: SegmentPath::Line {
                from: vec![rint(x0), rint(y0)],
                to: vec![rint(x1), rint(y1)],
            },
        };
        let path = ChartPath {
            segments: vec![sq(1, 1, 2, 1), sq(2, 1, 2, 2), sq(2, 2, 1, 2), sq(1, 2, 1, 1)],
            transitions: vec![
                Transition { overlap: vec![0], point: vec![rint(2), rint(1)] },
                Transition { overlap: vec![0], point: vec![rint(2), rint(2)] },
                Transition { overlap: vec![0], point: vec![rint(1), rint(2)] },
                Transition { overlap: vec![0], point: vec![rint(1), rint(1)] },
            ],
        };
        let h = holonomy(&cover, &c, &path, &HolonomyOptions::default()).unwrap();
        assert!(libm::hypot(h.0 - 1.0, h.1) < 1e-12);
    }

    #[test]
    fn holonomy_gauge_invariance_single_chart_loop() {
        let cover = monopole_cover();
        let c = monopole_cochain(1);
        let square = |x0: i64, y0: i64, x1: i64, y1: i64| PathSegment {
            chart: 0,
            path: SegmentPath::Line {
                from: vec![rint(x0), rint(y0)],
                to: vec![rint(x1), rint(y1)],
            },
        };
        let path = ChartPath {
            segments: vec![
                square(0, 0, 1, 0),
                square(1, 0, 1, 1),
                square(1, 1, 0, 1),
                square(0, 1, 0, 0),
            ],
            transitions: vec![
                Transition { overlap: vec![0], point: vec![rint(1), rint(0)] },
                Transition { overlap: vec![0], point: vec![rint(1), rint(1)] },
                Transition { overlap: vec![0], point: vec![rint(0), rint(1)] },
                Transition { overlap: vec![0], point: vec![rint(0), rint(0)] },
            ],
        };
        let opts = HolonomyOptions { panels: 128, ..Default::default() };
        let h0 = holonomy(&cover, &c, &path, &opts).unwrap();
        // gauge by lambda_N = (x + 2 + iy)-ish, lambda_S arbitrary
        let lambdas = vec![
            CircleFn::new(
                Poly::var(2, 0).add(&Poly::constant(2, rint(3))),
                Poly::var(2, 1).scale(&rint(2)),
            ),
            CircleFn::new(
                Poly::one(2),
                Poly::var(2, 0).mul(&Poly::var(2, 1)).scale(&rint(1)),
            ),
        ];
        let gauged = gauge_transform(&cover, &c, &lambdas).unwrap();
        // the gauged data is still a cocycle
        let report = verify_cocycle_deg1(&cover, &gauged, &VerifyOptions::default()).unwrap();
        assert!(report.passed());
        let h1 = holonomy(&cover, &gauged, &path, &opts).unwrap();
        assert!(
            libm::hypot(h0.0 - h1.0, h0.1 - h1.1) < 1e-9,
            "holonomy changed under gauge: {h0:?} vs {h1:?}"
        );
    }

    #[test]
    fn holonomy_two_chart_loop_gauge_invariance() {
        // a loop crossing into the south chart and back: two unit-circle
        // half arcs, with junctions at (1,0) and (-1,0) (fixed points of
        // 1/z on the unit circle... (1,0) maps to (1,0); (-1,0) to (-1,0)).
        let cover = monopole_cover();
        let c = monopole_cochain(1);
        let upper = PathSegment {
            chart: 0,
            path: SegmentPath::Arc {
                center: vec![rint(0), rint(0)],
                radius: rint(1),
                from_turn: 0.0,
                to_turn: 0.5,
            },
        };
        // in south coordinates the lower north arc becomes an upper arc
        // traversed from (-1, 0) to (1, 0): angle 0.5 -> 1.0 reversed ...
        // south coords of north point (x,y) on the unit circle: (x, -y).
        let lower_in_south = PathSegment {
            chart: 1,
            path: SegmentPath::Arc {
                center: vec![rint(0), rint(0)],
                radius: rint(1),
                from_turn: 0.5,
                to_turn: 1.0,
            },
        };
        let path = ChartPath {
            segments: vec![upper, lower_in_south],
            transitions: vec![
                Transition { overlap: vec![0, 1], point: vec![rint(-1), rint(0)] },
                Transition { overlap: vec![0, 1], point: vec![rint(1), rint(0)] },
            ],
        };
        let opts = HolonomyOptions { panels: 192, ..Default::default() };
        let h0 = holonomy(&cover, &c, &path, &opts).unwrap();
        let lambdas = vec![
            CircleFn::new(Poly::var(2, 1).add(&Poly::constant(2, rint(4))), Poly::var(2, 0)),
            CircleFn::new(Poly::constant(2, rint(2)), Poly::var(2, 1)),
        ];
        let gauged = gauge_transform(&cover, &c, &lambdas).unwrap();
        let h1 = holonomy(&cover, &gauged, &path, &opts).unwrap();
        assert!(
            libm::hypot(h0.0 - h1.0, h0.1 - h1.1) < 1e-9,
            "two-chart holonomy changed under gauge: {h0:?} vs {h1:?}"
        );
    }

    #[test]
    fn holonomy_stokes_small_disk() {
        // |hol(boundary of D) - exp(i int_D F)| small, D a disk in one chart
        let cover = monopole_cover();
        let c = monopole_cochain(1);
        let circle = PathSegment {
            chart: 0,
            path: SegmentPath::Arc {
                center: vec![rint(1), rint(0)],
                radius: crate::rat(1, 2),
                from_turn: 0.0,
                to_turn: 1.0,
            },
        };
        let path = ChartPath {
            segments: vec![circle],
            transitions: vec![Transition {
                overlap: vec![0],
                point: vec![crate::rat(3, 2), rint(0)],
            }],
        };
        let opts = HolonomyOptions { panels: 128, ..Default::default() };
        let h = holonomy(&cover, &c, &path, &opts).unwrap();
        let f = exterior_d(&c.connections[0]);
        let fv = quad::disk_integral(
            |x, y| evaluate_f64(&f, &[x, y], &[vec![1.0, 0.0], vec![0.0, 1.0]]),
            (1.0, 0.0),
            0.5,
            16,
            64,
        );
        let expect = quad::unit_exp(fv);
        let err = libm::hypot(h.0 - expect.0, h.1 - expect.1);
        assert!(err <= 1e-6, "stokes mismatch: {err}");
    }

    #[test]
    fn holonomy_reparametrization_invariance() {
        // same square loop, one side split into two half segments
        let cover = monopole_cover();
        let c = monopole_cochain(2);
        let line = |a: (i64, i64), b: (i64, i64)| PathSegment {
            chart: 0,
            path: SegmentPath::Line {
                from: vec![rint(a.0), rint(a.1)],
                to: vec![rint(b.0), rint(b.1)],
            },
        };
        let t0 = |p: (i64, i64)| Transition { overlap: vec![0], point: vec![rint(p.0), rint(p.1)] };
        let coarse = ChartPath {
            segments: vec![line((0, 0), (2, 0)), line((2, 0), (2, 2)), line((2, 2), (0, 2)), line((0, 2), (0, 0))],
            transitions: vec![t0((2, 0)), t0((2, 2)), t0((0, 2)), t0((0, 0))],
        };
        let fine = ChartPath {
            segments: vec![
                line((0, 0), (1, 0)),
                line((1, 0), (2, 0)),
                line((2, 0), (2, 2)),
                line((2, 2), (0, 2)),
                line((0, 2), (0, 0)),
            ],
            transitions: vec![t0((1, 0)), t0((2, 0)), t0((2, 2)), t0((0, 2)), t0((0, 0))],
        };
        let opts = HolonomyOptions { panels: 128, ..Default::default() };
        let h0 = holonomy(&cover, &c, &coarse, &opts).unwrap();
        let h1 = holonomy(&cover, &c, &fine, &opts).unwrap();
        assert!(libm::hypot(h0.0 - h1.0, h0.1 - h1.1) < 1e-9);
    }

    #[test]
    fn bad_transition_rejected() {
        let cover = monopole_cover();
        let c = monopole_cochain(1);
        let path = ChartPath {
            segments: vec![PathSegment {
                chart: 0,
                path: SegmentPath::Line {
                    from: vec![rint(0), rint(0)],
                    to: vec![rint(1), rint(0)],
                },
            }],
            transitions: vec![Transition { overlap: vec![0], point: vec![rint(5), rint(5)] }],
        };
        assert!(matches!(
            holonomy(&cover, &c, &path, &HolonomyOptions::default()),
            Err(DeligneError::BadPath { .. })
        ));
    }
}
