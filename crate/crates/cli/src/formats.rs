//! Serde data-transfer types for every file format the CLI reads and
//! writes, with conversions into the core types.
//!
//! Rationals are strings (`"3"`, `"-2/7"`); polynomial variables and form
//! indices are 1-based in the files and 0-based in memory.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use simpl_core::deligne::{
    ChartPath, CircleFn, Degree1Cochain, Degree2Cochain, GoodCover, LoopSpec, PathSegment,
    SegmentPath, Transition,
};
use simpl_core::forms::{PolyMap, RationalForm};
use simpl_core::poly::{Poly, RatFn};
use simpl_core::simpset::{Cell, FinSimplicialSet, OrderedComplex};
use simpl_core::vanest::Triangulation;
use simpl_core::Rat;

#[derive(Debug)]
pub struct FormatError(pub String);

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for FormatError {}

fn err(msg: impl Into<String>) -> FormatError {
    FormatError(msg.into())
}

pub fn parse_rat(s: &str) -> Result<Rat, FormatError> {
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s.trim()).map_err(|e| err(format!("bad integer {s:?}: {e}")))?;
            Ok(BigRational::from(n))
        }
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|e| err(format!("bad numerator {p:?}: {e}")))?;
            let q = BigInt::from_str(q.trim()).map_err(|e| err(format!("bad denominator {q:?}: {e}")))?;
            if q == BigInt::from(0) {
                return Err(err(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
    }
}

pub fn show_rat(r: &Rat) -> String {
    if num_traits::One::is_one(r.denom()) {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

// ---------------------------------------------------------------- simplicial

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct FaceRefDto {
    pub base: String,
    #[serde(default)]
    pub degens: Vec<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CellDto {
    pub dim: usize,
    pub id: String,
    #[serde(default)]
    pub faces: Vec<FaceRefDto>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SimplicialSetDto {
    pub max_degree: usize,
    pub cells: Vec<CellDto>,
}

impl SimplicialSetDto {
    pub fn to_core(&self) -> Result<FinSimplicialSet, FormatError> {
        let mut sset = FinSimplicialSet::new(self.max_degree);
        let mut cells = self.cells.clone();
        cells.sort_by_key(|c| c.dim);
        for cell in &cells {
            let faces = cell
                .faces
                .iter()
                .map(|f| {
                    if cell.dim == 0 {
                        return Err(err("0-cells have no faces"));
                    }
                    let base_dim = cell
                        .dim
                        .checked_sub(1 + f.degens.len())
                        .ok_or_else(|| err(format!("degeneracy word too long on {}", cell.id)))?;
                    let base = sset.find_nondeg(base_dim, &f.base).ok_or_else(|| {
                        err(format!(
                            "face of {} references unknown {base_dim}-cell {:?}",
                            cell.id, f.base
                        ))
                    })?;
                    let mut c = Cell::nondeg(base);
                    for &d in f.degens.iter().rev() {
                        c = c.degenerate(d);
                    }
                    if c.word != f.degens {
                        return Err(err(format!(
                            "degeneracy word {:?} on a face of {} is not in normal form",
                            f.degens, cell.id
                        )));
                    }
                    Ok(c)
                })
                .collect::<Result<Vec<_>, _>>()?;
            sset.add_cell(cell.dim, cell.id.clone(), faces)
                .map_err(|e| err(format!("{e}")))?;
        }
        sset.check_identities().map_err(|e| err(format!("{e}")))?;
        Ok(sset)
    }

    pub fn from_core(sset: &FinSimplicialSet) -> Self {
        let mut cells = Vec::new();
        for dim in 0..=sset.max_degree() {
            for idx in 0..sset.nondeg_count(dim) {
                let id = sset.nondeg_labels(dim)[idx].clone();
                let faces = if dim == 0 {
                    Vec::new()
                } else {
                    (0..=dim)
                        .map(|i| {
                            let f = sset.face(
                                &Cell::nondeg(simpl_core::simpset::CellId { dim, idx }),
                                i,
                            );
                            FaceRefDto {
                                base: sset.nondeg_labels(f.base.dim)[f.base.idx].clone(),
                                degens: f.word.clone(),
                            }
                        })
                        .collect()
                };
                cells.push(CellDto { dim, id, faces });
            }
        }
        SimplicialSetDto { max_degree: sset.max_degree(), cells }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct OrderedComplexDto {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub order: Vec<(String, String)>,
    pub simplices: Vec<Vec<String>>,
}

impl OrderedComplexDto {
    pub fn to_core(&self) -> Result<OrderedComplex, FormatError> {
        OrderedComplex::new(self.vertices.clone(), &self.order, &self.simplices)
            .map_err(|e| err(format!("{e}")))
    }
}

/// Either simplicial-set or ordered-complex input.
#[derive(Deserialize, Debug)]
#[serde(untagged)]
pub enum ComplexInput {
    SimplicialSet(SimplicialSetDto),
    OrderedComplex(OrderedComplexDto),
}

// --------------------------------------------------------------------- forms

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct MonomialDto {
    pub exps: Vec<u32>,
    pub coef: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, Default)]
pub struct PolyDto {
    pub monomials: Vec<MonomialDto>,
}

impl PolyDto {
    pub fn to_core(&self, nvars: usize) -> Result<Poly, FormatError> {
        let mut terms = Vec::new();
        for m in &self.monomials {
            if m.exps.len() != nvars {
                return Err(err(format!(
                    "monomial has {} exponents, chart has {nvars} variables",
                    m.exps.len()
                )));
            }
            terms.push((m.exps.clone(), parse_rat(&m.coef)?));
        }
        Ok(Poly::from_terms(nvars, terms))
    }

    pub fn from_core(p: &Poly) -> Self {
        PolyDto {
            monomials: p
                .terms()
                .map(|(e, c)| MonomialDto { exps: e.clone(), coef: show_rat(c) })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct RatFnDto {
    pub num: PolyDto,
    #[serde(default)]
    pub den: Option<PolyDto>,
}

impl RatFnDto {
    pub fn to_core(&self, nvars: usize) -> Result<RatFn, FormatError> {
        let num = self.num.to_core(nvars)?;
        let den = match &self.den {
            None => Poly::one(nvars),
            Some(d) => {
                let p = d.to_core(nvars)?;
                if p.is_zero() {
                    return Err(err("zero denominator polynomial"));
                }
                p
            }
        };
        Ok(RatFn::new(num, den))
    }

    pub fn from_core(f: &RatFn) -> Self {
        let den = if f.is_polynomial() && f.den().as_constant().map_or(false, |c| num_traits::One::is_one(&c)) {
            None
        } else {
            Some(PolyDto::from_core(f.den()))
        };
        RatFnDto { num: PolyDto::from_core(f.num()), den }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct FormTermDto {
    /// 1-based strictly increasing index tuple.
    pub idx: Vec<usize>,
    pub num: PolyDto,
    #[serde(default)]
    pub den: Option<PolyDto>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct FormDto {
    pub chart_dim: usize,
    pub degree: usize,
    pub terms: Vec<FormTermDto>,
}

impl FormDto {
    pub fn to_core(&self) -> Result<RationalForm, FormatError> {
        let mut form = RationalForm::zero(self.chart_dim, self.degree);
        for t in &self.terms {
            let idx: Vec<usize> = t
                .idx
                .iter()
                .map(|&i| {
                    if i == 0 || i > self.chart_dim {
                        Err(err(format!("index {i} out of 1..={}", self.chart_dim)))
                    } else {
                        Ok(i - 1)
                    }
                })
                .collect::<Result<_, _>>()?;
            let rf = RatFnDto { num: t.num.clone(), den: t.den.clone() }
                .to_core(self.chart_dim)?;
            form.add_term(idx, rf);
        }
        Ok(form)
    }

    pub fn from_core(form: &RationalForm) -> Self {
        FormDto {
            chart_dim: form.chart_dim(),
            degree: form.degree(),
            terms: form
                .terms()
                .map(|(idx, c)| {
                    let dto = RatFnDto::from_core(c);
                    FormTermDto {
                        idx: idx.iter().map(|&i| i + 1).collect(),
                        num: dto.num,
                        den: dto.den,
                    }
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PolyMapDto {
    pub domain_dim: usize,
    pub components: Vec<RatFnDto>,
}

impl PolyMapDto {
    pub fn to_core(&self) -> Result<PolyMap, FormatError> {
        let comps = self
            .components
            .iter()
            .map(|c| c.to_core(self.domain_dim))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyMap::new(self.domain_dim, comps))
    }

    pub fn from_core(m: &PolyMap) -> Self {
        PolyMapDto {
            domain_dim: m.domain_dim,
            components: m.components.iter().map(RatFnDto::from_core).collect(),
        }
    }
}

// ------------------------------------------------------------- triangulation

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TopSimplexDto {
    pub verts: Vec<usize>,
    pub sign: i32,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TriangulationDto {
    pub ambient: usize,
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    pub tops: Vec<TopSimplexDto>,
}

impl TriangulationDto {
    pub fn to_core(&self) -> Result<Triangulation, FormatError> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|c| parse_rat(c)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let tops = self.tops.iter().map(|t| (t.verts.clone(), t.sign)).collect();
        Triangulation::new(self.ambient, self.dim, vertices, tops)
            .map_err(|e| err(format!("{e}")))
    }

    pub fn from_core(t: &Triangulation) -> Self {
        TriangulationDto {
            ambient: t.ambient(),
            dim: t.dim(),
            vertices: t
                .vertices()
                .iter()
                .map(|v| v.iter().map(show_rat).collect())
                .collect(),
            tops: t
                .tops()
                .iter()
                .map(|(verts, sign)| TopSimplexDto { verts: verts.clone(), sign: *sign })
                .collect(),
        }
    }
}

// ------------------------------------------------------------------- deligne

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct InclusionDto {
    pub to: Vec<usize>,
    pub map: PolyMapDto,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct IntersectionDto {
    pub key: Vec<usize>,
    pub dim: usize,
    pub faces: Vec<InclusionDto>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CoverDto {
    pub chart_dims: Vec<usize>,
    pub intersections: Vec<IntersectionDto>,
}

impl CoverDto {
    pub fn to_core(&self) -> Result<GoodCover, FormatError> {
        let mut cover = GoodCover::new(self.chart_dims.clone());
        let mut sorted = self.intersections.clone();
        sorted.sort_by_key(|i| i.key.len());
        for inter in &sorted {
            let facets = inter
                .faces
                .iter()
                .map(|f| Ok((f.to.clone(), f.map.to_core()?)))
                .collect::<Result<Vec<_>, FormatError>>()?;
            cover
                .add_intersection(inter.key.clone(), inter.dim, facets)
                .map_err(|e| err(format!("{e}")))?;
        }
        cover.check_compositions().map_err(|e| err(format!("{e}")))?;
        Ok(cover)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CircleFnDto {
    pub re: PolyDto,
    pub im: PolyDto,
}

impl CircleFnDto {
    pub fn to_core(&self, nvars: usize) -> Result<CircleFn, FormatError> {
        let re = self.re.to_core(nvars)?;
        let im = self.im.to_core(nvars)?;
        if re.is_zero() && im.is_zero() {
            return Err(err("transition function must be nonzero"));
        }
        Ok(CircleFn::new(re, im))
    }

    pub fn from_core(g: &CircleFn) -> Self {
        CircleFnDto { re: PolyDto::from_core(g.re()), im: PolyDto::from_core(g.im()) }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TransitionEntryDto {
    pub charts: Vec<usize>,
    #[serde(flatten)]
    pub fun: CircleFnDto,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct FormEntryDto {
    pub charts: Vec<usize>,
    pub form: FormDto,
}

/// Degree-1 or degree-2 Cech-Deligne cochain bundled with its cover.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CocycleDto {
    pub degree: usize,
    pub cover: CoverDto,
    /// Transition functions: on pairs (degree 1) or triples (degree 2).
    pub g: Vec<TransitionEntryDto>,
    /// Connection 1-forms: per chart (degree 1) or per pair (degree 2).
    pub a: Vec<FormEntryDto>,
    /// Curving 2-forms per chart (degree 2 only).
    #[serde(default)]
    pub b: Vec<FormEntryDto>,
}

pub enum CocycleData {
    One(GoodCover, Degree1Cochain),
    Two(GoodCover, Degree2Cochain),
}

impl CocycleDto {
    pub fn to_core(&self) -> Result<CocycleData, FormatError> {
        let cover = self.cover.to_core()?;
        let chart_count = cover.num_charts();
        match self.degree {
            1 => {
                let mut transitions = BTreeMap::new();
                for t in &self.g {
                    if t.charts.len() != 2 {
                        return Err(err("degree-1 transitions live on pairs"));
                    }
                    let dim = cover.dim_of(&t.charts).map_err(|e| err(format!("{e}")))?;
                    transitions.insert(t.charts.clone(), t.fun.to_core(dim)?);
                }
                let mut connections = vec![None; chart_count];
                for a in &self.a {
                    if a.charts.len() != 1 {
                        return Err(err("degree-1 connection forms live on single charts"));
                    }
                    connections[a.charts[0]] = Some(a.form.to_core()?);
                }
                let connections = connections
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| c.ok_or_else(|| err(format!("missing A_{i}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(CocycleData::One(cover, Degree1Cochain { transitions, connections }))
            }
            2 => {
                let mut transitions = BTreeMap::new();
                for t in &self.g {
                    if t.charts.len() != 3 {
                        return Err(err("degree-2 transitions live on triples"));
                    }
                    let dim = cover.dim_of(&t.charts).map_err(|e| err(format!("{e}")))?;
                    transitions.insert(t.charts.clone(), t.fun.to_core(dim)?);
                }
                let mut connections = BTreeMap::new();
                for a in &self.a {
                    if a.charts.len() != 2 {
                        return Err(err("degree-2 connection forms live on pairs"));
                    }
                    connections.insert(a.charts.clone(), a.form.to_core()?);
                }
                let mut curvings = vec![None; chart_count];
                for b in &self.b {
                    if b.charts.len() != 1 {
                        return Err(err("curvings live on single charts"));
                    }
                    curvings[b.charts[0]] = Some(b.form.to_core()?);
                }
                let curvings = curvings
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| c.ok_or_else(|| err(format!("missing B_{i}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(CocycleData::Two(cover, Degree2Cochain { transitions, connections, curvings }))
            }
            d => Err(err(format!("unsupported cocycle degree {d}"))),
        }
    }
}

// ------------------------------------------------------------ loops and paths

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct LoopDto {
    pub domain: Vec<usize>,
    pub center: Vec<String>,
    pub radius: String,
    #[serde(default)]
    pub clockwise: bool,
}

impl LoopDto {
    pub fn to_core(&self) -> Result<LoopSpec, FormatError> {
        Ok(LoopSpec {
            domain: self.domain.clone(),
            center: self
                .center
                .iter()
                .map(|c| parse_rat(c))
                .collect::<Result<Vec<_>, _>>()?,
            radius: parse_rat(&self.radius)?,
            clockwise: self.clockwise,
        })
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(untagged)]
pub enum SegmentPathDto {
    Line { from: Vec<String>, to: Vec<String> },
    Arc { center: Vec<String>, radius: String, from_turn: f64, to_turn: f64 },
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SegmentDto {
    pub chart: usize,
    #[serde(flatten)]
    pub path: SegmentPathDto,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TransitionDto {
    pub overlap: Vec<usize>,
    pub point: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PathDto {
    pub segments: Vec<SegmentDto>,
    pub transitions: Vec<TransitionDto>,
}

impl PathDto {
    pub fn to_core(&self) -> Result<ChartPath, FormatError> {
        let parse_pt = |v: &[String]| -> Result<Vec<Rat>, FormatError> {
            v.iter().map(|c| parse_rat(c)).collect()
        };
        let segments = self
            .segments
            .iter()
            .map(|s| {
                let path = match &s.path {
                    SegmentPathDto::Line { from, to } => SegmentPath::Line {
                        from: parse_pt(from)?,
                        to: parse_pt(to)?,
                    },
                    SegmentPathDto::Arc { center, radius, from_turn, to_turn } => {
                        SegmentPath::Arc {
                            center: parse_pt(center)?,
                            radius: parse_rat(radius)?,
                            from_turn: *from_turn,
                            to_turn: *to_turn,
                        }
                    }
                };
                Ok(PathSegment { chart: s.chart, path })
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        let transitions = self
            .transitions
            .iter()
            .map(|t| {
                Ok(Transition { overlap: t.overlap.clone(), point: parse_pt(&t.point)? })
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(ChartPath { segments, transitions })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing_roundtrip() {
        for s in ["3", "-2/7", "0", "10/4"] {
            let r = parse_rat(s).unwrap();
            let again = parse_rat(&show_rat(&r)).unwrap();
            assert_eq!(r, again);
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn form_dto_roundtrip() {
        let dto = FormDto {
            chart_dim: 2,
            degree: 1,
            terms: vec![FormTermDto {
                idx: vec![2],
                num: PolyDto {
                    monomials: vec![MonomialDto { exps: vec![1, 0], coef: "3/2".into() }],
                },
                den: None,
            }],
        };
        let form = dto.to_core().unwrap();
        let back = FormDto::from_core(&form);
        assert_eq!(back.terms.len(), 1);
        assert_eq!(back.terms[0].idx, vec![2]);
        let json = serde_json::to_string(&back).unwrap();
        let reparsed: FormDto = serde_json::from_str(&json).unwrap();
        assert_eq!(reparsed.to_core().unwrap(), form);
    }

    #[test]
    fn bad_form_index_rejected() {
        let dto = FormDto {
            chart_dim: 2,
            degree: 1,
            terms: vec![FormTermDto {
                idx: vec![3],
                num: PolyDto { monomials: vec![] },
                den: None,
            }],
        };
        assert!(dto.to_core().is_err());
    }
}
