//! Built-in fixtures: spheres, the 7-vertex torus, the monopole family, and
//! the unit triangle. Every fixture passes its own module's verification at
//! load time (the test suites check this).

use crate::formats::{
    CircleFnDto, CocycleDto, CoverDto, FormDto, FormEntryDto, InclusionDto, IntersectionDto,
    LoopDto, OrderedComplexDto, PolyMapDto, RatFnDto, TransitionEntryDto, TriangulationDto,
};
use simpl_core::deligne::{monopole_cochain, monopole_cover, monopole_equator};
use simpl_core::forms::RationalForm;
use simpl_core::poly::RatFn;
use simpl_core::vanest::Triangulation;
use simpl_core::{rint, Rat};

/// The names `fixtures` accepts.
pub const FIXTURE_NAMES: [&str; 10] = [
    "sphere2",
    "sphere3",
    "torus7",
    "unit_triangle",
    "monopole_k-2",
    "monopole_k-1",
    "monopole_k0",
    "monopole_k1",
    "monopole_k2",
    "xdxdy_form",
];

/// Boundary of the (n+1)-simplex as an ordered-complex file: the n-sphere.
pub fn sphere_complex(n: usize) -> OrderedComplexDto {
    let verts: Vec<String> = (0..=n + 1).map(|i| i.to_string()).collect();
    let mut order = Vec::new();
    for i in 0..=n + 1 {
        for j in i + 1..=n + 1 {
            order.push((i.to_string(), j.to_string()));
        }
    }
    let simplices: Vec<Vec<String>> = (0..=n + 1)
        .map(|omit| (0..=n + 1).filter(|&v| v != omit).map(|v| v.to_string()).collect())
        .collect();
    OrderedComplexDto { vertices: verts, order, simplices }
}

/// Minimal 7-vertex triangulation of the torus (every pair of vertices is an
/// edge; 14 triangles in two mod-7 families).
pub fn torus7_complex() -> OrderedComplexDto {
    let verts: Vec<String> = (0..7).map(|i| i.to_string()).collect();
    let mut order = Vec::new();
    for i in 0..7 {
        for j in i + 1..7 {
            order.push((i.to_string(), j.to_string()));
        }
    }
    let mut simplices = Vec::new();
    for i in 0..7u32 {
        simplices.push(vec![
            i.to_string(),
            ((i + 1) % 7).to_string(),
            ((i + 3) % 7).to_string(),
        ]);
        simplices.push(vec![
            i.to_string(),
            ((i + 2) % 7).to_string(),
            ((i + 3) % 7).to_string(),
        ]);
    }
    OrderedComplexDto { vertices: verts, order, simplices }
}

pub fn unit_triangle() -> Triangulation {
    Triangulation::new(
        2,
        2,
        vec![
            vec![rint(0), rint(0)],
            vec![rint(1), rint(0)],
            vec![rint(0), rint(1)],
        ],
        vec![(vec![0, 1, 2], 1)],
    )
    .expect("unit triangle is a valid triangulation")
}

pub fn unit_triangle_dto() -> TriangulationDto {
    TriangulationDto::from_core(&unit_triangle())
}

/// `x dx^dy` on the plane, the running integration example.
pub fn x_dx_dy() -> RationalForm {
    let mut w = RationalForm::zero(2, 2);
    w.set_term(vec![0, 1], RatFn::var(2, 0));
    w
}

pub fn x_dx_dy_dto() -> FormDto {
    FormDto::from_core(&x_dx_dy())
}

fn monopole_cover_dto() -> CoverDto {
    let cover = monopole_cover();
    let to_north = cover.restriction(&[0, 1], &[0]).unwrap();
    let to_south = cover.restriction(&[0, 1], &[1]).unwrap();
    CoverDto {
        chart_dims: vec![2, 2],
        intersections: vec![IntersectionDto {
            key: vec![0, 1],
            dim: 2,
            faces: vec![
                InclusionDto { to: vec![0], map: PolyMapDto::from_core(&to_north) },
                InclusionDto { to: vec![1], map: PolyMapDto::from_core(&to_south) },
            ],
        }],
    }
}

/// The charge-k monopole cocycle file (cover + transition + connections).
pub fn monopole_dto(k: i64) -> CocycleDto {
    let c = monopole_cochain(k);
    let g = c.transitions.get([0usize, 1].as_slice()).unwrap();
    CocycleDto {
        degree: 1,
        cover: monopole_cover_dto(),
        g: vec![TransitionEntryDto {
            charts: vec![0, 1],
            fun: CircleFnDto::from_core(g),
        }],
        a: vec![
            FormEntryDto { charts: vec![0], form: FormDto::from_core(&c.connections[0]) },
            FormEntryDto { charts: vec![1], form: FormDto::from_core(&c.connections[1]) },
        ],
        b: Vec::new(),
    }
}

pub fn equator_loop_dto() -> LoopDto {
    let l = monopole_equator();
    LoopDto {
        domain: l.domain,
        center: l.center.iter().map(crate::formats::show_rat).collect(),
        radius: crate::formats::show_rat(&l.radius),
        clockwise: l.clockwise,
    }
}

/// Fixture payload by name, as (filename, pretty JSON).
pub fn fixture_json(name: &str) -> Option<(String, String)> {
    let pretty = |v: &serde_json::Value| serde_json::to_string_pretty(v).unwrap();
    let payload = match name {
        "sphere2" => serde_json::to_value(sphere_complex(2)).unwrap(),
        "sphere3" => serde_json::to_value(sphere_complex(3)).unwrap(),
        "torus7" => serde_json::to_value(torus7_complex()).unwrap(),
        "unit_triangle" => serde_json::to_value(unit_triangle_dto()).unwrap(),
        "xdxdy_form" => serde_json::to_value(x_dx_dy_dto()).unwrap(),
        _ => {
            let k: i64 = name.strip_prefix("monopole_k")?.parse().ok()?;
            if !(-2..=2).contains(&k) {
                return None;
            }
            serde_json::to_value(monopole_dto(k)).unwrap()
        }
    };
    Some((format!("{name}.json"), pretty(&payload)))
}

/// The loop fixture that accompanies the monopole cocycles.
pub fn equator_json() -> (String, String) {
    (
        "equator_loop.json".to_string(),
        serde_json::to_string_pretty(&serde_json::to_value(equator_loop_dto()).unwrap())
            .unwrap(),
    )
}

/// A rational point helper for tests.
pub fn rpt(coords: &[i64]) -> Vec<Rat> {
    coords.iter().map(|&c| rint(c)).collect()
}
