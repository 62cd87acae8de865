//! Command-line front end: JSON in, JSON report out.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 malformed input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;

use simpl_cli::fixtures;
use simpl_cli::formats::{
    self, CocycleData, CocycleDto, ComplexInput, FormDto, LoopDto, PathDto, TriangulationDto,
};
use simpl_cli::report::{from_verify, Check, RunReport, Status};
use simpl_cli::selftest;
use simpl_core::chains::normalized_complex;
use simpl_core::deligne::{
    chern_number, curvature, gauge_transform, holonomy, verify_cocycle_deg1,
    verify_cocycle_deg2, HolonomyOptions, VerifyOptions,
};
use simpl_core::loopgroup::{
    abelianize, check_principal_fibration, loop_group, maximal_tree, pi0_of_group,
    simplicial_abelian_homotopy, w_total, wbar, FiniteGroup,
};
use simpl_core::simpset::{ordered_to_sset, FinSimplicialSet};
use simpl_core::subdivision::{boundary, chain_homotopy_t, iterate, permute_chain, subdivide};
use simpl_core::vanest::{
    barycentric_refine, exact_antiderivative, riemann_sum, taylor_antiderivative,
};

#[derive(Parser)]
#[command(
    name = "simpl",
    version,
    about = "Simplicial sets, integer homology, loop groups, Cech-Deligne cocycles and Van Est integration with exact arithmetic"
)]
struct Cli {
    /// Seed for all randomized corpora.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integer homology of a simplicial set or ordered complex.
    Homology {
        #[arg(long)]
        input: PathBuf,
        /// Highest homology degree to report.
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
    },
    /// Subdivision-operator identity suites on seeded random chains.
    Subdivide {
        /// Run the full identity corpus.
        #[arg(long)]
        selftest: bool,
        /// Number of random chains in the corpus.
        #[arg(long, default_value_t = 200)]
        chains: usize,
    },
    /// Dwyer-Kan loop group of a pointed connected complex.
    Loopgroup {
        #[arg(long)]
        input: PathBuf,
        /// Basepoint vertex label.
        #[arg(long)]
        basepoint: String,
        /// Presentation depth (degrees 0..=depth).
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Also compare pi_{i-1} of the abelianized loop group with H_i.
        #[arg(long)]
        check_kan: bool,
    },
    /// Classifying space of a finite cyclic group.
    Wbar {
        /// Group spec, currently `zmod:N`.
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Report homology of the classifying space.
        #[arg(long)]
        homology: bool,
        /// Check the universal principal fibration levelwise.
        #[arg(long)]
        check_fibration: bool,
    },
    /// Riemann sums of a form over a triangulation.
    Integrate {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        triangulation: PathBuf,
        #[arg(long, value_enum, default_value_t = CochainChoice::Taylor)]
        cochain: CochainChoice,
        /// Barycentric refinement steps.
        #[arg(long, default_value_t = 0)]
        refine: usize,
    },
    /// Cech-Deligne cocycle operations.
    Deligne {
        #[command(subcommand)]
        op: DeligneOp,
    },
    /// Write a named fixture file.
    Fixtures {
        /// One of the built-in fixture names.
        name: String,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CochainChoice {
    Taylor,
    Exact,
}

#[derive(Subcommand)]
enum DeligneOp {
    /// Verify the cocycle identities.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Chern number of a degree-1 cocycle along a loop.
    Chern {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "loop")]
        loop_file: PathBuf,
        /// Quadrature sample count.
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Holonomy of a degree-1 cocycle along a chart-decomposed loop.
    Holonomy {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        path: PathBuf,
        /// Gauss-Legendre panels per segment.
        #[arg(long, default_value_t = 64)]
        panels: usize,
        /// Also verify gauge invariance with seeded random gauges.
        #[arg(long)]
        check_gauge: bool,
    },
}

#[derive(Args)]
struct Sampling {
    /// Sample count for the non-exact fallback checks.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Residual tolerance for sampled checks.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("input error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text)
        .map_err(|e| format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))
}

fn load_simplicial_set(path: &Path, needed_degree: usize) -> Result<FinSimplicialSet, String> {
    let input: ComplexInput = read_json(path)?;
    match input {
        ComplexInput::SimplicialSet(dto) => dto.to_core().map_err(|e| e.to_string()),
        ComplexInput::OrderedComplex(dto) => {
            let k = dto.to_core().map_err(|e| e.to_string())?;
            let max_degree = needed_degree.max(k.dim());
            ordered_to_sset(&k, max_degree).map_err(|e| e.to_string())
        }
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    let seed = cli.seed;
    match cli.command {
        Command::Homology { input, max_dim } => homology_cmd(&input, max_dim, seed),
        Command::Subdivide { selftest, chains } => {
            if !selftest {
                return Err("subdivide currently only offers --selftest".to_string());
            }
            Ok(subdivide_selftest(seed, chains))
        }
        Command::Loopgroup { input, basepoint, depth, check_kan } => {
            loopgroup_cmd(&input, &basepoint, depth, check_kan, seed)
        }
        Command::Wbar { group, depth, homology, check_fibration } => {
            wbar_cmd(&group, depth, homology, check_fibration, seed)
        }
        Command::Integrate { form, triangulation, cochain, refine } => {
            integrate_cmd(&form, &triangulation, cochain, refine, seed)
        }
        Command::Deligne { op } => deligne_cmd(op, seed),
        Command::Fixtures { name, out } => fixtures_cmd(&name, &out, seed),
    }
}

fn homology_group_json(h: &simpl_core::chains::HomologyGroup) -> serde_json::Value {
    serde_json::json!({
        "betti": h.betti,
        "torsion": h.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
    })
}

fn homology_cmd(input: &Path, max_dim: usize, seed: u64) -> Result<i32, String> {
    let mut report = RunReport::new(
        format!("homology --input {} --max-dim {max_dim}", input.display()),
        seed,
    );
    let sset = load_simplicial_set(input, max_dim + 1)?;
    let top = (max_dim + 1).min(sset.max_degree());
    let cc = normalized_complex(&sset, top).map_err(|e| e.to_string())?;
    for n in 0..=max_dim {
        let h = cc.homology(n).map_err(|e| e.to_string())?;
        report.push(Check::info(format!("H_{n}"), homology_group_json(&h)));
    }
    Ok(report.finish())
}

fn subdivide_selftest(seed: u64, chains: usize) -> i32 {
    let mut report = RunReport::new(format!("subdivide --selftest --chains {chains}"), seed);
    let mut rng = selftest::rng(seed);
    let mut pass = [0usize; 4];
    let mut fail = [0usize; 4];
    for i in 0..chains {
        let ambient = rng.gen_range(1..=3);
        let degree = (i % 5).min(4);
        let c = selftest::random_chain(&mut rng, ambient, degree);
        // dS = Sd
        if boundary(&subdivide(&c)) == subdivide(&boundary(&c)) {
            pass[0] += 1;
        } else {
            fail[0] += 1;
        }
        // dT + Td = id - S
        let lhs = boundary(&chain_homotopy_t(&c)).add(&chain_homotopy_t(&boundary(&c)));
        if lhs == c.sub(&subdivide(&c)) {
            pass[1] += 1;
        } else {
            fail[1] += 1;
        }
        // dD_r + D_r d = id - S^r, iteration depth limited by term growth
        let r_max = match degree {
            0..=2 => 4,
            3 => 2,
            _ => 1,
        };
        let mut ok = true;
        for r in 0..=r_max {
            let (sr, dr) = iterate(&c, r);
            let (_, dr_boundary) = iterate(&boundary(&c), r);
            if boundary(&dr).add(&dr_boundary) != c.sub(&sr) {
                ok = false;
            }
        }
        if ok {
            pass[2] += 1;
        } else {
            fail[2] += 1;
        }
        // Barr-Kock sign identity on low degrees
        if degree <= 3 {
            let sigma: Vec<usize> = {
                let mut v: Vec<usize> = (0..=degree).collect();
                for k in (1..v.len()).rev() {
                    let j = rng.gen_range(0..=k);
                    v.swap(j, k);
                }
                v
            };
            let s_perm = subdivide(&permute_chain(&c, &sigma).unwrap());
            let sign = simpl_core::subdivision::permutation_sign(&sigma);
            let expected = subdivide(&c).scale(&num_bigint::BigInt::from(sign));
            if s_perm == expected {
                pass[3] += 1;
            } else {
                fail[3] += 1;
            }
        }
    }
    let names = [
        "dS = Sd",
        "dT + Td = id - S",
        "dD_r + D_r d = id - S^r",
        "S(sigma_* c) = sgn(sigma) S(c)",
    ];
    for (i, name) in names.iter().enumerate() {
        let check = if fail[i] == 0 {
            Check::pass(format!("{name} [{} chains]", pass[i]))
        } else {
            Check::fail(
                *name,
                format!("{} of {} chains failed", fail[i], pass[i] + fail[i]),
            )
        };
        report.push(check);
    }
    report.finish()
}

fn loopgroup_cmd(
    input: &Path,
    basepoint: &str,
    depth: usize,
    check_kan: bool,
    seed: u64,
) -> Result<i32, String> {
    let mut report = RunReport::new(
        format!(
            "loopgroup --input {} --basepoint {basepoint} --depth {depth}{}",
            input.display(),
            if check_kan { " --check-kan" } else { "" }
        ),
        seed,
    );
    let sset = load_simplicial_set(input, depth + 1)?;
    let bp = sset
        .find_nondeg(0, basepoint)
        .ok_or_else(|| format!("unknown basepoint {basepoint:?}"))?;
    let tree = maximal_tree(&sset, bp.idx).map_err(|e| e.to_string())?;
    report.push(Check::info(
        "maximal tree edges",
        serde_json::json!(tree
            .edges
            .iter()
            .map(|&e| sset.nondeg_labels(1)[e].clone())
            .collect::<Vec<_>>()),
    ));
    let g = loop_group(&sset, bp.idx, &tree, depth).map_err(|e| e.to_string())?;
    report.push(Check::info(
        "generators per degree",
        serde_json::json!((0..=depth).map(|n| g.rank(n)).collect::<Vec<_>>()),
    ));
    match g.check_identities() {
        Ok(()) => report.push(Check::pass("simplicial identities on generators")),
        Err(e) => report.push(Check::fail("simplicial identities on generators", e.to_string())),
    }
    let pi0 = pi0_of_group(&g);
    let desc = match &pi0.recognized {
        Some(k) => format!("{k}"),
        None => format!("abelianized {}", pi0.abelianized),
    };
    report.push(Check::info("pi_0 of the loop group", serde_json::json!(desc)));
    if check_kan {
        let ab = abelianize(&g);
        let cc = normalized_complex(&sset, (depth + 1).min(sset.max_degree()))
            .map_err(|e| e.to_string())?;
        for i in 1..=depth {
            let pi = simplicial_abelian_homotopy(&ab, i - 1).map_err(|e| e.to_string())?;
            let h = cc.homology(i).map_err(|e| e.to_string())?;
            let name = format!("pi_{}(abelianized loop group) = H_{i}", i - 1);
            if pi == h {
                report.push(Check::pass(name).with_value(homology_group_json(&h)));
            } else {
                report.push(Check::fail(name, format!("pi = {pi}, H = {h}")));
            }
        }
    }
    Ok(report.finish())
}

fn wbar_cmd(
    group: &str,
    depth: usize,
    homology: bool,
    check_fibration: bool,
    seed: u64,
) -> Result<i32, String> {
    let mut report = RunReport::new(format!("wbar --group {group} --depth {depth}"), seed);
    let m: u64 = group
        .strip_prefix("zmod:")
        .and_then(|s| s.parse().ok())
        .filter(|&m| m >= 1)
        .ok_or_else(|| format!("unsupported group spec {group:?} (expected zmod:N)"))?;
    let g = FiniteGroup::cyclic(m);
    let w = wbar(&g, depth).map_err(|e| e.to_string())?;
    report.push(Check::info(
        "nondegenerate cells per degree",
        serde_json::json!((0..=depth).map(|n| w.nondeg_count(n)).collect::<Vec<_>>()),
    ));
    if homology {
        let cc = normalized_complex(&w, depth).map_err(|e| e.to_string())?;
        for n in 0..depth {
            let h = cc.homology(n).map_err(|e| e.to_string())?;
            report.push(Check::info(format!("H_{n}(Wbar)"), homology_group_json(&h)));
        }
    }
    if check_fibration {
        let total = w_total(&g, depth).map_err(|e| e.to_string())?;
        report.push(Check::info(
            "total space nondegenerate cells",
            serde_json::json!((0..=depth).map(|n| total.nondeg_count(n)).collect::<Vec<_>>()),
        ));
        for check in check_principal_fibration(&g, depth) {
            let name = format!("principal fibration checks in degree {}", check.degree);
            if check.action_free && check.orbits_match_base && check.identities_ok {
                report.push(Check::pass(name));
            } else {
                report.push(Check::fail(
                    name,
                    format!(
                        "free: {}, orbits: {}, identities: {}",
                        check.action_free, check.orbits_match_base, check.identities_ok
                    ),
                ));
            }
        }
    }
    Ok(report.finish())
}

fn integrate_cmd(
    form_path: &Path,
    tri_path: &Path,
    cochain: CochainChoice,
    refine: usize,
    seed: u64,
) -> Result<i32, String> {
    let kind = match cochain {
        CochainChoice::Taylor => "taylor",
        CochainChoice::Exact => "exact",
    };
    let mut report = RunReport::new(
        format!(
            "integrate --form {} --triangulation {} --cochain {kind} --refine {refine}",
            form_path.display(),
            tri_path.display()
        ),
        seed,
    );
    let form_dto: FormDto = read_json(form_path)?;
    let omega = form_dto.to_core().map_err(|e| e.to_string())?;
    let tri_dto: TriangulationDto = read_json(tri_path)?;
    let mut tri = tri_dto.to_core().map_err(|e| e.to_string())?;
    let antiderivative = match cochain {
        CochainChoice::Taylor => taylor_antiderivative(&omega),
        CochainChoice::Exact => exact_antiderivative(&omega),
    }
    .map_err(|e| e.to_string())?;
    for _ in 0..refine {
        tri = barycentric_refine(&tri);
    }
    report.push(Check::info("top simplices", serde_json::json!(tri.tops().len())));
    let sum = riemann_sum(&omega, &tri, &antiderivative).map_err(|e| e.to_string())?;
    report.push(Check::info(
        "riemann sum",
        serde_json::json!({
            "exact": formats::show_rat(&sum),
            "approx": num_traits::ToPrimitive::to_f64(&sum),
        }),
    ));
    Ok(report.finish())
}

fn deligne_cmd(op: DeligneOp, seed: u64) -> Result<i32, String> {
    match op {
        DeligneOp::Verify { input, degree, sampling } => {
            let mut report = RunReport::new(
                format!(
                    "deligne verify --degree {degree} --input {} --samples {} --tol {}",
                    input.display(),
                    sampling.samples,
                    sampling.tol
                ),
                seed,
            );
            let dto: CocycleDto = read_json(&input)?;
            if dto.degree != degree {
                return Err(format!("file declares degree {}, requested {degree}", dto.degree));
            }
            let opts = VerifyOptions { samples: sampling.samples, tolerance: sampling.tol };
            let data = dto.to_core().map_err(|e| e.to_string())?;
            let checks = match &data {
                CocycleData::One(cover, c) => from_verify(
                    &verify_cocycle_deg1(cover, c, &opts).map_err(|e| e.to_string())?,
                ),
                CocycleData::Two(cover, c) => from_verify(
                    &verify_cocycle_deg2(cover, c, &opts).map_err(|e| e.to_string())?,
                ),
            };
            for c in checks {
                report.push(c);
            }
            if let CocycleData::One(cover, c) = &data {
                if report.checks.iter().all(|c| c.status != Status::Fail) {
                    let (curv, curv_report) =
                        curvature(cover, c, &opts).map_err(|e| e.to_string())?;
                    for ch in from_verify(&curv_report) {
                        report.push(ch);
                    }
                    report.push(Check::info(
                        "curvature forms",
                        serde_json::json!(curv
                            .iter()
                            .map(|f| serde_json::to_value(FormDto::from_core(f)).unwrap())
                            .collect::<Vec<_>>()),
                    ));
                }
            }
            Ok(report.finish())
        }
        DeligneOp::Chern { input, loop_file, samples } => {
            let mut report = RunReport::new(
                format!(
                    "deligne chern --input {} --loop {} --samples {samples}",
                    input.display(),
                    loop_file.display()
                ),
                seed,
            );
            let dto: CocycleDto = read_json(&input)?;
            let CocycleData::One(cover, c) = dto.to_core().map_err(|e| e.to_string())? else {
                return Err("chern pairing needs a degree-1 cocycle".to_string());
            };
            let loop_dto: LoopDto = read_json(&loop_file)?;
            let spec = loop_dto.to_core().map_err(|e| e.to_string())?;
            let res = chern_number(&cover, &c, &spec, samples).map_err(|e| e.to_string())?;
            let mut check = Check::info(
                "chern number",
                serde_json::json!({"raw": res.raw, "rounded": res.rounded}),
            )
            .with_residual(res.deviation);
            if res.flagged {
                check.status = Status::Fail;
                check.witness = Some("raw value more than 0.01 from an integer".to_string());
            }
            report.push(check);
            Ok(report.finish())
        }
        DeligneOp::Holonomy { input, path, panels, check_gauge } => {
            let mut report = RunReport::new(
                format!(
                    "deligne holonomy --input {} --path {} --panels {panels}",
                    input.display(),
                    path.display()
                ),
                seed,
            );
            let dto: CocycleDto = read_json(&input)?;
            let CocycleData::One(cover, c) = dto.to_core().map_err(|e| e.to_string())? else {
                return Err("holonomy needs a degree-1 cocycle".to_string());
            };
            let path_dto: PathDto = read_json(&path)?;
            let chart_path = path_dto.to_core().map_err(|e| e.to_string())?;
            let opts = HolonomyOptions { panels, ..Default::default() };
            let h = holonomy(&cover, &c, &chart_path, &opts).map_err(|e| e.to_string())?;
            report.push(Check::info("holonomy", serde_json::json!({"re": h.0, "im": h.1})));
            if check_gauge {
                let mut rng = selftest::rng(seed);
                let mut worst = 0.0f64;
                for _ in 0..3 {
                    let lambdas: Vec<_> = (0..cover.num_charts())
                        .map(|i| selftest::random_gauge(&mut rng, cover.chart_dim(i)))
                        .collect();
                    let gauged =
                        gauge_transform(&cover, &c, &lambdas).map_err(|e| e.to_string())?;
                    let h2 =
                        holonomy(&cover, &gauged, &chart_path, &opts).map_err(|e| e.to_string())?;
                    let err = ((h.0 - h2.0).powi(2) + (h.1 - h2.1).powi(2)).sqrt();
                    worst = worst.max(err);
                }
                let name = "gauge invariance under random coboundaries";
                if worst < 1e-9 {
                    report.push(Check::pass(name).with_residual(worst));
                } else {
                    report.push(Check::fail(name, format!("residual {worst:.3e}")));
                }
            }
            Ok(report.finish())
        }
    }
}

fn fixtures_cmd(name: &str, out: &Path, seed: u64) -> Result<i32, String> {
    let mut report = RunReport::new(format!("fixtures {name}"), seed);
    let (filename, payload) = fixtures::fixture_json(name).ok_or_else(|| {
        format!("unknown fixture {name:?}; known: {}", fixtures::FIXTURE_NAMES.join(", "))
    })?;
    std::fs::create_dir_all(out).map_err(|e| e.to_string())?;
    let path = out.join(&filename);
    std::fs::write(&path, payload).map_err(|e| e.to_string())?;
    report.push(Check::info("written", serde_json::json!(path.display().to_string())));
    // The monopole fixtures ship with the equator loop.
    if name.starts_with("monopole") {
        let (loop_name, loop_payload) = fixtures::equator_json();
        let loop_path = out.join(loop_name);
        std::fs::write(&loop_path, loop_payload).map_err(|e| e.to_string())?;
        report.push(Check::info("written", serde_json::json!(loop_path.display().to_string())));
    }
    Ok(report.finish())
}
