//! Seeded random corpora for the identity test suites: rational linear
//! chains, polynomial forms, polynomial maps, and gauge functions. Every
//! generator is deterministic in the seed.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use simpl_core::forms::{PolyMap, RationalForm};
use simpl_core::poly::{Poly, RatFn};
use simpl_core::subdivision::{AffineSimplex, LinearChain};
use simpl_core::{BigRational, Rat};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    let p = rng.gen_range(-9i64..=9);
    let q = rng.gen_range(1i64..=4);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn random_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rat> {
    (0..dim).map(|_| random_rat(rng)).collect()
}

/// Random rational chain of the given degree with 1..=3 terms.
pub fn random_chain(rng: &mut ChaCha8Rng, ambient: usize, degree: usize) -> LinearChain {
    let mut chain = LinearChain::zero(ambient, degree as isize);
    for _ in 0..rng.gen_range(1..=3) {
        let pts: Vec<Vec<Rat>> = (0..=degree).map(|_| random_point(rng, ambient)).collect();
        let coeff = loop {
            let c = rng.gen_range(-3i64..=3);
            if c != 0 {
                break c;
            }
        };
        chain.add_term(AffineSimplex::new(ambient, pts), BigInt::from(coeff));
    }
    chain
}

/// Random polynomial in `nvars` variables with total degree <= 2.
pub fn random_poly(rng: &mut ChaCha8Rng, nvars: usize) -> Poly {
    let mut p = Poly::zero(nvars);
    for _ in 0..rng.gen_range(1..=3) {
        let mut exps = vec![0u32; nvars];
        let mut budget = 2;
        for e in exps.iter_mut() {
            let k = rng.gen_range(0..=budget);
            *e = k;
            budget -= k;
        }
        p = p.add(&Poly::from_terms(nvars, [(exps, random_rat(rng))]));
    }
    p
}

/// Random polynomial k-form on a chart.
pub fn random_form(rng: &mut ChaCha8Rng, chart_dim: usize, degree: usize) -> RationalForm {
    let mut form = RationalForm::zero(chart_dim, degree);
    // choose up to three strictly increasing index tuples
    let tuples = increasing_tuples(chart_dim, degree);
    for idx in tuples {
        if rng.gen_bool(0.7) {
            form.add_term(idx, RatFn::from_poly(random_poly(rng, chart_dim)));
        }
    }
    form
}

fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, start: usize, n: usize, k: usize) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(out, cur, v + 1, n, k);
            cur.pop();
        }
    }
    rec(&mut out, &mut cur, 0, n, k);
    out
}

/// Random polynomial map with small integer-ish coefficients.
pub fn random_polymap(rng: &mut ChaCha8Rng, domain: usize, codomain: usize) -> PolyMap {
    PolyMap::new(
        domain,
        (0..codomain)
            .map(|_| RatFn::from_poly(random_poly(rng, domain)))
            .collect(),
    )
}

/// Random rational function with a denominator that has no real zeros
/// (1 + sum of squares), suitable as an outer function for chain rules.
pub fn random_ratfn_smooth(rng: &mut ChaCha8Rng, nvars: usize) -> RatFn {
    let num = random_poly(rng, nvars);
    let mut den = Poly::one(nvars);
    for i in 0..nvars {
        if rng.gen_bool(0.5) {
            let v = Poly::var(nvars, i);
            den = den.add(&v.mul(&v));
        }
    }
    RatFn::new(num, den)
}

/// Random multi-index with 1 <= |beta| <= max_order.
pub fn random_multi_index(rng: &mut ChaCha8Rng, nvars: usize, max_order: u32) -> Vec<u32> {
    loop {
        let mut beta = vec![0u32; nvars];
        let mut budget = max_order;
        for b in beta.iter_mut() {
            let k = rng.gen_range(0..=budget);
            *b = k;
            budget -= k;
        }
        if beta.iter().sum::<u32>() >= 1 {
            return beta;
        }
    }
}

/// Random gauge: one nonvanishing circle function per chart
/// (`c + x^2 + y^2 + i(linear)` keeps it zero-free on the plane).
pub fn random_gauge(rng: &mut ChaCha8Rng, nvars: usize) -> simpl_core::deligne::CircleFn {
    let c = Poly::constant(nvars, simpl_core::rint(rng.gen_range(1i64..=4)));
    let mut re = c;
    for i in 0..nvars {
        let v = Poly::var(nvars, i);
        re = re.add(&v.mul(&v));
    }
    let mut im = Poly::zero(nvars);
    for i in 0..nvars {
        im = im.add(&Poly::var(nvars, i).scale(&simpl_core::rint(rng.gen_range(-2i64..=2))));
    }
    simpl_core::deligne::CircleFn::new(re, im)
}
