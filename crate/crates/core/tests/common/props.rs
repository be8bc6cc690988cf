//! Property checks over seeded random instances. Each returns a description of the
//! first violation found.

use rand::Rng;

use torloc::lattice::{rat, Int, LatticeVector, Rat};
use torloc::localization::{
    e_sigma, e_sigma_principal, e_sigma_tau, e_sigma_with, hilbert_series, iota_star_with, is_balanced, Restriction,
};
use torloc::polyalg::{LaurentGF, Polynomial, RationalFunctionLF};
use torloc::polyhedra::{unimodular_resolve, Cone, Strategy};
use torloc::Error;

use super::{random_complete_fan, random_cone, random_integral_pp, random_vector, rng};

pub type Check = fn(u64) -> Result<(), String>;

/// Every property with its name, in a fixed order.
pub const ALL: [(&str, Check); 10] = [
    ("sum of e_sigma vanishes on complete fans", vanishing),
    ("restricted sums are 0 below top dimension and 1 at the top", restricted_vanishing),
    ("divisor relation", divisor_relation),
    ("ray sums over a subdivision collapse", ray_sum),
    ("e_sigma is independent of the resolution", subdivision_independence),
    ("principal parts of sums keep or raise the degree", principal_degrees),
    ("Hilbert series matches lattice point enumeration", hilbert_vs_enumeration),
    ("iota^* outputs are balanced", iota_balanced),
    ("iota^* is additive", iota_additive),
    ("iota^* is independent of the quotient section", section_independence),
];

fn err<E: std::fmt::Debug>(ctx: impl std::fmt::Display) -> impl FnOnce(E) -> String {
    move |e| format!("{ctx}: {e:?}")
}

fn is_exactly_zero(f: &RationalFunctionLF) -> bool {
    f.is_zero() || f.to_polynomial().map(|p| p == Polynomial::zero(f.nvars())).unwrap_or(false)
}

fn exactly_equal(a: &RationalFunctionLF, b: &RationalFunctionLF) -> bool {
    is_exactly_zero(&a.sub(b))
}

fn rank(seed: u64) -> usize {
    2 + (seed % 2) as usize
}

pub fn vanishing(seed: u64) -> Result<(), String> {
    let mut r = rng(seed ^ 0x01);
    let fan = random_complete_fan(&mut r, rank(seed), 12);
    let es = fan.maximal_cones().iter().map(e_sigma).collect::<Result<Vec<_>, _>>().map_err(err("e_sigma"))?;
    let total = RationalFunctionLF::sum(fan.ambient(), es);
    if !is_exactly_zero(&total) {
        return Err(format!("sum is {total}"));
    }
    Ok(())
}

pub fn restricted_vanishing(seed: u64) -> Result<(), String> {
    let mut r = rng(seed ^ 0x02);
    let fan = random_complete_fan(&mut r, rank(seed), 10);
    let n = fan.ambient();
    for (key, tau) in fan.all_cones() {
        let terms = fan
            .maximal_containing(&key)
            .iter()
            .map(|&i| e_sigma_tau(&fan.maximal_cones()[i], tau))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err(format!("tau {key:?}")))?;
        let total = RationalFunctionLF::sum(n, terms);
        let expected = if tau.dim() == n { RationalFunctionLF::one(n) } else { RationalFunctionLF::zero(n) };
        if !exactly_equal(&total, &expected) {
            return Err(format!("tau {key:?} of dim {}: sum is {total}", tau.dim()));
        }
    }
    Ok(())
}

fn ray_cone(v: &LatticeVector) -> Cone {
    Cone::new(v.0.len(), std::slice::from_ref(v)).expect("nonzero ray")
}

pub fn divisor_relation(seed: u64) -> Result<(), String> {
    let mut r = rng(seed ^ 0x03);
    let n = rank(seed);
    let sigma = random_cone(&mut r, n, 3, 2);
    let u = random_vector(&mut r, n, 4);
    let terms = sigma
        .rays()
        .iter()
        .map(|v| e_sigma_tau(&sigma, &ray_cone(v)).map(|e| e.scale(&Rat::from_integer(u.dot(v)))))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err("e_sigma_rho"))?;
    let lhs = RationalFunctionLF::sum(n, terms);
    let rhs = e_sigma(&sigma).map_err(err("e_sigma"))?.mul_polynomial(&Polynomial::linear(&u.0));
    if !exactly_equal(&lhs, &rhs) || !lhs.equals_by_evaluation(&rhs, seed, 5) {
        return Err(format!("{sigma}, u = {u}: {lhs} != {rhs}"));
    }
    Ok(())
}

pub fn ray_sum(seed: u64) -> Result<(), String> {
    let mut r = rng(seed ^ 0x04);
    let n = rank(seed);
    let sigma = random_cone(&mut r, n, 3, 1);
    let pieces = unimodular_resolve(&sigma).map_err(err("resolve"))?;
    let mut rays: Vec<LatticeVector> = pieces.iter().flat_map(|p| p.rays().iter().cloned()).collect();
    rays.sort();
    rays.dedup();
    for v in &rays {
        let rho = ray_cone(v);
        let terms = pieces
            .iter()
            .filter(|p| p.rays().contains(v))
            .map(|p| e_sigma_tau(p, &rho))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err("piece"))?;
        let total = RationalFunctionLF::sum(n, terms);
        let expected = if sigma.rays().contains(v) {
            e_sigma_tau(&sigma, &rho).map_err(err("sigma"))?
        } else {
            RationalFunctionLF::zero(n)
        };
        if !exactly_equal(&total, &expected) {
            return Err(format!("{sigma}, ray {v}: {total} != {expected}"));
        }
    }
    Ok(())
}

pub fn subdivision_independence(seed: u64) -> Result<(), String> {
    let mut r = rng(seed ^ 0x05);
    let sigma = random_cone(&mut r, rank(seed), 3, 2);
    let a = e_sigma_with(&sigma, Strategy::Forward).map_err(err("forward"))?;
    let b = e_sigma_with(&sigma, Strategy::Reverse).map_err(err("reverse"))?;
    let c = e_sigma_principal(&sigma).map_err(err("principal"))?;
    let d = e_sigma(&sigma).map_err(err("simplicial"))?;
    if !a.equals_by_evaluation(&b, seed, 5) || !exactly_equal(&a, &b) {
        return Err(format!("{sigma}: {a} != {b}"));
    }
    if !exactly_equal(&a, &c) {
        return Err(format!("{sigma}: subdivision {a} != principal part {c}"));
    }
    if !exactly_equal(&a, &d) {
        return Err(format!("{sigma}: unimodular pieces {a} != simplicial pieces {d}"));
    }
    if a.degree() != Some(-(sigma.ambient() as i64)) {
        return Err(format!("{sigma}: degree {:?}", a.degree()));
    }
    Ok(())
}

fn random_term(r: &mut rand_chacha::ChaCha8Rng, n: usize) -> (Rat, Vec<Int>, Vec<Vec<Int>>) {
    let w = random_vector(r, n, 2).0;
    let den = (0..n)
        .map(|_| loop {
            let u = random_vector(r, n, 2);
            if u.0.iter().any(|x| *x != Int::from(0)) {
                return u.0;
            }
        })
        .collect();
    (rat(r.gen_range(1..=3) * if r.gen_bool(0.5) { 1 } else { -1 }, 1), w, den)
}

/// Summands all of degree `-n`; every other instance forces the principal parts to cancel.
pub fn principal_degrees(seed: u64) -> Result<(), String> {
    let mut r = rng(seed ^ 0x06);
    let n = rank(seed);
    let mut summands = Vec::new();
    for _ in 0..r.gen_range(2..=3) {
        let (c, w, den) = random_term(&mut r, n);
        let mut g = LaurentGF::zero(n);
        g.push_term(c, w, den).map_err(err("term"))?;
        summands.push(g);
    }
    if seed.is_multiple_of(2) {
        let (c, w, den) = random_term(&mut r, n);
        let shift = loop {
            let v = random_vector(&mut r, n, 2);
            if v.0.iter().any(|x| *x != Int::from(0)) {
                break v.0;
            }
        };
        let shifted: Vec<Int> = w.iter().zip(&shift).map(|(a, b)| a + b).collect();
        let mut g = LaurentGF::zero(n);
        g.push_term(c.clone(), w, den.clone()).map_err(err("term"))?;
        g.push_term(-c, shifted, den).map_err(err("term"))?;
        summands = vec![g];
    }
    let d = -(n as i64);
    let mut parts = Vec::new();
    let mut total = LaurentGF::zero(n);
    for g in &summands {
        for t in g.terms() {
            let mut single = LaurentGF::zero(n);
            single.push_term(t.coeff.clone(), t.numerator.clone(), t.denominators.clone()).map_err(err("term"))?;
            let (pp, deg) = single.principal_part().map_err(err("summand"))?;
            if deg != d {
                return Err(format!("summand degree {deg}, expected {d}"));
            }
            parts.push(pp);
        }
        total = total.add(g);
    }
    let sum = RationalFunctionLF::sum(n, parts);
    match total.principal_part() {
        Ok((pp, deg)) if !is_exactly_zero(&sum) => {
            if deg != d || !exactly_equal(&pp, &sum) {
                return Err(format!("principal part {pp} of degree {deg}, expected {sum}"));
            }
        }
        Ok((_, deg)) => {
            if deg <= d {
                return Err(format!("principal parts cancel but the total has degree {deg}"));
            }
        }
        Err(Error::ZeroFunction) if is_exactly_zero(&sum) => {}
        Err(e) => return Err(format!("total: {e:?}")),
    }
    Ok(())
}

pub fn hilbert_vs_enumeration(seed: u64) -> Result<(), String> {
    const DEGREE: i64 = 6;
    let mut r = rng(seed ^ 0x07);
    let n = rank(seed);
    let (sigma, dual, g, bound) = loop {
        let sigma = random_cone(&mut r, n, 2, 1);
        let dual = sigma.dual().map_err(err("dual"))?;
        // A generic interior grading, so that no denominator exponent pairs to zero.
        let g = sigma.interior_point().scale(&Int::from(4)).add(&random_vector(&mut r, n, 1));
        if !sigma.contains_in_relative_interior(&g.0) {
            continue;
        }
        let Ok(gf) = hilbert_series(&sigma) else { return Err(format!("{sigma}: no Hilbert series")) };
        if gf.terms().iter().flat_map(|t| &t.denominators).any(|u| torloc::lattice::dot(u, &g.0) == Int::from(0)) {
            continue;
        }
        // |u|_inf <= DEGREE * max |w|_inf / <w, g> over the dual rays w.
        let ratio = dual
            .rays()
            .iter()
            .map(|w| {
                let m = w.0.iter().map(|x| x.magnitude().clone()).max().unwrap();
                Rat::new(Int::from(m), w.dot(&g.0))
            })
            .max()
            .unwrap();
        let bound = (ratio * Rat::from_integer(Int::from(DEGREE))).ceil().to_integer();
        if bound <= Int::from(10) {
            break (sigma, dual, g, i64::try_from(bound).unwrap());
        }
    };
    let series =
        hilbert_series(&sigma).map_err(err("hilbert"))?.graded_expansion(&g.0, DEGREE).map_err(err("expand"))?;
    let mut points = std::collections::BTreeMap::new();
    let mut u = vec![-bound; n];
    loop {
        let v: Vec<Int> = u.iter().map(|&x| Int::from(x)).collect();
        if dual.contains(&v) && torloc::lattice::dot(&v, &g.0) <= Int::from(DEGREE) {
            points.insert(v, rat(1, 1));
        }
        let mut i = 0;
        while i < n && u[i] == bound {
            u[i] = -bound;
            i += 1;
        }
        if i == n {
            break;
        }
        u[i] += 1;
    }
    if series != points {
        return Err(format!("{sigma}: series has {} terms, enumeration {}", series.len(), points.len()));
    }
    Ok(())
}

fn fan_and_degree(seed: u64, salt: u64) -> (torloc::polyhedra::Fan, u32, rand_chacha::ChaCha8Rng) {
    let mut r = rng(seed ^ salt);
    let n = rank(seed);
    let fan = random_complete_fan(&mut r, n, 8);
    let k = r.gen_range(0..=n as u32);
    (fan, k, r)
}

pub fn iota_balanced(seed: u64) -> Result<(), String> {
    let (fan, k, mut r) = fan_and_degree(seed, 0x08);
    let f = random_integral_pp(&mut r, &fan, k);
    let w = iota_star_with(&fan, &f, Restriction::Section).map_err(err("iota"))?;
    let (ok, witnesses) = is_balanced(&fan, &w).map_err(err("balance"))?;
    if !ok {
        return Err(format!("degree {k}: unbalanced at {witnesses:?}"));
    }
    Ok(())
}

pub fn iota_additive(seed: u64) -> Result<(), String> {
    let (fan, k, mut r) = fan_and_degree(seed, 0x09);
    let f = random_integral_pp(&mut r, &fan, k);
    let g = random_integral_pp(&mut r, &fan, k);
    let sum = f.add(&g).map_err(err("add"))?;
    let a = iota_star_with(&fan, &sum, Restriction::Section).map_err(err("iota"))?;
    let b = iota_star_with(&fan, &f, Restriction::Section)
        .map_err(err("iota"))?
        .add(&iota_star_with(&fan, &g, Restriction::Section).map_err(err("iota"))?);
    if a != b {
        return Err(format!("degree {k}: {a} != {b}"));
    }
    Ok(())
}

pub fn section_independence(seed: u64) -> Result<(), String> {
    let (fan, k, mut r) = fan_and_degree(seed, 0x0a);
    let f = random_integral_pp(&mut r, &fan, k);
    let a = iota_star_with(&fan, &f, Restriction::Section).map_err(err("section"))?;
    let b = iota_star_with(&fan, &f, Restriction::ShiftedSection(seed)).map_err(err("shifted"))?;
    let c = iota_star_with(&fan, &f, Restriction::Ambient).map_err(err("ambient"))?;
    if a != b || a != c {
        return Err(format!("degree {k}: section {a}, shifted {b}, ambient {c}"));
    }
    Ok(())
}
