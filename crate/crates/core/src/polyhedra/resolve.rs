use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::lattice::{hnf, rat_from_int, solve_rational, Int, IntMatrix, LatticeVector, Rat};
use crate::polyhedra::cone::Cone;

/// Order in which rays are pulled during triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Pull rays in lexicographic order.
    #[default]
    Forward,
    /// Pull rays in reverse lexicographic order.
    Reverse,
}

/// Pulling triangulation of a pointed cone, using the given ray order.
pub fn triangulate(sigma: &Cone, strategy: Strategy) -> Vec<Cone> {
    let mut out = Vec::new();
    pull(sigma, strategy, &mut out);
    out
}

fn pull(sigma: &Cone, strategy: Strategy, out: &mut Vec<Cone>) {
    if sigma.is_simplicial() {
        out.push(sigma.clone());
        return;
    }
    let apex = match strategy {
        Strategy::Forward => 0,
        Strategy::Reverse => sigma.rays().len() - 1,
    };
    let v = sigma.rays()[apex].clone();
    for facet in sigma.facet_ray_sets() {
        if facet.contains(&apex) {
            continue;
        }
        let mut pieces = Vec::new();
        pull(&sigma.face(&facet), strategy, &mut pieces);
        for p in pieces {
            let mut gens = p.rays().to_vec();
            gens.push(v.clone());
            out.push(Cone::new(sigma.ambient(), &gens).expect("cone over a face"));
        }
    }
}

/// Coefficients of `v` in the basis of rays of a simplicial cone.
fn barycentric(sigma: &Cone, v: &[Int]) -> Vec<Rat> {
    let d = sigma.dim();
    let cols: Vec<Vec<Int>> = sigma.rays().iter().map(|r| sigma.local_coordinates(r)).collect();
    let l = sigma.local_coordinates(v);
    let a: Vec<Vec<Rat>> = (0..d).map(|i| cols.iter().map(|c| rat_from_int(&c[i])).collect()).collect();
    let b: Vec<Rat> = l.iter().map(rat_from_int).collect();
    solve_rational(&a, &b, d).expect("rays form a basis of the span")
}

/// Nonzero lattice points of the half-open parallelepiped spanned by the rays
/// of a simplicial cone.
pub fn parallelepiped_points(sigma: &Cone) -> Vec<LatticeVector> {
    let d = sigma.dim();
    let rows: Vec<Vec<Int>> = sigma.rays().iter().map(|r| sigma.local_coordinates(r)).collect();
    let (h, _) = hnf(&IntMatrix::new(rows, d));
    let diag: Vec<Int> = (0..d).map(|i| h.get(i, i).clone()).collect();
    let mut reps: Vec<Vec<Int>> = vec![Vec::new()];
    for bound in &diag {
        let mut next = Vec::new();
        for r in &reps {
            let mut x = Int::zero();
            while &x < bound {
                let mut r = r.clone();
                r.push(x.clone());
                next.push(r);
                x += 1;
            }
        }
        reps = next;
    }
    let basis = sigma.span_basis();
    let mut out = Vec::new();
    for rep in reps {
        let v = LatticeVector(basis.apply_left(&rep));
        let lambda = barycentric(sigma, &v);
        let mut acc = vec![Rat::zero(); sigma.ambient()];
        for (c, r) in lambda.iter().zip(sigma.rays()) {
            let frac = c - Rat::from_integer(c.numer().div_floor(c.denom()));
            for (a, x) in acc.iter_mut().zip(r.iter()) {
                *a += &frac * rat_from_int(x);
            }
        }
        let p = LatticeVector(acc.iter().map(|a| a.to_integer()).collect());
        if !p.is_zero() {
            out.push(p);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Shortest nonzero parallelepiped point (ambient norm, then lexicographic).
fn subdivision_point(sigma: &Cone) -> LatticeVector {
    parallelepiped_points(sigma)
        .into_iter()
        .min_by(|a, b| (a.norm_squared(), a).cmp(&(b.norm_squared(), b)))
        .expect("non-unimodular cone has interior parallelepiped points")
}

/// Star subdivision of a simplicial cone at a point it contains.
fn star(sigma: &Cone, w: &LatticeVector) -> Vec<Cone> {
    let carrier = sigma.carrier(w);
    carrier
        .iter()
        .map(|&drop| {
            let mut gens: Vec<LatticeVector> =
                sigma.rays().iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, r)| r.clone()).collect();
            gens.push(w.clone());
            Cone::new(sigma.ambient(), &gens).expect("star subdivision piece")
        })
        .collect()
}

/// Unimodular subdivision: pulling triangulation followed by stellar
/// subdivisions at shortest parallelepiped points.
pub fn unimodular_resolve_with(sigma: &Cone, strategy: Strategy) -> Result<Vec<Cone>> {
    let mut cones = triangulate(sigma, strategy);
    while let Some(bad) = cones.iter().find(|c| !c.is_unimodular()).cloned() {
        let w = subdivision_point(&bad);
        let mut next = Vec::new();
        for c in cones {
            if c.contains(&w) {
                next.extend(star(&c, &w));
            } else {
                next.push(c);
            }
        }
        cones = next;
    }
    cones.sort();
    Ok(cones)
}

pub fn unimodular_resolve(sigma: &Cone) -> Result<Vec<Cone>> {
    unimodular_resolve_with(sigma, Strategy::Forward)
}

/// Sum of the multiplicities of simplicial pieces.
pub fn total_multiplicity(pieces: &[Cone]) -> Int {
    pieces.iter().fold(Int::zero(), |acc, p| acc + p.multiplicity())
}

/// Whether every piece has multiplicity one.
pub fn all_unimodular(pieces: &[Cone]) -> bool {
    pieces.iter().all(|p| p.multiplicity().is_one())
}
