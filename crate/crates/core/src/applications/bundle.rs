use std::collections::BTreeMap;

use num_traits::Zero;

use crate::applications::mixed::PolytopeSystem;
use crate::error::{Error, Result};
use crate::lattice::{rat_from_int, solve_rational, Int, LatticeVector, Rat, Subspace};
use crate::localization::e_sigma;
use crate::polyalg::{Polynomial, RationalFunctionLF};
use crate::polyhedra::{independent_subset, Fan};

/// Largest rank for which characters are solved from filtrations.
pub const MAX_SOLVED_RANK: usize = 4;

/// A decreasing filtration `E(i)` of `Q^r`, stored by its jumps: `E(i)` is the
/// subspace of the largest threshold `<= i`, and the whole space below the first
/// threshold. The last subspace must be zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    rank: usize,
    steps: Vec<(i64, Subspace)>,
}

impl Filtration {
    pub fn new(rank: usize, steps: Vec<(i64, Subspace)>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Validation("filtration needs at least one step".into()));
        }
        let mut prev = Subspace::full(rank);
        let mut last = i64::MIN;
        for (t, s) in &steps {
            if s.ambient() != rank {
                return Err(Error::VariableMismatch(s.ambient(), rank));
            }
            if *t <= last {
                return Err(Error::Validation("filtration thresholds must increase".into()));
            }
            if !prev.contains(s) {
                return Err(Error::Validation("filtration must be decreasing".into()));
            }
            prev = s.clone();
            last = *t;
        }
        if prev.dim() != 0 {
            return Err(Error::Validation("filtration must end in the zero subspace".into()));
        }
        Ok(Filtration { rank, steps })
    }

    /// `E(i)`.
    pub fn at(&self, i: i64) -> Subspace {
        self.steps
            .iter()
            .rev()
            .find(|(t, _)| *t <= i)
            .map(|(_, s)| s.clone())
            .unwrap_or_else(|| Subspace::full(self.rank))
    }

    pub fn steps(&self) -> &[(i64, Subspace)] {
        &self.steps
    }

    /// Values `i` with `dim E(i) > dim E(i+1)`, with that drop as multiplicity.
    pub fn jumps(&self) -> Vec<(i64, usize)> {
        let mut out = Vec::new();
        let mut prev = self.rank;
        for (t, s) in &self.steps {
            if s.dim() < prev {
                out.push((t - 1, prev - s.dim()));
            }
            prev = s.dim();
        }
        out
    }
}

/// A toric vector bundle given by Klyachko filtrations on the rays of a fan,
/// optionally with the character multisets `u(sigma)` of the maximal cones.
#[derive(Clone, Debug)]
pub struct ToricVectorBundle {
    rank: usize,
    filtrations: BTreeMap<usize, Filtration>,
    characters: BTreeMap<usize, Vec<LatticeVector>>,
}

impl ToricVectorBundle {
    pub fn new(
        rank: usize,
        filtrations: BTreeMap<usize, Filtration>,
        characters: BTreeMap<usize, Vec<LatticeVector>>,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Validation("bundle rank must be positive".into()));
        }
        if let Some(f) = filtrations.values().find(|f| f.rank != rank) {
            return Err(Error::VariableMismatch(f.rank, rank));
        }
        if let Some((i, u)) = characters.iter().find(|(_, u)| u.len() != rank) {
            return Err(Error::Validation(format!("cone {i} has {} characters, expected {rank}", u.len())));
        }
        Ok(ToricVectorBundle { rank, filtrations, characters })
    }

    /// The direct sum of the line bundles with characters `sign * u_i(sigma)`.
    pub fn split(fan: &Fan, characters: Vec<Vec<LatticeVector>>) -> Result<Self> {
        let rank = characters.first().map(Vec::len).unwrap_or(0);
        if characters.len() != fan.maximal_cones().len() {
            return Err(Error::Validation("one character multiset per maximal cone".into()));
        }
        Self::new(rank, BTreeMap::new(), characters.into_iter().enumerate().collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn filtrations(&self) -> &BTreeMap<usize, Filtration> {
        &self.filtrations
    }

    /// Character multisets given directly, keyed by maximal cone index.
    pub fn characters(&self) -> &BTreeMap<usize, Vec<LatticeVector>> {
        &self.characters
    }

    fn filtration(&self, ray: usize) -> Result<&Filtration> {
        self.filtrations.get(&ray).ok_or_else(|| Error::Validation(format!("no filtration for ray {ray}")))
    }

    /// Checks `dim E^rho(i) = #{u : <u, v_rho> >= i}` on every ray of a maximal cone
    /// that carries a filtration.
    pub fn check_characters(&self, fan: &Fan, cone: usize, us: &[LatticeVector]) -> Result<()> {
        for &r in &fan.maximal_keys()[cone] {
            let Some(f) = self.filtrations.get(&r) else { continue };
            let v = &fan.rays()[r];
            let vals: Vec<i64> = us.iter().map(|u| small(&u.dot(v))).collect::<Result<_>>()?;
            let mut probes: Vec<i64> = f.steps().iter().flat_map(|(t, _)| [t - 1, *t]).collect();
            probes.extend(vals.iter().flat_map(|x| [x - 1, *x, x + 1]));
            for i in probes {
                let count = vals.iter().filter(|&&x| x >= i).count();
                if f.at(i).dim() != count {
                    return Err(Error::IncompatibleFiltrations(format!(
                        "ray {r} at {i}: dimension {} but {count} characters",
                        f.at(i).dim()
                    )));
                }
            }
        }
        Ok(())
    }

    /// `u(sigma)` for a maximal cone: given ones are checked against the
    /// filtrations, missing ones are solved from them.
    pub fn characters_of(&self, fan: &Fan, cone: usize) -> Result<Vec<LatticeVector>> {
        if cone >= fan.maximal_cones().len() {
            return Err(Error::OutOfRange(format!("cone {cone}")));
        }
        match self.characters.get(&cone) {
            Some(u) => {
                self.check_characters(fan, cone, u)?;
                let mut u = u.clone();
                u.sort();
                Ok(u)
            }
            None => resolve_klyachko(self, fan, cone),
        }
    }
}

fn small(x: &Int) -> Result<i64> {
    i64::try_from(x.clone()).map_err(|_| Error::Validation("character pairing out of range".into()))
}

/// Solves the character multiset `u(sigma)` of a full-dimensional maximal cone
/// from the filtrations of its rays.
pub fn resolve_klyachko(bundle: &ToricVectorBundle, fan: &Fan, cone: usize) -> Result<Vec<LatticeVector>> {
    if bundle.rank > MAX_SOLVED_RANK {
        return Err(Error::RankTooLarge(bundle.rank));
    }
    let sigma = fan.maximal_cones().get(cone).ok_or_else(|| Error::OutOfRange(format!("cone {cone}")))?;
    if !sigma.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let n = fan.ambient();
    let key = &fan.maximal_keys()[cone];
    let rays: Vec<&LatticeVector> = key.iter().map(|&r| &fan.rays()[r]).collect();
    let filts: Vec<&Filtration> = key.iter().map(|&r| bundle.filtration(r)).collect::<Result<_>>()?;
    let jump_sets: Vec<Vec<i64>> = filts.iter().map(|f| f.jumps().iter().map(|j| j.0).collect()).collect();

    let ray_rows: Vec<Vec<Int>> = rays.iter().map(|r| r.0.clone()).collect();
    let basis = independent_subset(&ray_rows, n);
    let mut candidates: Vec<LatticeVector> = Vec::new();
    let mut choice = vec![0usize; n];
    'grid: loop {
        let a: Vec<Vec<Rat>> = basis.iter().map(|&b| ray_rows[b].iter().map(rat_from_int).collect()).collect();
        let rhs: Vec<Rat> =
            basis.iter().zip(&choice).map(|(&b, &c)| Rat::from_integer(Int::from(jump_sets[b][c]))).collect();
        if let Some(u) = solve_rational(&a, &rhs, n) {
            if u.iter().all(|x| x.is_integer()) {
                let u = LatticeVector(u.iter().map(|x| x.to_integer()).collect());
                let ok = rays.iter().zip(&jump_sets).all(|(v, js)| js.iter().any(|&j| Int::from(j) == u.dot(v)));
                if ok && !candidates.contains(&u) {
                    candidates.push(u);
                }
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                break 'grid;
            }
            choice[i] += 1;
            if choice[i] < jump_sets[basis[i]].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }

    // Multiplicity of u: dim V(u) minus the dimension of the sum of V(u') over the
    // candidates u' != u with u' - u in the dual cone, where V(u) = ∩ E^rho(<u, v_rho>).
    let v_of = |u: &LatticeVector| -> Result<Subspace> {
        let mut s = Subspace::full(bundle.rank);
        for (v, f) in rays.iter().zip(&filts) {
            s = s.intersect(&f.at(small(&u.dot(v))?));
        }
        Ok(s)
    };
    let mut out = Vec::new();
    for u in &candidates {
        let vu = v_of(u)?;
        let mut above = Subspace::zero(bundle.rank);
        for w in &candidates {
            if w != u && rays.iter().all(|v| w.dot(v) >= u.dot(v)) {
                above = above.sum(&v_of(w)?);
            }
        }
        let m = vu.dim().checked_sub(above.dim()).ok_or_else(|| {
            Error::IncompatibleFiltrations(format!("filtrations on cone {cone} are not simultaneously split"))
        })?;
        out.extend(std::iter::repeat_n(u.clone(), m));
    }
    if out.len() != bundle.rank {
        return Err(Error::IncompatibleFiltrations(format!(
            "cone {cone}: found {} characters for a rank {} bundle",
            out.len(),
            bundle.rank
        )));
    }
    out.sort();
    bundle.check_characters(fan, cone, &out)?;
    Ok(out)
}

/// A partition `lambda_1 >= ... >= lambda_s > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.is_empty() {
            return Err(Error::Validation("partition parts must be positive".into()));
        }
        parts.sort_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    /// Parses `"111"`, `"21"` or `"2,1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse().map_err(|_| Error::Parse(format!("bad partition {s:?}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad partition {s:?}"))))
                .collect::<Result<_>>()?
        };
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }
}

/// `i`-th elementary symmetric polynomial of the linear forms `u`, zero for `i > len(u)`.
pub fn elementary_symmetric(nvars: usize, u: &[LatticeVector], i: usize) -> Polynomial {
    if i > u.len() {
        return Polynomial::zero(nvars);
    }
    // Coefficients of prod (1 + u_j t).
    let mut coeffs = vec![Polynomial::one(nvars)];
    for v in u {
        let l = Polynomial::linear(&v.0);
        let mut next = coeffs.clone();
        next.push(Polynomial::zero(nvars));
        for k in 0..coeffs.len() {
            next[k + 1] = &next[k + 1] + &(&coeffs[k] * &l);
        }
        coeffs = next;
    }
    coeffs[i].clone()
}

/// `epsilon_lambda(u) = prod_j e_{lambda_j}(u)`.
pub fn eps_lambda(nvars: usize, u: &[LatticeVector], lambda: &Partition) -> Polynomial {
    lambda.parts().iter().fold(Polynomial::one(nvars), |acc, &p| &acc * &elementary_symmetric(nvars, u, p))
}

/// `c_lambda(E) = sum_sigma e_sigma epsilon_lambda(u(sigma))`.
pub fn chern_number(fan: &Fan, bundle: &ToricVectorBundle, lambda: &Partition) -> Result<Int> {
    let n = fan.ambient();
    if lambda.size() != n {
        return Err(Error::DegreeMismatch(format!("partition of {} on a fan of dimension {n}", lambda.size())));
    }
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    let terms = fan
        .maximal_cones()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let u = bundle.characters_of(fan, i)?;
            Ok(e_sigma(s)?.mul_polynomial(&eps_lambda(n, &u, lambda)))
        })
        .collect::<Result<Vec<_>>>()?;
    let p = RationalFunctionLF::sum(n, terms).to_polynomial()?;
    let c = p.as_constant().unwrap_or_else(Rat::zero);
    if !c.is_integer() {
        return Err(Error::Internal(format!("Chern number {c} is not an integer")));
    }
    Ok(c.to_integer())
}

/// Sign relating the characters of `O(D_1) + ... + O(D_n)` to the minimal vertices.
pub const SPLIT_SIGN: i64 = -1;

/// `O(D_{P_1}) + ... + O(D_{P_n})` with `u(sigma) = sign * {u_1(sigma), ..., u_n(sigma)}`.
pub fn split_bundle(sys: &PolytopeSystem, sign: i64) -> Result<ToricVectorBundle> {
    let s = Int::from(sign);
    let cs = sys.min_vertices().iter().map(|us| us.iter().map(|u| u.scale(&s)).collect()).collect();
    ToricVectorBundle::split(sys.fan(), cs)
}

/// Derives the split-bundle sign from the unit segments in rank 3, where the top
/// Chern number must equal the mixed volume 1.
pub fn calibrate_split_sign() -> Result<i64> {
    let sys =
        PolytopeSystem::from_i64(&[&[&[0, 0, 0], &[1, 0, 0]], &[&[0, 0, 0], &[0, 1, 0]], &[&[0, 0, 0], &[0, 0, 1]]])?;
    let top = Partition::new(vec![3])?;
    let c = chern_number(sys.fan(), &split_bundle(&sys, 1)?, &top)?;
    match i64::try_from(c) {
        Ok(1) => Ok(1),
        Ok(-1) => Ok(-1),
        _ => Err(Error::Internal("split bundle calibration failed".into())),
    }
}

/// Results of the mixed-volume methods and the split-bundle Chern number on one system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub localization: Int,
    pub lattice_points: Int,
    pub fit: Int,
    pub chern: Int,
}

impl ConsistencyReport {
    pub fn agrees(&self) -> bool {
        self.localization == self.lattice_points && self.localization == self.fit && self.localization == self.chern
    }
}

pub fn picard_degree_check(sys: &PolytopeSystem) -> Result<ConsistencyReport> {
    use crate::applications::mixed::{mixed_volume_fit, mixed_volume_lattice_points, mixed_volume_loc};
    let top = Partition::new(vec![sys.rank()])?;
    Ok(ConsistencyReport {
        localization: mixed_volume_loc(sys)?.normalized,
        lattice_points: mixed_volume_lattice_points(sys.polytopes())?.normalized,
        fit: mixed_volume_fit(sys.polytopes())?.normalized,
        chern: chern_number(sys.fan(), &split_bundle(sys, SPLIT_SIGN)?, &top)?,
    })
}
