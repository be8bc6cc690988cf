use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Int, LatticeVector};
use crate::polyhedra::cone::Cone;
use crate::polyhedra::fan::Fan;

/// The convex hull of finitely many lattice points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePolytope {
    ambient: usize,
    vertices: Vec<LatticeVector>,
}

fn homogenize(p: &LatticeVector) -> LatticeVector {
    let mut v = vec![Int::one()];
    v.extend(p.iter().cloned());
    LatticeVector(v)
}

impl LatticePolytope {
    /// Convex hull of `points`; the vertex list is the set of extreme points.
    pub fn from_points(ambient: usize, points: &[LatticeVector]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Validation("polytope needs at least one point".into()));
        }
        if let Some(p) = points.iter().find(|p| p.rank() != ambient) {
            return Err(Error::VariableMismatch(p.rank(), ambient));
        }
        let cone = Cone::new(ambient + 1, &points.iter().map(homogenize).collect::<Vec<_>>())?;
        let vertices = cone.rays().iter().map(|r| LatticeVector(r[1..].to_vec())).collect();
        Ok(LatticePolytope { ambient, vertices })
    }

    pub fn from_i64(points: &[&[i64]]) -> Result<Self> {
        let n = points.first().map(|p| p.len()).unwrap_or(0);
        Self::from_points(n, &points.iter().map(|p| LatticeVector::from_i64(p)).collect::<Vec<_>>())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    fn cone(&self) -> Cone {
        Cone::new(self.ambient + 1, &self.vertices.iter().map(homogenize).collect::<Vec<_>>())
            .expect("homogenized polytope cone is pointed")
    }

    pub fn dim(&self) -> usize {
        self.cone().dim() - 1
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn contains(&self, p: &LatticeVector) -> bool {
        self.cone().contains(&homogenize(p))
    }

    /// `self + other`.
    pub fn minkowski_sum(&self, other: &LatticePolytope) -> Result<LatticePolytope> {
        if self.ambient != other.ambient {
            return Err(Error::VariableMismatch(self.ambient, other.ambient));
        }
        let pts: BTreeSet<LatticeVector> =
            self.vertices.iter().flat_map(|a| other.vertices.iter().map(move |b| a.add(b))).collect();
        LatticePolytope::from_points(self.ambient, &pts.into_iter().collect::<Vec<_>>())
    }

    /// `k * self` for `k >= 0`.
    pub fn dilate(&self, k: u32) -> LatticePolytope {
        if k == 0 {
            return LatticePolytope { ambient: self.ambient, vertices: vec![LatticeVector::zero(self.ambient)] };
        }
        let k = Int::from(k);
        LatticePolytope { ambient: self.ambient, vertices: self.vertices.iter().map(|v| v.scale(&k)).collect() }
    }

    /// Lattice points, by bounding box and the facet inequalities.
    pub fn lattice_points(&self) -> Vec<LatticeVector> {
        let n = self.ambient;
        let lo: Vec<Int> = (0..n).map(|i| self.vertices.iter().map(|v| v[i].clone()).min().unwrap()).collect();
        let hi: Vec<Int> = (0..n).map(|i| self.vertices.iter().map(|v| v[i].clone()).max().unwrap()).collect();
        let cone = self.cone();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let p = LatticeVector(cur.clone());
            if cone.contains(&homogenize(&p)) {
                out.push(p);
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = lo[i].clone();
                i += 1;
            }
        }
    }

    /// Number of lattice points, counting whole fibres along the last coordinate.
    pub fn num_lattice_points(&self) -> usize {
        match self.small_inequalities() {
            Some(ineqs) => count_fibres(&ineqs, &self.bounds_i64().unwrap()),
            None => self.lattice_points().len(),
        }
    }

    fn bounds_i64(&self) -> Option<Vec<(i64, i64)>> {
        (0..self.ambient)
            .map(|i| {
                let lo = self.vertices.iter().map(|v| v[i].clone()).min().unwrap();
                let hi = self.vertices.iter().map(|v| v[i].clone()).max().unwrap();
                Some((i64::try_from(lo).ok()?, i64::try_from(hi).ok()?))
            })
            .collect()
    }

    /// Inequalities `c_0 + <c, p> >= 0` describing the polytope, in machine integers.
    fn small_inequalities(&self) -> Option<Vec<Vec<i64>>> {
        self.bounds_i64()?;
        let cone = self.cone();
        let mut rows: Vec<LatticeVector> = cone.facet_normals().to_vec();
        for e in crate::lattice::integer_kernel_basis(cone.span_basis()) {
            rows.push(e.neg());
            rows.push(e);
        }
        rows.iter().map(|r| r.iter().map(|x| i64::try_from(x.clone()).ok()).collect()).collect()
    }

    /// The vertex minimizing `<., v>`; fails unless the minimizer is unique.
    pub fn minimizing_vertex(&self, v: &[Int]) -> Result<LatticeVector> {
        let vals: Vec<Int> = self.vertices.iter().map(|u| u.dot(v)).collect();
        let min = vals.iter().min().unwrap();
        let hits: Vec<usize> = (0..vals.len()).filter(|&i| &vals[i] == min).collect();
        if hits.len() != 1 {
            return Err(Error::NonUniqueMinimizer);
        }
        Ok(self.vertices[hits[0]].clone())
    }

    /// `u(sigma)`: the vertex minimal on the interior of `sigma`.
    pub fn min_vertex(&self, sigma: &Cone) -> Result<LatticeVector> {
        if sigma.ambient() != self.ambient {
            return Err(Error::VariableMismatch(sigma.ambient(), self.ambient));
        }
        self.minimizing_vertex(&sigma.interior_point())
    }

    /// Inner normal cone at a vertex: `{v : the vertex minimizes <., v>}`.
    pub fn normal_cone(&self, vertex: &LatticeVector) -> Result<Cone> {
        let dirs: Vec<LatticeVector> = self.vertices.iter().filter(|w| *w != vertex).map(|w| w.sub(vertex)).collect();
        if dirs.is_empty() {
            return Err(Error::DegeneratePolytope);
        }
        Cone::new(self.ambient, &dirs)?.dual()
    }
}

fn count_fibres(ineqs: &[Vec<i64>], bounds: &[(i64, i64)]) -> usize {
    let n = bounds.len();
    let mut total = 0usize;
    let mut cur: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    if n == 0 {
        return 1;
    }
    loop {
        // Offsets with all but the last coordinate fixed.
        let mut lo = bounds[n - 1].0;
        let mut hi = bounds[n - 1].1;
        for c in ineqs {
            let rest: i64 = c[0] + (0..n - 1).map(|i| c[i + 1] * cur[i]).sum::<i64>();
            let a = c[n];
            if a == 0 {
                if rest < 0 {
                    hi = lo - 1;
                }
            } else if a > 0 {
                lo = lo.max((-rest).div_euclid(a) + i64::from((-rest).rem_euclid(a) != 0));
            } else {
                hi = hi.min(rest.div_euclid(-a));
            }
        }
        if hi >= lo {
            total += (hi - lo + 1) as usize;
        }
        let mut i = 0;
        loop {
            if i + 1 >= n {
                return total;
            }
            if cur[i] < bounds[i].1 {
                cur[i] += 1;
                break;
            }
            cur[i] = bounds[i].0;
            i += 1;
        }
    }
}

/// Minkowski sum of a nonempty list of polytopes.
pub fn minkowski_sum_all(polytopes: &[LatticePolytope]) -> Result<LatticePolytope> {
    let (first, rest) = polytopes.split_first().ok_or_else(|| Error::Validation("no polytopes".into()))?;
    rest.iter().try_fold(first.clone(), |acc, p| acc.minkowski_sum(p))
}

/// Inner normal fan of `P_1 + ... + P_k`; maximal cones follow the sum's vertex order.
pub fn normal_fan(polytopes: &[LatticePolytope]) -> Result<Fan> {
    let sum = minkowski_sum_all(polytopes)?;
    if !sum.is_full_dimensional() {
        return Err(Error::DegeneratePolytope);
    }
    let n = sum.ambient();
    if n == 0 {
        return Fan::from_maximal_cones(0, vec![Cone::zero(0)]);
    }
    let cones = sum.vertices().iter().map(|v| sum.normal_cone(v)).collect::<Result<Vec<_>>>()?;
    Fan::from_maximal_cones(n, cones)
}

impl LatticePolytope {
    /// Lattice points via Caratheodory: a point lies in the polytope iff it lies in
    /// the convex hull of some affinely independent subset of vertices.
    pub fn lattice_points_by_simplices(&self) -> Vec<LatticeVector> {
        use crate::lattice::{rank_q, rat_from_int, solve_rational, Rat};
        let n = self.ambient;
        let lo: Vec<Int> = (0..n).map(|i| self.vertices.iter().map(|v| v[i].clone()).min().unwrap()).collect();
        let hi: Vec<Int> = (0..n).map(|i| self.vertices.iter().map(|v| v[i].clone()).max().unwrap()).collect();
        let m = self.vertices.len();
        let hom: Vec<Vec<Rat>> =
            self.vertices.iter().map(|v| homogenize(v).iter().map(rat_from_int).collect()).collect();
        let mut simplices: Vec<Vec<usize>> = Vec::new();
        let full = rank_q(&hom, n + 1);
        let mut subset: Vec<usize> = Vec::new();
        fn rec(i: usize, m: usize, k: usize, subset: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if subset.len() == k {
                out.push(subset.clone());
                return;
            }
            for j in i..m {
                subset.push(j);
                rec(j + 1, m, k, subset, out);
                subset.pop();
            }
        }
        let mut all = Vec::new();
        rec(0, m, full, &mut subset, &mut all);
        for s in all {
            let rows: Vec<Vec<Rat>> = s.iter().map(|&i| hom[i].clone()).collect();
            if rank_q(&rows, n + 1) == full {
                simplices.push(s);
            }
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        'outer: loop {
            let p = LatticeVector(cur.clone());
            let target: Vec<Rat> = homogenize(&p).iter().map(rat_from_int).collect();
            for s in &simplices {
                let a: Vec<Vec<Rat>> = (0..=n).map(|r| s.iter().map(|&i| hom[i][r].clone()).collect()).collect();
                if let Some(x) = solve_rational(&a, &target, s.len()) {
                    if x.iter().all(|c| c >= &Rat::zero()) {
                        out.push(p);
                        break;
                    }
                }
            }
            let mut i = 0;
            loop {
                if i == n {
                    break 'outer;
                }
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = lo[i].clone();
                i += 1;
            }
        }
        out
    }
}
