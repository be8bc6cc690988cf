use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::lattice::{rank_int, IntMatrix, LatticeVector, QuotientMap};
use crate::polyhedra::cone::Cone;
use crate::polyhedra::dd::polar_rays;

/// A cone of a fan, identified by the sorted indices of its rays.
pub type ConeKey = Vec<usize>;

/// A rational polyhedral fan given by its maximal cones.
///
/// Rays are numbered in order of first appearance among the input generators, and
/// every cone of the fan is identified by its sorted ray-index list.
#[derive(Clone, Debug)]
pub struct Fan {
    ambient: usize,
    rays: Vec<LatticeVector>,
    maximal: Vec<Cone>,
    maximal_keys: Vec<ConeKey>,
    cones: BTreeMap<ConeKey, Cone>,
    containing: BTreeMap<ConeKey, Vec<usize>>,
}

impl Fan {
    /// Validates that the cones pairwise meet in common faces and builds the face closure.
    pub fn from_maximal_cones(ambient: usize, maximal: Vec<Cone>) -> Result<Fan> {
        Self::with_ray_order(ambient, maximal, &[])
    }

    /// Like [`Fan::from_maximal_cones`], numbering the rays listed in `order` first.
    pub fn with_ray_order(ambient: usize, maximal: Vec<Cone>, order: &[LatticeVector]) -> Result<Fan> {
        if maximal.is_empty() {
            return Err(Error::NotAFan("no cones".into()));
        }
        let mut rays: Vec<LatticeVector> = Vec::new();
        for r in order {
            if !rays.contains(r) && maximal.iter().any(|c| c.rays().contains(r)) {
                rays.push(r.clone());
            }
        }
        for c in &maximal {
            if c.ambient() != ambient {
                return Err(Error::VariableMismatch(c.ambient(), ambient));
            }
            for r in c.rays() {
                if !rays.contains(r) {
                    rays.push(r.clone());
                }
            }
        }
        let key_of = |c: &Cone| -> ConeKey {
            let mut k: Vec<usize> = c.rays().iter().map(|r| rays.iter().position(|s| s == r).unwrap()).collect();
            k.sort();
            k
        };
        let maximal_keys: Vec<ConeKey> = maximal.iter().map(key_of).collect();
        for i in 0..maximal.len() {
            for j in i + 1..maximal.len() {
                if maximal_keys[i] == maximal_keys[j] {
                    return Err(Error::NotAFan(format!("cones {i} and {j} coincide")));
                }
                check_common_face(&maximal[i], &maximal[j]).map_err(|e| match e {
                    Error::NotAFan(msg) => Error::NotAFan(format!("cones {i} and {j}: {msg}")),
                    other => other,
                })?;
            }
        }
        let mut cones: BTreeMap<ConeKey, Cone> = BTreeMap::new();
        let mut containing: BTreeMap<ConeKey, Vec<usize>> = BTreeMap::new();
        for (m, c) in maximal.iter().enumerate() {
            for f in c.face_ray_sets() {
                let face = c.face(&f);
                let key = key_of(&face);
                containing.entry(key.clone()).or_default().push(m);
                cones.entry(key).or_insert(face);
            }
        }
        for (i, k) in maximal_keys.iter().enumerate() {
            if containing[k].len() > 1 {
                return Err(Error::NotAFan(format!("cone {i} is a face of another listed cone")));
            }
        }
        Ok(Fan { ambient, rays, maximal, maximal_keys, cones, containing })
    }

    /// Convenience constructor from maximal cones given by generator lists.
    pub fn from_generators(ambient: usize, cones: &[Vec<LatticeVector>]) -> Result<Fan> {
        let cs = cones.iter().map(|g| Cone::new(ambient, g)).collect::<Result<Vec<_>>>()?;
        let order: Vec<LatticeVector> =
            cones.iter().flatten().map(crate::lattice::primitive_of).collect::<Result<_>>()?;
        Fan::with_ray_order(ambient, cs, &order)
    }

    pub fn from_i64(cones: &[&[&[i64]]]) -> Result<Fan> {
        let n = cones[0][0].len();
        let gens: Vec<Vec<LatticeVector>> =
            cones.iter().map(|c| c.iter().map(|v| LatticeVector::from_i64(v)).collect()).collect();
        Fan::from_generators(n, &gens)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray_index(&self, v: &LatticeVector) -> Option<usize> {
        self.rays.iter().position(|r| r == v)
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal
    }

    pub fn maximal_keys(&self) -> &[ConeKey] {
        &self.maximal_keys
    }

    pub fn key_of(&self, c: &Cone) -> Option<ConeKey> {
        let mut k: Vec<usize> = c.rays().iter().map(|r| self.ray_index(r)).collect::<Option<_>>()?;
        k.sort();
        if self.cones.get(&k) == Some(c) {
            Some(k)
        } else {
            None
        }
    }

    pub fn cone(&self, key: &[usize]) -> Option<&Cone> {
        self.cones.get(key)
    }

    /// Every cone of the fan, ordered by dimension and then by key.
    pub fn all_cones(&self) -> Vec<(ConeKey, &Cone)> {
        let mut out: Vec<(ConeKey, &Cone)> = self.cones.iter().map(|(k, c)| (k.clone(), c)).collect();
        out.sort_by(|a, b| (a.1.dim(), &a.0).cmp(&(b.1.dim(), &b.0)));
        out
    }

    pub fn cones_of_dim(&self, d: usize) -> Vec<ConeKey> {
        self.all_cones().into_iter().filter(|(_, c)| c.dim() == d).map(|(k, _)| k).collect()
    }

    pub fn cones_of_codim(&self, k: usize) -> Vec<ConeKey> {
        if k > self.ambient {
            return Vec::new();
        }
        self.cones_of_dim(self.ambient - k)
    }

    /// Indices of the maximal cones containing the given cone.
    pub fn maximal_containing(&self, key: &[usize]) -> &[usize] {
        self.containing.get(key).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn is_face(&self, smaller: &[usize], larger: &[usize]) -> bool {
        smaller.iter().all(|i| larger.contains(i)) && self.cones.contains_key(smaller)
    }

    /// Pure of full dimension, every ridge in exactly two maximal cones, and
    /// connected through ridges.
    pub fn is_complete(&self) -> bool {
        let n = self.ambient;
        if self.maximal.iter().any(|c| c.dim() != n) {
            return false;
        }
        if n == 0 {
            return true;
        }
        let ridges = self.cones_of_dim(n - 1);
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.maximal.len()];
        for r in &ridges {
            let m = self.maximal_containing(r);
            if m.len() != 2 {
                return false;
            }
            adj[m[0]].push(m[1]);
            adj[m[1]].push(m[0]);
        }
        let mut seen = vec![false; self.maximal.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_unimodular(&self) -> bool {
        self.maximal.iter().all(|c| c.is_unimodular())
    }

    pub fn is_simplicial(&self) -> bool {
        self.maximal.iter().all(|c| c.is_simplicial())
    }

    /// True iff the rays span `N_Q`.
    pub fn support_spans(&self) -> bool {
        rank_int(&IntMatrix::from_vectors(&self.rays, self.ambient)) == self.ambient
    }

    /// The fan of projections of the cones containing `tau` to `N / (N ∩ span tau)`.
    pub fn star_quotient(&self, tau: &[usize]) -> Result<(Fan, QuotientMap)> {
        let t = self.cones.get(tau).ok_or_else(|| Error::NotAFace(format!("{tau:?} is not a cone of the fan")))?;
        let q = QuotientMap::build(self.ambient, t.rays());
        let r = q.quotient_rank();
        let mut maximal = Vec::new();
        for &m in self.maximal_containing(tau) {
            let gens: Vec<LatticeVector> =
                self.maximal[m].rays().iter().map(|v| q.project(v)).filter(|v| !v.is_zero()).collect();
            maximal.push(Cone::new(r, &gens)?);
        }
        Ok((Fan::from_maximal_cones(r, maximal)?, q))
    }
}

/// Checks that two pointed cones meet in a face of each.
pub fn check_common_face(a: &Cone, b: &Cone) -> Result<()> {
    let n = a.ambient();
    let inter = intersect(a, b);
    let p = inter.interior_point();
    for c in [a, b] {
        let carrier = c.carrier(&p);
        if carrier.iter().any(|&i| !inter.contains(&c.rays()[i])) {
            return Err(Error::NotAFan(format!("intersection {inter} is not a face of {c}")));
        }
    }
    debug_assert_eq!(inter.ambient(), n);
    Ok(())
}

/// Intersection of two pointed cones.
pub fn intersect(a: &Cone, b: &Cone) -> Cone {
    let n = a.ambient();
    let mut constraints: Vec<Vec<crate::lattice::Int>> = Vec::new();
    for c in [a, b] {
        constraints.extend(c.facet_normals().iter().map(|f| f.0.clone()));
        let perp = crate::lattice::integer_kernel_basis(c.span_basis());
        for v in perp {
            constraints.push(v.0.clone());
            constraints.push(v.neg().0);
        }
    }
    if n == 0 {
        return Cone::zero(0);
    }
    let rays = polar_rays(&constraints, n);
    let gens: Vec<LatticeVector> = rays.into_iter().map(LatticeVector).collect();
    Cone::new(n, &gens).expect("intersection of pointed cones is pointed")
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        let a: BTreeSet<&Cone> = self.maximal.iter().collect();
        let b: BTreeSet<&Cone> = other.maximal.iter().collect();
        self.ambient == other.ambient && a == b
    }
}
