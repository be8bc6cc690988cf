use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{det, dot, primitive_of, rank_int, right_inverse, saturation, Int, IntMatrix, LatticeVector};
use crate::polyhedra::dd::polar_rays;

/// A pointed rational polyhedral cone, stored by its primitive extreme rays.
///
/// Local coordinates identify `span ∩ N` with `Z^dim`; facet normals live in
/// the dual of that lattice and are also lifted to `M`.
#[derive(Clone, Debug)]
pub struct Cone {
    ambient: usize,
    rays: Vec<LatticeVector>,
    span_basis: IntMatrix,
    coords: IntMatrix,
    facets_local: Vec<Vec<Int>>,
    facets: Vec<LatticeVector>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.rays == other.rays
    }
}

impl Eq for Cone {}

impl std::hash::Hash for Cone {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.rays.hash(state);
    }
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ambient, self.dim(), &self.rays).cmp(&(other.ambient, other.dim(), &other.rays))
    }
}

impl Cone {
    /// The cone generated by `gens`; generators are made primitive and redundant
    /// ones dropped. Fails on zero generators and on cones containing a line.
    pub fn new(ambient: usize, gens: &[LatticeVector]) -> Result<Cone> {
        let mut prim: BTreeSet<LatticeVector> = BTreeSet::new();
        for g in gens {
            if g.rank() != ambient {
                return Err(Error::VariableMismatch(g.rank(), ambient));
            }
            prim.insert(primitive_of(g)?);
        }
        let prim: Vec<LatticeVector> = prim.into_iter().collect();
        let span = saturation(&prim, ambient);
        let dim = span.len();
        let span_basis = IntMatrix::from_vectors(&span, ambient);
        let coords = right_inverse(&span_basis)?;
        let local: Vec<Vec<Int>> = prim.iter().map(|g| coords.apply_left(g)).collect();
        let facets_local = if dim <= 1 { Vec::new() } else { polar_rays(&local, dim) };
        let rays: Vec<LatticeVector> = match dim {
            0 => Vec::new(),
            1 => {
                let positive: BTreeSet<bool> = local.iter().map(|l| l[0].is_positive()).collect();
                if positive.len() > 1 {
                    return Err(Error::NotPointed);
                }
                vec![prim[0].clone()]
            }
            _ => {
                if rank_int(&IntMatrix::new(facets_local.clone(), dim)) < dim {
                    return Err(Error::NotPointed);
                }
                prim.iter()
                    .zip(&local)
                    .filter(|(_, l)| {
                        let tight: Vec<Vec<Int>> =
                            facets_local.iter().filter(|f| dot(f, l).is_zero()).cloned().collect();
                        rank_int(&IntMatrix::new(tight, dim)) == dim - 1
                    })
                    .map(|(g, _)| g.clone())
                    .collect()
            }
        };
        let facets_local = if dim == 1 {
            vec![vec![if coords.apply_left(&rays[0])[0].is_positive() { Int::one() } else { -Int::one() }]]
        } else {
            facets_local
        };
        let facets = facets_local.iter().map(|f| LatticeVector(coords.apply(f))).collect();
        Ok(Cone { ambient, rays, span_basis, coords, facets_local, facets })
    }

    pub fn from_i64(rays: &[&[i64]]) -> Result<Cone> {
        let n = rays.first().map(|r| r.len()).unwrap_or(0);
        Cone::new(n, &rays.iter().map(|r| LatticeVector::from_i64(r)).collect::<Vec<_>>())
    }

    pub fn zero(ambient: usize) -> Cone {
        Cone::new(ambient, &[]).expect("zero cone")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.span_basis.nrows()
    }

    /// Primitive extreme rays in lexicographic order.
    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    /// Saturated basis of `span ∩ N` (rows).
    pub fn span_basis(&self) -> &IntMatrix {
        &self.span_basis
    }

    /// Coordinates of a vector of the span in the basis [`Cone::span_basis`].
    pub fn local_coordinates(&self, v: &[Int]) -> Vec<Int> {
        self.coords.apply_left(v)
    }

    /// Facet normals in the dual of the span lattice.
    pub fn facet_normals_local(&self) -> &[Vec<Int>] {
        &self.facets_local
    }

    /// Facet normals lifted to `M`; unique up to `span^perp` for lower-dimensional cones.
    pub fn facet_normals(&self) -> &[LatticeVector] {
        &self.facets
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim()
    }

    /// True iff the rays form part of a lattice basis of `N`.
    pub fn is_unimodular(&self) -> bool {
        self.is_simplicial() && self.local_determinant().abs().is_one()
    }

    /// Index of the sublattice generated by the rays inside `span ∩ N` (simplicial cones).
    pub fn multiplicity(&self) -> Int {
        self.local_determinant().abs()
    }

    fn local_determinant(&self) -> Int {
        assert!(self.is_simplicial(), "determinant of a non-simplicial cone");
        let rows: Vec<Vec<Int>> = self.rays.iter().map(|r| self.local_coordinates(r)).collect();
        det(&IntMatrix::new(rows, self.dim()))
    }

    pub fn in_span(&self, v: &[Int]) -> bool {
        let l = self.local_coordinates(v);
        self.span_basis.apply_left(&l) == v
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        if !self.in_span(v) {
            return false;
        }
        let l = self.local_coordinates(v);
        self.facets_local.iter().all(|f| !dot(f, &l).is_negative())
    }

    pub fn contains_in_relative_interior(&self, v: &[Int]) -> bool {
        if !self.in_span(v) {
            return false;
        }
        if self.dim() == 0 {
            return true;
        }
        let l = self.local_coordinates(v);
        self.facets_local.iter().all(|f| dot(f, &l).is_positive())
    }

    /// Sum of the rays; lies in the relative interior.
    pub fn interior_point(&self) -> LatticeVector {
        self.rays.iter().fold(LatticeVector::zero(self.ambient), |acc, r| acc.add(r))
    }

    /// Ray indices (into [`Cone::rays`]) tight on each facet.
    pub fn facet_ray_sets(&self) -> Vec<Vec<usize>> {
        if self.dim() == 1 {
            return vec![Vec::new()];
        }
        self.facets_local
            .iter()
            .map(|f| {
                (0..self.rays.len()).filter(|&i| dot(f, &self.local_coordinates(&self.rays[i])).is_zero()).collect()
            })
            .collect()
    }

    /// All faces as sorted ray-index sets, including the zero face and the cone itself.
    pub fn face_ray_sets(&self) -> Vec<Vec<usize>> {
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        faces.insert((0..self.rays.len()).collect());
        let facets = self.facet_ray_sets();
        let mut frontier: Vec<Vec<usize>> = faces.iter().cloned().collect();
        while let Some(f) = frontier.pop() {
            for g in &facets {
                let h: Vec<usize> = f.iter().copied().filter(|i| g.contains(i)).collect();
                if faces.insert(h.clone()) {
                    frontier.push(h);
                }
            }
        }
        faces.insert(Vec::new());
        let mut out: Vec<Vec<usize>> = faces.into_iter().collect();
        out.sort_by_key(|f| (f.len(), f.clone()));
        out
    }

    /// The face generated by a subset of the rays.
    pub fn face(&self, ray_set: &[usize]) -> Cone {
        let gens: Vec<LatticeVector> = ray_set.iter().map(|&i| self.rays[i].clone()).collect();
        Cone::new(self.ambient, &gens).expect("faces of pointed cones are pointed")
    }

    pub fn faces(&self) -> Vec<Cone> {
        self.face_ray_sets().iter().map(|f| self.face(f)).collect()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        if self.ambient != other.ambient {
            return false;
        }
        let idx: Option<Vec<usize>> = self.rays.iter().map(|r| other.rays.iter().position(|s| s == r)).collect();
        match idx {
            Some(mut idx) => {
                idx.sort();
                other.face_ray_sets().contains(&idx)
            }
            None => false,
        }
    }

    /// The smallest face containing `v` (which must lie in the cone), as a ray-index set.
    pub fn carrier(&self, v: &[Int]) -> Vec<usize> {
        let l = self.local_coordinates(v);
        let tight: Vec<&Vec<Int>> = self.facets_local.iter().filter(|f| dot(f, &l).is_zero()).collect();
        (0..self.rays.len())
            .filter(|&i| {
                let r = self.local_coordinates(&self.rays[i]);
                tight.iter().all(|f| dot(f, &r).is_zero())
            })
            .collect()
    }

    /// `{u : <u, v> >= 0 for all v in the cone}` for a full-dimensional cone.
    pub fn dual(&self) -> Result<Cone> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        Cone::new(self.ambient, &self.facets)
    }

    /// For a full-dimensional unimodular cone, the dual basis `e_i^*` with
    /// `<e_i^*, rays[j]> = delta_ij`.
    pub fn dual_basis(&self) -> Result<Vec<LatticeVector>> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        if !self.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        let g = IntMatrix::from_vectors(&self.rays, self.ambient);
        let inv = right_inverse(&g)?;
        Ok(inv.transpose().row_vectors())
    }
}

/// `{u : <u, v> >= 0 for all v in sigma}` for a full-dimensional pointed cone.
pub fn dual_cone(sigma: &Cone) -> Result<Cone> {
    sigma.dual()
}

pub fn is_unimodular(sigma: &Cone) -> bool {
    sigma.is_unimodular()
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(v)
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let c = Cone::from_i64(&[&[1, 0], &[2, 2], &[0, 3], &[1, 1]]).unwrap();
        assert_eq!(c.rays(), &[lv(&[0, 1]), lv(&[1, 0])]);
        assert!(c.is_unimodular());
    }

    #[test]
    fn lines_are_rejected() {
        assert_eq!(Cone::from_i64(&[&[1, 0], &[-1, 0]]), Err(Error::NotPointed));
        assert_eq!(Cone::from_i64(&[&[1, 0], &[-1, 0], &[0, 1]]), Err(Error::NotPointed));
        assert_eq!(Cone::from_i64(&[&[0, 0]]), Err(Error::ZeroVector));
    }

    #[test]
    fn dual_cone_examples() {
        let d = Cone::from_i64(&[&[1, 0], &[1, 2]]).unwrap().dual().unwrap();
        assert_eq!(d.rays(), &[lv(&[0, 1]), lv(&[2, -1])]);
        let std3 = Cone::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(std3.dual().unwrap(), std3);
        let v1 = Cone::from_i64(&[&[1, 1], &[1, 0]]).unwrap().dual().unwrap();
        assert_eq!(v1.rays(), &[lv(&[0, 1]), lv(&[1, -1])]);
        let v2 = Cone::from_i64(&[&[1, 0], &[1, -1]]).unwrap().dual().unwrap();
        assert_eq!(v2.rays(), &[lv(&[0, -1]), lv(&[1, 1])]);
        assert_eq!(Cone::from_i64(&[&[1, 0, 0]]).unwrap().dual(), Err(Error::NotFullDimensional));
    }

    #[test]
    fn unimodularity() {
        assert!(Cone::from_i64(&[&[1, 0], &[0, 1]]).unwrap().is_unimodular());
        assert!(!Cone::from_i64(&[&[1, 1], &[1, -1]]).unwrap().is_unimodular());
        assert!(Cone::from_i64(&[&[1, 0], &[1, 1]]).unwrap().is_unimodular());
        assert!(Cone::from_i64(&[&[1, 1, 1]]).unwrap().is_unimodular());
        assert!(!Cone::from_i64(&[&[1, 1, 0], &[1, -1, 0]]).unwrap().is_unimodular());
    }

    #[test]
    fn faces_of_square_pyramid() {
        let c = Cone::from_i64(&[&[1, 1, 1], &[1, 1, -1], &[1, -1, 1], &[1, -1, -1]]).unwrap();
        let faces = c.face_ray_sets();
        assert_eq!(faces.iter().filter(|f| f.len() == 2).count(), 4);
        assert_eq!(faces.iter().filter(|f| f.len() == 1).count(), 4);
        assert_eq!(faces.len(), 10);
        let edge = c.face(&faces[5]);
        assert!(edge.is_face_of(&c));
        let diag = Cone::from_i64(&[&[1, 1, 1], &[1, -1, -1]]).unwrap();
        assert!(!diag.is_face_of(&c));
    }

    #[test]
    fn lower_dimensional_cone_membership() {
        let c = Cone::from_i64(&[&[1, 0, 1], &[0, 1, 1]]).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&lv(&[1, 1, 2])));
        assert!(!c.contains(&lv(&[1, 1, 1])));
        assert!(!c.contains(&lv(&[-1, 2, 1])));
        assert!(c.contains_in_relative_interior(&lv(&[1, 2, 3])));
        assert_eq!(c.carrier(&lv(&[2, 0, 2])), vec![1]);
    }

    #[test]
    fn unimodular_dual_basis() {
        let c = Cone::from_i64(&[&[1, 1], &[1, 0]]).unwrap();
        let d = c.dual_basis().unwrap();
        for (i, e) in d.iter().enumerate() {
            for (j, r) in c.rays().iter().enumerate() {
                assert_eq!(e.dot(r), if i == j { Int::one() } else { Int::zero() });
            }
        }
    }
}
