use num_traits::{Signed, Zero};

use crate::lattice::{dot, primitive_from_rational, primitive_of, rat_from_int, rref, Int, LatticeVector, Rat};

/// Fixed-width bit set over constraint indices.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn contains_all(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

/// Indices of a maximal linearly independent subset, chosen greedily in order.
pub fn independent_subset(vectors: &[Vec<Int>], d: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut trial = rows.clone();
        trial.push(v.iter().map(rat_from_int).collect());
        if rref(&trial, d).1.len() > rows.len() {
            rows = trial;
            chosen.push(i);
            if chosen.len() == d {
                break;
            }
        }
    }
    chosen
}

/// Extreme rays of the pointed cone `{u : <g, u> >= 0 for all g in gens}` by the
/// double description method. `gens` must span `Q^d`. Returns primitive rays.
pub fn polar_rays(gens: &[Vec<Int>], d: usize) -> Vec<Vec<Int>> {
    if d == 0 {
        return Vec::new();
    }
    let basis = independent_subset(gens, d);
    assert_eq!(basis.len(), d, "generators must span");
    let m = gens.len();

    // Initial simplicial cone: columns of the inverse of the basis matrix.
    let mut aug: Vec<Vec<Rat>> = Vec::new();
    for (r, &i) in basis.iter().enumerate() {
        let mut row: Vec<Rat> = gens[i].iter().map(rat_from_int).collect();
        row.extend((0..d).map(|j| if j == r { Rat::from_integer(1.into()) } else { Rat::zero() }));
        aug.push(row);
    }
    let (inv, _) = rref(&aug, 2 * d);
    let mut rays: Vec<Vec<Int>> = Vec::new();
    let mut zeros: Vec<Bits> = Vec::new();
    for j in 0..d {
        let col: Vec<Rat> = inv.iter().map(|row| row[d + j].clone()).collect();
        let r = primitive_from_rational(&col).expect("inverse column is nonzero").0;
        let mut z = Bits::new(m);
        for (k, &i) in basis.iter().enumerate() {
            if k != j {
                z.set(i);
            }
        }
        rays.push(r);
        zeros.push(z);
    }

    let mut processed: Vec<usize> = basis.clone();
    for (i, g) in gens.iter().enumerate().take(m) {
        if basis.contains(&i) {
            continue;
        }
        let vals: Vec<Int> = rays.iter().map(|r| dot(g, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut new_rays = Vec::new();
        let mut new_zeros = Vec::new();
        for k in 0..rays.len() {
            if !vals[k].is_negative() {
                let mut z = zeros[k].clone();
                if vals[k].is_zero() {
                    z.set(i);
                }
                new_rays.push(rays[k].clone());
                new_zeros.push(z);
            }
        }
        for &p in &pos {
            for &q in &neg {
                let common = zeros[p].and(&zeros[q]);
                if common.count() + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|r| r == p || r == q || !zeros[r].contains_all(&common));
                if !adjacent {
                    continue;
                }
                let v: Vec<Int> = rays[q].iter().zip(&rays[p]).map(|(a, b)| &vals[p] * a - &vals[q] * b).collect();
                let v = primitive_of(&LatticeVector(v)).expect("combination of independent rays").0;
                let mut z = common;
                z.set(i);
                new_rays.push(v);
                new_zeros.push(z);
            }
        }
        rays = new_rays;
        zeros = new_zeros;
        processed.push(i);
    }
    rays.sort();
    rays.dedup();
    rays
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn square_pyramid_facets() {
        let gens: Vec<Vec<Int>> = [[1, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1]].iter().map(|v| iv(v)).collect();
        let f = polar_rays(&gens, 3);
        assert_eq!(f, vec![iv(&[1, -1, 0]), iv(&[1, 0, -1]), iv(&[1, 0, 1]), iv(&[1, 1, 0])]);
    }

    #[test]
    fn whole_line_has_no_facets() {
        assert!(polar_rays(&[iv(&[1]), iv(&[-1])], 1).is_empty());
    }

    #[test]
    fn half_plane_has_one_facet() {
        let gens = vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, 0])];
        assert_eq!(polar_rays(&gens, 2), vec![iv(&[0, 1])]);
    }
}
