//! Exact integer simplicial homology via Smith normal form.
//!
//! Everything runs over arbitrary-precision integers; there is no floating
//! point anywhere in this module. The Smith normal form first eliminates
//! with ±1 pivots on a sparse representation (boundary matrices are almost
//! entirely unimodular work), then finishes the small remainder with the
//! classic dense algorithm using the smallest-nonzero-pivot heuristic to
//! limit entry growth.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("homology of the empty complex is undefined")]
    EmptyComplex,
}

pub type Result<T> = std::result::Result<T, HomologyError>;

/// Dense integer matrix with exact entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().map(BigInt::from).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    /// Matrix product, used by tests to verify chain-complex identities.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn to_sparse(&self) -> SparseMat {
        let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if !e.is_zero() {
                    rows[i].insert(j, e.clone());
                }
            }
        }
        SparseMat::new(rows, self.cols)
    }
}

/// Boundary map from `k`-faces to `(k-1)`-faces in the lexicographic bases,
/// with the standard alternating-sign rule.
pub fn boundary_matrix(k_complex: &SimplicialComplex, k: usize) -> Result<IntMatrix> {
    let dim = k_complex.dim().ok_or(HomologyError::EmptyComplex)?;
    if k < 1 || k > dim {
        return Err(ComplexError::DimensionOutOfRange { k, dim }.into());
    }
    let top = k_complex.k_faces(k)?;
    let bottom = k_complex.k_faces(k - 1)?;
    let index: BTreeMap<&[usize], usize> =
        bottom.iter().enumerate().map(|(i, s)| (s.vertices(), i)).collect();
    let mut m = IntMatrix::zeros(bottom.len(), top.len());
    for (j, s) in top.iter().enumerate() {
        let verts = s.vertices();
        for skip in 0..verts.len() {
            let mut face: Vec<usize> = verts.to_vec();
            face.remove(skip);
            let i = index[face.as_slice()];
            let sign = if skip % 2 == 0 { 1 } else { -1 };
            m.set(i, j, BigInt::from(sign));
        }
    }
    Ok(m)
}

/// Result of a Smith normal form computation: the rank and the elementary
/// divisors `d1 | d2 | ... | d_rank`, all positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub rank: usize,
    pub divisors: Vec<BigInt>,
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    snf_sparse(m.to_sparse())
}

struct SparseMat {
    rows: Vec<BTreeMap<usize, BigInt>>,
    col_rows: Vec<BTreeSet<usize>>,
}

impl SparseMat {
    fn new(rows: Vec<BTreeMap<usize, BigInt>>, cols: usize) -> Self {
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols];
        for (i, row) in rows.iter().enumerate() {
            for &j in row.keys() {
                col_rows[j].insert(i);
            }
        }
        SparseMat { rows, col_rows }
    }
}

fn snf_sparse(mut m: SparseMat) -> Snf {
    let mut unit_rank = 0usize;

    // Phase 1: eliminate with ±1 pivots, choosing low fill-in first.
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in m.rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let rlen = row.len() - 1;
            for (&j, v) in row {
                if v.abs().is_one() {
                    let cost = rlen * (m.col_rows[j].len() - 1);
                    if best.is_none_or(|(c, bi, bj)| {
                        cost < c || (cost == c && (i, j) < (bi, bj))
                    }) {
                        best = Some((cost, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        let pivot = m.rows[pi][&pj].clone();
        let pivot_row: Vec<(usize, BigInt)> =
            m.rows[pi].iter().map(|(&j, v)| (j, v.clone())).collect();
        let touched: Vec<usize> =
            m.col_rows[pj].iter().copied().filter(|&i| i != pi).collect();
        for i in touched {
            // factor = entry / pivot, exact since pivot is ±1.
            let factor = &m.rows[i][&pj] * &pivot;
            for (j, v) in &pivot_row {
                let entry = m.rows[i].entry(*j).or_insert_with(BigInt::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    m.rows[i].remove(j);
                    m.col_rows[*j].remove(&i);
                } else {
                    m.col_rows[*j].insert(i);
                }
            }
        }
        for (j, _) in &pivot_row {
            m.col_rows[*j].remove(&pi);
        }
        m.rows[pi].clear();
        unit_rank += 1;
    }

    // Phase 2: dense SNF of whatever is left (usually nothing or tiny).
    let mut live_rows: Vec<usize> = Vec::new();
    let mut live_cols: BTreeSet<usize> = BTreeSet::new();
    for (i, row) in m.rows.iter().enumerate() {
        if !row.is_empty() {
            live_rows.push(i);
            live_cols.extend(row.keys().copied());
        }
    }
    let col_index: BTreeMap<usize, usize> =
        live_cols.iter().enumerate().map(|(idx, &j)| (j, idx)).collect();
    let mut dense: Vec<Vec<BigInt>> =
        vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
    for (ri, &i) in live_rows.iter().enumerate() {
        for (j, v) in &m.rows[i] {
            dense[ri][col_index[j]] = v.clone();
        }
    }
    let tail = dense_snf(dense);

    let mut divisors = vec![BigInt::one(); unit_rank];
    divisors.extend(tail);
    debug_assert!(divisors.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    Snf { rank: divisors.len(), divisors }
}

/// Classic Smith normal form on a small dense matrix; returns the positive
/// elementary divisors in chain order.
#[allow(clippy::needless_range_loop)]
fn dense_snf(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut divisors = Vec::new();
    let mut t = 0usize;
    'corner: while t < rows && t < cols {
        // Smallest nonzero absolute value into the corner.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        if m[t][t].is_negative() {
            for j in t..cols {
                m[t][j] = -m[t][j].clone();
            }
        }
        let p = m[t][t].clone();
        // Reduce row and column; a nonzero remainder gives a smaller pivot.
        for j in t + 1..cols {
            if !m[t][j].is_zero() {
                let q = m[t][j].div_floor(&p);
                if !q.is_zero() {
                    for i in t..rows {
                        let sub = &q * &m[i][t];
                        m[i][j] -= sub;
                    }
                }
                if !m[t][j].is_zero() {
                    continue 'corner;
                }
            }
        }
        for i in t + 1..rows {
            if !m[i][t].is_zero() {
                let q = m[i][t].div_floor(&p);
                if !q.is_zero() {
                    for j in t..cols {
                        let sub = &q * &m[t][j];
                        m[i][j] -= sub;
                    }
                }
                if !m[i][t].is_zero() {
                    continue 'corner;
                }
            }
        }
        // Pivot must divide the rest of the submatrix.
        for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&m[i][j] % &p).is_zero() {
                    for jj in t..cols {
                        let add = m[i][jj].clone();
                        m[t][jj] += add;
                    }
                    continue 'corner;
                }
            }
        }
        divisors.push(p);
        t += 1;
    }
    divisors
}

/// Betti numbers and torsion coefficients per dimension, unreduced
/// convention: `betti[0]` counts connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyProfile {
    pub fn betti_tuple(&self) -> Vec<usize> {
        self.betti.clone()
    }

    pub fn torsion_free(&self) -> bool {
        self.torsion.iter().all(|t| t.is_empty())
    }
}

/// Exact homology of a nonempty complex, dimensions `0..=dim`.
pub fn homology_profile(k_complex: &SimplicialComplex) -> Result<HomologyProfile> {
    let dim = k_complex.dim().ok_or(HomologyError::EmptyComplex)?;
    let face_counts: Vec<usize> = (0..=dim)
        .map(|k| k_complex.k_faces(k).map(|f| f.len()))
        .collect::<std::result::Result<_, _>>()?;
    let mut ranks = vec![0usize; dim + 2];
    let mut divisors: Vec<Vec<BigInt>> = vec![Vec::new(); dim + 2];
    for k in 1..=dim {
        let snf = snf_sparse(boundary_sparse(k_complex, k)?);
        ranks[k] = snf.rank;
        divisors[k] = snf.divisors;
    }
    let mut betti = Vec::with_capacity(dim + 1);
    let mut torsion = Vec::with_capacity(dim + 1);
    for k in 0..=dim {
        betti.push(face_counts[k] - ranks[k] - ranks[k + 1]);
        torsion.push(
            divisors[k + 1]
                .iter()
                .filter(|d| !d.is_one())
                .cloned()
                .collect(),
        );
    }
    Ok(HomologyProfile { betti, torsion })
}

/// Alternating sum of face counts.
pub fn euler_characteristic(k_complex: &SimplicialComplex) -> Result<i64> {
    let dim = k_complex.dim().ok_or(HomologyError::EmptyComplex)?;
    let mut chi = 0i64;
    for k in 0..=dim {
        let n = k_complex.k_faces(k)?.len() as i64;
        chi += if k % 2 == 0 { n } else { -n };
    }
    Ok(chi)
}

/// Euler–Poincaré cross-check: alternating face counts equal alternating
/// Betti numbers. Used liberally by the test suites.
pub fn euler_poincare_holds(k_complex: &SimplicialComplex) -> Result<bool> {
    let chi = euler_characteristic(k_complex)?;
    let profile = homology_profile(k_complex)?;
    let alt: i64 = profile
        .betti
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    Ok(chi == alt)
}

fn boundary_sparse(k_complex: &SimplicialComplex, k: usize) -> Result<SparseMat> {
    let top = k_complex.k_faces(k)?;
    let bottom = k_complex.k_faces(k - 1)?;
    let index: BTreeMap<&[usize], usize> =
        bottom.iter().enumerate().map(|(i, s)| (s.vertices(), i)).collect();
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); bottom.len()];
    for (j, s) in top.iter().enumerate() {
        let verts = s.vertices();
        for skip in 0..verts.len() {
            let mut face: Vec<usize> = verts.to_vec();
            face.remove(skip);
            let i = index[face.as_slice()];
            let sign = if skip % 2 == 0 { 1 } else { -1 };
            rows[i].insert(j, BigInt::from(sign));
        }
    }
    Ok(SparseMat::new(rows, top.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use crate::generators::simplex_boundary;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Independent SNF oracle for small matrices: the k-th determinantal
    /// divisor is the gcd of all k×k minors, and elementary divisors are
    /// their successive quotients.
    fn minor_gcd_divisors(m: &IntMatrix) -> Vec<BigInt> {
        fn minors(m: &IntMatrix, k: usize) -> BigInt {
            use itertools::Itertools;
            fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
                (0..n).combinations(k).collect()
            }
            fn det(m: &[Vec<BigInt>]) -> BigInt {
                let n = m.len();
                if n == 1 {
                    return m[0][0].clone();
                }
                let mut acc = BigInt::zero();
                for j in 0..n {
                    let sub: Vec<Vec<BigInt>> = (1..n)
                        .map(|i| {
                            (0..n).filter(|&c| c != j).map(|c| m[i][c].clone()).collect()
                        })
                        .collect();
                    let term = &m[0][j] * det(&sub);
                    if j % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                acc
            }
            let mut g = BigInt::zero();
            for rs in combos(m.rows, k) {
                for cs in combos(m.cols, k) {
                    let sub: Vec<Vec<BigInt>> = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| m.get(i, j).clone()).collect())
                        .collect();
                    g = g.gcd(&det(&sub));
                }
            }
            g
        }
        let mut out = Vec::new();
        let mut prev = BigInt::one();
        for k in 1..=m.rows.min(m.cols) {
            let dk = minors(m, k);
            if dk.is_zero() {
                break;
            }
            out.push(&dk / &prev);
            prev = dk;
        }
        out
    }

    #[test]
    fn snf_trivial_examples() {
        let id = IntMatrix::from_rows(vec![vec![1, 0], vec![0, 1]]);
        let snf = smith_normal_form(&id);
        assert_eq!(snf.rank, 2);
        assert_eq!(snf.divisors, vec![big(1), big(1)]);

        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 0]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, 1);
        assert_eq!(snf.divisors, vec![big(2)]);
    }

    #[test]
    fn snf_divisor_chain_example() {
        // Hand row-reduction gives divisors 2, 4.
        let m = IntMatrix::from_rows(vec![vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, 2);
        assert_eq!(snf.divisors, vec![big(2), big(4)]);
        assert_eq!(minor_gcd_divisors(&m), snf.divisors);
    }

    #[test]
    fn snf_matches_minor_gcd_oracle() {
        let samples = vec![
            vec![vec![-6, 111, -36, 6], vec![5, -672, 210, 74], vec![0, -255, 81, 24]],
            vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]],
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![3, 9], vec![6, 12], vec![9, 3]],
        ];
        for rows in samples {
            let m = IntMatrix::from_rows(rows);
            let snf = smith_normal_form(&m);
            assert_eq!(snf.divisors, minor_gcd_divisors(&m), "matrix {m:?}");
        }
    }

    #[test]
    fn boundary_sign_anchor() {
        let edge = build_complex([vec![0, 1]]).unwrap();
        let m = boundary_matrix(&edge, 1).unwrap();
        assert_eq!((m.rows, m.cols), (2, 1));
        assert_eq!(m.get(0, 0), &big(-1));
        assert_eq!(m.get(1, 0), &big(1));
    }

    #[test]
    fn boundary_triangle_cycle() {
        let cycle = build_complex([vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let m = boundary_matrix(&cycle, 1).unwrap();
        assert_eq!((m.rows, m.cols), (3, 3));
        assert_eq!(smith_normal_form(&m).rank, 2);
    }

    #[test]
    fn boundary_top_rank() {
        let k = simplex_boundary(4);
        let m = boundary_matrix(&k, 3).unwrap();
        assert_eq!((m.rows, m.cols), (10, 5));
        assert_eq!(smith_normal_form(&m).rank, 4);
    }

    #[test]
    fn boundary_composition_vanishes() {
        for k in [simplex_boundary(3), simplex_boundary(4)] {
            let dim = k.dim().unwrap();
            for deg in 2..=dim {
                let outer = boundary_matrix(&k, deg - 1).unwrap();
                let inner = boundary_matrix(&k, deg).unwrap();
                assert!(outer.mul(&inner).is_zero());
            }
        }
    }

    #[test]
    fn sphere_profile() {
        let profile = homology_profile(&simplex_boundary(4)).unwrap();
        assert_eq!(profile.betti, vec![1, 0, 0, 1]);
        assert!(profile.torsion_free());
    }

    #[test]
    fn torus_profile() {
        // The 7-vertex torus: faces {i, i+1, i+3} and {i, i+2, i+3} mod 7.
        let mut faces = Vec::new();
        for i in 0..7usize {
            faces.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            faces.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        let torus = build_complex(faces).unwrap();
        assert_eq!(torus.k_faces(1).unwrap().len(), 21);
        let profile = homology_profile(&torus).unwrap();
        assert_eq!(profile.betti, vec![1, 2, 1]);
        assert!(profile.torsion_free());
        assert!(euler_poincare_holds(&torus).unwrap());
    }

    #[test]
    fn klein_bottle_torsion() {
        // 9-vertex Klein bottle built from a 3x3 grid with a flip on one
        // gluing; H1 = Z + Z/2.
        let idx = |r: usize, c: usize| 3 * (r % 3) + (c % 3);
        let mut faces = Vec::new();
        for r in 0..3usize {
            for c in 0..3usize {
                // Vertical wraparound row->row+1; horizontal c->c+1 with the
                // final horizontal gluing reversed.
                let (r1, c0, c1) = if r == 2 {
                    (0, (3 - c) % 3, (2 - c) % 3)
                } else {
                    (r + 1, c, c + 1)
                };
                faces.push(vec![idx(r, c), idx(r, c + 1), idx(r1, c0)]);
                faces.push(vec![idx(r, c + 1), idx(r1, c0), idx(r1, c1)]);
            }
        }
        let kb = build_complex(faces).unwrap();
        assert_eq!(kb.facet_count(), 18);
        assert!(kb.is_closed_pseudomanifold().unwrap().is_closed());
        let profile = homology_profile(&kb).unwrap();
        assert_eq!(profile.betti, vec![1, 1, 0]);
        assert_eq!(profile.torsion[1], vec![big(2)]);
        assert!(euler_poincare_holds(&kb).unwrap());
    }

    #[test]
    fn disjoint_components_counted() {
        let k = build_complex([vec![0, 1, 2], vec![3, 4]]).unwrap();
        let profile = homology_profile(&k).unwrap();
        assert_eq!(profile.betti[0], 2);
    }

    /// For closed orientable pseudomanifolds the top Betti number counts
    /// the dual-graph components.
    #[test]
    fn top_betti_counts_dual_components() {
        let one = simplex_boundary(3);
        let mut faces: Vec<Vec<usize>> =
            one.facets().iter().map(|f| f.vertices().to_vec()).collect();
        faces.extend(
            one.facets()
                .iter()
                .map(|f| f.vertices().iter().map(|&v| v + 4).collect::<Vec<_>>()),
        );
        let two = build_complex(faces).unwrap();
        for k in [one, two] {
            let dim = k.dim().unwrap();
            let comps = k.dual_graph().unwrap().connected_components().len();
            let profile = homology_profile(&k).unwrap();
            assert_eq!(profile.betti[dim], comps);
        }
    }
}
