use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed, Zero};

use super::{SimplicialMap, TruncSSet};
use crate::error::{Error, Result};

/// `Z^betti + Z/t_1 + ... + Z/t_r` with `t_1 | t_2 | ...`, all `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigUint>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }

    pub fn with_torsion(betti: usize, torsion: &[u64]) -> Self {
        HomologyGroup {
            betti,
            torsion: torsion.iter().map(|&t| BigUint::from(t)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

type Sparse = Vec<Vec<(usize, i64)>>;

/// Boundary of normalized chains `C_k -> C_{k-1}` as columns over the
/// nondegenerate simplices.
fn boundary_columns(x: &TruncSSet, k: usize) -> (usize, Sparse) {
    let rows = if k == 0 {
        0
    } else {
        x.nondegenerate(k - 1).len()
    };
    let cols = x.nondegenerate(k);
    if k == 0 {
        return (0, vec![Vec::new(); cols.len()]);
    }
    let row_of: HashMap<usize, usize> = x
        .nondegenerate(k - 1)
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let columns = cols
        .iter()
        .map(|&s| {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for i in 0..=k {
                if let Some(&r) = row_of.get(&x.face(k, i, s)) {
                    *acc.entry(r).or_default() += if i % 2 == 0 { 1 } else { -1 };
                }
            }
            let mut v: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
            v.sort();
            v
        })
        .collect();
    (rows, columns)
}

fn dense(rows: usize, cols: &Sparse) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; cols.len()]; rows];
    for (j, c) in cols.iter().enumerate() {
        for &(i, v) in c {
            m[i][j] += v;
        }
    }
    m
}

/// Nonzero diagonal of some diagonal form of `m`; `None` on overflow.
fn diagonalize<T>(mut a: Vec<Vec<T>>) -> Option<Vec<T>>
where
    T: Clone + Zero + One + Signed + Integer + CheckedMul + CheckedSub,
{
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                    if a[i][j].abs().is_one() {
                        break;
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut moved = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let prod = q.checked_mul(&a[t][j])?;
                    a[i][j] = a[i][j].checked_sub(&prod)?;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    moved = true;
                    break;
                }
            }
            if moved {
                continue;
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let prod = q.checked_mul(&row[t])?;
                    row[j] = row[j].checked_sub(&prod)?;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    moved = true;
                    break;
                }
            }
            if !moved {
                break;
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    Some(diag)
}

/// Pivots on unit entries column by column, sparsely. Returns the number
/// of pivots and the remaining matrix with compacted rows, or `None` on
/// overflow.
fn unit_eliminate(rows: usize, cols: &Sparse) -> Option<(usize, usize, Sparse)> {
    let mut col: Vec<HashMap<usize, i64>> = cols.iter().map(|c| c.iter().copied().collect()).collect();
    let mut row_cols: Vec<HashSet<usize>> = vec![HashSet::new(); rows];
    for (j, c) in cols.iter().enumerate() {
        for &(i, _) in c {
            row_cols[i].insert(j);
        }
    }
    let mut alive = vec![true; col.len()];
    let mut units = 0;
    loop {
        let mut order: Vec<usize> = (0..col.len()).filter(|&j| alive[j] && !col[j].is_empty()).collect();
        order.sort_by_key(|&j| col[j].len());
        let mut progress = false;
        for c in order {
            let pivot = col[c]
                .iter()
                .filter(|(_, v)| v.abs() == 1)
                .min_by_key(|(&i, _)| (row_cols[i].len(), i))
                .map(|(&i, &v)| (i, v));
            let Some((r, u)) = pivot else { continue };
            let pivot_col: Vec<(usize, i64)> = col[c].iter().map(|(&i, &v)| (i, v)).collect();
            let others: Vec<usize> = row_cols[r].iter().copied().filter(|&j| j != c).collect();
            for j in others {
                let a = col[j][&r].checked_mul(u)?;
                for &(i, v) in &pivot_col {
                    let e = col[j].entry(i).or_insert(0);
                    *e = e.checked_sub(a.checked_mul(v)?)?;
                    if *e == 0 {
                        col[j].remove(&i);
                        row_cols[i].remove(&j);
                    } else {
                        row_cols[i].insert(j);
                    }
                }
            }
            for &(i, _) in &pivot_col {
                row_cols[i].remove(&c);
            }
            col[c].clear();
            alive[c] = false;
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let mut row_index: HashMap<usize, usize> = HashMap::new();
    let mut rest: Sparse = Vec::new();
    for j in (0..col.len()).filter(|&j| alive[j]) {
        let mut c: Vec<(usize, i64)> = col[j].iter().map(|(&i, &v)| (i, v)).collect();
        c.sort();
        let c = c
            .into_iter()
            .map(|(i, v)| {
                let n = row_index.len();
                (*row_index.entry(i).or_insert(n), v)
            })
            .collect();
        rest.push(c);
    }
    Some((units, row_index.len(), rest))
}

/// Invariant factors of a sparse matrix given by columns.
fn sparse_invariant_factors(rows: usize, cols: &Sparse) -> Vec<BigUint> {
    match unit_eliminate(rows, cols) {
        Some((units, rest_rows, rest)) => {
            let mut f = vec![BigUint::one(); units];
            f.extend(invariant_factors(&dense(rest_rows, &rest)));
            f
        }
        None => invariant_factors(&dense(rows, cols)),
    }
}

/// Invariant factors (as a divisibility chain) of an integer matrix.
pub fn invariant_factors(m: &[Vec<i64>]) -> Vec<BigUint> {
    let diag: Vec<BigInt> = match diagonalize(m.to_vec()) {
        Some(d) => d.into_iter().map(BigInt::from).collect(),
        None => diagonalize(
            m.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
        .expect("bigint"),
    };
    let mut d: Vec<BigInt> = diag;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d.into_iter().map(|v| v.magnitude().clone()).collect()
}

fn group_from(dim: usize, rank_out: usize, factors_in: &[BigUint]) -> HomologyGroup {
    let torsion: Vec<BigUint> = factors_in.iter().filter(|t| !t.is_one()).cloned().collect();
    HomologyGroup {
        betti: dim - rank_out - factors_in.len(),
        torsion,
    }
}

/// `H_0 .. H_max` of the normalized chain complex; needs `max < cap`.
pub fn homology(x: &TruncSSet, max: usize) -> Result<Vec<HomologyGroup>> {
    if max >= x.cap() {
        return Err(Error::CapExceeded {
            requested: max,
            cap: x.cap(),
        });
    }
    let factors: Vec<Vec<BigUint>> = (0..=max + 1)
        .map(|k| {
            let (rows, cols) = boundary_columns(x, k);
            sparse_invariant_factors(rows, &cols)
        })
        .collect();
    Ok((0..=max)
        .map(|k| group_from(x.nondegenerate(k).len(), factors[k].len(), &factors[k + 1]))
        .collect())
}

/// Differential `cone_k -> cone_{k-1}` of the mapping cone of `f`, where
/// `cone_k = C_{k-1}(X) + C_k(Y)`, as sparse columns.
fn cone_differential(f: &SimplicialMap, k: usize) -> (usize, Sparse) {
    let (x, y) = (f.source(), f.target());
    let rx = if k >= 2 { x.nondegenerate(k - 2).len() } else { 0 };
    let ry = if k >= 1 { y.nondegenerate(k - 1).len() } else { 0 };
    let mut cols: Sparse = Vec::new();
    if k >= 1 {
        let (_, dx) = if k >= 2 { boundary_columns(x, k - 1) } else { (0, vec![Vec::new(); x.nondegenerate(0).len()]) };
        let row_of: HashMap<usize, usize> = y
            .nondegenerate(k - 1)
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        for (j, &s) in x.nondegenerate(k - 1).iter().enumerate() {
            let mut c: Vec<(usize, i64)> = dx[j].iter().map(|&(i, v)| (i, -v)).collect();
            if let Some(&r) = row_of.get(&f.apply(k - 1, s)) {
                c.push((rx + r, 1));
            }
            cols.push(c);
        }
    }
    let (_, dy) = boundary_columns(y, k);
    cols.extend(dy.into_iter().map(|c| c.into_iter().map(|(i, v)| (rx + i, v)).collect()));
    (rx + ry, cols)
}

/// True when `f` induces isomorphisms `H_k(X) -> H_k(Y)` for `k <= max`
/// (`max < cap`). The mapping cone must be acyclic through degree `max`, and
/// `H_max` must agree abstractly; a surjection of isomorphic finitely
/// generated abelian groups is an isomorphism.
pub fn homology_iso_witness(f: &SimplicialMap, max: usize) -> Result<bool> {
    let (x, y) = (f.source(), f.target());
    if max >= x.cap() {
        return Err(Error::CapExceeded {
            requested: max,
            cap: x.cap(),
        });
    }
    let factors: Vec<Vec<BigUint>> = (0..=max + 1)
        .map(|k| {
            let (rows, cols) = cone_differential(f, k);
            sparse_invariant_factors(rows, &cols)
        })
        .collect();
    for k in 0..=max {
        let dim = (if k == 0 {
            0
        } else {
            x.nondegenerate(k - 1).len()
        }) + y.nondegenerate(k).len();
        if !group_from(dim, factors[k].len(), &factors[k + 1]).is_zero() {
            return Ok(false);
        }
    }
    Ok(homology(x, max)?[max] == homology(y, max)?[max])
}

/// Rank of an integer matrix modulo a prime.
pub fn rank_mod_p(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m
        .iter()
        .map(|r| r.iter().map(|v| v.rem_euclid(p)).collect())
        .collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = mod_inverse(a[rank][c], p);
        for j in c..cols {
            a[rank][j] = a[rank][j] * inv % p;
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let q = a[r][c];
                for j in c..cols {
                    a[r][j] = (a[r][j] - q * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    let mut r = 1i64;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::{boundary, circle, standard_simplex};

    #[test]
    fn simplex_is_acyclic() {
        let h = homology(&standard_simplex(2, 4), 3).unwrap();
        assert_eq!(h[0], HomologyGroup::free(1));
        assert!(h[1..].iter().all(|g| g.is_zero()));
    }

    #[test]
    fn circles() {
        for x in [circle(4), boundary(2, 4)] {
            let h = homology(&x, 3).unwrap();
            assert_eq!(h[0], HomologyGroup::free(1));
            assert_eq!(h[1], HomologyGroup::free(1));
            assert!(h[2].is_zero() && h[3].is_zero());
        }
    }

    #[test]
    fn sphere_two() {
        let h = homology(&boundary(3, 4), 3).unwrap();
        assert_eq!(h[2], HomologyGroup::free(1));
        assert!(h[1].is_zero());
    }

    #[test]
    fn invariant_factor_chain() {
        let f = invariant_factors(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(f, vec![BigUint::from(1u8), BigUint::from(6u8)]);
        let f = invariant_factors(&[vec![i64::MAX, 2], vec![3, i64::MAX]]);
        assert_eq!(f.len(), 2);
    }

    fn columns(m: &[Vec<i64>]) -> Sparse {
        let cols = m.first().map_or(0, |r| r.len());
        (0..cols)
            .map(|j| (0..m.len()).filter(|&i| m[i][j] != 0).map(|i| (i, m[i][j])).collect())
            .collect()
    }

    proptest::proptest! {
        #[test]
        fn sparse_matches_dense(entries in proptest::collection::vec(-2i64..=2, 30), rows in 1usize..6) {
            let cols = entries.len() / rows;
            let m: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| entries[i * cols + j]).collect()).collect();
            proptest::prop_assert_eq!(sparse_invariant_factors(rows, &columns(&m)), invariant_factors(&m));
        }
    }

    #[test]
    fn cap_exceeded() {
        assert!(matches!(
            homology(&circle(2), 2),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn cone_detects_non_iso() {
        let d1 = standard_simplex(1, 3);
        let b = boundary(1, 3);
        let inc = SimplicialMap::tabulate(&b, &d1, |n, x| d1.index_of(n, b.label(n, x)).unwrap());
        assert!(!homology_iso_witness(&inc, 2).unwrap());
        let id = SimplicialMap::identity(&d1);
        assert!(homology_iso_witness(&id, 2).unwrap());
        let p = crate::simpset::point(3);
        let collapse = SimplicialMap::tabulate(&d1, &p, |_, _| 0);
        assert!(homology_iso_witness(&collapse, 2).unwrap());
    }
}
