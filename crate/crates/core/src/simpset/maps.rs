use std::collections::HashMap;

use super::build::{parse_vertex_label, vertex_label};
use super::{product, standard_simplex, tabulate, SimplicialMap, TruncSSet};
use crate::error::{Error, Result};

/// Candidates at each level keyed by the tuple of faces.
pub(crate) struct FaceIndex {
    by_faces: Vec<HashMap<Vec<usize>, Vec<usize>>>,
}

impl FaceIndex {
    pub(crate) fn new(x: &TruncSSet) -> Self {
        let by_faces = (0..=x.cap())
            .map(|n| {
                let mut m: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
                if n > 0 {
                    for z in 0..x.len(n) {
                        m.entry(x.faces_of(n, z)).or_default().push(z);
                    }
                }
                m
            })
            .collect();
        FaceIndex { by_faces }
    }

    pub(crate) fn with_faces(&self, n: usize, faces: &[usize]) -> &[usize] {
        self.by_faces[n]
            .get(faces)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }
}

/// Calls `visit` with the level tables of every simplicial map
/// `src -> tgt` that agrees with `fixed` where it is `Some`. `visit`
/// returns false to stop early.
pub fn for_each_map(
    src: &TruncSSet,
    tgt: &TruncSSet,
    fixed: Option<&[Vec<Option<usize>>]>,
    visit: &mut dyn FnMut(&[Vec<usize>]) -> bool,
) -> Result<()> {
    if src.cap() != tgt.cap() {
        return Err(Error::CapMismatch(src.cap(), tgt.cap()));
    }
    let cap = src.cap();
    let index = FaceIndex::new(tgt);
    let order: Vec<(usize, usize)> = (0..=cap)
        .flat_map(|n| (0..src.len(n)).map(move |x| (n, x)))
        .collect();
    // a degenerate simplex is recovered as s_i d_i
    let degen_from: Vec<Vec<Option<usize>>> = (0..=cap)
        .map(|n| {
            (0..src.len(n))
                .map(|x| {
                    if n == 0 {
                        None
                    } else {
                        (0..n).find(|&i| src.degen(n - 1, i, src.face(n, i, x)) == x)
                    }
                })
                .collect()
        })
        .collect();
    let mut img: Vec<Vec<usize>> = (0..=cap).map(|n| vec![0; src.len(n)]).collect();
    let all_vertices: Vec<usize> = (0..tgt.len(0)).collect();
    fn go(
        k: usize,
        order: &[(usize, usize)],
        src: &TruncSSet,
        tgt: &TruncSSet,
        index: &FaceIndex,
        degen_from: &[Vec<Option<usize>>],
        fixed: Option<&[Vec<Option<usize>>]>,
        all_vertices: &[usize],
        img: &mut Vec<Vec<usize>>,
        visit: &mut dyn FnMut(&[Vec<usize>]) -> bool,
    ) -> bool {
        let Some(&(n, x)) = order.get(k) else {
            return visit(img);
        };
        let want = fixed.and_then(|f| f[n][x]);
        let forced;
        let cands: &[usize] = if let Some(i) = degen_from[n][x] {
            forced = [tgt.degen(n - 1, i, img[n - 1][src.face(n, i, x)])];
            &forced
        } else if n == 0 {
            all_vertices
        } else {
            let faces: Vec<usize> = (0..=n).map(|i| img[n - 1][src.face(n, i, x)]).collect();
            // the slice borrows `index`, not `img`, so it outlives `faces`
            index.with_faces(n, &faces)
        };
        for &c in cands {
            if want.is_some_and(|w| w != c) {
                continue;
            }
            img[n][x] = c;
            if !go(
                k + 1,
                order,
                src,
                tgt,
                index,
                degen_from,
                fixed,
                all_vertices,
                img,
                visit,
            ) {
                return false;
            }
        }
        true
    }
    go(
        0,
        &order,
        src,
        tgt,
        &index,
        &degen_from,
        fixed,
        &all_vertices,
        &mut img,
        visit,
    );
    Ok(())
}

/// Every simplicial map `src -> tgt`.
pub fn enumerate_maps(src: &TruncSSet, tgt: &TruncSSet) -> Result<Vec<SimplicialMap>> {
    let mut out = Vec::new();
    for_each_map(src, tgt, None, &mut |t| {
        out.push(SimplicialMap::new_unchecked(
            src.clone(),
            tgt.clone(),
            t.to_vec(),
        ));
        true
    })?;
    Ok(out)
}

/// `Map(K, X)` truncated at `cap_out`; level `n` holds the maps
/// `K x Delta^n -> X` of sets truncated at the common cap.
#[derive(Clone, Debug)]
pub struct MappingSpace {
    pub sset: TruncSSet,
    /// `domains[n] = K x Delta^n`.
    pub domains: Vec<TruncSSet>,
    /// `maps[n][i]` is the map named by simplex `i` at level `n`.
    pub maps: Vec<Vec<SimplicialMap>>,
    pub target: TruncSSet,
    /// False when some `K x Delta^n` has nondegenerate simplices above the
    /// cap, so truncated maps may not come from honest ones.
    pub exact: bool,
}

impl MappingSpace {
    /// Index of the map with these tables at level `n`.
    pub fn index_of(&self, n: usize, tables: &[Vec<usize>]) -> Option<usize> {
        let key = map_key(&self.domains[n], tables);
        self.sset.index_of(n, &key_label(&self.target, &key))
    }
}

fn map_key(dom: &TruncSSet, tables: &[Vec<usize>]) -> Vec<(usize, usize)> {
    (0..=dom.cap())
        .flat_map(|n| {
            dom.nondegenerate(n)
                .into_iter()
                .map(move |s| (n, tables[n][s]))
        })
        .collect()
}

fn key_label(tgt: &TruncSSet, key: &[(usize, usize)]) -> String {
    let parts: Vec<&str> = key.iter().map(|&(n, y)| tgt.label(n, y)).collect();
    format!("{{{}}}", parts.join(","))
}

/// Index map `K x Delta^m -> K x Delta^n` induced by `theta: [m] -> [n]`.
pub(crate) fn simplex_factor_map(
    k: &TruncSSet,
    m: usize,
    n: usize,
    theta: &[usize],
    dm: &TruncSSet,
    dn: &TruncSSet,
) -> Vec<Vec<usize>> {
    let cap = k.cap();
    (0..=cap)
        .map(|l| {
            let per_k = dm.len(l);
            (0..k.len(l) * per_k)
                .map(|i| {
                    let (a, u) = (i / per_k, i % per_k);
                    let v = parse_vertex_label(dm.label(l, u), m);
                    let w: Vec<usize> = v.iter().map(|&j| theta[j]).collect();
                    a * dn.len(l) + dn.index_of(l, &vertex_label(&w, n)).unwrap()
                })
                .collect()
        })
        .collect()
}

pub fn mapping_space(k: &TruncSSet, x: &TruncSSet, cap_out: usize) -> Result<MappingSpace> {
    if k.cap() != x.cap() {
        return Err(Error::CapMismatch(k.cap(), x.cap()));
    }
    let cap = k.cap();
    if cap_out > cap {
        return Err(Error::CapExceeded {
            requested: cap_out,
            cap,
        });
    }
    let simplices: Vec<TruncSSet> = (0..=cap_out).map(|n| standard_simplex(n, cap)).collect();
    let domains: Vec<TruncSSet> = simplices
        .iter()
        .map(|d| product(k, d))
        .collect::<Result<_>>()?;
    let exact = k.dimension().map_or(true, |d| d + cap_out <= cap);
    let mut maps: Vec<Vec<SimplicialMap>> = Vec::with_capacity(cap_out + 1);
    let mut keys: Vec<HashMap<Vec<(usize, usize)>, usize>> = Vec::new();
    let mut labels = Vec::new();
    for n in 0..=cap_out {
        let mut found: Vec<(String, Vec<(usize, usize)>, SimplicialMap)> = Vec::new();
        for_each_map(&domains[n], x, None, &mut |t| {
            let key = map_key(&domains[n], t);
            let label = key_label(x, &key);
            found.push((
                label,
                key,
                SimplicialMap::new_unchecked(domains[n].clone(), x.clone(), t.to_vec()),
            ));
            true
        })?;
        found.sort_by(|a, b| a.0.cmp(&b.0));
        keys.push(
            found
                .iter()
                .enumerate()
                .map(|(i, f)| (f.1.clone(), i))
                .collect(),
        );
        labels.push(found.iter().map(|f| f.0.clone()).collect::<Vec<_>>());
        maps.push(found.into_iter().map(|f| f.2).collect());
    }
    let precompose = |n: usize, m: usize, theta: &[usize], phi: &SimplicialMap| -> usize {
        let idx = simplex_factor_map(k, m, n, theta, &simplices[m], &simplices[n]);
        let tables: Vec<Vec<usize>> = idx
            .iter()
            .enumerate()
            .map(|(l, v)| v.iter().map(|&i| phi.apply(l, i)).collect())
            .collect();
        keys[m][&map_key(&domains[m], &tables)]
    };
    let sset = tabulate(
        cap_out,
        labels,
        |n, i, s| {
            let theta: Vec<usize> = (0..n).map(|j| if j < i { j } else { j + 1 }).collect();
            precompose(n, n - 1, &theta, &maps[n][s])
        },
        |n, i, s| {
            let theta: Vec<usize> = (0..=n + 1)
                .map(|j| if j <= i { j } else { j - 1 })
                .collect();
            precompose(n, n + 1, &theta, &maps[n][s])
        },
    );
    Ok(MappingSpace {
        sset,
        domains,
        maps,
        target: x.clone(),
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::{boundary, point};

    #[test]
    fn maps_between_boundaries() {
        let b = boundary(1, 3);
        let m = mapping_space(&b, &b, 1).unwrap();
        assert_eq!(m.sset.len(0), 4);
        assert!(m.exact);
        assert_eq!(
            enumerate_maps(&standard_simplex(1, 2), &standard_simplex(1, 2))
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn maps_into_point() {
        let m = mapping_space(&standard_simplex(2, 3), &point(3), 1).unwrap();
        assert_eq!(m.sset.level_sizes(), vec![1, 1]);
        assert!(m.exact);
        assert!(
            !mapping_space(&standard_simplex(2, 3), &point(3), 2)
                .unwrap()
                .exact
        );
    }

    #[test]
    fn path_space_of_interval() {
        let d1 = standard_simplex(1, 3);
        let m = mapping_space(&standard_simplex(0, 3), &d1, 2).unwrap();
        assert_eq!(m.sset.level_sizes(), vec![2, 3, 4]);
    }
}
