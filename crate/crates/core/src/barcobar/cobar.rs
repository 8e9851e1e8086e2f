use std::collections::HashMap;

use super::{CosimpObj, Tot};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::fincat::ObjId;
use crate::nerve::Nerve;
use crate::simpset::{
    decode, encode, for_each_map, mapping_space, product, product_map, product_many, simplex_operator, standard_simplex, tabulate,
    MappingSpace, SimplicialMap, TruncSSet,
};

/// Writes `x = theta^* y` with `y` nondegenerate and `theta` surjective.
pub fn decompose(k: &TruncSSet, n: usize, x: usize) -> (usize, usize, Vec<usize>) {
    let (mut level, mut y) = (n, x);
    let mut theta: Vec<usize> = (0..=n).collect();
    'outer: while level > 0 {
        for i in 0..level {
            let z = k.face(level, i, y);
            if k.degen(level - 1, i, z) == y {
                for t in theta.iter_mut() {
                    if *t > i {
                        *t -= 1;
                    }
                }
                level -= 1;
                y = z;
                continue 'outer;
            }
        }
        break;
    }
    (level, y, theta)
}

const MAX_LEVEL_SIZE: usize = 2_000_000;

/// `C^n = prod over strings a of Map(G(a_0), F(a_n))` for a covariant
/// weight `g`.
pub fn cosimplicial_cobar(g: &Diagram, f: &Diagram, hcap: usize) -> Result<CosimpObj> {
    if !g.shape().table_eq(f.shape()) || g.cap() != f.cap() {
        return Err(Error::ShapeMismatch("cobar weight must live on the diagram shape".into()));
    }
    let d = f.shape();
    let cap = f.cap();
    let nerve = Nerve::new(d, hcap);
    let mut spaces: HashMap<(ObjId, ObjId), MappingSpace> = HashMap::new();
    for n in 0..=hcap {
        for a in 0..nerve.sset.len(n) {
            let key = (nerve.first(n, a), nerve.last(n, a));
            if !spaces.contains_key(&key) {
                spaces.insert(key, mapping_space(g.value(key.0), f.value(key.1), cap)?);
            }
        }
    }
    let space = |n: usize, a: usize| &spaces[&(nerve.first(n, a), nerve.last(n, a))];
    let mut levels = Vec::new();
    for n in 0..=hcap {
        let factors: Vec<&TruncSSet> = (0..nerve.sset.len(n)).map(|a| &space(n, a).sset).collect();
        for l in 0..=cap {
            let size = factors.iter().try_fold(1usize, |acc, x| acc.checked_mul(x.len(l)));
            if size.map_or(true, |s| s > MAX_LEVEL_SIZE) {
                return Err(Error::TooLarge(format!("cobar level {n} has too many {l}-simplices")));
            }
        }
        levels.push(product_many(&factors, cap)?);
    }
    let sizes = |n: usize, l: usize| -> Vec<usize> { (0..nerve.sset.len(n)).map(|a| space(n, a).sset.len(l)).collect() };
    // re-index a map G(a_0) x Delta^l -> F(a_n) after pre- or postcomposition
    let transport = |from: &MappingSpace, to: &MappingSpace, l: usize, phi: usize, pre: Option<&SimplicialMap>, post: Option<&SimplicialMap>| {
        let src = &from.maps[l][phi];
        let dom = &to.domains[l];
        let tables: Vec<Vec<usize>> = (0..=cap)
            .map(|v| {
                (0..dom.len(v))
                    .map(|z| {
                        let z = match pre {
                            Some(p) => {
                                let per = standard_simplex(l, cap).len(v);
                                p.apply(v, z / per) * per + z % per
                            }
                            None => z,
                        };
                        let w = src.apply(v, z);
                        post.map_or(w, |p| p.apply(v, w))
                    })
                    .collect()
            })
            .collect();
        to.index_of(l, &tables).unwrap()
    };
    let cofaces = (0..=hcap)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            (0..=n)
                .map(|i| {
                    SimplicialMap::tabulate(&levels[n - 1], &levels[n], |l, c| {
                        let phi = decode(&sizes(n - 1, l), c);
                        let psi: Vec<usize> = (0..nerve.sset.len(n))
                            .map(|a| {
                                let b = nerve.sset.face(n, i, a);
                                let s = nerve.string(n, a);
                                let (from, to) = (space(n - 1, b), space(n, a));
                                if i == 0 {
                                    transport(from, to, l, phi[b], Some(g.map(s[0])), None)
                                } else if i == n {
                                    transport(from, to, l, phi[b], None, Some(f.map(s[n - 1])))
                                } else {
                                    phi[b]
                                }
                            })
                            .collect();
                        encode(&sizes(n, l), &psi)
                    })
                })
                .collect()
        })
        .collect();
    let codegens = (0..=hcap)
        .map(|n| {
            if n == hcap {
                return Vec::new();
            }
            (0..=n)
                .map(|j| {
                    SimplicialMap::tabulate(&levels[n + 1], &levels[n], |l, c| {
                        let phi = decode(&sizes(n + 1, l), c);
                        let psi: Vec<usize> = (0..nerve.sset.len(n)).map(|a| phi[nerve.sset.degen(n, j, a)]).collect();
                        encode(&sizes(n, l), &psi)
                    })
                })
                .collect()
        })
        .collect();
    CosimpObj::new(levels, cofaces, codegens)
}

/// `Tot` of the cobar construction without building the cosimplicial
/// levels: a `k`-simplex is a family of maps
/// `Delta^n x Delta^k x G(a_0) -> F(a_n)` over the nondegenerate strings,
/// compatible with faces, the degenerate strings being determined.
pub fn tot_cobar(g: &Diagram, f: &Diagram, hcap: usize, cap_out: usize) -> Result<Tot> {
    if !g.shape().table_eq(f.shape()) || g.cap() != f.cap() {
        return Err(Error::ShapeMismatch("cobar weight must live on the diagram shape".into()));
    }
    let cap = f.cap();
    if cap_out > cap {
        return Err(Error::CapExceeded { requested: cap_out, cap });
    }
    let nerve = Nerve::new(f.shape(), hcap);
    let k_set = &nerve.sset;
    let nondeg: Vec<(usize, usize)> = (0..=hcap).flat_map(|n| k_set.nondegenerate(n).into_iter().map(move |a| (n, a))).collect();
    let slot: HashMap<(usize, usize), usize> = nondeg.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let simplices: Vec<TruncSSet> = (0..=hcap.max(cap_out)).map(|n| standard_simplex(n, cap)).collect();
    let gdim = g.values().iter().filter_map(|x| x.dimension()).max().unwrap_or(0);
    let exact = k_set.nondegenerate(hcap).is_empty() && hcap + cap_out + gdim <= cap;
    // domain of the component at nondegenerate string i for level k
    let domain = |n: usize, k: usize, o: ObjId| -> TruncSSet {
        product(&product(&simplices[n], &simplices[k]).unwrap(), g.value(o)).unwrap()
    };
    // index map induced by theta on the Delta^n factor
    let along_first = |theta: &[usize], n: usize, k: usize, o: ObjId| -> SimplicialMap {
        let op = simplex_operator(theta, n, cap);
        product_map(
            &product_map(&op, &SimplicialMap::identity(&simplices[k])).unwrap(),
            &SimplicialMap::identity(g.value(o)),
        )
        .unwrap()
    };
    let along_second = |theta: &[usize], k: usize, n: usize, o: ObjId| -> SimplicialMap {
        let op = simplex_operator(theta, k, cap);
        product_map(
            &product_map(&SimplicialMap::identity(&simplices[n]), &op).unwrap(),
            &SimplicialMap::identity(g.value(o)),
        )
        .unwrap()
    };
    let along_weight = |n: usize, k: usize, gm: &SimplicialMap| -> SimplicialMap {
        let id = SimplicialMap::identity(&product(&simplices[n], &simplices[k]).unwrap());
        product_map(&id, gm).unwrap()
    };
    // tables of the component at an arbitrary string, given the nondegenerate ones
    let component = |fam: &[Vec<Vec<usize>>], n: usize, a: usize, k: usize| -> Vec<Vec<usize>> {
        let (m, b, theta) = decompose(k_set, n, a);
        let base = &fam[slot[&(m, b)]];
        if m == n {
            return base.clone();
        }
        let o = nerve.first(n, a);
        let t = along_first(&theta, m, k, o);
        (0..=cap).map(|l| (0..t.source().len(l)).map(|z| base[l][t.apply(l, z)]).collect()).collect()
    };
    let mut elements: Vec<Vec<Vec<Vec<Vec<usize>>>>> = Vec::new();
    let mut labels: Vec<Vec<String>> = Vec::new();
    let mut keys: Vec<HashMap<Vec<usize>, usize>> = Vec::new();
    let key_of = |fam: &[Vec<Vec<usize>>], k: usize| -> Vec<usize> {
        nondeg
            .iter()
            .zip(fam)
            .flat_map(|(&(n, a), t)| {
                let dom = domain(n, k, nerve.first(n, a));
                (0..=cap).flat_map(|l| dom.nondegenerate(l).into_iter().map(|s| t[l][s]).collect::<Vec<_>>()).collect::<Vec<_>>()
            })
            .collect()
    };
    for k in 0..=cap_out {
        let mut found: Vec<Vec<Vec<Vec<usize>>>> = Vec::new();
        let mut cur: Vec<Vec<Vec<usize>>> = Vec::new();
        fn go(
            i: usize,
            cur: &mut Vec<Vec<Vec<usize>>>,
            found: &mut Vec<Vec<Vec<Vec<usize>>>>,
            step: &dyn Fn(usize, &[Vec<Vec<usize>>]) -> Result<Vec<Vec<Vec<usize>>>>,
            total: usize,
        ) -> Result<()> {
            if i == total {
                found.push(cur.clone());
                return Ok(());
            }
            for t in step(i, cur)? {
                cur.push(t);
                go(i + 1, cur, found, step, total)?;
                cur.pop();
            }
            Ok(())
        }
        let step = |i: usize, cur: &[Vec<Vec<usize>>]| -> Result<Vec<Vec<Vec<usize>>>> {
            let (n, a) = nondeg[i];
            let o = nerve.first(n, a);
            let dom = domain(n, k, o);
            let tgt = f.value(nerve.last(n, a));
            let mut fixed: Vec<Vec<Option<usize>>> = (0..=cap).map(|l| vec![None; dom.len(l)]).collect();
            if n > 0 {
                let s = nerve.string(n, a);
                for j in 0..=n {
                    let b = k_set.face(n, j, a);
                    let phi = component(cur, n - 1, b, k);
                    let theta: Vec<usize> = (0..n).map(|t| if t < j { t } else { t + 1 }).collect();
                    let inc = along_first(&theta, n, k, o);
                    let pre = (j == 0).then(|| along_weight(n - 1, k, g.map(s[0])));
                    for l in 0..=cap {
                        for z in 0..inc.source().len(l) {
                            let v = match &pre {
                                Some(p) => phi[l][p.apply(l, z)],
                                None => phi[l][z],
                            };
                            let v = if j == n { f.map(s[n - 1]).apply(l, v) } else { v };
                            let pos = inc.apply(l, z);
                            match fixed[l][pos] {
                                Some(w) if w != v => return Ok(Vec::new()),
                                _ => fixed[l][pos] = Some(v),
                            }
                        }
                    }
                }
            }
            let mut out = Vec::new();
            for_each_map(&dom, tgt, Some(&fixed), &mut |t| {
                out.push(t.to_vec());
                true
            })?;
            Ok(out)
        };
        go(0, &mut cur, &mut found, &step, nondeg.len())?;
        let level_keys: HashMap<Vec<usize>, usize> = found.iter().enumerate().map(|(i, fam)| (key_of(fam, k), i)).collect();
        labels.push(
            found
                .iter()
                .map(|fam| {
                    nondeg
                        .iter()
                        .zip(fam)
                        .map(|(&(n, a), t)| {
                            let dom = domain(n, k, nerve.first(n, a));
                            let tgt = f.value(nerve.last(n, a));
                            let vals: Vec<&str> = (0..=cap)
                                .flat_map(|l| dom.nondegenerate(l).into_iter().map(move |s| (l, s)))
                                .map(|(l, s)| tgt.label(l, t[l][s]))
                                .collect();
                            format!("{{{}}}", vals.join(","))
                        })
                        .collect::<Vec<_>>()
                        .join("")
                })
                .collect(),
        );
        keys.push(level_keys);
        elements.push(found);
    }
    let restrict = |k: usize, k2: usize, theta: &[usize], fam: &[Vec<Vec<usize>>]| -> usize {
        let moved: Vec<Vec<Vec<usize>>> = nondeg
            .iter()
            .zip(fam)
            .map(|(&(n, a), t)| {
                let r = along_second(theta, k, n, nerve.first(n, a));
                (0..=cap).map(|l| (0..r.source().len(l)).map(|z| t[l][r.apply(l, z)]).collect()).collect()
            })
            .collect();
        keys[k2][&key_of(&moved, k2)]
    };
    let sset = tabulate(
        cap_out,
        labels,
        |k, i, t| {
            let theta: Vec<usize> = (0..k).map(|j| if j < i { j } else { j + 1 }).collect();
            restrict(k, k - 1, &theta, &elements[k][t])
        },
        |k, i, t| {
            let theta: Vec<usize> = (0..=k + 1).map(|j| if j <= i { j } else { j - 1 }).collect();
            restrict(k, k + 1, &theta, &elements[k][t])
        },
    );
    Ok(Tot { sset, elements, exact })
}

/// The uncorrected homotopy limit, `Tot` of `C(*, D, F)`.
pub fn holim(f: &Diagram, cap_out: usize) -> Result<Tot> {
    tot_cobar(&Diagram::terminal(f.shape(), f.cap()), f, f.cap(), cap_out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barcobar::tot;
    use crate::fincat::FinCat;
    use crate::simpset::{boundary, is_isomorphic, point};

    #[test]
    fn decompose_nerve_simplex() {
        let d = FinCat::linear(1);
        let n = Nerve::new(&d, 3);
        for x in 0..n.sset.len(3) {
            let (m, y, theta) = decompose(&n.sset, 3, x);
            assert!(!n.sset.is_degenerate(m, y));
            assert_eq!(n.sset.apply_operator(m, y, &theta), x);
        }
    }

    #[test]
    fn holim_over_arrow_to_point() {
        let d = FinCat::linear(1);
        let x = boundary(1, 2);
        let f = Diagram::from_fn(&d, |o| if o.0 == 0 { x.clone() } else { point(2) }, |m, a, b| {
            if d.is_identity(m) {
                SimplicialMap::identity(a)
            } else {
                SimplicialMap::tabulate(a, b, |_, _| 0)
            }
        })
        .unwrap();
        let t = holim(&f, 1).unwrap();
        assert!(is_isomorphic(&t.sset, &x.truncate(1).unwrap()).is_some());
        let generic = tot(&cosimplicial_cobar(&Diagram::terminal(&d, 2), &f, 2).unwrap(), 1).unwrap();
        assert!(is_isomorphic(&generic.sset, &t.sset).is_some());
    }

    #[test]
    fn holim_of_constant_over_point() {
        let d = FinCat::terminal();
        let x = boundary(2, 3);
        let f = Diagram::constant(&d, &x);
        let t = holim(&f, 2).unwrap();
        assert!(is_isomorphic(&t.sset, &x.truncate(2).unwrap()).is_some());
    }
}
