use petgraph::unionfind::UnionFind;

use super::{tabulate, SimplicialMap, TruncSSet};
use crate::error::{Error, Result};

fn check_caps(xs: &[&TruncSSet]) -> Result<usize> {
    let cap = xs.first().map(|x| x.cap()).unwrap_or(0);
    for x in xs {
        if x.cap() != cap {
            return Err(Error::CapMismatch(cap, x.cap()));
        }
    }
    Ok(cap)
}

/// Levelwise cartesian product; the element with coordinates `(i_0, ..., i_r)`
/// has mixed-radix index `((i_0 * |X_1|) + i_1) * |X_2| + ...`.
pub fn product_many(factors: &[&TruncSSet], cap: usize) -> Result<TruncSSet> {
    if !factors.is_empty() && check_caps(factors)? != cap {
        return Err(Error::CapMismatch(cap, factors[0].cap()));
    }
    let sizes: Vec<Vec<usize>> = (0..=cap)
        .map(|n| factors.iter().map(|f| f.len(n)).collect())
        .collect();
    let labels = (0..=cap)
        .map(|n| {
            let total: usize = sizes[n].iter().product();
            (0..total)
                .map(|i| {
                    let coords = decode(&sizes[n], i);
                    let parts: Vec<&str> = coords
                        .iter()
                        .zip(factors)
                        .map(|(&c, f)| f.label(n, c))
                        .collect();
                    format!("({})", parts.join(","))
                })
                .collect()
        })
        .collect();
    let act = |n: usize, i: usize, op: &dyn Fn(&TruncSSet, usize) -> usize, m: usize| {
        let coords = decode(&sizes[n], i);
        let image: Vec<usize> = coords.iter().zip(factors).map(|(&c, f)| op(f, c)).collect();
        encode(&sizes[m], &image)
    };
    Ok(tabulate(
        cap,
        labels,
        |n, k, x| act(n, x, &|f, c| f.face(n, k, c), n - 1),
        |n, k, x| act(n, x, &|f, c| f.degen(n, k, c), n + 1),
    ))
}

pub fn product(x: &TruncSSet, y: &TruncSSet) -> Result<TruncSSet> {
    product_many(&[x, y], check_caps(&[x, y])?)
}

pub(crate) fn decode(sizes: &[usize], mut i: usize) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for k in (0..sizes.len()).rev() {
        out[k] = i % sizes[k];
        i /= sizes[k];
    }
    out
}

pub(crate) fn encode(sizes: &[usize], coords: &[usize]) -> usize {
    coords
        .iter()
        .zip(sizes)
        .fold(0, |acc, (&c, &s)| acc * s + c)
}

/// Index of `(x, y)` in `product(a, b)` at level `n`.
pub fn pair_index(b: &TruncSSet, n: usize, x: usize, y: usize) -> usize {
    x * b.len(n) + y
}

/// `f x g`.
pub fn product_map(f: &SimplicialMap, g: &SimplicialMap) -> Result<SimplicialMap> {
    let src = product(f.source(), g.source())?;
    let tgt = product(f.target(), g.target())?;
    let (gs, gt) = (g.source().clone(), g.target().clone());
    Ok(SimplicialMap::tabulate(&src, &tgt, |n, i| {
        let (x, y) = (i / gs.len(n), i % gs.len(n));
        pair_index(&gt, n, f.apply(n, x), g.apply(n, y))
    }))
}

/// Projections out of `product(x, y)`.
pub fn projections(
    x: &TruncSSet,
    y: &TruncSSet,
) -> Result<(TruncSSet, SimplicialMap, SimplicialMap)> {
    let p = product(x, y)?;
    let px = SimplicialMap::tabulate(&p, x, |n, i| i / y.len(n));
    let py = SimplicialMap::tabulate(&p, y, |n, i| i % y.len(n));
    Ok((p, px, py))
}

/// Quotient of a levelwise coproduct by the equivalence relation generated
/// by given pairs. Each class is named by its lexicographically least member
/// label `tag:label`.
#[derive(Clone, Debug)]
pub struct Glued {
    pub sset: TruncSSet,
    summands: Vec<TruncSSet>,
    class_of: Vec<Vec<Vec<usize>>>,
    reps: Vec<Vec<(usize, usize)>>,
}

impl Glued {
    /// Class of element `x` at level `n` of summand `s`.
    pub fn class(&self, s: usize, n: usize, x: usize) -> usize {
        self.class_of[s][n][x]
    }

    /// Representative `(summand, element)` of class `c` at level `n`.
    pub fn rep(&self, n: usize, c: usize) -> (usize, usize) {
        self.reps[n][c]
    }

    pub fn injection(&self, s: usize) -> SimplicialMap {
        SimplicialMap::tabulate(&self.summands[s], &self.sset, |n, x| self.class(s, n, x))
    }

    pub fn summands(&self) -> &[TruncSSet] {
        &self.summands
    }
}

/// `relate(n, union)` calls `union((s, x), (t, y))` for each generating pair
/// at level `n`. The relation must be compatible with faces and degeneracies
/// (it is whenever it comes from simplicial maps).
pub fn glue(
    tags: &[String],
    summands: &[TruncSSet],
    cap: usize,
    mut relate: impl FnMut(usize, &mut dyn FnMut((usize, usize), (usize, usize))),
) -> Result<Glued> {
    for s in summands {
        if s.cap() != cap {
            return Err(Error::CapMismatch(cap, s.cap()));
        }
    }
    let mut class_of: Vec<Vec<Vec<usize>>> = summands
        .iter()
        .map(|_| Vec::with_capacity(cap + 1))
        .collect();
    let mut reps = Vec::with_capacity(cap + 1);
    let mut labels = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        let offsets: Vec<usize> = summands
            .iter()
            .scan(0, |acc, s| {
                let o = *acc;
                *acc += s.len(n);
                Some(o)
            })
            .collect();
        let total: usize = summands.iter().map(|s| s.len(n)).sum();
        let mut uf = UnionFind::<usize>::new(total);
        relate(n, &mut |(s, x), (t, y)| {
            uf.union(offsets[s] + x, offsets[t] + y);
        });
        let mut best: std::collections::HashMap<usize, (String, usize, usize)> = Default::default();
        for (s, sum) in summands.iter().enumerate() {
            for x in 0..sum.len(n) {
                let root = uf.find(offsets[s] + x);
                let label = format!("{}:{}", tags[s], sum.label(n, x));
                match best.get(&root) {
                    Some((l, _, _)) if *l <= label => {}
                    _ => {
                        best.insert(root, (label, s, x));
                    }
                }
            }
        }
        let mut classes: Vec<(usize, (String, usize, usize))> = best.into_iter().collect();
        classes.sort_by(|a, b| a.1 .0.cmp(&b.1 .0));
        let mut root_class = std::collections::HashMap::with_capacity(classes.len());
        for (c, (root, _)) in classes.iter().enumerate() {
            root_class.insert(*root, c);
        }
        for (s, sum) in summands.iter().enumerate() {
            class_of[s].push(
                (0..sum.len(n))
                    .map(|x| root_class[&uf.find(offsets[s] + x)])
                    .collect(),
            );
        }
        reps.push(
            classes
                .iter()
                .map(|(_, (_, s, x))| (*s, *x))
                .collect::<Vec<_>>(),
        );
        labels.push(
            classes
                .into_iter()
                .map(|(_, (l, _, _))| l)
                .collect::<Vec<_>>(),
        );
    }
    let sset = tabulate(
        cap,
        labels,
        |n, i, c| {
            let (s, x) = reps[n][c];
            class_of[s][n - 1][summands[s].face(n, i, x)]
        },
        |n, i, c| {
            let (s, x) = reps[n][c];
            class_of[s][n + 1][summands[s].degen(n, i, x)]
        },
    );
    let g = Glued {
        sset,
        summands: summands.to_vec(),
        class_of,
        reps,
    };
    debug_assert!((0..summands.len()).all(|s| {
        let _ = g.injection(s);
        true
    }));
    Ok(g)
}

/// Tagged disjoint union.
pub fn coproduct(tags: &[String], summands: &[TruncSSet], cap: usize) -> Result<Glued> {
    glue(tags, summands, cap, |_, _| {})
}

/// `X x_Z Y` for `f: X -> Z`, `g: Y -> Z`, with labels `(x,y)`.
pub fn pullback(
    f: &SimplicialMap,
    g: &SimplicialMap,
) -> Result<(TruncSSet, SimplicialMap, SimplicialMap)> {
    if !f.target().same(g.target()) {
        return Err(Error::ShapeMismatch(
            "pullback legs have different targets".into(),
        ));
    }
    let (x, y) = (f.source(), g.source());
    let cap = x.cap();
    let pairs: Vec<Vec<(usize, usize)>> = (0..=cap)
        .map(|n| {
            let mut by_image: std::collections::HashMap<usize, Vec<usize>> = Default::default();
            for b in 0..y.len(n) {
                by_image.entry(g.apply(n, b)).or_default().push(b);
            }
            let mut v = Vec::new();
            for a in 0..x.len(n) {
                if let Some(bs) = by_image.get(&f.apply(n, a)) {
                    v.extend(bs.iter().map(|&b| (a, b)));
                }
            }
            v
        })
        .collect();
    let index: Vec<std::collections::HashMap<(usize, usize), usize>> = pairs
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, &p)| (p, i)).collect())
        .collect();
    let labels = pairs
        .iter()
        .enumerate()
        .map(|(n, l)| {
            l.iter()
                .map(|&(a, b)| format!("({},{})", x.label(n, a), y.label(n, b)))
                .collect()
        })
        .collect();
    let p = tabulate(
        cap,
        labels,
        |n, i, k| {
            let (a, b) = pairs[n][k];
            index[n - 1][&(x.face(n, i, a), y.face(n, i, b))]
        },
        |n, i, k| {
            let (a, b) = pairs[n][k];
            index[n + 1][&(x.degen(n, i, a), y.degen(n, i, b))]
        },
    );
    let px = SimplicialMap::tabulate(&p, x, |n, k| pairs[n][k].0);
    let py = SimplicialMap::tabulate(&p, y, |n, k| pairs[n][k].1);
    Ok((p, px, py))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::{boundary, point, standard_simplex};

    #[test]
    fn product_of_intervals() {
        let d1 = standard_simplex(1, 3);
        let p = product(&d1, &d1).unwrap();
        assert_eq!(p.len(1), 9);
        assert_eq!(p.nondegenerate(1).len(), 5);
        assert_eq!(p.nondegenerate(2).len(), 2);
        p.audit().unwrap();
    }

    #[test]
    fn glue_endpoints_gives_circle_levels() {
        let d1 = standard_simplex(1, 3);
        let tags = vec!["i".to_string()];
        let g = glue(&tags, &[d1.clone()], 3, |n, u| {
            if n == 0 {
                u((0, 0), (0, 1));
            }
            if n > 0 {
                let zeros = "0".repeat(n + 1);
                let ones = "1".repeat(n + 1);
                u(
                    (0, d1.index_of(n, &zeros).unwrap()),
                    (0, d1.index_of(n, &ones).unwrap()),
                );
            }
        })
        .unwrap();
        assert_eq!(g.sset.nondegenerate_counts(), vec![1, 1, 0, 0]);
        g.sset.audit().unwrap();
        assert_eq!(g.sset.label(0, 0), "i:0");
    }

    #[test]
    fn pullback_of_boundary_inclusions() {
        let b = boundary(1, 2);
        let to_pt = SimplicialMap::tabulate(&b, &point(2), |_, _| 0);
        let (p, _, _) = pullback(&to_pt, &to_pt).unwrap();
        assert_eq!(p.level_sizes(), vec![4, 4, 4]);
    }
}
