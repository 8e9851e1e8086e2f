//! Nerves of finite categories and categories of simplices.
//!
//! An `n`-simplex of the nerve is a composable string `a_0 -> ... -> a_n`;
//! `d_0` drops `a_0`, inner faces compose, `d_n` drops `a_n`, and `s_i`
//! inserts the identity of `a_i`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor, MorId, Morphism, ObjId};
use crate::simpset::{monotone_maps, tabulate, SimplicialMap, TruncSSet};

/// A nerve together with the composable string behind each simplex.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub sset: TruncSSet,
    pub cat: FinCat,
    starts: Vec<Vec<ObjId>>,
    strings: Vec<Vec<Vec<MorId>>>,
    index: Vec<HashMap<(ObjId, Vec<MorId>), usize>>,
}

impl Nerve {
    pub fn new(cat: &FinCat, cap: usize) -> Nerve {
        let mut starts = vec![cat.objects().collect::<Vec<_>>()];
        let mut strings: Vec<Vec<Vec<MorId>>> = vec![vec![Vec::new(); cat.num_objects()]];
        for n in 1..=cap {
            let (mut st, mut ss) = (Vec::new(), Vec::new());
            for (a, s) in starts[n - 1].iter().zip(&strings[n - 1]) {
                let end = s.last().map_or(*a, |&f| cat.target(f));
                for &g in cat.outgoing(end) {
                    let mut t = s.clone();
                    t.push(g);
                    st.push(*a);
                    ss.push(t);
                }
            }
            starts.push(st);
            strings.push(ss);
        }
        let index: Vec<HashMap<(ObjId, Vec<MorId>), usize>> = starts
            .iter()
            .zip(&strings)
            .map(|(st, ss)| {
                st.iter()
                    .zip(ss)
                    .enumerate()
                    .map(|(i, (a, s))| ((*a, s.clone()), i))
                    .collect()
            })
            .collect();
        let labels = (0..=cap)
            .map(|n| {
                (0..strings[n].len())
                    .map(|x| string_label(cat, starts[n][x], &strings[n][x]))
                    .collect()
            })
            .collect();
        let sset = tabulate(
            cap,
            labels,
            |n, i, x| {
                let (a, s) = (starts[n][x], &strings[n][x]);
                let (b, t) = face_of_string(cat, a, s, i);
                index[n - 1][&(b, t)]
            },
            |n, i, x| {
                let (a, s) = (starts[n][x], &strings[n][x]);
                let (b, t) = degen_of_string(cat, a, s, i);
                index[n + 1][&(b, t)]
            },
        );
        Nerve {
            sset,
            cat: cat.clone(),
            starts,
            strings,
            index,
        }
    }

    pub fn cap(&self) -> usize {
        self.sset.cap()
    }

    /// The morphisms `f_1, ..., f_n` of simplex `x` at level `n`.
    pub fn string(&self, n: usize, x: usize) -> &[MorId] {
        &self.strings[n][x]
    }

    /// Object `a_i` of simplex `x`.
    pub fn vertex(&self, n: usize, x: usize, i: usize) -> ObjId {
        let s = &self.strings[n][x];
        if i == 0 {
            self.starts[n][x]
        } else {
            self.cat.target(s[i - 1])
        }
    }

    pub fn first(&self, n: usize, x: usize) -> ObjId {
        self.vertex(n, x, 0)
    }

    pub fn last(&self, n: usize, x: usize) -> ObjId {
        self.vertex(n, x, n)
    }

    /// Composite arrow `a_i -> a_j` along simplex `x`, `i <= j`.
    pub fn arrow(&self, n: usize, x: usize, i: usize, j: usize) -> MorId {
        self.cat
            .compose_path(self.vertex(n, x, i), &self.strings[n][x][i..j])
    }

    pub fn find(&self, start: ObjId, string: &[MorId]) -> Option<usize> {
        self.index[string.len()]
            .get(&(start, string.to_vec()))
            .copied()
    }
}

pub(crate) fn string_label(cat: &FinCat, start: ObjId, s: &[MorId]) -> String {
    if s.is_empty() {
        cat.object_name(start).to_string()
    } else {
        s.iter()
            .map(|&f| cat.morphism_name(f))
            .collect::<Vec<_>>()
            .join("|")
    }
}

fn face_of_string(cat: &FinCat, a: ObjId, s: &[MorId], i: usize) -> (ObjId, Vec<MorId>) {
    let n = s.len();
    if i == 0 {
        (cat.target(s[0]), s[1..].to_vec())
    } else if i == n {
        (a, s[..n - 1].to_vec())
    } else {
        let mut t = s[..i - 1].to_vec();
        t.push(cat.compose(s[i], s[i - 1]).unwrap());
        t.extend_from_slice(&s[i + 1..]);
        (a, t)
    }
}

fn degen_of_string(cat: &FinCat, a: ObjId, s: &[MorId], i: usize) -> (ObjId, Vec<MorId>) {
    let at = if i == 0 { a } else { cat.target(s[i - 1]) };
    let mut t = s.to_vec();
    t.insert(i, cat.identity(at));
    (a, t)
}

pub fn nerve(cat: &FinCat, cap: usize) -> TruncSSet {
    Nerve::new(cat, cap).sset
}

/// Nerve of a functor between the given nerves.
pub fn nerve_map(f: &FinFunctor, src: &Nerve, tgt: &Nerve) -> SimplicialMap {
    SimplicialMap::tabulate(&src.sset, &tgt.sset, |n, x| {
        let s: Vec<MorId> = src.string(n, x).iter().map(|&m| f.mor(m)).collect();
        tgt.find(f.obj(src.first(n, x)), &s)
            .expect("image string exists")
    })
}

/// Degree function and direct/inverse classes of a Reedy category.
#[derive(Clone, Debug)]
pub struct ReedyStructure {
    pub degree: Vec<usize>,
    /// Raises degree (or is an identity).
    pub direct: Vec<bool>,
    /// Lowers degree (or is an identity).
    pub inverse: Vec<bool>,
}

impl ReedyStructure {
    pub fn opposite(&self) -> ReedyStructure {
        ReedyStructure {
            degree: self.degree.clone(),
            direct: self.inverse.clone(),
            inverse: self.direct.clone(),
        }
    }
}

/// The category of simplices of a truncated simplicial set: objects are
/// simplices `(n, x)`, and a morphism `theta^* x -> x` is a monotone
/// `theta: [m] -> [n]`. With `op` the opposite category is returned, with
/// the same ids.
#[derive(Clone, Debug)]
pub struct SimplexCategory {
    pub cat: FinCat,
    pub op: bool,
    pub base: TruncSSet,
    /// `(level, index)` of each object.
    pub simplices: Vec<(usize, usize)>,
    /// `theta` of each morphism.
    pub operators: Vec<Vec<usize>>,
    object_of: Vec<Vec<ObjId>>,
    pub reedy: ReedyStructure,
}

impl SimplexCategory {
    pub fn object(&self, n: usize, x: usize) -> ObjId {
        self.object_of[n][x]
    }

    pub fn dim(&self, o: ObjId) -> usize {
        self.simplices[o.0].0
    }

    /// The simplex the morphism lands in (its target in the unopposed
    /// category).
    pub fn carrier(&self, m: MorId) -> ObjId {
        if self.op {
            self.cat.source(m)
        } else {
            self.cat.target(m)
        }
    }
}

/// `Delta K` (or `Delta^op K`) with objects of dimension at most the cap.
pub fn category_of_simplices(k: &TruncSSet, op: bool) -> SimplexCategory {
    let cap = k.cap();
    let mut objects = Vec::new();
    let mut simplices = Vec::new();
    let mut object_of = Vec::new();
    for n in 0..=cap {
        let mut row = Vec::new();
        for x in 0..k.len(n) {
            row.push(ObjId(objects.len()));
            objects.push(format!("{n}:{}", k.label(n, x)));
            simplices.push((n, x));
        }
        object_of.push(row);
    }
    let maps: Vec<Vec<Vec<Vec<usize>>>> = (0..=cap)
        .map(|n| (0..=cap).map(|m| monotone_maps(n, m)).collect())
        .collect();
    let mut mors = Vec::new();
    let mut operators = Vec::new();
    let mut index: HashMap<(ObjId, Vec<usize>), MorId> = HashMap::new();
    let mut identities = vec![MorId(0); objects.len()];
    for (o, &(n, x)) in simplices.iter().enumerate() {
        for m in 0..=cap {
            for theta in &maps[n][m] {
                let y = k.apply_operator(n, x, theta);
                let src = object_of[m][y];
                let id = MorId(mors.len());
                if m == n && theta.iter().enumerate().all(|(i, &t)| i == t) {
                    identities[o] = id;
                }
                let digits: Vec<String> = theta.iter().map(|t| t.to_string()).collect();
                mors.push(Morphism {
                    name: format!("{}>{}", digits.join("."), objects[o]),
                    source: src,
                    target: ObjId(o),
                });
                index.insert((ObjId(o), theta.clone()), id);
                operators.push(theta.clone());
            }
        }
    }
    let degree: Vec<usize> = simplices.iter().map(|s| s.0).collect();
    let direct: Vec<bool> = operators
        .iter()
        .map(|t| t.windows(2).all(|w| w[0] < w[1]))
        .collect();
    let inverse: Vec<bool> = mors
        .iter()
        .zip(&operators)
        .map(|(mo, t)| {
            t[0] == 0
                && t.windows(2).all(|w| w[1] <= w[0] + 1)
                && *t.last().unwrap() == degree[mo.target.0]
        })
        .collect();
    let ops = operators.clone();
    let targets: Vec<ObjId> = mors.iter().map(|m| m.target).collect();
    let cat = FinCat::from_rule(
        objects,
        mors,
        identities,
        Arc::new(move |g: MorId, f: MorId| {
            let (tg, tf) = (&ops[g.0], &ops[f.0]);
            let comp: Vec<usize> = tf.iter().map(|&i| tg[i]).collect();
            index[&(targets[g.0], comp)]
        }),
    );
    let reedy = ReedyStructure {
        degree,
        direct,
        inverse,
    };
    if op {
        SimplexCategory {
            cat: cat.opposite(),
            op,
            base: k.clone(),
            simplices,
            operators,
            object_of,
            reedy: reedy.opposite(),
        }
    } else {
        SimplexCategory {
            cat,
            op,
            base: k.clone(),
            simplices,
            operators,
            object_of,
            reedy,
        }
    }
}

/// `T: Delta D -> D`, sending a simplex to its last vertex.
pub fn last_vertex_functor(sc: &SimplexCategory, nerve: &Nerve) -> Result<FinFunctor> {
    if sc.op {
        return Err(Error::ShapeMismatch(
            "last-vertex functor lives on the unopposed category".into(),
        ));
    }
    let objects: Vec<ObjId> = sc
        .simplices
        .iter()
        .map(|&(n, x)| nerve.last(n, x))
        .collect();
    let morphisms = sc
        .cat
        .morphisms()
        .map(|m| {
            let (n, x) = sc.simplices[sc.cat.target(m).0];
            let theta = &sc.operators[m.0];
            nerve.arrow(n, x, *theta.last().unwrap(), n)
        })
        .collect();
    Ok(FinFunctor::new_unchecked(
        sc.cat.clone(),
        nerve.cat.clone(),
        objects,
        morphisms,
    ))
}

/// `S: Delta^op D -> D`, sending a simplex to its first vertex.
pub fn first_vertex_functor(sc: &SimplexCategory, nerve: &Nerve) -> Result<FinFunctor> {
    if !sc.op {
        return Err(Error::ShapeMismatch(
            "first-vertex functor lives on the opposite category".into(),
        ));
    }
    let objects: Vec<ObjId> = sc
        .simplices
        .iter()
        .map(|&(n, x)| nerve.first(n, x))
        .collect();
    let morphisms = sc
        .cat
        .morphisms()
        .map(|m| {
            let (n, x) = sc.simplices[sc.carrier(m).0];
            nerve.arrow(n, x, 0, sc.operators[m.0][0])
        })
        .collect();
    Ok(FinFunctor::new_unchecked(
        sc.cat.clone(),
        nerve.cat.clone(),
        objects,
        morphisms,
    ))
}

/// Forgetful `Sigma: Delta^op D -> Delta^op_{<= cap}`, sending a simplex to
/// its dimension.
pub fn dimension_functor(sc: &SimplexCategory, delta: &SimplexCategory) -> FinFunctor {
    let objects: Vec<ObjId> = sc
        .simplices
        .iter()
        .map(|&(n, _)| delta.object(n, 0))
        .collect();
    let lookup: HashMap<(ObjId, &Vec<usize>), MorId> = delta
        .cat
        .morphisms()
        .map(|m| ((delta.carrier(m), &delta.operators[m.0]), m))
        .collect();
    let morphisms = sc
        .cat
        .morphisms()
        .map(|m| lookup[&(objects[sc.carrier(m).0], &sc.operators[m.0])])
        .collect();
    FinFunctor::new_unchecked(sc.cat.clone(), delta.cat.clone(), objects, morphisms)
}

/// The truncated simplex category `Delta_{<= cap}` (or its opposite), as
/// the category of simplices of a point.
pub fn simplex_category(cap: usize, op: bool) -> SimplexCategory {
    category_of_simplices(&crate::simpset::point(cap), op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::{is_isomorphic, standard_simplex};

    #[test]
    fn nerve_of_z2_counts() {
        assert_eq!(
            nerve(&FinCat::cyclic_group(2), 3).level_sizes(),
            vec![1, 2, 4, 8]
        );
    }

    #[test]
    fn nerve_of_ordinal_is_simplex() {
        for n in 0..3 {
            let a = nerve(&FinCat::linear(n), 3);
            assert!(is_isomorphic(&a, &standard_simplex(n, 3)).is_some());
        }
    }

    #[test]
    fn nerve_of_opposite_arrow() {
        let a = FinCat::linear(1);
        assert!(is_isomorphic(&nerve(&a, 3), &nerve(&a.opposite(), 3)).is_some());
    }

    #[test]
    fn simplex_category_sizes() {
        let sc = category_of_simplices(&standard_simplex(0, 2), false);
        assert_eq!(sc.cat.num_objects(), 3);
        sc.cat.audit().unwrap();
        let arrow = category_of_simplices(&nerve(&FinCat::linear(1), 1), false);
        assert_eq!(arrow.cat.num_objects(), 5);
        arrow.cat.audit().unwrap();
    }

    #[test]
    fn vertex_functors_are_functors() {
        let span = FinCat::span();
        let nv = Nerve::new(&span, 2);
        let sc = category_of_simplices(&nv.sset, false);
        let t = last_vertex_functor(&sc, &nv).unwrap();
        assert!(t.violations().is_empty());
        let sco = category_of_simplices(&nv.sset, true);
        let s = first_vertex_functor(&sco, &nv).unwrap();
        assert!(s.violations().is_empty());
        let delta = simplex_category(2, true);
        assert!(dimension_functor(&sco, &delta).violations().is_empty());
    }

    #[test]
    fn reedy_classes_factor() {
        let sc = category_of_simplices(&nerve(&FinCat::cyclic_group(2), 2), false);
        for m in sc.cat.morphisms() {
            let t = &sc.operators[m.0];
            let id = sc.cat.is_identity(m);
            assert_eq!(sc.reedy.direct[m.0] && sc.reedy.inverse[m.0], id, "{t:?}");
        }
    }
}
