//! Diagrams of truncated simplicial sets over finite categories and over
//! simplicially enriched categories, with weighted (co)limits and Kan
//! extensions.
//!
//! A weight for a shape `D` is stored as a diagram over `D.opposite()`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fincat::{Comma, FinCat, FinFunctor, MorId, ObjId};
use crate::simpset::{
    discrete, glue, mapping_space, pair_index, point, product, product_map, tabulate, Glued,
    MappingSpace, SimplicialMap, TruncSSet,
};

#[derive(Clone, Debug)]
pub struct Diagram {
    shape: FinCat,
    cap: usize,
    values: Vec<TruncSSet>,
    maps: Vec<SimplicialMap>,
}

impl Diagram {
    pub fn new(shape: FinCat, values: Vec<TruncSSet>, maps: Vec<SimplicialMap>) -> Result<Diagram> {
        let d = Diagram::new_unchecked(shape, values, maps)?;
        if let Some(v) = d.violations().into_iter().next() {
            return Err(Error::NotFunctorial(v));
        }
        Ok(d)
    }

    /// Checks sizes and caps only.
    pub(crate) fn new_unchecked(
        shape: FinCat,
        values: Vec<TruncSSet>,
        maps: Vec<SimplicialMap>,
    ) -> Result<Diagram> {
        let cap = values.first().map_or(0, |v| v.cap());
        Diagram::assemble(shape, cap, values, maps)
    }

    pub(crate) fn assemble(
        shape: FinCat,
        cap: usize,
        values: Vec<TruncSSet>,
        maps: Vec<SimplicialMap>,
    ) -> Result<Diagram> {
        if values.len() != shape.num_objects() || maps.len() != shape.num_morphisms() {
            return Err(Error::ShapeMismatch(
                "diagram size does not match its shape".into(),
            ));
        }
        for v in &values {
            if v.cap() != cap {
                return Err(Error::CapMismatch(cap, v.cap()));
            }
        }
        Ok(Diagram {
            shape,
            cap,
            values,
            maps,
        })
    }

    pub fn from_fn(
        shape: &FinCat,
        value: impl Fn(ObjId) -> TruncSSet,
        map: impl Fn(MorId, &TruncSSet, &TruncSSet) -> SimplicialMap,
    ) -> Result<Diagram> {
        let values: Vec<TruncSSet> = shape.objects().map(&value).collect();
        let maps = shape
            .morphisms()
            .map(|m| map(m, &values[shape.source(m).0], &values[shape.target(m).0]))
            .collect();
        Diagram::new_unchecked(shape.clone(), values, maps)
    }

    pub fn constant(shape: &FinCat, x: &TruncSSet) -> Diagram {
        let values = vec![x.clone(); shape.num_objects()];
        let maps = vec![SimplicialMap::identity(x); shape.num_morphisms()];
        Diagram::assemble(shape.clone(), x.cap(), values, maps).unwrap()
    }

    pub fn terminal(shape: &FinCat, cap: usize) -> Diagram {
        Diagram::constant(shape, &point(cap))
    }

    /// `D(d, -)` with discrete values.
    pub fn representable(shape: &FinCat, d: ObjId, cap: usize) -> Diagram {
        let names = |e: ObjId| {
            shape
                .hom(d, e)
                .iter()
                .map(|&m| shape.morphism_name(m))
                .collect::<Vec<_>>()
        };
        Diagram::from_fn(
            shape,
            |e| discrete(&names(e), cap).unwrap(),
            |f, a, b| {
                let (e, e2) = (shape.source(f), shape.target(f));
                let hom2 = shape.hom(d, e2);
                let pos = |m: MorId| hom2.iter().position(|&x| x == m).unwrap();
                let img: Vec<usize> = shape
                    .hom(d, e)
                    .iter()
                    .map(|&g| pos(shape.compose(f, g).unwrap()))
                    .collect();
                SimplicialMap::tabulate(a, b, |_, x| img[x])
            },
        )
        .unwrap()
    }

    /// The weight `D(-, d)`, a diagram over `D^op`.
    pub fn hom_weight(shape: &FinCat, d: ObjId, cap: usize) -> Diagram {
        let op = shape.opposite();
        let names = |e: ObjId| {
            shape
                .hom(e, d)
                .iter()
                .map(|&m| shape.morphism_name(m))
                .collect::<Vec<_>>()
        };
        Diagram::from_fn(
            &op,
            |e| discrete(&names(e), cap).unwrap(),
            |f, a, b| {
                // f: e -> e2 in D acts by precomposition hom(e2, d) -> hom(e, d)
                let (e, e2) = (shape.source(f), shape.target(f));
                let hom1 = shape.hom(e, d);
                let pos = |m: MorId| hom1.iter().position(|&x| x == m).unwrap();
                let img: Vec<usize> = shape
                    .hom(e2, d)
                    .iter()
                    .map(|&h| pos(shape.compose(h, f).unwrap()))
                    .collect();
                SimplicialMap::tabulate(a, b, |_, x| img[x])
            },
        )
        .unwrap()
    }

    pub fn shape(&self) -> &FinCat {
        &self.shape
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn value(&self, o: ObjId) -> &TruncSSet {
        &self.values[o.0]
    }

    pub fn values(&self) -> &[TruncSSet] {
        &self.values
    }

    pub fn map(&self, m: MorId) -> &SimplicialMap {
        &self.maps[m.0]
    }

    pub fn maps(&self) -> &[SimplicialMap] {
        &self.maps
    }

    /// Functoriality equations that fail.
    pub fn violations(&self) -> Vec<String> {
        let c = &self.shape;
        let mut out = Vec::new();
        for m in c.morphisms() {
            let f = &self.maps[m.0];
            if !f.source().same(&self.values[c.source(m).0])
                || !f.target().same(&self.values[c.target(m).0])
            {
                out.push(format!(
                    "map of `{}` has the wrong endpoints",
                    c.morphism_name(m)
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for o in c.objects() {
            let id = &self.maps[c.identity(o).0];
            if !id.same_tables(&SimplicialMap::identity(&self.values[o.0])) {
                out.push(format!(
                    "identity of `{}` is not sent to an identity",
                    c.object_name(o)
                ));
            }
        }
        for (g, f) in c.composable_pairs() {
            let gf = c.compose(g, f).unwrap();
            if !self.maps[gf.0].same_tables(&self.maps[g.0].after(&self.maps[f.0])) {
                out.push(format!(
                    "F({}) F({}) != F({})",
                    c.morphism_name(g),
                    c.morphism_name(f),
                    c.morphism_name(gf)
                ));
            }
        }
        out
    }

    /// `K^* F` for `K: C -> shape`.
    pub fn restrict(&self, k: &FinFunctor) -> Result<Diagram> {
        if !k.target().table_eq(&self.shape) {
            return Err(Error::ShapeMismatch(
                "functor does not land in the diagram shape".into(),
            ));
        }
        let values = k
            .source()
            .objects()
            .map(|o| self.values[k.obj(o).0].clone())
            .collect();
        let maps = k
            .source()
            .morphisms()
            .map(|m| self.maps[k.mor(m).0].clone())
            .collect();
        Diagram::assemble(k.source().clone(), self.cap, values, maps)
    }

    /// Same values and maps, read over the opposite shape of a weight's
    /// shape. Only the shape tables change.
    pub fn reshape(&self, shape: &FinCat) -> Result<Diagram> {
        if !shape.same_signature(&self.shape) {
            return Err(Error::ShapeMismatch(
                "reshape needs the same objects and morphisms".into(),
            ));
        }
        Diagram::new(shape.clone(), self.values.clone(), self.maps.clone())
    }

    pub fn truncate(&self, cap: usize) -> Result<Diagram> {
        let values = self
            .values
            .iter()
            .map(|v| v.truncate(cap))
            .collect::<Result<Vec<_>>>()?;
        let maps = self
            .maps
            .iter()
            .map(|m| m.truncate(cap))
            .collect::<Result<Vec<_>>>()?;
        Diagram::assemble(self.shape.clone(), cap, values, maps)
    }

    /// Objectwise `K x F`.
    pub fn tensor_sset(&self, k: &TruncSSet) -> Result<Diagram> {
        let id = SimplicialMap::identity(k);
        let values = self
            .values
            .iter()
            .map(|v| product(k, v))
            .collect::<Result<Vec<_>>>()?;
        let maps = self
            .maps
            .iter()
            .map(|m| product_map(&id, m))
            .collect::<Result<Vec<_>>>()?;
        Diagram::assemble(self.shape.clone(), self.cap, values, maps)
    }

    /// Objectwise disjoint union.
    pub fn coproduct(&self, other: &Diagram) -> Result<Diagram> {
        if !self.shape.table_eq(&other.shape) {
            return Err(Error::ShapeMismatch(
                "coproduct of diagrams over different shapes".into(),
            ));
        }
        let tags = ["0".to_string(), "1".to_string()];
        let sums: Vec<Glued> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| crate::simpset::coproduct(&tags, &[a.clone(), b.clone()], self.cap()))
            .collect::<Result<_>>()?;
        let values: Vec<TruncSSet> = sums.iter().map(|g| g.sset.clone()).collect();
        let maps = self
            .shape
            .morphisms()
            .map(|m| {
                let (s, t) = (&sums[self.shape.source(m).0], &sums[self.shape.target(m).0]);
                SimplicialMap::tabulate(&s.sset, &t.sset, |n, c| {
                    let (k, x) = s.rep(n, c);
                    let f = if k == 0 {
                        &self.maps[m.0]
                    } else {
                        &other.maps[m.0]
                    };
                    t.class(k, n, f.apply(n, x))
                })
            })
            .collect();
        Diagram::assemble(self.shape.clone(), self.cap, values, maps)
    }
}

/// A natural transformation between diagrams over one shape.
#[derive(Clone, Debug)]
pub struct NatTransf {
    pub source: Diagram,
    pub target: Diagram,
    pub components: Vec<SimplicialMap>,
}

impl NatTransf {
    pub fn new(
        source: Diagram,
        target: Diagram,
        components: Vec<SimplicialMap>,
    ) -> Result<NatTransf> {
        let t = NatTransf {
            source,
            target,
            components,
        };
        if let Some(v) = t.violations().into_iter().next() {
            return Err(Error::NotNatural(v));
        }
        Ok(t)
    }

    pub fn identity(f: &Diagram) -> NatTransf {
        NatTransf {
            source: f.clone(),
            target: f.clone(),
            components: f.values.iter().map(SimplicialMap::identity).collect(),
        }
    }

    pub fn component(&self, o: ObjId) -> &SimplicialMap {
        &self.components[o.0]
    }

    pub fn violations(&self) -> Vec<String> {
        let c = self.source.shape();
        if !c.table_eq(self.target.shape()) || self.components.len() != c.num_objects() {
            return vec!["source and target shapes differ".into()];
        }
        c.morphisms()
            .filter(|&m| {
                let lhs = self.target.map(m).after(&self.components[c.source(m).0]);
                let rhs = self.components[c.target(m).0].after(self.source.map(m));
                !lhs.same_tables(&rhs)
            })
            .map(|m| format!("square at `{}` does not commute", c.morphism_name(m)))
            .collect()
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(|c| c.is_iso())
    }

    pub fn then(&self, other: &NatTransf) -> NatTransf {
        NatTransf {
            source: self.source.clone(),
            target: other.target.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(f, g)| g.after(f))
                .collect(),
        }
    }
}

/// A predicate tying two coordinates of a family.
pub(crate) struct Link<'a> {
    pub a: usize,
    pub b: usize,
    pub ok: Box<dyn Fn(usize, usize, usize) -> bool + 'a>,
}

/// The simplicial subset of `prod comps` of families satisfying every link,
/// with labels `<x_0,...,x_k>`. Faces and degeneracies act coordinatewise;
/// links must be preserved by them.
#[derive(Clone, Debug)]
pub struct Families {
    pub sset: TruncSSet,
    pub families: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Families {
    pub fn find(&self, n: usize, family: &[usize]) -> Option<usize> {
        self.index[n].get(family).copied()
    }

    pub fn family(&self, n: usize, x: usize) -> &[usize] {
        &self.families[n][x]
    }

    /// Projection to coordinate `j`.
    pub fn projection(&self, j: usize, comp: &TruncSSet) -> SimplicialMap {
        SimplicialMap::tabulate(&self.sset, comp, |n, x| self.families[n][x][j])
    }
}

pub(crate) fn compatible_families(cap: usize, comps: &[TruncSSet], links: &[Link]) -> Families {
    let k = comps.len();
    let mut by_last: Vec<Vec<&Link>> = vec![Vec::new(); k];
    for l in links {
        by_last[l.a.max(l.b)].push(l);
    }
    let mut families = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        let mut out = Vec::new();
        let mut cur = vec![0; k];
        fn go(
            j: usize,
            n: usize,
            comps: &[TruncSSet],
            by_last: &[Vec<&Link>],
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if j == comps.len() {
                out.push(cur.clone());
                return;
            }
            for x in 0..comps[j].len(n) {
                cur[j] = x;
                if by_last[j].iter().all(|l| (l.ok)(n, cur[l.a], cur[l.b])) {
                    go(j + 1, n, comps, by_last, cur, out);
                }
            }
        }
        go(0, n, comps, &by_last, &mut cur, &mut out);
        families.push(out);
    }
    let index: Vec<HashMap<Vec<usize>, usize>> = families
        .iter()
        .map(|l: &Vec<Vec<usize>>| l.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect())
        .collect();
    let labels = families
        .iter()
        .enumerate()
        .map(|(n, l)| {
            l.iter()
                .map(|f| {
                    let parts: Vec<&str> = f
                        .iter()
                        .enumerate()
                        .map(|(j, &x)| comps[j].label(n, x))
                        .collect();
                    format!("<{}>", parts.join(","))
                })
                .collect()
        })
        .collect();
    let sset = tabulate(
        cap,
        labels,
        |n, i, x| {
            let f: Vec<usize> = families[n][x]
                .iter()
                .enumerate()
                .map(|(j, &y)| comps[j].face(n, i, y))
                .collect();
            index[n - 1][&f]
        },
        |n, i, x| {
            let f: Vec<usize> = families[n][x]
                .iter()
                .enumerate()
                .map(|(j, &y)| comps[j].degen(n, i, y))
                .collect();
            index[n + 1][&f]
        },
    );
    Families {
        sset,
        families,
        index,
    }
}

/// Colimit: coproduct of the values glued along every morphism.
pub fn colimit(f: &Diagram) -> Result<Glued> {
    let c = f.shape();
    let tags: Vec<String> = c.object_names().to_vec();
    glue(&tags, f.values(), f.cap(), |n, union| {
        for m in c.morphisms() {
            if c.is_identity(m) {
                continue;
            }
            let (s, t) = (c.source(m).0, c.target(m).0);
            for x in 0..f.values[s].len(n) {
                union((s, x), (t, f.maps[m.0].apply(n, x)));
            }
        }
    })
}

/// Limit: compatible families, one coordinate per object.
pub fn limit(f: &Diagram) -> Families {
    let c = f.shape();
    let links: Vec<Link> = c
        .morphisms()
        .filter(|&m| !c.is_identity(m))
        .map(|m| {
            let map = &f.maps[m.0];
            Link {
                a: c.source(m).0,
                b: c.target(m).0,
                ok: Box::new(move |n, x, y| map.apply(n, x) == y),
            }
        })
        .collect();
    compatible_families(f.cap(), f.values(), &links)
}

pub(crate) fn check_weight(g: &Diagram, f: &Diagram) -> Result<()> {
    if !g.shape().is_opposite_of(f.shape()) {
        return Err(Error::ShapeMismatch(
            "weight must live on the opposite shape".into(),
        ));
    }
    if g.cap() != f.cap() {
        return Err(Error::CapMismatch(g.cap(), f.cap()));
    }
    Ok(())
}

/// `G (.)_D F`, the coequalizer of the two actions on `sum_d G(d) x F(d)`.
/// Summand `d` is tagged by the object name; elements are pairs `(y,x)`.
pub fn tensor_product(g: &Diagram, f: &Diagram) -> Result<Glued> {
    check_weight(g, f)?;
    let c = f.shape();
    let summands: Vec<TruncSSet> = c
        .objects()
        .map(|d| product(g.value(d), f.value(d)))
        .collect::<Result<_>>()?;
    let tags: Vec<String> = c.object_names().to_vec();
    glue(&tags, &summands, f.cap(), |n, union| {
        for m in c.morphisms() {
            if c.is_identity(m) {
                continue;
            }
            let (d, d2) = (c.source(m), c.target(m));
            let (gd2, fd) = (g.value(d2), f.value(d));
            for y in 0..gd2.len(n) {
                let gy = g.map(m).apply(n, y);
                for x in 0..fd.len(n) {
                    let fx = f.map(m).apply(n, x);
                    union(
                        (d.0, pair_index(fd, n, gy, x)),
                        (d2.0, pair_index(f.value(d2), n, y, fx)),
                    );
                }
            }
        }
    })
}

/// Natural families `F1(d) x Delta^n -> F2(d)`; also the cotensor
/// `<F1, F2>` when `F1` is read as the weight.
#[derive(Clone, Debug)]
pub struct Cotensor {
    pub sset: TruncSSet,
    pub families: Families,
    pub spaces: Vec<MappingSpace>,
    /// False when some mapping space is only approximate at this cap.
    pub exact: bool,
}

pub fn nat_transf_object(f1: &Diagram, f2: &Diagram, cap_out: usize) -> Result<Cotensor> {
    if !f1.shape().table_eq(f2.shape()) {
        return Err(Error::ShapeMismatch(
            "natural transformations need a common shape".into(),
        ));
    }
    let c = f1.shape();
    let spaces: Vec<MappingSpace> = c
        .objects()
        .map(|d| mapping_space(f1.value(d), f2.value(d), cap_out))
        .collect::<Result<_>>()?;
    let comps: Vec<TruncSSet> = spaces.iter().map(|s| s.sset.clone()).collect();
    let families = {
        let links: Vec<Link> = c
            .morphisms()
            .filter(|&m| !c.is_identity(m))
            .map(|m| {
                let (d, d2) = (c.source(m).0, c.target(m).0);
                let (sp, sp2) = (&spaces[d], &spaces[d2]);
                let (g1, g2) = (f1.map(m), f2.map(m));
                Link {
                    a: d,
                    b: d2,
                    ok: Box::new(move |n, x, y| {
                        let (phi, psi) = (&sp.maps[n][x], &sp2.maps[n][y]);
                        let dom = &sp.domains[n];
                        (0..=dom.cap()).all(|l| {
                            let per = dom.len(l) / g1.source().len(l).max(1);
                            (0..dom.len(l)).all(|i| {
                                let (a, u) = (i / per, i % per);
                                g2.apply(l, phi.apply(l, i))
                                    == psi.apply(l, g1.apply(l, a) * per + u)
                            })
                        })
                    }),
                }
            })
            .collect();
        compatible_families(cap_out, &comps, &links)
    };
    Ok(Cotensor {
        sset: families.sset.clone(),
        exact: spaces.iter().all(|s| s.exact),
        families,
        spaces,
    })
}

/// `<G, F>` for a weight `G` over `D` (the covariant convention of limits).
pub fn cotensor_product(g: &Diagram, f: &Diagram, cap_out: usize) -> Result<Cotensor> {
    nat_transf_object(g, f, cap_out)
}

/// Object index of `(a, b)` in `D^op x D`.
pub(crate) fn pair_obj(d: &FinCat, a: ObjId, b: ObjId) -> ObjId {
    ObjId(a.0 * d.num_objects() + b.0)
}

pub(crate) fn pair_mor(d: &FinCat, f: MorId, g: MorId) -> MorId {
    MorId(f.0 * d.num_morphisms() + g.0)
}

pub(crate) fn check_bifunctor(h: &Diagram, d: &FinCat) -> Result<()> {
    if !h.shape().table_eq(&d.opposite().product(d)) {
        return Err(Error::ShapeMismatch(
            "bifunctor must live on D^op x D".into(),
        ));
    }
    Ok(())
}

/// Coend of `H: D^op x D -> sSet`, glued on the diagonal summands.
pub fn coend(h: &Diagram, d: &FinCat) -> Result<Glued> {
    check_bifunctor(h, d)?;
    let summands: Vec<TruncSSet> = d
        .objects()
        .map(|a| h.value(pair_obj(d, a, a)).clone())
        .collect();
    let tags: Vec<String> = d.object_names().to_vec();
    glue(&tags, &summands, h.cap(), |n, union| {
        for m in d.morphisms() {
            if d.is_identity(m) {
                continue;
            }
            let (a, b) = (d.source(m), d.target(m));
            // y in H(b, a); H(m, 1) lands in H(a, a) and H(1, m) in H(b, b)
            let left = h.map(pair_mor(d, m, d.identity(a)));
            let right = h.map(pair_mor(d, d.identity(b), m));
            for y in 0..h.value(pair_obj(d, b, a)).len(n) {
                union((a.0, left.apply(n, y)), (b.0, right.apply(n, y)));
            }
        }
    })
}

/// End of `H: D^op x D -> sSet` as families on the diagonal.
pub fn end(h: &Diagram, d: &FinCat, cap_out: usize) -> Result<Families> {
    check_bifunctor(h, d)?;
    let comps: Vec<TruncSSet> = d
        .objects()
        .map(|a| h.value(pair_obj(d, a, a)).truncate(cap_out))
        .collect::<Result<_>>()?;
    let links: Vec<Link> = d
        .morphisms()
        .filter(|&m| !d.is_identity(m))
        .map(|m| {
            let (a, b) = (d.source(m), d.target(m));
            // x_a in H(a, a) and x_b in H(b, b) agree in H(a, b)
            let push = h.map(pair_mor(d, d.identity(a), m));
            let pull = h.map(pair_mor(d, m, d.identity(b)));
            Link {
                a: a.0,
                b: b.0,
                ok: Box::new(move |n, x, y| push.apply(n, x) == pull.apply(n, y)),
            }
        })
        .collect();
    Ok(compatible_families(cap_out, &comps, &links))
}

/// `H(a, b) = G(a) x F(b)` over `D^op x D`.
pub fn external_product(g: &Diagram, f: &Diagram) -> Result<Diagram> {
    check_weight(g, f)?;
    let d = f.shape();
    let shape = d.opposite().product(d);
    let n = d.num_objects();
    let nm = d.num_morphisms();
    Diagram::from_fn(
        &shape,
        |o| product(g.value(ObjId(o.0 / n)), f.value(ObjId(o.0 % n))).unwrap(),
        |m, _, _| product_map(g.map(MorId(m.0 / nm)), f.map(MorId(m.0 % nm))).unwrap(),
    )
}

/// The weight `W(a, b) = D(b, a)` over `(D^op x D)^op`, for which
/// `W (.) H` is the coend of `H`.
pub fn hom_bifunctor_weight(d: &FinCat, cap: usize) -> Diagram {
    let shape = d.opposite().product(d).opposite();
    let n = d.num_objects();
    let nm = d.num_morphisms();
    let names = |a: ObjId, b: ObjId| {
        d.hom(b, a)
            .iter()
            .map(|&m| d.morphism_name(m))
            .collect::<Vec<_>>()
    };
    Diagram::from_fn(
        &shape,
        |o| discrete(&names(ObjId(o.0 / n), ObjId(o.0 % n)), cap).unwrap(),
        |m, a, b| {
            // m = (f, g) sends h: b2 -> a2 to f h g
            let (f, g) = (MorId(m.0 / nm), MorId(m.0 % nm));
            let (src, tgt) = (shape.source(m), shape.target(m));
            let (sa, sb) = (ObjId(src.0 / n), ObjId(src.0 % n));
            let (ta, tb) = (ObjId(tgt.0 / n), ObjId(tgt.0 % n));
            let from = d.hom(sb, sa);
            let to = d.hom(tb, ta);
            let img: Vec<usize> = from
                .iter()
                .map(|&h| {
                    let k = d.compose(f, d.compose(h, g).unwrap()).unwrap();
                    to.iter().position(|&x| x == k).unwrap()
                })
                .collect();
            SimplicialMap::tabulate(a, b, |_, x| img[x])
        },
    )
    .unwrap()
}

/// Left or right Kan extension with its unit or counit.
#[derive(Clone, Debug)]
pub struct KanExtension {
    pub diagram: Diagram,
    pub commas: Vec<Comma>,
    /// `F -> K^* Lan F` for `lan`, `K^* Ran F -> F` for `ran`.
    pub unit: NatTransf,
}

/// `Lan_K F (e) = colim_{(K|e)} F proj`.
pub fn lan(k: &FinFunctor, f: &Diagram) -> Result<KanExtension> {
    if !k.source().table_eq(f.shape()) {
        return Err(Error::ShapeMismatch(
            "functor source is not the diagram shape".into(),
        ));
    }
    let e_cat = k.target();
    let commas: Vec<Comma> = e_cat.objects().map(|e| FinCat::comma_over(k, e)).collect();
    let colims: Vec<Glued> = commas
        .iter()
        .map(|c| colimit(&f.restrict(&c.proj)?))
        .collect::<Result<_>>()?;
    let lookup: Vec<HashMap<(ObjId, MorId), usize>> = commas
        .iter()
        .map(|c| {
            c.cat
                .objects()
                .map(|o| ((c.proj.obj(o), c.arrows[o.0]), o.0))
                .collect()
        })
        .collect();
    let values: Vec<TruncSSet> = colims.iter().map(|g| g.sset.clone()).collect();
    let maps = e_cat
        .morphisms()
        .map(|u| {
            let (e, e2) = (e_cat.source(u), e_cat.target(u));
            let (src, tgt) = (&colims[e.0], &colims[e2.0]);
            let c = &commas[e.0];
            SimplicialMap::tabulate(&src.sset, &tgt.sset, |n, x| {
                let (j, y) = src.rep(n, x);
                let o = ObjId(j);
                let j2 = lookup[e2.0][&(c.proj.obj(o), e_cat.compose(u, c.arrows[j]).unwrap())];
                tgt.class(j2, n, y)
            })
        })
        .collect();
    let diagram = Diagram::assemble(e_cat.clone(), f.cap(), values, maps)?;
    let back = diagram.restrict(k)?;
    let components = f
        .shape()
        .objects()
        .map(|c| {
            let ke = k.obj(c);
            let j = lookup[ke.0][&(c, e_cat.identity(ke))];
            SimplicialMap::tabulate(f.value(c), back.value(c), |n, x| {
                colims[ke.0].class(j, n, x)
            })
        })
        .collect();
    let unit = NatTransf {
        source: f.clone(),
        target: back,
        components,
    };
    Ok(KanExtension {
        diagram,
        commas,
        unit,
    })
}

/// `Ran_K F (e) = lim_{(e|K)} F proj`.
pub fn ran(k: &FinFunctor, f: &Diagram) -> Result<KanExtension> {
    if !k.source().table_eq(f.shape()) {
        return Err(Error::ShapeMismatch(
            "functor source is not the diagram shape".into(),
        ));
    }
    let e_cat = k.target();
    let commas: Vec<Comma> = e_cat.objects().map(|e| FinCat::comma_under(k, e)).collect();
    let lims: Vec<Families> = commas
        .iter()
        .map(|c| Ok(limit(&f.restrict(&c.proj)?)))
        .collect::<Result<_>>()?;
    let lookup: Vec<HashMap<(ObjId, MorId), usize>> = commas
        .iter()
        .map(|c| {
            c.cat
                .objects()
                .map(|o| ((c.proj.obj(o), c.arrows[o.0]), o.0))
                .collect()
        })
        .collect();
    let values: Vec<TruncSSet> = lims.iter().map(|l| l.sset.clone()).collect();
    let maps = e_cat
        .morphisms()
        .map(|u| {
            let (e, e2) = (e_cat.source(u), e_cat.target(u));
            let c2 = &commas[e2.0];
            SimplicialMap::tabulate(&lims[e.0].sset, &lims[e2.0].sset, |n, x| {
                let fam = lims[e.0].family(n, x);
                let out: Vec<usize> = c2
                    .cat
                    .objects()
                    .map(|o| {
                        let j = lookup[e.0]
                            [&(c2.proj.obj(o), e_cat.compose(c2.arrows[o.0], u).unwrap())];
                        fam[j]
                    })
                    .collect();
                lims[e2.0].find(n, &out).expect("family restricts")
            })
        })
        .collect();
    let diagram = Diagram::assemble(e_cat.clone(), f.cap(), values, maps)?;
    let back = diagram.restrict(k)?;
    let components = f
        .shape()
        .objects()
        .map(|c| {
            let ke = k.obj(c);
            let j = lookup[ke.0][&(c, e_cat.identity(ke))];
            SimplicialMap::tabulate(back.value(c), f.value(c), |n, x| lims[ke.0].family(n, x)[j])
        })
        .collect();
    let unit = NatTransf {
        source: back,
        target: f.clone(),
        components,
    };
    Ok(KanExtension {
        diagram,
        commas,
        unit,
    })
}

/// A category enriched in truncated simplicial sets.
#[derive(Clone, Debug)]
pub struct SSetCat {
    objects: Vec<String>,
    homs: Vec<Vec<TruncSSet>>,
    /// Identity vertex of `hom(a, a)`.
    units: Vec<usize>,
    /// `comp[a][b][c]: hom(b, c) x hom(a, b) -> hom(a, c)`.
    comp: Vec<Vec<Vec<SimplicialMap>>>,
    /// Set when every hom is discrete and came from this category.
    base: Option<FinCat>,
}

impl SSetCat {
    pub fn new(
        objects: Vec<String>,
        homs: Vec<Vec<TruncSSet>>,
        units: Vec<usize>,
        comp: Vec<Vec<Vec<SimplicialMap>>>,
    ) -> Result<SSetCat> {
        let k = objects.len();
        if homs.len() != k
            || homs.iter().any(|r| r.len() != k)
            || units.len() != k
            || comp.len() != k
        {
            return Err(Error::EnrichmentViolation(
                "tables do not match the object count".into(),
            ));
        }
        let c = SSetCat {
            objects,
            homs,
            units,
            comp,
            base: None,
        };
        c.audit()?;
        Ok(c)
    }

    /// Discrete enrichment of a finite category.
    pub fn discrete(cat: &FinCat, cap: usize) -> SSetCat {
        let k = cat.num_objects();
        let homs: Vec<Vec<TruncSSet>> = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        let names: Vec<&str> = cat
                            .hom(ObjId(a), ObjId(b))
                            .iter()
                            .map(|&m| cat.morphism_name(m))
                            .collect();
                        discrete(&names, cap).unwrap()
                    })
                    .collect()
            })
            .collect();
        let units = (0..k)
            .map(|a| {
                let id = cat.identity(ObjId(a));
                cat.hom(ObjId(a), ObjId(a))
                    .iter()
                    .position(|&m| m == id)
                    .unwrap()
            })
            .collect();
        let comp = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        (0..k)
                            .map(|c| {
                                let dom = product(&homs[b][c], &homs[a][b]).unwrap();
                                let (hab, hbc, hac) = (
                                    cat.hom(ObjId(a), ObjId(b)),
                                    cat.hom(ObjId(b), ObjId(c)),
                                    cat.hom(ObjId(a), ObjId(c)),
                                );
                                SimplicialMap::tabulate(&dom, &homs[a][c], |_, i| {
                                    let (g, f) = (hbc[i / hab.len()], hab[i % hab.len()]);
                                    let gf = cat.compose(g, f).unwrap();
                                    hac.iter().position(|&m| m == gf).unwrap()
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        SSetCat {
            objects: cat.object_names().to_vec(),
            homs,
            units,
            comp,
            base: Some(cat.clone()),
        }
    }

    /// Objects `0`, `1` with `hom(0, 1) = Delta^1`, points on the diagonal
    /// and `hom(1, 0)` empty.
    pub fn interval(cap: usize) -> SSetCat {
        let d1 = crate::simpset::standard_simplex(1, cap);
        let pt = point(cap);
        let none = crate::simpset::empty(cap);
        let homs = vec![vec![pt.clone(), d1.clone()], vec![none, pt]];
        let comp = (0..2)
            .map(|a| {
                (0..2)
                    .map(|b| {
                        (0..2)
                            .map(|c| {
                                let dom = product(&homs[b][c], &homs[a][b]).unwrap();
                                // one factor is a point, so the index is the other coordinate
                                SimplicialMap::tabulate(&dom, &homs[a][c], |_, i| if a < c { i } else { 0 })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        SSetCat::new(vec!["0".into(), "1".into()], homs, vec![0, 0], comp).unwrap()
    }

    /// One object whose endomorphisms are `Delta^1`, composed by the
    /// vertexwise minimum with unit the vertex `1`.
    pub fn min_monoid(cap: usize) -> SSetCat {
        let d1 = crate::simpset::standard_simplex(1, cap);
        let dom = product(&d1, &d1).unwrap();
        let comp = SimplicialMap::tabulate(&dom, &d1, |n, i| {
            let (x, y) = (d1.label(n, i / d1.len(n)), d1.label(n, i % d1.len(n)));
            let m: String = x.chars().zip(y.chars()).map(|(p, q)| p.min(q)).collect();
            d1.index_of(n, &m).unwrap()
        });
        SSetCat::new(vec!["*".into()], vec![vec![d1]], vec![1], vec![vec![vec![comp]]]).unwrap()
    }

    pub fn base(&self) -> Option<&FinCat> {
        self.base.as_ref()
    }

    pub fn cap(&self) -> usize {
        self.homs.first().map_or(0, |r| r[0].cap())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn object_name(&self, a: usize) -> &str {
        &self.objects[a]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn hom(&self, a: usize, b: usize) -> &TruncSSet {
        &self.homs[a][b]
    }

    /// The identity of `a` as an `n`-simplex.
    pub fn unit(&self, a: usize, n: usize) -> usize {
        let h = &self.homs[a][a];
        (0..n).fold(self.units[a], |x, l| h.degen(l, 0, x))
    }

    /// `g o f` at level `n` for `f in hom(a, b)`, `g in hom(b, c)`.
    pub fn compose(&self, a: usize, b: usize, c: usize, n: usize, g: usize, f: usize) -> usize {
        self.comp[a][b][c].apply(n, pair_index(&self.homs[a][b], n, g, f))
    }

    pub fn composition(&self, a: usize, b: usize, c: usize) -> &SimplicialMap {
        &self.comp[a][b][c]
    }

    pub fn audit(&self) -> Result<()> {
        let k = self.num_objects();
        let cap = self.cap();
        let bad = |m: String| Err(Error::EnrichmentViolation(m));
        for a in 0..k {
            for b in 0..k {
                if self.homs[a][b].cap() != cap {
                    return Err(Error::CapMismatch(cap, self.homs[a][b].cap()));
                }
            }
            if self.units[a] >= self.homs[a][a].len(0) {
                return bad(format!(
                    "unit of `{}` is not a vertex of its hom",
                    self.objects[a]
                ));
            }
        }
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let m = &self.comp[a][b][c];
                    if m.source().level_sizes()
                        != product(&self.homs[b][c], &self.homs[a][b])?.level_sizes()
                        || !m.target().same(&self.homs[a][c])
                    {
                        return bad(format!(
                            "composition {}->{}->{} has the wrong type",
                            self.objects[a], self.objects[b], self.objects[c]
                        ));
                    }
                }
            }
        }
        for n in 0..=cap {
            for a in 0..k {
                for b in 0..k {
                    for f in 0..self.homs[a][b].len(n) {
                        if self.compose(a, b, b, n, self.unit(b, n), f) != f
                            || self.compose(a, a, b, n, f, self.unit(a, n)) != f
                        {
                            return bad(format!(
                                "unit law fails at `{}`",
                                self.homs[a][b].label(n, f)
                            ));
                        }
                        for c in 0..k {
                            for g in 0..self.homs[b][c].len(n) {
                                let gf = self.compose(a, b, c, n, g, f);
                                for d in 0..k {
                                    for h in 0..self.homs[c][d].len(n) {
                                        let lhs = self.compose(a, c, d, n, h, gf);
                                        let rhs = self.compose(
                                            a,
                                            b,
                                            d,
                                            n,
                                            self.compose(b, c, d, n, h, g),
                                            f,
                                        );
                                        if lhs != rhs {
                                            return bad(format!(
                                                "associativity fails at level {n} on {}, {}, {}",
                                                self.homs[c][d].label(n, h),
                                                self.homs[b][c].label(n, g),
                                                self.homs[a][b].label(n, f)
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn opposite(&self) -> SSetCat {
        let k = self.num_objects();
        let homs: Vec<Vec<TruncSSet>> = (0..k)
            .map(|a| (0..k).map(|b| self.homs[b][a].clone()).collect())
            .collect();
        let comp = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        (0..k)
                            .map(|c| {
                                // op: hom(c, b) x hom(b, a) -> hom(c, a), swapping factors
                                let dom = product(&homs[b][c], &homs[a][b]).unwrap();
                                SimplicialMap::tabulate(&dom, &homs[a][c], |n, i| {
                                    let s = homs[a][b].len(n);
                                    self.compose(c, b, a, n, i % s, i / s)
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        SSetCat {
            objects: self.objects.clone(),
            homs,
            units: self.units.clone(),
            comp,
            base: self.base.as_ref().map(|c| c.opposite()),
        }
    }

    /// `self (x) other` with objects `(a,b)` indexed `a * |other| + b`.
    pub fn tensor(&self, other: &SSetCat) -> Result<SSetCat> {
        let (k, l) = (self.num_objects(), other.num_objects());
        let idx = |a: usize, b: usize| a * l + b;
        let mut objects = Vec::with_capacity(k * l);
        for a in 0..k {
            for b in 0..l {
                objects.push(format!("({},{})", self.objects[a], other.objects[b]));
            }
        }
        let mut homs = vec![vec![crate::simpset::empty(self.cap()); k * l]; k * l];
        for (a, a2) in (0..k).flat_map(|a| (0..k).map(move |a2| (a, a2))) {
            for (b, b2) in (0..l).flat_map(|b| (0..l).map(move |b2| (b, b2))) {
                homs[idx(a, b)][idx(a2, b2)] = product(&self.homs[a][a2], &other.homs[b][b2])?;
            }
        }
        let units = (0..k)
            .flat_map(|a| (0..l).map(move |b| (a, b)))
            .map(|(a, b)| pair_index(&other.homs[b][b], 0, self.units[a], other.units[b]))
            .collect();
        let mut comp = vec![vec![vec![SimplicialMap::identity(&homs[0][0]); k * l]; k * l]; k * l];
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (0..l).map(move |b| (a, b))).collect();
        for &(a, b) in &pairs {
            for &(a2, b2) in &pairs {
                for &(a3, b3) in &pairs {
                    let (x, y, z) = (idx(a, b), idx(a2, b2), idx(a3, b3));
                    let dom = product(&homs[y][z], &homs[x][y])?;
                    let (o2, o1) = (&other.homs[b2][b3], &other.homs[b][b2]);
                    let o3 = &other.homs[b][b3];
                    comp[x][y][z] = SimplicialMap::tabulate(&dom, &homs[x][z], |n, i| {
                        let s = homs[x][y].len(n);
                        let (g, f) = (i / s, i % s);
                        let (g1, g2) = (g / o2.len(n), g % o2.len(n));
                        let (f1, f2) = (f / o1.len(n), f % o1.len(n));
                        let h1 = self.compose(a, a2, a3, n, g1, f1);
                        let h2 = other.compose(b, b2, b3, n, g2, f2);
                        h1 * o3.len(n) + h2
                    });
                }
            }
        }
        let base = match (&self.base, &other.base) {
            (Some(c), Some(d)) => Some(c.product(d)),
            _ => None,
        };
        Ok(SSetCat {
            objects,
            homs,
            units,
            comp,
            base,
        })
    }

    /// Whether every hom is discrete.
    pub fn is_discrete(&self) -> bool {
        self.homs
            .iter()
            .flatten()
            .all(|h| h.nondegenerate_counts().iter().skip(1).all(|&c| c == 0))
    }
}

/// A covariant enriched diagram; contravariant ones live over the opposite.
#[derive(Clone, Debug)]
pub struct SDiagram {
    shape: SSetCat,
    values: Vec<TruncSSet>,
    /// `act[a][b]: hom(a, b) x F(a) -> F(b)`.
    act: Vec<Vec<SimplicialMap>>,
}

impl SDiagram {
    pub fn new(
        shape: SSetCat,
        values: Vec<TruncSSet>,
        act: Vec<Vec<SimplicialMap>>,
    ) -> Result<SDiagram> {
        let d = SDiagram { shape, values, act };
        d.audit()?;
        Ok(d)
    }

    pub fn shape(&self) -> &SSetCat {
        &self.shape
    }

    pub fn cap(&self) -> usize {
        self.shape.cap()
    }

    pub fn value(&self, a: usize) -> &TruncSSet {
        &self.values[a]
    }

    pub fn values(&self) -> &[TruncSSet] {
        &self.values
    }

    /// `h . x` at level `n`.
    pub fn act(&self, a: usize, b: usize, n: usize, h: usize, x: usize) -> usize {
        self.act[a][b].apply(n, pair_index(&self.values[a], n, h, x))
    }

    pub fn action(&self, a: usize, b: usize) -> &SimplicialMap {
        &self.act[a][b]
    }

    pub fn audit(&self) -> Result<()> {
        let s = &self.shape;
        let k = s.num_objects();
        let bad = |m: String| Err(Error::NotFunctorial(m));
        if self.values.len() != k || self.act.len() != k || self.act.iter().any(|r| r.len() != k) {
            return bad("enriched diagram size does not match its shape".into());
        }
        for a in 0..k {
            for b in 0..k {
                let m = &self.act[a][b];
                if !m.target().same(&self.values[b])
                    || m.source().level_sizes()
                        != product(s.hom(a, b), &self.values[a])?.level_sizes()
                {
                    return bad(format!(
                        "action {} -> {} has the wrong type",
                        s.object_name(a),
                        s.object_name(b)
                    ));
                }
            }
        }
        for n in 0..=self.cap() {
            for a in 0..k {
                for x in 0..self.values[a].len(n) {
                    if self.act(a, a, n, s.unit(a, n), x) != x {
                        return bad(format!("unit of `{}` acts nontrivially", s.object_name(a)));
                    }
                    for b in 0..k {
                        for f in 0..s.hom(a, b).len(n) {
                            let fx = self.act(a, b, n, f, x);
                            for c in 0..k {
                                for g in 0..s.hom(b, c).len(n) {
                                    if self.act(b, c, n, g, fx)
                                        != self.act(a, c, n, s.compose(a, b, c, n, g, f), x)
                                    {
                                        return bad(format!(
                                            "action is not associative at level {n} on `{}`",
                                            self.values[a].label(n, x)
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The enriched diagram of a plain diagram over a discretely enriched
    /// shape built from the same category.
    pub fn from_diagram(f: &Diagram, shape: &SSetCat) -> Result<SDiagram> {
        let cat = shape
            .base()
            .filter(|c| c.table_eq(f.shape()))
            .ok_or_else(|| {
                Error::ShapeMismatch(
                    "shape is not the discrete enrichment of the diagram shape".into(),
                )
            })?;
        let k = cat.num_objects();
        let act = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        let dom = product(shape.hom(a, b), f.value(ObjId(a))).unwrap();
                        let hom = cat.hom(ObjId(a), ObjId(b));
                        let per = |n: usize| f.value(ObjId(a)).len(n);
                        SimplicialMap::tabulate(&dom, f.value(ObjId(b)), |n, i| {
                            f.map(hom[i / per(n)]).apply(n, i % per(n))
                        })
                    })
                    .collect()
            })
            .collect();
        SDiagram::new(shape.clone(), f.values().to_vec(), act)
    }

    pub fn constant(shape: &SSetCat, x: &TruncSSet) -> SDiagram {
        let k = shape.num_objects();
        let act = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        let dom = product(shape.hom(a, b), x).unwrap();
                        SimplicialMap::tabulate(&dom, x, |n, i| i % x.len(n))
                    })
                    .collect()
            })
            .collect();
        SDiagram {
            shape: shape.clone(),
            values: vec![x.clone(); k],
            act,
        }
    }

    pub fn terminal(shape: &SSetCat) -> SDiagram {
        SDiagram::constant(shape, &point(shape.cap()))
    }

    /// `hom(d, -)`.
    pub fn representable(shape: &SSetCat, d: usize) -> SDiagram {
        let k = shape.num_objects();
        let values: Vec<TruncSSet> = (0..k).map(|a| shape.hom(d, a).clone()).collect();
        let act = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        let dom = product(shape.hom(a, b), &values[a]).unwrap();
                        SimplicialMap::tabulate(&dom, &values[b], |n, i| {
                            let s = values[a].len(n);
                            shape.compose(d, a, b, n, i / s, i % s)
                        })
                    })
                    .collect()
            })
            .collect();
        SDiagram {
            shape: shape.clone(),
            values,
            act,
        }
    }

    /// The weight `hom(-, d)`, over the opposite shape.
    pub fn hom_weight(shape: &SSetCat, d: usize) -> SDiagram {
        SDiagram::representable(&shape.opposite(), d)
    }
}

pub(crate) fn check_enriched_weight(g: &SDiagram, f: &SDiagram) -> Result<()> {
    let (a, b) = (g.shape(), f.shape());
    let k = a.num_objects();
    if k != b.num_objects() || (0..k).any(|x| (0..k).any(|y| !a.hom(x, y).same(b.hom(y, x)))) {
        return Err(Error::ShapeMismatch(
            "weight must live on the opposite enriched shape".into(),
        ));
    }
    Ok(())
}

/// Enriched `G (.)_D F`: the coequalizer of the two actions of `hom(d, d2)`
/// on `G(d2) x F(d)`.
pub fn enriched_tensor_product(g: &SDiagram, f: &SDiagram) -> Result<Glued> {
    check_enriched_weight(g, f)?;
    let s = f.shape();
    let k = s.num_objects();
    let summands: Vec<TruncSSet> = (0..k)
        .map(|d| product(g.value(d), f.value(d)))
        .collect::<Result<_>>()?;
    glue(s.object_names(), &summands, f.cap(), |n, union| {
        for d in 0..k {
            for d2 in 0..k {
                let hom = s.hom(d, d2);
                for h in 0..hom.len(n) {
                    if d == d2 && h == s.unit(d, n) {
                        continue;
                    }
                    for y in 0..g.value(d2).len(n) {
                        let hy = g.act(d2, d, n, h, y);
                        for x in 0..f.value(d).len(n) {
                            let hx = f.act(d, d2, n, h, x);
                            union(
                                (d, pair_index(f.value(d), n, hy, x)),
                                (d2, pair_index(f.value(d2), n, y, hx)),
                            );
                        }
                    }
                }
            }
        }
    })
}

/// A bimodule `H(a, b)`, contravariant in `a` and covariant in `b`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    shape: SSetCat,
    values: Vec<Vec<TruncSSet>>,
    /// `left[a][b][b2]: hom(b, b2) x H(a, b) -> H(a, b2)`.
    left: Vec<Vec<Vec<SimplicialMap>>>,
    /// `right[a][b][a2]: H(a, b) x hom(a2, a) -> H(a2, b)`.
    right: Vec<Vec<Vec<SimplicialMap>>>,
}

impl Bimodule {
    pub fn new(
        shape: SSetCat,
        values: Vec<Vec<TruncSSet>>,
        left: Vec<Vec<Vec<SimplicialMap>>>,
        right: Vec<Vec<Vec<SimplicialMap>>>,
    ) -> Result<Bimodule> {
        let m = Bimodule {
            shape,
            values,
            left,
            right,
        };
        m.audit()?;
        Ok(m)
    }

    pub fn shape(&self) -> &SSetCat {
        &self.shape
    }

    pub fn cap(&self) -> usize {
        self.shape.cap()
    }

    pub fn value(&self, a: usize, b: usize) -> &TruncSSet {
        &self.values[a][b]
    }

    pub fn act_left(&self, a: usize, b: usize, b2: usize, n: usize, g: usize, x: usize) -> usize {
        self.left[a][b][b2].apply(n, pair_index(&self.values[a][b], n, g, x))
    }

    pub fn act_right(&self, a: usize, b: usize, a2: usize, n: usize, x: usize, f: usize) -> usize {
        self.right[a][b][a2].apply(n, pair_index(self.shape.hom(a2, a), n, x, f))
    }

    pub fn audit(&self) -> Result<()> {
        let s = &self.shape;
        let k = s.num_objects();
        let bad = |m: String| Err(Error::BimoduleAxiomViolation(m));
        if self.values.len() != k || self.values.iter().any(|r| r.len() != k) {
            return bad("value table does not match the object count".into());
        }
        for n in 0..=self.cap() {
            for a in 0..k {
                for b in 0..k {
                    for x in 0..self.values[a][b].len(n) {
                        if self.act_left(a, b, b, n, s.unit(b, n), x) != x
                            || self.act_right(a, b, a, n, x, s.unit(a, n)) != x
                        {
                            return bad(format!(
                                "unit acts nontrivially on `{}`",
                                self.values[a][b].label(n, x)
                            ));
                        }
                        for b2 in 0..k {
                            for g in 0..s.hom(b, b2).len(n) {
                                let gx = self.act_left(a, b, b2, n, g, x);
                                for b3 in 0..k {
                                    for g2 in 0..s.hom(b2, b3).len(n) {
                                        if self.act_left(a, b2, b3, n, g2, gx)
                                            != self.act_left(
                                                a,
                                                b,
                                                b3,
                                                n,
                                                s.compose(b, b2, b3, n, g2, g),
                                                x,
                                            )
                                        {
                                            return bad(format!(
                                                "left action not associative at level {n}"
                                            ));
                                        }
                                    }
                                }
                                for a2 in 0..k {
                                    for f in 0..s.hom(a2, a).len(n) {
                                        let l = self.act_right(a, b2, a2, n, gx, f);
                                        let r = self.act_left(
                                            a2,
                                            b,
                                            b2,
                                            n,
                                            g,
                                            self.act_right(a, b, a2, n, x, f),
                                        );
                                        if l != r {
                                            return bad(format!(
                                                "actions do not commute at level {n}"
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                        for a2 in 0..k {
                            for f in 0..s.hom(a2, a).len(n) {
                                let xf = self.act_right(a, b, a2, n, x, f);
                                for a3 in 0..k {
                                    for f2 in 0..s.hom(a3, a2).len(n) {
                                        if self.act_right(a2, b, a3, n, xf, f2)
                                            != self.act_right(
                                                a,
                                                b,
                                                a3,
                                                n,
                                                x,
                                                s.compose(a3, a2, a, n, f, f2),
                                            )
                                        {
                                            return bad(format!(
                                                "right action not associative at level {n}"
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `H(a, b) = G(a) x F(b)` for a weight `G` and a diagram `F`.
    pub fn external(g: &SDiagram, f: &SDiagram) -> Result<Bimodule> {
        check_enriched_weight(g, f)?;
        let s = f.shape().clone();
        let k = s.num_objects();
        let values: Vec<Vec<TruncSSet>> = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| product(g.value(a), f.value(b)))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let left = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        (0..k)
                            .map(|b2| {
                                let dom = product(s.hom(b, b2), &values[a][b]).unwrap();
                                SimplicialMap::tabulate(&dom, &values[a][b2], |n, i| {
                                    let (h, p) = (i / values[a][b].len(n), i % values[a][b].len(n));
                                    let (y, x) = (p / f.value(b).len(n), p % f.value(b).len(n));
                                    pair_index(f.value(b2), n, y, f.act(b, b2, n, h, x))
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let right = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        (0..k)
                            .map(|a2| {
                                let dom = product(&values[a][b], s.hom(a2, a)).unwrap();
                                SimplicialMap::tabulate(&dom, &values[a2][b], |n, i| {
                                    let per = s.hom(a2, a).len(n);
                                    let (p, h) = (i / per, i % per);
                                    let (y, x) = (p / f.value(b).len(n), p % f.value(b).len(n));
                                    pair_index(f.value(b), n, g.act(a, a2, n, h, y), x)
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Bimodule {
            shape: s,
            values,
            left,
            right,
        })
    }

    /// The hom bimodule `H(a, b) = hom(a, b)`.
    pub fn hom(s: &SSetCat) -> Bimodule {
        let k = s.num_objects();
        let values: Vec<Vec<TruncSSet>> = (0..k)
            .map(|a| (0..k).map(|b| s.hom(a, b).clone()).collect())
            .collect();
        let left = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| (0..k).map(|b2| s.composition(a, b, b2).clone()).collect())
                    .collect()
            })
            .collect();
        let right = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        (0..k)
                            .map(|a2| {
                                let dom = product(s.hom(a, b), s.hom(a2, a)).unwrap();
                                SimplicialMap::tabulate(&dom, s.hom(a2, b), |n, i| {
                                    let per = s.hom(a2, a).len(n);
                                    s.compose(a2, a, b, n, i / per, i % per)
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Bimodule {
            shape: s.clone(),
            values,
            left,
            right,
        }
    }

    /// A plain bifunctor over `D^op x D` as a bimodule over the discrete
    /// enrichment `s` of `D`.
    pub fn from_bifunctor(h: &Diagram, s: &SSetCat) -> Result<Bimodule> {
        let d = s
            .base()
            .ok_or_else(|| {
                Error::ShapeMismatch("bimodule shape must be discretely enriched".into())
            })?
            .clone();
        check_bifunctor(h, &d)?;
        let k = d.num_objects();
        let val = |a: usize, b: usize| h.value(pair_obj(&d, ObjId(a), ObjId(b))).clone();
        let values: Vec<Vec<TruncSSet>> = (0..k)
            .map(|a| (0..k).map(|b| val(a, b)).collect())
            .collect();
        let left = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        (0..k)
                            .map(|b2| {
                                let dom = product(s.hom(b, b2), &values[a][b]).unwrap();
                                let homs = d.hom(ObjId(b), ObjId(b2));
                                let ida = d.identity(ObjId(a));
                                SimplicialMap::tabulate(&dom, &values[a][b2], |n, i| {
                                    let per = values[a][b].len(n);
                                    h.map(pair_mor(&d, ida, homs[i / per])).apply(n, i % per)
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let right = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        (0..k)
                            .map(|a2| {
                                let dom = product(&values[a][b], s.hom(a2, a)).unwrap();
                                let homs = d.hom(ObjId(a2), ObjId(a));
                                let idb = d.identity(ObjId(b));
                                SimplicialMap::tabulate(&dom, &values[a2][b], |n, i| {
                                    let per = homs.len();
                                    h.map(pair_mor(&d, homs[i % per], idb)).apply(n, i / per)
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Bimodule::new(s.clone(), values, left, right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::{boundary, is_isomorphic, standard_simplex};

    fn span_of_points(cap: usize) -> Diagram {
        let span = FinCat::span();
        let b = span.object("b").unwrap();
        Diagram::from_fn(
            &span,
            |o| if o == b { boundary(1, cap) } else { point(cap) },
            |_, s, t| SimplicialMap::tabulate(s, t, |n, x| if t.len(n) == 1 { 0 } else { x }),
        )
        .unwrap()
    }

    #[test]
    fn colimit_of_span_is_point() {
        let f = span_of_points(3);
        assert!(f.violations().is_empty());
        assert_eq!(colimit(&f).unwrap().sset.level_sizes(), vec![1, 1, 1, 1]);
        let two = Diagram::terminal(&FinCat::discrete(&["a", "b"]).unwrap(), 2);
        assert_eq!(colimit(&two).unwrap().sset.len(0), 2);
    }

    #[test]
    fn limit_of_cospan_of_points() {
        let c = FinCat::cospan();
        let l = limit(&Diagram::terminal(&c, 2));
        assert_eq!(l.sset.level_sizes(), vec![1, 1, 1]);
    }

    #[test]
    fn tensor_with_terminal_weight_is_colimit() {
        let f = span_of_points(3);
        let g = Diagram::terminal(&f.shape().opposite(), 3);
        let t = tensor_product(&g, &f).unwrap();
        assert!(is_isomorphic(&t.sset, &colimit(&f).unwrap().sset).is_some());
    }

    #[test]
    fn tensor_with_hom_weight_is_evaluation() {
        let f = span_of_points(2);
        for d in f.shape().objects() {
            let g = Diagram::hom_weight(f.shape(), d, 2);
            assert!(g.violations().is_empty());
            let t = tensor_product(&g, &f).unwrap();
            assert!(is_isomorphic(&t.sset, f.value(d)).is_some());
        }
    }

    #[test]
    fn nat_transf_counts() {
        let one = FinCat::terminal();
        let b = Diagram::constant(&one, &boundary(1, 2));
        assert_eq!(nat_transf_object(&b, &b, 0).unwrap().sset.len(0), 4);
        let arrow = FinCat::linear(1);
        let f1 = Diagram::terminal(&arrow, 2);
        let f2 = Diagram::from_fn(
            &arrow,
            |o| if o.0 == 0 { boundary(1, 2) } else { point(2) },
            |_, s, t| SimplicialMap::tabulate(s, t, |n, x| if t.len(n) == 1 { 0 } else { x }),
        )
        .unwrap();
        assert_eq!(nat_transf_object(&f1, &f2, 0).unwrap().sset.len(0), 2);
    }

    #[test]
    fn cotensor_with_representable_is_evaluation() {
        let arrow = FinCat::linear(1);
        let f = Diagram::from_fn(
            &arrow,
            |o| {
                if o.0 == 0 {
                    standard_simplex(1, 2)
                } else {
                    point(2)
                }
            },
            |_, s, t| SimplicialMap::tabulate(s, t, |_, _| 0),
        )
        .unwrap();
        for d in arrow.objects() {
            let w = Diagram::representable(&arrow, d, 2);
            let c = cotensor_product(&w, &f, 0).unwrap();
            assert_eq!(c.sset.len(0), f.value(d).len(0));
        }
    }

    #[test]
    fn coend_of_hom_over_arrow() {
        let arrow = FinCat::linear(1);
        let h = Diagram::from_fn(
            &arrow.opposite().product(&arrow),
            |o| {
                let (a, b) = (ObjId(o.0 / 2), ObjId(o.0 % 2));
                let names: Vec<&str> = arrow
                    .hom(a, b)
                    .iter()
                    .map(|&m| arrow.morphism_name(m))
                    .collect();
                discrete(&names, 1).unwrap()
            },
            |m, s, t| {
                let (f, g) = (MorId(m.0 / 3), MorId(m.0 % 3));
                let sh = arrow.opposite().product(&arrow);
                let (src, tgt) = (sh.source(m), sh.target(m));
                let from = arrow.hom(ObjId(src.0 / 2), ObjId(src.0 % 2));
                let to = arrow.hom(ObjId(tgt.0 / 2), ObjId(tgt.0 % 2));
                let img: Vec<usize> = from
                    .iter()
                    .map(|&x| {
                        to.iter()
                            .position(|&y| {
                                y == arrow.compose(g, arrow.compose(x, f).unwrap()).unwrap()
                            })
                            .unwrap()
                    })
                    .collect();
                SimplicialMap::tabulate(s, t, |_, x| img[x])
            },
        )
        .unwrap();
        assert!(h.violations().is_empty());
        assert_eq!(coend(&h, &arrow).unwrap().sset.len(0), 2);
        let w = hom_bifunctor_weight(&arrow, 1);
        assert!(w.violations().is_empty());
        let t = tensor_product(&w, &h).unwrap();
        assert!(is_isomorphic(&t.sset, &coend(&h, &arrow).unwrap().sset).is_some());
    }

    #[test]
    fn lan_along_point_inclusion() {
        let arrow = FinCat::linear(1);
        let k = FinFunctor::new(
            FinCat::terminal(),
            arrow.clone(),
            vec![ObjId(0)],
            vec![arrow.identity(ObjId(0))],
        )
        .unwrap();
        let x = boundary(1, 2);
        let f = Diagram::constant(&FinCat::terminal(), &x);
        let l = lan(&k, &f).unwrap();
        assert!(l.diagram.violations().is_empty());
        for e in arrow.objects() {
            assert!(is_isomorphic(l.diagram.value(e), &x).is_some());
        }
        assert!(l.unit.violations().is_empty());
        assert!(l.unit.is_iso());
        let r = ran(&k, &f).unwrap();
        assert!(r.diagram.violations().is_empty());
        assert!(r.unit.is_iso());
    }

    #[test]
    fn discrete_enrichment_matches_plain_tensor() {
        let f = span_of_points(2);
        let s = SSetCat::discrete(f.shape(), 2);
        s.audit().unwrap();
        let g = Diagram::terminal(&f.shape().opposite(), 2);
        let sg = SDiagram::from_diagram(&g, &s.opposite()).unwrap();
        let sf = SDiagram::from_diagram(&f, &s).unwrap();
        let a = enriched_tensor_product(&sg, &sf).unwrap();
        let b = tensor_product(&g, &f).unwrap();
        assert_eq!(a.sset, b.sset);
    }

    #[test]
    fn hom_bimodule_axioms() {
        let s = SSetCat::discrete(&FinCat::cyclic_group(2), 2);
        Bimodule::hom(&s).audit().unwrap();
        let t = SSetCat::discrete(&FinCat::span(), 1);
        let w = SDiagram::hom_weight(&t, 0);
        w.audit().unwrap();
        Bimodule::external(&w, &SDiagram::terminal(&t))
            .unwrap()
            .audit()
            .unwrap();
        t.tensor(&t.opposite()).unwrap().audit().unwrap();
    }
}
