//! Finite categories stored as explicit identity and composition tables,
//! together with the derived constructions used by the rest of the crate:
//! opposites, products, comma categories and functors.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjId(pub usize);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: ObjId,
    pub target: ObjId,
}

type ComposeRule = Arc<dyn Fn(MorId, MorId) -> MorId + Send + Sync>;

#[derive(Clone)]
enum Composition {
    Table(HashMap<(MorId, MorId), MorId>),
    /// Composite computed on demand; used by derived categories whose
    /// tables would be large.
    Rule(ComposeRule),
}

struct CatData {
    objects: Vec<String>,
    obj_index: HashMap<String, ObjId>,
    morphisms: Vec<Morphism>,
    mor_index: HashMap<String, MorId>,
    identities: Vec<MorId>,
    homs: HashMap<(ObjId, ObjId), Vec<MorId>>,
    outgoing: Vec<Vec<MorId>>,
    incoming: Vec<Vec<MorId>>,
    composition: Composition,
}

#[derive(Clone)]
pub struct FinCat {
    inner: Arc<CatData>,
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("objects", &self.inner.objects)
            .field("morphisms", &self.inner.morphisms.len())
            .finish()
    }
}

fn index_names<T: Copy>(names: &[String], wrap: impl Fn(usize) -> T) -> Result<HashMap<String, T>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), wrap(i)).is_some() {
            return Err(Error::DuplicateId(n.clone()));
        }
    }
    Ok(index)
}

impl FinCat {
    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        composition: Composition,
    ) -> Result<FinCat> {
        let obj_index = index_names(&objects, ObjId)?;
        let names: Vec<String> = morphisms.iter().map(|m| m.name.clone()).collect();
        let mor_index = index_names(&names, MorId)?;
        let mut homs: HashMap<(ObjId, ObjId), Vec<MorId>> = HashMap::new();
        let mut outgoing = vec![Vec::new(); objects.len()];
        let mut incoming = vec![Vec::new(); objects.len()];
        for (i, m) in morphisms.iter().enumerate() {
            homs.entry((m.source, m.target)).or_default().push(MorId(i));
            outgoing[m.source.0].push(MorId(i));
            incoming[m.target.0].push(MorId(i));
        }
        Ok(FinCat {
            inner: Arc::new(CatData {
                objects,
                obj_index,
                morphisms,
                mor_index,
                identities,
                homs,
                outgoing,
                incoming,
                composition,
            }),
        })
    }

    /// Builds a category from objects, morphisms `(id, source, target)` and a
    /// total composition table of triples `(g, f, g o f)`. Identities are
    /// recognised from the table.
    pub fn new<S: AsRef<str>>(
        objects: &[S],
        morphisms: &[(S, S, S)],
        table: &[(S, S, S)],
    ) -> Result<FinCat> {
        let objects: Vec<String> = objects.iter().map(|s| s.as_ref().to_string()).collect();
        let obj_index = index_names(&objects, ObjId)?;
        let obj = |s: &str| {
            obj_index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownId(s.to_string()))
        };
        let mut mors = Vec::with_capacity(morphisms.len());
        for (n, s, t) in morphisms {
            mors.push(Morphism {
                name: n.as_ref().to_string(),
                source: obj(s.as_ref())?,
                target: obj(t.as_ref())?,
            });
        }
        let names: Vec<String> = mors.iter().map(|m| m.name.clone()).collect();
        let mor_index = index_names(&names, MorId)?;
        let mor = |s: &str| {
            mor_index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownId(s.to_string()))
        };
        let mut comp: HashMap<(MorId, MorId), MorId> = HashMap::new();
        for (g, f, gf) in table {
            let (gi, fi, gfi) = (mor(g.as_ref())?, mor(f.as_ref())?, mor(gf.as_ref())?);
            let ill = |reason: &str| Error::IllTypedComposite {
                g: g.as_ref().to_string(),
                f: f.as_ref().to_string(),
                reason: reason.to_string(),
            };
            let (mg, mf, mgf) = (&mors[gi.0], &mors[fi.0], &mors[gfi.0]);
            if mf.target != mg.source {
                return Err(ill("not composable"));
            }
            if mgf.source != mf.source || mgf.target != mg.target {
                return Err(ill("composite has the wrong endpoints"));
            }
            if let Some(prev) = comp.insert((gi, fi), gfi) {
                if prev != gfi {
                    return Err(ill("conflicting table entries"));
                }
            }
        }
        for f in 0..mors.len() {
            for g in 0..mors.len() {
                if mors[f].target == mors[g].source && !comp.contains_key(&(MorId(g), MorId(f))) {
                    return Err(Error::MissingComposite {
                        g: mors[g].name.clone(),
                        f: mors[f].name.clone(),
                    });
                }
            }
        }
        let mut identities = Vec::with_capacity(objects.len());
        for x in 0..objects.len() {
            let found = (0..mors.len()).find(|&e| {
                let m = &mors[e];
                m.source.0 == x
                    && m.target.0 == x
                    && (0..mors.len()).all(|f| {
                        (mors[f].target.0 != x || comp[&(MorId(e), MorId(f))] == MorId(f))
                            && (mors[f].source.0 != x || comp[&(MorId(f), MorId(e))] == MorId(f))
                    })
            });
            match found {
                Some(e) => identities.push(MorId(e)),
                None => return Err(Error::MissingIdentity(objects[x].clone())),
            }
        }
        let cat = FinCat::assemble(objects, mors, identities, Composition::Table(comp))?;
        cat.check_associative()?;
        Ok(cat)
    }

    /// Like [`FinCat::new`], but identities `id_<x>` and their composites are
    /// generated; `morphisms` and `table` list only the remaining data.
    pub fn with_identities<S: AsRef<str>>(
        objects: &[S],
        morphisms: &[(S, S, S)],
        table: &[(S, S, S)],
    ) -> Result<FinCat> {
        let mut mors: Vec<(String, String, String)> = objects
            .iter()
            .map(|o| {
                (
                    format!("id_{}", o.as_ref()),
                    o.as_ref().to_string(),
                    o.as_ref().to_string(),
                )
            })
            .collect();
        mors.extend(morphisms.iter().map(|(n, s, t)| {
            (
                n.as_ref().to_string(),
                s.as_ref().to_string(),
                t.as_ref().to_string(),
            )
        }));
        let mut tab: Vec<(String, String, String)> = table
            .iter()
            .map(|(g, f, h)| {
                (
                    g.as_ref().to_string(),
                    f.as_ref().to_string(),
                    h.as_ref().to_string(),
                )
            })
            .collect();
        for (n, s, t) in &mors {
            tab.push((format!("id_{t}"), n.clone(), n.clone()));
            tab.push((n.clone(), format!("id_{s}"), n.clone()));
        }
        let objects: Vec<String> = objects.iter().map(|s| s.as_ref().to_string()).collect();
        FinCat::new(&objects, &mors, &tab)
    }

    /// Category whose composite is computed by `rule`; the caller guarantees
    /// the category axioms (checked by [`FinCat::audit`] in tests).
    pub(crate) fn from_rule(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        rule: ComposeRule,
    ) -> FinCat {
        FinCat::assemble(objects, morphisms, identities, Composition::Rule(rule))
            .expect("derived category has unique ids")
    }

    pub fn terminal() -> FinCat {
        FinCat::with_identities(&["*"], &[], &[]).unwrap()
    }

    pub fn discrete<S: AsRef<str>>(objects: &[S]) -> Result<FinCat> {
        FinCat::with_identities::<S>(objects, &[], &[])
    }

    /// The ordinal `[n] = {0 < 1 < ... < n}` with morphisms named `i-j`.
    pub fn linear(n: usize) -> FinCat {
        let objects: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let mut mors = Vec::new();
        let mut id = HashMap::new();
        for i in 0..=n {
            for j in i..=n {
                id.insert((i, j), MorId(mors.len()));
                mors.push(Morphism {
                    name: format!("{i}-{j}"),
                    source: ObjId(i),
                    target: ObjId(j),
                });
            }
        }
        let identities = (0..=n).map(|i| id[&(i, i)]).collect();
        let ends: Vec<(usize, usize)> = mors.iter().map(|m| (m.source.0, m.target.0)).collect();
        let rule: ComposeRule = Arc::new(move |g, f| id[&(ends[f.0].0, ends[g.0].1)]);
        FinCat::from_rule(objects, mors, identities, rule)
    }

    /// `a <-f- b -g-> c`.
    pub fn span() -> FinCat {
        FinCat::with_identities(&["a", "b", "c"], &[("f", "b", "a"), ("g", "b", "c")], &[]).unwrap()
    }

    /// `a -f-> c <-g- b`.
    pub fn cospan() -> FinCat {
        FinCat::with_identities(&["a", "b", "c"], &[("f", "a", "c"), ("g", "b", "c")], &[]).unwrap()
    }

    /// One-object category of the cyclic group of order `k`; morphism `g^i`
    /// is named `e` for `i = 0` and `g<i>` otherwise.
    pub fn cyclic_group(k: usize) -> FinCat {
        assert!(k >= 1);
        let name = |i: usize| {
            if i == 0 {
                "e".to_string()
            } else {
                format!("g{i}")
            }
        };
        let mors: Vec<(String, String, String)> =
            (0..k).map(|i| (name(i), "*".into(), "*".into())).collect();
        let mut tab = Vec::new();
        for i in 0..k {
            for j in 0..k {
                tab.push((name(i), name(j), name((i + j) % k)));
            }
        }
        FinCat::new(&["*".to_string()], &mors, &tab).unwrap()
    }

    pub fn num_objects(&self) -> usize {
        self.inner.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.inner.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        (0..self.num_objects()).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> {
        (0..self.num_morphisms()).map(MorId)
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.inner.objects[o.0]
    }

    pub fn object_names(&self) -> &[String] {
        &self.inner.objects
    }

    pub fn morphism_name(&self, m: MorId) -> &str {
        &self.inner.morphisms[m.0].name
    }

    pub fn object(&self, name: &str) -> Result<ObjId> {
        self.inner
            .obj_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownId(name.to_string()))
    }

    pub fn morphism(&self, name: &str) -> Result<MorId> {
        self.inner
            .mor_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownId(name.to_string()))
    }

    pub fn source(&self, m: MorId) -> ObjId {
        self.inner.morphisms[m.0].source
    }

    pub fn target(&self, m: MorId) -> ObjId {
        self.inner.morphisms[m.0].target
    }

    pub fn identity(&self, o: ObjId) -> MorId {
        self.inner.identities[o.0]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.source(m) == self.target(m) && self.identity(self.source(m)) == m
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        self.inner
            .homs
            .get(&(a, b))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn outgoing(&self, a: ObjId) -> &[MorId] {
        &self.inner.outgoing[a.0]
    }

    pub fn incoming(&self, a: ObjId) -> &[MorId] {
        &self.inner.incoming[a.0]
    }

    /// `g o f`, or `None` when `target(f) != source(g)`.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        if self.target(f) != self.source(g) {
            return None;
        }
        Some(match &self.inner.composition {
            Composition::Table(t) => t[&(g, f)],
            Composition::Rule(r) => r(g, f),
        })
    }

    /// Composite of a composable string `f_1, ..., f_n` (applied left to
    /// right); the identity of `start` for an empty string.
    pub fn compose_path(&self, start: ObjId, path: &[MorId]) -> MorId {
        path.iter().fold(self.identity(start), |acc, &f| {
            self.compose(f, acc).expect("composable path")
        })
    }

    /// All pairs `(g, f)` with `g o f` defined.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (MorId, MorId)> + '_ {
        self.morphisms()
            .flat_map(move |f| self.outgoing(self.target(f)).iter().map(move |&g| (g, f)))
    }

    fn check_associative(&self) -> Result<()> {
        for (g, f) in self.composable_pairs() {
            let gf = self.compose(g, f).unwrap();
            for &h in self.outgoing(self.target(g)) {
                let hg = self.compose(h, g).unwrap();
                if self.compose(h, gf) != self.compose(hg, f) {
                    return Err(Error::NonAssociative {
                        h: self.morphism_name(h).into(),
                        g: self.morphism_name(g).into(),
                        f: self.morphism_name(f).into(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Exhaustive check of typing, unit and associativity laws.
    pub fn audit(&self) -> Result<()> {
        for (g, f) in self.composable_pairs() {
            let gf = self.compose(g, f).unwrap();
            if self.source(gf) != self.source(f) || self.target(gf) != self.target(g) {
                return Err(Error::IllTypedComposite {
                    g: self.morphism_name(g).into(),
                    f: self.morphism_name(f).into(),
                    reason: "composite has the wrong endpoints".into(),
                });
            }
        }
        for o in self.objects() {
            let e = self.identity(o);
            if self.source(e) != o || self.target(e) != o {
                return Err(Error::MissingIdentity(self.object_name(o).into()));
            }
            let unit_ok = self
                .incoming(o)
                .iter()
                .all(|&f| self.compose(e, f) == Some(f))
                && self
                    .outgoing(o)
                    .iter()
                    .all(|&f| self.compose(f, e) == Some(f));
            if !unit_ok {
                return Err(Error::MissingIdentity(self.object_name(o).into()));
            }
        }
        self.check_associative()
    }

    pub fn opposite(&self) -> FinCat {
        let mors = self
            .inner
            .morphisms
            .iter()
            .map(|m| Morphism {
                name: m.name.clone(),
                source: m.target,
                target: m.source,
            })
            .collect();
        let base = self.clone();
        FinCat::from_rule(
            self.inner.objects.clone(),
            mors,
            self.inner.identities.clone(),
            Arc::new(move |g, f| base.compose(f, g).unwrap()),
        )
    }

    /// Product category; object `(a,b)` has index `a * |ob D| + b` and
    /// morphism `(f,g)` has index `f * |mor D| + g`.
    pub fn product(&self, other: &FinCat) -> FinCat {
        let (no, nm) = (other.num_objects(), other.num_morphisms());
        let mut objects = Vec::with_capacity(self.num_objects() * no);
        for a in self.objects() {
            for b in other.objects() {
                objects.push(format!(
                    "({},{})",
                    self.object_name(a),
                    other.object_name(b)
                ));
            }
        }
        let mut mors = Vec::with_capacity(self.num_morphisms() * nm);
        for f in self.morphisms() {
            for g in other.morphisms() {
                mors.push(Morphism {
                    name: format!("({},{})", self.morphism_name(f), other.morphism_name(g)),
                    source: ObjId(self.source(f).0 * no + other.source(g).0),
                    target: ObjId(self.target(f).0 * no + other.target(g).0),
                });
            }
        }
        let identities = self
            .objects()
            .flat_map(|a| other.objects().map(move |b| (a, b)))
            .map(|(a, b)| MorId(self.identity(a).0 * nm + other.identity(b).0))
            .collect();
        let (c1, c2) = (self.clone(), other.clone());
        FinCat::from_rule(
            objects,
            mors,
            identities,
            Arc::new(move |g, f| {
                let a = c1.compose(MorId(g.0 / nm), MorId(f.0 / nm)).unwrap();
                let b = c2.compose(MorId(g.0 % nm), MorId(f.0 % nm)).unwrap();
                MorId(a.0 * nm + b.0)
            }),
        )
    }

    /// Same objects and morphisms with the same endpoints.
    pub fn same_signature(&self, other: &FinCat) -> bool {
        self.inner.objects == other.inner.objects && self.inner.morphisms == other.inner.morphisms
    }

    /// Full equality of tables, including identities and composition.
    pub fn table_eq(&self, other: &FinCat) -> bool {
        self.same_signature(other)
            && self.inner.identities == other.inner.identities
            && self
                .composable_pairs()
                .all(|(g, f)| self.compose(g, f) == other.compose(g, f))
    }

    /// True when `other` has the objects and morphisms of `self` with the
    /// endpoints swapped.
    pub fn is_opposite_of(&self, other: &FinCat) -> bool {
        self.inner.objects == other.inner.objects
            && self.num_morphisms() == other.num_morphisms()
            && self
                .inner
                .morphisms
                .iter()
                .zip(&other.inner.morphisms)
                .all(|(m, n)| m.name == n.name && m.source == n.target && m.target == n.source)
    }

    /// Comma category `(H | d)`: objects `(e, m: H e -> d)`.
    pub fn comma_over(h: &FinFunctor, d: ObjId) -> Comma {
        Comma::build(h, d, true)
    }

    /// Comma category `(d | H)`: objects `(e, m: d -> H e)`.
    pub fn comma_under(h: &FinFunctor, d: ObjId) -> Comma {
        Comma::build(h, d, false)
    }
}

/// A comma category together with its projection to the source of `H` and
/// the structure arrow of each object.
#[derive(Clone, Debug)]
pub struct Comma {
    pub cat: FinCat,
    pub proj: FinFunctor,
    pub arrows: Vec<MorId>,
}

impl Comma {
    fn build(h: &FinFunctor, d: ObjId, over: bool) -> Comma {
        let (e_cat, d_cat) = (h.source(), h.target());
        let mut objects = Vec::new();
        let mut base = Vec::new();
        let mut arrows = Vec::new();
        for e in e_cat.objects() {
            let he = h.obj(e);
            let ms = if over {
                d_cat.hom(he, d)
            } else {
                d_cat.hom(d, he)
            };
            for &m in ms {
                objects.push(format!(
                    "({},{})",
                    e_cat.object_name(e),
                    d_cat.morphism_name(m)
                ));
                base.push(e);
                arrows.push(m);
            }
        }
        let mut mors = Vec::new();
        let mut under_mor = Vec::new();
        let mut mor_index = HashMap::new();
        let mut identities = vec![MorId(0); objects.len()];
        for (i, (&e, &m)) in base.iter().zip(&arrows).enumerate() {
            for &u in e_cat.outgoing(e) {
                let e2 = e_cat.target(u);
                let hu = h.mor(u);
                for (j, (&e3, &m2)) in base.iter().zip(&arrows).enumerate() {
                    if e3 != e2 {
                        continue;
                    }
                    let ok = if over {
                        d_cat.compose(m2, hu) == Some(m)
                    } else {
                        d_cat.compose(hu, m) == Some(m2)
                    };
                    if ok {
                        if u == e_cat.identity(e) && i == j {
                            identities[i] = MorId(mors.len());
                        }
                        mor_index.insert((u, ObjId(i)), MorId(mors.len()));
                        mors.push(Morphism {
                            name: format!(
                                "{}:{}>{}",
                                e_cat.morphism_name(u),
                                objects[i],
                                objects[j]
                            ),
                            source: ObjId(i),
                            target: ObjId(j),
                        });
                        under_mor.push(u);
                    }
                }
            }
        }
        let rule_under = under_mor.clone();
        let ec = e_cat.clone();
        let sources: Vec<ObjId> = mors.iter().map(|m| m.source).collect();
        let cat = FinCat::from_rule(
            objects,
            mors,
            identities,
            Arc::new(move |g, f| {
                let u = ec.compose(rule_under[g.0], rule_under[f.0]).unwrap();
                mor_index[&(u, sources[f.0])]
            }),
        );
        let proj = FinFunctor::new_unchecked(cat.clone(), e_cat.clone(), base, under_mor);
        Comma { cat, proj, arrows }
    }
}

#[derive(Clone, Debug)]
pub struct FinFunctor {
    source: FinCat,
    target: FinCat,
    objects: Vec<ObjId>,
    morphisms: Vec<MorId>,
}

impl FinFunctor {
    pub fn new(
        source: FinCat,
        target: FinCat,
        objects: Vec<ObjId>,
        morphisms: Vec<MorId>,
    ) -> Result<FinFunctor> {
        let f = FinFunctor::new_unchecked(source, target, objects, morphisms);
        match f.violations().into_iter().next() {
            Some(v) => Err(Error::NotFunctorial(v)),
            None => Ok(f),
        }
    }

    pub(crate) fn new_unchecked(
        source: FinCat,
        target: FinCat,
        objects: Vec<ObjId>,
        morphisms: Vec<MorId>,
    ) -> FinFunctor {
        FinFunctor {
            source,
            target,
            objects,
            morphisms,
        }
    }

    /// Builds a functor from name maps; identities may be omitted.
    pub fn from_names<S: AsRef<str>>(
        source: &FinCat,
        target: &FinCat,
        objects: &[(S, S)],
        morphisms: &[(S, S)],
    ) -> Result<FinFunctor> {
        let mut obj = vec![None; source.num_objects()];
        for (a, b) in objects {
            obj[source.object(a.as_ref())?.0] = Some(target.object(b.as_ref())?);
        }
        let obj: Vec<ObjId> = obj
            .into_iter()
            .enumerate()
            .map(|(i, o)| {
                o.ok_or_else(|| {
                    Error::NotFunctorial(format!(
                        "object `{}` unmapped",
                        source.object_name(ObjId(i))
                    ))
                })
            })
            .collect::<Result<_>>()?;
        let mut named = HashMap::new();
        for (a, b) in morphisms {
            named.insert(source.morphism(a.as_ref())?, target.morphism(b.as_ref())?);
        }
        let mor: Vec<MorId> = source
            .morphisms()
            .map(|m| match named.get(&m) {
                Some(&t) => Ok(t),
                None if source.is_identity(m) => Ok(target.identity(obj[source.source(m).0])),
                None => Err(Error::NotFunctorial(format!(
                    "morphism `{}` unmapped",
                    source.morphism_name(m)
                ))),
            })
            .collect::<Result<_>>()?;
        FinFunctor::new(source.clone(), target.clone(), obj, mor)
    }

    pub fn identity(c: &FinCat) -> FinFunctor {
        FinFunctor::new_unchecked(
            c.clone(),
            c.clone(),
            c.objects().collect(),
            c.morphisms().collect(),
        )
    }

    pub fn source(&self) -> &FinCat {
        &self.source
    }

    pub fn target(&self) -> &FinCat {
        &self.target
    }

    pub fn obj(&self, o: ObjId) -> ObjId {
        self.objects[o.0]
    }

    pub fn mor(&self, m: MorId) -> MorId {
        self.morphisms[m.0]
    }

    /// `other o self`.
    pub fn then(&self, other: &FinFunctor) -> FinFunctor {
        FinFunctor::new_unchecked(
            self.source.clone(),
            other.target.clone(),
            self.objects.iter().map(|&o| other.obj(o)).collect(),
            self.morphisms.iter().map(|&m| other.mor(m)).collect(),
        )
    }

    /// The same assignment viewed as a functor between opposites.
    pub fn opposite(&self) -> FinFunctor {
        FinFunctor::new_unchecked(
            self.source.opposite(),
            self.target.opposite(),
            self.objects.clone(),
            self.morphisms.clone(),
        )
    }

    /// Every failure of typing, identity preservation or composition.
    pub fn violations(&self) -> Vec<String> {
        let (s, t) = (&self.source, &self.target);
        let mut out = Vec::new();
        if self.objects.len() != s.num_objects() || self.morphisms.len() != s.num_morphisms() {
            out.push("table sizes do not match the source category".to_string());
            return out;
        }
        for m in s.morphisms() {
            let fm = self.mor(m);
            if t.source(fm) != self.obj(s.source(m)) || t.target(fm) != self.obj(s.target(m)) {
                out.push(format!(
                    "`{}` is sent to an arrow with the wrong endpoints",
                    s.morphism_name(m)
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for o in s.objects() {
            if self.mor(s.identity(o)) != t.identity(self.obj(o)) {
                out.push(format!(
                    "identity of `{}` is not preserved",
                    s.object_name(o)
                ));
            }
        }
        for (g, f) in s.composable_pairs() {
            let lhs = self.mor(s.compose(g, f).unwrap());
            if t.compose(self.mor(g), self.mor(f)) != Some(lhs) {
                out.push(format!(
                    "composite {} o {} is not preserved",
                    s.morphism_name(g),
                    s.morphism_name(f)
                ));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_arrows_counts() {
        let c = FinCat::linear(1).product(&FinCat::linear(1));
        assert_eq!(c.num_objects(), 4);
        assert_eq!(c.num_morphisms(), 9);
        c.audit().unwrap();
    }

    #[test]
    fn group_product_counts() {
        let g = FinCat::cyclic_group(2);
        let c = g.product(&g);
        assert_eq!((c.num_objects(), c.num_morphisms()), (1, 4));
        c.audit().unwrap();
    }

    #[test]
    fn z2_from_table_detects_identity() {
        let c = FinCat::new(
            &["*"],
            &[("e", "*", "*"), ("g", "*", "*")],
            &[
                ("e", "e", "e"),
                ("e", "g", "g"),
                ("g", "e", "g"),
                ("g", "g", "e"),
            ],
        )
        .unwrap();
        assert_eq!(c.morphism_name(c.identity(ObjId(0))), "e");
    }

    #[test]
    fn missing_identity_is_reported() {
        let r = FinCat::new(&["*"], &[("g", "*", "*")], &[("g", "g", "g")]);
        assert!(r.is_ok(), "idempotent g is its own identity");
        let r = FinCat::new(
            &["a", "b"],
            &[("f", "a", "b"), ("ia", "a", "a")],
            &[("ia", "ia", "ia"), ("f", "ia", "f")],
        );
        assert_eq!(r.unwrap_err(), Error::MissingIdentity("b".into()));
    }

    #[test]
    fn ill_typed_and_nonassociative() {
        let r = FinCat::with_identities(&["a", "b"], &[("f", "a", "b")], &[("f", "f", "f")]);
        assert!(matches!(r, Err(Error::IllTypedComposite { .. })));
        // a monoid {e, x, y} with x*y = x, y*x = y, xx = x, yy = y is a left-zero
        // band and associative; swapping one entry breaks associativity.
        let mors = [("e", "*", "*"), ("x", "*", "*"), ("y", "*", "*")];
        let mut tab = vec![
            ("e", "e", "e"),
            ("e", "x", "x"),
            ("e", "y", "y"),
            ("x", "e", "x"),
            ("y", "e", "y"),
        ];
        tab.extend([
            ("x", "x", "x"),
            ("x", "y", "x"),
            ("y", "x", "y"),
            ("y", "y", "y"),
        ]);
        assert!(FinCat::new(&["*"], &mors, &tab).is_ok());
        tab[8] = ("y", "y", "x");
        assert!(matches!(
            FinCat::new(&["*"], &mors, &tab),
            Err(Error::NonAssociative { .. })
        ));
    }

    #[test]
    fn opposite_is_involutive() {
        let s = FinCat::span();
        let oo = s.opposite().opposite();
        assert!(s.table_eq(&oo));
        assert!(s.opposite().is_opposite_of(&s));
        s.opposite().audit().unwrap();
    }

    #[test]
    fn comma_examples() {
        let one = FinCat::terminal();
        let arrow = FinCat::linear(1);
        let k = FinFunctor::identity(&arrow);
        let c = FinCat::comma_over(&k, ObjId(1));
        assert_eq!(c.cat.num_objects(), 2);
        c.cat.audit().unwrap();
        let span = FinCat::span();
        let b = span.object("b").unwrap();
        let u = FinCat::comma_under(&FinFunctor::identity(&span), b);
        assert_eq!(u.cat.num_objects(), 3);
        u.cat.audit().unwrap();
        let inc = FinFunctor::from_names(&one, &arrow, &[("*", "0")], &[]).unwrap();
        assert_eq!(FinCat::comma_over(&inc, ObjId(1)).cat.num_objects(), 1);
        assert_eq!(FinCat::comma_under(&inc, ObjId(1)).cat.num_objects(), 0);
    }

    #[test]
    fn functor_violation_detected() {
        let arrow = FinCat::linear(1);
        let swap = FinFunctor::new(
            arrow.clone(),
            arrow.clone(),
            vec![ObjId(1), ObjId(0)],
            arrow.morphisms().collect(),
        );
        assert!(matches!(swap, Err(Error::NotFunctorial(_))));
    }

    #[test]
    fn linear_audit() {
        FinCat::linear(3).audit().unwrap();
        assert_eq!(FinCat::linear(3).num_morphisms(), 10);
    }
}
