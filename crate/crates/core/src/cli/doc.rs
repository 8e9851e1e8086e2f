//! The TOML document format: records of categories, functors, simplicial
//! sets, enriched categories, diagrams, weights and enriched diagrams.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, SDiagram, SSetCat};
use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor};
use crate::nerve::nerve;
use crate::simpset::{boundary, circle, discrete, empty, horn, point, standard_simplex, SimplicialMap, TruncSSet};

pub const DEFAULT_CAP: usize = 4;

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, rename = "category", skip_serializing_if = "Vec::is_empty")]
    pub categories: Vec<RawCategory>,
    #[serde(default, rename = "functor", skip_serializing_if = "Vec::is_empty")]
    pub functors: Vec<RawFunctor>,
    #[serde(default, rename = "sset", skip_serializing_if = "Vec::is_empty")]
    pub ssets: Vec<RawSSet>,
    #[serde(default, rename = "sset-category", skip_serializing_if = "Vec::is_empty")]
    pub sset_categories: Vec<RawSSetCat>,
    #[serde(default, rename = "diagram", skip_serializing_if = "Vec::is_empty")]
    pub diagrams: Vec<RawDiagram>,
    #[serde(default, rename = "weight", skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<RawDiagram>,
    #[serde(default, rename = "sdiagram", skip_serializing_if = "Vec::is_empty")]
    pub sdiagrams: Vec<RawSDiagram>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawCategory {
    pub id: String,
    /// `terminal`, `span`, `cospan`, `linear <n>` or `cyclic <k>`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub objects: Vec<String>,
    /// `[id, source, target]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<[String; 3]>,
    /// `[g, f, g o f]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub composites: Vec<[String; 3]>,
    /// When false, identities `id_<x>` and their composites are generated.
    #[serde(default, skip_serializing_if = "is_false")]
    pub explicit_identities: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawFunctor {
    pub id: String,
    pub source: String,
    pub target: String,
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawSSet {
    pub id: String,
    /// `point`, `empty`, `circle`, `simplex <n>`, `boundary <n>`,
    /// `horn <n> <k>`, `nerve <category>` or `discrete <id>...`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub simplices: Vec<Vec<String>>,
    /// `faces[n][i][x]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[n][i][x]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub degeneracies: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawSSetCat {
    pub id: String,
    /// `interval` or `min-monoid`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    /// A category id, enriched discretely.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discrete: Option<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(untagged)]
pub enum RawMap {
    /// `identity`, `terminal`, `labels` or `vertex <label>`.
    Rule(String),
    Table { levels: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawDiagram {
    pub id: String,
    pub category: String,
    pub values: BTreeMap<String, String>,
    /// Identities may be omitted.
    #[serde(default)]
    pub maps: BTreeMap<String, RawMap>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawSDiagram {
    pub id: String,
    pub shape: String,
    /// Lives on the opposite of `shape`.
    #[serde(default, skip_serializing_if = "is_false")]
    pub opposite: bool,
    /// `terminal`, `representable <object>` or `hom-weight <object>`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    /// A diagram or weight id, over a discretely enriched shape.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<String>,
}

/// A diagram together with the id of the category it is indexed by.
#[derive(Clone, Debug)]
pub struct Named<T> {
    pub category: String,
    pub item: T,
}

/// A fully validated document at a uniform cap.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub cap: usize,
    pub categories: BTreeMap<String, FinCat>,
    pub functors: BTreeMap<String, Named<FinFunctor>>,
    pub ssets: BTreeMap<String, TruncSSet>,
    pub sset_categories: BTreeMap<String, SSetCat>,
    pub diagrams: BTreeMap<String, Named<Diagram>>,
    /// Weights live on the opposite of their category.
    pub weights: BTreeMap<String, Named<Diagram>>,
    pub sdiagrams: BTreeMap<String, Named<SDiagram>>,
    sset_category_records: Vec<RawSSetCat>,
    sdiagram_records: Vec<RawSDiagram>,
}

fn dangling(kind: &str, id: &str) -> Error {
    Error::DanglingReference {
        kind: kind.into(),
        id: id.into(),
    }
}

fn duplicate<T>(map: &BTreeMap<String, T>, id: &str) -> Result<()> {
    if map.contains_key(id) {
        return Err(Error::DuplicateId(id.into()));
    }
    Ok(())
}

fn words(spec: &str) -> (&str, Vec<&str>) {
    let mut it = spec.split_whitespace();
    let head = it.next().unwrap_or("");
    (head, it.collect())
}

fn number(spec: &str, w: Option<&&str>) -> Result<usize> {
    w.and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Document(format!("`{spec}` needs a numeric argument")))
}

fn parse_error(text: &str, e: &toml::de::Error) -> Error {
    let offset = e.span().map_or(0, |s| s.start).min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = offset - before.rfind('\n').map_or(0, |p| p + 1) + 1;
    Error::ParseError {
        line,
        column,
        message: e.message().trim().to_string(),
    }
}

pub fn parse_document(text: &str) -> Result<RawDocument> {
    toml::from_str(text).map_err(|e| parse_error(text, &e))
}

/// Loads a document; `cap` overrides the document's own cap.
pub fn load(path: &Path, cap: Option<usize>) -> Result<Workspace> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
    load_str(&text, cap)
}

pub fn load_str(text: &str, cap: Option<usize>) -> Result<Workspace> {
    let doc = parse_document(text)?;
    Workspace::from_document(&doc, cap)
}

impl Workspace {
    pub fn from_document(doc: &RawDocument, cap: Option<usize>) -> Result<Workspace> {
        let mut ws = Workspace {
            cap: cap.or(doc.cap).unwrap_or(DEFAULT_CAP),
            ..Workspace::default()
        };
        for c in &doc.categories {
            duplicate(&ws.categories, &c.id)?;
            ws.categories.insert(c.id.clone(), build_category(c)?);
        }
        for f in &doc.functors {
            duplicate(&ws.functors, &f.id)?;
            let s = ws.category(&f.source)?;
            let t = ws.category(&f.target)?;
            let objects: Vec<(&str, &str)> = f.objects.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            let morphisms: Vec<(&str, &str)> = f.morphisms.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            let item = FinFunctor::from_names(s, t, &objects, &morphisms)?;
            ws.functors.insert(
                f.id.clone(),
                Named {
                    category: f.source.clone(),
                    item,
                },
            );
        }
        for s in &doc.ssets {
            duplicate(&ws.ssets, &s.id)?;
            let x = ws.build_sset(s)?;
            ws.ssets.insert(s.id.clone(), x);
        }
        for c in &doc.sset_categories {
            duplicate(&ws.sset_categories, &c.id)?;
            let s = ws.build_sset_category(c)?;
            ws.sset_categories.insert(c.id.clone(), s);
            ws.sset_category_records.push(c.clone());
        }
        for d in &doc.diagrams {
            duplicate(&ws.diagrams, &d.id)?;
            let item = ws.build_diagram(d, false)?;
            ws.diagrams.insert(
                d.id.clone(),
                Named {
                    category: d.category.clone(),
                    item,
                },
            );
        }
        for d in &doc.weights {
            duplicate(&ws.weights, &d.id)?;
            let item = ws.build_diagram(d, true)?;
            ws.weights.insert(
                d.id.clone(),
                Named {
                    category: d.category.clone(),
                    item,
                },
            );
        }
        for d in &doc.sdiagrams {
            duplicate(&ws.sdiagrams, &d.id)?;
            let item = ws.build_sdiagram(d)?;
            ws.sdiagrams.insert(
                d.id.clone(),
                Named {
                    category: d.shape.clone(),
                    item,
                },
            );
            ws.sdiagram_records.push(d.clone());
        }
        Ok(ws)
    }

    pub fn is_empty(&self) -> bool {
        self.categories.is_empty()
            && self.functors.is_empty()
            && self.ssets.is_empty()
            && self.sset_categories.is_empty()
            && self.diagrams.is_empty()
            && self.weights.is_empty()
            && self.sdiagrams.is_empty()
    }

    pub fn category(&self, id: &str) -> Result<&FinCat> {
        self.categories.get(id).ok_or_else(|| dangling("category", id))
    }

    pub fn sset(&self, id: &str) -> Result<&TruncSSet> {
        self.ssets.get(id).ok_or_else(|| dangling("sset", id))
    }

    pub fn diagram(&self, id: &str) -> Result<&Diagram> {
        self.diagrams.get(id).map(|d| &d.item).ok_or_else(|| dangling("diagram", id))
    }

    pub fn weight(&self, id: &str) -> Result<&Diagram> {
        self.weights.get(id).map(|d| &d.item).ok_or_else(|| dangling("weight", id))
    }

    pub fn functor(&self, id: &str) -> Result<&FinFunctor> {
        self.functors.get(id).map(|d| &d.item).ok_or_else(|| dangling("functor", id))
    }

    pub fn sset_category(&self, id: &str) -> Result<&SSetCat> {
        self.sset_categories.get(id).ok_or_else(|| dangling("sset-category", id))
    }

    /// Whether the enriched diagram `id` lives on the opposite of its shape.
    pub fn sdiagram_is_weight(&self, id: &str) -> bool {
        self.sdiagram_records.iter().any(|r| {
            r.id == id && (r.opposite || r.builtin.as_deref().is_some_and(|b| b.starts_with("hom-weight")))
        })
    }

    pub fn sdiagram(&self, id: &str) -> Result<&SDiagram> {
        self.sdiagrams.get(id).map(|d| &d.item).ok_or_else(|| dangling("sdiagram", id))
    }

    fn build_sset(&self, s: &RawSSet) -> Result<TruncSSet> {
        let cap = self.cap;
        if let Some(spec) = &s.builtin {
            let (head, args) = words(spec);
            return Ok(match head {
                "point" => point(cap),
                "empty" => empty(cap),
                "circle" => circle(cap),
                "simplex" => standard_simplex(number(spec, args.first())?, cap),
                "boundary" => boundary(number(spec, args.first())?, cap),
                "horn" => {
                    let (n, k) = (number(spec, args.first())?, number(spec, args.get(1))?);
                    if k > n {
                        return Err(Error::Document(format!("horn index {k} exceeds dimension {n}")));
                    }
                    horn(n, k, cap)
                }
                "nerve" => nerve(self.category(args.first().copied().unwrap_or(""))?, cap),
                "discrete" => discrete(&args, cap)?,
                _ => return Err(Error::Document(format!("unknown sset builtin `{spec}`"))),
            });
        }
        let given = s.cap.unwrap_or(s.simplices.len().saturating_sub(1));
        if given < cap {
            return Err(Error::CapMismatch(given, cap));
        }
        let x = TruncSSet::from_tables(given, s.simplices.clone(), s.faces.clone(), s.degeneracies.clone())?;
        x.truncate(cap)
    }

    fn build_sset_category(&self, c: &RawSSetCat) -> Result<SSetCat> {
        match (&c.builtin, &c.discrete) {
            (Some(b), None) => match b.as_str() {
                "interval" => Ok(SSetCat::interval(self.cap)),
                "min-monoid" => Ok(SSetCat::min_monoid(self.cap)),
                _ => Err(Error::Document(format!("unknown sset-category builtin `{b}`"))),
            },
            (None, Some(cat)) => Ok(SSetCat::discrete(self.category(cat)?, self.cap)),
            _ => Err(Error::Document(format!(
                "sset-category `{}` needs exactly one of builtin and discrete",
                c.id
            ))),
        }
    }

    fn build_diagram(&self, d: &RawDiagram, weight: bool) -> Result<Diagram> {
        let base = self.category(&d.category)?;
        let shape = if weight { base.opposite() } else { base.clone() };
        for name in d.values.keys() {
            shape.object(name)?;
        }
        for name in d.maps.keys() {
            shape.morphism(name)?;
        }
        let values: Vec<TruncSSet> = shape
            .objects()
            .map(|o| {
                let name = shape.object_name(o);
                let id = d
                    .values
                    .get(name)
                    .ok_or_else(|| Error::Document(format!("diagram `{}` has no value at `{name}`", d.id)))?;
                Ok(self.sset(id)?.clone())
            })
            .collect::<Result<_>>()?;
        let maps: Vec<SimplicialMap> = shape
            .morphisms()
            .map(|m| {
                let (x, y) = (&values[shape.source(m).0], &values[shape.target(m).0]);
                let name = shape.morphism_name(m);
                match d.maps.get(name) {
                    Some(raw) => build_map(raw, x, y, self.cap)
                        .map_err(|e| Error::Document(format!("map `{name}` of `{}`: {e}", d.id))),
                    None if shape.is_identity(m) => Ok(SimplicialMap::identity(x)),
                    None => Err(Error::Document(format!("diagram `{}` has no map for `{name}`", d.id))),
                }
            })
            .collect::<Result<_>>()?;
        Diagram::new(shape, values, maps)
    }

    fn build_sdiagram(&self, d: &RawSDiagram) -> Result<SDiagram> {
        let base = self.sset_category(&d.shape)?;
        let shape = if d.opposite { base.opposite() } else { base.clone() };
        let object = |name: Option<&&str>| -> Result<usize> {
            let name = name.copied().unwrap_or("");
            base.object_names()
                .iter()
                .position(|o| o == name)
                .ok_or_else(|| Error::UnknownId(name.into()))
        };
        match (&d.builtin, &d.diagram) {
            (Some(spec), None) => {
                let (head, args) = words(spec);
                match head {
                    "terminal" => Ok(SDiagram::terminal(&shape)),
                    "representable" => Ok(SDiagram::representable(&shape, object(args.first())?)),
                    "hom-weight" if !d.opposite => Ok(SDiagram::hom_weight(&shape, object(args.first())?)),
                    "hom-weight" => Err(Error::Document("hom-weight already lives on the opposite".into())),
                    _ => Err(Error::Document(format!("unknown sdiagram builtin `{spec}`"))),
                }
            }
            (None, Some(id)) => {
                let f = match self.diagrams.get(id) {
                    Some(f) => &f.item,
                    None => self.weight(id)?,
                };
                SDiagram::from_diagram(f, &shape)
            }
            _ => Err(Error::Document(format!(
                "sdiagram `{}` needs exactly one of builtin and diagram",
                d.id
            ))),
        }
    }

    /// The document of this workspace; simplicial sets, categories and
    /// diagrams are written out as explicit tables.
    pub fn to_document(&self) -> RawDocument {
        let mut ssets: BTreeMap<String, TruncSSet> = self.ssets.clone();
        let mut value_id = |diagram: &str, object: &str, x: &TruncSSet| -> String {
            if let Some((id, _)) = ssets.iter().find(|(_, y)| *y == x) {
                return id.clone();
            }
            let mut id = format!("{diagram}.{object}");
            while ssets.contains_key(&id) {
                id.push('\'');
            }
            ssets.insert(id.clone(), x.clone());
            id
        };
        let mut raw_diagrams = |source: &BTreeMap<String, Named<Diagram>>| -> Vec<RawDiagram> {
            source
                .iter()
                .map(|(id, d)| {
                    let shape = d.item.shape();
                    RawDiagram {
                        id: id.clone(),
                        category: d.category.clone(),
                        values: shape
                            .objects()
                            .map(|o| {
                                let name = shape.object_name(o);
                                (name.to_string(), value_id(id, name, d.item.value(o)))
                            })
                            .collect(),
                        maps: shape
                            .morphisms()
                            .filter(|&m| !shape.is_identity(m))
                            .map(|m| {
                                let levels = d.item.map(m).levels().to_vec();
                                (shape.morphism_name(m).to_string(), RawMap::Table { levels })
                            })
                            .collect(),
                    }
                })
                .collect()
        };
        let diagrams = raw_diagrams(&self.diagrams);
        let weights = raw_diagrams(&self.weights);
        RawDocument {
            cap: Some(self.cap),
            categories: self.categories.iter().map(|(id, c)| category_record(id, c)).collect(),
            functors: self
                .functors
                .iter()
                .map(|(id, f)| {
                    let (s, t) = (f.item.source(), f.item.target());
                    let target_id = self
                        .categories
                        .iter()
                        .find(|(_, c)| c.table_eq(t))
                        .map(|(k, _)| k.clone())
                        .unwrap_or_default();
                    RawFunctor {
                        id: id.clone(),
                        source: f.category.clone(),
                        target: target_id,
                        objects: s
                            .objects()
                            .map(|o| (s.object_name(o).to_string(), t.object_name(f.item.obj(o)).to_string()))
                            .collect(),
                        morphisms: s
                            .morphisms()
                            .map(|m| (s.morphism_name(m).to_string(), t.morphism_name(f.item.mor(m)).to_string()))
                            .collect(),
                    }
                })
                .collect(),
            ssets: ssets.iter().map(|(id, x)| sset_record(id, x)).collect(),
            sset_categories: self.sset_category_records.clone(),
            diagrams,
            weights,
            sdiagrams: self.sdiagram_records.clone(),
        }
    }

    pub fn serialize(&self) -> Result<String> {
        toml::to_string(&self.to_document()).map_err(|e| Error::Document(e.to_string()))
    }
}

fn build_category(c: &RawCategory) -> Result<FinCat> {
    if let Some(spec) = &c.builtin {
        let (head, args) = words(spec);
        return match head {
            "terminal" => Ok(FinCat::terminal()),
            "span" => Ok(FinCat::span()),
            "cospan" => Ok(FinCat::cospan()),
            "linear" => Ok(FinCat::linear(number(spec, args.first())?)),
            "cyclic" => {
                let k = number(spec, args.first())?;
                if k == 0 {
                    return Err(Error::Document("cyclic group of order 0".into()));
                }
                Ok(FinCat::cyclic_group(k))
            }
            _ => Err(Error::Document(format!("unknown category builtin `{spec}`"))),
        };
    }
    let mors: Vec<(&str, &str, &str)> = c.morphisms.iter().map(|[a, b, t]| (a.as_str(), b.as_str(), t.as_str())).collect();
    let table: Vec<(&str, &str, &str)> = c.composites.iter().map(|[a, b, t]| (a.as_str(), b.as_str(), t.as_str())).collect();
    let objects: Vec<&str> = c.objects.iter().map(String::as_str).collect();
    if c.explicit_identities {
        FinCat::new(&objects, &mors, &table)
    } else {
        FinCat::with_identities(&objects, &mors, &table)
    }
}

fn build_map(raw: &RawMap, x: &TruncSSet, y: &TruncSSet, cap: usize) -> Result<SimplicialMap> {
    let levels: Vec<Vec<usize>> = match raw {
        RawMap::Table { levels } => {
            if levels.len() <= cap {
                return Err(Error::CapMismatch(levels.len().saturating_sub(1), cap));
            }
            levels[..=cap].to_vec()
        }
        RawMap::Rule(spec) => {
            let (head, args) = words(spec);
            match head {
                "identity" => (0..=cap).map(|n| (0..x.len(n)).collect()).collect(),
                "terminal" => {
                    if (0..=cap).any(|n| y.len(n) != 1) {
                        return Err(Error::Document("`terminal` needs a one-point target".into()));
                    }
                    (0..=cap).map(|n| vec![0; x.len(n)]).collect()
                }
                "labels" => (0..=cap)
                    .map(|n| {
                        (0..x.len(n))
                            .map(|i| y.index_of(n, x.label(n, i)).ok_or_else(|| Error::UnknownId(x.label(n, i).into())))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<_>>()?,
                "vertex" => {
                    let v = args.first().copied().unwrap_or("");
                    let mut at = y.index_of(0, v).ok_or_else(|| Error::UnknownId(v.into()))?;
                    let mut out = Vec::with_capacity(cap + 1);
                    for n in 0..=cap {
                        if n > 0 {
                            at = y.degen(n - 1, 0, at);
                        }
                        out.push(vec![at; x.len(n)]);
                    }
                    out
                }
                _ => return Err(Error::Document(format!("unknown map rule `{spec}`"))),
            }
        }
    };
    SimplicialMap::new(x.clone(), y.clone(), levels)
}

fn category_record(id: &str, c: &FinCat) -> RawCategory {
    RawCategory {
        id: id.into(),
        builtin: None,
        objects: c.object_names().to_vec(),
        morphisms: c
            .morphisms()
            .map(|m| {
                [
                    c.morphism_name(m).to_string(),
                    c.object_name(c.source(m)).to_string(),
                    c.object_name(c.target(m)).to_string(),
                ]
            })
            .collect(),
        composites: c
            .composable_pairs()
            .map(|(g, f)| {
                [
                    c.morphism_name(g).to_string(),
                    c.morphism_name(f).to_string(),
                    c.morphism_name(c.compose(g, f).unwrap()).to_string(),
                ]
            })
            .collect(),
        explicit_identities: true,
    }
}

pub fn sset_record(id: &str, x: &TruncSSet) -> RawSSet {
    let cap = x.cap();
    RawSSet {
        id: id.into(),
        builtin: None,
        cap: Some(cap),
        simplices: (0..=cap).map(|n| x.labels(n).to_vec()).collect(),
        faces: (0..=cap)
            .map(|n| {
                if n == 0 {
                    Vec::new()
                } else {
                    (0..=n).map(|i| (0..x.len(n)).map(|s| x.face(n, i, s)).collect()).collect()
                }
            })
            .collect(),
        degeneracies: (0..cap)
            .map(|n| (0..=n).map(|i| (0..x.len(n)).map(|s| x.degen(n, i, s)).collect()).collect())
            .collect(),
    }
}

/// Serializes named simplicial sets as a document of `sset` records.
pub fn ssets_document(items: &[(String, TruncSSet)]) -> Result<String> {
    let doc = RawDocument {
        cap: items.first().map(|(_, x)| x.cap()),
        ssets: items.iter().map(|(id, x)| sset_record(id, x)).collect(),
        ..RawDocument::default()
    };
    toml::to_string(&doc).map_err(|e| Error::Document(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPAN: &str = r#"
cap = 3

[[category]]
id = "span"
builtin = "span"

[[sset]]
id = "pt"
builtin = "point"

[[sset]]
id = "S0"
builtin = "boundary 1"

[[diagram]]
id = "S0span"
category = "span"
values = { a = "pt", b = "S0", c = "pt" }
maps = { f = "terminal", g = "terminal" }
"#;

    #[test]
    fn empty_document() {
        assert!(load_str("", None).unwrap().is_empty());
    }

    #[test]
    fn loads_and_round_trips() {
        let ws = load_str(SPAN, None).unwrap();
        assert_eq!(ws.cap, 3);
        assert_eq!(ws.diagrams.len(), 1);
        let text = ws.serialize().unwrap();
        let back = load_str(&text, None).unwrap();
        assert_eq!(back.diagrams.keys().collect::<Vec<_>>(), ws.diagrams.keys().collect::<Vec<_>>());
        let (a, b) = (ws.diagram("S0span").unwrap(), back.diagram("S0span").unwrap());
        assert!(a.shape().table_eq(b.shape()));
        assert_eq!(a.values(), b.values());
        assert_eq!(a.maps(), b.maps());
        assert_eq!(ws.ssets, back.ssets);
    }

    #[test]
    fn cap_flag_wins() {
        assert_eq!(load_str(SPAN, Some(2)).unwrap().cap, 2);
    }

    #[test]
    fn parse_errors_have_positions() {
        match load_str("[[category]]\nid = \n", None) {
            Err(Error::ParseError { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn broken_table_names_the_pair() {
        let doc = r#"
[[category]]
id = "bad"
objects = ["x", "y"]
morphisms = [["f", "x", "y"], ["g", "y", "x"]]
composites = [["g", "f", "f"]]
"#;
        match load_str(doc, None) {
            Err(Error::IllTypedComposite { g, f, .. }) => assert_eq!((g.as_str(), f.as_str()), ("g", "f")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dangling_reference() {
        let doc = "[[diagram]]\nid = \"d\"\ncategory = \"nowhere\"\nvalues = {}\n";
        assert!(matches!(load_str(doc, None), Err(Error::DanglingReference { .. })));
    }
}
