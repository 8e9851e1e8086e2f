use std::collections::HashMap;

use super::{SimpMap, SimpObj};
use crate::diagram::{check_weight, Bimodule, Diagram, NatTransf, SDiagram};
use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor, MorId, ObjId};
use crate::nerve::Nerve;
use crate::simpset::{coproduct, decode, encode, pair_index, product, product_many, Glued, SimplicialMap, TruncSSet};

/// `B_n(G, D, F) = coprod over strings a_0 -> ... -> a_n of G(a_n) x F(a_0)`.
#[derive(Clone, Debug)]
pub struct Bar {
    pub simp: SimpObj,
    pub nerve: Nerve,
    weight: Diagram,
    diagram: Diagram,
    parts: Vec<Glued>,
}

impl Bar {
    pub fn weight(&self) -> &Diagram {
        &self.weight
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn part(&self, n: usize) -> &Glued {
        &self.parts[n]
    }

    /// Element `(a; y, x)` of `(B_n)_l` for nerve simplex `a`.
    pub fn index(&self, n: usize, l: usize, a: usize, y: usize, x: usize) -> usize {
        let f0 = self.diagram.value(self.nerve.first(n, a));
        self.parts[n].class(a, l, pair_index(f0, l, y, x))
    }

    pub fn decode(&self, n: usize, l: usize, b: usize) -> (usize, usize, usize) {
        let (a, p) = self.parts[n].rep(l, b);
        let per = self.diagram.value(self.nerve.first(n, a)).len(l);
        (a, p / per, p % per)
    }

    /// The realization; simplices at level `l` decode with `decode(l, l, _)`.
    pub fn realize(&self) -> TruncSSet {
        self.simp.realize()
    }
}

/// The two-sided bar construction with weight `g` over `D^op`.
pub fn simplicial_bar(g: &Diagram, f: &Diagram, hcap: usize) -> Result<Bar> {
    check_weight(g, f)?;
    let d = f.shape();
    let cap = f.cap();
    let nerve = Nerve::new(d, hcap);
    let mut cache: HashMap<(ObjId, ObjId), TruncSSet> = HashMap::new();
    let mut parts = Vec::with_capacity(hcap + 1);
    for n in 0..=hcap {
        let mut summands = Vec::new();
        for a in 0..nerve.sset.len(n) {
            let key = (nerve.last(n, a), nerve.first(n, a));
            if !cache.contains_key(&key) {
                cache.insert(key, product(g.value(key.0), f.value(key.1))?);
            }
            summands.push(cache[&key].clone());
        }
        parts.push(coproduct(nerve.sset.labels(n), &summands, cap)?);
    }
    let mut bar = Bar {
        simp: SimpObj::new_unchecked(Vec::new(), Vec::new(), Vec::new()),
        nerve,
        weight: g.clone(),
        diagram: f.clone(),
        parts,
    };
    let faces = (0..=hcap)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            (0..=n)
                .map(|i| {
                    SimplicialMap::tabulate(&bar.parts[n].sset, &bar.parts[n - 1].sset, |l, b| {
                        let (a, y, x) = bar.decode(n, l, b);
                        let a2 = bar.nerve.sset.face(n, i, a);
                        let s = bar.nerve.string(n, a);
                        let (y, x) = if i == 0 {
                            (y, f.map(s[0]).apply(l, x))
                        } else if i == n {
                            (g.map(s[n - 1]).apply(l, y), x)
                        } else {
                            (y, x)
                        };
                        bar.index(n - 1, l, a2, y, x)
                    })
                })
                .collect()
        })
        .collect();
    let degens = (0..=hcap)
        .map(|n| {
            if n == hcap {
                return Vec::new();
            }
            (0..=n)
                .map(|i| {
                    SimplicialMap::tabulate(&bar.parts[n].sset, &bar.parts[n + 1].sset, |l, b| {
                        let (a, y, x) = bar.decode(n, l, b);
                        bar.index(n + 1, l, bar.nerve.sset.degen(n, i, a), y, x)
                    })
                })
                .collect()
        })
        .collect();
    let levels = bar.parts.iter().map(|p| p.sset.clone()).collect();
    bar.simp = SimpObj::new_unchecked(levels, faces, degens);
    Ok(bar)
}

/// `B(*, D, F)`.
pub fn unit_bar(f: &Diagram, hcap: usize) -> Result<Bar> {
    simplicial_bar(&Diagram::terminal(&f.shape().opposite(), f.cap()), f, hcap)
}

/// The uncorrected homotopy colimit `|B(*, D, F)|`.
pub fn hocolim(f: &Diagram) -> Result<TruncSSet> {
    Ok(unit_bar(f, f.cap())?.realize())
}

/// `|B(G, D, F)|`.
pub fn hocolim_weighted(g: &Diagram, f: &Diagram) -> Result<TruncSSet> {
    Ok(simplicial_bar(g, f, f.cap())?.realize())
}

/// The map of bars induced by transformations of weights and diagrams.
pub fn bar_map(src: &Bar, tgt: &Bar, weight: Option<&NatTransf>, diagram: Option<&NatTransf>) -> Result<SimpMap> {
    if !src.nerve.cat.table_eq(&tgt.nerve.cat) || src.simp.hcap() != tgt.simp.hcap() {
        return Err(Error::ShapeMismatch("bars over different shapes".into()));
    }
    let levels = (0..=src.simp.hcap())
        .map(|n| {
            SimplicialMap::tabulate(src.simp.level(n), tgt.simp.level(n), |l, b| {
                let (a, y, x) = src.decode(n, l, b);
                let y = weight.map_or(y, |w| w.component(src.nerve.last(n, a)).apply(l, y));
                let x = diagram.map_or(x, |p| p.component(src.nerve.first(n, a)).apply(l, x));
                tgt.index(n, l, a, y, x)
            })
        })
        .collect();
    SimpMap::new(src.simp.clone(), tgt.simp.clone(), levels)
}

fn position(list: &[MorId], m: MorId) -> usize {
    list.iter().position(|&x| x == m).unwrap()
}

/// `d -> |B(D(-, d), D, F)|` with its augmentation to `F`.
#[derive(Clone, Debug)]
pub struct BarResolution {
    pub bars: Vec<Bar>,
    pub diagram: Diagram,
    pub epsilon: NatTransf,
}

pub fn bar_resolution(f: &Diagram) -> Result<BarResolution> {
    let d = f.shape();
    let cap = f.cap();
    let bars: Vec<Bar> = d
        .objects()
        .map(|o| simplicial_bar(&Diagram::hom_weight(d, o, cap), f, cap))
        .collect::<Result<_>>()?;
    let values: Vec<TruncSSet> = bars.iter().map(|b| b.realize()).collect();
    let maps = d
        .morphisms()
        .map(|g| {
            let (o, o2) = (d.source(g), d.target(g));
            let (b, b2) = (&bars[o.0], &bars[o2.0]);
            SimplicialMap::tabulate(&values[o.0], &values[o2.0], |l, e| {
                let (a, y, x) = b.decode(l, l, e);
                let last = b.nerve.last(l, a);
                let u = d.hom(last, o)[y];
                let y2 = position(d.hom(last, o2), d.compose(g, u).unwrap());
                b2.index(l, l, a, y2, x)
            })
        })
        .collect();
    let diagram = Diagram::new(d.clone(), values, maps)?;
    let components = d
        .objects()
        .map(|o| {
            let b = &bars[o.0];
            SimplicialMap::tabulate(diagram.value(o), f.value(o), |l, e| {
                let (a, y, x) = b.decode(l, l, e);
                let u = d.hom(b.nerve.last(l, a), o)[y];
                let path = d.compose(u, b.nerve.arrow(l, a, 0, l)).unwrap();
                f.map(path).apply(l, x)
            })
        })
        .collect();
    let epsilon = NatTransf::new(diagram.clone(), f.clone(), components)?;
    Ok(BarResolution { bars, diagram, epsilon })
}

/// `d -> |B(G, D, D(d, -))|`, a weight over `D^op`.
pub fn weight_bar_resolution(g: &Diagram) -> Result<(Vec<Bar>, Diagram)> {
    let op = g.shape();
    let d = op.opposite();
    let cap = g.cap();
    let bars: Vec<Bar> = d
        .objects()
        .map(|o| simplicial_bar(g, &Diagram::representable(&d, o, cap), cap))
        .collect::<Result<_>>()?;
    let values: Vec<TruncSSet> = bars.iter().map(|b| b.realize()).collect();
    // f: o -> o2 in D acts from the value at o2 to the value at o
    let maps = d
        .morphisms()
        .map(|f| {
            let (o, o2) = (d.source(f), d.target(f));
            let (b2, b) = (&bars[o2.0], &bars[o.0]);
            SimplicialMap::tabulate(&values[o2.0], &values[o.0], |l, e| {
                let (a, y, x) = b2.decode(l, l, e);
                let first = b2.nerve.first(l, a);
                let u = d.hom(o2, first)[x];
                let x2 = position(d.hom(o, first), d.compose(u, f).unwrap());
                b.index(l, l, a, y, x2)
            })
        })
        .collect();
    let diagram = Diagram::new(op.clone(), values, maps)?;
    Ok((bars, diagram))
}

/// `e -> |B(E(K-, e), D, F)|`.
pub fn h_lan(k: &FinFunctor, f: &Diagram) -> Result<Diagram> {
    if !k.source().table_eq(f.shape()) {
        return Err(Error::ShapeMismatch("functor source must be the diagram shape".into()));
    }
    let e = k.target();
    let cap = f.cap();
    let kop = k.opposite();
    let bars: Vec<Bar> = e
        .objects()
        .map(|o| {
            let w = Diagram::hom_weight(e, o, cap).restrict(&kop)?;
            simplicial_bar(&w, f, cap)
        })
        .collect::<Result<_>>()?;
    let values: Vec<TruncSSet> = bars.iter().map(|b| b.realize()).collect();
    let maps = e
        .morphisms()
        .map(|g| {
            let (o, o2) = (e.source(g), e.target(g));
            let (b, b2) = (&bars[o.0], &bars[o2.0]);
            SimplicialMap::tabulate(&values[o.0], &values[o2.0], |l, el| {
                let (a, y, x) = b.decode(l, l, el);
                let last = k.obj(b.nerve.last(l, a));
                let u = e.hom(last, o)[y];
                let y2 = position(e.hom(last, o2), e.compose(g, u).unwrap());
                b2.index(l, l, a, y2, x)
            })
        })
        .collect();
    Diagram::new(e.clone(), values, maps)
}

/// Extra degeneracy data for an augmented simplicial object: the
/// augmentation `X_0 -> X_{-1}` and `s: X_n -> X_{n+1}` for `n >= -1`.
#[derive(Clone, Debug)]
pub struct ExtraDegeneracy {
    pub target: TruncSSet,
    pub augmentation: SimplicialMap,
    /// `extra[n + 1]: X_n -> X_{n+1}`.
    pub extra: Vec<SimplicialMap>,
}

/// `B(D(-, d), D, F)` together with its extra degeneracy on the weight end.
pub fn extra_degeneracy(f: &Diagram, d: ObjId) -> Result<(Bar, ExtraDegeneracy)> {
    let shape = f.shape();
    let cap = f.cap();
    let bar = simplicial_bar(&Diagram::hom_weight(shape, d, cap), f, cap)?;
    let idd = shape.identity(d);
    let augmentation = SimplicialMap::tabulate(bar.simp.level(0), f.value(d), |l, b| {
        let (a, y, x) = bar.decode(0, l, b);
        let e = bar.nerve.first(0, a);
        f.map(shape.hom(e, d)[y]).apply(l, x)
    });
    let mut extra = vec![SimplicialMap::tabulate(f.value(d), bar.simp.level(0), |l, x| {
        let a = bar.nerve.find(d, &[]).unwrap();
        bar.index(0, l, a, position(shape.hom(d, d), idd), x)
    })];
    for n in 0..cap {
        extra.push(SimplicialMap::tabulate(bar.simp.level(n), bar.simp.level(n + 1), |l, b| {
            let (a, y, x) = bar.decode(n, l, b);
            let u = shape.hom(bar.nerve.last(n, a), d)[y];
            let mut s = bar.nerve.string(n, a).to_vec();
            s.push(u);
            let a2 = bar.nerve.find(bar.nerve.first(n, a), &s).unwrap();
            bar.index(n + 1, l, a2, position(shape.hom(d, d), idd), x)
        }));
    }
    let ed = ExtraDegeneracy {
        target: f.value(d).clone(),
        augmentation,
        extra,
    };
    Ok((bar, ed))
}

/// Face `d_i: X_n -> X_{n-1}`, with the augmentation as `d_0` on `X_0`.
fn aug_face<'a>(x: &'a SimpObj, ed: &'a ExtraDegeneracy, n: usize, i: usize) -> &'a SimplicialMap {
    if n == 0 {
        &ed.augmentation
    } else {
        x.face(n, i)
    }
}

/// Checks the extra-degeneracy identities in the reversed indexing
/// `d'_i = d_{n-i}`, `s'_j = s_{n-j}`: `d'_0 s = id`, `d'_{i+1} s = s d'_i`,
/// `s'_{j+1} s = s s'_j`. Returns the failures.
pub fn check_extra_degeneracy(x: &SimpObj, ed: &ExtraDegeneracy) -> Vec<String> {
    let mut bad = Vec::new();
    let hcap = x.hcap();
    if hcap >= 1 && !ed.augmentation.after(x.face(1, 0)).same_tables(&ed.augmentation.after(x.face(1, 1))) {
        bad.push("augmentation does not equalize d0 and d1".into());
    }
    // level index t = n + 1
    for t in 0..ed.extra.len().min(hcap + 1) {
        let s = &ed.extra[t];
        let id = SimplicialMap::identity(s.source());
        // s: X_{t-1} -> X_t; d'_0 on X_t is d_t
        if !aug_face(x, ed, t, t).after(s).same_tables(&id) {
            bad.push(format!("d'0 s = id fails at level {}", t as isize - 1));
        }
        if t == 0 {
            continue;
        }
        let n = t - 1;
        for i in 0..=n {
            let lhs = aug_face(x, ed, t, n - i).after(s);
            let rhs = ed.extra[t - 1].after(aug_face(x, ed, n, n - i));
            if !lhs.same_tables(&rhs) {
                bad.push(format!("d'{} s = s d'{i} fails at level {n}", i + 1));
            }
        }
        if t + 1 < ed.extra.len() && t < hcap {
            for j in 0..=n {
                let lhs = x.degen(t, n - j).after(s);
                let rhs = ed.extra[t + 1].after(x.degen(n, n - j));
                if !lhs.same_tables(&rhs) {
                    bad.push(format!("s'{} s = s s'{j} fails at level {n}", j + 1));
                }
            }
        }
    }
    bad
}

/// `h_j = s_n ... s_{j+1} s d_{j+1} ... d_n: X_n -> X_{n+1}`.
pub fn extra_homotopy(x: &SimpObj, ed: &ExtraDegeneracy, n: usize, j: usize) -> SimplicialMap {
    let mut f = SimplicialMap::identity(x.level(n));
    for k in (j + 1..=n).rev() {
        f = x.face(k, k).after(&f);
    }
    f = ed.extra[j + 1].after(&f);
    for k in j + 1..=n {
        f = x.degen(k, k).after(&f);
    }
    f
}

/// Checks that the `h_j` form a simplicial homotopy from the map
/// `X_n -> X_{-1} -> X_n` to the identity. Returns the failures.
pub fn check_extra_homotopy(x: &SimpObj, ed: &ExtraDegeneracy) -> Vec<String> {
    let mut bad = Vec::new();
    let hcap = x.hcap();
    for n in 0..hcap {
        let h: Vec<SimplicialMap> = (0..=n).map(|j| extra_homotopy(x, ed, n, j)).collect();
        // X_n -> X_{-1}
        let mut eps = SimplicialMap::identity(x.level(n));
        for k in (1..=n).rev() {
            eps = x.face(k, k).after(&eps);
        }
        eps = ed.augmentation.after(&eps);
        let mut eta = ed.extra[0].clone();
        for k in 0..n {
            eta = x.degen(k, 0).after(&eta);
        }
        if !x.face(n + 1, 0).after(&h[0]).same_tables(&eta.after(&eps)) {
            bad.push(format!("d0 h0 is not the collapse at level {n}"));
        }
        if !x.face(n + 1, n + 1).after(&h[n]).same_tables(&SimplicialMap::identity(x.level(n))) {
            bad.push(format!("d{} h{n} is not the identity at level {n}", n + 1));
        }
        let hm: Vec<SimplicialMap> = if n > 0 {
            (0..n).map(|j| extra_homotopy(x, ed, n - 1, j)).collect()
        } else {
            Vec::new()
        };
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = x.face(n + 1, i).after(&h[j]);
                let ok = if i < j {
                    lhs.same_tables(&hm[j - 1].after(x.face(n, i)))
                } else if i == j + 1 && j < n {
                    lhs.same_tables(&x.face(n + 1, i).after(&h[j + 1]))
                } else if i > j + 1 {
                    lhs.same_tables(&hm[j].after(x.face(n, i - 1)))
                } else {
                    true
                };
                if !ok {
                    bad.push(format!("d{i} h{j} fails at level {n}"));
                }
            }
        }
        if n + 2 <= hcap {
            let hp: Vec<SimplicialMap> = (0..=n + 1).map(|j| extra_homotopy(x, ed, n + 1, j)).collect();
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = x.degen(n + 1, i).after(&h[j]);
                    let rhs = if i <= j {
                        hp[j + 1].after(x.degen(n, i))
                    } else {
                        hp[j].after(x.degen(n, i - 1))
                    };
                    if !lhs.same_tables(&rhs) {
                        bad.push(format!("s{i} h{j} fails at level {n}"));
                    }
                }
            }
        }
    }
    bad
}

/// Bar construction of a bimodule over an enriched category:
/// `coprod over a_0, ..., a_n of hom(a_{n-1}, a_n) x ... x hom(a_0, a_1) x H(a_n, a_0)`.
#[derive(Clone, Debug)]
pub struct BimoduleBar {
    pub simp: SimpObj,
    module: Bimodule,
    seqs: Vec<Vec<Vec<usize>>>,
    seq_index: Vec<HashMap<Vec<usize>, usize>>,
    parts: Vec<Glued>,
}

impl BimoduleBar {
    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn sequence(&self, n: usize, s: usize) -> &[usize] {
        &self.seqs[n][s]
    }

    pub fn find(&self, seq: &[usize]) -> Option<usize> {
        self.seq_index[seq.len() - 1].get(seq).copied()
    }

    fn sizes(&self, n: usize, l: usize, s: usize) -> Vec<usize> {
        let a = &self.seqs[n][s];
        let hom = self.module.shape();
        let mut v: Vec<usize> = (1..=n).rev().map(|j| hom.hom(a[j - 1], a[j]).len(l)).collect();
        v.push(self.module.value(a[n], a[0]).len(l));
        v
    }

    /// Element with homs `h_1, ..., h_n` (in string order) and module
    /// element `x`.
    pub fn index(&self, n: usize, l: usize, s: usize, homs: &[usize], x: usize) -> usize {
        let mut coords: Vec<usize> = homs.iter().rev().copied().collect();
        coords.push(x);
        self.parts[n].class(s, l, encode(&self.sizes(n, l, s), &coords))
    }

    /// `(sequence, h_1..h_n, x)`.
    pub fn decode(&self, n: usize, l: usize, b: usize) -> (usize, Vec<usize>, usize) {
        let (s, p) = self.parts[n].rep(l, b);
        let mut coords = decode(&self.sizes(n, l, s), p);
        let x = coords.pop().unwrap();
        coords.reverse();
        (s, coords, x)
    }

    pub fn realize(&self) -> TruncSSet {
        self.simp.realize()
    }
}

pub fn bimodule_bar(h: &Bimodule, hcap: usize) -> Result<BimoduleBar> {
    let s = h.shape();
    let k = s.num_objects();
    let cap = h.cap();
    let mut seqs: Vec<Vec<Vec<usize>>> = vec![(0..k).map(|a| vec![a]).collect()];
    for n in 1..=hcap {
        let mut next = Vec::new();
        for q in &seqs[n - 1] {
            for b in 0..k {
                if s.hom(*q.last().unwrap(), b).len(0) > 0 {
                    let mut r = q.clone();
                    r.push(b);
                    next.push(r);
                }
            }
        }
        seqs.push(next);
    }
    let seq_index = seqs
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, q)| (q.clone(), i)).collect())
        .collect();
    let mut parts = Vec::new();
    for (n, level) in seqs.iter().enumerate() {
        let mut tags = Vec::new();
        let mut summands = Vec::new();
        for a in level {
            let mut factors: Vec<&TruncSSet> = (1..=n).rev().map(|j| s.hom(a[j - 1], a[j])).collect();
            factors.push(h.value(a[n], a[0]));
            summands.push(product_many(&factors, cap)?);
            tags.push(a.iter().map(|&o| s.object_name(o)).collect::<Vec<_>>().join(">"));
        }
        parts.push(coproduct(&tags, &summands, cap)?);
    }
    let mut bar = BimoduleBar {
        simp: SimpObj::new_unchecked(Vec::new(), Vec::new(), Vec::new()),
        module: h.clone(),
        seqs,
        seq_index,
        parts,
    };
    let faces = (0..=hcap)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            (0..=n)
                .map(|i| {
                    SimplicialMap::tabulate(&bar.parts[n].sset, &bar.parts[n - 1].sset, |l, b| {
                        let (q, hs, x) = bar.decode(n, l, b);
                        let a = &bar.seqs[n][q];
                        let mut a2 = a.clone();
                        a2.remove(i);
                        let (mut hs2, mut x2) = (hs.clone(), x);
                        if i == 0 {
                            x2 = h.act_left(a[n], a[0], a[1], l, hs[0], x);
                            hs2.remove(0);
                        } else if i == n {
                            x2 = h.act_right(a[n], a[0], a[n - 1], l, x, hs[n - 1]);
                            hs2.pop();
                        } else {
                            let c = s.compose(a[i - 1], a[i], a[i + 1], l, hs[i], hs[i - 1]);
                            hs2.remove(i);
                            hs2[i - 1] = c;
                        }
                        bar.index(n - 1, l, bar.find(&a2).unwrap(), &hs2, x2)
                    })
                })
                .collect()
        })
        .collect();
    let degens = (0..=hcap)
        .map(|n| {
            if n == hcap {
                return Vec::new();
            }
            (0..=n)
                .map(|i| {
                    SimplicialMap::tabulate(&bar.parts[n].sset, &bar.parts[n + 1].sset, |l, b| {
                        let (q, mut hs, x) = bar.decode(n, l, b);
                        let mut a = bar.seqs[n][q].clone();
                        a.insert(i, a[i]);
                        hs.insert(i, s.unit(a[i], l));
                        bar.index(n + 1, l, bar.find(&a).unwrap(), &hs, x)
                    })
                })
                .collect()
        })
        .collect();
    let levels = bar.parts.iter().map(|p| p.sset.clone()).collect();
    bar.simp = SimpObj::new_unchecked(levels, faces, degens);
    Ok(bar)
}

/// The cyclic bar construction of a bimodule.
pub fn cyclic_bar(h: &Bimodule, hcap: usize) -> Result<BimoduleBar> {
    bimodule_bar(h, hcap)
}

/// Enriched two-sided bar `B(G, D, F)`.
pub fn enriched_simplicial_bar(g: &SDiagram, f: &SDiagram, hcap: usize) -> Result<BimoduleBar> {
    bimodule_bar(&Bimodule::external(g, f)?, hcap)
}

/// The enriched bar resolution `d -> |B(hom(-, d), D, F)|` as an enriched
/// diagram, acting by postcomposition.
pub fn enriched_bar_resolution(f: &SDiagram) -> Result<(Vec<BimoduleBar>, SDiagram)> {
    let s = f.shape();
    let k = s.num_objects();
    let bars: Vec<BimoduleBar> = (0..k)
        .map(|d| enriched_simplicial_bar(&SDiagram::hom_weight(s, d), f, f.cap()))
        .collect::<Result<_>>()?;
    let values: Vec<TruncSSet> = bars.iter().map(|b| b.realize()).collect();
    let act = (0..k)
        .map(|d| {
            (0..k)
                .map(|d2| {
                    let dom = product(s.hom(d, d2), &values[d]).unwrap();
                    SimplicialMap::tabulate(&dom, &values[d2], |l, i| {
                        let per = values[d].len(l);
                        let (g, e) = (i / per, i % per);
                        let (q, hs, x) = bars[d].decode(l, l, e);
                        let a = bars[d].sequence(l, q);
                        let fa = f.value(a[0]);
                        let (u, y) = (x / fa.len(l), x % fa.len(l));
                        let u2 = s.compose(a[l], d, d2, l, g, u);
                        let q2 = bars[d2].find(a).unwrap();
                        bars[d2].index(l, l, q2, &hs, pair_index(fa, l, u2, y))
                    })
                })
                .collect()
        })
        .collect();
    let diagram = SDiagram::new(s.clone(), values, act)?;
    Ok((bars, diagram))
}

/// The enriched weight resolution `d -> |B(G, D, hom(d, -))|` over `D^op`.
pub fn enriched_weight_resolution(g: &SDiagram) -> Result<(Vec<BimoduleBar>, SDiagram)> {
    let op = g.shape();
    let s = op.opposite();
    let k = s.num_objects();
    let bars: Vec<BimoduleBar> = (0..k)
        .map(|d| enriched_simplicial_bar(g, &SDiagram::representable(&s, d), g.cap()))
        .collect::<Result<_>>()?;
    let values: Vec<TruncSSet> = bars.iter().map(|b| b.realize()).collect();
    // op.hom(d, d2) = hom(d2, d) acts by precomposition
    let act = (0..k)
        .map(|d| {
            (0..k)
                .map(|d2| {
                    let dom = product(op.hom(d, d2), &values[d]).unwrap();
                    SimplicialMap::tabulate(&dom, &values[d2], |l, i| {
                        let per = values[d].len(l);
                        let (h, e) = (i / per, i % per);
                        let (q, hs, x) = bars[d].decode(l, l, e);
                        let a = bars[d].sequence(l, q);
                        let fa = s.hom(d, a[0]);
                        let (y, u) = (x / fa.len(l), x % fa.len(l));
                        let u2 = s.compose(d2, d, a[0], l, u, h);
                        let q2 = bars[d2].find(a).unwrap();
                        bars[d2].index(l, l, q2, &hs, pair_index(s.hom(d2, a[0]), l, y, u2))
                    })
                })
                .collect()
        })
        .collect();
    let diagram = SDiagram::new(op.clone(), values, act)?;
    Ok((bars, diagram))
}

/// `H` as an enriched diagram over `D^op (x) D`, and the hom weight
/// `(a, b) -> hom(b, a)` over its opposite.
pub fn bimodule_as_diagram(h: &Bimodule) -> Result<(SDiagram, SDiagram)> {
    let s = h.shape();
    let k = s.num_objects();
    let pair = s.opposite().tensor(s)?;
    let wshape = pair.opposite();
    let values: Vec<TruncSSet> = (0..k * k).map(|p| h.value(p / k, p % k).clone()).collect();
    // pair.hom((a, b), (a2, b2)) = hom(a2, a) x hom(b, b2)
    let act = (0..k * k)
        .map(|p| {
            (0..k * k)
                .map(|p2| {
                    let ((a, b), (a2, b2)) = ((p / k, p % k), (p2 / k, p2 % k));
                    let dom = product(pair.hom(p, p2), &values[p]).unwrap();
                    SimplicialMap::tabulate(&dom, &values[p2], |l, i| {
                        let per = values[p].len(l);
                        let (fg, x) = (i / per, i % per);
                        let per_g = s.hom(b, b2).len(l);
                        let (f, g) = (fg / per_g, fg % per_g);
                        let y = h.act_right(a, b, a2, l, x, f);
                        h.act_left(a2, b, b2, l, g, y)
                    })
                })
                .collect()
        })
        .collect();
    let module = SDiagram::new(pair.clone(), values, act)?;
    let wvalues: Vec<TruncSSet> = (0..k * k).map(|p| s.hom(p % k, p / k).clone()).collect();
    // wshape.hom((a2, b2), (a, b)) = pair.hom((a, b), (a2, b2)) = hom(a2, a) x hom(b, b2)
    let wact = (0..k * k)
        .map(|p2| {
            (0..k * k)
                .map(|p| {
                    let ((a2, b2), (a, b)) = ((p2 / k, p2 % k), (p / k, p % k));
                    let dom = product(wshape.hom(p2, p), &wvalues[p2]).unwrap();
                    SimplicialMap::tabulate(&dom, &wvalues[p], |l, i| {
                        let per = wvalues[p2].len(l);
                        let (fg, u) = (i / per, i % per);
                        let per_g = s.hom(b, b2).len(l);
                        let (f, g) = (fg / per_g, fg % per_g);
                        // u: b2 -> a2, result f u g: b -> a
                        let ug = s.compose(b, b2, a2, l, u, g);
                        s.compose(b, a2, a, l, f, ug)
                    })
                })
                .collect()
        })
        .collect();
    let weight = SDiagram::new(wshape, wvalues, wact)?;
    Ok((weight, module))
}

/// The homotopy coend as the weighted bar over `D^op (x) D`.
pub fn hocoend(h: &Bimodule) -> Result<TruncSSet> {
    let (w, m) = bimodule_as_diagram(h)?;
    Ok(enriched_simplicial_bar(&w, &m, h.cap())?.realize())
}

/// The homotopy coend as the cyclic bar.
pub fn hocoend_cyclic(h: &Bimodule) -> Result<TruncSSet> {
    Ok(cyclic_bar(h, h.cap())?.realize())
}

/// Discrete shapes: the canonical matching of `B(G, D, F)` with the enriched
/// bar of the discrete enrichment. Checks that it is a bijection on every
/// bisimplicial level commuting with all structure maps.
pub fn compare_discrete_bars(plain: &Bar, enriched: &BimoduleBar) -> Vec<String> {
    let mut bad = Vec::new();
    let d: &FinCat = &plain.nerve.cat;
    let hcap = plain.simp.hcap();
    if enriched.simp.hcap() != hcap {
        return vec!["horizontal caps differ".into()];
    }
    let rename: Vec<SimplicialMap> = (0..=hcap)
        .map(|n| {
            SimplicialMap::tabulate(plain.simp.level(n), enriched.simp.level(n), |l, b| {
                let (a, y, x) = plain.decode(n, l, b);
                let seq: Vec<usize> = (0..=n).map(|i| plain.nerve.vertex(n, a, i).0).collect();
                let homs: Vec<usize> = plain
                    .nerve
                    .string(n, a)
                    .iter()
                    .map(|&m| position(d.hom(d.source(m), d.target(m)), m))
                    .collect();
                let fx = plain.diagram().value(plain.nerve.first(n, a));
                enriched.index(n, l, enriched.find(&seq).unwrap(), &homs, pair_index(fx, l, y, x))
            })
        })
        .collect();
    for n in 0..=hcap {
        if !rename[n].is_iso() {
            bad.push(format!("renaming is not bijective at horizontal level {n}"));
        }
        for i in 0..=n {
            if n > 0 && !rename[n - 1].after(plain.simp.face(n, i)).same_tables(&enriched.simp.face(n, i).after(&rename[n])) {
                bad.push(format!("face d{i} differs at horizontal level {n}"));
            }
            if n < hcap && !rename[n + 1].after(plain.simp.degen(n, i)).same_tables(&enriched.simp.degen(n, i).after(&rename[n])) {
                bad.push(format!("degeneracy s{i} differs at horizontal level {n}"));
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCat;
    use crate::diagram::SSetCat;
    use crate::simpset::{boundary, homology, homology_iso_witness, is_isomorphic, point, HomologyGroup};

    fn span_of_points(cap: usize) -> Diagram {
        let d = FinCat::span();
        Diagram::from_fn(&d, |o| if d.object_name(o) == "b" { boundary(1, cap) } else { point(cap) }, |m, a, b| {
            if d.is_identity(m) {
                SimplicialMap::identity(a)
            } else {
                SimplicialMap::tabulate(a, b, |_, _| 0)
            }
        })
        .unwrap()
    }

    #[test]
    fn unit_bar_levels_are_nerve_levels() {
        let d = FinCat::span();
        let f = Diagram::terminal(&d, 3);
        let b = unit_bar(&f, 3).unwrap();
        b.simp.audit().unwrap();
        for n in 0..=3 {
            assert_eq!(b.simp.level(n).len(0), b.nerve.sset.len(n));
        }
    }

    #[test]
    fn classifying_space_of_z2() {
        let d = FinCat::cyclic_group(2);
        let x = hocolim(&Diagram::terminal(&d, 4)).unwrap();
        let h = homology(&x, 3).unwrap();
        assert_eq!(h[0], HomologyGroup::free(1));
        assert_eq!(h[1], HomologyGroup::with_torsion(0, &[2]));
        assert!(h[2].is_zero());
        assert_eq!(h[3], HomologyGroup::with_torsion(0, &[2]));
    }

    #[test]
    fn span_gives_circle() {
        let f = span_of_points(4);
        let x = hocolim(&f).unwrap();
        let h = homology(&x, 2).unwrap();
        assert_eq!(h, vec![HomologyGroup::free(1), HomologyGroup::free(1), HomologyGroup::free(0)]);
    }

    #[test]
    fn resolution_is_augmented() {
        let f = span_of_points(3);
        let r = bar_resolution(&f).unwrap();
        for o in f.shape().objects() {
            assert!(homology_iso_witness(r.epsilon.component(o), 2).unwrap());
            let (bar, ed) = extra_degeneracy(&f, o).unwrap();
            assert!(check_extra_degeneracy(&bar.simp, &ed).is_empty(), "{:?}", check_extra_degeneracy(&bar.simp, &ed));
            assert!(check_extra_homotopy(&bar.simp, &ed).is_empty(), "{:?}", check_extra_homotopy(&bar.simp, &ed));
        }
    }

    #[test]
    fn discrete_bars_agree() {
        let d = FinCat::linear(2);
        let f = Diagram::representable(&d, ObjId(0), 3).tensor_sset(&boundary(1, 3)).unwrap();
        let g = Diagram::hom_weight(&d, ObjId(2), 3);
        let plain = simplicial_bar(&g, &f, 3).unwrap();
        let s = SSetCat::discrete(&d, 3);
        let sg = SDiagram::from_diagram(&g, &s.opposite()).unwrap();
        let sf = SDiagram::from_diagram(&f, &s).unwrap();
        let enr = enriched_simplicial_bar(&sg, &sf, 3).unwrap();
        enr.simp.audit().unwrap();
        assert!(compare_discrete_bars(&plain, &enr).is_empty());
    }

    #[test]
    fn pullout_over_span() {
        let f = span_of_points(3);
        let d = f.shape().clone();
        let g = Diagram::terminal(&d.opposite(), 3);
        let whole = simplicial_bar(&g, &f, 3).unwrap().realize();
        let r = bar_resolution(&f).unwrap();
        let left = crate::diagram::tensor_product(&g, &r.diagram).unwrap();
        assert!(is_isomorphic(&whole, &left.sset).is_some());
        let (_, w) = weight_bar_resolution(&g).unwrap();
        let right = crate::diagram::tensor_product(&w, &f).unwrap();
        assert!(is_isomorphic(&whole, &right.sset).is_some());
    }

    #[test]
    fn coends_agree_on_hom() {
        let d = FinCat::linear(1);
        let s = SSetCat::discrete(&d, 3);
        let h = Bimodule::hom(&s);
        let full = hocoend(&h).unwrap();
        let cyc = hocoend_cyclic(&h).unwrap();
        assert_eq!(homology(&full, 2).unwrap(), homology(&cyc, 2).unwrap());
    }

    #[test]
    fn homotopy_left_kan_along_identity() {
        let f = span_of_points(3);
        let k = FinFunctor::identity(f.shape());
        let l = h_lan(&k, &f).unwrap();
        let r = bar_resolution(&f).unwrap();
        for o in f.shape().objects() {
            assert!(is_isomorphic(l.value(o), r.diagram.value(o)).is_some());
        }
    }
}
