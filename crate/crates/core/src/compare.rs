//! Checkers comparing the models of homotopy colimits: local and bar
//! formulas, the simplicial replacement over the category of simplices,
//! Reedy latching maps, comma-category lemmas, and homotopy invariance.

use std::collections::HashMap;
use std::fmt;

use crate::barcobar::{
    bar_map, bar_resolution, enriched_bar_resolution, enriched_simplicial_bar, enriched_weight_resolution, simplicial_bar, unit_bar,
    weight_bar_resolution, SimpObj,
};
use crate::diagram::{colimit, enriched_tensor_product, lan, tensor_product, Diagram, NatTransf, SDiagram};
use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor, MorId, ObjId};
use crate::nerve::{
    category_of_simplices, dimension_functor, first_vertex_functor, last_vertex_functor, nerve_map, simplex_category, Nerve,
    ReedyStructure, SimplexCategory,
};
use crate::simpset::{
    glue, homology, homology_iso_witness, is_isomorphic, pair_index, pullback, standard_simplex, tabulate, vertex_label, SimplicialMap,
    TruncSSet,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "{tag} {}", self.name)
        } else {
            write!(f, "{tag} {}: {}", self.name, self.detail)
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub title: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>) -> VerificationReport {
        VerificationReport {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        Ok(())
    }
}

fn iso_check(name: &str, x: &TruncSSet, y: &TruncSSet) -> Check {
    let found = is_isomorphic(x, y).is_some();
    Check::new(name, found, format!("sizes {:?} and {:?}", x.level_sizes(), y.level_sizes()))
}

/// The weight `d -> N(d | D)` over `D^op`; an `n`-simplex at `d` is a
/// string `b_0 -> ... -> b_n` with an arrow `u: d -> b_0`.
#[derive(Clone, Debug)]
pub struct NerveWeight {
    pub diagram: Diagram,
    pub nerve: Nerve,
    elems: Vec<Vec<Vec<(usize, MorId)>>>,
    index: Vec<Vec<HashMap<(usize, MorId), usize>>>,
}

impl NerveWeight {
    /// `(string, u)` of element `x` at level `n` over `d`.
    pub fn element(&self, d: ObjId, n: usize, x: usize) -> (usize, MorId) {
        self.elems[d.0][n][x]
    }

    pub fn find(&self, d: ObjId, n: usize, string: usize, u: MorId) -> Option<usize> {
        self.index[d.0][n].get(&(string, u)).copied()
    }
}

pub fn nerve_weight(d: &FinCat, cap: usize) -> Result<NerveWeight> {
    let nerve = Nerve::new(d, cap);
    let elems: Vec<Vec<Vec<(usize, MorId)>>> = d
        .objects()
        .map(|o| {
            (0..=cap)
                .map(|n| {
                    (0..nerve.sset.len(n))
                        .flat_map(|b| d.hom(o, nerve.first(n, b)).iter().map(move |&u| (b, u)))
                        .collect()
                })
                .collect()
        })
        .collect();
    let index: Vec<Vec<HashMap<(usize, MorId), usize>>> = elems
        .iter()
        .map(|per| per.iter().map(|l| l.iter().enumerate().map(|(i, &e)| (e, i)).collect()).collect())
        .collect();
    let values: Vec<TruncSSet> = d
        .objects()
        .map(|o| {
            let e = &elems[o.0];
            let ix = &index[o.0];
            let labels = (0..=cap)
                .map(|n| {
                    e[n].iter()
                        .map(|&(b, u)| {
                            let mut parts = vec![d.morphism_name(u).to_string()];
                            parts.extend(nerve.string(n, b).iter().map(|&f| d.morphism_name(f).to_string()));
                            parts.join("|")
                        })
                        .collect()
                })
                .collect();
            tabulate(
                cap,
                labels,
                |n, i, x| {
                    let (b, u) = e[n][x];
                    let u2 = if i == 0 { d.compose(nerve.string(n, b)[0], u).unwrap() } else { u };
                    ix[n - 1][&(nerve.sset.face(n, i, b), u2)]
                },
                |n, i, x| {
                    let (b, u) = e[n][x];
                    ix[n + 1][&(nerve.sset.degen(n, i, b), u)]
                },
            )
        })
        .collect();
    let maps = d
        .morphisms()
        .map(|f| {
            let (o, o2) = (d.source(f), d.target(f));
            SimplicialMap::tabulate(&values[o2.0], &values[o.0], |n, x| {
                let (b, u) = elems[o2.0][n][x];
                index[o.0][n][&(b, d.compose(u, f).unwrap())]
            })
        })
        .collect();
    let diagram = Diagram::new(d.opposite(), values, maps)?;
    Ok(NerveWeight {
        diagram,
        nerve,
        elems,
        index,
    })
}

/// `N(- | D) (.)_D F` against `|B(*, D, F)|` through the canonical map
/// `(d, u, b, x) -> (b, F(u) x)`.
pub fn verify_loc_eq_bar(f: &Diagram) -> Result<Check> {
    let d = f.shape();
    let cap = f.cap();
    let w = nerve_weight(d, cap)?;
    let t = tensor_product(&w.diagram, f)?;
    let bar = unit_bar(f, cap)?;
    let real = bar.realize();
    let levels: Vec<Vec<usize>> = (0..=cap)
        .map(|n| {
            (0..t.sset.len(n))
                .map(|c| {
                    let (o, p) = t.rep(n, c);
                    let per = f.value(ObjId(o)).len(n);
                    let (e, x) = (p / per, p % per);
                    let (b, u) = w.element(ObjId(o), n, e);
                    bar.index(n, n, b, 0, f.map(u).apply(n, x))
                })
                .collect()
        })
        .collect();
    let map = SimplicialMap::new(t.sset.clone(), real.clone(), levels)?;
    Ok(Check::new(
        "local formula equals the bar construction",
        map.is_iso(),
        format!("sizes {:?}", real.level_sizes()),
    ))
}

/// `B(G, D, F)` against `G (.) B(D, D, F)` and `B(G, D, D) (.) F`.
pub fn verify_bar_pullout(g: &Diagram, f: &Diagram) -> Result<Vec<Check>> {
    let whole = simplicial_bar(g, f, f.cap())?.realize();
    let res = bar_resolution(f)?;
    let left = tensor_product(g, &res.diagram)?;
    let (_, w) = weight_bar_resolution(g)?;
    let right = tensor_product(&w, f)?;
    Ok(vec![
        iso_check("bar pulls out on the right", &whole, &left.sset),
        iso_check("bar pulls out on the left", &whole, &right.sset),
    ])
}

/// Enriched form of [`verify_bar_pullout`].
pub fn verify_enriched_bar_pullout(g: &SDiagram, f: &SDiagram) -> Result<Vec<Check>> {
    let whole = enriched_simplicial_bar(g, f, f.cap())?.realize();
    let (_, res) = enriched_bar_resolution(f)?;
    let left = enriched_tensor_product(g, &res)?;
    let (_, w) = enriched_weight_resolution(g)?;
    let right = enriched_tensor_product(&w, f)?;
    Ok(vec![
        iso_check("enriched bar pulls out on the right", &whole, &left.sset),
        iso_check("enriched bar pulls out on the left", &whole, &right.sset),
    ])
}

fn linear_mor(n: usize, i: usize, j: usize) -> MorId {
    MorId((0..i).map(|k| n + 1 - k).sum::<usize>() + (j - i))
}

/// The functor `[n] -> D` of a nerve simplex.
pub fn simplex_functor(nerve: &Nerve, n: usize, a: usize) -> FinFunctor {
    let lin = FinCat::linear(n);
    let objects = (0..=n).map(|i| nerve.vertex(n, a, i)).collect();
    let morphisms = lin.morphisms().map(|m| nerve.arrow(n, a, lin.source(m).0, lin.target(m).0)).collect();
    FinFunctor::new_unchecked(lin, nerve.cat.clone(), objects, morphisms)
}

/// The simplicial replacement `Q F` over the category of simplices, with
/// `Q F(a) = N(- | [n]) (.)_[n] a^* F` and the comparison `Q F -> T^* F`.
#[derive(Clone, Debug)]
pub struct Dhks {
    pub simplices: SimplexCategory,
    pub nerve: Nerve,
    pub last_vertex: FinFunctor,
    pub q: Diagram,
    pub delta: NatTransf,
}

pub fn dhks(f: &Diagram) -> Result<Dhks> {
    let d = f.shape();
    let cap = f.cap();
    let nerve = Nerve::new(d, cap);
    let sc = category_of_simplices(&nerve.sset, false);
    let weights: Vec<NerveWeight> = (0..=cap).map(|n| nerve_weight(&FinCat::linear(n), cap)).collect::<Result<_>>()?;
    let pulled: Vec<Diagram> = sc
        .simplices
        .iter()
        .map(|&(n, a)| f.restrict(&simplex_functor(&nerve, n, a)))
        .collect::<Result<_>>()?;
    let glued = sc
        .simplices
        .iter()
        .zip(&pulled)
        .map(|(&(n, _), p)| tensor_product(&weights[n].diagram, p))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<TruncSSet> = glued.iter().map(|g| g.sset.clone()).collect();
    let maps = sc
        .cat
        .morphisms()
        .map(|m| {
            let (s, t) = (sc.cat.source(m), sc.cat.target(m));
            let theta = &sc.operators[m.0];
            let (mdim, ndim) = (sc.dim(s), sc.dim(t));
            let (ws, wt) = (&weights[mdim], &weights[ndim]);
            SimplicialMap::tabulate(&values[s.0], &values[t.0], |l, c| {
                let (i, p) = glued[s.0].rep(l, c);
                let per = pulled[s.0].value(ObjId(i)).len(l);
                let (e, x) = (p / per, p % per);
                let (b, u) = ws.element(ObjId(i), l, e);
                let start = ws.nerve.first(l, b);
                let string: Vec<MorId> = ws
                    .nerve
                    .string(l, b)
                    .iter()
                    .map(|&g| {
                        let lin = &ws.nerve.cat;
                        linear_mor(ndim, theta[lin.source(g).0], theta[lin.target(g).0])
                    })
                    .collect();
                let b2 = wt.nerve.find(ObjId(theta[start.0]), &string).unwrap();
                let lin = &ws.nerve.cat;
                let u2 = linear_mor(ndim, theta[lin.source(u).0], theta[lin.target(u).0]);
                let e2 = wt.find(ObjId(theta[i]), l, b2, u2).unwrap();
                let per2 = pulled[t.0].value(ObjId(theta[i])).len(l);
                glued[t.0].class(theta[i], l, e2 * per2 + x)
            })
        })
        .collect();
    // functorial by construction; checked against `violations` in tests
    // since the composable pairs grow quickly with the cap
    let q = Diagram::new_unchecked(sc.cat.clone(), values, maps)?;
    let last_vertex = last_vertex_functor(&sc, &nerve)?;
    let target = f.restrict(&last_vertex)?;
    let components = sc
        .simplices
        .iter()
        .enumerate()
        .map(|(o, &(n, a))| {
            SimplicialMap::tabulate(q.value(ObjId(o)), target.value(ObjId(o)), |l, c| {
                let (i, p) = glued[o].rep(l, c);
                let x = p % pulled[o].value(ObjId(i)).len(l);
                f.map(nerve.arrow(n, a, i, n)).apply(l, x)
            })
        })
        .collect();
    let delta = NatTransf::new(q.clone(), target, components)?;
    Ok(Dhks {
        simplices: sc,
        nerve,
        last_vertex,
        q,
        delta,
    })
}

pub fn verify_dhks(f: &Diagram) -> Result<Vec<Check>> {
    let cap = f.cap();
    let data = dhks(f)?;
    let colim = colimit(&data.q)?;
    let hoc = unit_bar(f, cap)?.realize();
    let via_lan = colimit(&lan(&data.last_vertex, &data.q)?.diagram)?;
    let reedy = is_reedy_cofibrant(&data.q, &data.simplices.reedy, None)?;
    let mut bad_delta = Vec::new();
    for o in data.simplices.cat.objects() {
        if !homology_iso_witness(data.delta.component(o), cap - 1)? {
            bad_delta.push(data.simplices.cat.object_name(o).to_string());
        }
    }
    Ok(vec![
        iso_check("colimit of the replacement is the homotopy colimit", &colim.sset, &hoc),
        iso_check("colimit of the replacement through the last-vertex extension", &colim.sset, &via_lan.sset),
        Check::new("replacement is Reedy cofibrant", reedy.is_empty(), reedy.join(", ")),
        Check::new(
            "comparison to the last-vertex pullback is a homology isomorphism",
            bad_delta.is_empty(),
            bad_delta.join(", "),
        ),
    ])
}

/// The latching object at `o` and its map to `X(o)`.
#[derive(Clone, Debug)]
pub struct Latching {
    pub sset: TruncSSet,
    pub map: SimplicialMap,
}

pub fn latching(x: &Diagram, reedy: &ReedyStructure, o: ObjId) -> Result<Latching> {
    let cat = x.shape();
    let direct: Vec<MorId> = cat.incoming(o).iter().copied().filter(|&m| reedy.direct[m.0] && !cat.is_identity(m)).collect();
    let tags: Vec<String> = direct.iter().map(|&m| cat.morphism_name(m).to_string()).collect();
    let summands: Vec<TruncSSet> = direct.iter().map(|&m| x.value(cat.source(m)).clone()).collect();
    let pos: HashMap<MorId, usize> = direct.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let g = glue(&tags, &summands, x.cap(), |n, union| {
        for (j, &m) in direct.iter().enumerate() {
            let src = cat.source(m);
            for &u in cat.incoming(src) {
                if !reedy.direct[u.0] || cat.is_identity(u) {
                    continue;
                }
                let m2 = cat.compose(m, u).unwrap();
                let j2 = pos[&m2];
                for y in 0..x.value(cat.source(u)).len(n) {
                    union((j2, y), (j, x.map(u).apply(n, y)));
                }
            }
        }
    })?;
    let map = SimplicialMap::tabulate(&g.sset, x.value(o), |n, c| {
        let (j, y) = g.rep(n, c);
        x.map(direct[j]).apply(n, y)
    });
    Ok(Latching { sset: g.sset, map })
}

/// Objects (up to `max_degree`) whose latching map is not injective.
pub fn is_reedy_cofibrant(x: &Diagram, reedy: &ReedyStructure, max_degree: Option<usize>) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for o in x.shape().objects() {
        if max_degree.is_some_and(|m| reedy.degree[o.0] > m) {
            continue;
        }
        if !latching(x, reedy, o)?.map.is_injective() {
            bad.push(x.shape().object_name(o).to_string());
        }
    }
    Ok(bad)
}

/// Reedy cofibrancy of a simplicial object, by latching maps over the
/// truncated `Delta^op`.
pub fn simplicial_reedy_failures(x: &SimpObj, max_degree: usize) -> Result<Vec<String>> {
    let delta = simplex_category(x.hcap(), true);
    let d = x.to_diagram(&delta)?;
    is_reedy_cofibrant(&d, &delta.reedy, Some(max_degree))
}

fn yoneda(nerve: &Nerve, n: usize, a: usize) -> SimplicialMap {
    let cap = nerve.cap();
    let dn = standard_simplex(n, cap);
    SimplicialMap::tabulate(&dn, &nerve.sset, |l, t| {
        let theta: Vec<usize> = dn.vertices(l, t).into_iter().map(|v| dn.label(0, v).parse().unwrap()).collect();
        nerve.sset.apply_operator(n, a, &theta)
    })
}

/// Index map `Delta^m x_K Y -> Delta^n x_K Y` after pushing the simplex
/// coordinate along `theta`.
fn push_first(src: &TruncSSet, tgt: &TruncSSet, first_m: &TruncSSet, theta: &[usize], n: usize) -> SimplicialMap {
    SimplicialMap::tabulate(src, tgt, |l, z| {
        let label = src.label(l, z);
        let inner = &label[1..label.len() - 1];
        let cut = inner.find(',').unwrap();
        let (t, rest) = (&inner[..cut], &inner[cut + 1..]);
        let tdx = first_m.index_of(l, t).unwrap();
        let verts: Vec<usize> = first_m.vertices(l, tdx).into_iter().map(|v| theta[first_m.label(0, v).parse::<usize>().unwrap()]).collect();
        tgt.index_of(l, &format!("({},{})", vertex_label(&verts, n), rest)).unwrap()
    })
}

/// `a -> Delta^n x_{N D} N E` over the category of simplices of `N D`,
/// for `h: E -> D`.
pub fn lambda_fiber(h: &FinFunctor, cap: usize) -> Result<(SimplexCategory, Diagram)> {
    let nd = Nerve::new(h.target(), cap);
    let ne = Nerve::new(h.source(), cap);
    let nh = nerve_map(h, &ne, &nd);
    let sc = category_of_simplices(&nd.sset, false);
    fiber_diagram(&sc, &nd, &nh)
}

fn fiber_diagram(sc: &SimplexCategory, nd: &Nerve, leg: &SimplicialMap) -> Result<(SimplexCategory, Diagram)> {
    let cap = nd.cap();
    let simplices: Vec<TruncSSet> = (0..=cap).map(|n| standard_simplex(n, cap)).collect();
    let values: Vec<TruncSSet> = sc
        .simplices
        .iter()
        .map(|&(n, a)| Ok(pullback(&yoneda(nd, n, a), leg)?.0))
        .collect::<Result<_>>()?;
    let maps = sc
        .cat
        .morphisms()
        .map(|m| {
            let (s, t) = (sc.cat.source(m), sc.cat.target(m));
            push_first(&values[s.0], &values[t.0], &simplices[sc.dim(s)], &sc.operators[m.0], sc.dim(t))
        })
        .collect();
    let d = Diagram::new(sc.cat.clone(), values, maps)?;
    Ok((sc.clone(), d))
}

/// `Lan_{S^op} Lambda_H` against `N(- | H)`, objectwise.
pub fn verify_lan_comma(h: &FinFunctor, cap: usize) -> Result<Check> {
    let d = h.target();
    let nd = Nerve::new(d, cap);
    let (_, lam) = lambda_fiber(h, cap)?;
    let sc_op = category_of_simplices(&nd.sset, true);
    let s_op = first_vertex_functor(&sc_op, &nd)?.opposite();
    let lam = lam.reshape(s_op.source())?;
    let l = lan(&s_op, &lam)?;
    let mut bad = Vec::new();
    for o in d.objects() {
        let comma = FinCat::comma_under(h, o);
        let nc = Nerve::new(&comma.cat, cap).sset;
        if is_isomorphic(l.diagram.value(o), &nc).is_none() {
            bad.push(d.object_name(o).to_string());
        }
    }
    Ok(Check::new(
        "extension of the fibers along the first vertex is the under-category nerve",
        bad.is_empty(),
        bad.join(", "),
    ))
}

/// `colim_a (Delta^n x_{N D} Delta^m) = Delta^m` for every `b` of
/// dimension `m <= max_dim`.
pub fn verify_lan_comma2(d: &FinCat, cap: usize, max_dim: usize) -> Result<Check> {
    let nd = Nerve::new(d, cap);
    let sc = category_of_simplices(&nd.sset, false);
    let mut bad = Vec::new();
    let mut count = 0;
    for m in 0..=max_dim.min(cap) {
        for b in 0..nd.sset.len(m) {
            let (_, lam) = fiber_diagram(&sc, &nd, &yoneda(&nd, m, b))?;
            let c = colimit(&lam)?;
            count += 1;
            if is_isomorphic(&c.sset, &standard_simplex(m, cap)).is_none() {
                bad.push(nd.sset.label(m, b).to_string());
            }
        }
    }
    Ok(Check::new(
        "colimit of the fibers over a simplex is the simplex",
        bad.is_empty(),
        if bad.is_empty() { format!("{count} simplices") } else { bad.join(", ") },
    ))
}

/// `(Lan_{K^op} G) (.)_E F` against `G (.)_D K^* F`.
pub fn verify_lan_adjt(k: &FinFunctor, g: &Diagram, f: &Diagram) -> Result<Check> {
    let lg = lan(&k.opposite(), g)?;
    let left = tensor_product(&lg.diagram, f)?;
    let right = tensor_product(g, &f.restrict(k)?)?;
    Ok(iso_check("weighted extension is adjoint to restriction", &left.sset, &right.sset))
}

/// `Lan_Sigma` of `a -> G(a_n) x F(a_0)` over `Delta^op D` against the bar
/// levels, through the unit of the extension.
pub fn verify_bar_eq_lan(g: &Diagram, f: &Diagram) -> Result<Vec<Check>> {
    let cap = f.cap();
    let bar = simplicial_bar(g, f, cap)?;
    let nd = &bar.nerve;
    let sc = category_of_simplices(&nd.sset, true);
    let delta = simplex_category(cap, true);
    let sigma = dimension_functor(&sc, &delta);
    let values: Vec<TruncSSet> = sc
        .simplices
        .iter()
        .map(|&(n, a)| crate::simpset::product(g.value(nd.last(n, a)), f.value(nd.first(n, a))))
        .collect::<Result<_>>()?;
    let maps = sc
        .cat
        .morphisms()
        .map(|m| {
            let (s, t) = (sc.cat.source(m), sc.cat.target(m));
            let (n, a) = sc.simplices[s.0];
            let theta = &sc.operators[m.0];
            let k = theta.len() - 1;
            let gm = g.map(nd.arrow(n, a, theta[k], n));
            let fm = f.map(nd.arrow(n, a, 0, theta[0]));
            let fsrc = f.value(nd.first(n, a));
            let ftgt = fm.target().clone();
            SimplicialMap::tabulate(&values[s.0], &values[t.0], |l, p| {
                let (y, x) = (p / fsrc.len(l), p % fsrc.len(l));
                pair_index(&ftgt, l, gm.apply(l, y), fm.apply(l, x))
            })
        })
        .collect();
    let p = Diagram::new(sc.cat.clone(), values, maps)?;
    let l = lan(&sigma, &p)?;
    let canon: Vec<SimplicialMap> = (0..=cap)
        .map(|n| {
            let target = l.diagram.value(delta.object(n, 0));
            SimplicialMap::tabulate(bar.simp.level(n), target, |lv, b| {
                let (a, y, x) = bar.decode(n, lv, b);
                let fx = f.value(nd.first(n, a));
                l.unit.component(sc.object(n, a)).apply(lv, pair_index(fx, lv, y, x))
            })
        })
        .collect();
    let bad_iso: Vec<usize> = (0..=cap).filter(|&n| !canon[n].is_iso()).collect();
    let mut bad_nat = Vec::new();
    for m in delta.cat.morphisms() {
        let (s, t) = (delta.cat.source(m), delta.cat.target(m));
        let (n, k) = (delta.dim(s), delta.dim(t));
        let lhs = l.diagram.map(m).after(&canon[n]);
        let rhs = canon[k].after(&bar.simp.operator(&delta.operators[m.0], n));
        if !lhs.same_tables(&rhs) {
            bad_nat.push(delta.cat.morphism_name(m).to_string());
        }
    }
    Ok(vec![
        Check::new(
            "extension along the dimension functor matches the bar levels",
            bad_iso.is_empty(),
            format!("levels {bad_iso:?} not bijective"),
        ),
        Check::new(
            "matching commutes with simplicial operators",
            bad_nat.is_empty(),
            bad_nat.join(", "),
        ),
    ])
}

/// An objectwise simplicial homotopy inverse with homotopies
/// `Delta^1 x X -> X` from `inverse . phi` to the identity and
/// `Delta^1 x Y -> Y` from `phi . inverse` to the identity.
#[derive(Clone, Debug)]
pub struct HomotopyEquivalence {
    pub inverse: SimplicialMap,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
}

fn homotopy_ends(h: &SimplicialMap, x: &TruncSSet) -> (SimplicialMap, SimplicialMap) {
    let d1 = standard_simplex(1, x.cap());
    let at = |v: usize| {
        SimplicialMap::tabulate(x, h.target(), |l, e| {
            let t = d1.index_of(l, &vertex_label(&vec![v; l + 1], 1)).unwrap();
            h.apply(l, t * x.len(l) + e)
        })
    };
    (at(0), at(1))
}

pub fn verify_homotopy_equivalence(phi: &SimplicialMap, w: &HomotopyEquivalence) -> Vec<String> {
    let mut bad = Vec::new();
    let (x, y) = (phi.source(), phi.target());
    let d1 = standard_simplex(1, x.cap());
    let fits = |h: &SimplicialMap, z: &TruncSSet| {
        h.target() == z && crate::simpset::product(&d1, z).is_ok_and(|p| p.level_sizes() == h.source().level_sizes())
    };
    if !fits(&w.left, x) || !fits(&w.right, y) || w.inverse.source() != y || w.inverse.target() != x {
        return vec!["witness maps have the wrong domains".into()];
    }
    let (l0, l1) = homotopy_ends(&w.left, x);
    if !l0.same_tables(&w.inverse.after(phi)) || !l1.same_tables(&SimplicialMap::identity(x)) {
        bad.push("left homotopy has the wrong ends".into());
    }
    let (r0, r1) = homotopy_ends(&w.right, y);
    if !r0.same_tables(&phi.after(&w.inverse)) || !r1.same_tables(&SimplicialMap::identity(y)) {
        bad.push("right homotopy has the wrong ends".into());
    }
    bad
}

/// An objectwise equivalence `phi: F -> F'` induces an equivalence of
/// homotopy colimits.
pub fn homotopy_invariance_test(phi: &NatTransf, witnesses: Option<&[HomotopyEquivalence]>) -> Result<Vec<Check>> {
    let f = &phi.source;
    let cap = f.cap();
    if cap == 0 {
        return Err(Error::CapExceeded { requested: 1, cap });
    }
    let mut objectwise = Vec::new();
    for o in f.shape().objects() {
        let ok = match witnesses {
            Some(w) => verify_homotopy_equivalence(phi.component(o), &w[o.0]).is_empty(),
            None => homology_iso_witness(phi.component(o), cap - 1)?,
        };
        if !ok {
            objectwise.push(f.shape().object_name(o).to_string());
        }
    }
    let (b1, b2) = (unit_bar(f, cap)?, unit_bar(&phi.target, cap)?);
    let m = bar_map(&b1, &b2, None, Some(phi))?.realize();
    let groups = homology(m.source(), cap - 1)? == homology(m.target(), cap - 1)?;
    let induced = homology_iso_witness(&m, cap - 1)?;
    Ok(vec![
        Check::new("objectwise equivalence", objectwise.is_empty(), objectwise.join(", ")),
        Check::new(
            "induced map of homotopy colimits is a homology isomorphism",
            groups && induced,
            format!("degrees < {cap}"),
        ),
    ])
}

/// The projection `Delta^1 x F -> F` with its objectwise homotopy inverse
/// at the vertex `0`.
pub fn cylinder_equivalence(f: &Diagram) -> Result<(NatTransf, Vec<HomotopyEquivalence>)> {
    let cap = f.cap();
    let d1 = standard_simplex(1, cap);
    let cyl = f.tensor_sset(&d1)?;
    let mut comps = Vec::new();
    let mut witnesses = Vec::new();
    for o in f.shape().objects() {
        let (x, cx) = (f.value(o), cyl.value(o));
        let phi = SimplicialMap::tabulate(cx, x, |l, i| i % x.len(l));
        let zero = |l: usize| d1.index_of(l, &"0".repeat(l + 1)).unwrap();
        let inverse = SimplicialMap::tabulate(x, cx, |l, e| pair_index(x, l, zero(l), e));
        let left = SimplicialMap::tabulate(&crate::simpset::product(&d1, cx)?, cx, |l, i| {
            let (t, j) = (i / cx.len(l), i % cx.len(l));
            let (s, e) = (j / x.len(l), j % x.len(l));
            let m: String = d1.label(l, t).chars().zip(d1.label(l, s).chars()).map(|(p, q)| p.min(q)).collect();
            pair_index(x, l, d1.index_of(l, &m).unwrap(), e)
        });
        let right = SimplicialMap::tabulate(&crate::simpset::product(&d1, x)?, x, |l, i| i % x.len(l));
        comps.push(phi);
        witnesses.push(HomotopyEquivalence { inverse, left, right });
    }
    Ok((NatTransf::new(cyl, f.clone(), comps)?, witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::SSetCat;
    use crate::simpset::{boundary, point};

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
    fn nerve_weight_at_initial_object() {
        let d = FinCat::linear(1);
        let w = nerve_weight(&d, 2).unwrap();
        assert!(is_isomorphic(w.diagram.value(ObjId(0)), &standard_simplex(1, 2)).is_some());
        assert!(is_isomorphic(w.diagram.value(ObjId(1)), &point(2)).is_some());
    }

    #[test]
    fn local_formula() {
        assert!(verify_loc_eq_bar(&span_of_points(3)).unwrap().pass);
    }

    #[test]
    fn pullout() {
        let f = span_of_points(3);
        let g = Diagram::hom_weight(f.shape(), ObjId(0), 3);
        for c in verify_bar_pullout(&g, &f).unwrap() {
            assert!(c.pass, "{c}");
        }
    }

    #[test]
    fn replacement_is_a_functor() {
        for f in [span_of_points(3), Diagram::representable(&FinCat::linear(1), ObjId(0), 3)] {
            let q = dhks(&f).unwrap().q;
            assert!(q.violations().is_empty(), "{:?}", q.violations());
        }
    }

    #[test]
    fn replacement_over_simplices() {
        let f = span_of_points(3);
        for c in verify_dhks(&f).unwrap() {
            assert!(c.pass, "{c}");
        }
    }

    #[test]
    fn comma_lemmas() {
        let d = FinCat::span();
        assert!(verify_lan_comma(&FinFunctor::identity(&d), 3).unwrap().pass);
        assert!(verify_lan_comma2(&d, 3, 1).unwrap().pass);
        let one = FinCat::terminal();
        let arrow = FinCat::linear(1);
        let k = FinFunctor::from_names(&one, &arrow, &[("*", "1")], &[]).unwrap();
        let f = Diagram::representable(&arrow, ObjId(0), 2);
        let g = Diagram::terminal(&one, 2);
        assert!(verify_lan_adjt(&k, &g, &f).unwrap().pass);
    }

    #[test]
    fn bar_is_kan_extension() {
        let f = span_of_points(3);
        let g = Diagram::terminal(&f.shape().opposite(), 3);
        for c in verify_bar_eq_lan(&g, &f).unwrap() {
            assert!(c.pass, "{c}");
        }
    }

    #[test]
    fn bars_are_reedy_cofibrant() {
        let f = span_of_points(3);
        let b = unit_bar(&f, 3).unwrap();
        assert!(simplicial_reedy_failures(&b.simp, 3).unwrap().is_empty());
    }
    #[test]
    fn enriched_pullout() {
        for s in [SSetCat::interval(2), SSetCat::min_monoid(2)] {
            let f = SDiagram::representable(&s, 0);
            let g = SDiagram::hom_weight(&s, s.num_objects() - 1);
            for c in verify_enriched_bar_pullout(&g, &f).unwrap() {
                assert!(c.pass, "{c}");
            }
        }
    }

    #[test]
    fn cylinder_is_invariant() {
        let f = span_of_points(3);
        let (phi, w) = cylinder_equivalence(&f).unwrap();
        for c in homotopy_invariance_test(&phi, Some(&w)).unwrap() {
            assert!(c.pass, "{c}");
        }
        let wrong: Vec<HomotopyEquivalence> = w
            .iter()
            .map(|h| HomotopyEquivalence { left: h.right.clone(), ..h.clone() })
            .collect();
        assert!(!homotopy_invariance_test(&phi, Some(&wrong)).is_ok_and(|cs| cs[0].pass));
    }
}
