//! Simplicial and cosimplicial objects in truncated simplicial sets, bar and
//! cobar constructions, realization, and totalization.

use std::collections::HashMap;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::nerve::SimplexCategory;
use crate::simpset::{
    for_each_map, product, product_map, simplex_operator, standard_simplex, tabulate, SimplicialMap, TruncSSet,
};

mod bar;
mod cobar;
mod coherent;

pub use bar::*;
pub use cobar::*;
pub use coherent::*;

/// A simplicial object `X_0, ..., X_M` with horizontal structure maps.
#[derive(Clone, Debug)]
pub struct SimpObj {
    levels: Vec<TruncSSet>,
    /// `faces[n][i]: X_n -> X_{n-1}`.
    faces: Vec<Vec<SimplicialMap>>,
    /// `degens[n][i]: X_n -> X_{n+1}`.
    degens: Vec<Vec<SimplicialMap>>,
}

/// Faces of `theta` missing from its image (descending), then degeneracy
/// positions (ascending), as in `TruncSSet::apply_operator`.
fn operator_steps(theta: &[usize], n: usize) -> (Vec<usize>, Vec<usize>) {
    let mut image = theta.to_vec();
    image.dedup();
    let faces = (0..=n).rev().filter(|j| image.binary_search(j).is_err()).collect();
    let degens = (0..theta.len() - 1).filter(|&i| theta[i] == theta[i + 1]).collect();
    (faces, degens)
}

impl SimpObj {
    pub fn new(levels: Vec<TruncSSet>, faces: Vec<Vec<SimplicialMap>>, degens: Vec<Vec<SimplicialMap>>) -> Result<SimpObj> {
        let x = SimpObj { levels, faces, degens };
        x.audit()?;
        Ok(x)
    }

    pub(crate) fn new_unchecked(levels: Vec<TruncSSet>, faces: Vec<Vec<SimplicialMap>>, degens: Vec<Vec<SimplicialMap>>) -> SimpObj {
        SimpObj { levels, faces, degens }
    }

    pub fn constant(x: &TruncSSet, hcap: usize) -> SimpObj {
        let id = SimplicialMap::identity(x);
        SimpObj {
            levels: vec![x.clone(); hcap + 1],
            faces: (0..=hcap).map(|n| if n == 0 { Vec::new() } else { vec![id.clone(); n + 1] }).collect(),
            degens: (0..=hcap).map(|n| if n == hcap { Vec::new() } else { vec![id.clone(); n + 1] }).collect(),
        }
    }

    pub fn hcap(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn cap(&self) -> usize {
        self.levels[0].cap()
    }

    pub fn level(&self, n: usize) -> &TruncSSet {
        &self.levels[n]
    }

    pub fn face(&self, n: usize, i: usize) -> &SimplicialMap {
        &self.faces[n][i]
    }

    pub fn degen(&self, n: usize, i: usize) -> &SimplicialMap {
        &self.degens[n][i]
    }

    /// Checks the horizontal simplicial identities.
    pub fn audit(&self) -> Result<()> {
        let m = self.hcap();
        let fail = |identity: String, level: usize| {
            Err(Error::SimplicialIdentityViolation {
                identity,
                level,
                simplex: "horizontal".into(),
            })
        };
        for n in 0..=m {
            if self.levels[n].cap() != self.cap() {
                return Err(Error::CapMismatch(self.cap(), self.levels[n].cap()));
            }
        }
        for n in 2..=m {
            for j in 1..=n {
                for i in 0..j {
                    let a = self.faces[n - 1][i].after(&self.faces[n][j]);
                    let b = self.faces[n - 1][j - 1].after(&self.faces[n][i]);
                    if !a.same_tables(&b) {
                        return fail(format!("d{i} d{j} = d{} d{i}", j - 1), n);
                    }
                }
            }
        }
        for n in 0..m {
            let id = SimplicialMap::identity(&self.levels[n]);
            for j in 0..=n {
                let s = &self.degens[n][j];
                if !self.faces[n + 1][j].after(s).same_tables(&id) || !self.faces[n + 1][j + 1].after(s).same_tables(&id) {
                    return fail(format!("d{j} s{j} = d{} s{j} = id", j + 1), n);
                }
                for i in 0..=n + 1 {
                    let lhs = self.faces[n + 1][i].after(s);
                    if i < j {
                        if !lhs.same_tables(&self.degens[n - 1][j - 1].after(&self.faces[n][i])) {
                            return fail(format!("d{i} s{j} = s{} d{i}", j - 1), n);
                        }
                    } else if i > j + 1 && !lhs.same_tables(&self.degens[n - 1][j].after(&self.faces[n][i - 1])) {
                        return fail(format!("d{i} s{j} = s{j} d{}", i - 1), n);
                    }
                }
                if n + 1 < m {
                    for i in 0..=j {
                        let a = self.degens[n + 1][i].after(s);
                        let b = self.degens[n + 1][j + 1].after(&self.degens[n][i]);
                        if !a.same_tables(&b) {
                            return fail(format!("s{i} s{j} = s{} s{i}", j + 1), n);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `theta^*: X_n -> X_m` for monotone `theta: [m] -> [n]`.
    pub fn operator(&self, theta: &[usize], n: usize) -> SimplicialMap {
        let (faces, degens) = operator_steps(theta, n);
        let mut f = SimplicialMap::identity(&self.levels[n]);
        let mut level = n;
        for j in faces {
            f = self.faces[level][j].after(&f);
            level -= 1;
        }
        for i in degens {
            f = self.degens[level][i].after(&f);
            level += 1;
        }
        f
    }

    /// Element-level `theta^*` at vertical level `l`.
    pub fn apply_operator(&self, theta: &[usize], n: usize, l: usize, x: usize) -> usize {
        let (faces, degens) = operator_steps(theta, n);
        let (mut y, mut level) = (x, n);
        for j in faces {
            y = self.faces[level][j].apply(l, y);
            level -= 1;
        }
        for i in degens {
            y = self.degens[level][i].apply(l, y);
            level += 1;
        }
        y
    }

    /// The diagonal, truncated at `min(hcap, cap)`.
    pub fn realize(&self) -> TruncSSet {
        let cap = self.hcap().min(self.cap());
        let labels = (0..=cap).map(|n| self.levels[n].labels(n).to_vec()).collect();
        tabulate(
            cap,
            labels,
            |n, i, x| self.levels[n - 1].face(n, i, self.faces[n][i].apply(n, x)),
            |n, i, x| self.levels[n + 1].degen(n, i, self.degens[n][i].apply(n, x)),
        )
    }

    /// Levelwise `K x X_n`.
    pub fn tensor_sset(&self, k: &TruncSSet) -> Result<SimpObj> {
        let id = SimplicialMap::identity(k);
        let levels = self.levels.iter().map(|x| product(k, x)).collect::<Result<Vec<_>>>()?;
        let lift = |v: &Vec<Vec<SimplicialMap>>| -> Result<Vec<Vec<SimplicialMap>>> {
            v.iter().map(|r| r.iter().map(|f| product_map(&id, f)).collect()).collect()
        };
        Ok(SimpObj {
            levels,
            faces: lift(&self.faces)?,
            degens: lift(&self.degens)?,
        })
    }

    /// As a diagram over the truncated `Delta^op` of matching height.
    pub fn to_diagram(&self, delta: &SimplexCategory) -> Result<Diagram> {
        if !delta.op || delta.base.len(0) != 1 || delta.base.cap() != self.hcap() {
            return Err(Error::ShapeMismatch("needs the opposite simplex category of the same height".into()));
        }
        let values = delta.simplices.iter().map(|&(n, _)| self.levels[n].clone()).collect();
        let maps = delta
            .cat
            .morphisms()
            .map(|m| {
                let n = delta.dim(delta.carrier(m));
                self.operator(&delta.operators[m.0], n)
            })
            .collect();
        Diagram::new(delta.cat.clone(), values, maps)
    }
}

/// A map of simplicial objects, one simplicial map per horizontal level.
#[derive(Clone, Debug)]
pub struct SimpMap {
    pub source: SimpObj,
    pub target: SimpObj,
    pub levels: Vec<SimplicialMap>,
}

impl SimpMap {
    pub fn new(source: SimpObj, target: SimpObj, levels: Vec<SimplicialMap>) -> Result<SimpMap> {
        let f = SimpMap { source, target, levels };
        for n in 0..=f.source.hcap() {
            if n > 0 {
                for i in 0..=n {
                    if !f.levels[n - 1].after(f.source.face(n, i)).same_tables(&f.target.face(n, i).after(&f.levels[n])) {
                        return Err(Error::NotSimplicial(format!("horizontal face d{i} at level {n}")));
                    }
                }
            }
            if n < f.source.hcap() {
                for i in 0..=n {
                    if !f.levels[n + 1].after(f.source.degen(n, i)).same_tables(&f.target.degen(n, i).after(&f.levels[n])) {
                        return Err(Error::NotSimplicial(format!("horizontal degeneracy s{i} at level {n}")));
                    }
                }
            }
        }
        Ok(f)
    }

    /// The induced map of diagonals.
    pub fn realize(&self) -> SimplicialMap {
        let (a, b) = (self.source.realize(), self.target.realize());
        SimplicialMap::tabulate(&a, &b, |n, x| self.levels[n].apply(n, x))
    }
}

/// A cosimplicial object `X^0, ..., X^M`.
#[derive(Clone, Debug)]
pub struct CosimpObj {
    levels: Vec<TruncSSet>,
    /// `cofaces[n][i]: X^{n-1} -> X^n`.
    cofaces: Vec<Vec<SimplicialMap>>,
    /// `codegens[n][i]: X^{n+1} -> X^n`.
    codegens: Vec<Vec<SimplicialMap>>,
}

impl CosimpObj {
    pub fn new(levels: Vec<TruncSSet>, cofaces: Vec<Vec<SimplicialMap>>, codegens: Vec<Vec<SimplicialMap>>) -> Result<CosimpObj> {
        let c = CosimpObj {
            levels,
            cofaces,
            codegens,
        };
        c.audit()?;
        Ok(c)
    }

    pub fn constant(x: &TruncSSet, hcap: usize) -> CosimpObj {
        let id = SimplicialMap::identity(x);
        CosimpObj {
            levels: vec![x.clone(); hcap + 1],
            cofaces: (0..=hcap).map(|n| if n == 0 { Vec::new() } else { vec![id.clone(); n + 1] }).collect(),
            codegens: (0..=hcap).map(|n| if n == hcap { Vec::new() } else { vec![id.clone(); n + 1] }).collect(),
        }
    }

    pub fn hcap(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn cap(&self) -> usize {
        self.levels[0].cap()
    }

    pub fn level(&self, n: usize) -> &TruncSSet {
        &self.levels[n]
    }

    pub fn coface(&self, n: usize, i: usize) -> &SimplicialMap {
        &self.cofaces[n][i]
    }

    pub fn codegen(&self, n: usize, i: usize) -> &SimplicialMap {
        &self.codegens[n][i]
    }

    pub fn audit(&self) -> Result<()> {
        let m = self.hcap();
        let fail = |identity: String, level: usize| {
            Err(Error::SimplicialIdentityViolation {
                identity,
                level,
                simplex: "cosimplicial".into(),
            })
        };
        for n in 2..=m {
            for j in 1..=n {
                for i in 0..j {
                    // d^j d^i = d^i d^{j-1}
                    let a = self.cofaces[n][j].after(&self.cofaces[n - 1][i]);
                    let b = self.cofaces[n][i].after(&self.cofaces[n - 1][j - 1]);
                    if !a.same_tables(&b) {
                        return fail(format!("d^{j} d^{i} = d^{i} d^{}", j - 1), n);
                    }
                }
            }
        }
        for n in 0..m {
            let id = SimplicialMap::identity(&self.levels[n]);
            for j in 0..=n {
                let s = &self.codegens[n][j];
                if !s.after(&self.cofaces[n + 1][j]).same_tables(&id) || !s.after(&self.cofaces[n + 1][j + 1]).same_tables(&id) {
                    return fail(format!("s^{j} d^{j} = s^{j} d^{} = id", j + 1), n);
                }
                if n + 1 < m {
                    for i in 0..=j {
                        let a = self.codegens[n][j].after(&self.codegens[n + 1][i]);
                        let b = self.codegens[n][i].after(&self.codegens[n + 1][j + 1]);
                        if !a.same_tables(&b) {
                            return fail(format!("s^{j} s^{i} = s^{i} s^{}", j + 1), n);
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Result of a totalization: the simplicial set with the `k`-simplices
/// recorded as maps `Delta^n x Delta^k -> X^n`.
#[derive(Clone, Debug)]
pub struct Tot {
    pub sset: TruncSSet,
    /// `elements[k][t][n]` is the table of the level-`n` component.
    pub elements: Vec<Vec<Vec<Vec<Vec<usize>>>>>,
    /// False when some `Delta^n x Delta^k` reaches past the cap.
    pub exact: bool,
}

fn map_key(dom: &TruncSSet, tables: &[Vec<usize>]) -> Vec<usize> {
    (0..=dom.cap()).flat_map(|l| dom.nondegenerate(l).into_iter().map(move |s| tables[l][s])).collect()
}

/// `Tot` of a truncated cosimplicial object: families of maps
/// `Delta^n x Delta^k -> X^n` for `n <= hcap` commuting with cofaces and
/// codegeneracies.
pub fn tot(c: &CosimpObj, cap_out: usize) -> Result<Tot> {
    let cap = c.cap();
    if cap_out > cap {
        return Err(Error::CapExceeded { requested: cap_out, cap });
    }
    let m = c.hcap();
    let simplices: Vec<TruncSSet> = (0..=m.max(cap_out)).map(|n| standard_simplex(n, cap)).collect();
    // doms[n][k] = Delta^n x Delta^k
    let doms: Vec<Vec<TruncSSet>> = (0..=m)
        .map(|n| (0..=cap_out).map(|k| product(&simplices[n], &simplices[k])).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let exact = m + cap_out <= cap;
    let mut elements: Vec<Vec<Vec<Vec<Vec<usize>>>>> = Vec::new();
    for k in 0..=cap_out {
        let id_k = SimplicialMap::identity(&simplices[k]);
        let cofaces: Vec<Vec<SimplicialMap>> = (0..=m)
            .map(|n| {
                if n == 0 {
                    Vec::new()
                } else {
                    (0..=n)
                        .map(|i| {
                            let theta: Vec<usize> = (0..n).map(|j| if j < i { j } else { j + 1 }).collect();
                            product_map(&simplex_operator(&theta, n, cap), &id_k).unwrap()
                        })
                        .collect()
                }
            })
            .collect();
        let codegens: Vec<Vec<SimplicialMap>> = (0..m)
            .map(|n| {
                (0..=n)
                    .map(|i| {
                        let theta: Vec<usize> = (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect();
                        product_map(&simplex_operator(&theta, n, cap), &id_k).unwrap()
                    })
                    .collect()
            })
            .collect();
        let mut found: Vec<Vec<Vec<Vec<usize>>>> = Vec::new();
        let mut cur: Vec<Vec<Vec<usize>>> = Vec::new();
        fn go(
            n: usize,
            c: &CosimpObj,
            doms: &[Vec<TruncSSet>],
            k: usize,
            cofaces: &[Vec<SimplicialMap>],
            codegens: &[Vec<SimplicialMap>],
            cur: &mut Vec<Vec<Vec<usize>>>,
            found: &mut Vec<Vec<Vec<Vec<usize>>>>,
        ) -> Result<()> {
            if n > c.hcap() {
                found.push(cur.clone());
                return Ok(());
            }
            let dom = &doms[n][k];
            let mut fixed: Vec<Vec<Option<usize>>> = (0..=dom.cap()).map(|l| vec![None; dom.len(l)]).collect();
            if n > 0 {
                let prev = &cur[n - 1];
                for i in 0..=n {
                    let inc = &cofaces[n][i];
                    for l in 0..=dom.cap() {
                        for z in 0..inc.source().len(l) {
                            let v = c.coface(n, i).apply(l, prev[l][z]);
                            let slot = &mut fixed[l][inc.apply(l, z)];
                            match slot {
                                Some(w) if *w != v => return Ok(()),
                                _ => *slot = Some(v),
                            }
                        }
                    }
                }
            }
            let mut options = Vec::new();
            for_each_map(dom, c.level(n), Some(&fixed), &mut |t| {
                options.push(t.to_vec());
                true
            })?;
            for t in options {
                // u_{n-1} sigma^j = s^j u_n
                let ok = n == 0
                    || (0..n).all(|j| {
                        let sig = &codegens[n - 1][j];
                        (0..=dom.cap()).all(|l| {
                            (0..dom.len(l)).all(|z| cur[n - 1][l][sig.apply(l, z)] == c.codegen(n - 1, j).apply(l, t[l][z]))
                        })
                    });
                if ok {
                    cur.push(t);
                    go(n + 1, c, doms, k, cofaces, codegens, cur, found)?;
                    cur.pop();
                }
            }
            Ok(())
        }
        go(0, c, &doms, k, &cofaces, &codegens, &mut cur, &mut found)?;
        elements.push(found);
    }
    let keys: Vec<Vec<Vec<usize>>> = elements
        .iter()
        .enumerate()
        .map(|(k, els)| {
            els.iter()
                .map(|e| (0..=m).flat_map(|n| map_key(&doms[n][k], &e[n])).collect())
                .collect()
        })
        .collect();
    let index: Vec<HashMap<Vec<usize>, usize>> = keys
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, key)| (key.clone(), i)).collect())
        .collect();
    let labels: Vec<Vec<String>> = elements
        .iter()
        .enumerate()
        .map(|(k, els)| {
            els.iter()
                .map(|e| {
                    let parts: Vec<String> = (0..=m)
                        .map(|n| {
                            let dom = &doms[n][k];
                            let vals: Vec<&str> = (0..=dom.cap())
                                .flat_map(|l| dom.nondegenerate(l).into_iter().map(move |s| (l, s)))
                                .map(|(l, s)| c.level(n).label(l, e[n][l][s]))
                                .collect();
                            format!("{{{}}}", vals.join(","))
                        })
                        .collect();
                    parts.join("")
                })
                .collect()
        })
        .collect();
    // precompose with 1 x theta on the Delta^k factor
    let restrict = |k: usize, kk: usize, theta: &[usize], e: &[Vec<Vec<usize>>]| -> usize {
        let op = simplex_operator(theta, k, cap);
        let key: Vec<usize> = (0..=m)
            .flat_map(|n| {
                let f = product_map(&SimplicialMap::identity(&simplices[n]), &op).unwrap();
                let tables: Vec<Vec<usize>> = (0..=cap).map(|l| (0..doms[n][kk].len(l)).map(|z| e[n][l][f.apply(l, z)]).collect()).collect();
                map_key(&doms[n][kk], &tables)
            })
            .collect();
        index[kk][&key]
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nerve::simplex_category;
    use crate::simpset::{boundary, is_isomorphic};

    #[test]
    fn constant_objects() {
        let x = boundary(2, 3);
        let s = SimpObj::constant(&x, 3);
        s.audit().unwrap();
        assert!(is_isomorphic(&s.realize(), &x).is_some());
        let d = s.to_diagram(&simplex_category(3, true)).unwrap();
        assert!(d.violations().is_empty());
        let c = CosimpObj::constant(&standard_simplex(1, 2), 2);
        c.audit().unwrap();
        let t = tot(&c, 1).unwrap();
        assert_eq!(t.sset.level_sizes(), vec![2, 3]);
    }

    #[test]
    fn operator_matches_steps() {
        let s = SimpObj::constant(&standard_simplex(1, 2), 3);
        let f = s.operator(&[0, 0, 2], 3);
        assert!(f.is_iso());
    }
}
