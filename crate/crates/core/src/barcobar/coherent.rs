use super::BarResolution;
use crate::diagram::{Diagram, NatTransf};
use crate::error::{Error, Result};
use crate::fincat::MorId;
use crate::simpset::{product, standard_simplex, vertex_label, SimplicialMap, TruncSSet};

/// One cell of a homotopy coherent transformation: for a nondegenerate
/// string `a` of length `n` and `u: a_n -> d`, a map
/// `Delta^n x F(a_0) -> G(d)`.
#[derive(Clone, Debug)]
pub struct Cell {
    pub n: usize,
    pub simplex: usize,
    pub u: MorId,
    pub map: SimplicialMap,
}

#[derive(Clone, Debug)]
pub struct CoherenceData {
    pub depth: usize,
    pub cells: Vec<Cell>,
}

impl CoherenceData {
    pub fn cell(&self, n: usize, simplex: usize, u: MorId) -> Option<&Cell> {
        self.cells.iter().find(|c| c.n == n && c.simplex == simplex && c.u == u)
    }
}

fn vertex_sequence(delta: &TruncSSet, l: usize, t: usize) -> Vec<usize> {
    delta
        .vertices(l, t)
        .into_iter()
        .map(|v| delta.label(0, v).parse().unwrap())
        .collect()
}

/// Reads off the coherence data of `phi: |B(D, D, F)| -> G` up to strings
/// of length `depth`.
pub fn coherent_unravel(res: &BarResolution, phi: &NatTransf, depth: usize) -> Result<CoherenceData> {
    if !phi.source.shape().table_eq(res.diagram.shape()) {
        return Err(Error::ShapeMismatch("transformation must start at the bar resolution".into()));
    }
    if let Some(v) = phi.violations().first() {
        return Err(Error::NotNatural(v.clone()));
    }
    let d = res.diagram.shape();
    let f = res.bars[0].diagram();
    let cap = f.cap();
    if depth > cap {
        return Err(Error::CapExceeded { requested: depth, cap });
    }
    let nerve = &res.bars[0].nerve;
    let mut cells = Vec::new();
    for n in 0..=depth {
        let delta = standard_simplex(n, cap);
        for a in nerve.sset.nondegenerate(n) {
            let dom = product(&delta, f.value(nerve.first(n, a)))?;
            for o in d.objects() {
                let bar = &res.bars[o.0];
                for (y, &u) in d.hom(nerve.last(n, a), o).iter().enumerate() {
                    let map = SimplicialMap::tabulate(&dom, phi.target.value(o), |l, i| {
                        let per = f.value(nerve.first(n, a)).len(l);
                        let (t, x) = (i / per, i % per);
                        let b = bar.index(n, l, a, y, x);
                        let b = bar.simp.apply_operator(&vertex_sequence(&delta, l, t), n, l, b);
                        phi.component(o).apply(l, b)
                    });
                    cells.push(Cell { n, simplex: a, u, map });
                }
            }
        }
    }
    Ok(CoherenceData { depth, cells })
}

/// Checks the boundary and naturality relations of coherence data for
/// `F` and `G`. Returns the failures.
pub fn coherent_check(data: &CoherenceData, res: &BarResolution, g: &Diagram) -> Vec<String> {
    let mut bad = Vec::new();
    let d = res.diagram.shape();
    let f = res.bars[0].diagram();
    let nerve = &res.bars[0].nerve;
    let cap = f.cap();
    let lookup = |n: usize, a: usize, u: MorId| -> Option<(&Cell, Vec<usize>)> {
        // a degenerate string restricts a nondegenerate cell along theta
        let (m, b, theta) = super::decompose(&nerve.sset, n, a);
        data.cell(m, b, u).map(|c| (c, theta))
    };
    for c in &data.cells {
        let first = nerve.first(c.n, c.simplex);
        let fx = f.value(first);
        let dn = standard_simplex(c.n, cap);
        let target = d.target(c.u);
        for &h in d.outgoing(target) {
            let Some(c2) = data.cell(c.n, c.simplex, d.compose(h, c.u).unwrap()) else {
                bad.push(format!("missing cell for a postcomposite of {}", d.morphism_name(c.u)));
                continue;
            };
            if !g.map(h).after(&c.map).same_tables(&c2.map) {
                bad.push(format!(
                    "cell at `{}` is not natural along {}",
                    nerve.sset.label(c.n, c.simplex),
                    d.morphism_name(h)
                ));
            }
        }
        if c.n == 0 {
            continue;
        }
        let dm = standard_simplex(c.n - 1, cap);
        let s = nerve.string(c.n, c.simplex);
        for i in 0..=c.n {
            let b = nerve.sset.face(c.n, i, c.simplex);
            let u = if i == c.n { d.compose(c.u, s[c.n - 1]).unwrap() } else { c.u };
            let Some((face_cell, theta)) = lookup(c.n - 1, b, u) else {
                bad.push(format!("missing face cell d{i} of `{}`", nerve.sset.label(c.n, c.simplex)));
                continue;
            };
            let dk = standard_simplex(face_cell.n, cap);
            for l in 0..=cap {
                for t in 0..dm.len(l) {
                    let verts = vertex_sequence(&dm, l, t);
                    let up: Vec<usize> = verts.iter().map(|&v| if v < i { v } else { v + 1 }).collect();
                    let down: Vec<usize> = verts.iter().map(|&v| theta[v]).collect();
                    let t_up = dn.index_of(l, &vertex_label(&up, c.n)).unwrap();
                    let t_down = dk.index_of(l, &vertex_label(&down, face_cell.n)).unwrap();
                    for x in 0..fx.len(l) {
                        let lhs = c.map.apply(l, t_up * fx.len(l) + x);
                        let x2 = if i == 0 { f.map(s[0]).apply(l, x) } else { x };
                        let per = f.value(nerve.first(face_cell.n, face_cell.simplex)).len(l);
                        let rhs = face_cell.map.apply(l, t_down * per + x2);
                        if lhs != rhs {
                            bad.push(format!("face d{i} of the cell at `{}` disagrees", nerve.sset.label(c.n, c.simplex)));
                        }
                    }
                }
            }
        }
    }
    bad.sort();
    bad.dedup();
    bad
}

/// True when every cell of positive length is constant along `Delta^n`.
pub fn is_strict(data: &CoherenceData) -> bool {
    data.cells.iter().filter(|c| c.n > 0).all(|c| {
        let dn = c.map.source();
        (0..=dn.cap()).all(|l| {
            let delta = standard_simplex(c.n, dn.cap());
            let per = dn.len(l) / delta.len(l).max(1);
            (0..per).all(|x| {
                let v0 = c.map.apply(l, x);
                (0..delta.len(l)).all(|t| c.map.apply(l, t * per + x) == v0)
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barcobar::bar_resolution;
    use crate::diagram::nat_transf_object;
    use crate::fincat::{FinCat, ObjId};

    #[test]
    fn point_diagrams_have_one_coherent_map() {
        let d = FinCat::span();
        let f = Diagram::terminal(&d, 3);
        let res = bar_resolution(&f).unwrap();
        let nt = nat_transf_object(&res.diagram, &f, 0).unwrap();
        assert_eq!(nt.sset.len(0), 1);
        let data = coherent_unravel(&res, &res.epsilon, 2).unwrap();
        assert!(coherent_check(&data, &res, &f).is_empty());
        assert!(is_strict(&data));
    }

    #[test]
    fn augmentation_unravels_strictly() {
        let d = FinCat::linear(2);
        let f = Diagram::representable(&d, ObjId(0), 3);
        let res = bar_resolution(&f).unwrap();
        let data = coherent_unravel(&res, &res.epsilon, 2).unwrap();
        assert!(coherent_check(&data, &res, &f).is_empty(), "{:?}", coherent_check(&data, &res, &f));
        assert!(is_strict(&data));
    }
}
