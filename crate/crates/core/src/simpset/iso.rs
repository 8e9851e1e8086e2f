use std::collections::HashMap;

use super::{SimplicialMap, TruncSSet};

/// Colour refinement over faces and cofaces, run on both sets at once so
/// colours are comparable.
fn refine(x: &TruncSSet, y: &TruncSSet) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let cap = x.cap();
    let cofaces = |s: &TruncSSet| -> Vec<Vec<Vec<(usize, usize)>>> {
        (0..=cap)
            .map(|n| {
                let mut v = vec![Vec::new(); s.len(n)];
                if n < cap {
                    for z in 0..s.len(n + 1) {
                        for i in 0..=n + 1 {
                            v[s.face(n + 1, i, z)].push((i, z));
                        }
                    }
                }
                v
            })
            .collect()
    };
    let (cx, cy) = (cofaces(x), cofaces(y));
    let init = |s: &TruncSSet| -> Vec<Vec<usize>> {
        (0..=cap)
            .map(|n| {
                (0..s.len(n))
                    .map(|z| n * 2 + s.is_degenerate(n, z) as usize)
                    .collect()
            })
            .collect()
    };
    let (mut col_x, mut col_y) = (init(x), init(y));
    let mut count = usize::MAX;
    loop {
        let mut dict: HashMap<(usize, Vec<usize>, Vec<(usize, usize)>), usize> = HashMap::new();
        let mut step = |s: &TruncSSet,
                        col: &Vec<Vec<usize>>,
                        cof: &Vec<Vec<Vec<(usize, usize)>>>|
         -> Vec<Vec<usize>> {
            (0..=cap)
                .map(|n| {
                    (0..s.len(n))
                        .map(|z| {
                            let faces: Vec<usize> = if n == 0 {
                                Vec::new()
                            } else {
                                (0..=n).map(|i| col[n - 1][s.face(n, i, z)]).collect()
                            };
                            let mut up: Vec<(usize, usize)> =
                                cof[n][z].iter().map(|&(i, w)| (i, col[n + 1][w])).collect();
                            up.sort_unstable();
                            let key = (col[n][z], faces, up);
                            let next = dict.len();
                            *dict.entry(key).or_insert(next)
                        })
                        .collect()
                })
                .collect()
        };
        let nx = step(x, &col_x, &cx);
        let ny = step(y, &col_y, &cy);
        let new_count = dict.len();
        col_x = nx;
        col_y = ny;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    (col_x, col_y)
}

struct Search<'a> {
    x: &'a TruncSSet,
    y: &'a TruncSSet,
    fwd: Vec<Vec<Option<usize>>>,
    bwd: Vec<Vec<Option<usize>>>,
    trail: Vec<(usize, usize, usize)>,
}

impl<'a> Search<'a> {
    /// Assigns `a -> b` at level `n` and everything it forces; false on
    /// conflict (the trail still records partial work for undo).
    fn assign(&mut self, n: usize, a: usize, b: usize) -> bool {
        let mut work = vec![(n, a, b)];
        while let Some((n, a, b)) = work.pop() {
            match (self.fwd[n][a], self.bwd[n][b]) {
                (Some(v), _) if v == b => continue,
                (Some(_), _) | (None, Some(_)) => return false,
                (None, None) => {}
            }
            if self.x.is_degenerate(n, a) != self.y.is_degenerate(n, b) {
                return false;
            }
            self.fwd[n][a] = Some(b);
            self.bwd[n][b] = Some(a);
            self.trail.push((n, a, b));
            if n > 0 {
                for i in 0..=n {
                    work.push((n - 1, self.x.face(n, i, a), self.y.face(n, i, b)));
                }
            }
            if n < self.x.cap() {
                for i in 0..=n {
                    work.push((n + 1, self.x.degen(n, i, a), self.y.degen(n, i, b)));
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (n, a, b) = self.trail.pop().unwrap();
            self.fwd[n][a] = None;
            self.bwd[n][b] = None;
        }
    }
}

/// An isomorphism `x -> y` if one exists.
pub fn is_isomorphic(x: &TruncSSet, y: &TruncSSet) -> Option<SimplicialMap> {
    if x.cap() != y.cap()
        || x.level_sizes() != y.level_sizes()
        || x.nondegenerate_counts() != y.nondegenerate_counts()
    {
        return None;
    }
    let cap = x.cap();
    let (col_x, col_y) = refine(x, y);
    for n in 0..=cap {
        let mut a = col_x[n].clone();
        let mut b = col_y[n].clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
    }
    let mut by_colour: Vec<HashMap<usize, Vec<usize>>> = vec![HashMap::new(); cap + 1];
    for n in 0..=cap {
        for b in y.nondegenerate(n) {
            by_colour[n].entry(col_y[n][b]).or_default().push(b);
        }
    }
    let mut order: Vec<(usize, usize)> = (0..=cap)
        .rev()
        .flat_map(|n| x.nondegenerate(n).into_iter().map(move |a| (n, a)))
        .collect();
    order.sort_by_key(|&(n, a)| {
        (
            std::cmp::Reverse(n),
            by_colour[n].get(&col_x[n][a]).map_or(0, |v| v.len()),
        )
    });
    let mut s = Search {
        x,
        y,
        fwd: (0..=cap).map(|n| vec![None; x.len(n)]).collect(),
        bwd: (0..=cap).map(|n| vec![None; y.len(n)]).collect(),
        trail: Vec::new(),
    };
    // Explicit backtracking stack: one frame per branching simplex, holding
    // its position in `order`, candidates, next candidate and trail mark.
    struct Frame {
        k: usize,
        cands: Vec<usize>,
        next: usize,
        mark: usize,
    }
    let skip = |s: &Search, mut k: usize| {
        while let Some(&(n, a)) = order.get(k) {
            if s.fwd[n][a].is_none() {
                break;
            }
            k += 1;
        }
        k
    };
    let mut stack: Vec<Frame> = Vec::new();
    let mut k = skip(&s, 0);
    loop {
        if k < order.len() {
            let (n, a) = order[k];
            let cands = by_colour[n].get(&col_x[n][a]).cloned().unwrap_or_default();
            stack.push(Frame { k, cands, next: 0, mark: s.trail.len() });
        } else {
            break;
        }
        // advance the top frame until some candidate assigns cleanly
        loop {
            let Some(top) = stack.last_mut() else {
                return None;
            };
            let (n, a) = order[top.k];
            s.undo(top.mark);
            let mut placed = false;
            while top.next < top.cands.len() {
                let b = top.cands[top.next];
                top.next += 1;
                if s.bwd[n][b].is_some() {
                    continue;
                }
                if s.assign(n, a, b) {
                    placed = true;
                    break;
                }
                s.undo(top.mark);
            }
            if placed {
                k = skip(&s, top.k + 1);
                break;
            }
            stack.pop();
        }
    }
    let levels: Option<Vec<Vec<usize>>> =
        s.fwd.iter().map(|l| l.iter().copied().collect()).collect();
    let f = SimplicialMap::new(x.clone(), y.clone(), levels?).ok()?;
    f.is_iso().then_some(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::{boundary, circle, horn, product, standard_simplex};

    #[test]
    fn iso_to_relabelled_copy() {
        let x = product(&standard_simplex(1, 3), &standard_simplex(1, 3)).unwrap();
        let y = x.relabel(|_, l| format!("r{l}")).unwrap();
        let f = is_isomorphic(&x, &y).unwrap();
        assert!(f.is_iso());
    }

    #[test]
    fn non_isomorphic_pairs() {
        assert!(is_isomorphic(&horn(2, 0, 3), &horn(2, 1, 3)).is_none());
        assert!(is_isomorphic(&horn(2, 1, 3), &horn(2, 1, 3)).is_some());
        assert!(is_isomorphic(&boundary(2, 3), &horn(2, 1, 3)).is_none());
        assert!(is_isomorphic(&circle(3), &standard_simplex(0, 3)).is_none());
    }
}
