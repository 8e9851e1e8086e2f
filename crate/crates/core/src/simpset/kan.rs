use std::collections::HashSet;

use super::TruncSSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnfilledHorn {
    pub dim: usize,
    pub missing: usize,
    /// Labels of the given faces `d_j`, `j != missing`, in order.
    pub faces: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KanReport {
    pub max_dim: usize,
    pub unfilled: Vec<UnfilledHorn>,
}

impl KanReport {
    pub fn is_kan(&self) -> bool {
        self.unfilled.is_empty()
    }

    /// Whether every `(n, i)` horn with `n <= dim` fills.
    pub fn fills_through(&self, dim: usize) -> bool {
        self.unfilled.iter().all(|h| h.dim > dim)
    }
}

/// Checks horn filling for horns `Lambda^n_i` with `1 <= n <= k < cap`.
pub fn is_kan_up_to(x: &TruncSSet, k: usize) -> Result<KanReport> {
    if k >= x.cap() {
        return Err(Error::CapExceeded {
            requested: k,
            cap: x.cap(),
        });
    }
    let mut report = KanReport {
        max_dim: k,
        unfilled: Vec::new(),
    };
    for n in 1..=k {
        for i in 0..=n {
            let filled: HashSet<Vec<usize>> = (0..x.len(n))
                .map(|z| {
                    (0..=n)
                        .filter(|&j| j != i)
                        .map(|j| x.face(n, j, z))
                        .collect()
                })
                .collect();
            let slots: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
            let mut chosen = Vec::with_capacity(n);
            enumerate_horns(x, n, &slots, &mut chosen, &mut |faces| {
                if !filled.contains(faces) {
                    report.unfilled.push(UnfilledHorn {
                        dim: n,
                        missing: i,
                        faces: faces
                            .iter()
                            .map(|&y| x.label(n - 1, y).to_string())
                            .collect(),
                    });
                }
            });
        }
    }
    Ok(report)
}

/// Compatible families: `d_a y_b = d_{b-1} y_a` for `a < b`.
fn enumerate_horns(
    x: &TruncSSet,
    n: usize,
    slots: &[usize],
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if chosen.len() == slots.len() {
        visit(chosen);
        return;
    }
    let b = slots[chosen.len()];
    'cand: for y in 0..x.len(n - 1) {
        for (k, &a) in slots[..chosen.len()].iter().enumerate() {
            if n >= 2 && x.face(n - 1, a, y) != x.face(n - 1, b - 1, chosen[k]) {
                continue 'cand;
            }
        }
        chosen.push(y);
        enumerate_horns(x, n, slots, chosen, visit);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::{circle, point, standard_simplex};

    #[test]
    fn interval_fails_outer_horn() {
        let r = is_kan_up_to(&standard_simplex(1, 3), 2).unwrap();
        assert!(r.unfilled.iter().any(|h| h.dim == 2 && h.missing == 0));
        assert!(!r.unfilled.iter().any(|h| h.missing == 1 && h.dim == 2));
    }

    #[test]
    fn point_is_kan() {
        assert!(is_kan_up_to(&point(4), 3).unwrap().is_kan());
        assert!(!is_kan_up_to(&circle(3), 2).unwrap().is_kan());
    }
}
