use std::collections::HashMap;

use super::{tabulate, SimplicialMap, TruncSSet};
use crate::error::{Error, Result};

/// All monotone maps `[m] -> [n]` in lexicographic order.
pub fn monotone_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn rec(n: usize, m: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            rec(n, m, v, cur, out);
            cur.pop();
        }
    }
    rec(n, m, 0, &mut cur, &mut out);
    out
}

pub(crate) fn vertex_label(v: &[usize], n: usize) -> String {
    if n < 10 {
        v.iter()
            .map(|d| char::from_digit(*d as u32, 10).unwrap())
            .collect()
    } else {
        v.iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

pub(crate) fn parse_vertex_label(l: &str, n: usize) -> Vec<usize> {
    if n < 10 {
        l.chars()
            .map(|c| c.to_digit(10).unwrap() as usize)
            .collect()
    } else {
        l.split('.').map(|c| c.parse().unwrap()).collect()
    }
}

/// Simplicial subset of `Delta^n` cut out by `keep` on vertex sequences,
/// which must be closed under faces and degeneracies.
fn simplex_like(n: usize, cap: usize, keep: impl Fn(&[usize]) -> bool) -> TruncSSet {
    let seqs: Vec<Vec<Vec<usize>>> = (0..=cap)
        .map(|k| {
            monotone_maps(n, k)
                .into_iter()
                .filter(|v| keep(v))
                .collect()
        })
        .collect();
    let index: Vec<HashMap<Vec<usize>, usize>> = seqs
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect())
        .collect();
    let labels = seqs
        .iter()
        .map(|l| l.iter().map(|v| vertex_label(v, n)).collect())
        .collect();
    tabulate(
        cap,
        labels,
        |k, i, x| {
            let mut v = seqs[k][x].clone();
            v.remove(i);
            index[k - 1][&v]
        },
        |k, i, x| {
            let mut v = seqs[k][x].clone();
            v.insert(i, v[i]);
            index[k + 1][&v]
        },
    )
}

/// `Delta^n` truncated at `cap`; a `k`-simplex is a monotone map `[k] -> [n]`
/// labelled by its values.
pub fn standard_simplex(n: usize, cap: usize) -> TruncSSet {
    simplex_like(n, cap, |_| true)
}

/// `boundary Delta^n`: the non-surjective simplices.
pub fn boundary(n: usize, cap: usize) -> TruncSSet {
    simplex_like(n, cap, |v| (0..=n).any(|j| !v.contains(&j)))
}

/// Horn `Lambda^n_k`: simplices missing some vertex other than `k`.
pub fn horn(n: usize, k: usize, cap: usize) -> TruncSSet {
    simplex_like(n, cap, |v| (0..=n).any(|j| j != k && !v.contains(&j)))
}

/// Constant simplicial set on the given elements.
pub fn discrete<S: AsRef<str>>(elements: &[S], cap: usize) -> Result<TruncSSet> {
    let level: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
    let mut seen = std::collections::HashSet::new();
    for e in &level {
        if !seen.insert(e) {
            return Err(Error::DuplicateId(e.clone()));
        }
    }
    Ok(tabulate(
        cap,
        vec![level; cap + 1],
        |_, _, x| x,
        |_, _, x| x,
    ))
}

pub fn point(cap: usize) -> TruncSSet {
    discrete(&["*"], cap).unwrap()
}

pub fn empty(cap: usize) -> TruncSSet {
    tabulate(cap, vec![Vec::new(); cap + 1], |_, _, x| x, |_, _, x| x)
}

/// `Delta^1 / boundary Delta^1`: one vertex and one nondegenerate edge.
pub fn circle(cap: usize) -> TruncSSet {
    let d1 = standard_simplex(1, cap);
    let keep: Vec<Vec<usize>> = (0..=cap)
        .map(|k| {
            (0..d1.len(k))
                .filter(|&x| {
                    let l = d1.label(k, x);
                    !(l.chars().all(|c| c == '1') && k > 0 || k == 0 && l == "1")
                })
                .collect()
        })
        .collect();
    // constant sequences collapse to the single vertex `0...0`
    let pos: Vec<HashMap<usize, usize>> = keep
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, &x)| (x, i)).collect())
        .collect();
    let collapse = |k: usize, x: usize| {
        let l = d1.label(k, x);
        if l.chars().all(|c| c == l.chars().next().unwrap()) {
            pos[k][&0]
        } else {
            pos[k][&x]
        }
    };
    let labels = keep
        .iter()
        .enumerate()
        .map(|(k, l)| l.iter().map(|&x| d1.label(k, x).to_string()).collect())
        .collect();
    tabulate(
        cap,
        labels,
        |k, i, x| collapse(k - 1, d1.face(k, i, keep[k][x])),
        |k, i, x| collapse(k + 1, d1.degen(k, i, keep[k][x])),
    )
}

/// Simplicial subset of `x` on the simplices accepted by `keep`, with its
/// inclusion. Fails when `keep` is not closed under faces and degeneracies.
pub fn subobject(
    x: &TruncSSet,
    keep: impl Fn(usize, usize) -> bool,
) -> Result<(TruncSSet, SimplicialMap)> {
    let kept: Vec<Vec<usize>> = (0..=x.cap())
        .map(|n| (0..x.len(n)).filter(|&s| keep(n, s)).collect())
        .collect();
    let pos: Vec<HashMap<usize, usize>> = kept
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, &s)| (s, i)).collect())
        .collect();
    for n in 0..=x.cap() {
        for &s in &kept[n] {
            let closed = (n == 0 || (0..=n).all(|i| pos[n - 1].contains_key(&x.face(n, i, s))))
                && (n == x.cap() || (0..=n).all(|i| pos[n + 1].contains_key(&x.degen(n, i, s))));
            if !closed {
                return Err(Error::MalformedTable(format!(
                    "subobject not closed at `{}`",
                    x.label(n, s)
                )));
            }
        }
    }
    let labels = kept
        .iter()
        .enumerate()
        .map(|(n, l)| l.iter().map(|&s| x.label(n, s).to_string()).collect())
        .collect();
    let sub = tabulate(
        x.cap(),
        labels,
        |n, i, s| pos[n - 1][&x.face(n, i, kept[n][s])],
        |n, i, s| pos[n + 1][&x.degen(n, i, kept[n][s])],
    );
    let inc = SimplicialMap::tabulate(&sub, x, |n, s| kept[n][s]);
    Ok((sub, inc))
}

/// Map of standard simplices induced by a monotone `theta: [m] -> [n]`.
pub fn simplex_operator(theta: &[usize], n: usize, cap: usize) -> SimplicialMap {
    let m = theta.len() - 1;
    let src = standard_simplex(m, cap);
    let tgt = standard_simplex(n, cap);
    SimplicialMap::tabulate(&src, &tgt, |k, x| {
        let v = parse_vertex_label(src.label(k, x), m);
        let w: Vec<usize> = v.iter().map(|&i| theta[i]).collect();
        tgt.index_of(k, &vertex_label(&w, n)).unwrap()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_and_horn_sizes() {
        let b = boundary(1, 2);
        assert_eq!(b.level_sizes(), vec![2, 2, 2]);
        let h = horn(2, 1, 2);
        assert_eq!(h.nondegenerate_counts(), vec![3, 2, 0]);
        assert_eq!(boundary(2, 2).nondegenerate_counts(), vec![3, 3, 0]);
    }

    #[test]
    fn circle_shape() {
        let c = circle(4);
        assert_eq!(c.nondegenerate_counts(), vec![1, 1, 0, 0, 0]);
        assert_eq!(c.level_sizes(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn simplex_operator_is_simplicial() {
        let f = simplex_operator(&[0, 2], 2, 3);
        assert_eq!(
            f.source().level_sizes(),
            standard_simplex(1, 3).level_sizes()
        );
    }

    #[test]
    fn monotone_count() {
        assert_eq!(monotone_maps(2, 2).len(), 10);
    }
}
