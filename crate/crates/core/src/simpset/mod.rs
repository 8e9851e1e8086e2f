//! Truncated simplicial sets with explicit face and degeneracy tables.
//!
//! Every simplex up to the cap is stored, degenerate ones included. A
//! simplex is addressed by `(level, index)`; labels are stable strings used
//! for lookups and serialization.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

mod build;
mod homology;
mod iso;
mod kan;
mod maps;
mod ops;

pub use build::*;
pub use homology::{homology, homology_iso_witness, rank_mod_p, HomologyGroup};
pub use iso::is_isomorphic;
pub use kan::{is_kan_up_to, KanReport};
pub use maps::{enumerate_maps, for_each_map, mapping_space, MappingSpace};
pub use ops::*;

struct SSetData {
    cap: usize,
    labels: Vec<Vec<String>>,
    index: Vec<HashMap<String, usize>>,
    /// `faces[n][i][x]` for `n >= 1`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degens[n][i][x]` for `n < cap`.
    degens: Vec<Vec<Vec<usize>>>,
    degenerate: Vec<Vec<bool>>,
}

#[derive(Clone)]
pub struct TruncSSet {
    inner: Arc<SSetData>,
}

impl fmt::Debug for TruncSSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TruncSSet(cap {}, levels {:?})",
            self.cap(),
            self.level_sizes()
        )
    }
}

impl PartialEq for TruncSSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.cap == other.inner.cap
                && self.inner.labels == other.inner.labels
                && self.inner.faces == other.inner.faces
                && self.inner.degens == other.inner.degens)
    }
}

impl Eq for TruncSSet {}

impl TruncSSet {
    /// Builds and audits a truncated simplicial set. `faces[n]` holds `n + 1`
    /// tables for `1 <= n <= cap` (`faces[0]` is empty) and `degens[n]`
    /// holds `n + 1` tables for `n < cap`.
    pub fn from_tables(
        cap: usize,
        labels: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Result<TruncSSet> {
        let x = TruncSSet::assemble(cap, labels, faces, degens)?;
        x.audit()?;
        Ok(x)
    }

    fn assemble(
        cap: usize,
        labels: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        mut degens: Vec<Vec<Vec<usize>>>,
    ) -> Result<TruncSSet> {
        let bad = |m: String| Err(Error::MalformedTable(m));
        if labels.len() != cap + 1 || faces.len() != cap + 1 {
            return bad(format!("expected {} levels", cap + 1));
        }
        if degens.len() == cap {
            degens.push(Vec::new());
        }
        if degens.len() != cap + 1 {
            return bad(format!("expected {} degeneracy levels", cap + 1));
        }
        let mut index = Vec::with_capacity(cap + 1);
        for level in &labels {
            let mut m = HashMap::with_capacity(level.len());
            for (i, l) in level.iter().enumerate() {
                if m.insert(l.clone(), i).is_some() {
                    return Err(Error::DuplicateId(l.clone()));
                }
            }
            index.push(m);
        }
        for n in 0..=cap {
            let want_f = if n == 0 { 0 } else { n + 1 };
            if faces[n].len() != want_f {
                return bad(format!("level {n} needs {want_f} face tables"));
            }
            for t in &faces[n] {
                if t.len() != labels[n].len() || t.iter().any(|&y| y >= labels[n - 1].len()) {
                    return bad(format!("face table at level {n} has wrong size or range"));
                }
            }
            let want_s = if n == cap { 0 } else { n + 1 };
            if degens[n].len() != want_s {
                return bad(format!("level {n} needs {want_s} degeneracy tables"));
            }
            for t in &degens[n] {
                if t.len() != labels[n].len() || t.iter().any(|&y| y >= labels[n + 1].len()) {
                    return bad(format!(
                        "degeneracy table at level {n} has wrong size or range"
                    ));
                }
            }
        }
        let mut degenerate = vec![vec![false; labels[0].len()]];
        for n in 1..=cap {
            degenerate.push(
                (0..labels[n].len())
                    .map(|x| (0..n).any(|i| degens[n - 1][i][faces[n][i][x]] == x))
                    .collect(),
            );
        }
        Ok(TruncSSet {
            inner: Arc::new(SSetData {
                cap,
                labels,
                index,
                faces,
                degens,
                degenerate,
            }),
        })
    }

    /// Checks every simplicial identity on every simplex.
    pub fn audit(&self) -> Result<()> {
        let cap = self.cap();
        let fail = |identity: String, level: usize, x: usize| {
            Err(Error::SimplicialIdentityViolation {
                identity,
                level,
                simplex: self.label(level, x).to_string(),
            })
        };
        for n in 2..=cap {
            for x in 0..self.len(n) {
                for j in 1..=n {
                    for i in 0..j {
                        if self.face(n - 1, i, self.face(n, j, x))
                            != self.face(n - 1, j - 1, self.face(n, i, x))
                        {
                            return fail(format!("d{i} d{j} = d{} d{i}", j - 1), n, x);
                        }
                    }
                }
            }
        }
        for n in 0..cap {
            for x in 0..self.len(n) {
                for j in 0..=n {
                    let sx = self.degen(n, j, x);
                    if self.face(n + 1, j, sx) != x || self.face(n + 1, j + 1, sx) != x {
                        return fail(format!("d{j} s{j} = d{} s{j} = id", j + 1), n, x);
                    }
                    for i in 0..=n + 1 {
                        if i < j {
                            if self.face(n + 1, i, sx)
                                != self.degen(n - 1, j - 1, self.face(n, i, x))
                            {
                                return fail(format!("d{i} s{j} = s{} d{i}", j - 1), n, x);
                            }
                        } else if i > j + 1
                            && self.face(n + 1, i, sx)
                                != self.degen(n - 1, j, self.face(n, i - 1, x))
                        {
                            return fail(format!("d{i} s{j} = s{j} d{}", i - 1), n, x);
                        }
                    }
                    if n + 1 < cap {
                        for i in 0..=j {
                            if self.degen(n + 1, i, sx)
                                != self.degen(n + 1, j + 1, self.degen(n, i, x))
                            {
                                return fail(format!("s{i} s{j} = s{} s{i}", j + 1), n, x);
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn cap(&self) -> usize {
        self.inner.cap
    }

    pub fn len(&self, n: usize) -> usize {
        self.inner.labels[n].len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.labels[0].is_empty()
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.inner.labels.iter().map(|l| l.len()).collect()
    }

    pub fn total_size(&self) -> usize {
        self.inner.labels.iter().map(|l| l.len()).sum()
    }

    pub fn label(&self, n: usize, x: usize) -> &str {
        &self.inner.labels[n][x]
    }

    pub fn labels(&self, n: usize) -> &[String] {
        &self.inner.labels[n]
    }

    pub fn index_of(&self, n: usize, label: &str) -> Option<usize> {
        self.inner.index[n].get(label).copied()
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.inner.faces[n][i][x]
    }

    pub fn degen(&self, n: usize, i: usize, x: usize) -> usize {
        self.inner.degens[n][i][x]
    }

    #[cfg(test)]
    pub(crate) fn face_table(&self, n: usize, i: usize) -> &[usize] {
        &self.inner.faces[n][i]
    }

    #[cfg(test)]
    pub(crate) fn degen_table(&self, n: usize, i: usize) -> &[usize] {
        &self.inner.degens[n][i]
    }

    pub fn is_degenerate(&self, n: usize, x: usize) -> bool {
        self.inner.degenerate[n][x]
    }

    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        (0..self.len(n))
            .filter(|&x| !self.is_degenerate(n, x))
            .collect()
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.cap())
            .map(|n| self.nondegenerate(n).len())
            .collect()
    }

    /// Highest level holding a nondegenerate simplex.
    pub fn dimension(&self) -> Option<usize> {
        (0..=self.cap())
            .rev()
            .find(|&n| !self.nondegenerate(n).is_empty())
    }

    /// All faces of `x` in order `d_0 x, ..., d_n x`.
    pub fn faces_of(&self, n: usize, x: usize) -> Vec<usize> {
        (0..=n).map(|i| self.face(n, i, x)).collect()
    }

    /// `theta^* x` for a monotone `theta: [m] -> [n]` given by its values.
    pub fn apply_operator(&self, n: usize, x: usize, theta: &[usize]) -> usize {
        let m = theta.len() - 1;
        debug_assert!(theta.windows(2).all(|w| w[0] <= w[1]) && theta[m] <= n);
        // theta = eta o epsilon with epsilon surjective and eta injective
        let mut image: Vec<usize> = theta.to_vec();
        image.dedup();
        let mut y = x;
        let mut level = n;
        for j in (0..=n).rev() {
            if image.binary_search(&j).is_err() {
                y = self.face(level, j, y);
                level -= 1;
            }
        }
        for i in 0..m {
            if theta[i] == theta[i + 1] {
                y = self.degen(level, i, y);
                level += 1;
            }
        }
        y
    }

    /// Vertex `i` of `x`.
    pub fn vertex(&self, n: usize, x: usize, i: usize) -> usize {
        self.apply_operator(n, x, &[i])
    }

    pub fn vertices(&self, n: usize, x: usize) -> Vec<usize> {
        (0..=n).map(|i| self.vertex(n, x, i)).collect()
    }

    /// The same simplicial set cut down to a smaller cap.
    pub fn truncate(&self, cap: usize) -> Result<TruncSSet> {
        if cap > self.cap() {
            return Err(Error::CapMismatch(cap, self.cap()));
        }
        if cap == self.cap() {
            return Ok(self.clone());
        }
        let d = &self.inner;
        let mut degens = d.degens[..cap].to_vec();
        degens.push(Vec::new());
        TruncSSet::assemble(
            cap,
            d.labels[..=cap].to_vec(),
            d.faces[..=cap].to_vec(),
            degens,
        )
    }

    /// Relabels simplices; `rename(n, old)` must be injective per level.
    pub fn relabel(&self, mut rename: impl FnMut(usize, &str) -> String) -> Result<TruncSSet> {
        let d = &self.inner;
        let labels = d
            .labels
            .iter()
            .enumerate()
            .map(|(n, l)| l.iter().map(|s| rename(n, s)).collect())
            .collect();
        TruncSSet::assemble(d.cap, labels, d.faces.clone(), d.degens.clone())
    }

    pub(crate) fn assemble_unchecked(
        cap: usize,
        labels: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> TruncSSet {
        let x = TruncSSet::assemble(cap, labels, faces, degens).expect("well-formed tables");
        debug_assert!(x.audit().is_ok(), "{:?}", x.audit());
        x
    }

    pub(crate) fn same(&self, other: &TruncSSet) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self == other
    }
}

/// Assembles a simplicial set level by level from face and degeneracy
/// functions on indices.
pub(crate) fn tabulate(
    cap: usize,
    labels: Vec<Vec<String>>,
    mut face: impl FnMut(usize, usize, usize) -> usize,
    mut degen: impl FnMut(usize, usize, usize) -> usize,
) -> TruncSSet {
    let faces = (0..=cap)
        .map(|n| {
            if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| (0..labels[n].len()).map(|x| face(n, i, x)).collect())
                    .collect()
            }
        })
        .collect();
    let degens = (0..=cap)
        .map(|n| {
            if n == cap {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| (0..labels[n].len()).map(|x| degen(n, i, x)).collect())
                    .collect()
            }
        })
        .collect();
    TruncSSet::assemble_unchecked(cap, labels, faces, degens)
}

#[derive(Clone)]
pub struct SimplicialMap {
    source: TruncSSet,
    target: TruncSSet,
    levels: Arc<Vec<Vec<usize>>>,
}

impl fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialMap({:?} -> {:?})", self.source, self.target)
    }
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.levels == other.levels
            && self.source.same(&other.source)
            && self.target.same(&other.target)
    }
}

impl SimplicialMap {
    pub fn new(
        source: TruncSSet,
        target: TruncSSet,
        levels: Vec<Vec<usize>>,
    ) -> Result<SimplicialMap> {
        if source.cap() != target.cap() {
            return Err(Error::CapMismatch(source.cap(), target.cap()));
        }
        if levels.len() != source.cap() + 1
            || levels
                .iter()
                .enumerate()
                .any(|(n, l)| l.len() != source.len(n) || l.iter().any(|&y| y >= target.len(n)))
        {
            return Err(Error::MalformedTable(
                "map table has wrong size or range".into(),
            ));
        }
        let f = SimplicialMap::new_unchecked(source, target, levels);
        f.check()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: TruncSSet,
        target: TruncSSet,
        levels: Vec<Vec<usize>>,
    ) -> SimplicialMap {
        SimplicialMap {
            source,
            target,
            levels: Arc::new(levels),
        }
    }

    /// Map given by a function on `(level, index)`.
    pub fn tabulate(
        source: &TruncSSet,
        target: &TruncSSet,
        mut f: impl FnMut(usize, usize) -> usize,
    ) -> SimplicialMap {
        let levels = (0..=source.cap())
            .map(|n| (0..source.len(n)).map(|x| f(n, x)).collect())
            .collect();
        let m = SimplicialMap::new_unchecked(source.clone(), target.clone(), levels);
        debug_assert!(m.check().is_ok(), "{:?}", m.check());
        m
    }

    fn check(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        for n in 0..=s.cap() {
            for x in 0..s.len(n) {
                let fx = self.apply(n, x);
                if n > 0 {
                    for i in 0..=n {
                        if self.apply(n - 1, s.face(n, i, x)) != t.face(n, i, fx) {
                            return Err(Error::NotSimplicial(format!(
                                "d{i} at `{}`",
                                s.label(n, x)
                            )));
                        }
                    }
                }
                if n < s.cap() {
                    for i in 0..=n {
                        if self.apply(n + 1, s.degen(n, i, x)) != t.degen(n, i, fx) {
                            return Err(Error::NotSimplicial(format!(
                                "s{i} at `{}`",
                                s.label(n, x)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: &TruncSSet) -> SimplicialMap {
        SimplicialMap::new_unchecked(
            x.clone(),
            x.clone(),
            (0..=x.cap()).map(|n| (0..x.len(n)).collect()).collect(),
        )
    }

    pub fn source(&self) -> &TruncSSet {
        &self.source
    }

    pub fn target(&self) -> &TruncSSet {
        &self.target
    }

    pub fn apply(&self, n: usize, x: usize) -> usize {
        self.levels[n][x]
    }

    pub fn level(&self, n: usize) -> &[usize] {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    /// `self o g`.
    pub fn after(&self, g: &SimplicialMap) -> SimplicialMap {
        debug_assert!(g.target.same(&self.source));
        SimplicialMap::new_unchecked(
            g.source.clone(),
            self.target.clone(),
            g.levels
                .iter()
                .enumerate()
                .map(|(n, l)| l.iter().map(|&y| self.apply(n, y)).collect())
                .collect(),
        )
    }

    /// Same tables on the nose, ignoring object identity of source/target.
    pub fn same_tables(&self, other: &SimplicialMap) -> bool {
        self.levels == other.levels
    }

    pub fn is_injective(&self) -> bool {
        self.levels.iter().enumerate().all(|(n, l)| {
            let mut seen = vec![false; self.target.len(n)];
            l.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.levels.iter().enumerate().all(|(n, l)| {
            let mut seen = vec![false; self.target.len(n)];
            l.iter().for_each(|&y| seen[y] = true);
            seen.into_iter().all(|b| b)
        })
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Option<SimplicialMap> {
        if !self.is_iso() {
            return None;
        }
        let levels = self
            .levels
            .iter()
            .map(|l| {
                let mut inv = vec![0; l.len()];
                for (x, &y) in l.iter().enumerate() {
                    inv[y] = x;
                }
                inv
            })
            .collect();
        Some(SimplicialMap::new_unchecked(
            self.target.clone(),
            self.source.clone(),
            levels,
        ))
    }

    /// Restricts both ends to a smaller cap.
    pub fn truncate(&self, cap: usize) -> Result<SimplicialMap> {
        Ok(SimplicialMap::new_unchecked(
            self.source.truncate(cap)?,
            self.target.truncate(cap)?,
            self.levels[..=cap].to_vec(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_counts() {
        let d1 = standard_simplex(1, 3);
        assert_eq!(d1.level_sizes(), vec![2, 3, 4, 5]);
        assert_eq!(d1.nondegenerate_counts(), vec![2, 1, 0, 0]);
        d1.audit().unwrap();
    }

    #[test]
    fn operator_action_matches_precomposition() {
        let d2 = standard_simplex(2, 4);
        for n in 0..=4 {
            for x in 0..d2.len(n) {
                let v = simplex_vertices(&d2, n, x);
                for m in 0..=4 {
                    for theta in monotone_maps(n, m) {
                        let y = d2.apply_operator(n, x, &theta);
                        let expect: Vec<usize> = theta.iter().map(|&t| v[t]).collect();
                        assert_eq!(simplex_vertices(&d2, m, y), expect);
                    }
                }
            }
        }
    }

    fn simplex_vertices(x: &TruncSSet, n: usize, s: usize) -> Vec<usize> {
        x.label(n, s)
            .chars()
            .map(|c| c.to_digit(10).unwrap() as usize)
            .collect()
    }

    #[test]
    fn broken_identity_is_reported() {
        let d1 = standard_simplex(1, 1);
        let mut faces = vec![
            Vec::new(),
            vec![d1.face_table(1, 0).to_vec(), d1.face_table(1, 1).to_vec()],
        ];
        faces[1][0].swap(0, 1);
        let degens = vec![vec![d1.degen_table(0, 0).to_vec()]];
        let r = TruncSSet::from_tables(1, d1.inner.labels.clone(), faces, degens);
        assert!(matches!(r, Err(Error::SimplicialIdentityViolation { .. })));
    }

    #[test]
    fn non_simplicial_map_rejected() {
        let d1 = standard_simplex(1, 2);
        let p = point(2);
        let bad = SimplicialMap::new(p.clone(), d1.clone(), vec![vec![0], vec![1], vec![0]]);
        assert!(bad.is_err());
        let good = SimplicialMap::new(d1.clone(), p, (0..=2).map(|n| vec![0; d1.len(n)]).collect());
        assert!(good.is_ok());
    }
}
