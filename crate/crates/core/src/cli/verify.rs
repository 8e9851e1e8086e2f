//! The verification suite run by `verify <claim|all>`.

use std::fmt;
use std::time::Instant;

use clap::ValueEnum;

use super::doc::Workspace;
use crate::barcobar::{
    bar_resolution, check_extra_degeneracy, check_extra_homotopy, compare_discrete_bars, cyclic_bar, enriched_simplicial_bar,
    extra_degeneracy, hocoend, hocoend_cyclic, simplicial_bar, unit_bar,
};
use crate::compare::{
    cylinder_equivalence, homotopy_invariance_test, simplicial_reedy_failures, verify_bar_eq_lan, verify_bar_pullout, verify_dhks,
    verify_enriched_bar_pullout, verify_lan_adjt, verify_lan_comma, verify_lan_comma2, verify_loc_eq_bar, Check,
};
use crate::diagram::{enriched_tensor_product, tensor_product, Bimodule, Diagram, SDiagram, SSetCat};
use crate::error::{Error, Result};
use crate::fincat::FinFunctor;
use crate::simpset::{homology, homology_iso_witness};

/// Strength of the evidence behind a report line, weakest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Witness {
    /// Homology isomorphism below the cap.
    Hwit,
    /// Simplicial homotopy equivalence with explicit homotopies.
    She,
    /// Isomorphism of simplicial sets, or an exact identity check.
    Iso,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Witness::Hwit => "HWIT",
            Witness::She => "SHE",
            Witness::Iso => "ISO",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ReportLine {
    pub claim: String,
    pub instance: String,
    pub pass: bool,
    pub witness: Witness,
    pub millis: u128,
    pub detail: String,
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let outcome = if self.pass { "verified" } else { "failed" };
        write!(f, "{}\t{}\t{}\t{}\t{}ms", self.claim, self.instance, outcome, self.witness, self.millis)?;
        if !self.detail.is_empty() {
            write!(f, "\t{}", self.detail)?;
        }
        Ok(())
    }
}

pub const CLAIMS: &[&str] = &[
    "loc=bar",
    "bar-pullout",
    "enriched-bar-pullout",
    "dhks",
    "dhks-delta",
    "lan-comma",
    "lan-comma2",
    "lan-adjt",
    "bar=lan",
    "extra-degeneracy",
    "reedy-bar",
    "homotopy-invariance",
    "enriched-discrete",
    "hocoend",
];

struct Suite<'a> {
    source: &'a str,
    lines: Vec<ReportLine>,
}

impl Suite<'_> {
    fn run(&mut self, claim: &str, instance: &str, witness: Witness, f: impl FnOnce() -> Result<Vec<Check>>) {
        let start = Instant::now();
        let (pass, detail) = match f() {
            Ok(checks) => {
                let bad: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| c.to_string()).collect();
                (bad.is_empty(), bad.join("; "))
            }
            Err(e) => (false, format!("error: {e}")),
        };
        self.lines.push(ReportLine {
            claim: claim.into(),
            instance: format!("{}/{instance}", self.source),
            pass,
            witness,
            millis: start.elapsed().as_millis(),
            detail,
        });
    }
}

fn weights_for<'a>(ws: &'a Workspace, category: &str) -> Vec<(String, &'a Diagram)> {
    ws.weights
        .iter()
        .filter(|(_, w)| w.category == category)
        .map(|(id, w)| (id.clone(), &w.item))
        .collect()
}

fn enriched_pairs(ws: &Workspace) -> Vec<(String, SDiagram, SDiagram)> {
    let mut out = Vec::new();
    for (fid, f) in ws.sdiagrams.iter().filter(|(id, _)| !ws.sdiagram_is_weight(id)) {
        for (gid, g) in ws.sdiagrams.iter().filter(|(id, g)| ws.sdiagram_is_weight(id) && g.category == f.category) {
            out.push((format!("{gid}*{fid}"), g.item.clone(), f.item.clone()));
        }
        let shape: &SSetCat = f.item.shape();
        for d in 0..shape.num_objects() {
            out.push((
                format!("hom(-,{})*{fid}", shape.object_name(d)),
                SDiagram::hom_weight(shape, d),
                f.item.clone(),
            ));
        }
    }
    out
}

/// Runs `claim` (or every claim for `all`) over the items of `ws`.
pub fn verify(claim: &str, ws: &Workspace, source: &str, min: Witness) -> Result<Vec<ReportLine>> {
    if claim != "all" && !CLAIMS.contains(&claim) {
        return Err(Error::UnknownClaim(claim.into()));
    }
    let wanted = |c: &str| claim == "all" || claim == c;
    let mut s = Suite {
        source,
        lines: Vec::new(),
    };
    let cap = ws.cap;
    for (id, d) in &ws.diagrams {
        let f = &d.item;
        if wanted("loc=bar") {
            s.run("loc=bar", id, Witness::Iso, || Ok(vec![verify_loc_eq_bar(f)?]));
        }
        if wanted("bar-pullout") {
            let mut weights = weights_for(ws, &d.category);
            let homs: Vec<(String, Diagram)> = f
                .shape()
                .objects()
                .map(|o| (format!("hom(-,{})", f.shape().object_name(o)), Diagram::hom_weight(f.shape(), o, cap)))
                .collect();
            weights.extend(homs.iter().map(|(n, w)| (n.clone(), w)));
            for (wid, g) in weights {
                s.run("bar-pullout", &format!("{wid}*{id}"), Witness::Iso, || verify_bar_pullout(g, f));
            }
        }
        if wanted("dhks") || wanted("dhks-delta") {
            let start = Instant::now();
            let result = verify_dhks(f);
            let elapsed = start.elapsed().as_millis();
            let split = |pick: &dyn Fn(usize) -> bool| -> Result<Vec<Check>> {
                result
                    .clone()
                    .map(|cs| cs.into_iter().enumerate().filter(|(i, _)| pick(*i)).map(|(_, c)| c).collect())
            };
            if wanted("dhks") {
                s.run("dhks", id, Witness::Iso, || split(&|i| i < 3));
                s.lines.last_mut().unwrap().millis = elapsed;
            }
            if wanted("dhks-delta") {
                s.run("dhks-delta", id, Witness::Hwit, || split(&|i| i == 3));
                s.lines.last_mut().unwrap().millis = elapsed;
            }
        }
        if wanted("bar=lan") {
            let terminal = Diagram::terminal(&f.shape().opposite(), cap);
            s.run("bar=lan", &format!("*{id}"), Witness::Iso, || verify_bar_eq_lan(&terminal, f));
            for (wid, g) in weights_for(ws, &d.category) {
                s.run("bar=lan", &format!("{wid}*{id}"), Witness::Iso, || verify_bar_eq_lan(g, f));
            }
        }
        if wanted("extra-degeneracy") {
            for o in f.shape().objects() {
                let name = format!("{id}@{}", f.shape().object_name(o));
                s.run("extra-degeneracy", &name, Witness::She, || {
                    let (bar, ed) = extra_degeneracy(f, o)?;
                    let ids = check_extra_degeneracy(&bar.simp, &ed);
                    let homotopy = check_extra_homotopy(&bar.simp, &ed);
                    let res = bar_resolution(f)?;
                    let eps = homology_iso_witness(res.epsilon.component(o), cap.saturating_sub(1))?;
                    Ok(vec![
                        Check::new("extra degeneracy identities", ids.is_empty(), ids.join(", ")),
                        Check::new("contracting homotopy", homotopy.is_empty(), homotopy.join(", ")),
                        Check::new("augmentation is a homology isomorphism", eps, ""),
                    ])
                });
            }
        }
        if wanted("reedy-bar") {
            s.run("reedy-bar", &format!("*{id}"), Witness::Iso, || {
                let bad = simplicial_reedy_failures(&unit_bar(f, cap)?.simp, cap.min(3))?;
                Ok(vec![Check::new("latching maps injective", bad.is_empty(), bad.join(", "))])
            });
            for (wid, g) in weights_for(ws, &d.category) {
                s.run("reedy-bar", &format!("{wid}*{id}"), Witness::Iso, || {
                    let bad = simplicial_reedy_failures(&simplicial_bar(g, f, cap)?.simp, cap.min(3))?;
                    Ok(vec![Check::new("latching maps injective", bad.is_empty(), bad.join(", "))])
                });
            }
        }
        if wanted("homotopy-invariance") {
            s.run("homotopy-invariance", &format!("cyl*{id}"), Witness::Hwit, || {
                let (phi, w) = cylinder_equivalence(f)?;
                homotopy_invariance_test(&phi, Some(&w))
            });
        }
        if wanted("enriched-discrete") {
            let terminal = Diagram::terminal(&f.shape().opposite(), cap);
            let mut weights = weights_for(ws, &d.category);
            weights.push(("*".into(), &terminal));
            for (wid, g) in weights {
                s.run("enriched-discrete", &format!("{wid}*{id}"), Witness::Iso, || {
                    let sc = SSetCat::discrete(f.shape(), cap);
                    let (sg, sf) = (SDiagram::from_diagram(g, &sc.opposite())?, SDiagram::from_diagram(f, &sc)?);
                    let same_tensor = enriched_tensor_product(&sg, &sf)?.sset == tensor_product(g, f)?.sset;
                    let bars = compare_discrete_bars(&simplicial_bar(g, f, cap)?, &enriched_simplicial_bar(&sg, &sf, cap)?);
                    Ok(vec![
                        Check::new("tensor products agree", same_tensor, ""),
                        Check::new("bars agree after renaming", bars.is_empty(), bars.join(", ")),
                    ])
                });
            }
        }
    }
    if wanted("enriched-bar-pullout") {
        for (name, g, f) in enriched_pairs(ws) {
            s.run("enriched-bar-pullout", &name, Witness::Iso, || verify_enriched_bar_pullout(&g, &f));
        }
    }
    if wanted("reedy-bar") {
        for (id, sc) in &ws.sset_categories {
            s.run("reedy-bar", &format!("cyclic({id})"), Witness::Iso, || {
                let bad = simplicial_reedy_failures(&cyclic_bar(&Bimodule::hom(sc), cap)?.simp, cap.min(3))?;
                Ok(vec![Check::new("latching maps injective", bad.is_empty(), bad.join(", "))])
            });
        }
        for (name, g, f) in enriched_pairs(ws) {
            s.run("reedy-bar", &name, Witness::Iso, || {
                let bad = simplicial_reedy_failures(&enriched_simplicial_bar(&g, &f, cap)?.simp, cap.min(3))?;
                Ok(vec![Check::new("latching maps injective", bad.is_empty(), bad.join(", "))])
            });
        }
    }
    if wanted("hocoend") {
        for (id, sc) in &ws.sset_categories {
            s.run("hocoend", &format!("hom({id})"), Witness::Hwit, || {
                let h = Bimodule::hom(sc);
                let deg = cap.saturating_sub(1);
                let (full, cyclic) = (homology(&hocoend(&h)?, deg)?, homology(&hocoend_cyclic(&h)?, deg)?);
                let shown: Vec<String> = cyclic.iter().map(|g| g.to_string()).collect();
                Ok(vec![Check::new("full and cyclic homology agree", full == cyclic, shown.join(", "))])
            });
        }
    }
    for (cid, c) in &ws.categories {
        if wanted("lan-comma") {
            s.run("lan-comma", cid, Witness::Iso, || Ok(vec![verify_lan_comma(&FinFunctor::identity(c), cap)?]));
        }
        if wanted("lan-comma2") {
            s.run("lan-comma2", cid, Witness::Iso, || Ok(vec![verify_lan_comma2(c, cap, 1)?]));
        }
    }
    if wanted("lan-adjt") {
        for (kid, k) in &ws.functors {
            let src = k.item.source();
            let tgt = k.item.target();
            let terminal = Diagram::terminal(&src.opposite(), cap);
            let mut weights = weights_for(ws, &k.category);
            weights.push(("*".into(), &terminal));
            let reps: Vec<(String, Diagram)> = tgt
                .objects()
                .map(|o| (format!("rep({})", tgt.object_name(o)), Diagram::representable(tgt, o, cap)))
                .collect();
            let mut diagrams: Vec<(String, &Diagram)> = ws
                .diagrams
                .iter()
                .filter(|(_, d)| d.item.shape().table_eq(tgt))
                .map(|(id, d)| (id.clone(), &d.item))
                .collect();
            diagrams.extend(reps.iter().map(|(n, d)| (n.clone(), d)));
            for (wid, g) in &weights {
                for (fid, f) in &diagrams {
                    s.run("lan-adjt", &format!("{kid}:{wid}*{fid}"), Witness::Iso, || {
                        Ok(vec![verify_lan_adjt(&k.item, g, f)?])
                    });
                }
            }
        }
    }
    for l in &mut s.lines {
        if l.witness < min && l.pass {
            l.pass = false;
            l.detail = format!("witness class {} is below the requested {}", l.witness, min);
        }
    }
    Ok(s.lines)
}

