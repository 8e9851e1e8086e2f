//! Acceptance criteria. Each criterion prints one PASS/FAIL line with its
//! timing; the last one recomputes the others one dimension higher.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use hocolim::barcobar::{hocolim, unit_bar};
use hocolim::cli::{load, verify, Witness, Workspace};
use hocolim::compare::{homotopy_invariance_test, HomotopyEquivalence};
use hocolim::diagram::{Diagram, NatTransf};
use hocolim::fincat::{FinCat, FinFunctor};
use hocolim::simpset::{boundary, homology, point, product, standard_simplex, HomologyGroup, SimplicialMap, TruncSSet};

/// Result of one criterion: whether it holds, a short explanation, and a
/// signature of the computed values that must not move when the cap grows.
struct Outcome {
    pass: bool,
    detail: String,
    signature: Vec<String>,
}

fn corpus(cap: usize) -> Vec<(String, Workspace)> {
    corpus_files(cap, |_| true)
}

fn corpus_files(cap: usize, keep: impl Fn(&str) -> bool) -> Vec<(String, Workspace)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .filter(|p| keep(&p.file_stem().unwrap().to_string_lossy()))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, load(&p, Some(cap)).unwrap())
        })
        .collect()
}

fn groups(x: &TruncSSet, max: usize) -> Vec<HomologyGroup> {
    homology(x, max).unwrap()
}

fn show(gs: &[HomologyGroup]) -> String {
    gs.iter().enumerate().map(|(k, g)| format!("H_{k}={g}")).collect::<Vec<_>>().join(" ")
}

/// Runs `claims` over the corpus files accepted by `keep`; passes when
/// every line verifies and at least `min_instances` lines were produced.
fn claims(cap: usize, claims: &[&str], min_instances: usize, keep: impl Fn(&str) -> bool) -> Outcome {
    let mut lines = Vec::new();
    for (name, ws) in corpus_files(cap, keep) {
        for c in claims {
            lines.extend(verify(c, &ws, &name, Witness::Hwit).unwrap());
        }
    }
    let failed: Vec<String> = lines.iter().filter(|l| !l.pass).map(|l| l.to_string()).collect();
    let mut signature: Vec<String> = lines.iter().map(|l| format!("{} {} {}", l.claim, l.instance, l.pass)).collect();
    signature.sort();
    Outcome {
        pass: failed.is_empty() && lines.len() >= min_instances,
        detail: if failed.is_empty() {
            format!("{} instances", lines.len())
        } else {
            failed.join(" | ")
        },
        signature,
    }
}

fn span_of_points(cap: usize) -> Diagram {
    let d = FinCat::span();
    let (s0, pt) = (boundary(1, cap), point(cap));
    Diagram::from_fn(&d, |o| if d.object_name(o) == "b" { s0.clone() } else { pt.clone() }, |m, a, b| {
        if d.is_identity(m) {
            SimplicialMap::identity(a)
        } else {
            SimplicialMap::tabulate(a, b, |_, _| 0)
        }
    })
    .unwrap()
}

fn c1(cap: usize) -> Outcome {
    let gs = groups(&hocolim(&span_of_points(cap)).unwrap(), 2);
    let want = vec![HomologyGroup::free(1), HomologyGroup::free(1), HomologyGroup::free(0)];
    Outcome {
        pass: gs == want,
        detail: show(&gs),
        signature: vec![show(&gs)],
    }
}

fn c2(cap: usize) -> Outcome {
    let c2 = FinCat::cyclic_group(2);
    let gs = groups(&hocolim(&Diagram::terminal(&c2, cap)).unwrap(), 3);
    let z2 = HomologyGroup::with_torsion(0, &[2]);
    let pass = gs[1] == z2 && gs[2].is_zero() && gs[3] == z2;
    Outcome {
        pass,
        detail: show(&gs),
        signature: vec![show(&gs)],
    }
}

fn c3(cap: usize) -> Outcome {
    claims(cap, &["loc=bar"], 5, |_| true)
}

fn c4(cap: usize) -> Outcome {
    let mut o = claims(cap, &["bar-pullout", "enriched-bar-pullout"], 5, |_| true);
    // both genuinely enriched shapes must be among the instances
    let enriched = |f: &str| o.signature.iter().any(|s| s.starts_with("enriched-bar-pullout") && s.contains(f));
    let enriched = enriched("*I0 ") && enriched("*M ");
    o.pass &= enriched;
    o
}

fn c5(cap: usize) -> Outcome {
    claims(cap, &["dhks", "dhks-delta"], 3, |f| f == "span" || f == "arrow")
}

fn c6(cap: usize) -> Outcome {
    let mut o = claims(cap, &["lan-comma", "lan-comma2", "lan-adjt"], 4, |f| f == "span" || f == "arrow");
    // the other inclusion of the terminal category
    let arrow = FinCat::linear(1);
    let one = FinCat::terminal();
    let k = FinFunctor::from_names(&one, &arrow, &[("*", "0")], &[]).unwrap();
    for d in arrow.objects() {
        let f = Diagram::representable(&arrow, d, cap);
        let c = hocolim::compare::verify_lan_adjt(&k, &Diagram::terminal(&one, cap), &f).unwrap();
        o.pass &= c.pass;
        o.signature.push(format!("lan-adjt *->0 rep({}) {}", d.0, c.pass));
    }
    o
}

fn c7(cap: usize) -> Outcome {
    claims(cap, &["extra-degeneracy"], 5, |_| true)
}

fn c8(cap: usize) -> Outcome {
    claims(cap, &["bar=lan"], 3, |_| true)
}

fn c9(cap: usize) -> Outcome {
    let mut o = claims(cap, &["reedy-bar"], 5, |_| true);
    o.pass &= o.signature.iter().any(|s| s.contains("cyclic("));
    o
}

/// `Delta^1 -> Delta^1` over `[1]` collapsed objectwise to a point, with
/// the contraction onto the vertex `0`.
fn contracted_arrow(cap: usize) -> (NatTransf, Vec<HomotopyEquivalence>) {
    let arrow = FinCat::linear(1);
    let d1 = standard_simplex(1, cap);
    let pt = point(cap);
    let f = Diagram::constant(&arrow, &d1);
    let g = Diagram::terminal(&arrow, cap);
    let comps = arrow.objects().map(|_| SimplicialMap::tabulate(&d1, &pt, |_, _| 0)).collect();
    let phi = NatTransf::new(f, g, comps).unwrap();
    let zero = |l: usize| d1.index_of(l, &"0".repeat(l + 1)).unwrap();
    let min = |l: usize, t: usize, s: usize| {
        let m: String = d1.label(l, t).chars().zip(d1.label(l, s).chars()).map(|(p, q)| p.min(q)).collect();
        d1.index_of(l, &m).unwrap()
    };
    let dd = product(&d1, &d1).unwrap();
    let dp = product(&d1, &pt).unwrap();
    let w = arrow
        .objects()
        .map(|_| HomotopyEquivalence {
            inverse: SimplicialMap::tabulate(&pt, &d1, |l, _| zero(l)),
            left: SimplicialMap::tabulate(&dd, &d1, |l, i| min(l, i / d1.len(l), i % d1.len(l))),
            right: SimplicialMap::tabulate(&dp, &pt, |_, _| 0),
        })
        .collect();
    (phi, w)
}

fn c10(cap: usize) -> Outcome {
    let mut o = claims(cap, &["homotopy-invariance"], 3, |_| true);
    let (phi, w) = contracted_arrow(cap);
    let checks = homotopy_invariance_test(&phi, Some(&w)).unwrap();
    let pass = checks.iter().all(|c| c.pass);
    o.pass &= pass;
    o.signature.push(format!("contracted arrow {pass}"));
    // the groups themselves, in the valid range
    for (name, ws) in corpus(cap) {
        for (id, d) in &ws.diagrams {
            let (b1, b2) = (unit_bar(&d.item, cap).unwrap(), unit_bar(&d.item.tensor_sset(&standard_simplex(1, cap)).unwrap(), cap).unwrap());
            let (h1, h2) = (groups(&b1.realize(), 2), groups(&b2.realize(), 2));
            o.pass &= h1 == h2;
            o.signature.push(format!("{name}/{id} {}", show(&h1)));
        }
    }
    o
}

fn c11(cap: usize) -> Outcome {
    claims(cap, &["enriched-discrete"], 5, |_| true)
}

type Criterion = (usize, &'static str, u64, usize, fn(usize) -> Outcome);

const CRITERIA: &[Criterion] = &[
    (1, "circle from the span of points", 5, 4, c1),
    (2, "classifying space of Z/2", 30, 4, c2),
    (3, "local formula equals the bar construction", 60, 3, c3),
    (4, "bar pullout, plain and enriched", 60, 3, c4),
    (5, "replacement over the category of simplices", 120, 4, c5),
    (6, "comma and adjunction lemmas", 60, 3, c6),
    (7, "extra degeneracies", 30, 3, c7),
    (8, "bar construction as a Kan extension", 60, 3, c8),
    (9, "Reedy cofibrancy of bars", 30, 3, c9),
    (10, "homotopy invariance", 60, 3, c10),
    (11, "enriched and discrete bars agree", 30, 3, c11),
];

fn line(id: usize, title: &str, pass: bool, elapsed: Duration, limit: u64, detail: &str) -> bool {
    let in_time = elapsed <= Duration::from_secs(limit);
    let ok = pass && in_time;
    println!(
        "{} criterion {id:>2}: {title} ({:.2}s, limit {limit}s){}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        if detail.is_empty() { String::new() } else { format!(": {detail}") }
    );
    ok
}

fn main() {
    let mut all = true;
    let mut base = Vec::new();
    for &(id, title, limit, cap, f) in CRITERIA {
        let start = Instant::now();
        let o = f(cap);
        all &= line(id, title, o.pass, start.elapsed(), limit, &o.detail);
        base.push(o.signature);
    }
    let start = Instant::now();
    let mut moved = Vec::new();
    for (&(id, _, _, cap, f), sig) in CRITERIA.iter().zip(&base) {
        eprintln!("cap stability: criterion {id}");
        let o = f(cap + 1);
        if !o.pass || &o.signature != sig {
            moved.push(id.to_string());
        }
    }
    let detail = if moved.is_empty() { String::new() } else { format!("changed at cap + 1: {}", moved.join(", ")) };
    all &= line(12, "cap stability", moved.is_empty(), start.elapsed(), 600, &detail);
    if !all {
        eprintln!("some acceptance criteria failed");
        std::process::exit(1);
    }
}
