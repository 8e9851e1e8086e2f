//! Command-line driver: loads documents, runs constructions and the
//! verification suite, and writes serialized results.

pub mod doc;
pub mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use doc::{load, load_str, Workspace};
pub use verify::{verify, ReportLine, Witness, CLAIMS};

use crate::barcobar::{
    bar_resolution, coherent_check, coherent_unravel, cosimplicial_cobar, h_lan, hocoend, hocoend_cyclic, is_strict, simplicial_bar,
    tot_cobar,
};
use crate::compare::simplicial_reedy_failures;
use crate::diagram::{coend, cotensor_product, lan, tensor_product, Bimodule, Diagram};
use crate::error::{Error, Result};
use crate::nerve::nerve;
use crate::simpset::{homology, is_kan_up_to, TruncSSet};

#[derive(Debug, Parser)]
#[command(name = "hocolim", version, about = "Homotopy colimits and limits of finite diagrams of simplicial sets")]
pub struct Cli {
    /// Global dimension cap.
    #[arg(long = "max-dim", global = true)]
    pub max_dim: Option<usize>,
    /// Homology degrees to print, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub homology: Vec<usize>,
    /// Weakest witness class accepted by `verify`.
    #[arg(long, global = true, value_enum, default_value_t = Witness::Hwit)]
    pub witness: Witness,
    /// Directory for serialized results and reports.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Nerve of a category.
    Nerve {
        file: PathBuf,
        #[arg(long)]
        cat: String,
    },
    /// Realized two-sided bar construction.
    Hocolim {
        file: PathBuf,
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        weight: Option<String>,
    },
    /// Totalization of the cobar construction; the weight is a diagram on
    /// the same category.
    Holim {
        file: PathBuf,
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        weight: Option<String>,
        #[arg(long, default_value_t = 1)]
        cap_out: usize,
    },
    /// Levels of the simplicial bar construction.
    Bar {
        file: PathBuf,
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        weight: Option<String>,
    },
    /// Levels of the cosimplicial cobar construction.
    Cobar {
        file: PathBuf,
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        weight: Option<String>,
    },
    /// Tensor product of a weight with a diagram.
    Tensor {
        file: PathBuf,
        #[arg(long)]
        weight: String,
        #[arg(long)]
        diagram: String,
    },
    /// Cotensor product; the weight is a diagram on the same category.
    Cotensor {
        file: PathBuf,
        #[arg(long)]
        weight: String,
        #[arg(long)]
        diagram: String,
        #[arg(long, default_value_t = 1)]
        cap_out: usize,
    },
    /// Coend of a diagram on `D^op x D`.
    Coend {
        file: PathBuf,
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        cat: String,
    },
    /// Homotopy coend of the hom bimodule, in full and cyclic form.
    Hocoend {
        file: PathBuf,
        #[arg(long = "sset-category")]
        sset_category: String,
    },
    /// Left Kan extension along a functor.
    Lan {
        file: PathBuf,
        #[arg(long)]
        functor: String,
        #[arg(long)]
        diagram: String,
    },
    /// Homotopy left Kan extension along a functor.
    Hlan {
        file: PathBuf,
        #[arg(long)]
        functor: String,
        #[arg(long)]
        diagram: String,
    },
    /// Integral homology of a simplicial set.
    Homology {
        file: PathBuf,
        #[arg(long)]
        sset: String,
    },
    /// Horn filling up to a dimension.
    KanCheck {
        file: PathBuf,
        #[arg(long)]
        sset: String,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Latching maps of the bar construction.
    ReedyCheck {
        file: PathBuf,
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        weight: Option<String>,
    },
    /// Unravels the augmentation of the bar resolution into coherence data.
    Coherent {
        file: PathBuf,
        #[arg(long)]
        diagram: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Runs a claim, or `all`, over a document or a directory of documents.
    Verify { claim: String, path: PathBuf },
}

/// Text written to stdout, files for `--out`, and whether every
/// verification passed.
#[derive(Debug, Default)]
pub struct Outcome {
    pub text: String,
    pub files: Vec<(String, String)>,
    pub pass: bool,
}

fn homology_lines(out: &mut String, x: &TruncSSet, degrees: &[usize]) -> Result<()> {
    let cap = x.cap();
    let degrees: Vec<usize> = if degrees.is_empty() { (0..cap).collect() } else { degrees.to_vec() };
    if let Some(&k) = degrees.iter().find(|&&k| k >= cap) {
        return Err(Error::CapExceeded { requested: k, cap });
    }
    let Some(&top) = degrees.iter().max() else {
        return Ok(());
    };
    let groups = homology(x, top)?;
    for k in degrees {
        writeln!(out, "H_{k} = {}", groups[k]).unwrap();
    }
    Ok(())
}

fn describe(out: &mut String, name: &str, x: &TruncSSet) {
    writeln!(
        out,
        "{name}: simplices {:?}, nondegenerate {:?}",
        x.level_sizes(),
        x.nondegenerate_counts()
    )
    .unwrap();
}

fn weight_or_terminal(ws: &Workspace, f: &Diagram, weight: &Option<String>) -> Result<Diagram> {
    match weight {
        Some(id) => Ok(ws.weight(id)?.clone()),
        None => Ok(Diagram::terminal(&f.shape().opposite(), f.cap())),
    }
}

fn documents_under(path: &Path) -> Result<Vec<PathBuf>> {
    if path.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(path)
        .map_err(|e| Error::Document(format!("{}: {e}", path.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    Ok(files)
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let mut out = String::new();
    let mut files = Vec::new();
    let mut pass = true;
    let load_ws = |p: &Path| load(p, cli.max_dim);
    let ssets_file = |name: &str, items: Vec<(String, TruncSSet)>| -> Result<(String, String)> {
        Ok((format!("{name}.toml"), doc::ssets_document(&items)?))
    };
    match &cli.command {
        Command::Nerve { file, cat } => {
            let ws = load_ws(file)?;
            let x = nerve(ws.category(cat)?, ws.cap);
            describe(&mut out, &format!("nerve({cat})"), &x);
            homology_lines(&mut out, &x, &cli.homology)?;
            files.push(ssets_file("nerve", vec![(format!("nerve({cat})"), x)])?);
        }
        Command::Hocolim { file, diagram, weight } => {
            let ws = load_ws(file)?;
            let f = ws.diagram(diagram)?;
            let g = weight_or_terminal(&ws, f, weight)?;
            let x = simplicial_bar(&g, f, ws.cap)?.realize();
            describe(&mut out, &format!("hocolim({diagram})"), &x);
            homology_lines(&mut out, &x, &cli.homology)?;
            files.push(ssets_file("hocolim", vec![(format!("hocolim({diagram})"), x)])?);
        }
        Command::Holim {
            file,
            diagram,
            weight,
            cap_out,
        } => {
            let ws = load_ws(file)?;
            let f = ws.diagram(diagram)?;
            let g = match weight {
                Some(id) => ws.diagram(id)?.clone(),
                None => Diagram::terminal(f.shape(), ws.cap),
            };
            let t = tot_cobar(&g, f, ws.cap, *cap_out)?;
            describe(&mut out, &format!("holim({diagram})"), &t.sset);
            writeln!(out, "exact: {}", t.exact).unwrap();
            files.push(ssets_file("holim", vec![(format!("holim({diagram})"), t.sset)])?);
        }
        Command::Bar { file, diagram, weight } => {
            let ws = load_ws(file)?;
            let f = ws.diagram(diagram)?;
            let g = weight_or_terminal(&ws, f, weight)?;
            let b = simplicial_bar(&g, f, ws.cap)?;
            let mut items = Vec::new();
            for n in 0..=b.simp.hcap() {
                describe(&mut out, &format!("B_{n}"), b.simp.level(n));
                items.push((format!("B_{n}"), b.simp.level(n).clone()));
            }
            files.push(ssets_file("bar", items)?);
        }
        Command::Cobar { file, diagram, weight } => {
            let ws = load_ws(file)?;
            let f = ws.diagram(diagram)?;
            let g = match weight {
                Some(id) => ws.diagram(id)?.clone(),
                None => Diagram::terminal(f.shape(), ws.cap),
            };
            let c = cosimplicial_cobar(&g, f, ws.cap)?;
            let mut items = Vec::new();
            for n in 0..=c.hcap() {
                describe(&mut out, &format!("C^{n}"), c.level(n));
                items.push((format!("C^{n}"), c.level(n).clone()));
            }
            files.push(ssets_file("cobar", items)?);
        }
        Command::Tensor { file, weight, diagram } => {
            let ws = load_ws(file)?;
            let x = tensor_product(ws.weight(weight)?, ws.diagram(diagram)?)?.sset;
            describe(&mut out, &format!("{weight}*{diagram}"), &x);
            homology_lines(&mut out, &x, &cli.homology)?;
            files.push(ssets_file("tensor", vec![(format!("{weight}*{diagram}"), x)])?);
        }
        Command::Cotensor {
            file,
            weight,
            diagram,
            cap_out,
        } => {
            let ws = load_ws(file)?;
            let c = cotensor_product(ws.diagram(weight)?, ws.diagram(diagram)?, *cap_out)?;
            describe(&mut out, &format!("{{{weight},{diagram}}}"), &c.sset);
            writeln!(out, "exact: {}", c.exact).unwrap();
            files.push(ssets_file("cotensor", vec![(format!("{{{weight},{diagram}}}"), c.sset)])?);
        }
        Command::Coend { file, diagram, cat } => {
            let ws = load_ws(file)?;
            let x = coend(ws.diagram(diagram)?, ws.category(cat)?)?.sset;
            describe(&mut out, &format!("coend({diagram})"), &x);
            homology_lines(&mut out, &x, &cli.homology)?;
            files.push(ssets_file("coend", vec![(format!("coend({diagram})"), x)])?);
        }
        Command::Hocoend { file, sset_category } => {
            let ws = load_ws(file)?;
            let h = Bimodule::hom(ws.sset_category(sset_category)?);
            let (full, cyclic) = (hocoend(&h)?, hocoend_cyclic(&h)?);
            describe(&mut out, "full", &full);
            homology_lines(&mut out, &full, &cli.homology)?;
            describe(&mut out, "cyclic", &cyclic);
            homology_lines(&mut out, &cyclic, &cli.homology)?;
            files.push(ssets_file("hocoend", vec![("full".into(), full), ("cyclic".into(), cyclic)])?);
        }
        Command::Lan { file, functor, diagram } | Command::Hlan { file, functor, diagram } => {
            let ws = load_ws(file)?;
            let (k, f) = (ws.functor(functor)?, ws.diagram(diagram)?);
            let homotopical = matches!(cli.command, Command::Hlan { .. });
            let l = if homotopical { h_lan(k, f)? } else { lan(k, f)?.diagram };
            let mut items = Vec::new();
            for o in l.shape().objects() {
                let name = l.shape().object_name(o).to_string();
                describe(&mut out, &name, l.value(o));
                items.push((name, l.value(o).clone()));
            }
            files.push(ssets_file(if homotopical { "hlan" } else { "lan" }, items)?);
        }
        Command::Homology { file, sset } => {
            let ws = load_ws(file)?;
            let x = ws.sset(sset)?;
            describe(&mut out, sset, x);
            homology_lines(&mut out, x, &cli.homology)?;
        }
        Command::KanCheck { file, sset, dim } => {
            let ws = load_ws(file)?;
            let x = ws.sset(sset)?;
            let k = dim.unwrap_or(ws.cap.saturating_sub(1));
            let r = is_kan_up_to(x, k)?;
            for h in &r.unfilled {
                writeln!(out, "unfilled horn: dimension {}, missing face {}, faces {:?}", h.dim, h.missing, h.faces).unwrap();
            }
            writeln!(out, "kan through dimension {k}: {}", r.is_kan()).unwrap();
            pass = r.is_kan();
        }
        Command::ReedyCheck { file, diagram, weight } => {
            let ws = load_ws(file)?;
            let f = ws.diagram(diagram)?;
            let g = weight_or_terminal(&ws, f, weight)?;
            let bad = simplicial_reedy_failures(&simplicial_bar(&g, f, ws.cap)?.simp, ws.cap.min(3))?;
            writeln!(out, "reedy cofibrant: {}", bad.is_empty()).unwrap();
            for b in &bad {
                writeln!(out, "latching map not injective at {b}").unwrap();
            }
            pass = bad.is_empty();
        }
        Command::Coherent { file, diagram, depth } => {
            let ws = load_ws(file)?;
            let f = ws.diagram(diagram)?;
            let res = bar_resolution(f)?;
            let data = coherent_unravel(&res, &res.epsilon, *depth)?;
            let bad = coherent_check(&data, &res, f);
            writeln!(out, "cells: {}", data.cells.len()).unwrap();
            writeln!(out, "strict: {}", is_strict(&data)).unwrap();
            for b in &bad {
                writeln!(out, "{b}").unwrap();
            }
            pass = bad.is_empty();
        }
        Command::Verify { claim, path } => {
            let mut report = String::new();
            for p in documents_under(path)? {
                let ws = load_ws(&p)?;
                let source = p.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
                for line in verify(claim, &ws, &source, cli.witness)? {
                    pass &= line.pass;
                    writeln!(report, "{line}").unwrap();
                }
            }
            out.push_str(&report);
            files.push(("report.txt".into(), report));
        }
    }
    Ok(Outcome { text: out, files, pass })
}

/// Entry point of the binary; returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(o) => {
            print!("{}", o.text);
            if let Some(dir) = &cli.out {
                if let Err(e) = write_files(dir, &o.files) {
                    eprintln!("error: {e}");
                    return 2;
                }
            }
            if o.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn write_files(dir: &Path, files: &[(String, String)]) -> Result<()> {
    let io = |e: std::io::Error| Error::Document(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    for (name, text) in files {
        std::fs::write(dir.join(name), text).map_err(io)?;
    }
    Ok(())
}
