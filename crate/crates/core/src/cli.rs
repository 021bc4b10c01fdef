//! Command-line interface. Every verdict comes from a library check; the
//! commands only parse inputs and format reports.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::axioms::verify_axioms;
use crate::cones::{cone_general, cone_in_h, cone_pure_ext};
use crate::equivalence::{strictify, verify_equivalence};
use crate::error::{Error, Result};
use crate::formal::{is_exact, FormalMorphism, Triangle};
use crate::io::{self, Ctx};
use crate::linalg;
use crate::octa::{derive_tr4_strong, derive_tr4prime, octahedron_tr4pp, Report};
use crate::quiver_rep::{decompose_rep, hom_ext, DynkinType, IndecList, Quiver};
use crate::report::SuiteReport;
use crate::tstruct::{blocks, build_path_graph, heart_decompose, is_bounded, t_structure_from, walk_to_path, PathGraph};

pub const DEFAULT_PRIME: u32 = 101;

#[derive(Parser, Debug)]
#[command(name = "trihered", version, about = "Quiver representations, their formal derived model, cones, t-structures and octahedra over F_p")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Quiver file (JSON).
    #[arg(long, global = true)]
    quiver: Option<PathBuf>,
    /// Prime field characteristic [default: $TRIHERED_PRIME or 101].
    #[arg(long, global = true)]
    prime: Option<u32>,
    /// Shift window, e.g. -2..2.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_window)]
    window: Option<(i32, i32)>,
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Emit a JSON report.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Quiver operations.
    Quiver {
        #[command(subcommand)]
        action: QuiverCmd,
    },
    /// Indecomposable representations.
    Indec {
        #[command(subcommand)]
        action: IndecCmd,
    },
    /// Hom between two representations.
    Hom(Pair),
    /// Ext¹ between two representations.
    Ext(Pair),
    /// Cone of a morphism in H, of a pure extension, or of a formal morphism.
    Cone {
        #[arg(long)]
        morphism: PathBuf,
    },
    /// Decompose a representation, a formal object or a complex.
    Decompose {
        #[arg(long)]
        object: PathBuf,
    },
    /// Blocks of the path graph.
    Blocks,
    /// The split t-structure generated by an indecomposable.
    Tstructure {
        /// Generator, e.g. S1[0].
        #[arg(long, allow_hyphen_values = true)]
        generator: String,
        /// Formal object to decompose along the heart.
        #[arg(long)]
        object: Option<PathBuf>,
    },
    /// Rewrite a walk into a path.
    Walk2path {
        #[arg(long)]
        walk: PathBuf,
    },
    /// Octahedron on a composable pair.
    Octahedron {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        u: PathBuf,
    },
    /// Property suites.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
}

#[derive(Subcommand, Debug)]
enum QuiverCmd {
    /// Validate a quiver file and classify it.
    Check { file: Option<PathBuf> },
}

#[derive(Subcommand, Debug)]
enum IndecCmd {
    /// List indecomposables with labels and dimension vectors.
    List,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Functor checks.
    Equivalence,
    /// Triangle axioms and split-triangle lemmas.
    Axioms,
}

#[derive(Args, Debug)]
struct Pair {
    /// Representation file or label.
    #[arg(long)]
    source: String,
    /// Representation file or label.
    #[arg(long)]
    target: String,
}

fn parse_window(s: &str) -> std::result::Result<(i32, i32), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got \"{s}\""))?;
    let lo: i32 = a.trim().parse().map_err(|_| format!("bad lower bound \"{a}\""))?;
    let hi: i32 = b.trim().parse().map_err(|_| format!("bad upper bound \"{b}\""))?;
    if lo > hi {
        return Err(format!("window {lo}..{hi} is empty"));
    }
    Ok((lo, hi))
}

struct Outcome {
    json: Value,
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Outcome {
        Outcome { json, text, ok: true }
    }
}

/// Exit code for an error: 2 for bad input, 1 for a failed computation.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::InvalidQuiver(_)
        | Error::InvalidRepresentation(_)
        | Error::NotAMorphism(_)
        | Error::NotAComplex(_)
        | Error::Endpoint(_)
        | Error::Dimension(_)
        | Error::QuiverMismatch(_)
        | Error::Unsupported(_) => 2,
        _ => 1,
    }
}

/// Run the CLI on `args` (including the program name); returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let _ = if cli.global.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json"))
            } else {
                write!(out, "{}", o.text)
            };
            if o.ok {
                0
            } else {
                let _ = writeln!(err, "check failed (reproduce with --seed {})", cli.global.seed);
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn prime(g: &Global) -> Result<u32> {
    let p = match g.prime {
        Some(p) => p,
        None => match std::env::var("TRIHERED_PRIME") {
            Ok(s) => s.trim().parse().map_err(|_| Error::Parse(format!("TRIHERED_PRIME: \"{s}\" is not a number")))?,
            Err(_) => DEFAULT_PRIME,
        },
    };
    if !linalg::is_prime(p) {
        return Err(Error::Parse(format!("{p} is not prime")));
    }
    Ok(p)
}

fn load_quiver(path: &Path) -> Result<Quiver> {
    io::parse_quiver(&io::read_json(path)?).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        Error::InvalidQuiver(m) => Error::InvalidQuiver(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn ctx(g: &Global) -> Result<Ctx> {
    let path = g.quiver.as_ref().ok_or_else(|| Error::Parse("--quiver is required".into()))?;
    Ok(Ctx::new(Arc::new(load_quiver(path)?), prime(g)?))
}

fn indecs(c: &Ctx) -> Result<&IndecList> {
    c.indecs.as_ref().ok_or_else(|| Error::Unsupported("the quiver is not of Dynkin type".into()))
}

fn window(g: &Global, default: (i32, i32)) -> (i32, i32) {
    g.window.unwrap_or(default)
}

fn dynkin_label(t: &DynkinType) -> String {
    match t {
        DynkinType::A(n) => format!("A{n}"),
        DynkinType::D(n) => format!("D{n}"),
        DynkinType::E(n) => format!("E{n}"),
    }
}

/// A representation given as a label or a file path.
fn rep_arg(c: &Ctx, s: &str) -> Result<crate::quiver_rep::Representation> {
    let path = Path::new(s);
    if path.exists() {
        c.rep(&io::read_json(path)?, &path.display().to_string())
    } else {
        c.named(s, "argument")
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Quiver { action: QuiverCmd::Check { file } } => {
            let path = file.as_ref().or(g.quiver.as_ref()).ok_or_else(|| Error::Parse("no quiver file given".into()))?;
            let q = load_quiver(path)?;
            let types = q.dynkin_types().ok();
            let labels: Option<Vec<String>> = types.as_ref().map(|t| t.iter().map(dynkin_label).collect());
            let roots = q.positive_root_count().ok();
            let json = json!({
                "vertices": q.vertex_count(),
                "arrows": q.arrows().len(),
                "dynkin": labels,
                "indecomposables": roots,
            });
            let text = format!(
                "valid quiver: {} vertices, {} arrows\ntype: {}\n",
                q.vertex_count(),
                q.arrows().len(),
                labels.map_or("not Dynkin".to_string(), |l| format!("{} ({} indecomposables)", l.join(" + "), roots.unwrap_or(0)))
            );
            Ok(Outcome::ok(json, text))
        }
        Command::Indec { action: IndecCmd::List } => {
            let c = ctx(g)?;
            let l = indecs(&c)?;
            let entries: Vec<Value> = l.reps.iter().zip(&l.names).map(|(r, n)| json!({"label": n, "dims": r.dims()})).collect();
            let mut text = format!("{} indecomposables\n", l.len());
            for (r, n) in l.reps.iter().zip(&l.names) {
                text += &format!("{n}\t{:?}\n", r.dims());
            }
            Ok(Outcome::ok(json!({"count": l.len(), "indecomposables": entries}), text))
        }
        Command::Hom(pair) | Command::Ext(pair) => {
            let c = ctx(g)?;
            let x = rep_arg(&c, &pair.source)?;
            let y = rep_arg(&c, &pair.target)?;
            let he = hom_ext(&x, &y);
            let is_hom = matches!(cli.command, Command::Hom(_));
            let (name, dim, basis): (&str, usize, Vec<Value>) = if is_hom {
                ("Hom", he.hom_dim(), he.hom_basis().iter().map(io::morphism_body_to_json).collect())
            } else {
                let basis = he
                    .ext_basis()
                    .iter()
                    .map(|e| {
                        let m: serde_json::Map<String, Value> =
                            x.quiver().arrows().iter().zip(e.matrices()).map(|(a, m)| (a.label.clone(), io::matrix_to_json(m))).collect();
                        Value::Object(m)
                    })
                    .collect();
                ("Ext1", he.ext_dim(), basis)
            };
            Ok(Outcome::ok(json!({"space": name, "dim": dim, "basis": basis}), format!("dim {name} = {dim}\n")))
        }
        Command::Cone { morphism } => cone_cmd(g, morphism),
        Command::Decompose { object } => decompose_cmd(g, object),
        Command::Blocks => {
            let c = ctx(g)?;
            let gr = PathGraph::new(indecs(&c)?, window(g, (0, 2)));
            let bs = blocks(&gr);
            let lists: Vec<Vec<String>> = bs.iter().map(|b| b.iter().map(|&v| gr.label(v)).collect()).collect();
            let mut text = format!("{} blocks in window {}..{}\n", bs.len(), gr.window.0, gr.window.1);
            for (i, b) in lists.iter().enumerate() {
                text += &format!("block {}: {}\n", i + 1, b.join(" "));
            }
            Ok(Outcome::ok(json!({"window": [gr.window.0, gr.window.1], "count": bs.len(), "blocks": lists}), text))
        }
        Command::Tstructure { generator, object } => tstructure_cmd(g, generator, object.as_deref()),
        Command::Walk2path { walk } => {
            let c = ctx(g)?;
            let gr = build_path_graph(&c.quiver, c.p, window(g, (-2, 4)))?;
            let w = c.walk(&gr, &io::read_json(walk)?, &walk.display().to_string())?;
            let r = walk_to_path(&gr, &w, g.seed)?;
            let labels: Vec<String> = r.path.iter().map(|&v| gr.label(v)).collect();
            let ok = gr.is_path(&r.path) && r.m >= 0 && r.rewrites <= w.backward_steps();
            let json = json!({
                "path": labels,
                "m": r.m,
                "rewrites": r.rewrites,
                "backward_steps": w.backward_steps(),
                "valid_path": ok,
            });
            let text = format!("{}\nm = {}, {} rewrites\n", labels.join(" -> "), r.m, r.rewrites);
            Ok(Outcome { json, text, ok })
        }
        Command::Octahedron { f, u } => octahedron_cmd(g, f, u),
        Command::Verify { what } => {
            let c = ctx(g)?;
            let w = window(g, (-1, 1));
            let r = match what {
                VerifyCmd::Equivalence => verify_equivalence(&c.quiver, c.p, g.seed, g.trials as usize, w)?,
                VerifyCmd::Axioms => verify_axioms(&c.quiver, c.p, g.seed, g.trials as usize, w)?,
            };
            Ok(suite_outcome(&r))
        }
    }
}

fn suite_outcome(r: &SuiteReport) -> Outcome {
    let mut text = String::new();
    for (name, t) in &r.checks {
        let mark = if t.passed == t.total { "ok  " } else { "FAIL" };
        text += &format!("{mark} {name}: {}/{}\n", t.passed, t.total);
    }
    for f in &r.failures {
        text += &format!("failure: {} (trial {}, seed {}): {}\n", f.check, f.trial, f.seed, f.detail);
    }
    Outcome { json: r.to_json(), text, ok: r.passed() }
}

fn triangle_json(t: &Triangle) -> Value {
    json!({
        "f": io::formal_morphism_to_json(&t.f),
        "g": io::formal_morphism_to_json(&t.g),
        "h": io::formal_morphism_to_json(&t.h),
    })
}

fn cone_cmd(g: &Global, path: &Path) -> Result<Outcome> {
    let c = ctx(g)?;
    let l = indecs(&c)?;
    let v = io::read_json(path)?;
    let at = path.display().to_string();
    let is_formal = v.get("hom").is_some() || v.get("ext").is_some();
    let (kind, t) = if is_formal {
        let f = c.formal_morphism(&v, &at)?;
        let pure = f.hom_parts().is_empty() && f.ext_parts().len() == 1 && {
            let (&n, _) = f.ext_parts().iter().next().expect("one part");
            f.source().components().len() == 1 && f.target().components().len() <= 1 && f.source().components().contains_key(&n)
        };
        if pure {
            let (&n, e) = f.ext_parts().iter().next().expect("one part");
            ("pure extension", cone_pure_ext(e, n))
        } else {
            ("formal morphism", cone_general(&f))
        }
    } else {
        let f = c.morphism(&v, &at)?;
        ("morphism in H", cone_in_h(&f).0)
    };
    let ex = is_exact(&t, &l.reps, None);
    let labels = io::summand_labels(t.z(), l, g.seed);
    let json = json!({
        "kind": kind,
        "cone": labels,
        "cone_object": io::formal_object_to_json(t.z()),
        "triangle": triangle_json(&t),
        "exact": ex.passed,
        "exactness_failures": ex.failures,
    });
    let text = format!("{kind}\ncone: {}\nexact: {}\n", if labels.is_empty() { "0".into() } else { labels.join(" ⊕ ") }, ex.passed);
    Ok(Outcome { json, text, ok: ex.passed })
}

fn decompose_cmd(g: &Global, path: &Path) -> Result<Outcome> {
    let c = ctx(g)?;
    let v = io::read_json(path)?;
    let at = path.display().to_string();
    let label = |r: &crate::quiver_rep::Representation| -> String {
        c.indecs.as_ref().and_then(|l| l.index_of(r).map(|i| l.names[i].clone())).unwrap_or_else(|| format!("{:?}", r.dims()))
    };
    if v.get("terms").is_some() {
        let cx = c.complex(&v, &at)?;
        let s = strictify(&cx);
        let mut parts = Vec::new();
        let mut text = String::from("complex ≅ ⊕ Hⁿ[-n]\n");
        for (n, h) in s.formal.components() {
            let summands: Vec<String> = decompose_rep(h, g.seed).iter().map(|d| label(&d.rep)).collect();
            text += &format!("H^{n}: {:?} = {}\n", h.dims(), summands.join(" ⊕ "));
            parts.push(json!({"degree": n, "dims": h.dims(), "summands": summands}));
        }
        let ok = s.psi.is_quasi_iso();
        return Ok(Outcome { json: json!({"kind": "complex", "cohomology": parts, "quasi_iso": ok}), text, ok });
    }
    if v.get("components").is_some() || v.get("summands").is_some() {
        let x = c.formal_object(&v, &at)?;
        let l = indecs(&c)?;
        let labels = io::summand_labels(&x, l, g.seed);
        return Ok(Outcome::ok(json!({"kind": "formal object", "summands": labels}), format!("{}\n", labels.join(" ⊕ "))));
    }
    let x = c.rep(&v, &at)?;
    let parts = decompose_rep(&x, g.seed);
    let labels: Vec<String> = parts.iter().map(|d| label(&d.rep)).collect();
    let dims: Vec<Value> = parts.iter().map(|d| json!(d.rep.dims())).collect();
    Ok(Outcome::ok(
        json!({"kind": "representation", "summands": labels, "dims": dims}),
        format!("{}\n", labels.join(" ⊕ ")),
    ))
}

fn tstructure_cmd(g: &Global, generator: &str, object: Option<&Path>) -> Result<Outcome> {
    let c = ctx(g)?;
    let gr = build_path_graph(&c.quiver, c.p, window(g, (-3, 3)))?;
    let m = gr.parse_node(generator).ok_or_else(|| Error::Parse(format!("--generator: cannot read \"{generator}\"")))?;
    let ts = t_structure_from(&gr, m)?;
    let names = |s: &std::collections::BTreeSet<crate::tstruct::Node>| -> Vec<String> { s.iter().map(|&v| gr.label(v)).collect() };
    let bounded = is_bounded(&gr, m).ok();
    let witness: Option<Vec<String>> = bounded.as_ref().and_then(|b| b.1.as_ref()).map(|p| p.iter().map(|&v| gr.label(v)).collect());
    let mut json = json!({
        "generator": gr.label(m),
        "window": [gr.window.0, gr.window.1],
        "leq0": names(&ts.leq0),
        "geq0": names(&ts.geq0),
        "heart": names(&ts.heart),
        "flags": {"t1": ts.report.t1, "t2": ts.report.t2, "t3": ts.report.t3, "split": ts.report.split},
        "failures": ts.report.failures,
        "bounded": bounded.as_ref().map(|b| b.0),
        "witness": witness,
    });
    let mut text = format!("heart: {}\n{}\nbounded: {}\n", names(&ts.heart).join(" "), ts.report, bounded.as_ref().map_or("unknown (window too small)".into(), |b| b.0.to_string()));
    if let Some(path) = object {
        let x = c.formal_object(&io::read_json(path)?, &path.display().to_string())?;
        let pieces = heart_decompose(&gr, &ts, &x, g.seed)?;
        let list: Vec<Value> = pieces.iter().map(|&(v, n)| json!({"heart": gr.label(v), "n": n})).collect();
        text += &format!(
            "object ≅ {}\n",
            pieces.iter().map(|&(v, n)| format!("({})[{}]", gr.label(v), -n)).collect::<Vec<_>>().join(" ⊕ ")
        );
        json["heart_decomposition"] = Value::Array(list);
    }
    Ok(Outcome { json, text, ok: ts.report.passed() })
}

fn formal_or_rep(c: &Ctx, path: &Path) -> Result<FormalMorphism> {
    let v = io::read_json(path)?;
    let at = path.display().to_string();
    if v.get("hom").is_some() || v.get("ext").is_some() {
        c.formal_morphism(&v, &at)
    } else {
        let f = c.morphism(&v, &at)?;
        let s = crate::formal::FormalObject::stalk(f.source(), 0);
        let t = crate::formal::FormalObject::stalk(f.target(), 0);
        Ok(FormalMorphism::from_hom(&s, &t, 0, f))
    }
}

fn report_json(r: &Report) -> Value {
    Value::Array(r.checks.iter().map(|c| json!({"name": c.name, "ok": c.ok, "detail": c.detail})).collect())
}

fn octahedron_cmd(g: &Global, fp: &Path, up: &Path) -> Result<Outcome> {
    let c = ctx(g)?;
    let l = indecs(&c)?;
    let f = formal_or_rep(&c, fp)?;
    let u = formal_or_rep(&c, up)?;
    let o = octahedron_tr4pp(&f, &u, g.seed)?;
    let strong = derive_tr4_strong(&o)?;
    let prime4 = derive_tr4prime(&o)?;
    let ok = o.report.passed() && strong.passed() && prime4.passed();
    let json = json!({
        "Z": io::summand_labels(o.t.z(), l, g.seed),
        "Z'": io::summand_labels(o.t_prime.z(), l, g.seed),
        "W": io::summand_labels(o.t_u.z(), l, g.seed),
        "u'": io::formal_morphism_to_json(&o.u_prime),
        "v'": io::formal_morphism_to_json(&o.v_prime),
        "w'": io::formal_morphism_to_json(&o.w_prime),
        "gamma": io::formal_morphism_to_json(&o.gamma),
        "octahedron": report_json(&o.report),
        "strong_form": report_json(&strong),
        "tr4_prime": report_json(&prime4),
        "passed": ok,
    });
    let mut text = String::new();
    for (title, r) in [("octahedron", &o.report), ("strong form", &strong), ("TR4' grids", &prime4)] {
        text += &format!("{title}:\n");
        for ch in &r.checks {
            text += &format!("  {} {}\n", if ch.ok { "ok  " } else { "FAIL" }, ch.name);
        }
    }
    Ok(Outcome { json, text, ok })
}
