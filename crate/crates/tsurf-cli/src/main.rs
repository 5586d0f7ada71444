//! `tsurf`: build, inspect and analyse translation surfaces from the shell.
//!
//! Results are JSON on stdout (or in the `--out` file); `render` and
//! `cylinders --svg` write SVG. Exit status is 0 on success, 2 when the
//! mathematics says no (invalid surface, direction not Jenkins-Strebel,
//! …) and 1 for usage errors.

mod parse;
mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;
use tsurf::flow::{
    commensurate_moduli, decompose_along, saddle_connections, trace_ray, Decomposition, DecompositionOutcome,
    Direction, TraceOutcome, TraceStart, DEFAULT_CAP,
};
use tsurf::hodge::{period_matrix, rm_verdict, wiman_area, wiman_model, RmVerdict};
use tsurf::homology::{
    auto_action, build_complex, homology_basis, intersection, periods, spectral_report, twist_action, CellComplex,
    H1Action, SymplecticBasis,
};
use tsurf::numfield::{CycNum, RealCyc};
use tsurf::surface::{
    billiard_table, build_2ngon, build_billiard, build_double_ngon, build_origami, build_wiman, BilliardMode,
    BilliardTable, Mat2, SurfaceData, TranslationSurface,
};
use tsurf::veech::{
    classify, cross_ratio_field, default_rotations, edge_directions, generated_elements, mirror, parabolic_element,
    symmetry_search, wiman_generators, GeneratedElements, TraceFieldReport, WimanForm, Witness, CROSS_RATIO_CAP,
};

#[derive(Parser)]
#[command(name = "tsurf", version, about = "Exact computations with translation surfaces")]
struct Cli {
    /// Worker threads for the parallel parts (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the result here instead of stdout.
    #[arg(short = 'o', long = "out", global = true)]
    out: Option<PathBuf>,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "svg")]
    json: bool,
    /// Emit SVG where supported (`cylinders`, `render`).
    #[arg(long, global = true)]
    svg: bool,
    /// Crossing budget for each traced leaf.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a surface.
    #[command(subcommand)]
    Build(BuildCmd),
    /// Check a surface file and list any problems.
    Validate { file: PathBuf },
    /// Genus, cone points, zero orders and area.
    Invariants { file: PathBuf },
    /// Apply a matrix with positive determinant.
    Act {
        file: PathBuf,
        /// Entries `a,b,c,d` of `(a b; c d)`.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "rotate", conflicts_with = "rotate")]
        matrix: Option<String>,
        /// Rotation by `2π·p/q`, given as `p/q`.
        #[arg(long, allow_hyphen_values = true)]
        rotate: Option<String>,
    },
    /// Follow a straight line from a corner or an interior point.
    Trace {
        file: PathBuf,
        #[arg(long)]
        polygon: usize,
        #[arg(long, required_unless_present = "point", conflicts_with = "point")]
        vertex: Option<usize>,
        /// Interior point `x,y` in the polygon's coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
    },
    /// Cylinder decomposition in a direction.
    Cylinders {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
    },
    /// Saddle connections with holonomy of length at most `--bound`.
    Saddles {
        file: PathBuf,
        #[arg(long)]
        bound: String,
    },
    /// Veech group elements.
    #[command(subcommand)]
    Veech(VeechCmd),
    /// Field generated by the traces of generated Veech group elements.
    TraceField(ElementArgs),
    /// Field generated by cross-ratios of saddle connection slopes.
    CrossRatioField {
        file: PathBuf,
        #[arg(long)]
        bound: String,
        /// Number of four-element subsets to try.
        #[arg(long, default_value_t = CROSS_RATIO_CAP)]
        subsets: usize,
    },
    /// First homology and the action of affine maps.
    #[command(subcommand)]
    Homology(HomologyCmd),
    /// Periods of a symplectic homology basis.
    Periods { file: PathBuf },
    /// Normalized period matrix of the Wiman curve of genus `g`.
    PeriodMatrix {
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = 128)]
        bits: u32,
    },
    /// Whether real multiplication survives along the disk of `(W_g, ω_k)`.
    RmCheck {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        k: usize,
    },
    /// Draw the polygons, and the cylinders of `--dir` if given.
    Render {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        dir: Option<String>,
    },
}

#[derive(Subcommand)]
enum BuildCmd {
    /// Triangles `X(g, k)` for the Wiman differential `ω_k`.
    Wiman {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        k: usize,
    },
    /// Regular `2n`-gon with opposite sides glued.
    #[command(name = "2ngon")]
    TwoNgon {
        #[arg(long)]
        n: usize,
    },
    /// Two regular `n`-gons.
    DoubleNgon {
        #[arg(long)]
        n: usize,
    },
    /// Square-tiled surface from two 1-based permutations.
    Origami {
        /// Right neighbours, e.g. `2,1`.
        #[arg(long)]
        h: String,
        /// Upper neighbours.
        #[arg(long)]
        v: String,
    },
    /// Unfolding of a rational billiard table.
    Billiard {
        #[arg(long, value_enum)]
        table: Table,
        #[arg(long, default_value_t = 1)]
        g: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Keep translate copies instead of identifying them.
        #[arg(long)]
        literal: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    Square,
    Isosceles,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Omega1,
    OmegaG,
}

#[derive(Subcommand)]
enum VeechCmd {
    /// Multitwist along a direction with commensurable moduli.
    Parabolic {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
    },
    /// Rotational affine symmetries.
    Symmetries { file: PathBuf },
    /// Mirror Veech group generators of the Wiman surfaces.
    Generators {
        #[arg(long)]
        g: usize,
        #[arg(long, value_enum)]
        which: Which,
    },
}

#[derive(Args)]
struct ElementArgs {
    file: PathBuf,
    /// Direction `x,y` for a multitwist; repeatable. Defaults to the first
    /// `--max-dirs` edge directions.
    #[arg(long, allow_hyphen_values = true)]
    dir: Vec<String>,
    #[arg(long, default_value_t = 2)]
    max_dirs: usize,
}

#[derive(Subcommand)]
enum HomologyCmd {
    /// Symplectic basis, intersection matrix and periods.
    Basis { file: PathBuf },
    /// Action of one affine map on `H₁`.
    Action {
        file: PathBuf,
        /// A rotation `p/q` realized by a symmetry.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "dir", conflicts_with = "dir")]
        rotate: Option<String>,
        /// A multitwist direction `x,y`.
        #[arg(long, allow_hyphen_values = true)]
        dir: Option<String>,
    },
    /// Spectral data of every generated element.
    Spectra(ElementArgs),
}

enum Failure {
    Usage(String),
    Domain(String),
}

type Res<T> = Result<T, Failure>;

fn domain<E: Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

fn usage<E: Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

// exact value with its double, and the readable form
fn real(x: &RealCyc) -> Value {
    json!({"exact": x, "text": x.to_string(), "double": x.to_f64()})
}

fn complex(z: &CycNum) -> Value {
    let c = z.approx();
    json!({"exact": z, "text": z.to_string(), "double": [c.re, c.im]})
}

fn matrix(m: &Mat2) -> Value {
    json!({
        "exact": m,
        "text": [[m.a.to_string(), m.b.to_string()], [m.c.to_string(), m.d.to_string()]],
        "double": m.to_f64(),
    })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn load(path: &PathBuf) -> Res<TranslationSurface> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    TranslationSurface::from_json(&text).map_err(domain)
}

fn plane_point(s: &str) -> Res<CycNum> {
    let v = parse::reals(s, 2).map_err(usage)?;
    Ok((v[0].value() + &(&CycNum::i() * v[1].value())).reduced())
}

fn vector(s: &str) -> Res<CycNum> {
    let z = plane_point(s)?;
    if z.is_zero() {
        return Err(usage("direction must be nonzero"));
    }
    Ok(z)
}

fn direction(s: &str) -> Res<Direction> {
    Direction::from_vector(&vector(s)?).map_err(usage)
}

fn invariants_json(s: &TranslationSurface) -> Value {
    let inv = s.invariants();
    json!({
        "genus": inv.genus,
        "euler_characteristic": inv.euler_characteristic,
        "cone_points": inv.cone_points,
        "zero_orders": inv.zero_orders,
        "area": real(&inv.area),
        "polygons": s.num_polygons(),
        "edges": s.edge_pairs().len(),
        "order": s.order(),
    })
}

fn build(cmd: &BuildCmd) -> Res<String> {
    let (s, family, params) = match cmd {
        BuildCmd::Wiman { g, k } => (build_wiman(*g, *k), "wiman", json!({"g": g, "k": k})),
        BuildCmd::TwoNgon { n } => (build_2ngon(*n), "2ngon", json!({"n": n})),
        BuildCmd::DoubleNgon { n } => (build_double_ngon(*n), "double-ngon", json!({"n": n})),
        BuildCmd::Origami { h, v } => {
            let (hp, vp) = (parse::permutation(h).map_err(usage)?, parse::permutation(v).map_err(usage)?);
            (build_origami(&hp, &vp), "origami", json!({"h": hp, "v": vp}))
        }
        BuildCmd::Billiard { table, g, k, literal } => {
            let t = match table {
                Table::Square => BilliardTable::Square,
                Table::Isosceles => BilliardTable::Isosceles { g: *g, k: *k },
                Table::Right => BilliardTable::Right { g: *g, k: *k },
            };
            let mode = if *literal { BilliardMode::Literal } else { BilliardMode::Quotient };
            let name = match table {
                Table::Square => "square",
                Table::Isosceles => "isosceles",
                Table::Right => "right",
            };
            let s = billiard_table(t).and_then(|p| build_billiard(&p, mode));
            (s, "billiard", json!({"table": name, "g": g, "k": k, "literal": literal}))
        }
    };
    let s = s.map_err(domain)?;
    let inv = s.invariants();
    let meta = json!({
        "family": family,
        "parameters": params,
        "genus": inv.genus,
        "zero_orders": inv.zero_orders,
    });
    Ok(s.to_data().to_json_with_metadata(meta))
}

fn cylinders_json(s: &TranslationSurface, dec: &Decomposition, v: &CycNum) -> Value {
    let cyls: Vec<Value> = dec
        .cylinders
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let exact_or_root = |x: &Option<RealCyc>, sq: &RealCyc| match x {
                Some(x) => real(x),
                None => json!({"exact": Value::Null, "double": sq.to_f64().sqrt()}),
            };
            json!({
                "index": i,
                "area": real(&c.area),
                "modulus": real(&c.modulus),
                "circumference": exact_or_root(&c.circumference, &c.circumference_sq),
                "width": exact_or_root(&c.width, &c.width_sq),
                "circumference_sq": real(&c.circumference_sq),
                "width_sq": real(&c.width_sq),
                "holonomy": complex(&c.holonomy),
                "core": c.core,
                "bottom": c.bottom,
                "top": c.top,
            })
        })
        .collect();
    let comm = match commensurate_moduli(&dec.moduli()) {
        Ok(m) => json!({"modulus": real(&m.modulus), "multipliers": to_value(&m)["multipliers"]}),
        Err(_) => Value::Null,
    };
    json!({
        "kind": "cylinders",
        "vector": complex(v),
        "direction": to_value(&dec.direction),
        "count": cyls.len(),
        "cylinders": cyls,
        "saddle_connections": dec.saddle_connections.len(),
        "total_area": real(&dec.total_area()),
        "surface_area": real(&s.area()),
        "commensurable": comm,
    })
}

fn decompose(s: &TranslationSurface, v: &CycNum, cap: usize) -> Res<Decomposition> {
    match decompose_along(s, v, cap).map_err(domain)? {
        DecompositionOutcome::Cylinders(d) => Ok(d),
        DecompositionOutcome::NotJs(w) => Err(Failure::Domain(format!(
            "direction is not Jenkins-Strebel ({} edges, kernel dimension {})",
            w.edges, w.kernel_dim
        ))),
        DecompositionOutcome::Undetermined { unfinished } => Err(Failure::Domain(format!(
            "undetermined: {unfinished} separatrices still running at the crossing cap; retry with a larger --cap"
        ))),
    }
}

fn float_vector(v: &CycNum) -> (f64, f64) {
    let c = v.approx();
    (c.re, c.im)
}

fn elements(a: &ElementArgs, cap: usize) -> Res<(TranslationSurface, GeneratedElements)> {
    let s = load(&a.file)?;
    let dirs: Vec<Direction> = if a.dir.is_empty() {
        edge_directions(&s).into_iter().take(a.max_dirs).collect()
    } else {
        a.dir.iter().map(|d| direction(d)).collect::<Res<_>>()?
    };
    let g = generated_elements(&s, &dirs, cap).map_err(domain)?;
    Ok((s, g))
}

fn source(w: &Witness) -> Value {
    match w {
        Witness::Symmetry { auto } => {
            json!({"source": "symmetry", "polygon_map": auto.polygon_map, "shifts": auto.shifts})
        }
        Witness::Multitwist { parabolic } => json!({
            "source": "multitwist",
            "direction": to_value(&parabolic.twist.direction),
            "total_modulus": real(&parabolic.twist.total_modulus),
            "powers": to_value(&parabolic.twist)["powers"],
        }),
        Witness::Product { i, j } => json!({"source": "product", "factors": [i, j]}),
    }
}

fn field_json(r: &TraceFieldReport) -> Value {
    json!({
        "degree": r.degree,
        "min_poly": r.min_poly,
        "primitive": real(&r.primitive),
        "description": r.generator_description,
    })
}

fn actions(c: &CellComplex, b: &SymplecticBasis, g: &GeneratedElements) -> Res<Vec<H1Action>> {
    let mut out: Vec<H1Action> = Vec::with_capacity(g.elements.len());
    for e in &g.elements {
        let a = match &e.witness {
            Witness::Symmetry { auto } => auto_action(c, auto, b).map_err(domain)?,
            Witness::Multitwist { parabolic } => twist_action(c, &parabolic.twist, b).map_err(domain)?,
            Witness::Product { i, j } => out[*i].compose(&out[*j]),
        };
        out.push(a);
    }
    Ok(out)
}

fn homology_of(s: &TranslationSurface) -> Res<(CellComplex, SymplecticBasis)> {
    let c = build_complex(s);
    let b = homology_basis(&c).map_err(domain)?;
    Ok((c, b))
}

fn action_json(m: &Mat2, a: &H1Action) -> Res<Value> {
    Ok(json!({
        "matrix": matrix(m),
        "kind": to_value(&classify(m).map_err(domain)?.kind),
        "action": a.m,
        "symplectic": a.is_symplectic(),
        "spectral": to_value(&spectral_report(a)),
    }))
}

fn rm_check(g: usize, k: usize, cap: usize) -> Res<Value> {
    let verdict = rm_verdict(g, k).map_err(domain)?;
    let s = build_wiman(g, k).map_err(domain)?;
    // the rotational symmetries already generate the whole trace field
    let els = generated_elements(&s, &[], cap).map_err(domain)?;
    let field = els.trace_field().map_err(domain)?;
    let area = wiman_area(g, k);
    let (name, t, witness, class) = match &verdict {
        RmVerdict::Violated { t, witness } => ("violated", *t, to_value(witness), Value::Null),
        RmVerdict::PreservedConsistent { t, class } => ("preserved_consistent", *t, Value::Null, to_value(class)),
    };
    Ok(json!({
        "g": g,
        "k": k,
        "n": 2 * g + 1,
        "verdict": name,
        "t": t,
        "witness": witness,
        "class": class,
        "area_exact": area,
        "area_text": area.to_string(),
        "area_double": area.to_f64(),
        "area_positive": area.is_positive(),
        "trace_field": {
            "degree": field.degree,
            "min_poly": field.min_poly,
            "description": field.generator_description,
            "generated_by": "rotational symmetries",
        },
    }))
}

enum Output {
    Json(Value),
    Text(String),
}

fn run(cli: &Cli) -> Res<Output> {
    let cap = cli.cap;
    let json = |v: Value| Ok(Output::Json(v));
    match &cli.cmd {
        Cmd::Build(b) => Ok(Output::Text(build(b)?)),
        Cmd::Validate { file } => {
            let text = std::fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
            let data = SurfaceData::from_json(&text).map_err(domain)?;
            match tsurf::surface::validate(&data) {
                Ok(s) => json(json!({"valid": true, "invariants": invariants_json(&s)})),
                Err(e) => {
                    let issues: Vec<String> = e.issues().iter().map(|i| i.to_string()).collect();
                    let issues = if issues.is_empty() { vec![e.to_string()] } else { issues };
                    println!("{}", serde_json::to_string_pretty(&json!({"valid": false, "issues": issues})).unwrap());
                    Err(Failure::Domain("surface is invalid".into()))
                }
            }
        }
        Cmd::Invariants { file } => json(invariants_json(&load(file)?)),
        Cmd::Act { file, matrix: m, rotate } => {
            let s = load(file)?;
            let a = match (m, rotate) {
                (Some(m), _) => parse::matrix(m).map_err(usage)?,
                (None, Some(r)) => {
                    let (p, q) = parse::fraction(r).map_err(usage)?;
                    if q < 1 {
                        return Err(usage("rotation needs a positive denominator"));
                    }
                    Mat2::rotation(p, q).reduced()
                }
                (None, None) => return Err(usage("give --matrix or --rotate")),
            };
            let t = tsurf::surface::act(&s, &a).map_err(domain)?;
            Ok(Output::Text(t.to_json()))
        }
        Cmd::Trace { file, polygon, vertex, point, dir } => {
            let s = load(file)?;
            if *polygon >= s.num_polygons() {
                return Err(usage(format!("no polygon {polygon}")));
            }
            let start = match (vertex, point) {
                (Some(v), _) => TraceStart::Corner { polygon: *polygon, vertex: *v },
                (None, Some(p)) => TraceStart::Interior { polygon: *polygon, point: plane_point(p)? },
                (None, None) => return Err(usage("give --vertex or --point")),
            };
            let v = vector(dir)?;
            let out = trace_ray(&s, &start, &v, cap).map_err(domain)?;
            let extra = match &out {
                TraceOutcome::HitsCone { holonomy, .. } => complex(holonomy),
                TraceOutcome::Closes { displacement, .. } => complex(displacement),
                TraceOutcome::Undetermined { .. } => Value::Null,
            };
            json(json!({"outcome": to_value(&out), "displacement": extra}))
        }
        Cmd::Cylinders { file, dir } => {
            let s = load(file)?;
            let v = vector(dir)?;
            let dec = decompose(&s, &v, cap)?;
            if cli.svg {
                Ok(Output::Text(render::svg(&s, Some((&dec, float_vector(&v))))))
            } else {
                json(cylinders_json(&s, &dec, &v))
            }
        }
        Cmd::Saddles { file, bound } => {
            let s = load(file)?;
            let b = parse::real(bound).map_err(usage)?;
            if !b.is_positive() {
                return Err(usage("--bound must be positive"));
            }
            let list = saddle_connections(&s, &b).map_err(domain)?;
            let items: Vec<Value> = list
                .iter()
                .map(|sc| {
                    json!({
                        "start": sc.start,
                        "end": sc.end,
                        "start_corner": sc.start_corner,
                        "end_corner": sc.end_corner,
                        "holonomy": complex(&sc.holonomy),
                        "length_double": sc.holonomy.approx().norm(),
                        "crossings": sc.crossings.len(),
                    })
                })
                .collect();
            json(json!({"bound": real(&b), "count": items.len(), "saddle_connections": items}))
        }
        Cmd::Veech(VeechCmd::Parabolic { file, dir }) => {
            let s = load(file)?;
            let p = parabolic_element(&s, &direction(dir)?, cap).map_err(domain)?;
            let cls = classify(&p.matrix).map_err(domain)?;
            json(json!({
                "matrix": matrix(&p.matrix),
                "mirror": matrix(&mirror(&p.matrix)),
                "kind": to_value(&cls.kind),
                "trace": real(&cls.trace),
                "direction": to_value(&p.twist.direction),
                "total_modulus": real(&p.twist.total_modulus),
                "moduli": p.twist.cylinders.iter().map(|c| real(&c.modulus)).collect::<Vec<_>>(),
                "powers": to_value(&p.twist)["powers"],
            }))
        }
        Cmd::Veech(VeechCmd::Symmetries { file }) => {
            let s = load(file)?;
            let found = symmetry_search(&s, &default_rotations(&s)).map_err(domain)?;
            let items: Vec<Value> = found
                .iter()
                .map(|a| {
                    json!({
                        "matrix": matrix(&a.linear),
                        "polygon_map": a.polygon_map,
                        "shifts": a.shifts,
                        "offsets": a.offsets.iter().map(complex).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json(json!({"count": items.len(), "symmetries": items}))
        }
        Cmd::Veech(VeechCmd::Generators { g, which }) => {
            let w = match which {
                Which::Omega1 => WimanForm::Omega1,
                Which::OmegaG => WimanForm::OmegaG,
            };
            let (p, r) = wiman_generators(*g, w).map_err(domain)?;
            json(json!({
                "g": g,
                "which": to_value(&w),
                "parabolic": matrix(&p),
                "rotation": matrix(&r),
                "note": "generators of the mirror Veech group",
            }))
        }
        Cmd::TraceField(a) => {
            let (_, els) = elements(a, cap)?;
            let r = els.trace_field().map_err(domain)?;
            let sources: Vec<Value> = els.elements.iter().map(|e| source(&e.witness)).collect();
            json(json!({
                "field": field_json(&r),
                "elements": els.elements.len(),
                "traces": els.traces().iter().map(real).collect::<Vec<_>>(),
                "sources": sources,
                "skipped": to_value(&els.skipped),
            }))
        }
        Cmd::CrossRatioField { file, bound, subsets } => {
            let s = load(file)?;
            let b = parse::real(bound).map_err(usage)?;
            let list = saddle_connections(&s, &b).map_err(domain)?;
            let mut slopes: Vec<Direction> = Vec::new();
            for sc in &list {
                let d = Direction::from_vector(&sc.holonomy).map_err(domain)?;
                if !slopes.contains(&d) {
                    slopes.push(d);
                }
            }
            let r = cross_ratio_field(&slopes, *subsets).map_err(domain)?;
            json(json!({"field": field_json(&r), "slopes": slopes.len()}))
        }
        Cmd::Homology(HomologyCmd::Basis { file }) => {
            let s = load(file)?;
            let (c, b) = homology_of(&s)?;
            let n = b.cycles.len();
            let gram: Vec<Vec<i64>> =
                (0..n).map(|i| (0..n).map(|j| intersection(&c, &b.cycles[i], &b.cycles[j])).collect()).collect();
            json(json!({
                "genus": b.genus(),
                "vertices": c.num_vertices,
                "edges": c.num_edges(),
                "faces": c.num_faces,
                "euler_characteristic": c.euler_characteristic(),
                "edge_sides": c.edges,
                "cycles": b.cycles.iter().map(|z| &z.coeffs).collect::<Vec<_>>(),
                "intersection": gram,
                "periods": periods(&s, &c, &b.cycles).iter().map(complex).collect::<Vec<_>>(),
            }))
        }
        Cmd::Homology(HomologyCmd::Action { file, rotate, dir }) => {
            let s = load(file)?;
            let (c, b) = homology_of(&s)?;
            match (rotate, dir) {
                (Some(r), _) => {
                    let (p, q) = parse::fraction(r).map_err(usage)?;
                    if q < 1 {
                        return Err(usage("rotation needs a positive denominator"));
                    }
                    let rot = Mat2::rotation(p, q).reduced();
                    let found = symmetry_search(&s, std::slice::from_ref(&rot)).map_err(domain)?;
                    let auto =
                        found.first().ok_or_else(|| Failure::Domain(format!("no symmetry with rotation {p}/{q}")))?;
                    json(action_json(&auto.linear, &auto_action(&c, auto, &b).map_err(domain)?)?)
                }
                (None, Some(d)) => {
                    let p = parabolic_element(&s, &direction(d)?, cap).map_err(domain)?;
                    json(action_json(&p.matrix, &twist_action(&c, &p.twist, &b).map_err(domain)?)?)
                }
                (None, None) => Err(usage("give --rotate or --dir")),
            }
        }
        Cmd::Homology(HomologyCmd::Spectra(a)) => {
            let (s, els) = elements(a, cap)?;
            let (c, b) = homology_of(&s)?;
            let acts = actions(&c, &b, &els)?;
            let items = els
                .elements
                .iter()
                .zip(&acts)
                .map(|(e, m)| {
                    let mut v = action_json(&e.matrix, m)?;
                    v["source"] = source(&e.witness);
                    Ok(v)
                })
                .collect::<Res<Vec<_>>>()?;
            json(json!({"genus": b.genus(), "elements": items, "skipped": to_value(&els.skipped)}))
        }
        Cmd::Periods { file } => {
            let s = load(file)?;
            let (c, b) = homology_of(&s)?;
            let p = periods(&s, &c, &b.cycles);
            json(json!({"genus": b.genus(), "periods": p.iter().map(complex).collect::<Vec<_>>()}))
        }
        Cmd::PeriodMatrix { g, bits } => {
            if *bits < 16 {
                return Err(usage("--bits must be at least 16"));
            }
            let model = wiman_model(*g).map_err(domain)?;
            let r = period_matrix(&model, *bits).map_err(domain)?;
            json(json!({
                "g": g,
                "bits": r.bits,
                "pi": r.pi,
                "err": r.err,
                "asymmetry": r.asymmetry,
                "symmetric": r.symmetric,
                "im_positive": r.im_positive,
            }))
        }
        Cmd::RmCheck { g, k } => json(rm_check(*g, *k, cap)?),
        Cmd::Render { file, dir } => {
            let s = load(file)?;
            let svg = match dir {
                Some(d) => {
                    let v = vector(d)?;
                    let dec = decompose(&s, &v, cap)?;
                    render::svg(&s, Some((&dec, float_vector(&v))))
                }
                None => render::svg(&s, None),
            };
            Ok(Output::Text(svg))
        }
    }
}

fn setup_threads(n: Option<usize>) -> Res<()> {
    let Some(n) = n else { return Ok(()) };
    if n == 0 {
        return Err(usage("--threads must be positive"));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(usage)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = setup_threads(cli.threads).and_then(|_| run(&cli));
    let text = match result {
        Ok(Output::Json(v)) => serde_json::to_string_pretty(&v).expect("serializable"),
        Ok(Output::Text(t)) => t,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(1);
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
    };
    let text = if text.ends_with('\n') { text } else { text + "\n" };
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
