use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use coxdef_core::algebra::{DeformedAlgebra, Strategy};
use coxdef_core::complex::{build_sigma, orbifold_stats, Extent};
use coxdef_core::coxeter::{CoxeterMatrix, Order};
use coxdef_core::flatness::{determinant_obstruction, finite_triples, find_nonflat_witness, is_flat};
use coxdef_core::fuchsian::{cyclic_matrix, fuchsian_is_flat, hecke_basis, FuchsianSignature};
use coxdef_core::group::CoxeterGroup;
use coxdef_core::laurent::ParamIndex;
use coxdef_core::quiver::{
    build_quiver, regular_module, trivial_module, verify_module, DeformationOutcome, DeformationSystem,
};
use coxdef_core::ring::{CoeffRing, GenericPoint, GroupPoint, Symbolic};
use coxdef_core::{BigRational, Budget, Error};
use serde::Deserialize;
use serde_json::{json, Value};

mod render;

#[derive(Parser, Debug)]
#[command(name = "coxdef", version, about = "Exact computations in deformed Coxeter group algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Coxeter matrix JSON: {"rank": r, "orders": [[i, j, m | "inf"], ...]}
    #[arg(long, global = true)]
    matrix: Option<PathBuf>,
    /// Signature JSON: {"orders": [m_1, ..., m_r]}
    #[arg(long, global = true)]
    signature: Option<PathBuf>,
    #[arg(long, global = true)]
    length: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on orbit size, enumerated elements and cached products.
    #[arg(long, global = true, env = "COXDEF_BUDGET")]
    budget: Option<usize>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Comma-separated generator indices, e.g. "0,1,0".
    #[arg(long, global = true)]
    word: Option<String>,
    #[arg(long, global = true)]
    left: Option<String>,
    #[arg(long, global = true)]
    right: Option<String>,
    /// Coefficient ring for nf, mult and sc.
    #[arg(long, global = true, value_enum, default_value_t = Point::Symbolic)]
    point: Point,
    /// Module for the quiver subcommand.
    #[arg(long, global = true, value_enum, default_value_t = ModuleKind::Regular)]
    module: ModuleKind,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Flatness report with determinant obstructions.
    Flat,
    /// Number of elements of each length up to --length.
    Growth,
    /// Normal form of --word.
    Nf,
    /// Product T_left · T_right.
    Mult,
    /// Structure constants of basis elements up to --length.
    Sc,
    /// Shortest non-flatness witness at a seeded generic point.
    Witness,
    /// Determinant relations of all finite rank-3 parabolics.
    Obstruction,
    /// Flatness and Hecke basis of a polygonal Fuchsian group.
    Fuchsian,
    /// Cell counts and Euler characteristics of the complex and its quotient.
    Complex,
    /// Quiver, module verification and first-order deformation.
    Quiver,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Point {
    Symbolic,
    Group,
    Generic,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ModuleKind {
    Regular,
    Trivial,
}

enum Failure {
    Invalid(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Run<T> = Result<T, Failure>;

fn invalid<T>(msg: impl Into<String>) -> Run<T> {
    Err(Failure::Invalid(msg.into()))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OrderInput {
    Finite(u32),
    Named(String),
}

impl OrderInput {
    fn to_order(&self) -> Run<Order> {
        match self {
            OrderInput::Finite(m) => Ok(Order::Finite(*m)),
            OrderInput::Named(s) if matches!(s.as_str(), "inf" | "infinity" | "∞") => Ok(Order::Infinite),
            OrderInput::Named(s) => invalid(format!("unknown order {s:?}")),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixInput {
    rank: usize,
    orders: Vec<(usize, usize, OrderInput)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SignatureInput {
    orders: Vec<OrderInput>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Run<T> {
    let text = std::fs::read_to_string(path).or_else(|e| invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).or_else(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_matrix(cli: &Cli) -> Run<CoxeterMatrix> {
    let Some(path) = &cli.matrix else {
        return invalid("--matrix is required");
    };
    let input: MatrixInput = read_json(path)?;
    let entries = input
        .orders
        .iter()
        .map(|(i, j, m)| Ok((*i, *j, m.to_order()?)))
        .collect::<Run<Vec<_>>>()?;
    Ok(CoxeterMatrix::new(input.rank, entries)?)
}

fn load_signature(cli: &Cli) -> Run<FuchsianSignature> {
    let Some(path) = &cli.signature else {
        return invalid("--signature is required");
    };
    let input: SignatureInput = read_json(path)?;
    let orders = input.orders.iter().map(OrderInput::to_order).collect::<Run<Vec<_>>>()?;
    Ok(FuchsianSignature::new(orders)?)
}

fn parse_word(s: Option<&str>, flag: &str) -> Run<Vec<u8>> {
    let Some(s) = s else {
        return invalid(format!("--{flag} is required"));
    };
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<u8>().or_else(|_| invalid(format!("bad letter {t:?} in --{flag}"))))
        .collect()
}

fn budget(cli: &Cli) -> Budget {
    cli.budget.map(Budget::uniform).unwrap_or_default()
}

/// `nf`, `mult` and `sc` over one coefficient ring.
fn algebra_command<R: CoeffRing>(
    cli: &Cli,
    cmd: Command,
    matrix: CoxeterMatrix,
    ring: R,
    coeff: impl Fn(&R::Elem) -> Value + Copy,
) -> Run<Value> {
    let mut alg = DeformedAlgebra::new(matrix, ring, Strategy::REFERENCE, budget(cli))?;
    match cmd {
        Command::Nf => {
            let w = parse_word(cli.word.as_deref(), "word")?;
            Ok(json!({ "normal_form": render::element(&alg.normal_form(&w)?, coeff) }))
        }
        Command::Mult => {
            let u = parse_word(cli.left.as_deref(), "left")?;
            let v = parse_word(cli.right.as_deref(), "right")?;
            let x = alg.normal_form(&u)?;
            let y = alg.normal_form(&v)?;
            Ok(json!({ "product": render::element(&alg.multiply(&x, &y)?, coeff) }))
        }
        Command::Sc => {
            let sc = alg.structure_constants(cli.length.unwrap_or(2))?;
            let entries: Vec<Value> = sc
                .entries
                .iter()
                .map(|(x, y, p)| json!({ "x": render::word(x), "y": render::word(y), "product": render::element(p, coeff) }))
                .collect();
            Ok(json!({ "products": entries.len(), "entries": entries }))
        }
        _ => unreachable!("not an algebra command"),
    }
}

fn run_algebra(cli: &Cli, cmd: Command) -> Run<Value> {
    let matrix = load_matrix(cli)?;
    match cli.point {
        Point::Symbolic => algebra_command(cli, cmd, matrix, Symbolic, render::laurent),
        Point::Group => {
            let ring = GroupPoint::for_matrix(&matrix);
            algebra_command(cli, cmd, matrix, ring, render::cyclotomic)
        }
        Point::Generic => {
            let ring = GenericPoint::seeded(&matrix, cli.seed);
            algebra_command(cli, cmd, matrix, ring, render::twisted)
        }
    }
}

fn run_witness(cli: &Cli) -> Run<Value> {
    let matrix = load_matrix(cli)?;
    let max = cli.length.unwrap_or(10);
    for bound in 1..=max {
        if let Some(w) = find_nonflat_witness(&matrix, bound, cli.seed, budget(cli))? {
            return Ok(json!({ "found": true, "bound": bound, "witness": render::witness(&w) }));
        }
    }
    Ok(json!({ "found": false, "bound": max, "witness": null }))
}

fn run_obstruction(cli: &Cli) -> Run<Value> {
    let matrix = load_matrix(cli)?;
    let point = GenericPoint::seeded(&matrix, cli.seed);
    let mut out = Vec::new();
    for t in finite_triples(&matrix) {
        let rel = determinant_obstruction(&matrix, t)?;
        let mut v = render::obstruction(&rel);
        v["monomial"] = render::laurent(&rel.monomial());
        v["group_value"] = render::cyclotomic(&rel.at_group_point()?);
        v["generic_value"] = render::rational(&rel.at_point(&point)?);
        out.push(v);
    }
    Ok(json!({ "relations": out }))
}

fn run_fuchsian(cli: &Cli) -> Run<Value> {
    let sig = load_signature(cli)?;
    let matrix = cyclic_matrix(&sig)?;
    let basis: Vec<Value> = hecke_basis(&sig, cli.length.unwrap_or(4), budget(cli))?
        .iter()
        .map(|b| json!({ "word": render::word(&b.word), "c": b.c_string() }))
        .collect();
    Ok(json!({
        "flat": fuchsian_is_flat(&sig),
        "matrix": render::matrix(&matrix),
        "matrix_flat": is_flat(&matrix)?.flat,
        "basis": basis,
    }))
}

fn run_complex(cli: &Cli) -> Run<Value> {
    let matrix = load_matrix(cli)?;
    let extent = cli.length.map(Extent::Ball).unwrap_or(Extent::Full);
    let c = build_sigma(&matrix, extent, budget(cli))?;
    let faces: Vec<Value> = c
        .face_counts()
        .iter()
        .map(|((i, j), n)| json!({ "i": i, "j": j, "count": n }))
        .collect();
    let y = orbifold_stats(&matrix);
    let chi_y = y.euler_characteristic();
    Ok(json!({
        "extent": match extent { Extent::Full => json!("full"), Extent::Ball(l) => json!({ "ball": l }) },
        "vertices": c.vertices.len(),
        "edges": c.edges.len(),
        "faces": c.faces.len(),
        "faces_by_pair": faces,
        "euler_characteristic": c.euler_characteristic(),
        "boundaries_closed": c.boundaries_closed(),
        "orbifold": {
            "vertices": y.vertices,
            "edges": y.edges,
            "disks": y.disks.iter().map(|(i, j, m)| json!([i, j, m])).collect::<Vec<_>>(),
            "euler_characteristic": format!("{}/{}", chi_y.numer(), chi_y.denom()),
        },
    }))
}

fn seeded_tau(matrix: &CoxeterMatrix, seed: u64) -> BTreeMap<ParamIndex, BigRational> {
    // reuse the generic-point generator: a nonzero rational per parameter
    GenericPoint::seeded(matrix, seed).assignment().clone()
}

fn run_quiver(cli: &Cli) -> Run<Value> {
    let matrix = load_matrix(cli)?;
    let q = build_quiver(&matrix);
    let module = match cli.module {
        ModuleKind::Regular => regular_module(&matrix, budget(cli))?,
        ModuleKind::Trivial => trivial_module(&matrix)?,
    };
    let violations: Vec<String> = verify_module(&module)?.iter().map(|r| r.to_string()).collect();
    let sys = DeformationSystem::new(&module, true)?;
    let tau = seeded_tau(&matrix, cli.seed);
    let outcome = match sys.solve(&tau)? {
        DeformationOutcome::Feasible { .. } => json!({ "feasible": true }),
        DeformationOutcome::Infeasible { certificate, value } => json!({
            "feasible": false,
            "certificate": {
                "rows": certificate.combination.len(),
                "functional": render::functional(&certificate.functional, render::cyclotomic),
                "value": render::cyclotomic(&value),
                "checks": sys.check_certificate(&certificate)?,
            },
        }),
    };
    let space = sys.obstruction_space()?;
    let mut determinant = Vec::new();
    for t in finite_triples(&matrix) {
        let rel = determinant_obstruction(&matrix, t)?;
        let target = rel
            .first_order()
            .into_iter()
            .map(|(p, c)| {
                let c = i64::try_from(c).or_else(|_| invalid("exponent overflow"))?;
                Ok((p, module.field.from_int(c)))
            })
            .collect::<Run<BTreeMap<_, _>>>()?;
        let cert = sys.certificate_for(&target)?;
        let checks = match &cert {
            Some(c) => sys.check_certificate(c)?,
            None => false,
        };
        determinant.push(json!({ "triple": t, "in_span": cert.is_some(), "certificate_checks": checks }));
    }
    Ok(json!({
        "quiver": {
            "vertices": q.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "arrows": q.arrows.iter().map(|a| json!({
                "name": a.to_string(),
                "source": a.source().to_string(),
                "target": a.target().to_string(),
            })).collect::<Vec<_>>(),
            "relations": q.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        },
        "module": {
            "kind": match cli.module { ModuleKind::Regular => "regular", ModuleKind::Trivial => "trivial" },
            "dims": module.dims.iter().map(|(v, d)| (v.to_string(), json!(d))).collect::<serde_json::Map<_, _>>(),
        },
        "violations": violations,
        "deformation": {
            "tau": render::functional(&tau, render::rational),
            "unknowns": sys.unknowns(),
            "equations": sys.equations(),
            "rank": sys.rank(),
            "outcome": outcome,
            "obstruction_space": space.iter().map(|f| render::functional(f, render::cyclotomic)).collect::<Vec<_>>(),
            "determinant": determinant,
        },
    }))
}

fn run(cli: &Cli) -> Run<Value> {
    let result = match cli.command {
        Command::Flat => render::flatness(&is_flat(&load_matrix(cli)?)?),
        Command::Growth => {
            let matrix = load_matrix(cli)?;
            let mut g = CoxeterGroup::with_budget(matrix, budget(cli));
            json!({ "growth": g.growth_series(cli.length.unwrap_or(6))? })
        }
        cmd @ (Command::Nf | Command::Mult | Command::Sc) => run_algebra(cli, cmd)?,
        Command::Witness => run_witness(cli)?,
        Command::Obstruction => run_obstruction(cli)?,
        Command::Fuchsian => run_fuchsian(cli)?,
        Command::Complex => run_complex(cli)?,
        Command::Quiver => run_quiver(cli)?,
    };
    let b = budget(cli);
    let input = json!({
        "matrix": cli.matrix.as_ref().map(|_| load_matrix(cli)).transpose()?.map(|m| render::matrix(&m)),
        "signature": cli.signature.as_ref().map(|_| load_signature(cli)).transpose()?
            .map(|s| s.orders().iter().map(|&m| render::order(m)).collect::<Vec<_>>()),
        "length": cli.length,
        "word": cli.word,
        "left": cli.left,
        "right": cli.right,
        "point": format!("{:?}", cli.point).to_lowercase(),
    });
    Ok(json!({
        "tool": "coxdef",
        "version": env!("CARGO_PKG_VERSION"),
        "command": format!("{:?}", cli.command).to_lowercase(),
        "input": input,
        "seed": cli.seed,
        "budget": { "orbit_nodes": b.orbit_nodes, "elements": b.elements, "kernel_cache": b.kernel_cache },
        "result": result,
    }))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(doc) => {
            let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
            text.push('\n');
            let written = match &cli.out {
                Some(path) => std::fs::write(path, text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
