//! The `ell` command line.
//!
//! Every command prints one JSON object whose first key is
//! `"schema": "ellgrp/1"`, or `key: value` lines with `--pretty`. Exit codes:
//! `0` success, `1` a mathematical rejection (failed axioms, singular curve,
//! ∘-unit, ..), `2` invalid arguments or unreadable input.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::abelian::{GroupElement, Subgroup};
use crate::classify::{canonical_form, indecomposables};
use crate::constructions::{coproduct_of, enumerate_congruences, enumerate_subgroups, quotient, congruence_from_subgroup};
use crate::curves::{curve_group, PrimeFieldCtx, TernaryCubic};
use crate::elliptic::{CayleyTable, PointedAbelian};
use crate::error::{Error, Result};
use crate::morphisms::{enumerate_morphisms, hom_exists, is_isomorphic, mor_elliptic, predicted_mor_structure};
use crate::rings::{circ_factor, circ_product, euclid_witness, is_circ_prime, sigma};

pub const SCHEMA: &str = "ellgrp/1";

/// Largest table checked exhaustively without `--force`.
pub const TABLE_LIMIT: usize = 64;

#[derive(Parser, Debug)]
#[command(name = "ell", version, about = "Elliptic groups, elliptic rings and chord-tangent cubics")]
struct Cli {
    /// Human-readable output instead of JSON
    #[arg(long, global = true)]
    pretty: bool,
    /// Allow tables above 64 elements (EG3 is checked in O(n⁴) and may be slow)
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check EG1–EG3 on a Cayley table JSON file (`-` for stdin)
    VerifyTable { file: PathBuf },
    /// Print the Cayley table of a pointed group such as "3,3:1,0"
    Table { group: String },
    /// Canonical form of a pointed group, or of a table file with --table
    Classify {
        group: Option<String>,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Existence, count and closed form of morphisms
    Hom {
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
        /// List every morphism (finite target only)
        #[arg(long)]
        list: bool,
    },
    /// Decide isomorphism of two pointed groups
    Iso {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Coproduct with its injections
    Coproduct {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Quotient by the subgroup generated by `--by "1,0;0,3"`, or list all
    /// congruences when `--by` is absent
    Quotient {
        group: String,
        #[arg(long)]
        by: Option<String>,
    },
    /// ∘-prime factorization in Ell_1(Z)
    Factor {
        #[arg(allow_hyphen_values = true)]
        value: i64,
    },
    /// Whether an integer is a ∘-prime
    CircPrime {
        #[arg(allow_hyphen_values = true)]
        value: i64,
    },
    /// A new ∘-prime from a list of distinct ∘-primes, e.g. "2,1"
    Euclid {
        #[arg(allow_hyphen_values = true)]
        primes: String,
    },
    /// Points and chord-tangent group of a cubic over F_p
    Curve {
        #[arg(long)]
        p: u64,
        /// Ten coefficients of x³,y³,z³,x²y,x²z,xy²,y²z,xz²,yz²,xyz
        #[arg(long, allow_hyphen_values = true, conflicts_with = "weierstrass", required_unless_present = "weierstrass")]
        cubic: Option<String>,
        /// "a,b" for y²z = x³ + a·xz² + b·z³
        #[arg(long, allow_hyphen_values = true)]
        weierstrass: Option<String>,
        /// Add the canonical form of the group
        #[arg(long)]
        classify: bool,
        /// Add the Cayley table
        #[arg(long)]
        table: bool,
    },
    /// Enumerated Mor(S, T) against its closed form
    MorStructure {
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
    },
}

/// Runs the CLI on `args` (without the program name) and returns the exit
/// code and the text to print.
pub fn run(args: &[String]) -> (i32, String) {
    let cli = match Cli::try_parse_from(std::iter::once("ell".to_string()).chain(args.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let pretty = cli.pretty;
    let (code, value) = match dispatch(cli) {
        Ok(outcome) => outcome,
        Err(e) => (exit_code(&e), error_value(&e)),
    };
    (code, render(value, pretty))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::AxiomFailure(_)
        | Error::EmptyHomSet
        | Error::NoClosedForm(_)
        | Error::CircUnit
        | Error::Overflow(_)
        | Error::SingularCurve(_)
        | Error::PointNotOnCurve(_)
        | Error::PointlessCurve
        | Error::NotASubgroup(_)
        | Error::InvalidMorphism(_) => 1,
        _ => 2,
    }
}

fn error_value(e: &Error) -> Value {
    let kind = format!("{e:?}");
    let kind = kind.split(['(', ' ', '{']).next().unwrap_or("Error").to_string();
    object(vec![("error", json!(kind)), ("message", json!(e.to_string()))])
}

fn object(fields: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), json!(SCHEMA));
    for (k, v) in fields {
        map.insert(k.into(), v);
    }
    Value::Object(map)
}

fn render(value: Value, pretty: bool) -> String {
    if !pretty {
        return format!("{value}\n");
    }
    let Value::Object(map) = value else { return format!("{value:#}\n") };
    let mut out = String::new();
    for (k, v) in map.iter().filter(|(k, _)| *k != "schema") {
        let shown = match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        out.push_str(&format!("{k}: {shown}\n"));
    }
    out
}

fn parse_group(s: &str) -> Result<PointedAbelian> {
    s.parse()
}

fn read_table(path: &PathBuf) -> Result<CayleyTable> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    CayleyTable::from_json(&text)
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect()
}

fn guard(size: usize, force: bool) -> Result<()> {
    if size > TABLE_LIMIT && !force {
        return Err(Error::SizeLimit(format!("{size} elements exceed {TABLE_LIMIT}; pass --force")));
    }
    Ok(())
}

fn finite_order(p: &PointedAbelian) -> Result<usize> {
    p.order().map(|n| n as usize).ok_or_else(|| Error::InfiniteShape(p.descriptor()))
}

fn canonical_json(p: &PointedAbelian) -> Value {
    let form = canonical_form(p);
    let mut v = serde_json::to_value(&form).expect("serializable");
    if let Value::Object(map) = &mut v {
        map.insert("descriptor".into(), json!(form.to_pointed().descriptor()));
        map.insert("display".into(), json!(form.to_string()));
    }
    v
}

fn dispatch(cli: Cli) -> Result<(i32, Value)> {
    let force = cli.force;
    let ok = |v: Value| Ok((0, v));
    match cli.command {
        Command::VerifyTable { file } => {
            let t = read_table(&file)?;
            guard(t.size(), force)?;
            let report = t.verify_axioms();
            let code = if report.all_pass() { 0 } else { 1 };
            let v = object(vec![
                ("size", json!(t.size())),
                ("eg1", json!(report.eg1)),
                ("eg2", json!(report.eg2)),
                ("eg3", json!(report.eg3)),
                ("first_violation", serde_json::to_value(&report.first_violation).expect("serializable")),
                ("flexes", json!(t.flex_points())),
            ]);
            Ok((code, v))
        }
        Command::Table { group } => {
            let p = parse_group(&group)?;
            guard(finite_order(&p)?, force)?;
            let t = p.to_table()?;
            ok(object(vec![
                ("group", json!(p.descriptor())),
                ("size", json!(t.size())),
                ("labels", json!(t.labels())),
                ("table", json!(t.rows())),
            ]))
        }
        Command::Classify { group, table } => {
            let p = match (group, table) {
                (Some(g), None) => parse_group(&g)?,
                (None, Some(path)) => {
                    let t = read_table(&path)?;
                    guard(t.size(), force)?;
                    t.identify(0)?.pointed
                }
                _ => return Err(Error::InvalidArgument("give either a group or --table".into())),
            };
            let tags: Vec<String> = indecomposables(&p).iter().map(|t| format!("{t:?}")).collect();
            ok(object(vec![
                ("group", json!(p.descriptor())),
                ("canonical", canonical_json(&p)),
                ("indecomposables", json!(tags)),
                ("has_flex", json!(p.has_flex())),
            ]))
        }
        Command::Hom { src, dst, list } => {
            let (s, t) = (parse_group(&src)?, parse_group(&dst)?);
            let exists = hom_exists(&s, &t);
            let predicted = predicted_mor_structure(&s, &t)?;
            let mut fields = vec![
                ("src", json!(s.descriptor())),
                ("dst", json!(t.descriptor())),
                ("exists", json!(exists)),
                ("empty", json!(!exists)),
                ("predicted", json!(predicted.as_ref().map(PointedAbelian::descriptor))),
            ];
            if t.is_finite() {
                let morphisms = enumerate_morphisms(&s, &t)?;
                fields.push(("count", json!(morphisms.len())));
                if list {
                    let listed: Vec<Value> =
                        morphisms.iter().map(|f| serde_json::to_value(f).expect("serializable")).collect();
                    fields.push(("morphisms", Value::Array(listed)));
                }
            } else if list {
                return Err(Error::InfiniteShape(t.descriptor()));
            }
            ok(object(fields))
        }
        Command::Iso { left, right } => {
            let (l, r) = (parse_group(&left)?, parse_group(&right)?);
            ok(object(vec![
                ("isomorphic", json!(is_isomorphic(&l, &r))),
                ("left", canonical_json(&l)),
                ("right", canonical_json(&r)),
            ]))
        }
        Command::Coproduct { left, right } => {
            let (l, r) = (parse_group(&left)?, parse_group(&right)?);
            let d = coproduct_of(&l, &r);
            ok(object(vec![
                ("object", json!(d.object.descriptor())),
                ("recipe", json!(d.recipe)),
                ("swapped", json!(d.swapped)),
                ("left", json!(d.left.descriptor())),
                ("right", json!(d.right.descriptor())),
                ("inj_left", serde_json::to_value(&d.inj_left).expect("serializable")),
                ("inj_right", serde_json::to_value(&d.inj_right).expect("serializable")),
                ("canonical", canonical_json(&d.object)),
            ]))
        }
        Command::Quotient { group, by } => {
            let p = parse_group(&group)?;
            guard(finite_order(&p)?, force)?;
            let t = p.to_table()?;
            let elements = p.elements()?;
            match by {
                Some(gens) => {
                    let gens = gens
                        .split(';')
                        .map(|g| parse_ints(g).and_then(|c| p.shape().reduce(&c)))
                        .collect::<Result<Vec<GroupElement>>>()?;
                    let h = Subgroup::new(p.shape(), gens)?;
                    let k: Vec<usize> = h
                        .elements()?
                        .iter()
                        .map(|x| elements.iter().position(|e| e == x).expect("subgroup of a finite group"))
                        .collect();
                    let zero = elements.iter().position(GroupElement::is_zero).expect("zero is an element");
                    let cong = congruence_from_subgroup(&t, zero, &k)?;
                    let q = quotient(&t, &cong)?;
                    let qp = q.identify(0)?.pointed;
                    ok(object(vec![
                        ("group", json!(p.descriptor())),
                        ("subgroup_order", json!(k.len())),
                        ("classes", json!(cong.class_count())),
                        ("axioms", json!(q.verify_axioms().all_pass())),
                        ("quotient", json!(qp.descriptor())),
                        ("canonical", canonical_json(&qp)),
                    ]))
                }
                None => {
                    let congruences = enumerate_congruences(&t);
                    let subgroups = enumerate_subgroups(&t, 0)?;
                    let mut sizes: Vec<usize> = congruences.iter().map(|c| c.class_count()).collect();
                    sizes.sort_unstable();
                    ok(object(vec![
                        ("group", json!(p.descriptor())),
                        ("congruences", json!(congruences.len())),
                        ("subgroups", json!(subgroups.len())),
                        ("quotient_orders", json!(sizes)),
                    ]))
                }
            }
        }
        Command::Factor { value } => {
            let f = circ_factor(value)?;
            ok(object(vec![("input", json!(f.input)), ("factors", json!(f.factors))]))
        }
        Command::CircPrime { value } => {
            let prime = is_circ_prime(value)?;
            ok(object(vec![("input", json!(value)), ("circ_prime", json!(prime)), ("sigma", json!(sigma(value)?))]))
        }
        Command::Euclid { primes } => {
            let primes = parse_ints(&primes)?;
            let witness = euclid_witness(&primes)?;
            let product = circ_product(&primes)?;
            ok(object(vec![
                ("primes", json!(primes)),
                ("product", json!(product)),
                ("n", json!(1 - product)),
                ("witness", json!(witness)),
            ]))
        }
        Command::Curve { p, cubic, weierstrass, classify, table } => {
            let field = PrimeFieldCtx::new(p)?;
            let c = match (cubic, weierstrass) {
                (Some(coeffs), None) => {
                    let v = parse_ints(&coeffs)?;
                    let arr: [i64; 10] = v.try_into().map_err(|v: Vec<i64>| Error::LengthMismatch { expected: 10, found: v.len() })?;
                    TernaryCubic::new(field, arr)?
                }
                (None, Some(ab)) => match parse_ints(&ab)?.as_slice() {
                    &[a, b] => TernaryCubic::weierstrass(field, a, b)?,
                    other => return Err(Error::LengthMismatch { expected: 2, found: other.len() }),
                },
                _ => return Err(Error::InvalidArgument("give exactly one of --cubic and --weierstrass".into())),
            };
            let g = curve_group(&c)?;
            let labels: Vec<String> = g.points.iter().map(|pt| pt.label(&field)).collect();
            let mut fields = vec![
                ("points", json!(g.points.len())),
                ("flexes", json!(g.table.flex_points().len())),
                ("point_list", json!(labels)),
            ];
            if classify {
                guard(g.points.len(), force)?;
                let report = g.table.verify_axioms();
                if !report.all_pass() {
                    return Err(Error::AxiomFailure(format!("{:?}", report.first_violation)));
                }
                fields.push(("canonical", canonical_json(&g.table.identify(0)?.pointed)));
            }
            if table {
                fields.push(("table", json!(g.table.rows())));
            }
            ok(object(fields))
        }
        Command::MorStructure { src, dst } => {
            let (s, t) = (parse_group(&src)?, parse_group(&dst)?);
            let predicted = predicted_mor_structure(&s, &t)?;
            let Some(predicted) = predicted else {
                return ok(object(vec![("count", json!(0)), ("empty", json!(true)), ("predicted", Value::Null)]));
            };
            guard(finite_order(&predicted)?, force)?;
            let m = mor_elliptic(&s, &t)?;
            let enumerated = m.table.identify(0)?.pointed;
            ok(object(vec![
                ("count", json!(m.morphisms.len())),
                ("empty", json!(false)),
                ("predicted", json!(predicted.descriptor())),
                ("enumerated", json!(enumerated.descriptor())),
                ("agree", json!(is_isomorphic(&predicted, &enumerated))),
                ("canonical", canonical_json(&enumerated)),
            ]))
        }
    }
}
