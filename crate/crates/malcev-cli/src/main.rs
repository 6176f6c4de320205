//! Command-line interface over the malcev library.
//!
//! Exit codes: 0 = all checks passed / construction succeeded; 1 = a
//! verification failed (the report says which); 2 = malformed input;
//! 3 = internal inconsistency. Output is line-oriented plain text on
//! standard output (`--json` switches to machine-readable reports),
//! buffered and emitted once; errors go to standard error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Number, Value};

use malcev::cohomology::{self, FormulaMode, H2};
use malcev::deform::{self, FormalDeformation};
use malcev::enumerate::{self, Lcg, ShapeSpec};
use malcev::error::Error;
use malcev::et::Side;
use malcev::io::{self, Document};
use malcev::report::VerificationReport;
use malcev::scalar::Field;

#[derive(Parser)]
#[command(
    name = "malcev",
    version,
    about = "Exact verification, construction, cohomology and deformation \
             computations for Malcev algebras and embedding tensors"
)]
struct Cli {
    /// Emit machine-readable JSON reports instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the deterministic generator behind `random`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Use the printed variants of the coboundary/cocycle formulas where
    /// they are typeable, and report whether im(D) ⊆ Z² survives.
    #[arg(long = "strict-printed", global = true)]
    strict_printed: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WhatArg {
    /// Enumerate all embedding tensors over a representation document.
    Et,
    /// Enumerate all compatible operator pairs over an embedding-tensor
    /// document.
    Nijenhuis,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the defining axioms of an algebra, dialgebra, representation,
    /// embedding-tensor, or ET-representation document.
    Verify { file: PathBuf },
    /// Check the embedding-tensor equation of an embedding_tensor document.
    CheckEt { file: PathBuf },
    /// Check all compatibility laws of an et_representation document.
    CheckEtrep { file: PathBuf },
    /// Build the hemisemidirect dialgebra of a representation.
    Hemi {
        rep: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Build the dialgebra an embedding tensor induces on its module.
    Induce {
        et: PathBuf,
        #[arg(long)]
        side: SideArg,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Build the semidirect sum of a representation (a Malcev algebra) or
    /// of an et_representation (an embedding tensor).
    Semidirect {
        input: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Check the cocycle conditions of a two-cochain.
    Cocycle {
        et: PathBuf,
        etrep: PathBuf,
        cochain: PathBuf,
    },
    /// Apply the coboundary operator to a one-cochain.
    Coboundary {
        et: PathBuf,
        etrep: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Compute the second cohomology dimension.
    H2 {
        et: PathBuf,
        /// "adjoint" for adjoint-shaped coefficients, or a path to an
        /// et_representation document.
        #[arg(long, default_value = "adjoint")]
        coeff: String,
    },
    /// Build the extension classified by a cocycle.
    Extend {
        et: PathBuf,
        etrep: PathBuf,
        cochain: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Decide whether two cocycles classify equivalent extensions.
    Equiv {
        et: PathBuf,
        etrep: PathBuf,
        z1: PathBuf,
        z2: PathBuf,
    },
    /// Check a first-order deformation triple (two_cochain document) or an
    /// order-L formal deformation document.
    Deform {
        et: PathBuf,
        input: PathBuf,
        /// Formal documents only: truncate or zero-pad to this order before
        /// checking λ-degrees 0..=3L.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Check the three compatibility conditions of an operator pair.
    Nijenhuis {
        et: PathBuf,
        pair: PathBuf,
        /// On success, also write the induced first-order deformation.
        #[arg(long = "emit-deformation")]
        emit_deformation: Option<PathBuf>,
    },
    /// Rigidity assessment via the adjoint-shaped second cohomology.
    Rigid { et: PathBuf },
    /// Exhaustively enumerate embedding tensors or operator pairs over a
    /// small prime field.
    Enumerate {
        input: PathBuf,
        #[arg(long)]
        what: WhatArg,
    },
    /// Deterministic random instances of a given shape.
    Random {
        /// matrix:RxC | skew:N | triple:N,M
        #[arg(long)]
        shape: String,
        /// "Q" or a prime p for 𝔽_p.
        #[arg(long, default_value = "Q")]
        field: String,
        /// Number of instances.
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match dispatch(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    };
    print!("{out}");
    ExitCode::from(code)
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::ParseError(_)
        | Error::ShapeError(_)
        | Error::FieldMismatch(_)
        | Error::NonSkewInput(_)
        | Error::TooLarge(_) => 2,
        Error::InternalInconsistency(_) => 3,
        _ => 1,
    }
}

fn mode_of(cli: &Cli) -> FormulaMode {
    if cli.strict_printed {
        FormulaMode::StrictPrinted
    } else {
        FormulaMode::Derived
    }
}

fn write_out(path: &Path, doc: &Document, out: &mut String) -> Result<(), Error> {
    std::fs::write(path, io::emit_document(doc))
        .map_err(|e| Error::ParseError(format!("cannot write {}: {e}", path.display())))?;
    out.push_str(&format!("wrote {} document to {}\n", doc.kind(), path.display()));
    Ok(())
}

fn push_report(out: &mut String, json: bool, r: &VerificationReport) -> u8 {
    out.push_str(&if json { io::render_report_json(r) } else { io::render_report_text(r) });
    u8::from(!r.passed())
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

fn load_etrep(path: &Path) -> Result<malcev::etrep::EtRepresentation, Error> {
    io::read_document(path)?.into_et_representation()
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<u8, Error> {
    match &cli.cmd {
        Cmd::Verify { file } => verify(cli, file, out),
        Cmd::CheckEt { file } => {
            let et = io::read_document(file)?.into_embedding_tensor()?;
            Ok(push_report(out, cli.json, &et.check()?))
        }
        Cmd::CheckEtrep { file } => {
            let er = load_etrep(file)?;
            Ok(push_report(out, cli.json, &er.check()?))
        }
        Cmd::Hemi { rep, out: path } => {
            let rep = io::read_document(rep)?.into_representation()?;
            let table = malcev::et::hemi_semidirect(&rep)?;
            write_out(path, &Document::Dialgebra { table, side: Side::Left }, out)?;
            Ok(0)
        }
        Cmd::Induce { et, side, out: path } => {
            let et = io::read_document(et)?.into_embedding_tensor()?;
            let table = et.induce_dialgebra((*side).into())?;
            write_out(path, &Document::Dialgebra { table, side: (*side).into() }, out)?;
            Ok(0)
        }
        Cmd::Semidirect { input, out: path } => {
            match io::read_document(input)? {
                Document::Representation(r) => {
                    write_out(path, &Document::MalcevAlgebra(r.semidirect()?), out)?
                }
                Document::EtRepresentation(e) => {
                    write_out(path, &Document::EmbeddingTensor(e.semidirect()?), out)?
                }
                other => {
                    return Err(Error::ParseError(format!(
                        "semidirect expects a representation or et_representation document, \
                         found {}",
                        other.kind()
                    )))
                }
            }
            Ok(0)
        }
        Cmd::Cocycle { et, etrep, cochain } => {
            let et = io::read_document(et)?.into_embedding_tensor()?;
            let er = load_etrep(etrep)?;
            let z = io::read_document(cochain)?.into_two_cochain()?;
            Ok(push_report(out, cli.json, &cohomology::is_cocycle_mode(&et, &er, &z, mode_of(cli))?))
        }
        Cmd::Coboundary { et, etrep, b, out: path } => {
            let et = io::read_document(et)?.into_embedding_tensor()?;
            let er = load_etrep(etrep)?;
            let b = io::read_document(b)?.into_one_cochain()?;
            let (z, notes) = cohomology::coboundary_mode(&et, &er, &b, mode_of(cli))?;
            for n in &notes {
                out.push_str(&format!("note: {n}\n"));
            }
            write_out(path, &Document::TwoCochain(z), out)?;
            Ok(0)
        }
        Cmd::H2 { et, coeff } => {
            let et = io::read_document(et)?.into_embedding_tensor()?;
            let h2 = if coeff == "adjoint" {
                cohomology::h2_adjoint(&et, mode_of(cli))?
            } else {
                let er = load_etrep(Path::new(coeff))?;
                cohomology::h2(&et, &er, mode_of(cli))?
            };
            render_h2(&h2, cli.json, out);
            Ok(0)
        }
        Cmd::Extend { et, etrep, cochain, out: path } => {
            let et = io::read_document(et)?.into_embedding_tensor()?;
            let er = load_etrep(etrep)?;
            let z = io::read_document(cochain)?.into_two_cochain()?;
            let ext = cohomology::extension_from_cocycle(&et, &er, &z)?;
            write_out(path, &Document::Extension(ext), out)?;
            Ok(0)
        }
        Cmd::Equiv { et, etrep, z1, z2 } => {
            let et = io::read_document(et)?.into_embedding_tensor()?;
            let er = load_etrep(etrep)?;
            let z1 = io::read_document(z1)?.into_two_cochain()?;
            let z2 = io::read_document(z2)?.into_two_cochain()?;
            match cohomology::extensions_equivalent(&et, &er, &z1, &z2)? {
                Some(b) => {
                    if cli.json {
                        let mut o = Map::new();
                        o.insert("equivalent".into(), Value::Bool(true));
                        o.insert(
                            "witness".into(),
                            io::document_to_value(&Document::OneCochain(b)),
                        );
                        out.push_str(&io::render_value(&Value::Object(o)));
                    } else {
                        out.push_str("equivalent: yes\n");
                        out.push_str(&format!(
                            "witness b0 = {}\n",
                            compact(&io::matrix_to_value(b.b0()))
                        ));
                        out.push_str(&format!(
                            "witness b1 = {}\n",
                            compact(&io::matrix_to_value(b.b1()))
                        ));
                    }
                    Ok(0)
                }
                None => {
                    if cli.json {
                        let mut o = Map::new();
                        o.insert("equivalent".into(), Value::Bool(false));
                        o.insert("witness".into(), Value::Null);
                        out.push_str(&io::render_value(&Value::Object(o)));
                    } else {
                        out.push_str("equivalent: no\n");
                    }
                    Ok(1)
                }
            }
        }
        Cmd::Deform { et, input, order } => {
            let et = io::read_document(et)?.into_embedding_tensor()?;
            match io::read_document(input)? {
                Document::TwoCochain(z) => {
                    if order.is_some() && !cli.json {
                        out.push_str(
                            "note: --order applies to formal deformation documents; ignored \
                             for a first-order triple\n",
                        );
                    }
                    Ok(push_report(out, cli.json, &deform::check_first_order(&et, &z)?))
                }
                Document::FormalDeformation { field, n, m, mut terms } => {
                    let target = order.unwrap_or(terms.len());
                    terms.truncate(target);
                    while terms.len() < target {
                        terms.push(cohomology::TwoCochain::zero(field, n, m, m, n));
                    }
                    let def = FormalDeformation::new(&et, terms)?;
                    let report = deform::check_formal(&et, &def, 3 * target)?;
                    Ok(push_report(out, cli.json, &report))
                }
                other => Err(Error::ParseError(format!(
                    "deform expects a two_cochain or formal_deformation document, found {}",
                    other.kind()
                ))),
            }
        }
        Cmd::Nijenhuis { et, pair, emit_deformation } => {
            let et = io::read_document(et)?.into_embedding_tensor()?;
            let pair = io::read_document(pair)?.into_nijenhuis_pair()?;
            let report = deform::is_nijenhuis(&et, &pair)?;
            let code = push_report(out, cli.json, &report);
            if report.passed() {
                if let Some(path) = emit_deformation {
                    let z = deform::nijenhuis_to_deformation(&et, &pair)?;
                    write_out(path, &Document::TwoCochain(z), out)?;
                }
            }
            Ok(code)
        }
        Cmd::Rigid { et } => {
            let et = io::read_document(et)?.into_embedding_tensor()?;
            let r = deform::rigidity_report(&et)?;
            if cli.json {
                let mut o = Map::new();
                o.insert("dim_h2".into(), opt_num(r.h2.dim));
                o.insert("rigid".into(), Value::Bool(r.rigid_sufficient));
                o.insert("verdict".into(), Value::String(r.verdict.clone()));
                out.push_str(&io::render_value(&Value::Object(o)));
            } else {
                out.push_str(&format!("dim H2 = {}\n", dim_text(r.h2.dim)));
                out.push_str(&format!("verdict: {}\n", r.verdict));
            }
            Ok(u8::from(!r.rigid_sufficient))
        }
        Cmd::Enumerate { input, what } => enumerate_cmd(cli, input, *what, out),
        Cmd::Random { shape, field, count } => random_cmd(cli, shape, field, *count, out),
    }
}

fn verify(cli: &Cli, file: &Path, out: &mut String) -> Result<u8, Error> {
    match io::read_document(file)? {
        Document::MalcevAlgebra(a) => {
            let m = a.check_malcev()?;
            let s = a.check_sagle()?;
            let j = a.check_jacobi()?;
            if cli.json {
                let reports =
                    Value::Array(vec![&m, &s, &j].into_iter().map(io::report_to_value).collect());
                out.push_str(&io::render_value(&reports));
            } else {
                out.push_str(&format!(
                    "malcev: {}, sagle: {}, jacobi: {}\n",
                    verdict(m.passed()),
                    verdict(s.passed()),
                    verdict(j.passed()),
                ));
            }
            Ok(u8::from(!(m.passed() && s.passed())))
        }
        Document::Dialgebra { table, side } => {
            let report = match side {
                Side::Left => table.check_left_dialgebra()?,
                Side::Right => table.check_right_dialgebra()?,
            };
            Ok(push_report(out, cli.json, &report))
        }
        Document::Representation(r) => Ok(push_report(out, cli.json, &r.check_representation()?)),
        Document::EmbeddingTensor(t) => Ok(push_report(out, cli.json, &t.check()?)),
        Document::EtRepresentation(e) => Ok(push_report(out, cli.json, &e.check()?)),
        other => Err(Error::ParseError(format!(
            "verify applies to algebra, dialgebra, representation, embedding_tensor and \
             et_representation documents; {} documents are checked by their dedicated commands",
            other.kind()
        ))),
    }
}

fn render_h2(h2: &H2, json: bool, out: &mut String) {
    if json {
        let mut o = Map::new();
        o.insert("dim_z2".into(), Value::Number(Number::from(h2.dim_z2)));
        o.insert("rank_coboundaries".into(), Value::Number(Number::from(h2.rank_coboundaries)));
        o.insert("coboundaries_contained".into(), Value::Bool(h2.coboundaries_contained));
        o.insert("dim_h2".into(), opt_num(h2.dim));
        o.insert(
            "notes".into(),
            Value::Array(h2.notes.iter().cloned().map(Value::String).collect()),
        );
        out.push_str(&io::render_value(&Value::Object(o)));
    } else {
        out.push_str(&format!("dim Z2 = {}\n", h2.dim_z2));
        out.push_str(&format!("rank D = {}\n", h2.rank_coboundaries));
        out.push_str(&format!(
            "im(D) in Z2: {}\n",
            if h2.coboundaries_contained { "yes" } else { "NO" }
        ));
        out.push_str(&format!("dim H2 = {}\n", dim_text(h2.dim)));
        for n in &h2.notes {
            out.push_str(&format!("note: {n}\n"));
        }
    }
}

fn dim_text(d: Option<usize>) -> String {
    d.map(|d| d.to_string()).unwrap_or_else(|| "undefined".into())
}

fn opt_num(d: Option<usize>) -> Value {
    d.map(|d| Value::Number(Number::from(d))).unwrap_or(Value::Null)
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("value serialization cannot fail")
}

fn enumerate_cmd(cli: &Cli, input: &Path, what: WhatArg, out: &mut String) -> Result<u8, Error> {
    let items: Vec<Value> = match what {
        WhatArg::Et => {
            let rep = io::read_document(input)?.into_representation()?;
            enumerate::enumerate_ets(&rep)?.iter().map(io::matrix_to_value).collect()
        }
        WhatArg::Nijenhuis => {
            let et = io::read_document(input)?.into_embedding_tensor()?;
            enumerate::enumerate_nijenhuis(&et)?
                .iter()
                .map(|p| {
                    let mut o = Map::new();
                    o.insert("N0".into(), io::matrix_to_value(p.n0()));
                    o.insert("N1".into(), io::matrix_to_value(p.n1()));
                    Value::Object(o)
                })
                .collect()
        }
    };
    if cli.json {
        let mut o = Map::new();
        o.insert("count".into(), Value::Number(Number::from(items.len())));
        o.insert("items".into(), Value::Array(items));
        out.push_str(&io::render_value(&Value::Object(o)));
    } else {
        out.push_str(&format!("count = {}\n", items.len()));
        for item in &items {
            out.push_str(&compact(item));
            out.push('\n');
        }
    }
    Ok(0)
}

fn random_cmd(
    cli: &Cli,
    shape: &str,
    field: &str,
    count: usize,
    out: &mut String,
) -> Result<u8, Error> {
    let spec: ShapeSpec = shape.parse()?;
    let field = if field == "Q" {
        Field::Q
    } else {
        let p: u64 = field
            .parse()
            .map_err(|_| Error::ParseError(format!("field must be \"Q\" or a prime, found \"{field}\"")))?;
        Field::fp(p)?
    };
    let mut lcg = Lcg::new(cli.seed);
    let mut items = Vec::with_capacity(count);
    for _ in 0..count {
        items.push(match spec {
            ShapeSpec::Matrix { rows, cols } => {
                io::matrix_to_value(&enumerate::random_matrix(&mut lcg, field, rows, cols))
            }
            ShapeSpec::Skew { dim } => {
                let table = enumerate::random_skew_table(&mut lcg, field, dim)?;
                io::document_to_value(&Document::MalcevAlgebra(table))
            }
            ShapeSpec::Triple { n, m } => {
                let z = enumerate::random_triple(&mut lcg, field, n, m)?;
                io::document_to_value(&Document::TwoCochain(z))
            }
        });
    }
    out.push_str(&io::render_value(&Value::Array(items)));
    Ok(0)
}
