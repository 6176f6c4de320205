//! JSON document formats and report rendering.
//!
//! Every object the tool reads or writes is a *document*: a JSON object
//! with a `"kind"` tag that determines the remaining fields exactly
//! (unknown fields are rejected). Scalars follow the literal grammar
//! `-?[0-9]+(/[1-9][0-9]*)?` over ℚ — written as JSON numbers when they
//! are integers fitting 64 bits, as strings otherwise — and plain
//! integers reduced mod p over 𝔽_p. The field is declared once per
//! document as `"Q"` or `{"Fp": p}`; kinds that nest another document
//! inherit its field.
//!
//! Nested structure fields (`algebra`, `representation`,
//! `embedding_tensor`, `hat`) accept either an inline document or a
//! string path, resolved relative to the referencing file's directory.
//! Emission always inlines: `emit ∘ parse` is the identity on emitted
//! documents, byte for byte.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use num::ToPrimitive;
use serde_json::{Map, Number, Value};

use crate::algebra::AlgebraData;
use crate::cohomology::{pair_count, pair_index, Extension, OneCochain, TwoCochain};
use crate::deform::NijenhuisPair;
use crate::error::{Error, Result};
use crate::et::{EmbeddingTensor, Side};
use crate::etrep::EtRepresentation;
use crate::linalg::{vec_is_zero, Matrix};
use crate::rep::Representation;
use crate::report::VerificationReport;
use crate::scalar::{Field, Scalar};

/// A parsed, validated document.
#[derive(Debug, Clone)]
pub enum Document {
    MalcevAlgebra(AlgebraData),
    Dialgebra { table: AlgebraData, side: Side },
    Representation(Representation),
    EmbeddingTensor(EmbeddingTensor),
    EtRepresentation(EtRepresentation),
    TwoCochain(TwoCochain),
    OneCochain(OneCochain),
    NijenhuisPair(NijenhuisPair),
    FormalDeformation { field: Field, n: usize, m: usize, terms: Vec<TwoCochain> },
    Extension(Extension),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::MalcevAlgebra(_) => "malcev_algebra",
            Document::Dialgebra { .. } => "dialgebra",
            Document::Representation(_) => "representation",
            Document::EmbeddingTensor(_) => "embedding_tensor",
            Document::EtRepresentation(_) => "et_representation",
            Document::TwoCochain(_) => "two_cochain",
            Document::OneCochain(_) => "one_cochain",
            Document::NijenhuisPair(_) => "nijenhuis_pair",
            Document::FormalDeformation { .. } => "formal_deformation",
            Document::Extension(_) => "extension",
        }
    }

    fn wrong_kind(&self, want: &str) -> Error {
        Error::ParseError(format!("expected a {want} document, found {}", self.kind()))
    }

    pub fn into_algebra(self) -> Result<AlgebraData> {
        match self {
            Document::MalcevAlgebra(a) => Ok(a),
            other => Err(other.wrong_kind("malcev_algebra")),
        }
    }

    pub fn into_representation(self) -> Result<Representation> {
        match self {
            Document::Representation(r) => Ok(r),
            other => Err(other.wrong_kind("representation")),
        }
    }

    pub fn into_embedding_tensor(self) -> Result<EmbeddingTensor> {
        match self {
            Document::EmbeddingTensor(t) => Ok(t),
            other => Err(other.wrong_kind("embedding_tensor")),
        }
    }

    pub fn into_et_representation(self) -> Result<EtRepresentation> {
        match self {
            Document::EtRepresentation(e) => Ok(e),
            other => Err(other.wrong_kind("et_representation")),
        }
    }

    pub fn into_two_cochain(self) -> Result<TwoCochain> {
        match self {
            Document::TwoCochain(z) => Ok(z),
            other => Err(other.wrong_kind("two_cochain")),
        }
    }

    pub fn into_one_cochain(self) -> Result<OneCochain> {
        match self {
            Document::OneCochain(b) => Ok(b),
            other => Err(other.wrong_kind("one_cochain")),
        }
    }

    pub fn into_nijenhuis_pair(self) -> Result<NijenhuisPair> {
        match self {
            Document::NijenhuisPair(p) => Ok(p),
            other => Err(other.wrong_kind("nijenhuis_pair")),
        }
    }

    pub fn into_extension(self) -> Result<Extension> {
        match self {
            Document::Extension(e) => Ok(e),
            other => Err(other.wrong_kind("extension")),
        }
    }
}

// ---------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------

const MAX_REFERENCE_DEPTH: usize = 8;

struct Ctx {
    base: Option<PathBuf>,
    depth: usize,
}

/// Parse a document from JSON text; path references are resolved relative
/// to `base` when given and rejected otherwise.
pub fn parse_document(text: &str, base: Option<&Path>) -> Result<Document> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::ParseError(format!("invalid JSON: {e}")))?;
    doc_from_value(&value, "$", &Ctx { base: base.map(Path::to_path_buf), depth: 0 })
}

/// Read and parse a document file; references resolve relative to its
/// directory.
pub fn read_document(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ParseError(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text, path.parent())
}

fn obj<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::ParseError(format!("{path}: expected an object")))
}

fn get<'a>(o: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    o.get(key).ok_or_else(|| Error::ParseError(format!("{path}: missing field \"{key}\"")))
}

fn no_extra(o: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<()> {
    let allowed: BTreeSet<&str> = allowed.iter().copied().collect();
    for key in o.keys() {
        if !allowed.contains(key.as_str()) {
            return Err(Error::ParseError(format!("{path}: unknown field \"{key}\"")));
        }
    }
    Ok(())
}

fn usize_of(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| Error::ParseError(format!("{path}: expected a nonnegative integer")))
}

fn str_of<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::ParseError(format!("{path}: expected a string")))
}

fn arr<'a>(v: &'a Value, path: &str) -> Result<&'a [Value]> {
    v.as_array()
        .map(Vec::as_slice)
        .ok_or_else(|| Error::ParseError(format!("{path}: expected an array")))
}

fn field_from_value(v: &Value, path: &str) -> Result<Field> {
    match v {
        Value::String(s) if s == "Q" => Ok(Field::Q),
        Value::Object(o) => {
            no_extra(o, &["Fp"], path)?;
            let p = usize_of(get(o, "Fp", path)?, &format!("{path}.Fp"))?;
            Field::fp(p as u64)
        }
        _ => Err(Error::ParseError(format!(
            "{path}: expected \"Q\" or {{\"Fp\": p}}"
        ))),
    }
}

fn scalar_from_value(field: Field, v: &Value, path: &str) -> Result<Scalar> {
    match v {
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| {
                Error::ParseError(format!(
                    "{path}: scalar numbers must be integers fitting 64 bits; write larger or \
                     fractional values as strings"
                ))
            })?;
            Ok(Scalar::from_int(field, i))
        }
        Value::String(s) => Scalar::parse_in(field, s).map_err(|e| match e {
            Error::ParseError(msg) => Error::ParseError(format!("{path}: {msg}")),
            other => other,
        }),
        _ => Err(Error::ParseError(format!("{path}: expected a scalar (number or string)"))),
    }
}

fn vec_from_value(field: Field, len: usize, v: &Value, path: &str) -> Result<Vec<Scalar>> {
    let items = arr(v, path)?;
    if items.len() != len {
        return Err(Error::ParseError(format!(
            "{path}: expected {len} scalars, found {}",
            items.len()
        )));
    }
    items
        .iter()
        .enumerate()
        .map(|(k, x)| scalar_from_value(field, x, &format!("{path}[{k}]")))
        .collect()
}

fn matrix_from_value(
    field: Field,
    rows: usize,
    cols: usize,
    v: &Value,
    path: &str,
) -> Result<Matrix> {
    let row_vals = arr(v, path)?;
    if row_vals.len() != rows {
        return Err(Error::ParseError(format!(
            "{path}: expected {rows} rows, found {}",
            row_vals.len()
        )));
    }
    let mut data = Vec::with_capacity(rows);
    for (r, rv) in row_vals.iter().enumerate() {
        data.push(vec_from_value(field, cols, rv, &format!("{path}[{r}]"))?);
    }
    Ok(Matrix::from_fn(field, rows, cols, |r, c| data[r][c].clone()))
}

/// Parse a matrix whose shape is inferred from the JSON itself (used where
/// the document carries no dimension fields); must be rectangular.
fn matrix_free(field: Field, v: &Value, path: &str) -> Result<Matrix> {
    let row_vals = arr(v, path)?;
    let rows = row_vals.len();
    let cols = if rows == 0 { 0 } else { arr(&row_vals[0], &format!("{path}[0]"))?.len() };
    matrix_from_value(field, rows, cols, v, path)
}

/// Parse a `[{"i":…,"j":…,"c":[…]}]` list into (i, j, coefficients)
/// triples with values of the given length.
fn pair_entries_from_value(
    field: Field,
    len: usize,
    v: &Value,
    path: &str,
) -> Result<Vec<(usize, usize, Vec<Scalar>)>> {
    let items = arr(v, path)?;
    let mut out = Vec::with_capacity(items.len());
    for (k, item) in items.iter().enumerate() {
        let p = format!("{path}[{k}]");
        let o = obj(item, &p)?;
        no_extra(o, &["i", "j", "c"], &p)?;
        let i = usize_of(get(o, "i", &p)?, &format!("{p}.i"))?;
        let j = usize_of(get(o, "j", &p)?, &format!("{p}.j"))?;
        let c = vec_from_value(field, len, get(o, "c", &p)?, &format!("{p}.c"))?;
        out.push((i, j, c));
    }
    Ok(out)
}

fn matrix_list_from_value(
    field: Field,
    count: usize,
    rows: usize,
    cols: usize,
    v: &Value,
    path: &str,
) -> Result<Vec<Matrix>> {
    let items = arr(v, path)?;
    if items.len() != count {
        return Err(Error::ParseError(format!(
            "{path}: expected {count} matrices, found {}",
            items.len()
        )));
    }
    items
        .iter()
        .enumerate()
        .map(|(k, m)| matrix_from_value(field, rows, cols, m, &format!("{path}[{k}]")))
        .collect()
}

/// Resolve a nested structure field: inline object or string path.
fn nested(v: &Value, path: &str, ctx: &Ctx) -> Result<Document> {
    match v {
        Value::String(rel) => {
            if ctx.depth + 1 > MAX_REFERENCE_DEPTH {
                return Err(Error::ParseError(format!(
                    "{path}: reference depth exceeds {MAX_REFERENCE_DEPTH}"
                )));
            }
            let base = ctx.base.as_ref().ok_or_else(|| {
                Error::ParseError(format!(
                    "{path}: path references require a base directory (document parsed from text)"
                ))
            })?;
            let target = base.join(rel);
            let text = std::fs::read_to_string(&target).map_err(|e| {
                Error::ParseError(format!("{path}: cannot read {}: {e}", target.display()))
            })?;
            let value: Value = serde_json::from_str(&text).map_err(|e| {
                Error::ParseError(format!("{path}: invalid JSON in {}: {e}", target.display()))
            })?;
            doc_from_value(
                &value,
                path,
                &Ctx { base: target.parent().map(Path::to_path_buf), depth: ctx.depth + 1 },
            )
        }
        _ => doc_from_value(v, path, ctx),
    }
}

fn side_from_value(v: &Value, path: &str) -> Result<Side> {
    match str_of(v, path)? {
        "left" => Ok(Side::Left),
        "right" => Ok(Side::Right),
        other => Err(Error::ParseError(format!(
            "{path}: side must be \"left\" or \"right\", found \"{other}\""
        ))),
    }
}

fn doc_from_value(v: &Value, path: &str, ctx: &Ctx) -> Result<Document> {
    let o = obj(v, path)?;
    let kind = str_of(get(o, "kind", path)?, &format!("{path}.kind"))?;
    match kind {
        "malcev_algebra" => {
            no_extra(o, &["kind", "field", "dim", "bracket"], path)?;
            let field = field_from_value(get(o, "field", path)?, &format!("{path}.field"))?;
            let dim = usize_of(get(o, "dim", path)?, &format!("{path}.dim"))?;
            let entries = pair_entries_from_value(
                field,
                dim,
                get(o, "bracket", path)?,
                &format!("{path}.bracket"),
            )?;
            Ok(Document::MalcevAlgebra(AlgebraData::skew(field, dim, entries)?))
        }
        "dialgebra" => {
            no_extra(o, &["kind", "field", "dim", "side", "bracket"], path)?;
            let field = field_from_value(get(o, "field", path)?, &format!("{path}.field"))?;
            let dim = usize_of(get(o, "dim", path)?, &format!("{path}.dim"))?;
            let side = side_from_value(get(o, "side", path)?, &format!("{path}.side"))?;
            let entries = pair_entries_from_value(
                field,
                dim,
                get(o, "bracket", path)?,
                &format!("{path}.bracket"),
            )?;
            Ok(Document::Dialgebra { table: AlgebraData::full(field, dim, entries)?, side })
        }
        "representation" => {
            no_extra(o, &["kind", "algebra", "module_dim", "rho"], path)?;
            let algebra = nested(get(o, "algebra", path)?, &format!("{path}.algebra"), ctx)?
                .into_algebra()?;
            let m = usize_of(get(o, "module_dim", path)?, &format!("{path}.module_dim"))?;
            let rho = matrix_list_from_value(
                algebra.field(),
                algebra.dim(),
                m,
                m,
                get(o, "rho", path)?,
                &format!("{path}.rho"),
            )?;
            Ok(Document::Representation(Representation::new(algebra, m, rho)?))
        }
        "embedding_tensor" => {
            no_extra(o, &["kind", "representation", "T"], path)?;
            let rep = nested(
                get(o, "representation", path)?,
                &format!("{path}.representation"),
                ctx,
            )?
            .into_representation()?;
            let t = matrix_from_value(
                rep.algebra().field(),
                rep.algebra().dim(),
                rep.module_dim(),
                get(o, "T", path)?,
                &format!("{path}.T"),
            )?;
            Ok(Document::EmbeddingTensor(EmbeddingTensor::new(rep, t)?))
        }
        "et_representation" => {
            no_extra(
                o,
                &["kind", "embedding_tensor", "dim_v", "dim_w", "T_prime", "rho1", "rho2", "rho3"],
                path,
            )?;
            let et = nested(
                get(o, "embedding_tensor", path)?,
                &format!("{path}.embedding_tensor"),
                ctx,
            )?
            .into_embedding_tensor()?;
            let f = et.algebra().field();
            let n = et.algebra().dim();
            let m = et.rep().module_dim();
            let dv = usize_of(get(o, "dim_v", path)?, &format!("{path}.dim_v"))?;
            let dw = usize_of(get(o, "dim_w", path)?, &format!("{path}.dim_w"))?;
            let tp = matrix_from_value(f, dw, dv, get(o, "T_prime", path)?, &format!("{path}.T_prime"))?;
            let rho1 =
                matrix_list_from_value(f, n, dv, dv, get(o, "rho1", path)?, &format!("{path}.rho1"))?;
            let rho2 =
                matrix_list_from_value(f, n, dw, dw, get(o, "rho2", path)?, &format!("{path}.rho2"))?;
            let rho3 =
                matrix_list_from_value(f, m, dv, dw, get(o, "rho3", path)?, &format!("{path}.rho3"))?;
            Ok(Document::EtRepresentation(EtRepresentation::new(et, dv, dw, tp, rho1, rho2, rho3)?))
        }
        "two_cochain" => {
            no_extra(o, &["kind", "field", "n", "m", "v", "w", "theta", "omega", "nu"], path)?;
            let field = field_from_value(get(o, "field", path)?, &format!("{path}.field"))?;
            let n = usize_of(get(o, "n", path)?, &format!("{path}.n"))?;
            let m = usize_of(get(o, "m", path)?, &format!("{path}.m"))?;
            let dv = usize_of(get(o, "v", path)?, &format!("{path}.v"))?;
            let dw = usize_of(get(o, "w", path)?, &format!("{path}.w"))?;
            let theta =
                matrix_from_value(field, dw, m, get(o, "theta", path)?, &format!("{path}.theta"))?;
            let omega = omega_from_value(field, n, dw, get(o, "omega", path)?, &format!("{path}.omega"))?;
            let nu = matrix_list_from_value(field, n, dv, m, get(o, "nu", path)?, &format!("{path}.nu"))?;
            Ok(Document::TwoCochain(TwoCochain::new(field, n, m, dv, dw, theta, omega, nu)?))
        }
        "one_cochain" => {
            no_extra(o, &["kind", "field", "n", "m", "v", "w", "b0", "b1"], path)?;
            let field = field_from_value(get(o, "field", path)?, &format!("{path}.field"))?;
            let n = usize_of(get(o, "n", path)?, &format!("{path}.n"))?;
            let m = usize_of(get(o, "m", path)?, &format!("{path}.m"))?;
            let dv = usize_of(get(o, "v", path)?, &format!("{path}.v"))?;
            let dw = usize_of(get(o, "w", path)?, &format!("{path}.w"))?;
            let b0 = matrix_from_value(field, dv, m, get(o, "b0", path)?, &format!("{path}.b0"))?;
            let b1 = matrix_from_value(field, dw, n, get(o, "b1", path)?, &format!("{path}.b1"))?;
            Ok(Document::OneCochain(OneCochain::new(field, n, m, dv, dw, b0, b1)?))
        }
        "nijenhuis_pair" => {
            no_extra(o, &["kind", "field", "N0", "N1"], path)?;
            let field = field_from_value(get(o, "field", path)?, &format!("{path}.field"))?;
            let n0 = matrix_free(field, get(o, "N0", path)?, &format!("{path}.N0"))?;
            let n1 = matrix_free(field, get(o, "N1", path)?, &format!("{path}.N1"))?;
            Ok(Document::NijenhuisPair(NijenhuisPair::new(n0, n1)?))
        }
        "formal_deformation" => {
            no_extra(o, &["kind", "field", "n", "m", "terms"], path)?;
            let field = field_from_value(get(o, "field", path)?, &format!("{path}.field"))?;
            let n = usize_of(get(o, "n", path)?, &format!("{path}.n"))?;
            let m = usize_of(get(o, "m", path)?, &format!("{path}.m"))?;
            let items = arr(get(o, "terms", path)?, &format!("{path}.terms"))?;
            let mut terms = Vec::with_capacity(items.len());
            for (k, item) in items.iter().enumerate() {
                let p = format!("{path}.terms[{k}]");
                let to = obj(item, &p)?;
                no_extra(to, &["theta", "omega", "nu"], &p)?;
                let theta = matrix_from_value(field, n, m, get(to, "theta", &p)?, &format!("{p}.theta"))?;
                let omega = omega_from_value(field, n, n, get(to, "omega", &p)?, &format!("{p}.omega"))?;
                let nu = matrix_list_from_value(field, n, m, m, get(to, "nu", &p)?, &format!("{p}.nu"))?;
                terms.push(TwoCochain::new(field, n, m, m, n, theta, omega, nu)?);
            }
            Ok(Document::FormalDeformation { field, n, m, terms })
        }
        "extension" => {
            no_extra(o, &["kind", "hat", "i0", "i1", "p0", "p1"], path)?;
            let hat = nested(get(o, "hat", path)?, &format!("{path}.hat"), ctx)?
                .into_embedding_tensor()?;
            let f = hat.algebra().field();
            let i0 = matrix_free(f, get(o, "i0", path)?, &format!("{path}.i0"))?;
            let i1 = matrix_free(f, get(o, "i1", path)?, &format!("{path}.i1"))?;
            let p0 = matrix_free(f, get(o, "p0", path)?, &format!("{path}.p0"))?;
            let p1 = matrix_free(f, get(o, "p1", path)?, &format!("{path}.p1"))?;
            Ok(Document::Extension(Extension::new(hat, i0, i1, p0, p1)?))
        }
        other => Err(Error::ParseError(format!("{path}.kind: unknown kind \"{other}\""))),
    }
}

/// The ω table: entries with i < j, each a length-`len` vector; omitted
/// pairs are zero; duplicates rejected.
fn omega_from_value(
    field: Field,
    n: usize,
    len: usize,
    v: &Value,
    path: &str,
) -> Result<Vec<Vec<Scalar>>> {
    let entries = pair_entries_from_value(field, len, v, path)?;
    let mut omega = vec![crate::linalg::vec_zero(field, len); pair_count(n)];
    let mut seen = BTreeSet::new();
    for (k, (i, j, c)) in entries.into_iter().enumerate() {
        if i >= j || j >= n {
            return Err(Error::ParseError(format!(
                "{path}[{k}]: omega entries need i < j < {n}, found ({i},{j})"
            )));
        }
        if !seen.insert((i, j)) {
            return Err(Error::ParseError(format!(
                "{path}[{k}]: duplicate omega entry for pair ({i},{j})"
            )));
        }
        omega[pair_index(n, i, j)] = c;
    }
    Ok(omega)
}

// ---------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------

fn scalar_to_value(s: &Scalar) -> Value {
    match s {
        Scalar::Q(r) => {
            if r.denom() == &num::BigInt::from(1) {
                if let Some(i) = r.numer().to_i64() {
                    return Value::Number(Number::from(i));
                }
            }
            Value::String(s.to_string())
        }
        Scalar::Fp { val, .. } => Value::Number(Number::from(*val)),
    }
}

fn field_to_value(f: Field) -> Value {
    match f {
        Field::Q => Value::String("Q".into()),
        Field::Fp(p) => {
            let mut o = Map::new();
            o.insert("Fp".into(), Value::Number(Number::from(p)));
            Value::Object(o)
        }
    }
}

fn vec_to_value(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_value).collect())
}

/// A bare matrix as rows of scalar values (no document wrapper).
pub fn matrix_to_value(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vec_to_value(m.row(r))).collect())
}

fn matrix_list_to_value(ms: &[Matrix]) -> Value {
    Value::Array(ms.iter().map(matrix_to_value).collect())
}

fn pair_entry_to_value(i: usize, j: usize, c: &[Scalar]) -> Value {
    let mut o = Map::new();
    o.insert("i".into(), Value::Number(Number::from(i)));
    o.insert("j".into(), Value::Number(Number::from(j)));
    o.insert("c".into(), vec_to_value(c));
    Value::Object(o)
}

fn bracket_to_value(a: &AlgebraData) -> Value {
    Value::Array(a.entries().map(|(&(i, j), c)| pair_entry_to_value(i, j, c)).collect())
}

fn omega_to_value(z: &TwoCochain) -> Value {
    let (n, ..) = z.dims();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let c = z.omega_basis(i, j);
            if !vec_is_zero(&c) {
                out.push(pair_entry_to_value(i, j, &c));
            }
        }
    }
    Value::Array(out)
}

fn two_cochain_body(z: &TwoCochain, o: &mut Map<String, Value>) {
    o.insert("theta".into(), matrix_to_value(z.theta()));
    o.insert("omega".into(), omega_to_value(z));
    o.insert("nu".into(), matrix_list_to_value(z.nu()));
}

/// The document as a canonical JSON value (sorted keys, nested structures
/// inlined) — what `emit_document` pretty-prints.
pub fn document_to_value(doc: &Document) -> Value {
    let mut o = Map::new();
    o.insert("kind".into(), Value::String(doc.kind().into()));
    match doc {
        Document::MalcevAlgebra(a) => {
            o.insert("field".into(), field_to_value(a.field()));
            o.insert("dim".into(), Value::Number(Number::from(a.dim())));
            o.insert("bracket".into(), bracket_to_value(a));
        }
        Document::Dialgebra { table, side } => {
            o.insert("field".into(), field_to_value(table.field()));
            o.insert("dim".into(), Value::Number(Number::from(table.dim())));
            o.insert(
                "side".into(),
                Value::String(match side {
                    Side::Left => "left".into(),
                    Side::Right => "right".into(),
                }),
            );
            o.insert("bracket".into(), bracket_to_value(table));
        }
        Document::Representation(r) => {
            o.insert("algebra".into(), document_to_value(&Document::MalcevAlgebra(r.algebra().clone())));
            o.insert("module_dim".into(), Value::Number(Number::from(r.module_dim())));
            o.insert("rho".into(), matrix_list_to_value(r.rho()));
        }
        Document::EmbeddingTensor(t) => {
            o.insert(
                "representation".into(),
                document_to_value(&Document::Representation(t.rep().clone())),
            );
            o.insert("T".into(), matrix_to_value(t.tensor()));
        }
        Document::EtRepresentation(e) => {
            o.insert(
                "embedding_tensor".into(),
                document_to_value(&Document::EmbeddingTensor(e.et().clone())),
            );
            o.insert("dim_v".into(), Value::Number(Number::from(e.dim_v())));
            o.insert("dim_w".into(), Value::Number(Number::from(e.dim_w())));
            o.insert("T_prime".into(), matrix_to_value(e.t_prime()));
            o.insert("rho1".into(), matrix_list_to_value(e.rho1()));
            o.insert("rho2".into(), matrix_list_to_value(e.rho2()));
            o.insert("rho3".into(), matrix_list_to_value(e.rho3()));
        }
        Document::TwoCochain(z) => {
            let (n, m, dv, dw) = z.dims();
            o.insert("field".into(), field_to_value(z.field()));
            o.insert("n".into(), Value::Number(Number::from(n)));
            o.insert("m".into(), Value::Number(Number::from(m)));
            o.insert("v".into(), Value::Number(Number::from(dv)));
            o.insert("w".into(), Value::Number(Number::from(dw)));
            two_cochain_body(z, &mut o);
        }
        Document::OneCochain(b) => {
            let (n, m, dv, dw) = b.dims();
            o.insert("field".into(), field_to_value(b.field()));
            o.insert("n".into(), Value::Number(Number::from(n)));
            o.insert("m".into(), Value::Number(Number::from(m)));
            o.insert("v".into(), Value::Number(Number::from(dv)));
            o.insert("w".into(), Value::Number(Number::from(dw)));
            o.insert("b0".into(), matrix_to_value(b.b0()));
            o.insert("b1".into(), matrix_to_value(b.b1()));
        }
        Document::NijenhuisPair(p) => {
            o.insert("field".into(), field_to_value(p.n0().field()));
            o.insert("N0".into(), matrix_to_value(p.n0()));
            o.insert("N1".into(), matrix_to_value(p.n1()));
        }
        Document::FormalDeformation { field, n, m, terms } => {
            o.insert("field".into(), field_to_value(*field));
            o.insert("n".into(), Value::Number(Number::from(*n)));
            o.insert("m".into(), Value::Number(Number::from(*m)));
            o.insert(
                "terms".into(),
                Value::Array(
                    terms
                        .iter()
                        .map(|z| {
                            let mut to = Map::new();
                            two_cochain_body(z, &mut to);
                            Value::Object(to)
                        })
                        .collect(),
                ),
            );
        }
        Document::Extension(e) => {
            o.insert("hat".into(), document_to_value(&Document::EmbeddingTensor(e.hat().clone())));
            o.insert("i0".into(), matrix_to_value(e.i0()));
            o.insert("i1".into(), matrix_to_value(e.i1()));
            o.insert("p0".into(), matrix_to_value(e.p0()));
            o.insert("p1".into(), matrix_to_value(e.p1()));
        }
    }
    Value::Object(o)
}

/// Canonical emission: sorted keys, two-space pretty printing, trailing
/// newline. `emit ∘ parse` is the identity on its own output.
pub fn emit_document(doc: &Document) -> String {
    let mut text = serde_json::to_string_pretty(&document_to_value(doc))
        .expect("document serialization cannot fail");
    text.push('\n');
    text
}

// ---------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------

fn scalars_text(v: &[Scalar]) -> String {
    let items: Vec<String> = v.iter().map(Scalar::to_string).collect();
    format!("[{}]", items.join(", "))
}

/// Line-oriented plain-text rendering; deterministic for equal reports.
pub fn render_report_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("subject: {}\n", r.subject));
    for c in &r.checks {
        if c.passed() {
            out.push_str(&format!("check {}: pass ({} tuples)\n", c.name, c.tuples_checked));
        } else {
            let first = &c.violations[0];
            out.push_str(&format!(
                "check {}: FAIL ({} tuples, {} violations; first at {:?}: lhs = {}, rhs = {})\n",
                c.name,
                c.tuples_checked,
                c.violations.len(),
                first.tuple,
                scalars_text(&first.lhs),
                scalars_text(&first.rhs),
            ));
        }
    }
    for n in &r.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    out.push_str(&format!("result: {}\n", if r.passed() { "pass" } else { "FAIL" }));
    out
}

/// The same report as canonical JSON (all violations included).
pub fn report_to_value(r: &VerificationReport) -> Value {
    let mut o = Map::new();
    o.insert("subject".into(), Value::String(r.subject.clone()));
    o.insert("passed".into(), Value::Bool(r.passed()));
    o.insert(
        "checks".into(),
        Value::Array(
            r.checks
                .iter()
                .map(|c| {
                    let mut co = Map::new();
                    co.insert("name".into(), Value::String(c.name.clone()));
                    co.insert("passed".into(), Value::Bool(c.passed()));
                    co.insert(
                        "tuples_checked".into(),
                        Value::Number(Number::from(c.tuples_checked)),
                    );
                    co.insert(
                        "violations".into(),
                        Value::Array(
                            c.violations
                                .iter()
                                .map(|v| {
                                    let mut vo = Map::new();
                                    vo.insert(
                                        "tuple".into(),
                                        Value::Array(
                                            v.tuple
                                                .iter()
                                                .map(|&t| Value::Number(Number::from(t)))
                                                .collect(),
                                        ),
                                    );
                                    vo.insert("lhs".into(), vec_to_value(&v.lhs));
                                    vo.insert("rhs".into(), vec_to_value(&v.rhs));
                                    Value::Object(vo)
                                })
                                .collect(),
                        ),
                    );
                    Value::Object(co)
                })
                .collect(),
        ),
    );
    o.insert("notes".into(), Value::Array(r.notes.iter().cloned().map(Value::String).collect()));
    Value::Object(o)
}

pub fn render_report_json(r: &VerificationReport) -> String {
    let mut text = serde_json::to_string_pretty(&report_to_value(r))
        .expect("report serialization cannot fail");
    text.push('\n');
    text
}

/// Canonical pretty printing for an arbitrary JSON value + newline (used
/// by command-specific outputs).
pub fn render_value(v: &Value) -> String {
    let mut text = serde_json::to_string_pretty(v).expect("value serialization cannot fail");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sl2_doc_text() -> String {
        emit_document(&Document::MalcevAlgebra(fixtures::sl2()))
    }

    #[test]
    fn algebra_round_trip_is_byte_exact() {
        let text = sl2_doc_text();
        let doc = parse_document(&text, None).unwrap();
        assert_eq!(emit_document(&doc), text);
        let alg = doc.into_algebra().unwrap();
        assert_eq!(alg.entries().count(), 3);
    }

    #[test]
    fn representation_and_tensor_round_trip() {
        let rep = Representation::adjoint(&fixtures::aff1()).unwrap();
        let et = EmbeddingTensor::new(rep.clone(), Matrix::identity(Field::Q, 2)).unwrap();
        for doc in [
            Document::Representation(rep),
            Document::EmbeddingTensor(et.clone()),
            Document::EtRepresentation(crate::etrep::EtRepresentation::adjoint_shaped(&et)),
        ] {
            let text = emit_document(&doc);
            let back = parse_document(&text, None).unwrap();
            assert_eq!(emit_document(&back), text, "kind {}", doc.kind());
        }
    }

    #[test]
    fn cochain_pair_and_formal_round_trip() {
        let f3 = Field::fp(3).unwrap();
        let mut lcg = crate::enumerate::Lcg::new(5);
        let z = crate::enumerate::random_two_cochain(&mut lcg, f3, 3, 2, 2, 1).unwrap();
        let b = crate::enumerate::random_one_cochain(&mut lcg, f3, 3, 2, 2, 1).unwrap();
        let t1 = crate::enumerate::random_triple(&mut lcg, f3, 2, 2).unwrap();
        let t2 = crate::enumerate::random_triple(&mut lcg, f3, 2, 2).unwrap();
        let pair = NijenhuisPair::new(
            crate::enumerate::random_matrix(&mut lcg, f3, 2, 2),
            crate::enumerate::random_matrix(&mut lcg, f3, 2, 2),
        )
        .unwrap();
        for doc in [
            Document::TwoCochain(z),
            Document::OneCochain(b),
            Document::NijenhuisPair(pair),
            Document::FormalDeformation { field: f3, n: 2, m: 2, terms: vec![t1, t2] },
        ] {
            let text = emit_document(&doc);
            let back = parse_document(&text, None).unwrap();
            assert_eq!(emit_document(&back), text, "kind {}", doc.kind());
        }
    }

    #[test]
    fn extension_round_trip() {
        use crate::cohomology;
        let alg = fixtures::abelian(1);
        let rep =
            Representation::new(alg, 1, vec![Matrix::from_ints(Field::Q, &[&[2]])]).unwrap();
        let et = EmbeddingTensor::new(rep, Matrix::zero(Field::Q, 1, 1)).unwrap();
        let er = crate::etrep::EtRepresentation::new(
            et.clone(),
            1,
            1,
            Matrix::zero(Field::Q, 1, 1),
            vec![Matrix::from_ints(Field::Q, &[&[-2]])],
            vec![Matrix::from_ints(Field::Q, &[&[2]])],
            vec![Matrix::from_ints(Field::Q, &[&[1]])],
        )
        .unwrap();
        let space = cohomology::cocycle_space(&et, &er, cohomology::FormulaMode::Derived).unwrap();
        let ext = cohomology::extension_from_cocycle(&et, &er, &space[0]).unwrap();
        let text = emit_document(&Document::Extension(ext));
        let back = parse_document(&text, None).unwrap();
        assert_eq!(emit_document(&back), text);
    }

    #[test]
    fn unknown_fields_and_kinds_are_rejected() {
        let mut bad = sl2_doc_text().replace("\"dim\": 3", "\"dim\": 3,\n  \"extra\": 1");
        assert!(matches!(parse_document(&bad, None), Err(Error::ParseError(_))));
        bad = sl2_doc_text().replace("malcev_algebra", "mystery_kind");
        assert!(matches!(parse_document(&bad, None), Err(Error::ParseError(_))));
    }

    #[test]
    fn folding_duplicates_are_rejected() {
        let text = r#"{
  "kind": "malcev_algebra",
  "field": "Q",
  "dim": 2,
  "bracket": [
    {"i": 0, "j": 1, "c": [0, 1]},
    {"i": 1, "j": 0, "c": [0, 1]}
  ]
}"#;
        let err = parse_document(text, None).unwrap_err();
        assert!(matches!(err, Error::ParseError(_)), "{err}");
    }

    #[test]
    fn reversed_entries_fold_with_negation() {
        let reversed = r#"{
  "kind": "malcev_algebra",
  "field": "Q",
  "dim": 2,
  "bracket": [{"i": 1, "j": 0, "c": [0, -1]}]
}"#;
        let alg = parse_document(reversed, None).unwrap().into_algebra().unwrap();
        assert_eq!(alg.bracket_basis(0, 1)[1].to_string(), "1");
    }

    #[test]
    fn scalar_forms() {
        let text = r#"{
  "kind": "malcev_algebra",
  "field": "Q",
  "dim": 2,
  "bracket": [{"i": 0, "j": 1, "c": ["1/2", -3]}]
}"#;
        let alg = parse_document(text, None).unwrap().into_algebra().unwrap();
        assert_eq!(alg.bracket_basis(0, 1)[0].to_string(), "1/2");
        // Emission turns integers into numbers, fractions into strings.
        let out = emit_document(&Document::MalcevAlgebra(alg));
        assert!(out.contains("\"1/2\""));
        assert!(out.contains("-3"));

        for bad in ["\"2/-4\"", "\"1/0\"", "1.5", "\"--2\"", "true"] {
            let t = text.replace("\"1/2\"", bad);
            assert!(parse_document(&t, None).is_err(), "{bad}");
        }
    }

    #[test]
    fn fp_scalars_reduce_and_reject_fractions() {
        let text = r#"{
  "kind": "malcev_algebra",
  "field": {"Fp": 3},
  "dim": 2,
  "bracket": [{"i": 0, "j": 1, "c": [0, -1]}]
}"#;
        let alg = parse_document(text, None).unwrap().into_algebra().unwrap();
        assert_eq!(alg.bracket_basis(0, 1)[1].to_string(), "2");
        let bad = text.replace("-1", "\"1/2\"");
        assert!(parse_document(&bad, None).is_err());
    }

    #[test]
    fn path_references_resolve_relative_to_the_document() {
        let dir = std::env::temp_dir().join(format!("malcev_io_{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("alg.json"), sl2_doc_text()).unwrap();
        let rep = Representation::adjoint(&fixtures::sl2()).unwrap();
        let full = emit_document(&Document::Representation(rep));
        // Swap the inline algebra for a reference.
        let referencing = {
            let v: Value = serde_json::from_str(&full).unwrap();
            let mut o = v.as_object().unwrap().clone();
            o.insert("algebra".into(), Value::String("alg.json".into()));
            render_value(&Value::Object(o))
        };
        let path = dir.join("rep.json");
        std::fs::write(&path, &referencing).unwrap();
        let doc = read_document(&path).unwrap();
        // Canonical emission inlines the referenced algebra again.
        assert_eq!(emit_document(&doc), full);
        // Without a base directory the reference is refused.
        assert!(parse_document(&referencing, None).is_err());
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn report_rendering_is_deterministic_and_structured() {
        let rep = fixtures::sl2().check_malcev().unwrap();
        let text1 = render_report_text(&rep);
        let text2 = render_report_text(&rep);
        assert_eq!(text1, text2);
        assert!(text1.ends_with("result: pass\n"));
        let json = render_report_json(&rep);
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["passed"], Value::Bool(true));

        // A failing report shows the first violation inline.
        let bad = AlgebraData::skew(
            Field::Q,
            3,
            vec![
                (0, 1, vec![Field::Q.zero(), Field::Q.zero(), Field::Q.one()]),
                (0, 2, vec![Field::Q.one(), Field::Q.zero(), Field::Q.zero()]),
                (1, 2, vec![Field::Q.zero(), Field::Q.one(), Field::Q.zero()]),
            ],
        )
        .unwrap();
        let failing = bad.check_malcev().unwrap();
        assert!(!failing.passed());
        let text = render_report_text(&failing);
        assert!(text.contains("FAIL"), "{text}");
        assert!(text.contains("first at"), "{text}");
        assert!(text.ends_with("result: FAIL\n"));
    }

    #[test]
    fn dialgebra_documents_carry_side_and_full_tables() {
        let rep = Representation::adjoint(&fixtures::aff1()).unwrap();
        let hemi = crate::et::hemi_semidirect(&rep).unwrap();
        let doc = Document::Dialgebra { table: hemi, side: Side::Left };
        let text = emit_document(&doc);
        let back = parse_document(&text, None).unwrap();
        assert_eq!(emit_document(&back), text);
        match back {
            Document::Dialgebra { side: Side::Left, .. } => {}
            other => panic!("wrong parse: {}", other.kind()),
        }
    }
}
