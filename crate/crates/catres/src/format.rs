//! Versioned JSON documents for algebras, quivers, modules and complexes.
//!
//! Every document carries a `format` string and rejects unknown fields.
//! Errors name the file, the location inside the document and the reason.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use catres_core::algebra::RadicalSource;
use catres_core::auslander::{build_auslander, AuslanderData};
use catres_core::quiver::{from_quiver, Arrow, QuiverSpec, Relation};
use catres_core::{Algebra, BComplex, Field, FieldSpec, Mat, PrimeField, Rationals, Repn};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const ALGEBRA_FORMAT: &str = "catres-algebra/1";
pub const QUIVER_FORMAT: &str = "catres-quiver/1";
pub const MODULE_FORMAT: &str = "catres-module/1";
pub const COMPLEX_FORMAT: &str = "catres-complex/1";

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{file}: {source}")]
    Io {
        file: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{file}: at {pointer}: {reason}")]
    Schema {
        file: String,
        pointer: String,
        reason: String,
    },
    #[error("{file}: {reason}")]
    Invariant { file: String, reason: String },
}

impl LoadError {
    pub fn pointer(&self) -> Option<&str> {
        match self {
            LoadError::Schema { pointer, .. } => Some(pointer),
            _ => None,
        }
    }
}

type Res<T> = Result<T, LoadError>;

/// Builds errors that share a file name and a pointer prefix.
#[derive(Clone, Debug)]
struct Ctx {
    file: String,
    prefix: String,
}

impl Ctx {
    fn new(file: &str) -> Self {
        Self {
            file: file.into(),
            prefix: String::new(),
        }
    }

    fn nested(&self, key: &str) -> Self {
        Self {
            file: self.file.clone(),
            prefix: self.at(key),
        }
    }

    fn at(&self, key: &str) -> String {
        match (self.prefix.is_empty(), key.starts_with('[')) {
            (true, _) => key.into(),
            (false, true) => format!("{}{key}", self.prefix),
            (false, false) => format!("{}.{key}", self.prefix),
        }
    }

    fn schema(&self, key: &str, reason: impl Into<String>) -> LoadError {
        let pointer = self.at(key);
        LoadError::Schema {
            file: self.file.clone(),
            pointer: if pointer.is_empty() {
                "(root)".into()
            } else {
                pointer
            },
            reason: reason.into(),
        }
    }

    fn invariant(&self, e: catres_core::Error) -> LoadError {
        LoadError::Invariant {
            file: self.file.clone(),
            reason: e.to_string(),
        }
    }

    fn decode<T: serde::de::DeserializeOwned>(&self, v: &Value) -> Res<T> {
        serde_path_to_error::deserialize(v).map_err(|e| {
            let path = e.path().to_string();
            let key = if path == "." { String::new() } else { path };
            self.schema(&key, e.into_inner().to_string())
        })
    }
}

/// A field element: an integer, or a string such as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

pub type MatrixDoc = Vec<Vec<Scalar>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldDoc {
    Prime { p: u64 },
    Rational,
}

impl From<FieldSpec> for FieldDoc {
    fn from(s: FieldSpec) -> Self {
        match s {
            FieldSpec::Prime { p } => FieldDoc::Prime { p },
            FieldSpec::Rational => FieldDoc::Rational,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub format: String,
    pub field: FieldDoc,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<Scalar>,
    pub mult: Vec<Vec<Vec<Scalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical: Option<Vec<Vec<Scalar>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: Scalar,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDoc {
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub format: String,
    pub field: FieldDoc,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    pub relations: Vec<RelationDoc>,
    pub length_bound: usize,
}

/// Where a module's algebra comes from: a file path (relative to the
/// referring file), the Auslander algebra of another reference, or an inline
/// algebra or quiver document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Auslander(AuslanderRef),
    Inline(Value),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuslanderRef {
    pub auslander_of: Box<AlgebraRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub format: String,
    pub algebra: AlgebraRef,
    pub dim: usize,
    pub action: Vec<MatrixDoc>,
}

/// A complex term: a module over the complex's algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermModuleDoc {
    pub dim: usize,
    pub action: Vec<MatrixDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub format: String,
    pub algebra: AlgebraRef,
    pub lo: i32,
    pub hi: i32,
    pub terms: Vec<TermModuleDoc>,
    pub differentials: Vec<MatrixDoc>,
}

/// A value over one of the supported fields.
#[derive(Clone, Debug)]
pub enum Any<P, Q> {
    Prime(P),
    Rational(Q),
}

/// Evaluates `$body` with `$v` bound to the payload, whatever the field.
#[macro_export]
macro_rules! with_field {
    ($e:expr, $v:ident => $body:expr) => {
        match $e {
            $crate::format::Any::Prime($v) => $body,
            $crate::format::Any::Rational($v) => $body,
        }
    };
}

/// A loaded algebra with the reference that produced it.
#[derive(Clone, Debug)]
pub struct AlgebraCtx<F: Field> {
    pub algebra: Arc<Algebra<F>>,
    /// Present when the algebra is the Auslander algebra of another one.
    pub auslander: Option<Arc<AuslanderData<F>>>,
    pub reference: AlgebraRef,
}

#[derive(Clone, Debug)]
pub struct ModuleCtx<F: Field> {
    pub algebra: AlgebraCtx<F>,
    pub module: Repn<F>,
}

#[derive(Clone, Debug)]
pub struct ComplexCtx<F: Field> {
    pub algebra: AlgebraCtx<F>,
    pub complex: BComplex<F>,
}

pub type AnyAlgebra = Any<AlgebraCtx<PrimeField>, AlgebraCtx<Rationals>>;
pub type AnyModule = Any<ModuleCtx<PrimeField>, ModuleCtx<Rationals>>;
pub type AnyComplex = Any<ComplexCtx<PrimeField>, ComplexCtx<Rationals>>;

pub fn scalar<F: Field>(field: &F, s: &Scalar) -> Option<F::Elem> {
    match s {
        Scalar::Int(n) => Some(field.from_i64(*n)),
        Scalar::Text(t) => field.parse(t),
    }
}

pub fn emit_scalar<F: Field>(field: &F, a: &F::Elem) -> Scalar {
    let s = field.format(a);
    match s.parse::<i64>() {
        Ok(n) => Scalar::Int(n),
        Err(_) => Scalar::Text(s),
    }
}

fn vector<F: Field>(
    field: &F,
    ctx: &Ctx,
    key: &str,
    v: &[Scalar],
    len: usize,
) -> Res<Vec<F::Elem>> {
    if v.len() != len {
        return Err(ctx.schema(key, format!("expected {len} entries, got {}", v.len())));
    }
    v.iter()
        .enumerate()
        .map(|(i, s)| {
            scalar(field, s).ok_or_else(|| {
                ctx.schema(
                    &format!("{key}[{i}]"),
                    format!("not an element of {}", field.spec()),
                )
            })
        })
        .collect()
}

fn matrix<F: Field>(
    field: &F,
    ctx: &Ctx,
    key: &str,
    m: &MatrixDoc,
    rows: usize,
    cols: usize,
) -> Res<Mat<F>> {
    if m.len() != rows {
        return Err(ctx.schema(key, format!("expected {rows} rows, got {}", m.len())));
    }
    let rows: Vec<Vec<F::Elem>> = m
        .iter()
        .enumerate()
        .map(|(r, row)| vector(field, ctx, &format!("{key}[{r}]"), row, cols))
        .collect::<Res<_>>()?;
    Ok(Mat::from_rows(field, cols, &rows))
}

pub fn emit_vector<F: Field>(field: &F, v: &[F::Elem]) -> Vec<Scalar> {
    v.iter().map(|a| emit_scalar(field, a)).collect()
}

pub fn emit_matrix<F: Field>(m: &Mat<F>) -> MatrixDoc {
    (0..m.rows())
        .map(|r| emit_vector(m.field(), m.row(r)))
        .collect()
}

fn check_format(ctx: &Ctx, found: &str, expected: &str) -> Res<()> {
    if found != expected {
        return Err(ctx.schema(
            "format",
            format!("expected \"{expected}\", got \"{found}\""),
        ));
    }
    Ok(())
}

fn prime(ctx: &Ctx, p: u64) -> Res<PrimeField> {
    PrimeField::new(p).map_err(|e| ctx.schema("field.p", e.to_string()))
}

fn algebra_from_doc<F: Field>(field: &F, ctx: &Ctx, d: &AlgebraDoc) -> Res<Algebra<F>> {
    check_format(ctx, &d.format, ALGEBRA_FORMAT)?;
    let n = d.dim;
    if d.basis.len() != n {
        return Err(ctx.schema(
            "basis",
            format!("expected {n} labels, got {}", d.basis.len()),
        ));
    }
    let unit = vector(field, ctx, "unit", &d.unit, n)?;
    if d.mult.len() != n {
        return Err(ctx.schema("mult", format!("expected {n} rows, got {}", d.mult.len())));
    }
    let mut mult = Vec::with_capacity(n);
    for (i, row) in d.mult.iter().enumerate() {
        if row.len() != n {
            return Err(ctx.schema(
                &format!("mult[{i}]"),
                format!("expected {n} products, got {}", row.len()),
            ));
        }
        let row: Vec<Vec<F::Elem>> = row
            .iter()
            .enumerate()
            .map(|(j, v)| vector(field, ctx, &format!("mult[{i}][{j}]"), v, n))
            .collect::<Res<_>>()?;
        mult.push(row);
    }
    let labels = d.basis.clone();
    let built = match &d.radical {
        None => Algebra::from_table(field, labels, unit, &mult),
        Some(rad) => {
            let rad: Vec<Vec<F::Elem>> = rad
                .iter()
                .enumerate()
                .map(|(k, v)| vector(field, ctx, &format!("radical[{k}]"), v, n))
                .collect::<Res<_>>()?;
            Algebra::from_table_with_radical(field, labels, unit, &mult, &rad)
        }
    };
    let alg = built.map_err(|e| ctx.invariant(e))?;
    alg.radical_chain().map_err(|e| ctx.invariant(e.clone()))?;
    Ok(alg)
}

pub fn quiver_spec<F: Field>(field: &F, ctx_file: &str, d: &QuiverDoc) -> Res<QuiverSpec<F>> {
    let ctx = Ctx::new(ctx_file);
    quiver_spec_in(field, &ctx, d)
}

fn quiver_spec_in<F: Field>(field: &F, ctx: &Ctx, d: &QuiverDoc) -> Res<QuiverSpec<F>> {
    check_format(ctx, &d.format, QUIVER_FORMAT)?;
    let mut relations = Vec::new();
    for (r, rel) in d.relations.iter().enumerate() {
        let mut terms = Vec::new();
        for (t, term) in rel.terms.iter().enumerate() {
            let c = scalar(field, &term.coeff).ok_or_else(|| {
                ctx.schema(
                    &format!("relations[{r}].terms[{t}].coeff"),
                    format!("not an element of {}", field.spec()),
                )
            })?;
            terms.push((c, term.path.clone()));
        }
        relations.push(Relation { terms });
    }
    Ok(QuiverSpec {
        field: field.clone(),
        vertices: d.vertices.clone(),
        arrows: d
            .arrows
            .iter()
            .map(|a| Arrow {
                name: a.name.clone(),
                from: a.from.clone(),
                to: a.to.clone(),
            })
            .collect(),
        relations,
        length_bound: Some(d.length_bound),
    })
}

pub fn emit_quiver<F: Field>(q: &QuiverSpec<F>) -> QuiverDoc {
    QuiverDoc {
        format: QUIVER_FORMAT.into(),
        field: q.field.spec().into(),
        vertices: q.vertices.clone(),
        arrows: q
            .arrows
            .iter()
            .map(|a| ArrowDoc {
                name: a.name.clone(),
                from: a.from.clone(),
                to: a.to.clone(),
            })
            .collect(),
        relations: q
            .relations
            .iter()
            .map(|r| RelationDoc {
                terms: r
                    .terms
                    .iter()
                    .map(|(c, p)| TermDoc {
                        coeff: emit_scalar(&q.field, c),
                        path: p.clone(),
                    })
                    .collect(),
            })
            .collect(),
        length_bound: q.length_bound.unwrap_or(0),
    }
}

/// Emits an algebra by its structure constants. A radical annotation is
/// included unless the radical came from the trace form, so that the
/// document loads back to the same algebra over any field.
pub fn emit_algebra<F: Field>(a: &Algebra<F>) -> AlgebraDoc {
    let f = a.field();
    let mult = a
        .mult_table()
        .iter()
        .map(|row| row.iter().map(|v| emit_vector(f, v)).collect())
        .collect();
    let radical = match a.radical_chain() {
        Ok(chain) if chain.source() != RadicalSource::TraceForm => Some(
            chain
                .radical()
                .basis()
                .iter()
                .map(|v| emit_vector(f, v))
                .collect(),
        ),
        _ => None,
    };
    AlgebraDoc {
        format: ALGEBRA_FORMAT.into(),
        field: f.spec().into(),
        dim: a.dim(),
        basis: a.labels().to_vec(),
        unit: emit_vector(f, a.unit()),
        mult,
        radical,
    }
}

pub fn emit_module<F: Field>(m: &Repn<F>, algebra: &AlgebraRef) -> ModuleDoc {
    ModuleDoc {
        format: MODULE_FORMAT.into(),
        algebra: algebra.clone(),
        dim: m.dim(),
        action: m.actions().iter().map(emit_matrix).collect(),
    }
}

pub fn emit_complex<F: Field>(c: &BComplex<F>, algebra: &AlgebraRef) -> ComplexDoc {
    ComplexDoc {
        format: COMPLEX_FORMAT.into(),
        algebra: algebra.clone(),
        lo: c.lo(),
        hi: c.lo() + c.len() as i32 - 1,
        terms: c
            .terms()
            .iter()
            .map(|t| TermModuleDoc {
                dim: t.dim(),
                action: t.actions().iter().map(emit_matrix).collect(),
            })
            .collect(),
        differentials: c.diffs().iter().map(emit_matrix).collect(),
    }
}

/// Serializes with sorted keys and a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let v = serde_json::to_value(doc).expect("documents serialize to JSON");
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn read_value(path: &Path) -> Res<Value> {
    let file = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        file: file.clone(),
        source,
    })?;
    parse_value(&file, &text)
}

fn parse_value(file: &str, text: &str) -> Res<Value> {
    serde_json::from_str(text).map_err(|e| LoadError::Schema {
        file: file.into(),
        pointer: format!("line {} column {}", e.line(), e.column()),
        reason: e.to_string(),
    })
}

fn format_of<'a>(ctx: &Ctx, v: &'a Value) -> Res<&'a str> {
    match v.get("format") {
        Some(Value::String(s)) => Ok(s),
        Some(_) => Err(ctx.schema("format", "expected a string")),
        None => Err(ctx.schema("format", "missing field `format`")),
    }
}

fn field_of(ctx: &Ctx, v: &Value) -> Res<FieldDoc> {
    match v.get("field") {
        Some(f) => ctx.nested("field").decode(f),
        None => Err(ctx.schema("field", "missing field `field`")),
    }
}

/// An algebra or quiver document, interpreted over its declared field.
fn algebra_value(ctx: &Ctx, v: &Value, reference: AlgebraRef) -> Res<AnyAlgebra> {
    fn build<F: Field>(
        field: F,
        ctx: &Ctx,
        v: &Value,
        quiver: bool,
        reference: AlgebraRef,
    ) -> Res<AlgebraCtx<F>> {
        let algebra = if quiver {
            let d: QuiverDoc = ctx.decode(v)?;
            let spec = quiver_spec_in(&field, ctx, &d)?;
            from_quiver(&spec).map_err(|e| ctx.invariant(e))?
        } else {
            let d: AlgebraDoc = ctx.decode(v)?;
            algebra_from_doc(&field, ctx, &d)?
        };
        Ok(AlgebraCtx {
            algebra: Arc::new(algebra),
            auslander: None,
            reference,
        })
    }
    let quiver = match format_of(ctx, v)? {
        ALGEBRA_FORMAT => false,
        QUIVER_FORMAT => true,
        other => {
            return Err(ctx.schema(
                "format",
                format!("expected \"{ALGEBRA_FORMAT}\" or \"{QUIVER_FORMAT}\", got \"{other}\""),
            ))
        }
    };
    Ok(match field_of(ctx, v)? {
        FieldDoc::Prime { p } => Any::Prime(build(prime(ctx, p)?, ctx, v, quiver, reference)?),
        FieldDoc::Rational => Any::Rational(build(Rationals, ctx, v, quiver, reference)?),
    })
}

fn resolve(ctx: &Ctx, base: &Path, r: &AlgebraRef, depth: usize) -> Res<AnyAlgebra> {
    if depth > 8 {
        return Err(ctx.schema("", "algebra references nest too deeply"));
    }
    match r {
        AlgebraRef::Path(p) => {
            let path = base.join(p);
            let v = read_value(&path)?;
            let inner = Ctx::new(&path.display().to_string());
            let mut a = algebra_value(&inner, &v, r.clone())?;
            with_field!(&mut a, c => c.reference = r.clone());
            Ok(a)
        }
        AlgebraRef::Inline(v) => algebra_value(ctx, v, r.clone()),
        AlgebraRef::Auslander(a) => {
            let inner = resolve(
                &ctx.nested("auslander_of"),
                base,
                &a.auslander_of,
                depth + 1,
            )?;
            fn lift<F: Field>(ctx: &Ctx, c: AlgebraCtx<F>, r: &AlgebraRef) -> Res<AlgebraCtx<F>> {
                let data = build_auslander(&c.algebra).map_err(|e| ctx.invariant(e))?;
                Ok(AlgebraCtx {
                    algebra: data.tilde().clone(),
                    auslander: Some(Arc::new(data)),
                    reference: r.clone(),
                })
            }
            Ok(match inner {
                Any::Prime(c) => Any::Prime(lift(ctx, c, r)?),
                Any::Rational(c) => Any::Rational(lift(ctx, c, r)?),
            })
        }
    }
}

fn dir_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// Loads an algebra or quiver document from a file.
pub fn load_algebra(path: &Path) -> Res<AnyAlgebra> {
    let v = read_value(path)?;
    let ctx = Ctx::new(&path.display().to_string());
    algebra_value(&ctx, &v, AlgebraRef::Path(file_name(path)))
}

/// Parses algebra or quiver document text; `name` labels errors.
pub fn parse_algebra(name: &str, text: &str) -> Res<AnyAlgebra> {
    let v = parse_value(name, text)?;
    algebra_value(&Ctx::new(name), &v, AlgebraRef::Inline(v.clone()))
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn module_over<F: Field>(
    ctx: &Ctx,
    a: &Arc<Algebra<F>>,
    dim: usize,
    action: &[MatrixDoc],
) -> Res<Repn<F>> {
    let f = a.field();
    if action.len() != a.dim() {
        return Err(ctx.schema(
            "action",
            format!("expected {} matrices, got {}", a.dim(), action.len()),
        ));
    }
    let mats = action
        .iter()
        .enumerate()
        .map(|(i, m)| matrix(f, ctx, &format!("action[{i}]"), m, dim, dim))
        .collect::<Res<Vec<_>>>()?;
    Repn::new(a.clone(), dim, mats).map_err(|e| ctx.invariant(e))
}

fn module_doc(ctx: &Ctx, base: &Path, v: &Value) -> Res<AnyModule> {
    check_format(ctx, format_of(ctx, v)?, MODULE_FORMAT)?;
    let d: ModuleDoc = ctx.decode(v)?;
    let a = resolve(&ctx.nested("algebra"), base, &d.algebra, 0)?;
    Ok(match a {
        Any::Prime(c) => Any::Prime(ModuleCtx {
            module: module_over(ctx, &c.algebra, d.dim, &d.action)?,
            algebra: c,
        }),
        Any::Rational(c) => Any::Rational(ModuleCtx {
            module: module_over(ctx, &c.algebra, d.dim, &d.action)?,
            algebra: c,
        }),
    })
}

/// Loads a module document; path references resolve against its directory.
pub fn load_module(path: &Path) -> Res<AnyModule> {
    let v = read_value(path)?;
    module_doc(&Ctx::new(&path.display().to_string()), &dir_of(path), &v)
}

/// Parses module document text; path references resolve against `base`.
pub fn parse_module(name: &str, text: &str, base: &Path) -> Res<AnyModule> {
    let v = parse_value(name, text)?;
    module_doc(&Ctx::new(name), base, &v)
}

fn complex_over<F: Field>(ctx: &Ctx, c: AlgebraCtx<F>, d: &ComplexDoc) -> Res<ComplexCtx<F>> {
    let a = &c.algebra;
    let n = d.terms.len();
    if i64::from(d.hi) - i64::from(d.lo) + 1 != n as i64 {
        return Err(ctx.schema(
            "hi",
            format!("degrees {}..={} do not match {n} terms", d.lo, d.hi),
        ));
    }
    if d.differentials.len() != n.saturating_sub(1) {
        return Err(ctx.schema(
            "differentials",
            format!(
                "expected {} matrices, got {}",
                n.saturating_sub(1),
                d.differentials.len()
            ),
        ));
    }
    let terms = d
        .terms
        .iter()
        .enumerate()
        .map(|(k, t)| module_over(&ctx.nested(&format!("terms[{k}]")), a, t.dim, &t.action))
        .collect::<Res<Vec<_>>>()?;
    let diffs = d
        .differentials
        .iter()
        .enumerate()
        .map(|(k, m)| {
            matrix(
                a.field(),
                ctx,
                &format!("differentials[{k}]"),
                m,
                terms[k].dim(),
                terms[k + 1].dim(),
            )
        })
        .collect::<Res<Vec<_>>>()?;
    let complex = BComplex::new(a, d.lo, terms, diffs).map_err(|e| ctx.invariant(e))?;
    Ok(ComplexCtx {
        algebra: c,
        complex,
    })
}

/// Loads a complex document; path references resolve against its directory.
pub fn load_complex(path: &Path) -> Res<AnyComplex> {
    let v = read_value(path)?;
    let ctx = Ctx::new(&path.display().to_string());
    check_format(&ctx, format_of(&ctx, &v)?, COMPLEX_FORMAT)?;
    let d: ComplexDoc = ctx.decode(&v)?;
    Ok(
        match resolve(&ctx.nested("algebra"), &dir_of(path), &d.algebra, 0)? {
            Any::Prime(c) => Any::Prime(complex_over(&ctx, c, &d)?),
            Any::Rational(c) => Any::Rational(complex_over(&ctx, c, &d)?),
        },
    )
}

/// Canonical text of a document: scalars in normal form, keys sorted.
/// Fails on anything that does not load.
pub fn normalize(name: &str, text: &str, base: &Path) -> Res<String> {
    let v = parse_value(name, text)?;
    let ctx = Ctx::new(name);
    match format_of(&ctx, &v)? {
        ALGEBRA_FORMAT => {
            let d: AlgebraDoc = ctx.decode(&v)?;
            let field = field_of(&ctx, &v)?;
            Ok(to_json(&normalize_algebra(&ctx, field, d)?))
        }
        QUIVER_FORMAT => {
            let d: QuiverDoc = ctx.decode(&v)?;
            Ok(match field_of(&ctx, &v)? {
                FieldDoc::Prime { p } => {
                    to_json(&emit_quiver(&quiver_spec_in(&prime(&ctx, p)?, &ctx, &d)?))
                }
                FieldDoc::Rational => to_json(&emit_quiver(&quiver_spec_in(&Rationals, &ctx, &d)?)),
            })
        }
        MODULE_FORMAT => {
            let d: ModuleDoc = ctx.decode(&v)?;
            let m = module_doc(&ctx, base, &v)?;
            Ok(with_field!(&m, c => to_json(&emit_module(&c.module, &d.algebra))))
        }
        other => Err(ctx.schema("format", format!("cannot normalize format \"{other}\""))),
    }
}

fn normalize_algebra(ctx: &Ctx, field: FieldDoc, mut d: AlgebraDoc) -> Res<AlgebraDoc> {
    fn canon<F: Field>(f: &F, ctx: &Ctx, v: &mut [Scalar]) -> Res<()> {
        for s in v.iter_mut() {
            let x = scalar(f, s)
                .ok_or_else(|| ctx.schema("", format!("not an element of {}", f.spec())))?;
            *s = emit_scalar(f, &x);
        }
        Ok(())
    }
    fn all<F: Field>(f: &F, ctx: &Ctx, d: &mut AlgebraDoc) -> Res<()> {
        canon(f, ctx, &mut d.unit)?;
        for row in &mut d.mult {
            for v in row {
                canon(f, ctx, v)?;
            }
        }
        for v in d.radical.iter_mut().flatten() {
            canon(f, ctx, v)?;
        }
        Ok(())
    }
    match field {
        FieldDoc::Prime { p } => all(&prime(ctx, p)?, ctx, &mut d)?,
        FieldDoc::Rational => all(&Rationals, ctx, &mut d)?,
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    const X2: &str = r#"{"format":"catres-algebra/1","field":{"type":"prime","p":5},"dim":2,"basis":["1","x"],
        "unit":[1,0],"mult":[[[1,0],[0,1]],[[0,1],[0,0]]]}"#;

    #[test]
    fn loads_truncated_polynomial() {
        let a = parse_algebra("x2", X2).unwrap();
        match a {
            Any::Prime(c) => {
                assert_eq!(c.algebra.dim(), 2);
                assert_eq!(c.algebra.radical_chain().unwrap().nilpotency_index(), 2);
            }
            Any::Rational(_) => panic!("wrong field"),
        }
    }

    #[test]
    fn wrong_arity_is_located() {
        let bad = X2.replace("[[0,1],[0,0]]]", "[[0,1]]]");
        let e = parse_algebra("bad", &bad).unwrap_err();
        assert_eq!(e.pointer(), Some("mult[1]"), "{e}");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let bad = X2.replace("\"dim\":2", "\"dim\":2,\"extra\":true");
        let e = parse_algebra("bad", &bad).unwrap_err();
        assert!(e.to_string().contains("extra"), "{e}");
    }

    #[test]
    fn wrong_version_is_rejected() {
        let bad = X2.replace("catres-algebra/1", "catres-algebra/9");
        assert_eq!(
            parse_algebra("bad", &bad).unwrap_err().pointer(),
            Some("format")
        );
    }

    #[test]
    fn invariant_violations_name_the_axiom() {
        let bad = X2.replace("\"unit\":[1,0]", "\"unit\":[0,1]");
        let e = parse_algebra("bad", &bad).unwrap_err();
        assert!(matches!(e, LoadError::Invariant { .. }), "{e}");
    }

    #[test]
    fn quiver_without_length_bound() {
        let q = r#"{"format":"catres-quiver/1","field":{"type":"rational"},"vertices":["1"],
            "arrows":[{"name":"x","from":"1","to":"1"}],"relations":[]}"#;
        let e = parse_algebra("q", q).unwrap_err();
        assert!(e.to_string().contains("length_bound"), "{e}");
    }

    #[test]
    fn emitted_algebra_reloads() {
        let a = parse_algebra("x2", X2).unwrap();
        let text = with_field!(&a, c => to_json(&emit_algebra(&c.algebra)));
        assert_eq!(text, normalize("x2", X2, Path::new(".")).unwrap());
        let b = parse_algebra("again", &text).unwrap();
        match (a, b) {
            (Any::Prime(a), Any::Prime(b)) => assert_eq!(a.algebra, b.algebra),
            _ => panic!("field changed"),
        }
    }
}
