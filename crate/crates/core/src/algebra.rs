//! Finite-dimensional associative unital algebras given by structure
//! constants: validation, radical chain, primitive idempotents, quotients,
//! corners and opposites.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{is_zero_vec, unit_vec, vec_add, vec_scale, vec_sub, Mat, Subspace};
use crate::poly;

/// Multiplication table: `mult[(i·d + j)·d + k]` is the `k`-th coordinate of
/// `bᵢ·bⱼ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Table<F: Field> {
    pub field: F,
    pub dim: usize,
    pub mult: Vec<F::Elem>,
    pub unit: Vec<F::Elem>,
}

impl<F: Field> Table<F> {
    pub fn product(&self, i: usize, j: usize) -> &[F::Elem] {
        let d = self.dim;
        &self.mult[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                f.axpy(&mut out, &f.mul(xi, yj), self.product(i, j));
            }
        }
        out
    }

    fn basis(&self, i: usize) -> Vec<F::Elem> {
        unit_vec(&self.field, self.dim, i)
    }

    /// Table of `A/W` for a two-sided ideal `W`, on the quotient coordinates.
    fn quotient(&self, w: &Subspace<F>) -> Table<F> {
        let comp = w.complement_positions();
        let q = comp.len();
        let mut mult = Vec::with_capacity(q * q * q);
        for &a in &comp {
            for &b in &comp {
                mult.extend(w.quotient_coords(self.product(a, b)));
            }
        }
        Table {
            field: self.field.clone(),
            dim: q,
            mult,
            unit: w.quotient_coords(&self.unit),
        }
    }

    fn span_products(&self, left: &[Vec<F::Elem>], right: &[Vec<F::Elem>]) -> Subspace<F> {
        let mut s = Subspace::zero(&self.field, self.dim);
        for x in left {
            for y in right {
                if s.is_full() {
                    return s;
                }
                s.insert(self.mul(x, y));
            }
        }
        s
    }

    /// Basis of `e·A·f`.
    fn peirce(&self, e: &[F::Elem], f: &[F::Elem]) -> Subspace<F> {
        let vecs = (0..self.dim).map(|i| self.mul(&self.mul(e, &self.basis(i)), f));
        Subspace::spanned_by(&self.field, self.dim, vecs)
    }

    fn is_idempotent(&self, e: &[F::Elem]) -> bool {
        self.mul(e, e) == e
    }
}

/// Where the radical of an algebra came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadicalSource {
    /// Span of positive-length paths of a path algebra.
    ArrowIdeal,
    /// Kernel of the trace form of the regular representation.
    TraceForm,
    /// User annotation, verified.
    Annotation,
    /// Supplied by a construction that knows its radical, verified.
    Structural,
    /// Inherited from a parent algebra (quotients, corners, opposites).
    Inherited,
}

/// The powers `J⁰ = A ⊇ J ⊇ J² ⊇ … ⊇ Jⁿ = 0` of the Jacobson radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalChain<F: Field> {
    powers: Vec<Subspace<F>>,
    source: RadicalSource,
}

impl<F: Field> RadicalChain<F> {
    pub(crate) fn from_radical(
        table: &Table<F>,
        j: Subspace<F>,
        source: RadicalSource,
    ) -> Result<Self> {
        let mut powers = vec![Subspace::full(&table.field, table.dim), j.clone()];
        while !powers.last().unwrap().is_zero() {
            let last = powers.last().unwrap();
            let next = table.span_products(last.basis(), j.basis());
            if next.dim() >= last.dim() {
                return Err(Error::InvalidRadical(format!(
                    "not nilpotent: J^{} has dimension {} again",
                    powers.len(),
                    next.dim()
                )));
            }
            powers.push(next);
        }
        Ok(Self { powers, source })
    }

    pub fn radical(&self) -> &Subspace<F> {
        &self.powers[1]
    }

    /// `Jⁱ`, with `J⁰ = A` and `Jⁱ = 0` for `i ≥ n`.
    pub fn power(&self, i: usize) -> &Subspace<F> {
        &self.powers[i.min(self.powers.len() - 1)]
    }

    /// Least `n ≥ 1` with `Jⁿ = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.powers.len() - 1
    }

    /// Dimensions of `J¹, …, Jⁿ`.
    pub fn dims(&self) -> Vec<usize> {
        self.powers[1..].iter().map(Subspace::dim).collect()
    }

    pub fn source(&self) -> RadicalSource {
        self.source
    }
}

/// A failed algebra axiom, located by basis labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Associativity { i: usize, j: usize, k: usize },
    LeftUnit { i: usize },
    RightUnit { i: usize },
}

#[derive(Clone, Debug)]
pub struct Algebra<F: Field> {
    table: Table<F>,
    labels: Vec<String>,
    radical: Result<RadicalChain<F>>,
    idempotents: Result<Vec<Vec<F::Elem>>>,
    classes: Vec<usize>,
    generators: Vec<usize>,
}

impl<F: Field> PartialEq for Algebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.labels == other.labels
    }
}
impl<F: Field> Eq for Algebra<F> {}

/// Quotient algebra together with the canonical surjection.
#[derive(Clone, Debug)]
pub struct Quotient<F: Field> {
    pub algebra: Algebra<F>,
    /// `dim A × dim A/I` matrix of the surjection on coordinates.
    pub projection: Mat<F>,
}

/// Corner algebra `eAe` with the embedding of its basis into `A`.
#[derive(Clone, Debug)]
pub struct Corner<F: Field> {
    pub algebra: Algebra<F>,
    /// Rows are the corner's basis vectors in `A`'s coordinates.
    pub embedding: Mat<F>,
    /// Set when `e = 0`.
    pub degenerate: bool,
}

fn check_table<F: Field>(
    field: &F,
    labels: &[String],
    unit: &[F::Elem],
    mult: &[Vec<Vec<F::Elem>>],
) -> Result<Table<F>> {
    let d = labels.len();
    if unit.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "unit has {} coordinates, expected {d}",
            unit.len()
        )));
    }
    if mult.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "mult has {} rows, expected {d}",
            mult.len()
        )));
    }
    let mut flat = Vec::with_capacity(d * d * d);
    for (i, row) in mult.iter().enumerate() {
        if row.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "mult[{i}] has {} entries, expected {d}",
                row.len()
            )));
        }
        for (j, v) in row.iter().enumerate() {
            if v.len() != d {
                return Err(Error::DimensionMismatch(format!(
                    "mult[{i}][{j}] has {} coordinates, expected {d}",
                    v.len()
                )));
            }
            flat.extend_from_slice(v);
        }
    }
    Ok(Table {
        field: field.clone(),
        dim: d,
        mult: flat,
        unit: unit.to_vec(),
    })
}

pub(crate) fn validate_table<F: Field>(t: &Table<F>) -> core::result::Result<(), Violation> {
    let d = t.dim;
    for i in 0..d {
        let bi = t.basis(i);
        if t.mul(&t.unit, &bi) != bi {
            return Err(Violation::LeftUnit { i });
        }
        if t.mul(&bi, &t.unit) != bi {
            return Err(Violation::RightUnit { i });
        }
    }
    for i in 0..d {
        for j in 0..d {
            let ij = t.product(i, j).to_vec();
            for k in 0..d {
                let lhs = t.mul(&ij, &t.basis(k));
                let rhs = t.mul(&t.basis(i), t.product(j, k));
                if lhs != rhs {
                    return Err(Violation::Associativity { i, j, k });
                }
            }
        }
    }
    Ok(())
}

fn is_two_sided_ideal<F: Field>(t: &Table<F>, w: &Subspace<F>) -> bool {
    w.basis().iter().all(|x| {
        (0..t.dim).all(|i| {
            let b = t.basis(i);
            w.contains(&t.mul(x, &b)) && w.contains(&t.mul(&b, x))
        })
    })
}

/// Kernel of `(a, b) ↦ tr(R_{ab})`; equals the radical in characteristic 0
/// and contains it in general.
fn trace_form_kernel<F: Field>(t: &Table<F>) -> Subspace<F> {
    let f = &t.field;
    let d = t.dim;
    let traces: Vec<F::Elem> = (0..d)
        .map(|k| (0..d).fold(f.zero(), |acc, i| f.add(&acc, &t.product(i, k)[i])))
        .collect();
    let gram = Mat::from_fn(f, d, d, |i, j| {
        crate::linalg::dot(f, t.product(i, j), &traces)
    });
    gram.row_space()
        .orthogonal_kernel()
        .into_iter()
        .fold(Subspace::zero(f, d), |mut s, v| {
            s.insert(v);
            s
        })
}

fn decomposition_rng(dim: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_1de0_0000_0000 ^ dim as u64)
}

/// `p(b)` inside the corner with identity `e`.
fn eval_in<F: Field>(t: &Table<F>, p: &[F::Elem], b: &[F::Elem], e: &[F::Elem]) -> Vec<F::Elem> {
    let f = &t.field;
    let mut acc = vec![f.zero(); t.dim];
    for c in p.iter().rev() {
        acc = vec_add(f, &t.mul(&acc, b), &vec_scale(f, c, e));
    }
    acc
}

/// Monic minimal polynomial of `b` in the corner with identity `e`.
fn minimal_polynomial<F: Field>(t: &Table<F>, b: &[F::Elem], e: &[F::Elem]) -> Vec<F::Elem> {
    let f = &t.field;
    let mut powers: Vec<Vec<F::Elem>> = vec![e.to_vec()];
    loop {
        let next = t.mul(powers.last().unwrap(), b);
        let m = Mat::from_rows(f, t.dim, &powers);
        if let Some(c) = m
            .solve_left(&Mat::row_vector(f, &next))
            .expect("shapes agree")
        {
            let mut poly: Vec<F::Elem> = c.row(0).iter().map(|x| f.neg(x)).collect();
            poly.push(f.one());
            return poly;
        }
        powers.push(next);
    }
}

/// An idempotent `f` of the corner `eAe` with `0 ≠ f ≠ e`, for `A`
/// semisimple and `dim eAe > 1`.
fn proper_idempotent<F: Field>(
    t: &Table<F>,
    e: &[F::Elem],
    corner: &Subspace<F>,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<F::Elem>> {
    let f = &t.field;
    let basis = corner.basis();
    let mut candidates: Vec<Vec<F::Elem>> = basis.to_vec();
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            candidates.push(vec_add(f, &basis[a], &basis[b]));
        }
    }
    const RANDOM_TRIALS: usize = 48;
    let mut commutative_field_witness = false;
    for trial in 0..candidates.len() + RANDOM_TRIALS {
        let b = if trial < candidates.len() {
            candidates[trial].clone()
        } else {
            let coeffs: Vec<F::Elem> = (0..basis.len()).map(|_| f.sample(rng)).collect();
            corner.from_coords(&coeffs)
        };
        let m = minimal_polynomial(t, &b, e);
        let deg = m.len() - 1;
        if deg <= 1 {
            continue;
        }
        let Some(g) = f.find_factor(&m, rng) else {
            if deg == corner.dim() {
                commutative_field_witness = true;
            }
            continue;
        };
        let (h, r) = poly::divrem(f, &m, &g);
        debug_assert!(r.is_empty());
        let (d, s, _) = poly::xgcd(f, &g, &h);
        if d.len() == 1 {
            // s·g ≡ 0 mod g and ≡ 1 mod h.
            return Ok(eval_in(t, &poly::mul(f, &s, &g), &b, e));
        }
        // g(b) is a nonzero zero divisor; in a semisimple algebra a·c·a = a is solvable.
        let a = eval_in(t, &g, &b, e);
        let images: Vec<Vec<F::Elem>> = basis.iter().map(|w| t.mul(&t.mul(&a, w), &a)).collect();
        let sys = Mat::from_rows(f, t.dim, &images);
        return match sys
            .solve_left(&Mat::row_vector(f, &a))
            .expect("shapes agree")
        {
            Some(c) => Ok(t.mul(&a, &corner.from_coords(c.row(0)))),
            None => Err(Error::InvalidRadical(
                "quotient by the radical is not semisimple".into(),
            )),
        };
    }
    let commutative = basis
        .iter()
        .all(|x| basis.iter().all(|y| t.mul(x, y) == t.mul(y, x)));
    if commutative && commutative_field_witness {
        Err(Error::Decomposition(format!(
            "a simple component is a field extension of degree {} over the base field",
            corner.dim()
        )))
    } else {
        Err(Error::Decomposition(format!(
            "no splitting element found in a corner of dimension {}; the component may be a non-split division algebra",
            corner.dim()
        )))
    }
}

/// Complete set of primitive orthogonal idempotents of a semisimple table.
fn split_semisimple<F: Field>(t: &Table<F>) -> Result<Vec<Vec<F::Elem>>> {
    let f = &t.field;
    let mut rng = decomposition_rng(t.dim);
    let mut queue = vec![t.unit.clone()];
    let mut out = Vec::new();
    while let Some(e) = queue.pop() {
        if is_zero_vec(f, &e) {
            continue;
        }
        let corner = t.peirce(&e, &e);
        if corner.dim() <= 1 {
            out.push(e);
            continue;
        }
        let p = proper_idempotent(t, &e, &corner, &mut rng)?;
        debug_assert!(t.is_idempotent(&p));
        queue.push(vec_sub(f, &e, &p));
        queue.push(p);
    }
    out.reverse();
    Ok(out)
}

/// Semisimplicity of a table given primitive orthogonal idempotents summing
/// to one: every corner is one-dimensional and every pairing
/// `eₖAeₗ × eₗAeₖ → eₖAeₖ` is left nondegenerate.
fn verify_split_semisimple<F: Field>(t: &Table<F>, idem: &[Vec<F::Elem>]) -> Result<()> {
    let f = &t.field;
    for (k, e) in idem.iter().enumerate() {
        let c = t.peirce(e, e).dim();
        if c != 1 {
            return Err(Error::InvalidRadical(format!(
                "corner {k} of the semisimple quotient has dimension {c}"
            )));
        }
    }
    for (k, ek) in idem.iter().enumerate() {
        for (l, el) in idem.iter().enumerate() {
            let xs = t.peirce(ek, el);
            if xs.is_zero() {
                continue;
            }
            let ys = t.peirce(el, ek);
            let rows: Vec<Vec<F::Elem>> = xs
                .basis()
                .iter()
                .map(|x| ys.basis().iter().flat_map(|y| t.mul(x, y)).collect())
                .collect();
            let width = ys.dim() * t.dim;
            if Mat::from_rows(f, width, &rows).rank() != xs.dim() {
                return Err(Error::InvalidRadical(format!(
                    "quotient by the radical is not semisimple (degenerate pairing between idempotents {k} and {l})"
                )));
            }
        }
    }
    Ok(())
}

/// `e ← 3e² − 2e³` until idempotent.
fn refine_idempotent<F: Field>(t: &Table<F>, x: Vec<F::Elem>) -> Vec<F::Elem> {
    let f = &t.field;
    let (three, two) = (f.from_i64(3), f.from_i64(2));
    let mut e = x;
    for _ in 0..64 {
        let e2 = t.mul(&e, &e);
        if e2 == e {
            return e;
        }
        let e3 = t.mul(&e2, &e);
        e = vec_sub(f, &vec_scale(f, &three, &e2), &vec_scale(f, &two, &e3));
    }
    panic!("idempotent refinement did not converge");
}

/// Lifts primitive idempotents of `A/J` to orthogonal idempotents of `A`.
fn lift_idempotents<F: Field>(
    t: &Table<F>,
    j: &Subspace<F>,
    quotient_idem: &[Vec<F::Elem>],
) -> Vec<Vec<F::Elem>> {
    let f = &t.field;
    let section = j.section_matrix();
    let mut remaining = t.unit.clone();
    let mut out = Vec::with_capacity(quotient_idem.len());
    for (k, q) in quotient_idem.iter().enumerate() {
        if k + 1 == quotient_idem.len() {
            out.push(remaining.clone());
            break;
        }
        let x = section.apply(q);
        let e = refine_idempotent(t, t.mul(&t.mul(&remaining, &x), &remaining));
        remaining = vec_sub(f, &remaining, &e);
        out.push(e);
    }
    out
}

fn idempotent_classes<F: Field>(
    t: &Table<F>,
    j: &Subspace<F>,
    idem: &[Vec<F::Elem>],
) -> Vec<usize> {
    let mut classes: Vec<usize> = Vec::with_capacity(idem.len());
    let mut next = 0;
    for k in 0..idem.len() {
        let linked = (0..k).find(|&l| {
            let p = t.peirce(&idem[k], &idem[l]);
            p.basis().iter().any(|v| !j.contains(v))
        });
        match linked {
            Some(l) => classes.push(classes[l]),
            None => {
                classes.push(next);
                next += 1;
            }
        }
    }
    classes
}

impl<F: Field> Algebra<F> {
    /// Builds and validates an algebra from its multiplication table
    /// (`mult[i][j]` = coordinates of `bᵢ·bⱼ`). The radical is computed from
    /// the trace form and accepted when it is nilpotent.
    pub fn from_table(
        field: &F,
        labels: Vec<String>,
        unit: Vec<F::Elem>,
        mult: &[Vec<Vec<F::Elem>>],
    ) -> Result<Self> {
        let table = check_table(field, &labels, &unit, mult)?;
        Self::check_axioms(&table, &labels)?;
        let radical =
            RadicalChain::from_radical(&table, trace_form_kernel(&table), RadicalSource::TraceForm)
                .map_err(|e| match e {
                    Error::InvalidRadical(msg) => {
                        Error::RadicalUnavailable(format!("trace-form kernel rejected ({msg})"))
                    }
                    other => other,
                });
        Ok(Self::assemble(table, labels, radical, None))
    }

    /// As [`Algebra::from_table`], with a user-supplied radical basis that is
    /// verified to be a nilpotent two-sided ideal with split semisimple
    /// quotient.
    pub fn from_table_with_radical(
        field: &F,
        labels: Vec<String>,
        unit: Vec<F::Elem>,
        mult: &[Vec<Vec<F::Elem>>],
        radical: &[Vec<F::Elem>],
    ) -> Result<Self> {
        let table = check_table(field, &labels, &unit, mult)?;
        Self::check_axioms(&table, &labels)?;
        for (i, v) in radical.iter().enumerate() {
            if v.len() != table.dim {
                return Err(Error::DimensionMismatch(format!(
                    "radical[{i}] has {} coordinates, expected {}",
                    v.len(),
                    table.dim
                )));
            }
        }
        let j = Subspace::spanned_by(field, table.dim, radical.iter().cloned());
        let alg = Self::with_verified_radical(table, labels, j, None, RadicalSource::Annotation)?;
        Ok(alg)
    }

    fn check_axioms(table: &Table<F>, labels: &[String]) -> Result<()> {
        validate_table(table).map_err(|v| Error::AlgebraViolation(describe_violation(&v, labels)))
    }

    /// Accepts `j` as the radical after checking it is a nilpotent two-sided
    /// ideal whose quotient is split semisimple; optional idempotents are
    /// checked to be primitive, orthogonal and complete.
    pub(crate) fn with_verified_radical(
        table: Table<F>,
        labels: Vec<String>,
        j: Subspace<F>,
        idempotents: Option<Vec<Vec<F::Elem>>>,
        source: RadicalSource,
    ) -> Result<Self> {
        if !is_two_sided_ideal(&table, &j) {
            return Err(Error::InvalidRadical("not a two-sided ideal".into()));
        }
        let chain = RadicalChain::from_radical(&table, j.clone(), source)?;
        let quotient = table.quotient(&j);
        let idem = match idempotents {
            Some(idem) => {
                check_idempotent_system(&table, &idem)?;
                idem
            }
            None => {
                let q_idem = split_semisimple(&quotient).map_err(|e| match e {
                    Error::Decomposition(m) => Error::InvalidRadical(m),
                    other => other,
                })?;
                lift_idempotents(&table, &j, &q_idem)
            }
        };
        let q_idem: Vec<Vec<F::Elem>> = idem.iter().map(|e| j.quotient_coords(e)).collect();
        verify_split_semisimple(&quotient, &q_idem)?;
        Ok(Self::assemble(table, labels, Ok(chain), Some(idem)))
    }

    pub(crate) fn assemble(
        table: Table<F>,
        labels: Vec<String>,
        radical: Result<RadicalChain<F>>,
        idempotents: Option<Vec<Vec<F::Elem>>>,
    ) -> Self {
        let idempotents = match (&radical, idempotents) {
            (_, Some(idem)) => Ok(idem),
            (Ok(chain), None) => {
                let j = chain.radical();
                split_semisimple(&table.quotient(j)).map(|q| lift_idempotents(&table, j, &q))
            }
            (Err(e), None) => Err(e.clone()),
        };
        let classes = match (&radical, &idempotents) {
            (Ok(chain), Ok(idem)) => idempotent_classes(&table, chain.radical(), idem),
            _ => Vec::new(),
        };
        let generators = match &radical {
            Ok(chain) => {
                let mut s = chain.power(2).clone();
                (0..table.dim)
                    .filter(|&i| s.insert(table.basis(i)))
                    .collect()
            }
            Err(_) => (0..table.dim).collect(),
        };
        Self {
            table,
            labels,
            radical,
            idempotents,
            classes,
            generators,
        }
    }

    pub fn field(&self) -> &F {
        &self.table.field
    }

    pub fn dim(&self) -> usize {
        self.table.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[F::Elem] {
        &self.table.unit
    }

    /// Coordinates of `bᵢ·bⱼ`.
    pub fn product(&self, i: usize, j: usize) -> &[F::Elem] {
        self.table.product(i, j)
    }

    /// The multiplication table in nested form.
    pub fn mult_table(&self) -> Vec<Vec<Vec<F::Elem>>> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| self.product(i, j).to_vec()).collect())
            .collect()
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        self.table.mul(x, y)
    }

    pub fn basis_element(&self, i: usize) -> Vec<F::Elem> {
        self.table.basis(i)
    }

    pub fn zero_element(&self) -> Vec<F::Elem> {
        vec![self.field().zero(); self.dim()]
    }

    pub fn is_idempotent(&self, e: &[F::Elem]) -> bool {
        self.table.is_idempotent(e)
    }

    /// Matrix of `x ↦ a·x` on coordinates (row `i` is `a·bᵢ`).
    pub fn left_mult_matrix(&self, a: &[F::Elem]) -> Mat<F> {
        let rows: Vec<Vec<F::Elem>> = (0..self.dim())
            .map(|i| self.mul(a, &self.basis_element(i)))
            .collect();
        Mat::from_rows(self.field(), self.dim(), &rows)
    }

    /// Matrix of `x ↦ x·a` on coordinates (row `i` is `bᵢ·a`).
    pub fn right_mult_matrix(&self, a: &[F::Elem]) -> Mat<F> {
        let rows: Vec<Vec<F::Elem>> = (0..self.dim())
            .map(|i| self.mul(&self.basis_element(i), a))
            .collect();
        Mat::from_rows(self.field(), self.dim(), &rows)
    }

    /// Checks associativity and the unit law, locating the first failure.
    pub fn validate(&self) -> core::result::Result<(), Violation> {
        validate_table(&self.table)
    }

    pub fn describe(&self, v: &Violation) -> String {
        describe_violation(v, &self.labels)
    }

    pub fn radical_chain(&self) -> Result<&RadicalChain<F>> {
        self.radical.as_ref().map_err(Clone::clone)
    }

    /// Complete list of primitive orthogonal idempotents summing to one.
    pub fn primitive_idempotents(&self) -> Result<&[Vec<F::Elem>]> {
        self.idempotents.as_deref().map_err(Clone::clone)
    }

    /// For each primitive idempotent, the index of its isomorphism class of
    /// indecomposable projectives (`eᵢ ~ eⱼ` iff `eᵢAeⱼ ⊄ J`).
    pub fn idempotent_classes(&self) -> Result<&[usize]> {
        self.primitive_idempotents()?;
        Ok(&self.classes)
    }

    /// Index of the first primitive idempotent in each class.
    pub fn class_representatives(&self) -> Result<Vec<usize>> {
        let classes = self.idempotent_classes()?;
        let count = classes.iter().max().map_or(0, |m| m + 1);
        Ok((0..count)
            .map(|c| classes.iter().position(|&x| x == c).unwrap())
            .collect())
    }

    /// Basis indices spanning `A` modulo `J²`; they generate `A` as an algebra.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_semisimple(&self) -> Result<bool> {
        Ok(self.radical_chain()?.radical().is_zero())
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Same basis, `mult'[i][j] = mult[j][i]`.
    pub fn opposite(&self) -> Self {
        let d = self.dim();
        let mut mult = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                mult.extend_from_slice(self.product(j, i));
            }
        }
        let table = Table {
            field: self.field().clone(),
            dim: d,
            mult,
            unit: self.unit().to_vec(),
        };
        let radical = self
            .radical
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|c| RadicalChain::from_radical(&table, c.radical().clone(), c.source));
        let idem = self.idempotents.as_ref().ok().cloned();
        Self::assemble(table, self.labels.clone(), radical, idem)
    }

    /// `A/Jⁱ` for `1 ≤ i ≤ n`, with the canonical surjection.
    pub fn quotient_by_power(&self, i: usize) -> Result<Quotient<F>> {
        let chain = self.radical_chain()?;
        let n = chain.nilpotency_index();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        let w = chain.power(i);
        self.quotient_by_ideal(w)
    }

    /// `A/W` for a two-sided ideal `W` contained in the radical.
    pub fn quotient_by_ideal(&self, w: &Subspace<F>) -> Result<Quotient<F>> {
        let chain = self.radical_chain()?;
        let table = self.table.quotient(w);
        let comp = w.complement_positions();
        let labels = comp.iter().map(|&c| self.labels[c].clone()).collect();
        let image = |v: &Vec<F::Elem>| w.quotient_coords(v);
        let j = Subspace::spanned_by(
            self.field(),
            table.dim,
            chain.radical().basis().iter().map(image),
        );
        let radical = RadicalChain::from_radical(&table, j, RadicalSource::Inherited);
        let idem = self
            .idempotents
            .as_ref()
            .ok()
            .map(|v| v.iter().map(image).collect());
        Ok(Quotient {
            algebra: Self::assemble(table, labels, radical, idem),
            projection: w.quotient_matrix(),
        })
    }

    /// The corner algebra `eAe` with unit `e`.
    pub fn corner(&self, e: &[F::Elem]) -> Result<Corner<F>> {
        if e.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "idempotent has {} coordinates, expected {}",
                e.len(),
                self.dim()
            )));
        }
        if !self.is_idempotent(e) {
            return Err(Error::NotIdempotent);
        }
        let f = self.field();
        let sub = self.table.peirce(e, e);
        let c = sub.dim();
        let mut mult = Vec::with_capacity(c * c * c);
        for x in sub.basis() {
            for y in sub.basis() {
                mult.extend(
                    sub.coords(&self.mul(x, y))
                        .expect("eAe is closed under products"),
                );
            }
        }
        let table = Table {
            field: f.clone(),
            dim: c,
            mult,
            unit: sub.coords(e).expect("e lies in eAe"),
        };
        let labels = sub
            .basis()
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let nz: Vec<usize> = (0..v.len()).filter(|&i| !f.is_zero(&v[i])).collect();
                if nz.len() == 1 && f.is_one(&v[nz[0]]) {
                    self.labels[nz[0]].clone()
                } else {
                    format!("c{k}")
                }
            })
            .collect();
        let radical = self.radical_chain().and_then(|chain| {
            let vecs = chain.radical().basis().iter().map(|j| {
                let eje = self.mul(&self.mul(e, j), e);
                sub.coords(&eje).expect("eJe lies in eAe")
            });
            let j = Subspace::spanned_by(f, c, vecs);
            RadicalChain::from_radical(&table, j, RadicalSource::Inherited)
        });
        Ok(Corner {
            algebra: Self::assemble(table, labels, radical, None),
            embedding: sub.basis_matrix(),
            degenerate: c == 0,
        })
    }
}

fn check_idempotent_system<F: Field>(t: &Table<F>, idem: &[Vec<F::Elem>]) -> Result<()> {
    let f = &t.field;
    let mut sum = vec![f.zero(); t.dim];
    for (k, e) in idem.iter().enumerate() {
        for (l, g) in idem.iter().enumerate() {
            let p = t.mul(e, g);
            let ok = if k == l { p == *e } else { is_zero_vec(f, &p) };
            if !ok {
                return Err(Error::InvalidRadical(format!(
                    "idempotents {k} and {l} are not orthogonal idempotents"
                )));
            }
        }
        sum = vec_add(f, &sum, e);
    }
    if sum != t.unit {
        return Err(Error::InvalidRadical(
            "idempotents do not sum to the unit".into(),
        ));
    }
    Ok(())
}

pub(crate) fn describe_violation(v: &Violation, labels: &[String]) -> String {
    match v {
        Violation::Associativity { i, j, k } => {
            format!(
                "associativity fails at ({}, {}, {})",
                labels[*i], labels[*j], labels[*k]
            )
        }
        Violation::LeftUnit { i } => format!("unit·{} ≠ {}", labels[*i], labels[*i]),
        Violation::RightUnit { i } => format!("{}·unit ≠ {}", labels[*i], labels[*i]),
    }
}

/// Labels `b0, b1, …`.
pub fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("b{i}")).collect()
}

/// The product algebra `k × … × k` with `n` factors.
pub fn split_semisimple_algebra<F: Field>(field: &F, n: usize) -> Algebra<F> {
    let mut mult = vec![vec![vec![field.zero(); n]; n]; n];
    for (i, row) in mult.iter_mut().enumerate() {
        row[i][i] = field.one();
    }
    let labels = (1..=n).map(|i| format!("e{i}")).collect();
    Algebra::from_table(field, labels, vec![field.one(); n], &mult).expect("k^n is a valid algebra")
}

/// `k[x]/(xⁿ)` on the basis `1, x, …, x^{n-1}`.
pub fn truncated_polynomial<F: Field>(field: &F, n: usize) -> Algebra<F> {
    assert!(n >= 1);
    let mut mult = vec![vec![vec![field.zero(); n]; n]; n];
    for (i, row) in mult.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            if i + j < n {
                v[i + j] = field.one();
            }
        }
    }
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    let radical: Vec<Vec<F::Elem>> = (1..n).map(|i| unit_vec(field, n, i)).collect();
    Algebra::from_table_with_radical(field, labels, unit_vec(field, n, 0), &mult, &radical)
        .expect("k[x]/(x^n) is valid")
}

/// Upper-triangular `2×2` matrices on the basis `E11, E12, E22`.
pub fn upper_triangular_2<F: Field>(field: &F) -> Algebra<F> {
    let z = || vec![field.zero(); 3];
    let e = |i: usize| unit_vec(field, 3, i);
    // E11·E11 = E11, E11·E12 = E12, E12·E22 = E12, E22·E22 = E22
    let mult = vec![
        vec![e(0), e(1), z()],
        vec![z(), z(), e(1)],
        vec![z(), z(), e(2)],
    ];
    let labels = ["E11", "E12", "E22"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let unit = vec![field.one(), field.zero(), field.one()];
    let radical = vec![e(1)];
    Algebra::from_table_with_radical(field, labels, unit, &mult, &radical).expect("T2 is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn validate_examples() {
        let f = f5();
        assert!(truncated_polynomial(&f, 2).validate().is_ok());
        assert!(truncated_polynomial(&f, 1).validate().is_ok());
        // x·x = 1 with unit still 1 is fine; break the unit law instead.
        let mult = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]];
        let bad = Algebra::from_table(&f, default_labels(2), vec![1, 0], &mult);
        assert!(bad.is_ok()); // x² = 1 + x is a valid commutative algebra
        let mult = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![1, 0], vec![1, 0]]];
        let err =
            Algebra::from_table(&f, vec!["1".into(), "x".into()], vec![1, 0], &mult).unwrap_err();
        assert!(
            matches!(err, Error::AlgebraViolation(ref m) if m.contains('x')),
            "{err}"
        );
    }

    #[test]
    fn radical_chain_examples() {
        let f = f5();
        let a = truncated_polynomial(&f, 2);
        let chain = a.radical_chain().unwrap();
        assert_eq!(chain.dims(), [1, 0]);
        assert_eq!(chain.nilpotency_index(), 2);
        let kk = split_semisimple_algebra(&f, 2);
        assert_eq!(kk.radical_chain().unwrap().nilpotency_index(), 1);
        let a3 = truncated_polynomial(&f, 3);
        assert_eq!(a3.radical_chain().unwrap().dims(), [2, 1, 0]);
        // trace form over F_5 and Q finds the same radical
        let table = a3.mult_table();
        let auto =
            Algebra::from_table(&f, a3.labels().to_vec(), a3.unit().to_vec(), &table).unwrap();
        assert_eq!(auto.radical_chain().unwrap().dims(), [2, 1, 0]);
        assert_eq!(
            auto.radical_chain().unwrap().source(),
            RadicalSource::TraceForm
        );
        let q = truncated_polynomial(&Rationals, 3);
        let auto = Algebra::from_table(
            &Rationals,
            q.labels().to_vec(),
            q.unit().to_vec(),
            &q.mult_table(),
        )
        .unwrap();
        assert_eq!(auto.radical_chain().unwrap().dims(), [2, 1, 0]);
    }

    #[test]
    fn trace_form_fails_in_small_characteristic() {
        let f2 = PrimeField::new(2).unwrap();
        let a = truncated_polynomial(&f2, 2);
        let auto =
            Algebra::from_table(&f2, a.labels().to_vec(), a.unit().to_vec(), &a.mult_table())
                .unwrap();
        assert!(matches!(
            auto.radical_chain(),
            Err(Error::RadicalUnavailable(_))
        ));
        // a wrong annotation is rejected
        let bad = Algebra::from_table_with_radical(
            &f2,
            a.labels().to_vec(),
            a.unit().to_vec(),
            &a.mult_table(),
            &[],
        );
        assert!(matches!(bad, Err(Error::InvalidRadical(_))), "{bad:?}");
    }

    #[test]
    fn quotients() {
        let f = f5();
        let a = truncated_polynomial(&f, 3);
        assert_eq!(a.quotient_by_power(1).unwrap().algebra.dim(), 1);
        let q3 = a.quotient_by_power(3).unwrap();
        assert_eq!(q3.algebra.mult_table(), a.mult_table());
        let q2 = a.quotient_by_power(2).unwrap();
        assert_eq!(
            q2.algebra.mult_table(),
            truncated_polynomial(&f, 2).mult_table()
        );
        assert_eq!(
            a.quotient_by_power(4).unwrap_err(),
            Error::IndexOutOfRange { index: 4, max: 3 }
        );
        assert!(a.quotient_by_power(0).is_err());
    }

    #[test]
    fn corners() {
        let f = f5();
        let a = truncated_polynomial(&f, 2);
        let c = a.corner(a.unit()).unwrap();
        assert_eq!(c.algebra.mult_table(), a.mult_table());
        let z = a.corner(&a.zero_element()).unwrap();
        assert!(z.degenerate);
        assert_eq!(z.algebra.dim(), 0);
        assert_eq!(a.corner(&[0, 1]).unwrap_err(), Error::NotIdempotent);
    }

    #[test]
    fn idempotents() {
        let f = f5();
        let kk = split_semisimple_algebra(&f, 2);
        let mut idem = kk.primitive_idempotents().unwrap().to_vec();
        idem.sort();
        assert_eq!(idem, [vec![0, 1], vec![1, 0]]);
        assert_eq!(
            truncated_polynomial(&f, 2).primitive_idempotents().unwrap(),
            [vec![1, 0]]
        );
        let t2 = upper_triangular_2(&f);
        let mut idem = t2.primitive_idempotents().unwrap().to_vec();
        idem.sort();
        assert_eq!(idem.len(), 2);
        for e in &idem {
            assert!(t2.is_idempotent(e));
        }
        assert_eq!(t2.class_representatives().unwrap().len(), 2);
    }

    #[test]
    fn matrix_algebra_splits() {
        // M_2(F_3) on matrix units E11, E12, E21, E22
        let f = PrimeField::new(3).unwrap();
        let idx = |i: usize, j: usize| 2 * i + j;
        let mut mult = vec![vec![vec![0u64; 4]; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    mult[idx(i, j)][idx(j, k)][idx(i, k)] = 1;
                }
            }
        }
        let a = Algebra::from_table(&f, default_labels(4), vec![1, 0, 0, 1], &mult).unwrap();
        assert!(a.is_semisimple().unwrap());
        let idem = a.primitive_idempotents().unwrap();
        assert_eq!(idem.len(), 2);
        assert_eq!(a.class_representatives().unwrap().len(), 1);
    }

    #[test]
    fn non_split_field_is_reported() {
        // F_4 = F_2[x]/(x^2+x+1) as an F_2-algebra
        let f = PrimeField::new(2).unwrap();
        let mult = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]];
        let a = Algebra::from_table_with_radical(&f, default_labels(2), vec![1, 0], &mult, &[]);
        assert!(
            matches!(a, Err(Error::InvalidRadical(ref m)) if m.contains("extension")),
            "{a:?}"
        );
    }

    #[test]
    fn opposite_is_involution() {
        let f = f5();
        let t2 = upper_triangular_2(&f);
        let op = t2.opposite();
        assert!(op.validate().is_ok());
        assert_ne!(op.mult_table(), t2.mult_table());
        assert_eq!(op.opposite().mult_table(), t2.mult_table());
        let a = truncated_polynomial(&f, 2);
        assert_eq!(a.opposite().mult_table(), a.mult_table());
    }
}
