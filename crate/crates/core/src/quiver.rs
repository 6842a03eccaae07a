//! Bound quiver algebras `kQ/I` with a length bound.
//!
//! A path `[a, b]` means "`a` first, then `b`", so `a: u → v` and `b: v → w`
//! compose to a path `u → w`. Multiplication of paths is concatenation, which
//! makes `e_u·kQ` the paths starting at `u` and turns the path algebra into a
//! right-module-friendly algebra: `e_u kQ` is the indecomposable projective
//! at `u`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{
    describe_violation, validate_table, Algebra, RadicalChain, RadicalSource, Table,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{unit_vec, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<E> {
    /// `(coefficient, path of arrow names)`.
    pub terms: Vec<(E, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverSpec<F: Field> {
    pub field: F,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation<F::Elem>>,
    /// Every path of length at least this bound lies in the ideal.
    pub length_bound: Option<usize>,
}

/// A path: a vertex (length 0) or a nonempty composable arrow sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Path {
    Vertex(usize),
    Arrows(Vec<usize>),
}

impl Path {
    fn len(&self) -> usize {
        match self {
            Path::Vertex(_) => 0,
            Path::Arrows(a) => a.len(),
        }
    }
}

struct Resolved {
    source: Vec<usize>,
    target: Vec<usize>,
}

impl Resolved {
    fn ends(&self, p: &Path) -> (usize, usize) {
        match p {
            Path::Vertex(v) => (*v, *v),
            Path::Arrows(a) => (self.source[a[0]], self.target[*a.last().unwrap()]),
        }
    }

    fn concat(&self, p: &Path, q: &Path) -> Option<Path> {
        if self.ends(p).1 != self.ends(q).0 {
            return None;
        }
        Some(match (p, q) {
            (Path::Vertex(_), q) => q.clone(),
            (p, Path::Vertex(_)) => p.clone(),
            (Path::Arrows(a), Path::Arrows(b)) => {
                let mut c = a.clone();
                c.extend_from_slice(b);
                Path::Arrows(c)
            }
        })
    }
}

fn path_label(vertices: &[String], arrows: &[Arrow], p: &Path) -> String {
    match p {
        Path::Vertex(v) => format!("e_{}", vertices[*v]),
        Path::Arrows(a) => a
            .iter()
            .map(|&i| arrows[i].name.as_str())
            .collect::<Vec<_>>()
            .join(""),
    }
}

/// Builds `kQ/I` on a basis of residue paths of length below the bound.
pub fn from_quiver<F: Field>(spec: &QuiverSpec<F>) -> Result<Algebra<F>> {
    let f = &spec.field;
    let bound = spec
        .length_bound
        .ok_or_else(|| Error::Quiver("missing field `length_bound`".into()))?;
    if bound < 1 {
        return Err(Error::Quiver("length_bound must be at least 1".into()));
    }
    let mut vindex = BTreeMap::new();
    for (i, v) in spec.vertices.iter().enumerate() {
        if vindex.insert(v.as_str(), i).is_some() {
            return Err(Error::Quiver(format!("duplicate vertex `{v}`")));
        }
    }
    let mut aindex = BTreeMap::new();
    let mut source = Vec::new();
    let mut target = Vec::new();
    for (i, a) in spec.arrows.iter().enumerate() {
        if aindex.insert(a.name.as_str(), i).is_some() {
            return Err(Error::Quiver(format!("duplicate arrow `{}`", a.name)));
        }
        let s = *vindex.get(a.from.as_str()).ok_or_else(|| {
            Error::Quiver(format!(
                "arrow `{}` starts at unknown vertex `{}`",
                a.name, a.from
            ))
        })?;
        let t = *vindex.get(a.to.as_str()).ok_or_else(|| {
            Error::Quiver(format!(
                "arrow `{}` ends at unknown vertex `{}`",
                a.name, a.to
            ))
        })?;
        source.push(s);
        target.push(t);
    }
    let q = Resolved { source, target };

    // All paths of length < bound, ordered by (length, arrow sequence).
    let mut paths: Vec<Path> = (0..spec.vertices.len()).map(Path::Vertex).collect();
    let mut frontier: Vec<Vec<usize>> = (0..spec.arrows.len()).map(|a| vec![a]).collect();
    for _ in 1..bound {
        if frontier.is_empty() {
            break;
        }
        paths.extend(frontier.iter().cloned().map(Path::Arrows));
        let mut next = Vec::new();
        for p in &frontier {
            let end = q.target[*p.last().unwrap()];
            for a in 0..spec.arrows.len() {
                if q.source[a] == end {
                    let mut np = p.clone();
                    np.push(a);
                    next.push(np);
                }
            }
        }
        frontier = next;
    }
    let index: BTreeMap<Path, usize> = paths
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let np = paths.len();
    // Columns in descending path order, so RREF pivots land on the largest
    // paths and the residue basis consists of the smallest ones.
    let col = |i: usize| np - 1 - i;

    let mut rels: Vec<Vec<(F::Elem, Path)>> = Vec::new();
    for (ri, r) in spec.relations.iter().enumerate() {
        let mut terms = Vec::new();
        let mut ends = None;
        for (coeff, names) in &r.terms {
            if names.is_empty() {
                return Err(Error::Quiver(format!("relation {ri} has an empty path")));
            }
            let mut arrows = Vec::with_capacity(names.len());
            for n in names {
                arrows.push(*aindex.get(n.as_str()).ok_or_else(|| {
                    Error::Quiver(format!("relation {ri} uses unknown arrow `{n}`"))
                })?);
            }
            for w in arrows.windows(2) {
                if q.target[w[0]] != q.source[w[1]] {
                    return Err(Error::Quiver(format!(
                        "relation {ri}: path `{}` is not composable",
                        names.join("")
                    )));
                }
            }
            if arrows.len() < 2 {
                return Err(Error::Quiver(format!(
                    "relation {ri}: term `{}` has length {}; admissible relations lie in the square of the arrow ideal",
                    names.join(""),
                    arrows.len()
                )));
            }
            let p = Path::Arrows(arrows);
            let e = q.ends(&p);
            if *ends.get_or_insert(e) != e {
                return Err(Error::Quiver(format!(
                    "relation {ri} is not a combination of parallel paths"
                )));
            }
            terms.push((coeff.clone(), p));
        }
        rels.push(terms);
    }

    // Truncated two-sided ideal: p·r·q with all terms of length < bound kept.
    let mut ideal = Subspace::zero(f, np);
    for r in &rels {
        for left in &paths {
            for right in &paths {
                let mut v = vec![f.zero(); np];
                let mut any = false;
                for (c, t) in r {
                    let Some(lt) = q.concat(left, t) else {
                        continue;
                    };
                    let Some(full) = q.concat(&lt, right) else {
                        continue;
                    };
                    if full.len() < bound {
                        let i = col(index[&full]);
                        v[i] = f.add(&v[i], c);
                        any = true;
                    }
                }
                if any {
                    ideal.insert(v);
                }
            }
        }
    }

    let basis_cols: Vec<usize> = ideal.complement_positions();
    // Residue basis in ascending path order.
    let basis: Vec<usize> = basis_cols.iter().rev().map(|&c| np - 1 - c).collect();
    let d = basis.len();
    let pos_of_col: BTreeMap<usize, usize> = basis
        .iter()
        .enumerate()
        .map(|(k, &pi)| (col(pi), k))
        .collect();
    let reduce = |p: Option<Path>| -> Vec<F::Elem> {
        let mut out = vec![f.zero(); d];
        let Some(p) = p.filter(|p| p.len() < bound) else {
            return out;
        };
        let r = ideal.reduce(&unit_vec(f, np, col(index[&p])));
        for (c, x) in r.iter().enumerate() {
            if !f.is_zero(x) {
                out[pos_of_col[&c]] = x.clone();
            }
        }
        out
    };
    let mut mult = Vec::with_capacity(d * d * d);
    for &a in &basis {
        for &b in &basis {
            mult.extend(reduce(q.concat(&paths[a], &paths[b])));
        }
    }
    let mut unit = vec![f.zero(); d];
    let mut vertex_idem = Vec::new();
    for (k, &pi) in basis.iter().enumerate() {
        if let Path::Vertex(_) = paths[pi] {
            unit[k] = f.one();
            vertex_idem.push(unit_vec(f, d, k));
        }
    }
    if vertex_idem.len() != spec.vertices.len() {
        return Err(Error::Quiver("ideal is not admissible within the length bound: a vertex idempotent lies in the ideal".into()));
    }
    let labels: Vec<String> = basis
        .iter()
        .map(|&pi| path_label(&spec.vertices, &spec.arrows, &paths[pi]))
        .collect();
    let table = Table {
        field: f.clone(),
        dim: d,
        mult,
        unit,
    };
    if let Err(v) = validate_table(&table) {
        return Err(Error::Quiver(format!(
            "ideal is not admissible within the length bound ({})",
            describe_violation(&v, &labels)
        )));
    }
    let j = Subspace::spanned_by(
        f,
        d,
        basis
            .iter()
            .enumerate()
            .filter(|(_, &pi)| paths[pi].len() > 0)
            .map(|(k, _)| unit_vec(f, d, k)),
    );
    let chain = RadicalChain::from_radical(&table, j, RadicalSource::ArrowIdeal).map_err(|e| {
        Error::Quiver(format!(
            "ideal is not admissible within the length bound ({e})"
        ))
    })?;
    Ok(Algebra::assemble(
        table,
        labels,
        Ok(chain),
        Some(vertex_idem),
    ))
}
