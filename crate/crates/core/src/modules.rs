//! Finite-dimensional right modules as representations, homomorphisms, Hom
//! spaces, (co)kernels, projectives, covers, approximations and
//! endomorphism algebras.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Table};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{is_zero_vec, solve_homogeneous, Mat, Subspace};

/// A right module: one `dim × dim` matrix `ρ(bᵢ)` per algebra basis element,
/// acting on row vectors from the right.
#[derive(Clone, Debug)]
pub struct Repn<F: Field> {
    algebra: Arc<Algebra<F>>,
    dim: usize,
    action: Arc<Vec<Mat<F>>>,
}

impl<F: Field> PartialEq for Repn<F> {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.dim == other.dim && self.action == other.action
    }
}
impl<F: Field> Eq for Repn<F> {}

/// A module homomorphism `source → target`; `v ↦ v·matrix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModHom<F: Field> {
    pub source: Repn<F>,
    pub target: Repn<F>,
    pub matrix: Mat<F>,
}

/// A basis of `Hom(M, N)`, stored as a subspace of flattened matrices in
/// reduced echelon form so that coordinates are read off directly.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    pub source: Repn<F>,
    pub target: Repn<F>,
    space: Subspace<F>,
}

/// Kernel, image and cokernel of a homomorphism with their structure maps.
#[derive(Clone, Debug)]
pub struct Factorization<F: Field> {
    pub kernel: ModHom<F>,
    /// Corestriction `source → image`.
    pub coimage: ModHom<F>,
    /// Inclusion `image → target`.
    pub image: ModHom<F>,
    pub cokernel: ModHom<F>,
}

#[derive(Clone, Debug)]
pub struct DirectSum<F: Field> {
    pub module: Repn<F>,
    pub injections: Vec<ModHom<F>>,
    pub projections: Vec<ModHom<F>>,
}

/// Indecomposable projectives `Pᵢ = eᵢA` and simples `Sᵢ = Pᵢ/PᵢJ`, indexed by
/// the algebra's primitive idempotents.
#[derive(Clone, Debug)]
pub struct Projectives<F: Field> {
    pub projectives: Vec<Repn<F>>,
    pub simples: Vec<Repn<F>>,
    /// Coordinates of `eᵢ` inside `Pᵢ`.
    pub tops: Vec<Vec<F::Elem>>,
    /// `Pᵢ → Sᵢ`.
    pub top_maps: Vec<ModHom<F>>,
    /// Rows are the basis of `Pᵢ` inside the regular module.
    pub inclusions: Vec<Mat<F>>,
    /// One idempotent index per isomorphism class.
    pub representatives: Vec<usize>,
}

/// A projective cover `P → M`; `summands[k]` is the idempotent index of the
/// `k`-th summand of `P`.
#[derive(Clone, Debug)]
pub struct Cover<F: Field> {
    pub map: ModHom<F>,
    pub summands: Vec<usize>,
}

/// The endomorphism algebra of a module on a Hom-space basis, with
/// multiplication `φψ = φ∘ψ`.
#[derive(Clone, Debug)]
pub struct Endomorphisms<F: Field> {
    pub module: Repn<F>,
    pub algebra: Arc<Algebra<F>>,
    pub basis: HomSpace<F>,
}

fn check_same<F: Field>(a: &Repn<F>, b: &Repn<F>) -> Result<()> {
    if a.same_algebra(b) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

impl<F: Field> Repn<F> {
    /// Validated module from action matrices (one per basis element).
    pub fn new(algebra: Arc<Algebra<F>>, dim: usize, action: Vec<Mat<F>>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!(
                "expected {} action matrices, got {}",
                algebra.dim(),
                action.len()
            )));
        }
        for (i, m) in action.iter().enumerate() {
            if m.shape() != (dim, dim) {
                return Err(Error::InvalidModule(format!(
                    "action[{i}] has shape {:?}, expected ({dim}, {dim})",
                    m.shape()
                )));
            }
        }
        let r = Self::new_unchecked(algebra, dim, action);
        r.validate()?;
        Ok(r)
    }

    pub fn new_unchecked(algebra: Arc<Algebra<F>>, dim: usize, action: Vec<Mat<F>>) -> Self {
        Self {
            algebra,
            dim,
            action: Arc::new(action),
        }
    }

    pub fn zero(algebra: &Arc<Algebra<F>>) -> Self {
        let f = algebra.field().clone();
        let action = (0..algebra.dim()).map(|_| Mat::zeros(&f, 0, 0)).collect();
        Self::new_unchecked(algebra.clone(), 0, action)
    }

    /// `A` as a right module over itself.
    pub fn regular(algebra: &Arc<Algebra<F>>) -> Self {
        let action = (0..algebra.dim())
            .map(|i| algebra.right_mult_matrix(&algebra.basis_element(i)))
            .collect();
        Self::new_unchecked(algebra.clone(), algebra.dim(), action)
    }

    /// Checks `ρ(1) = I` and `ρ(bᵢ)ρ(bⱼ) = ρ(bᵢbⱼ)`.
    pub fn validate(&self) -> Result<()> {
        let f = self.field();
        if !self.element_action(self.algebra.unit()).is_identity() {
            return Err(Error::InvalidModule(
                "the unit does not act as the identity".into(),
            ));
        }
        let d = self.algebra.dim();
        for i in 0..d {
            for j in 0..d {
                let lhs = self.action[i].mul(&self.action[j]);
                let rhs = self.element_action(self.algebra.product(i, j));
                if lhs != rhs {
                    let l = self.algebra.labels();
                    return Err(Error::InvalidModule(format!(
                        "ρ({})ρ({}) ≠ ρ({}·{})",
                        l[i], l[j], l[i], l[j]
                    )));
                }
            }
        }
        let _ = f;
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self, i: usize) -> &Mat<F> {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Mat<F>] {
        &self.action
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    /// `ρ(a) = Σ aₖ ρ(bₖ)`.
    pub fn element_action(&self, a: &[F::Elem]) -> Mat<F> {
        Mat::combination(self.field(), self.dim, self.dim, a, &self.action)
    }

    /// `v·a`.
    pub fn act(&self, v: &[F::Elem], a: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = vec![f.zero(); self.dim];
        for (k, c) in a.iter().enumerate() {
            if !f.is_zero(c) {
                let w = self.action[k].apply(v);
                f.axpy(&mut out, c, &w);
            }
        }
        out
    }

    /// The submodule generated by `vectors`.
    pub fn generated(&self, vectors: impl IntoIterator<Item = Vec<F::Elem>>) -> Subspace<F> {
        let f = self.field();
        let mut s = Subspace::zero(f, self.dim);
        let mut queue: Vec<Vec<F::Elem>> = Vec::new();
        for v in vectors {
            if s.insert(v.clone()) {
                queue.push(v);
            }
        }
        let gens = self.algebra.generators();
        while let Some(v) = queue.pop() {
            for &g in gens {
                let w = self.action[g].apply(&v);
                if s.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        s
    }

    pub fn is_submodule(&self, w: &Subspace<F>) -> bool {
        w.basis()
            .iter()
            .all(|v| self.action.iter().all(|m| w.contains(&m.apply(v))))
    }

    /// `M·W` for a subspace `W` of the algebra.
    pub fn times(&self, w: &Subspace<F>) -> Subspace<F> {
        let mats: Vec<Mat<F>> = w.basis().iter().map(|j| self.element_action(j)).collect();
        let vecs = mats.iter().flat_map(|m| m.row_vecs());
        Subspace::spanned_by(self.field(), self.dim, vecs)
    }

    /// `M·J`.
    pub fn radical_subspace(&self) -> Result<Subspace<F>> {
        let chain = self.algebra.radical_chain()?;
        Ok(self.times(chain.radical()))
    }

    /// Dimensions of `M·Jᵏ` for `k = 0, 1, …` until zero.
    pub fn radical_layers(&self) -> Result<Vec<usize>> {
        let chain = self.algebra.radical_chain()?;
        let jmats: Vec<Mat<F>> = chain
            .radical()
            .basis()
            .iter()
            .map(|j| self.element_action(j))
            .collect();
        let mut cur = Subspace::full(self.field(), self.dim);
        let mut out = vec![cur.dim()];
        while !cur.is_zero() {
            let vecs = cur
                .basis()
                .iter()
                .flat_map(|v| jmats.iter().map(move |m| m.apply(v)))
                .collect::<Vec<_>>();
            let next = Subspace::spanned_by(self.field(), self.dim, vecs);
            if next.dim() == cur.dim() {
                break;
            }
            cur = next;
            out.push(cur.dim());
        }
        Ok(out)
    }

    /// Submodule on an invariant subspace, with its inclusion.
    pub fn submodule(&self, w: &Subspace<F>) -> Result<ModHom<F>> {
        if !self.is_submodule(w) {
            return Err(Error::InvalidModule("subspace is not a submodule".into()));
        }
        Ok(self.submodule_unchecked(w))
    }

    pub(crate) fn submodule_unchecked(&self, w: &Subspace<F>) -> ModHom<F> {
        let f = self.field();
        let b = w.basis_matrix();
        let piv = w.pivots();
        let action = self
            .action
            .iter()
            .map(|m| b.mul(m).select_cols(piv))
            .collect();
        let sub = Repn::new_unchecked(self.algebra.clone(), w.dim(), action);
        let _ = f;
        ModHom {
            source: sub,
            target: self.clone(),
            matrix: b,
        }
    }

    /// Quotient by an invariant subspace, with the projection.
    pub fn quotient(&self, w: &Subspace<F>) -> Result<ModHom<F>> {
        if !self.is_submodule(w) {
            return Err(Error::InvalidModule("subspace is not a submodule".into()));
        }
        Ok(self.quotient_unchecked(w))
    }

    pub(crate) fn quotient_unchecked(&self, w: &Subspace<F>) -> ModHom<F> {
        let p = w.quotient_matrix();
        let s = w.section_matrix();
        let action = self.action.iter().map(|m| s.mul(m).mul(&p)).collect();
        let q = Repn::new_unchecked(self.algebra.clone(), w.codim(), action);
        ModHom {
            source: self.clone(),
            target: q,
            matrix: p,
        }
    }

    /// `M/MJ` with its projection.
    pub fn top(&self) -> Result<ModHom<F>> {
        Ok(self.quotient_unchecked(&self.radical_subspace()?))
    }

    /// Change of basis: the module with action `T·ρ·T⁻¹`, for invertible `T`
    /// whose rows are the new basis.
    pub fn rebase(&self, t: &Mat<F>) -> Result<ModHom<F>> {
        let inv = t
            .inverse()
            .ok_or_else(|| Error::InvalidModule("change of basis is not invertible".into()))?;
        let action = self.action.iter().map(|m| t.mul(m).mul(&inv)).collect();
        let r = Repn::new_unchecked(self.algebra.clone(), self.dim, action);
        Ok(ModHom {
            source: r,
            target: self.clone(),
            matrix: t.clone(),
        })
    }
}

impl<F: Field> ModHom<F> {
    /// Validated homomorphism: `ρ_src(b)·X = X·ρ_tgt(b)` for every basis `b`.
    pub fn new(source: Repn<F>, target: Repn<F>, matrix: Mat<F>) -> Result<Self> {
        check_same(&source, &target)?;
        if matrix.shape() != (source.dim(), target.dim()) {
            return Err(Error::InvalidMorphism(format!(
                "matrix has shape {:?}, expected ({}, {})",
                matrix.shape(),
                source.dim(),
                target.dim()
            )));
        }
        let h = Self {
            source,
            target,
            matrix,
        };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, (a, b)) in self
            .source
            .actions()
            .iter()
            .zip(self.target.actions())
            .enumerate()
        {
            if a.mul(&self.matrix) != self.matrix.mul(b) {
                return Err(Error::InvalidMorphism(format!(
                    "does not intertwine the action of {}",
                    self.source.algebra().labels()[i]
                )));
            }
        }
        Ok(())
    }

    pub fn zero(source: &Repn<F>, target: &Repn<F>) -> Self {
        Self {
            matrix: Mat::zeros(source.field(), source.dim(), target.dim()),
            source: source.clone(),
            target: target.clone(),
        }
    }

    pub fn identity(m: &Repn<F>) -> Self {
        Self {
            matrix: Mat::identity(m.field(), m.dim()),
            source: m.clone(),
            target: m.clone(),
        }
    }

    /// `g∘self` (apply `self` first).
    pub fn then(&self, g: &ModHom<F>) -> ModHom<F> {
        assert_eq!(
            self.target.dim(),
            g.source.dim(),
            "composition shape mismatch"
        );
        ModHom {
            source: self.source.clone(),
            target: g.target.clone(),
            matrix: self.matrix.mul(&g.matrix),
        }
    }

    pub fn add(&self, g: &ModHom<F>) -> ModHom<F> {
        ModHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&g.matrix),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> ModHom<F> {
        ModHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.scale(c),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    pub fn kernel_subspace(&self) -> Subspace<F> {
        let k = self.matrix.left_nullspace();
        Subspace::spanned_by(self.source.field(), self.source.dim(), k.row_vecs())
    }

    pub fn image_subspace(&self) -> Subspace<F> {
        self.matrix.row_space()
    }

    /// Kernel inclusion.
    pub fn kernel(&self) -> ModHom<F> {
        self.source.submodule_unchecked(&self.kernel_subspace())
    }

    /// Cokernel projection.
    pub fn cokernel(&self) -> ModHom<F> {
        self.target.quotient_unchecked(&self.image_subspace())
    }

    pub fn factorization(&self) -> Factorization<F> {
        let im = self.image_subspace();
        let image = self.target.submodule_unchecked(&im);
        let coimage_matrix = self.matrix.select_cols(im.pivots());
        Factorization {
            kernel: self.kernel(),
            coimage: ModHom {
                source: self.source.clone(),
                target: image.source.clone(),
                matrix: coimage_matrix,
            },
            image,
            cokernel: self.target.quotient_unchecked(&im),
        }
    }

    /// Some `h` with `g = h∘self` (`self` must be injective-like enough), i.e.
    /// `X·H = G`; `None` if `g` does not factor through `self` this way.
    pub fn extend_through(&self, g: &Mat<F>) -> Option<Mat<F>> {
        self.matrix.solve(g).ok().flatten()
    }
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn matrix(&self, i: usize) -> Mat<F> {
        Mat::from_data(
            self.source.field(),
            self.source.dim(),
            self.target.dim(),
            self.space.basis()[i].clone(),
        )
    }

    pub fn matrices(&self) -> Vec<Mat<F>> {
        (0..self.dim()).map(|i| self.matrix(i)).collect()
    }

    pub fn hom(&self, i: usize) -> ModHom<F> {
        ModHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix(i),
        }
    }

    pub fn homs(&self) -> Vec<ModHom<F>> {
        (0..self.dim()).map(|i| self.hom(i)).collect()
    }

    /// Coordinates of a matrix in the basis, if it is a homomorphism.
    pub fn coords(&self, m: &Mat<F>) -> Option<Vec<F::Elem>> {
        self.space.coords(m.data())
    }

    pub fn element(&self, coeffs: &[F::Elem]) -> Mat<F> {
        Mat::from_data(
            self.source.field(),
            self.source.dim(),
            self.target.dim(),
            self.space.from_coords(coeffs),
        )
    }

    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }

    /// The right action of `End(source)` (basis `ends`): `f·φ = f∘φ`, one
    /// matrix per endomorphism basis element.
    pub fn precomposition_action(&self, ends: &[Mat<F>]) -> Vec<Mat<F>> {
        let f = self.source.field();
        ends.iter()
            .map(|phi| {
                let rows: Vec<Vec<F::Elem>> = (0..self.dim())
                    .map(|i| {
                        self.coords(&phi.mul(&self.matrix(i)))
                            .expect("f∘φ is a homomorphism")
                    })
                    .collect();
                Mat::from_rows(f, self.dim(), &rows)
            })
            .collect()
    }
}

/// Row bases of `M·eₖ` for a complete set of orthogonal idempotents, stacked.
fn idempotent_adapted_basis<F: Field>(m: &Repn<F>, idem: &[Vec<F::Elem>]) -> (Mat<F>, Vec<usize>) {
    let f = m.field();
    let mut rows = Vec::with_capacity(m.dim());
    let mut blocks = Vec::with_capacity(m.dim());
    for (k, e) in idem.iter().enumerate() {
        let s = m.element_action(e).row_space();
        for v in s.basis() {
            rows.push(v.clone());
            blocks.push(k);
        }
    }
    (Mat::from_rows(f, m.dim(), &rows), blocks)
}

/// Basis of `Hom(M, N)`.
///
/// When the algebra has a complete set of primitive idempotents the unknown
/// matrix is block diagonal in idempotent-adapted coordinates, which cuts the
/// linear system down considerably; the intertwining equations are imposed
/// only for algebra generators.
pub fn hom_space<F: Field>(m: &Repn<F>, n: &Repn<F>) -> Result<HomSpace<F>> {
    check_same(m, n)?;
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let alg = m.algebra();
    let (tm, bm, tn, bn) = match alg.primitive_idempotents() {
        Ok(idem) if idem.len() > 1 => {
            let (tm, bm) = idempotent_adapted_basis(m, idem);
            let (tn, bn) = idempotent_adapted_basis(n, idem);
            (tm, bm, tn, bn)
        }
        _ => (
            Mat::identity(f, dm),
            vec![0; dm],
            Mat::identity(f, dn),
            vec![0; dn],
        ),
    };
    let tm_inv = tm.inverse().expect("adapted basis is a basis");
    let tn_inv = tn.inverse().expect("adapted basis is a basis");
    let mut index = vec![usize::MAX; dm * dn];
    let mut nu = 0;
    for p in 0..dm {
        for q in 0..dn {
            if bm[p] == bn[q] {
                index[p * dn + q] = nu;
                nu += 1;
            }
        }
    }
    let gens: Vec<(Mat<F>, Mat<F>)> = alg
        .generators()
        .iter()
        .map(|&g| {
            (
                tm.mul(m.action(g)).mul(&tm_inv),
                tn.mul(n.action(g)).mul(&tn_inv),
            )
        })
        .collect();
    let mut equations = Vec::new();
    for (a, b) in &gens {
        for p in 0..dm {
            for q in 0..dn {
                let mut row = vec![f.zero(); nu];
                let mut any = false;
                // (A·X)[p][q] = Σ_k A[p][k] X[k][q]
                for k in 0..dm {
                    let u = index[k * dn + q];
                    if u != usize::MAX && !f.is_zero(a.get(p, k)) {
                        row[u] = f.add(&row[u], a.get(p, k));
                        any = true;
                    }
                }
                // -(X·B)[p][q] = -Σ_k X[p][k] B[k][q]
                for k in 0..dn {
                    let u = index[p * dn + k];
                    if u != usize::MAX && !f.is_zero(b.get(k, q)) {
                        row[u] = f.sub(&row[u], b.get(k, q));
                        any = true;
                    }
                }
                if any && !is_zero_vec(f, &row) {
                    equations.push(row);
                }
            }
        }
    }
    let sols = solve_homogeneous(f, nu, equations);
    let mut space = Subspace::zero(f, dm * dn);
    for s in sols {
        let mut xp = Mat::zeros(f, dm, dn);
        for p in 0..dm {
            for q in 0..dn {
                let u = index[p * dn + q];
                if u != usize::MAX {
                    xp.set(p, q, s[u].clone());
                }
            }
        }
        let x = tm_inv.mul(&xp).mul(&tn);
        space.insert(x.into_data());
    }
    Ok(HomSpace {
        source: m.clone(),
        target: n.clone(),
        space,
    })
}

pub fn direct_sum<F: Field>(algebra: &Arc<Algebra<F>>, parts: &[Repn<F>]) -> Result<DirectSum<F>> {
    let f = algebra.field();
    for p in parts {
        if !Arc::ptr_eq(p.algebra(), algebra) && **p.algebra() != **algebra {
            return Err(Error::AlgebraMismatch);
        }
    }
    let dim: usize = parts.iter().map(Repn::dim).sum();
    let action = (0..algebra.dim())
        .map(|i| {
            let blocks: Vec<Mat<F>> = parts.iter().map(|p| p.action(i).clone()).collect();
            Mat::block_diag(f, &blocks)
        })
        .collect();
    let module = Repn::new_unchecked(algebra.clone(), dim, action);
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    let mut offset = 0;
    for p in parts {
        let mut inj = Mat::zeros(f, p.dim(), dim);
        let mut proj = Mat::zeros(f, dim, p.dim());
        for i in 0..p.dim() {
            inj.set(i, offset + i, f.one());
            proj.set(offset + i, i, f.one());
        }
        injections.push(ModHom {
            source: p.clone(),
            target: module.clone(),
            matrix: inj,
        });
        projections.push(ModHom {
            source: module.clone(),
            target: p.clone(),
            matrix: proj,
        });
        offset += p.dim();
    }
    Ok(DirectSum {
        module,
        injections,
        projections,
    })
}

impl<F: Field> Projectives<F> {
    pub fn new(algebra: &Arc<Algebra<F>>) -> Result<Self> {
        let idem = algebra.primitive_idempotents()?.to_vec();
        let representatives = algebra.class_representatives()?;
        let regular = Repn::regular(algebra);
        let mut out = Self {
            projectives: Vec::new(),
            simples: Vec::new(),
            tops: Vec::new(),
            top_maps: Vec::new(),
            inclusions: Vec::new(),
            representatives,
        };
        for e in &idem {
            let w = algebra.left_mult_matrix(e).row_space();
            let inc = regular.submodule_unchecked(&w);
            let p = inc.source.clone();
            let top = p.top()?;
            out.tops.push(w.coords(e).expect("e lies in eA"));
            out.simples.push(top.target.clone());
            out.top_maps.push(top);
            out.inclusions.push(inc.matrix);
            out.projectives.push(p);
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.projectives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectives.is_empty()
    }
}

pub type SimplesAndProjectives<F> = (Vec<Repn<F>>, Vec<Repn<F>>);

/// Simple modules `Sᵢ` and indecomposable projectives `Pᵢ`, indexed by the
/// primitive idempotents.
pub fn simple_and_projective_modules<F: Field>(
    algebra: &Arc<Algebra<F>>,
) -> Result<SimplesAndProjectives<F>> {
    let p = Projectives::new(algebra)?;
    Ok((p.simples, p.projectives))
}

/// Minimal projective cover `P → M`.
pub fn projective_cover<F: Field>(m: &Repn<F>, proj: &Projectives<F>) -> Result<Cover<F>> {
    let alg = m.algebra();
    let f = m.field();
    let idem = alg.primitive_idempotents()?;
    let mut top = m.radical_subspace()?;
    let mut chosen: Vec<(usize, Vec<F::Elem>)> = Vec::new();
    for &k in &proj.representatives {
        let mek = m.element_action(&idem[k]).row_space();
        for v in mek.basis() {
            if top.insert(v.clone()) {
                chosen.push((k, v.clone()));
            }
        }
    }
    let parts: Vec<Repn<F>> = chosen
        .iter()
        .map(|(k, _)| proj.projectives[*k].clone())
        .collect();
    let sum = direct_sum(alg, &parts)?;
    let mut rows = Vec::with_capacity(sum.module.dim());
    for (k, v) in &chosen {
        let inc = &proj.inclusions[*k];
        for r in 0..inc.rows() {
            rows.push(m.act(v, inc.row(r)));
        }
    }
    let map = ModHom {
        source: sum.module,
        target: m.clone(),
        matrix: Mat::from_rows(f, m.dim(), &rows),
    };
    if !map.is_surjective() {
        return Err(Error::InvalidModule(
            "top of the module is not generated by the idempotent pieces".into(),
        ));
    }
    Ok(Cover {
        map,
        summands: chosen.into_iter().map(|(k, _)| k).collect(),
    })
}

pub fn is_projective<F: Field>(m: &Repn<F>, proj: &Projectives<F>) -> Result<bool> {
    Ok(projective_cover(m, proj)?.map.source.dim() == m.dim())
}

/// Search budget for [`is_isomorphic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoBudget {
    pub random_trials: usize,
    /// Exhaustive search runs when `|F|^{dim Hom} ≤ exhaustive_limit`.
    pub exhaustive_limit: u64,
}

impl Default for IsoBudget {
    fn default() -> Self {
        Self {
            random_trials: 64,
            exhaustive_limit: 1 << 16,
        }
    }
}

/// Cheap isomorphism invariants: dimension, radical layers and the
/// dimensions of `M·eᵢ`.
pub fn invariants<F: Field>(m: &Repn<F>) -> Vec<usize> {
    let mut out = vec![m.dim()];
    if let Ok(l) = m.radical_layers() {
        out.extend(l);
    }
    out.push(usize::MAX);
    if let Ok(idem) = m.algebra().primitive_idempotents() {
        out.extend(idem.iter().map(|e| m.element_action(e).rank()));
    }
    out
}

/// An isomorphism `M → N`, `None` if there is none, or `Inconclusive` when
/// neither could be certified within the budget.
pub fn is_isomorphic<F: Field>(
    m: &Repn<F>,
    n: &Repn<F>,
    budget: IsoBudget,
) -> Result<Option<ModHom<F>>> {
    check_same(m, n)?;
    if m.dim() != n.dim() || invariants(m) != invariants(n) {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(ModHom::zero(m, n)));
    }
    if m == n {
        return Ok(Some(ModHom::identity(m)));
    }
    let h = hom_space(m, n)?;
    if h.dim() == 0 || h.dim() != hom_space(m, m)?.dim() || h.dim() != hom_space(n, n)?.dim() {
        return Ok(None);
    }
    let f = m.field();
    let mats = h.matrices();
    let make = |c: &[F::Elem]| Mat::combination(f, m.dim(), n.dim(), c, &mats);
    let seed = (m.dim() as u64) << 32 | h.dim() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let wide = f.order().is_none();
    for _ in 0..budget.random_trials {
        let c: Vec<F::Elem> = (0..h.dim())
            .map(|_| {
                if wide {
                    f.element(rng.gen_range(0..4096))
                } else {
                    f.sample(&mut rng)
                }
            })
            .collect();
        let x = make(&c);
        if x.is_invertible() {
            return Ok(Some(ModHom {
                source: m.clone(),
                target: n.clone(),
                matrix: x,
            }));
        }
    }
    if let Some(q) = f.order() {
        let total = (q as u128).checked_pow(h.dim() as u32);
        if total.is_some_and(|t| t <= budget.exhaustive_limit as u128) {
            // Up to scalars: the first nonzero coefficient is one.
            let mut c = vec![0u64; h.dim()];
            loop {
                if let Some(first) = c.iter().position(|&x| x != 0) {
                    if c[first] == 1 {
                        let coeffs: Vec<F::Elem> = c.iter().map(|&x| f.element(x)).collect();
                        let x = make(&coeffs);
                        if x.is_invertible() {
                            return Ok(Some(ModHom {
                                source: m.clone(),
                                target: n.clone(),
                                matrix: x,
                            }));
                        }
                    }
                }
                let mut i = 0;
                loop {
                    if i == c.len() {
                        return Ok(None);
                    }
                    c[i] += 1;
                    if c[i] < q {
                        break;
                    }
                    c[i] = 0;
                    i += 1;
                }
            }
        }
    }
    Err(Error::Inconclusive(format!(
        "no isomorphism found among {} random elements of a {}-dimensional Hom space",
        budget.random_trials,
        h.dim()
    )))
}

/// Right `add(M)`-approximation `M^r → N` with `r = dim Hom(M, N)`.
pub fn right_approximation<F: Field>(n: &Repn<F>, m: &Repn<F>) -> Result<ModHom<F>> {
    let h = hom_space(m, n)?;
    let parts = vec![m.clone(); h.dim()];
    let sum = direct_sum(m.algebra(), &parts)?;
    let mut matrix = Mat::zeros(m.field(), 0, n.dim());
    for x in h.matrices() {
        matrix = matrix.vstack(&x);
    }
    Ok(ModHom {
        source: sum.module,
        target: n.clone(),
        matrix,
    })
}

/// The table of `End(M)` on a Hom basis with `φψ = φ∘ψ`, whose matrix is
/// `X_ψ·X_φ`.
pub(crate) fn endomorphism_table<F: Field>(basis: &HomSpace<F>) -> Result<Table<F>> {
    let f = basis.source.field();
    let mats = basis.matrices();
    let h = mats.len();
    let mut mult = Vec::with_capacity(h * h * h);
    for phi in &mats {
        for psi in &mats {
            mult.extend(
                basis
                    .coords(&psi.mul(phi))
                    .expect("composition of endomorphisms"),
            );
        }
    }
    let unit = basis
        .coords(&Mat::identity(f, basis.source.dim()))
        .ok_or_else(|| Error::InvalidModule("identity is not an endomorphism".into()))?;
    Ok(Table {
        field: f.clone(),
        dim: h,
        mult,
        unit,
    })
}

impl<F: Field> Endomorphisms<F> {
    /// `Hom(M, N)` as a right module over `End(M)` via `f·φ = f∘φ`.
    pub fn hom_module(&self, n: &Repn<F>) -> Result<(Repn<F>, HomSpace<F>)> {
        let h = hom_space(&self.module, n)?;
        let action = h.precomposition_action(&self.basis.matrices());
        Ok((
            Repn::new_unchecked(self.algebra.clone(), h.dim(), action),
            h,
        ))
    }
}

/// `End(M)` with multiplication `φψ = φ∘ψ`. The radical comes from the
/// trace form (exact over `Q`, accepted over `F_p` when nilpotent).
pub fn endomorphism_algebra<F: Field>(m: &Repn<F>) -> Result<Endomorphisms<F>> {
    if m.is_zero() {
        return Err(Error::InvalidModule(
            "endomorphism algebra of the zero module".into(),
        ));
    }
    let basis = hom_space(m, m)?;
    let table = endomorphism_table(&basis)?;
    let labels = (0..table.dim)
        .map(|i| format!("φ{i}"))
        .collect::<Vec<String>>();
    let algebra = Algebra::from_table(&table.field, labels, table.unit.clone(), &nested(&table))?;
    Ok(Endomorphisms {
        module: m.clone(),
        algebra: Arc::new(algebra),
        basis,
    })
}

pub(crate) fn nested<F: Field>(t: &Table<F>) -> Vec<Vec<Vec<F::Elem>>> {
    (0..t.dim)
        .map(|i| (0..t.dim).map(|j| t.product(i, j).to_vec()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{split_semisimple_algebra, truncated_polynomial, upper_triangular_2};
    use crate::field::PrimeField;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    /// `k[x]/(xⁱ)` as a module over `k[x]/(xⁿ)`.
    fn cyclic(a: &Arc<Algebra<PrimeField>>, i: usize) -> Repn<PrimeField> {
        let reg = Repn::regular(a);
        let w = a.radical_chain().unwrap().power(i).clone();
        reg.quotient(&w).unwrap().target
    }

    #[test]
    fn regular_modules() {
        let f = f5();
        let k = Arc::new(truncated_polynomial(&f, 1));
        assert_eq!(Repn::regular(&k).dim(), 1);
        let a = Arc::new(truncated_polynomial(&f, 2));
        let r = Repn::regular(&a);
        r.validate().unwrap();
        assert_eq!(r.action(1).rank(), 1);
        let t2 = Arc::new(upper_triangular_2(&f));
        assert_eq!(Repn::regular(&t2).dim(), 3);
        Repn::regular(&t2).validate().unwrap();
    }

    #[test]
    fn hom_dims_min_table() {
        let f = f5();
        let a = Arc::new(truncated_polynomial(&f, 3));
        for i in 1..=3 {
            for j in 1..=3 {
                let h = hom_space(&cyclic(&a, i), &cyclic(&a, j)).unwrap();
                assert_eq!(h.dim(), i.min(j), "Hom(Λ/J^{i}, Λ/J^{j})");
                for x in h.homs() {
                    x.validate().unwrap();
                }
            }
        }
        let kk = Arc::new(split_semisimple_algebra(&f, 2));
        let (s, _) = simple_and_projective_modules(&kk).unwrap();
        assert_eq!(hom_space(&s[0], &s[1]).unwrap().dim(), 0);
    }

    #[test]
    fn factorization_examples() {
        let f = f5();
        let a = Arc::new(truncated_polynomial(&f, 2));
        let reg = Repn::regular(&a);
        let z = ModHom::zero(&reg, &reg).factorization();
        assert_eq!(z.kernel.source.dim(), 2);
        assert_eq!(z.cokernel.target.dim(), 2);
        let id = ModHom::identity(&reg).factorization();
        assert_eq!(id.kernel.source.dim(), 0);
        assert_eq!(id.cokernel.target.dim(), 0);
        let top = reg.top().unwrap();
        let fac = top.factorization();
        assert_eq!(fac.kernel.source.dim(), 1);
        assert!(fac.kernel.then(&top).is_zero());
    }

    #[test]
    fn projectives_and_covers() {
        let f = f5();
        let a = Arc::new(truncated_polynomial(&f, 2));
        let proj = Projectives::new(&a).unwrap();
        assert_eq!(proj.projectives[0].dim(), 2);
        assert_eq!(proj.simples[0].dim(), 1);
        let cover = projective_cover(&proj.simples[0], &proj).unwrap();
        assert_eq!(cover.map.source.dim(), 2);
        assert!(cover.map.is_surjective());
        assert_eq!(cover.map.kernel().source.dim(), 1);
        let zero = projective_cover(&Repn::zero(&a), &proj).unwrap();
        assert_eq!(zero.map.source.dim(), 0);
        assert!(is_projective(&Repn::regular(&a), &proj).unwrap());

        let t2 = Arc::new(upper_triangular_2(&f));
        let proj = Projectives::new(&t2).unwrap();
        let mut dims: Vec<usize> = proj.projectives.iter().map(Repn::dim).collect();
        dims.sort();
        assert_eq!(dims, [1, 2]);
    }

    #[test]
    fn isomorphism_search() {
        let f = f5();
        let a = Arc::new(truncated_polynomial(&f, 2));
        let s = cyclic(&a, 1);
        let l = cyclic(&a, 2);
        let budget = IsoBudget::default();
        assert!(is_isomorphic(&l, &l, budget).unwrap().is_some());
        assert!(is_isomorphic(&s, &l, budget).unwrap().is_none());
        let x = direct_sum(&a, &[s.clone(), l.clone()]).unwrap().module;
        let y = direct_sum(&a, &[l.clone(), s.clone()]).unwrap().module;
        let iso = is_isomorphic(&x, &y, budget).unwrap().unwrap();
        iso.validate().unwrap();
        assert!(iso.is_iso());
        // syzygy of the simple is the simple
        let reg = Repn::regular(&a);
        let soc = reg.top().unwrap().kernel().source;
        assert!(is_isomorphic(&soc, &s, budget).unwrap().is_some());
    }

    #[test]
    fn approximations_and_endomorphisms() {
        let f = f5();
        let a = Arc::new(truncated_polynomial(&f, 2));
        let (s, l) = (cyclic(&a, 1), cyclic(&a, 2));
        let m = direct_sum(&a, &[l.clone(), s.clone()]).unwrap().module;
        let appr = right_approximation(&l, &m).unwrap();
        assert_eq!(appr.source.dim(), 3 * m.dim());
        appr.validate().unwrap();
        let zero = right_approximation(&Repn::zero(&a), &m).unwrap();
        assert_eq!(zero.source.dim(), 0);

        assert_eq!(endomorphism_algebra(&l).unwrap().algebra.dim(), 2);
        assert_eq!(endomorphism_algebra(&s).unwrap().algebra.dim(), 1);
        let m = direct_sum(&a, &[s.clone(), l.clone()]).unwrap().module;
        let end = endomorphism_algebra(&m).unwrap();
        assert_eq!(end.algebra.dim(), 5);
        assert!(end.algebra.validate().is_ok());
        let (hm, _) = end.hom_module(&l).unwrap();
        hm.validate().unwrap();
        assert_eq!(hm.dim(), 3);
    }
}
