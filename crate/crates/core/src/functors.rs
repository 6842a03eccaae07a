//! The functors between `mod-Ã` and `mod-Λ`: `ϑ(F) = F·e`, its right adjoint
//! `ϑ_ρ = Hom(M, −)` and left adjoint `ϑ_λ` (presentation cokernel), their
//! (co)units, and the four-term sequence `0 → F₀ → F → ϑ_ρϑF → F₁ → 0`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::Serialize;

use crate::auslander::AuslanderData;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Mat, Subspace};
use crate::modules::{hom_space, is_projective, projective_cover, HomSpace, ModHom, Repn};

/// `ϑ(F) = F·e` as a `Λ`-module, with its embedding in `F`.
#[derive(Clone, Debug)]
pub struct Theta<F: Field> {
    pub module: Repn<F>,
    pub space: Subspace<F>,
}

/// `ϑ_ρ(N) = Hom(M, N)` as an `Ã`-module.
#[derive(Clone, Debug)]
pub struct HomFunctor<F: Field> {
    pub module: Repn<F>,
    pub space: HomSpace<F>,
}

/// `ϑ_λ(N) = coker(Hom(M, P₁) → Hom(M, P₀))` for a presentation
/// `P₁ → P₀ → N → 0`.
#[derive(Clone, Debug)]
pub struct LeftLift<F: Field> {
    pub module: Repn<F>,
    pub cover: ModHom<F>,
    pub presentation: ModHom<F>,
    pub hom_p0: HomFunctor<F>,
    /// `ϑ_ρ(P₀) → ϑ_λ(N)`.
    pub projection: ModHom<F>,
}

#[derive(Clone, Debug)]
pub struct FourTermSeq<F: Field> {
    pub f: Repn<F>,
    pub theta: Theta<F>,
    /// `ϑ_ρϑ(F)`.
    pub middle: HomFunctor<F>,
    /// `F → ϑ_ρϑ(F)`, `α(v)(m) = v·x_m`.
    pub alpha: ModHom<F>,
    /// `F₀ → F`.
    pub f0: ModHom<F>,
    /// `ϑ_ρϑ(F) → F₁`.
    pub f1: ModHom<F>,
}

fn check_tilde<F: Field>(f: &Repn<F>, data: &AuslanderData<F>) -> Result<()> {
    if **f.algebra() == **data.tilde() {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

fn check_lambda<F: Field>(n: &Repn<F>, data: &AuslanderData<F>) -> Result<()> {
    if **n.algebra() == *data.lambda {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// `ϑ(F) = F·e` with `v·λ = v·φ_λ`, `φ_λ ∈ eÃe` the corner preimage of `λ`.
pub fn theta<F: Field>(f: &Repn<F>, data: &AuslanderData<F>) -> Result<Theta<F>> {
    check_tilde(f, data)?;
    let space = f.element_action(&data.e).row_space();
    let b = space.basis_matrix();
    let action = (0..data.lambda.dim())
        .map(|l| {
            let phi = data.lambda_to_corner(&data.lambda.basis_element(l));
            b.mul(&f.element_action(&phi)).select_cols(space.pivots())
        })
        .collect();
    Ok(Theta {
        module: Repn::new_unchecked(data.lambda.clone(), space.dim(), action),
        space,
    })
}

/// `ϑ(g)`: restriction of an `Ã`-homomorphism to the `e`-parts.
pub fn theta_map<F: Field>(g: &ModHom<F>, src: &Theta<F>, tgt: &Theta<F>) -> ModHom<F> {
    let m = src
        .space
        .basis_matrix()
        .mul(&g.matrix)
        .select_cols(tgt.space.pivots());
    ModHom {
        source: src.module.clone(),
        target: tgt.module.clone(),
        matrix: m,
    }
}

pub fn theta_rho<F: Field>(n: &Repn<F>, data: &AuslanderData<F>) -> Result<HomFunctor<F>> {
    check_lambda(n, data)?;
    let (module, space) = data.end.hom_module(n)?;
    Ok(HomFunctor { module, space })
}

/// `ϑ_ρ(u) = u∘−`.
pub fn theta_rho_map<F: Field>(
    u: &ModHom<F>,
    src: &HomFunctor<F>,
    tgt: &HomFunctor<F>,
) -> ModHom<F> {
    let rows: Vec<Vec<F::Elem>> = src
        .space
        .matrices()
        .iter()
        .map(|x| {
            tgt.space
                .coords(&x.mul(&u.matrix))
                .expect("u∘f is a homomorphism")
        })
        .collect();
    ModHom {
        source: src.module.clone(),
        target: tgt.module.clone(),
        matrix: Mat::from_rows(u.source.field(), tgt.space.dim(), &rows),
    }
}

pub fn theta_lambda<F: Field>(n: &Repn<F>, data: &AuslanderData<F>) -> Result<LeftLift<F>> {
    check_lambda(n, data)?;
    let proj = &data.lambda_projectives;
    if is_projective(n, proj)? {
        let hom = theta_rho(n, data)?;
        return Ok(LeftLift {
            module: hom.module.clone(),
            cover: ModHom::identity(n),
            presentation: ModHom::zero(&crate::modules::Repn::zero(&data.lambda), n),
            projection: ModHom::identity(&hom.module),
            hom_p0: hom,
        });
    }
    let cover = projective_cover(n, proj)?.map;
    let kernel = cover.kernel();
    let cover1 = projective_cover(&kernel.source, proj)?.map;
    let presentation = cover1.then(&kernel);
    let hom_p1 = theta_rho(&presentation.source, data)?;
    let hom_p0 = theta_rho(&cover.source, data)?;
    let d = theta_rho_map(&presentation, &hom_p1, &hom_p0);
    let projection = d.cokernel();
    Ok(LeftLift {
        module: projection.target.clone(),
        cover,
        presentation,
        hom_p0,
        projection,
    })
}

/// Counit `ϑϑ_ρ(N) → N`, `f ↦ f(1_Λ)`.
pub fn counit<F: Field>(
    n: &Repn<F>,
    hom: &HomFunctor<F>,
    data: &AuslanderData<F>,
) -> Result<(Theta<F>, ModHom<F>)> {
    let th = theta(&hom.module, data)?;
    let unit_row = data.lambda_inclusion.apply(data.lambda.unit());
    let rows: Vec<Vec<F::Elem>> = th
        .space
        .basis()
        .iter()
        .map(|c| hom.space.element(c).apply(&unit_row))
        .collect();
    let map = ModHom {
        source: th.module.clone(),
        target: n.clone(),
        matrix: Mat::from_rows(n.field(), n.dim(), &rows),
    };
    Ok((th, map))
}

/// `f_p = (M → Λ → P, x ↦ p·x)`, the element of `Hom(M, P)·e` for `p ∈ P`.
fn point_map<F: Field>(p: &Repn<F>, v: &[F::Elem], data: &AuslanderData<F>) -> Mat<F> {
    let rows: Vec<Vec<F::Elem>> = p.actions().iter().map(|a| a.apply(v)).collect();
    let r = Mat::from_rows(p.field(), p.dim(), &rows);
    data.lambda_projection.mul(&r)
}

/// Unit `N → ϑϑ_λ(N)`: lift `n` to `p ∈ P₀` and take the class of `f_p`.
pub fn left_unit<F: Field>(
    n: &Repn<F>,
    lift: &LeftLift<F>,
    data: &AuslanderData<F>,
) -> Result<(Theta<F>, ModHom<F>)> {
    let th = theta(&lift.module, data)?;
    let p0 = &lift.cover.source;
    let mut rows = Vec::with_capacity(n.dim());
    for i in 0..n.dim() {
        let target = Mat::row_vector(n.field(), &crate::linalg::unit_vec(n.field(), n.dim(), i));
        let p = lift
            .cover
            .matrix
            .solve_left(&target)?
            .ok_or_else(|| Error::InvalidMorphism("cover is not surjective".into()))?;
        let f = point_map(p0, p.row(0), data);
        let c = lift.hom_p0.space.coords(&f).expect("f_p is a homomorphism");
        let image = lift.projection.matrix.apply(&c);
        rows.push(
            th.space
                .coords(&image)
                .ok_or_else(|| Error::InvalidMorphism("unit leaves the e-part".into()))?,
        );
    }
    let map = ModHom {
        source: n.clone(),
        target: th.module.clone(),
        matrix: Mat::from_rows(n.field(), th.module.dim(), &rows),
    };
    Ok((th, map))
}

/// `x_m ∈ Ãe`, the endomorphism `M → Λ → M`, `x ↦ m·x`.
pub fn corner_vector<F: Field>(m: &[F::Elem], data: &AuslanderData<F>) -> Vec<F::Elem> {
    let x = point_map(data.module(), m, data);
    data.element_of(&x).expect("x_m is an endomorphism")
}

pub fn four_term_sequence<F: Field>(
    f: &Repn<F>,
    data: &AuslanderData<F>,
) -> Result<FourTermSeq<F>> {
    let th = theta(f, data)?;
    let middle = theta_rho(&th.module, data)?;
    let dm = data.module().dim();
    let field = f.field();
    let xs: Vec<Mat<F>> = (0..dm)
        .map(|r| f.element_action(&corner_vector(&crate::linalg::unit_vec(field, dm, r), data)))
        .collect();
    let mut rows = Vec::with_capacity(f.dim());
    for i in 0..f.dim() {
        let img: Vec<Vec<F::Elem>> = xs
            .iter()
            .map(|x| th.space.coords(x.row(i)).expect("v·x_m lies in F·e"))
            .collect();
        let a = Mat::from_rows(field, th.module.dim(), &img);
        rows.push(
            middle
                .space
                .coords(&a)
                .ok_or_else(|| Error::InvalidMorphism("α(v) is not a Λ-homomorphism".into()))?,
        );
    }
    let alpha = ModHom {
        source: f.clone(),
        target: middle.module.clone(),
        matrix: Mat::from_rows(field, middle.space.dim(), &rows),
    };
    Ok(FourTermSeq {
        f: f.clone(),
        theta: th,
        f0: alpha.kernel(),
        f1: alpha.cokernel(),
        middle,
        alpha,
    })
}

impl<F: Field> FourTermSeq<F> {
    /// Exactness, `F₀·e = F₁·e = 0` and `ϑ(α)` bijective; one message per
    /// failed check.
    pub fn check(&self, data: &AuslanderData<F>) -> Vec<String> {
        let mut out = Vec::new();
        if let Err(e) = self.alpha.validate() {
            out.push(format!("α is not a homomorphism: {e}"));
        }
        let r = self.alpha.rank();
        if self.f0.source.dim() + r != self.f.dim() {
            out.push("dim F₀ + rank α ≠ dim F".into());
        }
        if r + self.f1.target.dim() != self.middle.module.dim() {
            out.push("rank α + dim F₁ ≠ dim ϑ_ρϑF".into());
        }
        if !self.f0.then(&self.alpha).is_zero() || !self.alpha.then(&self.f1).is_zero() {
            out.push("composites do not vanish".into());
        }
        if !self.f0.source.element_action(&data.e).is_zero() {
            out.push("F₀·e ≠ 0".into());
        }
        if !self.f1.target.element_action(&data.e).is_zero() {
            out.push("F₁·e ≠ 0".into());
        }
        match theta(&self.middle.module, data) {
            Ok(tm) => {
                let ta = theta_map(&self.alpha, &self.theta, &tm);
                if !ta.is_iso() {
                    out.push("ϑ(α) is not an isomorphism".into());
                }
            }
            Err(e) => out.push(format!("ϑ(ϑ_ρϑF) failed: {e}")),
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    /// `dim Hom_Ã(F, ϑ_ρN)`, `dim Hom_Λ(ϑF, N)`, rank of `g ↦ ε∘ϑ(g)`.
    pub right: (usize, usize, usize),
    /// `dim Hom_Ã(ϑ_λN, F)`, `dim Hom_Λ(N, ϑF)`, rank of `g ↦ ϑ(g)∘η`.
    pub left: (usize, usize, usize),
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        let ok = |(a, b, r): (usize, usize, usize)| a == b && b == r;
        ok(self.right) && ok(self.left)
    }
}

fn rank_of_images<F: Field>(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> usize {
    Mat::from_rows(field, cols, &rows).rank()
}

/// Both adjunction isomorphisms as explicit linear maps.
pub fn adjunction_check<F: Field>(
    f: &Repn<F>,
    n: &Repn<F>,
    data: &AuslanderData<F>,
) -> Result<AdjunctionReport> {
    let field = f.field();
    let th = theta(f, data)?;

    let rho = theta_rho(n, data)?;
    let (th_rho, eps) = counit(n, &rho, data)?;
    let h_right = hom_space(f, &rho.module)?;
    let h_right_lambda = hom_space(&th.module, n)?;
    let images = h_right
        .homs()
        .iter()
        .map(|g| {
            let m = theta_map(g, &th, &th_rho).then(&eps).matrix;
            h_right_lambda.coords(&m).expect("ε∘ϑ(g) is a homomorphism")
        })
        .collect();
    let right = (
        h_right.dim(),
        h_right_lambda.dim(),
        rank_of_images(field, h_right_lambda.dim(), images),
    );

    let lift = theta_lambda(n, data)?;
    let (th_lambda, eta) = left_unit(n, &lift, data)?;
    let h_left = hom_space(&lift.module, f)?;
    let h_left_lambda = hom_space(n, &th.module)?;
    let images = h_left
        .homs()
        .iter()
        .map(|g| {
            let m = eta.then(&theta_map(g, &th_lambda, &th)).matrix;
            h_left_lambda.coords(&m).expect("ϑ(g)∘η is a homomorphism")
        })
        .collect();
    let left = (
        h_left.dim(),
        h_left_lambda.dim(),
        rank_of_images(field, h_left_lambda.dim(), images),
    );
    Ok(AdjunctionReport { right, left })
}
