//! The Auslander algebra `Ã = End(M)` of `M = Λ/J ⊕ Λ/J² ⊕ … ⊕ Λ/Jⁿ`, its
//! corner idempotent `e` with `eÃe ≅ Λ`, and verification of both facts.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use serde::Serialize;

use crate::algebra::{Algebra, Corner, RadicalSource};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{global_dimension_with, GlobalDimension};
use crate::linalg::{solve_homogeneous, Mat, Subspace};
use crate::modules::{
    direct_sum, endomorphism_table, hom_space, DirectSum, Endomorphisms, Projectives, Repn,
};

/// Everything needed to move between `mod-Λ` and `mod-Ã`.
#[derive(Clone, Debug)]
pub struct AuslanderData<F: Field> {
    pub lambda: Arc<Algebra<F>>,
    /// Nilpotency index of the radical of `Λ`.
    pub n: usize,
    /// `M = ⊕ Λ/Jⁱ` in the order `i = 1, …, n`.
    pub m: DirectSum<F>,
    /// `Ã` on a basis of `End(M)`, `φψ = φ∘ψ`, plus the Hom(M, −) action data.
    pub end: Endomorphisms<F>,
    /// Projection onto the last summand `Λ/Jⁿ = Λ`, in `Ã` coordinates.
    pub e: Vec<F::Elem>,
    pub corner: Corner<F>,
    /// Rows: images in `Λ` of the basis of `eÃe`.
    pub corner_iso: Mat<F>,
    /// `Λ → M`, the inclusion of the last summand.
    pub lambda_inclusion: Mat<F>,
    /// `M → Λ`, the projection onto the last summand.
    pub lambda_projection: Mat<F>,
    pub lambda_projectives: Projectives<F>,
    pub tilde_projectives: Projectives<F>,
}

impl<F: Field> AuslanderData<F> {
    pub fn tilde(&self) -> &Arc<Algebra<F>> {
        &self.end.algebra
    }

    pub fn module(&self) -> &Repn<F> {
        &self.m.module
    }

    pub fn field(&self) -> &F {
        self.lambda.field()
    }

    /// Matrix on `M` of an element of `Ã`.
    pub fn endomorphism(&self, a: &[F::Elem]) -> Mat<F> {
        self.end.basis.element(a)
    }

    /// The element of `Ã` acting on `M` as the endomorphism `X`.
    pub fn element_of(&self, x: &Mat<F>) -> Option<Vec<F::Elem>> {
        self.end.basis.coords(x)
    }

    /// `eφe ↦ λ`, where `eφe` restricted to `Λ` is left multiplication by `λ`.
    pub fn corner_to_lambda(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        let x = self.endomorphism(a);
        let r = self.lambda_inclusion.mul(&x).mul(&self.lambda_projection);
        r.apply(self.lambda.unit())
    }

    /// `λ ↦ e·l_λ·e ∈ Ã`.
    pub fn lambda_to_corner(&self, l: &[F::Elem]) -> Vec<F::Elem> {
        let x = self
            .lambda_projection
            .mul(&self.lambda.left_mult_matrix(l))
            .mul(&self.lambda_inclusion);
        self.element_of(&x)
            .expect("e·l_λ·e is an endomorphism of M")
    }
}

/// `Λ/J¹, …, Λ/Jⁿ` as modules.
fn radical_quotients<F: Field>(lambda: &Arc<Algebra<F>>) -> Result<Vec<(Repn<F>, Subspace<F>)>> {
    let chain = lambda.radical_chain()?;
    let regular = Repn::regular(lambda);
    Ok((1..=chain.nilpotency_index().max(1))
        .map(|i| {
            let w = chain.power(i.min(chain.nilpotency_index())).clone();
            (regular.quotient_unchecked(&w).target, w)
        })
        .collect())
}

/// Radical of `End(⊕ Yₖ)` for local summands `Yₖ` with projections `Eₖ`: the
/// `X` such that every composite `Y_l → Y_k → Y_l` through `X` lands in
/// `Y_l·J`.
fn structural_radical<F: Field>(
    basis: &[Mat<F>],
    projections: &[Mat<F>],
    top: &Mat<F>,
) -> Subspace<F> {
    let f = top.field();
    let h = basis.len();
    let mut eqs = Vec::new();
    for el in projections {
        let left: Vec<Mat<F>> = basis.iter().map(|x| el.mul(x)).collect();
        for ek in projections {
            for y in basis {
                let z = ek.mul(y).mul(el).mul(top);
                if z.is_zero() {
                    continue;
                }
                let zs: Vec<Mat<F>> = left.iter().map(|lx| lx.mul(ek).mul(&z)).collect();
                for r in 0..z.rows() {
                    for c in 0..z.cols() {
                        let row: Vec<F::Elem> = zs.iter().map(|m| m.get(r, c).clone()).collect();
                        if row.iter().any(|v| !f.is_zero(v)) {
                            eqs.push(row);
                        }
                    }
                }
            }
        }
    }
    Subspace::spanned_by(f, h, solve_homogeneous(f, h, eqs))
}

/// Builds `M`, `Ã = End(M)` with its radical and primitive idempotents, `e`
/// and the corner isomorphism `eÃe ≅ Λ`.
pub fn build_auslander<F: Field>(lambda: &Arc<Algebra<F>>) -> Result<AuslanderData<F>> {
    let f = lambda.field().clone();
    let n = lambda.radical_chain()?.nilpotency_index().max(1);
    let lambda_idem = lambda.primitive_idempotents()?.to_vec();
    let quotients = radical_quotients(lambda)?;
    let parts: Vec<Repn<F>> = quotients.iter().map(|(q, _)| q.clone()).collect();
    let m = direct_sum(lambda, &parts)?;
    let basis = hom_space(&m.module, &m.module)?;
    let mats = basis.matrices();

    // Local summands eᵥΛ/eᵥJⁱ cut out by left multiplication with eᵥ.
    let mut local = Vec::new();
    for (i, (_, w)) in quotients.iter().enumerate() {
        let s = w.section_matrix();
        let p = w.quotient_matrix();
        for e in &lambda_idem {
            let block = s.mul(&lambda.left_mult_matrix(e)).mul(&p);
            let x = m.projections[i]
                .matrix
                .mul(&block)
                .mul(&m.injections[i].matrix);
            local.push(x);
        }
    }
    let top = m.module.top()?.matrix;
    let j = structural_radical(&mats, &local, &top);
    let idem: Vec<Vec<F::Elem>> = local
        .iter()
        .map(|x| {
            basis.coords(x).ok_or_else(|| {
                Error::Decomposition("local projection is not an endomorphism".into())
            })
        })
        .collect::<Result<_>>()?;

    let table = endomorphism_table(&basis)?;
    let labels = (0..table.dim)
        .map(|s| format!("t{s}"))
        .collect::<Vec<String>>();
    let tilde =
        Algebra::with_verified_radical(table, labels, j, Some(idem), RadicalSource::Structural)?;
    let tilde = Arc::new(tilde);

    let last = n - 1;
    let lambda_inclusion = m.injections[last].matrix.clone();
    let lambda_projection = m.projections[last].matrix.clone();
    let e_mat = lambda_projection.mul(&lambda_inclusion);
    let e = basis
        .coords(&e_mat)
        .expect("projection onto a summand is an endomorphism");
    let corner = tilde.corner(&e)?;
    let end = Endomorphisms {
        module: m.module.clone(),
        algebra: tilde.clone(),
        basis,
    };
    let mut data = AuslanderData {
        lambda: lambda.clone(),
        n,
        m,
        end,
        e,
        corner,
        corner_iso: Mat::zeros(&f, 0, lambda.dim()),
        lambda_inclusion,
        lambda_projection,
        lambda_projectives: Projectives::new(lambda)?,
        tilde_projectives: Projectives::new(&tilde)?,
    };
    let rows: Vec<Vec<F::Elem>> = data
        .corner
        .embedding
        .row_vecs()
        .iter()
        .map(|a| data.corner_to_lambda(a))
        .collect();
    data.corner_iso = Mat::from_rows(&f, lambda.dim(), &rows);
    Ok(data)
}

/// Outcome of [`verify_auslander`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuslanderReport {
    pub n: usize,
    pub dim_lambda: usize,
    pub dim_m: usize,
    pub dim_tilde: usize,
    pub dim_corner: usize,
    /// `Σ dim Hom(Λ/Jⁱ, Λ/Jʲ)` from pairwise Hom computations.
    pub hom_dim_sum: usize,
    pub summand_dims: Vec<usize>,
    pub e: Vec<String>,
    pub radical_dims: Vec<usize>,
    pub gldim_tilde: GlobalDimension,
    /// Length of each simple's resolution (or `None` if not complete).
    pub simple_projective_dims: Vec<Option<usize>>,
    pub corner_iso_ok: bool,
    pub corner_failures: Vec<String>,
}

impl AuslanderReport {
    pub fn passed(&self) -> bool {
        self.corner_iso_ok && self.gldim_tilde.is_finite() && self.hom_dim_sum == self.dim_tilde
    }
}

/// Checks that `corner_iso` is an algebra isomorphism `eÃe → Λ`.
pub fn check_corner_iso<F: Field>(data: &AuslanderData<F>) -> Vec<String> {
    let mut failures = Vec::new();
    let lambda = &data.lambda;
    let c = &data.corner.algebra;
    let iso = &data.corner_iso;
    if iso.rows() != lambda.dim() || !iso.is_invertible() {
        failures.push(format!(
            "corner map {}×{} is not invertible",
            iso.rows(),
            iso.cols()
        ));
        return failures;
    }
    if iso.apply(c.unit()) != lambda.unit() {
        failures.push("unit of eÃe does not map to the unit of Λ".into());
    }
    for s in 0..c.dim() {
        for t in 0..c.dim() {
            let lhs = iso.apply(c.product(s, t));
            let rhs = lambda.mul(iso.row(s), iso.row(t));
            if lhs != rhs {
                failures.push(format!(
                    "multiplicativity fails on ({}, {})",
                    c.labels()[s],
                    c.labels()[t]
                ));
            }
        }
    }
    failures
}

/// Verifies `eÃe ≅ Λ`, the dimension count of `Ã` and `gldim Ã < ∞`.
pub fn verify_auslander<F: Field>(
    data: &AuslanderData<F>,
    max_depth: usize,
) -> Result<AuslanderReport> {
    let f = data.field();
    let parts: Vec<Repn<F>> = data.m.injections.iter().map(|i| i.source.clone()).collect();
    let mut hom_dim_sum = 0;
    for a in &parts {
        for b in &parts {
            hom_dim_sum += hom_space(a, b)?.dim();
        }
    }
    let (gldim, resolutions) = global_dimension_with(&data.tilde_projectives, max_depth)?;
    let corner_failures = check_corner_iso(data);
    Ok(AuslanderReport {
        n: data.n,
        dim_lambda: data.lambda.dim(),
        dim_m: data.module().dim(),
        dim_tilde: data.tilde().dim(),
        dim_corner: data.corner.algebra.dim(),
        hom_dim_sum,
        summand_dims: parts.iter().map(Repn::dim).collect(),
        e: data.e.iter().map(|x| f.format(x)).collect(),
        radical_dims: data.tilde().radical_chain()?.dims(),
        gldim_tilde: gldim,
        simple_projective_dims: resolutions
            .iter()
            .map(|r| r.projective_dimension())
            .collect(),
        corner_iso_ok: corner_failures.is_empty(),
        corner_failures,
    })
}

/// Default resolution depth over `Ã`: `n + 2`.
pub fn default_max_depth<F: Field>(data: &AuslanderData<F>) -> usize {
    data.n + 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{split_semisimple_algebra, truncated_polynomial, upper_triangular_2};
    use crate::field::{PrimeField, Rationals};

    fn check<F: Field>(lambda: Algebra<F>, dims: (usize, usize, usize), gldim: usize) {
        let lambda = Arc::new(lambda);
        let data = build_auslander(&lambda).unwrap();
        assert_eq!(
            (
                data.module().dim(),
                data.tilde().dim(),
                data.corner.algebra.dim()
            ),
            dims
        );
        let report = verify_auslander(&data, default_max_depth(&data)).unwrap();
        assert!(report.corner_iso_ok, "{:?}", report.corner_failures);
        assert_eq!(report.hom_dim_sum, report.dim_tilde);
        assert_eq!(report.gldim_tilde, GlobalDimension::Finite { dim: gldim });
        for l in 0..lambda.dim() {
            let b = lambda.basis_element(l);
            assert_eq!(data.corner_to_lambda(&data.lambda_to_corner(&b)), b);
        }
    }

    #[test]
    fn truncated_polynomials() {
        check(
            truncated_polynomial(&PrimeField::new(5).unwrap(), 2),
            (3, 5, 2),
            2,
        );
        check(
            truncated_polynomial(&PrimeField::new(2).unwrap(), 2),
            (3, 5, 2),
            2,
        );
        check(
            truncated_polynomial(&PrimeField::new(7).unwrap(), 3),
            (6, 14, 3),
            2,
        );
        check(truncated_polynomial(&Rationals, 3), (6, 14, 3), 2);
    }

    #[test]
    fn semisimple_and_hereditary() {
        let f = PrimeField::new(3).unwrap();
        check(split_semisimple_algebra(&f, 1), (1, 1, 1), 0);
        check(split_semisimple_algebra(&f, 2), (2, 2, 2), 0);
        let t2 = Arc::new(upper_triangular_2(&f));
        let data = build_auslander(&t2).unwrap();
        assert_eq!(data.n, 2);
        let report = verify_auslander(&data, 4).unwrap();
        assert!(report.passed());
    }
}
