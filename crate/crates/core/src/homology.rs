//! Minimal projective resolutions, Ext, global dimension and injectivity.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Mat;
use crate::modules::{
    hom_space, is_isomorphic, projective_cover, IsoBudget, ModHom, Projectives, Repn,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ResolutionStatus {
    /// `P_length → … → P₀ → M → 0` with zero next syzygy.
    Complete {
        length: usize,
    },
    /// `Ω^{offset+period} M ≅ Ω^{offset} M`, a nonzero module: infinite
    /// projective dimension.
    Periodic {
        period: usize,
        offset: usize,
    },
    Truncated {
        depth: usize,
        note: Option<String>,
    },
}

/// `… → P₁ → P₀ → M → 0`.
#[derive(Clone, Debug)]
pub struct ProjResolution<F: Field> {
    pub module: Repn<F>,
    pub terms: Vec<Repn<F>>,
    /// `differentials[i]: P_{i+1} → P_i`.
    pub differentials: Vec<ModHom<F>>,
    pub augmentation: ModHom<F>,
    /// Idempotent indices of the summands of each term.
    pub summands: Vec<Vec<usize>>,
    /// `syzygies[i] = Ωⁱ M` (kernel inclusions into `P_{i-1}` for `i ≥ 1`).
    pub syzygies: Vec<Repn<F>>,
    pub status: ResolutionStatus,
}

impl<F: Field> ProjResolution<F> {
    pub fn projective_dimension(&self) -> Option<usize> {
        match self.status {
            ResolutionStatus::Complete { length } => Some(length),
            _ => None,
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.status, ResolutionStatus::Periodic { .. })
    }
}

/// Minimal projective resolution by iterated projective covers.
///
/// Stops when a syzygy vanishes, when a syzygy is isomorphic to an earlier
/// one (if `detect_periodicity`), or after `max_depth + 1` terms.
pub fn projective_resolution<F: Field>(
    m: &Repn<F>,
    proj: &Projectives<F>,
    max_depth: usize,
    detect_periodicity: bool,
) -> Result<ProjResolution<F>> {
    let mut res = ProjResolution {
        module: m.clone(),
        terms: Vec::new(),
        differentials: Vec::new(),
        augmentation: ModHom::zero(&Repn::zero(m.algebra()), m),
        summands: Vec::new(),
        syzygies: Vec::new(),
        status: ResolutionStatus::Complete { length: 0 },
    };
    // The current syzygy with its inclusion into the previous term.
    let mut current = ModHom::identity(m);
    for i in 0usize.. {
        let k = current.source.clone();
        res.syzygies.push(k.clone());
        if k.is_zero() {
            res.status = ResolutionStatus::Complete {
                length: i.saturating_sub(1),
            };
            return Ok(res);
        }
        if detect_periodicity && i > 0 {
            for j in 0..i {
                match is_isomorphic(&k, &res.syzygies[j], IsoBudget::default()) {
                    Ok(Some(_)) => {
                        res.status = ResolutionStatus::Periodic {
                            period: i - j,
                            offset: j,
                        };
                        return Ok(res);
                    }
                    Ok(None) => {}
                    Err(Error::Inconclusive(msg)) => {
                        res.status = ResolutionStatus::Truncated {
                            depth: i,
                            note: Some(format!(
                                "periodicity check against syzygy {j} inconclusive: {msg}"
                            )),
                        };
                        return Ok(res);
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        if i > max_depth {
            res.status = ResolutionStatus::Truncated {
                depth: max_depth,
                note: None,
            };
            return Ok(res);
        }
        let cover = projective_cover(&k, proj)?;
        let to_prev = cover.map.then(&current);
        if i == 0 {
            res.augmentation = to_prev;
        } else {
            res.differentials.push(to_prev);
        }
        res.terms.push(cover.map.source.clone());
        res.summands.push(cover.summands);
        current = cover.map.kernel();
    }
    unreachable!()
}

/// `dim Extⁱ(M, N)` from any projective resolution given by its terms and
/// differentials (`diffs[j]: P_{j+1} → P_j`), which must reach `P_{i+1}` or be
/// complete.
pub fn ext_from_resolution<F: Field>(
    terms: &[Repn<F>],
    diffs: &[ModHom<F>],
    n: &Repn<F>,
    i: usize,
) -> Result<usize> {
    if i >= terms.len() {
        return Ok(0);
    }
    // δ_j: Hom(P_j, N) → Hom(P_{j+1}, N), f ↦ f∘d.
    let delta_rank = |j: usize| -> Result<(usize, usize)> {
        let src = hom_space(&terms[j], n)?;
        if j >= diffs.len() {
            return Ok((src.dim(), 0));
        }
        let tgt = hom_space(&diffs[j].source, n)?;
        let rows: Vec<Vec<F::Elem>> = src
            .matrices()
            .iter()
            .map(|f| {
                tgt.coords(&diffs[j].matrix.mul(f))
                    .expect("f∘d is a homomorphism")
            })
            .collect();
        let r = Mat::from_rows(n.field(), tgt.dim(), &rows).rank();
        Ok((src.dim(), r))
    };
    let (dim_i, rank_i) = delta_rank(i)?;
    let rank_prev = if i == 0 { 0 } else { delta_rank(i - 1)?.1 };
    Ok(dim_i - rank_i - rank_prev)
}

/// `dim Extⁱ(M, N)`.
pub fn ext_dim<F: Field>(
    m: &Repn<F>,
    n: &Repn<F>,
    i: usize,
    proj: &Projectives<F>,
) -> Result<usize> {
    let res = projective_resolution(m, proj, i + 1, false)?;
    if let ResolutionStatus::Truncated { depth, .. } = res.status {
        if res.terms.len() < i + 2 {
            return Err(Error::Truncated {
                depth,
                needed: i + 1,
            });
        }
    }
    ext_from_resolution(&res.terms, &res.differentials, n, i)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GlobalDimension {
    Finite {
        dim: usize,
    },
    /// The simple with idempotent index `simple` has a periodic syzygy.
    Infinite {
        simple: usize,
        period: usize,
        offset: usize,
    },
    Unknown {
        bound: usize,
    },
}

impl GlobalDimension {
    pub fn is_finite(&self) -> bool {
        matches!(self, GlobalDimension::Finite { .. })
    }
    pub fn is_infinite(&self) -> bool {
        matches!(self, GlobalDimension::Infinite { .. })
    }
}

impl core::fmt::Display for GlobalDimension {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GlobalDimension::Finite { dim } => write!(f, "finite({dim})"),
            GlobalDimension::Infinite {
                simple,
                period,
                offset,
            } => {
                write!(
                    f,
                    "infinite(simple {simple}, period {period}, offset {offset})"
                )
            }
            GlobalDimension::Unknown { bound } => write!(f, "unknown(> {bound})"),
        }
    }
}

/// Global dimension with the resolutions of the simples as certificates.
pub fn global_dimension_with<F: Field>(
    proj: &Projectives<F>,
    max_depth: usize,
) -> Result<(GlobalDimension, Vec<ProjResolution<F>>)> {
    let mut resolutions = Vec::new();
    let mut finite = 0;
    let mut undecided = false;
    let mut infinite = None;
    for &k in &proj.representatives {
        let res = projective_resolution(&proj.simples[k], proj, max_depth, true)?;
        match res.status {
            ResolutionStatus::Complete { length } => finite = finite.max(length),
            ResolutionStatus::Periodic { period, offset } => {
                if infinite.is_none() {
                    infinite = Some(GlobalDimension::Infinite {
                        simple: k,
                        period,
                        offset,
                    });
                }
            }
            ResolutionStatus::Truncated { .. } => undecided = true,
        }
        resolutions.push(res);
    }
    let verdict = match infinite {
        Some(v) => v,
        None if undecided => GlobalDimension::Unknown { bound: max_depth },
        None => GlobalDimension::Finite { dim: finite },
    };
    Ok((verdict, resolutions))
}

pub fn global_dimension<F: Field>(
    algebra: &Arc<Algebra<F>>,
    max_depth: usize,
) -> Result<GlobalDimension> {
    let proj = Projectives::new(algebra)?;
    Ok(global_dimension_with(&proj, max_depth)?.0)
}

/// `M` is injective iff `Ext¹(S, M) = 0` for every simple `S`.
pub fn is_injective<F: Field>(m: &Repn<F>, proj: &Projectives<F>) -> Result<bool> {
    for &k in &proj.representatives {
        if ext_dim(&proj.simples[k], m, 1, proj)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_self_injective<F: Field>(algebra: &Arc<Algebra<F>>) -> Result<bool> {
    let proj = Projectives::new(algebra)?;
    is_injective(&Repn::regular(algebra), &proj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{split_semisimple_algebra, truncated_polynomial, upper_triangular_2};
    use crate::field::PrimeField;
    use crate::modules::direct_sum;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    #[test]
    fn resolutions() {
        let a = Arc::new(truncated_polynomial(&f3(), 2));
        let proj = Projectives::new(&a).unwrap();
        let reg = Repn::regular(&a);
        let r = projective_resolution(&reg, &proj, 4, true).unwrap();
        assert_eq!(r.status, ResolutionStatus::Complete { length: 0 });
        let s = &proj.simples[0];
        let r = projective_resolution(s, &proj, 4, true).unwrap();
        assert_eq!(
            r.status,
            ResolutionStatus::Periodic {
                period: 1,
                offset: 0
            }
        );
        let r = projective_resolution(s, &proj, 3, false).unwrap();
        assert_eq!(r.terms.len(), 4);
        for w in r.differentials.windows(2) {
            assert!(w[1].then(&w[0]).is_zero());
        }

        let t = Arc::new(upper_triangular_2(&f3()));
        let proj = Projectives::new(&t).unwrap();
        for s in &proj.simples {
            let r = projective_resolution(s, &proj, 4, true).unwrap();
            assert!(r.projective_dimension().unwrap() <= 1);
        }
    }

    #[test]
    fn ext_examples() {
        let a = Arc::new(truncated_polynomial(&f3(), 2));
        let proj = Projectives::new(&a).unwrap();
        let s = &proj.simples[0];
        let reg = Repn::regular(&a);
        assert_eq!(ext_dim(s, s, 0, &proj).unwrap(), 1);
        assert_eq!(ext_dim(s, s, 1, &proj).unwrap(), 1);
        assert_eq!(ext_dim(s, s, 2, &proj).unwrap(), 1);
        assert_eq!(ext_dim(&reg, s, 1, &proj).unwrap(), 0);
        assert_eq!(ext_dim(s, &reg, 1, &proj).unwrap(), 0);
    }

    #[test]
    fn ext_ignores_non_minimal_resolution() {
        let a = Arc::new(truncated_polynomial(&f3(), 3));
        let proj = Projectives::new(&a).unwrap();
        let s = proj.simples[0].clone();
        let res = projective_resolution(&s, &proj, 3, false).unwrap();
        // Add P → P (identity) in degrees 1 and 2.
        let p = proj.projectives[0].clone();
        let mut terms = res.terms.clone();
        let mut diffs = res.differentials.clone();
        let t1 = direct_sum(&a, &[terms[1].clone(), p.clone()]).unwrap();
        let t2 = direct_sum(&a, &[terms[2].clone(), p.clone()]).unwrap();
        let d1 = t1.projections[0].then(&diffs[0]);
        let d2 = t2.projections[0]
            .then(&diffs[1])
            .then(&t1.injections[0])
            .add(&t2.projections[1].then(&t1.injections[1]));
        let d3 = diffs[2].then(&t2.injections[0]);
        terms[1] = t1.module;
        terms[2] = t2.module;
        diffs[0] = d1;
        diffs[1] = d2;
        diffs[2] = d3;
        for n in [s.clone(), Repn::regular(&a)] {
            for i in 0..=2 {
                assert_eq!(
                    ext_from_resolution(&terms, &diffs, &n, i).unwrap(),
                    ext_from_resolution(&res.terms, &res.differentials, &n, i).unwrap()
                );
            }
        }
    }

    #[test]
    fn global_dimensions() {
        let f = f3();
        let k2 = Arc::new(split_semisimple_algebra(&f, 2));
        assert_eq!(
            global_dimension(&k2, 4).unwrap(),
            GlobalDimension::Finite { dim: 0 }
        );
        let a = Arc::new(truncated_polynomial(&f, 2));
        assert!(global_dimension(&a, 4).unwrap().is_infinite());
        let t = Arc::new(upper_triangular_2(&f));
        assert_eq!(
            global_dimension(&t, 4).unwrap(),
            GlobalDimension::Finite { dim: 1 }
        );
    }

    #[test]
    fn self_injectivity() {
        let f = f3();
        assert!(is_self_injective(&Arc::new(truncated_polynomial(&f, 2))).unwrap());
        assert!(is_self_injective(&Arc::new(truncated_polynomial(&f, 3))).unwrap());
        assert!(!is_self_injective(&Arc::new(upper_triangular_2(&f))).unwrap());
        let k2 = Arc::new(split_semisimple_algebra(&f, 2));
        let proj = Projectives::new(&k2).unwrap();
        assert!(is_injective(&proj.simples[0], &proj).unwrap());
    }
}
