//! Seeded random modules, homomorphisms and complexes for property suites.
//! Every sample is a pure function of its RNG stream.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::auslander::AuslanderData;
use crate::complexes::{cone, kb_hom, BComplex, ChainMap};
use crate::field::Field;
use crate::homology::projective_resolution;
use crate::linalg::{Mat, Subspace};
use crate::modules::{direct_sum, hom_space, ModHom, Projectives, Repn};

/// Size limits for random complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_window: usize,
    pub max_term_dim: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            max_window: 4,
            max_term_dim: 12,
        }
    }
}

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The RNG for sample `index` of suite `suite` under `seed`.
pub fn sample_rng(seed: u64, suite: u64, index: u64) -> ChaCha8Rng {
    let s = splitmix64(splitmix64(splitmix64(seed) ^ suite) ^ index);
    ChaCha8Rng::seed_from_u64(s)
}

/// A random scalar: uniform over `F_p`, a small integer over `Q`.
pub fn scalar<F: Field, R: Rng + ?Sized>(f: &F, rng: &mut R) -> F::Elem {
    match f.order() {
        Some(_) => f.sample(rng),
        None => f.from_i64(rng.gen_range(-2..=2)),
    }
}

pub fn vector<F: Field, R: Rng + ?Sized>(f: &F, n: usize, rng: &mut R) -> Vec<F::Elem> {
    (0..n).map(|_| scalar(f, rng)).collect()
}

/// A random element of a Hom space.
pub fn hom<F: Field, R: Rng + ?Sized>(m: &Repn<F>, n: &Repn<F>, rng: &mut R) -> ModHom<F> {
    let h = hom_space(m, n).expect("same algebra");
    let c = vector(m.field(), h.dim(), rng);
    ModHom {
        source: m.clone(),
        target: n.clone(),
        matrix: h.element(&c),
    }
}

fn random_projective<F: Field, R: Rng + ?Sized>(
    algebra: &Arc<Algebra<F>>,
    proj: &Projectives<F>,
    max_dim: usize,
    rng: &mut R,
) -> Repn<F> {
    let mut parts = Vec::new();
    let mut dim = 0;
    let count = rng.gen_range(1..=2);
    for _ in 0..count {
        let k = rng.gen_range(0..proj.len());
        let p = &proj.projectives[k];
        if dim + p.dim() <= max_dim {
            dim += p.dim();
            parts.push(p.clone());
        }
    }
    direct_sum(algebra, &parts).expect("same algebra").module
}

/// A random module of dimension at most `max_dim`: a quotient or a cyclic
/// submodule of a projective, a simple, or a sum of two such.
pub fn module<F: Field, R: Rng + ?Sized>(
    algebra: &Arc<Algebra<F>>,
    proj: &Projectives<F>,
    max_dim: usize,
    rng: &mut R,
) -> Repn<F> {
    let f = algebra.field();
    let one = |rng: &mut R, cap: usize| -> Repn<F> {
        match rng.gen_range(0..4) {
            0 => proj.simples[rng.gen_range(0..proj.len())].clone(),
            1 => {
                let p = random_projective(algebra, proj, cap, rng);
                let gens = (0..rng.gen_range(1..=2))
                    .map(|_| vector(f, p.dim(), rng))
                    .collect::<Vec<_>>();
                let w = p.generated(gens);
                p.submodule_unchecked(&w).source
            }
            _ => {
                let p = random_projective(algebra, proj, cap, rng);
                let gens = (0..rng.gen_range(0..=2))
                    .map(|_| vector(f, p.dim(), rng))
                    .collect::<Vec<_>>();
                let w = p.generated(gens);
                p.quotient_unchecked(&w).target
            }
        }
    };
    let a = one(rng, max_dim);
    if a.dim() < max_dim && rng.gen_bool(0.25) {
        let b = one(rng, max_dim - a.dim());
        if a.dim() + b.dim() <= max_dim {
            return direct_sum(algebra, &[a, b]).expect("same algebra").module;
        }
    }
    if a.dim() > max_dim {
        return proj.simples[0].clone();
    }
    a
}

/// Differentials with `∂∘∂ = 0` on the given terms, built from the top
/// degree down so that each map lands in the next kernel.
fn random_differentials<F: Field, R: Rng + ?Sized>(terms: &[Repn<F>], rng: &mut R) -> Vec<Mat<F>> {
    let n = terms.len();
    let mut diffs: Vec<Mat<F>> = vec![Mat::zeros(terms[0].field(), 0, 0); n.saturating_sub(1)];
    for k in (0..n.saturating_sub(1)).rev() {
        let target = if k + 1 < n - 1 {
            let d = &diffs[k + 1];
            let kernel = Subspace::spanned_by(
                terms[k + 1].field(),
                d.rows(),
                d.left_nullspace().row_vecs(),
            );
            terms[k + 1].submodule_unchecked(&kernel)
        } else {
            ModHom::identity(&terms[k + 1])
        };
        let h = if rng.gen_bool(0.85) {
            hom(&terms[k], &target.source, rng)
        } else {
            ModHom::zero(&terms[k], &target.source)
        };
        diffs[k] = h.matrix.mul(&target.matrix);
    }
    diffs
}

fn window<R: Rng + ?Sized>(bounds: Bounds, rng: &mut R) -> (i32, usize) {
    let len = rng.gen_range(1..=bounds.max_window.max(1));
    (rng.gen_range(-2..=1), len)
}

fn plain_complex<F: Field, R: Rng + ?Sized>(
    algebra: &Arc<Algebra<F>>,
    proj: &Projectives<F>,
    bounds: Bounds,
    projective: bool,
    rng: &mut R,
) -> BComplex<F> {
    let (lo, len) = window(bounds, rng);
    let terms: Vec<Repn<F>> = (0..len)
        .map(|_| {
            if projective {
                random_projective(algebra, proj, bounds.max_term_dim, rng)
            } else {
                module(algebra, proj, bounds.max_term_dim, rng)
            }
        })
        .collect();
    let diffs = random_differentials(&terms, rng);
    BComplex::new_unchecked(algebra, lo, terms, diffs)
}

/// A random chain map `C → D` (uniform over the chain-map space).
pub fn chain_map<F: Field, R: Rng + ?Sized>(
    c: &BComplex<F>,
    d: &BComplex<F>,
    rng: &mut R,
) -> ChainMap<F> {
    let kb = kb_hom(c, d).expect("same algebra");
    let coeffs = vector(c.field(), kb.cycles.dim(), rng);
    kb.chain_map(&kb.cycles.from_coords(&coeffs))
}

fn fits<F: Field>(c: &BComplex<F>, bounds: Bounds) -> bool {
    c.len() <= bounds.max_window + 1 && c.terms().iter().all(|t| t.dim() <= bounds.max_term_dim)
}

/// A random bounded complex: a plain complex with random differentials, the
/// cone of a random chain map between two such, or a truncated projective
/// resolution.
pub fn complex<F: Field, R: Rng + ?Sized>(
    algebra: &Arc<Algebra<F>>,
    proj: &Projectives<F>,
    bounds: Bounds,
    rng: &mut R,
) -> BComplex<F> {
    match rng.gen_range(0..5) {
        0 => {
            let small = Bounds {
                max_window: (bounds.max_window / 2).max(1),
                max_term_dim: (bounds.max_term_dim / 2).max(1),
            };
            let c = plain_complex(algebra, proj, small, false, rng);
            let d = plain_complex(algebra, proj, small, false, rng);
            let k = cone(&chain_map(&c, &d, rng)).complex.trimmed();
            if fits(&k, bounds) && !k.is_empty() {
                return k;
            }
            plain_complex(algebra, proj, bounds, false, rng)
        }
        1 => resolution_complex(algebra, proj, bounds, rng),
        _ => plain_complex(algebra, proj, bounds, false, rng),
    }
}

/// A brutally truncated minimal projective resolution of a random module.
fn resolution_complex<F: Field, R: Rng + ?Sized>(
    algebra: &Arc<Algebra<F>>,
    proj: &Projectives<F>,
    bounds: Bounds,
    rng: &mut R,
) -> BComplex<F> {
    let m = module(algebra, proj, bounds.max_term_dim, rng);
    let depth = bounds.max_window.max(1) - 1;
    let res = projective_resolution(&m, proj, depth, false).expect("projectives are available");
    let terms: Vec<Repn<F>> = res
        .terms
        .iter()
        .rev()
        .filter(|t| t.dim() <= bounds.max_term_dim)
        .cloned()
        .collect();
    if terms.len() != res.terms.len() || terms.is_empty() {
        return plain_complex(algebra, proj, bounds, true, rng);
    }
    let diffs = res
        .differentials
        .iter()
        .rev()
        .map(|d| d.matrix.clone())
        .collect();
    let lo = -(terms.len() as i32 - 1) + rng.gen_range(0..=1);
    BComplex::new_unchecked(algebra, lo, terms, diffs)
}

/// A random bounded complex of projective modules.
pub fn projective_complex<F: Field, R: Rng + ?Sized>(
    algebra: &Arc<Algebra<F>>,
    proj: &Projectives<F>,
    bounds: Bounds,
    rng: &mut R,
) -> BComplex<F> {
    match rng.gen_range(0..4) {
        0 => resolution_complex(algebra, proj, bounds, rng),
        1 => {
            let small = Bounds {
                max_window: (bounds.max_window / 2).max(1),
                max_term_dim: (bounds.max_term_dim / 2).max(1),
            };
            let c = plain_complex(algebra, proj, small, true, rng);
            let d = plain_complex(algebra, proj, small, true, rng);
            let k = cone(&chain_map(&c, &d, rng)).complex.trimmed();
            if fits(&k, bounds) && !k.is_empty() {
                return k;
            }
            plain_complex(algebra, proj, bounds, true, rng)
        }
        _ => plain_complex(algebra, proj, bounds, true, rng),
    }
}

/// A random complex over `Ã` with every term in `mod₀` (killed by `e`): a
/// random complex modulo the subcomplex generated by its `e`-parts.
pub fn mod0_complex<F: Field, R: Rng + ?Sized>(
    data: &AuslanderData<F>,
    bounds: Bounds,
    rng: &mut R,
) -> BComplex<F> {
    let c = complex(data.tilde(), &data.tilde_projectives, bounds, rng);
    let subs: Vec<Subspace<F>> = c
        .terms()
        .iter()
        .map(|t| t.generated(t.element_action(&data.e).row_vecs()))
        .collect();
    let projs: Vec<ModHom<F>> = c
        .terms()
        .iter()
        .zip(&subs)
        .map(|(t, s)| t.quotient_unchecked(s))
        .collect();
    let terms = projs.iter().map(|p| p.target.clone()).collect();
    let diffs = (0..c.diffs().len())
        .map(|k| {
            subs[k]
                .section_matrix()
                .mul(&c.diffs()[k])
                .mul(&projs[k + 1].matrix)
        })
        .collect();
    BComplex::new_unchecked(data.tilde(), c.lo(), terms, diffs)
}
