//! Independent cross-check complexes: the Chevalley-Eilenberg complex of a
//! Lie algebra with trivial coefficients, and the normalized bar complex of
//! an associative algebra with coefficients in a bimodule.
//!
//! These are deliberately coded against the raw data (bracket tables,
//! structure constants, module actions) with their own enumeration and
//! differential loops, sharing nothing with the small-complex machinery they
//! are used to validate.

use itertools::Itertools;

use crate::data::RingData;
use crate::element::ABasisId;
use crate::linalg::SparseMatrix;
use crate::module::{MValue, ModuleCtx, ModuleData};
use crate::scalar::FieldKind;

// ---------------------------------------------------------------------------
// Chevalley-Eilenberg (trivial coefficients)
// ---------------------------------------------------------------------------

fn wedge_list(d: usize, s: usize) -> Vec<Vec<usize>> {
    (0..d).combinations(s).collect()
}

fn wedge_position(list: &[Vec<usize>], w: &[usize]) -> usize {
    list.binary_search_by(|probe| probe.as_slice().cmp(w))
        .expect("wedge not in basis")
}

/// Inserts `k` in front of a sorted wedge; `None` on repeats, otherwise the
/// number of transpositions and the sorted result.
fn sort_in(k: usize, rest: &[usize]) -> Option<(usize, Vec<usize>)> {
    if rest.contains(&k) {
        return None;
    }
    let pos = rest.iter().take_while(|x| **x < k).count();
    let mut out = Vec::with_capacity(rest.len() + 1);
    out.extend_from_slice(&rest[..pos]);
    out.push(k);
    out.extend_from_slice(&rest[pos..]);
    Some((pos, out))
}

/// Matrix of the Lie homology boundary `Λ^s g -> Λ^{s-1} g` with trivial
/// coefficients: `x_1∧...∧x_s -> Σ_{i<j} (-1)^{i+j} [x_i,x_j]∧(rest)`.
pub fn ce_boundary_matrix(data: &RingData, s: usize) -> SparseMatrix {
    let d = data.lie.dim;
    let field = data.field;
    let source = wedge_list(d, s);
    let target = wedge_list(d, s.saturating_sub(1));
    let mut triplets = Vec::new();
    if s >= 2 {
        for (col, w) in source.iter().enumerate() {
            for i in 1..=s {
                for j in (i + 1)..=s {
                    let mut rest = w.clone();
                    rest.remove(j - 1);
                    rest.remove(i - 1);
                    for (k, c) in data.bracket(w[i - 1], w[j - 1]).iter() {
                        if let Some((moves, sorted)) = sort_in(*k, &rest) {
                            let row = wedge_position(&target, &sorted);
                            let sgn = crate::complexes::sign(field, i + j + moves);
                            triplets.push((row, col, sgn.mul(c)));
                        }
                    }
                }
            }
        }
    }
    SparseMatrix::from_triplets(target.len(), source.len(), field, triplets)
}

/// Matrix of the Lie cohomology differential `C^s -> C^{s+1}` with trivial
/// coefficients (the transpose of the boundary one degree up).
pub fn ce_coboundary_matrix(data: &RingData, s: usize) -> SparseMatrix {
    ce_boundary_matrix(data, s + 1).transpose()
}

/// Lie algebra cohomology dimensions with trivial coefficients, `0..=nmax`.
pub fn ce_cohomology_betti(data: &RingData, nmax: usize) -> Vec<usize> {
    let d = data.lie.dim;
    (0..=nmax)
        .map(|n| {
            let dim = wedge_list(d, n).len();
            let out = ce_coboundary_matrix(data, n).rank();
            let inc = if n == 0 {
                0
            } else {
                ce_coboundary_matrix(data, n - 1).rank()
            };
            dim - out - inc
        })
        .collect()
}

/// Lie algebra homology dimensions with trivial coefficients, `0..=nmax`.
pub fn ce_homology_betti(data: &RingData, nmax: usize) -> Vec<usize> {
    let d = data.lie.dim;
    (0..=nmax)
        .map(|n| {
            let dim = wedge_list(d, n).len();
            let out = ce_boundary_matrix(data, n).rank();
            let inc = ce_boundary_matrix(data, n + 1).rank();
            dim - out - inc
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Normalized bar complex of A with coefficients in a bimodule
// ---------------------------------------------------------------------------

/// Basis of `A/k·1`: the non-unit basis indices.
fn reduced_basis(data: &RingData) -> Vec<usize> {
    let alg = data.finite_algebra().expect("bar oracle needs finite A");
    (0..alg.dim).filter(|i| *i != alg.unit).collect()
}

fn bar_words(data: &RingData, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let basis = reduced_basis(data);
    (0..n)
        .map(|_| basis.clone())
        .multi_cartesian_product()
        .collect()
}

/// Class of a product `e_i * e_j` in `A/k·1` as (basis index, coefficient)
/// pairs over the non-unit basis.
fn reduced_product(data: &RingData, i: usize, j: usize) -> Vec<(usize, crate::scalar::Scalar)> {
    let alg = data.finite_algebra().unwrap();
    alg.mul[i][j]
        .iter()
        .filter(|(k, _)| *k != alg.unit)
        .map(|(k, c)| (*k, c.clone()))
        .collect()
}

fn word_position(words: &[Vec<usize>], w: &[usize]) -> usize {
    words
        .binary_search_by(|probe| probe.as_slice().cmp(w))
        .expect("word not in basis")
}

/// Matrix of the normalized bar cochain differential
/// `Hom((A/k)^n, M) -> Hom((A/k)^{n+1}, M)`.
pub fn bar_coboundary_matrix(
    data: &RingData,
    module: &ModuleData,
    n: usize,
) -> SparseMatrix {
    let field = data.field;
    let ctx = ModuleCtx::new(data, module);
    let mdim = module.finite().expect("bar oracle needs finite M").dim;
    let mut source = bar_words(data, n);
    source.sort();
    let mut target = bar_words(data, n + 1);
    target.sort();
    let mut triplets = Vec::new();
    let mut add = |row_word: usize, nu: usize, col_word: usize, mu: usize, c: crate::scalar::Scalar| {
        triplets.push((row_word * mdim + nu, col_word * mdim + mu, c));
    };
    for (ti, w) in target.iter().enumerate() {
        // a_1 . phi(a_2 .. a_{n+1})
        let head = w[0];
        let tail = word_position(&source, &w[1..]);
        for mu in 0..mdim {
            let MValue::Fin(v) = ctx.left_by_id(&ABasisId::Idx(head), &ctx.basis_value(mu))
            else {
                unreachable!()
            };
            for (nu, c) in v.iter() {
                add(ti, *nu, tail, mu, c.clone());
            }
        }
        // inner products
        for i in 1..=n {
            for (k, c) in reduced_product(data, w[i - 1], w[i]) {
                let mut merged = Vec::with_capacity(n);
                merged.extend_from_slice(&w[..i - 1]);
                merged.push(k);
                merged.extend_from_slice(&w[i + 1..]);
                let si = word_position(&source, &merged);
                let sgn = crate::complexes::sign(field, i).mul(&c);
                for mu in 0..mdim {
                    add(ti, mu, si, mu, sgn.clone());
                }
            }
        }
        // (-1)^{n+1} phi(a_1 .. a_n) . a_{n+1}
        let last = w[n];
        let headw = word_position(&source, &w[..n]);
        let sgn = crate::complexes::sign(field, n + 1);
        for mu in 0..mdim {
            let MValue::Fin(v) = ctx.right_by_id(&ABasisId::Idx(last), &ctx.basis_value(mu))
            else {
                unreachable!()
            };
            for (nu, c) in v.iter() {
                add(ti, *nu, headw, mu, sgn.mul(c));
            }
        }
    }
    SparseMatrix::from_triplets(
        target.len() * mdim,
        source.len() * mdim,
        field,
        triplets,
    )
}

/// Matrix of the normalized bar chain boundary
/// `M ⊗ (A/k)^n -> M ⊗ (A/k)^{n-1}`.
pub fn bar_boundary_matrix(data: &RingData, module: &ModuleData, n: usize) -> SparseMatrix {
    let field = data.field;
    let ctx = ModuleCtx::new(data, module);
    let mdim = module.finite().expect("bar oracle needs finite M").dim;
    let mut source = bar_words(data, n);
    source.sort();
    let mut target = bar_words(data, n.saturating_sub(1));
    target.sort();
    let mut triplets = Vec::new();
    if n >= 1 {
        for (si, w) in source.iter().enumerate() {
            // m a_1 ⊗ rest
            let ti = word_position(&target, &w[1..]);
            for mu in 0..mdim {
                let MValue::Fin(v) = ctx.right_by_id(&ABasisId::Idx(w[0]), &ctx.basis_value(mu))
                else {
                    unreachable!()
                };
                for (nu, c) in v.iter() {
                    triplets.push((ti * mdim + nu, si * mdim + mu, c.clone()));
                }
            }
            // inner products
            for i in 1..n {
                for (k, c) in reduced_product(data, w[i - 1], w[i]) {
                    let mut merged = Vec::with_capacity(n - 1);
                    merged.extend_from_slice(&w[..i - 1]);
                    merged.push(k);
                    merged.extend_from_slice(&w[i + 1..]);
                    let ti = word_position(&target, &merged);
                    let sgn = crate::complexes::sign(field, i).mul(&c);
                    for mu in 0..mdim {
                        triplets.push((ti * mdim + mu, si * mdim + mu, sgn.clone()));
                    }
                }
            }
            // (-1)^n a_n m ⊗ a_1 .. a_{n-1}
            let ti = word_position(&target, &w[..n - 1]);
            let sgn = crate::complexes::sign(field, n);
            for mu in 0..mdim {
                let MValue::Fin(v) =
                    ctx.left_by_id(&ABasisId::Idx(w[n - 1]), &ctx.basis_value(mu))
                else {
                    unreachable!()
                };
                for (nu, c) in v.iter() {
                    triplets.push((ti * mdim + nu, si * mdim + mu, sgn.mul(c)));
                }
            }
        }
    }
    SparseMatrix::from_triplets(
        target.len() * mdim,
        source.len() * mdim,
        field,
        triplets,
    )
}

/// Hochschild cohomology dimensions of `A` with coefficients in `M` via the
/// normalized bar complex.
pub fn bar_cohomology_betti(data: &RingData, module: &ModuleData, nmax: usize) -> Vec<usize> {
    let mdim = module.finite().unwrap().dim;
    (0..=nmax)
        .map(|n| {
            let dim = bar_words(data, n).len() * mdim;
            let out = bar_coboundary_matrix(data, module, n).rank();
            let inc = if n == 0 {
                0
            } else {
                bar_coboundary_matrix(data, module, n - 1).rank()
            };
            dim - out - inc
        })
        .collect()
}

/// Hochschild homology dimensions of `A` with coefficients in `M` via the
/// normalized bar complex.
pub fn bar_homology_betti(data: &RingData, module: &ModuleData, nmax: usize) -> Vec<usize> {
    let mdim = module.finite().unwrap().dim;
    (0..=nmax)
        .map(|n| {
            let dim = bar_words(data, n).len() * mdim;
            let out = bar_boundary_matrix(data, module, n).rank();
            let inc = bar_boundary_matrix(data, module, n + 1).rank();
            dim - out - inc
        })
        .collect()
}

/// Field used by the oracle matrices (handy for callers writing reports).
pub fn oracle_field(data: &RingData) -> FieldKind {
    data.field
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn q() -> FieldKind {
        FieldKind::Rationals
    }

    #[test]
    fn ce_abelian_is_binomial() {
        let data = presets::abelian(q(), 4);
        assert_eq!(ce_cohomology_betti(&data, 4), vec![1, 4, 6, 4, 1]);
        assert_eq!(ce_homology_betti(&data, 4), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn ce_sl2() {
        let data = presets::sl2(q());
        assert_eq!(ce_cohomology_betti(&data, 3), vec![1, 0, 0, 1]);
        assert_eq!(ce_homology_betti(&data, 3), vec![1, 0, 0, 1]);
    }

    #[test]
    fn ce_heisenberg() {
        let data = presets::heisenberg_lie_ring(q());
        assert_eq!(ce_cohomology_betti(&data, 3), vec![1, 2, 2, 1]);
        assert_eq!(ce_homology_betti(&data, 3), vec![1, 2, 2, 1]);
    }

    #[test]
    fn bar_scalar_field() {
        let data = presets::dual_numbers_g0(q());
        // Use A = k: take the scalar algebra with M = k.
        let kdata = presets::abelian(q(), 0);
        let m = presets::augmentation_module(&kdata);
        assert_eq!(bar_cohomology_betti(&kdata, &m, 3), vec![1, 0, 0, 0]);
        let _ = data;
    }

    #[test]
    fn bar_dual_numbers() {
        let data = presets::dual_numbers_g0(q());
        let m = presets::a_as_module(&data);
        let coh = bar_cohomology_betti(&data, &m, 3);
        assert_eq!(coh[0], 2);
        assert_eq!(coh[1], 1);
        let hom = bar_homology_betti(&data, &m, 3);
        assert_eq!(hom[0], 2);
        assert_eq!(hom[1], 1);
    }

    #[test]
    fn bar_separable_algebra() {
        // k x k is separable: H^0 = 2, H^n = 0 for n >= 1.
        let field = q();
        let data = crate::data::RingData::new(
            field,
            crate::data::CoeffAlgebra::Finite(presets::product_of_fields(field)),
            crate::data::LieAlgebra::abelian(0),
            crate::data::ActionData::Matrices(vec![]),
            crate::data::CocycleData::Finite(vec![]),
            crate::data::Subalgebra::ground_field(),
        )
        .unwrap();
        let m = presets::a_as_module(&data);
        assert_eq!(bar_cohomology_betti(&data, &m, 3), vec![2, 0, 0, 0]);
    }
}
