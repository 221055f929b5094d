//! The symmetric-algebra specialization: `A = S(V)` with `K = k`, every
//! `v^x` in `k ⊕ V` and every cocycle value in `k ⊕ V`.
//!
//! In this mode the small complexes shrink further: words over `A/K` are
//! replaced by wedges over `V`. The comparison with the general complexes is
//! the antisymmetrization over word slots (cochain direction) and the
//! alternating embedding of wedges as words (chain direction). Cup and cap
//! become double signed subset sums over both wedge factors.
//!
//! Keys reuse the general `(word, wedge)` shape with the convention that the
//! word is a strictly increasing sequence of degree-one monomials (the
//! `V`-wedge).

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::betti::{truncated_report, ComplexShape, TruncationReport};
use crate::complexes::{sign, Chain, Cochain, DiffTerm, Key, Wedge, Word};
use crate::data::{
    ActionData, AffineValue, CocycleData, CoeffAlgebra, LieAlgebra, RingData, Subalgebra,
    SymmetricAlgebra,
};
use crate::element::{ABasisId, Element};
use crate::module::{MValue, ModOp, ModuleCtx, ModuleData};
use crate::scalar::FieldKind;

/// Declarative input of the symmetric mode: dimensions, bracket, affine
/// action table `v^x = c + w` and affine cocycle, all over `k ⊕ V`.
#[derive(Clone, Debug)]
pub struct SymmetricSpec {
    pub dim_v: usize,
    pub names_v: Vec<String>,
    pub lie: LieAlgebra,
    pub action: Vec<Vec<AffineValue>>,
    pub cocycle: Vec<Vec<AffineValue>>,
}

impl SymmetricSpec {
    pub fn build(self, field: FieldKind) -> Result<RingData, String> {
        RingData::new(
            field,
            CoeffAlgebra::Symmetric(SymmetricAlgebra {
                dim_v: self.dim_v,
                names: self.names_v,
            }),
            self.lie,
            ActionData::Affine(self.action),
            CocycleData::Affine(self.cocycle),
            Subalgebra::ground_field(),
        )
    }
}

/// Cochains on `V`-wedges tensor `g`-wedges (tables, like `Cochain`, with the
/// word slot holding the `V`-wedge as increasing degree-one monomials).
pub type ZCochain = Cochain;
/// Chains `M ⊗ Λ^r V ⊗ Λ^s g` in the same keyed representation.
pub type ZChain = Chain;

/// The degree-one monomial label of the basis vector `v_i`.
pub fn v_letter(data: &RingData, v: usize) -> ABasisId {
    let dim_v = data.symmetric_algebra().expect("symmetric mode").dim_v;
    let mut e = vec![0u32; dim_v];
    e[v] = 1;
    ABasisId::Mono(e)
}

fn v_index(id: &ABasisId) -> usize {
    let ABasisId::Mono(e) = id else {
        panic!("V-wedge entries must be monomials")
    };
    let mut found = None;
    for (i, x) in e.iter().enumerate() {
        match (*x, found) {
            (0, _) => {}
            (1, None) => found = Some(i),
            _ => panic!("V-wedge entries must be degree-one monomials"),
        }
    }
    found.expect("V-wedge entries must be degree-one monomials")
}

/// All length-`r` words of `V`-letters (no ordering constraint), the inputs
/// of word cochains in symmetric mode.
pub fn v_words(data: &RingData, r: usize) -> Vec<Word> {
    let dim_v = data.symmetric_algebra().expect("symmetric mode").dim_v;
    if r == 0 {
        return vec![vec![]];
    }
    (0..r)
        .map(|_| (0..dim_v).collect::<Vec<_>>())
        .multi_cartesian_product()
        .map(|ix| ix.into_iter().map(|v| v_letter(data, v)).collect())
        .collect()
}

/// `V`-wedge words of length `r` (strictly increasing letters).
pub fn v_wedges(data: &RingData, r: usize) -> Vec<Word> {
    let dim_v = data.symmetric_algebra().expect("symmetric mode").dim_v;
    (0..dim_v)
        .combinations(r)
        .map(|c| c.into_iter().map(|v| v_letter(data, v)).collect())
        .collect()
}

/// Blocks `(r, s)` of total degree `n` in the wedge complex.
pub fn z_blocks_of_degree(data: &RingData, n: usize) -> Vec<(usize, usize)> {
    let dim_v = data.symmetric_algebra().expect("symmetric mode").dim_v;
    let d = data.gen_count();
    (0..=n.min(d))
        .map(|s| (n - s, s))
        .filter(|(r, _)| *r <= dim_v)
        .collect()
}

pub fn z_block_keys(data: &RingData, r: usize, s: usize) -> Vec<Key> {
    let mut out = Vec::new();
    for w in v_wedges(data, r) {
        for x in (0..data.gen_count()).combinations(s) {
            out.push((w.clone(), x));
        }
    }
    out.sort();
    out
}

/// Sorts a letter into a `V`-wedge that had its slot `h` (1-based) replaced:
/// parity of the move plus the sorted wedge, or `None` on a repeat.
fn sort_replacement(word: &[usize], h: usize, u: usize) -> Option<(usize, Vec<usize>)> {
    let rest: Vec<usize> = word
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != h - 1)
        .map(|(_, v)| *v)
        .collect();
    if rest.contains(&u) {
        return None;
    }
    let p = rest.iter().take_while(|x| **x < u).count();
    let mut sorted = rest;
    sorted.insert(p, u);
    Some(((p + h - 1) % 2, sorted))
}

fn word_to_indices(w: &Word) -> Vec<usize> {
    w.iter().map(v_index).collect()
}

fn indices_to_word(data: &RingData, ix: &[usize]) -> Word {
    ix.iter().map(|v| v_letter(data, *v)).collect()
}

/// Sources feeding a target basis input of the wedge cochain complex.
pub fn z_coboundary_sources(
    data: &RingData,
    target: (usize, usize),
    key: &Key,
) -> Vec<((usize, usize), DiffTerm)> {
    let (r, s) = target;
    let (w, x) = key;
    let field = data.field;
    let wi = word_to_indices(w);
    let mut out = Vec::new();

    // delta_0: commutators with the V-letters, from (r-1, s).
    // Sign convention: sum_i (-1)^i [phi(..), v_i], the one compatible with
    // the word-complex d0 (so that antisymmetrization is a chain map and the
    // total differential squares to zero).
    if r >= 1 {
        let src = (r - 1, s);
        for i in 1..=r {
            let mut rest = wi.clone();
            let vi = rest.remove(i - 1);
            out.push((
                src,
                DiffTerm {
                    key: (indices_to_word(data, &rest), x.clone()),
                    coeff: sign(field, i),
                    op: ModOp::CommA(v_letter(data, vi)),
                },
            ));
        }
    }

    // delta_1: wedge block from (r, s-1).
    if s >= 1 {
        let src = (r, s - 1);
        for i in 1..=s {
            let xi = x[i - 1];
            let rest: Wedge = x
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i - 1)
                .map(|(_, v)| *v)
                .collect();
            out.push((
                src,
                DiffTerm {
                    key: (w.clone(), rest.clone()),
                    coeff: sign(field, i + r),
                    op: ModOp::CommGen(xi),
                },
            ));
            // Action middle term: replace slot h by the V-part of v_h^{x_i}.
            for h in 1..=r {
                for (u, c) in data.action_v_part(xi, wi[h - 1]).iter() {
                    if let Some((moves, sorted)) = sort_replacement(&wi, h, *u) {
                        out.push((
                            src,
                            DiffTerm {
                                key: (indices_to_word(data, &sorted), rest.clone()),
                                coeff: sign(field, i + r + moves).mul(c),
                                op: ModOp::Id,
                            },
                        ));
                    }
                }
            }
            for j in (i + 1)..=s {
                let xj = x[j - 1];
                let rest2: Wedge = x
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i - 1 && *k != j - 1)
                    .map(|(_, v)| *v)
                    .collect();
                for (k, c) in data.bracket(xi, xj).iter() {
                    if let Some((moves, wedge)) = crate::complexes::insert_wedge_front(*k, &rest2)
                    {
                        out.push((
                            src,
                            DiffTerm {
                                key: (w.clone(), wedge),
                                coeff: sign(field, i + j + r + moves).mul(c),
                                op: ModOp::Id,
                            },
                        ));
                    }
                }
            }
        }
    }

    // delta_2: fhat wedged in front, from (r+1, s-2).
    if s >= 2 {
        let src = (r + 1, s - 2);
        for i in 1..s {
            for j in (i + 1)..=s {
                let fv = data.fhat_v_part(x[i - 1], x[j - 1]);
                if fv.is_zero() {
                    continue;
                }
                let rest: Wedge = x
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i - 1 && *k != j - 1)
                    .map(|(_, v)| *v)
                    .collect();
                for (u, c) in fv.iter() {
                    if wi.contains(u) {
                        continue;
                    }
                    let p = wi.iter().take_while(|z| **z < *u).count();
                    let mut sorted = wi.clone();
                    sorted.insert(p, *u);
                    out.push((
                        src,
                        DiffTerm {
                            key: (indices_to_word(data, &sorted), rest.clone()),
                            coeff: sign(field, i + j + p).mul(c),
                            op: ModOp::Id,
                        },
                    ));
                }
            }
        }
    }

    out
}

/// Targets hit by one term of the wedge chain complex.
pub fn z_boundary_targets(
    data: &RingData,
    source: (usize, usize),
    key: &Key,
) -> Vec<((usize, usize), DiffTerm)> {
    let (r, s) = source;
    let (w, x) = key;
    let field = data.field;
    let wi = word_to_indices(w);
    let mut out = Vec::new();

    // Mirror of the cochain convention: sum_i (-1)^i [v_i, m] ⊗ (rest).
    if r >= 1 {
        let dst = (r - 1, s);
        for i in 1..=r {
            let mut rest = wi.clone();
            let vi = rest.remove(i - 1);
            out.push((
                dst,
                DiffTerm {
                    key: (indices_to_word(data, &rest), x.clone()),
                    coeff: sign(field, i + 1),
                    op: ModOp::CommA(v_letter(data, vi)),
                },
            ));
        }
    }

    if s >= 1 {
        let dst = (r, s - 1);
        for i in 1..=s {
            let xi = x[i - 1];
            let rest: Wedge = x
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i - 1)
                .map(|(_, v)| *v)
                .collect();
            // [1#x_i, m] = -comm_gen.
            out.push((
                dst,
                DiffTerm {
                    key: (w.clone(), rest.clone()),
                    coeff: sign(field, i + r + 1),
                    op: ModOp::CommGen(xi),
                },
            ));
            for h in 1..=r {
                for (u, c) in data.action_v_part(xi, wi[h - 1]).iter() {
                    if let Some((moves, sorted)) = sort_replacement(&wi, h, *u) {
                        out.push((
                            dst,
                            DiffTerm {
                                key: (indices_to_word(data, &sorted), rest.clone()),
                                coeff: sign(field, i + r + moves).mul(c),
                                op: ModOp::Id,
                            },
                        ));
                    }
                }
            }
            for j in (i + 1)..=s {
                let xj = x[j - 1];
                let rest2: Wedge = x
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i - 1 && *k != j - 1)
                    .map(|(_, v)| *v)
                    .collect();
                for (k, c) in data.bracket(xi, xj).iter() {
                    if let Some((moves, wedge)) = crate::complexes::insert_wedge_front(*k, &rest2)
                    {
                        out.push((
                            dst,
                            DiffTerm {
                                key: (w.clone(), wedge),
                                coeff: sign(field, i + j + r + moves).mul(c),
                                op: ModOp::Id,
                            },
                        ));
                    }
                }
            }
        }
    }

    if s >= 2 {
        let dst = (r + 1, s - 2);
        for i in 1..s {
            for j in (i + 1)..=s {
                let fv = data.fhat_v_part(x[i - 1], x[j - 1]);
                if fv.is_zero() {
                    continue;
                }
                let rest: Wedge = x
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i - 1 && *k != j - 1)
                    .map(|(_, v)| *v)
                    .collect();
                for (u, c) in fv.iter() {
                    if wi.contains(u) {
                        continue;
                    }
                    let p = wi.iter().take_while(|z| **z < *u).count();
                    let mut sorted = wi.clone();
                    sorted.insert(p, *u);
                    out.push((
                        dst,
                        DiffTerm {
                            key: (indices_to_word(data, &sorted), rest.clone()),
                            coeff: sign(field, i + j + p).mul(c),
                            op: ModOp::Id,
                        },
                    ));
                }
            }
        }
    }

    out
}

/// Value of the wedge-complex coboundary of `phi` at one target input.
pub fn z_coboundary_eval(
    phi: &ZCochain,
    ctx: &ModuleCtx,
    target: (usize, usize),
    key: &Key,
) -> MValue {
    let mut acc = ctx.zero();
    for (src, term) in z_coboundary_sources(ctx.data, target, key) {
        if src != (phi.r, phi.s) {
            continue;
        }
        let v = phi.eval(ctx, &term.key);
        if v.is_zero() {
            continue;
        }
        acc = acc.add(&ctx.apply_op(&term.op, &v).scale(&term.coeff));
    }
    acc
}

/// Materialized wedge-complex coboundary on all target blocks.
pub fn z_coboundary_blocks(phi: &ZCochain, ctx: &ModuleCtx) -> Vec<ZCochain> {
    let data = ctx.data;
    let dim_v = data.symmetric_algebra().unwrap().dim_v;
    let d = data.gen_count();
    let mut targets = Vec::new();
    if phi.r + 1 <= dim_v {
        targets.push((phi.r + 1, phi.s));
    }
    if phi.s + 1 <= d {
        targets.push((phi.r, phi.s + 1));
    }
    if phi.r >= 1 && phi.s + 2 <= d {
        targets.push((phi.r - 1, phi.s + 2));
    }
    let mut out = Vec::new();
    for (r, s) in targets {
        let mut block = ZCochain::zero(r, s);
        for key in z_block_keys(data, r, s) {
            block.add_value(key.clone(), z_coboundary_eval(phi, ctx, (r, s), &key));
        }
        out.push(block);
    }
    out
}

/// Materialized wedge-complex boundary on all target blocks.
pub fn z_boundary_blocks(c: &ZChain, ctx: &ModuleCtx) -> Vec<ZChain> {
    let data = ctx.data;
    let mut blocks: BTreeMap<(usize, usize), ZChain> = BTreeMap::new();
    if c.r >= 1 {
        blocks.insert((c.r - 1, c.s), ZChain::zero(c.r - 1, c.s));
    }
    if c.s >= 1 {
        blocks.insert((c.r, c.s - 1), ZChain::zero(c.r, c.s - 1));
    }
    if c.s >= 2 && c.r + 1 <= data.symmetric_algebra().unwrap().dim_v {
        blocks.insert((c.r + 1, c.s - 2), ZChain::zero(c.r + 1, c.s - 2));
    }
    for (key, value) in &c.table {
        for (dst, term) in z_boundary_targets(data, (c.r, c.s), key) {
            let v = ctx.apply_op(&term.op, value).scale(&term.coeff);
            if let Some(b) = blocks.get_mut(&dst) {
                b.add_value(term.key, v);
            } else if !v.is_zero() {
                panic!("boundary left the wedge blocks at {dst:?}");
            }
        }
    }
    blocks.into_values().collect()
}

// ---------------------------------------------------------------------------
// Comparison with the word complexes (antisymmetrization)
// ---------------------------------------------------------------------------

fn permutation_sign(perm: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// Cochain direction: antisymmetrize a word cochain over its word slots,
/// producing a wedge cochain on the same bidegree.
pub fn wedge_cochain_from_word(phi: &Cochain, ctx: &ModuleCtx) -> ZCochain {
    let data = ctx.data;
    let mut out = ZCochain::zero(phi.r, phi.s);
    for key in z_block_keys(data, phi.r, phi.s) {
        let (w, x) = &key;
        let wi = word_to_indices(w);
        let mut acc = ctx.zero();
        for perm in (0..phi.r).permutations(phi.r) {
            let sgn = sign(data.field, permutation_sign(&perm));
            let word: Word = perm.iter().map(|i| v_letter(data, wi[*i])).collect();
            let v = phi.eval(ctx, &(word, x.clone()));
            acc = acc.add(&v.scale(&sgn));
        }
        out.add_value(key, acc);
    }
    out
}

/// Evaluates the antisymmetrization of a pointwise word-cochain functional.
/// Used when the word cochain is only available through evaluation (for
/// instance a coboundary or a cup product in symmetric mode).
pub fn wedge_from_word_eval(
    data: &RingData,
    r: usize,
    eval: &mut dyn FnMut(&Word) -> MValue,
    key: &Key,
    ctx: &ModuleCtx,
) -> MValue {
    let wi = word_to_indices(&key.0);
    let mut acc = ctx.zero();
    for perm in (0..r).permutations(r) {
        let sgn = sign(data.field, permutation_sign(&perm));
        let word: Word = perm.iter().map(|i| v_letter(data, wi[*i])).collect();
        acc = acc.add(&eval(&word).scale(&sgn));
    }
    acc
}

/// Chain direction: embed a wedge chain as the alternating sum of word
/// chains.
pub fn word_chain_from_wedge(z: &ZChain, ctx: &ModuleCtx) -> Chain {
    let data = ctx.data;
    let mut out = Chain::zero(z.r, z.s);
    for ((w, x), value) in &z.table {
        let wi = word_to_indices(w);
        for perm in (0..z.r).permutations(z.r) {
            let sgn = sign(data.field, permutation_sign(&perm));
            let word: Word = perm.iter().map(|i| v_letter(data, wi[*i])).collect();
            out.add_value((word, x.clone()), value.scale(&sgn));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Star products
// ---------------------------------------------------------------------------

fn signed_subsets(total: usize, k: usize) -> Vec<(usize, Vec<usize>, Vec<usize>)> {
    (0..total)
        .combinations(k)
        .map(|subset| {
            let exp: usize = subset.iter().enumerate().map(|(u, j)| j - u).sum();
            let complement: Vec<usize> = (0..total).filter(|i| !subset.contains(i)).collect();
            (exp, subset, complement)
        })
        .collect()
}

/// Cup product on the wedge complex: double signed subset sum over the
/// `V`-wedge and the `g`-wedge, values multiplied in `E`.
pub fn star_cup(
    phi: &ZCochain,
    psi: &ZCochain,
    data: &RingData,
) -> Result<ZCochain, crate::products::ProductError> {
    let module = ModuleData::Regular;
    let ctx = ModuleCtx::new(data, &module);
    let (r1, s1) = (phi.r, phi.s);
    let (r2, s2) = (psi.r, psi.s);
    let mut out = ZCochain::zero(r1 + r2, s1 + s2);
    if r1 + r2 > data.symmetric_algebra().unwrap().dim_v || s1 + s2 > data.gen_count() {
        return Ok(out);
    }
    for key in z_block_keys(data, r1 + r2, s1 + s2) {
        let (w, x) = &key;
        let wi = word_to_indices(w);
        let mut acc = Element::zero();
        for (vexp, vsub, vcomp) in signed_subsets(r1 + r2, r1) {
            for (gexp, gsub, gcomp) in signed_subsets(s1 + s2, s1) {
                let k1: Key = (
                    vsub.iter().map(|i| v_letter(data, wi[*i])).collect(),
                    gsub.iter().map(|i| x[*i]).collect(),
                );
                let a = phi.eval(&ctx, &k1);
                if a.is_zero() {
                    continue;
                }
                let k2: Key = (
                    vcomp.iter().map(|i| v_letter(data, wi[*i])).collect(),
                    gcomp.iter().map(|i| x[*i]).collect(),
                );
                let b = psi.eval(&ctx, &k2);
                if b.is_zero() {
                    continue;
                }
                let (MValue::Reg(ea), MValue::Reg(eb)) = (&a, &b) else {
                    return Err(crate::products::ProductError::NotRegularValued);
                };
                let sgn = sign(data.field, r2 * s1 + vexp + gexp);
                acc = acc.add(&ea.mul(eb, data).scale(&sgn));
            }
        }
        out.add_value(key, MValue::Reg(acc));
    }
    Ok(out)
}

/// Cap product on the wedge complex: evaluate the cochain on subsets of both
/// wedges, multiply into the module value from the right, keep complements.
pub fn star_cap(
    z: &ZChain,
    psi: &ZCochain,
    ctx: &ModuleCtx,
) -> Result<ZChain, crate::products::ProductError> {
    let data = ctx.data;
    let (r, s) = (z.r, z.s);
    let (rq, sq) = (psi.r, psi.s);
    if rq > r || sq > s {
        return Err(crate::products::ProductError::DegreeUnderflow);
    }
    let mut out = ZChain::zero(r - rq, s - sq);
    for ((w, x), value) in &z.table {
        let wi = word_to_indices(w);
        for (vexp, vsub, vcomp) in signed_subsets(r, rq) {
            for (gexp, gsub, gcomp) in signed_subsets(s, sq) {
                let k1: Key = (
                    vsub.iter().map(|i| v_letter(data, wi[*i])).collect(),
                    gsub.iter().map(|i| x[*i]).collect(),
                );
                let pv = psi.eval(ctx, &k1);
                if pv.is_zero() {
                    continue;
                }
                let MValue::Reg(e) = &pv else {
                    return Err(crate::products::ProductError::NotRegularValued);
                };
                let moved = ctx.right_by_element(e, value);
                let sgn = sign(data.field, r * sq + rq * sq + vexp + gexp);
                let k2: Key = (
                    vcomp.iter().map(|i| v_letter(data, wi[*i])).collect(),
                    gcomp.iter().map(|i| x[*i]).collect(),
                );
                out.add_value(k2, moved.scale(&sgn));
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Truncated homology drivers
// ---------------------------------------------------------------------------

pub fn z_cochain_shape(data: &RingData) -> ComplexShape<'_> {
    ComplexShape {
        data,
        cochain: true,
        blocks: Box::new(move |n| z_blocks_of_degree(data, n)),
        keys: Box::new(move |r, s| z_block_keys(data, r, s)),
        terms: Box::new(move |rs, key| z_coboundary_sources(data, rs, key)),
    }
}

pub fn z_chain_shape(data: &RingData) -> ComplexShape<'_> {
    ComplexShape {
        data,
        cochain: false,
        blocks: Box::new(move |n| z_blocks_of_degree(data, n)),
        keys: Box::new(move |r, s| z_block_keys(data, r, s)),
        terms: Box::new(move |rs, key| z_boundary_targets(data, rs, key)),
    }
}

/// Truncated cohomology and homology reports of the wedge complexes with
/// REGULAR coefficients, the desk-scale driver for Weyl-type algebras.
pub fn weyl_reports(
    data: &RingData,
    nmax: usize,
    caps: &[u32],
) -> Result<(TruncationReport, TruncationReport), String> {
    let shift = crate::betti::default_shift(data);
    let coh = truncated_report(&z_cochain_shape(data), nmax, caps, shift)?;
    let hom = truncated_report(&z_chain_shape(data), nmax, caps, shift)?;
    Ok((coh, hom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn q() -> FieldKind {
        FieldKind::Rationals
    }

    #[test]
    fn weyl_unit_is_a_cocycle() {
        let data = presets::weyl(q());
        let module = ModuleData::Regular;
        let ctx = ModuleCtx::new(&data, &module);
        let mut phi = ZCochain::zero(0, 0);
        phi.insert((vec![], vec![]), MValue::Reg(Element::one(&data)));
        for block in z_coboundary_blocks(&phi, &ctx) {
            assert!(block.is_zero());
        }
    }

    #[test]
    fn weyl_variable_cochain() {
        // phi = v#1 in bidegree (0,0): delta(phi)(v) = 0, delta(phi)(x) = 1.
        let data = presets::weyl(q());
        let module = ModuleData::Regular;
        let ctx = ModuleCtx::new(&data, &module);
        let mut phi = ZCochain::zero(0, 0);
        phi.insert(
            (vec![], vec![]),
            MValue::Reg(Element::from_a_basis(&data, v_letter(&data, 0))),
        );
        let blocks = z_coboundary_blocks(&phi, &ctx);
        let d0 = blocks.iter().find(|b| (b.r, b.s) == (1, 0)).unwrap();
        assert!(d0.is_zero());
        let d1 = blocks.iter().find(|b| (b.r, b.s) == (0, 1)).unwrap();
        assert_eq!(
            d1.table.get(&(vec![], vec![0])).unwrap(),
            &MValue::Reg(Element::one(&data))
        );
    }

    #[test]
    fn euler_middle_term() {
        // v^x = v: delta_1(phi)(v ⊗ x) picks up +phi(v) from the V-component.
        let data = presets::sym_euler(q());
        let module = ModuleData::Regular;
        let ctx = ModuleCtx::new(&data, &module);
        let mut phi = ZCochain::zero(1, 0);
        let probe = Element::generator(&data, 0);
        phi.insert((vec![v_letter(&data, 0)], vec![]), MValue::Reg(probe.clone()));
        let blocks = z_coboundary_blocks(&phi, &ctx);
        let d1 = blocks.iter().find(|b| (b.r, b.s) == (1, 1)).unwrap();
        let got = d1
            .table
            .get(&(vec![v_letter(&data, 0)], vec![0]))
            .cloned()
            .unwrap_or_else(|| ctx.zero());
        // Commutator part: [phi(v), 1#x] = 0 here; middle term: +phi(v).
        let expected = {
            let comm = ctx.comm_gen(0, &MValue::Reg(probe.clone()));
            comm.scale(&q().integer(-1)).add(&MValue::Reg(probe))
        };
        assert_eq!(got, expected);
    }

    #[test]
    fn weyl_chain_boundaries() {
        let data = presets::weyl(q());
        let module = ModuleData::Regular;
        let ctx = ModuleCtx::new(&data, &module);
        // m ⊗ v with m = 1: boundary -[1, v] = 0.
        let c = ZChain::single(
            1,
            0,
            (vec![v_letter(&data, 0)], vec![]),
            MValue::Reg(Element::one(&data)),
        );
        for b in z_boundary_blocks(&c, &ctx) {
            assert!(b.is_zero());
        }
        // m ⊗ x with m = v#1: (-1)^{1+0}[1#x, v#1] = -1.
        let c = ZChain::single(
            0,
            1,
            (vec![], vec![0]),
            MValue::Reg(Element::from_a_basis(&data, v_letter(&data, 0))),
        );
        let blocks = z_boundary_blocks(&c, &ctx);
        let b = blocks.iter().find(|b| (b.r, b.s) == (0, 0)).unwrap();
        assert_eq!(
            b.table.get(&(vec![], vec![])).unwrap(),
            &MValue::Reg(Element::one(&data).neg())
        );
    }

    #[test]
    fn z_differential_squares_to_zero_on_random_fixtures() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(41);
        for _ in 0..8 {
            let data = presets::random_symmetric(&mut rng, q());
            assert!(crate::validate::validate_all(&data, None).is_valid());
            let module = ModuleData::Regular;
            let ctx = ModuleCtx::new(&data, &module);
            let dim_v = data.symmetric_algebra().unwrap().dim_v;
            let d = data.gen_count();
            for r in 0..=dim_v {
                for s in 0..=d {
                    for key in z_block_keys(&data, r, s) {
                        let mut phi = ZCochain::zero(r, s);
                        phi.insert(key.clone(), MValue::Reg(presets::random_element(&mut rng, &data, 2)));
                        let mut totals: BTreeMap<(usize, usize), ZCochain> = BTreeMap::new();
                        for block in z_coboundary_blocks(&phi, &ctx) {
                            for next in z_coboundary_blocks(&block, &ctx) {
                                totals
                                    .entry((next.r, next.s))
                                    .and_modify(|acc| *acc = acc.add(&next))
                                    .or_insert(next);
                            }
                        }
                        for (rs, total) in totals {
                            assert!(total.is_zero(), "delta² nonzero in {rs:?}");
                        }
                        let c = ZChain::single(
                            r,
                            s,
                            key,
                            MValue::Reg(presets::random_element(&mut rng, &data, 2)),
                        );
                        let mut totals: BTreeMap<(usize, usize), ZChain> = BTreeMap::new();
                        for block in z_boundary_blocks(&c, &ctx) {
                            for next in z_boundary_blocks(&block, &ctx) {
                                totals
                                    .entry((next.r, next.s))
                                    .and_modify(|acc| *acc = acc.add(&next))
                                    .or_insert(next);
                            }
                        }
                        for (rs, total) in totals {
                            assert!(total.is_zero(), "delta² nonzero in {rs:?} (chains)");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn antisymmetrization_expansions() {
        let data = presets::random_symmetric(
            &mut <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3),
            q(),
        );
        let module = ModuleData::Regular;
        let ctx = ModuleCtx::new(&data, &module);
        let dim_v = data.symmetric_algebra().unwrap().dim_v;
        if dim_v < 2 {
            return;
        }
        // r = 2: Gamma(phi)(v1 ∧ v2 ⊗ ..) = phi(v1 ⊗ v2) - phi(v2 ⊗ v1).
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(4);
        let phi = presets::random_word_cochain(&mut rng, &data, 2, 0, 2);
        let wedge = wedge_cochain_from_word(&phi, &ctx);
        let key = (vec![v_letter(&data, 0), v_letter(&data, 1)], vec![]);
        let direct = phi
            .eval(&ctx, &(vec![v_letter(&data, 0), v_letter(&data, 1)], vec![]))
            .sub(&phi.eval(&ctx, &(vec![v_letter(&data, 1), v_letter(&data, 0)], vec![])));
        assert_eq!(wedge.eval(&ctx, &key), direct);
    }

    #[test]
    fn gamma_is_a_chain_map_on_cochains() {
        // delta(Gamma phi) = Gamma(d phi), evaluated on the wedge grid.
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(47);
        for _ in 0..6 {
            let data = presets::random_symmetric(&mut rng, q());
            let module = ModuleData::Regular;
            let ctx = ModuleCtx::new(&data, &module);
            let dim_v = data.symmetric_algebra().unwrap().dim_v;
            let d = data.gen_count();
            for r in 0..=dim_v {
                for s in 0..=d {
                    let phi = presets::random_word_cochain(&mut rng, &data, r, s, 2);
                    let lhs_blocks = z_coboundary_blocks(&wedge_cochain_from_word(&phi, &ctx), &ctx);
                    for lhs in &lhs_blocks {
                        let (r2, s2) = (lhs.r, lhs.s);
                        for key in z_block_keys(&data, r2, s2) {
                            let rhs = wedge_from_word_eval(
                                &data,
                                r2,
                                &mut |word: &Word| {
                                    crate::complexes::coboundary_eval(
                                        &phi,
                                        &ctx,
                                        (r2, s2),
                                        &(word.clone(), key.1.clone()),
                                    )
                                },
                                &key,
                                &ctx,
                            );
                            assert_eq!(lhs.eval(&ctx, &key), rhs, "block ({r2},{s2}) {key:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cup_identity_f1() {
        // Gamma(phi . psi) = Gamma(phi) * Gamma(psi).
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(53);
        for _ in 0..8 {
            let data = presets::random_symmetric(&mut rng, q());
            let module = ModuleData::Regular;
            let ctx = ModuleCtx::new(&data, &module);
            let dim_v = data.symmetric_algebra().unwrap().dim_v;
            let d = data.gen_count();
            for (r1, s1, r2, s2) in [(1, 0, 0, 1), (0, 1, 1, 0), (1, 1, 1, 0), (1, 0, 1, 0)] {
                if r1 + r2 > dim_v || s1 + s2 > d {
                    continue;
                }
                let phi = presets::random_word_cochain(&mut rng, &data, r1, s1, 1);
                let psi = presets::random_word_cochain(&mut rng, &data, r2, s2, 1);
                let rhs = star_cup(
                    &wedge_cochain_from_word(&phi, &ctx),
                    &wedge_cochain_from_word(&psi, &ctx),
                    &data,
                )
                .unwrap();
                for key in z_block_keys(&data, r1 + r2, s1 + s2) {
                    let lhs = wedge_from_word_eval(
                        &data,
                        r1 + r2,
                        &mut |word: &Word| {
                            MValue::Reg(
                                crate::products::cup_eval(
                                    &phi,
                                    &psi,
                                    &ctx,
                                    &(word.clone(), key.1.clone()),
                                )
                                .unwrap(),
                            )
                        },
                        &key,
                        &ctx,
                    );
                    assert_eq!(lhs, rhs.eval(&ctx, &key), "f1 at {key:?}");
                }
            }
        }
    }

    #[test]
    fn cap_identity_f2() {
        // Gamma(z) . phi = Gamma(z * Gamma(phi)).
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(59);
        for _ in 0..8 {
            let data = presets::random_symmetric(&mut rng, q());
            let module = ModuleData::Regular;
            let ctx = ModuleCtx::new(&data, &module);
            let dim_v = data.symmetric_algebra().unwrap().dim_v;
            let d = data.gen_count();
            for (r, s, rq, sq) in [(1, 1, 1, 0), (1, 1, 0, 1), (2, 1, 1, 1), (1, 2, 0, 1)] {
                if r > dim_v || s > d || rq > r || sq > s {
                    continue;
                }
                let mut z = ZChain::zero(r, s);
                for key in z_block_keys(&data, r, s) {
                    z.add_value(key, MValue::Reg(presets::random_element(&mut rng, &data, 2)));
                }
                let phi = presets::random_word_cochain(&mut rng, &data, rq, sq, 1);
                let lhs = crate::products::cap(
                    &word_chain_from_wedge(&z, &ctx),
                    &phi,
                    &ctx,
                )
                .unwrap();
                let rhs = word_chain_from_wedge(
                    &star_cap(&z, &wedge_cochain_from_word(&phi, &ctx), &ctx).unwrap(),
                    &ctx,
                );
                assert_eq!(lhs, rhs, "f2 at ({r},{s}) . ({rq},{sq})");
            }
        }
    }

    #[test]
    fn middle_and_cocycle_blocks_vanish_without_v_parts() {
        // Zero V-components and fhat = 0: the action middle term and the
        // cocycle block are absent from every expansion, blockwise.
        let data = presets::weyl(q()); // v^x = 1 has zero V-part, f = 0
        let dim_v = 1;
        for r in 0..=dim_v {
            for s in 0..=1usize {
                for key in z_block_keys(&data, r, s) {
                    for (_, term) in z_coboundary_sources(&data, (r, s), &key)
                        .into_iter()
                        .chain(z_boundary_targets(&data, (r, s), &key))
                    {
                        assert!(
                            !matches!(term.op, ModOp::Id),
                            "unexpected middle/cocycle term at ({r},{s})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn star_unit_laws() {
        let data = presets::weyl(q());
        let module = ModuleData::Regular;
        let ctx = ModuleCtx::new(&data, &module);
        let mut one = ZCochain::zero(0, 0);
        one.insert((vec![], vec![]), MValue::Reg(Element::one(&data)));
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(61);
        for (r, s) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let mut phi = ZCochain::zero(r, s);
            for key in z_block_keys(&data, r, s) {
                phi.add_value(key, MValue::Reg(presets::random_element(&mut rng, &data, 2)));
            }
            assert_eq!(star_cup(&one, &phi, &data).unwrap(), phi);
            assert_eq!(star_cup(&phi, &one, &data).unwrap(), phi);
            let mut z = ZChain::zero(r, s);
            for key in z_block_keys(&data, r, s) {
                z.add_value(key, MValue::Reg(presets::random_element(&mut rng, &data, 2)));
            }
            assert_eq!(star_cap(&z, &one, &ctx).unwrap(), z);
        }
    }

    #[test]
    fn weyl_truncated_reports() {
        let data = presets::weyl(q());
        let (coh, hom) = weyl_reports(&data, 2, &[4, 6, 8]).unwrap();
        // Cohomology: H^0 = k (the center), H^1 and H^2 vanish.
        assert_eq!(coh.degrees[0].lower_bound, 1);
        assert!(coh.degrees[0].stable);
        assert_eq!(coh.degrees[1].caps.last().unwrap().residual, 0);
        assert_eq!(coh.degrees[2].caps.last().unwrap().residual, 0);
        // Homology: H_0 = H_1 = 0, H_2 = k.
        assert_eq!(hom.degrees[0].caps.last().unwrap().residual, 0);
        assert_eq!(hom.degrees[1].caps.last().unwrap().residual, 0);
        assert_eq!(hom.degrees[2].lower_bound, 1);
        assert!(hom.degrees[2].stable);
    }

    #[test]
    fn polynomial_truncated_betti() {
        // E = k[v] ⊗ k[x]: every differential vanishes, so the residuals are
        // the truncated space dimensions, N * (1, 2, 1) with N = dim E_{<=cap}
        // (the Kunneth multiplicity pattern of the polynomial ring).
        let data = presets::sym_polynomial(q());
        let (coh, hom) = weyl_reports(&data, 2, &[4, 6]).unwrap();
        for report in [&coh, &hom] {
            for (d, cell) in report.degrees.iter().enumerate() {
                for cap in &cell.caps {
                    let n = ((cap.cap + 1) * (cap.cap + 2) / 2) as usize;
                    let expected = [n, 2 * n, n][d];
                    assert_eq!(cap.residual, expected, "degree {d} cap {}", cap.cap);
                    assert_eq!(cap.boundary_dim, 0);
                }
            }
        }
    }

    #[test]
    fn gamma_is_a_chain_map_on_chains() {
        // boundary(Gamma z) = Gamma(z-boundary z) with word-side boundaries.
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(43);
        for _ in 0..6 {
            let data = presets::random_symmetric(&mut rng, q());
            let module = ModuleData::Regular;
            let ctx = ModuleCtx::new(&data, &module);
            let dim_v = data.symmetric_algebra().unwrap().dim_v;
            let d = data.gen_count();
            for r in 0..=dim_v {
                for s in 0..=d {
                    let mut z = ZChain::zero(r, s);
                    for key in z_block_keys(&data, r, s) {
                        z.add_value(
                            key,
                            MValue::Reg(presets::random_element(&mut rng, &data, 2)),
                        );
                    }
                    let lhs = crate::complexes::boundary_blocks(
                        &word_chain_from_wedge(&z, &ctx),
                        &ctx,
                    );
                    let rhs: Vec<Chain> = z_boundary_blocks(&z, &ctx)
                        .iter()
                        .map(|b| word_chain_from_wedge(b, &ctx))
                        .collect();
                    for rblock in &rhs {
                        let lblock = lhs
                            .iter()
                            .find(|b| (b.r, b.s) == (rblock.r, rblock.s))
                            .cloned()
                            .unwrap_or_else(|| Chain::zero(rblock.r, rblock.s));
                        assert_eq!(&lblock, rblock, "block ({},{})", rblock.r, rblock.s);
                    }
                    // Word-side blocks not present on the wedge side must die
                    // under antisymmetrization; there are none to check here
                    // because every wedge-side block is covered above.
                }
            }
        }
    }
}
