//! Comparison maps between the small complexes and the normalized bar
//! complex, together with bar-level cup/cap evaluation.
//!
//! The bar side only ever needs to be evaluated on *special tensors*: simple
//! tensors whose entries are `A`-classes or embedded generators `1 # g_i`.
//! The map out of the small complex vanishes off the ordered-special tensors
//! (generators first, strictly increasing), and the map into the small
//! complex is a signed sum over permutations and shuffles that stays inside
//! the special-tensor span.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::complexes::{Chain, Cochain, Key, Wedge, Word};
use crate::data::RingData;
use crate::element::ABasisId;
use crate::module::{MValue, ModuleCtx};
use crate::scalar::Scalar;

/// One slot of a special tensor: an `A`-class label or a generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BarEntry {
    Alg(ABasisId),
    Gen(usize),
}

pub type BarTensor = Vec<BarEntry>;

/// A bar cochain given by an evaluator on special tensors.
pub struct BarCochain<'a> {
    pub deg: usize,
    eval: Box<dyn Fn(&ModuleCtx, &[BarEntry]) -> MValue + 'a>,
}

impl<'a> BarCochain<'a> {
    pub fn new(
        deg: usize,
        eval: impl Fn(&ModuleCtx, &[BarEntry]) -> MValue + 'a,
    ) -> BarCochain<'a> {
        BarCochain {
            deg,
            eval: Box::new(eval),
        }
    }

    pub fn eval(&self, ctx: &ModuleCtx, t: &[BarEntry]) -> MValue {
        assert_eq!(t.len(), self.deg, "tensor length mismatch");
        (self.eval)(ctx, t)
    }
}

/// Splits an ordered-special tensor into its generator prefix and `A`-word.
/// Returns `None` when the tensor is not ordered-special (a generator after
/// an `A`-entry, or non-increasing generator indices).
pub fn ordered_special_split(t: &[BarEntry]) -> Option<(Vec<usize>, Word)> {
    let mut gens = Vec::new();
    let mut word = Vec::new();
    for e in t {
        match e {
            BarEntry::Gen(i) => {
                if !word.is_empty() {
                    return None;
                }
                if let Some(last) = gens.last() {
                    if *last >= *i {
                        return None;
                    }
                }
                gens.push(*i);
            }
            BarEntry::Alg(a) => word.push(a.clone()),
        }
    }
    Some((gens, word))
}

/// The map from a small cochain to the bar complex: nonzero only on
/// ordered-special tensors whose generator prefix has exactly length `s`,
/// where it evaluates the cochain with sign `(-1)^{rs}`.
pub fn small_to_bar_cochain<'a>(phi: &'a Cochain, data: &'a RingData) -> BarCochain<'a> {
    let r = phi.r;
    let s = phi.s;
    BarCochain::new(r + s, move |ctx, t| {
        match ordered_special_split(t) {
            Some((gens, word)) if gens.len() == s && word.len() == r => {
                let v = phi.eval(ctx, &(word, gens));
                v.scale(&crate::complexes::sign(data.field, r * s))
            }
            _ => ctx.zero(),
        }
    })
}

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

/// All signed interleavings placing `gens` (in the given order) into a word:
/// pairs of (inversion count, special tensor).
fn shuffles(gens: &[usize], word: &[ABasisId]) -> Vec<(usize, BarTensor)> {
    let n = gens.len() + word.len();
    let mut out = Vec::new();
    for positions in (0..n).combinations(gens.len()) {
        // Sign exponent: sum (p_u - u) over the generator slots.
        let exp: usize = positions.iter().enumerate().map(|(u, p)| p - u).sum();
        let mut t: Vec<Option<BarEntry>> = vec![None; n];
        for (u, p) in positions.iter().enumerate() {
            t[*p] = Some(BarEntry::Gen(gens[u]));
        }
        let mut it = word.iter();
        for slot in t.iter_mut() {
            if slot.is_none() {
                *slot = Some(BarEntry::Alg(it.next().unwrap().clone()));
            }
        }
        out.push((exp, t.into_iter().map(|e| e.unwrap()).collect()));
    }
    out
}

/// The map from a bar cochain to the small complex, evaluated on one basis
/// input: the full signed sum over permutations of the wedge and shuffles of
/// the generators into the word, scaled by `(-1)^{rs}`.
pub fn bar_to_small_cochain(
    psi: &BarCochain,
    ctx: &ModuleCtx,
    word: &Word,
    wedge: &Wedge,
) -> MValue {
    let r = word.len();
    let s = wedge.len();
    assert_eq!(psi.deg, r + s, "degree mismatch");
    let field = ctx.data.field;
    let mut acc = ctx.zero();
    for perm in (0..s).permutations(s) {
        let tau_sign = permutation_sign(&perm);
        let gens: Vec<usize> = perm.iter().map(|i| wedge[*i]).collect();
        for (shuffle_exp, tensor) in shuffles(&gens, word) {
            let v = psi.eval(ctx, &tensor);
            if v.is_zero() {
                continue;
            }
            acc = acc.add(&v.scale(&crate::complexes::sign(
                field,
                r * s + tau_sign + shuffle_exp,
            )));
        }
    }
    acc
}

/// Round trip bar_to_small ∘ small_to_bar, materialized on the block grid
/// (finite coefficients).
pub fn cochain_round_trip(phi: &Cochain, ctx: &ModuleCtx) -> Cochain {
    let data = ctx.data;
    let psi = small_to_bar_cochain(phi, data);
    let mut out = Cochain::zero(phi.r, phi.s);
    for key in crate::complexes::block_keys(data, phi.r, phi.s) {
        let v = bar_to_small_cochain(&psi, ctx, &key.0, &key.1);
        out.add_value(key, v);
    }
    out
}

// ---------------------------------------------------------------------------
// Chain direction
// ---------------------------------------------------------------------------

/// One term of a bar chain: `coeff * (value ⊗ tensor)`.
#[derive(Clone, Debug)]
pub struct BarChainTerm {
    pub value: MValue,
    pub tensor: BarTensor,
    pub coeff: Scalar,
}

/// The map from a small chain to the bar complex: the signed permutation and
/// shuffle expansion of each term.
pub fn small_to_bar_chain(c: &Chain, ctx: &ModuleCtx) -> Vec<BarChainTerm> {
    let field = ctx.data.field;
    let (r, s) = (c.r, c.s);
    let mut out = Vec::new();
    for ((word, wedge), value) in &c.table {
        for perm in (0..s).permutations(s) {
            let tau_sign = permutation_sign(&perm);
            let gens: Vec<usize> = perm.iter().map(|i| wedge[*i]).collect();
            for (shuffle_exp, tensor) in shuffles(&gens, word) {
                out.push(BarChainTerm {
                    value: value.clone(),
                    tensor,
                    coeff: crate::complexes::sign(field, r * s + tau_sign + shuffle_exp),
                });
            }
        }
    }
    out
}

/// The map from special bar chains back to the small chain complex, sorted
/// by target bidegree. Each ordered-special tensor with `s` leading
/// generators deposits into the `(n-s, s)` block with sign `(-1)^{s(n-s)}`;
/// everything else maps to zero.
pub fn bar_to_small_chain(
    terms: &[BarChainTerm],
    ctx: &ModuleCtx,
) -> BTreeMap<(usize, usize), Chain> {
    let field = ctx.data.field;
    let mut out: BTreeMap<(usize, usize), Chain> = BTreeMap::new();
    for term in terms {
        let n = term.tensor.len();
        let Some((gens, word)) = ordered_special_split(&term.tensor) else {
            continue;
        };
        let s = gens.len();
        let r = n - s;
        let sign = crate::complexes::sign(field, s * r);
        let key: Key = (word, gens);
        let entry = out
            .entry((r, s))
            .or_insert_with(|| Chain::zero(r, s));
        entry.add_value(key, term.value.scale(&term.coeff.mul(&sign)));
    }
    out
}

/// Round trip on chains: bar_to_small ∘ small_to_bar collapsed back to the
/// original block (other blocks are killed by the zero clause).
pub fn chain_round_trip(c: &Chain, ctx: &ModuleCtx) -> BTreeMap<(usize, usize), Chain> {
    bar_to_small_chain(&small_to_bar_chain(c, ctx), ctx)
}

// ---------------------------------------------------------------------------
// Bar-level products
// ---------------------------------------------------------------------------

/// Bar-level cup: split the tensor after `psi1.deg` entries and multiply the
/// two evaluations in `E`. Both cochains must be `E`-valued.
pub fn bar_cup_eval(
    psi1: &BarCochain,
    psi2: &BarCochain,
    ctx: &ModuleCtx,
    t: &[BarEntry],
) -> MValue {
    assert_eq!(
        t.len(),
        psi1.deg + psi2.deg,
        "tensor length must be the sum of the degrees"
    );
    let a = psi1.eval(ctx, &t[..psi1.deg]);
    let b = psi2.eval(ctx, &t[psi1.deg..]);
    match (a, b) {
        (MValue::Reg(x), MValue::Reg(y)) => MValue::Reg(x.mul(&y, ctx.data)),
        _ => panic!("bar cup requires E-valued cochains"),
    }
}

/// Bar-level cap: evaluate the cochain on the leading `q` entries, multiply
/// the result into the module value from the right, keep the tail.
pub fn bar_cap_eval(
    term: &BarChainTerm,
    psi: &BarCochain,
    ctx: &ModuleCtx,
) -> Result<BarChainTerm, String> {
    if term.tensor.len() < psi.deg {
        return Err("degree underflow in bar cap".into());
    }
    let head = psi.eval(ctx, &term.tensor[..psi.deg]);
    let MValue::Reg(e) = head else {
        panic!("bar cap requires an E-valued cochain")
    };
    Ok(BarChainTerm {
        value: ctx.right_by_element(&e, &term.value),
        tensor: term.tensor[psi.deg..].to_vec(),
        coeff: term.coeff.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Element;
    use crate::module::ModuleData;
    use crate::presets;
    use crate::scalar::FieldKind;

    fn q() -> FieldKind {
        FieldKind::Rationals
    }

    #[test]
    fn small_to_bar_case_split() {
        // r = s = 1 over the dual-numbers fixture, REGULAR coefficients.
        let data = presets::dual_numbers(q());
        let module = ModuleData::Regular;
        let ctx = ModuleCtx::new(&data, &module);
        let eps = ABasisId::Idx(1);
        let mut phi = Cochain::zero(1, 1);
        let val = Element::generator(&data, 0);
        phi.insert((vec![eps.clone()], vec![0]), MValue::Reg(val.clone()));
        let psi = small_to_bar_cochain(&phi, &data);
        // Ordered-special: (1#x, e) evaluates to (-1)^{1*1} phi(e ⊗ x).
        let t = vec![BarEntry::Gen(0), BarEntry::Alg(eps.clone())];
        assert_eq!(psi.eval(&ctx, &t), MValue::Reg(val.neg()));
        // Generator after an A-entry: zero.
        let t = vec![BarEntry::Alg(eps.clone()), BarEntry::Gen(0)];
        assert!(psi.eval(&ctx, &t).is_zero());
        // Wrong generator count: zero.
        let psi0 = small_to_bar_cochain(&phi, &data);
        let t = vec![BarEntry::Alg(eps.clone()), BarEntry::Alg(eps)];
        assert!(psi0.eval(&ctx, &t).is_zero());
    }

    #[test]
    fn out_of_order_generators_vanish() {
        let data = presets::abelian(q(), 2);
        let module = ModuleData::Regular;
        let ctx = ModuleCtx::new(&data, &module);
        let mut phi = Cochain::zero(0, 2);
        phi.insert((vec![], vec![0, 1]), MValue::Reg(Element::one(&data)));
        let psi = small_to_bar_cochain(&phi, &data);
        let t = vec![BarEntry::Gen(1), BarEntry::Gen(0)];
        assert!(psi.eval(&ctx, &t).is_zero());
        let t = vec![BarEntry::Gen(0), BarEntry::Gen(1)];
        assert_eq!(psi.eval(&ctx, &t), MValue::Reg(Element::one(&data)));
    }

    #[test]
    fn bar_to_small_two_shuffle_expansion() {
        // theta(psi)(a ⊗ x) = psi(a ⊗ 1#x) - psi(1#x ⊗ a).
        let data = presets::dual_numbers(q());
        let module = ModuleData::Regular;
        let ctx = ModuleCtx::new(&data, &module);
        let eps = ABasisId::Idx(1);
        // psi picks out the tensor (e ⊗ 1#x) with value 1.
        let probe = vec![BarEntry::Alg(eps.clone()), BarEntry::Gen(0)];
        let one = Element::one(&data);
        let psi = BarCochain::new(2, move |ctx2, t| {
            if t == probe.as_slice() {
                MValue::Reg(one.clone())
            } else {
                ctx2.zero()
            }
        });
        let v = bar_to_small_cochain(&psi, &ctx, &vec![eps.clone()], &vec![0]);
        // The surviving shuffle has the generator second: exponent 1, plus
        // the overall (-1)^{rs} = -1 gives +1.
        assert_eq!(v, MValue::Reg(Element::one(&data)));
    }

    #[test]
    fn cochain_round_trip_is_identity() {
        let data = presets::dual_numbers(q());
        let module = ModuleData::Regular;
        let ctx = ModuleCtx::new(&data, &module);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(11);
        for (r, s) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)] {
            for _ in 0..5 {
                let phi = presets::random_cochain(&mut rng, &data, r, s, 2);
                assert_eq!(cochain_round_trip(&phi, &ctx), phi, "at ({r},{s})");
            }
        }
    }

    #[test]
    fn chain_round_trip_is_identity() {
        let data = presets::heisenberg_sridharan(q());
        let module = ModuleData::Regular;
        let ctx = ModuleCtx::new(&data, &module);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(13);
        for (r, s) in [(0usize, 1usize), (0, 2), (0, 3), (1, 2)] {
            if s > data.gen_count() {
                continue;
            }
            for _ in 0..5 {
                let c = presets::random_chain(&mut rng, &data, r, s, 2);
                let blocks = chain_round_trip(&c, &ctx);
                for (rs, block) in &blocks {
                    if *rs == (r, s) {
                        assert_eq!(block, &c);
                    } else {
                        assert!(block.is_zero());
                    }
                }
                if !c.is_zero() {
                    assert!(blocks.contains_key(&(r, s)));
                }
            }
        }
    }

    #[test]
    fn chain_direction_signs() {
        // vartheta(m ⊗ 1#g ⊗ a) = -(m ⊗ a) ⊗ g and vartheta(m ⊗ a ⊗ 1#g) = 0.
        let data = presets::dual_numbers(q());
        let module = ModuleData::Regular;
        let ctx = ModuleCtx::new(&data, &module);
        let eps = ABasisId::Idx(1);
        let m = MValue::Reg(Element::one(&data));
        let term = BarChainTerm {
            value: m.clone(),
            tensor: vec![BarEntry::Gen(0), BarEntry::Alg(eps.clone())],
            coeff: q().one(),
        };
        let blocks = bar_to_small_chain(&[term], &ctx);
        let block = blocks.get(&(1, 1)).unwrap();
        assert_eq!(
            block.table.get(&(vec![eps.clone()], vec![0])).unwrap(),
            &m.scale(&q().integer(-1))
        );
        let term = BarChainTerm {
            value: m,
            tensor: vec![BarEntry::Alg(eps), BarEntry::Gen(0)],
            coeff: q().one(),
        };
        assert!(bar_to_small_chain(&[term], &ctx).is_empty());
    }
}
