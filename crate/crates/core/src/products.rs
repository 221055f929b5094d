//! Cup product on the small cochain complex with coefficients in `E`, and
//! cap product of small chains against small `E`-valued cochains.
//!
//! Both are signed subset sums: the word is split contiguously, the wedge is
//! distributed over all index subsets, and the two evaluations are multiplied
//! in `E` (cup) or multiplied into the module value from the right (cap).

use itertools::Itertools;

use crate::complexes::{block_keys, sign, Chain, Cochain, Key, Wedge, Word};
use crate::data::RingData;
use crate::element::Element;
use crate::module::{MValue, ModuleCtx, ModuleData};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProductError {
    /// Cup and cap need `E`-valued cochains.
    NotRegularValued,
    /// Cap of a chain by a cochain of larger bidegree.
    DegreeUnderflow,
}

impl std::fmt::Display for ProductError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProductError::NotRegularValued => {
                write!(f, "product requires cochains valued in the ring itself")
            }
            ProductError::DegreeUnderflow => write!(f, "cap product degree underflow"),
        }
    }
}

impl std::error::Error for ProductError {}

/// The unit 0-cochain `1 # 1`.
pub fn unit_cochain(data: &RingData) -> Cochain {
    let mut phi = Cochain::zero(0, 0);
    phi.insert((vec![], vec![]), MValue::Reg(Element::one(data)));
    phi
}

fn reg_value(v: &MValue) -> Result<&Element, ProductError> {
    v.as_element().ok_or(ProductError::NotRegularValued)
}

/// Subsets of `{0..total-1}` of size `k` with the sign exponent
/// `sum_u (j_u - u)` (0-based, equal to the 1-based convention).
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

/// Value of the cup product `phi . psi` on one basis input of the target
/// block `(phi.r + psi.r, phi.s + psi.s)`.
pub fn cup_eval(
    phi: &Cochain,
    psi: &Cochain,
    ctx: &ModuleCtx,
    key: &Key,
) -> Result<Element, ProductError> {
    let (word, wedge) = key;
    let (r, s) = (phi.r, phi.s);
    let s2 = psi.s;
    debug_assert_eq!(word.len(), r + psi.r);
    debug_assert_eq!(wedge.len(), s + s2);
    let data = ctx.data;
    let mut acc = Element::zero();
    let left_word: Word = word[..r].to_vec();
    let right_word: Word = word[r..].to_vec();
    for (exp, subset, complement) in signed_subsets(s + s2, s) {
        let left_wedge: Wedge = subset.iter().map(|i| wedge[*i]).collect();
        let right_wedge: Wedge = complement.iter().map(|i| wedge[*i]).collect();
        let a = phi.eval(ctx, &(left_word.clone(), left_wedge));
        if a.is_zero() {
            continue;
        }
        let b = psi.eval(ctx, &(right_word.clone(), right_wedge));
        if b.is_zero() {
            continue;
        }
        let prod = reg_value(&a)?.mul(reg_value(&b)?, data);
        acc = acc.add(&prod.scale(&sign(data.field, psi.r * s + exp)));
    }
    Ok(acc)
}

/// The cup product materialized on the full target grid (finite `A`).
pub fn cup(phi: &Cochain, psi: &Cochain, data: &RingData) -> Result<Cochain, ProductError> {
    let module = ModuleData::Regular;
    let ctx = ModuleCtx::new(data, &module);
    let (r, s) = (phi.r + psi.r, phi.s + psi.s);
    let mut out = Cochain::zero(r, s);
    if s > data.gen_count() {
        return Ok(out);
    }
    for key in block_keys(data, r, s) {
        let v = cup_eval(phi, psi, &ctx, &key)?;
        out.add_value(key, MValue::Reg(v));
    }
    Ok(out)
}

/// The cap product `c . psi` of a chain in bidegree `(r, s)` by an
/// `E`-valued cochain in bidegree `(r', s')`, landing in `(r-r', s-s')`.
pub fn cap(c: &Chain, psi: &Cochain, ctx: &ModuleCtx) -> Result<Chain, ProductError> {
    let (r, s) = (c.r, c.s);
    let (rq, sq) = (psi.r, psi.s);
    if rq > r || sq > s {
        return Err(ProductError::DegreeUnderflow);
    }
    let data = ctx.data;
    let mut out = Chain::zero(r - rq, s - sq);
    for ((word, wedge), value) in &c.table {
        let head_word: Word = word[..rq].to_vec();
        let tail_word: Word = word[rq..].to_vec();
        for (exp, subset, complement) in signed_subsets(s, sq) {
            let head_wedge: Wedge = subset.iter().map(|i| wedge[*i]).collect();
            let tail_wedge: Wedge = complement.iter().map(|i| wedge[*i]).collect();
            let pv = psi.eval(ctx, &(head_word.clone(), head_wedge));
            if pv.is_zero() {
                continue;
            }
            let e = reg_value(&pv)?;
            let moved = ctx.right_by_element(e, value);
            let sgn = sign(data.field, r * sq + rq * sq + exp);
            out.add_value((tail_word.clone(), tail_wedge), moved.scale(&sgn));
        }
    }
    Ok(out)
}
