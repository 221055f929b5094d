//! Bimodule coefficients for the (co)homology complexes.
//!
//! A coefficient bimodule is either `REGULAR` (the ring `E` acting on itself;
//! values are `Element`s) or a finite-dimensional `E`-bimodule given by
//! commuting left/right action matrices for the `A`-generators and the Lie
//! generators.

use crate::data::RingData;
use crate::element::{ABasisId, Element, PbwMonomial};
use crate::linalg::SparseVector;
use crate::scalar::Scalar;

/// Column-major action matrix: `cols[j]` is the image of the j-th basis
/// vector of the module.
pub type ActionMat = Vec<SparseVector>;

pub fn apply_mat(mat: &ActionMat, v: &SparseVector) -> SparseVector {
    let mut out = SparseVector::new();
    for (j, c) in v.iter() {
        out = out.add_scaled(&mat[*j], c);
    }
    out
}

/// A finite-dimensional `E`-bimodule. In finite mode `left_a`/`right_a` are
/// indexed by the `A`-basis; in symmetric mode by the `V`-basis (the matrices
/// of the commuting multiplication operators of the variables).
#[derive(Clone, Debug)]
pub struct FiniteModule {
    pub dim: usize,
    pub left_a: Vec<ActionMat>,
    pub right_a: Vec<ActionMat>,
    pub left_g: Vec<ActionMat>,
    pub right_g: Vec<ActionMat>,
}

#[derive(Clone, Debug)]
pub enum ModuleData {
    /// `M = E` with the multiplication actions.
    Regular,
    Finite(FiniteModule),
}

impl ModuleData {
    pub fn is_regular(&self) -> bool {
        matches!(self, ModuleData::Regular)
    }

    pub fn finite(&self) -> Option<&FiniteModule> {
        match self {
            ModuleData::Finite(m) => Some(m),
            ModuleData::Regular => None,
        }
    }
}

/// A module value: a coordinate vector (finite modules) or a ring element
/// (`REGULAR`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MValue {
    Fin(SparseVector),
    Reg(Element),
}

impl MValue {
    pub fn is_zero(&self) -> bool {
        match self {
            MValue::Fin(v) => v.is_zero(),
            MValue::Reg(e) => e.is_zero(),
        }
    }

    pub fn add(&self, other: &MValue) -> MValue {
        match (self, other) {
            (MValue::Fin(a), MValue::Fin(b)) => MValue::Fin(a.add(b)),
            (MValue::Reg(a), MValue::Reg(b)) => MValue::Reg(a.add(b)),
            _ => panic!("mixed module values"),
        }
    }

    pub fn sub(&self, other: &MValue) -> MValue {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MValue {
        match self {
            MValue::Fin(a) => MValue::Fin(a.neg()),
            MValue::Reg(a) => MValue::Reg(a.neg()),
        }
    }

    pub fn scale(&self, c: &Scalar) -> MValue {
        match self {
            MValue::Fin(a) => MValue::Fin(a.scale(c)),
            MValue::Reg(a) => MValue::Reg(a.scale(c)),
        }
    }

    pub fn as_element(&self) -> Option<&Element> {
        match self {
            MValue::Reg(e) => Some(e),
            MValue::Fin(_) => None,
        }
    }
}

/// One linear operator on module values, as produced by the differential
/// term expansions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ModOp {
    Id,
    /// Left multiplication by an `A`-basis label.
    LeftA(ABasisId),
    RightA(ABasisId),
    /// `v -> v * (1 # g_i) - (1 # g_i) * v`.
    CommGen(usize),
    /// `v -> v * a - a * v` for an `A`-basis label.
    CommA(ABasisId),
}

/// Evaluation context tying a ring description to a coefficient bimodule.
#[derive(Clone, Copy)]
pub struct ModuleCtx<'a> {
    pub data: &'a RingData,
    pub module: &'a ModuleData,
}

impl<'a> ModuleCtx<'a> {
    pub fn new(data: &'a RingData, module: &'a ModuleData) -> ModuleCtx<'a> {
        ModuleCtx { data, module }
    }

    pub fn zero(&self) -> MValue {
        match self.module {
            ModuleData::Regular => MValue::Reg(Element::zero()),
            ModuleData::Finite(_) => MValue::Fin(SparseVector::new()),
        }
    }

    pub fn basis_value(&self, i: usize) -> MValue {
        match self.module {
            ModuleData::Regular => panic!("REGULAR module has no enumerated basis"),
            ModuleData::Finite(_) => MValue::Fin(SparseVector::unit(i, self.data.field)),
        }
    }

    pub fn dim(&self) -> Option<usize> {
        self.module.finite().map(|m| m.dim)
    }

    pub fn left_by_id(&self, a: &ABasisId, v: &MValue) -> MValue {
        match (self.module, v) {
            (ModuleData::Regular, MValue::Reg(e)) => {
                MValue::Reg(Element::from_a_basis(self.data, a.clone()).mul(e, self.data))
            }
            (ModuleData::Finite(m), MValue::Fin(x)) => {
                MValue::Fin(self.apply_a_mats(&m.left_a, a, x))
            }
            _ => panic!("module value does not match module kind"),
        }
    }

    pub fn right_by_id(&self, a: &ABasisId, v: &MValue) -> MValue {
        match (self.module, v) {
            (ModuleData::Regular, MValue::Reg(e)) => {
                MValue::Reg(e.mul(&Element::from_a_basis(self.data, a.clone()), self.data))
            }
            (ModuleData::Finite(m), MValue::Fin(x)) => {
                MValue::Fin(self.apply_a_mats(&m.right_a, a, x))
            }
            _ => panic!("module value does not match module kind"),
        }
    }

    /// Applies the action of an `A`-basis label through the stored matrices.
    /// Finite labels index directly; monomial labels compose the commuting
    /// variable matrices.
    fn apply_a_mats(&self, mats: &[ActionMat], a: &ABasisId, x: &SparseVector) -> SparseVector {
        match a {
            ABasisId::Idx(i) => apply_mat(&mats[*i], x),
            ABasisId::Mono(exps) => {
                let mut v = x.clone();
                for (j, e) in exps.iter().enumerate() {
                    for _ in 0..*e {
                        v = apply_mat(&mats[j], &v);
                    }
                }
                v
            }
        }
    }

    pub fn left_by_gen(&self, i: usize, v: &MValue) -> MValue {
        match (self.module, v) {
            (ModuleData::Regular, MValue::Reg(e)) => {
                MValue::Reg(Element::generator(self.data, i).mul(e, self.data))
            }
            (ModuleData::Finite(m), MValue::Fin(x)) => MValue::Fin(apply_mat(&m.left_g[i], x)),
            _ => panic!("module value does not match module kind"),
        }
    }

    pub fn right_by_gen(&self, i: usize, v: &MValue) -> MValue {
        match (self.module, v) {
            (ModuleData::Regular, MValue::Reg(e)) => {
                MValue::Reg(e.mul(&Element::generator(self.data, i), self.data))
            }
            (ModuleData::Finite(m), MValue::Fin(x)) => MValue::Fin(apply_mat(&m.right_g[i], x)),
            _ => panic!("module value does not match module kind"),
        }
    }

    /// Left action of a full ring element, factoring each PBW monomial as
    /// `a * y_1^{e_1} ... y_d^{e_d}` (rightmost factor acts first).
    pub fn left_by_element(&self, e: &Element, v: &MValue) -> MValue {
        if let (ModuleData::Regular, MValue::Reg(w)) = (self.module, v) {
            return MValue::Reg(e.mul(w, self.data));
        }
        let mut out = self.zero();
        for (m, c) in e.terms() {
            let mut acc = v.clone();
            for i in (0..m.exps.len()).rev() {
                for _ in 0..m.exps[i] {
                    acc = self.left_by_gen(i, &acc);
                }
            }
            acc = self.left_by_id(&m.a, &acc);
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// Right action of a full ring element (leftmost factor acts first).
    pub fn right_by_element(&self, e: &Element, v: &MValue) -> MValue {
        if let (ModuleData::Regular, MValue::Reg(w)) = (self.module, v) {
            return MValue::Reg(w.mul(e, self.data));
        }
        let mut out = self.zero();
        for (m, c) in e.terms() {
            let mut acc = self.right_by_id(&m.a, v);
            for (i, exp) in m.exps.iter().enumerate() {
                for _ in 0..*exp {
                    acc = self.right_by_gen(i, &acc);
                }
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// `[v, 1 # g_i] = v * g_i - g_i * v`.
    pub fn comm_gen(&self, i: usize, v: &MValue) -> MValue {
        self.right_by_gen(i, v).sub(&self.left_by_gen(i, v))
    }

    /// `[v, a] = v * a - a * v`.
    pub fn comm_a(&self, a: &ABasisId, v: &MValue) -> MValue {
        self.right_by_id(a, v).sub(&self.left_by_id(a, v))
    }

    pub fn apply_op(&self, op: &ModOp, v: &MValue) -> MValue {
        match op {
            ModOp::Id => v.clone(),
            ModOp::LeftA(a) => self.left_by_id(a, v),
            ModOp::RightA(a) => self.right_by_id(a, v),
            ModOp::CommGen(i) => self.comm_gen(*i, v),
            ModOp::CommA(a) => self.comm_a(a, v),
        }
    }

    /// The value of a single `E`-basis monomial in the REGULAR module.
    pub fn monomial_value(&self, m: &PbwMonomial) -> MValue {
        MValue::Reg(Element::from_monomial(m.clone(), self.data.field.one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::scalar::FieldKind;

    #[test]
    fn regular_actions_are_multiplication() {
        let data = presets::dual_numbers(FieldKind::Rationals);
        let module = ModuleData::Regular;
        let ctx = ModuleCtx::new(&data, &module);
        let x = Element::generator(&data, 0);
        let eps = Element::from_a_basis(&data, ABasisId::Idx(1));
        let v = MValue::Reg(x.clone());
        // comm_a(e, 1#x) = (1#x) e - e (1#x) = e^x = e.
        let c = ctx.comm_a(&ABasisId::Idx(1), &v);
        assert_eq!(c, MValue::Reg(x.commutator(&eps, &data)));
    }

    #[test]
    fn finite_module_actions_compose() {
        let data = presets::dual_numbers(FieldKind::Rationals);
        let module = presets::augmentation_module(&data);
        let ctx = ModuleCtx::new(&data, &module);
        let m = ctx.basis_value(0);
        // The unit acts as identity, the nilpotent and the generator act by 0.
        assert_eq!(ctx.left_by_id(&ABasisId::Idx(0), &m), m);
        assert!(ctx.left_by_id(&ABasisId::Idx(1), &m).is_zero());
        assert!(ctx.comm_gen(0, &m).is_zero());
    }
}
