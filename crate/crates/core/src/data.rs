//! Declarative descriptions of the input data of a differential operator ring
//! `E = A #_f U(g)`: the coefficient algebra `A` (finite-dimensional via
//! structure constants, or a symmetric algebra `S(V)`), a subalgebra `K` of
//! `A`, the Lie algebra `g`, the action of `g` on `A`, and the cocycle `f`.

use crate::element::ABasisId;
use crate::linalg::{SparseMatrix, SparseVector};
use crate::scalar::{FieldKind, Scalar};

/// A finite-dimensional associative algebra given by structure constants on a
/// fixed basis. `mul[i][j]` is the expansion of `e_i * e_j` over the basis.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    pub dim: usize,
    pub unit: usize,
    pub names: Vec<String>,
    pub mul: Vec<Vec<SparseVector>>,
    /// Optional grading, used only for filtration degrees of `E`-elements.
    pub degrees: Option<Vec<u32>>,
}

impl FiniteAlgebra {
    /// Product of two coordinate vectors through the structure constants.
    pub fn mul_vectors(&self, a: &SparseVector, b: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                out = out.add_scaled(&self.mul[*i][*j], &ca.mul(cb));
            }
        }
        out
    }
}

/// The symmetric algebra `S(V)` on a finite-dimensional space `V`, with basis
/// monomials indexed by exponent vectors. Used by the specialized complexes
/// for affine actions and affine cocycles.
#[derive(Clone, Debug)]
pub struct SymmetricAlgebra {
    pub dim_v: usize,
    pub names: Vec<String>,
}

#[derive(Clone, Debug)]
pub enum CoeffAlgebra {
    Finite(FiniteAlgebra),
    Symmetric(SymmetricAlgebra),
}

/// A Lie algebra on an ordered basis, given by the full bracket table
/// `bracket[i][j] = [g_i, g_j]` expanded over the basis.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub dim: usize,
    pub names: Vec<String>,
    pub bracket: Vec<Vec<SparseVector>>,
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> LieAlgebra {
        LieAlgebra {
            dim,
            names: (1..=dim).map(|i| format!("x{i}")).collect(),
            bracket: vec![vec![SparseVector::new(); dim]; dim],
        }
    }

    /// Builds the table from entries `(i, j, k, c)` meaning
    /// `[g_i, g_j] += c * g_k` for `i < j`; the transposes are filled in.
    pub fn from_upper_entries(
        dim: usize,
        names: Vec<String>,
        entries: &[(usize, usize, usize, Scalar)],
    ) -> LieAlgebra {
        let mut per: Vec<Vec<Vec<(usize, Scalar)>>> = vec![vec![Vec::new(); dim]; dim];
        for (i, j, k, c) in entries {
            per[*i][*j].push((*k, c.clone()));
            per[*j][*i].push((*k, c.neg()));
        }
        let bracket = per
            .into_iter()
            .map(|row| row.into_iter().map(SparseVector::from_entries).collect())
            .collect();
        LieAlgebra { dim, names, bracket }
    }
}

/// A value in `k ⊕ V`: a scalar part plus a linear part over the `V`-basis.
#[derive(Clone, Debug)]
pub struct AffineValue {
    pub constant: Scalar,
    pub linear: SparseVector,
}

impl AffineValue {
    pub fn zero(field: FieldKind) -> AffineValue {
        AffineValue {
            constant: field.zero(),
            linear: SparseVector::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.linear.is_zero()
    }
}

/// The action of `g` on `A`. In finite mode, `Matrices[i]` lists the image of
/// each `A`-basis vector under the derivation attached to `g_i`; in symmetric
/// mode each generator acts affinely on `V` and extends to `S(V)` by the
/// Leibniz rule.
#[derive(Clone, Debug)]
pub enum ActionData {
    Matrices(Vec<Vec<SparseVector>>),
    Affine(Vec<Vec<AffineValue>>),
}

/// The cocycle `f : g x g -> A`, tabulated on basis pairs.
#[derive(Clone, Debug)]
pub enum CocycleData {
    Finite(Vec<Vec<SparseVector>>),
    Affine(Vec<Vec<AffineValue>>),
}

/// The subalgebra `K` of `A` that the (co)homology is taken relative to.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub ground_field: bool,
    /// Spanning vectors over the `A`-basis; ignored when `ground_field`.
    pub span: Vec<SparseVector>,
}

impl Subalgebra {
    pub fn ground_field() -> Subalgebra {
        Subalgebra {
            ground_field: true,
            span: Vec::new(),
        }
    }
}

/// Reduction data for the quotient `A/K`: a fixed complement of `K` spanned
/// by basis vectors of `A`, plus the expression of every `A`-basis class in
/// complement coordinates.
#[derive(Clone, Debug)]
pub struct KContext {
    /// `A`-basis indices spanning the chosen complement of `K`.
    pub complement: Vec<usize>,
    /// `class_of[i]`: class of `e_i` as coordinates over `complement`.
    pub class_of: Vec<SparseVector>,
    /// Row-echelon basis of `K` over the `A`-basis (for membership tests).
    pub k_rows: Vec<SparseVector>,
    pub trivial: bool,
}

/// The full input of a differential operator ring.
#[derive(Clone, Debug)]
pub struct RingData {
    pub field: FieldKind,
    pub coeff: CoeffAlgebra,
    pub lie: LieAlgebra,
    pub action: ActionData,
    pub cocycle: CocycleData,
    pub subalgebra: Subalgebra,
    kctx: Option<KContext>,
}

/// A finitely supported combination of `A`-basis labels.
pub type AComb = Vec<(ABasisId, Scalar)>;

impl RingData {
    pub fn new(
        field: FieldKind,
        coeff: CoeffAlgebra,
        lie: LieAlgebra,
        action: ActionData,
        cocycle: CocycleData,
        subalgebra: Subalgebra,
    ) -> Result<RingData, String> {
        let d = lie.dim;
        match (&coeff, &action) {
            (CoeffAlgebra::Finite(a), ActionData::Matrices(m)) => {
                if m.len() != d {
                    return Err(format!("action has {} maps, Lie dim is {d}", m.len()));
                }
                for dg in m {
                    if dg.len() != a.dim {
                        return Err("action map has wrong dimension".into());
                    }
                }
                if a.unit >= a.dim {
                    return Err("unit index out of range".into());
                }
                if a.mul.len() != a.dim || a.mul.iter().any(|r| r.len() != a.dim) {
                    return Err("structure constant table has wrong shape".into());
                }
            }
            (CoeffAlgebra::Symmetric(sym), ActionData::Affine(m)) => {
                if m.len() != d || m.iter().any(|r| r.len() != sym.dim_v) {
                    return Err("affine action table has wrong shape".into());
                }
                if !subalgebra.ground_field {
                    return Err("symmetric mode requires K = k".into());
                }
            }
            _ => return Err("action kind does not match coefficient algebra kind".into()),
        }
        match &cocycle {
            CocycleData::Finite(f) => {
                if f.len() != d || f.iter().any(|r| r.len() != d) {
                    return Err("cocycle table has wrong shape".into());
                }
                if matches!(coeff, CoeffAlgebra::Symmetric(_)) {
                    return Err("symmetric mode requires an affine cocycle".into());
                }
            }
            CocycleData::Affine(f) => {
                if f.len() != d || f.iter().any(|r| r.len() != d) {
                    return Err("cocycle table has wrong shape".into());
                }
                if matches!(coeff, CoeffAlgebra::Finite(_)) {
                    return Err("finite mode requires a finite cocycle".into());
                }
            }
        }
        let kctx = match &coeff {
            CoeffAlgebra::Finite(a) => Some(build_k_context(field, a, &subalgebra)?),
            CoeffAlgebra::Symmetric(_) => None,
        };
        Ok(RingData {
            field,
            coeff,
            lie,
            action,
            cocycle,
            subalgebra,
            kctx,
        })
    }

    pub fn gen_count(&self) -> usize {
        self.lie.dim
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self.coeff, CoeffAlgebra::Symmetric(_))
    }

    pub fn finite_algebra(&self) -> Option<&FiniteAlgebra> {
        match &self.coeff {
            CoeffAlgebra::Finite(a) => Some(a),
            CoeffAlgebra::Symmetric(_) => None,
        }
    }

    pub fn symmetric_algebra(&self) -> Option<&SymmetricAlgebra> {
        match &self.coeff {
            CoeffAlgebra::Symmetric(s) => Some(s),
            CoeffAlgebra::Finite(_) => None,
        }
    }

    pub fn k_context(&self) -> Option<&KContext> {
        self.kctx.as_ref()
    }

    pub fn a_unit_id(&self) -> ABasisId {
        match &self.coeff {
            CoeffAlgebra::Finite(a) => ABasisId::Idx(a.unit),
            CoeffAlgebra::Symmetric(s) => ABasisId::Mono(vec![0; s.dim_v]),
        }
    }

    /// Product of two `A`-basis labels, expanded over basis labels.
    pub fn a_mul_ids(&self, a: &ABasisId, b: &ABasisId) -> AComb {
        match (&self.coeff, a, b) {
            (CoeffAlgebra::Finite(alg), ABasisId::Idx(i), ABasisId::Idx(j)) => alg.mul[*i][*j]
                .iter()
                .map(|(k, c)| (ABasisId::Idx(*k), c.clone()))
                .collect(),
            (CoeffAlgebra::Symmetric(_), ABasisId::Mono(e), ABasisId::Mono(f)) => {
                let sum = e.iter().zip(f).map(|(x, y)| x + y).collect();
                vec![(ABasisId::Mono(sum), self.field.one())]
            }
            _ => panic!("basis label does not match coefficient algebra"),
        }
    }

    /// The derivation attached to `g_i`, applied to one `A`-basis label.
    pub fn a_act(&self, gen: usize, a: &ABasisId) -> AComb {
        match (&self.coeff, a) {
            (CoeffAlgebra::Finite(_), ABasisId::Idx(i)) => {
                let ActionData::Matrices(m) = &self.action else {
                    unreachable!()
                };
                m[gen][*i]
                    .iter()
                    .map(|(k, c)| (ABasisId::Idx(*k), c.clone()))
                    .collect()
            }
            (CoeffAlgebra::Symmetric(sym), ABasisId::Mono(exps)) => {
                let ActionData::Affine(m) = &self.action else {
                    unreachable!()
                };
                // Leibniz rule over the factors of the monomial.
                let mut out: Vec<(ABasisId, Scalar)> = Vec::new();
                for v in 0..sym.dim_v {
                    if exps[v] == 0 {
                        continue;
                    }
                    let mult = self.field.integer(exps[v] as i64);
                    let av = &m[gen][v];
                    let mut reduced = exps.to_vec();
                    reduced[v] -= 1;
                    if !av.constant.is_zero() {
                        out.push((ABasisId::Mono(reduced.clone()), mult.mul(&av.constant)));
                    }
                    for (w, c) in av.linear.iter() {
                        let mut e = reduced.clone();
                        e[*w] += 1;
                        out.push((ABasisId::Mono(e), mult.mul(c)));
                    }
                }
                combine_comb(out)
            }
            _ => panic!("basis label does not match coefficient algebra"),
        }
    }

    /// The raw cocycle value `f(g_i, g_j)` as a basis combination.
    pub fn cocycle_comb(&self, i: usize, j: usize) -> AComb {
        match &self.cocycle {
            CocycleData::Finite(f) => f[i][j]
                .iter()
                .map(|(k, c)| (ABasisId::Idx(*k), c.clone()))
                .collect(),
            CocycleData::Affine(f) => {
                let v = &f[i][j];
                let dim_v = self.symmetric_algebra().unwrap().dim_v;
                let mut out = Vec::new();
                if !v.constant.is_zero() {
                    out.push((ABasisId::Mono(vec![0; dim_v]), v.constant.clone()));
                }
                for (w, c) in v.linear.iter() {
                    let mut e = vec![0; dim_v];
                    e[*w] = 1;
                    out.push((ABasisId::Mono(e), c.clone()));
                }
                out
            }
        }
    }

    /// The commutation defect `f(g_i, g_j) - f(g_j, g_i)` that appears in the
    /// defining relations and in the degree-two differentials.
    pub fn fhat_comb(&self, i: usize, j: usize) -> AComb {
        let mut out = self.cocycle_comb(i, j);
        for (id, c) in self.cocycle_comb(j, i) {
            out.push((id, c.neg()));
        }
        combine_comb(out)
    }

    /// The `V`-component of `fhat` (symmetric mode), over the `V`-basis.
    pub fn fhat_v_part(&self, i: usize, j: usize) -> SparseVector {
        let CocycleData::Affine(f) = &self.cocycle else {
            panic!("fhat_v_part requires symmetric mode")
        };
        f[i][j].linear.add_scaled(&f[j][i].linear, &self.field.integer(-1))
    }

    /// The `V`-component of `v^{g_i}` (symmetric mode).
    pub fn action_v_part(&self, gen: usize, v: usize) -> &SparseVector {
        let ActionData::Affine(m) = &self.action else {
            panic!("action_v_part requires symmetric mode")
        };
        &m[gen][v].linear
    }

    pub fn bracket(&self, i: usize, j: usize) -> &SparseVector {
        &self.lie.bracket[i][j]
    }

    /// Filtration degree contribution of an `A`-basis label.
    pub fn a_deg(&self, a: &ABasisId) -> u32 {
        match (&self.coeff, a) {
            (CoeffAlgebra::Finite(alg), ABasisId::Idx(i)) => match &alg.degrees {
                Some(d) => d[*i],
                None => 0,
            },
            (CoeffAlgebra::Symmetric(_), ABasisId::Mono(e)) => e.iter().sum(),
            _ => panic!("basis label does not match coefficient algebra"),
        }
    }

    pub fn a_name(&self, a: &ABasisId) -> String {
        match (&self.coeff, a) {
            (CoeffAlgebra::Finite(alg), ABasisId::Idx(i)) => alg.names[*i].clone(),
            (CoeffAlgebra::Symmetric(sym), ABasisId::Mono(e)) => {
                let parts: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| **p > 0)
                    .map(|(v, p)| {
                        if *p == 1 {
                            sym.names[v].clone()
                        } else {
                            format!("{}^{}", sym.names[v], p)
                        }
                    })
                    .collect();
                if parts.is_empty() {
                    "1".into()
                } else {
                    parts.join(" ")
                }
            }
            _ => panic!("basis label does not match coefficient algebra"),
        }
    }

    /// The class of a basis combination in `A/K`, over the class basis
    /// (complement basis vectors in finite mode; non-unit monomials in
    /// symmetric mode).
    pub fn class_comb(&self, comb: &AComb) -> AComb {
        match &self.coeff {
            CoeffAlgebra::Finite(_) => {
                let kctx = self.kctx.as_ref().unwrap();
                let mut out = Vec::new();
                for (id, c) in comb {
                    let ABasisId::Idx(i) = id else { unreachable!() };
                    for (pos, cc) in kctx.class_of[*i].iter() {
                        out.push((
                            ABasisId::Idx(kctx.complement[*pos]),
                            c.mul(cc),
                        ));
                    }
                }
                combine_comb(out)
            }
            CoeffAlgebra::Symmetric(_) => {
                let unit = self.a_unit_id();
                comb.iter()
                    .filter(|(id, _)| *id != unit)
                    .cloned()
                    .collect()
            }
        }
    }

    /// Class of a single basis label.
    pub fn class_of_id(&self, id: &ABasisId) -> AComb {
        self.class_comb(&vec![(id.clone(), self.field.one())])
    }
}

/// Merges duplicate labels and drops zero coefficients.
pub fn combine_comb(mut comb: AComb) -> AComb {
    comb.sort_by(|(a, _), (b, _)| a.cmp(b));
    let mut out: AComb = Vec::with_capacity(comb.len());
    for (id, c) in comb {
        match out.last_mut() {
            Some((last, acc)) if *last == id => *acc = acc.add(&c),
            _ => out.push((id, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

fn build_k_context(
    field: FieldKind,
    alg: &FiniteAlgebra,
    sub: &Subalgebra,
) -> Result<KContext, String> {
    let n = alg.dim;
    let span: Vec<SparseVector> = if sub.ground_field {
        vec![SparseVector::unit(alg.unit, field)]
    } else {
        let mut s = sub.span.clone();
        s.push(SparseVector::unit(alg.unit, field));
        s
    };
    // Row-reduce the span of K to a reduced echelon basis.
    let m = SparseMatrix::from_rows(n, field, span);
    let rref = rref_rows(&m);
    let pivot_cols: Vec<usize> = rref
        .iter()
        .map(|r| r.first_index().expect("zero row in rref"))
        .collect();
    let complement: Vec<usize> = (0..n).filter(|i| !pivot_cols.contains(i)).collect();
    let comp_pos: std::collections::BTreeMap<usize, usize> = complement
        .iter()
        .enumerate()
        .map(|(pos, i)| (*i, pos))
        .collect();
    let mut class_of = vec![SparseVector::new(); n];
    for (i, cls) in class_of.iter_mut().enumerate() {
        if let Some(pos) = comp_pos.get(&i) {
            *cls = SparseVector::unit(*pos, field);
        } else {
            // e_i = K-element + sum over complement; its class is minus the
            // complement tail of the rref row with pivot i... the row says
            // e_i + sum_j c_j e_j in K, so class(e_i) = -sum c_j class(e_j).
            let row = rref
                .iter()
                .find(|r| r.first_index() == Some(i))
                .expect("pivot row");
            let mut entries = Vec::new();
            let pivot_val = row.get(i).unwrap().clone();
            for (j, c) in row.iter() {
                if *j == i {
                    continue;
                }
                let pos = comp_pos
                    .get(j)
                    .expect("rref tail entries lie in the complement");
                entries.push((*pos, c.div(&pivot_val).neg()));
            }
            *cls = SparseVector::from_entries(entries);
        }
    }
    let trivial = sub.ground_field;
    Ok(KContext {
        complement,
        class_of,
        k_rows: rref,
        trivial,
    })
}

/// Reduced row echelon form (each pivot is the only nonzero in its column
/// among the returned rows). Zero rows are dropped.
pub fn rref_rows(m: &SparseMatrix) -> Vec<SparseVector> {
    let mut rows: Vec<SparseVector> = m.rows().iter().filter(|r| !r.is_zero()).cloned().collect();
    let mut result: Vec<SparseVector> = Vec::new();
    for col in 0..m.ncols() {
        let Some(pos) = rows.iter().position(|r| r.first_index() == Some(col)) else {
            continue;
        };
        let pivot = rows.remove(pos);
        let pv = pivot.get(col).unwrap().clone();
        for r in rows.iter_mut().chain(result.iter_mut()) {
            if let Some(rv) = r.get(col) {
                let factor = rv.div(&pv).neg();
                *r = r.add_scaled(&pivot, &factor);
            }
        }
        rows.retain(|r| !r.is_zero());
        result.push(pivot);
    }
    result.sort_by_key(|r| r.first_index());
    result
}

/// Membership of a vector in the row space of an echelon basis.
pub fn in_row_space(rows: &[SparseVector], v: &SparseVector) -> bool {
    let mut v = v.clone();
    for row in rows {
        let lead = row.first_index().unwrap();
        if let Some(c) = v.get(lead) {
            let factor = c.div(row.get(lead).unwrap()).neg();
            v = v.add_scaled(row, &factor);
        }
    }
    v.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn dual_numbers_classes() {
        let data = presets::dual_numbers(FieldKind::Rationals);
        let kctx = data.k_context().unwrap();
        assert_eq!(kctx.complement, vec![1]);
        let cls = data.class_of_id(&ABasisId::Idx(1));
        assert_eq!(cls.len(), 1);
        let cls_unit = data.class_of_id(&ABasisId::Idx(0));
        assert!(cls_unit.is_empty());
    }

    #[test]
    fn nontrivial_subalgebra_complement() {
        // A = k x k with K = A: the complement is empty.
        let field = FieldKind::Rationals;
        let alg = presets::product_of_fields(field);
        let span = vec![
            SparseVector::unit(0, field),
            SparseVector::unit(1, field),
        ];
        let data = RingData::new(
            field,
            CoeffAlgebra::Finite(alg),
            LieAlgebra::abelian(0),
            ActionData::Matrices(vec![]),
            CocycleData::Finite(vec![]),
            Subalgebra {
                ground_field: false,
                span,
            },
        )
        .unwrap();
        assert!(data.k_context().unwrap().complement.is_empty());
    }

    #[test]
    fn symmetric_monomial_products() {
        let data = presets::weyl(FieldKind::Rationals);
        let a = ABasisId::Mono(vec![2]);
        let b = ABasisId::Mono(vec![3]);
        let p = data.a_mul_ids(&a, &b);
        assert_eq!(p, vec![(ABasisId::Mono(vec![5]), FieldKind::Rationals.one())]);
        // d/dv of v^3 is 3 v^2 under the Weyl action v^x = 1.
        let act = data.a_act(0, &b);
        assert_eq!(act.len(), 1);
        assert_eq!(act[0].0, ABasisId::Mono(vec![2]));
        assert_eq!(act[0].1, FieldKind::Rationals.integer(3));
    }
}
