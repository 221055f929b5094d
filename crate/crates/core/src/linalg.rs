//! Sparse exact linear algebra over the configured field.
//!
//! Rank, kernel and solve all run through one deterministic forward
//! elimination. Over the rationals the elimination is fraction-free: rows are
//! scaled to integers up front and every update is an integer cross-multiply
//! followed by a content reduction, so no fractions (and no uncontrolled
//! coefficient growth) appear before back-substitution. Over a prime field
//! plain modular elimination is used. Pivots are always the first nonzero
//! entry in row-major order, which makes every result reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{FieldKind, Scalar};

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SparseVector {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVector {
    pub fn new() -> SparseVector {
        SparseVector { entries: Vec::new() }
    }

    /// Builds a vector from arbitrary (index, coefficient) pairs, combining
    /// duplicates and dropping zeros.
    pub fn from_entries(pairs: Vec<(usize, Scalar)>) -> SparseVector {
        let mut pairs = pairs;
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(pairs.len());
        for (i, c) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = acc.add(&c),
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !c.is_zero());
        SparseVector { entries }
    }

    pub fn unit(index: usize, field: FieldKind) -> SparseVector {
        SparseVector {
            entries: vec![(index, field.one())],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn first_index(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVector {
        if c.is_zero() {
            return SparseVector::new();
        }
        SparseVector {
            entries: self
                .entries
                .iter()
                .map(|(i, a)| (*i, a.mul(c)))
                .collect(),
        }
    }

    pub fn neg(&self) -> SparseVector {
        SparseVector {
            entries: self.entries.iter().map(|(i, a)| (*i, a.neg())).collect(),
        }
    }

    /// `self + c * other`, merged in one pass.
    pub fn add_scaled(&self, other: &SparseVector, c: &Scalar) -> SparseVector {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let pick_left = match (self.entries.get(i), other.entries.get(j)) {
                (Some((a, _)), Some((b, _))) => {
                    if a == b {
                        let v = self.entries[i].1.add(&other.entries[j].1.mul(c));
                        if !v.is_zero() {
                            out.push((*a, v));
                        }
                        i += 1;
                        j += 1;
                        continue;
                    }
                    a < b
                }
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            if pick_left {
                out.push(self.entries[i].clone());
                i += 1;
            } else {
                let v = other.entries[j].1.mul(c);
                if !v.is_zero() {
                    out.push((other.entries[j].0, v));
                }
                j += 1;
            }
        }
        SparseVector { entries: out }
    }

    pub fn add(&self, other: &SparseVector) -> SparseVector {
        let one = match (self.entries.first(), other.entries.first()) {
            (_, Some((_, c))) => c.field().one(),
            (Some((_, c)), _) => c.field().one(),
            _ => return SparseVector::new(),
        };
        self.add_scaled(other, &one)
    }

    pub fn dot(&self, other: &SparseVector) -> Option<Scalar> {
        let mut acc: Option<Scalar> = None;
        for (i, a) in &self.entries {
            if let Some(b) = other.get(*i) {
                let t = a.mul(b);
                acc = Some(match acc {
                    Some(s) => s.add(&t),
                    None => t,
                });
            }
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    DimensionMismatch { expected: usize, got: usize },
}

impl std::fmt::Display for LinalgError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LinalgError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
        }
    }
}

impl std::error::Error for LinalgError {}

/// A row-major sparse matrix over a fixed field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    field: FieldKind,
    rows: Vec<SparseVector>,
}

impl SparseMatrix {
    pub fn zero(nrows: usize, ncols: usize, field: FieldKind) -> SparseMatrix {
        SparseMatrix {
            nrows,
            ncols,
            field,
            rows: vec![SparseVector::new(); nrows],
        }
    }

    pub fn from_rows(ncols: usize, field: FieldKind, rows: Vec<SparseVector>) -> SparseMatrix {
        for r in &rows {
            if let Some(&(i, _)) = r.entries.last() {
                assert!(i < ncols, "column index {i} out of bounds ({ncols})");
            }
        }
        SparseMatrix {
            nrows: rows.len(),
            ncols,
            field,
            rows,
        }
    }

    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        field: FieldKind,
        triplets: Vec<(usize, usize, Scalar)>,
    ) -> SparseMatrix {
        let mut per_row: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); nrows];
        for (r, c, v) in triplets {
            assert!(r < nrows && c < ncols, "triplet ({r},{c}) out of bounds");
            per_row[r].push((c, v));
        }
        SparseMatrix {
            nrows,
            ncols,
            field,
            rows: per_row.into_iter().map(SparseVector::from_entries).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn row(&self, i: usize) -> &SparseVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// Matrix-vector product; `x` is indexed by columns.
    pub fn mul_vec(&self, x: &SparseVector) -> SparseVector {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            if let Some(v) = row.dot(x) {
                if !v.is_zero() {
                    out.push((i, v));
                }
            }
        }
        SparseVector::from_entries(out)
    }

    /// Matrix product `self * other`.
    pub fn mul_mat(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows);
        let mut triplets = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row.iter() {
                for (j, b) in other.rows[*k].iter() {
                    triplets.push((i, *j, a.mul(b)));
                }
            }
        }
        SparseMatrix::from_triplets(self.nrows, other.ncols, self.field, triplets)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut triplets = Vec::with_capacity(self.nnz());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter() {
                triplets.push((*j, i, v.clone()));
            }
        }
        SparseMatrix::from_triplets(self.ncols, self.nrows, self.field, triplets)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.ncols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        SparseMatrix::from_rows(self.ncols, self.field, rows)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Rank together with the product of elimination pivots (rationals mode:
    /// the integer pivots of the fraction-free elimination). Used to decide
    /// when a prime-field rank must agree with the rational one.
    pub fn rank_and_pivot_product(&self) -> (usize, Option<BigInt>) {
        let ech = self.echelon();
        let prod = match self.field {
            FieldKind::Rationals => {
                let mut p = BigInt::one();
                for (row, col) in ech.rows.iter().zip(&ech.pivots) {
                    p *= row.get(*col).unwrap().as_rat().numer();
                }
                Some(p)
            }
            FieldKind::Fp(_) => None,
        };
        (ech.pivots.len(), prod)
    }

    /// A deterministic basis of `ker(self)`; its length is `ncols - rank`.
    pub fn kernel_basis(&self) -> Vec<SparseVector> {
        let ech = self.echelon();
        let pivot_set: std::collections::BTreeSet<usize> = ech.pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for f in 0..self.ncols {
            if pivot_set.contains(&f) {
                continue;
            }
            // x[f] = 1, back-substitute the pivot coordinates.
            let mut x: Vec<(usize, Scalar)> = vec![(f, self.field.one())];
            for (row, &p) in ech.rows.iter().zip(&ech.pivots).rev() {
                let mut s: Option<Scalar> = None;
                for (j, c) in row.iter() {
                    if *j == p {
                        continue;
                    }
                    if let Some(xv) = x.iter().find(|(i, _)| i == j).map(|(_, v)| v) {
                        let t = c.mul(xv);
                        s = Some(match s {
                            Some(acc) => acc.add(&t),
                            None => t,
                        });
                    }
                }
                if let Some(s) = s {
                    if !s.is_zero() {
                        x.push((p, s.neg().div(row.get(p).unwrap())));
                    }
                }
            }
            let v = SparseVector::from_entries(x);
            debug_assert!(self.mul_vec(&v).is_zero());
            basis.push(v);
        }
        basis
    }

    /// Solves `self * x = b`. Returns `Ok(None)` when the system is
    /// inconsistent. The candidate is re-checked by multiplication before it
    /// is returned.
    pub fn solve(&self, b: &SparseVector) -> Result<Option<SparseVector>, LinalgError> {
        if let Some(&(i, _)) = b.entries.last() {
            if i >= self.nrows {
                return Err(LinalgError::DimensionMismatch {
                    expected: self.nrows,
                    got: i + 1,
                });
            }
        }
        // Augment: column `ncols` carries b.
        let aug_rows: Vec<SparseVector> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| match b.get(i) {
                Some(v) => {
                    let mut e = row.entries.clone();
                    e.push((self.ncols, v.clone()));
                    SparseVector { entries: e }
                }
                None => row.clone(),
            })
            .collect();
        let aug = SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols + 1,
            field: self.field,
            rows: aug_rows,
        };
        let ech = aug.echelon_up_to(self.ncols);
        // Any surviving row supported only on the augmented column means
        // the system is inconsistent.
        for row in &ech.leftover {
            if !row.is_zero() {
                return Ok(None);
            }
        }
        // Back-substitution with free variables set to zero.
        let mut x: Vec<(usize, Scalar)> = Vec::new();
        for (row, &p) in ech.rows.iter().zip(&ech.pivots).rev() {
            let mut rhs = row.get(self.ncols).cloned().unwrap_or_else(|| self.field.zero());
            for (j, c) in row.iter() {
                if *j == p || *j == self.ncols {
                    continue;
                }
                if let Some(xv) = x.iter().find(|(i, _)| i == j).map(|(_, v)| v) {
                    rhs = rhs.sub(&c.mul(xv));
                }
            }
            if !rhs.is_zero() {
                x.push((p, rhs.div(row.get(p).unwrap())));
            }
        }
        let x = SparseVector::from_entries(x);
        // Exactness check before returning.
        let check = self.mul_vec(&x);
        let diff = check.add_scaled(b, &self.field.integer(-1));
        if !diff.is_zero() {
            return Ok(None);
        }
        Ok(Some(x))
    }

    fn echelon(&self) -> Echelon {
        self.echelon_up_to(self.ncols)
    }

    /// Forward elimination choosing pivots only among columns `< pivot_cols`.
    fn echelon_up_to(&self, pivot_cols: usize) -> Echelon {
        match self.field {
            FieldKind::Fp(_) => self.echelon_fp(pivot_cols),
            FieldKind::Rationals => self.echelon_q(pivot_cols),
        }
    }

    fn echelon_fp(&self, pivot_cols: usize) -> Echelon {
        let mut active: Vec<SparseVector> =
            self.rows.iter().filter(|r| !r.is_zero()).cloned().collect();
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..pivot_cols {
            let Some(pos) = active.iter().position(|r| r.get(col).is_some()) else {
                continue;
            };
            let pivot = active.remove(pos);
            let pv = pivot.get(col).unwrap().clone();
            for r in active.iter_mut() {
                if let Some(rv) = r.get(col) {
                    let factor = rv.div(&pv).neg();
                    *r = r.add_scaled(&pivot, &factor);
                }
            }
            active.retain(|r| !r.is_zero());
            rows.push(pivot);
            pivots.push(col);
        }
        Echelon {
            rows,
            pivots,
            leftover: active,
        }
    }

    fn echelon_q(&self, pivot_cols: usize) -> Echelon {
        // Integerize every row (clear denominators, divide by content).
        let mut active: Vec<Vec<(usize, BigInt)>> = self
            .rows
            .iter()
            .filter(|r| !r.is_zero())
            .map(integerize)
            .collect();
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..pivot_cols {
            let Some(pos) = active
                .iter()
                .position(|r| int_get(r, col).is_some())
            else {
                continue;
            };
            let pivot = active.remove(pos);
            let pv = int_get(&pivot, col).unwrap().clone();
            for r in active.iter_mut() {
                if let Some(rv) = int_get(r, col) {
                    let rv = rv.clone();
                    // Fraction-free cross-multiply, then content reduction.
                    let combined = int_combine(&pv, r, &rv.clone(), &pivot);
                    *r = content_reduce(combined);
                }
            }
            active.retain(|r| !r.is_empty());
            rows.push(pivot);
            pivots.push(col);
        }
        Echelon {
            rows: rows.into_iter().map(row_to_scalars).collect(),
            pivots,
            leftover: active.into_iter().map(row_to_scalars).collect(),
        }
    }
}

struct Echelon {
    rows: Vec<SparseVector>,
    pivots: Vec<usize>,
    leftover: Vec<SparseVector>,
}

fn int_get<'a>(row: &'a [(usize, BigInt)], col: usize) -> Option<&'a BigInt> {
    row.binary_search_by_key(&col, |(i, _)| *i)
        .ok()
        .map(|k| &row[k].1)
}

/// `pv * r - rv * pivot`, merged.
fn int_combine(
    pv: &BigInt,
    r: &[(usize, BigInt)],
    rv: &BigInt,
    pivot: &[(usize, BigInt)],
) -> Vec<(usize, BigInt)> {
    let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(r.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < pivot.len() {
        match (r.get(i), pivot.get(j)) {
            (Some((a, x)), Some((b, y))) if a == b => {
                let v = pv * x - rv * y;
                if !v.is_zero() {
                    out.push((*a, v));
                }
                i += 1;
                j += 1;
            }
            (Some((a, x)), Some((b, _))) if a < b => {
                out.push((*a, pv * x));
                i += 1;
            }
            (Some(_), Some((b, y))) => {
                out.push((*b, -(rv * y)));
                j += 1;
            }
            (Some((a, x)), None) => {
                out.push((*a, pv * x));
                i += 1;
            }
            (None, Some((b, y))) => {
                out.push((*b, -(rv * y)));
                j += 1;
            }
            (None, None) => break,
        }
    }
    out
}

fn content_reduce(row: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    if row.is_empty() {
        return row;
    }
    let mut g = BigInt::zero();
    for (_, v) in &row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    // Normalize the sign of the leading entry for a canonical echelon form.
    if row[0].1.is_negative() {
        g = -g;
    }
    if g.is_one() {
        return row;
    }
    row.into_iter().map(|(i, v)| (i, v / &g)).collect()
}

fn integerize(v: &SparseVector) -> Vec<(usize, BigInt)> {
    let mut lcm = BigInt::one();
    for (_, c) in v.iter() {
        lcm = lcm.lcm(c.as_rat().denom());
    }
    let scaled: Vec<(usize, BigInt)> = v
        .iter()
        .map(|(i, c)| {
            let q = c.as_rat();
            (*i, q.numer() * (&lcm / q.denom()))
        })
        .collect();
    content_reduce(scaled)
}

fn row_to_scalars(row: Vec<(usize, BigInt)>) -> SparseVector {
    SparseVector {
        entries: row
            .into_iter()
            .map(|(i, v)| (i, Scalar::Rat(BigRational::from_integer(v))))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldKind {
        FieldKind::Rationals
    }

    fn mat(nrows: usize, ncols: usize, field: FieldKind, dense: &[&[i64]]) -> SparseMatrix {
        let mut triplets = Vec::new();
        for (i, row) in dense.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if *v != 0 {
                    triplets.push((i, j, field.integer(*v)));
                }
            }
        }
        SparseMatrix::from_triplets(nrows, ncols, field, triplets)
    }

    #[test]
    fn rank_examples() {
        let id = mat(2, 2, q(), &[&[1, 0], &[0, 1]]);
        assert_eq!(id.rank(), 2);
        let ones = mat(2, 2, q(), &[&[1, 1], &[1, 1]]);
        assert_eq!(ones.rank(), 1);
        let diag = mat(2, 2, FieldKind::Fp(3), &[&[2, 0], &[0, 3]]);
        assert_eq!(diag.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let z = SparseMatrix::zero(2, 3, q());
        assert_eq!(z.kernel_basis().len(), 3);
        let id = mat(2, 2, q(), &[&[1, 0], &[0, 1]]);
        assert!(id.kernel_basis().is_empty());
        let row = mat(1, 2, q(), &[&[1, 1]]);
        let k = row.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(row.mul_vec(&k[0]).is_zero());
    }

    #[test]
    fn solve_examples() {
        let id = mat(2, 2, q(), &[&[1, 0], &[0, 1]]);
        let b = SparseVector::from_entries(vec![(0, q().integer(5)), (1, q().integer(7))]);
        let x = id.solve(&b).unwrap().unwrap();
        assert_eq!(x, b);

        let ones = mat(2, 2, q(), &[&[1, 1], &[1, 1]]);
        let bad = SparseVector::from_entries(vec![(0, q().integer(1)), (1, q().integer(2))]);
        assert!(ones.solve(&bad).unwrap().is_none());

        let ok = SparseVector::from_entries(vec![(0, q().integer(1)), (1, q().integer(1))]);
        let x = ones.solve(&ok).unwrap().unwrap();
        let lhs = ones.mul_vec(&x);
        assert_eq!(lhs, ok);

        let wide = mat(1, 3, q(), &[&[0, 0, 0]]);
        let too_long = SparseVector::from_entries(vec![(5, q().one())]);
        assert!(wide.solve(&too_long).is_err());
    }

    #[test]
    fn rank_nullity_fractional_entries() {
        let field = q();
        let m = SparseMatrix::from_triplets(
            2,
            3,
            field,
            vec![
                (0, 0, field.ratio(1, 2)),
                (0, 2, field.ratio(-2, 3)),
                (1, 0, field.ratio(3, 4)),
                (1, 2, field.integer(-1)),
            ],
        );
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel_basis().len(), 2);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn random_matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
            (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
                proptest::collection::vec(proptest::collection::vec(-5i64..=5, c), r)
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn kernel_vectors_are_exact_and_counted(dense in random_matrix_strategy()) {
                let nrows = dense.len();
                let ncols = dense[0].len();
                let field = FieldKind::Rationals;
                let mut triplets = Vec::new();
                for (i, row) in dense.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        if *v != 0 {
                            triplets.push((i, j, field.integer(*v)));
                        }
                    }
                }
                let m = SparseMatrix::from_triplets(nrows, ncols, field, triplets);
                let kernel = m.kernel_basis();
                prop_assert_eq!(m.rank() + kernel.len(), ncols);
                for v in &kernel {
                    prop_assert!(m.mul_vec(v).is_zero());
                }
            }

            #[test]
            fn modular_rank_matches_rational_rank(dense in random_matrix_strategy()) {
                let nrows = dense.len();
                let ncols = dense[0].len();
                let build = |field: FieldKind| {
                    let mut triplets = Vec::new();
                    for (i, row) in dense.iter().enumerate() {
                        for (j, v) in row.iter().enumerate() {
                            if *v != 0 {
                                triplets.push((i, j, field.integer(*v)));
                            }
                        }
                    }
                    SparseMatrix::from_triplets(nrows, ncols, field, triplets)
                };
                let (rq, prod) = build(FieldKind::Rationals).rank_and_pivot_product();
                let prod = prod.unwrap();
                for p in [1009u32, 10007u32] {
                    let rp = build(FieldKind::Fp(p)).rank();
                    prop_assert!(rp <= rq);
                    if (&prod % BigInt::from(p)) != BigInt::from(0) {
                        prop_assert_eq!(rp, rq);
                    }
                }
            }
        }
    }
}
