//! Assembled differentials and Betti numbers.
//!
//! For finite-dimensional coefficients the block differentials are gathered
//! into one sparse matrix per total degree and (co)homology dimensions come
//! out of exact ranks. For REGULAR coefficients (values in `E`) nothing is
//! finite-dimensional, so a filtration-truncation driver reports exact lower
//! bounds together with a stabilization flag across caps.

use std::collections::BTreeMap;

use crate::complexes::{
    block_keys, blocks_of_degree, boundary_targets, chain_space, coboundary_sources,
    cochain_space, ChainSpace, CochainSpace, DiffTerm, Key,
};
use crate::data::RingData;
use crate::element::PbwMonomial;
use crate::linalg::{SparseMatrix, SparseVector};
use crate::module::{MValue, ModuleCtx, ModuleData};

// ---------------------------------------------------------------------------
// Finite-dimensional assemblies
// ---------------------------------------------------------------------------

/// One assembled complex: dimensions per total degree and the matrices of
/// the total differential between consecutive degrees.
pub struct ComplexAssembly {
    /// `dims[n]` for `0 <= n <= nmax + 1`.
    pub dims: Vec<usize>,
    /// Cohomology: `diffs[n] : degree n -> degree n+1`.
    /// Homology:  `diffs[n] : degree n+1 -> degree n`.
    pub diffs: Vec<SparseMatrix>,
    pub cohomology: bool,
}

impl ComplexAssembly {
    /// Exact check that consecutive differentials compose to zero.
    pub fn d_squared_is_zero(&self) -> bool {
        for n in 0..self.diffs.len().saturating_sub(1) {
            let prod = if self.cohomology {
                self.diffs[n + 1].mul_mat(&self.diffs[n])
            } else {
                self.diffs[n].mul_mat(&self.diffs[n + 1])
            };
            if !prod.is_zero() {
                return false;
            }
        }
        true
    }

    /// (Co)homology dimensions for `0 <= n <= nmax`, where `nmax` is
    /// `diffs.len() - 1`.
    pub fn betti(&self) -> Vec<usize> {
        let nmax = self.diffs.len() - 1;
        let ranks: Vec<usize> = self.diffs.iter().map(|d| d.rank()).collect();
        (0..=nmax)
            .map(|n| {
                let out = ranks[n];
                let inc = if n == 0 { 0 } else { ranks[n - 1] };
                self.dims[n] - out - inc
            })
            .collect()
    }
}

struct DegreeSpaces {
    blocks: Vec<CochainSpace>,
    grid_offsets: Vec<usize>,
    grid_dim: usize,
}

fn cochain_degree_spaces(
    data: &RingData,
    module: &ModuleData,
    n: usize,
) -> Result<DegreeSpaces, String> {
    let mut blocks = Vec::new();
    let mut grid_offsets = Vec::new();
    let mut grid_dim = 0;
    for (r, s) in blocks_of_degree(data, n) {
        let sp = cochain_space(data, module, r, s)?;
        grid_offsets.push(grid_dim);
        grid_dim += sp.grid_dim();
        blocks.push(sp);
    }
    Ok(DegreeSpaces {
        blocks,
        grid_offsets,
        grid_dim,
    })
}

impl DegreeSpaces {
    fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim()).sum()
    }

    fn block_index(&self, rs: (usize, usize)) -> Option<usize> {
        self.blocks.iter().position(|b| (b.r, b.s) == rs)
    }

    /// Concatenated space coordinates of a concatenated grid vector.
    fn grid_to_coords(&self, grid: &SparseVector) -> SparseVector {
        let mut out = Vec::new();
        let mut coord_offset = 0;
        for (b, sp) in self.blocks.iter().enumerate() {
            let lo = self.grid_offsets[b];
            let hi = lo + sp.grid_dim();
            match &sp.basis {
                None => {
                    for (i, c) in grid.iter().filter(|(i, _)| *i >= lo && *i < hi) {
                        out.push((coord_offset + (i - lo), c.clone()));
                    }
                }
                Some(_) => {
                    for (pos, f) in sp.free.iter().enumerate() {
                        if let Some(c) = grid.get(lo + f) {
                            out.push((coord_offset + pos, c.clone()));
                        }
                    }
                }
            }
            coord_offset += sp.dim();
        }
        SparseVector::from_entries(out)
    }
}

/// The grid-level matrix of the total coboundary from degree `n` to `n+1`,
/// built by expanding each target basis input once.
fn grid_cochain_matrix(
    data: &RingData,
    module: &ModuleData,
    source: &DegreeSpaces,
    target: &DegreeSpaces,
) -> SparseMatrix {
    let ctx = ModuleCtx::new(data, module);
    let mdim = module.finite().unwrap().dim;
    let mut op_cache: BTreeMap<crate::module::ModOp, Vec<SparseVector>> = BTreeMap::new();
    let mut triplets = Vec::new();
    for (tb, tsp) in target.blocks.iter().enumerate() {
        let t_off = target.grid_offsets[tb];
        for (tki, key) in tsp.keys.iter().enumerate() {
            for (src_rs, term) in coboundary_sources(data, (tsp.r, tsp.s), key) {
                let Some(sb) = source.block_index(src_rs) else {
                    continue;
                };
                let ssp = &source.blocks[sb];
                let s_off = source.grid_offsets[sb];
                let ski = ssp
                    .keys
                    .binary_search(&term.key)
                    .expect("differential leaves the grid");
                push_op_entries(
                    &ctx,
                    &mut op_cache,
                    &term,
                    mdim,
                    t_off + tki * mdim,
                    s_off + ski * mdim,
                    &mut triplets,
                );
            }
        }
    }
    SparseMatrix::from_triplets(target.grid_dim, source.grid_dim, data.field, triplets)
}

fn push_op_entries(
    ctx: &ModuleCtx,
    cache: &mut BTreeMap<crate::module::ModOp, Vec<SparseVector>>,
    term: &DiffTerm,
    mdim: usize,
    row_base: usize,
    col_base: usize,
    triplets: &mut Vec<(usize, usize, crate::scalar::Scalar)>,
) {
    let cols = cache.entry(term.op.clone()).or_insert_with(|| {
        (0..mdim)
            .map(|mu| match ctx.apply_op(&term.op, &ctx.basis_value(mu)) {
                MValue::Fin(v) => v,
                MValue::Reg(_) => unreachable!(),
            })
            .collect()
    });
    for (mu, col) in cols.iter().enumerate() {
        for (nu, c) in col.iter() {
            triplets.push((row_base + nu, col_base + mu, term.coeff.mul(c)));
        }
    }
}

/// Space-level total coboundary matrix from degree `n` to `n+1`.
pub fn cochain_matrix(
    data: &RingData,
    module: &ModuleData,
    n: usize,
) -> Result<SparseMatrix, String> {
    let source = cochain_degree_spaces(data, module, n)?;
    let target = cochain_degree_spaces(data, module, n + 1)?;
    let grid = grid_cochain_matrix(data, module, &source, &target);
    // Columns: one per source-space basis vector, projected to target coords.
    let mut triplets = Vec::new();
    let mut col = 0;
    for (sb, ssp) in source.blocks.iter().enumerate() {
        let s_off = source.grid_offsets[sb];
        for i in 0..ssp.dim() {
            let grid_vec = match &ssp.basis {
                None => SparseVector::unit(s_off + i, data.field),
                Some(basis) => SparseVector::from_entries(
                    basis[i].iter().map(|(g, c)| (s_off + g, c.clone())).collect(),
                ),
            };
            let image = grid.mul_vec(&grid_vec);
            let coords = target.grid_to_coords(&image);
            for (row, c) in coords.iter() {
                triplets.push((*row, col, c.clone()));
            }
            col += 1;
        }
    }
    Ok(SparseMatrix::from_triplets(
        target.dim(),
        source.dim(),
        data.field,
        triplets,
    ))
}

/// Assembles the cochain complex up to total degree `nmax` (matrices up to
/// `nmax -> nmax + 1`).
pub fn cochain_assembly(
    data: &RingData,
    module: &ModuleData,
    nmax: usize,
) -> Result<ComplexAssembly, String> {
    let mut dims = Vec::new();
    for n in 0..=nmax + 1 {
        dims.push(cochain_degree_spaces(data, module, n)?.dim());
    }
    let mut diffs = Vec::new();
    for n in 0..=nmax {
        diffs.push(cochain_matrix(data, module, n)?);
    }
    Ok(ComplexAssembly {
        dims,
        diffs,
        cohomology: true,
    })
}

struct ChainDegreeSpaces {
    blocks: Vec<ChainSpace>,
}

impl ChainDegreeSpaces {
    fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim()).sum()
    }
}

fn chain_degree_spaces(
    data: &RingData,
    module: &ModuleData,
    n: usize,
) -> Result<ChainDegreeSpaces, String> {
    let mut blocks = Vec::new();
    for (r, s) in blocks_of_degree(data, n) {
        blocks.push(chain_space(data, module, r, s)?);
    }
    Ok(ChainDegreeSpaces { blocks })
}

/// Space-level total boundary matrix from degree `n` to `n-1`.
pub fn chain_matrix(
    data: &RingData,
    module: &ModuleData,
    n: usize,
) -> Result<SparseMatrix, String> {
    assert!(n >= 1);
    let source = chain_degree_spaces(data, module, n)?;
    let target = chain_degree_spaces(data, module, n - 1)?;
    let ctx = ModuleCtx::new(data, module);
    let mut triplets = Vec::new();
    let mut col = 0;
    for ssp in &source.blocks {
        for i in 0..ssp.dim() {
            let chain = ssp.basis_chain(&ctx, i);
            let blocks = crate::complexes::boundary_blocks(&chain, &ctx);
            let mut row_offset = 0;
            for tsp in &target.blocks {
                if let Some(b) = blocks.iter().find(|b| (b.r, b.s) == (tsp.r, tsp.s)) {
                    for (row, c) in tsp.coords(b).iter() {
                        triplets.push((row_offset + row, col, c.clone()));
                    }
                }
                row_offset += tsp.dim();
            }
            col += 1;
        }
    }
    Ok(SparseMatrix::from_triplets(
        target.dim(),
        source.dim(),
        data.field,
        triplets,
    ))
}

/// Assembles the chain complex: `diffs[n] : degree n+1 -> degree n`.
pub fn chain_assembly(
    data: &RingData,
    module: &ModuleData,
    nmax: usize,
) -> Result<ComplexAssembly, String> {
    let mut dims = Vec::new();
    for n in 0..=nmax + 1 {
        dims.push(chain_degree_spaces(data, module, n)?.dim());
    }
    let mut diffs = Vec::new();
    for n in 0..=nmax {
        diffs.push(chain_matrix(data, module, n + 1)?);
    }
    Ok(ComplexAssembly {
        dims,
        diffs,
        cohomology: false,
    })
}

/// Hochschild cohomology dimensions `dim H^n` for `0 <= n <= nmax`, exact.
pub fn betti_cohomology(
    data: &RingData,
    module: &ModuleData,
    nmax: usize,
) -> Result<Vec<usize>, String> {
    Ok(cochain_assembly(data, module, nmax)?.betti())
}

/// Hochschild homology dimensions `dim H_n` for `0 <= n <= nmax`, exact.
pub fn betti_homology(
    data: &RingData,
    module: &ModuleData,
    nmax: usize,
) -> Result<Vec<usize>, String> {
    Ok(chain_assembly(data, module, nmax)?.betti())
}

/// Dimension of the `E`-centralizer of a finite module, computed by a direct
/// linear solve (independent of the complex machinery); equals `dim H^0`.
pub fn centralizer_dimension(data: &RingData, module: &ModuleData) -> usize {
    let fm = module.finite().expect("finite module");
    let ctx = ModuleCtx::new(data, module);
    let m = fm.dim;
    let a_gens: Vec<crate::element::ABasisId> = match &data.coeff {
        crate::data::CoeffAlgebra::Finite(alg) => {
            (0..alg.dim).map(crate::element::ABasisId::Idx).collect()
        }
        crate::data::CoeffAlgebra::Symmetric(sym) => (0..sym.dim_v)
            .map(|v| {
                let mut e = vec![0u32; sym.dim_v];
                e[v] = 1;
                crate::element::ABasisId::Mono(e)
            })
            .collect(),
    };
    let mut triplets = Vec::new();
    let mut row_block = 0;
    let mut add_rows = |l: &dyn Fn(&MValue) -> MValue, r: &dyn Fn(&MValue) -> MValue| {
        for mu in 0..m {
            let bv = ctx.basis_value(mu);
            let MValue::Fin(lv) = l(&bv) else { unreachable!() };
            let MValue::Fin(rv) = r(&bv) else { unreachable!() };
            let diff = lv.add_scaled(&rv, &data.field.integer(-1));
            for (nu, c) in diff.iter() {
                triplets.push((row_block * m + nu, mu, c.clone()));
            }
        }
        row_block += 1;
    };
    for id in &a_gens {
        add_rows(&|v| ctx.left_by_id(id, v), &|v| ctx.right_by_id(id, v));
    }
    for g in 0..data.gen_count() {
        add_rows(&|v| ctx.left_by_gen(g, v), &|v| ctx.right_by_gen(g, v));
    }
    let mat = SparseMatrix::from_triplets(row_block * m, m, data.field, triplets);
    mat.kernel_basis().len()
}

// ---------------------------------------------------------------------------
// Filtration truncation (REGULAR coefficients)
// ---------------------------------------------------------------------------

/// A degree/cap cell of the truncation report. All numbers are exact for the
/// truncated spaces involved: `kernel_dim` counts genuine cocycles (cycles)
/// valued in filtration <= cap, `boundary_dim` counts those that are hit by
/// (co)boundaries of elements valued in filtration <= cap + shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapReport {
    pub cap: u32,
    pub kernel_dim: usize,
    pub boundary_dim: usize,
    pub residual: usize,
}

#[derive(Clone, Debug)]
pub struct DegreeReport {
    pub degree: usize,
    pub caps: Vec<CapReport>,
    /// Largest residual seen over the caps (monotone by construction).
    pub lower_bound: usize,
    /// Residual agreed on the last two caps.
    pub stable: bool,
}

#[derive(Clone, Debug)]
pub struct TruncationReport {
    pub degrees: Vec<DegreeReport>,
    pub shift: u32,
    pub caps: Vec<u32>,
}

/// A complex over REGULAR coefficients described by its blocks, their basis
/// inputs and the expanded differential. `cochain = true` means `terms`
/// yields the sources feeding a target input and degrees go up; otherwise
/// `terms` yields the targets fed by a source input and degrees go down.
pub struct ComplexShape<'a> {
    pub data: &'a RingData,
    pub cochain: bool,
    pub blocks: Box<dyn Fn(usize) -> Vec<(usize, usize)> + 'a>,
    pub keys: Box<dyn Fn(usize, usize) -> Vec<Key> + 'a>,
    pub terms: Box<dyn Fn((usize, usize), &Key) -> Vec<((usize, usize), DiffTerm)> + 'a>,
}

/// The Hochschild cochain complex of `E` with REGULAR coefficients.
pub fn x_cochain_shape(data: &RingData) -> ComplexShape<'_> {
    ComplexShape {
        data,
        cochain: true,
        blocks: Box::new(move |n| blocks_of_degree(data, n)),
        keys: Box::new(move |r, s| block_keys(data, r, s)),
        terms: Box::new(move |rs, key| coboundary_sources(data, rs, key)),
    }
}

/// The Hochschild chain complex of `E` with REGULAR coefficients.
pub fn x_chain_shape(data: &RingData) -> ComplexShape<'_> {
    ComplexShape {
        data,
        cochain: false,
        blocks: Box::new(move |n| blocks_of_degree(data, n)),
        keys: Box::new(move |r, s| block_keys(data, r, s)),
        terms: Box::new(move |rs, key| boundary_targets(data, rs, key)),
    }
}

/// All PBW monomials of filtration degree at most `cap`.
pub fn e_basis_up_to(data: &RingData, cap: u32) -> Vec<PbwMonomial> {
    let d = data.gen_count();
    let mut out = Vec::new();
    match &data.coeff {
        crate::data::CoeffAlgebra::Finite(alg) => {
            for i in 0..alg.dim {
                let a = crate::element::ABasisId::Idx(i);
                let adeg = data.a_deg(&a);
                if adeg > cap {
                    continue;
                }
                for exps in exps_up_to(d, cap - adeg) {
                    out.push(PbwMonomial {
                        a: a.clone(),
                        exps,
                    });
                }
            }
        }
        crate::data::CoeffAlgebra::Symmetric(sym) => {
            for vexps in exps_up_to(sym.dim_v, cap) {
                let used: u32 = vexps.iter().sum();
                for exps in exps_up_to(d, cap - used) {
                    out.push(PbwMonomial {
                        a: crate::element::ABasisId::Mono(vexps.clone()),
                        exps,
                    });
                }
            }
        }
    }
    out.sort();
    out
}

fn exps_up_to(len: usize, total: u32) -> Vec<Vec<u32>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for rest in exps_up_to(len - 1, total - first) {
            let mut v = Vec::with_capacity(len);
            v.push(first);
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

type RowKey = ((usize, usize), Key, PbwMonomial);

/// Matrix of the differential out of total degree `n`, with columns the
/// truncated basis (input key x monomial of degree <= col_cap) of degree `n`
/// and rows indexed dynamically by the support of the images. Also returns
/// the filtration degree of each row's monomial.
fn trunc_matrix(
    shape: &ComplexShape,
    n: usize,
    col_cap: u32,
) -> (SparseMatrix, Vec<u32>, usize) {
    let data = shape.data;
    let module = ModuleData::Regular;
    let ctx = ModuleCtx::new(data, &module);
    let monos = e_basis_up_to(data, col_cap);
    // Column index: (block position, key position, monomial position).
    let src_blocks = (shape.blocks)(n);
    let mut col_index: BTreeMap<((usize, usize), Key), usize> = BTreeMap::new();
    let mut ncols = 0;
    for rs in &src_blocks {
        for key in (shape.keys)(rs.0, rs.1) {
            col_index.insert((*rs, key), ncols);
            ncols += monos.len();
        }
    }
    let mut row_index: BTreeMap<RowKey, usize> = BTreeMap::new();
    let mut row_degrees: Vec<u32> = Vec::new();
    let mut triplets = Vec::new();
    let mut handle = |iter_rs: (usize, usize), key: &Key| {
        for (rs2, term) in (shape.terms)(iter_rs, key) {
            // Orientation: cochain mode iterates targets and rs2 is the
            // source; chain mode iterates sources and rs2 is the target.
            let (src_rs, src_key, dst_rs, dst_key) = if shape.cochain {
                (rs2, term.key.clone(), iter_rs, key.clone())
            } else {
                (iter_rs, key.clone(), rs2, term.key.clone())
            };
            let Some(col_base) = col_index.get(&(src_rs, src_key)) else {
                continue;
            };
            for (mi, mono) in monos.iter().enumerate() {
                let v = ctx.apply_op(&term.op, &ctx.monomial_value(mono));
                let MValue::Reg(e) = v else { unreachable!() };
                for (m2, c) in e.terms() {
                    let deg = m2.gen_degree() + data.a_deg(&m2.a);
                    let rk: RowKey = (dst_rs, dst_key.clone(), m2.clone());
                    let next = row_index.len();
                    let row = *row_index.entry(rk).or_insert_with(|| {
                        row_degrees.push(deg);
                        next
                    });
                    triplets.push((row, col_base + mi, term.coeff.mul(c)));
                }
            }
        }
    };
    if shape.cochain {
        for rs in (shape.blocks)(n + 1) {
            for key in (shape.keys)(rs.0, rs.1) {
                handle(rs, &key);
            }
        }
    } else if n >= 1 {
        for rs in &src_blocks {
            for key in (shape.keys)(rs.0, rs.1) {
                handle(*rs, &key);
            }
        }
    }
    let nrows = row_index.len();
    (
        SparseMatrix::from_triplets(nrows, ncols, data.field, triplets),
        row_degrees,
        ncols,
    )
}

/// Truncated (co)homology report. For each degree `n <= nmax` and each cap:
/// the dimension of the space of (co)cycles valued in filtration <= cap, the
/// dimension of its subspace hit by (co)boundaries of elements valued in
/// filtration <= cap + shift, and their difference.
pub fn truncated_report(
    shape: &ComplexShape,
    nmax: usize,
    caps: &[u32],
    shift: u32,
) -> Result<TruncationReport, String> {
    if caps.is_empty() {
        return Err("at least one filtration cap is required".into());
    }
    let mut caps = caps.to_vec();
    caps.sort_unstable();
    let mut degrees = Vec::new();
    for n in 0..=nmax {
        let mut cap_reports = Vec::new();
        for &cap in &caps {
            // Cocycles valued in filtration <= cap (exact kernel).
            let (out_mat, _, ncols) = trunc_matrix(shape, n, cap);
            let z = ncols - out_mat.rank();
            // Boundaries from the neighbouring degree, truncated at
            // cap + shift; count those landing inside the cap window.
            let b = {
                let neighbour_exists = if shape.cochain { n > 0 } else { true };
                if neighbour_exists {
                    let nb = if shape.cochain { n - 1 } else { n + 1 };
                    let (in_mat, row_degs, _) = trunc_matrix(shape, nb, cap + shift);
                    let full = in_mat.rank();
                    let over_rows: Vec<SparseVector> = in_mat
                        .rows()
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| row_degs[*i] > cap)
                        .map(|(_, r)| r.clone())
                        .collect();
                    let over =
                        SparseMatrix::from_rows(in_mat.ncols(), data_field(shape), over_rows)
                            .rank();
                    full - over
                } else {
                    0
                }
            };
            cap_reports.push(CapReport {
                cap,
                kernel_dim: z,
                boundary_dim: b,
                residual: z - b,
            });
        }
        let lower_bound = cap_reports.iter().map(|c| c.residual).max().unwrap_or(0);
        let stable = cap_reports.len() >= 2
            && cap_reports[cap_reports.len() - 1].residual
                == cap_reports[cap_reports.len() - 2].residual;
        degrees.push(DegreeReport {
            degree: n,
            caps: cap_reports,
            lower_bound,
            stable,
        });
    }
    Ok(TruncationReport {
        degrees,
        shift,
        caps,
    })
}

fn data_field(shape: &ComplexShape) -> crate::scalar::FieldKind {
    shape.data.field
}

/// Truncated Betti report for the Hochschild complexes of `E` with REGULAR
/// coefficients; `cohomology` selects the direction.
pub fn truncated_betti(
    data: &RingData,
    nmax: usize,
    caps: &[u32],
    cohomology: bool,
) -> Result<TruncationReport, String> {
    let shift = default_shift(data);
    let shape = if cohomology {
        x_cochain_shape(data)
    } else {
        x_chain_shape(data)
    };
    truncated_report(&shape, nmax, caps, shift)
}

/// Filtration raise bound for the differential ingredients: one step for a
/// generator commutator plus the largest degree among action values, cocycle
/// values and `A`-basis multipliers.
pub fn default_shift(data: &RingData) -> u32 {
    let mut raise = 1u32;
    match &data.coeff {
        crate::data::CoeffAlgebra::Finite(alg) => {
            if let Some(deg) = &alg.degrees {
                raise = raise.max(deg.iter().copied().max().unwrap_or(0));
            }
        }
        crate::data::CoeffAlgebra::Symmetric(_) => {
            raise = raise.max(1);
        }
    }
    raise + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::scalar::FieldKind;

    fn q() -> FieldKind {
        FieldKind::Rationals
    }

    #[test]
    fn abelian_three_betti() {
        let data = presets::abelian(q(), 3);
        let m = presets::augmentation_module(&data);
        assert_eq!(betti_cohomology(&data, &m, 3).unwrap(), vec![1, 3, 3, 1]);
        assert_eq!(betti_homology(&data, &m, 3).unwrap(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn sl2_betti() {
        let data = presets::sl2(q());
        let m = presets::augmentation_module(&data);
        assert_eq!(betti_cohomology(&data, &m, 3).unwrap(), vec![1, 0, 0, 1]);
        assert_eq!(betti_homology(&data, &m, 3).unwrap(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn dual_numbers_g0_betti() {
        let data = presets::dual_numbers_g0(q());
        let m = presets::a_as_module(&data);
        let coh = betti_cohomology(&data, &m, 1).unwrap();
        assert_eq!(coh, vec![2, 1]);
        let hom = betti_homology(&data, &m, 1).unwrap();
        assert_eq!(hom, vec![2, 1]);
    }

    #[test]
    fn assemblies_square_to_zero() {
        let data = presets::heisenberg_sridharan(q());
        let m = presets::regular();
        let _ = m;
        let mk = presets::inner_module(&data, &[]);
        // No finite module available for the Sridharan fixture with cocycle;
        // use the abelian fixture instead for the assembly check.
        let _ = mk;
        let data = presets::abelian(q(), 3);
        let m = presets::augmentation_module(&data);
        assert!(cochain_assembly(&data, &m, 3).unwrap().d_squared_is_zero());
        assert!(chain_assembly(&data, &m, 3).unwrap().d_squared_is_zero());
    }

    #[test]
    fn centralizer_matches_h0() {
        let data = presets::dual_numbers(q());
        let m = presets::augmentation_module(&data);
        let h0 = betti_cohomology(&data, &m, 0).unwrap()[0];
        assert_eq!(centralizer_dimension(&data, &m), h0);
    }

    #[test]
    fn truncated_dual_numbers_h0_stabilizes() {
        // Z(E) = k for the dual-numbers ring with the Euler action.
        let data = presets::dual_numbers(q());
        let report = truncated_betti(&data, 0, &[4, 5, 6], true).unwrap();
        let d0 = &report.degrees[0];
        assert!(d0.stable, "H^0 residuals: {:?}", d0.caps);
        assert_eq!(d0.lower_bound, 1);
    }
}
