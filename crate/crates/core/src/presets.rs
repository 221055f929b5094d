//! Ready-made ring descriptions and coefficient modules: small exactly-known
//! examples used throughout the test suites, the CLI demos and the benches,
//! plus seeded random samplers over families that are valid by construction.

use itertools::Itertools;
use rand::Rng;

use crate::data::{
    ActionData, AffineValue, CocycleData, CoeffAlgebra, FiniteAlgebra, LieAlgebra, RingData,
    Subalgebra, SymmetricAlgebra,
};
use crate::linalg::SparseVector;
use crate::element::Element;
use crate::module::{ActionMat, FiniteModule, ModuleData};
use crate::scalar::{FieldKind, Scalar};

pub fn sv(field: FieldKind, entries: &[(usize, i64)]) -> SparseVector {
    SparseVector::from_entries(
        entries
            .iter()
            .map(|(i, c)| (*i, field.integer(*c)))
            .collect(),
    )
}

fn zero_cocycle(field: FieldKind, d: usize) -> CocycleData {
    let _ = field;
    CocycleData::Finite(vec![vec![SparseVector::new(); d]; d])
}

fn zero_action(dim_a: usize, d: usize) -> ActionData {
    ActionData::Matrices(vec![vec![SparseVector::new(); dim_a]; d])
}

// ---------------------------------------------------------------------------
// Finite coefficient algebras
// ---------------------------------------------------------------------------

/// `A = k`.
pub fn scalar_algebra(field: FieldKind) -> FiniteAlgebra {
    FiniteAlgebra {
        dim: 1,
        unit: 0,
        names: vec!["1".into()],
        mul: vec![vec![sv(field, &[(0, 1)])]],
        degrees: None,
    }
}

/// Dual numbers `k[e]/(e^2)`, graded with `deg e = 1`.
pub fn dual_numbers_algebra(field: FieldKind) -> FiniteAlgebra {
    FiniteAlgebra {
        dim: 2,
        unit: 0,
        names: vec!["1".into(), "e".into()],
        mul: vec![
            vec![sv(field, &[(0, 1)]), sv(field, &[(1, 1)])],
            vec![sv(field, &[(1, 1)]), SparseVector::new()],
        ],
        degrees: Some(vec![0, 1]),
    }
}

/// `k[u]/(u^2 - 1)`, isomorphic to `k x k` away from characteristic 2.
pub fn product_of_fields(field: FieldKind) -> FiniteAlgebra {
    FiniteAlgebra {
        dim: 2,
        unit: 0,
        names: vec!["1".into(), "u".into()],
        mul: vec![
            vec![sv(field, &[(0, 1)]), sv(field, &[(1, 1)])],
            vec![sv(field, &[(1, 1)]), sv(field, &[(0, 1)])],
        ],
        degrees: None,
    }
}

/// `k[t]/(t^3 - a t - b)`.
pub fn cubic_quotient(field: FieldKind, a: i64, b: i64) -> FiniteAlgebra {
    let t3 = sv(field, &[(1, a), (0, b)]);
    let t4 = sv(field, &[(2, a), (1, b)]);
    FiniteAlgebra {
        dim: 3,
        unit: 0,
        names: vec!["1".into(), "t".into(), "t2".into()],
        mul: vec![
            vec![
                sv(field, &[(0, 1)]),
                sv(field, &[(1, 1)]),
                sv(field, &[(2, 1)]),
            ],
            vec![sv(field, &[(1, 1)]), sv(field, &[(2, 1)]), t3.clone()],
            vec![sv(field, &[(2, 1)]), t3, t4],
        ],
        degrees: None,
    }
}

/// Quaternion-type algebra on `{1, i, j, ij}` with `i^2 = a`, `j^2 = b`,
/// `ji = -ij`.
pub fn quaternion_algebra(field: FieldKind, a: i64, b: i64) -> FiniteAlgebra {
    FiniteAlgebra {
        dim: 4,
        unit: 0,
        names: vec!["1".into(), "i".into(), "j".into(), "ij".into()],
        mul: vec![
            vec![
                sv(field, &[(0, 1)]),
                sv(field, &[(1, 1)]),
                sv(field, &[(2, 1)]),
                sv(field, &[(3, 1)]),
            ],
            vec![
                sv(field, &[(1, 1)]),
                sv(field, &[(0, a)]),
                sv(field, &[(3, 1)]),
                sv(field, &[(2, a)]),
            ],
            vec![
                sv(field, &[(2, 1)]),
                sv(field, &[(3, -1)]),
                sv(field, &[(0, b)]),
                sv(field, &[(1, -b)]),
            ],
            vec![
                sv(field, &[(3, 1)]),
                sv(field, &[(2, -a)]),
                sv(field, &[(1, b)]),
                sv(field, &[(0, -a * b)]),
            ],
        ],
        degrees: None,
    }
}

/// Exterior algebra on two generators, graded by word length.
pub fn exterior_two(field: FieldKind) -> FiniteAlgebra {
    FiniteAlgebra {
        dim: 4,
        unit: 0,
        names: vec!["1".into(), "u".into(), "w".into(), "uw".into()],
        mul: vec![
            vec![
                sv(field, &[(0, 1)]),
                sv(field, &[(1, 1)]),
                sv(field, &[(2, 1)]),
                sv(field, &[(3, 1)]),
            ],
            vec![
                sv(field, &[(1, 1)]),
                SparseVector::new(),
                sv(field, &[(3, 1)]),
                SparseVector::new(),
            ],
            vec![
                sv(field, &[(2, 1)]),
                sv(field, &[(3, -1)]),
                SparseVector::new(),
                SparseVector::new(),
            ],
            vec![
                sv(field, &[(3, 1)]),
                SparseVector::new(),
                SparseVector::new(),
                SparseVector::new(),
            ],
        ],
        degrees: Some(vec![0, 1, 1, 2]),
    }
}

/// Upper-triangular 2x2 matrices on the basis `{1, a, n}` with `a` the
/// idempotent `E11` and `n` the nilpotent `E12`.
pub fn triangular_two(field: FieldKind) -> FiniteAlgebra {
    FiniteAlgebra {
        dim: 3,
        unit: 0,
        names: vec!["1".into(), "a".into(), "n".into()],
        mul: vec![
            vec![
                sv(field, &[(0, 1)]),
                sv(field, &[(1, 1)]),
                sv(field, &[(2, 1)]),
            ],
            vec![
                sv(field, &[(1, 1)]),
                sv(field, &[(1, 1)]),
                sv(field, &[(2, 1)]),
            ],
            vec![sv(field, &[(2, 1)]), SparseVector::new(), SparseVector::new()],
        ],
        degrees: None,
    }
}

// ---------------------------------------------------------------------------
// Lie algebras
// ---------------------------------------------------------------------------

/// Heisenberg algebra with ordered basis `x < y < h` and `[x, y] = h`.
pub fn heisenberg(field: FieldKind) -> LieAlgebra {
    LieAlgebra::from_upper_entries(
        3,
        vec!["x".into(), "y".into(), "h".into()],
        &[(0, 1, 2, field.one())],
    )
}

/// `sl2` with `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f` on the basis `e < f < h`.
pub fn sl2_lie(field: FieldKind) -> LieAlgebra {
    LieAlgebra::from_upper_entries(
        3,
        vec!["e".into(), "f".into(), "h".into()],
        &[
            (0, 1, 2, field.one()),
            (0, 2, 0, field.integer(-2)),
            (1, 2, 1, field.integer(2)),
        ],
    )
}

/// The solvable algebra `[x, y] = y`.
pub fn solvable_two(field: FieldKind) -> LieAlgebra {
    LieAlgebra::from_upper_entries(
        2,
        vec!["x".into(), "y".into()],
        &[(0, 1, 1, field.one())],
    )
}

// ---------------------------------------------------------------------------
// Ring fixtures
// ---------------------------------------------------------------------------

/// `A = k[e]/(e^2)`, one generator `x` acting by the Euler derivation
/// `e^x = e`, zero cocycle, `K = k`.
pub fn dual_numbers(field: FieldKind) -> RingData {
    let alg = dual_numbers_algebra(field);
    let action = ActionData::Matrices(vec![vec![SparseVector::new(), sv(field, &[(1, 1)])]]);
    RingData::new(
        field,
        CoeffAlgebra::Finite(alg),
        LieAlgebra {
            dim: 1,
            names: vec!["x".into()],
            bracket: vec![vec![SparseVector::new()]],
        },
        action,
        zero_cocycle(field, 1),
        Subalgebra::ground_field(),
    )
    .unwrap()
}

/// `A = k[e]/(e^2)` with no Lie part at all (`g = 0`).
pub fn dual_numbers_g0(field: FieldKind) -> RingData {
    RingData::new(
        field,
        CoeffAlgebra::Finite(dual_numbers_algebra(field)),
        LieAlgebra::abelian(0),
        ActionData::Matrices(vec![]),
        zero_cocycle(field, 0),
        Subalgebra::ground_field(),
    )
    .unwrap()
}

/// Sridharan fixture: `A = k`, Heisenberg `g` with `[x,y] = h`, cocycle
/// `f(x,y) = 1` (so `fhat(x,y) = 1`).
pub fn heisenberg_sridharan(field: FieldKind) -> RingData {
    let mut f = vec![vec![SparseVector::new(); 3]; 3];
    f[0][1] = sv(field, &[(0, 1)]);
    RingData::new(
        field,
        CoeffAlgebra::Finite(scalar_algebra(field)),
        heisenberg(field),
        zero_action(1, 3),
        CocycleData::Finite(f),
        Subalgebra::ground_field(),
    )
    .unwrap()
}

/// `A = k`, abelian `g` of the given dimension, zero cocycle.
pub fn abelian(field: FieldKind, dim: usize) -> RingData {
    RingData::new(
        field,
        CoeffAlgebra::Finite(scalar_algebra(field)),
        LieAlgebra::abelian(dim),
        zero_action(1, dim),
        zero_cocycle(field, dim),
        Subalgebra::ground_field(),
    )
    .unwrap()
}

/// `A = k`, `g = sl2`, zero cocycle.
pub fn sl2(field: FieldKind) -> RingData {
    RingData::new(
        field,
        CoeffAlgebra::Finite(scalar_algebra(field)),
        sl2_lie(field),
        zero_action(1, 3),
        zero_cocycle(field, 3),
        Subalgebra::ground_field(),
    )
    .unwrap()
}

/// `A = k`, Heisenberg `g`, zero cocycle.
pub fn heisenberg_lie_ring(field: FieldKind) -> RingData {
    RingData::new(
        field,
        CoeffAlgebra::Finite(scalar_algebra(field)),
        heisenberg(field),
        zero_action(1, 3),
        zero_cocycle(field, 3),
        Subalgebra::ground_field(),
    )
    .unwrap()
}

/// A bracket table that fails the Jacobi identity: `[e,f] = h`, `[h,e] = 2e`,
/// `[h,f] = +2f`.
pub fn bad_jacobi_lie(field: FieldKind) -> LieAlgebra {
    LieAlgebra::from_upper_entries(
        3,
        vec!["e".into(), "f".into(), "h".into()],
        &[
            (0, 1, 2, field.one()),
            (0, 2, 0, field.integer(-2)),
            (1, 2, 1, field.integer(-2)),
        ],
    )
}

/// A non-confluent presentation: `[x,y] = y`, `z` central, `fhat(y,z) = 1`.
/// The cocycle has a defect on the triple `(x, y, z)`.
pub fn bad_cocycle(field: FieldKind) -> RingData {
    let lie = LieAlgebra::from_upper_entries(
        3,
        vec!["x".into(), "y".into(), "z".into()],
        &[(0, 1, 1, field.one())],
    );
    let mut f = vec![vec![SparseVector::new(); 3]; 3];
    f[1][2] = sv(field, &[(0, 1)]);
    RingData::new(
        field,
        CoeffAlgebra::Finite(scalar_algebra(field)),
        lie,
        zero_action(1, 3),
        CocycleData::Finite(f),
        Subalgebra::ground_field(),
    )
    .unwrap()
}

// ---------------------------------------------------------------------------
// Symmetric-mode fixtures
// ---------------------------------------------------------------------------

fn symmetric_ring(
    field: FieldKind,
    dim_v: usize,
    lie: LieAlgebra,
    action: Vec<Vec<AffineValue>>,
    cocycle: Vec<Vec<AffineValue>>,
) -> RingData {
    RingData::new(
        field,
        CoeffAlgebra::Symmetric(SymmetricAlgebra {
            dim_v,
            names: (1..=dim_v)
                .map(|i| if dim_v == 1 { "v".into() } else { format!("v{i}") })
                .collect(),
        }),
        lie,
        ActionData::Affine(action),
        CocycleData::Affine(cocycle),
        Subalgebra::ground_field(),
    )
    .unwrap()
}

/// The Weyl fixture: `A = S(V)` with `dim V = 1`, one generator `x` with
/// `v^x = 1`, zero cocycle. `E` is the first Weyl algebra in characteristic 0.
pub fn weyl(field: FieldKind) -> RingData {
    let action = vec![vec![AffineValue {
        constant: field.one(),
        linear: SparseVector::new(),
    }]];
    let cocycle = vec![vec![AffineValue::zero(field)]];
    symmetric_ring(
        field,
        1,
        LieAlgebra {
            dim: 1,
            names: vec!["x".into()],
            bracket: vec![vec![SparseVector::new()]],
        },
        action,
        cocycle,
    )
}

/// Polynomial fixture: `dim V = 1`, one generator, zero action and cocycle,
/// so `E = k[v] ⊗ k[x]`.
pub fn sym_polynomial(field: FieldKind) -> RingData {
    symmetric_ring(
        field,
        1,
        LieAlgebra {
            dim: 1,
            names: vec!["x".into()],
            bracket: vec![vec![SparseVector::new()]],
        },
        vec![vec![AffineValue::zero(field)]],
        vec![vec![AffineValue::zero(field)]],
    )
}

/// Euler fixture: `dim V = 1`, one generator with `v^x = v`.
pub fn sym_euler(field: FieldKind) -> RingData {
    let action = vec![vec![AffineValue {
        constant: field.zero(),
        linear: sv(field, &[(0, 1)]),
    }]];
    symmetric_ring(
        field,
        1,
        LieAlgebra {
            dim: 1,
            names: vec!["x".into()],
            bracket: vec![vec![SparseVector::new()]],
        },
        action,
        vec![vec![AffineValue::zero(field)]],
    )
}

// ---------------------------------------------------------------------------
// Coefficient modules
// ---------------------------------------------------------------------------

pub fn regular() -> ModuleData {
    ModuleData::Regular
}

fn scalar_mat(field: FieldKind, c: i64) -> ActionMat {
    if c == 0 {
        vec![SparseVector::new()]
    } else {
        vec![sv(field, &[(0, c)])]
    }
}

/// The one-dimensional module where `A` acts through its augmentation
/// (unit -> 1, all other basis vectors -> 0) and every Lie generator acts by
/// zero, on both sides. Valid whenever the augmentation kills the action
/// values and `fhat`.
pub fn augmentation_module(data: &RingData) -> ModuleData {
    let field = data.field;
    let alg = data.finite_algebra().expect("finite coefficients");
    let d = data.gen_count();
    let a_mats: Vec<ActionMat> = (0..alg.dim)
        .map(|i| scalar_mat(field, if i == alg.unit { 1 } else { 0 }))
        .collect();
    ModuleData::Finite(FiniteModule {
        dim: 1,
        left_a: a_mats.clone(),
        right_a: a_mats,
        left_g: vec![scalar_mat(field, 0); d],
        right_g: vec![scalar_mat(field, 0); d],
    })
}

/// `M = A` as an `E`-bimodule, with each generator acting on both sides
/// through a chosen element `rho_i` of `A` (left: `rho_i * m`, right:
/// `m * rho_i`). Valid when the action is `ad(rho_i)` and `fhat` matches
/// the bracket defects of the `rho_i`.
pub fn inner_module(data: &RingData, rho: &[SparseVector]) -> ModuleData {
    let field = data.field;
    let alg = data.finite_algebra().expect("finite coefficients");
    let n = alg.dim;
    let left_a: Vec<ActionMat> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| alg.mul_vectors(&SparseVector::unit(i, field), &SparseVector::unit(j, field)))
                .collect()
        })
        .collect();
    let right_a: Vec<ActionMat> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| alg.mul_vectors(&SparseVector::unit(j, field), &SparseVector::unit(i, field)))
                .collect()
        })
        .collect();
    let left_g: Vec<ActionMat> = rho
        .iter()
        .map(|r| {
            (0..n)
                .map(|j| alg.mul_vectors(r, &SparseVector::unit(j, field)))
                .collect()
        })
        .collect();
    let right_g: Vec<ActionMat> = rho
        .iter()
        .map(|r| {
            (0..n)
                .map(|j| alg.mul_vectors(&SparseVector::unit(j, field), r))
                .collect()
        })
        .collect();
    ModuleData::Finite(FiniteModule {
        dim: n,
        left_a,
        right_a,
        left_g,
        right_g,
    })
}

/// `M = A` for rings with `g = 0`: the regular `A`-bimodule.
pub fn a_as_module(data: &RingData) -> ModuleData {
    assert_eq!(data.gen_count(), 0, "a_as_module requires g = 0");
    inner_module(data, &[])
}

// ---------------------------------------------------------------------------
// Seeded random fixtures
// ---------------------------------------------------------------------------

/// A randomized validated fixture together with the finite coefficient
/// modules that are valid for it.
pub struct RandomFixture {
    pub label: String,
    pub data: RingData,
    pub finite_modules: Vec<ModuleData>,
}

fn small_scalar<R: Rng>(rng: &mut R, field: FieldKind) -> Scalar {
    field.integer(rng.gen_range(-3i64..=3))
}

/// Draws one fixture from families that are valid by construction:
/// smash products with zero or inner actions, Sridharan cocycles over
/// `A = k`, and relative versions with a nontrivial stable subalgebra.
pub fn random_fixture<R: Rng>(rng: &mut R, field: FieldKind) -> RandomFixture {
    let family = rng.gen_range(0..8u32);
    match family {
        // A = k with an abelian g and a random antisymmetric cocycle.
        0 => {
            let d = rng.gen_range(1..=3usize);
            let mut f = vec![vec![SparseVector::new(); d]; d];
            for i in 0..d {
                for j in (i + 1)..d {
                    f[i][j] = SparseVector::from_entries(vec![(0, small_scalar(rng, field))]);
                }
            }
            let has_cocycle = f
                .iter()
                .flatten()
                .any(|v: &SparseVector| !v.is_zero());
            let data = RingData::new(
                field,
                CoeffAlgebra::Finite(scalar_algebra(field)),
                LieAlgebra::abelian(d),
                zero_action(1, d),
                CocycleData::Finite(f),
                Subalgebra::ground_field(),
            )
            .unwrap();
            let mut modules = Vec::new();
            if !has_cocycle {
                modules.push(augmentation_module(&data));
            }
            RandomFixture {
                label: format!("sridharan-abelian-{d}"),
                data,
                finite_modules: modules,
            }
        }
        // A = k, Heisenberg g, random antisymmetric cocycle (always a cocycle
        // for this bracket).
        1 => {
            let mut f = vec![vec![SparseVector::new(); 3]; 3];
            for i in 0..3 {
                for j in (i + 1)..3 {
                    f[i][j] = SparseVector::from_entries(vec![(0, small_scalar(rng, field))]);
                }
            }
            let data = RingData::new(
                field,
                CoeffAlgebra::Finite(scalar_algebra(field)),
                heisenberg(field),
                zero_action(1, 3),
                CocycleData::Finite(f),
                Subalgebra::ground_field(),
            )
            .unwrap();
            RandomFixture {
                label: "sridharan-heisenberg".into(),
                data,
                finite_modules: vec![],
            }
        }
        // A = k, sl2, coboundary cocycle f(x,y) = lambda([x,y]).
        2 => {
            let lie = sl2_lie(field);
            let lambda: Vec<Scalar> = (0..3).map(|_| small_scalar(rng, field)).collect();
            let mut f = vec![vec![SparseVector::new(); 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    let mut acc = field.zero();
                    for (k, c) in lie.bracket[i][j].iter() {
                        acc = acc.add(&c.mul(&lambda[*k]));
                    }
                    f[i][j] = SparseVector::from_entries(vec![(0, acc)]);
                }
            }
            let data = RingData::new(
                field,
                CoeffAlgebra::Finite(scalar_algebra(field)),
                lie,
                zero_action(1, 3),
                CocycleData::Finite(f),
                Subalgebra::ground_field(),
            )
            .unwrap();
            RandomFixture {
                label: "sridharan-sl2-coboundary".into(),
                data,
                finite_modules: vec![],
            }
        }
        // Commutative A with zero action, abelian g, zero cocycle.
        3 => {
            let (alg, name) = match rng.gen_range(0..3u32) {
                0 => (dual_numbers_algebra(field), "dual"),
                1 => (product_of_fields(field), "kxk"),
                _ => (
                    cubic_quotient(field, rng.gen_range(-2..=2), rng.gen_range(-2..=2)),
                    "cubic",
                ),
            };
            let d = rng.gen_range(0..=2usize);
            let dim = alg.dim;
            let data = RingData::new(
                field,
                CoeffAlgebra::Finite(alg),
                LieAlgebra::abelian(d),
                zero_action(dim, d),
                zero_cocycle(field, d),
                Subalgebra::ground_field(),
            )
            .unwrap();
            let mut modules = vec![inner_module(&data, &vec![SparseVector::new(); d])];
            if d == 0 {
                modules.push(a_as_module(&data));
            }
            RandomFixture {
                label: format!("commutative-{name}-abelian-{d}"),
                data,
                finite_modules: modules,
            }
        }
        // Quaternion algebra with an inner sl2 action (smash product).
        4 => {
            let alg = quaternion_algebra(field, 1, 1);
            // e = (j + ij)/2, f = (j - ij)/2, h = i is an sl2 triple.
            let half = field.ratio(1, 2);
            let rho = vec![
                SparseVector::from_entries(vec![(2, half.clone()), (3, half.clone())]),
                SparseVector::from_entries(vec![(2, half.clone()), (3, half.neg())]),
                sv(field, &[(1, 1)]),
            ];
            let action = ActionData::Matrices(inner_action(&alg, &rho, field));
            let data = RingData::new(
                field,
                CoeffAlgebra::Finite(alg),
                sl2_lie(field),
                action,
                zero_cocycle(field, 3),
                Subalgebra::ground_field(),
            )
            .unwrap();
            let modules = vec![inner_module(&data, &rho)];
            RandomFixture {
                label: "quaternion-sl2-inner".into(),
                data,
                finite_modules: modules,
            }
        }
        // Triangular 2x2 with the solvable algebra acting innerly.
        5 => {
            let alg = triangular_two(field);
            let rho = vec![sv(field, &[(1, 1)]), sv(field, &[(2, 1)])];
            let action = ActionData::Matrices(inner_action(&alg, &rho, field));
            let data = RingData::new(
                field,
                CoeffAlgebra::Finite(alg),
                solvable_two(field),
                action,
                zero_cocycle(field, 2),
                Subalgebra::ground_field(),
            )
            .unwrap();
            let modules = vec![inner_module(&data, &rho)];
            RandomFixture {
                label: "triangular-solvable-inner".into(),
                data,
                finite_modules: modules,
            }
        }
        // Exterior algebra with abelian g acting by multiples of the grading
        // derivation.
        6 => {
            let alg = exterior_two(field);
            let d = rng.gen_range(1..=2usize);
            let mut maps = Vec::new();
            for _ in 0..d {
                let c = small_scalar(rng, field);
                let map: Vec<SparseVector> = (0..4)
                    .map(|i| {
                        let deg = alg.degrees.as_ref().unwrap()[i] as i64;
                        SparseVector::from_entries(vec![(i, c.mul(&field.integer(deg)))])
                    })
                    .collect();
                maps.push(map);
            }
            let data = RingData::new(
                field,
                CoeffAlgebra::Finite(alg),
                LieAlgebra::abelian(d),
                ActionData::Matrices(maps),
                zero_cocycle(field, d),
                Subalgebra::ground_field(),
            )
            .unwrap();
            RandomFixture {
                label: format!("exterior-grading-{d}"),
                data,
                finite_modules: vec![],
            }
        }
        // Relative version: exterior algebra with K = span(1, u), stable
        // under the zero action.
        _ => {
            let alg = exterior_two(field);
            let d = rng.gen_range(1..=2usize);
            let data = RingData::new(
                field,
                CoeffAlgebra::Finite(alg),
                LieAlgebra::abelian(d),
                zero_action(4, d),
                zero_cocycle(field, d),
                Subalgebra {
                    ground_field: false,
                    span: vec![sv(field, &[(0, 1)]), sv(field, &[(1, 1)])],
                },
            )
            .unwrap();
            let modules = vec![inner_module(&data, &vec![SparseVector::new(); d])];
            RandomFixture {
                label: format!("exterior-relative-{d}"),
                data,
                finite_modules: modules,
            }
        }
    }
}

fn inner_action(
    alg: &FiniteAlgebra,
    rho: &[SparseVector],
    field: FieldKind,
) -> Vec<Vec<SparseVector>> {
    rho.iter()
        .map(|r| {
            (0..alg.dim)
                .map(|j| {
                    let ej = SparseVector::unit(j, field);
                    alg.mul_vectors(r, &ej)
                        .add_scaled(&alg.mul_vectors(&ej, r), &field.integer(-1))
                })
                .collect()
        })
        .collect()
}

/// A random element of `E` with a handful of monomials of filtration degree
/// at most `max_deg`.
pub fn random_element<R: Rng>(rng: &mut R, data: &RingData, max_deg: u32) -> Element {
    let d = data.gen_count();
    let mut out = Element::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let a = match &data.coeff {
            CoeffAlgebra::Finite(alg) => crate::element::ABasisId::Idx(rng.gen_range(0..alg.dim)),
            CoeffAlgebra::Symmetric(sym) => {
                let mut e = vec![0u32; sym.dim_v];
                let mut budget = rng.gen_range(0..=max_deg);
                for v in 0..sym.dim_v {
                    let take = rng.gen_range(0..=budget);
                    e[v] = take;
                    budget -= take;
                }
                crate::element::ABasisId::Mono(e)
            }
        };
        let mut exps = vec![0u32; d];
        if d > 0 {
            let mut budget = max_deg.saturating_sub(data.a_deg(&a));
            for e in exps.iter_mut() {
                let take = rng.gen_range(0..=budget);
                *e = take;
                budget -= take;
            }
        }
        let coeff = loop {
            let c = small_scalar(rng, data.field);
            if !c.is_zero() {
                break c;
            }
        };
        out.add_term(crate::element::PbwMonomial { a, exps }, coeff);
    }
    out
}

/// A random REGULAR-valued cochain table on the `(r, s)` block.
pub fn random_cochain<R: Rng>(
    rng: &mut R,
    data: &RingData,
    r: usize,
    s: usize,
    max_deg: u32,
) -> crate::complexes::Cochain {
    let mut phi = crate::complexes::Cochain::zero(r, s);
    for key in crate::complexes::block_keys(data, r, s) {
        if rng.gen_bool(0.75) {
            phi.insert(key, crate::module::MValue::Reg(random_element(rng, data, max_deg)));
        }
    }
    phi
}

/// A random REGULAR-valued chain supported on a few basis keys.
pub fn random_chain<R: Rng>(
    rng: &mut R,
    data: &RingData,
    r: usize,
    s: usize,
    max_deg: u32,
) -> crate::complexes::Chain {
    let mut c = crate::complexes::Chain::zero(r, s);
    let keys = crate::complexes::block_keys(data, r, s);
    for key in keys {
        if rng.gen_bool(0.6) {
            c.add_value(key, crate::module::MValue::Reg(random_element(rng, data, max_deg)));
        }
    }
    c
}

/// A random word cochain in symmetric mode: a finitely supported table on
/// length-`r` words of `V`-letters tensor `g`-wedges, REGULAR values.
pub fn random_word_cochain<R: Rng>(
    rng: &mut R,
    data: &RingData,
    r: usize,
    s: usize,
    max_deg: u32,
) -> crate::complexes::Cochain {
    let mut phi = crate::complexes::Cochain::zero(r, s);
    for w in crate::symmetric::v_words(data, r) {
        for x in (0..data.gen_count()).combinations(s) {
            if rng.gen_bool(0.75) {
                phi.insert(
                    (w.clone(), x),
                    crate::module::MValue::Reg(random_element(rng, data, max_deg)),
                );
            }
        }
    }
    phi
}

/// A random cochain with values in a finite coefficient module.
pub fn random_cochain_fin<R: Rng>(
    rng: &mut R,
    data: &RingData,
    module: &ModuleData,
    r: usize,
    s: usize,
) -> crate::complexes::Cochain {
    let dim = module.finite().unwrap().dim;
    let mut phi = crate::complexes::Cochain::zero(r, s);
    for key in crate::complexes::block_keys(data, r, s) {
        let v = SparseVector::from_entries(
            (0..dim).map(|i| (i, small_scalar(rng, data.field))).collect(),
        );
        phi.insert(key, crate::module::MValue::Fin(v));
    }
    phi
}

/// A random chain with values in a finite coefficient module.
pub fn random_chain_fin<R: Rng>(
    rng: &mut R,
    data: &RingData,
    module: &ModuleData,
    r: usize,
    s: usize,
) -> crate::complexes::Chain {
    let dim = module.finite().unwrap().dim;
    let mut c = crate::complexes::Chain::zero(r, s);
    for key in crate::complexes::block_keys(data, r, s) {
        if rng.gen_bool(0.6) {
            let v = SparseVector::from_entries(
                (0..dim).map(|i| (i, small_scalar(rng, data.field))).collect(),
            );
            c.add_value(key, crate::module::MValue::Fin(v));
        }
    }
    c
}

/// Draws a random valid symmetric-mode fixture (`dim V <= 2`, `dim g <= 2`).
pub fn random_symmetric<R: Rng>(rng: &mut R, field: FieldKind) -> RingData {
    let dim_v = rng.gen_range(1..=2usize);
    let family = rng.gen_range(0..4u32);
    let affine = |rng: &mut R, field: FieldKind, constant: bool, linear: bool| AffineValue {
        constant: if constant {
            small_scalar(rng, field)
        } else {
            field.zero()
        },
        linear: if linear {
            SparseVector::from_entries(
                (0..dim_v).map(|v| (v, small_scalar(rng, field))).collect(),
            )
        } else {
            SparseVector::new()
        },
    };
    match family {
        // One generator: any affine action, cocycle irrelevant.
        0 => {
            let action = vec![(0..dim_v).map(|_| affine(rng, field, true, true)).collect()];
            symmetric_ring(
                field,
                dim_v,
                LieAlgebra::abelian(1),
                action,
                vec![vec![AffineValue::zero(field)]],
            )
        }
        // Abelian pair with scalar-only actions and any affine cocycle.
        1 => {
            let action = (0..2)
                .map(|_| (0..dim_v).map(|_| affine(rng, field, true, false)).collect())
                .collect();
            let mut f = vec![vec![AffineValue::zero(field); 2]; 2];
            f[0][1] = affine(rng, field, true, true);
            f[1][0] = affine(rng, field, true, true);
            symmetric_ring(field, dim_v, LieAlgebra::abelian(2), action, f)
        }
        // Abelian pair acting by multiples of the Euler derivation.
        2 => {
            let action = (0..2)
                .map(|_| {
                    let c = small_scalar(rng, field);
                    (0..dim_v)
                        .map(|v| AffineValue {
                            constant: field.zero(),
                            linear: SparseVector::from_entries(vec![(v, c.clone())]),
                        })
                        .collect()
                })
                .collect();
            let mut f = vec![vec![AffineValue::zero(field); 2]; 2];
            f[0][1] = affine(rng, field, true, true);
            symmetric_ring(field, dim_v, LieAlgebra::abelian(2), action, f)
        }
        // [x, y] = y with x acting by minus the Euler derivation and y by
        // random constants.
        _ => {
            let x_action: Vec<AffineValue> = (0..dim_v)
                .map(|v| AffineValue {
                    constant: field.zero(),
                    linear: SparseVector::from_entries(vec![(v, field.integer(-1))]),
                })
                .collect();
            let y_action: Vec<AffineValue> =
                (0..dim_v).map(|_| affine(rng, field, true, false)).collect();
            let mut f = vec![vec![AffineValue::zero(field); 2]; 2];
            f[0][1] = affine(rng, field, true, true);
            symmetric_ring(
                field,
                dim_v,
                solvable_two(field),
                vec![x_action, y_action],
                f,
            )
        }
    }
}
