//! JSON problem configurations: a single document describing the field, the
//! ring data (algebra, subalgebra, Lie algebra, action, cocycle), the
//! coefficient module and the command parameters. Coefficients are decimal
//! integers or `p/q` strings, so rationals round-trip exactly through text.

use serde::Deserialize;

use doring_core::data::{
    ActionData, AffineValue, CocycleData, CoeffAlgebra, FiniteAlgebra, LieAlgebra, RingData,
    Subalgebra, SymmetricAlgebra,
};
use doring_core::linalg::SparseVector;
use doring_core::module::{ActionMat, FiniteModule, ModuleData};
use doring_core::scalar::{FieldKind, Scalar};

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub schema: u32,
    pub field: String,
    pub algebra: AlgebraBlock,
    #[serde(default)]
    pub subalgebra: Option<SubalgebraBlock>,
    pub lie: LieBlock,
    #[serde(default)]
    pub action: Option<ActionBlock>,
    #[serde(default)]
    pub cocycle: Option<CocycleBlock>,
    pub module: ModuleBlock,
    #[serde(default)]
    pub params: Params,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct AlgebraBlock {
    pub kind: String,
    #[serde(default)]
    pub dim: Option<usize>,
    #[serde(default)]
    pub unit: Option<usize>,
    #[serde(default)]
    pub dim_v: Option<usize>,
    #[serde(default)]
    pub names: Option<Vec<String>>,
    /// Sparse structure constants `[i, j, k, "c"]`: `e_i e_j += c e_k`.
    #[serde(default)]
    pub mul: Vec<(usize, usize, usize, String)>,
    #[serde(default)]
    pub degrees: Option<Vec<u32>>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct SubalgebraBlock {
    #[serde(default)]
    pub ground_field: bool,
    /// Spanning vectors as lists of `[basis_index, "c"]` pairs.
    #[serde(default)]
    pub span: Vec<Vec<(usize, String)>>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct LieBlock {
    pub dim: usize,
    #[serde(default)]
    pub names: Option<Vec<String>>,
    /// Bracket entries `[i, j, k, "c"]` with `i < j`; transposes derived.
    #[serde(default)]
    pub bracket: Vec<(usize, usize, usize, String)>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct ActionBlock {
    pub kind: String,
    /// Finite mode: entries `[g, src, dst, "c"]` meaning `e_src^{g} += c e_dst`.
    #[serde(default)]
    pub entries: Vec<(usize, usize, usize, String)>,
    /// Affine mode: one value per (generator, variable).
    #[serde(default)]
    pub values: Vec<AffineEntry>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct AffineEntry {
    pub gen: usize,
    #[serde(default)]
    pub v: Option<usize>,
    #[serde(default)]
    pub j: Option<usize>,
    #[serde(default)]
    pub constant: Option<String>,
    #[serde(default)]
    pub linear: Vec<(usize, String)>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct CocycleBlock {
    pub kind: String,
    /// Finite mode: entries `[i, j, k, "c"]` meaning `f(g_i, g_j) += c e_k`.
    #[serde(default)]
    pub entries: Vec<(usize, usize, usize, String)>,
    /// Affine mode: `gen`/`j` index the generator pair.
    #[serde(default)]
    pub values: Vec<AffineEntry>,
}

#[derive(Deserialize, Debug)]
#[serde(untagged)]
pub enum ModuleBlock {
    Regular(String),
    Finite(FiniteModuleBlock),
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct FiniteModuleBlock {
    pub dim: usize,
    /// Entries `[operator_index, src, dst, "c"]`.
    #[serde(default)]
    pub left_a: Vec<(usize, usize, usize, String)>,
    #[serde(default)]
    pub right_a: Vec<(usize, usize, usize, String)>,
    #[serde(default)]
    pub left_g: Vec<(usize, usize, usize, String)>,
    #[serde(default)]
    pub right_g: Vec<(usize, usize, usize, String)>,
}

#[derive(Deserialize, Debug, Default, Clone)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default)]
    pub n_max: Option<usize>,
    #[serde(default)]
    pub caps: Option<Vec<u32>>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// Everything a command needs, resolved and range-checked.
#[derive(Debug)]
pub struct Problem {
    pub data: RingData,
    pub module: ModuleData,
    pub params: Params,
}

pub fn parse_config(text: &str) -> Result<ProblemConfig, ConfigError> {
    if !text.trim_start().starts_with('{') {
        return err("expected a JSON object");
    }
    let cfg: ProblemConfig = serde_json::from_str(text).map_err(|e| ConfigError(e.to_string()))?;
    if cfg.schema != 1 {
        return err(format!("unsupported schema version {}", cfg.schema));
    }
    Ok(cfg)
}

fn scalar(field: FieldKind, text: &str, what: &str) -> Result<Scalar, ConfigError> {
    field
        .scalar_from_str(text)
        .map_err(|e| ConfigError(format!("{what}: {e}")))
}

fn sparse(
    field: FieldKind,
    pairs: &[(usize, String)],
    bound: usize,
    what: &str,
) -> Result<SparseVector, ConfigError> {
    let mut entries = Vec::new();
    for (i, c) in pairs {
        if *i >= bound {
            return err(format!("{what}: index {i} out of range (dim {bound})"));
        }
        entries.push((*i, scalar(field, c, what)?));
    }
    Ok(SparseVector::from_entries(entries))
}

/// Builds a column-major action matrix from `[op, src, dst, "c"]` entries
/// restricted to one operator index.
fn mats_from_entries(
    field: FieldKind,
    entries: &[(usize, usize, usize, String)],
    ops: usize,
    dim: usize,
    what: &str,
) -> Result<Vec<ActionMat>, ConfigError> {
    let mut per: Vec<Vec<Vec<(usize, Scalar)>>> = vec![vec![Vec::new(); dim]; ops];
    for (t, (op, src, dst, c)) in entries.iter().enumerate() {
        if *op >= ops || *src >= dim || *dst >= dim {
            return err(format!("{what}[{t}]: index out of range"));
        }
        per[*op][*src].push((*dst, scalar(field, c, &format!("{what}[{t}]"))?));
    }
    Ok(per
        .into_iter()
        .map(|m| m.into_iter().map(SparseVector::from_entries).collect())
        .collect())
}

pub fn resolve(cfg: &ProblemConfig) -> Result<Problem, ConfigError> {
    let field = FieldKind::parse(&cfg.field).map_err(ConfigError)?;
    let d = cfg.lie.dim;

    // Lie algebra.
    let names = cfg
        .lie
        .names
        .clone()
        .unwrap_or_else(|| (1..=d).map(|i| format!("x{i}")).collect());
    if names.len() != d {
        return err("lie.names has wrong length");
    }
    let mut upper = Vec::new();
    for (t, (i, j, k, c)) in cfg.lie.bracket.iter().enumerate() {
        if *i >= d || *j >= d || *k >= d {
            return err(format!("lie.bracket[{t}]: index out of range (dim {d})"));
        }
        if i >= j {
            return err(format!(
                "lie.bracket[{t}]: entries need i < j (the transpose is derived)"
            ));
        }
        upper.push((*i, *j, *k, scalar(field, c, &format!("lie.bracket[{t}]"))?));
    }
    let lie = LieAlgebra::from_upper_entries(d, names, &upper);

    // Coefficient algebra, action, cocycle.
    let (coeff, action, cocycle, a_dim) = match cfg.algebra.kind.as_str() {
        "finite" => {
            let dim = cfg
                .algebra
                .dim
                .ok_or_else(|| ConfigError("algebra.dim required for kind=finite".into()))?;
            let unit = cfg
                .algebra
                .unit
                .ok_or_else(|| ConfigError("algebra.unit required for kind=finite".into()))?;
            if unit >= dim {
                return err("algebra.unit out of range");
            }
            let names = cfg
                .algebra
                .names
                .clone()
                .unwrap_or_else(|| (0..dim).map(|i| format!("a{i}")).collect());
            if names.len() != dim {
                return err("algebra.names has wrong length");
            }
            if let Some(degs) = &cfg.algebra.degrees {
                if degs.len() != dim {
                    return err("algebra.degrees has wrong length");
                }
            }
            let mut mul: Vec<Vec<Vec<(usize, Scalar)>>> = vec![vec![Vec::new(); dim]; dim];
            for (t, (i, j, k, c)) in cfg.algebra.mul.iter().enumerate() {
                if *i >= dim || *j >= dim || *k >= dim {
                    return err(format!("algebra.mul[{t}]: index out of range (dim {dim})"));
                }
                mul[*i][*j].push((*k, scalar(field, c, &format!("algebra.mul[{t}]"))?));
            }
            let alg = FiniteAlgebra {
                dim,
                unit,
                names,
                mul: mul
                    .into_iter()
                    .map(|row| row.into_iter().map(SparseVector::from_entries).collect())
                    .collect(),
                degrees: cfg.algebra.degrees.clone(),
            };
            let action = match &cfg.action {
                None => ActionData::Matrices(vec![vec![SparseVector::new(); dim]; d]),
                Some(a) if a.kind == "matrices" => ActionData::Matrices(mats_from_entries(
                    field, &a.entries, d, dim, "action.entries",
                )?),
                Some(a) => {
                    return err(format!(
                        "action.kind `{}` does not match a finite algebra",
                        a.kind
                    ))
                }
            };
            let cocycle = match &cfg.cocycle {
                None => CocycleData::Finite(vec![vec![SparseVector::new(); d]; d]),
                Some(f) if f.kind == "finite" => {
                    let mut table: Vec<Vec<Vec<(usize, Scalar)>>> =
                        vec![vec![Vec::new(); d]; d];
                    for (t, (i, j, k, c)) in f.entries.iter().enumerate() {
                        if *i >= d || *j >= d || *k >= dim {
                            return err(format!("cocycle.entries[{t}]: index out of range"));
                        }
                        table[*i][*j]
                            .push((*k, scalar(field, c, &format!("cocycle.entries[{t}]"))?));
                    }
                    CocycleData::Finite(
                        table
                            .into_iter()
                            .map(|row| {
                                row.into_iter().map(SparseVector::from_entries).collect()
                            })
                            .collect(),
                    )
                }
                Some(f) => {
                    return err(format!(
                        "cocycle.kind `{}` does not match a finite algebra",
                        f.kind
                    ))
                }
            };
            (CoeffAlgebra::Finite(alg), action, cocycle, dim)
        }
        "symmetric" => {
            let dim_v = cfg
                .algebra
                .dim_v
                .ok_or_else(|| ConfigError("algebra.dim_v required for kind=symmetric".into()))?;
            let names = cfg
                .algebra
                .names
                .clone()
                .unwrap_or_else(|| (1..=dim_v).map(|i| format!("v{i}")).collect());
            if names.len() != dim_v {
                return err("algebra.names has wrong length");
            }
            let mut action_table = vec![vec![AffineValue::zero(field); dim_v]; d];
            if let Some(a) = &cfg.action {
                if a.kind != "affine" {
                    return err("symmetric algebras need action.kind = affine");
                }
                for (t, v) in a.values.iter().enumerate() {
                    let vi = v
                        .v
                        .ok_or_else(|| ConfigError(format!("action.values[{t}]: missing v")))?;
                    if v.gen >= d || vi >= dim_v {
                        return err(format!("action.values[{t}]: index out of range"));
                    }
                    action_table[v.gen][vi] = AffineValue {
                        constant: match &v.constant {
                            Some(c) => scalar(field, c, &format!("action.values[{t}]"))?,
                            None => field.zero(),
                        },
                        linear: sparse(
                            field,
                            &v.linear,
                            dim_v,
                            &format!("action.values[{t}].linear"),
                        )?,
                    };
                }
            }
            let mut cocycle_table = vec![vec![AffineValue::zero(field); d]; d];
            if let Some(f) = &cfg.cocycle {
                if f.kind != "affine" {
                    return err("symmetric algebras need cocycle.kind = affine");
                }
                for (t, v) in f.values.iter().enumerate() {
                    let j = v
                        .j
                        .ok_or_else(|| ConfigError(format!("cocycle.values[{t}]: missing j")))?;
                    if v.gen >= d || j >= d {
                        return err(format!("cocycle.values[{t}]: index out of range"));
                    }
                    cocycle_table[v.gen][j] = AffineValue {
                        constant: match &v.constant {
                            Some(c) => scalar(field, c, &format!("cocycle.values[{t}]"))?,
                            None => field.zero(),
                        },
                        linear: sparse(
                            field,
                            &v.linear,
                            dim_v,
                            &format!("cocycle.values[{t}].linear"),
                        )?,
                    };
                }
            }
            (
                CoeffAlgebra::Symmetric(SymmetricAlgebra { dim_v, names }),
                ActionData::Affine(action_table),
                CocycleData::Affine(cocycle_table),
                dim_v,
            )
        }
        other => return err(format!("unknown algebra.kind `{other}`")),
    };

    // Subalgebra.
    let subalgebra = match &cfg.subalgebra {
        None => Subalgebra::ground_field(),
        Some(s) if s.ground_field || s.span.is_empty() => Subalgebra::ground_field(),
        Some(s) => {
            let mut span = Vec::new();
            for (t, vec) in s.span.iter().enumerate() {
                span.push(sparse(field, vec, a_dim, &format!("subalgebra.span[{t}]"))?);
            }
            Subalgebra {
                ground_field: false,
                span,
            }
        }
    };

    let data = RingData::new(field, coeff, lie, action, cocycle, subalgebra)
        .map_err(ConfigError)?;

    // Module.
    let module = match &cfg.module {
        ModuleBlock::Regular(tag) if tag == "regular" => ModuleData::Regular,
        ModuleBlock::Regular(tag) => {
            return err(format!("unknown module `{tag}` (expected \"regular\")"))
        }
        ModuleBlock::Finite(m) => {
            let a_ops = match &data.coeff {
                CoeffAlgebra::Finite(a) => a.dim,
                CoeffAlgebra::Symmetric(s) => s.dim_v,
            };
            ModuleData::Finite(FiniteModule {
                dim: m.dim,
                left_a: mats_from_entries(field, &m.left_a, a_ops, m.dim, "module.left_a")?,
                right_a: mats_from_entries(field, &m.right_a, a_ops, m.dim, "module.right_a")?,
                left_g: mats_from_entries(field, &m.left_g, d, m.dim, "module.left_g")?,
                right_g: mats_from_entries(field, &m.right_g, d, m.dim, "module.right_g")?,
            })
        }
    };

    Ok(Problem {
        data,
        module,
        params: cfg.params.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "schema": 1,
        "field": "rationals",
        "algebra": {"kind": "finite", "dim": 1, "unit": 0, "mul": [[0,0,0,"1"]]},
        "lie": {"dim": 1},
        "module": {"dim": 1, "left_a": [[0,0,0,"1"]], "right_a": [[0,0,0,"1"]]}
    }"#;

    #[test]
    fn minimal_config_parses() {
        let cfg = parse_config(MINIMAL).unwrap();
        let problem = resolve(&cfg).unwrap();
        assert_eq!(problem.data.gen_count(), 1);
    }

    #[test]
    fn out_of_range_entry_is_named() {
        let bad = MINIMAL.replace("[[0,0,0,\"1\"]],\n", "");
        let bad = bad.replace("\"mul\": [[0,0,0,\"1\"]]", "\"mul\": [[0,5,0,\"1\"]]");
        let cfg = parse_config(&bad).unwrap();
        let e = resolve(&cfg).unwrap_err();
        assert!(e.0.contains("algebra.mul[0]"), "{}", e.0);
    }

    #[test]
    fn non_prime_field_rejected() {
        let bad = MINIMAL.replace("rationals", "fp:4");
        let cfg = parse_config(&bad).unwrap();
        let e = resolve(&cfg).unwrap_err();
        assert!(e.0.contains("not prime"), "{}", e.0);
    }

    #[test]
    fn unknown_keys_rejected() {
        let bad = MINIMAL.replace("\"schema\": 1,", "\"schema\": 1, \"bogus\": true,");
        assert!(parse_config(&bad).is_err());
    }
}
