//! Validators for every axiom the ring construction relies on: unit and
//! associativity of `A`, antisymmetry and Jacobi for `g`, the Leibniz rule
//! and `K`-stability of the action, well-definedness of coefficient
//! bimodules, and confluence of the defining rewriting system (the computable
//! form of the cocycle and twisted-module conditions).

use crate::data::{in_row_space, ActionData, CoeffAlgebra, RingData};
use crate::element::{normal_form, rewrite_at, ABasisId, Atom, Element};
use crate::linalg::SparseVector;
use crate::module::{apply_mat, ActionMat, ModuleCtx, ModuleData};

/// One failed check: the name of the check, the witness it failed on, and
/// both sides of the violated equation.
#[derive(Clone, Debug)]
pub struct ValidationIssue {
    pub check: String,
    pub witness: String,
    pub expected: String,
    pub got: String,
}

/// Failures are data, not errors: an empty report means the input is valid.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    fn push(&mut self, check: &str, witness: String, expected: String, got: String) {
        self.issues.push(ValidationIssue {
            check: check.into(),
            witness,
            expected,
            got,
        });
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.issues.extend(other.issues);
    }
}

fn sv_text(v: &SparseVector) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter()
        .map(|(i, c)| format!("{c}*e{i}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Unit and associativity of the coefficient algebra on all basis triples.
pub fn validate_algebra(data: &RingData) -> ValidationReport {
    let mut report = ValidationReport::default();
    let Some(alg) = data.finite_algebra() else {
        // S(V) is associative and unital by construction.
        return report;
    };
    let field = data.field;
    let n = alg.dim;
    let u = alg.unit;
    for i in 0..n {
        let ei = SparseVector::unit(i, field);
        let left = alg.mul_vectors(&SparseVector::unit(u, field), &ei);
        if left != ei {
            report.push(
                "algebra-unit-left",
                alg.names[i].clone(),
                sv_text(&ei),
                sv_text(&left),
            );
        }
        let right = alg.mul_vectors(&ei, &SparseVector::unit(u, field));
        if right != ei {
            report.push(
                "algebra-unit-right",
                alg.names[i].clone(),
                sv_text(&ei),
                sv_text(&right),
            );
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let ei = SparseVector::unit(i, field);
                let ej = SparseVector::unit(j, field);
                let ek = SparseVector::unit(k, field);
                let ab_c = alg.mul_vectors(&alg.mul_vectors(&ei, &ej), &ek);
                let a_bc = alg.mul_vectors(&ei, &alg.mul_vectors(&ej, &ek));
                if ab_c != a_bc {
                    report.push(
                        "algebra-associativity",
                        format!("({}, {}, {})", alg.names[i], alg.names[j], alg.names[k]),
                        sv_text(&a_bc),
                        sv_text(&ab_c),
                    );
                }
            }
        }
    }
    report
}

/// Antisymmetry and the Jacobi identity on all basis triples.
pub fn validate_lie(data: &RingData) -> ValidationReport {
    let mut report = ValidationReport::default();
    let lie = &data.lie;
    let field = data.field;
    let d = lie.dim;
    for i in 0..d {
        if !lie.bracket[i][i].is_zero() {
            report.push(
                "lie-antisymmetry",
                format!("[{0}, {0}]", lie.names[i]),
                "0".into(),
                sv_text(&lie.bracket[i][i]),
            );
        }
        for j in 0..d {
            let sum = lie.bracket[i][j].add(&lie.bracket[j][i]);
            if !sum.is_zero() {
                report.push(
                    "lie-antisymmetry",
                    format!("[{}, {}] + [{}, {}]", lie.names[i], lie.names[j], lie.names[j], lie.names[i]),
                    "0".into(),
                    sv_text(&sum),
                );
            }
        }
    }
    let bracket_vec = |a: &SparseVector, j: usize| -> SparseVector {
        let mut out = SparseVector::new();
        for (k, c) in a.iter() {
            out = out.add_scaled(&lie.bracket[*k][j], c);
        }
        out
    };
    for i in 0..d {
        for j in (i + 1)..d {
            for k in (j + 1)..d {
                // [[i,j],k] + [[j,k],i] + [[k,i],j] = 0
                let mut sum = bracket_vec(&lie.bracket[i][j], k);
                sum = sum.add(&bracket_vec(&lie.bracket[j][k], i));
                sum = sum.add(&bracket_vec(&lie.bracket[k][i], j));
                if !sum.is_zero() {
                    report.push(
                        "lie-jacobi",
                        format!("({}, {}, {})", lie.names[i], lie.names[j], lie.names[k]),
                        "0".into(),
                        sv_text(&sum),
                    );
                }
            }
        }
    }
    let _ = field;
    report
}

/// Leibniz rule of the action on all basis pairs, plus stability of `K`.
/// Weak actions are allowed: no compatibility with the bracket is required
/// here (that is the presentation check's job).
pub fn validate_action(data: &RingData) -> ValidationReport {
    let mut report = ValidationReport::default();
    let field = data.field;
    match (&data.coeff, &data.action) {
        (CoeffAlgebra::Finite(alg), ActionData::Matrices(maps)) => {
            let n = alg.dim;
            let act = |g: usize, v: &SparseVector| -> SparseVector {
                let mut out = SparseVector::new();
                for (i, c) in v.iter() {
                    out = out.add_scaled(&maps[g][*i], c);
                }
                out
            };
            for g in 0..data.gen_count() {
                for i in 0..n {
                    for j in 0..n {
                        let ei = SparseVector::unit(i, field);
                        let ej = SparseVector::unit(j, field);
                        let lhs = act(g, &alg.mul_vectors(&ei, &ej));
                        let rhs = alg
                            .mul_vectors(&act(g, &ei), &ej)
                            .add(&alg.mul_vectors(&ei, &act(g, &ej)));
                        if lhs != rhs {
                            report.push(
                                "action-leibniz",
                                format!(
                                    "({}, {}, gen {})",
                                    alg.names[i], alg.names[j], data.lie.names[g]
                                ),
                                sv_text(&rhs),
                                sv_text(&lhs),
                            );
                        }
                    }
                }
                // K-stability: lambda^x stays in K for every spanning vector.
                let kctx = data.k_context().unwrap();
                for (s, lambda) in kctx.k_rows.iter().enumerate() {
                    let image = act(g, lambda);
                    if !in_row_space(&kctx.k_rows, &image) {
                        report.push(
                            "subalgebra-stability",
                            format!("K basis vector {s}, gen {}", data.lie.names[g]),
                            "element of K".into(),
                            sv_text(&image),
                        );
                    }
                }
            }
        }
        (CoeffAlgebra::Symmetric(sym), ActionData::Affine(_)) => {
            // The affine action extends to S(V) by the Leibniz rule, so the
            // derivation property is structural; spot-check it on quadratic
            // monomials as a guard against table corruption.
            for g in 0..data.gen_count() {
                for a in 0..sym.dim_v {
                    for b in 0..sym.dim_v {
                        let mut ea = vec![0u32; sym.dim_v];
                        ea[a] += 1;
                        let mut eb = vec![0u32; sym.dim_v];
                        eb[b] += 1;
                        let mut eab = vec![0u32; sym.dim_v];
                        eab[a] += 1;
                        eab[b] += 1;
                        let lhs = data.a_act(g, &ABasisId::Mono(eab));
                        let da = data.a_act(g, &ABasisId::Mono(ea.clone()));
                        let db = data.a_act(g, &ABasisId::Mono(eb.clone()));
                        let mut rhs = Vec::new();
                        for (id, c) in da {
                            rhs.extend(
                                data.a_mul_ids(&id, &ABasisId::Mono(eb.clone()))
                                    .into_iter()
                                    .map(|(m, c2)| (m, c.mul(&c2))),
                            );
                        }
                        for (id, c) in db {
                            rhs.extend(
                                data.a_mul_ids(&ABasisId::Mono(ea.clone()), &id)
                                    .into_iter()
                                    .map(|(m, c2)| (m, c.mul(&c2))),
                            );
                        }
                        let rhs = crate::data::combine_comb(rhs);
                        if crate::data::combine_comb(lhs.clone()) != rhs {
                            report.push(
                                "action-leibniz",
                                format!("(v{a}, v{b}, gen {})", data.lie.names[g]),
                                format!("{rhs:?}"),
                                format!("{lhs:?}"),
                            );
                        }
                    }
                }
            }
        }
        _ => unreachable!("shape checked at construction"),
    }
    // Closure of K under multiplication.
    if let Some(alg) = data.finite_algebra() {
        let kctx = data.k_context().unwrap();
        for a in kctx.k_rows.iter() {
            for b in kctx.k_rows.iter() {
                let p = alg.mul_vectors(a, b);
                if !in_row_space(&kctx.k_rows, &p) {
                    report.push(
                        "subalgebra-closure",
                        format!("({}) * ({})", sv_text(a), sv_text(b)),
                        "element of K".into(),
                        sv_text(&p),
                    );
                }
            }
        }
    }
    report
}

/// Diamond-lemma confluence of the defining rewriting system. Every critical
/// triple must reduce to the same normal form whichever overlapping rule is
/// applied first:
///
/// * `y_i y_j y_k` for `i > j > k`,
/// * `y_i y_j a`  for `i > j` and `a` an `A`-basis label,
/// * `y_i a b`    for `A`-basis labels `a`, `b`.
pub fn validate_presentation(data: &RingData) -> ValidationReport {
    let mut report = ValidationReport::default();
    let d = data.gen_count();
    let a_labels = confluence_labels(data);
    let check = |report: &mut ValidationReport, witness: String, word: Vec<Atom>| {
        let left = resolve(data, &word, 0);
        let right = resolve(data, &word, 1);
        if left != right {
            report.push(
                "presentation-confluence",
                witness,
                left.render(data),
                right.render(data),
            );
        }
    };
    for i in 0..d {
        for j in 0..i {
            for k in 0..j {
                check(
                    &mut report,
                    format!(
                        "({}, {}, {})",
                        data.lie.names[i], data.lie.names[j], data.lie.names[k]
                    ),
                    vec![Atom::Gen(i), Atom::Gen(j), Atom::Gen(k)],
                );
            }
        }
    }
    for i in 0..d {
        for j in 0..i {
            for a in &a_labels {
                check(
                    &mut report,
                    format!(
                        "({}, {}, {})",
                        data.lie.names[i],
                        data.lie.names[j],
                        data.a_name(a)
                    ),
                    vec![Atom::Gen(i), Atom::Gen(j), Atom::Co(a.clone())],
                );
            }
        }
    }
    for i in 0..d {
        for a in &a_labels {
            for b in &a_labels {
                check(
                    &mut report,
                    format!("({}, {}, {})", data.lie.names[i], data.a_name(a), data.a_name(b)),
                    vec![Atom::Gen(i), Atom::Co(a.clone()), Atom::Co(b.clone())],
                );
            }
        }
    }
    report
}

/// `A`-basis labels to use in the mixed overlaps. Finite mode: the whole
/// basis. Symmetric mode: the variables (Leibniz extension makes monomial
/// overlaps consequences of the linear ones, but quadratic monomials are
/// cheap, so include them too).
fn confluence_labels(data: &RingData) -> Vec<ABasisId> {
    match &data.coeff {
        CoeffAlgebra::Finite(alg) => (0..alg.dim).map(ABasisId::Idx).collect(),
        CoeffAlgebra::Symmetric(sym) => {
            let mut out = Vec::new();
            for v in 0..sym.dim_v {
                let mut e = vec![0u32; sym.dim_v];
                e[v] = 1;
                out.push(ABasisId::Mono(e));
            }
            for v in 0..sym.dim_v {
                for w in v..sym.dim_v {
                    let mut e = vec![0u32; sym.dim_v];
                    e[v] += 1;
                    e[w] += 1;
                    out.push(ABasisId::Mono(e));
                }
            }
            out
        }
    }
}

/// Applies the rule at `pos` once, then fully normalizes the results.
fn resolve(data: &RingData, word: &[Atom], pos: usize) -> Element {
    let parts = rewrite_at(data, word, pos).expect("overlap position must be reducible");
    normal_form(data, parts)
}

/// Checks that a finite coefficient bimodule satisfies every defining
/// relation of `E` on both sides and that the two actions commute.
/// The REGULAR module is valid whenever the presentation is.
pub fn validate_bimodule(data: &RingData, module: &ModuleData) -> ValidationReport {
    let mut report = ValidationReport::default();
    let ModuleData::Finite(fm) = module else {
        return report;
    };
    let field = data.field;
    let m = fm.dim;
    let gens_a: Vec<ABasisId> = match &data.coeff {
        CoeffAlgebra::Finite(alg) => (0..alg.dim).map(ABasisId::Idx).collect(),
        CoeffAlgebra::Symmetric(sym) => (0..sym.dim_v)
            .map(|v| {
                let mut e = vec![0u32; sym.dim_v];
                e[v] = 1;
                ABasisId::Mono(e)
            })
            .collect(),
    };
    let ctx = ModuleCtx::new(data, module);
    let columns = |f: &dyn Fn(&crate::module::MValue) -> crate::module::MValue| -> Vec<SparseVector> {
        (0..m)
            .map(|i| match f(&ctx.basis_value(i)) {
                crate::module::MValue::Fin(v) => v,
                _ => unreachable!(),
            })
            .collect()
    };
    let mat_eq = |report: &mut ValidationReport,
                  check: &str,
                  witness: String,
                  lhs: &[SparseVector],
                  rhs: &[SparseVector]| {
        if lhs != rhs {
            report.push(
                check,
                witness,
                rhs.iter().map(sv_text).collect::<Vec<_>>().join("; "),
                lhs.iter().map(sv_text).collect::<Vec<_>>().join("; "),
            );
        }
    };

    // A-algebra relations: L is a homomorphism, R an antihomomorphism, unit
    // acts as identity on both sides.
    let unit = data.a_unit_id();
    let id_mat: Vec<SparseVector> = (0..m).map(|i| SparseVector::unit(i, field)).collect();
    mat_eq(
        &mut report,
        "bimodule-unit",
        "left unit".into(),
        &columns(&|v| ctx.left_by_id(&unit, v)),
        &id_mat,
    );
    mat_eq(
        &mut report,
        "bimodule-unit",
        "right unit".into(),
        &columns(&|v| ctx.right_by_id(&unit, v)),
        &id_mat,
    );
    for a in &gens_a {
        for b in &gens_a {
            let prod = crate::data::combine_comb(data.a_mul_ids(a, b));
            let lhs = columns(&|v| ctx.left_by_id(a, &ctx.left_by_id(b, v)));
            let rhs = columns(&|v| {
                let mut acc = ctx.zero();
                for (id, c) in &prod {
                    acc = acc.add(&ctx.left_by_id(id, v).scale(c));
                }
                acc
            });
            mat_eq(
                &mut report,
                "bimodule-left-multiplicative",
                format!("({}, {})", data.a_name(a), data.a_name(b)),
                &lhs,
                &rhs,
            );
            let lhs = columns(&|v| ctx.right_by_id(b, &ctx.right_by_id(a, v)));
            let rhs = columns(&|v| {
                let mut acc = ctx.zero();
                for (id, c) in &prod {
                    acc = acc.add(&ctx.right_by_id(id, v).scale(c));
                }
                acc
            });
            mat_eq(
                &mut report,
                "bimodule-right-multiplicative",
                format!("({}, {})", data.a_name(a), data.a_name(b)),
                &lhs,
                &rhs,
            );
        }
    }

    // Generator relations: y_i a - a y_i = a^{g_i} on both sides.
    for g in 0..data.gen_count() {
        for a in &gens_a {
            let act = data.a_act(g, a);
            let lhs = columns(&|v| {
                ctx.left_by_gen(g, &ctx.left_by_id(a, v))
                    .sub(&ctx.left_by_id(a, &ctx.left_by_gen(g, v)))
            });
            let rhs = columns(&|v| {
                let mut acc = ctx.zero();
                for (id, c) in &act {
                    acc = acc.add(&ctx.left_by_id(id, v).scale(c));
                }
                acc
            });
            mat_eq(
                &mut report,
                "bimodule-left-derivation-relation",
                format!("({}, {})", data.lie.names[g], data.a_name(a)),
                &lhs,
                &rhs,
            );
            let lhs = columns(&|v| {
                ctx.right_by_gen(g, &ctx.right_by_id(a, v))
                    .sub(&ctx.right_by_id(a, &ctx.right_by_gen(g, v)))
                    .neg()
            });
            let rhs = columns(&|v| {
                let mut acc = ctx.zero();
                for (id, c) in &act {
                    acc = acc.add(&ctx.right_by_id(id, v).scale(c));
                }
                acc
            });
            mat_eq(
                &mut report,
                "bimodule-right-derivation-relation",
                format!("({}, {})", data.lie.names[g], data.a_name(a)),
                &lhs,
                &rhs,
            );
        }
    }

    // Bracket relations: y_i y_j - y_j y_i = [g_i, g_j] + fhat_ij.
    for i in 0..data.gen_count() {
        for j in 0..data.gen_count() {
            let fhat = data.fhat_comb(i, j);
            let rhs = columns(&|v| {
                let mut acc = ctx.zero();
                for (k, c) in data.bracket(i, j).iter() {
                    acc = acc.add(&ctx.left_by_gen(*k, v).scale(c));
                }
                for (id, c) in &fhat {
                    acc = acc.add(&ctx.left_by_id(id, v).scale(c));
                }
                acc
            });
            let lhs = columns(&|v| {
                ctx.left_by_gen(i, &ctx.left_by_gen(j, v))
                    .sub(&ctx.left_by_gen(j, &ctx.left_by_gen(i, v)))
            });
            mat_eq(
                &mut report,
                "bimodule-left-bracket-relation",
                format!("({}, {})", data.lie.names[i], data.lie.names[j]),
                &lhs,
                &rhs,
            );
            let rhs = columns(&|v| {
                let mut acc = ctx.zero();
                for (k, c) in data.bracket(i, j).iter() {
                    acc = acc.add(&ctx.right_by_gen(*k, v).scale(c));
                }
                for (id, c) in &fhat {
                    acc = acc.add(&ctx.right_by_id(id, v).scale(c));
                }
                acc
            });
            let lhs = columns(&|v| {
                ctx.right_by_gen(j, &ctx.right_by_gen(i, v))
                    .sub(&ctx.right_by_gen(i, &ctx.right_by_gen(j, v)))
            });
            mat_eq(
                &mut report,
                "bimodule-right-bracket-relation",
                format!("({}, {})", data.lie.names[i], data.lie.names[j]),
                &lhs,
                &rhs,
            );
        }
    }

    // Left and right actions commute.
    let mut left_ops: Vec<(String, ActionMat)> = Vec::new();
    let mut right_ops: Vec<(String, ActionMat)> = Vec::new();
    for a in &gens_a {
        left_ops.push((data.a_name(a), columns(&|v| ctx.left_by_id(a, v))));
        right_ops.push((data.a_name(a), columns(&|v| ctx.right_by_id(a, v))));
    }
    for g in 0..data.gen_count() {
        left_ops.push((
            data.lie.names[g].clone(),
            columns(&|v| ctx.left_by_gen(g, v)),
        ));
        right_ops.push((
            data.lie.names[g].clone(),
            columns(&|v| ctx.right_by_gen(g, v)),
        ));
    }
    for (ln, lm) in &left_ops {
        for (rn, rm) in &right_ops {
            let lr: Vec<SparseVector> = (0..m).map(|i| apply_mat(lm, &rm[i])).collect();
            let rl: Vec<SparseVector> = (0..m).map(|i| apply_mat(rm, &lm[i])).collect();
            mat_eq(
                &mut report,
                "bimodule-actions-commute",
                format!("(left {ln}, right {rn})"),
                &lr,
                &rl,
            );
        }
    }
    report
}

/// Runs every validator that applies to the given data.
pub fn validate_all(data: &RingData, module: Option<&ModuleData>) -> ValidationReport {
    let mut report = validate_algebra(data);
    report.merge(validate_lie(data));
    report.merge(validate_action(data));
    report.merge(validate_presentation(data));
    if let Some(m) = module {
        report.merge(validate_bimodule(data, m));
    }
    report
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
    fn good_fixtures_validate() {
        for data in [
            presets::dual_numbers(q()),
            presets::heisenberg_sridharan(q()),
            presets::sl2(q()),
            presets::abelian(q(), 3),
            presets::weyl(q()),
            presets::sym_euler(q()),
        ] {
            let report = validate_all(&data, None);
            assert!(report.is_valid(), "unexpected issues: {:?}", report.issues);
        }
    }

    #[test]
    fn associativity_flags_broken_unit() {
        // 1 * e = 0 breaks the unit axiom.
        let field = q();
        let mut alg = presets::dual_numbers_algebra(field);
        alg.mul[0][1] = SparseVector::new();
        let data = crate::data::RingData::new(
            field,
            crate::data::CoeffAlgebra::Finite(alg),
            crate::data::LieAlgebra::abelian(0),
            crate::data::ActionData::Matrices(vec![]),
            crate::data::CocycleData::Finite(vec![]),
            crate::data::Subalgebra::ground_field(),
        )
        .unwrap();
        let report = validate_algebra(&data);
        assert!(report.issues.iter().any(|i| i.check.starts_with("algebra-unit")));
    }

    #[test]
    fn jacobi_failure_detected() {
        let field = q();
        let data = crate::data::RingData::new(
            field,
            crate::data::CoeffAlgebra::Finite(presets::scalar_algebra(field)),
            presets::bad_jacobi_lie(field),
            crate::data::ActionData::Matrices(vec![vec![SparseVector::new()]; 3]),
            crate::data::CocycleData::Finite(vec![vec![SparseVector::new(); 3]; 3]),
            crate::data::Subalgebra::ground_field(),
        )
        .unwrap();
        let report = validate_lie(&data);
        assert!(report.issues.iter().any(|i| i.check == "lie-jacobi"));
    }

    #[test]
    fn leibniz_failure_detected() {
        // e^x = 1 is not a derivation of k[e]/(e^2).
        let field = q();
        let alg = presets::dual_numbers_algebra(field);
        let action = crate::data::ActionData::Matrices(vec![vec![
            SparseVector::new(),
            SparseVector::unit(0, field),
        ]]);
        let data = crate::data::RingData::new(
            field,
            crate::data::CoeffAlgebra::Finite(alg),
            crate::data::LieAlgebra {
                dim: 1,
                names: vec!["x".into()],
                bracket: vec![vec![SparseVector::new()]],
            },
            action,
            crate::data::CocycleData::Finite(vec![vec![SparseVector::new()]]),
            crate::data::Subalgebra::ground_field(),
        )
        .unwrap();
        let report = validate_action(&data);
        assert!(report.issues.iter().any(|i| i.check == "action-leibniz"));
    }

    #[test]
    fn cocycle_defect_breaks_confluence() {
        let data = presets::bad_cocycle(q());
        let report = validate_presentation(&data);
        assert!(!report.is_valid());
        let issue = &report.issues[0];
        assert_eq!(issue.check, "presentation-confluence");
        assert!(issue.witness.contains("x") && issue.witness.contains("y") && issue.witness.contains("z"));
    }

    #[test]
    fn good_presentations_are_confluent() {
        assert!(validate_presentation(&presets::heisenberg_sridharan(q())).is_valid());
        assert!(validate_presentation(&presets::weyl(q())).is_valid());
        assert!(validate_presentation(&presets::dual_numbers(q())).is_valid());
    }

    #[test]
    fn bimodule_validation() {
        let data = presets::dual_numbers(q());
        let m = presets::augmentation_module(&data);
        assert!(validate_bimodule(&data, &m).is_valid());

        // All-zero generator action on M = k fails for the Sridharan fixture,
        // whose relation forces the unit to act by fhat(x,y) = 1.
        let srid = presets::heisenberg_sridharan(q());
        let bad = presets::augmentation_module(&srid);
        let report = validate_bimodule(&srid, &bad);
        assert!(report
            .issues
            .iter()
            .any(|i| i.check == "bimodule-left-bracket-relation"));
    }

    #[test]
    fn inner_module_is_valid() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5);
        for _ in 0..10 {
            let fx = presets::random_fixture(&mut rng, q());
            let report = validate_all(&fx.data, None);
            assert!(report.is_valid(), "{}: {:?}", fx.label, report.issues);
            for m in &fx.finite_modules {
                let report = validate_bimodule(&fx.data, m);
                assert!(report.is_valid(), "{} module: {:?}", fx.label, report.issues);
            }
        }
    }
}
