//! Batch CLI: parse a JSON problem description, validate the ring data, run
//! one command (validation, Betti numbers, truncated homology, products,
//! comparison checks, symmetric-mode drivers) and emit a deterministic JSON
//! report next to a human-readable summary.
//!
//! Exit codes: 0 success, 1 validation failure, 2 configuration error.

mod config;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use doring_core::betti::{betti_cohomology, betti_homology, truncated_betti};
use doring_core::comparison::{
    bar_cap_eval, bar_cup_eval, bar_to_small_chain, bar_to_small_cochain, chain_round_trip,
    cochain_round_trip, small_to_bar_chain, small_to_bar_cochain, BarCochain,
};
use doring_core::complexes::block_keys;
use doring_core::module::{MValue, ModuleCtx, ModuleData};
use doring_core::oracles::{
    bar_cohomology_betti, bar_homology_betti, ce_cohomology_betti, ce_homology_betti,
};
use doring_core::presets;
use doring_core::products::{cap, cup, unit_cochain};
use doring_core::symmetric::{
    star_cap, star_cup, wedge_cochain_from_word, wedge_from_word_eval, weyl_reports,
    word_chain_from_wedge, z_block_keys, ZChain,
};
use doring_core::validate::{validate_all, validate_bimodule};
use doring_core::RingData;

use config::{parse_config, resolve, Problem};
use report::{CheckLine, ProductLine, Report};

#[derive(Parser, Debug)]
#[command(
    name = "doring",
    about = "Exact Hochschild (co)homology of differential operator rings"
)]
struct Args {
    /// Path to the JSON problem configuration.
    #[arg(long)]
    config: std::path::PathBuf,
    /// One of: validate | cohomology | homology | cup | cap | compare | symmetric.
    #[arg(long)]
    command: String,
    /// Write the full JSON report to this path.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Seed for the randomized checks (overrides params.seed).
    #[arg(long)]
    seed: Option<u64>,
    /// Maximal total degree (overrides params.n_max).
    #[arg(long)]
    nmax: Option<usize>,
    /// Filtration cap; expands to the cap ladder {cap-4, cap-2, cap}.
    #[arg(long)]
    cap: Option<u32>,
    /// Field override: `rationals` or `fp:<p>`.
    #[arg(long)]
    field: Option<String>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}

fn run(args: &Args) -> Result<u8, String> {
    let started = Instant::now();
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| format!("config error: cannot read {}: {e}", args.config.display()))?;
    let mut cfg = parse_config(&text).map_err(|e| e.to_string())?;
    if let Some(field) = &args.field {
        cfg.field = field.clone();
    }
    let problem = resolve(&cfg).map_err(|e| e.to_string())?;
    let seed = args.seed.or(problem.params.seed).unwrap_or(0);
    let n_max = args.nmax.or(problem.params.n_max).unwrap_or(3);
    let caps: Vec<u32> = match args.cap {
        Some(cap) => {
            let mut v = vec![
                cap.saturating_sub(4).max(1),
                cap.saturating_sub(2).max(1),
                cap.max(1),
            ];
            v.dedup();
            v
        }
        None => problem.params.caps.clone().unwrap_or_else(|| vec![4, 6, 8]),
    };

    let mut rep = Report::new(&args.command, &cfg.field, seed);
    let code = match args.command.as_str() {
        "validate" => cmd_validate(&problem, &mut rep),
        "cohomology" => cmd_homology(&problem, &mut rep, n_max, &caps, true)?,
        "homology" => cmd_homology(&problem, &mut rep, n_max, &caps, false)?,
        "cup" => cmd_cup(&problem, &mut rep, seed)?,
        "cap" => cmd_cap(&problem, &mut rep, seed)?,
        "compare" => cmd_compare(&problem, &mut rep, seed, n_max)?,
        "symmetric" => cmd_symmetric(&problem, &mut rep, seed, n_max, &caps)?,
        other => return Err(format!("config error: unknown command `{other}`")),
    };
    rep.exit_code = code as i32;

    // Human-readable summary.
    println!(
        "doring {} on {} (field {}, seed {seed})",
        args.command,
        args.config.display(),
        cfg.field
    );
    if let Some(v) = &rep.validation {
        println!(
            "  validation: {} ({} issue(s))",
            if v.valid { "ok" } else { "FAILED" },
            v.issues.len()
        );
        for issue in v.issues.iter().take(5) {
            println!(
                "    {} at {}: expected {}, got {}",
                issue.check, issue.witness, issue.expected, issue.got
            );
        }
    }
    if let Some(b) = &rep.betti {
        println!("  betti: {b:?}");
    }
    for (label, t) in [
        ("cohomology", &rep.truncated),
        ("homology", &rep.truncated_homology),
    ] {
        if let Some(t) = t {
            let bounds: Vec<usize> = t.degrees.iter().map(|d| d.lower_bound).collect();
            let stable: Vec<bool> = t.degrees.iter().map(|d| d.stable).collect();
            println!(
                "  truncated {label}: lower bounds {bounds:?}, stable {stable:?} (shift {})",
                t.shift
            );
        }
    }
    if let Some(checks) = &rep.checks {
        for c in checks {
            println!(
                "  check {}: {} {}",
                c.name,
                if c.pass { "PASS" } else { "FAIL" },
                c.detail
            );
        }
    }
    if let Some(p) = &rep.products {
        println!("  product table: {} line(s)", p.len());
    }
    println!("  exit code {code}, elapsed {:.2?}", started.elapsed());

    if let Some(path) = &args.out {
        std::fs::write(path, rep.to_json())
            .map_err(|e| format!("config error: cannot write {}: {e}", path.display()))?;
        println!("  report written to {}", path.display());
    }
    Ok(code)
}

fn validate_problem(problem: &Problem) -> doring_core::validate::ValidationReport {
    let mut report = validate_all(&problem.data, None);
    report.merge(validate_bimodule(&problem.data, &problem.module));
    report
}

fn cmd_validate(problem: &Problem, rep: &mut Report) -> u8 {
    let vr = validate_problem(problem);
    let ok = vr.is_valid();
    rep.validation = Some(report::validation_out(&vr));
    u8::from(!ok)
}

fn cmd_homology(
    problem: &Problem,
    rep: &mut Report,
    n_max: usize,
    caps: &[u32],
    cohomology: bool,
) -> Result<u8, String> {
    let vr = validate_problem(problem);
    rep.validation = Some(report::validation_out(&vr));
    if !vr.is_valid() {
        return Ok(1);
    }
    rep.n_max = Some(n_max);
    match &problem.module {
        ModuleData::Finite(_) => {
            let betti = if cohomology {
                betti_cohomology(&problem.data, &problem.module, n_max)?
            } else {
                betti_homology(&problem.data, &problem.module, n_max)?
            };
            rep.betti = Some(betti);
        }
        ModuleData::Regular => {
            rep.caps = Some(caps.to_vec());
            let tr = if problem.data.is_symmetric() {
                let (coh, hom) = weyl_reports(&problem.data, n_max, caps)?;
                if cohomology {
                    coh
                } else {
                    hom
                }
            } else {
                truncated_betti(&problem.data, n_max, caps, cohomology)?
            };
            rep.truncated = Some(report::truncated_out(&tr));
        }
    }
    Ok(0)
}

fn render_value(v: &MValue, data: &RingData) -> String {
    match v {
        MValue::Reg(e) => e.render(data),
        MValue::Fin(vec) => {
            let parts: Vec<String> = vec.iter().map(|(i, c)| format!("{c}*m{i}")).collect();
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ")
            }
        }
    }
}

fn render_key(key: &doring_core::complexes::Key, data: &RingData) -> String {
    let word: Vec<String> = key.0.iter().map(|a| data.a_name(a)).collect();
    let wedge: Vec<String> = key.1.iter().map(|i| data.lie.names[*i].clone()).collect();
    format!("({})|({})", word.join(","), wedge.join("^"))
}

fn require_finite_algebra(problem: &Problem, what: &str) -> Result<(), String> {
    if problem.data.is_symmetric() {
        return Err(format!(
            "config error: the {what} command works on finite coefficient algebras; use `symmetric` for S(V) mode"
        ));
    }
    Ok(())
}

fn cmd_cup(problem: &Problem, rep: &mut Report, seed: u64) -> Result<u8, String> {
    require_finite_algebra(problem, "cup")?;
    let vr = validate_problem(problem);
    rep.validation = Some(report::validation_out(&vr));
    if !vr.is_valid() {
        return Ok(1);
    }
    let data = &problem.data;
    let module = ModuleData::Regular;
    let ctx = ModuleCtx::new(data, &module);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = unit_cochain(data);
    let mut lines = Vec::new();
    let mut checks = Vec::new();
    let degrees = [(0usize, 0usize), (1, 0), (0, 1), (1, 1)];
    let mut all_ok = true;
    for &(r1, s1) in &degrees {
        for &(r2, s2) in &degrees {
            if s1 + s2 > data.gen_count() {
                continue;
            }
            let phi = presets::random_cochain(&mut rng, data, r1, s1, 1);
            let psi = presets::random_cochain(&mut rng, data, r2, s2, 1);
            let prod = cup(&phi, &psi, data).map_err(|e| e.to_string())?;
            for (key, value) in prod.table.iter() {
                lines.push(ProductLine {
                    left: format!("phi({r1},{s1})"),
                    right: format!("psi({r2},{s2})"),
                    bidegree: render_key(key, data),
                    product: render_value(value, data),
                });
            }
            let unit_ok = cup(&one, &phi, data).map_err(|e| e.to_string())? == phi
                && cup(&phi, &one, data).map_err(|e| e.to_string())? == phi;
            let bphi = small_to_bar_cochain(&phi, data);
            let bpsi = small_to_bar_cochain(&psi, data);
            let barcup = BarCochain::new(r1 + s1 + r2 + s2, |c: &ModuleCtx, t: &_| {
                bar_cup_eval(&bphi, &bpsi, c, t)
            });
            let mut oracle_ok = true;
            for key in block_keys(data, r1 + r2, s1 + s2) {
                if bar_to_small_cochain(&barcup, &ctx, &key.0, &key.1) != prod.eval(&ctx, &key) {
                    oracle_ok = false;
                }
            }
            all_ok &= unit_ok && oracle_ok;
            checks.push(CheckLine {
                name: format!("cup ({r1},{s1})x({r2},{s2})"),
                pass: unit_ok && oracle_ok,
                detail: "unit law + bar-level oracle".into(),
            });
        }
    }
    rep.products = Some(lines);
    rep.checks = Some(checks);
    Ok(u8::from(!all_ok))
}

fn cmd_cap(problem: &Problem, rep: &mut Report, seed: u64) -> Result<u8, String> {
    require_finite_algebra(problem, "cap")?;
    let vr = validate_problem(problem);
    rep.validation = Some(report::validation_out(&vr));
    if !vr.is_valid() {
        return Ok(1);
    }
    let data = &problem.data;
    let module = ModuleData::Regular;
    let ctx = ModuleCtx::new(data, &module);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = unit_cochain(data);
    let mut lines = Vec::new();
    let mut checks = Vec::new();
    let mut all_ok = true;
    for (r, s, rq, sq) in [
        (1usize, 1usize, 0usize, 1usize),
        (1, 1, 1, 0),
        (2, 1, 1, 1),
        (1, 0, 1, 0),
    ] {
        if s > data.gen_count() || sq > s {
            continue;
        }
        let c = presets::random_chain(&mut rng, data, r, s, 1);
        let psi = presets::random_cochain(&mut rng, data, rq, sq, 1);
        let capped = cap(&c, &psi, &ctx).map_err(|e| e.to_string())?;
        for (key, v) in &capped.table {
            lines.push(ProductLine {
                left: format!("chain({r},{s})"),
                right: format!("psi({rq},{sq})"),
                bidegree: render_key(key, data),
                product: render_value(v, data),
            });
        }
        let unit_ok = cap(&c, &one, &ctx).map_err(|e| e.to_string())? == c;
        let bpsi = small_to_bar_cochain(&psi, data);
        let mut capped_terms = Vec::new();
        for term in small_to_bar_chain(&c, &ctx) {
            capped_terms.push(bar_cap_eval(&term, &bpsi, &ctx).map_err(|e| e.to_string())?);
        }
        let blocks = bar_to_small_chain(&capped_terms, &ctx);
        let mut oracle_ok = true;
        for (rs, block) in &blocks {
            if *rs == (r - rq, s - sq) {
                oracle_ok &= block == &capped;
            } else {
                oracle_ok &= block.is_zero();
            }
        }
        all_ok &= unit_ok && oracle_ok;
        checks.push(CheckLine {
            name: format!("cap ({r},{s}).({rq},{sq})"),
            pass: unit_ok && oracle_ok,
            detail: "unit law + bar-level oracle".into(),
        });
    }
    rep.products = Some(lines);
    rep.checks = Some(checks);
    Ok(u8::from(!all_ok))
}

fn cmd_compare(
    problem: &Problem,
    rep: &mut Report,
    seed: u64,
    n_max: usize,
) -> Result<u8, String> {
    let vr = validate_problem(problem);
    rep.validation = Some(report::validation_out(&vr));
    if !vr.is_valid() {
        return Ok(1);
    }
    let data = &problem.data;
    let mut checks = Vec::new();
    let mut all_ok = true;
    if data.is_symmetric() {
        checks.push(CheckLine {
            name: "comparison".into(),
            pass: true,
            detail: "symmetric mode: use the `symmetric` command for the wedge-complex checks"
                .into(),
        });
        rep.checks = Some(checks);
        return Ok(0);
    }
    let module = ModuleData::Regular;
    let ctx = ModuleCtx::new(data, &module);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Round trips, r+s <= 3.
    let mut count = 0usize;
    let mut rt_ok = true;
    for n in 0..=3usize {
        for s in 0..=n.min(data.gen_count()) {
            let r = n - s;
            for _ in 0..5 {
                let phi = presets::random_cochain(&mut rng, data, r, s, 2);
                rt_ok &= cochain_round_trip(&phi, &ctx) == phi;
                let c = presets::random_chain(&mut rng, data, r, s, 2);
                for (rs, block) in chain_round_trip(&c, &ctx) {
                    if rs == (r, s) {
                        rt_ok &= block == c;
                    } else {
                        rt_ok &= block.is_zero();
                    }
                }
                count += 2;
            }
        }
    }
    checks.push(CheckLine {
        name: "round-trips".into(),
        pass: rt_ok,
        detail: format!("{count} random (co)chains, r+s <= 3"),
    });
    all_ok &= rt_ok;
    // Cup oracle.
    let mut prod_ok = true;
    for _ in 0..5 {
        let s1 = 1.min(data.gen_count());
        let phi = presets::random_cochain(&mut rng, data, 0, s1, 1);
        let psi = presets::random_cochain(&mut rng, data, 1, 0, 1);
        let prod = cup(&phi, &psi, data).map_err(|e| e.to_string())?;
        let bphi = small_to_bar_cochain(&phi, data);
        let bpsi = small_to_bar_cochain(&psi, data);
        let deg = phi.r + phi.s + psi.r + psi.s;
        let barcup = BarCochain::new(deg, |c: &ModuleCtx, t: &_| bar_cup_eval(&bphi, &bpsi, c, t));
        for key in block_keys(data, phi.r + psi.r, phi.s + psi.s) {
            prod_ok &= bar_to_small_cochain(&barcup, &ctx, &key.0, &key.1) == prod.eval(&ctx, &key);
        }
    }
    checks.push(CheckLine {
        name: "cup-oracle".into(),
        pass: prod_ok,
        detail: "bar-level product transported back agrees with the small-complex product".into(),
    });
    all_ok &= prod_ok;
    // Reduction comparisons where the shape allows them.
    if let Some(alg) = data.finite_algebra() {
        let d = data.gen_count();
        let trivial_cocycle =
            (0..d).all(|i| (0..d).all(|j| data.fhat_comb(i, j).is_empty()));
        if alg.dim == 1 && trivial_cocycle && d > 0 {
            if let ModuleData::Finite(_) = &problem.module {
                let coh = betti_cohomology(data, &problem.module, n_max)?;
                let hom = betti_homology(data, &problem.module, n_max)?;
                let pass = coh == ce_cohomology_betti(data, n_max)
                    && hom == ce_homology_betti(data, n_max);
                checks.push(CheckLine {
                    name: "lie-reduction".into(),
                    pass,
                    detail: format!(
                        "small-complex Betti {coh:?} vs independent wedge-complex oracle"
                    ),
                });
                all_ok &= pass;
            }
        }
        if d == 0 {
            if let ModuleData::Finite(_) = &problem.module {
                let coh = betti_cohomology(data, &problem.module, n_max)?;
                let hom = betti_homology(data, &problem.module, n_max)?;
                let pass = coh == bar_cohomology_betti(data, &problem.module, n_max)
                    && hom == bar_homology_betti(data, &problem.module, n_max);
                checks.push(CheckLine {
                    name: "bar-reduction".into(),
                    pass,
                    detail: format!("small-complex Betti {coh:?} vs independent bar oracle"),
                });
                all_ok &= pass;
            }
        }
    }
    rep.checks = Some(checks);
    rep.n_max = Some(n_max);
    Ok(u8::from(!all_ok))
}

fn cmd_symmetric(
    problem: &Problem,
    rep: &mut Report,
    seed: u64,
    n_max: usize,
    caps: &[u32],
) -> Result<u8, String> {
    if !problem.data.is_symmetric() {
        return Err("config error: the symmetric command needs algebra.kind = symmetric".into());
    }
    let vr = validate_problem(problem);
    rep.validation = Some(report::validation_out(&vr));
    if !vr.is_valid() {
        return Ok(1);
    }
    let data = &problem.data;
    rep.n_max = Some(n_max);
    rep.caps = Some(caps.to_vec());
    let (coh, hom) = weyl_reports(data, n_max, caps)?;
    rep.truncated = Some(report::truncated_out(&coh));
    rep.truncated_homology = Some(report::truncated_out(&hom));
    // Seeded spot checks of the comparison identities.
    let module = ModuleData::Regular;
    let ctx = ModuleCtx::new(data, &module);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim_v = data.symmetric_algebra().unwrap().dim_v;
    let d = data.gen_count();
    let mut ok_f1 = true;
    let mut ok_f2 = true;
    if dim_v >= 1 && d >= 1 {
        for _ in 0..5 {
            let phi = presets::random_word_cochain(&mut rng, data, 1, 0, 1);
            let psi = presets::random_word_cochain(&mut rng, data, 0, 1, 1);
            let rhs = star_cup(
                &wedge_cochain_from_word(&phi, &ctx),
                &wedge_cochain_from_word(&psi, &ctx),
                data,
            )
            .map_err(|e| e.to_string())?;
            for key in z_block_keys(data, 1, 1) {
                let lhs = wedge_from_word_eval(
                    data,
                    1,
                    &mut |word| {
                        MValue::Reg(
                            doring_core::products::cup_eval(
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
                ok_f1 &= lhs == rhs.eval(&ctx, &key);
            }
            let mut z = ZChain::zero(1, 1);
            for key in z_block_keys(data, 1, 1) {
                z.add_value(key, MValue::Reg(presets::random_element(&mut rng, data, 2)));
            }
            let lhs =
                cap(&word_chain_from_wedge(&z, &ctx), &phi, &ctx).map_err(|e| e.to_string())?;
            let rhs = word_chain_from_wedge(
                &star_cap(&z, &wedge_cochain_from_word(&phi, &ctx), &ctx)
                    .map_err(|e| e.to_string())?,
                &ctx,
            );
            ok_f2 &= lhs == rhs;
        }
    }
    let checks = vec![
        CheckLine {
            name: "cup-transport".into(),
            pass: ok_f1,
            detail: "antisymmetrization carries the word cup to the wedge cup".into(),
        },
        CheckLine {
            name: "cap-transport".into(),
            pass: ok_f2,
            detail: "antisymmetrization carries the word cap to the wedge cap".into(),
        },
    ];
    let all_ok = ok_f1 && ok_f2;
    rep.checks = Some(checks);
    Ok(u8::from(!all_ok))
}

#[cfg(test)]
mod tests {
    // Command logic is covered by the integration tests in tests/cli.rs.
}
