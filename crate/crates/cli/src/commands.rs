use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use serde_json::{json, Value};

use dualskel::duality::{
    dualization_report, fm_grading_map, is_self_dual, m_skeleton, regression_suite, DualPair, GradedDims, LabelGroups,
    RegressionItem,
};
use dualskel::gtau::{component_group, verify_dual_extended_group, GeneralEmbedding};
use dualskel::heis::{
    a_model, absolve, irreducibility, maslov_scalar, partition_vector, HeisenbergGroup, Splitting,
};
use dualskel::registry::{resolve, NamedGroup};
use dualskel::rootdata::{
    algebra_label, center, langlands_dual, parse_algebra, root_datum_isomorphic, RootDatum, SimpleType,
};
use dualskel::symp::{
    all_subgroups, annihilator, enumerate_lagrangians, is_lagrangian, quotient_dual_matches_annihilator, Subgroup,
    SymplecticModule,
};
use dualskel::weylfix::{is_fixed, j_global_sections, root_orbit, torus_weyl_invariants};
use dualskel::zmod::{FinAbGroup, Lattice};

use crate::report::Report;
use crate::{parse, Cli, Command, GroupArg, HeisMode};

/// Invalid input; reported on standard error with exit code 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn label(g: &FinAbGroup) -> String {
    if g.is_trivial() {
        "trivial".into()
    } else {
        g.to_string()
    }
}

fn form_of(d: &RootDatum) -> &'static str {
    match (d.is_semisimple(), d.is_simply_connected(), d.is_adjoint()) {
        (false, _, _) => "reductive",
        (true, true, true) => "simply connected and adjoint",
        (true, true, false) => "simply connected",
        (true, false, true) => "adjoint",
        _ => "intermediate",
    }
}

fn algebra(cli: &Cli) -> Result<Vec<SimpleType>> {
    let a = cli.algebra.as_deref().ok_or_else(|| CliError("--algebra is required".into()))?;
    Ok(parse_algebra(a)?)
}

fn genus(cli: &Cli) -> Result<usize> {
    match cli.genus {
        Some(0) => Err(CliError("--genus must be at least 1".into())),
        Some(g) => Ok(g),
        None => Err(CliError("--genus is required".into())),
    }
}

fn gamma_rows(cli: &Cli) -> Result<Vec<Vec<u64>>> {
    Ok(parse::matrix(cli.gamma.as_deref().unwrap_or(""))?)
}

fn subgroup(m: &SymplecticModule, rows: &[Vec<u64>]) -> Result<Subgroup> {
    Ok(m.subgroup(rows)?)
}

fn module_inputs(cli: &Cli) -> Result<(Vec<SimpleType>, usize, SymplecticModule, Value)> {
    let types = algebra(cli)?;
    let g = genus(cli)?;
    let m = SymplecticModule::for_algebra(&types, g)?;
    let inputs = json!({"algebra": algebra_label(&types), "genus": g, "moduli": m.moduli()});
    Ok((types, g, m, inputs))
}

fn embeddings(g: &NamedGroup, all: bool) -> Result<Vec<GeneralEmbedding>> {
    if let Some(ext) = &g.extended {
        return Ok(vec![ext.tau.clone()]);
    }
    let z = center(&g.simply_connected)?;
    Ok(if all { GeneralEmbedding::all(&z) } else { vec![GeneralEmbedding::standard(z)] })
}

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Center(g) => cmd_center(g),
        Command::Dual(g) => cmd_dual(g),
        Command::GtauVerify { group, all_embeddings } => cmd_gtau_verify(group, *all_embeddings),
        Command::Components { group, all_embeddings } => cmd_components(group, *all_embeddings),
        Command::WeylInvariants(g) => cmd_weyl_invariants(g),
        Command::JSections { group, ramified } => cmd_j_sections(group, ramified),
        Command::Lagrangians { count_only } => cmd_lagrangians(cli, *count_only),
        Command::Annihilator => cmd_annihilator(cli),
        Command::SelfDual => cmd_self_dual(cli),
        Command::Dualize => cmd_dualize(cli),
        Command::Heisenberg { mode, coefficient, lagrangian, l1, l2, l3 } => {
            cmd_heisenberg(cli, *mode, coefficient.as_deref(), [lagrangian, l1, l2, l3])
        }
        Command::FmMap { dims } => cmd_fm_map(cli, dims),
        Command::Regressions { corrupt_pairing } => cmd_regressions(cli, *corrupt_pairing),
    }
}

fn group_inputs(g: &NamedGroup) -> Value {
    json!({"group": g.name, "algebra": algebra_label(&g.types), "form": g.form})
}

fn cmd_center(arg: &GroupArg) -> Result<Report> {
    let g = resolve(arg.name()?)?;
    let mut r = Report::new("center", group_inputs(&g));
    if let Some(ext) = &g.extended {
        let rank = g.datum.rank() - g.datum.semisimple_rank();
        r.outputs = json!({"center": format!("torus of rank {rank}"), "order": null});
        r.check("center_is_torus", ext.center_is_torus(), json!({"torus_rank": rank}));
        return Ok(r);
    }
    let z = center(&g.datum)?;
    let generators: Vec<Vec<String>> = z.generators.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
    r.outputs = json!({
        "center": label(&z.group),
        "order": z.group.order_u64(),
        "invariant_factors": z.group.invariant_factors().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "coweight_generators": generators,
    });
    Ok(r)
}

fn cmd_dual(arg: &GroupArg) -> Result<Report> {
    let g = resolve(arg.name()?)?;
    let d = langlands_dual(&g.datum);
    let mut r = Report::new("dual", group_inputs(&g));
    let mut outputs = json!({
        "dual_algebra": algebra_label(d.types()),
        "dual_form": form_of(&d),
        "dual_rank": d.rank(),
    });
    let back = root_datum_isomorphic(&langlands_dual(&d), &g.datum);
    r.check("double_dual_is_original", back.is_some(), json!({"isomorphism_found": back.is_some()}));
    if g.datum.is_semisimple() {
        let zd = center(&d)?;
        let (pi1, _) = Lattice::quotient_coordinates(g.datum.cochar_lattice(), &g.datum.coroot_lattice())?;
        outputs["dual_center"] = json!(label(&zd.group));
        r.check(
            "center_of_dual_is_fundamental_group",
            zd.group == pi1,
            json!({"dual_center": zd.group.to_string(), "fundamental_group": pi1.to_string()}),
        );
    }
    r.outputs = outputs;
    Ok(r)
}

fn cmd_gtau_verify(arg: &GroupArg, all: bool) -> Result<Report> {
    let g = resolve(arg.name()?)?;
    let mut inputs = group_inputs(&g);
    inputs["all_embeddings"] = json!(all);
    let mut r = Report::new("gtau-verify", inputs);
    let mut cases = Vec::new();
    for (i, tau) in embeddings(&g, all)?.iter().enumerate() {
        let rep = verify_dual_extended_group(&g.simply_connected, tau)?;
        r.check(
            &format!("embedding_{i}_dual_is_extended_dual"),
            rep.passed(),
            json!({"failure": rep.failure_certificate, "isomorphism": rep.isomorphism}),
        );
        r.extend(rep.checks.iter().cloned().map(|mut c| {
            c.name = format!("embedding_{i}_{}", c.name);
            c
        }));
        cases.push(json!({"tau_matrix": rep.tau_matrix, "convention": rep.convention, "passed": rep.passed()}));
    }
    r.outputs = json!({"base": algebra_label(&g.types), "embeddings": cases});
    Ok(r)
}

fn cmd_components(arg: &GroupArg, all: bool) -> Result<Report> {
    let g = resolve(arg.name()?)?;
    let mut r = Report::new("components", group_inputs(&g));
    let z = center(&g.simply_connected)?;
    let mut cases = Vec::new();
    for (i, tau) in embeddings(&g, all)?.iter().enumerate() {
        let (pass, comp) = match component_group(tau) {
            Ok((q, _)) => (q == z.group, label(&q)),
            Err(e) => (false, e.to_string()),
        };
        r.check(&format!("embedding_{i}_components_are_center"), pass, json!({"components": comp, "center": label(&z.group)}));
        cases.push(json!({"tau_matrix": tau.matrix, "components": comp}));
    }
    r.outputs = json!({"center": label(&z.group), "embeddings": cases});
    Ok(r)
}

fn cmd_weyl_invariants(arg: &GroupArg) -> Result<Report> {
    let g = resolve(arg.name()?)?;
    let mut r = Report::new("weyl-invariants", group_inputs(&g));
    let inv = torus_weyl_invariants(&g.datum)?;
    let points = inv.elements();
    let mut fixed = true;
    for p in &points {
        for a in 0..g.datum.semisimple_rank() {
            fixed &= is_fixed(p, a)?;
        }
    }
    r.check("points_are_fixed_by_simple_reflections", fixed, json!({"points": points.len()}));
    r.outputs = json!({
        "group": label(&inv.group),
        "order": inv.order(),
        "points": points.iter().map(|p| p.coords.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    Ok(r)
}

fn cmd_j_sections(arg: &GroupArg, ramified: &str) -> Result<Report> {
    let g = resolve(arg.name()?)?;
    let d = &g.datum;
    let simple: Vec<usize> = (0..d.semisimple_rank()).collect();
    let ram: Vec<usize> = match ramified {
        "all" => (0..d.num_roots()).collect(),
        "none" => vec![],
        s => {
            let k: usize = s
                .strip_prefix("orbit:")
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| CliError(format!("bad --ramified {s:?}; expected all, none or orbit:<root>")))?;
            if k >= d.num_roots() {
                return Err(CliError(format!("root index {k} out of range")));
            }
            root_orbit(d, k, &simple)
        }
    };
    let mut inputs = group_inputs(&g);
    inputs["ramified"] = json!(ram);
    let mut r = Report::new("j-sections", inputs);
    let j = j_global_sections(d, &ram, None)?;
    if let Some(c) = &j.cover_comparison {
        r.check("sections_are_image_of_cover_invariants", c.image_matches && c.orders_match, serde_json::to_value(c)?);
    }
    r.outputs = json!({
        "sections": label(&j.group),
        "order": j.group.order_u64(),
        "invariants": label(&j.invariants.group),
        "elements": j.elements.iter().map(|p| p.coords.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    Ok(r)
}

fn cmd_lagrangians(cli: &Cli, count_only: bool) -> Result<Report> {
    let (_, _, m, mut inputs) = module_inputs(cli)?;
    inputs["cap"] = json!(cli.cap);
    let mut r = Report::new("lagrangians", inputs);
    let ls = enumerate_lagrangians(&m, cli.cap)?;
    let ok = ls.iter().all(|l| is_lagrangian(&m, l) && l.order() * l.order() == m.order());
    r.check("all_are_lagrangian", ok, json!({"count": ls.len()}));
    let mut out = json!({"count": ls.len(), "carrier_order": m.order()});
    if !count_only {
        out["lagrangians"] = json!(ls.iter().map(|l| &l.generators).collect::<Vec<_>>());
    }
    r.outputs = out;
    Ok(r)
}

fn cmd_annihilator(cli: &Cli) -> Result<Report> {
    let (_, _, m, mut inputs) = module_inputs(cli)?;
    let gamma = subgroup(&m, &gamma_rows(cli)?)?;
    inputs["gamma"] = json!(gamma.generators);
    let mut r = Report::new("annihilator", inputs);
    let ann = annihilator(&m, &gamma);
    let back = annihilator(&m, &ann);
    r.check("double_annihilator_is_gamma", back == gamma, json!({"order": back.order()}));
    r.check("orders_multiply_to_carrier", gamma.order() * ann.order() == m.order(), json!({"carrier": m.order()}));
    r.check("annihilator_is_dual_of_quotient", quotient_dual_matches_annihilator(&m, &gamma), json!({}));
    r.outputs = json!({
        "gamma_order": gamma.order(),
        "annihilator": ann.generators,
        "annihilator_order": ann.order(),
        "annihilator_structure": label(&ann.structure(&m)),
        "lagrangian": is_lagrangian(&m, &gamma),
    });
    Ok(r)
}

fn cmd_self_dual(cli: &Cli) -> Result<Report> {
    let types = algebra(cli)?;
    let g = genus(cli)?;
    let rows = gamma_rows(cli)?;
    let s = is_self_dual(&types, g, &rows)?;
    let r = Report::new("self-dual", json!({"algebra": algebra_label(&types), "genus": g, "gamma": rows}));
    Ok(Report { outputs: json!({"self_dual": s.self_dual, "criteria": s.checks}), ..r })
}

fn cmd_dualize(cli: &Cli) -> Result<Report> {
    let types = algebra(cli)?;
    let g = genus(cli)?;
    let rows = gamma_rows(cli)?;
    let s = m_skeleton(&types, g, &rows)?;
    let rep = dualization_report(&s)?;
    let mut r = Report::new("dualize", json!({"algebra": algebra_label(&types), "genus": g, "gamma": s.gamma.generators}));
    r.extend(rep.swap_checks.clone());
    r.outputs = json!({
        "input": skeleton_summary(&rep.input),
        "dual": skeleton_summary(&rep.dual),
        "swap_checks": rep.swap_checks,
        "certificate": rep.certificate,
    });
    Ok(r)
}

fn skeleton_summary(s: &dualskel::duality::StackySkeleton) -> Value {
    json!({
        "algebra": algebra_label(&s.algebra),
        "genus": s.genus,
        "gamma": s.gamma.generators,
        "gamma_order": s.gamma.order(),
        "prym_kernel": label(&s.prym_kernel),
        "pi0": label(&s.pi0),
        "band": label(&s.band),
    })
}

fn cmd_heisenberg(cli: &Cli, mode: HeisMode, coefficient: Option<&str>, ls: [&Option<String>; 4]) -> Result<Report> {
    let g = genus(cli)?;
    let (module, coeff) = match coefficient {
        Some(c) => {
            let (a, pairing) = parse::coefficient(c)?;
            (SymplecticModule::new(a.clone(), pairing, g)?, label(&a))
        }
        None => {
            let types = algebra(cli)?;
            (SymplecticModule::for_algebra(&types, g)?, format!("center of {}", algebra_label(&types)))
        }
    };
    let h = HeisenbergGroup::new(module)?;
    let mode_name = format!("{mode:?}").to_lowercase();
    let mut inputs = json!({"coefficient": coeff, "genus": g, "mode": mode_name, "moduli": h.module.moduli()});
    let lag = |s: &Option<String>, flag: &str| -> Result<Subgroup> {
        let rows = parse::matrix(s.as_deref().ok_or_else(|| CliError(format!("--{flag} is required")))?)?;
        subgroup(&h.module, &rows)
    };
    let mut r = Report::new("heisenberg", Value::Null);
    r.check("commutation_relations", h.commutation_relations_hold(), json!({"base_order": h.order_of_base()}));
    match mode {
        HeisMode::Partition => {
            let rep = a_model(&h)?;
            let irr = irreducibility(&h, &rep);
            r.check("a_model_is_irreducible", irr.irreducible(), serde_json::to_value(&irr)?);
            r.outputs = serde_json::to_value(partition_vector(&h)?)?;
        }
        HeisMode::Absolve => {
            let l = lag(ls[0], "lagrangian")?;
            inputs["lagrangian"] = json!(l.generators);
            let v = partition_vector(&h)?;
            let a = absolve(&h, &v, &Splitting::canonical(&h, &l)?)?;
            r.outputs = serde_json::to_value(&a)?;
        }
        HeisMode::Maslov => {
            let subs = [lag(ls[1], "l1")?, lag(ls[2], "l2")?, lag(ls[3], "l3")?];
            inputs["lagrangians"] = json!(subs.iter().map(|s| &s.generators).collect::<Vec<_>>());
            let sp: Vec<Splitting> = subs.iter().map(|l| Splitting::canonical(&h, l)).collect::<std::result::Result<_, _>>()?;
            let c = maslov_scalar(&h, &sp[0], &sp[1], &sp[2])?;
            r.check("scalar_has_unit_modulus", (c.norm() - 1.0).abs() < 1e-9, json!({"modulus": c.norm()}));
            r.outputs = json!({"scalar": [c.re, c.im], "argument_over_pi": c.arg() / std::f64::consts::PI});
        }
    }
    r.inputs = inputs;
    Ok(r)
}

fn cmd_fm_map(cli: &Cli, dims: &str) -> Result<Report> {
    let triples = parse::graded(dims)?;
    let d: GradedDims = triples.clone().into();
    let image = fm_grading_map(&d);
    let mut fourth = d.clone();
    for _ in 0..4 {
        fourth = fm_grading_map(&fourth);
    }
    let mut inputs = json!({"dims": triples});
    let mut r = Report::new("fm-map", Value::Null);
    r.check("rotation_has_order_four", fourth == d, json!({}));
    let mut outputs = json!({"image": Vec::<(i64, i64, u64)>::from(image)});
    if cli.algebra.is_some() {
        let types = algebra(cli)?;
        inputs["algebra"] = json!(algebra_label(&types));
        let labels = LabelGroups::of_algebra(&types)?;
        let dual = labels.dual();
        outputs["labels"] = json!({"alpha": label(&labels.alpha), "beta": label(&labels.beta)});
        outputs["dual_labels"] = json!({"alpha": label(&dual.alpha), "beta": label(&dual.beta)});
        r.check(
            "label_groups_exchange",
            dual.alpha == labels.beta && dual.beta == labels.alpha,
            json!({"alpha": labels.alpha.to_string(), "beta": labels.beta.to_string()}),
        );
    }
    r.inputs = inputs;
    r.outputs = outputs;
    Ok(r)
}

fn cmd_regressions(cli: &Cli, corrupt: bool) -> Result<Report> {
    let suite = regression_suite(&RegressionItem::ALL, corrupt);
    let mut r = Report::new(
        "regressions",
        json!({"seed": cli.seed, "items": RegressionItem::ALL, "corrupt_pairing": corrupt}),
    );
    for res in &suite.results {
        r.check(&format!("{:?}", res.item), res.pass, json!({"failures": res.failures}));
    }
    // seeded sample of A3 skeletons at genus 2, dualized twice
    let types = parse_algebra("A3")?;
    let pair = DualPair::new(&types, 2)?;
    let subs = all_subgroups(pair.module(), cli.cap)?;
    let mut rng = StdRng::seed_from_u64(cli.seed);
    let mut failures = Vec::new();
    let sample: Vec<&Subgroup> = subs.choose_multiple(&mut rng, 32).collect();
    for g in &sample {
        let rep = pair.report(&pair.skeleton((*g).clone()))?;
        if !rep.passed() {
            failures.push(g.generators.clone());
        }
    }
    r.check("sampled_a3_genus_two_skeletons_dualize", failures.is_empty(), json!({"sampled": sample.len(), "failures": failures}));
    r.outputs = json!({
        "items": suite.results.iter().map(|x| json!({"item": x.item, "pass": x.pass, "checks": x.checks.len()})).collect::<Vec<_>>(),
        "sampled_subgroups": sample.iter().map(|g| &g.generators).collect::<Vec<_>>(),
    });
    Ok(r)
}
