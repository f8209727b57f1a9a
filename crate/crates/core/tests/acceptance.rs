//! Acceptance matrix. Each criterion is checked directly against the library
//! and reported as one PASS/FAIL line; the process exits nonzero if any line
//! is FAIL. Runs without the libtest harness so the lines are never captured.

use std::time::Instant;

use num_complex::Complex64;
use wmod::classify::{classify, finite_dimensional_p, ModuleLabel, RealFormId};
use wmod::generator::chevalley_generators;
use wmod::multi_index::{binomial, Basis, MultiIndex};
use wmod::realization::{change_of_basis_defect, ModuleParams, RealizationKind, TruncatedModule};
use wmod::scalar::{parse_scalar, Field, GaussRational};
use wmod::sparse::SparseVector;
use wmod::unitarity::{
    adjoint_defect, boundedness_profile, closed_form_norm_sq, global_vs_infinitesimal, perturbation_bound, sphere_gram,
    SubgroupId,
};
use wmod::verify::{
    branch_levi, central_character, finite_type_check, finite_type_check_label, gk_growth_degree, verify_relations,
    weight_decomposition, FiniteTypeVerdict, SummandStatus,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const A_GRID: [&str; 4] = ["-0.5", "-2", "1.7", "-1+0.5i"];
const KINDS: [RealizationKind; 3] = [RealizationKind::BblX, RealizationKind::DeformedE, RealizationKind::BaseP];

fn check(ok: bool, msg: impl Into<String>) -> Outcome {
    if ok {
        Ok(msg.into())
    } else {
        Err(msg.into())
    }
}

/// The relation grid. BASE_P only exists at `a = −n`.
fn grid() -> Vec<(RealizationKind, usize, &'static str)> {
    let mut out = Vec::new();
    for kind in KINDS {
        for n in 1..=3usize {
            if kind == RealizationKind::BaseP {
                out.push((kind, n, ["-1", "-2", "-3"][n - 1]));
            } else {
                out.extend(A_GRID.iter().map(|&a| (kind, n, a)));
            }
        }
    }
    out
}

fn float_module(kind: RealizationKind, n: usize, a: &str, cutoff: usize) -> TruncatedModule<Complex64> {
    let a = parse_scalar(a).unwrap().to_c64();
    TruncatedModule::build(kind, ModuleParams::new(n, a, cutoff)).unwrap()
}

/// The exact module, when `a` is rational and the kind has an exact form there.
fn exact_module(kind: RealizationKind, n: usize, a: &str, cutoff: usize) -> Option<TruncatedModule<GaussRational>> {
    let a = parse_scalar(a).ok()?.as_exact()?.clone();
    if !a.is_real() {
        return None;
    }
    TruncatedModule::build(kind, ModuleParams::new(n, a, cutoff)).ok()
}

fn relations() -> Outcome {
    let start = Instant::now();
    let (mut worst_float, mut exact_runs, mut nonzero_exact) = (0.0f64, 0, Vec::new());
    for (kind, n, a) in grid() {
        let m = float_module(kind, n, a, 10);
        let r = verify_relations(&m, 1e-9).map_err(|e| format!("{kind} n={n} a={a}: {e}"))?;
        worst_float = worst_float.max(r.max_defect.unwrap_or(f64::INFINITY));
        if let Some(m) = exact_module(kind, n, a, 10) {
            exact_runs += 1;
            let r = verify_relations(&m, 0.0).map_err(|e| format!("{kind} n={n} a={a} exact: {e}"))?;
            if r.max_defect != Some(0.0) {
                nonzero_exact.push(format!("{kind} n={n} a={a}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        worst_float <= 1e-9 && nonzero_exact.is_empty() && exact_runs > 0 && secs <= 30.0,
        format!(
            "{} cases, max float defect {worst_float:.2e}, {exact_runs} exact runs with nonzero defects {nonzero_exact:?}, {secs:.1}s",
            grid().len()
        ),
    )
}

fn degree_one() -> Outcome {
    let mut bad = Vec::new();
    for (kind, n, a) in grid() {
        let t = weight_decomposition(&float_module(kind, n, a, 10));
        if t.degree != 1 {
            bad.push(format!("{kind} n={n} a={a}: degree {}", t.degree));
        }
        if let Some(m) = exact_module(kind, n, a, 10) {
            let t = weight_decomposition(&m);
            if t.degree != 1 || t.total() != m.dimension() {
                bad.push(format!("{kind} n={n} a={a} exact: degree {}", t.degree));
            }
        }
    }
    check(bad.is_empty(), format!("degree 1 on {} cases {bad:?}", grid().len()))
}

fn deformation() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=3usize {
        for a in A_GRID {
            let av = parse_scalar(a).unwrap().to_c64();
            worst = worst.max(change_of_basis_defect(&ModuleParams::new(n, av, 10)).map_err(|e| e.to_string())?);
        }
    }
    let mut mismatches = 0;
    for n in 1..=3usize {
        let a = GaussRational::from_i64(-(n as i64));
        let def = TruncatedModule::build(RealizationKind::DeformedE, ModuleParams::new(n, a, 10)).map_err(|e| e.to_string())?;
        let base = TruncatedModule::<GaussRational>::build(RealizationKind::BaseP, ModuleParams::base(n, 10)).unwrap();
        for g in chevalley_generators(n) {
            for k in base.basis().indices() {
                if def.chevalley_image(g, k) != base.chevalley_image(g, k) {
                    mismatches += 1;
                }
            }
        }
    }
    check(
        worst <= 1e-10 && mismatches == 0,
        format!("max change-of-basis defect {worst:.2e}; {mismatches} entries differ between DEFORMED_E(-n) and BASE_P"),
    )
}

fn branching() -> Outcome {
    let mut notes = Vec::new();
    for n in 2..=3usize {
        let m = float_module(RealizationKind::BblX, n, "-0.5", 10);
        let summands = branch_levi(&m, 0).map_err(|e| e.to_string())?;
        let covered: usize = summands.iter().map(|s| s.dimension).sum();
        if covered != m.dimension() {
            return Err(format!("n={n}: summands cover {covered} of {} basis vectors", m.dimension()));
        }
        let mut chars = Vec::new();
        for level in 0..=8u32 {
            let at: Vec<_> = summands.iter().filter(|s| s.seed.degree() == level).collect();
            let mut seed = vec![0u32; n];
            seed[0] = level;
            let want = binomial((level as usize + n - 1) as u64, (n - 1) as u64) as usize;
            let ok = at.len() == 1
                && at[0].seed == MultiIndex::new(seed)
                && at[0].dimension == want
                && at[0].status == SummandStatus::Complete;
            if !ok {
                return Err(format!("n={n} level {level}: {} summands", at.len()));
            }
            let c = central_character(&m, 0, &at[0].seed).map_err(|e| e.to_string())?;
            let expect = Complex64::new(-0.5 * n as f64 - (n as f64 + 1.0) * level as f64, 0.0);
            if (c - expect).norm() > 1e-9 {
                return Err(format!("n={n} level {level}: central character {c}, expected {expect}"));
            }
            chars.push(c);
        }
        let distinct = chars.iter().enumerate().all(|(i, x)| chars[..i].iter().all(|y| (x - y).norm() > 1e-6));
        if !distinct {
            return Err(format!("n={n}: central characters collide"));
        }
        notes.push(format!("n={n}: {} summands", summands.len()));
    }
    check(true, notes.join(", "))
}

fn unitarity() -> Outcome {
    let mut worst_unitary = 0.0f64;
    let mut least_non_unitary = f64::INFINITY;
    for n in 1..=2usize {
        for a in ["-3", "-1.5", "-0.25"] {
            let r = adjoint_defect(&float_module(RealizationKind::DeformedE, n, a, 8), 1e-10);
            worst_unitary = worst_unitary.max(r.max_defect);
        }
        for a in ["0.5", "1.7", "-1+0.5i", "i"] {
            let r = adjoint_defect(&float_module(RealizationKind::DeformedE, n, a, 8), 1e-10);
            least_non_unitary = least_non_unitary.min(r.max_defect);
        }
    }
    check(
        worst_unitary <= 1e-10 && least_non_unitary >= 1e-3,
        format!("negative real a: max defect {worst_unitary:.2e}; other a: min defect {least_non_unitary:.3e}"),
    )
}

fn boundedness() -> Outcome {
    let p = boundedness_profile(2, Complex64::new(-0.5, 0.0), 10_000).map_err(|e| e.to_string())?;
    let limit = 0.5625;
    let stable = p.last_half_max >= 0.95 * p.sup;
    let tail_ok = (p.tail_estimate - limit).abs() <= 0.05 * limit;
    let mut worst_spread = 0.0f64;
    let deformed = float_module(RealizationKind::DeformedE, 2, "-0.5", 4);
    for l in 0..=2 {
        let ladder = perturbation_bound(&deformed, l, &[50, 100, 200]).map_err(|e| e.to_string())?;
        worst_spread = worst_spread.max(ladder.spread_e0).max(ladder.spread_f0);
    }
    let at_base = float_module(RealizationKind::DeformedE, 2, "-2", 4);
    let mut base_max = 0.0f64;
    for l in 0..=2 {
        let ladder = perturbation_bound(&at_base, l, &[50, 100, 200]).map_err(|e| e.to_string())?;
        base_max = ladder.rows.iter().fold(base_max, |m, r| m.max(r.e0).max(r.f0));
    }
    check(
        stable && tail_ok && worst_spread <= 0.1 && base_max == 0.0,
        format!(
            "sup {:.5}, last-half max {:.5}, tail {:.5} vs {limit}; ladder spread {worst_spread:.3}; max estimate at a=-n {base_max}",
            p.sup, p.last_half_max, p.tail_estimate
        ),
    )
}

fn global() -> Outcome {
    let mut worst = 0.0f64;
    let mut worst_ratio = f64::INFINITY;
    for sub in SubgroupId::all(2) {
        let d = global_vs_infinitesimal(2, sub, 0.1, 10, 4).map_err(|e| format!("{sub}: {e}"))?.discrepancy;
        worst = worst.max(d);
        if matches!(sub, SubgroupId::X(0) | SubgroupId::Y(0)) {
            let half = global_vs_infinitesimal(2, sub, 0.05, 10, 4).map_err(|e| format!("{sub}: {e}"))?.discrepancy;
            worst_ratio = worst_ratio.min(d / half);
        }
    }
    check(worst <= 1e-6 && worst_ratio >= 8.0, format!("max discrepancy {worst:.2e}; X0/Y0 halving factor {worst_ratio:.0}"))
}

fn sphere() -> Outcome {
    let (seed, samples) = (20_240_601u64, 1_000_000usize);
    let mut worst = 0.0f64;
    let mut pairs = 0;
    for n in 1..=3usize {
        let indices = Basis::new(n, 3).indices().to_vec();
        let gram = sphere_gram(n, &indices, seed, samples).map_err(|e| e.to_string())?;
        for (i, k) in indices.iter().enumerate() {
            for (j, est) in gram[i].iter().enumerate() {
                let exact = if i == j { closed_form_norm_sq(k) } else { 0.0 };
                let dev = (est.value() - Complex64::new(exact, 0.0)).norm();
                // constant monomial pairs are exact and carry no sampling error
                let z = if est.stderr > 0.0 { dev / est.stderr } else if dev < 1e-12 { 0.0 } else { f64::INFINITY };
                worst = worst.max(z);
                pairs += 1;
            }
        }
    }
    check(worst <= 3.0, format!("{pairs} pairs, largest deviation {worst:.2} standard errors"))
}

fn finite_case() -> Outcome {
    let mut notes = Vec::new();
    for n in 1..=2usize {
        for m in 0..=3usize {
            let module = TruncatedModule::<GaussRational>::build(RealizationKind::Finite, ModuleParams::finite(n, m))
                .map_err(|e| e.to_string())?;
            let want = binomial((m + n) as u64, n as u64) as usize;
            let mut mass = 0.0f64;
            for g in chevalley_generators(n) {
                for k in module.basis().indices() {
                    mass = mass.max(module.apply(g, &SparseVector::basis(k.clone())).unwrap().boundary_mass());
                }
            }
            let mut entries = vec!["0".to_string(); n];
            entries[0] = m.to_string();
            let label: ModuleLabel = format!("N({})", entries.join(",")).parse().unwrap();
            let mut fd = finite_dimensional_p(&label).map_err(|e| e.to_string())?;
            if n == 2 {
                fd &= classify(RealFormId::SuPq { p: 1, q: 2 }, &label).map_err(|e| e.to_string())?.finite_dimensional;
            }
            if module.dimension() != want || mass != 0.0 || !fd {
                return Err(format!("n={n} m={m}: dimension {} (want {want}), mass {mass}, fd {fd}", module.dimension()));
            }
            notes.push(want.to_string());
        }
    }
    check(true, format!("dimensions {}", notes.join(",")))
}

fn growth() -> Outcome {
    let mut notes = Vec::new();
    for n in 1..=3usize {
        let fit = gk_growth_degree(&float_module(RealizationKind::BblX, n, "-0.5", 40)).map_err(|e| e.to_string())?;
        if fit.degree != n {
            return Err(format!("n={n}: degree {} (slope {:?})", fit.degree, fit.slope));
        }
        notes.push(format!("n={n} slope {:.3}", fit.slope.unwrap_or(f64::NAN)));
    }
    for n in 1..=2usize {
        for m in 0..=3usize {
            let module = TruncatedModule::<GaussRational>::build(RealizationKind::Finite, ModuleParams::finite(n, m)).unwrap();
            let d = gk_growth_degree(&module).map_err(|e| e.to_string())?.degree;
            if d != 0 {
                return Err(format!("finite n={n} m={m}: degree {d}"));
            }
        }
    }
    check(true, format!("{}; finite cases 0", notes.join(", ")))
}

fn classification() -> Outcome {
    use RealFormId::*;
    // form, label, integrable, unitary, anchor text expected in the justification
    let battery: [(RealFormId, &str, bool, Option<bool>, &str); 12] = [
        (SuPq { p: 1, q: 2 }, "N(-1/2,0)", true, Some(true), "p=1"),
        (SuPq { p: 1, q: 2 }, "N(1/2,0)", true, Some(false), "p=1"),
        (SuPq { p: 1, q: 3 }, "N(-1,2,0)", true, Some(true), "p=1"),
        (SuPq { p: 2, q: 1 }, "N(-1,3/2)", true, Some(true), "p=n"),
        (SuPq { p: 2, q: 1 }, "N(-1,-3/2)", true, Some(false), "p=n"),
        (SuPq { p: 3, q: 1 }, "N(-1,-4,0)^*", true, Some(true), "p=n"),
        (SuPq { p: 2, q: 2 }, "N(-1,-1,0)", true, Some(true), "1<p<n"),
        (SuPq { p: 2, q: 2 }, "N(-1,-2,0)", true, Some(true), "1<p<n"),
        (SlR { m: 3 }, "N(-1/2,0)", false, None, "finite dimensional"),
        (SpPq { p: 1, q: 1 }, "M(-1,-1)", false, None, "cannot integrate"),
        (SpR { n: 2 }, "M(-1,-1)", true, Some(true), "metaplectic"),
        (SpR { n: 3 }, "M(-1,-1,-2)^*", true, Some(true), "metaplectic"),
    ];
    let mut wrong = Vec::new();
    for (form, label, integrable, unitary, anchor) in battery {
        let res = classify(form, &label.parse().map_err(|e| format!("{label}: {e}"))?).map_err(|e| format!("{form} {label}: {e}"))?;
        if res.integrable != integrable || res.unitary != unitary || !res.justification.contains(anchor) {
            wrong.push(format!("{form} {label}: integrable {} unitary {:?}", res.integrable, res.unitary));
        }
    }
    check(wrong.is_empty(), format!("{} queries, mismatches {wrong:?}", battery.len()))
}

fn finite_type() -> Outcome {
    let m = float_module(RealizationKind::BblX, 3, "-0.5", 8);
    let window = finite_type_check(&m, 0).map_err(|e| e.to_string())?;
    let label = finite_type_check_label(&"N(-1,-1,1/2)".parse().unwrap(), 0).map_err(|e| e.to_string())?;
    let integrality = label.evidence.iter().any(|e| e.contains("integer"));
    check(
        window.verdict == FiniteTypeVerdict::FiniteType && label.verdict == FiniteTypeVerdict::NotFiniteType && integrality,
        format!("window {:?}; N(-1,-1,1/2) {:?}: {}", window.verdict, label.verdict, label.evidence.join("; ")),
    )
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("relation suite", relations),
        ("degree one", degree_one),
        ("deformation consistency", deformation),
        ("levi branching", branching),
        ("unitarity dichotomy", unitarity),
        ("boundedness", boundedness),
        ("global vs infinitesimal", global),
        ("sphere integrals", sphere),
        ("finite case", finite_case),
        ("growth degree", growth),
        ("classification table", classification),
        ("finite type", finite_type),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("PASS {:>2} {name}: {msg}", i + 1),
            Err(msg) => {
                println!("FAIL {:>2} {name}: {msg}", i + 1);
                failed.push(*name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
