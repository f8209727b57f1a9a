use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use crate::bracket::{commutator_defect, serre_defect};
use crate::error::{Error, Result};
use crate::generator::{chevalley_generators, CartanData, GeneratorKind};
use crate::realization::TruncatedModule;
use crate::report::{Report, Status};
use crate::scalar::{Field, ScalarMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationClass {
    /// `[H_i, H_j] = 0`
    Cartan,
    /// `[H_i, E_j] = c_ij E_j`, `[H_i, F_j] = −c_ij F_j`
    CartanRoot,
    /// `[E_i, F_j] = δ_ij H_i`
    RootPair,
    /// `[E_i, E_j] = [F_i, F_j] = 0` for non-adjacent nodes
    CommutingRoots,
    Serre,
}

fn class_of(kinds: (GeneratorKind, GeneratorKind)) -> RelationClass {
    use GeneratorKind::*;
    match kinds {
        (H, H) => RelationClass::Cartan,
        (H, _) | (_, H) => RelationClass::CartanRoot,
        (E, F) | (F, E) => RelationClass::RootPair,
        _ => RelationClass::CommutingRoots,
    }
}

/// Runs every Chevalley–Serre relation on the interior of the window.
/// Commutators use depth 2, Serre words depth 3.
pub fn verify_relations<S: Field>(module: &TruncatedModule<S>, tol: f64) -> Result<Report> {
    if module.cutoff() < 4 {
        return Err(Error::WindowTooSmall { cutoff: module.cutoff(), needed: 4 });
    }
    let n = module.rank();
    let cartan = CartanData::type_a(n);
    let mut classes: BTreeMap<RelationClass, f64> = BTreeMap::new();
    let mut worst_pair = String::new();
    let mut worst = 0.0f64;
    let gens = chevalley_generators(n);
    for &g1 in &gens {
        for &g2 in &gens {
            if g1 >= g2 || cartan.bracket(g1, g2).is_none() {
                continue;
            }
            let d = commutator_defect(module, g1, g2, 2)?;
            let slot = classes.entry(class_of((g1.kind, g2.kind))).or_insert(0.0);
            *slot = slot.max(d);
            if d > worst {
                worst = d;
                worst_pair = format!("[{g1},{g2}]");
            }
        }
    }
    for (i, j, p) in cartan.serre_pairs() {
        for kind in [GeneratorKind::E, GeneratorKind::F] {
            let d = serre_defect(module, kind, i, j, p + 1)?;
            let slot = classes.entry(RelationClass::Serre).or_insert(0.0);
            *slot = slot.max(d);
            if d > worst {
                worst = d;
                let name = if kind == GeneratorKind::E { "E" } else { "F" };
                worst_pair = format!("(ad {name}{i})^{p} {name}{j}");
            }
        }
    }
    let ok = match S::MODE {
        ScalarMode::Exact => worst == 0.0,
        ScalarMode::Float => worst <= tol,
    };
    let mut report = Report::new(
        "relations",
        "the operators generate a Lie algebra isomorphic to sl(n+1, C)",
        json!({ "module": module.summary(), "tol": tol, "mode": format!("{:?}", S::MODE).to_lowercase() }),
        Status::from_bool(ok),
    );
    report.max_defect = Some(worst);
    for (class, d) in &classes {
        report.evidence.push(format!("{}: {d:e}", serde_json::to_value(class).unwrap().as_str().unwrap()));
    }
    if worst > 0.0 {
        report.evidence.push(format!("worst relation {worst_pair}: {worst:e}"));
    }
    report.details = json!({ "classes": classes });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::GeneratorId;
    use crate::realization::{ModuleParams, RealizationKind};
    use crate::scalar::GaussRational;
    use num_complex::Complex64;

    #[test]
    fn bbl_float_passes() {
        let m = TruncatedModule::build(RealizationKind::BblX, ModuleParams::new(2, Complex64::new(-1.5, 0.0), 10)).unwrap();
        let r = verify_relations(&m, 1e-9).unwrap();
        assert!(r.passed(), "{:?}", r.evidence);
    }

    #[test]
    fn base_exact_passes_with_zero_defect() {
        let m = TruncatedModule::<GaussRational>::build(RealizationKind::BaseP, ModuleParams::base(3, 8)).unwrap();
        let r = verify_relations(&m, 1e-9).unwrap();
        assert!(r.passed());
        assert_eq!(r.max_defect, Some(0.0));
    }

    #[test]
    fn injected_fault_is_caught() {
        let m = TruncatedModule::build(RealizationKind::BblX, ModuleParams::new(2, Complex64::new(-1.5, 0.0), 10)).unwrap();
        let bad = m.with_fault(GeneratorId::e(0), Complex64::new(1e-3, 0.0)).unwrap();
        let r = verify_relations(&bad, 1e-9).unwrap();
        assert!(!r.passed());
        assert!(r.max_defect.unwrap() >= 1e-4);
    }

    #[test]
    fn small_window_rejected() {
        let m = TruncatedModule::<GaussRational>::build(RealizationKind::BaseP, ModuleParams::base(2, 3)).unwrap();
        assert!(matches!(verify_relations(&m, 1e-9), Err(Error::WindowTooSmall { .. })));
    }
}
