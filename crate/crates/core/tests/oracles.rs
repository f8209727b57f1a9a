//! Reference values computed independently at 40 digits by `tools/oracles.py`.
#![allow(clippy::excessive_precision)]

use num_complex::Complex64;
use wmod::generator::GeneratorId;
use wmod::multi_index::MultiIndex;
use wmod::realization::{ModuleParams, RealizationKind, TruncatedModule};
use wmod::unitarity::{boundedness_profile, closed_form_norm_sq, level0_e0_bound, SphereGeometry};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel_close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * y.abs().max(1e-300)
}

#[test]
fn profile_values() {
    let p = boundedness_profile(2, c(-0.5, 0.0), 10_000).unwrap();
    let table = [
        (1, 0.25),
        (2, 0.343_145_750_507_619_8),
        (10, 0.499_560_906_719_339_07),
        (100, 0.555_549_612_082_231_34),
        (1000, 0.561_797_691_498_253_08),
        (10_000, 0.562_429_695_672_942_72),
    ];
    for (l, want) in table {
        assert!(rel_close(p.points[l - 1].value, want, 1e-11), "L={l}: {} vs {want}", p.points[l - 1].value);
    }
    let p = boundedness_profile(3, c(-1.0, 0.5), 50).unwrap();
    for (l, want) in [(1, 0.303_461_658_176_792_32), (7, 0.766_061_866_824_094_15), (50, 0.959_204_640_456_944_37)] {
        assert!(rel_close(p.points[l - 1].value, want, 1e-11), "L={l}");
    }
}

#[test]
fn level0_bound_values() {
    let want = [0.748_152_836_479_392_03, 0.749_069_494_908_886_04, 0.749_533_003_252_424_35];
    for (k, w) in [50, 100, 200].into_iter().zip(want) {
        assert!(rel_close(level0_e0_bound(2, c(-0.5, 0.0), k), w, 1e-12));
    }
}

#[test]
fn sphere_norms() {
    let table: [(&[u32], f64); 6] = [
        (&[3], 1.0),
        (&[1, 1], 1.0 / 6.0),
        (&[2, 1], 1.0 / 12.0),
        (&[1, 1, 1], 1.0 / 60.0),
        (&[3, 0, 0], 0.1),
        (&[2, 0, 1], 1.0 / 30.0),
    ];
    for (k, want) in table {
        assert!(rel_close(closed_form_norm_sq(&MultiIndex::new(k.to_vec())), want, 1e-13), "{k:?}");
    }
    let omega = [6.283_185_307_179_586_5, 19.739_208_802_178_717, 31.006_276_680_299_82];
    for (n, w) in (1..=3).zip(omega) {
        assert!(rel_close(SphereGeometry::new(n).omega, w, 1e-14));
    }
}

fn image(kind: RealizationKind, n: usize, a: Complex64, g: GeneratorId, k: &[u32]) -> (MultiIndex, Complex64) {
    let m = TruncatedModule::build(kind, ModuleParams::new(n, a, 8)).unwrap();
    m.chevalley_image(g, &MultiIndex::new(k.to_vec())).unwrap()
}

#[test]
fn deformed_coefficients() {
    let (t, v) = image(RealizationKind::DeformedE, 2, c(-0.5, 0.0), GeneratorId::e(0), &[3, 1]);
    assert_eq!(t, MultiIndex::new(vec![2, 1]));
    assert!((v - c(2.509_980_079_602_226_6, 0.0)).norm() < 1e-13);
    let (t, v) = image(RealizationKind::DeformedE, 2, c(-0.5, 0.0), GeneratorId::f(0), &[3, 1]);
    assert_eq!(t, MultiIndex::new(vec![4, 1]));
    assert!((v - c(-5.196_152_422_706_632, 0.0)).norm() < 1e-13);
    let (_, v) = image(RealizationKind::DeformedE, 1, c(1.7, 0.0), GeneratorId::e(0), &[2]);
    assert!((v - c(1.183_215_956_619_923_2, 0.0)).norm() < 1e-13);
    let (_, v) = image(RealizationKind::DeformedE, 1, c(1.7, 0.0), GeneratorId::f(0), &[2]);
    assert!((v - c(-0.948_683_298_050_513_9, 0.0)).norm() < 1e-13);
}

#[test]
fn bbl_cartan_and_root_coefficients() {
    let a = c(-0.5, 0.0);
    let (t, v) = image(RealizationKind::BblX, 2, a, GeneratorId::h(0), &[3, 1]);
    assert_eq!(t, MultiIndex::new(vec![3, 1]));
    assert!((v - c(-7.5, 0.0)).norm() < 1e-14);
    let (_, v) = image(RealizationKind::BblX, 2, a, GeneratorId::e(0), &[3, 1]);
    assert!((v - c(3.0, 0.0)).norm() < 1e-14);
    let (_, v) = image(RealizationKind::BblX, 2, a, GeneratorId::f(0), &[3, 1]);
    assert!((v - c(-4.5, 0.0)).norm() < 1e-14);
}
