use num_complex::Complex64;
use proptest::prelude::*;
use wmod::classify::{classify, ModuleLabel, RealFormId};
use wmod::generator::{chevalley_generators, CartanData, GeneratorId};
use wmod::multi_index::MultiIndex;
use wmod::realization::{ModuleParams, RealizationKind, TruncatedModule};
use wmod::scalar::{parse_scalar, GaussRational};
use wmod::sparse::SparseVector;
use wmod::unitarity::{boundedness_profile, inner_product, jm_norm, GeneratorSet, NormTower};
use wmod::verify::weight_of;

const CUTOFF: usize = 6;

fn module(kind: RealizationKind, n: usize, a: Complex64) -> TruncatedModule<Complex64> {
    TruncatedModule::build(kind, ModuleParams::new(n, a, CUTOFF)).unwrap()
}

fn kind() -> impl Strategy<Value = RealizationKind> {
    prop_oneof![Just(RealizationKind::BblX), Just(RealizationKind::DeformedE)]
}

/// Non-integral parameters, away from the guarded set.
fn param() -> impl Strategy<Value = Complex64> {
    (-4.0f64..2.0, -1.0f64..1.0)
        .prop_filter("not a nonnegative integer", |(re, im)| *im != 0.0 || re.fract().abs() > 1e-3 || *re < 0.0)
        .prop_map(|(re, im)| Complex64::new(re, im))
}

fn vector(m: &TruncatedModule<Complex64>, coeffs: &[(f64, f64)], interior: usize) -> SparseVector<Complex64> {
    let idx = m.basis().interior(interior);
    SparseVector::from_terms(idx.iter().zip(coeffs).map(|(k, &(re, im))| (k.clone(), Complex64::new(re, im))))
}

fn coeffs() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..12)
}

fn close(x: &SparseVector<Complex64>, y: &SparseVector<Complex64>) -> bool {
    x.sub(y).max_abs() <= 1e-9 * (1.0 + x.max_abs().max(y.max_abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn apply_is_linear(kind in kind(), n in 1usize..=3, a in param(), u in coeffs(), v in coeffs(),
                       c in (-2.0f64..2.0, -2.0f64..2.0), gi in 0usize..9) {
        let m = module(kind, n, a);
        let gens = chevalley_generators(n);
        let g = gens[gi % gens.len()];
        let (u, v) = (vector(&m, &u, 1), vector(&m, &v, 1));
        let c = Complex64::new(c.0, c.1);
        let mut lhs_in = u.scale(&c);
        lhs_in.axpy(&Complex64::new(1.0, 0.0), &v);
        let lhs = m.apply(g, &lhs_in).unwrap();
        let mut rhs = m.apply(g, &u).unwrap().scale(&c);
        rhs.axpy(&Complex64::new(1.0, 0.0), &m.apply(g, &v).unwrap());
        prop_assert!(close(&lhs, &rhs));
    }

    #[test]
    fn inner_product_is_hermitian_and_positive(kind in kind(), n in 1usize..=3, a in param(), u in coeffs(), v in coeffs()) {
        let m = module(kind, n, a);
        let (u, v) = (vector(&m, &u, 0), vector(&m, &v, 0));
        let uv = inner_product(&m, &u, &v).unwrap();
        let vu = inner_product(&m, &v, &u).unwrap();
        prop_assert!((uv - vu.conj()).norm() <= 1e-9 * (1.0 + uv.norm()));
        let uu = inner_product(&m, &u, &u).unwrap();
        prop_assert!(uu.im.abs() <= 1e-9 * (1.0 + uu.re));
        prop_assert!(uu.re >= 0.0);
        prop_assert!((uu.re.sqrt() - m.norm(&u)).abs() <= 1e-9 * (1.0 + uu.re.sqrt()));
    }

    #[test]
    fn jm_norms_increase_with_level(n in 1usize..=2, re in -3.0f64..-0.1, u in coeffs(), c in 0.1f64..3.0) {
        let m = module(RealizationKind::DeformedE, n, Complex64::new(re, 0.0));
        let tower = NormTower::new(&m, GeneratorSet::Chevalley);
        let u = vector(&m, &u, 3);
        let norms: Vec<f64> = (0..=2).map(|l| jm_norm(&tower, &u, l).unwrap()).collect();
        prop_assert!(norms.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-12)));
        let scaled = jm_norm(&tower, &u.scale(&Complex64::new(c, 0.0)), 2).unwrap();
        prop_assert!((scaled - c * norms[2]).abs() <= 1e-9 * (1.0 + scaled));
    }

    #[test]
    fn chevalley_images_shift_weight_by_cartan_column(kind in kind(), n in 1usize..=3, a in param(), pos in 0usize..40, j in 0usize..3) {
        let m = module(kind, n, a);
        let j = j % n;
        let k = m.basis().interior(1)[pos % m.basis().interior(1).len()].clone();
        let cartan = CartanData::type_a(n);
        for (g, sign) in [(GeneratorId::e(j), 1.0), (GeneratorId::f(j), -1.0)] {
            if let Some((t, _)) = m.chevalley_image(g, &k) {
                let (w0, w1) = (weight_of(&m, &k), weight_of(&m, &t));
                for i in 0..n {
                    let shift = w1[i] - w0[i];
                    prop_assert!((shift - Complex64::new(sign * cartan.entry(i, j) as f64, 0.0)).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn profile_running_sup_is_monotone(re in -3.0f64..-0.1, im in -1.0f64..1.0, k in 2usize..400) {
        let p = boundedness_profile(2, Complex64::new(re, im), k).unwrap();
        prop_assert_eq!(p.points.len(), k);
        prop_assert!(p.points.windows(2).all(|w| w[1].running_sup >= w[0].running_sup));
        prop_assert!((p.points.last().unwrap().running_sup - p.sup).abs() == 0.0);
        prop_assert!(p.points.iter().all(|q| q.value >= 0.0));
    }

    #[test]
    fn scalar_display_round_trips(p in -50i64..50, q in 1i64..20, r in -50i64..50, s in 1i64..20) {
        let x = GaussRational::ratio(p, q) + GaussRational::ratio(r, s) * GaussRational::imag_unit();
        let back = parse_scalar(&x.to_string()).unwrap();
        prop_assert_eq!(back.as_exact(), Some(&x));
    }

    #[test]
    fn contragredient_has_same_verdict(p in 1usize..=3, extra in 1usize..=2, m in 0i64..5, half in any::<bool>()) {
        let q = extra;
        let n = p + q - 1;
        prop_assume!(n >= 2);
        let mut entries = vec!["0".to_string(); n];
        for e in entries.iter_mut().take(p.min(n) - 1) {
            *e = "-1".into();
        }
        entries[p.min(n) - 1] = if half { format!("{}/2", 2 * m + 1) } else { m.to_string() };
        let text = format!("N({})", entries.join(","));
        let form = RealFormId::SuPq { p, q };
        let label: ModuleLabel = text.parse().unwrap();
        let dual: ModuleLabel = format!("{text}^*").parse().unwrap();
        match (classify(form, &label), classify(form, &dual)) {
            (Ok(x), Ok(y)) => {
                prop_assert_eq!(x.integrable, y.integrable);
                prop_assert_eq!(x.unitary, y.unitary);
            }
            (Err(x), Err(y)) => prop_assert_eq!(x.kind(), y.kind()),
            (x, y) => prop_assert!(false, "{:?} vs {:?}", x.map(|r| r.integrable), y.map(|r| r.integrable)),
        }
    }
}

#[test]
fn multi_index_display() {
    assert_eq!(MultiIndex::new(vec![1, 0, 2]).to_string(), "(1,0,2)");
}
