//! Worked values: closed forms, trivial cases and oracle comparisons.

use std::f64::consts::{PI, TAU};

use vertexlab::constructions::*;
use vertexlab::curves::{
    count_inflections, count_vertices, count_vertices_adaptive, curvature_profile, ClosedCurve, Differentiation,
    DEFAULT_TOL,
};
use vertexlab::geom::{
    conformal_geodesic_curvature, geodesic_shoot, metric_circle, revolution_geodesic_curvature, Ambient,
    ConformalChart, RevolutionSurface, ShootOptions,
};
use vertexlab::jet::Jet;
use vertexlab::maps::*;

fn count(c: &ClosedCurve) -> Option<usize> {
    count_vertices_adaptive(c, 4096, DEFAULT_TOL, Differentiation::Analytic).unwrap().0.count()
}

#[test]
fn chart_curvatures() {
    let ray = ClosedCurve::with_closure(
        "ray",
        ConformalChart::HalfPlane.into(),
        1.0,
        DeckMotion::new(DeckKind::HypTranslation, 1.0).unwrap(),
        |u: Jet| [Jet::constant(0.0), u.exp()],
    )
    .unwrap();
    assert!(conformal_geodesic_curvature(ConformalChart::HalfPlane, &ray, 0.3).unwrap().abs() < 1e-12);
    let horocycle = horocycle_perturbation(1.0, 2.0, 0.0).unwrap();
    assert!((conformal_geodesic_curvature(ConformalChart::HalfPlane, &horocycle, 0.4).unwrap() - 1.0).abs() < 1e-12);
    let equator = ClosedCurve::new("equator", ConformalChart::SphereStereo.into(), TAU, |t: Jet| {
        let (s, c) = t.sin_cos();
        [c, s]
    })
    .unwrap();
    assert!(conformal_geodesic_curvature(ConformalChart::SphereStereo, &equator, 1.0).unwrap().abs() < 1e-12);
}

#[test]
fn unrolled_cylinder_matches_planar_curvature() {
    let cyl = RevolutionSurface::cylinder(1.0, (-1.0, 1.0)).unwrap();
    let th = PI / 2.0;
    let k = revolution_geodesic_curvature(&cyl, |t| t.cos() * 0.1, th).unwrap();
    // planar curve (θ, 0.1 cos θ): κ = −0.1 cos θ / (1 + 0.01 sin²θ)^{3/2}, zero at π/2
    let planar = -0.1 * th.cos() / (1.0 + 0.01 * th.sin().powi(2)).powf(1.5);
    assert!((k.abs() - planar.abs()).abs() < 1e-10);
    let th = 0.7;
    let k = revolution_geodesic_curvature(&cyl, |t| t.cos() * 0.1, th).unwrap();
    let planar = -0.1 * th.cos() / (1.0 + 0.01 * th.sin().powi(2)).powf(1.5);
    assert!((k.abs() - planar.abs()).abs() < 1e-10);
}

#[test]
fn geodesic_shots() {
    let opts = ShootOptions::default();
    let e: Ambient = ConformalChart::Euclidean.into();
    let p = geodesic_shoot(&e, [0.0, 0.0], [1.0, 0.0], 2.0, &opts).unwrap().point;
    assert!((p[0] - 2.0).abs() < 1e-12 && p[1].abs() < 1e-12);
    let h: Ambient = ConformalChart::HalfPlane.into();
    let l = 1.7;
    let p = geodesic_shoot(&h, [0.0, 1.0], [0.0, 1.0], l, &opts).unwrap().point;
    assert!(p[0].abs() < 1e-9 && (p[1] - l.exp()).abs() < 1e-8 * l.exp());
}

#[test]
fn hyperbolic_circle_closed_form() {
    let h: Ambient = ConformalChart::HalfPlane.into();
    let rho: f64 = 0.4;
    let c = metric_circle(&h, [0.0, 1.0], rho, 128, &ShootOptions::default()).unwrap();
    for i in 0..50 {
        let p = c.point(TAU * i as f64 / 50.0);
        assert!((p[0].hypot(p[1] - rho.cosh()) - rho.sinh()).abs() < 1e-6);
    }
}

#[test]
fn sine_graph_inflections() {
    let c = ClosedCurve::with_closure(
        "sine",
        ConformalChart::Euclidean.into(),
        TAU,
        DeckMotion::new(DeckKind::EuclTranslation, TAU).unwrap(),
        |t: Jet| [t, t.sin()],
    )
    .unwrap();
    let r = count_inflections(&curvature_profile(&c, 2048).unwrap(), DEFAULT_TOL).unwrap();
    assert_eq!(r.count(), Some(2));
    let ts: Vec<f64> = r.inflections.iter().map(|i| i.t).collect();
    assert!(ts.iter().any(|t| t.abs() < 1e-9 || (t - TAU).abs() < 1e-9));
    assert!(ts.iter().any(|t| (t - PI).abs() < 1e-9));
    let ellipse = ClosedCurve::new("ellipse", ConformalChart::Euclidean.into(), TAU, |t: Jet| {
        let (s, c) = t.sin_cos();
        [c * 2.0, s]
    })
    .unwrap();
    assert_eq!(count_inflections(&curvature_profile(&ellipse, 1024).unwrap(), DEFAULT_TOL).unwrap().count(), Some(0));
}

#[test]
fn family_counts() {
    assert_eq!(count(&flat_translation_perturbation(1.0, 0.05).unwrap()), Some(2));
    assert_eq!(count(&flat_translation_perturbation(1.0, 5.0).unwrap()), Some(2));
    assert_eq!(count(&flat_glide_perturbation(1.0, 0.05).unwrap()), Some(1));
    assert_eq!(count(&horocycle_perturbation(1.0, 1.0, 0.05).unwrap()), Some(2));
    assert_eq!(count(&horocycle_perturbation(2.0, 3.0, 0.1).unwrap()), Some(2));
    assert_eq!(count(&hyperbolic_translation_perturbation(1.0, 0.01).unwrap()), Some(2));
    assert_eq!(count(&hyperbolic_glide_perturbation(1.0, 0.01).unwrap()), Some(1));
    assert_eq!(count(&embedded_pair_flat(1.0, 0.05, 0.5).unwrap().quotient_curve), Some(2));
    assert_eq!(count(&embedded_pair_hyperbolic(1.0, 0.01, 0.5).unwrap().quotient_curve), Some(2));
}

#[test]
fn pairs_reduce_to_glides_at_zero_offset() {
    let pair = embedded_pair_flat(1.0, 0.05, 0.0).unwrap();
    let glide = flat_glide_perturbation(1.0, 0.05).unwrap();
    for i in 0..20 {
        let t = 0.05 * i as f64;
        let (p, q) = (pair.quotient_curve.point(t), glide.point(t));
        assert!((p[0] - q[0]).abs() < 1e-14 && (p[1] - q[1]).abs() < 1e-14);
    }
}

#[test]
fn deck_examples() {
    let t = DeckMotion::new(DeckKind::EuclTranslation, 1.0).unwrap();
    assert_eq!(deck_apply(&t, [0.0, 0.0]), [1.0, 0.0]);
    let l = 0.8;
    let h = DeckMotion::new(DeckKind::HypTranslation, l).unwrap();
    let p = deck_apply(&h, [0.0, 1.0]);
    assert!((p[1] - l.exp()).abs() < 1e-14);
    let g = DeckMotion::new(DeckKind::HypGlide, l).unwrap();
    let p = deck_apply(&g, [0.3, 2.0]);
    assert!((p[0] + 0.3 * l.exp()).abs() < 1e-14 && (p[1] - 2.0 * l.exp()).abs() < 1e-14);

    let q = QuotientModel::new(t);
    let p = project_to_fundamental_domain([2.3, 0.5], &q);
    assert!((p[0] - 0.3).abs() < 1e-12 && p[1] == 0.5);
    assert_eq!(project_to_fundamental_domain([1.0, 0.5], &q), [0.0, 0.5]);
    let q = QuotientModel::new(h);
    let p = project_to_fundamental_domain([0.0, (2.5 * l).exp()], &q);
    assert!((p[1] - (0.5 * l).exp()).abs() < 1e-12);
}

#[test]
fn broken_curve_is_not_invariant() {
    let l = 1.0;
    let g = DeckMotion::new(DeckKind::EuclTranslation, l).unwrap();
    let probes: Vec<f64> = (0..64).map(|i| i as f64 / 64.0).collect();
    let broken = |t: f64| [t, 0.1 * (TAU * t / (1.1 * l)).sin()];
    assert!(check_deck_invariance(broken, &g, Reparam::Shift(l), &probes) > 0.01);
    let geodesic = |t: f64| [t, 0.0];
    assert!(check_deck_invariance(geodesic, &g, Reparam::Shift(l), &probes) < 1e-14);
}

#[test]
fn cylinder_curve_vertices_transfer_between_charts() {
    let polar = polar_cos5();
    let sphere = stereographic_transfer(&polar, StereoDirection::PlaneToSphere).unwrap();
    assert_eq!(count(&sphere), Some(2));
    let hp = cyl2v_halfplane_copy(DEFAULT_A, 0.05, 2.0, 1.0).unwrap();
    let flat = halfplane_inclusion_transfer(&hp).unwrap();
    assert_eq!(count(&hp), Some(2));
    assert_eq!(count(&flat), Some(2));
}

#[test]
fn vertex_report_json_schema() {
    let r = count_vertices(&curvature_profile(&polar_cos5(), 2048).unwrap(), DEFAULT_TOL).unwrap();
    let v = r.to_json();
    assert_eq!(v["count"], 2);
    assert_eq!(v["all_critical"], false);
    assert_eq!(v["vertices"][0]["kind"], "min");
    assert_eq!(v["vertices"][1]["kind"], "max");
    assert_eq!(v["vertices"][0]["degenerate"], false);
}
