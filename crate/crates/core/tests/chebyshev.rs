//! Chebyshev hypersurfaces: every singular point is a node.

mod common;

use common::*;
use qhsyz::singular::{analyze, chebyshev_fixture, AnalysisOptions, Verdict};
use qhsyz::Rational;

fn analyze_chebyshev(n: usize, d: usize, field_spec: Option<&str>) -> (qhsyz::singular::Analysis, u64) {
    let c = chebyshev_fixture(n, d, &Rational::from_integer(0.into()));
    let opts = AnalysisOptions { field: field(field_spec), ..Default::default() };
    (analyze(&c.polynomial, &opts).unwrap(), c.nodes.unwrap())
}

#[test]
fn cubic_curve_has_two_nodes() {
    let (a, nodes) = analyze_chebyshev(2, 3, None);
    let r = &a.report;
    assert_eq!(nodes, 2);
    assert_eq!(r.points.len(), 2);
    assert!(r.points.iter().all(|p| (p.tau, p.mu, p.verdict) == (1, 1, Verdict::QuasiHomogeneous)));
    assert_eq!((r.tau_total, r.mu_total), (2, 2));
    assert!(r.global_all_qh);
    assert!(property_failures(&a).is_empty());
}

#[test]
fn sextic_threefold_over_rationals() {
    // nodes have coordinates in {0, ±1/2, ±√3/2}; only the 24 without √3 are rational
    let (a, nodes) = analyze_chebyshev(4, 6, None);
    let r = &a.report;
    assert_eq!(nodes, 216);
    assert_eq!((r.tau_total, r.mu_total, r.jacobian_degree), (216, 216, 216));
    assert_eq!(r.points.len(), 24);
    assert_eq!(r.geometric_points, 216);
    assert_eq!(r.residual_points, 192);
    assert_eq!(r.residual_locus_degree, 192);
    assert!(r.global_all_qh);
    assert!(property_failures(&a).is_empty());
}

#[test]
fn sextic_threefold_all_nodes() {
    let (a, nodes) = analyze_chebyshev(4, 6, Some("Q(s) minpoly t^2-3"));
    let r = &a.report;
    assert_eq!(r.points.len() as u64, nodes);
    assert!(r.points.iter().all(|p| (p.tau, p.mu, p.verdict) == (1, 1, Verdict::QuasiHomogeneous)));
    assert_eq!((r.tau_total, r.mu_total), (216, 216));
    assert_eq!((r.residual_points, r.residual_locus_degree), (0, 0));
    assert!(r.global_all_qh);
    assert!(property_failures(&a).is_empty());
}
