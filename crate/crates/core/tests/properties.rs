#![allow(clippy::needless_range_loop)]

mod common;

use proptest::prelude::*;

use galbacklund::backlund::transformed_frame;
use galbacklund::curves::{default_initial_frame, synthesize_curve, temporal_vector};
use galbacklund::gamma::{gamma_closed_form, gamma_rhs, solve_gamma, BacklundParams};
use galbacklund::grid::Grid;
use galbacklund::spaces::{classify, euclid_dot, g_dot, Frame, GVec, SpaceCase};
use galbacklund::tabulated::constant;
use galbacklund::verify::{expected as tables, frame_coefficients};

fn space() -> impl Strategy<Value = SpaceCase> {
    prop_oneof![Just(SpaceCase::G3), Just(SpaceCase::Pg3Tb), Just(SpaceCase::Pg3Tn), Just(SpaceCase::G4)]
}

fn comps() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(-10.0f64..10.0)
}

fn gvec(space: SpaceCase, x: &[f64; 4]) -> GVec {
    GVec::from_slice(&x[..space.dim()]).unwrap()
}

fn iso(space: SpaceCase, mut x: [f64; 4]) -> GVec {
    x[space.distinguished_index()] = 0.0;
    gvec(space, &x)
}

/// Diagonally dominant, hence well conditioned.
fn frame(space: SpaceCase, rows: &[[f64; 4]; 4]) -> Frame {
    let d = space.dim();
    let vectors = (0..d)
        .map(|i| {
            let mut x = rows[i];
            x[i] += 3.0 * x[i].signum().max(0.0) + 3.0;
            gvec(space, &x)
        })
        .collect();
    Frame::new(vectors).unwrap()
}

fn frame_rows() -> impl Strategy<Value = [[f64; 4]; 4]> {
    prop::array::uniform4(prop::array::uniform4(-1.0f64..1.0))
}

fn nonzero(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo..hi, any::<bool>()).prop_map(|(x, neg)| if neg { -x } else { x })
}

proptest! {
    #[test]
    fn g_dot_symmetric(space in space(), u in comps(), v in comps()) {
        let (u, v) = (gvec(space, &u), gvec(space, &v));
        prop_assert_eq!(g_dot(space, &u, &v).unwrap(), g_dot(space, &v, &u).unwrap());
    }

    #[test]
    fn g_dot_bilinear_on_isotropic(space in space(), u in comps(), w in comps(), v in comps(),
                                   a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let (u, w, v) = (iso(space, u), iso(space, w), iso(space, v));
        let lhs = g_dot(space, &(a * u + b * w), &v).unwrap();
        let rhs = a * g_dot(space, &u, &v).unwrap() + b * g_dot(space, &w, &v).unwrap();
        let scale: f64 = (0..space.dim()).map(|i| (a * u[i] * v[i]).abs() + (b * w[i] * v[i]).abs()).sum();
        prop_assert!((lhs - rhs).abs() <= 1e-15 * scale.max(1.0));
    }

    #[test]
    fn classify_scale_invariant(space in space(), u in comps(), k in 1e-3f64..1e3, isotropic in any::<bool>()) {
        let u = if isotropic { iso(space, u) } else { gvec(space, &u) };
        prop_assert_eq!(classify(space, &u).unwrap(), classify(space, &(k * u)).unwrap());
    }

    #[test]
    fn coefficients_invert_combination(space in space(), rows in frame_rows(), c in comps()) {
        let f = frame(space, &rows);
        let got = frame_coefficients(&f, &f.combine(&c[..space.dim()])).unwrap();
        for (g, want) in got.iter().zip(&c) {
            prop_assert!((g - want).abs() <= 1e-12, "{got:?} vs {c:?}");
        }
    }

    #[test]
    fn transformed_frame_is_the_composition(space in space(), rows in frame_rows(),
                                            gamma in -2.0f64..2.0, phi in nonzero(0.05, 2.0)) {
        let f = frame(space, &rows);
        let m = common::composition(space, gamma, phi);
        let out = transformed_frame(space, &f, gamma, phi).unwrap();
        let d = space.dim();
        for i in 0..d {
            for k in 0..d {
                let want: f64 = (0..d).map(|j| m[i][j] * f.e(j)[k]).sum();
                prop_assert!((out.e(i)[k] - want).abs() <= 1e-12);
            }
        }
        if space == SpaceCase::G4 {
            prop_assert_eq!(out.e(3), f.e(3));
        }
    }

    #[test]
    fn expected_tables_match_oracle(space in space(), gamma in -1.5f64..1.5, kappa in -2.0f64..2.0,
                                    tau in nonzero(0.2, 2.0), phi in nonzero(0.1, 2.0)) {
        let o = common::expected(space, gamma, kappa, tau, phi);
        let rho = common::rho(space, tau, phi);
        let m = tables::tangent_mismatch(space, gamma, kappa, phi, rho);
        let r = tables::binormal_residual(space, gamma, kappa, tau, phi);
        let scale = 1.0 + o.r3.iter().chain(&o.mismatch).fold(0.0f64, |a, x| a.max(x.abs()));
        for j in 0..4 {
            prop_assert!((m[j] - o.mismatch[j]).abs() <= 1e-12 * scale, "mismatch {m:?} vs {:?}", o.mismatch);
            prop_assert!((r[j] - o.r3[j]).abs() <= 1e-12 * scale, "R3 {r:?} vs {:?}", o.r3);
        }
        prop_assert!((tables::speed_deficit(space, gamma, phi) - o.speed_deficit).abs() <= 1e-12 * scale);
    }

    #[test]
    fn synthesized_tangent_stays_admissible(pseudo in any::<bool>(), kappa in 0.2f64..2.0, tau in nonzero(0.2, 2.0)) {
        let space = if pseudo { SpaceCase::Pg3Tb } else { SpaceCase::G3 };
        let grid = Grid::new(0.0, 1.0, 256).unwrap();
        let init = default_initial_frame(space, kappa, tau).unwrap();
        let s = synthesize_curve(space, &constant(kappa), &constant(tau), None, &init, GVec::zeros(3), &grid).unwrap();
        let (e2, e3) = (g_dot(space, &init.e(1), &init.e(1)).unwrap(), g_dot(space, &init.e(2), &init.e(2)).unwrap());
        for f in &s.frenet.frames {
            prop_assert!((f.e(0)[0] - 1.0).abs() <= 1e-10);
            if pseudo {
                prop_assert!((g_dot(space, &f.e(1), &f.e(1)).unwrap() - e2).abs() <= 1e-8);
                prop_assert!((g_dot(space, &f.e(2), &f.e(2)).unwrap() - e3).abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn temporal_vector_orthogonal(a in -1.0f64..1.0, b in -1.0f64..1.0, t in 0.0f64..std::f64::consts::TAU) {
        // orthonormal spatial triple, zero fourth components
        let (s, c) = t.sin_cos();
        let e1 = GVec::new4(c, s, 0.0, 0.0);
        let e2 = GVec::new4(-s, c, 0.0, 0.0);
        let e3 = GVec::new4(0.0, 0.0, 1.0 + a * a + b * b, 0.0);
        let (e4, _) = temporal_vector(&e1, &e2, &e3).unwrap();
        for e in [e1, e2, e3] {
            prop_assert!(euclid_dot(&e4, &e).unwrap().abs() <= 1e-12);
        }
    }

    #[test]
    fn closed_form_solves_the_ode(pseudo in any::<bool>(), tau in nonzero(0.3, 2.0), phi in nonzero(0.1, 2.0),
                                  gamma0 in -3.0f64..3.0) {
        let space = if pseudo { SpaceCase::Pg3Tb } else { SpaceCase::G3 };
        let grid = Grid::new(0.0, 2.0, 10_000).unwrap();
        let p = BacklundParams::new(space, tau, phi, gamma0, grid).unwrap();
        let g: Vec<f64> = (0..grid.len()).map(|i| gamma_closed_form(&p, grid.s(i)).unwrap()).collect();
        for i in 1..grid.len() - 1 {
            let fd = (g[i + 1] - g[i - 1]) / (2.0 * grid.h());
            prop_assert!((fd - gamma_rhs(space, g[i], tau, phi, 0.0)).abs() <= 1e-6);
        }
    }

    #[test]
    fn increasing_below_pi(tau in 0.2f64..2.0, phi in 0.1f64..3.0, gamma0 in 0.01f64..3.13) {
        // C > 0 and γ₀ ∈ (0, π)
        let grid = Grid::new(0.0, 2.0, 1000).unwrap();
        let g = solve_gamma(&BacklundParams::new(SpaceCase::G3, tau, phi, gamma0, grid).unwrap(), None).unwrap();
        for w in g.windows(2) {
            prop_assert!(w[1] >= w[0] && w[1] < std::f64::consts::PI);
        }
    }
}

#[test]
fn fixed_points_are_exact() {
    let grid = Grid::new(0.0, 2.0, 500).unwrap();
    let cases =
        [(SpaceCase::G3, 0.0), (SpaceCase::G3, std::f64::consts::PI), (SpaceCase::Pg3Tb, 0.0), (SpaceCase::Pg3Tn, 0.0)];
    for (space, g0) in cases {
        let g = solve_gamma(&BacklundParams::new(space, 1.3, 0.7, g0, grid).unwrap(), None).unwrap();
        // sin(π) is not 0 in floating point, so γ₀ = π only holds to round-off
        let slack = if g0 == 0.0 { 0.0 } else { 1e-12 };
        assert!(g.iter().all(|x| (x - g0).abs() <= slack), "{space} γ₀={g0}");
    }
}
