//! Acceptance suite: ten end-to-end criteria pinning the headline numbers,
//! structural identities, cross-oracle agreement, and reproducibility of the
//! crate.  One test per criterion; each prints a `criterion N (...): PASS`
//! line when it succeeds, and any assertion failure marks that criterion
//! FAIL.
//!
//! The tolerances are the contract, not tuning knobs, so they are written as
//! literal constants next to the assertions they govern.  All rates are in
//! units of the spontaneous decay rate gamma (symmetric levels unless a draw
//! says otherwise), splittings in units of gamma as well.

use std::hint::black_box;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vsystem::dynamics::{propagate, propagate_to_steady, PropagateOptions};
use vsystem::observables::{
    angular_intensity, relative_intensity_difference, total_intensity, EmissionConfig,
};
use vsystem::steadystate::{
    c_ratio, canonical_population, closed_form, derivatives, optimal_dephasing,
    population_coherence_identity, solve_linear,
};
use vsystem::sweep::{
    figure_driver, run_sweep, run_sweep_serial, Axis, AxisParam, FigureId, Observable, Spacing,
};
use vsystem::transport::{build_transport_generator, heat_flux, TwoBathParams};
use vsystem::{DensityState, Generator, VParams};

/// 21-point log grid over the pumping strength, weak to strong.
fn nbar_grid() -> Vec<f64> {
    Axis::new(AxisParam::Nbar, 1e-3, 1e3, Spacing::Log, 21)
        .unwrap()
        .values()
}

/// 21-point log grid over the excited-state splitting.
fn delta_grid() -> Vec<f64> {
    Axis::new(AxisParam::Delta, 1e-2, 1e2, Spacing::Log, 21)
        .unwrap()
        .values()
}

/// Pure-dephasing strengths layered over the grid.
const GAMMA_D_VALUES: [f64; 5] = [0.0, 1.0, 2.0, 5.0, 10.0];

fn sym(nbar: f64, delta: f64) -> VParams {
    VParams::symmetric(nbar, delta).unwrap()
}

fn with_gd(nbar: f64, delta: f64, gamma_d: f64) -> VParams {
    VParams::new(1.0, 1.0, nbar, delta, 0.0, gamma_d).unwrap()
}

/// Relative deviation with the larger magnitude as the scale.
fn rel_dev(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Criterion 1: the strong-pumping headline value of the stationary
/// coherence, and the closed form evaluating in far under a millisecond.
#[test]
fn criterion_01_headline_stationary_coherence() {
    // At nbar = 10^3 and delta = 10 (unit gamma): r = 1000, u = r + 1 = 1001,
    //   D = (3r + 1)(delta^2 + u^2) - 3 r^2 u
    //     = 3001 * 1_002_101 - 3_003_000_000 = 4_305_101,
    //   rho^R = r * u / D = 1_001_000 / 4_305_101 = 0.232515...,
    // the "reaching 23 percent" strong-pumping headline.
    const EXACT: f64 = 1_001_000.0 / 4_305_101.0;
    let params = sym(1e3, 10.0);
    let ss = closed_form(&params).unwrap();
    assert!(
        (ss.re_ab - EXACT).abs() <= 1e-15,
        "rho^R = {} deviates from the exact rational {}",
        ss.re_ab,
        EXACT
    );
    assert!(
        (ss.re_ab - 0.23).abs() <= 0.005,
        "rho^R = {} misses the 23% band",
        ss.re_ab
    );

    // Timing: best of three to shrug off scheduler noise; the closed form is
    // a dozen arithmetic operations plus a residual check.
    let elapsed = (0..3)
        .map(|_| {
            let t0 = Instant::now();
            black_box(closed_form(black_box(&params)).unwrap());
            t0.elapsed()
        })
        .min()
        .unwrap();
    assert!(
        elapsed < Duration::from_millis(1),
        "closed form took {elapsed:?}"
    );
    println!("criterion 1 (headline stationary coherence): PASS");
}

/// Criterion 2: three independent routes to the steady state (closed form,
/// dense linear solve, long-time integration from the ground state) agree to
/// relative 1e-8 on all three state components over the full grid.
#[test]
fn criterion_02_steady_state_oracle_triangle() {
    const REL: f64 = 1e-8;
    let t0 = Instant::now();
    let ground = DensityState::ground();
    let mut worst = 0.0f64;
    for &gamma_d in &GAMMA_D_VALUES {
        for &nbar in &nbar_grid() {
            for &delta in &delta_grid() {
                let params = with_gd(nbar, delta, gamma_d);
                let cf = closed_form(&params).unwrap();
                let gen = Generator::symmetric(&params).unwrap();
                let lin = solve_linear(&gen).unwrap();
                // A relative target on the smallest component needs an
                // absolute integration budget proportional to it.  The
                // closed form supplies only that scale; the integration
                // still starts from the ground state with no knowledge of
                // the answer.
                let min_cf = cf.rho_aa.abs().min(cf.re_ab.abs()).min(cf.im_ab.abs());
                let opts = PropagateOptions {
                    rel_tol: 1e-11,
                    abs_tol: (1e-13 * min_cf).clamp(1e-21, 1e-13),
                    n_points: 2,
                };
                let series = propagate_to_steady(&gen, &ground, &opts).unwrap();
                let end = series.final_state();
                for (name, a, b, c) in [
                    ("rho_aa", cf.rho_aa, lin.rho_aa, end.rho_aa),
                    ("re_ab", cf.re_ab, lin.re_ab, end.re_ab),
                    ("im_ab", cf.im_ab, lin.im_ab, end.im_ab),
                ] {
                    let dev = rel_dev(a, b).max(rel_dev(a, c)).max(rel_dev(b, c));
                    worst = worst.max(dev);
                    assert!(
                        dev <= REL,
                        "{name} disagrees at nbar={nbar} delta={delta} gamma_d={gamma_d}: \
                         closed {a}, linear {b}, propagated {c}"
                    );
                }
            }
        }
    }
    let elapsed = t0.elapsed();
    assert!(
        elapsed < Duration::from_secs(60),
        "oracle triangle took {elapsed:?}"
    );
    println!(
        "criterion 2 (steady-state oracle triangle, worst pairwise deviation {worst:.2e}): PASS"
    );
}

/// Criterion 3: the two stationary identities hold to 1e-12 over the grid:
/// the fractional population deficit below the canonical value equals rho^R,
/// and the quadrature coherence is locked to the in-phase one through
/// rho^I = -delta/u * rho^R with u = r + gamma + gamma_d.
#[test]
fn criterion_03_stationary_identities() {
    const TOL: f64 = 1e-12;
    for &gamma_d in &GAMMA_D_VALUES {
        for &nbar in &nbar_grid() {
            for &delta in &delta_grid() {
                let params = with_gd(nbar, delta, gamma_d);
                let resid = population_coherence_identity(&params).unwrap();
                assert!(
                    resid <= TOL,
                    "population-coherence identity broken at nbar={nbar} delta={delta} \
                     gamma_d={gamma_d}: residual {resid}"
                );
                // Checked on the linear-solve oracle so the relation is not
                // satisfied merely by construction.
                let lin = solve_linear(&Generator::symmetric(&params).unwrap()).unwrap();
                let u = nbar + 1.0 + gamma_d;
                let resid = (lin.im_ab + delta / u * lin.re_ab).abs();
                assert!(
                    resid <= TOL,
                    "phase-locking identity broken at nbar={nbar} delta={delta} \
                     gamma_d={gamma_d}: residual {resid}"
                );
            }
        }
    }
    println!("criterion 3 (stationary identities): PASS");
}

/// Criterion 4: the rational coherence-to-population ratio reproduces the
/// closed-form ratio to rounding accuracy, tends to 1 as the splitting
/// closes, and stays within (0, 1] over the whole grid.
#[test]
fn criterion_04_coherence_to_population_ratio() {
    // "Exactly" at double precision: the two expressions differ only in the
    // order of a handful of roundings, so a few ulp of slack suffices.
    const REL: f64 = 1e-13;
    for &gamma_d in &GAMMA_D_VALUES {
        for &nbar in &nbar_grid() {
            for &delta in &delta_grid() {
                let params = with_gd(nbar, delta, gamma_d);
                let c = c_ratio(&params).unwrap();
                let ratio = closed_form(&params).unwrap().coherence_ratio();
                assert!(
                    rel_dev(c, ratio) <= REL,
                    "C mismatch at nbar={nbar} delta={delta} gamma_d={gamma_d}: {c} vs {ratio}"
                );
                assert!(
                    c > 0.0 && c <= 1.0,
                    "C out of (0, 1] at nbar={nbar} delta={delta} gamma_d={gamma_d}: {c}"
                );
            }
        }
    }
    // Degenerate limit: exactly 1 at delta = 0, approached quadratically
    // from below (1 - C = delta^2 / (delta^2 + gamma u), u = 2 at nbar = 1).
    assert_eq!(c_ratio(&sym(1.0, 0.0)).unwrap(), 1.0);
    let mut prev_gap = f64::INFINITY;
    for k in 1..=6 {
        let delta = 10f64.powi(-k);
        let gap = 1.0 - c_ratio(&sym(1.0, delta)).unwrap();
        assert!(gap > 0.0 && gap < prev_gap, "gap must shrink monotonically");
        // One epsilon of slack: near C = 1 the gap is quantized by the
        // rounding of C itself.
        assert!(
            gap <= delta * delta / 2.0 + f64::EPSILON,
            "gap {gap} too large at delta={delta}"
        );
        prev_gap = gap;
    }
    assert!(1.0 - c_ratio(&sym(1.0, 1e-6)).unwrap() <= 1e-12);
    println!("criterion 4 (coherence-to-population ratio): PASS");
}

/// Criterion 5: above the underdamping threshold the coherence is maximized
/// at gamma_d = delta - r - gamma (grid argmax within 0.02 of the analytic
/// root); below it the coherence decreases monotonically and no optimum is
/// reported.
#[test]
fn criterion_05_dephasing_enhanced_coherence() {
    const STEP: f64 = 0.01;
    const LOC_TOL: f64 = 0.02;
    for &(delta, nbar) in &[(10.0, 0.01), (10.0, 1.0), (20.0, 0.01)] {
        let predicted = optimal_dephasing(&sym(nbar, delta))
            .unwrap()
            .expect("above threshold an optimum must exist");
        assert!((predicted - (delta - nbar - 1.0)).abs() <= 1e-12);
        let n = (2.0 * delta / STEP).round() as usize;
        let (mut arg, mut best) = (0.0, f64::NEG_INFINITY);
        for i in 0..=n {
            let gamma_d = i as f64 * STEP;
            let v = closed_form(&with_gd(nbar, delta, gamma_d)).unwrap().re_ab;
            if v > best {
                arg = gamma_d;
                best = v;
            }
        }
        assert!(
            (arg - predicted).abs() <= LOC_TOL,
            "argmax {arg} vs analytic optimum {predicted} at delta={delta} nbar={nbar}"
        );
        let undephased = closed_form(&sym(nbar, delta)).unwrap().re_ab;
        assert!(
            best > undephased,
            "dephasing must enhance the coherence at delta={delta}"
        );
    }
    for &delta in &[0.1, 0.5] {
        let nbar = 0.01;
        assert!(optimal_dephasing(&sym(nbar, delta)).unwrap().is_none());
        let mut prev = f64::INFINITY;
        for i in 0..=2000 {
            let gamma_d = i as f64 * STEP;
            let v = closed_form(&with_gd(nbar, delta, gamma_d)).unwrap().re_ab;
            assert!(
                v < prev,
                "coherence must decrease monotonically, gamma_d={gamma_d}"
            );
            prev = v;
        }
    }
    println!("criterion 5 (dephasing-enhanced coherence): PASS");
}

/// Criterion 6: the analytic derivatives of the stationary coherence match
/// central finite differences of the closed form to relative 1e-6 at 50
/// seeded random grid points, with the monotonicity signs strict.
#[test]
fn criterion_06_coherence_derivatives() {
    const REL: f64 = 1e-6;
    // Central differences with h = 1e-4 * scale: truncation is ~h^2 against
    // O(1) curvature scales and the subtractive rounding noise is
    // ~eps |f| / (2 h |f'|); both sit well inside the 1e-6 budget
    // everywhere on the grid.
    let re_ab = |nbar: f64, delta: f64| closed_form(&sym(nbar, delta)).unwrap().re_ab;
    let nbars = nbar_grid();
    let deltas = delta_grid();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..50 {
        let nbar = nbars[rng.gen_range(0..nbars.len())];
        let delta = deltas[rng.gen_range(0..deltas.len())];
        let d = derivatives(&sym(nbar, delta)).unwrap();
        assert!(
            d.wrt_nbar > 0.0,
            "strictly increasing in pumping at nbar={nbar} delta={delta}"
        );
        assert!(
            d.wrt_delta < 0.0,
            "strictly decreasing in splitting at nbar={nbar} delta={delta}"
        );

        let h = 1e-4 * nbar.max(1.0);
        let fd = (re_ab(nbar + h, delta) - re_ab(nbar - h, delta)) / (2.0 * h);
        assert!(
            (d.wrt_nbar - fd).abs() <= REL * d.wrt_nbar.abs(),
            "d/dnbar mismatch at nbar={nbar} delta={delta}: analytic {} vs fd {fd}",
            d.wrt_nbar
        );
        let h = 1e-4 * delta.max(1.0);
        let fd = (re_ab(nbar, delta + h) - re_ab(nbar, delta - h)) / (2.0 * h);
        assert!(
            (d.wrt_delta - fd).abs() <= REL * d.wrt_delta.abs(),
            "d/ddelta mismatch at nbar={nbar} delta={delta}: analytic {} vs fd {fd}",
            d.wrt_delta
        );
    }
    println!("criterion 6 (coherence derivatives vs central differences): PASS");
}

/// Criterion 7: the two-bath transport generator with the left bath fully
/// polarized and the right bath empty reduces to the one-bath generator to
/// 1e-14 elementwise (bit-exact in practice) for 20 seeded random draws, and
/// the stationary heat flux at nbar = 1, delta = 1, g = 1/2 equals -1/7.
#[test]
fn criterion_07_transport_reduction_and_flux() {
    const DEV_TOL: f64 = 1e-14;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for draw in 0..20 {
        let nbar = 10f64.powf(rng.gen_range(-3.0..3.0));
        let delta = 10f64.powf(rng.gen_range(-2.0..2.0));
        let gamma_a = rng.gen_range(0.25..4.0);
        let gamma_b = rng.gen_range(0.25..4.0);
        let params = VParams::new(gamma_a, gamma_b, nbar, delta, 0.0, 0.0).unwrap();
        let tp = TwoBathParams::from_vsystem(&params, 100.0).unwrap();
        let tg = build_transport_generator(&tp).unwrap();
        let vg = Generator::general(&params).unwrap();
        let mut dev = 0.0f64;
        for (a, b) in tg.a_matrix().iter().zip(vg.a_matrix().iter()) {
            dev = dev.max((a - b).abs());
        }
        for (a, b) in tg.drive().iter().zip(vg.drive().iter()) {
            dev = dev.max((a - b).abs());
        }
        assert!(
            dev <= DEV_TOL,
            "draw {draw} (nbar={nbar} delta={delta} gammas {gamma_a}/{gamma_b}): \
             generators deviate by {dev}"
        );
    }

    // Steady heat flux through the coupled pair, J = 4 g Im rho_ab, with one
    // energy quantum per transferred excitation.
    const FLUX_TOL: f64 = 1e-12;
    let tp = TwoBathParams::from_vsystem(&sym(1.0, 1.0), 100.0).unwrap();
    let tg = build_transport_generator(&tp).unwrap();
    let ss = solve_linear(&tg).unwrap();
    let flux = heat_flux(&ss.density_state(), tp.g);
    assert!(
        (flux - (-1.0 / 7.0)).abs() <= FLUX_TOL,
        "flux {flux} differs from -1/7"
    );
    println!("criterion 7 (transport reduction and heat flux): PASS");
}

/// Machine-exact sphere quadrature of the angular emission pattern.  The
/// integrand is a quadratic polynomial in cos(theta) and a second-harmonic
/// trigonometric polynomial in phi, so 5-node Simpson in u = cos(theta)
/// crossed with an 8-node periodic trapezoid in phi integrates it exactly;
/// the quadrature is an independent oracle, not an approximation.
fn sphere_integral(state: &DensityState, i0: f64) -> f64 {
    let nodes = [-1.0f64, -0.5, 0.0, 0.5, 1.0];
    let weights = [1.0, 4.0, 2.0, 4.0, 1.0];
    let mut total = 0.0;
    for j in 0..8 {
        let phi = std::f64::consts::TAU * j as f64 / 8.0;
        let mut inner = 0.0;
        for (&u, w) in nodes.iter().zip(weights) {
            let cfg = EmissionConfig::new(i0, u.acos(), phi).unwrap();
            inner += w * angular_intensity(state, &cfg);
        }
        total += inner * (0.5 / 3.0) * (std::f64::consts::TAU / 8.0);
    }
    total
}

/// Criterion 8: fluorescence closure.  The sphere quadrature of the angular
/// pattern matches the total emission rate for 100 random valid states; the
/// relative intensity suppression, the stationary coherence, and the
/// canonical population deficit form an exact triple; and weak pumping keeps
/// the suppression below one percent for every splitting.
#[test]
fn criterion_08_fluorescence_closure() {
    const REL: f64 = 1e-8;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let rho_aa = rng.gen_range(0.01..0.5);
        // Stay strictly inside the positivity disc so rounding cannot tip
        // the state invalid.
        let mag = rng.gen_range(0.0..1.0f64).sqrt() * rho_aa * 0.999;
        let angle = rng.gen_range(0.0..std::f64::consts::TAU);
        let state = DensityState::new(
            1.0 - 2.0 * rho_aa,
            rho_aa,
            rho_aa,
            mag * angle.cos(),
            mag * angle.sin(),
        )
        .unwrap();
        let total = total_intensity(&state, 1.0).unwrap();
        let quad = sphere_integral(&state, 1.0);
        assert!(
            rel_dev(total, quad) <= REL,
            "sphere closure broken: {total} vs {quad}"
        );
    }

    // Triple equality, exact for arbitrary pure dephasing.
    const TRIPLE_TOL: f64 = 1e-12;
    for &gamma_d in &[0.0, 1.0, 5.0] {
        for &nbar in &nbar_grid() {
            for &delta in &delta_grid() {
                let params = with_gd(nbar, delta, gamma_d);
                let rid = relative_intensity_difference(&params).unwrap();
                let ss = closed_form(&params).unwrap();
                let canonical = canonical_population(&params).unwrap();
                let deficit = (canonical - ss.rho_aa) / canonical;
                assert!((rid - ss.re_ab).abs() <= TRIPLE_TOL);
                assert!((rid - deficit).abs() <= TRIPLE_TOL);
                assert!((deficit - ss.re_ab).abs() <= TRIPLE_TOL);
            }
        }
    }

    // Weak pumping: the suppression peaks at delta = 0 and decreases
    // monotonically in the splitting (criterion 6's negative derivative), so
    // the degenerate point plus a wide log grid covers every delta.
    let suppression = |delta: f64| relative_intensity_difference(&sym(0.01, delta)).unwrap();
    let mut prev = suppression(0.0);
    assert!(
        prev < 0.01,
        "suppression {prev} at delta=0 must stay below 1%"
    );
    for k in -6..=6 {
        for &m in &[1.0, 2.0, 5.0] {
            let delta = m * 10f64.powi(k);
            let v = suppression(delta);
            assert!(
                v < 0.01,
                "suppression {v} at delta={delta} must stay below 1%"
            );
            assert!(v <= prev, "suppression must not grow with the splitting");
            prev = v;
        }
    }
    println!("criterion 8 (fluorescence closure): PASS");
}

/// Criterion 9: along all four standard transient panels the reconstructed
/// density state stays physical (unit trace, population bounds, coherence
/// inside the positivity disc) to 1e-8, and the exported panel files carry
/// the closed-form stationary values in their steady-state columns exactly
/// (after the shortest-round-trip CSV encoding).
#[test]
fn criterion_09_transient_panel_integrity() {
    const TOL: f64 = 1e-8;
    let panels = [
        (FigureId::Fig2a, 1e-3, 0.1, 60.0),
        (FigureId::Fig2b, 1e-3, 10.0, 60.0),
        (FigureId::Fig2c, 1e3, 1e2, 0.05),
        (FigureId::Fig2d, 1e2, 2e2, 0.5),
    ];
    for &(_, nbar, delta, t_end) in &panels {
        let gen = Generator::symmetric(&sym(nbar, delta)).unwrap();
        let opts = PropagateOptions {
            n_points: 2001,
            ..PropagateOptions::default()
        };
        let series = propagate(&gen, &DensityState::ground(), t_end, &opts).unwrap();
        for (t, state) in series.times().iter().zip(series.states()) {
            state.check(TOL).unwrap_or_else(|e| {
                panic!("invalid state at t={t} (nbar={nbar} delta={delta}): {e}")
            });
        }
    }

    let dir = tempfile::tempdir().unwrap();
    for &(id, nbar, delta, _) in &panels {
        let files = figure_driver(id, dir.path()).unwrap();
        assert_eq!(files.len(), 1);
        let text = std::fs::read_to_string(&files[0]).unwrap();
        let cf = closed_form(&sym(nbar, delta)).unwrap();
        let mut lines = text.lines();
        let meta = lines.next().unwrap();
        assert!(
            meta.starts_with('#'),
            "metadata line missing in {}",
            files[0].display()
        );
        let header: Vec<&str> = lines.next().unwrap().split(',').collect();
        let col = |name: &str| header.iter().position(|c| *c == name).unwrap();
        let (i_ss_aa, i_ss_re, i_ss_im) = (col("ss_rho_aa"), col("ss_re_ab"), col("ss_im_ab"));
        let mut rows = 0;
        for line in lines {
            let fields: Vec<f64> = line
                .split(',')
                .map(|f| f.parse().expect("numeric CSV field"))
                .collect();
            assert_eq!(fields[i_ss_aa], cf.rho_aa);
            assert_eq!(fields[i_ss_re], cf.re_ab);
            assert_eq!(fields[i_ss_im], cf.im_ab);
            rows += 1;
        }
        assert_eq!(rows, 2001);
    }
    println!("criterion 9 (transient panel integrity): PASS");
}

/// Criterion 10: sweeps are deterministic; repeated runs and the serial
/// fallback produce byte-identical CSV, in memory and through the file
/// writer.
#[test]
fn criterion_10_deterministic_sweeps() {
    let base = sym(1.0, 1.0);
    let axes = [Axis::default_nbar(), Axis::default_delta()];
    let observables = Observable::all();
    let first = run_sweep(&base, &axes, &observables).unwrap();
    let second = run_sweep(&base, &axes, &observables).unwrap();
    let serial = run_sweep_serial(&base, &axes, &observables).unwrap();
    let csv = first.to_csv();
    assert_eq!(csv, second.to_csv(), "repeated runs must be byte-identical");
    assert_eq!(
        csv,
        serial.to_csv(),
        "serial and data-parallel runs must be byte-identical"
    );

    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("first.csv"), dir.path().join("second.csv"));
    first.write_csv(&p1).unwrap();
    serial.write_csv(&p2).unwrap();
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    println!("criterion 10 (deterministic sweeps): PASS");
}
