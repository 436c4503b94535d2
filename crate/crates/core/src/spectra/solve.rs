//! Residuals of the eigenvalue conditions and the bracketed solver.
//!
//! The public residuals take `s` directly. Internally the solver works with
//! the excess `d = s - 1`, where each condition reads `d = g(d)` with `g`
//! positive and decreasing:
//!
//! - circle: `g = 2 / (e^x - 1)`
//! - E1: `g = S_Z3(x) / rho`
//! - E2: `g = (-ln(1 - e^{-2x}) + 2 S_I*(x)) / rho`
//!
//! with `x = (1 + d) rho`. Writing the conditions this way keeps full relative
//! precision in `d` even when it is far below the spacing of floats near 1.

use super::root::{refine, Eval};
use super::{asymptotic_ln_eta, CouplingScale, EnergyResult, SolverReport, Topology};
use crate::error::{require_positive, Error, Result};
use crate::lattice::{closed_sum_i0, exp_sum, exp_sum_report, LatticeSumSpec, ModeSet};
use crate::Real;

/// Smallest box ratio the solver accepts.
pub const MIN_RHO: f64 = 1e-3;

const MAX_ITERATIONS: usize = 300;
const MAX_BRACKET_DOUBLINGS: usize = 200;

/// `s - coth(s rho / 2)`, the circle condition.
pub fn residual_circle<T: Real>(s: T, rho: T) -> T {
    s - (s * rho / T::lit(2.0)).tanh().recip()
}

/// `s - S_Z3(s rho) / rho - 1`, the 3-torus condition.
pub fn residual_e1<T: Real>(s: T, rho: T, spec: &LatticeSumSpec) -> Result<T> {
    require_positive("s", s)?;
    require_positive("rho", rho)?;
    Ok(s - exp_sum(ModeSet::Z3NonZero, s * rho, spec)? / rho - T::one())
}

/// `s + ln(1 - e^{-2 s rho}) / rho - 2 S_I*(s rho) / rho - 1`, the half-turn
/// condition.
pub fn residual_e2<T: Real>(s: T, rho: T, spec: &LatticeSumSpec) -> Result<T> {
    require_positive("s", s)?;
    require_positive("rho", rho)?;
    let x = s * rho;
    let istar = exp_sum(ModeSet::IStar, x, spec)?;
    if (-(x + x)).exp() == T::zero() && istar == T::zero() {
        return Err(Error::ArgumentUnderflow { rho: rho.as_f64() });
    }
    let two = T::lit(2.0);
    Ok(s - closed_sum_i0(x)? / rho - two * istar / rho - T::one())
}

/// Residual `d - g(d)` in excess form. Truncated adaptive sums are lower
/// bounds, so an uncertified evaluation is passed on only when it already
/// proves the residual negative.
fn excess_residual<T: Real>(
    topology: Topology,
    rho: T,
    spec: &LatticeSumSpec,
    d: T,
) -> Result<Eval<T>> {
    let x = (T::one() + d) * rho;
    let sum = |set| -> Result<(T, bool, T, u32)> {
        let r = exp_sum_report(set, x, spec)?;
        Ok((r.value, r.certified, r.tail_bound, r.max_index))
    };
    let (g, exact, tail) = match topology {
        Topology::Circle => (T::lit(2.0) / x.exp_m1(), true, None),
        Topology::E1Torus => {
            let (v, ok, bound, m) = sum(ModeSet::Z3NonZero)?;
            (v / rho, ok, Some((bound, m)))
        }
        Topology::E2HalfTurn => {
            let (v, ok, bound, m) = sum(ModeSet::IStar)?;
            (
                (closed_sum_i0(x)? + T::lit(2.0) * v) / rho,
                ok,
                Some((bound, m)),
            )
        }
        Topology::FreeLine | Topology::FreeSpace => {
            return Err(Error::UnsupportedTopology(topology))
        }
    };
    let value = d - g;
    if !exact && value >= T::zero() {
        let (bound, max_index) = tail.expect("only lattice sums can be uncertified");
        return Err(Error::TailNotConverged {
            x: x.as_f64(),
            max_index,
            tail_bound: bound.as_f64(),
            tail_tol: spec.tail_tol,
        });
    }
    Ok(Eval { value, exact })
}

fn clamped<T: Real>(topology: Topology, ell: CouplingScale<T>, rho: T) -> EnergyResult<T> {
    let report = SolverReport {
        iterations: 0,
        residual: T::zero(),
        bracket: (T::one(), T::one()),
    };
    EnergyResult::from_excess(
        topology,
        ell,
        rho,
        T::zero(),
        asymptotic_ln_eta(topology, rho),
        true,
        report,
    )
}

/// Solves the eigenvalue condition of `topology` for a box of side
/// `box_length` (same units as `ell`).
///
/// The root is bracketed between the free value `s = 1` and a point grown
/// geometrically until the residual turns positive, then refined until the
/// bracket on `s - 1` is narrower than `tol (s - 1)`. Free spaces return
/// `s = 1` without iterating. When `rho` is so large that `s - 1` cannot be
/// represented, the result is `s = 1` with `underflow_clamped` set and the
/// analytic `ln_eta`.
pub fn solve<T: Real>(
    topology: Topology,
    ell: CouplingScale<T>,
    box_length: T,
    spec: &LatticeSumSpec,
    tol: T,
) -> Result<EnergyResult<T>> {
    require_positive("L", box_length)?;
    require_positive("tol", tol)?;
    spec.validate()?;
    let rho = box_length / ell.value();
    if !topology.is_compact() {
        let report = SolverReport {
            iterations: 0,
            residual: T::zero(),
            bracket: (T::one(), T::one()),
        };
        return Ok(EnergyResult::from_excess(
            topology,
            ell,
            rho,
            T::zero(),
            None,
            false,
            report,
        ));
    }
    if rho < T::lit(MIN_RHO) {
        return Err(Error::RhoOutOfDomain {
            rho: rho.as_f64(),
            min: MIN_RHO,
        });
    }
    if rho > T::underflow_exponent() {
        return Ok(clamped(topology, ell, rho));
    }

    let f = |d: T| excess_residual(topology, rho, spec, d);
    let lo = T::zero();
    let f_lo = f(lo)?;
    if f_lo.value >= T::zero() {
        // g(0) underflowed
        return Ok(clamped(topology, ell, rho));
    }
    // g is decreasing, so d = g(0) overshoots the root whenever g(0) is exact
    let mut lo = lo;
    let mut f_lo = f_lo;
    let mut hi = (-f_lo.value).max(T::min_positive_value());
    let mut f_hi = f(hi)?;
    let mut doublings = 0;
    while f_hi.value < T::zero() {
        if doublings == MAX_BRACKET_DOUBLINGS || !hi.is_finite() {
            return Err(Error::BracketingFailed {
                rho: rho.as_f64(),
                s_lo: (T::one() + lo).as_f64(),
                f_lo: f_lo.value.as_f64(),
                s_hi: (T::one() + hi).as_f64(),
                f_hi: f_hi.value.as_f64(),
            });
        }
        lo = hi;
        f_lo = f_hi;
        hi = hi * T::lit(2.0);
        f_hi = f(hi)?;
        doublings += 1;
    }

    let refined = refine(f, lo, f_lo, hi, f_hi, tol, MAX_ITERATIONS)?;
    if !refined.converged {
        return Err(Error::RootNotConverged {
            rho: rho.as_f64(),
            iterations: refined.iterations,
        });
    }
    let d = refined.root;
    if d == T::zero() {
        return Ok(clamped(topology, ell, rho));
    }
    let report = SolverReport {
        iterations: refined.iterations + doublings,
        residual: refined.residual,
        bracket: (T::one() + refined.lo, T::one() + refined.hi),
    };
    let ln_eta = d.ln() + (T::lit(2.0) + d).ln();
    Ok(EnergyResult::from_excess(
        topology,
        ell,
        rho,
        d,
        Some(ln_eta),
        false,
        report,
    ))
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::lattice::enumerate_modes;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const COMPACT: [Topology; 3] = [Topology::Circle, Topology::E1Torus, Topology::E2HalfTurn];

    fn unit() -> CouplingScale<f64> {
        CouplingScale::new(1.0).unwrap()
    }

    fn solve1(t: Topology, rho: f64) -> EnergyResult<f64> {
        solve(t, unit(), rho, &LatticeSumSpec::default(), 1e-13).unwrap()
    }

    fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
        assert!(f(lo) < 0.0 && f(hi) > 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn circle_frozen_roots() {
        // reference roots from an independent 50-digit bisection
        assert_relative_eq!(
            solve1(Topology::Circle, 10.0).excess,
            9.0721636781973287e-5,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            solve1(Topology::Circle, 25.0).excess,
            2.7775887711026293e-11,
            max_relative = 1e-12
        );
    }

    #[test]
    fn circle_small_box_satisfies_condition() {
        let r = solve1(Topology::Circle, 0.1);
        assert!((r.s * (r.s * 0.1 / 2.0).tanh() - 1.0).abs() < 1e-12);
        assert!(r.s > 4.0);
    }

    #[test]
    fn circle_large_box_limit() {
        let r = solve(
            Topology::Circle,
            unit(),
            10.0,
            &LatticeSumSpec::default(),
            1e-12,
        )
        .unwrap();
        let correction = 4.0 * (-10f64).exp();
        // the next order is -2 rho e^{-rho} relative to the correction
        assert_relative_eq!(r.eta_vs_free, correction, max_relative = 1e-3);
    }

    #[test]
    fn lattice_frozen_roots() {
        // reference roots from an independent 50-digit computation
        for (t, rho, excess, eta) in [
            (
                Topology::E1Torus,
                3.0,
                0.10755077377291294,
                0.22666871648497819,
            ),
            (
                Topology::E2HalfTurn,
                3.0,
                0.068482151219040297,
                0.14165410747366810,
            ),
            (
                Topology::E1Torus,
                5.0,
                0.0092781751206866932,
                0.018642434774943516,
            ),
            (
                Topology::E2HalfTurn,
                5.0,
                0.0057473661262984445,
                0.011527764469986612,
            ),
            (
                Topology::E1Torus,
                20.0,
                6.185670550004062e-10,
                1.2371341100008124e-9,
            ),
            (
                Topology::E2HalfTurn,
                30.0,
                1.2476866014202636e-14,
                2.4953732028405272e-14,
            ),
        ] {
            let r = solve1(t, rho);
            assert_relative_eq!(r.excess, excess, max_relative = 1e-9);
            assert_relative_eq!(r.eta_vs_free, eta, max_relative = 1e-12);
        }
    }

    #[test]
    fn torus_root_against_brute_force_sum() {
        let modes: Vec<f64> = enumerate_modes(ModeSet::Z3NonZero, 30)
            .iter()
            .map(|v| v.norm())
            .collect();
        let f = |s: f64| {
            let x = 3.0 * s;
            s - modes.iter().map(|n| (-x * n).exp() / n).sum::<f64>() / 3.0 - 1.0
        };
        let s = bisect(1.0, 2.0, f);
        assert_relative_eq!(solve1(Topology::E1Torus, 3.0).s, s, max_relative = 1e-13);
    }

    #[test]
    fn half_turn_root_against_grid_scan() {
        let spec = LatticeSumSpec::default();
        let f = |s: f64| residual_e2(s, 5.0, &spec).unwrap();
        let grid: Vec<f64> = (0..200).map(|i| 1.0 + i as f64 * 0.005).collect();
        let cross = grid
            .windows(2)
            .find(|w| f(w[0]) < 0.0 && f(w[1]) > 0.0)
            .unwrap();
        let s = bisect(cross[0], cross[1], f);
        let r = solve(Topology::E2HalfTurn, unit(), 5.0, &spec, 1e-12).unwrap();
        assert_relative_eq!(r.s, s, max_relative = 1e-13);
    }

    #[test]
    fn public_residuals_vanish_at_roots() {
        let spec = LatticeSumSpec::default();
        for rho in [0.3, 3.0, 12.0] {
            let c = solve1(Topology::Circle, rho);
            assert!(residual_circle(c.s, rho).abs() < 1e-12 * c.s);
            let e1 = solve1(Topology::E1Torus, rho);
            assert!(residual_e1(e1.s, rho, &spec).unwrap().abs() < 1e-12 * e1.s);
            let e2 = solve1(Topology::E2HalfTurn, rho);
            assert!(residual_e2(e2.s, rho, &spec).unwrap().abs() < 1e-12 * e2.s);
        }
    }

    #[test]
    fn residuals_increase_across_bracket() {
        // the public residuals need a certified tail at s = 1, even for tiny rho
        let spec = LatticeSumSpec::fixed(40);
        for rho in [0.05, 0.5, 3.0, 10.0] {
            for t in COMPACT {
                let r = solve1(t, rho);
                let hi = 1.0 + 2.0 * r.excess.max(1e-3);
                let values: Vec<f64> = (0..100)
                    .map(|i| {
                        let s = 1.0 + (hi - 1.0) * i as f64 / 99.0;
                        match t {
                            Topology::Circle => residual_circle(s, rho),
                            Topology::E1Torus => residual_e1(s, rho, &spec).unwrap(),
                            _ => residual_e2(s, rho, &spec).unwrap(),
                        }
                    })
                    .collect();
                assert!(values.windows(2).all(|w| w[1] > w[0]), "{t} rho = {rho}");
            }
        }
    }

    #[test]
    fn free_spaces_skip_iteration() {
        for t in [Topology::FreeLine, Topology::FreeSpace] {
            let r = solve1(t, 10.0);
            assert_eq!(r.s, 1.0);
            assert_eq!(r.eta_vs_free, 0.0);
            assert_eq!(r.solver_report.iterations, 0);
            assert_eq!(r.ln_eta, None);
        }
    }

    #[test]
    fn huge_box_is_clamped() {
        for t in COMPACT {
            let r = solve(
                t,
                CouplingScale::new(3.0).unwrap(),
                3e4,
                &LatticeSumSpec::default(),
                1e-12,
            )
            .unwrap();
            assert_eq!(r.s, 1.0);
            assert!(r.underflow_clamped);
            assert_relative_eq!(
                r.ln_eta.unwrap(),
                asymptotic_ln_eta(t, 1e4).unwrap(),
                max_relative = 1e-15
            );
        }
    }

    #[test]
    fn clamped_and_numeric_logs_meet() {
        for t in COMPACT {
            let numeric = solve1(t, 600.0);
            assert!(!numeric.underflow_clamped);
            let analytic = asymptotic_ln_eta(t, 600.0).unwrap();
            assert_relative_eq!(numeric.ln_eta.unwrap(), analytic, max_relative = 1e-6);
        }
    }

    #[test]
    fn tiny_box_domain() {
        for t in COMPACT {
            let r = solve1(t, 1e-3);
            // s^3 rho^2 ~ const in 3D, s^2 rho ~ 2 on the circle
            assert!(r.s > 40.0, "{t}: {}", r.s);
        }
        assert!(matches!(
            solve(
                Topology::E1Torus,
                unit(),
                5e-4,
                &LatticeSumSpec::default(),
                1e-12
            ),
            Err(Error::RhoOutOfDomain { .. })
        ));
    }

    #[test]
    fn asymptotic_consistency() {
        for t in COMPACT {
            for rho in [20.0, 25.0, 30.0, 35.0] {
                let full = solve1(t, rho);
                let asym = super::super::asymptotic_energy(t, unit(), rho).unwrap();
                let rel = (full.eta_vs_free - asym.eta_vs_free).abs() / asym.eta_vs_free;
                assert!(rel <= 0.05, "{t} rho = {rho}: {rel}");
            }
        }
    }

    #[test]
    fn cutoff_stability() {
        for t in [Topology::E1Torus, Topology::E2HalfTurn] {
            for rho in [5.0, 8.0, 20.0, 60.0] {
                let a = solve(t, unit(), rho, &LatticeSumSpec::fixed(20), 1e-14).unwrap();
                let b = solve(t, unit(), rho, &LatticeSumSpec::fixed(40), 1e-14).unwrap();
                assert_relative_eq!(a.e_tilde_abs, b.e_tilde_abs, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn single_precision_route() {
        let ell = CouplingScale::new(1.0f32).unwrap();
        for t in COMPACT {
            let r32 = solve(t, ell, 3.0f32, &LatticeSumSpec::default(), 1e-6).unwrap();
            let r64 = solve1(t, 3.0);
            assert_relative_eq!(r32.excess as f64, r64.excess, max_relative = 1e-4);
        }
        let clamp = solve(
            Topology::E1Torus,
            ell,
            100.0f32,
            &LatticeSumSpec::default(),
            1e-6,
        )
        .unwrap();
        assert!(clamp.underflow_clamped);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn binding_is_deepened(rho in 1e-2f64..650.0, which in 0usize..3) {
            let r = solve1(COMPACT[which], rho);
            prop_assert!(r.s >= 1.0);
            prop_assert!(r.e_tilde_abs >= 0.5);
            prop_assert!(r.excess > 0.0 && r.eta_vs_free > 0.0);
            if r.excess > 1e-15 {
                prop_assert!(r.e_tilde_abs > 0.5);
            }
        }

        #[test]
        fn scale_covariance(rho in 0.1f64..40.0, which in 0usize..3, k in 0i32..6) {
            let t = COMPACT[which];
            let kappa = 2f64.powi(k - 2);
            let base = solve1(t, rho);
            let scaled = solve(t, CouplingScale::new(kappa).unwrap(), kappa * rho, &LatticeSumSpec::default(), 1e-13).unwrap();
            prop_assert_eq!(scaled.e_tilde_abs, base.e_tilde_abs / (kappa * kappa));
        }
    }
}
