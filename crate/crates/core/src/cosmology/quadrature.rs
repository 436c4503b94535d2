//! Globally adaptive 7/15-point Gauss-Kronrod quadrature.
#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;
use crate::Real;

// Kronrod abscissae, symmetric about 0; odd indices are the Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub(crate) struct Integral<T> {
    pub value: T,
    pub error: T,
}

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    lo: T,
    hi: T,
    value: T,
    error: T,
}

fn gauss_kronrod<T: Real>(f: &impl Fn(T) -> T, lo: T, hi: T) -> Panel<T> {
    let half = (hi - lo) / T::lit(2.0);
    let center = lo + half;
    let fc = f(center);
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for j in 0..7 {
        let dx = half * T::lit(XGK[j]);
        let pair = f(center - dx) + f(center + dx);
        kronrod = kronrod + T::lit(WGK[j]) * pair;
        if j % 2 == 1 {
            gauss = gauss + T::lit(WG[j / 2]) * pair;
        }
    }
    Panel {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Integrates `f` over `[lo, hi]`, starting from `initial_panels` equal
/// panels and bisecting the worst panel until the summed error estimate is
/// below `rel_tol |I|`.
pub(crate) fn integrate<T: Real>(
    f: impl Fn(T) -> T,
    lo: T,
    hi: T,
    initial_panels: usize,
    rel_tol: T,
    max_panels: usize,
) -> Result<Integral<T>> {
    let n = initial_panels.max(1);
    let width = (hi - lo) / T::count(n as u64);
    let mut panels: Vec<Panel<T>> = (0..n)
        .map(|i| {
            let a = lo + width * T::count(i as u64);
            let b = if i + 1 == n { hi } else { a + width };
            gauss_kronrod(&f, a, b)
        })
        .collect();
    loop {
        let value: T = panels
            .iter()
            .map(|p| p.value)
            .collect::<CompensatedSum<T>>()
            .value();
        let error: T = panels
            .iter()
            .map(|p| p.error)
            .collect::<CompensatedSum<T>>()
            .value();
        if error <= rel_tol * value.abs() {
            return Ok(Integral { value, error });
        }
        if panels.len() >= max_panels {
            return Err(Error::QuadratureNotConverged {
                error: (error / value.abs()).as_f64(),
                requested: rel_tol.as_f64(),
            });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|a, b| {
                a.1.error
                    .partial_cmp(&b.1.error)
                    .expect("finite error estimates")
            })
            .expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = p.lo + (p.hi - p.lo) / T::lit(2.0);
        if !(mid > p.lo && mid < p.hi) {
            return Err(Error::QuadratureNotConverged {
                error: (error / value.abs()).as_f64(),
                requested: rel_tol.as_f64(),
            });
        }
        panels.push(gauss_kronrod(&f, p.lo, mid));
        panels.push(gauss_kronrod(&f, mid, p.hi));
        // keep the summation order independent of the refinement history
        panels.sort_by(|a, b| a.lo.partial_cmp(&b.lo).expect("finite panel bounds"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn weights_integrate_constants() {
        let k: f64 = WGK[7] + 2.0 * WGK[..7].iter().sum::<f64>();
        let g: f64 = WG[3] + 2.0 * WG[..3].iter().sum::<f64>();
        assert_relative_eq!(k, 2.0, max_relative = 1e-15);
        assert_relative_eq!(g, 2.0, max_relative = 1e-15);
    }

    #[test]
    fn exact_for_high_degree_polynomials() {
        // Kronrod-15 is exact through degree 22
        let p = gauss_kronrod(&|x: f64| x.powi(22) + 3.0 * x.powi(7), 0.0, 1.0);
        assert_relative_eq!(p.value, 1.0 / 23.0 + 3.0 / 8.0, max_relative = 1e-14);
    }

    #[test]
    fn adaptive_peaked_integrand() {
        let r = integrate(|x: f64| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1, 1e-12, 2000).unwrap();
        let exact = 2.0 * 100.0 * (100.0f64).atan();
        assert_relative_eq!(r.value, exact, max_relative = 1e-12);
        assert!(r.error <= 1e-12 * r.value);
    }

    #[test]
    fn reports_failure_when_panels_run_out() {
        let r = integrate(|x: f64| x.abs().sqrt().recip(), -1.0, 1.0, 1, 1e-15, 8);
        assert!(matches!(r, Err(Error::QuadratureNotConverged { .. })));
    }
}
