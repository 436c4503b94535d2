use super::{shells, ModeSet};
use crate::error::{require_positive, Error, Result};
use crate::sum::CompensatedSum;
use crate::Real;

/// Hard ceiling on the per-axis cutoff an adaptive sum may grow to.
pub const MAX_ADAPTIVE_INDEX: u32 = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumMode {
    /// Sum exactly the cube `|n_i| <= max_index`.
    FixedCutoff,
    /// Start from `max_index` and grow the cube until the analytic tail bound
    /// drops below `tail_tol`.
    Adaptive,
}

/// Truncation policy for the exponentially convergent mode sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSumSpec {
    pub max_index: u32,
    pub tail_tol: f64,
    pub mode: SumMode,
}

impl LatticeSumSpec {
    pub fn fixed(max_index: u32) -> Self {
        Self {
            max_index,
            tail_tol: 0.0,
            mode: SumMode::FixedCutoff,
        }
    }

    pub fn adaptive(tail_tol: f64) -> Self {
        Self {
            max_index: 20,
            tail_tol,
            mode: SumMode::Adaptive,
        }
    }

    /// Fixed mode cutoff `|n_i| <= 20`.
    pub fn cutoff_twenty() -> Self {
        Self::fixed(20)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_index == 0 {
            return Err(Error::InvalidConfig("max_index must be positive".into()));
        }
        if self.mode == SumMode::Adaptive && !(self.tail_tol > 0.0) {
            return Err(Error::NonPositiveArgument {
                name: "tail_tol",
                value: self.tail_tol,
            });
        }
        Ok(())
    }
}

impl Default for LatticeSumSpec {
    fn default() -> Self {
        Self::adaptive(1e-12)
    }
}

/// A truncated mode sum together with a bound on what was left out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSum<T> {
    pub value: T,
    pub max_index: u32,
    pub tail_bound: T,
    /// `false` when an adaptive sum hit [`MAX_ADAPTIVE_INDEX`] without
    /// reaching `tail_tol`. The value is then still a lower bound.
    pub certified: bool,
}

/// Upper bound on `sum e^{-x|n|}/|n|` over members of `set` outside the cube
/// `|n_i| <= max_index`.
///
/// In 3D every omitted mode has `|n| >= M + 1`; its unit cell lies beyond
/// `r0 = M + 1 - sqrt(3)/2`, so the remainder is dominated by
/// `K * 4 pi * int_{r0}^inf r e^{-x r} dr` with the cell-shift factor
/// `K = e^{x sqrt(3)/2} (1 + sqrt(3) / (2 (M + 1)))`.
/// On a line the remainder is bounded by a geometric series.
pub fn tail_bound<T: Real>(set: ModeSet, x: T, max_index: u32) -> T {
    let next = T::count(u64::from(max_index) + 1);
    if set.dimension() == 1 {
        let two = T::lit(2.0);
        return two * (-x * next).exp() / (next * -(-x).exp_m1());
    }
    let half_diag = T::lit(3f64.sqrt() / 2.0);
    let r0 = next - half_diag;
    let cell = (x * half_diag).exp() * (T::one() + half_diag / next);
    let four_pi = T::lit(4.0) * T::PI();
    cell * four_pi * (-x * r0).exp() * (r0 / x + T::one() / (x * x))
}

fn shell_sum<T: Real>(set: ModeSet, x: T, max_index: u32) -> T {
    let mut acc = CompensatedSum::new();
    for shell in shells(set, max_index).iter() {
        if shell.norm_sq == 0 {
            continue;
        }
        let norm = T::count(shell.norm_sq).sqrt();
        let weight = (-x * norm).exp();
        if weight == T::zero() {
            // shells are ascending, every later weight underflows too
            break;
        }
        acc.add(T::count(shell.count) * weight / norm);
    }
    acc.value()
}

/// Evaluates `sum_{n in set, n != 0} e^{-x|n|}/|n|` and reports the
/// truncation. Adaptive sums that cannot be certified come back with
/// `certified == false` instead of an error.
pub fn exp_sum_report<T: Real>(set: ModeSet, x: T, spec: &LatticeSumSpec) -> Result<LatticeSum<T>> {
    require_positive("x", x)?;
    spec.validate()?;
    let mut max_index = spec.max_index;
    let mut certified = true;
    if spec.mode == SumMode::Adaptive {
        let tol = T::lit(spec.tail_tol);
        while tail_bound(set, x, max_index) > tol {
            if max_index >= MAX_ADAPTIVE_INDEX {
                certified = false;
                break;
            }
            max_index = (max_index + (max_index / 4).max(1)).min(MAX_ADAPTIVE_INDEX);
        }
    }
    Ok(LatticeSum {
        value: shell_sum(set, x, max_index),
        max_index,
        tail_bound: tail_bound(set, x, max_index),
        certified,
    })
}

/// `sum_{n in set, n != 0} e^{-x|n|}/|n|`, truncated according to `spec`.
pub fn exp_sum<T: Real>(set: ModeSet, x: T, spec: &LatticeSumSpec) -> Result<T> {
    let report = exp_sum_report(set, x, spec)?;
    if !report.certified {
        return Err(Error::TailNotConverged {
            x: x.as_f64(),
            max_index: report.max_index,
            tail_bound: report.tail_bound.as_f64(),
            tail_tol: spec.tail_tol,
        });
    }
    Ok(report.value)
}

/// Closed form of `sum_{n_z in 2Z, n_z != 0} e^{-|n_z| x}/|n_z|`, i.e.
/// `-ln(1 - e^{-2x})`.
pub fn closed_sum_i0<T: Real>(x: T) -> Result<T> {
    require_positive("x", x)?;
    let two_x = x + x;
    if two_x < T::LN_2() {
        Ok(-(-(-two_x).exp_m1()).ln())
    } else {
        Ok(-(-(-two_x).exp()).ln_1p())
    }
}

/// Dimensionless factor `coth(x/2)` of the circle mode sum
/// `sum_n 1/((2 pi n/L)^2 + kappa^2) = L/(2 kappa) coth(kappa L/2)`, with
/// `x = kappa L`.
pub fn closed_sum_1d<T: Real>(x: T) -> Result<T> {
    require_positive("x", x)?;
    Ok((x / T::lit(2.0)).tanh().recip())
}
