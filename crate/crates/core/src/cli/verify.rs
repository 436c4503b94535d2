//! Self-checks exposed through `verify`.

use super::output::Record;
use crate::error::Result;
use crate::lattice::{closed_sum_1d, regularized_sum_check, shells, ModeSet, RegularizedDomain};
use crate::sum::CompensatedSum;

pub struct Report {
    pub header: &'static [&'static str],
    pub records: Vec<Record>,
    pub passed: bool,
}

const RESUMMATION_HEADER: &[&str] = &[
    "domain",
    "l",
    "lambda",
    "raw_sum",
    "linear_term",
    "resummed_value",
    "exponential_part",
    "residual",
    "decays",
];

/// Residuals at `lambda / 2` and `lambda`; a domain passes when the residual
/// shrinks between the two.
pub fn resummation(domains: &[RegularizedDomain], l: f64, lambda: f64) -> Result<Report> {
    let mut records = Vec::new();
    let mut passed = true;
    for &domain in domains {
        let coarse = regularized_sum_check(domain, l, lambda / 2.0)?;
        let fine = regularized_sum_check(domain, l, lambda)?;
        let decays = fine.residual.abs() < coarse.residual.abs();
        passed &= decays;
        for (r, flag) in [(coarse, None), (fine, Some(decays))] {
            records.push(
                Record::new()
                    .with("domain", domain.name())
                    .with("l", r.l)
                    .with("lambda", r.cutoff_radius)
                    .with("raw_sum", r.raw_sum)
                    .with("linear_term", r.linear_term)
                    .with("resummed_value", r.resummed_value)
                    .with("exponential_part", r.exponential_part)
                    .with("residual", r.residual)
                    .with(
                        "decays",
                        flag.map_or(super::output::Field::Null, Into::into),
                    ),
            );
        }
    }
    Ok(Report {
        header: RESUMMATION_HEADER,
        records,
        passed,
    })
}

/// `2 x sum_{n in Z} 1/((2 pi n)^2 + x^2)` summed directly up to `|n| = terms`
/// with a midpoint estimate of the remainder.
fn direct_series_1d(x: f64, terms: u64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut acc = CompensatedSum::new();
    // smallest terms first
    for n in (1..=terms).rev() {
        let k = two_pi * n as f64;
        acc.add(2.0 / (k * k + x * x));
    }
    acc.add(1.0 / (x * x));
    let tail = 2.0 / (two_pi * two_pi * (terms as f64 + 0.5));
    2.0 * x * (acc.value() + tail)
}

pub fn sum1d() -> Result<Report> {
    let mut records = Vec::new();
    let mut passed = true;
    for x in [0.5, 1.0, 2.0, 5.0] {
        let closed = closed_sum_1d(x)?;
        let series = direct_series_1d(x, 1_000_000);
        let residual = (closed - series).abs();
        let ok = residual < 1e-10;
        passed &= ok;
        records.push(
            Record::new()
                .with("x", x)
                .with("closed_form", closed)
                .with("series", series)
                .with("residual", residual)
                .with("pass", ok),
        );
    }
    Ok(Report {
        header: &["x", "closed_form", "series", "residual", "pass"],
        records,
        passed,
    })
}

fn r3_brute_force(m: u64) -> u64 {
    let r = (m as f64).sqrt() as i64 + 1;
    let mut count = 0;
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                if (a * a + b * b + c * c) as u64 == m {
                    count += 1;
                }
            }
        }
    }
    count
}

pub fn shell_counts() -> Result<Report> {
    let table = shells(ModeSet::Z3NonZero, 3);
    let mut records = Vec::new();
    let mut passed = true;
    for (m, expected) in [(1u64, 6u64), (2, 12), (3, 8), (4, 6), (5, 24)] {
        let from_table = table.iter().find(|s| s.norm_sq == m).map_or(0, |s| s.count);
        let brute = r3_brute_force(m);
        let ok = from_table == expected && brute == expected;
        passed &= ok;
        records.push(
            Record::new()
                .with("m", m)
                .with("shell_count", from_table)
                .with("brute_force", brute)
                .with("expected", expected)
                .with("pass", ok),
        );
    }
    Ok(Report {
        header: &["m", "shell_count", "brute_force", "expected", "pass"],
        records,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_approaches_coth() {
        let x = 1.0f64;
        let exact = 1.0 / (x / 2.0).tanh();
        assert!((direct_series_1d(x, 1000) - exact).abs() < 1e-8);
    }

    #[test]
    fn checks_pass() {
        assert!(sum1d().unwrap().passed);
        assert!(shell_counts().unwrap().passed);
        assert!(
            resummation(&[RegularizedDomain::FullE1], 1.0, 60.0)
                .unwrap()
                .passed
        );
    }
}
