//! Integer mode sets of the compact spaces and the lattice sums over them.
//!
//! Every sum in this module is organised by shells of constant `|n|^2`. A
//! shell table records, for a set and a per-axis truncation `|n_i| <= M`, how
//! many members of the set sit on each shell. Radial summands then only need
//! to be evaluated once per shell, and the accumulation order (ascending
//! norm) is fixed independently of how the table was built.

mod regularized;
mod sums;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub use regularized::{regularized_sum_check, RegularizedDomain, RegularizedSumReport};
pub use sums::{
    closed_sum_1d, closed_sum_i0, exp_sum, exp_sum_report, tail_bound, LatticeSum, LatticeSumSpec,
    SumMode, MAX_ADAPTIVE_INDEX,
};

/// Integer mode index `n = (n_x, n_y, n_z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeVector {
    pub n_x: i64,
    pub n_y: i64,
    pub n_z: i64,
}

impl ModeVector {
    pub const fn new(n_x: i64, n_y: i64, n_z: i64) -> Self {
        Self { n_x, n_y, n_z }
    }

    /// `|n|^2` in exact integer arithmetic.
    pub fn norm_sq(&self) -> u64 {
        (self.n_x * self.n_x + self.n_y * self.n_y + self.n_z * self.n_z) as u64
    }

    pub fn norm<T: crate::Real>(&self) -> T {
        T::count(self.norm_sq()).sqrt()
    }
}

/// Mode sets entering the eigenvalue conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeSet {
    /// All of `Z^3` except the origin (3-torus).
    Z3NonZero,
    /// Axis modes `(0, 0, n_z)` with even `n_z`, origin included.
    I0,
    /// Half-turn reduced set: `n_z` even and either `n_x > 0`, or `n_x = 0`
    /// and `n_y > 0`. One representative of each `(n_x, n_y) -> (-n_x, -n_y)`
    /// pair.
    IStar,
    /// Non-zero integers on a line (circle); stored as `(n, 0, 0)`.
    ZNonZero,
}

impl ModeSet {
    pub fn contains(&self, v: &ModeVector) -> bool {
        match self {
            ModeSet::Z3NonZero => v.norm_sq() != 0,
            ModeSet::I0 => v.n_x == 0 && v.n_y == 0 && v.n_z % 2 == 0,
            ModeSet::IStar => v.n_z % 2 == 0 && (v.n_x > 0 || (v.n_x == 0 && v.n_y > 0)),
            ModeSet::ZNonZero => v.n_y == 0 && v.n_z == 0 && v.n_x != 0,
        }
    }

    pub fn dimension(&self) -> u8 {
        match self {
            ModeSet::ZNonZero => 1,
            _ => 3,
        }
    }
}

/// Lists the members of `set` with every `|n_i| <= max_index`, ordered by
/// `(|n|, n_x, n_y, n_z)`.
pub fn enumerate_modes(set: ModeSet, max_index: u32) -> Vec<ModeVector> {
    let m = max_index as i64;
    let mut out = Vec::new();
    match set {
        ModeSet::ZNonZero => {
            out.extend(
                (-m..=m)
                    .filter(|&n| n != 0)
                    .map(|n| ModeVector::new(n, 0, 0)),
            );
        }
        ModeSet::I0 => {
            out.extend(
                (-m..=m)
                    .filter(|n| n % 2 == 0)
                    .map(|n| ModeVector::new(0, 0, n)),
            );
        }
        ModeSet::Z3NonZero | ModeSet::IStar => {
            for n_x in -m..=m {
                for n_y in -m..=m {
                    for n_z in -m..=m {
                        let v = ModeVector::new(n_x, n_y, n_z);
                        if set.contains(&v) {
                            out.push(v);
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(|v| (v.norm_sq(), v.n_x, v.n_y, v.n_z));
    out
}

/// Members of a mode set sharing one value of `|n|^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shell {
    pub norm_sq: u64,
    pub count: u64,
}

/// Shell table of `set` truncated to the cube `|n_i| <= max_index`, in
/// ascending `norm_sq`. Tables are built once per `(set, max_index)` and
/// shared afterwards.
pub fn shells(set: ModeSet, max_index: u32) -> Arc<[Shell]> {
    type Cache = Mutex<HashMap<(ModeSet, u32), Arc<[Shell]>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache
        .lock()
        .expect("shell cache poisoned")
        .get(&(set, max_index))
    {
        return Arc::clone(hit);
    }
    let table: Arc<[Shell]> = build_shells(set, max_index).into();
    cache
        .lock()
        .expect("shell cache poisoned")
        .entry((set, max_index))
        .or_insert(table)
        .clone()
}

fn build_shells(set: ModeSet, max_index: u32) -> Vec<Shell> {
    let m = max_index as u64;
    let mut counts = vec![0u64; (3 * m * m + 1) as usize];
    // multiplicity of a non-negative coordinate when its sign is free
    let mult = |k: u64| if k == 0 { 1 } else { 2 };
    match set {
        ModeSet::ZNonZero => {
            for k in 1..=m {
                counts[(k * k) as usize] += 2;
            }
        }
        ModeSet::I0 => {
            for k in (0..=m).step_by(2) {
                counts[(k * k) as usize] += mult(k);
            }
        }
        ModeSet::Z3NonZero => {
            for a in 0..=m {
                for b in 0..=m {
                    let ab = a * a + b * b;
                    let w = mult(a) * mult(b);
                    for c in 0..=m {
                        counts[(ab + c * c) as usize] += w * mult(c);
                    }
                }
            }
            counts[0] = 0;
        }
        ModeSet::IStar => {
            for a in 1..=m {
                for b in 0..=m {
                    let ab = a * a + b * b;
                    let w = mult(b);
                    for c in (0..=m).step_by(2) {
                        counts[(ab + c * c) as usize] += w * mult(c);
                    }
                }
            }
            for b in 1..=m {
                for c in (0..=m).step_by(2) {
                    counts[(b * b + c * c) as usize] += mult(c);
                }
            }
        }
    }
    counts
        .into_iter()
        .enumerate()
        .filter(|&(_, count)| count > 0)
        .map(|(norm_sq, count)| Shell {
            norm_sq: norm_sq as u64,
            count,
        })
        .collect()
}
