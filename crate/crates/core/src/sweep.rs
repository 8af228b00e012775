//! Seeded random sweeps over setups and vectors. Inputs are drawn
//! sequentially from a ChaCha stream so results do not depend on the
//! execution strategy; the checks themselves run through [`Exec`].

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::general::{lemma_deg_identity, FmSetup};
use crate::lattice::{MukaiVector, SurfaceKind};
use crate::par::Exec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepParams {
    pub samples: usize,
    pub seed: u64,
    /// Upper bound for `r0`, `|d0|` and `k`.
    pub setup_bound: i64,
    /// Upper bound for `|r|`, `|d|`, `|a|`.
    pub vector_bound: i64,
}

impl Default for SweepParams {
    fn default() -> Self {
        SweepParams {
            samples: 10_000,
            seed: 0x5eed,
            setup_bound: 20,
            vector_bound: 1000,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub samples: usize,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(samples: usize, per_sample: Vec<Vec<String>>) -> Self {
        SweepReport {
            samples,
            failures: per_sample.into_iter().flatten().collect(),
        }
    }
}

/// Rejection-samples a valid setup with `r0, |d0|, k ≤ bound`.
pub fn random_setup<R: Rng>(rng: &mut R, bound: i64) -> FmSetup {
    loop {
        let kind = if rng.gen_bool(0.5) {
            SurfaceKind::K3
        } else {
            SurfaceKind::Abelian
        };
        let r0 = rng.gen_range(1..=bound);
        let d0 = rng.gen_range(-bound..=bound);
        let k = rng.gen_range(1..=bound);
        if let Ok(s) = FmSetup::new(kind, r0, d0, k) {
            return s;
        }
    }
}

pub fn random_vector<R: Rng>(rng: &mut R, bound: i64) -> MukaiVector {
    MukaiVector::new(
        rng.gen_range(-bound..=bound),
        rng.gen_range(-bound..=bound),
        rng.gen_range(-bound..=bound),
    )
}

type Sample = (FmSetup, MukaiVector, MukaiVector);

fn draw_samples(p: &SweepParams) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    (0..p.samples)
        .map(|_| {
            let s = random_setup(&mut rng, p.setup_bound);
            let v = random_vector(&mut rng, p.vector_bound);
            let w = random_vector(&mut rng, p.vector_bound);
            (s, v, w)
        })
        .collect()
}

fn check_sample((s, v, w): Sample) -> Vec<String> {
    let mut bad = Vec::new();
    let (fv, fw) = (s.fm_apply(&v), s.fm_apply(&w));
    let before = v.pairing(&w, s.source());
    let after = fv.pairing(&fw, s.target());
    if before != after {
        bad.push(format!("[{s}] pairing {v}·{w}: {before} -> {after}"));
    }
    let anchor = s.fm_apply(&s.v0_dual());
    if anchor != MukaiVector::omega() {
        bad.push(format!("[{s}] F(v0^∨) = {anchor}"));
    }
    let omega_img = s.fm_apply(&MukaiVector::omega());
    let expected = MukaiVector::new(s.r0().clone(), s.d1().clone(), s.d1() * s.d1() * s.k());
    if omega_img != expected {
        bad.push(format!("[{s}] F(ω) = {omega_img}, expected {expected}"));
    }
    let det = s.fm_matrix().determinant();
    if !det.is_one() {
        bad.push(format!("[{s}] det = {det}"));
    }
    let id = lemma_deg_identity(&s, &v);
    if !id.holds() {
        bad.push(format!(
            "[{s}] degree identity on {v}: {} / {} / {}",
            id.lhs, id.rhs, id.dual_form
        ));
    }
    let back = s.fm_inverse_apply(&fv);
    if back != v {
        bad.push(format!("[{s}] inverse round trip {v} -> {back}"));
    }
    bad
}

/// Isometry, anchor images, determinant, degree identity and inverse
/// round trip on random `(setup, v, w)` triples.
pub fn isometry_sweep(p: &SweepParams, exec: Exec) -> SweepReport {
    let samples = draw_samples(p);
    let n = samples.len();
    SweepReport::merge(n, exec.map(samples, check_sample))
}

/// For each random setup, the transforms for `d1 ± r0` agree with the
/// canonical one after a twist by `∓1`, on `vectors_per_setup` vectors.
pub fn normalization_sweep(p: &SweepParams, vectors_per_setup: usize, exec: Exec) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ 0x6e6f726d);
    let jobs: Vec<(FmSetup, Vec<MukaiVector>)> = (0..p.samples)
        .map(|_| {
            let s = random_setup(&mut rng, p.setup_bound);
            let vs = (0..vectors_per_setup)
                .map(|_| random_vector(&mut rng, p.vector_bound))
                .collect();
            (s, vs)
        })
        .collect();
    let n = jobs.len();
    let per = exec.map(jobs, |(s, vs)| {
        let mut bad = Vec::new();
        for j in [BigInt::one(), -BigInt::one()] {
            let shifted = s.shifted(&j);
            let back = -&j;
            for v in &vs {
                let lhs = shifted.fm_apply(v).twist(&back, s.target());
                let rhs = s.fm_apply(v);
                if lhs != rhs {
                    bad.push(format!("[{s}] shift {j} on {v}: {lhs} vs {rhs}"));
                }
            }
        }
        bad
    });
    SweepReport::merge(n, per)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        let p = SweepParams {
            samples: 300,
            ..Default::default()
        };
        let r = isometry_sweep(&p, Exec::default());
        assert_eq!(r.samples, 300);
        assert!(r.passed(), "{:?}", r.failures);
        assert!(normalization_sweep(&p, 4, Exec::default()).passed());
    }

    #[test]
    fn strategies_agree() {
        let p = SweepParams {
            samples: 50,
            seed: 7,
            ..Default::default()
        };
        assert_eq!(draw_samples(&p), draw_samples(&p));
        assert_eq!(
            isometry_sweep(&p, Exec::Sequential),
            isometry_sweep(&p, Exec::default())
        );
    }

    #[test]
    fn random_setups_respect_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let s = random_setup(&mut rng, 5);
            assert!(s.r0() <= &BigInt::from(5) && s.k() <= &BigInt::from(5));
        }
    }
}
