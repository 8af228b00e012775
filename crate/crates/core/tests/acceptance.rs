//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fmlattice::abelian::classify_section2;
use fmlattice::catalog::{example1_family, example2_k3};
use fmlattice::general::{reflection, theorem_map, FmSetup, TheoremCase};
use fmlattice::lattice::{MukaiVector, Surface, SurfaceKind};
use fmlattice::par::Exec;
use fmlattice::sweep::{isometry_sweep, normalization_sweep, SweepParams};

type Outcome = Result<String, String>;

fn v(r: i64, d: i64, a: i64) -> MukaiVector {
    MukaiVector::new(r, d, a)
}

fn within(limit: Duration, elapsed: Duration) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:?}, limit {limit:?}"))
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: expected {want:?}, got {got:?}"))
    }
}

fn example2_end_to_end() -> Outcome {
    let t0 = Instant::now();
    let k3 = Surface::k3(12).map_err(|e| e.to_string())?;
    let setup = FmSetup::new(SurfaceKind::K3, 2, -1, 3).map_err(|e| e.to_string())?;
    let t = theorem_map(&setup, &v(1, 1, 3)).map_err(|e| e.to_string())?;
    expect("case", t.case, TheoremCase::Fm)?;
    expect("target", t.canonical_image().cloned(), Some(v(3, -1, 1)))?;
    let target = t.canonical_image().unwrap().clone();
    let back = reflection(&target, &v(1, 0, 1), &k3)
        .and_then(|w| w.canonical_form(&k3))
        .map_err(|e| e.to_string())?
        .vector;
    expect("reflected canonical", back.clone(), v(1, 1, 3))?;
    for end in [&v(1, 1, 3), &back] {
        expect(
            "hilbert_index",
            end.hilbert_index(&k3),
            Some(BigInt::from(4)),
        )?;
        expect(
            "moduli_dim",
            end.moduli_dim(&k3).map_err(|e| e.to_string())?,
            BigInt::from(8),
        )?;
    }
    let replay = example2_k3().map_err(|e| e.to_string())?;
    expect("catalog target", replay.target_vector, v(1, 1, 3))?;
    let elapsed = t0.elapsed();
    within(Duration::from_secs(1), elapsed)?;
    Ok(format!(
        "FM (3,-1,1), reflected (1,1,3), Hilb^4, dim 8 in {elapsed:?}"
    ))
}

fn example1_sweep() -> Outcome {
    let t0 = Instant::now();
    let mut cases = 0;
    for r0 in 2..=6i64 {
        for s in 1..=5i64 {
            for n in (1..s * r0).filter(|&n| num_integer::gcd(r0, n) == 1) {
                let e = example1_family(SurfaceKind::K3, r0, n, s).map_err(|e| e.to_string())?;
                let tag = format!("(r0,n,s)=({r0},{n},{s})");
                expect(&format!("{tag} <v^2>"), e.v_sq, BigInt::from(2 * s))?;
                expect(&format!("{tag} <v,v0^dual>"), e.p, BigInt::from(n))?;
                expect(&format!("{tag} case"), e.verdict.case, TheoremCase::Fm)?;
                cases += 1;
            }
        }
    }
    let elapsed = t0.elapsed();
    within(Duration::from_secs(1), elapsed)?;
    Ok(format!("{cases} cases in {elapsed:?}"))
}

/// Criteria 3, 4 and the inverse half of 7 share one sweep; every sample
/// checks isometry, anchors, determinant, the degree identity and the
/// inverse round trip.
fn isometry_suite() -> (Outcome, Outcome, Outcome) {
    let p = SweepParams::default();
    let t0 = Instant::now();
    let report = isometry_sweep(&p, Exec::default());
    let elapsed = t0.elapsed();
    let pick = |needle: &[&str]| -> Vec<&String> {
        report
            .failures
            .iter()
            .filter(|f| needle.iter().any(|n| f.contains(n)))
            .collect()
    };
    let summarize = |fails: Vec<&String>, ok: String| -> Outcome {
        match fails.first() {
            None => Ok(ok),
            Some(first) => Err(format!("{} failures, first: {first}", fails.len())),
        }
    };
    let iso = summarize(
        pick(&["pairing", "F(v0^∨)", "F(ω)", "det"]),
        format!("{} samples in {elapsed:?}", report.samples),
    )
    .and_then(|msg| {
        if report.samples < 10_000 {
            return Err(format!("only {} samples", report.samples));
        }
        within(Duration::from_secs(10), elapsed).map(|()| msg)
    });
    let deg = summarize(
        pick(&["degree identity"]),
        format!("{} samples", report.samples),
    );
    let inv = summarize(
        pick(&["inverse round trip"]),
        format!("{} samples", report.samples),
    );
    (iso, deg, inv)
}

fn normalization() -> Outcome {
    let p = SweepParams {
        samples: 1000,
        ..Default::default()
    };
    let r = normalization_sweep(&p, 10, Exec::default());
    match r.failures.first() {
        None => Ok(format!("{} setups x 2 shifts x 10 vectors", r.samples)),
        Some(f) => Err(format!("{} failures, first: {f}", r.failures.len())),
    }
}

fn degeneration() -> Outcome {
    for kind in [SurfaceKind::Abelian, SurfaceKind::K3] {
        for k in 1..=20i64 {
            let s = FmSetup::new(kind, 1, 0, k).map_err(|e| e.to_string())?;
            for probe in [v(1, 0, 0), v(0, 1, 0), v(0, 0, 1), v(7, -3, 11)] {
                let want = MukaiVector::new(probe.a.clone(), -&probe.d, probe.r.clone());
                expect(&format!("{kind} k={k} F{probe}"), s.fm_apply(&probe), want)?;
            }
        }
    }
    let ab = Surface::abelian(4).map_err(|e| e.to_string())?;
    for (input, want) in [
        (v(1, 1, 2), v(2, -1, 1)),
        (v(1, 1, 1), v(1, 1, 1)),
        (v(3, 1, -1), v(1, 1, -3)),
    ] {
        let c = classify_section2(&input, &ab).map_err(|e| e.to_string())?;
        expect(&format!("classify2 {input}"), c.image, Some(want))?;
    }
    Ok("k in [1,20] on both kinds, three classifier images".into())
}

fn chern_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc4e2);
    for i in 0..10_000 {
        let kind = if i % 2 == 0 {
            SurfaceKind::K3
        } else {
            SurfaceKind::Abelian
        };
        let s = Surface::new(kind, 2 * rng.gen_range(1..=50i64)).map_err(|e| e.to_string())?;
        let (rank, c1, c2) = (
            BigInt::from(rng.gen_range(-1000..=1000i64)),
            BigInt::from(rng.gen_range(-1000..=1000i64)),
            BigInt::from(rng.gen_range(-100_000..=100_000i64)),
        );
        let c = MukaiVector::from_chern(rank.clone(), c1.clone(), c2.clone(), &s).to_chern(&s);
        expect(
            &format!("chern {rank},{c1},{c2} on {kind}"),
            (c.rank, c.c1, c.c2),
            (rank, c1, c2),
        )?;
    }
    Ok("10000 triples".into())
}

fn verify_paper_cli() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_fmlattice");
    let clean = Command::new(bin)
        .arg("verify-paper")
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&clean.stdout);
    let listed = stdout.lines().filter(|l| l.starts_with("PASS ")).count();
    if clean.status.code() != Some(0) || stdout.lines().any(|l| l.starts_with("FAIL")) {
        return Err(format!(
            "clean run exited {:?}:\n{stdout}",
            clean.status.code()
        ));
    }
    if listed < 10 {
        return Err(format!("only {listed} checks listed"));
    }
    let corrupt = Command::new(bin)
        .args(["verify-paper", "--override", "setup(2,-1,3) d1,l=1,-3"])
        .output()
        .map_err(|e| e.to_string())?;
    let err = String::from_utf8_lossy(&corrupt.stderr);
    let diff = "FAIL setup(2,-1,3) d1,l: expected 1,-3, got 1,-2";
    if corrupt.status.code() == Some(0) || !err.contains(diff) {
        return Err(format!(
            "corrupted run exited {:?} with stderr {err:?}",
            corrupt.status.code()
        ));
    }
    Ok(format!(
        "{listed} checks pass; corruption exits {:?} with '{diff}'",
        corrupt.status.code().unwrap()
    ))
}

fn main() -> ExitCode {
    let (iso, deg, inv) = isometry_suite();
    let chern = chern_round_trip();
    let round_trip = match (inv, chern) {
        (Ok(a), Ok(b)) => Ok(format!("inverse: {a}; chern: {b}")),
        (Err(e), _) | (_, Err(e)) => Err(e),
    };
    let results: Vec<(&str, Outcome)> = vec![
        ("1 example 2 end-to-end", example2_end_to_end()),
        ("2 example 1 sweep", example1_sweep()),
        ("3 isometry suite", iso),
        ("4 degree identity", deg),
        ("5 normalization equivalence", normalization()),
        ("6 degeneration and classifier", degeneration()),
        ("7 round trips", round_trip),
        ("8 verify-paper meta-test", verify_paper_cli()),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
