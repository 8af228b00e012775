//! Regression checks pinning every worked example: both example families,
//! the abelian classifier vectors, the anchor images of the generalized
//! transform and the degree identity.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::abelian::{classify_section2, fm_abelian_h};
use crate::catalog::{example1_family, example2_k3};
use crate::error::Result;
use crate::general::{lemma_deg_identity, reflection, theorem_map, FmSetup, TheoremCase};
use crate::lattice::{MukaiVector, Surface, SurfaceKind};
use crate::par::Exec;
use crate::sweep::{isometry_sweep, SweepParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperCheck {
    pub name: String,
    pub expected: String,
    pub actual: String,
}

impl PaperCheck {
    fn new(name: impl Into<String>, expected: impl Into<String>, actual: impl ToString) -> Self {
        PaperCheck {
            name: name.into(),
            expected: expected.into(),
            actual: actual.to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }

    /// `PASS name` or `FAIL name: expected X, got Y`.
    pub fn line(&self) -> String {
        if self.passed() {
            format!("PASS {}", self.name)
        } else {
            format!(
                "FAIL {}: expected {}, got {}",
                self.name, self.expected, self.actual
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperReport {
    pub checks: Vec<PaperCheck>,
}

impl PaperReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(PaperCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PaperCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Replaces expected values by name; unknown names are reported back.
    pub fn with_overrides(mut self, overrides: &BTreeMap<String, String>) -> (Self, Vec<String>) {
        let mut unknown = Vec::new();
        for (name, value) in overrides {
            match self.checks.iter_mut().find(|c| &c.name == name) {
                Some(c) => c.expected = value.clone(),
                None => unknown.push(name.clone()),
            }
        }
        (self, unknown)
    }
}

fn v(r: i64, d: i64, a: i64) -> MukaiVector {
    MukaiVector::new(r, d, a)
}

fn opt_vec(x: Option<&MukaiVector>) -> String {
    x.map_or_else(|| "none".to_string(), ToString::to_string)
}

pub fn verify_paper() -> Result<PaperReport> {
    let mut checks = Vec::new();
    let k3 = Surface::k3(12)?;
    let ex2 = FmSetup::new(SurfaceKind::K3, 2, -1, 3)?;

    // Example 2 pipeline.
    checks.push(PaperCheck::new(
        "<v0^2> = 0 (2,-1,3 | k3,12)",
        "0",
        v(2, -1, 3).v_squared(&k3),
    ));
    checks.push(PaperCheck::new(
        "setup(2,-1,3) d1,l",
        "1,-2",
        format!("{},{}", ex2.d1(), ex2.l()),
    ));
    checks.push(PaperCheck::new(
        "F(v0_dual) = 0,0,1",
        "0,0,1",
        ex2.fm_apply(&ex2.v0_dual()),
    ));
    checks.push(PaperCheck::new(
        "F(omega) = r0,d1,d1^2k (2,-1,3)",
        "2,1,3",
        ex2.fm_apply(&MukaiVector::omega()),
    ));
    checks.push(PaperCheck::new(
        "F(1) = d0^2k,d0l,l^2r0 (2,-1,3)",
        "3,2,8",
        ex2.fm_matrix().column(0),
    ));
    checks.push(PaperCheck::new(
        "det fm_matrix(2,-1,3) = 1",
        "1",
        ex2.fm_matrix().determinant(),
    ));
    let t = theorem_map(&ex2, &v(1, 1, 3))?;
    checks.push(PaperCheck::new(
        "theorem(1,1,3) = FM 3,-1,1",
        "FM 3,-1,1",
        format!("{} {}", t.case, opt_vec(t.canonical_image())),
    ));
    let refl = reflection(&v(3, -1, 1), &MukaiVector::from_chern(1, 0, 0, &k3), &k3)?;
    checks.push(PaperCheck::new(
        "reflect(3,-1,1 | v(O_Y)) canonical = 1,1,3",
        "1,1,3",
        refl.canonical_form(&k3)?.vector,
    ));
    checks.push(PaperCheck::new(
        "hilb(1,1,3 | k3,12) = 4",
        "4",
        v(1, 1, 3)
            .hilbert_index(&k3)
            .map_or_else(|| "none".to_string(), |n| n.to_string()),
    ));
    let e2 = example2_k3()?;
    let ends: Vec<String> = e2
        .steps
        .iter()
        .filter(|s| s.operation == "hilbert_index" || s.operation == "moduli_dim")
        .map(|s| s.output.clone())
        .collect();
    checks.push(PaperCheck::new(
        "example2 Hilb^4 at both ends, dim 8",
        "4 | 4; 8 | 8",
        ends.join("; "),
    ));

    // Abelian classifier, l_sq = 4.
    let ab4 = Surface::abelian(4)?;
    checks.push(PaperCheck::new(
        "F_H(2,1,-1) = -1,-1,2",
        "-1,-1,2",
        fm_abelian_h(&v(2, 1, -1), &ab4)?,
    ));
    for (input, expected) in [
        (v(1, 1, 2), "IT0_F 2,-1,1"),
        (v(1, 1, 1), "WIT2_G 1,1,1"),
        (v(3, 1, -1), "WIT1_F 1,1,-3"),
    ] {
        let c = classify_section2(&input, &ab4)?;
        checks.push(PaperCheck::new(
            format!("classify2({input} | abelian,4)"),
            expected,
            format!("{} {}", c.case, opt_vec(c.image.as_ref())),
        ));
    }

    // Example 1 family sweep.
    let mut bad = Vec::new();
    for r0 in 2..=6i64 {
        for s in 1..=5i64 {
            for n in 1..s * r0 {
                if num_integer::gcd(r0, n) != 1 {
                    continue;
                }
                let e = example1_family(SurfaceKind::K3, r0, n, s)?;
                if e.v_sq != BigInt::from(2 * s)
                    || e.p != BigInt::from(n)
                    || e.verdict.case != TheoremCase::Fm
                {
                    bad.push(format!("({r0},{n},{s})"));
                }
            }
        }
    }
    checks.push(PaperCheck::new(
        "example1 sweep r0<=6 s<=5: <v^2>=2s, <v,v0^dual>=n, FM",
        "failures=0",
        if bad.is_empty() {
            "failures=0".to_string()
        } else {
            format!("failures={} {}", bad.len(), bad.join(" "))
        },
    ));
    checks.push(PaperCheck::new("example1 (2,1,1) v, v0", "1,1,1 2,-1,1", {
        let e = example1_family(SurfaceKind::Abelian, 2, 1, 1)?;
        format!("{} {}", e.v, e.setup.v0())
    }));

    // Degree identity samples.
    for (setup, w) in [
        (ex2.clone(), v(1, 1, 3)),
        (FmSetup::new(SurfaceKind::Abelian, 3, -2, 1)?, v(1, 1, 2)),
        (FmSetup::new(SurfaceKind::Abelian, 2, -1, 1)?, v(1, 1, 1)),
    ] {
        let id = lemma_deg_identity(&setup, &w);
        checks.push(PaperCheck::new(
            format!(
                "deg_G1 = -deg_G2(F) ({},{},{} | {w})",
                setup.r0(),
                setup.d0(),
                setup.k()
            ),
            "1 = 1",
            format!("{} = {}", id.lhs, id.rhs),
        ));
    }

    // Classical degeneration.
    let degenerate: Vec<i64> = (1..=20)
        .filter(|&k| {
            FmSetup::new(SurfaceKind::Abelian, 1, 0, k)
                .map(|s| {
                    let m = s.fm_matrix();
                    !(m.column(0) == v(0, 0, 1)
                        && m.column(1) == v(0, -1, 0)
                        && m.column(2) == v(1, 0, 0))
                })
                .unwrap_or(true)
        })
        .collect();
    checks.push(PaperCheck::new(
        "fm_matrix(1,0,k) = (r,d,a)->(a,-d,r) for k<=20",
        "failures=0",
        format!("failures={}", degenerate.len()),
    ));

    let sweep = isometry_sweep(
        &SweepParams {
            samples: 2000,
            ..Default::default()
        },
        Exec::default(),
    );
    checks.push(PaperCheck::new(
        "random isometry sweep (2000 samples)",
        "failures=0",
        format!("failures={}", sweep.failures.len()),
    ));

    Ok(PaperReport { checks })
}
