//! Example families, hypothesis-region searches and setup enumeration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::general::{reflection, theorem_map, FmSetup, TheoremCase, TheoremVerdict};
use crate::lattice::{MukaiVector, Surface, SurfaceKind};
use crate::par::Exec;

pub const DEFAULT_SEARCH_CEILING: u64 = 50;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Example1 {
    pub setup: FmSetup,
    pub v: MukaiVector,
    pub v_sq: BigInt,
    /// `<v, v0^∨>`.
    pub p: BigInt,
    pub verdict: TheoremVerdict,
}

/// The rank-one family: `d0 = −(r0 − 1)`, `k = s·r0 − n`, `v = (1, 1, (r0² − 1)s − r0·n)`
/// with `s > 0`, `s·r0 > n > 0`, `gcd(r0, n) = 1`. Here `<v²> = 2s` and
/// `<v, v0^∨> = n`, so the transform alone gives the isomorphism.
pub fn example1_family(kind: SurfaceKind, r0: i64, n: i64, s: i64) -> Result<Example1> {
    let (r0b, nb, sb) = (BigInt::from(r0), BigInt::from(n), BigInt::from(s));
    if r0 < 2 {
        return Err(Error::InvalidFamily(format!("r0 = {r0} < 2")));
    }
    if s <= 0 {
        return Err(Error::InvalidFamily(format!("s = {s} must be positive")));
    }
    if n <= 0 || &sb * &r0b <= nb {
        return Err(Error::InvalidFamily(format!(
            "need s·r0 > n > 0, got n = {n}, s·r0 = {}",
            &sb * &r0b
        )));
    }
    let g = r0b.gcd(&nb);
    if !g.is_one() {
        return Err(Error::InvalidFamily(format!("gcd(r0, n) = {g} ≠ 1")));
    }
    let d0: BigInt = 1 - &r0b;
    let k = &sb * &r0b - &nb;
    let setup = FmSetup::new(kind, r0b.clone(), d0, k)
        .map_err(|e| Error::InvalidFamily(format!("setup rejected: {e}")))?;
    let a = (&r0b * &r0b - 1) * &sb - &r0b * &nb;
    let v = MukaiVector::new(1, 1, a);
    let v_sq = v.v_squared(setup.source());
    let p = v.pairing(&setup.v0_dual(), setup.source());
    let verdict = theorem_map(&setup, &v)?;
    Ok(Example1 {
        setup,
        v,
        v_sq,
        p,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub operation: &'static str,
    pub input: String,
    pub output: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Example2 {
    pub setup: FmSetup,
    pub source_vector: MukaiVector,
    pub fm_image: MukaiVector,
    pub reflected: MukaiVector,
    pub target_vector: MukaiVector,
    pub steps: Vec<TraceStep>,
}

/// The K3 example with `(L²) = 12`, `v0 = 2 − L + 3ω`: `1 + L + 3ω` is carried
/// to `3 − L̂ + ω̂`, then reflected in `v(O_Y) = 1 + ω̂` to `1 + L̂ + 3ω̂`.
/// Both ends are `Hilb^4`.
pub fn example2_k3() -> Result<Example2> {
    let setup = FmSetup::new(SurfaceKind::K3, 2, -1, 3)?;
    let (src, tgt) = (setup.source().clone(), setup.target().clone());
    let v = MukaiVector::new(1, 1, 3);
    let mut steps = Vec::new();
    let mut step = |operation, input: String, output: String| {
        steps.push(TraceStep {
            operation,
            input,
            output,
        })
    };

    step(
        "setup",
        "r0=2,d0=-1,k=3".into(),
        format!("d1={},l={},l_sq={}", setup.d1(), setup.l(), src.l_sq()),
    );
    step(
        "v0_squared",
        setup.v0().to_string(),
        setup.v0().v_squared(&src).to_string(),
    );
    let verdict = theorem_map(&setup, &v)?;
    let fm_image = verdict
        .canonical_image()
        .cloned()
        .expect("positive pairing gives an image");
    step(
        "theorem_map",
        v.to_string(),
        format!("case={} target={}", verdict.case, fm_image),
    );
    let u = MukaiVector::from_chern(1, 0, 0, &tgt);
    let reflected = reflection(&fm_image, &u, &tgt)?;
    step(
        "reflection",
        format!("{fm_image} mirror {u}"),
        reflected.to_string(),
    );
    let target_vector = reflected.canonical_form(&tgt)?.vector;
    step(
        "reflection+canonical",
        reflected.to_string(),
        target_vector.to_string(),
    );
    let hilb = |w: &MukaiVector, s: &Surface| {
        w.hilbert_index(s)
            .map_or_else(|| "none".to_string(), |n| n.to_string())
    };
    step(
        "hilbert_index",
        format!("{v} | {target_vector}"),
        format!("{} | {}", hilb(&v, &src), hilb(&target_vector, &tgt)),
    );
    step(
        "moduli_dim",
        format!("{v} | {target_vector}"),
        format!(
            "{} | {}",
            v.moduli_dim(&src)?,
            target_vector.moduli_dim(&tgt)?
        ),
    );
    Ok(Example2 {
        setup,
        source_vector: v,
        fm_image,
        reflected,
        target_vector,
        steps,
    })
}

/// All degree-one vectors with `|r|, |d|, |a| ≤ bound` and `<v²> ≥ 0`, each
/// with its verdict, sorted by `(<v²>, r, d, a)`.
///
/// `d·r0 + r·d0 = 1` forces `gcd(r, d) = 1`, so every candidate is primitive.
pub fn search_theorem_applicable(
    setup: &FmSetup,
    bound: u64,
    ceiling: u64,
    exec: Exec,
) -> Result<Vec<TheoremVerdict>> {
    if bound > ceiling {
        return Err(Error::ResourceLimit(format!(
            "search bound {bound} exceeds ceiling {ceiling}"
        )));
    }
    let b = bound as i64;
    let r0 = setup.r0().clone();
    let d0 = setup.d0().clone();
    let rows: Vec<i64> = (-b..=b).collect();
    let chunks = exec.map(rows, |r| {
        let mut found = Vec::new();
        let num = BigInt::one() - &d0 * r;
        if !num.is_multiple_of(&r0) {
            return found;
        }
        let d = num / &r0;
        if d.abs() > BigInt::from(b) {
            return found;
        }
        for a in -b..=b {
            let v = MukaiVector::new(r, d.clone(), a);
            if v.v_squared(setup.source()).is_negative() {
                continue;
            }
            found.push(theorem_map(setup, &v).expect("candidates satisfy every precondition"));
        }
        found
    });
    let mut out: Vec<TheoremVerdict> = chunks.into_iter().flatten().collect();
    out.sort_by_cached_key(|t| {
        let v = &t.input;
        (
            v.v_squared(setup.source()),
            v.r.clone(),
            v.d.clone(),
            v.a.clone(),
        )
    });
    Ok(out)
}

/// Every valid setup with `(L²) = l_sq` and `|d0| ≤ d0_bound`, in increasing
/// `(r0, d0)` order. `d0 = 0` only occurs for `r0 = 1`.
pub fn enumerate_setups(kind: SurfaceKind, l_sq: i64, d0_bound: i64) -> Result<Vec<FmSetup>> {
    Surface::new(kind, l_sq)?;
    let half = l_sq / 2;
    let mut out = Vec::new();
    for r0 in 1..=half {
        if half % r0 != 0 {
            continue;
        }
        let k = half / r0;
        if r0.gcd(&k) != 1 {
            continue;
        }
        for d0 in -d0_bound..=d0_bound {
            if r0.gcd(&d0) != 1 {
                continue;
            }
            out.push(FmSetup::new(kind, r0, d0, k)?);
        }
    }
    Ok(out)
}

/// Counts of `(FM, DualThenFM, Inapplicable)` among search results.
pub fn case_histogram(verdicts: &[TheoremVerdict]) -> (usize, usize, usize) {
    verdicts
        .iter()
        .fold((0, 0, 0), |(f, d, i), t| match t.case {
            TheoremCase::Fm => (f + 1, d, i),
            TheoremCase::DualThenFm => (f, d + 1, i),
            _ => (f, d, i + 1),
        })
}

/// Reads a search ceiling override such as `"200"`; falls back to the default.
pub fn parse_ceiling(raw: Option<&str>) -> u64 {
    raw.and_then(|s| s.trim().parse::<BigInt>().ok())
        .filter(|b| !b.is_zero() && b.is_positive())
        .and_then(|b| b.to_u64())
        .unwrap_or(DEFAULT_SEARCH_CEILING)
}
