//! The Fourier-Mukai transform attached to an isotropic vector
//! `v0 = r0 + d0·c1(L) + d0²k·ω` on a surface with `(L²) = 2·r0·k`.
//!
//! The target `Y = M_L(v0)` has the same kind and the same `(L̂²)`. With
//! `d1·(k·d0) − l·r0 = 1`, the induced isometry sends
//!
//! ```text
//! 1      ↦ d0²k + d0·l·c1(L̂) + l²·r0·ω̂
//! c1(L)  ↦ 2d0·k·r0 + (2d0·k·d1 − 1)·c1(L̂) + (2d0·k²·d1² − 2d1·k)·ω̂
//! ω      ↦ r0 + d1·c1(L̂) + d1²k·ω̂
//! ```
//!
//! Different admissible `(d1, l)` differ by `d1 ↦ d1 + j·r0`, which composes
//! the map with a twist by `L̂^j`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Canonical, MukaiVector, Surface, SurfaceKind};
use crate::matrix::IntMatrix3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FmSetup {
    r0: BigInt,
    d0: BigInt,
    k: BigInt,
    d1: BigInt,
    l: BigInt,
    source: Surface,
    target: Surface,
    matrix: IntMatrix3,
    inverse: IntMatrix3,
}

fn validate_base(r0: &BigInt, d0: &BigInt, k: &BigInt) -> Result<()> {
    if !r0.is_positive() {
        return Err(Error::InvalidSetup(format!("r0 = {r0} must be positive")));
    }
    if !k.is_positive() {
        return Err(Error::InvalidSetup(format!("k = {k} must be positive")));
    }
    let g = r0.gcd(k);
    if !g.is_one() {
        return Err(Error::InvalidSetup(format!("gcd(r0, k) = {g} ≠ 1")));
    }
    let g = r0.gcd(d0);
    if !g.is_one() {
        return Err(Error::InvalidSetup(format!("gcd(r0, d0) = {g} ≠ 1")));
    }
    Ok(())
}

impl FmSetup {
    /// Validates `(r0, d0, k)` and picks `d1` as the residue of `(k·d0)^{-1}`
    /// modulo `r0` in `[0, r0)`. For `r0 = 1` this gives `d1 = 0, l = −1`,
    /// where the map is the classical `(r, d, a) ↦ (a, −d, r)`.
    pub fn new(
        kind: SurfaceKind,
        r0: impl Into<BigInt>,
        d0: impl Into<BigInt>,
        k: impl Into<BigInt>,
    ) -> Result<Self> {
        let (r0, d0, k) = (r0.into(), d0.into(), k.into());
        validate_base(&r0, &d0, &k)?;
        let kd0 = &k * &d0;
        let eg = kd0.extended_gcd(&r0);
        // eg.x·(k·d0) + eg.y·r0 = ±1
        let inv = if eg.gcd.is_negative() { -eg.x } else { eg.x };
        let d1 = inv.mod_floor(&r0);
        Self::build(kind, r0, d0, k, d1)
    }

    /// Same as [`FmSetup::new`] with an explicit `d1`; rejects `d1` unless
    /// `d1·k·d0 ≡ 1 (mod r0)`.
    pub fn with_d1(
        kind: SurfaceKind,
        r0: impl Into<BigInt>,
        d0: impl Into<BigInt>,
        k: impl Into<BigInt>,
        d1: impl Into<BigInt>,
    ) -> Result<Self> {
        let (r0, d0, k, d1) = (r0.into(), d0.into(), k.into(), d1.into());
        validate_base(&r0, &d0, &k)?;
        Self::build(kind, r0, d0, k, d1)
    }

    fn build(kind: SurfaceKind, r0: BigInt, d0: BigInt, k: BigInt, d1: BigInt) -> Result<Self> {
        let num: BigInt = &d1 * &k * &d0 - 1;
        if !num.is_multiple_of(&r0) {
            return Err(Error::InvalidSetup(format!(
                "no integer l with d1·(k·d0) − l·r0 = 1 for d1 = {d1}"
            )));
        }
        let l = num / &r0;
        let l_sq = BigInt::from(2) * &r0 * &k;
        let source = Surface::new(kind, l_sq)?;
        let target = source.clone();
        let matrix = transform_matrix(&r0, &d0, &k, &d1, &l);
        let inverse = matrix
            .inverse()
            .ok_or_else(|| Error::InvalidSetup(format!("matrix {matrix} is not unimodular")))?;
        Ok(FmSetup {
            r0,
            d0,
            k,
            d1,
            l,
            source,
            target,
            matrix,
            inverse,
        })
    }

    /// The admissible setup with `d1 + j·r0` in place of `d1`.
    pub fn shifted(&self, j: &BigInt) -> FmSetup {
        let d1 = &self.d1 + j * &self.r0;
        Self::build(
            self.source.kind(),
            self.r0.clone(),
            self.d0.clone(),
            self.k.clone(),
            d1,
        )
        .expect("shifting d1 by a multiple of r0 keeps the Bezout relation")
    }

    pub fn r0(&self) -> &BigInt {
        &self.r0
    }
    pub fn d0(&self) -> &BigInt {
        &self.d0
    }
    pub fn k(&self) -> &BigInt {
        &self.k
    }
    pub fn d1(&self) -> &BigInt {
        &self.d1
    }
    pub fn l(&self) -> &BigInt {
        &self.l
    }
    pub fn source(&self) -> &Surface {
        &self.source
    }
    pub fn target(&self) -> &Surface {
        &self.target
    }

    /// `v0 = (r0, d0, d0²k)`.
    pub fn v0(&self) -> MukaiVector {
        MukaiVector {
            r: self.r0.clone(),
            d: self.d0.clone(),
            a: &self.d0 * &self.d0 * &self.k,
        }
    }

    pub fn v0_dual(&self) -> MukaiVector {
        self.v0().dual()
    }

    pub fn fm_matrix(&self) -> &IntMatrix3 {
        &self.matrix
    }

    pub fn fm_apply(&self, v: &MukaiVector) -> MukaiVector {
        self.matrix.apply(v)
    }

    pub fn fm_inverse_apply(&self, w: &MukaiVector) -> MukaiVector {
        self.inverse.apply(w)
    }

    /// Lattice shadows of `G1 = E|_{X×{t}}^∨` on `X` and `G2 = E|_{{s}×Y}` on `Y`.
    pub fn g_vectors(&self) -> (MukaiVector, MukaiVector) {
        (self.v0_dual(), self.fm_apply(&MukaiVector::omega()))
    }

    /// `deg_{G1}(v) = d·r0 + r·d0`.
    pub fn degree(&self, v: &MukaiVector) -> BigInt {
        v.deg_rel(&self.v0_dual())
    }
}

impl fmt::Display for FmSetup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "r0={} d0={} k={} d1={} l={} on {}",
            self.r0, self.d0, self.k, self.d1, self.l, self.source
        )
    }
}

fn transform_matrix(r0: &BigInt, d0: &BigInt, k: &BigInt, d1: &BigInt, l: &BigInt) -> IntMatrix3 {
    let two = BigInt::from(2);
    let img_one = MukaiVector {
        r: d0 * d0 * k,
        d: d0 * l,
        a: l * l * r0,
    };
    let img_c1 = MukaiVector {
        r: &two * d0 * k * r0,
        d: &two * d0 * k * d1 - 1,
        a: &two * d0 * k * k * d1 * d1 - &two * d1 * k,
    };
    let img_omega = MukaiVector {
        r: r0.clone(),
        d: d1.clone(),
        a: d1 * d1 * k,
    };
    IntMatrix3::from_columns([img_one, img_c1, img_omega])
}

/// The three expressions `deg_{G1}(v)`, `−deg_{G2}(F v)` and
/// `deg_{G2^∨}((F v)^∨)`, which agree for every `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegIdentity {
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub dual_form: BigInt,
}

impl DegIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.rhs == self.dual_form
    }
}

pub fn lemma_deg_identity(setup: &FmSetup, v: &MukaiVector) -> DegIdentity {
    let (g1, g2) = setup.g_vectors();
    let fv = setup.fm_apply(v);
    DegIdentity {
        lhs: v.deg_rel(&g1),
        rhs: -fv.deg_rel(&g2),
        dual_form: fv.dual().deg_rel(&g2.dual()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremCase {
    /// `<v, v0^∨> < 0`: transform followed by taking duals, image `(F v)^∨`.
    DualThenFm,
    /// `<v, v0^∨> > 0`: transform alone, image `−F v`.
    Fm,
    /// Degree-zero vectors outside `M_L(v0^⊥)`: IT_1, image `−F v`.
    Appendix,
    /// `<v, v0^∨> = 0`: nothing is claimed.
    Inapplicable,
}

impl TheoremCase {
    pub fn name(self) -> &'static str {
        match self {
            TheoremCase::DualThenFm => "DualThenFM",
            TheoremCase::Fm => "FM",
            TheoremCase::Appendix => "Appendix",
            TheoremCase::Inapplicable => "Inapplicable",
        }
    }
}

impl fmt::Display for TheoremCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub case: TheoremCase,
    pub input: MukaiVector,
    /// `deg_{G1}(input)`.
    pub degree: BigInt,
    pub pairing_with_v0_dual: BigInt,
    pub raw_image: Option<MukaiVector>,
    pub canonical: Option<Canonical>,
    /// Sheaf-level hypotheses the lattice cannot check.
    pub assumptions: Vec<String>,
}

impl TheoremVerdict {
    pub fn canonical_image(&self) -> Option<&MukaiVector> {
        self.canonical.as_ref().map(|c| &c.vector)
    }
}

const LOCALLY_FREE: &str = "universal family on X x Y is locally free";
const STABLE: &str = "E is mu-stable with respect to L";

/// Decides which direction of the moduli isomorphism applies to `v` with
/// `d·r0 + r·d0 = 1`.
pub fn theorem_map(setup: &FmSetup, v: &MukaiVector) -> Result<TheoremVerdict> {
    let degree = setup.degree(v);
    if !degree.is_one() {
        return Err(Error::hypothesis(format!("deg_G1(v)={degree} ≠ 1")));
    }
    if !v.is_primitive() {
        return Err(Error::hypothesis(format!("v = {v} is not primitive")));
    }
    let sq = v.v_squared(setup.source());
    if sq.is_negative() {
        return Err(Error::EmptyModuli(sq.to_string()));
    }

    let p = v.pairing(&setup.v0_dual(), setup.source());
    let fv = setup.fm_apply(v);
    let (case, raw_image) = if p.is_negative() {
        (TheoremCase::DualThenFm, Some(fv.dual()))
    } else if p.is_positive() {
        (TheoremCase::Fm, Some(-fv))
    } else {
        (TheoremCase::Inapplicable, None)
    };
    let canonical = raw_image
        .as_ref()
        .map(|w| w.canonical_form(setup.target()))
        .transpose()?;
    Ok(TheoremVerdict {
        case,
        input: v.clone(),
        degree,
        pairing_with_v0_dual: p,
        raw_image,
        canonical,
        assumptions: vec![LOCALLY_FREE.to_string(), STABLE.to_string()],
    })
}

/// Degree-zero classifier: such `E` (locally free, μ-stable, not in
/// `M_L(v0^⊥)`) satisfies IT_1 with μ-stable locally free transform.
pub fn classify_appendix(setup: &FmSetup, v: &MukaiVector) -> Result<TheoremVerdict> {
    let degree = setup.degree(v);
    if !degree.is_zero() {
        return Err(Error::hypothesis(format!("deg_G1(v)={degree} ≠ 0")));
    }
    let raw = -setup.fm_apply(v);
    let canonical = raw.canonical_form(setup.target())?;
    let mut assumptions = vec![
        LOCALLY_FREE.to_string(),
        STABLE.to_string(),
        "E is locally free".to_string(),
        "E is not in M_L(v0^perp)".to_string(),
    ];
    if v.pairing(&setup.v0(), setup.source()).is_zero() {
        assumptions.push(format!(
            "<v, v0> = 0: v lies in v0^perp, the excluded locus (v0 = {})",
            setup.v0()
        ));
    }
    Ok(TheoremVerdict {
        case: TheoremCase::Appendix,
        input: v.clone(),
        degree,
        pairing_with_v0_dual: v.pairing(&setup.v0_dual(), setup.source()),
        raw_image: Some(raw),
        canonical: Some(canonical),
        assumptions,
    })
}

/// `R_u(v) = v + <v, u>·u` for a spherical class `u` (`<u²> = −2`).
pub fn reflection(v: &MukaiVector, u: &MukaiVector, s: &Surface) -> Result<MukaiVector> {
    let usq = u.v_squared(s);
    if usq != BigInt::from(-2) {
        return Err(Error::NonSphericalMirror(usq.to_string()));
    }
    let c = v.pairing(u, s);
    Ok(v + &(&c * u))
}
