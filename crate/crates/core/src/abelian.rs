//! The classical Fourier-Mukai transform `X → X̂` with the Poincaré kernel,
//! and the WIT/IT classifier for vectors `r + c1(L) + a·ω`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::lattice::{MukaiVector, Surface, SurfaceKind};

fn require_abelian(s: &Surface) -> Result<()> {
    match s.kind() {
        SurfaceKind::Abelian => Ok(()),
        other => Err(Error::UnsupportedKind(format!(
            "the Poincaré transform needs an abelian surface, got {other}"
        ))),
    }
}

/// `F_H(r, d, a) = (a, −d, r)`.
pub fn fm_abelian_h(v: &MukaiVector, s: &Surface) -> Result<MukaiVector> {
    require_abelian(s)?;
    Ok(MukaiVector {
        r: v.a.clone(),
        d: -&v.d,
        a: v.r.clone(),
    })
}

/// `G = (D ∘ F)[−2]`; the even shift does not change the Mukai vector, so
/// `G_H = dual ∘ F_H`, i.e. `(r, d, a) ↦ (a, d, r)`.
pub fn g_transform_h(v: &MukaiVector, s: &Surface) -> Result<MukaiVector> {
    Ok(fm_abelian_h(v, s)?.dual())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Section2Case {
    /// `a > <v²>/2`: IT_0 for `F`, image `a − c1(L̂) + r·ω`.
    It0F,
    /// `0 < a ≤ <v²>/2`: WIT_2 for `G`, image `a + c1(L̂) + r·ω`.
    Wit2G,
    /// `a < 0`: WIT_1 for `F`, image `−a + c1(L̂) − r·ω`.
    Wit1F,
    /// `a = 0`: no statement available.
    Unknown,
}

impl Section2Case {
    pub fn name(self) -> &'static str {
        match self {
            Section2Case::It0F => "IT0_F",
            Section2Case::Wit2G => "WIT2_G",
            Section2Case::Wit1F => "WIT1_F",
            Section2Case::Unknown => "Unknown",
        }
    }
}

impl fmt::Display for Section2Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Passed,
    Failed,
    /// Sheaf-level condition the lattice cannot see; taken on trust.
    Assumed,
}

impl CheckStatus {
    pub fn name(self) -> &'static str {
        match self {
            CheckStatus::Passed => "pass",
            CheckStatus::Failed => "fail",
            CheckStatus::Assumed => "assumed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub status: CheckStatus,
}

impl Hypothesis {
    pub(crate) fn new(name: impl Into<String>, status: CheckStatus) -> Self {
        Hypothesis {
            name: name.into(),
            status,
        }
    }

    pub(crate) fn check(name: impl Into<String>, ok: bool) -> Self {
        let status = if ok {
            CheckStatus::Passed
        } else {
            CheckStatus::Failed
        };
        Self::new(name, status)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section2Verdict {
    pub case: Section2Case,
    /// `None` exactly when the case is `Unknown`.
    pub image: Option<MukaiVector>,
    pub hypotheses: Vec<Hypothesis>,
}

/// Decides which of the three `d = 1` statements on abelian surfaces applies.
///
/// The inverse-direction statement (a μ-stable bundle `r − c1(L̂) + a·ω` on `X̂`
/// with `a > 0` is WIT_2 for `F̂`) is this classifier run on the dual vector.
pub fn classify_section2(v: &MukaiVector, s: &Surface) -> Result<Section2Verdict> {
    require_abelian(s)?;
    if !v.d.is_one() {
        return Err(Error::hypothesis(format!("d = {} ≠ 1", v.d)));
    }
    if !v.r.is_positive() {
        return Err(Error::hypothesis(format!("r = {} < 1", v.r)));
    }
    let sq = v.v_squared(s);
    if sq.is_negative() {
        return Err(Error::EmptyModuli(sq.to_string()));
    }

    let mut hypotheses = vec![
        Hypothesis::check("d = 1", true),
        Hypothesis::check("r >= 1", true),
        Hypothesis::check("<v^2> >= 0", true),
        Hypothesis::new("E is mu-stable", CheckStatus::Assumed),
    ];

    let two_a = &v.a * 2;
    let f = fm_abelian_h(v, s)?;
    let (case, image) = if two_a > sq {
        hypotheses.push(Hypothesis::check("a > <v^2>/2", true));
        (Section2Case::It0F, Some(f))
    } else if v.a.is_positive() {
        hypotheses.push(Hypothesis::check("0 < a <= <v^2>/2", true));
        (Section2Case::Wit2G, Some(f.dual()))
    } else if v.a.is_negative() {
        hypotheses.push(Hypothesis::check("a < 0", true));
        (Section2Case::Wit1F, Some(-f))
    } else {
        hypotheses.push(Hypothesis::check("a != 0", false));
        (Section2Case::Unknown, None)
    };
    Ok(Section2Verdict {
        case,
        image,
        hypotheses,
    })
}

/// Numeric bounds from the WIT proofs, floored to integers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProofBounds {
    /// Points with nonvanishing `Ext^1(E, P_x^∨)`: at most `<v²>/(2a)` when `a > 0`.
    pub ext_bound: Option<BigInt>,
    /// `Σ h^0(E ⊗ P_x)` over jumping points: at most `<v²>/(−2a)` when `a < 0`.
    pub sections_bound: Option<BigInt>,
}

pub fn proof_bounds(v: &MukaiVector, s: &Surface) -> Result<ProofBounds> {
    if !v.d.is_one() {
        return Err(Error::hypothesis(format!("d = {} ≠ 1", v.d)));
    }
    let sq = v.v_squared(s);
    let two_a = &v.a * 2;
    let mut out = ProofBounds::default();
    if v.a.is_positive() {
        out.ext_bound = Some(sq.div_floor(&two_a));
    } else if v.a.is_negative() {
        out.sections_bound = Some(sq.div_floor(&-two_a));
    }
    Ok(out)
}
