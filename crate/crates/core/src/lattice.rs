//! Mukai vectors on a surface with Picard group generated by one ample class.
//!
//! A vector `(r, d, a)` stands for `r + d·c1(L) + a·ω` where `L` is the ample
//! generator and `ω` the fundamental class. Only the rank-3 sublattice spanned
//! by `1, c1(L), ω` is modelled; the pairing on it is
//!
//! ```text
//! <v, w> = d·d'·(L²) − r·a' − a·r'
//! ```
//!
//! All components are unbounded integers.

use std::cmp::Reverse;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    Abelian,
    K3,
}

impl SurfaceKind {
    /// `ε` in `√td = 1 + ε·ω`: 0 for abelian surfaces, 1 for K3 surfaces.
    pub fn epsilon(self) -> BigInt {
        match self {
            SurfaceKind::Abelian => BigInt::zero(),
            SurfaceKind::K3 => BigInt::one(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::Abelian => "abelian",
            SurfaceKind::K3 => "k3",
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SurfaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "abelian" => Ok(SurfaceKind::Abelian),
            "k3" => Ok(SurfaceKind::K3),
            _ => Err(Error::Parse {
                what: "surface kind",
                token: s.to_string(),
            }),
        }
    }
}

/// A polarized surface of Picard rank one: its kind and `(L²)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Surface {
    kind: SurfaceKind,
    l_sq: BigInt,
}

impl Surface {
    /// `l_sq` must be positive and even.
    pub fn new(kind: SurfaceKind, l_sq: impl Into<BigInt>) -> Result<Self> {
        let l_sq = l_sq.into();
        if !l_sq.is_positive() || l_sq.is_odd() {
            return Err(Error::InvalidSurface(format!(
                "(L^2) = {l_sq} must be positive and even"
            )));
        }
        Ok(Surface { kind, l_sq })
    }

    pub fn abelian(l_sq: impl Into<BigInt>) -> Result<Self> {
        Self::new(SurfaceKind::Abelian, l_sq)
    }

    pub fn k3(l_sq: impl Into<BigInt>) -> Result<Self> {
        Self::new(SurfaceKind::K3, l_sq)
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn l_sq(&self) -> &BigInt {
        &self.l_sq
    }

    pub fn epsilon(&self) -> BigInt {
        self.kind.epsilon()
    }

    fn half_l_sq(&self) -> BigInt {
        &self.l_sq >> 1
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(L^2={})", self.kind, self.l_sq)
    }
}

/// `r + d·c1(L) + a·ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MukaiVector {
    pub r: BigInt,
    pub d: BigInt,
    pub a: BigInt,
}

/// Chern data `(rank, c1 = c1_coeff·c1(L), c2)` of a class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernData {
    pub rank: BigInt,
    pub c1: BigInt,
    pub c2: BigInt,
}

/// Output of [`MukaiVector::canonical_form`]: `vector = twist(sign·v, twist)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub vector: MukaiVector,
    pub twist: BigInt,
    pub sign: i8,
}

impl MukaiVector {
    pub fn new(r: impl Into<BigInt>, d: impl Into<BigInt>, a: impl Into<BigInt>) -> Self {
        MukaiVector {
            r: r.into(),
            d: d.into(),
            a: a.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0, 0)
    }

    /// The fundamental class `ω`.
    pub fn omega() -> Self {
        Self::new(0, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.d.is_zero() && self.a.is_zero()
    }

    pub fn pairing(&self, other: &MukaiVector, s: &Surface) -> BigInt {
        &self.d * &other.d * s.l_sq() - &self.r * &other.a - &self.a * &other.r
    }

    /// `<v²> = d²(L²) − 2ra`.
    pub fn v_squared(&self, s: &Surface) -> BigInt {
        self.pairing(self, s)
    }

    /// Cohomological dual `(r, d, a) ↦ (r, −d, a)`.
    pub fn dual(&self) -> MukaiVector {
        MukaiVector {
            r: self.r.clone(),
            d: -&self.d,
            a: self.a.clone(),
        }
    }

    /// Multiplication by `ch(L^m) = 1 + m·c1(L) + m²(L²)/2·ω`.
    pub fn twist(&self, m: &BigInt, s: &Surface) -> MukaiVector {
        if m.is_zero() {
            return self.clone();
        }
        let a = &self.a + m * &self.d * s.l_sq() + &self.r * m * m * s.half_l_sq();
        MukaiVector {
            r: self.r.clone(),
            d: &self.d + &self.r * m,
            a,
        }
    }

    /// Mukai vector `ch·(1 + εω)` of a class with the given Chern data.
    pub fn from_chern(
        rank: impl Into<BigInt>,
        c1: impl Into<BigInt>,
        c2: impl Into<BigInt>,
        s: &Surface,
    ) -> MukaiVector {
        let (rank, c1, c2) = (rank.into(), c1.into(), c2.into());
        let a = &c1 * &c1 * s.half_l_sq() - c2 + s.epsilon() * &rank;
        MukaiVector { r: rank, d: c1, a }
    }

    pub fn to_chern(&self, s: &Surface) -> ChernData {
        let c2 = &self.d * &self.d * s.half_l_sq() - &self.a + s.epsilon() * &self.r;
        ChernData {
            rank: self.r.clone(),
            c1: self.d.clone(),
            c2,
        }
    }

    /// `deg_G(v) = deg(v ⊗ G^∨) = d·r_G − d_G·r`.
    pub fn deg_rel(&self, g: &MukaiVector) -> BigInt {
        &self.d * &g.r - &g.d * &self.r
    }

    /// `rk_G(v) = r·r_G`.
    pub fn rk_rel(&self, g: &MukaiVector) -> BigInt {
        &self.r * &g.r
    }

    /// `μ_G(v) = deg_G(v) / rk_G(v)`, which equals `μ(v) − μ(G)`.
    pub fn mu_rel(&self, g: &MukaiVector) -> Result<BigRational> {
        let rk = self.rk_rel(g);
        if rk.is_zero() {
            return Err(Error::DegenerateSlope);
        }
        Ok(BigRational::new(self.deg_rel(g), rk))
    }

    /// gcd of the absolute values of the components; 0 for the zero vector.
    pub fn content(&self) -> BigInt {
        self.r.gcd(&self.d).gcd(&self.a)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn is_isotropic(&self, s: &Surface) -> bool {
        self.v_squared(s).is_zero()
    }

    /// `<v²> + 2`, the dimension of `M_L(v)` for primitive `v` with `<v²> ≥ 0`.
    pub fn moduli_dim(&self, s: &Surface) -> Result<BigInt> {
        let sq = self.v_squared(s);
        if sq.is_negative() {
            return Err(Error::NotModuliVector(format!("<v^2> = {sq} < 0")));
        }
        if !self.is_primitive() {
            return Err(Error::NotModuliVector(format!(
                "{self} is not primitive (content {})",
                self.content()
            )));
        }
        Ok(sq + 2)
    }

    /// Representative of the orbit of `v` under line-bundle twists and `±1`.
    ///
    /// The sign makes the first nonzero component positive. The twist minimizes
    /// `|a|`; ties go to `a > 0`, then to the larger `d`. The orbit of a nonzero
    /// vector has exactly one such element.
    pub fn canonical_form(&self, s: &Surface) -> Result<Canonical> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let leading = if !self.r.is_zero() {
            &self.r
        } else if !self.d.is_zero() {
            &self.d
        } else {
            &self.a
        };
        let sign: i8 = if leading.is_negative() { -1 } else { 1 };
        let v = if sign < 0 { -self } else { self.clone() };

        let twist = if v.r.is_positive() {
            best_twist_positive_rank(&v, s)
        } else if v.d.is_positive() {
            best_twist_rank_zero(&v, s)
        } else {
            BigInt::zero()
        };
        let vector = v.twist(&twist, s);
        Ok(Canonical {
            vector,
            twist,
            sign,
        })
    }

    /// `n` such that `v` is twist-sign equivalent to `v(I_Z)` for `Z` of length `n`,
    /// i.e. to `(1, 0, ε − n)`.
    pub fn hilbert_index(&self, s: &Surface) -> Option<BigInt> {
        let v = if self.r.is_negative() {
            -self
        } else {
            self.clone()
        };
        if !v.r.is_one() {
            return None;
        }
        let m = -&v.d;
        let a0 = v.twist(&m, s).a;
        let n = s.epsilon() - a0;
        (!n.is_negative()).then_some(n)
    }

    /// Human-readable rendering `r + d·L + a·ω`, e.g. `3 - L + ω`.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        let terms: [(&BigInt, &str); 3] = [(&self.r, ""), (&self.d, "L"), (&self.a, "ω")];
        for (coeff, sym) in terms {
            if coeff.is_zero() {
                continue;
            }
            let neg = coeff.is_negative();
            let mag = coeff.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if sym.is_empty() || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(sym);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

// Canonical twist for r > 0. With t = d + r·m the twisted a-component is
// (L²·t² − <v²>) / (2r), so we minimize |L²·t² − <v²>| over t ≡ d (mod r).
// That function is monotone between the breakpoints −√q, 0, √q with
// q = <v²>/L², so the optimum is adjacent to one of them.
fn best_twist_positive_rank(v: &MukaiVector, s: &Surface) -> BigInt {
    let r = &v.r;
    let l_sq = s.l_sq();
    let sq = v.v_squared(s);
    let root = if sq.is_positive() {
        (&sq / l_sq).sqrt()
    } else {
        BigInt::zero()
    };
    let anchors = [BigInt::zero(), root.clone(), &root + 1, -&root, -&root - 1];

    let mut best: Option<(BigInt, bool, Reverse<BigInt>)> = None;
    for x in anchors {
        let below = &x - (&x - &v.d).mod_floor(r);
        for t in [below.clone(), below + r] {
            let num = l_sq * &t * &t - &sq;
            let key = (num.abs(), num.is_negative(), Reverse(t));
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    let (_, _, Reverse(t)) = best.expect("anchors are nonempty");
    (t - &v.d) / r
}

// r = 0, d > 0: twisting shifts a by m·d·(L²).
fn best_twist_rank_zero(v: &MukaiVector, s: &Surface) -> BigInt {
    let step = &v.d * s.l_sq();
    let low = v.a.mod_floor(&step);
    let high = &low - &step;
    let target = if high.abs() < low { high } else { low };
    (target - &v.a) / step
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.r, self.d, self.a)
    }
}

impl FromStr for MukaiVector {
    type Err = Error;

    /// Parses `"r,d,a"`; whitespace around components is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "Mukai vector",
            token: s.to_string(),
        };
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(err());
        }
        let mut comps = parts.iter().map(|p| p.parse::<BigInt>().map_err(|_| err()));
        Ok(MukaiVector {
            r: comps.next().unwrap()?,
            d: comps.next().unwrap()?,
            a: comps.next().unwrap()?,
        })
    }
}

impl Neg for &MukaiVector {
    type Output = MukaiVector;
    fn neg(self) -> MukaiVector {
        MukaiVector {
            r: -&self.r,
            d: -&self.d,
            a: -&self.a,
        }
    }
}

impl Neg for MukaiVector {
    type Output = MukaiVector;
    fn neg(self) -> MukaiVector {
        -&self
    }
}

impl Add for &MukaiVector {
    type Output = MukaiVector;
    fn add(self, o: &MukaiVector) -> MukaiVector {
        MukaiVector {
            r: &self.r + &o.r,
            d: &self.d + &o.d,
            a: &self.a + &o.a,
        }
    }
}

impl Sub for &MukaiVector {
    type Output = MukaiVector;
    fn sub(self, o: &MukaiVector) -> MukaiVector {
        MukaiVector {
            r: &self.r - &o.r,
            d: &self.d - &o.d,
            a: &self.a - &o.a,
        }
    }
}

impl Mul<&MukaiVector> for &BigInt {
    type Output = MukaiVector;
    fn mul(self, v: &MukaiVector) -> MukaiVector {
        MukaiVector {
            r: self * &v.r,
            d: self * &v.d,
            a: self * &v.a,
        }
    }
}
