//! Indecomposable objects on the AR quiver `ZA∞` and their Hom spaces.
//!
//! The object `Σ^j X_r` sits at coordinate `(-j-r-2, -j)`. Suspension acts as
//! `(m,n) -> (m-1,n-1)`, the Serre functor is `Σ²`, and `Hom(x, y)` is `k` for
//! `y` in the hammock `H⁻(Σx) ∪ H⁺(Σx)` and zero otherwise. Only dimensions
//! are modelled.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arcs::{crosses, Arc, ArcError};

/// An indecomposable object with coordinates `(m, n)`, `m <= n - 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[i64; 2]", try_from = "[i64; 2]")]
pub struct Ind {
    m: i64,
    n: i64,
}

impl Ind {
    pub fn new(m: i64, n: i64) -> Result<Self, ArcError> {
        Arc::new(m, n).map(Ind::from)
    }

    pub fn m(self) -> i64 {
        self.m
    }

    pub fn n(self) -> i64 {
        self.n
    }

    /// Width `r` of the underlying `X_r`.
    pub fn width(self) -> i64 {
        self.n - self.m - 2
    }

    /// The arc with the same endpoints.
    pub fn arc(self) -> Arc {
        Arc::new(self.m, self.n).expect("Ind invariant matches Arc invariant")
    }
}

impl From<Arc> for Ind {
    fn from(a: Arc) -> Self {
        Ind {
            m: a.left(),
            n: a.right(),
        }
    }
}

impl From<Ind> for [i64; 2] {
    fn from(x: Ind) -> Self {
        [x.m, x.n]
    }
}

impl TryFrom<[i64; 2]> for Ind {
    type Error = ArcError;

    fn try_from(v: [i64; 2]) -> Result<Self, Self::Error> {
        Ind::new(v[0], v[1])
    }
}

impl fmt::Display for Ind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// `Σ^t x`.
pub fn shift(x: Ind, t: i64) -> Ind {
    Ind {
        m: x.m - t,
        n: x.n - t,
    }
}

/// `S x = Σ² x`.
pub fn serre(x: Ind) -> Ind {
    shift(x, 2)
}

pub fn serre_inverse(x: Ind) -> Ind {
    shift(x, -2)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("X_r needs r >= 0, got r = {0}")]
    NegativeWidth(i64),
    #[error("no non-zero morphism {0} -> {1}")]
    ZeroLeg(Ind, Ind),
}

/// Coordinates of `Σ^j X_r`.
pub fn object_label(j: i64, r: i64) -> Result<Ind, HomError> {
    if r < 0 {
        return Err(HomError::NegativeWidth(r));
    }
    Ok(Ind {
        m: -j - r - 2,
        n: -j,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Minus,
    Plus,
}

/// The region `H⁻(apex)` or `H⁺(apex)`, edges included.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Hammock {
    pub apex: Ind,
    pub side: Side,
}

impl Hammock {
    pub fn minus(apex: Ind) -> Self {
        Hammock {
            apex,
            side: Side::Minus,
        }
    }

    pub fn plus(apex: Ind) -> Self {
        Hammock {
            apex,
            side: Side::Plus,
        }
    }

    pub fn contains(&self, y: Ind) -> bool {
        hammock_contains(*self, y)
    }
}

/// For apex `(i, j)`:
/// `H⁻ = { m <= i-1, i+1 <= n <= j-1 }` and `H⁺ = { i+1 <= m <= j-1, n >= j+1 }`.
#[allow(clippy::int_plus_one)]
pub fn hammock_contains(h: Hammock, y: Ind) -> bool {
    let (i, j) = (h.apex.m, h.apex.n);
    match h.side {
        Side::Minus => y.m <= i - 1 && i + 1 <= y.n && y.n <= j - 1,
        Side::Plus => i + 1 <= y.m && y.m <= j - 1 && j + 1 <= y.n,
    }
}

/// `dim Hom(x, y)`, via the hammocks of `Σx`.
pub fn hom_dim(x: Ind, y: Ind) -> u8 {
    let sx = shift(x, 1);
    u8::from(Hammock::minus(sx).contains(y) || Hammock::plus(sx).contains(y))
}

/// `dim Hom(x, y)`, via crossing of the arcs of `x` and `Σ⁻¹y`.
pub fn hom_dim_via_arcs(x: Ind, y: Ind) -> u8 {
    u8::from(crosses(x.arc(), shift(y, -1).arc()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MorphismKind {
    Zero,
    /// Target in `H⁺(Σx)`; visible in the AR quiver.
    Forward,
    /// Target in `H⁻(Σx)`; lives in the infinite radical.
    Backward,
}

pub fn morphism_kind(x: Ind, y: Ind) -> MorphismKind {
    let sx = shift(x, 1);
    if Hammock::plus(sx).contains(y) {
        MorphismKind::Forward
    } else if Hammock::minus(sx).contains(y) {
        MorphismKind::Backward
    } else {
        MorphismKind::Zero
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Composition {
    NonZero,
    /// Outside the all-forward case nothing is claimed.
    Undetermined,
}

/// Whether non-zero `x -> y` and `y -> z` compose to a non-zero map.
///
/// Decided only for all-forward chains (`y, z ∈ H⁺(Σx)`, `z ∈ H⁺(Σy)`).
pub fn composition_nonzero(x: Ind, y: Ind, z: Ind) -> Result<Composition, HomError> {
    if hom_dim(x, y) == 0 {
        return Err(HomError::ZeroLeg(x, y));
    }
    if hom_dim(y, z) == 0 {
        return Err(HomError::ZeroLeg(y, z));
    }
    let sx = shift(x, 1);
    let sy = shift(y, 1);
    let forward = Hammock::plus(sx).contains(y)
        && Hammock::plus(sx).contains(z)
        && Hammock::plus(sy).contains(z);
    Ok(if forward {
        Composition::NonZero
    } else {
        Composition::Undetermined
    })
}
