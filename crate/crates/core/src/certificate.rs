//! Lower-bound certificates from planar pieces, and the disk upper bound.
//!
//! Cutting the surface along a full family of disk boundaries leaves planar
//! pieces. If every essential loop in every piece meets the curve at least
//! `n` times and every essential arc at least `n/2` times, every compressing
//! disk boundary meets it at least `n` times.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_collect, Execution};
use crate::piece::PlanarPiece;
use crate::smoothing::{cut_pieces, CutSide};
use crate::surface::{MultiCurve, SurfaceKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceMinima {
    pub id: String,
    /// `None` when the piece has no essential loop.
    pub loop_min: Option<u64>,
    /// `None` when the piece has no essential arc.
    pub arc_min: Option<u64>,
}

impl PieceMinima {
    pub fn of(piece: &PlanarPiece) -> Self {
        PieceMinima {
            id: piece.id().to_string(),
            loop_min: piece.min_essential_loop(),
            arc_min: piece.min_essential_arc(),
        }
    }

    pub fn supports(&self, n: u64) -> bool {
        // arcs need n/2 crossings: compare 2a >= n to stay exact
        self.loop_min.is_none_or(|l| l >= n) && self.arc_min.is_none_or(|a| 2 * a >= n)
    }

    /// Largest `n` this piece supports, `None` when unbounded.
    pub fn ceiling(&self) -> Option<u64> {
        match (self.loop_min, self.arc_min) {
            (None, None) => None,
            (l, a) => Some(l.unwrap_or(u64::MAX).min(a.map_or(u64::MAX, |a| 2 * a))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: u64,
    pub pieces: Vec<PieceMinima>,
    pub lower_ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<u64>,
}

impl Certificate {
    fn assemble(n: u64, pieces: Vec<PieceMinima>, upper: Option<u64>) -> Self {
        let lower_ok = pieces.iter().all(|p| p.supports(n));
        let exact = match upper {
            Some(u) if lower_ok && u == n => Some(n),
            _ => None,
        };
        Certificate {
            n,
            pieces,
            lower_ok,
            upper,
            exact,
        }
    }
}

/// A hand-encoded instance: pieces plus the bound to certify.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub n: u64,
    pub pieces: Vec<PlanarPiece>,
}

/// The four pieces left by cutting along all meridians and all longitudes.
pub fn chain_pieces(mc: &MultiCurve) -> Result<Vec<PlanarPiece>> {
    let circles = mc.surface().class_count();
    let mut out = Vec::with_capacity(4);
    for side in [CutSide::AlongMeridians, CutSide::AlongLongitudes] {
        let (plus, minus) = cut_pieces(mc, side)?;
        out.push(PlanarPiece::from_arc_system(&plus, circles)?);
        out.push(PlanarPiece::from_arc_system(&minus, circles)?);
    }
    Ok(out)
}

pub fn piece_minima(pieces: &[PlanarPiece], exec: Execution) -> Vec<PieceMinima> {
    map_collect(pieces, exec, PieceMinima::of)
}

/// Smallest number of points in which a disk boundary from the standard
/// systems meets the curve.
pub fn upper_bound(mc: &MultiCurve) -> u64 {
    mc.surface()
        .classes()
        .map(|c| mc.boundary_count(c).expect("class of this surface"))
        .min()
        .expect("every surface has classes")
}

/// Checks the lower bound `n` on the four standard pieces. No upper bound
/// is attached.
pub fn certify_lower(mc: &MultiCurve, n: u64, exec: Execution) -> Result<Certificate> {
    let pieces = chain_pieces(mc)?;
    Ok(Certificate::assemble(n, piece_minima(&pieces, exec), None))
}

/// [`certify_lower`] with the disk upper bound attached.
pub fn certify(mc: &MultiCurve, n: u64, exec: Execution) -> Result<Certificate> {
    let pieces = chain_pieces(mc)?;
    Ok(Certificate::assemble(
        n,
        piece_minima(&pieces, exec),
        Some(upper_bound(mc)),
    ))
}

/// Certifies a hand-encoded instance. The upper bound is the fewest arc
/// endpoints on any single boundary circle.
pub fn certify_instance(instance: &Instance, exec: Execution) -> Result<Certificate> {
    if instance.pieces.is_empty() {
        return Err(Error::InvalidPiece("instance has no pieces".into()));
    }
    let upper = instance
        .pieces
        .iter()
        .flat_map(|p| (0..p.circles()).map(move |x| p.incident(x)))
        .min();
    Ok(Certificate::assemble(
        instance.n,
        piece_minima(&instance.pieces, exec),
        upper,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representativity {
    /// Largest certified lower bound.
    pub lower: u64,
    pub upper: u64,
    pub exact: Option<u64>,
}

/// Brackets the representativity of the smoothed curve between the largest
/// certified `n` and the disk upper bound.
pub fn representativity_exact(mc: &MultiCurve, exec: Execution) -> Result<Representativity> {
    if mc.surface().kind() != SurfaceKind::Chain {
        return Err(Error::Unsupported(
            "certificates need the chain model; the torus value is min(p, q)".into(),
        ));
    }
    let minima = piece_minima(&chain_pieces(mc)?, exec);
    let upper = upper_bound(mc);
    let holds = |n: u64| minima.iter().all(|p| p.supports(n));
    // holds is monotone decreasing; find the last n in 0..=upper where it is true
    let (mut lo, mut hi) = (0u64, upper);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(Representativity {
        lower: lo,
        upper,
        exact: (lo == upper).then_some(lo),
    })
}
