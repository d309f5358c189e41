//! Standard surfaces in the 3-sphere and multicurves over their meridian and
//! longitude classes.
//!
//! `Chain(g)` is the genus-g Heegaard surface with g+1 meridian classes
//! `m_0..m_g` and g+1 longitude classes `l_0..l_g`. Its intersection pattern
//! is a single cycle `m_0 - l_1 - m_1 - l_2 - ... - m_g - l_0 - m_0`: longitude
//! `l_j` meets `m_{j-1}` and `m_j` once each (indices mod g+1). Cutting along
//! all meridians leaves two spheres with g+1 holes, and each `l_j` leaves one
//! arc in each of them.
//!
//! `StandardTorus` carries one meridian and one longitude meeting once.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceKind {
    StandardTorus,
    Chain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSurface")]
pub struct SurfaceModel {
    kind: SurfaceKind,
    genus: u32,
}

#[derive(Deserialize)]
struct RawSurface {
    kind: SurfaceKind,
    genus: u32,
}

impl TryFrom<RawSurface> for SurfaceModel {
    type Error = Error;

    fn try_from(raw: RawSurface) -> Result<Self> {
        match raw.kind {
            SurfaceKind::Chain => SurfaceModel::chain(raw.genus),
            SurfaceKind::StandardTorus if raw.genus == 1 => Ok(SurfaceModel::standard_torus()),
            SurfaceKind::StandardTorus => Err(Error::InvalidSurface(format!(
                "standard torus has genus 1, got {}",
                raw.genus
            ))),
        }
    }
}

impl SurfaceModel {
    pub fn chain(genus: u32) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidSurface("chain surface needs genus >= 1".into()));
        }
        Ok(SurfaceModel {
            kind: SurfaceKind::Chain,
            genus,
        })
    }

    pub fn standard_torus() -> Self {
        SurfaceModel {
            kind: SurfaceKind::StandardTorus,
            genus: 1,
        }
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Number of classes in each family: g+1 on a chain surface, 1 on the torus.
    pub fn class_count(&self) -> usize {
        match self.kind {
            SurfaceKind::StandardTorus => 1,
            SurfaceKind::Chain => self.genus as usize + 1,
        }
    }

    fn check(&self, family: Family, index: usize) -> Result<()> {
        let max = self.class_count() - 1;
        if index > max {
            return Err(Error::IndexOutOfRange {
                family: family.name(),
                index,
                max,
            });
        }
        Ok(())
    }

    /// Geometric intersection number of longitude class `j` with meridian class `i`.
    pub fn pairing(&self, j: usize, i: usize) -> Result<u8> {
        self.check(Family::Longitude, j)?;
        self.check(Family::Meridian, i)?;
        Ok(u8::from(self.meets(j, i)))
    }

    fn meets(&self, j: usize, i: usize) -> bool {
        match self.kind {
            SurfaceKind::StandardTorus => true,
            SurfaceKind::Chain => {
                let (first, second) = self.meridians_of_longitude(j);
                i == first || i == second
            }
        }
    }

    /// The two meridian classes crossed by `l_j`, in the order a copy of `l_j`
    /// meets them: it leaves hole `m_{j-1}` and runs into hole `m_j`.
    pub(crate) fn meridians_of_longitude(&self, j: usize) -> (usize, usize) {
        let n = self.class_count();
        ((j + n - 1) % n, j)
    }

    /// The two longitude classes crossing `m_i`: `l_{i+1}` leaves the hole and
    /// `l_i` arrives at it.
    pub(crate) fn longitudes_of_meridian(&self, i: usize) -> (usize, usize) {
        let n = self.class_count();
        ((i + 1) % n, i)
    }

    pub fn classes(&self) -> impl Iterator<Item = CurveClass> + '_ {
        let n = self.class_count();
        (0..n)
            .map(CurveClass::meridian)
            .chain((0..n).map(CurveClass::longitude))
    }
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SurfaceKind::StandardTorus => write!(f, "standard torus"),
            SurfaceKind::Chain => write!(f, "chain surface of genus {}", self.genus),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Meridian,
    Longitude,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Meridian => "meridian",
            Family::Longitude => "longitude",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveClass {
    pub family: Family,
    pub index: usize,
}

impl CurveClass {
    pub fn meridian(index: usize) -> Self {
        CurveClass {
            family: Family::Meridian,
            index,
        }
    }

    pub fn longitude(index: usize) -> Self {
        CurveClass {
            family: Family::Longitude,
            index,
        }
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Meridian => write!(f, "m_{}", self.index),
            Family::Longitude => write!(f, "l_{}", self.index),
        }
    }
}

/// Non-negative combination `sum a_i m_i + sum b_j l_j` of parallel copies,
/// smoothed into an embedded 1-manifold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMultiCurve")]
pub struct MultiCurve {
    surface: SurfaceModel,
    meridians: Vec<u64>,
    longitudes: Vec<u64>,
}

#[derive(Deserialize)]
struct RawMultiCurve {
    surface: SurfaceModel,
    meridians: Vec<u64>,
    longitudes: Vec<u64>,
}

impl TryFrom<RawMultiCurve> for MultiCurve {
    type Error = Error;

    fn try_from(raw: RawMultiCurve) -> Result<Self> {
        MultiCurve::new(raw.surface, raw.meridians, raw.longitudes)
    }
}

impl MultiCurve {
    pub fn new(surface: SurfaceModel, meridians: Vec<u64>, longitudes: Vec<u64>) -> Result<Self> {
        let n = surface.class_count();
        if meridians.len() != n || longitudes.len() != n {
            return Err(Error::InvalidMultiCurve(format!(
                "{surface} needs {n} meridian and {n} longitude coefficients, got {} and {}",
                meridians.len(),
                longitudes.len()
            )));
        }
        if meridians.iter().chain(&longitudes).all(|&c| c == 0) {
            return Err(Error::InvalidMultiCurve("all coefficients are zero".into()));
        }
        Ok(MultiCurve {
            surface,
            meridians,
            longitudes,
        })
    }

    pub fn surface(&self) -> SurfaceModel {
        self.surface
    }

    /// Meridian coefficients `a_i`.
    pub fn meridians(&self) -> &[u64] {
        &self.meridians
    }

    /// Longitude coefficients `b_j`.
    pub fn longitudes(&self) -> &[u64] {
        &self.longitudes
    }

    pub fn coefficient(&self, c: CurveClass) -> Result<u64> {
        self.surface.check(c.family, c.index)?;
        Ok(match c.family {
            Family::Meridian => self.meridians[c.index],
            Family::Longitude => self.longitudes[c.index],
        })
    }

    /// Intersection count of a push-off of `c` with the smoothed multicurve.
    pub fn boundary_count(&self, c: CurveClass) -> Result<u64> {
        self.surface.check(c.family, c.index)?;
        let n = self.surface.class_count();
        let total = match c.family {
            Family::Meridian => (0..n)
                .filter(|&j| self.surface.meets(j, c.index))
                .map(|j| self.longitudes[j])
                .sum(),
            Family::Longitude => (0..n)
                .filter(|&i| self.surface.meets(c.index, i))
                .map(|i| self.meridians[i])
                .sum(),
        };
        Ok(total)
    }
}

impl fmt::Display for MultiCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &a) in self.meridians.iter().enumerate() {
            if a > 0 {
                terms.push(format!("{a}m_{i}"));
            }
        }
        for (j, &b) in self.longitudes.iter().enumerate() {
            if b > 0 {
                terms.push(format!("{b}l_{j}"));
            }
        }
        write!(f, "{}", terms.join(" + "))
    }
}
