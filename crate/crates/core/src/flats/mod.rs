//! Stair-flats: the stair-convex analogues of affine flats, their halves,
//! and covering families for them.
//!
//! A half-stair-flat is stored with witness points on its own side and on the
//! opposite side of its relative boundary. Membership of a carrier point is
//! decided by walking the stair-path to a witness: the carrier is
//! stair-convex, so a path that never touches the boundary stays in one half.

mod cover;
pub mod fixtures;
pub mod generate;

pub use cover::{classify_half, cover_flat, gamma_delta, GammaDelta, HalfClass};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::stair::{self, Point, Segment};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum StairFlat {
    Point {
        point: Point,
    },
    FullSpace {
        dim: usize,
    },
    Horizontal {
        base: Box<StairFlat>,
        #[serde(with = "scalar::serde_scalar")]
        z: Scalar,
    },
    Vertical {
        base: Box<StairFlat>,
    },
    /// `boundary(half) x (-inf, z]` together with `half x {z}`.
    Diagonal {
        half: Box<HalfStairFlat>,
        #[serde(with = "scalar::serde_scalar")]
        z: Scalar,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfStairFlat {
    pub carrier: StairFlat,
    pub boundary: StairFlat,
    /// Points of the carrier strictly inside this half.
    pub witnesses: Vec<Point>,
    /// Points of the carrier strictly inside the other half.
    pub opposite: Vec<Point>,
}

impl StairFlat {
    pub fn point(p: Point) -> Self {
        StairFlat::Point { point: p }
    }

    pub fn diagonal(half: HalfStairFlat, z: Scalar) -> Self {
        StairFlat::Diagonal {
            half: Box::new(half),
            z,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            StairFlat::Point { point } => point.dim(),
            StairFlat::FullSpace { dim } => *dim,
            StairFlat::Horizontal { base, .. } | StairFlat::Vertical { base } => base.dim() + 1,
            StairFlat::Diagonal { half, .. } => half.carrier.dim() + 1,
        }
    }

    /// The `k` of a stair-`k`-flat.
    pub fn order(&self) -> usize {
        match self {
            StairFlat::Point { .. } => 0,
            StairFlat::FullSpace { dim } => *dim,
            StairFlat::Horizontal { base, .. } => base.order(),
            StairFlat::Vertical { base } => base.order() + 1,
            StairFlat::Diagonal { half, .. } => half.carrier.order(),
        }
    }

    /// Checks dimensions, orders, and witness placement recursively.
    pub fn validate(&self) -> Result<()> {
        match self {
            StairFlat::Point { .. } => Ok(()),
            StairFlat::FullSpace { dim } => {
                if *dim == 0 {
                    return Err(Error::InvalidParameter("full space of dimension 0".into()));
                }
                Ok(())
            }
            StairFlat::Horizontal { base, .. } => {
                base.validate()?;
                if base.order() == 0 {
                    return Err(Error::InvalidParameter(
                        "a horizontal 0-flat is a point".into(),
                    ));
                }
                Ok(())
            }
            StairFlat::Vertical { base } => base.validate(),
            StairFlat::Diagonal { half, .. } => half.validate(),
        }
    }

    /// Whether `x` lies on the flat.
    pub fn contains(&self, x: &Point) -> Result<bool> {
        x.check_dim(self.dim())?;
        match self {
            StairFlat::Point { point } => Ok(point == x),
            StairFlat::FullSpace { .. } => Ok(true),
            StairFlat::Horizontal { base, z } => Ok(x.last() == z && base.contains(&x.project())?),
            StairFlat::Vertical { base } => base.contains(&x.project()),
            StairFlat::Diagonal { half, z } => {
                if x.last() > z {
                    return Ok(false);
                }
                let px = x.project();
                if half.boundary.contains(&px)? {
                    return Ok(true);
                }
                if x.last() == z && half.carrier.contains(&px)? {
                    return half.contains(&px);
                }
                Ok(false)
            }
        }
    }

    /// Every coordinate value on `axis` that membership compares against.
    pub fn critical_values(&self, axis: usize) -> Vec<Scalar> {
        let mut out = Vec::new();
        self.collect_critical(axis, &mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_critical(&self, axis: usize, out: &mut Vec<Scalar>) {
        let top = self.dim() - 1;
        match self {
            StairFlat::Point { point } => out.push(point[axis].clone()),
            StairFlat::FullSpace { .. } => {}
            StairFlat::Horizontal { base, z } => {
                if axis == top {
                    out.push(z.clone());
                } else {
                    base.collect_critical(axis, out);
                }
            }
            StairFlat::Vertical { base } => {
                if axis < top {
                    base.collect_critical(axis, out);
                }
            }
            StairFlat::Diagonal { half, z } => {
                if axis == top {
                    out.push(z.clone());
                } else {
                    half.carrier.collect_critical(axis, out);
                    half.boundary.collect_critical(axis, out);
                    for w in half.witnesses.iter().chain(&half.opposite) {
                        out.push(w[axis].clone());
                    }
                }
            }
        }
    }

    /// Whether the axis-parallel segment meets the flat.
    ///
    /// Membership along the segment only changes at critical values, so the
    /// endpoints, the critical values in range, and one point strictly between
    /// each consecutive pair decide it.
    pub fn meets_segment(&self, seg: &Segment) -> Result<bool> {
        let (a, b) = (&seg.from[seg.axis], &seg.to[seg.axis]);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let mut stops = vec![lo.clone(), hi.clone()];
        stops.extend(
            self.critical_values(seg.axis)
                .into_iter()
                .filter(|c| c > lo && c < hi),
        );
        stops.sort();
        stops.dedup();
        let mids: Vec<Scalar> = stops
            .windows(2)
            .map(|w| scalar::midpoint(&w[0], &w[1]))
            .collect();
        for t in stops.iter().chain(&mids) {
            if self.contains(&seg.from.with_coord(seg.axis, t.clone()))? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Some point of the flat.
    pub fn sample_point(&self) -> Point {
        match self {
            StairFlat::Point { point } => point.clone(),
            StairFlat::FullSpace { dim } => Point::new(vec![scalar::int(0); *dim]),
            StairFlat::Horizontal { base, z } => base.sample_point().lift(z.clone()),
            StairFlat::Vertical { base } => base.sample_point().lift(scalar::int(0)),
            StairFlat::Diagonal { half, z } => half.boundary.sample_point().lift(z.clone()),
        }
    }

    /// A finite set of points on the flat: vertical parts at several heights,
    /// horizontal parts through the witnesses.
    pub fn samples(&self) -> Vec<Point> {
        let mut out = match self {
            StairFlat::Point { point } => vec![point.clone()],
            StairFlat::FullSpace { dim } => {
                let vals = [scalar::int(-1), scalar::int(0), scalar::ratio(3, 2)];
                (0..3usize.pow(*dim as u32))
                    .map(|mut code| {
                        Point::new(
                            (0..*dim)
                                .map(|_| {
                                    let v = vals[code % 3].clone();
                                    code /= 3;
                                    v
                                })
                                .collect(),
                        )
                    })
                    .collect()
            }
            StairFlat::Horizontal { base, z } => base
                .samples()
                .into_iter()
                .map(|s| s.lift(z.clone()))
                .collect(),
            StairFlat::Vertical { base } => base
                .samples()
                .into_iter()
                .flat_map(|s| [-3, 0, 5].map(|h| s.lift(scalar::int(h))))
                .collect(),
            StairFlat::Diagonal { half, z } => {
                let mut out = Vec::new();
                for s in half.boundary.samples() {
                    for drop in [scalar::int(0), scalar::ratio(1, 2), scalar::int(3)] {
                        out.push(s.lift(z - drop));
                    }
                }
                for w in &half.witnesses {
                    out.push(w.lift(z.clone()));
                }
                for s in half.carrier.samples() {
                    if matches!(half.contains(&s), Ok(true)) {
                        out.push(s.lift(z.clone()));
                    }
                }
                out
            }
        };
        out.sort();
        out.dedup();
        out
    }
}

impl HalfStairFlat {
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn validate(&self) -> Result<()> {
        self.carrier.validate()?;
        self.boundary.validate()?;
        if self.boundary.dim() != self.carrier.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.carrier.dim(),
                found: self.boundary.dim(),
            });
        }
        if self.carrier.order() == 0 || self.boundary.order() + 1 != self.carrier.order() {
            return Err(Error::InvalidParameter(format!(
                "half-flat boundary of order {} inside carrier of order {}",
                self.boundary.order(),
                self.carrier.order()
            )));
        }
        if self.witnesses.is_empty() || self.opposite.is_empty() {
            return Err(Error::InvalidParameter(
                "a half-flat needs witnesses on both sides".into(),
            ));
        }
        for s in self.boundary.samples() {
            if !self.carrier.contains(&s)? {
                return Err(Error::InvalidParameter(format!(
                    "boundary point {s} is off the carrier"
                )));
            }
        }
        for w in self.witnesses.iter().chain(&self.opposite) {
            if !self.carrier.contains(w)? {
                return Err(Error::InvalidParameter(format!(
                    "witness {w} is off the carrier"
                )));
            }
            if self.boundary.contains(w)? {
                return Err(Error::InvalidParameter(format!(
                    "witness {w} lies on the boundary"
                )));
            }
        }
        for w in &self.witnesses {
            for o in &self.opposite {
                if self.path_avoids_boundary(w, o)? {
                    return Err(Error::InvalidParameter(format!(
                        "witnesses {w} and {o} are on the same side"
                    )));
                }
            }
        }
        Ok(())
    }

    fn path_avoids_boundary(&self, x: &Point, y: &Point) -> Result<bool> {
        let path = stair::stair_path(x, y)?;
        if path.segments.is_empty() {
            return Ok(!self.boundary.contains(x)?);
        }
        for seg in &path.segments {
            if self.boundary.meets_segment(seg)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the carrier point `x` lies in this relatively closed half.
    pub fn contains(&self, x: &Point) -> Result<bool> {
        x.check_dim(self.dim())?;
        if !self.carrier.contains(x)? {
            return Err(Error::NotOnCarrier);
        }
        if self.boundary.contains(x)? {
            return Ok(true);
        }
        for w in &self.witnesses {
            if self.path_avoids_boundary(x, w)? {
                return Ok(true);
            }
        }
        for o in &self.opposite {
            if self.path_avoids_boundary(x, o)? {
                return Ok(false);
            }
        }
        Err(Error::SideUndecided(x.to_string()))
    }
}
